//! Continued fractions and q‖qα‖ statistics for circle rotations.
//!
//! The recurrence rate of the rotation R_α is r(R_α) = liminf q‖qα‖, with
//! ‖t‖ the distance from t to the nearest integer; its reciprocal is the
//! Lagrange constant L(α) = limsup 1/(q‖qα‖) ∈ [√5, ∞]. The gold standard
//! value r = 1/√5 is attained exactly when the continued fraction of α is
//! eventually constant 1 — in particular for α = (√5−1)/2 = [0; 1, 1, …] —
//! and every other α has r ≤ 1/(2√2), the next value of the classical
//! spectrum √5, 2√2, √221/5, …
//!
//! Exact ℚ(√5) inputs get an exact Gauss-map expansion with cycle
//! detection (quadratic irrationals have eventually periodic expansions);
//! float inputs hard-stop as soon as the propagated residual error could
//! corrupt a quotient.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::HashMap;

use crate::exactnum::{Rational, QF5};
use crate::scalar::Scalar;

/// A (prefix of a) simple continued fraction [a0; a1, a2, …].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContinuedFraction {
    pub a0: BigInt,
    pub partials: Vec<BigInt>,
    /// (start, length) into `partials` when eventual periodicity was
    /// certified by the exact Gauss map.
    pub period: Option<(usize, usize)>,
    /// The expansion terminated (rational input).
    pub terminated: bool,
    /// Float mode: expansion stopped early because the residual error grew
    /// past the certification threshold.
    pub truncated_by_precision: bool,
}

impl ContinuedFraction {
    /// Partial quotient a_i (a_0 included), unrolling the period on demand.
    pub fn quotient(&self, i: usize) -> Option<BigInt> {
        if i == 0 {
            return Some(self.a0.clone());
        }
        let idx = i - 1;
        if idx < self.partials.len() {
            return Some(self.partials[idx].clone());
        }
        let (start, len) = self.period?;
        if len == 0 {
            return None;
        }
        let wrapped = start + (idx - start) % len;
        Some(self.partials[wrapped].clone())
    }

    /// Convergents p/q with q ≤ `q_cap`, via the standard recurrences.
    /// Stops at the end of certified data for non-periodic expansions.
    pub fn convergents_up_to(&self, q_cap: &BigInt) -> Vec<Convergent> {
        let mut out = Vec::new();
        let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
        let (mut p, mut q) = (self.a0.clone(), BigInt::one());
        let mut i = 0usize;
        while &q <= q_cap {
            out.push(Convergent {
                p: p.clone(),
                q: q.clone(),
            });
            i += 1;
            let Some(a) = self.quotient(i) else { break };
            let p_next = &a * &p + &p_prev;
            let q_next = &a * &q + &q_prev;
            p_prev = p;
            q_prev = q;
            p = p_next;
            q = q_next;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
}

/// Exact continued fraction of a ℚ(√5) element.
///
/// Rational inputs terminate; irrational ones are expanded with the Gauss
/// map in exact arithmetic, detecting the first repeated complete quotient,
/// which certifies eventual periodicity. At most `max_quotients` partial
/// quotients are produced when no cycle appears earlier.
pub fn cf_expand_exact(alpha: &QF5, max_quotients: usize) -> ContinuedFraction {
    let a0 = alpha.floor_big();
    let mut x = alpha - &QF5::from_rational(Rational::from_integer(a0.clone()));
    let mut partials = Vec::new();
    let mut seen: HashMap<QF5, usize> = HashMap::new();
    let mut period = None;
    let mut terminated = false;
    for idx in 0..max_quotients {
        if x.is_zero() {
            terminated = true;
            break;
        }
        // x ∈ (0, 1); the complete quotient is 1/x.
        let y = &QF5::one() / &x;
        if let Some(&start) = seen.get(&y) {
            period = Some((start, idx - start));
            break;
        }
        seen.insert(y.clone(), idx);
        let a = y.floor_big();
        partials.push(a.clone());
        x = &y - &QF5::from_rational(Rational::from_integer(a));
    }
    ContinuedFraction {
        a0,
        partials,
        period,
        terminated,
        truncated_by_precision: false,
    }
}

/// Float continued fraction with certified hard stop.
///
/// The residual error is propagated through each Gauss step (the map
/// x ↦ 1/x amplifies absolute error by roughly 1/x²); expansion stops when
/// the error could flip a floor, so every emitted quotient is trustworthy.
pub fn cf_expand_f64(alpha: f64, max_quotients: usize) -> ContinuedFraction {
    let a0 = BigInt::from(alpha.floor() as i64);
    let mut x = alpha - alpha.floor();
    let mut err = f64::EPSILON * alpha.abs().max(1.0);
    let mut partials = Vec::new();
    let mut terminated = false;
    let mut truncated = false;
    for _ in 0..max_quotients {
        if x <= err {
            terminated = x <= f64::EPSILON;
            truncated = !terminated;
            break;
        }
        let y = 1.0 / x;
        err = err * y * y + f64::EPSILON * y;
        let a = y.floor();
        let frac = y - a;
        // Quotient is certain only when the error cannot cross the floor.
        if err > 0.25 || frac < err || 1.0 - frac < err {
            truncated = true;
            break;
        }
        partials.push(BigInt::from(a as i64));
        x = frac;
    }
    ContinuedFraction {
        a0,
        partials,
        period: None,
        terminated,
        truncated_by_precision: truncated,
    }
}

/// One entry of the Hurwitz stream: (q, q·‖qα‖, whether q is a convergent
/// denominator).
#[derive(Clone, Debug, Serialize)]
pub struct HurwitzPoint<S> {
    pub q: u64,
    pub value: S,
    pub is_convergent: bool,
}

/// Streams q·‖qα‖ for q = 1..=horizon, exactly in exact mode.
pub struct HurwitzStream<S: Scalar> {
    alpha_frac: S,
    frac: S,
    q: u64,
    horizon: u64,
    convergent_qs: Vec<u64>,
    next_conv: usize,
}

impl<S: Scalar> HurwitzStream<S> {
    pub fn new(alpha: &S, horizon: u64, convergent_qs: Vec<u64>) -> Self {
        // Reduce α mod 1 (‖qα‖ only depends on the class).
        let fl = S::from_int(alpha.floor_i64());
        let alpha_frac = alpha.ref_sub(&fl);
        HurwitzStream {
            alpha_frac,
            frac: S::zero(),
            q: 0,
            horizon,
            convergent_qs,
            next_conv: 0,
        }
    }
}

impl<S: Scalar> Iterator for HurwitzStream<S> {
    type Item = HurwitzPoint<S>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.q >= self.horizon {
            return None;
        }
        self.q += 1;
        self.frac = self.frac.ref_add(&self.alpha_frac);
        if self.frac >= S::one() {
            self.frac = self.frac.ref_sub(&S::one());
        }
        let dist = {
            let other = S::one().ref_sub(&self.frac);
            if self.frac < other {
                self.frac.clone()
            } else {
                other
            }
        };
        let value = S::from_int(self.q as i64).ref_mul(&dist);
        let mut is_convergent = false;
        while self.next_conv < self.convergent_qs.len()
            && self.convergent_qs[self.next_conv] < self.q
        {
            self.next_conv += 1;
        }
        if self.next_conv < self.convergent_qs.len() && self.convergent_qs[self.next_conv] == self.q
        {
            is_convergent = true;
        }
        Some(HurwitzPoint {
            q: self.q,
            value,
            is_convergent,
        })
    }
}

/// Convergent denominators ≤ horizon for an exact α.
pub fn convergent_denominators_exact(alpha: &QF5, horizon: u64) -> Vec<u64> {
    let cf = cf_expand_exact(alpha, 128);
    cf.convergents_up_to(&BigInt::from(horizon))
        .into_iter()
        .filter_map(|c| c.q.to_u64())
        .collect()
}

/// Convergent denominators ≤ horizon for a float α (certified prefix only).
pub fn convergent_denominators_f64(alpha: f64, horizon: u64) -> Vec<u64> {
    let cf = cf_expand_f64(alpha, 64);
    cf.convergents_up_to(&BigInt::from(horizon))
        .into_iter()
        .filter_map(|c| c.q.to_u64())
        .collect()
}

/// Brackets for r(R_α) = liminf q‖qα‖ over a finite horizon.
#[derive(Clone, Debug, Serialize)]
pub struct RotationLagrange<S> {
    pub horizon: u64,
    /// min over q ≤ N of q‖qα‖.
    pub inf_bracket: S,
    pub inf_bracket_at: u64,
    /// min over q ∈ [N/2, N].
    pub half_window_min: S,
    /// min over q ∈ [min(N/2, last ‖·‖-record), N] — the record-aware tail,
    /// mirroring the IET estimator.
    pub tail_min: S,
    /// Minimum of q‖qα‖ over the convergent denominators of one full
    /// period, when the expansion is certified periodic: an exact bracket
    /// for the liminf of quadratic irrationals.
    pub periodic_bracket: Option<S>,
    pub liminf_estimate: f64,
    pub l_estimate: f64,
    /// ‖qα‖ hit zero: α is rational and L diverges.
    pub divergent: bool,
}

/// Runs the Hurwitz stream and extracts liminf brackets.
pub fn lagrange_rotation_exact(alpha: &QF5, horizon: u64) -> RotationLagrange<QF5> {
    let convergents = convergent_denominators_exact(alpha, horizon);
    let cf = cf_expand_exact(alpha, 128);
    let periodic_bracket = periodic_bracket_exact(alpha, &cf, horizon);
    lagrange_from_stream(
        HurwitzStream::new(alpha, horizon, convergents),
        horizon,
        periodic_bracket,
    )
}

pub fn lagrange_rotation_f64(alpha: f64, horizon: u64) -> RotationLagrange<crate::scalar::F64> {
    let convergents = convergent_denominators_f64(alpha, horizon);
    lagrange_from_stream(
        HurwitzStream::new(&crate::scalar::F64::new(alpha), horizon, convergents),
        horizon,
        None,
    )
}

fn lagrange_from_stream<S: Scalar>(
    stream: HurwitzStream<S>,
    horizon: u64,
    periodic_bracket: Option<S>,
) -> RotationLagrange<S> {
    let half_start = (horizon / 2).max(1);
    let mut inf: Option<(S, u64)> = None;
    let mut half: Option<S> = None;
    let mut divergent = false;
    let mut last_record: Option<(u64, S)> = None;
    let mut best_dist: Option<S> = None;
    for pt in stream {
        if pt.value.is_zero() {
            divergent = true;
        }
        // ‖qα‖ records (best-approximation moments).
        let dist = pt.value.ref_div(&S::from_int(pt.q as i64));
        if best_dist.as_ref().map(|b| dist < *b).unwrap_or(true) {
            best_dist = Some(dist);
            last_record = Some((pt.q, pt.value.clone()));
        }
        if inf.as_ref().map(|(v, _)| pt.value < *v).unwrap_or(true) {
            inf = Some((pt.value.clone(), pt.q));
        }
        if pt.q >= half_start {
            half = Some(match half {
                None => pt.value.clone(),
                Some(h) => {
                    if pt.value < h {
                        pt.value.clone()
                    } else {
                        h
                    }
                }
            });
        }
    }
    let (inf_bracket, inf_bracket_at) = inf.expect("horizon >= 1");
    let half_window_min = half.unwrap_or_else(|| inf_bracket.clone());
    let tail_min = match &last_record {
        Some((q, v)) if *q < half_start => {
            if *v < half_window_min {
                v.clone()
            } else {
                half_window_min.clone()
            }
        }
        _ => half_window_min.clone(),
    };
    let liminf_estimate = if divergent { 0.0 } else { tail_min.to_f64() };
    let l_estimate = if divergent || liminf_estimate <= 0.0 {
        f64::INFINITY
    } else {
        1.0 / liminf_estimate
    };
    RotationLagrange {
        horizon,
        inf_bracket,
        inf_bracket_at,
        half_window_min,
        tail_min,
        periodic_bracket,
        liminf_estimate,
        l_estimate,
        divergent,
    }
}

/// Exact q·|qα − p| over the convergents of the last full period within the
/// horizon.
fn periodic_bracket_exact(alpha: &QF5, cf: &ContinuedFraction, horizon: u64) -> Option<QF5> {
    let (_, len) = cf.period?;
    if len == 0 {
        return None;
    }
    let convs = cf.convergents_up_to(&BigInt::from(horizon));
    if convs.len() <= len {
        return None;
    }
    let tail = &convs[convs.len() - len..];
    let mut best: Option<QF5> = None;
    for c in tail {
        let q = QF5::from_rational(Rational::from_integer(c.q.clone()));
        let p = QF5::from_rational(Rational::from_integer(c.p.clone()));
        let v = (&(&q * alpha) - &p).abs() * &q;
        best = Some(match best {
            None => v,
            Some(b) => {
                if v < b {
                    v
                } else {
                    b
                }
            }
        });
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::F64;

    fn golden_alpha() -> QF5 {
        &QF5::phi() - &QF5::one()
    }

    #[test]
    fn golden_cf_is_all_ones() {
        let cf = cf_expand_exact(&golden_alpha(), 40);
        assert_eq!(cf.a0, BigInt::zero());
        assert!(!cf.partials.is_empty());
        assert!(cf.partials.iter().all(|a| *a == BigInt::one()));
        // Periodicity detected immediately: period length 1 at the start.
        assert_eq!(cf.period, Some((0, 1)));
        assert!(!cf.terminated);
    }

    #[test]
    fn rational_cf_terminates() {
        let cf = cf_expand_exact(&QF5::from_ratio(1, 3), 10);
        assert_eq!(cf.a0, BigInt::zero());
        assert_eq!(cf.partials, vec![BigInt::from(3)]);
        assert!(cf.terminated);
        assert_eq!(cf.period, None);
    }

    #[test]
    fn sqrt2_minus_one_float_cf_is_all_twos() {
        let alpha = 2f64.sqrt() - 1.0;
        let cf = cf_expand_f64(alpha, 40);
        assert_eq!(cf.a0, BigInt::zero());
        assert!(
            cf.partials.len() >= 12,
            "certified only {} quotients",
            cf.partials.len()
        );
        assert!(cf.partials.iter().all(|a| *a == BigInt::from(2)));
        assert!(cf.truncated_by_precision);
    }

    #[test]
    fn convergent_recurrences_for_golden() {
        let alpha = golden_alpha();
        let convs = cf_expand_exact(&alpha, 64).convergents_up_to(&BigInt::from(1000));
        // Fibonacci denominators 1, 1, 2, 3, 5, 8, …
        let qs: Vec<u64> = convs.iter().map(|c| c.q.to_u64().unwrap()).collect();
        assert_eq!(&qs[..8], &[1, 1, 2, 3, 5, 8, 13, 21]);
        // |q_k α − p_k| < 1/q_{k+1}, exactly.
        for w in convs.windows(2) {
            let (c, next) = (&w[0], &w[1]);
            let q = QF5::from_rational(Rational::from_integer(c.q.clone()));
            let p = QF5::from_rational(Rational::from_integer(c.p.clone()));
            let lhs = (&(&q * &alpha) - &p).abs();
            let rhs = QF5::from_rational(Rational::new(BigInt::one(), next.q.clone()));
            assert!(lhs < rhs);
        }
        // Denominators strictly increase from q_2 on.
        for w in qs.windows(2).skip(1) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn hurwitz_point_example() {
        // α = (√5−1)/2, q = 5: 5·‖5α‖ ≈ 0.4509.
        let alpha = golden_alpha();
        let stream = HurwitzStream::new(&alpha, 5, vec![]);
        let last = stream.last().unwrap();
        assert_eq!(last.q, 5);
        assert!((last.value.to_f64() - 0.45085).abs() < 1e-4);
    }

    #[test]
    fn hurwitz_records_occur_at_convergents() {
        // Running minima of ‖qα‖ happen exactly at convergent denominators.
        let alpha = golden_alpha();
        let convergents = convergent_denominators_exact(&alpha, 1000);
        let stream = HurwitzStream::new(&alpha, 1000, convergents.clone());
        let mut best: Option<QF5> = None;
        for pt in stream {
            let dist = pt.value.ref_div(&QF5::from_int(pt.q as i64));
            let record = best.as_ref().map(|b| dist < *b).unwrap_or(true);
            if record {
                assert!(
                    pt.is_convergent,
                    "record at q = {} is not a convergent",
                    pt.q
                );
                best = Some(dist);
            }
        }
    }

    #[test]
    fn golden_lagrange_bracket() {
        let r = lagrange_rotation_exact(&golden_alpha(), 10_000);
        let target = 1.0 / 5f64.sqrt();
        assert!((r.liminf_estimate - target).abs() < 1e-6);
        assert!((r.l_estimate - 5f64.sqrt()).abs() < 1e-5);
        assert!(!r.divergent);
        let pb = r.periodic_bracket.expect("periodic CF certified");
        assert!((pb.to_f64() - target).abs() < 1e-6);
    }

    #[test]
    fn sqrt2_rotation_lagrange() {
        let alpha = 2f64.sqrt() - 1.0;
        let r = lagrange_rotation_f64(alpha, 100_000);
        let target = 1.0 / (2.0 * 2f64.sqrt());
        assert!(
            (r.liminf_estimate - target).abs() < 1e-5,
            "estimate {} vs {}",
            r.liminf_estimate,
            target
        );
        assert!((r.l_estimate - 2.0 * 2f64.sqrt()).abs() < 1e-4);
    }

    #[test]
    fn rational_rotation_diverges() {
        let r = lagrange_rotation_exact(&QF5::from_ratio(2, 7), 100);
        assert!(r.divergent);
        assert!(r.l_estimate.is_infinite());
    }

    #[test]
    fn hurwitz_inequality_has_many_solutions() {
        // Solutions of q‖qα‖ < 1/√5 keep arriving (checked across decades)
        // for a spread of irrationals.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let threshold = 1.0 / 5f64.sqrt();
        for _ in 0..20 {
            let alpha: f64 = rng.gen_range(0.01..0.99);
            let alpha = F64::new(alpha);
            let mut counts = [0usize; 3];
            for pt in HurwitzStream::new(&alpha, 10_000, vec![]) {
                if pt.value.get() < threshold {
                    if pt.q <= 100 {
                        counts[0] += 1;
                    }
                    if pt.q <= 1000 {
                        counts[1] += 1;
                    }
                    counts[2] += 1;
                }
            }
            assert!(counts[0] >= 1, "no solution below q = 100 for α = {alpha}");
            assert!(counts[1] >= counts[0]);
            assert!(counts[2] > counts[0], "no growth for α = {alpha}");
        }
    }
}
