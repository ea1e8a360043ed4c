//! Packing certificates for the N pseudo-norm.
//!
//! For a finite set Γ with pairwise N-distance at least 1, the count is
//! bounded by `#Γ ≤ A/√5 + p/2 + 1` where A and p are the area and
//! N-perimeter of the convex hull, with equality only for subsets of golden
//! lattices. Callers rarely have unit-separated data, so the reports here
//! rescale by δ(Γ) = min pairwise N (valid by homogeneity) and state A and
//! p in the normalized frame.
//!
//! In exact mode the bound is evaluated inside ℚ(√5) whenever every hull
//! edge's N-length has an exact square root in the field (always true for
//! the equality configurations, whose normalized edges are unit); otherwise
//! the report falls back to a certified floating interval. The equality
//! flag is raised only when the slack is exactly zero *and* the set embeds
//! in a golden lattice, verified by solving for basis coordinates exactly.

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::QF5;
use crate::ngeom::{
    convex_hull, min_pairwise_nnorm_sq, nnorm_sq, npolygon_edge_nsq, polygon_area_x2, Point2,
    PointSet,
};
use crate::scalar::{Scalar, FLOAT_TOL};

#[derive(Debug, Error)]
pub enum PackingError {
    #[error("packing bound needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("two points on a common axis line: δ(Γ) = 0 (indices {i}, {j})")]
    ZeroSeparation { i: usize, j: usize },
    #[error("point {idx} lies outside the rectangle")]
    NotInRectangle { idx: usize },
    #[error("rectangle is degenerate (zero side)")]
    DegenerateRectangle,
    #[error("epsilon {0} outside (0, 1/2)")]
    EpsilonOutOfRange(f64),
}

/// A quantity that is either exact in the coordinate field or a float with
/// a certified absolute error bound.
#[derive(Clone, Debug, Serialize)]
pub enum Metric<S> {
    Field(S),
    Radical { value: f64, err: f64 },
}

impl<S: Scalar> Metric<S> {
    pub fn to_f64(&self) -> f64 {
        match self {
            Metric::Field(v) => v.to_f64(),
            Metric::Radical { value, .. } => *value,
        }
    }

    fn err(&self) -> f64 {
        match self {
            Metric::Field(_) => 0.0,
            Metric::Radical { err, .. } => *err,
        }
    }
}

/// Certificate for the hull packing bound on a δ-normalized point set.
#[derive(Clone, Debug, Serialize)]
pub struct PackingReport<S> {
    pub s: usize,
    /// δ²(Γ) before normalization (`None` for a single point).
    pub delta_sq: Option<S>,
    /// Hull area of Γ/δ, exact in the coordinate field.
    pub area: S,
    /// Hull N-perimeter of Γ/δ.
    pub nperimeter: Metric<S>,
    /// A/√5 + p/2 + 1.
    pub bound: Metric<S>,
    /// bound − s. The inequality certifies the set iff this is ≥ 0.
    pub slack: Metric<S>,
    /// True when slack ≥ 0 exactly (exact mode) or ≥ −τ / beyond the error
    /// bound (float and radical modes).
    pub certified_nonneg: bool,
    /// Exact-mode only: slack == 0 and the normalized set embeds in a
    /// golden lattice.
    pub equality: bool,
    /// Float-mode hint: |slack| below 1e−6 without any exactness claim.
    pub near_equality: bool,
    /// Outcome of the golden-lattice membership check (exact mode only).
    pub golden_subset: Option<bool>,
}

/// Evaluates the packing bound for any finite set with |Γ| ≥ 1; errors when
/// two points share an axis line (δ = 0).
pub fn packing_bound<S: Scalar>(set: &PointSet<S>) -> Result<PackingReport<S>, PackingError> {
    let s = set.len();
    if s == 0 {
        return Err(PackingError::TooFewPoints { needed: 1, got: 0 });
    }
    if s == 1 {
        // A = p = 0: bound = 1 = s.
        return Ok(PackingReport {
            s,
            delta_sq: None,
            area: S::zero(),
            nperimeter: Metric::Field(S::zero()),
            bound: Metric::Field(S::one()),
            slack: Metric::Field(S::zero()),
            certified_nonneg: true,
            equality: S::EXACT,
            near_equality: true,
            golden_subset: if S::EXACT { Some(true) } else { None },
        });
    }

    let delta_sq = min_pairwise_nnorm_sq(set).expect("s >= 2");
    if delta_sq.is_zero() {
        let (i, j) = zero_pair(set);
        return Err(PackingError::ZeroSeparation { i, j });
    }

    let hull = convex_hull(set);
    // Normalized area A/δ²: both the doubled shoelace area and δ² live in
    // the coordinate field.
    let area = polygon_area_x2(&hull)
        .ref_div(&S::from_int(2))
        .ref_div(&delta_sq);

    // Normalized N-perimeter: Σ √(N²(edge)/δ²). Exact when every ratio has
    // an in-field square root.
    let ratios: Vec<S> = npolygon_edge_nsq(&hull)
        .into_iter()
        .map(|nsq| nsq.ref_div(&delta_sq))
        .collect();
    let mut exact_terms: Option<Vec<S>> = Some(Vec::new());
    for r in &ratios {
        match (&mut exact_terms, r.try_sqrt()) {
            (Some(terms), Some(root)) => terms.push(root),
            _ => {
                exact_terms = None;
                break;
            }
        }
    }
    let nperimeter = match exact_terms {
        Some(terms) => {
            let mut p = S::zero();
            for t in &terms {
                p = p.ref_add(t);
            }
            Metric::Field(p)
        }
        None => {
            let mut value = 0.0;
            let mut err = 0.0;
            for r in &ratios {
                let v = r.to_f64().max(0.0);
                value += v.sqrt();
                // f64 conversion and sqrt rounding, inflated generously.
                err += (v.sqrt() + 1.0) * 1e-14;
            }
            Metric::Radical { value, err }
        }
    };

    let bound = add_metrics(
        &Metric::Field(area.ref_div(&S::sqrt5())),
        &scale_metric(&nperimeter, 0.5, &S::from_ratio(1, 2)),
        &S::one(),
    );
    let slack = sub_scalar(&bound, &S::from_int(s as i64));

    let certified_nonneg = match &slack {
        Metric::Field(v) => {
            if S::EXACT {
                v.signum_i() >= 0
            } else {
                v.to_f64() >= -FLOAT_TOL * (s as f64)
            }
        }
        Metric::Radical { value, err } => *value >= -*err,
    };

    let exact_zero = S::EXACT && matches!(&slack, Metric::Field(v) if v.is_zero());
    let golden_subset = if S::EXACT {
        Some(golden_membership_scaled(set, &delta_sq))
    } else {
        None
    };
    let equality = exact_zero && golden_subset == Some(true);
    let near_equality = slack.to_f64().abs() <= 1e-6 + slack.err();

    Ok(PackingReport {
        s,
        delta_sq: Some(delta_sq),
        area,
        nperimeter,
        bound,
        slack,
        certified_nonneg,
        equality,
        near_equality,
        golden_subset,
    })
}

fn zero_pair<S: Scalar>(set: &PointSet<S>) -> (usize, usize) {
    for i in 0..set.len() {
        for j in (i + 1)..set.len() {
            if nnorm_sq(&set.points[j].sub(&set.points[i])).is_zero() {
                return (i, j);
            }
        }
    }
    unreachable!("zero_pair called with positive delta")
}

fn add_metrics<S: Scalar>(a: &Metric<S>, b: &Metric<S>, plus: &S) -> Metric<S> {
    match (a, b) {
        (Metric::Field(x), Metric::Field(y)) => Metric::Field(x.ref_add(y).ref_add(plus)),
        _ => Metric::Radical {
            value: a.to_f64() + b.to_f64() + plus.to_f64(),
            err: a.err() + b.err() + 1e-15,
        },
    }
}

fn scale_metric<S: Scalar>(m: &Metric<S>, f: f64, exact_f: &S) -> Metric<S> {
    match m {
        Metric::Field(v) => Metric::Field(v.ref_mul(exact_f)),
        Metric::Radical { value, err } => Metric::Radical {
            value: value * f,
            err: err * f,
        },
    }
}

fn sub_scalar<S: Scalar>(m: &Metric<S>, x: &S) -> Metric<S> {
    match m {
        Metric::Field(v) => Metric::Field(v.ref_sub(x)),
        Metric::Radical { value, err } => Metric::Radical {
            value: value - x.to_f64(),
            err: *err,
        },
    }
}

/// Decides whether Γ/δ embeds (up to translation) in a golden lattice, by
/// exact basis reconstruction.
///
/// Strategy: work scale-free with the raw coordinates and δ². Rank-0/1
/// configurations embed iff the difference vectors are integer multiples of
/// the shortest one. Otherwise a basis pair is sought among short
/// difference vectors with |det|² = 5·δ⁴ whose xy-form has integer
/// coefficients over δ² and in which every point has integer coordinates —
/// that pins the lattice to the golden family (the quadratic form
/// mn-coefficients of x·y on a golden basis are a discriminant-5 integral
/// form, and disc-5 forms are all equivalent).
///
/// The basis search scans difference pairs with small normalized N²; this
/// covers every equality configuration of the packing bound (their
/// normalized Delaunay edges are unit vectors) though deliberately not
/// arbitrarily sparse sublattice subsets.
fn golden_membership_scaled<S: Scalar>(set: &PointSet<S>, delta_sq: &S) -> bool {
    if set.len() <= 2 {
        return true;
    }
    // Difference vectors, deduplicated up to sign, sorted by normalized N².
    let mut diffs: Vec<(S, Point2<S>)> = Vec::new();
    for i in 0..set.len() {
        for j in (i + 1)..set.len() {
            let d = set.points[j].sub(&set.points[i]);
            let r = nnorm_sq(&d).ref_div(delta_sq);
            diffs.push((r, d));
        }
    }
    diffs.sort_by(|a, b| a.0.cmp(&b.0));

    // All multiples of one direction?
    let rank1 = diffs.windows(2).all(|w| w[0].1.det(&w[1].1).is_zero());
    if rank1 {
        return rank1_membership(&diffs);
    }

    let delta_4 = delta_sq.ref_mul(delta_sq);
    let five_d4 = S::from_int(5).ref_mul(&delta_4);
    let cap = diffs.len().min(60);
    let nine = S::from_int(9);
    for i in 0..cap {
        if diffs[i].0 > nine {
            break;
        }
        for j in (i + 1)..cap {
            if diffs[j].0 > nine {
                break;
            }
            let e1 = &diffs[i].1;
            let e2 = &diffs[j].1;
            let det = e1.det(e2);
            if det.ref_mul(&det) != five_d4 {
                continue;
            }
            if !form_is_integral(e1, e2, delta_sq) {
                continue;
            }
            if all_points_integral(set, e1, e2, &det) {
                return true;
            }
        }
    }
    false
}

/// Rank ≤ 1: all differences are parallel. The set embeds iff every pairwise
/// difference is an integer multiple of the shortest one.
fn rank1_membership<S: Scalar>(diffs: &[(S, Point2<S>)]) -> bool {
    let base = &diffs[0].1;
    // Coefficient of d against base along the dominant coordinate.
    let coeff = |d: &Point2<S>| -> Option<S> {
        if !base.x.is_zero() {
            Some(d.x.ref_div(&base.x))
        } else if !base.y.is_zero() {
            Some(d.y.ref_div(&base.y))
        } else {
            None
        }
    };
    for (_, d) in diffs {
        let Some(c) = coeff(d) else { return false };
        if !scalar_is_integer(&c) {
            return false;
        }
    }
    true
}

/// The xy quadratic form on the basis (e1, e2), normalized by δ², must have
/// integer coefficients: x(m,n)·y(m,n) = c1·m² + c2·mn + c3·n².
fn form_is_integral<S: Scalar>(e1: &Point2<S>, e2: &Point2<S>, delta_sq: &S) -> bool {
    let c1 = e1.x.ref_mul(&e1.y).ref_div(delta_sq);
    let c2 =
        e1.x.ref_mul(&e2.y)
            .ref_add(&e2.x.ref_mul(&e1.y))
            .ref_div(delta_sq);
    let c3 = e2.x.ref_mul(&e2.y).ref_div(delta_sq);
    scalar_is_integer(&c1) && scalar_is_integer(&c2) && scalar_is_integer(&c3)
}

fn all_points_integral<S: Scalar>(
    set: &PointSet<S>,
    e1: &Point2<S>,
    e2: &Point2<S>,
    det: &S,
) -> bool {
    // Translate by the lexicographically smallest point so 0 ∈ Γ'.
    let origin = set
        .points
        .iter()
        .min_by(|p, q| p.x.cmp(&q.x).then(p.y.cmp(&q.y)))
        .unwrap();
    for p in &set.points {
        let z = p.sub(origin);
        // Cramer: z = m·e1 + n·e2.
        let m = z.det(e2).ref_div(det);
        let n = e1.det(&z).ref_div(det);
        if !scalar_is_integer(&m) || !scalar_is_integer(&n) {
            return false;
        }
    }
    true
}

fn scalar_is_integer<S: Scalar>(v: &S) -> bool {
    if S::EXACT {
        let f = v.to_f64();
        if f.abs() > i64::MAX as f64 / 4.0 {
            return false;
        }
        let fl = S::from_int(v.floor_i64());
        v == &fl
    } else {
        let f = v.to_f64();
        (f - f.round()).abs() <= 1e-9 * 1f64.max(f.abs())
    }
}

/// Exact-mode convenience: the packing certificate of a ℚ(√5) point set.
pub fn packing_bound_exact(set: &PointSet<QF5>) -> Result<PackingReport<QF5>, PackingError> {
    packing_bound(set)
}

/// An axis-aligned rectangle [x0, x1] × [y0, y1].
#[derive(Clone, Debug, Serialize)]
pub struct Rect<S> {
    pub x0: S,
    pub y0: S,
    pub x1: S,
    pub y1: S,
}

impl<S: Scalar> Rect<S> {
    pub fn new(x0: S, y0: S, x1: S, y1: S) -> Result<Self, PackingError> {
        if x0 >= x1 || y0 >= y1 {
            return Err(PackingError::DegenerateRectangle);
        }
        Ok(Rect { x0, y0, x1, y1 })
    }

    pub fn area(&self) -> S {
        self.x1
            .ref_sub(&self.x0)
            .ref_mul(&self.y1.ref_sub(&self.y0))
    }

    pub fn contains(&self, p: &Point2<S>) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }
}

/// Which sufficient condition certified the density form of the rectangle
/// bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rect2Certificate {
    AreaCondition,
    CountCondition,
}

/// Report for the rectangle packing bound s ≤ A'/√5 + √(2A') + 1 with
/// A' = area(C)/δ², and the density form s ≤ (1/√5 + ε)·A' under either
/// sufficient condition (c1) A' > 4/ε² or (c2) s > (3/ε + 1)².
///
/// All reported quantities are invariant under the diagonal flow, which is
/// how the underlying argument normalizes the rectangle to a square; the
/// reported values therefore already refer to that normalized frame.
#[derive(Clone, Debug, Serialize)]
pub struct RectReport<S> {
    pub s: usize,
    pub rect_area: S,
    pub delta_sq: S,
    pub a_prime: S,
    /// A'/√5 + √(2A') + 1.
    pub bound1: f64,
    pub bound1_holds: bool,
    pub epsilon: f64,
    /// (c1) A' > 4/ε².
    pub c1: bool,
    /// (c2) s > (3/ε + 1)².
    pub c2: bool,
    /// The variant of (c2) used inside the deduction, s > (2/ε + 1)²,
    /// recorded alongside the stated condition.
    pub c2_proof_variant: bool,
    pub rect2_bound: f64,
    pub rect2_holds: bool,
    pub certified_by: Option<Rect2Certificate>,
    /// The hull packing bound of the same set; the rectangle bound
    /// dominates it whenever Γ ⊂ C.
    pub hull_bound: f64,
}

pub fn rect_packing_bound<S: Scalar>(
    set: &PointSet<S>,
    rect: &Rect<S>,
    epsilon: f64,
) -> Result<RectReport<S>, PackingError> {
    let s = set.len();
    if s < 2 {
        return Err(PackingError::TooFewPoints { needed: 2, got: s });
    }
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(PackingError::EpsilonOutOfRange(epsilon));
    }
    for (idx, p) in set.points.iter().enumerate() {
        if !rect.contains(p) {
            return Err(PackingError::NotInRectangle { idx });
        }
    }
    let delta_sq = min_pairwise_nnorm_sq(set).expect("s >= 2");
    if delta_sq.is_zero() {
        let (i, j) = zero_pair(set);
        return Err(PackingError::ZeroSeparation { i, j });
    }
    let rect_area = rect.area();
    let a_prime = rect_area.ref_div(&delta_sq);
    let a = a_prime.to_f64();
    let bound1 = a / 5f64.sqrt() + (2.0 * a).sqrt() + 1.0;
    let sf = s as f64;
    let bound1_holds = sf <= bound1 + 1e-9 * (1.0 + bound1);

    let c1 = a > 4.0 / (epsilon * epsilon);
    let c2 = sf > (3.0 / epsilon + 1.0).powi(2);
    let c2_proof_variant = sf > (2.0 / epsilon + 1.0).powi(2);
    let rect2_bound = (1.0 / 5f64.sqrt() + epsilon) * a;
    let rect2_holds = sf <= rect2_bound + 1e-9 * (1.0 + rect2_bound);
    let certified_by = if c1 {
        Some(Rect2Certificate::AreaCondition)
    } else if c2 {
        Some(Rect2Certificate::CountCondition)
    } else {
        None
    };

    let hull_bound = packing_bound(set)?.bound.to_f64();

    Ok(RectReport {
        s,
        rect_area,
        delta_sq,
        a_prime,
        bound1,
        bound1_holds,
        epsilon,
        c1,
        c2,
        c2_proof_variant,
        rect2_bound,
        rect2_holds,
        certified_by,
        hull_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::QF5;
    use crate::ngeom::{golden_triple, GoldenLattice};
    use crate::scalar::F64;

    fn qi(x: i64, y: i64) -> Point2<QF5> {
        Point2::new(QF5::from_int(x), QF5::from_int(y))
    }

    #[test]
    fn golden_triple_attains_equality() {
        let set: PointSet<QF5> = golden_triple();
        let r = packing_bound_exact(&set).unwrap();
        assert_eq!(r.s, 3);
        assert_eq!(r.delta_sq, Some(QF5::one()));
        // A = √5/2, p = 3, bound = 1/2 + 3/2 + 1 = 3.
        assert_eq!(r.area, &QF5::sqrt5() / &QF5::from_int(2));
        match &r.nperimeter {
            Metric::Field(p) => assert_eq!(*p, QF5::from_int(3)),
            _ => panic!("expected exact perimeter"),
        }
        match &r.bound {
            Metric::Field(b) => assert_eq!(*b, QF5::from_int(3)),
            _ => panic!("expected exact bound"),
        }
        match &r.slack {
            Metric::Field(s) => assert!(s.is_zero()),
            _ => panic!("expected exact slack"),
        }
        assert!(r.certified_nonneg);
        assert_eq!(r.golden_subset, Some(true));
        assert!(r.equality);
    }

    #[test]
    fn golden_parallelogram_attains_equality() {
        let phi = QF5::phi();
        let set = PointSet::new(vec![
            qi(0, 0),
            Point2::new(-QF5::one(), QF5::one()),
            Point2::new(&phi - &QF5::one(), phi.clone()),
            Point2::new(&phi - &QF5::from_int(2), &phi + &QF5::one()),
        ]);
        let r = packing_bound_exact(&set).unwrap();
        assert_eq!(r.s, 4);
        match &r.slack {
            Metric::Field(s) => assert!(s.is_zero(), "slack {s}"),
            _ => panic!("expected exact slack"),
        }
        assert!(r.equality);
    }

    #[test]
    fn single_point_and_pair() {
        let single = PointSet::new(vec![qi(0, 0)]);
        let r = packing_bound_exact(&single).unwrap();
        assert_eq!(r.s, 1);
        assert!(r.equality);
        assert_eq!(r.bound.to_f64(), 1.0);

        let pair = PointSet::new(vec![qi(0, 0), qi(1, 1)]);
        let r = packing_bound_exact(&pair).unwrap();
        assert_eq!(r.s, 2);
        assert_eq!(r.area, QF5::zero());
        match &r.nperimeter {
            Metric::Field(p) => assert_eq!(*p, QF5::from_int(2)),
            _ => panic!("expected exact perimeter"),
        }
        match &r.slack {
            Metric::Field(s) => assert!(s.is_zero()),
            _ => panic!(),
        }
        assert!(r.equality);
    }

    #[test]
    fn axis_pair_is_an_error() {
        let set = PointSet::new(vec![qi(0, 0), qi(2, 0), qi(1, 3)]);
        assert!(matches!(
            packing_bound_exact(&set),
            Err(PackingError::ZeroSeparation { .. })
        ));
    }

    #[test]
    fn perturbed_golden_triple_loses_equality() {
        let phi = QF5::phi();
        let eps = QF5::from_ratio(1, 1000);
        let set = PointSet::new(vec![
            qi(0, 0),
            Point2::new(-QF5::one(), QF5::one()),
            Point2::new(&(&phi - &QF5::one()) + &eps, phi.clone()),
        ]);
        let r = packing_bound_exact(&set).unwrap();
        assert!(!r.equality);
        assert!(r.certified_nonneg);
        match &r.slack {
            Metric::Field(s) => assert!(s.signum_i() > 0, "slack must be positive"),
            Metric::Radical { value, err } => assert!(*value > *err),
        }
    }

    #[test]
    fn collinear_consecutive_lattice_points_attain_equality() {
        // {0, v, 2v} along a unit-N vector: A = 0, p = 2·N(2v)/δ = 4,
        // bound = 0 + 2 + 1 = 3 = s.
        let phi = QF5::phi();
        let v = Point2::new(&phi - &QF5::one(), phi);
        let two_v = v.add(&v);
        let set = PointSet::new(vec![qi(0, 0), v, two_v]);
        let r = packing_bound_exact(&set).unwrap();
        match &r.slack {
            Metric::Field(s) => assert!(s.is_zero()),
            _ => panic!("expected exact slack"),
        }
        assert_eq!(r.golden_subset, Some(true));
        assert!(r.equality);
    }

    #[test]
    fn sparse_collinear_points_do_not_claim_equality() {
        // {0, v, 3v} has normalized gaps 1, 2, 3: slack is positive and no
        // equality is claimed.
        let phi = QF5::phi();
        let v = Point2::new(&phi - &QF5::one(), phi);
        let three_v = v.add(&v).add(&v);
        let set = PointSet::new(vec![qi(0, 0), v, three_v]);
        let r = packing_bound_exact(&set).unwrap();
        assert!(!r.equality);
        assert!(r.certified_nonneg);
    }

    #[test]
    fn golden_lattice_window_is_certified() {
        let lat: GoldenLattice<QF5> = GoldenLattice::standard();
        let set = lat.points_within(&QF5::from_int(6)).unwrap();
        assert!(set.len() > 10);
        let r = packing_bound_exact(&set).unwrap();
        assert!(r.certified_nonneg, "theorem violated?");
        assert_eq!(r.delta_sq, Some(QF5::one()));
        assert_eq!(r.golden_subset, Some(true));
    }

    #[test]
    fn float_mode_reports_near_equality_without_claims() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let set = PointSet::new(vec![
            Point2::new(F64::new(0.0), F64::new(0.0)),
            Point2::new(F64::new(-1.0), F64::new(1.0)),
            Point2::new(F64::new(phi - 1.0), F64::new(phi)),
        ]);
        let r = packing_bound(&set).unwrap();
        assert!(r.certified_nonneg);
        assert!(r.near_equality);
        assert!(!r.equality);
        assert_eq!(r.golden_subset, None);
    }

    #[test]
    fn rect_bound_examples() {
        // Γ = {(0,0), (1,1)}, C = [0,1]²: A' = 1, bound1 = 1/√5 + √2 + 1.
        let set = PointSet::new(vec![qi(0, 0), qi(1, 1)]);
        let rect = Rect::new(QF5::zero(), QF5::zero(), QF5::one(), QF5::one()).unwrap();
        let r = rect_packing_bound(&set, &rect, 0.4).unwrap();
        assert_eq!(r.a_prime, QF5::one());
        assert!((r.bound1 - 2.8614).abs() < 1e-3);
        assert!(r.bound1_holds);
        assert!(!r.c1); // 1 > 4/0.16 = 25 is false
        assert!(r.bound1 >= r.hull_bound - 1e-9);

        // Condition arithmetic: ε = 0.4 with A' = 30 satisfies (c1) since
        // 30 > 4/0.16 = 25, certifying the density form.
        let wide = Rect::new(QF5::zero(), QF5::zero(), QF5::from_int(30), QF5::one()).unwrap();
        let set = PointSet::new(vec![qi(0, 0), qi(1, 1)]);
        let r = rect_packing_bound(&set, &wide, 0.4).unwrap();
        assert_eq!(r.a_prime, QF5::from_int(30));
        assert!(r.c1);
        assert_eq!(r.certified_by, Some(Rect2Certificate::AreaCondition));
        assert!(r.rect2_holds);
    }

    #[test]
    fn rect_bound_on_golden_lattice_window() {
        let lat: GoldenLattice<QF5> = GoldenLattice::standard();
        let set = lat.points_within(&QF5::from_int(10)).unwrap();
        let rect = Rect::new(
            QF5::from_int(-10),
            QF5::from_int(-10),
            QF5::from_int(10),
            QF5::from_int(10),
        )
        .unwrap();
        let r = rect_packing_bound(&set, &rect, 0.4).unwrap();
        assert!(r.bound1_holds, "s = {}, bound1 = {}", r.s, r.bound1);
        assert!(r.bound1 >= r.hull_bound - 1e-9, "rect bound must dominate");
        if r.c1 {
            assert!(r.rect2_holds);
        }
    }

    #[test]
    fn rect_preconditions() {
        let set = PointSet::new(vec![qi(0, 0), qi(3, 1)]);
        let rect = Rect::new(QF5::zero(), QF5::zero(), QF5::one(), QF5::one()).unwrap();
        assert!(matches!(
            rect_packing_bound(&set, &rect, 0.3),
            Err(PackingError::NotInRectangle { idx: 1 })
        ));
        let rect = Rect::new(QF5::zero(), QF5::zero(), QF5::from_int(4), QF5::from_int(4)).unwrap();
        assert!(matches!(
            rect_packing_bound(&set, &rect, 0.7),
            Err(PackingError::EpsilonOutOfRange(_))
        ));
        assert!(Rect::new(QF5::zero(), QF5::zero(), QF5::zero(), QF5::one()).is_err());
    }

    #[test]
    fn removing_a_point_increases_slack_by_at_most_one() {
        // bound only shrinks when a point is removed while s drops by 1.
        let lat: GoldenLattice<QF5> = GoldenLattice::standard();
        let set = lat.points_within(&QF5::from_int(4)).unwrap();
        let full = packing_bound_exact(&set).unwrap();
        for drop_idx in 0..set.len().min(6) {
            let mut pts = set.points.clone();
            pts.remove(drop_idx);
            let sub = PointSet::new(pts);
            let r = packing_bound_exact(&sub).unwrap();
            assert!(
                r.slack.to_f64() <= full.slack.to_f64() + 1.0 + 1e-9,
                "slack grew by more than 1"
            );
        }
    }
}
