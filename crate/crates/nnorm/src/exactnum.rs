//! Exact arithmetic over ℚ and the real quadratic field ℚ(√5).
//!
//! [`QF5`] stores a + b·√5 with arbitrary-precision rational `a`, `b` in
//! canonical (reduced) form, so equality is structural and the sign of any
//! element is decidable by rational comparisons alone. The golden ratio
//! φ = (1 + √5)/2 lives here and satisfies φ² = φ + 1 exactly, which is what
//! makes golden-lattice equality cases reproducible without rounding.
//!
//! Rounding to floating point happens only at output boundaries, through
//! [`QF5::approx`], which returns a value together with a certified absolute
//! error bound.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational, always kept reduced with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error)]
pub enum NumError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("unparsable numeric literal {literal:?}: {reason}")]
    BadLiteral { literal: String, reason: String },
}

/// An element a + b√5 of the real quadratic field ℚ(√5).
///
/// ```
/// use nnorm::exactnum::QF5;
///
/// let phi = QF5::phi();
/// assert_eq!(&phi * &phi, &phi + &QF5::one()); // φ² = φ + 1, exactly
/// assert_eq!(&QF5::sqrt5() * &QF5::sqrt5(), QF5::from_int(5));
/// ```
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QF5 {
    a: Rational,
    b: Rational,
}

impl QF5 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QF5 { a, b }
    }

    /// The rational part a.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// The √5 coefficient b.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn zero() -> Self {
        QF5::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        QF5::new(Rational::one(), Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        QF5::new(Rational::from_integer(BigInt::from(n)), Rational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        QF5::new(
            Rational::new(BigInt::from(num), BigInt::from(den)),
            Rational::zero(),
        )
    }

    pub fn from_rational(r: Rational) -> Self {
        QF5::new(r, Rational::zero())
    }

    /// √5 itself.
    pub fn sqrt5() -> Self {
        QF5::new(Rational::zero(), Rational::one())
    }

    /// The golden ratio φ = (1 + √5)/2.
    pub fn phi() -> Self {
        QF5::new(
            Rational::new(BigInt::one(), BigInt::from(2)),
            Rational::new(BigInt::one(), BigInt::from(2)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the element lies in ℚ.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// True when the element is a rational integer.
    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    /// Exact sign: -1, 0 or +1.
    ///
    /// Decided by rational comparisons of a² against 5b², with case analysis
    /// on the signs of a and b; never consults floating point.
    pub fn signum(&self) -> i8 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // a and b have opposite signs: compare |a| with |b|√5 via squares.
        let a2 = &self.a * &self.a;
        let b2_5 = &self.b * &self.b * Rational::from_integer(BigInt::from(5));
        match a2.cmp(&b2_5) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            // a² = 5b² with a, b ≠ 0 would make √5 rational.
            Ordering::Equal => unreachable!("sqrt(5) is irrational"),
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Field conjugate a - b√5.
    pub fn conjugate(&self) -> Self {
        QF5::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm a² - 5b² (the product with the conjugate).
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(BigInt::from(5))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, NumError> {
        if rhs.is_zero() {
            return Err(NumError::DivisionByZero);
        }
        Ok(self / rhs)
    }

    /// Exact square root within ℚ(√5), when one exists.
    ///
    /// Returns the non-negative root. `(1 + √5)² = 6 + 2√5` round-trips;
    /// `√2` has no representation here and yields `None`.
    pub fn try_sqrt(&self) -> Option<Self> {
        match self.signum() {
            -1 => return None,
            0 => return Some(QF5::zero()),
            _ => {}
        }
        if self.b.is_zero() {
            // Either √a rational or √a = d√5 with d² = a/5.
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(QF5::from_rational(r));
            }
            let fifth = &self.a / Rational::from_integer(BigInt::from(5));
            if let Some(d) = rational_sqrt(&fifth) {
                return Some(QF5::new(Rational::zero(), d));
            }
            return None;
        }
        // (c + d√5)² = c² + 5d² + 2cd√5: c² solves x² - a x + 5b²/4 = 0,
        // so c² = (a ± √(a² - 5b²))/2 needs the field norm to be a rational square.
        let n = self.norm();
        if n.is_negative() {
            return None;
        }
        let r = rational_sqrt(&n)?;
        let two = Rational::from_integer(BigInt::from(2));
        for root in [&r, &(-r.clone())] {
            let c2 = (&self.a + root) / &two;
            if c2.is_negative() {
                continue;
            }
            if let Some(c) = rational_sqrt(&c2) {
                if c.is_zero() {
                    continue;
                }
                let d = &self.b / (&c * &two);
                let cand = QF5::new(c, d);
                let cand = if cand.signum() < 0 { -&cand } else { cand };
                if &cand * &cand == *self {
                    return Some(cand);
                }
            }
        }
        None
    }

    /// Exact floor as a big integer.
    pub fn floor_big(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        let approx = self.approx(48);
        let mut n = BigInt::from(approx.value.floor() as i64);
        // The approximation is far better than 1/2; at most one step each way.
        while self.cmp_int(&n) == Ordering::Less {
            n -= 1;
        }
        loop {
            let next = &n + 1;
            if self.cmp_int(&next) != Ordering::Less {
                n = next;
            } else {
                break;
            }
        }
        n
    }

    fn cmp_int(&self, n: &BigInt) -> Ordering {
        let diff = self - &QF5::from_rational(Rational::from_integer(n.clone()));
        match diff.signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Certified floating-point approximation.
    ///
    /// The returned error bound satisfies |self - value| ≤ abs_err and
    /// abs_err ≤ 2^(-bits)·max(1, |self|); this is verified by exact rational
    /// comparison before returning, escalating the working precision if the
    /// first attempt falls short. Requests beyond the f64 mantissa are
    /// clamped to 53 bits, the most a single f64 can certify.
    pub fn approx(&self, bits: u32) -> Approx {
        if self.is_zero() {
            return Approx {
                value: 0.0,
                abs_err: 0.0,
            };
        }
        let bits = bits.clamp(1, 53);
        let mut prec = bits + 16 + rat_log2_ceil(&self.b);
        for _ in 0..8 {
            let (lo, hi) = self.rational_bounds(prec);
            let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
            let value = rational_to_f64(&mid);
            // Allowance 2^-bits * max(1, |x|), using the smaller end of the
            // interval as a conservative stand-in for |x|.
            let abs_lo = lo.abs().min(hi.abs());
            let one = Rational::one();
            let scale = if abs_lo > one { abs_lo } else { one };
            let allowance = scale * pow2_rational(-(bits as i64));
            let value_rat = match Rational::from_float(value) {
                Some(v) => v,
                None => {
                    prec += 32;
                    continue;
                }
            };
            let err_left = (&value_rat - &lo).abs();
            let err_right = (&hi - &value_rat).abs();
            let err = err_left.max(err_right);
            if err <= allowance {
                let abs_err = f64_round_up(&err);
                return Approx { value, abs_err };
            }
            prec += 32;
        }
        panic!(
            "approx failed to converge for {} at {} bits; this is a bug",
            self.literal(),
            bits
        );
    }

    /// Plain f64 conversion (53-bit certified approximation).
    pub fn to_f64(&self) -> f64 {
        self.approx(53).value
    }

    /// Rational interval [lo, hi] containing the element, of width ≤ |b|·2^-prec.
    fn rational_bounds(&self, prec: u32) -> (Rational, Rational) {
        if self.b.is_zero() {
            return (self.a.clone(), self.a.clone());
        }
        let (s_lo, s_hi) = sqrt5_bounds(prec);
        let x1 = &self.a + &self.b * &s_lo;
        let x2 = &self.a + &self.b * &s_hi;
        if x1 <= x2 {
            (x1, x2)
        } else {
            (x2, x1)
        }
    }

    /// Canonical literal form: `p/q`, `p/q*sqrt5` or `a+b*sqrt5`.
    pub fn literal(&self) -> String {
        fn rat(r: &Rational) -> String {
            if r.is_integer() {
                r.numer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        fn sqrt5_term(b: &Rational) -> String {
            if b.is_one() {
                "sqrt5".to_string()
            } else if (-b).is_one() {
                "-sqrt5".to_string()
            } else {
                format!("{}*sqrt5", rat(b))
            }
        }
        if self.b.is_zero() {
            rat(&self.a)
        } else if self.a.is_zero() {
            sqrt5_term(&self.b)
        } else if self.b.is_negative() {
            let nb = -self.b.clone();
            let term = sqrt5_term(&nb);
            format!("{}-{}", rat(&self.a), term)
        } else {
            format!("{}+{}", rat(&self.a), sqrt5_term(&self.b))
        }
    }
}

/// A floating-point value with a certified absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Approx {
    pub value: f64,
    pub abs_err: f64,
}

fn rat_sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

/// ceil(log2(max(1, |r|))) — used to budget working precision.
fn rat_log2_ceil(r: &Rational) -> u32 {
    if r.is_zero() {
        return 0;
    }
    let n = r.numer().abs().to_biguint().unwrap();
    let d = r.denom().abs().to_biguint().unwrap();
    let nb = n.bits();
    let db = d.bits();
    if nb > db {
        (nb - db + 1) as u32
    } else {
        0
    }
}

fn pow2_rational(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::one() << (e as usize))
    } else {
        Rational::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

/// Rational bounds s_lo ≤ √5 ≤ s_hi with s_hi - s_lo = 2^-prec.
fn sqrt5_bounds(prec: u32) -> (Rational, Rational) {
    let five_scaled: BigInt = BigInt::from(5) << (2 * prec as usize);
    let t = five_scaled.sqrt();
    let den: BigInt = BigInt::one() << (prec as usize);
    let lo = Rational::new(t.clone(), den.clone());
    let hi = Rational::new(t + 1, den);
    (lo, hi)
}

/// √r when r is a perfect square in ℚ; `None` otherwise.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rational::zero());
    }
    let n = r.numer();
    let d = r.denom();
    let sn = n.sqrt();
    if &(&sn * &sn) != n {
        return None;
    }
    let sd = d.sqrt();
    if &(&sd * &sd) != d {
        return None;
    }
    Some(Rational::new(sn, sd))
}

/// Accurate rational-to-f64 conversion via 80 extra bits of integer division.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let neg = r.is_negative();
    let n = r.numer().abs();
    let d = r.denom().abs();
    const SHIFT: usize = 80;
    let q = (n << SHIFT) / d;
    let v = big_to_f64(&q) * 2f64.powi(-(SHIFT as i32));
    if neg {
        -v
    } else {
        v
    }
}

fn big_to_f64(n: &BigInt) -> f64 {
    n.to_f64().unwrap_or(f64::INFINITY)
}

/// Smallest f64 ≥ the given non-negative rational.
fn f64_round_up(r: &Rational) -> f64 {
    let v = rational_to_f64(r);
    let mut up = v;
    // Two ulps of headroom absorb the conversion rounding.
    for _ in 0..2 {
        up = f64::from_bits(up.to_bits() + 1);
    }
    if Rational::from_float(up).map(|u| u >= *r).unwrap_or(false) {
        up
    } else {
        v * (1.0 + 1e-9) + f64::MIN_POSITIVE
    }
}

impl fmt::Debug for QF5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QF5({})", self.literal())
    }
}

impl fmt::Display for QF5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

impl PartialOrd for QF5 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QF5 {
    fn cmp(&self, other: &Self) -> Ordering {
        if let Some(ord) = cmp_fast(self, other) {
            return ord;
        }
        if self.a == other.a && self.b == other.b {
            return Ordering::Equal;
        }
        let diff = self - other;
        match diff.signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

/// Allocation-free comparison path for small components (the common case in
/// orbit loops, where numerators stay word-sized); `None` on any overflow
/// risk, falling back to exact big arithmetic.
fn cmp_fast(x: &QF5, y: &QF5) -> Option<Ordering> {
    #[inline]
    fn small(r: &Rational) -> Option<(i64, i64)> {
        Some((r.numer().to_i64()?, r.denom().to_i64()?))
    }
    // Guard well below i128 limits: products of four 40-bit factors.
    const LIM: i64 = 1 << 40;
    let (an1, ad1) = small(&x.a)?;
    let (bn1, bd1) = small(&x.b)?;
    let (an2, ad2) = small(&y.a)?;
    let (bn2, bd2) = small(&y.b)?;
    for v in [an1, ad1, bn1, bd1, an2, ad2, bn2, bd2] {
        if v.abs() >= LIM {
            return None;
        }
    }
    // x − y = A/Da + (B/Db)·√5 with positive denominators.
    let a_num = (an1 as i128) * (ad2 as i128) - (an2 as i128) * (ad1 as i128);
    let a_den = (ad1 as i128) * (ad2 as i128);
    let b_num = (bn1 as i128) * (bd2 as i128) - (bn2 as i128) * (bd1 as i128);
    let b_den = (bd1 as i128) * (bd2 as i128);
    let sa = a_num.signum();
    let sb = b_num.signum();
    let sign = if sb == 0 {
        sa
    } else if sa == 0 {
        sb
    } else if sa == sb {
        sa
    } else {
        // Compare (A/Da)² against 5(B/Db)²: cross-multiplied, the factors
        // stay within ~2×82 bits under the LIM guard.
        let lhs = a_num.checked_mul(b_den)?;
        let rhs = b_num.checked_mul(a_den)?;
        let lhs2 = lhs.checked_mul(lhs)?;
        let rhs2 = rhs.checked_mul(rhs)?.checked_mul(5)?;
        match lhs2.cmp(&rhs2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("sqrt(5) is irrational"),
        }
    };
    Some(match sign {
        0 => Ordering::Equal,
        s if s < 0 => Ordering::Less,
        _ => Ordering::Greater,
    })
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for QF5 {
            type Output = QF5;
            fn $method(self, rhs: QF5) -> QF5 {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QF5> for QF5 {
            type Output = QF5;
            fn $method(self, rhs: &QF5) -> QF5 {
                (&self).$method(rhs)
            }
        }
        impl $trait<QF5> for &QF5 {
            type Output = QF5;
            fn $method(self, rhs: QF5) -> QF5 {
                self.$method(&rhs)
            }
        }
    };
}

impl Add<&QF5> for &QF5 {
    type Output = QF5;
    fn add(self, rhs: &QF5) -> QF5 {
        QF5::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}
forward_binop!(Add, add);

impl Sub<&QF5> for &QF5 {
    type Output = QF5;
    fn sub(self, rhs: &QF5) -> QF5 {
        QF5::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}
forward_binop!(Sub, sub);

impl Mul<&QF5> for &QF5 {
    type Output = QF5;
    fn mul(self, rhs: &QF5) -> QF5 {
        let five = Rational::from_integer(BigInt::from(5));
        QF5::new(
            &self.a * &rhs.a + (&self.b * &rhs.b) * &five,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}
forward_binop!(Mul, mul);

impl Div<&QF5> for &QF5 {
    type Output = QF5;
    fn div(self, rhs: &QF5) -> QF5 {
        assert!(!rhs.is_zero(), "division by zero in QF5");
        // Multiply by the conjugate; the norm a² - 5b² of a nonzero element
        // is nonzero because √5 is irrational.
        let n = rhs.norm();
        let conj = rhs.conjugate();
        let prod = self * &conj;
        QF5::new(prod.a / &n, prod.b / &n)
    }
}
forward_binop!(Div, div);

impl Neg for &QF5 {
    type Output = QF5;
    fn neg(self) -> QF5 {
        QF5::new(-self.a.clone(), -self.b.clone())
    }
}

impl Neg for QF5 {
    type Output = QF5;
    fn neg(self) -> QF5 {
        QF5::new(-self.a, -self.b)
    }
}

impl From<i64> for QF5 {
    fn from(n: i64) -> Self {
        QF5::from_int(n)
    }
}

impl Serialize for QF5 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.literal())
    }
}

impl<'de> Deserialize<'de> for QF5 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for QF5 {
    type Err = NumError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match parse_literal(s)? {
            Value::Exact(q) => Ok(q),
            Value::Float(_) => Err(NumError::BadLiteral {
                literal: s.to_string(),
                reason: "decimal literal is not exact; use p/q or a+b*sqrt5".to_string(),
            }),
        }
    }
}

/// A parsed numeric literal: exact ℚ(√5) element or floating point.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Exact(QF5),
    Float(f64),
}

impl Value {
    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => q.to_f64(),
            Value::Float(v) => *v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }
}

/// Parse the CLI literal syntax: sums of terms over `p/q`, `a+b*sqrt5`,
/// `phi` (= 1/2+1/2*sqrt5) and plain decimals (which force float mode).
///
/// Examples: `phi-1`, `-2+1*sqrt5`, `3/2`, `0.4`, `1/2*sqrt5`.
pub fn parse_literal(input: &str) -> Result<Value, NumError> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(NumError::BadLiteral {
            literal: input.to_string(),
            reason: "empty literal".to_string(),
        });
    }
    let bad = |reason: &str| NumError::BadLiteral {
        literal: input.to_string(),
        reason: reason.to_string(),
    };

    // Split into signed terms at top-level + and - (exponent signs as in
    // `1e-3` are glued to a preceding 'e').
    let chars: Vec<char> = s.chars().collect();
    let mut terms: Vec<(i8, String)> = Vec::new();
    let mut cur = String::new();
    let mut sign: i8 = 1;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if (c == '+' || c == '-') && i > 0 {
            let prev = chars[i - 1];
            if prev == 'e' || prev == 'E' {
                cur.push(c);
                i += 1;
                continue;
            }
            if cur.is_empty() {
                return Err(bad("consecutive signs"));
            }
            terms.push((sign, std::mem::take(&mut cur)));
            sign = if c == '+' { 1 } else { -1 };
        } else if (c == '+' || c == '-') && i == 0 {
            sign = if c == '+' { 1 } else { -1 };
        } else {
            cur.push(c);
        }
        i += 1;
    }
    if cur.is_empty() {
        return Err(bad("trailing operator"));
    }
    terms.push((sign, cur));

    enum Term {
        Exact(QF5),
        Float(f64),
    }

    let parse_number = |tok: &str| -> Result<Term, NumError> {
        if let Some((n, d)) = tok.split_once('/') {
            let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
            let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            return Ok(Term::Exact(QF5::from_rational(Rational::new(n, d))));
        }
        if let Ok(n) = tok.parse::<BigInt>() {
            return Ok(Term::Exact(QF5::from_rational(Rational::from_integer(n))));
        }
        if let Ok(v) = tok.parse::<f64>() {
            if v.is_finite() {
                return Ok(Term::Float(v));
            }
        }
        Err(bad(&format!("unrecognized number {tok:?}")))
    };

    let parse_term = |tok: &str| -> Result<Term, NumError> {
        match tok {
            "phi" => return Ok(Term::Exact(QF5::phi())),
            "sqrt5" => return Ok(Term::Exact(QF5::sqrt5())),
            _ => {}
        }
        if let Some((coef, sym)) = tok.split_once('*') {
            let base = match sym {
                "phi" => QF5::phi(),
                "sqrt5" => QF5::sqrt5(),
                _ => return Err(bad(&format!("unknown symbol {sym:?}"))),
            };
            return match parse_number(coef)? {
                Term::Exact(c) => Ok(Term::Exact(&c * &base)),
                Term::Float(c) => Ok(Term::Float(c * base.to_f64())),
            };
        }
        parse_number(tok)
    };

    let parsed: Vec<(i8, Term)> = terms
        .iter()
        .map(|(sg, tok)| parse_term(tok).map(|t| (*sg, t)))
        .collect::<Result<_, _>>()?;

    let any_float = parsed.iter().any(|(_, t)| matches!(t, Term::Float(_)));
    if any_float {
        let mut total = 0.0;
        for (sg, t) in &parsed {
            let v = match t {
                Term::Exact(q) => q.to_f64(),
                Term::Float(v) => *v,
            };
            total += f64::from(*sg) * v;
        }
        Ok(Value::Float(total))
    } else {
        let mut total = QF5::zero();
        for (sg, t) in &parsed {
            if let Term::Exact(q) = t {
                if *sg > 0 {
                    total = &total + q;
                } else {
                    total = &total - q;
                }
            }
        }
        Ok(Value::Exact(total))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: (i64, i64), b: (i64, i64)) -> QF5 {
        QF5::new(
            Rational::new(BigInt::from(a.0), BigInt::from(a.1)),
            Rational::new(BigInt::from(b.0), BigInt::from(b.1)),
        )
    }

    #[test]
    fn phi_squared_is_phi_plus_one() {
        let phi = QF5::phi();
        assert_eq!(&phi * &phi, q((3, 2), (1, 2)));
        assert_eq!(&phi * &phi, &phi + &QF5::one());
    }

    #[test]
    fn sqrt5_squares_to_five() {
        let s = QF5::sqrt5();
        assert_eq!(&s * &s, QF5::from_int(5));
    }

    #[test]
    fn phi_times_phi_minus_one_is_one() {
        let phi = QF5::phi();
        let one = QF5::one();
        assert_eq!(&phi * &(&phi - &one), one);
    }

    #[test]
    fn division_inverts_multiplication() {
        let x = q((7, 3), (-2, 5));
        let y = q((1, 2), (4, 1));
        let z = &x * &y;
        assert_eq!(&z / &y, x);
        assert!(matches!(
            QF5::one().checked_div(&QF5::zero()),
            Err(NumError::DivisionByZero)
        ));
    }

    #[test]
    fn sign_case_analysis() {
        assert_eq!(QF5::zero().signum(), 0);
        assert_eq!(q((-2, 1), (1, 1)).signum(), 1); // √5 > 2
        assert_eq!(q((9, 4), (-1, 1)).signum(), 1); // (9/4)² = 81/16 > 5
        assert_eq!(q((-9, 4), (1, 1)).signum(), -1);
        assert_eq!(q((2, 1), (-1, 1)).signum(), -1); // 4 < 5
    }

    #[test]
    fn ordering_is_consistent() {
        let phi = QF5::phi();
        let one = QF5::one();
        let s5 = QF5::sqrt5();
        let nine_fourths = QF5::from_ratio(9, 4);
        assert!(&phi - &one < one);
        assert!(one < phi);
        assert!(phi < s5);
        assert!(s5 < nine_fourths);
    }

    #[test]
    fn fibonacci_powers_of_phi() {
        // φⁿ = F_n φ + F_{n-1}, exactly, for 1 ≤ n ≤ 40.
        let phi = QF5::phi();
        let mut fib = vec![0u64, 1];
        for n in 2..=40 {
            let v = fib[n - 1] + fib[n - 2];
            fib.push(v);
        }
        let mut pow = phi.clone();
        for n in 1..=40usize {
            let expect = &QF5::from_int(fib[n] as i64) * &phi + QF5::from_int(fib[n - 1] as i64);
            assert_eq!(pow, expect, "phi^{n}");
            pow = &pow * &phi;
        }
    }

    #[test]
    fn approx_known_constants() {
        let s5 = QF5::sqrt5().approx(53);
        assert!((s5.value - 2.23606797749979).abs() <= s5.abs_err);
        assert!(s5.abs_err <= 2f64.powi(-53) * 5.0);

        let phi = QF5::phi().approx(53);
        assert!((phi.value - 1.618033988749895).abs() <= phi.abs_err);

        let zero = QF5::zero().approx(10);
        assert_eq!(zero.value, 0.0);
        assert_eq!(zero.abs_err, 0.0);
    }

    #[test]
    fn approx_error_bound_is_certified() {
        // The 20-bit approximation must agree with the 80-bit one within its
        // claimed error bound.
        let samples = [
            q((22, 7), (-3, 11)),
            q((-100, 1), (41, 3)),
            q((0, 1), (1, 1000000)),
            q((1, 3), (0, 1)),
        ];
        for x in &samples {
            let rough = x.approx(20);
            let fine = x.approx(53);
            assert!(
                (rough.value - fine.value).abs() <= rough.abs_err + fine.abs_err,
                "bound violated for {x}"
            );
            assert!(rough.abs_err <= 2f64.powi(-20) * 1f64.max(fine.value.abs()) * 1.001);
        }
    }

    #[test]
    fn floor_of_quadratic_values() {
        assert_eq!(QF5::phi().floor_big(), BigInt::from(1));
        assert_eq!((-QF5::phi()).floor_big(), BigInt::from(-2));
        assert_eq!(QF5::from_ratio(5, 2).floor_big(), BigInt::from(2));
        let three_s5 = &QF5::from_int(3) * &QF5::sqrt5();
        assert_eq!(three_s5.floor_big(), BigInt::from(6));
        assert_eq!(QF5::from_int(4).floor_big(), BigInt::from(4));
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(
            QF5::from_ratio(9, 4).try_sqrt(),
            Some(QF5::from_ratio(3, 2))
        );
        assert_eq!(QF5::from_int(5).try_sqrt(), Some(QF5::sqrt5()));
        let phi = QF5::phi();
        assert_eq!((&phi * &phi).try_sqrt(), Some(phi.clone()));
        let x = q((1, 1), (1, 1)); // 1 + √5
        assert_eq!((&x * &x).try_sqrt(), Some(x));
        assert_eq!(QF5::from_int(2).try_sqrt(), None);
        assert_eq!(QF5::from_int(-1).try_sqrt(), None);
        assert_eq!(QF5::zero().try_sqrt(), Some(QF5::zero()));
    }

    #[test]
    fn literal_round_trip() {
        let samples = [
            QF5::phi(),
            QF5::sqrt5(),
            QF5::from_int(-7),
            QF5::from_ratio(22, 7),
            q((-1, 2), (3, 4)),
            q((5, 1), (-1, 1)),
            QF5::zero(),
        ];
        for x in &samples {
            let lit = x.literal();
            match parse_literal(&lit).unwrap() {
                Value::Exact(y) => assert_eq!(&y, x, "round-trip of {lit}"),
                Value::Float(_) => panic!("exact literal {lit} parsed as float"),
            }
        }
    }

    #[test]
    fn parse_literal_forms() {
        assert_eq!(parse_literal("phi").unwrap(), Value::Exact(QF5::phi()));
        assert_eq!(
            parse_literal("1/2+1/2*sqrt5").unwrap(),
            Value::Exact(QF5::phi())
        );
        assert_eq!(
            parse_literal("phi-1").unwrap(),
            Value::Exact(&QF5::phi() - &QF5::one())
        );
        assert_eq!(
            parse_literal(" 3/2 ").unwrap(),
            Value::Exact(QF5::from_ratio(3, 2))
        );
        match parse_literal("0.4").unwrap() {
            Value::Float(v) => assert!((v - 0.4).abs() < 1e-15),
            _ => panic!("decimal should be float"),
        }
        match parse_literal("phi-0.5").unwrap() {
            Value::Float(v) => assert!((v - (1.618033988749895 - 0.5)).abs() < 1e-12),
            _ => panic!("mixed literal should be float"),
        }
        assert!(parse_literal("").is_err());
        assert!(parse_literal("2*phi5").is_err());
        assert!(parse_literal("1/0").is_err());
    }
}
