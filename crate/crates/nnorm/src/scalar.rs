//! The shared numeric contract for geometry and dynamics.
//!
//! Every operation in this crate is generic over [`Scalar`], with two
//! implementations: exact ℚ(√5) elements ([`QF5`]) and finite floats
//! ([`F64`]). Exact scalars compare exactly; floats fall back to the
//! documented tolerance where a predicate asks for one (`eq_within`).
//! The trait deliberately exposes total order (`Ord`) in both modes so
//! ordered containers work for gap bookkeeping.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::Serialize;

use crate::exactnum::QF5;

/// Default comparison tolerance for float-mode geometry predicates.
pub const FLOAT_TOL: f64 = 1e-12;

pub trait Scalar:
    Clone + Ord + Eq + Hash + fmt::Debug + fmt::Display + Serialize + Send + Sync + 'static
{
    /// True for coordinate types with exact comparisons.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;
    /// √5 — exact in ℚ(√5), best f64 otherwise.
    fn sqrt5() -> Self;
    /// The golden ratio (1 + √5)/2.
    fn phi() -> Self;

    fn ref_add(&self, rhs: &Self) -> Self;
    fn ref_sub(&self, rhs: &Self) -> Self;
    fn ref_mul(&self, rhs: &Self) -> Self;
    /// Division; panics on a zero divisor (callers validate).
    fn ref_div(&self, rhs: &Self) -> Self;
    fn ref_neg(&self) -> Self;
    fn abs(&self) -> Self;

    /// Exact sign in {-1, 0, +1}.
    fn signum_i(&self) -> i8;
    fn is_zero(&self) -> bool {
        self.signum_i() == 0
    }
    fn is_positive(&self) -> bool {
        self.signum_i() > 0
    }

    fn to_f64(&self) -> f64;

    /// Float approximation at a requested precision (certified for exact
    /// scalars, identity for floats).
    fn to_f64_bits(&self, _bits: u32) -> f64 {
        self.to_f64()
    }

    /// Square root inside the scalar type: exact for ℚ(√5) when one exists,
    /// plain `sqrt` for floats. `None` for negatives (and for exact values
    /// with no representable root).
    fn try_sqrt(&self) -> Option<Self>;

    /// Equality up to `tol` in float mode; exact equality in exact mode.
    fn eq_within(&self, rhs: &Self, tol: f64) -> bool;

    /// Round-trippable literal text (`a+b*sqrt5` or shortest decimal).
    fn literal(&self) -> String;

    /// Floor as i64; only called on values of moderate magnitude.
    fn floor_i64(&self) -> i64;
}

impl Scalar for QF5 {
    const EXACT: bool = true;

    fn zero() -> Self {
        QF5::zero()
    }
    fn one() -> Self {
        QF5::one()
    }
    fn from_int(n: i64) -> Self {
        QF5::from_int(n)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        QF5::from_ratio(num, den)
    }
    fn sqrt5() -> Self {
        QF5::sqrt5()
    }
    fn phi() -> Self {
        QF5::phi()
    }

    fn ref_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ref_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn ref_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn ref_div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn ref_neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        QF5::abs(self)
    }

    fn signum_i(&self) -> i8 {
        self.signum()
    }

    fn to_f64(&self) -> f64 {
        QF5::to_f64(self)
    }

    fn to_f64_bits(&self, bits: u32) -> f64 {
        self.approx(bits).value
    }

    fn try_sqrt(&self) -> Option<Self> {
        QF5::try_sqrt(self)
    }

    fn eq_within(&self, rhs: &Self, _tol: f64) -> bool {
        self == rhs
    }

    fn literal(&self) -> String {
        QF5::literal(self)
    }

    fn floor_i64(&self) -> i64 {
        use num_traits::ToPrimitive;
        self.floor_big().to_i64().expect("floor_i64 out of range")
    }
}

/// A finite `f64` with total order, for use as a coordinate scalar.
///
/// `-0.0` is normalized to `+0.0` on construction so ordered containers
/// never see two distinct zeros.
#[derive(Clone, Copy)]
pub struct F64(f64);

impl F64 {
    pub fn new(v: f64) -> Self {
        debug_assert!(v.is_finite(), "non-finite coordinate {v}");
        F64(v + 0.0)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<f64> for F64 {
    fn from(v: f64) -> Self {
        F64::new(v)
    }
}

impl fmt::Debug for F64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for F64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl PartialEq for F64 {
    fn eq(&self, other: &Self) -> bool {
        self.0.total_cmp(&other.0) == Ordering::Equal
    }
}
impl Eq for F64 {}

impl PartialOrd for F64 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for F64 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Hash for F64 {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state);
    }
}

impl Serialize for F64 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.0)
    }
}

macro_rules! f64_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for F64 {
            type Output = F64;
            fn $method(self, rhs: F64) -> F64 {
                F64::new(self.0 $op rhs.0)
            }
        }
    };
}
f64_binop!(Add, add, +);
f64_binop!(Sub, sub, -);
f64_binop!(Mul, mul, *);
f64_binop!(Div, div, /);

impl Neg for F64 {
    type Output = F64;
    fn neg(self) -> F64 {
        F64::new(-self.0)
    }
}

impl Scalar for F64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        F64::new(0.0)
    }
    fn one() -> Self {
        F64::new(1.0)
    }
    fn from_int(n: i64) -> Self {
        F64::new(n as f64)
    }
    fn from_ratio(num: i64, den: i64) -> Self {
        F64::new(num as f64 / den as f64)
    }
    fn sqrt5() -> Self {
        F64::new(5f64.sqrt())
    }
    fn phi() -> Self {
        F64::new((1.0 + 5f64.sqrt()) / 2.0)
    }

    fn ref_add(&self, rhs: &Self) -> Self {
        F64::new(self.0 + rhs.0)
    }
    fn ref_sub(&self, rhs: &Self) -> Self {
        F64::new(self.0 - rhs.0)
    }
    fn ref_mul(&self, rhs: &Self) -> Self {
        F64::new(self.0 * rhs.0)
    }
    fn ref_div(&self, rhs: &Self) -> Self {
        assert!(rhs.0 != 0.0, "division by zero");
        F64::new(self.0 / rhs.0)
    }
    fn ref_neg(&self) -> Self {
        F64::new(-self.0)
    }
    fn abs(&self) -> Self {
        F64::new(self.0.abs())
    }

    fn signum_i(&self) -> i8 {
        if self.0 == 0.0 {
            0
        } else if self.0 < 0.0 {
            -1
        } else {
            1
        }
    }

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn try_sqrt(&self) -> Option<Self> {
        if self.0 < 0.0 {
            None
        } else {
            Some(F64::new(self.0.sqrt()))
        }
    }

    fn eq_within(&self, rhs: &Self, tol: f64) -> bool {
        let scale = 1f64.max(self.0.abs()).max(rhs.0.abs());
        (self.0 - rhs.0).abs() <= tol * scale
    }

    fn literal(&self) -> String {
        format!("{}", self.0)
    }

    fn floor_i64(&self) -> i64 {
        self.0.floor() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn negative_zero_is_normalized() {
        let a = F64::new(-0.0);
        let b = F64::new(0.0);
        assert_eq!(a, b);
        let mut set = BTreeSet::new();
        set.insert(a);
        set.insert(b);
        assert_eq!(set.len(), 1);
    }

    #[test]
    fn float_tolerance_is_scale_relative() {
        let a = F64::new(1e6);
        let b = F64::new(1e6 + 1e-7);
        assert!(a.eq_within(&b, 1e-12));
        let c = F64::new(1.0);
        let d = F64::new(1.0 + 1e-9);
        assert!(!c.eq_within(&d, 1e-12));
    }

    #[test]
    fn exact_scalar_ignores_tolerance() {
        let x = QF5::phi();
        let y = &x + &QF5::from_ratio(1, 1_000_000_000_000);
        assert!(!x.eq_within(&y, 1.0));
        assert!(x.eq_within(&x.clone(), 0.0));
    }
}
