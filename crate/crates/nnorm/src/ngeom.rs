//! Geometry of the pseudo-norm N(x + iy) = √|xy|.
//!
//! The unit ball of N is the non-convex star body bounded by the hyperbolas
//! xy = ±1; N is homogeneous (N(tz) = |t|N(z)) and invariant under the
//! diagonal flow g_t(x, y) = (eᵗx, e⁻ᵗy). To stay radical-free in exact
//! mode, everything internal works with N² = |xy| and squared areas; N
//! itself is produced only at output boundaries.
//!
//! A triangle is *admissible* when its three vertices lie on the boundary of
//! its minimal axis-aligned bounding rectangle with no two on the same side.
//! For such triangles the area is a closed function of the squared N-lengths
//! α, β, γ of the sides:
//!
//! area = √(α² + β² + γ² − 2αβ + 2αγ + 2βγ) / 2
//!
//! where γ belongs to the side opposite the corner vertex (the one at a
//! rectangle corner) and α, β to the two sides adjacent to it. The formula
//! is symmetric in α ↔ β, so any residual labeling ambiguity between the two
//! adjacent sides does not affect areas.

use serde::Serialize;
use thiserror::Error;

use crate::exactnum::QF5;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("point set has {got} points but the operation needs at least {needed}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("triangle vertices must be pairwise distinct")]
    DuplicateVertex,
    #[error("degenerate triangle: zero signed area")]
    DegenerateTriangle,
    #[error("side parameters must be non-negative")]
    NegativeSide,
    #[error("epsilon {eps} outside the admissible range (0, {max})")]
    EpsilonOutOfRange { eps: f64, max: f64 },
    #[error("lattice bound must be positive")]
    NonPositiveBound,
    #[error("lattice stretch factor must be positive")]
    NonPositiveStretch,
    #[error("bad point file at line {line}: {reason}")]
    BadPointFile { line: usize, reason: String },
}

/// A planar point with exact or float coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Point2<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point2<S> {
    pub fn new(x: S, y: S) -> Self {
        Point2 { x, y }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Point2::new(self.x.ref_sub(&rhs.x), self.y.ref_sub(&rhs.y))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Point2::new(self.x.ref_add(&rhs.x), self.y.ref_add(&rhs.y))
    }

    pub fn scale(&self, t: &S) -> Self {
        Point2::new(self.x.ref_mul(t), self.y.ref_mul(t))
    }

    /// 2×2 determinant |self rhs|.
    pub fn det(&self, rhs: &Self) -> S {
        self.x.ref_mul(&rhs.y).ref_sub(&self.y.ref_mul(&rhs.x))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

/// N²(v) = |x·y|. Scales as t² under v ↦ t·v.
pub fn nnorm_sq<S: Scalar>(v: &Point2<S>) -> S {
    v.x.ref_mul(&v.y).abs()
}

/// N(v) as a float, for output.
pub fn nnorm_f64<S: Scalar>(v: &Point2<S>) -> f64 {
    nnorm_sq(v).to_f64().max(0.0).sqrt()
}

/// A finite planar point set (ordering is preserved; it is the caller's
/// index space).
#[derive(Clone, Debug, Serialize)]
pub struct PointSet<S> {
    pub points: Vec<Point2<S>>,
}

/// Which coordinate two points share, when they violate general position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl<S: Scalar> PointSet<S> {
    pub fn new(points: Vec<Point2<S>>) -> Self {
        PointSet { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Checks that no two points share an x- or y-coordinate (within `tol`
    /// in float mode). Returns the first offending pair.
    pub fn general_position(&self, tol: f64) -> Result<(), (usize, usize, Axis)> {
        let n = self.points.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let pi = &self.points[i];
                let pj = &self.points[j];
                if pi.x.eq_within(&pj.x, tol) {
                    return Err((i, j, Axis::Vertical));
                }
                if pi.y.eq_within(&pj.y, tol) {
                    return Err((i, j, Axis::Horizontal));
                }
            }
        }
        Ok(())
    }

    /// Serializes as CSV, one `x,y` pair per line, using round-trippable
    /// literals.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            out.push_str(&p.x.literal());
            out.push(',');
            out.push_str(&p.y.literal());
            out.push('\n');
        }
        out
    }
}

/// δ²(Γ): minimum of N² over all unordered pairs of distinct points.
pub fn min_pairwise_nnorm_sq<S: Scalar>(set: &PointSet<S>) -> Result<S, GeomError> {
    if set.len() < 2 {
        return Err(GeomError::TooFewPoints {
            needed: 2,
            got: set.len(),
        });
    }
    let mut best: Option<S> = None;
    for i in 0..set.len() {
        for j in (i + 1)..set.len() {
            let d = nnorm_sq(&set.points[j].sub(&set.points[i]));
            best = Some(match best {
                None => d,
                Some(b) => {
                    if d < b {
                        d
                    } else {
                        b
                    }
                }
            });
        }
    }
    Ok(best.unwrap())
}

/// A triangle given by three vertices.
#[derive(Clone, Debug)]
pub struct Triangle<S> {
    pub p: Point2<S>,
    pub q: Point2<S>,
    pub r: Point2<S>,
}

impl<S: Scalar> Triangle<S> {
    pub fn new(p: Point2<S>, q: Point2<S>, r: Point2<S>) -> Self {
        Triangle { p, q, r }
    }

    pub fn vertex(&self, i: usize) -> &Point2<S> {
        match i {
            0 => &self.p,
            1 => &self.q,
            2 => &self.r,
            _ => panic!("triangle vertex index out of range"),
        }
    }

    /// Twice the signed area (positive when p, q, r are counter-clockwise).
    pub fn signed_area_x2(&self) -> S {
        self.q.sub(&self.p).det(&self.r.sub(&self.p))
    }
}

/// Side labeling of an admissible triangle.
///
/// `ccw` lists the vertex indices counter-clockwise starting at the corner
/// vertex; `alpha` and `beta` are the squared N-lengths of the two sides
/// adjacent to the corner, `gamma` of the opposite side.
#[derive(Clone, Debug)]
pub struct AdmissibleLabels<S> {
    pub corner: usize,
    pub ccw: [usize; 3],
    pub alpha: S,
    pub beta: S,
    pub gamma: S,
}

/// Tests Definition-style admissibility: all three vertices on the boundary
/// of the minimal bounding rectangle, no two on the same side. Returns the
/// side labeling when admissible, `None` when not, and an error for
/// degenerate input.
pub fn is_admissible<S: Scalar>(t: &Triangle<S>) -> Result<Option<AdmissibleLabels<S>>, GeomError> {
    let verts = [&t.p, &t.q, &t.r];
    for i in 0..3 {
        for j in (i + 1)..3 {
            if verts[i].x == verts[j].x && verts[i].y == verts[j].y {
                return Err(GeomError::DuplicateVertex);
            }
        }
    }
    if t.signed_area_x2().is_zero() {
        return Err(GeomError::DegenerateTriangle);
    }

    let xs: Vec<&S> = verts.iter().map(|p| &p.x).collect();
    let ys: Vec<&S> = verts.iter().map(|p| &p.y).collect();
    let x_min = xs.iter().cloned().min().unwrap();
    let x_max = xs.iter().cloned().max().unwrap();
    let y_min = ys.iter().cloned().min().unwrap();
    let y_max = ys.iter().cloned().max().unwrap();

    // side_count[v] = number of rectangle sides through vertex v; a side
    // touched by two vertices disqualifies the triangle.
    let mut side_count = [0usize; 3];
    for side in 0..4 {
        let mut on_side = Vec::new();
        for v in 0..3 {
            let hit = match side {
                0 => xs[v] == x_min,
                1 => xs[v] == x_max,
                2 => ys[v] == y_min,
                _ => ys[v] == y_max,
            };
            if hit {
                on_side.push(v);
            }
        }
        if on_side.len() >= 2 {
            return Ok(None);
        }
        if let Some(&v) = on_side.first() {
            side_count[v] += 1;
        }
    }
    // With all four extremes attained once each, the counts are a
    // permutation of {2, 1, 1}: one corner vertex, two side vertices.
    if side_count.contains(&0) {
        return Ok(None);
    }
    let corner = match side_count.iter().position(|&c| c == 2) {
        Some(c) => c,
        None => return Ok(None),
    };

    // Counter-clockwise order starting at the corner.
    let others: Vec<usize> = (0..3).filter(|&v| v != corner).collect();
    let (v1, v2) = (others[0], others[1]);
    let oriented = Triangle::new(verts[corner].clone(), verts[v1].clone(), verts[v2].clone());
    let ccw = if oriented.signed_area_x2().is_positive() {
        [corner, v1, v2]
    } else {
        [corner, v2, v1]
    };

    let alpha = nnorm_sq(&verts[ccw[1]].sub(verts[ccw[0]]));
    let beta = nnorm_sq(&verts[ccw[0]].sub(verts[ccw[2]]));
    let gamma = nnorm_sq(&verts[ccw[2]].sub(verts[ccw[1]]));
    Ok(Some(AdmissibleLabels {
        corner,
        ccw,
        alpha,
        beta,
        gamma,
    }))
}

/// Squared area of an admissible triangle from its squared side N-lengths:
/// (α² + β² + γ² − 2αβ + 2αγ + 2βγ) / 4.
///
/// Degenerate labelings (a zero side) are accepted — the formula remains
/// valid in the limit — while [`is_admissible`] rejects them.
pub fn admissible_area_sq_from_sides<S: Scalar>(
    alpha: &S,
    beta: &S,
    gamma: &S,
) -> Result<S, GeomError> {
    if alpha.signum_i() < 0 || beta.signum_i() < 0 || gamma.signum_i() < 0 {
        return Err(GeomError::NegativeSide);
    }
    let a2 = alpha.ref_mul(alpha);
    let b2 = beta.ref_mul(beta);
    let c2 = gamma.ref_mul(gamma);
    let ab = alpha.ref_mul(beta);
    let ac = alpha.ref_mul(gamma);
    let bc = beta.ref_mul(gamma);
    let two = S::from_int(2);
    let f = a2
        .ref_add(&b2)
        .ref_add(&c2)
        .ref_sub(&two.ref_mul(&ab))
        .ref_add(&two.ref_mul(&ac))
        .ref_add(&two.ref_mul(&bc));
    Ok(f.ref_div(&S::from_int(4)))
}

/// The area itself, as a float.
pub fn admissible_area_from_sides<S: Scalar>(
    alpha: &S,
    beta: &S,
    gamma: &S,
) -> Result<f64, GeomError> {
    Ok(admissible_area_sq_from_sides(alpha, beta, gamma)?
        .to_f64()
        .max(0.0)
        .sqrt())
}

/// The bounds chain for admissible-triangle areas, kept as squared
/// quantities: with m = min(α,β,γ) and M = max(α,β,γ),
///
/// (√5/2 m)² ≤ area² ≤ (m² + 4M²)/4 ≤ (√5/2 M)²,
///
/// and when area ≤ √2·m additionally (M² + 4m²)/4 ≤ area².
#[derive(Clone, Debug)]
pub struct AreaBoundsSq<S> {
    pub m: S,
    pub big_m: S,
    pub area_sq: S,
    pub lower_sq: S,
    pub upper_sq: S,
    pub weak_upper_sq: S,
    /// Present exactly when area² ≤ 2m².
    pub strong_lower_sq: Option<S>,
}

pub fn area_bounds_sq<S: Scalar>(
    alpha: &S,
    beta: &S,
    gamma: &S,
) -> Result<AreaBoundsSq<S>, GeomError> {
    let area_sq = admissible_area_sq_from_sides(alpha, beta, gamma)?;
    let mut sides = [alpha, beta, gamma];
    sides.sort();
    let m = sides[0].clone();
    let big_m = sides[2].clone();
    let four = S::from_int(4);
    let m2 = m.ref_mul(&m);
    let bm2 = big_m.ref_mul(&big_m);
    let lower_sq = S::from_ratio(5, 4).ref_mul(&m2);
    let upper_sq = m2.ref_add(&four.ref_mul(&bm2)).ref_div(&four);
    let weak_upper_sq = S::from_ratio(5, 4).ref_mul(&bm2);
    let strong_lower_sq = if area_sq <= S::from_int(2).ref_mul(&m2) {
        Some(bm2.ref_add(&four.ref_mul(&m2)).ref_div(&four))
    } else {
        None
    };
    Ok(AreaBoundsSq {
        m,
        big_m,
        area_sq,
        lower_sq,
        upper_sq,
        weak_upper_sq,
        strong_lower_sq,
    })
}

/// Upper limit of the distortion parameter: √2 − √5/2.
pub fn distortion_eps_max() -> f64 {
    2f64.sqrt() - 5f64.sqrt() / 2.0
}

/// The distortion multiplier 1 + (2√2 + √5)·ε, valid for
/// 0 < ε < √2 − √5/2: any admissible triangle with
/// area ≤ (√5/2 + ε)·m has M ≤ multiplier·m.
pub fn distortion_bound(eps: f64) -> Result<f64, GeomError> {
    let max = distortion_eps_max();
    if !(eps > 0.0 && eps < max) {
        return Err(GeomError::EpsilonOutOfRange { eps, max });
    }
    Ok(1.0 + (2.0 * 2f64.sqrt() + 5f64.sqrt()) * eps)
}

/// Exact test of M ≤ (1 + (2√2 + √5)ε)·m for exact m, M ≥ 0 and rational ε.
///
/// The bound mixes √2 with ℚ(√5); the comparison is decided exactly by
/// isolating the 2√2·ε·m term and squaring, staying inside ℚ(√5).
pub fn distortion_holds_exact(m: &QF5, big_m: &QF5, eps: &crate::exactnum::Rational) -> bool {
    use crate::exactnum::Rational;
    let eps_q = QF5::new(eps.clone(), Rational::from_integer(0.into()));
    // D = M − m − ε√5·m  vs  2√2·ε·m
    let d = big_m - m - &(&(&eps_q * &QF5::sqrt5()) * m);
    if d.signum() <= 0 {
        return true;
    }
    let rhs_sq = &(&QF5::from_int(8) * &(&eps_q * &eps_q)) * &(m * m);
    &d * &d <= rhs_sq
}

/// Counter-clockwise convex hull by monotone chain; collinear points are
/// excluded from the hull boundary. One point yields a 1-gon, two a 2-gon.
pub fn convex_hull<S: Scalar>(set: &PointSet<S>) -> Vec<Point2<S>> {
    let mut pts: Vec<Point2<S>> = set.points.clone();
    pts.sort_by(|p, q| p.x.cmp(&q.x).then(p.y.cmp(&q.y)));
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let cross =
        |o: &Point2<S>, a: &Point2<S>, b: &Point2<S>| -> i8 { a.sub(o).det(&b.sub(o)).signum_i() };
    let mut lower: Vec<Point2<S>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point2<S>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    if upper.len() + lower.len() < 3 {
        // All points collinear: return the two extremes as a 2-gon.
        let mut ends = vec![pts[0].clone(), pts[n - 1].clone()];
        ends.dedup_by(|a, b| a.x == b.x && a.y == b.y);
        return ends;
    }
    lower.extend(upper);
    lower
}

/// Twice the polygon area by the shoelace formula (absolute value).
pub fn polygon_area_x2<S: Scalar>(poly: &[Point2<S>]) -> S {
    if poly.len() < 3 {
        return S::zero();
    }
    let mut acc = S::zero();
    for i in 0..poly.len() {
        let p = &poly[i];
        let q = &poly[(i + 1) % poly.len()];
        acc = acc.ref_add(&p.det(q));
    }
    acc.abs()
}

/// Squared N-lengths of the directed edges of a closed polygon.
///
/// A 2-gon contributes both directed edges, so a segment's N-perimeter is
/// twice its N-length; axis-aligned edges contribute zero.
pub fn npolygon_edge_nsq<S: Scalar>(poly: &[Point2<S>]) -> Vec<S> {
    if poly.len() < 2 {
        return Vec::new();
    }
    (0..poly.len())
        .map(|i| nnorm_sq(&poly[(i + 1) % poly.len()].sub(&poly[i])))
        .collect()
}

/// N-perimeter p(P) = Σ N(z_{i+1} − z_i) as a float.
pub fn npolygon_length<S: Scalar>(poly: &[Point2<S>]) -> f64 {
    npolygon_edge_nsq(poly)
        .iter()
        .map(|nsq| nsq.to_f64().max(0.0).sqrt())
        .sum()
}

/// A golden lattice g_t·Λ where Λ = ℤ(−1,1) ⊕ ℤ(φ−1, φ).
///
/// `stretch` is eᵗ; the basis is (−eᵗ, e⁻ᵗ) and ((φ−1)eᵗ, φe⁻ᵗ). The
/// determinant is √5 for every t, and the minimum of N² over nonzero
/// lattice vectors is exactly 1 (attained at the basis vectors themselves).
#[derive(Clone, Debug)]
pub struct GoldenLattice<S> {
    stretch: S,
}

impl<S: Scalar> GoldenLattice<S> {
    /// Lattice at flow parameter eᵗ = `stretch` (> 0).
    pub fn with_stretch(stretch: S) -> Result<Self, GeomError> {
        if stretch.signum_i() <= 0 {
            return Err(GeomError::NonPositiveStretch);
        }
        Ok(GoldenLattice { stretch })
    }

    /// The t = 0 member Λ itself.
    pub fn standard() -> Self {
        GoldenLattice { stretch: S::one() }
    }

    pub fn stretch(&self) -> &S {
        &self.stretch
    }

    /// Basis pair (g_t(−1, 1), g_t(φ−1, φ)).
    pub fn basis(&self) -> (Point2<S>, Point2<S>) {
        let u = &self.stretch;
        let inv = S::one().ref_div(u);
        let phi = S::phi();
        let phi_m1 = phi.ref_sub(&S::one());
        (
            Point2::new(u.ref_neg(), inv.clone()),
            Point2::new(phi_m1.ref_mul(u), phi.ref_mul(&inv)),
        )
    }

    /// The lattice vector m·u + n·v.
    pub fn vector(&self, m: i64, n: i64) -> Point2<S> {
        let (u, v) = self.basis();
        u.scale(&S::from_int(m)).add(&v.scale(&S::from_int(n)))
    }

    /// All lattice vectors with sup-norm ≤ `bound`, in deterministic
    /// (m, n) order. Includes the origin.
    pub fn points_within(&self, bound: &S) -> Result<PointSet<S>, GeomError> {
        if bound.signum_i() <= 0 {
            return Err(GeomError::NonPositiveBound);
        }
        // |x| ≤ B gives |m − n(φ−1)| ≤ B/u, |y| ≤ B gives |m + nφ| ≤ B·u;
        // summing, |n|√5 ≤ B(u + 1/u).
        let u = &self.stretch;
        let bx = bound.ref_div(u);
        let by = bound.ref_mul(u);
        let n_cap = bx.ref_add(&by).ref_div(&S::sqrt5()).floor_i64();
        let mut points = Vec::new();
        let phi = S::phi();
        for n in -n_cap..=n_cap {
            // m ∈ [−By − nφ, By − nφ]
            let nphi = S::from_int(n).ref_mul(&phi);
            let lo = by.ref_neg().ref_sub(&nphi);
            let hi = by.ref_sub(&nphi);
            let m_lo = lo.floor_i64();
            let m_hi = hi.floor_i64() + 1;
            for m in m_lo..=m_hi {
                let p = self.vector(m, n);
                if p.x.abs() <= *bound && p.y.abs() <= *bound {
                    points.push(p);
                }
            }
        }
        Ok(PointSet::new(points))
    }
}

/// Parsed point file in whichever numeric mode the literals dictate.
pub enum ParsedPoints {
    Exact(PointSet<QF5>),
    Float(PointSet<crate::scalar::F64>),
}

/// Reads the CSV point format: one `x,y` per line, `#` comments and blank
/// lines ignored, numeric-literal syntax per field. The set is exact when
/// every literal is exact, float otherwise.
pub fn parse_point_file(text: &str) -> Result<ParsedPoints, GeomError> {
    use crate::exactnum::{parse_literal, Value};
    use crate::scalar::F64;
    let mut values: Vec<(Value, Value)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (xs, ys) = line
            .split_once(',')
            .ok_or_else(|| GeomError::BadPointFile {
                line: idx + 1,
                reason: "expected `x,y`".to_string(),
            })?;
        let parse = |s: &str| {
            parse_literal(s).map_err(|e| GeomError::BadPointFile {
                line: idx + 1,
                reason: e.to_string(),
            })
        };
        values.push((parse(xs)?, parse(ys)?));
    }
    let all_exact = values.iter().all(|(x, y)| x.is_exact() && y.is_exact());
    if all_exact {
        let points = values
            .into_iter()
            .map(|(x, y)| match (x, y) {
                (Value::Exact(a), Value::Exact(b)) => Point2::new(a, b),
                _ => unreachable!(),
            })
            .collect();
        Ok(ParsedPoints::Exact(PointSet::new(points)))
    } else {
        let points = values
            .into_iter()
            .map(|(x, y)| Point2::new(F64::new(x.to_f64()), F64::new(y.to_f64())))
            .collect();
        Ok(ParsedPoints::Float(PointSet::new(points)))
    }
}

/// The three vertices {0, (−1,1), (φ−1,φ)} of the golden triangle, the
/// equality configuration of the packing bound.
pub fn golden_triple<S: Scalar>() -> PointSet<S> {
    let phi = S::phi();
    let one = S::one();
    PointSet::new(vec![
        Point2::new(S::zero(), S::zero()),
        Point2::new(one.ref_neg(), one.clone()),
        Point2::new(phi.ref_sub(&one), phi),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::F64;

    fn qp(x: QF5, y: QF5) -> Point2<QF5> {
        Point2::new(x, y)
    }

    fn qi(x: i64, y: i64) -> Point2<QF5> {
        Point2::new(QF5::from_int(x), QF5::from_int(y))
    }

    #[test]
    fn nnorm_examples() {
        assert_eq!(nnorm_sq(&qi(1, -1)), QF5::one());
        assert_eq!(nnorm_sq(&qi(0, 7)), QF5::zero());
        let phi = QF5::phi();
        let v = qp(&phi - &QF5::one(), phi.clone());
        assert_eq!(nnorm_sq(&v), QF5::one()); // φ(φ−1) = 1
    }

    #[test]
    fn nnorm_scaling_is_quadratic() {
        let v = qp(QF5::from_ratio(3, 7), QF5::from_ratio(-5, 2));
        let t = QF5::from_ratio(-11, 4);
        let tv = v.scale(&t);
        assert_eq!(nnorm_sq(&tv), &(&t * &t) * &nnorm_sq(&v));
    }

    #[test]
    fn min_pairwise_examples() {
        let set = PointSet::new(vec![qi(0, 0), qi(1, 1)]);
        assert_eq!(min_pairwise_nnorm_sq(&set).unwrap(), QF5::one());

        let golden: PointSet<QF5> = golden_triple();
        assert_eq!(min_pairwise_nnorm_sq(&golden).unwrap(), QF5::one());

        let axis = PointSet::new(vec![qi(0, 0), qi(2, 0)]);
        assert_eq!(min_pairwise_nnorm_sq(&axis).unwrap(), QF5::zero());

        let single = PointSet::new(vec![qi(0, 0)]);
        assert!(min_pairwise_nnorm_sq(&single).is_err());
    }

    #[test]
    fn admissibility_examples() {
        // (0,0), (2,1), (1,2): corner at (0,0).
        let t = Triangle::new(qi(0, 0), qi(2, 1), qi(1, 2));
        let labels = is_admissible(&t).unwrap().expect("admissible");
        assert_eq!(labels.corner, 0);

        // (1,2) interior to the box [0,2]×[0,3].
        let t = Triangle::new(qi(0, 0), qi(1, 2), qi(2, 3));
        assert!(is_admissible(&t).unwrap().is_none());

        // (0,0), (3,1), (2,−1): box [0,3]×[−1,1].
        let t = Triangle::new(qi(0, 0), qi(3, 1), qi(2, -1));
        assert!(is_admissible(&t).unwrap().is_some());

        // Degenerate: collinear.
        let t = Triangle::new(qi(0, 0), qi(1, 1), qi(2, 2));
        assert!(matches!(
            is_admissible(&t),
            Err(GeomError::DegenerateTriangle)
        ));
    }

    #[test]
    fn golden_triangle_labels_are_unit() {
        let set: PointSet<QF5> = golden_triple();
        let t = Triangle::new(
            set.points[0].clone(),
            set.points[1].clone(),
            set.points[2].clone(),
        );
        let labels = is_admissible(&t).unwrap().expect("admissible");
        assert_eq!(labels.alpha, QF5::one());
        assert_eq!(labels.beta, QF5::one());
        assert_eq!(labels.gamma, QF5::one());
        // Corner vertex is (φ−1, φ): it attains both x_max and y_max.
        assert_eq!(labels.corner, 2);
    }

    #[test]
    fn area_formula_examples() {
        let a = admissible_area_sq_from_sides(&QF5::from_int(2), &QF5::from_int(2), &QF5::one())
            .unwrap();
        assert_eq!(a, QF5::from_ratio(9, 4)); // area = 3/2

        let a = admissible_area_sq_from_sides(&QF5::one(), &QF5::one(), &QF5::one()).unwrap();
        assert_eq!(a, QF5::from_ratio(5, 4)); // area = √5/2

        let a = admissible_area_sq_from_sides(&QF5::zero(), &QF5::zero(), &QF5::one()).unwrap();
        assert_eq!(a, QF5::from_ratio(1, 4)); // area = 1/2

        assert!(
            admissible_area_sq_from_sides(&QF5::from_int(-1), &QF5::one(), &QF5::one()).is_err()
        );
    }

    #[test]
    fn area_formula_matches_shoelace_on_golden_triangle() {
        let set: PointSet<QF5> = golden_triple();
        let t = Triangle::new(
            set.points[0].clone(),
            set.points[1].clone(),
            set.points[2].clone(),
        );
        let labels = is_admissible(&t).unwrap().unwrap();
        let f4 = admissible_area_sq_from_sides(&labels.alpha, &labels.beta, &labels.gamma).unwrap();
        let x2 = t.signed_area_x2().abs();
        assert_eq!(&f4 * &QF5::from_int(4), &x2 * &x2);
    }

    #[test]
    fn area_bounds_examples() {
        let b = area_bounds_sq(&QF5::one(), &QF5::one(), &QF5::one()).unwrap();
        assert_eq!(b.lower_sq, QF5::from_ratio(5, 4));
        assert_eq!(b.upper_sq, QF5::from_ratio(5, 4));
        assert_eq!(b.strong_lower_sq, Some(QF5::from_ratio(5, 4)));

        let b = area_bounds_sq(&QF5::from_int(2), &QF5::from_int(2), &QF5::one()).unwrap();
        assert_eq!(b.m, QF5::one());
        assert_eq!(b.big_m, QF5::from_int(2));
        assert_eq!(b.lower_sq, QF5::from_ratio(5, 4));
        assert_eq!(b.upper_sq, QF5::from_ratio(17, 4)); // (1 + 16)/4
                                                        // area = 3/2: area² = 9/4 > 2m² = 2 → no strong lower bound.
        assert_eq!(b.strong_lower_sq, None);
        assert!(b.lower_sq <= b.area_sq && b.area_sq <= b.upper_sq);

        let b = area_bounds_sq(&QF5::zero(), &QF5::zero(), &QF5::one()).unwrap();
        assert_eq!(b.lower_sq, QF5::zero());
        assert_eq!(b.upper_sq, QF5::one());
    }

    #[test]
    fn distortion_bound_examples() {
        let m = distortion_bound(0.01).unwrap();
        assert!((m - 1.0506).abs() < 1e-3);
        assert!(distortion_bound(0.3).is_err());
        assert!(distortion_bound(0.0).is_err());
        assert!(distortion_bound(-0.1).is_err());
    }

    #[test]
    fn distortion_exact_comparison() {
        use crate::exactnum::Rational;
        let eps = Rational::new(1.into(), 50.into());
        // M/m = 1.02 is within 1 + (2√2+√5)/50 ≈ 1.1013.
        assert!(distortion_holds_exact(
            &QF5::from_int(50),
            &QF5::from_int(51),
            &eps
        ));
        // M/m = 1.2 is not.
        assert!(!distortion_holds_exact(
            &QF5::from_int(5),
            &QF5::from_int(6),
            &eps
        ));
    }

    #[test]
    fn hull_examples() {
        let set = PointSet::new(vec![
            qi(0, 0),
            qi(1, 0),
            qi(0, 1),
            qi(1, 1),
            qp(QF5::from_ratio(1, 2), QF5::from_ratio(1, 2)),
        ]);
        let hull = convex_hull(&set);
        assert_eq!(hull.len(), 4);

        let two = PointSet::new(vec![qi(0, 0), qi(1, 1)]);
        assert_eq!(convex_hull(&two).len(), 2);

        let golden: PointSet<QF5> = golden_triple();
        assert_eq!(convex_hull(&golden).len(), 3);

        let collinear = PointSet::new(vec![qi(0, 0), qi(1, 1), qi(2, 2), qi(3, 3)]);
        let hull = convex_hull(&collinear);
        assert_eq!(hull.len(), 2);
    }

    #[test]
    fn nperimeter_examples() {
        let golden: PointSet<QF5> = golden_triple();
        let hull = convex_hull(&golden);
        assert!((npolygon_length(&hull) - 3.0).abs() < 1e-12);

        let seg = vec![qi(0, 0), qi(1, 1)];
        assert!((npolygon_length(&seg) - 2.0).abs() < 1e-12);

        let square = vec![qi(0, 0), qi(1, 0), qi(1, 1), qi(0, 1)];
        assert_eq!(npolygon_length(&square), 0.0);
    }

    #[test]
    fn golden_lattice_determinant_and_minimum() {
        let lat: GoldenLattice<QF5> = GoldenLattice::standard();
        let (u, v) = lat.basis();
        let det = u.det(&v);
        assert_eq!(det.abs(), QF5::sqrt5());

        // Minimum N² over nonzero vectors in a modest window is exactly 1.
        let pts = lat.points_within(&QF5::from_int(8)).unwrap();
        assert!(pts.points.iter().any(|p| p.x.is_zero() && p.y.is_zero()));
        let min = pts
            .points
            .iter()
            .filter(|p| !(p.x.is_zero() && p.y.is_zero()))
            .map(nnorm_sq)
            .min()
            .unwrap();
        assert_eq!(min, QF5::one());
    }

    #[test]
    fn golden_lattice_stretch_preserves_invariants() {
        let lat = GoldenLattice::with_stretch(QF5::phi()).unwrap();
        let (u, v) = lat.basis();
        assert_eq!(u.det(&v).abs(), QF5::sqrt5());
        for (m, n) in [(1i64, 0i64), (0, 1), (1, 1), (-1, 1), (2, 3)] {
            let w = lat.vector(m, n);
            let base: GoldenLattice<QF5> = GoldenLattice::standard();
            assert_eq!(nnorm_sq(&w), nnorm_sq(&base.vector(m, n)));
        }
    }

    #[test]
    fn golden_lattice_points_small_window() {
        let lat: GoldenLattice<QF5> = GoldenLattice::standard();
        let pts = lat.points_within(&QF5::from_int(2)).unwrap();
        let phi = QF5::phi();
        // m(−1,1) + n(φ−1,φ) for (m,n) = (0,0), (1,0), (0,1), (1,−1).
        let expect = [
            qi(0, 0),
            qp(QF5::from_int(-1), QF5::one()),
            qp(&phi - &QF5::one(), phi.clone()),
            qp(-(&phi), &QF5::one() - &phi),
        ];
        for e in &expect {
            assert!(
                pts.points.iter().any(|p| p.x == e.x && p.y == e.y),
                "missing {e:?}"
            );
        }
        // Everything listed must satisfy the sup-norm bound and be verified
        // against direct (m, n) enumeration.
        let mut brute = Vec::new();
        for m in -4i64..=4 {
            for n in -4i64..=4 {
                let p = lat.vector(m, n);
                if p.x.abs() <= QF5::from_int(2) && p.y.abs() <= QF5::from_int(2) {
                    brute.push(p);
                }
            }
        }
        assert_eq!(pts.len(), brute.len());
        for b in &brute {
            assert!(pts.points.iter().any(|p| p == b));
        }
    }

    #[test]
    fn point_file_round_trip() {
        let text = "# golden triple\n0,0\n-1,1\nphi-1,phi\n";
        match parse_point_file(text).unwrap() {
            ParsedPoints::Exact(set) => {
                assert_eq!(set.len(), 3);
                let csv = set.to_csv();
                match parse_point_file(&csv).unwrap() {
                    ParsedPoints::Exact(again) => {
                        assert_eq!(again.points[2].x, set.points[2].x);
                        assert_eq!(again.points[2].y, set.points[2].y);
                    }
                    _ => panic!("exact CSV reparsed as float"),
                }
            }
            _ => panic!("exact file parsed as float"),
        }
        match parse_point_file("0.5,1\n2,3\n").unwrap() {
            ParsedPoints::Float(set) => assert_eq!(set.len(), 2),
            _ => panic!("decimal file should be float"),
        }
    }

    #[test]
    fn general_position_reports_pair() {
        let set = PointSet::new(vec![qi(0, 0), qi(0, 5), qi(1, 1)]);
        assert_eq!(set.general_position(1e-12), Err((0, 1, Axis::Vertical)));
        let set = PointSet::new(vec![
            Point2::new(F64::new(0.0), F64::new(0.0)),
            Point2::new(F64::new(1.0), F64::new(2.0)),
        ]);
        assert!(set.general_position(1e-12).is_ok());
    }
}
