//! L∞-Delaunay triangulation of a finite planar set.
//!
//! A triangle on vertices p, q, r belongs to the triangulation exactly when
//! some axis-aligned square S has S ∩ Γ = ∂S ∩ Γ = {p, q, r}. For a point
//! set in general position (no two points share a horizontal or vertical
//! line) each admissible triple determines at most one such candidate
//! square, which makes a desk-scale brute-force search over triples the
//! reference algorithm here: it evaluates the defining predicate directly,
//! and smarter sweeps can later hide behind the same interface.
//!
//! When four points lie on one empty square there are two ways to cut the
//! quadrilateral into triangles; a deterministic diagonal choice (smallest
//! lexicographic lower endpoint) keeps outputs reproducible.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::ngeom::{
    convex_hull, is_admissible, nnorm_sq, npolygon_length, polygon_area_x2, Axis, Point2, PointSet,
    Triangle,
};
use crate::scalar::Scalar;

/// On-boundary tolerance for float-mode square tests.
pub const SQUARE_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum DelaunayError {
    #[error("triangulation needs at least 3 points, got {got}")]
    TooFewPoints { got: usize },
    #[error("general position violated: points {i} and {j} share a {axis} line")]
    GeneralPosition { i: usize, j: usize, axis: String },
    #[error("more than four points on an empty square (indices {0:?})")]
    CrowdedSquare(Vec<usize>),
    #[error("triangulation boundary is not a simple cycle: {0}")]
    BoundaryNotSimple(String),
    #[error("internal triangulation inconsistency: {0}")]
    Inconsistent(String),
}

/// An axis-aligned square, stored as its lower-left corner and side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Square<S> {
    pub x: S,
    pub y: S,
    pub side: S,
}

/// Where a point sits relative to a square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SquarePos {
    Outside,
    Boundary,
    Inside,
}

impl<S: Scalar> Square<S> {
    pub fn x_hi(&self) -> S {
        self.x.ref_add(&self.side)
    }

    pub fn y_hi(&self) -> S {
        self.y.ref_add(&self.side)
    }

    fn classify(&self, p: &Point2<S>, tol: f64) -> SquarePos {
        let x1 = self.x_hi();
        let y1 = self.y_hi();
        let on_x = p.x.eq_within(&self.x, tol) || p.x.eq_within(&x1, tol);
        let on_y = p.y.eq_within(&self.y, tol) || p.y.eq_within(&y1, tol);
        let in_x = p.x > self.x && p.x < x1;
        let in_y = p.y > self.y && p.y < y1;
        let cov_x = on_x || in_x;
        let cov_y = on_y || in_y;
        if !(cov_x && cov_y) {
            return SquarePos::Outside;
        }
        if on_x || on_y {
            return SquarePos::Boundary;
        }
        SquarePos::Inside
    }

    /// True when the square's boundary meets Γ in exactly the given points.
    pub fn witnesses_exactly(&self, set: &PointSet<S>, verts: &[usize], tol: f64) -> bool {
        for (idx, p) in set.points.iter().enumerate() {
            match self.classify(p, tol) {
                SquarePos::Inside => return false,
                SquarePos::Boundary => {
                    if !verts.contains(&idx) {
                        return false;
                    }
                }
                SquarePos::Outside => {
                    if verts.contains(&idx) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A triangulation with its witness squares and boundary cycle.
#[derive(Clone, Debug, Serialize)]
pub struct Triangulation<S> {
    pub points: PointSet<S>,
    /// Vertex-index triples, each sorted ascending; the list is sorted.
    pub triangles: Vec<[usize; 3]>,
    /// Witness square per triangle.
    pub witnesses: Vec<Square<S>>,
    /// Marks triangles that came from a four-point co-square tie-break
    /// (their witness square carries the fourth point on its boundary).
    pub co_square: Vec<bool>,
    /// Boundary of U = ∪Δ as a counter-clockwise vertex cycle; empty when
    /// there are no triangles.
    pub boundary: Vec<usize>,
}

impl<S: Scalar> Triangulation<S> {
    pub fn triangle(&self, t: usize) -> Triangle<S> {
        let [a, b, c] = self.triangles[t];
        Triangle::new(
            self.points.points[a].clone(),
            self.points.points[b].clone(),
            self.points.points[c].clone(),
        )
    }

    /// Indices of points that are a vertex of at least one triangle.
    pub fn used_vertices(&self) -> BTreeSet<usize> {
        self.triangles.iter().flatten().copied().collect()
    }

    /// Edge set with incidence counts.
    pub fn edge_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut counts = BTreeMap::new();
        for t in &self.triangles {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            }
        }
        counts
    }

    /// Sum of exact doubled triangle areas.
    pub fn total_area_x2(&self) -> S {
        let mut acc = S::zero();
        for i in 0..self.triangles.len() {
            acc = acc.ref_add(&self.triangle(i).signed_area_x2().abs());
        }
        acc
    }

    /// Doubled area of the boundary polygon.
    pub fn boundary_area_x2(&self) -> S {
        let poly: Vec<Point2<S>> = self
            .boundary
            .iter()
            .map(|&i| self.points.points[i].clone())
            .collect();
        polygon_area_x2(&poly)
    }
}

/// The candidate square of an admissible triple: the unique axis-aligned
/// square containing the triple's bounding box with all three points on its
/// boundary. Returns `None` for non-admissible triples.
fn candidate_square<S: Scalar>(pts: [&Point2<S>; 3]) -> Option<Square<S>> {
    let x_min = pts.iter().map(|p| &p.x).min().unwrap().clone();
    let x_max = pts.iter().map(|p| &p.x).max().unwrap().clone();
    let y_min = pts.iter().map(|p| &p.y).min().unwrap().clone();
    let y_max = pts.iter().map(|p| &p.y).max().unwrap().clone();

    // Admissible in general position means the attainment pairs
    // (x-extremes, y-extremes) per vertex form {(1,1), (1,0), (0,1)}:
    // one corner vertex and one vertex per remaining side.
    let mut corner = None;
    let mut x_only = None;
    let mut y_only = None;
    for (v, p) in pts.iter().enumerate() {
        let on_x = p.x == x_min || p.x == x_max;
        let on_y = p.y == y_min || p.y == y_max;
        match (on_x, on_y) {
            (true, true) => {
                if corner.replace(v).is_some() {
                    return None;
                }
            }
            (true, false) => {
                if x_only.replace(v).is_some() {
                    return None;
                }
            }
            (false, true) => {
                if y_only.replace(v).is_some() {
                    return None;
                }
            }
            (false, false) => return None,
        }
    }
    let (x_only, y_only) = (x_only?, y_only?);
    corner?;

    let w = x_max.ref_sub(&x_min);
    let h = y_max.ref_sub(&y_min);
    if w >= h {
        // Left and right sides pinned; the y-only vertex rides top or bottom.
        let y0 = if pts[y_only].y == y_max {
            y_max.ref_sub(&w)
        } else {
            y_min.clone()
        };
        Some(Square {
            x: x_min,
            y: y0,
            side: w,
        })
    } else {
        let x0 = if pts[x_only].x == x_max {
            x_max.ref_sub(&h)
        } else {
            x_min.clone()
        };
        Some(Square {
            x: x0,
            y: y_min,
            side: h,
        })
    }
}

/// Computes the L∞-Delaunay triangulation by brute-force witness search.
///
/// Errors if the set has fewer than three points or violates general
/// position (the offending pair is named). Point sets whose triangulation
/// is empty (monotone staircases) yield an empty triangle list and boundary.
pub fn linf_delaunay<S: Scalar>(set: &PointSet<S>) -> Result<Triangulation<S>, DelaunayError> {
    let n = set.len();
    if n < 3 {
        return Err(DelaunayError::TooFewPoints { got: n });
    }
    if let Err((i, j, axis)) = set.general_position(SQUARE_TOL) {
        return Err(DelaunayError::GeneralPosition {
            i,
            j,
            axis: match axis {
                Axis::Horizontal => "horizontal".to_string(),
                Axis::Vertical => "vertical".to_string(),
            },
        });
    }

    let mut triangles: BTreeSet<[usize; 3]> = BTreeSet::new();
    let mut records: Vec<([usize; 3], Square<S>, bool)> = Vec::new();
    let mut quadruples: BTreeMap<[usize; 4], Square<S>> = BTreeMap::new();

    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let tri = [&set.points[i], &set.points[j], &set.points[k]];
                let Some(square) = candidate_square(tri) else {
                    continue;
                };
                let mut extras: Vec<usize> = Vec::new();
                let mut blocked = false;
                for (idx, p) in set.points.iter().enumerate() {
                    if idx == i || idx == j || idx == k {
                        continue;
                    }
                    match square.classify(p, SQUARE_TOL) {
                        SquarePos::Inside => {
                            blocked = true;
                            break;
                        }
                        SquarePos::Boundary => extras.push(idx),
                        SquarePos::Outside => {}
                    }
                }
                if blocked {
                    continue;
                }
                match extras.len() {
                    0 => {
                        if triangles.insert([i, j, k]) {
                            records.push(([i, j, k], square, false));
                        }
                    }
                    1 => {
                        let mut quad = [i, j, k, extras[0]];
                        quad.sort_unstable();
                        quadruples.entry(quad).or_insert(square);
                    }
                    _ => {
                        let mut all = vec![i, j, k];
                        all.extend(extras);
                        return Err(DelaunayError::CrowdedSquare(all));
                    }
                }
            }
        }
    }

    for (quad, square) in quadruples {
        let (t1, t2) = split_co_square(set, &quad, &square)?;
        for t in [t1, t2] {
            if triangles.insert(t) {
                records.push((t, square.clone(), true));
            } else {
                return Err(DelaunayError::Inconsistent(format!(
                    "co-square triangle {t:?} already emitted"
                )));
            }
        }
    }

    records.sort_by_key(|r| r.0);
    let triangles: Vec<[usize; 3]> = records.iter().map(|r| r.0).collect();
    let witnesses: Vec<Square<S>> = records.iter().map(|r| r.1.clone()).collect();
    let co_square: Vec<bool> = records.iter().map(|r| r.2).collect();

    let boundary = trace_boundary(set, &triangles)?;

    Ok(Triangulation {
        points: set.clone(),
        triangles,
        witnesses,
        co_square,
        boundary,
    })
}

/// Splits a four-point co-square configuration along the diagonal whose
/// lexicographically smaller endpoint is smallest.
fn split_co_square<S: Scalar>(
    set: &PointSet<S>,
    quad: &[usize; 4],
    square: &Square<S>,
) -> Result<([usize; 3], [usize; 3]), DelaunayError> {
    // Assign each point to its square side; general position puts exactly
    // one on each of left, bottom, right, top.
    let mut left = None;
    let mut right = None;
    let mut bottom = None;
    let mut top = None;
    let x_hi = square.x_hi();
    let y_hi = square.y_hi();
    for &idx in quad {
        let p = &set.points[idx];
        let slot = if p.x.eq_within(&square.x, SQUARE_TOL) {
            &mut left
        } else if p.x.eq_within(&x_hi, SQUARE_TOL) {
            &mut right
        } else if p.y.eq_within(&square.y, SQUARE_TOL) {
            &mut bottom
        } else if p.y.eq_within(&y_hi, SQUARE_TOL) {
            &mut top
        } else {
            return Err(DelaunayError::Inconsistent(format!(
                "co-square point {idx} is not on the square boundary"
            )));
        };
        if slot.is_some() {
            return Err(DelaunayError::Inconsistent(
                "two co-square points on one side".to_string(),
            ));
        }
        *slot = Some(idx);
    }
    let (l, b, r, t) = match (left, bottom, right, top) {
        (Some(l), Some(b), Some(r), Some(t)) => (l, b, r, t),
        _ => {
            return Err(DelaunayError::Inconsistent(
                "co-square quadruple does not cover all four sides".to_string(),
            ))
        }
    };

    let lex_le = |a: usize, c: usize| -> bool {
        let pa = &set.points[a];
        let pc = &set.points[c];
        pa.x.cmp(&pc.x).then(pa.y.cmp(&pc.y)).is_le()
    };
    let lr_low = if lex_le(l, r) { l } else { r };
    let bt_low = if lex_le(b, t) { b } else { t };
    let use_lr = lex_le(lr_low, bt_low);

    let mk = |a: usize, b: usize, c: usize| -> [usize; 3] {
        let mut t = [a, b, c];
        t.sort_unstable();
        t
    };
    if use_lr {
        Ok((mk(l, b, r), mk(l, r, t)))
    } else {
        Ok((mk(b, r, t), mk(b, t, l)))
    }
}

/// Recovers the boundary cycle of U from edges incident to exactly one
/// triangle, verifying it forms a single simple cycle, oriented CCW.
fn trace_boundary<S: Scalar>(
    set: &PointSet<S>,
    triangles: &[[usize; 3]],
) -> Result<Vec<usize>, DelaunayError> {
    if triangles.is_empty() {
        return Ok(Vec::new());
    }
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for t in triangles {
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut boundary_edges = 0usize;
    for (&(a, b), &c) in &counts {
        match c {
            1 => {
                adjacency.entry(a).or_default().push(b);
                adjacency.entry(b).or_default().push(a);
                boundary_edges += 1;
            }
            2 => {}
            _ => {
                return Err(DelaunayError::Inconsistent(format!(
                    "edge ({a},{b}) belongs to {c} triangles"
                )))
            }
        }
    }
    for (&v, nbrs) in &adjacency {
        if nbrs.len() != 2 {
            return Err(DelaunayError::BoundaryNotSimple(format!(
                "vertex {v} has {} boundary edges",
                nbrs.len()
            )));
        }
    }
    let start = *adjacency.keys().next().unwrap();
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = adjacency[&start][0];
    while cur != start {
        cycle.push(cur);
        let nbrs = &adjacency[&cur];
        let next = if nbrs[0] == prev { nbrs[1] } else { nbrs[0] };
        prev = cur;
        cur = next;
        if cycle.len() > boundary_edges {
            return Err(DelaunayError::BoundaryNotSimple(
                "boundary walk does not close".to_string(),
            ));
        }
    }
    if cycle.len() != boundary_edges {
        return Err(DelaunayError::BoundaryNotSimple(format!(
            "boundary has {} edges but the outer cycle covers {}",
            boundary_edges,
            cycle.len()
        )));
    }
    // Orient counter-clockwise.
    let poly: Vec<Point2<S>> = cycle.iter().map(|&i| set.points[i].clone()).collect();
    let mut signed = S::zero();
    for i in 0..poly.len() {
        signed = signed.ref_add(&poly[i].det(&poly[(i + 1) % poly.len()]));
    }
    if signed.signum_i() < 0 {
        cycle.reverse();
    }
    Ok(cycle)
}

/// Σ N over the boundary edges of U.
pub fn boundary_nlength<S: Scalar>(t: &Triangulation<S>) -> f64 {
    if t.boundary.is_empty() {
        return 0.0;
    }
    let mut total = 0.0;
    for i in 0..t.boundary.len() {
        let a = &t.points.points[t.boundary[i]];
        let b = &t.points.points[t.boundary[(i + 1) % t.boundary.len()]];
        total += nnorm_sq(&b.sub(a)).to_f64().max(0.0).sqrt();
    }
    total
}

/// Vertex classification for the triangle-counting identity.
///
/// Γ splits into the two extreme-x *special* points, the *bad* points on
/// ∂U, and the *good* points interior to U; each triangle is associated to
/// its middle-x vertex (the unique vertex whose vertical line crosses the
/// triangle's interior), and the counts obey
/// `#triangles = 2·s_good + s_bad`. Points belonging to no triangle fall
/// outside U and are reported as unclassified; the identity is only
/// meaningful when there are none.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryDecomposition {
    pub special: [usize; 2],
    pub bad: Vec<usize>,
    pub good: Vec<usize>,
    pub unclassified: Vec<usize>,
    pub s_bad: usize,
    pub s_good: usize,
    /// Triangle index → associated vertex (middle-x rule).
    pub association: Vec<usize>,
    /// `#triangles == 2·s_good + s_bad` and every point classified.
    pub identity_holds: bool,
    /// Association counts match the classification (0 / 1 / 2 triangles for
    /// special / bad / good points respectively).
    pub association_counts_ok: bool,
}

pub fn boundary_decomposition<S: Scalar>(
    t: &Triangulation<S>,
) -> Result<BoundaryDecomposition, DelaunayError> {
    let n = t.points.len();
    if n < 3 {
        return Err(DelaunayError::TooFewPoints { got: n });
    }
    let leftmost = (0..n)
        .min_by(|&a, &b| t.points.points[a].x.cmp(&t.points.points[b].x))
        .unwrap();
    let rightmost = (0..n)
        .max_by(|&a, &b| t.points.points[a].x.cmp(&t.points.points[b].x))
        .unwrap();
    let special = [leftmost, rightmost];

    let on_boundary: BTreeSet<usize> = t.boundary.iter().copied().collect();
    let used = t.used_vertices();

    let mut bad = Vec::new();
    let mut good = Vec::new();
    let mut unclassified = Vec::new();
    for v in 0..n {
        if v == leftmost || v == rightmost {
            if !used.contains(&v) {
                unclassified.push(v);
            }
            continue;
        }
        if on_boundary.contains(&v) {
            bad.push(v);
        } else if used.contains(&v) {
            good.push(v);
        } else {
            unclassified.push(v);
        }
    }

    // Middle-x vertex: its vertical line meets the open triangle.
    let mut association = Vec::with_capacity(t.triangles.len());
    let mut assoc_count = vec![0usize; n];
    for tri in &t.triangles {
        let mut order = *tri;
        order.sort_by(|&a, &b| t.points.points[a].x.cmp(&t.points.points[b].x));
        association.push(order[1]);
        assoc_count[order[1]] += 1;
    }

    let mut association_counts_ok = assoc_count[leftmost] == 0 && assoc_count[rightmost] == 0;
    for &v in &bad {
        association_counts_ok &= assoc_count[v] == 1;
    }
    for &v in &good {
        association_counts_ok &= assoc_count[v] == 2;
    }

    let s_bad = bad.len();
    let s_good = good.len();
    let identity_holds = unclassified.is_empty() && t.triangles.len() == 2 * s_good + s_bad;

    Ok(BoundaryDecomposition {
        special,
        bad,
        good,
        unclassified,
        s_bad,
        s_good,
        association,
        identity_holds,
        association_counts_ok,
    })
}

/// Re-verifies every stored witness: the square's boundary must meet Γ in
/// exactly the triangle's vertices (plus the fourth point for co-square
/// tie-breaks).
pub fn verify_witnesses<S: Scalar>(t: &Triangulation<S>) -> Result<(), DelaunayError> {
    for (idx, tri) in t.triangles.iter().enumerate() {
        let square = &t.witnesses[idx];
        let ok = if t.co_square[idx] {
            let mut on_boundary: Vec<usize> = Vec::new();
            for (p_idx, p) in t.points.points.iter().enumerate() {
                match square.classify(p, SQUARE_TOL) {
                    SquarePos::Inside => {
                        return Err(DelaunayError::Inconsistent(format!(
                            "witness of triangle {idx} contains point {p_idx}"
                        )))
                    }
                    SquarePos::Boundary => on_boundary.push(p_idx),
                    SquarePos::Outside => {}
                }
            }
            on_boundary.len() == 4 && tri.iter().all(|v| on_boundary.contains(v))
        } else {
            square.witnesses_exactly(&t.points, tri, SQUARE_TOL)
        };
        if !ok {
            return Err(DelaunayError::Inconsistent(format!(
                "witness of triangle {idx} does not certify it"
            )));
        }
    }
    Ok(())
}

/// Structural report combining the triangulation-lemma checks:
/// admissibility of every triangle, simple-connectivity (area and Euler
/// checks), and the boundary-vs-hull N-length comparison.
#[derive(Debug, Clone, Serialize)]
pub struct StructuralChecks {
    pub all_admissible: bool,
    pub euler_ok: bool,
    pub area_match: bool,
    pub boundary_nlength: f64,
    pub hull_nlength: f64,
    pub boundary_le_hull: bool,
}

pub fn structural_checks<S: Scalar>(t: &Triangulation<S>) -> StructuralChecks {
    let all_admissible =
        (0..t.triangles.len()).all(|i| matches!(is_admissible(&t.triangle(i)), Ok(Some(_))));

    let v = t.used_vertices().len();
    let e = t.edge_counts().len();
    let f = t.triangles.len();
    let euler_ok = if f == 0 { true } else { v + f == e + 1 };

    let hull_nlength = npolygon_length(&convex_hull(&t.points));
    let (area_match, bn) = if f == 0 {
        (true, 0.0)
    } else {
        let tri_x2 = t.total_area_x2();
        let poly_x2 = t.boundary_area_x2();
        let matches = if S::EXACT {
            tri_x2 == poly_x2
        } else {
            tri_x2.eq_within(&poly_x2, 1e-9)
        };
        (matches, boundary_nlength(t))
    };
    let boundary_le_hull = bn <= hull_nlength + 1e-9 * (1.0 + hull_nlength);

    StructuralChecks {
        all_admissible,
        euler_ok,
        area_match,
        boundary_nlength: bn,
        hull_nlength,
        boundary_le_hull,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::QF5;
    use crate::ngeom::golden_triple;
    use crate::scalar::F64;

    fn qi(x: i64, y: i64) -> Point2<QF5> {
        Point2::new(QF5::from_int(x), QF5::from_int(y))
    }

    fn fp(x: f64, y: f64) -> Point2<F64> {
        Point2::new(F64::new(x), F64::new(y))
    }

    #[test]
    fn golden_triple_is_one_triangle() {
        let set: PointSet<QF5> = golden_triple();
        let t = linf_delaunay(&set).unwrap();
        assert_eq!(t.triangles, vec![[0, 1, 2]]);
        // Witness square is the bounding box [−1, φ−1] × [0, φ]: side φ.
        assert_eq!(t.witnesses[0].side, QF5::phi());
        assert_eq!(t.witnesses[0].x, -QF5::one());
        assert_eq!(t.witnesses[0].y, QF5::zero());
        assert!(!t.co_square[0]);
        verify_witnesses(&t).unwrap();
        assert_eq!(t.boundary.len(), 3);

        let d = boundary_decomposition(&t).unwrap();
        assert_eq!(d.special, [1, 2]); // (−1,1) leftmost, (φ−1,φ) rightmost
        assert_eq!(d.s_bad, 1);
        assert_eq!(d.s_good, 0);
        assert!(d.identity_holds);
        assert!(d.association_counts_ok);

        // Three unit-N² edges: boundary N-length 3, and U = hull here so it
        // matches the hull N-perimeter.
        let bn = boundary_nlength(&t);
        assert!((bn - 3.0).abs() < 1e-12);
        let checks = structural_checks(&t);
        assert!((checks.boundary_nlength - checks.hull_nlength).abs() < 1e-12);
    }

    #[test]
    fn golden_parallelogram_two_triangles() {
        let phi = QF5::phi();
        let set = PointSet::new(vec![
            qi(0, 0),
            Point2::new(-QF5::one(), QF5::one()),
            Point2::new(&phi - &QF5::one(), phi.clone()),
            Point2::new(&phi - &QF5::from_int(2), &phi + &QF5::one()),
        ]);
        let t = linf_delaunay(&set).unwrap();
        assert_eq!(t.triangles, vec![[0, 1, 2], [1, 2, 3]]);
        assert!(t.co_square.iter().all(|&c| !c));
        verify_witnesses(&t).unwrap();
        assert_eq!(t.boundary.len(), 4);

        let d = boundary_decomposition(&t).unwrap();
        assert_eq!(d.s_bad, 2);
        assert_eq!(d.s_good, 0);
        assert!(d.identity_holds); // n = 2 = 2·0 + 2
        assert!(d.association_counts_ok);

        let checks = structural_checks(&t);
        assert!(checks.all_admissible);
        assert!(checks.euler_ok);
        assert!(checks.area_match);
        assert!(checks.boundary_le_hull);
    }

    #[test]
    fn shared_coordinate_is_an_error() {
        let set = PointSet::new(vec![qi(0, 0), qi(0, 5), qi(1, 1)]);
        match linf_delaunay(&set) {
            Err(DelaunayError::GeneralPosition { i: 0, j: 1, axis }) => {
                assert_eq!(axis, "vertical");
            }
            other => panic!("expected general-position error, got {other:?}"),
        }
    }

    #[test]
    fn monotone_staircase_has_no_triangles() {
        let set = PointSet::new(vec![fp(0.0, 0.0), fp(1.0, 1.1), fp(2.0, 2.3), fp(3.0, 3.7)]);
        let t = linf_delaunay(&set).unwrap();
        assert!(t.triangles.is_empty());
        assert!(t.boundary.is_empty());
        assert_eq!(boundary_nlength(&t), 0.0);
    }

    #[test]
    fn co_square_tie_break_is_deterministic() {
        // Four points on the boundary of [0,3]²: left (0,1), bottom (2,0),
        // right (3,2), top (1,3). Diagonal (left,right) has the smaller
        // lexicographic lower endpoint (0,1), so the split is
        // {L,B,R} and {L,R,T}.
        let set = PointSet::new(vec![qi(0, 1), qi(2, 0), qi(3, 2), qi(1, 3)]);
        let t = linf_delaunay(&set).unwrap();
        assert_eq!(t.triangles, vec![[0, 1, 2], [0, 2, 3]]);
        assert!(t.co_square.iter().all(|&c| c));
        verify_witnesses(&t).unwrap();
        let checks = structural_checks(&t);
        assert!(checks.all_admissible && checks.euler_ok && checks.area_match);
    }

    #[test]
    fn staircase_boundary_shorter_than_hull() {
        // A lower-right hull chord whose Delaunay boundary detours through
        // interior staircase points; superadditivity of N on the positive
        // quadrant keeps the detour at most the chord's N-length, and here
        // strictly below it.
        let set = PointSet::new(vec![
            fp(0.0, 0.0),
            fp(6.0, 5.7),
            fp(1.0, 0.4),
            fp(2.4, 1.1),
            fp(4.0, 2.2),
            fp(0.5, 4.9),
            fp(2.1, 5.2),
            fp(4.4, 6.3),
            fp(-0.7, 2.6),
            fp(5.3, 3.4),
        ]);
        let t = linf_delaunay(&set).unwrap();
        assert!(!t.triangles.is_empty());
        let checks = structural_checks(&t);
        assert!(checks.all_admissible);
        assert!(checks.euler_ok, "V + F = E + 1 expected");
        assert!(checks.area_match);
        assert!(checks.boundary_le_hull);
        assert!(checks.boundary_nlength < checks.hull_nlength - 1e-9);
        verify_witnesses(&t).unwrap();
    }

    #[test]
    fn interior_points_get_two_triangles() {
        // A frame of 8 outer points with 3 interior points in general
        // position; each interior point must be associated to exactly two
        // triangles by the middle-x rule.
        let set = PointSet::new(vec![
            fp(-10.0, -9.0),
            fp(10.2, -8.1),
            fp(9.4, 10.3),
            fp(-9.7, 9.8),
            fp(0.3, -10.4),
            fp(10.9, 1.2),
            fp(-0.2, 10.8),
            fp(-10.6, 0.7),
            fp(1.7, 2.9),
            fp(-3.1, -2.2),
            fp(4.2, -3.8),
        ]);
        let t = linf_delaunay(&set).unwrap();
        let d = boundary_decomposition(&t).unwrap();
        assert!(d.unclassified.is_empty());
        assert!(d.identity_holds);
        assert!(d.association_counts_ok);
        for interior in [8usize, 9, 10] {
            assert!(d.good.contains(&interior), "point {interior} not interior");
        }
        let checks = structural_checks(&t);
        assert!(checks.all_admissible && checks.euler_ok && checks.area_match);
        assert!(checks.boundary_le_hull);
    }
}
