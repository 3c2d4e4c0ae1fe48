//! Curves, lines and crossing counts.
//!
//! The weight of a curve is `rho = 1/vf`, where `vf` is the maximal number of
//! "entry points" of the curve on any line: the number of connected components
//! of the preimage of the line under the curve parameterization. For a
//! polyline this maximum is attained on a finite candidate set of lines (lines
//! through vertex pairs, plus slightly perturbed copies that resolve
//! degenerate incidences), which makes `vf` computable exactly.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tol::{on_line_tol, REL_PERTURBATION, UNIT_TOL};

/// A point of the plane, with the identification R^2 = C (x = Re, y = Im).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Point { x, y })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Point::new(z.re, z.im)
    }

    pub fn as_complex(&self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }

    pub fn dot(&self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn dist(&self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// The line { z : z . theta = mu }; `theta` is kept unit-length and
/// canonically oriented so equal lines compare equal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    theta: Point,
    mu: f64,
}

impl Line {
    /// Normalizes `theta` and flips orientation to the canonical
    /// representative ((theta.x, theta.y) lexicographically positive).
    pub fn new(theta: Point, mu: f64) -> Result<Self> {
        let norm = theta.x.hypot(theta.y);
        if !norm.is_finite() || norm == 0.0 || !mu.is_finite() {
            return Err(Error::Invalid("line direction must be a nonzero finite vector".into()));
        }
        let mut t = Point {
            x: theta.x / norm,
            y: theta.y / norm,
        };
        let mut m = mu / norm;
        if t.x < 0.0 || (t.x == 0.0 && t.y < 0.0) {
            t = Point { x: -t.x, y: -t.y };
            m = -m;
        }
        debug_assert!((t.x.hypot(t.y) - 1.0).abs() <= UNIT_TOL);
        Ok(Line { theta: t, mu: m })
    }

    /// The line through two distinct points; `None` if they coincide.
    pub fn through(p: Point, q: Point) -> Option<Line> {
        let dx = q.x - p.x;
        let dy = q.y - p.y;
        let len = dx.hypot(dy);
        if len == 0.0 {
            return None;
        }
        // Perpendicular of the segment direction.
        let theta = Point {
            x: -dy / len,
            y: dx / len,
        };
        let mu = p.dot(theta);
        Some(Line::new(theta, mu).expect("finite inputs"))
    }

    pub fn theta(&self) -> Point {
        self.theta
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Signed offset of `p` from the line.
    pub fn signed(&self, p: Point) -> f64 {
        p.dot(self.theta) - self.mu
    }

    /// -1 / 0 / +1 classification of `p` against the line at tolerance `tau`.
    pub fn side(&self, p: Point, tau: f64) -> i8 {
        let d = self.signed(p);
        if d > tau {
            1
        } else if d < -tau {
            -1
        } else {
            0
        }
    }

    /// Parallel copy at signed offset `delta`.
    pub fn offset(&self, delta: f64) -> Line {
        Line::new(self.theta, self.mu + delta).expect("finite")
    }

    /// Copy rotated by `angle` about `center` (which need not lie on the line).
    pub fn rotated_about(&self, center: Point, angle: f64) -> Line {
        let (s, c) = angle.sin_cos();
        let theta = Point {
            x: c * self.theta.x - s * self.theta.y,
            y: s * self.theta.x + c * self.theta.y,
        };
        // The rotated line passes through the rotated foot point; rotating
        // about `center` keeps `center`'s offset fixed.
        let mu = center.dot(theta) + (self.mu - center.dot(self.theta));
        Line::new(theta, mu).expect("finite")
    }

    /// Total order on (theta.x, theta.y, mu); used for deterministic
    /// tie-breaking among witness lines.
    pub fn lex_cmp(&self, other: &Line) -> std::cmp::Ordering {
        (self.theta.x, self.theta.y, self.mu)
            .partial_cmp(&(other.theta.x, other.theta.y, other.mu))
            .expect("finite line data")
    }
}

/// Uniform-speed polyline through an ordered vertex list. Consecutive
/// duplicate vertices are collapsed on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    vertices: Vec<Point>,
    diameter: f64,
}

impl Polyline {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyInput("polyline needs at least one vertex"));
        }
        let mut collapsed: Vec<Point> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if collapsed.last().map_or(true, |w| *w != v) {
                collapsed.push(v);
            }
        }
        let diameter = diameter_of(&collapsed);
        Ok(Polyline {
            vertices: collapsed,
            diameter,
        })
    }

    pub fn from_complex(values: &[Complex64]) -> Result<Self> {
        let pts = values
            .iter()
            .map(|z| Point::from_complex(*z))
            .collect::<Result<Vec<_>>>()?;
        Polyline::new(pts)
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    pub fn is_single_point(&self) -> bool {
        self.vertices.len() == 1
    }
}

pub fn diameter_of(points: &[Point]) -> f64 {
    let mut d = 0.0f64;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            d = d.max(p.dist(*q));
        }
    }
    d
}

/// Number of crossings vf(curve, line): connected components of the set of
/// curve parameters lying on the line (at the curve's on-line tolerance).
///
/// A maximal run of consecutive on-line vertices is one component (the curve
/// stays within tolerance of the line along the whole run), and every segment
/// whose endpoints lie strictly on opposite sides contributes one isolated
/// interior component.
pub fn entry_count(curve: &Polyline, line: &Line) -> usize {
    let tau = on_line_tol(curve.diameter());
    entry_count_signs(
        curve.vertices.iter().map(|v| line.side(*v, tau)),
    )
}

/// Component count from a vertex-side sequence; shared with the incremental
/// counter used by the variation search.
pub fn entry_count_signs<I: IntoIterator<Item = i8>>(signs: I) -> usize {
    let mut count = 0usize;
    let mut prev: Option<i8> = None;
    let mut in_run = false;
    for s in signs {
        if s == 0 {
            if !in_run {
                count += 1;
                in_run = true;
            }
        } else {
            in_run = false;
            if let Some(p) = prev {
                if p != 0 && p != s {
                    count += 1;
                }
            }
        }
        prev = Some(s);
    }
    count
}

/// Candidate lines for the exact vf maximum over a vertex set: all lines
/// through unordered pairs of distinct vertex positions, each with four
/// perturbed representatives (normal offsets and rotations about the pair
/// midpoint) that resolve degenerate incidences.
pub fn candidate_lines(points: &[Point]) -> Vec<Line> {
    // Unique positions; repeated visits of a point contribute nothing new.
    let mut uniq: Vec<Point> = Vec::new();
    for p in points {
        if !uniq.contains(p) {
            uniq.push(*p);
        }
    }
    if uniq.len() < 2 {
        return Vec::new();
    }
    let diam = diameter_of(&uniq);
    let mut dmin = f64::INFINITY;
    for (i, p) in uniq.iter().enumerate() {
        for q in &uniq[i + 1..] {
            let d = p.dist(*q);
            if d > 0.0 {
                dmin = dmin.min(d);
            }
        }
    }
    let tau = on_line_tol(diam);
    // Keep the offset clearly outside the on-line tolerance even for very
    // uneven point spacings.
    let eps = (REL_PERTURBATION * dmin).max(4.0 * tau);
    // The rotation must displace points a fraction of dmin away from the
    // rotation center by clearly more than tau, or collinear configurations
    // keep classifying as "on the line" and fold counts collapse.
    let angle = (REL_PERTURBATION * dmin / diam)
        .max(16.0 * tau / dmin)
        .clamp(1e-12, 1e-2);

    let mut lines = Vec::with_capacity(uniq.len() * (uniq.len() - 1) / 2 * 5);
    for (i, p) in uniq.iter().enumerate() {
        for q in &uniq[i + 1..] {
            let Some(base) = Line::through(*p, *q) else {
                continue;
            };
            let mid = Point {
                x: 0.5 * (p.x + q.x),
                y: 0.5 * (p.y + q.y),
            };
            lines.push(base);
            lines.push(base.offset(eps));
            lines.push(base.offset(-eps));
            lines.push(base.rotated_about(mid, angle));
            lines.push(base.rotated_about(mid, -angle));
        }
    }
    lines
}

/// vf of a curve, either finite or the infinity sentinel (unreachable for
/// polylines, encoded for completeness).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Vf {
    Finite(u32),
    Infinite,
}

impl Vf {
    pub fn as_f64(&self) -> f64 {
        match self {
            Vf::Finite(n) => *n as f64,
            Vf::Infinite => f64::INFINITY,
        }
    }
}

/// Result of the vf maximization: the count, the weight rho = 1/vf (0 for the
/// infinite sentinel), and a witness line attaining the count.
#[derive(Debug, Clone)]
pub struct CrossingReport {
    pub vf: Vf,
    pub rho: f64,
    pub witness_line: Line,
}

/// Exact vf(curve) = sup over lines of `entry_count`, via candidate-line
/// enumeration. Ties among witnesses break to the lexicographically smallest
/// (theta, mu).
pub fn max_crossings(curve: &Polyline) -> CrossingReport {
    if curve.is_single_point() {
        // A point lies on any incident line in exactly one component.
        let p = curve.vertices[0];
        let witness = Line::new(Point { x: 1.0, y: 0.0 }, p.x).expect("finite");
        return CrossingReport {
            vf: Vf::Finite(1),
            rho: 1.0,
            witness_line: witness,
        };
    }
    let candidates = candidate_lines(&curve.vertices);
    debug_assert!(!candidates.is_empty());
    let mut best_count = 0usize;
    let mut best_line: Option<Line> = None;
    for line in candidates {
        let c = entry_count(curve, &line);
        let better = c > best_count
            || (c == best_count
                && best_line
                    .as_ref()
                    .map_or(true, |b| line.lex_cmp(b) == std::cmp::Ordering::Less));
        if better {
            best_count = c;
            best_line = Some(line);
        }
    }
    let best_count = best_count.max(1);
    CrossingReport {
        vf: Vf::Finite(best_count as u32),
        rho: 1.0 / best_count as f64,
        witness_line: best_line.expect("candidate set nonempty"),
    }
}

/// rho(curve) = 1/vf(curve).
pub fn rho(curve: &Polyline) -> f64 {
    max_crossings(curve).rho
}

/// rho of a sampled function on an ordered real grid, treated as the curve
/// t -> g(t): the polyline through the values in domain order.
pub fn rho_of_function(g: &crate::variation::SampledFunction) -> Result<CrossingReport> {
    let curve = function_curve(g)?;
    Ok(max_crossings(&curve))
}

/// The polyline swept by a function on an ordered real grid.
pub(crate) fn function_curve(g: &crate::variation::SampledFunction) -> Result<Polyline> {
    let sigma = g.domain();
    if sigma.len() < 1 {
        return Err(Error::EmptyDomain);
    }
    let tau = on_line_tol(sigma.diameter());
    let mut order: Vec<usize> = (0..sigma.len()).collect();
    for &i in &order {
        if sigma.point(i).y.abs() > tau {
            return Err(Error::Precondition(
                "function domain must lie on the real axis".into(),
            ));
        }
    }
    order.sort_by(|a, b| {
        sigma
            .point(*a)
            .x
            .partial_cmp(&sigma.point(*b).x)
            .expect("finite")
    });
    let vertices = order
        .iter()
        .map(|&i| Point::from_complex(g.value(i)))
        .collect::<Result<Vec<_>>>()?;
    Polyline::new(vertices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y).unwrap()
    }

    fn pl(v: &[(f64, f64)]) -> Polyline {
        Polyline::new(v.iter().map(|&(x, y)| pt(x, y)).collect()).unwrap()
    }

    fn horizontal(y: f64) -> Line {
        Line::new(pt(0.0, 1.0), y).unwrap()
    }

    #[test]
    fn segment_crosses_horizontal_once() {
        let c = pl(&[(0.0, 0.0), (2.0, 2.0)]);
        assert_eq!(entry_count(&c, &horizontal(1.0)), 1);
    }

    #[test]
    fn tent_crosses_interior_line_twice() {
        let c = pl(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        assert_eq!(entry_count(&c, &horizontal(0.5)), 2);
    }

    #[test]
    fn collinear_segment_is_one_component() {
        let c = pl(&[(0.0, 0.0), (1.0, 0.0)]);
        assert_eq!(entry_count(&c, &horizontal(0.0)), 1);
    }

    #[test]
    fn apex_touch_is_one_component() {
        let c = pl(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        assert_eq!(entry_count(&c, &horizontal(1.0)), 1);
    }

    #[test]
    fn single_segment_has_vf_one() {
        let r = max_crossings(&pl(&[(0.0, 0.0), (2.0, 2.0)]));
        assert_eq!(r.vf, Vf::Finite(1));
        assert_eq!(r.rho, 1.0);
    }

    #[test]
    fn zigzag_has_vf_three() {
        let r = max_crossings(&pl(&[(0.0, 0.0), (1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]));
        assert_eq!(r.vf, Vf::Finite(3));
    }

    #[test]
    fn constant_curve_collapses_to_point() {
        let c = pl(&[(0.5, 0.5), (0.5, 0.5), (0.5, 0.5)]);
        assert!(c.is_single_point());
        let r = max_crossings(&c);
        assert_eq!(r.vf, Vf::Finite(1));
        assert_eq!(r.rho, 1.0);
    }

    #[test]
    fn endpoints_on_opposite_sides_forces_a_crossing() {
        let c = pl(&[(0.0, -1.0), (0.3, 2.0)]);
        assert!(entry_count(&c, &horizontal(0.25)) >= 1);
    }

    #[test]
    fn line_canonical_orientation() {
        let a = Line::new(pt(0.0, -2.0), -3.0).unwrap();
        let b = Line::new(pt(0.0, 1.0), 1.5).unwrap();
        assert_eq!(a, b);
    }
}
