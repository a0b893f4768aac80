//! Planar primitives shared by every other module.
//!
//! The search always starts at the origin and all lengths are dimensionless.
//! Rays are stored through their supporting line in Hesse normal form
//! `n . p = c`, with `n` pointing away from the origin, so the signed distance
//! of a point is negative on the origin's side of the line.

use std::f64::consts::FRAC_PI_2;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative threshold under which a signed distance counts as contact.
pub const CONTACT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }

    /// Reflection across the y-axis.
    pub fn mirrored(self) -> Point {
        Point::new(-self.x, self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }

    fn magnitude(self) -> f64 {
        self.x.abs().max(self.y.abs())
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Side of the origin on which a ray's source lies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn sign(self) -> f64 {
        match self {
            Side::Left => -1.0,
            Side::Right => 1.0,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    /// The side whose x-coordinates have the sign of `x` (zero counts as right).
    pub fn of(x: f64) -> Side {
        if x < 0.0 {
            Side::Left
        } else {
            Side::Right
        }
    }
}

/// A target ray in the upper half-plane that points toward the origin.
///
/// `beta` is the angle between the supporting line and the baseline. A right
/// ray runs along `y = -tan(beta) x + b`, a left ray is its mirror image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RaySpec {
    pub side: Side,
    pub beta: f64,
    pub anchor: Point,
}

impl RaySpec {
    pub fn new(side: Side, beta: f64, anchor: Point) -> Result<Self> {
        let ray = RaySpec { side, beta, anchor };
        ray.validate()?;
        Ok(ray)
    }

    /// The ray with angle `beta` through `anchor`, on the side of the anchor.
    pub fn through(anchor: Point, beta: f64) -> Result<Self> {
        Self::new(Side::of(anchor.x), beta, anchor)
    }

    /// Vertical ray at horizontal offset `x`.
    pub fn vertical(x: f64) -> Result<Self> {
        Self::new(Side::of(x), FRAC_PI_2, Point::new(x, 0.0))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta > 0.0 && self.beta <= FRAC_PI_2) {
            return Err(Error::InvalidRay(format!("beta={} not in (0, pi/2]", self.beta)));
        }
        if !self.anchor.is_finite() {
            return Err(Error::InvalidRay("non-finite anchor".into()));
        }
        let c = self.offset();
        let scale = CONTACT_TOL * self.anchor.magnitude().max(1.0);
        if !(c > scale) {
            return Err(Error::InvalidRay(format!(
                "supporting line does not point toward the origin (offset {c})"
            )));
        }
        Ok(())
    }

    /// Unit normal of the supporting line, pointing away from the origin.
    pub fn normal(&self) -> Point {
        let (s, c) = self.beta.sin_cos();
        // cos(pi/2) is not exactly zero in floating point.
        let c = if self.beta == FRAC_PI_2 { 0.0 } else { c };
        Point::new(self.side.sign() * s, c)
    }

    /// Offset `c` of the supporting line `n . p = c`.
    pub fn offset(&self) -> f64 {
        self.normal().dot(self.anchor)
    }

    /// Signed distance of `p` to the supporting line (negative on the origin side).
    pub fn signed_distance(&self, p: Point) -> f64 {
        self.normal().dot(p) - self.offset()
    }

    /// Length of the shortest segment from the origin to the ray.
    pub fn perp_distance(&self) -> f64 {
        self.offset()
    }

    /// Foot of the perpendicular from the origin.
    pub fn foot(&self) -> Point {
        self.normal() * self.offset()
    }

    /// Source point of the ray on the baseline.
    pub fn source(&self) -> Point {
        let n = self.normal();
        Point::new(self.offset() / n.x, 0.0)
    }

    /// Unit direction along the ray, away from its source.
    pub fn direction(&self) -> Point {
        let n = self.normal();
        Point::new(-n.y * self.side.sign(), n.x * self.side.sign())
    }

    /// Closest point of the ray (not the full line) to `p`.
    pub fn closest_point(&self, p: Point) -> Point {
        let src = self.source();
        let d = self.direction();
        let t = (p - src).dot(d).max(0.0);
        src + d * t
    }

    pub fn mirrored(&self) -> RaySpec {
        RaySpec { side: self.side.opposite(), beta: self.beta, anchor: self.anchor.mirrored() }
    }

    fn contact_tol(&self, p: Point) -> f64 {
        CONTACT_TOL * self.offset().abs().max(p.magnitude()).max(1.0)
    }
}

/// Length of the shortest segment from the origin to the ray.
pub fn perp_distance_to_ray(ray: &RaySpec) -> Result<f64> {
    ray.validate()?;
    Ok(ray.perp_distance())
}

/// A polyline with prefix arc lengths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchPath {
    vertices: Vec<Point>,
    cum_len: Vec<f64>,
}

impl SearchPath {
    /// A path consisting of the single start vertex.
    pub fn start_at(p: Point) -> Self {
        SearchPath { vertices: vec![p], cum_len: vec![0.0] }
    }

    /// Builds a path, dropping repeated consecutive vertices.
    ///
    /// Rejects empty input, non-finite coordinates and descending steps
    /// (beyond a relative tolerance of `1e-9`).
    pub fn from_vertices<I: IntoIterator<Item = Point>>(vertices: I) -> Result<Self> {
        let mut it = vertices.into_iter();
        let first = it.next().ok_or_else(|| Error::InvalidPath("no vertices".into()))?;
        let mut path = SearchPath::start_at(first);
        if !first.is_finite() {
            return Err(Error::InvalidPath("non-finite vertex".into()));
        }
        for p in it {
            path.push(p)?;
        }
        Ok(path)
    }

    /// Appends a vertex; a vertex equal to the current end is ignored.
    pub fn push(&mut self, p: Point) -> Result<()> {
        if !p.is_finite() {
            return Err(Error::InvalidPath("non-finite vertex".into()));
        }
        let last = self.end();
        let len = last.dist(p);
        if len == 0.0 {
            return Ok(());
        }
        if p.y < last.y - 1e-9 * last.magnitude().max(1.0) {
            return Err(Error::InvalidPath(format!(
                "descending step from ({}, {}) to ({}, {})",
                last.x, last.y, p.x, p.y
            )));
        }
        let total = self.total_length();
        self.vertices.push(p);
        self.cum_len.push(total + len);
        Ok(())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn cum_len(&self) -> &[f64] {
        &self.cum_len
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn end(&self) -> Point {
        *self.vertices.last().expect("path is never empty")
    }

    pub fn total_length(&self) -> f64 {
        *self.cum_len.last().expect("path is never empty")
    }

    /// Point at arc length `s`, clamped to the path.
    pub fn point_at(&self, s: f64) -> Point {
        if s <= 0.0 {
            return self.vertices[0];
        }
        let k = self.cum_len.partition_point(|&l| l <= s);
        if k >= self.vertices.len() {
            return self.end();
        }
        let (l0, l1) = (self.cum_len[k - 1], self.cum_len[k]);
        self.vertices[k - 1].lerp(self.vertices[k], (s - l0) / (l1 - l0))
    }

    /// Reflection of the whole path across the y-axis.
    pub fn mirrored(&self) -> SearchPath {
        SearchPath {
            vertices: self.vertices.iter().map(|p| p.mirrored()).collect(),
            cum_len: self.cum_len.clone(),
        }
    }

    /// Prefix of the path up to (and including) vertex `k`.
    pub fn prefix(&self, k: usize) -> SearchPath {
        let k = k.min(self.vertices.len() - 1);
        SearchPath { vertices: self.vertices[..=k].to_vec(), cum_len: self.cum_len[..=k].to_vec() }
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HitKind {
    /// The path passes to the far side of the supporting line.
    Crossing,
    /// The path touches the line and stays on one side.
    Tangential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hit {
    pub point: Point,
    pub arc_length: f64,
    pub kind: HitKind,
}

/// Earliest intersection of `path` with `ray`.
///
/// With `skip_tangential` set, contacts after which the path stays on the
/// origin side are ignored: the ray is taken to be missed by an arbitrarily
/// small margin. A contact stretch that runs along the line and then crosses
/// counts as detected where the path leaves the line, which is the limit of
/// rays just beyond that stretch. A contact at the very end of the path is
/// undecided and yields `None` in that mode.
pub fn first_hit(path: &SearchPath, ray: &RaySpec, skip_tangential: bool) -> Option<Hit> {
    let verts = path.vertices();
    let n = verts.len();
    let sd: Vec<f64> = verts.iter().map(|&p| ray.signed_distance(p)).collect();
    let on_line: Vec<bool> = verts.iter().zip(&sd).map(|(&p, &d)| d.abs() <= ray.contact_tol(p)).collect();
    let sign = |k: usize| if sd[k] > 0.0 { 1 } else { -1 };
    let on_ray = |p: Point| p.y >= -ray.contact_tol(p);

    if n == 1 {
        return if on_line[0] && !skip_tangential && on_ray(verts[0]) {
            Some(Hit { point: verts[0], arc_length: 0.0, kind: HitKind::Tangential })
        } else {
            None
        };
    }

    let mut k = 0;
    while k < n {
        if on_line[k] {
            // Contact stretch k..=m.
            let mut m = k;
            while m + 1 < n && on_line[m + 1] {
                m += 1;
            }
            let before = if k > 0 { Some(sign(k - 1)) } else { None };
            let after = if m + 1 < n { Some(sign(m + 1)) } else { None };
            let kind = match (before, after) {
                (Some(b), Some(a)) if a != b => HitKind::Crossing,
                (None, Some(a)) if a > 0 => HitKind::Crossing,
                _ => HitKind::Tangential,
            };
            let stretch_on_ray = (k..=m).any(|j| on_ray(verts[j]));
            if stretch_on_ray {
                if !skip_tangential {
                    let j = (k..=m).find(|&j| on_ray(verts[j])).unwrap();
                    return Some(Hit { point: verts[j], arc_length: path.cum_len()[j], kind });
                }
                if kind == HitKind::Crossing && after.is_some() {
                    return Some(Hit { point: verts[m], arc_length: path.cum_len()[m], kind });
                }
            }
            k = m + 1;
            continue;
        }
        if k + 1 < n && !on_line[k + 1] && sign(k) != sign(k + 1) {
            let t = sd[k] / (sd[k] - sd[k + 1]);
            let point = verts[k].lerp(verts[k + 1], t);
            if on_ray(point) {
                let seg = path.cum_len()[k + 1] - path.cum_len()[k];
                return Some(Hit { point, arc_length: path.cum_len()[k] + t * seg, kind: HitKind::Crossing });
            }
        }
        k += 1;
    }
    None
}

/// Whether the closed segments `a0 a1` and `b0 b1` intersect.
pub fn segments_intersect(a0: Point, a1: Point, b0: Point, b1: Point) -> bool {
    let d1 = (a1 - a0).cross(b0 - a0);
    let d2 = (a1 - a0).cross(b1 - a0);
    let d3 = (b1 - b0).cross(a0 - b0);
    let d4 = (b1 - b0).cross(a1 - b0);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |p: Point, q: Point, r: Point, d: f64| {
        d == 0.0 && r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
    };
    on(a0, a1, b0, d1) || on(a0, a1, b1, d2) || on(b0, b1, a0, d3) || on(b0, b1, a1, d4)
}

/// Point of a segment closest to `p`.
pub fn closest_on_segment(a: Point, b: Point, p: Point) -> Point {
    let ab = b - a;
    let l2 = ab.dot(ab);
    if l2 == 0.0 {
        return a;
    }
    a + ab * ((p - a).dot(ab) / l2).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(pts: &[(f64, f64)]) -> SearchPath {
        SearchPath::from_vertices(pts.iter().map(|&(x, y)| Point::new(x, y))).unwrap()
    }

    #[test]
    fn vertical_ray_distance_is_x_offset() {
        let ray = RaySpec::vertical(3.5).unwrap();
        assert_eq!(perp_distance_to_ray(&ray).unwrap(), 3.5);
        let left = RaySpec::vertical(-2.0).unwrap();
        assert_eq!(left.perp_distance(), 2.0);
        assert_eq!(left.side, Side::Left);
    }

    #[test]
    fn distance_matches_intercept_form() {
        // y = -tan(beta) x + b, distance cos(beta) b
        let beta: f64 = 0.7;
        let anchor = Point::new(1.5, 0.4);
        let b = anchor.y + beta.tan() * anchor.x;
        let ray = RaySpec::new(Side::Right, beta, anchor).unwrap();
        assert!((ray.perp_distance() - beta.cos() * b).abs() < 1e-14);
        assert!(ray.foot().y >= 0.0);
        assert!(ray.signed_distance(ray.foot()).abs() < 1e-14);
        assert!(ray.signed_distance(ray.source()).abs() < 1e-14);
    }

    #[test]
    fn rejects_rays_pointing_away() {
        assert!(RaySpec::new(Side::Right, 0.5, Point::new(-3.0, 0.5)).is_err());
        assert!(RaySpec::new(Side::Right, 0.0, Point::new(1.0, 0.0)).is_err());
        assert!(RaySpec::new(Side::Right, 2.0, Point::new(1.0, 0.0)).is_err());
        assert!(RaySpec::new(Side::Left, 0.5, Point::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn crossing_a_vertical_ray() {
        let p = path(&[(0.0, 0.0), (2.0, 0.0)]);
        let hit = first_hit(&p, &RaySpec::vertical(1.0).unwrap(), true).unwrap();
        assert_eq!(hit.point, Point::new(1.0, 0.0));
        assert_eq!(hit.arc_length, 1.0);
        assert_eq!(hit.kind, HitKind::Crossing);
    }

    #[test]
    fn ray_beyond_the_path_is_not_hit() {
        let p = path(&[(0.0, 0.0), (1.0, 0.1), (-1.0, 0.3)]);
        assert!(first_hit(&p, &RaySpec::vertical(5.0).unwrap(), true).is_none());
        assert!(first_hit(&p, &RaySpec::vertical(5.0).unwrap(), false).is_none());
    }

    #[test]
    fn tangential_touch_is_skipped() {
        let p = path(&[(0.0, 0.0), (1.0, 0.0), (-2.0, 0.0), (4.0, 0.0)]);
        let ray = RaySpec::vertical(1.0).unwrap();
        let touch = first_hit(&p, &ray, false).unwrap();
        assert_eq!(touch.kind, HitKind::Tangential);
        assert_eq!(touch.arc_length, 1.0);
        let hit = first_hit(&p, &ray, true).unwrap();
        assert_eq!(hit.kind, HitKind::Crossing);
        assert_eq!(hit.arc_length, 1.0 + 3.0 + 3.0);
    }

    #[test]
    fn contact_at_path_end_is_undecided() {
        let p = path(&[(0.0, 0.0), (1.0, 0.0)]);
        let ray = RaySpec::vertical(1.0).unwrap();
        assert!(first_hit(&p, &ray, true).is_none());
        assert_eq!(first_hit(&p, &ray, false).unwrap().kind, HitKind::Tangential);
    }

    #[test]
    fn collinear_stretch_detected_where_it_leaves() {
        // The path runs along the line x + y = 2 and then crosses it.
        let ray = RaySpec::new(Side::Right, std::f64::consts::FRAC_PI_4, Point::new(1.0, 1.0)).unwrap();
        let p = path(&[(0.0, 0.0), (2.0, 0.0), (0.0, 2.0), (1.0, 3.0)]);
        let hit = first_hit(&p, &ray, true).unwrap();
        assert_eq!(hit.kind, HitKind::Crossing);
        assert!((hit.arc_length - (2.0 + 8f64.sqrt())).abs() < 1e-12);
        let first = first_hit(&p, &ray, false).unwrap();
        assert_eq!(first.arc_length, 2.0);
    }

    #[test]
    fn mirror_preserves_geometry() {
        let p = path(&[(0.0, 0.0), (1.0, 0.2), (-2.0, 0.8), (4.0, 2.0)]);
        let ray = RaySpec::new(Side::Right, 1.1, Point::new(1.0, 0.2)).unwrap();
        let a = first_hit(&p, &ray, true).unwrap();
        let b = first_hit(&p.mirrored(), &ray.mirrored(), true).unwrap();
        assert_eq!(a.arc_length, b.arc_length);
        assert_eq!(ray.perp_distance(), ray.mirrored().perp_distance());
    }

    #[test]
    fn path_rejects_descent_and_tracks_length() {
        assert!(SearchPath::from_vertices([Point::new(0.0, 1.0), Point::new(1.0, 0.0)]).is_err());
        let p = path(&[(0.0, 0.0), (3.0, 4.0), (3.0, 4.0), (0.0, 8.0)]);
        assert_eq!(p.len(), 3);
        assert_eq!(p.total_length(), 10.0);
        assert_eq!(p.point_at(2.5), Point::new(1.5, 2.0));
        assert_eq!(p.point_at(100.0), Point::new(0.0, 8.0));
    }

    #[test]
    fn segment_intersection_cases() {
        let o = Point::ORIGIN;
        assert!(segments_intersect(o, Point::new(2.0, 2.0), Point::new(0.0, 2.0), Point::new(2.0, 0.0)));
        assert!(!segments_intersect(o, Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 1.0)));
        assert!(segments_intersect(o, Point::new(1.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0)));
    }
}
