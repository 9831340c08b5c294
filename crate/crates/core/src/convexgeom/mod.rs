//! Convex polygon geometry: inradius and Chebyshev center, the high ridge
//! (centers of all maximal inscribed disks), the proximal radius (smallest
//! enclosing disk centered on the ridge), circumradius, diameter and the
//! polar moment about the ridge.

mod simplex;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{point_segment_distance, Point};

/// Relative tolerance used for convexity and degeneracy decisions.
const REL_TOL: f64 = 1e-12;
/// Relative tolerance deciding whether the ridge collapses to a point.
const RIDGE_TOL: f64 = 1e-9;

/// A strictly convex polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
    #[serde(skip)]
    normals: Vec<Point>,
    #[serde(skip)]
    offsets: Vec<f64>,
    #[serde(skip)]
    scale: f64,
}

impl<'de> Deserialize<'de> for ConvexPolygon {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            vertices: Vec<Point>,
        }
        let raw = Raw::deserialize(d)?;
        ConvexPolygon::new(raw.vertices).map_err(serde::de::Error::custom)
    }
}

/// Centers of the maximal inscribed disks. For a polygon this is a point
/// or a segment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "endpoints", rename_all = "snake_case")]
pub enum HighRidge {
    Point(Point),
    Segment(Point, Point),
}

impl HighRidge {
    pub fn endpoints(&self) -> (Point, Point) {
        match *self {
            HighRidge::Point(p) => (p, p),
            HighRidge::Segment(a, b) => (a, b),
        }
    }

    pub fn length(&self) -> f64 {
        let (a, b) = self.endpoints();
        a.dist(b)
    }

    /// Point at parameter `t ∈ [0, 1]` along the ridge.
    pub fn at(&self, t: f64) -> Point {
        let (a, b) = self.endpoints();
        a + (b - a) * t
    }

    /// Closest ridge point to `p`.
    pub fn closest_point(&self, p: Point) -> Point {
        let (a, b) = self.endpoints();
        let ab = b - a;
        let len_sq = ab.norm_sq();
        if len_sq == 0.0 {
            return a;
        }
        a + ab * ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0)
    }
}

/// All scalar geometry of a convex polygon in one record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexGeometrySummary {
    pub area: f64,
    pub perimeter: f64,
    pub inradius: f64,
    pub chebyshev_center: Point,
    pub circumradius: f64,
    pub circumcenter: Point,
    pub diameter: f64,
    pub high_ridge: HighRidge,
    pub proximal_center: Point,
    pub proximal_radius: f64,
    pub moment_sharp: f64,
}

impl ConvexPolygon {
    /// Validates and stores the polygon. Clockwise input is reversed.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegeneratePolygon(format!(
                "need at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::DegeneratePolygon("non-finite vertex".into()));
        }
        let n = vertices.len();
        let avg = vertex_average(&vertices);
        let scale = vertices.iter().map(|&v| v.dist(avg)).fold(0.0, f64::max);
        if !(scale > 0.0) {
            return Err(Error::DegeneratePolygon("all vertices coincide".into()));
        }
        for i in 0..n {
            for j in i + 1..n {
                if vertices[i].dist(vertices[j]) <= REL_TOL * scale {
                    return Err(Error::DegeneratePolygon(format!(
                        "vertices {i} and {j} coincide"
                    )));
                }
            }
        }
        let signed: f64 = (0..n)
            .map(|i| vertices[i].cross(vertices[(i + 1) % n]))
            .sum();
        if signed < 0.0 {
            vertices.reverse();
        }
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            if (b - a).cross(c - b) <= REL_TOL * scale * scale {
                return Err(Error::DegeneratePolygon(format!(
                    "not strictly convex at vertex {}",
                    (i + 1) % n
                )));
            }
        }
        // simple: the turning angles must add up to one full turn
        let turning: f64 = (0..n)
            .map(|i| {
                let e1 = vertices[(i + 1) % n] - vertices[i];
                let e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
                e1.cross(e2).atan2(e1.dot(e2))
            })
            .sum();
        if (turning - 2.0 * std::f64::consts::PI).abs() > 1e-6 {
            return Err(Error::DegeneratePolygon(
                "boundary winds more than once".into(),
            ));
        }
        let mut normals = Vec::with_capacity(n);
        let mut offsets = Vec::with_capacity(n);
        for i in 0..n {
            let e = vertices[(i + 1) % n] - vertices[i];
            let normal = Point::new(e.y, -e.x) * (1.0 / e.norm());
            offsets.push(normal.dot(vertices[i]));
            normals.push(normal);
        }
        Ok(Self {
            vertices,
            normals,
            offsets,
            scale,
        })
    }

    /// Convex hull of a point cloud (Andrew's monotone chain), with
    /// near-collinear vertices dropped.
    pub fn hull(points: &[Point]) -> Result<Self> {
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::DegeneratePolygon(
                "fewer than 3 distinct points".into(),
            ));
        }
        let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
        for pass in 0..2 {
            let start = hull.len();
            let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
                Box::new(pts.iter())
            } else {
                Box::new(pts.iter().rev())
            };
            for &p in iter {
                while hull.len() >= start + 2 {
                    let a = hull[hull.len() - 2];
                    let b = hull[hull.len() - 1];
                    if (b - a).cross(p - b) <= 0.0 {
                        hull.pop();
                    } else {
                        break;
                    }
                }
                hull.push(p);
            }
            hull.pop();
        }
        let avg = vertex_average(&hull);
        let scale = hull.iter().map(|&v| v.dist(avg)).fold(0.0, f64::max);
        loop {
            let n = hull.len();
            if n < 3 {
                return Err(Error::DegeneratePolygon("points are collinear".into()));
            }
            let flat = (0..n).find(|&i| {
                let a = hull[(i + n - 1) % n];
                let b = hull[i];
                let c = hull[(i + 1) % n];
                (b - a).cross(c - b) <= 1e3 * REL_TOL * scale * scale
            });
            match flat {
                Some(i) => {
                    hull.remove(i);
                }
                None => break,
            }
        }
        Self::new(hull)
    }

    /// Regular `n`-gon with the given circumradius, first vertex on the
    /// positive x-axis.
    pub fn regular(n: usize, circumradius: f64, center: Point) -> Result<Self> {
        let verts = (0..n)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                center + Point::new(t.cos(), t.sin()) * circumradius
            })
            .collect();
        Self::new(verts)
    }

    /// Axis-aligned rectangle `(cx - a, cx + a) × (cy - b, cy + b)`.
    pub fn rectangle(center: Point, half_width: f64, half_height: f64) -> Result<Self> {
        let (a, b) = (half_width, half_height);
        Self::new(vec![
            center + Point::new(-a, -b),
            center + Point::new(a, -b),
            center + Point::new(a, b),
            center + Point::new(-a, b),
        ])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Outward unit normal of edge `i` (from vertex `i` to `i + 1`).
    pub fn normals(&self) -> &[Point] {
        &self.normals
    }

    /// Support values `c_i` with the polygon `{x : n_i·x ≤ c_i}`.
    pub fn offsets(&self) -> &[f64] {
        &self.offsets
    }

    /// Characteristic length used to scale tolerances.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn area(&self) -> f64 {
        self.moments(Point::default()).0
    }

    pub fn perimeter(&self) -> f64 {
        crate::geometry::closed_polyline_length(&self.vertices)
    }

    pub fn centroid(&self) -> Point {
        let o = vertex_average(&self.vertices);
        let (a, s, _) = self.moments(o);
        o + s * (1.0 / a)
    }

    pub fn scaled(&self, t: f64) -> Result<Self> {
        Self::new(self.vertices.iter().map(|&v| v * t).collect())
    }

    pub fn contains(&self, p: Point) -> bool {
        self.normals
            .iter()
            .zip(&self.offsets)
            .all(|(n, &c)| n.dot(p) <= c + REL_TOL * self.scale)
    }

    /// Area, first moment and polar second moment about `o`, summed
    /// exactly over the fan of triangles `(o, v_i, v_{i+1})`.
    fn moments(&self, o: Point) -> (f64, Point, f64) {
        let n = self.vertices.len();
        let mut area = 0.0;
        let mut first = Point::default();
        let mut second = 0.0;
        for i in 0..n {
            let p = self.vertices[i] - o;
            let q = self.vertices[(i + 1) % n] - o;
            let cr = p.cross(q);
            area += 0.5 * cr;
            first = first + (p + q) * (cr / 6.0);
            second +=
                cr / 12.0 * (p.x * p.x + p.x * q.x + q.x * q.x + p.y * p.y + p.y * q.y + q.y * q.y);
        }
        (area, first, second)
    }

    /// `∫_Ω |x - x0|² dx`.
    pub fn polar_moment_about(&self, x0: Point) -> f64 {
        let (_, _, j) = self.moments(x0);
        j
    }

    /// Distance from an interior point to the boundary.
    pub fn distance_to_boundary(&self, p: Point) -> f64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| point_segment_distance(p, self.vertices[i], self.vertices[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min)
    }

    /// Inradius and a Chebyshev center, from the linear program
    /// `max t` subject to `n_i·x + t ≤ c_i`.
    pub fn inradius_and_chebyshev(&self) -> Result<(f64, Point)> {
        let o = vertex_average(&self.vertices);
        // variables: x⁺, x⁻, y⁺, y⁻, t ≥ 0, shifted so the origin is interior
        let a: Vec<Vec<f64>> = self
            .normals
            .iter()
            .map(|n| vec![n.x, -n.x, n.y, -n.y, 1.0])
            .collect();
        let b: Vec<f64> = self
            .normals
            .iter()
            .zip(&self.offsets)
            .map(|(n, &c)| (c - n.dot(o)).max(0.0))
            .collect();
        let sol = simplex::maximize(&a, &b, &[0.0, 0.0, 0.0, 0.0, 1.0])
            .ok_or_else(|| Error::DegeneratePolygon("inradius program failed".into()))?;
        let center = o + Point::new(sol.x[0] - sol.x[1], sol.x[2] - sol.x[3]);
        let r = sol.objective;
        if !(r > 0.0) {
            return Err(Error::DegeneratePolygon("zero inradius".into()));
        }
        Ok((r, center))
    }

    pub fn inradius(&self) -> Result<f64> {
        Ok(self.inradius_and_chebyshev()?.0)
    }

    /// Inner parallel set `{x : d(x) ≥ t}` as a (possibly degenerate)
    /// convex polygon, by clipping against the shifted edge halfplanes.
    /// Empty when `t` exceeds the inradius.
    pub fn inner_parallel(&self, t: f64) -> Vec<Point> {
        let mut poly = self.vertices.clone();
        for (n, &c) in self.normals.iter().zip(&self.offsets) {
            let limit = c - t;
            let m = poly.len();
            if m == 0 {
                break;
            }
            let mut out = Vec::with_capacity(m + 1);
            for i in 0..m {
                let p = poly[i];
                let q = poly[(i + 1) % m];
                let fp = n.dot(p) - limit;
                let fq = n.dot(q) - limit;
                if fp <= 0.0 {
                    out.push(p);
                }
                if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
                    out.push(p + (q - p) * (fp / (fp - fq)));
                }
            }
            poly = out;
        }
        poly
    }

    /// The high ridge `{x : d(x) = r}`.
    ///
    /// A segment ridge requires two antiparallel edges whose distance is
    /// exactly `2r`; its endpoints are where the remaining edge constraints
    /// become active along the midline.
    pub fn high_ridge(&self) -> Result<HighRidge> {
        let (r, w) = self.inradius_and_chebyshev()?;
        let tol = RIDGE_TOL * self.scale;
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                let (ni, nj) = (self.normals[i], self.normals[j]);
                if (ni + nj).norm() > 1e-9 || self.offsets[i] + self.offsets[j] - 2.0 * r > tol {
                    continue;
                }
                let mid_level = 0.5 * (self.offsets[i] - self.offsets[j]);
                let m = w - ni * (ni.dot(w) - mid_level);
                let d = ni.perp();
                let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
                for k in 0..n {
                    let a = self.normals[k].dot(d);
                    if a.abs() < 1e-9 {
                        continue;
                    }
                    let slack = self.offsets[k] - r - self.normals[k].dot(m);
                    if a > 0.0 {
                        hi = hi.min(slack / a);
                    } else {
                        lo = lo.max(slack / a);
                    }
                }
                if hi - lo > tol {
                    return Ok(HighRidge::Segment(m + d * lo, m + d * hi));
                }
            }
        }
        Ok(HighRidge::Point(w))
    }

    /// Largest distance from `p` to the polygon (attained at a vertex).
    pub fn max_vertex_distance(&self, p: Point) -> f64 {
        self.vertices.iter().map(|&v| v.dist(p)).fold(0.0, f64::max)
    }

    /// Proximal radius `L` and the proximal center: the smallest disk
    /// containing the polygon among disks centered on the high ridge.
    pub fn proximal_radius(&self) -> Result<(f64, Point)> {
        let ridge = self.high_ridge()?;
        Ok(self.proximal_on(&ridge))
    }

    fn proximal_on(&self, ridge: &HighRidge) -> (f64, Point) {
        match *ridge {
            HighRidge::Point(p) => (self.max_vertex_distance(p), p),
            HighRidge::Segment(..) => {
                let f = |t: f64| self.max_vertex_distance(ridge.at(t));
                let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
                for _ in 0..200 {
                    let m1 = lo + (hi - lo) / 3.0;
                    let m2 = hi - (hi - lo) / 3.0;
                    if f(m1) <= f(m2) {
                        hi = m2;
                    } else {
                        lo = m1;
                    }
                }
                let c = ridge.at(0.5 * (lo + hi));
                (self.max_vertex_distance(c), c)
            }
        }
    }

    /// Radius and center of the minimum enclosing circle of the vertices
    /// (Welzl's incremental algorithm on a fixed-seed shuffle).
    pub fn circumradius(&self) -> (f64, Point) {
        let mut pts = self.vertices.clone();
        pts.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed));
        let slack = 1e-12 * self.scale;
        let inside = |c: &Circle, p: Point| p.dist(c.center) <= c.radius + slack;
        let mut circle = Circle::from_two(pts[0], pts[1]);
        for i in 2..pts.len() {
            if inside(&circle, pts[i]) {
                continue;
            }
            circle = Circle::from_two(pts[0], pts[i]);
            for j in 1..i {
                if inside(&circle, pts[j]) {
                    continue;
                }
                circle = Circle::from_two(pts[i], pts[j]);
                for k in 0..j {
                    if !inside(&circle, pts[k]) {
                        circle = Circle::from_three(pts[i], pts[j], pts[k]);
                    }
                }
            }
        }
        (circle.radius, circle.center)
    }

    /// Largest vertex-to-vertex distance.
    pub fn diameter(&self) -> f64 {
        let v = &self.vertices;
        let mut best = 0.0_f64;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = best.max(v[i].dist(v[j]));
            }
        }
        best
    }

    /// `min_{x0 ∈ ridge} ∫|x - x0|² dx`. The integrand is a quadratic in `x0`
    /// centered at the centroid, so the minimiser is the ridge point closest
    /// to the centroid.
    pub fn moment_sharp(&self) -> Result<(f64, Point)> {
        let ridge = self.high_ridge()?;
        Ok(self.moment_sharp_on(&ridge))
    }

    fn moment_sharp_on(&self, ridge: &HighRidge) -> (f64, Point) {
        let x0 = ridge.closest_point(self.centroid());
        (self.polar_moment_about(x0), x0)
    }

    pub fn summary(&self) -> Result<ConvexGeometrySummary> {
        let (inradius, chebyshev_center) = self.inradius_and_chebyshev()?;
        let high_ridge = self.high_ridge()?;
        let (proximal_radius, proximal_center) = self.proximal_on(&high_ridge);
        let (circumradius, circumcenter) = self.circumradius();
        let (moment_sharp, _) = self.moment_sharp_on(&high_ridge);
        Ok(ConvexGeometrySummary {
            area: self.area(),
            perimeter: self.perimeter(),
            inradius,
            chebyshev_center,
            circumradius,
            circumcenter,
            diameter: self.diameter(),
            high_ridge,
            proximal_center,
            proximal_radius,
            moment_sharp,
        })
    }
}

fn vertex_average(v: &[Point]) -> Point {
    let s = v.iter().fold(Point::default(), |acc, &p| acc + p);
    s * (1.0 / v.len() as f64)
}

struct Circle {
    center: Point,
    radius: f64,
}

impl Circle {
    fn from_two(a: Point, b: Point) -> Self {
        let center = a.midpoint(b);
        Self {
            center,
            radius: center.dist(a),
        }
    }

    fn from_three(a: Point, b: Point, c: Point) -> Self {
        let (ab, ac) = (b - a, c - a);
        let d = 2.0 * ab.cross(ac);
        if d.abs() < 1e-300 {
            // collinear: the farthest pair spans the circle
            let cands = [
                Self::from_two(a, b),
                Self::from_two(a, c),
                Self::from_two(b, c),
            ];
            return cands
                .into_iter()
                .max_by(|x, y| x.radius.total_cmp(&y.radius))
                .unwrap();
        }
        let ux = (ac.y * ab.norm_sq() - ab.y * ac.norm_sq()) / d;
        let uy = (ab.x * ac.norm_sq() - ac.x * ab.norm_sq()) / d;
        let center = a + Point::new(ux, uy);
        Self {
            center,
            radius: center.dist(a).max(center.dist(b)).max(center.dist(c)),
        }
    }
}

/// The right triangles `T_n` with vertices `(-1, 0)`, `(1, 0)` and
/// `(cos θ, sin θ)`, `θ = 1/(n + 1)`, whose proximal radius tends to the
/// diameter.
pub fn right_triangle_sequence(n: u32) -> Result<ConvexPolygon> {
    let theta = 1.0 / (n as f64 + 1.0);
    ConvexPolygon::new(vec![
        Point::new(-1.0, 0.0),
        Point::new(1.0, 0.0),
        Point::new(theta.cos(), theta.sin()),
    ])
}
