//! Triangulations of planar domains with uniform refinement and boundary
//! bookkeeping.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds::ConformalMap;
use crate::convexgeom::ConvexPolygon;
use crate::error::{Error, Result};
use crate::geometry::{signed_area, Point};

/// Meshes with a smaller angle are refused by the solver.
pub const MIN_ANGLE_DEGREES: f64 = 1.0;

pub const DEFAULT_SEGMENTS: usize = 64;

fn default_segments() -> usize {
    DEFAULT_SEGMENTS
}

/// Declarative, δ-independent description of a planar domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum DomainSpec {
    Polygon {
        vertices: Vec<Point>,
    },
    Disk {
        #[serde(default)]
        center: Point,
        radius: f64,
        #[serde(default = "default_segments")]
        segments: usize,
    },
    Annulus {
        #[serde(default)]
        center: Point,
        inner_radius: f64,
        outer_radius: f64,
        #[serde(default = "default_segments")]
        segments: usize,
    },
    Rectangle {
        half_lengths: [f64; 2],
        #[serde(default)]
        center: Point,
    },
    MappedDisk {
        /// `a_1, …, a_K` as `[re, im]` pairs.
        coefficients: Vec<Complex64>,
        #[serde(default)]
        offset: Point,
        #[serde(default = "default_segments")]
        segments: usize,
    },
}

impl DomainSpec {
    pub fn disk(radius: f64, segments: usize) -> Self {
        DomainSpec::Disk {
            center: Point::default(),
            radius,
            segments,
        }
    }

    pub fn square() -> Self {
        Self::rectangle(1.0, 1.0)
    }

    pub fn rectangle(a: f64, b: f64) -> Self {
        DomainSpec::Rectangle {
            half_lengths: [a, b],
            center: Point::default(),
        }
    }

    pub fn annulus(inner_radius: f64, outer_radius: f64, segments: usize) -> Self {
        DomainSpec::Annulus {
            center: Point::default(),
            inner_radius,
            outer_radius,
            segments,
        }
    }

    pub fn mapped_disk(coefficients: &[(f64, f64)], segments: usize) -> Self {
        DomainSpec::MappedDisk {
            coefficients: coefficients
                .iter()
                .map(|&(re, im)| Complex64::new(re, im))
                .collect(),
            offset: Point::default(),
            segments,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            DomainSpec::Polygon { .. } => "polygon",
            DomainSpec::Disk { .. } => "disk",
            DomainSpec::Annulus { .. } => "annulus",
            DomainSpec::Rectangle { .. } => "rectangle",
            DomainSpec::MappedDisk { .. } => "mapped_disk",
        }
    }

    /// Replaces the segment count of curved kinds.
    pub fn with_segments(mut self, m: usize) -> Self {
        match &mut self {
            DomainSpec::Disk { segments, .. }
            | DomainSpec::Annulus { segments, .. }
            | DomainSpec::MappedDisk { segments, .. } => *segments = m,
            _ => {}
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidSpec(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        let enough = |m: usize| {
            if m >= 8 {
                Ok(())
            } else {
                Err(Error::InvalidSpec(format!(
                    "need at least 8 boundary segments, got {m}"
                )))
            }
        };
        match self {
            DomainSpec::Polygon { .. } | DomainSpec::Rectangle { .. } => {
                self.convex_polygon()?;
                Ok(())
            }
            DomainSpec::Disk {
                radius,
                segments,
                center,
            } => {
                positive("radius", *radius)?;
                finite_point(*center)?;
                enough(*segments)
            }
            DomainSpec::Annulus {
                center,
                inner_radius,
                outer_radius,
                segments,
            } => {
                positive("inner radius", *inner_radius)?;
                finite_point(*center)?;
                if !(outer_radius > inner_radius) || !outer_radius.is_finite() {
                    return Err(Error::InvalidSpec(format!(
                        "annulus needs inner < outer radius, got {inner_radius} and {outer_radius}"
                    )));
                }
                enough(*segments)
            }
            DomainSpec::MappedDisk { segments, .. } => {
                self.conformal_map()?;
                enough(*segments)
            }
        }
    }

    /// Polygon or rectangle as a validated convex polygon.
    pub fn convex_polygon(&self) -> Result<ConvexPolygon> {
        match self {
            DomainSpec::Polygon { vertices } => ConvexPolygon::new(vertices.clone()),
            DomainSpec::Rectangle {
                half_lengths,
                center,
            } => {
                if !(half_lengths[0] > 0.0 && half_lengths[1] > 0.0) {
                    return Err(Error::InvalidSpec(format!(
                        "rectangle half lengths must be positive, got {half_lengths:?}"
                    )));
                }
                ConvexPolygon::rectangle(*center, half_lengths[0], half_lengths[1])
            }
            other => Err(Error::Unsupported(format!(
                "{} is not a polygonal domain",
                other.kind()
            ))),
        }
    }

    /// The map `f` with `Ω = f(𝔻)` for disks and mapped disks.
    pub fn conformal_map(&self) -> Result<ConformalMap> {
        match self {
            DomainSpec::Disk { center, radius, .. } => ConformalMap::disk(*radius, *center),
            DomainSpec::MappedDisk {
                coefficients,
                offset,
                ..
            } => ConformalMap::new(coefficients.clone(), *offset),
            other => Err(Error::Unsupported(format!(
                "{} is not given by a map of the disk",
                other.kind()
            ))),
        }
    }

    /// Triangulates the domain and refines `level` times.
    pub fn build_mesh(&self, level: u32) -> Result<TriMesh> {
        self.validate()?;
        match self {
            DomainSpec::Polygon { .. } | DomainSpec::Rectangle { .. } => {
                let poly = self.convex_polygon()?;
                let mut mesh = fan_mesh(poly.vertices(), poly.centroid())?;
                for _ in 0..level {
                    mesh = mesh.refine(&|p| p)?;
                }
                Ok(mesh)
            }
            DomainSpec::Disk { segments, .. } | DomainSpec::MappedDisk { segments, .. } => {
                let map = self.conformal_map()?;
                let mut template = polar_disk_template(*segments)?;
                let project = |p: Point| {
                    let n = p.norm();
                    p * (1.0 / n)
                };
                for _ in 0..level {
                    template = template.refine(&project)?;
                }
                let nodes = template.nodes.iter().map(|&w| map.eval_point(w)).collect();
                TriMesh::new(nodes, template.triangles)
            }
            DomainSpec::Annulus {
                center,
                inner_radius,
                outer_radius,
                segments,
            } => {
                let (c, r, big_r) = (*center, *inner_radius, *outer_radius);
                let mut mesh = annulus_mesh(c, r, big_r, *segments)?;
                let mid = 0.5 * (r + big_r);
                let project = move |p: Point| {
                    let v = p - c;
                    let n = v.norm();
                    let target = if n < mid { r } else { big_r };
                    c + v * (target / n)
                };
                for _ in 0..level {
                    mesh = mesh.refine(&project)?;
                }
                Ok(mesh)
            }
        }
    }
}

fn finite_point(p: Point) -> Result<()> {
    if p.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidSpec("non-finite coordinate".into()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryEdge {
    /// Oriented with the domain on the left.
    pub nodes: [usize; 2],
    pub normal: Point,
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeshQuality {
    /// Smallest interior angle, in degrees.
    pub min_angle: f64,
    /// Largest `longest edge × perimeter / (4√3 area)`, 1 for equilateral.
    pub max_aspect: f64,
}

/// Counter-clockwise triangulation with oriented boundary edges.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriMesh {
    pub nodes: Vec<Point>,
    pub triangles: Vec<[usize; 3]>,
    pub boundary_edges: Vec<BoundaryEdge>,
}

impl TriMesh {
    /// Validates orientation, edge manifoldness, closed boundary loops and
    /// the absence of orphan nodes, then derives the boundary edges.
    pub fn new(nodes: Vec<Point>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        if triangles.is_empty() {
            return Err(Error::InvalidMesh("no triangles".into()));
        }
        let mut used = vec![false; nodes.len()];
        let mut edges: HashMap<(usize, usize), (usize, [usize; 2])> = HashMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            for &v in tri {
                if v >= nodes.len() {
                    return Err(Error::InvalidMesh(format!(
                        "triangle {t} references node {v}"
                    )));
                }
                used[v] = true;
            }
            let [a, b, c] = *tri;
            if !(signed_area(nodes[a], nodes[b], nodes[c]) > 0.0) {
                return Err(Error::InvalidMesh(format!(
                    "triangle {t} is not counter-clockwise"
                )));
            }
            for (p, q) in [(a, b), (b, c), (c, a)] {
                let key = (p.min(q), p.max(q));
                let entry = edges.entry(key).or_insert((0, [p, q]));
                entry.0 += 1;
            }
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::InvalidMesh(format!(
                "node {i} belongs to no triangle"
            )));
        }
        let mut boundary_edges = Vec::new();
        let mut keys: Vec<_> = edges.into_iter().collect();
        keys.sort_unstable_by_key(|(k, _)| *k);
        let mut out_degree = vec![0u32; nodes.len()];
        let mut in_degree = vec![0u32; nodes.len()];
        for (key, (count, [p, q])) in keys {
            match count {
                1 => {
                    let d = nodes[q] - nodes[p];
                    let length = d.norm();
                    out_degree[p] += 1;
                    in_degree[q] += 1;
                    boundary_edges.push(BoundaryEdge {
                        nodes: [p, q],
                        normal: Point::new(d.y, -d.x) * (1.0 / length),
                        length,
                    });
                }
                2 => {}
                _ => {
                    return Err(Error::InvalidMesh(format!(
                        "edge {key:?} is shared by {count} triangles"
                    )))
                }
            }
        }
        if boundary_edges.is_empty() {
            return Err(Error::InvalidMesh("mesh has no boundary".into()));
        }
        for i in 0..nodes.len() {
            if out_degree[i] != in_degree[i] || out_degree[i] > 1 {
                return Err(Error::InvalidMesh(format!(
                    "boundary is not a union of simple loops at node {i}"
                )));
            }
        }
        Ok(Self {
            nodes,
            triangles,
            boundary_edges,
        })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t];
        signed_area(self.nodes[a], self.nodes[b], self.nodes[c])
    }

    pub fn area(&self) -> f64 {
        (0..self.triangles.len())
            .map(|t| self.triangle_area(t))
            .sum()
    }

    pub fn perimeter(&self) -> f64 {
        self.boundary_edges.iter().map(|e| e.length).sum()
    }

    /// Longest edge, the mesh size `h`.
    pub fn max_edge_length(&self) -> f64 {
        self.triangles
            .iter()
            .flat_map(|&[a, b, c]| [(a, b), (b, c), (c, a)])
            .map(|(p, q)| self.nodes[p].dist(self.nodes[q]))
            .fold(0.0, f64::max)
    }

    /// Nodes touching at least one boundary edge.
    pub fn boundary_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.nodes.len()];
        for e in &self.boundary_edges {
            mask[e.nodes[0]] = true;
            mask[e.nodes[1]] = true;
        }
        mask
    }

    /// Number of closed boundary loops.
    pub fn boundary_loop_count(&self) -> usize {
        let mut next = HashMap::new();
        for e in &self.boundary_edges {
            next.insert(e.nodes[0], e.nodes[1]);
        }
        let mut seen = HashMap::new();
        let mut loops = 0;
        for e in &self.boundary_edges {
            let start = e.nodes[0];
            if seen.contains_key(&start) {
                continue;
            }
            loops += 1;
            let mut v = start;
            while seen.insert(v, loops).is_none() {
                v = next[&v];
            }
        }
        loops
    }

    pub fn quality(&self) -> MeshQuality {
        let mut min_angle = f64::INFINITY;
        let mut max_aspect: f64 = 0.0;
        for (t, &[a, b, c]) in self.triangles.iter().enumerate() {
            let (pa, pb, pc) = (self.nodes[a], self.nodes[b], self.nodes[c]);
            for (o, p, q) in [(pa, pb, pc), (pb, pc, pa), (pc, pa, pb)] {
                let (u, v) = (p - o, q - o);
                let angle = u.cross(v).abs().atan2(u.dot(v)).to_degrees();
                min_angle = min_angle.min(angle);
            }
            let edges = [pa.dist(pb), pb.dist(pc), pc.dist(pa)];
            let longest = edges.iter().cloned().fold(0.0, f64::max);
            let perimeter: f64 = edges.iter().sum();
            let aspect = longest * perimeter / (4.0 * 3f64.sqrt() * self.triangle_area(t));
            max_aspect = max_aspect.max(aspect);
        }
        MeshQuality {
            min_angle,
            max_aspect,
        }
    }

    /// Errors when the minimum angle is below [`MIN_ANGLE_DEGREES`].
    pub fn check_quality(&self) -> Result<MeshQuality> {
        let q = self.quality();
        if !(q.min_angle >= MIN_ANGLE_DEGREES) {
            return Err(Error::MeshQuality {
                min_angle: q.min_angle,
                limit: MIN_ANGLE_DEGREES,
            });
        }
        Ok(q)
    }

    /// Splits every triangle into four through its edge midpoints;
    /// midpoints of boundary edges are passed through `project`.
    pub fn refine(&self, project: &dyn Fn(Point) -> Point) -> Result<TriMesh> {
        let mut nodes = self.nodes.clone();
        let boundary: std::collections::HashSet<(usize, usize)> = self
            .boundary_edges
            .iter()
            .map(|e| (e.nodes[0].min(e.nodes[1]), e.nodes[0].max(e.nodes[1])))
            .collect();
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |p: usize, q: usize, nodes: &mut Vec<Point>| -> usize {
            let key = (p.min(q), p.max(q));
            *midpoints.entry(key).or_insert_with(|| {
                let mut m = nodes[p].midpoint(nodes[q]);
                if boundary.contains(&key) {
                    m = project(m);
                }
                nodes.push(m);
                nodes.len() - 1
            })
        };
        let mut triangles = Vec::with_capacity(4 * self.triangles.len());
        for &[a, b, c] in &self.triangles {
            let ab = midpoint(a, b, &mut nodes);
            let bc = midpoint(b, c, &mut nodes);
            let ca = midpoint(c, a, &mut nodes);
            triangles.push([a, ab, ca]);
            triangles.push([ab, b, bc]);
            triangles.push([ca, bc, c]);
            triangles.push([ab, bc, ca]);
        }
        TriMesh::new(nodes, triangles)
    }

    /// Flat CSV listing: `node,i,x,y` rows then `triangle,i,a,b,c` rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("record,index,a,b,c\n");
        for (i, p) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "node,{i},{:.16e},{:.16e},", p.x, p.y);
        }
        for (i, t) in self.triangles.iter().enumerate() {
            let _ = writeln!(s, "triangle,{i},{},{},{}", t[0], t[1], t[2]);
        }
        s
    }
}

impl<'de> Deserialize<'de> for TriMesh {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            nodes: Vec<Point>,
            triangles: Vec<[usize; 3]>,
        }
        let raw = Raw::deserialize(d)?;
        TriMesh::new(raw.nodes, raw.triangles).map_err(serde::de::Error::custom)
    }
}

/// Triangles `(apex, v_i, v_{i+1})` around an interior apex.
fn fan_mesh(vertices: &[Point], apex: Point) -> Result<TriMesh> {
    let n = vertices.len();
    let mut nodes = Vec::with_capacity(n + 1);
    nodes.push(apex);
    nodes.extend_from_slice(vertices);
    let triangles = (0..n).map(|i| [0, 1 + i, 1 + (i + 1) % n]).collect();
    TriMesh::new(nodes, triangles)
}

/// Unit-disk template: concentric rings with roughly `m k / K` nodes on
/// ring `k`, consecutive rings stitched by merging their angles.
fn polar_disk_template(m: usize) -> Result<TriMesh> {
    let rings = ((m as f64 / (2.0 * PI)).round() as usize).max(1);
    let counts: Vec<usize> = (1..=rings)
        .map(|k| ((m * k) as f64 / rings as f64).round().max(3.0) as usize)
        .collect();
    let mut nodes = vec![Point::default()];
    let mut starts = Vec::with_capacity(rings);
    for (k, &n) in counts.iter().enumerate() {
        starts.push(nodes.len());
        let radius = (k + 1) as f64 / rings as f64;
        for j in 0..n {
            let t = 2.0 * PI * j as f64 / n as f64;
            nodes.push(Point::new(radius * t.cos(), radius * t.sin()));
        }
    }
    let mut triangles = Vec::new();
    for j in 0..counts[0] {
        triangles.push([0, starts[0] + j, starts[0] + (j + 1) % counts[0]]);
    }
    for k in 1..rings {
        let (na, nb) = (counts[k - 1], counts[k]);
        let (sa, sb) = (starts[k - 1], starts[k]);
        let (mut i, mut j) = (0, 0);
        while i < na || j < nb {
            // advance along whichever ring has the smaller next angle
            let next_a = (i + 1) as f64 / na as f64;
            let next_b = (j + 1) as f64 / nb as f64;
            let a = sa + i % na;
            let b = sb + j % nb;
            if j < nb && (i == na || next_b <= next_a) {
                triangles.push([a, b, sb + (j + 1) % nb]);
                j += 1;
            } else {
                triangles.push([a, b, sa + (i + 1) % na]);
                i += 1;
            }
        }
    }
    for t in triangles.iter_mut() {
        if signed_area(nodes[t[0]], nodes[t[1]], nodes[t[2]]) < 0.0 {
            t.swap(1, 2);
        }
    }
    TriMesh::new(nodes, triangles)
}

/// Structured rings × sectors grid, cells split along alternating diagonals.
fn annulus_mesh(c: Point, r: f64, big_r: f64, m: usize) -> Result<TriMesh> {
    let mean_circumference = PI * (r + big_r);
    let layers = (((big_r - r) * m as f64 / mean_circumference).ceil() as usize).max(1);
    let mut nodes = Vec::with_capacity((layers + 1) * m);
    for l in 0..=layers {
        let rho = r + (big_r - r) * l as f64 / layers as f64;
        for j in 0..m {
            let t = 2.0 * PI * j as f64 / m as f64;
            nodes.push(c + Point::new(rho * t.cos(), rho * t.sin()));
        }
    }
    let id = |l: usize, j: usize| l * m + j % m;
    let mut triangles = Vec::with_capacity(2 * layers * m);
    for l in 0..layers {
        for j in 0..m {
            let (a, b) = (id(l, j), id(l, j + 1));
            let (d, e) = (id(l + 1, j), id(l + 1, j + 1));
            if (l + j) % 2 == 0 {
                triangles.push([a, e, b]);
                triangles.push([a, d, e]);
            } else {
                triangles.push([a, d, b]);
                triangles.push([b, d, e]);
            }
        }
    }
    TriMesh::new(nodes, triangles)
}
