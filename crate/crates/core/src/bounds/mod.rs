//! Geometric inequalities for `T(Ω;δ)` and `σ₁(Ω;δ)`, evaluated as
//! verdicts with signed slack and per-side provenance.

mod conformal;
mod corpus;
mod sweep;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::convexgeom::ConvexPolygon;
use crate::error::{Error, Result};
use crate::exact::{
    ball_rigidity, ball_steklov_sigma1, slab_profile, unit_sphere_area, BallSpec, ExactDomain,
};
use crate::fem::{self, FemParts};
use crate::mesh::{DomainSpec, TriMesh};
use crate::specfun::{bessel_i, unit_ball_volume, BesselOrder};

pub use conformal::{ConformalMap, BOUNDARY_SAMPLES};
pub use corpus::{random_convex_polygon, standard_corpus};
pub use sweep::{asymptotic_sweep, asymptotic_sweep_exact, max_threads, SweepRow, SweepTable};

/// Tolerance for verdicts whose sides are closed forms or geometry.
pub const EXACT_TOLERANCE: f64 = 1e-8;
/// Tolerance for verdicts with a finite-element side.
pub const FEM_TOLERANCE: f64 = 0.02;
/// Boundary samples used to polygonise a convex conformal image.
const CONVEX_IMAGE_SAMPLES: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Exact,
    Fem,
    Geometry,
}

/// `lhs <relation> rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    fn is_strict(self) -> bool {
        matches!(self, Relation::Lt | Relation::Gt)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Pass,
    Fail,
    /// A strict inequality whose slack is within tolerance of zero.
    Inconclusive,
}

/// One inequality instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundVerdict {
    pub name: String,
    /// Human-readable label of the inequality.
    pub reference: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    /// Signed and normalised by `max(|lhs|, |rhs|)`; positive when the
    /// relation holds.
    pub slack: f64,
    pub tolerance: f64,
    pub status: VerdictStatus,
    pub pass: bool,
    pub lhs_provenance: Provenance,
    pub rhs_provenance: Provenance,
}

impl BoundVerdict {
    pub fn new(
        name: &str,
        reference: &str,
        (lhs, lhs_provenance): (f64, Provenance),
        relation: Relation,
        (rhs, rhs_provenance): (f64, Provenance),
    ) -> Self {
        let uses_fem = lhs_provenance == Provenance::Fem || rhs_provenance == Provenance::Fem;
        let tolerance = if uses_fem {
            FEM_TOLERANCE
        } else {
            EXACT_TOLERANCE
        };
        let scale = lhs.abs().max(rhs.abs());
        let diff = match relation {
            Relation::Le | Relation::Lt => rhs - lhs,
            Relation::Ge | Relation::Gt => lhs - rhs,
        };
        let slack = if scale > 0.0 { diff / scale } else { 0.0 };
        let status = if !slack.is_finite() || slack < -tolerance {
            VerdictStatus::Fail
        } else if relation.is_strict() && slack <= tolerance {
            VerdictStatus::Inconclusive
        } else {
            VerdictStatus::Pass
        };
        Self {
            name: name.to_string(),
            reference: reference.to_string(),
            lhs,
            rhs,
            relation,
            slack,
            tolerance,
            status,
            pass: status != VerdictStatus::Fail,
            lhs_provenance,
            rhs_provenance,
        }
    }
}

/// Mesh parameters for the finite-element sides.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsOptions {
    pub level: u32,
    /// Overrides the segment count of curved domains.
    pub segments: Option<usize>,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        Self {
            level: 4,
            segments: None,
        }
    }
}

impl BoundsOptions {
    pub fn apply(&self, spec: &DomainSpec) -> DomainSpec {
        match self.segments {
            Some(m) => spec.clone().with_segments(m),
            None => spec.clone(),
        }
    }
}

/// Convex-geometric data consumed by the convex-only verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexData {
    pub area: f64,
    pub perimeter: f64,
    pub inradius: f64,
    pub circumradius: f64,
    pub diameter: f64,
    pub proximal_radius: f64,
    pub moment_sharp: f64,
    /// Perimeter of the inner parallel set at half the inradius.
    pub inner_parallel_perimeter: Option<f64>,
}

impl ConvexData {
    pub fn from_polygon(poly: &ConvexPolygon) -> Result<Self> {
        let s = poly.summary()?;
        let inner = poly.inner_parallel(0.5 * s.inradius);
        Ok(Self {
            area: s.area,
            perimeter: s.perimeter,
            inradius: s.inradius,
            circumradius: s.circumradius,
            diameter: s.diameter,
            proximal_radius: s.proximal_radius,
            moment_sharp: s.moment_sharp,
            inner_parallel_perimeter: Some(crate::geometry::closed_polyline_length(&inner)),
        })
    }

    fn disk(radius: f64) -> Self {
        Self {
            area: PI * radius * radius,
            perimeter: 2.0 * PI * radius,
            inradius: radius,
            circumradius: radius,
            diameter: 2.0 * radius,
            proximal_radius: radius,
            moment_sharp: 0.5 * PI * radius.powi(4),
            inner_parallel_perimeter: Some(PI * radius),
        }
    }
}

/// Everything the verdicts consume for one planar domain and δ.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainQuantities {
    pub kind: String,
    pub delta: f64,
    pub area: f64,
    pub perimeter: f64,
    pub rigidity: f64,
    pub rigidity_provenance: Provenance,
    /// `T(Ω;1)`, computed the same way as `rigidity`.
    pub rigidity_at_one: f64,
    pub sigma1: Option<f64>,
    pub sigma1_provenance: Provenance,
    /// Rigidity paired with `sigma1` (same mesh when from FEM).
    pub paired_rigidity: f64,
    pub paired_area: f64,
    pub paired_perimeter: f64,
    pub convex: Option<ConvexData>,
    /// `(hardy norm, image area)` for disks and mapped disks.
    pub conformal: Option<(f64, f64)>,
    pub mesh_nodes: Option<usize>,
}

/// Verdict table for one domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainReport {
    pub label: String,
    pub quantities: DomainQuantities,
    pub verdicts: Vec<BoundVerdict>,
}

impl DomainReport {
    pub fn failures(&self) -> usize {
        self.verdicts
            .iter()
            .filter(|v| v.status == VerdictStatus::Fail)
            .count()
    }

    pub fn verdict(&self, name: &str) -> Option<&BoundVerdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }
}

fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::Domain(format!(
            "delta must be positive and finite, got {delta}"
        )));
    }
    Ok(())
}

/// `T(B_ρ;δ)` in the plane.
pub fn disk_rigidity(radius: f64, delta: f64) -> Result<f64> {
    ball_rigidity(&BallSpec::new(2, radius, delta)?)
}

/// `ρ ↦ T(B_ρ;δ) / ρ²`; nonincreasing in ρ, which licenses replacing the
/// distortion radius by any larger candidate.
pub fn disk_rigidity_over_radius_sq(radius: f64, delta: f64) -> Result<f64> {
    Ok(disk_rigidity(radius, delta)? / (radius * radius))
}

/// Closed-form rigidity of a planar domain, when one exists.
pub fn planar_exact_rigidity(spec: &DomainSpec, delta: f64) -> Result<Option<f64>> {
    planar_exact_domain(spec)
        .map(|d| d.rigidity(delta))
        .transpose()
}

/// The closed-form family a planar spec belongs to, if any.
pub fn planar_exact_domain(spec: &DomainSpec) -> Option<ExactDomain> {
    match spec {
        DomainSpec::Disk { radius, .. } => Some(ExactDomain::Ball {
            dimension: 2,
            radius: *radius,
        }),
        DomainSpec::Rectangle { half_lengths, .. } => Some(ExactDomain::Box {
            half_lengths: half_lengths.to_vec(),
        }),
        DomainSpec::Annulus {
            inner_radius,
            outer_radius,
            ..
        } => Some(ExactDomain::Shell {
            dimension: 2,
            inner_radius: *inner_radius,
            outer_radius: *outer_radius,
        }),
        _ => None,
    }
}

/// Computes the quantities for `spec` at `delta`.
pub fn domain_quantities(
    spec: &DomainSpec,
    delta: f64,
    opts: &BoundsOptions,
) -> Result<DomainQuantities> {
    check_delta(delta)?;
    let spec = opts.apply(spec);
    spec.validate()?;
    let kind = spec.kind().to_string();

    if let DomainSpec::Disk { radius, .. } = spec {
        let ball = BallSpec::new(2, radius, delta)?;
        let t = ball_rigidity(&ball)?;
        let convex = ConvexData::disk(radius);
        return Ok(DomainQuantities {
            kind,
            delta,
            area: convex.area,
            perimeter: convex.perimeter,
            rigidity: t,
            rigidity_provenance: Provenance::Exact,
            rigidity_at_one: disk_rigidity(radius, 1.0)?,
            sigma1: Some(ball_steklov_sigma1(&ball)?),
            sigma1_provenance: Provenance::Exact,
            paired_rigidity: t,
            paired_area: convex.area,
            paired_perimeter: convex.perimeter,
            convex: Some(convex),
            conformal: Some((radius, convex.area)),
            mesh_nodes: None,
        });
    }

    let mesh = spec.build_mesh(opts.level)?;
    mesh.check_quality()?;
    let parts = FemParts::new(&mesh);
    let fem_t = fem::solve_torsion_with(&mesh, &parts, delta)?.rigidity;
    let steklov = fem::steklov_sigma1(&mesh, delta)?;

    let (area, perimeter, convex, conformal) = match &spec {
        DomainSpec::Polygon { .. } | DomainSpec::Rectangle { .. } => {
            let poly = spec.convex_polygon()?;
            (
                poly.area(),
                poly.perimeter(),
                Some(ConvexData::from_polygon(&poly)?),
                None,
            )
        }
        DomainSpec::Annulus {
            inner_radius,
            outer_radius,
            ..
        } => (
            PI * (outer_radius.powi(2) - inner_radius.powi(2)),
            2.0 * PI * (outer_radius + inner_radius),
            None,
            None,
        ),
        DomainSpec::MappedDisk { .. } => {
            let map = spec.conformal_map()?;
            let convex = if map.has_convex_image(CONVEX_IMAGE_SAMPLES) {
                let poly = ConvexPolygon::new(map.boundary_curve(CONVEX_IMAGE_SAMPLES))?;
                Some(ConvexData::from_polygon(&poly)?)
            } else {
                None
            };
            let area = map.image_area();
            (
                area,
                map.image_perimeter(),
                convex,
                Some((map.hardy_norm(), area)),
            )
        }
        DomainSpec::Disk { .. } => unreachable!(),
    };

    let exact = planar_exact_domain(&spec);
    let (rigidity, rigidity_provenance, rigidity_at_one) = match &exact {
        Some(d) => (d.rigidity(delta)?, Provenance::Exact, d.rigidity(1.0)?),
        None => {
            let at_one = if delta == 1.0 {
                fem_t
            } else {
                fem::solve_torsion_with(&mesh, &parts, 1.0)?.rigidity
            };
            (fem_t, Provenance::Fem, at_one)
        }
    };

    Ok(DomainQuantities {
        kind,
        delta,
        area,
        perimeter,
        rigidity,
        rigidity_provenance,
        rigidity_at_one,
        sigma1: Some(steklov.sigma1),
        sigma1_provenance: Provenance::Fem,
        paired_rigidity: fem_t,
        paired_area: mesh.area(),
        paired_perimeter: mesh.perimeter(),
        convex,
        conformal,
        mesh_nodes: Some(mesh.node_count()),
    })
}

/// Every applicable planar verdict for `spec` at `delta`.
pub fn evaluate(spec: &DomainSpec, delta: f64, opts: &BoundsOptions) -> Result<DomainReport> {
    let q = domain_quantities(spec, delta, opts)?;
    let verdicts = verdicts_from(&q)?;
    Ok(DomainReport {
        label: q.kind.clone(),
        quantities: q,
        verdicts,
    })
}

/// `C = (r/L)^{N-2} (I_{N/2}(δL) / I_{N/2}(δr))²`.
fn proximal_factor(dimension: u32, r: f64, l: f64, delta: f64) -> Result<f64> {
    let order = BesselOrder::half(dimension as i32)?;
    let ratio = bessel_i(order, delta * l)? / bessel_i(order, delta * r)?;
    Ok((r / l).powi(dimension as i32 - 2) * ratio * ratio)
}

fn verdicts_from(q: &DomainQuantities) -> Result<Vec<BoundVerdict>> {
    use Provenance::*;
    use Relation::*;
    let d = q.delta;
    let t = (q.rigidity, q.rigidity_provenance);
    let mut out = Vec::new();

    out.push(BoundVerdict::new(
        "base_lower",
        "basic estimate, constant test function",
        (q.perimeter.powi(2) / (d * d * q.area), Geometry),
        Le,
        t,
    ));
    out.push(BoundVerdict::new(
        "base_upper",
        "basic estimate, trace constant at unit delta",
        t,
        Le,
        (
            q.rigidity_at_one / d.powi(2).min(1.0),
            q.rigidity_provenance,
        ),
    ));

    let (area_s, perim_s, geo_s) = if q.sigma1_provenance == Fem {
        (q.paired_area, q.paired_perimeter, Fem)
    } else {
        (q.area, q.perimeter, Geometry)
    };
    if let Some(sigma1) = q.sigma1 {
        out.push(BoundVerdict::new(
            "steklov_upper",
            "Steklov eigenvalue, constant test function",
            (sigma1, q.sigma1_provenance),
            Le,
            (d * d * area_s / perim_s, geo_s),
        ));
        out.push(BoundVerdict::new(
            "steklov_product",
            "Steklov eigenvalue times rigidity over perimeter",
            (sigma1 * q.paired_rigidity / perim_s, q.sigma1_provenance),
            Le,
            (1.0, Exact),
        ));
    }

    if let Some(c) = &q.convex {
        out.extend(convex_verdicts(2, c, q.area, q.perimeter, d, t)?);
    }

    if let Some((rho, area)) = q.conformal {
        out.push(BoundVerdict::new(
            "conformal_area",
            "area of a conformal image of the disk",
            (area, Exact),
            Le,
            (PI * rho * rho, Exact),
        ));
        let lhs = (q.perimeter / (2.0 * PI)).powi(2) * disk_rigidity_over_radius_sq(rho, d)?;
        out.push(BoundVerdict::new(
            "conformal_lower",
            "conformal transplantation lower bound",
            (lhs, Exact),
            Le,
            t,
        ));
    }
    Ok(out)
}

fn convex_verdicts(
    n: u32,
    c: &ConvexData,
    area: f64,
    perimeter: f64,
    d: f64,
    t: (f64, Provenance),
) -> Result<Vec<BoundVerdict>> {
    use Provenance::*;
    use Relation::*;
    let nf = n as f64;
    let (r, l) = (c.inradius, c.proximal_radius);
    let ball_l = ball_rigidity(&BallSpec::new(n, l, d)?)?;
    let mut out = vec![
        BoundVerdict::new(
            "convex_lower",
            "interior parallels lower bound",
            t,
            Gt,
            (perimeter / (d * (d * r).tanh()), Geometry),
        ),
        BoundVerdict::new(
            "moment_upper",
            "polar moment upper bound",
            t,
            Le,
            (
                (c.moment_sharp + nf * nf * area / (d * d)) / (r * r),
                Geometry,
            ),
        ),
        BoundVerdict::new(
            "proximal_upper",
            "proximal radius upper bound",
            t,
            Le,
            (proximal_factor(n, r, l, d)? * ball_l, Exact),
        ),
        BoundVerdict::new(
            "four_quantity",
            "perimeter, area, inradius and proximal radius",
            (c.perimeter.powi(2) / c.area, Geometry),
            Le,
            (
                nf * nf * unit_ball_volume(n) * (l / r).powi(2) * l.powi(n as i32 - 2),
                Geometry,
            ),
        ),
        BoundVerdict::new(
            "circumradius_le_proximal",
            "radius chain, circumradius side",
            (c.circumradius, Geometry),
            Le,
            (l, Geometry),
        ),
        BoundVerdict::new(
            "proximal_lt_diameter",
            "radius chain, diameter side",
            (l, Geometry),
            Lt,
            (c.diameter, Geometry),
        ),
    ];
    if let Some(inner) = c.inner_parallel_perimeter {
        out.push(BoundVerdict::new(
            "inner_parallel_perimeter",
            "inner parallel perimeter of a convex set",
            (inner, Geometry),
            Le,
            (c.perimeter, Geometry),
        ));
    }
    Ok(out)
}

/// Closed-form verdicts for a ball, shell or box in any dimension.
pub fn evaluate_exact(domain: &ExactDomain, delta: f64) -> Result<DomainReport> {
    use Provenance::*;
    use Relation::*;
    check_delta(delta)?;
    domain.validate()?;
    let n = domain.dimension();
    let nf = n as f64;
    let (area, perimeter) = (domain.volume(), domain.surface());
    let t = domain.rigidity(delta)?;
    let mut verdicts = vec![
        BoundVerdict::new(
            "base_lower",
            "basic estimate, constant test function",
            (perimeter.powi(2) / (delta * delta * area), Geometry),
            Le,
            (t, Exact),
        ),
        BoundVerdict::new(
            "base_upper",
            "basic estimate, trace constant at unit delta",
            (t, Exact),
            Le,
            (domain.rigidity(1.0)? / delta.powi(2).min(1.0), Exact),
        ),
    ];
    let mut sigma1 = None;
    let convex = match domain {
        ExactDomain::Ball { radius, .. } => {
            let ball = BallSpec::new(n, *radius, delta)?;
            let s = ball_steklov_sigma1(&ball)?;
            sigma1 = Some(s);
            verdicts.push(BoundVerdict::new(
                "steklov_upper",
                "Steklov eigenvalue, constant test function",
                (s, Exact),
                Le,
                (delta * delta * area / perimeter, Geometry),
            ));
            verdicts.push(BoundVerdict::new(
                "steklov_product",
                "Steklov eigenvalue times rigidity over perimeter",
                (s * t / perimeter, Exact),
                Le,
                (1.0, Exact),
            ));
            Some(ConvexData {
                area,
                perimeter,
                inradius: *radius,
                circumradius: *radius,
                diameter: 2.0 * radius,
                proximal_radius: *radius,
                moment_sharp: unit_sphere_area(n) * radius.powi(n as i32 + 2) / (nf + 2.0),
                inner_parallel_perimeter: None,
            })
        }
        ExactDomain::Box { half_lengths } => {
            let corner = half_lengths.iter().map(|l| l * l).sum::<f64>().sqrt();
            Some(ConvexData {
                area,
                perimeter,
                inradius: domain.inradius(),
                circumradius: corner,
                diameter: 2.0 * corner,
                proximal_radius: corner,
                moment_sharp: area * half_lengths.iter().map(|l| l * l).sum::<f64>() / 3.0,
                inner_parallel_perimeter: None,
            })
        }
        ExactDomain::Shell { .. } => None,
    };
    if let Some(c) = &convex {
        verdicts.extend(convex_verdicts(n, c, area, perimeter, delta, (t, Exact))?);
    }
    let quantities = DomainQuantities {
        kind: match domain {
            ExactDomain::Ball { .. } => "ball",
            ExactDomain::Shell { .. } => "shell",
            ExactDomain::Box { .. } => "box",
        }
        .to_string(),
        delta,
        area,
        perimeter,
        rigidity: t,
        rigidity_provenance: Exact,
        rigidity_at_one: domain.rigidity(1.0)?,
        sigma1,
        sigma1_provenance: Exact,
        paired_rigidity: t,
        paired_area: area,
        paired_perimeter: perimeter,
        convex,
        conformal: None,
        mesh_nodes: None,
    };
    Ok(DomainReport {
        label: quantities.kind.clone(),
        quantities,
        verdicts,
    })
}

/// Nodal trial `φ(x) = u_I(d(x)/r)` with the slab profile at parameter
/// `δr`, the test function behind the interior parallels bound.
pub fn slab_trial(mesh: &TriMesh, poly: &ConvexPolygon, delta: f64) -> Result<Vec<f64>> {
    let r = poly.inradius()?;
    mesh.nodes
        .iter()
        .map(|&p| {
            let t = (poly.distance_to_boundary(p) / r).clamp(0.0, 1.0);
            slab_profile(delta * r, t)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_disk(delta: f64) -> DomainReport {
        evaluate(&DomainSpec::disk(1.0, 64), delta, &BoundsOptions::default()).unwrap()
    }

    #[test]
    fn verdict_slack_and_status() {
        use Provenance::*;
        let v = BoundVerdict::new("x", "", (1.0, Exact), Relation::Le, (2.0, Exact));
        assert_eq!(v.status, VerdictStatus::Pass);
        assert!((v.slack - 0.5).abs() < 1e-15);
        let v = BoundVerdict::new("x", "", (2.0, Exact), Relation::Le, (1.0, Exact));
        assert_eq!(v.status, VerdictStatus::Fail);
        let v = BoundVerdict::new("x", "", (1.0, Exact), Relation::Lt, (1.0, Exact));
        assert_eq!(v.status, VerdictStatus::Inconclusive);
        assert!(v.pass);
        let v = BoundVerdict::new("x", "", (1.01, Fem), Relation::Le, (1.0, Exact));
        assert_eq!(v.tolerance, FEM_TOLERANCE);
        assert!(v.pass);
    }

    #[test]
    fn disk_equality_cases() {
        let r = q_disk(1.0);
        assert_eq!(r.failures(), 0);
        for name in [
            "proximal_upper",
            "four_quantity",
            "conformal_lower",
            "conformal_area",
            "steklov_product",
        ] {
            let v = r.verdict(name).unwrap();
            assert!(v.slack.abs() <= 1e-8, "{name}: {}", v.slack);
        }
        let m = r.verdict("moment_upper").unwrap();
        assert!((m.lhs - 14.0756).abs() < 1e-4 && (m.rhs - 4.5 * PI).abs() < 1e-12);
        assert!((m.slack - 0.0044).abs() < 5e-5, "{}", m.slack);
    }

    #[test]
    fn square_examples() {
        let opts = BoundsOptions {
            level: 3,
            segments: None,
        };
        let r = evaluate(&DomainSpec::square(), 1.0, &opts).unwrap();
        assert_eq!(r.failures(), 0, "{:#?}", r.verdicts);
        let low = r.verdict("base_lower").unwrap();
        assert!((low.lhs - 16.0).abs() < 1e-12);
        let up = r.verdict("base_upper").unwrap();
        assert!(up.slack.abs() < 1e-15);
        let cl = r.verdict("convex_lower").unwrap();
        assert!((cl.rhs - 8.0 / 1f64.tanh()).abs() < 1e-12);
        let mu = r.verdict("moment_upper").unwrap();
        assert!((mu.rhs - (8.0 / 3.0 + 16.0)).abs() < 1e-12);
        let pu = r.verdict("proximal_upper").unwrap();
        assert!((pu.rhs - 39.18).abs() < 0.05, "{}", pu.rhs);
        let fq = r.verdict("four_quantity").unwrap();
        assert!((fq.rhs - 8.0 * PI).abs() < 1e-12);

        let r2 = evaluate(&DomainSpec::square(), 2.0, &opts).unwrap();
        let low = r2.verdict("base_lower").unwrap();
        assert!((low.lhs - 4.0).abs() < 1e-12);
        assert!((low.rhs - (8.0 / (2.0 * 2f64.tanh()) + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn exact_families_pass() {
        for dom in [
            ExactDomain::Ball {
                dimension: 3,
                radius: 1.0,
            },
            ExactDomain::Box {
                half_lengths: vec![1.0, 2.0, 0.5],
            },
            ExactDomain::Shell {
                dimension: 4,
                inner_radius: 1.0,
                outer_radius: 3.0,
            },
        ] {
            for d in [0.3, 1.0, 2.5] {
                let r = evaluate_exact(&dom, d).unwrap();
                assert_eq!(r.failures(), 0, "{dom:?} δ = {d}: {:#?}", r.verdicts);
            }
        }
        let ball = evaluate_exact(
            &ExactDomain::Ball {
                dimension: 3,
                radius: 2.0,
            },
            0.7,
        )
        .unwrap();
        assert!(ball.verdict("proximal_upper").unwrap().slack.abs() < 1e-10);
        assert!(ball.verdict("steklov_product").unwrap().slack.abs() < 1e-10);
    }

    #[test]
    fn disk_ratio_is_decreasing_in_radius() {
        for d in [0.5, 1.0, 2.0] {
            let vals: Vec<f64> = (0..=99)
                .map(|k| 0.1 + 9.9 * k as f64 / 99.0)
                .map(|rho| disk_rigidity_over_radius_sq(rho, d).unwrap())
                .collect();
            assert!(vals.windows(2).all(|w| w[1] < w[0]));
        }
    }

    #[test]
    fn slab_trial_sits_between_bound_and_rigidity() {
        let spec = DomainSpec::square();
        let mesh = spec.build_mesh(4).unwrap();
        let poly = spec.convex_polygon().unwrap();
        let trial = slab_trial(&mesh, &poly, 1.0).unwrap();
        let value = fem::rayleigh_t(&mesh, 1.0, &trial).unwrap();
        let t = fem::solve_torsion(&mesh, 1.0).unwrap().rigidity;
        let bound = 8.0 / 1f64.tanh();
        assert!(bound < value && value < t, "{bound} < {value} < {t}");
    }
}
