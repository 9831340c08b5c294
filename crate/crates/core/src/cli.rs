//! Report pipeline behind the `btl` binary: parse a domain, run one
//! command over one or more δ values and render the result as JSON or CSV.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bounds::{
    self, asymptotic_sweep, asymptotic_sweep_exact, planar_exact_domain, BoundsOptions,
    DomainReport, SweepTable,
};
use crate::convexgeom::ConvexGeometrySummary;
use crate::error::{Error, Result};
use crate::exact::{ball_steklov_sigma1, ball_torsion_function, BallSpec, ExactDomain};
use crate::fem::{self, FemParts, TorsionSummary};
use crate::mesh::{DomainSpec, TriMesh};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED_VERDICT: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Finest refinement level accepted on the command line.
pub const MAX_LEVEL: u32 = 8;
pub const DEFAULT_LEVEL: u32 = 4;
pub const DEFAULT_SWEEP_DELTAS: [f64; 4] = [0.4, 0.2, 0.1, 0.05];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Closed forms for balls, shells, boxes (and disks, rectangles, annuli).
    Exact,
    /// P1 finite-element torsion function and rigidity.
    Solve,
    /// First modified Steklov eigenvalue.
    Steklov,
    /// Geometric inequalities as verdicts.
    Bounds,
    /// Small-δ asymptotic sweep.
    Sweep,
    /// Convex geometry of a polygon or rectangle.
    Geom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// A planar domain for the finite-element pipeline or an N-dimensional
/// closed-form domain. Both share the `{"kind", "params"}` layout.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum DomainInput {
    Planar(DomainSpec),
    Exact(ExactDomain),
}

impl<'de> Deserialize<'de> for DomainInput {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(d)?;
        DomainInput::from_value(value).map_err(serde::de::Error::custom)
    }
}

impl DomainInput {
    fn from_value(value: serde_json::Value) -> Result<Self> {
        let kind = value
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| Error::InvalidSpec("missing string field \"kind\"".into()))?;
        let input = match kind {
            "ball" | "shell" | "box" => DomainInput::Exact(serde_json::from_value(value)?),
            _ => DomainInput::Planar(serde_json::from_value(value)?),
        };
        input.validate()?;
        Ok(input)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_value(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DomainInput::Planar(spec) => spec.validate(),
            DomainInput::Exact(domain) => domain.validate(),
        }
    }

    pub fn kind(&self) -> String {
        match self {
            DomainInput::Planar(spec) => spec.kind().to_string(),
            DomainInput::Exact(domain) => match domain {
                ExactDomain::Ball { .. } => "ball".into(),
                ExactDomain::Shell { .. } => "shell".into(),
                ExactDomain::Box { .. } => "box".into(),
            },
        }
    }

    fn exact(&self) -> Option<ExactDomain> {
        match self {
            DomainInput::Planar(spec) => planar_exact_domain(spec),
            DomainInput::Exact(domain) => Some(domain.clone()),
        }
    }

    fn planar(&self, command: Command) -> Result<&DomainSpec> {
        match self {
            DomainInput::Planar(spec) => Ok(spec),
            DomainInput::Exact(_) => Err(Error::Unsupported(
                format!(
                    "{:?} needs a planar domain (polygon, disk, annulus, rectangle, mapped_disk)",
                    command
                )
                .to_lowercase(),
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub domain: DomainInput,
    pub deltas: Vec<f64>,
    pub segments: Option<usize>,
    pub level: u32,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Emit nodal values instead of the summary (`solve` with CSV only).
    pub nodal: bool,
}

impl RunConfig {
    /// Defaults: δ = 1 (the sweep list for `sweep`), level 4, JSON.
    pub fn new(command: Command, domain: DomainInput) -> Self {
        let deltas = match command {
            Command::Sweep => DEFAULT_SWEEP_DELTAS.to_vec(),
            _ => vec![1.0],
        };
        Self {
            command,
            domain,
            deltas,
            segments: None,
            level: DEFAULT_LEVEL,
            format: Format::Json,
            out: None,
            nodal: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.level > MAX_LEVEL {
            return Err(Error::InvalidSpec(format!(
                "level {} exceeds the maximum {MAX_LEVEL}",
                self.level
            )));
        }
        if self.deltas.is_empty() {
            return Err(Error::InvalidSpec("no δ values given".into()));
        }
        if let Some(&d) = self.deltas.iter().find(|d| !(d.is_finite() && **d > 0.0)) {
            return Err(Error::Domain(format!(
                "δ must be positive and finite, got {d}"
            )));
        }
        if let Some(m) = self.segments {
            if m < 3 {
                return Err(Error::InvalidSpec(format!(
                    "segments must be at least 3, got {m}"
                )));
            }
        }
        if self.nodal && !(self.command == Command::Solve && self.format == Format::Csv) {
            return Err(Error::InvalidSpec(
                "nodal output requires `solve` with CSV format".into(),
            ));
        }
        self.domain.validate()
    }

    fn options(&self) -> BoundsOptions {
        BoundsOptions {
            level: self.level,
            segments: self.segments,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactRow {
    pub delta: f64,
    pub rigidity: f64,
    /// Balls only.
    pub sigma1: Option<f64>,
    /// Value of the torsion function on the sphere (balls only).
    pub boundary_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    pub dimension: u32,
    pub volume: f64,
    pub surface: f64,
    pub inradius: f64,
    pub convex: bool,
    pub rows: Vec<ExactRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveRow {
    #[serde(flatten)]
    pub summary: TorsionSummary,
    pub exact_rigidity: Option<f64>,
    pub relative_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteklovRow {
    pub delta: f64,
    pub sigma1: f64,
    pub iterations: usize,
    pub rayleigh_residual: f64,
    pub nodes: usize,
    pub exact_sigma1: Option<f64>,
    pub relative_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodalField {
    pub deltas: Vec<f64>,
    pub nodes: Vec<crate::Point>,
    /// One vector of nodal values per δ.
    pub values: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "snake_case")]
pub enum ReportBody {
    Exact(ExactReport),
    Solve(Vec<SolveRow>),
    Nodal(NodalField),
    Steklov(Vec<SteklovRow>),
    Bounds(Vec<DomainReport>),
    Sweep(SweepTable),
    Geom(ConvexGeometrySummary),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub domain: DomainInput,
    #[serde(flatten)]
    pub body: ReportBody,
}

impl Report {
    /// True when some verdict failed.
    pub fn failed(&self) -> bool {
        match &self.body {
            ReportBody::Bounds(reports) => reports.iter().any(|r| r.failures() > 0),
            _ => false,
        }
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(serde_json::to_string_pretty(self)? + "\n"),
            Format::Csv => Ok(self.to_csv()),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = String::new();
        match &self.body {
            ReportBody::Exact(r) => {
                out.push_str("delta,rigidity,sigma1,boundary_value,volume,surface\n");
                for row in &r.rows {
                    line(
                        &mut out,
                        &[
                            num(row.delta),
                            num(row.rigidity),
                            opt(row.sigma1),
                            opt(row.boundary_value),
                            num(r.volume),
                            num(r.surface),
                        ],
                    );
                }
            }
            ReportBody::Solve(rows) => {
                out.push_str(
                    "delta,rigidity,exact_rigidity,relative_error,solver_residual,iterations,\
                     nodes,l1_identity_residual,dual_gap\n",
                );
                for row in rows {
                    let s = &row.summary;
                    line(
                        &mut out,
                        &[
                            num(s.delta),
                            num(s.rigidity),
                            opt(row.exact_rigidity),
                            opt(row.relative_error),
                            num(s.solver_residual),
                            s.iterations.to_string(),
                            s.nodes.to_string(),
                            num(s.l1_identity_residual),
                            num(s.dual_gap),
                        ],
                    );
                }
            }
            ReportBody::Nodal(field) => {
                let mut header = vec!["x".to_string(), "y".to_string()];
                header.extend(field.deltas.iter().map(|d| format!("u_delta_{d}")));
                line(&mut out, &header);
                for (i, p) in field.nodes.iter().enumerate() {
                    let mut cells = vec![num(p.x), num(p.y)];
                    cells.extend(field.values.iter().map(|v| num(v[i])));
                    line(&mut out, &cells);
                }
            }
            ReportBody::Steklov(rows) => {
                out.push_str(
                    "delta,sigma1,exact_sigma1,relative_error,iterations,rayleigh_residual,nodes\n",
                );
                for row in rows {
                    line(
                        &mut out,
                        &[
                            num(row.delta),
                            num(row.sigma1),
                            opt(row.exact_sigma1),
                            opt(row.relative_error),
                            row.iterations.to_string(),
                            num(row.rayleigh_residual),
                            row.nodes.to_string(),
                        ],
                    );
                }
            }
            ReportBody::Bounds(reports) => {
                out.push_str(
                    "label,delta,name,lhs,relation,rhs,slack,tolerance,status,\
                     lhs_provenance,rhs_provenance,reference\n",
                );
                for r in reports {
                    for v in &r.verdicts {
                        line(
                            &mut out,
                            &[
                                r.label.clone(),
                                num(r.quantities.delta),
                                v.name.clone(),
                                num(v.lhs),
                                v.relation.symbol().to_string(),
                                num(v.rhs),
                                num(v.slack),
                                num(v.tolerance),
                                tag(&v.status),
                                tag(&v.lhs_provenance),
                                tag(&v.rhs_provenance),
                                v.reference.clone(),
                            ],
                        );
                    }
                }
            }
            ReportBody::Sweep(table) => {
                out.push_str("delta,rigidity,delta_sq_t,limit,gap\n");
                for row in &table.rows {
                    line(
                        &mut out,
                        &[
                            num(row.delta),
                            num(row.rigidity),
                            num(row.delta_sq_t),
                            num(row.limit),
                            num(row.gap),
                        ],
                    );
                }
            }
            ReportBody::Geom(s) => {
                out.push_str("quantity,value\n");
                let (r0, r1) = s.high_ridge.endpoints();
                let rows = [
                    ("area", s.area),
                    ("perimeter", s.perimeter),
                    ("inradius", s.inradius),
                    ("chebyshev_center_x", s.chebyshev_center.x),
                    ("chebyshev_center_y", s.chebyshev_center.y),
                    ("circumradius", s.circumradius),
                    ("circumcenter_x", s.circumcenter.x),
                    ("circumcenter_y", s.circumcenter.y),
                    ("diameter", s.diameter),
                    ("high_ridge_start_x", r0.x),
                    ("high_ridge_start_y", r0.y),
                    ("high_ridge_end_x", r1.x),
                    ("high_ridge_end_y", r1.y),
                    ("proximal_center_x", s.proximal_center.x),
                    ("proximal_center_y", s.proximal_center.y),
                    ("proximal_radius", s.proximal_radius),
                    ("moment_sharp", s.moment_sharp),
                ];
                for (name, value) in rows {
                    line(&mut out, &[name.to_string(), num(value)]);
                }
            }
        }
        out
    }
}

/// 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn tag<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn line(out: &mut String, cells: &[String]) {
    for (i, cell) in cells.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        if cell.contains([',', '"', '\n']) {
            let _ = write!(out, "\"{}\"", cell.replace('"', "\"\""));
        } else {
            out.push_str(cell);
        }
    }
    out.push('\n');
}

fn relative_error(approx: f64, exact: Option<f64>) -> Option<f64> {
    exact.map(|e| (approx - e).abs() / e.abs())
}

fn build_mesh(config: &RunConfig) -> Result<TriMesh> {
    let spec = config.domain.planar(config.command)?;
    config.options().apply(spec).build_mesh(config.level)
}

fn run_exact(config: &RunConfig) -> Result<ReportBody> {
    let domain = config.domain.exact().ok_or_else(|| {
        Error::Unsupported(format!(
            "no closed form for a {} domain",
            config.domain.kind()
        ))
    })?;
    let rows = config
        .deltas
        .iter()
        .map(|&delta| {
            let (sigma1, boundary_value) = match &domain {
                ExactDomain::Ball { dimension, radius } => {
                    let ball = BallSpec::new(*dimension, *radius, delta)?;
                    (
                        Some(ball_steklov_sigma1(&ball)?),
                        Some(ball_torsion_function(&ball, *radius)?),
                    )
                }
                _ => (None, None),
            };
            Ok(ExactRow {
                delta,
                rigidity: domain.rigidity(delta)?,
                sigma1,
                boundary_value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReportBody::Exact(ExactReport {
        dimension: domain.dimension(),
        volume: domain.volume(),
        surface: domain.surface(),
        inradius: domain.inradius(),
        convex: domain.is_convex(),
        rows,
    }))
}

fn run_solve(config: &RunConfig) -> Result<ReportBody> {
    let mesh = build_mesh(config)?;
    let parts = FemParts::new(&mesh);
    let exact = config.domain.exact();
    let mut rows = Vec::with_capacity(config.deltas.len());
    let mut values = Vec::new();
    for &delta in &config.deltas {
        let solution = fem::solve_torsion_with(&mesh, &parts, delta)?;
        if config.nodal {
            values.push(solution.nodal_values.clone());
            continue;
        }
        let exact_rigidity = exact.as_ref().map(|d| d.rigidity(delta)).transpose()?;
        rows.push(SolveRow {
            relative_error: relative_error(solution.rigidity, exact_rigidity),
            summary: solution.summary()?,
            exact_rigidity,
        });
    }
    if config.nodal {
        return Ok(ReportBody::Nodal(NodalField {
            deltas: config.deltas.clone(),
            nodes: mesh.nodes.clone(),
            values,
        }));
    }
    Ok(ReportBody::Solve(rows))
}

fn run_steklov(config: &RunConfig) -> Result<ReportBody> {
    let mesh = build_mesh(config)?;
    let radius = match config.domain.exact() {
        Some(ExactDomain::Ball { radius, .. }) => Some(radius),
        _ => None,
    };
    let rows = config
        .deltas
        .iter()
        .map(|&delta| {
            let result = fem::steklov_sigma1(&mesh, delta)?;
            let exact_sigma1 = radius
                .map(|r| BallSpec::new(2, r, delta).and_then(|b| ball_steklov_sigma1(&b)))
                .transpose()?;
            Ok(SteklovRow {
                delta,
                sigma1: result.sigma1,
                iterations: result.iterations,
                rayleigh_residual: result.rayleigh_residual,
                nodes: mesh.node_count(),
                relative_error: relative_error(result.sigma1, exact_sigma1),
                exact_sigma1,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReportBody::Steklov(rows))
}

fn run_bounds(config: &RunConfig) -> Result<ReportBody> {
    let opts = config.options();
    let reports = config
        .deltas
        .iter()
        .map(|&delta| match &config.domain {
            DomainInput::Planar(spec) => bounds::evaluate(spec, delta, &opts),
            DomainInput::Exact(domain) => bounds::evaluate_exact(domain, delta),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReportBody::Bounds(reports))
}

fn run_sweep(config: &RunConfig) -> Result<ReportBody> {
    let table = match &config.domain {
        DomainInput::Planar(spec) => asymptotic_sweep(spec, &config.deltas, &config.options())?,
        DomainInput::Exact(domain) => asymptotic_sweep_exact(domain, &config.deltas)?,
    };
    Ok(ReportBody::Sweep(table))
}

fn run_geom(config: &RunConfig) -> Result<ReportBody> {
    match &config.domain {
        DomainInput::Planar(spec @ (DomainSpec::Polygon { .. } | DomainSpec::Rectangle { .. })) => {
            Ok(ReportBody::Geom(spec.convex_polygon()?.summary()?))
        }
        other => Err(Error::Unsupported(format!(
            "geom accepts polygon and rectangle domains, not {}",
            other.kind()
        ))),
    }
}

/// Runs the command and returns the structured report.
pub fn execute(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let body = match config.command {
        Command::Exact => run_exact(config)?,
        Command::Solve => run_solve(config)?,
        Command::Steklov => run_steklov(config)?,
        Command::Bounds => run_bounds(config)?,
        Command::Sweep => run_sweep(config)?,
        Command::Geom => run_geom(config)?,
    };
    Ok(Report {
        domain: config.domain.clone(),
        body,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub exit_code: i32,
    /// Rendered report when no output file was requested.
    pub stdout: String,
    pub stderr: String,
}

impl RunOutcome {
    fn error(e: &Error) -> Self {
        Self {
            exit_code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Executes, renders and writes the report; never panics on bad input.
pub fn run(config: &RunConfig) -> RunOutcome {
    let report = match execute(config) {
        Ok(r) => r,
        Err(e) => return RunOutcome::error(&e),
    };
    let text = match report.render(config.format) {
        Ok(t) => t,
        Err(e) => return RunOutcome::error(&e),
    };
    let mut stdout = String::new();
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                return RunOutcome::error(&Error::Io(e));
            }
        }
        None => stdout = text,
    }
    let (exit_code, stderr) = if report.failed() {
        (
            EXIT_FAILED_VERDICT,
            "one or more verdicts failed\n".to_string(),
        )
    } else {
        (EXIT_OK, String::new())
    };
    RunOutcome {
        exit_code,
        stdout,
        stderr,
    }
}
