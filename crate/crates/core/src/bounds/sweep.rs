//! Small-δ sweeps of `δ² T(Ω;δ)` against its limit `|∂Ω|² / |Ω|`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{planar_exact_domain, BoundsOptions, Provenance};
use crate::error::{Error, Result};
use crate::exact::ExactDomain;
use crate::fem::{self, FemParts};
use crate::mesh::DomainSpec;

/// Thread cap from `BTL_MAX_THREADS`, if set to a positive integer.
pub fn max_threads() -> Option<usize> {
    std::env::var("BTL_MAX_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
}

pub(crate) fn run_in_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = max_threads() {
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub delta: f64,
    pub rigidity: f64,
    pub delta_sq_t: f64,
    pub limit: f64,
    /// `(δ²T - limit) / limit`.
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub domain: String,
    pub source: Provenance,
    pub limit: f64,
    pub rows: Vec<SweepRow>,
    /// `log(gap_i / gap_{i+1}) / log(δ_i / δ_{i+1})` for consecutive rows,
    /// absent when a gap is not positive.
    pub orders: Vec<Option<f64>>,
    /// Least-squares slope of `log gap` against `log δ`.
    pub fitted_order: Option<f64>,
}

impl SweepTable {
    fn build(domain: String, source: Provenance, limit: f64, values: Vec<(f64, f64)>) -> Self {
        let rows: Vec<SweepRow> = values
            .into_iter()
            .map(|(delta, t)| {
                let delta_sq_t = delta * delta * t;
                SweepRow {
                    delta,
                    rigidity: t,
                    delta_sq_t,
                    limit,
                    gap: (delta_sq_t - limit) / limit,
                }
            })
            .collect();
        let orders = rows
            .windows(2)
            .map(|w| {
                let order = (w[0].gap / w[1].gap).ln() / (w[0].delta / w[1].delta).ln();
                order.is_finite().then_some(order)
            })
            .collect();
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.gap > 0.0)
            .map(|r| (r.delta.ln(), r.gap.ln()))
            .collect();
        let fitted_order = if pts.len() >= 2 {
            let n = pts.len() as f64;
            let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
            let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
            let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
            let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
            Some(sxy / sxx).filter(|v| v.is_finite())
        } else {
            None
        };
        Self {
            domain,
            source,
            limit,
            rows,
            orders,
            fitted_order,
        }
    }
}

fn check_deltas(deltas: &[f64]) -> Result<()> {
    if deltas.is_empty() {
        return Err(Error::Domain("empty delta list".into()));
    }
    if let Some(d) = deltas.iter().find(|d| !(**d > 0.0) || !d.is_finite()) {
        return Err(Error::Domain(format!(
            "delta must be positive and finite, got {d}"
        )));
    }
    Ok(())
}

/// Sweep of a closed-form domain.
pub fn asymptotic_sweep_exact(domain: &ExactDomain, deltas: &[f64]) -> Result<SweepTable> {
    check_deltas(deltas)?;
    domain.validate()?;
    let limit = domain.surface().powi(2) / domain.volume();
    let values = deltas
        .iter()
        .map(|&d| Ok((d, domain.rigidity(d)?)))
        .collect::<Result<Vec<_>>>()?;
    let name = serde_json::to_value(domain)?["kind"]
        .as_str()
        .unwrap_or("exact")
        .to_string();
    Ok(SweepTable::build(name, Provenance::Exact, limit, values))
}

/// Sweep of a planar domain: closed forms for disks, rectangles and
/// annuli, otherwise finite elements on one mesh with the mesh limit.
/// The δ values are solved in parallel.
pub fn asymptotic_sweep(
    spec: &DomainSpec,
    deltas: &[f64],
    opts: &BoundsOptions,
) -> Result<SweepTable> {
    check_deltas(deltas)?;
    let spec = opts.apply(spec);
    spec.validate()?;
    if let Some(exact) = planar_exact_domain(&spec) {
        let mut table = asymptotic_sweep_exact(&exact, deltas)?;
        table.domain = spec.kind().to_string();
        return Ok(table);
    }
    let mesh = spec.build_mesh(opts.level)?;
    mesh.check_quality()?;
    let parts = FemParts::new(&mesh);
    let limit = mesh.perimeter().powi(2) / mesh.area();
    let values = run_in_pool(|| {
        deltas
            .par_iter()
            .map(|&d| Ok((d, fem::solve_torsion_with(&mesh, &parts, d)?.rigidity)))
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(SweepTable::build(
        spec.kind().to_string(),
        Provenance::Fem,
        limit,
        values,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const DELTAS: [f64; 4] = [0.4, 0.2, 0.1, 0.05];

    #[test]
    fn disk_expansion() {
        let t = asymptotic_sweep(
            &DomainSpec::disk(1.0, 64),
            &[0.1],
            &BoundsOptions::default(),
        )
        .unwrap();
        let row = t.rows[0];
        assert!((row.limit - 4.0 * PI).abs() < 1e-12);
        assert!(
            (row.delta_sq_t - 4.0 * PI * (1.0 + 0.01 / 8.0)).abs() < 1e-5,
            "{}",
            row.delta_sq_t
        );
    }

    #[test]
    fn square_gap_ratios() {
        let t =
            asymptotic_sweep(&DomainSpec::square(), &DELTAS, &BoundsOptions::default()).unwrap();
        assert!((t.limit - 16.0).abs() < 1e-12);
        for w in t.rows.windows(2) {
            let ratio = w[0].gap / w[1].gap;
            assert!((3.5..=4.5).contains(&ratio), "{ratio}");
        }
        assert!((t.fitted_order.unwrap() - 2.0).abs() < 0.1);
    }

    #[test]
    fn fem_sweep_on_a_polygon() {
        let spec = super::super::random_convex_polygon(5, 6);
        let opts = BoundsOptions {
            level: 3,
            segments: None,
        };
        let t = asymptotic_sweep(&spec, &DELTAS, &opts).unwrap();
        assert_eq!(t.source, Provenance::Fem);
        assert!(t.rows.iter().all(|r| r.gap > 0.0));
        for w in t.rows.windows(2) {
            let ratio = w[0].gap / w[1].gap;
            assert!((3.5..=4.5).contains(&ratio), "{ratio}");
        }
    }
}
