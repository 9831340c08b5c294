//! `δ² T(Ω;δ)` against `|∂Ω|²/|Ω|` as δ decreases, with observed orders.

use btl::bounds::{asymptotic_sweep, asymptotic_sweep_exact, random_convex_polygon, BoundsOptions};
use btl::exact::ExactDomain;
use btl::mesh::DomainSpec;

fn main() -> btl::Result<()> {
    let deltas = [0.4, 0.2, 0.1, 0.05, 0.025];
    let opts = BoundsOptions {
        level: 4,
        segments: None,
    };
    let tables = [
        asymptotic_sweep(&DomainSpec::square(), &deltas, &opts)?,
        asymptotic_sweep(&DomainSpec::annulus(1.0, 2.0, 64), &deltas, &opts)?,
        asymptotic_sweep(&random_convex_polygon(23, 8), &deltas, &opts)?,
        asymptotic_sweep_exact(
            &ExactDomain::Ball {
                dimension: 3,
                radius: 1.0,
            },
            &deltas,
        )?,
    ];
    for t in &tables {
        println!(
            "{} (limit {:.10}, fitted order {:?})",
            t.domain, t.limit, t.fitted_order
        );
        for row in &t.rows {
            println!(
                "  delta {:<6} delta^2 T = {:.12}  gap {:.4e}",
                row.delta, row.delta_sq_t, row.gap
            );
        }
    }
    Ok(())
}
