//! P1 finite-element torsion functions against closed forms: convergence
//! of the rigidity on the unit disk and the unit square.

use btl::bounds::planar_exact_rigidity;
use btl::fem::solve_torsion;
use btl::mesh::DomainSpec;

fn main() -> btl::Result<()> {
    let delta = 1.0;
    for spec in [DomainSpec::disk(1.0, 256), DomainSpec::square()] {
        let exact = planar_exact_rigidity(&spec, delta)?.expect("closed form");
        println!("{} (exact T = {exact:.15})", spec.kind());
        println!(
            "{:>5} {:>8} {:>20} {:>12} {:>10} {:>12}",
            "level", "nodes", "T_h", "rel err", "iters", "dual gap"
        );
        let levels = if spec.kind() == "disk" { 0..=2 } else { 1..=5 };
        for level in levels {
            let mesh = spec.build_mesh(level)?;
            let sol = solve_torsion(&mesh, delta)?;
            let s = sol.summary()?;
            println!(
                "{:>5} {:>8} {:>20.15} {:>12.3e} {:>10} {:>12.3e}",
                level,
                s.nodes,
                s.rigidity,
                (s.rigidity - exact).abs() / exact,
                s.iterations,
                s.dual_gap
            );
        }
        println!();
    }
    Ok(())
}
