//! Closed-form rigidity of balls, shells and boxes across dimensions,
//! and the first modified Steklov eigenvalue of a ball.

use btl::exact::{ball_steklov_sigma1, slab_alpha, BallSpec, ExactDomain};

fn main() -> btl::Result<()> {
    let delta = 1.0;
    println!("delta = {delta}");
    println!(
        "{:>3} {:>22} {:>22} {:>22}",
        "N", "T(ball)", "sigma1(ball)", "T(cube)"
    );
    for n in 2..=6u32 {
        let ball = ExactDomain::Ball {
            dimension: n,
            radius: 1.0,
        };
        let cube = ExactDomain::Box {
            half_lengths: vec![1.0; n as usize],
        };
        let sigma = ball_steklov_sigma1(&BallSpec::new(n, 1.0, delta)?)?;
        println!(
            "{:>3} {:>22.15e} {:>22.15e} {:>22.15e}",
            n,
            ball.rigidity(delta)?,
            sigma,
            cube.rigidity(delta)?
        );
    }

    println!("\nthin shells approach the slab profile:");
    for eps in [0.1, 0.01, 0.001] {
        let shell = ExactDomain::Shell {
            dimension: 3,
            inner_radius: 1.0,
            outer_radius: 1.0 + eps,
        };
        let per_area = shell.rigidity(delta / eps)? / shell.surface();
        println!("  width {eps:<6} T/|boundary| = {per_area:.6e}");
    }
    println!("slab alpha(2) = {:.16}", slab_alpha(2.0)?);
    Ok(())
}
