//! First eigenvalue of the modified Steklov problem on the disk, compared
//! with the Bessel closed form, and on a non-symmetric polygon.

use btl::bounds::random_convex_polygon;
use btl::exact::{ball_steklov_sigma1, BallSpec};
use btl::fem::steklov_sigma1;
use btl::mesh::DomainSpec;

fn main() -> btl::Result<()> {
    let disk = DomainSpec::disk(1.0, 128);
    for delta in [0.5, 1.0, 2.0] {
        let exact = ball_steklov_sigma1(&BallSpec::new(2, 1.0, delta)?)?;
        println!("disk, delta = {delta}: exact sigma1 = {exact:.12}");
        for level in 0..=3 {
            let mesh = disk.build_mesh(level)?;
            let r = steklov_sigma1(&mesh, delta)?;
            println!(
                "  level {level}: sigma1_h = {:.12}  rel err {:.2e}  ({} iterations)",
                r.sigma1,
                (r.sigma1 - exact).abs() / exact,
                r.iterations
            );
        }
    }
    let poly = random_convex_polygon(11, 7);
    let mesh = poly.build_mesh(4)?;
    let r = steklov_sigma1(&mesh, 1.0)?;
    println!("random heptagon, delta = 1: sigma1_h = {:.12}", r.sigma1);
    Ok(())
}
