//! Polynomial conformal images of the disk: Hardy norm from coefficients
//! and by quadrature, image area, and the FEM rigidity of the image.

use btl::bounds::{evaluate, BoundsOptions, ConformalMap, BOUNDARY_SAMPLES};
use btl::mesh::DomainSpec;
use btl::Point;
use num_complex::Complex64;

fn main() -> btl::Result<()> {
    for coeffs in [
        vec![(1.0, 0.0), (0.1, 0.0)],
        vec![(1.0, 0.0), (0.0, 0.0), (0.05, 0.02)],
    ] {
        let c: Vec<Complex64> = coeffs
            .iter()
            .map(|&(re, im)| Complex64::new(re, im))
            .collect();
        let f = ConformalMap::new(c, Point::default())?;
        println!(
            "coefficients {coeffs:?}: hardy {:.15} (quadrature {:.15}), area {:.12}, convex image {}",
            f.hardy_norm(),
            f.hardy_norm_quadrature(BOUNDARY_SAMPLES),
            f.image_area(),
            f.has_convex_image(1024)
        );
        let report = evaluate(
            &DomainSpec::mapped_disk(&coeffs, 64),
            1.0,
            &BoundsOptions::default(),
        )?;
        for name in ["conformal_area", "conformal_lower"] {
            if let Some(v) = report.verdict(name) {
                println!(
                    "  {name}: {:.10} {} {:.10} ({:?})",
                    v.lhs,
                    v.relation.symbol(),
                    v.rhs,
                    v.status
                );
            }
        }
    }
    Ok(())
}
