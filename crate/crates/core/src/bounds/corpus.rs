//! The standard test corpus of planar domains.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::Point;
use crate::mesh::DomainSpec;

/// Convex polygon with `n` vertices on a random ellipse, at random angles
/// with consecutive gaps of at least a quarter of the mean gap.
pub fn random_convex_polygon(seed: u64, n: usize) -> DomainSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = rng.gen_range(0.8..1.6);
    let b = rng.gen_range(0.6..1.2);
    let tilt = rng.gen_range(0.0..PI);
    let min_gap = 0.25 * 2.0 * PI / n as f64;
    // gaps = min_gap + random share of the remaining turn
    let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let spare = 2.0 * PI - n as f64 * min_gap;
    let mut theta = rng.gen_range(0.0..2.0 * PI);
    let (s, c) = tilt.sin_cos();
    let vertices = weights
        .iter()
        .map(|w| {
            let p = Point::new(a * theta.cos(), b * theta.sin());
            theta += min_gap + spare * w / total;
            Point::new(c * p.x - s * p.y, s * p.x + c * p.y)
        })
        .collect();
    DomainSpec::Polygon { vertices }
}

/// Disk, square, 2:1 rectangle, annulus, three random convex polygons and
/// two mapped disks.
pub fn standard_corpus() -> Vec<(String, DomainSpec)> {
    let mut out = vec![
        ("disk".to_string(), DomainSpec::disk(1.0, 64)),
        ("square".to_string(), DomainSpec::square()),
        ("rectangle_2x1".to_string(), DomainSpec::rectangle(2.0, 1.0)),
        ("annulus_1_2".to_string(), DomainSpec::annulus(1.0, 2.0, 64)),
    ];
    for (i, seed) in [11u64, 23, 37].into_iter().enumerate() {
        out.push((
            format!("random_polygon_{i}"),
            random_convex_polygon(seed, 7 + i),
        ));
    }
    out.push((
        "mapped_quadratic".to_string(),
        DomainSpec::mapped_disk(&[(1.0, 0.0), (0.1, 0.0)], 64),
    ));
    out.push((
        "mapped_cubic".to_string(),
        DomainSpec::mapped_disk(&[(1.0, 0.0), (0.0, 0.0), (0.05, 0.0)], 64),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_valid_and_deterministic() {
        let a = standard_corpus();
        let b = standard_corpus();
        assert_eq!(a, b);
        assert_eq!(a.len(), 9);
        for (name, spec) in &a {
            spec.validate().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn random_polygons_are_convex() {
        for seed in 0..200 {
            let spec = random_convex_polygon(seed, 5 + (seed as usize % 10));
            spec.convex_polygon().unwrap();
        }
    }
}
