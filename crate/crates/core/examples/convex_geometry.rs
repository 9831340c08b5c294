//! Inradius, circumradius, high ridge and proximal radius of convex
//! polygons, including a degenerating right-triangle family.

use btl::convexgeom::{right_triangle_sequence, ConvexPolygon};
use btl::Point;

fn main() -> btl::Result<()> {
    let hexagon = ConvexPolygon::regular(6, 1.0, Point::default())?;
    let pts: Vec<Point> = [(0.0, 0.0), (4.0, 0.0), (5.0, 2.0), (1.0, 3.0), (2.0, 1.0)]
        .into_iter()
        .map(|(x, y)| Point::new(x, y))
        .collect();
    let hull = ConvexPolygon::hull(&pts)?;
    for (name, poly) in [("hexagon", &hexagon), ("hull", &hull)] {
        println!(
            "{name}: {}",
            serde_json::to_string_pretty(&poly.summary()?)?
        );
    }

    println!("\nright triangles with a vanishing angle (R = 1):");
    println!("{:>6} {:>20} {:>20}", "n", "circumradius", "proximal L");
    for n in [1, 10, 100, 1000] {
        let tri = right_triangle_sequence(n)?;
        let (l, _) = tri.proximal_radius()?;
        println!("{:>6} {:>20.15} {:>20.15}", n, tri.circumradius().0, l);
    }
    Ok(())
}
