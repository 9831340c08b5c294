//! Meshes of every planar domain kind under uniform refinement.

use btl::mesh::DomainSpec;

fn main() -> btl::Result<()> {
    let domains = [
        DomainSpec::square(),
        DomainSpec::disk(1.0, 32),
        DomainSpec::annulus(1.0, 2.0, 32),
        DomainSpec::mapped_disk(&[(1.0, 0.0), (0.1, 0.0)], 32),
    ];
    println!(
        "{:<12} {:>5} {:>8} {:>8} {:>14} {:>14} {:>10}",
        "kind", "level", "nodes", "tris", "area", "perimeter", "min angle"
    );
    for spec in &domains {
        for level in 0..=4 {
            let mesh = spec.build_mesh(level)?;
            println!(
                "{:<12} {:>5} {:>8} {:>8} {:>14.10} {:>14.10} {:>10.3}",
                spec.kind(),
                level,
                mesh.node_count(),
                mesh.triangles.len(),
                mesh.area(),
                mesh.perimeter(),
                mesh.quality().min_angle
            );
        }
    }
    Ok(())
}
