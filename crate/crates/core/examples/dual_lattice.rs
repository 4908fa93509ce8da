// Dual bases, Voronoi cells and short-vector enumeration.

use checkerdisc::lattice::{containment_radius, dual_fundamental_domain, Lattice2D};

pub fn run_example() -> checkerdisc::Result<()> {
    let rect = Lattice2D::new([2.0, 0.0], [0.0, 0.5])?;
    let d = rect.dual();
    println!("dual of diag(2, 1/2): b1={:?} b2={:?}", d.b1().as_slice(), d.b2().as_slice());

    let hex = Lattice2D::hexagonal();
    let cell = dual_fundamental_domain(&hex);
    println!(
        "hexagonal dual cell: {} vertices, area {:.12}, circumradius {:.6}",
        cell.vertices().len(),
        cell.area(),
        cell.circumradius()
    );
    println!("R' for R = 5: {:.6}", containment_radius(&cell, 5.0));

    for r in [1.0, 1.5, 3.0] {
        println!("|{{t in Z^2 : |t| <= {r}}}| = {}", Lattice2D::square().enumerate_points(r).len());
    }
    let (n, f) = Lattice2D::new([3.0, 0.0], [1.0, 2.0])?.normalized();
    println!("normalized by {f:.6}: covolume {:.12}", n.covolume());
    Ok(())
}

#[allow(dead_code)]
fn main() -> checkerdisc::Result<()> {
    run_example()
}
