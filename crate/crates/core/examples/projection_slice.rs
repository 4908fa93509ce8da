// Parseval on a dual cell and the projection-slice identity for a random 4x4 block.

use checkerdisc::coloring::{ColoringRule, FiniteColoring};
use checkerdisc::fourier::{parseval_phi_check, projection_slice_check, PolygonFT, SliceGrid};
use checkerdisc::lattice::dual_fundamental_domain;
use checkerdisc::polygon::Tiling;

pub fn run_example() -> checkerdisc::Result<()> {
    let t = Tiling::hexagon_norm();
    let col = FiniteColoring::block(t.clone(), &ColoringRule::random(42), 4);
    let p = parseval_phi_check(&col, &dual_fundamental_domain(&t.lattice))?;
    println!("Parseval: lhs {:.9} rhs {} residual {:.2e}", p.lhs, p.rhs, p.residual);

    let ft = PolygonFT::new(&t.domain);
    for theta in [0.0, 0.7, 2.2] {
        let c = projection_slice_check(&col, &ft, theta, &SliceGrid::default());
        println!("theta {theta:.2}: max residual {:.2e} over {} samples", c.max_residual, c.samples);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> checkerdisc::Result<()> {
    run_example()
}
