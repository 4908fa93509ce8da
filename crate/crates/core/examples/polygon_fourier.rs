// Closed-form transform of a tile indicator against quadrature, and spectral tiling sums.

use checkerdisc::fourier::{tiling_sum_profile, PolygonFT};
use checkerdisc::lattice::Vec2;
use checkerdisc::polygon::Tiling;
use checkerdisc::quadrature::Quadrature;
use num_complex::Complex64;
use std::f64::consts::PI;

pub fn run_example() -> checkerdisc::Result<()> {
    let t = Tiling::l_tromino_norm();
    let ft = PolygonFT::new(&t.domain);
    let quad = Quadrature::with_rel_tol(1e-10);
    for xi in [Vec2::new(0.0, 0.0), Vec2::new(0.4, -1.1), Vec2::new(2.5, 0.7)] {
        let closed = ft.chi_hat(&xi);
        let num = quad
            .polygon(|x| Complex64::from_polar(1.0, -2.0 * PI * xi.dot(&x)), &t.domain, 4)?
            .value;
        println!("xi = ({:5.2}, {:5.2})  closed {closed:.10}  quadrature {num:.10}", xi.x, xi.y);
    }

    let radii = [1.0, 2.0, 5.0, 10.0, 25.0, 50.0];
    let sums = tiling_sum_profile(&ft, &t.lattice.dual(), &Vec2::new(0.31, 0.12), &radii);
    for (r, s) in radii.iter().zip(&sums) {
        println!("sum over |t*| <= {r:4}: {s:.6}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> checkerdisc::Result<()> {
    run_example()
}
