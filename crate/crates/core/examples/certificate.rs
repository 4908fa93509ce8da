// Explicit lower bound on the best line integral, checked by a dense scan.

use checkerdisc::certificate::certificate;
use checkerdisc::coloring::{restrict_to_box, ColoringRule};
use checkerdisc::fourier::PolygonFT;
use checkerdisc::polygon::Tiling;

pub fn run_example() -> checkerdisc::Result<()> {
    for (name, t) in [
        ("unit_square", Tiling::unit_square()),
        ("l_tromino_norm", Tiling::l_tromino_norm()),
        ("hexagon_norm", Tiling::hexagon_norm()),
    ] {
        let col = restrict_to_box(&t, &ColoringRule::random(2024), 8.0)?;
        let c = certificate(&col, &PolygonFT::new(&t.domain), &t.lattice)?;
        println!(
            "{name:16} {} bound={:.4} M={:.4} margin={:.4} (D={:.3}, R={:.3}, R'={:.3}, energy={})",
            if c.pass { "PASS" } else { "FAIL" },
            c.bound,
            c.empirical_m,
            c.margin,
            c.d,
            c.r,
            c.r_prime,
            c.energy
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> checkerdisc::Result<()> {
    run_example()
}
