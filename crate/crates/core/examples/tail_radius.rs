// Tail and containment radii of the presets at several tail levels.

use checkerdisc::fourier::{tail_radius, PolygonFT};
use checkerdisc::lattice::{containment_radius, dual_fundamental_domain};
use checkerdisc::polygon::Tiling;

pub fn run_example() -> checkerdisc::Result<()> {
    for (name, t) in [
        ("unit_square", Tiling::unit_square()),
        ("l_tromino_norm", Tiling::l_tromino_norm()),
        ("hexagon_norm", Tiling::hexagon_norm()),
    ] {
        let ft = PolygonFT::new(&t.domain);
        let cell = dual_fundamental_domain(&t.lattice);
        for eps in [0.9, 0.5, 0.1] {
            let tr = tail_radius(&ft, &t.lattice.dual(), &cell, eps)?;
            println!(
                "{name:16} eps={eps:.2} R={:.6} R'={:.6} min head={:.6} margin={:.2e} samples={}",
                tr.radius,
                containment_radius(&cell, tr.radius),
                tr.min_head,
                tr.continuity_margin,
                tr.samples
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> checkerdisc::Result<()> {
    run_example()
}
