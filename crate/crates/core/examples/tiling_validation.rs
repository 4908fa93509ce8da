// Validates the three preset tilings and two lattices that do not tile.

use checkerdisc::lattice::Lattice2D;
use checkerdisc::polygon::{validate_tiling, PolygonDomain, Tiling};

pub fn run_example() -> checkerdisc::Result<()> {
    for (name, t) in [
        ("unit_square", Tiling::unit_square()),
        ("l_tromino_norm", Tiling::l_tromino_norm()),
        ("hexagon_norm", Tiling::hexagon_norm()),
    ] {
        let r = t.validate();
        println!(
            "{name:16} pass={} overlap={:.2e} misses={} of {}",
            r.pass, r.overlap_area_max, r.coverage_miss_count, r.samples
        );
        assert!(r.pass);
    }

    let sparse = validate_tiling(&PolygonDomain::unit_square(), &Lattice2D::new([2.0, 0.0], [0.0, 2.0])?);
    println!("unit square / 2Z^2  pass={} area_match={}", sparse.pass, sparse.area_match);
    assert!(!sparse.pass);

    // right area, but the shear makes neighbouring L-trominoes overlap
    let sheared = validate_tiling(&PolygonDomain::l_tromino(), &Lattice2D::new([2.0, 1.0], [-1.0, 1.0])?);
    println!("L-tromino / shear   pass={} overlap={}", sheared.pass, sheared.overlap_area_max);
    assert!(!sheared.pass);
    Ok(())
}

#[allow(dead_code)]
fn main() -> checkerdisc::Result<()> {
    run_example()
}
