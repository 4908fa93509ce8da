// Restricts a coloring to a line and reads off line, segment and best-subsegment integrals.

use checkerdisc::coloring::{ColoringRule, FiniteColoring};
use checkerdisc::polygon::Tiling;
use checkerdisc::transect::{profile, LineSpec};
use std::f64::consts::FRAC_PI_4;

pub fn run_example() -> checkerdisc::Result<()> {
    let col = FiniteColoring::block(Tiling::unit_square(), &ColoringRule::Parity, 4);

    let horizontal = profile(&col, &LineSpec::new(std::f64::consts::FRAC_PI_2, 0.5))?;
    println!("y = 0.5: line integral {}", horizontal.line_integral());
    println!("y = 0.5, s in [0, 1.5]: {}", horizontal.segment_integral(0.0, 1.5)?);

    // y = x: every cell (i, i) has weight +1
    let diagonal = profile(&col, &LineSpec::new(3.0 * FRAC_PI_4, 0.0))?;
    let best = diagonal.max_subsegment();
    println!("diagonal: integral {:.12}, best [{:.3}, {:.3}] -> {:.12}", diagonal.line_integral().re, best.s0, best.s1, best.value);

    let mut csv = Vec::new();
    horizontal.write_csv(&mut csv)?;
    print!("{}", String::from_utf8_lossy(&csv));

    // a line along tile edges has no well-defined restriction
    println!("y = 1: {:?}", profile(&col, &LineSpec::new(std::f64::consts::FRAC_PI_2, 1.0)).err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> checkerdisc::Result<()> {
    run_example()
}
