// Growth of the best segment integral with box size for random and constant colorings.

use checkerdisc::coloring::ColoringRule;
use checkerdisc::polygon::Tiling;
use checkerdisc::search::{scaling_experiment, write_scaling_csv, ScanConfig};
use num_complex::Complex64;

pub fn run_example() -> checkerdisc::Result<()> {
    let cfg = ScanConfig {
        theta_count: 60,
        offsets_per_theta: 120,
        refine_rounds: 1,
        seed: 0,
    };
    let t = Tiling::unit_square();
    let random = scaling_experiment(&t, &ColoringRule::random(5), &[8.0, 16.0, 32.0], 3, &cfg)?;
    let mut out = Vec::new();
    write_scaling_csv(&random.rows, &mut out)?;
    print!("{}", String::from_utf8_lossy(&out));
    println!("random ±1: slope {:.3} ± {:.3}", random.fit.slope, random.fit.stderr);

    let ones = scaling_experiment(&t, &ColoringRule::Constant(Complex64::new(1.0, 0.0)), &[8.0, 16.0, 32.0], 1, &cfg)?;
    println!("all ones:  slope {:.3} ± {:.3}", ones.fit.slope, ones.fit.stderr);
    Ok(())
}

#[allow(dead_code)]
fn main() -> checkerdisc::Result<()> {
    run_example()
}
