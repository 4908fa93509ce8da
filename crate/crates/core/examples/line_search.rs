// Searches lines and segments of a random L-tromino board for the largest integral.

use checkerdisc::coloring::{restrict_to_box, ColoringRule};
use checkerdisc::polygon::Tiling;
use checkerdisc::search::{scan, ScanConfig};

pub fn run_example() -> checkerdisc::Result<()> {
    let col = restrict_to_box(&Tiling::l_tromino_norm(), &ColoringRule::random(9), 12.0)?;
    let cfg = ScanConfig {
        theta_count: 90,
        offsets_per_theta: 96,
        refine_rounds: 3,
        seed: 1,
    };
    let res = scan(&col, &cfg);
    println!("{} tiles, {} lines scanned, {} nudged off edges", col.len(), res.scanned, res.degenerate_perturbations);
    println!(
        "best line   theta={:.5} offset={:.5} |integral|={:.6}",
        res.best_line.theta, res.best_line.offset, res.best_line_value
    );
    let s = res.best_segment;
    println!(
        "best segment theta={:.5} offset={:.5} s=[{:.4}, {:.4}] |integral|={:.6}",
        s.line.theta, s.line.offset, s.s0, s.s1, res.best_segment_value
    );
    println!("refinement history {:?}", res.history);
    Ok(())
}

#[allow(dead_code)]
fn main() -> checkerdisc::Result<()> {
    run_example()
}
