// Writes SVG boards for the presets with their best segment drawn in.
// Usage: `cargo run --example render_board [OUT_DIR]`.

use checkerdisc::coloring::{restrict_to_box, ColoringRule};
use checkerdisc::polygon::Tiling;
use checkerdisc::render::{render_svg, RenderOptions};
use checkerdisc::search::{scan, ScanConfig};

pub fn run_example() -> checkerdisc::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(std::path::PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    render_to(&dir)
}

pub fn render_to(dir: &std::path::Path) -> checkerdisc::Result<()> {
    let cfg = ScanConfig {
        theta_count: 60,
        offsets_per_theta: 64,
        refine_rounds: 1,
        seed: 0,
    };
    for (name, t) in [
        ("unit_square", Tiling::unit_square()),
        ("l_tromino_norm", Tiling::l_tromino_norm()),
        ("hexagon_norm", Tiling::hexagon_norm()),
    ] {
        let col = restrict_to_box(&t, &ColoringRule::random(3), 6.0)?;
        let best = scan(&col, &cfg).best_segment;
        let svg = render_svg(&col, &RenderOptions { segment: Some(best), ..Default::default() });
        let path = dir.join(format!("{name}.svg"));
        std::fs::write(&path, svg)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> checkerdisc::Result<()> {
    run_example()
}
