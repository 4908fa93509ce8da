// Loads each JSON config under `configs/` and reports its tiling and coloring.

use checkerdisc::config::Config;

pub fn run_example() -> checkerdisc::Result<()> {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs");
    let mut paths: Vec<_> = std::fs::read_dir(&dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    for p in paths {
        let cfg = Config::from_file(&p)?;
        let name = p.file_name().unwrap().to_string_lossy().into_owned();
        let report = cfg.tiling()?.validate();
        let col = cfg.coloring()?;
        println!("{name:26} tiles pass={:5} |G|={:4} energy={:.1}", report.pass, col.len(), col.energy());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> checkerdisc::Result<()> {
    run_example()
}
