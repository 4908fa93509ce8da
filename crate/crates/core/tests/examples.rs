macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(tiling_validation, "tiling_validation.rs");
example!(dual_lattice, "dual_lattice.rs");
example!(transect_profile, "transect_profile.rs");
example!(polygon_fourier, "polygon_fourier.rs");
example!(tail_radius, "tail_radius.rs");
example!(projection_slice, "projection_slice.rs");
example!(line_search, "line_search.rs");
example!(certificate, "certificate.rs");
example!(scaling, "scaling.rs");
example!(render_board, "render_board.rs");
example!(config_run, "config_run.rs");

#[test]
fn examples_run() {
    tiling_validation::run_example().unwrap();
    dual_lattice::run_example().unwrap();
    transect_profile::run_example().unwrap();
    polygon_fourier::run_example().unwrap();
    tail_radius::run_example().unwrap();
    projection_slice::run_example().unwrap();
    line_search::run_example().unwrap();
    certificate::run_example().unwrap();
    scaling::run_example().unwrap();
    config_run::run_example().unwrap();
}

#[test]
fn render_example_writes_svgs() {
    let dir = std::env::temp_dir().join(format!("checkerdisc-render-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    render_board::render_to(&dir).unwrap();
    for name in ["unit_square", "l_tromino_norm", "hexagon_norm"] {
        assert!(dir.join(format!("{name}.svg")).exists());
    }
}
