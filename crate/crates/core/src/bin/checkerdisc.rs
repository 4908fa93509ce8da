//! Command-line front end; every subcommand reads a JSON config (see `checkerdisc::config`).

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use checkerdisc::certificate::certificate_with;
use checkerdisc::config::Config;
use checkerdisc::fourier::{fourier_report, PolygonFT, SliceGrid};
use checkerdisc::render::{render_svg, RenderOptions};
use checkerdisc::search::{scaling_experiment, scan_rows, write_scaling_csv, write_scan_csv, ScanConfig};
use checkerdisc::transect::{DirectionSweep, LineSpec, Segment};
use checkerdisc::{Error, Result};

#[derive(Parser)]
#[command(version, about = "Line-segment discrepancy of lattice checkerboards")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the domain tiles the plane under the lattice.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Integral of the coloring along a line or a segment of it.
    Discrepancy {
        #[arg(long)]
        config: PathBuf,
        /// THETA,OFFSET
        #[arg(long, value_parser = pair)]
        line: (f64, f64),
        /// S0,S1
        #[arg(long, value_parser = pair)]
        segment: Option<(f64, f64)>,
        /// Write the piecewise-constant profile as CSV.
        #[arg(long)]
        profile_out: Option<PathBuf>,
    },
    /// Grid-and-refine search for the largest line and segment integrals.
    Search {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 180)]
        thetas: usize,
        #[arg(long, default_value_t = 64)]
        offsets: usize,
        #[arg(long, default_value_t = 2)]
        refine: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectral tiling sums, Parseval and projection-slice residuals, tail radii.
    FourierCheck {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Explicit lower bound against the searched maximum; exit status 1 on FAIL.
    Certify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Growth of the best segment value with the box size.
    Scaling {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated increasing box sizes.
        #[arg(long = "R", value_delimiter = ',', default_value = "8,16,32,64")]
        r: Vec<f64>,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Two-colour SVG of the board.
    Render {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// THETA,OFFSET,S0,S1
        #[arg(long, value_delimiter = ',')]
        segment: Option<Vec<f64>>,
    },
}

fn pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected A,B")?;
    let p = |x: &str| x.trim().parse::<f64>().map_err(|e| e.to_string());
    Ok((p(a)?, p(b)?))
}

fn writer(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn write_json<T: Serialize>(value: &T, out: &Option<PathBuf>) -> Result<()> {
    let mut w = writer(out)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    Ok(())
}

fn load(path: &Path) -> Result<Config> {
    Config::from_file(path)
}

#[derive(Serialize)]
struct DiscrepancyOut {
    theta: f64,
    offset: f64,
    line_re: f64,
    line_im: f64,
    line_abs: f64,
    segment: Option<[f64; 2]>,
    segment_re: Option<f64>,
    segment_im: Option<f64>,
    segment_abs: Option<f64>,
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Validate { config } => {
            let report = load(&config)?.tiling()?.validate();
            write_json(&report, &None)?;
            Ok(if report.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Discrepancy { config, line, segment, profile_out } => {
            let col = load(&config)?.coloring()?;
            let spec = LineSpec::new(line.0, line.1);
            let profile = DirectionSweep::new(&col, spec.theta).profile(spec.offset)?;
            if let Some(p) = &profile_out {
                profile.write_csv(File::create(p)?)?;
            }
            let li = profile.line_integral();
            let seg = segment.map(|(a, b)| Segment::new(spec, a, b)).transpose()?;
            let si = seg.map(|s| profile.segment_integral(s.s0, s.s1)).transpose()?;
            write_json(
                &DiscrepancyOut {
                    theta: spec.theta,
                    offset: spec.offset,
                    line_re: li.re,
                    line_im: li.im,
                    line_abs: li.norm(),
                    segment: seg.map(|s| [s.s0, s.s1]),
                    segment_re: si.map(|v| v.re),
                    segment_im: si.map(|v| v.im),
                    segment_abs: si.map(|v| v.norm()),
                },
                &None,
            )?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Search { config, thetas, offsets, refine, seed, out } => {
            let col = load(&config)?.coloring()?;
            let cfg = ScanConfig {
                theta_count: thetas,
                offsets_per_theta: offsets,
                refine_rounds: refine,
                seed,
            };
            let (res, rows) = scan_rows(&col, &cfg);
            if let Some(p) = &out {
                write_scan_csv(&rows, File::create(p)?)?;
            }
            write_json(&res, &None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::FourierCheck { config, out, samples, seed } => {
            let cfg = load(&config)?;
            let col = cfg.coloring()?;
            let slice = SliceGrid {
                step: cfg.tolerances.slice_step,
                ..SliceGrid::default()
            };
            let report = fourier_report(&col, cfg.tolerances.epsilon, cfg.tolerances.r_trunc, &slice, samples, seed)?;
            write_json(&report, &out)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Certify { config, out } => {
            let cfg = load(&config)?;
            let col = cfg.coloring()?;
            let ftq = PolygonFT::new(&col.tiling().domain);
            let scan_cfg = cfg.scan.unwrap_or_else(|| ScanConfig::dense_for(&col, 0));
            let (cert, _) = certificate_with(&col, &ftq, &col.tiling().lattice, &scan_cfg)?;
            if out.is_some() {
                write_json(&cert, &out)?;
            }
            println!(
                "{} bound={:.6} empirical_M={:.6} margin={:.6}",
                if cert.pass { "PASS" } else { "FAIL" },
                cert.bound,
                cert.empirical_m,
                cert.margin
            );
            Ok(if cert.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Scaling { config, r, trials, out } => {
            let cfg = load(&config)?;
            let tiling = cfg.tiling()?;
            let scan_cfg = cfg.scan.unwrap_or_default();
            let report = scaling_experiment(&tiling, &cfg.rule()?, &r, trials, &scan_cfg)?;
            write_scaling_csv(&report.rows, writer(&out)?)?;
            eprintln!("slope {:.4} ± {:.4}", report.fit.slope, report.fit.stderr);
            Ok(ExitCode::SUCCESS)
        }
        Command::Render { config, out, segment } => {
            let col = load(&config)?.coloring()?;
            let segment = match segment.as_deref() {
                Some([th, t, s0, s1]) => Some(Segment::new(LineSpec::new(*th, *t), *s0, *s1)?),
                Some(_) => return Err(Error::InvalidArgument("--segment takes THETA,OFFSET,S0,S1".into())),
                None => None,
            };
            let svg = render_svg(&col, &RenderOptions { segment, ..RenderOptions::default() });
            std::fs::write(out, svg)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
