//! Searching line families for large discrepancy, box-size scaling runs, and the
//! split of a transect into its in-box part and boundary overflow.

use std::f64::consts::PI;
use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::{restrict_to_box, ColoringRule, FiniteColoring};
use crate::error::{Error, Result};
use crate::lattice::Vec2;
use crate::polygon::Tiling;
use crate::transect::{DirectionSweep, LineSpec, Segment};

const GOLDEN_STEPS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub theta_count: usize,
    pub offsets_per_theta: usize,
    pub refine_rounds: usize,
    pub seed: u64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            theta_count: 180,
            offsets_per_theta: 64,
            refine_rounds: 2,
            seed: 0,
        }
    }
}

impl ScanConfig {
    /// At least 180 directions and `8·(D + diam Q)` offsets per direction.
    pub fn dense_for(col: &FiniteColoring, seed: u64) -> Self {
        let width = col.diam() + col.tiling().domain.diam();
        Self {
            theta_count: 180,
            offsets_per_theta: (8.0 * width).ceil().max(1.0) as usize,
            refine_rounds: 2,
            seed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanResult {
    pub best_line: LineSpec,
    /// `|π_L f|` on `best_line`.
    pub best_line_value: f64,
    pub best_segment: Segment,
    pub best_segment_value: f64,
    pub degenerate_perturbations: usize,
    pub scanned: usize,
    /// Best segment value after the grid and after each refine round.
    pub history: Vec<f64>,
}

/// One evaluated line.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScanRow {
    pub theta: f64,
    pub offset: f64,
    pub line_value: f64,
    pub s0: f64,
    pub s1: f64,
    pub seg_value: f64,
}

fn improves(new: f64, old: f64) -> bool {
    new > old + 1e-12 * old.abs()
}

struct Scanner<'a> {
    col: &'a FiniteColoring,
    rng: ChaCha8Rng,
    best_line: (LineSpec, f64),
    best_seg: (Segment, f64),
    degenerate: usize,
    scanned: usize,
    rows: Option<&'a mut Vec<ScanRow>>,
}

impl Scanner<'_> {
    /// Evaluates one line and updates both incumbents; returns `(segment value, line value)`.
    fn eval(&mut self, sweep: &DirectionSweep, offset: f64) -> (f64, f64) {
        let sign = if self.rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let (profile, t_used, nudges) = sweep.profile_perturbed(offset, sign);
        self.scanned += 1;
        if nudges > 0 {
            self.degenerate += 1;
        }
        let line = LineSpec::new(sweep.theta(), t_used);
        let line_value = profile.line_integral().norm();
        let seg = profile.max_subsegment();
        if improves(line_value, self.best_line.1) {
            self.best_line = (line, line_value);
        }
        if improves(seg.value, self.best_seg.1) {
            self.best_seg = (
                Segment {
                    line,
                    s0: seg.s0,
                    s1: seg.s1,
                },
                seg.value,
            );
        }
        if let Some(rows) = self.rows.as_deref_mut() {
            rows.push(ScanRow {
                theta: line.theta,
                offset: t_used,
                line_value,
                s0: seg.s0,
                s1: seg.s1,
                seg_value: seg.value,
            });
        }
        (seg.value, line_value)
    }

    fn eval_at(&mut self, theta: f64, offset: f64) -> (f64, f64) {
        let line = LineSpec::new(theta, offset);
        let sweep = DirectionSweep::new(self.col, line.theta);
        self.eval(&sweep, line.offset)
    }

    /// Golden-section maximization of `pick(eval(line(x)))` over `[a, b]`.
    fn golden(&mut self, a: f64, b: f64, line: impl Fn(f64) -> (f64, f64), pick: fn((f64, f64)) -> f64) {
        let r = 0.5 * (5f64.sqrt() - 1.0);
        let (mut a, mut b) = (a, b);
        let mut c = b - r * (b - a);
        let mut d = a + r * (b - a);
        let at = |s: &mut Self, x: f64| {
            let (th, t) = line(x);
            pick(s.eval_at(th, t))
        };
        let mut fc = at(self, c);
        let mut fd = at(self, d);
        for _ in 0..GOLDEN_STEPS {
            // near-equal values count as ties so that rescaled inputs take the same branch
            if fc >= fd - 1e-12 * fc.abs().max(fd.abs()) {
                b = d;
                d = c;
                fd = fc;
                c = b - r * (b - a);
                fc = at(self, c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + r * (b - a);
                fd = at(self, d);
            }
        }
    }

    /// Offset search at fixed angle, then angle search rotating about `pivot`.
    fn refine(&mut self, incumbent: LineSpec, dt: f64, dtheta: f64, pivot: &Vec2, pick: fn((f64, f64)) -> f64) {
        let th = incumbent.theta;
        let t = incumbent.offset;
        self.golden(t - dt, t + dt, |x| (th, x), pick);
        // the point of the incumbent nearest the pivot stays on the rotated line
        let p = incumbent.u() * t + incumbent.u_perp() * pivot.dot(&incumbent.u_perp());
        self.golden(th - dtheta, th + dtheta, |x| (x, p.dot(&Vec2::new(x.cos(), x.sin()))), pick);
    }
}

/// Grid over `θ_k = kπ/N` and evenly spaced offsets spanning `D + diam Q` around the
/// support centre, then local refinement of the best segment and the best line.
/// Ties keep the earliest grid point (smallest θ, then smallest offset).
pub fn scan(col: &FiniteColoring, cfg: &ScanConfig) -> ScanResult {
    scan_impl(col, cfg, None)
}

/// As [`scan`], also returning every evaluated line.
pub fn scan_rows(col: &FiniteColoring, cfg: &ScanConfig) -> (ScanResult, Vec<ScanRow>) {
    let mut rows = Vec::new();
    let res = scan_impl(col, cfg, Some(&mut rows));
    (res, rows)
}

fn scan_impl(col: &FiniteColoring, cfg: &ScanConfig, rows: Option<&mut Vec<ScanRow>>) -> ScanResult {
    let n_theta = cfg.theta_count.max(1);
    let n_off = cfg.offsets_per_theta.max(1);
    let width = col.diam() + col.tiling().domain.diam();
    let center = if col.is_empty() { Vec2::zeros() } else { col.support_center() };
    let start = LineSpec::new(0.0, center.x);
    let mut sc = Scanner {
        col,
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        best_line: (start, 0.0),
        best_seg: (Segment { line: start, s0: 0.0, s1: 0.0 }, 0.0),
        degenerate: 0,
        scanned: 0,
        rows,
    };
    let spacing = if n_off > 1 { width / (n_off - 1) as f64 } else { width };
    for k in 0..n_theta {
        let theta = k as f64 * PI / n_theta as f64;
        let sweep = DirectionSweep::new(col, theta);
        let t0 = center.dot(&Vec2::new(theta.cos(), theta.sin()));
        for j in 0..n_off {
            let t = if n_off > 1 {
                t0 - 0.5 * width + j as f64 * spacing
            } else {
                t0
            };
            sc.eval(&sweep, t);
        }
    }
    let mut history = vec![sc.best_seg.1];
    let dtheta0 = PI / n_theta as f64;
    for round in 0..cfg.refine_rounds {
        let shrink = 0.5f64.powi(round as i32);
        let (dt, dth) = (spacing * shrink, dtheta0 * shrink);
        let seg_line = sc.best_seg.0.line;
        sc.refine(seg_line, dt, dth, &center, |v| v.0);
        let line = sc.best_line.0;
        sc.refine(line, dt, dth, &center, |v| v.1);
        history.push(sc.best_seg.1);
    }
    ScanResult {
        best_line: sc.best_line.0,
        best_line_value: sc.best_line.1,
        best_segment: sc.best_seg.0,
        best_segment_value: sc.best_seg.1,
        degenerate_perturbations: sc.degenerate,
        scanned: sc.scanned,
        history,
    }
}

/// CSV with columns `theta,offset,line_value,s0,s1,seg_value`.
pub fn write_scan_csv<W: Write>(rows: &[ScanRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Split of a line through a boxed coloring into the in-box segment `I` and the overflow.
#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub line: LineSpec,
    /// `I = S ∩ [0, R]²` in the line parameter.
    pub s0: f64,
    pub s1: f64,
    /// Nonzero-valued length of the profile outside `I`.
    pub e_length: f64,
    pub integral_i: Complex64,
    pub integral_s: Complex64,
    /// `|∫_S f − ∫_I f| <= E_length · max|z|`.
    pub bound_holds: bool,
}

/// Parameter interval of `line ∩ [0, size]²`.
pub fn clip_line_to_box(line: &LineSpec, size: f64) -> Option<(f64, f64)> {
    let p = line.u() * line.offset;
    let d = line.u_perp();
    let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
    for (pc, dc) in [(p.x, d.x), (p.y, d.y)] {
        if dc.abs() < 1e-15 {
            if pc < 0.0 || pc > size {
                return None;
            }
        } else {
            let (a, b) = ((0.0 - pc) / dc, (size - pc) / dc);
            lo = lo.max(a.min(b));
            hi = hi.min(a.max(b));
        }
    }
    (lo < hi).then_some((lo, hi))
}

pub fn corollary_decomposition(col: &FiniteColoring, line: &LineSpec, size: f64) -> Result<Decomposition> {
    let (s0, s1) = clip_line_to_box(line, size).ok_or(Error::EmptySegment)?;
    let profile = DirectionSweep::new(col, line.theta).profile(line.offset)?;
    let integral_i = profile.segment_integral(s0, s1)?;
    let integral_s = profile.line_integral();
    let e_length = profile.support_outside(s0, s1);
    let slack = 1e-12 * (1.0 + profile.support_length()) * col.max_abs_weight();
    let bound_holds = (integral_s - integral_i).norm() <= e_length * col.max_abs_weight() + slack;
    Ok(Decomposition {
        line: *line,
        s0,
        s1,
        e_length,
        integral_i,
        integral_s,
        bound_holds,
    })
}

/// One scaling run.
#[derive(Clone, Debug, Serialize)]
pub struct ScalingRow {
    #[serde(rename = "R")]
    pub r: f64,
    pub trial: usize,
    pub theta: f64,
    pub offset: f64,
    pub s0: f64,
    pub s1: f64,
    pub seg_value: f64,
    pub line_value: f64,
    #[serde(rename = "E_length")]
    pub e_length: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub stderr: f64,
    pub intercept: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalingReport {
    pub rows: Vec<ScalingRow>,
    pub fit: ScalingFit,
}

/// Trial `k` of a random rule uses seed `seed + k`; other rules repeat unchanged.
pub fn rule_for_trial(rule: &ColoringRule, trial: usize) -> ColoringRule {
    match rule {
        ColoringRule::Random { seed, bias } => ColoringRule::Random {
            seed: seed.wrapping_add(trial as u64),
            bias: *bias,
        },
        other => other.clone(),
    }
}

/// Least squares of `log y` on `log x`.
pub fn fit_log_log(points: &[(f64, f64)]) -> ScalingFit {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return ScalingFit { slope: f64::NAN, stderr: f64::NAN, intercept: f64::NAN };
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let stderr = if pts.len() > 2 {
        let rss: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
        (rss / (n - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    ScalingFit { slope, stderr, intercept }
}

/// For each box size and trial: restrict to `[0, R]²`, scan, and record the best
/// segment with the overflow length of its line; then fit the growth exponent.
pub fn scaling_experiment(
    tiling: &Tiling,
    rule: &ColoringRule,
    r_list: &[f64],
    trials: usize,
    cfg: &ScanConfig,
) -> Result<ScalingReport> {
    if trials == 0 || r_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("R list must increase and trials be positive".into()));
    }
    let mut rows = Vec::new();
    for &r in r_list {
        for trial in 0..trials {
            let col = restrict_to_box(tiling, &rule_for_trial(rule, trial), r)?;
            let res = scan(&col, cfg);
            let seg = res.best_segment;
            let e_length = match corollary_decomposition(&col, &seg.line, r) {
                Ok(d) => d.e_length,
                Err(Error::EmptySegment) => f64::NAN,
                Err(e) => return Err(e),
            };
            rows.push(ScalingRow {
                r,
                trial,
                theta: seg.line.theta,
                offset: seg.line.offset,
                s0: seg.s0,
                s1: seg.s1,
                seg_value: res.best_segment_value,
                line_value: res.best_line_value,
                e_length,
            });
        }
    }
    let fit = fit_log_log(&rows.iter().map(|r| (r.r, r.seg_value)).collect::<Vec<_>>());
    Ok(ScalingReport { rows, fit })
}

/// CSV with columns `R,trial,theta,offset,s0,s1,seg_value,line_value,E_length`.
pub fn write_scaling_csv<W: Write>(rows: &[ScalingRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
