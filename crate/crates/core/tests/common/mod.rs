#![allow(dead_code)]

use checkerdisc::coloring::{restrict_to_box, ColoringRule, FiniteColoring};
use checkerdisc::lattice::Vec2;
use checkerdisc::polygon::{PolygonDomain, Tiling};
use checkerdisc::transect::LineSpec;
use num_complex::Complex64;
use rand::Rng;

pub fn presets() -> Vec<(&'static str, Tiling)> {
    vec![
        ("unit_square", Tiling::unit_square()),
        ("l_tromino_norm", Tiling::l_tromino_norm()),
        ("hexagon_norm", Tiling::hexagon_norm()),
    ]
}

/// Random ±1 coloring of the tiles meeting `[0, size]²`.
pub fn random_box(tiling: &Tiling, seed: u64, size: f64) -> FiniteColoring {
    restrict_to_box(tiling, &ColoringRule::random(seed), size).unwrap()
}

/// `∫_{s0}^{s1} f(line(s)) ds` from point evaluations only.
///
/// Samples on a grid of step `h`, adds the feet of tile vertices lying within `h` of the
/// line (so corner slivers are not stepped over), and bisects every value change down
/// to `1e-13`.
pub fn oracle_segment_integral(col: &FiniteColoring, line: &LineSpec, s0: f64, s1: f64, h: f64) -> Complex64 {
    let f = |s: f64| col.evaluate_f(&line.point(s)).unwrap();
    let mut nodes: Vec<f64> = Vec::new();
    let n = ((s1 - s0) / h).ceil().max(1.0) as usize;
    for k in 0..=n {
        nodes.push(s0 + (s1 - s0) * k as f64 / n as f64);
    }
    let (u, up) = (line.u(), line.u_perp());
    for g in col.support() {
        for v in col.tiling().domain.vertices() {
            let p = g.embedding + v;
            let s = p.dot(&up);
            if (p.dot(&u) - line.offset).abs() < h && s > s0 && s < s1 {
                nodes.push(s);
            }
        }
    }
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();
    let vals: Vec<Complex64> = nodes.iter().map(|&s| f(s)).collect();
    let mut total = Complex64::default();
    for k in 0..nodes.len() - 1 {
        total += piece(&f, nodes[k], nodes[k + 1], vals[k], vals[k + 1]);
    }
    total
}

fn piece(f: &impl Fn(f64) -> Complex64, a: f64, b: f64, fa: Complex64, fb: Complex64) -> Complex64 {
    if fa == fb {
        return fa * (b - a);
    }
    if b - a < 1e-13 {
        return (fa + fb) * (0.5 * (b - a));
    }
    let m = 0.5 * (a + b);
    let fm = f(m);
    piece(f, a, m, fa, fm) + piece(f, m, b, fm, fb)
}

/// Parameter range of the line that can meet the support.
pub fn support_range(col: &FiniteColoring, line: &LineSpec) -> (f64, f64) {
    let c = col.support_center().dot(&line.u_perp());
    let w = col.diam() + col.tiling().domain.diam();
    (c - w, c + w)
}

/// A random line through the support's neighbourhood.
pub fn random_line(col: &FiniteColoring, rng: &mut impl Rng) -> LineSpec {
    let theta = rng.random_range(0.0..std::f64::consts::PI);
    let u = Vec2::new(theta.cos(), theta.sin());
    let w = 0.5 * (col.diam() + col.tiling().domain.diam());
    LineSpec::new(theta, col.support_center().dot(&u) + rng.random_range(-w..w))
}

/// `max |Σ_{i<=k<j} len_k v_k|` over all breakpoint pairs.
pub fn brute_max_subsegment(breaks: &[f64], values: &[f64]) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..breaks.len() {
        let mut acc = 0.0;
        for j in i..values.len() {
            acc += values[j] * (breaks[j + 1] - breaks[j]);
            best = best.max(acc.abs());
        }
    }
    best
}

/// A random star-shaped simple polygon around the origin.
pub fn star_polygon(rng: &mut impl Rng, n: usize) -> PolygonDomain {
    let mut angles: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..std::f64::consts::TAU)).collect();
    angles.sort_by(f64::total_cmp);
    let verts: Vec<Vec2> = angles
        .iter()
        .map(|&a| Vec2::new(a.cos(), a.sin()) * rng.random_range(0.3..1.5))
        .collect();
    PolygonDomain::new(verts).unwrap_or_else(|_| PolygonDomain::regular_hexagon(1.0, 0.0))
}
