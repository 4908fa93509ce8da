//! Fourier side: the closed-form transform of a polygon indicator, the lattice
//! trigonometric polynomial `φ`, the spectral tiling sum of `|χ̂_Q|²`, tail radii,
//! and numerical checks of the Parseval and projection-slice identities.
//!
//! Convention: `f̂(ξ) = ∫ f(x) e^{−2πi ξ·x} dx`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::coloring::FiniteColoring;
use crate::error::{Error, Result};
use crate::lattice::{Lattice2D, LatticePoint, Vec2};
use crate::polygon::PolygonDomain;
use crate::quadrature::Quadrature;
use crate::transect::projection_samples;

const TAYLOR_TERMS: usize = 24;
/// Below this value of `2π|ξ|·r` the moment series replaces the edge sum.
const TAYLOR_SWITCH: f64 = 0.5;

/// `sin(x)/x`.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

#[derive(Clone, Debug)]
struct Edge {
    mid: Vec2,
    dir: Vec2,
    normal: Vec2,
}

/// Precomputed edge and moment data for evaluating `χ̂_Q`.
#[derive(Clone, Debug)]
pub struct PolygonFT {
    edges: Vec<Edge>,
    area: f64,
    centroid: Vec2,
    radius: f64,
    // triangles relative to the centroid with their areas
    triangles: Vec<([Vec2; 3], f64)>,
}

impl PolygonFT {
    pub fn new(q: &PolygonDomain) -> Self {
        let edges = q
            .edges()
            .map(|(a, b)| {
                let d = b - a;
                Edge {
                    mid: (a + b) * 0.5,
                    dir: d,
                    normal: Vec2::new(d.y, -d.x),
                }
            })
            .collect();
        let centroid = q.centroid();
        let triangles = q
            .triangles()
            .iter()
            .map(|t| {
                let rel = [t[0] - centroid, t[1] - centroid, t[2] - centroid];
                (rel, crate::clip::signed_area(t))
            })
            .collect();
        Self {
            edges,
            area: q.area(),
            centroid,
            radius: q.radius_about(&centroid),
            triangles,
        }
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    /// `χ̂_Q(ξ)`.
    pub fn chi_hat(&self, xi: &Vec2) -> Complex64 {
        let k = xi.norm();
        if 2.0 * PI * k * self.radius < TAYLOR_SWITCH {
            return self.chi_hat_series(xi);
        }
        // divergence theorem: ∫_Q e^{-2πiξ·x} = i/(2π|ξ|²) Σ_e (ξ·ν_e) e^{-2πiξ·m_e} sinc(πξ·d_e)
        let mut acc = Complex64::default();
        for e in &self.edges {
            let phase = Complex64::from_polar(1.0, -2.0 * PI * xi.dot(&e.mid));
            acc += phase * (xi.dot(&e.normal) * sinc(PI * xi.dot(&e.dir)));
        }
        acc * Complex64::new(0.0, 1.0 / (2.0 * PI * k * k))
    }

    /// Moment expansion about the centroid:
    /// `e^{-2πiξ·c} Σ_k (−2πi)^k/k! ∫_Q (ξ·(x−c))^k dx`, each triangle moment in closed form.
    fn chi_hat_series(&self, xi: &Vec2) -> Complex64 {
        let mut moments = [0.0f64; TAYLOR_TERMS];
        for (tri, area) in &self.triangles {
            let (a, b, c) = (xi.dot(&tri[0]), xi.dot(&tri[1]), xi.dot(&tri[2]));
            // complete homogeneous symmetric polynomials h_k(a, b, c)
            let mut h_ab = [0.0f64; TAYLOR_TERMS];
            let mut pa = 1.0;
            for k in 0..TAYLOR_TERMS {
                h_ab[k] = if k == 0 { 1.0 } else { pa + b * h_ab[k - 1] };
                pa *= a;
                if k == 0 {
                    pa = a;
                }
            }
            let mut h = [0.0f64; TAYLOR_TERMS];
            for k in 0..TAYLOR_TERMS {
                h[k] = h_ab[k] + if k == 0 { 0.0 } else { c * h[k - 1] };
            }
            // ∫_T (ξ·x)^k = 2|T| k!/(k+2)! h_k
            for k in 0..TAYLOR_TERMS {
                moments[k] += 2.0 * area * h[k] / ((k + 1) * (k + 2)) as f64;
            }
        }
        let mut acc = Complex64::default();
        let mut coef = Complex64::new(1.0, 0.0);
        for (k, m) in moments.iter().enumerate() {
            if k > 0 {
                coef *= Complex64::new(0.0, -2.0 * PI) / k as f64;
            }
            acc += coef * *m;
        }
        acc * Complex64::from_polar(1.0, -2.0 * PI * xi.dot(&self.centroid))
    }

    /// `|χ̂_Q(ξ)|²`; requires `area(Q) = 1`.
    pub fn power_density(&self, xi: &Vec2) -> Result<f64> {
        if (self.area - 1.0).abs() > 1e-9 {
            return Err(Error::NormalizeFirst { area: self.area });
        }
        Ok(self.chi_hat(xi).norm_sqr())
    }

    fn g(&self, xi: &Vec2) -> f64 {
        self.chi_hat(xi).norm_sqr()
    }
}

pub fn chi_hat(ftq: &PolygonFT, xi: &Vec2) -> Complex64 {
    ftq.chi_hat(xi)
}

pub fn power_density(ftq: &PolygonFT, xi: &Vec2) -> Result<f64> {
    ftq.power_density(xi)
}

/// `φ(ξ) = Σ_g z_g e^{−2πi g·ξ}`, periodic under the dual lattice.
pub fn phi(col: &FiniteColoring, xi: &Vec2) -> Complex64 {
    col.support()
        .iter()
        .zip(col.weights())
        .map(|(g, z)| z * Complex64::from_polar(1.0, -2.0 * PI * g.embedding.dot(xi)))
        .sum()
}

/// `f̂(ξ) = χ̂_Q(ξ) φ(ξ)`.
pub fn f_hat(col: &FiniteColoring, ftq: &PolygonFT, xi: &Vec2) -> Complex64 {
    ftq.chi_hat(xi) * phi(col, xi)
}

/// Dual lattice points ordered by norm (ties by coefficients), so that partial sums
/// over growing radii extend one another and are monotone in floating point.
fn points_by_norm(lat_dual: &Lattice2D, radius: f64) -> Vec<LatticePoint> {
    let mut pts = lat_dual.enumerate_points(radius);
    pts.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then(a.coeffs.cmp(&b.coeffs)));
    pts
}

fn require_unit_covolume(lat: &Lattice2D) -> Result<()> {
    if (lat.covolume() - 1.0).abs() > 1e-9 {
        return Err(Error::NormalizeFirst { area: lat.covolume() });
    }
    Ok(())
}

/// Partial sum of `Σ_{t*} |χ̂_Q(ξ − t*)|²` over `|t*| <= r_trunc`.
pub fn tiling_sum(ftq: &PolygonFT, lat_dual: &Lattice2D, xi: &Vec2, r_trunc: f64) -> f64 {
    points_by_norm(lat_dual, r_trunc)
        .iter()
        .fold(0.0, |acc, t| acc + ftq.g(&(xi - t.embedding)))
}

/// Partial sums of the tiling series at each of the increasing radii `radii`.
pub fn tiling_sum_profile(ftq: &PolygonFT, lat_dual: &Lattice2D, xi: &Vec2, radii: &[f64]) -> Vec<f64> {
    let max = radii.iter().copied().fold(0.0, f64::max);
    let pts = points_by_norm(lat_dual, max);
    let mut out = Vec::with_capacity(radii.len());
    let mut acc = 0.0;
    let mut k = 0;
    for &r in radii {
        while k < pts.len() && pts[k].norm() <= r {
            acc += ftq.g(&(xi - pts[k].embedding));
            k += 1;
        }
        out.push(acc);
    }
    out
}

/// A tail radius certified on a sample grid of `B`.
#[derive(Clone, Debug, Serialize)]
pub struct TailRadius {
    pub radius: f64,
    pub epsilon: f64,
    /// Smallest head sum `Σ_{|t*|<=R} g(ξ − t*)` over the samples.
    pub min_head: f64,
    /// Largest head-sum change between neighbouring samples, subtracted as a margin.
    pub continuity_margin: f64,
    pub samples: usize,
    pub numerical: bool,
}

struct HeadGrid {
    points: Vec<Vec2>,
    // (i, j) grid position of each point, for neighbour lookups
    cells: Vec<(i64, i64)>,
}

fn head_grid(cell: &PolygonDomain) -> HeadGrid {
    let (lo, hi) = cell.bounding_box();
    let step = cell.diam() / 64.0;
    let nx = ((hi.x - lo.x) / step).ceil() as i64;
    let ny = ((hi.y - lo.y) / step).ceil() as i64;
    let mut points = Vec::new();
    let mut cells = Vec::new();
    for i in 0..=nx {
        for j in 0..=ny {
            let p = lo + Vec2::new(i as f64 * step, j as f64 * step);
            if cell.contains_interior(&p) || cell.contains(&p) {
                points.push(p);
                cells.push((i, j));
            }
        }
    }
    // boundary points on the grid may be missed; vertices and edge midpoints are added
    for (a, b) in cell.edges() {
        for p in [a, (a + b) * 0.5] {
            points.push(p);
            cells.push((i64::MIN, i64::MIN));
        }
    }
    HeadGrid { points, cells }
}

fn neighbour_margin(grid: &HeadGrid, head: &[f64]) -> f64 {
    use std::collections::HashMap;
    let index: HashMap<(i64, i64), usize> = grid
        .cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.0 != i64::MIN)
        .map(|(k, c)| (*c, k))
        .collect();
    let mut margin: f64 = 0.0;
    for (k, &(i, j)) in grid.cells.iter().enumerate() {
        if i == i64::MIN {
            continue;
        }
        for (di, dj) in [(1, 0), (0, 1), (1, 1), (1, -1)] {
            if let Some(&n) = index.get(&(i + di, j + dj)) {
                margin = margin.max((head[k] - head[n]).abs());
            }
        }
    }
    margin
}

/// Smallest radius `R` on a doubling-then-bisection schedule over the dual lattice's
/// norm shells such that `Σ_{|t*|>R} g(ξ − t*) < ε` on a grid of `B` (step `diam(B)/64`),
/// after subtracting the largest neighbouring-sample variation of the head sum.
pub fn tail_radius(ftq: &PolygonFT, lat_dual: &Lattice2D, cell: &PolygonDomain, epsilon: f64) -> Result<TailRadius> {
    const MAX_RADIUS: f64 = 1e4;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidArgument(format!("epsilon {epsilon} outside (0, 1)")));
    }
    if (ftq.area - 1.0).abs() > 1e-9 {
        return Err(Error::NormalizeFirst { area: ftq.area });
    }
    let grid = head_grid(cell);
    let evaluate = |r: f64| -> (bool, f64, f64) {
        let pts = points_by_norm(lat_dual, r);
        let head: Vec<f64> = grid
            .points
            .iter()
            .map(|xi| pts.iter().fold(0.0, |acc, t| acc + ftq.g(&(xi - t.embedding))))
            .collect();
        let min_head = head.iter().copied().fold(f64::INFINITY, f64::min);
        let margin = neighbour_margin(&grid, &head);
        (min_head - margin > 1.0 - epsilon, min_head, margin)
    };
    let done = |r: f64, (_, min_head, margin): (bool, f64, f64)| TailRadius {
        radius: r,
        epsilon,
        min_head,
        continuity_margin: margin,
        samples: grid.points.len(),
        numerical: true,
    };

    let first = evaluate(0.0);
    if first.0 {
        return Ok(done(0.0, first));
    }
    let shortest = lat_dual.reduced().b1().norm();
    let mut lo = 0.0;
    let mut hi = shortest;
    let mut last_min = first.1;
    let hit = loop {
        let ev = evaluate(hi);
        if ev.0 {
            break ev;
        }
        if hi > MAX_RADIUS || (hi > 8.0 * shortest && (ev.1 - last_min).abs() < 1e-9) {
            return Err(Error::TailDidNotConverge {
                max_radius: hi,
                best_head: ev.1,
            });
        }
        last_min = ev.1;
        lo = hi;
        hi *= 2.0;
    };
    // bisect over the distinct shell radii in (lo, hi]
    let mut shells: Vec<f64> = points_by_norm(lat_dual, hi)
        .iter()
        .map(|p| p.norm())
        .filter(|&r| r > lo && r <= hi)
        .collect();
    shells.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * hi);
    let (mut a, mut b) = (0usize, shells.len() - 1);
    let mut best = (shells[b], hit);
    while a < b {
        let mid = (a + b) / 2;
        let ev = evaluate(shells[mid]);
        if ev.0 {
            best = (shells[mid], ev);
            b = mid;
        } else {
            a = mid + 1;
        }
    }
    if best.0 != shells[b] {
        best = (shells[b], evaluate(shells[b]));
    }
    Ok(done(best.0, best.1))
}

#[derive(Clone, Debug, Serialize)]
pub struct ParsevalCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// `∫_B |φ|²` against `Σ|z_g|²` for a fundamental domain `B` of the dual lattice.
pub fn parseval_phi_check(col: &FiniteColoring, dual_cell: &PolygonDomain) -> Result<ParsevalCheck> {
    require_unit_covolume(&col.tiling().lattice)?;
    let rhs = col.energy();
    let splits = (col.diam() * dual_cell.diam()).ceil() as usize + 1;
    let quad = Quadrature::with_rel_tol(1e-8);
    let lhs = quad
        .polygon(|xi| Complex64::new(phi(col, &xi).norm_sqr(), 0.0), dual_cell, splits)?
        .value
        .re;
    let residual = if rhs > 0.0 { (lhs - rhs).abs() / rhs } else { lhs.abs() };
    Ok(ParsevalCheck { lhs, rhs, residual })
}

/// Sampling parameters for [`projection_slice_check`].
#[derive(Clone, Copy, Debug)]
pub struct SliceGrid {
    /// Longest piece between sampled offsets.
    pub step: f64,
    /// Frequencies compared: `count` points evenly spread over `[-max_freq, max_freq]`.
    pub max_freq: f64,
    pub count: usize,
}

impl Default for SliceGrid {
    fn default() -> Self {
        Self {
            step: 0.05,
            max_freq: 3.0,
            count: 25,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceCheck {
    pub theta: f64,
    pub max_residual: f64,
    pub samples: usize,
}

/// Fourier transform of sampled `π_L f` against `f̂(τu)` along the line.
///
/// `π_L f` is linear between consecutive projections of tile vertices, so each such
/// piece (split further to at most `grid.step`) is sampled just inside both ends and
/// integrated as a line times the exponential with 4-point Gauss–Legendre.
pub fn projection_slice_check(col: &FiniteColoring, ftq: &PolygonFT, theta: f64, grid: &SliceGrid) -> SliceCheck {
    const GL4: [(f64, f64); 4] = [
        (-0.861_136_311_594_052_6, 0.347_854_845_137_453_9),
        (-0.339_981_043_584_856_3, 0.652_145_154_862_546_1),
        (0.339_981_043_584_856_3, 0.652_145_154_862_546_1),
        (0.861_136_311_594_052_6, 0.347_854_845_137_453_9),
    ];
    let u = Vec2::new(theta.cos(), theta.sin());
    if col.is_empty() {
        return SliceCheck { theta, max_residual: 0.0, samples: 0 };
    }
    let q = &col.tiling().domain;
    let width = col.diam() + q.diam();
    let mut knots: Vec<f64> = col
        .support()
        .iter()
        .flat_map(|g| q.vertices().iter().map(move |v| (g.embedding + v).dot(&u)))
        .collect();
    knots.sort_by(f64::total_cmp);
    knots.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * width);
    let mut pieces = Vec::new();
    for w in knots.windows(2) {
        let n = ((w[1] - w[0]) / grid.step).ceil().max(1.0) as usize;
        let h = (w[1] - w[0]) / n as f64;
        for k in 0..n {
            pieces.push((w[0] + k as f64 * h, w[0] + (k + 1) as f64 * h));
        }
    }
    let t_grid: Vec<f64> = pieces
        .iter()
        .flat_map(|&(a, b)| {
            let d = 1e-6 * (b - a);
            [a + d, b - d]
        })
        .collect();
    let samples = projection_samples(col, theta, &t_grid);
    let mut max_residual: f64 = 0.0;
    for j in 0..grid.count {
        let tau = if grid.count == 1 {
            0.0
        } else {
            -grid.max_freq + 2.0 * grid.max_freq * j as f64 / (grid.count - 1) as f64
        };
        let mut acc = Complex64::default();
        for (k, &(a, b)) in pieces.iter().enumerate() {
            let (sa, sb) = (&samples[2 * k], &samples[2 * k + 1]);
            let slope = (sb.value - sa.value) / (sb.t_used - sa.t_used);
            let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
            for (x, w) in GL4 {
                let t = mid + half * x;
                let v = sa.value + slope * (t - sa.t_used);
                acc += v * Complex64::from_polar(w * half, -2.0 * PI * tau * t);
            }
        }
        let exact = f_hat(col, ftq, &(u * tau));
        max_residual = max_residual.max((acc - exact).norm());
    }
    SliceCheck {
        theta,
        max_residual,
        samples: samples.len(),
    }
}

/// `∫_{|ξ|<=radius} |f̂(ξ)|²` by adaptive polar quadrature.
pub fn disk_energy(col: &FiniteColoring, ftq: &PolygonFT, radius: f64, quad: &Quadrature) -> Result<f64> {
    let scale = (col.diam() + col.tiling().domain.diam()).max(1.0);
    let nr = (radius * scale).ceil() as usize;
    let nphi = (2.0 * PI * radius * scale).ceil() as usize;
    Ok(quad
        .disk(|xi| Complex64::new(f_hat(col, ftq, &xi).norm_sqr(), 0.0), radius, (nr.max(1), nphi.max(4)))?
        .value
        .re)
}

/// Summary of the Fourier-side checks for one coloring.
#[derive(Clone, Debug, Serialize)]
pub struct FourierReport {
    pub tiling_sum_min: f64,
    pub tiling_sum_max: f64,
    pub parseval_residual: f64,
    pub slice_residual: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "Rprime")]
    pub r_prime: f64,
    pub epsilon: f64,
    pub numerical: bool,
}

/// Tiling sums at `samples` seeded points of the dual cell, the Parseval residual, the
/// largest slice residual over three angles, and the tail and containment radii.
pub fn fourier_report(
    col: &FiniteColoring,
    epsilon: f64,
    r_trunc: f64,
    slice: &SliceGrid,
    samples: usize,
    seed: u64,
) -> Result<FourierReport> {
    use rand::{Rng, SeedableRng};
    let lat = &col.tiling().lattice;
    require_unit_covolume(lat)?;
    let ftq = PolygonFT::new(&col.tiling().domain);
    let dual = lat.dual();
    let cell = crate::lattice::dual_fundamental_domain(lat);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = cell.bounding_box();
    let (mut smin, mut smax) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut taken = 0;
    while taken < samples {
        let xi = Vec2::new(rng.random_range(lo.x..hi.x), rng.random_range(lo.y..hi.y));
        if !cell.contains(&xi) {
            continue;
        }
        let s = tiling_sum(&ftq, &dual, &xi, r_trunc);
        smin = smin.min(s);
        smax = smax.max(s);
        taken += 1;
    }
    let parseval = parseval_phi_check(col, &cell)?;
    let slice_residual = [0.0, 1.0, 2.0]
        .iter()
        .map(|&th| projection_slice_check(col, &ftq, th, slice).max_residual)
        .fold(0.0, f64::max);
    let tail = tail_radius(&ftq, &dual, &cell, epsilon)?;
    Ok(FourierReport {
        tiling_sum_min: smin,
        tiling_sum_max: smax,
        parseval_residual: parseval.residual,
        slice_residual,
        r: tail.radius,
        r_prime: crate::lattice::containment_radius(&cell, tail.radius),
        epsilon,
        numerical: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::ColoringRule;
    use crate::lattice::dual_fundamental_domain;
    use crate::polygon::Tiling;

    fn unit_square_ft() -> PolygonFT {
        PolygonFT::new(&PolygonDomain::unit_square())
    }

    #[test]
    fn chi_hat_examples() {
        let ft = unit_square_ft();
        assert!((ft.chi_hat(&Vec2::zeros()) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(ft.chi_hat(&Vec2::new(1.0, 0.0)).norm() < 1e-15);
        // ∫_0^1 e^{-πix} dx = 2/(πi)
        let v = ft.chi_hat(&Vec2::new(0.5, 0.0));
        assert!((v - Complex64::new(0.0, -2.0 / PI)).norm() < 1e-14);
        let l = PolygonFT::new(&PolygonDomain::l_tromino());
        assert!((l.chi_hat(&Vec2::zeros()).re - 3.0).abs() < 1e-13);
    }

    #[test]
    fn chi_hat_separable_square() {
        // ∫_0^1 e^{-2πi a x} dx = e^{-πia} sin(πa)/(πa)
        let one_d = |a: f64| Complex64::from_polar(1.0, -PI * a) * sinc(PI * a);
        let ft = unit_square_ft();
        for &(a, b) in &[(0.3, -1.7), (2.5, 0.0), (1e-3, 2e-3), (0.02, -0.01), (7.25, 3.5), (0.05, 4.0)] {
            let exact = one_d(a) * one_d(b);
            assert!((ft.chi_hat(&Vec2::new(a, b)) - exact).norm() < 1e-13, "{a} {b}");
        }
    }

    #[test]
    fn series_and_edge_sum_agree_near_switch() {
        for q in [PolygonDomain::l_tromino(), Tiling::hexagon_norm().domain] {
            let ft = PolygonFT::new(&q);
            let k = TAYLOR_SWITCH / (2.0 * PI * ft.radius);
            for ang in [0.1f64, 1.0, 2.3] {
                let xi = Vec2::new(ang.cos(), ang.sin()) * k;
                let series = ft.chi_hat_series(&(xi * (1.0 - 1e-6)));
                let edges = ft.chi_hat(&(xi * (1.0 + 1e-6)));
                assert!((series - edges).norm() < 1e-5 * ft.area, "{series} {edges}");
            }
        }
    }

    #[test]
    fn chi_hat_matches_quadrature() {
        let q = PolygonDomain::l_tromino();
        let ft = PolygonFT::new(&q);
        let quad = Quadrature::with_rel_tol(1e-12);
        for xi in [Vec2::new(0.7, -0.4), Vec2::new(2.1, 1.3), Vec2::new(0.0, 0.9)] {
            let num = quad
                .polygon(|x| Complex64::from_polar(1.0, -2.0 * PI * xi.dot(&x)), &q, 4)
                .unwrap()
                .value;
            let exact = ft.chi_hat(&xi);
            assert!((num - exact).norm() <= 1e-8 * exact.norm().max(1e-3));
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let ft = PolygonFT::new(&Tiling::l_tromino_norm().domain);
        for xi in [Vec2::new(0.3, 0.1), Vec2::new(-2.0, 5.5), Vec2::new(0.01, 0.0)] {
            assert!((ft.chi_hat(&-xi) - ft.chi_hat(&xi).conj()).norm() < 1e-12);
        }
    }

    #[test]
    fn phi_examples() {
        let t = Tiling::unit_square();
        let col = FiniteColoring::new(
            t.clone(),
            vec![((0, 0), Complex64::new(1.0, 0.0)), ((1, 0), Complex64::new(1.0, 0.0))],
        )
        .unwrap();
        assert!(phi(&col, &Vec2::new(0.5, 0.0)).norm() < 1e-15);
        assert!((phi(&col, &Vec2::zeros()).re - 2.0).abs() < 1e-15);
        let single = FiniteColoring::new(t, vec![((0, 0), Complex64::new(1.0, 0.0))]).unwrap();
        assert!((phi(&single, &Vec2::new(0.37, -4.1)) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn f_hat_at_zero() {
        let t = Tiling::unit_square();
        let parity = FiniteColoring::block(t.clone(), &ColoringRule::Parity, 2);
        let ft = PolygonFT::new(&t.domain);
        assert!(f_hat(&parity, &ft, &Vec2::zeros()).norm() < 1e-15);
        let ones = FiniteColoring::block(t, &ColoringRule::Constant(Complex64::new(1.0, 0.0)), 3);
        assert!((f_hat(&ones, &ft, &Vec2::zeros()).re - 9.0).abs() < 1e-13);
    }

    #[test]
    fn power_density_requires_unit_area() {
        let ft = PolygonFT::new(&PolygonDomain::l_tromino());
        assert!(matches!(ft.power_density(&Vec2::zeros()), Err(Error::NormalizeFirst { .. })));
        let sq = unit_square_ft();
        assert!((sq.power_density(&Vec2::zeros()).unwrap() - 1.0).abs() < 1e-15);
        assert!(sq.power_density(&Vec2::new(1.0, 0.0)).unwrap() < 1e-30);
    }

    #[test]
    fn tiling_sum_square_at_dual_points() {
        let ft = unit_square_ft();
        let dual = Lattice2D::square();
        assert!((tiling_sum(&ft, &dual, &Vec2::zeros(), 50.0) - 1.0).abs() < 1e-12);
        let s = tiling_sum(&ft, &dual, &Vec2::new(2.0, -1.0), 3.0);
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn tiling_sum_profile_is_monotone() {
        let t = Tiling::hexagon_norm();
        let ft = PolygonFT::new(&t.domain);
        let dual = t.lattice.dual();
        let radii: Vec<f64> = (0..=20).map(|k| k as f64 * 2.5).collect();
        let sums = tiling_sum_profile(&ft, &dual, &Vec2::new(0.21, -0.33), &radii);
        assert!(sums.windows(2).all(|w| w[0] <= w[1]));
        assert!(*sums.last().unwrap() <= 1.0 + 1e-9);
        assert_eq!(sums[20], tiling_sum(&ft, &dual, &Vec2::new(0.21, -0.33), 50.0));
    }

    #[test]
    fn tail_radius_square_and_monotonicity() {
        let t = Tiling::unit_square();
        let ft = PolygonFT::new(&t.domain);
        let dual = t.lattice.dual();
        let b = dual_fundamental_domain(&t.lattice);
        let loose = tail_radius(&ft, &dual, &b, 0.99).unwrap();
        assert_eq!(loose.radius, 0.0);
        let half = tail_radius(&ft, &dual, &b, 0.5).unwrap();
        let tight = tail_radius(&ft, &dual, &b, 0.2).unwrap();
        assert!(half.radius > 0.0);
        assert!(tight.radius >= half.radius);
        assert!(half.min_head - half.continuity_margin > 0.5);
        assert!(tail_radius(&ft, &dual, &b, 1.5).is_err());
    }

    #[test]
    fn parseval_single_and_homogeneous() {
        let t = Tiling::unit_square();
        let b = dual_fundamental_domain(&t.lattice);
        let one = FiniteColoring::new(t.clone(), vec![((0, 0), Complex64::new(1.0, 0.0))]).unwrap();
        let c = parseval_phi_check(&one, &b).unwrap();
        assert!((c.lhs - 1.0).abs() < 1e-10 && c.residual < 1e-10);
        let parity = FiniteColoring::block(t, &ColoringRule::Parity, 2);
        let p = parseval_phi_check(&parity, &b).unwrap();
        assert_eq!(p.rhs, 4.0);
        assert!(p.residual < 1e-6);
        let scaled = parseval_phi_check(&parity.times(Complex64::new(0.0, 3.0)), &b).unwrap();
        assert!((scaled.lhs - 9.0 * p.lhs).abs() < 1e-8 * scaled.lhs);
        assert_eq!(scaled.rhs, 36.0);
    }

    #[test]
    fn slice_check_single_square() {
        let t = Tiling::unit_square();
        let ft = PolygonFT::new(&t.domain);
        let one = FiniteColoring::new(t.clone(), vec![((0, 0), Complex64::new(1.0, 0.0))]).unwrap();
        for theta in [0.0, 0.3, 1.9] {
            let c = projection_slice_check(&one, &ft, theta, &SliceGrid::default());
            assert!(c.max_residual < 1e-9, "{c:?}");
        }
        let zero = FiniteColoring::new(t, Vec::new()).unwrap();
        assert_eq!(projection_slice_check(&zero, &ft, 0.3, &SliceGrid::default()).max_residual, 0.0);
    }
}
