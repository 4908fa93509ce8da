//! Globally adaptive tensor-product Gauss–Kronrod (7/15) cubature for complex
//! integrands, on rectangles and on domains mapped onto rectangles (triangles via
//! the Duffy map, polygons by triangulation, disks in polar coordinates).

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::Vec2;
use crate::polygon::PolygonDomain;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// The 15 Kronrod abscissae on [-1, 1] with Kronrod and Gauss weights (Gauss weight 0 off the 7-point subset).
fn rule() -> [(f64, f64, f64); 15] {
    let mut out = [(0.0, 0.0, 0.0); 15];
    for k in 0..8 {
        let wg = if k % 2 == 1 { WG[k / 2] } else { 0.0 };
        out[k] = (-XGK[k], WGK[k], wg);
        out[14 - k] = (XGK[k], WGK[k], wg);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error: f64,
    pub nodes: usize,
}

/// Tolerances for [`Quadrature`]; converged when the summed error estimate is below
/// `max(rel_tol·|I|, abs_tol)`.
#[derive(Clone, Copy, Debug)]
pub struct Quadrature {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_nodes: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self {
            rel_tol: 1e-6,
            abs_tol: 1e-13,
            max_nodes: 10_000_000,
        }
    }
}

#[derive(Clone, Copy)]
struct Cell {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn apply_cell<F: Fn(f64, f64) -> Complex64>(f: &F, x0: f64, x1: f64, y0: f64, y1: f64) -> Cell {
    let r = rule();
    let (cx, hx) = (0.5 * (x0 + x1), 0.5 * (x1 - x0));
    let (cy, hy) = (0.5 * (y0 + y1), 0.5 * (y1 - y0));
    let mut kron = Complex64::default();
    let mut gauss = Complex64::default();
    for &(xi, wkx, wgx) in &r {
        let x = cx + hx * xi;
        for &(yj, wky, wgy) in &r {
            let v = f(x, cy + hy * yj);
            kron += v * (wkx * wky);
            if wgx != 0.0 && wgy != 0.0 {
                gauss += v * (wgx * wgy);
            }
        }
    }
    let jac = hx * hy;
    Cell {
        x0,
        x1,
        y0,
        y1,
        value: kron * jac,
        error: ((kron - gauss) * jac).norm(),
    }
}

impl Quadrature {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    /// `∫∫ f` over `[x0,x1]×[y0,y1]`, starting from an `nx × ny` grid of cells.
    pub fn rectangle<F>(&self, f: F, (x0, x1): (f64, f64), (y0, y1): (f64, f64), (nx, ny): (usize, usize)) -> Result<QuadratureResult>
    where
        F: Fn(f64, f64) -> Complex64,
    {
        const NODES_PER_CELL: usize = 225;
        let (nx, ny) = (nx.max(1), ny.max(1));
        let mut heap = BinaryHeap::with_capacity(nx * ny * 2);
        let (dx, dy) = ((x1 - x0) / nx as f64, (y1 - y0) / ny as f64);
        for i in 0..nx {
            for j in 0..ny {
                let ax = x0 + dx * i as f64;
                let bx = if i + 1 == nx { x1 } else { ax + dx };
                let ay = y0 + dy * j as f64;
                let by = if j + 1 == ny { y1 } else { ay + dy };
                heap.push(apply_cell(&f, ax, bx, ay, by));
            }
        }
        let mut nodes = nx * ny * NODES_PER_CELL;
        loop {
            let (value, error) = heap
                .iter()
                .fold((Complex64::default(), 0.0), |(v, e), c| (v + c.value, e + c.error));
            if error <= (self.rel_tol * value.norm()).max(self.abs_tol) {
                return Ok(QuadratureResult { value, error, nodes });
            }
            if nodes + 4 * NODES_PER_CELL > self.max_nodes {
                return Err(Error::QuadratureNonConvergence {
                    estimate: value.norm(),
                    error,
                    nodes,
                });
            }
            // refine the worst cells in batches so the bookkeeping above stays cheap
            let batch = (heap.len() / 8).max(1);
            for _ in 0..batch {
                let Some(c) = heap.pop() else { break };
                let mx = 0.5 * (c.x0 + c.x1);
                let my = 0.5 * (c.y0 + c.y1);
                for (ax, bx) in [(c.x0, mx), (mx, c.x1)] {
                    for (ay, by) in [(c.y0, my), (my, c.y1)] {
                        heap.push(apply_cell(&f, ax, bx, ay, by));
                    }
                }
                nodes += 4 * NODES_PER_CELL;
            }
        }
    }

    /// `∫ f` over the triangle `abc` through the Duffy map `x = a + u(b−a) + uv(c−b)`.
    pub fn triangle<F>(&self, f: F, tri: &[Vec2; 3], splits: usize) -> Result<QuadratureResult>
    where
        F: Fn(Vec2) -> Complex64,
    {
        let [a, b, c] = *tri;
        let (e1, e2) = (b - a, c - b);
        let det = (e1.x * e2.y - e1.y * e2.x).abs();
        self.rectangle(
            |u, v| f(a + e1 * u + e2 * (u * v)) * (det * u),
            (0.0, 1.0),
            (0.0, 1.0),
            (splits, splits),
        )
    }

    /// `∫ f` over a polygon, one triangle at a time; tolerances apply to the total.
    pub fn polygon<F>(&self, f: F, poly: &PolygonDomain, splits: usize) -> Result<QuadratureResult>
    where
        F: Fn(Vec2) -> Complex64,
    {
        let tris = poly.triangles();
        let inner = Quadrature {
            abs_tol: self.abs_tol / tris.len() as f64,
            ..*self
        };
        let mut total = QuadratureResult {
            value: Complex64::default(),
            error: 0.0,
            nodes: 0,
        };
        for tri in tris {
            let r = inner.triangle(&f, tri, splits)?;
            total.value += r.value;
            total.error += r.error;
            total.nodes += r.nodes;
        }
        Ok(total)
    }

    /// `∫ f` over the disk of the given radius about the origin, in polar coordinates.
    pub fn disk<F>(&self, f: F, radius: f64, (nr, nphi): (usize, usize)) -> Result<QuadratureResult>
    where
        F: Fn(Vec2) -> Complex64,
    {
        self.rectangle(
            |r, phi| f(Vec2::new(r * phi.cos(), r * phi.sin())) * r,
            (0.0, radius),
            (0.0, std::f64::consts::TAU),
            (nr, nphi),
        )
    }

    /// One-dimensional adaptive Gauss–Kronrod 7/15 on `[a, b]` split into `n` starting pieces.
    pub fn interval<F>(&self, f: F, a: f64, b: f64, n: usize) -> Result<QuadratureResult>
    where
        F: Fn(f64) -> Complex64,
    {
        self.rectangle(|x, _| f(x), (a, b), (0.0, 1.0), (n, 1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn kronrod_rule_is_exact_to_degree_22() {
        let r = rule();
        for p in 0..=22 {
            let k: f64 = r.iter().map(|(x, w, _)| w * x.powi(p)).sum();
            let exact = if p % 2 == 0 { 2.0 / (p as f64 + 1.0) } else { 0.0 };
            assert!((k - exact).abs() < 1e-14, "degree {p}: {k} vs {exact}");
        }
        for p in 0..=13 {
            let g: f64 = r.iter().map(|(x, _, w)| w * x.powi(p)).sum();
            let exact = if p % 2 == 0 { 2.0 / (p as f64 + 1.0) } else { 0.0 };
            assert!((g - exact).abs() < 1e-14, "gauss degree {p}");
        }
    }

    #[test]
    fn rectangle_oscillatory() {
        let q = Quadrature::with_rel_tol(1e-10);
        // ∫_0^1∫_0^1 e^{2πi(3x + 2y)} (x + 1) dx dy = 0 for the y factor
        let r = q
            .rectangle(
                |x, y| Complex64::from_polar(1.0, std::f64::consts::TAU * (3.0 * x + 0.5 * y)),
                (0.0, 1.0),
                (0.0, 1.0),
                (1, 1),
            )
            .unwrap();
        assert!(r.value.norm() < 1e-10);
        let smooth = q.rectangle(|x, y| re((x * y).exp()), (0.0, 2.0), (0.0, 1.0), (1, 1)).unwrap();
        // ∫_0^1 (e^{2y} - 1)/y dy = Ein(2)
        let mut ein2 = 0.0;
        let mut term = 1.0;
        for k in 1..40 {
            term *= 2.0 / k as f64;
            ein2 += term / k as f64;
        }
        assert!((smooth.value.re - ein2).abs() < 1e-8);
    }

    #[test]
    fn triangle_and_polygon_areas() {
        let q = Quadrature::default();
        let tri = [Vec2::new(0.0, 0.0), Vec2::new(2.0, 0.0), Vec2::new(0.0, 1.0)];
        let a = q.triangle(|_| re(1.0), &tri, 1).unwrap();
        assert!((a.value.re - 1.0).abs() < 1e-14);
        // ∫ x over the triangle = area * centroid_x = 1 * 2/3
        let m = q.triangle(|p| re(p.x), &tri, 1).unwrap();
        assert!((m.value.re - 2.0 / 3.0).abs() < 1e-14);
        let l = PolygonDomain::l_tromino();
        let r = q.polygon(|p| re(p.x * p.y), &l, 1).unwrap();
        // cells (0,0), (1,0), (0,1): 1/4 + 3/4 + 3/4
        assert!((r.value.re - 1.75).abs() < 1e-12);
    }

    #[test]
    fn disk_area_and_gaussian() {
        let q = Quadrature::default();
        let d = q.disk(|_| re(1.0), 2.0, (1, 4)).unwrap();
        assert!((d.value.re - 4.0 * std::f64::consts::PI).abs() < 1e-10);
        let g = q.disk(|p| re((-p.norm_squared()).exp()), 6.0, (2, 4)).unwrap();
        assert!((g.value.re - std::f64::consts::PI * (1.0 - (-36f64).exp())).abs() < 1e-6);
    }

    #[test]
    fn node_cap_is_reported() {
        let q = Quadrature {
            rel_tol: 1e-14,
            abs_tol: 0.0,
            max_nodes: 2000,
        };
        let err = q
            .rectangle(|x, _| re(if x < 0.3 { 1.0 } else { 0.0 }), (0.0, 1.0), (0.0, 1.0), (1, 1))
            .unwrap_err();
        assert!(matches!(err, Error::QuadratureNonConvergence { .. }));
    }
}
