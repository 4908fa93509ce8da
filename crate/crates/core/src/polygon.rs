//! Polygonal fundamental domains, point location into tiles and tiling validation.
//!
//! Tiles are half-open: a boundary point belongs to the tile that contains
//! `x + δ·(1, η)` for infinitesimal `δ` and `0 < η ≪ 1`. On an edge this keeps
//! the edge iff its inward normal has positive x, or zero x and positive y; at a
//! vertex it keeps the vertex iff that direction points into the interior angle.
//! Translates of a tile then partition the plane exactly.

use serde::Serialize;

use crate::clip::{clip_convex, cross, signed_area};
use crate::error::{Error, Result};
use crate::lattice::{Lattice2D, LatticePoint, Vec2};

/// Perturbation direction defining the half-open convention.
const TIE_DIRECTION: (f64, f64) = (1.0, 1e-9);

#[derive(Clone, Debug)]
pub struct PolygonDomain {
    vertices: Vec<Vec2>,
    triangles: Vec<[Vec2; 3]>,
    area: f64,
    diam: f64,
    centroid: Vec2,
}

impl PolygonDomain {
    /// Builds a simple polygon. Clockwise input is reversed to counterclockwise.
    pub fn new(mut vertices: Vec<Vec2>) -> Result<Self> {
        if vertices.len() > 1 && vertices[0] == vertices[vertices.len() - 1] {
            vertices.pop();
        }
        if vertices.len() < 3 {
            return Err(Error::InvalidPolygon("fewer than 3 vertices".into()));
        }
        if vertices.iter().any(|v| !v.x.is_finite() || !v.y.is_finite()) {
            return Err(Error::InvalidPolygon("non-finite vertex".into()));
        }
        let mut area = signed_area(&vertices);
        if area < 0.0 {
            vertices.reverse();
            area = -area;
        }
        let diam = vertex_diameter(&vertices);
        if !(area > 1e-14 * diam * diam) {
            return Err(Error::InvalidPolygon("zero area".into()));
        }
        if let Some((i, j)) = first_self_intersection(&vertices) {
            return Err(Error::InvalidPolygon(format!(
                "edges {i} and {j} intersect"
            )));
        }
        let triangles = triangulate(&vertices);
        let centroid = triangles.iter().fold(Vec2::zeros(), |acc, t| {
            acc + (t[0] + t[1] + t[2]) / 3.0 * signed_area(t)
        }) / area;
        Ok(Self {
            vertices,
            triangles,
            area,
            diam,
            centroid,
        })
    }

    pub fn from_points(points: &[[f64; 2]]) -> Result<Self> {
        Self::new(points.iter().map(|p| Vec2::new(p[0], p[1])).collect())
    }

    /// `[0,1]²`.
    pub fn unit_square() -> Self {
        Self::from_points(&[[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]).unwrap()
    }

    /// Three unit squares in an L: cells (0,0), (1,0), (0,1).
    pub fn l_tromino() -> Self {
        Self::from_points(&[
            [0.0, 0.0],
            [2.0, 0.0],
            [2.0, 1.0],
            [1.0, 1.0],
            [1.0, 2.0],
            [0.0, 2.0],
        ])
        .unwrap()
    }

    /// Regular hexagon centered at the origin with a vertex at angle `phase`.
    pub fn regular_hexagon(circumradius: f64, phase: f64) -> Self {
        let verts = (0..6)
            .map(|k| {
                let a = phase + k as f64 * std::f64::consts::FRAC_PI_3;
                Vec2::new(circumradius * a.cos(), circumradius * a.sin())
            })
            .collect();
        Self::new(verts).unwrap()
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn triangles(&self) -> &[[Vec2; 3]] {
        &self.triangles
    }

    /// Shoelace area.
    pub fn area(&self) -> f64 {
        self.area
    }

    /// Largest pairwise vertex distance.
    pub fn diam(&self) -> f64 {
        self.diam
    }

    pub fn centroid(&self) -> Vec2 {
        self.centroid
    }

    /// Largest vertex norm, measured from the origin.
    pub fn circumradius(&self) -> f64 {
        self.vertices.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest vertex distance from `c`.
    pub fn radius_about(&self, c: &Vec2) -> f64 {
        self.vertices
            .iter()
            .map(|v| (v - c).norm())
            .fold(0.0, f64::max)
    }

    /// `(min, max)` of `x · dir` over the polygon.
    pub fn extent_along(&self, dir: &Vec2) -> (f64, f64) {
        self.vertices
            .iter()
            .map(|v| v.dot(dir))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), d| {
                (lo.min(d), hi.max(d))
            })
    }

    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        let (x0, x1) = self.extent_along(&Vec2::new(1.0, 0.0));
        let (y0, y1) = self.extent_along(&Vec2::new(0.0, 1.0));
        (Vec2::new(x0, y0), Vec2::new(x1, y1))
    }

    pub fn translated(&self, by: &Vec2) -> Self {
        Self::new(self.vertices.iter().map(|v| v + by).collect()).unwrap()
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) {
            return Err(Error::InvalidArgument(format!("scale factor {factor}")));
        }
        Self::new(self.vertices.iter().map(|v| v * factor).collect())
    }

    /// Edges as `(start, end)` pairs in counterclockwise order.
    pub fn edges(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    fn boundary_tol(&self) -> f64 {
        1e-10 * self.diam
    }

    /// Half-open membership (see module docs).
    pub fn contains(&self, p: &Vec2) -> bool {
        let tol = self.boundary_tol();
        let n = self.vertices.len();
        for i in 0..n {
            if (p - self.vertices[i]).norm() <= tol {
                return self.tie_direction_in_corner(i);
            }
        }
        for (a, b) in self.edges() {
            let e = b - a;
            let len = e.norm();
            let rel = p - a;
            let along = rel.dot(&e) / len;
            let dist = cross(&e, &rel) / len;
            if dist.abs() <= tol && along > 0.0 && along < len {
                let inward = Vec2::new(-e.y, e.x) / len;
                let w = Vec2::new(TIE_DIRECTION.0, TIE_DIRECTION.1);
                return inward.dot(&w) > 0.0;
            }
        }
        self.contains_interior(p)
    }

    /// Even-odd test, ignoring the boundary convention.
    pub fn contains_interior(&self, p: &Vec2) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    fn tie_direction_in_corner(&self, i: usize) -> bool {
        let n = self.vertices.len();
        let v = self.vertices[i];
        let out = self.vertices[(i + 1) % n] - v;
        let back = self.vertices[(i + n - 1) % n] - v;
        let w = Vec2::new(TIE_DIRECTION.0, TIE_DIRECTION.1);
        let angle = |from: &Vec2, to: &Vec2| {
            let a = cross(from, to).atan2(from.dot(to));
            if a < 0.0 {
                a + std::f64::consts::TAU
            } else {
                a
            }
        };
        let aw = angle(&out, &w);
        aw > 0.0 && aw < angle(&out, &back)
    }

    /// Area of the intersection with `other`, via pairwise triangle clipping.
    pub fn intersection_area(&self, other: &PolygonDomain) -> f64 {
        let (alo, ahi) = self.bounding_box();
        let (blo, bhi) = other.bounding_box();
        if alo.x > bhi.x || blo.x > ahi.x || alo.y > bhi.y || blo.y > ahi.y {
            return 0.0;
        }
        let mut total = 0.0;
        for ta in &self.triangles {
            for tb in &other.triangles {
                total += signed_area(&clip_convex(ta, tb));
            }
        }
        total
    }

    /// Parameter intervals `[s0, s1]` where the line `{x : x·u = t}`, parameterized
    /// by `s = x·u_perp`, crosses the interior of this polygon translated by `shift`.
    /// Returns `None` when the line runs along an edge over positive length.
    pub fn chord_intervals(
        &self,
        shift: &Vec2,
        u: &Vec2,
        u_perp: &Vec2,
        t: f64,
    ) -> Option<Vec<(f64, f64)>> {
        let tol = 1e-12 * (self.diam + shift.norm());
        let n = self.vertices.len();
        let mut d = Vec::with_capacity(n);
        let mut s = Vec::with_capacity(n);
        for v in &self.vertices {
            let p = v + shift;
            let dv = p.dot(u) - t;
            d.push(if dv.abs() <= tol { 0.0 } else { dv });
            s.push(p.dot(u_perp));
        }
        let mut crossings: Vec<f64> = Vec::new();
        for i in 0..n {
            let j = (i + 1) % n;
            if d[i] == 0.0 && d[j] == 0.0 && (s[i] - s[j]).abs() > tol {
                return None;
            }
            // zero counts as positive: the line is nudged off every vertex consistently
            let pi = d[i] >= 0.0;
            let pj = d[j] >= 0.0;
            if pi != pj {
                let w = d[i] / (d[i] - d[j]);
                crossings.push(s[i] + (s[j] - s[i]) * w);
            }
        }
        crossings.sort_by(|a, b| a.total_cmp(b));
        let min_len = 1e-12 * self.diam;
        Some(
            crossings
                .chunks_exact(2)
                .map(|c| (c[0], c[1]))
                .filter(|(a, b)| b - a > min_len)
                .collect(),
        )
    }
}

fn vertex_diameter(v: &[Vec2]) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            best = best.max((v[i] - v[j]).norm());
        }
    }
    best
}

fn segments_intersect(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let o1 = cross(&(b - a), &(c - a));
    let o2 = cross(&(b - a), &(d - a));
    let o3 = cross(&(d - c), &(a - c));
    let o4 = cross(&(d - c), &(b - c));
    if ((o1 > 0.0 && o2 < 0.0) || (o1 < 0.0 && o2 > 0.0))
        && ((o3 > 0.0 && o4 < 0.0) || (o3 < 0.0 && o4 > 0.0))
    {
        return true;
    }
    let on = |p: Vec2, q: Vec2, r: Vec2, o: f64| {
        o == 0.0
            && r.x >= p.x.min(q.x)
            && r.x <= p.x.max(q.x)
            && r.y >= p.y.min(q.y)
            && r.y <= p.y.max(q.y)
    };
    on(a, b, c, o1) || on(a, b, d, o2) || on(c, d, a, o3) || on(c, d, b, o4)
}

fn first_self_intersection(v: &[Vec2]) -> Option<(usize, usize)> {
    let n = v.len();
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            if segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]) {
                return Some((i, j));
            }
        }
    }
    None
}

fn in_triangle_closed(p: &Vec2, a: &Vec2, b: &Vec2, c: &Vec2) -> bool {
    let eps = -1e-14;
    cross(&(b - a), &(p - a)) >= eps
        && cross(&(c - b), &(p - b)) >= eps
        && cross(&(a - c), &(p - c)) >= eps
}

/// Ear-clipping triangulation of a simple counterclockwise polygon.
pub fn triangulate(vertices: &[Vec2]) -> Vec<[Vec2; 3]> {
    let mut idx: Vec<usize> = (0..vertices.len()).collect();
    let mut out = Vec::with_capacity(vertices.len().saturating_sub(2));
    while idx.len() > 3 {
        let m = idx.len();
        let mut clipped = false;
        for k in 0..m {
            let (ip, ic, inx) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            let (a, b, c) = (vertices[ip], vertices[ic], vertices[inx]);
            let turn = cross(&(b - a), &(c - b));
            if turn.abs() <= 1e-15 * (b - a).norm() * (c - b).norm() {
                // collinear vertex contributes nothing
                idx.remove(k);
                clipped = true;
                break;
            }
            if turn < 0.0 {
                continue;
            }
            let blocked = idx.iter().any(|&j| {
                j != ip && j != ic && j != inx && in_triangle_closed(&vertices[j], &a, &b, &c)
            });
            if !blocked {
                out.push([a, b, c]);
                idx.remove(k);
                clipped = true;
                break;
            }
        }
        if !clipped {
            break;
        }
    }
    if idx.len() == 3 {
        let t = [vertices[idx[0]], vertices[idx[1]], vertices[idx[2]]];
        if signed_area(&t).abs() > 0.0 {
            out.push(t);
        }
    }
    out
}

/// A fundamental domain paired with the lattice it is meant to tile with.
#[derive(Clone, Debug)]
pub struct Tiling {
    pub domain: PolygonDomain,
    pub lattice: Lattice2D,
    reach: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TilingReport {
    pub area_match: bool,
    pub area_residual: f64,
    pub overlap_area_max: f64,
    pub coverage_miss_count: usize,
    pub samples: usize,
    pub pass: bool,
}

impl Tiling {
    pub fn new(domain: PolygonDomain, lattice: Lattice2D) -> Self {
        let reach = domain.radius_about(&domain.centroid()) * (1.0 + 1e-9) + 1e-12;
        Self {
            domain,
            lattice,
            reach,
        }
    }

    pub fn unit_square() -> Self {
        Self::new(PolygonDomain::unit_square(), Lattice2D::square())
    }

    /// L-tromino scaled to area 1 with a covolume-1 lattice it tiles.
    pub fn l_tromino_norm() -> Self {
        let s = 3f64.powf(-0.5);
        let lat = Lattice2D::new([s, s], [-s, 2.0 * s]).unwrap();
        Self::new(PolygonDomain::l_tromino().scaled(s).unwrap(), lat)
    }

    /// Area-1 regular hexagon with the covolume-1 hexagonal lattice.
    pub fn hexagon_norm() -> Self {
        let lat = Lattice2D::hexagonal();
        Self::new(lat.voronoi_cell(), lat)
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Ok(Self::new(
            self.domain.scaled(factor)?,
            self.lattice.scaled(factor)?,
        ))
    }

    /// Lattice points `t` whose translate `t + Q` can contain `x`.
    pub fn candidates(&self, x: &Vec2) -> Vec<LatticePoint> {
        self.lattice
            .points_within(&(x - self.domain.centroid()), self.reach)
    }

    /// The unique `t` with `x ∈ t + Q` under the half-open convention.
    pub fn locate(&self, x: &Vec2) -> Result<LatticePoint> {
        let cands = self.candidates(x);
        if let Some(t) = cands.iter().find(|t| self.domain.contains(&(x - t.embedding))) {
            return Ok(*t);
        }
        // rounding in different translates can leave a point at the edge of the boundary
        // band unclaimed; step along the tie direction, which is what the convention means,
        // and upwards for near-horizontal edges where that direction barely moves off the edge
        let w = Vec2::new(TIE_DIRECTION.0, TIE_DIRECTION.1);
        for dir in [w, Vec2::new(0.0, 1.0)] {
            for k in 2..6 {
                let y = x + dir * (self.domain.boundary_tol() * f64::from(1u32 << k));
                if let Some(t) = cands.iter().find(|t| self.domain.contains(&(y - t.embedding))) {
                    return Ok(*t);
                }
            }
        }
        Err(Error::LocationFailure { x: x.x, y: x.y })
    }

    /// Checks area against covolume, pairwise overlaps of nearby translates, and
    /// single coverage of a 100×100 sample grid over a lattice cell.
    pub fn validate(&self) -> TilingReport {
        let cov = self.lattice.covolume();
        let area_residual = (self.domain.area() - cov).abs();
        let area_match = area_residual < 1e-9 * cov;

        let mut overlap_area_max: f64 = 0.0;
        for t in self.lattice.enumerate_points(2.0 * self.domain.diam()) {
            if t.coeffs == (0, 0) {
                continue;
            }
            let moved = self.domain.translated(&t.embedding);
            overlap_area_max = overlap_area_max.max(self.domain.intersection_area(&moved));
        }

        const GRID: usize = 100;
        let origin = self.domain.vertices()[0];
        let (b1, b2) = (self.lattice.b1(), self.lattice.b2());
        let mut misses = 0;
        for i in 0..GRID {
            for j in 0..GRID {
                let p = origin + b1 * (i as f64 / GRID as f64) + b2 * (j as f64 / GRID as f64);
                let hits = self
                    .candidates(&p)
                    .iter()
                    .filter(|t| self.domain.contains(&(p - t.embedding)))
                    .count();
                if hits != 1 {
                    misses += 1;
                }
            }
        }
        TilingReport {
            area_match,
            area_residual,
            overlap_area_max,
            coverage_miss_count: misses,
            samples: GRID * GRID,
            pass: area_match && overlap_area_max < 1e-9 && misses == 0,
        }
    }
}

pub fn validate_tiling(domain: &PolygonDomain, lattice: &Lattice2D) -> TilingReport {
    Tiling::new(domain.clone(), lattice.clone()).validate()
}

pub fn locate(domain: &PolygonDomain, lattice: &Lattice2D, x: &Vec2) -> Result<LatticePoint> {
    Tiling::new(domain.clone(), lattice.clone()).locate(x)
}
