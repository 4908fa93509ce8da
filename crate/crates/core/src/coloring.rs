//! Weights on lattice points and the coloring `f(x) = Σ z_g χ_Q(x − g)`.

use std::collections::HashMap;
use std::path::Path;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clip::{clip_convex, signed_area};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, Vec2};
use crate::polygon::Tiling;

/// How weights are assigned to lattice points.
#[derive(Clone, Debug, PartialEq)]
pub enum ColoringRule {
    /// `(-1)^(m+n)`.
    Parity,
    /// Independent ±1 with `P(+1) = bias`, keyed on `(seed, m, n)`.
    Random { seed: u64, bias: f64 },
    Constant(Complex64),
    /// Explicit weights; points absent from the table get 0.
    Table(HashMap<(i64, i64), Complex64>),
}

impl ColoringRule {
    pub fn random(seed: u64) -> Self {
        ColoringRule::Random { seed, bias: 0.5 }
    }

    pub fn weight(&self, coeffs: (i64, i64)) -> Complex64 {
        match self {
            ColoringRule::Parity => {
                if (coeffs.0 + coeffs.1).rem_euclid(2) == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(-1.0, 0.0)
                }
            }
            ColoringRule::Random { seed, bias } => {
                let mut rng = point_rng(*seed, coeffs);
                if rng.random::<f64>() < *bias {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(-1.0, 0.0)
                }
            }
            ColoringRule::Constant(c) => *c,
            ColoringRule::Table(map) => map.get(&coeffs).copied().unwrap_or_default(),
        }
    }

    /// Reads `m n re im` lines; `#` starts a comment.
    pub fn table_from_str(text: &str) -> Result<Self> {
        let mut map = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Config(format!("table line {}: {raw:?}", lineno + 1));
            if fields.len() != 4 {
                return Err(bad());
            }
            let m: i64 = fields[0].parse().map_err(|_| bad())?;
            let n: i64 = fields[1].parse().map_err(|_| bad())?;
            let re: f64 = fields[2].parse().map_err(|_| bad())?;
            let im: f64 = fields[3].parse().map_err(|_| bad())?;
            if map.insert((m, n), Complex64::new(re, im)).is_some() {
                return Err(Error::Config(format!(
                    "table line {}: duplicate point ({m}, {n})",
                    lineno + 1
                )));
            }
        }
        Ok(ColoringRule::Table(map))
    }

    pub fn table_from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::table_from_str(&std::fs::read_to_string(path)?)
    }
}

fn point_rng(seed: u64, (m, n): (i64, i64)) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&m.to_le_bytes());
    key[16..24].copy_from_slice(&n.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// A coloring supported on finitely many tiles.
#[derive(Clone, Debug)]
pub struct FiniteColoring {
    tiling: Tiling,
    support: Vec<LatticePoint>,
    weights: Vec<Complex64>,
    index: HashMap<(i64, i64), usize>,
}

impl FiniteColoring {
    /// Builds from `(coefficients, weight)` pairs. Duplicate points are rejected.
    pub fn new(tiling: Tiling, entries: impl IntoIterator<Item = ((i64, i64), Complex64)>) -> Result<Self> {
        let mut pairs: Vec<((i64, i64), Complex64)> = entries.into_iter().collect();
        pairs.sort_by_key(|p| p.0);
        if let Some(w) = pairs.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidArgument(format!("duplicate support point {:?}", w[0].0)));
        }
        if let Some(p) = pairs.iter().find(|p| !p.1.re.is_finite() || !p.1.im.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite weight at {:?}", p.0)));
        }
        let support: Vec<LatticePoint> = pairs
            .iter()
            .map(|(c, _)| tiling.lattice.point(c.0, c.1))
            .collect();
        let weights = pairs.iter().map(|p| p.1).collect();
        let index = pairs.iter().enumerate().map(|(i, p)| (p.0, i)).collect();
        Ok(Self {
            tiling,
            support,
            weights,
            index,
        })
    }

    /// Weights from `rule` on the given points.
    pub fn from_rule(tiling: Tiling, rule: &ColoringRule, points: &[(i64, i64)]) -> Result<Self> {
        Self::new(tiling, points.iter().map(|&c| (c, rule.weight(c))))
    }

    /// `rule` on the `{0..n-1}²` block of lattice coefficients.
    pub fn block(tiling: Tiling, rule: &ColoringRule, n: i64) -> Self {
        let pts: Vec<_> = (0..n).flat_map(|m| (0..n).map(move |k| (m, k))).collect();
        Self::from_rule(tiling, rule, &pts).unwrap()
    }

    pub fn tiling(&self) -> &Tiling {
        &self.tiling
    }

    pub fn support(&self) -> &[LatticePoint] {
        &self.support
    }

    pub fn weights(&self) -> &[Complex64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn weight(&self, coeffs: (i64, i64)) -> Option<Complex64> {
        self.index.get(&coeffs).map(|&i| self.weights[i])
    }

    /// `f(x)`: the weight of the tile containing `x`, or 0 off the support.
    pub fn evaluate_f(&self, x: &Vec2) -> Result<Complex64> {
        let t = self.tiling.locate(x)?;
        Ok(self.weight(t.coeffs).unwrap_or_default())
    }

    /// `Σ |z_g|²`.
    pub fn energy(&self) -> f64 {
        self.weights.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn max_abs_weight(&self) -> f64 {
        self.weights.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Diameter of the support embeddings.
    pub fn diam(&self) -> f64 {
        let pts: Vec<Vec2> = self.support.iter().map(|p| p.embedding).collect();
        let hull = convex_hull(&pts);
        let mut best: f64 = 0.0;
        for i in 0..hull.len() {
            for j in i + 1..hull.len() {
                best = best.max((hull[i] - hull[j]).norm());
            }
        }
        best
    }

    /// Center of the support's bounding box shifted by the tile centroid.
    pub fn support_center(&self) -> Vec2 {
        if self.support.is_empty() {
            return self.tiling.domain.centroid();
        }
        let (mut lo, mut hi) = (
            Vec2::repeat(f64::INFINITY),
            Vec2::repeat(f64::NEG_INFINITY),
        );
        for p in &self.support {
            lo = lo.inf(&p.embedding);
            hi = hi.sup(&p.embedding);
        }
        (lo + hi) * 0.5 + self.tiling.domain.centroid()
    }

    /// Same weights on the lattice and domain scaled by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) {
            return Err(Error::InvalidArgument(format!("scale factor {factor}")));
        }
        let tiling = self.tiling.scaled(factor)?;
        Self::new(
            tiling,
            self.support
                .iter()
                .map(|p| p.coeffs)
                .zip(self.weights.iter().copied()),
        )
    }

    /// Weights multiplied by `c`.
    pub fn times(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.weights.iter_mut().for_each(|z| *z *= c);
        out
    }

    /// `m n re im` table of the weights.
    pub fn to_table(&self) -> String {
        let mut out = String::from("# m n re im\n");
        for (p, z) in self.support.iter().zip(&self.weights) {
            out.push_str(&format!("{} {} {} {}\n", p.coeffs.0, p.coeffs.1, z.re, z.im));
        }
        out
    }
}

/// Scales lattice, domain and support by `factor`, keeping weights.
pub fn scale_coloring(col: &FiniteColoring, factor: f64) -> Result<FiniteColoring> {
    col.scaled(factor)
}

pub fn energy(col: &FiniteColoring) -> f64 {
    col.energy()
}

/// Whether the half-open tile `t + Q` meets the closed box `[0, size]²`.
pub fn tile_meets_box(tiling: &Tiling, t: &Vec2, size: f64) -> bool {
    let q = &tiling.domain;
    let (lo, hi) = q.bounding_box();
    if lo.x + t.x > size || hi.x + t.x < 0.0 || lo.y + t.y > size || hi.y + t.y < 0.0 {
        return false;
    }
    let rect = [
        Vec2::new(0.0, 0.0),
        Vec2::new(size, 0.0),
        Vec2::new(size, size),
        Vec2::new(0.0, size),
    ];
    let area_floor = 1e-12 * q.diam() * q.diam();
    let mut contacts: Vec<Vec<Vec2>> = Vec::new();
    for tri in q.triangles() {
        let moved = [tri[0] + t, tri[1] + t, tri[2] + t];
        let piece = clip_convex(&moved, &rect);
        if signed_area(&piece) > area_floor {
            return true;
        }
        if !piece.is_empty() {
            contacts.push(piece);
        }
    }
    // zero-area contact: decided by whether the tile owns any contact point
    contacts.iter().any(|piece| {
        let n = piece.len();
        (0..n).any(|i| {
            let a = piece[i];
            let b = piece[(i + 1) % n];
            q.contains(&(a - t)) || q.contains(&((a + b) * 0.5 - t))
        })
    })
}

/// All `t` with `(t + Q) ∩ [0, R]² ≠ ∅`, weighted by `rule`.
pub fn restrict_to_box(tiling: &Tiling, rule: &ColoringRule, size: f64) -> Result<FiniteColoring> {
    if !(size > 0.0) {
        return Err(Error::InvalidArgument(format!("box size {size}")));
    }
    let q = &tiling.domain;
    let center = Vec2::new(0.5 * size, 0.5 * size) - q.centroid();
    let reach = size * std::f64::consts::FRAC_1_SQRT_2 + q.radius_about(&q.centroid()) + 1e-9;
    let pts: Vec<(i64, i64)> = tiling
        .lattice
        .points_within(&center, reach)
        .into_iter()
        .filter(|t| tile_meets_box(tiling, &t.embedding, size))
        .map(|t| t.coeffs)
        .collect();
    FiniteColoring::from_rule(tiling.clone(), rule, &pts)
}

/// Andrew's monotone chain; counterclockwise, no repeated endpoint.
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: &Vec2, a: &Vec2, b: &Vec2| (a - o).perp(&(b - o));
    let mut lower: Vec<Vec2> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(*p);
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(*p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn parity_evaluation() {
        let col = FiniteColoring::block(Tiling::unit_square(), &ColoringRule::Parity, 4);
        assert_eq!(col.evaluate_f(&Vec2::new(0.5, 0.5)).unwrap(), c(1.0, 0.0));
        assert_eq!(col.evaluate_f(&Vec2::new(1.5, 0.5)).unwrap(), c(-1.0, 0.0));
        assert_eq!(col.evaluate_f(&Vec2::new(7.5, 0.5)).unwrap(), c(0.0, 0.0));
        assert_eq!(col.evaluate_f(&Vec2::new(-0.5, -3.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn box_restriction_unit_square() {
        let col = restrict_to_box(&Tiling::unit_square(), &ColoringRule::Parity, 3.0).unwrap();
        let mut got: Vec<_> = col.support().iter().map(|p| p.coeffs).collect();
        got.sort();
        let expected: Vec<_> = (0..4).flat_map(|m| (0..4).map(move |n| (m, n))).collect();
        assert_eq!(got, expected);
        assert_eq!(col.len(), 16);
        assert!((col.diam() - 3.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn box_restriction_hexagon_grows_like_area() {
        let t = Tiling::hexagon_norm();
        let rule = ColoringRule::Constant(c(1.0, 0.0));
        let n10 = restrict_to_box(&t, &rule, 10.0).unwrap().len() as f64;
        let n40 = restrict_to_box(&t, &rule, 40.0).unwrap().len() as f64;
        // boundary layer: perimeter 4R times a width of at most diam(Q)
        let slack = 4.0 * t.domain.diam();
        assert!((n10 - 100.0).abs() <= slack * 10.0);
        assert!((n40 / 1600.0 - 1.0).abs() < (n10 / 100.0 - 1.0).abs());
    }

    #[test]
    fn energy_examples() {
        let t = Tiling::unit_square();
        let col = FiniteColoring::block(t.clone(), &ColoringRule::random(3), 5);
        assert_eq!(col.energy(), 25.0);
        let empty = FiniteColoring::new(t.clone(), Vec::new()).unwrap();
        assert_eq!(empty.energy(), 0.0);
        let mixed = FiniteColoring::new(
            t,
            vec![((0, 0), c(1.0, 0.0)), ((1, 0), c(0.0, 2.0)), ((2, 0), c(-2.0, 0.0))],
        )
        .unwrap();
        assert_eq!(energy(&mixed), 9.0);
    }

    #[test]
    fn duplicates_rejected() {
        let t = Tiling::unit_square();
        let err = FiniteColoring::new(t, vec![((0, 0), c(1.0, 0.0)), ((0, 0), c(2.0, 0.0))]);
        assert!(err.is_err());
    }

    #[test]
    fn random_rule_is_keyed_on_seed_and_point() {
        let a = ColoringRule::random(11);
        let b = ColoringRule::random(11);
        let other = ColoringRule::random(12);
        let pts: Vec<_> = (0..10).flat_map(|m| (0..10).map(move |n| (m, n))).collect();
        assert!(pts.iter().all(|&p| a.weight(p) == b.weight(p)));
        assert!(pts.iter().any(|&p| a.weight(p) != other.weight(p)));
        let biased = ColoringRule::Random { seed: 5, bias: 1.0 };
        assert!(pts.iter().all(|&p| biased.weight(p) == c(1.0, 0.0)));
    }

    #[test]
    fn table_parsing() {
        let text = "# header\n0 0 1 0\n1 -2 0.5 -0.25 # trailing\n\n";
        let rule = ColoringRule::table_from_str(text).unwrap();
        assert_eq!(rule.weight((1, -2)), c(0.5, -0.25));
        assert_eq!(rule.weight((5, 5)), c(0.0, 0.0));
        assert!(ColoringRule::table_from_str("0 0 1").is_err());
        assert!(ColoringRule::table_from_str("0 0 1 0\n0 0 2 0").is_err());
        let col = FiniteColoring::block(Tiling::unit_square(), &ColoringRule::Parity, 2);
        let back = ColoringRule::table_from_str(&col.to_table()).unwrap();
        assert_eq!(back.weight((1, 0)), c(-1.0, 0.0));
    }

    #[test]
    fn scaling_identity_and_half() {
        let col = FiniteColoring::block(Tiling::unit_square(), &ColoringRule::Parity, 3);
        let same = scale_coloring(&col, 1.0).unwrap();
        assert_eq!(same.support(), col.support());
        assert_eq!(same.weights(), col.weights());
        let half = scale_coloring(&col, 0.5).unwrap();
        assert_eq!(half.tiling().domain.area(), 0.25);
        assert_eq!(half.support()[4].embedding, col.support()[4].embedding * 0.5);
        assert!(scale_coloring(&col, 0.0).is_err());
    }

    #[test]
    fn hull_diameter_matches_brute_force() {
        let col = restrict_to_box(&Tiling::l_tromino_norm(), &ColoringRule::Parity, 6.0).unwrap();
        let pts: Vec<_> = col.support().iter().map(|p| p.embedding).collect();
        let mut brute: f64 = 0.0;
        for a in &pts {
            for b in &pts {
                brute = brute.max((a - b).norm());
            }
        }
        assert!((col.diam() - brute).abs() < 1e-12);
    }
}
