//! Exact restriction of a coloring to a line.
//!
//! A line is `{t·u + s·u⊥ : s ∈ ℝ}` with `u = (cos θ, sin θ)`, `u⊥ = (−sin θ, cos θ)`
//! and `θ ∈ [0, π)`. Along it the coloring is piecewise constant, so every integral
//! below is a finite sum over breakpoint intervals.

use std::io::Write;

use num_complex::Complex64;
use serde::Serialize;

use crate::coloring::FiniteColoring;
use crate::error::{Error, Result};
use crate::lattice::Vec2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LineSpec {
    pub theta: f64,
    pub offset: f64,
}

impl LineSpec {
    /// Angles outside `[0, π)` are folded in, flipping the offset sign when needed.
    pub fn new(theta: f64, offset: f64) -> Self {
        let pi = std::f64::consts::PI;
        let mut theta = theta.rem_euclid(2.0 * pi);
        let mut offset = offset;
        if theta >= pi {
            theta -= pi;
            offset = -offset;
        }
        Self { theta, offset }
    }

    pub fn u(&self) -> Vec2 {
        Vec2::new(self.theta.cos(), self.theta.sin())
    }

    pub fn u_perp(&self) -> Vec2 {
        Vec2::new(-self.theta.sin(), self.theta.cos())
    }

    pub fn point(&self, s: f64) -> Vec2 {
        self.u() * self.offset + self.u_perp() * s
    }

    /// Parameter of the orthogonal projection of `x` onto the line.
    pub fn param_of(&self, x: &Vec2) -> f64 {
        x.dot(&self.u_perp())
    }

    pub fn with_offset(&self, offset: f64) -> Self {
        Self { offset, ..*self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Segment {
    pub line: LineSpec,
    pub s0: f64,
    pub s1: f64,
}

impl Segment {
    pub fn new(line: LineSpec, s0: f64, s1: f64) -> Result<Self> {
        if !(s0 < s1) {
            return Err(Error::InvalidArgument(format!("segment [{s0}, {s1}] is empty")));
        }
        Ok(Self { line, s0, s1 })
    }

    pub fn length(&self) -> f64 {
        self.s1 - self.s0
    }
}

/// Piecewise-constant profile: `values[i]` holds on `(breakpoints[i], breakpoints[i+1])`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TransectProfile {
    breakpoints: Vec<f64>,
    values: Vec<Complex64>,
}

/// Result of a max-subsegment search; `s0 == s1` only when the value is 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SubsegmentMax {
    pub s0: f64,
    pub s1: f64,
    pub value: f64,
}

impl TransectProfile {
    /// From explicit breakpoints and values; `breakpoints.len() == values.len() + 1`.
    pub fn from_parts(breakpoints: Vec<f64>, values: Vec<Complex64>) -> Result<Self> {
        let ok = (values.is_empty() && breakpoints.len() <= 1)
            || breakpoints.len() == values.len() + 1;
        if !ok || breakpoints.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidArgument(
                "breakpoints must be strictly increasing, one more than values".into(),
            ));
        }
        Ok(Self { breakpoints, values })
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    fn pieces(&self) -> impl Iterator<Item = (f64, f64, Complex64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (self.breakpoints[i], self.breakpoints[i + 1], *v))
    }

    /// `∫ f ds` over the whole line.
    pub fn line_integral(&self) -> Complex64 {
        self.pieces().map(|(a, b, v)| v * (b - a)).sum()
    }

    /// `∫_{s0}^{s1} f ds`, splitting boundary intervals proportionally.
    pub fn segment_integral(&self, s0: f64, s1: f64) -> Result<Complex64> {
        if !(s0 < s1) {
            return Err(Error::InvalidArgument(format!("segment [{s0}, {s1}] is empty")));
        }
        Ok(self
            .pieces()
            .map(|(a, b, v)| {
                let lo = a.max(s0);
                let hi = b.min(s1);
                if hi > lo {
                    v * (hi - lo)
                } else {
                    Complex64::default()
                }
            })
            .sum())
    }

    /// Total length of intervals carrying a nonzero value.
    pub fn support_length(&self) -> f64 {
        self.pieces()
            .filter(|(_, _, v)| *v != Complex64::default())
            .map(|(a, b, _)| b - a)
            .sum()
    }

    /// Nonzero-valued length outside `[s0, s1]`.
    pub fn support_outside(&self, s0: f64, s1: f64) -> f64 {
        self.pieces()
            .filter(|(_, _, v)| *v != Complex64::default())
            .map(|(a, b, _)| (b - a) - (b.min(s1) - a.max(s0)).max(0.0))
            .sum()
    }

    /// Running integral at each breakpoint, starting from 0.
    pub fn prefix(&self) -> Vec<Complex64> {
        let mut acc = Complex64::default();
        let mut out = Vec::with_capacity(self.breakpoints.len());
        out.push(acc);
        for (a, b, v) in self.pieces() {
            acc += v * (b - a);
            out.push(acc);
        }
        out
    }

    /// The subsegment maximizing `|∫ f|`. The optimum sits at breakpoints; real
    /// profiles use prefix extrema, complex ones check every breakpoint pair.
    pub fn max_subsegment(&self) -> SubsegmentMax {
        if self.values.is_empty() {
            let s = self.breakpoints.first().copied().unwrap_or(0.0);
            return SubsegmentMax { s0: s, s1: s, value: 0.0 };
        }
        let prefix = self.prefix();
        let (i, j, value) = if self.is_real() {
            let (mut lo, mut hi) = (0, 0);
            for (k, p) in prefix.iter().enumerate() {
                if p.re < prefix[lo].re {
                    lo = k;
                }
                if p.re > prefix[hi].re {
                    hi = k;
                }
            }
            (lo.min(hi), lo.max(hi), prefix[hi].re - prefix[lo].re)
        } else {
            let mut best = (0, 0, 0.0);
            for i in 0..prefix.len() {
                for j in i + 1..prefix.len() {
                    let v = (prefix[j] - prefix[i]).norm();
                    if v > best.2 {
                        best = (i, j, v);
                    }
                }
            }
            best
        };
        SubsegmentMax {
            s0: self.breakpoints[i],
            s1: self.breakpoints[j],
            value,
        }
    }

    /// CSV with columns `s_break,value_re,value_im`; the value is the one starting at the breakpoint.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["s_break", "value_re", "value_im"])?;
        for (k, s) in self.breakpoints.iter().enumerate() {
            let v = self.values.get(k).copied().unwrap_or_default();
            w.write_record([s.to_string(), v.re.to_string(), v.im.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    fn assemble(mut pieces: Vec<(f64, f64, Complex64)>, snap: f64) -> Self {
        pieces.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut breakpoints: Vec<f64> = Vec::with_capacity(pieces.len() + 1);
        let mut values = Vec::with_capacity(pieces.len());
        for (a, b, z) in pieces {
            match breakpoints.last().copied() {
                None => {
                    breakpoints.push(a);
                    breakpoints.push(b);
                    values.push(z);
                }
                Some(end) => {
                    if a > end + snap {
                        breakpoints.push(a);
                        values.push(Complex64::default());
                    }
                    let start = *breakpoints.last().unwrap();
                    if b > start + snap {
                        breakpoints.push(b);
                        values.push(z);
                    }
                }
            }
        }
        Self { breakpoints, values }
    }
}

/// Tiles of a coloring indexed by their position along one direction, for
/// answering many parallel lines quickly.
pub struct DirectionSweep<'a> {
    col: &'a FiniteColoring,
    theta: f64,
    u: Vec2,
    u_perp: Vec2,
    order: Vec<(f64, usize)>,
    extent: (f64, f64),
}

impl<'a> DirectionSweep<'a> {
    pub fn new(col: &'a FiniteColoring, theta: f64) -> Self {
        let probe = LineSpec::new(theta, 0.0);
        let (u, u_perp) = (probe.u(), probe.u_perp());
        let mut order: Vec<(f64, usize)> = col
            .support()
            .iter()
            .enumerate()
            .map(|(i, p)| (p.embedding.dot(&u), i))
            .collect();
        order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let extent = col.tiling().domain.extent_along(&u);
        Self {
            col,
            theta: probe.theta,
            u,
            u_perp,
            order,
            extent,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Profile of the line at `offset`; errors when the line runs along a tile edge.
    pub fn profile(&self, offset: f64) -> Result<TransectProfile> {
        let q = &self.col.tiling().domain;
        let margin = 1e-9 * q.diam();
        let lo = offset - self.extent.1 - margin;
        let hi = offset - self.extent.0 + margin;
        let start = self.order.partition_point(|e| e.0 < lo);
        let mut pieces = Vec::new();
        for &(proj, idx) in &self.order[start..] {
            if proj > hi {
                break;
            }
            let g = &self.col.support()[idx].embedding;
            let z = self.col.weights()[idx];
            match q.chord_intervals(g, &self.u, &self.u_perp, offset) {
                Some(iv) => pieces.extend(iv.into_iter().map(|(a, b)| (a, b, z))),
                None => {
                    return Err(Error::NonMeasurableTransect {
                        theta: self.theta,
                        offset,
                    })
                }
            }
        }
        Ok(TransectProfile::assemble(pieces, 1e-9 * q.diam()))
    }

    /// Profile at `offset`, nudging by multiples of `1e-9·diam(Q)` off degenerate lines.
    /// Returns the profile, the offset actually used and the number of nudges.
    pub fn profile_perturbed(&self, offset: f64, first_sign: f64) -> (TransectProfile, f64, usize) {
        let step = 1e-9 * self.col.tiling().domain.diam();
        let mut nudges = 0;
        let mut t = offset;
        loop {
            match self.profile(t) {
                Ok(p) => return (p, t, nudges),
                Err(_) => {
                    nudges += 1;
                    let k = nudges.div_ceil(2) as f64;
                    let sign = if nudges % 2 == 1 { first_sign } else { -first_sign };
                    t = offset + sign * k * step;
                }
            }
        }
    }
}

/// The restriction of `col` to `line`.
pub fn profile(col: &FiniteColoring, line: &LineSpec) -> Result<TransectProfile> {
    DirectionSweep::new(col, line.theta).profile(line.offset)
}

pub fn line_integral(p: &TransectProfile) -> Complex64 {
    p.line_integral()
}

pub fn segment_integral(p: &TransectProfile, s0: f64, s1: f64) -> Result<Complex64> {
    p.segment_integral(s0, s1)
}

pub fn max_subsegment(p: &TransectProfile) -> SubsegmentMax {
    p.max_subsegment()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProjectionSample {
    pub t: f64,
    /// Offset actually integrated, after any nudge off a tile edge.
    pub t_used: f64,
    pub value: Complex64,
}

/// `π_L f(t) = ∫ f(t·u + s·u⊥) ds` on the offsets in `t_grid`.
pub fn projection_samples(col: &FiniteColoring, theta: f64, t_grid: &[f64]) -> Vec<ProjectionSample> {
    let sweep = DirectionSweep::new(col, theta);
    t_grid
        .iter()
        .map(|&t| {
            let (p, t_used, _) = sweep.profile_perturbed(t, 1.0);
            ProjectionSample {
                t,
                t_used,
                value: p.line_integral(),
            }
        })
        .collect()
}

/// CSV with columns `theta,t,value_re,value_im`.
pub fn write_projection_csv<W: Write>(theta: f64, samples: &[ProjectionSample], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["theta", "t", "value_re", "value_im"])?;
    for s in samples {
        w.write_record([
            theta.to_string(),
            s.t.to_string(),
            s.value.re.to_string(),
            s.value.im.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
