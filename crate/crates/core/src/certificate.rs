//! Explicit lower bound on the largest line integral, checked against a line search.
//!
//! With `R` the tail radius at `ε = 1/2` and `R' = R + circumradius(B)`, at least half of
//! the energy `Σ|z_g|²` of `f̂` lies in the disk `|ξ| <= R'`. In polar coordinates that disk
//! integral is at most `π R' · max_θ ∫ |π_θ f|²`, and each projection is supported on an
//! interval of length at most `D + diam Q`, so `M >= sqrt(energy / (2π R' (D + diam Q)))`
//! where `M = max_L |π_L f|`. The certificate uses the weaker constant `4π`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::coloring::FiniteColoring;
use crate::error::{Error, Result};
use crate::fourier::{tail_radius, PolygonFT};
use crate::lattice::{containment_radius, dual_fundamental_domain, Lattice2D};
use crate::search::{scan, ScanConfig, ScanResult};

/// Tail level used by certificates.
pub const CERTIFICATE_EPSILON: f64 = 0.5;

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    #[serde(rename = "D")]
    pub d: f64,
    #[serde(rename = "diamQ")]
    pub diam_q: f64,
    #[serde(rename = "R")]
    pub r: f64,
    #[serde(rename = "Rprime")]
    pub r_prime: f64,
    pub energy: f64,
    pub bound: f64,
    pub empirical_m: f64,
    pub margin: f64,
    pub pass: bool,
    /// The tail radius is certified on samples, not by interval arithmetic.
    pub numerical: bool,
}

/// `sqrt(energy / (4π R' (D + diam Q)))`.
pub fn lower_bound(energy: f64, r_prime: f64, d: f64, diam_q: f64) -> f64 {
    (energy / (4.0 * PI * r_prime * (d + diam_q))).sqrt()
}

/// The bound side alone: `(D, diam Q, R, R', energy, bound)` with `empirical_m` unset.
pub fn certificate_bound(col: &FiniteColoring, ftq: &PolygonFT, lat: &Lattice2D) -> Result<Certificate> {
    if (lat.covolume() - 1.0).abs() > 1e-9 {
        return Err(Error::NormalizeFirst { area: lat.covolume() });
    }
    let energy = col.energy();
    if !(energy > 0.0) {
        return Err(Error::InvalidArgument("certificate needs nonzero energy".into()));
    }
    let cell = dual_fundamental_domain(lat);
    let tail = tail_radius(ftq, &lat.dual(), &cell, CERTIFICATE_EPSILON)?;
    let r_prime = containment_radius(&cell, tail.radius);
    let d = col.diam();
    let diam_q = col.tiling().domain.diam();
    let bound = lower_bound(energy, r_prime, d, diam_q);
    Ok(Certificate {
        d,
        diam_q,
        r: tail.radius,
        r_prime,
        energy,
        bound,
        empirical_m: f64::NAN,
        margin: f64::NAN,
        pass: false,
        numerical: true,
    })
}

/// Bound plus a dense scan ([`ScanConfig::dense_for`]).
pub fn certificate(col: &FiniteColoring, ftq: &PolygonFT, lat: &Lattice2D) -> Result<Certificate> {
    certificate_with(col, ftq, lat, &ScanConfig::dense_for(col, 0)).map(|(c, _)| c)
}

pub fn certificate_with(
    col: &FiniteColoring,
    ftq: &PolygonFT,
    lat: &Lattice2D,
    cfg: &ScanConfig,
) -> Result<(Certificate, ScanResult)> {
    let mut cert = certificate_bound(col, ftq, lat)?;
    let res = scan(col, cfg);
    cert.empirical_m = res.best_line_value;
    cert.margin = cert.empirical_m - cert.bound;
    cert.pass = cert.empirical_m >= cert.bound;
    Ok((cert, res))
}
