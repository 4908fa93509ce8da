//! JSON run configuration.
//!
//! ```json
//! {
//!   "lattice": "square",
//!   "domain": "unit_square",
//!   "coloring": {"kind": "random", "seed": 7, "bias": 0.5},
//!   "box_size": 16,
//!   "tolerances": {"epsilon": 0.5, "r_trunc": 50}
//! }
//! ```
//!
//! `lattice` is `"square"`, `"hexagonal"`, `"l_tromino"` or `{"basis": [[x, y], [x, y]]}`;
//! when omitted, a domain preset brings its own lattice. `domain` is `"unit_square"`,
//! `"l_tromino_norm"`, `"hexagon_norm"` or `{"vertices": [[x, y], ...]}`.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coloring::{restrict_to_box, ColoringRule, FiniteColoring};
use crate::error::{Error, Result};
use crate::lattice::Lattice2D;
use crate::polygon::{PolygonDomain, Tiling};
use crate::search::ScanConfig;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeSpec {
    Preset(String),
    Basis { basis: [[f64; 2]; 2] },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DomainSpec {
    Preset(String),
    Vertices { vertices: Vec<[f64; 2]> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ColoringKind {
    Parity,
    Random,
    Constant,
    Table,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoringSpec {
    pub kind: ColoringKind,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "half")]
    pub bias: f64,
    #[serde(default)]
    pub path: Option<PathBuf>,
    /// Weight of the constant rule as `[re, im]`.
    #[serde(default)]
    pub value: Option<[f64; 2]>,
}

fn half() -> f64 {
    0.5
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Tail level for tail radii; certificates always use 1/2.
    #[serde(default = "half")]
    pub epsilon: f64,
    /// Truncation radius of spectral tiling sums.
    #[serde(default = "default_r_trunc")]
    pub r_trunc: f64,
    /// Relative target of adaptive quadrature.
    #[serde(default = "default_rel_tol")]
    pub quad_rel_tol: f64,
    /// Offset step of sampled projections.
    #[serde(default = "default_slice_step")]
    pub slice_step: f64,
}

fn default_r_trunc() -> f64 {
    50.0
}
fn default_rel_tol() -> f64 {
    1e-6
}
fn default_slice_step() -> f64 {
    0.05
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            epsilon: half(),
            r_trunc: default_r_trunc(),
            quad_rel_tol: default_rel_tol(),
            slice_step: default_slice_step(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub lattice: Option<LatticeSpec>,
    pub domain: DomainSpec,
    pub coloring: ColoringSpec,
    /// Side of the box `[0, R]²` whose meeting tiles form the support.
    #[serde(default = "default_box")]
    pub box_size: f64,
    /// Rescale lattice and domain to covolume 1.
    #[serde(default)]
    pub normalize: bool,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub scan: Option<ScanConfig>,
    #[serde(skip)]
    base_dir: Option<PathBuf>,
}

fn default_box() -> f64 {
    8.0
}

fn preset_tiling(name: &str) -> Option<Tiling> {
    match name {
        "unit_square" => Some(Tiling::unit_square()),
        "l_tromino_norm" => Some(Tiling::l_tromino_norm()),
        "hexagon_norm" => Some(Tiling::hexagon_norm()),
        _ => None,
    }
}

impl LatticeSpec {
    pub fn build(&self) -> Result<Lattice2D> {
        match self {
            LatticeSpec::Preset(name) => match name.as_str() {
                "square" => Ok(Lattice2D::square()),
                "hexagonal" => Ok(Lattice2D::hexagonal()),
                "l_tromino" => Ok(Tiling::l_tromino_norm().lattice),
                other => Err(Error::Config(format!("unknown lattice preset {other:?}"))),
            },
            LatticeSpec::Basis { basis } => Lattice2D::new(basis[0], basis[1]),
        }
    }
}

impl DomainSpec {
    pub fn build(&self) -> Result<PolygonDomain> {
        match self {
            DomainSpec::Preset(name) => preset_tiling(name)
                .map(|t| t.domain)
                .ok_or_else(|| Error::Config(format!("unknown domain preset {name:?}"))),
            DomainSpec::Vertices { vertices } => PolygonDomain::from_points(vertices),
        }
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads a config; relative table paths resolve against its directory.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut cfg = Self::from_json(&std::fs::read_to_string(path)?)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf);
        Ok(cfg)
    }

    pub fn tiling(&self) -> Result<Tiling> {
        let domain = self.domain.build()?;
        let lattice = match (&self.lattice, &self.domain) {
            (Some(l), _) => l.build()?,
            (None, DomainSpec::Preset(name)) => preset_tiling(name).expect("checked by build").lattice,
            (None, DomainSpec::Vertices { .. }) => {
                return Err(Error::Config("a vertex domain needs an explicit lattice".into()))
            }
        };
        let tiling = Tiling::new(domain, lattice);
        if self.normalize {
            let (_, factor) = tiling.lattice.normalized();
            tiling.scaled(factor)
        } else {
            Ok(tiling)
        }
    }

    pub fn rule(&self) -> Result<ColoringRule> {
        let c = &self.coloring;
        Ok(match c.kind {
            ColoringKind::Parity => ColoringRule::Parity,
            ColoringKind::Random => {
                if !(0.0..=1.0).contains(&c.bias) {
                    return Err(Error::Config(format!("bias {} outside [0, 1]", c.bias)));
                }
                ColoringRule::Random { seed: c.seed, bias: c.bias }
            }
            ColoringKind::Constant => {
                let [re, im] = c.value.unwrap_or([1.0, 0.0]);
                ColoringRule::Constant(Complex64::new(re, im))
            }
            ColoringKind::Table => {
                let p = c
                    .path
                    .as_ref()
                    .ok_or_else(|| Error::Config("table coloring needs a path".into()))?;
                let full = match &self.base_dir {
                    Some(dir) if p.is_relative() => dir.join(p),
                    _ => p.clone(),
                };
                ColoringRule::table_from_file(full)?
            }
        })
    }

    /// The coloring: a table's own support, otherwise the tiles meeting `[0, box_size]²`.
    pub fn coloring(&self) -> Result<FiniteColoring> {
        let tiling = self.tiling()?;
        match self.rule()? {
            ColoringRule::Table(map) => FiniteColoring::new(tiling, map),
            rule => restrict_to_box(&tiling, &rule, self.box_size),
        }
    }
}
