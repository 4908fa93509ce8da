//! Rank-2 lattices: covolume, dual lattice, point enumeration and the Voronoi
//! cell used as a bounded fundamental domain of the dual.

use nalgebra::{Matrix2, Vector2};

use crate::clip::clip_halfplane;
use crate::error::{Error, Result};
use crate::polygon::PolygonDomain;

pub type Vec2 = Vector2<f64>;

/// Smallest admissible `|det(b1|b2)|`.
pub const DEGENERACY_THRESHOLD: f64 = 1e-12;

/// A lattice `{m b1 + n b2 : m, n ∈ ℤ}` stored as the 2×2 matrix with columns `b1`, `b2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice2D {
    basis: Matrix2<f64>,
}

/// A lattice point with its integer coefficients and its embedding in the plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticePoint {
    pub coeffs: (i64, i64),
    pub embedding: Vec2,
}

impl LatticePoint {
    pub fn norm(&self) -> f64 {
        self.embedding.norm()
    }
}

impl Lattice2D {
    pub fn new(b1: [f64; 2], b2: [f64; 2]) -> Result<Self> {
        Self::from_vectors(Vec2::new(b1[0], b1[1]), Vec2::new(b2[0], b2[1]))
    }

    pub fn from_vectors(b1: Vec2, b2: Vec2) -> Result<Self> {
        Self::from_matrix(Matrix2::from_columns(&[b1, b2]))
    }

    pub fn from_matrix(basis: Matrix2<f64>) -> Result<Self> {
        let det = basis.determinant();
        if !det.is_finite() || det.abs() <= DEGENERACY_THRESHOLD {
            return Err(Error::DegenerateLattice { det });
        }
        Ok(Self { basis })
    }

    /// `ℤ²`.
    pub fn square() -> Self {
        Self::from_matrix(Matrix2::identity()).unwrap()
    }

    /// Hexagonal lattice of covolume 1 with `b1` along the x axis.
    pub fn hexagonal() -> Self {
        let a = (2.0 / 3f64.sqrt()).sqrt();
        Self::new([a, 0.0], [0.5 * a, 0.5 * 3f64.sqrt() * a]).unwrap()
    }

    pub fn b1(&self) -> Vec2 {
        self.basis.column(0).into_owned()
    }

    pub fn b2(&self) -> Vec2 {
        self.basis.column(1).into_owned()
    }

    pub fn matrix(&self) -> &Matrix2<f64> {
        &self.basis
    }

    pub fn covolume(&self) -> f64 {
        self.basis.determinant().abs()
    }

    /// The dual lattice `{x : ⟨x, t⟩ ∈ ℤ for all t}`, whose basis is the inverse transpose.
    pub fn dual(&self) -> Self {
        let inv = self
            .basis
            .try_inverse()
            .expect("non-degenerate by construction");
        Self::from_matrix(inv.transpose()).expect("inverse of a non-degenerate basis")
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::from_matrix(self.basis * factor)
    }

    /// Rescales to covolume 1; returns the lattice and the applied factor `covolume^(-1/2)`.
    pub fn normalized(&self) -> (Self, f64) {
        let factor = self.covolume().powf(-0.5);
        (self.scaled(factor).unwrap(), factor)
    }

    pub fn point(&self, m: i64, n: i64) -> LatticePoint {
        LatticePoint {
            coeffs: (m, n),
            embedding: self.basis * Vec2::new(m as f64, n as f64),
        }
    }

    /// Real coefficients of `x` in the basis.
    pub fn coordinates(&self, x: &Vec2) -> Vec2 {
        self.basis.try_inverse().unwrap() * x
    }

    /// Lattice points with norm at most `radius`, sorted by `(m, n)`.
    pub fn enumerate_points(&self, radius: f64) -> Vec<LatticePoint> {
        self.points_within(&Vec2::zeros(), radius)
    }

    /// Lattice points within `radius` of `center`, sorted by `(m, n)`.
    pub fn points_within(&self, center: &Vec2, radius: f64) -> Vec<LatticePoint> {
        if radius < 0.0 || !radius.is_finite() {
            return Vec::new();
        }
        let inv = self.basis.try_inverse().unwrap();
        let c = inv * center;
        // |k_i - c_i| <= |row_i(inv)| * radius
        let span = |row: usize| inv.row(row).norm() * radius;
        let (sm, sn) = (span(0), span(1));
        let m_lo = (c.x - sm).floor() as i64;
        let m_hi = (c.x + sm).ceil() as i64;
        let n_lo = (c.y - sn).floor() as i64;
        let n_hi = (c.y + sn).ceil() as i64;
        let r2 = radius * radius;
        let mut out = Vec::new();
        for m in m_lo..=m_hi {
            for n in n_lo..=n_hi {
                let p = self.point(m, n);
                if (p.embedding - center).norm_squared() <= r2 {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Lagrange–Gauss reduced basis of the same lattice.
    pub fn reduced(&self) -> Self {
        let mut a = self.b1();
        let mut b = self.b2();
        loop {
            if a.norm_squared() > b.norm_squared() {
                std::mem::swap(&mut a, &mut b);
            }
            // reduced once |a·b| <= |a|²/2; ties at exactly 1/2 would otherwise cycle
            if 2.0 * a.dot(&b).abs() <= a.norm_squared() {
                break;
            }
            let mu = (a.dot(&b) / a.norm_squared()).round();
            b -= mu * a;
        }
        Self::from_vectors(a, b).unwrap()
    }

    /// Voronoi cell of the origin: the points at least as close to 0 as to any other lattice point.
    pub fn voronoi_cell(&self) -> PolygonDomain {
        let red = self.reduced();
        let reach = 2.0 * (red.b1().norm() + red.b2().norm());
        let big = 2.0 * reach;
        let mut cell = vec![
            Vec2::new(-big, -big),
            Vec2::new(big, -big),
            Vec2::new(big, big),
            Vec2::new(-big, big),
        ];
        for p in red.enumerate_points(reach) {
            let v = p.embedding;
            if p.coeffs == (0, 0) {
                continue;
            }
            cell = clip_halfplane(&cell, &v, 0.5 * v.norm_squared());
        }
        let scale = red.b1().norm();
        let mut verts: Vec<Vec2> = Vec::with_capacity(cell.len());
        for v in cell {
            if verts
                .last()
                .is_none_or(|w: &Vec2| (w - v).norm() > 1e-12 * scale)
            {
                verts.push(v);
            }
        }
        if verts.len() > 1 && (verts[0] - verts[verts.len() - 1]).norm() <= 1e-12 * scale {
            verts.pop();
        }
        PolygonDomain::new(verts).expect("Voronoi cell is a convex polygon")
    }
}

/// Bounded fundamental domain `B` of the dual lattice: its Voronoi cell.
pub fn dual_fundamental_domain(lat: &Lattice2D) -> PolygonDomain {
    lat.dual().voronoi_cell()
}

/// `R' = R + circumradius(B)`: every `ξ` with `|ξ| > R'` lies in a translate `t* + B`
/// with `|t*| > R`, when `B` is a fundamental domain around the origin.
pub fn containment_radius(cell: &PolygonDomain, tail_radius: f64) -> f64 {
    tail_radius + cell.circumradius()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn covolume_examples() {
        assert_eq!(Lattice2D::square().covolume(), 1.0);
        let l = Lattice2D::new([2.0, 0.0], [0.0, 0.5]).unwrap();
        assert_eq!(l.covolume(), 1.0);
        let h = Lattice2D::new([1.0, 0.0], [0.5, 0.8660254]).unwrap();
        // 1 * 0.8660254 - 0 * 0.5
        assert!(close(h.covolume(), 0.8660254, 1e-15));
    }

    #[test]
    fn degenerate_basis_rejected() {
        let err = Lattice2D::new([1.0, 2.0], [2.0, 4.0]).unwrap_err();
        assert!(matches!(err, Error::DegenerateLattice { .. }));
        assert!(err.to_string().contains("degenerate lattice"));
        assert!(Lattice2D::new([1e-7, 0.0], [0.0, 1e-6]).is_err());
    }

    #[test]
    fn dual_examples() {
        let z = Lattice2D::square();
        assert_eq!(z.dual(), z);
        let l = Lattice2D::new([2.0, 0.0], [0.0, 0.5]).unwrap().dual();
        assert!(close(l.b1().x, 0.5, 1e-15) && close(l.b1().y, 0.0, 1e-15));
        assert!(close(l.b2().x, 0.0, 1e-15) && close(l.b2().y, 2.0, 1e-15));
        let h = Lattice2D::hexagonal();
        let d = h.dual();
        let (b, bd) = ([h.b1(), h.b2()], [d.b1(), d.b2()]);
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!(close(b[i].dot(&bd[j]), expected, 1e-12));
            }
        }
        assert!(close(d.covolume(), 1.0, 1e-12));
    }

    #[test]
    fn enumerate_examples() {
        let z = Lattice2D::square();
        let p0 = z.enumerate_points(0.0);
        assert_eq!(p0.len(), 1);
        assert_eq!(p0[0].coeffs, (0, 0));
        let p1: Vec<_> = z.enumerate_points(1.0).iter().map(|p| p.coeffs).collect();
        assert_eq!(p1, vec![(-1, 0), (0, -1), (0, 0), (0, 1), (1, 0)]);
        // brute force over |m|,|n| <= 2
        let mut brute = 0;
        for m in -2i64..=2 {
            for n in -2i64..=2 {
                if ((m * m + n * n) as f64).sqrt() <= 1.5 {
                    brute += 1;
                }
            }
        }
        assert_eq!(brute, 9);
        assert_eq!(z.enumerate_points(1.5).len(), brute);
        assert!(z.enumerate_points(-1.0).is_empty());
    }

    #[test]
    fn voronoi_cells() {
        let sq = dual_fundamental_domain(&Lattice2D::square());
        assert_eq!(sq.vertices().len(), 4);
        for v in sq.vertices() {
            assert!(close(v.x.abs(), 0.5, 1e-12) && close(v.y.abs(), 0.5, 1e-12));
        }
        let rect = dual_fundamental_domain(&Lattice2D::new([2.0, 0.0], [0.0, 0.5]).unwrap());
        assert_eq!(rect.vertices().len(), 4);
        for v in rect.vertices() {
            assert!(close(v.x.abs(), 0.25, 1e-12) && close(v.y.abs(), 1.0, 1e-12));
        }
        let h = Lattice2D::hexagonal();
        let hex = dual_fundamental_domain(&h);
        assert_eq!(hex.vertices().len(), 6);
        // shoelace vs determinant
        assert!(close(hex.area(), h.dual().covolume(), 1e-9));
    }

    #[test]
    fn containment_radius_examples() {
        let sq = dual_fundamental_domain(&Lattice2D::square());
        assert!(close(containment_radius(&sq, 10.0), 10.0 + 0.5f64.sqrt(), 1e-12));
        assert!(close(containment_radius(&sq, 0.0), sq.circumradius(), 0.0));
        let hex = dual_fundamental_domain(&Lattice2D::hexagonal());
        let max_vertex = hex.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
        assert!(close(containment_radius(&hex, 5.0), 5.0 + max_vertex, 1e-12));
    }

    #[test]
    fn normalization() {
        let l = Lattice2D::new([3.0, 0.0], [1.0, 2.0]).unwrap();
        let (n, f) = l.normalized();
        assert!(close(n.covolume(), 1.0, 1e-12));
        assert!(close(f, 6f64.powf(-0.5), 1e-15));
    }
}
