//! The Hermitian space `C^{n,1}`, standard lifts of boundary points, and the
//! linear action of the unitary group of the form.
//!
//! Coordinates follow the "second Hermitian form"
//!
//! ```text
//! <Z, W> = z_1 conj(w_{n+1}) + z_2 conj(w_2) + ... + z_n conj(w_n) + z_{n+1} conj(w_1)
//! ```
//!
//! which has signature `(n, 1)`. Boundary points are given in horospherical
//! coordinates `(z, t)` with `z in C^{n-1}`, `t in R`, together with the
//! distinguished point at infinity.

use std::f64::consts::SQRT_2;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::NumericConfig;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A vector of `C^{n,1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawVector")]
pub struct HermitianVector {
    n: usize,
    coords: Vec<Complex64>,
}

#[derive(Deserialize)]
struct RawVector {
    n: usize,
    coords: Vec<Complex64>,
}

impl TryFrom<RawVector> for HermitianVector {
    type Error = Error;

    fn try_from(raw: RawVector) -> Result<Self> {
        HermitianVector::with_dim(raw.n, raw.coords)
    }
}

impl HermitianVector {
    /// Builds a vector of `C^{n,1}` from its `n + 1` coordinates.
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidDimension {
                n: coords.len().saturating_sub(1),
                reason: "need at least two coordinates",
            });
        }
        Ok(Self {
            n: coords.len() - 1,
            coords,
        })
    }

    pub fn with_dim(n: usize, coords: Vec<Complex64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension {
                n,
                reason: "n must be positive",
            });
        }
        if coords.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: coords.len().saturating_sub(1),
            });
        }
        Ok(Self { n, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn scaled(&self, lambda: Complex64) -> Self {
        Self {
            n: self.n,
            coords: self.coords.iter().map(|c| c * lambda).collect(),
        }
    }

    /// Largest coordinate modulus.
    pub fn max_abs(&self) -> f64 {
        self.coords.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `<Z, Z>`, which is always real.
    pub fn norm_form(&self) -> f64 {
        form(&self.coords, &self.coords).re
    }

    pub fn is_null(&self, cfg: &NumericConfig) -> bool {
        let s = self.max_abs();
        s > 0.0 && cfg.is_zero(self.norm_form(), s * s)
    }

    /// Projective representative with the largest-modulus coordinate equal to one.
    pub fn projective_normal(&self) -> Result<Self> {
        let (_, pivot) =
            self.coords
                .iter()
                .copied()
                .map(|c| (c.norm(), c))
                .fold(
                    (0.0, ZERO),
                    |best, cur| if cur.0 > best.0 { cur } else { best },
                );
        if pivot == ZERO {
            return Err(Error::ZeroVector);
        }
        Ok(self.scaled(pivot.inv()))
    }

    pub(crate) fn to_dvector(&self) -> DVector<Complex64> {
        DVector::from_column_slice(&self.coords)
    }
}

/// Unchecked form evaluation on coordinate slices of equal length.
#[inline]
pub(crate) fn form(z: &[Complex64], w: &[Complex64]) -> Complex64 {
    let last = z.len() - 1;
    let mut acc = z[0] * w[last].conj() + z[last] * w[0].conj();
    for k in 1..last {
        acc += z[k] * w[k].conj();
    }
    acc
}

/// `<Z, W>`; linear in `Z`, conjugate-linear in `W`.
pub fn herm_product(z: &HermitianVector, w: &HermitianVector) -> Result<Complex64> {
    if z.n != w.n {
        return Err(Error::DimensionMismatch {
            expected: z.n,
            found: w.n,
        });
    }
    Ok(form(&z.coords, &w.coords))
}

/// Matrix `J` of the form, so that `<Z, W> = W^* J Z`.
pub fn form_matrix(n: usize) -> DMatrix<Complex64> {
    let mut j = DMatrix::from_element(n + 1, n + 1, ZERO);
    j[(0, n)] = ONE;
    j[(n, 0)] = ONE;
    for k in 1..n {
        j[(k, k)] = ONE;
    }
    j
}

/// Euclidean chordal distance between the projective classes of two vectors,
/// in `[0, 1]`.
pub fn chordal_distance(a: &HermitianVector, b: &HermitianVector) -> f64 {
    let na: f64 = a.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let nb: f64 = b.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 || a.coords.len() != b.coords.len() {
        return 0.0;
    }
    let inner: Complex64 = a
        .coords
        .iter()
        .zip(&b.coords)
        .map(|(x, y)| x * y.conj())
        .sum();
    let c = (inner.norm() / (na * nb)).min(1.0);
    (1.0 - c * c).max(0.0).sqrt()
}

/// A point of the boundary of complex hyperbolic `n`-space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BoundaryPoint {
    /// Horospherical coordinates at height zero; `z` has `n - 1` entries.
    Finite {
        z: Vec<Complex64>,
        t: f64,
    },
    Infinity,
}

impl BoundaryPoint {
    pub fn finite(z: Vec<Complex64>, t: f64) -> Self {
        BoundaryPoint::Finite { z, t }
    }

    /// The ambient `n` implied by a finite point; `None` for infinity.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            BoundaryPoint::Finite { z, .. } => Some(z.len() + 1),
            BoundaryPoint::Infinity => None,
        }
    }

    pub fn check_dimension(&self, n: usize) -> Result<()> {
        match self.dimension() {
            Some(d) if d != n => Err(Error::DimensionMismatch {
                expected: n,
                found: d,
            }),
            _ => Ok(()),
        }
    }

    /// Coordinatewise comparison with absolute tolerance `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        match (self, other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => true,
            (BoundaryPoint::Finite { z: z1, t: t1 }, BoundaryPoint::Finite { z: z2, t: t2 }) => {
                z1.len() == z2.len()
                    && (t1 - t2).abs() <= tol
                    && z1.iter().zip(z2).all(|(a, b)| (a - b).norm() <= tol)
            }
            _ => false,
        }
    }
}

/// Standard lift: `(z, t) -> (-<<z,z>> + i t, sqrt(2) z, 1)` and `infinity -> (1, 0, ..., 0)`.
pub fn standard_lift(p: &BoundaryPoint, n: usize) -> Result<HermitianVector> {
    if n == 0 {
        return Err(Error::InvalidDimension {
            n,
            reason: "n must be positive",
        });
    }
    p.check_dimension(n)?;
    let mut coords = vec![ZERO; n + 1];
    match p {
        BoundaryPoint::Infinity => coords[0] = ONE,
        BoundaryPoint::Finite { z, t } => {
            let zz: f64 = z.iter().map(|c| c.norm_sqr()).sum();
            coords[0] = Complex64::new(-zz, *t);
            for (k, zk) in z.iter().enumerate() {
                coords[k + 1] = zk * SQRT_2;
            }
            coords[n] = ONE;
        }
    }
    Ok(HermitianVector { n, coords })
}

/// Dehomogenizes a null vector back to horospherical coordinates.
pub fn point_from_lift(v: &HermitianVector, cfg: &NumericConfig) -> Result<BoundaryPoint> {
    let scale = v.max_abs();
    if scale == 0.0 {
        return Err(Error::ZeroVector);
    }
    let residual = v.norm_form();
    if !cfg.is_zero(residual, scale * scale) {
        return Err(Error::NotNull { residual });
    }
    let last = v.coords[v.n];
    if cfg.is_zero(last.norm(), scale) {
        return Ok(BoundaryPoint::Infinity);
    }
    let inv = last.inv();
    let z = v.coords[1..v.n].iter().map(|c| c * inv / SQRT_2).collect();
    let t = (v.coords[0] * inv).im;
    Ok(BoundaryPoint::Finite { z, t })
}

/// An element of `U(n, 1)` for the form above, acting linearly on `C^{n,1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    n: usize,
    matrix: DMatrix<Complex64>,
}

impl Isometry {
    /// Wraps a matrix after checking `g^* J g = J` within tolerance.
    pub fn new(matrix: DMatrix<Complex64>, cfg: &NumericConfig) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() < 2 {
            return Err(Error::InvalidDimension {
                n: matrix.nrows().saturating_sub(1),
                reason: "isometry must be a square matrix of size n + 1 >= 2",
            });
        }
        let g = Self {
            n: matrix.nrows() - 1,
            matrix,
        };
        let residual = g.unitarity_residual();
        let scale = g.matrix.iter().map(|c| c.norm_sqr()).fold(0.0, f64::max);
        if !cfg.is_zero(residual, scale) {
            return Err(Error::PreconditionViolated(format!(
                "matrix does not preserve the form (residual {residual:e})"
            )));
        }
        Ok(g)
    }

    pub(crate) fn from_matrix_unchecked(matrix: DMatrix<Complex64>) -> Self {
        Self {
            n: matrix.nrows() - 1,
            matrix,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n,
            matrix: DMatrix::identity(n + 1, n + 1),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Largest entry of `|g^* J g - J|`.
    pub fn unitarity_residual(&self) -> f64 {
        let j = form_matrix(self.n);
        let d = self.matrix.adjoint() * &j * &self.matrix - j;
        d.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(Self::from_matrix_unchecked(&self.matrix * &other.matrix))
    }

    /// `g^{-1} = J g^* J`.
    pub fn inverse(&self) -> Isometry {
        let j = form_matrix(self.n);
        Self::from_matrix_unchecked(&j * self.matrix.adjoint() * &j)
    }
}

pub fn apply_isometry(g: &Isometry, v: &HermitianVector) -> Result<HermitianVector> {
    if g.n != v.n {
        return Err(Error::DimensionMismatch {
            expected: g.n,
            found: v.n,
        });
    }
    let out = &g.matrix * v.to_dvector();
    Ok(HermitianVector {
        n: v.n,
        coords: out.iter().copied().collect(),
    })
}

/// An ordered quadruple of boundary points of `∂CH^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawQuadruple")]
pub struct Quadruple {
    n: usize,
    points: [BoundaryPoint; 4],
}

#[derive(Deserialize)]
struct RawQuadruple {
    n: usize,
    points: [BoundaryPoint; 4],
}

impl TryFrom<RawQuadruple> for Quadruple {
    type Error = Error;

    fn try_from(raw: RawQuadruple) -> Result<Self> {
        Quadruple::new(raw.n, raw.points)
    }
}

impl Quadruple {
    pub fn new(n: usize, points: [BoundaryPoint; 4]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension {
                n,
                reason: "n must be positive",
            });
        }
        for p in &points {
            p.check_dimension(n)?;
        }
        Ok(Self { n, points })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[BoundaryPoint; 4] {
        &self.points
    }

    /// Standard lifts of the four points.
    pub fn lifts(&self) -> [HermitianVector; 4] {
        // dimensions were validated on construction
        self.points
            .clone()
            .map(|p| standard_lift(&p, self.n).expect("validated quadruple"))
    }

    pub fn from_lifts(lifts: &[HermitianVector; 4], cfg: &NumericConfig) -> Result<Self> {
        let n = lifts[0].n;
        let mut points = Vec::with_capacity(4);
        for v in lifts {
            if v.n != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.n,
                });
            }
            points.push(point_from_lift(v, cfg)?);
        }
        let points: [BoundaryPoint; 4] = points.try_into().expect("four points");
        Self::new(n, points)
    }

    /// Image of the quadruple under `g`.
    pub fn transform(&self, g: &Isometry, cfg: &NumericConfig) -> Result<Self> {
        let lifts = self.lifts();
        let moved = [
            apply_isometry(g, &lifts[0])?,
            apply_isometry(g, &lifts[1])?,
            apply_isometry(g, &lifts[2])?,
            apply_isometry(g, &lifts[3])?,
        ];
        Self::from_lifts(&moved, cfg)
    }

    /// Image under the anti-holomorphic involution `(z, t) -> (conj z, -t)`.
    pub fn conjugate(&self) -> Self {
        let points = self.points.clone().map(|p| match p {
            BoundaryPoint::Finite { z, t } => BoundaryPoint::Finite {
                z: z.iter().map(|c| c.conj()).collect(),
                t: -t,
            },
            BoundaryPoint::Infinity => BoundaryPoint::Infinity,
        });
        Self { n: self.n, points }
    }
}
