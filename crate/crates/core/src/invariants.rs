//! Cartan's angular invariant, Korányi–Reimann cross-ratios, and the
//! dictionary between the moduli coordinates `(X1, X2, A)` and the
//! normalized Gram matrix.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::gram::NormalizedGram;
use crate::hermitian::{form, standard_lift, BoundaryPoint, HermitianVector, Quadruple};

/// Moduli coordinates of a quadruple: `X1 = X(p1,p2,p3,p4)`,
/// `X2 = X(p1,p3,p2,p4)`, and `A = A(p1,p2,p3)` in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModuliPoint {
    pub x1: Complex64,
    pub x2: Complex64,
    pub a: f64,
}

impl ModuliPoint {
    pub fn new(x1: Complex64, x2: Complex64, a: f64) -> Self {
        Self { x1, x2, a }
    }

    pub(crate) fn check_nonzero(&self) -> Result<()> {
        if self.x1 == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroCrossRatio { which: "x1" });
        }
        if self.x2 == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroCrossRatio { which: "x2" });
        }
        Ok(())
    }

    /// Natural magnitude of the defining equation, `1 + |X1|^2 + |X2|^2`.
    pub fn scale(&self) -> f64 {
        1.0 + self.x1.norm_sqr() + self.x2.norm_sqr()
    }

    /// Largest coordinate difference relative to `max(1, |coordinate|)`.
    pub fn max_rel_diff(&self, other: &Self) -> f64 {
        let rel = |a: Complex64, b: Complex64| (a - b).norm() / 1f64.max(a.norm()).max(b.norm());
        rel(self.x1, other.x1)
            .max(rel(self.x2, other.x2))
            .max((self.a - other.a).abs())
    }
}

/// Parker–Platis coordinates `(X1, X2, X3)` with `X3 = X(p2,p3,p1,p4)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PPPoint {
    pub x1: Complex64,
    pub x2: Complex64,
    pub x3: Complex64,
}

impl PPPoint {
    pub fn max_rel_diff(&self, other: &Self) -> f64 {
        let rel = |a: Complex64, b: Complex64| (a - b).norm() / 1f64.max(a.norm()).max(b.norm());
        rel(self.x1, other.x1)
            .max(rel(self.x2, other.x2))
            .max(rel(self.x3, other.x3))
    }
}

/// `<P_i, P_j>` with a distinctness check relative to the lift magnitudes.
fn product(
    a: &HermitianVector,
    b: &HermitianVector,
    labels: (usize, usize),
    cfg: &NumericConfig,
) -> Result<Complex64> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch {
            expected: a.n(),
            found: b.n(),
        });
    }
    let v = form(a.coords(), b.coords());
    if cfg.is_zero(v.norm(), a.max_abs() * b.max_abs()) {
        return Err(Error::CoincidentPoints {
            i: labels.0.min(labels.1),
            j: labels.0.max(labels.1),
        });
    }
    Ok(v)
}

/// Folds a principal argument into `[-pi/2, pi/2]`, absorbing rounding at
/// the ends of the interval.
pub(crate) fn clamp_cartan(value: f64, cfg: &NumericConfig) -> Result<f64> {
    if value.abs() <= FRAC_PI_2 {
        Ok(value)
    } else if value.abs() - FRAC_PI_2 <= cfg.tol(FRAC_PI_2) {
        Ok(FRAC_PI_2.copysign(value))
    } else {
        Err(Error::CartanOutOfRange { value })
    }
}

/// Cartan's invariant `arg(-<P1,P2><P2,P3><P3,P1>)` of three lifts.
pub fn cartan_of_lifts(lifts: [&HermitianVector; 3], cfg: &NumericConfig) -> Result<f64> {
    let [p1, p2, p3] = lifts;
    let triple = product(p1, p2, (1, 2), cfg)?
        * product(p2, p3, (2, 3), cfg)?
        * product(p3, p1, (3, 1), cfg)?;
    clamp_cartan((-triple).arg(), cfg)
}

/// Cartan's angular invariant of a boundary triple in `∂CH^n`.
pub fn cartan(points: &[BoundaryPoint; 3], n: usize, cfg: &NumericConfig) -> Result<f64> {
    let [a, b, c] = [
        standard_lift(&points[0], n)?,
        standard_lift(&points[1], n)?,
        standard_lift(&points[2], n)?,
    ];
    cartan_of_lifts([&a, &b, &c], cfg)
}

/// `X = <P3,P1><P4,P2> / (<P4,P1><P3,P2>)`.
pub fn cross_ratio_of_lifts(
    lifts: [&HermitianVector; 4],
    cfg: &NumericConfig,
) -> Result<Complex64> {
    let [p1, p2, p3, p4] = lifts;
    let num = product(p3, p1, (3, 1), cfg)? * product(p4, p2, (4, 2), cfg)?;
    let den = product(p4, p1, (4, 1), cfg)? * product(p3, p2, (3, 2), cfg)?;
    Ok(num / den)
}

/// Korányi–Reimann cross-ratio of four boundary points of `∂CH^n`.
pub fn cross_ratio(
    points: &[BoundaryPoint; 4],
    n: usize,
    cfg: &NumericConfig,
) -> Result<Complex64> {
    let lifts = Quadruple::new(n, points.clone())?.lifts();
    cross_ratio_of_lifts([&lifts[0], &lifts[1], &lifts[2], &lifts[3]], cfg)
}

/// `(X1, X2, X3)` computed directly from Hermitian products of the lifts.
pub fn pp_point_of_lifts(l: &[HermitianVector; 4], cfg: &NumericConfig) -> Result<PPPoint> {
    Ok(PPPoint {
        x1: cross_ratio_of_lifts([&l[0], &l[1], &l[2], &l[3]], cfg)?,
        x2: cross_ratio_of_lifts([&l[0], &l[2], &l[1], &l[3]], cfg)?,
        x3: cross_ratio_of_lifts([&l[1], &l[2], &l[0], &l[3]], cfg)?,
    })
}

pub fn pp_point(p: &Quadruple, cfg: &NumericConfig) -> Result<PPPoint> {
    pp_point_of_lifts(&p.lifts(), cfg)
}

/// `X1 = conj(g13 g24 / g14)`, `X2 = 1 / conj(g14)`, `A = arg(-conj(g13))`.
pub fn moduli_from_gram(g: &NormalizedGram, cfg: &NumericConfig) -> Result<ModuliPoint> {
    let x1 = (g.g13() * g.g24() / g.g14()).conj();
    let x2 = g.g14().conj().inv();
    let a = clamp_cartan((-g.g13().conj()).arg(), cfg)?;
    Ok(ModuliPoint { x1, x2, a })
}

/// `g13 = -e^{-iA}`, `g14 = 1 / conj(X2)`, `g24 = -(conj(X1) / conj(X2)) e^{iA}`.
pub fn gram_from_moduli(m: &ModuliPoint) -> Result<NormalizedGram> {
    m.check_nonzero()?;
    let e = Complex64::from_polar(1.0, m.a);
    let g13 = -e.conj();
    let g14 = m.x2.conj().inv();
    let g24 = -(m.x1.conj() / m.x2.conj()) * e;
    Ok(NormalizedGram::new_unchecked(g13, g14, g24))
}

/// Determinant of the normalized Gram matrix in moduli coordinates; equal to
/// the defining residual divided by `|X2|^2`.
pub fn det_from_moduli(m: &ModuliPoint) -> f64 {
    defining_residual(m) / m.x2.norm_sqr()
}

/// `-2Re(X1+X2) - 2Re(X1 conj(X2) e^{-2iA}) + |X1|^2 + |X2|^2 + 1`.
pub(crate) fn defining_residual(m: &ModuliPoint) -> f64 {
    let (x1, x2) = (m.x1, m.x2);
    let rot = Complex64::from_polar(1.0, -2.0 * m.a);
    -2.0 * (x1 + x2).re - 2.0 * (x1 * x2.conj() * rot).re + x1.norm_sqr() + x2.norm_sqr() + 1.0
}

/// Face determinants `[G(1,2,3), G(1,2,4), G(1,3,4), G(2,3,4)]` in moduli
/// coordinates.
pub fn face_dets_from_moduli(m: &ModuliPoint) -> [f64; 4] {
    let e = Complex64::from_polar(1.0, m.a);
    let r = m.x2.norm_sqr();
    [
        -2.0 * e.re,
        -2.0 * (m.x1.conj() * e).re / r,
        -2.0 * (m.x2.conj() * e.conj()).re / r,
        -2.0 * (m.x1 * m.x2.conj() * e.conj()).re / r,
    ]
}
