//! Gram matrices of lifted quadruples and their normal form.
//!
//! Rescaling the lifts `P_i -> λ_i P_i` changes the Gram matrix within an
//! equivalence class; every class of a quadruple of distinct boundary points
//! contains exactly one matrix with zero diagonal, `g12 = g23 = g34 = 1` and
//! `|g13| = 1`. Two quadruples are holomorphically congruent iff their normal
//! forms agree, and anti-holomorphically congruent iff the normal forms are
//! complex conjugate.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::hermitian::{form, HermitianVector, Quadruple};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Hermitian matrix of pairwise products `g_ij = <P_i, P_j>` of null lifts.
///
/// Indices are zero-based in the API; doc comments use the one-based names
/// `g12`, `g13`, ...
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Complex64>>", into = "Vec<Vec<Complex64>>")]
pub struct GramMatrix {
    m: usize,
    entries: Vec<Complex64>,
}

impl TryFrom<Vec<Vec<Complex64>>> for GramMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        GramMatrix::from_rows(rows, &NumericConfig::default())
    }
}

impl From<GramMatrix> for Vec<Vec<Complex64>> {
    fn from(g: GramMatrix) -> Self {
        (0..g.m)
            .map(|i| g.entries[i * g.m..(i + 1) * g.m].to_vec())
            .collect()
    }
}

impl GramMatrix {
    /// Validates a square matrix given by rows: Hermitian, zero diagonal,
    /// nonzero off-diagonal entries.
    pub fn from_rows(rows: Vec<Vec<Complex64>>, cfg: &NumericConfig) -> Result<Self> {
        let m = rows.len();
        if !(3..=4).contains(&m) || rows.iter().any(|r| r.len() != m) {
            return Err(Error::PreconditionViolated(format!(
                "Gram matrix must be 3x3 or 4x4, got {m} rows"
            )));
        }
        let entries: Vec<Complex64> = rows.into_iter().flatten().collect();
        let g = Self { m, entries };
        let scale = g.max_abs();
        for i in 0..m {
            if !cfg.is_zero(g.get(i, i).norm(), scale) {
                return Err(Error::PreconditionViolated(format!(
                    "diagonal entry {} is not zero",
                    i + 1
                )));
            }
            for j in (i + 1)..m {
                if (g.get(i, j) - g.get(j, i).conj()).norm() > cfg.tol(scale) {
                    return Err(Error::PreconditionViolated(
                        "matrix is not Hermitian".into(),
                    ));
                }
                if cfg.is_zero(g.get(i, j).norm(), scale) {
                    return Err(Error::CoincidentPoints { i: i + 1, j: j + 1 });
                }
            }
        }
        Ok(g)
    }

    pub fn size(&self) -> usize {
        self.m
    }

    /// Entry `(i, j)`, zero-based.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.m + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Gram matrix of the rescaled lifts `λ_i P_i`: `g_ij -> λ_i conj(λ_j) g_ij`.
    pub fn rescaled(&self, lambdas: &[Complex64]) -> Result<Self> {
        if lambdas.len() != self.m || lambdas.iter().any(|l| l.norm() == 0.0) {
            return Err(Error::InvalidParameter(
                "need one nonzero scale per point".into(),
            ));
        }
        let mut entries = self.entries.clone();
        for i in 0..self.m {
            for j in 0..self.m {
                entries[i * self.m + j] *= lambdas[i] * lambdas[j].conj();
            }
        }
        Ok(Self { m: self.m, entries })
    }

    /// Principal submatrix on the given zero-based indices.
    pub fn submatrix(&self, idx: [usize; 3]) -> Self {
        let entries = idx
            .iter()
            .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .collect();
        Self { m: 3, entries }
    }

    /// Determinant by LU factorization. Real for Hermitian input.
    pub fn determinant(&self) -> f64 {
        DMatrix::from_row_slice(self.m, self.m, &self.entries)
            .determinant()
            .re
    }
}

/// Gram matrix of four null lifts.
pub fn gram_of(lifts: &[HermitianVector; 4], cfg: &NumericConfig) -> Result<GramMatrix> {
    let n = lifts[0].n();
    for v in lifts {
        if v.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: v.n(),
            });
        }
        if !v.is_null(cfg) {
            if v.max_abs() == 0.0 {
                return Err(Error::ZeroVector);
            }
            return Err(Error::NotNull {
                residual: v.norm_form(),
            });
        }
    }
    let mut entries = vec![Complex64::new(0.0, 0.0); 16];
    for i in 0..4 {
        for j in (i + 1)..4 {
            let gij = form(lifts[i].coords(), lifts[j].coords());
            let scale = lifts[i].max_abs() * lifts[j].max_abs();
            if cfg.is_zero(gij.norm(), scale) {
                return Err(Error::CoincidentPoints { i: i + 1, j: j + 1 });
            }
            entries[i * 4 + j] = gij;
            entries[j * 4 + i] = gij.conj();
        }
    }
    Ok(GramMatrix { m: 4, entries })
}

/// The three free entries of a normalized Gram matrix; implicitly
/// `g_ii = 0`, `g12 = g23 = g34 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNormalized")]
pub struct NormalizedGram {
    g13: Complex64,
    g14: Complex64,
    g24: Complex64,
}

#[derive(Deserialize)]
struct RawNormalized {
    g13: Complex64,
    g14: Complex64,
    g24: Complex64,
}

impl TryFrom<RawNormalized> for NormalizedGram {
    type Error = Error;

    fn try_from(raw: RawNormalized) -> Result<Self> {
        NormalizedGram::new(raw.g13, raw.g14, raw.g24, &NumericConfig::default())
    }
}

impl NormalizedGram {
    pub fn new(
        g13: Complex64,
        g14: Complex64,
        g24: Complex64,
        cfg: &NumericConfig,
    ) -> Result<Self> {
        if !cfg.is_zero(g13.norm() - 1.0, 1.0) {
            return Err(Error::PreconditionViolated(format!(
                "|g13| = {} is not 1",
                g13.norm()
            )));
        }
        if cfg.is_zero(g14.norm(), 0.0) {
            return Err(Error::DegenerateEntry { entry: "14" });
        }
        if cfg.is_zero(g24.norm(), 0.0) {
            return Err(Error::DegenerateEntry { entry: "24" });
        }
        Ok(Self { g13, g14, g24 })
    }

    pub(crate) fn new_unchecked(g13: Complex64, g14: Complex64, g24: Complex64) -> Self {
        Self { g13, g14, g24 }
    }

    pub fn g13(&self) -> Complex64 {
        self.g13
    }

    pub fn g14(&self) -> Complex64 {
        self.g14
    }

    pub fn g24(&self) -> Complex64 {
        self.g24
    }

    /// Entrywise complex conjugate, the normal form of the mirror image.
    pub fn conj(&self) -> Self {
        Self {
            g13: self.g13.conj(),
            g14: self.g14.conj(),
            g24: self.g24.conj(),
        }
    }

    /// The full 4x4 matrix.
    pub fn to_gram(&self) -> GramMatrix {
        let z = Complex64::new(0.0, 0.0);
        let (a, b, c) = (self.g13, self.g14, self.g24);
        let entries = vec![
            z,
            ONE,
            a,
            b, //
            ONE,
            z,
            ONE,
            c, //
            a.conj(),
            ONE,
            z,
            ONE, //
            b.conj(),
            c.conj(),
            ONE,
            z,
        ];
        GramMatrix { m: 4, entries }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.g13 - other.g13,
            self.g14 - other.g14,
            self.g24 - other.g24,
        ]
        .iter()
        .map(|d| d.norm())
        .fold(0.0, f64::max)
    }

    fn magnitude(&self) -> f64 {
        1.0f64.max(self.g14.norm()).max(self.g24.norm())
    }

    /// Entrywise comparison at the configured tolerance, scaled by the
    /// largest entry involved.
    pub fn approx_eq(&self, other: &Self, cfg: &NumericConfig) -> bool {
        let scale = self.magnitude().max(other.magnitude());
        self.max_abs_diff(other) <= cfg.tol(scale)
    }
}

/// Rescales `P_j -> λ P_j` on the matrix entries.
fn scale_point(g: &mut [Complex64; 16], j: usize, lambda: Complex64) {
    for k in 0..4 {
        g[j * 4 + k] *= lambda;
        g[k * 4 + j] *= lambda.conj();
    }
}

/// Unique normal form of the equivalence class of `g`.
///
/// Scales `P2`, `P3`, `P4` in turn so that `g12`, `g23`, `g34` become one,
/// then applies the real scaling `(a, 1/a, a, 1/a)` with `a = |g13|^{-1/2}`.
pub fn normalize(g: &GramMatrix, cfg: &NumericConfig) -> Result<NormalizedGram> {
    if g.m != 4 {
        return Err(Error::PreconditionViolated(
            "normal form requires a 4x4 Gram matrix".into(),
        ));
    }
    let mut e: [Complex64; 16] = g.entries.clone().try_into().expect("4x4");
    let scale = g.max_abs();
    for (i, j, name) in [(0, 1, "12"), (1, 2, "23"), (2, 3, "34")] {
        let gij = e[i * 4 + j];
        if cfg.is_zero(gij.norm(), scale) {
            return Err(Error::DegenerateEntry { entry: name });
        }
        // <P_i, λ P_j> = conj(λ) g_ij
        scale_point(&mut e, j, gij.conj().inv());
    }
    let g13 = e[2];
    if cfg.is_zero(g13.norm(), 0.0) {
        return Err(Error::DegenerateEntry { entry: "13" });
    }
    let a = g13.norm().sqrt().recip();
    for (j, s) in [a, 1.0 / a, a, 1.0 / a].into_iter().enumerate() {
        scale_point(&mut e, j, Complex64::new(s, 0.0));
    }
    let (g13, g14, g24) = (e[2], e[3], e[7]);
    for (v, name) in [(g14, "14"), (g24, "24")] {
        if cfg.is_zero(v.norm(), 0.0) {
            return Err(Error::DegenerateEntry { entry: name });
        }
    }
    Ok(NormalizedGram { g13, g14, g24 })
}

/// Normal form of the Gram matrix of a quadruple's standard lifts.
pub fn normal_form(p: &Quadruple, cfg: &NumericConfig) -> Result<NormalizedGram> {
    normalize(&gram_of(&p.lifts(), cfg)?, cfg)
}

/// Closed-form determinant of the normalized Gram matrix.
pub fn det_gram(g: &NormalizedGram) -> f64 {
    let (g13, g14, g24) = (g.g13, g.g14, g.g24);
    -2.0 * g14.re - 2.0 * (g13 * g24.conj()).re - 2.0 * (g13 * g14.conj() * g24).re
        + g14.norm_sqr()
        + g24.norm_sqr()
        + 1.0
}

/// A triangular face `(i, j, k)` of a quadruple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Face {
    F123,
    F124,
    F134,
    F234,
}

impl Face {
    pub const ALL: [Face; 4] = [Face::F123, Face::F124, Face::F134, Face::F234];

    /// From one-based vertex indices.
    pub fn from_indices(i: usize, j: usize, k: usize) -> Result<Self> {
        match (i, j, k) {
            (1, 2, 3) => Ok(Face::F123),
            (1, 2, 4) => Ok(Face::F124),
            (1, 3, 4) => Ok(Face::F134),
            (2, 3, 4) => Ok(Face::F234),
            _ => Err(Error::InvalidFace(i, j, k)),
        }
    }

    /// One-based vertex indices.
    pub fn indices(self) -> [usize; 3] {
        match self {
            Face::F123 => [1, 2, 3],
            Face::F124 => [1, 2, 4],
            Face::F134 => [1, 3, 4],
            Face::F234 => [2, 3, 4],
        }
    }
}

/// Closed-form determinant of the 3x3 principal minor on `face`. Never
/// positive for an actual configuration; zero iff the face lies on a chain.
pub fn det_face(g: &NormalizedGram, face: Face) -> f64 {
    2.0 * match face {
        Face::F123 => g.g13.re,
        Face::F124 => (g.g24 * g.g14.conj()).re,
        Face::F134 => (g.g13 * g.g14.conj()).re,
        Face::F234 => g.g24.re,
    }
}

/// Congruence under `PU(n,1)`: equal normal forms.
pub fn congruent_holomorphic(p: &Quadruple, q: &Quadruple, cfg: &NumericConfig) -> Result<bool> {
    Ok(normal_form(p, cfg)?.approx_eq(&normal_form(q, cfg)?, cfg))
}

/// Congruence under an anti-holomorphic isometry: conjugate normal forms.
pub fn congruent_antiholomorphic(
    p: &Quadruple,
    q: &Quadruple,
    cfg: &NumericConfig,
) -> Result<bool> {
    Ok(normal_form(p, cfg)?.approx_eq(&normal_form(q, cfg)?.conj(), cfg))
}
