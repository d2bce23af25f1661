//! Random boundary points, quadruples, isometries and moduli points.
//!
//! Every real coordinate is drawn from a standard normal distribution. Points
//! and quadruples are only required to be valid; no natural measure on the
//! boundary is being sampled. All functions take the generator explicitly;
//! [`seeded_rng`] gives reproducible independent streams.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{chordal_distance, form, standard_lift, BoundaryPoint, Isometry, Quadruple};
use crate::invariants::ModuliPoint;

const MAX_ATTEMPTS: usize = 100;
/// Minimum chordal distance between the normalized lifts of sampled points.
pub const DISTINCTNESS: f64 = 1e-6;

/// Generator for item `stream` of a run seeded with `seed`.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(normal(rng), normal(rng))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadrupleKind {
    /// Four unrelated points.
    Generic,
    /// Points on the vertical chain `z = 0`, possibly including infinity.
    CPlane,
    /// Points `(x, 0, ..., 0; 0)` with `x` real, possibly including infinity.
    RPlane,
    /// Points with only the first horizontal coordinate nonzero.
    Subspace2,
}

impl QuadrupleKind {
    pub const ALL: [QuadrupleKind; 4] = [
        QuadrupleKind::Generic,
        QuadrupleKind::CPlane,
        QuadrupleKind::RPlane,
        QuadrupleKind::Subspace2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            QuadrupleKind::Generic => "generic",
            QuadrupleKind::CPlane => "c_plane",
            QuadrupleKind::RPlane => "r_plane",
            QuadrupleKind::Subspace2 => "subspace2",
        }
    }

    fn min_dimension(self) -> usize {
        match self {
            QuadrupleKind::CPlane => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for QuadrupleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QuadrupleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown quadruple kind {s:?}")))
    }
}

/// Infinity with probability 1/16, otherwise a finite point with standard
/// normal coordinates.
pub fn random_boundary_point<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<BoundaryPoint> {
    if n == 0 {
        return Err(Error::InvalidDimension {
            n,
            reason: "boundary points need n >= 1",
        });
    }
    if rng.random_ratio(1, 16) {
        return Ok(BoundaryPoint::Infinity);
    }
    let z = (0..n - 1).map(|_| complex_normal(rng)).collect();
    Ok(BoundaryPoint::finite(z, normal(rng)))
}

fn random_point_of_kind<R: Rng + ?Sized>(
    n: usize,
    kind: QuadrupleKind,
    rng: &mut R,
) -> Result<BoundaryPoint> {
    if kind == QuadrupleKind::Generic {
        return random_boundary_point(n, rng);
    }
    if rng.random_ratio(1, 16) {
        return Ok(BoundaryPoint::Infinity);
    }
    let mut z = vec![Complex64::new(0.0, 0.0); n - 1];
    let t = match kind {
        QuadrupleKind::CPlane => normal(rng),
        QuadrupleKind::RPlane => {
            z[0] = Complex64::new(normal(rng), 0.0);
            0.0
        }
        _ => {
            z[0] = complex_normal(rng);
            normal(rng)
        }
    };
    Ok(BoundaryPoint::finite(z, t))
}

/// Four pairwise distinct points of the requested kind in `∂CH^n`.
pub fn random_quadruple<R: Rng + ?Sized>(
    n: usize,
    kind: QuadrupleKind,
    rng: &mut R,
) -> Result<Quadruple> {
    if n < kind.min_dimension() {
        return Err(Error::InvalidDimension {
            n,
            reason: "quadruple kind not realizable in this dimension",
        });
    }
    for _ in 0..MAX_ATTEMPTS {
        let points = [
            random_point_of_kind(n, kind, rng)?,
            random_point_of_kind(n, kind, rng)?,
            random_point_of_kind(n, kind, rng)?,
            random_point_of_kind(n, kind, rng)?,
        ];
        let lifts = points
            .iter()
            .map(|p| standard_lift(p, n))
            .collect::<Result<Vec<_>>>()?;
        let distinct = (0..4)
            .all(|i| (i + 1..4).all(|j| chordal_distance(&lifts[i], &lifts[j]) > DISTINCTNESS));
        if distinct {
            return Quadruple::new(n, points);
        }
    }
    Err(Error::ResamplingExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

fn project_out(v: &mut [Complex64], basis: &[(Vec<Complex64>, f64)]) {
    for (u, norm) in basis {
        let coef = form(v, u) / *norm;
        for (x, y) in v.iter_mut().zip(u) {
            *x -= coef * y;
        }
    }
}

/// A random element of `U(n, 1)`.
///
/// A random negative vector is completed to a basis that is orthonormal for
/// the form by Gram–Schmidt; the matrix sending the standard orthonormal basis
/// `(e_1 + e_{n+1})/sqrt2, e_2, ..., e_n, (e_1 - e_{n+1})/sqrt2` to it preserves
/// the form.
pub fn random_isometry<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Isometry> {
    if n == 0 {
        return Err(Error::InvalidDimension {
            n,
            reason: "isometries need n >= 1",
        });
    }
    let dim = n + 1;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let c = |x: f64| Complex64::new(x, 0.0);

    // orthonormal basis for the form; the negative vector comes last
    let mut std_basis = DMatrix::<Complex64>::zeros(dim, dim);
    std_basis[(0, 0)] = c(s);
    std_basis[(n, 0)] = c(s);
    for k in 1..n {
        std_basis[(k, k)] = c(1.0);
    }
    std_basis[(0, n)] = c(s);
    std_basis[(n, n)] = c(-s);

    // negative vector: in the standard basis, make the last coefficient dominate
    let mut coeffs: Vec<Complex64> = (0..dim).map(|_| complex_normal(rng)).collect();
    let spread: f64 = coeffs[..n].iter().map(|x| x.norm_sqr()).sum();
    let phase = Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
    coeffs[n] = phase * (spread + 1.0 + coeffs[n].norm_sqr()).sqrt();
    let neg: Vec<Complex64> = (0..dim)
        .map(|i| (0..dim).map(|j| std_basis[(i, j)] * coeffs[j]).sum())
        .collect();
    let norm = form(&neg, &neg).re;
    let neg: Vec<Complex64> = neg.iter().map(|x| x / (-norm).sqrt()).collect();

    let mut basis: Vec<(Vec<Complex64>, f64)> = vec![(neg, -1.0)];
    let mut attempts = 0;
    while basis.len() < dim {
        attempts += 1;
        if attempts > MAX_ATTEMPTS * dim {
            return Err(Error::ResamplingExhausted { attempts });
        }
        let mut v: Vec<Complex64> = (0..dim).map(|_| complex_normal(rng)).collect();
        let size: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        project_out(&mut v, &basis);
        project_out(&mut v, &basis);
        let norm = form(&v, &v).re;
        if norm <= 1e-6 * size {
            continue;
        }
        let v = v.iter().map(|x| x / norm.sqrt()).collect();
        basis.push((v, 1.0));
    }

    // columns ordered positive vectors first, then the negative one
    let mut u = DMatrix::<Complex64>::zeros(dim, dim);
    for (col, (v, _)) in basis.iter().skip(1).chain(basis.iter().take(1)).enumerate() {
        for (row, x) in v.iter().enumerate() {
            u[(row, col)] = *x;
        }
    }
    Ok(Isometry::from_matrix_unchecked(u * std_basis.adjoint()))
}

/// A point of the basic variety `F = 0` with `|A| < pi/2`.
///
/// `X1`, `A` and `arg X2` are random; `|X2|` is a root of the quadratic
/// `r^2 - 2Br + |X1 - 1|^2` obtained by writing `F` in polar form.
pub fn random_basic_variety_point<R: Rng + ?Sized>(rng: &mut R) -> Result<ModuliPoint> {
    for _ in 0..MAX_ATTEMPTS {
        let x1 = complex_normal(rng);
        let a = rng.random_range(-FRAC_PI_2..FRAC_PI_2);
        let phi = rng.random_range(0.0..2.0 * PI);
        let b = phi.cos() + (x1 * Complex64::from_polar(1.0, -(phi + 2.0 * a))).re;
        let c = (x1 - 1.0).norm_sqr();
        let disc = b * b - c;
        if b <= 0.0 || disc < 0.0 || c < 1e-12 {
            continue;
        }
        let r = if rng.random_bool(0.5) {
            b + disc.sqrt()
        } else {
            c / (b + disc.sqrt())
        };
        return Ok(ModuliPoint::new(x1, Complex64::from_polar(r, phi), a));
    }
    Err(Error::ResamplingExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

/// A moduli point of a C-plane quadruple: `A = ±pi/2`, `X1` real and
/// `X2 = 1 - X1`.
pub fn random_c_plane_point<R: Rng + ?Sized>(rng: &mut R) -> ModuliPoint {
    let x1 = loop {
        let x = normal(rng);
        if x.abs() > 1e-3 && (x - 1.0).abs() > 1e-3 {
            break x;
        }
    };
    let a = if rng.random_bool(0.5) {
        FRAC_PI_2
    } else {
        -FRAC_PI_2
    };
    ModuliPoint::new(Complex64::new(x1, 0.0), Complex64::new(1.0 - x1, 0.0), a)
}

/// A point with `F < 0` satisfying the side conditions, i.e. the moduli of a
/// quadruple spanning a 3-dimensional complex subspace.
pub fn random_interior_point<R: Rng + ?Sized>(rng: &mut R) -> Result<ModuliPoint> {
    for _ in 0..MAX_ATTEMPTS {
        let m = ModuliPoint::new(
            complex_normal(rng),
            complex_normal(rng),
            rng.random_range(-FRAC_PI_2..FRAC_PI_2),
        );
        let side = (m.x1 * Complex64::from_polar(1.0, -m.a)).re;
        if side > 0.0 && crate::invariants::defining_residual(&m) < -1e-6 * m.scale() {
            return Ok(m);
        }
    }
    Err(Error::ResamplingExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::NumericConfig;
    use crate::gram::gram_of;
    use crate::hermitian::{apply_isometry, herm_product};
    use crate::moduli::{classify, in_moduli_space, tau, variety_residual};
    use proptest::prelude::*;

    #[test]
    fn kinds_parse() {
        for k in QuadrupleKind::ALL {
            assert_eq!(k.to_string().parse::<QuadrupleKind>().unwrap(), k);
            let json = serde_json::to_string(&k).unwrap();
            assert_eq!(json, format!("\"{}\"", k.name()));
        }
        assert!("plane".parse::<QuadrupleKind>().is_err());
    }

    #[test]
    fn deterministic_streams() {
        let a = random_quadruple(3, QuadrupleKind::Generic, &mut seeded_rng(7, 2)).unwrap();
        let b = random_quadruple(3, QuadrupleKind::Generic, &mut seeded_rng(7, 2)).unwrap();
        let c = random_quadruple(3, QuadrupleKind::Generic, &mut seeded_rng(7, 3)).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_ne!(a, c);
    }

    #[test]
    fn golden_point() {
        let p = random_boundary_point(2, &mut seeded_rng(2024, 0)).unwrap();
        let expected = include_str!("../tests/data/golden_point.json");
        assert_eq!(serde_json::to_string(&p).unwrap(), expected.trim());
    }

    #[test]
    fn one_dimensional_points() {
        let mut rng = seeded_rng(1, 0);
        for _ in 0..50 {
            match random_boundary_point(1, &mut rng).unwrap() {
                BoundaryPoint::Finite { z, .. } => assert!(z.is_empty()),
                BoundaryPoint::Infinity => {}
            }
        }
        assert!(random_boundary_point(0, &mut rng).is_err());
        assert!(random_quadruple(1, QuadrupleKind::Generic, &mut rng).is_err());
        assert!(random_quadruple(1, QuadrupleKind::CPlane, &mut rng).is_ok());
    }

    #[test]
    fn kind_examples() {
        let cfg = NumericConfig::default();
        let mut rng = seeded_rng(11, 0);
        for _ in 0..50 {
            let p = random_quadruple(2, QuadrupleKind::CPlane, &mut rng).unwrap();
            assert!(classify(&tau(&p, &cfg).unwrap(), &cfg).is_c_plane);
            let p = random_quadruple(2, QuadrupleKind::RPlane, &mut rng).unwrap();
            assert!(classify(&tau(&p, &cfg).unwrap(), &cfg).is_r_plane);
            let p = random_quadruple(3, QuadrupleKind::Subspace2, &mut rng).unwrap();
            let m = tau(&p, &cfg).unwrap();
            assert!(variety_residual(&m).abs() < 1e-8 * m.scale());
        }
    }

    #[test]
    fn moduli_samplers_land_in_moduli_space() {
        let cfg = NumericConfig::default();
        let mut rng = seeded_rng(5, 0);
        for _ in 0..200 {
            let m = random_basic_variety_point(&mut rng).unwrap();
            assert!(variety_residual(&m).abs() < 1e-9 * m.scale(), "{m:?}");
            assert!(in_moduli_space(&m, 2, &cfg), "{m:?}");
            let m = random_c_plane_point(&mut rng);
            assert!(in_moduli_space(&m, 2, &cfg) && classify(&m, &cfg).is_c_plane);
            let m = random_interior_point(&mut rng).unwrap();
            assert!(!in_moduli_space(&m, 2, &cfg) && in_moduli_space(&m, 3, &cfg));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn isometries_preserve_form(seed in any::<u64>(), n in 1usize..5) {
            let cfg = NumericConfig::default();
            let mut rng = seeded_rng(seed, 0);
            let g = random_isometry(n, &mut rng).unwrap();
            let h = random_isometry(n, &mut rng).unwrap();
            prop_assert!(g.unitarity_residual() < 1e-9);
            prop_assert!(g.compose(&h).unwrap().unitarity_residual() < 1e-9);
            let v = standard_lift(&random_boundary_point(n, &mut rng).unwrap(), n).unwrap();
            let w = standard_lift(&random_boundary_point(n, &mut rng).unwrap(), n).unwrap();
            let (gv, gw) = (apply_isometry(&g, &v).unwrap(), apply_isometry(&g, &w).unwrap());
            prop_assert!(gv.is_null(&cfg));
            let before = herm_product(&v, &w).unwrap();
            let after = herm_product(&gv, &gw).unwrap();
            prop_assert!((before - after).norm() <= 1e-9 * (1.0 + before.norm()));
        }

        #[test]
        fn sampled_quadruples_have_valid_grams(seed in any::<u64>(), n in 2usize..5, k in 0usize..4) {
            let cfg = NumericConfig::default();
            let p = random_quadruple(n, QuadrupleKind::ALL[k], &mut seeded_rng(seed, 0)).unwrap();
            prop_assert!(gram_of(&p.lifts(), &cfg).is_ok());
        }
    }
}
