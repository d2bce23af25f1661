//! The moduli map `τ`, membership in the moduli space, reconstruction of a
//! quadruple from its coordinates, and the classification predicates.
//!
//! For quadruples in `∂CH^2` the coordinates `(X1, X2, A)` satisfy
//!
//! ```text
//! F(X1, X2, A) = -2Re(X1 + X2) - 2Re(X1 conj(X2) e^{-2iA}) + |X1|^2 + |X2|^2 + 1 = 0
//! ```
//!
//! together with `-pi/2 <= A <= pi/2` and `Re(X1 e^{-iA}) >= 0`; every such
//! point is realized by exactly one congruence class. In `∂CH^n`, `n >= 3`,
//! the equation relaxes to `F <= 0`, with equality exactly when the quadruple
//! spans a complex hyperbolic plane.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::hermitian::{HermitianVector, Quadruple};
use crate::invariants::{
    cartan_of_lifts, cross_ratio_of_lifts, defining_residual, face_dets_from_moduli,
    gram_from_moduli, ModuliPoint,
};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `τ(p) = (X(p1,p2,p3,p4), X(p1,p3,p2,p4), A(p1,p2,p3))`, computed from the
/// standard lifts.
pub fn tau(p: &Quadruple, cfg: &NumericConfig) -> Result<ModuliPoint> {
    tau_of_lifts(&p.lifts(), cfg)
}

/// `τ` from arbitrary null lifts; independent of the choice of lifts.
pub fn tau_of_lifts(l: &[HermitianVector; 4], cfg: &NumericConfig) -> Result<ModuliPoint> {
    Ok(ModuliPoint {
        x1: cross_ratio_of_lifts([&l[0], &l[1], &l[2], &l[3]], cfg)?,
        x2: cross_ratio_of_lifts([&l[0], &l[2], &l[1], &l[3]], cfg)?,
        a: cartan_of_lifts([&l[0], &l[1], &l[2]], cfg)?,
    })
}

/// The defining function `F(X1, X2, A)`; equals `|X2|^2 det G`.
pub fn variety_residual(m: &ModuliPoint) -> f64 {
    defining_residual(m)
}

/// Breakdown of a membership test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Membership {
    pub n: usize,
    pub member: bool,
    pub residual: f64,
    pub residual_tol: f64,
    pub cartan_in_range: bool,
    /// `Re(X1 e^{-iA})`, required to be non-negative.
    pub side_condition: f64,
    pub side_condition_ok: bool,
    /// Sign constraint on `Im(X1)` when `A = ±pi/2`.
    pub positive_part_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

fn near_half_pi(a: f64, cfg: &NumericConfig) -> bool {
    (a.abs() - FRAC_PI_2).abs() <= cfg.tol(FRAC_PI_2)
}

/// Tests `m` against the moduli space of quadruples in `∂CH^n`.
pub fn membership(m: &ModuliPoint, n: usize, cfg: &NumericConfig) -> Membership {
    let residual = variety_residual(m);
    let residual_tol = cfg.tol(m.scale());
    let cartan_in_range = m.a.abs() <= FRAC_PI_2 + cfg.tol(FRAC_PI_2);
    let side_condition = (m.x1 * Complex64::from_polar(1.0, -m.a)).re;
    let side_condition_ok = side_condition >= -cfg.tol(m.x1.norm());
    let positive_part_ok = if near_half_pi(m.a, cfg) {
        let b = m.x1.im * m.a.signum();
        b >= -cfg.tol(m.x1.norm())
    } else {
        true
    };

    let reason = if n == 0 {
        Some("n must be positive".to_string())
    } else if m.check_nonzero().is_err() {
        Some("cross-ratios must be nonzero".to_string())
    } else if !cartan_in_range {
        Some(format!("A = {} outside [-pi/2, pi/2]", m.a))
    } else if !side_condition_ok {
        Some(format!("Re(X1 e^(-iA)) = {side_condition:e} is negative"))
    } else if !positive_part_ok {
        Some("Im(X1) has the wrong sign for A = ±pi/2".to_string())
    } else if n <= 2 && residual.abs() > residual_tol {
        Some(format!("F = {residual:e} is not zero"))
    } else if residual > residual_tol {
        Some(format!("F = {residual:e} is positive"))
    } else if n == 1 && !(near_half_pi(m.a, cfg) && cfg.is_zero(side_condition, m.x1.norm())) {
        // ∂CH^1 is a single chain
        Some("configuration does not lie on a chain".to_string())
    } else {
        None
    };

    Membership {
        n,
        member: reason.is_none(),
        residual,
        residual_tol,
        cartan_in_range,
        side_condition,
        side_condition_ok,
        positive_part_ok,
        reason,
    }
}

pub fn in_moduli_space(m: &ModuliPoint, n: usize, cfg: &NumericConfig) -> bool {
    membership(m, n, cfg).member
}

/// Smallest `n` realizing `m`: 2 on the basic variety, otherwise 3.
pub fn minimal_dimension(m: &ModuliPoint, cfg: &NumericConfig) -> usize {
    if cfg.is_zero(variety_residual(m), m.scale()) {
        2
    } else {
        3
    }
}

/// Builds null lifts `P1, ..., P4` in `C^{n,1}` whose normalized Gram matrix
/// is the one encoded by `m`.
///
/// `P1 = e_{n+1}`, `P2 = e_1`, `P3 = (z1, z, 1)`, `P4 = (w1, w, w_{n+1})`
/// where `z1, w1, w_{n+1}` are read off the Gram matrix and the middle blocks
/// `z, w in C^{n-1}` must satisfy `|z|^2 = -2Re(g13)`,
/// `|w|^2 = -2Re(g24 conj(g14))` and `<<z, w>> = 1 - conj(g13) g24 - g14`.
pub fn reconstruct(m: &ModuliPoint, n: usize, cfg: &NumericConfig) -> Result<[HermitianVector; 4]> {
    let check = membership(m, n, cfg);
    if let Some(reason) = check.reason {
        return Err(Error::NotInModuliSpace { n, reason });
    }
    let g = gram_from_moduli(m)?;
    let (g13, g14, g24) = (g.g13(), g.g14(), g.g24());
    let z1 = g13.conj();
    let w1 = g14.conj();
    let w_last = g24.conj();

    // squared lengths at rounding level are zero; their square roots would
    // otherwise inject sqrt(eps) noise into the lifts
    let snap = |x: f64, scale: f64| {
        if x <= 64.0 * f64::EPSILON * scale {
            0.0
        } else {
            x
        }
    };
    let zz = snap(-2.0 * g13.re, 2.0);
    let ww = snap(-2.0 * (g24 * g14.conj()).re, 2.0 * g24.norm() * g14.norm());
    let (zn, wn) = (zz.sqrt(), ww.sqrt());
    let target = ONE - g13.conj() * g24 - g14;

    // |target|^2 - |z|^2 |w|^2 = det G, so any residual of the inner product
    // equation is bounded by sqrt(|det G|)
    let det_tol = check.residual_tol / m.x2.norm_sqr();
    let verify = |residual: f64| {
        if residual * residual <= det_tol {
            Ok(())
        } else {
            Err(Error::InconsistentGram { residual })
        }
    };

    let mut z = vec![ZERO; n - 1];
    let mut w = vec![ZERO; n - 1];
    match n {
        1 => verify(target.norm())?,
        2 => {
            // rotate w2 so that z2 conj(w2) has the phase of the target
            z[0] = Complex64::new(zn, 0.0);
            w[0] = if target.norm() > 0.0 {
                target.conj() / target.norm() * wn
            } else {
                Complex64::new(wn, 0.0)
            };
            verify((z[0] * w[0].conj() - target).norm())?;
        }
        _ => {
            // pivot on the longer block; the other is fixed by the inner
            // product and completed to the right length in a new direction
            if zn >= wn && zn > 0.0 {
                z[0] = Complex64::new(zn, 0.0);
                w[0] = target.conj() / zn;
                w[1] = Complex64::new((ww - w[0].norm_sqr()).max(0.0).sqrt(), 0.0);
            } else if wn > 0.0 {
                w[0] = Complex64::new(wn, 0.0);
                z[0] = target / wn;
                z[1] = Complex64::new((zz - z[0].norm_sqr()).max(0.0).sqrt(), 0.0);
            } else {
                verify(target.norm())?;
            }
        }
    }

    let e = |k: usize| {
        let mut v = vec![ZERO; n + 1];
        v[k] = ONE;
        HermitianVector::with_dim(n, v)
    };
    let p3: Vec<Complex64> = std::iter::once(z1)
        .chain(z)
        .chain(std::iter::once(ONE))
        .collect();
    let p4: Vec<Complex64> = std::iter::once(w1)
        .chain(w)
        .chain(std::iter::once(w_last))
        .collect();
    Ok([
        e(n)?,
        e(0)?,
        HermitianVector::with_dim(n, p3)?,
        HermitianVector::with_dim(n, p4)?,
    ])
}

/// Membership flags for the four Cartan varieties `S_ijk`, i.e. whether
/// face `(i, j, k)` lies on a chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanVarietyFlags {
    pub s123: bool,
    pub s124: bool,
    pub s134: bool,
    pub s234: bool,
}

impl CartanVarietyFlags {
    pub fn as_array(&self) -> [bool; 4] {
        [self.s123, self.s124, self.s134, self.s234]
    }

    pub fn count(&self) -> usize {
        self.as_array().iter().filter(|&&b| b).count()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetSign {
    Negative,
    Zero,
    /// Not realized by any configuration.
    Positive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub variety_residual: f64,
    #[serde(flatten)]
    pub cartan_variety_flags: CartanVarietyFlags,
    pub face_determinants: [f64; 4],
    pub is_c_plane: bool,
    pub is_r_plane: bool,
    pub in_real_slice: bool,
    pub in_singular_set: bool,
    pub det_sign: DetSign,
}

/// Evaluates every classification predicate at `m`.
pub fn classify(m: &ModuliPoint, cfg: &NumericConfig) -> ClassificationReport {
    let (x1, x2) = (m.x1, m.x2);
    let e = Complex64::from_polar(1.0, m.a);
    let residual = variety_residual(m);
    let on_variety = cfg.is_zero(residual, m.scale());

    let flags = CartanVarietyFlags {
        s123: cfg.is_zero(e.re, 1.0),
        s124: cfg.is_zero((x1.conj() * e).re, x1.norm()),
        s134: cfg.is_zero((x2.conj() * e.conj()).re, x2.norm()),
        s234: cfg.is_zero((x1 * x2.conj() * e.conj()).re, x1.norm() * x2.norm()),
    };

    let real1 = cfg.is_zero(x1.im, x1.norm());
    let real2 = cfg.is_zero(x2.im, x2.norm());
    let chain_angle = near_half_pi(m.a, cfg);
    let sum_is_one = cfg.is_zero((x1 + x2 - ONE).norm(), 1.0 + x1.norm() + x2.norm());

    let is_c_plane = chain_angle && real1 && real2 && sum_is_one;

    let (a, c) = (x1.re, x2.re);
    let r_relation = -2.0 * (a + c) - 2.0 * a * c + a * a + c * c + 1.0;
    let is_r_plane = cfg.is_zero(m.a, 1.0)
        && real1
        && real2
        && a > cfg.tol(0.0)
        && c > cfg.tol(0.0)
        && cfg.is_zero(r_relation, m.scale());

    let in_singular_set =
        chain_angle && cfg.is_zero(a + c - 1.0, 1.0 + a.abs() + c.abs()) && real1 && real2;

    let det_sign = if on_variety {
        DetSign::Zero
    } else if residual < 0.0 {
        DetSign::Negative
    } else {
        DetSign::Positive
    };

    ClassificationReport {
        variety_residual: residual,
        cartan_variety_flags: flags,
        face_determinants: face_dets_from_moduli(m),
        is_c_plane,
        is_r_plane,
        in_real_slice: real1 && real2 && on_variety,
        in_singular_set,
        det_sign,
    }
}

/// `Re(X1 e^{-iA}) >= 0` for a point of the basic variety with `|A| < pi/2`.
///
/// The inequality holds automatically there; this evaluates it as a check.
pub fn positivity_check(m: &ModuliPoint, cfg: &NumericConfig) -> Result<bool> {
    let residual = variety_residual(m);
    if !cfg.is_zero(residual, m.scale()) {
        return Err(Error::PreconditionViolated(format!(
            "point is off the basic variety (F = {residual:e})"
        )));
    }
    if m.a.abs() >= FRAC_PI_2 - cfg.tol(FRAC_PI_2) {
        return Err(Error::PreconditionViolated(format!(
            "|A| = {} is not below pi/2",
            m.a.abs()
        )));
    }
    let value = (m.x1 * Complex64::from_polar(1.0, -m.a)).re;
    Ok(value >= -cfg.tol(m.x1.norm()))
}
