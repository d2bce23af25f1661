//! Parker–Platis cross-ratio coordinates and the family of quadruples on
//! which they fail to separate holomorphic congruence classes.
//!
//! A quadruple determines the cross-ratios `X1 = X(p1,p2,p3,p4)`,
//! `X2 = X(p1,p3,p2,p4)`, `X3 = X(p2,p3,p1,p4)`, which satisfy
//! `|X2| = |X1||X3|` and
//! `2|X1|^2 Re(X3) = |X1|^2 + |X2|^2 + 1 - 2Re(X1 + X2)` in `∂CH^2`.
//! The projection `θ(X1, X2, A) = (X1, X2, (X2/X1) e^{2iA})` identifies the
//! points with `A = pi/2` and `A = -pi/2`, so mirror-image quadruples with
//! opposite Cartan invariant share their cross-ratios.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::config::NumericConfig;
use crate::error::{Error, Result};
use crate::gram::{
    congruent_antiholomorphic, congruent_holomorphic, gram_of, normalize, GramMatrix,
    NormalizedGram,
};
use crate::hermitian::{BoundaryPoint, Quadruple};
use crate::invariants::{pp_point_of_lifts, ModuliPoint, PPPoint};
use crate::moduli::tau_of_lifts;

/// `(|X2| - |X1||X3|, 2|X1|^2 Re(X3) - |X1|^2 - |X2|^2 - 1 + 2Re(X1 + X2))`.
pub fn pp_residuals(x: &PPPoint) -> (f64, f64) {
    let n1 = x.x1.norm();
    let r1 = x.x2.norm() - n1 * x.x3.norm();
    let r2 =
        2.0 * n1 * n1 * x.x3.re - x.x1.norm_sqr() - x.x2.norm_sqr() - 1.0 + 2.0 * (x.x1 + x.x2).re;
    (r1, r2)
}

pub fn theta(m: &ModuliPoint) -> Result<PPPoint> {
    if m.x1 == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroCrossRatio { which: "x1" });
    }
    Ok(PPPoint {
        x1: m.x1,
        x2: m.x2,
        x3: m.x2 / m.x1 * Complex64::from_polar(1.0, 2.0 * m.a),
    })
}

/// `p(t) = ((0,0), ∞, (0,1), (0,t))` and its mirror image with negated
/// heights, both in `∂CH^2`.
pub fn counterexample_pair(t: f64, cfg: &NumericConfig) -> Result<(Quadruple, Quadruple)> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::InvalidParameter(format!("t = {t} must be positive")));
    }
    if cfg.is_zero(t - 1.0, 1.0) {
        return Err(Error::InvalidParameter(
            "t = 1 makes p3 and p4 coincide".into(),
        ));
    }
    let zero = || vec![Complex64::new(0.0, 0.0)];
    let make = |sign: f64| {
        Quadruple::new(
            2,
            [
                BoundaryPoint::finite(zero(), 0.0),
                BoundaryPoint::Infinity,
                BoundaryPoint::finite(zero(), sign),
                BoundaryPoint::finite(zero(), sign * t),
            ],
        )
    };
    Ok((make(1.0)?, make(-1.0)?))
}

/// Everything computed for one member of the pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateSide {
    pub quadruple: Quadruple,
    /// Hermitian products of the standard lifts.
    pub gram: GramMatrix,
    pub normal_form: NormalizedGram,
    pub pp_point: PPPoint,
    pub moduli: ModuliPoint,
}

impl CertificateSide {
    fn compute(quadruple: Quadruple, cfg: &NumericConfig) -> Result<Self> {
        let lifts = quadruple.lifts();
        let gram = gram_of(&lifts, cfg)?;
        Ok(Self {
            normal_form: normalize(&gram, cfg)?,
            pp_point: pp_point_of_lifts(&lifts, cfg)?,
            moduli: tau_of_lifts(&lifts, cfg)?,
            gram,
            quadruple,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateClauses {
    pub same_cross_ratios: bool,
    pub not_holomorphically_congruent: bool,
    pub antiholomorphically_congruent: bool,
    pub cartan_sign_flipped: bool,
}

/// Hand-checkable evidence that the cross-ratio map is not injective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub t: f64,
    pub p: CertificateSide,
    pub p_star: CertificateSide,
    pub clauses: CertificateClauses,
}

/// Builds the pair for `t` and checks that the two quadruples have equal
/// cross-ratios, are mirror images, are not holomorphically congruent, and
/// have moduli that differ only in the sign of `A`.
pub fn certify_noninjectivity(t: f64, cfg: &NumericConfig) -> Result<Certificate> {
    let (p, q) = counterexample_pair(t, cfg)?;
    let holo = congruent_holomorphic(&p, &q, cfg)?;
    let anti = congruent_antiholomorphic(&p, &q, cfg)?;
    let p = CertificateSide::compute(p, cfg)?;
    let q = CertificateSide::compute(q, cfg)?;

    let (mp, mq) = (&p.moduli, &q.moduli);
    let tol = cfg.tol(mp.scale());
    let clauses = CertificateClauses {
        same_cross_ratios: p.pp_point.max_rel_diff(&q.pp_point) <= tol,
        not_holomorphically_congruent: !holo,
        antiholomorphically_congruent: anti,
        cartan_sign_flipped: (mp.x1 - mq.x1).norm() <= tol
            && (mp.x2 - mq.x2).norm() <= tol
            && (mp.a + mq.a).abs() <= cfg.tol(mp.a)
            && !cfg.is_zero(mp.a, 1.0),
    };

    let failed = [
        (clauses.same_cross_ratios, "same_cross_ratios"),
        (
            clauses.not_holomorphically_congruent,
            "not_holomorphically_congruent",
        ),
        (
            clauses.antiholomorphically_congruent,
            "antiholomorphically_congruent",
        ),
        (clauses.cartan_sign_flipped, "cartan_sign_flipped"),
    ]
    .into_iter()
    .find(|(ok, _)| !ok);
    if let Some((_, clause)) = failed {
        return Err(Error::CertificateFailure { clause });
    }

    Ok(Certificate {
        t,
        p,
        p_star: q,
        clauses,
    })
}
