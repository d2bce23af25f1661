//! Classification of ordered quadruples of boundary points of complex
//! hyperbolic space up to holomorphic isometry.
//!
//! The pipeline is: boundary points in horospherical coordinates are lifted
//! to null vectors of `C^{n,1}` ([`hermitian`]), their Gram matrix is brought
//! to a unique normal form ([`gram`]), and the normal form is traded for the
//! moduli coordinates `(X1, X2, A)` made of two Korányi–Reimann cross-ratios
//! and Cartan's angular invariant ([`invariants`], [`moduli`]). The inverse
//! direction rebuilds a quadruple from its coordinates. [`crossratio`] holds
//! the Parker–Platis coordinates and the explicit family on which they fail
//! to separate congruence classes.

pub mod config;
pub mod crossratio;
pub mod error;
pub mod gram;
pub mod hermitian;
pub mod invariants;
pub mod moduli;
pub mod sampling;

pub use num_complex::Complex64;

pub use config::NumericConfig;
pub use crossratio::{
    certify_noninjectivity, counterexample_pair, pp_residuals, theta, Certificate,
};
pub use error::{Error, Result};
pub use gram::{
    congruent_antiholomorphic, congruent_holomorphic, det_face, det_gram, gram_of, normalize, Face,
    GramMatrix, NormalizedGram,
};
pub use hermitian::{
    apply_isometry, herm_product, point_from_lift, standard_lift, BoundaryPoint, HermitianVector,
    Isometry, Quadruple,
};
pub use invariants::{
    cartan, cross_ratio, det_from_moduli, face_dets_from_moduli, gram_from_moduli,
    moduli_from_gram, pp_point, ModuliPoint, PPPoint,
};
pub use moduli::{
    classify, in_moduli_space, membership, positivity_check, reconstruct, tau, variety_residual,
    ClassificationReport, DetSign, Membership,
};
pub use sampling::{random_boundary_point, random_isometry, random_quadruple, QuadrupleKind};
