//! Floating-point tolerances shared by every predicate in the crate.

use serde::{Deserialize, Serialize};

/// Absolute and relative tolerances.
///
/// A quantity `x` whose natural magnitude is `scale` is treated as zero when
/// `|x| <= abs_tol + rel_tol * scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            rel_tol: 1e-9,
        }
    }
}

impl NumericConfig {
    /// Both tolerances set to `tol`.
    pub fn uniform(tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: tol,
        }
    }

    #[inline]
    pub fn tol(&self, scale: f64) -> f64 {
        self.abs_tol + self.rel_tol * scale.abs()
    }

    #[inline]
    pub fn is_zero(&self, x: f64, scale: f64) -> bool {
        x.abs() <= self.tol(scale)
    }

    #[inline]
    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.tol(a.abs().max(b.abs()))
    }
}
