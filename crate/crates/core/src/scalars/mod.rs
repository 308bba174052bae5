//! Exact cyclotomic numbers for characters and modular data, and the
//! double-precision side used for intertwiners and cocycle phases.

pub mod cycmat;
pub mod cyclotomic;

pub use cycmat::CycMatrix;
pub use cyclotomic::{format_rational, ratio_to_f64, Cyclotomic, Q};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Numerical complex value. Serialized as `[re, im]`.
pub type ComplexApprox = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub eps_abs: f64,
    pub eps_rel: f64,
    pub rng_seed: u64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            eps_abs: 1e-9,
            eps_rel: 1e-9,
            rng_seed: 0,
        }
    }
}

impl ToleranceConfig {
    pub fn with_eps(eps: f64) -> Self {
        ToleranceConfig {
            eps_abs: eps,
            eps_rel: eps,
            ..Default::default()
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn is_valid(&self) -> bool {
        self.eps_abs > 0.0 && self.eps_rel > 0.0
    }

    /// |a − b| ≤ eps_abs + eps_rel·max(|a|, |b|)
    pub fn approx_eq(&self, a: ComplexApprox, b: ComplexApprox) -> bool {
        (a - b).norm() <= self.eps_abs + self.eps_rel * a.norm().max(b.norm())
    }

    pub fn approx_zero(&self, a: ComplexApprox) -> bool {
        a.norm() <= self.eps_abs
    }
}

pub fn approx_eq(a: ComplexApprox, b: ComplexApprox, tol: &ToleranceConfig) -> bool {
    tol.approx_eq(a, b)
}

pub(crate) fn complex_pair(z: ComplexApprox) -> [f64; 2] {
    [z.re, z.im]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn approx_eq_examples() {
        let tol = ToleranceConfig::default();
        assert!(approx_eq(
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0, 1e-12),
            &tol
        ));
        assert!(!approx_eq(
            Complex64::new(1.0, 0.0),
            Complex64::new(1.1, 0.0),
            &tol
        ));
        assert!(approx_eq(
            Complex64::new(0.0, 0.0),
            Complex64::new(5e-10, 0.0),
            &tol
        ));
    }

    #[test]
    fn relative_part_scales() {
        let tol = ToleranceConfig::default();
        assert!(tol.approx_eq(Complex64::new(1e6, 0.0), Complex64::new(1e6 + 1e-4, 0.0)));
        assert!(!tol.approx_eq(Complex64::new(1e6, 0.0), Complex64::new(1e6 + 1e-2, 0.0)));
    }
}
