//! Problem order (n, k) and the radial pole profile it induces.

use crate::error::{Error, Result};
use crate::symm::binomial;
use serde::Serialize;

/// Complex dimension n and Hessian order k, 1 <= k <= n.
///
/// The power-law pole |z|^{2-2n/k} drives everything for k < n; k = n is the
/// Monge-Ampere case with a logarithmic pole and is supported by the solver
/// and barrier machinery, while the estimates whose exponents degenerate at
/// k = n are guarded to k < n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HessianOrder {
    pub n: usize,
    pub k: usize,
}

impl HessianOrder {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n < 1 || k < 1 || k > n {
            return Err(Error::Domain(format!("order requires 1 <= k <= n, got n={n} k={k}")));
        }
        Ok(HessianOrder { n, k })
    }

    /// True in the power-law regime k < n where the pole exponent 2-2n/k < 0.
    pub fn is_power_pole(&self) -> bool {
        self.k < self.n
    }

    /// Pole exponent in rho = |z|^2: the fundamental profile is -rho^p, p = 1 - n/k.
    pub fn pole_exponent(&self) -> f64 {
        1.0 - self.n as f64 / self.k as f64
    }

    /// C(n, k).
    pub fn cnk(&self) -> f64 {
        binomial(self.n, self.k)
    }

    /// Radial profile of the fundamental solution in rho = |z|^2:
    /// phi(rho) = -rho^{1-n/k} for k < n, log(rho) for k = n. Increasing, and
    /// H_k[phi(|z|^2)] = 0 away from the origin.
    pub fn phi(&self, rho: f64) -> f64 {
        if self.is_power_pole() {
            -rho.powf(self.pole_exponent())
        } else {
            rho.ln()
        }
    }

    pub fn phi_d(&self, rho: f64) -> f64 {
        if self.is_power_pole() {
            let p = self.pole_exponent();
            -p * rho.powf(p - 1.0)
        } else {
            1.0 / rho
        }
    }

    pub fn phi_dd(&self, rho: f64) -> f64 {
        if self.is_power_pole() {
            let p = self.pole_exponent();
            -p * (p - 1.0) * rho.powf(p - 2.0)
        } else {
            -1.0 / (rho * rho)
        }
    }

    /// Pole magnitude |z|^{2-2n/k} (resp. -log|z|^2) used in boundary-size
    /// comparisons; equals -phi for k < n.
    pub fn pole_size(&self, rho: f64) -> f64 {
        -self.phi(rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(HessianOrder::new(2, 1).is_ok());
        assert!(HessianOrder::new(2, 2).is_ok());
        assert!(HessianOrder::new(2, 3).is_err());
        assert!(HessianOrder::new(0, 0).is_err());
    }

    #[test]
    fn phi_derivatives_fd() {
        for order in [HessianOrder::new(3, 2).unwrap(), HessianOrder::new(2, 2).unwrap()] {
            let h = 1e-6;
            for rho in [0.3, 1.0, 2.7] {
                let d = (order.phi(rho + h) - order.phi(rho - h)) / (2.0 * h);
                let dd = (order.phi(rho + h) - 2.0 * order.phi(rho) + order.phi(rho - h)) / (h * h);
                assert!((d - order.phi_d(rho)).abs() < 1e-7 * d.abs().max(1.0));
                assert!((dd - order.phi_dd(rho)).abs() < 1e-4 * dd.abs().max(1.0));
            }
        }
    }

    #[test]
    fn phi_increasing() {
        for order in [HessianOrder::new(2, 1).unwrap(), HessianOrder::new(4, 3).unwrap()] {
            assert!(order.phi_d(0.5) > 0.0);
            assert!(order.phi(0.2) < order.phi(0.8));
        }
    }
}
