//! Shared numerical substrate: Gaussian quadrature rules, Gaussian-weighted
//! plane integrals, the matrix exponential, and exact rational utilities.

pub mod exact;
pub mod expm;
pub mod poly;
pub mod quadrature;

pub use exact::RatMatrix;
pub use expm::{matrix_exp, ExpResult};
pub use poly::Poly;
pub use quadrature::{
    adaptive_integrate, gamma_moment, gaussian_plane_integral, gaussian_space_integral,
    GammaMoment, QuadratureKind, QuadratureRule, SphereRule,
};

use serde::{Deserialize, Serialize};

/// Every tolerance used by the verification code lives here.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Agreement between two successive quadrature orders.
    pub quadrature: f64,
    /// Identities that hold exactly up to floating-point rounding.
    pub exact_identity: f64,
    /// Operator identities limited by Fock-space truncation.
    pub truncation: f64,
    /// Off-diagonal orthogonality of matrix coefficients.
    pub orthogonality: f64,
    /// Relative constancy of formal-degree products.
    pub formal_degree: f64,
    /// Cocycle and commuting-square residuals on quadrature-backed ladders.
    pub ladder: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            quadrature: 1e-8,
            exact_identity: 1e-10,
            truncation: 1e-6,
            orthogonality: 1e-8,
            formal_degree: 1e-6,
            ladder: 1e-9,
        }
    }
}

/// Relative difference with an absolute fallback near zero.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// `ln Γ(x)` for `x > 0` (Lanczos, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEFFS[0];
    let t = x + 7.5;
    for (i, c) in COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Binomial coefficient as `u128`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn factorial(n: u64) -> num_bigint::BigInt {
    (1..=n).fold(num_bigint::BigInt::from(1), |acc, k| acc * k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_gamma_matches_factorials() {
        let mut fact = 1.0f64;
        for n in 1..25u32 {
            let expected = fact.ln() + (n as f64).ln();
            assert!((ln_gamma(n as f64 + 1.0) - expected).abs() < 1e-12 * expected.abs().max(1.0));
            fact *= n as f64;
        }
        // Γ(1/2) = √π
        let half = ln_gamma(0.5).exp();
        assert!((half - std::f64::consts::PI.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(20, 10), 184_756);
    }
}
