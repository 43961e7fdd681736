//! The reduced density-matrix kernel of one oscillator,
//!
//! ```text
//! ρ_A[x, x'] = N e^{−a(x² + x'²) + 2b x x'}
//!              · [1 + α·s·{g₁(x⁴+x'⁴) + g₂(x³x' + xx'³) + g₃x²x'² + g₄(x²+x'²) + g₅xx' + g₆}]
//! ```
//!
//! with `s = m / (256 ħ (ω₁+ω₂)⁵)`. The polynomials `g₁…g₆` are kept as
//! written, expanded in `ω₁, ω₂`.

use std::f64::consts::PI;

use crate::model::NormalModes;
use crate::series::Series1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelCoefficients {
    pub a: f64,
    pub b: f64,
    pub g1: f64,
    pub g2: f64,
    pub g3: f64,
    pub g4: f64,
    pub g5: f64,
    pub g6: f64,
    /// Gaussian normalization `√(2mω₁ω₂ / (πħ(ω₁+ω₂)))`.
    pub prefactor: f64,
    /// `m / (256 ħ (ω₁+ω₂)⁵)`.
    pub correction_scale: f64,
}

/// Evaluates `Σ cₖ ω₁^(d−k) ω₂^k`.
fn homogeneous(coeffs: &[f64], w1: f64, w2: f64) -> f64 {
    let d = coeffs.len() as i32 - 1;
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| c * w1.powi(d - k as i32) * w2.powi(k as i32))
        .sum()
}

pub fn kernel_coefficients(modes: &NormalModes, m: f64, hbar: f64) -> KernelCoefficients {
    let (w1, w2) = (modes.omega1, modes.omega2);
    let sum = w1 + w2;
    let diff2 = (w1 - w2) * (w1 - w2);

    let a = m * (w1 * w1 + w2 * w2 + 6.0 * w1 * w2) / (8.0 * hbar * sum);
    let b = m * diff2 / (8.0 * hbar * sum);

    let g1 = -m
        * m
        * homogeneous(
            &[1.0, 5.0, 94.0, 459.0, 930.0, 459.0, 94.0, 5.0, 1.0],
            w1,
            w2,
        );
    let g2 = 4.0 * m * m * diff2 * homogeneous(&[1.0, 7.0, 35.0, 106.0, 35.0, 7.0, 1.0], w1, w2);
    let g3 = -6.0 * m * m * diff2 * diff2 * homogeneous(&[1.0, 9.0, 28.0, 9.0, 1.0], w1, w2);
    let g4 =
        24.0 * hbar * m * sum * homogeneous(&[2.0, 23.0, 82.0, 170.0, 82.0, 23.0, 2.0], w1, w2);
    let g5 = -48.0 * hbar * m * sum * diff2 * homogeneous(&[2.0, 11.0, 30.0, 11.0, 2.0], w1, w2);
    let g6 = -48.0 * hbar * hbar * sum * sum * homogeneous(&[4.0, 17.0, 38.0, 17.0, 4.0], w1, w2);

    KernelCoefficients {
        a,
        b,
        g1,
        g2,
        g3,
        g4,
        g5,
        g6,
        prefactor: (2.0 * m * w1 * w2 / (PI * hbar * sum)).sqrt(),
        correction_scale: m / (256.0 * hbar * sum.powi(5)),
    }
}

impl KernelCoefficients {
    /// The first-order polynomial bracket, without `correction_scale`.
    pub fn polynomial(&self, x: f64, xp: f64) -> f64 {
        let (x2, xp2) = (x * x, xp * xp);
        let cubic = |u: f64, v: f64| u * u * u * v;
        self.g1 * (x2 * x2 + xp2 * xp2)
            + self.g2 * (cubic(x, xp) + cubic(xp, x))
            + self.g3 * (x2 * xp2)
            + self.g4 * (x2 + xp2)
            + self.g5 * (x * xp)
            + self.g6
    }

    pub fn gaussian(&self, x: f64, xp: f64) -> f64 {
        self.prefactor * (-self.a * (x * x + xp * xp) + 2.0 * self.b * (x * xp)).exp()
    }

    pub fn eval(&self, x: f64, xp: f64) -> Series1 {
        let c0 = self.gaussian(x, xp);
        Series1::new(c0, c0 * self.correction_scale * self.polynomial(x, xp))
    }
}

/// `ρ_A[x, x']` as a first-order series.
pub fn kernel_eval(x: f64, xp: f64, coeffs: &KernelCoefficients) -> Series1 {
    coeffs.eval(x, xp)
}

/// Left-hand side of the trace-normalization identity
/// `3(2g₁+2g₂+g₃)/(16(a−b)²) + (2g₄+g₅)/(4(a−b)) + g₆ = 0`, divided by `|g₆|`.
pub fn normalization_residual(coeffs: &KernelCoefficients) -> f64 {
    let c = coeffs;
    let d = c.a - c.b;
    let lhs = 3.0 * (2.0 * c.g1 + 2.0 * c.g2 + c.g3) / (16.0 * d * d)
        + (2.0 * c.g4 + c.g5) / (4.0 * d)
        + c.g6;
    lhs / c.g6.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{normal_modes, OscillatorConfig, OscillatorMode};
    use crate::wavefunctions::phi;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn coeffs_for(w1: f64, w2: f64) -> KernelCoefficients {
        kernel_coefficients(&NormalModes::from_frequencies(w1, w2).unwrap(), 1.0, 1.0)
    }

    #[test]
    fn degenerate_modes_kill_odd_couplings() {
        let c = coeffs_for(1.4, 1.4);
        assert_eq!((c.b, c.g2, c.g3, c.g5), (0.0, 0.0, 0.0, 0.0));
        // coefficient sum 1+5+94+459+930+459+94+5+1 = 2048
        assert_relative_eq!(c.g1, -2048.0 * 1.4f64.powi(8), max_relative = 1e-14);
        assert!(normalization_residual(&c).abs() <= 1e-14);
    }

    #[test]
    fn a_plus_minus_b_closed_forms() {
        let (w1, w2, m, hbar) = (0.8, 2.9, 1.7, 0.6);
        let c = kernel_coefficients(&NormalModes::from_frequencies(w1, w2).unwrap(), m, hbar);
        assert_relative_eq!(
            c.a + c.b,
            m * (w1 + w2) / (4.0 * hbar),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            c.a - c.b,
            m * w1 * w2 / (hbar * (w1 + w2)),
            max_relative = 1e-14
        );
        assert!(c.a > c.b && c.b >= 0.0);
    }

    #[test]
    fn unit_coupling_residual() {
        let c = coeffs_for(1.0, 3f64.sqrt());
        assert!(normalization_residual(&c).abs() <= 1e-12);
    }

    #[test]
    fn pure_state_limit() {
        let cfg = OscillatorConfig::unit(0.0, 0.0).unwrap();
        let modes = normal_modes(&cfg).unwrap();
        let c = kernel_coefficients(&modes, 1.0, 1.0);
        let mode = OscillatorMode::new(1.0, 1.0, 1.0).unwrap();
        for &(x, xp) in &[(0.0, 0.0), (0.3, -1.1), (1.2, 0.7)] {
            let k = kernel_eval(x, xp, &c);
            assert_relative_eq!(
                k.c0,
                phi(0, x, &mode) * phi(0, xp, &mode),
                max_relative = 1e-14
            );
        }
        // diagonal bracket integrates to zero against the Gaussian
        let h = 0.01;
        let mut c1 = 0.0;
        let mut c0 = 0.0;
        for i in -1200..=1200 {
            let x = i as f64 * h;
            let k = kernel_eval(x, x, &c);
            c0 += h * k.c0;
            c1 += h * k.c1;
        }
        assert!((c0 - 1.0).abs() < 1e-12);
        assert!(c1.abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn identity_holds_for_random_modes(w1 in 0.5f64..5.0, w2 in 0.5f64..5.0) {
            prop_assert!(normalization_residual(&coeffs_for(w1, w2)).abs() <= 1e-12);
        }

        #[test]
        fn kernel_is_symmetric(x in -4.0f64..4.0, xp in -4.0f64..4.0, w2 in 1.0f64..8.0) {
            let c = coeffs_for(1.0, w2);
            prop_assert_eq!(kernel_eval(x, xp, &c), kernel_eval(xp, x, &c));
        }
    }
}
