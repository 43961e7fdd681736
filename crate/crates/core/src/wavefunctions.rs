//! Hermite-function eigenstates, their first-order quartic-momentum
//! corrections, and the ground state of the coupled pair.

use std::f64::consts::{PI, SQRT_2};

use crate::error::Result;
use crate::model::{normal_modes, NormalModes, OscillatorConfig, OscillatorMode};
use crate::series::Series1;

/// Physicists' Hermite polynomial `H_n(z)` by upward recurrence.
pub fn hermite(n: usize, z: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * z;
    for k in 1..n {
        let next = 2.0 * z * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Normalized oscillator eigenfunction `φ_n(x : ω)`; zero for `n < 0`.
pub fn phi(n: i64, x: f64, mode: &OscillatorMode) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let n = n as usize;
    let mw = mode.mass * mode.omega / mode.hbar;
    let z = mw.sqrt() * x;
    // 1/√(2ⁿ n!) built incrementally
    let norm = (1..=n).fold(1.0, |acc, k| acc / (2.0 * k as f64).sqrt());
    norm * (mw / PI).powf(0.25) * hermite(n, z) * (-0.5 * z * z).exp()
}

/// Coefficients `(offset, weight)` of the first-order state correction in
/// units of `α_eff m ħ ω`.
fn correction_terms(n: usize) -> [(i64, f64); 4] {
    let n = n as f64;
    [
        (2, (2.0 * n + 3.0) * ((n + 1.0) * (n + 2.0)).sqrt() / 4.0),
        (-2, -(2.0 * n - 1.0) * (n * (n - 1.0)).max(0.0).sqrt() / 4.0),
        (
            -4,
            (n * (n - 1.0) * (n - 2.0) * (n - 3.0)).max(0.0).sqrt() / 16.0,
        ),
        (
            4,
            -((n + 1.0) * (n + 2.0) * (n + 3.0) * (n + 4.0)).sqrt() / 16.0,
        ),
    ]
}

/// Level `n` of `p²/2m + (α_eff/m) p⁴ + m ω² x²/2` to first order, as a
/// series in the global α with `α_eff = coupling · α`.
pub fn psi_perturbed(n: usize, x: f64, coupling: f64, mode: &OscillatorMode) -> Series1 {
    let c1 = correction_terms(n)
        .iter()
        .map(|&(offset, w)| w * phi(n as i64 + offset, x, mode))
        .sum::<f64>();
    Series1::new(phi(n as i64, x, mode), coupling * mode.alpha_scale() * c1)
}

/// Ground state `Φ₀,₀(x₁, x₂)` of the coupled system, including the
/// first-order admixtures from the quartic terms and from
/// `ΔĤ = 3α π₁² π₂² / m`.
#[derive(Debug, Clone, Copy)]
pub struct GroundState {
    modes: NormalModes,
    mode1: OscillatorMode,
    mode2: OscillatorMode,
    scale: f64,
}

impl GroundState {
    pub fn new(config: &OscillatorConfig) -> Result<Self> {
        let modes = normal_modes(config)?;
        Ok(GroundState {
            modes,
            mode1: OscillatorMode::new(modes.omega1, config.mass, config.hbar)?,
            mode2: OscillatorMode::new(modes.omega2, config.mass, config.hbar)?,
            scale: config.mass * config.hbar,
        })
    }

    pub fn modes(&self) -> &NormalModes {
        &self.modes
    }

    pub fn eval(&self, x1: f64, x2: f64) -> Series1 {
        let y1 = (x1 + x2) / SQRT_2;
        let y2 = (x2 - x1) / SQRT_2;
        let a = [0, 2, 4].map(|n| phi(n, y1, &self.mode1));
        let b = [0, 2, 4].map(|n| phi(n, y2, &self.mode2));
        let (w1, w2) = (self.modes.omega1, self.modes.omega2);
        let sum = w1 + w2;

        let bracket = 3.0 * SQRT_2 / 8.0 * sum * (a[0] * b[1] + a[1] * b[0])
            - 6f64.sqrt() / 16.0 * (w1 * a[2] * b[0] + w2 * a[0] * b[2])
            - 0.75 * w1 * w2 / sum * a[1] * b[1];
        Series1::new(a[0] * b[0], self.scale * bracket)
    }
}

/// Convenience wrapper around [`GroundState::eval`].
pub fn ground_wavefunction(x1: f64, x2: f64, config: &OscillatorConfig) -> Result<Series1> {
    Ok(GroundState::new(config)?.eval(x1, x2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn unit() -> OscillatorMode {
        OscillatorMode::new(1.0, 1.0, 1.0).unwrap()
    }

    /// Trapezoid rule on [-half, half]; spectrally accurate for Gaussian tails.
    fn integrate(half: f64, points: usize, f: impl Fn(f64) -> f64) -> f64 {
        let h = 2.0 * half / (points - 1) as f64;
        let inner: f64 = (1..points - 1).map(|i| f(-half + i as f64 * h)).sum();
        h * (inner + 0.5 * (f(-half) + f(half)))
    }

    #[test]
    fn hermite_values() {
        assert_eq!(hermite(0, 0.7), 1.0);
        assert_eq!(hermite(2, 1.0), 2.0);
        assert_eq!(hermite(4, 0.0), 12.0);
        let z: f64 = 0.37;
        assert_relative_eq!(
            hermite(4, z),
            16.0 * z.powi(4) - 48.0 * z * z + 12.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn phi_peak_and_parity() {
        assert_relative_eq!(phi(0, 0.0, &unit()), PI.powf(-0.25), max_relative = 1e-15);
        assert_eq!(phi(1, 0.0, &unit()), 0.0);
        assert_eq!(phi(-2, 0.3, &unit()), 0.0);
        let mode = OscillatorMode::new(1.7, 0.8, 1.3).unwrap();
        for n in 0..9 {
            for &x in &[0.1, 0.55, 1.9, 3.2] {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert_eq!(phi(n, -x, &mode), sign * phi(n, x, &mode));
            }
        }
    }

    #[test]
    fn orthonormal_up_to_eight() {
        let mode = OscillatorMode::new(1.3, 1.0, 1.0).unwrap();
        let half = 10.0 * mode.length_scale();
        for n in 0..=8 {
            for k in 0..=8 {
                let v = integrate(half, 801, |x| phi(n, x, &mode) * phi(k, x, &mode));
                let target = if n == k { 1.0 } else { 0.0 };
                assert!((v - target).abs() < 1e-8, "<{n}|{k}> = {v}");
            }
        }
    }

    #[test]
    fn ground_correction_uses_only_upper_levels() {
        let mode = unit();
        let x = 0.4;
        let s = psi_perturbed(0, x, 1.0, &mode);
        let expected =
            3.0 * SQRT_2 / 4.0 * phi(2, x, &mode) - 24f64.sqrt() / 16.0 * phi(4, x, &mode);
        assert_eq!(s.c0, phi(0, x, &mode));
        assert_relative_eq!(s.c1, expected, max_relative = 1e-14);
        assert_eq!(s.eval(0.0), phi(0, x, &mode));
    }

    #[test]
    fn first_order_norm_vanishes() {
        let mode = OscillatorMode::new(0.9, 1.1, 1.0).unwrap();
        let half = 10.0 * mode.length_scale();
        for n in 0..=4 {
            let norm = integrate(half, 801, |x| {
                let s = psi_perturbed(n, x, 1.0, &mode);
                (s * s).c1
            });
            assert!(norm.abs() <= 1e-7, "n = {n}: {norm}");
        }
    }

    #[test]
    fn uncoupled_ground_peak() {
        let cfg = OscillatorConfig::unit(0.0, 0.0).unwrap();
        let v = ground_wavefunction(0.0, 0.0, &cfg).unwrap();
        assert_relative_eq!(v.c0, 1.0 / PI.sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn ground_state_first_order_norm_vanishes() {
        let cfg = OscillatorConfig::unit(1.0, 0.0).unwrap();
        let gs = GroundState::new(&cfg).unwrap();
        let half = 10.0;
        let inner = |x1: f64| {
            integrate(half, 401, |x2| {
                let v = gs.eval(x1, x2);
                (v * v).c1
            })
        };
        let c1 = integrate(half, 401, inner);
        let inner0 = |x1: f64| integrate(half, 401, |x2| gs.eval(x1, x2).c0.powi(2));
        let c0 = integrate(half, 401, inner0);
        assert!((c0 - 1.0).abs() < 1e-10, "{c0}");
        assert!(c1.abs() < 1e-7, "{c1}");
    }

    proptest! {
        #[test]
        fn exchange_symmetry(x1 in -3.0f64..3.0, x2 in -3.0f64..3.0, j in 0.0f64..10.0) {
            let gs = GroundState::new(&OscillatorConfig::unit(j, 0.0).unwrap()).unwrap();
            let (l, r) = (gs.eval(x1, x2), gs.eval(x2, x1));
            let scale = l.c0.abs().max(l.c1.abs()).max(1e-300);
            prop_assert!((l.c0 - r.c0).abs() <= 1e-12 * l.c0.abs().max(1e-300));
            prop_assert!((l.c1 - r.c1).abs() <= 1e-12 * scale);
        }
    }
}
