//! Physical parameters, normal-mode decomposition and the perturbed
//! single-oscillator energies.
//!
//! The two oscillators are coupled through `J (x₁ − x₂)²/2` and each momentum
//! is deformed to `p (1 + α p²)`. In the normal coordinates
//! `y₁ = (x₁ + x₂)/√2`, `y₂ = (−x₁ + x₂)/√2` the Hamiltonian splits into two
//! quartic-momentum oscillators with effective parameter `α/2` plus the
//! interaction `3α π₁² π₂² / m`.

use crate::error::{invalid, Result};
use crate::series::Series1;

/// Physical inputs of the coupled system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorConfig {
    pub mass: f64,
    pub k0: f64,
    pub coupling: f64,
    pub hbar: f64,
    /// GUP parameter α, dimension momentum⁻². Only used when a series is
    /// evaluated at a concrete α.
    pub gup_alpha: f64,
}

impl OscillatorConfig {
    pub fn new(mass: f64, k0: f64, coupling: f64, hbar: f64, gup_alpha: f64) -> Result<Self> {
        let cfg = OscillatorConfig {
            mass,
            k0,
            coupling,
            hbar,
            gup_alpha,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `k₀ = m = ħ = 1` with the given coupling and α.
    pub fn unit(coupling: f64, gup_alpha: f64) -> Result<Self> {
        Self::new(1.0, 1.0, coupling, 1.0, gup_alpha)
    }

    pub fn validate(&self) -> Result<()> {
        positive("mass", self.mass)?;
        positive("k0", self.k0)?;
        positive("hbar", self.hbar)?;
        if !(self.coupling >= 0.0) || !self.coupling.is_finite() {
            return Err(invalid(
                "coupling",
                self.coupling,
                "must be finite and >= 0",
            ));
        }
        if !(self.gup_alpha >= 0.0) || !self.gup_alpha.is_finite() {
            return Err(invalid(
                "gup_alpha",
                self.gup_alpha,
                "must be finite and >= 0",
            ));
        }
        if !(self.k0 + 2.0 * self.coupling > 0.0) {
            return Err(invalid(
                "coupling",
                self.coupling,
                "k0 + 2J must be positive",
            ));
        }
        Ok(())
    }

    pub fn normal_modes(&self) -> Result<NormalModes> {
        normal_modes(self)
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, v, "must be finite and > 0"))
    }
}

/// The two decoupled frequencies and the squashing parameter
/// `ξ = [(√ω₂ − √ω₁)/(√ω₂ + √ω₁)]²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalModes {
    pub omega1: f64,
    pub omega2: f64,
    pub xi: f64,
}

impl NormalModes {
    /// Builds the mode pair from arbitrary positive frequencies. Every
    /// downstream quantity is symmetric under `ω₁ ↔ ω₂`, so no ordering is
    /// imposed here.
    pub fn from_frequencies(omega1: f64, omega2: f64) -> Result<Self> {
        positive("omega1", omega1)?;
        positive("omega2", omega2)?;
        let (r1, r2) = (omega1.sqrt(), omega2.sqrt());
        let ratio = (r2 - r1) / (r2 + r1);
        Ok(NormalModes {
            omega1,
            omega2,
            xi: ratio * ratio,
        })
    }

    pub fn sum(&self) -> f64 {
        self.omega1 + self.omega2
    }

    pub fn product(&self) -> f64 {
        self.omega1 * self.omega2
    }

    pub fn is_degenerate(&self) -> bool {
        self.omega1 == self.omega2
    }
}

/// `ω₁ = √(k₀/m)`, `ω₂ = √((k₀ + 2J)/m)`.
pub fn normal_modes(config: &OscillatorConfig) -> Result<NormalModes> {
    config.validate()?;
    let omega1 = (config.k0 / config.mass).sqrt();
    let omega2 = ((config.k0 + 2.0 * config.coupling) / config.mass).sqrt();
    NormalModes::from_frequencies(omega1, omega2)
}

/// A single harmonic mode: frequency, mass and ħ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorMode {
    pub omega: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl OscillatorMode {
    pub fn new(omega: f64, mass: f64, hbar: f64) -> Result<Self> {
        positive("omega", omega)?;
        positive("mass", mass)?;
        positive("hbar", hbar)?;
        Ok(OscillatorMode { omega, mass, hbar })
    }

    /// Oscillator length `√(ħ/(mω))`.
    pub fn length_scale(&self) -> f64 {
        (self.hbar / (self.mass * self.omega)).sqrt()
    }

    /// The dimensionless strength `m ħ ω` multiplying α in every first-order term.
    pub fn alpha_scale(&self) -> f64 {
        self.mass * self.hbar * self.omega
    }
}

/// Position uncertainty floor `ħ √(3α)`.
pub fn minimal_length(alpha: f64, hbar: f64) -> Result<f64> {
    if !(alpha >= 0.0) || !alpha.is_finite() {
        return Err(invalid("alpha", alpha, "must be finite and >= 0"));
    }
    positive("hbar", hbar)?;
    Ok(hbar * (3.0 * alpha).sqrt())
}

fn level_factor(n: usize) -> f64 {
    let n = n as f64;
    3.0 * (2.0 * n * n + 2.0 * n + 1.0) / (2.0 * (2.0 * n + 1.0))
}

/// Level `n` of `p²/2m + (α_eff/m) p⁴ + m ω² x²/2`, evaluated at a concrete
/// `alpha_eff` and truncated after the first order.
pub fn single_mode_energy(n: usize, alpha_eff: f64, mode: &OscillatorMode) -> f64 {
    single_mode_energy_series(n, 1.0, mode).eval(alpha_eff)
}

/// The same energy as a series in the global α, where the quartic term
/// carries `alpha_eff = coupling · α` (`coupling = 1/2` for a normal mode of
/// the coupled system).
pub fn single_mode_energy_series(n: usize, coupling: f64, mode: &OscillatorMode) -> Series1 {
    let base = (n as f64 + 0.5) * mode.hbar * mode.omega;
    Series1::new(base, base * level_factor(n) * coupling * mode.alpha_scale())
}

/// Ground-state energy of the coupled system:
/// `ħ(ω₁+ω₂)/2 + α (3/8) m ħ² (ω₁+ω₂)²`.
pub fn ground_energy(config: &OscillatorConfig) -> Result<Series1> {
    let modes = normal_modes(config)?;
    let (m, hbar) = (config.mass, config.hbar);
    let sum = modes.sum();
    Ok(Series1::new(
        0.5 * hbar * sum,
        0.375 * m * hbar * hbar * sum * sum,
    ))
}

/// The two pieces that add up to [`ground_energy`]: the free-mode energies
/// at effective coupling `α/2` and the first-order expectation
/// `⟨ΔĤ⟩ = (3α/m)⟨π₁²⟩⟨π₂²⟩ = (3/4) α m ħ² ω₁ ω₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundEnergyParts {
    pub modes: Series1,
    pub interaction: Series1,
}

impl GroundEnergyParts {
    pub fn total(&self) -> Series1 {
        self.modes + self.interaction
    }
}

pub fn ground_energy_parts(config: &OscillatorConfig) -> Result<GroundEnergyParts> {
    let modes = normal_modes(config)?;
    let (m, hbar) = (config.mass, config.hbar);
    let mode1 = OscillatorMode::new(modes.omega1, m, hbar)?;
    let mode2 = OscillatorMode::new(modes.omega2, m, hbar)?;
    let free =
        single_mode_energy_series(0, 0.5, &mode1) + single_mode_energy_series(0, 0.5, &mode2);
    let interaction = Series1::new(0.0, 0.75 * m * hbar * hbar * modes.product());
    Ok(GroundEnergyParts {
        modes: free,
        interaction,
    })
}
