//! Closed forms for `Tr ρ_Aⁿ`, the entropies built from it, and the
//! determinant and Gaussian-moment identities they rest on.
//!
//! Everything is expressed through `s = √ω₂ + √ω₁` and `w = |√ω₂ − √ω₁|`,
//! with `Z±,ℓ = s^ℓ ± w^ℓ`, `ω₂ − ω₁ = ±s·w` and `ξ = (w/s)²`.

use std::f64::consts::PI;

use crate::error::{invalid, GupError, Result};
use crate::model::NormalModes;
use crate::reduced_state::kernel_coefficients;
use crate::series::Series1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// The monomial basis `(s, w)` of the `Z` polynomials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZBasis {
    pub s: f64,
    pub w: f64,
}

impl ZBasis {
    pub fn new(modes: &NormalModes) -> Self {
        let (r1, r2) = (modes.omega1.sqrt(), modes.omega2.sqrt());
        ZBasis {
            s: r1 + r2,
            w: (r2 - r1).abs(),
        }
    }

    pub fn z(&self, sign: Sign, ell: i64) -> Result<f64> {
        if ell < 0 && self.w == 0.0 {
            return Err(GupError::DegenerateNegativePower { ell });
        }
        let ell = ell as i32;
        let (sl, wl) = (self.s.powi(ell), self.w.powi(ell));
        Ok(match sign {
            Sign::Plus => sl + wl,
            Sign::Minus => sl - wl,
        })
    }

    /// `Z±,ℓ` for real ℓ ≥ 0, used by the real-order continuation.
    fn z_real(&self, sign: Sign, ell: f64) -> f64 {
        let (sl, wl) = (self.s.powf(ell), self.w.powf(ell));
        match sign {
            Sign::Plus => sl + wl,
            Sign::Minus => sl - wl,
        }
    }

    /// `w^k · 𝒥ₙ` expanded into monomials `s^i w^j`, so that no negative power
    /// of `w` is ever formed for `n > 0` and `k ≥ 4`, nor for `n ≥ 1`, `k = 0`.
    fn weighted_j(&self, n: f64, k: f64) -> f64 {
        let (s, w) = (self.s, self.w);
        let mono = |i: f64, j: f64| s.powf(i) * w.powf(j + k);
        let lead = s.powf(2.0 * n) - w.powf(2.0 * n);
        let bracket = mono(2.0 * n + 4.0, 0.0)
            + mono(0.0, 2.0 * n + 4.0)
            + 2.0 * (mono(2.0 * n + 2.0, 2.0) + mono(2.0, 2.0 * n + 2.0))
            - 2.0 * (mono(2.0 * n - 2.0, 6.0) + mono(6.0, 2.0 * n - 2.0));
        let cross = -3.0 * (mono(2.0 * n + 4.0, 2.0 * n) - mono(2.0 * n, 2.0 * n + 4.0));
        let tail = -(mono(4.0 * n - 4.0, 8.0) - mono(8.0, 4.0 * n - 4.0));
        lead * bracket + cross + tail
    }
}

/// `Z±,ℓ = (√ω₂ + √ω₁)^ℓ ± (√ω₂ − √ω₁)^ℓ`.
pub fn z(sign: Sign, ell: i64, modes: &NormalModes) -> Result<f64> {
    ZBasis::new(modes).z(sign, ell)
}

fn check_gaussian(a: f64, b: f64) -> Result<()> {
    if !(a > b.abs()) {
        return Err(invalid("a", a, "requires a > |b|"));
    }
    Ok(())
}

/// Determinant of the cyclic tridiagonal matrix `G_n` (diagonal `2a`,
/// neighbours and corners `−b`).
pub fn det_g(n: usize, a: f64, b: f64) -> Result<f64> {
    if n == 0 {
        return Err(invalid("n", 0.0, "G_n needs n >= 1"));
    }
    check_gaussian(a, b)?;
    let (p, q) = ((a + b).sqrt(), (a - b).sqrt());
    let n = n as i32;
    let diff = (p + q).powi(n) - (p - q).powi(n);
    Ok(0.5f64.powi(n) * diff * diff)
}

/// `det G_n = (m / (8ħ(ω₁+ω₂)))ⁿ Z²−,2n`.
pub fn det_g_modes(n: usize, modes: &NormalModes, m: f64, hbar: f64) -> Result<f64> {
    if n == 0 {
        return Err(invalid("n", 0.0, "G_n needs n >= 1"));
    }
    let zm = ZBasis::new(modes).z(Sign::Minus, 2 * n as i64)?;
    Ok(unit_ratio(modes, m, hbar).powi(n as i32) * zm * zm)
}

fn unit_ratio(modes: &NormalModes, m: f64, hbar: f64) -> f64 {
    m / (8.0 * hbar * modes.sum())
}

/// Determinant of the open tridiagonal matrix `H_n` in its `Z` form,
/// `Z−,4n+4 (m/(8ħ(ω₁+ω₂)))ⁿ / (8(ω₁+ω₂)√(ω₁ω₂))`. Gives 1 at `n = 0`.
pub fn det_h(n: usize, modes: &NormalModes, m: f64, hbar: f64) -> f64 {
    let zb = ZBasis::new(modes);
    let zm = zb.s.powi(4 * n as i32 + 4) - zb.w.powi(4 * n as i32 + 4);
    unit_ratio(modes, m, hbar).powi(n as i32) * zm / (8.0 * modes.sum() * modes.product().sqrt())
}

/// `det H_n = [a √det G_2n − (b²/2) √det G_2n−2] / √(a² − b²)` for `n ≥ 1`.
pub fn det_h_from_ab(n: usize, a: f64, b: f64) -> Result<f64> {
    if n == 0 {
        return Err(invalid("n", 0.0, "the (a, b) form needs n >= 1"));
    }
    check_gaussian(a, b)?;
    let g2n = det_g(2 * n, a, b)?.sqrt();
    let g2n2 = if n == 1 {
        // √det G_0 extends the closed form to 2⁰[(p+q)⁰ − (p−q)⁰] = 0
        0.0
    } else {
        det_g(2 * n - 2, a, b)?.sqrt()
    };
    Ok((a * g2n - 0.5 * b * b * g2n2) / (a * a - b * b).sqrt())
}

/// Normalized Gaussian moments `⟨·⟩ = ∫(·) e^{−X G_n Xᵀ} / ∫ e^{−X G_n Xᵀ}` of
/// the cyclic sums that enter `Tr ρ_Aⁿ`. Indices are cyclic (`x_{n+1} = x₁`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianMoments {
    /// `⟨Σ xᵢ²⟩`
    pub square: f64,
    /// `⟨Σ xᵢ xᵢ₊₁⟩`
    pub neighbor: f64,
    /// `⟨Σ xᵢ⁴⟩`
    pub quartic: f64,
    /// `⟨Σ xᵢ² xᵢ₊₁²⟩`
    pub neighbor_square: f64,
    /// `⟨Σ xᵢ xᵢ₊₁ (xᵢ² + xᵢ₊₁²)⟩`
    pub neighbor_cubic: f64,
}

/// Closed-form moments for `n ≥ 3`. At `n = 2` the cyclic neighbour sums
/// double count and these expressions no longer apply.
pub fn moment_integrals(
    n: usize,
    modes: &NormalModes,
    m: f64,
    hbar: f64,
) -> Result<GaussianMoments> {
    if n < 3 {
        return Err(invalid("n", n as f64, "moment closed forms need n >= 3"));
    }
    let zb = ZBasis::new(modes);
    let ni = n as i64;
    let nf = n as f64;
    let root = modes.product().sqrt();
    let d2 = (modes.omega1 - modes.omega2).powi(2);
    let zp = zb.z(Sign::Plus, 2 * ni)?;
    let zm = zb.z(Sign::Minus, 2 * ni)?;
    let zm4 = zb.z(Sign::Minus, 4 * ni - 4)?;
    let mm = m * m * modes.product();

    Ok(GaussianMoments {
        square: nf * hbar / (2.0 * m * root) * zp / zm,
        neighbor: nf * hbar * d2 / (2.0 * m * root) * zb.z(Sign::Plus, 2 * ni - 4)? / zm,
        quartic: 3.0 * nf * hbar * hbar / (4.0 * mm) * (zp / zm).powi(2),
        neighbor_square: nf * hbar * hbar / (4.0 * mm * zm * zm)
            * (3.0 * zp * zp - 16.0 * modes.sum() * root * zm4),
        neighbor_cubic: 3.0 * nf * hbar * hbar * d2 / (2.0 * mm) * zp / zm.powi(3)
            * (8.0 * modes.sum() * root * d2.powi(n as i32 - 2) + zm4),
    })
}

/// `Tr ρ_Aⁿ` assembled term by term from the Gaussian moments, the kernel
/// coefficients and `det G_n`. An algebraically independent route to
/// [`trace_power`] for `n ≥ 3`.
pub fn trace_power_from_moments(
    n: usize,
    modes: &NormalModes,
    m: f64,
    hbar: f64,
) -> Result<Series1> {
    let mom = moment_integrals(n, modes, m, hbar)?;
    let k = kernel_coefficients(modes, m, hbar);
    let nf = n as f64;
    let volume = PI.powf(0.5 * nf) / det_g(n, k.a, k.b)?.sqrt();
    let c0 = k.prefactor.powi(n as i32) * volume;
    let bracket = 2.0 * k.g1 * mom.quartic
        + k.g2 * mom.neighbor_cubic
        + k.g3 * mom.neighbor_square
        + 2.0 * k.g4 * mom.square
        + k.g5 * mom.neighbor
        + nf * k.g6;
    Ok(Series1::new(c0, c0 * k.correction_scale * bracket))
}

/// The frequency polynomial `𝒥ₙ(ω₁, ω₂)` in regrouped monomial form; finite
/// for every real `n ≥ 1`, including `ω₁ = ω₂`. Orders in `(0, 1)` are
/// accepted for finite differences around `n = 1` but diverge at `ω₁ = ω₂`.
pub fn j_factor(n: f64, modes: &NormalModes) -> Result<f64> {
    if !(n > 0.0) || !n.is_finite() {
        return Err(invalid("n", n, "J_n needs a finite order n > 0"));
    }
    Ok(ZBasis::new(modes).weighted_j(n, 0.0))
}

/// `c1/c0` of `Tr ρ_A^γ`, for real `γ > 0`.
fn trace_ratio(gamma: f64, modes: &NormalModes, m: f64, hbar: f64) -> f64 {
    let zb = ZBasis::new(modes);
    // (ω₁−ω₂)⁴ 𝒥_γ = s⁴ · (w⁴ 𝒥_γ)
    let weighted = zb.s.powi(4) * zb.weighted_j(gamma, 4.0);
    if weighted == 0.0 {
        return 0.0;
    }
    let zm = zb.z_real(Sign::Minus, 2.0 * gamma);
    let z4 = zb.s.powi(4) - zb.w.powi(4);
    -(3.0 * gamma * m * hbar / 4096.0) / (modes.product() * modes.sum().powi(5)) * z4 / (zm * zm)
        * weighted
}

fn trace_leading(gamma: f64, xi: f64) -> f64 {
    if xi == 0.0 {
        return 1.0;
    }
    (1.0 - xi).powf(gamma) / (1.0 - xi.powf(gamma))
}

/// `Tr ρ_Aⁿ` to first order in α, for integer `n ≥ 2`.
pub fn trace_power(n: usize, modes: &NormalModes, m: f64, hbar: f64) -> Result<Series1> {
    if n < 2 {
        return Err(invalid("n", n as f64, "trace powers need n >= 2"));
    }
    Ok(trace_power_continued(n as f64, modes, m, hbar))
}

/// The integer formula with `n` replaced by a real `γ > 0`. Outside the
/// integers ≥ 2 this is a conjectured continuation, not a derived result.
pub fn trace_power_continued(gamma: f64, modes: &NormalModes, m: f64, hbar: f64) -> Series1 {
    let c0 = trace_leading(gamma, modes.xi);
    Series1::new(c0, c0 * trace_ratio(gamma, modes, m, hbar))
}

/// `Tr ρ_A²`.
pub fn purity(modes: &NormalModes, m: f64, hbar: f64) -> Series1 {
    trace_power_continued(2.0, modes, m, hbar)
}

/// How an entropy value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyKind {
    /// Integer order `γ ≥ 2`, from the derived trace formula.
    ExactInteger,
    /// Real order from the conjectured continuation of the trace formula.
    Continuation,
    /// The `γ → 1` limit (entanglement of formation).
    EofLimit,
}

impl EntropyKind {
    pub fn label(&self) -> &'static str {
        match self {
            EntropyKind::ExactInteger => "exact_integer",
            EntropyKind::Continuation => "continuation",
            EntropyKind::EofLimit => "eof_limit",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyResult {
    pub gamma: f64,
    pub value: Series1,
    pub kind: EntropyKind,
}

/// `(1/(1−γ)) ln[(1−ξ)^γ / (1−ξ^γ)]`, with the `ξ → 0` limit taken exactly.
pub fn renyi_leading(gamma: f64, xi: f64) -> f64 {
    if xi == 0.0 {
        return 0.0;
    }
    (gamma * (-xi).ln_1p() - (-xi.powf(gamma)).ln_1p()) / (1.0 - gamma)
}

/// `−ln(1−ξ) − ξ/(1−ξ) ln ξ`, zero at `ξ = 0`.
pub fn eof_leading(xi: f64) -> f64 {
    if xi == 0.0 {
        return 0.0;
    }
    -(-xi).ln_1p() - xi / (1.0 - xi) * xi.ln()
}

/// Rényi entropy of order `γ` of the reduced state.
pub fn renyi(gamma: f64, modes: &NormalModes, m: f64, hbar: f64) -> Result<EntropyResult> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(invalid("gamma", gamma, "must be finite and > 0"));
    }
    if gamma == 1.0 {
        return Err(invalid(
            "gamma",
            gamma,
            "order 1 is the entanglement of formation; use eof",
        ));
    }
    let kind = if gamma >= 2.0 && gamma.fract() == 0.0 {
        EntropyKind::ExactInteger
    } else {
        EntropyKind::Continuation
    };
    let c1 = trace_ratio(gamma, modes, m, hbar) / (1.0 - gamma);
    Ok(EntropyResult {
        gamma,
        value: Series1::new(renyi_leading(gamma, modes.xi), c1),
        kind,
    })
}

/// Entanglement of formation. The first-order term vanishes identically
/// because `𝒥₁ = d𝒥ₙ/dn|₁ = 0`.
pub fn eof(modes: &NormalModes) -> EntropyResult {
    EntropyResult {
        gamma: 1.0,
        value: Series1::new(eof_leading(modes.xi), 0.0),
        kind: EntropyKind::EofLimit,
    }
}
