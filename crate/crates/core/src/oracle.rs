//! Independent numerical checks of the closed forms.
//!
//! The reduced kernel is sampled on a quadrature grid (Nyström), so traces of
//! powers and the spectrum become matrix computations. Separate routines
//! integrate the ground state over the partner coordinate, evaluate Gaussian
//! moments by tensor-product quadrature, and rebuild the oscillator energies
//! from ladder-operator matrices.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use crate::closed_form::{j_factor, GaussianMoments, ZBasis};
use crate::error::{invalid, GupError, Result};
use crate::model::{normal_modes, NormalModes, OscillatorConfig, OscillatorMode};
use crate::reduced_state::KernelCoefficients;
use crate::series::Series1;
use crate::wavefunctions::GroundState;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureRule {
    Trapezoid,
    GaussLegendre,
}

/// A symmetric grid `[-L, L]` with `N` nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub half_width: f64,
    pub points: usize,
    pub rule: QuadratureRule,
}

pub const MIN_POINTS: usize = 64;
pub const DEFAULT_POINTS: usize = 400;
const TRACE_TOLERANCE: f64 = 1e-8;

impl GridSpec {
    pub fn new(half_width: f64, points: usize, rule: QuadratureRule) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() {
            return Err(invalid("half_width", half_width, "must be finite and > 0"));
        }
        if points < MIN_POINTS {
            return Err(invalid(
                "points",
                points as f64,
                "grids need at least 64 nodes",
            ));
        }
        Ok(GridSpec {
            half_width,
            points,
            rule,
        })
    }

    /// `L = 8/√(a−b)`, 400 trapezoid nodes. `a − b` is the slowest Gaussian
    /// decay rate of the kernel.
    pub fn for_kernel(coeffs: &KernelCoefficients) -> Self {
        GridSpec {
            half_width: 8.0 / (coeffs.a - coeffs.b).sqrt(),
            points: DEFAULT_POINTS,
            rule: QuadratureRule::Trapezoid,
        }
    }

    /// `L = 10 √(ħ/(m ω_min))`, 600 trapezoid nodes, for integrals of the
    /// two-mode wavefunction.
    pub fn for_wavefunctions(config: &OscillatorConfig) -> Result<Self> {
        let modes = normal_modes(config)?;
        let omega_min = modes.omega1.min(modes.omega2);
        Ok(GridSpec {
            half_width: 10.0 * (config.hbar / (config.mass * omega_min)).sqrt(),
            points: 600,
            rule: QuadratureRule::Trapezoid,
        })
    }

    pub fn with_points(self, points: usize) -> Result<Self> {
        GridSpec::new(self.half_width, points, self.rule)
    }

    pub fn with_rule(self, rule: QuadratureRule) -> Self {
        GridSpec { rule, ..self }
    }

    pub fn nodes_and_weights(&self) -> (Vec<f64>, Vec<f64>) {
        match self.rule {
            QuadratureRule::Trapezoid => trapezoid(self.half_width, self.points),
            QuadratureRule::GaussLegendre => gauss_legendre(self.half_width, self.points),
        }
    }
}

fn trapezoid(half: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let h = 2.0 * half / (n - 1) as f64;
    let nodes = (0..n).map(|i| -half + i as f64 * h).collect();
    let mut weights = vec![h; n];
    weights[0] = 0.5 * h;
    weights[n - 1] = 0.5 * h;
    (nodes, weights)
}

/// Gauss–Legendre nodes by Newton iteration on `P_n`, mapped to `[-half, half]`.
fn gauss_legendre(half: f64, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x * half;
        nodes[n - 1 - i] = x * half;
        weights[i] = w * half;
        weights[n - 1 - i] = w * half;
    }
    (nodes, weights)
}

/// The kernel sampled on grid nodes: `ρ_A ≈ K0 + α K1`.
#[derive(Debug, Clone)]
pub struct DiscretizedKernel {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub k0: DMatrix<f64>,
    pub k1: DMatrix<f64>,
}

impl DiscretizedKernel {
    /// `D^{1/2} K D^{1/2}` for both orders; same traces and spectrum as the
    /// weighted operator, but symmetric.
    pub fn symmetrized(&self) -> (DMatrix<f64>, DMatrix<f64>) {
        let root: Vec<f64> = self.weights.iter().map(|w| w.sqrt()).collect();
        let n = root.len();
        let sym = |k: &DMatrix<f64>| DMatrix::from_fn(n, n, |i, j| root[i] * k[(i, j)] * root[j]);
        (sym(&self.k0), sym(&self.k1))
    }

    /// Weighted traces `(Σ wᵢ K0ᵢᵢ, Σ wᵢ K1ᵢᵢ)`.
    pub fn trace(&self) -> Series1 {
        self.weights
            .iter()
            .enumerate()
            .map(|(i, w)| Series1::new(w * self.k0[(i, i)], w * self.k1[(i, i)]))
            .sum()
    }
}

pub fn discretize(coeffs: &KernelCoefficients, grid: &GridSpec) -> Result<DiscretizedKernel> {
    let (nodes, weights) = grid.nodes_and_weights();
    let n = nodes.len();
    let rows: Vec<Vec<Series1>> = nodes
        .par_iter()
        .map(|&x| nodes.iter().map(|&xp| coeffs.eval(x, xp)).collect())
        .collect();
    let k0 = DMatrix::from_fn(n, n, |i, j| rows[i][j].c0);
    let k1 = DMatrix::from_fn(n, n, |i, j| rows[i][j].c1);
    let dk = DiscretizedKernel {
        nodes,
        weights,
        k0,
        k1,
    };
    let trace = dk.trace().c0;
    if (trace - 1.0).abs() > TRACE_TOLERANCE {
        return Err(GupError::InsufficientResolution {
            trace,
            tolerance: TRACE_TOLERANCE,
        });
    }
    Ok(dk)
}

/// `tr(AB)` without forming the product.
fn trace_of_product(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.component_mul(&b.transpose()).sum()
}

/// `Tr ρⁿ ≈ tr(K̃0ⁿ) + α n tr(K̃0ⁿ⁻¹ K̃1)`, exact to first order by cyclicity.
pub fn trace_power_numeric(n: usize, dk: &DiscretizedKernel) -> Result<Series1> {
    if n < 2 {
        return Err(invalid("n", n as f64, "trace powers need n >= 2"));
    }
    let (s0, s1) = dk.symmetrized();
    let mut power = s0.clone();
    for _ in 2..n {
        power = &power * &s0;
    }
    Ok(Series1::new(
        trace_of_product(&power, &s0),
        n as f64 * trace_of_product(&power, &s1),
    ))
}

/// Eigenvalues of the α = 0 kernel, descending.
pub fn spectrum_numeric(dk: &DiscretizedKernel) -> Vec<f64> {
    let (s0, _) = dk.symmetrized();
    let mut eig: Vec<f64> = SymmetricEigen::new(s0)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    eig
}

/// Rényi entropy of order `γ ≠ 1` from a spectrum, dropping non-positive
/// eigenvalues (quadrature noise).
pub fn renyi_from_spectrum(gamma: f64, spectrum: &[f64]) -> f64 {
    let sum: f64 = spectrum
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|l| l.powf(gamma))
        .sum();
    sum.ln() / (1.0 - gamma)
}

/// `−Σ λ ln λ` over positive eigenvalues.
pub fn von_neumann_from_spectrum(spectrum: &[f64]) -> f64 {
    -spectrum
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|l| l * l.ln())
        .sum::<f64>()
}

/// `∫ ρ[x₁,x₂] ρ[x₂,x₁]` (n = 2) or `∫ ρ[x₁,x₂] ρ[x₂,x₃] ρ[x₃,x₁]` (n = 3)
/// as an explicit tensor-product sum of first-order kernel products.
pub fn quad_trace_direct(
    n: usize,
    coeffs: &KernelCoefficients,
    grid: &GridSpec,
) -> Result<Series1> {
    let (nodes, weights) = grid.nodes_and_weights();
    let len = nodes.len();
    let k: Vec<Vec<Series1>> = nodes
        .iter()
        .map(|&x| nodes.iter().map(|&xp| coeffs.eval(x, xp)).collect())
        .collect();
    match n {
        2 => Ok((0..len)
            .map(|i| {
                (0..len)
                    .map(|j| k[i][j] * k[j][i] * (weights[i] * weights[j]))
                    .sum::<Series1>()
            })
            .sum()),
        3 => Ok((0..len)
            .into_par_iter()
            .map(|i| {
                let mut acc = Series1::ZERO;
                for j in 0..len {
                    let kij = k[i][j] * (weights[i] * weights[j]);
                    for l in 0..len {
                        acc += kij * k[j][l] * k[l][i] * weights[l];
                    }
                }
                acc
            })
            .collect::<Vec<_>>()
            .into_iter()
            .sum()),
        _ => Err(invalid(
            "n",
            n as f64,
            "direct quadrature supports n = 2 or 3",
        )),
    }
}

/// `ρ_A[x, x'] = ∫ Φ₀,₀(x, y) Φ₀,₀(x', y) dy` by quadrature over the partner
/// coordinate, at each requested `(x, x')` pair.
pub fn partial_trace_numeric(
    config: &OscillatorConfig,
    grid: &GridSpec,
    pairs: &[(f64, f64)],
) -> Result<Vec<Series1>> {
    let state = GroundState::new(config)?;
    let (nodes, weights) = grid.nodes_and_weights();
    Ok(pairs
        .par_iter()
        .map(|&(x, xp)| {
            nodes
                .iter()
                .zip(&weights)
                .map(|(&y, &w)| state.eval(x, y) * state.eval(xp, y) * w)
                .sum()
        })
        .collect())
}

/// Number-basis matrices of one oscillator, truncated to `size` levels.
struct LadderBasis {
    /// `P̃ = √(mħω/2)(a† − a)`, real antisymmetric with `p = iP̃`.
    momentum: DMatrix<f64>,
    position: DMatrix<f64>,
}

impl LadderBasis {
    fn new(size: usize, mode: &OscillatorMode) -> Self {
        let lower = DMatrix::from_fn(
            size,
            size,
            |i, j| if j == i + 1 { (j as f64).sqrt() } else { 0.0 },
        );
        let raise = lower.transpose();
        let p_scale = (0.5 * mode.mass * mode.hbar * mode.omega).sqrt();
        let x_scale = (0.5 * mode.hbar / (mode.mass * mode.omega)).sqrt();
        LadderBasis {
            momentum: (&raise - &lower) * p_scale,
            position: (&raise + &lower) * x_scale,
        }
    }

    /// Matrix of `p²`.
    fn p2(&self) -> DMatrix<f64> {
        -(&self.momentum * &self.momentum)
    }

    /// Matrix of `p⁴`.
    fn p4(&self) -> DMatrix<f64> {
        let sq = &self.momentum * &self.momentum;
        &sq * &sq
    }
}

/// Lowest levels of `p²/2m + (α_eff/m) p⁴ + mω²x²/2` to first order, with
/// `α_eff = coupling · α`, from ladder-operator matrices. Returns the
/// `n_basis − 4` levels that the truncation leaves exact.
pub fn single_mode_spectrum(
    n_basis: usize,
    coupling: f64,
    mode: &OscillatorMode,
) -> Result<Vec<Series1>> {
    if n_basis < 20 {
        return Err(invalid(
            "n_basis",
            n_basis as f64,
            "number basis needs >= 20 levels",
        ));
    }
    let basis = LadderBasis::new(n_basis, mode);
    let m = mode.mass;
    let x2 = &basis.position * &basis.position;
    let h0 = basis.p2() / (2.0 * m) + x2 * (0.5 * m * mode.omega * mode.omega);
    let p4 = basis.p4();
    // p⁴ couples n to n±4; the top four levels see truncated sums
    Ok((0..n_basis - 4)
        .map(|n| Series1::new(h0[(n, n)], coupling * p4[(n, n)] / m))
        .collect())
}

/// Ground energy of the coupled pair from the number-basis spectra of both
/// normal modes at `α_eff = α/2` plus `⟨0,0| 3α π₁² π₂² / m |0,0⟩`.
pub fn ground_energy_numeric(config: &OscillatorConfig, n_basis: usize) -> Result<Series1> {
    let modes = normal_modes(config)?;
    let (m, hbar) = (config.mass, config.hbar);
    let mode1 = OscillatorMode::new(modes.omega1, m, hbar)?;
    let mode2 = OscillatorMode::new(modes.omega2, m, hbar)?;
    let e1 = single_mode_spectrum(n_basis, 0.5, &mode1)?[0];
    let e2 = single_mode_spectrum(n_basis, 0.5, &mode2)?[0];
    let pi1 = LadderBasis::new(n_basis, &mode1).p2()[(0, 0)];
    let pi2 = LadderBasis::new(n_basis, &mode2).p2()[(0, 0)];
    Ok(e1 + e2 + Series1::new(0.0, 3.0 / m * pi1 * pi2))
}

/// `𝒥₁` and `d𝒥ₙ/dn` at `n = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JSlope {
    pub value: f64,
    pub slope: f64,
    /// `s⁸`, the natural magnitude of `𝒥ₙ` near `n = 1`.
    pub scale: f64,
}

pub const J_STEP: f64 = 1e-3;

/// Finite-difference check of `𝒥₁ = d𝒥ₙ/dn|₁ = 0` using the real-order
/// [`j_factor`]. Uses a five-point central stencil; at exact degeneracy,
/// where `𝒥ₙ` for `n < 1` diverges, the one-sided limit from `n > 1` is
/// reported instead.
pub fn j_derivative_numeric(modes: &NormalModes) -> Result<JSlope> {
    let zb = ZBasis::new(modes);
    let scale = zb.s.powi(8);
    let h = J_STEP;
    let j = |n: f64| j_factor(n, modes);
    if zb.w == 0.0 {
        // cubic through n = 1+h … 1+4h, extrapolated to n = 1
        let f: Vec<f64> = (1..=4)
            .map(|k| j(1.0 + k as f64 * h))
            .collect::<Result<_>>()?;
        let value = 4.0 * f[0] - 6.0 * f[1] + 4.0 * f[2] - f[3];
        let slope = (-26.0 * f[0] + 57.0 * f[1] - 42.0 * f[2] + 11.0 * f[3]) / (6.0 * h);
        return Ok(JSlope {
            value,
            slope,
            scale,
        });
    }
    let slope = (j(1.0 - 2.0 * h)? - 8.0 * j(1.0 - h)? + 8.0 * j(1.0 + h)? - j(1.0 + 2.0 * h)?)
        / (12.0 * h);
    Ok(JSlope {
        value: j(1.0)?,
        slope,
        scale,
    })
}

/// Dense cyclic tridiagonal `G_n`: `2a` on the diagonal, `−b` on the
/// neighbours and in the corners. Each cyclic bond `xᵢxᵢ₊₁` adds its own
/// `−b`, so for `n ≤ 2` the bonds pile up (`G₁ = 2a − 2b`).
pub fn cyclic_matrix(n: usize, a: f64, b: f64) -> DMatrix<f64> {
    let mut g = DMatrix::from_diagonal_element(n, n, 2.0 * a);
    for i in 0..n {
        let j = (i + 1) % n;
        g[(i, j)] -= b;
        g[(j, i)] -= b;
    }
    g
}

/// Dense open tridiagonal `H_n`.
pub fn open_tridiagonal_matrix(n: usize, a: f64, b: f64) -> DMatrix<f64> {
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            2.0 * a
        } else if i.abs_diff(j) == 1 {
            -b
        } else {
            0.0
        }
    })
}

/// `det H_n` by LU on the dense matrix.
pub fn dense_det_open(n: usize, a: f64, b: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    open_tridiagonal_matrix(n, a, b).lu().determinant()
}

/// `det G_n` by LU on the dense matrix.
pub fn dense_det_cyclic(n: usize, a: f64, b: f64) -> f64 {
    cyclic_matrix(n, a, b).lu().determinant()
}

/// `det H_n = 2a det H_{n−1} − b² det H_{n−2}`, `det H_0 = 1`.
pub fn det_h_recurrence(n: usize, a: f64, b: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for _ in 0..n {
        let next = 2.0 * a * cur - b * b * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Result of a direct `n`-dimensional quadrature against `e^{−X G_n Xᵀ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentQuadrature {
    /// `∫ e^{−X G_n Xᵀ}`.
    pub volume: f64,
    /// Moments divided by `volume`.
    pub moments: GaussianMoments,
}

/// Tensor-product trapezoid quadrature of the five cyclic moments for
/// `n ∈ {3, 4}`. `spacing` is the node spacing in units of the narrowest
/// Gaussian width `1/(2√(a+b))`; the box spans ten of the widest widths.
pub fn gaussian_moments_quadrature(
    n: usize,
    a: f64,
    b: f64,
    spacing: f64,
) -> Result<MomentQuadrature> {
    if !(3..=4).contains(&n) {
        return Err(invalid(
            "n",
            n as f64,
            "moment quadrature supports n = 3 or 4",
        ));
    }
    if !(a > b.abs()) {
        return Err(invalid("a", a, "requires a > |b|"));
    }
    let sigma_min = 0.5 / (a + b).sqrt();
    let sigma_max = 0.5 / (a - b).sqrt();
    let half = 10.0 * sigma_max;
    let steps = (2.0 * half / (spacing * sigma_min)).ceil() as usize;
    let h = 2.0 * half / steps as f64;
    let nodes: Vec<f64> = (0..=steps).map(|i| -half + i as f64 * h).collect();
    let len = nodes.len();
    // endpoints sit ten widths out, so the trapezoid end correction is immaterial

    let partial: Vec<[f64; 6]> = (0..len)
        .into_par_iter()
        .map(|first| {
            let mut acc = [0.0; 6];
            let mut idx = vec![0usize; n];
            idx[0] = first;
            let mut x = vec![0.0; n];
            loop {
                for (xi, &k) in x.iter_mut().zip(&idx) {
                    *xi = nodes[k];
                }
                let mut quad = 0.0;
                let mut neighbor = 0.0;
                let mut quartic = 0.0;
                let mut nsq = 0.0;
                let mut ncub = 0.0;
                for i in 0..n {
                    let (u, v) = (x[i], x[(i + 1) % n]);
                    quad += u * u;
                    neighbor += u * v;
                    quartic += u * u * u * u;
                    nsq += u * u * v * v;
                    ncub += u * v * (u * u + v * v);
                }
                let weight = (-(2.0 * a * quad - 2.0 * b * neighbor)).exp();
                acc[0] += weight;
                acc[1] += weight * quad;
                acc[2] += weight * neighbor;
                acc[3] += weight * quartic;
                acc[4] += weight * nsq;
                acc[5] += weight * ncub;

                // odometer over the trailing axes
                let mut axis = n - 1;
                loop {
                    if axis == 0 {
                        return acc;
                    }
                    idx[axis] += 1;
                    if idx[axis] < len {
                        break;
                    }
                    idx[axis] = 0;
                    axis -= 1;
                }
            }
        })
        .collect();

    let mut total = [0.0; 6];
    for row in &partial {
        for (t, r) in total.iter_mut().zip(row) {
            *t += r;
        }
    }
    let volume = total[0] * h.powi(n as i32);
    Ok(MomentQuadrature {
        volume,
        moments: GaussianMoments {
            square: total[1] / total[0],
            neighbor: total[2] / total[0],
            quartic: total[3] / total[0],
            neighbor_square: total[4] / total[0],
            neighbor_cubic: total[5] / total[0],
        },
    })
}
