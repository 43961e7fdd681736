//! The verification suite: every closed form against its oracle, one named
//! check per acceptance criterion. Tolerances live in [`tol`] and are never
//! adjusted at run time.

use std::f64::consts::PI;
use std::str::FromStr;
use std::time::Instant;

use gupent_core::closed_form::{self, det_g, det_h, moment_integrals, renyi_leading};
use gupent_core::model::ground_energy_parts;
use gupent_core::oracle::{self, GridSpec};
use gupent_core::reduced_state::normalization_residual;
use gupent_core::{
    kernel_coefficients, KernelCoefficients, NormalModes, OscillatorConfig, Series1,
};

use crate::figures::{self, FigureId};
use crate::CliError;

pub mod tol {
    pub const NORMALIZATION: f64 = 1e-12;
    pub const PARTIAL_TRACE_C0: f64 = 1e-5;
    pub const PARTIAL_TRACE_C1: f64 = 1e-4;
    pub const TRACE_C0: f64 = 1e-6;
    pub const TRACE_C1: f64 = 1e-4;
    /// Closed form vs the printed purity and cubic-trace formulas.
    pub const PRINTED_FORMULA: f64 = 1e-12;
    pub const DETERMINANT: f64 = 1e-10;
    pub const MOMENTS_3D: f64 = 1e-7;
    pub const MOMENTS_4D: f64 = 1e-5;
    /// `|𝒥₁|` and `|d𝒥ₙ/dn|₁|` relative to `s⁸`.
    pub const J_ONE: f64 = 1e-6;
    /// Bound on `|c1(1+d)/d − C| / (|C| |d|)` for `renyi(1+d).c1 = C d + O(d²)`.
    pub const LINEAR_REMAINDER: f64 = 10.0;
    pub const SPECTRUM_EIGENVALUE: f64 = 1e-6;
    pub const SPECTRUM_ENTROPY: f64 = 1e-8;
    pub const GROUND_ENERGY: f64 = 1e-10;
    pub const DEGENERACY: f64 = 1e-6;
}

/// Deliberate corruption of the closed forms, used to show the suite bites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    G5Sign,
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "g5-sign" => Ok(Fault::G5Sign),
            other => Err(format!("unknown fault {other:?}; expected g5-sign")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Options {
    pub fast: bool,
    pub fault: Option<Fault>,
}

#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub criterion: u8,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CheckOutcome {
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {:<24} {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.criterion,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

type CheckFn = fn(&Context) -> Result<(bool, String), CliError>;

struct Check {
    name: &'static str,
    criterion: u8,
    fast: bool,
    run: CheckFn,
}

const CHECKS: [Check; 10] = [
    Check {
        name: "normalization-identity",
        criterion: 1,
        fast: true,
        run: normalization_identity,
    },
    Check {
        name: "partial-trace-pipeline",
        criterion: 2,
        fast: false,
        run: partial_trace_pipeline,
    },
    Check {
        name: "trace-powers",
        criterion: 3,
        fast: false,
        run: trace_powers,
    },
    Check {
        name: "determinants",
        criterion: 4,
        fast: true,
        run: determinants,
    },
    Check {
        name: "gaussian-moments",
        criterion: 5,
        fast: false,
        run: gaussian_moments,
    },
    Check {
        name: "eof-first-order",
        criterion: 6,
        fast: true,
        run: eof_first_order,
    },
    Check {
        name: "figure-monotonicity",
        criterion: 7,
        fast: true,
        run: figure_monotonicity,
    },
    Check {
        name: "spectrum-oracle",
        criterion: 8,
        fast: false,
        run: spectrum_oracle,
    },
    Check {
        name: "ground-energy",
        criterion: 9,
        fast: true,
        run: ground_energy,
    },
    Check {
        name: "degeneracy",
        criterion: 10,
        fast: true,
        run: degeneracy,
    },
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

struct Context {
    fault: Option<Fault>,
}

impl Context {
    fn coefficients(&self, modes: &NormalModes) -> KernelCoefficients {
        let mut c = kernel_coefficients(modes, 1.0, 1.0);
        if self.fault == Some(Fault::G5Sign) {
            c.g5 = -c.g5;
        }
        c
    }
}

/// Runs the selected checks in order. A check that errors counts as failed.
pub fn run(opts: Options) -> Vec<CheckOutcome> {
    let ctx = Context { fault: opts.fault };
    CHECKS
        .iter()
        .filter(|c| !opts.fast || c.fast)
        .map(|c| {
            let start = Instant::now();
            let (passed, detail) = match (c.run)(&ctx) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckOutcome {
                name: c.name,
                criterion: c.criterion,
                passed,
                detail,
                seconds: start.elapsed().as_secs_f64(),
            }
        })
        .collect()
}

fn rel(value: f64, reference: f64) -> f64 {
    if value == reference {
        0.0
    } else {
        (value - reference).abs() / reference.abs()
    }
}

fn unit_modes(j: f64) -> Result<NormalModes, CliError> {
    Ok(OscillatorConfig::unit(j, 0.0)?.normal_modes()?)
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn verdict(worst: f64, bound: f64, what: &str) -> (bool, String) {
    (
        worst <= bound,
        format!("max {what} {worst:.2e} (tol {bound:.0e})"),
    )
}

fn normalization_identity(ctx: &Context) -> Result<(bool, String), CliError> {
    let axis = linspace(0.3, 5.0, 20);
    let mut worst: f64 = 0.0;
    for &w1 in &axis {
        for &w2 in &axis {
            let c = ctx.coefficients(&NormalModes::from_frequencies(w1, w2)?);
            worst = worst.max(normalization_residual(&c).abs());
        }
    }
    Ok(verdict(
        worst,
        tol::NORMALIZATION,
        "relative residual over 20x20 (w1,w2)",
    ))
}

fn partial_trace_pipeline(ctx: &Context) -> Result<(bool, String), CliError> {
    let pts = [-1.2, -0.5, 0.0, 0.4, 1.1];
    let pairs: Vec<(f64, f64)> = pts
        .iter()
        .flat_map(|&x| pts.iter().map(move |&y| (x, y)))
        .collect();
    let (mut e0, mut e1): (f64, f64) = (0.0, 0.0);
    for j in [0.5, 1.0, 5.0] {
        let cfg = OscillatorConfig::unit(j, 0.0)?;
        let coeffs = ctx.coefficients(&cfg.normal_modes()?);
        let grid = GridSpec::for_wavefunctions(&cfg)?;
        let numeric = oracle::partial_trace_numeric(&cfg, &grid, &pairs)?;
        for (&(x, xp), n) in pairs.iter().zip(&numeric) {
            let k = coeffs.eval(x, xp);
            e0 = e0.max(rel(n.c0, k.c0));
            e1 = e1.max(rel(n.c1, k.c1));
        }
    }
    Ok((
        e0 <= tol::PARTIAL_TRACE_C0 && e1 <= tol::PARTIAL_TRACE_C1,
        format!(
            "75 pairs: c0 {e0:.2e} (tol {:.0e}), c1 {e1:.2e} (tol {:.0e})",
            tol::PARTIAL_TRACE_C0,
            tol::PARTIAL_TRACE_C1
        ),
    ))
}

fn trace_powers(ctx: &Context) -> Result<(bool, String), CliError> {
    let (mut e0, mut e1, mut printed): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for j in [0.5, 1.0, 5.0, 20.0] {
        let modes = unit_modes(j)?;
        let coeffs = ctx.coefficients(&modes);
        let dk = oracle::discretize(&coeffs, &GridSpec::for_kernel(&coeffs))?;
        for n in 2..=6 {
            let exact = closed_form::trace_power(n, &modes, 1.0, 1.0)?;
            let num = oracle::trace_power_numeric(n, &dk)?;
            e0 = e0.max(rel(num.c0, exact.c0));
            e1 = e1.max(rel(num.c1, exact.c1));
        }
        let (w1, w2) = (modes.omega1, modes.omega2);
        let p = closed_form::trace_power(2, &modes, 1.0, 1.0)?;
        let p0 = 2.0 * (w1 * w2).sqrt() / (w1 + w2);
        let p1 = -3.0 / 32.0 * p0 * (w1 - w2).powi(4) / (w1 + w2).powi(3);
        let t = closed_form::trace_power(3, &modes, 1.0, 1.0)?;
        let (u, v) = (3.0 * w1 + w2, w1 + 3.0 * w2);
        let t0 = 16.0 * w1 * w2 / (u * v);
        let t1 = -2.25 * t0 * (w1 + w2) * (w1 - w2).powi(4) / (u * u * v * v);
        for (got, want) in [(p.c0, p0), (p.c1, p1), (t.c0, t0), (t.c1, t1)] {
            printed = printed.max(rel(got, want));
        }
    }
    Ok((
        e0 <= tol::TRACE_C0 && e1 <= tol::TRACE_C1 && printed <= tol::PRINTED_FORMULA,
        format!(
            "n=2..6, J in {{0.5,1,5,20}}: c0 {e0:.2e} (tol {:.0e}), c1 {e1:.2e} (tol {:.0e}); printed n=2,3 {printed:.2e} (tol {:.0e})",
            tol::TRACE_C0,
            tol::TRACE_C1,
            tol::PRINTED_FORMULA
        ),
    ))
}

fn determinants(_: &Context) -> Result<(bool, String), CliError> {
    let mut worst: f64 = 0.0;
    let mut base_ok = true;
    for j in [0.5, 1.0, 5.0, 20.0] {
        let modes = unit_modes(j)?;
        let c = kernel_coefficients(&modes, 1.0, 1.0);
        for n in 1..=8 {
            worst = worst.max(rel(
                det_g(n, c.a, c.b)?,
                oracle::dense_det_cyclic(n, c.a, c.b),
            ));
        }
        for n in 0..=8 {
            let closed = det_h(n, &modes, 1.0, 1.0);
            worst = worst.max(rel(closed, oracle::dense_det_open(n, c.a, c.b)));
            worst = worst.max(rel(closed, oracle::det_h_recurrence(n, c.a, c.b)));
        }
        base_ok &= rel(det_h(0, &modes, 1.0, 1.0), 1.0) <= tol::DETERMINANT
            && oracle::dense_det_open(0, c.a, c.b) == 1.0;
    }
    let (ok, detail) = verdict(worst, tol::DETERMINANT, "relative error, n<=8");
    Ok((ok && base_ok, format!("{detail}; det H0 = 1: {base_ok}")))
}

fn gaussian_moments(_: &Context) -> Result<(bool, String), CliError> {
    let modes = NormalModes::from_frequencies(0.8, 2.3)?;
    let c = kernel_coefficients(&modes, 1.0, 1.0);
    let mut passed = true;
    let mut parts = Vec::new();
    for (n, bound) in [(3usize, tol::MOMENTS_3D), (4, tol::MOMENTS_4D)] {
        let q = oracle::gaussian_moments_quadrature(n, c.a, c.b, 0.7)?;
        let exact = moment_integrals(n, &modes, 1.0, 1.0)?;
        let volume = PI.powf(0.5 * n as f64) / det_g(n, c.a, c.b)?.sqrt();
        let worst = [
            rel(q.volume, volume),
            rel(q.moments.square, exact.square),
            rel(q.moments.neighbor, exact.neighbor),
            rel(q.moments.quartic, exact.quartic),
            rel(q.moments.neighbor_square, exact.neighbor_square),
            rel(q.moments.neighbor_cubic, exact.neighbor_cubic),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        passed &= worst <= bound;
        parts.push(format!("n={n} {worst:.2e} (tol {bound:.0e})"));
    }
    Ok((passed, parts.join(", ")))
}

fn eof_first_order(_: &Context) -> Result<(bool, String), CliError> {
    let axis = linspace(0.3, 5.0, 20);
    let mut worst: f64 = 0.0;
    for &w1 in &axis {
        for &w2 in axis.iter().filter(|&&w2| w2 != w1) {
            let js = oracle::j_derivative_numeric(&NormalModes::from_frequencies(w1, w2)?)?;
            worst = worst
                .max(js.value.abs() / js.scale)
                .max(js.slope.abs() / js.scale);
        }
    }
    let slope_ok = worst <= tol::J_ONE;

    // renyi(1+d).c1 = C d + O(d²): C from the symmetric pair at |d| = 10⁻³,
    // then the remainder at every |d| = 10⁻ᵏ must stay O(d)
    let mut remainder: f64 = 0.0;
    for j in [0.5, 1.0, 5.0, 20.0] {
        let modes = unit_modes(j)?;
        let c1 = |d: f64| closed_form::renyi(1.0 + d, &modes, 1.0, 1.0).map(|r| r.value.c1);
        let slope = (c1(1e-3)? - c1(-1e-3)?) / 2e-3;
        for k in 1..=3 {
            for d in [10f64.powi(-k), -(10f64.powi(-k))] {
                let r = (c1(d)? / d - slope).abs() / (slope.abs() * d.abs());
                remainder = remainder.max(if r.is_finite() { r } else { f64::INFINITY });
            }
        }
    }
    let linear_ok = remainder <= tol::LINEAR_REMAINDER;
    Ok((
        slope_ok && linear_ok,
        format!(
            "|J1|,|dJn/dn| <= {worst:.2e} s^8 (tol {:.0e}); renyi c1 linear in gamma-1, remainder {remainder:.2} (tol {})",
            tol::J_ONE,
            tol::LINEAR_REMAINDER
        ),
    ))
}

fn figure_monotonicity(_: &Context) -> Result<(bool, String), CliError> {
    let mut passed = true;
    let mut parts = Vec::new();
    for id in FigureId::ALL {
        let fig = figures::build(id)?;
        let bad = figures::monotonicity_violations(&fig);
        passed &= bad.is_empty();
        parts.push(format!("fig {}: {} violations", id.label(), bad.len()));
    }
    Ok((passed, parts.join(", ")))
}

fn spectrum_oracle(_: &Context) -> Result<(bool, String), CliError> {
    let (mut eig, mut ent): (f64, f64) = (0.0, 0.0);
    for j in [1.0, 5.0, 20.0] {
        let modes = unit_modes(j)?;
        let coeffs = kernel_coefficients(&modes, 1.0, 1.0);
        let dk = oracle::discretize(&coeffs, &GridSpec::for_kernel(&coeffs))?;
        let spec = oracle::spectrum_numeric(&dk);
        let xi = modes.xi;
        for (k, &lambda) in spec.iter().take(6).enumerate() {
            eig = eig.max(rel(lambda, (1.0 - xi) * xi.powi(k as i32)));
        }
        ent = ent.max(
            (oracle::von_neumann_from_spectrum(&spec) - closed_form::eof(&modes).value.c0).abs(),
        );
        for gamma in [0.7, 2.0, 3.0] {
            ent = ent
                .max((oracle::renyi_from_spectrum(gamma, &spec) - renyi_leading(gamma, xi)).abs());
        }
    }
    Ok((
        eig <= tol::SPECTRUM_EIGENVALUE && ent <= tol::SPECTRUM_ENTROPY,
        format!(
            "lambda_k k<=5 {eig:.2e} (tol {:.0e}); entropies {ent:.2e} (tol {:.0e})",
            tol::SPECTRUM_EIGENVALUE,
            tol::SPECTRUM_ENTROPY
        ),
    ))
}

fn ground_energy(_: &Context) -> Result<(bool, String), CliError> {
    let configs = [
        OscillatorConfig::unit(0.0, 0.0)?,
        OscillatorConfig::unit(1.0, 0.0)?,
        OscillatorConfig::unit(20.0, 0.0)?,
        OscillatorConfig::new(1.3, 2.0, 3.5, 0.9, 0.0)?,
    ];
    let mut worst: f64 = 0.0;
    for cfg in &configs {
        let modes = cfg.normal_modes()?;
        let (m, hbar) = (cfg.mass, cfg.hbar);
        let exact = gupent_core::ground_energy(cfg)?;
        let printed = 0.375 * m * hbar * hbar * modes.sum().powi(2);
        let regrouped = 0.375 * m * hbar * hbar * (modes.omega1.powi(2) + modes.omega2.powi(2))
            + 0.75 * m * hbar * hbar * modes.product();
        let parts = ground_energy_parts(cfg)?.total();
        let numeric = oracle::ground_energy_numeric(cfg, 24)?;
        for s in [parts, numeric, Series1::new(exact.c0, regrouped)] {
            worst = worst.max(rel(s.c0, exact.c0)).max(rel(s.c1, exact.c1));
        }
        worst = worst.max(rel(exact.c1, printed));
    }
    Ok(verdict(
        worst,
        tol::GROUND_ENERGY,
        "relative error across decomposition and number basis",
    ))
}

fn degeneracy(_: &Context) -> Result<(bool, String), CliError> {
    let (near, pure) = (unit_modes(1e-6)?, unit_modes(0.0)?);
    let mut pairs: Vec<(Series1, Series1)> = Vec::new();
    for n in 2..=6 {
        pairs.push((
            closed_form::trace_power(n, &near, 1.0, 1.0)?,
            closed_form::trace_power(n, &pure, 1.0, 1.0)?,
        ));
    }
    for gamma in [0.5, 0.7, 1.5, 2.0, 3.0, 4.0] {
        pairs.push((
            closed_form::renyi(gamma, &near, 1.0, 1.0)?.value,
            closed_form::renyi(gamma, &pure, 1.0, 1.0)?.value,
        ));
    }
    pairs.push((closed_form::eof(&near).value, closed_form::eof(&pure).value));
    let mut worst: f64 = 0.0;
    let mut finite = true;
    for (a, b) in &pairs {
        finite &= [a.c0, a.c1, b.c0, b.c1].iter().all(|v| v.is_finite());
        worst = worst.max((a.c0 - b.c0).abs()).max((a.c1 - b.c1).abs());
    }
    let (ok, detail) = verdict(worst, tol::DEGENERACY, "|J=1e-6 minus J=0|");
    Ok((ok && finite, detail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fault_names_parse() {
        assert_eq!("g5-sign".parse::<Fault>().unwrap(), Fault::G5Sign);
        assert!("g4-sign".parse::<Fault>().is_err());
    }

    #[test]
    fn fast_subset_is_nonempty_and_proper() {
        let fast = CHECKS.iter().filter(|c| c.fast).count();
        assert!(fast > 0 && fast < CHECKS.len());
        let mut ids: Vec<u8> = CHECKS.iter().map(|c| c.criterion).collect();
        ids.dedup();
        assert_eq!(ids, (1..=10).collect::<Vec<u8>>());
    }
}
