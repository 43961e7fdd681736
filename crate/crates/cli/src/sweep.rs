use std::str::FromStr;

use gupent_core::{closed_form, ground_energy, OscillatorConfig, Series1};
use rayon::prelude::*;

use crate::table::Table;
use crate::{strain_warning, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Purity,
    Renyi,
    Eof,
    TracePower,
    Energy,
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "purity" => Ok(Quantity::Purity),
            "renyi" => Ok(Quantity::Renyi),
            "eof" => Ok(Quantity::Eof),
            "trace-power" | "trace_power" => Ok(Quantity::TracePower),
            "energy" => Ok(Quantity::Energy),
            other => Err(format!(
                "unknown quantity {other:?}; expected purity, renyi, eof, trace-power or energy"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRequest {
    pub quantity: Quantity,
    pub gamma: Option<f64>,
    pub n: Option<usize>,
    pub j_values: Vec<f64>,
    pub alpha_values: Vec<f64>,
    pub k0: f64,
    pub m: f64,
    pub hbar: f64,
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub table: Table,
    pub notices: Vec<String>,
}

impl SweepRequest {
    /// Checks list and order parameters, rerouting `renyi` at `γ = 1` to `eof`.
    pub fn validated(mut self) -> Result<(Self, Vec<String>), CliError> {
        let mut notices = Vec::new();
        if self.j_values.is_empty() || self.alpha_values.is_empty() {
            return Err(CliError::Invalid(
                "--j-values and --alpha-values must be nonempty".into(),
            ));
        }
        if let Some(a) = self
            .alpha_values
            .iter()
            .find(|a| !(**a >= 0.0) || !a.is_finite())
        {
            return Err(CliError::Invalid(format!(
                "alpha must be finite and >= 0, got {a}"
            )));
        }
        match self.quantity {
            Quantity::Renyi => match self.gamma {
                None => return Err(CliError::Invalid("renyi needs --gamma".into())),
                Some(1.0) => {
                    notices.push(
                        "gamma = 1 is the entanglement of formation; sweeping eof instead".into(),
                    );
                    self.quantity = Quantity::Eof;
                }
                Some(g) if !(g > 0.0) || !g.is_finite() => {
                    return Err(CliError::Invalid(format!(
                        "gamma must be finite and > 0, got {g}"
                    )))
                }
                Some(_) => {}
            },
            Quantity::TracePower => match self.n {
                Some(n) if n >= 2 => {}
                Some(n) => {
                    return Err(CliError::Invalid(format!(
                        "trace-power needs --n >= 2, got {n}"
                    )))
                }
                None => return Err(CliError::Invalid("trace-power needs --n".into())),
            },
            _ => {}
        }
        for &j in &self.j_values {
            OscillatorConfig::new(self.m, self.k0, j, self.hbar, 0.0)?;
        }
        Ok((self, notices))
    }

    fn series(&self, j: f64) -> Result<Series1, CliError> {
        let cfg = OscillatorConfig::new(self.m, self.k0, j, self.hbar, 0.0)?;
        let modes = cfg.normal_modes()?;
        let (m, hbar) = (self.m, self.hbar);
        Ok(match self.quantity {
            Quantity::Purity => closed_form::purity(&modes, m, hbar),
            Quantity::Renyi => {
                closed_form::renyi(self.gamma.unwrap_or(2.0), &modes, m, hbar)?.value
            }
            Quantity::Eof => closed_form::eof(&modes).value,
            Quantity::TracePower => closed_form::trace_power(self.n.unwrap_or(2), &modes, m, hbar)?,
            Quantity::Energy => ground_energy(&cfg)?,
        })
    }
}

/// Evaluates the request on the `J × α` product, one row per pair in input
/// order, with columns `J, alpha, c0, c1, value`.
pub fn run(req: SweepRequest) -> Result<SweepOutput, CliError> {
    let (req, mut notices) = req.validated()?;
    let series: Vec<Series1> = req
        .j_values
        .par_iter()
        .map(|&j| req.series(j))
        .collect::<Result<_, _>>()?;

    let mut params = vec![
        ("k0".to_string(), req.k0.to_string()),
        ("m".to_string(), req.m.to_string()),
        ("hbar".to_string(), req.hbar.to_string()),
    ];
    match req.quantity {
        Quantity::Renyi => params.push(("gamma".into(), req.gamma.unwrap_or(2.0).to_string())),
        Quantity::TracePower => params.push(("n".into(), req.n.unwrap_or(2).to_string())),
        _ => {}
    }
    let header = ["J", "alpha", "c0", "c1", "value"]
        .map(String::from)
        .to_vec();
    let mut table = Table::new(params, header);
    for (&j, s) in req.j_values.iter().zip(&series) {
        for &a in &req.alpha_values {
            table.rows.push(vec![j, a, s.c0, s.c1, s.eval(a)]);
            notices.extend(strain_warning(&format!("J={j} alpha={a}"), s.c0, s.c1, a));
        }
    }
    Ok(SweepOutput { table, notices })
}
