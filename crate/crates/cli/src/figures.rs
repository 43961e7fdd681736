use std::str::FromStr;

use gupent_core::{closed_form, NormalModes, OscillatorConfig, Series1};
use rayon::prelude::*;

use crate::table::Table;
use crate::{strain_warning, CliError};

/// The α columns of the J-sweep figures.
pub const FIGURE_ALPHAS: [f64; 3] = [0.0, 0.2, 0.4];
/// Rows of the α-sweep figure.
pub const FIGURE_3B_COUPLINGS: [f64; 3] = [10.0, 20.0, 30.0];
pub const J_MAX: f64 = 50.0;
pub const J_STEP: f64 = 0.5;
pub const ALPHA_MAX: f64 = 0.5;
pub const ALPHA_STEP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    Purity,
    RenyiTwo,
    RenyiContinued,
    RenyiContinuedAlpha,
}

impl FromStr for FigureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" => Ok(FigureId::Purity),
            "2" => Ok(FigureId::RenyiTwo),
            "3a" => Ok(FigureId::RenyiContinued),
            "3b" => Ok(FigureId::RenyiContinuedAlpha),
            other => Err(format!("unknown figure {other:?}; expected 1, 2, 3a or 3b")),
        }
    }
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [
        FigureId::Purity,
        FigureId::RenyiTwo,
        FigureId::RenyiContinued,
        FigureId::RenyiContinuedAlpha,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FigureId::Purity => "1",
            FigureId::RenyiTwo => "2",
            FigureId::RenyiContinued => "3a",
            FigureId::RenyiContinuedAlpha => "3b",
        }
    }

    fn quantity(self) -> &'static str {
        match self {
            FigureId::Purity => "purity",
            FigureId::RenyiTwo => "renyi gamma=2",
            _ => "renyi gamma=0.7",
        }
    }

    fn series(self, modes: &NormalModes) -> Result<Series1, CliError> {
        Ok(match self {
            FigureId::Purity => closed_form::purity(modes, 1.0, 1.0),
            FigureId::RenyiTwo => closed_form::renyi(2.0, modes, 1.0, 1.0)?.value,
            _ => closed_form::renyi(0.7, modes, 1.0, 1.0)?.value,
        })
    }

    /// Expected direction of change with increasing α.
    pub fn increasing_in_alpha(self) -> bool {
        self == FigureId::RenyiTwo
    }
}

/// A figure's data plus any truncation-strain warnings raised while building it.
#[derive(Debug, Clone)]
pub struct Figure {
    pub id: FigureId,
    pub table: Table,
    pub warnings: Vec<String>,
}

fn unit_params() -> Vec<(String, String)> {
    ["k0", "m", "hbar"]
        .iter()
        .map(|k| (k.to_string(), "1".to_string()))
        .collect()
}

pub fn j_grid() -> Vec<f64> {
    let steps = (J_MAX / J_STEP).round() as usize;
    (0..=steps).map(|i| i as f64 * J_STEP).collect()
}

pub fn alpha_grid() -> Vec<f64> {
    let steps = (ALPHA_MAX / ALPHA_STEP).round() as usize;
    (0..=steps).map(|i| i as f64 / 100.0).collect()
}

fn unit_modes(j: f64) -> Result<NormalModes, CliError> {
    Ok(OscillatorConfig::unit(j, 0.0)?.normal_modes()?)
}

/// Builds the CSV table for one figure at `k₀ = m = ħ = 1`.
pub fn build(id: FigureId) -> Result<Figure, CliError> {
    let (rows_of, alphas) = match id {
        FigureId::RenyiContinuedAlpha => (FIGURE_3B_COUPLINGS.to_vec(), alpha_grid()),
        _ => (j_grid(), FIGURE_ALPHAS.to_vec()),
    };
    let series: Vec<Series1> = rows_of
        .par_iter()
        .map(|&j| id.series(&unit_modes(j)?))
        .collect::<Result<_, _>>()?;

    let mut header = vec!["J".to_string()];
    header.extend(alphas.iter().map(|a| match id {
        FigureId::RenyiContinuedAlpha => format!("alpha={a:.2}"),
        _ => format!("alpha={a}"),
    }));
    let mut table = Table::new(unit_params(), header);
    let mut warnings = Vec::new();
    for (&j, s) in rows_of.iter().zip(&series) {
        let mut row = vec![j];
        row.extend(alphas.iter().map(|&a| s.eval(a)));
        table.rows.push(row);
    }
    for &a in &alphas {
        let first_strained = rows_of
            .iter()
            .zip(&series)
            .filter_map(|(&j, s)| {
                strain_warning(
                    &format!("figure {} {} at J={j}", id.label(), id.quantity()),
                    s.c0,
                    s.c1,
                    a,
                )
            })
            .next();
        warnings.extend(first_strained);
    }
    Ok(Figure {
        id,
        table,
        warnings,
    })
}

/// Column values in each row must move monotonically with α in the
/// direction the figure claims. Returns the offending `(J, column)` cells.
pub fn monotonicity_violations(fig: &Figure) -> Vec<(f64, usize)> {
    let up = fig.id.increasing_in_alpha();
    let mut bad = Vec::new();
    for row in &fig.table.rows {
        let j = row[0];
        if j == 0.0 {
            continue;
        }
        for (k, pair) in row[1..].windows(2).enumerate() {
            let ok = if up {
                pair[1] >= pair[0]
            } else {
                pair[1] <= pair[0]
            };
            if !ok {
                bad.push((j, k + 2));
            }
        }
    }
    bad
}
