//! First-order GUP corrections to the ground-state entanglement of two
//! coupled harmonic oscillators.
//!
//! Every α-dependent quantity is a [`Series1`], the exact first-order pair
//! `c0 + α·c1`. The closed forms live in [`closed_form`]; [`oracle`]
//! re-derives them by grid discretization, direct quadrature and number-basis
//! matrix algebra.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod closed_form;
pub mod error;
pub mod model;
pub mod oracle;
pub mod reduced_state;
pub mod series;
pub mod wavefunctions;

pub use closed_form::{eof, purity, renyi, trace_power, EntropyKind, EntropyResult};
pub use error::{GupError, Result};
pub use model::{ground_energy, normal_modes, NormalModes, OscillatorConfig, OscillatorMode};
pub use reduced_state::{kernel_coefficients, kernel_eval, KernelCoefficients};
pub use series::Series1;
