use gupent_core::{closed_form, EntropyResult, OscillatorConfig};

use crate::{strain_warning, CliError};

/// A single-point entropy evaluation, ready to print.
#[derive(Debug, Clone)]
pub struct EntropyReport {
    pub result: EntropyResult,
    pub alpha: f64,
    pub notices: Vec<String>,
}

impl EntropyReport {
    pub fn value(&self) -> f64 {
        self.result.value.eval(self.alpha)
    }

    pub fn render(&self) -> String {
        let v = self.result.value;
        format!(
            "gamma = {}\nkind = {}\nc0 = {}\nc1 = {}\nalpha = {}\nvalue = {}\n",
            self.result.gamma,
            self.result.kind.label(),
            v.c0,
            v.c1,
            self.alpha,
            self.value()
        )
    }
}

pub fn entropy(
    gamma: f64,
    j: f64,
    alpha: f64,
    k0: f64,
    m: f64,
    hbar: f64,
) -> Result<EntropyReport, CliError> {
    let cfg = OscillatorConfig::new(m, k0, j, hbar, alpha)?;
    let modes = cfg.normal_modes()?;
    let mut notices = Vec::new();
    let result = if gamma == 1.0 {
        notices.push("gamma = 1 is the entanglement of formation; reporting EoF".to_string());
        closed_form::eof(&modes)
    } else {
        closed_form::renyi(gamma, &modes, m, hbar)?
    };
    notices.extend(strain_warning(
        "entropy",
        result.value.c0,
        result.value.c1,
        alpha,
    ));
    Ok(EntropyReport {
        result,
        alpha,
        notices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gupent_core::EntropyKind;

    #[test]
    fn order_one_reroutes_to_eof() {
        let r = entropy(1.0, 1.0, 0.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(r.result.kind, EntropyKind::EofLimit);
        assert_eq!(r.result.value.c1, 0.0);
        assert!((r.value() - 0.0943925).abs() < 1e-7);
        assert!(r.render().contains("kind = eof_limit"));
    }

    #[test]
    fn uncoupled_is_zero() {
        let r = entropy(2.0, 0.0, 0.3, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(r.value(), 0.0);
        assert_eq!(r.result.value.c1, 0.0);
    }

    #[test]
    fn continuation_decreases_with_alpha() {
        let with = entropy(0.7, 10.0, 0.2, 1.0, 1.0, 1.0).unwrap();
        let without = entropy(0.7, 10.0, 0.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(with.result.kind, EntropyKind::Continuation);
        assert!(with.value() < without.value());
    }

    #[test]
    fn bad_inputs_are_errors() {
        assert!(entropy(0.0, 1.0, 0.0, 1.0, 1.0, 1.0).is_err());
        assert!(entropy(2.0, -1.0, 0.0, 1.0, 1.0, 1.0).is_err());
        assert!(entropy(2.0, 1.0, -0.1, 1.0, 1.0, 1.0).is_err());
    }
}
