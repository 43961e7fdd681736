use gupent_core::closed_form::{trace_power, trace_power_from_moments};
use gupent_core::oracle::{
    discretize, quad_trace_direct, spectrum_numeric, trace_power_numeric, GridSpec,
};
use gupent_core::{kernel_coefficients, OscillatorConfig};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn trace_powers_across_dimensional_configs() {
    for &(m, k0, hbar) in &[(1.0, 0.5, 1.0), (0.7, 2.0, 1.3), (2.5, 4.0, 0.6)] {
        for j in [0.5, 3.0, 12.0] {
            let cfg = OscillatorConfig::new(m, k0, j, hbar, 0.0).unwrap();
            let modes = cfg.normal_modes().unwrap();
            let coeffs = kernel_coefficients(&modes, m, hbar);
            let dk = discretize(&coeffs, &GridSpec::for_kernel(&coeffs)).unwrap();
            let spec = spectrum_numeric(&dk);
            for n in 2..=6 {
                let exact = trace_power(n, &modes, m, hbar).unwrap();
                let num = trace_power_numeric(n, &dk).unwrap();
                assert!(rel(num.c0, exact.c0) <= 1e-6, "m={m} k0={k0} J={j} n={n}");
                assert!(rel(num.c1, exact.c1) <= 1e-4, "m={m} k0={k0} J={j} n={n}");
                let from_spec: f64 = spec.iter().map(|l| l.powi(n as i32)).sum();
                assert!((from_spec - num.c0).abs() <= 1e-8);
                if n >= 3 {
                    let moments = trace_power_from_moments(n, &modes, m, hbar).unwrap();
                    assert!(rel(moments.c0, exact.c0) <= 1e-10);
                    assert!(rel(moments.c1, exact.c1) <= 1e-8);
                }
            }
        }
    }
}

#[test]
fn direct_cubic_quadrature_agrees_off_unit() {
    let (m, hbar) = (0.8, 1.4);
    let cfg = OscillatorConfig::new(m, 1.5, 2.0, hbar, 0.0).unwrap();
    let modes = cfg.normal_modes().unwrap();
    let coeffs = kernel_coefficients(&modes, m, hbar);
    let grid = GridSpec::for_kernel(&coeffs).with_points(96).unwrap();
    let direct = quad_trace_direct(3, &coeffs, &grid).unwrap();
    let exact = trace_power(3, &modes, m, hbar).unwrap();
    assert!(rel(direct.c0, exact.c0) <= 1e-5);
    assert!(rel(direct.c1, exact.c1) <= 1e-5);
}
