// Copyright 2026 Dephasim Contributors
// SPDX-License-Identifier: Apache-2.0

mod common;

use common::{rp, table, TOL};
use dephasim_core::params::{default_params, reduce, BOHR_RADIUS, HBAR};
use dephasim_core::quadrature::simpson;
use dephasim_core::spectral::{
    auto_horizon, auto_horizon_with, build_table, cross_bracket, gamma1, gamma2, HorizonOptions, SpectralModel,
};
use proptest::prelude::*;

/// Direct transcription of the reduced-unit rate integrands, sharing no
/// code with the library.
fn oracle_integrand(k: f64, tau: f64, g: f64, s: f64, c: f64, cross: Option<f64>) -> f64 {
    if k == 0.0 {
        return 0.0;
    }
    let e = (k * k * g + k.powi(4) / 4.0).sqrt();
    let w = c * k * k * (-k * k * s * s / 2.0).exp() / (k * k / 2.0 + 2.0 * g);
    let time = (e * tau / 2.0).sin() * (e * tau / 2.0).cos();
    let sinc = |x: f64| x.sin() / x;
    match cross {
        None => w * time * (1.0 - sinc(2.0 * k)),
        Some(d) => 0.5 * w * time * (sinc(2.0 * k * (d + 1.0)) + sinc(2.0 * k * (d - 1.0)) - 2.0 * sinc(2.0 * k * d)),
    }
}

#[test]
fn gamma1_matches_fine_simpson() {
    let p = rp(1.0, 200.0);
    let got = gamma1(1.0, &p, TOL).unwrap();
    let kmax = 8.0 / p.s;
    let want = simpson(|k| oracle_integrand(k, 1.0, p.g_tilde, p.s, p.c_rate, None), 0.0, kmax, 1_000_000);
    assert!(((got - want) / want).abs() < 1e-8, "{got} vs {want}");
}

#[test]
fn gamma2_matches_fine_simpson() {
    let p = rp(0.02, 4.0);
    for tau in [2.0, 5.0] {
        let got = gamma2(tau, &p, TOL).unwrap();
        let kmax = 8.0 / p.s;
        let want = simpson(|k| oracle_integrand(k, tau, p.g_tilde, p.s, p.c_rate, Some(p.d)), 0.0, kmax, 1_000_000);
        assert!(((got - want) / want).abs() < 1e-8, "tau={tau}: {got} vs {want}");
    }
}

#[test]
fn reduced_rate_equals_si_rate() {
    // gamma_1 in SI units with the physical couplings, 10^4-point Simpson.
    let p = default_params();
    let r = reduce(&p).unwrap();
    let m_se = p.sys_mass * p.env_mass / (p.sys_mass + p.env_mass);
    let g_se = 2.0 * std::f64::consts::PI * HBAR * HBAR * p.sys_env_scattering_length / m_se;
    let g_e = 4.0 * std::f64::consts::PI * HBAR * HBAR * p.env_scattering_length / p.env_mass;
    let n0 = p.density;
    let l = p.lattice_wavelength / 4.0;
    let sigma = p.site_width;
    let t = 1.0 * r.t0;
    let integrand = |k: f64| {
        if k == 0.0 {
            return 0.0;
        }
        let eps = HBAR * HBAR * k * k / (2.0 * p.env_mass);
        let ek = (2.0 * eps * n0 * g_e + eps * eps).sqrt();
        let ph = ek * t / (2.0 * HBAR);
        k * k * (-k * k * sigma * sigma / 2.0).exp() * ph.sin() * ph.cos() / (eps + 2.0 * g_e * n0)
            * (1.0 - (2.0 * k * l).sin() / (2.0 * k * l))
    };
    let si = g_se * g_se * n0 / (HBAR * std::f64::consts::PI.powi(2)) * simpson(integrand, 0.0, 8.0 / sigma, 10_000);
    let reduced = gamma1(1.0, &r, TOL).unwrap() / r.t0;
    assert!(((si - reduced) / si).abs() < 1e-7, "{si} vs {reduced}");
    // Sanity: the SI constants are the ones quoted for the setup.
    assert!((p.sys_env_scattering_length / BOHR_RADIUS - 55.0).abs() < 1e-12);
}

#[test]
fn gamma1_does_not_depend_on_separation() {
    for tau in [0.1, 1.0, 12.0] {
        assert_eq!(gamma1(tau, &rp(0.5, 4.0), TOL).unwrap(), gamma1(tau, &rp(0.5, 200.0), TOL).unwrap());
    }
}

#[test]
fn cross_bracket_envelope() {
    // |B| <= 1/(2k(d+1)) + 1/(2k(d-1)) + 2/(2kd) <= 2/(k(d-1)); the bound is
    // attained up to O(1/d) where cos(2k) = -1.
    for d in [4.0f64, 50.0, 500.0] {
        let mut worst = 0.0f64;
        for i in 1..200_000 {
            let k = i as f64 * 1e-4;
            let b = cross_bracket(k, d).abs();
            worst = worst.max(b * k * (d - 1.0) / 2.0);
        }
        assert!(worst <= 1.0, "d={d}: ratio {worst}");
        if d >= 50.0 {
            assert!(worst > 0.9, "d={d}: bound should be nearly tight, ratio {worst}");
        }
    }
}

#[test]
fn far_separated_qubits_have_negligible_cross_talk() {
    let p = rp(1.0, 500.0);
    let h = auto_horizon(&p, dephasim_core::spectral::DEFAULT_HORIZON_ETA, HorizonOptions::default()).unwrap();
    let t = build_table(&p, h, 256, TOL).unwrap();
    let max_g1 = t.gamma1.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let max_g2 = t.gamma2.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    assert!(max_g2 <= 1e-6 * max_g1, "{max_g2} vs {max_g1}");

    // Triangle-inequality oracle: |gamma_2| never exceeds the integral of
    // the absolute integrand, evaluated independently.
    let kmax = 8.0 / p.s;
    for tau in [1.0, h / 2.0, h] {
        let bound = simpson(|k| oracle_integrand(k, tau, p.g_tilde, p.s, p.c_rate, Some(p.d)).abs(), 0.0, kmax, 400_000);
        assert!(gamma2(tau, &p, TOL).unwrap().abs() <= bound * (1.0 + 1e-6) + 1e-18);
    }
}

#[test]
fn common_environment_cross_talk_turns_negative() {
    let t = table(0.02, 4.0, 2048, TOL);
    assert!(t.gamma2.iter().any(|&g| g < 0.0));
}

#[test]
fn weak_interaction_single_qubit_rate_stays_positive() {
    let t = table(0.02, 4.0, 2048, TOL);
    let lowest = t.gamma1.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(lowest >= -1e-12, "{lowest}");
}

#[test]
fn halving_tolerance_is_stable() {
    let model = SpectralModel::new(rp(0.5, 4.0)).unwrap();
    for tau in [0.5, 5.0, 25.0] {
        let tol = 1e-8;
        let a = model.sample(tau, tol).unwrap();
        let b = model.sample(tau, tol / 2.0).unwrap();
        for (x, y) in [(a.gamma1, b.gamma1), (a.gamma2, b.gamma2), (a.gamma0, b.gamma0), (a.delta, b.delta)] {
            assert!((x - y).abs() <= tol * x.abs().max(y.abs()) + 1e-16, "tau={tau}: {x} vs {y}");
        }
    }
}

#[test]
fn decoherence_functions_match_refined_trapezoid() {
    // Richardson-extrapolated trapezoid of the sampled rates on [0, 10].
    let p = rp(0.02, 4.0);
    let model = SpectralModel::new(p).unwrap();
    let n = 2000;
    let h = 10.0 / n as f64;
    let rates: Vec<(f64, f64)> = (0..=n).map(|i| model.rates(i as f64 * h, TOL).unwrap()).collect();
    let trap = |stride: usize, upto: usize, which: fn(&(f64, f64)) -> f64| {
        let mut acc = 0.0;
        let mut i = 0;
        while i < upto {
            acc += 0.5 * h * stride as f64 * (which(&rates[i]) + which(&rates[i + stride]));
            i += stride;
        }
        acc
    };
    for upto in [200, 1000, 2000] {
        let s = model.sample(upto as f64 * h, TOL).unwrap();
        let g0 = 2.0 * (4.0 * trap(1, upto, |r| r.0) - trap(2, upto, |r| r.0)) / 3.0;
        let dl = 4.0 * (4.0 * trap(1, upto, |r| r.1) - trap(2, upto, |r| r.1)) / 3.0;
        assert!((s.gamma0 - g0).abs() < 1e-6, "Gamma0 at {}: {} vs {g0}", upto as f64 * h, s.gamma0);
        assert!((s.delta - dl).abs() < 1e-6, "delta at {}: {} vs {dl}", upto as f64 * h, s.delta);
    }
}

#[test]
fn table_starts_at_zero_and_is_consistent() {
    let t = table(0.02, 4.0, 2048, TOL);
    assert_eq!((t.gamma0[0], t.delta[0], t.gamma1[0], t.gamma2[0]), (0.0, 0.0, 0.0, 0.0));
    // Coarse trapezoid drift is bounded by the grid, not by the quadrature.
    assert!(t.trapezoid_gap[0] < 1e-4 && t.trapezoid_gap[1] < 1e-4, "{:?}", t.trapezoid_gap);
    let s = t.sample(700);
    let exact = t.exact(s.tau).unwrap();
    assert_eq!(s, exact);
}

#[test]
fn independent_reservoirs_have_no_cross_decoherence() {
    let t = table(0.02, 200.0, 2048, TOL);
    let max_g0 = t.gamma0.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let max_dl = t.delta.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    assert!(max_dl <= 1e-5 * max_g0, "{max_dl} vs {max_g0}");
}

#[test]
fn decoherence_functions_follow_rate_signs() {
    for (a_b, d) in [(0.02, 4.0), (0.5, 4.0)] {
        let t = table(a_b, d, 2048, TOL);
        for i in 0..t.len() - 1 {
            if t.gamma1[i] >= 0.0 && t.gamma1[i + 1] >= 0.0 {
                assert!(t.gamma0[i + 1] >= t.gamma0[i] - 1e-12, "Gamma0 decreased at {}", t.tau[i]);
            }
            if t.gamma2[i] <= 0.0 && t.gamma2[i + 1] <= 0.0 {
                assert!(t.delta[i + 1] <= t.delta[i] + 1e-12, "delta increased at {}", t.tau[i]);
            }
        }
    }
}

#[test]
fn horizon_is_stable_under_cap_doubling_and_monotone_in_eta() {
    let p = rp(1.0, 200.0);
    let opts = HorizonOptions::default();
    let h = auto_horizon(&p, 1e-4, opts).unwrap();
    let h2 = auto_horizon(&p, 1e-4, HorizonOptions { cap: 2.0 * opts.cap, ..opts }).unwrap();
    assert_eq!(h, h2);
    let loose = auto_horizon(&p, 0.5, opts).unwrap();
    assert!(loose <= h);
    assert!(h.is_finite() && h > 0.0);
}

#[test]
fn zero_coupling_gives_minimal_horizon() {
    let h0 = 0.3f64 * 0.3 / 16.0;
    assert_eq!(auto_horizon_with(|_| Ok(0.0), h0, 1e-4, HorizonOptions::default()).unwrap(), h0);
}

#[test]
fn table_construction_is_deterministic() {
    let p = rp(0.5, 20.0);
    let a = build_table(&p, 10.0, 64, 1e-9).unwrap();
    let b = build_table(&p, 10.0, 64, 1e-9).unwrap();
    assert_eq!(a, b);
}

#[test]
fn single_precision_tracks_double() {
    let p = rp(0.5, 4.0);
    let p32 = p.cast::<f32>();
    for tau in [0.5f32, 3.0] {
        let a = gamma1(tau, &p32, 1e-5).unwrap() as f64;
        let b = gamma1(tau as f64, &p, TOL).unwrap();
        assert!(((a - b) / b).abs() < 1e-3, "{a} vs {b}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cross_bracket_small_kappa_expansion(d in 4.0f64..500.0, u in 1e-4f64..0.05) {
        let k = u / (d + 1.0);
        let b = cross_bracket(k, d);
        let series = -4.0 / 3.0 * k * k + (1.6 * d * d + 4.0 / 15.0) * k.powi(4);
        prop_assert!((b - series).abs() <= 0.5 * k.powi(6) * (d + 1.0).powi(4) + 1e-15 * k * k);
    }

    #[test]
    fn bracket_branches_are_continuous(d in 4.0f64..500.0) {
        let k = 0.25 / (d + 1.0);
        let lo = cross_bracket(k * (1.0 - 1e-9), d);
        let hi = cross_bracket(k * (1.0 + 1e-9), d);
        prop_assert!((lo - hi).abs() <= 1e-8 * lo.abs());
    }
}
