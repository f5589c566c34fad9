//! Property suites for the solver invariants.

use proptest::prelude::*;

use fluxlab_core::isentropic::{solve_isentropic, wave_curve_u_from_left, wave_curve_u_from_right};
use fluxlab_core::perturbed;
use fluxlab_core::state::{eigenvalues, pressure};
use fluxlab_core::transport;
use fluxlab_core::{FluxParams, State};

fn admissible_params() -> impl Strategy<Value = FluxParams> {
    (0.0..0.2f64, 0.01..2.0f64, 1.2..3.0f64)
        .prop_map(|(eps1, eps2, gamma)| FluxParams::new(eps1, eps2, gamma))
}

fn state_above(floor: f64) -> impl Strategy<Value = State> {
    (0.05..5.0f64, -3.0..3.0f64).prop_map(move |(drho, u)| State::new(floor + drho, u))
}

proptest! {
    #[test]
    fn eigenvalues_are_ordered(params in admissible_params(), drho in 0.0..5.0f64, u in -3.0..3.0f64) {
        let s = State::new(params.density_floor() + drho, u);
        let (l1, l2) = eigenvalues(s, &params).unwrap();
        prop_assert!(l1 <= l2);
        // equality exactly at the floor (eps2 > 0 here)
        prop_assert_eq!(l1 == l2, drho == 0.0);
    }

    #[test]
    fn pressure_is_monotone(gamma in 1.1..3.5f64, a in 0.0..4.0f64, gap in 0.001..2.0f64) {
        let params = FluxParams::new(0.0, 0.0, gamma);
        let pa = pressure(a, &params).unwrap();
        let pb = pressure(a + gap, &params).unwrap();
        prop_assert!(pa < pb);
    }

    #[test]
    fn zero_pressure_delta_is_overcompressive(
        rl in 0.05..5.0f64, rr in 0.05..5.0f64,
        ur in -3.0..3.0f64, du in 0.001..4.0f64,
    ) {
        let left = State::new(rl, ur + du);
        let right = State::new(rr, ur);
        let d = transport::delta_shock_data(left, right).unwrap();
        prop_assert!(transport::check_overcompressive(d.sigma, left, right));
        prop_assert!(d.w_rate > 0.0);
        // closed form for the geometric weight rate
        let expect = (rl * rr).sqrt() * du / (1.0 + d.sigma * d.sigma).sqrt();
        prop_assert!((d.w_rate - expect).abs() <= 1e-12 * expect.max(1.0));
        // generalized jump relation at machine precision
        let (r1, r2, r3) = transport::grh_residual_zp(&d, left, right);
        let scale = 1.0 + rl.max(rr) * (ur.abs() + du).powi(2);
        prop_assert!(r1 == 0.0);
        prop_assert!(r2.abs() <= 1e-13 * scale);
        prop_assert!(r3.abs() <= 1e-13 * scale);
    }

    #[test]
    fn zero_pressure_galilean_shift(
        rl in 0.05..5.0f64, rr in 0.05..5.0f64,
        ur in -2.0..2.0f64, du in 0.001..3.0f64, c in -3.0..3.0f64,
    ) {
        let left = State::new(rl, ur + du);
        let right = State::new(rr, ur);
        let d = transport::delta_shock_data(left, right).unwrap();
        let shifted = transport::delta_shock_data(
            State::new(rl, ur + du + c),
            State::new(rr, ur + c),
        ).unwrap();
        // the front moves with the frame
        prop_assert!((shifted.sigma - (d.sigma + c)).abs() < 1e-12 * (1.0 + c.abs() + d.sigma.abs()));
        // the mass rate w(t) sqrt(1 + sigma^2) / t is frame independent
        let mass = d.weight_rate_mass();
        let mass_shifted = shifted.weight_rate_mass();
        prop_assert!((mass - mass_shifted).abs() < 1e-11 * mass.max(1.0));
    }

    #[test]
    fn perturbed_speed_consistency(
        eps1 in 0.0..0.2f64,
        dl in 0.05..5.0f64, dr in 0.05..5.0f64,
        ur in -3.0..3.0f64, du in 0.001..4.0f64,
    ) {
        let left = State::new(2.0 * eps1 + dl, ur + du);
        let right = State::new(2.0 * eps1 + dr, ur);
        let sigma = perturbed::delta_speed(left, right, eps1).unwrap();
        // entropy condition
        prop_assert!(right.u < sigma && sigma < left.u);
        // at eps1 = 0 the zero-pressure speed is recovered exactly
        let zp = transport::delta_shock_data(left, right).unwrap();
        let sigma0 = perturbed::delta_speed(left, right, 0.0).unwrap();
        prop_assert_eq!(sigma0, zp.sigma);
        // the speed solves its quadratic to high relative accuracy
        let (ap, am) = (right.rho - eps1, left.rho - eps1);
        let res = sigma * sigma * (right.rho - left.rho)
            - 2.0 * sigma * (ap * right.u - am * left.u)
            + (ap * right.u * right.u - am * left.u * left.u);
        let scale = 1.0 + (ap * right.u * right.u).abs() + (am * left.u * left.u).abs();
        prop_assert!(res.abs() / scale < 1e-10);
    }

    #[test]
    fn wave_curves_are_monotone(
        params in admissible_params(),
        anchor in (0.1..4.0f64, -2.0..2.0f64),
        a in 0.0..8.0f64, gap in 1e-4..4.0f64,
    ) {
        let floor = params.density_floor();
        let anchor = State::new(floor + anchor.0, anchor.1);
        let lo = floor + a;
        let hi = lo + gap;
        let ul_lo = wave_curve_u_from_left(lo, anchor, &params).unwrap();
        let ul_hi = wave_curve_u_from_left(hi, anchor, &params).unwrap();
        prop_assert!(ul_lo > ul_hi, "from_left not decreasing: {} at {lo}, {} at {hi}", ul_lo, ul_hi);
        let ur_lo = wave_curve_u_from_right(lo, anchor, &params).unwrap();
        let ur_hi = wave_curve_u_from_right(hi, anchor, &params).unwrap();
        prop_assert!(ur_lo < ur_hi, "from_right not increasing: {} at {lo}, {} at {hi}", ur_lo, ur_hi);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solutions_satisfy_their_invariants(
        params in admissible_params(),
        left in state_above(0.4),
        right in state_above(0.4),
    ) {
        // floor 0.4 >= 2*eps1 for eps1 < 0.2, so data is admissible for all systems
        let zp = transport::solve_zero_pressure(left, right).unwrap();
        zp.validate_invariants().unwrap();

        let pt = perturbed::solve_perturbed_transport(left, right, params.eps1.max(1e-3)).unwrap();
        pt.validate_invariants().unwrap();

        let ise = solve_isentropic(left, right, &params).unwrap();
        ise.validate_invariants().unwrap();
    }
}
