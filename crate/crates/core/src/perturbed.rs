//! Exact Riemann solver for the single-parameter flux-perturbed transport
//! system: constant density fans replace vacuum, delta shocks carry an
//! eps1-dependent speed and weight, and both converge to the zero-pressure
//! objects as eps1 -> 0.

use crate::error::{Error, Result};
use crate::state::{validate, FluxParams, State, SystemKind};
use crate::transport::{
    self, check_overcompressive, grh_residual_flux, jump_momentum_rate, DeltaShockData,
};
use crate::wave::{RiemannSolution, Wave};

fn check_inputs(left: State, right: State, eps1: f64) -> Result<()> {
    if !(eps1.is_finite() && eps1 >= 0.0) {
        return Err(Error::Params(format!("eps1 = {eps1} must be >= 0")));
    }
    let floor = 2.0 * eps1;
    for (name, s) in [("left", left), ("right", right)] {
        if !(s.rho.is_finite() && s.u.is_finite()) {
            return Err(Error::Data(format!("{name}: state must be finite")));
        }
        if s.rho <= floor || s.rho <= 0.0 {
            return Err(Error::Data(format!(
                "{name}: rho = {} must strictly exceed 2*eps1 = {floor}",
                s.rho
            )));
        }
    }
    Ok(())
}

/// Delta-shock speed of the eps1-perturbed system.
///
/// Evaluated in the factored form
/// sigma = (sqrt(rho+ - eps1) u+ + sqrt(rho- - eps1) u-) /
///         (sqrt(rho+ - eps1) + sqrt(rho- - eps1)),
/// which is free of the density-jump cancellation, needs no separate
/// equal-density branch, and reduces bit-for-bit to the zero-pressure
/// speed at eps1 = 0.
pub fn delta_speed(left: State, right: State, eps1: f64) -> Result<f64> {
    check_inputs(left, right, eps1)?;
    if left.u <= right.u {
        return Err(Error::Contract(format!(
            "delta shock requires u- > u+, got ({}, {})",
            left.u, right.u
        )));
    }
    let sl = (left.rho - eps1).sqrt();
    let sr = (right.rho - eps1).sqrt();
    let sigma = (sr * right.u + sl * left.u) / (sr + sl);
    if !check_overcompressive(sigma, left, right) {
        // unreachable for admissible data: the speed is a convex combination
        return Err(Error::Contract(format!(
            "entropy condition violated: sigma = {sigma} outside ({}, {})",
            right.u, left.u
        )));
    }
    Ok(sigma)
}

/// Geometric weight rate w(t)/t of the eps1-perturbed delta shock.
pub fn delta_weight_rate(left: State, right: State, eps1: f64) -> Result<f64> {
    let sigma = delta_speed(left, right, eps1)?;
    let root = ((left.rho - eps1) * (right.rho - eps1)).sqrt();
    Ok((root - eps1) * (left.u - right.u) / (1.0 + sigma * sigma).sqrt())
}

/// Full delta-shock data of the eps1-perturbed system.
pub fn delta_shock_data(left: State, right: State, eps1: f64) -> Result<DeltaShockData> {
    let sigma = delta_speed(left, right, eps1)?;
    let root = ((left.rho - eps1) * (right.rho - eps1)).sqrt();
    let w_rate = (root - eps1) * (left.u - right.u) / (1.0 + sigma * sigma).sqrt();
    Ok(DeltaShockData {
        sigma,
        w_rate,
        step_left: left,
        step_right: right,
    })
}

/// Residuals of the generalized jump relation with the eps1-modified fluxes.
pub fn grh_residual(d: &DeltaShockData, left: State, right: State, eps1: f64) -> (f64, f64, f64) {
    grh_residual_flux(d, left, right, eps1)
}

/// Solve the Riemann problem for the eps1-perturbed transport system.
pub fn solve_perturbed_transport(left: State, right: State, eps1: f64) -> Result<RiemannSolution> {
    let params = FluxParams::new(eps1, 0.0, 2.0);
    validate(left, right, &params, SystemKind::PerturbedTransport)?;

    let floor = params.density_floor();
    let (waves, middles) = if left.u < right.u {
        (
            vec![
                Wave::Contact { speed: left.u },
                Wave::ConstantDensityFan {
                    xi_left: left.u,
                    xi_right: right.u,
                    rho: floor,
                },
                Wave::Contact { speed: right.u },
            ],
            vec![State::new(floor, left.u), State::new(floor, right.u)],
        )
    } else if left.u > right.u {
        let d = delta_shock_data(left, right, eps1)?;
        (
            vec![Wave::DeltaShock {
                sigma: d.sigma,
                weight_rate_mass: d.weight_rate_mass(),
                weight_rate_momentum: jump_momentum_rate(d.sigma, left, right, eps1),
            }],
            vec![],
        )
    } else {
        (vec![Wave::Contact { speed: left.u }], vec![])
    };

    Ok(RiemannSolution {
        system: SystemKind::PerturbedTransport,
        params,
        left,
        right,
        waves,
        middles,
    })
}

/// One row of an eps1 -> 0 limit table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitRow {
    pub eps1: f64,
    pub sigma: f64,
    pub w_rate: f64,
    /// |sigma - sigma_zp|
    pub sigma_gap: f64,
    /// |w_rate - w_rate_zp|
    pub w_rate_gap: f64,
}

/// Evaluate the delta-shock speed and weight rate along a decreasing eps1
/// schedule, together with the gaps to the zero-pressure closed forms.
pub fn limit_table(left: State, right: State, schedule: &[f64]) -> Result<Vec<LimitRow>> {
    if left.u <= right.u {
        return Err(Error::Contract(format!(
            "limit table requires u- > u+, got ({}, {})",
            left.u, right.u
        )));
    }
    let cap = 0.5 * left.rho.min(right.rho);
    for w in schedule.windows(2) {
        if w[1] >= w[0] {
            return Err(Error::Data(format!(
                "schedule must be strictly decreasing, got {} then {}",
                w[0], w[1]
            )));
        }
    }
    if let Some(&first) = schedule.first() {
        if first >= cap {
            return Err(Error::Data(format!(
                "schedule entry {first} violates rho > 2*eps1 (cap {cap})"
            )));
        }
    }

    let zp = transport::delta_shock_data(left, right)?;
    schedule
        .iter()
        .map(|&eps1| {
            let d = delta_shock_data(left, right, eps1)?;
            Ok(LimitRow {
                eps1,
                sigma: d.sigma,
                w_rate: d.w_rate,
                sigma_gap: (d.sigma - zp.sigma).abs(),
                w_rate_gap: (d.w_rate - zp.w_rate).abs(),
            })
        })
        .collect()
}

/// Check that gap columns shrink along the schedule: strictly decreasing,
/// with equality tolerated only at the zero/noise floor.
pub fn gaps_decreasing(rows: &[LimitRow]) -> bool {
    let floor = 1e-13;
    rows.windows(2).all(|w| {
        let s_ok = w[1].sigma_gap < w[0].sigma_gap
            || (w[1].sigma_gap == w[0].sigma_gap && w[1].sigma_gap <= floor);
        let w_ok = w[1].w_rate_gap < w[0].w_rate_gap
            || (w[1].w_rate_gap == w[0].w_rate_gap && w[1].w_rate_gap <= floor);
        s_ok && w_ok
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1() -> (State, State) {
        (State::new(1.0, 2.0), State::new(4.0, 0.0))
    }

    #[test]
    fn t1_speed_and_weight_at_tenth() {
        let (l, r) = t1();
        let sigma = delta_speed(l, r, 0.1).unwrap();
        assert!((sigma - 0.6489995996796797).abs() < 1e-15);
        assert!((sigma - 0.649).abs() < 1e-6);
        let w = delta_weight_rate(l, r, 0.1).unwrap();
        assert!((w - 2.9753178559232154).abs() < 1e-14);
        assert!((w - 2.97532).abs() < 1e-4);
    }

    #[test]
    fn matched_densities_use_the_midpoint_speed() {
        let l = State::new(2.0, 3.0);
        let r = State::new(2.0, 1.0);
        let sigma = delta_speed(l, r, 0.25).unwrap();
        assert_eq!(sigma, 2.0);
        let w = delta_weight_rate(l, r, 0.25).unwrap();
        assert!((w - 3.0 / 5f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn eps1_zero_recovers_zero_pressure_speed() {
        let (l, r) = t1();
        let zp = transport::delta_shock_data(l, r).unwrap();
        assert_eq!(delta_speed(l, r, 0.0).unwrap(), zp.sigma);
        assert_eq!(delta_weight_rate(l, r, 0.0).unwrap(), zp.w_rate);
    }

    #[test]
    fn quadratic_root_residual_is_tiny() {
        // sigma must solve sigma^2 [rho] - 2 sigma [(rho-eps1) u] + [(rho-eps1) u^2] = 0
        let (l, r) = t1();
        for eps1 in [0.0, 0.01, 0.1, 0.3] {
            let s = delta_speed(l, r, eps1).unwrap();
            let ap = r.rho - eps1;
            let am = l.rho - eps1;
            let res = s * s * (r.rho - l.rho) - 2.0 * s * (ap * r.u - am * l.u)
                + (ap * r.u * r.u - am * l.u * l.u);
            let scale = 1.0 + (ap * r.u * r.u).abs() + (am * l.u * l.u).abs();
            assert!(res.abs() / scale < 1e-10, "eps1 = {eps1}: {res}");
        }
    }

    #[test]
    fn spreading_velocities_give_constant_density_fan() {
        let sol =
            solve_perturbed_transport(State::new(1.0, 0.0), State::new(4.0, 1.0), 0.01).unwrap();
        assert_eq!(
            sol.waves,
            vec![
                Wave::Contact { speed: 0.0 },
                Wave::ConstantDensityFan {
                    xi_left: 0.0,
                    xi_right: 1.0,
                    rho: 0.02
                },
                Wave::Contact { speed: 1.0 },
            ]
        );
        sol.validate_invariants().unwrap();
    }

    #[test]
    fn grh_residual_with_perturbed_fluxes() {
        let (l, r) = t1();
        for eps1 in [0.0, 0.01, 0.1] {
            let d = delta_shock_data(l, r, eps1).unwrap();
            let (r1, r2, r3) = grh_residual(&d, l, r, eps1);
            assert_eq!(r1, 0.0);
            assert!(r2.abs() < 1e-12, "eps1 = {eps1}: {r2}");
            assert!(r3.abs() < 1e-12, "eps1 = {eps1}: {r3}");
        }
    }

    #[test]
    fn limit_table_shrinks_toward_zero_pressure() {
        let (l, r) = t1();
        let schedule: Vec<f64> = (1..=6).map(|k| 10f64.powi(-k)).collect();
        let rows = limit_table(l, r, &schedule).unwrap();
        assert!(gaps_decreasing(&rows));
        let last = rows.last().unwrap();
        assert!(last.sigma_gap < 2e-5, "{}", last.sigma_gap);
    }

    #[test]
    fn limit_table_accepts_a_zero_entry() {
        let (l, r) = t1();
        let rows = limit_table(l, r, &[0.1, 0.0]).unwrap();
        assert_eq!(rows[1].sigma, 2.0 / 3.0);
        assert_eq!(rows[1].sigma_gap, 0.0);
        assert_eq!(rows[1].w_rate_gap, 0.0);
    }

    #[test]
    fn limit_table_sigma_constant_for_matched_densities() {
        let l = State::new(2.0, 3.0);
        let r = State::new(2.0, 1.0);
        let rows = limit_table(l, r, &[0.1, 0.01, 0.001]).unwrap();
        for row in &rows {
            assert_eq!(row.sigma, 2.0);
        }
        assert!(gaps_decreasing(&rows));
    }

    #[test]
    fn limit_table_rejects_fat_schedule() {
        let (l, r) = t1();
        assert!(matches!(
            limit_table(l, r, &[0.6, 0.1]),
            Err(Error::Data(_))
        ));
    }
}
