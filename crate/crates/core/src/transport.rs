//! Exact Riemann solver for the zero-pressure transport equations:
//! vacuum fans between two contacts when the velocities spread, weighted
//! delta shocks when they overlap.

use crate::error::{Error, Result};
use crate::pairing::{line_transport, wedge_phi_t, wedge_phi_x};
use crate::state::{validate, FluxParams, State, SystemKind};
use crate::testfn::TestFunction;
use crate::wave::{RiemannSolution, Wave};

/// Delta-shock speed, geometric weight rate and the regular step states.
///
/// `w_rate` is the geometric weight per unit time, w(t)/t; the mass weight
/// rate with the arclength factor premultiplied is `weight_rate_mass()`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaShockData {
    pub sigma: f64,
    pub w_rate: f64,
    pub step_left: State,
    pub step_right: State,
}

impl DeltaShockData {
    pub fn weight_rate_mass(&self) -> f64 {
        self.w_rate * (1.0 + self.sigma * self.sigma).sqrt()
    }

    pub fn weight_rate_momentum(&self) -> f64 {
        self.sigma * self.weight_rate_mass()
    }
}

/// Closed-form delta-shock data for the zero-pressure system:
/// sigma is the sqrt(rho)-weighted velocity average and
/// w(t)/t = sqrt(rho- rho+) (u- - u+) / sqrt(1 + sigma^2).
pub fn delta_shock_data(left: State, right: State) -> Result<DeltaShockData> {
    if !(left.rho > 0.0 && right.rho > 0.0) {
        return Err(Error::Data(format!(
            "delta shock needs positive densities, got ({}, {})",
            left.rho, right.rho
        )));
    }
    if left.u <= right.u {
        return Err(Error::Contract(format!(
            "delta shock requires u- > u+, got ({}, {})",
            left.u, right.u
        )));
    }
    let sl = left.rho.sqrt();
    let sr = right.rho.sqrt();
    let sigma = (sr * right.u + sl * left.u) / (sr + sl);
    let w_rate = sl * sr * (left.u - right.u) / (1.0 + sigma * sigma).sqrt();
    Ok(DeltaShockData {
        sigma,
        w_rate,
        step_left: left,
        step_right: right,
    })
}

/// Solve the Riemann problem for the zero-pressure system.
pub fn solve_zero_pressure(left: State, right: State) -> Result<RiemannSolution> {
    let params = FluxParams::new(0.0, 0.0, 2.0);
    validate(left, right, &params, SystemKind::ZeroPressure)?;

    let (waves, middles) = if left.u < right.u {
        (
            vec![
                Wave::Contact { speed: left.u },
                Wave::VacuumFan {
                    xi_left: left.u,
                    xi_right: right.u,
                },
                Wave::Contact { speed: right.u },
            ],
            vec![State::new(0.0, left.u), State::new(0.0, right.u)],
        )
    } else if left.u > right.u {
        let d = delta_shock_data(left, right)?;
        (
            vec![Wave::DeltaShock {
                sigma: d.sigma,
                weight_rate_mass: d.weight_rate_mass(),
                weight_rate_momentum: jump_momentum_rate(d.sigma, left, right, 0.0),
            }],
            vec![],
        )
    } else if left.rho != right.rho {
        (vec![Wave::Contact { speed: left.u }], vec![])
    } else {
        (vec![], vec![])
    };

    Ok(RiemannSolution {
        system: SystemKind::ZeroPressure,
        params,
        left,
        right,
        waves,
        middles,
    })
}

/// The overcompressive entropy condition u+ < sigma < u-.
pub fn check_overcompressive(sigma: f64, left: State, right: State) -> bool {
    right.u < sigma && sigma < left.u
}

/// sigma*jump(rho) - jump(rho*u - 2*eps1*u): the mass weight rate forced by the
/// generalized jump relation.
pub(crate) fn jump_mass_rate(sigma: f64, left: State, right: State, eps1: f64) -> f64 {
    sigma * (right.rho - left.rho)
        - ((right.rho - 2.0 * eps1) * right.u - (left.rho - 2.0 * eps1) * left.u)
}

/// sigma*jump(rho*u) - jump(rho*u^2 - eps1*u^2): the momentum weight rate forced by
/// the generalized jump relation.
pub(crate) fn jump_momentum_rate(sigma: f64, left: State, right: State, eps1: f64) -> f64 {
    sigma * (right.rho * right.u - left.rho * left.u)
        - ((right.rho - eps1) * right.u * right.u - (left.rho - eps1) * left.u * left.u)
}

/// Residuals of the generalized jump relation for a delta shock whose
/// location and weight grow linearly, x(t) = sigma*t and w(t) = w_rate*t,
/// against the flux jumps of the eps1-perturbed system.
pub(crate) fn grh_residual_flux(
    d: &DeltaShockData,
    left: State,
    right: State,
    eps1: f64,
) -> (f64, f64, f64) {
    // dx/dt - sigma vanishes identically for the linear front.
    let r1 = 0.0;
    let mass_rate = d.weight_rate_mass();
    let r2 = mass_rate - jump_mass_rate(d.sigma, left, right, eps1);
    let r3 = d.sigma * mass_rate - jump_momentum_rate(d.sigma, left, right, eps1);
    (r1, r2, r3)
}

/// Residuals of the zero-pressure generalized jump relation.
pub fn grh_residual_zp(d: &DeltaShockData, left: State, right: State) -> (f64, f64, f64) {
    grh_residual_flux(d, left, right, 0.0)
}

/// Distributional residuals (mass, momentum) of a zero-pressure Riemann
/// solution against one test function: the two weak-form pairings computed
/// by adaptive quadrature over the support box, with delta contributions
/// evaluated as line integrals along the front.
pub fn weak_form_residual_zp(sol: &RiemannSolution, test: &TestFunction) -> Result<(f64, f64)> {
    if sol.system != SystemKind::ZeroPressure {
        return Err(Error::Contract(
            "weak-form residual is defined for zero-pressure solutions".into(),
        ));
    }

    // Constant wedges: (c_lo, c_hi, state). Vacuum fans carry rho = 0 and
    // contribute nothing to either pairing.
    let mut wedges: Vec<(f64, f64, State)> = Vec::new();
    let mut cursor = f64::NEG_INFINITY;
    for (i, wave) in sol.waves.iter().enumerate() {
        let (lo, hi) = wave.span();
        wedges.push((cursor, lo, sol.state_left_of(i)));
        cursor = hi;
    }
    wedges.push((cursor, f64::INFINITY, sol.right));

    let mut res_mass = 0.0;
    let mut res_momentum = 0.0;
    for (lo, hi, s) in wedges {
        if lo >= hi || s.rho == 0.0 {
            continue;
        }
        let pt = wedge_phi_t(test, lo, hi)?;
        let px = wedge_phi_x(test, lo, hi)?;
        res_mass += s.rho * pt + s.rho * s.u * px;
        res_momentum += s.rho * s.u * pt + s.rho * s.u * s.u * px;
    }

    for wave in &sol.waves {
        if let Wave::DeltaShock {
            sigma,
            weight_rate_mass,
            ..
        } = *wave
        {
            let lt = line_transport(test, sigma)?;
            res_mass += weight_rate_mass * lt;
            res_momentum += sigma * weight_rate_mass * lt;
        }
    }

    Ok((res_mass, res_momentum))
}
