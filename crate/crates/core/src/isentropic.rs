//! Exact Riemann solver for the two-parameter flux-approximated isentropic
//! system: wave curves with the rho = 2*eps1 singular endpoint, five-region
//! classification, intermediate-state root finding, solution assembly and
//! the vacuum threshold of the cavitation limit.

use crate::error::{Error, Result};
use crate::quad;
use crate::roots::brent;
use crate::state::{eigenvalues, FluxParams, State, SystemKind, REL_TOL};
use crate::wave::{Family, RiemannSolution, Wave};

/// Solution configuration by wave pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Backward and forward shock.
    TwoShock,
    /// Backward shock, forward rarefaction.
    ShockRarefaction,
    /// Backward rarefaction, forward shock.
    RarefactionShock,
    /// Two rarefactions with intermediate density above the floor.
    TwoRarefaction,
    /// Two rarefactions joined by a constant density fan at rho = 2*eps1.
    ConstantDensity,
}

/// Intermediate state between the 1-wave and the 2-wave, with shock speeds
/// where the adjacent wave is a shock.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntermediateState {
    pub rho_star: f64,
    pub u_star: f64,
    pub sigma1: Option<f64>,
    pub sigma2: Option<f64>,
}

fn check_curve_params(params: &FluxParams) -> Result<()> {
    params.check()?;
    if params.eps2 <= 0.0 {
        return Err(Error::Params(format!(
            "wave curves need eps2 > 0, got {}",
            params.eps2
        )));
    }
    Ok(())
}

fn check_anchor(name: &str, s: State, params: &FluxParams) -> Result<()> {
    if !(s.rho.is_finite() && s.u.is_finite()) {
        return Err(Error::Data(format!("{name}: state must be finite")));
    }
    if s.rho <= params.density_floor() || s.rho <= 0.0 {
        return Err(Error::Data(format!(
            "{name}: rho = {} must strictly exceed 2*eps1 = {}",
            s.rho,
            params.density_floor()
        )));
    }
    Ok(())
}

/// Integral of sqrt(eps2 * s^(gamma-2) / (s - 2*eps1)) over [a, b].
///
/// The inverse-square-root endpoint singularity at s = 2*eps1 is removed by
/// the substitution s = 2*eps1 + tau^2, after which the integrand
/// 2*sqrt(eps2*(2*eps1 + tau^2)^(gamma-2)) is smooth.
pub fn rarefaction_integral(a: f64, b: f64, params: &FluxParams) -> Result<f64> {
    params.check()?;
    let floor = params.density_floor();
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain("integration bounds must be finite".into()));
    }
    if a < floor {
        return Err(Error::Domain(format!(
            "lower bound {a} is below the density floor {floor}"
        )));
    }
    if b < a {
        return Err(Error::Domain(format!("bounds out of order: [{a}, {b}]")));
    }
    if a == b || params.eps2 == 0.0 {
        return Ok(0.0);
    }
    let sqrt_eps2 = params.eps2.sqrt();
    let exponent = 0.5 * (params.gamma - 2.0);
    let t_lo = (a - floor).sqrt();
    let t_hi = (b - floor).sqrt();
    quad::integrate(
        |tau| 2.0 * sqrt_eps2 * (floor + tau * tau).powf(exponent),
        t_lo,
        t_hi,
        quad::DEFAULT_ABS_TOL,
    )
}

fn shock_branch_drop(rho: f64, anchor: State, params: &FluxParams) -> Result<f64> {
    let denom = anchor.rho * rho - params.eps1 * (rho + anchor.rho);
    if denom <= 0.0 {
        return Err(Error::Domain(format!(
            "shock-curve denominator {denom} is not positive at rho = {rho}"
        )));
    }
    let num =
        params.eps2 * (rho - anchor.rho) * (rho.powf(params.gamma) - anchor.rho.powf(params.gamma));
    Ok((num / (params.gamma * denom)).max(0.0).sqrt())
}

/// Velocity reachable from the left state by one backward wave at density
/// `rho`: the rarefaction branch for rho <= rho_left, the shock branch
/// above. Strictly decreasing in rho.
pub fn wave_curve_u_from_left(rho: f64, left: State, params: &FluxParams) -> Result<f64> {
    check_curve_params(params)?;
    check_anchor("left", left, params)?;
    if !(rho.is_finite() && rho >= params.density_floor()) {
        return Err(Error::Domain(format!(
            "rho = {rho} is below the density floor {}",
            params.density_floor()
        )));
    }
    if rho <= left.rho {
        Ok(left.u + rarefaction_integral(rho, left.rho, params)?)
    } else {
        Ok(left.u - shock_branch_drop(rho, left, params)?)
    }
}

/// Velocity u* such that (rho, u*) connects to the right state by one
/// forward wave. Strictly increasing in rho.
pub fn wave_curve_u_from_right(rho: f64, right: State, params: &FluxParams) -> Result<f64> {
    check_curve_params(params)?;
    check_anchor("right", right, params)?;
    if !(rho.is_finite() && rho >= params.density_floor()) {
        return Err(Error::Domain(format!(
            "rho = {rho} is below the density floor {}",
            params.density_floor()
        )));
    }
    if rho <= right.rho {
        Ok(right.u - rarefaction_integral(rho, right.rho, params)?)
    } else {
        Ok(right.u + shock_branch_drop(rho, right, params)?)
    }
}

/// Fan edge velocities at the density floor: the endpoint of the backward
/// curve (u1) and of the forward curve (u2). The data lies in the constant
/// density region exactly when u1 <= u2.
fn floor_edges(left: State, right: State, params: &FluxParams) -> Result<(f64, f64)> {
    let floor = params.density_floor();
    let u1 = left.u + rarefaction_integral(floor, left.rho, params)?;
    let u2 = right.u - rarefaction_integral(floor, right.rho, params)?;
    Ok((u1, u2))
}

// Roots within this relative distance of an anchor density are snapped onto
// it, classifying the touching wave as a zero-strength rarefaction.
const SNAP_REL: f64 = 1e-9;

/// Unique root of g(rho) = u_from_left(rho) - u_from_right(rho) above the
/// density floor. Callers guarantee g(2*eps1) > 0.
fn star_density(left: State, right: State, params: &FluxParams) -> Result<f64> {
    let g = |rho: f64| -> f64 {
        let ul = wave_curve_u_from_left(rho, left, params).unwrap_or(f64::NAN);
        let ur = wave_curve_u_from_right(rho, right, params).unwrap_or(f64::NAN);
        ul - ur
    };

    let rho_max = left.rho.max(right.rho);
    let delta = 1e-14 * rho_max.max(1.0);
    let lo = params.density_floor() + delta;
    let g_lo = g(lo);
    if g_lo.is_nan() || g_lo <= 0.0 {
        return Err(Error::Contract(
            "wave curves do not cross above the density floor (constant-density data)".into(),
        ));
    }
    let mut hi = 2.0 * rho_max;
    let cap = 2f64.powi(60) * rho_max;
    while g(hi) > 0.0 {
        hi *= 2.0;
        if hi > cap {
            return Err(Error::Numerics(format!(
                "no sign change of the curve gap below rho = {cap} for data \
                 ({}, {}) / ({}, {})",
                left.rho, left.u, right.rho, right.u
            )));
        }
    }
    let mut root = brent(g, lo, hi, 0.0, REL_TOL, 200)?;

    let d_left = (root - left.rho).abs();
    let d_right = (root - right.rho).abs();
    if d_left.min(d_right) <= SNAP_REL * rho_max.max(1.0) {
        root = if d_left <= d_right {
            left.rho
        } else {
            right.rho
        };
    }
    Ok(root)
}

/// Speed of a bounded discontinuity from the mass jump relation.
fn jump_speed(l: State, r: State, params: &FluxParams) -> f64 {
    let e = 2.0 * params.eps1;
    ((r.rho - e) * r.u - (l.rho - e) * l.u) / (r.rho - l.rho)
}

/// Classify the Riemann datum into one of the five solution configurations.
pub fn classify_region(left: State, right: State, params: &FluxParams) -> Result<Region> {
    check_curve_params(params)?;
    check_anchor("left", left, params)?;
    check_anchor("right", right, params)?;
    let (u1, u2) = floor_edges(left, right, params)?;
    if u1 <= u2 {
        return Ok(Region::ConstantDensity);
    }
    let star = star_density(left, right, params)?;
    Ok(match (star > left.rho, star > right.rho) {
        (true, true) => Region::TwoShock,
        (true, false) => Region::ShockRarefaction,
        (false, true) => Region::RarefactionShock,
        (false, false) => Region::TwoRarefaction,
    })
}

/// Intermediate state between the two waves. Errors with a contract
/// violation for constant-density data, where no crossing exists.
pub fn solve_intermediate(
    left: State,
    right: State,
    params: &FluxParams,
) -> Result<IntermediateState> {
    check_curve_params(params)?;
    check_anchor("left", left, params)?;
    check_anchor("right", right, params)?;
    let (u1, u2) = floor_edges(left, right, params)?;
    if u1 <= u2 {
        return Err(Error::Contract(
            "data lies in the constant-density region; solve_isentropic builds the fan".into(),
        ));
    }
    let rho_star = star_density(left, right, params)?;
    // Both curve values agree at the root to solver tolerance; their mean
    // halves the residual and preserves exact symmetry.
    let u_star = 0.5
        * (wave_curve_u_from_left(rho_star, left, params)?
            + wave_curve_u_from_right(rho_star, right, params)?);
    let star = State::new(rho_star, u_star);
    let sigma1 = (rho_star > left.rho).then(|| jump_speed(left, star, params));
    let sigma2 = (rho_star > right.rho).then(|| jump_speed(star, right, params));
    Ok(IntermediateState {
        rho_star,
        u_star,
        sigma1,
        sigma2,
    })
}

/// Solve the Riemann problem for the two-parameter system.
pub fn solve_isentropic(left: State, right: State, params: &FluxParams) -> Result<RiemannSolution> {
    check_curve_params(params)?;
    check_anchor("left", left, params)?;
    check_anchor("right", right, params)?;

    let floor = params.density_floor();
    let (u1, u2) = floor_edges(left, right, params)?;

    let (waves, middles) = if u1 <= u2 {
        let (l1_left, _) = eigenvalues(left, params)?;
        let (_, l2_right) = eigenvalues(right, params)?;
        (
            vec![
                Wave::Rarefaction {
                    family: Family::Backward,
                    xi_head: l1_left,
                    xi_tail: u1,
                    anchor: left,
                },
                Wave::ConstantDensityFan {
                    xi_left: u1,
                    xi_right: u2,
                    rho: floor,
                },
                Wave::Rarefaction {
                    family: Family::Forward,
                    xi_head: u2,
                    xi_tail: l2_right,
                    anchor: right,
                },
            ],
            vec![State::new(floor, u1), State::new(floor, u2)],
        )
    } else {
        let im = solve_intermediate(left, right, params)?;
        let star = State::new(im.rho_star, im.u_star);
        let wave1 = match im.sigma1 {
            Some(speed) => Wave::Shock {
                family: Family::Backward,
                speed,
                left,
                right: star,
            },
            None => {
                let (head, _) = eigenvalues(left, params)?;
                let (tail, _) = eigenvalues(star, params)?;
                Wave::Rarefaction {
                    family: Family::Backward,
                    xi_head: head,
                    xi_tail: tail,
                    anchor: left,
                }
            }
        };
        let wave2 = match im.sigma2 {
            Some(speed) => Wave::Shock {
                family: Family::Forward,
                speed,
                left: star,
                right,
            },
            None => {
                let (_, head) = eigenvalues(star, params)?;
                let (_, tail) = eigenvalues(right, params)?;
                Wave::Rarefaction {
                    family: Family::Forward,
                    xi_head: head,
                    xi_tail: tail,
                    anchor: right,
                }
            }
        };
        (vec![wave1, wave2], vec![star])
    };

    Ok(RiemannSolution {
        system: SystemKind::Isentropic,
        params: *params,
        left,
        right,
        waves,
        middles,
    })
}

/// Result of the vacuum-threshold search with eps1 = eps2 = eps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum VacuumThreshold {
    /// Smallest eps > 0 at which the constant density fan disappears.
    Root(f64),
    /// The fan persists for every admissible eps in (0, min(rho)/2).
    AlwaysConstantDensity,
}

/// Locate the smallest eps > 0 where the full fan-appearance condition
/// h(eps) = (u+ - u-) - I(rho-, eps) - I(rho+, eps) changes sign, with
/// eps1 = eps2 = eps. Below the returned value the classifier yields the
/// constant-density configuration.
pub fn vacuum_threshold(left: State, right: State, gamma: f64) -> Result<VacuumThreshold> {
    if !(gamma.is_finite() && gamma > 1.0) {
        return Err(Error::Params(format!("gamma = {gamma} must exceed 1")));
    }
    for (name, s) in [("left", left), ("right", right)] {
        if !(s.rho.is_finite() && s.rho > 0.0 && s.u.is_finite()) {
            return Err(Error::Data(format!(
                "{name}: rho must be positive and finite"
            )));
        }
    }
    if left.u >= right.u {
        return Err(Error::Contract(format!(
            "vacuum threshold requires u- < u+, got ({}, {})",
            left.u, right.u
        )));
    }

    let h = |eps: f64| -> f64 {
        if eps == 0.0 {
            return right.u - left.u;
        }
        let p = FluxParams::new(eps, eps, gamma);
        let il = rarefaction_integral(2.0 * eps, left.rho, &p).unwrap_or(f64::NAN);
        let ir = rarefaction_integral(2.0 * eps, right.rho, &p).unwrap_or(f64::NAN);
        (right.u - left.u) - il - ir
    };

    let cap = 0.5 * left.rho.min(right.rho);
    // h(0) = u+ - u- > 0; scan for the first sign change. Sign changes
    // narrower than cap/512 past the first would be missed.
    const CELLS: usize = 512;
    let mut lo = 0.0;
    for i in 1..CELLS {
        let eps = cap * i as f64 / CELLS as f64;
        let h_i = h(eps);
        if !h_i.is_finite() {
            return Err(Error::Numerics(format!(
                "threshold scan failed at eps = {eps}"
            )));
        }
        if h_i <= 0.0 {
            let root = brent(h, lo, eps, 1e-15, REL_TOL, 200)?;
            return Ok(VacuumThreshold::Root(root));
        }
        lo = eps;
    }
    Ok(VacuumThreshold::AlwaysConstantDensity)
}
