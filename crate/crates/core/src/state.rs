//! Primitive state, flux parameters and the pointwise quantities derived
//! from them: pressure, characteristic speeds, flux components and the
//! Rankine-Hugoniot residual of a bounded discontinuity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance used for equality checks throughout the crate.
pub const REL_TOL: f64 = 1e-12;

/// A (density, velocity) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub rho: f64,
    pub u: f64,
}

impl State {
    pub fn new(rho: f64, u: f64) -> Self {
        State { rho, u }
    }
}

/// Flux-perturbation strengths and the adiabatic exponent.
///
/// `eps1` perturbs the transport terms, `eps2` scales the pressure term
/// p(rho) = rho^gamma / gamma. The density floor of the perturbed systems
/// is `2 * eps1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluxParams {
    pub eps1: f64,
    pub eps2: f64,
    pub gamma: f64,
}

impl FluxParams {
    pub fn new(eps1: f64, eps2: f64, gamma: f64) -> Self {
        FluxParams { eps1, eps2, gamma }
    }

    /// Densities of Riemann data must lie strictly above this value.
    pub fn density_floor(&self) -> f64 {
        2.0 * self.eps1
    }

    /// Basic parameter invariants, independent of the system solved.
    pub fn check(&self) -> Result<()> {
        if !(self.gamma.is_finite() && self.eps1.is_finite() && self.eps2.is_finite()) {
            return Err(Error::Params("parameters must be finite".into()));
        }
        if self.gamma <= 1.0 {
            return Err(Error::Params(format!(
                "gamma = {} must exceed 1",
                self.gamma
            )));
        }
        if self.eps1 < 0.0 {
            return Err(Error::Params(format!("eps1 = {} must be >= 0", self.eps1)));
        }
        if self.eps2 < 0.0 {
            return Err(Error::Params(format!("eps2 = {} must be >= 0", self.eps2)));
        }
        Ok(())
    }
}

/// Which member of the flux-approximation family is being solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SystemKind {
    /// The pressureless transport equations (eps1 = eps2 = 0).
    ZeroPressure,
    /// The single-parameter flux perturbation (eps1 > 0, eps2 = 0).
    PerturbedTransport,
    /// The two-parameter system with perturbed pressure (eps1 > 0, eps2 > 0).
    Isentropic,
}

/// p(rho) = rho^gamma / gamma.
pub fn pressure(rho: f64, params: &FluxParams) -> Result<f64> {
    params.check()?;
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(Error::Domain(format!(
            "rho = {rho} must be a nonnegative real"
        )));
    }
    Ok(rho.powf(params.gamma) / params.gamma)
}

/// Squared sound speed eps2 * rho^(gamma-2) * (rho - 2*eps1).
///
/// Callers guarantee rho >= 2*eps1; the degenerate cases are handled
/// explicitly so no 0 * inf is ever formed.
pub(crate) fn sound_speed_sq(rho: f64, params: &FluxParams) -> f64 {
    let floor = params.density_floor();
    if params.eps2 == 0.0 || rho == floor {
        return 0.0;
    }
    params.eps2 * rho.powf(params.gamma - 2.0) * (rho - floor)
}

/// Characteristic speeds (lambda1, lambda2) with lambda1 <= lambda2.
pub fn eigenvalues(s: State, params: &FluxParams) -> Result<(f64, f64)> {
    params.check()?;
    let floor = params.density_floor();
    if s.rho < floor {
        return Err(Error::Domain(format!(
            "rho = {} is below the density floor 2*eps1 = {floor}",
            s.rho
        )));
    }
    let c = sound_speed_sq(s.rho, params).sqrt();
    Ok((s.u - c, s.u + c))
}

/// Mass flux rho*u - 2*eps1*u.
pub fn flux_mass(s: State, params: &FluxParams) -> f64 {
    (s.rho - 2.0 * params.eps1) * s.u
}

/// Momentum flux rho*u^2 - eps1*u^2 + eps2*rho^gamma/gamma.
pub fn flux_momentum(s: State, params: &FluxParams) -> f64 {
    let pressure_term = if params.eps2 == 0.0 {
        0.0
    } else {
        params.eps2 * s.rho.powf(params.gamma) / params.gamma
    };
    (s.rho - params.eps1) * s.u * s.u + pressure_term
}

/// Residuals of the Rankine-Hugoniot relation for a bounded discontinuity
/// moving at `speed` between `l` and `r`, with jumps written right minus
/// left: (-s*jump(rho) + jump(f_mass), -s*jump(rho*u) + jump(f_mom)).
pub fn shock_rh_residual(speed: f64, l: State, r: State, params: &FluxParams) -> (f64, f64) {
    let r1 = -speed * (r.rho - l.rho) + (flux_mass(r, params) - flux_mass(l, params));
    let r2 = -speed * (r.rho * r.u - l.rho * l.u)
        + (flux_momentum(r, params) - flux_momentum(l, params));
    (r1, r2)
}

fn check_side(name: &str, s: State, params: &FluxParams, strict_floor: bool) -> Result<()> {
    if !(s.rho.is_finite() && s.u.is_finite()) {
        return Err(Error::Data(format!(
            "{name}: state must be finite, got ({}, {})",
            s.rho, s.u
        )));
    }
    if s.rho <= 0.0 {
        return Err(Error::Data(format!(
            "{name}: rho = {} must be positive",
            s.rho
        )));
    }
    if strict_floor && s.rho <= params.density_floor() {
        return Err(Error::Data(format!(
            "{name}: rho = {} must strictly exceed 2*eps1 = {}",
            s.rho,
            params.density_floor()
        )));
    }
    Ok(())
}

/// System-specific admissibility of Riemann data.
///
/// The perturbation strengths must match the system exactly, and the
/// density floor rho > 2*eps1 is enforced strictly on both sides where
/// it applies.
pub fn validate(left: State, right: State, params: &FluxParams, system: SystemKind) -> Result<()> {
    params.check()?;
    match system {
        SystemKind::ZeroPressure => {
            if params.eps1 != 0.0 || params.eps2 != 0.0 {
                return Err(Error::Params(format!(
                    "zero-pressure system requires eps1 = eps2 = 0, got ({}, {})",
                    params.eps1, params.eps2
                )));
            }
        }
        SystemKind::PerturbedTransport => {
            if params.eps1 <= 0.0 {
                return Err(Error::Params(format!(
                    "perturbed transport requires eps1 > 0, got {}",
                    params.eps1
                )));
            }
            if params.eps2 != 0.0 {
                return Err(Error::Params(format!(
                    "perturbed transport requires eps2 = 0, got {}",
                    params.eps2
                )));
            }
        }
        SystemKind::Isentropic => {
            if params.eps1 <= 0.0 {
                return Err(Error::Params(format!(
                    "isentropic system requires eps1 > 0, got {}",
                    params.eps1
                )));
            }
            if params.eps2 <= 0.0 {
                return Err(Error::Params(format!(
                    "isentropic system requires eps2 > 0, got {}",
                    params.eps2
                )));
            }
        }
    }
    let strict = !matches!(system, SystemKind::ZeroPressure);
    check_side("left", left, params, strict)?;
    check_side("right", right, params, strict)?;
    Ok(())
}
