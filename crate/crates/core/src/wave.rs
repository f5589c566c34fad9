//! Elementary waves and the self-similar Riemann solution they compose.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::state::{eigenvalues, shock_rh_residual, FluxParams, State, SystemKind, REL_TOL};

/// Characteristic family of a genuinely nonlinear wave: the 1-family
/// (backward) or the 2-family (forward).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Backward,
    Forward,
}

/// One elementary wave with its speeds and side states.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Wave {
    Shock {
        family: Family,
        speed: f64,
        left: State,
        right: State,
    },
    Rarefaction {
        family: Family,
        xi_head: f64,
        xi_tail: f64,
        /// State the fan's wave curve is anchored at: the solution's left
        /// state for a backward fan, the right state for a forward fan.
        anchor: State,
    },
    Contact {
        speed: f64,
    },
    DeltaShock {
        sigma: f64,
        /// Mass weight rate w(t)*sqrt(1+sigma^2)/t, i.e. the arclength
        /// factor is premultiplied out. The geometric weight rate w(t)/t
        /// is recovered by dividing by sqrt(1+sigma^2).
        weight_rate_mass: f64,
        weight_rate_momentum: f64,
    },
    VacuumFan {
        xi_left: f64,
        xi_right: f64,
    },
    ConstantDensityFan {
        xi_left: f64,
        xi_right: f64,
        /// Always exactly 2*eps1 of the governing parameters.
        rho: f64,
    },
}

impl Wave {
    /// The xi interval occupied by the wave (a point for discontinuities).
    pub fn span(&self) -> (f64, f64) {
        match *self {
            Wave::Shock { speed, .. } | Wave::Contact { speed } => (speed, speed),
            Wave::DeltaShock { sigma, .. } => (sigma, sigma),
            Wave::Rarefaction {
                xi_head, xi_tail, ..
            } => (xi_head, xi_tail),
            Wave::VacuumFan { xi_left, xi_right } => (xi_left, xi_right),
            Wave::ConstantDensityFan {
                xi_left, xi_right, ..
            } => (xi_left, xi_right),
        }
    }
}

/// A complete self-similar Riemann solution: an ordered wave sequence and
/// the constant states strictly between consecutive waves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiemannSolution {
    pub system: SystemKind,
    pub params: FluxParams,
    pub left: State,
    pub right: State,
    pub waves: Vec<Wave>,
    pub middles: Vec<State>,
}

impl RiemannSolution {
    /// Constant state immediately left of wave `i`.
    pub fn state_left_of(&self, i: usize) -> State {
        if i == 0 {
            self.left
        } else {
            self.middles[i - 1]
        }
    }

    /// Constant state immediately right of wave `i`.
    pub fn state_right_of(&self, i: usize) -> State {
        if i + 1 == self.waves.len() {
            self.right
        } else {
            self.middles[i]
        }
    }

    /// Check every structural invariant of the solution: wave ordering,
    /// middle-state count, Rankine-Hugoniot residuals and strict Lax
    /// inequalities on every shock, the overcompressive entropy condition
    /// on every delta shock, and the exact floor density of constant
    /// density fans.
    pub fn validate_invariants(&self) -> Result<()> {
        let expected = self.waves.len().saturating_sub(1);
        if self.middles.len() != expected {
            return Err(Error::Contract(format!(
                "expected {expected} middle states for {} waves, got {}",
                self.waves.len(),
                self.middles.len()
            )));
        }

        let scale = 1.0
            + self.left.u.abs().max(self.right.u.abs())
            + self.left.rho.abs().max(self.right.rho.abs());
        let mut last = f64::NEG_INFINITY;
        for (i, wave) in self.waves.iter().enumerate() {
            let (lo, hi) = wave.span();
            if !(lo.is_finite() && hi.is_finite()) {
                return Err(Error::Contract(format!("wave {i} has non-finite span")));
            }
            if lo > hi {
                return Err(Error::Contract(format!(
                    "wave {i} span is reversed: [{lo}, {hi}]"
                )));
            }
            if lo < last - REL_TOL * scale {
                return Err(Error::Contract(format!(
                    "wave {i} starts at {lo}, before previous edge {last}"
                )));
            }
            last = hi.max(last);

            match *wave {
                Wave::Shock {
                    family,
                    speed,
                    left,
                    right,
                } => {
                    let (r1, r2) = shock_rh_residual(speed, left, right, &self.params);
                    let rh_scale = 1.0 + (left.rho * left.u).abs().max((right.rho * right.u).abs());
                    if r1.abs() > 1e-9 * rh_scale || r2.abs() > 1e-9 * rh_scale {
                        return Err(Error::Contract(format!(
                            "shock {i} violates the jump relation: residuals ({r1:e}, {r2:e})"
                        )));
                    }
                    let (l1l, l2l) = eigenvalues(left, &self.params)?;
                    let (l1r, l2r) = eigenvalues(right, &self.params)?;
                    let lax_ok = match family {
                        Family::Backward => speed < l1l && l1r < speed && speed < l2r,
                        Family::Forward => l1l < speed && speed < l2l && l2r < speed,
                    };
                    if !lax_ok {
                        return Err(Error::Contract(format!(
                            "shock {i} violates the Lax inequalities: speed {speed}, \
                             left ({l1l}, {l2l}), right ({l1r}, {l2r})"
                        )));
                    }
                    // compression: backward shocks jump up in density, forward
                    // shocks down, velocity drops across both
                    let jump_ok = right.u < left.u
                        && match family {
                            Family::Backward => left.rho < right.rho,
                            Family::Forward => left.rho > right.rho,
                        };
                    if !jump_ok {
                        return Err(Error::Contract(format!(
                            "shock {i} has the wrong jump direction: ({}, {}) -> ({}, {})",
                            left.rho, left.u, right.rho, right.u
                        )));
                    }
                }
                Wave::DeltaShock {
                    sigma,
                    weight_rate_mass,
                    ..
                } => {
                    let ul = self.state_left_of(i).u;
                    let ur = self.state_right_of(i).u;
                    if !(ur < sigma && sigma < ul) {
                        return Err(Error::Contract(format!(
                            "delta shock {i} is not overcompressive: u+ = {ur}, sigma = {sigma}, u- = {ul}"
                        )));
                    }
                    if weight_rate_mass <= 0.0 {
                        return Err(Error::Contract(format!(
                            "delta shock {i} has nonpositive mass weight rate {weight_rate_mass}"
                        )));
                    }
                }
                Wave::ConstantDensityFan { rho, .. } if rho != self.params.density_floor() => {
                    return Err(Error::Contract(format!(
                        "constant density fan {i} carries rho = {rho}, expected {}",
                        self.params.density_floor()
                    )));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans_and_accessors() {
        let sol = RiemannSolution {
            system: SystemKind::ZeroPressure,
            params: FluxParams::new(0.0, 0.0, 2.0),
            left: State::new(1.0, 0.0),
            right: State::new(1.0, 2.0),
            waves: vec![
                Wave::Contact { speed: 0.0 },
                Wave::VacuumFan {
                    xi_left: 0.0,
                    xi_right: 2.0,
                },
                Wave::Contact { speed: 2.0 },
            ],
            middles: vec![State::new(0.0, 0.0), State::new(0.0, 2.0)],
        };
        assert_eq!(sol.waves[1].span(), (0.0, 2.0));
        assert_eq!(sol.state_left_of(0), sol.left);
        assert_eq!(sol.state_right_of(2), sol.right);
        sol.validate_invariants().unwrap();
    }

    #[test]
    fn middle_count_mismatch_is_caught() {
        let sol = RiemannSolution {
            system: SystemKind::ZeroPressure,
            params: FluxParams::new(0.0, 0.0, 2.0),
            left: State::new(1.0, 0.0),
            right: State::new(1.0, 2.0),
            waves: vec![Wave::Contact { speed: 0.0 }, Wave::Contact { speed: 2.0 }],
            middles: vec![],
        };
        assert!(matches!(sol.validate_invariants(), Err(Error::Contract(_))));
    }

    #[test]
    fn out_of_order_waves_are_caught() {
        let sol = RiemannSolution {
            system: SystemKind::ZeroPressure,
            params: FluxParams::new(0.0, 0.0, 2.0),
            left: State::new(1.0, 2.0),
            right: State::new(1.0, 0.0),
            waves: vec![Wave::Contact { speed: 2.0 }, Wave::Contact { speed: 0.0 }],
            middles: vec![State::new(1.0, 1.0)],
        };
        assert!(matches!(sol.validate_invariants(), Err(Error::Contract(_))));
    }

    #[test]
    fn family_flipped_shock_fails_the_lax_check() {
        // speeds satisfy the jump relation for both families, so only the
        // Lax inequalities can reject the mislabeled wave
        let params = FluxParams::new(0.0, 1.0, 2.0);
        let left = State::new(1.0, 1.0);
        let right = State::new(2.17008648662603, 0.0);
        let speed = (right.rho * right.u - left.rho * left.u) / (right.rho - left.rho);
        let good = RiemannSolution {
            system: SystemKind::Isentropic,
            params,
            left,
            right,
            waves: vec![Wave::Shock {
                family: Family::Backward,
                speed,
                left,
                right,
            }],
            middles: vec![],
        };
        good.validate_invariants().unwrap();
        let mut bad = good.clone();
        bad.waves[0] = Wave::Shock {
            family: Family::Forward,
            speed,
            left,
            right,
        };
        match bad.validate_invariants() {
            Err(Error::Contract(msg)) => assert!(msg.contains("Lax"), "{msg}"),
            other => panic!("expected a Lax violation, got {other:?}"),
        }
    }
}
