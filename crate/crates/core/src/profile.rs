//! Sampling of self-similar Riemann solutions at a point xi = x/t.

use crate::error::{Error, Result};
use crate::isentropic::rarefaction_integral;
use crate::state::{sound_speed_sq, FluxParams, State};
use crate::wave::{Family, RiemannSolution, Wave};

/// Where a regular sample came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileFlag {
    /// A constant state outside all waves.
    Constant,
    /// The interior of a rarefaction, vacuum or constant density fan.
    Fan,
    /// Exactly on a shock or contact; the right-limit state is returned.
    ShockBoundary,
}

/// A sampled value: a regular state, or the singular marker at a delta
/// shock carrying the weight rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileSample {
    Regular {
        state: State,
        flag: ProfileFlag,
    },
    Singular {
        sigma: f64,
        weight_rate_mass: f64,
        weight_rate_momentum: f64,
    },
}

/// Velocity along a fan's wave curve at density rho.
fn fan_velocity(family: Family, anchor: State, params: &FluxParams, rho: f64) -> Result<f64> {
    let along = rarefaction_integral(rho, anchor.rho, params)?;
    Ok(match family {
        Family::Backward => anchor.u + along,
        Family::Forward => anchor.u - along,
    })
}

fn fan_xi(family: Family, anchor: State, params: &FluxParams, rho: f64) -> Result<f64> {
    let u = fan_velocity(family, anchor, params, rho)?;
    let c = sound_speed_sq(rho, params).sqrt();
    Ok(match family {
        Family::Backward => u - c,
        Family::Forward => u + c,
    })
}

/// Invert xi = lambda_family(rho, u(rho)) along the fan's wave curve by
/// monotone bisection on rho. xi decreases in rho on backward fans and
/// increases on forward fans.
fn invert_fan(family: Family, anchor: State, params: &FluxParams, xi: f64) -> Result<State> {
    let mut lo = params.density_floor();
    let mut hi = anchor.rho;
    let xi_tol = 1e-12 * (1.0 + xi.abs());
    let mut rho = 0.5 * (lo + hi);
    for _ in 0..200 {
        rho = 0.5 * (lo + hi);
        let gap = fan_xi(family, anchor, params, rho)? - xi;
        if gap.abs() <= xi_tol || (hi - lo) <= 1e-15 * (1.0 + hi.abs()) {
            break;
        }
        // backward fans: xi grows as rho shrinks
        let go_down = match family {
            Family::Backward => gap < 0.0,
            Family::Forward => gap > 0.0,
        };
        if go_down {
            hi = rho;
        } else {
            lo = rho;
        }
    }
    let u = fan_velocity(family, anchor, params, rho)?;
    Ok(State::new(rho, u))
}

/// Evaluate the self-similar solution at xi.
pub fn sample_profile(sol: &RiemannSolution, xi: f64) -> Result<ProfileSample> {
    if !xi.is_finite() {
        return Err(Error::Domain(format!("xi = {xi} must be finite")));
    }
    for (i, wave) in sol.waves.iter().enumerate() {
        let (lo, hi) = wave.span();
        if xi < lo {
            return Ok(ProfileSample::Regular {
                state: sol.state_left_of(i),
                flag: ProfileFlag::Constant,
            });
        }
        if xi > hi {
            continue;
        }
        return Ok(match *wave {
            Wave::DeltaShock {
                sigma,
                weight_rate_mass,
                weight_rate_momentum,
            } => ProfileSample::Singular {
                sigma,
                weight_rate_mass,
                weight_rate_momentum,
            },
            Wave::Shock { .. } | Wave::Contact { .. } => ProfileSample::Regular {
                state: sol.state_right_of(i),
                flag: ProfileFlag::ShockBoundary,
            },
            Wave::VacuumFan { .. } => ProfileSample::Regular {
                state: State::new(0.0, xi),
                flag: ProfileFlag::Fan,
            },
            Wave::ConstantDensityFan { rho, .. } => ProfileSample::Regular {
                state: State::new(rho, xi),
                flag: ProfileFlag::Fan,
            },
            Wave::Rarefaction { family, anchor, .. } => {
                // fans are continuous at their edges, so the edge values are
                // the adjacent constants and need no inversion
                if xi == lo {
                    ProfileSample::Regular {
                        state: sol.state_left_of(i),
                        flag: ProfileFlag::Constant,
                    }
                } else if xi == hi {
                    ProfileSample::Regular {
                        state: sol.state_right_of(i),
                        flag: ProfileFlag::Constant,
                    }
                } else {
                    let state = invert_fan(family, anchor, &sol.params, xi)?;
                    ProfileSample::Regular {
                        state,
                        flag: ProfileFlag::Fan,
                    }
                }
            }
        });
    }
    Ok(ProfileSample::Regular {
        state: sol.right,
        flag: ProfileFlag::Constant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isentropic::solve_isentropic;
    use crate::transport::solve_zero_pressure;

    #[test]
    fn delta_location_is_singular() {
        let sol = solve_zero_pressure(State::new(1.0, 2.0), State::new(4.0, 0.0)).unwrap();
        match sample_profile(&sol, 2.0 / 3.0).unwrap() {
            ProfileSample::Singular { sigma, .. } => assert!((sigma - 2.0 / 3.0).abs() < 1e-15),
            other => panic!("expected singular marker, got {other:?}"),
        }
        // off the front the constants are returned unchanged
        match sample_profile(&sol, 10.0).unwrap() {
            ProfileSample::Regular { state, flag } => {
                assert_eq!(state, sol.right);
                assert_eq!(flag, ProfileFlag::Constant);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn backward_fan_closed_form_inversion() {
        // gamma = 2, eps1 = 0 left fan through (1, 2): xi = 4 - 3 sqrt(rho)
        let p = FluxParams::new(0.0, 1.0, 2.0);
        let sol = solve_isentropic(State::new(1.0, 2.0), State::new(1.0, 2.5), &p).unwrap();
        match sample_profile(&sol, 1.3).unwrap() {
            ProfileSample::Regular { state, flag } => {
                assert_eq!(flag, ProfileFlag::Fan);
                assert!((state.rho - 0.81).abs() < 1e-10, "{}", state.rho);
                assert!((state.u - 2.2).abs() < 1e-10, "{}", state.u);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn constant_density_fan_carries_the_floor_exactly() {
        let sol = crate::perturbed::solve_perturbed_transport(
            State::new(1.0, 0.0),
            State::new(4.0, 1.0),
            0.01,
        )
        .unwrap();
        match sample_profile(&sol, 0.4).unwrap() {
            ProfileSample::Regular { state, flag } => {
                assert_eq!(flag, ProfileFlag::Fan);
                assert_eq!(state.rho, 0.02);
                assert_eq!(state.u, 0.4);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn vacuum_fan_interior_and_shock_boundary() {
        let sol = solve_zero_pressure(State::new(1.0, 0.0), State::new(1.0, 2.0)).unwrap();
        match sample_profile(&sol, 1.0).unwrap() {
            ProfileSample::Regular { state, flag } => {
                assert_eq!(flag, ProfileFlag::Fan);
                assert_eq!(state, State::new(0.0, 1.0));
            }
            other => panic!("{other:?}"),
        }
        // exactly on the leading contact: right-limit state, boundary flag
        match sample_profile(&sol, 0.0).unwrap() {
            ProfileSample::Regular { state, flag } => {
                assert_eq!(flag, ProfileFlag::ShockBoundary);
                assert_eq!(state, State::new(0.0, 0.0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn fan_samples_reproduce_their_xi() {
        let p = FluxParams::new(0.02, 0.8, 2.0);
        let sol = solve_isentropic(State::new(1.4, -0.3), State::new(0.9, 0.4), &p).unwrap();
        for wave in &sol.waves {
            if let Wave::Rarefaction {
                family,
                xi_head,
                xi_tail,
                ..
            } = *wave
            {
                if xi_tail - xi_head < 1e-6 {
                    continue;
                }
                for frac in [0.25, 0.5, 0.75] {
                    let xi = xi_head + frac * (xi_tail - xi_head);
                    match sample_profile(&sol, xi).unwrap() {
                        ProfileSample::Regular { state, .. } => {
                            let c = sound_speed_sq(state.rho, &p).sqrt();
                            let lambda = match family {
                                Family::Backward => state.u - c,
                                Family::Forward => state.u + c,
                            };
                            assert!((lambda - xi).abs() < 1e-10, "{lambda} vs {xi}");
                        }
                        other => panic!("{other:?}"),
                    }
                }
            }
        }
    }

    #[test]
    fn non_finite_xi_is_rejected() {
        let sol = solve_zero_pressure(State::new(1.0, 2.0), State::new(4.0, 0.0)).unwrap();
        assert!(matches!(
            sample_profile(&sol, f64::NAN),
            Err(Error::Domain(_))
        ));
    }
}
