//! Vanishing-perturbation experiment harness: sweeps of (eps1, eps2) -> 0
//! for colliding and spreading data, and the distributional verification of
//! the emergent delta-shock weights.

use crate::error::{Error, Result};
use crate::isentropic::{
    classify_region, rarefaction_integral, solve_intermediate, solve_isentropic, Region,
};
use crate::pairing::{line_phi, wedge_phi};
use crate::profile::{sample_profile, ProfileSample};
use crate::state::{FluxParams, State};
use crate::testfn::TestFunction;
use crate::transport::{self, jump_mass_rate, jump_momentum_rate};

/// How a scalar schedule value s maps to the pair (eps1, eps2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepPath {
    /// eps1 = eps2 = s
    Equal,
    /// eps1 = s^2, eps2 = s
    Eps1Squared,
    /// eps1 = s, eps2 = s^2
    Eps2Squared,
}

impl SweepPath {
    pub fn pair(&self, s: f64) -> (f64, f64) {
        match self {
            SweepPath::Equal => (s, s),
            SweepPath::Eps1Squared => (s * s, s),
            SweepPath::Eps2Squared => (s, s * s),
        }
    }
}

/// Expand base schedule values into (eps1, eps2) pairs along a path.
pub fn build_schedule(base: &[f64], path: SweepPath) -> Vec<(f64, f64)> {
    base.iter().map(|&s| path.pair(s)).collect()
}

fn check_schedule(schedule: &[(f64, f64)]) -> Result<()> {
    for (i, &(e1, e2)) in schedule.iter().enumerate() {
        if !(e1.is_finite() && e2.is_finite() && e1 > 0.0 && e2 > 0.0) {
            return Err(Error::Data(format!(
                "schedule entry {i} must have positive finite components, got ({e1}, {e2})"
            )));
        }
    }
    for w in schedule.windows(2) {
        if !(w[1].0 <= w[0].0 && w[1].1 <= w[0].1 && (w[1].0 < w[0].0 || w[1].1 < w[0].1)) {
            return Err(Error::Data(format!(
                "schedule must decrease, got ({}, {}) then ({}, {})",
                w[0].0, w[0].1, w[1].0, w[1].1
            )));
        }
    }
    Ok(())
}

// Error columns that reach this floor are allowed to stay there instead of
// strictly decreasing (symmetric data pins some columns at exact zero).
const NOISE_FLOOR: f64 = 1e-13;

fn column_shrinks(prev: f64, next: f64, scale: f64) -> bool {
    next < prev || (next == prev && next <= NOISE_FLOOR * scale.max(1.0))
}

/// One row of a two-shock sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub eps1: f64,
    pub eps2: f64,
    pub rho_star: f64,
    pub u_star: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    /// eps2 * rho_star^gamma, evaluated in log space.
    pub p_scaled: f64,
    /// rho_star * (sigma2 - sigma1)
    pub mass_gap: f64,
}

/// Closed-form limits the two-shock columns converge to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoShockTargets {
    pub sigma: f64,
    pub p_scaled: f64,
    pub mass_gap: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoShockSweep {
    pub records: Vec<SweepRecord>,
    pub targets: TwoShockTargets,
}

impl TwoShockSweep {
    /// Per record: |sigma1 - sigma|, |sigma2 - sigma|, |u* - sigma|,
    /// |p_scaled - target|, |mass_gap - target|.
    pub fn error_columns(&self) -> Vec<[f64; 5]> {
        self.records
            .iter()
            .map(|r| {
                [
                    (r.sigma1 - self.targets.sigma).abs(),
                    (r.sigma2 - self.targets.sigma).abs(),
                    (r.u_star - self.targets.sigma).abs(),
                    (r.p_scaled - self.targets.p_scaled).abs(),
                    (r.mass_gap - self.targets.mass_gap).abs(),
                ]
            })
            .collect()
    }

    /// Violations of the expected convergence pattern: rho_star strictly
    /// increasing and every error column shrinking along the schedule.
    pub fn convergence_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, w) in self.records.windows(2).enumerate() {
            if w[1].rho_star <= w[0].rho_star {
                out.push(format!(
                    "rho_star not strictly increasing at step {}",
                    i + 1
                ));
            }
        }
        let names = [
            "|sigma1 - sigma|",
            "|sigma2 - sigma|",
            "|u* - sigma|",
            "|p_scaled - limit|",
            "|mass_gap - limit|",
        ];
        let scales = [
            self.targets.sigma.abs(),
            self.targets.sigma.abs(),
            self.targets.sigma.abs(),
            self.targets.p_scaled.abs(),
            self.targets.mass_gap.abs(),
        ];
        let cols = self.error_columns();
        for (i, w) in cols.windows(2).enumerate() {
            for c in 0..5 {
                if !column_shrinks(w[0][c], w[1][c], scales[c]) {
                    out.push(format!("{} not decreasing at step {}", names[c], i + 1));
                }
            }
        }
        out
    }
}

/// Sweep a colliding datum along a decreasing (eps1, eps2) schedule. Every
/// entry must classify as a two-shock configuration.
pub fn sweep_two_shock(
    left: State,
    right: State,
    gamma: f64,
    schedule: &[(f64, f64)],
) -> Result<TwoShockSweep> {
    if left.u <= right.u {
        return Err(Error::Contract(format!(
            "two-shock sweep requires u- > u+, got ({}, {})",
            left.u, right.u
        )));
    }
    check_schedule(schedule)?;

    let zp = transport::delta_shock_data(left, right)?;
    let spread = (left.u - right.u) / (left.rho.sqrt() + right.rho.sqrt());
    let targets = TwoShockTargets {
        sigma: zp.sigma,
        p_scaled: gamma * left.rho * right.rho * spread * spread,
        mass_gap: jump_mass_rate(zp.sigma, left, right, 0.0),
    };

    let mut records = Vec::with_capacity(schedule.len());
    for (i, &(eps1, eps2)) in schedule.iter().enumerate() {
        let params = FluxParams::new(eps1, eps2, gamma);
        let region = classify_region(left, right, &params)?;
        if region != Region::TwoShock {
            return Err(Error::Contract(format!(
                "schedule entry {i} (eps1 = {eps1}, eps2 = {eps2}) classifies as {region:?}, \
                 not a two-shock configuration"
            )));
        }
        let im = solve_intermediate(left, right, &params)?;
        let (sigma1, sigma2) = (im.sigma1.unwrap(), im.sigma2.unwrap());
        records.push(SweepRecord {
            eps1,
            eps2,
            rho_star: im.rho_star,
            u_star: im.u_star,
            sigma1,
            sigma2,
            p_scaled: (eps2.ln() + gamma * im.rho_star.ln()).exp(),
            mass_gap: im.rho_star * (sigma2 - sigma1),
        });
    }
    Ok(TwoShockSweep { records, targets })
}

/// Distributional comparison for one test function at one schedule entry.
#[derive(Debug, Clone, PartialEq)]
pub struct WeakLimitTestRow {
    pub test: String,
    pub discrepancy_mass: f64,
    pub discrepancy_momentum: f64,
    /// Geometric delta weight rates extracted from the pairings.
    pub w1_emergent: f64,
    pub w2_emergent: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeakLimitEntry {
    pub eps1: f64,
    pub eps2: f64,
    pub rows: Vec<WeakLimitTestRow>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeakLimitReport {
    pub sigma: f64,
    /// Closed-form geometric weight rates of the limiting delta shock.
    pub w1_rate: f64,
    pub w2_rate: f64,
    /// Limit pairings per test function: (mass, momentum).
    pub targets: Vec<(f64, f64)>,
    pub entries: Vec<WeakLimitEntry>,
}

impl WeakLimitReport {
    /// Both discrepancy columns of every test function must shrink along
    /// the schedule.
    pub fn discrepancies_decreasing(&self) -> bool {
        self.entries.windows(2).all(|w| {
            w[0].rows.iter().zip(&w[1].rows).all(|(a, b)| {
                column_shrinks(a.discrepancy_mass, b.discrepancy_mass, 1.0)
                    && column_shrinks(a.discrepancy_momentum, b.discrepancy_momentum, 1.0)
            })
        })
    }
}

/// Pair the two-shock solutions along the schedule against each test
/// function and compare with the limiting step-plus-delta pairings.
pub fn weak_limit_weights(
    left: State,
    right: State,
    gamma: f64,
    schedule: &[(f64, f64)],
    tests: &[TestFunction],
) -> Result<WeakLimitReport> {
    if left.u <= right.u {
        return Err(Error::Contract(format!(
            "weak-limit check requires u- > u+, got ({}, {})",
            left.u, right.u
        )));
    }
    check_schedule(schedule)?;
    for tf in tests {
        if tf.t_factor.lo < 0.0 {
            return Err(Error::Contract(format!(
                "test function {} must be supported in t > 0",
                tf.name
            )));
        }
    }

    let zp = transport::delta_shock_data(left, right)?;
    let sigma = zp.sigma;
    let arclength = (1.0 + sigma * sigma).sqrt();
    let w1_total = jump_mass_rate(sigma, left, right, 0.0);
    let w2_total = jump_momentum_rate(sigma, left, right, 0.0);

    // Per test function: the Heaviside parts of both limit pairings and the
    // unit-rate line pairing along x = sigma*t.
    let mut heaviside = Vec::with_capacity(tests.len());
    let mut lines = Vec::with_capacity(tests.len());
    let mut targets = Vec::with_capacity(tests.len());
    for tf in tests {
        let left_wedge = wedge_phi(tf, f64::NEG_INFINITY, sigma)?;
        let right_wedge = wedge_phi(tf, sigma, f64::INFINITY)?;
        let h_mass = left.rho * left_wedge + right.rho * right_wedge;
        let h_mom = left.rho * left.u * left_wedge + right.rho * right.u * right_wedge;
        let line = line_phi(tf, sigma)?;
        heaviside.push((h_mass, h_mom));
        lines.push(line);
        targets.push((h_mass + w1_total * line, h_mom + w2_total * line));
    }

    let mut entries = Vec::with_capacity(schedule.len());
    for (i, &(eps1, eps2)) in schedule.iter().enumerate() {
        let params = FluxParams::new(eps1, eps2, gamma);
        if classify_region(left, right, &params)? != Region::TwoShock {
            return Err(Error::Contract(format!(
                "schedule entry {i} (eps1 = {eps1}, eps2 = {eps2}) is not a two-shock configuration"
            )));
        }
        let im = solve_intermediate(left, right, &params)?;
        let (s1, s2) = (im.sigma1.unwrap(), im.sigma2.unwrap());

        let mut rows = Vec::with_capacity(tests.len());
        for (j, tf) in tests.iter().enumerate() {
            let w_left = wedge_phi(tf, f64::NEG_INFINITY, s1)?;
            let w_mid = wedge_phi(tf, s1, s2)?;
            let w_right = wedge_phi(tf, s2, f64::INFINITY)?;
            let i_mass = left.rho * w_left + im.rho_star * w_mid + right.rho * w_right;
            let i_mom = left.rho * left.u * w_left
                + im.rho_star * im.u_star * w_mid
                + right.rho * right.u * w_right;
            let (h_mass, h_mom) = heaviside[j];
            let line = lines[j];
            let (w1_emergent, w2_emergent) = if line.abs() > 1e-14 {
                (
                    (i_mass - h_mass) / line / arclength,
                    (i_mom - h_mom) / line / arclength,
                )
            } else {
                (f64::NAN, f64::NAN)
            };
            rows.push(WeakLimitTestRow {
                test: tf.name.clone(),
                discrepancy_mass: (i_mass - targets[j].0).abs(),
                discrepancy_momentum: (i_mom - targets[j].1).abs(),
                w1_emergent,
                w2_emergent,
            });
        }
        entries.push(WeakLimitEntry { eps1, eps2, rows });
    }

    Ok(WeakLimitReport {
        sigma,
        w1_rate: w1_total / arclength,
        w2_rate: w2_total / arclength,
        targets,
        entries,
    })
}

/// One row of a two-rarefaction (cavitation) sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RarefactionRecord {
    pub eps1: f64,
    pub eps2: f64,
    /// Fan edge velocities at the density floor.
    pub u1: f64,
    pub u2: f64,
    /// Intermediate density, exactly 2*eps1.
    pub rho_mid: f64,
    /// Profile sample at the requested xi, if any: (rho, u).
    pub sample: Option<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoRarefactionSweep {
    pub left: State,
    pub right: State,
    pub sample_xi: Option<f64>,
    pub records: Vec<RarefactionRecord>,
}

impl TwoRarefactionSweep {
    /// |u1 - u-| and |u+ - u2| must shrink along the schedule.
    pub fn edges_converging(&self) -> bool {
        let gaps: Vec<(f64, f64)> = self
            .records
            .iter()
            .map(|r| ((r.u1 - self.left.u).abs(), (self.right.u - r.u2).abs()))
            .collect();
        gaps.windows(2)
            .all(|w| column_shrinks(w[0].0, w[1].0, 1.0) && column_shrinks(w[0].1, w[1].1, 1.0))
    }
}

/// Sweep a spreading datum along a decreasing schedule. Every entry must lie
/// below the vacuum threshold, i.e. classify as constant density.
pub fn sweep_two_rarefaction(
    left: State,
    right: State,
    gamma: f64,
    schedule: &[(f64, f64)],
    sample_xi: Option<f64>,
) -> Result<TwoRarefactionSweep> {
    if left.u >= right.u {
        return Err(Error::Contract(format!(
            "two-rarefaction sweep requires u- < u+, got ({}, {})",
            left.u, right.u
        )));
    }
    check_schedule(schedule)?;

    let mut records = Vec::with_capacity(schedule.len());
    for (i, &(eps1, eps2)) in schedule.iter().enumerate() {
        let params = FluxParams::new(eps1, eps2, gamma);
        let floor = params.density_floor();
        let u1 = left.u + rarefaction_integral(floor, left.rho, &params)?;
        let u2 = right.u - rarefaction_integral(floor, right.rho, &params)?;
        // entries must lie strictly below the vacuum threshold, where the
        // fan has positive width
        if u1 >= u2 {
            return Err(Error::Contract(format!(
                "schedule entry {i} (eps1 = {eps1}, eps2 = {eps2}) is at or above the \
                 vacuum threshold"
            )));
        }
        let sample = match sample_xi {
            Some(xi) => {
                let sol = solve_isentropic(left, right, &params)?;
                match sample_profile(&sol, xi)? {
                    ProfileSample::Regular { state, .. } => Some((state.rho, state.u)),
                    ProfileSample::Singular { .. } => None,
                }
            }
            None => None,
        };
        records.push(RarefactionRecord {
            eps1,
            eps2,
            u1,
            u2,
            rho_mid: floor,
            sample,
        });
    }
    Ok(TwoRarefactionSweep {
        left,
        right,
        sample_xi,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfn::{default_suite, BumpFactor};

    fn t1() -> (State, State) {
        (State::new(1.0, 2.0), State::new(4.0, 0.0))
    }

    fn pow_schedule(path: SweepPath, ks: std::ops::RangeInclusive<i32>) -> Vec<(f64, f64)> {
        let base: Vec<f64> = ks.map(|k| 10f64.powi(-k)).collect();
        build_schedule(&base, path)
    }

    #[test]
    fn two_shock_sweep_converges_on_t1() {
        let (l, r) = t1();
        let sweep = sweep_two_shock(l, r, 2.0, &pow_schedule(SweepPath::Equal, 2..=5)).unwrap();
        assert!(sweep.convergence_violations().is_empty());
        assert!((sweep.targets.sigma - 2.0 / 3.0).abs() < 1e-15);
        assert!((sweep.targets.p_scaled - 32.0 / 9.0).abs() < 1e-14);
        assert!((sweep.targets.mass_gap - 4.0).abs() < 1e-14);
    }

    #[test]
    fn symmetric_data_pins_u_star_at_zero() {
        let l = State::new(1.0, 1.0);
        let r = State::new(1.0, -1.0);
        let sweep = sweep_two_shock(l, r, 2.0, &pow_schedule(SweepPath::Equal, 2..=4)).unwrap();
        assert_eq!(sweep.targets.sigma, 0.0);
        for rec in &sweep.records {
            assert_eq!(rec.u_star, 0.0);
        }
        assert!(sweep.convergence_violations().is_empty());
    }

    #[test]
    fn single_entry_sweep_has_no_convergence_claims() {
        let (l, r) = t1();
        let sweep = sweep_two_shock(l, r, 2.0, &[(0.05, 0.05)]).unwrap();
        assert_eq!(sweep.records.len(), 1);
        assert!(sweep.convergence_violations().is_empty());
    }

    #[test]
    fn sweep_rejects_non_two_shock_entries() {
        // a weak collision against strong pressure lands in the mixed region
        let l = State::new(1.0, 0.1);
        let r = State::new(4.0, 0.0);
        assert_eq!(
            classify_region(l, r, &FluxParams::new(0.01, 0.5, 2.0)).unwrap(),
            Region::ShockRarefaction
        );
        let err = sweep_two_shock(l, r, 2.0, &[(0.01, 0.5)]).unwrap_err();
        match err {
            Error::Contract(msg) => assert!(msg.contains("entry 0"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rarefaction_sweep_converges() {
        let l = State::new(1.0, 0.0);
        let r = State::new(1.0, 0.6);
        let schedule = pow_schedule(SweepPath::Equal, 3..=6);
        let sweep = sweep_two_rarefaction(l, r, 2.0, &schedule, Some(0.3)).unwrap();
        assert!(sweep.edges_converging());
        let last = sweep.records.last().unwrap();
        assert_eq!(last.rho_mid, 2e-6);
        let (rho, u) = last.sample.unwrap();
        assert_eq!(rho, 2e-6);
        assert!((u - 0.3).abs() < 1e-12);
    }

    #[test]
    fn rarefaction_sweep_rejects_entries_above_threshold() {
        let l = State::new(1.0, 0.0);
        let r = State::new(1.0, 0.6);
        // the threshold for this datum is ~0.0236
        let err = sweep_two_rarefaction(l, r, 2.0, &[(0.1, 0.1)], None).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn weak_limit_report_structure() {
        let (l, r) = t1();
        let suite = default_suite();
        let report = weak_limit_weights(
            l,
            r,
            2.0,
            &pow_schedule(SweepPath::Equal, 2..=3),
            &suite[..2],
        )
        .unwrap();
        assert!((report.w1_rate - 12.0 / 13f64.sqrt()).abs() < 1e-13);
        assert!((report.w2_rate - 8.0 / 13f64.sqrt()).abs() < 1e-13);
        assert!(report.discrepancies_decreasing());
    }

    #[test]
    fn weak_limit_away_from_waves_sees_only_constants() {
        // support strictly right of every wave: the pairing equals the
        // right-state integral for every entry, so discrepancies stay at
        // the quadrature floor
        let (l, r) = t1();
        let far = TestFunction::new(
            "far_field",
            BumpFactor::bump(0.0, 1.0),
            BumpFactor::bump(5.0, 9.0),
        );
        let report = weak_limit_weights(
            l,
            r,
            2.0,
            &pow_schedule(SweepPath::Equal, 2..=3),
            std::slice::from_ref(&far),
        )
        .unwrap();
        for entry in &report.entries {
            assert!(entry.rows[0].discrepancy_mass < 1e-10);
            assert!(entry.rows[0].discrepancy_momentum < 1e-10);
        }
    }

    #[test]
    fn weak_limit_rejects_negative_time_support() {
        let (l, r) = t1();
        let bad = TestFunction::new(
            "bad",
            BumpFactor::bump(-1.0, 1.0),
            BumpFactor::bump(-2.0, 3.0),
        );
        let err = weak_limit_weights(l, r, 2.0, &[(0.01, 0.01)], &[bad]).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn limit_weights_match_transport_solver() {
        // w1 closed form equals the zero-pressure geometric weight rate
        let (l, r) = t1();
        let report = weak_limit_weights(l, r, 2.0, &[(0.01, 0.01)], &default_suite()[..1]).unwrap();
        let zp = transport::delta_shock_data(l, r).unwrap();
        assert!((report.w1_rate - zp.w_rate).abs() < 1e-10);
        assert!((report.w2_rate - zp.sigma * zp.w_rate).abs() < 1e-10);
    }
}
