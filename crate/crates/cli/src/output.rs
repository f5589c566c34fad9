//! Stable output formats: CSV with 9 significant digits, JSON with the
//! shortest round-trip representation.

use serde::{Deserialize, Serialize};

use fluxlab_core::wave::{Family, RiemannSolution, Wave};

/// CSV number format: 9 significant digits, deterministic.
pub fn num(x: f64) -> String {
    format!("{x:.8e}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::Backward => "backward",
        Family::Forward => "forward",
    }
}

/// Diagnostics block attached to a solve output.
#[derive(Debug, Serialize, Deserialize)]
pub struct Diagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub region: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intermediate: Option<IntermediateOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<DeltaOut>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct IntermediateOut {
    pub rho_star: f64,
    pub u_star: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma2: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct DeltaOut {
    pub sigma: f64,
    /// Geometric weight rate w(t)/t.
    pub w_rate: f64,
    pub weight_rate_mass: f64,
    pub weight_rate_momentum: f64,
}

/// Top-level JSON object of `solve`: the solution fields plus diagnostics.
#[derive(Debug, Serialize, Deserialize)]
pub struct SolveOutput {
    #[serde(flatten)]
    pub solution: RiemannSolution,
    pub diagnostics: Diagnostics,
}

pub fn solve_json(out: &SolveOutput) -> String {
    let mut s = serde_json::to_string_pretty(out).expect("solution serializes");
    s.push('\n');
    s
}

pub fn solve_csv(sol: &RiemannSolution) -> String {
    let mut out = String::from(
        "index,kind,family,xi_left,xi_right,sigma,weight_rate_mass,weight_rate_momentum,rho,u\n",
    );
    for (i, wave) in sol.waves.iter().enumerate() {
        let (lo, hi) = wave.span();
        let (kind, family, sigma, wrm, wrp, rho, u) = match *wave {
            Wave::Shock { family, .. } => ("shock", Some(family), None, None, None, None, None),
            Wave::Rarefaction { family, .. } => {
                ("rarefaction", Some(family), None, None, None, None, None)
            }
            Wave::Contact { .. } => ("contact", None, None, None, None, None, None),
            Wave::DeltaShock {
                sigma,
                weight_rate_mass,
                weight_rate_momentum,
            } => (
                "delta_shock",
                None,
                Some(sigma),
                Some(weight_rate_mass),
                Some(weight_rate_momentum),
                None,
                None,
            ),
            Wave::VacuumFan { .. } => ("vacuum_fan", None, None, None, None, Some(0.0), None),
            Wave::ConstantDensityFan { rho, .. } => (
                "constant_density_fan",
                None,
                None,
                None,
                None,
                Some(rho),
                None,
            ),
        };
        out.push_str(&format!(
            "{i},{kind},{},{},{},{},{},{},{},{}\n",
            family.map(family_name).unwrap_or(""),
            num(lo),
            num(hi),
            opt_num(sigma),
            opt_num(wrm),
            opt_num(wrp),
            opt_num(rho),
            opt_num(u),
        ));
    }
    for (i, m) in sol.middles.iter().enumerate() {
        out.push_str(&format!("{i},middle,,,,,,,{},{}\n", num(m.rho), num(m.u)));
    }
    out
}
