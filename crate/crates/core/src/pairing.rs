//! Space-time pairings of test functions with self-similar fields.
//!
//! A self-similar solution is constant on wedges c_lo*t <= x <= c_hi*t, so
//! every 2-D pairing reduces to 1-D quadrature in t of an explicit inner
//! x-integral, with forced panel breaks where a wedge edge crosses the
//! x-support of the test function. Delta measures on x = sigma*t reduce to
//! plain line integrals in t after the arclength factor cancels.

use crate::error::Result;
use crate::quad::{integrate, integrate_with_breaks};
use crate::testfn::TestFunction;

const PAIRING_TOL: f64 = 1e-12;

/// Breakpoints in t where the clipped wedge [c_lo*t, c_hi*t] crosses the
/// x-support of the test function.
fn t_breaks(tf: &TestFunction, c_lo: f64, c_hi: f64) -> Vec<f64> {
    let ((t0, t1), (x0, x1)) = tf.support();
    let mut pts = vec![t0, t1];
    for c in [c_lo, c_hi] {
        if c.is_finite() && c != 0.0 {
            for e in [x0, x1] {
                let t = e / c;
                if t > t0 && t < t1 {
                    pts.push(t);
                }
            }
        }
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    pts
}

fn clip(tf: &TestFunction, c_lo: f64, c_hi: f64, t: f64) -> Option<(f64, f64)> {
    let (_, (x0, x1)) = tf.support();
    let lo = if c_lo == f64::NEG_INFINITY {
        x0
    } else {
        (c_lo * t).max(x0)
    };
    let hi = if c_hi == f64::INFINITY {
        x1
    } else {
        (c_hi * t).min(x1)
    };
    if hi > lo {
        Some((lo, hi))
    } else {
        None
    }
}

/// Integral of phi over the wedge c_lo*t <= x <= c_hi*t.
pub(crate) fn wedge_phi(tf: &TestFunction, c_lo: f64, c_hi: f64) -> Result<f64> {
    let breaks = t_breaks(tf, c_lo, c_hi);
    integrate_with_breaks(
        |t| {
            let tv = tf.t_factor.value(t);
            if tv == 0.0 {
                return 0.0;
            }
            match clip(tf, c_lo, c_hi, t) {
                Some((lo, hi)) => {
                    tv * integrate(|x| tf.x_factor.value(x), lo, hi, PAIRING_TOL)
                        .unwrap_or(f64::NAN)
                }
                None => 0.0,
            }
        },
        &breaks,
        PAIRING_TOL,
    )
}

/// Integral of the t-partial of phi over the wedge.
pub(crate) fn wedge_phi_t(tf: &TestFunction, c_lo: f64, c_hi: f64) -> Result<f64> {
    let breaks = t_breaks(tf, c_lo, c_hi);
    integrate_with_breaks(
        |t| {
            let dtv = tf.t_factor.derivative(t);
            if dtv == 0.0 {
                return 0.0;
            }
            match clip(tf, c_lo, c_hi, t) {
                Some((lo, hi)) => {
                    dtv * integrate(|x| tf.x_factor.value(x), lo, hi, PAIRING_TOL)
                        .unwrap_or(f64::NAN)
                }
                None => 0.0,
            }
        },
        &breaks,
        PAIRING_TOL,
    )
}

/// Integral of the x-partial of phi over the wedge; the inner integral
/// telescopes so only boundary values of the x-factor are needed.
pub(crate) fn wedge_phi_x(tf: &TestFunction, c_lo: f64, c_hi: f64) -> Result<f64> {
    let breaks = t_breaks(tf, c_lo, c_hi);
    integrate_with_breaks(
        |t| {
            let tv = tf.t_factor.value(t);
            if tv == 0.0 {
                return 0.0;
            }
            match clip(tf, c_lo, c_hi, t) {
                Some((lo, hi)) => tv * (tf.x_factor.value(hi) - tf.x_factor.value(lo)),
                None => 0.0,
            }
        },
        &breaks,
        PAIRING_TOL,
    )
}

/// Line pairing of a unit-rate delta on x = sigma*t: integral of t*phi(t, sigma*t).
pub(crate) fn line_phi(tf: &TestFunction, sigma: f64) -> Result<f64> {
    let ((t0, t1), _) = tf.support();
    integrate(
        |t| t * tf.t_factor.value(t) * tf.x_factor.value(sigma * t),
        t0,
        t1,
        PAIRING_TOL,
    )
}

/// Integral of t * (phi_t + sigma*phi_x)(t, sigma*t): the pairing of a
/// unit-rate delta on x = sigma*t with the transport derivative of phi.
pub(crate) fn line_transport(tf: &TestFunction, sigma: f64) -> Result<f64> {
    let ((t0, t1), _) = tf.support();
    integrate(
        |t| {
            let x = sigma * t;
            t * (tf.d_t(t, x) + sigma * tf.d_x(t, x))
        },
        t0,
        t1,
        PAIRING_TOL,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfn::BumpFactor;

    fn unit_bump() -> TestFunction {
        TestFunction::new("t", BumpFactor::bump(0.0, 1.0), BumpFactor::bump(-2.0, 3.0))
    }

    #[test]
    fn full_plane_wedge_equals_product_of_factors() {
        let tf = unit_bump();
        let whole = wedge_phi(&tf, f64::NEG_INFINITY, f64::INFINITY).unwrap();
        let t_int = integrate(|t| tf.t_factor.value(t), 0.0, 1.0, 1e-13).unwrap();
        let x_int = integrate(|x| tf.x_factor.value(x), -2.0, 3.0, 1e-13).unwrap();
        assert!((whole - t_int * x_int).abs() < 1e-11);
    }

    #[test]
    fn complementary_wedges_sum_to_whole() {
        let tf = unit_bump();
        let whole = wedge_phi(&tf, f64::NEG_INFINITY, f64::INFINITY).unwrap();
        let a = wedge_phi(&tf, f64::NEG_INFINITY, 0.7).unwrap();
        let b = wedge_phi(&tf, 0.7, f64::INFINITY).unwrap();
        assert!((a + b - whole).abs() < 1e-11);
    }

    #[test]
    fn transport_line_integrates_by_parts() {
        // integral of t d/dt[phi(t, st)] dt = -integral of phi(t, st) dt
        let tf = unit_bump();
        let s = 0.4;
        let lhs = line_transport(&tf, s).unwrap();
        let rhs = -integrate(|t| tf.value(t, s * t), 0.0, 1.0, 1e-13).unwrap();
        assert!((lhs - rhs).abs() < 1e-11, "{lhs} vs {rhs}");
    }
}
