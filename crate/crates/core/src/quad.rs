//! Adaptive Gauss-Kronrod quadrature (7-15 pair).
//!
//! Integrands with endpoint singularities are desingularized by the caller
//! before reaching this module; the kernel assumes the integrand is finite
//! on the closed interval.

use crate::error::{Error, Result};

/// Default absolute tolerance, one order below the tightest verification
/// tolerance used by the solvers.
pub const DEFAULT_ABS_TOL: f64 = 1e-11;

// 15-point Kronrod abscissae (positive half, descending) and weights,
// with the embedded 7-point Gauss weights on the odd-indexed nodes.
// Literals carry the full tabulated precision.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

/// One Gauss-Kronrod 7-15 evaluation on [a, b]: (integral, error estimate).
fn qk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let f_center = f(center);
    let mut result_gauss = WG[3] * f_center;
    let mut result_kronrod = WGK[7] * f_center;
    let mut res_abs = result_kronrod.abs();

    let mut fv1 = [0.0f64; 8];
    let mut fv2 = [0.0f64; 8];
    fv1[7] = f_center;
    fv2[7] = f_center;

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        fv1[j] = f1;
        fv2[j] = f2;
        let sum = f1 + f2;
        if j % 2 == 1 {
            result_gauss += WG[j / 2] * sum;
        }
        result_kronrod += WGK[j] * sum;
        res_abs += WGK[j] * (f1.abs() + f2.abs());
    }

    let mean = 0.5 * result_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = rescale_error(
        (result_kronrod - result_gauss) * half,
        res_abs * half.abs(),
        res_asc * half.abs(),
    );
    (result_kronrod * half, err)
}

/// Integrate `f` over [a, b] to absolute tolerance `abs_tol` by adaptive
/// bisection of Gauss-Kronrod panels. Fails if the error estimate cannot
/// be brought under the tolerance within the subdivision budget.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(format!(
            "quadrature bounds must be finite, got [{a}, {b}]"
        )));
    }
    if a > b {
        return integrate(f, b, a, abs_tol).map(|v| -v);
    }

    // Worklist of (a, b, local tolerance); budgets sized so that a smooth
    // integrand never comes close while a genuinely divergent one fails fast.
    const MAX_PANELS: usize = 4096;
    let mut work = vec![(a, b, abs_tol)];
    let mut total = 0.0;
    let mut panels = 0usize;

    while let Some((lo, hi, tol)) = work.pop() {
        panels += 1;
        if panels > MAX_PANELS {
            return Err(Error::Numerics(format!(
                "quadrature on [{a}, {b}] did not converge to {abs_tol:e}"
            )));
        }
        let (value, err) = qk15(&f, lo, hi);
        if !value.is_finite() {
            return Err(Error::Numerics(format!(
                "quadrature on [{a}, {b}] hit a non-finite integrand value"
            )));
        }
        let width = hi - lo;
        if err <= tol || width <= 1e-15 * (hi.abs() + lo.abs() + 1.0) {
            total += value;
        } else {
            let mid = 0.5 * (lo + hi);
            work.push((lo, mid, 0.5 * tol));
            work.push((mid, hi, 0.5 * tol));
        }
    }
    Ok(total)
}

/// Integrate from the first to the last breakpoint with forced panel breaks
/// at the interior points (used where the integrand has kinks).
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(f: F, points: &[f64], abs_tol: f64) -> Result<f64> {
    let mut total = 0.0;
    for w in points.windows(2) {
        total += integrate(&f, w[0], w[1], abs_tol)?;
    }
    Ok(total)
}
