//! Bracketed scalar root finding: bisection safeguarded by inverse
//! quadratic/secant steps (Brent's method).

use crate::error::{Error, Result};

/// Find a root of `f` in [a, b], where f(a) and f(b) have opposite signs.
///
/// Convergence: half-width below `(xtol + rtol*|x|)/2`, or an exact zero.
pub fn brent<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    xtol: f64,
    rtol: f64,
    max_iter: usize,
) -> Result<f64> {
    let mut xpre = a;
    let mut xcur = b;
    let mut fpre = f(xpre);
    let mut fcur = f(xcur);

    if fpre == 0.0 {
        return Ok(xpre);
    }
    if fcur == 0.0 {
        return Ok(xcur);
    }
    if fpre * fcur > 0.0 {
        return Err(Error::Numerics(format!(
            "root not bracketed on [{a}, {b}]: f = ({fpre}, {fcur})"
        )));
    }

    let mut xblk = 0.0;
    let mut fblk = 0.0;
    let mut spre = 0.0;
    let mut scur = 0.0;

    for _ in 0..max_iter {
        if fpre * fcur < 0.0 {
            xblk = xpre;
            fblk = fpre;
            spre = xcur - xpre;
            scur = spre;
        }
        if fblk.abs() < fcur.abs() {
            xpre = xcur;
            xcur = xblk;
            xblk = xpre;
            fpre = fcur;
            fcur = fblk;
            fblk = fpre;
        }

        let delta = 0.5 * (xtol + rtol * xcur.abs());
        let sbis = 0.5 * (xblk - xcur);

        if fcur == 0.0 || sbis.abs() < delta {
            return Ok(xcur);
        }

        if spre.abs() > delta && fcur.abs() < fpre.abs() {
            let stry = if xpre == xblk {
                // secant
                -fcur * (xcur - xpre) / (fcur - fpre)
            } else {
                // inverse quadratic interpolation
                let dpre = (fpre - fcur) / (xpre - xcur);
                let dblk = (fblk - fcur) / (xblk - xcur);
                -fcur * (fblk * dblk - fpre * dpre) / (dblk * dpre * (fblk - fpre))
            };
            if 2.0 * stry.abs() < spre.abs().min(3.0 * sbis.abs() - delta) {
                spre = scur;
                scur = stry;
            } else {
                spre = sbis;
                scur = sbis;
            }
        } else {
            spre = sbis;
            scur = sbis;
        }

        xpre = xcur;
        fpre = fcur;
        if scur.abs() > delta {
            xcur += scur;
        } else {
            xcur += if sbis > 0.0 { delta } else { -delta };
        }
        fcur = f(xcur);
    }
    Err(Error::Numerics(format!(
        "root finder exhausted {max_iter} iterations on [{a}, {b}]"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cubic_root() {
        let root = brent(|x| x * x * x - 0.5, 0.0, 1.0, 0.0, 1e-14, 100).unwrap();
        assert!((root - 0.5f64.powf(1.0 / 3.0)).abs() < 1e-12);
    }

    #[test]
    fn exact_endpoint_zero() {
        assert_eq!(brent(|x| x, 0.0, 1.0, 0.0, 1e-12, 100).unwrap(), 0.0);
    }

    #[test]
    fn unbracketed_is_error() {
        assert!(matches!(
            brent(|x| x * x + 1.0, -1.0, 1.0, 0.0, 1e-12, 100),
            Err(Error::Numerics(_))
        ));
    }

    #[test]
    fn tiny_root_magnitude() {
        // root at 1e-9 with rel-only tolerance still converges via bisection
        let root = brent(|x| x - 1e-9, 0.0, 1.0, 0.0, 1e-12, 200).unwrap();
        assert!((root - 1e-9).abs() < 1e-20);
    }
}
