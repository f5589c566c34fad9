//! Smooth compactly supported test functions for distributional pairings.
//!
//! Every test function is a tensor product of one factor in t and one in x;
//! each factor is a polynomial times the C-infinity bump exp(-1/((x-a)(b-x)))
//! on (a, b). Support endpoints are rational and fixed in the repository so
//! experiment suites are reproducible.

/// Polynomial-times-bump factor supported on (lo, hi).
#[derive(Debug, Clone, PartialEq)]
pub struct BumpFactor {
    pub lo: f64,
    pub hi: f64,
    /// Polynomial coefficients, constant term first.
    pub poly: Vec<f64>,
}

// exp(-1/q) drops below ~1e-300 once q < 1/700; both the value and the
// q^-2 factor in the derivative are cut off there to avoid 0 * inf.
const Q_CUTOFF: f64 = 1.0 / 700.0;

impl BumpFactor {
    pub fn bump(lo: f64, hi: f64) -> Self {
        BumpFactor {
            lo,
            hi,
            poly: vec![1.0],
        }
    }

    pub fn with_poly(lo: f64, hi: f64, poly: Vec<f64>) -> Self {
        BumpFactor { lo, hi, poly }
    }

    fn poly_value(&self, x: f64) -> f64 {
        self.poly.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    fn poly_derivative(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for (k, &c) in self.poly.iter().enumerate().skip(1).rev() {
            acc = acc * x + c * k as f64;
        }
        acc
    }

    pub fn value(&self, x: f64) -> f64 {
        if x <= self.lo || x >= self.hi {
            return 0.0;
        }
        let q = (x - self.lo) * (self.hi - x);
        if q < Q_CUTOFF {
            return 0.0;
        }
        self.poly_value(x) * (-1.0 / q).exp()
    }

    pub fn derivative(&self, x: f64) -> f64 {
        if x <= self.lo || x >= self.hi {
            return 0.0;
        }
        let q = (x - self.lo) * (self.hi - x);
        if q < Q_CUTOFF {
            return 0.0;
        }
        let bump = (-1.0 / q).exp();
        let dbump = bump * (self.lo + self.hi - 2.0 * x) / (q * q);
        self.poly_derivative(x) * bump + self.poly_value(x) * dbump
    }
}

/// Tensor-product test function phi(t, x) = T(t) * X(x).
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    pub name: String,
    pub t_factor: BumpFactor,
    pub x_factor: BumpFactor,
}

impl TestFunction {
    pub fn new(name: &str, t_factor: BumpFactor, x_factor: BumpFactor) -> Self {
        TestFunction {
            name: name.to_string(),
            t_factor,
            x_factor,
        }
    }

    pub fn value(&self, t: f64, x: f64) -> f64 {
        self.t_factor.value(t) * self.x_factor.value(x)
    }

    pub fn d_t(&self, t: f64, x: f64) -> f64 {
        self.t_factor.derivative(t) * self.x_factor.value(x)
    }

    pub fn d_x(&self, t: f64, x: f64) -> f64 {
        self.t_factor.value(t) * self.x_factor.derivative(x)
    }

    /// Support box ((t_lo, t_hi), (x_lo, x_hi)).
    pub fn support(&self) -> ((f64, f64), (f64, f64)) {
        (
            (self.t_factor.lo, self.t_factor.hi),
            (self.x_factor.lo, self.x_factor.hi),
        )
    }
}

/// The fixed default suite: five products of polynomials and smooth bumps
/// with rational support endpoints, all supported in t > 0.
pub fn default_suite() -> Vec<TestFunction> {
    vec![
        TestFunction::new(
            "bump_unit",
            BumpFactor::bump(0.0, 1.0),
            BumpFactor::bump(-2.0, 3.0),
        ),
        TestFunction::new(
            "bump_x_linear",
            BumpFactor::bump(0.0, 1.0),
            BumpFactor::with_poly(-2.0, 3.0, vec![0.0, 1.0]),
        ),
        TestFunction::new(
            "bump_t_linear",
            BumpFactor::with_poly(0.0, 2.0, vec![0.0, 1.0]),
            BumpFactor::bump(-3.0, 4.0),
        ),
        TestFunction::new(
            "bump_x_quadratic",
            BumpFactor::bump(0.5, 1.5),
            BumpFactor::with_poly(-1.0, 2.0, vec![1.0, -1.0, 1.0]),
        ),
        TestFunction::new(
            "bump_wide",
            BumpFactor::bump(0.0, 1.0),
            BumpFactor::with_poly(-2.5, 3.5, vec![0.0, 0.0, 1.0]),
        ),
    ]
}
