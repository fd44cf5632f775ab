//! Coefficient rings for diagram evaluation and the exposed [`Scalar`] type.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::skein::poly::{Laurent, RatFn};
use crate::skein::tlmor::lambda_laurent;

/// Coefficients of Temperley-Lieb diagrams during evaluation.
pub trait Coeff: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(c: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn accumulate(&mut self, rhs: &Self);
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
}

impl Coeff for Laurent {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn one() -> Self {
        Laurent::one()
    }
    fn from_i64(c: i64) -> Self {
        Laurent::monomial(c, 0)
    }
    fn is_zero(&self) -> bool {
        Laurent::is_zero(self)
    }
    fn accumulate(&mut self, rhs: &Self) {
        self.add_assign_ref(rhs);
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(c: i64) -> Self {
        c as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn accumulate(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
}

/// An evaluation mode: symbolic δ or a fixed floating-point δ.
pub trait Arith: Clone + Send + Sync {
    type C: Coeff;

    fn delta(&self) -> Self::C;

    /// `-1/δ`, the weight of an `e` insertion when expanding `p₂ = 1 - e/δ`.
    fn neg_inv_delta(&self) -> Self::C;

    /// The vertex normalization `λ` with `Y*Y = λ p₂` for the raw vertex.
    fn lambda(&self) -> Self::C;

    /// `raw / (λ^(lambda_half/2) · d^(d_half/2))` as an exposed scalar.
    fn finish(&self, raw: &Self::C, lambda_half: u32, d_half: u32) -> Result<Scalar>;

    fn is_exact(&self) -> bool;

    /// Lifts an exact scalar into this mode.
    fn lift(&self, s: &Scalar) -> Scalar;
}

/// Exact mode: coefficients in `Z[δ, 1/δ]`, results in `Q(δ)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Exact;

impl Arith for Exact {
    type C = Laurent;

    fn delta(&self) -> Laurent {
        Laurent::monomial(1, 1)
    }

    fn neg_inv_delta(&self) -> Laurent {
        Laurent::monomial(-1, -1)
    }

    fn lambda(&self) -> Laurent {
        lambda_laurent().clone()
    }

    fn finish(&self, raw: &Laurent, lambda_half: u32, d_half: u32) -> Result<Scalar> {
        if !lambda_half.is_multiple_of(2) {
            return Err(Error::OddNormalization {
                what: "vertex count",
            });
        }
        if !d_half.is_multiple_of(2) {
            return Err(Error::OddNormalization { what: "√d count" });
        }
        let lam = lambda_laurent().to_ratfn();
        let den = &lam.pow((lambda_half / 2) as i32)? * &RatFn::d().pow((d_half / 2) as i32)?;
        Ok(Scalar::Exact(&raw.to_ratfn() / &den))
    }

    fn is_exact(&self) -> bool {
        true
    }

    fn lift(&self, s: &Scalar) -> Scalar {
        s.clone()
    }
}

/// Floating-point mode at a fixed δ.
#[derive(Clone, Copy, Debug)]
pub struct Numeric {
    pub delta: f64,
}

impl Numeric {
    pub fn new(delta: f64) -> Self {
        Numeric { delta }
    }

    /// `δ = 2cos(π/n)`.
    pub fn root_of_unity(n: u32) -> Self {
        Numeric::new(2.0 * (std::f64::consts::PI / n as f64).cos())
    }

    pub fn d(&self) -> f64 {
        self.delta * self.delta - 1.0
    }
}

/// True when `δ ≥ 2` or `δ = 2cos(π/n)` for some `n ≥ 4`, the values for
/// which the inner product is positive semidefinite.
pub fn is_admissible(delta: f64) -> bool {
    if delta >= 2.0 {
        return true;
    }
    if delta <= 0.0 {
        return false;
    }
    // 2cos(π/n) is increasing in n and tends to 2
    let n = std::f64::consts::PI / (delta / 2.0).acos();
    let k = n.round();
    k >= 4.0 && (2.0 * (std::f64::consts::PI / k).cos() - delta).abs() < 1e-12
}

impl Arith for Numeric {
    type C = f64;

    fn delta(&self) -> f64 {
        self.delta
    }

    fn neg_inv_delta(&self) -> f64 {
        -1.0 / self.delta
    }

    fn lambda(&self) -> f64 {
        lambda_laurent().eval_f64(self.delta)
    }

    fn finish(&self, raw: &f64, lambda_half: u32, d_half: u32) -> Result<Scalar> {
        // δ = √2 (d = 1): the vertex has zero norm and nothing can be normalized
        if lambda_half > 0 && self.lambda().abs() < 1e-12 {
            return Err(Error::DivisionByZero);
        }
        let lam = self.lambda().powf(lambda_half as f64 / 2.0);
        let d = self.d().powf(d_half as f64 / 2.0);
        Ok(Scalar::Numeric(raw / (lam * d)))
    }

    fn is_exact(&self) -> bool {
        false
    }

    fn lift(&self, s: &Scalar) -> Scalar {
        Scalar::Numeric(s.to_f64(self.delta))
    }
}

/// A normalized, exposed value: exact in `Q(δ)` or a float at a fixed δ.
#[derive(Clone, PartialEq)]
pub enum Scalar {
    Exact(RatFn),
    Numeric(f64),
}

impl Scalar {
    pub fn one() -> Self {
        Scalar::Exact(RatFn::one())
    }

    pub fn as_exact(&self) -> Option<&RatFn> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Numeric(_) => None,
        }
    }

    /// Value at `delta`; numeric scalars are returned as is.
    pub fn to_f64(&self, delta: f64) -> f64 {
        match self {
            Scalar::Exact(r) => r.eval_f64(delta),
            Scalar::Numeric(x) => *x,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Numeric(x) => *x == 0.0,
        }
    }

    /// Exact equality for exact scalars, relative tolerance `tol` for numeric ones.
    pub fn agrees(&self, other: &Scalar, tol: f64) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Numeric(a), Scalar::Numeric(b)) => {
                (a - b).abs() <= tol * 1f64.max(a.abs()).max(b.abs())
            }
            _ => false,
        }
    }

    /// Complex conjugate; every coefficient here is real.
    pub fn conj(&self) -> Scalar {
        self.clone()
    }

    fn zip(
        &self,
        rhs: &Scalar,
        exact: impl Fn(&RatFn, &RatFn) -> RatFn,
        num: impl Fn(f64, f64) -> f64,
    ) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(exact(a, b)),
            (Scalar::Numeric(a), Scalar::Numeric(b)) => Scalar::Numeric(num(*a, *b)),
            _ => panic!("mixing exact and numeric scalars"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.zip(rhs, |a, b| a + b, |a, b| a + b)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.zip(rhs, |a, b| a - b, |a, b| a - b)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.zip(rhs, |a, b| a * b, |a, b| a * b)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.zip(rhs, |a, b| a / b, |a, b| a / b)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(-a),
            Scalar::Numeric(x) => Scalar::Numeric(-x),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "{r}"),
            Scalar::Numeric(x) => f.write_str(&format_float(*x)),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) => write!(f, "Exact({r})"),
            Scalar::Numeric(x) => write!(f, "Numeric({x:e})"),
        }
    }
}

/// Twelve significant digits with trailing zeros dropped, so that `0.49999999999999994`
/// prints as `0.5`.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).clamp(0, 17) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}
