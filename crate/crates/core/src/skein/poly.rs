//! Exact arithmetic in the loop parameter δ.
//!
//! Diagram evaluation only ever multiplies by `δ` and `-1/δ`, so it runs in the
//! Laurent ring `Z[δ, 1/δ]`. Normalized quantities divide by powers of
//! `d = δ² - 1` and `λ = (δ² - 2)/δ` and land in the field `Q(δ)`, represented
//! by [`RatFn`] with coprime integer-coefficient numerator and denominator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial in δ with integer coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Poly::from_coeffs(vec![c.into()])
    }

    /// `δ^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Gcd of the coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn primitive_part(&self) -> Poly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x / &c).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// `lc(b)^k · self mod b` for a suitable `k`.
    fn pseudo_rem(&self, b: &Poly) -> Poly {
        let db = b.degree().expect("pseudo-remainder by zero");
        let lb = b.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().unwrap().clone();
            r = &r.scale(&lb) - &b.scale(&lr).shift(dr - db);
        }
        r
    }

    /// Quotient of an exact division; `None` if `b` does not divide `self` over Z.
    pub fn div_exact(&self, b: &Poly) -> Option<Poly> {
        let db = b.degree()?;
        let lb = b.leading().unwrap();
        let mut r = self.clone();
        let Some(dr) = r.degree() else {
            return Some(Poly::zero());
        };
        if dr < db {
            return None;
        }
        let mut q = vec![BigInt::zero(); dr - db + 1];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let (c, rem) = r.leading().unwrap().div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            r = &r - &b.scale(&c).shift(dr - db);
            q[dr - db] = c;
        }
        Some(Poly::from_coeffs(q))
    }

    /// Greatest common divisor in Z[δ], with positive leading coefficient.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.abs_lead();
        }
        if b.is_zero() {
            return a.abs_lead();
        }
        let c = a.content().gcd(&b.content());
        let (mut p, mut q) = (a.primitive_part(), b.primitive_part());
        if p.degree() < q.degree() {
            std::mem::swap(&mut p, &mut q);
        }
        while !q.is_zero() {
            let r = p.pseudo_rem(&q);
            p = q;
            q = r.primitive_part();
        }
        p.primitive_part().scale(&c).abs_lead()
    }

    fn abs_lead(&self) -> Poly {
        match self.leading() {
            Some(l) if l.is_negative() => -self,
            _ => self.clone(),
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_big(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero)
                })
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(i64, BigInt)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (k, (deg, c)) in terms.iter().enumerate() {
        if c.is_negative() {
            f.write_str("-")?;
        } else if k > 0 {
            f.write_str("+")?;
        }
        let mag = c.abs();
        if *deg == 0 || !mag.is_one() {
            write!(f, "{mag}")?;
        }
        match *deg {
            0 => {}
            1 => f.write_str("δ")?,
            e => write!(f, "δ^{e}")?,
        }
    }
    Ok(())
}

/// Prints with the highest degree first, e.g. `2δ^3-δ+1`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64, c.clone()))
            .collect();
        write_terms(f, &terms)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Laurent polynomial `Σ c_k δ^k` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    low: i32,
    coeffs: Vec<BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i32) -> Self {
        Laurent::from_parts(exp, vec![c.into()])
    }

    /// Coefficients of `δ^low, δ^(low+1), ...`.
    pub fn from_parts(low: i32, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == coeffs.len() {
            return Laurent::zero();
        }
        coeffs.drain(..lead);
        Laurent {
            low: low + lead as i32,
            coeffs,
        }
    }

    pub fn from_i64(low: i32, coeffs: &[i64]) -> Self {
        Laurent::from_parts(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn pow(&self, e: u32) -> Laurent {
        (0..e).fold(Laurent::one(), |acc, _| &acc * self)
    }

    pub fn scale(&self, c: &BigInt) -> Laurent {
        Laurent::from_parts(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let p = self
            .coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN));
        p * x.powi(self.low)
    }

    pub fn to_ratfn(&self) -> RatFn {
        if self.low >= 0 {
            let num = Poly::from_coeffs(self.coeffs.clone()).shift(self.low as usize);
            RatFn::from_poly(num)
        } else {
            let num = Poly::from_coeffs(self.coeffs.clone());
            RatFn::new(num, Poly::monomial((-self.low) as usize)).expect("nonzero denominator")
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &Laurent) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        let low = self.low.min(rhs.low);
        let high = (self.low + self.coeffs.len() as i32).max(rhs.low + rhs.coeffs.len() as i32);
        if low == self.low && high == self.low + self.coeffs.len() as i32 {
            let off = (rhs.low - low) as usize;
            for (k, c) in rhs.coeffs.iter().enumerate() {
                self.coeffs[off + k] += c;
            }
            *self = Laurent::from_parts(self.low, std::mem::take(&mut self.coeffs));
            return;
        }
        let mut out = vec![BigInt::zero(); (high - low) as usize];
        for (src, l) in [(&self.coeffs, self.low), (&rhs.coeffs, rhs.low)] {
            let off = (l - low) as usize;
            for (k, c) in src.iter().enumerate() {
                out[off + k] += c;
            }
        }
        *self = Laurent::from_parts(low, out);
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        if self.is_zero() || rhs.is_zero() {
            return Laurent::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Laurent::from_parts(self.low + rhs.low, out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as i64 + self.low as i64, c.clone()))
            .collect();
        write_terms(f, &terms)
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

/// Element of `Q(δ)`: `num/den` with `gcd(num, den) = 1` in `Z[δ]` and a
/// positive leading coefficient in the denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFn::zero());
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        if den.leading().unwrap().is_negative() {
            num = -&num;
            den = -&den;
        }
        Ok(RatFn { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        RatFn::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFn::from_poly(Poly::one())
    }

    pub fn from_int(c: i64) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }

    /// The loop parameter δ.
    pub fn delta() -> Self {
        RatFn::from_poly(Poly::monomial(1))
    }

    /// `d = δ² - 1`, the dimension of the generating object.
    pub fn d() -> Self {
        RatFn::from_poly(Poly::from_i64(&[-1, 0, 1]))
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<RatFn> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<RatFn> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(RatFn {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    fn combine(&self, rhs: &RatFn, sub: bool) -> RatFn {
        let a = &self.num * &rhs.den;
        let b = &rhs.num * &self.den;
        let num = if sub { &a - &b } else { &a + &b };
        RatFn::new(num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        self.combine(rhs, false)
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self.combine(rhs, true)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominators")
    }
}

/// Panics on division by the zero function; use [`RatFn::inv`] to handle it.
impl Div for &RatFn {
    type Output = RatFn;
    fn div(self, rhs: &RatFn) -> RatFn {
        self * &rhs.inv().expect("division by zero in Q(δ)")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(RatFn, Add add, Sub sub, Mul mul, Div div);
forward_owned!(Laurent, Add add, Sub sub, Mul mul);
forward_owned!(Poly, Add add, Sub sub, Mul mul);

/// Printed as `N` when the denominator is 1, otherwise `(N)/(D)`, each side
/// highest degree first: `(δ^2-3)/(δ^2-2)`.
impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn[{self}]")
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

struct PolyParser<'a> {
    chars: Vec<char>,
    idx: usize,
    _src: &'a str,
}

impl PolyParser<'_> {
    fn peek(&mut self) -> Option<char> {
        while self.chars.get(self.idx).is_some_and(|c| c.is_whitespace()) {
            self.idx += 1;
        }
        self.chars.get(self.idx).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.idx,
            msg: msg.to_string(),
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.peek();
        let start = self.idx;
        while self.chars.get(self.idx).is_some_and(char::is_ascii_digit) {
            self.idx += 1;
        }
        (self.idx > start).then(|| {
            self.chars[start..self.idx]
                .iter()
                .collect::<String>()
                .parse()
                .unwrap()
        })
    }

    fn term(&mut self) -> Result<(usize, BigInt)> {
        let c = self.digits();
        if matches!(self.peek(), Some('δ')) {
            self.idx += 1;
            let mut deg = 1usize;
            if self.peek() == Some('^') {
                self.idx += 1;
                deg = self
                    .digits()
                    .ok_or_else(|| self.err("expected exponent"))?
                    .to_usize()
                    .ok_or_else(|| self.err("exponent too large"))?;
            }
            Ok((deg, c.unwrap_or_else(BigInt::one)))
        } else {
            c.map(|c| (0, c))
                .ok_or_else(|| self.err("expected a coefficient or δ"))
        }
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut acc: Vec<BigInt> = Vec::new();
        let mut sign = BigInt::one();
        match self.peek() {
            Some('-') => {
                sign = -sign;
                self.idx += 1;
            }
            Some('+') => self.idx += 1,
            _ => {}
        }
        loop {
            let (deg, c) = self.term()?;
            if acc.len() <= deg {
                acc.resize(deg + 1, BigInt::zero());
            }
            acc[deg] += sign * c;
            sign = match self.peek() {
                Some('+') => BigInt::one(),
                Some('-') => -BigInt::one(),
                _ => break,
            };
            self.idx += 1;
        }
        Ok(Poly::from_coeffs(acc))
    }

    fn paren_poly(&mut self) -> Result<Poly> {
        if self.peek() == Some('(') {
            self.idx += 1;
            let p = self.poly()?;
            if self.peek() != Some(')') {
                return Err(self.err("expected ')'"));
            }
            self.idx += 1;
            Ok(p)
        } else {
            self.poly()
        }
    }
}

impl FromStr for RatFn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut p = PolyParser {
            chars: s.chars().collect(),
            idx: 0,
            _src: s,
        };
        let num = p.paren_poly()?;
        let den = if p.peek() == Some('/') {
            p.idx += 1;
            p.paren_poly()?
        } else {
            Poly::one()
        };
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        RatFn::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64(c)
    }

    #[test]
    fn gcd_of_products() {
        // (δ-1)(δ+2) and (δ-1)(δ^2+1)
        let a = p(&[-2, 1, 1]);
        let b = p(&[-1, 1, -1, 1]);
        assert_eq!(Poly::gcd(&a, &b), p(&[-1, 1]));
        assert_eq!(Poly::gcd(&p(&[4, 6]), &p(&[2])), p(&[2]));
        assert_eq!(Poly::gcd(&Poly::zero(), &p(&[0, -3])), p(&[0, 3]));
    }

    #[test]
    fn ratfn_normal_form() {
        let r = RatFn::new(p(&[-2, 0, 2]), p(&[-2, 2])).unwrap();
        // 2(δ²-1) / 2(δ-1) = δ+1
        assert_eq!(r, RatFn::from_poly(p(&[1, 1])));
        let s = RatFn::new(p(&[1]), p(&[0, -2])).unwrap();
        assert_eq!(s.to_string(), "(-1)/(2δ)");
        assert!(RatFn::new(p(&[1]), Poly::zero()).is_err());
    }

    #[test]
    fn display_format() {
        let d = RatFn::d();
        let t = &(&d - &RatFn::from_int(2)) / &(&d - &RatFn::from_int(1));
        assert_eq!(t.to_string(), "(δ^2-3)/(δ^2-2)");
        assert_eq!(RatFn::one().to_string(), "1");
        assert_eq!(RatFn::zero().to_string(), "0");
        assert_eq!(RatFn::from_poly(p(&[1, -1, 0, 2])).to_string(), "2δ^3-δ+1");
        assert_eq!(Laurent::from_i64(-1, &[-2, 0, 1]).to_string(), "δ-2δ^-1");
    }

    #[test]
    fn laurent_to_ratfn() {
        let lam = Laurent::from_i64(-1, &[-2, 0, 1]);
        let r = lam.to_ratfn();
        assert_eq!(r.to_string(), "(δ^2-2)/(δ)");
        assert!((r.eval_f64(2.0) - 1.0).abs() < 1e-15);
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-5i64..=5, 0..4).prop_map(|c| Poly::from_i64(&c))
    }

    fn small_ratfn() -> impl Strategy<Value = RatFn> {
        (small_poly(), small_poly())
            .prop_filter("nonzero den", |(_, d)| !d.is_zero())
            .prop_map(|(n, d)| RatFn::new(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn parse_roundtrip(r in small_ratfn()) {
            let s = r.to_string();
            prop_assert_eq!(s.parse::<RatFn>().unwrap(), r);
        }

        #[test]
        fn field_axioms(a in small_ratfn(), b in small_ratfn(), c in small_ratfn()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
        }

        #[test]
        fn eval_is_a_homomorphism(a in small_ratfn(), b in small_ratfn()) {
            let x = 2.0;
            let (fa, fb) = (a.eval_f64(x), b.eval_f64(x));
            prop_assume!(fa.is_finite() && fb.is_finite());
            let prod = (&a * &b).eval_f64(x);
            prop_assert!((prod - fa * fb).abs() <= 1e-9 * (1.0 + (fa * fb).abs()));
        }
    }
}
