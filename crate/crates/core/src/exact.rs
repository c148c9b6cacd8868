//! Exact numbers: big rationals, real quadratic numbers a + b√d and
//! ℓ-adic rationals m/ℓᵏ.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::Sign;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("mixed radicals sqrt({0}) and sqrt({1})")]
    MixedRadicals(u32, u32),
    #[error("radicand {0} is not a square-free integer >= 2")]
    BadRadicand(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("l-adic base must be >= 2, got {0}")]
    BadBase(i64),
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("parity needs an odd base, got {0}")]
    EvenBase(u32),
    #[error("{0} is not an l-adic rational for base {1}")]
    NotLAdic(String, u32),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || ArithError::Parse(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p).map_err(|_| err())?;
            let q = BigInt::from_str(q).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(&t).map_err(|_| err())?)),
    }
}

pub fn rational_sign(r: &Rational) -> Sign {
    Sign::of_ordering(r.cmp(&Rational::zero()))
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    if n.is_finite() && d.is_finite() {
        n / d
    } else {
        // very large parts: scale down by the bit excess first
        let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
        let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
        let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
        n / d
    }
}

/// `base^e` for a possibly negative exponent.
pub fn rat_pow(base: i64, e: i64) -> Rational {
    let b = BigInt::from(base);
    let p = num_traits::pow(b, e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Exponent k with `r = 2^k`, if any.
pub fn log2_exact(r: &Rational) -> Option<i64> {
    if !r.is_positive() {
        return None;
    }
    let pow2 = |x: &BigInt| -> Option<i64> {
        if x.is_one() {
            return Some(0);
        }
        let tz = x.trailing_zeros()?;
        if (x >> tz).is_one() {
            Some(tz as i64)
        } else {
            None
        }
    };
    let a = pow2(r.numer())?;
    let b = pow2(r.denom())?;
    Some(a - b)
}

pub fn is_dyadic(r: &Rational) -> bool {
    let d = r.denom();
    d.is_one() || (d >> d.trailing_zeros().unwrap_or(0)).is_one()
}

fn is_square_free(d: u32) -> bool {
    if d < 2 {
        return false;
    }
    let mut p = 2u32;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// a + b√d. Values with b = 0 are plain rationals and mix with any radicand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quad {
    pub a: Rational,
    pub b: Rational,
    pub d: u32,
}

impl Quad {
    pub fn new(a: Rational, b: Rational, d: u32) -> Result<Quad, ArithError> {
        if !is_square_free(d) {
            return Err(ArithError::BadRadicand(d));
        }
        Ok(Quad { a, b, d })
    }

    pub fn rational(a: Rational) -> Quad {
        Quad { a, b: Rational::zero(), d: 2 }
    }

    pub fn from_int(a: i64) -> Quad {
        Quad::rational(int(a))
    }

    pub fn sqrt2() -> Quad {
        Quad { a: Rational::zero(), b: Rational::one(), d: 2 }
    }

    pub fn zero() -> Quad {
        Quad::from_int(0)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn radicand_with(&self, o: &Quad) -> Result<u32, ArithError> {
        match (self.b.is_zero(), o.b.is_zero()) {
            (true, _) => Ok(o.d),
            (_, true) => Ok(self.d),
            _ if self.d == o.d => Ok(self.d),
            _ => Err(ArithError::MixedRadicals(self.d, o.d)),
        }
    }

    pub fn try_add(&self, o: &Quad) -> Result<Quad, ArithError> {
        let d = self.radicand_with(o)?;
        Ok(Quad { a: &self.a + &o.a, b: &self.b + &o.b, d })
    }

    pub fn try_sub(&self, o: &Quad) -> Result<Quad, ArithError> {
        self.try_add(&-o.clone())
    }

    pub fn try_mul(&self, o: &Quad) -> Result<Quad, ArithError> {
        let d = self.radicand_with(o)?;
        let dd = Rational::from_integer(BigInt::from(d));
        Ok(Quad {
            a: &self.a * &o.a + &self.b * &o.b * dd,
            b: &self.a * &o.b + &self.b * &o.a,
            d,
        })
    }

    pub fn conj(&self) -> Quad {
        Quad { a: self.a.clone(), b: -self.b.clone(), d: self.d }
    }

    /// a² − b²d
    pub fn norm(&self) -> Rational {
        let dd = Rational::from_integer(BigInt::from(self.d));
        &self.a * &self.a - &self.b * &self.b * dd
    }

    pub fn try_div(&self, o: &Quad) -> Result<Quad, ArithError> {
        if o.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let n = o.norm();
        let top = self.try_mul(&o.conj())?;
        Ok(Quad { a: top.a / &n, b: top.b / &n, d: top.d })
    }

    pub fn scale(&self, r: &Rational) -> Quad {
        Quad { a: &self.a * r, b: &self.b * r, d: self.d }
    }

    pub fn add_rational(&self, r: &Rational) -> Quad {
        Quad { a: &self.a + r, b: self.b.clone(), d: self.d }
    }

    pub fn sign(&self) -> Sign {
        quad_sign(self)
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + rational_to_f64(&self.b) * (self.d as f64).sqrt()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }
}

pub fn quad_sign(q: &Quad) -> Sign {
    let sa = rational_sign(&q.a);
    let sb = rational_sign(&q.b);
    if sb == Sign::Zero {
        return sa;
    }
    if sa == Sign::Zero || sa == sb {
        return sb;
    }
    let a2 = &q.a * &q.a;
    let b2d = &q.b * &q.b * Rational::from_integer(BigInt::from(q.d));
    match a2.cmp(&b2d) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Sign::Zero,
    }
}

impl Add for &Quad {
    type Output = Quad;
    fn add(self, o: &Quad) -> Quad {
        self.try_add(o).expect("quadratic addition")
    }
}

impl Sub for &Quad {
    type Output = Quad;
    fn sub(self, o: &Quad) -> Quad {
        self.try_sub(o).expect("quadratic subtraction")
    }
}

impl Mul for &Quad {
    type Output = Quad;
    fn mul(self, o: &Quad) -> Quad {
        self.try_mul(o).expect("quadratic multiplication")
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad { a: -self.a, b: -self.b, d: self.d }
    }
}

impl PartialOrd for Quad {
    fn partial_cmp(&self, o: &Quad) -> Option<Ordering> {
        self.try_sub(o).ok().map(|x| x.sign().to_ordering())
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, -self.b.clone(), self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl FromStr for Quad {
    type Err = ArithError;

    /// Accepts `a+b*sqrt(d)`, `a-b*sqrt(d)`, `sqrtD`, `sqrt(D)` and plain rationals.
    fn from_str(s: &str) -> Result<Quad, ArithError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || ArithError::Parse(s.to_string());
        if let Some(rest) = t.strip_prefix("sqrt") {
            let inner = rest.trim_start_matches('(').trim_end_matches(')');
            let d: u32 = inner.parse().map_err(|_| err())?;
            return Quad::new(Rational::zero(), Rational::one(), d);
        }
        if let Some(pos) = t.find("*sqrt(") {
            if !t.ends_with(')') {
                return Err(err());
            }
            let d: u32 = t[pos + 6..t.len() - 1].parse().map_err(|_| err())?;
            let coeffs = &t[..pos];
            let bytes = coeffs.as_bytes();
            let mut split = None;
            for i in (1..bytes.len()).rev() {
                if bytes[i] == b'+' || bytes[i] == b'-' {
                    split = Some(i);
                    break;
                }
            }
            let i = split.ok_or_else(err)?;
            let (mut a_str, mut b_str) = (&coeffs[..i], &coeffs[i..]);
            // "a+-b": the separator is the '+' before the sign of b
            if a_str.ends_with('+') || a_str.ends_with('-') {
                b_str = &coeffs[i..];
                a_str = &coeffs[..i - 1];
                let b = parse_rational(b_str)?;
                let b = if coeffs.as_bytes()[i - 1] == b'-' { -b } else { b };
                return Quad::new(parse_rational(a_str)?, b, d);
            }
            let b_str = b_str.strip_prefix('+').unwrap_or(b_str);
            return Quad::new(parse_rational(a_str)?, parse_rational(b_str)?, d);
        }
        Ok(Quad::rational(parse_rational(&t)?))
    }
}

/// m / ℓᵏ in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LAdic {
    m: BigInt,
    k: u32,
    base: u32,
}

pub fn ladic_normalize(m: BigInt, k: i64, base: i64) -> Result<LAdic, ArithError> {
    if base < 2 {
        return Err(ArithError::BadBase(base));
    }
    if k < 0 {
        return Err(ArithError::NegativeExponent(k));
    }
    let l = BigInt::from(base);
    let (mut m, mut k) = (m, k as u32);
    if m.is_zero() {
        k = 0;
    }
    while k > 0 && m.is_multiple_of(&l) {
        m /= &l;
        k -= 1;
    }
    Ok(LAdic { m, k, base: base as u32 })
}

/// Parity of the canonical numerator; true means odd.
pub fn ladic_parity(x: &LAdic) -> Result<bool, ArithError> {
    if x.base.is_multiple_of(2) {
        return Err(ArithError::EvenBase(x.base));
    }
    Ok(x.m.is_odd())
}

impl LAdic {
    pub fn zero(base: u32) -> LAdic {
        LAdic { m: BigInt::zero(), k: 0, base }
    }

    pub fn from_int(m: i64, base: u32) -> LAdic {
        LAdic { m: BigInt::from(m), k: 0, base }
    }

    pub fn numer(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.m.clone(), num_traits::pow(BigInt::from(self.base), self.k as usize))
    }

    pub fn from_rational(r: &Rational, base: u32) -> Result<LAdic, ArithError> {
        let l = BigInt::from(base);
        let mut d = r.denom().clone();
        loop {
            let g = d.gcd(&l);
            if g.is_one() {
                break;
            }
            d /= g;
        }
        if !d.is_one() {
            return Err(ArithError::NotLAdic(r.to_string(), base));
        }
        let mut k = 0i64;
        let mut scaled = r.clone();
        while !scaled.denom().is_one() {
            scaled *= Rational::from_integer(l.clone());
            k += 1;
        }
        ladic_normalize(scaled.to_integer(), k, base as i64)
    }

    fn check_base(&self, o: &LAdic) -> Result<(), ArithError> {
        if self.base != o.base {
            Err(ArithError::Parse(format!("base {} vs base {}", self.base, o.base)))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, o: &LAdic) -> Result<LAdic, ArithError> {
        self.check_base(o)?;
        let l = BigInt::from(self.base);
        let k = self.k.max(o.k);
        let m = &self.m * num_traits::pow(l.clone(), (k - self.k) as usize)
            + &o.m * num_traits::pow(l, (k - o.k) as usize);
        ladic_normalize(m, k as i64, self.base as i64)
    }

    /// x · ℓⁿ for any integer n.
    pub fn shift(&self, n: i64) -> LAdic {
        let l = BigInt::from(self.base);
        if n >= 0 {
            let n = n as u32;
            if n >= self.k {
                let m = &self.m * num_traits::pow(l, (n - self.k) as usize);
                ladic_normalize(m, 0, self.base as i64).expect("valid base")
            } else {
                ladic_normalize(self.m.clone(), (self.k - n) as i64, self.base as i64).expect("valid base")
            }
        } else {
            ladic_normalize(self.m.clone(), self.k as i64 + (-n), self.base as i64).expect("valid base")
        }
    }

    pub fn sign(&self) -> Sign {
        Sign::of_ordering(self.m.cmp(&BigInt::zero()))
    }
}

impl Neg for LAdic {
    type Output = LAdic;
    fn neg(self) -> LAdic {
        LAdic { m: -self.m, k: self.k, base: self.base }
    }
}

impl Add for &LAdic {
    type Output = LAdic;
    fn add(self, o: &LAdic) -> LAdic {
        self.try_add(o).expect("l-adic addition")
    }
}

impl fmt::Display for LAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}^{}", self.m, self.base, self.k)
    }
}

impl LAdic {
    /// Parses `m/ℓ^k`, or a rational whose denominator is a power of ℓ.
    pub fn parse(s: &str, base: u32) -> Result<LAdic, ArithError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || ArithError::Parse(s.to_string());
        if let Some((m, rest)) = t.split_once('/') {
            if let Some((l, k)) = rest.split_once('^') {
                let m = BigInt::from_str(m).map_err(|_| err())?;
                let l: i64 = l.parse().map_err(|_| err())?;
                let k: i64 = k.parse().map_err(|_| err())?;
                if l != base as i64 {
                    return Err(ArithError::NotLAdic(s.to_string(), base));
                }
                return ladic_normalize(m, k, l);
            }
        }
        LAdic::from_rational(&parse_rational(&t)?, base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Quad {
        Quad::new(int(a), int(b), 2).unwrap()
    }

    #[test]
    fn quad_sign_cases() {
        assert_eq!(quad_sign(&q(0, 0)), Sign::Zero);
        assert_eq!(quad_sign(&q(1, 1)), Sign::Positive);
        // 9 > 8
        assert_eq!(quad_sign(&q(3, -2)), Sign::Positive);
        assert_eq!(quad_sign(&q(-3, 2)), Sign::Negative);
        assert_eq!(quad_sign(&q(1, -1)), Sign::Negative);
    }

    #[test]
    fn quad_text_round_trip() {
        for s in ["1+1*sqrt(2)", "3/2-1/2*sqrt(2)", "-7+0*sqrt(2)", "0+5/3*sqrt(3)"] {
            let x: Quad = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        let x: Quad = "1+-2*sqrt(2)".parse().unwrap();
        assert_eq!(x, q(1, -2));
        assert_eq!("sqrt2".parse::<Quad>().unwrap(), Quad::sqrt2());
        assert_eq!("5/2".parse::<Quad>().unwrap(), Quad::rational(rat(5, 2)));
        assert!("1+1*sqrt(4)".parse::<Quad>().is_err());
    }

    #[test]
    fn mixed_radicals_rejected() {
        let a = Quad::new(int(0), int(1), 2).unwrap();
        let b = Quad::new(int(0), int(1), 3).unwrap();
        assert_eq!(a.try_add(&b), Err(ArithError::MixedRadicals(2, 3)));
        // rationals embed anywhere
        assert!(a.try_add(&Quad::new(int(4), int(0), 3).unwrap()).is_ok());
    }

    #[test]
    fn quad_division() {
        let x = q(1, 1);
        let y = x.try_div(&x).unwrap();
        assert_eq!(y, q(1, 0));
        let z = q(3, 0).try_div(&q(1, 1)).unwrap();
        // 3/(1+√2) = 3(√2−1)
        assert_eq!(z, q(-3, 3));
    }

    #[test]
    fn ladic_examples() {
        let x = ladic_normalize(BigInt::from(9), 3, 3).unwrap();
        assert_eq!((x.numer().clone(), x.exponent()), (BigInt::from(1), 1));
        let z = ladic_normalize(BigInt::from(0), 5, 3).unwrap();
        assert_eq!((z.numer().clone(), z.exponent()), (BigInt::from(0), 0));
        let c = ladic_normalize(BigInt::from(2), 0, 3).unwrap();
        assert_eq!((c.numer().clone(), c.exponent()), (BigInt::from(2), 0));
        assert!(ladic_normalize(BigInt::from(1), -1, 3).is_err());
        assert!(ladic_normalize(BigInt::from(1), 1, 1).is_err());
    }

    #[test]
    fn ladic_parity_examples() {
        let third = ladic_normalize(BigInt::from(1), 1, 3).unwrap();
        assert!(ladic_parity(&third).unwrap());
        assert!(!ladic_parity(&LAdic::zero(3)).unwrap());
        let x = ladic_normalize(BigInt::from(9), 3, 3).unwrap();
        assert!(ladic_parity(&x).unwrap());
        assert!(ladic_parity(&LAdic::from_int(1, 2)).is_err());
    }

    #[test]
    fn ladic_text() {
        let x = LAdic::parse("1/3^1", 3).unwrap();
        assert_eq!(x.to_string(), "1/3^1");
        assert_eq!(LAdic::parse("-2/9", 3).unwrap().to_string(), "-2/3^2");
        assert_eq!(LAdic::parse("6", 3).unwrap().to_string(), "6/3^0");
        assert!(LAdic::parse("1/2", 3).is_err());
        assert_eq!(LAdic::parse("1/4", 6).unwrap().to_rational(), rat(1, 4));
    }

    #[test]
    fn log2_and_dyadic() {
        assert_eq!(log2_exact(&rat(1, 4)), Some(-2));
        assert_eq!(log2_exact(&int(8)), Some(3));
        assert_eq!(log2_exact(&rat(3, 4)), None);
        assert!(is_dyadic(&rat(5, 8)));
        assert!(!is_dyadic(&rat(1, 3)));
    }
}
