//! Orderings of ℤ²: a functional (a, b) over ℚ(√2) plus a tie rule on its
//! kernel when the kernel is nontrivial.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::{quad_sign, rat, ArithError, Quad, Rational};
use crate::order::{Group, Oracle};
use crate::Sign;

pub type Z2Elem = (i64, i64);

/// ℤ² with generators e₁ = (1,0), e₂ = (0,1).
#[derive(Debug, Clone, Copy, Default)]
pub struct Z2;

impl Group for Z2 {
    type Elem = Z2Elem;

    fn tag(&self) -> String {
        "z2".into()
    }
    fn identity(&self) -> Z2Elem {
        (0, 0)
    }
    fn mul(&self, x: &Z2Elem, y: &Z2Elem) -> Z2Elem {
        (x.0 + y.0, x.1 + y.1)
    }
    fn inv(&self, x: &Z2Elem) -> Z2Elem {
        (-x.0, -x.1)
    }
    fn generators(&self) -> Vec<Z2Elem> {
        vec![(1, 0), (0, 1)]
    }
    fn format(&self, x: &Z2Elem) -> String {
        format!("({},{})", x.0, x.1)
    }
    fn parse(&self, s: &str) -> Result<Z2Elem, String> {
        let v = parse_int_tuple(s.trim().trim_start_matches("z2:"))?;
        match v.as_slice() {
            [m, n] => Ok((*m, *n)),
            _ => Err(format!("expected (m,n), got {s:?}")),
        }
    }
}

/// Parses `(a,b,...)` into integers.
pub fn parse_int_tuple(s: &str) -> Result<Vec<i64>, String> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(|| format!("expected a parenthesized tuple, got {s:?}"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|e| format!("{p:?}: {e}")))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn tag(self) -> &'static str {
        match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
        }
    }

    pub fn parse(s: &str) -> Option<Side> {
        match s {
            "plus" | "+" => Some(Side::Plus),
            "minus" | "-" => Some(Side::Minus),
            _ => None,
        }
    }

    pub fn sign(self) -> Sign {
        match self {
            Side::Plus => Sign::Positive,
            Side::Minus => Sign::Negative,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Z2Error {
    #[error("functional vanishes on {0:?} but no tie rule is set")]
    Misconstructed(Z2Elem),
    #[error("ordering is already total")]
    AlreadyTotal,
    #[error("zero functional")]
    ZeroFunctional,
    #[error("ordering has irrational type")]
    NotRationalType,
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("bad descriptor {0:?}")]
    Descriptor(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Z2Ordering {
    pub a: Quad,
    pub b: Quad,
    pub tie: Option<Side>,
}

impl Z2Ordering {
    pub fn new(a: Quad, b: Quad, tie: Option<Side>) -> Result<Z2Ordering, Z2Error> {
        if a.is_zero() && b.is_zero() {
            return Err(Z2Error::ZeroFunctional);
        }
        a.try_add(&b)?;
        let o = Z2Ordering { a, b, tie };
        if o.kernel_generator().is_none() && o.tie.is_some() {
            return Err(Z2Error::AlreadyTotal);
        }
        Ok(o)
    }

    /// Primitive generator (m, n) of the kernel, with n > 0 or n = 0, m > 0.
    pub fn kernel_generator(&self) -> Option<Z2Elem> {
        if self.a.is_zero() {
            return Some((1, 0));
        }
        if self.b.is_zero() {
            return Some((0, 1));
        }
        let r = self.b.try_div(&self.a).ok()?;
        let r = r.as_rational()?;
        // m + r n = 0 with r = p/q
        let p = r.numer().to_i64()?;
        let q = r.denom().to_i64()?;
        Some((-p, q))
    }

    pub fn is_total(&self) -> bool {
        self.kernel_generator().is_none() || self.tie.is_some()
    }

    pub fn value(&self, v: &Z2Elem) -> Quad {
        let m = Rational::from_integer(BigInt::from(v.0));
        let n = Rational::from_integer(BigInt::from(v.1));
        &self.a.scale(&m) + &self.b.scale(&n)
    }

    pub fn sign(&self, v: &Z2Elem) -> Result<Sign, Z2Error> {
        let s = quad_sign(&self.value(v));
        if s != Sign::Zero || *v == (0, 0) {
            return Ok(s);
        }
        let side = self.tie.ok_or(Z2Error::Misconstructed(*v))?;
        let base = if self.a.is_zero() {
            quad_sign(&self.b) * Sign::of_i64(v.0)
        } else {
            quad_sign(&self.a) * Sign::of_i64(v.1)
        };
        Ok(side.sign() * base)
    }

    /// Reverse ordering: negated functional, same tie side.
    pub fn reversed(&self) -> Z2Ordering {
        Z2Ordering { a: -self.a.clone(), b: -self.b.clone(), tie: self.tie }
    }

    pub fn descriptor(&self) -> String {
        let side = self.tie.map(|s| format!(":{}", s.tag())).unwrap_or_default();
        if self.a == Quad::from_int(1) {
            format!("z2:psi:{}{}", self.b, side)
        } else if self.a.is_zero() && self.b == Quad::from_int(1) {
            format!("z2:psi:inf{side}")
        } else {
            format!("z2:fn:{},{}{}", self.a, self.b, side)
        }
    }

    pub fn parse(desc: &str) -> Result<Z2Ordering, Z2Error> {
        let bad = || Z2Error::Descriptor(desc.to_string());
        let body = desc.trim().strip_prefix("z2:").unwrap_or(desc.trim());
        let (body, side) = match body.rsplit_once(':') {
            Some((head, tail)) if Side::parse(tail).is_some() => (head, Side::parse(tail)),
            _ => (body, None),
        };
        let ord = if let Some(x) = body.strip_prefix("psi:") {
            if x == "inf" {
                psi_inf()
            } else {
                psi_x(x.parse::<Quad>()?)
            }
        } else if let Some(ab) = body.strip_prefix("fn:") {
            let (a, b) = ab.split_once(',').ok_or_else(bad)?;
            Z2Ordering::new(a.parse()?, b.parse()?, None)?
        } else {
            return Err(bad());
        };
        match side {
            Some(s) => completion(&ord, s),
            None => Ok(ord),
        }
    }

    pub fn oracle(&self) -> Oracle<Z2Elem> {
        let me = self.clone();
        let o = Oracle::new(Arc::new(Z2), self.descriptor(), move |v| me.sign(v).unwrap_or(Sign::Zero));
        if self.is_total() {
            o
        } else {
            o.flagged_partial()
        }
    }
}

impl fmt::Display for Z2Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

/// ψ_x(m, n) = m + x n.
pub fn psi_x(x: Quad) -> Z2Ordering {
    Z2Ordering { a: Quad::from_int(1), b: x, tie: None }
}

/// The functional (0, 1), the x = ∞ normalization.
pub fn psi_inf() -> Z2Ordering {
    Z2Ordering { a: Quad::from_int(0), b: Quad::from_int(1), tie: None }
}

pub fn completion(partial: &Z2Ordering, side: Side) -> Result<Z2Ordering, Z2Error> {
    if partial.is_total() {
        return Err(Z2Error::AlreadyTotal);
    }
    Ok(Z2Ordering { tie: Some(side), ..partial.clone() })
}

/// ℓ¹ ball of ℤ².
pub fn l1_ball(radius: i64) -> impl Iterator<Item = Z2Elem> {
    (-radius..=radius).flat_map(move |m| {
        let rest = radius - m.abs();
        (-rest..=rest).map(move |n| (m, n))
    })
}

fn agree_on_ball(p: &Z2Ordering, q: &Z2Ordering, radius: i64) -> bool {
    l1_ball(radius).all(|v| p.sign(&v).ok() == q.sign(&v).ok())
}

/// δ > 0 such that P_{x ± δ√2/2} agrees with P_x^± on the radius ball.
///
/// Starts from δ = 1/(q(2r+1)) with q the denominator of x, which satisfies
/// δ|n| < 1/q ≤ |m + xn| off the kernel, then confirms exhaustively.
pub fn completion_limit_check(x: &Rational, side: Side, radius: i64) -> Result<Rational, Z2Error> {
    let target = completion(&psi_x(Quad::rational(x.clone())), side)?;
    let q = x.denom().clone();
    let mut delta = Rational::new(BigInt::one(), q * BigInt::from(2 * radius.max(1) + 1));
    loop {
        let cand = psi_x(shifted(x, &delta, side));
        if agree_on_ball(&cand, &target, radius) {
            return Ok(delta);
        }
        delta /= Rational::from_integer(BigInt::from(2));
    }
}

/// x ± δ√2/2
fn shifted(x: &Rational, delta: &Rational, side: Side) -> Quad {
    let half = delta * rat(1, 2);
    let b = match side {
        Side::Plus => half,
        Side::Minus => -half,
    };
    Quad { a: x.clone(), b, d: 2 }
}

/// An irrational-type ordering agreeing with a rational-type total
/// ordering on the radius ball.
pub fn irrational_neighbor(ord: &Z2Ordering, radius: i64) -> Result<Z2Ordering, Z2Error> {
    if ord.kernel_generator().is_none() {
        return Err(Z2Error::NotRationalType);
    }
    let side = ord.tie.ok_or(Z2Error::Misconstructed((0, 0)))?;
    let out = if ord.a.is_zero() {
        // (±η, 1)·sign(b): the kernel (m, 0) inherits sign(m) on the plus side
        let delta = Rational::new(BigInt::one(), BigInt::from(2 * radius.max(1) + 1));
        let eta = shifted(&Rational::zero(), &delta, side);
        let f = psi_inf();
        let s = quad_sign(&ord.b);
        let o = Z2Ordering { a: eta, b: f.b, tie: None };
        if s == Sign::Negative {
            o.reversed()
        } else {
            o
        }
    } else {
        let x = ord.b.try_div(&ord.a)?;
        let x = x.as_rational().ok_or(Z2Error::NotRationalType)?.clone();
        let delta = completion_limit_check(&x, side, radius)?;
        let o = psi_x(shifted(&x, &delta, side));
        if quad_sign(&ord.a) == Sign::Negative {
            o.reversed()
        } else {
            o
        }
    };
    debug_assert!(agree_on_ball(&out, ord, radius));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;
    use crate::order::{
        agreement_radius, conradian_check, crossing_search, semigroup_check, totality_check,
        Agreement, Ball, ConradianResult,
    };

    fn sqrt2() -> Z2Ordering {
        psi_x(Quad::sqrt2())
    }

    #[test]
    fn cmp_examples() {
        let o = sqrt2().oracle();
        assert_eq!(o.cmp(&(0, 0), &(1, 1)).unwrap(), Sign::Positive);
        assert_eq!(o.cmp(&(1, 1), &(1, 0)).unwrap(), Sign::Negative);
        assert_eq!(o.reverse().sign(&(1, 1)), Sign::Negative);
    }

    #[test]
    fn sign_examples() {
        assert_eq!(sqrt2().sign(&(1, 1)).unwrap(), Sign::Positive);
        assert_eq!(sqrt2().sign(&(0, 0)).unwrap(), Sign::Zero);
        let p0 = psi_x(Quad::from_int(0));
        assert_eq!(p0.kernel_generator(), Some((0, 1)));
        assert!(!p0.is_total());
        assert_eq!(p0.sign(&(0, 1)), Err(Z2Error::Misconstructed((0, 1))));
        assert_eq!(completion(&p0, Side::Plus).unwrap().sign(&(0, 1)).unwrap(), Sign::Positive);
        assert_eq!(completion(&p0, Side::Minus).unwrap().sign(&(0, 1)).unwrap(), Sign::Negative);
        let pinf = completion(&psi_inf(), Side::Plus).unwrap();
        assert_eq!(pinf.sign(&(1, 0)).unwrap(), Sign::Positive);
        assert!(sqrt2().is_total());
        assert!(!psi_x(Quad::rational(rat(3, 2))).is_total());
        assert_eq!(completion(&sqrt2(), Side::Plus), Err(Z2Error::AlreadyTotal));
    }

    #[test]
    fn tie_matches_nearby_irrationals() {
        // P_x^+ is the limit of P_{x'} as x' decreases to x
        for x in [rat(0, 1), rat(3, 2), rat(-2, 3)] {
            for side in [Side::Plus, Side::Minus] {
                let exact = completion(&psi_x(Quad::rational(x.clone())), side).unwrap();
                let near = psi_x(shifted(&x, &rat(1, 1000), side));
                assert!(agree_on_ball(&exact, &near, 5), "{x} {side:?}");
            }
        }
    }

    #[test]
    fn descriptors_round_trip() {
        let cases = [
            sqrt2(),
            completion(&psi_x(Quad::rational(rat(3, 2))), Side::Minus).unwrap(),
            completion(&psi_inf(), Side::Plus).unwrap(),
            sqrt2().reversed(),
        ];
        for c in cases {
            let d = c.descriptor();
            assert_eq!(Z2Ordering::parse(&d).unwrap(), c, "{d}");
        }
        assert_eq!(sqrt2().descriptor(), "z2:psi:0+1*sqrt(2)");
        assert_eq!(Z2Ordering::parse("z2:psi:sqrt2").unwrap(), sqrt2());
    }

    #[test]
    fn agreement_with_rational_neighbor() {
        let a = sqrt2().oracle();
        let b = completion(&psi_x(Quad::rational(rat(3, 2))), Side::Plus).unwrap().oracle();
        // oracle: scan radii
        let mut first = None;
        'outer: for r in 0..=8i64 {
            for v in l1_ball(r) {
                if sqrt2().sign(&v).unwrap() != b.sign(&v) {
                    first = Some(r);
                    break 'outer;
                }
            }
        }
        match agreement_radius(&a, &b, 8) {
            Agreement::DisagreeAt { radius, .. } => assert_eq!(Some(radius as i64), first),
            Agreement::AgreeUpToBound => panic!("expected a disagreement"),
        }
        assert_eq!(agreement_radius(&a, &a.reverse(), 3), Agreement::DisagreeAt { radius: 1, witness: (1, 0) });
    }

    #[test]
    fn limit_check_examples() {
        let d = completion_limit_check(&int(0), Side::Plus, 3).unwrap();
        assert!(d <= rat(1, 7) && d > int(0));
        // radius 1: δ = 1/2 already separates the generators
        let exact = completion(&psi_x(Quad::from_int(0)), Side::Plus).unwrap();
        assert!(agree_on_ball(&psi_x(shifted(&int(0), &rat(1, 2), Side::Plus)), &exact, 1));
        let dm = completion_limit_check(&int(0), Side::Minus, 3).unwrap();
        let exact_m = completion(&psi_x(Quad::from_int(0)), Side::Minus).unwrap();
        assert!(agree_on_ball(&psi_x(shifted(&int(0), &dm, Side::Minus)), &exact_m, 3));
    }

    #[test]
    fn neighbors_for_rational_types() {
        let base = [
            psi_x(Quad::from_int(0)),
            psi_x(Quad::rational(rat(3, 2))),
            psi_inf(),
            psi_x(Quad::from_int(-1)).reversed(),
        ];
        for o in base {
            for side in [Side::Plus, Side::Minus] {
                let c = completion(&o, side).unwrap();
                for r in 1..=4 {
                    let n = irrational_neighbor(&c, r).unwrap();
                    assert!(n.kernel_generator().is_none());
                    assert!(agree_on_ball(&n, &c, r), "{c} r={r}");
                }
            }
        }
    }

    #[test]
    fn suites_and_conradian() {
        let ball = Ball::new(&Z2, 3);
        for o in [sqrt2(), completion(&psi_x(Quad::rational(rat(3, 2))), Side::Plus).unwrap()] {
            let or = o.oracle();
            assert!(totality_check(&or, &ball).is_ok());
            assert!(semigroup_check(&or, &ball).is_ok());
            assert_eq!(conradian_check(&or, &ball), ConradianResult::Pass);
        }
        assert_eq!(crossing_search(&sqrt2().oracle(), &Ball::new(&Z2, 2), 4), None);
    }
}
