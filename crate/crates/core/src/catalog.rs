//! Tararin groups Tₙ, the groups Cₙ = ℤ × ℤ[1/3] × ℤⁿ and the Heisenberg group,
//! with their sign-vector and convex-extension orderings.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::exact::{ladic_parity, LAdic, Quad};
use crate::order::{Group, Oracle};
use crate::z2::{l1_ball, parse_int_tuple, Z2Ordering};
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("bad sign vector {0:?}")]
    BadSignVector(String),
    #[error("conjugating exponent must be nonzero")]
    ZeroExponent,
    #[error("parameter must be irrational")]
    RationalParameter,
    #[error("bad element {0:?}")]
    Parse(String),
}

/// One sign per level of a rational series, listed from the top level down.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn parse(s: &str) -> Result<SignVector, CatalogError> {
        let t = s.trim();
        if t.is_empty() {
            return Err(CatalogError::BadSignVector(s.to_string()));
        }
        t.chars()
            .map(|c| match c {
                '+' => Ok(Sign::Positive),
                '-' => Ok(Sign::Negative),
                _ => Err(CatalogError::BadSignVector(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(SignVector)
    }

    /// All 2ᵏ vectors, `+` before `-` at each position.
    pub fn all(len: usize) -> Vec<SignVector> {
        (0..1usize << len)
            .map(|mask| {
                SignVector(
                    (0..len)
                        .map(|i| if mask >> (len - 1 - i) & 1 == 0 { Sign::Positive } else { Sign::Negative })
                        .collect(),
                )
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Flips position i (0 = top).
    pub fn flipped(&self, i: usize) -> SignVector {
        let mut v = self.0.clone();
        v[i] = -v[i];
        SignVector(v)
    }

    /// Sign of the top nonzero level times its bit.
    pub fn apply(&self, levels: &[Sign]) -> Sign {
        levels
            .iter()
            .zip(&self.0)
            .find(|(s, _)| **s != Sign::Zero)
            .map_or(Sign::Zero, |(s, b)| *s * *b)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(if *s == Sign::Positive { "+" } else { "-" })?;
        }
        Ok(())
    }
}

fn parity_sign(odd: bool) -> i64 {
    if odd {
        -1
    } else {
        1
    }
}

fn strip_tuple<'a>(s: &'a str, prefix: &str) -> &'a str {
    let t = s.trim();
    t.strip_prefix(prefix).unwrap_or(t)
}

/// Coordinates (αₙ, …, α₁).
pub type TElement = Vec<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Tararin {
    pub n: usize,
}

impl Tararin {
    pub fn new(n: usize) -> Result<Tararin, CatalogError> {
        if n == 0 {
            return Err(CatalogError::ZeroRank);
        }
        Ok(Tararin { n })
    }
}

/// (αₙ + α′ₙ, (−1)^{α′ₙ}α_{n−1} + α′_{n−1}, …, (−1)^{α′₂}α₁ + α′₁)
pub fn t_mul(x: &[i64], y: &[i64]) -> Result<TElement, CatalogError> {
    if x.len() != y.len() {
        return Err(CatalogError::RankMismatch(x.len(), y.len()));
    }
    Ok((0..x.len())
        .map(|i| {
            let s = if i == 0 { 1 } else { parity_sign(y[i - 1] % 2 != 0) };
            s * x[i] + y[i]
        })
        .collect())
}

/// Solves x·y = id from the top coordinate down.
pub fn t_inv(x: &[i64]) -> TElement {
    let mut y = vec![0; x.len()];
    for i in 0..x.len() {
        let s = if i == 0 { 1 } else { parity_sign(y[i - 1] % 2 != 0) };
        y[i] = -s * x[i];
    }
    y
}

impl Group for Tararin {
    type Elem = TElement;

    fn tag(&self) -> String {
        format!("tararin:{}", self.n)
    }

    fn identity(&self) -> TElement {
        vec![0; self.n]
    }

    fn mul(&self, x: &TElement, y: &TElement) -> TElement {
        t_mul(x, y).expect("equal ranks")
    }

    fn inv(&self, x: &TElement) -> TElement {
        t_inv(x)
    }

    /// aₙ, …, a₁
    fn generators(&self) -> Vec<TElement> {
        (0..self.n)
            .map(|i| {
                let mut v = vec![0; self.n];
                v[i] = 1;
                v
            })
            .collect()
    }

    fn format(&self, x: &TElement) -> String {
        let body: Vec<String> = x.iter().map(|a| a.to_string()).collect();
        format!("t{}:({})", self.n, body.join(","))
    }

    fn parse(&self, s: &str) -> Result<TElement, String> {
        let v = parse_int_tuple(strip_tuple(s, &format!("t{}:", self.n)))?;
        if v.len() != self.n {
            return Err(format!("expected {} coordinates, got {}", self.n, v.len()));
        }
        Ok(v)
    }

    fn contains(&self, x: &TElement) -> bool {
        x.len() == self.n
    }
}

fn coordinate_signs(x: &[i64]) -> Vec<Sign> {
    x.iter().map(|a| Sign::of_i64(*a)).collect()
}

pub fn t_ordering(group: Tararin, sv: &SignVector) -> Result<Oracle<TElement>, CatalogError> {
    if sv.len() != group.n {
        return Err(CatalogError::RankMismatch(sv.len(), group.n));
    }
    let v = sv.clone();
    Ok(Oracle::new(Arc::new(group), sv.to_string(), move |x: &TElement| v.apply(&coordinate_signs(x))))
}

pub fn enumerate_t_orderings(n: usize) -> Result<Vec<Oracle<TElement>>, CatalogError> {
    let g = Tararin::new(n)?;
    SignVector::all(n).iter().map(|sv| t_ordering(g, sv)).collect()
}

/// (γ, t, αₙ, …, α₁)
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnElement {
    pub gamma: i64,
    pub t: LAdic,
    pub alpha: Vec<i64>,
}

impl CnElement {
    /// Level signs from the top: γ, t, αₙ, …, α₁.
    pub fn level_signs(&self) -> Vec<Sign> {
        let mut v = vec![Sign::of_i64(self.gamma), self.t.sign()];
        v.extend(self.alpha.iter().map(|a| Sign::of_i64(*a)));
        v
    }

    /// Index (0 = top) of the highest nonzero level.
    pub fn top_level(&self) -> Option<usize> {
        self.level_signs().iter().position(|s| *s != Sign::Zero)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cn {
    pub n: usize,
}

impl Cn {
    pub fn new(n: usize) -> Result<Cn, CatalogError> {
        if n == 0 {
            return Err(CatalogError::ZeroRank);
        }
        Ok(Cn { n })
    }

    pub fn c(&self) -> CnElement {
        CnElement { gamma: 1, t: LAdic::zero(3), alpha: vec![0; self.n] }
    }

    pub fn b(&self) -> CnElement {
        CnElement { gamma: 0, t: LAdic::from_int(1, 3), alpha: vec![0; self.n] }
    }

    /// aᵢ for 1 ≤ i ≤ n.
    pub fn a(&self, i: usize) -> CnElement {
        let mut alpha = vec![0; self.n];
        alpha[self.n - i] = 1;
        CnElement { gamma: 0, t: LAdic::zero(3), alpha }
    }

    pub fn levels(&self) -> usize {
        self.n + 2
    }
}

fn cn_alpha_twist(y: &CnElement, i: usize) -> i64 {
    if i == 0 {
        parity_sign(ladic_parity(&y.t).expect("odd base"))
    } else {
        parity_sign(y.alpha[i - 1] % 2 != 0)
    }
}

pub fn cn_mul(x: &CnElement, y: &CnElement) -> Result<CnElement, CatalogError> {
    if x.alpha.len() != y.alpha.len() {
        return Err(CatalogError::RankMismatch(x.alpha.len(), y.alpha.len()));
    }
    let t = x.t.shift(-y.gamma).try_add(&y.t).expect("triadic");
    let alpha = (0..x.alpha.len()).map(|i| cn_alpha_twist(y, i) * x.alpha[i] + y.alpha[i]).collect();
    Ok(CnElement { gamma: x.gamma + y.gamma, t, alpha })
}

pub fn cn_inv(x: &CnElement) -> CnElement {
    let mut y = CnElement { gamma: -x.gamma, t: -x.t.shift(x.gamma), alpha: vec![0; x.alpha.len()] };
    for i in 0..x.alpha.len() {
        y.alpha[i] = -cn_alpha_twist(&y, i) * x.alpha[i];
    }
    y
}

impl Group for Cn {
    type Elem = CnElement;

    fn tag(&self) -> String {
        format!("cn:{}", self.n)
    }

    fn identity(&self) -> CnElement {
        CnElement { gamma: 0, t: LAdic::zero(3), alpha: vec![0; self.n] }
    }

    fn mul(&self, x: &CnElement, y: &CnElement) -> CnElement {
        cn_mul(x, y).expect("equal ranks")
    }

    fn inv(&self, x: &CnElement) -> CnElement {
        cn_inv(x)
    }

    /// c, b, aₙ, …, a₁
    fn generators(&self) -> Vec<CnElement> {
        let mut v = vec![self.c(), self.b()];
        v.extend((1..=self.n).rev().map(|i| self.a(i)));
        v
    }

    fn format(&self, x: &CnElement) -> String {
        let mut parts = vec![x.gamma.to_string(), x.t.to_string()];
        parts.extend(x.alpha.iter().map(|a| a.to_string()));
        format!("cn:{}:({})", self.n, parts.join(","))
    }

    fn parse(&self, s: &str) -> Result<CnElement, String> {
        let body = strip_tuple(s, &format!("cn:{}:", self.n));
        let inner = body
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| format!("expected a tuple, got {s:?}"))?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != self.n + 2 {
            return Err(format!("expected {} coordinates, got {}", self.n + 2, parts.len()));
        }
        let gamma: i64 = parts[0].parse().map_err(|e| format!("{:?}: {e}", parts[0]))?;
        let t = LAdic::parse(parts[1], 3).map_err(|e| e.to_string())?;
        let alpha = parts[2..]
            .iter()
            .map(|p| p.parse::<i64>().map_err(|e| format!("{p:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CnElement { gamma, t, alpha })
    }

    fn contains(&self, x: &CnElement) -> bool {
        x.alpha.len() == self.n && x.t.base() == 3
    }
}

pub fn cn_ordering(group: Cn, sv: &SignVector) -> Result<Oracle<CnElement>, CatalogError> {
    if sv.len() != group.levels() {
        return Err(CatalogError::RankMismatch(sv.len(), group.levels()));
    }
    let v = sv.clone();
    Ok(Oracle::new(Arc::new(group), sv.to_string(), move |x: &CnElement| v.apply(&x.level_signs())))
}

pub fn enumerate_cn_corderings(n: usize) -> Result<Vec<Oracle<CnElement>>, CatalogError> {
    let g = Cn::new(n)?;
    SignVector::all(g.levels()).iter().map(|sv| cn_ordering(g, sv)).collect()
}

/// Flips the ordering on the convex jump at `level` (0 = top): reverse on the
/// convex subgroup with top level ≥ `level`, then again on the one below it.
pub fn cn_flip_jump(o: &Oracle<CnElement>, level: usize) -> Oracle<CnElement> {
    let upper = move |x: &CnElement| x.top_level().is_none_or(|t| t >= level);
    let lower = move |x: &CnElement| x.top_level().is_none_or(|t| t > level);
    o.flip_on_convex(&format!("G^{level}"), upper).flip_on_convex(&format!("G_{level}"), lower)
}

/// A level no listed element has as its top level, flipped: the new ordering
/// keeps every listed sign. None when the set meets every jump.
pub fn cn_flip_preserving(o: &Oracle<CnElement>, positives: &[CnElement], levels: usize) -> Option<(usize, Oracle<CnElement>)> {
    (0..levels)
        .rev()
        .find(|l| positives.iter().all(|x| x.top_level() != Some(*l)))
        .map(|l| (l, cn_flip_jump(o, l)))
}

/// cᵏ bʲ aⁱ stored as (k, j, i).
pub type HElement = (i64, i64, i64);

pub fn h_mul(x: &HElement, y: &HElement) -> HElement {
    (x.0 + y.0 + x.2 * y.1, x.1 + y.1, x.2 + y.2)
}

pub fn h_inv(x: &HElement) -> HElement {
    (-x.0 + x.2 * x.1, -x.1, -x.2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Heisenberg;

impl Heisenberg {
    pub fn a() -> HElement {
        (0, 0, 1)
    }

    pub fn b() -> HElement {
        (0, 1, 0)
    }

    pub fn c() -> HElement {
        (1, 0, 0)
    }
}

impl Group for Heisenberg {
    type Elem = HElement;

    fn tag(&self) -> String {
        "heisenberg".into()
    }

    fn identity(&self) -> HElement {
        (0, 0, 0)
    }

    fn mul(&self, x: &HElement, y: &HElement) -> HElement {
        h_mul(x, y)
    }

    fn inv(&self, x: &HElement) -> HElement {
        h_inv(x)
    }

    /// a, b, c
    fn generators(&self) -> Vec<HElement> {
        vec![Heisenberg::a(), Heisenberg::b(), Heisenberg::c()]
    }

    fn format(&self, x: &HElement) -> String {
        format!("heis:({},{},{})", x.0, x.1, x.2)
    }

    fn parse(&self, s: &str) -> Result<HElement, String> {
        match parse_int_tuple(strip_tuple(s, "heis:"))?.as_slice() {
            [k, j, i] => Ok((*k, *j, *i)),
            v => Err(format!("expected 3 coordinates, got {}", v.len())),
        }
    }
}

/// ℤ with its two orderings, as the top quotient of the Heisenberg group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Integers;

impl Group for Integers {
    type Elem = i64;

    fn tag(&self) -> String {
        "z".into()
    }

    fn identity(&self) -> i64 {
        0
    }

    fn mul(&self, x: &i64, y: &i64) -> i64 {
        x + y
    }

    fn inv(&self, x: &i64) -> i64 {
        -x
    }

    fn generators(&self) -> Vec<i64> {
        vec![1]
    }

    fn format(&self, x: &i64) -> String {
        x.to_string()
    }

    fn parse(&self, s: &str) -> Result<i64, String> {
        s.trim().parse().map_err(|e| format!("{s:?}: {e}"))
    }
}

pub fn z_ordering(top: Sign) -> Oracle<i64> {
    let name = if top == Sign::Negative { "-" } else { "+" };
    Oracle::new(Arc::new(Integers), name, move |x: &i64| Sign::of_i64(*x) * top)
}

/// Lexicographic ordering: the sign of aⁱ decides off ⟨b, c⟩, the ℤ² ordering
/// of (k, j) (e₁ = c, e₂ = b) decides on it.
pub fn h_ordering(inner: &Z2Ordering, top: Sign) -> Oracle<HElement> {
    let group: Arc<dyn Group<Elem = HElement>> = Arc::new(Heisenberg);
    let z2 = inner.clone();
    let sub = Oracle::new(group.clone(), inner.descriptor(), move |x: &HElement| {
        z2.sign(&(x.0, x.1)).unwrap_or(Sign::Zero)
    });
    let top_name = if top == Sign::Negative { "-" } else { "+" };
    Oracle::convex_extension(group, z_ordering(top), sub, |x: &HElement| x.2 == 0, |x: &HElement| x.2)
        .renamed(format!("h:{}:{top_name}", inner.descriptor()))
}

/// Parses `h:<z2 descriptor>:<+|->`.
pub fn h_ordering_parse(desc: &str) -> Result<Oracle<HElement>, CatalogError> {
    let bad = || CatalogError::Parse(desc.to_string());
    let body = desc.trim().strip_prefix("h:").ok_or_else(bad)?;
    let (z, top) = body.rsplit_once(':').ok_or_else(bad)?;
    let top = match top {
        "+" => Sign::Positive,
        "-" => Sign::Negative,
        _ => return Err(bad()),
    };
    let inner = Z2Ordering::parse(z).map_err(|_| bad())?;
    Ok(h_ordering(&inner, top))
}

/// Conjugating h_ordering(P_x, +) by aⁿ moves the functional (1, x) to (1, x + n);
/// returns an element of ⟨b, c⟩ whose sign changes.
pub fn h_conjugacy_distinct(x: &Quad, n: i64) -> Result<HElement, CatalogError> {
    if n == 0 {
        return Err(CatalogError::ZeroExponent);
    }
    if x.b.is_zero() {
        return Err(CatalogError::RationalParameter);
    }
    let o = h_ordering(&crate::z2::psi_x(x.clone()), Sign::Positive);
    let an = (0, 0, n);
    let c = o.conjugate(&an).expect("heisenberg element");
    for r in 1.. {
        for (k, j) in l1_ball(r) {
            let y = (k, j, 0);
            if o.sign(&y) != c.sign(&y) {
                return Ok(y);
            }
        }
    }
    unreachable!()
}

/// Conjugates of o by h, h², …, h^k are pairwise distinct on `sample`.
pub fn conjugates_pairwise_distinct<E: crate::order::Element>(o: &Oracle<E>, h: &E, k: i64, sample: &[E]) -> bool {
    let gr = o.group();
    let cs: Vec<Oracle<E>> = (1..=k).map(|i| o.conjugate(&gr.pow(h, i)).expect("same universe")).collect();
    (0..cs.len()).all(|i| (i + 1..cs.len()).all(|j| sample.iter().any(|x| cs[i].sign(x) != cs[j].sign(x))))
}
