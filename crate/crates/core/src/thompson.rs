//! Thompson's group F as dyadic piecewise linear maps of [0, 1], its eight
//! isolated bi-orderings, the Λ families and the Conrad homomorphism.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{int, is_dyadic, log2_exact, parse_rational, quad_sign, rat, Quad, Rational};
use crate::order::{Ball, Group, Oracle};
use crate::z2::Z2Ordering;
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ThompsonError {
    #[error("breakpoints must run from (0,0) to (1,1)")]
    Endpoints,
    #[error("breakpoints must be strictly increasing")]
    NotIncreasing,
    #[error("{0} is not dyadic")]
    NotDyadic(String),
    #[error("slope {0} is not a power of 2")]
    Slope(String),
    #[error("the identity has no nontrivial breakpoints")]
    Identity,
    #[error("zero functional")]
    ZeroFunctional,
    #[error("Λ needs a total ℤ² ordering")]
    NotTotal,
    #[error("unknown ordering {0:?}")]
    Descriptor(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// Canonical breakpoint list: consecutive segments have distinct slopes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FElement {
    bps: Vec<(Rational, Rational)>,
}

fn slope(p: &(Rational, Rational), q: &(Rational, Rational)) -> Rational {
    (&q.1 - &p.1) / (&q.0 - &p.0)
}

impl FElement {
    /// Validates and drops breakpoints between segments of equal slope.
    pub fn new(bps: Vec<(Rational, Rational)>) -> Result<FElement, ThompsonError> {
        let zero = (Rational::zero(), Rational::zero());
        let one = (Rational::one(), Rational::one());
        if bps.first() != Some(&zero) || bps.last() != Some(&one) {
            return Err(ThompsonError::Endpoints);
        }
        for w in bps.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(ThompsonError::NotIncreasing);
            }
        }
        for (x, y) in &bps {
            for c in [x, y] {
                if !is_dyadic(c) {
                    return Err(ThompsonError::NotDyadic(c.to_string()));
                }
            }
        }
        let mut out: Vec<(Rational, Rational)> = vec![bps[0].clone()];
        for i in 1..bps.len() {
            let s = slope(&bps[i - 1], &bps[i]);
            if log2_exact(&s).is_none() {
                return Err(ThompsonError::Slope(s.to_string()));
            }
            if i + 1 < bps.len() && s == slope(&bps[i], &bps[i + 1]) {
                continue;
            }
            out.push(bps[i].clone());
        }
        Ok(FElement { bps: out })
    }

    pub fn identity() -> FElement {
        FElement { bps: vec![(int(0), int(0)), (int(1), int(1))] }
    }

    pub fn x0() -> FElement {
        FElement::new(vec![
            (int(0), int(0)),
            (rat(1, 2), rat(1, 4)),
            (rat(3, 4), rat(1, 2)),
            (int(1), int(1)),
        ])
        .expect("x0 is an element of F")
    }

    /// Identity on [0, 1/2], a half-scale copy of x₀ on [1/2, 1].
    pub fn x1() -> FElement {
        FElement::new(vec![
            (int(0), int(0)),
            (rat(1, 2), rat(1, 2)),
            (rat(3, 4), rat(5, 8)),
            (rat(7, 8), rat(3, 4)),
            (int(1), int(1)),
        ])
        .expect("x1 is an element of F")
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.bps
    }

    pub fn is_identity(&self) -> bool {
        self.bps.len() == 2
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        let i = self.bps.partition_point(|p| p.0 <= *x).clamp(1, self.bps.len() - 1);
        let (p, q) = (&self.bps[i - 1], &self.bps[i]);
        &p.1 + slope(p, q) * (x - &p.0)
    }

    pub fn inverse(&self) -> FElement {
        FElement { bps: self.bps.iter().map(|(x, y)| (y.clone(), x.clone())).collect() }
    }

    /// Slopes of the segments, left to right.
    pub fn slopes(&self) -> Vec<Rational> {
        self.bps.windows(2).map(|w| slope(&w[0], &w[1])).collect()
    }

    /// f′₊(0) and f′₋(1).
    pub fn end_slopes(&self) -> (Rational, Rational) {
        let s = self.slopes();
        (s[0].clone(), s[s.len() - 1].clone())
    }

    /// (log₂ f′₊(0), log₂ f′₋(1)).
    pub fn log_slopes(&self) -> (i64, i64) {
        let (a, b) = self.end_slopes();
        (
            log2_exact(&a).expect("slopes are powers of 2"),
            log2_exact(&b).expect("slopes are powers of 2"),
        )
    }

    pub fn parse(s: &str) -> Result<FElement, ThompsonError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || ThompsonError::Parse(s.to_string());
        if t.starts_with('[') {
            let inner = t.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(bad)?;
            let mut bps = Vec::new();
            for part in inner.split("),") {
                let p = part.trim_start_matches('(').trim_end_matches(')');
                let (x, y) = p.split_once(',').ok_or_else(bad)?;
                bps.push((
                    parse_rational(x).map_err(|_| bad())?,
                    parse_rational(y).map_err(|_| bad())?,
                ));
            }
            return FElement::new(bps);
        }
        if t.is_empty() || t == "id" {
            return Ok(FElement::identity());
        }
        // Words like x0 x1^-1 X0, read as products.
        let mut acc = FElement::identity();
        for tok in s.split(|c: char| c.is_whitespace() || c == '*').filter(|x| !x.is_empty()) {
            let (base, inv) = match tok.strip_suffix("^-1") {
                Some(b) => (b, true),
                None => (tok, false),
            };
            let (g, inv) = match base {
                "x0" => (FElement::x0(), inv),
                "x1" => (FElement::x1(), inv),
                "X0" => (FElement::x0(), !inv),
                "X1" => (FElement::x1(), !inv),
                _ => return Err(bad()),
            };
            acc = f_compose(&acc, &if inv { g.inverse() } else { g });
        }
        Ok(acc)
    }
}

impl fmt::Display for FElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (x, y)) in self.bps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({x},{y})")?;
        }
        write!(f, "]")
    }
}

/// f ∘ g: g first.
pub fn f_compose(f: &FElement, g: &FElement) -> FElement {
    let ginv = g.inverse();
    let mut xs: Vec<Rational> = g.bps.iter().map(|p| p.0.clone()).collect();
    xs.extend(f.bps.iter().map(|p| ginv.apply(&p.0)));
    xs.sort();
    xs.dedup();
    let bps = xs.into_iter().map(|x| {
        let y = f.apply(&g.apply(&x));
        (x, y)
    });
    FElement::new(bps.collect()).expect("F is closed under composition")
}

pub fn f_invert(f: &FElement) -> FElement {
    f.inverse()
}

/// σ(f)(x) = 1 − f(1 − x).
pub fn sigma_conj(f: &FElement) -> FElement {
    let one = Rational::one();
    let bps = f.bps.iter().rev().map(|(x, y)| (&one - x, &one - y)).collect();
    FElement::new(bps).expect("σ preserves F")
}

/// Leftmost and rightmost points of nontrivial derivative with the lateral
/// slopes there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakpointStats {
    pub x_minus: Rational,
    pub x_plus: Rational,
    pub right_slope: Rational,
    pub left_slope: Rational,
}

pub fn breakpoint_stats(f: &FElement) -> Result<BreakpointStats, ThompsonError> {
    if f.is_identity() {
        return Err(ThompsonError::Identity);
    }
    let s = f.slopes();
    let one = Rational::one();
    let i = s.iter().position(|x| *x != one).expect("non-identity has a nontrivial slope");
    let j = s.iter().rposition(|x| *x != one).expect("non-identity has a nontrivial slope");
    Ok(BreakpointStats {
        x_minus: f.bps[i].0.clone(),
        x_plus: f.bps[j + 1].0.clone(),
        right_slope: s[i].clone(),
        left_slope: s[j].clone(),
    })
}

/// f′₊(0) = f′₋(1) = 1.
pub fn in_derived(f: &FElement) -> bool {
    let (a, b) = f.end_slopes();
    a.is_one() && b.is_one()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsoKind {
    XMinusPlus,
    XMinusMinus,
    XPlusPlus,
    XPlusMinus,
    ZeroXMinusPM,
    ZeroXMinusMP,
    OneXPlusPM,
    OneXPlusMP,
}

impl IsoKind {
    pub const ALL: [IsoKind; 8] = [
        IsoKind::XMinusPlus,
        IsoKind::XMinusMinus,
        IsoKind::XPlusPlus,
        IsoKind::XPlusMinus,
        IsoKind::ZeroXMinusPM,
        IsoKind::ZeroXMinusMP,
        IsoKind::OneXPlusPM,
        IsoKind::OneXPlusMP,
    ];

    /// The four orderings that survive on F′.
    pub const DERIVED: [IsoKind; 4] =
        [IsoKind::XMinusPlus, IsoKind::XMinusMinus, IsoKind::XPlusPlus, IsoKind::XPlusMinus];

    pub fn tag(self) -> &'static str {
        match self {
            IsoKind::XMinusPlus => "xminus+",
            IsoKind::XMinusMinus => "xminus-",
            IsoKind::XPlusPlus => "xplus+",
            IsoKind::XPlusMinus => "xplus-",
            IsoKind::ZeroXMinusPM => "0xminus+-",
            IsoKind::ZeroXMinusMP => "0xminus-+",
            IsoKind::OneXPlusPM => "1xplus+-",
            IsoKind::OneXPlusMP => "1xplus-+",
        }
    }

    pub fn parse(s: &str) -> Option<IsoKind> {
        IsoKind::ALL.into_iter().find(|k| k.tag() == s)
    }

    /// The ordering this one coincides with on F′.
    pub fn on_derived(self) -> IsoKind {
        match self {
            IsoKind::ZeroXMinusPM => IsoKind::XMinusMinus,
            IsoKind::ZeroXMinusMP => IsoKind::XMinusPlus,
            IsoKind::OneXPlusPM => IsoKind::XPlusMinus,
            IsoKind::OneXPlusMP => IsoKind::XPlusPlus,
            k => k,
        }
    }

    /// The image under conjugation by x ↦ 1 − x.
    pub fn sigma(self) -> IsoKind {
        match self {
            IsoKind::XMinusPlus => IsoKind::XPlusMinus,
            IsoKind::XPlusMinus => IsoKind::XMinusPlus,
            IsoKind::XMinusMinus => IsoKind::XPlusPlus,
            IsoKind::XPlusPlus => IsoKind::XMinusMinus,
            IsoKind::ZeroXMinusPM => IsoKind::OneXPlusMP,
            IsoKind::OneXPlusMP => IsoKind::ZeroXMinusPM,
            IsoKind::ZeroXMinusMP => IsoKind::OneXPlusPM,
            IsoKind::OneXPlusPM => IsoKind::ZeroXMinusMP,
        }
    }
}

pub fn isolated_sign(kind: IsoKind, f: &FElement) -> Sign {
    let Ok(st) = breakpoint_stats(f) else {
        return Sign::Zero;
    };
    let one = Rational::one();
    let at_zero = st.x_minus.is_zero();
    let at_one = st.x_plus.is_one();
    let pos = match kind {
        IsoKind::XMinusPlus => st.right_slope > one,
        IsoKind::XMinusMinus => st.right_slope < one,
        IsoKind::XPlusPlus => st.left_slope < one,
        IsoKind::XPlusMinus => st.left_slope > one,
        IsoKind::ZeroXMinusPM => (st.right_slope > one) == at_zero,
        IsoKind::ZeroXMinusMP => (st.right_slope < one) == at_zero,
        IsoKind::OneXPlusPM => (st.left_slope < one) == at_one,
        IsoKind::OneXPlusMP => (st.left_slope > one) == at_one,
    };
    if pos {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// Off F′ the ℤ² ordering of the endpoint log-slopes decides; on F′ one of
/// the four F′ orderings.
pub fn lambda_sign(z2: &Z2Ordering, fprime: IsoKind, f: &FElement) -> Sign {
    if in_derived(f) {
        isolated_sign(fprime, f)
    } else {
        z2.sign(&f.log_slopes()).unwrap_or(Sign::Zero)
    }
}

/// τ(f) = a·log₂ f′₊(0) + b·log₂ f′₋(1).
pub fn conrad_hom(a: &Quad, b: &Quad, f: &FElement) -> Result<Quad, ThompsonError> {
    if a.is_zero() && b.is_zero() {
        return Err(ThompsonError::ZeroFunctional);
    }
    let (m, n) = f.log_slopes();
    Ok(&a.scale(&int(m)) + &b.scale(&int(n)))
}

#[derive(Debug, Clone)]
pub enum FOrdering {
    Isolated(IsoKind),
    Lambda(Z2Ordering, IsoKind),
}

impl FOrdering {
    pub fn lambda(z2: Z2Ordering, fprime: IsoKind) -> Result<FOrdering, ThompsonError> {
        if !z2.is_total() {
            return Err(ThompsonError::NotTotal);
        }
        if !IsoKind::DERIVED.contains(&fprime) {
            return Err(ThompsonError::Descriptor(fprime.tag().into()));
        }
        Ok(FOrdering::Lambda(z2, fprime))
    }

    pub fn sign(&self, f: &FElement) -> Sign {
        match self {
            FOrdering::Isolated(k) => isolated_sign(*k, f),
            FOrdering::Lambda(z, k) => lambda_sign(z, *k, f),
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            FOrdering::Isolated(k) => format!("thompson:{}", k.tag()),
            FOrdering::Lambda(z, k) => format!("thompson:lambda:{}:{}", z.descriptor(), k.tag()),
        }
    }

    /// `thompson:xminus+`, `thompson:lambda:Z2DESC:xplus-`, …
    pub fn parse(s: &str) -> Result<FOrdering, ThompsonError> {
        let bad = || ThompsonError::Descriptor(s.to_string());
        let body = s.trim().strip_prefix("thompson:").unwrap_or(s.trim());
        if let Some(rest) = body.strip_prefix("lambda:") {
            let (z, k) = rest.rsplit_once(':').ok_or_else(bad)?;
            let z = Z2Ordering::parse(z).map_err(|_| bad())?;
            let k = IsoKind::parse(k).ok_or_else(bad)?;
            return FOrdering::lambda(z, k);
        }
        IsoKind::parse(body).map(FOrdering::Isolated).ok_or_else(bad)
    }

    pub fn oracle(&self) -> Oracle<FElement> {
        let me = self.clone();
        Oracle::new(Arc::new(ThompsonF), self.descriptor(), move |f: &FElement| me.sign(f))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ThompsonF;

impl Group for ThompsonF {
    type Elem = FElement;

    fn tag(&self) -> String {
        "thompson".into()
    }
    fn identity(&self) -> FElement {
        FElement::identity()
    }
    fn mul(&self, x: &FElement, y: &FElement) -> FElement {
        f_compose(x, y)
    }
    fn inv(&self, x: &FElement) -> FElement {
        x.inverse()
    }
    fn generators(&self) -> Vec<FElement> {
        vec![FElement::x0(), FElement::x1()]
    }
    fn format(&self, x: &FElement) -> String {
        x.to_string()
    }
    fn parse(&self, s: &str) -> Result<FElement, String> {
        FElement::parse(s).map_err(|e| e.to_string())
    }
}

/// Random words of length ≤ `max_len` in x₀^±1, x₁^±1.
pub fn random_words(count: usize, max_len: usize, seed: u64) -> Vec<FElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let letters = ThompsonF.letters();
    (0..count)
        .map(|_| {
            let len = rng.gen_range(0..=max_len);
            (0..len).fold(FElement::identity(), |acc, _| {
                f_compose(&acc, &letters[rng.gen_range(0..letters.len())])
            })
        })
        .collect()
}

/// The radius-3 ball, commutators of ball elements and elements of F′ with
/// shifted supports.
pub fn default_sample() -> Vec<FElement> {
    let ball = Ball::new(&ThompsonF, 3);
    let mut out = ball.elems.clone();
    let small = ball.within(2);
    for f in small {
        for g in small {
            let c = f_compose(&f_compose(f, g), &f_compose(&f.inverse(), &g.inverse()));
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Clause {
    fn new(name: &'static str) -> Clause {
        Clause { name, checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub clauses: Vec<Clause>,
    /// (i, j, witness) for each pair of isolated orderings.
    pub distinct: Vec<(IsoKind, IsoKind, FElement)>,
    pub vacuous: bool,
}

impl ClassificationReport {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(Clause::passed)
    }
}

/// Triples (f, h, h f h⁻¹) for f in the sample and h among the conjugators.
pub fn conjugates(sample: &[FElement], conjugators: &[FElement]) -> Vec<(FElement, FElement, FElement)> {
    let mut out = Vec::with_capacity(sample.len() * conjugators.len());
    for f in sample {
        for h in conjugators {
            out.push((f.clone(), h.clone(), f_compose(&f_compose(h, f), &h.inverse())));
        }
    }
    out
}

/// First (f, h) with sign(h f h⁻¹) ≠ sign(f).
pub fn conjugation_failure(
    sign: impl Fn(&FElement) -> Sign,
    triples: &[(FElement, FElement, FElement)],
) -> Option<(FElement, FElement)> {
    triples.iter().find(|(f, _, c)| sign(f) != sign(c)).map(|(f, h, _)| (f.clone(), h.clone()))
}

/// Conjugators used by the checks: the radius-2 ball.
pub fn default_conjugators() -> Vec<FElement> {
    Ball::new(&ThompsonF, 2).elems
}

/// Λ orderings exercised by the checks.
pub fn default_lambdas() -> Vec<FOrdering> {
    let zs = ["z2:psi:sqrt2", "z2:psi:1/2:plus", "z2:psi:-1:minus", "z2:psi:inf:plus"];
    let mut out = Vec::new();
    for z in zs {
        let z = Z2Ordering::parse(z).expect("fixed descriptors parse");
        for k in IsoKind::DERIVED {
            out.push(FOrdering::lambda(z.clone(), k).expect("completed orderings are total"));
        }
    }
    out
}

/// The five clause groups on a sample: bi-invariance of the isolated
/// orderings, their pairwise distinctness, restriction to F′, σ-images, and
/// bi-invariance plus F′-convexity for Λ orderings.
pub fn classification_checks(sample: &[FElement], conjugators: &[FElement]) -> ClassificationReport {
    let triples = conjugates(sample, conjugators);
    let mut bi = Clause::new("isolated bi-invariance");
    for k in IsoKind::ALL {
        bi.checked += triples.len();
        if let Some((f, h)) = conjugation_failure(|x| isolated_sign(k, x), &triples) {
            bi.failures.push(format!("{}: f = {f}, h = {h}", k.tag()));
        }
    }
    let mut dist = Clause::new("pairwise distinct");
    let mut distinct = Vec::new();
    for (i, a) in IsoKind::ALL.iter().enumerate() {
        for b in &IsoKind::ALL[i + 1..] {
            dist.checked += 1;
            match sample.iter().find(|f| isolated_sign(*a, f) != isolated_sign(*b, f)) {
                Some(w) => distinct.push((*a, *b, w.clone())),
                None => dist.failures.push(format!("{} = {} on the sample", a.tag(), b.tag())),
            }
        }
    }
    let mut res = Clause::new("restriction to F'");
    for f in sample.iter().filter(|f| in_derived(f)) {
        for k in &IsoKind::ALL[4..] {
            res.checked += 1;
            if isolated_sign(*k, f) != isolated_sign(k.on_derived(), f) {
                res.failures.push(format!("{} at {f}", k.tag()));
            }
        }
    }
    let mut sig = Clause::new("sigma identities");
    for f in sample {
        let sf = sigma_conj(f);
        for k in [IsoKind::XMinusPlus, IsoKind::XMinusMinus, IsoKind::ZeroXMinusPM, IsoKind::ZeroXMinusMP]
        {
            sig.checked += 1;
            if isolated_sign(k, &sf) != isolated_sign(k.sigma(), f) {
                sig.failures.push(format!("{} at {f}", k.tag()));
            }
        }
    }
    let mut lam = Clause::new("lambda bi-invariance and F' convexity");
    let derived: Vec<&FElement> = sample.iter().filter(|f| in_derived(f)).collect();
    let outside: Vec<&FElement> = sample.iter().filter(|f| !in_derived(f)).collect();
    for o in default_lambdas() {
        lam.checked += triples.len();
        if let Some((f, h)) = conjugation_failure(|x| o.sign(x), &triples) {
            lam.failures.push(format!("{}: f = {f}, h = {h}", o.descriptor()));
        }
        // id ≺ h ≺ f with f ∈ F′ forces h ∈ F′.
        for f in derived.iter().filter(|f| o.sign(f) == Sign::Positive) {
            for h in &outside {
                lam.checked += 1;
                let between = o.sign(h) == Sign::Positive
                    && o.sign(&f_compose(&h.inverse(), f)) == Sign::Positive;
                if between {
                    lam.failures.push(format!("{}: {h} below {f}", o.descriptor()));
                }
            }
        }
    }
    ClassificationReport {
        clauses: vec![bi, dist, res, sig, lam],
        distinct,
        vacuous: sample.is_empty(),
    }
}

/// Finite positive set determining an isolated ordering among the
/// implemented ones.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub kind: IsoKind,
    pub positives: Vec<FElement>,
}

/// Picks, from the sample, one separating positive element per other
/// isolated ordering and a pair outside F′ with opposite log-slope vectors,
/// which no ℤ² ordering can make both positive.
pub fn isolation_certificate(kind: IsoKind, sample: &[FElement]) -> Option<Certificate> {
    let pos: Vec<&FElement> =
        sample.iter().filter(|f| isolated_sign(kind, f) == Sign::Positive).collect();
    let mut positives: Vec<FElement> = Vec::new();
    for other in IsoKind::ALL.into_iter().filter(|k| *k != kind) {
        let f = pos.iter().find(|f| isolated_sign(other, f) != Sign::Positive)?;
        if !positives.contains(f) {
            positives.push((*f).clone());
        }
    }
    let outside: Vec<&&FElement> = pos.iter().filter(|f| !in_derived(f)).collect();
    let direct = outside.iter().find_map(|f| {
        let (m, n) = f.log_slopes();
        outside.iter().find(|g| g.log_slopes() == (-m, -n)).map(|g| ((**f).clone(), (**g).clone()))
    });
    // Otherwise try p f⁻¹ with p positive in F′.
    let pair = direct.or_else(|| {
        let inner: Vec<&&FElement> = pos.iter().filter(|f| in_derived(f)).collect();
        outside.iter().find_map(|f| {
            inner.iter().find_map(|p| {
                let g = f_compose(p, &f.inverse());
                (isolated_sign(kind, &g) == Sign::Positive).then(|| ((**f).clone(), g))
            })
        })
    })?;
    for f in [pair.0, pair.1] {
        if !positives.contains(&f) {
            positives.push(f);
        }
    }
    Some(Certificate { kind, positives })
}

/// All certificate elements are positive for the kind, and every other
/// isolated ordering and every Λ ordering makes one of them non-positive.
pub fn verify_certificate(c: &Certificate) -> bool {
    if c.positives.iter().any(|f| isolated_sign(c.kind, f) != Sign::Positive) {
        return false;
    }
    let others = IsoKind::ALL.into_iter().filter(|k| *k != c.kind);
    if !others.into_iter().all(|k| c.positives.iter().any(|f| isolated_sign(k, f) != Sign::Positive)) {
        return false;
    }
    // Off F′ every Λ ordering signs by the log-slope vector alone.
    c.positives.iter().filter(|f| !in_derived(f)).any(|f| {
        let (m, n) = f.log_slopes();
        c.positives.iter().any(|g| !in_derived(g) && g.log_slopes() == (-m, -n))
    })
}

/// sign(τ) agrees with the Λ ordering built from the same functional
/// whenever τ ≠ 0.
pub fn conrad_hom_monotone(a: &Quad, b: &Quad, sample: &[FElement]) -> Result<bool, ThompsonError> {
    let z = Z2Ordering::new(a.clone(), b.clone(), None).map_err(|_| ThompsonError::ZeroFunctional)?;
    for f in sample {
        let t = quad_sign(&conrad_hom(a, b, f)?);
        if t != Sign::Zero && z.sign(&f.log_slopes()).ok() != Some(t) {
            return Ok(false);
        }
    }
    Ok(true)
}
