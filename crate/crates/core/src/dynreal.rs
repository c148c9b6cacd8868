//! Dynamical realizations: order-preserving maps to ℚ, exact piecewise
//! linear actions, orderings induced by actions and crossings of actions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::exact::{int, Rational};
use crate::free::{reduce, FreeGroup, ReducedWord};
use crate::order::{Element, Group, Oracle};
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DynError {
    #[error("enumeration must start with the identity")]
    NoIdentity,
    #[error("duplicate element {0}")]
    Duplicate(String),
    #[error("oracle does not separate {0} and {1}")]
    Tie(String, String),
    #[error("{0} is outside the realized prefix")]
    OutsidePrefix(String),
    #[error("product {0} is outside the realized prefix")]
    MissingProduct(String),
    #[error("interpolation pairs are not strictly increasing near x = {0}")]
    NotMonotone(String),
    #[error("tail slopes must be positive")]
    BadSlope,
    #[error("piecewise data is discontinuous")]
    Discontinuous,
    #[error("reference list is empty")]
    NoRefs,
    #[error("word uses generator {0} but the action has {1}")]
    Rank(usize, usize),
}

/// Order-preserving assignment on a finite prefix, t(id) = 0.
#[derive(Debug, Clone)]
pub struct TMap<E> {
    entries: Vec<(E, Rational)>,
    index: HashMap<E, usize>,
}

impl<E: Element> TMap<E> {
    pub fn get(&self, g: &E) -> Option<&Rational> {
        self.index.get(g).map(|&i| &self.entries[i].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in enumeration order.
    pub fn entries(&self) -> &[(E, Rational)] {
        &self.entries
    }

    /// Distinct values in increasing order.
    pub fn values_sorted(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.entries.iter().map(|e| e.1.clone()).collect();
        v.sort();
        v
    }

    /// Overwrites one value; for fault injection in tests and the CLI.
    pub fn set(&mut self, g: &E, t: Rational) -> bool {
        match self.index.get(g) {
            Some(&i) => {
                self.entries[i].1 = t;
                true
            }
            None => false,
        }
    }
}

/// New maximum ↦ max + 1, new minimum ↦ min − 1, otherwise the midpoint of
/// the bracketing pair.
pub fn build_tmap<E: Element>(o: &Oracle<E>, enumeration: &[E]) -> Result<TMap<E>, DynError> {
    let gr = o.group();
    match enumeration.first() {
        Some(x) if gr.is_identity(x) => {}
        _ => return Err(DynError::NoIdentity),
    }
    let mut entries: Vec<(E, Rational)> = Vec::with_capacity(enumeration.len());
    let mut index = HashMap::new();
    // Entry indices sorted by value.
    let mut sorted: Vec<usize> = Vec::new();
    for g in enumeration {
        if index.contains_key(g) {
            return Err(DynError::Duplicate(gr.format(g)));
        }
        let mut lo = 0;
        let mut hi = sorted.len();
        while lo < hi {
            let mid = (lo + hi) / 2;
            let e = &entries[sorted[mid]].0;
            match o.cmp_unchecked(e, g) {
                Sign::Positive => lo = mid + 1,
                Sign::Negative => hi = mid,
                Sign::Zero => return Err(DynError::Tie(gr.format(e), gr.format(g))),
            }
        }
        let t = if sorted.is_empty() {
            Rational::zero()
        } else if lo == sorted.len() {
            &entries[sorted[lo - 1]].1 + int(1)
        } else if lo == 0 {
            &entries[sorted[0]].1 - int(1)
        } else {
            (&entries[sorted[lo - 1]].1 + &entries[sorted[lo]].1) / int(2)
        };
        index.insert(g.clone(), entries.len());
        sorted.insert(lo, entries.len());
        entries.push((g.clone(), t));
    }
    Ok(TMap { entries, index })
}

/// First ball element whose sign differs from the sign of t(g).
pub fn realization_sign_check<E: Element>(
    o: &Oracle<E>,
    tmap: &TMap<E>,
    ball: &[E],
) -> Result<Option<E>, DynError> {
    for g in ball {
        let t = tmap.get(g).ok_or_else(|| DynError::OutsidePrefix(o.group().format(g)))?;
        if o.sign(g) != Sign::of_ordering(t.cmp(&Rational::zero())) {
            return Ok(Some(g.clone()));
        }
    }
    Ok(None)
}

/// Affine piece x ↦ slope·x + intercept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Affine {
    pub slope: Rational,
    pub intercept: Rational,
}

impl Affine {
    pub fn new(slope: Rational, intercept: Rational) -> Affine {
        Affine { slope, intercept }
    }

    /// The line with the given slope through (x, y).
    pub fn through(slope: Rational, x: &Rational, y: &Rational) -> Affine {
        let intercept = y - &slope * x;
        Affine { slope, intercept }
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        &self.slope * x + &self.intercept
    }

    pub fn inverse(&self) -> Affine {
        let s = Rational::one() / &self.slope;
        let c = -(&self.intercept * &s);
        Affine { slope: s, intercept: c }
    }
}

/// Strictly increasing, continuous, piecewise linear bijection of ℝ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLMap {
    breakpoints: Vec<(Rational, Rational)>,
    left: Affine,
    right: Affine,
}

impl PLMap {
    pub fn new(
        breakpoints: Vec<(Rational, Rational)>,
        left: Affine,
        right: Affine,
    ) -> Result<PLMap, DynError> {
        if left.slope <= Rational::zero() || right.slope <= Rational::zero() {
            return Err(DynError::BadSlope);
        }
        for w in breakpoints.windows(2) {
            if w[0].0 >= w[1].0 || w[0].1 >= w[1].1 {
                return Err(DynError::NotMonotone(w[1].0.to_string()));
            }
        }
        match (breakpoints.first(), breakpoints.last()) {
            (Some(f), Some(l)) => {
                if left.apply(&f.0) != f.1 || right.apply(&l.0) != l.1 {
                    return Err(DynError::Discontinuous);
                }
            }
            _ => {
                if left != right {
                    return Err(DynError::Discontinuous);
                }
            }
        }
        Ok(PLMap { breakpoints, left, right })
    }

    pub fn identity() -> PLMap {
        let id = Affine::new(Rational::one(), Rational::zero());
        PLMap { breakpoints: Vec::new(), left: id.clone(), right: id }
    }

    pub fn affine(a: Affine) -> Result<PLMap, DynError> {
        PLMap::new(Vec::new(), a.clone(), a)
    }

    /// Interpolates the pairs, extending with the given tail slopes.
    pub fn interpolate(
        pairs: &[(Rational, Rational)],
        left_slope: Rational,
        right_slope: Rational,
    ) -> Result<PLMap, DynError> {
        let mut p: Vec<(Rational, Rational)> = pairs.to_vec();
        p.sort();
        p.dedup();
        if p.is_empty() {
            return PLMap::affine(Affine::new(Rational::one(), Rational::zero()));
        }
        let left = Affine::through(left_slope, &p[0].0, &p[0].1);
        let last = p.last().unwrap();
        let right = Affine::through(right_slope, &last.0, &last.1);
        PLMap::new(p, left, right)
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    pub fn left(&self) -> &Affine {
        &self.left
    }

    pub fn right(&self) -> &Affine {
        &self.right
    }

    pub fn apply(&self, x: &Rational) -> Rational {
        let bp = &self.breakpoints;
        match (bp.first(), bp.last()) {
            (None, _) | (_, None) => self.left.apply(x),
            (Some(f), _) if *x <= f.0 => self.left.apply(x),
            (_, Some(l)) if *x >= l.0 => self.right.apply(x),
            _ => {
                let i = bp.partition_point(|p| p.0 <= *x);
                let (x0, y0) = &bp[i - 1];
                let (x1, y1) = &bp[i];
                y0 + (y1 - y0) * (x - x0) / (x1 - x0)
            }
        }
    }

    pub fn inverse(&self) -> PLMap {
        PLMap {
            breakpoints: self.breakpoints.iter().map(|(x, y)| (y.clone(), x.clone())).collect(),
            left: self.left.inverse(),
            right: self.right.inverse(),
        }
    }

    pub fn is_identity(&self) -> bool {
        let id = Affine::new(Rational::one(), Rational::zero());
        self.left == id && self.right == id && self.breakpoints.iter().all(|(x, y)| x == y)
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PL[")?;
        for (i, (x, y)) in self.breakpoints.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        write!(f, "]")
    }
}

/// An action of a free group by PL maps, one per generator.
#[derive(Debug, Clone)]
pub struct PLAction {
    maps: Vec<PLMap>,
    inverses: Vec<PLMap>,
}

impl PLAction {
    pub fn new(maps: Vec<PLMap>) -> PLAction {
        let inverses = maps.iter().map(PLMap::inverse).collect();
        PLAction { maps, inverses }
    }

    pub fn rank(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[PLMap] {
        &self.maps
    }

    pub fn letter(&self, l: u8) -> &PLMap {
        let i = (l / 2) as usize;
        if l & 1 == 0 {
            &self.maps[i]
        } else {
            &self.inverses[i]
        }
    }

    /// w = l₁…lₖ acts as l₁∘…∘lₖ, so the last letter is applied first.
    pub fn eval(&self, w: &ReducedWord, x: &Rational) -> Rational {
        w.letters().iter().rev().fold(x.clone(), |acc, &l| self.letter(l).apply(&acc))
    }

    pub fn check_rank(&self, w: &ReducedWord) -> Result<(), DynError> {
        match w.letters().iter().map(|l| (l / 2) as usize).max() {
            Some(m) if m >= self.rank() => Err(DynError::Rank(m, self.rank())),
            _ => Ok(()),
        }
    }
}

/// Ball words (letter indices) as reduced words of the free group on the
/// same generators.
pub fn free_word(word: &[usize]) -> ReducedWord {
    reduce(&word.iter().map(|&l| l as u8).collect::<Vec<_>>())
}

/// One PL map per generator interpolating (t(u), t(s·u)) over the closure
/// ball, with slope-1 tails.
pub fn action_from_tmap<E: Element>(
    tmap: &TMap<E>,
    group: &dyn Group<Elem = E>,
    generators: &[E],
    closure: &[E],
) -> Result<PLAction, DynError> {
    let mut maps = Vec::with_capacity(generators.len());
    for s in generators {
        let mut pairs = Vec::with_capacity(closure.len());
        for u in closure {
            let tu = tmap.get(u).ok_or_else(|| DynError::OutsidePrefix(group.format(u)))?;
            let su = group.mul(s, u);
            let tsu = tmap.get(&su).ok_or_else(|| DynError::MissingProduct(group.format(&su)))?;
            pairs.push((tu.clone(), tsu.clone()));
        }
        maps.push(PLMap::interpolate(&pairs, Rational::one(), Rational::one())?);
    }
    Ok(PLAction::new(maps))
}

/// One PL map per generator interpolating every pair (t(u), t(s·u)) with
/// both ends in the prefix, with slope-1 tails.
pub fn action_from_prefix<E: Element>(
    tmap: &TMap<E>,
    group: &dyn Group<Elem = E>,
    generators: &[E],
) -> Result<PLAction, DynError> {
    let mut maps = Vec::with_capacity(generators.len());
    for s in generators {
        let pairs: Vec<(Rational, Rational)> = tmap
            .entries()
            .iter()
            .filter_map(|(u, tu)| tmap.get(&group.mul(s, u)).map(|tsu| (tu.clone(), tsu.clone())))
            .collect();
        maps.push(PLMap::interpolate(&pairs, Rational::one(), Rational::one())?);
    }
    Ok(PLAction::new(maps))
}

/// The ball followed by every point met while evaluating gⁿ·u letter by
/// letter, for g, u in the inner ball of radius `word_radius` and n ≤ 3B.
/// Realizing this prefix makes every orbit used by the crossing search an
/// orbit of the group itself.
pub fn orbit_enumeration<E: Element>(
    group: &dyn Group<Elem = E>,
    ball: &crate::order::Ball<E>,
    word_radius: usize,
    exp_bound: u32,
) -> Vec<E> {
    let mut seen: std::collections::HashSet<E> = ball.elems.iter().cloned().collect();
    let mut out = ball.elems.clone();
    let letters = group.letters();
    let inner = ball.within(word_radius).len();
    for w in &ball.words[..inner] {
        for u in &ball.elems[..inner] {
            let mut x = u.clone();
            for _ in 0..3 * exp_bound {
                for &l in w.iter().rev() {
                    x = group.mul(&letters[l], &x);
                    if seen.insert(x.clone()) {
                        out.push(x.clone());
                    }
                }
            }
        }
    }
    out
}

/// t(s·u) = s(t(u)) for every generator s and prefix pair; returns the
/// first failing (generator index, element).
pub fn check_equivariance<E: Element>(
    tmap: &TMap<E>,
    group: &dyn Group<Elem = E>,
    generators: &[E],
    action: &PLAction,
) -> Option<(usize, E)> {
    for (i, s) in generators.iter().enumerate() {
        for (u, tu) in tmap.entries() {
            if let Some(tsu) = tmap.get(&group.mul(s, u)) {
                if action.maps()[i].apply(tu) != *tsu {
                    return Some((i, u.clone()));
                }
            }
        }
    }
    None
}

/// Realization of an ordering, the crossing search on its action and the
/// Conradian check on the ordering, at matching bounds.
#[derive(Debug, Clone)]
pub struct PullbackReport<E> {
    pub prefix_len: usize,
    pub sign_witness: Option<E>,
    pub equivariance: Option<(usize, E)>,
    pub crossing: Option<ActionCrossing>,
    pub conradian: crate::order::ConradianResult<E>,
}

impl<E> PullbackReport<E> {
    /// Crossing search empty ⟺ Conradian check passes.
    pub fn coherent(&self) -> bool {
        self.crossing.is_none() == matches!(self.conradian, crate::order::ConradianResult::Pass)
    }

    pub fn sound(&self) -> bool {
        self.sign_witness.is_none() && self.equivariance.is_none()
    }
}

/// Realizes `o` on the radius-`radius` ball extended by the orbit points,
/// then compares `action_crossing_search` (words and grid from the ball of
/// radius `word_radius`) with `conradian_check` on that ball.
pub fn pullback_check<E: Element>(
    o: &Oracle<E>,
    radius: usize,
    word_radius: usize,
    exp_bound: u32,
) -> Result<PullbackReport<E>, DynError> {
    let gr = o.group().clone();
    let ball = crate::order::Ball::new(gr.as_ref(), radius.max(word_radius));
    let enumeration = orbit_enumeration(gr.as_ref(), &ball, word_radius, exp_bound);
    let tmap = build_tmap(o, &enumeration)?;
    let sign_witness = realization_sign_check(o, &tmap, ball.within(radius))?;
    let gens = gr.generators();
    let action = action_from_prefix(&tmap, gr.as_ref(), &gens)?;
    let equivariance = check_equivariance(&tmap, gr.as_ref(), &gens, &action);
    let inner = ball.within(word_radius).len();
    let words: Vec<ReducedWord> = ball.words[..inner].iter().map(|w| free_word(w)).collect();
    let grid: Vec<Rational> =
        ball.elems[..inner].iter().map(|u| tmap.get(u).unwrap().clone()).collect();
    let crossing = action_crossing_search(&action, &words, &grid, exp_bound);
    let small = crate::order::Ball::new(gr.as_ref(), word_radius);
    let conradian = crate::order::conradian_check(o, &small);
    Ok(PullbackReport {
        prefix_len: tmap.len(),
        sign_witness,
        equivariance,
        crossing,
        conradian,
    })
}

/// Sign at the first reference point moved by the word; Zero when every
/// reference is fixed, so the oracle is flagged partial.
pub fn induced_ordering(
    action: Arc<PLAction>,
    refs: Vec<Rational>,
) -> Result<Oracle<ReducedWord>, DynError> {
    if refs.is_empty() {
        return Err(DynError::NoRefs);
    }
    let desc = format!(
        "induced({})",
        refs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
    );
    let group = FreeGroup::new(action.rank());
    Ok(Oracle::new(Arc::new(group), desc, move |w: &ReducedWord| induced_sign(&action, &refs, w))
        .flagged_partial())
}

pub fn induced_sign(action: &PLAction, refs: &[Rational], w: &ReducedWord) -> Sign {
    for r in refs {
        let y = action.eval(w, r);
        if y != *r {
            return Sign::of_ordering(y.cmp(r));
        }
    }
    Sign::Zero
}

/// u < w < v, gⁿ(u) < v and fⁿ(v) > u for n ≤ `checked_bound`,
/// f^N(v) < w < g^M(u).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionCrossing {
    pub f: ReducedWord,
    pub g: ReducedWord,
    pub u: Rational,
    pub v: Rational,
    pub w: Rational,
    pub n: u32,
    pub m: u32,
    pub checked_bound: u32,
}

fn orbit(action: &PLAction, g: &ReducedWord, x: &Rational, len: u32) -> Vec<Rational> {
    let mut out = Vec::with_capacity(len as usize);
    let mut y = x.clone();
    for _ in 0..len {
        y = action.eval(g, &y);
        out.push(y.clone());
    }
    out
}

/// Bounded search over f, g in `words` and u, w, v in the grid. N and M
/// range over 1..=B while the orbit conditions are checked up to 3B.
pub fn action_crossing_search(
    action: &PLAction,
    words: &[ReducedWord],
    grid: &[Rational],
    exp_bound: u32,
) -> Option<ActionCrossing> {
    if exp_bound == 0 {
        return None;
    }
    let mut grid: Vec<Rational> = grid.to_vec();
    grid.sort();
    grid.dedup();
    let long = 3 * exp_bound;
    // For g, u: max of gⁿu over n ≤ 3B, and the least M ≤ B with the
    // largest g^M u so far.
    struct Up {
        sup_long: Rational,
        reach: Vec<Rational>,
    }
    let ups: Vec<Vec<Up>> = words
        .iter()
        .map(|g| {
            grid.iter()
                .map(|u| {
                    let o = orbit(action, g, u, long);
                    let sup_long = o.iter().max().unwrap().clone();
                    Up { sup_long, reach: o[..exp_bound as usize].to_vec() }
                })
                .collect()
        })
        .collect();
    for f in words {
        for (vi, v) in grid.iter().enumerate() {
            let o = orbit(action, f, v, long);
            let inf_long = o.iter().min().unwrap().clone();
            let down = &o[..exp_bound as usize];
            for (gi, g) in words.iter().enumerate() {
                for (ui, u) in grid.iter().enumerate().take(vi) {
                    if inf_long <= *u {
                        continue;
                    }
                    let up = &ups[gi][ui];
                    if up.sup_long >= *v {
                        continue;
                    }
                    for w in &grid[ui + 1..vi] {
                        let n = down.iter().position(|y| y < w);
                        let m = up.reach.iter().position(|y| y > w);
                        if let (Some(n), Some(m)) = (n, m) {
                            return Some(ActionCrossing {
                                f: f.clone(),
                                g: g.clone(),
                                u: u.clone(),
                                v: v.clone(),
                                w: w.clone(),
                                n: n as u32 + 1,
                                m: m as u32 + 1,
                                checked_bound: long,
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::order::Ball;

    struct Z;
    impl Group for Z {
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
            s.parse().map_err(|_| s.to_string())
        }
    }

    fn zstd() -> Oracle<i64> {
        Oracle::new(Arc::new(Z), "std", |x: &i64| Sign::of_i64(*x))
    }

    fn values(t: &TMap<i64>) -> Vec<Rational> {
        t.entries().iter().map(|e| e.1.clone()).collect()
    }

    #[test]
    fn tmap_examples() {
        let o = zstd();
        let t = build_tmap(&o, &[0, 1, 2, -1]).unwrap();
        assert_eq!(values(&t), vec![int(0), int(1), int(2), int(-1)]);
        let t = build_tmap(&o, &[0, 1, -1, 2]).unwrap();
        assert_eq!(values(&t), vec![int(0), int(1), int(-1), int(2)]);
        let t = build_tmap(&o, &[0]).unwrap();
        assert_eq!(values(&t), vec![int(0)]);
        let t = build_tmap(&o, &[0, 4, 1, 3, 2]).unwrap();
        assert_eq!(values(&t), vec![int(0), int(1), rat(1, 2), rat(3, 4), rat(5, 8)]);
        assert!(matches!(build_tmap(&o, &[0, 1, 1]), Err(DynError::Duplicate(_))));
        assert!(matches!(build_tmap(&o, &[1, 0]), Err(DynError::NoIdentity)));
    }

    #[test]
    fn tmap_is_order_preserving() {
        let o = zstd();
        let b = Ball::new(&Z, 6);
        let t = build_tmap(&o, &b.elems).unwrap();
        for x in &b.elems {
            for y in &b.elems {
                assert_eq!(x.cmp(y), t.get(x).unwrap().cmp(t.get(y).unwrap()));
            }
        }
    }

    #[test]
    fn sign_check_and_fault_injection() {
        let o = zstd();
        let b = Ball::new(&Z, 3);
        let mut t = build_tmap(&o, &b.elems).unwrap();
        assert_eq!(realization_sign_check(&o, &t, &b.elems).unwrap(), None);
        t.set(&2, int(-5));
        assert_eq!(realization_sign_check(&o, &t, &b.elems).unwrap(), Some(2));
        assert!(realization_sign_check(&o, &t, &[7]).is_err());
    }

    #[test]
    fn pl_map_basics() {
        let m = PLMap::interpolate(
            &[(int(0), int(1)), (int(1), int(2)), (int(-1), int(0))],
            int(1),
            int(1),
        )
        .unwrap();
        assert_eq!(m.apply(&int(0)), int(1));
        assert_eq!(m.apply(&int(10)), int(11));
        assert_eq!(m.apply(&int(-10)), int(-9));
        let m = PLMap::interpolate(&[(int(0), int(0)), (int(2), int(1))], int(1), int(3)).unwrap();
        assert_eq!(m.apply(&int(1)), rat(1, 2));
        assert_eq!(m.apply(&int(3)), int(4));
        let mi = m.inverse();
        for x in [int(-3), rat(1, 3), int(1), int(5)] {
            assert_eq!(mi.apply(&m.apply(&x)), x);
        }
        assert!(PLMap::interpolate(&[(int(0), int(1)), (int(1), int(0))], int(1), int(1)).is_err());
        assert!(PLMap::identity().is_identity());
    }

    #[test]
    fn integer_realization() {
        let o = zstd();
        let b = Ball::new(&Z, 3);
        let t = build_tmap(&o, &b.elems).unwrap();
        let act = action_from_tmap(&t, &Z, &[1], b.within(2)).unwrap();
        assert_eq!(act.maps()[0].apply(&int(0)), int(1));
        for u in b.within(2) {
            assert_eq!(act.maps()[0].apply(t.get(u).unwrap()), *t.get(&(u + 1)).unwrap());
        }
        let act0 = action_from_tmap(&t, &Z, &[0], b.within(2)).unwrap();
        assert!(act0.maps()[0].is_identity());
        assert!(matches!(
            action_from_tmap(&t, &Z, &[1], &b.elems),
            Err(DynError::MissingProduct(_))
        ));
        let ind = induced_ordering(Arc::new(act), vec![int(0)]).unwrap();
        assert!(ind.is_partial());
        let bw = Ball::new(&Z, 2);
        for (x, w) in bw.elems.iter().zip(&bw.words) {
            assert_eq!(ind.sign(&free_word(w)), o.sign(x));
        }
        let grid = t.values_sorted();
        let act = action_from_tmap(&t, &Z, &[1], b.within(2)).unwrap();
        let words: Vec<ReducedWord> = Ball::new(&FreeGroup::new(1), 2).elems;
        assert_eq!(action_crossing_search(&act, &words, &grid, 5), None);
        assert_eq!(action_crossing_search(&act, &words, &[], 5), None);
    }

    #[test]
    fn induced_ordering_uses_later_refs() {
        // a fixes 0 and moves 1/2 up, b is a translation.
        let a = PLMap::interpolate(&[(int(0), int(0)), (rat(1, 2), rat(3, 4)), (int(1), int(1))], int(1), int(1))
            .unwrap();
        let b = PLMap::affine(Affine::new(int(1), int(1))).unwrap();
        let act = Arc::new(PLAction::new(vec![a, b]));
        let one = induced_ordering(act.clone(), vec![int(0)]).unwrap();
        let two = induced_ordering(act, vec![int(0), rat(1, 2)]).unwrap();
        let a = ReducedWord::parse("a").unwrap();
        assert_eq!(one.sign(&a), Sign::Zero);
        assert_eq!(two.sign(&a), Sign::Positive);
        assert_eq!(two.sign(&a.inverse()), Sign::Negative);
        assert_eq!(two.sign(&ReducedWord::parse("B").unwrap()), Sign::Negative);
    }

    #[test]
    fn a_crossing_of_two_bumps() {
        // g pushes up on (0, 3), f pushes down on (1, 4): the supports overlap
        // like a crossing.
        let g = PLMap::interpolate(&[(int(0), int(0)), (int(1), int(2)), (int(3), int(3))], int(1), int(1))
            .unwrap();
        let f = PLMap::interpolate(&[(int(1), int(1)), (int(3), int(2)), (int(4), int(4))], int(1), int(1))
            .unwrap();
        let act = PLAction::new(vec![f, g]);
        let words = vec![ReducedWord::parse("a").unwrap(), ReducedWord::parse("b").unwrap()];
        let grid: Vec<Rational> = (0..=8).map(|i| rat(i, 2)).collect();
        let c = action_crossing_search(&act, &words, &grid, 5).unwrap();
        assert_eq!(c.f.to_string(), "a");
        assert_eq!(c.g.to_string(), "b");
        assert!(c.u < c.w && c.w < c.v);
    }

    #[test]
    fn pullback_on_catalog_instances() {
        use crate::affine::{smirnov_oracle, SmirnovParam, BS};
        use crate::catalog::enumerate_t_orderings;
        use crate::exact::Quad;
        for o in enumerate_t_orderings(2).unwrap() {
            let rep = pullback_check(&o, 3, 2, 5).unwrap();
            assert!(rep.sound());
            assert!(rep.crossing.is_none(), "{}", o.descriptor());
            assert!(rep.coherent());
        }
        let p = SmirnovParam::irrational(Quad::sqrt2()).unwrap();
        let o = smirnov_oracle(BS::new(3).unwrap(), &p);
        let rep = pullback_check(&o, 3, 2, 5).unwrap();
        assert!(rep.sound());
        assert!(rep.crossing.is_some());
        assert!(rep.coherent());
    }

    #[test]
    fn enumerations_give_the_same_induced_signs() {
        use crate::catalog::{enumerate_t_orderings, Tararin};
        let o = enumerate_t_orderings(2).unwrap().remove(1);
        let g = Tararin::new(2).unwrap();
        let ball = Ball::new(&g, 3);
        let mut other = ball.elems.clone();
        other[1..].reverse();
        let gens = g.generators();
        let mut signs = Vec::new();
        for e in [&ball.elems, &other] {
            let t = build_tmap(&o, e).unwrap();
            let act = action_from_tmap(&t, &g, &gens, ball.within(2)).unwrap();
            let ind = induced_ordering(Arc::new(act), vec![int(0)]).unwrap();
            let inner = ball.within(2).len();
            signs.push(ball.words[..inner].iter().map(|w| ind.sign(&free_word(w))).collect::<Vec<_>>());
            for (x, w) in ball.elems[..inner].iter().zip(&ball.words) {
                assert_eq!(ind.sign(&free_word(w)), o.sign(x));
            }
        }
        assert_eq!(signs[0], signs[1]);
    }
}
