//! Conradian checks and crossings (f, g, u, v, w):
//! (i) u ≺ w ≺ v; (ii) gⁿu ≺ v and fⁿv ≻ u for all n ≥ 1;
//! (iii) f^N v ≺ w ≺ g^M u for some N, M ≥ 1.

use std::cmp::Ordering;
use super::{Ball, Element, Oracle};
use crate::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exactness {
    ExactForAll,
    BoundedOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingWitness<E> {
    pub f: E,
    pub g: E,
    pub u: E,
    pub v: E,
    pub w: E,
    pub n: u32,
    pub m: u32,
    pub checked_bound: u32,
    pub exactness: Exactness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CondStatus {
    Pass,
    Fail(String),
}

impl CondStatus {
    pub fn passed(&self) -> bool {
        matches!(self, CondStatus::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    /// u ≺ w ≺ v
    pub order: CondStatus,
    /// gⁿu ≺ v
    pub g_orbit: CondStatus,
    /// fⁿv ≻ u
    pub f_orbit: CondStatus,
    /// f^N v ≺ w ≺ g^M u
    pub sandwich: CondStatus,
    pub exactness: Exactness,
    pub checked_bound: u32,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.order.passed() && self.g_orbit.passed() && self.f_orbit.passed() && self.sandwich.passed()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CrossingError {
    #[error("exponents N and M must be positive")]
    NonPositiveExponent,
    #[error("{0} is not positive")]
    NotPositive(String),
    #[error("witness pair does not give a crossing: {0:?}")]
    InvalidWitness(Box<CheckReport>),
    #[error("the identity always lies in the soul")]
    IdentityInSoul,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConradianResult<E> {
    Pass,
    Witness { f: E, g: E },
}

/// Pass iff f g² ≻ g for all positive f, g in the ball.
///
/// The witness is the first violating pair in ball order. When the oracle
/// carries an exact decider, the first violating pair with f gⁿ ≺ g for
/// every n is preferred, since only such pairs feed `crossing_from_witness`.
pub fn conradian_check<E>(o: &Oracle<E>, ball: &Ball<E>) -> ConradianResult<E>
where
    E: Element,
{
    let gr = o.group();
    let id = gr.identity();
    let pos: Vec<&E> = ball.elems.iter().filter(|x| o.sign(x) == Sign::Positive).collect();
    let mut first = None;
    for f in &pos {
        for g in &pos {
            let fgg = gr.mul(&gr.mul(f, g), g);
            if o.cmp_unchecked(g, &fgg) == Sign::Positive {
                continue;
            }
            let Some(d) = o.decider() else {
                return ConradianResult::Witness { f: (*f).clone(), g: (*g).clone() };
            };
            if d(g, &id, &gr.mul(&gr.inv(f), g), Sign::Positive) {
                return ConradianResult::Witness { f: (*f).clone(), g: (*g).clone() };
            }
            first.get_or_insert_with(|| ((*f).clone(), (*g).clone()));
        }
    }
    match first {
        Some((f, g)) => ConradianResult::Witness { f, g },
        None => ConradianResult::Pass,
    }
}

fn orbit_status<E>(
    o: &Oracle<E>,
    step: &E,
    start: &E,
    target: &E,
    want: Sign,
    bound: u32,
) -> (CondStatus, Exactness)
where
    E: Element,
{
    if let Some(d) = o.decider() {
        let ok = d(step, start, target, want);
        let st = if ok { CondStatus::Pass } else { CondStatus::Fail("fails for some n".into()) };
        return (st, Exactness::ExactForAll);
    }
    let gr = o.group();
    let mut x = start.clone();
    for n in 1..=bound {
        x = gr.mul(step, &x);
        if o.cmp_unchecked(&x, target) != want {
            return (CondStatus::Fail(format!("fails at n = {n}")), Exactness::BoundedOnly);
        }
    }
    (CondStatus::Pass, Exactness::BoundedOnly)
}

pub fn verify_crossing<E>(
    c: &CrossingWitness<E>,
    o: &Oracle<E>,
    bound: u32,
) -> Result<CheckReport, CrossingError>
where
    E: Element,
{
    if c.n == 0 || c.m == 0 {
        return Err(CrossingError::NonPositiveExponent);
    }
    let gr = o.group();
    let order = if o.cmp_unchecked(&c.u, &c.w) != Sign::Positive {
        CondStatus::Fail("u is not below w".into())
    } else if o.cmp_unchecked(&c.w, &c.v) != Sign::Positive {
        CondStatus::Fail("w is not below v".into())
    } else {
        CondStatus::Pass
    };
    let (g_orbit, eg) = orbit_status(o, &c.g, &c.u, &c.v, Sign::Positive, bound);
    let (f_orbit, ef) = orbit_status(o, &c.f, &c.v, &c.u, Sign::Negative, bound);
    let fnv = gr.mul(&gr.pow(&c.f, c.n as i64), &c.v);
    let gmu = gr.mul(&gr.pow(&c.g, c.m as i64), &c.u);
    let sandwich = if o.cmp_unchecked(&fnv, &c.w) != Sign::Positive {
        CondStatus::Fail("f^N v is not below w".into())
    } else if o.cmp_unchecked(&c.w, &gmu) != Sign::Positive {
        CondStatus::Fail("w is not below g^M u".into())
    } else {
        CondStatus::Pass
    };
    let exactness = if eg == Exactness::ExactForAll && ef == Exactness::ExactForAll {
        Exactness::ExactForAll
    } else {
        Exactness::BoundedOnly
    };
    Ok(CheckReport { order, g_orbit, f_orbit, sandwich, exactness, checked_bound: bound })
}

/// The quintuple (f, g, id, f⁻¹g, g²) with N = 1, M = 3 built from a
/// Conradian violation f g² ≺ g.
pub fn crossing_from_witness<E>(
    o: &Oracle<E>,
    f: &E,
    g: &E,
    bound: u32,
) -> Result<CrossingWitness<E>, CrossingError>
where
    E: Element,
{
    let gr = o.group();
    for x in [f, g] {
        if o.sign(x) != Sign::Positive {
            return Err(CrossingError::NotPositive(gr.format(x)));
        }
    }
    let mut c = CrossingWitness {
        f: f.clone(),
        g: g.clone(),
        u: gr.identity(),
        v: gr.mul(&gr.inv(f), g),
        w: gr.mul(g, g),
        n: 1,
        m: 3,
        checked_bound: bound,
        exactness: Exactness::BoundedOnly,
    };
    let report = verify_crossing(&c, o, bound)?;
    if !report.all_pass() {
        return Err(CrossingError::InvalidWitness(Box::new(report)));
    }
    c.exactness = report.exactness;
    Ok(c)
}

/// Extra constraints on searched crossings, used by soul certificates.
#[derive(Debug, Clone)]
pub struct SearchFilter<E> {
    /// x ⪯ u
    pub u_at_least: Option<E>,
    /// v ⪯ x
    pub v_at_most: Option<E>,
    /// w ≺ x
    pub w_below: Option<E>,
    /// x ≺ w
    pub w_above: Option<E>,
}

impl<E> Default for SearchFilter<E> {
    fn default() -> Self {
        SearchFilter { u_at_least: None, v_at_most: None, w_below: None, w_above: None }
    }
}

pub fn crossing_search<E>(o: &Oracle<E>, ball: &Ball<E>, exp_bound: u32) -> Option<CrossingWitness<E>>
where
    E: Element,
{
    crossing_search_with(o, ball, exp_bound, &SearchFilter::default())
}

/// Exhaustive search over quintuples from the ball.
///
/// N and M range over 1..=exp_bound; condition (ii) is checked up to
/// 3·exp_bound, or for all n when the oracle carries an exact decider.
/// With this margin a bounded crossing yields a genuine violation
/// F G² ≺ G (F = w⁻¹g^M f^N w, G = w⁻¹g^M w), so Conradian oracles never
/// produce one.
pub fn crossing_search_with<E>(
    o: &Oracle<E>,
    ball: &Ball<E>,
    exp_bound: u32,
    filter: &SearchFilter<E>,
) -> Option<CrossingWitness<E>>
where
    E: Element,
{
    let nb = ball.len();
    if exp_bound == 0 || nb < 2 {
        return None;
    }
    let gr = o.group();
    let e = &ball.elems;
    let b = exp_bound as usize;
    let long = 3 * b;

    let mut sorted: Vec<usize> = (0..nb).collect();
    sorted.sort_by(|&i, &j| match o.cmp_unchecked(&e[i], &e[j]) {
        Sign::Positive => Ordering::Less,
        Sign::Negative => Ordering::Greater,
        Sign::Zero => Ordering::Equal,
    });
    let mut rank = vec![0usize; nb];
    for (p, &i) in sorted.iter().enumerate() {
        rank[i] = p;
    }
    // number of ball elements strictly below / not above x
    let count_lt = |x: &E| sorted.partition_point(|&i| o.cmp_unchecked(&e[i], x) == Sign::Positive);
    let count_le = |x: &E| sorted.partition_point(|&i| o.cmp_unchecked(&e[i], x) != Sign::Negative);

    // g-orbits of u: S = max over n ≤ B, T = max over n ≤ 3B
    let mut s_lt = vec![0usize; nb * nb];
    let mut t_le = vec![0usize; nb * nb];
    // f-orbits of v: I = min over n ≤ B, J = min over n ≤ 3B
    let mut i_le = vec![0usize; nb * nb];
    let mut j_lt = vec![0usize; nb * nb];
    for a in 0..nb {
        for c in 0..nb {
            let mut x = e[c].clone();
            let mut hi: Option<E> = None;
            let mut lo: Option<E> = None;
            let mut s_elem = None;
            let mut i_elem = None;
            for n in 1..=long {
                x = gr.mul(&e[a], &x);
                if hi.as_ref().is_none_or(|h| o.cmp_unchecked(h, &x) == Sign::Positive) {
                    hi = Some(x.clone());
                }
                if lo.as_ref().is_none_or(|l| o.cmp_unchecked(&x, l) == Sign::Positive) {
                    lo = Some(x.clone());
                }
                if n == b {
                    s_elem = hi.clone();
                    i_elem = lo.clone();
                }
            }
            let k = a * nb + c;
            s_lt[k] = count_lt(s_elem.as_ref().unwrap());
            t_le[k] = count_le(hi.as_ref().unwrap());
            i_le[k] = count_le(i_elem.as_ref().unwrap());
            j_lt[k] = count_lt(lo.as_ref().unwrap());
        }
    }

    let u_min = filter.u_at_least.as_ref().map_or(0, &count_lt);
    let v_max = filter.v_at_most.as_ref().map_or(nb, &count_le);
    let w_hi_cap = filter.w_below.as_ref().map_or(nb, count_lt);
    let w_lo_cap = filter.w_above.as_ref().map_or(0, count_le);

    for fi in 0..nb {
        for gi in 0..nb {
            for ui in 0..nb {
                if rank[ui] < u_min {
                    continue;
                }
                let gu = gi * nb + ui;
                for vi in 0..nb {
                    if rank[vi] >= v_max {
                        continue;
                    }
                    let fv = fi * nb + vi;
                    if rank[ui] >= j_lt[fv] || rank[vi] < t_le[gu] {
                        continue;
                    }
                    let lo = i_le[fv].max(w_lo_cap);
                    let hi = s_lt[gu].min(w_hi_cap);
                    if lo >= hi {
                        continue;
                    }
                    if let Some(d) = o.decider() {
                        if !d(&e[gi], &e[ui], &e[vi], Sign::Positive)
                            || !d(&e[fi], &e[vi], &e[ui], Sign::Negative)
                        {
                            continue;
                        }
                    }
                    let wi = *sorted[lo..hi].iter().min().unwrap();
                    let w = &e[wi];
                    let mut n_exp = 0;
                    let mut x = e[vi].clone();
                    for n in 1..=exp_bound {
                        x = gr.mul(&e[fi], &x);
                        if o.cmp_unchecked(&x, w) == Sign::Positive {
                            n_exp = n;
                            break;
                        }
                    }
                    let mut m_exp = 0;
                    let mut y = e[ui].clone();
                    for m in 1..=exp_bound {
                        y = gr.mul(&e[gi], &y);
                        if o.cmp_unchecked(w, &y) == Sign::Positive {
                            m_exp = m;
                            break;
                        }
                    }
                    debug_assert!(n_exp > 0 && m_exp > 0);
                    let exactness = if o.decider().is_some() {
                        Exactness::ExactForAll
                    } else {
                        Exactness::BoundedOnly
                    };
                    return Some(CrossingWitness {
                        f: e[fi].clone(),
                        g: e[gi].clone(),
                        u: e[ui].clone(),
                        v: e[vi].clone(),
                        w: w.clone(),
                        n: n_exp,
                        m: m_exp,
                        checked_bound: long as u32,
                        exactness,
                    });
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SoulResult<E> {
    OutsideSoul(Box<CrossingWitness<E>>),
    Unknown,
}

/// Certifies h outside the Conradian soul by a crossing with id ⪯ u and
/// w ≺ h (h positive), or with v ⪯ id and h ≺ w (h negative).
pub fn soul_bound_check<E>(
    o: &Oracle<E>,
    h: &E,
    ball: &Ball<E>,
    exp_bound: u32,
) -> Result<SoulResult<E>, CrossingError>
where
    E: Element,
{
    let gr = o.group();
    let id = gr.identity();
    let filter = match o.sign(h) {
        Sign::Zero => return Err(CrossingError::IdentityInSoul),
        Sign::Positive => SearchFilter { u_at_least: Some(id), w_below: Some(h.clone()), ..Default::default() },
        Sign::Negative => SearchFilter { v_at_most: Some(id), w_above: Some(h.clone()), ..Default::default() },
    };
    Ok(match crossing_search_with(o, ball, exp_bound, &filter) {
        Some(c) => SoulResult::OutsideSoul(Box::new(c)),
        None => SoulResult::Unknown,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugateHit<E> {
    pub h: E,
    pub disagreement: E,
}

/// A conjugate of o that keeps the listed positives but differs from o.
pub fn conjugate_approx_search<E>(
    o: &Oracle<E>,
    positives: &[E],
    search_ball: &Ball<E>,
) -> Result<Option<ConjugateHit<E>>, CrossingError>
where
    E: Element,
{
    let gr = o.group();
    for p in positives {
        if o.sign(p) != Sign::Positive {
            return Err(CrossingError::NotPositive(gr.format(p)));
        }
    }
    for h in &search_ball.elems {
        if gr.is_identity(h) {
            continue;
        }
        let c = o.conjugate(h).expect("ball elements lie in the universe");
        if positives.iter().any(|p| c.sign(p) != Sign::Positive) {
            continue;
        }
        if let Some(x) = search_ball.elems.iter().find(|x| c.sign(x) != o.sign(x)) {
            return Ok(Some(ConjugateHit { h: h.clone(), disagreement: x.clone() }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;

    #[test]
    fn integers_are_conradian_without_crossings() {
        let o = standard();
        let b = Ball::new(&Integers, 6);
        assert_eq!(conradian_check(&o, &b), ConradianResult::Pass);
        assert_eq!(crossing_search(&o, &b, 4), None);
        assert_eq!(crossing_search(&o, &Ball::new(&Integers, 0), 4), None);
        assert_eq!(soul_bound_check(&o, &3, &b, 3).unwrap(), SoulResult::Unknown);
        assert_eq!(soul_bound_check(&o, &0, &b, 3), Err(CrossingError::IdentityInSoul));
    }

    #[test]
    fn zero_exponents_rejected() {
        let o = standard();
        let c = CrossingWitness {
            f: 1,
            g: 1,
            u: 0,
            v: 2,
            w: 1,
            n: 0,
            m: 1,
            checked_bound: 3,
            exactness: Exactness::BoundedOnly,
        };
        assert_eq!(verify_crossing(&c, &o, 3), Err(CrossingError::NonPositiveExponent));
    }

    #[test]
    fn bounded_false_crossing_needs_the_margin() {
        // u = -4, v = 4, g = 1, f = -1 looks like a crossing up to n = 6
        let o = standard();
        let c = CrossingWitness {
            f: -1,
            g: 1,
            u: -4,
            v: 4,
            w: 0,
            n: 6,
            m: 6,
            checked_bound: 6,
            exactness: Exactness::BoundedOnly,
        };
        assert!(verify_crossing(&c, &o, 6).unwrap().all_pass());
        assert!(!verify_crossing(&c, &o, 18).unwrap().all_pass());
    }

    #[test]
    fn bi_invariant_oracle_has_no_conjugates() {
        let o = standard();
        let b = Ball::new(&Integers, 3);
        assert_eq!(conjugate_approx_search(&o, &[1], &b).unwrap(), None);
        assert!(conjugate_approx_search(&o, &[-1], &b).is_err());
    }
}
