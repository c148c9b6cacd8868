//! Free groups: reduced words, the Magnus ordering, seed families, boxes and
//! the gluing construction producing an ordering with dense conjugacy orbit.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::dynreal::{build_tmap, induced_sign, Affine, DynError, PLAction, PLMap};
use crate::exact::{int, rat, Rational};
use crate::order::{Ball, Group, Oracle};
use crate::z2::Z2Ordering;
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreeError {
    #[error("bad word {0:?}")]
    BadWord(String),
    #[error("letter {0} outside rank {1}")]
    Rank(char, usize),
    #[error("magnus expansion vanished up to degree {0}")]
    MagnusVanished(usize),
    #[error("unknown ordering descriptor {0:?}")]
    Descriptor(String),
    #[error("oracle is not total on the ball: {0}")]
    NotTotal(String),
    #[error("gap {0}: neither gluing case applies")]
    NoCase(i64),
    #[error("boxes must sit at consecutive integers from 0")]
    BoxSequence,
    #[error("evaluation of {0} escapes the constructed range")]
    Escape(String),
    #[error("box check failed: {0}")]
    Signo(String),
    #[error("radius-0 boxes cannot be glued")]
    Degenerate,
    #[error("connector of gap {0} does not take k to k + 1 inside its range")]
    PropertyP(i64),
    #[error(transparent)]
    Dyn(#[from] crate::dynreal::DynError),
}

/// Letters are ball indices: 2i is generator i, 2i+1 its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ReducedWord(Vec<u8>);

impl ReducedWord {
    pub fn identity() -> ReducedWord {
        ReducedWord(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn generator(i: usize) -> ReducedWord {
        ReducedWord(vec![2 * i as u8])
    }

    pub fn inverse(&self) -> ReducedWord {
        ReducedWord(self.0.iter().rev().map(|l| l ^ 1).collect())
    }

    pub fn concat(&self, o: &ReducedWord) -> ReducedWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        reduce(&v)
    }

    pub fn parse(s: &str) -> Result<ReducedWord, FreeError> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() || t == "1" || t == "id" {
            return Ok(ReducedWord::identity());
        }
        let mut v = Vec::new();
        for c in t.chars() {
            if !c.is_ascii_alphabetic() {
                return Err(FreeError::BadWord(s.into()));
            }
            let i = c.to_ascii_lowercase() as u8 - b'a';
            v.push(2 * i + u8::from(c.is_ascii_uppercase()));
        }
        Ok(reduce(&v))
    }

    fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| (l / 2) as usize).max()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "id");
        }
        for l in &self.0 {
            let c = (b'a' + l / 2) as char;
            let c = if l & 1 == 1 { c.to_ascii_uppercase() } else { c };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Free reduction; idempotent.
pub fn reduce(letters: &[u8]) -> ReducedWord {
    let mut out: Vec<u8> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&(l ^ 1)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    ReducedWord(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeGroup {
    pub rank: usize,
}

impl FreeGroup {
    pub fn new(rank: usize) -> FreeGroup {
        assert!((1..=26).contains(&rank));
        FreeGroup { rank }
    }

    pub fn f2() -> FreeGroup {
        FreeGroup { rank: 2 }
    }

    pub fn word(&self, s: &str) -> Result<ReducedWord, FreeError> {
        let w = ReducedWord::parse(s)?;
        match w.max_generator() {
            Some(m) if m >= self.rank => {
                Err(FreeError::Rank((b'a' + m as u8) as char, self.rank))
            }
            _ => Ok(w),
        }
    }
}

impl Group for FreeGroup {
    type Elem = ReducedWord;

    fn tag(&self) -> String {
        format!("f{}", self.rank)
    }
    fn identity(&self) -> ReducedWord {
        ReducedWord::identity()
    }
    fn mul(&self, x: &ReducedWord, y: &ReducedWord) -> ReducedWord {
        x.concat(y)
    }
    fn inv(&self, x: &ReducedWord) -> ReducedWord {
        x.inverse()
    }
    fn generators(&self) -> Vec<ReducedWord> {
        (0..self.rank).map(ReducedWord::generator).collect()
    }
    fn format(&self, x: &ReducedWord) -> String {
        x.to_string()
    }
    fn parse(&self, s: &str) -> Result<ReducedWord, String> {
        self.word(s).map_err(|e| e.to_string())
    }
    fn contains(&self, x: &ReducedWord) -> bool {
        x.max_generator().is_none_or(|m| m < self.rank)
    }
    fn eval_word(&self, word: &[usize]) -> ReducedWord {
        reduce(&word.iter().map(|&l| l as u8).collect::<Vec<_>>())
    }
}

/// Truncated Magnus series, one dense coefficient vector per degree.
/// Monomials of degree d are base-`rank` numbers, first variable most
/// significant, so numeric order is lexicographic order with X < Y < …
fn magnus_series(w: &ReducedWord, rank: usize, deg: usize) -> Vec<Vec<i128>> {
    let mut s: Vec<Vec<i128>> = (0..=deg).map(|d| vec![0; rank.pow(d as u32)]).collect();
    s[0][0] = 1;
    for &l in w.letters() {
        let v = (l / 2) as usize;
        let inv = l & 1 == 1;
        let mut next = s.clone();
        for d in 1..=deg {
            let size = rank.pow(d as u32);
            for m in 0..size {
                let mut acc = 0i128;
                let mut prefix = m;
                let mut j = 0;
                while j < d && prefix % rank == v {
                    prefix /= rank;
                    j += 1;
                    if !inv && j > 1 {
                        break;
                    }
                    let c = if inv && j % 2 == 1 { -1 } else { 1 };
                    acc = acc
                        .checked_add(c * s[d - j][prefix])
                        .expect("magnus coefficient overflow");
                }
                next[d][m] += acc;
            }
        }
        s = next;
    }
    s
}

/// Sign of the first nonzero coefficient of the Magnus expansion of w,
/// monomials ordered by degree and then lexicographically.
pub fn magnus_sign_rank(w: &ReducedWord, rank: usize) -> Result<Sign, FreeError> {
    if w.is_empty() {
        return Ok(Sign::Zero);
    }
    let max = 4 * w.len();
    for deg in 1..=max {
        let s = magnus_series(w, rank, deg);
        if let Some(c) = s[deg].iter().find(|c| **c != 0) {
            return Ok(if *c > 0 { Sign::Positive } else { Sign::Negative });
        }
    }
    Err(FreeError::MagnusVanished(max))
}

pub fn magnus_sign(w: &ReducedWord) -> Result<Sign, FreeError> {
    magnus_sign_rank(w, 2)
}

pub fn magnus(group: FreeGroup) -> Oracle<ReducedWord> {
    let rank = group.rank;
    Oracle::new(Arc::new(group), "magnus", move |w: &ReducedWord| {
        magnus_sign_rank(w, rank).expect("nontrivial reduced words have a nonzero coefficient")
    })
}

/// Exponent sums of a and b.
pub fn abelianize(w: &ReducedWord) -> (i64, i64) {
    let mut v = (0, 0);
    for &l in w.letters() {
        let e = if l & 1 == 0 { 1 } else { -1 };
        match l / 2 {
            0 => v.0 += e,
            1 => v.1 += e,
            _ => {}
        }
    }
    v
}

/// Sign of the abelianization under a ℤ² ordering, ties broken by Magnus
/// (or reversed Magnus when `flip` is set) on the kernel.
pub fn abel_ordering(z: &Z2Ordering, flip: bool) -> Oracle<ReducedWord> {
    let zz = z.clone();
    let desc = if flip {
        format!("abelflip:{}", z.descriptor())
    } else {
        format!("abel:{}", z.descriptor())
    };
    Oracle::new(Arc::new(FreeGroup::f2()), desc, move |w: &ReducedWord| {
        match zz.sign(&abelianize(w)) {
            Ok(s) if s != Sign::Zero => s,
            _ => {
                let m = magnus_sign(w).expect("nontrivial reduced words have a nonzero coefficient");
                if flip {
                    -m
                } else {
                    m
                }
            }
        }
    })
}

/// Parses `magnus`, `reverse(D)`, `conj(D,w)`, `conjugate(D,w)`,
/// `abel:<z2>` and `abelflip:<z2>` on F₂.
pub fn f2_ordering(desc: &str) -> Result<Oracle<ReducedWord>, FreeError> {
    let d = desc.trim();
    let bad = || FreeError::Descriptor(desc.to_string());
    if d == "magnus" {
        return Ok(magnus(FreeGroup::f2()));
    }
    if let Some(z) = d.strip_prefix("abelflip:") {
        return Ok(abel_ordering(&Z2Ordering::parse(z).map_err(|_| bad())?, true));
    }
    if let Some(z) = d.strip_prefix("abel:") {
        return Ok(abel_ordering(&Z2Ordering::parse(z).map_err(|_| bad())?, false));
    }
    if let Some(inner) = d.strip_prefix("reverse(").and_then(|x| x.strip_suffix(')')) {
        return Ok(f2_ordering(inner)?.reverse());
    }
    let body = d
        .strip_prefix("conjugate(")
        .or_else(|| d.strip_prefix("conj("))
        .and_then(|x| x.strip_suffix(')'))
        .ok_or_else(bad)?;
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => split = Some(i),
            _ => {}
        }
    }
    let i = split.ok_or_else(bad)?;
    let o = f2_ordering(&body[..i])?;
    let h = FreeGroup::f2().word(&body[i + 1..])?;
    o.conjugate(&h).map_err(|_| bad())
}

/// Deterministic seed list, deduplicated by sign table on the radius-2 ball.
pub fn seed_family(count: usize) -> Vec<Oracle<ReducedWord>> {
    let m = magnus(FreeGroup::f2());
    let mut cands = vec![m.clone(), m.reverse()];
    for z in [
        "z2:psi:sqrt2",
        "z2:psi:0-1*sqrt(2)",
        "z2:psi:1/2",
        "z2:psi:inf",
        "z2:psi:0",
        "z2:psi:2",
        "z2:psi:-2",
        "z2:psi:-1/2",
    ] {
        let z = Z2Ordering::parse(z).expect("fixed descriptors parse");
        for flip in [false, true] {
            let o = abel_ordering(&z, flip);
            cands.push(o.clone());
            cands.push(o.reverse());
        }
    }
    for h in ["b", "ab", "bA"] {
        let h = ReducedWord::parse(h).expect("fixed words parse");
        let base: Vec<Oracle<ReducedWord>> = cands.clone();
        for o in base {
            cands.push(o.conjugate(&h).expect("same universe"));
        }
    }
    let ball = Ball::new(&FreeGroup::f2(), 2);
    let mut seen: Vec<Vec<Sign>> = Vec::new();
    let mut out = Vec::new();
    for o in cands {
        if out.len() == count {
            break;
        }
        let t: Vec<Sign> = ball.elems.iter().map(|x| o.sign(x)).collect();
        if !seen.contains(&t) {
            seen.push(t);
            out.push(o);
        }
    }
    out
}

/// A polyline through a generator's graph inside a box square: the entry
/// point on the left or bottom edge, the realized pairs, the exit point on
/// the right or top edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxGraph {
    pub points: Vec<(Rational, Rational)>,
}

impl BoxGraph {
    pub fn entry(&self) -> &(Rational, Rational) {
        &self.points[0]
    }

    pub fn exit(&self) -> &(Rational, Rational) {
        self.points.last().expect("graphs have an entry and an exit")
    }
}

fn third() -> Rational {
    rat(1, 3)
}

/// Extends from `p` with slope 2, or 1/2 when 2 would hit the corner, to
/// the right or top edge at c.
fn exit_point(p: &(Rational, Rational), c: &Rational) -> (Rational, Rational) {
    if p.0 == *c || p.1 == *c {
        return p.clone();
    }
    for s in [int(2), rat(1, 2)] {
        let y = &p.1 + &s * (c - &p.0);
        match y.cmp(c) {
            Ordering::Less => return (c.clone(), y),
            Ordering::Greater => return (&p.0 + (c - &p.1) / &s, c.clone()),
            Ordering::Equal => {}
        }
    }
    unreachable!("two slopes cannot both reach the corner")
}

fn entry_point(p: &(Rational, Rational), d: &Rational) -> (Rational, Rational) {
    if p.0 == *d || p.1 == *d {
        return p.clone();
    }
    for s in [int(2), rat(1, 2)] {
        let y = &p.1 - &s * (&p.0 - d);
        match y.cmp(d) {
            Ordering::Greater => return (d.clone(), y),
            Ordering::Less => return (&p.0 - (&p.1 - d) / &s, d.clone()),
            Ordering::Equal => {}
        }
    }
    unreachable!("two slopes cannot both reach the corner")
}

/// Dynamical realization of an ordering of F₂ over Bₙ rescaled into the
/// square [k − 1/3, k + 1/3]².
#[derive(Debug, Clone)]
pub struct BoxRealization {
    pub k: i64,
    pub radius: usize,
    pub descriptor: String,
    /// Graphs of a and b.
    pub graphs: Vec<BoxGraph>,
    /// Evaluation at k of every ball word, in ball order.
    pub table: Vec<(ReducedWord, Rational)>,
    pub min: ReducedWord,
    pub max: ReducedWord,
}

impl BoxRealization {
    pub fn lo(&self) -> Rational {
        int(self.k) - third()
    }

    pub fn hi(&self) -> Rational {
        int(self.k) + third()
    }

    fn local_action(&self) -> Result<PLAction, FreeError> {
        let maps = self
            .graphs
            .iter()
            .map(|g| PLMap::interpolate(&g.points, int(1), int(1)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PLAction::new(maps))
    }
}

/// Realizes `o` on Bₙ, rescales [t(min), 0, t(max)] to [k − 1/3, k, k + 1/3]
/// and checks that every ball word moves k the way `o` signs it, with the
/// extrema landing on k ± 1/3.
pub fn build_box(k: i64, o: &Oracle<ReducedWord>, n: usize) -> Result<BoxRealization, FreeError> {
    let f2 = FreeGroup::f2();
    let kk = int(k);
    let lo = &kk - third();
    let hi = &kk + third();
    let ball = Ball::new(&f2, n);
    let tmap = build_tmap(o, &ball.elems).map_err(|e| match e {
        DynError::Tie(a, b) => FreeError::NotTotal(format!("{a} ~ {b}")),
        e => e.into(),
    })?;
    let id = ReducedWord::identity();
    if n == 0 {
        let sixth = rat(1, 6);
        let line = BoxGraph { points: vec![(lo.clone(), &lo + &sixth), (&kk + &sixth, hi.clone())] };
        return Ok(BoxRealization {
            k,
            radius: 0,
            descriptor: o.descriptor().to_string(),
            graphs: vec![line.clone(), line],
            table: vec![(id.clone(), kk)],
            min: id.clone(),
            max: id,
        });
    }
    let min_e = tmap.entries().iter().min_by(|x, y| x.1.cmp(&y.1)).unwrap().clone();
    let max_e = tmap.entries().iter().max_by(|x, y| x.1.cmp(&y.1)).unwrap().clone();
    let (tmin, tmax) = (min_e.1.clone(), max_e.1.clone());
    let phi = |t: &Rational| -> Rational {
        if *t >= Rational::zero() {
            &kk + third() * t / &tmax
        } else {
            &kk - third() * t / &tmin
        }
    };
    let mut graphs = Vec::with_capacity(2);
    for s in f2.generators() {
        let mut pairs: Vec<(Rational, Rational)> = tmap
            .entries()
            .iter()
            .filter_map(|(u, tu)| tmap.get(&s.concat(u)).map(|tsu| (phi(tu), phi(tsu))))
            .collect();
        pairs.sort();
        let first = entry_point(&pairs[0], &lo);
        let last = exit_point(pairs.last().unwrap(), &hi);
        let mut points = Vec::with_capacity(pairs.len() + 2);
        if first != pairs[0] {
            points.push(first);
        }
        let needs_exit = last != *pairs.last().unwrap();
        points.extend(pairs);
        if needs_exit {
            points.push(last);
        }
        graphs.push(BoxGraph { points });
    }
    let mut b = BoxRealization {
        k,
        radius: n,
        descriptor: o.descriptor().to_string(),
        graphs,
        table: Vec::new(),
        min: min_e.0,
        max: max_e.0,
    };
    let act = b.local_action()?;
    for w in &ball.elems {
        let y = act.eval(w, &kk);
        let sign = Sign::of_ordering(y.cmp(&kk));
        if y < lo || y > hi || sign != o.sign(w) {
            return Err(FreeError::Signo(format!("{w} at {k}")));
        }
        b.table.push((w.clone(), y));
    }
    if act.eval(&b.max, &kk) != hi || act.eval(&b.min, &kk) != lo {
        return Err(FreeError::Signo(format!("extrema of box {k}")));
    }
    Ok(b)
}

/// w(k) = k + 1 for the gap after box k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connector {
    pub k: i64,
    /// 1: w = h², 2: w = f⁻¹h.
    pub case: u8,
    /// Takes k + 1/3 to k + 1 − 1/3.
    pub short: ReducedWord,
    /// max(box k)⁻¹… : the short word conjugated by the in-box words.
    pub word: ReducedWord,
}

/// Two PL maps agreeing with the box graphs inside every square, joined
/// across the gaps so that consecutive integers share an orbit.
#[derive(Debug, Clone)]
pub struct GluedAction {
    pub maps: Vec<PLMap>,
    pub connectors: Vec<Connector>,
    pub boxes: Vec<BoxRealization>,
}

fn swap(p: &(Rational, Rational)) -> (Rational, Rational) {
    (p.1.clone(), p.0.clone())
}

fn letter(s: usize, inverse: bool) -> u8 {
    2 * s as u8 + u8::from(inverse)
}

/// Joins consecutive boxes with x₀ = k + 1/2 in each gap.
pub fn glue(boxes: &[BoxRealization]) -> Result<GluedAction, FreeError> {
    if boxes.is_empty() || boxes.iter().enumerate().any(|(i, b)| b.k != i as i64) {
        return Err(FreeError::BoxSequence);
    }
    if boxes.len() > 1 && boxes.iter().any(|b| b.radius == 0) {
        return Err(FreeError::Degenerate);
    }
    let mut points: Vec<Vec<(Rational, Rational)>> =
        (0..2).map(|s| boxes[0].graphs[s].points.clone()).collect();
    let mut connectors = Vec::new();
    for pair in boxes.windows(2) {
        let (bk, bn) = (&pair[0], &pair[1]);
        let k = bk.k;
        let c = bk.hi();
        let c2 = bn.lo();
        let x0 = int(k) + rat(1, 2);
        let exits: Vec<&(Rational, Rational)> = (0..2).map(|s| bk.graphs[s].exit()).collect();
        let entries: Vec<&(Rational, Rational)> = (0..2).map(|s| bn.graphs[s].entry()).collect();
        // l_h < c and r_h = c' for h = s (top exit, left entry) or
        // h = s⁻¹ (right exit, bottom entry).
        let case1 = [(0, false), (0, true), (1, false), (1, true)].into_iter().find(|&(s, inv)| {
            if inv {
                exits[s].0 == c && entries[s].1 == c2
            } else {
                exits[s].1 == c && entries[s].0 == c2
            }
        });
        let mut interior: Vec<Vec<(Rational, Rational)>> = vec![Vec::new(), Vec::new()];
        let short = if let Some((s, inv)) = case1 {
            let pts = [(c.clone(), x0.clone()), (x0.clone(), c2.clone())];
            interior[s] = pts.iter().map(|p| if inv { swap(p) } else { p.clone() }).collect();
            let l = letter(s, inv);
            reduce(&[l, l])
        } else {
            // Orientation of each generator that exits box k through the top.
            let inv: Vec<bool> = (0..2).map(|s| exits[s].1 != c).collect();
            for s in 0..2 {
                let entry_bottom = if inv[s] { entries[s].0 == c2 } else { entries[s].1 == c2 };
                if !entry_bottom {
                    return Err(FreeError::NoCase(k));
                }
            }
            let ph = (c.clone(), x0.clone());
            let pf = (c2.clone(), x0.clone());
            interior[0] = vec![if inv[0] { swap(&ph) } else { ph }];
            interior[1] = vec![if inv[1] { swap(&pf) } else { pf }];
            reduce(&[letter(1, !inv[1]), letter(0, inv[0])])
        };
        for s in 0..2 {
            points[s].extend(interior[s].iter().cloned());
            points[s].extend(bn.graphs[s].points.iter().cloned());
        }
        let word = bn.min.inverse().concat(&short).concat(&bk.max);
        connectors.push(Connector {
            k,
            case: if case1.is_some() { 1 } else { 2 },
            short,
            word,
        });
    }
    let mut maps = Vec::with_capacity(2);
    for p in points {
        let left = Affine::through(int(1), &p[0].0, &p[0].1);
        let last = p.last().unwrap();
        let right = Affine::through(int(1), &last.0, &last.1);
        maps.push(PLMap::new(p, left, right)?);
    }
    let ga = GluedAction { maps, connectors, boxes: boxes.to_vec() };
    ga.check_boxes()?;
    for con in &ga.connectors {
        ga.check_connector(con)?;
    }
    Ok(ga)
}

impl GluedAction {
    pub fn action(&self) -> PLAction {
        PLAction::new(self.maps.clone())
    }

    /// [−1/3, K + 1/3].
    pub fn range(&self) -> (Rational, Rational) {
        (self.boxes[0].lo(), self.boxes.last().unwrap().hi())
    }

    /// Evaluates right to left, failing if an iterate leaves the range.
    pub fn eval_guarded(&self, w: &ReducedWord, x: &Rational) -> Result<Rational, FreeError> {
        let (lo, hi) = self.range();
        let act = self.action();
        let mut y = x.clone();
        for &l in w.letters().iter().rev() {
            y = act.letter(l).apply(&y);
            if y < lo || y > hi {
                return Err(FreeError::Escape(w.to_string()));
            }
        }
        Ok(y)
    }

    /// Box graphs survive the gluing.
    pub fn check_boxes(&self) -> Result<(), FreeError> {
        for b in &self.boxes {
            for (s, g) in b.graphs.iter().enumerate() {
                for (x, y) in &g.points {
                    if self.maps[s].apply(x) != *y {
                        return Err(FreeError::Signo(format!("box {} graph {s} moved at {x}", b.k)));
                    }
                }
            }
        }
        Ok(())
    }

    /// Property P: w(k) = k + 1 with iterates inside [k − 1/3, k + 1 + 1/3].
    pub fn check_connector(&self, con: &Connector) -> Result<(), FreeError> {
        let k = int(con.k);
        let lo = &k - third();
        let hi = &k + int(1) + third();
        let act = self.action();
        let mut y = k.clone();
        for &l in con.word.letters().iter().rev() {
            y = act.letter(l).apply(&y);
            if y < lo || y > hi {
                return Err(FreeError::PropertyP(con.k));
            }
        }
        if y != k + int(1) {
            return Err(FreeError::PropertyP(con.k));
        }
        Ok(())
    }

    /// w_k = connector_{k−1} ⋯ connector₀, taking 0 to k.
    pub fn word_to(&self, k: usize) -> ReducedWord {
        self.connectors[..k]
            .iter()
            .fold(ReducedWord::identity(), |acc, c| c.word.concat(&acc))
    }

    /// Sign at the first reference moved by w; refs must start at 0.
    pub fn glued_sign(&self, refs: &[Rational], w: &ReducedWord) -> Result<Sign, FreeError> {
        for r in refs {
            let y = self.eval_guarded(w, r)?;
            if y != *r {
                return Ok(Sign::of_ordering(y.cmp(r)));
            }
        }
        Ok(Sign::Zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedCheck {
    pub k: usize,
    pub descriptor: String,
    pub radius: usize,
    pub word: ReducedWord,
    pub reaches: bool,
    /// First ball element signed differently.
    pub witness: Option<String>,
    /// Conjugated words whose evaluation left [−1/3, K + 1/3].
    pub escapes: usize,
}

impl SeedCheck {
    pub fn passed(&self) -> bool {
        self.reaches && self.witness.is_none()
    }
}

/// For each seed k: w_k(0) = k, and conjugating the glued ordering by w_k⁻¹
/// agrees with the seed on its ball.
///
/// The conjugated words are evaluated on the whole glued maps: w_k⁻¹ is
/// applied at x(k) ≠ k and may run into the slope-1 tails, which is harmless
/// since the sign only depends on monotonicity. Such runs are counted.
pub fn verify_density(
    ga: &GluedAction,
    seeds: &[(usize, Oracle<ReducedWord>)],
) -> Vec<SeedCheck> {
    let refs = [Rational::zero()];
    let f2 = FreeGroup::f2();
    let act = ga.action();
    seeds
        .iter()
        .enumerate()
        .map(|(k, (radius, o))| {
            let word = if k < ga.boxes.len() { ga.word_to(k) } else { ReducedWord::identity() };
            let reaches = k < ga.boxes.len()
                && ga.eval_guarded(&word, &Rational::zero()).ok() == Some(int(k as i64));
            let wi = word.inverse();
            let mut witness = None;
            let mut escapes = 0;
            for x in Ball::new(&f2, *radius).elems {
                let c = wi.concat(&x).concat(&word);
                if ga.eval_guarded(&c, &Rational::zero()).is_err() {
                    escapes += 1;
                }
                if induced_sign(&act, &refs, &c) != o.sign(&x) {
                    witness = Some(x.to_string());
                    break;
                }
            }
            SeedCheck {
                k,
                descriptor: o.descriptor().to_string(),
                radius: *radius,
                word,
                reaches,
                witness,
                escapes,
            }
        })
        .collect()
}

/// Builds boxes 0..K from the seeds and glues them.
pub fn build_glued(seeds: &[(usize, Oracle<ReducedWord>)]) -> Result<GluedAction, FreeError> {
    let boxes = seeds
        .iter()
        .enumerate()
        .map(|(k, (n, o))| build_box(k as i64, o, *n))
        .collect::<Result<Vec<_>, _>>()?;
    glue(&boxes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{bi_invariance_check, left_invariance_check, totality_check};
    use proptest::prelude::*;

    fn w(s: &str) -> ReducedWord {
        ReducedWord::parse(s).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(w("abB"), w("a"));
        assert_eq!(reduce(&[]), ReducedWord::identity());
        assert_eq!(w("abAaB").to_string(), "a");
        assert_eq!(w("aBA").inverse().to_string(), "abA");
        assert_eq!(w("").to_string(), "id");
    }

    #[test]
    fn magnus_examples() {
        assert_eq!(magnus_sign(&w("a")).unwrap(), Sign::Positive);
        assert_eq!(magnus_sign(&w("A")).unwrap(), Sign::Negative);
        assert_eq!(magnus_sign(&w("")).unwrap(), Sign::Zero);
        assert_eq!(magnus_sign(&w("abAB")).unwrap(), Sign::Positive);
        assert_eq!(magnus_sign(&w("baBA")).unwrap(), Sign::Negative);
        // a b⁻¹: coefficient of X is 1.
        assert_eq!(magnus_sign(&w("aB")).unwrap(), Sign::Positive);
        // b a⁻¹: coefficient of X is −1.
        assert_eq!(magnus_sign(&w("bA")).unwrap(), Sign::Negative);
    }

    #[test]
    fn magnus_series_of_commutator() {
        // Independent hand expansion: [a,b] = 1 + XY − YX + (degree ≥ 3).
        let s = magnus_series(&w("abAB"), 2, 2);
        assert_eq!(s[1], vec![0, 0]);
        assert_eq!(s[2], vec![0, 1, -1, 0]);
    }

    #[test]
    fn magnus_is_a_bi_ordering_on_balls() {
        let o = magnus(FreeGroup::f2());
        let b3 = Ball::new(o.group().as_ref(), 3);
        assert!(totality_check(&o, &b3).is_ok());
        let b2 = Ball::new(o.group().as_ref(), 2);
        assert!(left_invariance_check(&o, &b2, &b2.elems).is_ok());
        assert!(bi_invariance_check(&o, &b3, &b2.elems).is_ok());
    }

    #[test]
    fn descriptors_parse() {
        let m = f2_ordering("magnus").unwrap();
        let r = f2_ordering("reverse(magnus)").unwrap();
        let c = f2_ordering("conjugate(reverse(magnus), ab)").unwrap();
        let x = w("aB");
        assert_eq!(r.sign(&x), -m.sign(&x));
        assert_eq!(c.descriptor(), "conj(reverse(magnus),ab)");
        assert_eq!(f2_ordering(c.descriptor()).unwrap().sign(&x), c.sign(&x));
        let ab = f2_ordering("abel:z2:psi:sqrt2").unwrap();
        assert_eq!(ab.sign(&w("B")), Sign::Negative);
        assert_eq!(ab.sign(&w("abAB")), Sign::Positive);
        assert_eq!(f2_ordering("abelflip:z2:psi:sqrt2").unwrap().sign(&w("abAB")), Sign::Negative);
        assert!(f2_ordering("bogus").is_err());
    }

    #[test]
    fn seeds_are_distinct_orderings() {
        assert_eq!(seed_family(1)[0].descriptor(), "magnus");
        let seeds = seed_family(6);
        assert_eq!(seeds.len(), 6);
        let ball = Ball::new(&FreeGroup::f2(), 2);
        for (i, a) in seeds.iter().enumerate() {
            assert!(totality_check(a, &ball).is_ok());
            assert!(left_invariance_check(a, &ball, &ball.elems).is_ok());
            for b in &seeds[..i] {
                assert!(ball.elems.iter().any(|x| a.sign(x) != b.sign(x)));
            }
        }
    }

    #[test]
    fn magnus_box() {
        let o = magnus(FreeGroup::f2());
        let b = build_box(0, &o, 2).unwrap();
        let at = |s: &str| b.table.iter().find(|e| e.0 == w(s)).unwrap().1.clone();
        assert!(at("a") > Rational::zero());
        assert!(at("A") < Rational::zero());
        assert_eq!(at(&b.max.to_string()), rat(1, 3));
        assert_eq!(at(&b.min.to_string()), rat(-1, 3));
        let r = build_box(0, &o.reverse(), 2).unwrap();
        assert_eq!(r.max, b.min);
        assert_eq!(r.min, b.max);
        let z = build_box(3, &o, 0).unwrap();
        assert_eq!(z.table, vec![(ReducedWord::identity(), int(3))]);
    }

    #[test]
    fn single_box_glue() {
        let o = magnus(FreeGroup::f2());
        let ga = build_glued(&[(2, o.clone())]).unwrap();
        assert!(ga.connectors.is_empty());
        let rep = verify_density(&ga, &[(2, o)]);
        assert!(rep[0].passed(), "{rep:?}");
        assert_eq!(ga.glued_sign(&[Rational::zero()], &ReducedWord::identity()).unwrap(), Sign::Zero);
    }

    #[test]
    fn two_and_three_box_glue() {
        let m = magnus(FreeGroup::f2());
        let seeds = vec![(2, m.clone()), (2, m.reverse()), (2, f2_ordering("conj(magnus,a)").unwrap())];
        let ga = build_glued(&seeds).unwrap();
        assert_eq!(ga.connectors.len(), 2);
        assert_eq!(ga.eval_guarded(&ga.connectors[0].word, &int(0)).unwrap(), int(1));
        for k in 0..3 {
            assert_eq!(ga.eval_guarded(&ga.word_to(k), &int(0)).unwrap(), int(k as i64));
        }
        let rep = verify_density(&ga, &seeds);
        assert!(rep.iter().all(SeedCheck::passed), "{rep:?}");
        let x = w("a");
        assert_eq!(ga.glued_sign(&[Rational::zero()], &x).unwrap(), m.sign(&x));
    }

    #[test]
    fn corrupted_connector_fails() {
        let m = magnus(FreeGroup::f2());
        let seeds = vec![(2, m.clone()), (2, m.reverse())];
        let mut ga = build_glued(&seeds).unwrap();
        ga.connectors[0].word = ga.connectors[0].word.concat(&w("a"));
        assert!(ga.check_connector(&ga.connectors[0]).is_err());
        let rep = verify_density(&ga, &seeds);
        assert!(rep[0].passed());
        assert!(!rep[1].passed());
    }

    #[test]
    fn gluing_covers_many_seeds() {
        let seeds: Vec<(usize, Oracle<ReducedWord>)> =
            seed_family(8).into_iter().map(|o| (2, o)).collect();
        let ga = build_glued(&seeds).unwrap();
        assert!(ga.connectors.iter().any(|c| c.case == 1));
        assert!(ga.connectors.iter().any(|c| c.case == 2));
        let rep = verify_density(&ga, &seeds);
        assert!(rep.iter().all(SeedCheck::passed), "{rep:?}");
    }

    fn word_strategy() -> impl Strategy<Value = Vec<u8>> {
        prop::collection::vec(0u8..4, 0..12)
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(v in word_strategy()) {
            let r = reduce(&v);
            prop_assert_eq!(reduce(r.letters()), r.clone());
            prop_assert!(r.letters().windows(2).all(|p| p[0] != p[1] ^ 1));
        }

        #[test]
        fn magnus_sign_is_antisymmetric(v in word_strategy()) {
            let r = reduce(&v);
            let s = magnus_sign(&r).unwrap();
            prop_assert_eq!(magnus_sign(&r.inverse()).unwrap(), -s);
            prop_assert_eq!(s == Sign::Zero, r.is_empty());
        }

        #[test]
        fn magnus_is_conjugation_invariant(v in word_strategy(), h in word_strategy()) {
            let r = reduce(&v);
            let hr = reduce(&h);
            let c = hr.concat(&r).concat(&hr.inverse());
            prop_assert_eq!(magnus_sign(&c).unwrap(), magnus_sign(&r).unwrap());
        }
    }
}
