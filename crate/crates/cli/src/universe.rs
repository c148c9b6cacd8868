//! Group tags and ordering descriptors.

use std::sync::Arc;

use ordercalc::affine::{bs_conradian, bs_ordering, BSElement, BS};
use ordercalc::catalog::{
    cn_ordering, enumerate_cn_corderings, enumerate_t_orderings, h_ordering_parse, t_ordering, Cn,
    CnElement, HElement, Heisenberg, SignVector, TElement, Tararin,
};
use ordercalc::free::{f2_ordering, seed_family, FreeGroup, ReducedWord};
use ordercalc::order::{Element, Group, Oracle};
use ordercalc::thompson::{FElement, FOrdering, ThompsonF};
use ordercalc::z2::{Z2Ordering, Z2};

type Parser<E> = Box<dyn Fn(&str) -> Result<Oracle<E>, String>>;
type Catalog<E> = Box<dyn Fn() -> Result<Vec<Oracle<E>>, String>>;

pub struct Universe<E: Element> {
    pub group: Arc<dyn Group<Elem = E>>,
    parse: Parser<E>,
    catalog: Option<Catalog<E>>,
}

impl<E: Element> Universe<E> {
    fn new(group: Arc<dyn Group<Elem = E>>, parse: Parser<E>) -> Universe<E> {
        Universe { group, parse, catalog: None }
    }

    fn with_catalog(mut self, c: Catalog<E>) -> Universe<E> {
        self.catalog = Some(c);
        self
    }

    pub fn element(&self, s: &str) -> Result<E, String> {
        let x = self.group.parse(s)?;
        if !self.group.contains(&x) {
            return Err(format!("{s:?} is not in {}", self.group.tag()));
        }
        Ok(x)
    }

    pub fn format(&self, x: &E) -> String {
        self.group.format(x)
    }

    /// Group-specific descriptors, wrapped in `reverse(…)` or `conj(…, h)`.
    pub fn ordering(&self, desc: &str) -> Result<Oracle<E>, String> {
        let d = desc.trim();
        if let Some(inner) = d.strip_prefix("reverse(").and_then(|r| r.strip_suffix(')')) {
            return Ok(self.ordering(inner)?.reverse());
        }
        let conj = d.strip_prefix("conj(").or_else(|| d.strip_prefix("conjugate("));
        if let Some(inner) = conj.and_then(|r| r.strip_suffix(')')) {
            let (o, h) = split_last_top_comma(inner).ok_or_else(|| format!("bad descriptor {desc:?}"))?;
            let h = self.element(h)?;
            return self.ordering(o)?.conjugate(&h).map_err(|e| e.to_string());
        }
        (self.parse)(d)
    }

    pub fn catalog(&self) -> Result<Vec<Oracle<E>>, String> {
        match &self.catalog {
            Some(c) => c(),
            None => Err(format!("{} has no finite catalog", self.group.tag())),
        }
    }
}

fn split_last_top_comma(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut last = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => last = Some(i),
            _ => {}
        }
    }
    last.map(|i| (s[..i].trim(), s[i + 1..].trim()))
}

pub enum AnyUniverse {
    Tararin(Universe<TElement>),
    Cn(Universe<CnElement>),
    Heisenberg(Universe<HElement>),
    Bs(Universe<BSElement>),
    Z2(Universe<(i64, i64)>),
    F2(Universe<ReducedWord>),
    Thompson(Universe<FElement>),
}

/// Runs a generic body against whichever universe the tag selected.
#[macro_export]
macro_rules! with_universe {
    ($u:expr, $x:ident => $body:expr) => {
        match $u {
            $crate::universe::AnyUniverse::Tararin($x) => $body,
            $crate::universe::AnyUniverse::Cn($x) => $body,
            $crate::universe::AnyUniverse::Heisenberg($x) => $body,
            $crate::universe::AnyUniverse::Bs($x) => $body,
            $crate::universe::AnyUniverse::Z2($x) => $body,
            $crate::universe::AnyUniverse::F2($x) => $body,
            $crate::universe::AnyUniverse::Thompson($x) => $body,
        }
    };
}

fn param(tag: &str, prefix: &str) -> Result<Option<usize>, String> {
    match tag.strip_prefix(prefix) {
        None => Ok(None),
        Some(n) => n.parse().map(Some).map_err(|_| format!("bad group tag {tag:?}")),
    }
}

pub fn universe(tag: &str) -> Result<AnyUniverse, String> {
    let tag = tag.trim();
    if let Some(n) = param(tag, "tararin:")? {
        let g = Tararin::new(n).map_err(|e| e.to_string())?;
        let parse: Parser<TElement> = Box::new(move |d| {
            let sv = SignVector::parse(d).map_err(|e| e.to_string())?;
            t_ordering(g, &sv).map_err(|e| e.to_string())
        });
        let cat: Catalog<TElement> = Box::new(move || enumerate_t_orderings(n).map_err(|e| e.to_string()));
        return Ok(AnyUniverse::Tararin(Universe::new(Arc::new(g), parse).with_catalog(cat)));
    }
    if let Some(n) = param(tag, "cn:")? {
        let g = Cn::new(n).map_err(|e| e.to_string())?;
        let parse: Parser<CnElement> = Box::new(move |d| {
            let sv = SignVector::parse(d).map_err(|e| e.to_string())?;
            cn_ordering(g, &sv).map_err(|e| e.to_string())
        });
        let cat: Catalog<CnElement> = Box::new(move || enumerate_cn_corderings(n).map_err(|e| e.to_string()));
        return Ok(AnyUniverse::Cn(Universe::new(Arc::new(g), parse).with_catalog(cat)));
    }
    if let Some(l) = param(tag, "bs:")? {
        let g = BS::new(l as i64).map_err(|e| e.to_string())?;
        let parse: Parser<BSElement> = Box::new(move |d| bs_ordering(g, d).map_err(|e| e.to_string()));
        let cat: Catalog<BSElement> = Box::new(move || {
            (1..=4).map(|k| bs_conradian(g, k).map_err(|e| e.to_string())).collect()
        });
        return Ok(AnyUniverse::Bs(Universe::new(Arc::new(g), parse).with_catalog(cat)));
    }
    match tag {
        "heisenberg" => {
            let parse: Parser<HElement> = Box::new(|d| h_ordering_parse(d).map_err(|e| e.to_string()));
            Ok(AnyUniverse::Heisenberg(Universe::new(Arc::new(Heisenberg), parse)))
        }
        "z2" => {
            let parse: Parser<(i64, i64)> =
                Box::new(|d| Z2Ordering::parse(d).map(|z| z.oracle()).map_err(|e| e.to_string()));
            Ok(AnyUniverse::Z2(Universe::new(Arc::new(Z2), parse)))
        }
        "f2" => {
            let parse: Parser<ReducedWord> = Box::new(|d| f2_ordering(d).map_err(|e| e.to_string()));
            let cat: Catalog<ReducedWord> = Box::new(|| Ok(seed_family(8)));
            Ok(AnyUniverse::F2(Universe::new(Arc::new(FreeGroup::f2()), parse).with_catalog(cat)))
        }
        "thompson" => {
            let parse: Parser<FElement> =
                Box::new(|d| FOrdering::parse(d).map(|o| o.oracle()).map_err(|e| e.to_string()));
            Ok(AnyUniverse::Thompson(Universe::new(Arc::new(ThompsonF), parse)))
        }
        _ => Err(format!("unknown group tag {tag:?}")),
    }
}
