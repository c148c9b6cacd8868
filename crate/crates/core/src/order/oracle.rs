use std::fmt;
use std::sync::Arc;

use super::{Element, Group};
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("element {0} is not in universe {1}")]
    UniverseMismatch(String, String),
    #[error("oracles live in different universes: {0} vs {1}")]
    OracleMismatch(String, String),
}

/// Decides `cmp(gⁿu, v) == target` for every n ≥ 1.
pub type ForallDecider<E> = Arc<dyn Fn(&E, &E, &E, Sign) -> bool + Send + Sync>;

type SignFn<E> = Arc<dyn Fn(&E) -> Sign + Send + Sync>;

/// A positive cone given by its sign function.
pub struct Oracle<E> {
    group: Arc<dyn Group<Elem = E>>,
    descriptor: String,
    sign: SignFn<E>,
    decider: Option<ForallDecider<E>>,
    partial: bool,
    reverse_of: Option<Box<Oracle<E>>>,
}

impl<E> Clone for Oracle<E> {
    fn clone(&self) -> Self {
        Oracle {
            group: self.group.clone(),
            descriptor: self.descriptor.clone(),
            sign: self.sign.clone(),
            decider: self.decider.clone(),
            partial: self.partial,
            reverse_of: self.reverse_of.clone(),
        }
    }
}

impl<E: Element> fmt::Debug for Oracle<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Oracle({} on {})", self.descriptor, self.group.tag())
    }
}

impl<E: Element> Oracle<E> {
    pub fn new<F>(group: Arc<dyn Group<Elem = E>>, descriptor: impl Into<String>, sign: F) -> Self
    where
        F: Fn(&E) -> Sign + Send + Sync + 'static,
    {
        Oracle {
            group,
            descriptor: descriptor.into(),
            sign: Arc::new(sign),
            decider: None,
            partial: false,
            reverse_of: None,
        }
    }

    pub fn with_decider(mut self, d: ForallDecider<E>) -> Self {
        self.decider = Some(d);
        self
    }

    pub fn renamed(mut self, descriptor: impl Into<String>) -> Self {
        self.descriptor = descriptor.into();
        self
    }

    /// Marks an oracle that may return Zero off the identity.
    pub fn flagged_partial(mut self) -> Self {
        self.partial = true;
        self
    }

    pub fn is_partial(&self) -> bool {
        self.partial
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn universe(&self) -> String {
        self.group.tag()
    }

    pub fn group(&self) -> &Arc<dyn Group<Elem = E>> {
        &self.group
    }

    pub fn decider(&self) -> Option<&ForallDecider<E>> {
        self.decider.as_ref()
    }

    pub fn sign(&self, g: &E) -> Sign {
        (self.sign)(g)
    }

    fn check(&self, g: &E) -> Result<(), OrderError> {
        if self.group.contains(g) {
            Ok(())
        } else {
            Err(OrderError::UniverseMismatch(format!("{g:?}"), self.group.tag()))
        }
    }

    /// Sign of g⁻¹h: Positive means g ≺ h.
    pub fn cmp(&self, g: &E, h: &E) -> Result<Sign, OrderError> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.cmp_unchecked(g, h))
    }

    pub(crate) fn cmp_unchecked(&self, g: &E, h: &E) -> Sign {
        let gr = &self.group;
        self.sign(&gr.mul(&gr.inv(g), h))
    }

    pub fn reverse(&self) -> Oracle<E> {
        if let Some(inner) = &self.reverse_of {
            return (**inner).clone();
        }
        let s = self.sign.clone();
        let decider = self.decider.clone().map(|d| {
            let f: ForallDecider<E> = Arc::new(move |g: &E, u: &E, v: &E, t: Sign| d(g, u, v, -t));
            f
        });
        Oracle {
            group: self.group.clone(),
            descriptor: format!("reverse({})", self.descriptor),
            sign: Arc::new(move |x| -s(x)),
            decider,
            partial: self.partial,
            reverse_of: Some(Box::new(self.clone())),
        }
    }

    /// sign'(x) = sign(h x h⁻¹).
    pub fn conjugate(&self, h: &E) -> Result<Oracle<E>, OrderError> {
        self.check(h)?;
        if self.group.is_identity(h) {
            return Ok(self.clone());
        }
        let gr = self.group.clone();
        let s = self.sign.clone();
        let hh = h.clone();
        let hi = gr.inv(h);
        let conj = {
            let gr = gr.clone();
            move |x: &E| gr.mul(&gr.mul(&hh, x), &hi)
        };
        let conj = Arc::new(conj);
        let decider = self.decider.clone().map(|d| {
            let c = conj.clone();
            let f: ForallDecider<E> =
                Arc::new(move |g: &E, u: &E, v: &E, t: Sign| d(&c(g), &c(u), &c(v), t));
            f
        });
        let c = conj.clone();
        Ok(Oracle {
            group: gr.clone(),
            descriptor: format!("conj({},{})", self.descriptor, gr.format(h)),
            sign: Arc::new(move |x| s(&c(x))),
            decider,
            partial: self.partial,
            reverse_of: None,
        })
    }

    /// Reverses the sign on the members of a convex subgroup.
    pub fn flip_on_convex<P>(&self, name: &str, member: P) -> Oracle<E>
    where
        P: Fn(&E) -> bool + Send + Sync + 'static,
    {
        let s = self.sign.clone();
        Oracle {
            group: self.group.clone(),
            descriptor: format!("flip({},{})", self.descriptor, name),
            sign: Arc::new(move |x| if member(x) { -s(x) } else { s(x) }),
            decider: None,
            partial: self.partial,
            reverse_of: None,
        }
    }

    /// Lexicographic extension: the quotient decides off C, `sub` decides on C.
    ///
    /// A trivial projection of an element outside C is reported as Zero and
    /// surfaces through the totality suite.
    pub fn convex_extension<Q, M, P>(
        group: Arc<dyn Group<Elem = E>>,
        quotient: Oracle<Q>,
        sub: Oracle<E>,
        member: M,
        projection: P,
    ) -> Oracle<E>
    where
        Q: Element,
        M: Fn(&E) -> bool + Send + Sync + 'static,
        P: Fn(&E) -> Q + Send + Sync + 'static,
    {
        let descriptor = format!("ext({},{})", quotient.descriptor, sub.descriptor);
        Oracle::new(group, descriptor, move |x| {
            if member(x) {
                sub.sign(x)
            } else {
                quotient.sign(&projection(x))
            }
        })
    }

    /// Finds a sample element outside C whose projection is trivial.
    pub fn validate_projection<Q: PartialEq>(
        member: impl Fn(&E) -> bool,
        projection: impl Fn(&E) -> Q,
        trivial: &Q,
        sample: &[E],
    ) -> Result<(), E> {
        for x in sample {
            if projection(x) == *trivial && !member(x) {
                return Err(x.clone());
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;

    #[test]
    fn reverse_is_an_involution() {
        let o = standard();
        let r = o.reverse();
        assert_eq!(r.sign(&3), Sign::Negative);
        assert_eq!(r.sign(&0), Sign::Zero);
        let rr = r.reverse();
        assert_eq!(rr.descriptor(), o.descriptor());
        for x in -5..=5 {
            assert_eq!(rr.sign(&x), o.sign(&x));
        }
    }

    #[test]
    fn cmp_is_reflexive_zero() {
        let o = standard();
        assert_eq!(o.cmp(&4, &4).unwrap(), Sign::Zero);
        assert_eq!(o.cmp(&1, &4).unwrap(), Sign::Positive);
    }

    #[test]
    fn conjugate_by_identity_is_same() {
        let o = standard();
        let c = o.conjugate(&0).unwrap();
        assert_eq!(c.descriptor(), o.descriptor());
        let c2 = o.conjugate(&5).unwrap();
        for x in -4..=4 {
            assert_eq!(c2.sign(&x), o.sign(&x));
        }
    }

    #[test]
    fn flip_extremes() {
        let o = standard();
        let triv = o.flip_on_convex("trivial", |x| *x == 0);
        let whole = o.flip_on_convex("all", |_| true);
        for x in -4..=4 {
            assert_eq!(triv.sign(&x), o.sign(&x));
            assert_eq!(whole.sign(&x), o.reverse().sign(&x));
        }
    }
}
