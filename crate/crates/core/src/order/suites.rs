//! Finite-sample checks of the positive-cone axioms.

use super::{Ball, Element, Oracle};
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteFailure<E> {
    pub property: &'static str,
    pub elements: Vec<E>,
}

fn fail<E>(property: &'static str, elements: Vec<E>) -> Result<(), SuiteFailure<E>> {
    Err(SuiteFailure { property, elements })
}

/// sign(g) = Zero exactly at the identity.
pub fn totality_check<E>(o: &Oracle<E>, ball: &Ball<E>) -> Result<(), SuiteFailure<E>>
where
    E: Element,
{
    let gr = o.group();
    for x in &ball.elems {
        if (o.sign(x) == Sign::Zero) != gr.is_identity(x) {
            return fail("totality", vec![x.clone()]);
        }
    }
    Ok(())
}

/// sign(g⁻¹) = −sign(g).
pub fn inverse_check<E>(o: &Oracle<E>, ball: &Ball<E>) -> Result<(), SuiteFailure<E>>
where
    E: Element,
{
    let gr = o.group();
    for x in &ball.elems {
        if o.sign(&gr.inv(x)) != -o.sign(x) {
            return fail("inverse", vec![x.clone()]);
        }
    }
    Ok(())
}

/// cmp(f, g) = cmp(hf, hg) for f, g in the ball and h among `translators`.
pub fn left_invariance_check<E>(
    o: &Oracle<E>,
    ball: &Ball<E>,
    translators: &[E],
) -> Result<(), SuiteFailure<E>>
where
    E: Element,
{
    let gr = o.group();
    for f in &ball.elems {
        for g in &ball.elems {
            let base = o.cmp_unchecked(f, g);
            for h in translators {
                if o.cmp_unchecked(&gr.mul(h, f), &gr.mul(h, g)) != base {
                    return fail("left-invariance", vec![f.clone(), g.clone(), h.clone()]);
                }
            }
        }
    }
    Ok(())
}

/// Products of positive elements are positive.
pub fn semigroup_check<E>(o: &Oracle<E>, ball: &Ball<E>) -> Result<(), SuiteFailure<E>>
where
    E: Element,
{
    let gr = o.group();
    let pos: Vec<&E> = ball.elems.iter().filter(|x| o.sign(x) == Sign::Positive).collect();
    for f in &pos {
        for g in &pos {
            if o.sign(&gr.mul(f, g)) != Sign::Positive {
                return fail("semigroup", vec![(*f).clone(), (*g).clone()]);
            }
        }
    }
    Ok(())
}

/// sign(h x h⁻¹) = sign(x) for x in `ball` and h in `conjugators`.
pub fn bi_invariance_check<E>(
    o: &Oracle<E>,
    ball: &Ball<E>,
    conjugators: &[E],
) -> Result<(), SuiteFailure<E>>
where
    E: Element,
{
    let gr = o.group();
    for h in conjugators {
        for x in &ball.elems {
            if o.sign(&gr.conj(h, x)) != o.sign(x) {
                return fail("bi-invariance", vec![x.clone(), h.clone()]);
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;

    #[test]
    fn integers_pass_everything() {
        let o = standard();
        let b = Ball::new(&Integers, 4);
        assert!(totality_check(&o, &b).is_ok());
        assert!(inverse_check(&o, &b).is_ok());
        assert!(left_invariance_check(&o, &b, &b.elems).is_ok());
        assert!(semigroup_check(&o, &b).is_ok());
        assert!(bi_invariance_check(&o, &b, &b.elems).is_ok());
    }

    #[test]
    fn broken_oracle_is_caught() {
        let o = standard().flip_on_convex("odd", |x: &i64| x % 2 != 0);
        let b = Ball::new(&Integers, 4);
        assert_eq!(semigroup_check(&o, &b).unwrap_err().property, "semigroup");
    }
}
