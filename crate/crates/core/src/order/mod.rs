//! Ordering oracles, combinators, ball enumeration, Conradian and crossing
//! checkers.

mod ball;
mod crossing;
mod oracle;
mod suites;

use std::fmt::Debug;
use std::hash::Hash;

pub use ball::{agreement_radius, sign_table, Agreement, Ball};
pub use crossing::{
    conjugate_approx_search, conradian_check, crossing_from_witness, crossing_search,
    crossing_search_with, soul_bound_check, verify_crossing, CheckReport, CondStatus,
    ConjugateHit, ConradianResult, CrossingError, CrossingWitness, Exactness, SearchFilter,
    SoulResult,
};
pub use oracle::{ForallDecider, Oracle, OrderError};
pub use suites::{
    bi_invariance_check, inverse_check, left_invariance_check, semigroup_check, totality_check,
    SuiteFailure,
};

/// Bounds shared by all group elements.
pub trait Element: Clone + Eq + Hash + Debug + Send + Sync + 'static {}

impl<T: Clone + Eq + Hash + Debug + Send + Sync + 'static> Element for T {}

/// A finitely generated group with computable normal forms.
pub trait Group: Send + Sync {
    type Elem: Element;

    /// Universe tag, e.g. `tararin:2`.
    fn tag(&self) -> String;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;
    /// Generators in the fixed enumeration order; inverses are added by balls.
    fn generators(&self) -> Vec<Self::Elem>;
    fn format(&self, x: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem, String>;

    fn contains(&self, _x: &Self::Elem) -> bool {
        true
    }

    fn is_identity(&self, x: &Self::Elem) -> bool {
        *x == self.identity()
    }

    fn pow(&self, x: &Self::Elem, n: i64) -> Self::Elem {
        let base = if n < 0 { self.inv(x) } else { x.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    fn conj(&self, h: &Self::Elem, x: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(h, x), &self.inv(h))
    }

    /// Letters of the ball alphabet: g₁, g₁⁻¹, g₂, g₂⁻¹, …
    fn letters(&self) -> Vec<Self::Elem> {
        self.generators()
            .into_iter()
            .flat_map(|g| {
                let gi = self.inv(&g);
                [g, gi]
            })
            .collect()
    }

    /// Evaluates a word in ball letters.
    fn eval_word(&self, word: &[usize]) -> Self::Elem {
        let letters = self.letters();
        word.iter().fold(self.identity(), |acc, &i| self.mul(&acc, &letters[i]))
    }
}

#[cfg(test)]
pub(crate) mod testing {
    use super::*;
    use std::sync::Arc;

    /// ℤ written additively, for order-core unit tests.
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
            s.trim().parse().map_err(|e| format!("{e}"))
        }
    }

    pub fn standard() -> Oracle<i64> {
        Oracle::new(Arc::new(Integers), "std", |x: &i64| crate::Sign::of_i64(*x))
    }
}
