use std::collections::HashMap;

use super::{Element, Group, Oracle};
use crate::Sign;

/// Elements of word length ≤ radius in first-appearance length-lex order.
#[derive(Debug, Clone)]
pub struct Ball<E> {
    pub radius: usize,
    pub elems: Vec<E>,
    /// Length-lex least word (letter indices) for each element.
    pub words: Vec<Vec<usize>>,
    index: HashMap<E, usize>,
}

impl<E: Clone + Eq + std::hash::Hash> Ball<E> {
    pub fn new<G: Group<Elem = E> + ?Sized>(group: &G, radius: usize) -> Ball<E> {
        let letters = group.letters();
        let id = group.identity();
        let mut elems = vec![id.clone()];
        let mut words = vec![Vec::new()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut frontier = 0..1;
        for _ in 0..radius {
            let start = elems.len();
            for i in frontier.clone() {
                for (li, l) in letters.iter().enumerate() {
                    let x = group.mul(&elems[i], l);
                    if !index.contains_key(&x) {
                        index.insert(x.clone(), elems.len());
                        let mut w = words[i].clone();
                        w.push(li);
                        elems.push(x);
                        words.push(w);
                    }
                }
            }
            frontier = start..elems.len();
        }
        Ball { radius, elems, words, index }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn position(&self, x: &E) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn contains(&self, x: &E) -> bool {
        self.index.contains_key(x)
    }

    pub fn word_length(&self, i: usize) -> usize {
        self.words[i].len()
    }

    /// Prefix of elements of length ≤ r.
    pub fn within(&self, r: usize) -> &[E] {
        let end = self.words.iter().position(|w| w.len() > r).unwrap_or(self.elems.len());
        &self.elems[..end]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Agreement<E> {
    DisagreeAt { radius: usize, witness: E },
    AgreeUpToBound,
}

/// Smallest radius whose ball contains an element signed differently.
pub fn agreement_radius<E>(o1: &Oracle<E>, o2: &Oracle<E>, max_r: usize) -> Agreement<E>
where
    E: Element,
{
    let ball = Ball::new(o1.group().as_ref(), max_r);
    for (i, x) in ball.elems.iter().enumerate() {
        if o1.sign(x) != o2.sign(x) {
            return Agreement::DisagreeAt { radius: ball.word_length(i), witness: x.clone() };
        }
    }
    Agreement::AgreeUpToBound
}

/// Records in ball order.
pub fn sign_table<E>(o: &Oracle<E>, ball: &Ball<E>) -> Vec<(E, Sign)>
where
    E: Element,
{
    ball.elems.iter().map(|x| (x.clone(), o.sign(x))).collect()
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;

    #[test]
    fn integer_ball_order() {
        let b = Ball::new(&Integers, 3);
        assert_eq!(b.elems, vec![0, 1, -1, 2, -2, 3, -3]);
        assert_eq!(b.within(1), &[0, 1, -1]);
        assert_eq!(Ball::new(&Integers, 0).elems, vec![0]);
    }

    #[test]
    fn agreement_with_self_and_reverse() {
        let o = standard();
        assert_eq!(agreement_radius(&o, &o, 4), Agreement::AgreeUpToBound);
        assert_eq!(
            agreement_radius(&o, &o.reverse(), 4),
            Agreement::DisagreeAt { radius: 1, witness: 1 }
        );
    }
}
