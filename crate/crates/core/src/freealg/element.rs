use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, Neg, Sub};

use super::Word;
use crate::ring::{Field, Ring};
use crate::scalars::{Laurent, ParamValues, ScalarError};

/// Finite linear combination of words with coefficients in `R`.
///
/// Zero coefficients are never stored.  Elements produced by a
/// [`Presentation`](super::Presentation) are in normal form; elements built
/// by hand (e.g. with [`Element::free_mul`]) may not be.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element<R> {
    terms: BTreeMap<Word, R>,
}

impl<R: Ring> Default for Element<R> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<R: Ring> Element<R> {
    pub fn zero() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), R::one())
    }

    pub fn scalar(c: R) -> Self {
        Self::monomial(Word::empty(), c)
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, R::one())
    }

    pub fn monomial(w: Word, c: R) -> Self {
        let mut e = Self::zero();
        e.add_term(w, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Word, R> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> R {
        self.terms.get(w).cloned().unwrap_or_else(R::zero)
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&Word::empty())
    }

    pub fn add_term(&mut self, w: Word, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Element<R>, c: &R) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v.mul_ref(c));
        }
    }

    pub fn scale(&self, c: &R) -> Element<R> {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    /// Product in the free algebra (concatenation), without reduction.
    pub fn free_mul(&self, other: &Element<R>) -> Element<R> {
        let mut out = Element::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a.concat(b), ca.mul_ref(cb));
            }
        }
        out
    }

    pub fn map_coeffs<S: Ring, E>(&self, mut f: impl FnMut(&R) -> Result<S, E>) -> Result<Element<S>, E> {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Applies a linear map defined on words.
    pub fn map_words(&self, mut f: impl FnMut(&Word) -> Element<R>) -> Element<R> {
        let mut out = Element::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&f(w), c);
        }
        out
    }
}

impl<R: Ring> FromIterator<(Word, R)> for Element<R> {
    fn from_iter<I: IntoIterator<Item = (Word, R)>>(iter: I) -> Self {
        let mut e = Element::zero();
        for (w, c) in iter {
            e.add_term(w, c);
        }
        e
    }
}

impl<R: Ring> Add for Element<R> {
    type Output = Element<R>;
    fn add(mut self, rhs: Element<R>) -> Element<R> {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
        self
    }
}

impl<R: Ring> Sub for Element<R> {
    type Output = Element<R>;
    fn sub(mut self, rhs: Element<R>) -> Element<R> {
        for (w, c) in rhs.terms {
            self.add_term(w, -c);
        }
        self
    }
}

impl<R: Ring> Neg for Element<R> {
    type Output = Element<R>;
    fn neg(self) -> Element<R> {
        Element {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl<'a, R: Ring> Add<&'a Element<R>> for &'a Element<R> {
    type Output = Element<R>;
    fn add(self, rhs: &Element<R>) -> Element<R> {
        self.clone() + rhs.clone()
    }
}

impl<'a, R: Ring> Sub<&'a Element<R>> for &'a Element<R> {
    type Output = Element<R>;
    fn sub(self, rhs: &Element<R>) -> Element<R> {
        self.clone() - rhs.clone()
    }
}

impl Element<Laurent> {
    pub fn specialize<F: Field>(&self, values: &impl ParamValues<F>) -> Result<Element<F>, ScalarError> {
        self.map_coeffs(|c| c.evaluate(values))
    }
}
