//! Finitely presented noncommutative algebras.
//!
//! Words are sequences of generator indices; a generator's index is its
//! rank in the monomial order.  Elements are finite linear combinations of
//! words.  A [`Presentation`] owns the rewriting system and reduces
//! arbitrary combinations to normal form.

mod element;
mod parser;
mod presentation;

use std::fmt;

pub use element::Element;
pub use parser::{
    parse_element, parse_presentation, parse_tensor, render_presentation, ParseError, ParsedPresentation,
};
pub(crate) use presentation::{render_terms, Memo};
pub use presentation::{Ambiguity, Generator, Presentation, Rule, Strategy};

use thiserror::Error;

/// Index of a generator, equal to its rank in the monomial order.
pub type Gen = u16;

/// A word in the generators.  The derived ordering is plain lexicographic;
/// the monomial order lives on [`Presentation`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<Gen>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_gens(g: impl IntoIterator<Item = Gen>) -> Self {
        Word(g.into_iter().collect())
    }

    pub fn single(g: Gen) -> Self {
        Word(vec![g])
    }

    pub fn power(g: Gen, n: usize) -> Self {
        Word(vec![g; n])
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, g: Gen) {
        self.0.push(g);
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// `self[..pos] ++ middle ++ self[pos + len..]`
    pub fn splice(&self, pos: usize, len: usize, middle: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() - len + middle.0.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(&middle.0);
        v.extend_from_slice(&self.0[pos + len..]);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("presentation has no generators")]
    NoGenerators,
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{0}` must have positive degree")]
    ZeroDegree(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("relation {0} reduces to zero in the free algebra")]
    TrivialRelation(usize),
    #[error("relation {0} has a constant leading term")]
    ConstantRelation(usize),
    #[error("relation {index}: leading coefficient `{coeff}` is not invertible")]
    NonInvertibleLead { index: usize, coeff: String },
    #[error("relations {first} and {second} share the leading word `{word}`")]
    DuplicateLead {
        first: usize,
        second: usize,
        word: String,
    },
    #[error("element is not in normal form for presentation `{0}`")]
    ForeignElement(String),
    #[error("presentation `{0}` declares no star structure")]
    NoStar(String),
    #[error("presentation `{0}` declares no Hopf structure")]
    NoHopf(String),
    #[error("star image for `{0}` is missing or duplicated")]
    BadStar(String),
    #[error("Hopf data for `{0}` is missing or duplicated")]
    BadHopf(String),
    #[error(transparent)]
    Scalar(#[from] crate::scalars::ScalarError),
}
