//! Degree-truncated quotients `C = H / J` by one-sided coideal ideals.
//!
//! An ideal is only ever seen through its slice `J ∩ H_{≤d}`, computed as
//! the span of all products of a generator with a word inside the
//! multiplier budget `D`.  Columns are ordered with the words of degree
//! above `d` first, so the slice is exactly the set of echelon rows whose
//! pivot falls among the low-degree columns.  Within the low block the
//! preferred representatives come last, which makes them non-pivots (and
//! hence class representatives) whenever they are independent modulo `J`.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::freealg::{AlgebraError, Element, Memo, Presentation, Word};
use crate::linalg::{axpy, Echelon, IndexedBasis, Insertion, SparseVec};
use crate::report::{VerificationReport, Witness};
use crate::ring::{Field, Ring};
use crate::tensoralg::Tensor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("element of degree {degree} exceeds the truncation degree {limit}")]
    DegreeOverflow { degree: u32, limit: u32 },
    #[error(
        "ideal slice at degree {degree} is not stable: dimension {at_budget} with budget {budget}, {at_next} with budget {}",
        budget + 1
    )]
    BudgetInstability {
        degree: u32,
        budget: u32,
        at_budget: usize,
        at_next: usize,
    },
    #[error("ideal is not a coideal: {0}")]
    NotCoideal(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Scalar(#[from] crate::scalars::ScalarError),
}

/// One-sided ideal given by generators: `J = span{g·h}` for a right ideal,
/// `span{h·g}` for a left ideal.
#[derive(Clone, Debug, PartialEq)]
pub struct OneSidedIdeal<R> {
    pub side: Side,
    pub generators: Vec<Element<R>>,
}

impl<R: Ring> OneSidedIdeal<R> {
    pub fn new(side: Side, generators: Vec<Element<R>>) -> Self {
        OneSidedIdeal { side, generators }
    }

    pub fn map_coeffs<S: Ring, E>(&self, f: impl Fn(&R) -> Result<S, E>) -> Result<OneSidedIdeal<S>, E> {
        Ok(OneSidedIdeal {
            side: self.side,
            generators: self
                .generators
                .iter()
                .map(|g| g.map_coeffs(&f))
                .collect::<Result<_, _>>()?,
        })
    }
}

/// `J ∩ H_{≤d}` with its column layout.
#[derive(Clone, Debug)]
pub struct IdealSlice<F> {
    pub degree: u32,
    pub budget: u32,
    columns: IndexedBasis<Word>,
    echelon: Echelon<F>,
}

impl<F: Field> IdealSlice<F> {
    pub fn dimension(&self) -> usize {
        self.echelon.rank()
    }

    /// Row-reduced basis of the slice as elements.
    pub fn elements(&self) -> Vec<Element<F>> {
        self.echelon
            .rows()
            .map(|(_, row)| row.iter().map(|(&i, c)| (self.columns.label(i).clone(), c.clone())).collect())
            .collect()
    }

    pub fn contains(&self, e: &Element<F>) -> Result<bool, QuotientError> {
        let v = self.coords(e)?;
        Ok(self.echelon.contains(&v))
    }

    fn coords(&self, e: &Element<F>) -> Result<SparseVec<F>, QuotientError> {
        let mut v = SparseVec::new();
        for (w, c) in e.terms() {
            let i = self.columns.index_of(w).ok_or(QuotientError::DegreeOverflow {
                degree: w.len() as u32,
                limit: self.degree,
            })?;
            v.insert(i, c.clone());
        }
        Ok(v)
    }
}

fn slice_at<F: Field>(
    h: &Presentation<F>,
    ideal: &OneSidedIdeal<F>,
    d: u32,
    budget: u32,
    preferred: &[Word],
) -> IdealSlice<F> {
    let all = h.irreducible_words(budget);
    let mut high: Vec<Word> = all.iter().filter(|w| h.word_degree(w) > d).cloned().collect();
    high.reverse();
    let mut low: Vec<Word> = all
        .iter()
        .filter(|w| h.word_degree(w) <= d && !preferred.contains(w))
        .cloned()
        .collect();
    low.reverse();
    let tail: Vec<Word> = preferred
        .iter()
        .filter(|w| h.word_degree(w) <= d && h.is_irreducible(w))
        .cloned()
        .collect();
    let low_start = high.len();
    let mut columns = IndexedBasis::new(high);
    for w in low.into_iter().chain(tail) {
        columns.insert(w);
    }
    let mut full = Echelon::new(false);
    for g in &ideal.generators {
        let dg = h.degree(g);
        if dg > budget {
            continue;
        }
        for m in all.iter().filter(|m| h.word_degree(m) + dg <= budget) {
            let m = Element::word(m.clone());
            let prod = match ideal.side {
                Side::Right => h.mul(g, &m),
                Side::Left => h.mul(&m, g),
            };
            let v = columns
                .coords(prod.terms())
                .expect("rewriting never raises degree");
            full.insert(&v);
        }
    }
    let mut low_columns = IndexedBasis::default();
    for w in &columns.labels()[low_start..] {
        low_columns.insert(w.clone());
    }
    let mut echelon = Echelon::new(false);
    for (pivot, row) in full.rows() {
        if pivot >= low_start {
            let shifted: SparseVec<F> = row.iter().map(|(&i, c)| (i - low_start, c.clone())).collect();
            echelon.insert(&shifted);
        }
    }
    IdealSlice {
        degree: d,
        budget,
        columns: low_columns,
        echelon,
    }
}

/// The slice `J ∩ H_{≤d}` at multiplier budget `budget`, refused when its
/// dimension changes at budget `budget + 1`.
pub fn ideal_slice<F: Field>(
    h: &Presentation<F>,
    ideal: &OneSidedIdeal<F>,
    d: u32,
    budget: u32,
    preferred: &[Word],
) -> Result<IdealSlice<F>, QuotientError> {
    let budget = budget.max(d);
    let slice = slice_at(h, ideal, d, budget, preferred);
    let next = slice_at(h, ideal, d, budget + 1, preferred);
    if next.dimension() != slice.dimension() {
        return Err(QuotientError::BudgetInstability {
            degree: d,
            budget,
            at_budget: slice.dimension(),
            at_next: next.dimension(),
        });
    }
    Ok(slice)
}

/// Truncated quotient coalgebra with projection `π`, coproduct and counit
/// on classes and the group-like `e = π(1)`.  Classes are written as
/// combinations of their representative words.
#[derive(Clone)]
pub struct QuotientCoalgebra<F> {
    h: Arc<Presentation<F>>,
    side: Side,
    slice: IdealSlice<F>,
    reps: Vec<Word>,
    cache: Memo<Word, Element<F>>,
}

impl<F: Field> QuotientCoalgebra<F> {
    /// Builds the quotient without checking the coideal property.
    pub fn build_unchecked(
        h: Arc<Presentation<F>>,
        ideal: &OneSidedIdeal<F>,
        d: u32,
        budget: u32,
        preferred: &[Word],
    ) -> Result<Self, QuotientError> {
        let slice = ideal_slice(&h, ideal, d, budget, preferred)?;
        let mut reps: Vec<Word> = (0..slice.columns.len())
            .filter(|&i| !slice.echelon.is_pivot(i))
            .map(|i| slice.columns.label(i).clone())
            .collect();
        reps.sort_by(|a, b| h.cmp_words(a, b));
        Ok(QuotientCoalgebra {
            h,
            side: ideal.side,
            slice,
            reps,
            cache: Memo::default(),
        })
    }

    /// Builds the quotient, refusing ideals that fail [`coideal_witnesses`].
    pub fn build(
        h: Arc<Presentation<F>>,
        ideal: &OneSidedIdeal<F>,
        d: u32,
        budget: u32,
        preferred: &[Word],
    ) -> Result<Self, QuotientError> {
        let q = Self::build_unchecked(h, ideal, d, budget, preferred)?;
        let bad = coideal_witnesses(&q, ideal)?;
        if let Some(w) = bad.first() {
            return Err(QuotientError::NotCoideal(format!("{}: {}", w.label, w.lhs)));
        }
        Ok(q)
    }

    pub fn presentation(&self) -> &Presentation<F> {
        &self.h
    }

    pub fn shared_presentation(&self) -> Arc<Presentation<F>> {
        self.h.clone()
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn degree(&self) -> u32 {
        self.slice.degree
    }

    pub fn budget(&self) -> u32 {
        self.slice.budget
    }

    pub fn slice(&self) -> &IdealSlice<F> {
        &self.slice
    }

    pub fn dimension(&self) -> usize {
        self.reps.len()
    }

    /// Class representatives, ascending in the monomial order.
    pub fn representatives(&self) -> &[Word] {
        &self.reps
    }

    pub fn project_word(&self, w: &Word) -> Result<Element<F>, QuotientError> {
        if let Some(hit) = self.cache.get(w) {
            return Ok(hit);
        }
        let i = self.slice.columns.index_of(w).ok_or(QuotientError::DegreeOverflow {
            degree: self.h.word_degree(w),
            limit: self.slice.degree,
        })?;
        let (res, _) = self.slice.echelon.reduce(&SparseVec::from([(i, F::one())]));
        let out: Element<F> = res
            .into_iter()
            .map(|(j, c)| (self.slice.columns.label(j).clone(), c))
            .collect();
        self.cache.insert(w.clone(), out.clone());
        Ok(out)
    }

    /// `π(a)` for `a` in normal form.
    pub fn project(&self, a: &Element<F>) -> Result<Element<F>, QuotientError> {
        let mut out = Element::zero();
        for (w, c) in a.terms() {
            out.add_scaled(&self.project_word(w)?, c);
        }
        Ok(out)
    }

    /// `e = π(1)`.
    pub fn unit_class(&self) -> Element<F> {
        self.project_word(&Word::empty()).expect("degree 0 fits")
    }

    /// `Δ̄(c) = (π⊗π)Δ(rep)` extended linearly over a class combination.
    pub fn coproduct(&self, c: &Element<F>) -> Result<Tensor<F>, QuotientError> {
        let delta = self.h.coproduct(c)?;
        self.project_tensor(&delta, &[0, 1])
    }

    /// `ε̄(c) = ε(rep)`, well defined because `ε(J) = 0`.
    pub fn counit(&self, c: &Element<F>) -> Result<F, QuotientError> {
        Ok(self.h.counit(c)?)
    }

    /// Applies `π` to the listed slots of a tensor.
    pub fn project_tensor(&self, t: &Tensor<F>, slots: &[usize]) -> Result<Tensor<F>, QuotientError> {
        let mut out = t.clone();
        for &s in slots {
            let mut err = None;
            out = out.map_slot(s, |w| match self.project_word(w) {
                Ok(e) => e,
                Err(e) => {
                    err.get_or_insert(e);
                    Element::zero()
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        Ok(out)
    }

    /// `(id⊗π)Δ(a)`.
    pub fn right_coaction(&self, a: &Element<F>) -> Result<Tensor<F>, QuotientError> {
        self.project_tensor(&self.h.coproduct(a)?, &[1])
    }

    /// `(π⊗id)Δ(a)`.
    pub fn left_coaction(&self, a: &Element<F>) -> Result<Tensor<F>, QuotientError> {
        self.project_tensor(&self.h.coproduct(a)?, &[0])
    }

    /// The coaction natural to the ideal's side: right for `H/J_R`, left
    /// for `H/J_L`.
    pub fn coaction(&self, a: &Element<F>) -> Result<Tensor<F>, QuotientError> {
        match self.side {
            Side::Right => self.right_coaction(a),
            Side::Left => self.left_coaction(a),
        }
    }

    /// `a⊗e` or `e⊗a`, the value of the coaction on a coinvariant.
    pub fn trivial_coaction(&self, a: &Element<F>) -> Tensor<F> {
        let e = self.unit_class();
        match self.side {
            Side::Right => Tensor::pure(&[a, &e]),
            Side::Left => Tensor::pure(&[&e, a]),
        }
    }

    pub fn render_class(&self, c: &Element<F>) -> String {
        let rendered: Vec<(String, F, bool)> = c
            .terms()
            .map(|(w, x)| (format!("[{}]", self.h.render_word(w)), x.clone(), false))
            .collect();
        crate::freealg::render_terms(rendered.into_iter())
    }

    /// Invariants checked at construction time: `π` is a coalgebra map on
    /// the slice, `e` is group-like with `ε̄(e) = 1`, and `ε̄∘π = ε`.
    pub fn invariant_witnesses(&self) -> Result<Vec<Witness>, QuotientError> {
        let h = &*self.h;
        let mut out = Vec::new();
        for w in h.irreducible_words(self.degree()) {
            let a = Element::word(w.clone());
            let lhs = self.project_tensor(&h.coproduct(&a)?, &[0, 1])?;
            let rhs = self.coproduct(&self.project(&a)?)?;
            if lhs != rhs {
                out.push(Witness::sides(
                    format!("(π⊗π)Δ vs Δ̄π on {}", h.render_word(&w)),
                    lhs.render(&[h]),
                    rhs.render(&[h]),
                ));
            }
            if self.counit(&self.project(&a)?)? != h.counit(&a)? {
                out.push(Witness::new(format!("ε̄π vs ε on {}", h.render_word(&w)), "mismatch"));
            }
        }
        let e = self.unit_class();
        let de = self.coproduct(&e)?;
        if de != Tensor::pure(&[&e, &e]) {
            out.push(Witness::new("Δ̄(e) = e⊗e", de.render(&[h])));
        }
        if !self.counit(&e)?.is_one() {
            out.push(Witness::new("ε̄(e) = 1", self.counit(&e)?.to_string()));
        }
        Ok(out)
    }
}

/// Witnesses against the coideal property: `ε(g) ≠ 0`, or
/// `(π⊗π)Δ(x) ≠ 0` for `x` a generator or a generator times a single
/// letter on the ideal's side.  The kernel of `π⊗π` on the slice is
/// `H⊗J + J⊗H`, so the second test is the membership test.  Longer
/// products follow from multiplicativity of `Δ`.
pub fn coideal_witnesses<F: Field>(q: &QuotientCoalgebra<F>, ideal: &OneSidedIdeal<F>) -> Result<Vec<Witness>, QuotientError> {
    let h = q.presentation();
    let mut out = Vec::new();
    for (i, g) in ideal.generators.iter().enumerate() {
        let eps = h.counit(g)?;
        if !eps.is_zero() {
            out.push(Witness::sides(format!("ε(generator {i})"), eps.to_string(), "0"));
            continue;
        }
        let dg = h.degree(g);
        if dg > q.degree() {
            return Err(QuotientError::DegreeOverflow {
                degree: dg,
                limit: q.degree(),
            });
        }
        let mut multipliers = vec![Word::empty()];
        if dg < q.degree() {
            multipliers.extend(h.irreducible_words_of_degree(1));
        }
        for m in multipliers {
            let m = Element::word(m);
            let x = match ideal.side {
                Side::Right => h.mul(g, &m),
                Side::Left => h.mul(&m, g),
            };
            let image = q.project_tensor(&h.coproduct(&x)?, &[0, 1])?;
            if !image.is_zero() {
                out.push(Witness::new(
                    format!("(π⊗π)Δ of generator {i} times {}", h.render(&m)),
                    image.render(&[h]),
                ));
            }
        }
    }
    Ok(out)
}

/// Runs the coideal check on a freshly built slice.
pub fn check_coideal<F: Field>(
    h: Arc<Presentation<F>>,
    ideal: &OneSidedIdeal<F>,
    d: u32,
    budget: u32,
    id: &str,
) -> VerificationReport {
    let report = VerificationReport::new(id, "Δ(J) ⊂ H⊗J + J⊗H and ε(J) = 0")
        .with_degree(d)
        .with_budget(budget);
    let name = h.name().to_string();
    match QuotientCoalgebra::build_unchecked(h, ideal, d, budget, &[])
        .and_then(|q| coideal_witnesses(&q, ideal))
    {
        Ok(w) => report.conclude(
            format!("{} {} generators of {name}", ideal.generators.len(), ideal.side.name()),
            w,
        ),
        Err(e @ QuotientError::BudgetInstability { .. }) => report.budget_failure(e.to_string()),
        Err(e) => report.fail("computation failed", Witness::new("error", e.to_string())),
    }
}

/// Coinvariants of the natural coaction on `H_{≤n}`.
#[derive(Clone, Debug)]
pub struct Coinvariants<F> {
    pub basis: Vec<Element<F>>,
    /// `dims[k]` is the dimension of the coinvariants inside `H_{≤k}`.
    pub dims: Vec<usize>,
}

/// Kernel of `a ↦ coaction(a) − trivial_coaction(a)` on `H_{≤n}`.
///
/// Words are fed in ascending degree, so each kernel vector found while
/// inserting a word of degree `k` has degree exactly `k`.
pub fn coinvariants<F: Field>(q: &QuotientCoalgebra<F>, n: u32) -> Result<Coinvariants<F>, QuotientError> {
    let h = q.presentation();
    let words = h.irreducible_words(n);
    let mut labels: IndexedBasis<Vec<Word>> = IndexedBasis::default();
    let mut ech = Echelon::new(true);
    let mut counts = vec![0usize; n as usize + 1];
    let mut basis = Vec::new();
    for w in &words {
        let a = Element::word(w.clone());
        let t = q.coaction(&a)? - q.trivial_coaction(&a);
        let v = labels.coords_growing(t.terms());
        if let Insertion::Dependent(combo) = ech.insert(&v) {
            counts[h.word_degree(w) as usize] += 1;
            basis.push(combo.iter().map(|(&j, c)| (words[j].clone(), c.clone())).collect());
        }
    }
    let mut dims = Vec::with_capacity(counts.len());
    let mut acc = 0;
    for c in counts {
        acc += c;
        dims.push(acc);
    }
    Ok(Coinvariants { basis, dims })
}

/// Dimensions of `span(elements) ∩ H_{≤k}` for `k = 0..=n`.
pub fn filtered_dimensions<F: Field>(h: &Presentation<F>, elements: &[Element<F>], n: u32) -> Vec<usize> {
    let mut words: Vec<Word> = elements.iter().flat_map(|e| e.words().cloned()).collect();
    words.sort_by(|a, b| h.cmp_words(b, a));
    words.dedup();
    let columns = IndexedBasis::new(words);
    let mut ech = Echelon::new(false);
    for e in elements {
        ech.insert(&columns.coords(e.terms()).unwrap());
    }
    let mut dims = vec![0usize; n as usize + 1];
    for p in ech.pivots() {
        let deg = h.word_degree(columns.label(p));
        for d in dims.iter_mut().skip(deg as usize) {
            *d += 1;
        }
    }
    dims
}

/// Span membership test for elements, with a reusable column index.
pub struct ElementSpan<F> {
    columns: IndexedBasis<Word>,
    ech: Echelon<F>,
}

impl<F: Field> ElementSpan<F> {
    pub fn new(elements: &[Element<F>]) -> Self {
        let mut columns = IndexedBasis::default();
        let mut ech = Echelon::new(true);
        for e in elements {
            let v = columns.coords_growing(e.terms());
            ech.insert(&v);
        }
        ElementSpan { columns, ech }
    }

    pub fn rank(&self) -> usize {
        self.ech.rank()
    }

    /// Adds an element; returns whether it enlarged the span.
    pub fn push(&mut self, e: &Element<F>) -> bool {
        let v = self.columns.coords_growing(e.terms());
        matches!(self.ech.insert(&v), Insertion::Independent(_))
    }

    /// Expansion coefficients (indexed like the input elements).
    pub fn solve(&self, e: &Element<F>) -> Option<SparseVec<F>> {
        let v = self.columns.coords(e.terms())?;
        self.ech.membership(&v)
    }

    pub fn contains(&self, e: &Element<F>) -> bool {
        match self.columns.coords(e.terms()) {
            Some(v) => self.ech.contains(&v),
            None => e.is_zero(),
        }
    }
}

/// Basis of the cotensor space inside `H_{≤d}⊗H_{≤d}`: elements `Σ b⊗c`
/// with `b₁⊗π(b₂)⊗c = b⊗π(c₁)⊗c₂`.
pub fn cotensor<F: Field>(q: &QuotientCoalgebra<F>, d: u32) -> Result<Vec<Tensor<F>>, QuotientError> {
    let h = q.presentation();
    let words = h.irreducible_words(d);
    let mut right = HashMap::new();
    let mut left = HashMap::new();
    for w in &words {
        let a = Element::word(w.clone());
        right.insert(w.clone(), q.right_coaction(&a)?);
        left.insert(w.clone(), q.left_coaction(&a)?);
    }
    let mut labels: IndexedBasis<Vec<Word>> = IndexedBasis::default();
    let mut ech = Echelon::new(true);
    let mut pairs = Vec::with_capacity(words.len() * words.len());
    let mut out = Vec::new();
    for b in &words {
        for c in &words {
            let mut v = SparseVec::new();
            for (k, x) in right[b].terms() {
                let (i, _) = labels.insert(vec![k[0].clone(), k[1].clone(), c.clone()]);
                axpy(&mut v, &SparseVec::from([(i, x.clone())]), &F::one());
            }
            for (k, x) in left[c].terms() {
                let (i, _) = labels.insert(vec![b.clone(), k[0].clone(), k[1].clone()]);
                axpy(&mut v, &SparseVec::from([(i, x.clone())]), &(-F::one()));
            }
            pairs.push((b.clone(), c.clone()));
            if let Insertion::Dependent(combo) = ech.insert(&v) {
                let mut t = Tensor::zero(2);
                for (&j, x) in &combo {
                    t.add_term(vec![pairs[j].0.clone(), pairs[j].1.clone()], x.clone());
                }
                out.push(t);
            }
        }
    }
    Ok(out)
}

/// `(R⊗id − id⊗L)(t)` as a rank-3 tensor; zero exactly on the cotensor
/// space.
pub fn cotensor_defect<F: Field>(q: &QuotientCoalgebra<F>, t: &Tensor<F>) -> Result<Tensor<F>, QuotientError> {
    let h = q.presentation();
    let delta_first = t.expand_slot(0, |w| h.coproduct_word(w).expect("hopf"));
    let delta_second = t.expand_slot(1, |w| h.coproduct_word(w).expect("hopf"));
    let lhs = q.project_tensor(&delta_first, &[1])?;
    let rhs = q.project_tensor(&delta_second, &[1])?;
    Ok(lhs - rhs)
}

/// The action of `H` on classes: `ρ_R(c, h) = π(g·h)` or
/// `ρ_L(h, c) = π(h·g)` for a representative `g` of `c`.
pub struct ModuleAction<'a, F> {
    q: &'a QuotientCoalgebra<F>,
}

impl<'a, F: Field> ModuleAction<'a, F> {
    pub fn new(q: &'a QuotientCoalgebra<F>) -> Self {
        ModuleAction { q }
    }

    pub fn side(&self) -> Side {
        self.q.side
    }

    /// Acts on a class combination by an element.
    pub fn act(&self, c: &Element<F>, x: &Element<F>) -> Result<Element<F>, QuotientError> {
        let h = self.q.presentation();
        let g = c.clone();
        let prod = match self.q.side {
            Side::Right => h.mul(&g, x),
            Side::Left => h.mul(x, &g),
        };
        self.q.project(&prod)
    }

    /// Action table on representatives × words.
    pub fn table(&self, words: &[Word]) -> Result<Vec<(Word, Word, Element<F>)>, QuotientError> {
        let mut out = Vec::new();
        for r in self.q.representatives() {
            for w in words {
                let v = self.act(&Element::word(r.clone()), &Element::word(w.clone()))?;
                out.push((r.clone(), w.clone(), v));
            }
        }
        Ok(out)
    }

    /// `ρ(π(g), h) = π(gh)` for representatives perturbed by random slice
    /// elements, over all words `h` that keep `gh` inside the truncation.
    pub fn representative_witnesses(&self, rng: &mut impl rand::Rng, samples: usize) -> Result<Vec<Witness>, QuotientError> {
        let h = self.q.presentation();
        let slice = self.q.slice.elements();
        let mut out = Vec::new();
        for r in self.q.representatives() {
            let room = self.q.degree() - h.word_degree(r);
            for _ in 0..samples {
                let mut g = Element::word(r.clone());
                for s in &slice {
                    if h.degree(s) <= h.word_degree(r) && rng.gen_bool(0.5) {
                        g.add_scaled(s, &F::from_i64(rng.gen_range(-3..=3)));
                    }
                }
                for w in h.irreducible_words(room) {
                    let x = Element::word(w.clone());
                    let direct = self.act(&g, &x)?;
                    let via_class = self.act(&self.q.project(&g)?, &x)?;
                    if direct != via_class {
                        out.push(Witness::sides(
                            format!("rep {} perturbed, word {}", h.render_word(r), h.render_word(&w)),
                            self.q.render_class(&direct),
                            self.q.render_class(&via_class),
                        ));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `ρ(ρ(c, x), y) = ρ(c, xy)` (right) or `ρ(x, ρ(y, c)) = ρ(xy, c)`
    /// (left) for word pairs fitting the truncation.
    pub fn associativity_witnesses(&self, max_word: u32) -> Result<Vec<Witness>, QuotientError> {
        let h = self.q.presentation();
        let words = h.irreducible_words(max_word);
        let mut out = Vec::new();
        for r in self.q.representatives() {
            let c = Element::word(r.clone());
            for x in &words {
                for y in &words {
                    if h.word_degree(r) + h.word_degree(x) + h.word_degree(y) > self.q.degree() {
                        continue;
                    }
                    let (xe, ye) = (Element::word(x.clone()), Element::word(y.clone()));
                    let xy = h.mul(&xe, &ye);
                    let (lhs, rhs) = match self.q.side {
                        Side::Right => (self.act(&self.act(&c, &xe)?, &ye)?, self.act(&c, &xy)?),
                        Side::Left => (self.act(&self.act(&c, &ye)?, &xe)?, self.act(&c, &xy)?),
                    };
                    if lhs != rhs {
                        out.push(Witness::sides(
                            format!(
                                "class {} with {} then {}",
                                h.render_word(r),
                                h.render_word(x),
                                h.render_word(y)
                            ),
                            self.q.render_class(&lhs),
                            self.q.render_class(&rhs),
                        ));
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::presentations;
    use crate::scalars::Specialization;
    use num_rational::BigRational;

    fn special(h: &Presentation<crate::scalars::Laurent>) -> Arc<Presentation<BigRational>> {
        let s = Specialization::sample_many(3, 1).remove(0);
        Arc::new(h.specialize(&s).unwrap())
    }

    #[test]
    fn zero_ideal_gives_identity_projection() {
        let h = special(&presentations::eq2());
        let ideal = OneSidedIdeal::new(Side::Right, vec![]);
        let q = QuotientCoalgebra::build(h.clone(), &ideal, 2, 4, &[]).unwrap();
        assert_eq!(q.dimension(), h.irreducible_words(2).len());
        let x = h.gen("np");
        assert_eq!(q.project(&x).unwrap(), x);
        assert!(q.invariant_witnesses().unwrap().is_empty());
        let coinv = coinvariants(&q, 0).unwrap();
        assert_eq!(coinv.dims, vec![1]);
    }

    #[test]
    fn ideal_generated_by_alpha_fails_counit() {
        let h = special(&presentations::su2());
        let ideal = OneSidedIdeal::new(Side::Right, vec![h.gen("alpha")]);
        let r = check_coideal(h, &ideal, 2, 4, "alpha");
        assert!(!r.passed());
        assert!(r.witnesses[0].label.starts_with("ε("));
    }

    #[test]
    fn overflow_is_an_error() {
        let h = special(&presentations::eq2());
        let ideal = OneSidedIdeal::new(Side::Right, vec![]);
        let q = QuotientCoalgebra::build(h.clone(), &ideal, 1, 3, &[]).unwrap();
        let w = h.word_of(&["v", "v"]);
        assert!(matches!(q.project_word(&w), Err(QuotientError::DegreeOverflow { .. })));
    }

    #[test]
    fn filtered_dimensions_count_by_degree() {
        let h = special(&presentations::eq2());
        let v = h.gen("v");
        let elems = vec![Element::one(), v.clone(), h.mul(&v, &v) + v.clone()];
        assert_eq!(filtered_dimensions(&h, &elems, 3), vec![1, 2, 3, 3]);
    }
}
