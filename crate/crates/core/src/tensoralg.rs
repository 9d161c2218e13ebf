//! Tensor powers and Hopf structure maps.
//!
//! Coproduct, counit and antipode are stored on generators only and
//! extended to words on demand: the coproduct and counit as algebra maps,
//! the antipode as an anti-homomorphism.  Whether these extensions are well
//! defined is checked by [`check_hopf_axioms`], never assumed.

use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, Neg, Sub};

use crate::freealg::{AlgebraError, Element, Presentation, Word};
use crate::report::{VerificationReport, Witness};
use crate::ring::{Field, Ring};
use crate::scalars::{Laurent, ParamValues, ScalarError};

/// Finite combination of word tuples (rank 2 or 3 in practice).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tensor<R> {
    rank: usize,
    terms: BTreeMap<Vec<Word>, R>,
}

impl<R: Ring> Tensor<R> {
    pub fn zero(rank: usize) -> Self {
        Tensor {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
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

    pub fn terms(&self) -> btree_map::Iter<'_, Vec<Word>, R> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &[Word]) -> R {
        self.terms.get(key).cloned().unwrap_or_else(R::zero)
    }

    pub fn basis(words: Vec<Word>) -> Self {
        let mut t = Tensor::zero(words.len());
        t.add_term(words, R::one());
        t
    }

    /// `a_1 ⊗ a_2 ⊗ ... ⊗ a_k`
    pub fn pure(factors: &[&Element<R>]) -> Self {
        let mut t = Tensor::basis(Vec::new());
        for f in factors {
            t = t.otimes(f);
        }
        t
    }

    /// Appends a factor on the right.
    pub fn otimes(&self, e: &Element<R>) -> Self {
        let mut out = Tensor::zero(self.rank + 1);
        for (k, c) in &self.terms {
            for (w, d) in e.terms() {
                let mut key = k.clone();
                key.push(w.clone());
                out.add_term(key, c.mul_ref(d));
            }
        }
        out
    }

    pub fn add_term(&mut self, key: Vec<Word>, c: R) {
        debug_assert_eq!(key.len(), self.rank);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn add_scaled(&mut self, other: &Tensor<R>, c: &R) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.mul_ref(c));
        }
    }

    pub fn scale(&self, c: &R) -> Tensor<R> {
        let mut out = Tensor::zero(self.rank);
        out.add_scaled(self, c);
        out
    }

    /// Applies a linear map `slot -> tensor of rank r` to one slot, giving
    /// a tensor of rank `rank - 1 + r`.
    pub fn expand_slot(&self, slot: usize, mut f: impl FnMut(&Word) -> Tensor<R>) -> Tensor<R> {
        let mut out: Option<Tensor<R>> = None;
        let mut cache: BTreeMap<Word, Tensor<R>> = BTreeMap::new();
        for (k, c) in &self.terms {
            let image = cache.entry(k[slot].clone()).or_insert_with(|| f(&k[slot]));
            let acc = out.get_or_insert_with(|| Tensor::zero(self.rank - 1 + image.rank));
            for (ik, ic) in image.terms() {
                let mut key = Vec::with_capacity(acc.rank);
                key.extend_from_slice(&k[..slot]);
                key.extend(ik.iter().cloned());
                key.extend_from_slice(&k[slot + 1..]);
                acc.add_term(key, c.mul_ref(ic));
            }
        }
        out.unwrap_or_else(|| Tensor::zero(self.rank))
    }

    /// Applies a linear map `slot -> element` to one slot.
    pub fn map_slot(&self, slot: usize, mut f: impl FnMut(&Word) -> Element<R>) -> Tensor<R> {
        let mut out = Tensor::zero(self.rank);
        let mut cache: BTreeMap<Word, Element<R>> = BTreeMap::new();
        for (k, c) in &self.terms {
            let image = cache.entry(k[slot].clone()).or_insert_with(|| f(&k[slot]));
            for (w, ic) in image.terms() {
                let mut key = k.clone();
                key[slot] = w.clone();
                out.add_term(key, c.mul_ref(ic));
            }
        }
        out
    }

    /// Applies a linear functional to one slot, lowering the rank.
    pub fn contract_slot(&self, slot: usize, mut f: impl FnMut(&Word) -> R) -> Tensor<R> {
        let mut out = Tensor::zero(self.rank - 1);
        for (k, c) in &self.terms {
            let v = f(&k[slot]);
            if v.is_zero() {
                continue;
            }
            let mut key = k.clone();
            key.remove(slot);
            out.add_term(key, c.mul_ref(&v));
        }
        out
    }

    /// Collapses every word tuple through `f` into a single element.
    pub fn collapse(&self, mut f: impl FnMut(&[Word]) -> Element<R>) -> Element<R> {
        let mut out = Element::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Rank-1 tensor as an element.
    pub fn into_element(self) -> Element<R> {
        assert_eq!(self.rank, 1);
        self.terms
            .into_iter()
            .map(|(mut k, c)| (k.pop().unwrap(), c))
            .collect()
    }

    pub fn from_element(e: &Element<R>) -> Self {
        Tensor::pure(&[e])
    }

    /// Exchanges the two slots of a rank-2 tensor.
    pub fn flip(&self) -> Tensor<R> {
        assert_eq!(self.rank, 2);
        let mut out = Tensor::zero(2);
        for (k, c) in &self.terms {
            out.add_term(vec![k[1].clone(), k[0].clone()], c.clone());
        }
        out
    }

    /// Factorwise product, each slot multiplied in its own presentation.
    pub fn mul_slots(&self, other: &Tensor<R>, pres: &[&Presentation<R>]) -> Tensor<R> {
        assert_eq!(self.rank, other.rank);
        let mut out = Tensor::zero(self.rank);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut partial = Tensor::basis(Vec::new()).scale(&ca.mul_ref(cb));
                for i in 0..self.rank {
                    let prod = pres[i].normal_form_word(&ka[i].concat(&kb[i]));
                    partial = partial.otimes(&prod);
                }
                for (k, c) in partial.terms {
                    out.add_term(k, c);
                }
            }
        }
        out
    }

    pub fn map_coeffs<S: Ring, E>(&self, mut f: impl FnMut(&R) -> Result<S, E>) -> Result<Tensor<S>, E> {
        let mut out = Tensor::zero(self.rank);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Renders terms as `coeff*a @ b`, slots rendered in the given
    /// presentations.
    pub fn render(&self, pres: &[&Presentation<R>]) -> String {
        let items = self.terms.iter().map(|(k, c)| {
            let text: Vec<String> = k
                .iter()
                .enumerate()
                .map(|(i, w)| pres[i.min(pres.len() - 1)].render_word(w))
                .collect();
            (text.join(" @ "), c.clone(), false)
        });
        crate::freealg::render_terms(items)
    }
}

impl<R: Ring> Add for Tensor<R> {
    type Output = Tensor<R>;
    fn add(mut self, rhs: Tensor<R>) -> Tensor<R> {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl<R: Ring> Sub for Tensor<R> {
    type Output = Tensor<R>;
    fn sub(mut self, rhs: Tensor<R>) -> Tensor<R> {
        for (k, c) in rhs.terms {
            self.add_term(k, -c);
        }
        self
    }
}

impl<R: Ring> Neg for Tensor<R> {
    type Output = Tensor<R>;
    fn neg(self) -> Tensor<R> {
        Tensor {
            rank: self.rank,
            terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(),
        }
    }
}

/// Coproduct, counit and antipode on generators.
#[derive(Clone, Debug, PartialEq)]
pub struct HopfStructure<R> {
    pub coproduct: Vec<Tensor<R>>,
    pub counit: Vec<R>,
    pub antipode: Vec<Element<R>>,
}

impl<R: Ring> HopfStructure<R> {
    pub fn map_coeffs<S: Ring, E>(&self, f: impl Fn(&R) -> Result<S, E>) -> Result<HopfStructure<S>, E> {
        Ok(HopfStructure {
            coproduct: self
                .coproduct
                .iter()
                .map(|t| t.map_coeffs(&f))
                .collect::<Result<_, _>>()?,
            counit: self.counit.iter().map(&f).collect::<Result<_, _>>()?,
            antipode: self
                .antipode
                .iter()
                .map(|e| e.map_coeffs(&f))
                .collect::<Result<_, _>>()?,
        })
    }
}

impl<R: Ring> Presentation<R> {
    fn hopf_data(&self) -> Result<&HopfStructure<R>, AlgebraError> {
        self.hopf
            .as_ref()
            .ok_or_else(|| AlgebraError::NoHopf(self.name().to_string()))
    }

    /// Coproduct of a word as the product of generator coproducts.  For
    /// reducible words this is the coproduct of the free-algebra product.
    pub fn coproduct_word(&self, w: &Word) -> Result<Tensor<R>, AlgebraError> {
        let hopf = self.hopf_data()?;
        if w.is_empty() {
            return Ok(Tensor::basis(vec![Word::empty(), Word::empty()]));
        }
        if let Some(hit) = self.delta_cache.get(w) {
            return Ok(hit);
        }
        let n = w.len();
        let last = &hopf.coproduct[w.letters()[n - 1] as usize];
        let out = if n == 1 {
            let mut t = Tensor::zero(2);
            for (k, c) in last.terms() {
                let a = self.normal_form_word(&k[0]);
                let b = self.normal_form_word(&k[1]);
                t.add_scaled(&Tensor::pure(&[&a, &b]), c);
            }
            t
        } else {
            let head = self.coproduct_word(&w.slice(0, n - 1))?;
            let tail = self.coproduct_word(&w.slice(n - 1, n))?;
            head.mul_slots(&tail, &[self, self])
        };
        self.delta_cache.insert(w.clone(), out.clone());
        Ok(out)
    }

    pub fn coproduct(&self, e: &Element<R>) -> Result<Tensor<R>, AlgebraError> {
        let mut out = Tensor::zero(2);
        for (w, c) in e.terms() {
            out.add_scaled(&self.coproduct_word(w)?, c);
        }
        Ok(out)
    }

    pub fn counit_word(&self, w: &Word) -> Result<R, AlgebraError> {
        let hopf = self.hopf_data()?;
        let mut acc = R::one();
        for &g in w.letters() {
            acc = acc.mul_ref(&hopf.counit[g as usize]);
            if acc.is_zero() {
                break;
            }
        }
        Ok(acc)
    }

    pub fn counit(&self, e: &Element<R>) -> Result<R, AlgebraError> {
        let mut acc = R::zero();
        for (w, c) in e.terms() {
            acc.add_mul_assign(&self.counit_word(w)?, c);
        }
        Ok(acc)
    }

    /// Antipode of a word: `S(g_1 ... g_n) = S(g_n) ... S(g_1)`.
    pub fn antipode_word(&self, w: &Word) -> Result<Element<R>, AlgebraError> {
        let hopf = self.hopf_data()?;
        if w.is_empty() {
            return Ok(Element::one());
        }
        if let Some(hit) = self.antipode_cache.get(w) {
            return Ok(hit);
        }
        let n = w.len();
        let out = if n == 1 {
            self.normal_form(&hopf.antipode[w.letters()[0] as usize])
        } else {
            let head = self.antipode_word(&w.slice(0, n - 1))?;
            let tail = self.antipode_word(&w.slice(n - 1, n))?;
            self.mul(&tail, &head)
        };
        self.antipode_cache.insert(w.clone(), out.clone());
        Ok(out)
    }

    pub fn antipode(&self, e: &Element<R>) -> Result<Element<R>, AlgebraError> {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            out.add_scaled(&self.antipode_word(w)?, c);
        }
        Ok(out)
    }

    /// `m ∘ (f ⊗ g)` on a rank-2 tensor.
    pub fn multiply_legs(
        &self,
        t: &Tensor<R>,
        mut left: impl FnMut(&Word) -> Element<R>,
        mut right: impl FnMut(&Word) -> Element<R>,
    ) -> Element<R> {
        t.collapse(|k| self.mul(&left(&k[0]), &right(&k[1])))
    }

    pub fn render_tensor(&self, t: &Tensor<R>) -> String {
        t.render(&[self])
    }
}

/// Verifies coassociativity, the counit laws, the antipode convolution
/// identities and well-definedness of all three maps, on every irreducible
/// word of degree at most `degree`.
pub fn check_hopf_axioms<R: Ring>(h: &Presentation<R>, degree: u32) -> Vec<VerificationReport> {
    let name = h.name();
    let report = |id: &str, anchor: &str| {
        VerificationReport::new(format!("{name}.hopf.{id}"), anchor).with_degree(degree)
    };
    if h.hopf().is_none() {
        return vec![report("structure", "Hopf structure maps").skip("no Hopf structure declared")];
    }
    let words = h.irreducible_words(degree);
    let mut coassoc = Vec::new();
    let mut counit = Vec::new();
    let mut antipode = Vec::new();
    let mut filtered = Vec::new();
    let delta = |w: &Word| h.coproduct_word(w).expect("hopf declared");
    let eps = |w: &Word| h.counit_word(w).expect("hopf declared");
    let s = |w: &Word| h.antipode_word(w).expect("hopf declared");
    for w in &words {
        let wt = h.render_word(w);
        let d = delta(w);
        if d.terms().any(|(k, _)| k.iter().any(|leg| h.word_degree(leg) > h.word_degree(w))) {
            filtered.push(Witness::new(format!("word {wt}"), h.render_tensor(&d)));
        }
        let lhs = d.expand_slot(0, |x| delta(x));
        let rhs = d.expand_slot(1, |x| delta(x));
        if lhs != rhs {
            coassoc.push(Witness::sides(
                format!("word {wt}"),
                lhs.render(&[h]),
                rhs.render(&[h]),
            ));
        }
        let elem = Element::word(w.clone());
        let left_counit = d.contract_slot(0, |x| eps(x)).into_element();
        let right_counit = d.contract_slot(1, |x| eps(x)).into_element();
        for (side, got) in [("(eps⊗id)Δ", left_counit), ("(id⊗eps)Δ", right_counit)] {
            if got != elem {
                counit.push(Witness::sides(format!("{side} on {wt}"), h.render(&got), wt.clone()));
            }
        }
        let unit = Element::scalar(eps(w));
        let sl = h.multiply_legs(&d, |x| s(x), |x| Element::word(x.clone()));
        let sr = h.multiply_legs(&d, |x| Element::word(x.clone()), |x| s(x));
        for (side, got) in [("m(S⊗id)Δ", sl), ("m(id⊗S)Δ", sr)] {
            if got != unit {
                antipode.push(Witness::sides(
                    format!("{side} on word {wt}"),
                    h.render(&got),
                    h.render(&unit),
                ));
            }
        }
    }
    let mut welldef = Vec::new();
    for (i, rule) in h.rules().iter().enumerate() {
        let label = format!("relation {i}: {} -> {}", h.render_word(&rule.lhs), h.render(&rule.rhs));
        let mut dd = delta(&rule.lhs);
        let mut de = eps(&rule.lhs);
        let mut ds = s(&rule.lhs);
        for (w, c) in rule.rhs.terms() {
            dd.add_scaled(&delta(w), &(-c.clone()));
            de.sub_assign_ref(&eps(w).mul_ref(c));
            ds.add_scaled(&s(w), &(-c.clone()));
        }
        if !dd.is_zero() {
            welldef.push(Witness::new(format!("Δ({label})"), dd.render(&[h])));
        }
        if !de.is_zero() {
            welldef.push(Witness::new(format!("eps({label})"), de.to_string()));
        }
        if !ds.is_zero() {
            welldef.push(Witness::new(format!("S({label})"), h.render(&ds)));
        }
    }
    let n = words.len();
    vec![
        report("coassociativity", "(Δ⊗id)∘Δ = (id⊗Δ)∘Δ")
            .conclude(format!("{n} words checked"), coassoc),
        report("counit", "(ε⊗id)∘Δ = id = (id⊗ε)∘Δ").conclude(format!("{n} words checked"), counit),
        report("antipode", "m∘(S⊗id)∘Δ = 1·ε = m∘(id⊗S)∘Δ")
            .conclude(format!("{n} words checked"), antipode),
        report("well_defined", "Δ, ε, S annihilate every relation")
            .conclude(format!("{} relations checked", h.rules().len()), welldef),
        report("filtered", "Δ(word of degree n) has legs of degree ≤ n")
            .conclude(format!("{n} words checked"), filtered),
    ]
}

/// Standard consequences of the axioms, checked rather than assumed:
/// `ε∘S = ε`, `Δ∘S = (S⊗S)∘flip∘Δ` and, where a star is declared,
/// `Δ(a*) = (*⊗*)Δ(a)`.
pub fn check_hopf_consequences<R: Ring>(h: &Presentation<R>, degree: u32) -> Vec<VerificationReport> {
    let name = h.name();
    let report = |id: &str, anchor: &str| {
        VerificationReport::new(format!("{name}.hopf.{id}"), anchor).with_degree(degree)
    };
    if h.hopf().is_none() {
        return Vec::new();
    }
    let words = h.irreducible_words(degree);
    let mut eps_s = Vec::new();
    let mut delta_s = Vec::new();
    let mut star = Vec::new();
    for w in &words {
        let wt = h.render_word(w);
        let e = Element::word(w.clone());
        let sw = h.antipode(&e).unwrap();
        if h.counit(&sw).unwrap() != h.counit_word(w).unwrap() {
            eps_s.push(Witness::new(format!("word {wt}"), h.render(&sw)));
        }
        let lhs = h.coproduct(&sw).unwrap();
        let rhs = h
            .coproduct_word(w)
            .unwrap()
            .flip()
            .map_slot(0, |x| h.antipode_word(x).unwrap())
            .map_slot(1, |x| h.antipode_word(x).unwrap());
        if lhs != rhs {
            delta_s.push(Witness::sides(format!("word {wt}"), lhs.render(&[h]), rhs.render(&[h])));
        }
        if h.star_images().is_some() {
            let lhs = h.coproduct(&h.star(&e).unwrap()).unwrap();
            let rhs = h
                .coproduct_word(w)
                .unwrap()
                .map_slot(0, |x| h.star(&Element::word(x.clone())).unwrap())
                .map_slot(1, |x| h.star(&Element::word(x.clone())).unwrap());
            if lhs != rhs {
                star.push(Witness::sides(format!("word {wt}"), lhs.render(&[h]), rhs.render(&[h])));
            }
        }
    }
    let n = words.len();
    let mut out = vec![
        report("counit_antipode", "ε∘S = ε").conclude(format!("{n} words checked"), eps_s),
        report("coproduct_antipode", "Δ∘S = (S⊗S)∘flip∘Δ")
            .conclude(format!("{n} words checked"), delta_s),
    ];
    if h.star_images().is_some() {
        out.push(
            report("star_coproduct", "Δ(a*) = (*⊗*)Δ(a)").conclude(format!("{n} words checked"), star),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::presentations;
    use num_traits::{One, Zero};
    use crate::scalars::Laurent;

    #[test]
    fn su2_coproduct_examples() {
        let h = presentations::su2();
        let d = h.coproduct(&h.gen("alpha")).unwrap();
        let expect = Tensor::pure(&[&h.gen("alpha"), &h.gen("alpha")])
            + Tensor::pure(&[&h.gen("beta"), &h.gen("gamma")]);
        assert_eq!(d, expect);
        let one = h.coproduct(&Element::one()).unwrap();
        assert_eq!(one, Tensor::pure(&[&Element::one(), &Element::one()]));
        assert_eq!(h.counit(&h.gen("beta")).unwrap(), Laurent::zero());
        assert_eq!(h.counit(&Element::one()).unwrap(), Laurent::one());
        let qi = Laurent::param_pow(crate::scalars::Param::Q, -1);
        assert_eq!(h.antipode(&h.gen("beta")).unwrap(), h.gen("beta").scale(&(-qi)));
        assert_eq!(h.antipode(&Element::one()).unwrap(), Element::one());
    }

    #[test]
    fn eq2_coproduct_examples() {
        let h = presentations::eq2();
        let d = h.coproduct(&h.gen("np")).unwrap();
        let expect = Tensor::pure(&[&h.gen("np"), &Element::one()])
            + Tensor::pure(&[&h.gen("v"), &h.gen("np")]);
        assert_eq!(d, expect);
        assert_eq!(h.counit(&h.gen("vinv")).unwrap(), Laurent::one());
        let s = h.antipode(&h.gen("nm")).unwrap();
        assert_eq!(s, -h.mul(&h.gen("v"), &h.gen("nm")));
    }

    #[test]
    fn hopf_axioms_hold_to_degree_three() {
        for h in [presentations::su2(), presentations::eq2()] {
            for r in check_hopf_axioms(&h, 3)
                .into_iter()
                .chain(check_hopf_consequences(&h, 3))
            {
                assert!(r.passed(), "{}: {:?}", r.id, r.witnesses);
            }
        }
    }

    #[test]
    fn corrupted_antipode_fails_at_beta() {
        let h = presentations::su2();
        let mut hopf = h.hopf().unwrap().clone();
        let beta = h.generator_index("beta").unwrap() as usize;
        hopf.antipode[beta] = -hopf.antipode[beta].clone();
        let broken = h.clone().with_hopf(hopf).unwrap();
        let reports = check_hopf_axioms(&broken, 1);
        let anti = reports.iter().find(|r| r.id.ends_with("antipode")).unwrap();
        assert!(!anti.passed());
        assert!(anti.witnesses.iter().any(|w| w.label.contains("word beta")));
    }
}

impl Tensor<Laurent> {
    pub fn specialize<F: Field>(&self, values: &impl ParamValues<F>) -> Result<Tensor<F>, ScalarError> {
        self.map_coeffs(|c| c.evaluate(values))
    }
}
