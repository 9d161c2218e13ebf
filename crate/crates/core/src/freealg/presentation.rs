use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::RwLock;

use super::{AlgebraError, Element, Gen, Word};
use crate::ring::{Field, Ring};
use crate::scalars::{Laurent, ParamValues};
use crate::tensoralg::{HopfStructure, Tensor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Grading used for truncation.  Rewriting never raises it.
    pub degree: u32,
    /// Secondary weight refining the order within a degree.
    pub weight: i32,
}

impl Generator {
    pub fn new(name: impl Into<String>) -> Self {
        Generator {
            name: name.into(),
            degree: 1,
            weight: 0,
        }
    }

    pub fn with_weight(mut self, w: i32) -> Self {
        self.weight = w;
        self
    }
}

/// Oriented relation `lhs -> rhs` with `rhs` strictly below `lhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule<R> {
    pub lhs: Word,
    pub rhs: Element<R>,
}

/// Where the next rewrite is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// An overlap or inclusion of leading words whose two reductions disagree.
#[derive(Clone, Debug)]
pub struct Ambiguity<R> {
    pub word: Word,
    pub rules: (usize, usize),
    pub left: Element<R>,
    pub right: Element<R>,
}

/// Concurrent memo table; cloning yields an empty table.
pub(crate) struct Memo<K, V>(RwLock<HashMap<K, V>>);

impl<K: Eq + Hash, V: Clone> Memo<K, V> {
    pub(crate) fn get(&self, k: &K) -> Option<V> {
        self.0.read().unwrap().get(k).cloned()
    }

    pub(crate) fn insert(&self, k: K, v: V) {
        self.0.write().unwrap().insert(k, v);
    }
}

impl<K, V> Default for Memo<K, V> {
    fn default() -> Self {
        Memo(RwLock::new(HashMap::new()))
    }
}

impl<K, V> Clone for Memo<K, V> {
    fn clone(&self) -> Self {
        Memo::default()
    }
}

/// A finitely presented algebra with an oriented, order-compatible
/// rewriting system, plus optional star and Hopf data on generators.
///
/// The monomial order compares words by total degree, then by total
/// weight, then lexicographically by generator rank.
#[derive(Clone)]
pub struct Presentation<R> {
    name: String,
    generators: Vec<Generator>,
    rules: Vec<Rule<R>>,
    star: Option<Vec<Element<R>>>,
    pub(crate) hopf: Option<HopfStructure<R>>,
    lookup: HashMap<Word, usize>,
    lhs_lens: Vec<usize>,
    nf_cache: Memo<Word, Element<R>>,
    pub(crate) delta_cache: Memo<Word, Tensor<R>>,
    pub(crate) antipode_cache: Memo<Word, Element<R>>,
}

impl<R: Ring> PartialEq for Presentation<R> {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.generators == other.generators
            && self.rules == other.rules
            && self.star == other.star
            && self.hopf == other.hopf
    }
}

impl<R: Ring> fmt::Debug for Presentation<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation")
            .field("name", &self.name)
            .field("generators", &self.generators)
            .field("rules", &self.rules.len())
            .finish()
    }
}

impl<R: Ring> Presentation<R> {
    /// Builds a presentation from relations given as differences
    /// `lhs - rhs` in the free algebra, orienting each one by its leading
    /// word.
    pub fn new(
        name: impl Into<String>,
        generators: Vec<Generator>,
        relations: Vec<Element<R>>,
    ) -> Result<Self, AlgebraError> {
        let name = name.into();
        validate_generators(&generators)?;
        let mut rules = Vec::with_capacity(relations.len());
        for (index, rel) in relations.iter().enumerate() {
            rules.push(orient(&generators, rel, index)?);
        }
        Self::from_rules(name, generators, rules)
    }

    /// Builds a presentation from already oriented rules.
    pub fn from_rules(
        name: impl Into<String>,
        generators: Vec<Generator>,
        rules: Vec<Rule<R>>,
    ) -> Result<Self, AlgebraError> {
        validate_generators(&generators)?;
        let mut lookup = HashMap::new();
        let mut pres = Presentation {
            name: name.into(),
            generators,
            rules: Vec::new(),
            star: None,
            hopf: None,
            lookup: HashMap::new(),
            lhs_lens: Vec::new(),
            nf_cache: Memo::default(),
            delta_cache: Memo::default(),
            antipode_cache: Memo::default(),
        };
        for (i, r) in rules.iter().enumerate() {
            if let Some(&j) = lookup.get(&r.lhs) {
                return Err(AlgebraError::DuplicateLead {
                    first: j,
                    second: i,
                    word: pres.render_word(&r.lhs),
                });
            }
            lookup.insert(r.lhs.clone(), i);
        }
        let mut lens: Vec<usize> = rules.iter().map(|r| r.lhs.len()).collect();
        lens.sort_unstable();
        lens.dedup();
        pres.rules = rules;
        pres.lookup = lookup;
        pres.lhs_lens = lens;
        Ok(pres)
    }

    /// Declares the star involution by its generator images.
    pub fn with_star(mut self, images: Vec<Element<R>>) -> Result<Self, AlgebraError> {
        if images.len() != self.generators.len() {
            return Err(AlgebraError::BadStar(self.name.clone()));
        }
        let images = images.iter().map(|e| self.normal_form(e)).collect();
        self.star = Some(images);
        Ok(self)
    }

    /// Declares coproduct, counit and antipode on generators; slots and
    /// images are reduced to normal form.
    pub fn with_hopf(mut self, mut hopf: HopfStructure<R>) -> Result<Self, AlgebraError> {
        if hopf.coproduct.len() != self.generators.len()
            || hopf.counit.len() != self.generators.len()
            || hopf.antipode.len() != self.generators.len()
        {
            return Err(AlgebraError::BadHopf(self.name.clone()));
        }
        for t in &mut hopf.coproduct {
            if t.rank() != 2 {
                return Err(AlgebraError::BadHopf(self.name.clone()));
            }
            *t = t
                .map_slot(0, |w| self.normal_form_word(w))
                .map_slot(1, |w| self.normal_form_word(w));
        }
        for a in &mut hopf.antipode {
            *a = self.normal_form(a);
        }
        self.hopf = Some(hopf);
        self.delta_cache = Memo::default();
        self.antipode_cache = Memo::default();
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn rules(&self) -> &[Rule<R>] {
        &self.rules
    }

    pub fn star_images(&self) -> Option<&[Element<R>]> {
        self.star.as_deref()
    }

    pub fn hopf(&self) -> Option<&HopfStructure<R>> {
        self.hopf.as_ref()
    }

    pub fn generator_index(&self, name: &str) -> Option<Gen> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as Gen)
    }

    /// The generator with the given name, as an element.
    ///
    /// Panics on an unknown name; meant for built-in data.
    pub fn gen(&self, name: &str) -> Element<R> {
        let g = self
            .generator_index(name)
            .unwrap_or_else(|| panic!("no generator `{name}` in `{}`", self.name));
        self.normal_form_word(&Word::single(g))
    }

    /// Word from generator names; panics on unknown names.
    pub fn word_of(&self, names: &[&str]) -> Word {
        Word::from_gens(names.iter().map(|n| {
            self.generator_index(n)
                .unwrap_or_else(|| panic!("no generator `{n}` in `{}`", self.name))
        }))
    }

    pub fn word_degree(&self, w: &Word) -> u32 {
        w.letters()
            .iter()
            .map(|&g| self.generators[g as usize].degree)
            .sum()
    }

    fn word_weight(&self, w: &Word) -> i64 {
        w.letters()
            .iter()
            .map(|&g| self.generators[g as usize].weight as i64)
            .sum()
    }

    /// Maximum word degree; zero for the zero element.
    pub fn degree(&self, e: &Element<R>) -> u32 {
        e.words().map(|w| self.word_degree(w)).max().unwrap_or(0)
    }

    /// The monomial order.
    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        self.word_degree(a)
            .cmp(&self.word_degree(b))
            .then_with(|| self.word_weight(a).cmp(&self.word_weight(b)))
            .then_with(|| a.cmp(b))
    }

    fn order_key(&self, w: &Word) -> (u32, i64, Word) {
        (self.word_degree(w), self.word_weight(w), w.clone())
    }

    /// Largest word of an element under the monomial order.
    pub fn leading_word<'a>(&self, e: &'a Element<R>) -> Option<&'a Word> {
        e.words().max_by(|a, b| self.cmp_words(a, b))
    }

    fn find_redex(&self, w: &Word, strategy: Strategy) -> Option<(usize, usize)> {
        let letters = w.letters();
        let n = letters.len();
        let try_at = |pos: usize| -> Option<(usize, usize)> {
            for &len in &self.lhs_lens {
                if pos + len > n {
                    break;
                }
                if let Some(&ri) = self.lookup.get(&w.slice(pos, pos + len)) {
                    return Some((pos, ri));
                }
            }
            None
        };
        match strategy {
            Strategy::Leftmost => (0..n).find_map(try_at),
            Strategy::Rightmost => (0..n).rev().find_map(try_at),
        }
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.find_redex(w, Strategy::Leftmost).is_none()
    }

    fn rewrite_at(&self, w: &Word, pos: usize, rule: usize) -> Element<R> {
        let r = &self.rules[rule];
        let mut out = Element::zero();
        for (m, c) in r.rhs.terms() {
            out.add_term(w.splice(pos, r.lhs.len(), m), c.clone());
        }
        out
    }

    /// Normal form of a single word (leftmost rewriting, memoized).
    pub fn normal_form_word(&self, w: &Word) -> Element<R> {
        if let Some(hit) = self.nf_cache.get(w) {
            return hit;
        }
        let out = match self.find_redex(w, Strategy::Leftmost) {
            None => Element::word(w.clone()),
            Some((pos, ri)) => {
                let step = self.rewrite_at(w, pos, ri);
                let mut acc = Element::zero();
                for (m, c) in step.terms() {
                    acc.add_scaled(&self.normal_form_word(m), c);
                }
                acc
            }
        };
        if w.len() > 1 {
            self.nf_cache.insert(w.clone(), out.clone());
        }
        out
    }

    /// Normal form of an arbitrary combination of words.
    pub fn normal_form(&self, e: &Element<R>) -> Element<R> {
        let mut out = Element::zero();
        for (w, c) in e.terms() {
            out.add_scaled(&self.normal_form_word(w), c);
        }
        out
    }

    /// Uncached reduction with an explicit strategy.  The worklist always
    /// processes the largest pending word so that cancellations are
    /// combined before they are expanded further.
    pub fn normal_form_with(&self, e: &Element<R>, strategy: Strategy) -> Element<R> {
        let mut pending: BTreeMap<(u32, i64, Word), R> = BTreeMap::new();
        let push = |pending: &mut BTreeMap<(u32, i64, Word), R>, w: &Word, c: R| {
            let key = self.order_key(w);
            match pending.entry(key) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    if !c.is_zero() {
                        v.insert(c);
                    }
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    o.get_mut().add_assign_ref(&c);
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        };
        for (w, c) in e.terms() {
            push(&mut pending, w, c.clone());
        }
        let mut out = Element::zero();
        while let Some(((_, _, w), c)) = pending.pop_last() {
            match self.find_redex(&w, strategy) {
                None => out.add_term(w, c),
                Some((pos, ri)) => {
                    for (m, mc) in self.rewrite_at(&w, pos, ri).terms() {
                        push(&mut pending, m, mc.mul_ref(&c));
                    }
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &Element<R>, b: &Element<R>) -> Element<R> {
        let mut out = Element::zero();
        for (wa, ca) in a.terms() {
            for (wb, cb) in b.terms() {
                let c = ca.mul_ref(cb);
                out.add_scaled(&self.normal_form_word(&wa.concat(wb)), &c);
            }
        }
        out
    }

    /// Multiplication that first checks that both operands are normal
    /// forms over this presentation's generators.
    pub fn checked_mul(&self, a: &Element<R>, b: &Element<R>) -> Result<Element<R>, AlgebraError> {
        self.check_member(a)?;
        self.check_member(b)?;
        Ok(self.mul(a, b))
    }

    pub fn check_member(&self, e: &Element<R>) -> Result<(), AlgebraError> {
        let n = self.generators.len();
        for w in e.words() {
            if w.letters().iter().any(|&g| g as usize >= n) || !self.is_irreducible(w) {
                return Err(AlgebraError::ForeignElement(self.name.clone()));
            }
        }
        Ok(())
    }

    pub fn pow(&self, a: &Element<R>, n: usize) -> Element<R> {
        let mut acc = Element::one();
        for _ in 0..n {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Product of a sequence in order.
    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a Element<R>>) -> Element<R> {
        factors
            .into_iter()
            .fold(Element::one(), |acc, f| self.mul(&acc, f))
    }

    /// Irreducible words of degree exactly `n`.
    pub fn irreducible_words_of_degree(&self, n: u32) -> Vec<Word> {
        let mut all = self.irreducible_words(n);
        all.retain(|w| self.word_degree(w) == n);
        all
    }

    /// Irreducible words of degree at most `max_degree`, ascending in the
    /// monomial order.
    pub fn irreducible_words(&self, max_degree: u32) -> Vec<Word> {
        let mut by_degree: Vec<Vec<Word>> = vec![vec![Word::empty()]];
        for n in 1..=max_degree {
            let mut level = Vec::new();
            for (g, gen) in self.generators.iter().enumerate() {
                if gen.degree > n {
                    continue;
                }
                for w in &by_degree[(n - gen.degree) as usize] {
                    let mut cand = w.clone();
                    cand.push(g as Gen);
                    if self.suffix_irreducible(&cand) {
                        level.push(cand);
                    }
                }
            }
            by_degree.push(level);
        }
        let mut out: Vec<Word> = by_degree.into_iter().flatten().collect();
        out.sort_by(|a, b| self.cmp_words(a, b));
        out
    }

    fn suffix_irreducible(&self, w: &Word) -> bool {
        let n = w.len();
        self.lhs_lens
            .iter()
            .filter(|&&l| l <= n)
            .all(|&l| !self.lookup.contains_key(&w.slice(n - l, n)))
    }

    /// Star of a word: reversed product of generator images.
    pub fn star(&self, e: &Element<R>) -> Result<Element<R>, AlgebraError> {
        let images = self
            .star
            .as_ref()
            .ok_or_else(|| AlgebraError::NoStar(self.name.clone()))?;
        Ok(e.map_words(|w| {
            self.product(w.letters().iter().rev().map(|&g| &images[g as usize]))
        }))
    }

    /// Diamond-lemma check: every overlap and inclusion ambiguity among
    /// leading words must reduce both ways to one normal form.
    pub fn check_confluence(&self) -> Vec<Ambiguity<R>> {
        let mut out = Vec::new();
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                let a = ri.lhs.letters();
                let b = rj.lhs.letters();
                // overlaps: suffix of a equals prefix of b
                for k in 1..a.len().min(b.len()) {
                    if a[a.len() - k..] == b[..k] {
                        let word = ri.lhs.concat(&rj.lhs.slice(k, b.len()));
                        let left = self.normal_form(&self.rewrite_at(&word, 0, i));
                        let right =
                            self.normal_form(&self.rewrite_at(&word, a.len() - k, j));
                        if left != right {
                            out.push(Ambiguity {
                                word,
                                rules: (i, j),
                                left,
                                right,
                            });
                        }
                    }
                }
                // inclusions: b occurs strictly inside a
                if i != j && b.len() < a.len() {
                    for pos in 0..=a.len() - b.len() {
                        if a[pos..pos + b.len()] == *b {
                            let word = ri.lhs.clone();
                            let left = self.normal_form(&self.rewrite_at(&word, 0, i));
                            let right = self.normal_form(&self.rewrite_at(&word, pos, j));
                            if left != right {
                                out.push(Ambiguity {
                                    word,
                                    rules: (i, j),
                                    left,
                                    right,
                                });
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Same presentation with every coefficient mapped through `f`.
    pub fn map_coeffs<S: Ring, E>(&self, f: impl Fn(&R) -> Result<S, E>) -> Result<Presentation<S>, E>
    where
        E: From<AlgebraError>,
    {
        let rules = self
            .rules
            .iter()
            .map(|r| {
                Ok(Rule {
                    lhs: r.lhs.clone(),
                    rhs: r.rhs.map_coeffs(&f)?,
                })
            })
            .collect::<Result<Vec<_>, E>>()?;
        let mut p = Presentation::from_rules(self.name.clone(), self.generators.clone(), rules)?;
        if let Some(star) = &self.star {
            let images = star
                .iter()
                .map(|e| e.map_coeffs(&f))
                .collect::<Result<Vec<_>, E>>()?;
            p = p.with_star(images)?;
        }
        if let Some(h) = &self.hopf {
            p = p.with_hopf(h.map_coeffs(&f)?)?;
        }
        Ok(p)
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let letters = w.letters();
        let mut i = 0;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let name = &self.generators[letters[i] as usize].name;
            if j - i == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{}", j - i));
            }
            i = j;
        }
        parts.join("*")
    }

    /// Canonical rendering, largest word first.
    pub fn render(&self, e: &Element<R>) -> String {
        let mut words: Vec<&Word> = e.words().collect();
        words.sort_by(|a, b| self.cmp_words(b, a));
        render_terms(words.into_iter().map(|w| (self.render_word(w), e.coeff(w), w.is_empty())))
    }

    /// Images of the oriented relations under the generator-defined
    /// homomorphism into `target`; only nonzero images are returned.
    pub fn relation_images(
        &self,
        target: &Presentation<R>,
        images: &[Element<R>],
    ) -> Vec<(usize, Element<R>)> {
        let apply = |w: &Word| target.product(w.letters().iter().map(|&g| &images[g as usize]));
        let mut out = Vec::new();
        for (i, r) in self.rules.iter().enumerate() {
            let mut diff = apply(&r.lhs);
            for (w, c) in r.rhs.terms() {
                diff.add_scaled(&apply(w), &(-c.clone()));
            }
            if !diff.is_zero() {
                out.push((i, diff));
            }
        }
        out
    }
}

/// Joins `(word text, coefficient, is_unit_word)` terms into a sum.
impl Presentation<Laurent> {
    /// Evaluates every coefficient at the given parameter values.
    pub fn specialize<F: Field>(&self, values: &impl ParamValues<F>) -> Result<Presentation<F>, AlgebraError> {
        self.map_coeffs(|c| c.evaluate(values).map_err(AlgebraError::from))
    }
}

pub(crate) fn render_terms<R: Ring>(terms: impl Iterator<Item = (String, R, bool)>) -> String {
    let mut out = String::new();
    for (word, c, is_one) in terms {
        let cs = c.to_string();
        let simple = !cs.contains([' ', '/']) || cs.starts_with('(');
        let (neg, mag) = match cs.strip_prefix('-') {
            Some(rest) if simple => (true, rest.to_string()),
            _ => (false, cs.clone()),
        };
        let coeff_text = if simple {
            mag.clone()
        } else {
            format!("({cs})")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if is_one {
            out.push_str(&coeff_text);
        } else if coeff_text == "1" {
            out.push_str(&word);
        } else {
            out.push_str(&coeff_text);
            out.push('*');
            out.push_str(&word);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

fn validate_generators(generators: &[Generator]) -> Result<(), AlgebraError> {
    if generators.is_empty() {
        return Err(AlgebraError::NoGenerators);
    }
    for (i, g) in generators.iter().enumerate() {
        if g.degree == 0 {
            return Err(AlgebraError::ZeroDegree(g.name.clone()));
        }
        if generators[..i].iter().any(|h| h.name == g.name) {
            return Err(AlgebraError::DuplicateGenerator(g.name.clone()));
        }
    }
    Ok(())
}

fn orient<R: Ring>(generators: &[Generator], rel: &Element<R>, index: usize) -> Result<Rule<R>, AlgebraError> {
    let key = |w: &Word| -> (u32, i64, Word) {
        let d = w.letters().iter().map(|&g| generators[g as usize].degree).sum();
        let wt = w
            .letters()
            .iter()
            .map(|&g| generators[g as usize].weight as i64)
            .sum();
        (d, wt, w.clone())
    };
    let lead = rel
        .words()
        .max_by_key(|w| key(w))
        .ok_or(AlgebraError::TrivialRelation(index))?
        .clone();
    if lead.is_empty() {
        return Err(AlgebraError::ConstantRelation(index));
    }
    let c = rel.coeff(&lead);
    let inv = c.try_inverse().ok_or_else(|| AlgebraError::NonInvertibleLead {
        index,
        coeff: c.to_string(),
    })?;
    let mut rhs = Element::zero();
    for (w, v) in rel.terms() {
        if *w != lead {
            rhs.add_term(w.clone(), -(v.mul_ref(&inv)));
        }
    }
    Ok(Rule { lhs: lead, rhs })
}
