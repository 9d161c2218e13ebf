//! Built-in bundle data: the sphere inside `SU_q(2)` and the hyperboloid
//! inside `E_q(2)`.

pub mod presentations;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::freealg::{parse_element, parse_tensor, Element, Presentation, Word};
use crate::galois::{derive_coaction, Character, EmbeddingMap};
use crate::linalg::UnitEchelon;
use crate::quotient::{OneSidedIdeal, QuotientCoalgebra, QuotientError, Side};
use crate::report::{VerificationReport, Witness};
use crate::ring::{Field, Ring};
use crate::scalars::{Laurent, Param, RatFunc, Specialization};
use crate::tensoralg::Tensor;

pub const MODEL_NAMES: [&str; 2] = ["su2-sphere", "eq2-hyperboloid"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown model `{name}`; available models: {}", MODEL_NAMES.join(", "))]
    Unknown { name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Su2Sphere,
    Eq2Hyperboloid,
}

/// Where a coaction on the fibre comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoactionSource {
    Declared,
    Derived,
}

impl fmt::Display for CoactionSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoactionSource::Declared => "declared",
            CoactionSource::Derived => "derived from Δ∘i",
        })
    }
}

/// Total space `H`, fibre `M`, both embeddings with their coactions,
/// the listed ideal generators and the expected character.
///
/// `i_left` is the left embedding (coaction `M → H⊗M`) and defines the
/// right ideal `J_R`; `i_right` is the right embedding (`M → M⊗H`) and
/// defines the left ideal `J_L`.
#[derive(Clone)]
pub struct ModelBundle {
    pub name: &'static str,
    pub kind: ModelKind,
    pub total: Arc<Presentation<Laurent>>,
    pub fibre: Arc<Presentation<Laurent>>,
    pub i_left: EmbeddingMap<Laurent>,
    pub i_right: EmbeddingMap<Laurent>,
    pub left_coaction: Vec<Tensor<Laurent>>,
    pub right_coaction: Vec<Tensor<Laurent>>,
    pub coaction_source: CoactionSource,
    pub right_ideal: OneSidedIdeal<Laurent>,
    pub left_ideal: OneSidedIdeal<Laurent>,
    pub kappa: Character<Laurent>,
}

fn parse(pres: &Presentation<Laurent>, text: &str) -> Element<Laurent> {
    parse_element(pres, text).unwrap_or_else(|e| panic!("built-in element `{text}`: {e}"))
}

fn parse_t(pres: &[&Presentation<Laurent>], text: &str) -> Tensor<Laurent> {
    parse_tensor(pres, text).unwrap_or_else(|e| panic!("built-in tensor `{text}`: {e}"))
}

fn st() -> Laurent {
    Laurent::param(Param::S) * Laurent::param(Param::T)
}

fn su2_sphere() -> ModelBundle {
    let h = Arc::new(presentations::su2());
    let m = Arc::new(presentations::sphere());
    let gens = |texts: [&str; 3]| -> Vec<Element<Laurent>> {
        let by_name = |n: &str| match n {
            "x" => texts[0],
            "y" => texts[1],
            _ => texts[2],
        };
        m.generators().iter().map(|g| parse(&h, by_name(&g.name))).collect()
    };
    let i_left = EmbeddingMap::new(
        "i_L",
        Side::Left,
        m.clone(),
        h.clone(),
        gens([
            "s*t*(q*alpha^2 - beta^2) + (s^2 - t^2)*alpha*beta",
            "s*t*(q*gamma^2 - delta^2) + (s^2 - t^2)*gamma*delta",
            "-s*t*(q*alpha*gamma - beta*delta) - q*(s^2 - t^2)*beta*gamma",
        ]),
    )
    .expect("i_L");
    let i_right = EmbeddingMap::new(
        "i_R",
        Side::Right,
        m.clone(),
        h.clone(),
        gens([
            "q*s*t*(alpha^2 - q*gamma^2) - q*(s^2 - t^2)*alpha*gamma",
            "s*t*(q^-1*beta^2 - delta^2) - q^-1*(s^2 - t^2)*beta*delta",
            "s*t*(alpha*beta - q*gamma*delta) - q*(s^2 - t^2)*beta*gamma",
        ]),
    )
    .expect("i_R");
    let left_coaction = derive_coaction(&i_left).expect("hopf").expect("Δ∘i_L lands in H⊗i_L(M)");
    let right_coaction = derive_coaction(&i_right).expect("hopf").expect("Δ∘i_R lands in i_R(M)⊗H");
    let right_ideal = OneSidedIdeal::new(
        Side::Right,
        [
            "p*(q*alpha^2 - beta^2) + alpha*beta - p*q",
            "p*(q*gamma^2 - delta^2) + gamma*delta + p",
            "p*(q*alpha*gamma - beta*delta) + q*beta*gamma",
        ]
        .iter()
        .map(|t| parse(&h, t))
        .collect(),
    );
    let left_ideal = OneSidedIdeal::new(
        Side::Left,
        [
            "p*(q*delta^2 - beta^2) + beta*delta - p*q",
            "p*(q*gamma^2 - alpha^2) + alpha*gamma + p",
            "p*(alpha*beta - q*gamma*delta) - q*beta*gamma",
        ]
        .iter()
        .map(|t| parse(&h, t))
        .collect(),
    );
    let kappa = Character {
        values: m
            .generators()
            .iter()
            .map(|g| match g.name.as_str() {
                "x" => Laurent::q() * st(),
                "y" => -st(),
                _ => Laurent::zero(),
            })
            .collect(),
    };
    ModelBundle {
        name: "su2-sphere",
        kind: ModelKind::Su2Sphere,
        total: h,
        fibre: m,
        i_left,
        i_right,
        left_coaction,
        right_coaction,
        coaction_source: CoactionSource::Derived,
        right_ideal,
        left_ideal,
        kappa,
    }
}

fn eq2_hyperboloid() -> ModelBundle {
    let h = Arc::new(presentations::eq2());
    let m = Arc::new(presentations::hyperboloid());
    let per_gen = |zm: &'static str, zp: &'static str| -> Vec<&'static str> {
        m.generators()
            .iter()
            .map(|g| if g.name == "zm" { zm } else { zp })
            .collect()
    };
    let i_left = EmbeddingMap::new(
        "i_L",
        Side::Left,
        m.clone(),
        h.clone(),
        per_gen("vinv + nm", "v + np").iter().map(|t| parse(&h, t)).collect(),
    )
    .expect("i_L");
    let i_right = EmbeddingMap::new(
        "i_R",
        Side::Right,
        m.clone(),
        h.clone(),
        per_gen("vinv + q*vinv*np", "v + q^-1*v*nm")
            .iter()
            .map(|t| parse(&h, t))
            .collect(),
    )
    .expect("i_R");
    let left_coaction = per_gen("nm @ 1 + vinv @ zm", "np @ 1 + v @ zp")
        .iter()
        .map(|t| parse_t(&[&h, &m], t))
        .collect();
    let right_coaction = per_gen("zm @ vinv + q @ vinv*np", "zp @ v + q^-1 @ v*nm")
        .iter()
        .map(|t| parse_t(&[&m, &h], t))
        .collect();
    let right_ideal = OneSidedIdeal::new(
        Side::Right,
        ["v + np - 1", "vinv + nm - 1"].iter().map(|t| parse(&h, t)).collect(),
    );
    let left_ideal = OneSidedIdeal::new(
        Side::Left,
        ["v - q*np - 1", "vinv - q^-1*nm - 1"]
            .iter()
            .map(|t| parse(&h, t))
            .collect(),
    );
    let kappa = Character {
        values: vec![Laurent::one(); m.num_generators()],
    };
    ModelBundle {
        name: "eq2-hyperboloid",
        kind: ModelKind::Eq2Hyperboloid,
        total: h,
        fibre: m,
        i_left,
        i_right,
        left_coaction,
        right_coaction,
        coaction_source: CoactionSource::Declared,
        right_ideal,
        left_ideal,
        kappa,
    }
}

pub fn load_model(name: &str) -> Result<ModelBundle, ModelError> {
    match name {
        "su2-sphere" => Ok(su2_sphere()),
        "eq2-hyperboloid" => Ok(eq2_hyperboloid()),
        _ => Err(ModelError::Unknown { name: name.to_string() }),
    }
}

impl ModelBundle {
    pub fn embedding(&self, side: Side) -> &EmbeddingMap<Laurent> {
        match side {
            Side::Left => &self.i_left,
            Side::Right => &self.i_right,
        }
    }

    pub fn coaction(&self, side: Side) -> &[Tensor<Laurent>] {
        match side {
            Side::Left => &self.left_coaction,
            Side::Right => &self.right_coaction,
        }
    }

    /// Listed generators of the ideal on the given side.
    pub fn ideal(&self, side: Side) -> &OneSidedIdeal<Laurent> {
        match side {
            Side::Right => &self.right_ideal,
            Side::Left => &self.left_ideal,
        }
    }

    /// The embedding whose augmentation generates the ideal on `side`:
    /// `J_R = i_L(M)⁺H` and `J_L = H·i_R(M)⁺`.
    pub fn embedding_for_ideal(&self, side: Side) -> &EmbeddingMap<Laurent> {
        match side {
            Side::Right => &self.i_left,
            Side::Left => &self.i_right,
        }
    }

    /// `i(g) − κ(g)·1` for the generators of `M`.
    pub fn augmented_images(&self, side: Side) -> Vec<Element<Laurent>> {
        let i = self.embedding_for_ideal(side);
        i.images()
            .iter()
            .zip(&self.kappa.values)
            .map(|(e, k)| e.clone() - Element::scalar(k.clone()))
            .collect()
    }

    /// Expected class representatives up to degree `d`, in presentation
    /// order: `1, a, a², …, b, b², …`.
    pub fn expected_classes(&self, d: u32) -> Vec<Word> {
        let (a, b) = self.class_generators();
        let h = &self.total;
        let (ga, gb) = (h.generator_index(a).unwrap(), h.generator_index(b).unwrap());
        let mut out = vec![Word::empty()];
        for n in 1..=d as usize {
            out.push(Word::power(ga, n));
        }
        for n in 1..=d as usize {
            out.push(Word::power(gb, n));
        }
        out
    }

    fn class_generators(&self) -> (&'static str, &'static str) {
        match self.kind {
            ModelKind::Su2Sphere => ("alpha", "delta"),
            ModelKind::Eq2Hyperboloid => ("v", "vinv"),
        }
    }

    /// The stated coalgebra isomorphism as pairs of representatives,
    /// with the side it maps from.
    pub fn iso_pairs(&self, d: u32) -> (Side, Vec<(Word, Word)>) {
        let h = &self.total;
        let (a, b) = self.class_generators();
        let (ga, gb) = (h.generator_index(a).unwrap(), h.generator_index(b).unwrap());
        let mut pairs = vec![(Word::empty(), Word::empty())];
        match self.kind {
            ModelKind::Su2Sphere => {
                for n in 1..=d as usize {
                    pairs.push((Word::power(ga, n), Word::power(gb, n)));
                    pairs.push((Word::power(gb, n), Word::power(ga, n)));
                }
                (Side::Left, pairs)
            }
            ModelKind::Eq2Hyperboloid => {
                for n in 1..=d as usize {
                    pairs.push((Word::power(ga, n), Word::power(ga, n)));
                    pairs.push((Word::power(gb, n), Word::power(gb, n)));
                }
                (Side::Right, pairs)
            }
        }
    }

    /// The stated `κ` values as a character.
    pub fn expected_kappa(&self) -> &Character<Laurent> {
        &self.kappa
    }
}

/// `G = p·A + B  ↦  st·A + (s² − t²)·B`, i.e. `(s² − t²)·G` at
/// `p = st/(s² − t²)`.  `None` when `p` occurs with another exponent.
pub fn clear_p(c: &Laurent) -> Option<Laurent> {
    let mut a = Laurent::zero();
    let mut b = Laurent::zero();
    for (exps, x) in c.terms() {
        let mut rest = *exps;
        rest[Param::P.index()] = 0;
        let mono = Laurent::monomial(rest, x.clone());
        match exps[Param::P.index()] {
            0 => b = b + mono,
            1 => a = a + mono,
            _ => return None,
        }
    }
    let s2 = Laurent::param_pow(Param::S, 2);
    let t2 = Laurent::param_pow(Param::T, 2);
    Some(st() * a + (s2 - t2) * b)
}

fn element_map(e: &Element<Laurent>) -> std::collections::BTreeMap<Word, Laurent> {
    e.terms().map(|(w, c)| (w.clone(), c.clone())).collect()
}

/// Witnesses against `span(a) ⊆ span(b)` over the Laurent ring, with
/// unit pivots.
fn span_containment(h: &Presentation<Laurent>, a: &[Element<Laurent>], b: &[Element<Laurent>], label: &str) -> Vec<Witness> {
    let mut ech = UnitEchelon::new();
    for e in b {
        ech.insert(&element_map(e));
    }
    a.iter()
        .enumerate()
        .filter(|(_, e)| ech.solve(&element_map(e)).is_none())
        .map(|(n, e)| Witness::new(format!("{label} {n}"), h.render(e)))
        .collect()
}

/// Listed ideal generators against `i(g) − κ(g)`: exact mutual span
/// containment over the Laurent ring after clearing `p`, falling back to
/// equality of the generated one-sided ideals at degree `d` under the
/// given specializations.
pub fn check_ideal_generators(b: &ModelBundle, specs: &[Specialization], d: u32, budget: u32) -> Vec<VerificationReport> {
    let h = &b.total;
    let mut out = Vec::new();
    for side in [Side::Right, Side::Left] {
        let id = format!("{}.ideal.{}_generators", b.name, side.name());
        let report = VerificationReport::new(id, "listed generators present i(M)⁺")
            .with_degree(d)
            .with_budget(budget)
            .with_specializations(specs.iter().map(|s| s.to_string()).collect());
        let listed = &b.ideal(side).generators;
        let cleared: Option<Vec<Element<Laurent>>> = listed
            .iter()
            .map(|g| g.map_coeffs(|c| clear_p(c).ok_or(())).ok())
            .collect();
        let Some(cleared) = cleared else {
            out.push(report.fail("p occurs nonlinearly", Witness::new("generators", "p-degree above 1")));
            continue;
        };
        let aug = b.augmented_images(side);
        let mut exact = span_containment(h, &cleared, &aug, "listed generator");
        exact.extend(span_containment(h, &aug, &cleared, "augmented image"));
        if exact.is_empty() {
            out.push(report.pass(format!(
                "{} listed generators span i(M)⁺ exactly after clearing p",
                listed.len()
            )));
            continue;
        }
        let mut witnesses = Vec::new();
        for s in specs {
            match ideal_level_witnesses(b, side, s, d, budget) {
                Ok(w) => witnesses.extend(w.into_iter().map(|mut w| {
                    w.label = format!("{s}: {}", w.label);
                    w
                })),
                Err(e) => witnesses.push(Witness::new(s.to_string(), e.to_string())),
            }
        }
        out.push(report.conclude(
            format!(
                "generators differ by units; the generated {} ideals agree at degree {d}",
                side.name()
            ),
            witnesses,
        ));
    }
    out
}

fn ideal_level_witnesses(
    b: &ModelBundle,
    side: Side,
    s: &Specialization,
    d: u32,
    budget: u32,
) -> Result<Vec<Witness>, QuotientError> {
    let h = Arc::new(b.total.specialize(s)?);
    let listed = b.ideal(side).map_coeffs(|c| c.evaluate(s))?;
    let aug = OneSidedIdeal::new(
        side,
        b.augmented_images(side)
            .iter()
            .map(|e| e.specialize(s))
            .collect::<Result<_, _>>()
            .map_err(crate::freealg::AlgebraError::from)?,
    );
    let a = crate::quotient::ideal_slice(&h, &listed, d, budget, &[])?;
    let c = crate::quotient::ideal_slice(&h, &aug, d, budget, &[])?;
    let mut out = Vec::new();
    for (label, x, y) in [("listed", &a, &c), ("augmented", &c, &a)] {
        for e in x.elements() {
            if !y.contains(&e)? {
                out.push(Witness::new(format!("{label} slice element outside the other"), h.render(&e)));
            }
        }
    }
    Ok(out)
}

/// Both truncated quotients of a bundle over one specialization, with the
/// expected classes preferred as representatives.
pub fn build_quotients<F: Field>(
    b: &ModelBundle,
    h: Arc<Presentation<F>>,
    convert: impl Fn(&Laurent) -> Result<F, crate::scalars::ScalarError>,
    d: u32,
    budget: u32,
) -> Result<(QuotientCoalgebra<F>, QuotientCoalgebra<F>), QuotientError> {
    let preferred = b.expected_classes(d);
    let right = b.right_ideal.map_coeffs(&convert)?;
    let left = b.left_ideal.map_coeffs(&convert)?;
    let cr = QuotientCoalgebra::build(h.clone(), &right, d, budget, &preferred)?;
    let cl = QuotientCoalgebra::build(h, &left, d, budget, &preferred)?;
    Ok((cr, cl))
}

/// The stated class map intertwines `Δ̄` and `ε̄` and is a bijection of
/// the truncated class bases.
pub fn coalgebra_iso_witnesses<F: Field>(
    b: &ModelBundle,
    cr: &QuotientCoalgebra<F>,
    cl: &QuotientCoalgebra<F>,
    n: u32,
) -> Result<Vec<Witness>, QuotientError> {
    let (from_side, pairs) = b.iso_pairs(n);
    let (src, dst) = match from_side {
        Side::Left => (cl, cr),
        Side::Right => (cr, cl),
    };
    let h = src.presentation();
    let mut out = Vec::new();
    let map: std::collections::HashMap<Word, Word> = pairs.iter().cloned().collect();
    let mut srcs: Vec<&Word> = map.keys().collect();
    let mut dsts: Vec<&Word> = map.values().collect();
    srcs.sort();
    dsts.sort();
    let mut src_reps: Vec<&Word> = src.representatives().iter().filter(|w| h.word_degree(w) <= n).collect();
    let mut dst_reps: Vec<&Word> = dst.representatives().iter().filter(|w| h.word_degree(w) <= n).collect();
    src_reps.sort();
    dst_reps.sort();
    if srcs != src_reps || dsts != dst_reps {
        out.push(Witness::new("class bases", "map is not a bijection of the truncated class bases"));
        return Ok(out);
    }
    let apply = |c: &Element<F>| -> Element<F> {
        let mut r = Element::zero();
        for (w, x) in c.terms() {
            r.add_term(map[w].clone(), x.clone());
        }
        r
    };
    for (w, image) in &pairs {
        let c = Element::word(w.clone());
        let lhs = src.coproduct(&c)?;
        let mut mapped = Tensor::zero(2);
        for (k, x) in lhs.terms() {
            if !map.contains_key(&k[0]) || !map.contains_key(&k[1]) {
                out.push(Witness::new(format!("Δ̄[{}]", h.render_word(w)), "leaves the mapped classes"));
                continue;
            }
            mapped.add_term(vec![map[&k[0]].clone(), map[&k[1]].clone()], x.clone());
        }
        let rhs = dst.coproduct(&apply(&c))?;
        if mapped != rhs {
            out.push(Witness::sides(
                format!("Δ̄ on [{}] ↦ [{}]", h.render_word(w), h.render_word(image)),
                h.render_tensor(&mapped),
                h.render_tensor(&rhs),
            ));
        }
        if src.counit(&c)? != dst.counit(&Element::word(image.clone()))? {
            out.push(Witness::new(format!("ε̄ on [{}]", h.render_word(w)), "counits differ"));
        }
    }
    Ok(out)
}

/// Classes `c_p = [v^p]` with `c_m·c_n = c_{m+n}` and `c_p* = c_{−p}`:
/// group-likeness, counit, multiplicativity of `Δ̄` and `ε̄`, and the
/// involutive anti-homomorphism property of the star on `|p| ≤ n`.
pub fn circle_structure_witnesses<F: Field>(q: &QuotientCoalgebra<F>, n: i64) -> Result<Vec<Witness>, QuotientError> {
    let h = q.presentation();
    let (v, vinv) = (h.generator_index("v").unwrap(), h.generator_index("vinv").unwrap());
    let class = |p: i64| -> Word {
        if p >= 0 {
            Word::power(v, p as usize)
        } else {
            Word::power(vinv, (-p) as usize)
        }
    };
    let mut out = Vec::new();
    let mut delta = std::collections::HashMap::new();
    for p in -n..=n {
        let c = Element::word(class(p));
        let pc = q.project(&c)?;
        if pc != c {
            out.push(Witness::new(format!("c_{p}"), "representative is not the power of v"));
        }
        let d = q.coproduct(&c)?;
        if d != Tensor::basis(vec![class(p), class(p)]) {
            out.push(Witness::sides(format!("Δ̄ c_{p}"), h.render_tensor(&d), format!("c_{p}⊗c_{p}")));
        }
        if !q.counit(&c)?.is_one() {
            out.push(Witness::new(format!("ε̄ c_{p}"), q.counit(&c)?.to_string()));
        }
        // Star on H sends the representative of c_p to that of c_{-p}.
        let star = h.star(&c)?;
        if q.project(&star)? != Element::word(class(-p)) {
            out.push(Witness::new(format!("c_{p}*"), q.render_class(&q.project(&star)?)));
        }
        delta.insert(p, d);
    }
    let as_class_product = |a: &Tensor<F>, b: &Tensor<F>| -> Tensor<F> {
        let mut t = Tensor::zero(2);
        for (ka, xa) in a.terms() {
            for (kb, xb) in b.terms() {
                let exp = |w: &Word| -> i64 {
                    let k = w.len() as i64;
                    if w.letters().first() == Some(&vinv) {
                        -k
                    } else {
                        k
                    }
                };
                t.add_term(
                    vec![class(exp(&ka[0]) + exp(&kb[0])), class(exp(&ka[1]) + exp(&kb[1]))],
                    xa.mul_ref(xb),
                );
            }
        }
        t
    };
    for a in -n..=n {
        for b in -n..=n {
            if (a + b).abs() > n {
                continue;
            }
            if as_class_product(&delta[&a], &delta[&b]) != delta[&(a + b)] {
                out.push(Witness::new(format!("Δ̄(c_{a}·c_{b})"), "not multiplicative"));
            }
            let star_of_product = -(a + b);
            let product_of_stars = -b + -a;
            if star_of_product != product_of_stars || -(-a) != a {
                out.push(Witness::new(format!("(c_{a}·c_{b})*"), "not an involutive anti-homomorphism"));
            }
        }
    }
    Ok(out)
}

/// One instance of a stated action formula on `C = span{c_p}`.
#[derive(Clone, Debug)]
pub struct ActionInstance {
    pub side: Side,
    pub label: String,
    pub p: i64,
    pub acting: Element<RatFunc>,
    pub expected: Vec<(i64, RatFunc)>,
}

fn qpow(e: i64) -> RatFunc {
    RatFunc::q().pow_i(e).expect("q is invertible")
}

/// The stated action formulas for `|p| ≤ pmax`, `|k| ≤ kmax`.
pub fn eq2_action_instances(h: &Presentation<RatFunc>, pmax: i64, kmax: i64) -> Vec<ActionInstance> {
    let v = h.gen("v");
    let vinv = h.gen("vinv");
    let power = |k: i64| if k >= 0 { h.pow(&v, k as usize) } else { h.pow(&vinv, (-k) as usize) };
    let one = RatFunc::one();
    let mut out = Vec::new();
    for p in -pmax..=pmax {
        for k in -kmax..=kmax {
            out.push(ActionInstance {
                side: Side::Right,
                label: format!("ρ_R(c_{p}, v^{k}) = c_{}", p + k),
                p,
                acting: power(k),
                expected: vec![(p + k, one.clone())],
            });
            out.push(ActionInstance {
                side: Side::Left,
                label: format!("ρ_L(v^{k}, c_{p}) = c_{}", p + k),
                p,
                acting: power(k),
                expected: vec![(p + k, one.clone())],
            });
        }
        for (name, sign) in [("np", 1i64), ("nm", -1i64)] {
            let c = qpow(2 * p);
            let pm = if sign > 0 { "+" } else { "-" };
            out.push(ActionInstance {
                side: Side::Right,
                label: format!("ρ_R(c_{p}, n{pm}) = q^{}(c_{p} - c_{})", 2 * p, p + sign),
                p,
                acting: h.gen(name),
                expected: vec![(p, c.clone()), (p + sign, -c)],
            });
            let e = 2 * p - sign;
            let c = qpow(e);
            out.push(ActionInstance {
                side: Side::Left,
                label: format!("ρ_L(n{pm}, c_{p}) = q^{e}(c_{} - c_{p})", p + sign),
                p,
                acting: h.gen(name),
                expected: vec![(p + sign, c.clone()), (p, -c)],
            });
        }
    }
    out
}

/// `c_p` as a class combination over the representative `v^p`.
pub fn circle_class<F: Ring>(h: &Presentation<F>, p: i64) -> Element<F> {
    let (v, vinv) = (h.generator_index("v").unwrap(), h.generator_index("vinv").unwrap());
    Element::word(if p >= 0 {
        Word::power(v, p as usize)
    } else {
        Word::power(vinv, (-p) as usize)
    })
}
