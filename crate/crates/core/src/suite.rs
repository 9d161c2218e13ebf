//! Check suites over a built-in model or a presentation file.
//!
//! Symbolic checks run once over Laurent coefficients.  Rank-based checks
//! run once per specialization (in parallel) and their witnesses are
//! merged in specialization order, so documents do not depend on
//! scheduling.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::Instant;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::freealg::{parse_presentation, AlgebraError, Element, Presentation, Word};
use crate::galois::{self, Character, EmbeddingMap};
use crate::models::{self, ModelBundle, ModelError};
use crate::quotient::{self, ModuleAction, QuotientCoalgebra, QuotientError, Side};
use crate::report::{ReportDocument, VerificationReport, Witness};
use crate::ring::Ring;
use crate::scalars::{Laurent, RatFunc, Specialization, SymbolicQ};
use crate::tensoralg::{check_hopf_axioms, check_hopf_consequences, Tensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Presentation,
    Hopf,
    Embedding,
    Quotient,
    Actions,
    Galois,
    Iso,
    All,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Presentation,
        Suite::Hopf,
        Suite::Embedding,
        Suite::Quotient,
        Suite::Actions,
        Suite::Galois,
        Suite::Iso,
        Suite::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Presentation => "presentation",
            Suite::Hopf => "hopf",
            Suite::Embedding => "embedding",
            Suite::Quotient => "quotient",
            Suite::Actions => "actions",
            Suite::Galois => "galois",
            Suite::Iso => "iso",
            Suite::All => "all",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModelSource {
    Builtin(String),
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub source: ModelSource,
    pub suite: Suite,
    pub degree: u32,
    pub budget: u32,
    pub seed: u64,
    pub specializations: usize,
}

impl SuiteConfig {
    pub fn new(model: &str, suite: Suite, degree: u32) -> Self {
        SuiteConfig {
            source: ModelSource::Builtin(model.to_string()),
            suite,
            degree,
            budget: degree + 2,
            seed: 1,
            specializations: 3,
        }
    }

    /// Budget slack applied to quotients built at other degrees.
    fn slack(&self) -> u32 {
        self.budget.saturating_sub(self.degree)
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Parse(String),
    #[error("degree must be at least 1")]
    Degree,
    #[error("budget {budget} is below the degree {degree}")]
    Budget { degree: u32, budget: u32 },
    #[error("at least one specialization is required")]
    Specializations,
}

pub fn run_suite(config: &SuiteConfig) -> Result<ReportDocument, SuiteError> {
    if config.degree == 0 {
        return Err(SuiteError::Degree);
    }
    if config.budget < config.degree {
        return Err(SuiteError::Budget {
            degree: config.degree,
            budget: config.budget,
        });
    }
    if config.specializations == 0 {
        return Err(SuiteError::Specializations);
    }
    let (model_name, reports) = match &config.source {
        ModelSource::Builtin(name) => {
            let bundle = models::load_model(name)?;
            (name.clone(), run_model(&bundle, config))
        }
        ModelSource::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| SuiteError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            let parsed = parse_presentation(&text).map_err(|e| SuiteError::Parse(format!("{}: {e}", path.display())))?;
            let name = parsed.presentation.name().to_string();
            (name, run_file(parsed, config))
        }
    };
    Ok(ReportDocument::new(
        model_name,
        config.suite.name(),
        config.degree,
        config.budget,
        config.seed,
        config.specializations,
        reports,
    ))
}

fn timed(mut r: VerificationReport, start: Instant) -> VerificationReport {
    r.elapsed = Some(start.elapsed());
    r
}

fn run_file(parsed: crate::freealg::ParsedPresentation, config: &SuiteConfig) -> Vec<VerificationReport> {
    let h = &parsed.presentation;
    let mut out = Vec::new();
    if config.suite.includes(Suite::Presentation) {
        out.push(confluence_report(h, &parsed.ambiguities.len()));
        if h.star_images().is_some() {
            out.push(star_report(h));
        }
    }
    if config.suite.includes(Suite::Hopf) {
        out.extend(check_hopf_axioms(h, config.degree));
        out.extend(check_hopf_consequences(h, config.degree));
    }
    for s in [Suite::Embedding, Suite::Quotient, Suite::Actions, Suite::Galois, Suite::Iso] {
        if config.suite.includes(s) {
            out.push(
                VerificationReport::new(format!("{}.{}", h.name(), s.name()), "bundle data")
                    .skip("requires a built-in model"),
            );
        }
    }
    out
}

fn confluence_report(h: &Presentation<Laurent>, unresolved: &usize) -> VerificationReport {
    let start = Instant::now();
    let amb = if *unresolved == 0 { h.check_confluence() } else { Vec::new() };
    let report = VerificationReport::new(format!("{}.presentation.confluence", h.name()), "every overlap and inclusion ambiguity resolves");
    let witnesses: Vec<Witness> = if *unresolved > 0 {
        vec![Witness::new("ambiguities", format!("{unresolved} unresolved"))]
    } else {
        amb.iter()
            .map(|a| Witness::sides(format!("ambiguity at {}", h.render_word(&a.word)), h.render(&a.left), h.render(&a.right)))
            .collect()
    };
    timed(
        report.conclude(format!("{} rules, {} unresolved", h.rules().len(), witnesses.len()), witnesses),
        start,
    )
}

fn star_report(h: &Presentation<Laurent>) -> VerificationReport {
    let start = Instant::now();
    let mut w = Vec::new();
    for (i, r) in h.rules().iter().enumerate() {
        let lhs = h.star(&Element::word(r.lhs.clone())).unwrap();
        let rhs = h.star(&r.rhs).unwrap();
        if lhs != rhs {
            w.push(Witness::sides(format!("relation {i}"), h.render(&lhs), h.render(&rhs)));
        }
    }
    for g in 0..h.num_generators() {
        let x = Element::word(Word::single(g as u16));
        let back = h.star(&h.star(&x).unwrap()).unwrap();
        if back != x {
            w.push(Witness::new(format!("({}*)*", h.generators()[g].name), h.render(&back)));
        }
    }
    timed(
        VerificationReport::new(format!("{}.presentation.star", h.name()), "star is an involutive anti-automorphism")
            .conclude(format!("{} relations and {} generators", h.rules().len(), h.num_generators()), w),
        start,
    )
}

/// Per-specialization data with a cache of built quotients.
struct SpecData {
    spec: Specialization,
    h: Arc<Presentation<BigRational>>,
    i_left: EmbeddingMap<BigRational>,
    i_right: EmbeddingMap<BigRational>,
    quotients: Mutex<HashMap<(Side, u32), Arc<QuotientCoalgebra<BigRational>>>>,
}

impl SpecData {
    fn new(b: &ModelBundle, spec: Specialization) -> Result<Self, AlgebraError> {
        let h = Arc::new(b.total.specialize(&spec)?);
        let m = Arc::new(b.fibre.specialize(&spec)?);
        let i_left = b.i_left.specialize(m.clone(), h.clone(), &spec)?;
        let i_right = b.i_right.specialize(m, h.clone(), &spec)?;
        Ok(SpecData {
            spec,
            h,
            i_left,
            i_right,
            quotients: Mutex::new(HashMap::new()),
        })
    }
}

struct Ctx<'a> {
    b: &'a ModelBundle,
    config: &'a SuiteConfig,
    specs: Vec<SpecData>,
}

impl<'a> Ctx<'a> {
    fn spec_labels(&self) -> Vec<String> {
        self.specs.iter().map(|s| s.spec.to_string()).collect()
    }

    fn quotient(&self, sd: &SpecData, side: Side, d: u32) -> Result<Arc<QuotientCoalgebra<BigRational>>, QuotientError> {
        if let Some(q) = sd.quotients.lock().unwrap().get(&(side, d)) {
            return Ok(q.clone());
        }
        let ideal = self.b.ideal(side).map_coeffs(|c| c.evaluate(&sd.spec))?;
        let q = Arc::new(QuotientCoalgebra::build_unchecked(
            sd.h.clone(),
            &ideal,
            d,
            d + self.config.slack(),
            &self.b.expected_classes(d),
        )?);
        sd.quotients.lock().unwrap().insert((side, d), q.clone());
        Ok(q)
    }

    /// Runs `f` for every specialization in parallel and merges the
    /// witnesses, prefixed by the specialization, into one report.
    fn merged<E: std::fmt::Display + Send>(
        &self,
        report: VerificationReport,
        summary: impl Into<String>,
        f: impl Fn(&SpecData) -> Result<Vec<Witness>, E> + Sync,
        is_budget: impl Fn(&E) -> bool,
    ) -> VerificationReport {
        let start = Instant::now();
        let report = report.with_specializations(self.spec_labels());
        let results: Vec<Result<Vec<Witness>, E>> = std::thread::scope(|scope| {
            let handles: Vec<_> = self.specs.iter().map(|sd| scope.spawn(|| f(sd))).collect();
            handles.into_iter().map(|h| h.join().expect("check thread")).collect()
        });
        let mut witnesses = Vec::new();
        for (sd, r) in self.specs.iter().zip(results) {
            match r {
                Ok(ws) => witnesses.extend(ws.into_iter().map(|mut w| {
                    w.label = format!("{}: {}", sd.spec, w.label);
                    w
                })),
                Err(e) if is_budget(&e) => return timed(report.budget_failure(format!("{}: {e}", sd.spec)), start),
                Err(e) => witnesses.push(Witness::new(format!("{}: error", sd.spec), e.to_string())),
            }
        }
        timed(report.conclude(summary, witnesses), start)
    }

    fn id(&self, rest: &str) -> String {
        format!("{}.{rest}", self.b.name)
    }
}

fn quotient_budget(e: &QuotientError) -> bool {
    matches!(e, QuotientError::BudgetInstability { .. })
}

fn galois_budget(e: &galois::GaloisError) -> bool {
    matches!(e, galois::GaloisError::Quotient(QuotientError::BudgetInstability { .. }))
}

fn run_model(b: &ModelBundle, config: &SuiteConfig) -> Vec<VerificationReport> {
    let specs = Specialization::sample_many(config.seed, config.specializations)
        .into_iter()
        .map(|s| SpecData::new(b, s).expect("sampled specializations keep leading coefficients invertible"))
        .collect();
    let ctx = Ctx { b, config, specs };
    let mut out = Vec::new();
    let suite = config.suite;
    if suite.includes(Suite::Presentation) {
        out.push(confluence_report(&b.total, &0));
        out.push(confluence_report(&b.fibre, &0));
        out.push(star_report(&b.total));
        out.push(star_report(&b.fibre));
    }
    if suite.includes(Suite::Hopf) {
        out.extend(check_hopf_axioms(&b.total, config.degree));
        out.extend(check_hopf_consequences(&b.total, config.degree));
    }
    if suite.includes(Suite::Embedding) {
        out.extend(embedding_reports(&ctx));
    }
    if suite.includes(Suite::Quotient) {
        out.extend(quotient_reports(&ctx));
    }
    if suite.includes(Suite::Actions) {
        out.extend(action_reports(&ctx));
    }
    if suite.includes(Suite::Galois) {
        out.extend(galois_reports(&ctx));
    }
    if suite.includes(Suite::Iso) {
        out.extend(iso_reports(&ctx));
    }
    out
}

fn embedding_reports(ctx: &Ctx<'_>) -> Vec<VerificationReport> {
    let b = ctx.b;
    let mut out = Vec::new();
    for side in [Side::Left, Side::Right] {
        let i = b.embedding(side);
        let coaction = b.coaction(side);
        let tag = i.name.to_lowercase();
        let start = Instant::now();
        let rel = galois::embedding_relation_witnesses(i);
        out.push(timed(
            VerificationReport::new(ctx.id(&format!("embedding.{tag}.relations")), "relations of M map to 0")
                .conclude(format!("{} relations", b.fibre.rules().len()), rel),
            start,
        ));
        let start = Instant::now();
        let star = galois::embedding_star_witnesses(i).unwrap_or_else(|e| vec![Witness::new("star", e.to_string())]);
        out.push(timed(
            VerificationReport::new(ctx.id(&format!("embedding.{tag}.star")), "i(a*) = i(a)*")
                .conclude(format!("{} generators", b.fibre.num_generators()), star),
            start,
        ));
        let start = Instant::now();
        let anchor = match side {
            Side::Left => "Δ∘i = (id⊗i)∘λ_M",
            Side::Right => "Δ∘i = (i⊗id)∘Δ_M",
        };
        let inter = galois::embedding_intertwining_witnesses(i, coaction)
            .unwrap_or_else(|e| vec![Witness::new("coproduct", e.to_string())]);
        out.push(timed(
            VerificationReport::new(ctx.id(&format!("embedding.{tag}.intertwining")), anchor)
                .conclude(format!("coaction {}", b.coaction_source), inter),
            start,
        ));
        let start = Instant::now();
        let ax = galois::coaction_axiom_witnesses(i, coaction).unwrap_or_else(|e| vec![Witness::new("coaction", e.to_string())]);
        out.push(timed(
            VerificationReport::new(ctx.id(&format!("embedding.{tag}.coaction")), "coassociative, counital, algebra map")
                .conclude(format!("coaction {}", b.coaction_source), ax),
            start,
        ));
        let start = Instant::now();
        let kappa = Character::from_embedding(i);
        let w = match kappa {
            Ok(k) => kappa_witnesses(&b.fibre, &k, b.expected_kappa()),
            Err(e) => vec![Witness::new("counit", e.to_string())],
        };
        out.push(timed(
            VerificationReport::new(ctx.id(&format!("embedding.{tag}.kappa")), "κ = ε∘i").conclude(
                format!("κ = ({})", render_kappa(b.expected_kappa())),
                w,
            ),
            start,
        ));
    }
    let start = Instant::now();
    out.push(timed(
        VerificationReport::new(ctx.id("embedding.character"), "κ is a star-character").conclude(
            "relations of M vanish under κ",
            galois::character_witnesses(&b.fibre, b.expected_kappa()),
        ),
        start,
    ));
    let specs: Vec<Specialization> = ctx.specs.iter().map(|s| s.spec.clone()).collect();
    let start = Instant::now();
    for r in models::check_ideal_generators(b, &specs, ctx.config.degree, ctx.config.budget) {
        let id = r.id.replace(&format!("{}.ideal.", b.name), &format!("{}.embedding.ideal_", b.name));
        let mut r = timed(r, start);
        r.id = id;
        out.push(r);
    }
    out
}

fn kappa_witnesses(m: &Presentation<Laurent>, got: &Character<Laurent>, expected: &Character<Laurent>) -> Vec<Witness> {
    got.values
        .iter()
        .zip(&expected.values)
        .enumerate()
        .filter(|(_, (a, e))| a != e)
        .map(|(g, (a, e))| Witness::sides(format!("κ({})", m.generators()[g].name), a.to_string(), e.to_string()))
        .collect()
}

fn render_kappa(k: &Character<Laurent>) -> String {
    k.values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", ")
}

fn quotient_reports(ctx: &Ctx<'_>) -> Vec<VerificationReport> {
    let b = ctx.b;
    let d = ctx.config.degree;
    let mut out = Vec::new();
    for side in [Side::Right, Side::Left] {
        let s = side.name();
        let report = VerificationReport::new(ctx.id(&format!("quotient.{s}.coideal")), "Δ(J) ⊂ H⊗J + J⊗H and ε(J) = 0")
            .with_degree(d)
            .with_budget(ctx.config.budget);
        out.push(ctx.merged(
            report,
            format!("{} generators", b.ideal(side).generators.len()),
            |sd| {
                let ideal = b.ideal(side).map_coeffs(|c| c.evaluate(&sd.spec))?;
                let q = QuotientCoalgebra::build_unchecked(sd.h.clone(), &ideal, d, ctx.config.budget, &b.expected_classes(d))?;
                quotient::coideal_witnesses(&q, &ideal)
            },
            quotient_budget,
        ));

        let report = VerificationReport::new(ctx.id(&format!("quotient.{s}.classes")), "truncated quotient spanned by the expected classes")
            .with_degree(d)
            .with_budget(ctx.config.budget);
        out.push(ctx.merged(
            report,
            format!("dimension 2k+1 with classes {{1, a^n, b^n}} for k = 1..{d}"),
            |sd| class_witnesses(ctx, sd, side, d),
            quotient_budget,
        ));

        let report = VerificationReport::new(ctx.id(&format!("quotient.{s}.invariants")), "π is a coalgebra map and e = π(1) is group-like")
            .with_degree(d)
            .with_budget(ctx.config.budget);
        out.push(ctx.merged(
            report,
            format!("all words of degree ≤ {d}"),
            |sd| ctx.quotient(sd, side, d)?.invariant_witnesses(),
            quotient_budget,
        ));

        let report = VerificationReport::new(ctx.id(&format!("quotient.{s}.coinvariants")), "i(M) spans the coinvariants degree by degree")
            .with_degree(d)
            .with_budget(ctx.config.budget);
        out.push(ctx.merged(
            report,
            format!("per-degree dimensions and containment up to degree {d}"),
            |sd| coinvariant_witnesses(ctx, sd, side, d),
            galois_budget,
        ));
    }
    let report = VerificationReport::new(ctx.id("quotient.right.left_linearity"), "Δ_H(i(m)·x) = (i(m)⊗1)·Δ_H(x)")
        .with_degree(d);
    out.push(ctx.merged(
        report,
        format!("words of degree ≤ {}", d.saturating_sub(2)),
        |sd| {
            let q = ctx.quotient(sd, Side::Right, d)?;
            galois::left_linearity_witnesses(&q, &sd.i_left, d.saturating_sub(2))
        },
        galois_budget,
    ));
    let report = VerificationReport::new(ctx.id("quotient.left.right_linearity"), "λ(x·i(m)) = λ(x)·(1⊗i(m))").with_degree(d);
    out.push(ctx.merged(
        report,
        format!("words of degree ≤ {}", d.saturating_sub(2)),
        |sd| {
            let q = ctx.quotient(sd, Side::Left, d)?;
            galois::colinearity_witnesses(&q, &sd.i_right, d.saturating_sub(2))
        },
        galois_budget,
    ));
    out
}

/// Dimension `2k+1` and representatives equal to the expected classes for
/// every truncation degree `k ≤ d`.
pub fn class_witnesses_at(
    b: &ModelBundle,
    q: &QuotientCoalgebra<BigRational>,
) -> Vec<Witness> {
    let h = q.presentation();
    let k = q.degree();
    let mut out = Vec::new();
    if q.dimension() != 2 * k as usize + 1 {
        out.push(Witness::sides(format!("dimension at degree {k}"), q.dimension().to_string(), (2 * k + 1).to_string()));
    }
    let mut got: Vec<Word> = q.representatives().to_vec();
    let mut want = b.expected_classes(k);
    got.sort();
    want.sort();
    if got != want {
        let render = |ws: &[Word]| ws.iter().map(|w| h.render_word(w)).collect::<Vec<_>>().join(", ");
        out.push(Witness::sides(format!("classes at degree {k}"), render(&got), render(&want)));
    }
    out
}

fn class_witnesses(ctx: &Ctx<'_>, sd: &SpecData, side: Side, d: u32) -> Result<Vec<Witness>, QuotientError> {
    let mut out = Vec::new();
    for k in 1..=d {
        let q = ctx.quotient(sd, side, k)?;
        out.extend(class_witnesses_at(ctx.b, &q));
    }
    Ok(out)
}

/// Coinvariants of the quotient on `side` against the image of the
/// embedding defining its ideal: containment and equal per-degree
/// dimensions up to degree `n`.
pub fn coinvariant_comparison(
    q: &QuotientCoalgebra<BigRational>,
    i: &EmbeddingMap<BigRational>,
    n: u32,
) -> Result<Vec<Witness>, galois::GaloisError> {
    let h = q.presentation();
    let coinv = quotient::coinvariants(q, n)?;
    let images: Vec<Element<BigRational>> = i.domain().irreducible_words(n).iter().map(|w| i.image_word(w)).collect();
    let dims = quotient::filtered_dimensions(h, &images, n);
    let mut out = Vec::new();
    if dims != coinv.dims {
        out.push(Witness::sides("per-degree dimensions", format!("{:?}", dims), format!("{:?}", coinv.dims)));
    }
    let span = quotient::ElementSpan::new(&coinv.basis);
    for (w, e) in i.domain().irreducible_words(n).iter().zip(&images) {
        if h.degree(e) <= n && !span.contains(e) {
            out.push(Witness::new(format!("i({}) not coinvariant", i.domain().render_word(w)), h.render(e)));
        }
    }
    Ok(out)
}

fn coinvariant_witnesses(ctx: &Ctx<'_>, sd: &SpecData, side: Side, n: u32) -> Result<Vec<Witness>, galois::GaloisError> {
    let q = ctx.quotient(sd, side, n)?;
    let i = match side {
        Side::Right => &sd.i_left,
        Side::Left => &sd.i_right,
    };
    coinvariant_comparison(&q, i, n)
}

/// Quotient degree for the action sweeps: covers `v^p·v^k` for the
/// ranges used below.
const ACTION_P: i64 = 4;
const ACTION_K: i64 = 3;

fn action_reports(ctx: &Ctx<'_>) -> Vec<VerificationReport> {
    let b = ctx.b;
    let d = ctx.config.degree;
    let mut out = Vec::new();
    for side in [Side::Right, Side::Left] {
        let s = side.name();
        let seed = ctx.config.seed;
        let report = VerificationReport::new(ctx.id(&format!("actions.{s}.representatives")), "ρ(π(g), h) = π(gh) for any representative g")
            .with_degree(d);
        out.push(ctx.merged(
            report,
            "random representatives over all fitting words",
            |sd| {
                let q = ctx.quotient(sd, side, d)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                ModuleAction::new(&q).representative_witnesses(&mut rng, 2)
            },
            quotient_budget,
        ));
        let report = VerificationReport::new(ctx.id(&format!("actions.{s}.associativity")), "ρ(ρ(c, x), y) = ρ(c, xy)").with_degree(d);
        out.push(ctx.merged(
            report,
            "all class and word pairs fitting the truncation",
            |sd| {
                let q = ctx.quotient(sd, side, d)?;
                ModuleAction::new(&q).associativity_witnesses(d)
            },
            quotient_budget,
        ));
    }
    let report = VerificationReport::new(ctx.id("actions.counit"), "ε̄(π(h·i(m))) = ε̄(π(h))·κ(m)").with_degree(d);
    out.push(ctx.merged(
        report,
        "class representatives and generators of M",
        |sd| {
            let q = ctx.quotient(sd, Side::Left, d)?;
            let h = q.presentation();
            let kappa: Vec<BigRational> = b.kappa.values.iter().map(|v| v.evaluate(&sd.spec)).collect::<Result<_, _>>()?;
            let mut w = Vec::new();
            for r in q.representatives() {
                for (g, img) in sd.i_right.images().iter().enumerate() {
                    let x = h.mul(&Element::word(r.clone()), img);
                    if h.degree(&x) > d {
                        continue;
                    }
                    let lhs = q.counit(&q.project(&x)?)?;
                    let rhs = q.counit(&Element::word(r.clone()))?.mul_ref(&kappa[g]);
                    if lhs != rhs {
                        w.push(Witness::sides(format!("class {} with generator {g}", h.render_word(r)), lhs.to_string(), rhs.to_string()));
                    }
                }
            }
            Ok(w)
        },
        quotient_budget,
    ));
    if b.kind == models::ModelKind::Eq2Hyperboloid {
        out.extend(circle_action_reports(ctx));
    }
    out
}

/// One evaluated action instance: whether it matched and the computed
/// class written in the `c_p` basis.
pub struct ActionResult {
    pub instance: models::ActionInstance,
    pub matches: bool,
    pub computed: String,
}

/// Evaluates every stated action instance from `ρ(c, h) = π(gh)` exactly
/// over `Q(q)`, for `|p| ≤ pmax` and `|k| ≤ kmax`.
pub fn eq2_action_outcome(b: &ModelBundle, pmax: i64, kmax: i64, budget_slack: u32) -> Result<Vec<ActionResult>, QuotientError> {
    let symbolic = SymbolicQ { rest: Specialization::new() };
    let h = Arc::new(b.total.specialize(&symbolic)?);
    let d = (pmax + kmax).max(pmax + 1) as u32;
    let preferred = b.expected_classes(d);
    let convert = |c: &Laurent| c.evaluate(&symbolic);
    let right = b.right_ideal.map_coeffs(convert)?;
    let left = b.left_ideal.map_coeffs(convert)?;
    let cr = QuotientCoalgebra::build(h.clone(), &right, d, d + budget_slack, &preferred)?;
    let cl = QuotientCoalgebra::build(h.clone(), &left, d, d + budget_slack, &preferred)?;
    let mut out = Vec::new();
    for instance in models::eq2_action_instances(&h, pmax, kmax) {
        let q = match instance.side {
            Side::Right => &cr,
            Side::Left => &cl,
        };
        let got = ModuleAction::new(q).act(&models::circle_class(&h, instance.p), &instance.acting)?;
        let mut want: Element<RatFunc> = Element::zero();
        for (p, x) in &instance.expected {
            want.add_scaled(&models::circle_class(&h, *p), x);
        }
        out.push(ActionResult {
            matches: got == want,
            computed: render_circle(&h, &got),
            instance,
        });
    }
    Ok(out)
}

fn render_circle(h: &Presentation<RatFunc>, e: &Element<RatFunc>) -> String {
    let vinv = h.generator_index("vinv");
    let terms: Vec<String> = e
        .terms()
        .map(|(w, c)| {
            let n = w.len() as i64;
            let p = if w.letters().first().copied() == vinv { -n } else { n };
            format!("({c})·c_{p}")
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn circle_action_reports(ctx: &Ctx<'_>) -> Vec<VerificationReport> {
    let start = Instant::now();
    let groups = [
        ("right_v", Side::Right, "ρ_R(c_p, v^k) = c_{p+k}", "v^"),
        ("right_n", Side::Right, "ρ_R(c_p, n±) = q^{2p}(c_p − c_{p±1})", "n"),
        ("left_v", Side::Left, "ρ_L(v^k, c_p) = c_{p+k}", "v^"),
        ("left_n", Side::Left, "ρ_L(n±, c_p) = q^{2p∓1}(c_{p±1} − c_p)", "n"),
    ];
    let outcome = eq2_action_outcome(ctx.b, ACTION_P, ACTION_K, ctx.config.slack());
    let mut out = Vec::new();
    for (tag, side, anchor, marker) in groups {
        let report = VerificationReport::new(ctx.id(&format!("actions.formula.{tag}")), anchor)
            .with_degree((ACTION_P + ACTION_K) as u32);
        let r = match &outcome {
            Err(e) if quotient_budget(e) => report.budget_failure(e.to_string()),
            Err(e) => report.fail("computation failed", Witness::new("error", e.to_string())),
            Ok(results) => {
                let mine: Vec<&ActionResult> = results
                    .iter()
                    .filter(|r| {
                        let i = &r.instance;
                        i.side == side && (i.label.contains(&format!(", {marker}")) || i.label.contains(&format!("({marker}")))
                    })
                    .collect();
                let w: Vec<Witness> = mine
                    .iter()
                    .filter(|r| !r.matches)
                    .map(|r| Witness::new(r.instance.label.clone(), format!("computed {}", r.computed)))
                    .collect();
                report.conclude(
                    format!("{} instances exact in q, |p| ≤ {ACTION_P}, |k| ≤ {ACTION_K}", mine.len()),
                    w,
                )
            }
        };
        out.push(timed(r, start));
    }
    out
}

/// Degree bound for the second legs `S(h₍₂₎)·g` over a cotensor basis.
fn twisted_degree(h: &Presentation<BigRational>, basis: &[Tensor<BigRational>]) -> Result<u32, AlgebraError> {
    let mut d = 0;
    for t in basis {
        for y in galois::antipode_twist(h, t)?.values() {
            d = d.max(h.degree(y));
        }
    }
    Ok(d)
}

fn galois_reports(ctx: &Ctx<'_>) -> Vec<VerificationReport> {
    let d = ctx.config.degree;
    let mut out = Vec::new();
    let basis_cache: Mutex<HashMap<usize, Arc<Vec<Tensor<BigRational>>>>> = Mutex::new(HashMap::new());
    let basis_for = |n: usize, sd: &SpecData| -> Result<Arc<Vec<Tensor<BigRational>>>, galois::GaloisError> {
        if let Some(b) = basis_cache.lock().unwrap().get(&n) {
            return Ok(b.clone());
        }
        let cl = ctx.quotient(sd, Side::Left, d)?;
        let basis = Arc::new(quotient::cotensor(&cl, d)?);
        basis_cache.lock().unwrap().insert(n, basis.clone());
        Ok(basis)
    };
    let index = |sd: &SpecData| ctx.specs.iter().position(|x| std::ptr::eq(x, sd)).unwrap();

    let report = VerificationReport::new(ctx.id("galois.cotensor"), "Δ(h) and 1⊗1 lie in H□H").with_degree(d);
    out.push(ctx.merged(
        report,
        format!("cotensor basis of H_{{≤{d}}}⊗H_{{≤{d}}} over the left quotient"),
        |sd| {
            let basis = basis_for(index(sd), sd)?;
            let cl = ctx.quotient(sd, Side::Left, d)?;
            let h = &sd.h;
            let mut w = Vec::new();
            if basis.is_empty() {
                w.push(Witness::new("cotensor basis", "empty"));
            }
            for word in h.irreducible_words(d) {
                let t = h.coproduct_word(&word)?;
                if !quotient::cotensor_defect(&cl, &t)?.is_zero() {
                    w.push(Witness::new(format!("Δ({})", h.render_word(&word)), "violates the cotensor condition"));
                }
            }
            Ok(w)
        },
        galois_budget,
    ));

    let report = VerificationReport::new(ctx.id("galois.lemma"), "h₍₁₎⊗S(h₍₂₎)g has left coinvariant second legs").with_degree(d);
    out.push(ctx.merged(
        report,
        "every cotensor basis element",
        |sd| {
            let basis = basis_for(index(sd), sd)?;
            let n = twisted_degree(&sd.h, &basis)?.max(d);
            let cl = ctx.quotient(sd, Side::Left, n)?;
            galois::check_welldefined_lemma(&cl, &basis)
        },
        galois_budget,
    ));

    let dm = d.saturating_sub(1).max(1);
    let report = VerificationReport::new(ctx.id("galois.dual_bijectivity"), "χ̃∘χ = id and χ∘χ̃ = id on C⊗A and C□C").with_degree(d);
    out.push(ctx.merged(
        report,
        format!("H_{{≤{d}}}⊗M_{{≤{dm}}}, cotensor values for M_{{≤1}}, full cotensor basis"),
        |sd| {
            let basis = basis_for(index(sd), sd)?;
            let n = d + 2 * ctx.b.i_right.images().iter().map(|e| ctx.b.total.degree(e)).max().unwrap_or(1);
            let cl = ctx.quotient(sd, Side::Left, n.min(d + 2))?;
            Ok(galois::check_dual_bijectivity(&cl, &sd.i_right, &basis, d, dm, 1)?.witnesses)
        },
        galois_budget,
    ));

    let inj = d.saturating_sub(1).max(1);
    let report = VerificationReport::new(ctx.id("galois.direct_bijectivity"), "χ_M: u⊗v ↦ u·Δ_H(v) is bijective").with_degree(d);
    out.push(ctx.merged(
        report,
        format!(
            "surjective onto H_{{≤{d}}}⊗C, injective on H_{{≤{inj}}}⊗H_{{≤{inj}}} modulo mid relations inside degree {}",
            inj + 2
        ),
        |sd| {
            let cr = ctx.quotient(sd, Side::Right, d)?;
            Ok(galois::check_direct_bijectivity(&cr, &sd.i_left, d, inj, inj + 2)?.witnesses)
        },
        galois_budget,
    ));
    out
}

fn iso_reports(ctx: &Ctx<'_>) -> Vec<VerificationReport> {
    let b = ctx.b;
    let d = ctx.config.degree;
    let mut out = Vec::new();
    let anchor = match b.kind {
        models::ModelKind::Su2Sphere => "π_L(αⁿ) ↦ π_R(δⁿ), π_L(δⁿ) ↦ π_R(αⁿ)",
        models::ModelKind::Eq2Hyperboloid => "π_R(vⁿ) ↦ π_L(vⁿ)",
    };
    let report = VerificationReport::new(ctx.id("iso.coalgebra"), anchor).with_degree(d);
    out.push(ctx.merged(
        report,
        format!("classes with n ≤ {d} intertwine Δ̄ and ε̄"),
        |sd| {
            let cr = ctx.quotient(sd, Side::Right, d)?;
            let cl = ctx.quotient(sd, Side::Left, d)?;
            models::coalgebra_iso_witnesses(b, &cr, &cl, d)
        },
        quotient_budget,
    ));
    if b.kind == models::ModelKind::Eq2Hyperboloid {
        let report = VerificationReport::new(ctx.id("iso.circle"), "C ≅ C[Z, Z⁻¹] with Z* = Z⁻¹").with_degree(d);
        out.push(ctx.merged(
            report,
            format!("group-like classes c_p, |p| ≤ {d}"),
            |sd| {
                let cr = ctx.quotient(sd, Side::Right, d)?;
                let mut w = models::circle_structure_witnesses(&cr, d as i64)?;
                let cl = ctx.quotient(sd, Side::Left, d)?;
                w.extend(models::circle_structure_witnesses(&cl, d as i64)?);
                Ok(w)
            },
            quotient_budget,
        ));
    }
    out
}
