//! One PASS/FAIL line per acceptance criterion.
//!
//! Tolerances: every comparison is exact (Laurent, rational or `Q(q)`
//! arithmetic), so the only pinned numbers are degrees, specialization
//! counts and wall-clock limits.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use qhopf::freealg::{Element, Presentation};
use qhopf::galois::{self, Character, EmbeddingMap};
use qhopf::models::{self, presentations, ModelBundle, MODEL_NAMES};
use qhopf::quotient::{self, QuotientCoalgebra, Side};
use qhopf::report::{emit_report, ReportFormat};
use num_traits::{One, Zero};
use qhopf::scalars::{Laurent, Param, Specialization};
use qhopf::suite::{self, run_suite, Suite, SuiteConfig};
use qhopf::tensoralg::check_hopf_axioms;

const SEED: u64 = 1;
const SPECS: usize = 3;
const SLACK: u32 = 2;

/// Criteria whose stated expectation contradicts the presented relations.
/// Their line still reads FAIL; the target asserts they keep failing and
/// that every other criterion passes.
const KNOWN_CONFLICTS: [usize; 1] = [6];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

struct Spec {
    spec: Specialization,
    h: Arc<Presentation<BigRational>>,
    i_left: EmbeddingMap<BigRational>,
    i_right: EmbeddingMap<BigRational>,
}

fn specs(b: &ModelBundle) -> Vec<Spec> {
    Specialization::sample_many(SEED, SPECS)
        .into_iter()
        .map(|spec| {
            let h = Arc::new(b.total.specialize(&spec).unwrap());
            let m = Arc::new(b.fibre.specialize(&spec).unwrap());
            let i_left = b.i_left.specialize(m.clone(), h.clone(), &spec).unwrap();
            let i_right = b.i_right.specialize(m, h.clone(), &spec).unwrap();
            Spec { spec, h, i_left, i_right }
        })
        .collect()
}

fn quotient_at(b: &ModelBundle, s: &Spec, side: Side, d: u32) -> QuotientCoalgebra<BigRational> {
    let ideal = b.ideal(side).map_coeffs(|c| c.evaluate(&s.spec)).unwrap();
    QuotientCoalgebra::build_unchecked(s.h.clone(), &ideal, d, d + SLACK, &b.expected_classes(d)).unwrap()
}

fn bundles() -> Vec<ModelBundle> {
    MODEL_NAMES.iter().map(|n| models::load_model(n).unwrap()).collect()
}

fn confluence() -> Outcome {
    let start = Instant::now();
    let all = [
        presentations::su2(),
        presentations::sphere(),
        presentations::eq2(),
        presentations::hyperboloid(),
    ];
    let unresolved: usize = all.iter().map(|p| p.check_confluence().len()).sum();
    // Associativity of the normal-form product is a consequence of
    // confluence and is checked independently of the ambiguity scan.
    let mut nonassoc = 0;
    for p in &all {
        let words = p.irreducible_words(2);
        for u in &words {
            for v in &words {
                for w in &words {
                    let (u, v, w) = (Element::word(u.clone()), Element::word(v.clone()), Element::word(w.clone()));
                    if p.mul(&p.mul(&u, &v), &w) != p.mul(&u, &p.mul(&v, &w)) {
                        nonassoc += 1;
                    }
                }
            }
        }
    }
    let t = start.elapsed();
    outcome(
        unresolved == 0 && nonassoc == 0 && t < Duration::from_secs(5),
        format!("{unresolved} unresolved ambiguities, {nonassoc} non-associative triples, {t:.2?} (< 5 s)"),
    )
}

fn hopf_axioms() -> Outcome {
    let start = Instant::now();
    let wanted = ["coassociativity", "counit", "antipode", "well_defined"];
    let mut failed = Vec::new();
    let mut checked = 0;
    for h in [presentations::su2(), presentations::eq2()] {
        for r in check_hopf_axioms(&h, 3) {
            if wanted.iter().any(|w| r.id.ends_with(&format!(".hopf.{w}"))) {
                checked += 1;
                if !r.passed() {
                    failed.push(r.id.clone());
                }
            }
        }
    }
    let t = start.elapsed();
    outcome(
        failed.is_empty() && checked == 8 && t < Duration::from_secs(60),
        format!("{checked} axiom checks at degree 3, failed {failed:?}, {t:.2?} (< 60 s)"),
    )
}

fn embeddings() -> Outcome {
    let mut bad = Vec::new();
    for b in bundles() {
        for side in [Side::Left, Side::Right] {
            let i = b.embedding(side);
            let n = galois::embedding_relation_witnesses(i).len()
                + galois::embedding_star_witnesses(i).unwrap().len()
                + galois::embedding_intertwining_witnesses(i, b.coaction(side)).unwrap().len();
            if n > 0 {
                bad.push(format!("{} {}: {n}", b.name, i.name));
            }
        }
    }
    outcome(bad.is_empty(), format!("4 embeddings exact over Laurent coefficients, failures {bad:?}"))
}

fn quotient_spanning() -> Outcome {
    let mut bad = Vec::new();
    let mut checked = 0;
    for b in bundles() {
        let ss = specs(&b);
        for side in [Side::Right, Side::Left] {
            for d in 1..=5 {
                let mut dims = Vec::new();
                for s in &ss {
                    let q = quotient_at(&b, s, side, d);
                    dims.push(q.dimension());
                    let w = suite::class_witnesses_at(&b, &q);
                    if !w.is_empty() {
                        bad.push(format!("{} {} d={d}: {}", b.name, side.name(), w[0].label));
                    }
                    checked += 1;
                }
                if dims.iter().any(|&x| x != 2 * d as usize + 1) {
                    bad.push(format!("{} {} d={d}: dims {dims:?}", b.name, side.name()));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{checked} quotients, d = 1..5, {SPECS} specializations, failures {bad:?}"))
}

fn coideals() -> Outcome {
    let mut bad = Vec::new();
    let mut counts = Vec::new();
    for b in bundles() {
        let ss = specs(&b);
        let mut n = 0;
        for side in [Side::Right, Side::Left] {
            n += b.ideal(side).generators.len();
            for s in &ss {
                let ideal = b.ideal(side).map_coeffs(|c| c.evaluate(&s.spec)).unwrap();
                let q = quotient_at(&b, s, side, 3);
                let w = quotient::coideal_witnesses(&q, &ideal).unwrap();
                if !w.is_empty() {
                    bad.push(format!("{} {}: {}", b.name, side.name(), w[0].label));
                }
            }
        }
        counts.push(n);
    }
    outcome(
        bad.is_empty() && counts == [6, 4],
        format!("generators per model {counts:?} (expected [6, 4]), failures {bad:?}"),
    )
}

fn action_formulas() -> Outcome {
    let b = models::load_model("eq2-hyperboloid").unwrap();
    let results = suite::eq2_action_outcome(&b, 4, 3, SLACK).unwrap();
    let failed: Vec<_> = results.iter().filter(|r| !r.matches).collect();
    let mut detail = format!("{} of {} instances match exactly in q", results.len() - failed.len(), results.len());
    if let Some(r) = failed.first() {
        detail += &format!("; first mismatch {} computed {}", r.instance.label, r.computed);
    }
    outcome(failed.is_empty() && results.len() == 2 * 9 * 7 + 2 * 2 * 9, detail)
}

fn coinvariants() -> Outcome {
    let mut bad = Vec::new();
    for b in bundles() {
        for s in specs(&b) {
            for (side, i) in [(Side::Right, &s.i_left), (Side::Left, &s.i_right)] {
                let q = quotient_at(&b, &s, side, 4);
                let w = suite::coinvariant_comparison(&q, i, 4).unwrap();
                if !w.is_empty() {
                    bad.push(format!("{} {}: {}", b.name, side.name(), w[0].label));
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("degree 4, both sides of both models, {SPECS} specializations, failures {bad:?}"))
}

fn twisted_degree(h: &Presentation<BigRational>, basis: &[qhopf::tensoralg::Tensor<BigRational>]) -> u32 {
    let mut d = 0;
    for t in basis {
        for y in galois::antipode_twist(h, t).unwrap().values() {
            d = d.max(h.degree(y));
        }
    }
    d
}

fn lemma() -> Outcome {
    let mut failures = 0;
    let mut elements = 0;
    for b in bundles() {
        for s in specs(&b) {
            let cl = quotient_at(&b, &s, Side::Left, 3);
            let basis = quotient::cotensor(&cl, 3).unwrap();
            elements += basis.len();
            let n = twisted_degree(&s.h, &basis).max(3);
            let wide = quotient_at(&b, &s, Side::Left, n);
            failures += galois::check_welldefined_lemma(&wide, &basis).unwrap().len();
        }
    }
    outcome(failures == 0, format!("{elements} cotensor basis elements at degree 3, {failures} failures"))
}

fn galois_round_trips() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut counts = (0, 0, 0);
    for b in bundles() {
        for s in specs(&b) {
            let cl = quotient_at(&b, &s, Side::Left, 3);
            let basis = quotient::cotensor(&cl, 3).unwrap();
            let cl5 = quotient_at(&b, &s, Side::Left, 5);
            let dual = galois::check_dual_bijectivity(&cl5, &s.i_right, &basis, 3, 2, 1).unwrap();
            counts.0 += dual.pairs_checked;
            counts.1 += dual.cotensor_checked;
            if let Some(w) = dual.witnesses.first() {
                bad.push(format!("{} dual: {}", b.name, w.label));
            }
            let cr = quotient_at(&b, &s, Side::Right, 3);
            let direct = galois::check_direct_bijectivity(&cr, &s.i_left, 3, 2, 4).unwrap();
            counts.2 += direct.targets;
            if let Some(w) = direct.witnesses.first() {
                bad.push(format!("{} direct: {}", b.name, w.label));
            }
        }
    }
    let t = start.elapsed();
    outcome(
        bad.is_empty() && t < Duration::from_secs(300),
        format!(
            "{} H⊗M pairs, {} cotensor elements, {} surjectivity targets, failures {bad:?}, {t:.2?} (< 300 s)",
            counts.0, counts.1, counts.2
        ),
    )
}

fn isomorphisms() -> Outcome {
    let mut bad = Vec::new();
    for b in bundles() {
        for s in specs(&b) {
            let cr = quotient_at(&b, &s, Side::Right, 6);
            let cl = quotient_at(&b, &s, Side::Left, 6);
            if let Some(w) = models::coalgebra_iso_witnesses(&b, &cr, &cl, 6).unwrap().first() {
                bad.push(format!("{}: {}", b.name, w.label));
            }
        }
    }
    outcome(bad.is_empty(), format!("classes with n ≤ 6, {SPECS} specializations, failures {bad:?}"))
}

fn characters() -> Outcome {
    // q·√(μν), −√(μν), 0 on x, y, z; 1 on z±.
    let st = Laurent::param(Param::S) * Laurent::param(Param::T);
    let mut bad = Vec::new();
    for b in bundles() {
        let m = &b.fibre;
        let stated: Vec<Laurent> = match b.kind {
            models::ModelKind::Su2Sphere => m
                .generators()
                .iter()
                .map(|g| match g.name.as_str() {
                    "x" => Laurent::q() * st.clone(),
                    "y" => -st.clone(),
                    _ => Laurent::zero(),
                })
                .collect(),
            models::ModelKind::Eq2Hyperboloid => vec![Laurent::one(); m.num_generators()],
        };
        for side in [Side::Left, Side::Right] {
            let k = Character::from_embedding(b.embedding(side)).unwrap();
            if k.values != stated {
                bad.push(format!("{} {}: {:?}", b.name, side.name(), k.values.iter().map(|v| v.to_string()).collect::<Vec<_>>()));
            }
            if !galois::character_witnesses(m, &k).is_empty() {
                bad.push(format!("{} {}: not a star-character", b.name, side.name()));
            }
        }
    }
    outcome(bad.is_empty(), format!("κ = ε∘i on both embeddings of both models, failures {bad:?}"))
}

fn determinism() -> Outcome {
    let mut differing = Vec::new();
    let mut sizes = Vec::new();
    for name in MODEL_NAMES {
        let config = SuiteConfig::new(name, Suite::All, 3);
        let a = emit_report(&run_suite(&config).unwrap(), ReportFormat::Json);
        let b = emit_report(&run_suite(&config).unwrap(), ReportFormat::Json);
        sizes.push(a.len());
        if a != b {
            differing.push(name);
        }
    }
    outcome(differing.is_empty(), format!("full suite twice per model, JSON sizes {sizes:?} bytes, differing {differing:?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("confluence of the four presentations", confluence),
        ("Hopf axioms at degree 3", hopf_axioms),
        ("embeddings: relations, star, intertwining", embeddings),
        ("quotient dimension 2d+1 with classes {1, a^n, b^n}", quotient_spanning),
        ("coideal generators", coideals),
        ("E_q(2) action formulas", action_formulas),
        ("coinvariants equal i(M) at degree 4", coinvariants),
        ("well-definedness lemma", lemma),
        ("Galois round trips and direct bijectivity", galois_round_trips),
        ("coalgebra isomorphisms at n ≤ 6", isomorphisms),
        ("characters κ = ε∘i", characters),
        ("determinism of machine-readable reports", determinism),
    ];
    let mut failed = Vec::new();
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{status} criterion {:2}: {name} -- {} [{:.1?}]", n + 1, o.detail, start.elapsed());
        if !o.pass {
            failed.push(n + 1);
        }
    }
    println!("failing criteria {failed:?}, known conflicts {KNOWN_CONFLICTS:?}");
    if failed != KNOWN_CONFLICTS {
        std::process::exit(1);
    }
}
