use std::path::Path;

use qhopf::freealg::{parse_presentation, render_presentation};
use qhopf::models::presentations;
use qhopf::tensoralg::check_hopf_axioms;

fn shipped(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("models").join(name);
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn shipped_files_round_trip_through_the_parser() {
    for name in ["su2.pres", "sphere.pres", "eq2.pres", "hyperboloid.pres"] {
        let parsed = parse_presentation(&shipped(name)).unwrap();
        assert!(parsed.is_confluent(), "{name}");
        let text = render_presentation(&parsed.presentation);
        let again = parse_presentation(&text).unwrap();
        assert_eq!(again.presentation, parsed.presentation, "{name}");
        assert_eq!(render_presentation(&again.presentation), text, "{name}");
    }
}

#[test]
fn builtins_match_the_shipped_files() {
    let pairs = [
        ("su2.pres", presentations::su2()),
        ("sphere.pres", presentations::sphere()),
        ("eq2.pres", presentations::eq2()),
        ("hyperboloid.pres", presentations::hyperboloid()),
    ];
    for (name, builtin) in pairs {
        assert_eq!(parse_presentation(&shipped(name)).unwrap().presentation, builtin, "{name}");
    }
}

// Normal words per exact degree n: β^a γ^b α^c δ^d with cd = 0 gives
// (n+1)², likewise v^{±k} n₋^a n₊^b; z^a x^b or z^a y^c gives 2n+1;
// z₋^a z₊^b gives n+1.
#[test]
fn normal_word_counts_match_the_pbw_bases() {
    for n in 0..=5u32 {
        let n_ = n as usize;
        assert_eq!(presentations::su2().irreducible_words_of_degree(n).len(), (n_ + 1).pow(2));
        assert_eq!(presentations::eq2().irreducible_words_of_degree(n).len(), (n_ + 1).pow(2));
        assert_eq!(presentations::sphere().irreducible_words_of_degree(n).len(), 2 * n_ + 1);
        assert_eq!(presentations::hyperboloid().irreducible_words_of_degree(n).len(), n_ + 1);
    }
}

#[test]
fn commuting_beta_delta_breaks_the_coproduct() {
    let literal = presentations::SU2.replace("beta*delta = q*delta*beta", "beta*delta = delta*beta");
    assert_ne!(literal, presentations::SU2);
    let parsed = parse_presentation(&literal).unwrap();
    let reports = check_hopf_axioms(&parsed.presentation, 2);
    let well_defined = reports.iter().find(|r| r.id.ends_with(".hopf.well_defined")).unwrap();
    assert!(!well_defined.passed());
    assert!(!well_defined.witnesses.is_empty());

    let corrected = check_hopf_axioms(&presentations::su2(), 2);
    assert!(corrected.iter().all(|r| r.passed()));
}

#[test]
fn star_is_compatible_with_the_relations() {
    for h in [presentations::su2(), presentations::sphere(), presentations::eq2(), presentations::hyperboloid()] {
        for r in h.rules() {
            let lhs = h.star(&qhopf::freealg::Element::word(r.lhs.clone())).unwrap();
            assert_eq!(lhs, h.star(&r.rhs).unwrap(), "{}", h.name());
        }
    }
}
