use std::sync::Arc;

use qhopf::freealg::Element;
use qhopf::models::{self, circle_class};
use qhopf::quotient::{ModuleAction, QuotientCoalgebra, Side};
use qhopf::ring::Ring;
use qhopf::scalars::{RatFunc, Specialization, SymbolicQ};
use qhopf::suite::eq2_action_outcome;

fn qpow(e: i64) -> RatFunc {
    RatFunc::q().pow_i(e).unwrap()
}

#[test]
fn right_formulas_and_v_powers_hold_exactly() {
    let b = models::load_model("eq2-hyperboloid").unwrap();
    let results = eq2_action_outcome(&b, 4, 3, 2).unwrap();
    for r in &results {
        let is_left_n = r.instance.side == Side::Left && r.instance.label.starts_with("ρ_L(n");
        if !is_left_n {
            assert!(r.matches, "{} computed {}", r.instance.label, r.computed);
        } else if r.instance.p == 0 {
            assert!(r.matches, "{}", r.instance.label);
        } else {
            assert!(!r.matches, "{}", r.instance.label);
        }
    }
}

// n± v^p = q^{-2p} v^p n± from v n± = q² n± v, and v^p n± ≡ q^{∓1}(v^{p±1} − v^p)
// modulo the left ideal generated by v^{±1} − q^{±1} n± − 1.
#[test]
fn left_action_of_n_is_q_to_minus_2p_mp_1() {
    let b = models::load_model("eq2-hyperboloid").unwrap();
    let symbolic = SymbolicQ { rest: Specialization::new() };
    let h = Arc::new(b.total.specialize(&symbolic).unwrap());
    let ideal = b.left_ideal.map_coeffs(|c| c.evaluate(&symbolic)).unwrap();
    let d = 6;
    let cl = QuotientCoalgebra::build(h.clone(), &ideal, d, d + 2, &b.expected_classes(d)).unwrap();
    let rho = ModuleAction::new(&cl);
    for p in -4i64..=4 {
        for (name, sign) in [("np", 1i64), ("nm", -1i64)] {
            let got = rho.act(&circle_class(&h, p), &h.gen(name)).unwrap();
            let c = qpow(-2 * p - sign);
            let mut want: Element<RatFunc> = Element::zero();
            want.add_scaled(&circle_class(&h, p + sign), &c);
            want.add_scaled(&circle_class(&h, p), &-c);
            assert_eq!(got, want, "n{sign} on c_{p}");
        }
    }
}
