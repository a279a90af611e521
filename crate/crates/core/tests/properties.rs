mod common;

use germinv::doublepoint::{double_point_curve, is_finitely_determined};
use germinv::exactpoly::{gcd_poly, parse_poly, rat, resultant, squarefree_part, MPoly};
use germinv::germ::MapGerm;
use germinv::localalg::{intersection_multiplicity, milnor_number, ColengthResult};
use proptest::prelude::*;

fn terms(nv: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = common::Terms> {
    prop::collection::vec((-9i64..=9, prop::collection::vec(0..=max_exp, nv)), 1..=max_terms)
}

fn xy() -> germinv::exactpoly::VarSet {
    common::vars(&["x", "y"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in terms(3, 5, 4), b in terms(3, 5, 4), c in terms(3, 5, 4)) {
        let vs = common::vars(&["x", "y", "z"]);
        let r = common::ring_axioms(&common::poly(&vs, &a), &common::poly(&vs, &b), &common::poly(&vs, &c));
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn divided_difference(a in terms(2, 6, 7)) {
        let r = common::divided_difference_identity(&common::poly(&xy(), &a));
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn resultant_vanishes_iff_common_factor(a in terms(2, 3, 3), b in terms(2, 3, 3), h in terms(2, 2, 2), share in any::<bool>()) {
        let vs = xy();
        let (mut p, mut q) = (common::poly(&vs, &a), common::poly(&vs, &b));
        if share {
            let h = common::poly(&vs, &h);
            p = &p * &h;
            q = &q * &h;
        }
        let r = common::resultant_gcd_duality(&p, &q);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn resultant_is_antisymmetric_up_to_sign(a in terms(2, 3, 3), b in terms(2, 3, 3)) {
        let vs = xy();
        let (p, q) = (common::poly(&vs, &a), common::poly(&vs, &b));
        prop_assume!(!p.is_zero() && !q.is_zero());
        let r1 = resultant(&p, &q, "y").unwrap();
        let r2 = resultant(&q, &p, "y").unwrap();
        prop_assert!(r1 == r2 || r1 == -&r2);
    }

    #[test]
    fn gcd_divides_both(a in terms(2, 4, 3), b in terms(2, 4, 3), h in terms(2, 2, 2)) {
        let vs = xy();
        let h = common::poly(&vs, &h);
        prop_assume!(!h.is_zero());
        let p = &common::poly(&vs, &a) * &h;
        let q = &common::poly(&vs, &b) * &h;
        prop_assume!(!p.is_zero() && !q.is_zero());
        let g = gcd_poly(&p, &q);
        prop_assert!(p.div_exact(&g).is_ok() && q.div_exact(&g).is_ok());
        prop_assert!(g.div_exact(&h.monic()).is_ok(), "gcd {} misses {}", g, h);
    }

    #[test]
    fn squarefree_part_drops_repeats(a in terms(2, 3, 3)) {
        let p = common::poly(&xy(), &a);
        prop_assume!(!p.is_constant());
        let sq = squarefree_part(&(&p * &p)).unwrap();
        prop_assert!(sq.is_associate(&squarefree_part(&p).unwrap()));
    }

    #[test]
    fn staircase_colength(
        nv in 2usize..=3,
        pure in prop::collection::vec(1u32..=6, 3),
        extra in prop::collection::vec(prop::collection::vec(0u32..=6, 3), 0..=3),
    ) {
        let mut gens: Vec<Vec<u32>> = (0..nv).map(|i| {
            let mut g = vec![0; nv];
            g[i] = pure[i];
            g
        }).collect();
        gens.extend(extra.into_iter().map(|e| e[..nv].to_vec()));
        let r = common::staircase_check(&gens, nv);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn milnor_number_of_brieskorn_curves(p in 2u32..=7, q in 2u32..=7) {
        let f = parse_poly(&format!("x^{p} + y^{q}"), &["x", "y"]).unwrap();
        prop_assert_eq!(milnor_number(&f, 64).unwrap(), ColengthResult::Finite(((p - 1) * (q - 1)) as u64));
    }

    #[test]
    fn intersection_of_transverse_monomial_curves(p in 1u32..=6, q in 1u32..=6, c in 2i64..=5) {
        let vs = xy();
        let f = parse_poly(&format!("y^{p} - x^{q}"), &["x", "y"]).unwrap();
        let g = &common::poly(&vs, &vec![(1, vec![0, 1])]) - &common::poly(&vs, &vec![(c, vec![1, 0])]);
        let want = p.min(q) as u64;
        prop_assert_eq!(intersection_multiplicity(&f, &g, 64).unwrap(), ColengthResult::Finite(want));
    }

    #[test]
    fn double_point_curve_of_fd_cusp_family(k in 1i64..=6) {
        let f = MapGerm::parse(["x", "y"], ["x", "y^2", &format!("y^3 - {k}*x^2*y")]).unwrap();
        let lam = double_point_curve(&f).unwrap();
        let want = parse_poly(&format!("y^2 - {k}*x^2"), &["x", "y"]).unwrap();
        prop_assert!(lam.poly.is_associate(&want));
        prop_assert!(is_finitely_determined(&f, 64).unwrap().is_fd());
    }
}

#[test]
fn scaling_preserves_associates() {
    let p = parse_poly("x*y^2 - x^5", &["x", "y"]).unwrap();
    let q: MPoly = p.scale(&rat(-7));
    assert!(p.is_associate(&q));
}
