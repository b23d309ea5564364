use kflag::heckeops::Variant;
use kflag::int::Int;
use kflag::json;
use kflag::kclass::LocalizedClass;
use kflag::ring::{weight, LaurentPoly, Monomial, RationalFn};
use kflag::weyl::{Flag, LieType};
use proptest::prelude::*;
use std::sync::{Arc, OnceLock};

const SYSTEMS: [(LieType, usize); 6] = [(LieType::A, 2), (LieType::B, 2), (LieType::G, 2), (LieType::A, 3), (LieType::B, 3), (LieType::C, 3)];

fn flag(k: usize) -> Arc<Flag> {
    static FLAGS: OnceLock<Vec<Arc<Flag>>> = OnceLock::new();
    FLAGS.get_or_init(|| SYSTEMS.iter().map(|&(t, n)| Flag::new(t, n).unwrap()).collect())[k].clone()
}

/// Small polynomials in e^λ (rank 2 weights), y and z.
fn poly2() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-2i32..3, -2i32..3, -1i32..3, -1i32..2, -4i64..5), 0..6).prop_map(|ts| {
        LaurentPoly::from_terms(ts.into_iter().map(|(a, b, y, z, k)| (Monomial::new(weight(&[a, b]), y, z), Int::from(k))).collect())
    })
}

/// Rational functions with denominators drawn from the A2 root factors.
fn rational2() -> impl Strategy<Value = RationalFn> {
    let roots = [[2, -1], [-1, 2], [1, 1], [-2, 1], [1, -2], [-1, -1]];
    (poly2(), prop::collection::vec((0usize..6, any::<bool>()), 0..3)).prop_map(move |(num, dens)| {
        let fs: Vec<LaurentPoly> = dens
            .into_iter()
            .map(|(k, plus_y)| if plus_y { LaurentPoly::one_plus_ye(weight(&roots[k])) } else { LaurentPoly::one_minus_e(weight(&roots[k])) })
            .collect();
        RationalFn::new(num, &fs).unwrap()
    })
}

fn word(max_gen: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..max_gen, 0..14)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn words_reduce_to_group_elements(k in 0usize..SYSTEMS.len(), raw in word(3)) {
        let fv = flag(k);
        let g = &fv.w;
        let wd: Vec<usize> = raw.into_iter().filter(|&i| i < g.rank()).collect();
        let w = g.from_word(&wd).unwrap();
        // length is the number of inversions
        let inv = (0..fv.rs.num_positive_roots()).filter(|&r| !g.act_root(w, r).positive).count();
        prop_assert_eq!(g.length(w), inv);
        prop_assert!(g.length(w) <= wd.len());
        prop_assert_eq!(g.length(w) % 2, wd.len() % 2);
        prop_assert_eq!(g.is_reduced(&wd), g.length(w) == wd.len());
        // the action is the composite of simple reflections
        let lambda = weight(&(1..=g.rank() as i32).collect::<Vec<_>>());
        let mut v = lambda.clone();
        for &i in wd.iter().rev() {
            v = fv.rs.reflect(i, &v);
        }
        prop_assert_eq!(g.act(w, &lambda), v);
        // the stored word is reduced and names the same element
        let canon: Vec<usize> = g.word(w).iter().map(|&i| i as usize).collect();
        prop_assert!(g.is_reduced(&canon));
        prop_assert_eq!(g.from_word(&canon).unwrap(), w);
        if g.is_reduced(&wd) {
            prop_assert!(canon <= wd, "stored word is not lex-least");
        }
        prop_assert_eq!(g.mul(w, g.inverse(w)), g.identity());
    }

    #[test]
    fn elements_are_determined_by_their_action(k in 0usize..SYSTEMS.len(), a in word(3), b in word(3)) {
        let fv = flag(k);
        let g = &fv.w;
        let keep = |v: Vec<usize>| -> Vec<usize> { v.into_iter().filter(|&i| i < g.rank()).collect() };
        let (u, w) = (g.from_word(&keep(a)).unwrap(), g.from_word(&keep(b)).unwrap());
        prop_assert_eq!(u == w, g.action_matrix(u) == g.action_matrix(w));
        prop_assert_eq!(g.bruhat_leq(u, w) && g.bruhat_leq(w, u), u == w);
    }

    #[test]
    fn rational_field_laws(a in rational2(), b in rational2(), c in rational2()) {
        prop_assert!(a.add(&b).equals(&b.add(&a)));
        prop_assert!(a.mul(&b).equals(&b.mul(&a)));
        prop_assert!(a.mul(&b.add(&c)).equals(&a.mul(&b).add(&a.mul(&c))));
        prop_assert!(a.add(&b).sub(&b).equals(&a));
        prop_assert!(a.sub(&a).is_zero());
        if !b.is_zero() {
            prop_assert!(a.mul(&b).div(&b).unwrap().equals(&a));
        }
        prop_assert!(a.dual().dual().equals(&a));
        prop_assert!(a.mul(&b).dual().equals(&a.dual().mul(&b.dual())));
    }

    #[test]
    fn normal_form_equality_agrees_with_cross_multiplication(a in rational2(), b in rational2()) {
        let cross = a.num().mul(&b.den_expanded()) == b.num().mul(&a.den_expanded());
        prop_assert_eq!(a.equals(&b), cross);
        prop_assert_eq!(a.equals(&b), a.sub(&b).is_zero());
    }

    #[test]
    fn rational_json_roundtrip(a in rational2()) {
        let back = json::rational_from_json(&json::rational_to_json(&a, 2), 2).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn operators_are_linear_and_adjoint(
        k in 0usize..3,
        cf in prop::collection::vec(poly2(), 12),
        cg in prop::collection::vec(poly2(), 12),
        s in poly2(),
        i in 0usize..2,
    ) {
        let fv = flag(k);
        let n = fv.w.size();
        // genuine classes: polynomial combinations of Schubert classes
        let combo = |c: &[LaurentPoly]| -> LocalizedClass {
            let mut acc = LocalizedClass::zero(n, "f");
            for w in fv.w.elements() {
                acc = acc.add(&fv.schubert_class(w).scale_poly(&c[w.idx() % c.len()]));
            }
            acc
        };
        let (f, g) = (combo(&cf), combo(&cg));
        for v in [Variant::Demazure, Variant::T, Variant::TDual] {
            let lhs = fv.apply_op(v, i, &f.scale_poly(&s).add(&g));
            let rhs = fv.apply_op(v, i, &f).scale_poly(&s).add(&fv.apply_op(v, i, &g));
            for w in fv.w.elements() {
                prop_assert!(lhs.get(w).equals(rhs.get(w)), "{:?} not linear at {}", v, fv.w.word_string(w));
            }
        }
        let a = fv.pairing(&fv.op_t(i, &f), &g, false).unwrap();
        let b = fv.pairing(&f, &fv.op_t_dual(i, &g), false).unwrap();
        prop_assert!(a.equals(&b));
        prop_assert!(fv.gkm_check(&fv.op_t(i, &f)).is_ok());
    }

    #[test]
    fn class_json_roundtrip(k in 0usize..3, cf in prop::collection::vec(rational2(), 12)) {
        let fv = flag(k);
        let c = LocalizedClass::new((0..fv.w.size()).map(|j| cf[j % cf.len()].clone()).collect(), "random");
        let back = json::class_from_json(&fv, &json::class_to_json(&fv, &c)).unwrap();
        prop_assert_eq!(back, c);
    }
}
