//! Exact arithmetic in ℤ[y^{±1}, z^{±1}][e^{±λ}] and its localization at
//! factored denominators.

mod poly;
mod rational;

pub use poly::{fmt_poly, LaurentPoly, Monomial};
pub use rational::{render, RationalFn, Substitution, Target};

use crate::int::Int;
use crate::weyl::{Elem, RootSystem, Weight, WeylGroup, MAX_RANK};
use std::collections::BTreeMap;

/// e^λ ↦ e^{wλ}.
pub fn weyl_twist(g: &WeylGroup, w: Elem, f: &RationalFn) -> RationalFn {
    if w == g.identity() {
        return f.clone();
    }
    f.map_weights(|l| g.act(w, l))
}

pub fn weyl_twist_poly(g: &WeylGroup, w: Elem, f: &LaurentPoly) -> LaurentPoly {
    f.map_weights(|l| g.act(w, l))
}

/// Coefficients in y-degree and x_i = e^{-α_i} exponents.
pub type RootCoordTable = BTreeMap<(i32, Vec<u32>), Int>;

/// Monomials whose weight is not a non-positive integer combination of simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotInCone {
    pub offending: Vec<Monomial>,
}

/// Rewrite in the variables x_i = e^{-α_i}.
pub fn to_root_coordinates(rs: &RootSystem, f: &LaurentPoly) -> Result<RootCoordTable, NotInCone> {
    let mut table = RootCoordTable::new();
    let mut bad = Vec::new();
    for (m, c) in f.terms() {
        match rs.simple_coords(&m.e) {
            Some(sc) if m.z == 0 && sc[..rs.rank].iter().all(|&k| k <= 0) => {
                let key: Vec<u32> = sc[..rs.rank].iter().map(|&k| (-k) as u32).collect();
                table.insert((m.y, key), c.clone());
            }
            _ => bad.push(*m),
        }
    }
    if bad.is_empty() {
        Ok(table)
    } else {
        Err(NotInCone { offending: bad })
    }
}

pub fn weight(v: &[i32]) -> Weight {
    let mut w = [0; MAX_RANK];
    w[..v.len()].copy_from_slice(v);
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::LieType;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn mono(e: [i32; 3], y: i32, z: i32) -> Monomial {
        Monomial::new(weight(&e), y, z)
    }

    fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(((-2i32..3, -2i32..3, -1i32..2), -1i32..3, -1i32..2, -5i64..6), 0..20).prop_map(|ts| {
            LaurentPoly::from_terms(
                ts.into_iter().map(|((a, b, c), y, z, k)| (mono([a, b, c], y, z), Int::from(k))).collect(),
            )
        })
    }

    fn alpha() -> Weight {
        weight(&[2])
    }

    #[test]
    fn basic_examples() {
        let one_minus = LaurentPoly::one_minus_e(alpha());
        assert!(one_minus.add(&LaurentPoly::e(alpha())).is_one());
        let r = RationalFn::new(one_minus.clone(), &[one_minus.clone()]).unwrap();
        assert_eq!(r, RationalFn::one());
        assert!(r.is_polynomial());
        let two = weight(&[4]);
        let r = RationalFn::new(LaurentPoly::one_minus_e(two), &[one_minus.clone()]).unwrap();
        assert_eq!(r.as_poly().unwrap(), &LaurentPoly::one().add(&LaurentPoly::e(alpha())));
    }

    #[test]
    fn division_examples() {
        let ye = LaurentPoly::one_plus_ye(alpha());
        let a = LaurentPoly::one().add(&LaurentPoly::y()).mul(&ye);
        assert_eq!(a.exact_divide(&ye).unwrap(), LaurentPoly::one().add(&LaurentPoly::y()));
        assert!(ye.exact_divide(&LaurentPoly::one_minus_e(alpha())).is_none());
        assert!(LaurentPoly::zero().exact_divide(&ye).unwrap().is_zero());
        // three-term divisor goes through the general path
        let t = LaurentPoly::from_terms(vec![
            (Monomial::ONE, Int::from(1)),
            (mono([1, 0, 0], 0, 0), Int::from(1)),
            (mono([0, 0, 0], 1, 0), Int::from(2)),
        ]);
        let p = t.mul(&t).mul(&ye);
        assert_eq!(p.exact_divide(&t).unwrap(), t.mul(&ye));
        assert!(p.exact_divide(&t.add(&LaurentPoly::one())).is_none());
        // a non-primitive binomial
        let b = LaurentPoly::binomial(2, 3, mono([1, 0, 0], 0, 0));
        assert_eq!(b.mul(&ye).exact_divide(&b).unwrap(), ye);
        assert!(ye.exact_divide(&b).is_none());
    }

    #[test]
    fn dual_examples() {
        let f = LaurentPoly::e(alpha()).add(&LaurentPoly::y());
        let g = LaurentPoly::e(weight(&[-2])).add(&LaurentPoly::y_pow(-1));
        assert_eq!(f.dual(), g);
        let h = RationalFn::new(f.clone(), &[LaurentPoly::one_plus_ye(weight(&[-2]))]).unwrap();
        assert_eq!(h.dual().dual(), h);
        assert_eq!(
            LaurentPoly::one_plus_ye(weight(&[-2])).dual(),
            LaurentPoly::one().add(&LaurentPoly::term(Monomial::new(alpha(), -1, 0), 1))
        );
    }

    #[test]
    fn twist_examples() {
        let rs = Arc::new(RootSystem::new(LieType::A, 2).unwrap());
        let g = WeylGroup::new(rs.clone()).unwrap();
        let a1 = Arc::new(RootSystem::new(LieType::A, 1).unwrap());
        let g1 = WeylGroup::new(a1).unwrap();
        let f = RationalFn::from(LaurentPoly::e(alpha()));
        assert_eq!(weyl_twist(&g1, g1.simple(0), &f), RationalFn::from(LaurentPoly::e(weight(&[-2]))));
        let neg_prod = LaurentPoly::product(
            rs.positive_roots.iter().map(|r| LaurentPoly::one_plus_ye(crate::weyl::neg_weight(&r.weight))).collect::<Vec<_>>().iter(),
        );
        let pos_prod = LaurentPoly::product(
            rs.positive_roots.iter().map(|r| LaurentPoly::one_plus_ye(r.weight)).collect::<Vec<_>>().iter(),
        );
        assert_eq!(weyl_twist_poly(&g, g.longest(), &neg_prod), pos_prod);
        let h = RationalFn::new(LaurentPoly::e(weight(&[1, 0])).add(&LaurentPoly::y()), &[LaurentPoly::one_minus_e(weight(&[2, -1]))]).unwrap();
        for u in g.elements() {
            for v in g.elements() {
                assert_eq!(weyl_twist(&g, u, &weyl_twist(&g, v, &h)), weyl_twist(&g, g.mul(u, v), &h));
            }
            // twist commutes with the duality
            assert_eq!(weyl_twist(&g, u, &h.dual()), weyl_twist(&g, u, &h).dual());
        }
    }

    #[test]
    fn substitution_examples() {
        let ye = LaurentPoly::one_plus_ye(weight(&[-2]));
        let s = Substitution::non_equivariant();
        assert_eq!(s.apply(&ye.clone().into()).unwrap(), RationalFn::from(LaurentPoly::one().add(&LaurentPoly::y())));
        let om = LaurentPoly::one_minus_e(alpha());
        let r = RationalFn::new(om.mul(&LaurentPoly::one().add(&LaurentPoly::y())), &[om.clone()]).unwrap();
        assert_eq!(s.apply(&r).unwrap(), RationalFn::from(LaurentPoly::one().add(&LaurentPoly::y())));
        let pole = RationalFn::new(LaurentPoly::one(), &[om.clone()]).unwrap();
        assert!(matches!(s.apply(&pole), Err(crate::Error::Pole(_))));
        let q = Substitution::y_to_minus_inverse_q();
        let got = q.apply(&LaurentPoly::one_plus_ye(alpha()).into()).unwrap();
        let want = LaurentPoly::one().sub(&LaurentPoly::term(Monomial::new(alpha(), 0, -2), 1));
        assert_eq!(got, RationalFn::from(want));
        // y -> 1/2 on 1 + y^{-1} + y^2
        let p = LaurentPoly::one().add(&LaurentPoly::y_pow(-1)).add(&LaurentPoly::y_pow(2));
        let v = Substitution::y_to(Target::number(&rational::big_rational(1, 2))).apply(&p.into()).unwrap();
        assert_eq!(v.as_rational_number().unwrap(), rational::big_rational(13, 4));
        let zero = Substitution::y_to(Target::integer(0));
        assert!(zero.apply(&LaurentPoly::y_pow(-1).into()).is_err());
    }

    #[test]
    fn root_coordinate_examples() {
        let rs = RootSystem::new(LieType::A, 2).unwrap();
        let x1 = LaurentPoly::e(crate::weyl::neg_weight(&rs.simple_root(0)));
        let t = to_root_coordinates(&rs, &x1).unwrap();
        assert_eq!(t.get(&(0, vec![1, 0])), Some(&Int::ONE));
        let c = LaurentPoly::one().add(&LaurentPoly::y().scale(&Int::from(2)));
        let t = to_root_coordinates(&rs, &c).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t[&(1, vec![0, 0])], Int::from(2));
        assert!(to_root_coordinates(&rs, &LaurentPoly::e(weight(&[1, 0]))).is_err());
        assert_eq!(rs.simple_coords_rational(&weight(&[1, 0])), (vec![2, 1], 3));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert!(a.sub(&a).is_zero());
            prop_assert!(a.terms().iter().all(|t| !t.1.is_zero()));
        }

        #[test]
        fn exact_division_roundtrip(a in poly_strategy(), b in poly_strategy()) {
            prop_assume!(!b.is_zero());
            let p = a.mul(&b);
            prop_assert_eq!(p.exact_divide(&b), Some(a.clone()));
        }

        #[test]
        fn division_rejects_remainders(a in poly_strategy(), b in poly_strategy()) {
            prop_assume!(!b.is_zero());
            if let Some(q) = a.exact_divide(&b) {
                prop_assert_eq!(q.mul(&b), a);
            }
        }

        #[test]
        fn dual_is_involution(a in poly_strategy()) {
            prop_assert_eq!(a.dual().dual(), a.clone());
            prop_assert_eq!(a.dual(), a.invert_weights().bar_y().map_monomials(|m| Monomial::new(m.e, m.y, -m.z)));
        }

        #[test]
        fn rational_equality_agrees(a in poly_strategy(), b in poly_strategy(), k in 0usize..3) {
            prop_assume!(!b.is_zero());
            let facs = [LaurentPoly::one_minus_e(weight(&[1, -1])), LaurentPoly::one_plus_ye(weight(&[0, 2])), LaurentPoly::one_minus_e(weight(&[0, 0, 1]))];
            let f = RationalFn::new(a.clone(), &facs[..k]).unwrap();
            let g = RationalFn::new(a.mul(&b), &facs[..k]).unwrap().div(&RationalFn::from(b.clone())).unwrap();
            prop_assert!(f.equals(&g));
            // sum and difference through different denominators
            let h = RationalFn::new(b.clone(), &facs[k..]).unwrap();
            let s = f.add(&h).sub(&h);
            prop_assert!(s.equals(&f));
            prop_assert_eq!(s.num().len() > 0, !f.is_zero());
            let m = f.mul(&h).div(&h).unwrap();
            prop_assert!(m.equals(&f));
        }
    }
}
