//! Classes in localized equivariant K-theory of G/B, stored by their
//! restrictions to the torus fixed points.

use crate::error::{Error, Result};
use crate::int::Int;
use crate::ring::{LaurentPoly, Monomial, RationalFn, Substitution};
use crate::weyl::{neg_weight, Elem, Flag, Weight};
use std::sync::Arc;

/// Values at the fixed points, indexed like the Weyl group.
#[derive(Clone, Debug)]
pub struct LocalizedClass {
    pub values: Vec<RationalFn>,
    pub tag: String,
}

impl PartialEq for LocalizedClass {
    fn eq(&self, o: &LocalizedClass) -> bool {
        self.values.len() == o.values.len() && self.values.iter().zip(&o.values).all(|(a, b)| a == b)
    }
}

impl LocalizedClass {
    pub fn new(values: Vec<RationalFn>, tag: impl Into<String>) -> LocalizedClass {
        LocalizedClass { values, tag: tag.into() }
    }

    pub fn zero(n: usize, tag: impl Into<String>) -> LocalizedClass {
        LocalizedClass::new(vec![RationalFn::zero(); n], tag)
    }

    pub fn constant(n: usize, c: RationalFn) -> LocalizedClass {
        LocalizedClass::new(vec![c; n], "const")
    }

    pub fn get(&self, w: Elem) -> &RationalFn {
        &self.values[w.idx()]
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> LocalizedClass {
        self.tag = tag.into();
        self
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn support(&self) -> Vec<Elem> {
        (0..self.values.len()).filter(|&k| !self.values[k].is_zero()).map(|k| Elem(k as u32)).collect()
    }

    pub fn map(&self, f: impl Fn(&RationalFn) -> RationalFn) -> LocalizedClass {
        LocalizedClass::new(self.values.iter().map(f).collect(), self.tag.clone())
    }

    pub fn try_map(&self, f: impl Fn(&RationalFn) -> Result<RationalFn>) -> Result<LocalizedClass> {
        Ok(LocalizedClass::new(self.values.iter().map(f).collect::<Result<_>>()?, self.tag.clone()))
    }

    pub fn add(&self, o: &LocalizedClass) -> LocalizedClass {
        LocalizedClass::new(self.values.iter().zip(&o.values).map(|(a, b)| a.add(b)).collect(), self.tag.clone())
    }

    pub fn sub(&self, o: &LocalizedClass) -> LocalizedClass {
        LocalizedClass::new(self.values.iter().zip(&o.values).map(|(a, b)| a.sub(b)).collect(), self.tag.clone())
    }

    pub fn neg(&self) -> LocalizedClass {
        self.map(|v| v.neg())
    }

    /// Pointwise product (tensor product of classes).
    pub fn mul(&self, o: &LocalizedClass) -> LocalizedClass {
        LocalizedClass::new(self.values.iter().zip(&o.values).map(|(a, b)| a.mul(b)).collect(), self.tag.clone())
    }

    pub fn scale(&self, c: &RationalFn) -> LocalizedClass {
        self.map(|v| v.mul(c))
    }

    pub fn scale_poly(&self, c: &LaurentPoly) -> LocalizedClass {
        self.map(|v| v.mul_poly(c))
    }

    /// Values with every variable inverted.
    pub fn dual(&self) -> LocalizedClass {
        self.map(|v| v.dual())
    }

    pub fn substitute(&self, s: &Substitution) -> Result<LocalizedClass> {
        self.try_map(|v| s.apply(v))
    }

    pub fn all_polynomial(&self) -> bool {
        self.values.iter().all(|v| v.is_polynomial())
    }
}

/// Which basis a Schubert expansion is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// O_w
    Schubert,
    /// O^w
    Opposite,
    /// b_w
    B,
    /// ι_w
    FixedPoint,
}

impl Basis {
    pub fn tag(self) -> &'static str {
        match self {
            Basis::Schubert => "O_w",
            Basis::Opposite => "O^w",
            Basis::B => "b_w",
            Basis::FixedPoint => "iota_w",
        }
    }

    pub fn parse(s: &str) -> Result<Basis> {
        Ok(match s {
            "O_w" => Basis::Schubert,
            "O^w" => Basis::Opposite,
            "b_w" => Basis::B,
            "iota_w" => Basis::FixedPoint,
            _ => return Err(Error::Parse(format!("unknown basis '{s}'"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchubertExpansion {
    pub basis: Basis,
    pub coefficients: Vec<RationalFn>,
    pub tag: String,
}

impl SchubertExpansion {
    pub fn get(&self, u: Elem) -> &RationalFn {
        &self.coefficients[u.idx()]
    }

    pub fn poly(&self, u: Elem) -> Option<&LaurentPoly> {
        self.coefficients[u.idx()].as_poly()
    }

    pub fn substitute(&self, s: &Substitution) -> Result<SchubertExpansion> {
        Ok(SchubertExpansion {
            basis: self.basis,
            coefficients: self.coefficients.iter().map(|c| s.apply(c)).collect::<Result<_>>()?,
            tag: self.tag.clone(),
        })
    }
}

fn sign(k: usize) -> Int {
    if k % 2 == 0 {
        Int::ONE
    } else {
        Int::from(-1)
    }
}

impl Flag {
    pub fn n(&self) -> usize {
        self.w.size()
    }

    /// Binomials 1 - e^{wα}, α > 0.
    pub fn tangent_factors(&self, w: Elem) -> Vec<LaurentPoly> {
        (0..self.dim()).map(|k| LaurentPoly::one_minus_e(self.root_image(w, k))).collect()
    }

    /// ∏_{α>0} (1 - e^{wα}) = ι_w|_w
    pub fn iota_diagonal(&self, w: Elem) -> LaurentPoly {
        let diag = self
            .memo("iota_diagonal", || Ok(self.w.elements().map(|u| LaurentPoly::product(self.tangent_factors(u).iter())).collect::<Vec<_>>()))
            .unwrap();
        diag[w.idx()].clone()
    }

    pub fn fixed_point_class(&self, w: Elem) -> LocalizedClass {
        let mut c = LocalizedClass::zero(self.n(), format!("iota_{}", self.w.word_string(w)));
        c.values[w.idx()] = self.iota_diagonal(w).into();
        c
    }

    /// All O_w, built by Demazure operators from O_e = ι_e.
    pub fn schubert_classes(&self) -> Arc<Vec<LocalizedClass>> {
        self.memo("O_w", || {
            let mut out: Vec<LocalizedClass> = Vec::with_capacity(self.n());
            for w in self.w.elements() {
                let c = if w == self.w.identity() {
                    self.fixed_point_class(w)
                } else {
                    let i = *self.w.word(w).last().unwrap() as usize;
                    self.demazure(i, &out[self.w.rmul(w, i).idx()])
                };
                out.push(c.with_tag(format!("O_{}", self.w.word_string(w))));
            }
            Ok(out)
        })
        .unwrap()
    }

    pub fn schubert_class(&self, w: Elem) -> LocalizedClass {
        self.schubert_classes()[w.idx()].clone()
    }

    /// All O^w, built downwards from O^{w0} = ι_{w0}.
    pub fn opposite_schubert_classes(&self) -> Arc<Vec<LocalizedClass>> {
        self.memo("O^w", || {
            let mut out: Vec<Option<LocalizedClass>> = vec![None; self.n()];
            let w0 = self.w.longest();
            for w in self.w.elements().rev() {
                let c = if w == w0 {
                    self.fixed_point_class(w)
                } else {
                    // w s_i > w for some i; O^w = ∂_i O^{w s_i}
                    let i = (0..self.rs.rank).find(|&i| !self.w.is_right_descent(w, i)).unwrap();
                    self.demazure(i, out[self.w.rmul(w, i).idx()].as_ref().unwrap())
                };
                out[w.idx()] = Some(c.with_tag(format!("O^{}", self.w.word_string(w))));
            }
            Ok(out.into_iter().map(Option::unwrap).collect::<Vec<_>>())
        })
        .unwrap()
    }

    pub fn opposite_schubert_class(&self, w: Elem) -> LocalizedClass {
        self.opposite_schubert_classes()[w.idx()].clone()
    }

    /// I_w = Σ_{v ≤ w} (-1)^{ℓ(w)-ℓ(v)} O_v
    pub fn ideal_sheaf_classes(&self) -> Arc<Vec<LocalizedClass>> {
        self.memo("I_w", || {
            let o = self.schubert_classes();
            Ok(self
                .w
                .elements()
                .map(|w| {
                    let mut acc = LocalizedClass::zero(self.n(), format!("I_{}", self.w.word_string(w)));
                    for v in self.w.lower_interval(w) {
                        let s = sign(self.w.length(w) - self.w.length(v));
                        acc = acc.add(&o[v.idx()].map(|x| x.scale(&s)));
                    }
                    acc
                })
                .collect::<Vec<_>>())
        })
        .unwrap()
    }

    /// I^w = Σ_{v ≥ w} (-1)^{ℓ(v)-ℓ(w)} O^v
    pub fn opposite_ideal_sheaf_classes(&self) -> Arc<Vec<LocalizedClass>> {
        self.memo("I^w", || {
            let o = self.opposite_schubert_classes();
            Ok(self
                .w
                .elements()
                .map(|w| {
                    let mut acc = LocalizedClass::zero(self.n(), format!("I^{}", self.w.word_string(w)));
                    for v in self.w.upper_interval(w) {
                        let s = sign(self.w.length(v) - self.w.length(w));
                        acc = acc.add(&o[v.idx()].map(|x| x.scale(&s)));
                    }
                    acc
                })
                .collect::<Vec<_>>())
        })
        .unwrap()
    }

    pub fn line_bundle_class(&self, lambda: &Weight) -> LocalizedClass {
        LocalizedClass::new(
            self.w.elements().map(|w| LaurentPoly::e(self.w.act(w, lambda)).into()).collect(),
            format!("L{:?}", &lambda[..self.rs.rank]),
        )
    }

    /// λ_y(T*_w) = ∏_{α>0} (1 + y e^{wα})
    pub fn lambda_y_value(&self, w: Elem) -> LaurentPoly {
        LaurentPoly::product((0..self.dim()).map(|k| LaurentPoly::one_plus_ye(self.root_image(w, k))).collect::<Vec<_>>().iter())
    }

    pub fn lambda_y_cotangent(&self) -> LocalizedClass {
        LocalizedClass::new(self.w.elements().map(|w| self.lambda_y_value(w).into()).collect(), "lambda_y(T*)")
    }

    /// ∏_{α>0} (1 + y e^{-α})
    pub fn lambda_y_w0(&self) -> LaurentPoly {
        LaurentPoly::product(
            self.rs.positive_roots.iter().map(|r| LaurentPoly::one_plus_ye(neg_weight(&r.weight))).collect::<Vec<_>>().iter(),
        )
    }

    /// ⟨F, G⟩ = Σ_w F|_w G|_w / ∏_{α>0}(1 - e^{wα}).
    /// With `assert_poly` the result must be a Laurent polynomial.
    pub fn pairing(&self, f: &LocalizedClass, g: &LocalizedClass, assert_poly: bool) -> Result<RationalFn> {
        // 1/ι_w|_w = (-1)^{ℓ(w)} e^{ρ - wρ} / ∏_{β>0}(1 - e^β)
        let rho = self.rs.rho();
        let mut acc = RationalFn::zero();
        for w in self.w.elements() {
            let (a, b) = (f.get(w), g.get(w));
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let wrho = self.w.rho_image(w);
            let mut shift = [0; crate::weyl::MAX_RANK];
            for j in 0..self.rs.rank {
                shift[j] = rho[j] - wrho[j];
            }
            let mut t = a.mul(b).shift(&Monomial::e(shift));
            if self.w.length(w) % 2 == 1 {
                t = t.neg();
            }
            acc = acc.add(&t);
        }
        let factors: Vec<LaurentPoly> = self.rs.positive_roots.iter().map(|r| LaurentPoly::one_minus_e(r.weight)).collect();
        let r = acc.div_factors(&factors)?;
        if assert_poly && !r.is_polynomial() {
            return Err(Error::invariant("pairing is not a Laurent polynomial", format!("<{}, {}> residue {}", f.tag, g.tag, r)));
        }
        Ok(r)
    }

    /// 𝒟(F)|_u = (-1)^{dim} e^{2uρ} F|_u^∨
    pub fn serre_duality(&self, f: &LocalizedClass) -> LocalizedClass {
        let two_rho = self.rs.two_rho();
        let sgn = sign(self.dim());
        LocalizedClass::new(
            self.w
                .elements()
                .map(|u| f.get(u).dual().shift(&Monomial::e(self.w.act(u, &two_rho))).scale(&sgn))
                .collect(),
            format!("D({})", f.tag),
        )
    }

    /// (wF)|_u = w(F|_{w^{-1}u})
    pub fn weyl_twist_class(&self, w: Elem, f: &LocalizedClass) -> LocalizedClass {
        let winv = self.w.inverse(w);
        LocalizedClass::new(
            self.w.elements().map(|u| crate::ring::weyl_twist(&self.w, w, f.get(self.w.mul(winv, u)))).collect(),
            format!("{}.({})", self.w.word_string(w), f.tag),
        )
    }

    /// GKM condition: F|_w - F|_{w s_α} divisible by 1 - e^{wα}.
    pub fn gkm_check(&self, f: &LocalizedClass) -> Result<()> {
        for w in self.w.elements() {
            let a = f.get(w).as_poly().ok_or_else(|| {
                Error::invariant("GKM", format!("{} has a denominator at {}", f.tag, self.w.word_string(w)))
            })?;
            for k in 0..self.dim() {
                let ws = self.w.mul(w, self.w.reflection(k));
                if ws < w {
                    continue;
                }
                let b = f.get(ws).as_poly().ok_or_else(|| {
                    Error::invariant("GKM", format!("{} has a denominator at {}", f.tag, self.w.word_string(ws)))
                })?;
                let d = a.sub(b);
                if d.exact_divide(&LaurentPoly::one_minus_e(self.root_image(w, k))).is_none() {
                    return Err(Error::invariant(
                        "GKM",
                        format!("{}: edge {} - {} not divisible", f.tag, self.w.word_string(w), self.w.word_string(ws)),
                    ));
                }
            }
        }
        Ok(())
    }

    /// b_w|_w = (-1)^{dim-ℓ(w)} ∏_{wα>0}(y^{-1} + e^{-wα}) ∏_{wα<0}(1 - e^{wα})
    pub fn b_diagonal(&self, w: Elem) -> LaurentPoly {
        let mut p = LaurentPoly::constant(sign(self.dim() - self.w.length(w)));
        for k in 0..self.dim() {
            let x = self.root_image(w, k);
            if self.w.act_root(w, k).positive {
                p = p.mul(&LaurentPoly::y_pow(-1).add(&LaurentPoly::e(neg_weight(&x))));
            } else {
                p = p.mul(&LaurentPoly::one_minus_e(x));
            }
        }
        p
    }

    pub fn basis_class(&self, basis: Basis, w: Elem) -> LocalizedClass {
        match basis {
            Basis::Schubert => self.schubert_class(w),
            Basis::Opposite => self.opposite_schubert_class(w),
            Basis::FixedPoint => self.fixed_point_class(w),
            Basis::B => {
                let mut c = LocalizedClass::zero(self.n(), format!("b_{}", self.w.word_string(w)));
                c.values[w.idx()] = self.b_diagonal(w).into();
                c
            }
        }
    }

    /// Σ_u c_u B_u
    pub fn reconstruct(&self, e: &SchubertExpansion) -> LocalizedClass {
        let mut acc = LocalizedClass::zero(self.n(), e.tag.clone());
        for u in self.w.elements() {
            let c = e.get(u);
            if !c.is_zero() {
                acc = acc.add(&self.basis_class(e.basis, u).scale(c));
            }
        }
        acc
    }

    /// Expansion coefficients; for the Schubert bases two independent methods are compared.
    pub fn expand(&self, f: &LocalizedClass, basis: Basis) -> Result<SchubertExpansion> {
        let coefficients = match basis {
            Basis::FixedPoint | Basis::B => self
                .w
                .elements()
                .map(|u| {
                    let d = match basis {
                        Basis::B => self.b_diagonal(u),
                        _ => self.iota_diagonal(u),
                    };
                    f.get(u).div_poly(&d)
                })
                .collect::<Result<Vec<_>>>()?,
            Basis::Schubert | Basis::Opposite => {
                let by_pairing = self.expand_by_pairing(f, basis)?;
                let by_solve = self.expand_by_solve(f, basis)?;
                for u in self.w.elements() {
                    if by_pairing[u.idx()] != by_solve[u.idx()] {
                        return Err(Error::invariant(
                            "Schubert expansion",
                            format!("{} at {}: pairing gives {}, solve gives {}", f.tag, self.w.word_string(u), by_pairing[u.idx()], by_solve[u.idx()]),
                        ));
                    }
                }
                by_pairing
            }
        };
        Ok(SchubertExpansion { basis, coefficients, tag: f.tag.clone() })
    }

    /// c_u = ⟨F, I^u⟩ for O_w, ⟨F, I_u⟩ for O^w.
    pub fn expand_by_pairing(&self, f: &LocalizedClass, basis: Basis) -> Result<Vec<RationalFn>> {
        let duals = match basis {
            Basis::Schubert => self.opposite_ideal_sheaf_classes(),
            Basis::Opposite => self.ideal_sheaf_classes(),
            _ => return Err(Error::Usage("pairing expansion needs a Schubert basis".into())),
        };
        self.w
            .elements()
            .map(|u| {
                let c = self.pairing(f, &duals[u.idx()], true).map_err(|e| match e {
                    Error::Invariant { detail, .. } => Error::invariant("Schubert coefficient is not polynomial", detail),
                    other => other,
                })?;
                Ok(c)
            })
            .collect()
    }

    /// Triangular solve over the fixed points ordered by length.
    pub fn expand_by_solve(&self, f: &LocalizedClass, basis: Basis) -> Result<Vec<RationalFn>> {
        let n = self.n();
        let mut c = vec![RationalFn::zero(); n];
        match basis {
            Basis::Schubert => {
                // O_v supported on {u ≤ v}: solve from the top
                let o = self.schubert_classes();
                for u in self.w.elements().rev() {
                    let mut r = f.get(u).clone();
                    for v in self.w.elements().rev().take_while(|&v| v != u) {
                        if !c[v.idx()].is_zero() && !o[v.idx()].get(u).is_zero() {
                            r = r.sub(&c[v.idx()].mul(o[v.idx()].get(u)));
                        }
                    }
                    c[u.idx()] = r.div(o[u.idx()].get(u))?;
                }
            }
            Basis::Opposite => {
                let o = self.opposite_schubert_classes();
                for u in self.w.elements() {
                    let mut r = f.get(u).clone();
                    for v in self.w.elements().take_while(|&v| v != u) {
                        if !c[v.idx()].is_zero() && !o[v.idx()].get(u).is_zero() {
                            r = r.sub(&c[v.idx()].mul(o[v.idx()].get(u)));
                        }
                    }
                    c[u.idx()] = r.div(o[u.idx()].get(u))?;
                }
            }
            _ => return Err(Error::Usage("triangular expansion needs a Schubert basis".into())),
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::weight;
    use crate::weyl::LieType;
    use proptest::prelude::*;

    fn a() -> Weight {
        weight(&[2])
    }

    #[test]
    fn fixed_point_examples() {
        let fv = Flag::new(LieType::A, 1).unwrap();
        let (e, s) = (fv.w.identity(), fv.w.longest());
        let ie = fv.fixed_point_class(e);
        assert_eq!(*ie.get(e), RationalFn::from(LaurentPoly::one_minus_e(a())));
        assert!(ie.get(s).is_zero());
        assert_eq!(*fv.fixed_point_class(s).get(s), RationalFn::from(LaurentPoly::one_minus_e(neg_weight(&a()))));
        let a2 = Flag::new(LieType::A, 2).unwrap();
        let w0 = a2.w.longest();
        let want = LaurentPoly::product(
            a2.rs.positive_roots.iter().map(|r| LaurentPoly::one_minus_e(neg_weight(&r.weight))).collect::<Vec<_>>().iter(),
        );
        assert_eq!(a2.iota_diagonal(w0), want);
    }

    #[test]
    fn schubert_examples() {
        let fv = Flag::new(LieType::A, 1).unwrap();
        let s = fv.w.longest();
        assert_eq!(fv.schubert_class(s), LocalizedClass::constant(2, RationalFn::one()));
        let ie = fv.opposite_ideal_sheaf_classes()[0].clone();
        assert_eq!(*ie.get(fv.w.identity()), RationalFn::one());
        assert_eq!(*ie.get(s), RationalFn::from(LaurentPoly::e(neg_weight(&a()))));
        for (t, n) in [(LieType::A, 2), (LieType::B, 2), (LieType::G, 2), (LieType::A, 3)] {
            let fv = Flag::new(t, n).unwrap();
            let id = fv.w.identity();
            assert_eq!(fv.schubert_class(id), fv.fixed_point_class(id));
            assert_eq!(fv.opposite_schubert_class(id), LocalizedClass::constant(fv.n(), RationalFn::one()));
            assert_eq!(fv.ideal_sheaf_classes()[0], fv.schubert_class(id));
            // ∂_i O_w = O_{w s_i} or O_w
            let o = fv.schubert_classes();
            for w in fv.w.elements() {
                for i in 0..n {
                    let ws = fv.w.rmul(w, i);
                    let want = if ws > w && fv.w.length(ws) > fv.w.length(w) { &o[ws.idx()] } else { &o[w.idx()] };
                    assert_eq!(fv.demazure(i, &o[w.idx()]), *want);
                }
                // supports
                for u in fv.w.elements() {
                    assert_eq!(!o[w.idx()].get(u).is_zero(), fv.w.bruhat_leq(u, w));
                    assert_eq!(!fv.opposite_schubert_class(w).get(u).is_zero(), fv.w.bruhat_leq(w, u));
                }
                fv.gkm_check(&o[w.idx()]).unwrap();
                fv.gkm_check(&fv.opposite_schubert_class(w)).unwrap();
                fv.gkm_check(&fv.ideal_sheaf_classes()[w.idx()]).unwrap();
            }
            fv.gkm_check(&fv.line_bundle_class(&weight(&[1, -2, 1][..n.min(3)]))).unwrap();
            fv.gkm_check(&fv.lambda_y_cotangent()).unwrap();
        }
    }

    #[test]
    fn schubert_class_is_word_independent() {
        let fv = Flag::new(LieType::A, 2).unwrap();
        let o = fv.fixed_point_class(fv.w.identity());
        let a = fv.composite(&[0, 1, 0], crate::heckeops::Variant::Demazure, &o).unwrap();
        let b = fv.composite(&[1, 0, 1], crate::heckeops::Variant::Demazure, &o).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, fv.schubert_class(fv.w.longest()));
    }

    #[test]
    fn duality_pairings() {
        for (t, n) in [(LieType::A, 2), (LieType::B, 2), (LieType::A, 3)] {
            let fv = Flag::new(t, n).unwrap();
            let (o, op, i, iop) = (fv.schubert_classes(), fv.opposite_schubert_classes(), fv.ideal_sheaf_classes(), fv.opposite_ideal_sheaf_classes());
            for u in fv.w.elements() {
                for v in fv.w.elements() {
                    let d = if u == v { RationalFn::one() } else { RationalFn::zero() };
                    assert_eq!(fv.pairing(&o[u.idx()], &iop[v.idx()], true).unwrap(), d);
                    assert_eq!(fv.pairing(&op[u.idx()], &i[v.idx()], true).unwrap(), d);
                    let ov = if fv.w.bruhat_leq(v, u) { RationalFn::one() } else { RationalFn::zero() };
                    assert_eq!(fv.pairing(&o[u.idx()], &op[v.idx()], true).unwrap(), ov);
                    if u != v {
                        assert!(fv.pairing(&fv.fixed_point_class(u), &fv.fixed_point_class(v), false).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn line_bundles() {
        let fv = Flag::new(LieType::A, 2).unwrap();
        let l = fv.line_bundle_class(&fv.rs.two_rho());
        for w in fv.w.elements() {
            let prod = LaurentPoly::product((0..3).map(|k| LaurentPoly::e(fv.root_image(w, k))).collect::<Vec<_>>().iter());
            assert_eq!(*l.get(w), RationalFn::from(prod));
        }
        let a1 = Flag::new(LieType::A, 1).unwrap();
        assert_eq!(*a1.lambda_y_cotangent().get(a1.w.identity()), RationalFn::from(LaurentPoly::one_plus_ye(a())));
        assert_eq!(*fv.lambda_y_cotangent().get(fv.w.longest()), RationalFn::from(fv.lambda_y_w0()));
    }

    #[test]
    fn serre_duality_examples() {
        let fv = Flag::new(LieType::A, 1).unwrap();
        let (e, s) = (fv.w.identity(), fv.w.longest());
        let d = fv.serre_duality(&LocalizedClass::constant(2, RationalFn::one()));
        assert_eq!(*d.get(e), RationalFn::from(LaurentPoly::e(a()).neg()));
        assert_eq!(*d.get(s), RationalFn::from(LaurentPoly::e(neg_weight(&a())).neg()));
        let dy = fv.serre_duality(&LocalizedClass::constant(2, LaurentPoly::y().into()));
        assert_eq!(*dy.get(e), RationalFn::from(LaurentPoly::term(Monomial::new(a(), -1, 0), -1)));
    }

    #[test]
    fn twist_examples() {
        let fv = Flag::new(LieType::A, 2).unwrap();
        let w0 = fv.w.longest();
        for w in fv.w.elements() {
            let t = fv.weyl_twist_class(w0, &fv.schubert_class(w));
            for u in fv.w.elements() {
                assert_eq!(!t.get(u).is_zero(), fv.w.bruhat_leq(fv.w.mul(w0, w), u));
            }
            assert_eq!(fv.weyl_twist_class(fv.w.identity(), &fv.schubert_class(w)), fv.schubert_class(w));
        }
    }

    #[test]
    fn expansion_examples() {
        let fv = Flag::new(LieType::A, 2).unwrap();
        for w in fv.w.elements() {
            let e = fv.expand(&fv.schubert_class(w), Basis::Schubert).unwrap();
            for u in fv.w.elements() {
                let want = if u == w { RationalFn::one() } else { RationalFn::zero() };
                assert_eq!(*e.get(u), want);
            }
        }
    }

    fn a2() -> Arc<Flag> {
        Flag::new(LieType::A, 2).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn expansion_roundtrip(coeffs in prop::collection::vec((-3i64..4, 0i32..2, -1i32..2), 6)) {
            let fv = a2();
            let mut f = LocalizedClass::zero(6, "random");
            let mut want = Vec::new();
            for (k, (c, ydeg, wt)) in coeffs.iter().enumerate() {
                let p = LaurentPoly::term(Monomial::new(weight(&[*wt, -*wt]), *ydeg, 0), *c);
                f = f.add(&fv.schubert_class(Elem(k as u32)).scale_poly(&p));
                want.push(RationalFn::from(p));
            }
            for basis in [Basis::Schubert, Basis::Opposite, Basis::FixedPoint, Basis::B] {
                let e = fv.expand(&f, basis).unwrap();
                prop_assert_eq!(fv.reconstruct(&e), f.clone());
            }
            let e = fv.expand(&f, Basis::Schubert).unwrap();
            prop_assert_eq!(e.coefficients, want);
        }

        #[test]
        fn duality_laws(vals in prop::collection::vec((-3i64..4, -1i32..2, -2i32..3, -1i32..2), 6), u in 0u32..6, v in 0u32..6) {
            let fv = a2();
            let f = LocalizedClass::new(
                vals.iter().map(|(c, y, a, b)| RationalFn::from(LaurentPoly::term(Monomial::new(weight(&[*a, *b]), *y, 0), *c).add(&LaurentPoly::one()))).collect(),
                "random",
            );
            let dd = fv.serre_duality(&fv.serre_duality(&f));
            prop_assert_eq!(dd, f.clone());
            // 𝒟(F ⊗ (-1)^dim L_{2ρ}) = F^∨
            let omega = fv.line_bundle_class(&fv.rs.two_rho()).map(|x| x.scale(&sign(fv.dim())));
            prop_assert_eq!(fv.serre_duality(&f.mul(&omega)), f.dual());
            let (u, v) = (Elem(u), Elem(v));
            let uv = fv.weyl_twist_class(fv.w.mul(u, v), &f);
            prop_assert_eq!(uv, fv.weyl_twist_class(u, &fv.weyl_twist_class(v, &f)));
        }
    }
}
