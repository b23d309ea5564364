//! Demazure and Demazure-Lusztig operators acting on localization values.

use crate::error::{Error, Result};
use crate::kclass::LocalizedClass;
use crate::report::Report;
use crate::ring::{LaurentPoly, Monomial, RationalFn};
use crate::weyl::{Elem, Flag};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Demazure,
    T,
    TDual,
    TInv,
    TDualInv,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Demazure => "d",
            Variant::T => "T",
            Variant::TDual => "T^v",
            Variant::TInv => "T^-1",
            Variant::TDualInv => "(T^v)^-1",
        }
    }
}

/// Formal expression in the operators; `Compose` applies its last entry first.
#[derive(Clone, Debug)]
pub enum OperatorExpr {
    Identity,
    Gen(Variant, usize),
    Scalar(RationalFn),
    Sum(Vec<OperatorExpr>),
    Compose(Vec<OperatorExpr>),
}

impl OperatorExpr {
    pub fn word(v: Variant, word: &[usize]) -> OperatorExpr {
        OperatorExpr::Compose(word.iter().map(|&i| OperatorExpr::Gen(v, i)).collect())
    }

    pub fn apply(&self, fv: &Flag, f: &LocalizedClass) -> LocalizedClass {
        match self {
            OperatorExpr::Identity => f.clone(),
            OperatorExpr::Gen(v, i) => fv.apply_op(*v, *i, f),
            OperatorExpr::Scalar(c) => f.map(|x| x.mul(c)),
            OperatorExpr::Sum(terms) => {
                let mut acc = LocalizedClass::zero(fv.w.size(), "");
                for t in terms {
                    acc = acc.add(&t.apply(fv, f));
                }
                acc
            }
            OperatorExpr::Compose(ops) => {
                let mut cur = f.clone();
                for op in ops.iter().rev() {
                    cur = op.apply(fv, &cur);
                }
                cur
            }
        }
    }
}

fn one_plus_y() -> LaurentPoly {
    LaurentPoly::one().add(&LaurentPoly::y())
}

impl Flag {
    /// (∂_i F)(u) = (F(u) - e^{uα_i} F(u s_i)) / (1 - e^{uα_i})
    pub fn demazure(&self, i: usize, f: &LocalizedClass) -> LocalizedClass {
        let values = self
            .w
            .elements()
            .map(|u| {
                let a = f.get(u);
                let b = f.get(self.w.rmul(u, i));
                if a.is_zero() && b.is_zero() {
                    return RationalFn::zero();
                }
                let x = self.simple_image(u, i);
                let num = a.sub(&b.shift(&Monomial::e(x)));
                num.div_poly(&LaurentPoly::one_minus_e(x)).expect("nonzero root factor")
            })
            .collect();
        LocalizedClass::new(values, format!("d{}({})", i + 1, f.tag))
    }

    /// T_i F = (1 + y L_{α_i}) ∂_i F - F
    pub fn op_t(&self, i: usize, f: &LocalizedClass) -> LocalizedClass {
        let d = self.demazure(i, f);
        let values = self
            .w
            .elements()
            .map(|u| {
                let x = self.simple_image(u, i);
                d.get(u).mul_poly(&LaurentPoly::one_plus_ye(x)).sub(f.get(u))
            })
            .collect();
        LocalizedClass::new(values, format!("T{}({})", i + 1, f.tag))
    }

    /// T_i^∨ F = ∂_i((1 + y L_{α_i}) F) - F
    pub fn op_t_dual(&self, i: usize, f: &LocalizedClass) -> LocalizedClass {
        let g = LocalizedClass::new(
            self.w.elements().map(|u| f.get(u).mul_poly(&LaurentPoly::one_plus_ye(self.simple_image(u, i)))).collect(),
            "",
        );
        let d = self.demazure(i, &g);
        LocalizedClass::new(d.sub(f).values, format!("Tv{}({})", i + 1, f.tag))
    }

    // T^{-1} = -y^{-1} T - y^{-1}(1 + y)
    fn invert_with(&self, tf: LocalizedClass, f: &LocalizedClass, tag: String) -> LocalizedClass {
        let yinv = Monomial::new([0; crate::weyl::MAX_RANK], -1, 0);
        let c = one_plus_y().shift(&yinv);
        let values = self
            .w
            .elements()
            .map(|u| tf.get(u).shift(&yinv).add(&f.get(u).mul_poly(&c)).neg())
            .collect();
        LocalizedClass::new(values, tag)
    }

    pub fn op_t_inverse(&self, i: usize, f: &LocalizedClass) -> LocalizedClass {
        self.invert_with(self.op_t(i, f), f, format!("T{}^-1({})", i + 1, f.tag))
    }

    pub fn op_t_dual_inverse(&self, i: usize, f: &LocalizedClass) -> LocalizedClass {
        self.invert_with(self.op_t_dual(i, f), f, format!("Tv{}^-1({})", i + 1, f.tag))
    }

    pub fn apply_op(&self, v: Variant, i: usize, f: &LocalizedClass) -> LocalizedClass {
        match v {
            Variant::Demazure => self.demazure(i, f),
            Variant::T => self.op_t(i, f),
            Variant::TDual => self.op_t_dual(i, f),
            Variant::TInv => self.op_t_inverse(i, f),
            Variant::TDualInv => self.op_t_dual_inverse(i, f),
        }
    }

    /// O_{i_1} ∘ ... ∘ O_{i_k} applied to F (so O_{i_k} acts first). The word must be reduced.
    pub fn composite(&self, word: &[usize], v: Variant, f: &LocalizedClass) -> Result<LocalizedClass> {
        if !self.w.is_reduced(word) {
            return Err(Error::Usage(format!("word {:?} is not reduced", word.iter().map(|i| i + 1).collect::<Vec<_>>())));
        }
        let mut cur = f.clone();
        for &i in word.iter().rev() {
            cur = self.apply_op(v, i, &cur);
        }
        Ok(cur)
    }

    /// (O_{i_1} ⋯ O_{i_k})^{-1} F for the inverse variants: O_{i_1}^{-1} acts first.
    pub fn composite_inverse(&self, word: &[usize], v: Variant, f: &LocalizedClass) -> Result<LocalizedClass> {
        if !self.w.is_reduced(word) {
            return Err(Error::Usage(format!("word {:?} is not reduced", word.iter().map(|i| i + 1).collect::<Vec<_>>())));
        }
        let inv = match v {
            Variant::T => Variant::TInv,
            Variant::TDual => Variant::TDualInv,
            _ => return Err(Error::Usage("only T and T^v have inverses".into())),
        };
        let mut cur = f.clone();
        for &i in word {
            cur = self.apply_op(inv, i, &cur);
        }
        Ok(cur)
    }

    fn word_usize(&self, w: Elem) -> Vec<usize> {
        self.w.word(w).iter().map(|&a| a as usize).collect()
    }

    /// Coefficients c_x with F = Σ c_x B_x, where B_x is supported on {u ≤ key(x)}
    /// and nonzero at key(x). Solved from the top of the Bruhat order down.
    pub(crate) fn triangular_solve_lower(
        &self,
        f: &LocalizedClass,
        basis: &dyn Fn(Elem) -> LocalizedClass,
    ) -> Result<Vec<RationalFn>> {
        let n = self.w.size();
        let basis: Vec<LocalizedClass> = self.w.elements().map(basis).collect();
        let mut c = vec![RationalFn::zero(); n];
        for u in self.w.elements().rev() {
            let mut r = f.get(u).clone();
            for v in self.w.elements().rev() {
                if v == u {
                    break;
                }
                if !c[v.idx()].is_zero() {
                    let b = basis[v.idx()].get(u);
                    if !b.is_zero() {
                        r = r.sub(&c[v.idx()].mul(b));
                    }
                }
            }
            let d = basis[u.idx()].get(u);
            if d.is_zero() {
                return Err(Error::invariant("triangular basis", format!("zero diagonal at {}", self.w.word_string(u))));
            }
            c[u.idx()] = r.div(d)?;
        }
        Ok(c)
    }
}

fn braid_order(a: i32) -> usize {
    match a {
        0 => 2,
        1 => 3,
        2 => 4,
        _ => 6,
    }
}

/// Exhaustive check of the operator relations on the fixed-point basis.
pub fn verify_relations(fv: &Flag) -> Report {
    let mut rep = Report::new("relations");
    let g = &fv.w;
    let n = fv.rs.rank;
    let iotas: Vec<LocalizedClass> = g.elements().map(|w| fv.fixed_point_class(w)).collect();
    let y = RationalFn::from(LaurentPoly::y());
    let opy = RationalFn::from(one_plus_y());
    let wit = |i: usize, w: Elem| format!("simple root {}, class iota_{}", i + 1, g.word_string(w));

    for i in 0..n {
        for w in g.elements() {
            let iw = &iotas[w.idx()];
            for v in [Variant::T, Variant::TDual] {
                // (T + 1)(T + y) = T^2 + (1 + y) T + y
                let t1 = fv.apply_op(v, i, iw);
                let t2 = fv.apply_op(v, i, &t1);
                let lhs = t2.add(&t1.map(|x| x.mul(&opy))).add(&iw.map(|x| x.mul(&y)));
                rep.record(&format!("quadratic {}", v.name()), lhs.is_zero(), || wit(i, w));
                let back = fv.apply_op(if v == Variant::T { Variant::TInv } else { Variant::TDualInv }, i, &t1);
                rep.record(&format!("inverse {}", v.name()), back == *iw, || wit(i, w));
            }
            let d1 = fv.demazure(i, iw);
            let d2 = fv.demazure(i, &d1);
            rep.record("idempotent d", d1 == d2, || wit(i, w));
            // Lemma-style closed forms on the fixed point basis
            let x = fv.simple_image(w, i);
            let xm = crate::weyl::neg_weight(&x);
            let ws = g.rmul(w, i);
            let expect_t = iw
                .map(|v| v.mul_poly(&one_plus_y().neg()).div_poly(&LaurentPoly::one_minus_e(xm)).unwrap())
                .add(&iotas[ws.idx()].map(|v| {
                    v.mul_poly(&LaurentPoly::one_plus_ye(xm)).div_poly(&LaurentPoly::one_minus_e(xm)).unwrap()
                }));
            rep.record("T on fixed points", fv.op_t(i, iw) == expect_t, || wit(i, w));
            let expect_td = iw
                .map(|v| v.mul_poly(&one_plus_y().neg()).div_poly(&LaurentPoly::one_minus_e(xm)).unwrap())
                .add(&iotas[ws.idx()].map(|v| {
                    v.mul_poly(&LaurentPoly::one_plus_ye(x)).div_poly(&LaurentPoly::one_minus_e(xm)).unwrap()
                }));
            rep.record("T^v on fixed points", fv.op_t_dual(i, iw) == expect_td, || wit(i, w));
            let yinv_plus = |lam| LaurentPoly::y_pow(-1).add(&LaurentPoly::e(lam));
            let expect_tdi = iw
                .map(|v| v.mul_poly(&LaurentPoly::one().add(&LaurentPoly::y_pow(-1)).neg()).div_poly(&LaurentPoly::one_minus_e(x)).unwrap())
                .add(&iotas[ws.idx()].map(|v| v.mul_poly(&yinv_plus(x).neg()).div_poly(&LaurentPoly::one_minus_e(xm)).unwrap()));
            rep.record("(T^v)^-1 on fixed points", fv.op_t_dual_inverse(i, iw) == expect_tdi, || wit(i, w));
            let expect_d = iw
                .map(|v| v.div_poly(&LaurentPoly::one_minus_e(x)).unwrap())
                .add(&iotas[ws.idx()].map(|v| v.div_poly(&LaurentPoly::one_minus_e(xm)).unwrap()));
            rep.record("d on fixed points", d1 == expect_d, || wit(i, w));
        }
    }

    // braid relations for every pair of simple roots
    for i in 0..n {
        for j in i + 1..n {
            let m = braid_order(fv.rs.cartan[i][j] * fv.rs.cartan[j][i]);
            let a: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { i } else { j }).collect();
            let b: Vec<usize> = (0..m).map(|k| if k % 2 == 0 { j } else { i }).collect();
            for v in [Variant::T, Variant::TDual, Variant::Demazure] {
                for w in g.elements() {
                    let iw = &iotas[w.idx()];
                    let ok = fv.composite(&a, v, iw).unwrap() == fv.composite(&b, v, iw).unwrap();
                    rep.record(&format!("braid {}", v.name()), ok, || {
                        format!("simple roots {},{} (order {m}), class iota_{}", i + 1, j + 1, g.word_string(w))
                    });
                }
            }
        }
    }

    // adjointness <T_i a, b> = <a, T_i^v b>
    for i in 0..n {
        let ta: Vec<LocalizedClass> = iotas.iter().map(|c| fv.op_t(i, c)).collect();
        let tb: Vec<LocalizedClass> = iotas.iter().map(|c| fv.op_t_dual(i, c)).collect();
        for a in g.elements() {
            for b in g.elements() {
                let l = fv.pairing(&ta[a.idx()], &iotas[b.idx()], false).unwrap();
                let r = fv.pairing(&iotas[a.idx()], &tb[b.idx()], false).unwrap();
                rep.record("adjoint T, T^v", l == r, || {
                    format!("simple root {}, pair (iota_{}, iota_{})", i + 1, g.word_string(a), g.word_string(b))
                });
            }
        }
    }

    for v in [Variant::T, Variant::TDual] {
        leading_coefficients(fv, v, &mut rep);
    }
    rep
}

/// Expands T_u T_v^{-1} in the operators T_w through the cyclic vector ι_e, and
/// checks the support and, when lengths add, the leading coefficient (-y)^{-ℓ(v)}.
fn leading_coefficients(fv: &Flag, var: Variant, rep: &mut Report) {
    let g = &fv.w;
    let e = g.identity();
    let start = fv.fixed_point_class(e);
    // B_x = T_x(ι_e) is supported on {u ≤ x^{-1}} with nonzero diagonal there
    let basis: Vec<LocalizedClass> = g.elements().map(|x| fv.composite(&fv.word_usize(x), var, &start).unwrap()).collect();
    let relation = format!("leading coefficient {}", var.name());
    let support = format!("lower support {}", var.name());
    for v in g.elements() {
        let pv = fv.composite_inverse(&fv.word_usize(v), var, &start).unwrap();
        // Q_u = T_u(P_v) built along canonical words
        let mut q: Vec<LocalizedClass> = Vec::with_capacity(g.size());
        for u in g.elements() {
            if u == e {
                q.push(pv.clone());
            } else {
                let i = g.word(u)[0] as usize;
                let prev = q[g.lmul(i, u).idx()].clone();
                q.push(fv.apply_op(var, i, &prev));
            }
        }
        let vinv = g.inverse(v);
        for u in g.elements() {
            let target = g.mul(u, vinv);
            let additive = g.length(target) == g.length(u) + g.length(v);
            let coeffs = match fv.triangular_solve_lower(&q[u.idx()], &|x| basis[g.inverse(x).idx()].clone()) {
                Ok(c) => c,
                Err(_) => {
                    rep.record(&support, false, || format!("solve failed for u={}, v={}", g.word_string(u), g.word_string(v)));
                    continue;
                }
            };
            // coefficient of T_x sits at index x^{-1}
            let mut ok = true;
            for x in g.elements() {
                let c = &coeffs[g.inverse(x).idx()];
                if !c.is_zero() && !g.bruhat_leq(x, target) {
                    ok = false;
                }
                if !c.is_zero() && !c.num().is_weight_free() {
                    ok = false;
                }
            }
            rep.record(&support, ok, || format!("u={}, v={}", g.word_string(u), g.word_string(v)));
            if additive {
                let lv = g.length(v) as i32;
                let want = LaurentPoly::y_pow(-lv).scale(&crate::int::Int::from(if lv % 2 == 0 { 1 } else { -1 }));
                let got = &coeffs[g.inverse(target).idx()];
                rep.record(&relation, *got == RationalFn::from(want), || {
                    format!("u={}, v={}: got {}", g.word_string(u), g.word_string(v), got)
                });
            }
        }
    }
}
