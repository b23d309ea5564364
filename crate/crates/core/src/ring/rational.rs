use super::poly::{LaurentPoly, Monomial};
use crate::error::{Error, Result};
use crate::int::Int;
use crate::weyl::Weight;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// A unit times a normalized factor: `p = sign · m · content · f`.
struct Normalized {
    unit: Monomial,
    sign_content: Int,
    factor: LaurentPoly,
}

/// Pull out the monomial of the term with least (y, z, λ), the content and a sign,
/// so that associated polynomials get the same representative.
fn normalize_factor(p: &LaurentPoly) -> Normalized {
    debug_assert!(!p.is_zero());
    let (m, c) = p.terms().iter().min_by_key(|t| t.0.yz_key()).unwrap();
    let content = p.content();
    let sign_content = if c.is_negative() { -&content } else { content };
    let factor = p.exact_divide(&LaurentPoly::term(*m, sign_content.clone())).expect("unit division");
    Normalized { unit: *m, sign_content, factor }
}

/// A numerator over a multiset of normalized denominator factors.
#[derive(Clone, Debug, Default)]
pub struct RationalFn {
    num: LaurentPoly,
    den: Vec<(LaurentPoly, u32)>,
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> RationalFn {
        RationalFn { num: p, den: Vec::new() }
    }
}

impl RationalFn {
    pub fn zero() -> RationalFn {
        RationalFn::default()
    }

    pub fn one() -> RationalFn {
        LaurentPoly::one().into()
    }

    pub fn constant(c: i64) -> RationalFn {
        LaurentPoly::constant(c).into()
    }

    /// num / ∏ dens
    pub fn new(num: LaurentPoly, dens: &[LaurentPoly]) -> Result<RationalFn> {
        let mut r = RationalFn::from(num);
        for d in dens {
            r = r.div_poly(d)?;
        }
        Ok(r)
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &[(LaurentPoly, u32)] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_poly(&self) -> Option<&LaurentPoly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    pub fn into_poly(self) -> Option<LaurentPoly> {
        if self.den.is_empty() {
            Some(self.num)
        } else {
            None
        }
    }

    /// True when no denominator factor involves e^λ.
    pub fn is_weight_holomorphic(&self) -> bool {
        self.den.iter().all(|(f, _)| f.is_weight_free())
    }

    pub fn den_expanded(&self) -> LaurentPoly {
        let mut r = LaurentPoly::one();
        for (f, k) in &self.den {
            r = r.mul(&f.pow(*k));
        }
        r
    }

    fn insert_den(den: &mut Vec<(LaurentPoly, u32)>, f: LaurentPoly, k: u32) {
        match den.binary_search_by(|t| t.0.cmp(&f)) {
            Ok(i) => den[i].1 += k,
            Err(i) => den.insert(i, (f, k)),
        }
    }

    /// Greedy exact-division cancellation.
    fn cancel(mut self) -> RationalFn {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let mut den = Vec::with_capacity(self.den.len());
        for (f, mut k) in std::mem::take(&mut self.den) {
            while k > 0 {
                match self.num.exact_divide(&f) {
                    Some(q) => {
                        self.num = q;
                        k -= 1;
                    }
                    None => break,
                }
            }
            if k > 0 {
                den.push((f, k));
            }
        }
        self.den = den;
        self
    }

    /// self / p for a nonzero polynomial p.
    pub fn div_poly(&self, p: &LaurentPoly) -> Result<RationalFn> {
        if p.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        if let Some((m, c)) = p.as_monomial() {
            let inv = m.inv();
            if c.is_one() {
                return Ok(RationalFn { num: self.num.shift(&inv), den: self.den.clone() });
            }
            if let Some(q) = self.num.exact_divide(&LaurentPoly::term(*m, c.clone())) {
                return Ok(RationalFn { num: q, den: self.den.clone() });
            }
        }
        let n = normalize_factor(p);
        let mut num = self.num.shift(&n.unit.inv());
        let mut den = self.den.clone();
        if n.sign_content.is_negative() {
            num = num.neg();
        }
        let content = n.sign_content.abs();
        if !content.is_one() {
            Self::insert_den(&mut den, LaurentPoly::constant(content), 1);
        }
        if n.factor.len() > 1 {
            Self::insert_den(&mut den, n.factor, 1);
        }
        Ok(RationalFn { num, den }.cancel())
    }

    /// Division by a polynomial known to be a product of the given factors.
    pub fn div_factors(&self, fs: &[LaurentPoly]) -> Result<RationalFn> {
        let mut r = self.clone();
        for f in fs {
            r = r.div_poly(f)?;
        }
        Ok(r)
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, c: &Int) -> RationalFn {
        RationalFn { num: self.num.scale(c), den: self.den.clone() }.cancel()
    }

    pub fn shift(&self, m: &Monomial) -> RationalFn {
        RationalFn { num: self.num.shift(m), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> RationalFn {
        if self.den.is_empty() {
            return self.num.mul(p).into();
        }
        RationalFn { num: self.num.mul(p), den: self.den.clone() }.cancel()
    }

    pub fn add(&self, o: &RationalFn) -> RationalFn {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_empty() {
                return num.into();
            }
            return RationalFn { num, den: self.den.clone() }.cancel();
        }
        // union of denominators
        let mut den: Vec<(LaurentPoly, u32)> = Vec::new();
        let (mut fa, mut fb) = (LaurentPoly::one(), LaurentPoly::one());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.den, &o.den);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                std::cmp::Ordering::Greater
            } else if j == b.len() {
                std::cmp::Ordering::Less
            } else {
                a[i].0.cmp(&b[j].0)
            };
            match ord {
                std::cmp::Ordering::Less => {
                    fb = fb.mul(&a[i].0.pow(a[i].1));
                    den.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    fa = fa.mul(&b[j].0.pow(b[j].1));
                    den.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let (ka, kb) = (a[i].1, b[j].1);
                    if ka < kb {
                        fa = fa.mul(&a[i].0.pow(kb - ka));
                    } else if kb < ka {
                        fb = fb.mul(&a[i].0.pow(ka - kb));
                    }
                    den.push((a[i].0.clone(), ka.max(kb)));
                    i += 1;
                    j += 1;
                }
            }
        }
        let num = self.num.mul(&fa).add(&o.num.mul(&fb));
        RationalFn { num, den }.cancel()
    }

    pub fn sub(&self, o: &RationalFn) -> RationalFn {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &RationalFn) -> RationalFn {
        if self.is_zero() || o.is_zero() {
            return RationalFn::zero();
        }
        if self.den.is_empty() && o.den.is_empty() {
            return self.num.mul(&o.num).into();
        }
        let mut den = self.den.clone();
        for (f, k) in &o.den {
            Self::insert_den(&mut den, f.clone(), *k);
        }
        RationalFn { num: self.num.mul(&o.num), den }.cancel()
    }

    pub fn div(&self, o: &RationalFn) -> Result<RationalFn> {
        if o.is_zero() {
            return Err(Error::Arithmetic("division by zero rational function".into()));
        }
        let mut r = self.mul_poly(&o.den_expanded());
        r = r.div_poly(&o.num)?;
        Ok(r)
    }

    /// Semantic equality by cross-multiplication.
    pub fn equals(&self, o: &RationalFn) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        let mut fa = LaurentPoly::one();
        let mut fb = LaurentPoly::one();
        let (a, b) = (&self.den, &o.den);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                fb = fb.mul(&a[i].0.pow(a[i].1));
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                fa = fa.mul(&b[j].0.pow(b[j].1));
                j += 1;
            } else {
                let (ka, kb) = (a[i].1, b[j].1);
                if ka > kb {
                    fb = fb.mul(&a[i].0.pow(ka - kb));
                } else if kb > ka {
                    fa = fa.mul(&b[j].0.pow(kb - ka));
                }
                i += 1;
                j += 1;
            }
        }
        self.num.mul(&fa) == o.num.mul(&fb)
    }

    fn map_all(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> RationalFn {
        let mut r = RationalFn::from(f(&self.num));
        for (d, k) in &self.den {
            let g = f(d);
            for _ in 0..*k {
                r = r.div_poly(&g).expect("automorphism keeps factors nonzero");
            }
        }
        r
    }

    /// e^λ ↦ e^{-λ}, y ↦ y^{-1}, z ↦ z^{-1}.
    pub fn dual(&self) -> RationalFn {
        self.map_all(|p| p.dual())
    }

    /// e^λ ↦ e^{f(λ)} for a lattice automorphism f.
    pub fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> RationalFn {
        self.map_all(|p| p.map_weights(&f))
    }

    pub fn invert_weights(&self) -> RationalFn {
        self.map_all(|p| p.invert_weights())
    }

    pub fn bar_y(&self) -> RationalFn {
        self.map_all(|p| p.bar_y())
    }

    pub fn substitute(&self, s: &Substitution) -> Result<RationalFn> {
        let (n, nd) = s.apply_poly(&self.num)?;
        let mut r = RationalFn::from(n);
        for (f, k) in &self.den {
            let (g, gd) = s.apply_poly(f)?;
            if g.is_zero() {
                return Err(Error::Pole(f.to_string()));
            }
            for _ in 0..*k {
                r = r.mul_poly(&LaurentPoly::constant(gd.clone())).div_poly(&g)?;
            }
        }
        r.div_poly(&LaurentPoly::constant(nd))
    }

    /// The value as an exact rational number when it is a constant.
    pub fn as_rational_number(&self) -> Option<BigRational> {
        let num = match self.num.terms() {
            [] => return Some(BigRational::zero()),
            [(m, c)] if m.is_one() => c.to_big(),
            _ => return None,
        };
        let mut den = BigInt::one();
        for (f, k) in &self.den {
            match f.terms() {
                [(m, c)] if m.is_one() => den *= c.pow(*k).to_big(),
                _ => return None,
            }
        }
        Some(BigRational::new(num, den))
    }

    pub fn to_display(&self, rank: usize) -> String {
        render(self, &|p| p.to_display(rank))
    }
}

pub fn render(r: &RationalFn, show: &dyn Fn(&LaurentPoly) -> String) -> String {
    let paren = |s: String, p: &LaurentPoly| if p.len() > 1 { format!("({s})") } else { s };
    if r.den.is_empty() {
        return show(&r.num);
    }
    let den: Vec<String> = r
        .den
        .iter()
        .map(|(f, k)| {
            let s = paren(show(f), f);
            if *k > 1 {
                format!("{s}^{k}")
            } else {
                s
            }
        })
        .collect();
    let den = if den.len() == 1 && r.den[0].1 == 1 { den[0].clone() } else { format!("({})", den.join("*")) };
    format!("{}/{}", paren(show(&r.num), &r.num), den)
}

impl PartialEq for RationalFn {
    fn eq(&self, o: &RationalFn) -> bool {
        self.equals(o)
    }
}

impl Eq for RationalFn {}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self, &|p| p.to_string()))
    }
}

/// Value for y or z under a substitution: (p/r)·y^a·z^b.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub p: Int,
    pub r: Int,
    pub y: i32,
    pub z: i32,
}

impl Target {
    pub fn number(q: &BigRational) -> Target {
        Target { p: Int::from(q.numer().clone()), r: Int::from(q.denom().clone()), y: 0, z: 0 }
    }

    pub fn integer(v: i64) -> Target {
        Target { p: Int::from(v), r: Int::ONE, y: 0, z: 0 }
    }

    /// ± z^k
    pub fn signed_z_power(sign: i64, k: i32) -> Target {
        Target { p: Int::from(sign), r: Int::ONE, y: 0, z: k }
    }

    /// An exact rational number such as "3", "-2" or "1/2".
    pub fn parse(s: &str) -> Result<Target> {
        let q: BigRational = s.trim().parse().map_err(|_| Error::Usage(format!("'{s}' is not an exact rational number")))?;
        Ok(Target::number(&q))
    }

    pub fn neg(&self) -> Target {
        Target { p: -&self.p, ..self.clone() }
    }
}

/// The substitutions used in the library: e^λ ↦ 1, and y or z ↦ a target.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution {
    pub weights_to_one: bool,
    pub y: Option<Target>,
    pub z: Option<Target>,
}

impl Substitution {
    pub fn non_equivariant() -> Substitution {
        Substitution { weights_to_one: true, ..Default::default() }
    }

    pub fn y_to(t: Target) -> Substitution {
        Substitution { y: Some(t), ..Default::default() }
    }

    /// y ↦ -q^{-1} = -z^{-2}
    pub fn y_to_minus_inverse_q() -> Substitution {
        Substitution::y_to(Target::signed_z_power(-1, -2))
    }

    pub fn apply_poly(&self, p: &LaurentPoly) -> Result<(LaurentPoly, Int)> {
        let mut cur = if self.weights_to_one { p.weights_to_one() } else { p.clone() };
        let mut den = Int::ONE;
        for (which, t) in [(0, &self.y), (1, &self.z)] {
            if let Some(t) = t {
                let (q, d) = cur
                    .substitute_var(which, &t.p, &t.r, t.y, t.z)
                    .ok_or_else(|| Error::Pole(format!("negative power of a variable set to zero in {p}")))?;
                cur = q;
                den = &den * &d;
            }
        }
        Ok((cur, den))
    }

    pub fn apply(&self, f: &RationalFn) -> Result<RationalFn> {
        f.substitute(self)
    }
}

#[cfg(test)]
pub(crate) fn big_rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
