use crate::int::Int;
use crate::weyl::{Weight, MAX_RANK};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// e^λ y^a z^b. Ordered lexicographically on (λ, a, b).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    pub e: Weight,
    pub y: i32,
    pub z: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { e: [0; MAX_RANK], y: 0, z: 0 };

    pub fn e(lambda: Weight) -> Monomial {
        Monomial { e: lambda, y: 0, z: 0 }
    }

    pub fn new(e: Weight, y: i32, z: i32) -> Monomial {
        Monomial { e, y, z }
    }

    pub fn is_one(&self) -> bool {
        *self == Monomial::ONE
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut e = self.e;
        for (a, b) in e.iter_mut().zip(o.e.iter()) {
            *a += *b;
        }
        Monomial { e, y: self.y + o.y, z: self.z + o.z }
    }

    pub fn div(&self, o: &Monomial) -> Monomial {
        self.mul(&o.inv())
    }

    pub fn inv(&self) -> Monomial {
        let mut e = self.e;
        for a in e.iter_mut() {
            *a = -*a;
        }
        Monomial { e, y: -self.y, z: -self.z }
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let mut e = self.e;
        for a in e.iter_mut() {
            *a *= k;
        }
        Monomial { e, y: self.y * k, z: self.z * k }
    }

    fn coord(&self, j: usize) -> i32 {
        match j {
            j if j < MAX_RANK => self.e[j],
            j if j == MAX_RANK => self.y,
            _ => self.z,
        }
    }

    fn coord_mut(&mut self, j: usize) -> &mut i32 {
        match j {
            j if j < MAX_RANK => &mut self.e[j],
            j if j == MAX_RANK => &mut self.y,
            _ => &mut self.z,
        }
    }

    pub fn has_weight(&self) -> bool {
        self.e.iter().any(|&x| x != 0)
    }

    /// Order key used to pick the representative term when normalizing factors.
    pub(crate) fn yz_key(&self) -> (i32, i32, Weight) {
        (self.y, self.z, self.e)
    }
}

const NCOORD: usize = MAX_RANK + 2;

/// Sparse Laurent polynomial in e^{ω_i}, y, z with integer coefficients.
/// Terms are sorted by monomial and never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    terms: Vec<(Monomial, Int)>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> LaurentPoly {
        LaurentPoly::constant(Int::ONE)
    }

    pub fn constant(c: impl Into<Int>) -> LaurentPoly {
        LaurentPoly::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: impl Into<Int>) -> LaurentPoly {
        let c = c.into();
        if c.is_zero() {
            LaurentPoly::zero()
        } else {
            LaurentPoly { terms: vec![(m, c)] }
        }
    }

    /// e^λ
    pub fn e(lambda: Weight) -> LaurentPoly {
        LaurentPoly::term(Monomial::e(lambda), 1)
    }

    pub fn y() -> LaurentPoly {
        LaurentPoly::term(Monomial::new([0; MAX_RANK], 1, 0), 1)
    }

    pub fn y_pow(k: i32) -> LaurentPoly {
        LaurentPoly::term(Monomial::new([0; MAX_RANK], k, 0), 1)
    }

    pub fn z_pow(k: i32) -> LaurentPoly {
        LaurentPoly::term(Monomial::new([0; MAX_RANK], 0, k), 1)
    }

    /// c0 + c1·m
    pub fn binomial(c0: i64, c1: i64, m: Monomial) -> LaurentPoly {
        LaurentPoly::from_terms(vec![(Monomial::ONE, Int::from(c0)), (m, Int::from(c1))])
    }

    /// 1 - e^λ
    pub fn one_minus_e(lambda: Weight) -> LaurentPoly {
        LaurentPoly::binomial(1, -1, Monomial::e(lambda))
    }

    /// 1 + y e^λ
    pub fn one_plus_ye(lambda: Weight) -> LaurentPoly {
        LaurentPoly::binomial(1, 1, Monomial::new(lambda, 1, 0))
    }

    /// Sorts and combines arbitrary terms.
    pub fn from_terms(mut terms: Vec<(Monomial, Int)>) -> LaurentPoly {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Monomial, Int)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += &c,
                _ => {
                    if let Some(last) = out.last() {
                        if last.1.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some(last) = out.last() {
            if last.1.is_zero() {
                out.pop();
            }
        }
        LaurentPoly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Int)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Int)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_monomial(&self) -> Option<(&Monomial, &Int)> {
        if self.terms.len() == 1 {
            Some((&self.terms[0].0, &self.terms[0].1))
        } else {
            None
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, Int)> {
        self.terms.last()
    }

    pub fn coeff(&self, m: &Monomial) -> Int {
        match self.terms.binary_search_by(|t| t.0.cmp(m)) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => Int::ZERO,
        }
    }

    /// True when no term involves e^λ.
    pub fn is_weight_free(&self) -> bool {
        self.terms.iter().all(|(m, _)| !m.has_weight())
    }

    pub fn scale(&self, c: &Int) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect() }
    }

    /// Multiplication by a monomial keeps the order.
    pub fn shift(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Int) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect() }
    }

    fn merge(a: &[(Monomial, Int)], b: &[(Monomial, Int)], negate_b: bool) -> Vec<(Monomial, Int)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, if negate_b { -&b[j].1 } else { b[j].1.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            out.push((t.0, if negate_b { -&t.1 } else { t.1.clone() }));
        }
        out
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: Self::merge(&self.terms, &o.terms, false) }
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        LaurentPoly { terms: Self::merge(&self.terms, &o.terms, true) }
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || o.is_zero() {
            return LaurentPoly::zero();
        }
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        if small.len() == 1 {
            return big.mul_term(&small.terms[0].0, &small.terms[0].1);
        }
        if small.len() * big.len() > 4096 {
            let mut acc: HashMap<Monomial, Int> = HashMap::with_capacity(small.len() * big.len() / 2);
            for (m1, c1) in &small.terms {
                for (m2, c2) in &big.terms {
                    acc.entry(m1.mul(m2)).or_insert(Int::ZERO).add_mul(c1, c2);
                }
            }
            let mut terms: Vec<(Monomial, Int)> = acc.into_iter().filter(|t| !t.1.is_zero()).collect();
            terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
            return LaurentPoly { terms };
        }
        // each row stays sorted; merge rows pairwise
        let mut rows: Vec<Vec<(Monomial, Int)>> =
            small.terms.iter().map(|(m, c)| big.mul_term(m, c).terms).collect();
        while rows.len() > 1 {
            let mut next = Vec::with_capacity(rows.len().div_ceil(2));
            let mut it = rows.into_iter();
            while let Some(a) = it.next() {
                match it.next() {
                    Some(b) => next.push(Self::merge(&a, &b, false)),
                    None => next.push(a),
                }
            }
            rows = next;
        }
        LaurentPoly { terms: rows.pop().unwrap() }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut r = LaurentPoly::one();
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn product<'a>(it: impl IntoIterator<Item = &'a LaurentPoly>) -> LaurentPoly {
        let mut r = LaurentPoly::one();
        for p in it {
            r = r.mul(p);
        }
        r
    }

    /// Applies a monomial map that is a group homomorphism and resorts.
    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())).collect())
    }

    /// e^λ ↦ e^{-λ}, y ↦ y^{-1}, z ↦ z^{-1}.
    pub fn dual(&self) -> LaurentPoly {
        let mut terms: Vec<(Monomial, Int)> = self.terms.iter().map(|(m, c)| (m.inv(), c.clone())).collect();
        terms.reverse();
        LaurentPoly { terms }
    }

    /// e^λ ↦ e^{f(λ)} for a lattice map f.
    pub fn map_weights(&self, f: impl Fn(&Weight) -> Weight) -> LaurentPoly {
        self.map_monomials(|m| Monomial { e: f(&m.e), y: m.y, z: m.z })
    }

    /// e^λ ↦ e^{-λ} only.
    pub fn invert_weights(&self) -> LaurentPoly {
        self.map_weights(|w| crate::weyl::neg_weight(w))
    }

    /// y ↦ y^{-1} only.
    pub fn bar_y(&self) -> LaurentPoly {
        self.map_monomials(|m| Monomial { e: m.e, y: -m.y, z: m.z })
    }

    /// All e^λ ↦ 1.
    pub fn weights_to_one(&self) -> LaurentPoly {
        self.map_monomials(|m| Monomial { e: [0; MAX_RANK], y: m.y, z: m.z })
    }

    pub fn content(&self) -> Int {
        let mut g = Int::ZERO;
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn coord_bounds(&self) -> ([i32; NCOORD], [i32; NCOORD]) {
        let mut lo = [i32::MAX; NCOORD];
        let mut hi = [i32::MIN; NCOORD];
        for (m, _) in &self.terms {
            for j in 0..NCOORD {
                let v = m.coord(j);
                lo[j] = lo[j].min(v);
                hi[j] = hi[j].max(v);
            }
        }
        (lo, hi)
    }

    /// Exact quotient `self / b`, or None when `b` does not divide `self`.
    pub fn exact_divide(&self, b: &LaurentPoly) -> Option<LaurentPoly> {
        assert!(!b.is_zero(), "exact_divide by zero");
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        match b.len() {
            1 => {
                let (m, c) = (&b.terms[0].0, &b.terms[0].1);
                let inv = m.inv();
                let mut terms = Vec::with_capacity(self.len());
                for (t, a) in &self.terms {
                    terms.push((t.mul(&inv), a.div_exact(c)?));
                }
                Some(LaurentPoly { terms })
            }
            2 => self.divide_binomial(b),
            _ => self.divide_general(b),
        }
    }

    // b = c0·m0 + c1·m1 with m0 < m1: divide chain by chain along d = m1/m0.
    fn divide_binomial(&self, b: &LaurentPoly) -> Option<LaurentPoly> {
        let (m0, c0) = (&b.terms[0].0, &b.terms[0].1);
        let (m1, c1) = (&b.terms[1].0, &b.terms[1].1);
        let d = m1.div(m0);
        let j = (0..NCOORD).find(|&j| d.coord(j) != 0).unwrap();
        let dj = d.coord(j);
        debug_assert!(dj > 0);
        let mut chains: HashMap<Monomial, Vec<(i32, &Int)>> = HashMap::new();
        for (m, a) in &self.terms {
            let t = m.coord(j).div_euclid(dj);
            let base = m.mul(&d.pow(-t));
            chains.entry(base).or_default().push((t, a));
        }
        let inv0 = m0.inv();
        let mut out = Vec::with_capacity(self.len());
        for (base, chain) in chains {
            // a_k = c0 q_k + c1 q_{k-1}, chain sorted by k since d is positive in the order
            let mut prev: Option<(i32, Int)> = None;
            let mut idx = 0;
            let mut k = chain[0].0;
            let kmax = chain.last().unwrap().0;
            while k < kmax {
                let a_k = if idx < chain.len() && chain[idx].0 == k {
                    idx += 1;
                    chain[idx - 1].1.clone()
                } else {
                    Int::ZERO
                };
                let mut r = a_k;
                if let Some((pk, q)) = &prev {
                    if *pk == k - 1 {
                        r = &r - &(c1 * q);
                    }
                }
                let q = r.div_exact(c0)?;
                if q.is_zero() {
                    prev = None;
                    // skip ahead to the next nonzero coefficient
                    if idx < chain.len() {
                        k = chain[idx].0;
                        continue;
                    }
                } else {
                    out.push((base.mul(&d.pow(k)).mul(&inv0), q.clone()));
                    prev = Some((k, q));
                }
                k += 1;
            }
            // top coefficient must be c1·q_{kmax-1}
            let top = chain.last().unwrap().1;
            let expect = match &prev {
                Some((pk, q)) if *pk == kmax - 1 => c1 * q,
                _ => Int::ZERO,
            };
            if idx != chain.len() - 1 || *top != expect {
                return None;
            }
        }
        out.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Some(LaurentPoly { terms: out })
    }

    fn divide_general(&self, b: &LaurentPoly) -> Option<LaurentPoly> {
        let (alo, ahi) = self.coord_bounds();
        let (blo, bhi) = b.coord_bounds();
        let mut lo = [0; NCOORD];
        let mut hi = [0; NCOORD];
        for j in 0..NCOORD {
            lo[j] = alo[j] - blo[j];
            hi[j] = ahi[j] - bhi[j];
            if lo[j] > hi[j] {
                return None;
            }
        }
        let (bm, bc) = b.leading().unwrap().clone();
        let mut r = self.clone();
        let mut q = Vec::new();
        while let Some((rm, rc)) = r.leading().cloned() {
            let c = rc.div_exact(&bc)?;
            let m = rm.div(&bm);
            if (0..NCOORD).any(|j| m.coord(j) < lo[j] || m.coord(j) > hi[j]) {
                return None;
            }
            r = r.sub(&b.mul_term(&m, &c));
            q.push((m, c));
        }
        q.reverse();
        Some(LaurentPoly { terms: q })
    }

    /// Max and min exponent of y.
    pub fn y_range(&self) -> Option<(i32, i32)> {
        if self.is_zero() {
            return None;
        }
        let lo = self.terms.iter().map(|t| t.0.y).min().unwrap();
        let hi = self.terms.iter().map(|t| t.0.y).max().unwrap();
        Some((lo, hi))
    }

    pub fn z_range(&self) -> Option<(i32, i32)> {
        if self.is_zero() {
            return None;
        }
        let lo = self.terms.iter().map(|t| t.0.z).min().unwrap();
        let hi = self.terms.iter().map(|t| t.0.z).max().unwrap();
        Some((lo, hi))
    }

    /// Substitute `var ↦ (p/r)·y^a z^b` where var is y (`which = 0`) or z (`which = 1`).
    /// Returns (numerator, integer denominator).
    pub(crate) fn substitute_var(&self, which: usize, p: &Int, r: &Int, a: i32, b: i32) -> Option<(LaurentPoly, Int)> {
        let coord = MAX_RANK + which;
        if self.is_zero() {
            return Some((LaurentPoly::zero(), Int::ONE));
        }
        let kmin = self.terms.iter().map(|t| t.0.coord(coord)).min().unwrap();
        let kmax = self.terms.iter().map(|t| t.0.coord(coord)).max().unwrap();
        let big_a = (-kmin).max(0);
        let big_b = kmax.max(0);
        if p.is_zero() && big_a > 0 {
            return None;
        }
        let mut terms = Vec::with_capacity(self.len());
        for (m, c) in &self.terms {
            let k = m.coord(coord);
            let f = &p.pow((k + big_a) as u32) * &r.pow((big_b - k) as u32);
            let mut mm = *m;
            *mm.coord_mut(coord) = 0;
            mm.y += k * a;
            mm.z += k * b;
            terms.push((mm, c * &f));
        }
        let den = &p.pow(big_a as u32) * &r.pow(big_b as u32);
        Some((LaurentPoly::from_terms(terms), den))
    }

    pub fn to_display(&self, rank: usize) -> String {
        fmt_poly(self, rank, &|w: &Weight| format!("e^{:?}", &w[..rank]))
    }
}

/// Generic renderer; `ew` renders e^λ for nonzero λ.
pub fn fmt_poly(p: &LaurentPoly, _rank: usize, ew: &dyn Fn(&Weight) -> String) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let mut factors = Vec::new();
        if m.y != 0 {
            factors.push(if m.y == 1 { "y".to_string() } else { format!("y^{}", m.y) });
        }
        if m.z != 0 {
            factors.push(if m.z == 1 { "z".to_string() } else { format!("z^{}", m.z) });
        }
        if m.has_weight() {
            factors.push(ew(&m.e));
        }
        let neg = c.is_negative();
        let a = c.abs();
        if k == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if factors.is_empty() {
            s.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                s.push_str(&a.to_string());
                s.push('*');
            }
            s.push_str(&factors.join("*"));
        }
    }
    s
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rank = self
            .terms
            .iter()
            .map(|(m, _)| m.e.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1))
            .max()
            .unwrap_or(0)
            .max(1);
        write!(f, "{}", self.to_display(rank))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(self, o)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::sub(self, o)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, o)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}
