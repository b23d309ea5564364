//! Root systems, Weyl groups and Bruhat order.
//!
//! Weights are written in the fundamental-weight basis, so the simple root
//! `α_j` is column `j` of the Cartan matrix `a_ij = <α_i^∨, α_j>` and
//! `s_i(λ) = λ - λ_i α_i`.
//!
//! Numbering follows Bourbaki:
//!
//! | type | long / short                     | Dynkin edges                        |
//! |------|----------------------------------|-------------------------------------|
//! | A_n  | simply laced                     | i - i+1                             |
//! | B_n  | α_n short                        | i - i+1, a_{n,n-1} = -2             |
//! | C_n  | α_n long                         | i - i+1, a_{n-1,n} = -2             |
//! | D_n  | simply laced, n >= 4             | i - i+1 (i < n-1), n-2 - n          |
//! | E_n  | simply laced                     | 1-3, 3-4, 4-5, ..., 2-4             |
//! | F_4  | α1, α2 long; α3, α4 short        | 1-2, 2-3 (a_32 = -2), 3-4           |
//! | G_2  | α1 short, α2 long                | a_12 = -3, a_21 = -1                |

use crate::error::{Error, Result};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::any::Any;
use std::sync::{Arc, Mutex};

pub const MAX_RANK: usize = 8;
pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

/// Integer weight in fundamental-weight coordinates; slots past the rank are zero.
pub type Weight = [i32; MAX_RANK];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl LieType {
    pub fn parse(s: &str) -> Result<LieType> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => LieType::A,
            "B" => LieType::B,
            "C" => LieType::C,
            "D" => LieType::D,
            "E" => LieType::E,
            "F" => LieType::F,
            "G" => LieType::G,
            _ => return Err(Error::Config(format!("unknown Lie type '{s}'"))),
        })
    }

    pub fn letter(self) -> char {
        match self {
            LieType::A => 'A',
            LieType::B => 'B',
            LieType::C => 'C',
            LieType::D => 'D',
            LieType::E => 'E',
            LieType::F => 'F',
            LieType::G => 'G',
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub simple: Weight,
    pub weight: Weight,
    pub height: i32,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub lie_type: LieType,
    pub rank: usize,
    pub cartan: Vec<Vec<i32>>,
    pub positive_roots: Vec<Root>,
    lookup: HashMap<Weight, usize>,
    // inverse Cartan as adj / det
    cartan_adj: Vec<Vec<i64>>,
    cartan_det: i64,
}

/// A root given by its index among the positive roots and a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignedRoot {
    pub index: usize,
    pub positive: bool,
}

fn cartan_matrix(t: LieType, n: usize) -> Result<Vec<Vec<i32>>> {
    let bad = || Error::Config(format!("invalid root system ({t}, {n})"));
    let ok = match t {
        LieType::A => n >= 1,
        LieType::B | LieType::C => n >= 2,
        LieType::D => n >= 4,
        LieType::E => (6..=8).contains(&n),
        LieType::F => n == 4,
        LieType::G => n == 2,
    };
    if t == LieType::D && n == 3 {
        return Err(Error::Config(
            "invalid root system (D, 3): D3 is isomorphic to A3, use (A, 3)".into(),
        ));
    }
    if !ok || n > MAX_RANK {
        return Err(bad());
    }
    let mut c = vec![vec![0i32; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut edge = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match t {
        LieType::A | LieType::B | LieType::C | LieType::F => {
            for i in 0..n - 1 {
                edge(i, i + 1);
            }
        }
        LieType::D => {
            for i in 0..n - 2 {
                edge(i, i + 1);
            }
            edge(n - 3, n - 1);
        }
        LieType::E => {
            edge(0, 2);
            edge(1, 3);
            for i in 2..n - 1 {
                edge(i, i + 1);
            }
        }
        LieType::G => edge(0, 1),
    }
    match t {
        LieType::B => c[n - 1][n - 2] = -2,
        LieType::C => c[n - 2][n - 1] = -2,
        LieType::F => c[2][1] = -2,
        LieType::G => c[0][1] = -3,
        _ => {}
    }
    Ok(c)
}

fn known_root_count(t: LieType, n: usize) -> usize {
    match t {
        LieType::A => n * (n + 1) / 2,
        LieType::B | LieType::C => n * n,
        LieType::D => n * (n - 1),
        LieType::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        LieType::F => 24,
        LieType::G => 6,
    }
}

/// |W| without enumerating.
pub fn weyl_order(t: LieType, n: usize) -> u128 {
    let fact = |k: usize| (1..=k as u128).product::<u128>();
    match t {
        LieType::A => fact(n + 1),
        LieType::B | LieType::C => (1u128 << n) * fact(n),
        LieType::D => (1u128 << (n - 1)) * fact(n),
        LieType::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        LieType::F => 1_152,
        LieType::G => 12,
    }
}

fn determinant_and_adjugate(m: &[Vec<i32>]) -> (i64, Vec<Vec<i64>>) {
    let n = m.len();
    // fraction-free elimination on i128
    let det = |sub: &Vec<Vec<i128>>| -> i128 {
        let k = sub.len();
        if k == 0 {
            return 1;
        }
        let mut a = sub.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for p in 0..k {
            if a[p][p] == 0 {
                match (p + 1..k).find(|&r| a[r][p] != 0) {
                    Some(r) => {
                        a.swap(p, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for r in p + 1..k {
                for c in p + 1..k {
                    a[r][c] = (a[r][c] * a[p][p] - a[r][p] * a[p][c]) / prev;
                }
            }
            prev = a[p][p];
        }
        sign * a[k - 1][k - 1]
    };
    let full: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let d = det(&full);
    let mut adj = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i128>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| full[r][c]).collect())
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i][j] = (s * det(&minor)) as i64;
        }
    }
    (d as i64, adj)
}

impl RootSystem {
    pub fn new(lie_type: LieType, rank: usize) -> Result<RootSystem> {
        let cartan = cartan_matrix(lie_type, rank)?;
        let (cartan_det, cartan_adj) = determinant_and_adjugate(&cartan);
        let mut rs = RootSystem {
            lie_type,
            rank,
            cartan,
            positive_roots: Vec::new(),
            lookup: HashMap::new(),
            cartan_adj,
            cartan_det,
        };
        rs.close_roots();
        if rs.positive_roots.len() != known_root_count(lie_type, rank) {
            return Err(Error::invariant(
                "root count",
                format!("({lie_type}, {rank}) produced {} roots", rs.positive_roots.len()),
            ));
        }
        Ok(rs)
    }

    fn weight_of_simple(&self, c: &Weight) -> Weight {
        let mut w = [0; MAX_RANK];
        for i in 0..self.rank {
            w[i] = (0..self.rank).map(|j| self.cartan[i][j] * c[j]).sum();
        }
        w
    }

    // Closure by root strings, processed by height.
    fn close_roots(&mut self) {
        let n = self.rank;
        let mut by_simple: HashMap<Weight, ()> = HashMap::new();
        let mut layer: Vec<Weight> = (0..n)
            .map(|i| {
                let mut c = [0; MAX_RANK];
                c[i] = 1;
                c
            })
            .collect();
        let mut all = Vec::new();
        while !layer.is_empty() {
            for c in &layer {
                by_simple.insert(*c, ());
                all.push(*c);
            }
            let mut next = Vec::new();
            for c in &layer {
                let wt = self.weight_of_simple(c);
                for i in 0..n {
                    let mut p = 0;
                    let mut d = *c;
                    loop {
                        d[i] -= 1;
                        if by_simple.contains_key(&d) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - wt[i];
                    if q > 0 {
                        let mut up = *c;
                        up[i] += 1;
                        if !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            layer = next;
        }
        all.sort_by_key(|c| (c.iter().sum::<i32>(), std::cmp::Reverse(*c)));
        self.positive_roots = all
            .into_iter()
            .map(|c| Root { simple: c, weight: self.weight_of_simple(&c), height: c.iter().sum() })
            .collect();
        self.lookup = self.positive_roots.iter().enumerate().map(|(k, r)| (r.weight, k)).collect();
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// dim G/B.
    pub fn dim(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        self.positive_roots.iter().find(|r| r.height == 1 && r.simple[i] == 1).unwrap().weight
    }

    pub fn rho(&self) -> Weight {
        let mut w = [0; MAX_RANK];
        w[..self.rank].fill(1);
        w
    }

    pub fn two_rho(&self) -> Weight {
        let mut w = [0; MAX_RANK];
        w[..self.rank].fill(2);
        w
    }

    pub fn reflect(&self, i: usize, lambda: &Weight) -> Weight {
        let mut out = *lambda;
        let k = lambda[i];
        if k != 0 {
            for (j, o) in out.iter_mut().enumerate().take(self.rank) {
                *o -= k * self.cartan[j][i];
            }
        }
        out
    }

    /// Look up a weight among the roots.
    pub fn find_root(&self, lambda: &Weight) -> Option<SignedRoot> {
        if let Some(&k) = self.lookup.get(lambda) {
            return Some(SignedRoot { index: k, positive: true });
        }
        let neg = neg_weight(lambda);
        self.lookup.get(&neg).map(|&k| SignedRoot { index: k, positive: false })
    }

    pub fn root_weight(&self, r: SignedRoot) -> Weight {
        let w = self.positive_roots[r.index].weight;
        if r.positive {
            w
        } else {
            neg_weight(&w)
        }
    }

    /// Simple-root coordinates of a weight, when it lies in the root lattice.
    pub fn simple_coords(&self, lambda: &Weight) -> Option<Weight> {
        let mut out = [0; MAX_RANK];
        for (i, o) in out.iter_mut().enumerate().take(self.rank) {
            let num: i64 = (0..self.rank).map(|j| self.cartan_adj[i][j] * lambda[j] as i64).sum();
            if num % self.cartan_det != 0 {
                return None;
            }
            *o = (num / self.cartan_det) as i32;
        }
        Some(out)
    }

    /// Rational simple-root coordinates as (numerator, common denominator).
    pub fn simple_coords_rational(&self, lambda: &Weight) -> (Vec<i64>, i64) {
        let num = (0..self.rank)
            .map(|i| (0..self.rank).map(|j| self.cartan_adj[i][j] * lambda[j] as i64).sum())
            .collect();
        (num, self.cartan_det)
    }

    pub fn weight_from_simple(&self, c: &Weight) -> Weight {
        self.weight_of_simple(c)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.lie_type, self.rank)
    }
}

pub fn neg_weight(w: &Weight) -> Weight {
    let mut o = *w;
    for x in o.iter_mut() {
        *x = -*x;
    }
    o
}

pub fn add_weight(a: &Weight, b: &Weight) -> Weight {
    let mut o = *a;
    for (x, y) in o.iter_mut().zip(b.iter()) {
        *x += *y;
    }
    o
}

pub fn is_zero_weight(w: &Weight) -> bool {
    w.iter().all(|&x| x == 0)
}

/// Handle to an element of a `WeylGroup`: its position in (length, word) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug)]
pub struct WeylGroup {
    pub rs: Arc<RootSystem>,
    rho_image: Vec<Weight>,
    words: Vec<Vec<u8>>,
    left: Vec<u32>,
    right: Vec<u32>,
    inverse: Vec<u32>,
    by_rho: HashMap<Weight, u32>,
    reflections: Vec<u32>,
    // for each element the signed images of the positive roots, filled for small groups
    root_action: Vec<Vec<SignedRoot>>,
}

impl WeylGroup {
    pub fn new(rs: Arc<RootSystem>) -> Result<WeylGroup> {
        WeylGroup::with_cap(rs, DEFAULT_WEYL_CAP)
    }

    pub fn with_cap(rs: Arc<RootSystem>, cap: usize) -> Result<WeylGroup> {
        let order = weyl_order(rs.lie_type, rs.rank);
        if order > cap as u128 {
            return Err(Error::Resource(format!(
                "Weyl group of {} has {order} elements, above the cap of {cap}",
                rs.label()
            )));
        }
        let n = rs.rank;
        // BFS by left multiplication keyed on w·ρ.
        let rho = rs.rho();
        let mut seen: HashMap<Weight, ()> = HashMap::new();
        let mut order_list = vec![rho];
        seen.insert(rho, ());
        let mut queue = VecDeque::from([rho]);
        while let Some(v) = queue.pop_front() {
            for i in 0..n {
                if v[i] > 0 {
                    let u = rs.reflect(i, &v);
                    if seen.insert(u, ()).is_none() {
                        order_list.push(u);
                        queue.push_back(u);
                    }
                }
            }
        }
        // Canonical words: first letter is the least left descent.
        let mut word_of: HashMap<Weight, Vec<u8>> = HashMap::with_capacity(order_list.len());
        for v in &order_list {
            let mut word = Vec::new();
            let mut cur = *v;
            loop {
                match (0..n).find(|&i| cur[i] < 0) {
                    Some(i) => {
                        word.push(i as u8);
                        cur = rs.reflect(i, &cur);
                        if let Some(rest) = word_of.get(&cur) {
                            word.extend_from_slice(rest);
                            break;
                        }
                    }
                    None => break,
                }
            }
            word_of.insert(*v, word);
        }
        let mut items: Vec<(Vec<u8>, Weight)> = order_list.into_iter().map(|v| (word_of[&v].clone(), v)).collect();
        items.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        let size = items.len();
        let by_rho: HashMap<Weight, u32> = items.iter().enumerate().map(|(k, (_, v))| (*v, k as u32)).collect();
        let rho_image: Vec<Weight> = items.iter().map(|(_, v)| *v).collect();
        let words: Vec<Vec<u8>> = items.into_iter().map(|(w, _)| w).collect();
        let mut left = vec![0u32; size * n];
        for k in 0..size {
            for i in 0..n {
                left[k * n + i] = by_rho[&rs.reflect(i, &rho_image[k])];
            }
        }
        let mut g = WeylGroup {
            rs,
            rho_image,
            words,
            left,
            right: Vec::new(),
            inverse: vec![0; size],
            by_rho,
            reflections: Vec::new(),
            root_action: Vec::new(),
        };
        for k in 0..size {
            // w^{-1} has the reversed word; build it by left multiplications
            let mut x = 0u32;
            for &a in &g.words[k] {
                x = g.left[x as usize * n + a as usize];
            }
            g.inverse[k] = x;
        }
        let mut right = vec![0u32; size * n];
        for k in 0..size {
            let inv = g.inverse[k] as usize;
            for i in 0..n {
                right[k * n + i] = g.inverse[g.left[inv * n + i] as usize];
            }
        }
        g.right = right;
        g.build_reflections();
        if size <= 50_000 {
            g.root_action = (0..size)
                .map(|k| {
                    g.rs.positive_roots
                        .iter()
                        .map(|r| g.rs.find_root(&g.act(Elem(k as u32), &r.weight)).expect("roots permuted"))
                        .collect()
                })
                .collect();
        }
        Ok(g)
    }

    fn build_reflections(&mut self) {
        let n = self.rs.rank;
        let np = self.rs.num_positive_roots();
        let mut refl = vec![u32::MAX; np];
        let mut found = 0;
        'outer: for k in 0..self.size() {
            for i in 0..n {
                let beta = self.act(Elem(k as u32), &self.rs.simple_root(i));
                if let Some(r) = self.rs.find_root(&beta) {
                    if r.positive && refl[r.index] == u32::MAX {
                        // s_β = w s_i w^{-1}
                        let mut x = self.right[k * n + i];
                        for &a in self.words[k].iter().rev() {
                            x = self.right[x as usize * n + a as usize];
                        }
                        refl[r.index] = x;
                        found += 1;
                        if found == np {
                            break 'outer;
                        }
                    }
                }
            }
        }
        self.reflections = refl;
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator {
        (0..self.size() as u32).map(Elem)
    }

    pub fn identity(&self) -> Elem {
        Elem(0)
    }

    pub fn longest(&self) -> Elem {
        Elem(self.size() as u32 - 1)
    }

    pub fn simple(&self, i: usize) -> Elem {
        Elem(self.left[i])
    }

    pub fn word(&self, w: Elem) -> &[u8] {
        &self.words[w.idx()]
    }

    pub fn length(&self, w: Elem) -> usize {
        self.words[w.idx()].len()
    }

    pub fn rho_image(&self, w: Elem) -> Weight {
        self.rho_image[w.idx()]
    }

    /// s_i w
    pub fn lmul(&self, i: usize, w: Elem) -> Elem {
        Elem(self.left[w.idx() * self.rank() + i])
    }

    /// w s_i
    pub fn rmul(&self, w: Elem, i: usize) -> Elem {
        Elem(self.right[w.idx() * self.rank() + i])
    }

    pub fn mul(&self, u: Elem, v: Elem) -> Elem {
        let mut x = u;
        for &a in self.word(v) {
            x = self.rmul(x, a as usize);
        }
        x
    }

    pub fn inverse(&self, w: Elem) -> Elem {
        Elem(self.inverse[w.idx()])
    }

    pub fn from_word(&self, word: &[usize]) -> Result<Elem> {
        let mut x = self.identity();
        for &a in word {
            if a >= self.rank() {
                return Err(Error::Usage(format!("simple reflection index {} out of range", a + 1)));
            }
            x = self.rmul(x, a);
        }
        Ok(x)
    }

    pub fn is_reduced(&self, word: &[usize]) -> bool {
        let mut x = self.identity();
        for (k, &a) in word.iter().enumerate() {
            if a >= self.rank() {
                return false;
            }
            x = self.rmul(x, a);
            if self.length(x) != k + 1 {
                return false;
            }
        }
        true
    }

    pub fn by_rho_image(&self, v: &Weight) -> Option<Elem> {
        self.by_rho.get(v).map(|&k| Elem(k))
    }

    /// wλ
    pub fn act(&self, w: Elem, lambda: &Weight) -> Weight {
        let mut v = *lambda;
        for &a in self.word(w).iter().rev() {
            v = self.rs.reflect(a as usize, &v);
        }
        v
    }

    /// Action matrix on weight coordinates; column j is wω_j.
    pub fn action_matrix(&self, w: Elem) -> Vec<Vec<i32>> {
        let n = self.rank();
        let mut m = vec![vec![0; n]; n];
        for j in 0..n {
            let mut e = [0; MAX_RANK];
            e[j] = 1;
            let col = self.act(w, &e);
            for i in 0..n {
                m[i][j] = col[i];
            }
        }
        m
    }

    /// w(β) for a positive root β given by index.
    pub fn act_root(&self, w: Elem, index: usize) -> SignedRoot {
        if !self.root_action.is_empty() {
            return self.root_action[w.idx()][index];
        }
        self.rs.find_root(&self.act(w, &self.rs.positive_roots[index].weight)).unwrap()
    }

    pub fn apply_to_root(&self, w: Elem, r: SignedRoot) -> SignedRoot {
        let s = self.act_root(w, r.index);
        SignedRoot { index: s.index, positive: s.positive == r.positive }
    }

    pub fn reflection(&self, index: usize) -> Elem {
        Elem(self.reflections[index])
    }

    pub fn reflection_of(&self, beta: &Weight) -> Result<Elem> {
        match self.rs.find_root(beta) {
            Some(r) if r.positive => Ok(self.reflection(r.index)),
            _ => Err(Error::Usage(format!("{beta:?} is not a positive root"))),
        }
    }

    pub fn is_right_descent(&self, w: Elem, i: usize) -> bool {
        self.length(self.rmul(w, i)) < self.length(w)
    }

    pub fn is_left_descent(&self, w: Elem, i: usize) -> bool {
        self.rho_image[w.idx()][i] < 0
    }

    pub fn right_descents(&self, w: Elem) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.is_right_descent(w, i)).collect()
    }

    pub fn left_descents(&self, w: Elem) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.is_left_descent(w, i)).collect()
    }

    /// Bruhat order by descent along the canonical word of `w`.
    pub fn bruhat_leq(&self, u: Elem, w: Elem) -> bool {
        let (mut u, mut w) = (u, w);
        loop {
            if u == w || u.0 == 0 {
                return true;
            }
            let (lu, lw) = (self.length(u), self.length(w));
            if lu >= lw {
                return false;
            }
            let a = *self.word(w).last().unwrap() as usize;
            w = self.rmul(w, a);
            let us = self.rmul(u, a);
            if self.length(us) < lu {
                u = us;
            }
        }
    }

    pub fn bruhat_lt(&self, u: Elem, w: Elem) -> bool {
        u != w && self.bruhat_leq(u, w)
    }

    pub fn lower_interval(&self, w: Elem) -> Vec<Elem> {
        self.elements().filter(|&v| self.bruhat_leq(v, w)).collect()
    }

    pub fn upper_interval(&self, w: Elem) -> Vec<Elem> {
        self.elements().filter(|&v| self.bruhat_leq(w, v)).collect()
    }

    pub fn interval(&self, u: Elem, w: Elem) -> Vec<Elem> {
        self.elements().filter(|&v| self.bruhat_leq(u, v) && self.bruhat_leq(v, w)).collect()
    }

    pub fn comparable_pairs(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for w in self.elements() {
            for u in self.elements() {
                if self.bruhat_leq(u, w) {
                    out.push((u, w));
                }
            }
        }
        out
    }

    pub fn word_string(&self, w: Elem) -> String {
        let word = self.word(w);
        if word.is_empty() {
            return "e".to_string();
        }
        word.iter().map(|a| format!("s{}", a + 1)).collect::<Vec<_>>().join(" ")
    }

    /// Parse "e", "id", "s1 s2", "s1s2", "1 2" or "12" (single digits only in the compact forms).
    pub fn parse_word(&self, s: &str) -> Result<Elem> {
        let t = s.trim();
        if t.is_empty() || t == "e" || t == "id" {
            return Ok(self.identity());
        }
        let mut letters = Vec::new();
        let tokens: Vec<&str> = t.split(|c: char| c.is_whitespace() || c == ',' || c == '*' || c == '.').filter(|x| !x.is_empty()).collect();
        for tok in tokens {
            if tok == "e" || tok == "id" {
                continue;
            }
            if let Some(rest) = tok.strip_prefix('s') {
                // "s1s2" or "s12" style
                for part in rest.split('s') {
                    if part.is_empty() {
                        return Err(Error::Usage(format!("cannot parse Weyl word '{s}'")));
                    }
                    letters.push(part.parse::<usize>().map_err(|_| Error::Usage(format!("cannot parse Weyl word '{s}'")))?);
                }
            } else if tok.chars().all(|c| c.is_ascii_digit()) {
                if tok.len() > 1 && self.rank() <= 9 {
                    letters.extend(tok.chars().map(|c| c.to_digit(10).unwrap() as usize));
                } else {
                    letters.push(tok.parse::<usize>().unwrap());
                }
            } else {
                return Err(Error::Usage(format!("cannot parse Weyl word '{s}'")));
            }
        }
        if letters.iter().any(|&a| a == 0 || a > self.rank()) {
            return Err(Error::Usage(format!("word '{s}' uses a letter outside 1..{}", self.rank())));
        }
        self.from_word(&letters.iter().map(|a| a - 1).collect::<Vec<_>>())
    }
}

/// Root system plus its Weyl group, the shared context for everything else.
/// Also holds the in-process cache of computed class families.
pub struct Flag {
    pub rs: Arc<RootSystem>,
    pub w: WeylGroup,
    root_images: Vec<Vec<Weight>>,
    cache: Mutex<HashMap<String, Arc<dyn Any + Send + Sync>>>,
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Flag({})", self.rs.label())
    }
}

impl Flag {
    pub fn new(t: LieType, rank: usize) -> Result<Arc<Flag>> {
        Flag::with_cap(t, rank, DEFAULT_WEYL_CAP)
    }

    pub fn with_cap(t: LieType, rank: usize, cap: usize) -> Result<Arc<Flag>> {
        let rs = Arc::new(RootSystem::new(t, rank)?);
        let w = WeylGroup::with_cap(rs.clone(), cap)?;
        let root_images = if w.size() <= 50_000 {
            w.elements()
                .map(|e| (0..rs.dim()).map(|k| rs.root_weight(w.act_root(e, k))).collect())
                .collect()
        } else {
            Vec::new()
        };
        Ok(Arc::new(Flag { rs, w, root_images, cache: Mutex::new(HashMap::new()) }))
    }

    pub fn dim(&self) -> usize {
        self.rs.dim()
    }

    /// w(β_k) as a weight.
    pub fn root_image(&self, w: Elem, k: usize) -> Weight {
        if self.root_images.is_empty() {
            return self.rs.root_weight(self.w.act_root(w, k));
        }
        self.root_images[w.idx()][k]
    }

    /// w(α_i) as a weight.
    pub fn simple_image(&self, w: Elem, i: usize) -> Weight {
        self.w.act(w, &self.rs.simple_root(i))
    }

    /// Memoized value under `key`; the closure runs without holding the lock.
    pub fn memo<T: Any + Send + Sync>(&self, key: &str, f: impl FnOnce() -> Result<T>) -> Result<Arc<T>> {
        if let Some(v) = self.cache.lock().unwrap().get(key) {
            if let Ok(t) = v.clone().downcast::<T>() {
                return Ok(t);
            }
        }
        let v = Arc::new(f()?);
        self.cache.lock().unwrap().insert(key.to_string(), v.clone());
        Ok(v)
    }

    pub fn cached<T: Any + Send + Sync>(&self, key: &str) -> Option<Arc<T>> {
        self.cache.lock().unwrap().get(key).and_then(|v| v.clone().downcast::<T>().ok())
    }

    pub fn insert_cached<T: Any + Send + Sync>(&self, key: &str, v: T) {
        self.cache.lock().unwrap().insert(key.to_string(), Arc::new(v));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(t: LieType, n: usize) -> WeylGroup {
        WeylGroup::new(Arc::new(RootSystem::new(t, n).unwrap())).unwrap()
    }

    fn all_types() -> Vec<(LieType, usize)> {
        use LieType::*;
        vec![(A, 1), (A, 2), (A, 3), (A, 4), (B, 2), (B, 3), (C, 3), (D, 4), (G, 2), (F, 4), (E, 6)]
    }

    #[test]
    fn root_counts_and_weights() {
        for (t, n) in all_types() {
            let rs = RootSystem::new(t, n).unwrap();
            assert_eq!(rs.positive_roots.len(), known_root_count(t, n));
            for r in &rs.positive_roots {
                for i in 0..n {
                    let s: i32 = (0..n).map(|j| rs.cartan[i][j] * r.simple[j]).sum();
                    assert_eq!(s, r.weight[i]);
                }
                assert!(r.simple.iter().all(|&c| c >= 0));
            }
        }
    }

    #[test]
    fn b2_roots() {
        let rs = RootSystem::new(LieType::B, 2).unwrap();
        let mut got: Vec<(i32, i32)> = rs.positive_roots.iter().map(|r| (r.simple[0], r.simple[1])).collect();
        got.sort();
        assert_eq!(got, vec![(0, 1), (1, 0), (1, 1), (1, 2)]);
        assert_eq!(rs.cartan, vec![vec![2, -1], vec![-2, 2]]);
    }

    #[test]
    fn invalid_types() {
        assert!(matches!(RootSystem::new(LieType::D, 3), Err(Error::Config(m)) if m.contains("A3")));
        assert!(RootSystem::new(LieType::G, 3).is_err());
        assert!(RootSystem::new(LieType::B, 1).is_err());
        assert!(RootSystem::new(LieType::E, 5).is_err());
        let rs = Arc::new(RootSystem::new(LieType::E, 7).unwrap());
        assert!(matches!(WeylGroup::new(rs), Err(Error::Resource(_))));
    }

    #[test]
    fn enumeration_orders() {
        for (t, n) in all_types() {
            let g = group(t, n);
            assert_eq!(g.size() as u128, weyl_order(t, n));
            assert_eq!(g.length(g.longest()), g.rs.dim());
            assert_eq!(g.length(g.identity()), 0);
        }
        let g = group(LieType::A, 2);
        let lens: Vec<usize> = g.elements().map(|w| g.length(w)).collect();
        assert_eq!(lens, vec![0, 1, 1, 2, 2, 3]);
        let b2 = group(LieType::B, 2);
        assert_eq!(b2.size(), 8);
        assert_eq!(b2.longest(), b2.parse_word("s1 s2 s1 s2").unwrap());
    }

    #[test]
    fn words_are_lex_least_reduced() {
        // brute force over all words of each length
        for (t, n) in [(LieType::A, 3), (LieType::B, 2), (LieType::G, 2)] {
            let g = group(t, n);
            let mut best: HashMap<Elem, Vec<u8>> = HashMap::new();
            let mut frontier: Vec<Vec<u8>> = vec![vec![]];
            for len in 0..=g.rs.dim() {
                let mut next = Vec::new();
                for w in &frontier {
                    let word: Vec<usize> = w.iter().map(|&a| a as usize).collect();
                    if g.is_reduced(&word) {
                        let e = g.from_word(&word).unwrap();
                        let b = best.entry(e).or_insert_with(|| w.clone());
                        if w < b {
                            *b = w.clone();
                        }
                        if len < g.rs.dim() {
                            for a in 0..n as u8 {
                                let mut v = w.clone();
                                v.push(a);
                                next.push(v);
                            }
                        }
                    }
                }
                frontier = next;
            }
            for w in g.elements() {
                assert_eq!(g.word(w), &best[&w][..]);
            }
        }
    }

    #[test]
    fn length_is_inversion_count() {
        for (t, n) in all_types().into_iter().filter(|p| p.1 <= 4) {
            let g = group(t, n);
            for w in g.elements() {
                let inv = (0..g.rs.dim()).filter(|&k| !g.act_root(w, k).positive).count();
                assert_eq!(inv, g.length(w));
            }
        }
    }

    #[test]
    fn group_laws() {
        for (t, n) in [(LieType::A, 3), (LieType::B, 3), (LieType::G, 2)] {
            let g = group(t, n);
            let w0 = g.longest();
            for u in g.elements() {
                assert_eq!(g.mul(u, g.inverse(u)), g.identity());
                assert_eq!(g.length(u) + g.length(g.mul(u, w0)), g.length(w0));
                assert_eq!(g.length(g.mul(g.mul(w0, u), w0)), g.length(u));
                for v in g.elements().step_by(3) {
                    let uv = g.mul(u, v);
                    let lam = [3, -1, 2, 0, 0, 0, 0, 0];
                    assert_eq!(g.act(uv, &lam), g.act(u, &g.act(v, &lam)));
                }
            }
        }
    }

    #[test]
    fn small_examples() {
        let g = group(LieType::A, 2);
        let s1 = g.simple(0);
        let a1 = SignedRoot { index: g.rs.find_root(&g.rs.simple_root(0)).unwrap().index, positive: true };
        let a2 = g.rs.find_root(&g.rs.simple_root(1)).unwrap();
        assert_eq!(g.apply_to_root(s1, a1), SignedRoot { index: a1.index, positive: false });
        let img = g.rs.root_weight(g.apply_to_root(s1, a2));
        assert_eq!(g.rs.simple_coords(&img).unwrap()[..2], [1, 1]);
        assert_eq!(g.mul(s1, s1), g.identity());
        let s12 = g.parse_word("s1 s2").unwrap();
        let s21 = g.parse_word("s2 s1").unwrap();
        assert!(g.bruhat_leq(s1, s12));
        assert!(!g.bruhat_leq(s12, s21));
        let top = g.rs.weight_from_simple(&[1, 1, 0, 0, 0, 0, 0, 0]);
        let r = g.reflection_of(&top).unwrap();
        assert_eq!(r, g.parse_word("s1 s2 s1").unwrap());
        assert_eq!(g.right_descents(g.longest()), vec![0, 1]);
        let a1g = group(LieType::A, 1);
        assert_eq!(a1g.reflection(0), a1g.simple(0));
        assert!(g.reflection_of(&[1, 0, 0, 0, 0, 0, 0, 0]).is_err());
        assert_eq!(g.word_string(s12), "s1 s2");
        assert_eq!(g.parse_word("s1s2").unwrap(), s12);
        assert_eq!(g.parse_word("12").unwrap(), s12);
        assert_eq!(g.parse_word("e").unwrap(), g.identity());
        assert!(g.parse_word("s4").is_err());
    }

    // Bruhat order by brute-force subwords of a reduced word.
    fn bruhat_oracle(g: &WeylGroup, u: Elem, w: Elem) -> bool {
        let word = g.word(w);
        let k = word.len();
        (0u32..1 << k).any(|mask| {
            let sub: Vec<usize> = (0..k).filter(|j| mask >> j & 1 == 1).map(|j| word[j] as usize).collect();
            g.from_word(&sub).unwrap() == u
        })
    }

    #[test]
    fn bruhat_against_subwords() {
        for (t, n) in [(LieType::A, 3), (LieType::B, 2), (LieType::C, 3), (LieType::G, 2)] {
            let g = group(t, n);
            let w0 = g.longest();
            for u in g.elements() {
                for w in g.elements() {
                    let b = g.bruhat_leq(u, w);
                    assert_eq!(b, bruhat_oracle(&g, u, w));
                    assert_eq!(b, g.bruhat_leq(g.mul(w0, w), g.mul(w0, u)));
                }
            }
        }
    }

    #[test]
    fn reflections_are_involutions() {
        for (t, n) in [(LieType::A, 3), (LieType::B, 3), (LieType::G, 2), (LieType::F, 4)] {
            let g = group(t, n);
            for k in 0..g.rs.dim() {
                let r = g.reflection(k);
                assert_ne!(r, g.identity());
                assert_eq!(g.mul(r, r), g.identity());
                assert_eq!(g.act_root(r, k), SignedRoot { index: k, positive: false });
                assert_eq!(g.length(r) % 2, 1);
            }
        }
    }

    #[test]
    fn lemma_reflection_length_drop() {
        // u s > u and v s < v imply u s v^{-1} < u v^{-1}
        for (t, n) in [(LieType::A, 3), (LieType::B, 2), (LieType::G, 2)] {
            let g = group(t, n);
            let refl: Vec<Elem> = (0..g.rs.dim()).map(|k| g.reflection(k)).collect();
            for u in g.elements() {
                for v in g.elements() {
                    let vi = g.inverse(v);
                    for &s in &refl {
                        if g.length(g.mul(u, s)) > g.length(u) && g.length(g.mul(v, s)) < g.length(v) {
                            let a = g.mul(g.mul(u, s), vi);
                            let b = g.mul(u, vi);
                            assert!(g.bruhat_lt(a, b));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn action_matrix_is_product() {
        let g = group(LieType::B, 3);
        for w in g.elements() {
            let mut m: Vec<Vec<i32>> = (0..3).map(|i| (0..3).map(|j| (i == j) as i32).collect()).collect();
            for &a in g.word(w) {
                let s = g.action_matrix(g.simple(a as usize));
                m = (0..3).map(|i| (0..3).map(|j| (0..3).map(|k| m[i][k] * s[k][j]).sum()).collect()).collect();
            }
            assert_eq!(m, g.action_matrix(w));
        }
    }
}
