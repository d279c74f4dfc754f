//! The no-cycle algebra `N(k)`, its string and band modules, and the skew
//! coinvariant algebra `C(n) = F[X,Y]/(X^n, XY, Y^n) ⋊ Γ`.
//!
//! Arrows `a_i` have head `i` and tail `i+1`, `b_i` head `i+1` and tail `i`.
//! On modules an arrow acts as an operator from its head space to its tail
//! space, so `a_i : V_i → V_{i+1}` and `b_i : V_{i+1} → V_i`, and products in
//! `N(k)` are operator composites (`x·y` means `y` first). Formal paths
//! `c_1 … c_t` satisfy `h(c_j) = t(c_{j+1})`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::fdrep::{self, Degree, FDModule};
use crate::linalg::Matrix;
use crate::scalars::{inv_mod, is_prime, pow_mod, root_of_unity};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    A,
    B,
}

/// An arrow or a formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Letter {
    pub kind: Kind,
    pub index: usize,
    pub star: bool,
}

impl Letter {
    pub fn arrow(kind: Kind, index: usize) -> Letter {
        Letter {
            kind,
            index,
            star: false,
        }
    }

    pub fn inverse(self) -> Letter {
        Letter {
            star: !self.star,
            ..self
        }
    }

    /// Head of the letter, indices mod `k`.
    pub fn head(self, k: usize) -> usize {
        let (h, t) = self.arrow_ends(k);
        if self.star {
            t
        } else {
            h
        }
    }

    pub fn tail(self, k: usize) -> usize {
        let (h, t) = self.arrow_ends(k);
        if self.star {
            h
        } else {
            t
        }
    }

    fn arrow_ends(self, k: usize) -> (usize, usize) {
        let i = self.index % k;
        let j = (i + 1) % k;
        match self.kind {
            Kind::A => (i, j),
            Kind::B => (j, i),
        }
    }

    /// Generator name of the underlying arrow.
    pub fn gen_name(self) -> String {
        match self.kind {
            Kind::A => format!("a{}", self.index),
            Kind::B => format!("b{}", self.index),
        }
    }

    fn key(self) -> (bool, Kind, usize) {
        (self.star, self.kind, self.index)
    }

    /// Allowed successors in a word of `S_t`.
    pub fn successors(self, k: usize) -> [Letter; 2] {
        let up = (self.index + 1) % k;
        let down = (self.index + k - 1) % k;
        let l = |kind, index, star| Letter { kind, index, star };
        match (self.kind, self.star) {
            (Kind::A, false) => [l(Kind::A, down, false), l(Kind::B, down, true)],
            (Kind::B, false) => [l(Kind::B, up, false), l(Kind::A, up, true)],
            (Kind::A, true) => [l(Kind::A, up, true), l(Kind::B, up, false)],
            (Kind::B, true) => [l(Kind::B, down, true), l(Kind::A, down, false)],
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Letter) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `a_0 < … < a_{k−1} < b_0 < … < b_{k−1} <` inverses in the same order.
impl Ord for Letter {
    fn cmp(&self, other: &Letter) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.kind {
            Kind::A => "a",
            Kind::B => "b",
        };
        write!(
            f,
            "{base}{}{}",
            self.index,
            if self.star { "*" } else { "" }
        )
    }
}

/// A formal path `c_1 … c_t`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|c| c.inverse()).collect())
    }

    pub fn rotate(&self, s: usize) -> Word {
        let mut w = self.0.clone();
        let n = w.len().max(1);
        w.rotate_left(s % n);
        Word(w)
    }

    pub fn is_path(&self, k: usize) -> bool {
        self.0
            .windows(2)
            .all(|w| w[0].successors(k).contains(&w[1]))
    }

    pub fn is_cyclic_path(&self, k: usize) -> bool {
        self.is_path(k)
            && self
                .0
                .last()
                .map_or(true, |l| l.successors(k).contains(&self.0[0]))
    }

    fn is_pure(&self) -> bool {
        let first = self.0[0];
        self.0
            .iter()
            .all(|c| c.kind == first.kind && c.star == first.star)
    }

    pub fn parse(text: &str) -> Result<Word> {
        let mut out = Vec::new();
        for tok in text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
        {
            let (star, body) = match tok.strip_suffix('*') {
                Some(b) => (true, b),
                None => (false, tok),
            };
            let kind = match body.chars().next() {
                Some('a') => Kind::A,
                Some('b') => Kind::B,
                _ => return Err(Error::Parse(format!("bad letter {tok}"))),
            };
            let index = body[1..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad letter {tok}")))?;
            out.push(Letter { kind, index, star });
        }
        Ok(Word(out))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A basis path of `N(k)`: the idempotent at `start` when `len = 0`, otherwise
/// the composite of `len` arrows of one kind read from vertex `start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BasisPath {
    pub start: usize,
    pub kind: Kind,
    pub len: usize,
}

impl BasisPath {
    pub fn end(&self, k: usize) -> usize {
        match self.kind {
            Kind::A => (self.start + self.len) % k,
            Kind::B => (self.start + k * self.len - self.len) % k,
        }
    }

    pub fn degree(&self) -> i64 {
        match self.kind {
            Kind::A => -(self.len as i64),
            Kind::B => self.len as i64,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NoCycleAlg {
    k: usize,
    q: u64,
    basis: Vec<BasisPath>,
    #[serde(skip)]
    index: BTreeMap<BasisPath, usize>,
}

impl NoCycleAlg {
    pub fn new(k: usize, q: u64) -> Result<NoCycleAlg> {
        if k == 0 {
            return Err(Error::Invalid("k must be at least 1".into()));
        }
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        let mut basis: Vec<BasisPath> = (0..k)
            .map(|s| BasisPath {
                start: s,
                kind: Kind::A,
                len: 0,
            })
            .collect();
        for kind in [Kind::A, Kind::B] {
            for start in 0..k {
                for len in 1..k {
                    basis.push(BasisPath { start, kind, len });
                }
            }
        }
        let index = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        Ok(NoCycleAlg { k, q, basis, index })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisPath] {
        &self.basis
    }

    pub fn idempotent(&self, v: usize) -> usize {
        v % self.k
    }

    pub fn arrow(&self, kind: Kind, i: usize) -> Option<usize> {
        let start = match kind {
            Kind::A => i % self.k,
            Kind::B => (i + 1) % self.k,
        };
        self.index
            .get(&BasisPath {
                start,
                kind,
                len: 1,
            })
            .copied()
    }

    /// `x·y`, the composite with `y` applied first.
    pub fn mul_basis(&self, x: usize, y: usize) -> Option<usize> {
        let (bx, by) = (self.basis[x], self.basis[y]);
        if by.end(self.k) != bx.start {
            return None;
        }
        if bx.len == 0 {
            return Some(y);
        }
        if by.len == 0 {
            return Some(x);
        }
        if bx.kind != by.kind || bx.len + by.len >= self.k {
            return None;
        }
        self.index
            .get(&BasisPath {
                start: by.start,
                kind: by.kind,
                len: bx.len + by.len,
            })
            .copied()
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim()];
        for (i, &a) in x.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in y.iter().enumerate().filter(|(_, b)| **b != 0) {
                if let Some(t) = self.mul_basis(i, j) {
                    out[t] = (out[t] + a * b) % self.q;
                }
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.dim()];
        for v in 0..self.k {
            out[v] = 1;
        }
        out
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|x| {
            (0..n).all(|y| {
                (0..n).all(|z| {
                    let left = self.mul_basis(x, y).and_then(|xy| self.mul_basis(xy, z));
                    let right = self.mul_basis(y, z).and_then(|yz| self.mul_basis(x, yz));
                    left == right
                })
            })
        })
    }

    pub fn gen_names(&self) -> Vec<String> {
        let mut out: Vec<String> = (0..self.k).map(|i| format!("e{i}")).collect();
        out.extend((0..self.k).map(|i| format!("a{i}")));
        out.extend((0..self.k).map(|i| format!("b{i}")));
        out
    }

    pub fn gen_degrees(&self) -> BTreeMap<String, Degree> {
        let mut out = BTreeMap::new();
        for i in 0..self.k {
            out.insert(format!("e{i}"), Degree::Single(0));
            out.insert(format!("a{i}"), Degree::Single(-1));
            out.insert(format!("b{i}"), Degree::Single(1));
        }
        out
    }

    /// Builds a module from vertex labels and arrow matrices, filling the
    /// idempotents and any missing arrows with zero.
    pub fn module(&self, vertices: &[usize], arrows: BTreeMap<String, Matrix>) -> Result<FDModule> {
        let d = vertices.len();
        let mut gens = Vec::new();
        for v in 0..self.k {
            let mut e = Matrix::zeros(d, d, self.q);
            for (i, &w) in vertices.iter().enumerate() {
                if w % self.k == v {
                    e.set(i, i, 1);
                }
            }
            gens.push((format!("e{v}"), e));
        }
        for name in self.gen_names().into_iter().skip(self.k) {
            let m = arrows
                .get(&name)
                .cloned()
                .unwrap_or_else(|| Matrix::zeros(d, d, self.q));
            gens.push((name, m));
        }
        let names: Vec<String> = (0..self.k).map(|i| format!("e{i}")).collect();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        Ok(FDModule::new(self.q, d, gens)?.with_toral(&refs))
    }

    /// Checks the defining relations: orthogonal idempotents summing to one,
    /// arrows between the right vertex spaces, and every cycle acting as zero.
    pub fn is_module(&self, m: &FDModule) -> bool {
        let k = self.k;
        let q = self.q;
        let d = m.dim();
        let g = |name: String| m.gen(&name).cloned();
        let Some(es) = (0..k)
            .map(|i| g(format!("e{i}")))
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        let mut total = Matrix::zeros(d, d, q);
        for (i, e) in es.iter().enumerate() {
            total = total.add(e);
            for (j, f) in es.iter().enumerate() {
                let want = if i == j {
                    e.clone()
                } else {
                    Matrix::zeros(d, d, q)
                };
                if e.mul(f) != want {
                    return false;
                }
            }
        }
        if total != Matrix::identity(d, q) {
            return false;
        }
        let mut ops = Vec::new();
        for kind in [Kind::A, Kind::B] {
            for i in 0..k {
                let l = Letter::arrow(kind, i);
                let Some(x) = g(l.gen_name()) else {
                    return false;
                };
                let (src, dst) = (l.head(k), l.tail(k));
                if es[dst].mul(&x).mul(&es[src]) != x {
                    return false;
                }
                ops.push((kind, i, x));
            }
        }
        let find = |kind: Kind, i: usize| {
            &ops.iter()
                .find(|(kk, ii, _)| *kk == kind && *ii == i % k)
                .unwrap()
                .2
        };
        for i in 0..k {
            // b_i a_i and a_i b_i
            if !find(Kind::B, i).mul(find(Kind::A, i)).is_zero()
                || !find(Kind::A, i).mul(find(Kind::B, i)).is_zero()
            {
                return false;
            }
            // monotone loops around the whole cycle
            let mut pa = Matrix::identity(d, q);
            let mut pb = Matrix::identity(d, q);
            for s in 0..k {
                pa = find(Kind::A, i + s).mul(&pa);
                pb = find(Kind::B, i + k - s).mul(&pb);
            }
            if !pa.is_zero() || !pb.is_zero() {
                return false;
            }
        }
        true
    }

    /// The regular left module on the path basis.
    pub fn regular_module(&self) -> Result<FDModule> {
        let n = self.dim();
        let mut arrows = BTreeMap::new();
        for kind in [Kind::A, Kind::B] {
            for i in 0..self.k {
                let Some(x) = self.arrow(kind, i) else {
                    continue;
                };
                let mut m = Matrix::zeros(n, n, self.q);
                for y in 0..n {
                    if let Some(t) = self.mul_basis(x, y) {
                        m.set(t, y, 1);
                    }
                }
                arrows.insert(Letter::arrow(kind, i).gen_name(), m);
            }
        }
        let vertices: Vec<usize> = self.basis.iter().map(|b| b.end(self.k)).collect();
        self.module(&vertices, arrows)
    }

    /// `St(C)` for a word of length `t < k`; the empty word at vertex `v` gives
    /// the simple module there.
    pub fn string_module(&self, word: &Word) -> Result<FDModule> {
        if word.len() >= self.k {
            return Err(Error::Invalid("string words must be shorter than k".into()));
        }
        if word.is_empty() {
            return Err(Error::Invalid(
                "use simple_module for the empty word".into(),
            ));
        }
        if !word.is_path(self.k) {
            return Err(Error::Invalid(format!("{word} is not in S_t")));
        }
        let k = self.k;
        let t = word.len();
        let c = &word.0;
        let mut vertices = vec![c[0].tail(k)];
        vertices.extend(c.iter().map(|l| l.head(k)));
        let mut arrows: BTreeMap<String, Matrix> = BTreeMap::new();
        let mut degrees = vec![0i64; t + 1];
        for j in 1..=t {
            let l = c[j - 1];
            let m = arrows
                .entry(l.gen_name())
                .or_insert_with(|| Matrix::zeros(t + 1, t + 1, self.q));
            let step = match l.kind {
                Kind::A => 1,
                Kind::B => -1,
            };
            if l.star {
                m.set(j, j - 1, 1);
                degrees[j] = degrees[j - 1] - step;
            } else {
                m.set(j - 1, j, 1);
                degrees[j] = degrees[j - 1] + step;
            }
        }
        self.module(&vertices, arrows)?
            .with_grading(degrees.into_iter().map(Degree::Single).collect())
    }

    pub fn simple_module(&self, v: usize) -> Result<FDModule> {
        self.module(&[v % self.k], BTreeMap::new())?
            .with_grading(vec![Degree::Single(0)])
    }

    /// `Bd_λ(C)` for a cyclically composable word of length `k`.
    pub fn band_module(&self, word: &Word, lambda: u64) -> Result<FDModule> {
        let k = self.k;
        let lambda = lambda % self.q;
        if lambda == 0 {
            return Err(Error::Invalid("band parameter must be nonzero".into()));
        }
        if word.len() != k || !word.is_cyclic_path(k) {
            return Err(Error::Invalid(format!(
                "{word} is not a band word for k = {k}"
            )));
        }
        let c = &word.0;
        let vertices: Vec<usize> = (0..k).map(|j| c[(j + k - 1) % k].head(k)).collect();
        let mut arrows: BTreeMap<String, Matrix> = BTreeMap::new();
        for j in 1..k {
            let l = c[j - 1];
            let m = arrows
                .entry(l.gen_name())
                .or_insert_with(|| Matrix::zeros(k, k, self.q));
            if l.star {
                m.add_at(j, j - 1, 1);
            } else {
                m.add_at(j - 1, j, 1);
            }
        }
        let l = c[k - 1];
        let m = arrows
            .entry(l.gen_name())
            .or_insert_with(|| Matrix::zeros(k, k, self.q));
        if l.star {
            m.add_at(0, k - 1, inv_mod(lambda, self.q));
        } else {
            m.add_at(k - 1, 0, lambda);
        }
        self.module(&vertices, arrows)
    }
}

fn all_letters(k: usize) -> Vec<Letter> {
    let mut out = Vec::new();
    for star in [false, true] {
        for kind in [Kind::A, Kind::B] {
            for index in 0..k {
                out.push(Letter { kind, index, star });
            }
        }
    }
    out
}

/// All words of `S_t` by brute force.
pub fn all_paths(k: usize, t: usize) -> Vec<Word> {
    let mut words: Vec<Vec<Letter>> = all_letters(k).into_iter().map(|l| vec![l]).collect();
    for _ in 1..t {
        words = words
            .into_iter()
            .flat_map(|w| {
                let last = *w.last().unwrap();
                last.successors(k).into_iter().map(move |s| {
                    let mut n = w.clone();
                    n.push(s);
                    n
                })
            })
            .collect();
    }
    let mut out: Vec<Word> = words.into_iter().map(Word).collect();
    if t == k {
        out.retain(|w| w.is_cyclic_path(k) && !w.is_pure());
    }
    out
}

/// The `ρ_t` orbit of a word.
pub fn orbit(word: &Word, k: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    if word.len() == k {
        for s in 0..k {
            let r = word.rotate(s);
            out.insert(r.inverse());
            out.insert(r);
        }
    } else {
        out.insert(word.inverse());
        out.insert(word.clone());
    }
    out
}

pub fn canonical(word: &Word, k: usize) -> Word {
    orbit(word, k).into_iter().next().expect("nonempty orbit")
}

/// `W_t`: the least word of each `ρ_t` class.
pub fn enumerate_strings(k: usize, t: usize) -> Result<Vec<Word>> {
    if t == 0 || t > k {
        return Err(Error::Invalid(format!(
            "need 1 <= t <= k, got t = {t}, k = {k}"
        )));
    }
    let reps: BTreeSet<Word> = all_paths(k, t).iter().map(|w| canonical(w, k)).collect();
    Ok(reps.into_iter().collect())
}

/// Every module listed by the classification with dimension at most `max_dim`:
/// simples, strings and bands over `F_q`.
pub fn listed_modules(alg: &NoCycleAlg, max_dim: usize) -> Result<Vec<(String, FDModule)>> {
    let k = alg.k();
    let mut out = Vec::new();
    for v in 0..k {
        out.push((format!("S{v}"), alg.simple_module(v)?));
    }
    for t in 1..k.min(max_dim) {
        for w in enumerate_strings(k, t)? {
            out.push((format!("St({w})"), alg.string_module(&w)?));
        }
    }
    if k <= max_dim {
        for w in enumerate_strings(k, k)? {
            for lambda in 1..alg.modulus() {
                out.push((format!("Bd_{lambda}({w})"), alg.band_module(&w, lambda)?));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub k: usize,
    pub q: u64,
    pub max_dim: usize,
    /// module structures visited
    pub visited: usize,
    pub indecomposable: usize,
    /// listed modules hit by at least one indecomposable
    pub listed_found: usize,
    pub listed_total: usize,
    /// indecomposables matching no listed module
    pub unmatched: usize,
}

/// Enumerates every module structure with total dimension at most `max_dim`
/// and matches the indecomposables against the listed modules.
pub fn classification_sweep(alg: &NoCycleAlg, max_dim: usize) -> Result<SweepReport> {
    let k = alg.k();
    let q = alg.modulus();
    let listed = listed_modules(alg, max_dim)?;
    let mut found = vec![false; listed.len()];
    let mut report = SweepReport {
        k,
        q,
        max_dim,
        visited: 0,
        indecomposable: 0,
        listed_found: 0,
        listed_total: listed.len(),
        unmatched: 0,
    };
    for total in 1..=max_dim {
        for dims in compositions_of(total, k) {
            let vertices: Vec<usize> = dims
                .iter()
                .enumerate()
                .flat_map(|(v, &d)| std::iter::repeat(v).take(d))
                .collect();
            let offsets: Vec<usize> = dims
                .iter()
                .scan(0, |acc, &d| {
                    let o = *acc;
                    *acc += d;
                    Some(o)
                })
                .collect();
            // slots for every arrow entry between its vertex spaces
            let mut slots = Vec::new();
            for kind in [Kind::A, Kind::B] {
                for i in 0..k {
                    let l = Letter::arrow(kind, i);
                    let (src, dst) = (l.head(k), l.tail(k));
                    for r in 0..dims[dst] {
                        for c in 0..dims[src] {
                            slots.push((l.gen_name(), offsets[dst] + r, offsets[src] + c));
                        }
                    }
                }
            }
            let count = (q as usize)
                .checked_pow(slots.len() as u32)
                .ok_or(Error::ElementCap { cap: usize::MAX })?;
            for code in 0..count {
                let mut arrows: BTreeMap<String, Matrix> = BTreeMap::new();
                let mut c = code;
                for (name, r, col) in &slots {
                    let x = (c % q as usize) as u64;
                    c /= q as usize;
                    arrows
                        .entry(name.clone())
                        .or_insert_with(|| Matrix::zeros(total, total, q))
                        .set(*r, *col, x);
                }
                let m = alg.module(&vertices, arrows)?;
                if !alg.is_module(&m) {
                    continue;
                }
                report.visited += 1;
                if !fdrep::is_indecomposable(&m)? {
                    continue;
                }
                report.indecomposable += 1;
                let mut hit = false;
                for (idx, (_, l)) in listed.iter().enumerate() {
                    if l.dim() == m.dim() && fdrep::is_isomorphic(&m, &strip_grading(l))? {
                        found[idx] = true;
                        hit = true;
                        break;
                    }
                }
                if !hit {
                    report.unmatched += 1;
                }
            }
        }
    }
    report.listed_found = found.iter().filter(|f| **f).count();
    Ok(report)
}

fn strip_grading(m: &FDModule) -> FDModule {
    let gens: Vec<(String, Matrix)> = m
        .gens()
        .iter()
        .map(|(n, x)| (n.clone(), x.clone()))
        .collect();
    let toral: Vec<&str> = m.toral().iter().map(|s| s.as_str()).collect();
    FDModule::new(m.modulus(), m.dim(), gens)
        .expect("same data")
        .with_toral(&toral)
}

/// Ordered `k`-tuples of naturals summing to `total`.
fn compositions_of(total: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|first| {
            compositions_of(total - first, k - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

/// `C(n)` with basis `X^s g^j` (`0 ≤ s < n`) then `Y^s g^j` (`1 ≤ s < n`).
#[derive(Clone, Debug, Serialize)]
pub struct Coinvariant {
    pub n: usize,
    pub q: u64,
    pub zeta: u64,
    /// `(s, j)` with `s > 0` for powers of `X` and `s < 0` for powers of `Y`
    pub basis: Vec<(i64, usize)>,
}

impl Coinvariant {
    pub fn new(n: usize, q: u64) -> Result<Coinvariant> {
        let zeta = root_of_unity(q, n as u64)?.value();
        let mut basis = Vec::new();
        for s in 0..n as i64 {
            for j in 0..n {
                basis.push((s, j));
            }
        }
        for s in 1..n as i64 {
            for j in 0..n {
                basis.push((-s, j));
            }
        }
        Ok(Coinvariant { n, q, zeta, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn position(&self, s: i64, j: usize) -> usize {
        self.basis
            .iter()
            .position(|&b| b == (s, j % self.n))
            .expect("basis element")
    }

    /// `(m g^j)(m' g^l) = m (g^j · m') g^{j+l}` with `g·X = ζX`, `g·Y = ζ^{−1}Y`.
    pub fn mul_basis(&self, x: usize, y: usize) -> Option<(usize, u64)> {
        let ((s, j), (t, l)) = (self.basis[x], self.basis[y]);
        let n = self.n as i64;
        let prod = if s == 0 {
            t
        } else if t == 0 {
            s
        } else if s.signum() == t.signum() {
            s + t
        } else {
            return None;
        };
        if prod.abs() >= n {
            return None;
        }
        let e = (j as i64 * t).rem_euclid(n) as u64;
        Some((self.position(prod, j + l), pow_mod(self.zeta, e, self.q)))
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.dim()];
        for (i, &a) in x.iter().enumerate().filter(|(_, a)| **a != 0) {
            for (j, &b) in y.iter().enumerate().filter(|(_, b)| **b != 0) {
                if let Some((t, c)) = self.mul_basis(i, j) {
                    out[t] = (out[t] + a * b % self.q * c) % self.q;
                }
            }
        }
        out
    }

    /// Bidegree of a basis element; the first coordinate is the `v'`-component.
    pub fn bidegree(&self, x: usize) -> (i64, i64) {
        let s = self.basis[x].0;
        (s, s.abs())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UpsilonReport {
    pub schema: &'static str,
    pub n: usize,
    pub q: u64,
    pub zeta: u64,
    pub dim_c: usize,
    pub dim_n: usize,
    pub multiplicative: bool,
    pub unital: bool,
    pub rank: usize,
    pub bijective: bool,
    pub grading_compatible: bool,
}

impl UpsilonReport {
    pub fn ok(&self) -> bool {
        self.multiplicative && self.unital && self.bijective && self.grading_compatible
    }
}

/// The map `C(n) → N(n)` with `X ↦ Σ b_k`, `Y ↦ Σ a_k`, `g ↦ Σ ζ^{n−k} e_k`,
/// as a matrix whose columns are images of the `C(n)` basis.
pub fn upsilon_matrix(c: &Coinvariant, alg: &NoCycleAlg) -> Matrix {
    let n = c.n;
    let q = c.q;
    let dim = alg.dim();
    let mut x = vec![0u64; dim];
    let mut y = vec![0u64; dim];
    let mut g = vec![0u64; dim];
    for k in 0..n {
        x[alg.arrow(Kind::B, k).unwrap()] = 1;
        y[alg.arrow(Kind::A, k).unwrap()] = 1;
        // e_n is the idempotent at vertex 0
        g[alg.idempotent(k)] = pow_mod(c.zeta, ((n - k) % n) as u64, q);
    }
    let power = |base: &[u64], e: usize| (0..e).fold(alg.unit(), |acc, _| alg.mul(&acc, base));
    let columns: Vec<Vec<u64>> = c
        .basis
        .iter()
        .map(|&(s, j)| {
            let m = if s >= 0 {
                power(&x, s as usize)
            } else {
                power(&y, (-s) as usize)
            };
            alg.mul(&m, &power(&g, j))
        })
        .collect();
    Matrix::from_columns(&columns, dim, q)
}

pub fn coinvariant_upsilon(n: usize, q: u64) -> Result<UpsilonReport> {
    if n < 2 {
        return Err(Error::Invalid("n must be at least 2".into()));
    }
    let c = Coinvariant::new(n, q)?;
    let alg = NoCycleAlg::new(n, q)?;
    let u = upsilon_matrix(&c, &alg);
    let image = |v: &[u64]| u.mul_vec(v);
    let e = |i: usize| {
        let mut v = vec![0u64; c.dim()];
        v[i] = 1;
        v
    };
    let mut multiplicative = true;
    for i in 0..c.dim() {
        for j in 0..c.dim() {
            let lhs = image(&c.mul(&e(i), &e(j)));
            let rhs = alg.mul(&image(&e(i)), &image(&e(j)));
            if lhs != rhs {
                multiplicative = false;
            }
        }
    }
    let unital = image(&e(c.position(0, 0))) == alg.unit();
    let rank = u.rank();
    let grading_compatible = (0..c.dim()).all(|i| {
        let col = u.column(i);
        col.iter()
            .enumerate()
            .all(|(t, &v)| v == 0 || alg.basis()[t].degree() == c.bidegree(i).0)
    });
    Ok(UpsilonReport {
        schema: "subregular.nocycle.upsilon/1",
        n,
        q,
        zeta: c.zeta,
        dim_c: c.dim(),
        dim_n: alg.dim(),
        multiplicative,
        unital,
        rank,
        bijective: rank == c.dim() && rank == alg.dim(),
        grading_compatible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        for k in [1, 2, 3, 5] {
            assert_eq!(NoCycleAlg::new(k, 5).unwrap().dim(), k * (2 * k - 1));
        }
        for k in 1..=3 {
            assert!(NoCycleAlg::new(k, 3).unwrap().is_associative());
        }
    }

    #[test]
    fn regular_module_satisfies_relations() {
        let alg = NoCycleAlg::new(3, 5).unwrap();
        let reg = alg.regular_module().unwrap();
        assert!(alg.is_module(&reg));
    }

    #[test]
    fn single_arrow_string() {
        let alg = NoCycleAlg::new(2, 3).unwrap();
        let w = Word::parse("a0").unwrap();
        let st = alg.string_module(&w).unwrap();
        assert_eq!(st.dim(), 2);
        // a_0 z_1 = z_0
        assert_eq!(st.gen("a0").unwrap().get(0, 1), 1);
        assert!(st.gen("a1").unwrap().is_zero());
        assert!(alg.is_module(&st));
        assert!(st.is_homogeneous(&alg.gen_degrees()));
        let w1 = enumerate_strings(2, 1).unwrap();
        assert_eq!(w1.len(), 4);
        assert!(w1.contains(&w));
    }

    #[test]
    fn pure_words_excluded_at_full_length() {
        let w = enumerate_strings(3, 3).unwrap();
        assert!(w.iter().all(|x| !x.is_pure()));
        assert!(!w.contains(&canonical(&Word::parse("a2 a1 a0").unwrap(), 3)));
    }

    #[test]
    fn w_counts_match_orbit_counting() {
        for k in 2..=4 {
            for t in 1..=k {
                let brute = all_paths(k, t);
                let mut seen: BTreeSet<Word> = BTreeSet::new();
                let mut classes = 0;
                for w in &brute {
                    if !seen.contains(w) {
                        classes += 1;
                        seen.extend(orbit(w, k));
                    }
                }
                assert_eq!(enumerate_strings(k, t).unwrap().len(), classes);
            }
        }
    }

    #[test]
    fn band_modules() {
        let alg = NoCycleAlg::new(3, 5).unwrap();
        let bands = enumerate_strings(3, 3).unwrap();
        assert!(!bands.is_empty());
        let w = &bands[0];
        let m1 = alg.band_module(w, 1).unwrap();
        let m2 = alg.band_module(w, 2).unwrap();
        assert_eq!(m1.dim(), 3);
        assert!(alg.is_module(&m1));
        assert!(fdrep::is_indecomposable(&m1).unwrap());
        assert!(!fdrep::is_isomorphic(&m1, &m2).unwrap());
        assert!(alg.band_module(w, 0).is_err());
    }

    #[test]
    fn toy_sweep() {
        let alg = NoCycleAlg::new(2, 3).unwrap();
        let r = classification_sweep(&alg, 2).unwrap();
        assert_eq!(r.unmatched, 0);
        assert_eq!(r.listed_found, r.listed_total);
        assert_eq!(r.listed_total, 2 + 4 + 4);
    }

    #[test]
    fn upsilon() {
        for (n, q) in [(2, 3), (3, 7), (4, 5)] {
            let r = coinvariant_upsilon(n, q).unwrap();
            assert!(r.ok(), "{r:?}");
            assert_eq!(r.dim_c, n * (2 * n - 1));
        }
        assert!(coinvariant_upsilon(3, 5).is_err());
    }
}
