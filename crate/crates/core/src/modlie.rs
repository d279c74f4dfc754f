//! Baby Verma modules for `sl_n` over `F_p` at the subregular nilpotent `χ`.
//!
//! `Z(𝔟)` for `𝔟 = g 𝔟_+ g⁻¹` is realised as `Z_{χ'}(𝔟_+)` with
//! `χ'(Y) = χ(gYg⁻¹)`, on which `X` acts through `g⁻¹Xg`. The basis is PBW
//! monomials in the negative root vectors with exponents below `p`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::fdrep::{self, Degree, FDModule};
use crate::linalg::{Echelon, Matrix};
use crate::scalars::{inv_mod, is_prime};
use crate::{Error, Result};

/// A basis element of `sl_n`: `E_{a,b}` with `a ≠ b`, or `H_i = E_{i,i} − E_{i+1,i+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Elem {
    E(usize, usize),
    H(usize),
}

impl Elem {
    pub fn name(&self) -> String {
        match self {
            Elem::E(a, b) => format!("E{}{}", a + 1, b + 1),
            Elem::H(i) => format!("H{}", i + 1),
        }
    }

    pub fn matrix(&self, n: usize, p: u64) -> Matrix {
        let mut m = Matrix::zeros(n, n, p);
        match *self {
            Elem::E(a, b) => m.set(a, b, 1),
            Elem::H(i) => {
                m.set(i, i, 1);
                m.set(i + 1, i + 1, p - 1);
            }
        }
        m
    }
}

/// The basis `E_{a,b}` (`a ≠ b`, row-major) followed by `H_1..H_{n−1}`.
pub fn sl_basis(n: usize) -> Vec<Elem> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b {
                out.push(Elem::E(a, b));
            }
        }
    }
    out.extend((0..n - 1).map(Elem::H));
    out
}

/// Coordinates of a trace-zero matrix in `sl_basis`.
pub fn coords(m: &Matrix, basis: &[Elem]) -> Vec<u64> {
    let n = m.rows();
    let p = m.modulus();
    let mut running = 0u64;
    let mut h = vec![0u64; n.saturating_sub(1)];
    for (i, slot) in h.iter_mut().enumerate() {
        running = (running + m.get(i, i)) % p;
        *slot = running;
    }
    basis
        .iter()
        .map(|e| match *e {
            Elem::E(a, b) => m.get(a, b),
            Elem::H(i) => h[i],
        })
        .collect()
}

/// The subregular functional and its ambient data.
#[derive(Clone, Debug, Serialize)]
pub struct SubregChi {
    pub n: usize,
    pub p: u64,
}

impl SubregChi {
    pub fn new(n: usize, p: u64) -> Result<SubregChi> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n < 2 || p as usize <= n {
            return Err(Error::Invalid(format!(
                "need n >= 2 and p > n, got n = {n}, p = {p}"
            )));
        }
        Ok(SubregChi { n, p })
    }

    /// `χ(E_{j+1,j}) = 1` for `1 ≤ j ≤ n−2`, zero on the rest of the basis.
    pub fn eval(&self, m: &Matrix) -> u64 {
        (0..self.n.saturating_sub(2)).fold(0, |acc, j| (acc + m.get(j + 1, j)) % self.p)
    }

    pub fn table(&self) -> BTreeMap<String, u64> {
        sl_basis(self.n)
            .iter()
            .map(|e| (e.name(), self.eval(&e.matrix(self.n, self.p))))
            .collect()
    }
}

/// `λ + ρ = Σ r_i ϖ_i` with `r_0 = p − Σ r_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightData {
    pub p: u64,
    /// `r_1..r_{n−1}`
    pub r: Vec<u64>,
}

impl WeightData {
    pub fn new(p: u64, r: &[u64]) -> Result<WeightData> {
        if r.iter().sum::<u64>() > p {
            return Err(Error::Invalid("r_1 + ... + r_{n-1} exceeds p".into()));
        }
        Ok(WeightData { p, r: r.to_vec() })
    }

    pub fn n(&self) -> usize {
        self.r.len() + 1
    }

    pub fn r0(&self) -> u64 {
        self.p - self.r.iter().sum::<u64>()
    }

    /// `r_i` for `0 ≤ i < n`.
    pub fn r_at(&self, i: usize) -> u64 {
        if i == 0 {
            self.r0()
        } else {
            self.r[i - 1]
        }
    }

    pub fn is_regular(&self) -> bool {
        self.r0() > 0 && self.r.iter().all(|&x| x > 0)
    }

    /// `λ(H_i) = r_i − 1` in `F_p`.
    pub fn h_values(&self) -> Vec<u64> {
        self.r.iter().map(|&r| (r + self.p - 1) % self.p).collect()
    }

    /// `λ` in `ε`-coordinates with last coordinate zero.
    pub fn epsilon(&self) -> Vec<i64> {
        let n = self.n();
        (0..n)
            .map(|j| self.r[j.min(n - 1)..].iter().map(|&x| x as i64 - 1).sum())
            .collect()
    }

    /// The dot orbit `W•λ` in `F_p`, as `r`-vectors of representatives.
    pub fn dot_orbit(&self) -> Vec<WeightData> {
        let n = self.n();
        let p = self.p as i64;
        // λ + ρ in ε-coordinates
        let shifted: Vec<i64> = (0..n)
            .map(|j| self.r[j.min(n - 1)..].iter().map(|&x| x as i64).sum())
            .collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for perm in permutations(n) {
            let w: Vec<i64> = perm.iter().map(|&i| shifted[i]).collect();
            let r: Vec<u64> = (0..n - 1)
                .map(|i| (w[i] - w[i + 1]).rem_euclid(p) as u64)
                .collect();
            if seen.insert(r.clone()) {
                out.push(WeightData { p: self.p, r });
            }
        }
        out
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut v = rest.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out.sort();
    out
}

/// The stabiliser of `F_{k,α}`, given by a matrix `g` whose columns span the flag.
#[derive(Clone, Debug, Serialize)]
pub struct FlagBorel {
    pub k: usize,
    pub alpha: u64,
    pub g: Matrix,
}

impl FlagBorel {
    pub fn is_standard(&self) -> bool {
        self.g == Matrix::identity(self.g.rows(), self.g.modulus())
    }

    /// Whether `g` is a monomial matrix, so `T_0` stabilises the Borel.
    pub fn is_monomial(&self) -> bool {
        let n = self.g.rows();
        (0..n).all(|c| (0..n).filter(|&r| self.g.get(r, c) != 0).count() == 1)
    }

    pub fn same_borel(&self, other: &FlagBorel) -> bool {
        let x = self.g.inverse().expect("invertible").mul(&other.g);
        (0..x.rows()).all(|r| (0..r).all(|c| x.get(r, c) == 0))
    }
}

/// Flag vectors of `F_{k,α}` as indices/coefficients; `(0,0)` gives
/// `F(v_n, v_1, …, v_{n−1})`.
pub fn flag_vectors(n: usize, k: usize, alpha: u64, p: u64) -> Result<Vec<Vec<u64>>> {
    if k >= n || (k == 0 && alpha % p != 0) {
        return Err(Error::Invalid(format!(
            "({k}, {alpha}) is not a valid flag index for n = {n}"
        )));
    }
    let unit = |i: usize| {
        let mut v = vec![0u64; n];
        v[i] = 1;
        v
    };
    let mut cols = Vec::new();
    for i in 0..k.saturating_sub(1) {
        cols.push(unit(i));
    }
    if k > 0 {
        let mut v = unit(k - 1);
        v[n - 1] = alpha % p;
        cols.push(v);
    }
    cols.push(unit(n - 1));
    for i in k..n - 1 {
        cols.push(unit(i));
    }
    Ok(cols)
}

pub fn flag_borel(chi: &SubregChi, k: usize, alpha: u64) -> Result<FlagBorel> {
    let (n, p) = (chi.n, chi.p);
    let cols = flag_vectors(n, k, alpha, p)?;
    let mut g = Matrix::from_columns(&cols, n, p);
    let d = g.det();
    let fix = inv_mod(d, p);
    for r in 0..n {
        let x = g.get(r, n - 1) * fix % p;
        g.set(r, n - 1, x);
    }
    Ok(FlagBorel {
        k,
        alpha: alpha % p,
        g,
    })
}

/// `χ` vanishes on `g 𝔟_+ g⁻¹`.
pub fn chi_vanishes_on_borel(chi: &SubregChi, bor: &FlagBorel) -> bool {
    let (n, p) = (chi.n, chi.p);
    let ginv = bor.g.inverse().expect("invertible");
    sl_basis(n)
        .iter()
        .filter(|e| matches!(e, Elem::H(_)) || matches!(e, Elem::E(a, b) if a < b))
        .all(|e| chi.eval(&bor.g.mul(&e.matrix(n, p)).mul(&ginv)) == 0)
}

/// `ν(τ)·F_{k,α} = F_{k,τ^{−n}α}` for every `τ ∈ F_p^*`.
pub fn torus_consistency(chi: &SubregChi, k: usize, alpha: u64) -> Result<bool> {
    let (n, p) = (chi.n, chi.p);
    let base = flag_borel(chi, k, alpha)?;
    for tau in 1..p {
        let mut nu = Matrix::identity(n, p);
        for i in 0..n - 1 {
            nu.set(i, i, tau);
        }
        let last = crate::scalars::pow_mod(inv_mod(tau, p), (n - 1) as u64, p);
        nu.set(n - 1, n - 1, last);
        let moved = FlagBorel {
            g: nu.mul(&base.g),
            ..base.clone()
        };
        let a2 = if k == 0 {
            0
        } else {
            alpha * crate::scalars::pow_mod(inv_mod(tau, p), n as u64, p) % p
        };
        if !moved.same_borel(&flag_borel(chi, k, a2)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

type Mono = Vec<u8>;
type SparseVec = BTreeMap<Mono, u64>;

/// `Z_{χ'}(𝔟_+, λ)` by PBW straightening.
struct Pbw {
    n: usize,
    p: u64,
    basis: Vec<Elem>,
    /// index in `basis` of each negative root, in PBW order
    neg: Vec<usize>,
    neg_pos: HashMap<usize, usize>,
    /// `[x, y]` in coordinates
    bracket: Vec<Vec<Vec<(usize, u64)>>>,
    chi_neg: Vec<u64>,
    lam: Vec<u64>,
    memo: HashMap<(usize, Mono), SparseVec>,
}

impl Pbw {
    fn new(n: usize, p: u64, chi_prime: &[u64], lam: &[u64]) -> Pbw {
        let basis = sl_basis(n);
        let neg: Vec<usize> = basis
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e, Elem::E(a, b) if a > b))
            .map(|(i, _)| i)
            .collect();
        let neg_pos = neg.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mats: Vec<Matrix> = basis.iter().map(|e| e.matrix(n, p)).collect();
        let bracket = mats
            .iter()
            .map(|x| {
                mats.iter()
                    .map(|y| {
                        coords(&x.commutator(y), &basis)
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| *c != 0)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let chi_neg = neg.iter().map(|&i| chi_prime[i]).collect();
        Pbw {
            n,
            p,
            basis,
            neg,
            neg_pos,
            bracket,
            chi_neg,
            lam: lam.to_vec(),
            memo: HashMap::new(),
        }
    }

    fn monomials(&self) -> Vec<Mono> {
        let mut out: Vec<Mono> = vec![Vec::new()];
        for _ in 0..self.neg.len() {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (0..self.p as u8).map(move |e| {
                        let mut x = m.clone();
                        x.push(e);
                        x
                    })
                })
                .collect();
        }
        out
    }

    fn add_into(&self, acc: &mut SparseVec, v: &SparseVec, c: u64) {
        if c == 0 {
            return;
        }
        for (m, &x) in v {
            let e = acc.entry(m.clone()).or_insert(0);
            *e = (*e + x * c) % self.p;
        }
        acc.retain(|_, x| *x != 0);
    }

    fn act(&mut self, x: usize, mono: &Mono) -> SparseVec {
        if let Some(v) = self.memo.get(&(x, mono.clone())) {
            return v.clone();
        }
        let p = self.p;
        let mut out = SparseVec::new();
        let first = mono.iter().position(|&e| e > 0);
        let gamma = self.neg_pos.get(&x).copied();
        match (first, gamma) {
            (None, None) => {
                if let Elem::H(i) = self.basis[x] {
                    if self.lam[i] != 0 {
                        out.insert(mono.clone(), self.lam[i]);
                    }
                }
            }
            (None, Some(g)) => {
                let mut m = mono.clone();
                m[g] = 1;
                out.insert(m, 1);
            }
            (Some(b), Some(g)) if g <= b => {
                let mut m = mono.clone();
                if m[g] as u64 + 1 == p {
                    // F^p = χ'(F)^p = χ'(F)
                    m[g] = 0;
                    if self.chi_neg[g] != 0 {
                        out.insert(m, self.chi_neg[g]);
                    }
                } else {
                    m[g] += 1;
                    out.insert(m, 1);
                }
            }
            (Some(b), _) => {
                let mut w = mono.clone();
                w[b] -= 1;
                let fb = self.neg[b];
                let inner = self.act(x, &w);
                for (u, c) in inner {
                    let t = self.act(fb, &u);
                    self.add_into(&mut out, &t, c);
                }
                let br = self.bracket[x][fb].clone();
                for (z, c) in br {
                    let t = self.act(z, &w);
                    self.add_into(&mut out, &t, c);
                }
            }
        }
        self.memo.insert((x, mono.clone()), out.clone());
        out
    }

    /// Matrices of every basis element on the monomial basis.
    fn matrices(&mut self) -> (Vec<Mono>, Vec<Matrix>) {
        let monos = self.monomials();
        let index: HashMap<Mono, usize> = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let d = monos.len();
        let mut mats = Vec::new();
        for x in 0..self.basis.len() {
            let mut m = Matrix::zeros(d, d, self.p);
            for (c, mono) in monos.iter().enumerate() {
                for (u, v) in self.act(x, mono) {
                    m.set(index[&u], c, v);
                }
            }
            mats.push(m);
        }
        debug_assert_eq!(self.n * self.n - 1, mats.len());
        (monos, mats)
    }
}

/// `d(j)`: the exponent of `τ` in the `j`-th entry of `ν(τ)`.
fn torus_exponent(j: usize, n: usize) -> i64 {
    if j + 1 == n {
        1 - n as i64
    } else {
        1
    }
}

/// `T_0`-degree of each generator `E_{a,b}`, `H_i`.
pub fn gen_degrees(n: usize) -> BTreeMap<String, Degree> {
    sl_basis(n)
        .iter()
        .map(|e| {
            let d = match *e {
                Elem::E(a, b) => torus_exponent(a, n) - torus_exponent(b, n),
                Elem::H(_) => 0,
            };
            (e.name(), Degree::Single(d))
        })
        .collect()
}

/// A baby Verma module with its construction data.
#[derive(Clone, Debug)]
pub struct LieVerma {
    pub module: FDModule,
    /// generator action before the twist, indexed like `sl_basis`
    untwisted: Vec<Matrix>,
    lam: Vec<u64>,
}

pub fn baby_verma_lie(chi: &SubregChi, w: &WeightData, bor: &FlagBorel) -> Result<LieVerma> {
    let (n, p) = (chi.n, chi.p);
    if w.n() != n || w.p != p {
        return Err(Error::Invalid("weight data does not match χ".into()));
    }
    if !chi_vanishes_on_borel(chi, bor) {
        return Err(Error::Invalid("χ does not vanish on the Borel".into()));
    }
    let basis = sl_basis(n);
    let g = &bor.g;
    let ginv = g.inverse()?;
    let chi_prime: Vec<u64> = basis
        .iter()
        .map(|e| chi.eval(&g.mul(&e.matrix(n, p)).mul(&ginv)))
        .collect();
    let lam = w.h_values();
    let mut pbw = Pbw::new(n, p, &chi_prime, &lam);
    let (monos, mats) = pbw.matrices();
    let d = monos.len();
    let mut gens = Vec::new();
    for e in &basis {
        let c = coords(&ginv.mul(&e.matrix(n, p)).mul(g), &basis);
        let mut m = Matrix::zeros(d, d, p);
        for (y, &cy) in c.iter().enumerate() {
            if cy != 0 {
                m = m.add(&mats[y].scale(cy));
            }
        }
        gens.push((e.name(), m));
    }
    let toral: Vec<String> = (0..n - 1).map(|i| Elem::H(i).name()).collect();
    let toral_refs: Vec<&str> = toral.iter().map(|s| s.as_str()).collect();
    let mut module = FDModule::new(p, d, gens)?.with_toral(&toral_refs);
    if bor.is_monomial() {
        module = module.with_grading(monomial_grading(w, bor, &basis, &pbw.neg, &monos))?;
    }
    Ok(LieVerma {
        module,
        untwisted: mats,
        lam,
    })
}

/// `T_0`-degrees when `g` is a monomial matrix. The generator `1⊗1` sits in
/// the degree of `λ∘Ad(g⁻¹)` on `ν(τ)`, each factor `gF_βg⁻¹` adds its root degree.
fn monomial_grading(
    w: &WeightData,
    bor: &FlagBorel,
    basis: &[Elem],
    neg: &[usize],
    monos: &[Mono],
) -> Vec<Degree> {
    let n = w.n();
    let g = &bor.g;
    // σ(j) is the row of the nonzero entry of column j
    let sigma: Vec<usize> = (0..n)
        .map(|c| (0..n).find(|&r| g.get(r, c) != 0).unwrap())
        .collect();
    let eps = w.epsilon();
    let top: i64 = (0..n).map(|j| eps[j] * torus_exponent(sigma[j], n)).sum();
    let steps: Vec<i64> = neg
        .iter()
        .map(|&i| match basis[i] {
            Elem::E(a, b) => torus_exponent(sigma[a], n) - torus_exponent(sigma[b], n),
            Elem::H(_) => 0,
        })
        .collect();
    monos
        .iter()
        .map(|m| {
            Degree::Single(
                top + m
                    .iter()
                    .zip(&steps)
                    .map(|(&e, &s)| e as i64 * s)
                    .sum::<i64>(),
            )
        })
        .collect()
}

impl LieVerma {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// `dim {w : x·w = λ(x)w for x ∈ 𝔟}`, which equals `dim End(Z)`.
    pub fn end_dim(&self) -> usize {
        let n = self.untwisted.len();
        let basis = sl_basis(((n + 1) as f64).sqrt().round() as usize);
        let d = self.dim();
        let p = self.module.modulus();
        let mut eqs = Echelon::new(d, p);
        for (e, m) in basis.iter().zip(&self.untwisted) {
            let shifted = match *e {
                Elem::E(a, b) if a < b => m.clone(),
                Elem::H(i) => m.sub(&Matrix::scalar(d, self.lam[i], p)),
                _ => continue,
            };
            for r in 0..d {
                eqs.insert(shifted.row(r));
            }
        }
        d - eqs.dim()
    }

    /// The simple quotient by the largest submodule inside the kernel of
    /// the `1⊗1` coordinate.
    pub fn head(&self) -> Result<FDModule> {
        let m = &self.module;
        let d = m.dim();
        let p = m.modulus();
        let transposes: Vec<Matrix> = m.gens().values().map(|x| x.transpose()).collect();
        let mut span = Echelon::new(d, p);
        let mut e0 = vec![0u64; d];
        e0[0] = 1;
        let mut queue = vec![e0];
        span.insert(&queue[0]);
        while let Some(v) = queue.pop() {
            for t in &transposes {
                let w = t.mul_vec(&v);
                if span.insert(&w) {
                    queue.push(w);
                }
            }
        }
        let functionals = Matrix::from_vectors(span.basis(), d, p);
        let rad = functionals.nullspace();
        m.quotient(&rad)
    }
}

/// `[X, Y] = XY − YX` and `X^p = X^{[p]} + χ(X)^p` on the generator matrices.
pub fn relation_checks(chi: &SubregChi, m: &FDModule) -> (bool, bool) {
    let (n, p) = (chi.n, chi.p);
    let basis = sl_basis(n);
    let mats: Vec<&Matrix> = basis
        .iter()
        .map(|e| m.gen(&e.name()).expect("generator"))
        .collect();
    let mut lie = true;
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate().skip(i + 1) {
            let c = coords(&x.matrix(n, p).commutator(&y.matrix(n, p)), &basis);
            let mut want = Matrix::zeros(m.dim(), m.dim(), p);
            for (z, &cz) in c.iter().enumerate() {
                if cz != 0 {
                    want = want.add(&mats[z].scale(cz));
                }
            }
            if mats[i].commutator(mats[j]) != want {
                lie = false;
            }
        }
    }
    let ppow = basis.iter().zip(&mats).all(|(e, x)| {
        let xp = x.pow(p);
        match e {
            Elem::H(_) => xp == **x,
            Elem::E(..) => xp == Matrix::scalar(m.dim(), chi.eval(&e.matrix(n, p)), p),
        }
    });
    (lie, ppow)
}

/// The simple modules `L_i`, graded so that the `𝔟_+` Vermas have layers
/// `L_i, L_{i+1}[−1], …`.
#[derive(Clone, Debug)]
pub struct SimpleList {
    /// label `i` of each simple
    pub labels: Vec<usize>,
    pub modules: Vec<FDModule>,
}

impl SimpleList {
    pub fn by_label(&self, i: usize) -> Option<&FDModule> {
        self.labels
            .iter()
            .position(|&l| l == i)
            .map(|k| &self.modules[k])
    }

    pub fn dims(&self) -> Vec<usize> {
        self.modules.iter().map(|m| m.dim()).collect()
    }
}

fn small_dim(n: usize, p: u64) -> usize {
    (p as usize).pow(((n * n - n - 2) / 2) as u32)
}

/// Builds the simples from heads of the `𝔟_+` Vermas over the dot orbit of `λ`.
pub fn simple_list(chi: &SubregChi, w: &WeightData) -> Result<SimpleList> {
    let n = chi.n;
    let p = chi.p;
    let bplus = flag_borel(chi, n - 1, 0)?;
    let mut heads: Vec<FDModule> = Vec::new();
    for mu in w.dot_orbit() {
        let h = baby_verma_lie(chi, &mu, &bplus)?.head()?;
        let mut known = false;
        for k in &heads {
            if k.dim() == h.dim() && fdrep::is_isomorphic(k, &h)? {
                known = true;
                break;
            }
        }
        if !known {
            heads.push(h);
        }
    }
    let z = baby_verma_lie(chi, w, &bplus)?.module;
    let layers = fdrep::loewy_series(&z, &heads)?;
    let unit = small_dim(n, p);
    let dims: Vec<usize> = layers.iter().map(|l| l.dim).collect();
    let expected = |i: usize| {
        (0..layers.len())
            .map(|t| unit * w.r_at(n - 1 - (i + t) % n) as usize)
            .collect::<Vec<_>>()
    };
    let i0 = (0..n)
        .find(|&i| expected(i) == dims)
        .ok_or_else(|| Error::Invalid(format!("layer dims {dims:?} match no cyclic labelling")))?;
    let mut labels = Vec::new();
    let mut modules = Vec::new();
    for (t, layer) in layers.iter().enumerate() {
        let [(k, delta)] = layer.graded[..] else {
            return Err(Error::Invalid(
                "Verma layer is not a single graded simple".into(),
            ));
        };
        // layer t ≅ heads[k] + δ, and should read L_{i0+t}[−t]
        let shift = delta.single().unwrap_or(0) + p as i64 * t as i64;
        labels.push((i0 + t) % n);
        modules.push(heads[k].shifted(Degree::Single(shift)));
    }
    Ok(SimpleList { labels, modules })
}

#[derive(Clone, Debug, Serialize)]
pub struct LayerPattern {
    pub dim: usize,
    pub label: usize,
    /// `j` in `L_label[j]`
    pub shift: i64,
}

/// Graded Loewy layers of a `𝔟_+` Verma against the labelled simples.
pub fn layer_pattern(z: &FDModule, simples: &SimpleList) -> Result<Vec<LayerPattern>> {
    let p = z.modulus() as i64;
    let layers = fdrep::loewy_series(z, &simples.modules)?;
    layers
        .iter()
        .map(|l| {
            let [(k, delta)] = l.graded[..] else {
                return Err(Error::Invalid("layer is not a single graded simple".into()));
            };
            let d = delta.single().unwrap_or(0);
            if d % p != 0 {
                return Err(Error::Invalid(format!(
                    "layer offset {d} is not a multiple of p"
                )));
            }
            Ok(LayerPattern {
                dim: l.dim,
                label: simples.labels[k],
                shift: d / p,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct VermaReport {
    pub schema: &'static str,
    pub n: usize,
    pub p: u64,
    pub r: Vec<u64>,
    pub k: usize,
    pub alpha: u64,
    pub g: Vec<Vec<u64>>,
    pub dim: usize,
    pub chi_vanishes: bool,
    pub lie_relations: bool,
    pub p_power_relations: bool,
    /// `(label, dim)` of each simple
    pub simples: Vec<(usize, usize)>,
    /// composition multiplicities in the order of `simples`
    pub multiplicities: Vec<usize>,
    /// graded layers, for the standard Borel only
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layers: Option<Vec<LayerPattern>>,
    pub end_dim: usize,
}

pub fn verma_report(chi: &SubregChi, w: &WeightData, bor: &FlagBorel) -> Result<VermaReport> {
    let simples = simple_list(chi, w)?;
    verma_report_with(chi, w, bor, &simples)
}

pub fn verma_report_with(
    chi: &SubregChi,
    w: &WeightData,
    bor: &FlagBorel,
    simples: &SimpleList,
) -> Result<VermaReport> {
    let z = baby_verma_lie(chi, w, bor)?;
    let (lie, ppow) = relation_checks(chi, &z.module);
    let ungraded: Vec<FDModule> = simples.modules.iter().map(forget_grading).collect();
    let multiplicities = fdrep::composition_multiplicities(&forget_grading(&z.module), &ungraded)?;
    let layers = if bor.is_standard() {
        Some(layer_pattern(&z.module, simples)?)
    } else {
        None
    };
    Ok(VermaReport {
        schema: "subregular.modlie.verma/1",
        n: chi.n,
        p: chi.p,
        r: w.r.clone(),
        k: bor.k,
        alpha: bor.alpha,
        g: bor.g.row_vectors(),
        dim: z.dim(),
        chi_vanishes: chi_vanishes_on_borel(chi, bor),
        lie_relations: lie,
        p_power_relations: ppow,
        simples: simples.labels.iter().copied().zip(simples.dims()).collect(),
        multiplicities,
        layers,
        end_dim: z.end_dim(),
    })
}

pub fn end_dim_at_flag(chi: &SubregChi, w: &WeightData, bor: &FlagBorel) -> Result<usize> {
    Ok(baby_verma_lie(chi, w, bor)?.end_dim())
}

fn forget_grading(m: &FDModule) -> FDModule {
    let gens: Vec<(String, Matrix)> = m
        .gens()
        .iter()
        .map(|(k, x)| (k.clone(), x.clone()))
        .collect();
    let toral: Vec<&str> = m.toral().iter().map(|s| s.as_str()).collect();
    FDModule::new(m.modulus(), m.dim(), gens)
        .expect("same data")
        .with_toral(&toral)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chi_table() {
        let chi = SubregChi::new(3, 5).unwrap();
        let t = chi.table();
        assert_eq!(t["E21"], 1);
        assert_eq!(t.values().sum::<u64>(), 1);
        assert!(SubregChi::new(3, 3).is_err());
    }

    #[test]
    fn flags() {
        let chi = SubregChi::new(3, 5).unwrap();
        let b = flag_borel(&chi, 2, 0).unwrap();
        assert!(b.is_standard());
        let b0 = flag_borel(&chi, 0, 0).unwrap();
        assert_eq!(b0.g.det(), 1);
        assert!(!b0.is_standard());
        for (k, a) in [(0, 0), (1, 0), (1, 3), (2, 0), (2, 4)] {
            let b = flag_borel(&chi, k, a).unwrap();
            assert_eq!(b.g.det(), 1);
            assert!(chi_vanishes_on_borel(&chi, &b));
            assert!(torus_consistency(&chi, k, a).unwrap());
        }
        // F_{n-k,α} tends to F_{n-k-1,0} as α → ∞
        let n = 3;
        let p = 5;
        for k in 1..n - 1 {
            let mut cols = flag_vectors(n, n - k, 0, p).unwrap();
            cols[n - k - 1] = {
                let mut v = vec![0u64; n];
                v[n - 1] = 1;
                v
            };
            cols[n - k] = {
                let mut v = vec![0u64; n];
                v[n - k - 1] = 1;
                v
            };
            let lim = Matrix::from_columns(&cols, n, p);
            let lim = FlagBorel {
                k: 0,
                alpha: 0,
                g: lim,
            };
            assert!(lim.same_borel(&flag_borel(&chi, n - k - 1, 0).unwrap()));
        }
    }

    #[test]
    fn restricted_sl2() {
        let chi = SubregChi::new(2, 3).unwrap();
        let w = WeightData::new(3, &[1]).unwrap();
        let b = flag_borel(&chi, 1, 0).unwrap();
        let z = baby_verma_lie(&chi, &w, &b).unwrap();
        assert_eq!(z.dim(), 3);
        let h = z.module.gen("H1").unwrap();
        // λ = 0: eigenvalues 0, −2, −4
        let diag: Vec<u64> = (0..3).map(|i| h.get(i, i)).collect();
        assert_eq!(diag, vec![0, 1, 2]);
        let (lie, ppow) = relation_checks(&chi, &z.module);
        assert!(lie && ppow);
        assert_eq!(z.end_dim(), fdrep::end_basis(&z.module).unwrap().len());
    }

    #[test]
    fn sl2_simples() {
        let chi = SubregChi::new(2, 5).unwrap();
        let w = WeightData::new(5, &[2]).unwrap();
        let s = simple_list(&chi, &w).unwrap();
        let mut dims = s.dims();
        dims.sort();
        assert_eq!(dims, vec![2, 3]);
        assert_eq!(s.by_label(0).unwrap().dim(), 2);
        for (k, a) in [(1, 0), (1, 1), (1, 3), (0, 0)] {
            let rep = verma_report_with(&chi, &w, &flag_borel(&chi, k, a).unwrap(), &s).unwrap();
            assert_eq!(rep.multiplicities, vec![1, 1]);
            assert!(rep.lie_relations && rep.p_power_relations);
            let z = baby_verma_lie(&chi, &w, &flag_borel(&chi, k, a).unwrap()).unwrap();
            assert_eq!(z.end_dim(), fdrep::end_basis(&z.module).unwrap().len());
        }
    }

    #[test]
    fn graded_monomial_flags() {
        let chi = SubregChi::new(3, 5).unwrap();
        let w = WeightData::new(5, &[1, 2]).unwrap();
        for k in [0, 1, 2] {
            let z = baby_verma_lie(&chi, &w, &flag_borel(&chi, k, 0).unwrap()).unwrap();
            assert!(z.module.is_homogeneous(&gen_degrees(3)), "k = {k}");
        }
    }

    #[test]
    fn sl3_fixture() {
        let chi = SubregChi::new(3, 5).unwrap();
        let w = WeightData::new(5, &[1, 2]).unwrap();
        let s = simple_list(&chi, &w).unwrap();
        let mut by_label: Vec<(usize, usize)> = s.labels.iter().copied().zip(s.dims()).collect();
        by_label.sort();
        assert_eq!(by_label, vec![(0, 50), (1, 25), (2, 50)]);
        let bplus = flag_borel(&chi, 2, 0).unwrap();
        for mu in w.dot_orbit() {
            let z = baby_verma_lie(&chi, &mu, &bplus).unwrap();
            let pat = layer_pattern(&z.module, &s).unwrap();
            assert_eq!(pat.len(), 3);
            for (t, l) in pat.iter().enumerate() {
                assert_eq!(l.label, (pat[0].label + t) % 3);
                assert_eq!(l.shift, pat[0].shift - t as i64);
            }
        }
        for (k, a) in [(1, 0), (1, 1), (1, 2), (2, 0), (2, 3)] {
            let rep = verma_report_with(&chi, &w, &flag_borel(&chi, k, a).unwrap(), &s).unwrap();
            if a != 0 {
                assert_eq!(rep.end_dim, 1);
            }
            assert_eq!(rep.dim, 125);
            assert_eq!(rep.multiplicities, vec![1, 1, 1]);
            assert!(rep.lie_relations && rep.p_power_relations);
        }
    }
}
