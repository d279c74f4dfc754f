//! Finite-dimensional modules given by one matrix per algebra generator.
//!
//! Generators act on column vectors. A module may carry a grading (one
//! degree per basis vector) and a list of toral generators: generators that
//! act semisimply with eigenvalues in `F_q` on every module they are
//! compared with. Hom computations split along joint eigenspaces of the
//! toral generators, which keeps the linear systems small.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::{intersect, Echelon, Matrix};
use crate::{Error, Result};

/// The degree of a homogeneous basis vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Degree {
    Single(i64),
    Pair(i64, i64),
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, o: Degree) -> Degree {
        match (self, o) {
            (Degree::Single(a), Degree::Single(b)) => Degree::Single(a + b),
            (Degree::Pair(a, b), Degree::Pair(c, d)) => Degree::Pair(a + c, b + d),
            _ => panic!("mixed degree types"),
        }
    }
}

impl Neg for Degree {
    type Output = Degree;
    fn neg(self) -> Degree {
        match self {
            Degree::Single(a) => Degree::Single(-a),
            Degree::Pair(a, b) => Degree::Pair(-a, -b),
        }
    }
}

impl Sub for Degree {
    type Output = Degree;
    fn sub(self, o: Degree) -> Degree {
        self + (-o)
    }
}

impl Degree {
    pub fn single(self) -> Option<i64> {
        match self {
            Degree::Single(a) => Some(a),
            Degree::Pair(..) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FDModule {
    dim: usize,
    q: u64,
    gens: BTreeMap<String, Matrix>,
    grading: Option<Vec<Degree>>,
    toral: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct FDModuleRepr {
    dim: usize,
    q: u64,
    gens: BTreeMap<String, Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    grading: Option<Vec<Degree>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    toral: Vec<String>,
}

impl Serialize for FDModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FDModuleRepr {
            dim: self.dim,
            q: self.q,
            gens: self
                .gens
                .iter()
                .map(|(k, m)| (k.clone(), m.row_vectors()))
                .collect(),
            grading: self.grading.clone(),
            toral: self.toral.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FDModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<FDModule, D::Error> {
        let r = FDModuleRepr::deserialize(d)?;
        let gens = r
            .gens
            .into_iter()
            .map(|(k, rows)| (k, Matrix::from_vectors(&rows, r.dim, r.q)))
            .collect::<Vec<_>>();
        let mut m = FDModule::new(r.q, r.dim, gens).map_err(serde::de::Error::custom)?;
        if let Some(g) = r.grading {
            m = m.with_grading(g).map_err(serde::de::Error::custom)?;
        }
        Ok(m.with_toral(&r.toral.iter().map(String::as_str).collect::<Vec<_>>()))
    }
}

/// One semisimple layer of a radical or socle series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layer {
    pub dim: usize,
    /// multiplicity of each supplied simple, in list order
    pub multiplicities: Vec<usize>,
    /// for graded modules: (simple index, degree offset) per summand, where the
    /// summand's degrees are the simple's degrees plus the offset
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub graded: Vec<(usize, Degree)>,
}

impl FDModule {
    pub fn new(q: u64, dim: usize, gens: Vec<(impl Into<String>, Matrix)>) -> Result<FDModule> {
        let mut map = BTreeMap::new();
        for (name, m) in gens {
            let name = name.into();
            if m.rows() != dim || m.cols() != dim || m.modulus() != q {
                return Err(Error::Invalid(format!(
                    "generator {name} is not a {dim}x{dim} matrix over F_{q}"
                )));
            }
            map.insert(name, m);
        }
        Ok(FDModule {
            dim,
            q,
            gens: map,
            grading: None,
            toral: Vec::new(),
        })
    }

    pub fn with_grading(mut self, grading: Vec<Degree>) -> Result<FDModule> {
        if grading.len() != self.dim {
            return Err(Error::Invalid(
                "grading length differs from dimension".into(),
            ));
        }
        self.grading = Some(grading);
        Ok(self)
    }

    pub fn with_toral(mut self, names: &[&str]) -> FDModule {
        self.toral = names
            .iter()
            .filter(|n| self.gens.contains_key(**n))
            .map(|s| s.to_string())
            .collect();
        self
    }

    pub fn zero(q: u64, names: &[&str]) -> FDModule {
        let gens = names
            .iter()
            .map(|n| (n.to_string(), Matrix::zeros(0, 0, q)))
            .collect();
        FDModule {
            dim: 0,
            q,
            gens,
            grading: None,
            toral: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn gens(&self) -> &BTreeMap<String, Matrix> {
        &self.gens
    }

    pub fn gen(&self, name: &str) -> Option<&Matrix> {
        self.gens.get(name)
    }

    pub fn gen_names(&self) -> Vec<&str> {
        self.gens.keys().map(String::as_str).collect()
    }

    pub fn grading(&self) -> Option<&[Degree]> {
        self.grading.as_deref()
    }

    pub fn toral(&self) -> &[String] {
        &self.toral
    }

    /// `M[δ]`: every degree moved by `delta`.
    pub fn shifted(&self, delta: Degree) -> FDModule {
        let mut m = self.clone();
        if let Some(g) = m.grading.as_mut() {
            for d in g.iter_mut() {
                *d = *d + delta;
            }
        }
        m
    }

    /// Checks that each generator maps degree `d` into `d + deg(x)`.
    pub fn is_homogeneous(&self, gen_degrees: &BTreeMap<String, Degree>) -> bool {
        let Some(g) = &self.grading else { return false };
        self.gens.iter().all(|(name, m)| {
            let Some(&dx) = gen_degrees.get(name) else {
                return false;
            };
            (0..self.dim).all(|r| (0..self.dim).all(|c| m.get(r, c) == 0 || g[r] == g[c] + dx))
        })
    }

    fn same_generators(&self, other: &FDModule) -> Result<()> {
        if self.q != other.q {
            return Err(Error::GeneratorMismatch(format!(
                "fields F_{} and F_{}",
                self.q, other.q
            )));
        }
        if !self.gens.keys().eq(other.gens.keys()) {
            return Err(Error::GeneratorMismatch(format!(
                "{:?} vs {:?}",
                self.gen_names(),
                other.gen_names()
            )));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &FDModule) -> Result<FDModule> {
        self.same_generators(other)?;
        let gens = self
            .gens
            .iter()
            .map(|(k, m)| (k.clone(), m.block_diag(&other.gens[k])))
            .collect();
        let grading = match (&self.grading, &other.grading) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        let toral = self
            .toral
            .iter()
            .filter(|t| other.toral.contains(t))
            .cloned()
            .collect();
        Ok(FDModule {
            dim: self.dim + other.dim,
            q: self.q,
            gens,
            grading,
            toral,
        })
    }

    /// Basis of the submodule generated by `vectors`.
    pub fn spin(&self, vectors: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let mut e = Echelon::new(self.dim, self.q);
        let mut todo: Vec<Vec<u64>> = Vec::new();
        for v in vectors {
            if e.insert(v) {
                todo.push(v.clone());
            }
        }
        while let Some(v) = todo.pop() {
            for m in self.gens.values() {
                let w = m.mul_vec(&v);
                if e.insert(&w) {
                    todo.push(w);
                }
            }
        }
        e.reduced_basis().0
    }

    pub fn is_submodule(&self, basis: &[Vec<u64>]) -> bool {
        let mut e = Echelon::new(self.dim, self.q);
        for v in basis {
            e.insert(v);
        }
        basis
            .iter()
            .all(|v| self.gens.values().all(|m| e.contains(&m.mul_vec(v))))
    }

    /// The submodule spanned by `basis` and the quotient by it, in adapted
    /// bases: the submodule uses the reduced echelon basis, the quotient the
    /// images of the standard vectors outside the pivot columns.
    pub fn split(&self, basis: &[Vec<u64>]) -> Result<(FDModule, FDModule, Matrix)> {
        let mut e = Echelon::new(self.dim, self.q);
        for v in basis {
            e.insert(v);
        }
        let (rows, pivots) = e.reduced_basis();
        let comp = e.complement_indices();
        let q = self.q;
        let coords = |w: &[u64]| -> Vec<u64> { pivots.iter().map(|&p| w[p]).collect() };
        let project = |w: &[u64]| -> Vec<u64> {
            comp.iter()
                .map(|&c| {
                    let mut x = w[c];
                    for (row, &p) in rows.iter().zip(&pivots) {
                        x = (x + (q - w[p]) * row[c]) % q;
                    }
                    x
                })
                .collect()
        };
        let mut sub_gens = Vec::new();
        let mut quo_gens = Vec::new();
        for (name, m) in &self.gens {
            let mut s = Matrix::zeros(rows.len(), rows.len(), q);
            for (j, u) in rows.iter().enumerate() {
                let w = m.mul_vec(u);
                if !e.contains(&w) {
                    return Err(Error::Invalid(format!(
                        "subspace is not stable under {name}"
                    )));
                }
                for (i, x) in coords(&w).into_iter().enumerate() {
                    s.set(i, j, x);
                }
            }
            let mut t = Matrix::zeros(comp.len(), comp.len(), q);
            for (j, &c) in comp.iter().enumerate() {
                let w = m.column(c);
                for (i, x) in project(&w).into_iter().enumerate() {
                    t.set(i, j, x);
                }
            }
            sub_gens.push((name.clone(), s));
            quo_gens.push((name.clone(), t));
        }
        let toral: Vec<&str> = self.toral.iter().map(String::as_str).collect();
        let mut sub = FDModule::new(q, rows.len(), sub_gens)?.with_toral(&toral);
        let mut quo = FDModule::new(q, comp.len(), quo_gens)?.with_toral(&toral);
        if let Some(g) = &self.grading {
            sub.grading = Some(pivots.iter().map(|&p| g[p]).collect());
            quo.grading = Some(comp.iter().map(|&c| g[c]).collect());
        }
        // projection M -> M/N in the quotient basis
        let mut proj = Matrix::zeros(comp.len(), self.dim, q);
        for j in 0..self.dim {
            let mut unit = vec![0u64; self.dim];
            unit[j] = 1;
            for (i, x) in project(&unit).into_iter().enumerate() {
                proj.set(i, j, x);
            }
        }
        Ok((sub, quo, proj))
    }

    pub fn submodule(&self, basis: &[Vec<u64>]) -> Result<FDModule> {
        self.split(basis).map(|(s, _, _)| s)
    }

    pub fn quotient(&self, basis: &[Vec<u64>]) -> Result<FDModule> {
        self.split(basis).map(|(_, q, _)| q)
    }

    /// Basis of the common kernel of `maps` (each a matrix with `dim` columns).
    pub fn common_kernel(&self, maps: &[Matrix]) -> Vec<Vec<u64>> {
        let mut rows = Vec::new();
        for m in maps {
            rows.extend(m.row_vectors());
        }
        if rows.is_empty() {
            return identity_basis(self.dim);
        }
        Matrix::from_vectors(&rows, self.dim, self.q).nullspace()
    }
}

fn identity_basis(n: usize) -> Vec<Vec<u64>> {
    (0..n)
        .map(|i| {
            let mut v = vec![0u64; n];
            v[i] = 1;
            v
        })
        .collect()
}

/// Joint eigenvector basis of the toral generators: returns the change of
/// basis (eigenvectors as columns), its inverse and the weight of each column.
fn weight_basis(m: &FDModule, toral: &[String]) -> Result<(Matrix, Matrix, Vec<Vec<u64>>)> {
    let q = m.q;
    let n = m.dim;
    if toral.iter().all(|t| m.gens[t].is_diagonal()) {
        let weights = (0..n)
            .map(|i| toral.iter().map(|t| m.gens[t].get(i, i)).collect())
            .collect();
        return Ok((Matrix::identity(n, q), Matrix::identity(n, q), weights));
    }
    // refine eigenspaces one toral generator at a time
    let mut spaces: Vec<(Vec<u64>, Vec<Vec<u64>>)> = vec![(Vec::new(), identity_basis(n))];
    for t in toral {
        let x = &m.gens[t];
        let mut next = Vec::new();
        for (w, basis) in spaces {
            let mut found = 0;
            for c in 0..q {
                let shifted = x.sub(&Matrix::scalar(n, c, q));
                let ker = shifted.nullspace();
                let part = intersect(&ker, &basis, n, q);
                if !part.is_empty() {
                    found += part.len();
                    let mut w2 = w.clone();
                    w2.push(c);
                    next.push((w2, part));
                }
            }
            if found != basis.len() {
                return Err(Error::Invalid(format!(
                    "generator {t} is not diagonalisable over F_{q}"
                )));
            }
        }
        spaces = next;
    }
    let mut cols = Vec::new();
    let mut weights = Vec::new();
    for (w, basis) in spaces {
        for v in basis {
            cols.push(v);
            weights.push(w.clone());
        }
    }
    let p = Matrix::from_columns(&cols, n, q);
    let pinv = p.inverse()?;
    Ok((p, pinv, weights))
}

fn conjugate(m: &FDModule, p: &Matrix, pinv: &Matrix) -> BTreeMap<String, Matrix> {
    m.gens
        .iter()
        .map(|(k, x)| (k.clone(), pinv.mul(x).mul(p)))
        .collect()
}

/// Sparse columns: for each column `j`, the nonzero `(row, value)` entries.
fn sparse_columns(x: &Matrix) -> Vec<Vec<(usize, u64)>> {
    (0..x.cols())
        .map(|j| {
            (0..x.rows())
                .filter_map(|i| Some((i, x.get(i, j))).filter(|e| e.1 != 0))
                .collect()
        })
        .collect()
}

fn sparse_rows(x: &Matrix) -> Vec<Vec<(usize, u64)>> {
    (0..x.rows())
        .map(|i| {
            (0..x.cols())
                .filter_map(|j| Some((j, x.get(i, j))).filter(|e| e.1 != 0))
                .collect()
        })
        .collect()
}

/// Basis of `Hom(M, N)`, each map an `N.dim × M.dim` matrix.
pub fn hom(m: &FDModule, n: &FDModule) -> Result<Vec<Matrix>> {
    hom_filtered(m, n, |_, _| true)
}

/// Homomorphisms mapping degree `d` into degree `d + shift`.
pub fn hom_graded(m: &FDModule, n: &FDModule, shift: Degree) -> Result<Vec<Matrix>> {
    let (Some(gm), Some(gn)) = (m.grading.clone(), n.grading.clone()) else {
        return Err(Error::Invalid("graded Hom needs graded modules".into()));
    };
    hom_filtered(m, n, move |r, i| gn[r] == gm[i] + shift)
}

fn hom_filtered(
    m: &FDModule,
    n: &FDModule,
    allowed: impl Fn(usize, usize) -> bool,
) -> Result<Vec<Matrix>> {
    m.same_generators(n)?;
    let q = m.q;
    if m.dim == 0 || n.dim == 0 {
        return Ok(Vec::new());
    }
    let toral: Vec<String> = m
        .toral
        .iter()
        .filter(|t| n.toral.contains(t))
        .cloned()
        .collect();
    let (pm, pm_inv, wm) = weight_basis(m, &toral)?;
    let (pn, pn_inv, wn) = weight_basis(n, &toral)?;
    let trivial_basis = toral
        .iter()
        .all(|t| m.gens[t].is_diagonal() && n.gens[t].is_diagonal());
    // the degree filter refers to the original bases, so with a change of
    // basis it is applied to the solutions afterwards
    let use_filter = trivial_basis;
    let gm = conjugate(m, &pm, &pm_inv);
    let gn = conjugate(n, &pn, &pn_inv);
    let mut index = vec![vec![usize::MAX; m.dim]; n.dim];
    let mut unknowns = Vec::new();
    for r in 0..n.dim {
        for i in 0..m.dim {
            if wn[r] == wm[i] && (!use_filter || allowed(r, i)) {
                index[r][i] = unknowns.len();
                unknowns.push((r, i));
            }
        }
    }
    let u = unknowns.len();
    if u == 0 {
        return Ok(Vec::new());
    }
    let mut eqs = Echelon::new(u, q);
    for name in gm.keys() {
        if toral.contains(name) {
            continue;
        }
        let xm = sparse_columns(&gm[name]);
        let xn = sparse_rows(&gn[name]);
        let mut row: BTreeMap<usize, u64> = BTreeMap::new();
        for r in 0..n.dim {
            for j in 0..m.dim {
                row.clear();
                // (φ X_M)[r, j] − (X_N φ)[r, j]
                for &(i, x) in &xm[j] {
                    let id = index[r][i];
                    if id != usize::MAX {
                        *row.entry(id).or_insert(0) += x;
                    }
                }
                for &(s, x) in &xn[r] {
                    let id = index[s][j];
                    if id != usize::MAX {
                        *row.entry(id).or_insert(0) += q - x;
                    }
                }
                let entries: Vec<(usize, u64)> = row
                    .iter()
                    .map(|(&k, &v)| (k, v % q))
                    .filter(|e| e.1 != 0)
                    .collect();
                if !entries.is_empty() {
                    eqs.insert_sparse(&entries);
                    if eqs.dim() == u {
                        return Ok(Vec::new());
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for sol in eqs.solutions() {
        let mut phi = Matrix::zeros(n.dim, m.dim, q);
        for (k, &(r, i)) in unknowns.iter().enumerate() {
            phi.set(r, i, sol[k]);
        }
        let phi = if trivial_basis {
            phi
        } else {
            pn.mul(&phi).mul(&pm_inv)
        };
        out.push(phi);
    }
    if !use_filter {
        return Ok(restrict_basis(&out, &allowed, q));
    }
    Ok(out)
}

/// Subspace of span(`maps`) whose entries vanish outside `allowed`.
fn restrict_basis(maps: &[Matrix], allowed: &impl Fn(usize, usize) -> bool, q: u64) -> Vec<Matrix> {
    let Some(first) = maps.first() else {
        return Vec::new();
    };
    let (rows, cols) = (first.rows(), first.cols());
    let mut forbidden = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if !allowed(r, c) {
                forbidden.push((r, c));
            }
        }
    }
    if forbidden.is_empty() {
        return maps.to_vec();
    }
    let columns: Vec<Vec<u64>> = maps
        .iter()
        .map(|m| forbidden.iter().map(|&(r, c)| m.get(r, c)).collect())
        .collect();
    let system = Matrix::from_columns(&columns, forbidden.len(), q);
    system
        .nullspace()
        .into_iter()
        .map(|coef| {
            let mut acc = Matrix::zeros(rows, cols, q);
            for (m, &c) in maps.iter().zip(&coef) {
                if c != 0 {
                    acc = acc.add(&m.scale(c));
                }
            }
            acc
        })
        .collect()
}

pub fn end_basis(m: &FDModule) -> Result<Vec<Matrix>> {
    hom(m, m)
}

/// Scalar `c` with `x − c·I` nilpotent, if one exists.
fn scalar_part(x: &Matrix) -> Option<u64> {
    let n = x.rows();
    let q = x.modulus();
    (0..q).find(|&c| x.sub(&Matrix::scalar(n, c, q)).is_nilpotent())
}

/// End(M) is local with residue field `F_q`: End = F_q·I ⊕ J with J a
/// nilpotent ideal. Modules whose endomorphism ring is local with a larger
/// residue field are reported as decomposable.
pub fn is_indecomposable(m: &FDModule) -> Result<bool> {
    if m.dim == 0 {
        return Ok(false);
    }
    let basis = end_basis(m)?;
    let q = m.q;
    let n = m.dim;
    let mut nil = Vec::new();
    for x in &basis {
        let Some(c) = scalar_part(x) else {
            return Ok(false);
        };
        let y = x.sub(&Matrix::scalar(n, c, q));
        if !y.is_zero() {
            nil.push(y);
        }
    }
    let flat = |ms: &[Matrix]| -> Echelon {
        let mut e = Echelon::new(n * n, q);
        for y in ms {
            e.insert(y.entries());
        }
        e
    };
    let jspan = flat(&nil);
    if jspan.dim() + 1 != basis.len() {
        return Ok(false);
    }
    // J closed under products and nilpotent as an ideal
    let mut power: Vec<Matrix> = nil.clone();
    for _ in 0..=n {
        let mut next = Echelon::new(n * n, q);
        let mut mats = Vec::new();
        for a in &power {
            for b in &nil {
                let ab = a.mul(b);
                if !jspan.contains(ab.entries()) {
                    return Ok(false);
                }
                if next.insert(ab.entries()) {
                    mats.push(ab);
                }
            }
        }
        if mats.is_empty() {
            return Ok(true);
        }
        power = mats;
    }
    Ok(false)
}

/// Brute-force search for an idempotent other than 0 and 1 in End(M).
/// Returns `None` when the search space exceeds `cap` elements.
pub fn has_nontrivial_idempotent(m: &FDModule, cap: u64) -> Result<Option<bool>> {
    let basis = end_basis(m)?;
    let q = m.q;
    let d = basis.len() as u32;
    let Some(total) = q.checked_pow(d).filter(|&t| t <= cap) else {
        return Ok(None);
    };
    let zero = Matrix::zeros(m.dim, m.dim, q);
    let one = Matrix::identity(m.dim, q);
    for idx in 0..total {
        let mut e = zero.clone();
        let mut k = idx;
        for b in &basis {
            let c = k % q;
            k /= q;
            if c != 0 {
                e = e.add(&b.scale(c));
            }
        }
        if e != zero && e != one && e.mul(&e) == e {
            return Ok(Some(true));
        }
    }
    Ok(Some(false))
}

fn combination(basis: &[Matrix], coef: &[u64], rows: usize, cols: usize, q: u64) -> Matrix {
    let mut acc = Matrix::zeros(rows, cols, q);
    for (b, &c) in basis.iter().zip(coef) {
        if c != 0 {
            acc = acc.add(&b.scale(c));
        }
    }
    acc
}

/// Looks for an invertible element in the span of `homs`.
pub fn find_isomorphism(homs: &[Matrix], dim: usize, q: u64) -> Option<Matrix> {
    if homs.is_empty() {
        return None;
    }
    let d = homs.len() as u32;
    match q.checked_pow(d).filter(|&t| t <= 1 << 14) {
        Some(total) => (1..total).find_map(|idx| {
            let mut k = idx;
            let coef: Vec<u64> = (0..d)
                .map(|_| {
                    let c = k % q;
                    k /= q;
                    c
                })
                .collect();
            let x = combination(homs, &coef, dim, dim, q);
            (x.rank() == dim).then_some(x)
        }),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..256).find_map(|_| {
                let coef: Vec<u64> = (0..d).map(|_| rng.gen_range(0..q)).collect();
                let x = combination(homs, &coef, dim, dim, q);
                (x.rank() == dim).then_some(x)
            })
        }
    }
}

pub fn is_isomorphic(m: &FDModule, n: &FDModule) -> Result<bool> {
    if m.dim != n.dim {
        return Ok(false);
    }
    if m.dim == 0 {
        return Ok(true);
    }
    Ok(find_isomorphism(&hom(m, n)?, m.dim, m.q).is_some())
}

pub fn is_isomorphic_graded(m: &FDModule, n: &FDModule, shift: Degree) -> Result<bool> {
    if m.dim != n.dim {
        return Ok(false);
    }
    Ok(find_isomorphism(&hom_graded(m, n, shift)?, m.dim, m.q).is_some())
}

/// `rad M`: the common kernel of all maps to the supplied simples.
pub fn radical(m: &FDModule, simples: &[FDModule]) -> Result<Vec<Vec<u64>>> {
    let mut maps = Vec::new();
    for l in simples {
        maps.extend(hom(m, l)?);
    }
    Ok(m.common_kernel(&maps))
}

/// `soc M`: the sum of images of all maps from the supplied simples.
pub fn socle(m: &FDModule, simples: &[FDModule]) -> Result<Vec<Vec<u64>>> {
    let mut e = Echelon::new(m.dim, m.q);
    for l in simples {
        for phi in hom(l, m)? {
            for c in 0..phi.cols() {
                e.insert(&phi.column(c));
            }
        }
    }
    Ok(e.reduced_basis().0)
}

fn end_dims(simples: &[FDModule]) -> Result<Vec<usize>> {
    simples
        .iter()
        .map(|l| hom(l, l).map(|h| h.len().max(1)))
        .collect()
}

/// Decomposes a semisimple module against the simple list.
fn describe_layer(layer: &FDModule, simples: &[FDModule], ends: &[usize]) -> Result<Layer> {
    let mut multiplicities = Vec::new();
    let mut graded = Vec::new();
    for (k, l) in simples.iter().enumerate() {
        let count = hom(layer, l)?.len() / ends[k];
        multiplicities.push(count);
        if let (Some(gq), Some(gl)) = (layer.grading(), l.grading()) {
            if count > 0 {
                let offsets: BTreeSet<Degree> = gq
                    .iter()
                    .flat_map(|&a| gl.iter().map(move |&b| a - b))
                    .collect();
                for delta in offsets {
                    let c = hom_graded(layer, l, -delta)?.len() / ends[k];
                    for _ in 0..c {
                        graded.push((k, delta));
                    }
                }
            }
        }
    }
    let found: usize = multiplicities
        .iter()
        .zip(simples)
        .map(|(c, l)| c * l.dim())
        .sum();
    if found != layer.dim() {
        return Err(Error::UnknownCompositionFactor {
            found,
            expected: layer.dim(),
        });
    }
    Ok(Layer {
        dim: layer.dim(),
        multiplicities,
        graded,
    })
}

/// Radical series, head first.
pub fn loewy_series(m: &FDModule, simples: &[FDModule]) -> Result<Vec<Layer>> {
    let ends = end_dims(simples)?;
    let mut layers = Vec::new();
    let mut cur = m.clone();
    while cur.dim() > 0 {
        let rad = radical(&cur, simples)?;
        if rad.len() == cur.dim() {
            return Err(Error::UnknownCompositionFactor {
                found: m.dim() - cur.dim(),
                expected: m.dim(),
            });
        }
        let (sub, head, _) = cur.split(&rad)?;
        layers.push(describe_layer(&head, simples, &ends)?);
        cur = sub;
    }
    Ok(layers)
}

/// Socle series, socle first.
pub fn socle_series(m: &FDModule, simples: &[FDModule]) -> Result<Vec<Layer>> {
    let ends = end_dims(simples)?;
    let mut layers = Vec::new();
    let mut cur = m.clone();
    while cur.dim() > 0 {
        let soc = socle(&cur, simples)?;
        if soc.is_empty() {
            return Err(Error::UnknownCompositionFactor {
                found: m.dim() - cur.dim(),
                expected: m.dim(),
            });
        }
        let (s, rest, _) = cur.split(&soc)?;
        layers.push(describe_layer(&s, simples, &ends)?);
        cur = rest;
    }
    Ok(layers)
}

/// `[M : L]` for each supplied simple, by stripping socles.
pub fn composition_multiplicities(m: &FDModule, simples: &[FDModule]) -> Result<Vec<usize>> {
    let layers = socle_series(m, simples)?;
    let mut total = vec![0; simples.len()];
    for layer in layers {
        for (t, c) in total.iter_mut().zip(layer.multiplicities) {
            *t += c;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// k[x]/(x^d) as a module over itself.
    fn truncated(d: usize, q: u64) -> FDModule {
        let mut x = Matrix::zeros(d, d, q);
        for i in 0..d.saturating_sub(1) {
            x.set(i + 1, i, 1);
        }
        FDModule::new(q, d, vec![("x", x)]).unwrap()
    }

    #[test]
    fn hom_is_additive() {
        let m = truncated(3, 5);
        let s = truncated(1, 5);
        let a = hom(&m, &m).unwrap().len();
        let b = hom(&m, &m.direct_sum(&m).unwrap()).unwrap().len();
        assert_eq!(b, 2 * a);
        assert_eq!(
            hom(&m.direct_sum(&s).unwrap(), &s).unwrap().len(),
            hom(&m, &s).unwrap().len() + 1
        );
    }

    #[test]
    fn indecomposable_agrees_with_idempotent_search() {
        for d in 1..4 {
            let m = truncated(d, 3);
            assert!(is_indecomposable(&m).unwrap());
            assert_eq!(has_nontrivial_idempotent(&m, 1 << 12).unwrap(), Some(false));
            let mm = m.direct_sum(&m).unwrap();
            assert!(!is_indecomposable(&mm).unwrap());
            if let Some(found) = has_nontrivial_idempotent(&mm, 1 << 16).unwrap() {
                assert!(found);
            }
        }
    }

    #[test]
    fn uniserial_series() {
        let m = truncated(4, 7);
        let simple = truncated(1, 7);
        let rad = loewy_series(&m, std::slice::from_ref(&simple)).unwrap();
        assert_eq!(rad.len(), 4);
        let soc = socle_series(&m, std::slice::from_ref(&simple)).unwrap();
        assert_eq!(soc.len(), 4);
        assert_eq!(composition_multiplicities(&m, &[simple]).unwrap(), vec![4]);
    }

    #[test]
    fn unknown_factor_is_reported() {
        let m = truncated(2, 3);
        let other = FDModule::new(3, 1, vec![("x", Matrix::scalar(1, 1, 3))]).unwrap();
        assert!(matches!(
            composition_multiplicities(&m, &[other]),
            Err(Error::UnknownCompositionFactor { .. })
        ));
    }

    #[test]
    fn toral_split_matches_plain_hom() {
        // a 2-dim module with a diagonalisable but non-diagonal toral generator
        let q = 5;
        let t = Matrix::from_rows(&[vec![1, 1], vec![0, 2]], q);
        let x = Matrix::zeros(2, 2, q);
        let plain = FDModule::new(q, 2, vec![("t", t.clone()), ("x", x.clone())]).unwrap();
        let tor = plain.clone().with_toral(&["t"]);
        assert_eq!(
            hom(&plain, &plain).unwrap().len(),
            hom(&tor, &tor).unwrap().len()
        );
        for phi in hom(&tor, &tor).unwrap() {
            assert_eq!(phi.mul(&t), t.mul(&phi));
        }
    }

    #[test]
    fn json_shape() {
        let m = truncated(2, 3)
            .with_grading(vec![Degree::Single(0), Degree::Single(-1)])
            .unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(
            s,
            r#"{"dim":2,"q":3,"gens":{"x":[[0,0],[1,0]]},"grading":[0,-1]}"#
        );
        let back: FDModule = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
