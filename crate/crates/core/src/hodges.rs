//! Hodges' algebras `T(v)`, `𝔗(v) = T(v)/(a^p, b^p)` and
//! `t(v) = T(v)/(a^p, b^p, h^p − h)` over `F_p`, with
//! `v(z) = Π_{i<n} (z − (r_1 + … + r_i))`.
//!
//! Words use `a` of weight 1, `b` of weight `2n − 1` and `h` of weight 1,
//! with `h > b > a`. Graded modules carry the integer grading where `a` has
//! degree `n`, `b` degree `−n`, and `h` acts on degree `j` by `j/n`. The shift
//! `M[i]` adds `p·i` to every degree.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::fdrep::{self, Degree, FDModule, Layer};
use crate::freealg::{univariate_in_letter, Alphabet, FreeElt, UniPoly};
use crate::gsengine::{GSPair, Scope};
use crate::linalg::Matrix;
use crate::scalars::{inv_mod, is_prime};
use crate::{Error, Result};

/// Parameters `n`, `p` and `r_1..r_{n−1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgesData {
    n: usize,
    p: u64,
    r: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// `T(v)`
    T,
    /// `𝔗(v)`
    FrakT,
    /// `t(v)`
    Small,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// generated by `|0⟩` with `a|0⟩ = 0`
    Plain,
    /// generated by `|1⟩` with `b|1⟩ = 0`
    Primed,
}

pub fn poly_mul(f: &[u64], g: &[u64], p: u64) -> UniPoly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    trim(out)
}

fn trim(mut f: UniPoly) -> UniPoly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

/// `f(z + c)`.
pub fn poly_shift(f: &[u64], c: i64, p: u64) -> UniPoly {
    let c = c.rem_euclid(p as i64) as u64;
    let mut out: UniPoly = Vec::new();
    for &a in f.iter().rev() {
        // out = out·(z + c) + a
        let mut next = vec![0u64; out.len() + 1];
        for (i, &x) in out.iter().enumerate() {
            next[i + 1] = (next[i + 1] + x) % p;
            next[i] = (next[i] + x * c) % p;
        }
        next[0] = (next[0] + a) % p;
        out = trim(next);
    }
    out
}

pub fn poly_eval(f: &[u64], x: i64, p: u64) -> u64 {
    let x = x.rem_euclid(p as i64) as u64;
    f.iter().rev().fold(0, |acc, &a| (acc * x + a) % p)
}

impl HodgesData {
    pub fn new(n: usize, p: u64, r: &[u64]) -> Result<HodgesData> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n < 1 || r.len() + 1 != n {
            return Err(Error::Invalid(format!(
                "need {} values r_1..r_{{n-1}}",
                n.saturating_sub(1)
            )));
        }
        if n as u64 % p == 0 {
            return Err(Error::Invalid("n and p must be coprime".into()));
        }
        if r.iter().sum::<u64>() > p {
            return Err(Error::Invalid("r_1 + ... + r_{n-1} exceeds p".into()));
        }
        Ok(HodgesData {
            n,
            p,
            r: r.to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `r_i` for `0 ≤ i < n`, with `r_0 = p − Σ r_i`.
    pub fn r(&self, i: usize) -> u64 {
        if i == 0 {
            self.p - self.r.iter().sum::<u64>()
        } else {
            self.r[i - 1]
        }
    }

    pub fn rs(&self) -> Vec<u64> {
        (0..self.n).map(|i| self.r(i)).collect()
    }

    /// `s_i = r_1 + … + r_i` as an integer.
    pub fn partial_sum(&self, i: usize) -> i64 {
        self.r[..i].iter().sum::<u64>() as i64
    }

    /// The roots `s̄_0, …, s̄_{n−1}` of `v`.
    pub fn roots(&self) -> Vec<u64> {
        (0..self.n)
            .map(|i| self.partial_sum(i) as u64 % self.p)
            .collect()
    }

    pub fn is_root(&self, x: i64) -> bool {
        let x = x.rem_euclid(self.p as i64) as u64;
        self.roots().contains(&x)
    }

    pub fn v(&self) -> UniPoly {
        let p = self.p;
        self.roots()
            .iter()
            .fold(vec![1], |acc, &s| poly_mul(&acc, &[(p - s) % p, 1], p))
    }

    /// `v_{(i)}(z) = Π_{k<i} v(z + k)` and `v_{(−i)}(z) = Π_{k<i} v(z − k)`.
    pub fn shifted_product(&self, i: i64) -> Result<UniPoly> {
        if i == 0 || i.unsigned_abs() > self.p {
            return Err(Error::Invalid(format!(
                "shift index {i} must satisfy 1 <= |i| <= p"
            )));
        }
        let sign = i.signum();
        let v = self.v();
        Ok((0..i.abs()).fold(vec![1], |acc, k| {
            poly_mul(&acc, &poly_shift(&v, sign * k, self.p), self.p)
        }))
    }

    pub fn alphabet(&self) -> Alphabet {
        let w = 2 * self.n as u32 - 1;
        Alphabet::new(&[("a", 1), ("b", w), ("h", 1)], &["Y1"]).expect("fixed alphabet")
    }

    fn letter(&self, name: &str) -> u8 {
        self.alphabet().letter(name).expect("letter")
    }

    fn poly_in_h(&self, f: &[u64]) -> FreeElt {
        univariate_in_letter(&self.alphabet(), f, self.letter("h"), self.p)
    }

    /// `x^k · f(h)` for a letter `x`.
    fn power_times(&self, x: &str, k: usize, f: &[u64]) -> FreeElt {
        let al = self.alphabet();
        let left = al.monomial(&vec![self.letter(x); k], None);
        self.poly_in_h(f)
            .sandwich(&left, &crate::freealg::Monomial::one())
            .expect("ring product")
    }

    pub fn relations(&self, level: Level) -> Vec<FreeElt> {
        let al = self.alphabet();
        let p = self.p;
        let parse = |s: &str| al.parse_elt(s, p).expect("relation syntax");
        let v = self.v();
        let mut out = vec![
            parse("h a - a h - a"),
            parse("h b - b h + b"),
            parse("b a").sub(&self.poly_in_h(&v)),
            parse("a b").sub(&self.poly_in_h(&poly_shift(&v, -1, p))),
        ];
        if level != Level::T {
            out.push(self.power_times("a", p as usize, &[1]));
            out.push(self.power_times("b", p as usize, &[1]));
        }
        if level == Level::Small {
            let mut hp = vec![0u64; p as usize + 1];
            hp[p as usize] = 1;
            hp[1] = p - 1;
            out.push(self.poly_in_h(&hp));
        }
        out
    }

    pub fn pair(&self, level: Level) -> GSPair {
        GSPair::from_relations(self.alphabet(), self.p, &self.relations(level))
            .expect("nonzero relations")
    }

    /// The completed rule set for `𝔗(v)` listed in closed form.
    pub fn closed_form_basis(&self) -> Vec<FreeElt> {
        let p = self.p as i64;
        let mut out = self.relations(Level::FrakT);
        for i in 1..=p {
            let f = poly_shift(&self.shifted_product(-i).unwrap(), -1, self.p);
            out.push(self.power_times("a", (p - i) as usize, &f));
        }
        for i in 1..p {
            let f = self.shifted_product(i).unwrap();
            out.push(self.power_times("b", (p - i) as usize, &f));
        }
        out
    }

    pub fn default_weight_cap(&self) -> u32 {
        2 * self.n as u32 * self.p as u32 + 4
    }

    pub fn complete(&self, level: Level) -> Result<GSPair> {
        self.pair(level).complete(self.default_weight_cap())
    }

    pub fn dimension(&self, level: Level) -> Result<usize> {
        Ok(self
            .complete(level)?
            .standard_monomials(Scope::Ring, 1 << 20)?
            .len())
    }

    pub fn dim_frak_t_formula(&self) -> usize {
        self.n * (self.p * self.p) as usize
    }

    pub fn dim_t_formula(&self) -> usize {
        2 * (self.p * self.p) as usize - self.rs().iter().map(|r| (r * r) as usize).sum::<usize>()
    }

    /// The baby Verma module, or `None` when it is zero.
    pub fn baby_verma(&self, lambda: i64, variant: Variant) -> Option<FDModule> {
        let p = self.p;
        let pu = p as usize;
        let n = self.n as i64;
        let v = self.v();
        let f = |x: i64| x.rem_euclid(p as i64) as u64;
        let mut a = Matrix::zeros(pu, pu, p);
        let mut b = Matrix::zeros(pu, pu, p);
        let mut h = Matrix::zeros(pu, pu, p);
        let mut grading = Vec::with_capacity(pu);
        match variant {
            Variant::Plain => {
                if !self.is_root(lambda) {
                    return None;
                }
                for k in 0..pu {
                    let kk = k as i64;
                    h.set(k, k, f(lambda - kk));
                    if k + 1 < pu {
                        b.set(k + 1, k, 1);
                    }
                    if k > 0 {
                        a.set(k - 1, k, poly_eval(&v, lambda - kk, p));
                    }
                    grading.push(Degree::Single((lambda - kk) * n));
                }
            }
            Variant::Primed => {
                if !self.is_root(lambda - 1) {
                    return None;
                }
                for k in 0..pu {
                    let kk = k as i64;
                    h.set(k, k, f(lambda + kk));
                    if k + 1 < pu {
                        a.set(k + 1, k, 1);
                    }
                    if k > 0 {
                        b.set(k - 1, k, poly_eval(&v, lambda + kk - 1, p));
                    }
                    grading.push(Degree::Single((lambda + kk) * n));
                }
            }
        }
        let m =
            FDModule::new(p, pu, vec![("a", a), ("b", b), ("h", h)]).expect("square generators");
        Some(
            m.with_grading(grading)
                .expect("grading length")
                .with_toral(&["h"]),
        )
    }

    /// The pair `(S, {(h − λ)|0⟩, a|0⟩})` over the completed rules of `𝔗(v)`.
    pub fn verma_pair(&self, lambda: i64) -> Result<GSPair> {
        let al = self.alphabet();
        let p = self.p;
        let lam = lambda.rem_euclid(p as i64);
        let mut rels = self.complete(Level::FrakT)?.relations();
        rels.push(al.parse_elt(&format!("h Y1 - {lam} Y1"), p)?);
        rels.push(al.parse_elt("a Y1", p)?);
        GSPair::from_relations(al, p, &rels)
    }

    /// Checks that the defining relations of `level` act as zero on `m`.
    pub fn satisfies_relations(&self, m: &FDModule, level: Level) -> bool {
        let al = self.alphabet();
        let mats: Vec<&Matrix> = ["a", "b", "h"]
            .iter()
            .map(|x| m.gen(x).expect("generator"))
            .collect();
        let idx = |name: &str| al.letter(name).expect("letter") as usize;
        let order = [idx("a"), idx("b"), idx("h")];
        self.relations(level).iter().all(|f| {
            let mut acc = Matrix::zeros(m.dim(), m.dim(), self.p);
            for (mono, &c) in f.terms() {
                let mut x = Matrix::identity(m.dim(), self.p);
                for &l in mono.word() {
                    let pos = order.iter().position(|&o| o == l as usize).unwrap();
                    x = x.mul(mats[pos]);
                }
                acc = acc.add(&x.scale(c));
            }
            acc.is_zero()
        })
    }

    fn shift(&self, i: i64) -> Degree {
        Degree::Single(self.p as i64 * i)
    }

    /// `V_i = V(s_{n−1−i})[i]`, indices read mod `n`.
    pub fn chain_verma(&self, i: usize) -> FDModule {
        let i = i % self.n;
        let lam = self.partial_sum(self.n - 1 - i);
        self.baby_verma(lam, Variant::Plain)
            .expect("partial sums are roots")
            .shifted(self.shift(i as i64))
    }

    /// `V'_i`, the primed Verma whose head is `L_i`.
    pub fn chain_verma_primed(&self, i: usize) -> FDModule {
        let i = i % self.n;
        let k = self.n - 1 - i;
        let mu = self.partial_sum(k) - self.r(k) as i64 + 1;
        self.baby_verma(mu, Variant::Primed)
            .expect("mu - 1 is a root")
            .shifted(self.shift(i as i64))
    }

    /// `θ_i : V_{i+1}[−1] → V_i`, sending the generator to `b^{r_{n−1−i}}|0⟩`.
    pub fn theta(&self, i: usize) -> Matrix {
        let pu = self.p as usize;
        let r = self.r(self.n - 1 - (i % self.n)) as usize;
        let mut m = Matrix::zeros(pu, pu, self.p);
        for k in 0..pu {
            if k + r < pu {
                m.set(k + r, k, 1);
            }
        }
        m
    }

    /// `L_i = coker θ_i`, or `None` when `r_{n−1−i} = 0`.
    pub fn simple(&self, i: usize) -> Option<FDModule> {
        let i = i % self.n;
        let r = self.r(self.n - 1 - i) as usize;
        if r == 0 {
            return None;
        }
        let vi = self.chain_verma(i);
        let theta = self.theta(i);
        let image: Vec<Vec<u64>> = (0..theta.cols())
            .map(|c| theta.column(c))
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect();
        Some(vi.quotient(&image).expect("image of a homomorphism"))
    }

    /// The simple modules `L_0..L_{n−1}` that are nonzero, with their indices.
    pub fn simples(&self) -> Vec<(usize, FDModule)> {
        (0..self.n)
            .filter_map(|i| self.simple(i).map(|l| (i, l)))
            .collect()
    }

    /// `T_i = ker(V_i ⊕ V'_i → L_i)`.
    pub fn projective(&self, i: usize) -> Result<Option<FDModule>> {
        let Some(l) = self.simple(i) else {
            return Ok(None);
        };
        let vi = self.chain_verma(i);
        let vp = self.chain_verma_primed(i);
        let pi = fdrep::hom_graded(&vi, &l, Degree::Single(0))?;
        let pp = fdrep::hom_graded(&vp, &l, Degree::Single(0))?;
        if pi.len() != 1 || pp.len() != 1 {
            return Err(Error::Invalid(format!(
                "expected unique projections onto L_{i}"
            )));
        }
        let sum = vi.direct_sum(&vp)?;
        let pu = self.p as usize;
        let mut joint = Matrix::zeros(l.dim(), 2 * pu, self.p);
        for r in 0..l.dim() {
            for c in 0..pu {
                joint.set(r, c, pi[0].get(r, c));
                joint.set(r, pu + c, pp[0].get(r, c));
            }
        }
        let ker = sum.common_kernel(&[joint]);
        Ok(Some(sum.submodule(&ker)?))
    }

    /// Graded Loewy series of `V_i` against the nonzero simples.
    pub fn verma_layers(&self, i: usize) -> Result<Vec<Layer>> {
        let simples: Vec<FDModule> = self.simples().into_iter().map(|(_, l)| l).collect();
        fdrep::loewy_series(&self.chain_verma(i), &simples)
    }

    /// All `(i, j)` with `V(λ) ≅ V_i[j]` as graded modules.
    pub fn verma_labels(&self, lambda: i64) -> Result<Vec<(usize, i64)>> {
        let Some(v) = self.baby_verma(lambda, Variant::Plain) else {
            return Ok(Vec::new());
        };
        let top = |m: &FDModule| m.grading().unwrap()[0].single().unwrap();
        let mut out = Vec::new();
        for (i, _) in self.simples() {
            let vi = self.chain_verma(i);
            // V_i[j] has its generator in degree top(V_i) + p·j
            let diff = top(&v) - top(&vi);
            let p = self.p as i64;
            let centre = diff.div_euclid(p);
            for j in centre - 1..=centre + 1 {
                let cand = vi.shifted(self.shift(j));
                if fdrep::is_isomorphic_graded(&v, &cand, Degree::Single(0))? {
                    out.push((i, j));
                }
            }
        }
        Ok(out)
    }

    /// Adjacency `A[i][j] = [rad T_j / rad² T_j : L_i]` over the nonzero simples.
    pub fn ext1_quiver(&self) -> Result<Vec<Vec<usize>>> {
        let simples = self.simples();
        let list: Vec<FDModule> = simples.iter().map(|(_, l)| l.clone()).collect();
        let k = simples.len();
        let mut adj = vec![vec![0; k]; k];
        for (j, (idx, _)) in simples.iter().enumerate() {
            let t = self.projective(*idx)?.expect("nonzero simple");
            let layers = fdrep::loewy_series(&t, &list)?;
            if let Some(first) = layers.get(1) {
                for i in 0..k {
                    adj[i][j] = first.multiplicities[i];
                }
            }
        }
        Ok(adj)
    }

    pub fn structure_report(&self) -> Result<StructureReport> {
        let simples = self.simples();
        let list: Vec<FDModule> = simples.iter().map(|(_, l)| l.clone()).collect();
        let labels: Vec<usize> = simples.iter().map(|(i, _)| *i).collect();
        let mut vermas = Vec::new();
        let mut projectives = Vec::new();
        let mut identity_sum = 0;
        for (i, l) in &simples {
            let layers = fdrep::loewy_series(&self.chain_verma(*i), &list)?;
            vermas.push(VermaSummary {
                index: *i,
                dim: self.p as usize,
                layers: layers
                    .iter()
                    .map(|layer| LayerSummary::from_layer(layer, &labels, self.p as i64))
                    .collect(),
            });
            let t = self.projective(*i)?.expect("nonzero simple");
            identity_sum += t.dim() * l.dim();
            projectives.push(ProjectiveSummary {
                index: *i,
                dim: t.dim(),
                expected: 2 * self.p as usize - l.dim(),
            });
        }
        let dim_t = self.dimension(Level::Small)?;
        Ok(StructureReport {
            schema: "subregular.hodges.report/1",
            n: self.n,
            p: self.p,
            r: self.rs(),
            dim_frak_t: self.dimension(Level::FrakT)?,
            dim_t,
            dim_t_formula: self.dim_t_formula(),
            simple_dims: (0..self.n)
                .map(|i| self.r(self.n - 1 - i) as usize)
                .collect(),
            vermas,
            projectives,
            projective_identity: identity_sum,
            ext1_quiver: self.ext1_quiver()?,
        })
    }
}

/// Result of comparing completion against the closed-form rule list.
#[derive(Clone, Debug, Serialize)]
pub struct ShirshovReport {
    pub matches: bool,
    pub completed: Vec<String>,
    pub missing: Vec<String>,
    pub extra: Vec<String>,
    pub closed_form_is_gs: bool,
    pub dimension: usize,
}

/// Completes `𝔗(v)`'s relations and compares with the closed-form rule list
/// after monic normalisation and tail-reduction of both sides.
pub fn verify_shirshov(data: &HodgesData) -> Result<ShirshovReport> {
    let al = data.alphabet();
    let done = data.complete(Level::FrakT)?;
    let expected_pair = GSPair::from_relations(al.clone(), data.p, &data.closed_form_basis())?;
    let closed_form_is_gs = expected_pair.is_gs_pair();
    let expected = tail_reduce(&expected_pair);
    let got = tail_reduce(&done);
    let missing: Vec<String> = expected
        .iter()
        .filter(|(k, _)| !got.contains_key(*k))
        .map(|(_, v)| v.clone())
        .collect();
    let mut extra: Vec<String> = got
        .iter()
        .filter(|(k, _)| !expected.contains_key(*k))
        .map(|(_, v)| v.clone())
        .collect();
    for (k, v) in &got {
        if let Some(e) = expected.get(k) {
            if e != v {
                extra.push(v.clone());
            }
        }
    }
    Ok(ShirshovReport {
        matches: missing.is_empty() && extra.is_empty(),
        completed: done.to_strings(),
        missing,
        extra,
        closed_form_is_gs,
        dimension: done.standard_monomials(Scope::Ring, 1 << 20)?.len(),
    })
}

/// Rules keyed by printed pattern, each replacement reduced by all rules.
fn tail_reduce(pair: &GSPair) -> BTreeMap<String, String> {
    let al = pair.alphabet();
    pair.rules()
        .iter()
        .map(|r| {
            let rep = pair.reduce(r.replacement());
            (
                al.fmt_monomial(r.pattern()),
                format!("{} -> {}", al.fmt_monomial(r.pattern()), al.fmt_elt(&rep)),
            )
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct LayerSummary {
    pub dim: usize,
    /// simple label `i` of `L_i` for each summand
    pub simples: Vec<usize>,
    /// shift `j` in `L_i[j]` for each summand
    pub shifts: Vec<i64>,
}

impl LayerSummary {
    /// `labels[k]` is the index `i` of the `k`-th supplied simple.
    pub fn from_layer(layer: &Layer, labels: &[usize], unit: i64) -> LayerSummary {
        let simples = layer.graded.iter().map(|(k, _)| labels[*k]).collect();
        let shifts = layer
            .graded
            .iter()
            .map(|(_, d)| d.single().unwrap_or(0).div_euclid(unit))
            .collect();
        LayerSummary {
            dim: layer.dim,
            simples,
            shifts,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VermaSummary {
    pub index: usize,
    pub dim: usize,
    pub layers: Vec<LayerSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProjectiveSummary {
    pub index: usize,
    pub dim: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub schema: &'static str,
    pub n: usize,
    pub p: u64,
    pub r: Vec<u64>,
    pub dim_frak_t: usize,
    pub dim_t: usize,
    pub dim_t_formula: usize,
    /// `dim L_i` for `i = 0..n−1` (zero when omitted)
    pub simple_dims: Vec<usize>,
    pub vermas: Vec<VermaSummary>,
    pub projectives: Vec<ProjectiveSummary>,
    /// `Σ dim T_i · dim L_i`
    pub projective_identity: usize,
    pub ext1_quiver: Vec<Vec<usize>>,
}

/// `c` with `n·c ≡ 1 (mod p)`; `h` acts on degree `j` by `j·c`.
pub fn degree_scalar(n: usize, p: u64) -> u64 {
    inv_mod(n as u64 % p, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(n: usize, p: u64, r: &[u64]) -> HodgesData {
        HodgesData::new(n, p, r).unwrap()
    }

    #[test]
    fn shifted_products() {
        let d = fixture(2, 3, &[1]);
        assert_eq!(d.v(), vec![0, 2, 1]); // z^2 - z
        assert_eq!(d.shifted_product(1).unwrap(), d.v());
        // z(z-1)(z+1)z = z^4 - z^2
        assert_eq!(d.shifted_product(2).unwrap(), vec![0, 0, 2, 0, 1]);
        assert!(d.shifted_product(0).is_err());
        // v_(p)(h) = (h^p - h)^n
        for (n, p, r) in [(2usize, 3u64, vec![1u64]), (3, 5, vec![1, 2])] {
            let d = fixture(n, p, &r);
            let mut hp = vec![0u64; p as usize + 1];
            hp[p as usize] = 1;
            hp[1] = p - 1;
            let expected = (0..n).fold(vec![1], |acc, _| poly_mul(&acc, &hp, p));
            assert_eq!(d.shifted_product(p as i64).unwrap(), expected);
        }
    }

    #[test]
    fn level_rule_counts() {
        let d = fixture(2, 5, &[2]);
        assert_eq!(d.relations(Level::T).len(), 4);
        assert_eq!(d.relations(Level::FrakT).len(), 6);
        assert_eq!(d.relations(Level::Small).len(), 7);
        assert!(d.pair(Level::T).is_gs_pair());
        let ob = d
            .pair(Level::FrakT)
            .check()
            .expect("a^p, b^p break completeness");
        assert!(!ob.normal_form.is_zero());
    }

    #[test]
    fn small_fixture_completion() {
        let d = fixture(2, 3, &[1]);
        let report = verify_shirshov(&d).unwrap();
        assert!(report.matches, "{report:?}");
        assert!(report.closed_form_is_gs);
        assert_eq!(report.dimension, 18);
        assert_eq!(d.dimension(Level::Small).unwrap(), 2 * 9 - 4 - 1);
    }

    #[test]
    fn verma_examples() {
        let d = fixture(2, 3, &[1]);
        let v = d.baby_verma(0, Variant::Plain).unwrap();
        // a·b|0> = v(-1)|0> = 2|0>
        assert_eq!(v.gen("a").unwrap().get(0, 1), 2);
        assert_eq!(v.dim(), 3);
        assert!(d.baby_verma(2, Variant::Plain).is_none());
        assert!(d.satisfies_relations(&v, Level::Small));
        let vp = d.baby_verma(1, Variant::Primed).unwrap();
        assert!(d.satisfies_relations(&vp, Level::Small));
        let pair = d.verma_pair(0).unwrap();
        assert!(pair.is_gs_pair());
        assert_eq!(
            pair.standard_monomials(Scope::Module(0), 100)
                .unwrap()
                .len(),
            3
        );
    }

    #[test]
    fn small_loewy_shape() {
        let d = fixture(2, 3, &[1]);
        // V(0) = V_1[-1]
        let layers = d.verma_layers(1).unwrap();
        assert_eq!(layers.iter().map(|l| l.dim).collect::<Vec<_>>(), vec![2, 1]);
    }

    #[test]
    fn structure_at_five_three() {
        let d = fixture(3, 5, &[1, 2]);
        let rep = d.structure_report().unwrap();
        assert_eq!(rep.dim_t, 41);
        assert_eq!(rep.dim_t_formula, 41);
        assert_eq!(rep.dim_frak_t, 75);
        assert_eq!(rep.simple_dims, vec![2, 1, 2]);
        assert_eq!(rep.projective_identity, 41);
        for v in &rep.vermas {
            assert_eq!(v.layers.len(), 3);
            for (t, layer) in v.layers.iter().enumerate() {
                assert_eq!(layer.simples, vec![(v.index + t) % 3]);
                assert_eq!(layer.shifts, vec![-(t as i64)]);
            }
        }
        for pr in &rep.projectives {
            assert_eq!(pr.dim, pr.expected);
        }
        assert_eq!(d.verma_labels(0).unwrap(), vec![(2, -2)]);
        assert_eq!(
            rep.ext1_quiver,
            vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]
        );
    }
}
