//! Rewriting systems, compositions and Buchberger-style completion for a
//! pair (S, T) of ring rules and module rules.
//!
//! A ring rule may rewrite any subword of a monomial. A module rule
//! `P·Y_j → …` only rewrites a monomial whose word ends in `P` and whose tail
//! is `Y_j`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::freealg::{Alphabet, FreeElt, Monomial};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    Ring,
    Module,
}

/// `pattern → replacement`, stored from a monic relation `f` with
/// `pattern = f̄` and `replacement = f̄ − f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewriteRule {
    pattern: Monomial,
    replacement: FreeElt,
    origin: Origin,
}

impl RewriteRule {
    /// Normalises `f` to be monic and splits off its leading monomial.
    pub fn from_relation(f: &FreeElt) -> Result<RewriteRule> {
        let f = f.monic()?;
        let (lead, _) = f.leading_term()?;
        let pattern = lead.clone();
        let mut lower = f.clone();
        lower.add_term(pattern.clone(), -1);
        let replacement = lower.scale(f.modulus() - 1);
        let origin = if pattern.is_module() {
            Origin::Module
        } else {
            Origin::Ring
        };
        Ok(RewriteRule {
            pattern,
            replacement,
            origin,
        })
    }

    pub fn pattern(&self) -> &Monomial {
        &self.pattern
    }

    pub fn replacement(&self) -> &FreeElt {
        &self.replacement
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    /// The monic relation `pattern − replacement`.
    pub fn relation(&self) -> FreeElt {
        let mut f = self.replacement.scale(self.replacement.modulus() - 1);
        f.add_term(self.pattern.clone(), 1);
        f
    }

    /// Position where this rule applies to `m`, if any.
    fn match_at(&self, m: &Monomial) -> Option<usize> {
        let pat = self.pattern.word();
        let word = m.word();
        match self.origin {
            Origin::Module => {
                if m.tail() == self.pattern.tail() && word.ends_with(pat) {
                    Some(word.len() - pat.len())
                } else {
                    None
                }
            }
            Origin::Ring => {
                if pat.len() > word.len() {
                    return None;
                }
                (0..=word.len() - pat.len()).find(|&i| &word[i..i + pat.len()] == pat)
            }
        }
    }
}

/// A rule set over an alphabet and a prime field.
#[derive(Clone, Debug)]
pub struct GSPair {
    alphabet: Alphabet,
    p: u64,
    rules: Vec<RewriteRule>,
    complete: bool,
}

/// How `reduce` picks the next monomial to rewrite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Always rewrite the largest reducible monomial.
    LeadingFirst,
    /// Always rewrite the smallest reducible monomial, at its rightmost match.
    SmallestFirst,
}

/// Why a composition was formed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CompositionKind {
    Overlap,
    Inclusion,
}

#[derive(Clone, Debug)]
pub struct Composition {
    pub w: Monomial,
    pub kind: CompositionKind,
    pub elt: FreeElt,
}

/// A composition that fails to reduce to zero.
#[derive(Clone, Debug)]
pub struct Obstruction {
    pub f: usize,
    pub g: usize,
    pub w: Monomial,
    pub normal_form: FreeElt,
}

/// One step of the completion log: rule `rule` was added as the normal form
/// of the composition of rules `f` and `g` at `w` (or is an input rule).
#[derive(Clone, Debug)]
pub struct Certificate {
    pub rule: RewriteRule,
    pub source: CertificateSource,
}

#[derive(Clone, Debug)]
pub enum CertificateSource {
    Input,
    Composition {
        f: RewriteRule,
        g: RewriteRule,
        w: Monomial,
    },
    Reinserted {
        old: RewriteRule,
    },
}

impl GSPair {
    pub fn new(alphabet: Alphabet, p: u64) -> GSPair {
        GSPair {
            alphabet,
            p,
            rules: Vec::new(),
            complete: true,
        }
    }

    /// A pair whose rules are the monic forms of `relations`, as given.
    pub fn from_relations(alphabet: Alphabet, p: u64, relations: &[FreeElt]) -> Result<GSPair> {
        let mut pair = GSPair::new(alphabet, p);
        for f in relations {
            if !f.is_zero() {
                pair.rules.push(RewriteRule::from_relation(f)?);
            }
        }
        pair.complete = pair.rules.is_empty();
        Ok(pair)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn ring_rules(&self) -> impl Iterator<Item = &RewriteRule> {
        self.rules.iter().filter(|r| r.origin == Origin::Ring)
    }

    pub fn module_rules(&self) -> impl Iterator<Item = &RewriteRule> {
        self.rules.iter().filter(|r| r.origin == Origin::Module)
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn max_rule_weight(&self) -> u32 {
        self.rules
            .iter()
            .map(|r| r.pattern.weight())
            .max()
            .unwrap_or(0)
    }

    /// The monic relations, sorted by leading monomial.
    pub fn relations(&self) -> Vec<FreeElt> {
        let mut rules = self.rules.clone();
        rules.sort_by(|a, b| a.pattern.cmp(&b.pattern));
        rules.iter().map(RewriteRule::relation).collect()
    }

    /// Rules printed as `pattern -> replacement`.
    pub fn to_strings(&self) -> Vec<String> {
        let mut rules = self.rules.clone();
        rules.sort_by(|a, b| a.pattern.cmp(&b.pattern));
        rules
            .iter()
            .map(|r| {
                format!(
                    "{} -> {}",
                    self.alphabet.fmt_monomial(&r.pattern),
                    self.alphabet.fmt_elt(&r.replacement)
                )
            })
            .collect()
    }

    pub fn reduce(&self, f: &FreeElt) -> FreeElt {
        reduce_with(&self.rules, f, Strategy::LeadingFirst)
    }

    pub fn reduce_with_strategy(&self, f: &FreeElt, strategy: Strategy) -> FreeElt {
        reduce_with(&self.rules, f, strategy)
    }

    /// Checks every composition among the rules. Returns the first
    /// obstruction found, scanning pairs in order.
    pub fn check(&self) -> Option<Obstruction> {
        for (i, f) in self.rules.iter().enumerate() {
            for (j, g) in self.rules.iter().enumerate() {
                for c in rule_compositions(&self.alphabet, f, g, i == j) {
                    let nf = self.reduce(&c.elt);
                    if !nf.is_zero() {
                        return Some(Obstruction {
                            f: i,
                            g: j,
                            w: c.w,
                            normal_form: nf,
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_gs_pair(&self) -> bool {
        self.check().is_none()
    }

    /// Sets the completeness flag after verifying it.
    pub fn verify(&mut self) -> Option<Obstruction> {
        let obstruction = self.check();
        self.complete = obstruction.is_none();
        obstruction
    }

    /// Buchberger completion with a weight cap on new leading monomials.
    pub fn complete(&self, weight_cap: u32) -> Result<GSPair> {
        self.complete_logged(weight_cap).map(|(pair, _)| pair)
    }

    pub fn complete_logged(&self, weight_cap: u32) -> Result<(GSPair, Vec<Certificate>)> {
        let mut c = Completion::new(self.alphabet.clone(), weight_cap);
        for rule in &self.rules {
            c.add(rule.relation(), CertificateSource::Input)?;
        }
        c.run()?;
        let mut out = GSPair {
            alphabet: self.alphabet.clone(),
            p: self.p,
            rules: c.tail_reduced(),
            complete: false,
        };
        out.rules.sort_by(|a, b| a.pattern.cmp(&b.pattern));
        if let Some(ob) = out.verify() {
            return Err(Error::Invalid(format!(
                "completion left a non-reducing composition at {}",
                self.alphabet.fmt_monomial(&ob.w)
            )));
        }
        Ok((out, c.log))
    }

    /// Monomials avoiding every rule pattern, by increasing order.
    pub fn standard_monomials(&self, scope: Scope, cap: usize) -> Result<Vec<Monomial>> {
        let mut out = match scope {
            Scope::Ring => self.ring_basis(cap)?,
            Scope::Module(j) => self.module_basis(j, cap)?,
            Scope::AllModules => {
                let mut all = Vec::new();
                for j in 0..self.alphabet.num_module_gens() {
                    all.extend(self.module_basis(j as u16, cap.saturating_sub(all.len()))?);
                }
                all
            }
        };
        out.sort();
        Ok(out)
    }

    fn ring_basis(&self, cap: usize) -> Result<Vec<Monomial>> {
        let patterns: Vec<&[u8]> = self.ring_rules().map(|r| r.pattern.word()).collect();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([Vec::<u8>::new()]);
        while let Some(word) = queue.pop_front() {
            if patterns.iter().any(|p| word.ends_with(p)) {
                continue;
            }
            out.push(self.alphabet.monomial(&word, None));
            if out.len() > cap {
                return Err(Error::ElementCap { cap });
            }
            for l in 0..self.alphabet.len() as u8 {
                let mut next = word.clone();
                next.push(l);
                queue.push_back(next);
            }
        }
        Ok(out)
    }

    fn module_basis(&self, j: u16, cap: usize) -> Result<Vec<Monomial>> {
        let ring: Vec<&[u8]> = self.ring_rules().map(|r| r.pattern.word()).collect();
        let module: Vec<&[u8]> = self
            .module_rules()
            .filter(|r| r.pattern.tail() == Some(j))
            .map(|r| r.pattern.word())
            .collect();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([Vec::<u8>::new()]);
        while let Some(word) = queue.pop_front() {
            if ring.iter().any(|p| word.starts_with(p))
                || module.iter().any(|p| *p == word.as_slice())
            {
                continue;
            }
            out.push(self.alphabet.monomial(&word, Some(j)));
            if out.len() > cap {
                return Err(Error::ElementCap { cap });
            }
            for l in 0..self.alphabet.len() as u8 {
                let mut next = vec![l];
                next.extend_from_slice(&word);
                queue.push_back(next);
            }
        }
        Ok(out)
    }
}

/// Which monomials `standard_monomials` enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Ring,
    Module(u16),
    AllModules,
}

fn find_match<'a>(rules: &'a [RewriteRule], m: &Monomial) -> Option<(&'a RewriteRule, usize)> {
    let mut best: Option<(&RewriteRule, usize)> = None;
    for r in rules {
        if let Some(pos) = r.match_at(m) {
            match best {
                Some((_, b)) if b <= pos => {}
                _ => best = Some((r, pos)),
            }
        }
    }
    best
}

/// Rewrites occurrence `pos` of `rule.pattern` in `m`, scaled by `c`.
fn rewrite(rule: &RewriteRule, m: &Monomial, pos: usize, c: u64, out: &mut FreeElt) {
    let word = m.word();
    let plen = rule.pattern.word().len();
    let left = &word[..pos];
    let right = &word[pos + plen..];
    let p = out.modulus();
    for (t, &d) in rule.replacement.terms() {
        let mut w = Vec::with_capacity(left.len() + t.len() + right.len());
        w.extend_from_slice(left);
        w.extend_from_slice(t.word());
        let tail = match rule.origin {
            Origin::Module => t.tail(),
            Origin::Ring => {
                w.extend_from_slice(right);
                m.tail()
            }
        };
        let weight = m.weight() - rule.pattern.weight() + t.weight();
        out.add_term(Monomial::from_parts(weight, w, tail), (c * d % p) as i64);
    }
}

pub fn reduce_with(rules: &[RewriteRule], f: &FreeElt, strategy: Strategy) -> FreeElt {
    let p = f.modulus();
    match strategy {
        Strategy::LeadingFirst => {
            let mut work: BTreeMap<Monomial, u64> =
                f.terms().map(|(m, &c)| (m.clone(), c)).collect();
            let mut done = FreeElt::zero(p);
            while let Some((m, c)) = work.pop_last() {
                match find_match(rules, &m) {
                    Some((rule, pos)) => {
                        let mut tmp = FreeElt::zero(p);
                        rewrite(rule, &m, pos, c, &mut tmp);
                        for (t, &d) in tmp.terms() {
                            let e = work.entry(t.clone()).or_insert(0);
                            *e = (*e + d) % p;
                            if *e == 0 {
                                work.remove(t);
                            }
                        }
                    }
                    None => done.add_term(m, c as i64),
                }
            }
            done
        }
        Strategy::SmallestFirst => {
            let mut cur = f.clone();
            loop {
                let hit = cur.terms().find_map(|(m, &c)| {
                    let mut best: Option<(&RewriteRule, usize)> = None;
                    for r in rules {
                        if let Some(pos) = r.match_at(m) {
                            if best.map_or(true, |(_, b)| pos > b) {
                                best = Some((r, pos));
                            }
                        }
                    }
                    best.map(|(r, pos)| (m.clone(), c, r, pos))
                });
                let Some((m, c, rule, pos)) = hit else {
                    return cur;
                };
                cur.add_term(m.clone(), -(c as i64));
                rewrite(rule, &m, pos, c, &mut cur);
            }
        }
    }
}

/// All compositions of the relations `f` and `g` (with `f` on the left in
/// overlaps), with the element `(f,g)_w`.
pub fn compositions(f: &FreeElt, g: &FreeElt, alphabet: &Alphabet) -> Result<Vec<Composition>> {
    let rf = RewriteRule::from_relation(f)?;
    let rg = RewriteRule::from_relation(g)?;
    let same = rf == rg;
    Ok(rule_compositions(alphabet, &rf, &rg, same))
}

fn rule_compositions(
    alphabet: &Alphabet,
    f: &RewriteRule,
    g: &RewriteRule,
    same: bool,
) -> Vec<Composition> {
    let mut out = Vec::new();
    let fw = f.pattern.word();
    let gw = g.pattern.word();
    let rel_f = f.relation();
    let rel_g = g.relation();
    let word = |w: &[u8], tail: Option<u16>| alphabet.monomial(w, tail);
    match (f.origin, g.origin) {
        (Origin::Ring, Origin::Ring) => {
            // overlaps: suffix of f̄ equals prefix of ḡ, both leftovers nonempty
            for k in 1..fw.len().min(gw.len()) {
                if fw[fw.len() - k..] == gw[..k] {
                    let v = word(&gw[k..], None);
                    let wl = word(&fw[..fw.len() - k], None);
                    let w = f.pattern.concat(&v).expect("ring monomial");
                    let elt = rel_f
                        .sandwich(&Monomial::one(), &v)
                        .unwrap()
                        .sub(&rel_g.sandwich(&wl, &Monomial::one()).unwrap());
                    out.push(Composition {
                        w,
                        kind: CompositionKind::Overlap,
                        elt,
                    });
                }
            }
            // inclusions: ḡ inside f̄
            if !same && gw.len() <= fw.len() {
                for i in 0..=fw.len() - gw.len() {
                    if fw[i..i + gw.len()] == *gw {
                        let wl = word(&fw[..i], None);
                        let v = word(&fw[i + gw.len()..], None);
                        let elt = rel_f.sub(&rel_g.sandwich(&wl, &v).unwrap());
                        out.push(Composition {
                            w: f.pattern.clone(),
                            kind: CompositionKind::Inclusion,
                            elt,
                        });
                    }
                }
            }
        }
        (Origin::Ring, Origin::Module) => {
            // overlap: f̄ = W Z, ḡ = Z V' with W nonempty, Z a nonempty prefix of ḡ's word
            for k in 1..=gw.len().min(fw.len().saturating_sub(1)) {
                if fw[fw.len() - k..] == gw[..k] {
                    let v = word(&gw[k..], g.pattern.tail());
                    let wl = word(&fw[..fw.len() - k], None);
                    let w = f.pattern.concat(&v).expect("ring monomial");
                    let elt = rel_f
                        .sandwich(&Monomial::one(), &v)
                        .unwrap()
                        .sub(&rel_g.sandwich(&wl, &Monomial::one()).unwrap());
                    out.push(Composition {
                        w,
                        kind: CompositionKind::Overlap,
                        elt,
                    });
                }
            }
            // inclusion: f̄ inside the word of ḡ
            if fw.len() <= gw.len() {
                for i in 0..=gw.len() - fw.len() {
                    if gw[i..i + fw.len()] == *fw {
                        let wl = word(&gw[..i], None);
                        let v = word(&gw[i + fw.len()..], g.pattern.tail());
                        let elt = rel_g.sub(&rel_f.sandwich(&wl, &v).unwrap());
                        out.push(Composition {
                            w: g.pattern.clone(),
                            kind: CompositionKind::Inclusion,
                            elt,
                        });
                    }
                }
            }
        }
        (Origin::Module, Origin::Module) => {
            // f̄ a suffix of ḡ with the same tail
            if !same && f.pattern.tail() == g.pattern.tail() && gw.ends_with(fw) {
                let i = gw.len() - fw.len();
                let wl = word(&gw[..i], None);
                let elt = rel_g.sub(&rel_f.sandwich(&wl, &Monomial::one()).unwrap());
                out.push(Composition {
                    w: g.pattern.clone(),
                    kind: CompositionKind::Inclusion,
                    elt,
                });
            }
        }
        (Origin::Module, Origin::Ring) => {}
    }
    out
}

struct Completion {
    alphabet: Alphabet,
    cap: u32,
    rules: Vec<Option<RewriteRule>>,
    queue: BinaryHeap<Reverse<(Monomial, u64, usize, usize)>>,
    seq: u64,
    log: Vec<Certificate>,
}

impl Completion {
    fn new(alphabet: Alphabet, cap: u32) -> Completion {
        Completion {
            alphabet,
            cap,
            rules: Vec::new(),
            queue: BinaryHeap::new(),
            seq: 0,
            log: Vec::new(),
        }
    }

    fn active(&self) -> Vec<RewriteRule> {
        self.rules.iter().flatten().cloned().collect()
    }

    fn add(&mut self, f: FreeElt, source: CertificateSource) -> Result<()> {
        let mut pending = vec![(f, source)];
        while let Some((f, source)) = pending.pop() {
            let nf = reduce_with(&self.active(), &f, Strategy::LeadingFirst);
            if nf.is_zero() {
                continue;
            }
            let rule = RewriteRule::from_relation(&nf)?;
            if rule.pattern.weight() > self.cap {
                return Err(Error::CapExceeded {
                    weight: rule.pattern.weight(),
                    cap: self.cap,
                });
            }
            // rules whose pattern contains the new pattern are retired and re-reduced
            for slot in self.rules.iter_mut() {
                if let Some(old) = slot {
                    if rule.match_at(&old.pattern).is_some() {
                        let old = slot.take().unwrap();
                        pending.push((old.relation(), CertificateSource::Reinserted { old }));
                    }
                }
            }
            let id = self.rules.len();
            self.log.push(Certificate {
                rule: rule.clone(),
                source,
            });
            self.rules.push(Some(rule.clone()));
            for (j, other) in self.rules.iter().enumerate() {
                let Some(other) = other else { continue };
                for (a, b) in [(id, j), (j, id)] {
                    if a == b && j != id {
                        continue;
                    }
                    let (ra, rb) = if a == id {
                        (&rule, other)
                    } else {
                        (other, &rule)
                    };
                    for c in rule_compositions(&self.alphabet, ra, rb, a == b) {
                        self.seq += 1;
                        self.queue.push(Reverse((c.w, self.seq, a, b)));
                    }
                    if a == b {
                        break;
                    }
                }
            }
        }
        Ok(())
    }

    fn run(&mut self) -> Result<()> {
        let mut seen: BTreeSet<(usize, usize, Monomial)> = BTreeSet::new();
        while let Some(Reverse((w, _, a, b))) = self.queue.pop() {
            let (Some(ra), Some(rb)) = (self.rules[a].clone(), self.rules[b].clone()) else {
                continue;
            };
            if !seen.insert((a, b, w.clone())) {
                continue;
            }
            for c in rule_compositions(&self.alphabet, &ra, &rb, a == b) {
                if c.w != w {
                    continue;
                }
                let source = CertificateSource::Composition {
                    f: ra.clone(),
                    g: rb.clone(),
                    w: w.clone(),
                };
                self.add(c.elt, source)?;
            }
        }
        Ok(())
    }

    /// Final inter-reduction of every replacement by the other rules.
    fn tail_reduced(&self) -> Vec<RewriteRule> {
        let rules = self.active();
        rules
            .iter()
            .map(|r| {
                let replacement = reduce_with(&rules, &r.replacement, Strategy::LeadingFirst);
                RewriteRule {
                    pattern: r.pattern.clone(),
                    replacement,
                    origin: r.origin,
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Alphabet {
        Alphabet::new(&[("x", 1), ("y", 1)], &[]).unwrap()
    }

    #[test]
    fn empty_pair_is_complete_and_reduces_nothing() {
        let al = xy();
        let pair = GSPair::new(al.clone(), 5);
        let f = al.parse_elt("x y x + 2 y", 5).unwrap();
        assert_eq!(pair.reduce(&f), f);
        assert!(pair.is_gs_pair());
    }

    #[test]
    fn monomial_without_self_overlap_has_no_compositions() {
        let al = xy();
        let f = al.parse_elt("x y", 3).unwrap();
        assert!(compositions(&f, &f, &al).unwrap().is_empty());
    }

    #[test]
    fn self_overlap_of_a_power() {
        let al = xy();
        let f = al.parse_elt("x^3", 3).unwrap();
        let comps = compositions(&f, &f, &al).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.elt.is_zero()));
    }

    #[test]
    fn xy_minus_one_is_already_complete() {
        let al = xy();
        let pair =
            GSPair::from_relations(al.clone(), 7, &[al.parse_elt("x y - 1", 7).unwrap()]).unwrap();
        let done = pair.complete(12).unwrap();
        assert_eq!(done.to_strings(), vec!["x y -> 1".to_string()]);
        // y^i x^j survive for all i, j
        assert_eq!(
            done.standard_monomials(Scope::Ring, 50),
            Err(Error::ElementCap { cap: 50 })
        );
    }

    #[test]
    fn completion_adds_the_missing_rule() {
        // x^2 - y and xy - x overlap at x^2 y and xxy
        let al = xy();
        let p = 5;
        let rels = [
            al.parse_elt("y x - x", p).unwrap(),
            al.parse_elt("x^2", p).unwrap(),
        ];
        let pair = GSPair::from_relations(al.clone(), p, &rels).unwrap();
        let (done, log) = pair.complete_logged(10).unwrap();
        assert!(done.is_complete());
        assert!(log.len() >= 2);
        let basis = done.standard_monomials(Scope::Ring, 100);
        assert!(basis.is_err(), "y^k survives so the quotient is infinite");
    }

    #[test]
    fn cap_is_reported() {
        let al = xy();
        let p = 3;
        // y x - x y - x  with x y x: completion keeps growing
        let rels = [al.parse_elt("y x y - x", p).unwrap()];
        let pair = GSPair::from_relations(al, p, &rels).unwrap();
        match pair.complete(3) {
            Ok(done) => assert!(done.is_complete()),
            Err(e) => assert!(matches!(e, Error::CapExceeded { .. })),
        }
    }

    #[test]
    fn module_rules_apply_only_at_the_tail() {
        let al = Alphabet::new(&[("a", 1), ("h", 1)], &["Y1"]).unwrap();
        let p = 5;
        let pair =
            GSPair::from_relations(al.clone(), p, &[al.parse_elt("a Y1", p).unwrap()]).unwrap();
        let inside = al.parse_elt("a h Y1", p).unwrap();
        assert_eq!(pair.reduce(&inside), inside);
        assert!(pair.reduce(&al.parse_elt("h a Y1", p).unwrap()).is_zero());
    }

    #[test]
    fn ring_power_against_module_rule() {
        let al = Alphabet::new(&[("a", 1), ("h", 1)], &["Y1"]).unwrap();
        let p = 3;
        let f = al.parse_elt("a^3", p).unwrap();
        let g = al.parse_elt("a Y1", p).unwrap();
        let comps = compositions(&f, &g, &al).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(al.fmt_monomial(&comps[0].w), "a^3 Y1");
        assert!(comps[0].elt.is_zero());
    }
}
