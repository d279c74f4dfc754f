//! Standard-monomial counts checked against a dense quotient model.
//!
//! The model spans every word of weight at most `top`, adds all products
//! `u g w` of an input relation `g` that stay below that weight, and row
//! reduces with heavy words eliminated first. Rows whose pivot lands among
//! words of weight at most `low` span the part of the ideal visible there, so
//! the quotient dimension in that range is a direct count. Nothing from the
//! completion engine is used besides the input relations.

use std::collections::{BTreeMap, HashMap};

use subregular::freealg::{Alphabet, FreeElt};
use subregular::gsengine::{GSPair, Scope};
use subregular::hodges::{HodgesData, Level};
use subregular::scalars::inv_mod;

/// Sparse forward elimination; pivot is the smallest column.
struct Sparse {
    q: u64,
    rows: HashMap<usize, BTreeMap<usize, u64>>,
}

impl Sparse {
    fn new(q: u64) -> Sparse {
        Sparse {
            q,
            rows: HashMap::new(),
        }
    }

    fn insert(&mut self, mut v: BTreeMap<usize, u64>) {
        let q = self.q;
        while let Some((&pc, &c)) = v.iter().next() {
            match self.rows.get(&pc) {
                Some(row) => {
                    let f = q - c;
                    for (&k, &x) in row {
                        let e = v.entry(k).or_insert(0);
                        *e = (*e + f * x) % q;
                        if *e == 0 {
                            v.remove(&k);
                        }
                    }
                }
                None => {
                    let inv = inv_mod(c, q);
                    for x in v.values_mut() {
                        *x = *x * inv % q;
                    }
                    self.rows.insert(pc, v);
                    return;
                }
            }
        }
    }
}

fn words(al: &Alphabet, top: u32) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    let mut i = 0;
    while i < out.len() {
        let w: Vec<u8> = out[i].clone();
        let wt: u32 = w.iter().map(|&l| al.weight(l)).sum();
        for l in 0..al.len() as u8 {
            if wt + al.weight(l) <= top {
                let mut next = w.clone();
                next.push(l);
                out.push(next);
            }
        }
        i += 1;
    }
    out
}

/// Quotient dimension of the weight-`low` truncation, per grading component.
fn dense_count(
    al: &Alphabet,
    p: u64,
    rels: &[FreeElt],
    grade: &[i64],
    low: u32,
    top: u32,
) -> usize {
    let weight = |w: &[u8]| w.iter().map(|&l| al.weight(l)).sum::<u32>();
    let degree = |w: &[u8]| w.iter().map(|&l| grade[l as usize]).sum::<i64>();
    let mut all = words(al, top);
    // heavy words first so they are eliminated before light ones
    all.sort_by_key(|w| (std::cmp::Reverse(weight(w)), w.clone()));
    let index: HashMap<Vec<u8>, usize> = all
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let light_first: Vec<&Vec<u8>> = all.iter().rev().collect();
    let mut by_degree: BTreeMap<i64, Sparse> = BTreeMap::new();
    for g in rels {
        let gw = g.terms().map(|(m, _)| m.weight()).max().unwrap_or(0);
        let gd = g.terms().next().map(|(m, _)| degree(m.word())).unwrap_or(0);
        for u in &all {
            let uw = weight(u);
            if uw + gw > top {
                continue;
            }
            for &w in &light_first {
                if uw + gw + weight(w) > top {
                    break;
                }
                let mut v = BTreeMap::new();
                for (m, &c) in g.terms() {
                    let mut word = u.clone();
                    word.extend_from_slice(m.word());
                    word.extend_from_slice(w);
                    let e = v.entry(index[&word]).or_insert(0);
                    *e = (*e + c) % p;
                }
                v.retain(|_, c| *c != 0);
                let d = degree(u) + gd + degree(w);
                by_degree
                    .entry(d)
                    .or_insert_with(|| Sparse::new(p))
                    .insert(v);
            }
        }
    }
    let light = all.iter().filter(|w| weight(w) <= low).count();
    let first_light = all.len() - light;
    let killed: usize = by_degree
        .values()
        .map(|s| s.rows.keys().filter(|&&k| k >= first_light).count())
        .sum();
    light - killed
}

fn engine_count(al: &Alphabet, p: u64, rels: &[FreeElt], cap: u32, low: u32) -> (usize, usize) {
    let pair = GSPair::from_relations(al.clone(), p, rels)
        .unwrap()
        .complete(cap)
        .unwrap();
    let basis = pair.standard_monomials(Scope::Ring, 10_000).unwrap();
    let below = basis.iter().filter(|m| m.weight() <= low).count();
    (basis.len(), below)
}

fn parse_all(al: &Alphabet, p: u64, rels: &[&str]) -> Vec<FreeElt> {
    rels.iter().map(|r| al.parse_elt(r, p).unwrap()).collect()
}

#[test]
fn commuting_truncated_polynomials() {
    let al = Alphabet::parse("x:1,y:1").unwrap();
    let rels = parse_all(&al, 7, &["y x - x y", "x x x", "y y"]);
    let (total, below) = engine_count(&al, 7, &rels, 12, 6);
    assert_eq!(total, 6);
    assert_eq!(below, total);
    assert_eq!(dense_count(&al, 7, &rels, &[0, 0], 6, 8), total);
}

#[test]
fn quantum_plane_quotient() {
    // y x = 3 x y with x^2 = y^2 = 0
    let al = Alphabet::parse("x:1,y:1").unwrap();
    let rels = parse_all(&al, 11, &["y x - 3 x y", "x x", "y y"]);
    let (total, _) = engine_count(&al, 11, &rels, 12, 6);
    assert_eq!(total, 4);
    assert_eq!(dense_count(&al, 11, &rels, &[1, -1], 6, 8), total);
}

#[test]
fn overlap_needs_completion() {
    // commutative with x^2 = y^2 and x y = 0; the cube only appears after completion
    let al = Alphabet::parse("x:1,y:1").unwrap();
    let rels = parse_all(&al, 5, &["y x - x y", "y y - x x", "x y"]);
    let input = GSPair::from_relations(al.clone(), 5, &rels).unwrap();
    assert!(!input.is_gs_pair());
    let (total, below) = engine_count(&al, 5, &rels, 14, 5);
    assert_eq!(total, 4);
    assert_eq!(below, total);
    assert_eq!(dense_count(&al, 5, &rels, &[0, 0], 5, 8), total);
}

fn hodges_case(n: usize, p: u64, r: &[u64], level: Level, slack: u32) {
    let data = HodgesData::new(n, p, r).unwrap();
    let al = data.alphabet();
    let rels = data.relations(level);
    let grade: Vec<i64> = (0..al.len() as u8)
        .map(|l| match al.name(l) {
            "a" => 1,
            "b" => -1,
            _ => 0,
        })
        .collect();
    let pair = data.complete(level).unwrap();
    let basis = pair.standard_monomials(Scope::Ring, 10_000).unwrap();
    let low = basis.iter().map(|m| m.weight()).max().unwrap();
    assert_eq!(basis.len(), data.dimension(level).unwrap());
    assert_eq!(
        dense_count(&al, p, &rels, &grade, low, low + slack),
        basis.len()
    );
}

#[test]
fn hodges_small_rank_two() {
    hodges_case(2, 3, &[1], Level::Small, 4);
}

#[test]
fn hodges_frak_t_rank_two() {
    hodges_case(2, 3, &[1], Level::FrakT, 6);
}
