//! Free associative algebras over `F_p`, free modules over them, and the
//! weighted degree-lexicographic order.
//!
//! Letters are stored by precedence rank, so the derived `Ord` on
//! [`Monomial`] is exactly the weighted deg-lex order: total weight first,
//! then the leftmost differing letter, then the module generator index.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalars::{inv_mod, is_prime};
use crate::{Error, Result};

/// Named generators with weights, listed in increasing precedence, plus
/// module generators `Y_1..Y_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    weights: Vec<u32>,
    module_gens: Vec<String>,
}

impl Alphabet {
    /// `letters` must be given from lowest to highest precedence.
    pub fn new(letters: &[(&str, u32)], module_gens: &[&str]) -> Result<Alphabet> {
        if letters.iter().any(|&(_, w)| w == 0) {
            return Err(Error::Invalid("letter weights must be positive".into()));
        }
        let mut names: Vec<String> = letters.iter().map(|(n, _)| n.to_string()).collect();
        names.extend(module_gens.iter().map(|s| s.to_string()));
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::Invalid("duplicate generator names".into()));
        }
        Ok(Alphabet {
            names: letters.iter().map(|(n, _)| n.to_string()).collect(),
            weights: letters.iter().map(|&(_, w)| w).collect(),
            module_gens: module_gens.iter().map(|s| s.to_string()).collect(),
        })
    }

    /// Parses `a:1,b:3,h:1` (lowest precedence first). Module generators
    /// may follow after a semicolon: `x:1,y:1;Y1,Y2`.
    pub fn parse(spec: &str) -> Result<Alphabet> {
        let (letters, mods) = match spec.split_once(';') {
            Some((l, m)) => (l, m),
            None => (spec, ""),
        };
        let mut parsed = Vec::new();
        for item in letters.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, w) = item.split_once(':').unwrap_or((item, "1"));
            let w: u32 = w
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad weight in {item:?}")))?;
            parsed.push((name.trim().to_string(), w));
        }
        let mods: Vec<&str> = mods
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        let refs: Vec<(&str, u32)> = parsed.iter().map(|(n, w)| (n.as_str(), *w)).collect();
        Alphabet::new(&refs, &mods)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn weight(&self, letter: u8) -> u32 {
        self.weights[letter as usize]
    }

    pub fn name(&self, letter: u8) -> &str {
        &self.names[letter as usize]
    }

    pub fn letter(&self, name: &str) -> Option<u8> {
        self.names.iter().position(|n| n == name).map(|i| i as u8)
    }

    pub fn module_gen(&self, name: &str) -> Option<u16> {
        self.module_gens
            .iter()
            .position(|n| n == name)
            .map(|i| i as u16)
    }

    pub fn module_gen_name(&self, j: u16) -> &str {
        &self.module_gens[j as usize]
    }

    pub fn num_module_gens(&self) -> usize {
        self.module_gens.len()
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    /// The monomial spelled by `letters` with an optional tail.
    pub fn monomial(&self, letters: &[u8], tail: Option<u16>) -> Monomial {
        let weight = letters.iter().map(|&l| self.weight(l)).sum();
        Monomial {
            weight,
            word: letters.to_vec(),
            tail,
        }
    }

    /// Parses the print syntax, e.g. `a^3 h^2 Y1` or `b a`.
    pub fn parse_monomial(&self, text: &str) -> Result<Monomial> {
        let mut letters = Vec::new();
        let mut tail = None;
        for tok in text
            .split(|c: char| c.is_whitespace() || c == '*')
            .filter(|s| !s.is_empty())
        {
            if tail.is_some() {
                return Err(Error::Parse(format!(
                    "module generator must come last in {text:?}"
                )));
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?,
                ),
                None => (tok, 1),
            };
            if let Some(j) = self.module_gen(name) {
                if exp != 1 {
                    return Err(Error::Parse(format!(
                        "module generator {name} cannot be raised to a power"
                    )));
                }
                tail = Some(j);
            } else if let Some(l) = self.letter(name) {
                letters.extend(std::iter::repeat(l).take(exp));
            } else {
                // juxtaposed single-character letters such as `ha`
                let mut chunk = Vec::new();
                for ch in name.chars() {
                    let l = self
                        .letter(&ch.to_string())
                        .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
                    chunk.push(l);
                }
                let last = chunk
                    .pop()
                    .ok_or_else(|| Error::Parse("empty token".into()))?;
                letters.extend(chunk);
                letters.extend(std::iter::repeat(last).take(exp));
            }
        }
        Ok(self.monomial(&letters, tail))
    }

    /// Parses a polynomial such as `ba - h^2 + 2 h` over `F_p`.
    pub fn parse_elt(&self, text: &str, p: u64) -> Result<FreeElt> {
        let mut out = FreeElt::zero(p);
        let compact = text.trim();
        if compact.is_empty() || compact == "0" {
            return Ok(out);
        }
        let mut pieces: Vec<(i64, String)> = Vec::new();
        let mut sign = 1i64;
        let mut cur = String::new();
        for ch in compact.chars() {
            if ch == '+' || ch == '-' {
                if !cur.trim().is_empty() {
                    pieces.push((sign, std::mem::take(&mut cur)));
                } else {
                    cur.clear();
                }
                sign = if ch == '-' { -1 } else { 1 };
            } else {
                cur.push(ch);
            }
        }
        if !cur.trim().is_empty() {
            pieces.push((sign, cur));
        }
        for (sign, body) in pieces {
            let body = body.trim();
            let digits: String = body.chars().take_while(|c| c.is_ascii_digit()).collect();
            let rest = body[digits.len()..].trim();
            let c: i64 = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| Error::Parse(body.to_string()))?
            };
            let m = if rest.is_empty() {
                self.monomial(&[], None)
            } else {
                self.parse_monomial(rest)?
            };
            out.add_term(m, sign * c);
        }
        Ok(out)
    }

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < m.word.len() {
            let l = m.word[i];
            let mut j = i;
            while j < m.word.len() && m.word[j] == l {
                j += 1;
            }
            let name = self.name(l);
            if j - i == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{}", j - i));
            }
            i = j;
        }
        if let Some(t) = m.tail {
            parts.push(self.module_gen_name(t).to_string());
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }

    pub fn fmt_elt(&self, f: &FreeElt) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let p = f.p;
        let mut out = String::new();
        for (i, (m, &c)) in f.terms.iter().rev().enumerate() {
            // print residues in the symmetric range so that p-1 reads as -1
            let signed = if c > p / 2 {
                c as i64 - p as i64
            } else {
                c as i64
            };
            let (neg, a) = (signed < 0, signed.unsigned_abs());
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.fmt_monomial(m);
            if a != 1 {
                out.push_str(&a.to_string());
                if mono != "1" {
                    out.push(' ');
                    out.push_str(&mono);
                }
            } else {
                out.push_str(&mono);
            }
        }
        out
    }
}

/// A word in the ring letters, optionally followed by a module generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    weight: u32,
    word: Vec<u8>,
    tail: Option<u16>,
}

impl Monomial {
    pub(crate) fn from_parts(weight: u32, word: Vec<u8>, tail: Option<u16>) -> Monomial {
        Monomial { weight, word, tail }
    }

    pub fn one() -> Monomial {
        Monomial {
            weight: 0,
            word: Vec::new(),
            tail: None,
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn tail(&self) -> Option<u16> {
        self.tail
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty() && self.tail.is_none()
    }

    pub fn is_module(&self) -> bool {
        self.tail.is_some()
    }

    /// `self · other`; undefined when `self` already carries a tail.
    pub fn concat(&self, other: &Monomial) -> Result<Monomial> {
        if self.tail.is_some() {
            if other.is_empty() {
                return Ok(self.clone());
            }
            return Err(Error::UndefinedProduct);
        }
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Ok(Monomial {
            weight: self.weight + other.weight,
            word,
            tail: other.tail,
        })
    }

    /// The sub-monomial `word[start..end]` (ring part only).
    pub fn slice(&self, alphabet: &Alphabet, start: usize, end: usize) -> Monomial {
        alphabet.monomial(&self.word[start..end], None)
    }

    /// Drops the tail.
    pub fn ring_part(&self) -> Monomial {
        Monomial {
            weight: self.weight,
            word: self.word.clone(),
            tail: None,
        }
    }

    pub fn with_tail(&self, tail: Option<u16>) -> Monomial {
        Monomial {
            weight: self.weight,
            word: self.word.clone(),
            tail,
        }
    }
}

/// A finite `F_p`-linear combination of monomials, all in the ring or all in
/// the module.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeElt {
    p: u64,
    terms: BTreeMap<Monomial, u64>,
}

impl FreeElt {
    pub fn zero(p: u64) -> FreeElt {
        debug_assert!(is_prime(p));
        FreeElt {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: Monomial, p: u64) -> FreeElt {
        let mut f = FreeElt::zero(p);
        f.add_term(m, 1);
        f
    }

    pub fn constant(c: i64, p: u64) -> FreeElt {
        let mut f = FreeElt::zero(p);
        f.add_term(Monomial::one(), c);
        f
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &u64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_module(&self) -> bool {
        self.terms.keys().next().map_or(false, Monomial::is_module)
    }

    pub fn add_term(&mut self, m: Monomial, c: i64) {
        let c = c.rem_euclid(self.p as i64) as u64;
        self.add_residue(m, c);
    }

    fn add_residue(&mut self, m: Monomial, c: u64) {
        if c == 0 {
            return;
        }
        let p = self.p;
        let entry = self.terms.entry(m).or_insert(0);
        *entry = (*entry + c) % p;
        if *entry == 0 {
            let key = self
                .terms
                .iter()
                .find(|(_, &v)| v == 0)
                .map(|(k, _)| k.clone());
            if let Some(k) = key {
                self.terms.remove(&k);
            }
        }
    }

    /// Adds `c · left · m · right` for every term `m` of `g`.
    pub fn add_scaled_product(
        &mut self,
        c: u64,
        left: &Monomial,
        g: &FreeElt,
        right: &Monomial,
    ) -> Result<()> {
        for (m, &d) in &g.terms {
            let mono = left.concat(m)?.concat(right)?;
            self.add_residue(mono, c * d % self.p);
        }
        Ok(())
    }

    pub fn add(&self, other: &FreeElt) -> FreeElt {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_residue(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &FreeElt) -> FreeElt {
        self.add(&other.scale(self.p - 1))
    }

    pub fn scale(&self, c: u64) -> FreeElt {
        let c = c % self.p;
        if c == 0 {
            return FreeElt::zero(self.p);
        }
        FreeElt {
            p: self.p,
            terms: self
                .terms
                .iter()
                .map(|(m, &d)| (m.clone(), d * c % self.p))
                .collect(),
        }
    }

    /// The largest monomial and its coefficient.
    pub fn leading_term(&self) -> Result<(&Monomial, u64)> {
        self.terms
            .iter()
            .next_back()
            .map(|(m, &c)| (m, c))
            .ok_or(Error::ZeroElement)
    }

    /// Scales so the leading coefficient is 1.
    pub fn monic(&self) -> Result<FreeElt> {
        let (_, c) = self.leading_term()?;
        Ok(self.scale(inv_mod(c, self.p)))
    }

    /// `m · self · n` for monomials.
    pub fn sandwich(&self, left: &Monomial, right: &Monomial) -> Result<FreeElt> {
        let mut out = FreeElt::zero(self.p);
        out.add_scaled_product(1, left, self, right)?;
        Ok(out)
    }
}

/// Product in the free algebra (or action of the algebra on the free module).
pub fn multiply(f: &FreeElt, g: &FreeElt) -> Result<FreeElt> {
    if f.p != g.p {
        return Err(Error::Invalid("coefficient fields differ".into()));
    }
    let mut out = FreeElt::zero(f.p);
    for (m, &c) in &f.terms {
        if m.is_module() {
            return Err(Error::UndefinedProduct);
        }
        out.add_scaled_product(c, m, g, &Monomial::one())?;
    }
    Ok(out)
}

/// The leading monomial and coefficient under the alphabet's order.
pub fn leading_term(f: &FreeElt) -> Result<(Monomial, u64)> {
    f.leading_term().map(|(m, c)| (m.clone(), c))
}

/// A univariate polynomial over `F_p` as a coefficient vector, lowest degree first.
pub type UniPoly = Vec<u64>;

/// Embeds `Σ c_i z^i` with `z` replaced by the letter `x` (so `z^i ↦ x^i`).
pub fn univariate_in_letter(alphabet: &Alphabet, poly: &[u64], letter: u8, p: u64) -> FreeElt {
    let mut out = FreeElt::zero(p);
    for (i, &c) in poly.iter().enumerate() {
        out.add_residue(alphabet.monomial(&vec![letter; i], None), c % p);
    }
    out
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.word)?;
        if let Some(t) = self.tail {
            write!(f, "|Y{}", t + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hodges_alphabet(n: u32) -> Alphabet {
        Alphabet::new(&[("a", 1), ("b", 2 * n - 1), ("h", 1)], &["Y1"]).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let al = hodges_alphabet(2);
        let p = 5;
        let h = al.parse_elt("h", p).unwrap();
        let a = al.parse_elt("a", p).unwrap();
        assert_eq!(al.fmt_elt(&multiply(&h, &a).unwrap()), "h a");
        let apb = al.parse_elt("a + b", p).unwrap();
        let prod = multiply(&apb, &h).unwrap();
        assert_eq!(prod, al.parse_elt("a h + b h", p).unwrap());
        let by = al.parse_elt("b Y1", p).unwrap();
        assert_eq!(
            multiply(&a, &by).unwrap(),
            al.parse_elt("a b Y1", p).unwrap()
        );
        assert_eq!(multiply(&by, &a), Err(Error::UndefinedProduct));
    }

    #[test]
    fn leading_terms_follow_weights_then_precedence() {
        let al = hodges_alphabet(3);
        let p = 7;
        // deg b = 5, so ba (weight 6) beats the degree-3 polynomial v(h)
        let f = al.parse_elt("b a - h^3 - 3 h^2 - 2 h", p).unwrap();
        assert_eq!(al.fmt_monomial(&leading_term(&f).unwrap().0), "b a");
        let g = al.parse_elt("h a - a h - a", p).unwrap();
        assert_eq!(al.fmt_monomial(&leading_term(&g).unwrap().0), "h a");
        let single = al.parse_elt("3 a^2 h", p).unwrap();
        let (m, c) = leading_term(&single).unwrap();
        assert_eq!((al.fmt_monomial(&m), c), ("a^2 h".to_string(), 3));
        assert_eq!(leading_term(&FreeElt::zero(p)), Err(Error::ZeroElement));
    }

    #[test]
    fn print_syntax_collects_powers() {
        let al = hodges_alphabet(2);
        let m = al.parse_monomial("a a a h h Y1").unwrap();
        assert_eq!(al.fmt_monomial(&m), "a^3 h^2 Y1");
        assert_eq!(al.parse_monomial("a^3 h^2 Y1").unwrap(), m);
        assert_eq!(
            al.parse_monomial("ha").unwrap(),
            al.parse_monomial("h a").unwrap()
        );
    }
}
