//! Prime fields and bivariate Laurent polynomials over the integers.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::Error;

/// Returns true if `n` is prime. Trial division; the moduli used here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime `q` with `q ≡ 1 (mod n)`.
pub fn smallest_prime_1_mod(n: u64) -> u64 {
    let n = n.max(1);
    let mut q = n + 1;
    while !is_prime(q) {
        q += n;
    }
    q
}

/// `a^e mod p`.
pub fn pow_mod(a: u64, mut e: u64, p: u64) -> u64 {
    let mut base = a % p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "zero has no inverse");
    pow_mod(a, p - 2, p)
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce(m: i64, p: u64) -> u64 {
    m.rem_euclid(p as i64) as u64
}

/// An element of the prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FpElem {
    value: u64,
    modulus: u64,
}

impl FpElem {
    /// Reduces `m` modulo the prime `p`.
    pub fn new(m: i64, p: u64) -> Result<FpElem, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FpElem {
            value: reduce(m, p),
            modulus: p,
        })
    }

    fn raw(value: u64, modulus: u64) -> FpElem {
        FpElem {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn pow(&self, e: u64) -> FpElem {
        FpElem::raw(pow_mod(self.value, e, self.modulus), self.modulus)
    }

    pub fn inv(&self) -> Option<FpElem> {
        if self.value == 0 {
            None
        } else {
            Some(FpElem::raw(inv_mod(self.value, self.modulus), self.modulus))
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self) -> Option<u64> {
        if self.value == 0 {
            return None;
        }
        let mut x = self.value;
        let mut k = 1;
        while x != 1 {
            x = x * self.value % self.modulus;
            k += 1;
        }
        Some(k)
    }

    fn check(&self, other: &FpElem) {
        assert_eq!(self.modulus, other.modulus, "mixed moduli");
    }
}

impl fmt::Display for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FpElem {
    type Output = FpElem;
    fn add(self, rhs: FpElem) -> FpElem {
        self.check(&rhs);
        FpElem::raw(self.value + rhs.value, self.modulus)
    }
}

impl Sub for FpElem {
    type Output = FpElem;
    fn sub(self, rhs: FpElem) -> FpElem {
        self.check(&rhs);
        FpElem::raw(self.value + self.modulus - rhs.value, self.modulus)
    }
}

impl Mul for FpElem {
    type Output = FpElem;
    fn mul(self, rhs: FpElem) -> FpElem {
        self.check(&rhs);
        FpElem::raw(self.value * rhs.value, self.modulus)
    }
}

impl Neg for FpElem {
    type Output = FpElem;
    fn neg(self) -> FpElem {
        FpElem::raw(self.modulus - self.value, self.modulus)
    }
}

impl Div for FpElem {
    type Output = FpElem;
    fn div(self, rhs: FpElem) -> FpElem {
        self * rhs.inv().expect("division by zero in F_p")
    }
}

/// The least element of `F_q` of multiplicative order exactly `n`.
pub fn root_of_unity(q: u64, n: u64) -> Result<FpElem, Error> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if n == 0 || (q - 1) % n != 0 {
        return Err(Error::NoRootOfUnity { q, n });
    }
    (1..q)
        .map(|x| FpElem::raw(x, q))
        .find(|x| x.order() == Some(n))
        .ok_or(Error::NoRootOfUnity { q, n })
}

/// Which involution of `Z[v'^±1, v^±1]` to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Involution {
    /// `v' ↦ v'^{-1}`.
    Dagger,
    /// `v ↦ v^{-1}`.
    Bar,
}

/// A sparse polynomial in `v'^{±1}` and `v^{±1}` with integer coefficients.
///
/// The key `(s, t)` stands for the monomial `v'^s v^t`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentBi {
    terms: BTreeMap<(i64, i64), BigInt>,
}

impl LaurentBi {
    pub fn zero() -> LaurentBi {
        LaurentBi::default()
    }

    pub fn one() -> LaurentBi {
        LaurentBi::monomial(0, 0, 1)
    }

    /// `c · v'^s v^t`.
    pub fn monomial(s: i64, t: i64, c: impl Into<BigInt>) -> LaurentBi {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((s, t), c);
        }
        LaurentBi { terms }
    }

    /// `v^t`.
    pub fn v(t: i64) -> LaurentBi {
        LaurentBi::monomial(0, t, 1)
    }

    /// `v'^s`.
    pub fn vp(s: i64) -> LaurentBi {
        LaurentBi::monomial(s, 0, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> LaurentBi {
        LaurentBi::monomial(0, 0, c)
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((i64, i64), BigInt)>) -> LaurentBi {
        let mut out = LaurentBi::zero();
        for (k, c) in it {
            out.add_term(k, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: i64, t: i64) -> BigInt {
        self.terms
            .get(&(s, t))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: (i64, i64), c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &BigInt) -> LaurentBi {
        if c.is_zero() {
            return LaurentBi::zero();
        }
        LaurentBi {
            terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    /// Multiplies by `v'^s v^t`.
    pub fn shift(&self, s: i64, t: i64) -> LaurentBi {
        LaurentBi {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + s, b + t), c.clone()))
                .collect(),
        }
    }

    pub fn involution(&self, kind: Involution) -> LaurentBi {
        let terms = self.terms.iter().map(|(&(s, t), c)| {
            let key = match kind {
                Involution::Dagger => (-s, t),
                Involution::Bar => (s, -t),
            };
            (key, c.clone())
        });
        LaurentBi {
            terms: terms.collect(),
        }
    }

    pub fn dagger(&self) -> LaurentBi {
        self.involution(Involution::Dagger)
    }

    pub fn bar(&self) -> LaurentBi {
        self.involution(Involution::Bar)
    }

    /// Largest `v`-exponent present, or `None` for zero.
    pub fn max_v_degree(&self) -> Option<i64> {
        self.terms.keys().map(|&(_, t)| t).max()
    }

    pub fn pow(&self, e: u32) -> LaurentBi {
        let mut acc = LaurentBi::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Parses the format produced by `Display`, e.g. `1 + v^-2` or `-3 v'^2 v`.
    pub fn parse(text: &str) -> Result<LaurentBi, Error> {
        let err = || Error::Parse(format!("bad Laurent polynomial {text:?}"));
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(err());
        }
        if cleaned == "0" {
            return Ok(LaurentBi::zero());
        }
        // split into signed terms at top-level + and - (not those following '^')
        let mut pieces = Vec::new();
        let mut cur = String::new();
        let chars: Vec<char> = cleaned.chars().collect();
        for (i, &ch) in chars.iter().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && chars[i - 1] != '^' {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        pieces.push(cur);
        let mut out = LaurentBi::zero();
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-1, rest),
                None => (1, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            if body.is_empty() {
                return Err(err());
            }
            let digits: String = body.chars().take_while(|c| c.is_ascii_digit()).collect();
            let mut rest = &body[digits.len()..];
            let mut coeff: BigInt = if digits.is_empty() {
                BigInt::one()
            } else {
                digits.parse().map_err(|_| err())?
            };
            coeff *= sign;
            let (mut s, mut t) = (0i64, 0i64);
            rest = rest.trim_start_matches('*');
            while !rest.is_empty() {
                let (is_prime_var, after) = if let Some(r) = rest.strip_prefix("v'") {
                    (true, r)
                } else if let Some(r) = rest.strip_prefix('v') {
                    (false, r)
                } else {
                    return Err(err());
                };
                let (e, after) = if let Some(r) = after.strip_prefix('^') {
                    let len = r
                        .char_indices()
                        .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && c == '-'))
                        .count();
                    (r[..len].parse::<i64>().map_err(|_| err())?, &r[len..])
                } else {
                    (1, after)
                };
                if is_prime_var {
                    s += e;
                } else {
                    t += e;
                }
                rest = after.trim_start_matches('*');
            }
            out.add_term((s, t), &coeff);
        }
        Ok(out)
    }
}

fn fmt_power(f: &mut fmt::Formatter<'_>, name: &str, e: i64) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{name}"),
        _ => write!(f, "{name}^{e}"),
    }
}

impl fmt::Display for LaurentBi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // descending in (s, t) so that leading terms come first
        for (i, (&(s, t), c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = a.is_one();
            if !unit || (s == 0 && t == 0) {
                write!(f, "{a}")?;
                if s != 0 || t != 0 {
                    write!(f, " ")?;
                }
            }
            fmt_power(f, "v'", s)?;
            if s != 0 && t != 0 {
                write!(f, " ")?;
            }
            fmt_power(f, "v", t)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    s: i64,
    t: i64,
    c: String,
}

impl Serialize for LaurentBi {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let records: Vec<TermRecord> = self
            .terms
            .iter()
            .map(|(&(s, t), c)| TermRecord {
                s,
                t,
                c: c.to_string(),
            })
            .collect();
        records.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for LaurentBi {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<LaurentBi, D::Error> {
        let records = Vec::<TermRecord>::deserialize(de)?;
        let mut out = LaurentBi::zero();
        for r in records {
            let c: BigInt = r.c.parse().map_err(serde::de::Error::custom)?;
            out.add_term((r.s, r.t), &c);
        }
        Ok(out)
    }
}

impl Add<&LaurentBi> for &LaurentBi {
    type Output = LaurentBi;
    fn add(self, rhs: &LaurentBi) -> LaurentBi {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentBi {
    type Output = LaurentBi;
    fn add(mut self, rhs: LaurentBi) -> LaurentBi {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentBi> for LaurentBi {
    fn add_assign(&mut self, rhs: &LaurentBi) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c);
        }
    }
}

impl Neg for &LaurentBi {
    type Output = LaurentBi;
    fn neg(self) -> LaurentBi {
        LaurentBi {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for LaurentBi {
    type Output = LaurentBi;
    fn neg(self) -> LaurentBi {
        -&self
    }
}

impl Sub<&LaurentBi> for &LaurentBi {
    type Output = LaurentBi;
    fn sub(self, rhs: &LaurentBi) -> LaurentBi {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl Sub for LaurentBi {
    type Output = LaurentBi;
    fn sub(self, rhs: LaurentBi) -> LaurentBi {
        &self - &rhs
    }
}

impl Mul<&LaurentBi> for &LaurentBi {
    type Output = LaurentBi;
    fn mul(self, rhs: &LaurentBi) -> LaurentBi {
        laurent_mul(self, rhs)
    }
}

impl Mul for LaurentBi {
    type Output = LaurentBi;
    fn mul(self, rhs: LaurentBi) -> LaurentBi {
        laurent_mul(&self, &rhs)
    }
}

/// Product in `Z[v'^±1, v^±1]`.
pub fn laurent_mul(f: &LaurentBi, g: &LaurentBi) -> LaurentBi {
    let mut out = LaurentBi::zero();
    for (&(s1, t1), c1) in &f.terms {
        for (&(s2, t2), c2) in &g.terms {
            out.add_term((s1 + s2, t1 + t2), &(c1 * c2));
        }
    }
    out
}

/// Applies `dagger` or `bar`.
pub fn laurent_involution(f: &LaurentBi, kind: Involution) -> LaurentBi {
    f.involution(kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_examples() {
        assert_eq!(root_of_unity(7, 3).unwrap().value(), 2);
        assert_eq!(root_of_unity(5, 4).unwrap().value(), 2);
        assert_eq!(root_of_unity(3, 2).unwrap().value(), 2);
        assert!(root_of_unity(7, 4).is_err());
        assert_eq!(smallest_prime_1_mod(3), 7);
        assert_eq!(smallest_prime_1_mod(4), 5);
    }

    #[test]
    fn laurent_examples() {
        let prod = LaurentBi::vp(1) * LaurentBi::v(-1);
        assert_eq!(prod, LaurentBi::monomial(1, -1, 1));
        let f = LaurentBi::one() + LaurentBi::v(-2);
        assert_eq!(&f * &LaurentBi::zero(), LaurentBi::zero());
        assert_eq!(&f * &LaurentBi::v(2), LaurentBi::v(2) + LaurentBi::one());
        let g = LaurentBi::monomial(4, -1, 1);
        assert_eq!(g.dagger(), LaurentBi::monomial(-4, -1, 1));
        assert_eq!(f.bar(), LaurentBi::one() + LaurentBi::v(2));
    }

    #[test]
    fn display_and_parse_round_trip() {
        let f = LaurentBi::from_terms([
            ((0, 0), BigInt::from(1)),
            ((0, -2), BigInt::from(1)),
            ((3, -1), BigInt::from(-2)),
        ]);
        let text = f.to_string();
        assert_eq!(text, "-2 v'^3 v^-1 + 1 + v^-2");
        assert_eq!(LaurentBi::parse(&text).unwrap(), f);
        assert_eq!(
            LaurentBi::parse("v' v").unwrap(),
            LaurentBi::monomial(1, 1, 1)
        );
        assert_eq!(
            LaurentBi::parse("-v^-1").unwrap(),
            LaurentBi::monomial(0, -1, -1)
        );
        assert!(LaurentBi::parse("x").is_err());
    }

    #[test]
    fn serialises_as_sorted_records() {
        let f = LaurentBi::v(-1) + LaurentBi::vp(2);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"[{"s":0,"t":-1,"c":"1"},{"s":2,"t":0,"c":"1"}]"#);
        let back: LaurentBi = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
