//! Exact computations around subregular representations in positive characteristic.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalars`]: prime fields and the Laurent ring `Z[v'^±1, v^±1]`.
//! - [`freealg`] and [`gsengine`]: free associative algebras, weighted deg-lex
//!   orders, rewriting and Gröbner–Shirshov completion.
//! - [`fdrep`]: modules given by generator matrices over `F_q`, with Hom
//!   spaces, endomorphism rings, socle and radical series.
//! - [`hodges`]: the algebras `T(v)`, `𝔗(v)` and `t(v)` with their baby Vermas.
//! - [`nocycle`]: the no-cycle algebra `N(k)`, string and band modules, and the
//!   skew coinvariant algebra `C(n)`.
//! - [`modlie`]: baby Verma modules for `sl_n` at a subregular nilpotent `χ`.
//! - [`ktheory`]: the Hecke action on the rank-`n` K-group, duality and pairing.
//! - [`acceptance`]: the end-to-end criterion suite shared by the test target
//!   and the command-line driver.

pub mod acceptance;
pub mod fdrep;
pub mod freealg;
pub mod gsengine;
pub mod hodges;
pub mod ktheory;
pub mod linalg;
pub mod modlie;
pub mod nocycle;
pub mod par;
pub mod scalars;

pub use scalars::{FpElem, LaurentBi};

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("F_{q} has no element of order {n} (need q ≡ 1 mod n)")]
    NoRootOfUnity { q: u64, n: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("product undefined: left factor carries a module generator")]
    UndefinedProduct,
    #[error("operation needs a nonzero element")]
    ZeroElement,
    #[error("rule of weight {weight} exceeds the weight cap {cap}; completion may not terminate")]
    CapExceeded { weight: u32, cap: u32 },
    #[error("more than {cap} standard monomials; the basis may be infinite")]
    ElementCap { cap: usize },
    #[error("generator mismatch: {0}")]
    GeneratorMismatch(String),
    #[error("composition factors account for dimension {found}, module has dimension {expected}")]
    UnknownCompositionFactor { found: usize, expected: usize },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod scalars {}
    #[doc = include_str!("../../../book/src/rewriting.md")]
    mod rewriting {}
    #[doc = include_str!("../../../book/src/hodges.md")]
    mod hodges {}
    #[doc = include_str!("../../../book/src/nocycle.md")]
    mod nocycle {}
    #[doc = include_str!("../../../book/src/modlie.md")]
    mod modlie {}
    #[doc = include_str!("../../../book/src/ktheory.md")]
    mod ktheory {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
}
