//! Exact tools for the ramification theory of indecomposable coverings with
//! alternating or symmetric monodromy.
//!
//! The crate is organized around a small set of exact (integer/rational)
//! computations on branch data of coverings `h: Y_1 -> P^1` of degree `l`:
//!
//! * [`perm`] — a permutation-group engine: composition, cycle types, orbits,
//!   block systems, stabilizer-chain group orders, and the induced actions on
//!   t-element subsets and t-tuples of the fiber.
//! * [`ramdata`] — partitions and ramification data with Riemann–Hurwitz genus
//!   arithmetic, parity checks, and the compact `2^*`-style notation.
//! * [`induced`] — closed-form lifting of cycle types to the action on 2-sets,
//!   and exact quotient-curve genera computed from branch-cycle tuples.
//! * [`tables`] — generation and cross-validation of the catalogs of
//!   ramification types (source types, their 2-set lifts, solvable-monodromy
//!   types, and non-existent types) at any admissible degree.
//! * [`bounds`] — the exact identities and instance-checkable inequalities
//!   relating the genera of the quotient curves: even-part counts, orbit-sum
//!   closed forms, the 2-set genus identity, almost-Galois classification,
//!   decomposability filters, and Galois-closure ramification.
//! * [`certify`] — explicit branch-cycle tuples for the catalog rows, a
//!   six-point certification of their claims, and exhaustive refutation of
//!   small non-existent types.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so computations may be fanned out across threads freely.

pub mod bounds;
pub mod certify;
pub mod induced;
pub mod perm;
pub mod ramdata;
pub mod tables;

pub use perm::{GeneratorSet, GroupVerdict, Permutation, VerdictKind, VerdictMethod};
pub use ramdata::{Genus, GenusResult, Parity, Partition, RamificationData};

use std::collections::BTreeMap;

/// Crate-wide error type. Math "failures" (negative genus, refuted claims,
/// unclassifiable data) are report content, not errors; errors are reserved
/// for contract violations: bad input, inadmissible parameters, blown caps.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("images do not form a bijection of 0..{degree}")]
    NotBijection { degree: usize },
    #[error("parse error at `{token}`: {msg}")]
    Parse { token: String, msg: String },
    #[error("parts sum to {sum}, expected degree {degree}")]
    BadPartitionSum { sum: u64, degree: u64 },
    #[error("{what} = {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("generator set must be nonempty")]
    EmptyGenerators,
    #[error("generator set is not transitive")]
    NotTransitive,
    #[error("branch cycles do not multiply to the identity")]
    NotProductOne,
    #[error("degree {ell} is inadmissible for {label}: {reason}")]
    Inadmissible {
        label: String,
        ell: u64,
        reason: String,
    },
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Resource caps. These are configuration, not constants of the math: they
/// bound which instances the exact algorithms are willing to run at desk
/// scale, and every capped operation reports the blown cap as an error.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Caps {
    /// Largest degree for stabilizer-chain order computations.
    pub stab_chain_degree: usize,
    /// Largest induced domain (t-set or t-tuple count) that may be walked.
    pub induced_domain: u64,
    /// Largest degree for exhaustive tuple searches.
    pub refute_degree: usize,
    /// Longest generator word tried by the cycle-type witness search.
    pub witness_word_len: usize,
    /// Largest exponent tried when powering a word in the witness search.
    pub witness_power: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            stab_chain_degree: 64,
            induced_domain: 10_000_000,
            refute_degree: 10,
            witness_word_len: 3,
            witness_power: 256,
        }
    }
}

impl Caps {
    /// Applies `key=value` overrides (comma-separated), as accepted from the
    /// `RAMCOVER_CAPS` environment variable.
    pub fn apply_overrides(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').ok_or_else(|| Error::Parse {
                token: item.to_string(),
                msg: "expected key=value".into(),
            })?;
            let n: u64 = value.trim().parse().map_err(|_| Error::Parse {
                token: value.to_string(),
                msg: "expected a positive integer".into(),
            })?;
            if n == 0 {
                return Err(Error::Domain(format!("cap {key} must be positive")));
            }
            match key.trim() {
                "stab_degree" => self.stab_chain_degree = n as usize,
                "induced" => self.induced_domain = n,
                "search" => self.refute_degree = n as usize,
                "witness_words" => self.witness_word_len = n as usize,
                "witness_power" => self.witness_power = n,
                other => {
                    return Err(Error::Parse {
                        token: other.to_string(),
                        msg: "unknown cap key".into(),
                    })
                }
            }
        }
        Ok(())
    }

    /// Caps as a sorted key map, for report output.
    pub fn as_map(&self) -> BTreeMap<&'static str, u64> {
        BTreeMap::from([
            ("induced", self.induced_domain),
            ("search", self.refute_degree as u64),
            ("stab_degree", self.stab_chain_degree as u64),
            ("witness_power", self.witness_power),
            ("witness_words", self.witness_word_len as u64),
        ])
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}
