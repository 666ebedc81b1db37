//! Deciding whether a transitive group contains the alternating group.
//!
//! Two routes: exact order via a stabilizer chain when the degree is under
//! the cap, and otherwise a cycle-type criterion — a primitive group
//! containing a p-cycle (p prime, p < degree - 2), a 3-cycle, or a double
//! transposition (degree >= 9) contains the alternating group.

use super::{blocks, stabchain, GeneratorSet, Permutation};
use crate::ramdata::Partition;
use crate::{Caps, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    Symmetric,
    Alternating,
    ProperSubgroup,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictMethod {
    ExactOrder,
    JordanCriterion,
}

/// Verdict on a transitive group's relation to the alternating group.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct GroupVerdict {
    pub kind: VerdictKind,
    pub method: VerdictMethod,
    /// The cycle-type witness used by the criterion route.
    pub witness: Option<Permutation>,
}

impl GroupVerdict {
    pub fn contains_alternating(&self) -> bool {
        matches!(self.kind, VerdictKind::Symmetric | VerdictKind::Alternating)
    }
}

/// True iff a primitive group containing an element of this cycle type must
/// contain the alternating group.
pub fn forces_alternating(ct: &Partition, degree: u64) -> bool {
    let nontrivial: Vec<(u64, u64)> = ct
        .runs()
        .iter()
        .copied()
        .filter(|&(v, _)| v > 1)
        .collect();
    match nontrivial.as_slice() {
        [(p, 1)] => is_prime(*p) && (*p == 3 || *p + 2 < degree),
        [(2, 2)] => degree >= 9,
        _ => false,
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Searches short words in the generators, and powers of those words, for an
/// element whose cycle type forces the alternating group. Cycle types of
/// powers are computed arithmetically; only the found witness is built.
fn find_witness(g: &GeneratorSet, caps: &Caps) -> Option<Permutation> {
    let degree = g.degree() as u64;
    let mut words: Vec<Vec<usize>> = (0..g.gens().len()).map(|i| vec![i]).collect();
    let mut frontier = words.clone();
    for _ in 1..caps.witness_word_len {
        let mut next = Vec::new();
        for w in &frontier {
            for i in 0..g.gens().len() {
                let mut longer = w.clone();
                longer.push(i);
                next.push(longer);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    for word in words {
        let mut elem = g.gens()[word[0]].clone();
        for &i in &word[1..] {
            elem = elem.compose(&g.gens()[i]).expect("equal degrees");
        }
        let base_type = elem.cycle_type();
        let order = base_type.lcm_parts();
        for k in 1..order.min(caps.witness_power + 1) {
            if forces_alternating(&base_type.power_type(k), degree) {
                return Some(elem.power(k));
            }
        }
    }
    None
}

/// Classifies the transitive group generated by `g` against the alternating
/// and symmetric groups. Degrees within the stabilizer-chain cap are decided
/// by exact order; larger degrees by primitivity plus a cycle-type witness.
pub fn classify_alternating(g: &GeneratorSet, caps: &Caps) -> Result<GroupVerdict> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let degree = g.degree();
    if degree <= caps.stab_chain_degree {
        let order = stabchain::StabChain::build(g).order();
        let full = stabchain::factorial(degree as u64);
        let kind = if order == full {
            VerdictKind::Symmetric
        } else if order * 2u32 == full {
            VerdictKind::Alternating
        } else {
            VerdictKind::ProperSubgroup
        };
        return Ok(GroupVerdict {
            kind,
            method: VerdictMethod::ExactOrder,
            witness: None,
        });
    }
    if !blocks::is_primitive(g)? {
        // The criterion route cannot conclude anything for imprimitive input.
        return Ok(GroupVerdict {
            kind: VerdictKind::Unknown,
            method: VerdictMethod::JordanCriterion,
            witness: None,
        });
    }
    match find_witness(g, caps) {
        Some(witness) => {
            let kind = if g.all_even() {
                VerdictKind::Alternating
            } else {
                VerdictKind::Symmetric
            };
            Ok(GroupVerdict {
                kind,
                method: VerdictMethod::JordanCriterion,
                witness: Some(witness),
            })
        }
        None => Ok(GroupVerdict {
            kind: VerdictKind::Unknown,
            method: VerdictMethod::JordanCriterion,
            witness: None,
        }),
    }
}
