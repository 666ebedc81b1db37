//! Stabilizer chains: exact group order and membership for permutation
//! groups of capped degree.

use super::{GeneratorSet, Permutation};
use crate::{Caps, Error, Result};
use num_bigint::BigUint;
use num_traits::One;

/// A stabilizer chain with strong generating set, built deterministically.
///
/// Transversal representatives are never replaced once assigned, so a
/// Schreier generator verified against them stays verified: orbits only
/// grow and verification certifies membership in the deeper group.
pub struct StabChain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Permutation>,
    /// `transversals[i][p] = Some(u)` with `u(base[i]) = p` for `p` in the
    /// orbit of `base[i]` under the generators fixing `base[0..i]`.
    transversals: Vec<Vec<Option<Permutation>>>,
    /// Per level, the `(point, strong-generator index)` pairs whose Schreier
    /// generator already sifted to the identity.
    verified: Vec<std::collections::HashSet<(usize, usize)>>,
}

impl StabChain {
    /// Builds the chain for the group generated by `gens`.
    pub fn build(gens: &GeneratorSet) -> StabChain {
        let degree = gens.degree();
        let mut chain = StabChain {
            degree,
            base: Vec::new(),
            strong: gens
                .gens()
                .iter()
                .filter(|g| !g.is_identity())
                .cloned()
                .collect(),
            transversals: Vec::new(),
            verified: Vec::new(),
        };
        chain.extend_base();
        for i in 0..chain.base.len() {
            chain.extend_transversal(i);
        }
        if chain.base.is_empty() {
            return chain;
        }
        // Verify levels deepest-first; a failed sift deposits its residue as
        // a new strong generator and resumes at the level where it stopped.
        let mut i = chain.base.len() as isize - 1;
        while i >= 0 {
            match chain.first_violation(i as usize) {
                None => i -= 1,
                Some((j, residue)) => {
                    chain.strong.push(residue);
                    chain.extend_base();
                    for k in 0..=j.min(chain.base.len() - 1) {
                        chain.extend_transversal(k);
                    }
                    i = j as isize;
                }
            }
        }
        chain
    }

    /// Appends base points until every strong generator moves one.
    fn extend_base(&mut self) {
        loop {
            let fixed_all = self.strong.iter().find(|g| {
                !g.is_identity() && self.base.iter().all(|&b| g.apply(b) == b)
            });
            match fixed_all {
                None => break,
                Some(g) => {
                    let pt = (0..self.degree)
                        .find(|&p| g.apply(p) != p)
                        .expect("nonidentity permutation moves a point");
                    self.base.push(pt);
                    let mut tv = vec![None; self.degree];
                    tv[pt] = Some(Permutation::identity(self.degree));
                    self.transversals.push(tv);
                    self.verified.push(std::collections::HashSet::new());
                }
            }
        }
    }

    fn gens_at(&self, level: usize) -> Vec<usize> {
        (0..self.strong.len())
            .filter(|&gi| {
                self.base[..level]
                    .iter()
                    .all(|&b| self.strong[gi].apply(b) == b)
            })
            .collect()
    }

    /// Grows the orbit and transversal at `level` under the current
    /// generators, keeping every existing representative.
    fn extend_transversal(&mut self, level: usize) {
        let gen_idxs = self.gens_at(level);
        let mut queue: Vec<usize> = (0..self.degree)
            .filter(|&p| self.transversals[level][p].is_some())
            .collect();
        while let Some(p) = queue.pop() {
            for &gi in &gen_idxs {
                let q = self.strong[gi].apply(p);
                if self.transversals[level][q].is_none() {
                    let up = self.transversals[level][p]
                        .as_ref()
                        .expect("queued points have coset reps");
                    let uq = up.compose(&self.strong[gi]).expect("equal degrees");
                    self.transversals[level][q] = Some(uq);
                    queue.push(q);
                }
            }
        }
    }

    /// Strips `h` through levels `from..`; returns the residue and the level
    /// at which stripping stopped (`base.len()` means fully stripped).
    fn sift_from(&self, mut h: Permutation, from: usize) -> (Permutation, usize) {
        for i in from..self.base.len() {
            let img = h.apply(self.base[i]);
            match &self.transversals[i][img] {
                None => return (h, i),
                Some(u) => h = h.compose(&u.inverse()).expect("equal degrees"),
            }
        }
        (h, self.base.len())
    }

    /// First unverified Schreier generator of `level` that does not strip to
    /// the identity through the deeper levels; verified pairs are skipped
    /// and successful pairs are recorded.
    fn first_violation(&mut self, level: usize) -> Option<(usize, Permutation)> {
        let gen_idxs = self.gens_at(level);
        for p in 0..self.degree {
            if self.transversals[level][p].is_none() {
                continue;
            }
            for &gi in &gen_idxs {
                if self.verified[level].contains(&(p, gi)) {
                    continue;
                }
                let up = self.transversals[level][p].as_ref().expect("checked");
                let g = &self.strong[gi];
                let q = g.apply(p);
                let uq = self.transversals[level][q]
                    .as_ref()
                    .expect("orbit is closed under gens");
                let schreier = up
                    .compose(g)
                    .and_then(|x| x.compose(&uq.inverse()))
                    .expect("equal degrees");
                if schreier.is_identity() {
                    self.verified[level].insert((p, gi));
                    continue;
                }
                let (residue, j) = self.sift_from(schreier, level + 1);
                if residue.is_identity() {
                    self.verified[level].insert((p, gi));
                } else {
                    return Some((j, residue));
                }
            }
        }
        None
    }

    /// Exact order of the generated group.
    pub fn order(&self) -> BigUint {
        let mut acc = BigUint::one();
        for tv in &self.transversals {
            let orbit = tv.iter().filter(|u| u.is_some()).count();
            acc *= BigUint::from(orbit);
        }
        acc
    }

    /// Membership test.
    pub fn contains(&self, p: &Permutation) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.sift_from(p.clone(), 0);
        residue.is_identity()
    }
}

/// Exact order of the generated group; errors when the degree exceeds the
/// stabilizer-chain cap.
pub fn group_order(g: &GeneratorSet, caps: &Caps) -> Result<BigUint> {
    if g.degree() > caps.stab_chain_degree {
        return Err(Error::CapExceeded {
            what: "stabilizer-chain degree",
            value: g.degree() as u64,
            cap: caps.stab_chain_degree as u64,
        });
    }
    Ok(StabChain::build(g).order())
}

pub(crate) fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 2..=n {
        acc *= BigUint::from(k);
    }
    acc
}
