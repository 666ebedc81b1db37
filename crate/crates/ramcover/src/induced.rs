//! Lifting cycle types to induced actions and computing quotient-curve
//! genera from branch-cycle tuples.
//!
//! For the action on 2-sets the lift of a cycle type has a closed form,
//! assembled pairwise from the orbit-splitting rule in [`pair_orbit_split`].
//! For t >= 3 only the generic walk over the induced domain is available,
//! behind the induced-domain cap.

use crate::perm::{self, GeneratorSet, Permutation};
use crate::ramdata::{Genus, Partition, RamificationData};
use crate::{binomial, Caps, Error, Result};
use std::collections::BTreeMap;

/// Orbit lengths of a cycle acting on unordered pairs `{a, b}` with `a` in
/// an orbit of length `r1` and `b` in an orbit of length `r2`, returned as
/// `(length, count)` runs.
///
/// Distinct orbits contribute `gcd(r1,r2)` orbits of length `lcm(r1,r2)`;
/// a single orbit of odd length `r` contributes `(r-1)/2` orbits of length
/// `r`; a single orbit of even length `r` contributes one orbit of length
/// `r/2` and `r/2 - 1` orbits of length `r`.
pub fn pair_orbit_split(r1: u64, r2: u64, same_orbit: bool) -> Result<Vec<(u64, u64)>> {
    if r1 == 0 || r2 == 0 {
        return Err(Error::Domain("orbit lengths must be positive".into()));
    }
    if same_orbit {
        if r1 != r2 {
            return Err(Error::Domain(
                "same-orbit split requires equal lengths".into(),
            ));
        }
        if r1 % 2 == 1 {
            Ok(vec![(r1, (r1 - 1) / 2)])
        } else {
            Ok(vec![(r1, r1 / 2 - 1), (r1 / 2, 1)])
        }
    } else {
        Ok(vec![(num_integer::lcm(r1, r2), num_integer::gcd(r1, r2))])
    }
}

/// Closed-form cycle type of the induced action on 2-sets, from the cycle
/// type of the point action. The result has degree `l(l-1)/2`.
pub fn lift_to_2sets(e: &Partition) -> Partition {
    let ell = e.degree();
    let n = ell * (ell.max(1) - 1) / 2;
    let mut lengths: BTreeMap<u64, u64> = BTreeMap::new();
    let mut add = |splits: Vec<(u64, u64)>, multiplier: u64| {
        for (len, cnt) in splits {
            if cnt > 0 && multiplier > 0 {
                *lengths.entry(len).or_insert(0) += cnt * multiplier;
            }
        }
    };
    let runs = e.runs();
    for (i, &(r, m)) in runs.iter().enumerate() {
        // pairs inside one orbit of length r, for each of the m orbits
        add(
            pair_orbit_split(r, r, true).expect("valid same-orbit split"),
            m,
        );
        // pairs across two distinct orbits of the same length
        add(
            pair_orbit_split(r, r, false).expect("valid split"),
            m * (m - 1) / 2,
        );
        // pairs across orbits of different lengths
        for &(s, k) in &runs[i + 1..] {
            add(pair_orbit_split(r, s, false).expect("valid split"), m * k);
        }
    }
    Partition::from_runs(n, lengths).expect("pair orbits cover all 2-sets")
}

/// Branch-wise 2-set lift of ramification data; branches whose lift is
/// trivial are dropped. The result has degree `l(l-1)/2`.
pub fn lift_table_entry(d: &RamificationData) -> RamificationData {
    let ell = d.degree();
    let n = ell * (ell - 1) / 2;
    let branches = d.branches().iter().map(lift_to_2sets);
    RamificationData::new(n, branches).expect("lifts share the pair degree")
}

/// Cycle type of the induced t-set action of any permutation with cycle type
/// `e`, computed by walking the canonical permutation of that type. For
/// t = 2 prefer [`lift_to_2sets`].
pub fn lift_to_tsets_brute(e: &Partition, t: usize, caps: &Caps) -> Result<Partition> {
    let p = canonical_perm_of_type(e)?;
    perm::induced_tset_cycle_type(&p, t, caps)
}

/// The canonical permutation with cycle type `e`: cycles laid out on
/// consecutive points in descending length order.
pub fn canonical_perm_of_type(e: &Partition) -> Result<Permutation> {
    let degree = usize::try_from(e.degree())
        .map_err(|_| Error::Domain("degree too large for a permutation".into()))?;
    let mut cycles = Vec::new();
    let mut next = 0usize;
    for part in e.parts() {
        let len = part as usize;
        cycles.push((next..next + len).collect());
        next += len;
    }
    Permutation::from_cycles(degree, &cycles)
}

/// A sequence of permutations with left-to-right product equal to the
/// identity, generating a transitive group: the combinatorial certificate of
/// a covering of the line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchTuple {
    degree: usize,
    cycles: Vec<Permutation>,
}

impl BranchTuple {
    /// Validates the product-one and transitivity invariants.
    pub fn new(cycles: Vec<Permutation>) -> Result<Self> {
        let tuple = Self::from_parts_unchecked(cycles)?;
        if !tuple.is_product_one() {
            return Err(Error::NotProductOne);
        }
        if !tuple.generators().is_transitive() {
            return Err(Error::NotTransitive);
        }
        Ok(tuple)
    }

    /// Builds without checking product-one or transitivity; degrees must
    /// still match. Intended for negative controls in certification.
    pub fn from_parts_unchecked(cycles: Vec<Permutation>) -> Result<Self> {
        let Some(first) = cycles.first() else {
            return Err(Error::EmptyGenerators);
        };
        let degree = first.degree();
        for c in &cycles {
            if c.degree() != degree {
                return Err(Error::DegreeMismatch(degree, c.degree()));
            }
        }
        Ok(BranchTuple { degree, cycles })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn cycles(&self) -> &[Permutation] {
        &self.cycles
    }

    pub fn is_product_one(&self) -> bool {
        let mut acc = Permutation::identity(self.degree);
        for c in &self.cycles {
            acc = acc.compose(c).expect("equal degrees");
        }
        acc.is_identity()
    }

    pub fn generators(&self) -> GeneratorSet {
        GeneratorSet::new(self.cycles.clone()).expect("tuple is nonempty")
    }

    /// The nontrivial cycle types of the tuple as ramification data.
    pub fn ramification_data(&self) -> RamificationData {
        RamificationData::new(
            self.degree as u64,
            self.cycles.iter().map(Permutation::cycle_type),
        )
        .expect("cycle types share the degree")
    }
}

/// Per-branch Riemann–Hurwitz contributions of the three natural projections
/// at level t: `r_ft` on t-sets, `r_ht` on t-tuples, and the correspondence
/// part `r_pit`, satisfying `r_ht = t! * r_ft + r_pit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct BranchContribution {
    pub r_ft: u64,
    pub r_ht: u64,
    pub r_pit: u64,
}

/// Genera of the t-set quotient `X_t` and the t-tuple quotient `Y_t` of a
/// covering certificate, with per-branch contributions.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct QuotientGenusReport {
    pub t: usize,
    pub g_xt: i64,
    pub g_yt: i64,
    pub per_branch: Vec<BranchContribution>,
}

/// Computes the genera of the quotients by t-set and t-point stabilizers via
/// Riemann–Hurwitz on the induced cycle types. The correspondence part is
/// evaluated independently orbit by orbit — for each t-set orbit of length
/// m, the power `x^m` permutes the representative set and contributes
/// `(t!/e)(e-1)` where `e` is that permutation's order — and the chain-rule
/// identity `r_ht = t! r_ft + r_pit` is asserted branch by branch.
pub fn quotient_genera(b: &BranchTuple, t: usize, caps: &Caps) -> Result<QuotientGenusReport> {
    if t == 0 || t > b.degree() {
        return Err(Error::Domain(format!(
            "t = {t} out of range for degree {}",
            b.degree()
        )));
    }
    let n_sets = perm::tset_domain_size(b.degree(), t);
    let n_tuples = perm::ttuple_domain_size(b.degree(), t);
    let t_factorial: u64 = (1..=t as u64).product();
    let mut per_branch = Vec::with_capacity(b.cycles().len());
    let mut sum_ft = 0u64;
    let mut sum_ht = 0u64;
    for x in b.cycles() {
        let set_type = perm::induced_tset_cycle_type(x, t, caps)?;
        let tuple_type = perm::induced_ttuple_cycle_type(x, t, caps)?;
        let r_ft = n_sets - set_type.num_parts();
        let r_ht = n_tuples - tuple_type.num_parts();
        let r_pit = r_pit_per_orbit(x, t, caps)?;
        if r_ht != t_factorial * r_ft + r_pit {
            return Err(Error::Domain(format!(
                "chain rule violated at {x}: r_ht {r_ht} != {t_factorial}*{r_ft} + {r_pit}"
            )));
        }
        sum_ft += r_ft;
        sum_ht += r_ht;
        per_branch.push(BranchContribution { r_ft, r_ht, r_pit });
    }
    let g_xt = genus_from_rh(sum_ft, n_sets)?;
    let g_yt = genus_from_rh(sum_ht, n_tuples)?;
    Ok(QuotientGenusReport {
        t,
        g_xt,
        g_yt,
        per_branch,
    })
}

fn genus_from_rh(rh_sum: u64, domain: u64) -> Result<i64> {
    if rh_sum % 2 != 0 {
        return Err(Error::Domain(format!(
            "odd Riemann-Hurwitz sum {rh_sum} over domain {domain}"
        )));
    }
    Ok(rh_sum as i64 / 2 - domain as i64 + 1)
}

/// Correspondence contribution over all t-set orbits of `x`, computed from
/// the order of the permutation that `x^m` induces on a length-m orbit's
/// representative set.
fn r_pit_per_orbit(x: &Permutation, t: usize, caps: &Caps) -> Result<u64> {
    let reps = perm::tset_orbit_reps(x, t, caps)?;
    let cycles = x.cycles();
    let mut cycle_of: Vec<Option<(usize, usize)>> = vec![None; x.degree()];
    for (ci, cyc) in cycles.iter().enumerate() {
        for (pos, &pt) in cyc.iter().enumerate() {
            cycle_of[pt] = Some((ci, pos));
        }
    }
    let apply_pow = |pt: usize, m: u64| -> usize {
        match cycle_of[pt] {
            None => pt,
            Some((ci, pos)) => {
                let len = cycles[ci].len() as u64;
                cycles[ci][((pos as u64 + m % len) % len) as usize]
            }
        }
    };
    let t_factorial: u64 = (1..=t as u64).product();
    let mut acc = 0u64;
    for (rep, m) in reps {
        let images: Vec<usize> = rep.iter().map(|&s| apply_pow(s, m)).collect();
        let e = small_perm_order(&rep, &images);
        acc += (t_factorial / e) * (e - 1);
    }
    Ok(acc)
}

/// Order of the permutation of `domain` (distinct points) sending
/// `domain[i]` to `images[i]`.
fn small_perm_order(domain: &[usize], images: &[usize]) -> u64 {
    let t = domain.len();
    let idx_of = |p: usize| domain.iter().position(|&d| d == p).expect("setwise fixed");
    let imgs: Vec<usize> = images.iter().map(|&i| idx_of(i)).collect();
    let mut seen = vec![false; t];
    let mut order = 1u64;
    for start in 0..t {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut cur = start;
        loop {
            seen[cur] = true;
            len += 1;
            cur = imgs[cur];
            if cur == start {
                break;
            }
        }
        order = num_integer::lcm(order, len);
    }
    order
}

/// Total number of 2-sets, exposed for conservation checks.
pub fn pair_domain(ell: u64) -> u64 {
    binomial(ell, 2)
}

/// The 2-set quotient genus of ramification data at base genus 0: lift the
/// data branch-wise and solve Riemann–Hurwitz.
pub fn lifted_genus(d: &RamificationData) -> Genus {
    lift_table_entry(d).rh_genus(0).genus
}
