//! Induced actions of a permutation on t-element subsets and on ordered
//! t-tuples of pairwise distinct points.
//!
//! The t-subset domain is ordered colexicographically over sorted subsets and
//! the t-tuple domain by the falling-factorial mixed radix, so induced
//! permutations are reproducible across runs.

use super::{GeneratorSet, Permutation};
use crate::ramdata::Partition;
use crate::{binomial, Caps, Error, Result};
use std::collections::BTreeMap;

/// Number of t-element subsets of the domain.
pub fn tset_domain_size(degree: usize, t: usize) -> u64 {
    binomial(degree as u64, t as u64)
}

/// Number of ordered t-tuples of pairwise distinct points.
pub fn ttuple_domain_size(degree: usize, t: usize) -> u64 {
    if t > degree {
        return 0;
    }
    (0..t).map(|i| (degree - i) as u64).product()
}

fn check_tset_domain(degree: usize, t: usize, caps: &Caps) -> Result<u64> {
    if t > degree {
        return Err(Error::Domain(format!(
            "t = {t} exceeds the degree {degree}"
        )));
    }
    let n = tset_domain_size(degree, t);
    if n > caps.induced_domain {
        return Err(Error::CapExceeded {
            what: "induced t-set domain",
            value: n,
            cap: caps.induced_domain,
        });
    }
    Ok(n)
}

fn check_ttuple_domain(degree: usize, t: usize, caps: &Caps) -> Result<u64> {
    if t > degree {
        return Err(Error::Domain(format!(
            "t = {t} exceeds the degree {degree}"
        )));
    }
    let n = ttuple_domain_size(degree, t);
    if n > caps.induced_domain {
        return Err(Error::CapExceeded {
            what: "induced t-tuple domain",
            value: n,
            cap: caps.induced_domain,
        });
    }
    Ok(n)
}

/// Colexicographic rank of a strictly increasing subset.
fn rank_subset(subset: &[usize]) -> u64 {
    subset
        .iter()
        .enumerate()
        .map(|(i, &s)| binomial(s as u64, i as u64 + 1))
        .sum()
}

/// Inverse of [`rank_subset`] for subsets of size `t` of `0..degree`.
fn unrank_subset(mut rank: u64, t: usize, scratch: &mut Vec<usize>) {
    scratch.clear();
    scratch.resize(t, 0);
    for i in (1..=t).rev() {
        // largest s with C(s, i) <= rank
        let mut s = i as u64 - 1;
        let mut c = 0u64; // C(s, i) at s = i-1 is 0
        loop {
            let next = binomial(s + 1, i as u64);
            if next > rank {
                break;
            }
            s += 1;
            c = next;
        }
        rank -= c;
        scratch[i - 1] = s as usize;
    }
}

fn apply_to_subset(p: &Permutation, subset: &[usize], out: &mut Vec<usize>) {
    out.clear();
    out.extend(subset.iter().map(|&x| p.apply(x)));
    out.sort_unstable();
}

/// Rank of an ordered tuple of distinct points, mixed radix
/// `(degree, degree-1, ...)`.
fn rank_tuple(tuple: &[usize], degree: usize) -> u64 {
    let mut used = vec![false; degree];
    let mut rank = 0u64;
    for (i, &x) in tuple.iter().enumerate() {
        let idx = (0..x).filter(|&y| !used[y]).count() as u64;
        rank = rank * (degree - i) as u64 + idx;
        used[x] = true;
    }
    rank
}

fn unrank_tuple(mut rank: u64, t: usize, degree: usize, scratch: &mut Vec<usize>) {
    let mut radii: Vec<u64> = (0..t).map(|i| (degree - i) as u64).collect();
    let mut digits = vec![0u64; t];
    for i in (0..t).rev() {
        digits[i] = rank % radii[i];
        rank /= radii[i];
    }
    radii.clear();
    let mut avail: Vec<usize> = (0..degree).collect();
    scratch.clear();
    for &d in &digits {
        scratch.push(avail.remove(d as usize));
    }
}

/// The permutation induced by `p` on the `C(degree, t)` t-subsets.
pub fn induced_on_tsets(p: &Permutation, t: usize, caps: &Caps) -> Result<Permutation> {
    let n = check_tset_domain(p.degree(), t, caps)?;
    let mut images = vec![0usize; n as usize];
    let mut subset = Vec::new();
    let mut image = Vec::new();
    for r in 0..n {
        unrank_subset(r, t, &mut subset);
        apply_to_subset(p, &subset, &mut image);
        images[r as usize] = rank_subset(&image) as usize;
    }
    Permutation::from_images(images)
}

/// The permutation induced by `p` on ordered t-tuples of distinct points.
pub fn induced_on_ttuples(p: &Permutation, t: usize, caps: &Caps) -> Result<Permutation> {
    let n = check_ttuple_domain(p.degree(), t, caps)?;
    let mut images = vec![0usize; n as usize];
    let mut tuple = Vec::new();
    for r in 0..n {
        unrank_tuple(r, t, p.degree(), &mut tuple);
        let image: Vec<usize> = tuple.iter().map(|&x| p.apply(x)).collect();
        images[r as usize] = rank_tuple(&image, p.degree()) as usize;
    }
    Permutation::from_images(images)
}

fn type_from_orbit_lengths(lengths: BTreeMap<u64, u64>, domain: u64) -> Partition {
    Partition::from_runs(domain, lengths).expect("orbit lengths sum to the domain size")
}

/// Cycle type of the induced t-set action, computed by walking orbits
/// without materializing the induced permutation.
pub fn induced_tset_cycle_type(p: &Permutation, t: usize, caps: &Caps) -> Result<Partition> {
    let n = check_tset_domain(p.degree(), t, caps)?;
    let mut seen = vec![false; n as usize];
    let mut lengths: BTreeMap<u64, u64> = BTreeMap::new();
    let mut subset = Vec::new();
    let mut cur = Vec::new();
    for r in 0..n {
        if seen[r as usize] {
            continue;
        }
        unrank_subset(r, t, &mut subset);
        let mut len = 0u64;
        cur.clone_from(&subset);
        loop {
            let mut next = Vec::with_capacity(t);
            apply_to_subset(p, &cur, &mut next);
            seen[rank_subset(&cur) as usize] = true;
            len += 1;
            if next == subset {
                break;
            }
            cur = next;
        }
        *lengths.entry(len).or_insert(0) += 1;
    }
    Ok(type_from_orbit_lengths(lengths, n))
}

/// Cycle type of the induced t-tuple action.
pub fn induced_ttuple_cycle_type(p: &Permutation, t: usize, caps: &Caps) -> Result<Partition> {
    let n = check_ttuple_domain(p.degree(), t, caps)?;
    let mut seen = vec![false; n as usize];
    let mut lengths: BTreeMap<u64, u64> = BTreeMap::new();
    let mut tuple = Vec::new();
    for r in 0..n {
        if seen[r as usize] {
            continue;
        }
        unrank_tuple(r, t, p.degree(), &mut tuple);
        let mut len = 0u64;
        let mut cur = tuple.clone();
        loop {
            seen[rank_tuple(&cur, p.degree()) as usize] = true;
            len += 1;
            let next: Vec<usize> = cur.iter().map(|&x| p.apply(x)).collect();
            if next == tuple {
                break;
            }
            cur = next;
        }
        *lengths.entry(len).or_insert(0) += 1;
    }
    Ok(type_from_orbit_lengths(lengths, n))
}

/// One representative subset per orbit of `p` on t-subsets, with the orbit
/// length.
pub fn tset_orbit_reps(
    p: &Permutation,
    t: usize,
    caps: &Caps,
) -> Result<Vec<(Vec<usize>, u64)>> {
    let n = check_tset_domain(p.degree(), t, caps)?;
    let mut seen = vec![false; n as usize];
    let mut reps = Vec::new();
    let mut subset = Vec::new();
    for r in 0..n {
        if seen[r as usize] {
            continue;
        }
        unrank_subset(r, t, &mut subset);
        let mut len = 0u64;
        let mut cur = subset.clone();
        loop {
            let mut next = Vec::with_capacity(t);
            apply_to_subset(p, &cur, &mut next);
            seen[rank_subset(&cur) as usize] = true;
            len += 1;
            if next == subset {
                break;
            }
            cur = next;
        }
        reps.push((subset.clone(), len));
    }
    Ok(reps)
}

/// Number of orbits of the generated group on t-subsets.
pub fn orbit_count_on_tsets(g: &GeneratorSet, t: usize, caps: &Caps) -> Result<u64> {
    let n = check_tset_domain(g.degree(), t, caps)?;
    let mut seen = vec![false; n as usize];
    let mut count = 0u64;
    let mut subset = Vec::new();
    let mut image = Vec::new();
    for r in 0..n {
        if seen[r as usize] {
            continue;
        }
        count += 1;
        seen[r as usize] = true;
        let mut queue = vec![r];
        while let Some(q) = queue.pop() {
            unrank_subset(q, t, &mut subset);
            for gen in g.gens() {
                apply_to_subset(gen, &subset, &mut image);
                let s = rank_subset(&image);
                if !seen[s as usize] {
                    seen[s as usize] = true;
                    queue.push(s);
                }
            }
        }
    }
    Ok(count)
}
