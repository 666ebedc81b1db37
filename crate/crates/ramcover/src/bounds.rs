//! Exact identities and instance-checkable bounds relating the quotient
//! curves of a covering: even-part counts, closed forms for the
//! tuple-over-point contributions, the 2-set genus identity, almost-Galois
//! classification of branch types, decomposability filters, Galois-closure
//! ramification, and the monotonicity refutation of non-existent types.
//!
//! All arithmetic is exact: integers are arbitrary precision where they can
//! grow, and every displayed rational identity is evaluated in `BigRational`.

use crate::induced::{canonical_perm_of_type, lift_to_2sets};
use crate::perm;
use crate::ramdata::{Genus, Partition, RamificationData};
use crate::{binomial, Caps, Error, Result};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(big(n))
}

fn rat_i(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn v2(n: u64) -> u32 {
    n.trailing_zeros()
}

fn falling(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
    }
    acc
}

fn factorial_big(n: u64) -> BigUint {
    falling(n, n)
}

/// Number of even parts: the exact correspondence contribution of the pair
/// action over one branch point.
pub fn r_pi2_count(e: &Partition) -> u64 {
    e.runs()
        .iter()
        .filter(|&&(v, _)| v % 2 == 0)
        .map(|&(_, c)| c)
        .sum()
}

/// Exact contribution of the projection from t-tuples to points over one
/// branch: the sum over ordered t-tuples of orbits of
/// `(r1^..rt^ / lcm)(lcm/r1 - 1)`, where `ri^` discounts earlier repeats of
/// the same orbit. Equals `(l-1)!/(l-t)! * #orbits - #orbits-on-t-tuples`.
pub fn r_h1t(e: &Partition, t: usize) -> BigUint {
    if t <= 1 {
        return BigUint::zero();
    }
    let runs = e.runs();
    let k = runs.len();
    let mut total = BigRational::zero();
    // ordered tuples grouped by occupancy: slots drawn from each run
    let mut occupancy = vec![0u64; k];
    enumerate_compositions(t as u64, 0, &mut occupancy, &mut |occ| {
        let mut fallings = BigUint::one();
        let mut lcm = 1u64;
        for (i, &s) in occ.iter().enumerate() {
            if s == 0 {
                continue;
            }
            let (r, m) = runs[i];
            fallings *= falling(r * m, s);
            lcm = num_integer::lcm(lcm, r);
        }
        for (i, &s) in occ.iter().enumerate() {
            if s == 0 {
                continue;
            }
            let r1 = runs[i].0;
            if lcm == r1 {
                continue; // factor (lcm/r1 - 1) vanishes
            }
            // positions for the remaining slots once slot 1 is pinned to run i
            let mut ways = factorial_big(t as u64 - 1);
            for (j, &sj) in occ.iter().enumerate() {
                let adj = if j == i { sj - 1 } else { sj };
                ways /= factorial_big(adj);
            }
            let num = BigInt::from(&fallings * ways) * (big(lcm / r1) - BigInt::one());
            total += BigRational::new(num, big(lcm));
        }
    });
    assert!(total.is_integer(), "tuple-over-point sum must be integral");
    total
        .to_integer()
        .to_biguint()
        .expect("sum of nonnegative terms")
}

fn enumerate_compositions(total: u64, idx: usize, occ: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    if occ.is_empty() {
        if total == 0 {
            f(occ);
        }
        return;
    }
    if idx + 1 == occ.len() {
        occ[idx] = total;
        f(occ);
        occ[idx] = 0;
        return;
    }
    for s in 0..=total {
        occ[idx] = s;
        enumerate_compositions(total - s, idx + 1, occ, f);
    }
    occ[idx] = 0;
}

/// Pair specialization of [`r_h1t`]: the sum of `r1 - gcd(r1, r2)` over
/// ordered pairs of entries.
pub fn r_h1_pairs(e: &Partition) -> u64 {
    let runs = e.runs();
    let mut acc = 0u64;
    for &(r, m) in runs {
        for &(s, n) in runs {
            acc += m * n * (r - num_integer::gcd(r, s));
        }
    }
    acc
}

/// Brute-force route for [`r_h1t`] via orbit counts of the canonical
/// permutation: `(l-1)!/(l-t)! * |Orb on points| - |Orb on ordered t-tuples|`.
pub fn brute_r_h1t(e: &Partition, t: usize, caps: &Caps) -> Result<BigUint> {
    let p = canonical_perm_of_type(e)?;
    let tuple_type = perm::induced_ttuple_cycle_type(&p, t, caps)?;
    let mut coeff = BigUint::one();
    for i in 1..t as u64 {
        coeff *= BigUint::from(e.degree() - i);
    }
    let lhs = coeff * BigUint::from(e.num_parts());
    Ok(lhs - BigUint::from(tuple_type.num_parts()))
}

/// Brute-force route for [`r_pi2_count`]: `R_{h_2} - 2 R_{f_2}` from the
/// induced pair and ordered-pair actions of the canonical permutation.
pub fn brute_r_pi2(e: &Partition, caps: &Caps) -> Result<u64> {
    let p = canonical_perm_of_type(e)?;
    let set_type = perm::induced_tset_cycle_type(&p, 2, caps)?;
    let tuple_type = perm::induced_ttuple_cycle_type(&p, 2, caps)?;
    let r_f2 = set_type.degree() - set_type.num_parts();
    let r_h2 = tuple_type.degree() - tuple_type.num_parts();
    Ok(r_h2 - 2 * r_f2)
}

/// The exact 2-set genus identity, solved for `g_{X_2}`:
/// `4(g_{X_2} - g_{X_1}) = 2(l-3)(g_{Y_1}-1) + sum_P (pairsum(P) - evens(P))`
/// with `g_{X_1} = g_{Y_1}`. The result is rational; integrality is the
/// caller's coherence check on the data.
pub fn g_x2_formula(d: &RamificationData, g_y1: i64) -> Result<BigRational> {
    let ell = d.degree();
    if ell < 5 {
        return Err(Error::Domain(format!(
            "pair-action genus identity needs degree >= 5, got {ell}"
        )));
    }
    let mut sum = rat_i(2 * (ell as i64 - 3) * (g_y1 - 1));
    for b in d.branches() {
        sum += rat(r_h1_pairs(b)) - rat(r_pi2_count(b));
    }
    Ok(rat_i(g_y1) + sum / rat(4))
}

/// `mu_r = -#evens + sum_{i,j} (r_i - gcd(r_i, r_j))` over ordered pairs of
/// the given lengths. Negative only when all lengths are equal and even.
pub fn mu_r(lengths: &[u64]) -> i64 {
    let evens = lengths.iter().filter(|&&r| r % 2 == 0).count() as i64;
    let mut acc: i64 = -evens;
    for &r in lengths {
        for &s in lengths {
            acc += (r - num_integer::gcd(r, s)) as i64;
        }
    }
    acc
}

/// Main term of the correspondence bound at level t: the sum over
/// (t-1)-tuples of orbits with `r_1` even and `v_2(r_1) > v_2(r_j)` of
/// `r1^..r_{t-1}^ / lcm`.
pub fn r_pit_main_term(e: &Partition, t: usize) -> BigRational {
    let u = (t - 1) as u64; // tuple length
    let runs = e.runs();
    let mut total = BigRational::zero();
    for (i1, &(r1, m1)) in runs.iter().enumerate() {
        if r1 % 2 != 0 {
            continue;
        }
        // remaining slots come from runs with strictly smaller 2-adic value
        let allowed: Vec<(u64, u64)> = runs
            .iter()
            .enumerate()
            .filter(|&(j, &(r, _))| j != i1 && v2(r) < v2(r1))
            .map(|(_, &rm)| rm)
            .collect();
        let mut occupancy = vec![0u64; allowed.len()];
        enumerate_compositions(u - 1, 0, &mut occupancy, &mut |occ| {
            let mut fallings = BigUint::from(m1) * BigUint::from(r1);
            let mut lcm = r1;
            for (j, &s) in occ.iter().enumerate() {
                if s == 0 {
                    continue;
                }
                let (r, m) = allowed[j];
                fallings *= falling(r * m, s);
                lcm = num_integer::lcm(lcm, r);
            }
            let mut ways = factorial_big(u - 1);
            for &s in occ.iter() {
                ways /= factorial_big(s);
            }
            total += BigRational::new(BigInt::from(fallings * ways), big(lcm));
        });
    }
    total
}

/// Upper bound for the correspondence contribution at level t:
/// `C(t,2) * main_term + E0 * t^4 * (l-2)!/(l-t)!`. For t = 2 the bound
/// degenerates to the exact even-part count with no error term. `E0` is a
/// caller parameter; no particular value is normative.
pub fn r_pit_bound(e: &Partition, t: usize, e0: &BigRational) -> Result<BigRational> {
    let ell = e.degree();
    if t < 2 || ell <= (t as u64) * (t as u64) {
        return Err(Error::Domain(format!(
            "bound needs t >= 2 and degree > t^2, got t={t}, degree={ell}"
        )));
    }
    if t == 2 {
        return Ok(rat(r_pi2_count(e)));
    }
    let main = r_pit_main_term(e, t) * rat(binomial(t as u64, 2));
    let mut ff = BigUint::one();
    for i in 2..t as u64 {
        ff *= BigUint::from(ell - i);
    }
    let error = e0 * rat((t as u64).pow(4)) * BigRational::from_integer(BigInt::from(ff));
    Ok(main + error)
}

/// Instance check of the main-term comparison: the restricted tuple sum over
/// tuples with dominant 2-adic first slot is at most the full
/// tuple-over-point contribution one level down.
pub fn t1_bound_check(e: &Partition, t: usize) -> Result<bool> {
    let ell = e.degree();
    if t < 3 || (t as u64) * 2 > ell {
        return Err(Error::Domain(format!(
            "main-term comparison needs 3 <= t <= degree/2, got t={t}, degree={ell}"
        )));
    }
    let lhs = r_pit_main_term(e, t);
    let rhs = BigRational::from_integer(BigInt::from(r_h1t(e, t - 1)));
    Ok(lhs <= rhs)
}

/// The dominant local multiplicity of a branch type. `Finite(m)` with
/// `m <= 6` marks an almost-Galois branch where all but a bounded weight of
/// points share index m; `Infinity` marks a branch whose weight sits in
/// parts larger than 6.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum Mh {
    Finite(u64),
    Infinity,
}

impl std::fmt::Display for Mh {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mh::Finite(m) => write!(f, "{m}"),
            Mh::Infinity => write!(f, "inf"),
        }
    }
}

/// Classification of one branch type with its error budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct PointClass {
    pub m: Mh,
    /// Bound for the weight of parts away from m (or of parts <= 6 when
    /// m is infinite): `2(alpha+1)(m+1)m`, resp. `84(alpha+1)`.
    pub epsilon: u64,
    pub alpha: u64,
}

/// Outcome of classifying a branch: the classifier refuses rather than
/// guessing when the data fits neither almost-Galois shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum PointClassification {
    Classified(PointClass),
    Unclassifiable,
}

/// Classifies a branch type by its dominant part value (largest total mass
/// `value * multiplicity`, ties to the smaller value). A dominant value
/// `m <= 6` must carry at least `l/m - 2(alpha+1)(m+1)` parts; a dominant
/// value above 6 requires every k <= 6 to appear at most `4(alpha+1)` times.
pub fn classify_point(e: &Partition, alpha: u64) -> PointClassification {
    let mut best: Option<(u64, u64)> = None; // (mass, value)
    for &(v, c) in e.runs() {
        let mass = v * c;
        best = Some(match best {
            None => (mass, v),
            Some((bm, bv)) => {
                if mass > bm || (mass == bm && v < bv) {
                    (mass, v)
                } else {
                    (bm, bv)
                }
            }
        });
    }
    let Some((_, vstar)) = best else {
        return PointClassification::Unclassifiable;
    };
    let ell = e.degree();
    if vstar > 6 {
        if (1..=6).all(|k| e.count_of(k) <= 4 * (alpha + 1)) {
            PointClassification::Classified(PointClass {
                m: Mh::Infinity,
                epsilon: 84 * (alpha + 1),
                alpha,
            })
        } else {
            PointClassification::Unclassifiable
        }
    } else {
        // count >= l/v - 2(alpha+1)(v+1), compared without division
        let c = e.count_of(vstar);
        if c * vstar + 2 * (alpha + 1) * (vstar + 1) * vstar >= ell {
            PointClassification::Classified(PointClass {
                m: Mh::Finite(vstar),
                epsilon: 2 * (alpha + 1) * (vstar + 1) * vstar,
                alpha,
            })
        } else {
            PointClassification::Unclassifiable
        }
    }
}

/// The families of multisets of dominant indices bigger than 1 that a
/// low-genus pair action allows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum CaseLabel {
    I1,
    I2,
    F1,
    F2,
    F3,
    F4,
    F5,
    None,
}

impl CaseLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseLabel::I1 => "I1",
            CaseLabel::I2 => "I2",
            CaseLabel::F1 => "F1",
            CaseLabel::F2 => "F2",
            CaseLabel::F3 => "F3",
            CaseLabel::F4 => "F4",
            CaseLabel::F5 => "F5",
            CaseLabel::None => "NONE",
        }
    }
}

/// Classification of a whole ramification data set by the multiset of
/// dominant indices exceeding 1.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CoverClass {
    pub m_values: Vec<Mh>,
    pub case_label: CaseLabel,
}

/// Classifies ramification data: branch-wise [`classify_point`], then match
/// the multiset of values exceeding 1 against the admissible case list.
/// Errors if any branch is unclassifiable.
pub fn classify_cover(d: &RamificationData, alpha: u64) -> Result<CoverClass> {
    let mut m_values = Vec::new();
    for b in d.branches() {
        match classify_point(b, alpha) {
            PointClassification::Unclassifiable => {
                return Err(Error::Domain(format!(
                    "branch {b} of degree {} is unclassifiable at alpha={alpha}",
                    d.degree()
                )))
            }
            PointClassification::Classified(pc) => {
                if pc.m != Mh::Finite(1) {
                    m_values.push(pc.m);
                }
            }
        }
    }
    m_values.sort();
    let fin = |v: &[u64]| v.iter().map(|&x| Mh::Finite(x)).collect::<Vec<_>>();
    let case_label = if m_values == [Mh::Infinity, Mh::Infinity] {
        CaseLabel::I1
    } else if m_values == [Mh::Finite(2), Mh::Finite(2), Mh::Infinity] {
        CaseLabel::I2
    } else if m_values == fin(&[2, 2, 2, 2]) {
        CaseLabel::F1
    } else if m_values == fin(&[3, 3, 3]) {
        CaseLabel::F2
    } else if m_values == fin(&[2, 4, 4]) {
        CaseLabel::F3
    } else if m_values == fin(&[2, 3, 6]) {
        CaseLabel::F4
    } else if m_values.is_empty() {
        CaseLabel::F5
    } else {
        CaseLabel::None
    };
    Ok(CoverClass {
        m_values,
        case_label,
    })
}

/// One triggered decomposability condition, with the witnessing prime and
/// branch indices into the canonical branch order.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct FilterHit {
    pub condition: u8,
    pub prime: u64,
    pub branches: Vec<usize>,
}

fn gcd_of_parts(e: &Partition) -> u64 {
    e.runs()
        .iter()
        .fold(0u64, |acc, &(v, _)| num_integer::gcd(acc, v))
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn count_odd(e: &Partition) -> u64 {
    e.runs()
        .iter()
        .filter(|&&(v, _)| v % 2 == 1)
        .map(|&(_, c)| c)
        .sum()
}

fn count_coprime_to_3(e: &Partition) -> u64 {
    e.runs()
        .iter()
        .filter(|&&(v, _)| v % 3 != 0)
        .map(|&(_, c)| c)
        .sum()
}

/// Conditions under which the data cannot be the type of an indecomposable
/// covering whose monodromy is noncyclic, nondihedral and not the alternating
/// group on four points:
///
/// 1. some prime divides every entry of two branches;
/// 2. some prime divides every entry of one branch, and two other branches
///    carry exactly two odd entries in total;
/// 3. one branch is all even, and two other branches carry exactly two
///    entries coprime to 3 in total.
///
/// Points absent from the data are unramified and never trigger.
pub fn decomposability_filter(d: &RamificationData) -> Vec<FilterHit> {
    let branches = d.branches();
    let gcds: Vec<u64> = branches.iter().map(gcd_of_parts).collect();
    let mut hits = Vec::new();
    for i in 0..branches.len() {
        for j in i + 1..branches.len() {
            let g = num_integer::gcd(gcds[i], gcds[j]);
            for p in prime_divisors(g) {
                hits.push(FilterHit {
                    condition: 1,
                    prime: p,
                    branches: vec![i, j],
                });
            }
        }
    }
    for i in 0..branches.len() {
        let div_primes = prime_divisors(gcds[i]);
        for j in 0..branches.len() {
            for k in j + 1..branches.len() {
                if j == i || k == i {
                    continue;
                }
                if !div_primes.is_empty()
                    && count_odd(&branches[j]) + count_odd(&branches[k]) == 2
                {
                    for &p in &div_primes {
                        hits.push(FilterHit {
                            condition: 2,
                            prime: p,
                            branches: vec![i, j, k],
                        });
                    }
                }
                if count_odd(&branches[i]) == 0
                    && count_coprime_to_3(&branches[j]) + count_coprime_to_3(&branches[k]) == 2
                {
                    hits.push(FilterHit {
                        condition: 3,
                        prime: 3,
                        branches: vec![i, j, k],
                    });
                }
            }
        }
    }
    hits
}

/// Ramification of a Galois cover lying over the data: over each branch the
/// index is the least common multiple of the entries. The lcm multisets
/// `{2,2,2,2}, {3,3,3}, {2,4,4}, {2,3,6}` force solvable monodromy on any
/// indecomposable covering with this data.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ClosureReport {
    /// lcm of entries over each branch, ascending.
    pub lcms: Vec<u64>,
    /// `sum (1 - 1/e) - 2`: negative means a genus-0 closure, zero genus 1.
    pub chi: String,
    pub solvable: bool,
    pub closure_genus_zero: bool,
    pub closure_genus_one: bool,
    /// Exact closure genus `1 + N*chi/2` when the Galois group order N is
    /// supplied.
    pub genus: Option<String>,
}

/// See [`ClosureReport`].
pub fn galois_closure_genus(d: &RamificationData, order: Option<&BigUint>) -> ClosureReport {
    let mut lcms: Vec<u64> = d.branches().iter().map(Partition::lcm_parts).collect();
    lcms.sort_unstable();
    let mut chi = rat_i(-2);
    for &e in &lcms {
        chi += BigRational::one() - BigRational::new(BigInt::one(), big(e));
    }
    let solvable = matches!(
        lcms.as_slice(),
        [2, 2, 2, 2] | [3, 3, 3] | [2, 4, 4] | [2, 3, 6]
    );
    let genus = order.map(|n| {
        let n = BigRational::from_integer(BigInt::from(n.clone()));
        (BigRational::one() + n * &chi / rat(2)).to_string()
    });
    ClosureReport {
        lcms,
        closure_genus_zero: chi.is_negative(),
        closure_genus_one: chi.is_zero(),
        chi: chi.to_string(),
        solvable,
        genus,
    }
}

/// Genus bound for the 2-point quotient from a small set-quotient gap:
/// `g_{Y_1}(l+1) + (alpha+1)(l-1)` at t = 2, and
/// `((t-1) g_{Y_1} + C(t,2) + alpha) * l / (1 - t/(l-t+1))` for t > 2.
/// The hypothesis `gap < (alpha/l) C(l,t)` is enforced. When an exact
/// `g_{Y_2}` is supplied, reports whether it is below the bound.
pub fn castelnuovo_check(
    g_y1: i64,
    gap: i64,
    t: usize,
    ell: u64,
    alpha: u64,
    g_y2: Option<i64>,
) -> Result<(BigRational, Option<bool>)> {
    if t < 2 || (t as u64) * 2 > ell {
        return Err(Error::Domain(format!(
            "bound needs 2 <= t <= degree/2, got t={t}, degree={ell}"
        )));
    }
    let hypothesis = rat(alpha) / rat(ell) * rat(binomial(ell, t as u64));
    if rat_i(gap) >= hypothesis {
        return Err(Error::Domain(format!(
            "hypothesis violated: gap {gap} >= (alpha/l) C(l,t) = {hypothesis}"
        )));
    }
    let bound = if t == 2 {
        rat_i(g_y1) * rat(ell + 1) + rat(alpha + 1) * rat(ell - 1)
    } else {
        let eps = rat(t as u64) / rat(ell - t as u64 + 1);
        (rat_i(g_y1) * rat(t as u64 - 1) + rat(binomial(t as u64, 2)) + rat(alpha)) * rat(ell)
            / (BigRational::one() - eps)
    };
    let holds = g_y2.map(|g| rat_i(g) < bound);
    Ok((bound, holds))
}

/// Closed-form principal part of the pair contribution of an almost-Galois
/// branch with dominant index m, from the per-m displays. Exact for pure
/// types; otherwise differs from [`r_h1_pairs`] by a bounded amount.
pub fn s_h_estimate(e: &Partition, m: u64) -> Result<BigRational> {
    let ell = rat(e.degree());
    let parts = rat(e.num_parts());
    let count = |pred: &dyn Fn(u64) -> bool| -> BigRational {
        rat(e.runs()
            .iter()
            .filter(|&&(v, _)| pred(v))
            .map(|&(_, c)| c)
            .sum::<u64>())
    };
    let inner = match m {
        1 => {
            let rh = rat(e.rh_term());
            return Ok(ell * rh);
        }
        2 => &ell / rat(2) - parts + count(&|r| r % 2 == 1),
        3 => &ell / rat(3) - parts + rat(4) / rat(3) * count(&|r| r % 3 != 0),
        4 => {
            &ell / rat(4) - parts
                + count(&|r| r % 4 == 2)
                + rat(3) / rat(2) * count(&|r| r % 2 == 1)
        }
        6 => {
            &ell / rat(6) - parts
                + count(&|r| r % 6 == 3)
                + rat(4) / rat(3) * count(&|r| r % 6 == 2 || r % 6 == 4)
                + rat(5) / rat(3) * count(&|r| r % 6 == 1 || r % 6 == 5)
        }
        _ => {
            return Err(Error::Domain(format!(
                "no closed form for dominant index m = {m}"
            )))
        }
    };
    Ok(ell * inner)
}

/// The same quantity via the uniform expression
/// `(l/m) sum_r (r + m - 2 gcd(r,m))`; the per-m displays agree with it.
pub fn s_h_uniform(e: &Partition, m: u64) -> BigRational {
    let mut sum = BigRational::zero();
    for &(r, c) in e.runs() {
        let term = big(r) + big(m) - big(2 * num_integer::gcd(r, m));
        sum += BigRational::from_integer(term * big(c));
    }
    sum * rat(e.degree()) / rat(m)
}

/// Report of the monotonicity refutation: when some branch power forces any
/// primitive realization to contain the alternating group, the exact pair
/// identity must not drop the 2-set genus below the point genus.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct MonotonicityReport {
    pub g_x1: i64,
    pub g_x2: String,
    pub witness_branch: usize,
    pub witness_power: u64,
    pub witness_type: Partition,
    pub nonexistent: bool,
}

/// Looks for a branch one of whose powers has cycle type `[2,1^*]`,
/// `[3,1^*]`, or `[2,2,1^*]` (degree >= 9).
fn jordan_forcing_power(e: &Partition) -> Option<(u64, Partition)> {
    let ell = e.degree();
    let lcm = e.lcm_parts();
    for k in (1..=lcm).filter(|k| lcm % k == 0) {
        let pt = e.power_type(k);
        let nontrivial: Vec<(u64, u64)> = pt
            .runs()
            .iter()
            .copied()
            .filter(|&(v, _)| v > 1)
            .collect();
        let forcing = match nontrivial.as_slice() {
            [(2, 1)] | [(3, 1)] => true,
            [(2, 2)] => ell >= 9,
            _ => false,
        };
        if forcing {
            return Some((k, pt));
        }
    }
    None
}

/// Refutes ramification data whose realizations would all contain the
/// alternating group: computes `g_{X_1}` by Riemann–Hurwitz and `g_{X_2}`
/// by the exact pair identity; `g_{X_2} < g_{X_1}` contradicts the
/// monotonicity of set-quotient genera, so no covering exists.
pub fn refute_by_monotonicity(d: &RamificationData) -> Result<MonotonicityReport> {
    let witness = d
        .branches()
        .iter()
        .enumerate()
        .find_map(|(i, b)| jordan_forcing_power(b).map(|(k, t)| (i, k, t)))
        .ok_or_else(|| Error::Domain("no branch power forces the alternating group".into()))?;
    let g_x1 = match d.rh_genus(0).genus {
        Genus::Value(g) => g,
        other => {
            return Err(Error::Domain(format!(
                "data has no realizable point-action genus: {other:?}"
            )))
        }
    };
    let g_x2 = g_x2_formula(d, g_x1)?;
    let nonexistent = g_x2 < rat_i(g_x1);
    Ok(MonotonicityReport {
        g_x1,
        g_x2: g_x2.to_string(),
        witness_branch: witness.0,
        witness_power: witness.1,
        witness_type: witness.2,
        nonexistent,
    })
}

/// Both routes to the pair-action genus: the exact identity and plain
/// Riemann–Hurwitz on the branch-wise 2-set lift.
pub fn g_x2_two_routes(d: &RamificationData, g_y1: i64) -> Result<(BigRational, i64)> {
    let formula = g_x2_formula(d, g_y1)?;
    let ell = d.degree();
    let n = ell * (ell - 1) / 2;
    let rh: u64 = d.branches().iter().map(|b| lift_to_2sets(b).rh_term()).sum();
    Ok((formula, rh as i64 / 2 - n as i64 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn part(degree: u64, parts: &[u64]) -> Partition {
        Partition::new(degree, parts.to_vec()).unwrap()
    }

    #[test]
    fn even_count_examples() {
        let mut e = vec![2u64];
        e.extend([1; 11]);
        assert_eq!(r_pi2_count(&part(13, &e)), 1);
        assert_eq!(r_pi2_count(&Partition::trivial(7)), 0);
        assert_eq!(r_pi2_count(&part(12, &[4, 2, 2, 2, 2])), 5);
    }

    #[test]
    fn pair_sum_hand_value() {
        // [3,10]: ordered pairs give 0 + 2 + 9 + 0 = 11
        assert_eq!(r_h1_pairs(&part(13, &[3, 10])), 11);
        // equal even parts share their gcd
        assert_eq!(r_h1_pairs(&part(12, &[2; 6])), 0);
        assert_eq!(
            BigUint::from(r_h1_pairs(&part(13, &[3, 10]))),
            r_h1t(&part(13, &[3, 10]), 2)
        );
    }

    #[test]
    fn closed_form_matches_brute_orbit_difference() {
        let caps = Caps::default();
        for d in 2..=8u64 {
            for parts in all_partitions(d) {
                let e = part(d, &parts);
                for t in 2..=4usize.min(d as usize) {
                    assert_eq!(
                        r_h1t(&e, t),
                        brute_r_h1t(&e, t, &caps).unwrap(),
                        "type {e}, t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn pi2_matches_brute() {
        let caps = Caps::default();
        for d in 2..=9u64 {
            for parts in all_partitions(d) {
                let e = part(d, &parts);
                assert_eq!(r_pi2_count(&e), brute_r_pi2(&e, &caps).unwrap(), "{e}");
            }
        }
    }

    fn all_partitions(n: u64) -> Vec<Vec<u64>> {
        fn rec(n: u64, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
            if n == 0 {
                out.push(prefix.clone());
                return;
            }
            let mut k = max.min(n);
            while k >= 1 {
                prefix.push(k);
                rec(n - k, k, prefix, out);
                prefix.pop();
                k -= 1;
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn g_x2_on_source_row() {
        // [13],[3,10],[2,1^11] with g_Y1 = 0: -20 + 0 + 10 + 10 = 0
        let mut two = vec![2u64];
        two.extend([1; 11]);
        let d = RamificationData::new(
            13,
            [part(13, &[13]), part(13, &[3, 10]), part(13, &two)],
        )
        .unwrap();
        let g = g_x2_formula(&d, 0).unwrap();
        assert!(g.is_zero());
        let (formula, lifted) = g_x2_two_routes(&d, 0).unwrap();
        assert_eq!(formula.to_integer().to_i64().unwrap(), lifted);
    }

    #[test]
    fn g_x2_on_nonexistent_row() {
        // degree 12, [1^2,2^5],[2^6]^3,[2,1^10], g_Y1 = 1 -> g_X2 = 0
        let two6 = part(12, &[2; 6]);
        let d = RamificationData::new(
            12,
            [
                part(12, &[2, 2, 2, 2, 2, 1, 1]),
                two6.clone(),
                two6.clone(),
                two6,
                part(12, &[2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]),
            ],
        )
        .unwrap();
        assert!(g_x2_formula(&d, 1).unwrap().is_zero());
    }

    #[test]
    fn mu_r_examples_and_characterization() {
        assert_eq!(mu_r(&[2, 2]), -2);
        assert_eq!(mu_r(&[3, 3, 3]), 0);
        for n in 1..=24u64 {
            for parts in all_partitions(n) {
                let val = mu_r(&parts);
                if val < 0 {
                    let first = parts[0];
                    assert!(
                        first % 2 == 0 && parts.iter().all(|&p| p == first),
                        "mu_r < 0 must force equal even parts: {parts:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn pit_bound_degenerates_at_t2_and_holds_at_t3() {
        let caps = Caps::default();
        let e0 = BigRational::one();
        let e = part(10, &[4, 2, 2, 1, 1]);
        assert_eq!(r_pit_bound(&e, 2, &e0).unwrap(), rat(r_pi2_count(&e)));
        // oracle inequality at t = 3 over all partitions of 10
        for parts in all_partitions(10) {
            let e = part(10, &parts);
            let bound = r_pit_bound(&e, 3, &e0).unwrap();
            let p = canonical_perm_of_type(&e).unwrap();
            let st = perm::induced_tset_cycle_type(&p, 3, &caps).unwrap();
            let tt = perm::induced_ttuple_cycle_type(&p, 3, &caps).unwrap();
            let r_f = st.degree() - st.num_parts();
            let r_h = tt.degree() - tt.num_parts();
            let r_pi = r_h - 6 * r_f;
            assert!(rat(r_pi) <= bound, "type {e}: {r_pi} > {bound}");
        }
    }

    #[test]
    fn single_cycle_main_term_is_zero_for_odd_degree() {
        assert!(r_pit_main_term(&part(9, &[9]), 3).is_zero());
    }

    #[test]
    fn main_term_comparison_cases() {
        // all orbits share their 2-adic value: empty main term, 0 <= 0
        assert!(t1_bound_check(&part(12, &[2; 6]), 3).unwrap());
        assert!(t1_bound_check(&part(8, &[4, 2, 2]), 3).unwrap());
        for n in 8..=14u64 {
            for parts in all_partitions(n) {
                for t in 3..=5usize.min(n as usize / 2) {
                    assert!(
                        t1_bound_check(&part(n, &parts), t).unwrap(),
                        "failed at {parts:?}, t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn point_classifier_examples() {
        for alpha in [1u64, 3, 5] {
            let c = classify_point(&part(40, &[2; 20]), alpha);
            let PointClassification::Classified(pc) = c else {
                panic!("expected classification")
            };
            assert_eq!(pc.m, Mh::Finite(2));
            assert_eq!(pc.epsilon, 12 * (alpha + 1));
            let c = classify_point(&part(40, &[40]), alpha);
            let PointClassification::Classified(pc) = c else {
                panic!("expected classification")
            };
            assert_eq!(pc.m, Mh::Infinity);
            assert_eq!(pc.epsilon, 84 * (alpha + 1));
            let mut v = vec![2u64];
            v.extend([1; 38]);
            let c = classify_point(&part(40, &v), alpha);
            let PointClassification::Classified(pc) = c else {
                panic!("expected classification")
            };
            assert_eq!(pc.m, Mh::Finite(1));
        }
    }

    #[test]
    fn cover_classifier_cases() {
        // {[3^{l/3}] thrice} -> F2
        let b = part(15, &[3; 5]);
        let d = RamificationData::new(15, [b.clone(), b.clone(), b]).unwrap();
        assert_eq!(classify_cover(&d, 3).unwrap().case_label, CaseLabel::F2);
        // I2-shaped: [a,l-a],[1^2,2^*],[2^{l/2}],[1^{l-2},2]
        let mut one2 = vec![2u64];
        one2.extend([1; 12]);
        let d = RamificationData::new(
            14,
            [
                part(14, &[3, 11]),
                part(14, &[2, 2, 2, 2, 2, 2, 1, 1]),
                part(14, &[2; 7]),
                part(14, &one2),
            ],
        )
        .unwrap();
        assert_eq!(classify_cover(&d, 3).unwrap().case_label, CaseLabel::I2);
    }

    #[test]
    fn filter_condition_shapes() {
        // degree 12: {[2^6],[3^4],[1^2,4,6]} triggers (2) with p = 3
        let d = RamificationData::new(
            12,
            [part(12, &[2; 6]), part(12, &[3; 4]), part(12, &[6, 4, 1, 1])],
        )
        .unwrap();
        let hits = decomposability_filter(&d);
        assert!(
            hits.iter().any(|h| h.condition == 2 && h.prime == 3),
            "{hits:?}"
        );
        // {[2^6],[1,2,3^3],[3^2,6]} triggers (3)
        let d = RamificationData::new(
            12,
            [
                part(12, &[2; 6]),
                part(12, &[3, 3, 3, 2, 1]),
                part(12, &[6, 3, 3]),
            ],
        )
        .unwrap();
        let hits = decomposability_filter(&d);
        assert!(hits.iter().any(|h| h.condition == 3), "{hits:?}");
        // two branches all divisible by 3 trigger (1)
        let d = RamificationData::new(9, [part(9, &[3, 3, 3]), part(9, &[9])]).unwrap();
        let hits = decomposability_filter(&d);
        assert!(hits.iter().any(|h| h.condition == 1 && h.prime == 3));
    }

    #[test]
    fn closure_report_families() {
        // lcms {2,3,6}: solvable, genus-1 closure
        let d = RamificationData::new(
            12,
            [
                part(12, &[2; 6]),
                part(12, &[3, 3, 3, 1, 1, 1]),
                part(12, &[6, 6]),
            ],
        )
        .unwrap();
        let rep = galois_closure_genus(&d, None);
        assert_eq!(rep.lcms, vec![2, 3, 6]);
        assert!(rep.solvable);
        assert!(rep.closure_genus_one);
        // lcms {2,2,5} at degree 5: spherical dihedral closure of order 10
        let d = RamificationData::new(
            5,
            [part(5, &[2, 2, 1]), part(5, &[2, 2, 1]), part(5, &[5])],
        )
        .unwrap();
        let rep = galois_closure_genus(&d, Some(&BigUint::from(10u32)));
        assert_eq!(rep.lcms, vec![2, 2, 5]);
        assert!(rep.closure_genus_zero);
        assert_eq!(rep.genus.as_deref(), Some("0"));
    }

    #[test]
    fn castelnuovo_t2_bound() {
        let (bound, holds) = castelnuovo_check(0, 0, 2, 13, 1, Some(1)).unwrap();
        assert_eq!(bound, rat(24));
        assert_eq!(holds, Some(true));
        assert!(castelnuovo_check(0, 100, 2, 13, 1, None).is_err());
        // t = 3 shape: (2*0 + 3 + 1) * 20 / (1 - 3/18)
        let (bound, _) = castelnuovo_check(0, 0, 3, 20, 1, None).unwrap();
        assert_eq!(bound, rat(4 * 20) * rat(18) / rat(15));
    }

    #[test]
    fn s_h_matches_uniform_expression() {
        for (parts, degree) in [
            (vec![2u64; 10], 20u64),
            (vec![3u64; 5], 15),
            (vec![4, 4, 2, 2, 1, 1, 6, 6, 6], 32),
            (vec![1, 2, 2, 2, 2, 2, 2], 13),
        ] {
            let e = part(degree, &parts);
            for m in [1u64, 2, 3, 4, 6] {
                assert_eq!(s_h_estimate(&e, m).unwrap(), s_h_uniform(&e, m), "m={m}");
            }
        }
        assert!(s_h_estimate(&part(10, &[2; 5]), 5).is_err());
    }

    #[test]
    fn s_h_hand_values() {
        // [2^{l/2}] at m = 2 vanishes; [1,2^6] at l = 13, m = 2 gives 13/2
        assert!(s_h_estimate(&part(20, &[2; 10]), 2).unwrap().is_zero());
        let e = part(13, &[2, 2, 2, 2, 2, 2, 1]);
        assert_eq!(s_h_estimate(&e, 2).unwrap(), rat(13) / rat(2));
        assert!(s_h_estimate(&part(15, &[3; 5]), 3).unwrap().is_zero());
    }

    #[test]
    fn monotonicity_refutes_and_spares() {
        // nonexistent: [1^2,2^5],[2^6]^3,[2,1^10] at degree 12
        let two6 = part(12, &[2; 6]);
        let d = RamificationData::new(
            12,
            [
                part(12, &[2, 2, 2, 2, 2, 1, 1]),
                two6.clone(),
                two6.clone(),
                two6,
                part(12, &[2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1]),
            ],
        )
        .unwrap();
        let rep = refute_by_monotonicity(&d).unwrap();
        assert_eq!(rep.g_x1, 1);
        assert!(rep.nonexistent);
        // existing type survives: [13],[3,10],[2,1^11]
        let mut two = vec![2u64];
        two.extend([1; 11]);
        let d = RamificationData::new(
            13,
            [part(13, &[13]), part(13, &[3, 10]), part(13, &two)],
        )
        .unwrap();
        let rep = refute_by_monotonicity(&d).unwrap();
        assert_eq!(rep.g_x1, 0);
        assert!(!rep.nonexistent);
        // precondition unmet
        let d = RamificationData::new(12, [part(12, &[2; 6]), part(12, &[12])]).unwrap();
        assert!(refute_by_monotonicity(&d).is_err());
    }

    #[test]
    fn jordan_power_found_through_squares() {
        // [1,3,2^4]: squaring leaves a 3-cycle
        let e = part(12, &[3, 2, 2, 2, 2, 1]);
        let (k, t) = jordan_forcing_power(&e).unwrap();
        assert_eq!(k, 2);
        assert_eq!(t.count_of(3), 1);
        // [4,2^4]: squaring gives [2,2,1^8]
        let e = part(12, &[4, 2, 2, 2, 2]);
        let (k, t) = jordan_forcing_power(&e).unwrap();
        assert_eq!(k, 2);
        assert_eq!(t.count_of(2), 2);
    }
}
