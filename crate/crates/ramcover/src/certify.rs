//! Explicit branch-cycle tuples for the catalog rows, their certification,
//! and exhaustive refutation of small non-existent types.
//!
//! The constructions are parameterized families of permutations written in
//! 1-indexed cycle notation exactly as they relabel the points; every
//! product-one relation of the form `x1 x2 = x3` (involutive `x3`) or
//! `x1 x2 = x4 x3` (involutive `x3, x4`) is normalized to a product-one
//! sequence, using that involutions are their own inverses.

use crate::induced::{canonical_perm_of_type, quotient_genera, BranchTuple};
use crate::perm::{classify_alternating, is_primitive, GeneratorSet, GroupVerdict, Permutation};
use crate::ramdata::{Genus, Partition, RamificationData};
use crate::tables::{absent_row, source_row};
use crate::{Caps, Error, Result};
use std::collections::BTreeMap;

/// Optional parameters of a tuple construction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TupleParams {
    /// The odd parameter of the `I1.1` family.
    pub a: Option<u64>,
    /// Path lengths of the imprimitivity witnesses (`ell` is determined by
    /// them; when absent they are derived from `ell`).
    pub m: Option<u64>,
    pub n: Option<u64>,
}

/// Labels with an explicit construction.
pub const KNOWN_LABELS: &[&str] = &[
    "F1.9", "F3.1", "F3.2", "F3.3", "F4.1", "F4.2", "F4.3", "F4.4", "F4.5", "F4.6",
    "I2.N1-witness", "I2.N2-witness", "I1.1-generic",
];

/// True iff the construction for `label` is defined at degree `ell`.
pub fn is_admissible(label: &str, ell: u64) -> bool {
    match label {
        "F1.9" => ell % 2 == 0 && ell >= 10,
        "F3.1" => ell % 4 == 0 && ell >= 8,
        "F3.2" => ell % 4 == 1 && ell >= 9,
        "F3.3" => ell % 4 == 3 && ell >= 7,
        "F4.1" => ell % 6 == 0 && ell >= 6,
        "F4.2" => ell % 6 == 2 && ell >= 8,
        "F4.3" => ell % 6 == 1 && ell >= 13,
        "F4.4" => ell % 6 == 3 && ell >= 9,
        "F4.5" => ell % 6 == 4 && ell >= 10,
        "F4.6" => ell % 6 == 5 && ell >= 11,
        "I2.N1-witness" => ell % 2 == 0 && ell >= 4,
        "I2.N2-witness" => ell % 2 == 0 && ell >= 4,
        "I1.1-generic" => ell >= 5,
        _ => false,
    }
}

/// The admissible degrees of a label, ascending from the smallest.
pub fn admissible_ells(label: &str, max_ell: u64) -> Vec<u64> {
    (4..=max_ell).filter(|&l| is_admissible(label, l)).collect()
}

fn perm_1idx(degree: u64, cycles: &[Vec<u64>]) -> Result<Permutation> {
    let mut zero_indexed = Vec::with_capacity(cycles.len());
    for c in cycles {
        let mut c0 = Vec::with_capacity(c.len());
        for &p in c {
            if p == 0 || p > degree {
                return Err(Error::Domain(format!(
                    "construction point {p} out of range 1..={degree}"
                )));
            }
            c0.push((p - 1) as usize);
        }
        zero_indexed.push(c0);
    }
    Permutation::from_cycles(degree as usize, &zero_indexed)
}

fn inadmissible(label: &str, ell: u64) -> Error {
    Error::Inadmissible {
        label: label.to_string(),
        ell,
        reason: "congruence condition of the construction fails".into(),
    }
}

/// The family `x1 x2 = x4 x3` with four branch cycles: a fixed-point-free
/// product of an `(l-1)`-cycle decomposition into involutions.
fn build_f19(l: u64) -> Result<Vec<Permutation>> {
    let h = l / 2;
    let mut x1 = vec![vec![1, 4], vec![3, 5]];
    x1.extend((3..h).map(|i| vec![2 * i, 2 * i + 1]));
    let mut x2 = vec![vec![1, 2, 3, 4]];
    x2.extend((2..h).map(|i| vec![2 * i + 1, 2 * i + 2]));
    let mut x3 = vec![vec![2, 3], vec![4, 6]];
    x3.extend((2..h - 1).map(|i| vec![2 * i + 1, 2 * i + 4]));
    let x4: Vec<Vec<u64>> = (1..h).map(|i| vec![2 * i + 1, 2 * i + 2]).collect();
    Ok(vec![
        perm_1idx(l, &x1)?,
        perm_1idx(l, &x2)?,
        perm_1idx(l, &x3)?,
        perm_1idx(l, &x4)?,
    ])
}

fn build_f31(l: u64) -> Result<Vec<Permutation>> {
    let k = l / 4;
    let mut x1 = vec![
        vec![2, 1, 4, 5],
        vec![4 * k - 2, 4 * k - 5, 4 * k, 4 * k - 1],
    ];
    x1.extend((1..=k - 2).map(|i| vec![4 * i + 2, 4 * i - 1, 4 * i + 4, 4 * i + 5]));
    let mut x2 = vec![vec![2, 3, 4]];
    x2.extend((1..=k - 1).map(|i| vec![4 * i + 1, 4 * i + 2, 4 * i + 3, 4 * i + 4]));
    let mut x3 = vec![vec![2, 1]];
    for i in 1..=k - 1 {
        x3.push(vec![4 * i, 4 * i + 2]);
        x3.push(vec![4 * i + 1, 4 * i - 1]);
    }
    Ok(vec![
        perm_1idx(l, &x1)?,
        perm_1idx(l, &x2)?,
        perm_1idx(l, &x3)?,
    ])
}

fn build_f32(l: u64) -> Result<Vec<Permutation>> {
    let k = (l - 5) / 4;
    let mut x1 = vec![
        vec![4, 5, 4 * k + 5, 4 * k + 4],
        vec![4 * k - 2, 4 * k - 1, 4 * k + 2, 4 * k + 3],
    ];
    x1.extend((1..=k - 1).map(|i| vec![4 * i - 2, 4 * i - 1, 4 * i + 4, 4 * i + 5]));
    let mut x2 = vec![vec![1, 2, 3], vec![4 * k + 4, 4 * k + 5]];
    x2.extend((1..=k).map(|i| vec![4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3]));
    let mut x3 = vec![
        vec![1, 2],
        vec![5, 4 * k + 4],
        vec![4 * k - 1, 4 * k + 3],
        vec![4 * k, 4 * k + 2],
    ];
    for i in 1..=k - 1 {
        x3.push(vec![4 * i - 1, 4 * i + 5]);
        x3.push(vec![4 * i, 4 * i + 2]);
    }
    Ok(vec![
        perm_1idx(l, &x1)?,
        perm_1idx(l, &x2)?,
        perm_1idx(l, &x3)?,
    ])
}

fn build_f33(l: u64) -> Result<Vec<Permutation>> {
    let k = (l - 3) / 4;
    let mut x1 = vec![
        vec![1, 4, 5],
        vec![4 * k - 2, 4 * k - 1, 4 * k + 2, 4 * k + 3],
    ];
    x1.extend((1..=k - 1).map(|i| vec![4 * i - 2, 4 * i - 1, 4 * i + 4, 4 * i + 5]));
    let mut x2 = vec![vec![2, 3]];
    x2.extend((1..=k).map(|i| vec![4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3]));
    let mut x3 = vec![
        vec![1, 5],
        vec![4 * k - 1, 4 * k + 3],
        vec![4 * k, 4 * k + 2],
    ];
    for i in 1..=k - 1 {
        x3.push(vec![4 * i - 1, 4 * i + 5]);
        x3.push(vec![4 * i, 4 * i + 2]);
    }
    Ok(vec![
        perm_1idx(l, &x1)?,
        perm_1idx(l, &x2)?,
        perm_1idx(l, &x3)?,
    ])
}

/// The shared tails of the six-periodic families.
fn sixcycles(k: u64) -> Vec<Vec<u64>> {
    (0..k)
        .map(|i| vec![6 * i + 1, 6 * i + 2, 6 * i + 3, 6 * i + 4, 6 * i + 5, 6 * i + 6])
        .collect()
}

fn six_x1_tail(k: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for i in 1..=k - 1 {
        out.push(vec![6 * i - 3, 6 * i - 1, 6 * i + 1]);
        out.push(vec![6 * i + 2, 6 * i - 2, 6 * i + 6]);
    }
    out
}

fn six_x3_tail(upto: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for i in 1..=upto {
        out.push(vec![6 * i - 3, 6 * i]);
        out.push(vec![6 * i - 2, 6 * i + 1]);
        out.push(vec![6 * i - 1, 6 * i + 2]);
    }
    out
}

fn build_f41(l: u64) -> Result<Vec<Permutation>> {
    let k = l / 6;
    let mut x1 = vec![vec![2, 6], vec![6 * k - 1, 6 * k - 2, 6 * k - 3]];
    x1.extend(six_x1_tail(k));
    let x2 = sixcycles(k);
    let mut x3 = vec![vec![1, 2], vec![6 * k - 3, 6 * k]];
    x3.extend(six_x3_tail(k - 1));
    Ok(vec![
        perm_1idx(l, &x1)?,
        perm_1idx(l, &x2)?,
        perm_1idx(l, &x3)?,
    ])
}

fn build_f42(l: u64) -> Result<Vec<Permutation>> {
    let k = (l - 2) / 6;
    let mut x1 = vec![
        vec![1, 6 * k + 1],
        vec![2, 6 * k + 2, 6],
        vec![6 * k - 1, 6 * k - 2, 6 * k - 3],
    ];
    x1.extend(six_x1_tail(k));
    let mut x2 = vec![vec![6 * k + 1, 6 * k + 2]];
    x2.extend(sixcycles(k));
    let mut x3 = vec![
        vec![1, 6 * k + 2],
        vec![2, 6 * k + 1],
        vec![6 * k, 6 * k - 3],
    ];
    x3.extend(six_x3_tail(k - 1));
    Ok(vec![
        perm_1idx(l, &x1)?,
        perm_1idx(l, &x2)?,
        perm_1idx(l, &x3)?,
    ])
}

fn build_f43(l: u64) -> Result<Vec<Permutation>> {
    let k = (l - 7) / 6;
    let mut x1 = vec![
        vec![1, 6 * k + 7, 6 * k + 5],
        vec![2, 6 * k + 4, 6],
        vec![6 * k - 3, 6 * k - 1, 6 * k + 1],
        vec![6 * k - 2, 6 * k + 3, 6 * k + 2],
    ];
    x1.extend(six_x1_tail(k));
    let mut x2 = vec![
        vec![6 * k + 1, 6 * k + 2, 6 * k + 3],
        vec![6 * k + 4, 6 * k + 5, 6 * k + 6, 6 * k + 7],
    ];
    x2.extend(sixcycles(k));
    let mut x3 = vec![
        vec![1, 6 * k + 4],
        vec![2, 6 * k + 5],
        vec![6 * k + 6, 6 * k + 7],
    ];
    x3.extend(six_x3_tail(k));
    Ok(vec![
        perm_1idx(l, &x1)?,
        perm_1idx(l, &x2)?,
        perm_1idx(l, &x3)?,
    ])
}

fn build_f44(l: u64) -> Result<Vec<Permutation>> {
    let k = (l - 3) / 6;
    let mut x1 = vec![
        vec![2, 6],
        vec![6 * k - 2, 6 * k + 3, 6 * k + 2],
        vec![6 * k - 3, 6 * k - 1, 6 * k + 1],
    ];
    x1.extend(six_x1_tail(k));
    let mut x2 = vec![vec![6 * k + 1, 6 * k + 2, 6 * k + 3]];
    x2.extend(sixcycles(k));
    let mut x3 = vec![vec![1, 2]];
    x3.extend(six_x3_tail(k));
    Ok(vec![
        perm_1idx(l, &x1)?,
        perm_1idx(l, &x2)?,
        perm_1idx(l, &x3)?,
    ])
}

fn build_f45(l: u64) -> Result<Vec<Permutation>> {
    let k = (l - 4) / 6;
    let mut x1 = vec![
        vec![1, 6, 2],
        vec![3, 5, 7],
        vec![6 * k - 2, 6 * k + 4, 6 * k + 2],
    ];
    for i in 2..=k {
        x1.push(vec![6 * i - 4, 6 * i - 8, 6 * i]);
        x1.push(vec![6 * i - 3, 6 * i - 1, 6 * i + 1]);
    }
    let mut x2 = vec![vec![6 * k + 1, 6 * k + 2, 6 * k + 3, 6 * k + 4]];
    x2.extend(sixcycles(k));
    let mut x3 = vec![vec![6 * k + 3, 6 * k + 4]];
    x3.extend(six_x3_tail(k));
    Ok(vec![
        perm_1idx(l, &x1)?,
        perm_1idx(l, &x2)?,
        perm_1idx(l, &x3)?,
    ])
}

fn build_f46(l: u64) -> Result<Vec<Permutation>> {
    let k = (l - 5) / 6;
    let mut x1 = vec![
        vec![1, 6 * k + 5],
        vec![2, 6 * k + 4, 6],
        vec![6 * k - 3, 6 * k - 1, 6 * k + 1],
        vec![6 * k + 2, 6 * k - 2, 6 * k + 3],
    ];
    x1.extend(six_x1_tail(k));
    let mut x2 = vec![
        vec![6 * k + 1, 6 * k + 2, 6 * k + 3],
        vec![6 * k + 4, 6 * k + 5],
    ];
    x2.extend(sixcycles(k));
    let mut x3 = vec![vec![1, 6 * k + 4], vec![2, 6 * k + 5]];
    x3.extend(six_x3_tail(k));
    Ok(vec![
        perm_1idx(l, &x1)?,
        perm_1idx(l, &x2)?,
        perm_1idx(l, &x3)?,
    ])
}

/// The imprimitive pair `(b, c)` whose product is an `l`-cycle, with `b` of
/// type `[4, 2^*]` and `c` of type `[2^{l/2}]`; returned as the product-one
/// triple `((bc)^{-1}, b, c)`.
fn build_i2n1(m: u64, n: u64) -> Result<Vec<Permutation>> {
    let l = 2 * m + 2 * n + 4;
    let mut c = Vec::new();
    for i in 1..=m + 1 {
        c.push(vec![i, 2 * m + n + 4 - i]);
    }
    for i in m + 2..=m + n + 2 {
        c.push(vec![i, 3 * m + 2 * n + 6 - i]);
    }
    let mut b = vec![vec![m + 1, 2 * m + 2 * n + 4, 2 * m + n + 3, m + n + 2]];
    for i in 1..=m {
        b.push(vec![i, 2 * m + n + 3 - i]);
    }
    for i in m + 2..=m + n + 1 {
        b.push(vec![i, 3 * m + 2 * n + 5 - i]);
    }
    let b = perm_1idx(l, &b)?;
    let c = perm_1idx(l, &c)?;
    let bc = b.compose(&c)?;
    Ok(vec![bc.inverse(), b, c])
}

/// The imprimitive triple `(b, c, d)` with `dcb` an `l`-cycle; returned as
/// the product-one quadruple `((dcb)^{-1}, d, c, b)`.
fn build_i2n2(m: u64, n: u64) -> Result<Vec<Permutation>> {
    if m == 0 {
        return Err(Error::Domain("the construction needs m >= 1".into()));
    }
    let l = 2 * m + 2 * n + 2;
    let mut c = vec![
        vec![m + n + 1, 2 * m + n + 1],
        vec![m, 2 * m + 2 * n + 2],
    ];
    for i in 1..=m.saturating_sub(1) {
        c.push(vec![i, 2 * m + n + 1 - i]);
    }
    for i in m + 1..=m + n {
        c.push(vec![i, 3 * m + 2 * n + 2 - i]);
    }
    let mut b = Vec::new();
    for i in 1..=m {
        b.push(vec![i, 2 * m + n + 2 - i]);
    }
    for i in m + 1..=m + n + 1 {
        b.push(vec![i, 3 * m + 2 * n + 3 - i]);
    }
    let d = perm_1idx(l, &[vec![l / 2, l]])?;
    let c = perm_1idx(l, &c)?;
    let b = perm_1idx(l, &b)?;
    let dcb = d.compose(&c)?.compose(&b)?;
    Ok(vec![dcb.inverse(), d, c, b])
}

/// Splits `ell` as `2m + 2n + offset` for the witness constructions when the
/// caller did not fix `(m, n)`: the balanced choice.
fn derive_mn(ell: u64, offset: u64, min_m: u64) -> (u64, u64) {
    let budget = (ell - offset) / 2;
    let m = (budget / 2).max(min_m);
    (m, budget - m)
}

/// The generic family `(c^{-1}, c t, t)` of types `[l], [a, l-a], [2, 1^*]`:
/// `c` the full cycle and `t` the transposition `{1, a+1}`, so that `c t`
/// splits into an `a`-cycle and an `(l-a)`-cycle.
fn build_i11(l: u64, a: u64) -> Result<Vec<Permutation>> {
    if a == 0 || a >= l || a % 2 == 0 || num_integer::gcd(a, l) != 1 {
        return Err(Error::Inadmissible {
            label: "I1.1-generic".into(),
            ell: l,
            reason: format!("a = {a} must be odd, coprime to {l}, in 1..{l}"),
        });
    }
    let degree = l as usize;
    let c = Permutation::from_cycles(degree, &[(0..degree).collect()])?;
    let t = Permutation::from_cycles(degree, &[vec![0, a as usize]])?;
    let ct = c.compose(&t)?;
    Ok(vec![c.inverse(), ct, t])
}

/// Builds the labeled construction at degree `ell`.
pub fn build_tuple(label: &str, ell: u64, params: TupleParams) -> Result<BranchTuple> {
    if !is_admissible(label, ell) {
        return Err(inadmissible(label, ell));
    }
    let cycles = match label {
        "F1.9" => build_f19(ell)?,
        "F3.1" => build_f31(ell)?,
        "F3.2" => build_f32(ell)?,
        "F3.3" => build_f33(ell)?,
        "F4.1" => build_f41(ell)?,
        "F4.2" => build_f42(ell)?,
        "F4.3" => build_f43(ell)?,
        "F4.4" => build_f44(ell)?,
        "F4.5" => build_f45(ell)?,
        "F4.6" => build_f46(ell)?,
        "I2.N1-witness" => {
            let (m, n) = match (params.m, params.n) {
                (Some(m), Some(n)) => (m, n),
                _ => derive_mn(ell, 4, 0),
            };
            if 2 * m + 2 * n + 4 != ell {
                return Err(inadmissible(label, ell));
            }
            build_i2n1(m, n)?
        }
        "I2.N2-witness" => {
            let (m, n) = match (params.m, params.n) {
                (Some(m), Some(n)) => (m, n),
                _ => derive_mn(ell, 2, 1),
            };
            if 2 * m + 2 * n + 2 != ell {
                return Err(inadmissible(label, ell));
            }
            build_i2n2(m, n)?
        }
        "I1.1-generic" => build_i11(ell, params.a.unwrap_or(1))?,
        _ => return Err(Error::UnknownLabel(label.to_string())),
    };
    BranchTuple::new(cycles)
}

/// The catalog row a labeled construction certifies against.
pub fn expected_data(label: &str, ell: u64, params: TupleParams) -> Result<RamificationData> {
    let branches = match label {
        "I2.N1-witness" => absent_row("I2.N1", ell)?,
        "I2.N2-witness" => absent_row("I2.N2", ell)?,
        "I1.1-generic" => source_row("I1.1", ell, params.a.unwrap_or(1))?,
        other => source_row(other, ell, 0)?,
    };
    RamificationData::new(ell, branches)
}

/// One certification check.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CheckResult {
    pub pass: bool,
    pub detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        pass,
        detail: detail.into(),
    }
}

/// Certification verdicts for one tuple against one expected row.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct CertReport {
    pub checks: BTreeMap<&'static str, CheckResult>,
    pub ell: u64,
    /// Group verdict; present exactly when the tuple is transitive.
    pub verdict: Option<GroupVerdict>,
}

impl CertReport {
    pub fn all_pass(&self) -> bool {
        self.checks.values().all(|c| c.pass)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.checks.get(name).is_some_and(|c| c.pass)
    }
}

/// Runs the six checks: product-one, cycle types against the expected row,
/// transitivity, primitivity, containment of the alternating group, and
/// agreement of the point-action genus with Riemann–Hurwitz on the row.
pub fn certify(
    tuple: &BranchTuple,
    expected: &RamificationData,
    caps: &Caps,
) -> Result<CertReport> {
    let mut checks = BTreeMap::new();
    let ell = tuple.degree() as u64;
    let product_one = tuple.is_product_one();
    checks.insert(
        "PRODUCT_ONE",
        check(product_one, if product_one { "left-to-right product is the identity" } else { "product of the cycles is not the identity" }),
    );
    let actual = tuple.ramification_data();
    let types_match = actual == *expected;
    checks.insert(
        "CYCLE_TYPES_MATCH",
        check(
            types_match,
            if types_match {
                "cycle types equal the expected row".to_string()
            } else {
                format!("got {actual:?}, expected {expected:?}")
            },
        ),
    );
    let gens = tuple.generators();
    let transitive = gens.is_transitive();
    checks.insert(
        "TRANSITIVE",
        check(transitive, format!("{} orbit(s)", gens.orbits().len())),
    );
    let mut verdict = None;
    if transitive {
        let primitive = is_primitive(&gens)?;
        checks.insert(
            "PRIMITIVE",
            check(primitive, if primitive { "no nontrivial block system" } else { "a nontrivial block system exists" }),
        );
        let v = classify_alternating(&gens, caps)?;
        checks.insert(
            "CONTAINS_ALT",
            check(
                v.contains_alternating(),
                format!("verdict {:?} via {:?}", v.kind, v.method),
            ),
        );
        let expected_genus = expected.rh_genus(0).genus;
        let genus_check = match (quotient_genera(tuple, 1, caps), expected_genus) {
            (Ok(rep), Genus::Value(g)) => check(
                rep.g_xt == g,
                format!("point-action genus {} vs expected {g}", rep.g_xt),
            ),
            (Ok(rep), other) => check(
                false,
                format!("point-action genus {} vs non-integral expectation {other:?}", rep.g_xt),
            ),
            (Err(e), _) => check(false, format!("genus computation failed: {e}")),
        };
        checks.insert("GENUS_MATCH", genus_check);
        verdict = Some(v);
    } else {
        checks.insert("PRIMITIVE", check(false, "not transitive"));
        checks.insert("CONTAINS_ALT", check(false, "not transitive"));
        checks.insert("GENUS_MATCH", check(false, "not transitive"));
    }
    Ok(CertReport {
        checks,
        ell,
        verdict,
    })
}

/// True iff every generator maps each block `{i, i + l/2}` to a block of the
/// same pairing. Errors for odd degree.
pub fn imprimitivity_witness(tuple: &BranchTuple) -> Result<bool> {
    let degree = tuple.degree();
    if degree % 2 != 0 {
        return Err(Error::Domain(
            "the half-period pairing needs an even degree".into(),
        ));
    }
    let half = degree / 2;
    for g in tuple.cycles() {
        for i in 0..half {
            let u = g.apply(i);
            let v = g.apply(i + half);
            if u % half != v % half || u == v {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of the exhaustive tuple search for one ramification data set.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct RefuteReport {
    /// Product-one tuples found with the prescribed cycle types, up to
    /// simultaneous conjugacy fixing the first branch cycle.
    pub tuples_found: u64,
    pub transitive_tuples: u64,
    /// Tuples whose monodromy contains the alternating group.
    pub alt_containing: u64,
    /// The first alternating-containing tuple, in cycle notation.
    pub witness: Option<Vec<String>>,
}

/// Enumerates all permutations with the given cycle type, each cycle led by
/// its least point and cycles discovered in increasing leader order.
fn conjugacy_class(degree: usize, ct: &Partition) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..degree).collect();
    let mut used = vec![false; degree];
    let mut remaining: BTreeMap<u64, u64> = ct.runs().iter().copied().collect();
    fn rec(
        degree: usize,
        images: &mut Vec<usize>,
        used: &mut Vec<bool>,
        remaining: &mut BTreeMap<u64, u64>,
        out: &mut Vec<Permutation>,
    ) {
        let Some(leader) = (0..degree).find(|&p| !used[p]) else {
            out.push(Permutation::from_images(images.clone()).expect("valid by construction"));
            return;
        };
        let lengths: Vec<u64> = remaining.keys().copied().collect();
        for len in lengths {
            let cnt = remaining[&len];
            if cnt == 0 {
                continue;
            }
            *remaining.get_mut(&len).unwrap() -= 1;
            used[leader] = true;
            let free: Vec<usize> = (leader + 1..degree).filter(|&p| !used[p]).collect();
            // choose an ordered (len-1)-arrangement of free points
            let mut chosen = Vec::with_capacity(len as usize - 1);
            arrange(
                &free, len as usize - 1, leader, degree, images, used, remaining, &mut chosen, out,
            );
            used[leader] = false;
            *remaining.get_mut(&len).unwrap() += 1;
        }
        #[allow(clippy::too_many_arguments)]
        fn arrange(
            free: &[usize],
            need: usize,
            leader: usize,
            degree: usize,
            images: &mut Vec<usize>,
            used: &mut Vec<bool>,
            remaining: &mut BTreeMap<u64, u64>,
            chosen: &mut Vec<usize>,
            out: &mut Vec<Permutation>,
        ) {
            if chosen.len() == need {
                // close the cycle leader -> chosen[0] -> ... -> leader
                let mut prev = leader;
                for &p in chosen.iter() {
                    images[prev] = p;
                    prev = p;
                }
                images[prev] = leader;
                rec(degree, images, used, remaining, out);
                let mut prev = leader;
                for &p in chosen.iter() {
                    images[prev] = prev;
                    let next = p;
                    let _ = std::mem::replace(&mut prev, next);
                }
                images[prev] = prev;
                images[leader] = leader;
                return;
            }
            for &p in free {
                if used[p] {
                    continue;
                }
                used[p] = true;
                chosen.push(p);
                arrange(free, need, leader, degree, images, used, remaining, chosen, out);
                chosen.pop();
                used[p] = false;
            }
        }
    }
    rec(degree, &mut images, &mut used, &mut remaining, &mut out);
    out
}

/// Searches all product-one tuples with the cycle types of `d`, up to
/// simultaneous conjugacy: the first branch cycle is fixed to the canonical
/// representative, middle branches range over their conjugacy classes, and
/// the last is forced as the inverse of the prefix product and type-checked.
/// Reports whether any transitive tuple generates a group containing the
/// alternating group.
pub fn exhaustive_refute(d: &RamificationData, caps: &Caps) -> Result<RefuteReport> {
    let degree = d.degree() as usize;
    if degree > caps.refute_degree {
        return Err(Error::CapExceeded {
            what: "exhaustive-search degree",
            value: degree as u64,
            cap: caps.refute_degree as u64,
        });
    }
    let branches = d.branches();
    if branches.is_empty() || branches.len() > 4 {
        return Err(Error::Domain(format!(
            "search supports 1..=4 branches, got {}",
            branches.len()
        )));
    }
    let first = canonical_perm_of_type(&branches[0])?;
    let last_type = branches.last().expect("nonempty");
    let middles: Vec<Vec<Permutation>> = branches[1..branches.len().saturating_sub(1)]
        .iter()
        .map(|b| conjugacy_class(degree, b))
        .collect();
    let mut report = RefuteReport {
        tuples_found: 0,
        transitive_tuples: 0,
        alt_containing: 0,
        witness: None,
    };
    let mut stack: Vec<Permutation> = vec![first.clone()];
    search(
        &mut stack,
        &middles,
        0,
        last_type,
        branches.len(),
        caps,
        &mut report,
    )?;
    return Ok(report);

    fn search(
        prefix: &mut Vec<Permutation>,
        middles: &[Vec<Permutation>],
        level: usize,
        last_type: &Partition,
        num_branches: usize,
        caps: &Caps,
        report: &mut RefuteReport,
    ) -> Result<()> {
        if level == middles.len() {
            let mut prod = prefix[0].clone();
            for p in &prefix[1..] {
                prod = prod.compose(p)?;
            }
            let candidate = prod.inverse();
            if num_branches > 1 {
                if candidate.cycle_type() != *last_type {
                    return Ok(());
                }
            } else if !candidate.is_identity() {
                return Ok(());
            }
            report.tuples_found += 1;
            let mut cycles = prefix.clone();
            if num_branches > 1 {
                cycles.push(candidate);
            }
            let gens = GeneratorSet::new(cycles.clone())?;
            if !gens.is_transitive() {
                return Ok(());
            }
            report.transitive_tuples += 1;
            let verdict = classify_alternating(&gens, caps)?;
            if verdict.contains_alternating() {
                report.alt_containing += 1;
                if report.witness.is_none() {
                    report.witness = Some(cycles.iter().map(|p| p.to_string()).collect());
                }
            }
            return Ok(());
        }
        for p in &middles[level] {
            prefix.push(p.clone());
            search(prefix, middles, level + 1, last_type, num_branches, caps, report)?;
            prefix.pop();
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables;

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn f19_three_smallest_degrees() {
        // the generators are all odd exactly when l/2 - 1 is odd, so the
        // group alternates between the two full candidates with l mod 4
        for (ell, kind) in [
            (10u64, crate::perm::VerdictKind::Alternating),
            (12, crate::perm::VerdictKind::Symmetric),
            (14, crate::perm::VerdictKind::Alternating),
        ] {
            let tuple = build_tuple("F1.9", ell, TupleParams::default()).unwrap();
            let expected = expected_data("F1.9", ell, TupleParams::default()).unwrap();
            let rep = certify(&tuple, &expected, &caps()).unwrap();
            assert!(rep.all_pass(), "F1.9 at {ell}: {:?}", rep.checks);
            assert_eq!(rep.verdict.unwrap().kind, kind);
        }
    }

    #[test]
    fn f19_x2_and_block_pairing() {
        let tuple = build_tuple("F1.9", 12, TupleParams::default()).unwrap();
        assert_eq!(
            tuple.cycles()[1].to_string(),
            "(1,2,3,4)(5,6)(7,8)(9,10)(11,12)"
        );
        assert!(!imprimitivity_witness(&tuple).unwrap());
    }

    #[test]
    fn appendix_triples_certify_at_smallest_degrees() {
        for (label, ells) in [
            ("F3.1", [8u64, 12, 16]),
            ("F3.2", [9, 13, 17]),
            ("F3.3", [7, 11, 15]),
            ("F4.1", [6, 12, 18]),
            ("F4.2", [8, 14, 20]),
            ("F4.3", [13, 19, 25]),
            ("F4.4", [9, 15, 21]),
            ("F4.5", [10, 16, 22]),
            ("F4.6", [11, 17, 23]),
        ] {
            for ell in ells {
                assert_eq!(admissible_ells(label, ell)[..].last(), Some(&ell));
                let tuple = build_tuple(label, ell, TupleParams::default()).unwrap();
                let expected = expected_data(label, ell, TupleParams::default()).unwrap();
                let rep = certify(&tuple, &expected, &caps()).unwrap();
                assert!(rep.all_pass(), "{label} at {ell}: {:#?}", rep.checks);
            }
        }
    }

    #[test]
    fn f33_records_symmetric_at_7() {
        let tuple = build_tuple("F3.3", 7, TupleParams::default()).unwrap();
        let gens = tuple.generators();
        let order = crate::perm::group_order(&gens, &caps()).unwrap();
        assert_eq!(order, num_bigint::BigUint::from(5040u32));
    }

    #[test]
    fn corrupted_tuple_fails_product_one() {
        let good = build_tuple("F4.1", 12, TupleParams::default()).unwrap();
        let mut cycles = good.cycles().to_vec();
        // swap two images of the first cycle
        let mut images = cycles[0].images().to_vec();
        images.swap(0, 1);
        cycles[0] = Permutation::from_images(images).unwrap();
        let bad = BranchTuple::from_parts_unchecked(cycles).unwrap();
        let expected = expected_data("F4.1", 12, TupleParams::default()).unwrap();
        let rep = certify(&bad, &expected, &caps()).unwrap();
        assert!(!rep.passed("PRODUCT_ONE"));
    }

    #[test]
    fn witness_constructions_preserve_the_pairing() {
        // smallest instances by hand, all (m, n) instances in the acceptance suite
        let t = build_tuple(
            "I2.N1-witness",
            8,
            TupleParams {
                m: Some(1),
                n: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(t.cycles()[0].cycle_type().max_part(), 8);
        assert!(imprimitivity_witness(&t).unwrap());
        let expected = expected_data("I2.N1-witness", 8, TupleParams::default()).unwrap();
        assert_eq!(t.ramification_data(), expected);
        // the 4-cycle of b is (m+1, 2m+2n+4, 2m+n+3, m+n+2) = (2,8,6,4)
        assert!(t.cycles()[1].to_string().contains("(2,8,6,4)"));

        let t = build_tuple(
            "I2.N2-witness",
            6,
            TupleParams {
                m: Some(1),
                n: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(imprimitivity_witness(&t).unwrap());
        let expected = expected_data("I2.N2-witness", 6, TupleParams::default()).unwrap();
        assert_eq!(t.ramification_data(), expected);
    }

    #[test]
    fn witnesses_are_imprimitive_hence_proper() {
        let t = build_tuple("I2.N1-witness", 12, TupleParams::default()).unwrap();
        let rep = certify(
            &t,
            &expected_data("I2.N1-witness", 12, TupleParams::default()).unwrap(),
            &caps(),
        )
        .unwrap();
        assert!(rep.passed("PRODUCT_ONE"));
        assert!(rep.passed("CYCLE_TYPES_MATCH"));
        assert!(rep.passed("TRANSITIVE"));
        assert!(!rep.passed("PRIMITIVE"));
        assert!(!rep.passed("CONTAINS_ALT"));
    }

    #[test]
    fn generic_family_certifies() {
        for (ell, a) in [(13u64, 3u64), (13, 5), (14, 3), (20, 7)] {
            let p = TupleParams {
                a: Some(a),
                ..Default::default()
            };
            let tuple = build_tuple("I1.1-generic", ell, p).unwrap();
            let expected = expected_data("I1.1-generic", ell, p).unwrap();
            let rep = certify(&tuple, &expected, &caps()).unwrap();
            assert!(rep.all_pass(), "I1.1 at {ell}, a={a}: {:?}", rep.checks);
        }
        assert!(build_tuple(
            "I1.1-generic",
            16,
            TupleParams {
                a: Some(3),
                ..Default::default()
            }
        )
        .is_ok());
        // a must be coprime to the degree
        assert!(build_tuple(
            "I1.1-generic",
            12,
            TupleParams {
                a: Some(3),
                ..Default::default()
            }
        )
        .is_err());
        // even a rejected
        assert!(build_tuple(
            "I1.1-generic",
            13,
            TupleParams {
                a: Some(4),
                ..Default::default()
            }
        )
        .is_err());
    }

    #[test]
    fn conjugacy_class_sizes() {
        let ct = Partition::new(5, [2, 2, 1]).unwrap();
        assert_eq!(conjugacy_class(5, &ct).len(), 15);
        let ct = Partition::new(4, [4]).unwrap();
        assert_eq!(conjugacy_class(4, &ct).len(), 6);
        let ct = Partition::new(8, [3, 3, 2]).unwrap();
        assert_eq!(conjugacy_class(8, &ct).len(), 1120);
    }

    #[test]
    fn search_finds_generic_tuples_and_rules_out_cyclic() {
        let caps = caps();
        // [7],[3,4],[2,1^5]: at least one symmetric tuple
        let d = RamificationData::new(
            7,
            tables::source_row("I1.1", 7, 3).unwrap(),
        )
        .unwrap();
        let rep = exhaustive_refute(&d, &caps).unwrap();
        assert!(rep.alt_containing > 0);
        assert!(rep.witness.is_some());
        // [5],[5]: tuples exist, all cyclic
        let d = RamificationData::new(
            5,
            [
                Partition::new(5, [5]).unwrap(),
                Partition::new(5, [5]).unwrap(),
            ],
        )
        .unwrap();
        let rep = exhaustive_refute(&d, &caps).unwrap();
        assert!(rep.tuples_found > 0);
        assert!(rep.transitive_tuples > 0);
        assert_eq!(rep.alt_containing, 0);
    }

    #[test]
    fn inadmissible_labels_and_degrees() {
        assert!(build_tuple("F4.3", 12, TupleParams::default()).is_err());
        assert!(build_tuple("nope", 12, TupleParams::default()).is_err());
        assert_eq!(admissible_ells("F3.2", 60), vec![9, 13, 17, 21, 25, 29, 33, 37, 41, 45, 49, 53, 57]);
    }
}
