//! Generation, canonicalization, counting and cross-validation of the
//! catalogs of ramification types.
//!
//! Four catalogs are generated from per-row templates, symbolic in the
//! degree `l` and the odd parameter `a` coprime to `l`:
//!
//! * the source catalog (`two-set`): degree-`l` types whose induced pair
//!   action has a genus-0 quotient;
//! * its pair lift (`f`): the corresponding degree-`l(l-1)/2` types,
//!   validated bit-exactly against hard-coded templates;
//! * the solvable catalog: types of indecomposable coverings whose Galois
//!   closure has genus at most 1;
//! * the non-existence catalog: types that no covering with alternating or
//!   symmetric monodromy realizes.
//!
//! Rows are admissible at `l` exactly when every symbolic exponent is a
//! nonnegative integer; entries are canonicalized and deduplicated as
//! multisets, which collapses `a` with `l - a` automatically.

use crate::induced::lift_table_entry;
use crate::ramdata::{Genus, Partition, RamificationData};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};

/// A claim attached to a catalog entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Claim {
    /// The induced pair action has a genus-0 quotient (for source rows this
    /// is about the lift; for lifted rows about the data itself).
    Genus0X2,
    /// No covering with alternating or symmetric monodromy has this type.
    Nonexistent,
    /// Any indecomposable covering with this type has solvable monodromy.
    SolvableMonodromy,
    GaloisClosureGenus0,
    GaloisClosureGenus1,
}

/// A labeled catalog entry.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct TableEntry {
    pub claims: BTreeSet<Claim>,
    pub data: RamificationData,
    /// Monodromy-group label for solvable rows.
    pub group: Option<String>,
    pub label: String,
    pub params: BTreeMap<String, u64>,
}

impl TableEntry {
    /// Natural sort key: label split into alternating text/number tokens,
    /// then the `a` parameter.
    pub fn sort_key(&self) -> (Vec<(String, u64)>, u64) {
        (natural_key(&self.label), *self.params.get("a").unwrap_or(&0))
    }

    pub fn csv_rows(&self) -> String {
        let mut label = self.label.clone();
        let mut qualifiers: Vec<String> = Vec::new();
        for (k, v) in &self.params {
            qualifiers.push(format!("{k}={v}"));
        }
        if !qualifiers.is_empty() {
            label.push_str(&format!("({})", qualifiers.join(",")));
        }
        self.data.csv_rows(&label)
    }
}

fn natural_key(label: &str) -> Vec<(String, u64)> {
    let mut out = Vec::new();
    let mut text = String::new();
    let mut num: Option<u64> = None;
    for c in label.chars() {
        if let Some(d) = c.to_digit(10) {
            num = Some(num.unwrap_or(0) * 10 + d as u64);
        } else {
            if let Some(n) = num.take() {
                out.push((std::mem::take(&mut text), n));
            }
            text.push(c);
        }
    }
    out.push((text, num.unwrap_or(0)));
    out
}

fn pt(ell: u64, runs: &[(u64, u64)]) -> Partition {
    Partition::from_runs(ell, runs.iter().copied()).expect("row template sums to the degree")
}

/// Partition of `degree` from explicit runs plus a filler value for the
/// remainder.
fn star(degree: u64, explicit: &[(u64, u64)], filler: u64) -> Partition {
    let used: u64 = explicit.iter().map(|&(v, c)| v * c).sum();
    assert!(used <= degree && (degree - used) % filler == 0);
    let mut runs = explicit.to_vec();
    runs.push((filler, (degree - used) / filler));
    pt(degree, &runs)
}

struct SourceRow {
    label: &'static str,
    uses_a: bool,
    admissible: fn(u64) -> bool,
    build: fn(u64, u64) -> Vec<Partition>,
}

const fn odd(ell: u64) -> bool {
    ell % 2 == 1
}
const fn even(ell: u64) -> bool {
    ell % 2 == 0
}

static SOURCE_ROWS: &[SourceRow] = &[
    SourceRow {
        label: "I1.1",
        uses_a: true,
        admissible: |_| true,
        build: |l, a| {
            vec![
                pt(l, &[(l, 1)]),
                pt(l, &[(a, 1), (l - a, 1)]),
                pt(l, &[(2, 1), (1, l - 2)]),
            ]
        },
    },
    SourceRow {
        label: "I2.1",
        uses_a: false,
        admissible: odd,
        build: |l, _| {
            vec![
                pt(l, &[(l, 1)]),
                pt(l, &[(1, 3), (2, (l - 3) / 2)]),
                pt(l, &[(1, 1), (2, (l - 1) / 2)]),
                pt(l, &[(2, 1), (1, l - 2)]),
            ]
        },
    },
    SourceRow {
        label: "I2.2",
        uses_a: false,
        admissible: even,
        build: |l, _| {
            let half = pt(l, &[(1, 2), (2, (l - 2) / 2)]);
            vec![
                pt(l, &[(l, 1)]),
                half.clone(),
                half,
                pt(l, &[(2, 1), (1, l - 2)]),
            ]
        },
    },
    SourceRow {
        label: "I2.3",
        uses_a: false,
        admissible: odd,
        build: |l, _| {
            vec![
                pt(l, &[(l, 1)]),
                pt(l, &[(1, 3), (2, (l - 3) / 2)]),
                pt(l, &[(2, (l - 3) / 2), (3, 1)]),
            ]
        },
    },
    SourceRow {
        label: "I2.4",
        uses_a: false,
        admissible: even,
        build: |l, _| {
            vec![
                pt(l, &[(l, 1)]),
                pt(l, &[(1, 2), (2, (l - 2) / 2)]),
                pt(l, &[(1, 1), (2, (l - 4) / 2), (3, 1)]),
            ]
        },
    },
    SourceRow {
        label: "I2.5",
        uses_a: false,
        admissible: odd,
        build: |l, _| {
            vec![
                pt(l, &[(l, 1)]),
                pt(l, &[(1, 1), (2, (l - 1) / 2)]),
                pt(l, &[(1, 2), (2, (l - 5) / 2), (3, 1)]),
            ]
        },
    },
    SourceRow {
        label: "I2.6",
        uses_a: false,
        admissible: odd,
        build: |l, _| {
            vec![
                pt(l, &[(l, 1)]),
                pt(l, &[(1, 3), (2, (l - 3) / 2)]),
                pt(l, &[(1, 1), (2, (l - 5) / 2), (4, 1)]),
            ]
        },
    },
    SourceRow {
        label: "I2.7",
        uses_a: false,
        admissible: even,
        build: |l, _| {
            vec![
                pt(l, &[(l, 1)]),
                pt(l, &[(1, 2), (2, (l - 2) / 2)]),
                pt(l, &[(1, 2), (2, (l - 6) / 2), (4, 1)]),
            ]
        },
    },
    SourceRow {
        label: "I2.8",
        uses_a: false,
        admissible: odd,
        build: |l, _| {
            vec![
                pt(l, &[(l, 1)]),
                pt(l, &[(1, 1), (2, (l - 1) / 2)]),
                pt(l, &[(1, 3), (2, (l - 7) / 2), (4, 1)]),
            ]
        },
    },
    SourceRow {
        label: "I2.9",
        uses_a: true,
        admissible: even,
        build: |l, a| {
            vec![
                pt(l, &[(a, 1), (l - a, 1)]),
                pt(l, &[(1, 2), (2, (l - 2) / 2)]),
                pt(l, &[(2, l / 2)]),
                pt(l, &[(2, 1), (1, l - 2)]),
            ]
        },
    },
    SourceRow {
        label: "I2.10",
        uses_a: true,
        admissible: odd,
        build: |l, a| {
            let half = pt(l, &[(1, 1), (2, (l - 1) / 2)]);
            vec![
                pt(l, &[(a, 1), (l - a, 1)]),
                half.clone(),
                half,
                pt(l, &[(2, 1), (1, l - 2)]),
            ]
        },
    },
    SourceRow {
        label: "I2.11",
        uses_a: true,
        admissible: even,
        build: |l, a| {
            vec![
                pt(l, &[(a, 1), (l - a, 1)]),
                pt(l, &[(2, l / 2)]),
                pt(l, &[(1, 2), (2, (l - 6) / 2), (4, 1)]),
            ]
        },
    },
    SourceRow {
        label: "I2.12",
        uses_a: true,
        admissible: odd,
        build: |l, a| {
            vec![
                pt(l, &[(a, 1), (l - a, 1)]),
                pt(l, &[(1, 1), (2, (l - 1) / 2)]),
                pt(l, &[(1, 1), (2, (l - 5) / 2), (4, 1)]),
            ]
        },
    },
    SourceRow {
        label: "I2.13",
        uses_a: true,
        admissible: even,
        build: |l, a| {
            vec![
                pt(l, &[(a, 1), (l - a, 1)]),
                pt(l, &[(1, 2), (2, (l - 2) / 2)]),
                pt(l, &[(2, (l - 4) / 2), (4, 1)]),
            ]
        },
    },
    SourceRow {
        label: "I2.14",
        uses_a: true,
        admissible: odd,
        build: |l, a| {
            vec![
                pt(l, &[(a, 1), (l - a, 1)]),
                pt(l, &[(1, 1), (2, (l - 1) / 2)]),
                pt(l, &[(2, (l - 3) / 2), (3, 1)]),
            ]
        },
    },
    SourceRow {
        label: "I2.15",
        uses_a: true,
        admissible: even,
        build: |l, a| {
            vec![
                pt(l, &[(a, 1), (l - a, 1)]),
                pt(l, &[(2, l / 2)]),
                pt(l, &[(1, 1), (2, (l - 4) / 2), (3, 1)]),
            ]
        },
    },
    SourceRow {
        label: "F1.1",
        uses_a: false,
        admissible: even,
        build: |l, _| {
            let b = pt(l, &[(1, 2), (2, (l - 2) / 2)]);
            vec![
                pt(l, &[(2, 1), (1, l - 2)]),
                pt(l, &[(2, l / 2)]),
                b.clone(),
                b.clone(),
                b,
            ]
        },
    },
    SourceRow {
        label: "F1.2",
        uses_a: false,
        admissible: odd,
        build: |l, _| {
            let b = pt(l, &[(1, 1), (2, (l - 1) / 2)]);
            vec![
                pt(l, &[(2, 1), (1, l - 2)]),
                pt(l, &[(1, 3), (2, (l - 3) / 2)]),
                b.clone(),
                b.clone(),
                b,
            ]
        },
    },
    SourceRow {
        label: "F1.3",
        uses_a: false,
        admissible: odd,
        build: |l, _| {
            let b = pt(l, &[(1, 1), (2, (l - 1) / 2)]);
            vec![
                pt(l, &[(1, 3), (2, (l - 3) / 2)]),
                pt(l, &[(2, (l - 3) / 2), (3, 1)]),
                b.clone(),
                b,
            ]
        },
    },
    SourceRow {
        label: "F1.4",
        uses_a: false,
        admissible: even,
        build: |l, _| {
            let b = pt(l, &[(1, 2), (2, (l - 2) / 2)]);
            vec![
                pt(l, &[(2, l / 2)]),
                pt(l, &[(1, 1), (2, (l - 4) / 2), (3, 1)]),
                b.clone(),
                b,
            ]
        },
    },
    SourceRow {
        label: "F1.5",
        uses_a: false,
        admissible: odd,
        build: |l, _| {
            let b = pt(l, &[(1, 1), (2, (l - 1) / 2)]);
            vec![
                pt(l, &[(1, 2), (2, (l - 5) / 2), (3, 1)]),
                b.clone(),
                b.clone(),
                b,
            ]
        },
    },
    SourceRow {
        label: "F1.6",
        uses_a: false,
        admissible: odd,
        build: |l, _| {
            let b = pt(l, &[(1, 1), (2, (l - 1) / 2)]);
            vec![
                pt(l, &[(1, 3), (2, (l - 3) / 2)]),
                pt(l, &[(1, 1), (2, (l - 5) / 2), (4, 1)]),
                b.clone(),
                b,
            ]
        },
    },
    SourceRow {
        label: "F1.7",
        uses_a: false,
        admissible: even,
        build: |l, _| {
            let b = pt(l, &[(1, 2), (2, (l - 2) / 2)]);
            vec![
                pt(l, &[(2, l / 2)]),
                pt(l, &[(1, 2), (2, (l - 6) / 2), (4, 1)]),
                b.clone(),
                b,
            ]
        },
    },
    SourceRow {
        label: "F1.8",
        uses_a: false,
        admissible: odd,
        build: |l, _| {
            let b = pt(l, &[(1, 1), (2, (l - 1) / 2)]);
            vec![
                pt(l, &[(1, 3), (2, (l - 7) / 2), (4, 1)]),
                b.clone(),
                b.clone(),
                b,
            ]
        },
    },
    SourceRow {
        label: "F1.9",
        uses_a: false,
        admissible: even,
        build: |l, _| {
            let b = pt(l, &[(1, 2), (2, (l - 2) / 2)]);
            vec![pt(l, &[(2, (l - 4) / 2), (4, 1)]), b.clone(), b.clone(), b]
        },
    },
    SourceRow {
        label: "F3.1",
        uses_a: false,
        admissible: |l| l % 4 == 0,
        build: |l, _| {
            vec![
                pt(l, &[(1, 2), (2, (l - 2) / 2)]),
                pt(l, &[(1, 1), (3, 1), (4, (l - 4) / 4)]),
                pt(l, &[(4, l / 4)]),
            ]
        },
    },
    SourceRow {
        label: "F3.2",
        uses_a: false,
        admissible: |l| l % 4 == 1,
        build: |l, _| {
            vec![
                pt(l, &[(1, 1), (2, (l - 1) / 2)]),
                pt(l, &[(1, 1), (4, (l - 1) / 4)]),
                pt(l, &[(2, 1), (3, 1), (4, (l - 5) / 4)]),
            ]
        },
    },
    SourceRow {
        label: "F3.3",
        uses_a: false,
        admissible: |l| l % 4 == 3,
        build: |l, _| {
            vec![
                pt(l, &[(1, 1), (2, (l - 1) / 2)]),
                pt(l, &[(1, 1), (2, 1), (4, (l - 3) / 4)]),
                pt(l, &[(3, 1), (4, (l - 3) / 4)]),
            ]
        },
    },
    SourceRow {
        label: "F4.1",
        uses_a: false,
        admissible: |l| l % 6 == 0,
        build: |l, _| {
            vec![
                pt(l, &[(1, 2), (2, (l - 2) / 2)]),
                pt(l, &[(1, 1), (2, 1), (3, (l - 3) / 3)]),
                pt(l, &[(6, l / 6)]),
            ]
        },
    },
    SourceRow {
        label: "F4.2",
        uses_a: false,
        admissible: |l| l % 6 == 2,
        build: |l, _| {
            vec![
                pt(l, &[(1, 2), (2, (l - 2) / 2)]),
                pt(l, &[(2, 1), (3, (l - 2) / 3)]),
                pt(l, &[(2, 1), (6, (l - 2) / 6)]),
            ]
        },
    },
    SourceRow {
        label: "F4.3",
        uses_a: false,
        admissible: |l| l % 6 == 1,
        build: |l, _| {
            vec![
                pt(l, &[(1, 1), (2, (l - 1) / 2)]),
                pt(l, &[(1, 1), (3, (l - 1) / 3)]),
                pt(l, &[(3, 1), (4, 1), (6, (l - 7) / 6)]),
            ]
        },
    },
    SourceRow {
        label: "F4.4",
        uses_a: false,
        admissible: |l| l % 6 == 3,
        build: |l, _| {
            vec![
                pt(l, &[(1, 1), (2, (l - 1) / 2)]),
                pt(l, &[(1, 1), (2, 1), (3, (l - 3) / 3)]),
                pt(l, &[(3, 1), (6, (l - 3) / 6)]),
            ]
        },
    },
    SourceRow {
        label: "F4.5",
        uses_a: false,
        admissible: |l| l % 6 == 4,
        build: |l, _| {
            vec![
                pt(l, &[(1, 2), (2, (l - 2) / 2)]),
                pt(l, &[(1, 1), (3, (l - 1) / 3)]),
                pt(l, &[(4, 1), (6, (l - 4) / 6)]),
            ]
        },
    },
    SourceRow {
        label: "F4.6",
        uses_a: false,
        admissible: |l| l % 6 == 5,
        build: |l, _| {
            vec![
                pt(l, &[(1, 1), (2, (l - 1) / 2)]),
                pt(l, &[(2, 1), (3, (l - 2) / 3)]),
                pt(l, &[(2, 1), (3, 1), (6, (l - 5) / 6)]),
            ]
        },
    },
];

/// Builds the branch partitions of a source row at `(l, a)`, by label.
pub fn source_row(label: &str, ell: u64, a: u64) -> Result<Vec<Partition>> {
    let row = SOURCE_ROWS
        .iter()
        .find(|r| r.label == label)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
    if !(row.admissible)(ell) {
        return Err(Error::Inadmissible {
            label: label.to_string(),
            ell,
            reason: "parity or residue condition fails".into(),
        });
    }
    if row.uses_a && !admissible_a(ell, a) {
        return Err(Error::Inadmissible {
            label: label.to_string(),
            ell,
            reason: format!("a = {a} must be odd, coprime to {ell}, in 1..{ell}"),
        });
    }
    Ok((row.build)(ell, a))
}

fn admissible_a(ell: u64, a: u64) -> bool {
    a >= 1 && a < ell && a % 2 == 1 && num_integer::gcd(a, ell) == 1
}

fn odd_coprime_residues(ell: u64) -> Vec<u64> {
    (1..ell).filter(|&a| admissible_a(ell, a)).collect()
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Generates the source catalog at degree `l >= 13`: every admissible row,
/// with `a` over odd residues coprime to `l`, canonicalized and deduplicated.
/// Every entry is validated to have Riemann–Hurwitz genus 0 at base genus 0.
pub fn gen_two_set_table(ell: u64) -> Result<Vec<TableEntry>> {
    if ell < 13 {
        return Err(Error::Domain(format!(
            "source catalog is defined for degree >= 13, got {ell}"
        )));
    }
    let mut seen: BTreeMap<RamificationData, TableEntry> = BTreeMap::new();
    for row in SOURCE_ROWS {
        if !(row.admissible)(ell) {
            continue;
        }
        let a_values = if row.uses_a {
            odd_coprime_residues(ell)
        } else {
            vec![0]
        };
        for a in a_values {
            let data = RamificationData::new(ell, (row.build)(ell, a))?;
            if data.rh_genus(0).genus != Genus::Value(0) {
                return Err(Error::Domain(format!(
                    "row {} at degree {ell} fails the genus-0 validation",
                    row.label
                )));
            }
            let mut params = BTreeMap::from([("ell".to_string(), ell)]);
            if row.uses_a {
                params.insert("a".to_string(), a);
            }
            seen.entry(data.clone()).or_insert_with(|| TableEntry {
                claims: BTreeSet::from([Claim::Genus0X2]),
                data,
                group: None,
                label: row.label.to_string(),
                params,
            });
        }
    }
    let mut entries: Vec<TableEntry> = seen.into_values().collect();
    entries.sort_by_key(TableEntry::sort_key);
    Ok(entries)
}

/// The hard-coded pair-lift template for a source label, at `(l, a)`. The
/// labels `I2.13` and `F1.9` have no template of their own: their lifts
/// coincide with those of `I2.11` and `F1.7`.
pub fn f_template(label: &str, ell: u64, a: u64) -> Result<Vec<Partition>> {
    let l = ell;
    let n = l * (l - 1) / 2;
    let b = |explicit: &[(u64, u64)], filler: u64| star(n, explicit, filler);
    let parts = match label {
        "I1.1a" => vec![
            b(&[], l),
            b(&[(a * (l - a), 1), (a, (a - 1) / 2), ((l - a) / 2, 1)], l - a),
            b(&[(2, l - 2)], 1),
        ],
        "I1.1b" => vec![
            b(&[(l / 2, 1)], l),
            b(&[(a * (l - a), 1), (a, (a - 1) / 2)], l - a),
            b(&[(2, l - 2)], 1),
        ],
        "I2.1" => vec![
            b(&[], l),
            b(&[(1, (l + 3) / 2)], 2),
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(2, l - 2)], 1),
        ],
        "I2.2" => vec![
            b(&[(l / 2, 1)], l),
            b(&[(1, l / 2)], 2),
            b(&[(1, l / 2)], 2),
            b(&[(2, l - 2)], 1),
        ],
        "I2.3" => vec![
            b(&[], l),
            b(&[(1, (l + 3) / 2)], 2),
            b(&[(3, 1), (1, (l - 3) / 2), (6, (l - 3) / 2)], 2),
        ],
        "I2.4" => vec![
            b(&[(l / 2, 1)], l),
            b(&[(1, l / 2)], 2),
            b(&[(3, 2), (1, (l - 4) / 2), (6, (l - 4) / 2)], 2),
        ],
        "I2.5" => vec![
            b(&[], l),
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(3, 3), (1, (l - 3) / 2), (6, (l - 5) / 2)], 2),
        ],
        "I2.6" => vec![
            b(&[], l),
            b(&[(1, (l + 3) / 2)], 2),
            b(&[(1, (l - 5) / 2), (4, l - 3)], 2),
        ],
        "I2.7" => vec![
            b(&[(l / 2, 1)], l),
            b(&[(1, l / 2)], 2),
            b(&[(1, (l - 4) / 2), (4, l - 3)], 2),
        ],
        "I2.8" => vec![
            b(&[], l),
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(1, (l - 1) / 2), (4, l - 3)], 2),
        ],
        "I2.9" => vec![
            b(&[(a * (l - a), 1), (a, (a - 1) / 2)], l - a),
            b(&[(1, l / 2)], 2),
            b(&[(1, l / 2)], 2),
            b(&[(2, l - 2)], 1),
        ],
        "I2.10" => vec![
            b(&[(a * (l - a), 1), (a, (a - 1) / 2), ((l - a) / 2, 1)], l - a),
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(2, l - 2)], 1),
        ],
        "I2.11" => vec![
            b(&[(a * (l - a), 1), (a, (a - 1) / 2)], l - a),
            b(&[(1, l / 2)], 2),
            b(&[(1, (l - 4) / 2), (4, l - 3)], 2),
        ],
        "I2.12" => vec![
            b(&[(a * (l - a), 1), (a, (a - 1) / 2), ((l - a) / 2, 1)], l - a),
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(1, (l - 5) / 2), (4, l - 3)], 2),
        ],
        "I2.14" => vec![
            b(&[(a * (l - a), 1), (a, (a - 1) / 2), ((l - a) / 2, 1)], l - a),
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(3, 1), (1, (l - 3) / 2), (6, (l - 3) / 2)], 2),
        ],
        "I2.15" => vec![
            b(&[(a * (l - a), 1), (a, (a - 1) / 2)], l - a),
            b(&[(1, l / 2)], 2),
            b(&[(3, 2), (1, (l - 4) / 2), (6, (l - 4) / 2)], 2),
        ],
        "F1.1" => vec![
            b(&[(2, l - 2)], 1),
            b(&[(1, l / 2)], 2),
            b(&[(1, l / 2)], 2),
            b(&[(1, l / 2)], 2),
            b(&[(1, l / 2)], 2),
        ],
        "F1.2" => vec![
            b(&[(2, l - 2)], 1),
            b(&[(1, (l + 3) / 2)], 2),
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(1, (l - 1) / 2)], 2),
        ],
        "F1.3" => vec![
            b(&[(1, (l + 3) / 2)], 2),
            b(&[(3, 1), (1, (l - 3) / 2), (6, (l - 3) / 2)], 2),
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(1, (l - 1) / 2)], 2),
        ],
        "F1.4" => vec![
            b(&[(1, l / 2)], 2),
            b(&[(1, l / 2)], 2),
            b(&[(1, l / 2)], 2),
            b(&[(3, 2), (1, (l - 4) / 2), (6, (l - 4) / 2)], 2),
        ],
        "F1.5" => vec![
            b(&[(3, 3), (1, (l - 3) / 2), (6, (l - 5) / 2)], 2),
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(1, (l - 1) / 2)], 2),
        ],
        "F1.6" => vec![
            b(&[(1, (l + 3) / 2)], 2),
            b(&[(1, (l - 5) / 2), (4, l - 3)], 2),
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(1, (l - 1) / 2)], 2),
        ],
        "F1.7" => vec![
            b(&[(1, (l - 4) / 2), (4, l - 3)], 2),
            b(&[(1, l / 2)], 2),
            b(&[(1, l / 2)], 2),
            b(&[(1, l / 2)], 2),
        ],
        "F1.8" => vec![
            b(&[(1, (l - 1) / 2), (4, l - 3)], 2),
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(1, (l - 1) / 2)], 2),
        ],
        "F3.1" => vec![
            b(&[(1, l / 2)], 2),
            b(&[(3, 2), (2, (l - 4) / 4), (12, (l - 4) / 4)], 4),
            b(&[(2, l / 4)], 4),
        ],
        "F3.2" => vec![
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(2, (l - 1) / 4)], 4),
            b(&[(1, 1), (3, 1), (6, 1), (2, (l - 5) / 4), (12, (l - 5) / 4)], 4),
        ],
        "F3.3" => vec![
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(1, 1), (2, (l + 1) / 4)], 4),
            b(&[(3, 1), (2, (l - 3) / 4), (12, (l - 3) / 4)], 4),
        ],
        "F4.1" => vec![
            b(&[(1, l / 2)], 2),
            b(&[(1, 1), (2, 1), (6, (l - 3) / 3)], 3),
            b(&[(3, l / 6)], 6),
        ],
        "F4.2" => vec![
            b(&[(1, l / 2)], 2),
            b(&[(1, 1), (6, (l - 2) / 3)], 3),
            b(&[(1, 1), (3, (l - 2) / 6)], 6),
        ],
        "F4.3" => vec![
            b(&[(1, (l - 1) / 2)], 2),
            b(&[], 3),
            b(&[(2, 1), (4, 1), (3, (l - 1) / 6), (12, (l - 4) / 3)], 6),
        ],
        "F4.4" => vec![
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(1, 1), (2, 1), (6, (l - 3) / 3)], 3),
            b(&[(3, (l + 3) / 6)], 6),
        ],
        "F4.5" => vec![
            b(&[(1, l / 2)], 2),
            b(&[], 3),
            b(&[(2, 1), (4, 1), (3, (l - 4) / 6), (12, (l - 4) / 3)], 6),
        ],
        "F4.6" => vec![
            b(&[(1, (l - 1) / 2)], 2),
            b(&[(1, 1), (6, (l - 2) / 3)], 3),
            b(&[(1, 1), (3, (l + 1) / 6)], 6),
        ],
        _ => return Err(Error::UnknownLabel(label.to_string())),
    };
    Ok(parts)
}

fn f_label(source_label: &str, ell: u64) -> String {
    match source_label {
        "I1.1" => {
            if ell % 2 == 1 {
                "I1.1a".to_string()
            } else {
                "I1.1b".to_string()
            }
        }
        "I2.13" => "I2.11".to_string(),
        "F1.9" => "F1.7".to_string(),
        other => other.to_string(),
    }
}

/// Generates the pair-lift catalog at degree `l(l-1)/2` by lifting every
/// source entry, validating each lift bit-exactly against its hard-coded
/// template, and deduplicating (which merges I2.13 into I2.11 and F1.9 into
/// F1.7).
pub fn gen_f_table(ell: u64) -> Result<Vec<TableEntry>> {
    let source = gen_two_set_table(ell)?;
    let n = ell * (ell - 1) / 2;
    let mut seen: BTreeMap<RamificationData, TableEntry> = BTreeMap::new();
    for entry in source {
        let lifted = lift_table_entry(&entry.data);
        if lifted.degree() != n || lifted.rh_genus(0).genus != Genus::Value(0) {
            return Err(Error::Domain(format!(
                "lift of {} at degree {ell} fails Riemann-Hurwitz validation",
                entry.label
            )));
        }
        let label = f_label(&entry.label, ell);
        let a = *entry.params.get("a").unwrap_or(&1);
        let expected = RamificationData::new(n, f_template(&label, ell, a)?)?;
        if expected != lifted {
            return Err(Error::Domain(format!(
                "lift of {} at degree {ell} does not match the {label} template",
                entry.label
            )));
        }
        let mut params = entry.params.clone();
        params.insert("ell".to_string(), ell);
        match seen.entry(lifted.clone()) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(TableEntry {
                    claims: BTreeSet::from([Claim::Genus0X2]),
                    data: lifted,
                    group: None,
                    label,
                    params,
                });
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                // collapsed pair: keep the lexicographically smaller label
                if natural_key(&label) < natural_key(&o.get().label) {
                    o.get_mut().label = label;
                    o.get_mut().params = params;
                }
            }
        }
    }
    let mut entries: Vec<TableEntry> = seen.into_values().collect();
    entries.sort_by_key(TableEntry::sort_key);
    Ok(entries)
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

fn prime_square_root(ell: u64) -> Option<u64> {
    let p = (ell as f64).sqrt().round() as u64;
    for cand in p.saturating_sub(1)..=p + 1 {
        if cand * cand == ell && is_prime(cand) {
            return Some(cand);
        }
    }
    None
}

/// Generates all solvable-closure rows admissible at the parameter: the
/// fixed small-degree rows, the prime-degree rows, and the prime-square rows.
pub fn gen_solvable_table(ell: u64) -> Result<Vec<TableEntry>> {
    if ell < 2 {
        return Err(Error::Domain("solvable catalog needs degree >= 2".into()));
    }
    let mut entries = Vec::new();
    let mut push = |label: &str,
                    branches: Vec<Partition>,
                    group: String,
                    closure_genus: u8,
                    param_p: Option<u64>| {
        let data = RamificationData::new(ell, branches).expect("row sums to the degree");
        let mut claims = BTreeSet::from([Claim::SolvableMonodromy]);
        claims.insert(if closure_genus == 0 {
            Claim::GaloisClosureGenus0
        } else {
            Claim::GaloisClosureGenus1
        });
        let mut params = BTreeMap::from([("ell".to_string(), ell)]);
        if let Some(p) = param_p {
            params.insert("p".to_string(), p);
        }
        entries.push(TableEntry {
            claims,
            data,
            group: Some(group),
            label: label.to_string(),
            params,
        });
    };
    let l = ell;
    let prime = is_prime(l);
    if prime {
        push("A1", vec![pt(l, &[(l, 1)]), pt(l, &[(l, 1)])], format!("C_{l}"), 0, None);
    }
    if prime && l % 2 == 1 {
        let h = pt(l, &[(1, 1), (2, (l - 1) / 2)]);
        push(
            "A2",
            vec![h.clone(), h, pt(l, &[(l, 1)])],
            format!("D_{}", 2 * l),
            0,
            None,
        );
        let h = pt(l, &[(1, 1), (2, (l - 1) / 2)]);
        push("E1", vec![h.clone(), h.clone(), h.clone(), h], format!("D_{}", 2 * l), 1, None);
    }
    if l == 10 {
        push(
            "A3",
            vec![
                pt(l, &[(1, 2), (2, 4)]),
                pt(l, &[(1, 1), (3, 3)]),
                pt(l, &[(5, 2)]),
            ],
            "A_5".into(),
            0,
            None,
        );
    }
    if l == 6 {
        push(
            "A4",
            vec![
                pt(l, &[(1, 2), (2, 2)]),
                pt(l, &[(3, 2)]),
                pt(l, &[(1, 1), (5, 1)]),
            ],
            "A_5".into(),
            0,
            None,
        );
    }
    if l == 5 {
        push(
            "A5",
            vec![
                pt(l, &[(1, 1), (2, 2)]),
                pt(l, &[(1, 2), (3, 1)]),
                pt(l, &[(5, 1)]),
            ],
            "A_5".into(),
            0,
            None,
        );
    }
    if l == 4 {
        push(
            "A6",
            vec![
                pt(l, &[(1, 2), (2, 1)]),
                pt(l, &[(1, 1), (3, 1)]),
                pt(l, &[(4, 1)]),
            ],
            "S_4".into(),
            0,
            None,
        );
        push(
            "A7",
            vec![
                pt(l, &[(2, 2)]),
                pt(l, &[(1, 1), (3, 1)]),
                pt(l, &[(1, 1), (3, 1)]),
            ],
            "A_4".into(),
            0,
            None,
        );
    }
    let psq = prime_square_root(l);
    if l % 3 == 1 {
        let h = pt(l, &[(1, 1), (3, (l - 1) / 3)]);
        if prime {
            push("E2", vec![h.clone(), h.clone(), h.clone()], format!("C_{l}:C_3"), 1, None);
        }
        if let Some(p) = psq.filter(|p| p % 3 == 2) {
            push(
                "E3",
                vec![h.clone(), h.clone(), h],
                format!("(C_{p})^2:C_3"),
                1,
                Some(p),
            );
        }
    }
    if l % 4 == 1 {
        let two = pt(l, &[(1, 1), (2, (l - 1) / 2)]);
        let four = pt(l, &[(1, 1), (4, (l - 1) / 4)]);
        if prime {
            push(
                "E4",
                vec![two.clone(), four.clone(), four.clone()],
                format!("C_{l}:C_4"),
                1,
                None,
            );
        }
        if let Some(p) = psq.filter(|p| p % 4 == 3) {
            push(
                "E5",
                vec![two, four.clone(), four],
                format!("(C_{p})^2:C_4"),
                1,
                Some(p),
            );
        }
    }
    if l % 6 == 1 {
        let two = pt(l, &[(1, 1), (2, (l - 1) / 2)]);
        let three = pt(l, &[(1, 1), (3, (l - 1) / 3)]);
        let six = pt(l, &[(1, 1), (6, (l - 1) / 6)]);
        if prime {
            push(
                "E6",
                vec![two.clone(), three.clone(), six.clone()],
                format!("C_{l}:C_6"),
                1,
                None,
            );
        }
        if let Some(p) = psq.filter(|p| p % 6 == 5) {
            push("E7", vec![two, three, six], format!("(C_{p})^2:C_6"), 1, Some(p));
        }
    }
    if l == 2 {
        let b = pt(l, &[(2, 1)]);
        push("Q1", vec![b.clone(), b.clone(), b.clone(), b], "C_2".into(), 1, None);
    }
    if l == 3 {
        let b = pt(l, &[(3, 1)]);
        push("Q2", vec![b.clone(), b.clone(), b], "C_3".into(), 1, None);
    }
    entries.sort_by_key(TableEntry::sort_key);
    Ok(entries)
}

struct AbsentRow {
    label: &'static str,
    admissible: fn(u64) -> bool,
    build: fn(u64) -> Vec<Partition>,
}

static ABSENT_ROWS: &[AbsentRow] = &[
    AbsentRow {
        label: "F1.N1",
        admissible: |l| even(l) && l >= 4,
        build: |l| {
            let f = pt(l, &[(2, l / 2)]);
            vec![
                pt(l, &[(1, 2), (2, (l - 2) / 2)]),
                f.clone(),
                f.clone(),
                f,
                pt(l, &[(2, 1), (1, l - 2)]),
            ]
        },
    },
    AbsentRow {
        label: "F1.N2",
        admissible: |l| even(l) && l >= 4,
        build: |l| {
            let f = pt(l, &[(2, l / 2)]);
            vec![pt(l, &[(1, 1), (3, 1), (2, (l - 4) / 2)]), f.clone(), f.clone(), f]
        },
    },
    AbsentRow {
        label: "F1.N3",
        admissible: |l| even(l) && l >= 6,
        build: |l| {
            let f = pt(l, &[(2, l / 2)]);
            vec![pt(l, &[(1, 2), (4, 1), (2, (l - 6) / 2)]), f.clone(), f.clone(), f]
        },
    },
    AbsentRow {
        label: "F1.N4",
        admissible: |l| even(l) && l >= 4,
        build: |l| {
            let f = pt(l, &[(2, l / 2)]);
            vec![
                pt(l, &[(4, 1), (2, (l - 4) / 2)]),
                pt(l, &[(1, 2), (2, (l - 2) / 2)]),
                f.clone(),
                f,
            ]
        },
    },
    AbsentRow {
        label: "F4.N1",
        admissible: |l| l % 6 == 2 && l >= 8,
        build: |l| {
            vec![
                pt(l, &[(2, l / 2)]),
                pt(l, &[(2, 1), (3, (l - 2) / 3)]),
                pt(l, &[(1, 2), (6, (l - 2) / 6)]),
            ]
        },
    },
    AbsentRow {
        label: "I2.N1",
        admissible: |l| even(l) && l >= 4,
        build: |l| {
            vec![
                pt(l, &[(l, 1)]),
                pt(l, &[(4, 1), (2, (l - 4) / 2)]),
                pt(l, &[(2, l / 2)]),
            ]
        },
    },
    AbsentRow {
        label: "I2.N2",
        admissible: |l| even(l) && l >= 4,
        build: |l| {
            vec![
                pt(l, &[(l, 1)]),
                pt(l, &[(2, l / 2)]),
                pt(l, &[(2, l / 2)]),
                pt(l, &[(2, 1), (1, l - 2)]),
            ]
        },
    },
];

/// Builds the branch partitions of a non-existence row at `l`, by label.
pub fn absent_row(label: &str, ell: u64) -> Result<Vec<Partition>> {
    let row = ABSENT_ROWS
        .iter()
        .find(|r| r.label == label)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
    if !(row.admissible)(ell) {
        return Err(Error::Inadmissible {
            label: label.to_string(),
            ell,
            reason: "parity or residue condition fails".into(),
        });
    }
    Ok((row.build)(ell))
}

/// Generates all non-existence rows admissible at `l`.
pub fn gen_nonexistence_table(ell: u64) -> Result<Vec<TableEntry>> {
    let mut entries = Vec::new();
    for row in ABSENT_ROWS {
        if !(row.admissible)(ell) {
            continue;
        }
        let data = RamificationData::new(ell, (row.build)(ell))?;
        entries.push(TableEntry {
            claims: BTreeSet::from([Claim::Nonexistent]),
            data,
            group: None,
            label: row.label.to_string(),
            params: BTreeMap::from([("ell".to_string(), ell)]),
        });
    }
    entries.sort_by_key(TableEntry::sort_key);
    Ok(entries)
}

/// Entry counts of the source catalog and its lift at one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct TableCounts {
    pub ell: u64,
    pub phi: u64,
    pub two_set_entries: u64,
    pub f_types: u64,
}

pub fn count_tables(ell: u64) -> Result<TableCounts> {
    Ok(TableCounts {
        ell,
        phi: euler_phi(ell),
        two_set_entries: gen_two_set_table(ell)?.len() as u64,
        f_types: gen_f_table(ell)?.len() as u64,
    })
}
