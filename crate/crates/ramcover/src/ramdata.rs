//! Partitions and ramification data with exact Riemann–Hurwitz arithmetic.
//!
//! A [`Partition`] is stored run-length encoded as `(value, count)` pairs in
//! descending value order, so that catalog generation stays linear in the
//! number of distinct part sizes even when degrees grow quadratically.
//! A [`RamificationData`] is a canonically sorted multiset of nontrivial
//! partitions of a common degree, candidate to be the ramification type of a
//! covering.

use crate::{Error, Result};
use serde::de::Error as _;
use std::collections::BTreeMap;
use std::fmt;

/// Partition of a positive integer: descending positive parts with multiplicity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    degree: u64,
    /// `(value, count)` with values strictly descending, counts positive.
    runs: Vec<(u64, u64)>,
}

impl Partition {
    /// Builds a partition from an unordered list of parts; the parts must sum
    /// to `degree`.
    pub fn new(degree: u64, parts: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut by_value: BTreeMap<u64, u64> = BTreeMap::new();
        let mut sum = 0u64;
        for p in parts {
            if p == 0 {
                return Err(Error::Domain("partition parts must be positive".into()));
            }
            sum += p;
            *by_value.entry(p).or_insert(0) += 1;
        }
        if sum != degree {
            return Err(Error::BadPartitionSum { sum, degree });
        }
        let runs = by_value.into_iter().rev().collect();
        Ok(Partition { degree, runs })
    }

    /// Builds a partition from `(value, count)` runs (any order, duplicate
    /// values allowed); counts of zero are dropped.
    pub fn from_runs(degree: u64, runs: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut by_value: BTreeMap<u64, u64> = BTreeMap::new();
        let mut sum = 0u64;
        for (v, c) in runs {
            if c == 0 {
                continue;
            }
            if v == 0 {
                return Err(Error::Domain("partition parts must be positive".into()));
            }
            sum += v * c;
            *by_value.entry(v).or_insert(0) += c;
        }
        if sum != degree {
            return Err(Error::BadPartitionSum { sum, degree });
        }
        Ok(Partition {
            degree,
            runs: by_value.into_iter().rev().collect(),
        })
    }

    /// The partition `[1^degree]`.
    pub fn trivial(degree: u64) -> Self {
        Partition {
            degree,
            runs: if degree == 0 { vec![] } else { vec![(1, degree)] },
        }
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Runs `(value, count)` in descending value order.
    pub fn runs(&self) -> &[(u64, u64)] {
        &self.runs
    }

    /// Parts in descending order, fully expanded.
    pub fn parts(&self) -> impl Iterator<Item = u64> + '_ {
        self.runs
            .iter()
            .flat_map(|&(v, c)| std::iter::repeat(v).take(c as usize))
    }

    pub fn expanded(&self) -> Vec<u64> {
        self.parts().collect()
    }

    /// Number of parts, counted with multiplicity.
    pub fn num_parts(&self) -> u64 {
        self.runs.iter().map(|&(_, c)| c).sum()
    }

    /// Multiplicity of `value` among the parts.
    pub fn count_of(&self, value: u64) -> u64 {
        self.runs
            .iter()
            .find(|&&(v, _)| v == value)
            .map_or(0, |&(_, c)| c)
    }

    pub fn max_part(&self) -> u64 {
        self.runs.first().map_or(0, |&(v, _)| v)
    }

    /// True iff every part equals 1 (the unramified pattern).
    pub fn is_trivial(&self) -> bool {
        self.runs.len() == 1 && self.runs[0].0 == 1 || self.runs.is_empty()
    }

    /// Riemann–Hurwitz contribution `degree - (number of parts)`.
    pub fn rh_term(&self) -> u64 {
        self.degree - self.num_parts()
    }

    /// Least common multiple of the parts.
    pub fn lcm_parts(&self) -> u64 {
        self.runs
            .iter()
            .fold(1u64, |acc, &(v, _)| num_integer::lcm(acc, v))
    }

    /// Parity of the permutations with this cycle type: odd iff `rh_term` is odd.
    pub fn sign_parity(&self) -> Parity {
        if self.rh_term() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// Cycle type of the k-th power of a permutation with this cycle type:
    /// each part `r` splits into `gcd(r,k)` parts of size `r/gcd(r,k)`.
    pub fn power_type(&self, k: u64) -> Partition {
        let mut runs = Vec::with_capacity(self.runs.len());
        for &(v, c) in &self.runs {
            let g = num_integer::gcd(v, k);
            runs.push((v / g, c * g));
        }
        Partition::from_runs(self.degree, runs).expect("power of a partition stays a partition")
    }

    /// Compact rendering: descending `value^count` items, count omitted when 1.
    pub fn compact(&self) -> String {
        let items: Vec<String> = self
            .runs
            .iter()
            .map(|&(v, c)| {
                if c == 1 {
                    format!("{v}")
                } else {
                    format!("{v}^{c}")
                }
            })
            .collect();
        items.join(",")
    }

    /// Parses the compact grammar `item := INT | INT '^' INT | INT '^*'`,
    /// comma-separated, with at most one starred item. The star fills the
    /// remainder of `degree` with copies of its value; the remainder must be
    /// divisible by that value.
    pub fn parse_compact(text: &str, degree: u64) -> Result<Self> {
        let mut explicit: Vec<(u64, u64)> = Vec::new();
        let mut star: Option<u64> = None;
        for raw in text.split(',') {
            let item: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            if item.is_empty() {
                if text.trim().is_empty() {
                    break;
                }
                return Err(Error::Parse {
                    token: raw.to_string(),
                    msg: "empty item".into(),
                });
            }
            let parse_int = |s: &str| -> Result<u64> {
                s.parse().map_err(|_| Error::Parse {
                    token: s.to_string(),
                    msg: "expected an integer".into(),
                })
            };
            match item.split_once('^') {
                None => explicit.push((parse_int(&item)?, 1)),
                Some((base, "*")) => {
                    let v = parse_int(base)?;
                    if star.replace(v).is_some() {
                        return Err(Error::Parse {
                            token: item.clone(),
                            msg: "at most one starred item per partition".into(),
                        });
                    }
                }
                Some((base, count)) => explicit.push((parse_int(base)?, parse_int(count)?)),
            }
        }
        let explicit_sum: u64 = explicit.iter().map(|&(v, c)| v * c).sum();
        if explicit_sum > degree {
            return Err(Error::BadPartitionSum {
                sum: explicit_sum,
                degree,
            });
        }
        if let Some(v) = star {
            if v == 0 {
                return Err(Error::Domain("starred part must be positive".into()));
            }
            let rest = degree - explicit_sum;
            if rest % v != 0 {
                return Err(Error::Domain(format!(
                    "remainder {rest} is not divisible by starred part {v}"
                )));
            }
            explicit.push((v, rest / v));
        }
        Partition::from_runs(degree, explicit)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.compact())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.compact())
    }
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.parts())
    }
}

/// Parity of an integer quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Parity {
    Even,
    Odd,
}

/// Outcome of solving the Riemann–Hurwitz formula for a genus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Genus {
    Value(i64),
    /// The Riemann–Hurwitz sum was odd, so no integral genus exists.
    NotIntegral,
    /// The formula solves to a negative integer; no curve realizes the data.
    Negative(i64),
}

impl Genus {
    pub fn value(&self) -> Option<i64> {
        match self {
            Genus::Value(g) => Some(*g),
            _ => None,
        }
    }
}

impl serde::Serialize for Genus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Genus::Value(g) => s.serialize_i64(*g),
            Genus::NotIntegral => s.serialize_str("NOT_INTEGRAL"),
            Genus::Negative(_) => s.serialize_str("NEGATIVE"),
        }
    }
}

/// Genus solved from Riemann–Hurwitz together with the raw contribution sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct GenusResult {
    pub genus: Genus,
    /// `sum_i (degree - |A_i|)` over the branches.
    pub rh_sum: u64,
}

/// A multiset of nontrivial partitions of a common degree, kept canonically
/// sorted. Trivial branches (`[1^degree]`) are dropped on construction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RamificationData {
    degree: u64,
    branches: Vec<Partition>,
}

impl RamificationData {
    pub fn new(degree: u64, branches: impl IntoIterator<Item = Partition>) -> Result<Self> {
        let mut kept = Vec::new();
        for b in branches {
            if b.degree() != degree {
                return Err(Error::BadPartitionSum {
                    sum: b.degree(),
                    degree,
                });
            }
            if !b.is_trivial() {
                kept.push(b);
            }
        }
        kept.sort();
        Ok(RamificationData {
            degree,
            branches: kept,
        })
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn branches(&self) -> &[Partition] {
        &self.branches
    }

    pub fn num_branches(&self) -> usize {
        self.branches.len()
    }

    /// Solves Riemann–Hurwitz for the cover genus over a base of genus
    /// `base_genus`: `2(g - l*g_base + l - 1) = sum_i (l - |A_i|)`.
    pub fn rh_genus(&self, base_genus: u64) -> GenusResult {
        let rh_sum: u64 = self.branches.iter().map(Partition::rh_term).sum();
        let ell = self.degree as i64;
        if rh_sum % 2 != 0 {
            return GenusResult {
                genus: Genus::NotIntegral,
                rh_sum,
            };
        }
        let g = rh_sum as i64 / 2 + ell * base_genus as i64 - ell + 1;
        let genus = if g < 0 {
            Genus::Negative(g)
        } else {
            Genus::Value(g)
        };
        GenusResult { genus, rh_sum }
    }

    /// Parity of the total Riemann–Hurwitz sum. An odd value means the
    /// branch types multiply to an odd permutation, so no product-one tuple
    /// of these cycle types exists.
    pub fn total_parity(&self) -> Parity {
        let rh_sum: u64 = self.branches.iter().map(Partition::rh_term).sum();
        if rh_sum % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// CSV rows `label,degree,partition`, one per branch, in canonical order.
    pub fn csv_rows(&self, label: &str) -> String {
        let mut out = String::new();
        for b in &self.branches {
            out.push_str(&format!("{label},{},\"{}\"\n", self.degree, b.compact()));
        }
        out
    }
}

impl fmt::Debug for RamificationData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{deg {}: ", self.degree)?;
        for (i, b) in self.branches.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "}}")
    }
}

impl serde::Serialize for RamificationData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RamificationData", 2)?;
        st.serialize_field("branches", &self.branches)?;
        st.serialize_field("degree", &self.degree)?;
        st.end()
    }
}

impl<'de> serde::Deserialize<'de> for RamificationData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // Branches may be fully expanded part lists or compact-grammar strings.
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum BranchRepr {
            Parts(Vec<u64>),
            Compact(String),
        }
        #[derive(serde::Deserialize)]
        struct Raw {
            degree: u64,
            branches: Vec<BranchRepr>,
        }
        let raw = Raw::deserialize(d)?;
        let mut branches = Vec::with_capacity(raw.branches.len());
        for b in raw.branches {
            let p = match b {
                BranchRepr::Parts(parts) => {
                    Partition::new(raw.degree, parts).map_err(D::Error::custom)?
                }
                BranchRepr::Compact(text) => {
                    Partition::parse_compact(&text, raw.degree).map_err(D::Error::custom)?
                }
            };
            branches.push(p);
        }
        RamificationData::new(raw.degree, branches).map_err(D::Error::custom)
    }
}
