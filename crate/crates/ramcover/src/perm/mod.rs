//! Exact permutation-group engine.
//!
//! Points are 0-indexed internally; all parsing and printing of cycle
//! notation is 1-indexed. Multiplication is left to right: `(p * q)(i) =
//! q(p(i))`, so `(1,2)(1,3) = (1,2,3)`.

mod blocks;
mod classify;
mod induced;
mod stabchain;

pub use blocks::{is_primitive, minimal_block};
pub use classify::{classify_alternating, GroupVerdict, VerdictKind, VerdictMethod};
pub use induced::{
    induced_on_tsets, induced_on_ttuples, induced_tset_cycle_type, induced_ttuple_cycle_type,
    orbit_count_on_tsets, tset_domain_size, tset_orbit_reps, ttuple_domain_size,
};
pub use stabchain::{group_order, StabChain};

use crate::ramdata::{Parity, Partition};
use crate::{Error, Result};
use std::fmt;

/// A bijection of `{0, ..., degree-1}`, stored as its image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Validates that `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let degree = images.len();
        let mut seen = vec![false; degree];
        for &img in &images {
            if img >= degree || seen[img] {
                return Err(Error::NotBijection { degree });
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles of
    /// 0-indexed points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt >= degree {
                    return Err(Error::Domain(format!(
                        "point {} out of range for degree {degree}",
                        pt + 1
                    )));
                }
                if touched[pt] {
                    return Err(Error::Domain(format!(
                        "point {} appears in two cycles",
                        pt + 1
                    )));
                }
                touched[pt] = true;
                images[pt] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses 1-indexed cycle notation like `(1,2)(3,4,5)`; whitespace is
    /// ignored and `()` denotes the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('(') else {
                return Err(Error::Parse {
                    token: rest.chars().take(8).collect(),
                    msg: "expected `(`".into(),
                });
            };
            let Some(close) = stripped.find(')') else {
                return Err(Error::Parse {
                    token: stripped.chars().take(8).collect(),
                    msg: "unclosed cycle".into(),
                });
            };
            let body = &stripped[..close];
            rest = &stripped[close + 1..];
            if body.is_empty() {
                continue;
            }
            let mut cycle = Vec::new();
            for tok in body.split(',') {
                let n: usize = tok.parse().map_err(|_| Error::Parse {
                    token: tok.to_string(),
                    msg: "expected a 1-indexed point".into(),
                })?;
                if n == 0 || n > degree {
                    return Err(Error::Parse {
                        token: tok.to_string(),
                        msg: format!("point out of range 1..={degree}"),
                    });
                }
                cycle.push(n - 1);
            }
            cycles.push(cycle);
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// Left-to-right composition: the result maps `i` to `other(self(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    pub fn power(&self, k: u64) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base).expect("equal degrees");
            }
            base = base.compose(&base).expect("equal degrees");
            k >>= 1;
        }
        acc
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().lcm_parts()
    }

    /// Cycles in canonical order: each cycle led by its least point, cycles
    /// sorted by leader; fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.images[cur];
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Multiset of cycle lengths, fixed points included as parts equal to 1.
    pub fn cycle_type(&self) -> Partition {
        let mut seen = vec![false; self.degree()];
        let mut parts = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 1u64;
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                len += 1;
                cur = self.images[cur];
            }
            parts.push(len);
        }
        Partition::new(self.degree() as u64, parts).expect("cycle lengths sum to the degree")
    }

    /// Parity of the permutation as an element of the symmetric group.
    pub fn parity(&self) -> Parity {
        self.cycle_type().sign_parity()
    }
}

impl fmt::Display for Permutation {
    /// 1-indexed cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, pt) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A nonempty list of permutations of a common degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    degree: usize,
    gens: Vec<Permutation>,
}

impl GeneratorSet {
    pub fn new(gens: Vec<Permutation>) -> Result<Self> {
        let Some(first) = gens.first() else {
            return Err(Error::EmptyGenerators);
        };
        let degree = first.degree();
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(GeneratorSet { degree, gens })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Permutation] {
        &self.gens
    }

    /// Orbit partition of the domain: disjoint, covering, each orbit closed
    /// under every generator; orbits sorted by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut orbits = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let pt = orbit[head];
                head += 1;
                for g in &self.gens {
                    let img = g.apply(pt);
                    if !seen[img] {
                        seen[img] = true;
                        orbit.push(img);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }

    /// True iff every generator is an even permutation.
    pub fn all_even(&self) -> bool {
        self.gens.iter().all(|g| g.parity() == Parity::Even)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn left_to_right_composition_convention() {
        // (1,2)(1,3) = (1,2,3)
        let a = p("(1,2)", 3);
        let b = p("(1,3)", 3);
        assert_eq!(a.compose(&b).unwrap(), p("(1,2,3)", 3));
    }

    #[test]
    fn identity_composition_and_cycle_order() {
        let id = Permutation::identity(3);
        let q = p("(1,2,3)", 3);
        assert_eq!(id.compose(&q).unwrap(), q);
        let cubed = q.compose(&q).unwrap().compose(&q).unwrap();
        assert!(cubed.is_identity());
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let a = Permutation::identity(3);
        let b = Permutation::identity(4);
        assert!(matches!(
            a.compose(&b),
            Err(Error::DegreeMismatch(3, 4))
        ));
    }

    #[test]
    fn cycle_type_reads_cycles_and_fixed_points() {
        let q = p("(2,3,4,5)", 6);
        assert_eq!(q.cycle_type().expanded(), vec![4, 1, 1]);
        assert_eq!(
            Permutation::identity(5).cycle_type().expanded(),
            vec![1, 1, 1, 1, 1]
        );
        // x_2 of the F1.9 construction at degree 12
        let x2 = p("(1,2,3,4)(5,6)(7,8)(9,10)(11,12)", 12);
        assert_eq!(x2.cycle_type().expanded(), vec![4, 2, 2, 2, 2]);
    }

    #[test]
    fn parse_and_print_round_trip() {
        let q = p(" (1, 2) ( 4,5 ,6) ", 7);
        assert_eq!(q.to_string(), "(1,2)(4,5,6)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(p("()", 4), Permutation::identity(4));
        assert!(Permutation::parse_cycles("(0,1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1,2", 3).is_err());
        assert!(Permutation::parse_cycles("(1,1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1,4)", 3).is_err());
    }

    #[test]
    fn inverse_and_power() {
        let q = p("(1,2,3,4,5)", 5);
        assert!(q.compose(&q.inverse()).unwrap().is_identity());
        assert_eq!(q.power(5), Permutation::identity(5));
        assert_eq!(q.order(), 5);
        assert_eq!(p("(1,2)(3,4,5)", 5).order(), 6);
    }

    #[test]
    fn orbits_partition_the_domain() {
        let g = GeneratorSet::new(vec![p("(1,2)", 3)]).unwrap();
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2]]);
        let c5 = GeneratorSet::new(vec![p("(1,2,3,4,5)", 5)]).unwrap();
        assert_eq!(c5.orbits().len(), 1);
        assert!(c5.is_transitive());
    }

    #[test]
    fn parity_of_generators() {
        assert_eq!(p("(1,2)", 4).parity(), Parity::Odd);
        assert_eq!(p("(1,2,3)", 4).parity(), Parity::Even);
        assert_eq!(p("(1,2)(3,4)", 4).parity(), Parity::Even);
    }
}
