//! Block systems and primitivity via minimal block closure.

use super::GeneratorSet;
use crate::{Error, Result};

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns the absorbed root if the
    /// classes were distinct.
    fn union(&mut self, a: usize, b: usize) -> Option<usize> {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return None;
        }
        self.parent[rb] = ra;
        Some(rb)
    }
}

/// Smallest block of imprimitivity of the transitive group `g` containing
/// both `a` and `b`. The returned block is sorted; the full block system is
/// its translates.
pub fn minimal_block(g: &GeneratorSet, a: usize, b: usize) -> Result<Vec<usize>> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = g.degree();
    if a >= n || b >= n || a == b {
        return Err(Error::Domain(format!(
            "block seed points must be distinct points of 0..{n}"
        )));
    }
    let mut uf = UnionFind::new(n);
    uf.union(a, b);
    // Invariant being closed on: for every generator x and class C, the
    // images of C lie in one class. Each merged-away root is reprocessed.
    let mut queue = vec![b];
    while let Some(gamma) = queue.pop() {
        let delta = uf.find(gamma);
        for x in g.gens() {
            let u = x.apply(gamma);
            let v = x.apply(delta);
            if let Some(absorbed) = uf.union(u, v) {
                queue.push(absorbed);
            }
        }
    }
    let ra = uf.find(a);
    let block: Vec<usize> = (0..n).filter(|&p| uf.find(p) == ra).collect();
    Ok(block)
}

/// True iff the transitive group has no nontrivial block system, i.e. the
/// minimal block through `{0, b}` is the whole domain for every `b != 0`.
pub fn is_primitive(g: &GeneratorSet) -> Result<bool> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = g.degree();
    if n <= 2 {
        return Ok(true);
    }
    for b in 1..n {
        if minimal_block(g, 0, b)?.len() != n {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn gens(degree: usize, texts: &[&str]) -> GeneratorSet {
        GeneratorSet::new(
            texts
                .iter()
                .map(|t| Permutation::parse_cycles(t, degree).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn klein_style_blocks() {
        // <(1,2),(3,4),(1,3)(2,4)> on 4 points: {1,2},{3,4} is a block system.
        let g = gens(4, &["(1,2)", "(3,4)", "(1,3)(2,4)"]);
        assert_eq!(minimal_block(&g, 0, 1).unwrap(), vec![0, 1]);
        assert_eq!(minimal_block(&g, 0, 2).unwrap(), vec![0, 1, 2, 3]);
        assert!(!is_primitive(&g).unwrap());
    }

    #[test]
    fn blocks_are_generator_invariant() {
        let g = gens(8, &["(1,2,3,4,5,6,7,8)"]);
        for b in 1..8 {
            let block = minimal_block(&g, 0, b).unwrap();
            for x in g.gens() {
                let mut image: Vec<usize> = block.iter().map(|&p| x.apply(p)).collect();
                image.sort_unstable();
                // image is either the block itself or disjoint from it
                let same = image == block;
                let disjoint = image.iter().all(|p| !block.contains(p));
                assert!(same || disjoint);
            }
        }
    }

    #[test]
    fn symmetric_group_is_primitive() {
        let g = gens(5, &["(1,2)", "(1,2,3,4,5)"]);
        assert!(is_primitive(&g).unwrap());
    }

    #[test]
    fn cyclic_of_composite_order_is_imprimitive() {
        let g = gens(4, &["(1,2,3,4)"]);
        assert!(!is_primitive(&g).unwrap());
        assert_eq!(minimal_block(&g, 0, 2).unwrap(), vec![0, 2]);
    }

    #[test]
    fn intransitive_input_is_rejected() {
        let g = gens(4, &["(1,2)"]);
        assert!(matches!(is_primitive(&g), Err(Error::NotTransitive)));
        assert!(matches!(minimal_block(&g, 0, 1), Err(Error::NotTransitive)));
    }
}
