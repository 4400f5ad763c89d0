//! The recursively built rooted trees whose vertex counts realize the
//! sequence `k_n`, their order structure (splitting vertices, meets, maximal
//! chains), and the sign families read off the chains.
//!
//! Tree `n` consists of a bottom path of `floor(n/2)` linearly ordered
//! vertices (the lowest is the root) whose top vertex carries two subtrees:
//! a copy of tree `floor(n/2)` and a copy of tree `floor((n+1)/2)`. The
//! order is `v <= w` when `v` lies on the path from the root to `w`.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::families::{Family, SignFunction};
use crate::hypergraph::{Hypergraph, VertexSet};

/// Coordinates of chain families are tree vertices, so trees must stay
/// within the family coordinate cap.
pub const MAX_TREE_N: usize = 20;

#[derive(Debug, Error)]
pub enum TreeError {
    #[error(
        "vertices {0} and {1} are comparable; the meet is only defined for incomparable pairs"
    )]
    ComparableInputs(usize, usize),
    #[error("vertex {0} is maximal; no splitting vertex lies above it")]
    MaximalVertex(usize),
    #[error("vertex {0} out of range ({1} vertices)")]
    VertexOutOfRange(usize, usize),
}

/// A rooted tree with vertex 0 as the root; vertices are numbered in the
/// order the recursive construction creates them (bottom path first, then
/// the smaller copy, then the larger).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootedTree {
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// A splitting vertex has exactly two immediate successors.
    pub fn is_splitting(&self, v: usize) -> bool {
        self.children[v].len() == 2
    }

    pub fn is_maximal(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    /// The least splitting vertex weakly above `v`; errors when `v` is
    /// maximal. Found by walking upward through single-child links.
    pub fn least_splitting_above(&self, v: usize) -> Result<usize, TreeError> {
        self.check(v)?;
        let mut w = v;
        loop {
            match self.children[w].len() {
                2 => return Ok(w),
                1 => w = self.children[w][0],
                _ => return Err(TreeError::MaximalVertex(v)),
            }
        }
    }

    /// `a <= b` in the tree order: `a` lies on the root-to-`b` path.
    pub fn is_below_or_equal(&self, a: usize, b: usize) -> bool {
        let mut cur = Some(b);
        while let Some(v) = cur {
            if v == a {
                return true;
            }
            cur = self.parent[v];
        }
        false
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.is_below_or_equal(a, b) || self.is_below_or_equal(b, a)
    }

    /// The greatest vertex below both members of an incomparable pair
    /// (always defined; the root is below everything).
    pub fn meet(&self, b: usize, c: usize) -> Result<usize, TreeError> {
        self.check(b)?;
        self.check(c)?;
        if self.comparable(b, c) {
            return Err(TreeError::ComparableInputs(b, c));
        }
        let mut ancestors = vec![false; self.vertex_count()];
        let mut cur = Some(b);
        while let Some(v) = cur {
            ancestors[v] = true;
            cur = self.parent[v];
        }
        let mut cur = Some(c);
        while let Some(v) = cur {
            if ancestors[v] {
                return Ok(v);
            }
            cur = self.parent[v];
        }
        unreachable!("the root is a common lower bound");
    }

    /// All root-to-maximal-vertex chains as vertex sets, ordered by their
    /// maximal vertex.
    pub fn maximal_chains(&self) -> Vec<VertexSet> {
        let mut chains = Vec::new();
        for v in 0..self.vertex_count() {
            if self.is_maximal(v) {
                let mut chain = VertexSet::EMPTY;
                let mut cur = Some(v);
                while let Some(u) = cur {
                    chain.insert(u);
                    cur = self.parent[u];
                }
                chains.push(chain);
            }
        }
        chains
    }

    fn check(&self, v: usize) -> Result<(), TreeError> {
        if v >= self.vertex_count() {
            return Err(TreeError::VertexOutOfRange(v, self.vertex_count()));
        }
        Ok(())
    }
}

/// Builds the tree for parameter `n >= 1`.
pub fn build_t(n: usize) -> RootedTree {
    assert!(
        (1..=MAX_TREE_N).contains(&n),
        "supported range is 1..={MAX_TREE_N}"
    );
    let mut parent = Vec::new();
    let mut children = Vec::new();
    build_into(n, None, &mut parent, &mut children);
    RootedTree { parent, children }
}

/// Appends the tree for `n` below `attach`, returning nothing; vertices are
/// created bottom path first, then the two subtrees.
fn build_into(
    n: usize,
    attach: Option<usize>,
    parent: &mut Vec<Option<usize>>,
    children: &mut Vec<Vec<usize>>,
) {
    let new_vertex =
        |parent: &mut Vec<Option<usize>>, children: &mut Vec<Vec<usize>>, p: Option<usize>| {
            let id = parent.len();
            parent.push(p);
            children.push(Vec::new());
            if let Some(p) = p {
                children[p].push(id);
            }
            id
        };
    if n == 1 {
        new_vertex(parent, children, attach);
        return;
    }
    let mut top = attach;
    for _ in 0..(n / 2) {
        top = Some(new_vertex(parent, children, top));
    }
    let top = top.unwrap();
    build_into(n / 2, Some(top), parent, children);
    build_into(n.div_ceil(2), Some(top), parent, children);
}

/// For `|D| > n` in the tree for `n`, a triple `(a, b, c)` of members of `D`
/// with `b`, `c` incomparable and the least splitting vertex above `a` equal
/// to the meet of `b` and `c` always exists; this searches for one.
pub fn triple_claim_check(tree: &RootedTree, d: &[usize]) -> Option<(usize, usize, usize)> {
    for &a in d {
        let sigma = match tree.least_splitting_above(a) {
            Ok(s) => s,
            Err(_) => continue,
        };
        for (i, &b) in d.iter().enumerate() {
            for &c in &d[i + 1..] {
                if !tree.comparable(b, c) && tree.meet(b, c).unwrap() == sigma {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// Per-splitting-vertex assignment of `p`/`n` to the two children. The
/// default maps the first child to `p`; `flipped[s]` swaps that at `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainLabeling {
    flipped: Vec<bool>,
}

impl ChainLabeling {
    pub fn default_for(tree: &RootedTree) -> Self {
        ChainLabeling {
            flipped: vec![false; tree.vertex_count()],
        }
    }

    pub fn random<R: Rng>(tree: &RootedTree, rng: &mut R) -> Self {
        ChainLabeling {
            flipped: (0..tree.vertex_count())
                .map(|v| tree.is_splitting(v) && rng.gen_bool(0.5))
                .collect(),
        }
    }

    /// `true` means `p` for the given child of the given splitting vertex.
    fn label(&self, tree: &RootedTree, splitting: usize, child: usize) -> bool {
        debug_assert!(tree.is_splitting(splitting));
        let first = tree.children(splitting)[0] == child;
        first != self.flipped[splitting]
    }
}

/// The sign family read off the maximal chains: each chain contributes two
/// functions with the chain as domain. Below the top, both copies take the
/// label of the chain's continuation above the least splitting vertex over
/// the coordinate; at the top vertex one copy takes `p`, the other `n`.
/// Coordinates are vertex ids plus one.
pub fn build_bounding_family(n: usize, labeling: Option<&ChainLabeling>) -> Family {
    let tree = build_t(n);
    build_bounding_family_on(&tree, labeling)
}

pub fn build_bounding_family_on(tree: &RootedTree, labeling: Option<&ChainLabeling>) -> Family {
    let default;
    let labeling = match labeling {
        Some(l) => l,
        None => {
            default = ChainLabeling::default_for(tree);
            &default
        }
    };
    let mut functions = Vec::new();
    for chain in tree.maximal_chains() {
        let members = chain.to_vec();
        let top = *members
            .iter()
            .max_by_key(|&&v| depth(tree, v))
            .expect("chains are nonempty");
        let mut domain = 0u64;
        let mut body_positive = 0u64;
        for &v in &members {
            let bit = 1u64 << v;
            domain |= bit;
            if v == top {
                continue;
            }
            let s = tree
                .least_splitting_above(v)
                .expect("non-maximal chain vertices have a splitting vertex above");
            // The chain passes through s and continues into exactly one child.
            let continuation = *tree
                .children(s)
                .iter()
                .find(|&&c| chain.contains(c))
                .expect("a maximal chain through s contains one of its children");
            if labeling.label(tree, s, continuation) {
                body_positive |= bit;
            }
        }
        let top_bit = 1u64 << top;
        functions.push(SignFunction::new(domain, body_positive | top_bit));
        functions.push(SignFunction::new(domain, body_positive));
    }
    Family::new(tree.vertex_count(), functions).expect("tree size is within the coordinate cap")
}

fn depth(tree: &RootedTree, mut v: usize) -> usize {
    let mut d = 0;
    while let Some(p) = tree.parent(v) {
        v = p;
        d += 1;
    }
    d
}

/// The hypergraph whose vertices are the tree's vertices and whose edges are
/// its maximal chains.
pub fn branch_hypergraph(n: usize) -> Hypergraph {
    let tree = build_t(n);
    let edges = tree.maximal_chains();
    Hypergraph::new(tree.vertex_count(), edges).expect("chains are distinct and in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::k_sequence;

    #[test]
    fn smallest_trees() {
        let t1 = build_t(1);
        assert_eq!(t1.vertex_count(), 1);
        assert!(t1.is_maximal(0));

        let t2 = build_t(2);
        assert_eq!(t2.vertex_count(), 3);
        assert_eq!(t2.children(0).len(), 2);

        let t4 = build_t(4);
        assert_eq!(t4.vertex_count(), 8);
    }

    #[test]
    fn sizes_match_recurrence() {
        let ks = k_sequence(MAX_TREE_N);
        for n in 1..=MAX_TREE_N {
            assert_eq!(build_t(n).vertex_count() as u64, ks[n - 1], "n={n}");
        }
    }

    #[test]
    fn every_splitting_vertex_has_two_children() {
        for n in 1..=12 {
            let t = build_t(n);
            for v in 0..t.vertex_count() {
                assert!(t.children(v).len() <= 2);
                if !t.is_maximal(v) {
                    assert!(t.least_splitting_above(v).is_ok(), "n={n} v={v}");
                }
            }
        }
    }

    #[test]
    fn sigma_of_root() {
        // Tree 2: the root splits immediately.
        assert_eq!(build_t(2).least_splitting_above(0).unwrap(), 0);
        // Tree 4: bottom path of two vertices; the second splits.
        let t4 = build_t(4);
        assert_eq!(t4.least_splitting_above(0).unwrap(), 1);
        // Tree 3: bottom path of one vertex; the root itself splits.
        let t3 = build_t(3);
        assert_eq!(t3.least_splitting_above(0).unwrap(), 0);
        // Maximal vertices have no splitting vertex above.
        let top = (0..t4.vertex_count()).find(|&v| t4.is_maximal(v)).unwrap();
        assert!(t4.least_splitting_above(top).is_err());
    }

    #[test]
    fn meets() {
        let t2 = build_t(2);
        assert_eq!(t2.meet(1, 2).unwrap(), 0);
        assert!(t2.meet(0, 1).is_err());

        let t4 = build_t(4);
        // Leaves from the two halves meet at the top of the bottom path.
        let leaves: Vec<usize> = (0..t4.vertex_count())
            .filter(|&v| t4.is_maximal(v))
            .collect();
        assert_eq!(t4.meet(leaves[0], leaves[3]).unwrap(), 1);
        // Leaves under the same splitting vertex meet there.
        let s = t4.parent(leaves[0]).unwrap();
        assert_eq!(t4.meet(leaves[0], leaves[1]).unwrap(), s);
        assert!(t4.is_splitting(s));
    }

    #[test]
    fn chain_counts_equal_n() {
        for n in 1..=12 {
            let t = build_t(n);
            let chains = t.maximal_chains();
            assert_eq!(chains.len(), n, "one chain per maximal vertex, n of them");
            for chain in &chains {
                assert!(chain.contains(0), "every chain passes the root");
            }
        }
        assert_eq!(build_t(1).maximal_chains().len(), 1);
        let t2_chains = build_t(2).maximal_chains();
        assert_eq!(t2_chains.len(), 2);
        assert!(t2_chains.iter().all(|c| c.len() == 2));
    }

    #[test]
    fn triple_exists_above_n() {
        let t2 = build_t(2);
        let triple = triple_claim_check(&t2, &[0, 1, 2]).unwrap();
        assert_eq!(triple.0, 0);
        // A single maximal chain of size n has no incomparable pair.
        assert!(triple_claim_check(&t2, &[0, 1]).is_none());
    }

    #[test]
    fn triple_exhaustive_for_t5() {
        let t5 = build_t(5);
        let k5 = t5.vertex_count();
        assert_eq!(k5, 10);
        // Every 6-subset of the 10 vertices contains a valid triple.
        let vertices: Vec<usize> = (0..k5).collect();
        fn rec(vertices: &[usize], tree: &RootedTree, subset: &mut Vec<usize>, start: usize) {
            if subset.len() == 6 {
                assert!(
                    triple_claim_check(tree, subset).is_some(),
                    "no triple in {subset:?}"
                );
                return;
            }
            let need = 6 - subset.len();
            for i in start..=(vertices.len() - need) {
                subset.push(vertices[i]);
                rec(vertices, tree, subset, i + 1);
                subset.pop();
            }
        }
        rec(&vertices, &t5, &mut Vec::new(), 0);
    }

    #[test]
    fn family_for_n1() {
        let fam = build_bounding_family(1, None);
        assert_eq!(fam.k, 1);
        assert_eq!(fam.functions.len(), 2);
        assert_eq!(fam.functions[0].value_at(1), Some(true));
        assert_eq!(fam.functions[1].value_at(1), Some(false));
    }

    #[test]
    fn family_for_n2_is_bounding_at_3() {
        let fam = build_bounding_family(2, None);
        assert_eq!(fam.k, 3);
        assert_eq!(fam.functions.len(), 4);
        assert!(fam.is_full());
        assert!(fam.is_bounding(3).unwrap());
        assert!(
            !fam.is_bounding(2).unwrap(),
            "two chain coordinates always agree"
        );
    }

    #[test]
    fn branch_hypergraph_shape() {
        let h = branch_hypergraph(4);
        assert_eq!(h.vertex_count(), 8);
        assert_eq!(h.edge_count(), 4);
        assert!(h.isolated_vertices().is_empty());
        assert!(h.is_economical());
        assert_eq!(h.max_partition().unwrap().0, 4);
    }
}
