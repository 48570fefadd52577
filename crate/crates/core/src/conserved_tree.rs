//! Inclusion tree of strong conserved intervals with maximal frontier sets.
//!
//! A conserved interval of size at least two is irreducible when it is not a
//! union of smaller conserved intervals; these are exactly the steps
//! `(f_i..f_{i+1})` between successive frontiers of strong intervals, and for
//! each left end `a` the irreducible interval starting at `a` is the shortest
//! conserved interval starting there.
//!
//! Conserved intervals are found through a doubling trick: element `+x`
//! becomes the pair `2x-1, 2x` and `-x` becomes `2x, 2x-1`. Then `(a..c)` is
//! conserved iff `{2a..2c-1}` is common to the doubled permutations, so the
//! shortest conserved interval starting at `a` can be read off an interval
//! generator of the doubled family.
//!
//! Irreducible intervals pairwise overlap on at most one element, so marking
//! their ends on the identity gives a well-bracketed expression. Scanning it
//! left to right, neighbouring irreducible intervals chain into strong
//! intervals whose frontiers are the chained endpoints; nodes come out in
//! post-order.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generator::{Generator, MinTree};
use crate::perm::{Interval, Permutation, PermutationSet, Sign, SignedPermutation};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConservedNode {
    pub interval: Interval,
    /// Maximal frontier set, ascending; starts at `interval.lo`, ends at `interval.hi`.
    pub frontiers: Vec<usize>,
    pub children: Vec<NodeId>,
    #[serde(skip)]
    pub parent: Option<NodeId>,
    /// The step between successive parent frontiers that strictly contains
    /// this node; `None` for the root.
    pub l_link: Option<(usize, usize)>,
}

impl ConservedNode {
    /// Number of frontier steps `(f_i..f_{i+1})`.
    pub fn steps(&self) -> usize {
        self.frontiers.len() - 1
    }

    /// Step `i` (0-based) as an interval.
    pub fn step(&self, i: usize) -> Interval {
        Interval::new(self.frontiers[i], self.frontiers[i + 1])
    }

    /// Index of the step equal to `(lo..hi)`.
    pub fn step_index(&self, lo: usize, hi: usize) -> Option<usize> {
        let i = self.frontiers.binary_search(&lo).ok()?;
        (self.frontiers.get(i + 1) == Some(&hi)).then_some(i)
    }

    /// All frontier pairs `(f_i..f_j)`, `i < j`, except the node's own
    /// interval, in lexicographic `(i, j)` order.
    pub fn weak_intervals(&self) -> impl Iterator<Item = Interval> + '_ {
        let k = self.frontiers.len();
        (0..k).flat_map(move |i| {
            (i + 1..k)
                .filter(move |&j| !(i == 0 && j == k - 1))
                .map(move |j| Interval::new(self.frontiers[i], self.frontiers[j]))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConservedTree {
    n: usize,
    // post-order; the root, if any, is last
    nodes: Vec<ConservedNode>,
    // frontier_owner[x] = (node, index in its frontier list)
    frontier_owner: Vec<Option<(NodeId, usize)>>,
}

/// Irreducible conserved intervals of size at least two, sorted by `lo`.
pub fn irreducible_conserved_intervals(set: &PermutationSet) -> Vec<Interval> {
    let n = set.n();
    if n < 2 {
        return Vec::new();
    }
    let doubled: Vec<Permutation> = set.perms().iter().map(doubled_permutation).collect();
    let generator = Generator::for_permutations(2 * n, &doubled);
    // (a..c) is conserved iff 2c - 1 <= right[2a] and left[2c - 1] <= 2a
    let odd_lefts: Vec<i64> = (1..=n).map(|c| generator.left(2 * c - 1) as i64).collect();
    let odd_lefts = MinTree::new(&odd_lefts);
    (1..n)
        .filter_map(|a| {
            let reach = generator.right(2 * a);
            if reach < 2 * a + 1 {
                return None;
            }
            let last_c = reach.div_ceil(2);
            let c = odd_lefts.first_at_most(a, last_c - 1, 2 * a as i64)? + 1;
            Some(Interval::new(a, c))
        })
        .collect()
}

fn doubled_permutation(p: &SignedPermutation) -> Permutation {
    let mut elements = Vec::with_capacity(2 * p.len());
    for q in 0..p.len() {
        let x = p.permutation().element(q);
        match p.sign_at(q) {
            Sign::Plus => elements.extend([2 * x - 1, 2 * x]),
            Sign::Minus => elements.extend([2 * x, 2 * x - 1]),
        }
    }
    Permutation::from_elements(elements).expect("doubling keeps a bijection")
}

struct Chain {
    frontiers: Vec<usize>,
    children: Vec<NodeId>,
    // children sitting in the currently open step, waiting for its right end
    pending: Vec<NodeId>,
}

impl ConservedTree {
    /// Builds the tree; the set must satisfy the conserved frame
    /// (every permutation runs from `+1` to `+n`).
    pub fn build(set: &PermutationSet) -> Result<Self> {
        set.validate_conserved_frame()?;
        Self::from_irreducible(set.n(), &irreducible_conserved_intervals(set))
    }

    /// Builds the tree from the irreducible intervals of an instance of size `n`.
    pub fn from_irreducible(n: usize, irreducible: &[Interval]) -> Result<Self> {
        let mut opens_at = vec![None; n + 2];
        let mut closes_at = vec![None; n + 2];
        for iv in irreducible {
            if iv.size() < 2 || iv.hi > n {
                return Err(Error::InternalStructure(format!("bad irreducible interval {iv}")));
            }
            if opens_at[iv.lo].replace(iv.hi).is_some() || closes_at[iv.hi].replace(iv.lo).is_some() {
                return Err(Error::InternalStructure(format!("two irreducible intervals share an end with {iv}")));
            }
        }

        let mut nodes: Vec<ConservedNode> = Vec::new();
        let mut chains: Vec<Chain> = Vec::new();
        for p in 1..=n {
            if let Some(lo) = closes_at[p] {
                let chain = chains
                    .last_mut()
                    .filter(|c| c.frontiers.last() == Some(&lo))
                    .ok_or_else(|| Error::InternalStructure(format!("bracket for ({lo}..{p}) closes out of order")))?;
                chain.frontiers.push(p);
                for child in chain.pending.drain(..) {
                    nodes[child].l_link = Some((lo, p));
                }
                if opens_at[p].is_none() {
                    let chain = chains.pop().unwrap();
                    let id = nodes.len();
                    for &child in &chain.children {
                        nodes[child].parent = Some(id);
                    }
                    nodes.push(ConservedNode {
                        interval: Interval::new(chain.frontiers[0], p),
                        frontiers: chain.frontiers,
                        children: chain.children,
                        parent: None,
                        l_link: None,
                    });
                    if let Some(parent) = chains.last_mut() {
                        parent.children.push(id);
                        parent.pending.push(id);
                    }
                }
            } else if opens_at[p].is_some() {
                chains.push(Chain {
                    frontiers: vec![p],
                    children: Vec::new(),
                    pending: Vec::new(),
                });
            }
        }
        if !chains.is_empty() {
            return Err(Error::InternalStructure("unclosed bracket".into()));
        }
        let roots = nodes.iter().filter(|node| node.parent.is_none()).count();
        if n >= 2 && (roots != 1 || nodes.last().map(|r| r.interval) != Some(Interval::new(1, n))) {
            return Err(Error::InternalStructure(format!("expected a single root (1..{n}), found {roots} top-level nodes")));
        }

        let mut frontier_owner = vec![None; n + 1];
        for (id, node) in nodes.iter().enumerate() {
            for (i, &f) in node.frontiers.iter().enumerate() {
                if frontier_owner[f].replace((id, i)).is_some() {
                    return Err(Error::InternalStructure(format!("{f} is a frontier of two strong intervals")));
                }
            }
        }
        Ok(ConservedTree {
            n,
            nodes,
            frontier_owner,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The node `(1..n)`; `None` only when `n == 1`.
    pub fn root(&self) -> Option<NodeId> {
        self.nodes.len().checked_sub(1)
    }

    pub fn node(&self, id: NodeId) -> &ConservedNode {
        &self.nodes[id]
    }

    /// Nodes in post-order.
    pub fn nodes(&self) -> &[ConservedNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The strong node and frontier indices `(i, j)` with `iv = (f_i..f_j)`,
    /// or `None` when `iv` is not a conserved interval of size at least two.
    /// For a strong interval this is its own node with `(0, last)`.
    pub fn locate(&self, iv: Interval) -> Option<(NodeId, usize, usize)> {
        if iv.size() < 2 || iv.hi > self.n {
            return None;
        }
        let (a, i) = self.frontier_owner[iv.lo]?;
        let (c, j) = self.frontier_owner[iv.hi]?;
        (a == c && i < j).then_some((a, i, j))
    }

    pub fn is_conserved(&self, iv: Interval) -> bool {
        iv.size() == 1 || self.locate(iv).is_some()
    }

    /// Smallest strong interval containing the conserved interval `iv`.
    pub fn container(&self, iv: Interval) -> Option<NodeId> {
        self.locate(iv).map(|(node, _, _)| node)
    }

    /// Depth-indented dump: `S (1..9) F={1,4,5,9} L=(.,.)`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let Some(root) = self.root() else {
            return out;
        };
        let mut walk = vec![(root, 0)];
        while let Some((id, depth)) = walk.pop() {
            let node = &self.nodes[id];
            let frontiers: Vec<String> = node.frontiers.iter().map(usize::to_string).collect();
            let link = match node.l_link {
                Some((a, b)) => format!("({a},{b})"),
                None => "(.,.)".to_owned(),
            };
            writeln!(
                out,
                "{:indent$}S {} F={{{}}} L={}",
                "",
                node.interval,
                frontiers.join(","),
                link,
                indent = 2 * depth
            )
            .unwrap();
            walk.extend(node.children.iter().rev().map(|&c| (c, depth + 1)));
        }
        out
    }

    /// The bracket expression of the irreducible intervals read along
    /// `perm`: each irreducible block gets an opening bracket after its first
    /// element and a closing bracket before its last one, both indexed by
    /// that element, e.g. `1 [1 -3 [3 ]2 -2 ]4 4`.
    pub fn bracket_expression(&self, perm: &SignedPermutation) -> String {
        let mut opens = vec![false; self.n + 1];
        let mut closes = vec![false; self.n + 1];
        for node in &self.nodes {
            for w in node.frontiers.windows(2) {
                let (first, last) = match perm.sign_of(w[0]) {
                    Sign::Plus => (w[0], w[1]),
                    Sign::Minus => (w[1], w[0]),
                };
                opens[first] = true;
                closes[last] = true;
            }
        }
        let mut parts = Vec::new();
        for q in 0..self.n {
            let x = perm.permutation().element(q);
            if closes[x] {
                parts.push(format!("]{x}"));
            }
            parts.push(perm.signed_element(q).to_string());
            if opens[x] {
                parts.push(format!("[{x}"));
            }
        }
        parts.join(" ")
    }

    pub fn dump(&self) -> Option<ConservedDump> {
        self.root().map(|r| self.dump_node(r))
    }

    fn dump_node(&self, id: NodeId) -> ConservedDump {
        let node = &self.nodes[id];
        ConservedDump {
            interval: node.interval,
            frontiers: node.frontiers.clone(),
            l_link: node.l_link,
            children: node.children.iter().map(|&c| self.dump_node(c)).collect(),
        }
    }
}

/// Nested dump of a conserved tree, the shape of the JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConservedDump {
    pub interval: Interval,
    pub frontiers: Vec<usize>,
    pub l_link: Option<(usize, usize)>,
    pub children: Vec<ConservedDump>,
}
