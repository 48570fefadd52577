//! PQ-tree of the common intervals of a permutation set.
//!
//! The nodes are the strong common intervals (those overlapping no other
//! common interval), arranged by inclusion. A node is a Q-node when the union
//! of some proper run of its children is itself common; then every run of
//! successive children is, and these unions are exactly the weak common
//! intervals. Every other internal node is a P-node.
//!
//! Construction goes through an interval generator of the family (see
//! [`crate::generator`]): for each adjacent pair `x, x+1` we take the
//! smallest common interval containing both. Each such interval is either a
//! strong interval or the union of two successive children of a Q-node, so
//! merging the overlapping ones yields exactly the internal nodes.

use std::fmt::Write as _;

use serde::Serialize;

use crate::generator::{Generator, MinTree};
use crate::perm::{Interval, PermutationSet};

pub type NodeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NodeKind {
    P,
    Q,
    Leaf,
}

impl NodeKind {
    pub fn letter(self) -> char {
        match self {
            NodeKind::P => 'P',
            NodeKind::Q => 'Q',
            NodeKind::Leaf => 'L',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PQNode {
    pub interval: Interval,
    pub kind: NodeKind,
    /// Ordered so that each child ends right before the next one starts.
    pub children: Vec<NodeId>,
    pub parent: Option<NodeId>,
}

#[derive(Debug, Clone)]
pub struct PQTree {
    // pre-order, sorted by (lo ascending, hi descending); the root is node 0
    nodes: Vec<PQNode>,
    post_order: Vec<NodeId>,
    leaf_of: Vec<NodeId>,
    layout: Layout,
}

/// A child as seen from its parent in [`Layout`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Slot {
    pub lo: u32,
    pub hi: u32,
    pub id: u32,
}

impl Slot {
    fn of(nodes: &[PQNode], id: NodeId) -> Self {
        let iv = nodes[id].interval;
        Slot {
            lo: iv.lo as u32,
            hi: iv.hi as u32,
            id: id as u32,
        }
    }

    pub fn size(self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn interval(self) -> Interval {
        Interval::new(self.lo as usize, self.hi as usize)
    }
}

/// The tree again as flat arrays in post-order, children of each node
/// stored contiguously. The bottom-up passes run over this copy so that
/// they read memory in order.
#[derive(Debug, Clone, Default)]
pub(crate) struct Layout {
    /// One entry per post-order rank plus a terminator; the slots of rank
    /// `r` end where those of rank `r + 1` start.
    ranks: Vec<Rank>,
    slots: Vec<Slot>,
}

#[derive(Debug, Clone, Copy)]
struct Rank {
    node: Slot,
    kind: NodeKind,
    first: u32,
}

impl Layout {
    fn new(nodes: &[PQNode], post_order: &[NodeId]) -> Self {
        let mut ranks = Vec::with_capacity(post_order.len() + 1);
        let mut slots = Vec::with_capacity(nodes.len());
        for &id in post_order {
            ranks.push(Rank {
                node: Slot::of(nodes, id),
                kind: nodes[id].kind,
                first: slots.len() as u32,
            });
            slots.extend(nodes[id].children.iter().map(|&c| Slot::of(nodes, c)));
        }
        ranks.push(Rank {
            node: Slot { lo: 0, hi: 0, id: u32::MAX },
            kind: NodeKind::Leaf,
            first: slots.len() as u32,
        });
        Layout { ranks, slots }
    }

    pub fn len(&self) -> usize {
        self.ranks.len() - 1
    }

    /// The node at post-order rank `r`, its kind and its children.
    pub fn at(&self, r: usize) -> (Slot, NodeKind, &[Slot]) {
        let Rank { node, kind, first } = self.ranks[r];
        let end = self.ranks[r + 1].first;
        (node, kind, &self.slots[first as usize..end as usize])
    }
}

/// Nested dump of a tree, the shape of the JSON output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeDump {
    pub interval: Interval,
    pub label: NodeKind,
    pub children: Vec<NodeDump>,
}

/// Strong common intervals of `set`, singletons and `(1..n)` included, in
/// pre-order (`lo` ascending, `hi` descending).
pub fn strong_common_intervals(set: &PermutationSet) -> Vec<Interval> {
    let generator = Generator::for_permutations(set.n(), set.permutations());
    strong_intervals(&generator)
}

fn strong_intervals(generator: &Generator) -> Vec<Interval> {
    let n = generator.len();
    let mut strong: Vec<Interval> = (1..=n).map(Interval::singleton).collect();
    if n >= 2 {
        strong.extend(merge_overlapping(minimal_pair_intervals(generator)));
    }
    strong.sort_unstable_by_key(|iv| (iv.lo, std::cmp::Reverse(iv.hi)));
    strong.dedup();
    strong
}

/// For each `x` in `1..n`, the smallest member containing both `x` and `x+1`.
fn minimal_pair_intervals(generator: &Generator) -> Vec<Interval> {
    let n = generator.len();
    let (max_right, min_left) = generator.extents();
    let neg_max_right: Vec<i64> = (1..=n).map(|i| -(max_right[i] as i64)).collect();
    let min_left: Vec<i64> = (1..=n).map(|j| min_left[j] as i64).collect();
    let by_start = MinTree::new(&neg_max_right);
    let by_end = MinTree::new(&min_left);
    (1..n)
        .map(|x| {
            // largest lo <= x of a member reaching x + 1
            let lo = by_start
                .last_at_most(0, x - 1, -(x as i64 + 1))
                .expect("(1..n) is a member")
                + 1;
            // smallest hi > x of a member reaching back to x
            let hi = by_end.first_at_most(x, n - 1, x as i64).expect("(1..n) is a member") + 1;
            Interval::new(lo, hi)
        })
        .collect()
}

/// Unions of the connected components of the overlap relation.
fn merge_overlapping(mut intervals: Vec<Interval>) -> Vec<Interval> {
    intervals.sort_unstable_by_key(|iv| (iv.lo, std::cmp::Reverse(iv.hi)));
    intervals.dedup();
    let mut done = Vec::new();
    let mut open: Vec<Interval> = Vec::new();
    for iv in intervals {
        while open.last().is_some_and(|top| top.hi < iv.lo) {
            done.push(open.pop().unwrap());
        }
        match open.last_mut() {
            Some(top) if top.hi < iv.hi => top.hi = iv.hi,
            _ => open.push(iv),
        }
    }
    done.extend(open);
    done
}

impl PQTree {
    pub fn build(set: &PermutationSet) -> Self {
        assert!(set.n() < u32::MAX as usize, "n = {} does not fit the compact layout", set.n());
        let generator = Generator::for_permutations(set.n(), set.permutations());
        let strong = strong_intervals(&generator);

        let mut nodes: Vec<PQNode> = Vec::with_capacity(strong.len());
        let mut stack: Vec<NodeId> = Vec::new();
        for iv in strong {
            while stack.last().is_some_and(|&top| !nodes[top].interval.contains(&iv)) {
                stack.pop();
            }
            let id = nodes.len();
            let parent = stack.last().copied();
            if let Some(p) = parent {
                nodes[p].children.push(id);
            }
            nodes.push(PQNode {
                interval: iv,
                kind: NodeKind::Leaf,
                children: Vec::new(),
                parent,
            });
            stack.push(id);
        }

        for id in 0..nodes.len() {
            let node = &nodes[id];
            if node.children.is_empty() {
                continue;
            }
            let kind = if node.children.len() == 2 {
                NodeKind::Q
            } else {
                let first = nodes[node.children[0]].interval;
                let second = nodes[node.children[1]].interval;
                if generator.contains(Interval::new(first.lo, second.hi)) {
                    NodeKind::Q
                } else {
                    NodeKind::P
                }
            };
            nodes[id].kind = kind;
        }

        let mut leaf_of = vec![usize::MAX; set.n() + 1];
        for (id, node) in nodes.iter().enumerate() {
            if node.kind == NodeKind::Leaf {
                leaf_of[node.interval.lo] = id;
            }
        }

        let mut post_order = Vec::with_capacity(nodes.len());
        let mut walk = vec![(0, false)];
        while let Some((id, expanded)) = walk.pop() {
            if expanded {
                post_order.push(id);
            } else {
                walk.push((id, true));
                walk.extend(nodes[id].children.iter().rev().map(|&c| (c, false)));
            }
        }

        let layout = Layout::new(&nodes, &post_order);
        PQTree {
            nodes,
            post_order,
            leaf_of,
            layout,
        }
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn n(&self) -> usize {
        self.nodes[0].interval.hi
    }

    pub fn node(&self, id: NodeId) -> &PQNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[PQNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Node ids with every child before its parent.
    pub fn post_order(&self) -> &[NodeId] {
        &self.post_order
    }

    pub(crate) fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn leaf(&self, x: usize) -> NodeId {
        self.leaf_of[x]
    }

    /// The node whose interval is exactly `iv`, if `iv` is strong.
    pub fn node_of(&self, iv: Interval) -> Option<NodeId> {
        let key = (iv.lo, std::cmp::Reverse(iv.hi));
        self.nodes
            .binary_search_by_key(&key, |node| (node.interval.lo, std::cmp::Reverse(node.interval.hi)))
            .ok()
    }

    /// Number of nodes on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        let mut depth = vec![0; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            depth[id] = node.parent.map_or(1, |p| depth[p] + 1);
        }
        depth.into_iter().max().unwrap_or(0)
    }

    /// Unions of successive children `c..d` of a Q-node, `c < d`, in
    /// lexicographic `(c, d)` order. The full union, which is the node's own
    /// interval, is left out unless `include_full`.
    pub fn weak_intervals_of_qnode(&self, id: NodeId, include_full: bool) -> impl Iterator<Item = Interval> + '_ {
        let node = &self.nodes[id];
        assert_eq!(node.kind, NodeKind::Q, "{} is not a Q-node", node.interval);
        let children = &node.children;
        let p = children.len();
        (0..p).flat_map(move |c| {
            (c + 1..p).filter_map(move |d| {
                if !include_full && c == 0 && d == p - 1 {
                    return None;
                }
                let lo = self.nodes[children[c]].interval.lo;
                let hi = self.nodes[children[d]].interval.hi;
                Some(Interval::new(lo, hi))
            })
        })
    }

    /// Depth-indented dump, one node per line: `P (1..9)`, `  Q (1..4)`, ...
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut walk = vec![(0, 0)];
        while let Some((id, depth)) = walk.pop() {
            let node = &self.nodes[id];
            writeln!(out, "{:indent$}{} {}", "", node.kind.letter(), node.interval, indent = 2 * depth).unwrap();
            walk.extend(node.children.iter().rev().map(|&c| (c, depth + 1)));
        }
        out
    }

    pub fn dump(&self) -> NodeDump {
        self.dump_node(0)
    }

    fn dump_node(&self, id: NodeId) -> NodeDump {
        let node = &self.nodes[id];
        NodeDump {
            interval: node.interval,
            label: node.kind,
            children: node.children.iter().map(|&c| self.dump_node(c)).collect(),
        }
    }
}
