//! Enumerating and counting b-nested common intervals on a [`PQTree`].
//!
//! A common interval is b-nested when it is a singleton or strictly contains
//! a b-nested common interval at most `b` elements smaller. On the PQ-tree
//! this is decided locally: a P-node qualifies iff one of its children is
//! b-nested and at least `|I| - b` long; a run of successive Q-children
//! qualifies iff at most one of them is b-large (longer than `b`) and that
//! one is b-nested.

use serde::Serialize;

use crate::pqtree::{NodeId, NodeKind, PQTree};
use crate::perm::Interval;

/// Smallest interval size reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MinSize {
    /// Report singletons too.
    One,
    /// Report intervals of size at least two.
    Two,
}

impl MinSize {
    pub fn admits(self, iv: Interval) -> bool {
        self == MinSize::One || iv.size() >= 2
    }
}

impl TryFrom<usize> for MinSize {
    type Error = usize;

    fn try_from(value: usize) -> Result<Self, usize> {
        match value {
            1 => Ok(MinSize::One),
            2 => Ok(MinSize::Two),
            other => Err(other),
        }
    }
}

/// Result of an enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NestedReport {
    pub b: usize,
    pub min_size: MinSize,
    pub intervals: Vec<Interval>,
    /// Loop iterations spent generating intervals from runs of children
    /// (Q-nodes) or frontier pairs, a witness of output sensitivity.
    pub scan_iterations: u64,
}

impl NestedReport {
    pub fn count(&self) -> u64 {
        self.intervals.len() as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeAnnotation {
    pub node: NodeId,
    pub size: usize,
    pub b_nested: bool,
}

/// Per-node b-nested flags for one value of `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    b: usize,
    b_nested: Vec<bool>,
}

impl Annotation {
    pub fn b(&self) -> usize {
        self.b
    }

    pub fn is_b_nested(&self, id: NodeId) -> bool {
        self.b_nested[id]
    }

    pub fn get(&self, tree: &PQTree, id: NodeId) -> NodeAnnotation {
        NodeAnnotation {
            node: id,
            size: tree.node(id).interval.size(),
            b_nested: self.b_nested[id],
        }
    }
}

pub fn annotate(tree: &PQTree, b: usize) -> Annotation {
    assert!(b >= 1, "b must be positive");
    let layout = tree.layout();
    let mut b_nested = vec![false; tree.len()];
    for r in 0..layout.len() {
        let (node, kind, children) = layout.at(r);
        let size = node.size();
        b_nested[node.id as usize] = match kind {
            NodeKind::Leaf => true,
            NodeKind::P => children
                .iter()
                .any(|c| b_nested[c.id as usize] && c.size() + b >= size),
            NodeKind::Q => {
                let mut large = children.iter().filter(|c| c.size() > b);
                match (large.next(), large.next()) {
                    (None, _) => true,
                    (Some(c), None) => b_nested[c.id as usize],
                    _ => false,
                }
            }
        };
    }
    Annotation { b, b_nested }
}

/// Walks the tree in post-order and hands every b-nested common interval to
/// `emit`, each exactly once. Within a Q-node intervals come in
/// lexicographic `(first child, last child)` order. Returns the number of
/// Q-scan loop iterations.
pub fn for_each_b_nested_common(
    tree: &PQTree,
    annotation: &Annotation,
    min_size: MinSize,
    mut emit: impl FnMut(Interval),
) -> u64 {
    let b = annotation.b;
    let layout = tree.layout();
    let mut iterations = 0;
    for r in 0..layout.len() {
        let (node, kind, children) = layout.at(r);
        match kind {
            NodeKind::Leaf => {
                if min_size == MinSize::One {
                    emit(node.interval());
                }
            }
            NodeKind::P => {
                if annotation.b_nested[node.id as usize] {
                    emit(node.interval());
                }
            }
            NodeKind::Q => {
                let usable = |d: usize| children[d].size() <= b || annotation.b_nested[children[d].id as usize];
                let p = children.len();
                for c in 0..p {
                    let mut large = 0;
                    let mut d = c;
                    while d < p && usable(d) && large <= 1 {
                        iterations += 1;
                        if children[d].size() > b {
                            large += 1;
                        }
                        if c < d && large <= 1 {
                            emit(Interval::new(children[c].lo as usize, children[d].hi as usize));
                        }
                        d += 1;
                    }
                }
            }
        }
    }
    iterations
}

pub fn enumerate_b_nested_common(tree: &PQTree, b: usize, min_size: MinSize) -> NestedReport {
    let annotation = annotate(tree, b);
    let mut intervals = Vec::new();
    let scan_iterations = for_each_b_nested_common(tree, &annotation, min_size, |iv| intervals.push(iv));
    NestedReport {
        b,
        min_size,
        intervals,
        scan_iterations,
    }
}

/// How a Q-node child takes part in b-nested runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChildClass {
    /// Size at most `b`.
    Small,
    /// Larger than `b` and b-nested: may appear once in a run.
    LargeNested,
    /// Larger than `b` and not b-nested: no run crosses it.
    Blocking,
}

/// Runs containing one fixed b-large child with `left` small neighbours
/// available on its left and `right` on its right, the child alone excluded.
pub fn intervals_through_large(left: u64, right: u64) -> u64 {
    left * (right + 1) + right
}

/// Runs of at least two children inside a maximal run of `h` small ones.
pub fn intervals_in_small_run(h: u64) -> u64 {
    h * h.saturating_sub(1) / 2
}

/// Per-part breakdown of the b-nested runs of one Q-node.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QNodeCount {
    /// One entry per b-large b-nested child, left to right.
    pub through_large: Vec<u64>,
    /// One entry per maximal run of small children, left to right.
    pub small_runs: Vec<u64>,
}

impl QNodeCount {
    pub fn total(&self) -> u64 {
        self.through_large.iter().sum::<u64>() + self.small_runs.iter().sum::<u64>()
    }
}

/// Counts the b-nested unions of at least two successive children given
/// only the class of each child, in time linear in their number.
pub fn count_q_children(classes: &[ChildClass]) -> QNodeCount {
    let p = classes.len();
    let mut small_left = vec![0u64; p];
    let mut small_right = vec![0u64; p];
    let mut run = 0;
    for (i, class) in classes.iter().enumerate() {
        small_left[i] = run;
        run = if *class == ChildClass::Small { run + 1 } else { 0 };
    }
    run = 0;
    for (i, class) in classes.iter().enumerate().rev() {
        small_right[i] = run;
        run = if *class == ChildClass::Small { run + 1 } else { 0 };
    }

    let mut count = QNodeCount::default();
    let mut run = 0;
    for (i, class) in classes.iter().enumerate() {
        if *class == ChildClass::Small {
            run += 1;
            continue;
        }
        if run > 0 {
            count.small_runs.push(intervals_in_small_run(run));
            run = 0;
        }
        if *class == ChildClass::LargeNested {
            count.through_large.push(intervals_through_large(small_left[i], small_right[i]));
        }
    }
    if run > 0 {
        count.small_runs.push(intervals_in_small_run(run));
    }
    count
}

/// Number of b-nested common intervals, in time linear in the tree size.
pub fn count_b_nested_common(tree: &PQTree, b: usize, min_size: MinSize) -> u64 {
    let annotation = annotate(tree, b);
    count_annotated(tree, &annotation, min_size)
}

pub fn count_annotated(tree: &PQTree, annotation: &Annotation, min_size: MinSize) -> u64 {
    let b = annotation.b;
    let layout = tree.layout();
    let mut classes = Vec::new();
    let mut total = 0;
    for r in 0..layout.len() {
        let (node, kind, children) = layout.at(r);
        total += match kind {
            NodeKind::Leaf => u64::from(min_size == MinSize::One),
            NodeKind::P => u64::from(annotation.b_nested[node.id as usize]),
            NodeKind::Q => {
                classes.clear();
                classes.extend(children.iter().map(|c| {
                    if c.size() <= b {
                        ChildClass::Small
                    } else if annotation.b_nested[c.id as usize] {
                        ChildClass::LargeNested
                    } else {
                        ChildClass::Blocking
                    }
                }));
                count_q_children(&classes).total()
            }
        };
    }
    total
}
