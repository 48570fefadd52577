//! Enumerating and counting b-nested conserved intervals on a
//! [`ConservedTree`].
//!
//! A frontier step `(f_l..f_{l+1})` of a strong interval is a *b-gap* when it
//! has more than `b + 1` elements, and a *good* b-gap when some b-nested
//! child of the node sits in it with at least `|step| - b` elements. A
//! conserved interval `(f_i..f_j)` is b-nested iff the steps between `i` and
//! `j` hold no b-gap, or exactly one b-gap which is good.

use serde::Serialize;

use crate::common_enum::{count_q_children, ChildClass, MinSize, NestedReport};
use crate::conserved_tree::{ConservedNode, ConservedTree, NodeId};
use crate::perm::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StepMark {
    /// At most `b + 1` elements.
    Small,
    Gap,
    GoodGap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapAnnotation {
    pub node: NodeId,
    /// One mark per frontier step.
    pub gap_at: Vec<StepMark>,
    pub node_b_nested: bool,
}

impl GapAnnotation {
    pub fn gap_count(&self) -> usize {
        self.gap_at.iter().filter(|m| **m != StepMark::Small).count()
    }

    /// Verdict for the frontier pair `(f_i..f_j)`, `i < j`.
    pub fn pair_is_b_nested(&self, i: usize, j: usize) -> bool {
        assert!(i < j && j < self.gap_at.len() + 1);
        let mut gaps = self.gap_at[i..j].iter().filter(|m| **m != StepMark::Small);
        match (gaps.next(), gaps.next()) {
            (None, _) => true,
            (Some(mark), None) => *mark == StepMark::GoodGap,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConservedAnnotation {
    b: usize,
    nodes: Vec<GapAnnotation>,
}

impl ConservedAnnotation {
    pub fn b(&self) -> usize {
        self.b
    }

    pub fn node(&self, id: NodeId) -> &GapAnnotation {
        &self.nodes[id]
    }

    pub fn is_b_nested(&self, id: NodeId) -> bool {
        self.nodes[id].node_b_nested
    }
}

fn initial_marks(node: &ConservedNode, b: usize) -> Vec<StepMark> {
    node.frontiers
        .windows(2)
        .map(|w| if w[1] - w[0] + 1 > b + 1 { StepMark::Gap } else { StepMark::Small })
        .collect()
}

/// One post-order pass: each b-nested child long enough for its
/// `l_link` step marks that step good if it is a gap; then a node is
/// b-nested iff it has no gap or a single, good one.
pub fn annotate_conserved(tree: &ConservedTree, b: usize) -> ConservedAnnotation {
    assert!(b >= 1, "b must be positive");
    let mut nodes: Vec<GapAnnotation> = tree
        .nodes()
        .iter()
        .enumerate()
        .map(|(id, node)| GapAnnotation {
            node: id,
            gap_at: initial_marks(node, b),
            node_b_nested: false,
        })
        .collect();
    for (id, node) in tree.nodes().iter().enumerate() {
        let nested = {
            let ann = &nodes[id];
            let mut gaps = ann.gap_at.iter().filter(|m| **m != StepMark::Small);
            match (gaps.next(), gaps.next()) {
                (None, _) => true,
                (Some(mark), None) => *mark == StepMark::GoodGap,
                _ => false,
            }
        };
        nodes[id].node_b_nested = nested;
        if let (true, Some(parent), Some((lo, hi))) = (nested, node.parent, node.l_link) {
            let step = tree.node(parent).step_index(lo, hi).expect("l_link is a parent step");
            let mark = &mut nodes[parent].gap_at[step];
            if *mark != StepMark::Small && node.interval.size() + b > hi - lo {
                *mark = StepMark::GoodGap;
            }
        }
    }
    ConservedAnnotation { b, nodes }
}

/// Verdicts for every frontier pair `(f_i..f_j)` of a node, the node's own
/// interval included, in lexicographic `(i, j)` order.
pub fn weak_b_nested(tree: &ConservedTree, id: NodeId, annotation: &ConservedAnnotation) -> Vec<(Interval, bool)> {
    let node = tree.node(id);
    let ann = annotation.node(id);
    let k = node.frontiers.len();
    let mut out = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        let mut gaps = 0;
        let mut good = true;
        for j in i + 1..k {
            match ann.gap_at[j - 1] {
                StepMark::Small => {}
                StepMark::Gap => {
                    gaps += 1;
                    good = false;
                }
                StepMark::GoodGap => gaps += 1,
            }
            let verdict = gaps == 0 || (gaps == 1 && good);
            out.push((Interval::new(node.frontiers[i], node.frontiers[j]), verdict));
        }
    }
    out
}

/// Hands every b-nested conserved interval to `emit`, each exactly once:
/// singletons first (if requested), then per node in post-order the
/// frontier pairs strictly inside the node followed by the node itself.
/// Returns the number of frontier-scan loop iterations.
pub fn for_each_b_nested_conserved(
    tree: &ConservedTree,
    annotation: &ConservedAnnotation,
    min_size: MinSize,
    mut emit: impl FnMut(Interval),
) -> u64 {
    if min_size == MinSize::One {
        (1..=tree.n()).map(Interval::singleton).for_each(&mut emit);
    }
    let mut iterations = 0;
    for (id, node) in tree.nodes().iter().enumerate() {
        let marks = &annotation.node(id).gap_at;
        let f = &node.frontiers;
        let k = f.len();
        for i in 0..k {
            let mut good_gaps = 0;
            for j in i + 1..k {
                iterations += 1;
                match marks[j - 1] {
                    StepMark::Small => {}
                    StepMark::GoodGap if good_gaps == 0 => good_gaps = 1,
                    _ => break,
                }
                if !(i == 0 && j == k - 1) {
                    emit(Interval::new(f[i], f[j]));
                }
            }
        }
        if annotation.is_b_nested(id) {
            emit(node.interval);
        }
    }
    iterations
}

pub fn enumerate_b_nested_conserved(tree: &ConservedTree, b: usize, min_size: MinSize) -> NestedReport {
    let annotation = annotate_conserved(tree, b);
    let mut intervals = Vec::new();
    let scan_iterations = for_each_b_nested_conserved(tree, &annotation, min_size, |iv| intervals.push(iv));
    NestedReport {
        b,
        min_size,
        intervals,
        scan_iterations,
    }
}

/// Number of b-nested frontier pairs of one node, its own interval
/// included: every step that is small or a good gap counts once by itself,
/// and the longer runs follow the same arithmetic as runs of Q-node
/// children, with good gaps playing the b-large b-nested children.
pub fn count_node(annotation: &GapAnnotation) -> u64 {
    let classes: Vec<ChildClass> = annotation
        .gap_at
        .iter()
        .map(|m| match m {
            StepMark::Small => ChildClass::Small,
            StepMark::GoodGap => ChildClass::LargeNested,
            StepMark::Gap => ChildClass::Blocking,
        })
        .collect();
    let single_steps = classes.iter().filter(|c| **c != ChildClass::Blocking).count() as u64;
    single_steps + count_q_children(&classes).total()
}

pub fn count_b_nested_conserved(tree: &ConservedTree, b: usize, min_size: MinSize) -> u64 {
    let annotation = annotate_conserved(tree, b);
    count_annotated(tree, &annotation, min_size)
}

pub fn count_annotated(tree: &ConservedTree, annotation: &ConservedAnnotation, min_size: MinSize) -> u64 {
    let singletons = if min_size == MinSize::One { tree.n() as u64 } else { 0 };
    singletons + (0..tree.len()).map(|id| count_node(annotation.node(id))).sum::<u64>()
}
