//! Gene clusters as b-nested common and conserved intervals of permutations.
//!
//! Given `K` permutations of the same `n` elements (genomes without
//! duplicated genes), a *common interval* is a set of elements that is
//! contiguous in every permutation. For signed permutations framed by
//! `+1 .. +n`, a *conserved interval* is a common interval whose block starts
//! with `+lo` and ends with `+hi`, or starts with `-hi` and ends with `-lo`, in
//! every permutation. Such an interval is *b-nested* when it is a singleton
//! or strictly contains a b-nested interval of the same kind having at least
//! `|I| - b` elements.
//!
//! * [`pqtree`] builds the PQ-tree of common intervals and
//!   [`common_enum`] enumerates or counts the b-nested ones from it.
//! * [`conserved_tree`] builds the inclusion tree of strong conserved
//!   intervals with their frontier sets and [`conserved_enum`] enumerates or
//!   counts the b-nested ones.
//! * [`oracle`] holds brute-force versions of every definition.
//!
//! All algorithms expect the first permutation to be the identity;
//! [`PermutationSet::normalize`] renumbers arbitrary input accordingly.

pub mod common_enum;
pub mod conserved_enum;
pub mod conserved_tree;
pub mod error;
pub mod generate;
pub mod generator;
pub mod oracle;
pub mod perm;
pub mod pqtree;
pub mod text;

pub use common_enum::{count_b_nested_common, enumerate_b_nested_common, MinSize, NestedReport};
pub use conserved_enum::{count_b_nested_conserved, enumerate_b_nested_conserved};
pub use conserved_tree::{ConservedNode, ConservedTree};
pub use error::{Error, Result};
pub use perm::{Interval, Permutation, PermutationSet, RawLabel, Sign, SignedPermutation};
pub use pqtree::{NodeKind, PQNode, PQTree};
