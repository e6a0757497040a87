//! Rooted phylogenetic trees and networks, with algorithms for normal and
//! tree-child networks: display sets, reconstruction of a binary normal
//! network from its display set, cherry-picking sequences and minimum
//! hybridisation search, and shortcut elimination for pairs of trees.

pub mod classify;
pub mod display;
pub mod error;
pub mod generate;
pub mod iso;
pub mod label;
pub mod network;
pub mod newick;
pub mod normalize;
pub mod reconstruct;
pub mod sequence;
pub mod tree;

/// Vertex identifier, an index into a tree's or network's vertex arena.
pub type VertexId = usize;

pub use classify::{classify, cluster, find_cherries, Cherries, NetworkClassification, Shortcut};
pub use display::{display_set, displays, embedding_to_tree, enumerate_embeddings, DisplaySet, Embedding};
pub use error::{Error, Result};
pub use iso::{networks_isomorphic, trees_isomorphic};
pub use label::TaxonLabel;
pub use network::{NetworkEditor, PhyloNetwork};
pub use newick::{parse_network, parse_networks, parse_tree, parse_trees, serialize_network, serialize_tree};
pub use normalize::{eliminate_shortcut_step, initial_tree_child_pair, normalize_pair, ShortcutMeasure};
pub use reconstruct::{reconstruct, ReconstructionOutcome, Verdict};
pub use sequence::{CherryPick, PickSequence, SearchMode, SearchOutcome};
pub use tree::{caterpillar, is_refinement, PhyloTree, TreeShape};
