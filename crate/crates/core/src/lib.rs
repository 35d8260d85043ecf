//! Build SPR, NNI and TBR adjacency graphs over collections of phylogenetic
//! trees by indexing their two-component agreement forests.
//!
//! ```
//! use treescape::{construct_spr_graph, Rootedness, Tree};
//!
//! let trees: Vec<Tree> = ["((1,(2,3)),(4,5));", "(1,((2,3),(4,5)));", "(((4,5),1),(2,3));"]
//!     .iter()
//!     .map(|s| Tree::from_newick(s, Rootedness::Rooted).unwrap())
//!     .collect();
//! let build = construct_spr_graph(&trees).unwrap();
//! assert_eq!(build.graph.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
//! ```

pub mod afcontainer;
pub mod canonical;
pub mod error;
pub mod forestgen;
pub mod graph;
pub mod oracle;
pub mod tree;
pub mod trie;

pub use afcontainer::{AfContainer, ContainerMode, TreeId};
pub use canonical::{
    decode_forest, decode_tree, sdlnewick_forest, sdlnewick_tree, CanonicalString, Encoder,
    OrderingKey,
};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use forestgen::{nni_moves, rspr_forest_keys, tbr_forest_keys, uspr_forest_keys, KeyKind};
pub use graph::{
    construct_graph, construct_nni_graph, construct_spr_graph, construct_tbr_graph, AdjacencyGraph,
    GraphBuild, MoveKind, VertexLabeling,
};
pub use oracle::OracleMove;
pub use tree::{
    parse_newick, Component, Edge, Forest, Label, Node, NodeId, RootMarker, Rootedness, Strictness,
    Taxon, Tree,
};
