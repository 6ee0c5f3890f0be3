//! Odd-edge magic-type total colorings of graphs: validators, transforms
//! between labeling classes, leaf-adding constructions, caterpillar
//! labelings, graphic-lattice composition, partition counting and a
//! Topcode-matrix codec with a twin-key authentication demo.

pub mod batch;
pub mod canon;
pub mod caterpillar;
pub mod coloring;
pub mod counting;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod lattice;
pub mod rla;
pub mod topcode;
pub mod transforms;
pub mod validators;
pub mod vault;

pub use coloring::{Color, ColoredGraph, MagicKind, TotalColoring};
pub use error::{Error, Result};
pub use graph::{Edge, Graph, LeafPlan, VertexId};
