//! Edge-labelled graphs, triangle classification, cycles and file formats.

pub mod cycle;
pub mod format;
pub mod graph;
pub mod morph;
pub mod triangle;

pub use cycle::{canonical_cycle, cycle_to_graph, LabelledCycle};
pub use format::{parse_graph, serialize_graph};
pub use graph::{is_member, LabelledGraph};
pub use morph::{automorphisms, homomorphisms, is_homomorphism};
pub use triangle::{classify_triangle, Bound, TriangleTable, TriangleVerdict};
