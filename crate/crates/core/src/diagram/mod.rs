//! Planar diagrams built from arcs, wide edges, double lines and trivalent
//! vertices, and the Koszul factorizations attached to them.

mod build;
mod crossing;
mod model;
mod parse;

pub use build::{boundary_potential, build_primitive, glue, glue_map};
pub use crossing::{crossing_complex, resolution_mf, CrossingComplex, CrossingSign, Resolution};
pub use model::{Diagram, End, Glue, Param, Piece, PieceKind, Pos};
pub use parse::parse_diagram;
