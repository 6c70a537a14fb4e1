//! Poset documents and drawings.

mod document;
mod draw;

pub use document::{Metadata, PosetDocument, Realizers, SCHEMA_VERSION};
pub use draw::{
    arcs_dot, arcs_svg, dominance_coordinates, dominance_dot, dominance_svg, queue_color,
};
