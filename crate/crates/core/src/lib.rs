//! State surfaces of link diagrams.
//!
//! Parse a diagram, pick a Kauffman state, build its state graph and ribbon surface,
//! and certify when the surface is essential (adequate and homogeneous states).

pub mod certify;
pub mod diagram;
mod dsu;
pub mod harness;
pub mod oracle;
pub mod state;
pub mod stategraph;
pub mod surface;

pub use diagram::{parse_dt, parse_notation, parse_pd, DiagramError, LinkDiagram};
pub use state::{Sign, State};
