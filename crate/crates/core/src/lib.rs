//! Thickness, ropelength and quadrisecant analysis of closed polygonal curves,
//! with lower bounds on ropelength derived from quadrisecant order types.

pub mod bounds;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod oracles;
pub mod quadrisecant;
pub mod thickness;

pub use error::{Error, Result};
pub use geometry::{ArcPosition, Point3, PolyKnot, Segment, Vec3};
pub use quadrisecant::{find_quadrisecants, OrderType, Quadrisecant};
pub use thickness::{thickness_and_ropelength, ThicknessReport};
