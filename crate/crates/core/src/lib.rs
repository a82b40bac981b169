//! Construction, verification and bounds for optimal two-period traffic
//! groomings `N(n,v;4,C')` of unidirectional SONET/WDM rings.
//!
//! A grooming is a partition of the edges of `K_n` into wavelengths. Each
//! wavelength carries at most four edges, and at most `C'` of them may have
//! both ends in the second-period subset `V = {0..v-1}`. The drop cost is the
//! total number of vertices touched, summed over wavelengths.

pub mod construct;
pub mod design;
pub mod error;
pub mod formulas;
pub mod model;
pub mod oracle;

#[doc(hidden)]
pub mod cli;

pub use error::{Error, Result};
pub use model::{
    classify_edge, count_triangles, drop_cost, verify, Block, Decomposition, Edge, EdgeClass, Instance, Shape,
    VerificationReport, Vertex, ViolationKind, Wavelength,
};
