//! Detection and quantification of bipartite entanglement by covering the
//! separable set with a minimum-volume ellipsoid in Bloch space, plus the
//! classical and quantum information quantities needed to benchmark it:
//! exact PPT-set projections, channel capacities, Holevo bounds and
//! protocol verifiers.

pub mod convexgeo;
pub mod entdetect;
pub mod error;
pub mod infochannel;
pub mod io;
pub mod qstate;

pub use error::{Error, Result};
