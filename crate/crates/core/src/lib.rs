//! Graded homological algebra over polynomial rings and hypersurfaces.

pub mod audit;
pub mod error;
pub mod freemap;
pub mod groebner;
pub mod invariants;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod report;
pub mod resolution;
pub mod rigidity;
pub mod ring;
pub mod script;
pub mod session;

pub use error::{Error, Result};
