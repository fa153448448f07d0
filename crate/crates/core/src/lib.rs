//! Graded enriched characteristic cycles, the Vogel-style Pi/Delta process, and
//! Le-Vogel modules, computed exactly over the rationals.

pub mod corpus;
pub mod cycles;
pub mod diagnostics;
pub mod error;
pub mod gecc;
pub mod geom;
pub mod pipeline;
pub mod poly;
pub mod vogel;

pub use error::{Error, Result};
