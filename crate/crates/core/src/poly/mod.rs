//! Exact polynomial and ideal arithmetic over Q.

pub mod decompose;
pub mod factor;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod mono;
pub mod parse;
pub mod polynomial;
pub mod ring;

pub use groebner::GBasis;
pub use ideal::Ideal;
pub use mono::{Mono, MonomialOrder};
pub use polynomial::{q, Poly, Q};
pub use ring::PolyRing;
