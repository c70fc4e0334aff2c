//! Exact verification of Stembridge-type recurrences for the graded
//! multiplicity of the zero weight space in small representations of
//! types B and C.

pub mod closedforms;
pub mod laurent;
pub mod oracles;
pub mod qcomb;
pub mod rootsys;
pub mod stembridge;
pub mod verify;

pub use laurent::{Coeff, LaurentPoly2, RationalFn, SignedMono};
pub use rootsys::{Family, RootSystem, Weight};
