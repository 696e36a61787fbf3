//! Rank invariants of spaces of quadrics and the smoothability tests built
//! on them.

pub mod betti;
pub mod dimension;
pub mod koszul;
pub mod linalg;
pub mod obstruction;
pub mod quadric;
