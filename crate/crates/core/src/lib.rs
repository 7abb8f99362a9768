//! Quivers with frozen subquivers, their (relative) Ginzburg dg-algebras,
//! the Chekanov-Eliashberg model built as a colimit of local pieces, and a
//! verification suite that mechanically checks the comparison maps between
//! the two sides: chain maps, retractions, homotopies, the commuting
//! square, and a degree-0 path-count oracle.
//!
//! Everything is computed with exact coefficients (rationals by default, a
//! prime field as a cross-check backend) over free graded path algebras, so
//! every identity is checked on the nose, not numerically.

pub mod ce;
pub mod dg;
pub mod export;
pub mod ginzburg;
pub mod quiver;
pub mod verify;
