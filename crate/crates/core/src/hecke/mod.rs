//! The Iwahori-Hecke algebra of a finite Weyl group, its Kazhdan-Lusztig
//! basis and the cells it determines.

mod algebra;
mod cells;
mod kl;
mod laurent;

pub use algebra::{HeckeAlgebra, HeckeElement};
pub use cells::{CellKind, CellPartition};
pub use kl::{KlTable, PalindromeReport, QPoly};
pub use laurent::LaurentPoly;
