pub mod cli;
pub mod cuspidal;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod flags;
pub mod group;
pub mod hecke;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod weyl;

pub use error::{Error, Result};
