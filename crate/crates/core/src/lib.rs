#![allow(clippy::type_complexity, clippy::needless_range_loop)]

pub mod algebra;
pub mod arc;
pub mod category;
pub mod error;
pub mod hall;
pub mod homology;
pub mod lattice;
pub mod matrix;
pub mod mutation;
pub mod picture;
pub mod rep;
pub mod strings;

pub use algebra::MonomialAlgebra;
pub use category::{ModuleCategory, ModuleClass};
pub use error::{Error, Result};
