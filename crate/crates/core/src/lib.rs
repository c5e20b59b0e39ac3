pub mod bimodule;
pub mod category;
pub mod cli;
pub mod comma;
pub mod dg_kmod;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod functor;
pub mod linalg;
pub mod presets;
pub mod random;
pub mod report;
pub mod triangular;

pub use error::{Error, Result};
