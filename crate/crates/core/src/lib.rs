pub mod error;
pub mod exactmath;
pub mod par;

pub use error::{Error, Result};
pub mod coxeter;
pub mod cherednik;
pub mod polyrep;
pub mod report;
pub mod subalgebra;
