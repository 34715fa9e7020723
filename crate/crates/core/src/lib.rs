pub mod algebra;
pub mod error;
pub mod harness;
pub mod hochschild;
pub mod jacobi;
pub mod lie;
pub mod linalg;
pub mod report;

pub use error::{Error, Result};
