pub mod artinian;
pub mod canonical;
pub mod certify;
pub mod cli;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod linalg;
pub mod scalar;
pub mod topology;

pub use error::{Error, Result};
