pub mod codegen;
pub mod convergence;
pub mod error;
pub mod ito_integrals;
pub mod montecarlo;
pub mod schemes;
pub mod tables;
pub mod wiener;

pub use error::{Error, Result};
