pub mod basis;
pub mod coherent;
pub mod config;
pub mod generators;
pub mod error;
pub mod export;
pub mod grassmann;
pub mod harness;
pub mod operator;
pub mod quadrature;
pub mod report;
pub mod structure;
pub mod superspace;
pub mod symbols;

pub use error::{Error, Result};
pub use num_complex::Complex64;
