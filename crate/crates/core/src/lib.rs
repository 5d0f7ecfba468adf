pub mod bits;
pub mod catalog;
pub mod dyadic;
pub mod enumerate;
pub mod error;
pub mod finspace;
pub mod metrize;
pub mod monoid;
pub mod quniform;
pub mod relalg;
pub mod search;
pub mod suite;

pub use error::{Error, Result};
