//! Finite strict n-categories, Joyal's cell category Θ_n, presheaves on it and
//! a bounded lifting-problem solver.

pub mod boxcalc;
pub mod catalog;
pub mod error;
pub mod lifting;
pub mod ncat;
pub mod presheaf;
pub mod site;
pub mod theta;

pub use error::{Error, Result};
