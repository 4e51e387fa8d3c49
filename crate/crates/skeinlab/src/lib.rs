//! Exact link polynomials: Jones, HOMFLYPT and their tied-link generalisations, together
//! with the bt-algebra of braids and ties and its Markov trace.

pub mod bt_algebra;
pub mod classical;
pub mod data;
pub mod diagram;
mod error;
pub mod exec;
pub mod poly;
pub mod reproduce;
pub mod theta;

pub use error::{Error, Result};
