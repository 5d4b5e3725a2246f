//! Approximation fixpoint theory over finite posets.

pub mod checks;
pub mod cli;
pub mod encoders;
pub mod engine;
pub mod fixpoint;
pub mod flower;
pub mod framework;
pub mod hierarchy;
pub mod interval;
pub mod order;
pub mod report;

mod error;

pub use error::{Error, Result};
