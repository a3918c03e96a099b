//! Exact character tables of finite groups and the amenability constants of
//! their central Fourier algebras.
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod chartab;
pub mod cli;
pub mod closed_forms;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod rational;
pub mod amenability;

pub use error::{Error, Result};
