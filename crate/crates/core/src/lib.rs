//! Exact construction, validation and classification of finite monoidal
//! groupoids through Schreier systems and monoid cohomology.

#![allow(clippy::needless_range_loop)]

pub mod classification;
pub mod cli;
pub mod coefficients;
pub mod cohomology;
pub mod correspondence;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod groupoid;
pub mod io;
pub mod monoid;
pub mod report;
pub mod schreier;
pub mod selftest;

pub use error::{Error, Result};
