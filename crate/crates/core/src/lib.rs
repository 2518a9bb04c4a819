//! Verification engine for special partial matchings on finite posets and
//! for the Bruhat combinatorics of (signed) involutions.

pub mod cli;
pub mod error;
pub mod fixed_point;
pub mod labels;
pub mod matching;
pub mod poset;
pub mod shellability;
pub mod signed;
pub mod topology;

pub use error::{Error, Result};
