//! Modular representations of symmetric groups labelled by two-part
//! partitions: combinatorial tables, explicit module construction over
//! finite fields, generic Jordan types, rank varieties and complexities.

pub mod complexity;
pub mod error;
pub mod jordan;
pub mod linalg;
pub mod modp;
pub mod partition;
pub mod perm;
pub mod specht;
pub mod subgroups;
pub mod tables;
pub mod variety;

pub use error::{Error, Result};
