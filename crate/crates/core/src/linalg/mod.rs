//! Exact linear algebra over finite fields and polynomial matrices.

pub mod field;
pub mod fp;
pub mod matrix;
pub mod polymatrix;

pub use field::{max_degree_below, Elem, FieldCtx, FieldInfo};
pub use fp::FpMatrix;
pub use matrix::Matrix;
pub use polymatrix::{generic_power_ranks, generic_rank, GenericConfig, Poly, PolyMatrix, RankCertificate};
