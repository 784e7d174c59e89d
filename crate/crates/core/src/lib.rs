//! Weight-graded Lie algebra homology of Hamiltonian vector fields on
//! tori `T^n` and on `R^n`.
//!
//! Functions are expanded in graded bases ([`basis`]), bracketed by the
//! top-degree part of a Poisson bracket ([`bracket`]), and assembled into
//! finite chain complexes, one per weight ([`complex`]). Ranks are computed
//! exactly ([`linalg`]) to produce Betti tables and first Betti numbers
//! ([`homology`]), which are checked against closed formulas.

pub mod basis;
pub mod bracket;
pub mod cache;
pub mod cli;
pub mod complex;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod tables;
pub mod verify;

pub use basis::{BasisKind, BasisWord, Coeff, LinearCombination};
pub use bracket::{bracket_top, PoissonStructure};
pub use complex::{boundary_matrix, chain_basis, Model, WeightComplex};
pub use error::{Error, Result};
pub use homology::{betti_table, corank_computed, BettiOptions, BettiTable};
pub use linalg::{rank, RankPolicy, SparseRationalMatrix};
