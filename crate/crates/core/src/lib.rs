//! Exact computations of canonical traces, Teter numbers and related
//! invariants for generic determinantal rings, codimension-two rings given by
//! a Hilbert–Burch matrix, three-generated numerical semigroup rings and the
//! generic height-two monomial ideals attached to trees.
//!
//! Everything is exact over the rationals. Statements about the quotient
//! ring of a generic determinantal ideal are transported to an honest
//! polynomial ring by the substitution `x_ij -> (Y*Z)_ij`, where minimal
//! generator counts of equigenerated ideals become ranks of coefficient
//! matrices.

pub mod determinantal;
pub mod error;
pub mod hilbert_burch;
pub mod ideal;
pub mod linalg;
pub mod poly;
pub mod tree;

pub use error::{Error, Result, TreeError};
pub use ideal::{GeneratorIdeal, MonomialIdeal};
pub use poly::{Monomial, Polynomial, Ring, Var};
