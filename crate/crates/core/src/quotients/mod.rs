//! Quotients by idempotent ideals: vertex deletion, contracting homotopies,
//! finite-dimensional algebras and the Drinfeld dg quotient.

mod delete;
mod drinfeld;
mod findim;
mod homotopy;

pub use delete::delete_vertices;
pub use drinfeld::{drinfeld_h0, DrinfeldComplex, DrinfeldElement, DrinfeldH0, Word, word_degree};
pub use findim::{build_findim, FiniteDimAlgebra};
pub use homotopy::{
    contracting_homotopy, verify_contraction, ContractingHomotopy, ContractionReport,
    HomotopyFormula,
};
