//! Exact algebra for rational normal scrolls and their linear joins.

pub mod error;
pub mod field;
pub mod ideal;
pub mod io;
pub mod lattice;
pub mod linjoin;
pub mod poly;
pub mod scroll;
pub mod synth;

pub use error::{Error, Result};
pub use field::FieldSpec;
pub use ideal::{IdealHandle, RadicalCertificate};
pub use poly::{LinearForm, Monomial, Polynomial, Ring, Subspace, TermOrder};
