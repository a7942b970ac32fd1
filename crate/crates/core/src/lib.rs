//! Solvers and estimate verification for the Dirichlet problem of the
//! complex k-Hessian equation H_k[u] = eps on punctured domains, with
//! pole-type data at the puncture and explicit barrier construction.

pub mod barriers;
pub mod config;
pub mod domain;
pub mod error;
pub mod grid;
pub mod hermitian;
pub mod io;
pub mod order;
pub mod radial;
pub mod symm;
pub mod verify;

pub use error::{Error, Result};
pub use hermitian::HermitianMatrix;
pub use order::HessianOrder;
pub use symm::Spectrum;
