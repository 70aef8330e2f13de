pub mod error;
pub mod greens;
pub mod harness;
pub mod lattice;
pub mod montecarlo;
pub mod pde;
pub mod quadrature;
pub mod tau;

pub use error::{Error, Result};
pub use tau::TauProfile;
