//! Exact group cohomology of `SL_2(Z)` and related computations.

pub mod error;
pub mod exterior;
pub mod linalg;
pub mod amalgam;
pub mod brute;
pub mod cyclic;
pub mod moduli;
pub mod modules;
pub mod splitting;
pub mod tables;
pub mod torsor;
pub mod verify;

pub use error::{Error, Result};
