//! Gamma, digamma and polygamma kernels, the gamma-ratio family
//! h_{α,y}(x) and its log-derivatives, numeric checks of the associated
//! inequalities, and a grid certifier for logarithmic complete
//! monotonicity.

mod error;
mod quad;

pub mod ballvol;
pub mod certify;
pub mod gammakit;
pub mod hfamily;
pub mod ineq;
pub mod means;

pub use error::{Error, Result};
