//! Exact computations with finite-type pivotal Hopf G-coalgebras: structure checks,
//! G-integrals, modified traces, and the unrestricted quantum sl(2) family.

pub mod error;
pub mod hopf_core;
pub mod integrals;
pub mod linalg;
pub mod modcat;
pub mod mtrace;
pub mod scalar;
pub mod suites;
pub mod uqsl2;

pub use error::{Error, Result};
