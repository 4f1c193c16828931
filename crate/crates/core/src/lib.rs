//! Exact computations with finite-dimensional corings over ℚ and 𝔽_p.

pub mod linalg;
pub mod algebra;
pub mod bimodule;
pub mod bicells;
pub mod cli;
pub mod constructions;
pub mod descent;
pub mod coring;
pub mod error;
pub mod fixtures;
pub mod functors;
pub mod properties;
pub mod report;
