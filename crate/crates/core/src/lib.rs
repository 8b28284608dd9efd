//! Separability criteria built on Bloch correlation tensors.
//!
//! A state is flagged as entangled when one of the following necessary
//! conditions for (full) separability fails:
//!
//! - positivity under partial transposition ([`criteria::ppt`]);
//! - the realignment (computable cross norm) bound ([`criteria::realignment_criterion`]);
//! - trace-norm bounds on the correlation matrix `T` and on the bordered matrix
//!   `T̃` that also carries the local Bloch vectors ([`criteria::cm_bipartite`],
//!   [`criteria::augmented_cm_bipartite`]);
//! - their N-party versions using the Ky Fan norm over mode unfoldings
//!   ([`criteria::gcm_multipartite`], [`criteria::augmented_gcm_multipartite`]);
//! - the witness forms `|Σ w·T| ≤ c·σ_max(w)` for arbitrary real witnesses
//!   ([`criteria::theorem1_eval`], [`criteria::theorem2_eval`]).
//!
//! [`catalog`] holds the standard test states and [`scan`] locates detection
//! thresholds along white-noise families.

pub mod bloch;
pub mod catalog;
pub mod criteria;
pub mod error;
pub mod gellmann;
pub mod matcore;
pub mod scan;
pub mod tensor;

pub use error::{Error, Result};
