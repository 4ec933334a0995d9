//! Analysis of small mass-action reaction networks: deciding (non)degenerate
//! multistationarity and producing independently verifiable witness
//! certificates.
//!
//! The crate is organized as a pipeline:
//!
//! * [`netparse`] — text grammar for reaction networks and the exact data model,
//! * [`structure`] — stoichiometric linear algebra, embedded networks, arrow
//!   and box diagrams,
//! * [`classify`] — decision procedures dispatching a network to the
//!   applicable criterion,
//! * [`realroots`] — exact univariate polynomial algebra: Sturm sequences,
//!   root isolation, and the constrained polynomial family used by the
//!   witness constructions,
//! * [`witness`] — construction and independent verification of witness
//!   certificates (rate constants, conservation totals, isolated simple
//!   roots),
//! * [`corpus`] — deterministic enumeration of small networks for
//!   consistency checking.
//!
//! All verification-path arithmetic is exact rational; no floating point is
//! used anywhere a certificate depends on.

pub mod classify;
pub mod corpus;
pub mod netparse;
pub mod rat;
pub mod realroots;
pub mod structure;
pub mod witness;
