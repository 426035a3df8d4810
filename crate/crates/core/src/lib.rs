//! Finite Γ-semigroups and their universal semigroup Σ.
//!
//! Σ is the quotient of the free semigroup on `S ∪ Γ` by
//! `(γ₁, γ₂) ~ γ₁`, `(x, γ, y) ~ xγy` and `(x, y) ~ xγ₀y`. The rewriting
//! system obtained by orienting these relations is terminating and confluent,
//! so Σ is materialized as its normal forms `x`, `γ`, `γx`, `xγ`, `γxγ'`.
//! The modules here build Σ, compare its one-sided and quasi-ideals and
//! Green's relations with those of `S`, and check the transfer of complete
//! simplicity between the semigroups `S_γ`.

pub mod cli;
pub mod finite;
pub mod gamma;
pub mod gsg;
pub mod ideals;
pub mod instances;
pub mod rewrite;
pub mod sigma;
pub mod simple;

pub use finite::{ElementSet, FiniteSemigroup};
pub use gamma::{funcomp, sandwich, GammaError, GammaSemigroup, ValidationReport, Violation};
pub use gsg::{parse_gsg, to_gsg, ParseError};
pub use rewrite::{
    check_local_confluence, reduce, ConfluenceMode, ConfluenceReport, Letter, Overlap, Redex, Rule, Word,
};
pub use sigma::{sigma_multiply, Sigma, SigmaElement};
