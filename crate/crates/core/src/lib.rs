//! Numerical semigroups `S(a,b)` generated by the quadratic sequence
//! `y_n = n a + C(n,2) b`, `n >= 0`.
//!
//! Every invariant has two routes: a closed form built on the μ sequence
//! ([`mu`]) and a brute-force oracle over explicit membership tables
//! ([`semigroup::MembershipTable`]). The [`search`] module replays the
//! exhaustive searches that pin down the finitely many exceptional cases.

pub mod cache;
pub mod embedding;
pub mod error;
pub mod invariants;
pub mod mu;
pub mod search;
pub mod semigroup;

pub use embedding::{
    embedding_dimension, is_minimal_closed, minimal_generators_closed, minimal_generators_oracle,
    verify_decomposition, MinimalGeneratorSet,
};
pub use error::{Error, Result};
pub use invariants::{
    apery_closed, apery_oracle, frobenius, frobenius_bounds, frobenius_oracle, genus, genus_bounds,
    genus_oracle, AperySet, BoundPair, InvariantSummary,
};
pub use mu::{
    bounds_profile, combined_bound, f_of, gauss_bound, lower_bound, mu_oracle, triangular,
    BoundProfile, MuTable,
};
pub use search::{
    exception_certificates, g_analysis, g_local_max, g_of, g_solve, search_embedding_eq,
    search_mu_drop, GAnalysis, SearchHit, SearchReport,
};
pub use semigroup::{
    lift_contains, mu_ab_closed, mu_ab_oracle, mu_ab_shift, ExceptionTriple, Membership,
    MembershipTable, QuadraticSemigroup, EXCEPTIONS,
};
