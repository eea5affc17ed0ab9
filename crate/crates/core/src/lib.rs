//! Finite semigroups given by Cayley tables, with a cubic-time test for
//! membership in the variety generated by the 6-element semigroup AC2.
//!
//! The crate is organized around:
//! - [`semigroup`], [`named`], [`embed`], [`sgp`]: tables, standard
//!   constructions, embedding search and the `.sgp` file format;
//! - [`words`]: words, word graphs and identity checking;
//! - [`membership`]: the membership procedure and its certificates;
//! - [`rewrite`]: derivations modulo `x^2 = x^4`, `xyx = (xy)^3x` and
//!   `xyxzx = xzxyx`, with replayable traces;
//! - [`structure`]: Green's relations, E-separability and Rees matrix
//!   semigroups.

pub mod embed;
pub mod membership;
pub mod named;
pub mod rewrite;
mod scc;
pub mod semigroup;
pub mod sgp;
pub mod structure;
pub mod words;

pub use embed::{find_embedding, find_embedding_bounded, EmbedError};
pub use membership::{
    check_basis_123, combinatorial_via_eq5, derive_eq4_witness, idempotent_closure, membership_ac2, Certificate,
    IdempotentClosure, MembershipError, MembershipReport, Verdict,
};
pub use named::{build_named, NamedError};
pub use rewrite::{
    apply_step, ensure_x_after_y, regularity_certificate, DerivationTrace, Direction, LemmaError, RewriteError,
    RewriteRule, RewriteStep, Rule, TraceError,
};
pub use semigroup::{ClosureError, Element, ElementSet, Morphism, Semigroup, TableError};
pub use sgp::{parse_sgp, to_sgp_string, SgpError};
pub use structure::{
    graham_houghton_normalize, greens_relations, is_aperiodic, is_completely_0_simple, is_e_separable,
    rees_representation, rees_semigroup, GreensData, Normalization, ReesSpec, SeparabilityReport, StructureError,
};
pub use words::{parse_word, Identity, Var, Word, WordGraph};
