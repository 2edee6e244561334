//! Twisted generalized Reed-Solomon codes over finite fields.
//!
//! - [`field`]: GF(p^m) arithmetic, generators, square roots, embeddings.
//! - [`poly`]: polynomials and the two triangular Toeplitz sequences.
//! - [`matrix`]: exact linear algebra.
//! - [`tgrs`]: code specs, encoding, generator and parity-check matrices.
//! - [`classify`]: MDS, AMDS, defect, ℓ-MDS and self-duality criteria.
//! - [`construct`]: the explicit self-dual family and η searches.
//! - [`oracle`]: brute-force minimum distances and duals.

pub mod classify;
pub mod construct;
pub mod field;
pub mod matrix;
pub mod oracle;
pub mod poly;
pub mod tgrs;

pub use classify::{classify, is_mds, is_self_dual, ClassificationReport, ClassifyOptions};
pub use construct::{construct_self_dual, eta_chain, search_mds, EtaDomain, SearchOptions};
pub use field::{Field, FieldCtx, Gf};
pub use matrix::Matrix;
pub use poly::Poly;
pub use tgrs::{Regime, SpecJson, TgrsSpec};
