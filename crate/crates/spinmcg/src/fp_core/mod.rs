//! Finitely presented groups: words, presentations, abelianization,
//! Tietze moves and Reidemeister–Schreier rewriting.

pub mod abelian;
pub mod expr;
pub mod presentation;
pub mod schreier;
pub mod snf;
pub mod tietze;
pub mod word;

pub use abelian::{abelianization_matrix, abelianize, abelianize_with_certificate, compress_rows};
pub use expr::{Evaluator, ExponentRep, Expr, Node, Rep};
pub use presentation::{format_word, parse_word, GenKind, Generator, Presentation, Relator, RelatorStatus};
pub use schreier::{
    free_presentation, schreier_subgroup_presentation, spin_coset_action, spin_transversal, CosetAction,
};
pub use snf::{smith_normal_form, SnfDecomposition, SnfResult};
pub use tietze::{apply_moves, tietze_move, CertFactor, TietzeMove};
pub use word::{free_reduce, GenId, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FpError {
    #[error("generator {0} has no image")]
    NoImage(GenId),
    #[error("word too long to flatten ({0} letters)")]
    TooLong(u128),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("relator does not define generator {0}")]
    NotDefining(GenId),
    #[error("generator {0} is still referenced")]
    StillReferenced(String),
    #[error("coset action inconsistent: {0}")]
    InconsistentAction(String),
    #[error("generator {0} does not act by a permutation")]
    NotPermutation(GenId),
    #[error("relator {relator} has nonzero exponent in opaque symbol {gen}")]
    OpaqueExponent { relator: String, gen: String },
}
