//! Language implementations generated from binding signatures.
//!
//! A [`BindingSignature`] lists constructors and how many variables each
//! of their arguments binds. From it this crate provides well-scoped
//! [`Term`]s, renaming, capture-avoiding parallel substitution with its
//! monad laws as executable checks, structural folds, and an independent
//! audit of the term datatype as the colimit of the initial chain of the
//! signature functor, computed over finite sets.

pub mod adamek;
pub mod colimit;
pub mod fold;
pub mod random;
pub mod signature;
mod sigfile;
pub mod subst;
pub mod term;

pub use signature::{Arity, BindingSignature, CtorId, CtorSpec, FamilySpec, SignatureError};

pub use subst::{LawReport, Substitution};
pub use term::{Bounds, Node, Renaming, Term, TermError};
