//! Belief change over epistemic spaces.
//!
//! States carry belief sets, stored as model sets over a signature of at most
//! four atoms. Operators are total transition tables keyed by the models of
//! the input; postulates are checked exhaustively with witnesses.

pub mod assignments;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod logic;
pub mod modelcheck;
pub mod operators;
pub mod postulates;
pub mod space;

pub use assignments::{
    extract, is_compatible, is_faithful, synthesize, Assignment, FalsumFlag, StateAssignment,
    TotalPreorder,
};
pub use error::{Error, Result};
pub use logic::{models, parse, Formula, Signature, World, WorldSet};
pub use operators::SemanticOperator;
pub use postulates::{check, classify, CheckResult, ClassMembership, PostulateId, Verdict, Witness};
pub use space::{EpistemicSpace, StateId};
