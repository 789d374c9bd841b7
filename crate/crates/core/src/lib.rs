//! Gödel justification logic: exact min-t-norm semantics, fuzzy Fitting and
//! Mkrtychev models, Hilbert proof checking with constant specifications,
//! the star translation and a decision procedure for propositional Gödel
//! consequence.

pub mod calculus;
pub mod canonical;
pub mod decide;
pub mod fitting;
pub mod format;
pub mod goedel;
pub mod mkrtychev;
pub mod signature;
pub mod syntax;
pub mod value;

pub use goedel::{Assignment, EntailmentMode};
pub use signature::Signature;
pub use syntax::{Formula, StarAtom, StarFormula, Term};
pub use value::Value;
