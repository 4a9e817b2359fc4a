//! Exact finite-field construction and verification of maximal nilpotent
//! spaces of b-symmetric, b-alternating and b-Hermitian endomorphisms.

pub mod acceptance;
pub mod budget;
pub mod catalog;
pub mod enumerate;
pub mod error;
pub mod field;
pub mod flags;
pub mod forms;
pub mod linalg;
pub mod nilspaces;
pub mod oracle;
pub mod subspace;

pub use budget::SearchBudget;
pub use catalog::named_form;
pub use error::{Error, Result};
pub use field::{involution, make_field, tr_rel, DualScalar, Field, Scalar};
pub use flags::{AdaptedBasis, Flag};
pub use forms::{Form, FormKind, WittData};
pub use linalg::{CharPoly, Mat};
pub use subspace::MatSubspace;
