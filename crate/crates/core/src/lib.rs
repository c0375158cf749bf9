//! Exact computation in universal Coxeter groups `W_n` and their
//! automorphism groups.

pub mod automorphism;
pub mod error;
pub mod gilbert;
pub mod perm;
pub mod rank3;
pub mod spine;
pub mod subgroup;
pub mod text;
pub mod verify;
pub mod word;

pub use automorphism::{CoxAutomorphism, OuterClass, Token, DEFAULT_ORDER_BOUND};
pub use error::{Error, Result};
pub use perm::Perm;
pub use subgroup::{FiniteSubgroup, GroupElement};
pub use word::Word;
pub use spine::{GraphShape, SpineVertex, StarClass};
pub use verify::{ClaimReport, Scope, Status, VerifyOptions};
