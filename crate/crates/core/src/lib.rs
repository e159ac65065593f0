//! Sibling numbers of direct sums of chains.

pub mod cardinal;
pub mod classify;
pub mod corpus;
pub mod dsc;
pub mod embed;
pub mod finite_oracle;
pub mod ordertype;
pub mod syntax;
pub mod verify;
pub mod witness;
