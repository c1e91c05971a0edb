//! Fixtures, instance generators, theorem cross-validation and the
//! counterexample catalog.

pub mod catalog;
pub mod enumerate;
pub mod fixtures;
pub mod random;
pub mod theorems;
