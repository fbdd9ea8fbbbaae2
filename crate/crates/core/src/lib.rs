//! Green biset functors over the rationals: bisets, the associated category,
//! essential algebras and Yoneda-Dress shifts, computed exactly on small groups.

pub mod biset;
pub mod catalog;
pub mod category;
pub mod checks;
pub mod functor;
pub mod error;
pub mod essential;
pub mod group;
pub mod linalg;
pub mod morphism;
pub mod shift;

pub use error::{Error, Result};
