//! Exact combinatorics of twisted Bruhat orders and Birkhoff-Bruhat atlases.
//!
//! The crate is organized bottom-up:
//!
//! - [`cartan`]: generalized Cartan matrices and the tilde/breve gluings.
//! - [`coxeter`]: group elements as exact integer matrices, lengths, Bruhat
//!   order, parabolic factorizations, real roots and reflections.
//! - [`twisted`]: the `J`-twisted length and order, interval enumeration and
//!   an independent closure oracle.
//! - [`qk`]: the poset `Q_K`, the atlas embeddings and their verification.
//! - [`poset`]: finite posets, thinness, reflection orders and EL checks.
//! - [`verify`]: the check suites driven by the command-line tool.

pub mod cartan;
pub mod catalog;
pub mod config;
pub mod coxeter;
pub mod error;
pub mod glue_table;
pub mod matrix;
pub mod nodes;
pub mod poset;
pub mod qk;
pub mod twisted;
pub mod verify;

#[cfg(test)]
mod testing;

pub use cartan::{glue_breve, glue_tilde, GeneralizedCartanMatrix, GluedDiagram, Gluing};
pub use coxeter::{CoxeterGroup, GroupElement, Reflection, RootVector};
pub use error::{Error, Result};
pub use nodes::NodeSet;
pub use qk::{AtlasContext, LabelSide, QkElement};
pub use twisted::TwistedContext;
