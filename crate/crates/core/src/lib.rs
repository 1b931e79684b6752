//! Local groups as finite tables and exact symbolic instances.
//!
//! The crate covers local-group axioms and constructions, multi-valued
//! bracketing evaluation, the word-move calculus, globalization through a
//! completed string-rewriting presentation, and contractive endomorphisms.

pub mod assoc;
pub mod contractive;
pub mod fixtures;
pub mod globalize;
pub mod group;
pub mod instances;
pub mod local;
pub mod moves;
pub mod padic;
pub mod rational;
pub mod rewrite;
pub mod structure;
pub mod words;

pub use group::{CircleGroup, FiniteGroup, Group, RationalLine};
pub use instances::{BallSet, EndoSpec, InstanceSpec, Point};
pub use local::{Elem, FiniteLocalGroup, Label, LocalGroup, Subset};
