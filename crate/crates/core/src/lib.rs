//! Exact decision procedures for strong gradings.
//!
//! The crate works with finite, explicitly presented objects: directed graphs
//! (optionally extended by infinite rays), finite graded groupoids and their
//! Steinberg algebras, partial group actions, Leavitt path algebra elements and
//! finite higher-rank graphs. Every negative verdict carries a finite witness and
//! every positive factorisation is returned in a form that can be re-checked.
//!
//! The crate is `no_std` (it needs `alloc`); IO and file formats live in the
//! `gradecheck` companion crate.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

pub mod criteria;
pub mod dade;
pub mod error;
pub mod graph;
pub mod group;
pub mod groupoid;
pub mod kgraph;
pub mod linalg;
pub mod lpa;
pub mod paction;
pub mod ring;
pub mod semilinear;
pub mod steinberg;

pub use error::{Error, Result};
