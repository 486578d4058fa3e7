//! Minimal absent words, extended bispecial factors, minimal rare words and
//! minimal unique substrings of a text, enumerated from an index whose size
//! is proportional to the number of edges of the text's compact directed
//! acyclic word graph (CDAWG) or of its reversal, whichever is smaller.
//!
//! ```
//! use std::ops::ControlFlow;
//!
//! use cdawg_maw::index::{BuildOptions, Index};
//! use cdawg_maw::text::{Sentinels, Text};
//!
//! let text = Text::wrap(b"ababcbababcbc", Sentinels::EndOnly).unwrap();
//! let index = Index::build(&text, BuildOptions::default()).unwrap();
//! let mut absent = Vec::new();
//! index.enumerate_maws(|h| {
//!     absent.push(index.materialize(&h));
//!     ControlFlow::Continue(())
//! });
//! assert!(absent.contains(&b"cbcb".to_vec()));
//! ```
//!
//! Words are reported as handles `a·u·b` where `u` is a CDAWG node; turning
//! a handle into bytes costs time linear in the word length.

pub mod cdawg;
pub mod check;
pub mod enumerate;
pub mod grammar;
pub mod index;
pub mod lpt;
pub mod oracle;
pub mod persist;
pub mod text;
