//! Compiles and runs every code block in the book as a doctest.
//!
//! mdBook renders the chapters but does not test them; including each
//! chapter as a rustdoc comment makes `cargo test --workspace` execute the
//! snippets, so the book cannot drift from the library. One module per
//! chapter keeps failures attributable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}

#[doc = include_str!("../../../book/src/growth.md")]
pub mod growth {}

#[doc = include_str!("../../../book/src/boundaries.md")]
pub mod boundaries {}

#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
