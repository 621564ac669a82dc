//! Code listings of the guide.
//!
//! Each chapter of `book/src` is attached to a module so that `cargo test`
//! runs its Rust blocks as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/modules.md")]
pub mod modules {}
#[doc = include_str!("../../../book/src/filtration.md")]
pub mod filtration {}
#[doc = include_str!("../../../book/src/lefschetz.md")]
pub mod lefschetz {}
#[doc = include_str!("../../../book/src/spaces.md")]
pub mod spaces {}
#[doc = include_str!("../../../book/src/certificates.md")]
pub mod certificates {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
