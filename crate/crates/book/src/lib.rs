//! The chapters of `book/` as doc modules, so `cargo test` runs their code.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/words.md")]
pub mod words {}

#[doc = include_str!("../../../book/src/hierarchy.md")]
pub mod hierarchy {}

#[doc = include_str!("../../../book/src/heat.md")]
pub mod heat {}

#[doc = include_str!("../../../book/src/numerics.md")]
pub mod numerics {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
