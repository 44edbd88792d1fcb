//! Compiles every Rust snippet of the guide in `book/src` as a doc-test.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/evaluation.md")]
pub mod evaluation {}

#[doc = include_str!("../../../book/src/lommel.md")]
pub mod lommel {}

#[doc = include_str!("../../../book/src/zeros.md")]
pub mod zeros {}

#[doc = include_str!("../../../book/src/interlacing.md")]
pub mod interlacing {}

#[doc = include_str!("../../../book/src/common-zeros.md")]
pub mod common_zeros {}

#[doc = include_str!("../../../book/src/wronskian.md")]
pub mod wronskian {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
