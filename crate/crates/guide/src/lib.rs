//! The book chapters, compiled so their snippets run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/superalgebras.md")]
pub mod superalgebras {}
#[doc = include_str!("../../../book/src/pairs.md")]
pub mod pairs {}
#[doc = include_str!("../../../book/src/enveloping.md")]
pub mod enveloping {}
#[doc = include_str!("../../../book/src/hopf.md")]
pub mod hopf {}
#[doc = include_str!("../../../book/src/symmetrization.md")]
pub mod symmetrization {}
#[doc = include_str!("../../../book/src/sequences.md")]
pub mod sequences {}
#[doc = include_str!("../../../book/src/gl12.md")]
pub mod gl12 {}
#[doc = include_str!("../../../book/src/radial.md")]
pub mod radial {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
