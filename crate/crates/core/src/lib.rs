//! Exact computations with FI_G-modules truncated at a finite degree.

pub mod category;
pub mod degree;
pub mod error;
pub mod functors;
pub mod homology;
pub mod lab;
pub mod linalg;
pub mod module;

pub use degree::Degree;
pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/category.md")]
    mod category {}
    #[doc = include_str!("../../../book/src/modules.md")]
    mod modules {}
    #[doc = include_str!("../../../book/src/functors.md")]
    mod functors {}
    #[doc = include_str!("../../../book/src/invariants.md")]
    mod invariants {}
    #[doc = include_str!("../../../book/src/filtered.md")]
    mod filtered {}
    #[doc = include_str!("../../../book/src/noetherian.md")]
    mod noetherian {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
