//! Exact gauge reduction of Chevalley-type connections `d/dz + A` and the
//! scalar differential operators attached to their normal forms.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod chevalley;
pub mod error;
pub mod gauge;
pub mod normal_forms;
pub mod roots;
pub mod selftest;

pub use error::{Error, Result};
