pub mod error;
pub mod exact;
pub mod report;
pub mod hypergeom;
pub mod operator;
pub mod bvp;
pub mod bg;
pub mod special;
pub mod latex;
pub mod cli;

pub use error::{Error, Result};
