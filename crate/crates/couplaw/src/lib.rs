//! File-system, interchange and reporting layer over `couplaw_core`.

pub mod error;
pub mod interchange;
pub mod report;
pub mod scan;

pub use error::{Error, Result};
