//! File formats: OEIS b-files, classification records and the rho-table cache.

pub mod bfile;
pub mod cache;
pub mod records;

pub use bfile::BFileSeries;
pub use records::{ClassificationRecord, Format};
