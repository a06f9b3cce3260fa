pub mod algebra;
pub mod canonical;
pub mod catalog;
pub mod decomposition;
pub mod fp_linalg;
pub mod group;

/// Library version; part of every cache key.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
