//! Group files, the built-in catalog, result caching and the verification
//! suite on top of [`fusionlab_core`].

pub mod cache;
pub mod catalog;
pub mod checks;
pub mod parse;
pub mod suite;

pub use fusionlab_core as core;
