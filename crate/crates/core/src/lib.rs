pub mod casselman;
pub mod error;
pub mod heckeops;
pub mod int;
pub mod json;
pub mod kclass;
pub mod motivic;
pub mod report;
pub mod ring;
pub mod stable;
pub mod weyl;

pub use error::{Error, Result};

/// Library version, part of every persistent cache key.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
