pub mod closed_forms;
pub mod cyclotomic;
pub mod error;
pub mod exact;
pub mod harmonic;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
