pub mod error;
pub mod algebra;
pub mod cli;
pub mod closure;
pub mod hermitian;
pub mod iso;
pub mod linalg;
pub mod par;
pub mod sym;
pub mod tensor;

pub use error::{Error, Result};
