pub mod cli;
pub mod eigenbox;
pub mod error;
pub mod operators;
pub mod paraxial;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
