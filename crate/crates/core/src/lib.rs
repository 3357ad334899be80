pub mod character;
pub mod error;
pub mod eval;
pub mod expr;
pub mod filtration;
pub mod modular;
pub mod report;
pub mod root_system;
pub mod verify;
pub mod weyl;

pub use character::FormalCharacter;
pub use error::{Error, Result};
pub use root_system::{build_root_system, RootSystem, RootVector, Weight};
pub use modular::{DataSource, Dataset};
