//! Taft Hopf algebras over finite commutative rings, their cleft
//! extensions, and polynomial H-identities that tell the extensions apart.

pub mod algebra;
pub mod cleft;
pub mod cli;
pub mod error;
pub mod identities;
pub mod iso;
pub mod linalg;
pub mod ring;
pub mod taft;
pub mod verify;

pub use error::{Error, Result};
