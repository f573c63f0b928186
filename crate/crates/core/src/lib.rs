//! Finite models of wreath products, Θ_n, Joyal disks and sieves, with
//! exhaustive checkers for the equivalences relating them.

pub mod disks;
pub mod duality;
pub mod error;
pub mod fincat;
pub mod interchange;
pub mod obj;
pub mod payload;
pub mod sieves;
pub mod sites;
pub mod wreath;

pub use error::{Error, Result};
pub use fincat::{FiniteCategory, Functor, MorId, ObjId};
pub use obj::{DiskShape, Obj};
pub use payload::{Component, Payload};
