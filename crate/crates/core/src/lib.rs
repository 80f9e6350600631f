pub mod briangram;
pub mod checks;
pub mod constructible;
pub mod error;
pub mod euler;
pub mod exactq;
pub mod fixtures;
pub mod grothendieck;
pub mod motivic;
pub mod onedim;
pub mod polyhedron;

pub use error::{Error, Limits, Result};
