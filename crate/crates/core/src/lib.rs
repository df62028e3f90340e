pub mod convex;
pub mod error;
pub mod geom;
pub mod integral;
pub mod io;
pub mod linalg;
pub mod measure;
pub(crate) mod polar;
pub mod random;
pub mod report;
pub mod selftest;
pub mod suites;
pub mod support;
pub mod tolerance;

pub use error::{Error, Result};
