//! Free vibration of cracked functionally graded Mindlin plates using an
//! extended finite element discretization.

pub mod assembly;
pub mod config;
pub mod crack;
pub mod eigen;
pub mod element;
pub mod error;
pub mod geom;
pub mod materials;
pub mod mesh;
pub mod par;
pub mod pipeline;
pub mod post;
pub mod quadrature;
pub mod section;
pub mod validate;

pub use error::{Error, Result};
