pub mod analysis;
pub mod asymptotics;
pub mod cli;
pub mod codes;
pub mod config;
pub mod curve;
pub mod error;
pub mod gf;
pub mod linalg;
pub mod locality;
pub mod poly;
pub mod rrspace;
pub mod series;
pub mod surface;

pub use error::{Error, Result};
