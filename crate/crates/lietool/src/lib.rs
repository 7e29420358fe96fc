//! Command-line front end and verification suite for `liecore`.

pub mod emit;
pub mod sweep;
pub mod verify;
