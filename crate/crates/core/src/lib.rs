//! Finite-dimensional models for Gelfand pairs, their spherical
//! representations, and direct limits of them.

pub mod error;
pub mod dirlim;
pub mod fock;
pub mod nilpf;
pub mod numerics;
pub mod charring;
pub mod cli;
pub mod rootsys;
pub mod symmpair;

pub use error::{Error, Result};
