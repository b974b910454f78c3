//! Amplitudes of one- and multi-parameter persistence modules.
//!
//! The crate works with two concrete module models: [`barcode::Barcode`] for
//! interval-decomposed one-parameter modules and [`gridmod::GridModule`] for
//! modules on a finite grid of real cells. On top of these it evaluates
//! amplitudes, the distances they induce, local cohomology based invariants,
//! and a catalog of stability inequalities.

pub mod amplitude;
pub mod barcode;
pub mod distance;
pub mod error;
pub mod gridmod;
pub mod linalg;
pub mod rips;
pub mod serde_ext;
pub mod stability;

pub use barcode::{Bar, Barcode};
pub use error::{Error, Result};
pub use gridmod::{Face, GridGeometry, GridModule, ModuleMorphism};
pub use linalg::{Fp, Matrix};
