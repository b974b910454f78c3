//! Finite grid modules: cubically encoded persistence modules over R^n.

mod bridge;
mod geometry;
mod json;
mod module;
mod ops;
pub mod random;

pub use bridge::{barcode_geometry, barcode_hilbert, from_barcode, from_barcode_on, to_barcode};
pub use geometry::{Face, GridGeometry};
pub use json::is_morphism_doc;
pub use module::{GridModule, HilbertFunction, ModuleMorphism};
pub use ops::{
    cokernel, common_refinement, image, kernel, local_cohomology, localization, quotient,
    quotient_restriction, refine_to, submodule_generated,
};
pub use random::ShortExactSequence;
