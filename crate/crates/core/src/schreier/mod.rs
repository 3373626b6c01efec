//! Schreier systems over a finite monoid, their morphisms and deformations.
//!
//! Composition convention: `f . g` means "first `g`, then `f`"; inside a
//! group `A_a` the composite `f . g` is the product `mul(f, g)`. Every
//! condition below is order-sensitive.

mod morphism;
mod system;

pub use morphism::{
    compose_horizontal, compose_horizontal_deformations, compose_vertical, inner_morphism,
    try_invert, validate_deformation, validate_morphism, Deformation, DeformationCondition,
    MorphismCondition, NotInvertible, SchreierMorphism,
};
pub use system::{
    validate_2cocycle, validate_system, CocycleCondition, SchreierCondition, SchreierSystem,
};
