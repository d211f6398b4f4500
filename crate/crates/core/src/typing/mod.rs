//! Structural typing (`∼`, `⊢`), content invariants, and the union and
//! intersection builders.

mod invariant;
mod morphism;
mod registry;
mod signature;
mod structure;

pub use invariant::{
    canonical_invariant, element_invariant, is_prime, lift_invariant, Invariant, FAIL_PRIME,
    FIRST_USER_PRIME, SUCCEED_PRIME,
};
pub use morphism::{
    morphism_structure, partial_morphism_structure, precedes, Codomain, MorphismDescriptor,
    MorphismKind, MorphismStructure,
};
pub use registry::{InvariantRegistry, RegistryError};
pub use signature::{same_type, type_signature, TypeSignature};
pub use structure::{
    make_intersection, make_union, StructuralInvariant, StructureKind, Structured,
};
