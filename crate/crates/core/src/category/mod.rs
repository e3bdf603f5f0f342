//! The skeletal category of FI_G: objects `[n]`, morphisms decorated
//! injections.

pub mod group;
pub mod morphism;

pub use group::{FiniteGroup, GroupSpec};
pub use morphism::{
    enumerate_hom, falling_factorial, generator_count, generator_word, group_generators, hom_index, hom_size,
    morphism_at, FiMorphism,
};

/// `f ∘ g`, an alias for [`FiMorphism::compose`].
pub fn compose(f: &FiMorphism, g: &FiMorphism, group: &FiniteGroup) -> crate::Result<FiMorphism> {
    f.compose(g, group)
}

/// `f = unit ∘ ι^k`; see [`FiMorphism::factorize`].
pub fn factorize(f: &FiMorphism, group: &FiniteGroup) -> (FiMorphism, usize) {
    f.factorize(group)
}
