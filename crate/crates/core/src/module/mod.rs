//! Truncated FI_G-modules: free modules, presentations, submodules,
//! quotients and morphisms.

mod dual;
pub mod free;
pub mod morphism;
pub mod presentation;
pub mod submodule;
pub mod truncated;

pub use free::{free_generator, free_module, FreeModuleSpec};
pub use morphism::{
    cokernel_of, direct_sum, image_of, include, kernel_of, quotient, quotient_by, submodule_span, yoneda_morphism,
    yoneda_sum, ModuleMorphism,
};
pub use presentation::{AnyPresentation, Presentation, PresentationFile, PresentedModule, RelationRecord};
pub use submodule::{close_under, push_forward, Submodule};
pub use truncated::{ModuleElement, TruncatedModule};

#[cfg(test)]
mod tests;
