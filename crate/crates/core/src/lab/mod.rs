//! Noetherianity made executable: kernel generators with certified stopping
//! degrees, stabilization of `V_{n+1} ∩ W_n`, and seeded campaigns checking
//! the degree bounds on random presentations.

mod campaign;
mod sample;
mod stabilization;
mod syzygy;

pub use campaign::*;
pub use sample::{random_element, random_presentation, SampleCaps};
pub use stabilization::{intersection_stabilization, Stabilization};
pub use syzygy::{free_map, presentation_witness, syzygy_bound, syzygy_witness, FreeMapFile, SyzygyWitness};
