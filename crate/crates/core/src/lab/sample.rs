use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::category::FiniteGroup;
use crate::linalg::Field;
use crate::module::{FreeModuleSpec, ModuleElement, Presentation};

/// Shape limits for random presentations.
///
/// The number of generators is uniform in `1..=max_generators` and each
/// generator degree uniform in `0..=max_generator_degree`. The number of
/// relations is uniform in `1..=max_relations`, each relation degree
/// uniform between the lowest generator degree and `max_relation_degree`,
/// and every coefficient uniform over the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleCaps {
    pub max_generators: usize,
    pub max_generator_degree: usize,
    pub max_relations: usize,
    pub max_relation_degree: usize,
}

pub fn random_element<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    field: &F,
    group: &FiniteGroup,
    spec: &FreeModuleSpec,
    degree: usize,
) -> ModuleElement<F> {
    ModuleElement {
        degree,
        coords: (0..spec.dim(degree, group.order())).map(|_| field.random(rng)).collect(),
    }
}

pub fn random_presentation<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    field: F,
    group: Arc<FiniteGroup>,
    truncation: usize,
    caps: &SampleCaps,
) -> Presentation<F> {
    let generators: Vec<usize> = (0..rng.gen_range(1..=caps.max_generators.max(1)))
        .map(|_| rng.gen_range(0..=caps.max_generator_degree))
        .collect();
    let spec = FreeModuleSpec::new(generators);
    let lowest = spec.degrees.iter().copied().min().unwrap_or(0);
    let top = caps.max_relation_degree.max(lowest).min(truncation);
    let relations = (0..rng.gen_range(1..=caps.max_relations.max(1)))
        .map(|_| {
            let degree = rng.gen_range(lowest.min(top)..=top);
            random_element(rng, &field, &group, &spec, degree)
        })
        .collect();
    Presentation::new(field, group, truncation, spec, relations).expect("sampled relations fit the free module")
}
