use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::truncated::{ModuleElement, TruncatedModule};
use crate::category::{enumerate_hom, group_generators, hom_index, hom_size, FiMorphism, FiniteGroup};
use crate::degree::Degree;
use crate::linalg::{Field, Matrix};

/// Generator degrees `(m_1, …, m_r)` of a free module `⊕ M(m_i)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FreeModuleSpec {
    pub degrees: Vec<usize>,
}

impl FreeModuleSpec {
    pub fn new(degrees: Vec<usize>) -> Self {
        FreeModuleSpec { degrees }
    }

    pub fn single(m: usize) -> Self {
        FreeModuleSpec { degrees: vec![m] }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn generating_degree(&self) -> Degree {
        Degree::max_of(self.degrees.iter().map(|&m| m as i64))
    }

    pub fn dim(&self, n: usize, group_order: usize) -> usize {
        self.degrees.iter().map(|&m| hom_size(m, n, group_order)).sum()
    }

    /// First coordinate of summand `i` in degree `n`.
    pub fn offset(&self, i: usize, n: usize, group_order: usize) -> usize {
        self.degrees[..i].iter().map(|&m| hom_size(m, n, group_order)).sum()
    }

    /// Coordinate of the basis vector `f ∈ Hom(m_i, n)` of summand `i`.
    pub fn coordinate(&self, i: usize, f: &FiMorphism, group_order: usize) -> usize {
        debug_assert_eq!(f.source(), self.degrees[i]);
        self.offset(i, f.target(), group_order) + hom_index(f, group_order)
    }

    /// Concatenation: generator degrees of `self ⊕ other`.
    pub fn sum(&self, other: &Self) -> Self {
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        FreeModuleSpec { degrees }
    }
}

/// The free module `⊕ M(m_i)` on degrees `0..=n_top`. `M(m)_n` has the
/// basis `Hom(m, n)` in canonical order, summands stacked in order, and
/// morphisms act by postcomposition.
pub fn free_module<F: Field>(
    field: &F,
    group: &Arc<FiniteGroup>,
    spec: &FreeModuleSpec,
    n_top: usize,
) -> TruncatedModule<F> {
    let order = group.order();
    let dims: Vec<usize> = (0..=n_top).map(|n| spec.dim(n, order)).collect();
    let basis: Vec<Vec<(usize, FiMorphism)>> = (0..=n_top)
        .map(|n| {
            spec.degrees
                .iter()
                .enumerate()
                .flat_map(|(i, &m)| enumerate_hom(m, n, group).into_iter().map(move |f| (i, f)))
                .collect()
        })
        .collect();
    let postcompose = |g: &FiMorphism, n: usize| -> Matrix<F> {
        let target = g.target();
        let mut m = Matrix::zeros(field, dims[target], dims[n]);
        for (col, (i, f)) in basis[n].iter().enumerate() {
            let h = g.compose(f, group).expect("composable");
            m.set(spec.coordinate(*i, &h, order), col, field.one());
        }
        m
    };
    let iota = (0..n_top)
        .map(|n| postcompose(&FiMorphism::standard_inclusion(n, n + 1, group), n))
        .collect();
    let actions = (0..=n_top)
        .map(|n| {
            group_generators(n, group)
                .iter()
                .map(|s| postcompose(s, n))
                .collect()
        })
        .collect();
    TruncatedModule::from_parts(field.clone(), group.clone(), dims, iota, actions)
}

/// The identity of `M(m_i)_{m_i}` in summand `i`: the canonical generator.
pub fn free_generator<F: Field>(
    module: &TruncatedModule<F>,
    spec: &FreeModuleSpec,
    i: usize,
) -> ModuleElement<F> {
    let m = spec.degrees[i];
    let id = FiMorphism::identity(m, module.group());
    let order = module.group().order();
    ModuleElement::basis(module, m, spec.coordinate(i, &id, order))
}
