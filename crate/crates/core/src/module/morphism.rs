use std::sync::Arc;

use super::free::{free_module, FreeModuleSpec};
use super::submodule::Submodule;
use super::truncated::{ModuleElement, TruncatedModule};
use crate::category::{enumerate_hom, generator_count, FiMorphism};
use crate::error::{Error, Result};
use crate::linalg::{Field, Matrix, Subspace};

/// Degreewise linear maps `φ_n: V_n -> W_n` commuting with the structure.
#[derive(Clone, Debug)]
pub struct ModuleMorphism<F: Field> {
    source: Arc<TruncatedModule<F>>,
    target: Arc<TruncatedModule<F>>,
    maps: Vec<Matrix<F>>,
}

impl<F: Field> ModuleMorphism<F> {
    /// Checked constructor.
    pub fn new(
        source: Arc<TruncatedModule<F>>,
        target: Arc<TruncatedModule<F>>,
        maps: Vec<Matrix<F>>,
    ) -> Result<Self> {
        let phi = ModuleMorphism { source, target, maps };
        phi.validate()?;
        Ok(phi)
    }

    pub(crate) fn from_parts(
        source: Arc<TruncatedModule<F>>,
        target: Arc<TruncatedModule<F>>,
        maps: Vec<Matrix<F>>,
    ) -> Self {
        ModuleMorphism { source, target, maps }
    }

    pub fn identity(module: Arc<TruncatedModule<F>>) -> Self {
        let f = module.field().clone();
        let maps = module.dims().iter().map(|&d| Matrix::identity(&f, d)).collect();
        ModuleMorphism {
            source: module.clone(),
            target: module,
            maps,
        }
    }

    pub fn zero(source: Arc<TruncatedModule<F>>, target: Arc<TruncatedModule<F>>) -> Result<Self> {
        if !source.same_context(&target) {
            return Err(Error::ContextMismatch);
        }
        let f = source.field().clone();
        let maps = (0..=source.truncation())
            .map(|n| Matrix::zeros(&f, target.dim(n), source.dim(n)))
            .collect();
        Ok(ModuleMorphism { source, target, maps })
    }

    pub fn source(&self) -> &Arc<TruncatedModule<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TruncatedModule<F>> {
        &self.target
    }

    pub fn map(&self, n: usize) -> &Matrix<F> {
        &self.maps[n]
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn is_zero(&self) -> bool {
        let f = self.source.field();
        self.maps.iter().all(|m| m.is_zero(f))
    }

    pub fn apply(&self, v: &ModuleElement<F>) -> ModuleElement<F> {
        ModuleElement {
            degree: v.degree,
            coords: self.maps[v.degree].apply(self.source.field(), &v.coords),
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMorphism<F>) -> Result<Self> {
        if !Arc::ptr_eq(&other.target, &self.source) && other.target.dims() != self.source.dims() {
            return Err(Error::InvalidMorphismOfModules("composition of unrelated modules".into()));
        }
        let f = self.source.field();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.mul(f, b))
            .collect();
        Ok(ModuleMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            maps,
        })
    }

    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        let fail = |m: String| Err(Error::InvalidMorphismOfModules(m));
        if !s.same_context(t) {
            return Err(Error::ContextMismatch);
        }
        if self.maps.len() != s.truncation() + 1 {
            return fail("one map per degree is required".into());
        }
        let f = s.field();
        for n in 0..=s.truncation() {
            let phi = &self.maps[n];
            if (phi.rows(), phi.cols()) != (t.dim(n), s.dim(n)) {
                return fail(format!("map in degree {n} has shape {}x{}", phi.rows(), phi.cols()));
            }
            for i in 0..generator_count(n, s.group()) {
                if phi.mul(f, &s.actions(n)[i]) != t.actions(n)[i].mul(f, phi) {
                    return fail(format!("degree {n} map does not commute with generator {i}"));
                }
            }
            if n < s.truncation() && self.maps[n + 1].mul(f, s.iota(n)) != t.iota(n).mul(f, phi) {
                return fail(format!("degree {n} map does not commute with ι"));
            }
        }
        Ok(())
    }
}

/// The map `⊕ M(m_i) -> V` sending the `i`-th canonical generator to
/// `elements[i]` (of degree `m_i`).
pub fn yoneda_sum<F: Field>(
    module: &Arc<TruncatedModule<F>>,
    elements: &[ModuleElement<F>],
) -> Result<(FreeModuleSpec, ModuleMorphism<F>)> {
    let spec = FreeModuleSpec::new(elements.iter().map(|e| e.degree).collect());
    for e in elements {
        module.check_degree(e.degree)?;
    }
    let f = module.field();
    let group = module.group();
    let free = Arc::new(free_module(f, group, &spec, module.truncation()));
    let n_top = module.truncation();
    // Column blocks per summand, degree by degree: a morphism [m] -> [n]
    // with n > m is a skip map after a morphism [m] -> [n-1].
    let mut blocks: Vec<Vec<Matrix<F>>> = Vec::with_capacity(elements.len());
    for e in elements {
        let m = e.degree;
        let mut per_degree: Vec<Matrix<F>> = (0..m).map(|n| Matrix::zeros(f, module.dim(n), 0)).collect();
        let units = enumerate_hom(m, m, group);
        let v = Matrix::from_rows(module.dim(m), vec![e.coords.clone()]);
        let mut cols = Matrix::zeros(f, 0, module.dim(m));
        for u in &units {
            cols = cols.vstack(&module.apply_unit_to_rows(u, &v));
        }
        per_degree.push(cols.transpose());
        for n in m + 1..=n_top {
            let prev = per_degree[n - 1].transpose();
            let skips = module.skip_maps(n - 1);
            let rows: Vec<Vec<F::Elem>> = enumerate_hom(m, n, group)
                .iter()
                .map(|h| {
                    let q = (0..n).rev().find(|x| !h.injection().contains(x)).unwrap();
                    let collapsed = FiMorphism::new(
                        n - 1,
                        h.injection().iter().map(|&y| if y > q { y - 1 } else { y }).collect(),
                        h.decoration().to_vec(),
                    )
                    .expect("collapse of an injection");
                    let idx = crate::category::hom_index(&collapsed, group.order());
                    skips[q].apply(f, prev.row(idx))
                })
                .collect();
            per_degree.push(Matrix::from_rows(module.dim(n), rows).transpose());
        }
        blocks.push(per_degree);
    }
    let maps = (0..=n_top)
        .map(|n| {
            let mut m = Matrix::zeros(f, module.dim(n), free.dim(n));
            let mut c0 = 0;
            for b in &blocks {
                m.set_block(0, c0, &b[n]);
                c0 += b[n].cols();
            }
            m
        })
        .collect();
    Ok((spec, ModuleMorphism::from_parts(free, module.clone(), maps)))
}

/// The map `M(m) -> V` sending the canonical generator to `v ∈ V_m`.
pub fn yoneda_morphism<F: Field>(module: &Arc<TruncatedModule<F>>, v: &ModuleElement<F>) -> Result<ModuleMorphism<F>> {
    Ok(yoneda_sum(module, std::slice::from_ref(v))?.1)
}

/// The submodule generated by `gens` with its inclusion.
pub fn submodule_span<F: Field>(
    module: &Arc<TruncatedModule<F>>,
    gens: &[ModuleElement<F>],
) -> Result<(Arc<TruncatedModule<F>>, ModuleMorphism<F>)> {
    let sub = Submodule::span(module, gens)?;
    Ok(include(module, &sub))
}

/// A submodule with its induced structure and inclusion.
pub fn include<F: Field>(
    module: &Arc<TruncatedModule<F>>,
    sub: &Submodule<F>,
) -> (Arc<TruncatedModule<F>>, ModuleMorphism<F>) {
    let (w, inclusion) = sub.to_module(module);
    let w = Arc::new(w);
    (w.clone(), ModuleMorphism::from_parts(w, module.clone(), inclusion))
}

/// `V / W` and the projection, for a stable family `W`.
pub fn quotient<F: Field>(
    module: &Arc<TruncatedModule<F>>,
    sub: &Submodule<F>,
) -> Result<(Arc<TruncatedModule<F>>, ModuleMorphism<F>)> {
    sub.check_stable(module)?;
    Ok(quotient_trusted(module, sub))
}

/// `V / W` where `W` is the image of the inclusion `incl: W -> V`.
pub fn quotient_by<F: Field>(incl: &ModuleMorphism<F>) -> Result<(Arc<TruncatedModule<F>>, ModuleMorphism<F>)> {
    incl.validate()
        .map_err(|e| Error::InvalidSubmodule(e.to_string()))?;
    Ok(cokernel_of(incl))
}

pub(crate) fn quotient_trusted<F: Field>(
    module: &Arc<TruncatedModule<F>>,
    sub: &Submodule<F>,
) -> (Arc<TruncatedModule<F>>, ModuleMorphism<F>) {
    let (q, projection) = sub.quotient_of(module);
    let q = Arc::new(q);
    (q.clone(), ModuleMorphism::from_parts(module.clone(), q, projection))
}

/// Degreewise kernel of `φ` with its inclusion into the source.
pub fn kernel_of<F: Field>(phi: &ModuleMorphism<F>) -> (Arc<TruncatedModule<F>>, ModuleMorphism<F>) {
    let f = phi.source.field();
    let sub = Submodule::from_spaces(phi.maps.iter().map(|m| m.kernel_basis(f)).collect());
    include(&phi.source, &sub)
}

/// Degreewise image of `φ` as a submodule of the target.
pub fn image_of<F: Field>(phi: &ModuleMorphism<F>) -> Submodule<F> {
    let f = phi.source.field();
    Submodule::from_spaces(
        phi.maps
            .iter()
            .map(|m| Subspace::from_rows(f, m.transpose()))
            .collect(),
    )
}

/// Degreewise cokernel of `φ` with the projection from the target.
pub fn cokernel_of<F: Field>(phi: &ModuleMorphism<F>) -> (Arc<TruncatedModule<F>>, ModuleMorphism<F>) {
    quotient_trusted(&phi.target, &image_of(phi))
}

/// Blockwise direct sum.
pub fn direct_sum<F: Field>(a: &TruncatedModule<F>, b: &TruncatedModule<F>) -> Result<TruncatedModule<F>> {
    if !a.same_context(b) {
        return Err(Error::ContextMismatch);
    }
    let f = a.field();
    let block = |x: &Matrix<F>, y: &Matrix<F>| {
        let mut m = Matrix::zeros(f, x.rows() + y.rows(), x.cols() + y.cols());
        m.set_block(0, 0, x);
        m.set_block(x.rows(), x.cols(), y);
        m
    };
    let dims = a.dims().iter().zip(b.dims()).map(|(x, y)| x + y).collect();
    let iota = (0..a.truncation()).map(|n| block(a.iota(n), b.iota(n))).collect();
    let actions = (0..=a.truncation())
        .map(|n| {
            a.actions(n)
                .iter()
                .zip(b.actions(n))
                .map(|(x, y)| block(x, y))
                .collect()
        })
        .collect();
    Ok(TruncatedModule::from_parts(f.clone(), a.group().clone(), dims, iota, actions)
        .with_reliable_up_to(a.reliable_up_to().min(b.reliable_up_to())))
}
