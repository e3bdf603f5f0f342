//! The shift functors `Σ_a`, the derivative `D`, and the torsion part.
//!
//! `(Σ_a V)_n = V_{n+a}`, where the `a` adjoined points are the last ones:
//! `G_n` acts through its embedding in `G_{n+a}` on the first `n` points,
//! and the structure map `[n] -> [n+1]` of `Σ_a V` is the injection
//! `[n+a] -> [n+a+1]` that skips point `n`.

use std::sync::Arc;

use crate::category::generator_count;
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::linalg::{Field, Subspace};
use crate::module::{include, ModuleMorphism, Submodule, TruncatedModule};

/// `Σ_a V`, remembering `a`.
#[derive(Clone, Debug)]
pub struct ShiftedModule<F: Field> {
    pub module: Arc<TruncatedModule<F>>,
    pub shift: usize,
}

/// `Σ_a V` on degrees `0..=N-a`.
pub fn shift<F: Field>(v: &TruncatedModule<F>, a: usize) -> Result<ShiftedModule<F>> {
    let n_top = v.truncation();
    if a > n_top {
        return Err(Error::TruncationExceeded {
            degree: a,
            truncation: n_top,
        });
    }
    let f = v.field();
    let g = v.group();
    let top = n_top - a;
    let dims = (0..=top).map(|n| v.dim(n + a)).collect();
    let actions = (0..=top)
        .map(|n| {
            let ns = n.saturating_sub(1);
            let big_ns = (n + a).saturating_sub(1);
            (0..generator_count(n, g))
                .map(|i| {
                    let j = if i < ns { i } else { big_ns + (i - ns) };
                    v.actions(n + a)[j].clone()
                })
                .collect()
        })
        .collect();
    let iota = (0..top)
        .map(|n| {
            // skip point n in [n+a+1]: s_n s_{n+1} ... s_{n+a-1} ι
            let mut m = v.iota(n + a).clone();
            for q in (n..n + a).rev() {
                m = v.actions(n + a + 1)[q].mul(f, &m);
            }
            m
        })
        .collect();
    let module = TruncatedModule::from_parts(f.clone(), g.clone(), dims, iota, actions)
        .with_reliable_up_to(v.reliable_up_to().saturating_sub(a));
    Ok(ShiftedModule {
        module: Arc::new(module),
        shift: a,
    })
}

/// `V -> ΣV`, given by `ι_n` in degree `n`. The source is `V` cut down to
/// the truncation of `ΣV`.
pub fn natural_map_to_shift<F: Field>(v: &TruncatedModule<F>) -> Result<ModuleMorphism<F>> {
    if v.truncation() == 0 {
        return Err(Error::TruncationExceeded {
            degree: 1,
            truncation: 0,
        });
    }
    let sigma = shift(v, 1)?.module;
    let source = Arc::new(v.truncate(v.truncation() - 1));
    let maps = (0..source.truncation() + 1).map(|n| v.iota(n).clone()).collect();
    Ok(ModuleMorphism::from_parts(source, sigma, maps))
}

/// `DV = coker(V -> ΣV)`, on degrees `0..=N-1`.
pub fn derivative<F: Field>(v: &TruncatedModule<F>) -> Result<Arc<TruncatedModule<F>>> {
    let phi = natural_map_to_shift(v)?;
    let (d, _) = crate::module::cokernel_of(&phi);
    Ok(d)
}

/// `0 -> V_T -> V -> V_F -> 0`.
#[derive(Clone, Debug)]
pub struct TorsionDecomposition<F: Field> {
    pub torsion: Arc<TruncatedModule<F>>,
    pub torsion_free: Arc<TruncatedModule<F>>,
    pub inclusion: ModuleMorphism<F>,
    pub projection: ModuleMorphism<F>,
    /// `td(V)` as seen in the stored degrees.
    pub torsion_degree: Degree,
    /// True when an a priori bound on `td(V)` lies below the truncation, so
    /// that every torsion element dies within the stored degrees.
    pub certified: bool,
}

/// Elements of `V_n` killed by `ι^{N-n}`, degree by degree.
pub fn torsion_submodule<F: Field>(v: &TruncatedModule<F>) -> Submodule<F> {
    let f = v.field();
    let top = v.truncation();
    let mut spaces = vec![Subspace::zero(f, v.dim(top))];
    for n in (0..top).rev() {
        let next = spaces.last().unwrap().preimage_under(f, v.iota(n));
        spaces.push(next);
    }
    spaces.reverse();
    Submodule::from_spaces(spaces)
}

/// Largest `n < N` with `ker(ι_n) ≠ 0`.
pub fn iota_kernel_degree<F: Field>(v: &TruncatedModule<F>) -> Degree {
    let f = v.field();
    Degree::max_of(
        (0..v.truncation())
            .filter(|&n| v.iota(n).rank(f) < v.dim(n))
            .map(|n| n as i64),
    )
}

/// The torsion decomposition. `td_bound` is an a priori upper bound for
/// `td(V)` when one is known.
pub fn torsion_part<F: Field>(v: &Arc<TruncatedModule<F>>, td_bound: Option<Degree>) -> TorsionDecomposition<F> {
    let sub = torsion_submodule(v);
    let (torsion, inclusion) = include(v, &sub);
    let (torsion_free, projection) = crate::module::morphism::quotient_trusted(v, &sub);
    let certified = td_bound.is_some_and(|b| b.at_most(v.reliable_up_to() as i64 - 1));
    TorsionDecomposition {
        torsion_degree: iota_kernel_degree(v),
        torsion,
        torsion_free,
        inclusion,
        projection,
        certified,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::FiniteGroup;
    use crate::linalg::{Matrix, PrimeField};
    use crate::module::{direct_sum, free_module, FreeModuleSpec, ModuleElement, Presentation};

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn free(degrees: Vec<usize>, n_top: usize) -> TruncatedModule<PrimeField> {
        free_module(&gf(2), &Arc::new(FiniteGroup::trivial()), &FreeModuleSpec::new(degrees), n_top)
    }

    fn truncated_point(i: usize, n_top: usize) -> Arc<TruncatedModule<PrimeField>> {
        let rel = ModuleElement { degree: i, coords: vec![1] };
        Presentation::new(gf(2), Arc::new(FiniteGroup::trivial()), n_top, FreeModuleSpec::single(0), vec![rel])
            .unwrap()
            .module()
            .unwrap()
    }

    #[test]
    fn shift_examples() {
        let f = gf(2);
        let s = shift(&free(vec![0], 6), 1).unwrap();
        assert_eq!(s.shift, 1);
        assert_eq!(s.module.dims(), &[1; 6]);
        for n in 0..5 {
            assert_eq!(s.module.iota(n), &Matrix::identity(&f, 1));
        }

        let s1 = shift(&free(vec![1], 6), 1).unwrap().module;
        assert_eq!(s1.dims(), free(vec![1, 0], 5).dims());
        s1.validate().unwrap();

        assert!(shift(&*truncated_point(3, 6), 3).unwrap().module.is_zero());
        assert!(matches!(
            shift(&free(vec![0], 2), 3),
            Err(Error::TruncationExceeded { degree: 3, truncation: 2 })
        ));
    }

    #[test]
    fn shifts_are_functors() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let rel = ModuleElement { degree: 2, coords: vec![1, 0, 1, 1, 0, 2, 1, 0] };
        let v = Presentation::new(gf(3), g, 5, FreeModuleSpec::new(vec![1, 1]), vec![rel])
            .unwrap()
            .module()
            .unwrap();
        for a in 0..=3 {
            shift(&v, a).unwrap().module.validate().unwrap();
        }
        natural_map_to_shift(&v).unwrap().validate().unwrap();
    }

    #[test]
    fn natural_map_examples() {
        let f = gf(2);
        let phi = natural_map_to_shift(&free(vec![0], 5)).unwrap();
        assert!(phi.maps().iter().all(|m| m.is_invertible(&f)));

        let phi = natural_map_to_shift(&truncated_point(3, 6)).unwrap();
        assert!(!phi.map(1).is_zero(&f));
        assert!(phi.maps()[2..].iter().all(|m| m.is_zero(&f)));

        let phi = natural_map_to_shift(&free(vec![2, 1], 5)).unwrap();
        for (n, m) in phi.maps().iter().enumerate() {
            assert_eq!(m.rank(&f), phi.source().dim(n));
        }
        assert!(natural_map_to_shift(&free(vec![0], 0)).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert!(derivative(&free(vec![0], 6)).unwrap().is_zero());
        let d = derivative(&free(vec![2], 6)).unwrap();
        assert_eq!(d.truncation(), 5);
        assert_eq!(d.dims(), &[0, 2, 4, 6, 8, 10]);
        assert!(derivative(&truncated_point(3, 6)).unwrap().is_zero());
    }

    #[test]
    fn torsion_examples() {
        let v = Arc::new(free(vec![1, 2], 5));
        let t = torsion_part(&v, Some(Degree::NegInf));
        assert!(t.torsion.is_zero());
        assert_eq!(t.torsion_free.dims(), v.dims());
        assert_eq!(t.torsion_degree, Degree::NegInf);
        assert!(t.certified);

        let v = truncated_point(3, 6);
        let t = torsion_part(&v, None);
        assert_eq!(t.torsion.dims(), v.dims());
        assert!(t.torsion_free.is_zero());
        assert_eq!(t.torsion_degree, Degree::Finite(2));
        assert!(!t.certified);

        let v = Arc::new(direct_sum(&free(vec![1], 6), &truncated_point(2, 6)).unwrap());
        let t = torsion_part(&v, Some(Degree::Finite(1)));
        assert_eq!(t.torsion.dims(), &[1, 1, 0, 0, 0, 0, 0]);
        assert_eq!(t.torsion_free.dims(), &[0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(t.torsion_degree, Degree::Finite(1));
        assert_eq!(iota_kernel_degree(&t.torsion), Degree::Finite(1));
        assert_eq!(iota_kernel_degree(&t.torsion_free), Degree::NegInf);
        assert!(t.certified);
        t.inclusion.validate().unwrap();
        t.projection.validate().unwrap();
    }
}
