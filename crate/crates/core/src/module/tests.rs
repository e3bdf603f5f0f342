use std::sync::Arc;

use super::*;
use crate::category::{enumerate_hom, FiniteGroup};
use crate::linalg::{Field, Matrix, PrimeField, Rationals};

fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn triv() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::trivial())
}

/// `M(0)/𝔪^i M(0)` on degrees `0..=n_top`.
fn truncated_point(i: usize, n_top: usize) -> Arc<TruncatedModule<PrimeField>> {
    let f = gf(2);
    let rel = ModuleElement { degree: i, coords: vec![1] };
    Presentation::new(f, triv(), n_top, FreeModuleSpec::single(0), vec![rel])
        .unwrap()
        .module()
        .unwrap()
}

#[test]
fn presentation_examples() {
    let f = gf(2);
    let free = Presentation::free(f, triv(), 4, FreeModuleSpec::new(vec![1, 2]));
    let v = free.module().unwrap();
    assert_eq!(v.dims(), free_module(&f, &triv(), &FreeModuleSpec::new(vec![1, 2]), 4).dims());

    assert_eq!(truncated_point(3, 6).dims(), &[1, 1, 1, 0, 0, 0, 0]);

    let gen = ModuleElement { degree: 1, coords: vec![1] };
    let zero = Presentation::new(f, triv(), 4, FreeModuleSpec::single(1), vec![gen])
        .unwrap()
        .module()
        .unwrap();
    assert!(zero.is_zero());
}

#[test]
fn presented_modules_are_functors() {
    let f = gf(3);
    let g = Arc::new(FiniteGroup::cyclic(2));
    let spec = FreeModuleSpec::new(vec![1, 0]);
    assert_eq!(spec.dim(2, 2), 5);
    let short = ModuleElement { degree: 2, coords: vec![1, 2, 0, 1] };
    assert!(Presentation::new(f, g.clone(), 4, spec.clone(), vec![short]).is_err());

    let rel = ModuleElement { degree: 2, coords: vec![1, 2, 0, 1, 1] };
    let v = Presentation::new(f, g, 4, spec, vec![rel]).unwrap().module().unwrap();
    v.validate().unwrap();
}

#[test]
fn apply_morphism_is_functorial() {
    let f = gf(2);
    let g = Arc::new(FiniteGroup::cyclic(2));
    let rel = ModuleElement {
        degree: 2,
        coords: vec![1, 0, 0, 1, 1],
    };
    let v = Presentation::new(f, g.clone(), 4, FreeModuleSpec::new(vec![1, 0]), vec![rel])
        .unwrap()
        .module()
        .unwrap();
    for m in 0..=2 {
        for b in 0..v.dim(m) {
            let x = ModuleElement::basis(&v, m, b);
            for n in m..=3 {
                for f1 in enumerate_hom(m, n, &g) {
                    let y = v.apply_morphism(&x, &f1).unwrap();
                    for k in n..=4 {
                        for f2 in enumerate_hom(n, k, &g) {
                            let lhs = v.apply_morphism(&y, &f2).unwrap();
                            let rhs = v.apply_morphism(&x, &f2.compose(&f1, &g).unwrap()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn apply_morphism_beyond_truncation() {
    let v = truncated_point(3, 3);
    let x = ModuleElement::basis(&v, 0, 0);
    let f = crate::category::FiMorphism::standard_inclusion(0, 4, v.group());
    assert!(matches!(
        v.apply_morphism(&x, &f),
        Err(crate::Error::TruncationExceeded { degree: 4, truncation: 3 })
    ));
    let id = crate::category::FiMorphism::identity(0, v.group());
    assert_eq!(v.apply_morphism(&x, &id).unwrap(), x);
}

#[test]
fn yoneda_examples() {
    let f = gf(2);
    let spec = FreeModuleSpec::single(2);
    let m2 = Arc::new(free_module(&f, &triv(), &spec, 4));
    let phi = yoneda_morphism(&m2, &free_generator(&m2, &spec, 0)).unwrap();
    phi.validate().unwrap();
    for n in 0..=4 {
        assert_eq!(phi.map(n), &Matrix::identity(&f, m2.dim(n)));
    }
    let zero = yoneda_morphism(&m2, &ModuleElement { degree: 2, coords: vec![0, 0] }).unwrap();
    assert!(zero.is_zero());

    let m0 = Arc::new(free_module(&f, &triv(), &FreeModuleSpec::single(0), 4));
    let phi = yoneda_morphism(&m0, &ModuleElement { degree: 1, coords: vec![1] }).unwrap();
    phi.validate().unwrap();
    for n in 1..=4 {
        assert!(phi.map(n).row(0).iter().all(|&x| x == 1));
        assert_eq!(phi.map(n).cols(), n);
    }
}

#[test]
fn direct_sum_dims() {
    let f = gf(5);
    let m1 = free_module(&f, &triv(), &FreeModuleSpec::single(1), 4);
    let m0 = free_module(&f, &triv(), &FreeModuleSpec::single(0), 4);
    let s = direct_sum(&m1, &m0).unwrap();
    assert_eq!(s.dims(), &[1, 2, 3, 4, 5]);
    s.validate().unwrap();
    let z = TruncatedModule::zero(f, triv(), 4);
    assert_eq!(direct_sum(&m1, &z).unwrap().dims(), m1.dims());
    let short = TruncatedModule::zero(f, triv(), 3);
    assert!(direct_sum(&m1, &short).is_err());
}

#[test]
fn span_examples() {
    let f = gf(2);
    let spec = FreeModuleSpec::single(1);
    let m1 = Arc::new(free_module(&f, &triv(), &spec, 4));
    let all = Submodule::span(&m1, &[free_generator(&m1, &spec, 0)]).unwrap();
    assert_eq!(all.dims(), m1.dims());
    assert!(Submodule::span(&m1, &[]).unwrap().is_zero());

    let m0 = Arc::new(free_module(&f, &triv(), &FreeModuleSpec::single(0), 4));
    let (sub, incl) = submodule_span(&m0, &[ModuleElement { degree: 2, coords: vec![1] }]).unwrap();
    assert_eq!(sub.dims(), &[0, 0, 1, 1, 1]);
    incl.validate().unwrap();
}

#[test]
fn span_is_a_closure_operator() {
    let f = gf(3);
    let spec = FreeModuleSpec::new(vec![1, 1]);
    let m = Arc::new(free_module(&f, &triv(), &spec, 4));
    let a = ModuleElement { degree: 2, coords: vec![1, 2, 0, 1] };
    let b = ModuleElement { degree: 3, coords: (0..6).map(|i| (i % 3) as u32).collect() };
    let sa = Submodule::span(&m, &[a.clone()]).unwrap();
    let sab = Submodule::span(&m, &[a.clone(), b]).unwrap();
    assert!(sa.is_subset_of(&f, &sab));
    assert!(sab.is_stable(&m));
    let basis_gens: Vec<ModuleElement<PrimeField>> = (0..=4)
        .flat_map(|n| {
            sa.space(n)
                .basis()
                .row_iter()
                .map(move |r| ModuleElement { degree: n, coords: r.to_vec() })
                .collect::<Vec<_>>()
        })
        .collect();
    assert_eq!(Submodule::span(&m, &basis_gens).unwrap(), sa);
}

#[test]
fn m_multiply_examples() {
    let f = gf(2);
    let m0 = Arc::new(free_module(&f, &triv(), &FreeModuleSpec::single(0), 5));
    let full = Submodule::full(&m0);
    assert_eq!(full.m_multiply(&m0, 1).dims(), vec![0, 1, 1, 1, 1, 1]);
    assert_eq!(full.m_multiply(&m0, 3).dims(), vec![0, 0, 0, 1, 1, 1]);
    assert_eq!(full.m_multiply(&m0, 0), full);
    assert!(Submodule::zero(&m0).m_multiply(&m0, 1).is_zero());

    let spec = FreeModuleSpec::new(vec![1, 0]);
    let m = Arc::new(free_module(&gf(3), &Arc::new(FiniteGroup::cyclic(2)), &spec, 4));
    let w = Submodule::span(&m, &[ModuleElement { degree: 2, coords: vec![1, 0, 2, 0, 1] }]).unwrap();
    for i in 0..=2 {
        for j in 0..=2 {
            assert_eq!(w.m_multiply(&m, j).m_multiply(&m, i), w.m_multiply(&m, i + j));
        }
    }
}

#[test]
fn quotient_examples() {
    let f = gf(2);
    let m0 = Arc::new(free_module(&f, &triv(), &FreeModuleSpec::single(0), 5));
    let (q, _) = quotient(&m0, &Submodule::zero(&m0)).unwrap();
    assert_eq!(q.dims(), m0.dims());
    let (q, _) = quotient(&m0, &Submodule::full(&m0)).unwrap();
    assert!(q.is_zero());
    let cube = Submodule::full(&m0).m_multiply(&m0, 3);
    let (q, proj) = quotient(&m0, &cube).unwrap();
    assert_eq!(q.dims(), &[1, 1, 1, 0, 0, 0]);
    proj.validate().unwrap();

    let m1 = Arc::new(free_module(&f, &triv(), &FreeModuleSpec::single(1), 3));
    let not_stable = Submodule::from_spaces(vec![
        crate::linalg::Subspace::zero(&f, 0),
        crate::linalg::Subspace::zero(&f, 1),
        crate::linalg::Subspace::from_vectors(&f, 2, vec![vec![1, 0]]),
        crate::linalg::Subspace::zero(&f, 3),
    ]);
    assert!(matches!(quotient(&m1, &not_stable), Err(crate::Error::InvalidSubmodule(_))));
}

#[test]
fn exactness_of_sub_and_quotient() {
    let f = gf(5);
    let spec = FreeModuleSpec::new(vec![2, 1]);
    let m = Arc::new(free_module(&f, &triv(), &spec, 4));
    let coords: Vec<u32> = (0..m.dim(3)).map(|i| ((i * 7 + 3) % 5) as u32).collect();
    let w = Submodule::span(&m, &[ModuleElement { degree: 3, coords }]).unwrap();
    let (sub, incl) = include(&m, &w);
    let (q, proj) = quotient(&m, &w).unwrap();
    for n in 0..=4 {
        assert_eq!(m.dim(n), sub.dim(n) + q.dim(n));
        assert!(proj.map(n).mul(&f, incl.map(n)).is_zero(&f));
    }
    sub.validate().unwrap();
    q.validate().unwrap();
    incl.validate().unwrap();
    proj.validate().unwrap();
}

#[test]
fn kernel_and_cokernel_examples() {
    let f = gf(2);
    let m0 = Arc::new(free_module(&f, &triv(), &FreeModuleSpec::single(0), 5));
    let id = ModuleMorphism::identity(m0.clone());
    assert!(kernel_of(&id).0.is_zero());
    assert!(cokernel_of(&id).0.is_zero());
    let zero = ModuleMorphism::zero(m0.clone(), m0.clone()).unwrap();
    assert_eq!(kernel_of(&zero).0.dims(), m0.dims());
    assert_eq!(cokernel_of(&zero).0.dims(), m0.dims());

    let phi = yoneda_morphism(&m0, &ModuleElement { degree: 1, coords: vec![1] }).unwrap();
    let (k, incl) = kernel_of(&phi);
    assert_eq!(k.dims(), &[0, 0, 1, 2, 3, 4]);
    incl.validate().unwrap();
    k.validate().unwrap();
    let (c, proj) = cokernel_of(&phi);
    assert_eq!(c.dims(), &[1, 0, 0, 0, 0, 0]);
    proj.validate().unwrap();
}

#[test]
fn rational_presentation() {
    let q = Rationals;
    let rel = ModuleElement {
        degree: 2,
        coords: vec![q.parse("1/2").unwrap(), q.parse("-3").unwrap()],
    };
    let p = Presentation::new(q, triv(), 4, FreeModuleSpec::single(1), vec![rel]).unwrap();
    let v = p.module().unwrap();
    v.validate().unwrap();
    // r and s·r are independent, so the relation kills all of M(1)_2.
    assert_eq!(v.dims(), &[0, 1, 0, 0, 0]);
    let file = p.to_file();
    let back = Presentation::from_file(&PresentationFile::from_json(&file.to_json()).unwrap(), q).unwrap();
    assert_eq!(back, p);
}

/// The dual construction in `build` against span-then-quotient in `F⁰`.
#[test]
fn build_matches_span_quotient() {
    use crate::lab::{random_presentation, SampleCaps};
    use rand::SeedableRng;
    let caps = SampleCaps {
        max_generators: 2,
        max_generator_degree: 2,
        max_relations: 3,
        max_relation_degree: 4,
    };
    fn compare<F: Field>(p: &Presentation<F>, n_top: usize) {
        let built = p.build(n_top).unwrap();
        let span = Submodule::span(&built.free, p.relations()).unwrap();
        let (q, proj) = quotient(&built.free, &span).unwrap();
        assert_eq!(built.module.dims(), q.dims());
        for n in 0..=n_top {
            assert_eq!(built.projection.map(n), proj.map(n), "projection in degree {n}");
            assert_eq!(built.module.actions(n), q.actions(n), "actions in degree {n}");
            if n < n_top {
                assert_eq!(built.module.iota(n), q.iota(n), "iota in degree {n}");
            }
        }
        assert_eq!(built.relation_span().dims(), span.dims());
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for trial in 0..30 {
        let (group, n_top) = if trial % 3 == 0 {
            (Arc::new(FiniteGroup::cyclic(2)), 4)
        } else {
            (triv(), 6)
        };
        let p = random_presentation(&mut rng, gf([2, 3, 5][trial % 3]), group.clone(), n_top, &caps);
        compare(&p, n_top);
        let r = random_presentation(&mut rng, Rationals, group, n_top, &caps);
        compare(&r, n_top);
    }
}
