//! The acceptance suite: one line per criterion, then a nonzero exit if
//! any criterion failed. Runs without the libtest harness so the lines
//! show up in plain `cargo test` output.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use fimod::category::{enumerate_hom, hom_index, hom_size, morphism_at, FiMorphism, FiniteGroup, GroupSpec};
use fimod::functors::{derivative, torsion_part};
use fimod::homology::{analyze, analyze_presentation, h0, smallest_filtered_shift, td, AnalysisOptions, DegreeBounds};
use fimod::lab::{
    intersection_stabilization, presentation_witness, random_element, random_presentation, run_campaign,
    CampaignConfig, CampaignReport, Outcome, SampleCaps, Tally,
};
use fimod::linalg::{Field, Matrix, PrimeField, Rationals};
use fimod::module::{
    cokernel_of, free_module, kernel_of, yoneda_sum, FreeModuleSpec, ModuleElement, ModuleMorphism, Presentation,
    PresentationFile, Submodule, TruncatedModule,
};
use fimod::Degree;
use fimod_oracle::{compare, ModuleDump};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn gf(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn trivial() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::trivial())
}

fn c2() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(2))
}

/// `M(0)/𝔪^i M(0)`.
fn truncated_point(i: usize, n: usize) -> Presentation<PrimeField> {
    Presentation::new(
        gf(2),
        trivial(),
        n,
        FreeModuleSpec::single(0),
        vec![ModuleElement { degree: i, coords: vec![1] }],
    )
    .unwrap()
}

/// The shared ensemble: random presented modules over GF(2) and GF(5)
/// generated in degrees at most 3, truncated at 12.
fn ensemble_config() -> CampaignConfig {
    CampaignConfig {
        seed: 20_240_531,
        samples: 170,
        primes: vec![2, 5],
        groups: vec![GroupSpec::trivial()],
        max_generators: 2,
        max_generator_degree: 3,
        max_relations: 3,
        max_relation_degree: 4,
        truncation: 12,
        s_max: 3,
        witnesses: false,
    }
}

fn tally(report: &CampaignReport, check: &str) -> Tally {
    report.tallies[check]
}

fn within(elapsed: Duration, limit: Duration) -> Check {
    if elapsed < limit {
        Ok(String::new())
    } else {
        Err(format!("took {:.1} s, limit {} s", elapsed.as_secs_f64(), limit.as_secs()))
    }
}

// 1. Hom counts and associativity.

fn falling(n: usize, k: usize) -> usize {
    (n - k + 1..=n).product()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut counted = 0usize;
    for group in [trivial(), c2()] {
        let order = group.order();
        for n in 0..=8 {
            for m in 0..=n {
                let expected = order.pow(m as u32) * falling(n, m);
                ensure!(hom_size(m, n, order) == expected, "hom_size({m}, {n}) with |G| = {order}");
                counted += count_hom(m, n, &group, expected)?;
            }
        }
    }
    let mut triples = 0u64;
    for group in [trivial(), c2()] {
        triples += associativity(&group, 4)?;
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{counted} morphisms counted for m <= n <= 8; {triples} composable triples associative"))
}

/// Walks `Hom(m, n)` by index and checks every morphism is valid, sits at
/// its own index, and strictly follows its predecessor in the canonical
/// (injection, decoration) order, so the walk lists distinct morphisms.
fn count_hom(m: usize, n: usize, group: &FiniteGroup, expected: usize) -> Result<usize, String> {
    let order = group.order();
    let small = expected <= 50_000;
    if small {
        ensure!(enumerate_hom(m, n, group).len() == expected, "enumerate_hom({m}, {n})");
    }
    let mut prev: Option<FiMorphism> = None;
    for i in 0..expected {
        let h = morphism_at(m, n, i, group);
        ensure!(h.source() == m && h.target() == n, "morphism {i} of Hom({m}, {n}) has the wrong ends");
        let image = h.injection().iter().fold(0u32, |acc, &x| acc | 1 << x);
        ensure!(image.count_ones() as usize == m && image >> n == 0, "morphism {i} is not injective");
        ensure!(h.decoration().iter().all(|&g| g < order), "morphism {i} has a bad decoration");
        ensure!(hom_index(&h, order) == i, "morphism {i} of Hom({m}, {n}) does not round-trip");
        if let Some(p) = &prev {
            ensure!(
                (p.injection(), p.decoration()) < (h.injection(), h.decoration()),
                "Hom({m}, {n}) is not strictly increasing at {i}"
            );
        }
        prev = Some(h);
    }
    Ok(expected)
}

/// Composition tables by index, then `(c∘b)∘a = c∘(b∘a)` over every
/// composable triple of objects up to `top`, plus the unit laws.
fn associativity(group: &FiniteGroup, top: usize) -> Result<u64, String> {
    let order = group.order();
    let homs: Vec<Vec<Vec<FiMorphism>>> =
        (0..=top).map(|m| (0..=top).map(|n| if m <= n { enumerate_hom(m, n, group) } else { vec![] }).collect()).collect();
    // table[l][m][n][j * |Hom(l, m)| + i] = index of homs[m][n][j] ∘ homs[l][m][i].
    let mut table = vec![vec![vec![Vec::new(); top + 1]; top + 1]; top + 1];
    for l in 0..=top {
        for m in l..=top {
            for n in m..=top {
                let mut t = Vec::with_capacity(homs[l][m].len() * homs[m][n].len());
                for b in &homs[m][n] {
                    for a in &homs[l][m] {
                        let ba = b.compose(a, group).map_err(|e| e.to_string())?;
                        ensure!(ba.source() == l && ba.target() == n, "composite has the wrong ends");
                        t.push(hom_index(&ba, order));
                    }
                }
                table[l][m][n] = t;
            }
        }
    }
    for m in 0..=top {
        let id = hom_index(&FiMorphism::identity(m, group), order);
        for n in m..=top {
            let size = homs[m][n].len();
            for i in 0..size {
                ensure!(table[m][m][n][i * homs[m][m].len() + id] == i, "f ∘ id != f in Hom({m}, {n})");
            }
            let id_n = hom_index(&FiMorphism::identity(n, group), order);
            for i in 0..size {
                ensure!(table[m][n][n][id_n * size + i] == i, "id ∘ f != f in Hom({m}, {n})");
            }
        }
    }
    let mut triples = 0u64;
    for k in 0..=top {
        for l in k..=top {
            for m in l..=top {
                for n in m..=top {
                    let (ka, lb, mc) = (homs[k][l].len(), homs[l][m].len(), homs[m][n].len());
                    let (t_klm, t_lmn, t_kmn, t_kln) = (&table[k][l][m], &table[l][m][n], &table[k][m][n], &table[k][l][n]);
                    let km = homs[k][m].len();
                    for c in 0..mc {
                        for b in 0..lb {
                            let cb = t_lmn[c * lb + b];
                            for a in 0..ka {
                                let left = t_kln[cb * ka + a];
                                let right = t_kmn[c * km + t_klm[b * ka + a]];
                                if left != right {
                                    return Err(format!("associativity fails on [{k}] -> [{l}] -> [{m}] -> [{n}]"));
                                }
                            }
                        }
                        triples += (lb * ka) as u64;
                    }
                }
            }
        }
    }
    Ok(triples)
}

// 2. Oracle agreement.

fn criterion_2() -> Check {
    let caps = SampleCaps {
        max_generators: 2,
        max_generator_degree: 2,
        max_relations: 3,
        max_relation_degree: 4,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut compared = 0;
    for i in 0..50 {
        let p = random_presentation(&mut rng, gf(2), trivial(), 4, &caps);
        let report = compare(&p.module().unwrap()).map_err(|e| e.to_string())?;
        ensure!(report.agree, "random presentation {i}: {:?}", report.mismatches);
        compared += 1;
    }
    for (group, n) in [(trivial(), 4), (c2(), 3)] {
        for m in 0..=2 {
            let v = free_module(&gf(2), &group, &FreeModuleSpec::single(m), n);
            let report = compare(&v).map_err(|e| e.to_string())?;
            ensure!(report.agree, "M({m}) with |G| = {}: {:?}", group.order(), report.mismatches);
            compared += 1;
        }
    }
    Ok(format!("{compared} modules, 0 mismatches on H0, V_T, mV, gd, td"))
}

// 3. gd(DV) = gd(V) - 1, and D(M(m)).

fn criterion_3(ensemble: &CampaignReport, elapsed: Duration) -> Check {
    let t = tally(ensemble, "derivative_gd");
    ensure!(t.fail == 0, "{} violations", t.fail);
    ensure!(t.pass >= 100, "only {} certified modules with DV != 0 ({} inconclusive)", t.pass, t.inconclusive);
    // Independent re-check of the recorded values.
    for s in &ensemble.samples {
        if s.checks["derivative_gd"].outcome == Outcome::Pass {
            ensure!(s.facts.gd_derivative == s.report.gd + -1, "sample {}", s.index);
        }
    }
    let mut free_checked = 0;
    for (group, n) in [(trivial(), 8), (c2(), 7)] {
        let order = group.order();
        for m in 1..=3 {
            let v = free_module(&gf(2), &group, &FreeModuleSpec::single(m), n);
            let dv = derivative(&v).map_err(|e| e.to_string())?;
            let expected = free_module(&gf(2), &group, &FreeModuleSpec::new(vec![m - 1; m * order]), n);
            let top = dv.reliable_up_to().min(dv.truncation());
            ensure!(top + 1 >= n, "D(M({m})) reliable only to {top}");
            for d in 0..=top {
                ensure!(dv.dim(d) == expected.dim(d), "dim D(M({m}))_{d} with |G| = {order}");
            }
            let (a, b) = (h0(&dv).dims, h0(&expected).dims);
            ensure!(a.dims()[..=top] == b.dims()[..=top], "H0 of D(M({m})) with |G| = {order}");
            free_checked += 1;
        }
    }
    within(elapsed, Duration::from_secs(120))?;
    Ok(format!(
        "{} modules with DV != 0 ({} inconclusive, {} with DV = 0); {free_checked} free modules match",
        t.pass, t.inconclusive, t.not_applicable
    ))
}

// 4. td and hd_s bounds, and their sharpness.

fn criterion_4(ensemble: &CampaignReport) -> Check {
    let t = tally(ensemble, "td_hd_bounds");
    ensure!(t.fail == 0 && t.inconclusive == 0, "{} violations, {} uncertified", t.fail, t.inconclusive);
    for s in &ensemble.samples {
        let r = &s.report;
        ensure!(r.all_certified(), "sample {} not certified", s.index);
        let (g, h1) = (r.gd, r.hd(1));
        ensure!(r.td <= g + h1 + -1, "td bound on sample {}", s.index);
        for k in 1..=3 {
            ensure!(r.hd(k) <= g + h1 + (k as i64 - 1), "hd_{k} bound on sample {}", s.index);
        }
    }
    let opts = AnalysisOptions::default();
    for i in 1..=5 {
        let a = analyze_presentation(&truncated_point(i, i + 4), &opts).map_err(|e| e.to_string())?;
        let r = a.report();
        ensure!(r.all_certified(), "M(0)/m^{i} not certified");
        ensure!(
            r.gd == Degree::finite(0) && r.hd(1) == Degree::finite(i) && r.td == Degree::finite(i - 1),
            "M(0)/m^{i}: gd {}, hd1 {}, td {}",
            r.gd,
            r.hd(1),
            r.td
        );
        ensure!(r.td == r.gd + r.hd(1) + -1, "no equality for M(0)/m^{i}");
    }
    Ok(format!("{} modules, s = 1..3, all certified; equality on M(0)/m^i, i = 1..5", t.pass))
}

// 5. Torsion parts.

fn criterion_5(ensemble: &CampaignReport) -> Check {
    let t = tally(ensemble, "torsion_part");
    ensure!(t.fail == 0 && t.inconclusive == 0, "{} violations, {} uncertified", t.fail, t.inconclusive);
    for s in &ensemble.samples {
        ensure!(s.facts.gd_torsion.is_finite_or_neg_inf(), "gd(V_T) infinite on sample {}", s.index);
        ensure!(s.facts.td_torsion == s.report.td, "td(V_T) != td(V) on sample {}", s.index);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut built = 0;
    for _ in 0..30 {
        let (v, bound) = random_torsion_module(&mut rng);
        let top = v.truncation();
        ensure!(v.dim(top) == 0, "constructed module is not torsion");
        let tp = torsion_part(&v, None);
        ensure!(tp.torsion.dims() == v.dims(), "constructed module has a torsion-free part");
        let d = td(&v);
        ensure!(d <= Degree::finite(bound), "td {d} above max(n_i + N_i) = {bound}");
        built += 1;
    }
    Ok(format!("{} modules with td(V_T) = td(V); {built} torsion modules within max(n_i + N_i)", t.pass))
}

/// Generators `v_i` in degrees `N_i` with `𝔪^{n_i} v_i = 0`, imposed by the
/// relation `ι^{n_i} v_i`, plus a few random relations. Returns the module
/// and `max(n_i + N_i)`.
fn random_torsion_module(rng: &mut ChaCha8Rng) -> (Arc<TruncatedModule<PrimeField>>, usize) {
    let field = gf([2, 3, 5][rng.gen_range(0..3)]);
    let group = if rng.gen_bool(0.5) { trivial() } else { c2() };
    let r = rng.gen_range(1..=2);
    let degrees: Vec<usize> = (0..r).map(|_| rng.gen_range(0..=2)).collect();
    let kills: Vec<usize> = (0..r).map(|_| rng.gen_range(1..=3)).collect();
    let bound = (0..r).map(|i| degrees[i] + kills[i]).max().unwrap();
    let truncation = bound + 2;
    let spec = FreeModuleSpec::new(degrees.clone());
    let order = group.order();
    let mut relations = Vec::new();
    for i in 0..r {
        let n = degrees[i] + kills[i];
        let mut coords = vec![field.zero(); spec.dim(n, order)];
        let iota = FiMorphism::standard_inclusion(degrees[i], n, &group);
        coords[spec.coordinate(i, &iota, order)] = field.one();
        relations.push(ModuleElement { degree: n, coords });
    }
    for _ in 0..rng.gen_range(0..=2) {
        let degree = rng.gen_range(0..=bound);
        relations.push(random_element(rng, &field, &group, &spec, degree));
    }
    let p = Presentation::new(field, group, truncation, spec, relations).unwrap();
    (p.module().unwrap(), bound)
}

trait FiniteOrNegInf {
    fn is_finite_or_neg_inf(&self) -> bool;
}

impl FiniteOrNegInf for Degree {
    fn is_finite_or_neg_inf(&self) -> bool {
        *self == Degree::NegInf || self.value().is_some()
    }
}

// 6. Syzygy witnesses.

fn criterion_6() -> Check {
    let start = Instant::now();
    let caps = SampleCaps {
        max_generators: 2,
        max_generator_degree: 3,
        max_relations: 3,
        max_relation_degree: 3,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut top_seen = Degree::NegInf;
    let mut count = 0;
    for i in 0..60 {
        let field = gf([2, 3][rng.gen_range(0..2)]);
        let group = if i % 4 == 3 { c2() } else { trivial() };
        let p = random_presentation(&mut rng, field, group, 12, &caps);
        let g0 = p.generators().generating_degree();
        let g1 = FreeModuleSpec::new(p.relations().iter().map(|r| r.degree).collect()).generating_degree();
        let w = presentation_witness(&p).map_err(|e| e.to_string())?;
        let top = w.top_generator_degree();
        ensure!(w.certified, "map {i}: not certified");
        ensure!(w.respan, "map {i}: generators do not span the kernel");
        ensure!(w.minimal, "map {i}: generators are not minimal");
        ensure!(top <= g0 + g1 + 1, "map {i}: kernel generator in degree {top} > {g0} + {g1} + 1");
        top_seen = top_seen.max(top);
        count += 1;
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("{count} maps F1 -> F0, top kernel generator degree seen {top_seen}"))
}

// 7. Intersection stabilization.

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut degrees = Vec::new();
    for i in 0..60 {
        let field = gf([2, 3][rng.gen_range(0..2)]);
        let group = if i % 3 == 2 { c2() } else { trivial() };
        let n = if group.order() == 1 { 9 } else { 7 };
        let spec = FreeModuleSpec::new((0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..=2)).collect());
        let w = Arc::new(free_module(&field, &group, &spec, n));
        let gens: Vec<_> = (0..rng.gen_range(1..=3))
            .map(|_| {
                let d = rng.gen_range(0..=3);
                random_element(&mut rng, &field, &group, &spec, d)
            })
            .collect();
        let v = Submodule::span(&w, &gens).map_err(|e| e.to_string())?;
        let s = intersection_stabilization(&w, &v).map_err(|e| e.to_string())?;
        match s.degree {
            Some(d) => degrees.push(d),
            None => return Err(format!("submodule {i} does not stabilize below {n}")),
        }
    }
    let m0 = Arc::new(free_module(&gf(2), &trivial(), &FreeModuleSpec::single(0), 8));
    let m2 = Submodule::span(&m0, &[ModuleElement { degree: 2, coords: vec![1] }]).map_err(|e| e.to_string())?;
    let s = intersection_stabilization(&m0, &m2).map_err(|e| e.to_string())?;
    ensure!(s.degree == Some(2), "m^2 M(0) stabilizes at {:?}", s.degree);
    Ok(format!(
        "{} submodules stabilize (max degree {}); m^2 M(0) at 2",
        degrees.len(),
        degrees.iter().max().unwrap()
    ))
}

// 8. Filtered shifts and regularity.

fn criterion_8(ensemble: &CampaignReport) -> Check {
    let shift = tally(ensemble, "filtered_shift");
    let reg = tally(ensemble, "regularity");
    ensure!(shift.fail == 0, "{} filtered-shift violations", shift.fail);
    ensure!(reg.fail == 0, "{} regularity violations", reg.fail);
    ensure!(reg.inconclusive == 0, "{} uncertified regularity checks", reg.inconclusive);
    for s in &ensemble.samples {
        let f = &s.facts.filtered_shift;
        if s.checks["filtered_shift"].outcome == Outcome::Pass {
            let n = f.n_star.ok_or(format!("sample {}: no N*", s.index))?;
            let bound = (s.report.td.max(s.report.gd + s.report.gd + -2) + 1).max(Degree::finite(0));
            ensure!(Degree::finite(n) <= bound, "sample {}: N* = {n} > {bound}", s.index);
        }
        let r = &s.report;
        ensure!(r.reg <= (r.gd + r.gd + -1).max(r.td), "reg bound on sample {}", s.index);
    }
    let v = truncated_point(3, 10).module().unwrap();
    let search = smallest_filtered_shift(&v, DegreeBounds::of_presentation(&truncated_point(3, 10)));
    ensure!(search.n_star == Some(3), "M(0)/m^3 has N* = {:?}", search.n_star);
    ensure!(search.bound == Degree::finite(3), "M(0)/m^3 has bound {}", search.bound);
    Ok(format!(
        "N* bound certified on {} modules ({} need more than N = 12); reg bound on {}; N* = 3 for M(0)/m^3",
        shift.pass, shift.inconclusive, reg.pass
    ))
}

// 9. Kernels, cokernels, and td(DV).

fn criterion_9(ensemble: &CampaignReport) -> Check {
    let t = tally(ensemble, "derivative_td");
    ensure!(t.fail == 0 && t.inconclusive == 0, "td(DV): {} violations, {} uncertified", t.fail, t.inconclusive);
    for s in &ensemble.samples {
        ensure!(s.facts.td_derivative <= s.facts.td_derivative_bound, "td(DV) on sample {}", s.index);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let opts = AnalysisOptions {
        s_max: 1,
        ..AnalysisOptions::default()
    };
    let mut nonzero = (0, 0);
    for i in 0..30 {
        let (phi, bu, bv) = random_morphism(&mut rng);
        let (k, _) = kernel_of(&phi);
        let (c, _) = cokernel_of(&phi);
        for (name, m, b) in [
            ("kernel", &k, DegreeBounds::kernel(bu, bv)),
            ("cokernel", &c, DegreeBounds::cokernel(bu, bv)),
        ] {
            let r = analyze(m, Some(b), &opts).report;
            ensure!(r.certified.gd && r.hd_certified(1), "morphism {i}: {name} not certified");
            ensure!(r.gd <= b.gd && r.hd(1) <= b.hd1, "morphism {i}: {name} above its bounds");
            ensure!(r.gd.is_finite_or_neg_inf() && r.hd(1).is_finite_or_neg_inf(), "morphism {i}: {name}");
        }
        nonzero.0 += usize::from(!k.is_zero());
        nonzero.1 += usize::from(!c.is_zero());
    }
    Ok(format!(
        "30 morphisms ({} nonzero kernels, {} nonzero cokernels) certified; td(DV) bounded on {} modules",
        nonzero.0,
        nonzero.1,
        t.pass + t.not_applicable
    ))
}

/// A random `U -> V` between presented modules: a map of free modules
/// `F_U -> F_V`, with `V`'s relations enlarged by the image of `U`'s so that
/// it descends. Returns the map and both presentations' degree bounds.
fn random_morphism(rng: &mut ChaCha8Rng) -> (ModuleMorphism<PrimeField>, DegreeBounds, DegreeBounds) {
    let field = gf([2, 3][rng.gen_range(0..2)]);
    let group = trivial();
    let caps = SampleCaps {
        max_generators: 2,
        max_generator_degree: 1,
        max_relations: 2,
        max_relation_degree: 2,
    };
    let pu = random_presentation(rng, field.clone(), group.clone(), 2, &caps);
    let pv0 = random_presentation(rng, field.clone(), group.clone(), 2, &caps);
    let bu = DegreeBounds::of_presentation(&pu);
    // V's relations gain U's relation degrees, so bound V from there.
    let gu = DegreeBounds::of_presentation(&pv0);
    let bv = DegreeBounds {
        gd: gu.gd,
        hd1: gu.hd1.max(pu.relation_degree()),
    };
    let n = DegreeBounds::kernel(bu, bv)
        .required_truncation()
        .max(DegreeBounds::cokernel(bu, bv).required_truncation())
        + 1;
    let fv = Arc::new(free_module(&field, &group, pv0.generators(), n));
    let images: Vec<_> = pu
        .generators()
        .degrees
        .iter()
        .map(|&d| random_element(rng, &field, &group, pv0.generators(), d))
        .collect();
    let (_, free_map) = yoneda_sum(&fv, &images).unwrap();
    let mut relations = pv0.relations().to_vec();
    relations.extend(pu.relations().iter().map(|r| free_map.apply(r)));
    let pv = Presentation::new(field.clone(), group.clone(), n, pv0.generators().clone(), relations).unwrap();
    let u = pu.with_truncation(n).unwrap().build(n).unwrap();
    let v = pv.build(n).unwrap();
    let maps = (0..=n)
        .map(|d| {
            let pu_d = u.projection.map(d);
            let mut m = Matrix::zeros(&field, v.module.dim(d), u.module.dim(d));
            for t in 0..pu_d.rows() {
                // A preimage of the t-th basis vector of U_d in F_U.
                let c = (0..pu_d.cols())
                    .find(|&c| (0..pu_d.rows()).all(|r| field.is_zero(pu_d.get(r, c)) != (r == t) && (r != t || field.is_one(pu_d.get(r, c)))))
                    .expect("the projection is the identity on some columns");
                let image = v.projection.map(d).apply(&field, &free_map.map(d).column(c));
                for (r, x) in image.into_iter().enumerate() {
                    m.set(r, t, x);
                }
            }
            m
        })
        .collect();
    let phi = ModuleMorphism::new(u.module.clone(), v.module.clone(), maps).expect("the induced map is a morphism");
    (phi, bu, DegreeBounds::of_presentation(&pv))
}

// 10. Determinism, round trips, and the CLI contract.

fn criterion_10(ensemble: &CampaignReport) -> Check {
    let small = CampaignConfig {
        samples: 8,
        truncation: 8,
        max_generator_degree: 2,
        max_relation_degree: 3,
        witnesses: true,
        ..ensemble_config()
    };
    let a = run_campaign(&small).map_err(|e| e.to_string())?;
    let b = run_campaign(&small).map_err(|e| e.to_string())?;
    ensure!(a.to_json() == b.to_json() && a.to_csv() == b.to_csv(), "campaign reports differ");
    let again = run_campaign(&ensemble_config_prefix()).map_err(|e| e.to_string())?;
    for (x, y) in again.samples.iter().zip(&ensemble.samples) {
        ensure!(x.presentation == y.presentation, "sample {} changed between runs", x.index);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let caps = SampleCaps {
        max_generators: 3,
        max_generator_degree: 3,
        max_relations: 4,
        max_relation_degree: 5,
    };
    for i in 0..40 {
        let group = if i % 2 == 0 { trivial() } else { c2() };
        let file = if i % 5 == 4 {
            random_presentation(&mut rng, Rationals, group, 6, &caps).to_file()
        } else {
            random_presentation(&mut rng, gf([2, 3, 7][i % 3]), group, 6, &caps).to_file()
        };
        let text = file.to_json();
        let back = PresentationFile::from_json(&text).map_err(|e| e.to_string())?;
        ensure!(back == file && back.to_json() == text, "presentation {i} does not round-trip");
    }

    cli_contract()?;
    Ok("identical reports for identical seeds; 40 presentation files round-trip; CLI exits 0/1/2 as specified".into())
}

/// The first samples of the ensemble, to check they replay.
fn ensemble_config_prefix() -> CampaignConfig {
    CampaignConfig {
        samples: 5,
        ..ensemble_config()
    }
}

fn cli_contract() -> Result<(), String> {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let put = |name: &str, text: String| {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    };
    let run = |args: &[&std::ffi::OsStr]| Command::new(env!("CARGO_BIN_EXE_fimod")).args(args).output().unwrap();

    let good = put("pt3.json", truncated_point(3, 8).to_file().to_json());
    let o = run(&["inspect".as_ref(), good.as_os_str()]);
    ensure!(o.status.code() == Some(0), "inspect exits {:?}", o.status.code());

    let mut coords = vec![0u32; 12];
    coords[0] = 1;
    coords[11] = 1;
    let weak = Presentation::new(
        gf(2),
        trivial(),
        4,
        FreeModuleSpec::single(2),
        vec![ModuleElement { degree: 4, coords }],
    )
    .unwrap();
    let weak = put("weak.json", weak.to_file().to_json());
    let o = run(&["inspect".as_ref(), weak.as_os_str()]);
    let err = String::from_utf8_lossy(&o.stderr);
    ensure!(o.status.code() == Some(0) && err.contains("inconclusive"), "inconclusive run: {:?} {err}", o.status.code());

    let f = gf(2);
    let v = free_module(&f, &trivial(), &FreeModuleSpec::single(1), 3);
    let iota = (0..3).map(|n| v.iota(n).clone()).collect();
    let mut actions: Vec<Vec<Matrix<PrimeField>>> = (0..=3).map(|n| v.actions(n).to_vec()).collect();
    actions[2][0] = Matrix::zeros(&f, 2, 2);
    let broken = TruncatedModule::new(f, trivial(), v.dims().to_vec(), iota, actions).unwrap();
    let broken = put("broken.json", serde_json::to_string(&ModuleDump::of(&broken)).unwrap());
    let o = run(&["oracle-check".as_ref(), "--module".as_ref(), broken.as_os_str()]);
    let err = String::from_utf8_lossy(&o.stderr);
    ensure!(o.status.code() == Some(1) && err.contains("witness"), "violation run: {:?}", o.status.code());

    let bad = put("bad.json", "{\"field\": {\"prime\": 2},".into());
    let o = run(&["inspect".as_ref(), bad.as_os_str()]);
    ensure!(o.status.code() == Some(2), "parse error exits {:?}", o.status.code());
    let o = run(&["--no-such-flag".as_ref(), "inspect".as_ref(), good.as_os_str()]);
    ensure!(o.status.code() == Some(2), "unknown flag exits {:?}", o.status.code());
    Ok(())
}

/// The ensemble campaign, run on first use.
struct Ctx {
    ensemble: OnceLock<Result<CampaignReport, String>>,
}

impl Ctx {
    fn ensemble(&self) -> Result<&CampaignReport, String> {
        self.ensemble
            .get_or_init(|| run_campaign(&ensemble_config()).map_err(|e| format!("ensemble campaign: {e}")))
            .as_ref()
            .map_err(Clone::clone)
    }
}

type Criterion = (usize, &'static str, fn(&Ctx) -> Check);

const CRITERIA: [Criterion; 10] = [
    (1, "Hom counts and associativity", |_| criterion_1()),
    (2, "oracle agreement", |_| criterion_2()),
    (3, "gd(DV) = gd(V) - 1 and D(M(m))", |c| {
        let start = Instant::now();
        let e = c.ensemble()?;
        criterion_3(e, start.elapsed())
    }),
    (4, "td and hd_s bounds", |c| criterion_4(c.ensemble()?)),
    (5, "torsion parts", |c| criterion_5(c.ensemble()?)),
    (6, "syzygy witnesses", |_| criterion_6()),
    (7, "intersection stabilization", |_| criterion_7()),
    (8, "filtered shift and regularity", |c| criterion_8(c.ensemble()?)),
    (9, "kernels, cokernels and td(DV)", |c| criterion_9(c.ensemble()?)),
    (10, "determinism and interfaces", |c| criterion_10(c.ensemble()?)),
];

/// Runs every criterion, or only those whose numbers are given as
/// arguments.
fn main() {
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ctx = Ctx {
        ensemble: OnceLock::new(),
    };
    let mut failed = 0;
    for (id, title, run) in CRITERIA {
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(|| run(&ctx)));
        let elapsed = start.elapsed();
        let (status, detail) = match result {
            Ok(Ok(detail)) => ("PASS", detail),
            Ok(Err(detail)) => ("FAIL", detail),
            Err(panic) => (
                "FAIL",
                panic
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panicked".into()),
            ),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {id:>2} {status} [{:>6.1} s] {title}: {detail}", elapsed.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all selected criteria passed");
}
