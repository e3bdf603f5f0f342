use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::GroupSpec;
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::homology::{analyze_presentation, decomposables, module_generators, AnalysisOptions, DegreeReport};
use crate::linalg::{Field, FieldSpec};
use crate::module::{
    close_under, free_module, kernel_of, yoneda_sum, FreeModuleSpec, ModuleElement, ModuleMorphism,
    Presentation, RelationRecord, Submodule, TruncatedModule,
};

/// On-disk form of a map `F¹ -> F⁰` between free modules: generator `i`
/// of `F¹` goes to `images[i]`, an element of `F⁰` in degree `source[i]`.
///
/// ```json
/// {"field": {"prime": 2}, "group": {"trivial": true}, "truncation": 6,
///  "source": [1], "target": [0], "images": [{"degree": 1, "coeffs": ["1"]}]}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeMapFile {
    pub field: FieldSpec,
    pub group: GroupSpec,
    pub truncation: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub images: Vec<RelationRecord>,
}

impl FreeMapFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("map serializes")
    }

    /// The map as a presentation: `F⁰` with the images as relations.
    pub fn to_presentation<F: Field>(&self, field: F) -> Result<Presentation<F>> {
        for (i, (r, &d)) in self.images.iter().zip(&self.source).enumerate() {
            if r.degree != d {
                return Err(Error::Parse(format!(
                    "images[{i}] has degree {}, but source generator {i} has degree {d}",
                    r.degree
                )));
            }
        }
        if self.images.len() != self.source.len() {
            return Err(Error::Parse(format!(
                "{} images for {} source generators",
                self.images.len(),
                self.source.len()
            )));
        }
        let file = crate::module::PresentationFile {
            field: self.field.clone(),
            group: self.group.clone(),
            truncation: self.truncation,
            generators: self.target.clone(),
            relations: self.images.clone(),
        };
        Presentation::from_file(&file, field)
    }

    pub fn from_presentation<F: Field>(p: &Presentation<F>) -> Self {
        let file = p.to_file();
        FreeMapFile {
            field: file.field,
            group: file.group,
            truncation: file.truncation,
            source: p.relations().iter().map(|r| r.degree).collect(),
            target: file.generators,
            images: file.relations,
        }
    }
}

/// Generators of `ker(F¹ -> F⁰)` and what they certify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyzygyWitness {
    /// Degree → number of generators in that degree.
    pub generator_degrees: BTreeMap<usize, usize>,
    /// Degrees `0..=stop_degree` were computed.
    pub stop_degree: usize,
    /// `max(gd F⁰ + gd F¹ + 1, gd F¹)`: no generator can lie above it.
    pub bound: Degree,
    pub certified: bool,
    /// The generators span the whole kernel in every computed degree.
    pub respan: bool,
    /// Dropping any single generator shrinks the span.
    pub minimal: bool,
    /// `gd`, `td`, `hd₁` of `F⁰ / im φ`.
    pub cokernel: DegreeReport,
    pub bound_note: &'static str,
}

impl SyzygyWitness {
    pub fn top_generator_degree(&self) -> Degree {
        Degree::max_of(self.generator_degrees.keys().map(|&d| d as i64))
    }
}

/// `hd₂(coker φ) ≤ gd(F⁰) + gd(F¹) + 1` by the degree bounds; `gd(F¹)` is added
/// since `F¹` may have summands mapping to zero.
pub fn syzygy_bound(target: &FreeModuleSpec, source: &FreeModuleSpec) -> Degree {
    (target.generating_degree() + source.generating_degree() + 1).max(source.generating_degree())
}

const BOUND_NOTE: &str = "stop degree gd(F0) + gd(F1) + 1 from hd2 of the cokernel, joined with gd(F1) for summands mapping to zero";

fn is_free<F: Field>(m: &TruncatedModule<F>, spec: &FreeModuleSpec) -> bool {
    let top = m.truncation();
    m.dims() == free_module(m.field(), m.group(), spec, top).dims()
        && crate::homology::h0(m).dims.dims().iter().enumerate().all(|(n, &d)| {
            d == spec
                .degrees
                .iter()
                .filter(|&&x| x == n)
                .count()
                * crate::category::hom_size(n, n, m.group().order())
        })
}

/// Drops generators that lie in the span of `𝔪K` and the `G_n`-orbits of
/// the other generators of the same degree, until none does.
fn irredundant<F: Field>(k: &TruncatedModule<F>, mut gens: Vec<ModuleElement<F>>) -> Vec<ModuleElement<F>> {
    let f = k.field();
    let mk = decomposables(k);
    let mut i = 0;
    while i < gens.len() {
        let n = gens[i].degree;
        let others: Vec<&[F::Elem]> = gens
            .iter()
            .enumerate()
            .filter(|&(j, g)| j != i && g.degree == n)
            .map(|(_, g)| g.coords.as_slice())
            .collect();
        let span = close_under(f, mk.space(n).clone(), others, k.actions(n));
        if span.contains(f, &gens[i].coords) {
            gens.remove(i);
            i = 0;
        } else {
            i += 1;
        }
    }
    gens
}

/// Whether the span of `gens` is all of `k` in degrees `0..=k.truncation()`.
fn spans<F: Field>(k: &TruncatedModule<F>, gens: &[ModuleElement<F>]) -> bool {
    Submodule::span(k, gens).is_ok_and(|s| s.dims() == k.dims())
}

/// Kernel generators of `φ: F¹ -> F⁰` with `source`, `target` the
/// generator degrees of `F¹`, `F⁰`.
pub fn syzygy_witness<F: Field>(
    phi: &ModuleMorphism<F>,
    source: &FreeModuleSpec,
    target: &FreeModuleSpec,
) -> Result<SyzygyWitness> {
    if !is_free(phi.source(), source) || !is_free(phi.target(), target) {
        return Err(Error::Unsupported("syzygy witnesses need free source and target".into()));
    }
    if source.degrees.iter().any(|&d| d > phi.source().truncation()) {
        return Err(Error::TruncationExceeded {
            degree: source.degrees.iter().copied().max().unwrap_or(0),
            truncation: phi.source().truncation(),
        });
    }
    let stop = phi.source().truncation();
    let bound = syzygy_bound(target, source);
    let (k, _) = kernel_of(phi);
    let gens = irredundant(&k, module_generators(&k));
    let respan = spans(&k, &gens);
    // Removing a generator of degree d can only change the span from
    // degree d on; compare in degree d.
    let minimal = (0..gens.len()).all(|i| {
        let d = gens[i].degree;
        let rest: Vec<ModuleElement<F>> = gens
            .iter()
            .enumerate()
            .filter(|&(j, g)| j != i && g.degree <= d)
            .map(|(_, g)| g.clone())
            .collect();
        let cut = k.truncate(d);
        Submodule::span(&cut, &rest).is_ok_and(|s| s.space(d).dim() < cut.dim(d))
    });
    let mut generator_degrees = BTreeMap::new();
    for g in &gens {
        *generator_degrees.entry(g.degree).or_insert(0) += 1;
    }

    let target_module = phi.target();
    let images: Vec<ModuleElement<F>> = (0..source.rank())
        .map(|i| {
            let m = source.degrees[i];
            let order = target_module.group().order();
            let col = source.offset(i, m, order);
            ModuleElement {
                degree: m,
                coords: phi.map(m).column(col),
            }
        })
        .collect();
    let presentation = Presentation::new(
        target_module.field().clone(),
        target_module.group().clone(),
        stop,
        target.clone(),
        images,
    )?;
    let opts = AnalysisOptions {
        s_max: 1,
        ..AnalysisOptions::default()
    };
    let cokernel = analyze_presentation(&presentation, &opts)?.analysis.report;

    Ok(SyzygyWitness {
        generator_degrees,
        stop_degree: stop,
        bound,
        certified: bound.at_most(stop as i64) && respan,
        respan,
        minimal,
        cokernel,
        bound_note: BOUND_NOTE,
    })
}

/// The map `F¹ -> F⁰` of a presentation, built on degrees `0..=n_top`.
pub fn free_map<F: Field>(p: &Presentation<F>, n_top: usize) -> Result<(FreeModuleSpec, ModuleMorphism<F>)> {
    let f0 = Arc::new(free_module(p.field(), p.group(), p.generators(), n_top));
    yoneda_sum(&f0, p.relations())
}

/// [`syzygy_witness`] for the relation map of `p`, computed through the
/// stop degree (capped at the truncation of `p`).
pub fn presentation_witness<F: Field>(p: &Presentation<F>) -> Result<SyzygyWitness> {
    let source = FreeModuleSpec::new(p.relations().iter().map(|r| r.degree).collect());
    let bound = syzygy_bound(p.generators(), &source);
    let lowest = p.relations().iter().map(|r| r.degree).max().unwrap_or(0);
    let stop = bound.as_index().unwrap_or(0).max(lowest).min(p.truncation());
    let (spec, phi) = free_map(p, stop)?;
    syzygy_witness(&phi, &spec, p.generators())
}
