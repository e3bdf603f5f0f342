use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::free::{free_module, FreeModuleSpec};
use super::dual::quotient_of_free;
use super::morphism::{yoneda_sum, ModuleMorphism};
use super::submodule::Submodule;
use super::truncated::{ModuleElement, TruncatedModule};
use crate::category::{FiniteGroup, GroupSpec};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::linalg::{Field, FieldSpec, PrimeField, Rationals};

/// Modules whose total dimension is at most this are validated as
/// functors when built from a presentation.
pub const VALIDATION_LIMIT: usize = 160;

/// On-disk form of a presentation.
///
/// ```json
/// {"field": {"prime": 2}, "group": {"trivial": true}, "truncation": 6,
///  "generators": [0], "relations": [{"degree": 3, "coeffs": ["1"]}]}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub field: FieldSpec,
    pub group: GroupSpec,
    pub truncation: usize,
    pub generators: Vec<usize>,
    #[serde(default)]
    pub relations: Vec<RelationRecord>,
}

/// A relation: an element of `F⁰_degree`, coordinates generator-major and
/// then in canonical Hom order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationRecord {
    pub degree: usize,
    pub coeffs: Vec<String>,
}

impl PresentationFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("presentation serializes")
    }
}

/// Generators and relations of `V = coker(F¹ -> F⁰)`: `F⁰` is free on
/// `generators`, and `F¹` has one generator per relation.
#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    field: F,
    group: Arc<FiniteGroup>,
    truncation: usize,
    generators: FreeModuleSpec,
    relations: Vec<ModuleElement<F>>,
}

impl<F: Field> PartialEq for Presentation<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.group.spec() == other.group.spec()
            && self.truncation == other.truncation
            && self.generators == other.generators
            && self.relations == other.relations
    }
}

impl<F: Field> Presentation<F> {
    pub fn new(
        field: F,
        group: Arc<FiniteGroup>,
        truncation: usize,
        generators: FreeModuleSpec,
        relations: Vec<ModuleElement<F>>,
    ) -> Result<Self> {
        for (i, r) in relations.iter().enumerate() {
            if r.degree > truncation {
                return Err(Error::TruncationExceeded {
                    degree: r.degree,
                    truncation,
                });
            }
            let expected = generators.dim(r.degree, group.order());
            if r.coords.len() != expected {
                return Err(Error::Parse(format!(
                    "relations[{i}]: {} coefficients, but F⁰ has dimension {expected} in degree {}",
                    r.coords.len(),
                    r.degree
                )));
            }
        }
        Ok(Presentation {
            field,
            group,
            truncation,
            generators,
            relations,
        })
    }

    /// A free module: no relations.
    pub fn free(field: F, group: Arc<FiniteGroup>, truncation: usize, generators: FreeModuleSpec) -> Self {
        Presentation {
            field,
            group,
            truncation,
            generators,
            relations: Vec::new(),
        }
    }

    pub fn from_file(file: &PresentationFile, field: F) -> Result<Self> {
        if file.field != field.spec() {
            return Err(Error::InvalidField(format!(
                "file is over {}, expected {}",
                file.field,
                field.spec()
            )));
        }
        let group = Arc::new(FiniteGroup::new(file.group.clone())?);
        let relations = file
            .relations
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let coords = r
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| {
                        field
                            .parse(c)
                            .map_err(|e| Error::Parse(format!("relations[{i}].coeffs[{j}]: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(ModuleElement {
                    degree: r.degree,
                    coords,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(
            field,
            group,
            file.truncation,
            FreeModuleSpec::new(file.generators.clone()),
            relations,
        )
    }

    pub fn to_file(&self) -> PresentationFile {
        PresentationFile {
            field: self.field.spec(),
            group: self.group.spec().clone(),
            truncation: self.truncation,
            generators: self.generators.degrees.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| RelationRecord {
                    degree: r.degree,
                    coeffs: r.coords.iter().map(|c| self.field.format(c)).collect(),
                })
                .collect(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn with_truncation(&self, truncation: usize) -> Result<Self> {
        Self::new(
            self.field.clone(),
            self.group.clone(),
            truncation,
            self.generators.clone(),
            self.relations.clone(),
        )
    }

    pub fn generators(&self) -> &FreeModuleSpec {
        &self.generators
    }

    pub fn relations(&self) -> &[ModuleElement<F>] {
        &self.relations
    }

    /// `gd(F¹)`: the largest relation degree.
    pub fn relation_degree(&self) -> Degree {
        Degree::max_of(self.relations.iter().map(|r| r.degree as i64))
    }

    /// `gd(F⁰)`.
    pub fn generator_degree(&self) -> Degree {
        self.generators.generating_degree()
    }

    /// Builds `V` on degrees `0..=n_top`.
    pub fn build(&self, n_top: usize) -> Result<PresentedModule<F>> {
        for r in &self.relations {
            if r.degree > n_top {
                return Err(Error::TruncationExceeded {
                    degree: r.degree,
                    truncation: n_top,
                });
            }
        }
        let free = Arc::new(free_module(&self.field, &self.group, &self.generators, n_top));
        let (module, projection) = quotient_of_free(&free, &self.generators, &self.relations)?;
        let module = Arc::new(module);
        let projection = ModuleMorphism::from_parts(free.clone(), module.clone(), projection);
        if module.total_dim() <= VALIDATION_LIMIT {
            module.validate()?;
        }
        Ok(PresentedModule {
            presentation: self.clone(),
            free,
            module,
            projection,
        })
    }

    /// `V` on degrees `0..=N` of the presentation.
    pub fn module(&self) -> Result<Arc<TruncatedModule<F>>> {
        Ok(self.build(self.truncation)?.module)
    }
}

/// A presented module with the data it was built from.
#[derive(Clone, Debug)]
pub struct PresentedModule<F: Field> {
    pub presentation: Presentation<F>,
    /// `F⁰`.
    pub free: Arc<TruncatedModule<F>>,
    pub module: Arc<TruncatedModule<F>>,
    /// `F⁰ -> V`.
    pub projection: ModuleMorphism<F>,
}

impl<F: Field> PresentedModule<F> {
    /// The image of `F¹` in `F⁰`.
    pub fn relation_span(&self) -> Submodule<F> {
        Submodule::from_spaces(
            self.projection
                .maps()
                .iter()
                .map(|p| p.kernel_basis(self.free.field()))
                .collect(),
        )
    }

    /// `F¹ -> F⁰`.
    pub fn relation_map(&self) -> Result<(FreeModuleSpec, ModuleMorphism<F>)> {
        yoneda_sum(&self.free, &self.presentation.relations)
    }
}

/// A presentation over whichever field its file names.
#[derive(Clone, Debug)]
pub enum AnyPresentation {
    Prime(Presentation<PrimeField>),
    Rational(Presentation<Rationals>),
}

impl AnyPresentation {
    pub fn from_file(file: &PresentationFile) -> Result<Self> {
        file.field.validate()?;
        match file.field {
            FieldSpec::Prime(p) => Ok(AnyPresentation::Prime(Presentation::from_file(file, PrimeField::new(p)?)?)),
            FieldSpec::Rationals(_) => Ok(AnyPresentation::Rational(Presentation::from_file(file, Rationals)?)),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&PresentationFile::from_json(text)?)
    }

    pub fn to_file(&self) -> PresentationFile {
        match self {
            AnyPresentation::Prime(p) => p.to_file(),
            AnyPresentation::Rational(p) => p.to_file(),
        }
    }
}
