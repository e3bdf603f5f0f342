//! Free resolutions by iterated covers, and `Tor` from the reduced complex
//! `P_• / 𝔪P_•`.

use std::sync::Arc;

use super::{module_generators, GradedDims};
use crate::error::Result;
use crate::linalg::{Field, Matrix};
use crate::module::{kernel_of, yoneda_sum, FreeModuleSpec, ModuleElement, ModuleMorphism, TruncatedModule};

/// How each cover is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoverMode {
    /// One free generator per element of [`module_generators`].
    Lifts,
    /// The cover of `V` itself uses every generator twice, so the resolution is
    /// not minimal.
    Redundant,
}

/// `… -> P_1 -> P_0 -> V`, truncated at the truncation of `V`.
#[derive(Clone, Debug)]
pub struct Resolution<F: Field> {
    pub specs: Vec<FreeModuleSpec>,
    /// `differentials[0]` is the cover `P_0 -> V`; `differentials[s]` is
    /// `P_s -> P_{s-1}`.
    pub differentials: Vec<ModuleMorphism<F>>,
}

/// Resolves `V` through `P_length`.
pub fn resolve<F: Field>(v: &Arc<TruncatedModule<F>>, length: usize, mode: CoverMode) -> Result<Resolution<F>> {
    let mut specs = Vec::new();
    let mut differentials: Vec<ModuleMorphism<F>> = Vec::new();
    let mut target = v.clone();
    let mut inclusion: Option<ModuleMorphism<F>> = None;
    for s in 0..=length {
        let mut lifts: Vec<ModuleElement<F>> = module_generators(&target);
        if s == 0 && mode == CoverMode::Redundant {
            lifts = lifts.iter().flat_map(|x| [x.clone(), x.clone()]).collect();
        }
        let (spec, cover) = yoneda_sum(&target, &lifts)?;
        let d = match &inclusion {
            None => cover,
            Some(i) => i.compose(&cover)?,
        };
        let (kernel, incl) = kernel_of(&d);
        specs.push(spec);
        differentials.push(d);
        target = kernel;
        inclusion = Some(incl);
    }
    Ok(Resolution { specs, differentials })
}

impl<F: Field> Resolution<F> {
    /// The component `P_s/𝔪P_s -> P_{s-1}/𝔪P_{s-1}` in degree `n`: rows
    /// are the units on degree-`n` generators of `P_s`, columns those of
    /// `P_{s-1}`.
    fn reduced(&self, s: usize, n: usize) -> Matrix<F> {
        let d = &self.differentials[s];
        let module = d.source();
        let order = module.group().order();
        let units = crate::category::hom_size(n, n, order);
        let gens = |spec: &FreeModuleSpec| -> Vec<usize> {
            (0..spec.rank())
                .filter(|&i| spec.degrees[i] == n)
                .flat_map(|i| {
                    let o = spec.offset(i, n, order);
                    o..o + units
                })
                .collect()
        };
        let rows = gens(&self.specs[s]);
        let cols = gens(&self.specs[s - 1]);
        d.map(n).select_cols(&rows).transpose().select_cols(&cols)
    }

    /// `Tor_s(V)` for `s = 0..=length-1` in degrees `0..=N`.
    pub fn tor(&self) -> Vec<GradedDims> {
        let length = self.specs.len();
        let v = self.differentials[0].target();
        let f = v.field();
        let order = v.group().order();
        let top = v.reliable_up_to().min(v.truncation());
        let rank = |s: usize, n: usize| -> usize {
            if s == 0 || s >= length {
                0
            } else {
                self.reduced(s, n).rank(f)
            }
        };
        (0..length.saturating_sub(1))
            .map(|s| {
                GradedDims::new(
                    (0..=top)
                        .map(|n| {
                            let units = crate::category::hom_size(n, n, order);
                            let gens = self.specs[s].degrees.iter().filter(|&&m| m == n).count() * units;
                            gens - rank(s, n) - rank(s + 1, n)
                        })
                        .collect(),
                )
            })
            .collect()
    }
}

/// `Tor_s(V)` for `s = 0..=s_max` from a resolution by covers.
pub fn cover_tor<F: Field>(v: &Arc<TruncatedModule<F>>, s_max: usize, mode: CoverMode) -> Result<Vec<GradedDims>> {
    Ok(resolve(v, s_max + 1, mode)?.tor())
}
