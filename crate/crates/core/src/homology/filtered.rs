//! Filtered modules: those with a finite filtration whose layers are
//! induced modules `M(W) = 𝒞e_m ⊗_{kG_m} W`.
//!
//! The test peels layers off from the bottom. If `m` is the lowest degree
//! of `C`, the map `M(C_m) -> C` must be injective, and its cokernel must
//! again be filtered. `dim M(W)_n = C(n, m)·dim W`, so injectivity in
//! degree `n` is a dimension count on the submodule generated by `C_m`.

use std::sync::Arc;

use serde::Serialize;

use super::koszul::binomial;
use super::{analyze, AnalysisOptions, DegreeBounds, Koszul};
use crate::degree::Degree;
use crate::functors::shift;
use crate::linalg::Field;
use crate::module::{quotient, ModuleElement, Submodule, TruncatedModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

/// A layer `M(W)` with `W` in degree `degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Layer {
    pub degree: usize,
    pub dim: usize,
}

/// Comparison with the vanishing of `Tor₁` in the stored degrees. The
/// equivalence of the two notions comes from outside this crate's sources.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tor1CrossCheck {
    pub label: &'static str,
    pub tor1_zero_in_range: Option<bool>,
    /// `None` when the stored degrees cannot decide.
    pub agrees: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FilteredCertificate {
    pub verdict: Verdict,
    pub layers: Vec<Layer>,
    /// Degree where some `M(W) -> C` fails to be injective.
    pub obstruction: Option<usize>,
    pub reliable_up_to: usize,
    pub cross_check: Tor1CrossCheck,
}

impl FilteredCertificate {
    pub fn layer_degrees(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.degree).collect()
    }
}

/// With `bounds` on `gd` and `hd₁`, a layer at degree `m` is certified
/// injective once the stored degrees reach `gd + max(hd₁, m) + 1`: the
/// kernel `K` of `M(W) -> C` has `gd(K) ≤ hd₁(im) ≤ max(hd₂(C'), hd₁(C))`
/// for the cokernel `C'`, and `hd₂(C') ≤ gd + max(hd₁, m) + 1`.
pub fn is_filtered<F: Field>(v: &Arc<TruncatedModule<F>>, bounds: Option<DegreeBounds>) -> FilteredCertificate {
    let r = v.reliable_up_to().min(v.truncation());
    let mut c = v.clone();
    let mut h = bounds.map(|b| b.hd1);
    let mut layers = Vec::new();
    let mut obstruction = None;
    let mut certain = bounds.is_some();
    loop {
        let Some(m) = (0..=r).find(|&n| c.dim(n) > 0) else {
            certain &= bounds.is_some_and(|b| b.gd.at_most(r as i64));
            break;
        };
        let w = c.dim(m);
        let gens: Vec<ModuleElement<F>> = (0..w).map(|i| ModuleElement::basis(&c, m, i)).collect();
        let sub = Submodule::span(&c, &gens).expect("generators lie in the module");
        if let Some(n) = (m..=r).find(|&n| sub.space(n).dim() != binomial(n, m) * w) {
            obstruction = Some(n);
            break;
        }
        layers.push(Layer { degree: m, dim: w });
        let reach = match (bounds, h) {
            (Some(b), Some(h)) => b.gd + h.max(Degree::finite(m)) + 1,
            _ => Degree::Finite(i64::MAX),
        };
        certain &= reach.at_most(r as i64);
        h = h.map(|h| h.max(Degree::finite(m)));
        c = quotient(&c, &sub).expect("spans are submodules").0;
    }
    let verdict = match (obstruction, certain) {
        (Some(_), _) => Verdict::No,
        (None, true) => Verdict::Yes,
        (None, false) => Verdict::Inconclusive,
    };

    let tor1 = Koszul::new(v).tor(1, r);
    let complete = tor1.len() == r + 1;
    let zero = complete.then(|| tor1.is_zero());
    let tor1_certified = complete && bounds.is_some_and(|b| b.hd1.at_most(r as i64));
    let agrees = match (verdict, zero) {
        (Verdict::Yes, Some(z)) => Some(z),
        (Verdict::No, Some(false)) => Some(true),
        (Verdict::No, Some(true)) if tor1_certified => Some(false),
        _ => None,
    };
    FilteredCertificate {
        verdict,
        layers,
        obstruction,
        reliable_up_to: r,
        cross_check: Tor1CrossCheck {
            label: "Tor1 vanishing (external criterion)",
            tor1_zero_in_range: zero,
            agrees,
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftSearch {
    pub verdict: Verdict,
    /// Smallest `a` with `Σ_a V` filtered.
    pub n_star: Option<usize>,
    pub gd: Degree,
    pub td: Degree,
    /// `max{td, 2gd - 2} + 1`.
    pub bound: Degree,
    pub bound_certified: bool,
    /// `N* ≤ bound`, when both sides are known.
    pub bound_check: Option<bool>,
    pub tried: Vec<(usize, Verdict)>,
}

/// `max{td, 2gd - 2} + 1`, floored at 0 since shifts are indexed by `N >= 0`.
pub fn filtered_shift_bound(gd: Degree, td: Degree) -> Degree {
    (td.max(gd + gd + -2) + 1).max(Degree::finite(0))
}

/// Searches `a = 0, 1, 2, …` for the first filtered `Σ_a V`, using that
/// `Σ_a` does not raise `gd` or `hd₁`.
pub fn smallest_filtered_shift<F: Field>(v: &Arc<TruncatedModule<F>>, bounds: DegreeBounds) -> ShiftSearch {
    let opts = AnalysisOptions {
        s_max: 1,
        ..AnalysisOptions::default()
    };
    let report = analyze(v, Some(bounds), &opts).report;
    let c = &report.certified;
    let eff = DegreeBounds {
        gd: if c.gd { report.gd } else { bounds.gd },
        hd1: if c.hd[&1] { report.hd(1) } else { bounds.hd1 },
    };
    let bound = filtered_shift_bound(report.gd, report.td);
    let bound_certified = c.gd && c.td;
    let r = v.reliable_up_to().min(v.truncation());
    let mut tried = Vec::new();
    let mut found = None;
    let mut verdict = Verdict::Inconclusive;
    for a in 0..=r {
        let sa = shift(v, a).expect("a is within the truncation").module;
        let cert = is_filtered(&sa, Some(eff.shift()));
        tried.push((a, cert.verdict));
        match cert.verdict {
            Verdict::No => continue,
            Verdict::Yes => {
                found = Some(a);
                verdict = Verdict::Yes;
            }
            Verdict::Inconclusive => {}
        }
        break;
    }
    let bound_check = match (found, bound_certified) {
        (Some(n), true) => Some(bound.value().is_some_and(|b| n as i64 <= b)),
        _ => None,
    };
    ShiftSearch {
        verdict,
        n_star: found,
        gd: report.gd,
        td: report.td,
        bound,
        bound_certified,
        bound_check,
        tried,
    }
}
