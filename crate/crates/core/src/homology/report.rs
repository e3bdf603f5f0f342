use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{h0, td, GradedDims, Koszul};
use crate::degree::Degree;
use crate::error::Result;
use crate::linalg::Field;
use crate::module::{FreeModuleSpec, Presentation, PresentationFile, PresentedModule, TruncatedModule};

/// A priori upper bounds for `gd` and `hd₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeBounds {
    pub gd: Degree,
    pub hd1: Degree,
}

impl DegreeBounds {
    /// `gd(V) ≤ gd(F⁰)` and `hd₁(V) ≤ gd(F¹)`.
    pub fn of_presentation<F: Field>(p: &Presentation<F>) -> Self {
        DegreeBounds {
            gd: p.generator_degree(),
            hd1: p.relation_degree(),
        }
    }

    pub fn free(spec: &FreeModuleSpec) -> Self {
        DegreeBounds {
            gd: spec.generating_degree(),
            hd1: Degree::NegInf,
        }
    }

    /// Bound for `hd_s`: `gd + hd₁ + s - 1` for `s ≥ 2`.
    pub fn hd(&self, s: usize) -> Degree {
        match s {
            0 => self.gd,
            1 => self.hd1,
            _ => self.gd + self.hd1 + (s as i64 - 1),
        }
    }

    /// Bound for `td`: `gd + hd₁ - 1`.
    pub fn td(&self) -> Degree {
        self.gd + self.hd1 + -1
    }

    /// Bounds for the cokernel of a map from a module with bounds `source`
    /// to one with bounds `target`.
    pub fn cokernel(source: Self, target: Self) -> Self {
        DegreeBounds {
            gd: target.gd,
            hd1: target.hd1.max(source.gd),
        }
    }

    /// Bounds for the kernel of such a map, through the image `I` and
    /// cokernel `C`: `gd(K) ≤ max(gd U, hd₁ I)`, `hd₁(K) ≤ max(hd₁ U, hd₂ I)`
    /// and `hd_s(I) ≤ max(hd_s V, hd_{s+1} C)`.
    pub fn kernel(source: Self, target: Self) -> Self {
        let c = Self::cokernel(source, target);
        DegreeBounds {
            gd: source.gd.max(target.hd1).max(c.hd(2)),
            hd1: source.hd1.max(target.hd(2)).max(c.hd(3)),
        }
    }

    /// `Σ` does not raise `gd` or `hd₁`.
    pub fn shift(self) -> Self {
        self
    }

    pub fn derivative(self) -> Self {
        Self::cokernel(self, self)
    }

    /// Top degree of `V` needed to certify `gd`, `td` and `hd_s` for all `s`.
    pub fn required_truncation(&self) -> usize {
        [self.gd, self.hd1, self.gd + self.hd1]
            .into_iter()
            .filter_map(Degree::as_index)
            .max()
            .unwrap_or(0)
    }
}

/// Which entries of a [`DegreeReport`] are complete.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certified {
    pub gd: bool,
    pub td: bool,
    pub hd: BTreeMap<usize, bool>,
    pub reg: bool,
}

pub const REG_CONVENTION: &str = "max over 1 <= s <= s_max of hd_s - s";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub gd: Degree,
    pub td: Degree,
    pub hd: BTreeMap<usize, Degree>,
    pub reg: Degree,
    pub reg_convention: &'static str,
    pub s_max: usize,
    pub reliable_up_to: usize,
    pub certified: Certified,
}

impl DegreeReport {
    pub fn hd(&self, s: usize) -> Degree {
        self.hd[&s]
    }

    pub fn hd_certified(&self, s: usize) -> bool {
        self.certified.hd[&s]
    }

    pub fn all_certified(&self) -> bool {
        self.certified.gd && self.certified.td && self.certified.reg && self.certified.hd.values().all(|&c| c)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Tuning for [`analyze`].
#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub s_max: usize,
    /// Degrees computed past each certified bound.
    pub margin: usize,
    /// Cap on Koszul matrix entries.
    pub budget: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            s_max: 3,
            margin: 0,
            budget: super::koszul::DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub report: DegreeReport,
    /// `Tor_s(V)` for `s = 0..=s_max`.
    pub tor: Vec<GradedDims>,
}

fn bound_index(d: Degree, margin: usize) -> usize {
    d.value().map_or(0, |v| v.max(0) as usize) + margin
}

/// Computes `gd`, `td`, `hd_s` and `reg`. With `bounds`, each value is
/// flagged certified when the stored degrees reach past what the degree bounds
/// allow: `hd_s ≤ gd + hd₁ + s - 1` and `td ≤ gd + hd₁ - 1`.
pub fn analyze<F: Field>(v: &TruncatedModule<F>, bounds: Option<DegreeBounds>, opts: &AnalysisOptions) -> Analysis {
    let r = v.reliable_up_to().min(v.truncation());
    let tor0 = h0(v).dims;
    let gd = tor0.top_degree();
    let gd_cert = bounds.is_some_and(|b| b.gd.at_most(r as i64));
    let mut koszul = Koszul::with_budget(v, opts.budget);
    let mut tor = vec![tor0];
    let mut hd = BTreeMap::from([(0, gd)]);
    let mut hd_cert = BTreeMap::from([(0, gd_cert)]);

    // Effective upper bounds: certified values where available.
    let gd_eff = bounds.map(|b| if gd_cert { gd } else { b.gd });
    let mut hd1_eff = bounds.map(|b| b.hd1);
    for s in 1..=opts.s_max {
        let target = match (s, gd_eff, hd1_eff) {
            (1, _, Some(h)) => Some(h),
            (_, Some(g), Some(h)) => Some(g + h + (s as i64 - 1)),
            _ => None,
        };
        let top = target.map_or(usize::MAX, |t| bound_index(t, opts.margin));
        let t = koszul.tor(s, top);
        let value = t.top_degree();
        let cert = target.is_some_and(|b| b.value().is_none_or(|b| t.reliable_up_to() >= Degree::Finite(b)));
        if s == 1 && cert {
            hd1_eff = Some(value);
        }
        hd.insert(s, value);
        hd_cert.insert(s, cert);
        tor.push(t);
    }

    let td_value = td(v);
    let td_cert = match (gd_eff, hd1_eff) {
        (Some(g), Some(h)) => (g + h + -1).at_most(r as i64 - 1),
        _ => false,
    };
    let reg = Degree::max_of((1..=opts.s_max).filter_map(|s| hd[&s].value().map(|h| h - s as i64)));
    let reg_cert = (1..=opts.s_max).all(|s| hd_cert[&s]);
    Analysis {
        report: DegreeReport {
            gd,
            td: td_value,
            hd,
            reg,
            reg_convention: REG_CONVENTION,
            s_max: opts.s_max,
            reliable_up_to: r,
            certified: Certified {
                gd: gd_cert,
                td: td_cert,
                hd: hd_cert,
                reg: reg_cert,
            },
        },
        tor,
    }
}

/// A presented module built only as far as certification needs.
#[derive(Clone, Debug)]
pub struct PresentationAnalysis<F: Field> {
    pub presented: PresentedModule<F>,
    pub bounds: DegreeBounds,
    /// Degrees actually built: `min(N, required + margin)`.
    pub working_truncation: usize,
    pub analysis: Analysis,
}

impl<F: Field> PresentationAnalysis<F> {
    pub fn module(&self) -> &Arc<TruncatedModule<F>> {
        &self.presented.module
    }

    pub fn report(&self) -> &DegreeReport {
        &self.analysis.report
    }
}

pub fn analyze_presentation<F: Field>(p: &Presentation<F>, opts: &AnalysisOptions) -> Result<PresentationAnalysis<F>> {
    let bounds = DegreeBounds::of_presentation(p);
    let working_truncation = (bounds.required_truncation() + opts.margin).min(p.truncation());
    let presented = p.build(working_truncation)?;
    let analysis = analyze(&presented.module, Some(bounds), opts);
    Ok(PresentationAnalysis {
        presented,
        bounds,
        working_truncation,
        analysis,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// One inequality `lhs ≤ rhs` between degrees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub name: String,
    pub lhs: Degree,
    pub rhs: Degree,
    pub holds: bool,
    pub certified: bool,
}

impl Inequality {
    pub fn new(name: impl Into<String>, lhs: Degree, rhs: Degree, certified: bool) -> Self {
        Inequality {
            name: name.into(),
            lhs,
            rhs,
            holds: lhs <= rhs,
            certified,
        }
    }
}

/// Pass when every inequality is certified and holds, fail when a
/// certified one fails, inconclusive otherwise.
pub fn status_of(checks: &[Inequality]) -> Status {
    if checks.iter().any(|c| c.certified && !c.holds) {
        Status::Fail
    } else if checks.iter().all(|c| c.certified) {
        Status::Pass
    } else {
        Status::Inconclusive
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem31Report {
    pub status: Status,
    pub report: DegreeReport,
    pub checks: Vec<Inequality>,
    /// The module, when a check fails.
    pub witness: Option<PresentationFile>,
}

/// The inequalities `td ≤ gd + hd₁ - 1` and `hd_s ≤ gd + hd₁ + s - 1` for
/// `1 ≤ s ≤ s_max`. A value seen inside the stored degrees is a lower
/// bound even when uncertified, so a failing check counts as certified as
/// soon as its right side is.
pub fn theorem31_checks(report: &DegreeReport) -> Vec<Inequality> {
    let c = &report.certified;
    let base = c.gd && c.hd[&1];
    let sum = report.gd + report.hd(1);
    let mut checks = vec![Inequality::new("td <= gd + hd1 - 1", report.td, sum + -1, base && c.td)];
    for s in 1..=report.s_max {
        checks.push(Inequality::new(
            format!("hd{s} <= gd + hd1 + {}", s as i64 - 1),
            report.hd(s),
            sum + (s as i64 - 1),
            base && c.hd[&s],
        ));
    }
    for ch in &mut checks {
        if !ch.holds && base {
            ch.certified = true;
        }
    }
    checks
}

pub fn verify_theorem31<F: Field>(p: &Presentation<F>, opts: &AnalysisOptions) -> Result<Theorem31Report> {
    let report = analyze_presentation(p, opts)?.analysis.report;
    let checks = theorem31_checks(&report);
    let status = status_of(&checks);
    Ok(Theorem31Report {
        status,
        witness: (status == Status::Fail).then(|| p.to_file()),
        report,
        checks,
    })
}
