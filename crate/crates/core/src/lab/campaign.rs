use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sample::{random_presentation, SampleCaps};
use super::syzygy::{presentation_witness, syzygy_bound, SyzygyWitness};
use crate::category::{FiniteGroup, GroupSpec};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::functors::{derivative, torsion_part};
use crate::homology::{
    analyze, gd, smallest_filtered_shift, td, theorem31_checks, AnalysisOptions, DegreeBounds, DegreeReport,
    Inequality, ShiftSearch,
};
use crate::linalg::{is_prime, PrimeField};
use crate::module::{FreeModuleSpec, Presentation, PresentationFile};

fn default_groups() -> Vec<GroupSpec> {
    vec![GroupSpec::trivial()]
}

fn default_s_max() -> usize {
    3
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub seed: u64,
    pub samples: usize,
    pub primes: Vec<u32>,
    #[serde(default = "default_groups")]
    pub groups: Vec<GroupSpec>,
    pub max_generators: usize,
    pub max_generator_degree: usize,
    pub max_relations: usize,
    pub max_relation_degree: usize,
    pub truncation: usize,
    #[serde(default = "default_s_max")]
    pub s_max: usize,
    /// Also compute kernel generators of each relation map.
    #[serde(default)]
    pub witnesses: bool,
}

impl CampaignConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn caps(&self) -> SampleCaps {
        SampleCaps {
            max_generators: self.max_generators,
            max_generator_degree: self.max_generator_degree,
            max_relations: self.max_relations,
            max_relation_degree: self.max_relation_degree,
        }
    }

    /// Top degree needed to certify `gd`, `td` and every `hd_s` of any
    /// sample: `gd(F⁰) + gd(F¹)`, one more with witnesses.
    pub fn required_truncation(&self) -> usize {
        self.max_generator_degree + self.max_relation_degree + usize::from(self.witnesses)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.samples == 0 {
            return bad("samples must be positive".into());
        }
        if self.primes.is_empty() {
            return bad("primes must not be empty".into());
        }
        if let Some(p) = self.primes.iter().find(|&&p| !is_prime(p)) {
            return bad(format!("{p} is not prime"));
        }
        if self.groups.is_empty() {
            return bad("groups must not be empty".into());
        }
        for g in &self.groups {
            FiniteGroup::new(g.clone())?;
        }
        if self.max_generators == 0 || self.max_relations == 0 {
            return bad("max_generators and max_relations must be positive".into());
        }
        if self.s_max == 0 {
            return bad("s_max must be at least 1".into());
        }
        if self.truncation < self.required_truncation() {
            return bad(format!(
                "truncation {} is below {} = max_generator_degree + max_relation_degree{}, so results could not be certified",
                self.truncation,
                self.required_truncation(),
                if self.witnesses { " + 1" } else { "" }
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
    NotApplicable,
}

impl Outcome {
    fn of(checks: &[Inequality]) -> Self {
        match crate::homology::status_of(checks) {
            crate::homology::Status::Pass => Outcome::Pass,
            crate::homology::Status::Fail => Outcome::Fail,
            crate::homology::Status::Inconclusive => Outcome::Inconclusive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub outcome: Outcome,
    pub checks: Vec<Inequality>,
}

impl CheckOutcome {
    fn from_checks(checks: Vec<Inequality>) -> Self {
        CheckOutcome {
            outcome: Outcome::of(&checks),
            checks,
        }
    }

    fn not_applicable() -> Self {
        CheckOutcome {
            outcome: Outcome::NotApplicable,
            checks: Vec::new(),
        }
    }
}

/// Names of the checks run on every sample.
pub const CHECKS: [&str; 7] = [
    "td_hd_bounds",
    "derivative_gd",
    "torsion_part",
    "derivative_td",
    "filtered_shift",
    "regularity",
    "syzygy_witness",
];

/// Values behind the checks, for reading off statistics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleFacts {
    pub derivative_zero: bool,
    pub gd_derivative: Degree,
    pub td_derivative: Degree,
    pub td_derivative_bound: Degree,
    pub gd_torsion: Degree,
    pub td_torsion: Degree,
    pub torsion_dims: Vec<usize>,
    pub filtered_shift: ShiftSearch,
    pub witness: Option<SyzygyWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleRecord {
    pub index: usize,
    pub presentation: PresentationFile,
    pub working_truncation: usize,
    pub report: DegreeReport,
    pub facts: SampleFacts,
    pub checks: BTreeMap<&'static str, CheckOutcome>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub not_applicable: usize,
}

impl Tally {
    fn add(&mut self, o: Outcome) {
        match o {
            Outcome::Pass => self.pass += 1,
            Outcome::Fail => self.fail += 1,
            Outcome::Inconclusive => self.inconclusive += 1,
            Outcome::NotApplicable => self.not_applicable += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.inconclusive + self.not_applicable
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub index: usize,
    pub check: &'static str,
    pub presentation: PresentationFile,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: CampaignConfig,
    pub tallies: BTreeMap<&'static str, Tally>,
    pub violations: Vec<Violation>,
    pub samples: Vec<SampleRecord>,
}

impl CampaignReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn failures(&self) -> usize {
        self.tallies.values().map(|t| t.fail).sum()
    }

    pub fn inconclusive(&self) -> usize {
        self.tallies.values().map(|t| t.inconclusive).sum()
    }

    /// One row per sample.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,prime,generators,relation_degrees,working_truncation,gd,td,hd1,reg");
        for c in CHECKS {
            out.push(',');
            out.push_str(c);
        }
        out.push('\n');
        for s in &self.samples {
            let p = &s.presentation;
            let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let rel: Vec<usize> = p.relations.iter().map(|r| r.degree).collect();
            let prime = match p.field {
                crate::linalg::FieldSpec::Prime(q) => q.to_string(),
                _ => "0".into(),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{}",
                s.index,
                prime,
                join(&p.generators),
                join(&rel),
                s.working_truncation,
                s.report.gd,
                s.report.td,
                s.report.hd(1),
                s.report.reg
            ));
            for c in CHECKS {
                let o = s.checks.get(c).map_or(Outcome::NotApplicable, |x| x.outcome);
                out.push(',');
                out.push_str(match o {
                    Outcome::Pass => "pass",
                    Outcome::Fail => "fail",
                    Outcome::Inconclusive => "inconclusive",
                    Outcome::NotApplicable => "n/a",
                });
            }
            out.push('\n');
        }
        out
    }
}

/// Degrees of `V` needed by every check of [`evaluate`], before capping at
/// the truncation.
pub fn sample_need(bounds: DegreeBounds) -> usize {
    let g = bounds.gd.value().unwrap_or(0).max(0);
    let r = bounds.hd1.value().unwrap_or(0).max(0);
    let analysis = g + r;
    let derivative = g + r.max(g) + 1;
    let shift = (g + r - 1).max(2 * g - 2) + 1 + g + r.max(g) + 1;
    analysis.max(derivative).max(shift) as usize
}

/// The sample with the given index: its own ChaCha stream of the seed.
pub fn sample(cfg: &CampaignConfig, index: usize) -> Result<Presentation<PrimeField>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    use rand::Rng;
    let p = cfg.primes[rng.gen_range(0..cfg.primes.len())];
    let g = &cfg.groups[rng.gen_range(0..cfg.groups.len())];
    Ok(random_presentation(
        &mut rng,
        PrimeField::new(p)?,
        Arc::new(FiniteGroup::new(g.clone())?),
        cfg.truncation,
        &cfg.caps(),
    ))
}

/// Runs every check on one presentation.
pub fn evaluate(p: &Presentation<PrimeField>, s_max: usize, witnesses: bool) -> Result<SampleRecord> {
    evaluate_indexed(0, p, s_max, witnesses)
}

fn evaluate_indexed(index: usize, p: &Presentation<PrimeField>, s_max: usize, witnesses: bool) -> Result<SampleRecord> {
    let bounds = DegreeBounds::of_presentation(p);
    let w = sample_need(bounds).min(p.truncation());
    let v = p.build(w)?.module;
    let opts = AnalysisOptions {
        s_max,
        ..AnalysisOptions::default()
    };
    let report = analyze(&v, Some(bounds), &opts).report;
    let c = report.certified.clone();
    let mut checks = BTreeMap::new();
    checks.insert("td_hd_bounds", CheckOutcome::from_checks(theorem31_checks(&report)));

    let eff = DegreeBounds {
        gd: if c.gd { report.gd } else { bounds.gd },
        hd1: if c.hd[&1] { report.hd(1) } else { bounds.hd1 },
    };

    // gd(DV) = gd(V) - 1 when DV ≠ 0; gd(DV) ≤ gd(V) is seen by degree gd(V).
    let dv = derivative(&v)?;
    let derivative_zero_seen = dv.is_zero();
    let dv_gd = gd(&dv);
    let dv_gd_cert = c.gd && report.gd.at_most(dv.reliable_up_to() as i64);
    checks.insert(
        "derivative_gd",
        if derivative_zero_seen && dv_gd_cert {
            CheckOutcome::not_applicable()
        } else {
            let mut ch = Inequality::new("gd(DV) = gd(V) - 1", dv_gd, report.gd + -1, dv_gd_cert);
            ch.holds = dv_gd == report.gd + -1;
            CheckOutcome::from_checks(vec![ch])
        },
    );

    // V_T: finite gd and td(V_T) = td(V).
    let tp = torsion_part(&v, Some(eff.td()));
    let td_t = td(&tp.torsion);
    let gd_t = gd(&tp.torsion);
    let mut same = Inequality::new("td(V_T) = td(V)", td_t, report.td, c.td && tp.certified);
    same.holds = td_t == report.td;
    let gd_t_check = Inequality::new("gd(V_T) <= td(V)", gd_t, report.td, c.td && tp.certified);
    checks.insert("torsion_part", CheckOutcome::from_checks(vec![same, gd_t_check]));

    // td(DV) within the bound for DV, and 0 -> DV_T -> DV -> DV_F -> 0.
    let dv_bounds = {
        let b = eff.derivative();
        DegreeBounds {
            gd: if dv_gd_cert { dv_gd } else { b.gd },
            hd1: b.hd1,
        }
    };
    let td_dv = td(&dv);
    let td_dv_bound = dv_bounds.td();
    let td_dv_cert = td_dv_bound.at_most(dv.reliable_up_to() as i64 - 1);
    let mut dv_checks = vec![Inequality::new("td(DV) <= gd(DV) + hd1(DV) - 1", td_dv, td_dv_bound, td_dv_cert)];
    let dvt = derivative(&tp.torsion)?;
    let dvf = derivative(&tp.torsion_free)?;
    let exact = (0..dv.dims().len()).all(|n| dv.dim(n) == dvt.dim(n) + dvf.dim(n));
    let mut ex = Inequality::new("dim DV = dim DV_T + dim DV_F", Degree::NegInf, Degree::NegInf, true);
    ex.holds = exact;
    dv_checks.push(ex);
    checks.insert("derivative_td", CheckOutcome::from_checks(dv_checks));

    let search = smallest_filtered_shift(&v, bounds);
    let shift_check = match (search.n_star, search.bound_check) {
        (Some(n), Some(_)) => Inequality::new("N* <= max(td, 2gd - 2) + 1", Degree::finite(n), search.bound, true),
        (Some(n), None) => Inequality::new("N* <= max(td, 2gd - 2) + 1", Degree::finite(n), search.bound, false),
        (None, _) => Inequality::new("N* <= max(td, 2gd - 2) + 1", Degree::NegInf, search.bound, false),
    };
    checks.insert("filtered_shift", CheckOutcome::from_checks(vec![shift_check]));

    let reg_bound = (report.gd + report.gd + -1).max(report.td);
    checks.insert(
        "regularity",
        CheckOutcome::from_checks(vec![Inequality::new(
            "reg <= max(2gd - 1, td)",
            report.reg,
            reg_bound,
            c.reg && c.gd && c.td,
        )]),
    );

    let witness = if witnesses {
        let source = FreeModuleSpec::new(p.relations().iter().map(|r| r.degree).collect());
        let bound = syzygy_bound(p.generators(), &source);
        let wit = presentation_witness(p)?;
        let top = wit.top_generator_degree();
        let mut within = Inequality::new("kernel generator degrees <= gd(F0) + gd(F1) + 1", top, bound, wit.certified);
        within.holds &= wit.respan && wit.minimal;
        checks.insert("syzygy_witness", CheckOutcome::from_checks(vec![within]));
        Some(wit)
    } else {
        checks.insert("syzygy_witness", CheckOutcome::not_applicable());
        None
    };

    Ok(SampleRecord {
        index,
        presentation: p.to_file(),
        working_truncation: w,
        facts: SampleFacts {
            derivative_zero: derivative_zero_seen,
            gd_derivative: dv_gd,
            td_derivative: td_dv,
            td_derivative_bound: td_dv_bound,
            gd_torsion: gd_t,
            td_torsion: td_t,
            torsion_dims: tp.torsion.dims().to_vec(),
            filtered_shift: search,
            witness,
        },
        report,
        checks,
    })
}

pub fn run_campaign(cfg: &CampaignConfig) -> Result<CampaignReport> {
    cfg.validate()?;
    let mut samples = (0..cfg.samples)
        .into_par_iter()
        .map(|i| evaluate_indexed(i, &sample(cfg, i)?, cfg.s_max, cfg.witnesses))
        .collect::<Result<Vec<_>>>()?;
    samples.sort_by_key(|s| s.index);
    let mut tallies: BTreeMap<&'static str, Tally> = CHECKS.iter().map(|&c| (c, Tally::default())).collect();
    let mut violations = Vec::new();
    for s in &samples {
        for (&name, o) in &s.checks {
            tallies.get_mut(name).expect("known check").add(o.outcome);
            if o.outcome == Outcome::Fail {
                violations.push(Violation {
                    index: s.index,
                    check: name,
                    presentation: s.presentation.clone(),
                });
            }
        }
    }
    Ok(CampaignReport {
        tool: "fimod",
        version: env!("CARGO_PKG_VERSION"),
        config: cfg.clone(),
        tallies,
        violations,
        samples,
    })
}
