//! `fimod`: degree reports, bound campaigns, syzygy witnesses, filtered
//! shifts and oracle comparisons for presented FI_G-modules.
//!
//! Exit status is 0 when nothing certified fails, 1 when a certified check
//! fails (the witness goes to standard error) and 2 for unreadable input or
//! bad flags.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use fimod::functors::torsion_part;
use fimod::homology::{
    analyze_presentation, is_filtered, smallest_filtered_shift, status_of, theorem31_checks, AnalysisOptions,
    DegreeBounds, DegreeReport, FilteredCertificate, Inequality, ShiftSearch, Status, Verdict,
};
use fimod::lab::{presentation_witness, run_campaign, CampaignConfig, CampaignReport, FreeMapFile, SyzygyWitness};
use fimod::linalg::{Field, FieldSpec, PrimeField, Rationals};
use fimod::module::{AnyPresentation, Presentation, PresentationFile, TruncatedModule};
use fimod_oracle::{compare_with_cap, ModuleDump, OracleReport, DEFAULT_CAP};
use serde::Serialize;

use render::{Render, Rows};

#[derive(Parser, Debug)]
#[command(name = "fimod", version, about = "Exact computations with presented FI_G-modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Top degree to compute to, overriding the input file.
    #[arg(long, global = true, value_name = "N")]
    truncation: Option<usize>,
    /// Largest homological degree s for hd_s.
    #[arg(long, global = true, value_name = "S")]
    smax: Option<usize>,
    /// Seed for campaigns, overriding the config file.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true, value_name = "T")]
    threads: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degree report of a presentation file.
    Inspect { file: PathBuf },
    /// Seeded campaign checking the degree bounds on random presentations.
    VerifyBounds {
        #[arg(long)]
        config: PathBuf,
    },
    /// Kernel generators of a map between free modules.
    Witness {
        #[arg(long)]
        map: PathBuf,
    },
    /// Smallest a with the shift filtered.
    FilteredShift { file: PathBuf },
    /// Optimized invariants against the dense brute-force oracle.
    OracleCheck {
        file: PathBuf,
        /// Accept truncations above the oracle cap (slow).
        #[arg(long)]
        allow_large: bool,
        /// Read FILE as a module dump (dims and structure matrices) rather
        /// than a presentation. `--truncation` is ignored.
        #[arg(long)]
        module: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

/// What a command found, beyond its report.
struct Outcome {
    violation: Option<String>,
    inconclusive: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(o) => {
            if o.inconclusive > 0 {
                eprintln!("warning: {} inconclusive check(s)", o.inconclusive);
            }
            match o.violation {
                Some(w) => {
                    eprintln!("certified violation; witness:\n{w}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    if cli.smax == Some(0) {
        bail!("--smax must be at least 1");
    }
    if cli.threads == Some(0) {
        bail!("--threads must be at least 1");
    }
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    match &cli.command {
        Command::Inspect { file } => {
            let p = load_presentation(file, cli.truncation)?;
            match p {
                AnyPresentation::Prime(p) => inspect(cli, &p),
                AnyPresentation::Rational(p) => inspect(cli, &p),
            }
        }
        Command::VerifyBounds { config } => verify_bounds(cli, config),
        Command::Witness { map } => {
            let text = read(map)?;
            let file = FreeMapFile::from_json(&text).with_context(|| format!("{}", map.display()))?;
            file.field.validate()?;
            match file.field {
                FieldSpec::Prime(q) => witness(cli, &file, PrimeField::new(q)?),
                FieldSpec::Rationals(_) => witness(cli, &file, Rationals),
            }
        }
        Command::FilteredShift { file } => match load_presentation(file, cli.truncation)? {
            AnyPresentation::Prime(p) => filtered_shift(cli, &p),
            AnyPresentation::Rational(p) => filtered_shift(cli, &p),
        },
        Command::OracleCheck {
            file,
            allow_large,
            module,
        } => {
            let cap = if *allow_large {
                eprintln!("warning: oracle cap lifted; the dense engine grows factorially with the truncation");
                usize::MAX
            } else {
                DEFAULT_CAP
            };
            if *module {
                let dump = ModuleDump::from_json(&read(file)?).with_context(|| format!("{}", file.display()))?;
                dump.field.validate()?;
                return match dump.field {
                    FieldSpec::Prime(q) => oracle_check_module(cli, &dump.to_module(PrimeField::new(q)?)?, cap),
                    FieldSpec::Rationals(_) => oracle_check_module(cli, &dump.to_module(Rationals)?, cap),
                };
            }
            match load_presentation(file, cli.truncation)? {
                AnyPresentation::Prime(p) => oracle_check(cli, &p, cap),
                AnyPresentation::Rational(p) => oracle_check(cli, &p, cap),
            }
        }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_presentation(path: &Path, truncation: Option<usize>) -> anyhow::Result<AnyPresentation> {
    let text = read(path)?;
    let mut file = PresentationFile::from_json(&text).with_context(|| format!("{}", path.display()))?;
    if let Some(n) = truncation {
        file.truncation = n;
    }
    AnyPresentation::from_file(&file).with_context(|| format!("{}", path.display()))
}

fn options(cli: &Cli) -> AnalysisOptions {
    AnalysisOptions {
        s_max: cli.smax.unwrap_or(3),
        ..AnalysisOptions::default()
    }
}

fn emit<T: Serialize + Render>(cli: &Cli, report: &T) -> anyhow::Result<()> {
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Csv => report.rows().csv(),
        Format::Text => report.rows().text(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct InspectReport {
    truncation: usize,
    working_truncation: usize,
    dims: Vec<usize>,
    #[serde(flatten)]
    degrees: DegreeReport,
    torsion_dims: Vec<usize>,
    torsion_certified: bool,
    filtered: Verdict,
    filtered_certificate: FilteredCertificate,
    status: Status,
    checks: Vec<Inequality>,
    witness: Option<PresentationFile>,
}

fn inspect<F: Field>(cli: &Cli, p: &Presentation<F>) -> anyhow::Result<Outcome> {
    let analysis = analyze_presentation(p, &options(cli))?;
    let bounds = analysis.bounds;
    let degrees = analysis.report().clone();
    let v = p.module()?;
    let torsion = torsion_part(&v, Some(bounds.td()));
    let filtered = is_filtered(&v, Some(bounds));
    let checks = theorem31_checks(&degrees);
    let status = status_of(&checks);
    let report = InspectReport {
        truncation: p.truncation(),
        working_truncation: analysis.working_truncation,
        dims: v.dims().to_vec(),
        degrees,
        torsion_dims: torsion.torsion.dims().to_vec(),
        torsion_certified: torsion.certified,
        filtered: filtered.verdict,
        filtered_certificate: filtered,
        status,
        checks,
        witness: (status == Status::Fail).then(|| p.to_file()),
    };
    emit(cli, &report)?;
    Ok(Outcome {
        violation: report.witness.as_ref().map(|w| serde_json::to_string_pretty(w).expect("serializes")),
        inconclusive: usize::from(status == Status::Inconclusive)
            + usize::from(report.filtered == Verdict::Inconclusive),
    })
}

fn verify_bounds(cli: &Cli, path: &Path) -> anyhow::Result<Outcome> {
    let text = read(path)?;
    let mut cfg = CampaignConfig::from_json(&text).with_context(|| format!("{}", path.display()))?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(n) = cli.truncation {
        cfg.truncation = n;
    }
    if let Some(s) = cli.smax {
        cfg.s_max = s;
    }
    cfg.validate()?;
    let report = run_campaign(&cfg)?;
    match &cli.out {
        // The JSON report at PATH and the per-sample table next to it.
        Some(out) => {
            std::fs::write(out, report.to_json() + "\n").with_context(|| format!("cannot write {}", out.display()))?;
            let csv = out.with_extension("csv");
            std::fs::write(&csv, report.to_csv()).with_context(|| format!("cannot write {}", csv.display()))?;
            if cli.format == Format::Text {
                print!("{}", report.rows().text());
            }
        }
        None => match cli.format {
            Format::Json => println!("{}", report.to_json()),
            Format::Csv => print!("{}", report.to_csv()),
            Format::Text => print!("{}", report.rows().text()),
        },
    }
    Ok(Outcome {
        violation: (!report.violations.is_empty())
            .then(|| serde_json::to_string_pretty(&report.violations).expect("serializes")),
        inconclusive: report.inconclusive(),
    })
}

fn witness<F: Field>(cli: &Cli, file: &FreeMapFile, field: F) -> anyhow::Result<Outcome> {
    let mut p = file.to_presentation(field)?;
    if let Some(n) = cli.truncation {
        p = p.with_truncation(n)?;
    }
    let w = presentation_witness(&p)?;
    emit(cli, &w)?;
    let broken = w.certified && (!w.minimal || w.top_generator_degree() > w.bound);
    Ok(Outcome {
        violation: broken.then(|| FreeMapFile::from_presentation(&p).to_json()),
        inconclusive: usize::from(!w.certified),
    })
}

fn filtered_shift<F: Field>(cli: &Cli, p: &Presentation<F>) -> anyhow::Result<Outcome> {
    let v = p.module()?;
    let search = smallest_filtered_shift(&v, DegreeBounds::of_presentation(p));
    emit(cli, &search)?;
    Ok(Outcome {
        violation: (search.bound_check == Some(false)).then(|| p.to_file().to_json()),
        inconclusive: usize::from(search.verdict == Verdict::Inconclusive || search.bound_check.is_none()),
    })
}

fn oracle_check<F: Field>(cli: &Cli, p: &Presentation<F>, cap: usize) -> anyhow::Result<Outcome> {
    let v = p.module()?;
    let report = compare_with_cap(&v, cap)?;
    emit(cli, &report)?;
    Ok(Outcome {
        violation: (!report.agree).then(|| p.to_file().to_json()),
        inconclusive: 0,
    })
}

fn oracle_check_module<F: Field>(cli: &Cli, v: &TruncatedModule<F>, cap: usize) -> anyhow::Result<Outcome> {
    let report = compare_with_cap(v, cap)?;
    emit(cli, &report)?;
    let violation = match &report.witness {
        Some(w) if !report.agree => Some(serde_json::to_string_pretty(w)?),
        _ => None,
    };
    Ok(Outcome {
        violation,
        inconclusive: 0,
    })
}

impl Render for InspectReport {
    fn rows(&self) -> Rows {
        let mut r = Rows::default();
        r.push("truncation", self.truncation);
        r.push("working_truncation", self.working_truncation);
        r.push("dims", format!("{:?}", self.dims));
        r.push("gd", self.degrees.gd);
        r.push("td", self.degrees.td);
        for (s, d) in &self.degrees.hd {
            r.push(format!("hd{s}"), d);
        }
        r.push("reg", self.degrees.reg);
        r.push("all_certified", self.degrees.all_certified());
        r.push("torsion_dims", format!("{:?}", self.torsion_dims));
        r.push("filtered", verdict(self.filtered));
        r.push("status", status(self.status));
        r
    }
}

impl Render for CampaignReport {
    fn rows(&self) -> Rows {
        let mut r = Rows::with_header(&["check", "pass", "fail", "inconclusive", "n/a"]);
        for (name, t) in &self.tallies {
            r.push_row(vec![
                name.to_string(),
                t.pass.to_string(),
                t.fail.to_string(),
                t.inconclusive.to_string(),
                t.not_applicable.to_string(),
            ]);
        }
        r
    }
}

impl Render for SyzygyWitness {
    fn rows(&self) -> Rows {
        let mut r = Rows::default();
        r.push("generator_degrees", format!("{:?}", self.generator_degrees));
        r.push("top_generator_degree", self.top_generator_degree());
        r.push("bound", self.bound);
        r.push("stop_degree", self.stop_degree);
        r.push("certified", self.certified);
        r.push("respan", self.respan);
        r.push("minimal", self.minimal);
        r
    }
}

impl Render for ShiftSearch {
    fn rows(&self) -> Rows {
        let mut r = Rows::default();
        r.push("verdict", verdict(self.verdict));
        r.push("n_star", self.n_star.map_or("unknown".to_string(), |n| n.to_string()));
        r.push("gd", self.gd);
        r.push("td", self.td);
        r.push("bound", self.bound);
        r.push("bound_certified", self.bound_certified);
        r.push("bound_holds", self.bound_check.map_or("unknown".to_string(), |b| b.to_string()));
        r
    }
}

impl Render for OracleReport {
    fn rows(&self) -> Rows {
        let mut r = Rows::default();
        r.push("agree", self.agree);
        r.push("dims", format!("{:?}", self.dims));
        r.push("h0", format!("{:?}", self.dense.h0));
        r.push("torsion", format!("{:?}", self.dense.torsion));
        r.push("decomposables", format!("{:?}", self.dense.decomposables));
        r.push("gd", self.dense.gd);
        r.push("td", self.dense.td);
        for m in &self.mismatches {
            r.push(format!("mismatch {}", m.quantity), format!("{} vs {}", m.optimized, m.dense));
        }
        r
    }
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Inconclusive => "inconclusive",
    }
}
