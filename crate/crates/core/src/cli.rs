//! Command-line runs: argument parsing, report assembly and exit status.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::census::{
    fano_census, hilbert_census, hilbert_invariant_dims, CubicData, FanoCensus, HilbertCensusInput, InvariantDims,
    Symmetry,
};
use crate::epw::{run_epw, EpwReport, InstanceConfig};
use crate::error::{Error, Result};
use crate::lefschetz::{
    corollary_check, solve_classification, Classification, ClassificationSolution, CorollaryReport, HodgeData,
    Rejection, Sheaf,
};
use crate::report::{first_failure, CensusReport, Certificate};

#[derive(Debug, Parser)]
#[command(name = "symcensus", version, about = "Fixed-locus censuses for involutions of hyperkähler fourfolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Seed for every randomized step; overrides the instance file.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Node residual tolerance.
    #[arg(long, global = true)]
    pub residual_tol: Option<f64>,
    /// Node deduplication tolerance.
    #[arg(long, global = true)]
    pub dedupe_tol: Option<f64>,
    /// Multistart count per chart.
    #[arg(long, global = true)]
    pub starts: Option<usize>,
    /// Write the JSON report here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, short, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Solve the Lefschetz system for (τ, N, K).
    Classify,
    /// Run the EPW instance checks and node census.
    Epw {
        /// Instance TOML; the built-in reference instance if omitted.
        #[arg(long)]
        instance: Option<PathBuf>,
    },
    /// Census on the Hilbert square of a K3.
    Hilbert {
        #[arg(long, default_value_t = 8)]
        k: u64,
        #[arg(long, default_value_t = 4)]
        tau_s: i64,
    },
    /// Census on the Fano variety of lines of the Fermat fixture cubic.
    Fano,
    /// Every subcommand above with defaults.
    All {
        #[arg(long)]
        instance: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubcommandKind {
    Classify,
    Epw,
    Hilbert,
    Fano,
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub instance: Option<PathBuf>,
    pub hilbert: HilbertCensusInput,
    pub seed: Option<u64>,
    pub residual_tol: Option<f64>,
    pub dedupe_tol: Option<f64>,
    pub starts: Option<usize>,
    pub output: Option<PathBuf>,
    pub verbosity: u8,
}

impl RunConfig {
    pub fn new(subcommand: SubcommandKind) -> Self {
        RunConfig {
            subcommand,
            instance: None,
            hilbert: HilbertCensusInput::default(),
            seed: None,
            residual_tol: None,
            dedupe_tol: None,
            starts: None,
            output: None,
            verbosity: 0,
        }
    }

    pub fn from_cli(cli: Cli) -> Self {
        let (subcommand, instance, hilbert) = match cli.command {
            Command::Classify => (SubcommandKind::Classify, None, HilbertCensusInput::default()),
            Command::Epw { instance } => (SubcommandKind::Epw, instance, HilbertCensusInput::default()),
            Command::Hilbert { k, tau_s } => (SubcommandKind::Hilbert, None, HilbertCensusInput { k, tau_s }),
            Command::Fano => (SubcommandKind::Fano, None, HilbertCensusInput::default()),
            Command::All { instance } => (SubcommandKind::All, instance, HilbertCensusInput::default()),
        };
        let c = cli.common;
        RunConfig {
            subcommand,
            instance,
            hilbert,
            seed: c.seed,
            residual_tol: c.residual_tol,
            dedupe_tol: c.dedupe_tol,
            starts: c.starts,
            output: c.output,
            verbosity: c.verbose,
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, t) in [("residual", self.residual_tol), ("dedupe", self.dedupe_tol)] {
            if let Some(t) = t {
                if !(t > 0.0 && t.is_finite()) {
                    return Err(Error::InvalidArgument(format!("{name} tolerance must be positive, got {t}")));
                }
            }
        }
        if self.starts == Some(0) {
            return Err(Error::InvalidArgument("starts must be positive".into()));
        }
        Ok(())
    }

    fn runs(&self, kind: SubcommandKind) -> bool {
        self.subcommand == kind || self.subcommand == SubcommandKind::All
    }

    /// Seed for the Fano spot check when `--seed` is absent.
    fn seed_or_default(&self) -> u64 {
        self.seed.unwrap_or(42)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemRowReport {
    pub sheaf: Sheaf,
    pub point: String,
    pub k3: String,
    pub a: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassifyReport {
    pub rows: Vec<SystemRowReport>,
    pub solutions: Vec<ClassificationSolution>,
    pub rejected: Vec<(i64, Vec<Rejection>)>,
    /// Coefficients of `N(τ)`, `16K(τ)` and `Σa(τ)`, constant term first.
    pub points_polynomial: Vec<String>,
    pub sixteen_k3_polynomial: Vec<String>,
    pub sum_a_polynomial: Vec<String>,
    pub nonnegative_points_interval: Option<(f64, f64)>,
    pub corollary: Vec<CorollaryReport>,
}

impl From<&Classification> for ClassifyReport {
    fn from(c: &Classification) -> Self {
        let strs = |v: &[num::rational::BigRational]| v.iter().map(|x| x.to_string()).collect();
        ClassifyReport {
            rows: c
                .rows
                .iter()
                .map(|r| SystemRowReport {
                    sheaf: r.sheaf,
                    point: r.point.to_string(),
                    k3: r.k3.to_string(),
                    a: r.a.to_string(),
                })
                .collect(),
            solutions: c.solutions.clone(),
            rejected: c.rejected.clone(),
            points_polynomial: strs(&c.reduced.points),
            sixteen_k3_polynomial: strs(&c.reduced.sixteen_k3),
            sum_a_polynomial: strs(&c.reduced.sum_a),
            nonnegative_points_interval: c.reduced.nonnegative_points_interval(),
            corollary: c.solutions.iter().map(corollary_check).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HilbertReport {
    pub input: HilbertCensusInput,
    pub invariant_dims: InvariantDims,
    pub census: CensusReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub subcommand: SubcommandKind,
    pub seed: Option<u64>,
    pub passed: bool,
    pub first_failure: Option<String>,
    pub certificates: Vec<Certificate>,
    pub classification: ClassifyReport,
    pub epw: Option<EpwReport>,
    pub hilbert: Option<HilbertReport>,
    pub fano: Option<FanoCensus>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One line per certificate, then the counts.
    pub fn summary(&self, verbose: bool) -> String {
        let mut out = String::new();
        for c in &self.certificates {
            out.push_str(&format!("{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name));
            if verbose {
                out.push_str(&format!(": {}", c.detail));
            }
            out.push('\n');
        }
        for s in &self.classification.solutions {
            out.push_str(&format!("case tau={} N={} K={} sum_a={}\n", s.tau, s.n, s.k, s.sum_a));
        }
        let census = |name: &str, c: &CensusReport| format!("{name}: N={} K={} abelian={}\n", c.n, c.k, c.abelian);
        if let Some(c) = self.epw.as_ref().and_then(|e| e.census.as_ref()) {
            out.push_str(&census("epw", c));
        }
        if let Some(h) = &self.hilbert {
            out.push_str(&census("hilbert", &h.census));
        }
        if let Some(f) = &self.fano {
            out.push_str(&census("fano", &f.report));
        }
        out
    }
}

fn matches_case(classification: &Classification, census: &CensusReport, tau: Option<i64>) -> bool {
    census.abelian == 0
        && classification
            .solutions
            .iter()
            .any(|s| s.n as u64 == census.n && s.k as u64 == census.k && tau.is_none_or(|t| t == s.tau))
}

fn load_instance(cfg: &RunConfig) -> Result<InstanceConfig> {
    match &cfg.instance {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            InstanceConfig::parse(&text)
        }
        None => Ok(InstanceConfig::reference()),
    }
}

/// Runs the requested checks. Errors are reserved for bad input; failed
/// certificates are reported in the returned report.
pub fn run(cfg: &RunConfig) -> Result<RunReport> {
    cfg.validate()?;
    let classification = solve_classification(&HodgeData::default())?;
    let mut certificates = Vec::new();

    if cfg.runs(SubcommandKind::Classify) {
        let corollary_ok = classification.solutions.iter().all(|s| corollary_check(s).holds());
        certificates.push(Certificate::new(
            "classification_solutions",
            classification.solutions.len() == 3,
            format!("{} integral nonnegative solutions", classification.solutions.len()),
        ));
        certificates.push(Certificate::new(
            "classification_corollary",
            !classification.solutions.is_empty() && corollary_ok,
            "N >= 12, K <= 1, K = 1 forces N = 28, some fixed surface",
        ));
    }

    let epw = if cfg.runs(SubcommandKind::Epw) {
        let instance = load_instance(cfg)?;
        let mut search = instance.search_config();
        if let Some(s) = cfg.seed {
            search.seed = s;
        }
        if let Some(t) = cfg.residual_tol {
            search.residual_tol = t;
        }
        if let Some(t) = cfg.dedupe_tol {
            search.dedupe_tol = t;
        }
        if let Some(n) = cfg.starts {
            search.starts = n;
        }
        let report = run_epw(&instance, &search)?;
        certificates.extend(report.certificates.iter().cloned());
        Some(report)
    } else {
        None
    };

    let hilbert = if cfg.runs(SubcommandKind::Hilbert) {
        let census = hilbert_census(&cfg.hilbert)?;
        let dims = hilbert_invariant_dims(&cfg.hilbert)?;
        certificates.push(Certificate::new(
            "hilbert_matches_classification",
            matches_case(&classification, &census, Some(dims.tau_x)),
            format!("(N, K) = ({}, {}) with tau_X = {}", census.n, census.k, dims.tau_x),
        ));
        certificates.push(Certificate::new(
            "hilbert_provenance",
            census.provenance_complete(),
            "every item cites its source",
        ));
        Some(HilbertReport { input: cfg.hilbert, invariant_dims: dims, census })
    } else {
        None
    };

    let fano = if cfg.runs(SubcommandKind::Fano) {
        let cubic = CubicData::fermat_fixture();
        let f = fano_census(&cubic, cfg.seed_or_default())?;
        let symplectic =
            f.symmetry_by_signature.iter().any(|&(k, s)| k == cubic.signature && s == Symmetry::Symplectic);
        certificates.push(Certificate::new(
            "fano_residue_symplectic",
            symplectic,
            format!("signature {}", cubic.signature),
        ));
        certificates.push(Certificate::new("fano_cubic_invariant", f.cubic_invariant, "cubic fixed by the involution"));
        certificates.push(Certificate::new(
            "fano_lines",
            f.lines == 27 && f.lines_on_surface == 27 && f.distinct_lines == 27 && f.lines_fixed_by_involution == 27,
            format!(
                "{} lines, {} on G, {} distinct, {} fixed",
                f.lines, f.lines_on_surface, f.distinct_lines, f.lines_fixed_by_involution
            ),
        ));
        certificates.push(Certificate::new(
            "fano_special_line",
            f.special_line_on_cubic,
            "X2 = X3 = X4 = X5 = 0 lies on X",
        ));
        certificates.push(Certificate::new(
            "fano_k3_divisor",
            f.k3_bidegree == Some((2, 1)) && f.k3_spot_check.passed(),
            format!("bidegree {:?}", f.k3_bidegree),
        ));
        certificates.push(Certificate::new(
            "fano_matches_classification",
            matches_case(&classification, &f.report, None),
            format!("(N, K) = ({}, {})", f.report.n, f.report.k),
        ));
        Some(f)
    } else {
        None
    };

    let first = first_failure(&certificates).map(|c| c.name.clone());
    Ok(RunReport {
        subcommand: cfg.subcommand,
        seed: cfg.seed,
        passed: first.is_none(),
        first_failure: first,
        certificates,
        classification: ClassifyReport::from(&classification),
        epw,
        hilbert,
        fano,
    })
}

/// Runs, writes the report and returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    let cfg = RunConfig::from_cli(cli);
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let json = report.to_json();
    match &cfg.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &json) {
                eprintln!("error: {}: {e}", path.display());
                return 2;
            }
            print!("{}", report.summary(cfg.verbosity > 0));
        }
        None => print!("{json}"),
    }
    match &report.first_failure {
        Some(name) => {
            eprintln!("certificate failed: {name}");
            1
        }
        None => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_report() {
        let r = run(&RunConfig::new(SubcommandKind::Classify)).unwrap();
        assert!(r.passed);
        assert!(r.epw.is_none());
        let cases: Vec<_> = r.classification.solutions.iter().map(|s| (s.tau, s.n, s.k)).collect();
        assert_eq!(cases, vec![(-3, 12, 0), (3, 36, 0), (5, 28, 1)]);
    }

    #[test]
    fn rejects_bad_tolerance() {
        let mut cfg = RunConfig::new(SubcommandKind::Epw);
        cfg.residual_tol = Some(-1.0);
        assert!(matches!(run(&cfg), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn hilbert_and_fano() {
        for kind in [SubcommandKind::Hilbert, SubcommandKind::Fano] {
            let r = run(&RunConfig::new(kind)).unwrap();
            assert!(r.passed, "{:?}", r.first_failure);
        }
    }

    #[test]
    fn hilbert_other_k_fails_match() {
        let mut cfg = RunConfig::new(SubcommandKind::Hilbert);
        cfg.hilbert = HilbertCensusInput { k: 6, tau_s: 2 };
        let r = run(&cfg).unwrap();
        assert_eq!(r.first_failure.as_deref(), Some("hilbert_matches_classification"));
    }

    #[test]
    fn parses_flags() {
        let cli = Cli::try_parse_from(["symcensus", "epw", "--instance", "x.toml", "--seed", "7", "-vv"]).unwrap();
        let cfg = RunConfig::from_cli(cli);
        assert_eq!(cfg.subcommand, SubcommandKind::Epw);
        assert_eq!(cfg.seed, Some(7));
        assert_eq!(cfg.verbosity, 2);
        assert_eq!(cfg.instance, Some(PathBuf::from("x.toml")));
    }
}
