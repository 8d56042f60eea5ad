//! The `nonherm` command line.
//!
//! ```text
//! nonherm growth           --group fpc:2,3 --gens a,ab,bba --n-max 20
//! nonherm capacity         --group free:1 --lp-degree 8
//! nonherm certify-discrete --group free:2 --gens standard
//! nonherm certify-discrete --set-size 4 --omega-lower 29/10 --provenance paper-constant
//! nonherm certify-tree     --tree "degrees=3,4 k=2"
//! nonherm certify-padic    --n 2 --p 5
//! nonherm scan-padic       --ns 2..10 --ps 5,7,11,13
//! nonherm check-properties --group fpc:2,3 --gens a,ab,bba
//! ```
//!
//! Groups are named `free:R`, `fpc:m1,m2,...` (`0` for an infinite cyclic
//! factor), `cayley:FILE` or `rws:FILE`; the file grammar is documented in
//! [`crate::group::file`]. Generating sets are `standard` or comma-separated
//! words over `a..z` with `'` marking an inverse letter (`#k` names a Cayley
//! table element, `1` the identity).
//!
//! Output is a table (`--format table`, default) or the record format of
//! [`crate::report`] (`--format records`). Exit status is 0 on success, 1 on
//! errors and 2 when `--strict` is given and a verdict is not certified.

use std::ops::RangeInclusive;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::algebra::{spectral_radius_upper, witness_element, AlgebraError, DEFAULT_SUPPORT_BUDGET};
use crate::capacity::{
    capacity_upper_lp, frw_certificate, lower_limit_from_growth, sphere_mass_lower, CapacityBounds, CapacityError,
    CertificateResult, FrwVerdict, LowerLimit,
};
use crate::criteria::{burnside_check, discrete_criterion, CriteriaError, CriterionVerdict, Verdict};
use crate::exact::{parse_rational, Enclosure, Provenance};
use crate::group::file::{parse_group_spec, GroupFileError};
use crate::group::{GeneratingSet, GroupBackend, GroupError};
use crate::growth::{
    check_submultiplicative, enumerate_balls, exact_growth, growth_estimate, omega_sigma_agreement, theta_index,
    theta_index_f64, BallTable, EnumerationOptions, ExactGrowth, GrowthError, DEFAULT_MEMORY_BUDGET,
};
use crate::padic::{gl_criterion, hecke_measure, inequality_scan, sl_measure, PadicError, Signature, SPECIAL_CASES};
use crate::properties::{run_suite, SuiteConfig};
use crate::report::{Record, Report};
use crate::tree::{tree_criterion, TreeError, TreeSpec};

/// Largest accepted `--n-max`.
pub const MAX_RADIUS: usize = 64;
/// Largest accepted `--lp-degree`.
pub const MAX_LP_DEGREE: usize = 24;

#[derive(Debug, Parser)]
#[command(name = "nonherm", version, about = "Growth-rate certificates of non-Hermitian groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output layout.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Table)]
    pub format: OutputFormat,
    /// Exit with status 2 when a verdict is not certified.
    #[arg(long, global = true)]
    pub strict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Records,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate balls and estimate the growth rate.
    Growth(GrowthArgs),
    /// Sphere-mass lower and LP upper capacity estimates of the witness.
    Capacity(CapacityArgs),
    /// Discrete criterion plus the capacity certificate.
    CertifyDiscrete(DiscreteArgs),
    /// Double-coset criterion for a tree with periodic degrees.
    CertifyTree(TreeArgs),
    /// Double-coset criterion for GL_n(Q_p).
    CertifyPadic(PadicArgs),
    /// Signs of the GL_n(Q_p) inequality over a grid.
    ScanPadic(ScanArgs),
    /// Run the exact property suites.
    CheckProperties(PropertyArgs),
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// free:R, fpc:m1,m2,..., cayley:FILE or rws:FILE.
    #[arg(long)]
    pub group: String,
    /// `standard` or comma-separated words.
    #[arg(long, default_value = "standard")]
    pub gens: String,
    /// Approximate memory cap for enumeration, in bytes.
    #[arg(long, default_value_t = DEFAULT_MEMORY_BUDGET)]
    pub memory_budget: usize,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, default_value_t = 12, value_parser = radius_parser)]
    pub n_max: usize,
    /// Radius up to which element sets are kept (0: counts only).
    #[arg(long, default_value_t = 0)]
    pub store_limit: usize,
    /// Tolerance of the advisory ball/sphere root agreement check.
    #[arg(long, default_value_t = 0.05)]
    pub tolerance: f64,
}

#[derive(Debug, Args)]
pub struct CapacityArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Largest degree of the sphere-mass lower data.
    #[arg(long, default_value_t = 6, value_parser = radius_parser)]
    pub n_max: usize,
    /// Largest degree of the LP upper estimate.
    #[arg(long, default_value_t = 6, value_parser = lp_degree_parser)]
    pub lp_degree: usize,
    /// Largest power used for the spectral radius bound.
    #[arg(long, default_value_t = 8)]
    pub spectral_power: usize,
    /// Support cap for convolution powers.
    #[arg(long, default_value_t = DEFAULT_SUPPORT_BUDGET)]
    pub support_budget: usize,
}

#[derive(Debug, Args)]
pub struct DiscreteArgs {
    /// Group to analyse; omit to use --set-size and --omega-lower only.
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long, default_value = "standard")]
    pub gens: String,
    /// Size of S when no group is given.
    #[arg(long)]
    pub set_size: Option<usize>,
    /// Asserted lower bound on the growth rate (e.g. 29/10 or 2.9).
    #[arg(long, value_parser = rational_parser)]
    pub omega_lower: Option<num_rational::BigRational>,
    /// Provenance of --omega-lower: user-asserted or paper-constant.
    #[arg(long, default_value = "user-asserted")]
    pub provenance: Provenance,
    #[arg(long, default_value_t = 8)]
    pub spectral_power: usize,
    #[arg(long, default_value_t = DEFAULT_SUPPORT_BUDGET)]
    pub support_budget: usize,
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    /// Degree data, e.g. "degrees=3,4 k=2".
    #[arg(long)]
    pub tree: TreeSpec,
}

#[derive(Debug, Args)]
pub struct PadicArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub p: u64,
    /// Also report the measure of this signature, e.g. 2,-1,-1.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<Signature>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Ranks: `a..b` or a comma-separated list.
    #[arg(long, default_value = "2..10")]
    pub ns: String,
    /// Primes: `a..b` (primes in range) or a comma-separated list.
    #[arg(long, default_value = "5,7,11,13")]
    pub ps: String,
    /// Leave out the small cases (2,2), (2,3), (3,3).
    #[arg(long)]
    pub no_special_cases: bool,
}

#[derive(Debug, Args)]
pub struct PropertyArgs {
    #[arg(long, default_value = "fpc:2,3")]
    pub group: String,
    #[arg(long, default_value = "a,ab,bba")]
    pub gens: String,
    #[arg(long, default_value_t = 10, value_parser = radius_parser)]
    pub n_max: usize,
    #[arg(long, default_value_t = 10_000)]
    pub group_cases: usize,
    #[arg(long, default_value_t = 1_000)]
    pub algebra_cases: usize,
    #[arg(long, default_value_t = 5)]
    pub hecke_rank: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_MEMORY_BUDGET)]
    pub memory_budget: usize,
}

fn bounded(s: &str, range: RangeInclusive<usize>, name: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|_| format!("{name}: '{s}' is not a number"))?;
    if range.contains(&v) {
        Ok(v)
    } else {
        Err(format!("{name} must be in {}..={}, got {v}", range.start(), range.end()))
    }
}

fn radius_parser(s: &str) -> Result<usize, String> {
    bounded(s, 1..=MAX_RADIUS, "n-max")
}

fn lp_degree_parser(s: &str) -> Result<usize, String> {
    bounded(s, 1..=MAX_LP_DEGREE, "lp-degree")
}

fn rational_parser(s: &str) -> Result<num_rational::BigRational, String> {
    parse_rational(s)
}

fn parse_list(s: &str) -> Result<Vec<u64>, String> {
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| format!("bad range start '{a}'"))?;
        let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| format!("bad range end '{b}'"))?;
        if a > b {
            return Err(format!("empty range {a}..{b}"));
        }
        return Ok((a..=b).collect());
    }
    s.split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|_| format!("bad entry '{x}'")))
        .collect()
}

/// `a..b` (inclusive) or `a,b,c`.
pub fn usize_list_parser(s: &str) -> Result<Vec<usize>, String> {
    Ok(parse_list(s)?.into_iter().map(|x| x as usize).collect())
}

/// Like [`usize_list_parser`], but ranges keep only primes.
pub fn prime_list_parser(s: &str) -> Result<Vec<u64>, String> {
    let list = parse_list(s)?;
    if s.contains("..") {
        Ok(list.into_iter().filter(|&p| crate::padic::check_prime(p).is_ok()).collect())
    } else {
        Ok(list)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    GroupSpec(#[from] GroupFileError),
    #[error("--gens: {0}")]
    Generators(#[from] GroupError),
    #[error(transparent)]
    Growth(#[from] GrowthError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Padic(#[from] PadicError),
    #[error("{0}")]
    Usage(String),
}

/// A finished run: the report and whether any verdict fell short.
#[derive(Debug)]
pub struct RunOutput {
    pub report: Report,
    pub inconclusive: bool,
}

impl RunOutput {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.report.to_table(),
            OutputFormat::Records => self.report.to_records(),
        }
    }

    pub fn exit_code(&self, strict: bool) -> i32 {
        if strict && self.inconclusive {
            2
        } else {
            0
        }
    }
}

/// Parses arguments, runs, prints and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.format));
            out.exit_code(cli.strict)
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Executes one command.
pub fn run(cli: &Cli) -> Result<RunOutput, CliError> {
    match &cli.command {
        Command::Growth(a) => run_growth(a),
        Command::Capacity(a) => run_capacity(a),
        Command::CertifyDiscrete(a) => run_discrete(a),
        Command::CertifyTree(a) => Ok(run_tree(a)),
        Command::CertifyPadic(a) => run_padic(a),
        Command::ScanPadic(a) => run_scan(a),
        Command::CheckProperties(a) => run_properties(a),
    }
}

fn load(spec: &str, gens: &str) -> Result<(GroupBackend, GeneratingSet), CliError> {
    let group = parse_group_spec(spec)?;
    let set = GeneratingSet::parse(&group, gens)?;
    Ok((group, set))
}

fn group_record(group: &GroupBackend, set: &GeneratingSet) -> Record {
    Record::new("group")
        .field("label", group.label())
        .field("generators", set.describe(group))
        .field("set_size", set.len())
        .field("symmetric", set.is_symmetric())
        .field("identity_in_set", set.contains_identity())
}

fn enumerate(
    group: &GroupBackend,
    set: &GeneratingSet,
    n_max: usize,
    store: usize,
    budget: usize,
) -> Result<BallTable, CliError> {
    let opts = EnumerationOptions::new(n_max).store_limit(store).memory_budget(budget);
    Ok(enumerate_balls(group, set, opts)?)
}

fn exact_record(e: &ExactGrowth) -> Record {
    Record::new("exact_growth")
        .enclosure("omega", &e.omega)
        .enclosure("sigma", &e.sigma)
        .field("provenance", e.provenance)
        .field("method", &e.method)
}

fn warnings(report: &mut Report, list: &[String]) {
    for w in list {
        report.push(Record::new("warning").field("message", w));
    }
}

fn run_growth(a: &GrowthArgs) -> Result<RunOutput, CliError> {
    let (group, set) = load(&a.group.group, &a.group.gens)?;
    let table = enumerate(&group, &set, a.n_max, a.store_limit, a.group.memory_budget)?;
    let mut report = Report::new("growth");
    report.push(group_record(&group, &set));
    let mut est = growth_estimate(&table)?;
    for n in 1..=table.radius_max() {
        report.push(
            Record::new("radius")
                .field("n", n)
                .field("ball", table.ball_sizes()[n])
                .field("sphere", table.sphere_sizes()[n])
                .field("power", table.power_sizes()[n])
                .field("literal_difference", table.literal_differences()[n])
                .float("ball_root", est.per_n_ball_roots[n - 1])
                .float("sphere_root", est.per_n_sphere_roots[n - 1])
                .float("power_root", est.per_n_power_roots[n - 1]),
        );
    }
    let exact = if set.is_symmetric() { exact_growth(&group, &set)? } else { None };
    if let Some(e) = &exact {
        est.attach_exact(e);
    }
    let mut rec = Record::new("estimate")
        .field("radius_max", est.radius_max)
        .float("fekete_upper", est.fekete_upper)
        .field("fekete_radius", est.fekete_radius)
        .float("last_ball_root", est.last_ball_root())
        .float("last_sphere_root", est.last_sphere_root());
    if let Some(r) = est.ratio_estimate {
        rec = rec.float("ratio_estimate", r);
    }
    report.push(rec.field("provenance", Provenance::Empirical));
    if let Some(e) = &exact {
        report.push(exact_record(e));
        warnings(&mut report, &e.warnings);
    }
    if set.len() > 2 {
        let theta = match &exact {
            Some(e) => theta_index(&e.omega, set.len())?,
            None => theta_index_f64(est.best_value(), set.len())?,
        };
        report.push(
            Record::new("theta")
                .enclosure("value", &theta.value)
                .field("outside_unit_interval", theta.outside_unit_interval),
        );
    }
    let agree = omega_sigma_agreement(&table, a.tolerance);
    report.push(
        Record::new("agreement")
            .field("radius", agree.radius)
            .float("ball_root", agree.ball_root)
            .float("sphere_root", agree.sphere_root)
            .float("difference", agree.difference)
            .float("tolerance", agree.tolerance)
            .field("within_tolerance", agree.within_tolerance),
    );
    let sub = check_submultiplicative(&table)?;
    report.push(
        Record::new("submultiplicativity")
            .field("radius_max", sub.radius_max)
            .field("inequalities_checked", sub.inequalities_checked)
            .field("status", "ok"),
    );
    warnings(&mut report, table.warnings());
    warnings(&mut report, &est.warnings);
    Ok(RunOutput {
        report,
        inconclusive: false,
    })
}

fn capacity_lower(group: &GroupBackend, set: &GeneratingSet) -> Result<Option<LowerLimit>, CliError> {
    let Some(e) = exact_growth(group, set)? else {
        return Ok(None);
    };
    Ok(Some(lower_limit_from_growth(&e.sigma, e.provenance, set.len(), e.method)?))
}

fn lower_limit_record(l: &LowerLimit) -> Record {
    Record::new("capacity_lower_limit")
        .enclosure("value", &l.value)
        .field("provenance", l.provenance)
        .field("source", &l.source)
}

fn certificate_record(c: &CertificateResult) -> Record {
    Record::new("certificate")
        .field("verdict", c.verdict.as_str())
        .field("witness", &c.witness)
        .enclosure("capacity_lower", &c.capacity_lower)
        .enclosure("spectral_upper", &c.spectral_upper)
        .rational("half_spectral_upper", &c.half_spectral_upper)
        .rational("margin", &c.margin)
        .field("provenance", c.provenance)
        .field("conditional", c.conditional)
        .field("source", &c.source)
        .field("theorem", "real spectrum implies cap <= R/2; cap > R/2 certifies non-Hermitian")
}

fn criterion_record(v: &CriterionVerdict) -> Record {
    Record::new("criterion")
        .field("criterion", v.criterion)
        .field("verdict", v.verdict)
        .enclosure("omega_lower", &v.omega_lower)
        .rational("threshold", &v.threshold)
        .rational("margin", &v.margin)
        .field("provenance", v.provenance)
        .field("conditional", v.conditional)
        .field("notes", if v.notes.is_empty() { "-".to_string() } else { v.notes.join("; ") })
}

fn run_capacity(a: &CapacityArgs) -> Result<RunOutput, CliError> {
    let (group, set) = load(&a.group.group, &a.group.gens)?;
    let f = witness_element(&group, &set)?;
    let table = enumerate(&group, &set, a.n_max, a.n_max, a.group.memory_budget)?;
    let lower = sphere_mass_lower(&group, &set, &f, &table, a.n_max, a.support_budget)?;
    let upper = capacity_upper_lp(&group, &f, a.lp_degree, a.support_budget)?;
    let spectral = spectral_radius_upper(&group, &f, a.spectral_power, a.support_budget)?;
    let bounds = CapacityBounds {
        witness: format!("uniform measure on {}", set.describe(&group)),
        set_size: set.len(),
        lower_sphere: lower,
        lower_limit: capacity_lower(&group, &set)?,
        upper_lp: upper,
        spectral_upper: Some(spectral.clone()),
    };
    let mut report = Report::new("capacity");
    report.push(group_record(&group, &set));
    for m in &bounds.lower_sphere {
        report.push(
            Record::new("sphere_mass")
                .field("n", m.degree)
                .rational("mass", &m.mass)
                .float("root", m.root.midpoint_f64()),
        );
    }
    for u in &bounds.upper_lp {
        report.push(
            Record::new("lp_upper")
                .field("n", u.degree)
                .rational("optimum", &u.optimum)
                .float("root", u.root.midpoint_f64())
                .field("pivots", u.pivots),
        );
    }
    report.push(
        Record::new("spectral_upper")
            .field("power", a.spectral_power)
            .enclosure("value", &spectral),
    );
    let violations = bounds.order_violations();
    if !violations.is_empty() {
        return Err(CliError::Usage(format!(
            "internal error: sphere mass exceeds LP optimum at degrees {violations:?}"
        )));
    }
    let mut inconclusive = false;
    match &bounds.lower_limit {
        Some(l) => {
            report.push(lower_limit_record(l));
            let cert = frw_certificate(&bounds, &spectral)?;
            inconclusive = cert.verdict != FrwVerdict::NotHermitian;
            report.push(certificate_record(&cert));
        }
        None => report.push(
            Record::new("warning").field("message", "no rigorous growth value for this set; no certificate"),
        ),
    }
    Ok(RunOutput { report, inconclusive })
}

fn run_discrete(a: &DiscreteArgs) -> Result<RunOutput, CliError> {
    let mut report = Report::new("certify-discrete");
    let asserted = || -> Result<(Enclosure, Provenance, String), CliError> {
        let omega = a.omega_lower.clone().ok_or_else(|| {
            CliError::Usage("no rigorous growth value available; pass --omega-lower with --provenance".into())
        })?;
        if !a.provenance.is_conditional() {
            return Err(CliError::Usage(
                "--provenance must be user-asserted or paper-constant for an asserted growth value".into(),
            ));
        }
        Ok((Enclosure::exact(omega), a.provenance, format!("asserted ({})", a.provenance)))
    };
    let (verdict, cert) = if let Some(spec) = &a.group {
        let (group, set) = load(spec, &a.gens)?;
        report.push(group_record(&group, &set));
        let f = witness_element(&group, &set)?;
        let (omega, sigma, provenance, source) = match exact_growth(&group, &set)? {
            Some(e) => {
                report.push(exact_record(&e));
                (e.omega, e.sigma, e.provenance, e.method)
            }
            None => {
                let (w, p, s) = asserted()?;
                (w.clone(), w, p, s)
            }
        };
        let verdict = discrete_criterion(set.len(), &omega, provenance)?;
        let spectral = spectral_radius_upper(&group, &f, a.spectral_power, a.support_budget)?;
        let bounds = CapacityBounds {
            witness: format!("uniform measure on {}", set.describe(&group)),
            set_size: set.len(),
            lower_sphere: Vec::new(),
            lower_limit: Some(lower_limit_from_growth(&sigma, provenance, set.len(), source)?),
            upper_lp: Vec::new(),
            spectral_upper: Some(spectral.clone()),
        };
        (verdict, frw_certificate(&bounds, &spectral)?)
    } else {
        let size = a
            .set_size
            .ok_or_else(|| CliError::Usage("pass --group, or --set-size with --omega-lower".into()))?;
        let (omega, provenance, source) = asserted()?;
        let verdict = if provenance == Provenance::PaperConstant && size == 4 {
            burnside_check(omega.lo())
        } else {
            discrete_criterion(size, &omega, provenance)?
        };
        // ‖f‖₁ = 1 for the normalized indicator, so R(f) ≤ 1.
        let bounds = CapacityBounds {
            witness: format!("uniform measure on a set of size {size}"),
            set_size: size,
            lower_sphere: Vec::new(),
            lower_limit: Some(lower_limit_from_growth(&omega, provenance, size, source)?),
            upper_lp: Vec::new(),
            spectral_upper: Some(Enclosure::from_integer(1)),
        };
        (verdict, frw_certificate(&bounds, &Enclosure::from_integer(1))?)
    };
    report.push(criterion_record(&verdict));
    report.push(lower_limit_record(&LowerLimit {
        value: cert.capacity_lower.clone(),
        provenance: cert.provenance,
        source: cert.source.clone(),
    }));
    report.push(certificate_record(&cert));
    Ok(RunOutput {
        report,
        inconclusive: verdict.verdict != Verdict::Certified || cert.verdict != FrwVerdict::NotHermitian,
    })
}

fn run_tree(a: &TreeArgs) -> RunOutput {
    let v = tree_criterion(&a.tree);
    let mut report = Report::new("certify-tree");
    report.push(
        Record::new("tree")
            .field("tree", &v.tree)
            .field("mu", &v.mu_kgk)
            .field("growth_lower", &v.growth_lower)
            .field("degree_condition", v.degree_condition)
            .field("two_thirds_holds", v.two_thirds_holds)
            .field("two_thirds_equality", v.two_thirds_equality),
    );
    report.push(criterion_record(&v.verdict));
    RunOutput {
        report,
        inconclusive: v.verdict.verdict != Verdict::Certified,
    }
}

fn sign(q: &num_rational::BigRational) -> &'static str {
    use num_traits::Signed;
    if q.is_positive() {
        "positive"
    } else if q.is_negative() {
        "negative"
    } else {
        "zero"
    }
}

fn run_padic(a: &PadicArgs) -> Result<RunOutput, CliError> {
    let v = gl_criterion(a.n, a.p)?;
    let mut report = Report::new("certify-padic");
    report.push(
        Record::new("padic")
            .field("n", v.n)
            .field("p", v.p)
            .field("mu", &v.mu.value)
            .field("omega_lower", &v.omega_lower)
            .rational("inequality", &v.inequality)
            .field("inequality_sign", sign(&v.inequality)),
    );
    report.push(criterion_record(&v.verdict));
    if let Some(lambda) = &a.lambda {
        let m = hecke_measure(a.n, a.p, lambda)?;
        report.push(
            Record::new("hecke")
                .field("n", m.n)
                .field("p", m.p)
                .field("lambda", &m.lambda)
                .field("normalized", &m.normalized)
                .field("mu", &m.value)
                .field("group", "GL"),
        );
        if lambda.valuation() == 0 {
            let s = sl_measure(a.n, a.p, lambda)?;
            report.push(
                Record::new("hecke")
                    .field("n", s.n)
                    .field("p", s.p)
                    .field("lambda", &s.lambda)
                    .field("normalized", &s.normalized)
                    .field("mu", &s.value)
                    .field("group", "SL"),
            );
        }
    }
    Ok(RunOutput {
        report,
        inconclusive: v.verdict.verdict != Verdict::Certified,
    })
}

fn run_scan(a: &ScanArgs) -> Result<RunOutput, CliError> {
    let ns = usize_list_parser(&a.ns).map_err(|e| CliError::Usage(format!("--ns: {e}")))?;
    let ps = prime_list_parser(&a.ps).map_err(|e| CliError::Usage(format!("--ps: {e}")))?;
    if ns.is_empty() || ps.is_empty() {
        return Err(CliError::Usage("--ns and --ps must be nonempty".into()));
    }
    let mut rows = inequality_scan(&ns, &ps)?;
    if !a.no_special_cases {
        for (n, p) in SPECIAL_CASES {
            if !rows.iter().any(|r| r.n == n && r.p == p) {
                rows.extend(inequality_scan(&[n], &[p])?);
            }
        }
    }
    let mut report = Report::new("scan-padic");
    for r in &rows {
        report.push(
            Record::new("scan")
                .field("n", r.n)
                .field("p", r.p)
                .rational("value", &r.value)
                .field("sign_numerator", r.value.numer())
                .field("certified", r.certified),
        );
    }
    Ok(RunOutput {
        inconclusive: rows.iter().any(|r| !r.certified),
        report,
    })
}

fn run_properties(a: &PropertyArgs) -> Result<RunOutput, CliError> {
    let (group, set) = load(&a.group, &a.gens)?;
    let table = enumerate(&group, &set, a.n_max, a.n_max, a.memory_budget)?;
    let config = SuiteConfig {
        group_cases: a.group_cases,
        algebra_cases: a.algebra_cases,
        hecke_max_rank: a.hecke_rank,
        seed: a.seed,
        ..SuiteConfig::default()
    };
    let results = run_suite(&group, &table, &config);
    let mut report = Report::new("check-properties");
    report.push(group_record(&group, &set));
    for r in &results {
        report.push(
            Record::new("property")
                .field("name", r.name)
                .field("cases", r.cases)
                .field("status", if r.passed() { "pass" } else { "FAIL" })
                .field("detail", r.failure.as_deref().unwrap_or("-")),
        );
    }
    if let Some(bad) = results.iter().find(|r| !r.passed()) {
        return Err(CliError::Usage(format!(
            "property '{}' failed: {}\n{}",
            bad.name,
            bad.failure.as_deref().unwrap_or(""),
            report.to_records()
        )));
    }
    Ok(RunOutput {
        report,
        inconclusive: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<RunOutput, CliError> {
        let mut full = vec!["nonherm"];
        full.extend_from_slice(args);
        run(&Cli::try_parse_from(full).expect("arguments parse"))
    }

    #[test]
    fn padic_record() {
        let out = run_args(&["certify-padic", "--n", "2", "--p", "5"]).unwrap();
        let r = out.report.records_of("padic").next().unwrap();
        assert_eq!(r.get("mu"), Some("30"));
        assert_eq!(r.get("omega_lower"), Some("25"));
        assert_eq!(r.get("inequality"), Some("64/125"));
        let c = out.report.records_of("criterion").next().unwrap();
        assert_eq!(c.get("verdict"), Some("CERTIFIED"));
        assert_eq!(out.exit_code(true), 0);
    }

    #[test]
    fn discrete_free_group() {
        let out = run_args(&["certify-discrete", "--group", "free:2", "--gens", "standard"]).unwrap();
        let c = out.report.records_of("criterion").next().unwrap();
        assert_eq!(c.get("verdict"), Some("CERTIFIED"));
        let cert = out.report.records_of("certificate").next().unwrap();
        assert_eq!(cert.get("verdict"), Some("NOT_HERMITIAN"));
        assert_eq!(cert.get("capacity_lower"), Some("3/4"));
        assert_eq!(cert.get("spectral_upper"), Some("1"));
    }

    #[test]
    fn discrete_integers_is_inconclusive() {
        let out = run_args(&["certify-discrete", "--group", "free:1"]).unwrap();
        assert!(out.inconclusive);
        assert_eq!(out.exit_code(true), 2);
        assert_eq!(out.exit_code(false), 0);
        let c = out.report.records_of("criterion").next().unwrap();
        assert_eq!(c.get("verdict"), Some("EQUALITY_BOUNDARY"));
    }

    #[test]
    fn burnside_from_flags() {
        let out = run_args(&[
            "certify-discrete",
            "--set-size",
            "4",
            "--omega-lower",
            "2.9",
            "--provenance",
            "paper-constant",
        ])
        .unwrap();
        let c = out.report.records_of("criterion").next().unwrap();
        assert_eq!((c.get("verdict"), c.get("margin")), (Some("CERTIFIED"), Some("9/10")));
        assert_eq!(c.get("conditional"), Some("true"));
        assert!(run_args(&["certify-discrete", "--set-size", "4"]).is_err());
    }

    #[test]
    fn tree_and_scan() {
        let out = run_args(&["certify-tree", "--tree", "degrees=3,4 k=2"]).unwrap();
        let t = out.report.records_of("tree").next().unwrap();
        assert_eq!((t.get("mu"), t.get("growth_lower")), (Some("9"), Some("6")));
        let out = run_args(&["certify-tree", "--tree", "degrees=2"]).unwrap();
        assert!(out.inconclusive);
        let out = run_args(&["scan-padic"]).unwrap();
        assert_eq!(out.report.records.len(), 36 + 3);
        assert!(!out.inconclusive);
        let out = run_args(&["scan-padic", "--ns", "4", "--ps", "3", "--no-special-cases"]).unwrap();
        assert!(out.inconclusive);
    }

    #[test]
    fn growth_and_round_trip() {
        let out = run_args(&["growth", "--group", "fpc:2,3", "--gens", "a,ab,bba", "--n-max", "12"]).unwrap();
        assert_eq!(out.report.records_of("radius").count(), 12);
        let text = out.render(OutputFormat::Records);
        assert_eq!(Report::parse(&text).unwrap().to_records(), text);
        let again = run_args(&["growth", "--group", "fpc:2,3", "--gens", "a,ab,bba", "--n-max", "12"]).unwrap();
        assert_eq!(again.render(OutputFormat::Records), text);
    }

    #[test]
    fn capacity_on_integers() {
        let out = run_args(&["capacity", "--group", "free:1", "--lp-degree", "4", "--n-max", "4"]).unwrap();
        let lp: Vec<_> = out.report.records_of("lp_upper").collect();
        assert_eq!(lp[1].get("optimum"), Some("1/2"));
        let cert = out.report.records_of("certificate").next().unwrap();
        assert_eq!(cert.get("verdict"), Some("INCONCLUSIVE"));
        assert_eq!(cert.get("margin"), Some("0"));
    }

    #[test]
    fn knob_ranges() {
        assert!(Cli::try_parse_from(["nonherm", "growth", "--group", "free:2", "--n-max", "65"]).is_err());
        assert!(Cli::try_parse_from(["nonherm", "capacity", "--group", "free:2", "--lp-degree", "25"]).is_err());
        assert!(run_args(&["growth", "--group", "bogus"]).is_err());
        assert_eq!(usize_list_parser("2..4").unwrap(), vec![2, 3, 4]);
        assert_eq!(prime_list_parser("4..12").unwrap(), vec![5, 7, 11]);
    }
}
