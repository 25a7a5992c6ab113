//! Command-line front end: `verify`, `eval` and `residue`.
//!
//! Exit status is 0 on success, 1 when a suite fails or evaluation hits a
//! library error, and 2 on usage errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bg::{
    bg_exceptional, bg_factorization, bg_operator, bg_operator_formal, critical_operators, residue_link,
    verify_bg_at, verify_bg_exceptional, verify_bg_factorization, verify_bg_recurrence, verify_critical,
    verify_residue, BGSpec,
};
use crate::bvp::{solution_operator, solution_operator_at, verify_einstein_bvp, verify_flat_bvp, Sign};
use crate::error::Error;
use crate::exact::{ParamScalar, UniPoly, Var};
use crate::hypergeom::{verify_lemma_a1, verify_pochhammer_product, verify_s1_hypergeometric, verify_s_hahn_representation};
use crate::latex::{operator_display, scalar_latex, standalone_document, unipoly_latex};
use crate::operator::{verify_operator_algebra, FormOperator};
use crate::report::{Report, ReportSet, Variant};
use crate::special::{verify_poly_recurrences, PolyFamilyId, PolyTag};

#[derive(Parser, Debug)]
#[command(name = "bgforms", version, about = "Exact verification of form boundary value problems and Branson-Gover operators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Print a polynomial or operator.
    Eval(EvalArgs),
    /// Residue of the plus solution operator against L_2N.
    Residue(ResidueArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    PolyRecurrences,
    Hahn,
    S1Hypergeom,
    LemmaA1,
    FlatBvp,
    EinsteinBvp,
    BgRecurrence,
    BgFactorization,
    BgExceptional,
    Critical,
    Residue,
    Oracle,
    All,
}

impl Suite {
    pub const EACH: [Suite; 12] = [
        Suite::PolyRecurrences,
        Suite::Hahn,
        Suite::S1Hypergeom,
        Suite::LemmaA1,
        Suite::FlatBvp,
        Suite::EinsteinBvp,
        Suite::BgRecurrence,
        Suite::BgFactorization,
        Suite::BgExceptional,
        Suite::Critical,
        Suite::Residue,
        Suite::Oracle,
    ];
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Human,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
    #[arg(long = "m-max", default_value_t = 8)]
    pub m_max: usize,
    #[arg(long = "N-max", default_value_t = 6)]
    pub n_max: usize,
    /// Random representations for the matrix oracle.
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 8)]
    pub dimension: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Manifold dimension for the concrete-parameter checks.
    #[arg(long, requires = "p")]
    pub n: Option<i64>,
    /// Form degree for the concrete-parameter checks.
    #[arg(long, requires = "n")]
    pub p: Option<i64>,
    /// Inject each suite's designated mutation.
    #[arg(long)]
    pub mutate: bool,
    #[arg(long, value_enum, default_value = "human")]
    pub format: ReportFormat,
    /// Also write the JSON report to this path.
    #[arg(long)]
    pub report: Option<std::path::PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
#[value(rename_all = "verbatim")]
pub enum EvalTarget {
    #[value(name = "sPoly")]
    SPoly,
    #[value(name = "solutionOp")]
    SolutionOp,
    #[value(name = "bgOp")]
    BgOp,
    #[value(name = "critical")]
    Critical,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TagArg {
    #[value(name = "sMinus")]
    SMinus,
    #[value(name = "sPlus")]
    SPlus,
    #[value(name = "sOne")]
    SOne,
    #[value(name = "R")]
    R,
    #[value(name = "R1")]
    R1,
}

impl From<TagArg> for PolyTag {
    fn from(t: TagArg) -> Self {
        match t {
            TagArg::SMinus => PolyTag::SMinus,
            TagArg::SPlus => PolyTag::SPlus,
            TagArg::SOne => PolyTag::SOne,
            TagArg::R => PolyTag::R,
            TagArg::R1 => PolyTag::R1,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Latex,
}

#[derive(Args, Debug, Clone)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub target: EvalTarget,
    #[arg(long, value_enum, default_value = "sMinus")]
    pub tag: TagArg,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
    #[arg(long, value_enum, default_value = "plus")]
    pub sign: Sign,
    #[arg(long = "N", default_value_t = 1)]
    pub big_n: usize,
    /// Specialize `lambda`, as a rational or a ParamScalar expression.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, requires = "p")]
    pub n: Option<i64>,
    #[arg(long, requires = "n")]
    pub p: Option<i64>,
    /// For `bgOp` with `--n/--p`: print the factorization.
    #[arg(long)]
    pub factored: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

#[derive(Args, Debug, Clone)]
pub struct ResidueArgs {
    #[arg(long = "N")]
    pub big_n: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
}

/// Failure of a command, split by exit status.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Library(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSpec(m) => CliError::Usage(m),
            e => CliError::Library(e),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Library(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Library(e) => write!(f, "error: {e}"),
        }
    }
}

/// Caps the global rayon pool from `BGFORMS_THREADS`, if set.
pub fn configure_threads() {
    if let Some(n) = std::env::var("BGFORMS_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

fn variant(mutate: bool) -> Variant {
    if mutate {
        Variant::Mutated
    } else {
        Variant::Faithful
    }
}

fn concrete(n: Option<i64>, p_deg: Option<i64>, big_n: usize) -> Result<Option<BGSpec>, CliError> {
    match (n, p_deg) {
        (Some(n), Some(p_deg)) => Ok(Some(BGSpec::new(big_n.max(1), n, p_deg)?)),
        _ => Ok(None),
    }
}

/// Runs one suite with the selector's bounds.
pub fn run_suite(suite: Suite, args: &VerifyArgs) -> Result<Report, CliError> {
    let v = variant(args.mutate);
    let spec = concrete(args.n, args.p, args.n_max)?;
    let report = match suite {
        Suite::PolyRecurrences => verify_poly_recurrences(args.m_max, v),
        Suite::Hahn => {
            let mut r = verify_s_hahn_representation(args.m_max, v);
            r.extend(verify_pochhammer_product(args.m_max, v));
            r
        }
        Suite::S1Hypergeom => verify_s1_hypergeometric(args.m_max, v),
        Suite::LemmaA1 => verify_lemma_a1(args.m_max, v),
        Suite::FlatBvp => verify_flat_bvp(args.m_max, v),
        Suite::EinsteinBvp => verify_einstein_bvp(args.m_max, v),
        Suite::BgRecurrence => verify_bg_recurrence(args.n_max, v),
        Suite::BgFactorization => {
            let mut r = verify_bg_factorization(args.n_max, v);
            if let Some(s) = &spec {
                r.extend(verify_bg_at(s.n, s.p, args.n_max, v)?);
            }
            r
        }
        Suite::BgExceptional => {
            let mut r = verify_bg_exceptional(args.n_max, v);
            if let Some(s) = &spec {
                r.extend(verify_bg_at(s.n, s.p, args.n_max, v)?);
            }
            r
        }
        Suite::Critical => match &spec {
            Some(s) => {
                critical_operators(s.n, s.p)?;
                verify_critical(&[s.beta()], v)
            }
            None => verify_critical(&[2, 4, 6, 8], v),
        },
        Suite::Residue => verify_residue(args.n_max, v),
        Suite::Oracle => verify_operator_algebra(500, args.trials, 10, args.dimension, args.seed, v),
        Suite::All => unreachable!("expanded by the caller"),
    };
    Ok(report)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<ReportSet, CliError> {
    if args.dimension < 2 {
        return Err(CliError::Usage("--dimension must be at least 2".into()));
    }
    concrete(args.n, args.p, args.n_max)?;
    let suites: Vec<Suite> = if args.suite == Suite::All {
        Suite::EACH.to_vec()
    } else {
        vec![args.suite]
    };
    let reports = suites
        .into_iter()
        .map(|s| run_suite(s, args))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ReportSet { reports })
}

fn parse_scalar(s: &str) -> Result<ParamScalar, CliError> {
    ParamScalar::parse(s).map_err(|e| CliError::Usage(format!("cannot parse {s:?}: {e}")))
}

#[derive(Serialize)]
struct Labeled<'a, T: Serialize> {
    label: &'a str,
    value: &'a T,
}

fn render_poly(label: &str, poly: &UniPoly, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text if poly.coeffs().len() <= 1 => poly.constant_term().to_text(),
        OutputFormat::Text => poly.to_text_in("y"),
        OutputFormat::Json => {
            let coeffs: Vec<ParamScalar> = poly.coeffs().to_vec();
            serde_json::to_string_pretty(&Labeled { label, value: &coeffs }).expect("serializes")
        }
        OutputFormat::Latex => standalone_document(
            label,
            &format!("\\[\n{} = {}\n\\]\n", label, unipoly_latex(poly, "y")),
        ),
    }
}

/// Label to operator map that keeps its entries in the given order.
struct Labelled<'a>(&'a [(&'a str, &'a FormOperator)]);

impl Serialize for Labelled<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(l, o)| (l, o)))
    }
}

fn render_ops(title: &str, ops: &[(&str, &FormOperator)], format: OutputFormat) -> String {
    render_ops_with(title, ops, format, ops.len() > 1)
}

fn render_ops_with(title: &str, ops: &[(&str, &FormOperator)], format: OutputFormat, labels: bool) -> String {
    match format {
        OutputFormat::Text => ops
            .iter()
            .map(|(l, o)| if labels { format!("{l} = {}", o.to_text()) } else { o.to_text() })
            .collect::<Vec<_>>()
            .join("\n"),
        OutputFormat::Json => serde_json::to_string_pretty(&Labelled(ops)).expect("serializes"),
        OutputFormat::Latex => {
            let body: String = ops.iter().map(|(l, o)| operator_display(l, o)).collect();
            standalone_document(title, &body)
        }
    }
}

pub fn cmd_eval(args: &EvalArgs) -> Result<String, CliError> {
    let beta_value = match (args.n, args.p) {
        (Some(n), Some(p_deg)) => Some(BGSpec::new(args.big_n.max(1), n, p_deg)?),
        _ => None,
    };
    let at_beta = |op: FormOperator| -> Result<FormOperator, CliError> {
        match &beta_value {
            Some(s) => Ok(op.substitute(Var::Beta, &s.beta_scalar())?),
            None => Ok(op),
        }
    };
    match args.target {
        EvalTarget::SPoly => {
            let tag = PolyTag::from(args.tag);
            let poly = PolyFamilyId::new(tag, args.m).build();
            let poly = match &args.lambda {
                Some(l) => poly.substitute(Var::Lambda, &parse_scalar(l)?)?,
                None => poly,
            };
            Ok(render_poly(&format!("{}_{}", tag.name(), args.m), &poly, args.format))
        }
        EvalTarget::SolutionOp => {
            let op = match &args.lambda {
                Some(l) => solution_operator_at(args.sign, args.m, &parse_scalar(l)?)?,
                None => solution_operator(args.sign, args.m),
            };
            let op = at_beta(op)?;
            let sign = match args.sign {
                Sign::Plus => "+",
                Sign::Minus => "-",
            };
            let label = format!("T^{{({sign})}}_{{{}}}", args.m);
            Ok(render_ops("Solution operator", &[(&label, &op)], args.format))
        }
        EvalTarget::BgOp => {
            if args.big_n < 1 {
                return Err(CliError::Usage("--N must be at least 1".into()));
            }
            let label = format!("L_{{{}}}", 2 * args.big_n);
            match (&beta_value, args.factored) {
                (None, true) => Err(CliError::Usage("--factored needs --n and --p".into())),
                (None, false) => Ok(render_ops(
                    "Branson-Gover operator",
                    &[(&label, &bg_operator_formal(args.big_n))],
                    args.format,
                )),
                (Some(spec), false) => {
                    Ok(render_ops("Branson-Gover operator", &[(&label, &bg_operator(spec))], args.format))
                }
                (Some(spec), true) => {
                    let (names, ops): (Vec<String>, Vec<FormOperator>) = if spec.is_exceptional() {
                        let f = bg_exceptional(spec)?;
                        std::iter::once(("prefactor".to_string(), f.prefactor))
                            .chain(f.factors.into_iter().enumerate().map(|(i, o)| (format!("F_{{{}}}", i + 1), o)))
                            .unzip()
                    } else {
                        bg_factorization(spec)?
                            .into_iter()
                            .enumerate()
                            .map(|(i, o)| (format!("F_{{{}}}", i + 1), o))
                            .unzip()
                    };
                    let pairs: Vec<(&str, &FormOperator)> = names.iter().map(String::as_str).zip(&ops).collect();
                    Ok(render_ops_with("Branson-Gover factorization", &pairs, args.format, true))
                }
            }
        }
        EvalTarget::Critical => {
            let spec = beta_value.ok_or_else(|| CliError::Usage("critical needs --n and --p".into()))?;
            let ops = critical_operators(spec.n, spec.p)?;
            Ok(render_ops(
                "Critical operators",
                &[("L", &ops.l_crit), ("Q", &ops.q), ("G", &ops.g)],
                args.format,
            ))
        }
    }
}

pub fn cmd_residue(args: &ResidueArgs) -> Result<String, CliError> {
    if args.big_n < 1 {
        return Err(CliError::Usage("--N must be at least 1".into()));
    }
    let link = residue_link(args.big_n)?;
    Ok(match args.format {
        OutputFormat::Text => format!(
            "scalar = {}\nresidue = {}\nL_{} = {}",
            link.scalar,
            link.residue.to_text(),
            2 * link.big_n,
            link.bg_operator.to_text()
        ),
        OutputFormat::Json => serde_json::to_string_pretty(&link).expect("serializes"),
        OutputFormat::Latex => {
            let lhs = format!(r"\mathrm{{Res}}_{{\lambda=\frac\beta2-{}}}T^{{(+)}}_{{{}}}", link.big_n, link.big_n);
            let mut body = format!(
                "\\[\n{lhs} = c\\,L_{{{}}},\\qquad c = {}\n\\]\n",
                2 * link.big_n,
                scalar_latex(&link.scalar)
            );
            body.push_str(&operator_display(&lhs, &link.residue));
            body.push_str(&operator_display(&format!("L_{{{}}}", 2 * link.big_n), &link.bg_operator));
            standalone_document("Residue", &body)
        }
    })
}

/// Runs a parsed command, printing to stdout, and returns the exit status.
/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

pub fn run(cli: Cli) -> ExitCode {
    configure_threads();
    let outcome = match &cli.command {
        Command::Verify(args) => cmd_verify(args).and_then(|set| {
            if let Some(path) = &args.report {
                std::fs::write(path, set.to_json())
                    .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            match args.format {
                ReportFormat::Human => emit(&set.to_human()),
                ReportFormat::Json => emit(&format!("{}\n", set.to_json())),
            }
            Ok(if set.passed() { 0 } else { 1 })
        }),
        Command::Eval(args) => cmd_eval(args).map(|s| {
            emit(&format!("{s}\n"));
            0
        }),
        Command::Residue(args) => cmd_residue(args).map(|s| {
            emit(&format!("{s}\n"));
            0
        }),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Parses `std::env::args` and runs; clap's own usage errors exit with 2.
pub fn main() -> ExitCode {
    run(Cli::parse())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("bgforms").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn s_minus_zero_is_one() {
        let Command::Eval(a) = parse(&["eval", "sPoly", "--tag", "sMinus", "--m", "0"]).command else {
            panic!()
        };
        assert_eq!(cmd_eval(&a).unwrap(), "1");
    }

    #[test]
    fn minus_solution_operator_of_order_two() {
        let Command::Eval(a) = parse(&["eval", "solutionOp", "--sign", "minus", "--m", "1"]).command else {
            panic!()
        };
        assert_eq!(cmd_eval(&a).unwrap(), "((-1)/(beta-lambda))*delta");
        let k = ParamScalar::parse("(-1)/(beta-lambda)").unwrap();
        assert_eq!(k, (&ParamScalar::lambda() - &ParamScalar::beta()).recip().unwrap());
    }

    #[test]
    fn invalid_form_degree_is_a_usage_error() {
        let Command::Verify(a) = parse(&["verify", "--suite", "bg-factorization", "--n", "7", "--p", "12"]).command
        else {
            panic!()
        };
        assert_eq!(cmd_verify(&a).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn residue_zero_is_a_usage_error() {
        let err = cmd_residue(&ResidueArgs { big_n: 0, format: OutputFormat::Text }).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn resonant_lambda_is_rejected() {
        let Command::Eval(a) =
            parse(&["eval", "solutionOp", "--sign", "plus", "--m", "2", "--lambda", "beta/2-2"]).command
        else {
            panic!()
        };
        assert!(matches!(cmd_eval(&a), Err(CliError::Library(Error::ResonantParameter(_)))));
    }

    #[test]
    fn unknown_suite_is_rejected_by_the_parser() {
        let r = Cli::try_parse_from(["bgforms", "verify", "--suite", "nope"]);
        assert_eq!(r.unwrap_err().exit_code(), 2);
    }

    #[test]
    fn json_verify_output_is_deterministic() {
        let Command::Verify(a) = parse(&["verify", "--suite", "critical"]).command else {
            panic!()
        };
        assert_eq!(cmd_verify(&a).unwrap().to_json(), cmd_verify(&a).unwrap().to_json());
    }
}
