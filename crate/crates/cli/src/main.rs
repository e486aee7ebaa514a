use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::json;

use hopfg::hopf_core::table::{TableFamily, TableGrade};
use hopfg::hopf_core::{CheckReport, HopfGFamily, NamedValue};
use hopfg::integrals::{GIntegral, Side};
use hopfg::mtrace::check_categorical_proportional;
use hopfg::suites::{axioms_suite, integrals_suite, mtrace_suite, negative_control, FormRecord, Report};
use hopfg::uqsl2::{character_form, modified_dimension, parse_rational64, sl2_full_report, Sl2Family, Sl2Grade};
use hopfg::Error;

const DEFAULT_SEED: u64 = 1;

#[derive(Parser)]
#[command(name = "hopfg", version, about = "Exact checks for pivotal Hopf G-coalgebras and their modified traces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a check suite on a built-in or JSON-described family.
    Check {
        #[command(flatten)]
        instance: InstanceArgs,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        /// `text`, `json`, or a path to write the JSON report to.
        #[arg(long, default_value = "text")]
        output: String,
    },
    /// Reduction identities and related trace checks on chosen grade pairs.
    Mtrace {
        #[command(flatten)]
        instance: InstanceArgs,
        /// Grade label; give exactly two.
        #[arg(long = "grade", num_args = 1, required = true, allow_hyphen_values = true)]
        grades: Vec<String>,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
        #[arg(long, default_value = "json")]
        output: String,
    },
    /// Quantum sl(2) identities for the simple module of weight alpha.
    Sl2 {
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, value_enum, default_value = "full")]
        report: ReportKind,
        #[arg(long, default_value = "json")]
        output: String,
    },
    /// Right G-integrals of every window grade.
    Integrals {
        #[command(flatten)]
        instance: InstanceArgs,
    },
}

#[derive(Args, Clone)]
struct InstanceArgs {
    #[arg(long, value_enum, default_value = "sl2")]
    instance: InstanceKind,
    #[arg(long, default_value_t = 2)]
    r: u32,
    #[arg(long, default_value = "1/2", allow_hyphen_values = true)]
    alpha: String,
    /// JSON structure-constant file (with `--instance json`).
    #[arg(long)]
    path: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum InstanceKind {
    Sl2,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Axioms,
    Integrals,
    Mtrace,
    Sl2Full,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Right,
    Left,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportKind {
    Full,
    Summary,
}

impl SideArg {
    fn sides(self) -> Vec<Side> {
        match self {
            SideArg::Right => vec![Side::Right],
            SideArg::Left => vec![Side::Left],
            SideArg::Both => vec![Side::Right, Side::Left],
        }
    }
}

fn seed_list(count: u64) -> Result<Vec<u64>, Error> {
    let base = match std::env::var("HOPFG_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Schema(format!("HOPFG_SEED={s:?} is not an unsigned integer")))?,
        Err(_) => DEFAULT_SEED,
    };
    if count == 0 {
        return Err(Error::Schema("--seeds must be positive".into()));
    }
    Ok((base..base + count).collect())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Schema(_) | Error::WindowIncomplete(_) | Error::ShapeMismatch(_) | Error::AlphaIntegralSingular(_) => 2,
        _ => 1,
    }
}

enum Loaded {
    Sl2 { fam: Sl2Family, r: u32, alpha: Rational64 },
    Table { fam: TableFamily, path: String },
}

fn load(args: &InstanceArgs, extra_weights: &[Rational64]) -> Result<Loaded, Error> {
    match args.instance {
        InstanceKind::Sl2 => {
            if args.r < 2 {
                return Err(Error::Schema("--r must be at least 2".into()));
            }
            let alpha = parse_rational64(&args.alpha)?;
            let mut weights = vec![alpha];
            weights.extend_from_slice(extra_weights);
            Ok(Loaded::Sl2 {
                fam: Sl2Family::for_weights(args.r, &weights),
                r: args.r,
                alpha,
            })
        }
        InstanceKind::Json => {
            let path = args
                .path
                .clone()
                .ok_or_else(|| Error::Schema("--instance json needs --path".into()))?;
            let text = fs::read_to_string(&path).map_err(|e| Error::Schema(format!("cannot read {path}: {e}")))?;
            Ok(Loaded::Table {
                fam: TableFamily::from_json_str(&text)?,
                path,
            })
        }
    }
}

impl Loaded {
    fn describe(&self) -> serde_json::Value {
        match self {
            Loaded::Sl2 { r, alpha, fam } => json!({
                "kind": "sl2",
                "r": r,
                "alpha": alpha.to_string(),
                "scalar_modulus": fam.modulus(),
            }),
            Loaded::Table { path, fam } => json!({
                "kind": "json",
                "path": path,
                "scalar_modulus": fam.modulus(),
            }),
        }
    }
}

fn table_pairs(fam: &TableFamily) -> Vec<(TableGrade, TableGrade)> {
    let g = fam.grades();
    g.iter().flat_map(|a| g.iter().map(move |b| (a.clone(), b.clone()))).collect()
}

fn sl2_pairs(alpha: Rational64) -> Vec<(Sl2Grade, Sl2Grade)> {
    let a = Sl2Grade::new(alpha);
    vec![
        (a, a),
        (a, Sl2Grade::new(-alpha)),
        (a, Sl2Grade::new(alpha * Rational64::from_integer(2))),
    ]
}

/// Suites shared by every family.
/// Records a suite that could not run as a single failing entry, unless the
/// error is about the input itself.
fn absorb(report: &mut CheckReport, prefix: &str, result: Result<CheckReport, Error>) -> Result<(), Error> {
    match result {
        Ok(r) => report.extend_prefixed(prefix, r),
        Err(e) if exit_code(&e) == 2 => return Err(e),
        Err(e) => {
            report.push(format!("{prefix}.suite_ran"), false, Some(e.to_string()));
        }
    }
    Ok(())
}

fn generic_suites<F: HopfGFamily>(
    fam: &F,
    window: &[F::Grade],
    pairs: &[(F::Grade, F::Grade)],
    suite: Suite,
    seeds: &[u64],
) -> Result<(CheckReport, Vec<FormRecord>), Error> {
    let mut report = CheckReport::new();
    let mut forms = Vec::new();
    if matches!(suite, Suite::Axioms | Suite::All) {
        absorb(&mut report, "axioms", axioms_suite(fam, window))?;
    }
    if matches!(suite, Suite::Integrals | Suite::Mtrace | Suite::All) {
        let integral = match GIntegral::new(fam) {
            Ok(i) => i,
            Err(e) => {
                absorb(&mut report, "integrals", Err(e))?;
                return Ok((report, forms));
            }
        };
        if matches!(suite, Suite::Integrals | Suite::All) {
            let r = integrals_suite(&integral, window).map(|(r, f)| {
                forms = f;
                r
            });
            absorb(&mut report, "integrals", r)?;
        }
        if matches!(suite, Suite::Mtrace | Suite::All) {
            let grades: Vec<F::Grade> = pairs.iter().map(|(a, _)| a.clone()).take(1).collect();
            absorb(
                &mut report,
                "mtrace",
                mtrace_suite(&integral, &grades, pairs, seeds, &[Side::Right, Side::Left]),
            )?;
        }
    }
    Ok((report, forms))
}

fn sl2_extra(fam: &Sl2Family, alpha: Rational64, suite: Suite, seeds: &[u64]) -> Result<(CheckReport, Vec<NamedValue>), Error> {
    let mut report = CheckReport::new();
    let mut values = Vec::new();
    let a = Sl2Grade::new(alpha);
    if matches!(suite, Suite::Mtrace | Suite::All) {
        let chi = |g: &Sl2Grade| character_form(fam, g);
        report.extend_prefixed(
            "mtrace",
            negative_control(fam, "character", &chi, &a, &a, seeds, Side::Right)?,
        );
    }
    if matches!(suite, Suite::Sl2Full | Suite::All) {
        let integral = GIntegral::new(fam)?;
        report.extend_prefixed("sl2", sl2_full_report(&integral, alpha)?);
        for side in [Side::Right, Side::Left] {
            let mu = integral.symmetrised(&a, side)?;
            let (r, _) = check_categorical_proportional(fam, &mu, &a, &seeds[..seeds.len().min(5)], side)?;
            report.extend_prefixed("sl2", r);
        }
        let md = modified_dimension(&integral, alpha)?;
        values.push(NamedValue::new("d0", &md.d0));
        values.push(NamedValue::new("integral_of_projector", &md.integral_of_projector));
        values.push(NamedValue::new("dimension_via_integral", &md.via_integral));
        values.push(NamedValue::new("dimension_via_formula", &md.via_formula));
        values.push(NamedValue::new("dimension_via_product", &md.via_product));
        values.push(NamedValue::new("dimension_via_primitive_idempotent", &md.via_primitive_idempotent));
    }
    Ok((report, values))
}

// A closed stdout (e.g. piped into `head`) is not an error worth reporting.
fn write_stdout(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(report: &Report, output: &str) -> Result<(), Error> {
    match output {
        "text" => write_stdout(&report.to_text()),
        "json" => write_stdout(&(report.to_json() + "\n")),
        path => {
            fs::write(path, report.to_json() + "\n").map_err(|e| Error::Schema(format!("cannot write {path}: {e}")))?;
            write_stdout(&format!(
                "{} passed, {} failed; report written to {path}\n",
                report.summary.passed, report.summary.failed
            ));
        }
    }
    Ok(())
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Axioms => "axioms",
        Suite::Integrals => "integrals",
        Suite::Mtrace => "mtrace",
        Suite::Sl2Full => "sl2-full",
        Suite::All => "all",
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Check {
            instance,
            suite,
            seeds,
            output,
        } => {
            let seeds = seed_list(seeds)?;
            let loaded = load(&instance, &[])?;
            let (checks, forms, values) = match &loaded {
                Loaded::Sl2 { fam, alpha, .. } => {
                    let window = Sl2Family::window(*alpha);
                    let (mut checks, forms) = generic_suites(fam, &window, &sl2_pairs(*alpha), suite, &seeds)?;
                    let (extra, values) = sl2_extra(fam, *alpha, suite, &seeds)?;
                    checks.extend(extra);
                    (checks, forms, values)
                }
                Loaded::Table { fam, .. } => {
                    if suite == Suite::Sl2Full {
                        return Err(Error::Schema("suite sl2-full needs --instance sl2".into()));
                    }
                    let (checks, forms) = generic_suites(fam, &fam.grades(), &table_pairs(fam), suite, &seeds)?;
                    (checks, forms, Vec::new())
                }
            };
            let mut report = Report::new(loaded.describe(), suite_name(suite), &seeds, checks);
            report.integrals = forms;
            report.values = values;
            emit(&report, &output)?;
            Ok(report.all_passed())
        }
        Command::Mtrace {
            instance,
            grades,
            seeds,
            side,
            output,
        } => {
            if grades.len() != 2 {
                return Err(Error::Schema("mtrace needs exactly two --grade values".into()));
            }
            let seeds = seed_list(seeds)?;
            let sides = side.sides();
            let (loaded, checks) = match instance.instance {
                InstanceKind::Sl2 => {
                    let g: Vec<Rational64> = grades.iter().map(|s| parse_rational64(s)).collect::<Result<_, _>>()?;
                    let loaded = load(&instance, &g)?;
                    let Loaded::Sl2 { fam, .. } = &loaded else { unreachable!() };
                    let (a, b) = (Sl2Grade::new(g[0]), Sl2Grade::new(g[1]));
                    let integral = GIntegral::new(fam)?;
                    let mut checks = mtrace_suite(&integral, &[a], &[(a, b)], &seeds, &sides)?;
                    let chi = |x: &Sl2Grade| character_form(fam, x);
                    for s in &sides {
                        checks.extend(negative_control(fam, "character", &chi, &a, &b, &seeds, *s)?);
                    }
                    (loaded, checks)
                }
                InstanceKind::Json => {
                    let loaded = load(&instance, &[])?;
                    let Loaded::Table { fam, .. } = &loaded else { unreachable!() };
                    let find = |s: &str| {
                        fam.grade_by_name(s)
                            .ok_or_else(|| Error::Schema(format!("unknown grade {s:?}")))
                    };
                    let (a, b) = (find(&grades[0])?, find(&grades[1])?);
                    let integral = GIntegral::new(fam)?;
                    let checks = mtrace_suite(&integral, std::slice::from_ref(&a), &[(a.clone(), b)], &seeds, &sides)?;
                    (loaded, checks)
                }
            };
            let report = Report::new(loaded.describe(), "mtrace", &seeds, checks);
            emit(&report, &output)?;
            Ok(report.all_passed())
        }
        Command::Sl2 {
            r,
            alpha,
            report: kind,
            output,
        } => {
            let args = InstanceArgs {
                instance: InstanceKind::Sl2,
                r,
                alpha,
                path: None,
            };
            let seeds = seed_list(5)?;
            let loaded = load(&args, &[])?;
            let Loaded::Sl2 { fam, alpha, .. } = &loaded else { unreachable!() };
            let (checks, values) = sl2_extra(fam, *alpha, Suite::Sl2Full, &seeds)?;
            let mut report = Report::new(loaded.describe(), "sl2-full", &seeds, checks);
            report.values = values;
            if matches!(kind, ReportKind::Summary) {
                report.checks.retain(|e| !e.passed);
            }
            emit(&report, &output)?;
            Ok(report.all_passed())
        }
        Command::Integrals { instance } => {
            let loaded = load(&instance, &[])?;
            let forms: Vec<FormRecord> = match &loaded {
                Loaded::Sl2 { fam, alpha, .. } => forms_of(fam, &Sl2Family::window(*alpha))?,
                Loaded::Table { fam, .. } => forms_of(fam, &fam.grades())?,
            };
            write_stdout(&(serde_json::to_string_pretty(&forms).expect("forms serialize") + "\n"));
            Ok(true)
        }
    }
}

fn forms_of<F: HopfGFamily>(fam: &F, window: &[F::Grade]) -> Result<Vec<FormRecord>, Error> {
    let integral = GIntegral::new(fam)?;
    window
        .iter()
        .map(|a| {
            Ok(FormRecord {
                grade: a.to_string(),
                form: integral.right(a)?.to_vec(),
                normalization: integral.normalization_label().to_string(),
            })
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
