//! Command-line front end for objectives-principles-practices assessment.
//!
//! [`run`] parses arguments, dispatches to the engine in `opp_core` and
//! returns the process exit code, so the whole tool can be driven in-process.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use opp_core::assessment::{
    assess_adequacy, assess_attainment, compare_adequacy, emit_report, parse_report,
    AdequacyReport, AssessmentKind,
};
use opp_core::catalog::{
    builtin_reference, corpus, corpus_entry, emit_catalog, parse_catalog, parse_method,
    parse_observations, Parsed,
};
use opp_core::model::{
    validate_framework, validate_method, validate_observations, Issue, MethodDefinition,
    ObservationSet, ReferenceFramework, ValidationReport,
};

pub mod render;

pub use render::Style;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Exit {
    Success = 0,
    Usage = 1,
    Validation = 2,
    BelowThreshold = 3,
    Io = 4,
}

impl Exit {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "oppa",
    version,
    about = "Assess software development methods against an objectives-principles-practices framework"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a catalog, and optionally a method and an observation set, for structural problems.
    Validate {
        /// Catalog document, or `builtin`.
        #[arg(long)]
        catalog: String,
        /// Method document, or `corpus:<id>`.
        #[arg(long)]
        method: Option<String>,
        #[arg(long)]
        observations: Option<PathBuf>,
    },
    /// Score how well a method covers the principles and practices its objectives require.
    Adequacy {
        #[arg(long)]
        catalog: String,
        #[arg(long)]
        method: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Exit with status 3 when the overall score is below this value.
        #[arg(long, value_parser = threshold)]
        fail_under: Option<f64>,
    },
    /// Assess people, process and project indicators.
    Capability(AttainmentArgs),
    /// Assess process-artifact and product indicators.
    Effectiveness(AttainmentArgs),
    /// Tabulate the adequacy of several methods against one catalog.
    Compare {
        #[arg(long)]
        catalog: String,
        #[arg(long = "method", required = true)]
        methods: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Exit with status 3 when any method's overall score is below this value.
        #[arg(long, value_parser = threshold)]
        fail_under: Option<f64>,
    },
    /// Inspect a catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Args, Debug)]
struct AttainmentArgs {
    #[arg(long)]
    catalog: String,
    #[arg(long)]
    method: String,
    #[arg(long)]
    observations: PathBuf,
    /// Adequacy report produced by `oppa adequacy --format json`.
    #[arg(long, conflicts_with = "compute_adequacy")]
    adequacy: Option<PathBuf>,
    /// Assess adequacy first and embed it in the result.
    #[arg(long)]
    compute_adequacy: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Print a catalog as a readable summary or as canonical JSON.
    Show {
        #[arg(long, conflicts_with = "catalog")]
        builtin: bool,
        #[arg(long)]
        catalog: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn threshold(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside [0, 1]"))
    }
}

/// Failure of a command, carrying what to report and the exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    Document {
        origin: String,
        error: opp_core::Error,
    },
    Invalid,
    BelowThreshold(String),
}

impl Failure {
    fn exit(&self) -> Exit {
        match self {
            Failure::Usage(_) => Exit::Usage,
            Failure::Io { .. } => Exit::Io,
            Failure::Document { .. } | Failure::Invalid => Exit::Validation,
            Failure::BelowThreshold(_) => Exit::BelowThreshold,
        }
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    style: Style,
}

impl Ctx<'_> {
    fn print(&mut self, text: &[u8]) -> Result<(), Failure> {
        self.out.write_all(text).map_err(|source| Failure::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
    }

    fn warn(&mut self, origin: &str, issues: &[Issue]) {
        for issue in issues {
            let _ = writeln!(self.err, "warning: {origin}: {issue}");
        }
    }

    fn report_issues(&mut self, origin: &str, report: &ValidationReport) {
        for issue in &report.issues {
            let _ = writeln!(self.err, "{origin}: {issue}");
        }
    }
}

/// Runs the tool with `args` (including the program name) and returns the exit code.
///
/// `style` controls heading emphasis in text output; it is ignored when the
/// `OPPA_NO_COLOR` environment variable is set.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, mut style: Style) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    Exit::Success.code()
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    Exit::Usage.code()
                }
            };
        }
    };
    if std::env::var_os("OPPA_NO_COLOR").is_some() {
        style.enabled = false;
    }
    let mut ctx = Ctx { out, err, style };
    match dispatch(cli.command, &mut ctx) {
        Ok(()) => Exit::Success.code(),
        Err(failure) => {
            match &failure {
                Failure::Usage(message) => {
                    let _ = writeln!(ctx.err, "error: {message}");
                }
                Failure::Io { path, source } => {
                    let _ = writeln!(ctx.err, "error: {}: {source}", path.display());
                }
                Failure::Document { origin, error } => {
                    let _ = writeln!(ctx.err, "error[{}] {origin}: {error}", error.code());
                    if let Some(report) = error.report() {
                        ctx.report_issues(origin, report);
                    }
                }
                Failure::Invalid => {}
                Failure::BelowThreshold(message) => {
                    let _ = writeln!(ctx.err, "{message}");
                }
            }
            failure.exit().code()
        }
    }
}

fn dispatch(command: Command, ctx: &mut Ctx) -> Result<(), Failure> {
    match command {
        Command::Validate {
            catalog,
            method,
            observations,
        } => validate(ctx, &catalog, method.as_deref(), observations.as_deref()),
        Command::Adequacy {
            catalog,
            method,
            format,
            fail_under,
        } => adequacy(ctx, &catalog, &method, format, fail_under),
        Command::Capability(args) => attainment(ctx, AssessmentKind::Capability, args),
        Command::Effectiveness(args) => attainment(ctx, AssessmentKind::Effectiveness, args),
        Command::Compare {
            catalog,
            methods,
            format,
            fail_under,
        } => compare(ctx, &catalog, &methods, format, fail_under),
        Command::Catalog {
            action:
                CatalogAction::Show {
                    builtin,
                    catalog,
                    format,
                },
        } => {
            let source = match (builtin, catalog) {
                (_, Some(c)) => c,
                (true, None) => "builtin".to_string(),
                (false, None) => {
                    return Err(Failure::Usage(
                        "catalog show needs --builtin or --catalog <path>".into(),
                    ))
                }
            };
            let fw = load_catalog(ctx, &source)?;
            match format {
                Format::Text => ctx.print(render::render_catalog(&fw, ctx.style).as_bytes()),
                Format::Json => {
                    let bytes = emit_catalog(&fw).map_err(|error| Failure::Document {
                        origin: source,
                        error,
                    })?;
                    ctx.print(&bytes)
                }
            }
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    std::fs::read(path).map_err(|source| Failure::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parsed<T>(
    ctx: &mut Ctx,
    origin: &str,
    result: opp_core::Result<Parsed<T>>,
) -> Result<T, Failure> {
    match result {
        Ok(p) => {
            ctx.warn(origin, &p.warnings);
            Ok(p.value)
        }
        Err(error) => Err(Failure::Document {
            origin: origin.to_string(),
            error,
        }),
    }
}

fn load_catalog(ctx: &mut Ctx, source: &str) -> Result<ReferenceFramework, Failure> {
    if source == "builtin" {
        return Ok(builtin_reference());
    }
    let bytes = read(Path::new(source))?;
    parsed(ctx, source, parse_catalog(&bytes))
}

fn load_method(ctx: &mut Ctx, source: &str) -> Result<MethodDefinition, Failure> {
    if let Some(id) = source.strip_prefix("corpus:") {
        return corpus_entry(id).map(|e| e.method).ok_or_else(|| {
            let known: Vec<_> = corpus()
                .into_iter()
                .map(|e| e.method.id.to_string())
                .collect();
            Failure::Usage(format!(
                "unknown corpus method `{id}` (available: {})",
                known.join(", ")
            ))
        });
    }
    let bytes = read(Path::new(source))?;
    parsed(ctx, source, parse_method(&bytes))
}

fn load_observations(ctx: &mut Ctx, path: &Path) -> Result<ObservationSet, Failure> {
    let bytes = read(path)?;
    parsed(ctx, &path.display().to_string(), parse_observations(&bytes))
}

fn engine<T>(origin: &str, result: opp_core::Result<T>) -> Result<T, Failure> {
    result.map_err(|error| Failure::Document {
        origin: origin.to_string(),
        error,
    })
}

fn validate(
    ctx: &mut Ctx,
    catalog: &str,
    method: Option<&str>,
    observations: Option<&Path>,
) -> Result<(), Failure> {
    // parse_catalog rejects invalid catalogs; read them leniently so every
    // issue can be listed.
    let fw = if catalog == "builtin" {
        builtin_reference()
    } else {
        let bytes = read(Path::new(catalog))?;
        match parse_catalog(&bytes) {
            Ok(p) => {
                ctx.warn(catalog, &p.warnings);
                p.value
            }
            Err(opp_core::Error::Semantic(report)) => {
                ctx.report_issues(catalog, &report);
                let _ = writeln!(
                    ctx.err,
                    "{catalog}: invalid ({} error(s))",
                    report.errors().count()
                );
                return Err(Failure::Invalid);
            }
            Err(error) => {
                return Err(Failure::Document {
                    origin: catalog.to_string(),
                    error,
                })
            }
        }
    };
    let mut ok = true;
    let report = validate_framework(&fw);
    ctx.report_issues(catalog, &report);
    let _ = writeln!(
        ctx.out,
        "{catalog}: valid ({} objectives, {} principles, {} practices, {} indicators)",
        fw.objectives.len(),
        fw.principles.len(),
        fw.practices.len(),
        fw.indicators.len()
    );

    let method = match method {
        Some(source) => {
            let m = load_method(ctx, source)?;
            let report = engine(source, validate_method(&fw, &m))?;
            ok &= summarize(ctx, source, &report);
            Some(m)
        }
        None => None,
    };

    if let Some(path) = observations {
        let origin = path.display().to_string();
        let obs = load_observations(ctx, path)?;
        let report = engine(&origin, validate_observations(&fw, &obs, method.as_ref()))?;
        ok &= summarize(ctx, &origin, &report);
    }

    if ok {
        Ok(())
    } else {
        Err(Failure::Invalid)
    }
}

fn summarize(ctx: &mut Ctx, origin: &str, report: &ValidationReport) -> bool {
    ctx.report_issues(origin, report);
    let (errors, warnings) = (report.errors().count(), report.warnings().count());
    if report.valid {
        let _ = writeln!(ctx.out, "{origin}: valid ({warnings} warning(s))");
    } else {
        let _ = writeln!(
            ctx.err,
            "{origin}: invalid ({errors} error(s), {warnings} warning(s))"
        );
    }
    report.valid
}

fn adequacy(
    ctx: &mut Ctx,
    catalog: &str,
    method: &str,
    format: Format,
    fail_under: Option<f64>,
) -> Result<(), Failure> {
    let fw = load_catalog(ctx, catalog)?;
    let m = load_method(ctx, method)?;
    let report = engine(method, assess_adequacy(&fw, &m))?;
    match format {
        Format::Text => ctx.print(render::render_adequacy(&report, ctx.style).as_bytes())?,
        Format::Json => ctx.print(&emit_report(&report))?,
    }
    match fail_under {
        Some(t) if report.overall_score < t => Err(Failure::BelowThreshold(format!(
            "adequacy of `{}` is {:.2}, below --fail-under {t}",
            report.method, report.overall_score
        ))),
        _ => Ok(()),
    }
}

fn attainment(ctx: &mut Ctx, kind: AssessmentKind, args: AttainmentArgs) -> Result<(), Failure> {
    if args.adequacy.is_none() && !args.compute_adequacy {
        return Err(Failure::Usage(format!(
            "{kind} can only be assessed after adequacy: pass --adequacy <report> \
             (from `oppa adequacy --format json`) or --compute-adequacy"
        )));
    }
    let fw = load_catalog(ctx, &args.catalog)?;
    let m = load_method(ctx, &args.method)?;
    let obs = load_observations(ctx, &args.observations)?;
    let adequacy: AdequacyReport = match &args.adequacy {
        Some(path) => {
            let bytes = read(path)?;
            engine(&path.display().to_string(), parse_report(&bytes))?
        }
        None => engine(&args.method, assess_adequacy(&fw, &m))?,
    };
    let origin = args.observations.display().to_string();
    let report = engine(
        &origin,
        assess_attainment(kind, &fw, &m, &obs, Some(&adequacy)),
    )?;
    match args.format {
        Format::Text => ctx.print(render::render_attainment(&report, ctx.style).as_bytes()),
        Format::Json => ctx.print(&emit_report(&report)),
    }
}

fn compare(
    ctx: &mut Ctx,
    catalog: &str,
    sources: &[String],
    format: Format,
    fail_under: Option<f64>,
) -> Result<(), Failure> {
    let fw = load_catalog(ctx, catalog)?;
    let methods = sources
        .iter()
        .map(|s| load_method(ctx, s))
        .collect::<Result<Vec<_>, _>>()?;
    let table = engine("compare", compare_adequacy(&fw, &methods))?;
    match format {
        Format::Text => ctx.print(render::render_comparison(&table, ctx.style).as_bytes())?,
        Format::Json => ctx.print(&emit_report(&table))?,
    }
    let Some(t) = fail_under else { return Ok(()) };
    let below: Vec<_> = table
        .rows
        .iter()
        .filter(|r| r.overall_score < t)
        .map(|r| format!("{} ({:.2})", r.method, r.overall_score))
        .collect();
    if below.is_empty() {
        Ok(())
    } else {
        Err(Failure::BelowThreshold(format!(
            "below --fail-under {t}: {}",
            below.join(", ")
        )))
    }
}
