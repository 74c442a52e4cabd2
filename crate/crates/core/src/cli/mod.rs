//! Command-line front end.
//!
//! Exit codes: `0` when every requested check holds, `1` when some identity
//! or oracle check fails, `2` for input and usage errors.

pub mod parse;
pub mod report;

use std::io::Write;

use clap::{Parser, ValueEnum};

use crate::keller::{
    build_m, check_detm_resultant, check_main_assumptions, check_theorem_a, check_theorem_b,
    component_oracle_q, construct_associated, identities_m3, normalize_a1, CurveF, KellerError,
};
use crate::oracles::{implication_scan, keller_oracle_linear, Budget, DegreeBounds};
use report::{
    emit_report, AssociatedSection, AssumptionsSection, DetResSection, Format, IdentitySection,
    M3Section, MatrixSection, OracleBSection, QSection, Report, ScanSection,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Assumptions,
    Normalize,
    Matrix,
    Detres,
    CheckA,
    CheckB,
    Associate,
    OracleA,
    OracleB,
    M3,
    Scan,
    Report,
}

impl Command {
    fn name(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_string()
    }
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo = lo
        .trim()
        .parse()
        .map_err(|_| format!("bad number {lo:?}"))?;
    let hi = hi
        .trim()
        .parse()
        .map_err(|_| format!("bad number {hi:?}"))?;
    Ok((lo, hi))
}

fn parse_bounds(s: &str) -> Result<DegreeBounds, String> {
    let (degy, degx) = parse_pair(s)?;
    if degy < 0 || degx < 0 {
        return Err("bounds must be non-negative".into());
    }
    Ok(DegreeBounds {
        degy_g: degy as usize,
        degx_b: degx as usize,
    })
}

/// Exact checks of the automorphism and Keller identities for monic curves.
#[derive(Debug, Parser)]
#[command(name = "keller", version)]
pub struct Cli {
    /// What to run.
    #[arg(value_enum)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Curve as an expression in x and y, e.g. "y^2 + 2*x*y + x^2 + x".
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// File with an expression or {"m": .., "a": [[..], ..]}.
    #[arg(long)]
    pub file: Option<String>,
    /// y-degree for `scan`.
    #[arg(long)]
    pub m: Option<usize>,
    /// Coefficient range lo:hi for `scan`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_pair, default_value = "-1:1")]
    pub range: (i64, i64),
    /// Enumerate every curve in the range instead of sampling.
    #[arg(long)]
    pub exhaustive: bool,
    /// Seed for random sampling.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of random samples for a non-exhaustive `scan`.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    /// Search bounds degy:degx for `oracle-b` (default m:2m^2).
    #[arg(long, value_parser = parse_bounds)]
    pub bounds: Option<DegreeBounds>,
}

struct Usage(String);

fn load_curve(cli: &Cli) -> Result<(CurveF, Vec<String>), Usage> {
    let loaded = match (&cli.poly, &cli.file) {
        (Some(_), Some(_)) => return Err(Usage("give either --poly or --file, not both".into())),
        (Some(text), None) => parse::parse_curve(text),
        (None, Some(path)) => parse::read_curve_file(path),
        (None, None) => return Err(Usage("this command needs --poly or --file".into())),
    };
    loaded.map_err(|e| Usage(e.to_string()))
}

fn identity_sections(reports: &[crate::keller::IdentityReport]) -> Vec<IdentitySection> {
    reports.iter().map(IdentitySection::from).collect()
}

fn push_unique(warnings: &mut Vec<String>, more: Vec<String>) {
    for w in more {
        if !warnings.contains(&w) {
            warnings.push(w);
        }
    }
}

fn build_report(cli: &Cli) -> Result<Report, Usage> {
    let mut report = Report {
        command: cli.command.name(),
        ..Report::default()
    };
    if cli.command == Command::Scan {
        let m = cli.m.ok_or_else(|| Usage("scan needs --m".into()))?;
        let (budget, mode) = if cli.exhaustive {
            (Budget::Exhaustive, "exhaustive".to_string())
        } else {
            (
                Budget::Samples {
                    count: cli.samples,
                    seed: cli.seed,
                },
                format!("samples={} seed={}", cli.samples, cli.seed),
            )
        };
        let scan = implication_scan(m, cli.range, budget).map_err(|e| Usage(e.to_string()))?;
        report.verdict = scan.counterexamples.is_empty() && scan.closed_form_mismatches.is_empty();
        report.scan = Some(ScanSection::new(&scan, cli.range, mode));
        return Ok(report);
    }

    let (f, warnings) = load_curve(cli)?;
    report.input = Some(f.to_string());
    report.warnings = warnings;
    let m = f.m();
    let run_all = cli.command == Command::Report;
    let mut verdicts = Vec::new();

    if matches!(cli.command, Command::Assumptions | Command::Report) {
        let a = check_main_assumptions(&f);
        if cli.command == Command::Assumptions {
            verdicts.push(a.all_hold());
        }
        push_unique(&mut report.warnings, a.warnings());
        report.assumptions = Some(AssumptionsSection::from(&a));
    }
    if matches!(cli.command, Command::Normalize | Command::Report) {
        report.normalized = Some(normalize_a1(&f).to_string());
    }
    if matches!(cli.command, Command::Matrix | Command::Report) {
        report.matrix = Some(MatrixSection::new(&build_m(&f)));
    }
    if matches!(cli.command, Command::Detres | Command::Report) {
        match check_detm_resultant(&f) {
            Ok(c) => {
                if !run_all {
                    verdicts.push(c.holds);
                }
                report.detres = Some(DetResSection::checked(&c));
            }
            Err(KellerError::ZeroPartialX) => {
                if !run_all {
                    verdicts.push(false);
                }
                report
                    .warnings
                    .push("f_x = 0, det M vs resultant skipped".into());
                report.detres = Some(DetResSection::skipped());
            }
            Err(e) => return Err(Usage(e.to_string())),
        }
    }
    if matches!(cli.command, Command::CheckA | Command::Report) {
        let t = check_theorem_a(&f);
        verdicts.push(t.verdict);
        report.identities.extend(identity_sections(&t.identities));
        push_unique(&mut report.warnings, t.warnings);
    }
    if matches!(cli.command, Command::CheckB | Command::Report) {
        let t = check_theorem_b(&f);
        verdicts.push(t.verdict);
        report.identities.extend(identity_sections(&t.identities));
        push_unique(&mut report.warnings, t.warnings);
    }
    if matches!(cli.command, Command::OracleA | Command::Report) {
        match component_oracle_q(&f) {
            Ok(o) => {
                if !run_all {
                    verdicts.push(o.holds);
                }
                report.q = Some(QSection::from(&o));
            }
            Err(e) => {
                if !run_all {
                    verdicts.push(false);
                }
                report.warnings.push(e.to_string());
            }
        }
    }
    if matches!(cli.command, Command::Associate | Command::Report) {
        match construct_associated(&f) {
            Ok(g) => {
                if !run_all {
                    verdicts.push(true);
                }
                report.associated = Some(AssociatedSection::from(&g));
            }
            Err(e @ KellerError::NotKeller(_)) => {
                if !run_all {
                    verdicts.push(false);
                }
                report.warnings.push(e.to_string());
            }
            Err(e) => return Err(Usage(e.to_string())),
        }
    }
    if matches!(cli.command, Command::OracleB | Command::Report) {
        let bounds = cli.bounds.unwrap_or_else(|| DegreeBounds::for_degree(m));
        let g = keller_oracle_linear(&f, bounds);
        if !run_all {
            verdicts.push(g.is_some());
        }
        report.oracle_b = Some(OracleBSection::new(bounds, g.as_ref()));
    }
    if cli.command == Command::M3 || (run_all && m == 3) {
        if m != 3 {
            return Err(Usage(format!("m3 needs a cubic in y, got y-degree {m}")));
        }
        let g = normalize_a1(&f);
        if g != f {
            report
                .warnings
                .push(format!("a_1 cleared by y -> y - a_1/3: {g}"));
        }
        let r = identities_m3(&g.a(2), &g.a(3)).map_err(|e| Usage(e.to_string()))?;
        if !run_all {
            verdicts.push(r.a3_holds && r.b3_holds);
        }
        report.m3 = Some(M3Section::new(&g.a(2), &g.a(3), &r));
    }
    report.verdict = verdicts.iter().all(|&v| v);
    Ok(report)
}

/// Runs the CLI on `args` (including the program name), writing the report
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match build_report(&cli) {
        Ok(report) => {
            let format = if cli.json { Format::Json } else { Format::Text };
            let _ = out.write_all(emit_report(&report, format).as_bytes());
            if report.verdict {
                EXIT_OK
            } else {
                EXIT_FAIL
            }
        }
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
