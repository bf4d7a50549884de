use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use cambrian::coxeter::{GroupElement, Reflection};
use cambrian::forms::CoxeterElement;
use cambrian::groupfile::group_from_json;
use cambrian::render::{Projection, RenderSpec};
use cambrian::verify::{Suite, VerifyConfig};
use cambrian::{Error, QuadraticGroup, QuadraticNumber};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Sortable elements, Cambrian lattices and Cambrian fans of Coxeter groups.
#[derive(Parser)]
#[command(name = "cambrian", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the c-sortable elements up to a length, with cov, ufs and nc.
    Sortables {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the maximal c-sortable element below a word.
    Pidown {
        #[command(flatten)]
        group: GroupArgs,
        /// The word, as "q,p" or "qp"; empty for the identity.
        word: String,
    },
    /// Run property suites; exits 1 if any check fails.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Extra chamber layers for the fan check in infinite groups.
        #[arg(long, default_value_t = 2)]
        margin: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Draw the Cambrian fan of a rank-three group as SVG.
    Render {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "affine-slice")]
        projection: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        /// Shade sortable chambers ("sortable") or nothing ("none").
        #[arg(long, default_value = "sortable")]
        highlight: String,
        #[arg(long, default_value_t = 800)]
        size: u32,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GroupArgs {
    /// Group definition in JSON.
    #[arg(long)]
    group: PathBuf,
    /// Coxeter element, as "p,q,r" or "pqr"; generator order if omitted.
    #[arg(long)]
    c: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Usage(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Writes a line to standard output. A closed pipe (as with `| head`) is
/// not an error worth reporting.
macro_rules! say {
    ($($arg:tt)*) => {
        { let _ = writeln!(std::io::stdout(), $($arg)*); }
    };
}

type Group = QuadraticGroup;
type Element = GroupElement<QuadraticNumber>;

fn load(args: &GroupArgs) -> Result<(Group, CoxeterElement), Failure> {
    let text = fs::read_to_string(&args.group)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", args.group.display())))?;
    let g = group_from_json(&text)?;
    let c = match &args.c {
        Some(text) => CoxeterElement::parse(&g, text)?,
        None => CoxeterElement::new(&g, (0..g.rank()).collect())?,
    };
    Ok((g, c))
}

fn single_letter_names(g: &Group) -> bool {
    g.names().iter().all(|n| n.chars().count() == 1)
}

fn show_word(g: &Group, word: &[usize]) -> String {
    if single_letter_names(g) {
        g.compact_word(word)
    } else {
        g.format_word(word)
    }
}

fn show_element(g: &Group, w: &Element) -> String {
    if w.is_identity() {
        "e".into()
    } else {
        show_word(g, w.word())
    }
}

fn show_reflections(g: &Group, ts: &[Reflection<QuadraticNumber>]) -> Vec<String> {
    let mut names: Vec<String> = ts
        .iter()
        .map(|t| show_word(g, g.reflection_element(t).word()))
        .collect();
    names.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    names
}

fn parse_word(g: &Group, text: &str) -> Result<Vec<usize>, Error> {
    if text.contains(',') || !single_letter_names(g) {
        g.parse_word(text)
    } else {
        g.parse_compact(text.trim())
    }
}

fn sortables(args: &GroupArgs, max_len: usize, format: Format) -> Result<(), Failure> {
    let (g, c) = load(args)?;
    let mut rows = Vec::new();
    for v in g.enumerate_sortables(&c, max_len) {
        let cov = show_reflections(&g, &g.cover_reflections(&v));
        let ufs = show_reflections(&g, &g.unforced_skips(&c, &v)?);
        let nc = show_element(&g, &g.nc(&c, &v)?);
        rows.push((show_element(&g, &v), v.length(), cov, ufs, nc));
    }
    match format {
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(w, len, cov, ufs, nc)| json!({"word": w, "length": len, "cov": cov, "ufs": ufs, "nc": nc}))
                .collect();
            say!(
                "{}",
                serde_json::to_string_pretty(&items).expect("plain JSON values")
            );
        }
        Format::Text => {
            let join = |xs: &[String]| {
                if xs.is_empty() {
                    "-".to_string()
                } else {
                    xs.join(" ")
                }
            };
            let table: Vec<[String; 5]> = rows
                .iter()
                .map(|(w, len, cov, ufs, nc)| {
                    [w.clone(), len.to_string(), join(cov), join(ufs), nc.clone()]
                })
                .collect();
            let header = ["word", "length", "cov", "ufs", "nc"].map(String::from);
            let widths: Vec<usize> = (0..5)
                .map(|i| {
                    table
                        .iter()
                        .chain([&header])
                        .map(|r| r[i].chars().count())
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            for row in [&header].into_iter().chain(&table) {
                let cells: Vec<String> = row
                    .iter()
                    .zip(&widths)
                    .map(|(cell, w)| format!("{cell:<w$}"))
                    .collect();
                say!("{}", cells.join("  ").trim_end());
            }
        }
    }
    Ok(())
}

fn pidown(args: &GroupArgs, word: &str) -> Result<(), Failure> {
    let (g, c) = load(args)?;
    let w = g.from_word(&parse_word(&g, word)?);
    let v = g.pidown(&c, &w);
    say!(
        "{}",
        if v.is_identity() {
            String::new()
        } else {
            show_word(&g, v.word())
        }
    );
    Ok(())
}

fn verify(
    args: &GroupArgs,
    suite: &str,
    max_len: usize,
    margin: usize,
    format: Format,
) -> Result<(), Failure> {
    let suite: Suite = suite.parse()?;
    let (g, c) = load(args)?;
    let config = VerifyConfig {
        max_length: max_len,
        fan_margin: margin,
        ..VerifyConfig::default()
    };
    let report = g.verify(&c, suite, config);
    match format {
        Format::Json => say!(
            "{}",
            serde_json::to_string_pretty(&report).expect("plain JSON values")
        ),
        Format::Text => {
            for check in &report.checks {
                let status = if check.violation_count == 0 {
                    "pass"
                } else {
                    "FAIL"
                };
                say!(
                    "{status} {} ({} cases, {} violations)",
                    check.name,
                    check.cases,
                    check.violation_count
                );
                for v in &check.violations {
                    say!("     {v}");
                }
            }
        }
    }
    if report.passed {
        Ok(())
    } else {
        let failed: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| c.violation_count > 0)
            .map(|c| c.name.as_str())
            .collect();
        Err(Failure::Violation(format!(
            "failed checks: {}",
            failed.join(", ")
        )))
    }
}

fn render(
    args: &GroupArgs,
    projection: &str,
    max_len: usize,
    highlight: &str,
    size: u32,
    out: Option<&PathBuf>,
) -> Result<(), Failure> {
    let projection: Projection = projection.parse()?;
    let highlight_sortable = match highlight {
        "sortable" => true,
        "none" => false,
        other => return Err(Failure::Usage(format!("unknown highlight {other:?}"))),
    };
    let (g, c) = load(args)?;
    let spec = RenderSpec {
        projection,
        length_cap: max_len,
        highlight_sortable,
        size,
    };
    let svg = g.render_svg(&c, &spec)?;
    match out {
        Some(path) => fs::write(path, svg)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let _ = std::io::stdout().write_all(svg.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Sortables {
            group,
            max_len,
            format,
        } => sortables(group, *max_len, *format),
        Command::Pidown { group, word } => pidown(group, word),
        Command::Verify {
            group,
            suite,
            max_len,
            margin,
            format,
        } => verify(group, suite, *max_len, *margin, *format),
        Command::Render {
            group,
            projection,
            max_len,
            highlight,
            size,
            out,
        } => render(group, projection, *max_len, highlight, *size, out.as_ref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
