use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use skeinlab::data::LinkTable;
use skeinlab::diagram::{parse_pd, BraidWord, LinkDiagram};
use skeinlab::poly::{parse_fraction, LaurentFraction, Var};
use skeinlab::reproduce::{self, PAIRS};
use skeinlab::theta::SplitNormalization;
use skeinlab::{exec, Error, Result};

mod invariant;
mod output;
mod table;

use invariant::{compute, Invariant, Route};
use output::{exit_code, InvariantOutput, EXIT_FAIL, EXIT_MISSING};

#[derive(Parser)]
#[command(name = "skeinlab", version, about = "Exact link invariants: V, P, theta and Theta")]
struct Cli {
    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one invariant of one link and print it as JSON.
    Invariant(InvariantArgs),
    /// Rerun the reference computations and print PASS/FAIL per item.
    Reproduce {
        suite: Suite,
        /// Print per-item timings (makes the output run-dependent).
        #[arg(long)]
        timings: bool,
    },
    /// Batch computation over a table of links.
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Pairs,
    Thistlethwaite,
    Algebra,
    All,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false)]
struct Source {
    /// File holding a PD code, `X(a,b,c,d)` records.
    #[arg(long, group = "source")]
    pd: Option<PathBuf>,
    /// PD code given inline.
    #[arg(long, group = "source")]
    pd_text: Option<String>,
    /// Braid word such as "s1 s2^-1 s1" or "1 -2 1"; ties as "e1".
    #[arg(long, group = "source", allow_hyphen_values = true)]
    braid: Option<String>,
    /// Entry of the link table (`$SKEINLAB_DATA` or the bundled one).
    #[arg(long, group = "source")]
    name: Option<String>,
}

#[derive(Args)]
struct InvariantArgs {
    #[command(flatten)]
    source: Source,
    /// Strand count for --braid (defaults to one more than the largest index).
    #[arg(long)]
    strands: Option<usize>,
    #[arg(long, value_enum)]
    invariant: Invariant,
    #[arg(long, value_enum, default_value_t = Route::Partition)]
    route: Route,
    #[arg(long, default_value = "consistent")]
    split_normalization: SplitNormalization,
    /// Substitute E by this value, e.g. "1" or "1/3".
    #[arg(long)]
    e_value: Option<String>,
    /// Substitute λ = q⁴ (s = q²) in Θ.
    #[arg(long)]
    lambda_q4: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    /// A `.toml` link table or a text file of `name PD` lines; omit with --bundled.
    input: Option<PathBuf>,
    #[arg(long, conflicts_with = "input")]
    bundled: bool,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    output: TableFormat,
    /// Comma-separated list drawn from V, P, theta, Theta.
    #[arg(long, default_value = "V,theta", value_delimiter = ',')]
    invariants: Vec<Invariant>,
    #[arg(long, value_enum, default_value_t = Route::Partition)]
    route: Route,
    #[arg(long, default_value = "consistent")]
    split_normalization: SplitNormalization,
    /// Cache file of previously computed values; new values are appended.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Write here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

struct Input {
    label: String,
    diagram: Option<LinkDiagram>,
    braid: Option<BraidWord>,
}

fn load_input(src: &Source, strands: Option<usize>) -> Result<Input> {
    if let Some(path) = &src.pd {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::MissingData(format!("{}: {e}", path.display())))?;
        return Ok(Input {
            label: format!("pd:{}", path.display()),
            diagram: Some(parse_pd(&text)?),
            braid: None,
        });
    }
    if let Some(text) = &src.pd_text {
        return Ok(Input {
            label: format!("pd:{text}"),
            diagram: Some(parse_pd(text)?),
            braid: None,
        });
    }
    if let Some(word) = &src.braid {
        let w = BraidWord::parse(word, strands)?;
        let diagram = if w.has_ties() { None } else { Some(w.closure()?) };
        return Ok(Input {
            label: format!("braid:{w}"),
            diagram,
            braid: Some(w),
        });
    }
    let name = src.name.as_deref().expect("clap enforces one source");
    let table = LinkTable::load()?;
    let entry = table
        .get(name)
        .ok_or_else(|| Error::MissingData(format!("no entry {name:?} in {}", table.origin)))?;
    let braid = match &entry.braid {
        Some(b) => Some(BraidWord::parse(b, entry.strands)?),
        None => None,
    };
    Ok(Input {
        label: format!("name:{}", entry.label()),
        diagram: Some(entry.diagram()?),
        braid,
    })
}

fn run_invariant(a: &InvariantArgs) -> Result<()> {
    let input = load_input(&a.source, a.strands)?;
    let norm = a.split_normalization;
    let mut value = compute(
        input.diagram.as_ref(),
        input.braid.as_ref(),
        a.invariant,
        a.route,
        norm,
    )?;
    let mut subs = BTreeMap::new();
    if a.lambda_q4 {
        value = value.substitute(Var::S, &LaurentFraction::var(Var::Q, 2))?;
        subs.insert("s", "q^2".to_string());
    }
    if let Some(e) = &a.e_value {
        value = value.substitute(Var::E, &parse_fraction(e)?)?;
        subs.insert("E", e.clone());
    }
    // the split normalization only changes the skein route
    let normalization = match (a.invariant, a.route) {
        (Invariant::Theta | Invariant::BigTheta, Route::Skein) => norm.to_string(),
        (Invariant::Theta | Invariant::BigTheta, _) => SplitNormalization::Consistent.to_string(),
        _ => "none".to_string(),
    };
    let out = InvariantOutput::new(
        input.label,
        &a.invariant.to_string(),
        &a.route.to_string(),
        normalization,
        subs,
        &value,
    );
    match a.format {
        Format::Json => println!("{}", serde_json::to_string(&out).expect("serializable")),
        Format::Text => println!("{}", out.text),
    }
    Ok(())
}

/// Outcome of a suite: worst status seen.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Outcome {
    Pass,
    Missing,
    Fail,
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn suite_pairs(table: &LinkTable, timings: bool) -> Outcome {
    let mut worst = Outcome::Pass;
    for (i, (a, b, _)) in PAIRS.iter().enumerate() {
        match reproduce::pair(table, i) {
            Ok(r) => {
                println!("{} pair {}: theta({a}) - theta({b})", verdict(r.pass), i + 1);
                println!(
                    "  V equal: {}, P equal: {}, theta differs: {}",
                    yes(r.report.flags["V-equal"]),
                    yes(r.report.flags["P-equal"]),
                    yes(!r.report.flags["theta-equal"])
                );
                println!("  computed: {}", r.report.differences["theta"]);
                println!("  expected: {}", r.expected);
                if timings {
                    println!("  time: {:.3} s", r.elapsed.as_secs_f64());
                }
                if !r.pass {
                    worst = worst.max(Outcome::Fail);
                }
            }
            Err(e) => worst = worst.max(report_error(&format!("pair {}", i + 1), &e)),
        }
    }
    worst
}

fn report_error(item: &str, e: &Error) -> Outcome {
    if reproduce::missing(e) {
        println!("MISSING {item}: {e}");
        Outcome::Missing
    } else {
        println!("FAIL {item}: {e}");
        Outcome::Fail
    }
}

fn suite_thistlethwaite(table: &LinkTable) -> Outcome {
    match reproduce::thistlethwaite_report(table) {
        Ok(r) => {
            println!("{} thistlethwaite: V = -q - q^-1 = V(unlink2)", verdict(r.jones_matches));
            println!("  V = {}", r.jones);
            println!(
                "{} thistlethwaite: theta = (1 - E^-1)(q + q^-1) V(3_1) V(4_1) + V",
                verdict(r.closed_form_matches)
            );
            println!("  theta = {}", r.theta_partition);
            println!("  closed form = {}", r.closed_form);
            println!("{} thistlethwaite: skein route agrees", verdict(r.routes_agree));
            println!(
                "{} thistlethwaite: theta differs from theta(unlink2) = {}",
                verdict(r.differs_from_unlink),
                r.theta_unlink2
            );
            println!("{} thistlethwaite: theta at E = 1 is V", verdict(r.collapses_at_e1));
            if r.pass() {
                Outcome::Pass
            } else {
                Outcome::Fail
            }
        }
        Err(e) => report_error("thistlethwaite", &e),
    }
}

fn suite_algebra() -> Outcome {
    match reproduce::algebra() {
        Ok(r) => {
            for item in &r.items {
                println!("{} algebra: {}", verdict(item.pass), item.name);
                if !item.detail.is_empty() {
                    println!("  {}", item.detail);
                }
            }
            if r.pass() {
                Outcome::Pass
            } else {
                Outcome::Fail
            }
        }
        Err(e) => report_error("algebra", &e),
    }
}

fn run_reproduce(suite: Suite, timings: bool) -> Result<Outcome> {
    let table = LinkTable::load()?;
    let outcomes = match suite {
        Suite::Pairs => vec![suite_pairs(&table, timings)],
        Suite::Thistlethwaite => vec![suite_thistlethwaite(&table)],
        Suite::Algebra => vec![suite_algebra()],
        Suite::All => vec![
            suite_pairs(&table, timings),
            suite_thistlethwaite(&table),
            suite_algebra(),
        ],
    };
    Ok(outcomes.into_iter().max().unwrap_or(Outcome::Pass))
}

fn run_table(a: &TableArgs) -> std::io::Result<()> {
    let entries = match (&a.input, a.bundled) {
        (Some(p), _) => table::read_entries(p)?,
        (None, true) => LinkTable::bundled().entries,
        (None, false) => {
            return Err(std::io::Error::new(
                std::io::ErrorKind::InvalidInput,
                "give an input file or --bundled",
            ))
        }
    };
    let mut cache = table::Cache::load(a.cache.as_deref());
    let norm = a.split_normalization.to_string();
    let rows = table::run(&entries, &a.invariants, a.route, &norm, &mut cache);
    if let Some(p) = &a.cache {
        cache.save(p)?;
    }
    let mut sink: Box<dyn Write> = match &a.out {
        Some(p) => Box::new(std::fs::File::create(p)?),
        None => Box::new(std::io::stdout().lock()),
    };
    match a.output {
        TableFormat::Csv => table::write_csv(&rows, &a.invariants, &mut sink)
            .map_err(std::io::Error::other)?,
        TableFormat::Json => {
            serde_json::to_writer_pretty(&mut sink, &rows)?;
            writeln!(sink)?;
        }
    }
    sink.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.sequential {
        exec::set_sequential(true);
    }
    let code = match &cli.command {
        Command::Invariant(a) => match run_invariant(a) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
        },
        Command::Reproduce { suite, timings } => match run_reproduce(*suite, *timings) {
            Ok(Outcome::Pass) => 0,
            Ok(Outcome::Missing) => EXIT_MISSING,
            Ok(Outcome::Fail) => EXIT_FAIL,
            Err(e) => {
                eprintln!("error: {e}");
                exit_code(&e)
            }
        },
        Command::Table(a) => match run_table(a) {
            Ok(()) => 0,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_FAIL
            }
        },
    };
    ExitCode::from(code as u8)
}
