//! `homoglab` — batch CLI over the graph-homogeneity toolkit.
//!
//! Subcommands: gen, spectrum, classify, orbits, homogenize, iso, grid.
//! Machine output is deterministic JSON with a {tool_version, input_hash}
//! header; exit codes: 0 ok, 2 unknown/not-applicable verdict, 3 budget
//! exhausted, 64 usage error, 65 parse error. See FORMATS.md.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use homoglab::budget::Budget;
use homoglab::classifier::{self, ClassVerdict};
use homoglab::error::Error;
use homoglab::families::{self, CatalogEntry, FamilySpec};
use homoglab::graph::Graph;
use homoglab::graph6::{from_graph6, to_graph6};
use homoglab::homogeneity::{spectrum_with_budget, KVerdict};
use homoglab::homogenize::{binary_expansion, unary_expansion, verify_expansion, ExpansionKind};
use homoglab::symmetry::{are_isomorphic, automorphism_group, orbits_on_ktuples, ColoredStructure};

const EXIT_UNKNOWN: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_USAGE: u8 = 64;
const EXIT_PARSE: u8 = 65;

#[derive(Parser)]
#[command(name = "homoglab", version, about = "Graph homogeneity toolkit", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Search-node budget per phase (overrides HOMOGLAB_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Worker threads for grid cells.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family member and print its graph6 line.
    Gen(GenArgs),
    /// Per-k homogeneity verdicts for a graph.
    Spectrum {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Recognize the graph against the classification families.
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Orbits of injective k-tuples under the automorphism group.
    Orbits {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
        /// Also dump group generators in cycle notation.
        #[arg(long)]
        gens: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Construct and verify the homogenizing expansion.
    Homogenize {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Isomorphism test with a mapping witness. Each argument is a file
    /// path, `-` for stdin, or an inline graph6 line.
    Iso { a: String, b: String },
    /// Classify every generated family member over a parameter grid.
    Grid {
        #[arg(long, default_value_t = 3)]
        tmax: usize,
        #[arg(long, default_value_t = 4)]
        mmax: usize,
        /// Catalog parts for the case II cells, comma separated.
        #[arg(long, default_value = "K1,K2,K3,C5", value_delimiter = ',')]
        h: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Args)]
struct GenArgs {
    /// Family case: catalog, g-union-h, ht1, ht2, h12.
    #[arg(long = "case")]
    case: String,
    /// Column height t.
    #[arg(long)]
    t: Option<usize>,
    /// Truncation width m.
    #[arg(long)]
    m: Option<usize>,
    /// Catalog entry (e.g. K3, 2K2, C5, rook3x3, co-C5).
    #[arg(long)]
    h: Option<String>,
    /// Complement the generated graph.
    #[arg(long)]
    complement: bool,
    /// Also print a JSON sidecar echoing the spec.
    #[arg(long)]
    sidecar: bool,
    #[arg(long, value_enum, default_value_t = GenFormat::G6)]
    format: GenFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenFormat {
    G6,
    Dot,
}

#[derive(Args)]
struct InputArgs {
    /// Input file with one graph6 line; `-` reads stdin.
    path: Option<String>,
    /// Inline graph6 line.
    #[arg(long, conflicts_with = "path")]
    g6: Option<String>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } => EXIT_PARSE,
            Error::Budget { .. } => EXIT_BUDGET,
            Error::NotApplicable(_) => EXIT_UNKNOWN,
            Error::InputDomain(_) => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("io error: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not usage errors
            use clap::error::ErrorKind;
            let benign = matches!(
                e.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if benign {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_USAGE)
            };
        }
    };
    if cli.jobs == 0 {
        eprintln!("error: --jobs must be positive");
        return ExitCode::from(EXIT_USAGE);
    }
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs)
        .build_global();

    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn budget_limit(cli: &Cli) -> u64 {
    cli.budget
        .unwrap_or_else(|| Budget::standard("cli").limit())
}

fn make_budget(cli: &Cli, context: &'static str) -> Budget {
    Budget::new(budget_limit(cli), context)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Spectrum { input, format } => cmd_spectrum(cli, input, *format),
        Command::Classify { input, format } => cmd_classify(cli, input, *format),
        Command::Orbits {
            input,
            k,
            gens,
            format,
        } => cmd_orbits(cli, input, *k, *gens, *format),
        Command::Homogenize { input, format } => cmd_homogenize(cli, input, *format),
        Command::Iso { a, b } => cmd_iso(cli, a, b),
        Command::Grid {
            tmax,
            mmax,
            h,
            format,
        } => cmd_grid(cli, *tmax, *mmax, h, *format),
    }
}

// ---- input plumbing -------------------------------------------------------

fn read_source(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn first_line(text: &str) -> Result<&str, Failure> {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| Failure {
            code: EXIT_PARSE,
            message: "input holds no graph6 line".into(),
        })
}

fn read_input(input: &InputArgs) -> Result<(Graph, String), Failure> {
    let line: String = match (&input.path, &input.g6) {
        (Some(path), None) => first_line(&read_source(path)?)?.to_string(),
        (None, Some(inline)) => inline.trim().to_string(),
        _ => return Err(Failure::usage("provide exactly one input: a path or --g6")),
    };
    let graph = from_graph6(&line)?;
    Ok((graph, line))
}

/// For `iso`: path, stdin, or inline literal, in that order of attempts.
fn read_flexible(arg: &str) -> Result<(Graph, String), Failure> {
    if arg == "-" || std::path::Path::new(arg).exists() {
        let line = first_line(&read_source(arg)?)?.to_string();
        return Ok((from_graph6(&line)?, line));
    }
    let line = arg.trim().to_string();
    Ok((from_graph6(&line)?, line))
}

fn input_hash(line: &str) -> String {
    let digest = Sha256::digest(line.as_bytes());
    format!("sha256:{}", hex::encode(digest))
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    tool_version: &'static str,
    input_hash: String,
    report: T,
}

fn emit<T: Serialize>(line: &str, report: T) -> Result<(), Failure> {
    let envelope = Envelope {
        tool_version: env!("CARGO_PKG_VERSION"),
        input_hash: input_hash(line),
        report,
    };
    println!(
        "{}",
        serde_json::to_string(&envelope).expect("report serializes")
    );
    Ok(())
}

// ---- gen ------------------------------------------------------------------

#[derive(Serialize)]
struct GenSidecar {
    spec: FamilySpec,
    n: usize,
    edges: usize,
    /// Set when t = 1 turns the bridged family into the matched-cliques
    /// family.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    h12_alias: bool,
}

fn cmd_gen(args: &GenArgs) -> Result<u8, Failure> {
    let entry = |text: &Option<String>| -> Result<CatalogEntry, Failure> {
        text.as_deref()
            .ok_or_else(|| Failure::usage("this case requires --h"))?
            .parse()
            .map_err(Failure::from)
    };
    let need = |v: Option<usize>, name: &str| -> Result<usize, Failure> {
        v.ok_or_else(|| Failure::usage(format!("this case requires --{name}")))
    };
    let positive = |v: usize, name: &str| -> Result<usize, Failure> {
        if v == 0 {
            Err(Failure::usage(format!("--{name} must be positive")))
        } else {
            Ok(v)
        }
    };

    let spec = match args.case.as_str() {
        "catalog" => {
            let mut s = FamilySpec::catalog(entry(&args.h)?);
            s.complemented = args.complement;
            s
        }
        "g-union-h" => FamilySpec::case_ii(
            positive(need(args.t, "t")?, "t")?,
            positive(need(args.m, "m")?, "m")?,
            entry(&args.h)?,
            args.complement,
        ),
        "ht1" => FamilySpec::ht1(
            positive(need(args.t, "t")?, "t")?,
            positive(need(args.m, "m")?, "m")?,
            args.complement,
        ),
        "ht2" => FamilySpec::ht2(
            positive(need(args.t, "t")?, "t")?,
            positive(need(args.m, "m")?, "m")?,
            args.complement,
        ),
        "h12" => FamilySpec::h12(positive(need(args.m, "m")?, "m")?, args.complement),
        other => {
            return Err(Failure::usage(format!(
                "unknown case {other:?}; expected catalog, g-union-h, ht1, ht2, or h12"
            )))
        }
    };
    let graph = families::generate(&spec)?;
    let line = to_graph6(&graph);
    match args.format {
        GenFormat::G6 => println!("{line}"),
        GenFormat::Dot => print!("{}", graph.to_dot(None)),
    }
    if args.sidecar {
        let sidecar = GenSidecar {
            n: graph.n(),
            edges: graph.edge_count(),
            h12_alias: spec.case == families::FamilyCase::CaseIIIHt2 && spec.t == Some(1),
            spec,
        };
        emit(&line, sidecar)?;
    }
    Ok(0)
}

// ---- spectrum ---------------------------------------------------------------

fn cmd_spectrum(cli: &Cli, input: &InputArgs, format: Format) -> Result<u8, Failure> {
    let (graph, line) = read_input(input)?;
    let spec = spectrum_with_budget(&ColoredStructure::plain(graph), budget_limit(cli));
    let report = spec.report();
    let budget_starved = spec
        .verdicts()
        .iter()
        .any(|v| matches!(v, KVerdict::Unknown(_)));
    match format {
        Format::Json => emit(&line, &report)?,
        Format::Text => {
            println!("n = {}", report.n);
            for (i, v) in report.verdicts.iter().enumerate() {
                println!("k={:>2}  {v}", i + 1);
            }
            println!("geq_threshold = {:?}", spec.geq_threshold());
        }
    }
    Ok(if budget_starved { EXIT_BUDGET } else { 0 })
}

// ---- classify ---------------------------------------------------------------

fn cmd_classify(cli: &Cli, input: &InputArgs, format: Format) -> Result<u8, Failure> {
    let (graph, line) = read_input(input)?;
    let budget = make_budget(cli, "classify");
    let classification = classifier::classify(&graph, &budget)?;
    let unknown = classification.is_unknown();
    match format {
        Format::Json => emit(&line, &classification)?,
        Format::Text => match &classification.verdict {
            ClassVerdict::Homogeneous { catalog } => match catalog {
                Some(c) => println!("homogeneous ({c})"),
                None => println!("homogeneous (no catalog match)"),
            },
            ClassVerdict::CaseII { spec } => println!(
                "case II: t={} m={} h={} complemented={}",
                spec.t.unwrap_or(0),
                spec.m.unwrap_or(0),
                spec.h.map(|h| h.to_string()).unwrap_or_default(),
                spec.complemented
            ),
            ClassVerdict::CaseIII { spec } => println!(
                "case III ({:?}): t={:?} m={:?} complemented={}",
                spec.case, spec.t, spec.m, spec.complemented
            ),
            ClassVerdict::Unknown => println!("unknown"),
        },
    }
    Ok(if unknown { EXIT_UNKNOWN } else { 0 })
}

// ---- orbits -----------------------------------------------------------------

#[derive(Serialize)]
struct OrbitsReport {
    k: usize,
    group_order: String,
    orbit_count: usize,
    orbits: Vec<OrbitLine>,
    #[serde(skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<String>>,
}

#[derive(Serialize)]
struct OrbitLine {
    representative: Vec<usize>,
    size: u64,
}

fn cmd_orbits(
    cli: &Cli,
    input: &InputArgs,
    k: usize,
    gens: bool,
    format: Format,
) -> Result<u8, Failure> {
    let (graph, line) = read_input(input)?;
    let budget = make_budget(cli, "orbits");
    let group = automorphism_group(&ColoredStructure::plain(graph), &budget)?;
    let orbits = orbits_on_ktuples(&group, k, &budget)?;
    let report = OrbitsReport {
        k,
        group_order: group.order().to_string(),
        orbit_count: orbits.len(),
        orbits: orbits
            .iter()
            .map(|o| OrbitLine {
                representative: o.representative.clone(),
                size: o.size,
            })
            .collect(),
        generators: gens.then(|| {
            group
                .generators()
                .iter()
                .map(|p| p.cycle_string())
                .collect()
        }),
    };
    match format {
        Format::Json => emit(&line, &report)?,
        Format::Text => {
            println!("|Aut| = {}", report.group_order);
            for o in &report.orbits {
                println!("rep {:?} size {}", o.representative, o.size);
            }
            if let Some(generators) = &report.generators {
                for g in generators {
                    println!("gen {g}");
                }
            }
        }
    }
    Ok(0)
}

// ---- homogenize -------------------------------------------------------------

#[derive(Serialize)]
struct HomogenizeReport {
    base_g6: String,
    kind: ExpansionKind,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    colored_vertices: Vec<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    related_pairs: Vec<(usize, usize)>,
    promoted_orbits: Vec<(usize, usize)>,
    verification: homoglab::homogenize::VerificationReport,
}

fn cmd_homogenize(cli: &Cli, input: &InputArgs, format: Format) -> Result<u8, Failure> {
    let (graph, line) = read_input(input)?;
    let budget = make_budget(cli, "homogenize");
    let engine = homoglab::homogeneity::HomogeneityEngine::new(
        ColoredStructure::plain(graph.clone()),
        &budget,
    )?;
    let n = graph.n();
    let one = n < 1 || engine.check_k(1, &budget)?.is_none();
    let expansion = if !one {
        unary_expansion(&graph, &budget)?
    } else {
        match binary_expansion(&graph, &budget)? {
            Some(e) => e,
            None => {
                return Err(Failure {
                    code: EXIT_UNKNOWN,
                    message: "no orbit union yields a homogeneous expansion".into(),
                })
            }
        }
    };
    let (verification, _) = verify_expansion(&expansion, &budget)?;
    let passed = verification.passed(expansion.kind);
    let report = HomogenizeReport {
        base_g6: to_graph6(&expansion.base),
        kind: expansion.kind,
        colored_vertices: expansion.colored_vertices.clone(),
        related_pairs: expansion.related_pairs.clone(),
        promoted_orbits: expansion.promoted_orbits.clone(),
        verification,
    };
    match format {
        Format::Json => {
            println!("{}", report.base_g6);
            emit(&line, &report)?;
        }
        Format::Text => {
            println!("{}", report.base_g6);
            println!("kind = {:?}", report.kind);
            if !report.colored_vertices.is_empty() {
                println!("colored vertices: {:?}", report.colored_vertices);
            }
            if !report.related_pairs.is_empty() {
                println!("related pairs: {:?}", report.related_pairs);
            }
            println!("verified = {passed}");
        }
    }
    Ok(if passed { 0 } else { EXIT_UNKNOWN })
}

// ---- iso --------------------------------------------------------------------

#[derive(Serialize)]
struct IsoReport {
    isomorphic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    mapping: Option<Vec<usize>>,
}

fn cmd_iso(cli: &Cli, a: &str, b: &str) -> Result<u8, Failure> {
    let (ga, la) = read_flexible(a)?;
    let (gb, lb) = read_flexible(b)?;
    let budget = make_budget(cli, "iso");
    let mapping = are_isomorphic(&ga, &gb, &budget)?;
    let report = IsoReport {
        isomorphic: mapping.is_some(),
        mapping: mapping.map(|p| p.images().to_vec()),
    };
    emit(&format!("{la}\n{lb}"), &report)?;
    Ok(0)
}

// ---- grid -------------------------------------------------------------------

fn cmd_grid(
    cli: &Cli,
    tmax: usize,
    mmax: usize,
    h: &[String],
    format: Format,
) -> Result<u8, Failure> {
    if tmax == 0 || mmax == 0 {
        return Err(Failure::usage("--tmax and --mmax must be positive"));
    }
    let catalog: Vec<CatalogEntry> = h
        .iter()
        .map(|s| s.parse().map_err(Failure::from))
        .collect::<Result<_, _>>()?;
    let report = classifier::roundtrip_grid(tmax, mmax, &catalog, budget_limit(cli));
    let clean = report.mismatches == 0;
    match format {
        Format::Json => emit(&format!("grid t<={tmax} m<={mmax}"), &report)?,
        Format::Text => {
            println!(
                "cells={} recovered={} collapses={} mismatches={}",
                report.cells.len(),
                report.recovered,
                report.collapses,
                report.mismatches
            );
        }
    }
    Ok(if clean { 0 } else { EXIT_UNKNOWN })
}
