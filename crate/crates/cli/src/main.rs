//! Command-line interface: enumeration, validation, reconstruction, flips,
//! exchange computations, tropical verification, counterexample search and
//! graph export for triangulations of even-dimensional cyclic polytopes.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cyclotope::cluster::{exchange_angles, ClusterObject, ClusterParams};
use cyclotope::combinatorics::{DSimplex, Params};
use cyclotope::complex::{
    build_complex, euler_characteristic, f_vector, find_nonextendable, is_clique_complex,
};
use cyclotope::mutation::{build_flip_graph, flip, FlipOutcome};
use cyclotope::reptheory::{
    exchange_layers, tilting_exchange, AlgebraParams, ExchangeSequence, ModuleIndex,
};
use cyclotope::triangulation::{
    enumerate_triangulations, reconstruct, validate, FaceSet, Triangulation,
};
use cyclotope::tropical::{run_campaign, tropical_exchange_check, CampaignConfig, Lamination};
use cyclotope::{Error, Label};

#[derive(Parser)]
#[command(
    name = "cyclotope",
    version,
    about = "Triangulations of even-dimensional cyclic polytopes and their tilting calculus",
    max_term_width = 100
)]
struct Cli {
    /// Node budget for backtracking searches
    #[arg(long, global = true, env = "CYCLOTOPE_BUDGET", default_value_t = cyclotope::DEFAULT_BUDGET)]
    budget: u64,

    /// Worker threads (default: hardware parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Write output here instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExchangeKind {
    Module,
    Cluster,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all triangulations of C(m, 2d) as JSON lines
    Enumerate {
        #[arg(long)]
        m: Label,
        #[arg(long)]
        d: usize,
    },
    /// Check that a triangulation file satisfies all structural invariants
    Validate {
        #[arg(long)]
        input: PathBuf,
    },
    /// Rebuild the unique triangulation with the given internal d-faces
    Reconstruct {
        #[arg(long)]
        input: PathBuf,
    },
    /// Exchange one internal d-face of an e-set for its unique partner
    Flip {
        /// Face-set JSON file
        #[arg(long)]
        input: PathBuf,
        /// Tuple to flip, comma-separated 1-based labels, e.g. 1,3
        #[arg(long)]
        at: String,
    },
    /// Build the graph of all triangulations under bistellar flips
    FlipGraph {
        #[arg(long)]
        m: Label,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compute the exchange sequence (module) or exchange angles (cluster)
    Exchange {
        #[arg(long, value_enum)]
        kind: ExchangeKind,
        #[arg(long)]
        n: Label,
        #[arg(long)]
        d: usize,
        /// Source tuple, e.g. 1,3,5
        #[arg(long)]
        source: String,
        /// Target tuple, e.g. 2,4,6
        #[arg(long)]
        target: String,
        /// Face-set JSON file with the ambient tilting set (module kind)
        #[arg(long)]
        context: Option<PathBuf>,
    },
    /// Check the tropical exchange relation on a lamination or a campaign
    Tropical {
        #[arg(long)]
        m: Label,
        #[arg(long)]
        d: usize,
        /// Source tuple of the exchanged pair
        #[arg(long, requires = "target", requires = "input")]
        source: Option<String>,
        /// Target tuple of the exchanged pair
        #[arg(long)]
        target: Option<String>,
        /// Lamination JSON file
        #[arg(long)]
        input: Option<PathBuf>,
        /// Run this many random seeded cases instead
        #[arg(long, conflicts_with = "source")]
        random: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest lamination size drawn in random mode
        #[arg(long, default_value_t = 4)]
        max_leaves: usize,
    },
    /// List maximal non-crossing sets that are smaller than the facets
    SearchNonextendable {
        #[arg(long)]
        n: Label,
        #[arg(long)]
        d: usize,
    },
    /// f-vector, Euler characteristic and clique-complex verdict
    ComplexStats {
        #[arg(long)]
        n: Label,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the full invariant battery at (m, d)
    Verify {
        #[arg(long)]
        m: Label,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(serde::Serialize)]
struct FlipReport<'a> {
    outcome: &'static str,
    out: Vec<Label>,
    #[serde(rename = "in", skip_serializing_if = "Option::is_none")]
    inserted: Option<Vec<Label>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    faceset: Option<&'a FaceSet>,
}

#[derive(serde::Serialize)]
struct CampaignSummary<'a> {
    cases: u64,
    holds: u64,
    rhs_equal: u64,
    signed_sums_ok: u64,
    summary: String,
    failures: &'a [String],
}

#[derive(serde::Serialize)]
struct ComplexStats {
    vertices: usize,
    facets: usize,
    f_vector: Vec<u64>,
    euler_characteristic: i64,
    reduced_euler_characteristic: i64,
    clique_complex: bool,
}

#[derive(serde::Serialize)]
struct CheckLine<'a> {
    check: &'a str,
    status: &'static str,
    detail: &'a str,
}

#[derive(serde::Serialize)]
struct NonextendableReport {
    nonextendable: Vec<Vec<Vec<Label>>>,
}

enum CliError {
    /// Bad arguments or unreadable/unparsable input: exit 2.
    Usage(String),
    /// A verification failed: exit 1, diagnostic already printed.
    Failure(String),
    /// The search budget was exhausted: exit 3.
    Budget(u64),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::LimitExceeded { budget } => CliError::Budget(budget),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        // ignore failure: the global pool may already exist in tests
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failure(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(budget)) => {
            eprintln!("error: search budget of {budget} nodes exhausted");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Enumerate { m, d } => {
            let p = Params::new(*m, *d)?;
            let triangulations = enumerate_triangulations(&p, cli.budget)?;
            let mut out = String::new();
            for t in &triangulations {
                out.push_str(&to_json(t)?);
                out.push('\n');
            }
            emit(cli, &out)
        }
        Command::Validate { input } => {
            let t: Triangulation = read_json(input)?;
            if validate(&t) {
                emit(cli, "{\"status\":\"ok\"}\n")
            } else {
                emit(cli, "{\"status\":\"invalid\"}\n")?;
                Err(CliError::Failure(format!(
                    "{} is not a triangulation of C({}, {})",
                    input.display(),
                    t.params().m(),
                    2 * t.params().d()
                )))
            }
        }
        Command::Reconstruct { input } => {
            let x: FaceSet = read_json(input)?;
            let t = reconstruct(&x).map_err(|e| CliError::Failure(e.to_string()))?;
            emit(cli, &(to_json(&t)? + "\n"))
        }
        Command::Flip { input, at } => {
            let x: FaceSet = read_json(input)?;
            let tuple = parse_tuple(at)?;
            match flip(&x, &tuple)? {
                FlipOutcome::Flipped { set, inserted } => {
                    let report = FlipReport {
                        outcome: "flipped",
                        out: tuple.entries().to_vec(),
                        inserted: Some(inserted.entries().to_vec()),
                        faceset: Some(&set),
                    };
                    emit(cli, &(to_json(&report)? + "\n"))
                }
                FlipOutcome::NoFlip => {
                    let report = FlipReport {
                        outcome: "noflip",
                        out: tuple.entries().to_vec(),
                        inserted: None,
                        faceset: None,
                    };
                    emit(cli, &(to_json(&report)? + "\n"))
                }
            }
        }
        Command::FlipGraph { m, d, format } => {
            let p = Params::new(*m, *d)?;
            let graph = build_flip_graph(&p, cli.budget)?;
            match format {
                Format::Dot => emit(cli, &graph.to_dot()),
                _ => emit(cli, &(to_json(&graph)? + "\n")),
            }
        }
        Command::Exchange {
            kind,
            n,
            d,
            source,
            target,
            context,
        } => {
            let source = parse_tuple(source)?;
            let target = parse_tuple(target)?;
            match kind {
                ExchangeKind::Module => {
                    let params = AlgebraParams::new(*n, *d)?;
                    let i = ModuleIndex::new(params, source)?;
                    let j = ModuleIndex::new(params, target)?;
                    let sequence = match context {
                        Some(path) => {
                            let t: FaceSet = read_json(path)?;
                            tilting_exchange(&i, &j, &t)
                                .map_err(|e| CliError::Failure(e.to_string()))?
                        }
                        None => ExchangeSequence {
                            layers: exchange_layers(&i, &j)?,
                            source: i,
                            target: j,
                        },
                    };
                    emit(cli, &(to_json(&sequence)? + "\n"))
                }
                ExchangeKind::Cluster => {
                    let params = ClusterParams::new(*n, *d)?;
                    let a = ClusterObject::new(params, source)?;
                    let b = ClusterObject::new(params, target)?;
                    let angles = exchange_angles(&a, &b)?;
                    emit(cli, &(to_json(&angles.to_json())? + "\n"))
                }
            }
        }
        Command::Tropical {
            m,
            d,
            source,
            target,
            input,
            random,
            seed,
            max_leaves,
        } => {
            if let Some(cases) = random {
                let config = CampaignConfig {
                    m: *m,
                    d: *d,
                    cases: *cases,
                    seed: *seed,
                    max_leaves: *max_leaves,
                };
                let report = run_campaign(&config)?;
                let summary = format!(
                    "{}/{} hold; rhs_m==rhs_n in {} cases{}",
                    report.holds,
                    report.cases,
                    report.rhs_equal,
                    if d % 2 == 0 { " (d even)" } else { "" }
                );
                let value = CampaignSummary {
                    cases: report.cases,
                    holds: report.holds,
                    rhs_equal: report.rhs_equal,
                    signed_sums_ok: report.signed_sums_ok,
                    summary: summary.clone(),
                    failures: &report.failures,
                };
                emit(cli, &(to_json(&value)? + "\n"))?;
                if report.holds != report.cases || report.signed_sums_ok != report.cases {
                    return Err(CliError::Failure(summary));
                }
                Ok(())
            } else {
                let (Some(source), Some(target), Some(input)) = (source, target, input) else {
                    return Err(CliError::Usage(
                        "tropical needs either --random N or --source/--target/--input".into(),
                    ));
                };
                let a = parse_tuple(source)?;
                let b = parse_tuple(target)?;
                let lamination: Lamination = read_json(input)?;
                if lamination.m() != *m || lamination.d() != *d {
                    return Err(CliError::Usage(
                        "lamination parameters disagree with --m/--d".into(),
                    ));
                }
                let check = tropical_exchange_check(&a, &b, &lamination)?;
                emit(cli, &(to_json(&check)? + "\n"))?;
                if check.holds {
                    Ok(())
                } else {
                    Err(CliError::Failure(format!(
                        "relation fails: lhs {} vs max({}, {})",
                        check.lhs, check.rhs_m, check.rhs_n
                    )))
                }
            }
        }
        Command::SearchNonextendable { n, d } => {
            let params = ClusterParams::new(*n, *d)?;
            let sets = find_nonextendable(&params, cli.budget)?;
            let value = NonextendableReport {
                nonextendable: sets
                    .iter()
                    .map(|set| set.iter().map(|t| t.entries().to_vec()).collect())
                    .collect(),
            };
            emit(cli, &(to_json(&value)? + "\n"))
        }
        Command::ComplexStats { n, d, format } => {
            let params = ClusterParams::new(*n, *d)?;
            let complex = build_complex(&params, cli.budget)?;
            let f = f_vector(&complex);
            let euler = euler_characteristic(&complex);
            let clique = is_clique_complex(&complex);
            match format {
                Format::Text => {
                    let f_str: Vec<String> = f.iter().map(|v| v.to_string()).collect();
                    emit(
                        cli,
                        &format!(
                            "vertices: {}\nfacets: {}\nf-vector: {}\neuler characteristic: {}\nreduced euler characteristic: {}\nclique complex: {}\n",
                            complex.vertices().len(),
                            complex.facets().len(),
                            f_str.join(","),
                            euler,
                            euler - 1,
                            clique
                        ),
                    )
                }
                _ => {
                    let value = ComplexStats {
                        vertices: complex.vertices().len(),
                        facets: complex.facets().len(),
                        f_vector: f,
                        euler_characteristic: euler,
                        reduced_euler_characteristic: euler - 1,
                        clique_complex: clique,
                    };
                    emit(cli, &(to_json(&value)? + "\n"))
                }
            }
        }
        Command::Verify { m, d, seed } => {
            let p = Params::new(*m, *d)?;
            let checks = cyclotope::verify::run(&p, cli.budget, *seed)?;
            let mut out = String::new();
            let mut failed = Vec::new();
            for check in &checks {
                let value = CheckLine {
                    check: check.name,
                    status: if check.ok { "ok" } else { "fail" },
                    detail: &check.detail,
                };
                out.push_str(&to_json(&value)?);
                out.push('\n');
                if !check.ok {
                    failed.push(check.name);
                }
            }
            emit(cli, &out)?;
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Failure(format!(
                    "failed checks: {}",
                    failed.join(", ")
                )))
            }
        }
    }
}

fn parse_tuple(s: &str) -> Result<DSimplex, CliError> {
    let entries = s
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<Label>()
                .map_err(|_| CliError::Usage(format!("bad tuple entry {part:?} in {s:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    DSimplex::new(entries).map_err(|e| CliError::Usage(e.to_string()))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("cannot parse {}: {e}", path.display())))
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string(value).map_err(json_err)
}

fn json_err(e: serde_json::Error) -> CliError {
    CliError::Usage(format!("serialization failed: {e}"))
}

fn emit(cli: &Cli, content: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}
