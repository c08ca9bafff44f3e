use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use lcrank::balance::{self, BalanceReport};
use lcrank::count::{self, RankCertificate, DEFAULT_BRUTE_BOUND};
use lcrank::cover::{self, Cover, CoverDoc};
use lcrank::generators;
use lcrank::realization::{self, DEFAULT_TRIALS};
use lcrank::{pebble, Element, ElementSet, LoopedGraph, Vertex};

/// Rank, covers and balance checks for looped simple graphs in the plane.
///
/// Graph files are JSON `{"vertices": [...], "edges": [[u, v], ...], "loops": [v, ...]}`;
/// `-` reads stdin. Results go to stdout as JSON, diagnostics to stderr.
#[derive(Parser, Debug)]
#[command(name = "lcrank", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank of the whole graph from the pebble game.
    Rank {
        file: PathBuf,
        /// Also run the partition search and attach its certificate.
        #[arg(long, visible_alias = "certificate")]
        brute: bool,
        /// Element bound for the partition search.
        #[arg(long, default_value_t = DEFAULT_BRUTE_BOUND)]
        bound: usize,
        /// Also compute the rigidity matrix rank over the prime field.
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        /// Insert elements in an order shuffled by this seed.
        #[arg(long)]
        shuffle: Option<u64>,
    },
    /// Rigidity verdict and a spanning tight subgraph when rigid.
    Rigid { file: PathBuf },
    /// Whether the whole element set is independent.
    Independent { file: PathBuf },
    /// Minimum admissible 1-thin cover, or a check of a given one.
    Cover {
        file: PathBuf,
        /// Compute a minimizing cover by exhaustive search.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = DEFAULT_BRUTE_BOUND)]
        bound: usize,
        /// Cover JSON to validate against the graph.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// k-balanced verdict with a witness when it fails.
    Balanced {
        file: PathBuf,
        #[arg(short = 'k')]
        k: usize,
        /// Also report the vertex connectivity of the underlying simple graph.
        #[arg(long)]
        connectivity: bool,
    },
    /// Rigidity matrix rank over GF(2^61 - 1) at random realizations.
    MatrixRank {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        /// Write the first trial's matrix as CSV residues to this path.
        #[arg(long)]
        dump_matrix: Option<PathBuf>,
    },
    /// Emit a named graph as JSON.
    Gen {
        #[command(subcommand)]
        graph: GenGraph,
    },
    /// DOT rendering of a graph (the one non-JSON output).
    Dot { file: PathBuf },
    /// Cross-check the rank oracles on random small graphs.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        max_elements: usize,
    },
}

#[derive(Subcommand, Debug)]
enum GenGraph {
    /// Complete graph on `n` vertices with one loop on each of the first `loops`.
    Kn {
        n: usize,
        #[arg(long, default_value_t = 0)]
        loops: usize,
    },
    Figure1Left,
    Figure1Middle,
    Figure1Right,
    RingOfK5,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 1, message: message.into() }
    }

    fn breach(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<lcrank::Error> for Failure {
    fn from(e: lcrank::Error) -> Self {
        Self::usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("lcrank: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Rank { file, brute, bound, numeric, seed, trials, shuffle } => {
            let g = load(&file)?;
            rank(&g, brute, bound, numeric.then_some((seed, trials)), shuffle)
        }
        Command::Rigid { file } => {
            let g = load(&file)?;
            let tight = pebble::tight_spanning_subgraph(&g);
            emit(json!({
                "rigid": tight.is_some(),
                "rank": pebble::rank(&g),
                "target": 2 * g.num_vertices(),
                "tight_subgraph": tight.map(|t| elements_json(&g, &t)),
            }))
        }
        Command::Independent { file } => {
            let g = load(&file)?;
            let b = pebble::basis(&g);
            emit(json!({
                "independent": b.rejected.is_empty(),
                "rank": b.rank(),
                "elements": g.num_elements(),
                "dependent": b.rejected.iter().map(|&(e, why)| json!({
                    "element": element_json(&g, e),
                    "blocked": why,
                })).collect::<Vec<_>>(),
            }))
        }
        Command::Cover { file, exact, bound, check } => {
            let g = load(&file)?;
            cover_cmd(&g, exact, bound, check.as_deref())
        }
        Command::Balanced { file, k, connectivity } => {
            let g = load(&file)?;
            let mut out = balance_json(&g, k, &balance::is_k_balanced(&g, k));
            if connectivity {
                out["connectivity"] = json!(g.vertex_connectivity());
            }
            emit(out)
        }
        Command::MatrixRank { file, seed, trials, dump_matrix } => {
            let g = load(&file)?;
            let r = realization::numeric_rank(&g, seed, trials)?;
            if let Some(path) = dump_matrix {
                let m = realization::build_matrix(&g, &realization::seeded_realization(&g, seed))?;
                std::fs::write(&path, realization::matrix_csv(&m))
                    .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            }
            emit(json!({
                "rank": r,
                "target": 2 * g.num_vertices(),
                "rigid": r == 2 * g.num_vertices(),
                "seed": seed,
                "trials": trials,
            }))
        }
        Command::Gen { graph } => {
            let g = match graph {
                GenGraph::Kn { n, loops } => {
                    if loops > n {
                        return Err(Failure::usage(format!("--loops {loops} exceeds n = {n}")));
                    }
                    generators::complete_with_loops(n, loops)?
                }
                GenGraph::Figure1Left => generators::figure1_left(),
                GenGraph::Figure1Middle => generators::figure1_middle(),
                GenGraph::Figure1Right => generators::figure1_right(),
                GenGraph::RingOfK5 => generators::ring_of_k5(),
            };
            write_out(&format!("{}\n", g.to_json()))
        }
        Command::Dot { file } => write_out(&load(&file)?.to_dot()),
        Command::Verify { max_n, seed, count, max_elements } => verify(max_n, seed, count, max_elements),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut text)).map(|_| ())
    };
    res.map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn load(path: &Path) -> Result<LoopedGraph, Failure> {
    LoopedGraph::parse(&read_input(path)?).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// Writes to stdout; a closed pipe ends the run quietly.
fn write_out(text: &str) -> Outcome {
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::usage(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

fn emit(v: Value) -> Outcome {
    write_out(&format!("{v}\n"))
}

fn element_json(g: &LoopedGraph, e: Element) -> Value {
    match e {
        Element::Edge(i) => {
            let (u, v) = g.edge(i);
            json!({"edge": i, "ends": [g.name(u), g.name(v)]})
        }
        Element::Loop(i) => json!({"loop": i, "at": g.name(g.loop_vertex(i))}),
    }
}

fn elements_json(g: &LoopedGraph, t: &ElementSet) -> Value {
    Value::Array(t.iter().map(|e| element_json(g, e)).collect())
}

fn names_json<'a>(g: &LoopedGraph, vs: impl IntoIterator<Item = &'a Vertex>) -> Value {
    Value::Array(vs.into_iter().map(|&v| json!(g.name(v))).collect())
}

fn certificate_json(g: &LoopedGraph, c: &RankCertificate) -> Value {
    json!({
        "rank": c.rank,
        "discard": elements_json(g, &c.discard),
        "parts": c.parts.iter().map(|p| elements_json(g, p)).collect::<Vec<_>>(),
    })
}

fn rank(
    g: &LoopedGraph,
    brute: bool,
    bound: usize,
    numeric: Option<(u64, usize)>,
    shuffle: Option<u64>,
) -> Outcome {
    let mut order = g.elements();
    if let Some(s) = shuffle {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
    }
    let basis = pebble::basis_in_order(g, &order)?;
    let r = basis.rank();
    let mut out = json!({
        "rank": r,
        "target": 2 * g.num_vertices(),
        "certificate": {
            "basis": elements_json(g, &basis.elements),
            "rejected": basis.rejected.iter().map(|&(e, why)| json!({
                "element": element_json(g, e),
                "blocked": why,
            })).collect::<Vec<_>>(),
        },
    });
    let mut breach = None;
    if brute {
        let cert = count::rank_brute_force(g, &g.all_elements(), bound)?;
        if cert.rank != r {
            breach = Some(format!("pebble rank {r} but partition minimum {}", cert.rank));
        }
        out["edmonds"] = certificate_json(g, &cert);
    }
    if let Some((seed, trials)) = numeric {
        let n = realization::numeric_rank(g, seed, trials)?;
        if n > r {
            breach = Some(format!("numeric rank {n} exceeds pebble rank {r}"));
        }
        out["numeric_rank"] = json!(n);
    }
    emit(out)?;
    match breach {
        Some(msg) => Err(Failure::breach(msg)),
        None => Ok(()),
    }
}

fn cover_json(g: &LoopedGraph, c: &Cover) -> Value {
    serde_json::to_value(c.to_doc(g)).expect("cover document serializes")
}

fn cover_cmd(g: &LoopedGraph, exact: bool, bound: usize, check: Option<&Path>) -> Outcome {
    if !exact && check.is_none() {
        return Err(Failure::usage("cover needs --exact or --check <cover.json>"));
    }
    let mut out = json!({});
    let mut best = None;
    if exact {
        let (value, c) = cover::min_cover(g, bound)?;
        out["value"] = json!(value);
        out["cover"] = cover_json(g, &c);
        best = Some(value);
    }
    if let Some(path) = check {
        let text = read_input(path)?;
        let doc: CoverDoc =
            serde_json::from_str(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        let c = Cover::from_doc(g, &doc)?;
        let admissible = cover::is_admissible_thin(g, &c, 1)?;
        let mut checked = json!({"value": c.value(), "admissible_thin": admissible});
        if let Some(v) = best {
            checked["minimum"] = json!(admissible && c.value() == v as i64);
        }
        out["checked"] = checked;
    }
    emit(out)
}

fn balance_json(g: &LoopedGraph, k: usize, r: &BalanceReport) -> Value {
    json!({
        "balanced": r.balanced,
        "k": k,
        "witness": r.witness.as_ref().map(|w| json!({
            "removed": names_json(g, &w.removed),
            "component": names_json(g, &w.component),
            "looped_count": w.looped_count,
        })),
    })
}

const CHECKS: [&str; 6] = ["brute", "restricted", "certificate", "numeric", "min_cover", "order"];

/// Names of the cross-oracle identities that fail on `g`.
fn disagreements(g: &LoopedGraph, numeric_seed: u64, order_seed: u64) -> Result<Vec<&'static str>, Failure> {
    let all = g.all_elements();
    let r = pebble::rank(g);
    let brute = count::rank_brute_force(g, &all, all.len())?;
    let restricted = count::rank_brute_force_restricted(g, &all, all.len())?;
    let mut bad = Vec::new();
    if brute.rank != r {
        bad.push("brute");
    }
    if restricted.rank != r {
        bad.push("restricted");
    }
    if brute.validate(g, &all).is_err() || restricted.validate(g, &all).is_err() {
        bad.push("certificate");
    }
    if realization::numeric_rank(g, numeric_seed, DEFAULT_TRIALS)? != r {
        bad.push("numeric");
    }
    match cover::min_cover(g, all.len()) {
        Ok((value, c)) if value == r && cover::is_admissible_thin(g, &c, 1)? => {}
        _ => bad.push("min_cover"),
    }
    let mut order = g.elements();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(order_seed));
    if pebble::basis_in_order(g, &order)?.rank() != r {
        bad.push("order");
    }
    Ok(bad)
}

/// Greedily drops elements, then bare vertices, while some check still fails.
fn minimize(g: &LoopedGraph, numeric_seed: u64, order_seed: u64) -> Result<LoopedGraph, Failure> {
    let mut g = g.clone();
    'elements: loop {
        for e in g.elements() {
            let h = g.delete_elements(&ElementSet::from_iter([e]))?;
            if !disagreements(&h, numeric_seed, order_seed)?.is_empty() {
                g = h;
                continue 'elements;
            }
        }
        break;
    }
    'vertices: loop {
        for v in 0..g.num_vertices() {
            if g.degree(v) > 0 || g.loops_at(v)? > 0 {
                continue;
            }
            let h = g.delete_vertices(&BTreeSet::from([v]))?;
            if !disagreements(&h, numeric_seed, order_seed)?.is_empty() {
                g = h;
                continue 'vertices;
            }
        }
        break;
    }
    Ok(g)
}

fn verify(max_n: usize, seed: u64, count: usize, max_elements: usize) -> Outcome {
    if max_n == 0 {
        return Err(Failure::usage("--max-n must be at least 1"));
    }
    if max_elements > count::MAX_BRUTE_BOUND {
        return Err(Failure::usage(format!(
            "--max-elements {max_elements} exceeds the search limit {}",
            count::MAX_BRUTE_BOUND
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failed = [0usize; CHECKS.len()];
    let mut first = None;
    for i in 0..count {
        let g = generators::random_graph(&mut rng, max_n, max_elements);
        let (numeric_seed, order_seed) = (rng.gen::<u64>(), rng.gen::<u64>());
        let bad = disagreements(&g, numeric_seed, order_seed)?;
        for name in &bad {
            failed[CHECKS.iter().position(|c| c == name).unwrap()] += 1;
        }
        if !bad.is_empty() && first.is_none() {
            first = Some((i, g, numeric_seed, order_seed, bad));
        }
    }
    let checks: serde_json::Map<String, Value> = CHECKS
        .iter()
        .zip(failed)
        .map(|(name, f)| (name.to_string(), json!({"pass": count - f, "fail": f})))
        .collect();
    emit(json!({
        "graphs": count,
        "seed": seed,
        "max_n": max_n,
        "max_elements": max_elements,
        "checks": checks,
        "passed": first.is_none(),
    }))?;
    match first {
        None => Ok(()),
        Some((i, g, numeric_seed, order_seed, bad)) => {
            let small = minimize(&g, numeric_seed, order_seed)?;
            eprintln!("counterexample (graph {i}, failing {bad:?}, numeric seed {numeric_seed}):");
            eprintln!("{}", small.to_json());
            Err(Failure::breach("oracles disagree"))
        }
    }
}
