use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand};
use orthoguard::certificate::CertificateFile;
use orthoguard::oracle::{densify, max_independent_bruteforce, min_cover_bruteforce, DEFAULT_EDGE_LIMIT};
use orthoguard::svg::render_svg;
use orthoguard::{
    build_sparse_tpig, generate_polygon, parse_polygon, solve, staircase_with_slices, verify_certificate,
    Error, OrderIndex, Pipeline, SparseTpig,
};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "orthoguard", version, about = "Minimum r-star covers of orthogonal polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a minimum guard set for a polygon or abstract graph file.
    Solve {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the independent-set certificate.
        #[arg(long)]
        certificate: Option<PathBuf>,
        /// Also render the polygon, pixels, guards and witnesses.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Cross-check solver, certificate and brute-force oracles.
    Verify {
        /// Instance file; omit to check a generated corpus.
        #[arg(short, long)]
        input: Option<PathBuf>,
        /// Certificate file to check against the instance.
        #[arg(long)]
        cert: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_EDGE_LIMIT)]
        limit: usize,
        /// Corpus seed range, inclusive.
        #[arg(long, default_value = "1..300", value_parser = parse_range)]
        seeds: (u64, u64),
        /// Corpus cell counts, inclusive; seed s uses min + s mod (max - min + 1).
        #[arg(long, default_value = "5..30", value_parser = parse_range)]
        cells: (u64, u64),
    },
    /// Write a random polygon.
    Gen {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        cells: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Time the solver on staircase polygons of growing slice counts.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "1000,2000,4000,8000")]
        sizes: Vec<usize>,
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Runs per size; the fastest is reported.
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

enum Failure {
    Input(anyhow::Error),
    Internal(anyhow::Error),
    Disagreement(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) => Failure::Internal(e.into()),
            _ => Failure::Input(e.into()),
        }
    }
}

impl Failure {
    fn message(&self) -> String {
        match self {
            Failure::Input(e) | Failure::Internal(e) => format!("{e:#}"),
            Failure::Disagreement(msg) => msg.clone(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a: u64 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: u64 = b.trim().parse().map_err(|e| format!("{e}"))?;
    if a > b {
        return Err(format!("empty range {a}..{b}"));
    }
    Ok((a, b))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::Input)
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Failure::Input)
}

/// Polygon files have `vertices`; anything else is read as an abstract graph.
fn load(path: &Path) -> Result<Pipeline, Failure> {
    let text = read(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Input(anyhow!("{}: {e}", path.display())))?;
    let run = if value.get("vertices").is_some() {
        Pipeline::from_polygon(&parse_polygon(&text)?)
    } else {
        Pipeline::from_tpig(&SparseTpig::parse(&text)?)
    };
    Ok(run?)
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn cmd_solve(input: &Path, output: &Path, certificate: Option<&Path>, svg: Option<&Path>) -> Outcome {
    let run = load(input)?;
    let cover = run.cover_report();
    if !cover.passed() {
        return Err(Failure::Internal(anyhow!("{} edges left uncovered", cover.uncovered.len())));
    }
    write(output, &to_json(&run.guards.to_file()))?;
    let report = run.certificate_report();
    if let Some(path) = certificate {
        write(path, &to_json(&run.certificate.to_file(&report)))?;
    }
    if let Some(path) = svg {
        let raster = run
            .raster
            .as_ref()
            .ok_or_else(|| Failure::Input(anyhow!("--svg needs a polygon input")))?;
        write(path, &render_svg(raster, &run.guards, Some(&run.certificate)))?;
    }
    if !report.passed() {
        let msgs: Vec<String> = report.failures.iter().map(ToString::to_string).collect();
        return Err(Failure::Internal(anyhow!("certificate failed: {}", msgs.join("; "))));
    }
    println!("{} guards", run.guards.len());
    Ok(())
}

/// Solver, certificate, oracle minimum and oracle maximum sizes, or a
/// description of what disagreed.
fn check_instance(run: &Pipeline, limit: usize) -> Result<[usize; 4], Failure> {
    let dense = densify(&run.order, limit)?;
    let sizes = [
        run.trace.w_final.len(),
        run.certificate.len(),
        min_cover_bruteforce(&dense).0,
        max_independent_bruteforce(&dense).0,
    ];
    let mut problems = Vec::new();
    if sizes.iter().any(|&s| s != sizes[0]) {
        problems.push(format!("sizes {} = {} = {} = {}", sizes[0], sizes[1], sizes[2], sizes[3]));
    }
    if !run.cover_report().passed() {
        problems.push("cover check failed".into());
    }
    let report = run.certificate_report();
    if !report.passed() {
        problems.extend(report.failures.iter().map(ToString::to_string));
    }
    if problems.is_empty() {
        Ok(sizes)
    } else {
        Err(Failure::Disagreement(problems.join("; ")))
    }
}

fn cmd_verify(input: Option<&Path>, cert: Option<&Path>, limit: usize, seeds: (u64, u64), cells: (u64, u64)) -> Outcome {
    let Some(input) = input else {
        if cert.is_some() {
            return Err(Failure::Input(anyhow!("--cert needs --input")));
        }
        return verify_corpus(limit, seeds, cells);
    };
    let run = load(input)?;
    if let Some(path) = cert {
        let file: CertificateFile = serde_json::from_str(&read(path)?)
            .map_err(|e| Failure::Input(anyhow!("{}: {e}", path.display())))?;
        let mut failures: Vec<String> = verify_certificate(&file.edges(), &run.trace, &run.order)
            .failures
            .iter()
            .map(ToString::to_string)
            .collect();
        if file.cover_size != run.trace.w_final.len() {
            failures.push(format!(
                "cover_size {} but the cover has {} guards",
                file.cover_size,
                run.trace.w_final.len()
            ));
        }
        if !failures.is_empty() {
            return Err(Failure::Disagreement(failures.join("; ")));
        }
        println!("certificate ok: {} independent edges", file.independent.len());
        return Ok(());
    }
    let s = check_instance(&run, limit)?;
    println!("{} = {} = {} = {}", s[0], s[1], s[2], s[3]);
    Ok(())
}

fn corpus_cells(seed: u64, (lo, hi): (u64, u64)) -> usize {
    (lo + seed % (hi - lo + 1)) as usize
}

fn verify_corpus(limit: usize, (first, last): (u64, u64), cells: (u64, u64)) -> Outcome {
    let results: Vec<(u64, Result<[usize; 4], String>)> = (first..=last)
        .into_par_iter()
        .map(|seed| {
            let p = generate_polygon(seed, corpus_cells(seed, cells));
            let outcome = Pipeline::from_polygon(&p)
                .map_err(Failure::from)
                .and_then(|run| check_instance(&run, limit))
                .map_err(|f| format!("{}\n  instance: {}", f.message(), p.to_json()));
            (seed, outcome)
        })
        .collect();
    let mut bad = 0;
    for (seed, outcome) in &results {
        match outcome {
            Ok(s) => println!("seed {seed}: {} = {} = {} = {}", s[0], s[1], s[2], s[3]),
            Err(msg) => {
                bad += 1;
                println!("seed {seed}: FAIL {msg}");
            }
        }
    }
    println!("{} instances, {bad} disagreements", results.len());
    if bad == 0 {
        Ok(())
    } else {
        Err(Failure::Disagreement(format!("{bad} instances disagree")))
    }
}

fn cmd_gen(seed: u64, cells: usize, output: Option<&Path>) -> Outcome {
    let seed = match std::env::var("ORTHOGUARD_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|e| Failure::Input(anyhow!("ORTHOGUARD_SEED={v}: {e}")))?,
        Err(_) => seed,
    };
    if cells == 0 {
        return Err(Failure::Input(anyhow!("--cells must be at least 1")));
    }
    let text = generate_polygon(seed, cells).to_json() + "\n";
    match output {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn time_solve(g: &SparseTpig, repeats: usize) -> Result<Duration, Failure> {
    let mut best = Duration::MAX;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        let order = OrderIndex::new(g);
        let trace = solve(&order)?;
        best = best.min(start.elapsed());
        std::hint::black_box(trace);
    }
    Ok(best)
}

fn cmd_bench(sizes: &[usize], csv: bool, seed: u64, repeats: usize) -> Outcome {
    if csv {
        println!("n,millis,ratio");
    } else {
        println!("{:>8} {:>8} {:>12} {:>8}", "target", "slices", "millis", "ratio");
    }
    let mut prev: Option<f64> = None;
    for &target in sizes {
        let raster = build_sparse_tpig(&staircase_with_slices(seed, target))?;
        let n = raster.tpig.num_h() + raster.tpig.num_v();
        let millis = time_solve(&raster.tpig, repeats)?.as_secs_f64() * 1e3;
        let ratio = prev.map(|p| millis / p);
        let ratio_text = ratio.map_or(String::new(), |r| format!("{r:.2}"));
        if csv {
            println!("{n},{millis:.3},{ratio_text}");
        } else {
            println!("{target:>8} {n:>8} {millis:>12.3} {ratio_text:>8}");
        }
        prev = Some(millis);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Solve { input, output, certificate, svg } => {
            cmd_solve(input, output, certificate.as_deref(), svg.as_deref())
        }
        Command::Verify { input, cert, limit, seeds, cells } => {
            cmd_verify(input.as_deref(), cert.as_deref(), *limit, *seeds, *cells)
        }
        Command::Gen { seed, cells, output } => cmd_gen(*seed, *cells, output.as_deref()),
        Command::Bench { sizes, csv, seed, repeats } => cmd_bench(sizes, *csv, *seed, *repeats),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Disagreement(msg)) => {
            eprintln!("disagreement: {msg}");
            ExitCode::from(3)
        }
    }
}
