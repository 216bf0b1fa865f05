//! `covrel`: verify covering relations and run the full campaign.

mod plot;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use covrel::campaign::{
    build_paper_data, count_words, emit_symmetric_orbit_certificate, enumerate_words, prove_paper, BlockAlphabet,
    ProofReport, SymmetricOrbitCertificate, BLOCK_STEPS, SYMBOLS,
};
use covrel::covering::{verify_backcover, verify_cover, CoveringCertificate, EvalMode, Status, VerifyConfig};
use covrel::dynamics::map_by_name;
use covrel::hset::{sym_image, GridResolution, HSet, HSetFile};
use covrel::Error;

const EXIT_VERIFIED: u8 = 0;
const EXIT_REFUTED: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "covrel", version, about = "Rigorous covering relations for maps on R^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify one covering (or backcovering) relation.
    Verify(VerifyArgs),
    /// Run the whole campaign for the quadratic reversible map.
    ProvePaper(ProveArgs),
    /// Enumerate admissible words from the graph of a prior report.
    Enumerate(EnumerateArgs),
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Initial grid pieces per free facet coordinate.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    resolution: u64,
    /// Maximum bisections of an initial cell.
    #[arg(long, default_value_t = 30)]
    max_depth: usize,
    /// Worker threads; 0 uses every core.
    #[arg(long, env = "COVREL_THREADS", default_value_t = 0)]
    threads: usize,
    /// Boxes one relation may evaluate before giving up.
    #[arg(long, default_value_t = 4_000_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Check the initial grid only, without bisection.
    #[arg(long)]
    fixed_grid: bool,
    /// Enclose the chart map with the mean-value form (much faster).
    #[arg(long)]
    mean_value: bool,
}

impl SweepArgs {
    fn config(&self) -> VerifyConfig {
        VerifyConfig {
            resolution: GridResolution::uniform(self.resolution as usize),
            max_depth: self.max_depth,
            threads: self.threads,
            budget: self.budget,
            fixed_grid: self.fixed_grid,
            eval_mode: if self.mean_value {
                EvalMode::MeanValue
            } else {
                EvalMode::Plain
            },
        }
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Source h-set: a built-in name (N1, N2, H1, H2, H3, S^T*H1, ...) or a
    /// JSON file.
    #[arg(long)]
    from: String,
    /// Target h-set, as for `--from`.
    #[arg(long)]
    to: String,
    #[arg(long, default_value = "F")]
    map: String,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    iters: u64,
    /// Verify `from <= to` (a backcovering) through the inverse map.
    #[arg(long)]
    back: bool,
    #[command(flatten)]
    sweep: SweepArgs,
    /// Write the certificate here instead of standard output.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Write point clouds of the sampled chart images into this directory.
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ProveArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    plot: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    /// Report written by `prove-paper`.
    #[arg(long)]
    report: PathBuf,
    /// Word length; must be at least 1.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=64))]
    length: u64,
    /// Also emit symmetric-orbit certificates for N1^k H1 H2 H3 N2, k = 1..=K.
    #[arg(long, default_value_t = 0)]
    orbits: usize,
    /// Print only the count.
    #[arg(long)]
    count_only: bool,
    /// Write the result as JSON here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Input problems, reported with exit code 3.
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<std::io::Error> for InputError {
    fn from(e: std::io::Error) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(&a),
        Command::ProvePaper(a) => cmd_prove_paper(&a),
        Command::Enumerate(a) => cmd_enumerate(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

/// Built-in names first, then files.
fn resolve_hset(spec: &str) -> Result<HSet, InputError> {
    let data = build_paper_data()?;
    if let Ok(n) = data.hset(spec) {
        return Ok(n.clone());
    }
    if let Some(base) = spec.strip_prefix("S^T*") {
        if let Ok(n) = data.hset(base) {
            return Ok(sym_image(&data.reversor, n)?);
        }
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(InputError(format!("`{spec}` is neither a built-in h-set nor a file")));
    }
    Ok(HSetFile::load(path)?.to_hset()?)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), InputError> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n"))?,
        None => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = writeln!(out, "{text}") {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return Err(e.into());
                }
            }
        }
    }
    Ok(())
}

fn certificate_exit_code(c: &CoveringCertificate) -> u8 {
    match c.status {
        Status::Verified if c.is_verified() => EXIT_VERIFIED,
        Status::RefutedCell => EXIT_REFUTED,
        _ => EXIT_INCONCLUSIVE,
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<u8, InputError> {
    let cfg = a.sweep.config();
    cfg.validate()?;
    let n = resolve_hset(&a.from)?;
    let m = resolve_hset(&a.to)?;
    let map = map_by_name(&a.map)?;
    let k = a.iters as usize;
    let cert = if a.back {
        verify_backcover(&n, map.as_ref(), k, &m, &cfg)?
    } else {
        verify_cover(&n, map.as_ref(), k, &m, &cfg)?
    };
    write_output(a.report.as_deref(), &cert.to_json())?;
    if let Some(dir) = &a.plot {
        if a.back {
            let inv = map
                .inverse()
                .ok_or_else(|| InputError(format!("{} has no inverse", map.id())))?;
            plot::relation(dir, "relation", &m.transpose(), inv.as_ref(), k, &n.transpose())?;
        } else {
            plot::relation(dir, "relation", &n, map.as_ref(), k, &m)?;
        }
    }
    eprintln!(
        "{} -> {}: {:?}, degree {}, {} boxes, depth {}, {:.2}s",
        cert.source,
        cert.target,
        cert.status,
        cert.degree.map_or("?".into(), |w| w.to_string()),
        cert.boxes,
        cert.max_depth,
        cert.wall_time_secs
    );
    Ok(certificate_exit_code(&cert))
}

fn cmd_prove_paper(a: &ProveArgs) -> Result<u8, InputError> {
    let cfg = a.sweep.config();
    cfg.validate()?;
    let report = prove_paper(&cfg)?;
    write_output(a.report.as_deref(), &report.to_json())?;
    if let Some(dir) = &a.plot {
        plot::campaign(dir)?;
    }
    for r in &report.relations {
        let c = &r.certificate;
        eprintln!(
            "{} -> {} ({}^{}): {:?}, degree {} (stated {}), {} boxes",
            c.source,
            c.target,
            c.map,
            c.iterates,
            c.status,
            c.degree.map_or("?".into(), |w| w.to_string()),
            r.stated_degree,
            c.boxes
        );
    }
    eprintln!(
        "total {} boxes ({:.3}x the reference {:.1e}), {:.1}s",
        report.totals.boxes, report.totals.box_ratio, report.totals.reference_boxes, report.totals.wall_time_secs
    );
    for c in &report.conclusions {
        eprintln!("{c}");
    }
    Ok(report.exit_code() as u8)
}

#[derive(serde::Serialize)]
struct Enumeration<'a> {
    length: usize,
    count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    words: Option<Vec<Vec<String>>>,
    alphabet: &'a BlockAlphabet,
    symmetric_orbits: Vec<SymmetricOrbitCertificate>,
}

fn cmd_enumerate(a: &EnumerateArgs) -> Result<u8, InputError> {
    let text = std::fs::read_to_string(&a.report)
        .map_err(|e| InputError(format!("cannot read {}: {e}", a.report.display())))?;
    let report = ProofReport::from_json(&text)?;
    if report.graph.edges.is_empty() {
        return Err(InputError("report has no covering graph".into()));
    }
    let alphabet = BlockAlphabet::from_graph(&report.graph, &SYMBOLS, BLOCK_STEPS);
    let len = a.length as usize;
    let count = count_words(&alphabet, len);
    let words = (!a.count_only).then(|| enumerate_words(&alphabet, len));
    let mut orbits = Vec::new();
    let mut code = EXIT_VERIFIED;
    for k in 1..=a.orbits {
        let mut word = vec!["N1"; k + 1];
        word.extend(["H1", "H2", "H3", "N2"]);
        match emit_symmetric_orbit_certificate(&report.graph, &word) {
            Ok(c) => orbits.push(c),
            Err(e) => {
                eprintln!("no certificate for k = {k}: {e}");
                code = EXIT_INCONCLUSIVE;
            }
        }
    }
    let out = Enumeration {
        length: len,
        count: count.to_string(),
        words,
        alphabet: &alphabet,
        symmetric_orbits: orbits,
    };
    let json = serde_json::to_string_pretty(&out).map_err(|e| InputError(e.to_string()))?;
    write_output(a.output.as_deref(), &json)?;
    eprintln!("{count} admissible words of length {len}");
    Ok(code)
}
