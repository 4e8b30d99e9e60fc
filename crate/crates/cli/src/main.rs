//! `bihyper`: build product bi-hypergraphs, compute chromatic spectra, and
//! check the structural claims about them.
//!
//! Exit codes: 0 success, 1 a verification found a counterexample, 2 bad
//! usage or input, 3 a vertex cap or time budget was hit.

mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bihyper::constructions::{product_bihypergraph, reduced_bihypergraph, spectrum_instance, DimsSpec, SpectrumTarget};
use bihyper::format::{hypergraph_from_json, hypergraph_to_json, partitions_to_json, SpectrumJson};
use bihyper::solver::{chromatic_spectrum, enumerate_feasible_partitions, EnumerationConfig, MaximalityMode};
use bihyper::{ChromaticSpectrum, MixedHypergraph};

#[derive(Parser, Debug)]
#[command(name = "bihyper", version, about = "Exact strict colorings and chromatic spectra of mixed hypergraphs")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Emit machine-readable JSON instead of tables.
    #[arg(long, global = true)]
    json: bool,
    /// Write hypergraph (or partition) JSON to this file.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Refuse to enumerate hypergraphs with more vertices than this.
    #[arg(long, global = true, value_name = "N")]
    max_vertices: Option<usize>,
    /// Wall-clock budget for enumeration, in seconds.
    #[arg(long, global = true, value_name = "SECS")]
    time_budget: Option<f64>,
    /// Worker threads for enumeration.
    #[arg(long, global = true, value_name = "N", default_value_t = 1)]
    parallel: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one of the hypergraph families.
    #[command(subcommand)]
    Construct(Construct),
    /// Chromatic spectrum of a hypergraph JSON file.
    Spectrum { file: PathBuf },
    /// Feasible set and chromatic numbers of a hypergraph JSON file.
    Feasible { file: PathBuf },
    /// Check a structural claim on a concrete instance.
    #[command(subcommand)]
    Verify(Verify),
    /// Re-emit a hypergraph file in normalized form, or its feasible partitions.
    Export {
        file: PathBuf,
        /// Emit the list of feasible partitions instead of the hypergraph.
        #[arg(long)]
        partitions: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    /// The product bi-hypergraph on [n1] x ... x [ns].
    Product {
        #[arg(required = true, num_args = 2..)]
        dims: Vec<usize>,
    },
    /// The reduced sub-hypergraph on 2n1+n2+s-2 vertices.
    Reduced {
        #[arg(required = true, num_args = 2..)]
        dims: Vec<usize>,
    },
    /// The product whose spectrum has r_n = s for each n:s pair.
    SpectrumInstance {
        #[arg(long, value_name = "N:S,...")]
        set: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Mode {
    Proof,
    Enumerate,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// Two dimensions n1 > n2 >= 3: the spectrum is r_n1 = r_n2 = 1.
    Lemma21 { n1: usize, n2: usize },
    /// Strictly decreasing dims: the strict colorings are exactly the coordinate colorings.
    Thm22 {
        #[arg(required = true, num_args = 2..)]
        dims: Vec<usize>,
    },
    /// Prescribed spectrum: r_n = s for every n:s pair.
    Thm23 {
        #[arg(long, value_name = "N:S,...")]
        set: String,
    },
    /// Adding any triple to the product changes its spectrum.
    Thm24 {
        #[arg(required = true, num_args = 2..)]
        dims: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Proof)]
        mode: Mode,
    },
    /// Two dimensions n1 >= n2 > 3: the reduced sub-hypergraph keeps the spectrum.
    Lemma31 { n1: usize, n2: usize },
    /// The reduced sub-hypergraph keeps the feasible set and spectrum.
    Thm32 {
        #[arg(required = true, num_args = 2..)]
        dims: Vec<usize>,
    },
    /// |X*| = 2n1+n2+s-2, for given dims or over a sweep.
    SizeBound {
        dims: Vec<usize>,
        #[arg(long, default_value_t = 9)]
        max_entry: usize,
        #[arg(long, default_value_t = 4)]
        max_s: usize,
    },
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// A check found a counterexample.
    Refuted,
    Usage(String),
    Core(bihyper::Error),
}

impl From<bihyper::Error> for Failure {
    fn from(e: bihyper::Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Refuted => 1,
            Failure::Usage(_) => 2,
            Failure::Core(e) if e.is_cap_abort() => 3,
            Failure::Core(_) => 2,
        }
    }
}

pub type Outcome = Result<(), Failure>;

impl Global {
    pub fn config(&self, default_cap: usize) -> Result<EnumerationConfig, Failure> {
        let mut cfg = EnumerationConfig::default()
            .with_max_vertices(self.max_vertices.unwrap_or(default_cap))
            .with_parallel(self.parallel.max(1));
        if let Some(secs) = self.time_budget {
            if !(secs > 0.0 && secs.is_finite()) {
                return Err(Failure::Usage("--time-budget must be a positive number of seconds".into()));
            }
            cfg = cfg.with_time_budget(Duration::from_secs_f64(secs));
        }
        Ok(cfg)
    }

    pub fn json(&self) -> bool {
        self.json
    }
}

/// Default vertex cap for plain spectrum/feasible runs.
const SPECTRUM_CAP: usize = 64;
/// Default vertex cap for enumeration-backed verifications.
pub const VERIFY_CAP: usize = 40;

/// Sorts dims descending, warning on stderr if they were not already.
pub fn sorted_dims(mut dims: Vec<usize>) -> Vec<usize> {
    if dims.windows(2).any(|w| w[0] < w[1]) {
        dims.sort_unstable_by(|a, b| b.cmp(a));
        eprintln!("warning: dimensions re-sorted to descending order {dims:?}");
    }
    dims
}

pub fn parse_set(text: &str) -> Result<SpectrumTarget, Failure> {
    let mut entries = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (n, s) =
            item.split_once(':').ok_or_else(|| Failure::Usage(format!("expected N:S in --set, got {item:?}")))?;
        let parse =
            |x: &str| x.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad number {x:?} in --set")));
        entries.push((parse(n)?, parse(s)?));
    }
    Ok(SpectrumTarget::new(entries)?)
}

fn read_hypergraph(path: &Path) -> Result<MixedHypergraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(hypergraph_from_json(&text)?)
}

fn write_out(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn emit_hypergraph(g: &Global, label: &str, h: &MixedHypergraph) -> Outcome {
    let text = hypergraph_to_json(h);
    let kind = if h.is_bi_hypergraph() { "bi-edges" } else { "edges" };
    let summary = format!("{label}: {} vertices, {} {kind}", h.num_vertices(), h.c_edges().len());
    match &g.out {
        Some(path) => {
            write_out(path, &text)?;
            if g.json {
                println!(
                    "{}",
                    serde_json::json!({"file": path, "vertices": h.num_vertices(), "edges": h.c_edges().len()})
                );
            } else {
                println!("{summary} -> {}", path.display());
            }
        }
        None if g.json => println!("{text}"),
        None => println!("{summary}"),
    }
    Ok(())
}

pub fn print_spectrum_table(s: &ChromaticSpectrum) -> Result<(), Failure> {
    println!("{:>4}  {:>8}", "k", "r_k");
    for (k, r) in s.nonzero() {
        println!("{k:>4}  {r:>8}");
    }
    let fs: Vec<String> = s.feasible_set().iter().map(|k| k.to_string()).collect();
    match (s.lower_chromatic_number(), s.upper_chromatic_number()) {
        (Some(lo), Some(hi)) => {
            println!("feasible set: {{{}}}  chi = {lo}  chi_bar = {hi}  partitions = {}", fs.join(","), s.total()?)
        }
        _ => println!("no strict coloring"),
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    match cli.command {
        Command::Construct(c) => match c {
            Construct::Product { dims } => {
                let d = DimsSpec::product(sorted_dims(dims))?;
                emit_hypergraph(g, &format!("H{d}"), &product_bihypergraph(&d))
            }
            Construct::Reduced { dims } => {
                let d = DimsSpec::reduced(sorted_dims(dims))?;
                emit_hypergraph(g, &format!("H*{d}"), &reduced_bihypergraph(&d)?)
            }
            Construct::SpectrumInstance { set } => {
                let (d, h) = spectrum_instance(&parse_set(&set)?)?;
                emit_hypergraph(g, &format!("H{d}"), &h)
            }
        },
        Command::Spectrum { file } => {
            let h = read_hypergraph(&file)?;
            let s = chromatic_spectrum(&h, &g.config(SPECTRUM_CAP)?)?;
            if g.json {
                println!("{}", serde_json::to_string(&SpectrumJson::new(&s)?).expect("serializes"));
                Ok(())
            } else {
                print_spectrum_table(&s)
            }
        }
        Command::Feasible { file } => {
            let h = read_hypergraph(&file)?;
            let s = chromatic_spectrum(&h, &g.config(SPECTRUM_CAP)?)?;
            let fs = s.feasible_set();
            if g.json {
                let j = serde_json::json!({
                    "feasible_set": fs,
                    "chi": s.lower_chromatic_number(),
                    "chi_bar": s.upper_chromatic_number(),
                });
                println!("{j}");
            } else if fs.is_empty() {
                println!("feasible set: {{}} (no strict coloring)");
            } else {
                let items: Vec<String> = fs.iter().map(|k| k.to_string()).collect();
                println!("feasible set: {{{}}}  chi = {}  chi_bar = {}", items.join(","), fs[0], fs[fs.len() - 1]);
            }
            Ok(())
        }
        Command::Export { file, partitions } => {
            let h = read_hypergraph(&file)?;
            let text = if partitions {
                partitions_to_json(&enumerate_feasible_partitions(&h, &g.config(SPECTRUM_CAP)?)?)
            } else {
                hypergraph_to_json(&h)
            };
            match &g.out {
                Some(path) => write_out(path, &text),
                None => {
                    println!("{text}");
                    Ok(())
                }
            }
        }
        Command::Verify(v) => verify::run(g, v),
    }
}

impl From<Mode> for MaximalityMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Proof => MaximalityMode::Proof,
            Mode::Enumerate => MaximalityMode::Enumerate,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Refuted => {}
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Core(e) => eprintln!("error: {e}"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
