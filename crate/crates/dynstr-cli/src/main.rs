//! `dynstr`: run edit scripts against the dynamic string problems, or benchmark them.
//!
//! Exit codes: 0 on success, 2 for usage, input and script errors, 3 when
//! `--oracle-check` finds a disagreement.

mod bench;
mod problem;
mod script;

use bench::BenchConfig;
use clap::{Parser, Subcommand};
use dynstr::dynamic_lcs::SliceMode;
use dynstr::oracle;
use problem::{cross_check, Plain, Problem, Session};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::io::{BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dynstr", version, about = "Dynamic string queries under edit scripts")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(clap::Args)]
struct Tuning {
    /// Rebuild period; defaults to the balance point for the problem
    #[arg(long)]
    kappa: Option<usize>,
    /// Rebuild all at once every kappa edits instead of in slices
    #[arg(long)]
    amortized: bool,
}

impl Tuning {
    fn mode(&self) -> SliceMode {
        if self.amortized {
            SliceMode::Amortized
        } else {
            SliceMode::WorstCase
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the answer for the input, then after every edit of the script
    Run {
        #[arg(value_enum)]
        problem: Problem,
        /// Input files: S, plus T for lcs
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Edit script (`-` for stdin); no script prints the initial answer only
        #[arg(long)]
        script: Option<PathBuf>,
        /// One JSON object per line
        #[arg(long)]
        json: bool,
        /// Recompute every answer naively and stop on a mismatch
        #[arg(long)]
        oracle_check: bool,
        /// Seed for the fingerprint hashing
        #[arg(long, default_value_t = dynstr::ksub::DEFAULT_SEED)]
        seed: u64,
        /// Keep a trailing newline of the input files
        #[arg(long)]
        raw: bool,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Time a seeded random workload; CSV on stdout
    Bench {
        #[arg(value_enum)]
        problem: Problem,
        #[arg(long, default_value_t = 1024)]
        n: usize,
        #[arg(long, default_value_t = 50)]
        edits: usize,
        /// Alphabet size, letters from `a`
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(1..=26))]
        alphabet: u8,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Largest accepted n
        #[arg(long, default_value_t = 1 << 20)]
        max_n: usize,
        /// Report 0 instead of measured times, making the output byte-identical across runs
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        tuning: Tuning,
    },
}

/// An error with its exit code.
struct Fail(u8, String);

fn usage(msg: impl Into<String>) -> Fail {
    Fail(2, msg.into())
}

fn read_input(path: &PathBuf, raw: bool) -> Result<Vec<u8>, Fail> {
    let mut data = std::fs::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    if !raw {
        if data.ends_with(b"\r\n") {
            data.truncate(data.len() - 2);
        } else if data.ends_with(b"\n") {
            data.pop();
        }
    }
    Ok(data)
}

fn read_script(path: &PathBuf) -> Result<String, Fail> {
    let mut buf = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut buf).map_err(|e| usage(format!("stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

#[allow(clippy::too_many_arguments)]
fn run(
    problem: Problem,
    inputs: &[PathBuf],
    script: Option<&PathBuf>,
    json: bool,
    oracle_check: bool,
    seed: u64,
    raw: bool,
    tuning: &Tuning,
) -> Result<(), Fail> {
    if inputs.len() != problem.inputs() {
        return Err(usage(format!("{problem:?} takes {} input file(s), got {}", problem.inputs(), inputs.len())));
    }
    let s = read_input(&inputs[0], raw)?;
    let t = if problem == Problem::Lcs { read_input(&inputs[1], raw)? } else { Vec::new() };
    let src = script.map(read_script).transpose()?.unwrap_or_default();
    let lines = script::parse(&src, problem == Problem::Lcs).map_err(|e| usage(format!("script line {}: {}", e.line, e.msg)))?;

    let mut plain = Plain { s, t };
    let mut sess = Session::new(problem, &plain.s, &plain.t, tuning.kappa, tuning.mode(), seed).map_err(|e| usage(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let stdout = std::io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let mut emit = |op: &str, step: usize, rec: &problem::Record, sess: &Session, plain: &Plain| -> Result<(), Fail> {
        let line = if json { rec.json(problem, op).to_string() } else { rec.text(problem) };
        writeln!(out, "{line}").map_err(|e| Fail(1, e.to_string()))?;
        if oracle_check {
            if plain.s.len().max(plain.t.len()) > oracle::LIMIT {
                return Err(usage(format!("--oracle-check supports strings up to {} bytes", oracle::LIMIT)));
            }
            if let Err(msg) = cross_check(problem, plain, rec, sess, &mut rng) {
                out.flush().ok();
                return Err(Fail(3, format!("oracle mismatch at step {step}: {msg}")));
            }
        }
        Ok(())
    };

    emit("init", 0, &sess.answer(), &sess, &plain)?;
    for (step, l) in lines.iter().enumerate() {
        if !plain.valid(&l.op) {
            return Err(usage(format!(
                "script line {}: position {} out of range (length {})",
                l.line,
                l.op.pos,
                plain.len(l.op.target)
            )));
        }
        plain.apply(&l.op);
        let rec = sess.edit(&l.op).map_err(|e| usage(format!("script line {}: {e}", l.line)))?;
        emit(&l.text, step + 1, &rec, &sess, &plain)?;
    }
    out.flush().map_err(|e| Fail(1, e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Command::Run { problem, inputs, script, json, oracle_check, seed, raw, tuning } => {
            run(*problem, inputs, script.as_ref(), *json, *oracle_check, *seed, *raw, tuning)
        }
        Command::Bench { problem, n, edits, alphabet, seed, max_n, no_timing, tuning } => {
            if n > max_n {
                Err(usage(format!("n = {n} exceeds --max-n {max_n}")))
            } else {
                let cfg = BenchConfig {
                    problem: *problem,
                    n: *n,
                    edits: *edits,
                    alphabet: *alphabet,
                    seed: *seed,
                    kappa: tuning.kappa,
                    mode: tuning.mode(),
                    timing: !no_timing,
                };
                let stdout = std::io::stdout();
                let mut out = BufWriter::new(stdout.lock());
                bench::bench(&cfg, &mut out).and_then(|_| out.flush().map_err(|e| e.to_string())).map_err(|m| Fail(1, m))
            }
        }
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
