use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use eaqsc::circuit::Circuit;
use eaqsc::code::{random_code, CheckMatrix, CodeParams};
use eaqsc::decoding::{coset_probability, demld, emld, ChannelModel, DecodeResult, Syndrome};
use eaqsc::synthesis::{select_block_size, synth_naive_encoder, synthesize, verify_encoder, DEFAULT_ALPHA};
use eaqsc::Error;
use rayon::prelude::*;
use serde_json::json;

#[derive(Parser)]
#[command(name = "eaqsc", version, about = "Encoding circuits and exact decoders for stabilizer codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesise an encoding circuit; the report goes to stdout as JSON.
    Synth {
        infile: PathBuf,
        outfile: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
        /// One gate per nonzero entry instead of blocked elimination.
        #[arg(long)]
        naive: bool,
    },
    /// Check that a circuit encodes the raw matrix into the given code.
    Verify { matrix: PathBuf, circuit: PathBuf },
    /// Blocked against naive gate counts, as CSV.
    Bench {
        /// Comma-separated n:k:c triples.
        #[arg(long, default_value = "64:32:0,128:64:0,256:128:0")]
        sizes: String,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_ALPHA)]
        alpha: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exact decoding of one syndrome.
    Decode {
        matrix: PathBuf,
        #[arg(long)]
        syndrome: String,
        #[arg(long, value_enum, default_value_t = Channel::Xz)]
        channel: Channel,
        #[arg(long, default_value_t = 0.1)]
        p: f64,
        #[arg(long, value_enum, default_value_t = Mode::Emld)]
        mode: Mode,
    },
    /// Probability of the coset of an error, `x..x|z..z`.
    Coset {
        matrix: PathBuf,
        #[arg(long)]
        error: String,
        #[arg(long, value_enum, default_value_t = Channel::Xz)]
        channel: Channel,
        #[arg(long, default_value_t = 0.1)]
        p: f64,
    },
    /// Write a random valid check matrix (stdout when no file is given).
    Randcode {
        n: usize,
        k: usize,
        c: usize,
        outfile: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rank and pairing checks of a check-matrix file.
    Validate { matrix: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Channel {
    Xz,
    Depol,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Emld,
    Demld,
}

/// A verification that ran and came out negative (exit 1).
#[derive(Debug)]
struct Failed(String);

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failed {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Failed>().is_some() {
        return 1;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::ResourceGuard(_)) => 3,
        Some(Error::Audit { .. }) => 1,
        _ => 2,
    }
}

fn read_matrix(path: &Path) -> anyhow::Result<CheckMatrix> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    CheckMatrix::parse(&text).map_err(|e| anyhow::Error::new(e).context(path.display().to_string()))
}

fn read_circuit(path: &Path) -> anyhow::Result<Circuit> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Circuit::parse(&text).map_err(|e| anyhow::Error::new(e).context(path.display().to_string()))
}

fn channel(kind: Channel, p: f64) -> anyhow::Result<ChannelModel> {
    Ok(match kind {
        Channel::Xz => ChannelModel::xz(p)?,
        Channel::Depol => ChannelModel::depolarizing(p)?,
    })
}

fn parse_sizes(text: &str) -> anyhow::Result<Vec<CodeParams>> {
    text.split(',')
        .map(|triple| {
            let parts: Vec<&str> = triple.trim().split(':').collect();
            if parts.len() != 3 {
                bail!("size {triple:?} is not n:k:c");
            }
            let nums = parts
                .iter()
                .map(|s| s.parse::<usize>().map_err(|_| anyhow!("size {triple:?} is not n:k:c")))
                .collect::<anyhow::Result<Vec<_>>>()?;
            Ok(CodeParams::new(nums[0], nums[1], nums[2])?)
        })
        .collect()
}

fn cmd_synth(infile: &Path, outfile: &Path, alpha: f64, naive: bool) -> anyhow::Result<()> {
    let h = read_matrix(infile)?;
    let result = if naive {
        synth_naive_encoder(&h)?
    } else {
        synthesize(&h, alpha)?
    };
    fs::write(outfile, result.circuit.emit()).with_context(|| format!("writing {}", outfile.display()))?;
    let p = h.params();
    let line = json!({
        "n": p.n(),
        "k": p.k(),
        "c": p.c(),
        "mode": if naive { "naive" } else { "blocked" },
        "circuit": outfile.display().to_string(),
        "report": result.report,
    });
    println!("{line}");
    Ok(())
}

fn cmd_verify(matrix: &Path, circuit: &Path) -> anyhow::Result<()> {
    let h = read_matrix(matrix)?;
    let c = read_circuit(circuit)?;
    if verify_encoder(&h, &c)? {
        println!("PASS");
        Ok(())
    } else {
        println!("FAIL");
        Err(Failed("circuit does not encode the raw matrix into the target code".into()).into())
    }
}

struct BenchRow {
    params: CodeParams,
    trial: usize,
    m: usize,
    blocked: usize,
    naive: usize,
    seconds: f64,
}

fn cmd_bench(sizes: &str, trials: usize, alpha: f64, seed: u64) -> anyhow::Result<()> {
    let sizes = parse_sizes(sizes)?;
    let jobs: Vec<(usize, CodeParams, usize)> = sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &p)| (0..trials).map(move |t| (i, p, t)))
        .collect();
    let mut rows: Vec<(usize, BenchRow)> = jobs
        .into_par_iter()
        .map(|(i, p, trial)| -> anyhow::Result<(usize, BenchRow)> {
            let h = random_code(p, seed.wrapping_add(trial as u64));
            let start = Instant::now();
            let blocked = synthesize(&h, alpha)?;
            let seconds = start.elapsed().as_secs_f64();
            let naive = synth_naive_encoder(&h)?;
            Ok((
                i,
                BenchRow {
                    params: p,
                    trial,
                    m: select_block_size(p.n(), alpha)?,
                    blocked: blocked.report.counts.total_without_swaps(),
                    naive: naive.report.counts.total_without_swaps(),
                    seconds,
                },
            ))
        })
        .collect::<anyhow::Result<_>>()?;
    rows.sort_by_key(|(i, r)| (*i, r.trial));
    let mut out = std::io::stdout().lock();
    writeln!(out, "n,k,c,trial,m,gate_total,gate_total_naive,ratio_to_bound,wall_time_s")?;
    for (_, r) in rows {
        let p = r.params;
        let bound = (p.n() * (p.n() - p.k() + p.c())) as f64 / (p.n() as f64).log2();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{:.6},{:.6}",
            p.n(),
            p.k(),
            p.c(),
            r.trial,
            r.m,
            r.blocked,
            r.naive,
            r.blocked as f64 / bound,
            r.seconds
        )?;
    }
    Ok(())
}

fn decode_json(r: &DecodeResult, kind: Channel) -> serde_json::Value {
    json!({
        "e": CheckMatrix::format_row(&r.e),
        "weight": r.weight,
        "metric": match kind { Channel::Xz => "wt", Channel::Depol => "gw" },
        "coset_probability": r.coset_probability,
    })
}

fn cmd_decode(matrix: &Path, syndrome: &str, kind: Channel, p: f64, mode: Mode) -> anyhow::Result<()> {
    let h = read_matrix(matrix)?;
    let ch = channel(kind, p)?;
    let y = Syndrome::parse(syndrome).context("parsing --syndrome")?;
    let r = match mode {
        Mode::Emld => emld(&h, &y, &ch)?,
        Mode::Demld => demld(&h, &y, &ch)?,
    };
    println!("{}", decode_json(&r, kind));
    Ok(())
}

fn cmd_coset(matrix: &Path, error: &str, kind: Channel, p: f64) -> anyhow::Result<()> {
    let h = read_matrix(matrix)?;
    let ch = channel(kind, p)?;
    let e = CheckMatrix::parse_row(error).context("parsing --error")?;
    let prob = coset_probability(&e, &h, &ch)?;
    println!("{}", json!({ "e": error, "coset_probability": prob }));
    Ok(())
}

fn cmd_randcode(n: usize, k: usize, c: usize, outfile: Option<&Path>, seed: u64) -> anyhow::Result<()> {
    let text = random_code(CodeParams::new(n, k, c)?, seed).emit();
    match outfile {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn cmd_validate(matrix: &Path) -> anyhow::Result<()> {
    let h = read_matrix(matrix)?;
    let report = h.validate();
    println!(
        "{}",
        json!({
            "rank": report.rank,
            "full_rank": report.full_rank,
            "pairing": report.pairing,
            "standard_form": report.identities.is_some(),
            "identities": report.identities,
            "passed": report.passed(),
        })
    );
    if report.passed() {
        Ok(())
    } else {
        Err(Failed("check matrix is not valid".into()).into())
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Synth { infile, outfile, alpha, naive } => cmd_synth(&infile, &outfile, alpha, naive),
        Command::Verify { matrix, circuit } => cmd_verify(&matrix, &circuit),
        Command::Bench { sizes, trials, alpha, seed } => cmd_bench(&sizes, trials, alpha, seed),
        Command::Decode { matrix, syndrome, channel, p, mode } => cmd_decode(&matrix, &syndrome, channel, p, mode),
        Command::Coset { matrix, error, channel, p } => cmd_coset(&matrix, &error, channel, p),
        Command::Randcode { n, k, c, outfile, seed } => cmd_randcode(n, k, c, outfile.as_deref(), seed),
        Command::Validate { matrix } => cmd_validate(&matrix),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
