use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use eaqc::channel::ChannelParams;
use eaqc::clifford::{group_preserved, logical_action, logical_operators, stabilizer_matrix, Transversal};
use eaqc::decoder::{DecoderConfig, DecoderKind};
use eaqc::eacode::{build_theorem5, Family};
use eaqc::girth::{girth_bfs, has_four_cycle, has_six_cycle, Girth};
use eaqc::harness::{burst_oracle, run_trials, sweep_code, write_csv, CodeSpec, SimConfig, SweepConfig};
use eaqc::models::Scale;
use eaqc::ModelMatrix;

#[derive(Parser)]
#[command(name = "eaqc", version, about = "Entanglement-assisted quasi-cyclic quantum LDPC codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code and print its model matrices as JSON.
    Construct {
        #[command(flatten)]
        code: CodeArgs,
        /// Also write hx, hz, hex and hez as '0'/'1' text files into this directory.
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print n, k, c, ranks and a girth floor as JSON.
    Params {
        #[command(flatten)]
        code: CodeArgs,
        /// BFS cap for the girth floor.
        #[arg(long, default_value_t = 8)]
        girth_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Model-level 4/6-cycle tests and the BFS girth of the unassisted graph.
    Girth {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 8)]
        girth_cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a transversal operator on the stabilizer group for prime p.
    Transversal {
        #[arg(long)]
        p: u64,
        /// hadamard-swap, s-cz or h-s-cz.
        #[arg(long, value_parser = parse_transversal)]
        op: Transversal,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo logical error rate at one channel point.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, default_value_t = 0.03)]
        pd: f64,
        #[arg(long, default_value_t = 0.0)]
        eta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Logical error rates over a grid of pd and eta, as CSV.
    Sweep {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        pd: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        eta: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive window-burst check against a minimum-weight decoder.
    BurstCheck {
        #[command(flatten)]
        code: CodeArgs,
        /// Window length.
        #[arg(long, default_value_t = 3)]
        burst: usize,
        /// Prior used by the message-passing decoder.
        #[arg(long, default_value_t = 0.03)]
        pd: f64,
        #[arg(long, default_value = "quat")]
        decoder: DecoderKind,
        #[arg(long, default_value_t = 100)]
        lmax: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Thm5,
    Thm6,
    Thm7,
    Thm8,
    Thm9,
    Thm10,
}

#[derive(Args)]
struct CodeArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    l1: Option<usize>,
    #[arg(long)]
    l2: Option<usize>,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long)]
    w: Option<u64>,
    /// Comma-separated exponent set for thm9/thm10.
    #[arg(long, value_delimiter = ',')]
    set: Vec<u32>,
    /// Allow thm9/thm10 sets below the proven exponent range.
    #[arg(long)]
    reduced: bool,
}

#[derive(Args)]
struct SimArgs {
    #[arg(long, default_value = "quat")]
    decoder: DecoderKind,
    #[arg(long, default_value_t = 100)]
    lmax: usize,
    #[arg(long, default_value_t = 5000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_transversal(s: &str) -> std::result::Result<Transversal, String> {
    Transversal::parse(s).ok_or_else(|| format!("unknown operator '{s}' (hadamard-swap, s-cz, h-s-cz)"))
}

fn need<T>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.with_context(|| format!("--{flag} is required for {family}"))
}

impl CodeArgs {
    fn spec(&self) -> Result<CodeSpec> {
        let scale = if self.reduced { Scale::Reduced } else { Scale::Full };
        let set = || -> Result<Vec<u32>> {
            if self.set.is_empty() {
                bail!("--set is required for thm9/thm10");
            }
            Ok(self.set.clone())
        };
        Ok(match self.family {
            FamilyArg::Thm5 => CodeSpec::Thm5 {
                p: need(self.p, "p", "thm5")?,
                l1: need(self.l1, "l1", "thm5")?,
                l2: need(self.l2, "l2", "thm5")?,
            },
            FamilyArg::Thm6 => CodeSpec::Thm6 {
                p: need(self.p, "p", "thm6")?,
                l1: need(self.l1, "l1", "thm6")?,
                l2: need(self.l2, "l2", "thm6")?,
            },
            FamilyArg::Thm7 => CodeSpec::Thm7 {
                p: need(self.p, "p", "thm7")?,
                l: need(self.l, "l", "thm7")? as usize,
            },
            FamilyArg::Thm8 => CodeSpec::Thm8 {
                l: need(self.l, "l", "thm8")?,
                w: need(self.w, "w", "thm8")?,
            },
            FamilyArg::Thm9 => CodeSpec::Thm9 { set: set()?, w: need(self.w, "w", "thm9")?, scale },
            FamilyArg::Thm10 => CodeSpec::Thm10 { set: set()?, w: need(self.w, "w", "thm10")?, scale },
        })
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_json<T: Serialize>(out: Option<&Path>, value: &T) -> Result<()> {
    emit(out, &(serde_json::to_string_pretty(value)? + "\n"))
}

/// All block rows of the models on top of each other, as seen by the unassisted graph.
fn stacked(models: &[(&str, ModelMatrix)]) -> Result<ModelMatrix> {
    let order = models[0].1.order();
    let rows = if models.len() == 2 && models[0].1 == models[1].1 {
        models[0].1.exponents().to_vec()
    } else {
        models.iter().flat_map(|(_, m)| m.exponents().to_vec()).collect()
    };
    Ok(ModelMatrix::new(order, rows)?)
}

/// Returns whether every verification in the command held.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Construct { code, dump, out } => {
            let spec = code.spec()?;
            let built = spec.build()?;
            let models: serde_json::Map<String, serde_json::Value> = spec
                .models()?
                .into_iter()
                .map(|(name, m)| Ok((name.to_string(), serde_json::to_value(m)?)))
                .collect::<Result<_>>()?;
            if let Some(dir) = dump {
                fs::create_dir_all(&dir)?;
                for (name, m) in [("hx", &built.hx), ("hz", &built.hz), ("hex", &built.hex), ("hez", &built.hez)] {
                    fs::write(dir.join(format!("{name}.txt")), m.to_text())?;
                }
            }
            emit_json(
                out.as_deref(),
                &json!({
                    "family": built.family,
                    "n": built.n,
                    "k": built.k,
                    "c": built.c,
                    "models": models,
                }),
            )?;
            Ok(true)
        }
        Command::Params { code, girth_cap, out } => {
            let built = code.spec()?.build()?;
            emit_json(out.as_deref(), &built.params(girth_cap))?;
            Ok(true)
        }
        Command::Girth { code, girth_cap, out } => {
            let spec = code.spec()?;
            let built = spec.build()?;
            let model = stacked(&spec.models()?)?;
            let four = has_four_cycle(&model);
            let six = has_six_cycle(&model);
            let bfs = girth_bfs(&built.unassisted_graph(), girth_cap.max(6));
            let model_level = if four { 4 } else if six { 6 } else { 0 };
            let consistent = match model_level {
                0 => bfs.exceeds(6),
                g => bfs == Girth::Exact(g),
            };
            let claimed = match spec.family() {
                Family::Thm5 | Family::Thm6 | Family::Thm7 => !four,
                _ => !four && !six,
            };
            emit_json(
                out.as_deref(),
                &json!({
                    "family": spec.family(),
                    "four_cycle": four,
                    "six_cycle": six,
                    "bfs_girth": bfs,
                    "consistent": consistent,
                    "family_claim_holds": claimed,
                }),
            )?;
            Ok(consistent && claimed)
        }
        Command::Transversal { p, op, out } => {
            let tableau = stabilizer_matrix(p)?;
            let after = tableau.conjugate(&op.gates(p)?)?;
            let preserved = group_preserved(&tableau, &after)?;
            let rho = (p as usize - 1) / 2;
            let code = build_theorem5(p, rho, rho)?;
            let basis = logical_operators(&code);
            let action = logical_action(&tableau, &basis, &op.gates(p)?);
            let (table, logical_ok) = match action {
                Ok(a) => (serde_json::to_value(&a.images)?, true),
                Err(e) => (json!(e.to_string()), false),
            };
            emit_json(
                out.as_deref(),
                &json!({
                    "p": p,
                    "operator": op.name(),
                    "preserved": preserved,
                    "logical_qubits": basis.len(),
                    "logical_action": table,
                }),
            )?;
            Ok(preserved && logical_ok)
        }
        Command::Simulate { code, sim, pd, eta, out } => {
            let built = code.spec()?.build()?;
            let cfg = SimConfig {
                channel: ChannelParams::new(pd, eta)?,
                decoder: sim.decoder,
                lmax: sim.lmax,
                trials: sim.trials,
                seed: sim.seed,
            };
            let r = run_trials(&built, &cfg)?;
            emit_json(
                out.as_deref(),
                &json!({
                    "family": built.family,
                    "n": built.n,
                    "k": built.k,
                    "c": built.c,
                    "pd": pd,
                    "eta": eta,
                    "decoder": sim.decoder,
                    "lmax": sim.lmax,
                    "seed": sim.seed,
                    "result": r,
                }),
            )?;
            Ok(true)
        }
        Command::Sweep { code, sim, pd, eta, out } => {
            let spec = code.spec()?;
            let built = spec.build()?;
            let cfg = SweepConfig {
                code: spec,
                pds: pd,
                etas: eta,
                decoder: sim.decoder,
                lmax: sim.lmax,
                trials: sim.trials,
                seed: sim.seed,
            };
            let rows = sweep_code(&built, &cfg)?;
            match out {
                Some(path) => write_csv(&rows, fs::File::create(&path)?)?,
                None => write_csv(&rows, std::io::stdout().lock())?,
            }
            Ok(true)
        }
        Command::BurstCheck { code, burst, pd, decoder, lmax, out } => {
            let built = code.spec()?.build()?;
            let cfg = DecoderConfig::new(decoder, lmax, pd)?;
            let report = burst_oracle(&built, burst, &cfg)?;
            emit_json(out.as_deref(), &report)?;
            Ok(report.all_correctable())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
