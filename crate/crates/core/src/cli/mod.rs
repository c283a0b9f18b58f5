//! The `slimq` command line. Exit codes: 0 success, 1 usage, 2 data or
//! verification failure, 3 synthesis budget not met.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::builder::{BuilderMode, LayoutSidecar, SboxCircuits, SlimBuilder};
use crate::cipher::{decrypt, encrypt, kat_generate, verify_kat, Block32, KeyState80, MasterKey80};
use crate::circuit::{emit_gatelist, emit_openqasm2, parse_gatelist, CostModel, GateCounts};
use crate::perm::Perm16;
use crate::report::{paper_checks, Components, ReportDocument};
use crate::sim::apply_gates;
use crate::synth::{synthesize, verify, SearchBudget, SynthOutcome, SynthVerdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "slimq",
    version,
    about = "SLIM cipher reference, reversible circuits and resource reports"
)]
pub struct Cli {
    /// Gate list for the 4-wire S-box circuit (default: bundled)
    #[arg(long, global = true)]
    sbox: Option<PathBuf>,
    /// Gate list for the 4-wire inverse S-box circuit (default: bundled)
    #[arg(long, global = true)]
    sbox_inv: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Functional,
    Mirrored,
    Ancilla,
}

impl From<Mode> for BuilderMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Functional => BuilderMode::Functional,
            Mode::Mirrored => BuilderMode::Mirrored,
            Mode::Ancilla => BuilderMode::Ancilla,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CircuitFormat {
    Gatelist,
    Qasm,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ComponentSource {
    Built,
    Published,
}

fn key_arg(s: &str) -> Result<MasterKey80, String> {
    MasterKey80::from_hex(s).map_err(|e| e.to_string())
}

fn block_arg(s: &str) -> Result<Block32, String> {
    Block32::from_hex(s).map_err(|e| e.to_string())
}

fn table_arg(s: &str) -> Result<Perm16, String> {
    Perm16::from_hex(s).map_err(|e| e.to_string())
}

fn counts_arg(s: &str) -> Result<GateCounts, String> {
    let parts: Vec<u64> = s
        .split(',')
        .map(|p| p.trim().parse::<u64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [x, cx, ccx] => Ok(GateCounts::new(x, cx, ccx)),
        _ => Err("expected NOT,CNOT,CCNOT".to_string()),
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encrypt one block
    Encrypt {
        #[arg(value_parser = key_arg)]
        key: MasterKey80,
        #[arg(value_parser = block_arg)]
        block: Block32,
    },
    /// Decrypt one block
    Decrypt {
        #[arg(value_parser = key_arg)]
        key: MasterKey80,
        #[arg(value_parser = block_arg)]
        block: Block32,
    },
    /// Build a full cipher circuit and write it with a JSON layout sidecar
    Build {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "gatelist")]
        format: CircuitFormat,
        /// Append SWAPs so outputs sit on the input wires
        #[arg(long)]
        materialize: bool,
    },
    /// Resource ledger, measured counts and depth summary
    Resources {
        #[arg(long, value_enum, default_value = "mirrored")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
        /// Where per-component counts come from
        #[arg(long, value_enum, default_value = "built")]
        components: ComponentSource,
        /// Compare against the published figures; exit 2 on any mismatch
        #[arg(long)]
        check_paper: bool,
    },
    /// Run a gate-list circuit on (key, plaintext) using its layout sidecar
    Simulate {
        circuit: PathBuf,
        /// Sidecar path (default: <circuit>.layout.json)
        #[arg(long)]
        layout: Option<PathBuf>,
        #[arg(long, value_parser = key_arg, required_unless_present = "random")]
        key: Option<MasterKey80>,
        #[arg(long, value_parser = block_arg, required_unless_present = "random")]
        pt: Option<Block32>,
        /// Run this many seeded random cases instead of one
        #[arg(long, conflicts_with_all = ["key", "pt"])]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also compute the classical reference and compare
        #[arg(long)]
        check: bool,
    },
    /// Search for a 4-wire NCT circuit realising a 16-entry table
    Synth {
        #[arg(value_parser = table_arg)]
        table: Perm16,
        #[arg(long, default_value_t = 27)]
        max_cost: u64,
        #[arg(long, default_value_t = 11)]
        max_gates: usize,
        /// Exact multiset NOT,CNOT,CCNOT (overrides cost and length bounds)
        #[arg(long, value_parser = counts_arg)]
        exact: Option<GateCounts>,
        /// Wall-clock limit in seconds
        #[arg(long)]
        time_limit: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a deterministic known-answer-test file
    Kat {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a known-answer-test file
    KatVerify { file: PathBuf },
}

struct Failure {
    code: i32,
    message: String,
}

fn data(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_DATA,
        message: message.into(),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| data(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| data(format!("{}: {e}", path.display())))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "slimq: {}", f.message);
            f.code
        }
    }
}

fn load_sboxes(cli: &Cli) -> Result<SboxCircuits, Failure> {
    if cli.sbox.is_none() && cli.sbox_inv.is_none() {
        return Ok(SboxCircuits::bundled());
    }
    let bundled = SboxCircuits::bundled();
    let fwd = match &cli.sbox {
        Some(p) => read(p)?,
        None => emit_gatelist(bundled.forward()),
    };
    let inv = match &cli.sbox_inv {
        Some(p) => read(p)?,
        None => emit_gatelist(bundled.inverse()),
    };
    SboxCircuits::from_gatelists(&fwd, &inv).map_err(|e| data(e.to_string()))
}

fn sidecar_path(circuit: &Path) -> PathBuf {
    let mut s = circuit.as_os_str().to_owned();
    s.push(".layout.json");
    PathBuf::from(s)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let io = |e: std::io::Error| data(e.to_string());
    match &cli.command {
        Command::Encrypt { key, block } => {
            writeln!(out, "{}", encrypt(*block, *key)).map_err(io)?;
        }
        Command::Decrypt { key, block } => {
            writeln!(out, "{}", decrypt(*block, *key)).map_err(io)?;
        }
        Command::Build {
            mode,
            out: path,
            format,
            materialize,
        } => {
            let sboxes = load_sboxes(&cli)?;
            let mut sc = SlimBuilder::new(&sboxes)
                .build_cipher((*mode).into())
                .map_err(|e| data(e.to_string()))?;
            if *materialize {
                sc = sc.materialized();
            }
            let text = match format {
                CircuitFormat::Gatelist => emit_gatelist(&sc.circuit),
                CircuitFormat::Qasm => emit_openqasm2(&sc.circuit),
            };
            write(path, &text)?;
            let side = sidecar_path(path);
            write(&side, &sc.sidecar().to_json())?;
            writeln!(
                out,
                "wrote {} ({} qubits, {} gates) and {}",
                path.display(),
                sc.wires(),
                sc.circuit.len(),
                side.display()
            )
            .map_err(io)?;
        }
        Command::Resources {
            mode,
            format,
            components,
            check_paper,
        } => {
            let sboxes = load_sboxes(&cli)?;
            let source = match components {
                ComponentSource::Built => Components::Built,
                ComponentSource::Published => Components::Published,
            };
            let doc = ReportDocument::new(&sboxes, (*mode).into(), source)
                .map_err(|e| data(e.to_string()))?;
            let text = match format {
                ReportFormat::Text => doc.to_text(),
                ReportFormat::Json => doc.to_json(),
                ReportFormat::Csv => doc.to_csv(),
            }
            .map_err(|e| data(e.to_string()))?;
            out.write_all(text.as_bytes()).map_err(io)?;
            if *check_paper {
                let checks = paper_checks(&sboxes, source);
                let mut failed = 0;
                writeln!(out).map_err(io)?;
                for c in &checks {
                    let tag = if c.ok { "ok" } else { "MISMATCH" };
                    writeln!(
                        out,
                        "check {:<24} {:<8} expected {} got {}",
                        c.item, tag, c.expected, c.got
                    )
                    .map_err(io)?;
                    failed += usize::from(!c.ok);
                }
                if failed > 0 {
                    return Err(data(format!(
                        "{failed} of {} published figures not reproduced",
                        checks.len()
                    )));
                }
            }
        }
        Command::Simulate {
            circuit,
            layout,
            key,
            pt,
            random,
            seed,
            check,
        } => {
            let c = parse_gatelist(&read(circuit)?)
                .map_err(|e| data(format!("{}: {e}", circuit.display())))?;
            let side_path = layout.clone().unwrap_or_else(|| sidecar_path(circuit));
            let side = LayoutSidecar::from_json(&read(&side_path)?)
                .map_err(|e| data(format!("{}: {e}", side_path.display())))?;
            if side.qubits != c.wires() {
                return Err(data(format!(
                    "layout declares {} qubits but the circuit has {}",
                    side.qubits,
                    c.wires()
                )));
            }
            let cases: Vec<(MasterKey80, Block32)> = match random {
                Some(n) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    (0..*n)
                        .map(|_| (MasterKey80::random(&mut rng), Block32::random(&mut rng)))
                        .collect()
                }
                None => vec![(
                    key.expect("required by clap"),
                    pt.expect("required by clap"),
                )],
            };
            let mut mismatches = 0;
            for (k, p) in &cases {
                let mut st = side.input.encode(c.wires(), *p, KeyState80::from_key(*k));
                apply_gates(c.gates(), &mut st);
                let ct = side.output.read_block(&st);
                if *check {
                    let want = side.mode.reference_encrypt(*p, *k);
                    let ok = want == ct;
                    mismatches += usize::from(!ok);
                    let tag = if ok { "ok" } else { "MISMATCH" };
                    writeln!(out, "{k} {p} {ct} {tag} (reference {want})").map_err(io)?;
                } else {
                    writeln!(out, "{ct}").map_err(io)?;
                }
            }
            if *check {
                writeln!(
                    out,
                    "{} of {} cases agree",
                    cases.len() - mismatches,
                    cases.len()
                )
                .map_err(io)?;
                if mismatches > 0 {
                    return Err(data(format!(
                        "{mismatches} disagreement(s) with the classical reference"
                    )));
                }
            }
        }
        Command::Synth {
            table,
            max_cost,
            max_gates,
            exact,
            time_limit,
            out: path,
        } => {
            let mut budget = match exact {
                Some(c) => SearchBudget::exact(*c),
                None => SearchBudget::new(*max_cost, *max_gates),
            };
            if let Some(s) = time_limit {
                budget = budget.with_time_limit(Duration::from_secs(*s));
            }
            let outcome = synthesize(table, &budget).map_err(|e| Failure {
                code: EXIT_USAGE,
                message: e.to_string(),
            })?;
            let stats = outcome.stats();
            writeln!(out, "target        {}", table.to_hex()).map_err(io)?;
            writeln!(
                out,
                "search        {} suffixes stored, {} prefixes probed, {} ms{}",
                stats.stored_suffixes,
                stats.probed_prefixes,
                stats.elapsed_ms,
                if stats.timed_out { ", timed out" } else { "" }
            )
            .map_err(io)?;
            let print = |out: &mut dyn Write, s: &crate::synth::Synthesis| {
                writeln!(
                    out,
                    "multiset      NOT {} CNOT {} CCNOT {} | gates {} | cost {}",
                    s.counts.x,
                    s.counts.cx,
                    s.counts.ccx,
                    s.circuit.len(),
                    s.counts.cost(&CostModel::default())
                )
            };
            match &outcome {
                SynthOutcome::Found { synthesis, .. } => {
                    print(out, synthesis).map_err(io)?;
                    let verdict =
                        verify(&synthesis.circuit, table).map_err(|e| data(e.to_string()))?;
                    if verdict != SynthVerdict::Verified {
                        return Err(data(format!(
                            "found circuit failed verification: {verdict:?}"
                        )));
                    }
                    writeln!(out, "verified      16/16 inputs").map_err(io)?;
                    let text = emit_gatelist(&synthesis.circuit);
                    match path {
                        Some(p) => write(p, &text)?,
                        None => out.write_all(text.as_bytes()).map_err(io)?,
                    }
                }
                SynthOutcome::BudgetNotMet { best, .. } => {
                    writeln!(
                        out,
                        "budget-not-met: no circuit with the requested multiset"
                    )
                    .map_err(io)?;
                    if let Some(b) = best {
                        write!(out, "best found    ").map_err(io)?;
                        print(out, b).map_err(io)?;
                    }
                    return Ok(EXIT_BUDGET);
                }
                SynthOutcome::NotFound { .. } => {
                    writeln!(
                        out,
                        "budget-not-met: no circuit within cost {} and {} gates",
                        budget.max_cost, budget.max_gates
                    )
                    .map_err(io)?;
                    return Ok(EXIT_BUDGET);
                }
            }
        }
        Command::Kat {
            count,
            seed,
            out: path,
        } => {
            let text = kat_generate(*count, *seed).map_err(|e| Failure {
                code: EXIT_USAGE,
                message: e.to_string(),
            })?;
            match path {
                Some(p) => write(p, &text)?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
        }
        Command::KatVerify { file } => {
            let text = read(file)?;
            let failures =
                verify_kat(&text).map_err(|e| data(format!("{}: {e}", file.display())))?;
            let total = crate::cipher::parse_kat(&text)
                .map(|r| r.len())
                .unwrap_or(0);
            for f in &failures {
                writeln!(
                    out,
                    "FAIL line {}: key {} pt {} expected {} computed {}",
                    f.line, f.record.key, f.record.pt, f.record.ct, f.computed
                )
                .map_err(io)?;
            }
            writeln!(out, "{} of {} records pass", total - failures.len(), total).map_err(io)?;
            if !failures.is_empty() {
                return Ok(EXIT_DATA);
            }
        }
    }
    Ok(EXIT_OK)
}
