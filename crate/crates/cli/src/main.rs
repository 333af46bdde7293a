use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use parity_forge::circuit::parse_angle;
use parity_forge::encoding::build_encoder;
use parity_forge::generating_sets::{minimal_parity, theorem1_check};
use parity_forge::simulator::{apply_circuit, exact_pauli_rotation, overlap};
use parity_forge::{
    build_generating_set, build_resource_graph, canonical_gflow, closure, emit_circuit,
    prop1_compile, theorem1_compile, theorem2_scan, verify_gflow, witness_sequence, Circuit, Error,
    ParitySet, PauliVector, Result, StateVector,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

const VERIFY_TOLERANCE: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "parity-forge",
    version,
    about = "Parity-set universality, compilation and verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Prop1,
    Theorem1,
}

#[derive(Subcommand)]
enum Command {
    /// Check a parity set against the sufficient universality conditions.
    Check {
        #[arg(long)]
        parity: PathBuf,
    },
    /// Close single-qubit generators plus a parity set under the adjoint map.
    Closure {
        #[arg(long)]
        parity: PathBuf,
        /// Pauli string to produce a generator sequence for, e.g. XYZI.
        #[arg(long)]
        witness: Option<String>,
    },
    /// Show that no single extra Pauli makes odd-n single-qubit rotations universal.
    Theorem2 {
        #[arg(long)]
        n: usize,
    },
    /// Compile exp(-i angle P) into a generator sequence and optionally a circuit.
    Compile {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        target: String,
        #[arg(long, allow_hyphen_values = true)]
        angle: String,
        #[arg(long, value_enum, default_value = "prop1")]
        mode: Mode,
        /// Parity set for theorem1 mode; defaults to the minimal set.
        #[arg(long)]
        parity: Option<PathBuf>,
        /// Write the emitted circuit as text.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Compare a circuit with exp(-i angle P) on random states.
    Verify {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        target: String,
        #[arg(long, allow_hyphen_values = true)]
        angle: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        trials: usize,
    },
    /// Write the CNOT encoder for a parity set.
    Encode {
        #[arg(long)]
        parity: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the MBQC resource graph and its canonical gflow.
    Gflow {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        verify: bool,
        /// Write the open graph as JSON.
        #[arg(long)]
        export: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::NotFound(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

fn load_parity(path: &Path) -> Result<ParitySet> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

fn parse_target(s: &str, n: Option<usize>) -> Result<PauliVector> {
    let t: PauliVector = s.parse()?;
    if let Some(n) = n {
        if t.n() != n {
            return Err(Error::InvalidInput(format!(
                "target {s} has {} letters, expected {n}",
                t.n()
            )));
        }
    }
    if t.is_zero() {
        return Err(Error::InvalidInput(
            "target must not be the identity".into(),
        ));
    }
    Ok(t)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn run(cmd: Command) -> Result<Value> {
    match cmd {
        Command::Check { parity } => Ok(to_json(&theorem1_check(&load_parity(&parity)?))),
        Command::Closure { parity, witness } => {
            let p = load_parity(&parity)?;
            let r = closure(&build_generating_set(&p).vectors())?;
            let mut out = json!({
                "n": p.n(),
                "reachable_count": r.len(),
                "universal": r.universal(),
            });
            if let Some(w) = witness {
                let t = parse_target(&w, Some(p.n()))?;
                let seq: Vec<String> = witness_sequence(&r, &t)?
                    .iter()
                    .map(|v| v.to_string())
                    .collect();
                out["witness"] = json!(seq);
            }
            Ok(out)
        }
        Command::Theorem2 { n } => Ok(to_json(&theorem2_scan(n)?)),
        Command::Compile {
            n,
            target,
            angle,
            mode,
            parity,
            emit,
        } => {
            let t = parse_target(&target, Some(n))?;
            let theta = parse_angle(&angle)?;
            let c = match mode {
                Mode::Prop1 => {
                    if parity.is_some() {
                        return Err(Error::InvalidInput(
                            "--parity applies to theorem1 mode".into(),
                        ));
                    }
                    prop1_compile(n, &t, theta)?
                }
                Mode::Theorem1 => {
                    let p = match parity {
                        Some(path) => load_parity(&path)?,
                        None => minimal_parity(n, None)?,
                    };
                    if p.n() != n {
                        return Err(Error::InvalidInput(format!(
                            "parity set has n = {}, expected {n}",
                            p.n()
                        )));
                    }
                    theorem1_compile(&p, &t, theta)?
                }
            };
            let sequence: Vec<String> = c
                .sequence
                .elements()
                .iter()
                .map(|g| g.to_string())
                .collect();
            let mut out = json!({
                "target": t.to_string(),
                "angle": theta,
                "sequence": sequence,
                "parity_uses": c.parity_uses,
            });
            if let Some(path) = emit {
                let circuit = emit_circuit(&c)?;
                write(&path, &circuit.to_text())?;
                out["gates"] = json!(circuit.len());
                out["entangling_gates"] = json!(circuit.entangling_count());
            }
            Ok(out)
        }
        Command::Verify {
            circuit,
            target,
            angle,
            seed,
            trials,
        } => {
            let c: Circuit = read(&circuit)?.parse()?;
            let t = parse_target(&target, Some(c.num_qubits()))?;
            let theta = parse_angle(&angle)?;
            if trials == 0 {
                return Err(Error::InvalidInput("trials must be positive".into()));
            }
            let axis = t.to_pauli_string();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut worst = f64::INFINITY;
            for _ in 0..trials {
                let psi = StateVector::random_with(c.num_qubits(), &mut rng)?;
                let got = apply_circuit(&psi, &c)?;
                let want = exact_pauli_rotation(&psi, &axis, theta)?;
                let o = overlap(&got, &want)
                    .ok_or_else(|| Error::Internal("overlap of a zero vector".into()))?;
                worst = worst.min(o);
            }
            Ok(json!({
                "pass": worst >= 1.0 - VERIFY_TOLERANCE,
                "min_overlap": worst,
                "trials": trials,
                "seed": seed,
            }))
        }
        Command::Encode { parity, out } => {
            let p = load_parity(&parity)?;
            let c = build_encoder(&p);
            write(&out, &c.to_text())?;
            Ok(json!({
                "n": p.n(),
                "k": p.len(),
                "wires": c.num_qubits(),
                "cnots": c.len(),
            }))
        }
        Command::Gflow {
            n,
            l,
            verify,
            export,
        } => {
            let g = build_resource_graph(n, l)?;
            let f = canonical_gflow(n, l)?;
            if let Some(path) = export {
                write(
                    &path,
                    &serde_json::to_string_pretty(&g).expect("serializable"),
                )?;
            }
            let mut out = json!({
                "n": n,
                "l": l,
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "gflow": to_json(&f),
            });
            if verify {
                out["verification"] = to_json(&verify_gflow(&g, &f)?);
            }
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            println!(
                "{}",
                json!({"error": {"kind": e.kind(), "message": e.to_string()}})
            );
            ExitCode::from(1)
        }
    }
}
