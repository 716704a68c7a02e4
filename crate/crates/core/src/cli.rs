//! `revarith` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::designs::{
    build_half, build_full, build_ripple, mode_to_ctrl, ripple_metrics_as_built,
    ripple_metrics_paper, DesignId, Mode, UnitKind,
};
use crate::error::Error;
use crate::gate::{gate_spec, GateKind};
use crate::netlist::{self, Circuit, CircuitBuilder};
use crate::quantum::{grouped_cost, search_decomposition, verify_decomposition};
use crate::report::paper_compare;
use crate::sim::{self, Assignment};
use crate::verify::{verify_ripple, Coverage};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "revarith", version, about = "Reversible adder/subtractor toolkit")]
struct Cli {
    /// Worker threads for sweeps and searches.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Tab-separated output where supported.
    #[arg(long, global = true)]
    tsv: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the gate catalog.
    Gates,
    /// Print a gate's truth table.
    Truth { gate: String },
    /// Generate a circuit as a .revnet netlist.
    Build {
        #[arg(long)]
        design: DesignId,
        #[arg(long, default_value_t = 8)]
        width: u32,
        /// Emit a single half or full unit instead of a ripple chain.
        #[arg(long, value_parser = parse_unit)]
        unit: Option<UnitKind>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate one input vector of a netlist file.
    Sim {
        #[arg(long)]
        file: PathBuf,
        /// Comma-separated name=bit pairs.
        #[arg(long, default_value = "")]
        set: String,
        /// Drive `ctrl` for this mode (the design is read from the circuit name).
        #[arg(long)]
        mode: Option<Mode>,
    },
    /// Check a ripple circuit against integer arithmetic.
    Verify {
        #[arg(long)]
        design: DesignId,
        #[arg(long)]
        width: u32,
        #[command(flatten)]
        coverage: CoverageArgs,
    },
    /// Print metrics of a ripple circuit.
    Metrics {
        #[arg(long)]
        design: DesignId,
        #[arg(long)]
        width: u32,
        /// Sum per-unit metrics, as the published tables do (default).
        #[arg(long, conflicts_with = "as_built")]
        paper_accounting: bool,
        /// Count the fused netlist.
        #[arg(long)]
        as_built: bool,
    },
    /// Show and check a gate's primitive decomposition.
    Decompose { gate: String },
    /// Brute-force the shortest primitive sequence for a gate.
    Search {
        gate: String,
        #[arg(long, default_value_t = 5)]
        max_len: usize,
    },
    /// Compare the primary outputs of two netlists.
    Equiv { file1: PathBuf, file2: PathBuf },
    /// Compare generated designs with the published tables.
    Compare {
        #[arg(long)]
        paper: bool,
    },
}

#[derive(Debug, Args)]
struct CoverageArgs {
    /// Enumerate every operand pair.
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    /// Number of random operand pairs per mode.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0, requires = "samples")]
    seed: u64,
}

fn parse_unit(s: &str) -> Result<UnitKind, String> {
    match s {
        "half" => Ok(UnitKind::Half),
        "full" => Ok(UnitKind::Full),
        _ => Err(format!("expected half or full, got {s}")),
    }
}

/// Failure while running a command, carrying its exit code.
struct Fail(i32, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(EXIT_USAGE, e.to_string())
    }
}

type CmdResult = Result<i32, Fail>;

pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    match &cli.command {
        Command::Gates => gates(cli.tsv, out),
        Command::Truth { gate } => truth(gate, cli.tsv, out),
        Command::Build {
            design,
            width,
            unit,
            out: path,
        } => build(*design, *width, *unit, path.as_ref(), out),
        Command::Sim { file, set, mode } => simulate(file, set, *mode, out),
        Command::Verify {
            design,
            width,
            coverage,
        } => verify(*design, *width, coverage, cli.jobs, out),
        Command::Metrics {
            design,
            width,
            as_built,
            ..
        } => metrics(*design, *width, *as_built, cli.tsv, out),
        Command::Decompose { gate } => decompose(gate, out),
        Command::Search { gate, max_len } => search(gate, *max_len, cli.jobs, out),
        Command::Equiv { file1, file2 } => equiv(file1, file2, out),
        Command::Compare { paper } => {
            if !paper {
                return Err(Fail(EXIT_USAGE, "compare needs --paper".to_string()));
            }
            compare(cli.tsv, out)
        }
    }
}

fn io(e: std::io::Error) -> Fail {
    Fail(EXIT_USAGE, e.to_string())
}

fn gate_arg(name: &str) -> Result<GateKind, Fail> {
    GateKind::from_name(name).ok_or_else(|| {
        Fail(
            EXIT_USAGE,
            format!("unknown gate {name} (expected NOT, FG, TOF, PG, F or TR)"),
        )
    })
}

fn mapping_text(kind: GateKind) -> &'static str {
    match kind {
        GateKind::Not => "P=A'",
        GateKind::Feynman => "P=A Q=A^B",
        GateKind::Toffoli => "P=A Q=B R=AB^C",
        GateKind::Peres => "P=A Q=A^B R=AB^C",
        GateKind::Fredkin => "P=A Q=A'B+AC R=AB+A'C",
        GateKind::Tr => "P=A Q=A^B R=AB'^C",
    }
}

fn gates(tsv: bool, out: &mut dyn Write) -> CmdResult {
    if tsv {
        writeln!(out, "gate\tmnemonic\tarity\tquantum_cost\tmapping").map_err(io)?;
    } else {
        writeln!(out, "{:<8} {:<4} {:>5} {:>4}  mapping", "gate", "mn", "arity", "qc").map_err(io)?;
    }
    for kind in GateKind::ALL {
        let spec = gate_spec(kind);
        if tsv {
            writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                kind.long_name(),
                kind.mnemonic(),
                spec.arity,
                spec.quantum_cost,
                mapping_text(kind)
            )
        } else {
            writeln!(
                out,
                "{:<8} {:<4} {:>5} {:>4}  {}",
                kind.long_name(),
                kind.mnemonic(),
                spec.arity,
                spec.quantum_cost,
                mapping_text(kind)
            )
        }
        .map_err(io)?;
    }
    Ok(EXIT_OK)
}

/// One gate on fresh lines named A, B, C with outputs P, Q, R.
pub fn single_gate_circuit(kind: GateKind) -> Circuit {
    let mut b = CircuitBuilder::new();
    let lines: Vec<usize> = ["A", "B", "C"][..kind.arity()]
        .iter()
        .map(|n| b.input(*n))
        .collect();
    b.gate(kind, &lines);
    for (&l, name) in lines.iter().zip(["P", "Q", "R"]) {
        b.output(l, name);
    }
    b.finish(kind.long_name().to_ascii_lowercase())
}

fn truth(gate: &str, tsv: bool, out: &mut dyn Write) -> CmdResult {
    let kind = gate_arg(gate)?;
    let table = sim::truth_table(&single_gate_circuit(kind))?;
    let sep = if tsv { "\t" } else { " " };
    let bar = if tsv { "\t" } else { " | " };
    writeln!(out, "{}{bar}{}", table.inputs.join(sep), table.outputs.join(sep)).map_err(io)?;
    for (i, row) in table.rows().enumerate() {
        let ins: Vec<&str> = (0..table.inputs.len())
            .map(|k| if i >> k & 1 == 1 { "1" } else { "0" })
            .collect();
        let outs: Vec<&str> = row.iter().map(|&b| if b { "1" } else { "0" }).collect();
        writeln!(out, "{}{bar}{}", ins.join(sep), outs.join(sep)).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn build(
    design: DesignId,
    width: u32,
    unit: Option<UnitKind>,
    path: Option<&PathBuf>,
    out: &mut dyn Write,
) -> CmdResult {
    let circuit = match unit {
        Some(UnitKind::Half) => build_half(design),
        Some(UnitKind::Full) => build_full(design),
        None => build_ripple(design, width)?,
    };
    let text = netlist::serialize(&circuit)?;
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", p.display())))?,
        None => out.write_all(text.as_bytes()).map_err(io)?,
    }
    Ok(EXIT_OK)
}

fn load(path: &PathBuf) -> Result<Circuit, Fail> {
    let text =
        fs::read_to_string(path).map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    netlist::parse(&text).map_err(|e| Fail(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn parse_assignments(set: &str) -> Result<Assignment, Fail> {
    let mut a = Assignment::new();
    for item in set.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, bit) = item
            .split_once('=')
            .ok_or_else(|| Fail(EXIT_USAGE, format!("expected name=bit, got {item}")))?;
        let bit = match bit {
            "0" => false,
            "1" => true,
            _ => return Err(Fail(EXIT_USAGE, format!("bit for {name} must be 0 or 1"))),
        };
        if a.insert(name.to_string(), bit).is_some() {
            return Err(Fail(EXIT_USAGE, format!("{name} set twice")));
        }
    }
    Ok(a)
}

fn simulate(file: &PathBuf, set: &str, mode: Option<Mode>, out: &mut dyn Write) -> CmdResult {
    let circuit = load(file)?;
    let mut assignment = parse_assignments(set)?;
    if let Some(mode) = mode {
        let design = DesignId::from_circuit_name(circuit.name()).ok_or_else(|| {
            Fail(
                EXIT_USAGE,
                format!("cannot tell the design of circuit {}", circuit.name()),
            )
        })?;
        if assignment
            .insert("ctrl".to_string(), mode_to_ctrl(design, mode))
            .is_some()
        {
            return Err(Fail(EXIT_USAGE, "--mode and ctrl=... are exclusive".to_string()));
        }
    }
    let eval = sim::evaluate(&circuit, &assignment)?;
    for (name, value) in eval.primary_outputs() {
        writeln!(out, "{name}={}", u8::from(*value)).map_err(io)?;
    }
    let garbage: String = circuit
        .lines()
        .iter()
        .zip(&eval.lines)
        .filter(|(l, _)| l.output == netlist::OutputRole::Garbage)
        .map(|(_, &v)| if v { '1' } else { '0' })
        .collect();
    writeln!(out, "garbage={garbage}").map_err(io)?;
    Ok(EXIT_OK)
}

fn verify(
    design: DesignId,
    width: u32,
    args: &CoverageArgs,
    jobs: usize,
    out: &mut dyn Write,
) -> CmdResult {
    let coverage = match args.samples {
        Some(samples) => Coverage::Sampled {
            samples,
            seed: args.seed,
        },
        None if args.exhaustive || width <= 9 => Coverage::Exhaustive,
        None => Coverage::Sampled {
            samples: 10_000,
            seed: 0,
        },
    };
    let report = verify_ripple(design, width, coverage, jobs)?;
    let how = match coverage {
        Coverage::Exhaustive => "exhaustive".to_string(),
        Coverage::Sampled { samples, seed } => format!("{samples} samples, seed {seed}"),
    };
    writeln!(
        out,
        "{design}, width {width} ({how}): {} vectors checked, {} failures",
        report.vectors, report.failures
    )
    .map_err(io)?;
    if let Some(m) = report.first_failure {
        writeln!(
            out,
            "first failure: {} a={} b={} expected ({}, {}) got ({}, {})",
            m.mode,
            m.a,
            m.b,
            m.expected.0,
            u8::from(m.expected.1),
            m.actual.0,
            u8::from(m.actual.1)
        )
        .map_err(io)?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
}

fn metrics(design: DesignId, width: u32, as_built: bool, tsv: bool, out: &mut dyn Write) -> CmdResult {
    let (m, label) = if as_built {
        (ripple_metrics_as_built(design, width)?, "as-built")
    } else {
        (ripple_metrics_paper(design, width)?, "paper-accounting")
    };
    if tsv {
        writeln!(out, "design\twidth\taccounting\tgates\tgarbage_outputs\tgarbage_inputs\tquantum_cost")
            .map_err(io)?;
        writeln!(
            out,
            "{}\t{width}\t{label}\t{}\t{}\t{}\t{}",
            design.number(),
            m.gate_count,
            m.garbage_outputs,
            m.garbage_inputs,
            m.quantum_cost
        )
        .map_err(io)?;
    } else {
        writeln!(out, "{design}, width {width}, {label}").map_err(io)?;
        writeln!(out, "gates            {}", m.gate_count).map_err(io)?;
        writeln!(out, "garbage outputs  {}", m.garbage_outputs).map_err(io)?;
        writeln!(out, "garbage inputs   {}", m.garbage_inputs).map_err(io)?;
        writeln!(out, "quantum cost     {}", m.quantum_cost).map_err(io)?;
    }
    Ok(EXIT_OK)
}

fn decompose(gate: &str, out: &mut dyn Write) -> CmdResult {
    let kind = gate_arg(gate)?;
    let r = verify_decomposition(kind);
    writeln!(out, "gate            {}", kind.long_name()).map_err(io)?;
    writeln!(out, "sequence        {}", r.sequence).map_err(io)?;
    writeln!(out, "primitives      {}", r.sequence.len()).map_err(io)?;
    writeln!(out, "unitary match   {}", r.unitary_match).map_err(io)?;
    writeln!(out, "max error       {:.3e}", r.max_error).map_err(io)?;
    writeln!(out, "grouped cost    {}", r.computed_cost).map_err(io)?;
    let note = if r.computed_cost == r.catalog_cost { "" } else { " (differs)" };
    writeln!(out, "catalog cost    {}{note}", r.catalog_cost).map_err(io)?;
    Ok(if r.unitary_match { EXIT_OK } else { EXIT_FAILURE })
}

fn search(gate: &str, max_len: usize, jobs: usize, out: &mut dyn Write) -> CmdResult {
    let kind = gate_arg(gate)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Fail(EXIT_USAGE, e.to_string()))?;
    let found = pool.install(|| search_decomposition(kind, max_len))?;
    match found {
        Some(seq) => {
            writeln!(out, "{}: found length {}: {seq}", kind.long_name(), seq.len()).map_err(io)?;
            writeln!(out, "grouped cost {}", grouped_cost(&seq)).map_err(io)?;
        }
        None => writeln!(
            out,
            "{}: no sequence of at most {max_len} primitives from {{CNOT, CV, CVDAG}}",
            kind.long_name()
        )
        .map_err(io)?,
    }
    Ok(EXIT_OK)
}

fn equiv(file1: &PathBuf, file2: &PathBuf, out: &mut dyn Write) -> CmdResult {
    let (c1, c2) = (load(file1)?, load(file2)?);
    let same = sim::equivalent(&c1, &c2)?;
    writeln!(out, "{}", if same { "equivalent" } else { "not equivalent" }).map_err(io)?;
    Ok(if same { EXIT_OK } else { EXIT_FAILURE })
}

fn compare(tsv: bool, out: &mut dyn Write) -> CmdResult {
    let report = paper_compare()?;
    let text = if tsv {
        report.render_tsv()
    } else {
        report.render_text()
    };
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
}
