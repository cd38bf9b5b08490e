//! `qdirac` — command-line demos for the qdirac-core library.
//!
//! Every subcommand prints JSON by default (`--format text` for a
//! human-oriented rendering) and uses exit codes 0 for success, 1 for
//! domain failures and 2 for usage errors.

mod verify;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qdirac_core::game::{
    self, DeviationSpace, GameConfig, GridSpec, NamedStrategy, NashVerdict, ParetoVerdict,
    PayoffCoeffs, Strategy,
};
use qdirac_core::gate::{Gate, GateJson};
use qdirac_core::measurement;
use qdirac_core::oracle::{self, BooleanFunction, Classification, Promise};
use qdirac_core::protocols::{self, MachineJson};
use qdirac_core::state::{bell, QuantumState, StateJson};
use qdirac_core::Tolerance;

#[derive(Parser)]
#[command(name = "qdirac", version, about = "State-vector quantum simulation demos")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Comparison tolerance; the flag wins over the QDIRAC_EPS variable.
    #[arg(long, global = true, env = "QDIRAC_EPS")]
    eps: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Measure one qubit: exact probabilities plus seeded sampled counts.
    Measure {
        #[arg(long)]
        state_file: PathBuf,
        /// Qubit index, 0 = leftmost label bit.
        #[arg(long)]
        qubit: usize,
        #[arg(long, default_value_t = 1000)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Teleport a 1-qubit state; reports fidelity per measurement branch.
    Teleport {
        #[arg(long)]
        state_file: PathBuf,
        /// Restrict the report to one branch, e.g. 01.
        #[arg(long)]
        branch: Option<String>,
    },
    /// Deutsch's algorithm on a 1-input truth table given as two bits.
    Deutsch {
        #[arg(long)]
        table: String,
    },
    /// Deutsch-Jozsa on an n-input truth table given as 2^n bits.
    Jozsa {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        table: String,
    },
    /// Test whether a machine clones two states and report their overlap.
    Noclone {
        #[arg(long)]
        machine_file: PathBuf,
        /// Exactly two state files.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        states: Vec<PathBuf>,
    },
    /// The entangled Prisoner's Dilemma: payoffs, tables, Nash/Pareto.
    Game {
        /// Entanglement in radians; PI, PI_2 and PI_4 are accepted.
        #[arg(long, default_value = "PI_2")]
        gamma: String,
        /// A strategy name (C, D, Q, M, E) or "theta,phi" in radians.
        #[arg(long)]
        alice: Option<String>,
        #[arg(long)]
        bob: Option<String>,
        /// Payoff table from row and column name strings, e.g. CDQM CDE.
        #[arg(long, num_args = 2, value_names = ["ROWS", "COLS"])]
        table: Option<Vec<String>>,
        /// Grid-relative Nash verdict for the --alice/--bob pair.
        #[arg(long)]
        nash: bool,
        /// Grid-relative Pareto verdict for the --alice/--bob pair.
        #[arg(long)]
        pareto: bool,
        /// Restrict Nash deviations to classical strategies (phi = 0).
        #[arg(long)]
        classical_deviations: bool,
        /// Deviation grid resolution as THETAxPHI.
        #[arg(long, default_value = "65x33")]
        grid: String,
        /// Payoff coefficients reward,sucker,temptation,punishment.
        #[arg(long, default_value = "3,0,5,1")]
        coeffs: String,
    },
    /// Emit a Bell state with its measurement correlations.
    Bell {
        #[arg(long, default_value_t = 0)]
        a: u8,
        #[arg(long, default_value_t = 0)]
        b: u8,
    },
    /// Emit a named gate as JSON: H, X, Y, Z, S, T, CNOT, ID1, ID2.
    Gate { name: String },
    /// Run every built-in theorem check and summarize pass/fail.
    Verify,
}

enum CliError {
    /// Malformed arguments; exit status 2.
    Usage(String),
    /// Valid request that a module rejected; exit status 1.
    Domain(String),
}

impl From<qdirac_core::Error> for CliError {
    fn from(err: qdirac_core::Error) -> Self {
        CliError::Domain(format!("{}: {}", err.name(), err))
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let tol = match cli.eps {
        Some(eps) => Tolerance::new(eps)?,
        None => Tolerance::default(),
    };
    let format = cli.format;
    match cli.command {
        Command::Measure {
            state_file,
            qubit,
            shots,
            seed,
        } => cmd_measure(&state_file, qubit, shots, seed, tol, format),
        Command::Teleport { state_file, branch } => cmd_teleport(&state_file, branch, tol, format),
        Command::Deutsch { table } => cmd_deutsch(&table, format),
        Command::Jozsa { n, table } => cmd_jozsa(n, &table, format),
        Command::Noclone {
            machine_file,
            states,
        } => cmd_noclone(&machine_file, &states, tol, format),
        Command::Game {
            gamma,
            alice,
            bob,
            table,
            nash,
            pareto,
            classical_deviations,
            grid,
            coeffs,
        } => {
            let game_args = GameArgs {
                gamma: parse_angle(&gamma, "--gamma")?,
                alice,
                bob,
                table,
                nash,
                pareto,
                classical_deviations,
                grid: parse_grid(&grid)?,
                coeffs: parse_coeffs(&coeffs)?,
            };
            cmd_game(game_args, format)
        }
        Command::Bell { a, b } => cmd_bell(a, b, format),
        Command::Gate { name } => cmd_gate(&name, format),
        Command::Verify => Ok(verify::run(format, tol)),
    }
}

fn cmd_measure(
    state_file: &Path,
    qubit: usize,
    shots: u64,
    seed: u64,
    tol: Tolerance,
    format: Format,
) -> CliResult<ExitCode> {
    let state = read_state(state_file, tol)?;
    let p0 = measurement::prob0(&state, qubit)?;
    let p1 = measurement::prob1(&state, qubit)?;
    let mut counts = [0u64; 2];
    for shot in 0..shots {
        let outcome = measurement::measure(&state, qubit, seed.wrapping_add(shot), tol)?;
        counts[outcome.bit as usize] += 1;
    }
    match format {
        Format::Json => print_json(&json!({
            "prob0": p0,
            "prob1": p1,
            "counts": {"0": counts[0], "1": counts[1]},
        })),
        Format::Text => {
            println!("qubit {qubit}: prob0 = {}, prob1 = {}", fmt_num(p0), fmt_num(p1));
            println!("{shots} shots (seed {seed}): 0 -> {}, 1 -> {}", counts[0], counts[1]);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_teleport(
    state_file: &Path,
    branch: Option<String>,
    tol: Tolerance,
    format: Format,
) -> CliResult<ExitCode> {
    let phi = read_state(state_file, tol)?;
    let wanted = branch.map(|b| parse_branch(&b)).transpose()?;
    let outcomes = protocols::teleport(&phi, tol)?;
    let mut rows = Vec::new();
    for out in &outcomes {
        if let Some((m1, m2)) = wanted {
            if out.m1 != m1 || out.m2 != m2 {
                continue;
            }
        }
        let fidelity = qdirac_core::state::fidelity(&out.bob_state, &phi)?;
        rows.push(json!({
            "m1": out.m1,
            "m2": out.m2,
            "probability": out.probability,
            "fidelity": fidelity,
        }));
    }
    match format {
        Format::Json => {
            if wanted.is_some() {
                print_json(&rows[0]);
            } else {
                print_json(&serde_json::Value::Array(rows));
            }
        }
        Format::Text => {
            for row in &rows {
                println!(
                    "branch {}{}: probability {}, fidelity {}",
                    row["m1"], row["m2"],
                    fmt_num(row["probability"].as_f64().unwrap()),
                    fmt_num(row["fidelity"].as_f64().unwrap()),
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_deutsch(table: &str, format: Format) -> CliResult<ExitCode> {
    let bits = parse_bits(table, "--table")?;
    let f = BooleanFunction::new(1, bits)?;
    let eval = oracle::deutsch_eval(&f)?;
    let classification = oracle::classify(&f);
    let zero_prob = measurement::prob0(&oracle::deutsch_algo(&f)?, 0)?;
    report_oracle_run(eval, classification, zero_prob, format);
    Ok(ExitCode::SUCCESS)
}

fn cmd_jozsa(n: usize, table: &str, format: Format) -> CliResult<ExitCode> {
    if n == 0 || n > 10 {
        return Err(CliError::Usage(format!(
            "--n must be between 1 and 10, got {n}"
        )));
    }
    let bits = parse_bits(table, "--table")?;
    let f = BooleanFunction::new(n, bits)?;
    let classification = oracle::classify(&f);
    let promise = match classification {
        Classification::Constant => Promise::Constant,
        Classification::Balanced => Promise::Balanced,
        Classification::Neither => {
            // Surface the module's own error for a table outside the promise.
            oracle::jozsa_eval(&f, Promise::Balanced)?;
            unreachable!("jozsa_eval must reject a table that is neither");
        }
    };
    let out = oracle::jozsa_algo(&f, promise)?;
    let eval = oracle::jozsa_eval(&f, promise)?;
    report_oracle_run(eval, classification, oracle::all_zero_probability(&out), format);
    Ok(ExitCode::SUCCESS)
}

fn report_oracle_run(eval: u8, classification: Classification, zero_prob: f64, format: Format) {
    match format {
        Format::Json => print_json(&json!({
            "eval": eval,
            "classification": classification.to_string(),
            "all_zero_probability": zero_prob,
        })),
        Format::Text => println!(
            "eval = {eval} ({classification}); all-zero register probability {}",
            fmt_num(zero_prob)
        ),
    }
}

fn cmd_noclone(
    machine_file: &Path,
    states: &[PathBuf],
    tol: Tolerance,
    format: Format,
) -> CliResult<ExitCode> {
    let machine = read_json::<MachineJson>(machine_file)?.into_machine(tol)?;
    let a = read_state(&states[0], tol)?;
    let b = read_state(&states[1], tol)?;
    let cloner_for_a = protocols::is_cloner_for(&machine, &a, tol)?;
    let cloner_for_b = protocols::is_cloner_for(&machine, &b, tol)?;
    let overlap = a.vector().inner_prod(b.vector())?.norm();
    match format {
        Format::Json => print_json(&json!({
            "cloner_for_a": cloner_for_a,
            "cloner_for_b": cloner_for_b,
            "overlap": overlap,
        })),
        Format::Text => {
            println!("clones first state:  {cloner_for_a}");
            println!("clones second state: {cloner_for_b}");
            println!("overlap |<a|b>| = {}", fmt_num(overlap));
            if cloner_for_a && cloner_for_b {
                println!("both cloned: overlap must be 0 or 1, and it is {}", fmt_num(overlap));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

struct GameArgs {
    gamma: f64,
    alice: Option<String>,
    bob: Option<String>,
    table: Option<Vec<String>>,
    nash: bool,
    pareto: bool,
    classical_deviations: bool,
    grid: GridSpec,
    coeffs: PayoffCoeffs,
}

fn cmd_game(args: GameArgs, format: Format) -> CliResult<ExitCode> {
    let cfg = GameConfig::new(args.gamma, args.coeffs)?;

    if let Some(table) = &args.table {
        let rows = parse_strategy_names(&table[0])?;
        let cols = parse_strategy_names(&table[1])?;
        let row_strategies: Vec<Strategy> = rows.iter().map(|n| n.strategy()).collect();
        let col_strategies: Vec<Strategy> = cols.iter().map(|n| n.strategy()).collect();
        let cells = game::payoff_table(&cfg, &row_strategies, &col_strategies)?;
        match format {
            Format::Json => {
                let table_json: Vec<Vec<serde_json::Value>> = cells
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|p| json!({"alice": p.alice, "bob": p.bob}))
                            .collect()
                    })
                    .collect();
                print_json(&json!({
                    "gamma": args.gamma,
                    "rows": rows.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
                    "cols": cols.iter().map(|n| n.to_string()).collect::<Vec<_>>(),
                    "table": table_json,
                }));
            }
            Format::Text => print_text_table(&rows, &cols, &cells),
        }
        return Ok(ExitCode::SUCCESS);
    }

    let (alice_arg, bob_arg) = match (&args.alice, &args.bob) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(CliError::Usage(
                "game needs either --table ROWS COLS or both --alice and --bob".into(),
            ))
        }
    };
    let alice = parse_strategy(alice_arg, "--alice")?;
    let bob = parse_strategy(bob_arg, "--bob")?;
    let pair = game::payoffs(&cfg, &alice, &bob);
    let probs = pair.branch_probs.expect("simulation route exposes probabilities");

    let mut body = json!({
        "gamma": args.gamma,
        "alice_strategy": {"theta": alice.theta(), "phi": alice.phi()},
        "bob_strategy": {"theta": bob.theta(), "phi": bob.phi()},
        "payoffs": {"alice": pair.alice, "bob": pair.bob},
        "branch_probs": {
            "p00": probs.p00, "p01": probs.p01, "p10": probs.p10, "p11": probs.p11,
        },
    });

    let space = if args.classical_deviations {
        DeviationSpace::ClassicalOnly
    } else {
        DeviationSpace::FullTwoParameter
    };
    if args.nash {
        let verdict =
            game::is_nash_eq_over(&cfg, &alice, &bob, args.grid, game::DEFAULT_MARGIN, space)?;
        body["nash"] = nash_json(&verdict);
    }
    if args.pareto {
        let verdict =
            game::is_pareto_optimal(&cfg, &alice, &bob, args.grid, game::DEFAULT_MARGIN)?;
        body["pareto"] = pareto_json(&verdict);
    }

    match format {
        Format::Json => print_json(&body),
        Format::Text => {
            println!(
                "gamma = {}: alice gets {}, bob gets {}",
                fmt_num(args.gamma),
                fmt_num(pair.alice),
                fmt_num(pair.bob)
            );
            println!(
                "branches: P00 = {}, P01 = {}, P10 = {}, P11 = {}",
                fmt_num(probs.p00),
                fmt_num(probs.p01),
                fmt_num(probs.p10),
                fmt_num(probs.p11)
            );
            if args.nash {
                println!("nash: {}", verdict_text(&body["nash"]));
            }
            if args.pareto {
                println!("pareto: {}", verdict_text(&body["pareto"]));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn nash_json(verdict: &NashVerdict) -> serde_json::Value {
    match verdict {
        NashVerdict::Holds => json!({"verdict": "holds"}),
        NashVerdict::Refuted(w) => json!({
            "verdict": "refuted",
            "player": w.player,
            "deviation": {"theta": w.deviation.theta(), "phi": w.deviation.phi()},
            "payoff": w.payoff,
            "gain": w.gain,
        }),
    }
}

fn pareto_json(verdict: &ParetoVerdict) -> serde_json::Value {
    match verdict {
        ParetoVerdict::Holds => json!({"verdict": "holds"}),
        ParetoVerdict::Refuted(w) => json!({
            "verdict": "refuted",
            "alice_strategy": {"theta": w.alice_strategy.theta(), "phi": w.alice_strategy.phi()},
            "bob_strategy": {"theta": w.bob_strategy.theta(), "phi": w.bob_strategy.phi()},
            "payoffs": {"alice": w.alice_payoff, "bob": w.bob_payoff},
        }),
    }
}

fn verdict_text(v: &serde_json::Value) -> String {
    if v["verdict"] == "holds" {
        "holds (grid-relative)".into()
    } else {
        format!(
            "refuted, improving to {}",
            v.get("payoff")
                .or_else(|| v["payoffs"].get("alice"))
                .map(|p| fmt_num(p.as_f64().unwrap_or(f64::NAN)))
                .unwrap_or_default()
        )
    }
}

fn print_text_table(rows: &[NamedStrategy], cols: &[NamedStrategy], cells: &[Vec<game::PayoffPair>]) {
    let rendered: Vec<Vec<String>> = cells
        .iter()
        .map(|row| {
            row.iter()
                .map(|p| format!("({}, {})", fmt_num(p.alice), fmt_num(p.bob)))
                .collect()
        })
        .collect();
    let width = rendered
        .iter()
        .flatten()
        .map(String::len)
        .max()
        .unwrap_or(0)
        .max(2);
    print!("     ");
    for c in cols {
        print!(" {:>width$}", c.to_string());
    }
    println!();
    for (name, row) in rows.iter().zip(rendered.iter()) {
        print!("  {}  ", name.token());
        for cell in row {
            print!(" {cell:>width$}");
        }
        println!();
    }
}

fn cmd_bell(a: u8, b: u8, format: Format) -> CliResult<ExitCode> {
    if a > 1 || b > 1 {
        return Err(CliError::Usage(format!(
            "bell indices must be 0 or 1, got a={a} b={b}"
        )));
    }
    let state = bell(a, b);
    let p0 = measurement::prob0(&state, 0)?;
    let p1 = measurement::prob1(&state, 0)?;
    // β00 and β10 correlate the two qubits; β01 and β11 anti-correlate.
    let correlation = if b == 0 { "same" } else { "opposite" };
    match format {
        Format::Json => {
            let wire: StateJson = state.into();
            let mut body = serde_json::to_value(&wire).expect("state serializes");
            body["prob0_qubit0"] = json!(p0);
            body["prob1_qubit0"] = json!(p1);
            body["correlation"] = json!(correlation);
            print_json(&body);
        }
        Format::Text => {
            println!("bell({a}, {b}): amplitudes");
            for (i, amp) in state.vector().entries().iter().enumerate() {
                println!("  |{i:02b}> {}", fmt_complex(*amp));
            }
            println!("first-qubit probabilities: {} / {}", fmt_num(p0), fmt_num(p1));
            println!("successive measurements give {correlation} outcomes");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gate(name: &str, format: Format) -> CliResult<ExitCode> {
    let gate = match name.to_ascii_uppercase().as_str() {
        "H" => Gate::hadamard(),
        "X" => Gate::pauli_x(),
        "Y" => Gate::pauli_y(),
        "Z" => Gate::pauli_z(),
        "S" => Gate::phase_s(),
        "T" => Gate::gate_t(),
        "CNOT" => Gate::cnot(),
        "ID1" => Gate::identity(1),
        "ID2" => Gate::identity(2),
        other => {
            return Err(CliError::Usage(format!(
                "unknown gate {other:?}; expected H, X, Y, Z, S, T, CNOT, ID1 or ID2"
            )))
        }
    };
    match format {
        Format::Json => {
            let wire: GateJson = gate.into();
            print_json(&serde_json::to_value(&wire).expect("gate serializes"));
        }
        Format::Text => {
            println!("{} ({} qubit(s))", name.to_ascii_uppercase(), gate.n_qubits());
            let m = gate.matrix();
            for i in 0..m.rows() {
                let row: Vec<String> = (0..m.cols()).map(|j| fmt_complex(m.get(i, j))).collect();
                println!("  [{}]", row.join(", "));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn read_state(path: &Path, tol: Tolerance) -> CliResult<QuantumState> {
    Ok(read_json::<StateJson>(path)?.into_state(tol)?)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("Io: {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Domain(format!("Json: {}: {e}", path.display())))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("value serializes"));
}

fn parse_angle(text: &str, flag: &str) -> CliResult<f64> {
    let trimmed = text.trim();
    match trimmed.to_ascii_uppercase().as_str() {
        "PI" => Ok(PI),
        "PI_2" => Ok(FRAC_PI_2),
        "PI_4" => Ok(FRAC_PI_4),
        _ => trimmed.parse::<f64>().map_err(|_| {
            CliError::Usage(format!(
                "{flag}: expected a number in radians or PI, PI_2, PI_4; got {trimmed:?}"
            ))
        }),
    }
}

fn parse_strategy(text: &str, flag: &str) -> CliResult<Strategy> {
    let trimmed = text.trim();
    if let Ok(named) = trimmed.parse::<NamedStrategy>() {
        return Ok(named.strategy());
    }
    let parts: Vec<&str> = trimmed.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Usage(format!(
            "{flag}: expected a name (C, D, Q, M, E) or theta,phi; got {trimmed:?}"
        )));
    }
    let theta = parse_angle(parts[0], flag)?;
    let phi = parse_angle(parts[1], flag)?;
    Ok(Strategy::new(theta, phi)?)
}

fn parse_strategy_names(text: &str) -> CliResult<Vec<NamedStrategy>> {
    text.trim()
        .chars()
        .map(|c| {
            NamedStrategy::from_char(c)
                .map_err(|_| CliError::Usage(format!("--table: unknown strategy name {c:?}")))
        })
        .collect()
}

fn parse_grid(text: &str) -> CliResult<GridSpec> {
    let parts: Vec<&str> = text.trim().split(['x', 'X']).collect();
    let bad = || CliError::Usage(format!("--grid: expected THETAxPHI, e.g. 65x33; got {text:?}"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let theta = parts[0].parse::<usize>().map_err(|_| bad())?;
    let phi = parts[1].parse::<usize>().map_err(|_| bad())?;
    Ok(GridSpec::new(theta, phi)?)
}

fn parse_coeffs(text: &str) -> CliResult<PayoffCoeffs> {
    let parts: Vec<&str> = text.trim().split(',').collect();
    if parts.len() != 4 {
        return Err(CliError::Usage(format!(
            "--coeffs: expected reward,sucker,temptation,punishment; got {text:?}"
        )));
    }
    let mut values = [0.0f64; 4];
    for (slot, part) in values.iter_mut().zip(parts.iter()) {
        *slot = part.trim().parse::<f64>().map_err(|_| {
            CliError::Usage(format!("--coeffs: {part:?} is not a number"))
        })?;
    }
    Ok(PayoffCoeffs::new(values[0], values[1], values[2], values[3])?)
}

fn parse_branch(text: &str) -> CliResult<(u8, u8)> {
    let bits: Vec<char> = text.trim().chars().collect();
    if bits.len() == 2 && bits.iter().all(|c| *c == '0' || *c == '1') {
        Ok((bits[0] as u8 - b'0', bits[1] as u8 - b'0'))
    } else {
        Err(CliError::Usage(format!(
            "--branch: expected two bits like 01, got {text:?}"
        )))
    }
}

fn parse_bits(text: &str, flag: &str) -> CliResult<Vec<u8>> {
    text.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(0u8),
            '1' => Ok(1u8),
            other => Err(CliError::Usage(format!(
                "{flag}: expected a bitstring, found {other:?}"
            ))),
        })
        .collect()
}

fn fmt_num(x: f64) -> String {
    if (x - x.round()).abs() < 1e-9 && x.abs() < 1e15 {
        format!("{}", x.round() as i64)
    } else {
        let s = format!("{x:.6}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn fmt_complex(c: qdirac_core::Complex64) -> String {
    format!("{} {} {}i", fmt_num(c.re), if c.im < 0.0 { "-" } else { "+" }, fmt_num(c.im.abs()))
}
