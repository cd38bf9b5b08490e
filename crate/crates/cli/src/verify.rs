//! The `verify` subcommand: runs every theorem check the library ships
//! and reports one pass/fail line per theorem.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use qdirac_core::game::{
    self, GameConfig, GridSpec, NamedStrategy, NashVerdict, ParetoVerdict, Strategy,
};
use qdirac_core::gate::Gate;
use qdirac_core::linalg::{Complex64, ComplexMatrix, Tolerance};
use qdirac_core::measurement::{post_meas0, post_meas1, prob0, prob1};
use qdirac_core::oracle::{self, BooleanFunction, Promise};
use qdirac_core::protocols::{
    basis_cloner, cloning_residual, no_cloning_check, teleport, QuantumMachine,
};
use qdirac_core::state::{bell, fidelity, QuantumState};

use crate::Format;

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

pub fn run(format: Format, tol: Tolerance) -> ExitCode {
    let started = Instant::now();
    let checks: Vec<Check> = [
        ("gate-algebra", check_gate_algebra as fn() -> Result<String, String>),
        ("measurement", check_measurement),
        ("no-cloning", check_no_cloning),
        ("teleportation", check_teleportation),
        ("deutsch", check_deutsch),
        ("deutsch-jozsa", check_deutsch_jozsa),
        ("game-payoff-table", check_game_table),
        ("miracle-closed-forms", check_closed_forms),
        ("nash-pareto", check_nash_pareto),
    ]
    .into_iter()
    .map(|(name, f)| match f() {
        Ok(detail) => Check {
            name,
            passed: true,
            detail,
        },
        Err(detail) => Check {
            name,
            passed: false,
            detail,
        },
    })
    .collect();

    let passed = checks.iter().filter(|c| c.passed).count();
    let all_passed = passed == checks.len();
    match format {
        Format::Json => {
            let report = json!({
                "subcommand": "verify",
                "inputs": {"eps": tol.eps()},
                "results": {
                    "passed": passed,
                    "failed": checks.len() - passed,
                    "elapsed_ms": started.elapsed().as_millis() as u64,
                },
                "checks": checks,
            });
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
        Format::Text => {
            for check in &checks {
                let tag = if check.passed { "PASS" } else { "FAIL" };
                println!("{tag}  {:<22} {}", check.name, check.detail);
            }
            println!(
                "{passed}/{} checks passed in {:?}",
                checks.len(),
                started.elapsed()
            );
        }
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn ensure(cond: bool, message: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message.to_string())
    }
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_state(rng: &mut ChaCha8Rng, n_qubits: usize) -> QuantumState {
    let dim = 1usize << n_qubits;
    loop {
        let v = ComplexMatrix::column((0..dim).map(|_| random_complex(rng)).collect())
            .expect("columns of random entries are valid");
        let norm = v.norm();
        if norm > 1e-3 {
            let v = v.scale(Complex64::new(1.0 / norm, 0.0));
            return QuantumState::new(n_qubits, v, tol()).expect("normalized by construction");
        }
    }
}

/// Random unitary from Gram-Schmidt on random columns.
fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    loop {
        let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(dim);
        let mut degenerate = false;
        for _ in 0..dim {
            let mut col: Vec<Complex64> = (0..dim).map(|_| random_complex(rng)).collect();
            for prev in &columns {
                let overlap: Complex64 =
                    prev.iter().zip(col.iter()).map(|(p, c)| p.conj() * c).sum();
                for (c, p) in col.iter_mut().zip(prev.iter()) {
                    *c -= overlap * p;
                }
            }
            let norm = col.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            if norm < 1e-6 {
                degenerate = true;
                break;
            }
            for c in col.iter_mut() {
                *c /= norm;
            }
            columns.push(col);
        }
        if degenerate {
            continue;
        }
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (j, col) in columns.iter().enumerate() {
            for (i, &value) in col.iter().enumerate() {
                entries[i * dim + j] = value;
            }
        }
        return ComplexMatrix::new(dim, dim, entries).expect("orthonormal columns are finite");
    }
}

fn check_gate_algebra() -> Result<String, String> {
    let named = [
        Gate::hadamard(),
        Gate::pauli_x(),
        Gate::pauli_y(),
        Gate::pauli_z(),
        Gate::phase_s(),
        Gate::gate_t(),
        Gate::cnot(),
        Gate::identity(1),
        Gate::identity(2),
    ];
    for g in &named {
        let dev = g.matrix().unitarity_deviation().map_err(|e| e.to_string())?;
        ensure(dev < 1e-12, &format!("gate unitarity deviation {dev:e}"))?;
    }
    let h = Gate::hadamard();
    ensure(
        h.matrix().dagger().max_abs_diff(h.matrix()) < 1e-12,
        "H is not self-adjoint",
    )?;
    let cnot = Gate::cnot();
    ensure(
        cnot.matrix().dagger().max_abs_diff(cnot.matrix()) < 1e-12,
        "cNOT is not self-adjoint",
    )?;

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..500 {
        let a = random_unitary(&mut rng, 2);
        let b = random_unitary(&mut rng, 2);
        let c = random_unitary(&mut rng, 2);
        let d = random_unitary(&mut rng, 2);
        let lhs = a
            .kronecker(&b)
            .matmul(&c.kronecker(&d))
            .map_err(|e| e.to_string())?;
        let rhs = a
            .matmul(&c)
            .map_err(|e| e.to_string())?
            .kronecker(&b.matmul(&d).map_err(|e| e.to_string())?);
        worst = worst.max(lhs.max_abs_diff(&rhs));
        worst = worst.max(
            a.kronecker(&b.kronecker(&c))
                .max_abs_diff(&a.kronecker(&b).kronecker(&c)),
        );
    }
    ensure(worst < 1e-9, &format!("product law deviation {worst:e}"))?;
    Ok(format!(
        "9 named gates unitary within 1e-12; product laws within {worst:.1e} on 500 samples"
    ))
}

fn check_measurement() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..500 {
        let s = random_state(&mut rng, 2);
        for qubit in 0..2 {
            let p0 = prob0(&s, qubit).map_err(|e| e.to_string())?;
            let p1 = prob1(&s, qubit).map_err(|e| e.to_string())?;
            ensure((p0 + p1 - 1.0).abs() < 1e-9, "probabilities do not sum to 1")?;
            if p0 > 1e-6 {
                let c0 = post_meas0(&s, qubit, tol()).map_err(|e| e.to_string())?;
                ensure(
                    prob1(&c0, qubit).map_err(|e| e.to_string())? < 1e-9,
                    "collapsed branch is impure",
                )?;
            }
        }
    }
    // Correlated Bell pairs: same outcomes for β00/β10, opposite for β01/β11.
    for (a, b, same) in [(0u8, 0u8, true), (1, 0, true), (0, 1, false), (1, 1, false)] {
        let state = bell(a, b);
        for first in 0..2u8 {
            let collapsed = if first == 0 {
                post_meas0(&state, 0, tol())
            } else {
                post_meas1(&state, 0, tol())
            }
            .map_err(|e| e.to_string())?;
            let expected_second = if same { first } else { 1 - first };
            let p = if expected_second == 1 {
                prob1(&collapsed, 1)
            } else {
                prob0(&collapsed, 1)
            }
            .map_err(|e| e.to_string())?;
            ensure(
                (p - 1.0).abs() < 1e-12,
                &format!("bell({a},{b}) correlation broke: {p}"),
            )?;
        }
    }
    Ok("completeness and branch purity on 500 random states; Bell correlations exact".into())
}

fn check_no_cloning() -> Result<String, String> {
    let machine = basis_cloner(1);
    for index in 0..2 {
        let v = QuantumState::basis(1, index).map_err(|e| e.to_string())?;
        let residual = cloning_residual(&machine, &v).map_err(|e| e.to_string())?;
        ensure(residual < 1e-12, &format!("basis residual {residual:e}"))?;
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus = QuantumState::new(
        1,
        ComplexMatrix::column_from_reals(&[s, s]).map_err(|e| e.to_string())?,
        tol(),
    )
    .map_err(|e| e.to_string())?;
    let plus_residual = cloning_residual(&machine, &plus).map_err(|e| e.to_string())?;
    ensure(plus_residual > 0.4, "superposition residual too small")?;

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut passes = 0usize;
    for _ in 0..2000 {
        let unitary = Gate::new(2, random_unitary(&mut rng, 4), tol()).map_err(|e| e.to_string())?;
        let m = QuantumMachine::new(1, random_state(&mut rng, 1), unitary)
            .map_err(|e| e.to_string())?;
        let v = random_state(&mut rng, 1);
        let w = random_state(&mut rng, 1);
        if let Ok(overlap) = no_cloning_check(&m, &v, &w, tol()) {
            passes += 1;
            ensure(
                overlap.min((overlap - 1.0).abs()) < 1e-9,
                &format!("cloned pair with overlap {overlap}"),
            )?;
        }
    }
    for i in 0..2usize {
        for j in 0..2usize {
            let v = QuantumState::basis(1, i).map_err(|e| e.to_string())?;
            let w = QuantumState::basis(1, j).map_err(|e| e.to_string())?;
            let overlap = no_cloning_check(&machine, &v, &w, tol()).map_err(|e| e.to_string())?;
            let expected = if i == j { 1.0 } else { 0.0 };
            ensure((overlap - expected).abs() < 1e-9, "basis overlap off")?;
        }
    }
    let mut min_gap = f64::INFINITY;
    for _ in 0..10_000 {
        let v = ComplexMatrix::column((0..4).map(|_| random_complex(&mut rng)).collect())
            .map_err(|e| e.to_string())?;
        let w = ComplexMatrix::column((0..4).map(|_| random_complex(&mut rng)).collect())
            .map_err(|e| e.to_string())?;
        min_gap = min_gap.min(v.cauchy_schwarz_gap(&w).map_err(|e| e.to_string())?);
    }
    ensure(min_gap >= -1e-12, &format!("Cauchy-Schwarz gap {min_gap:e}"))?;
    Ok(format!(
        "basis cloner behaves (superposition residual {plus_residual:.2}); {passes}/2000 random \
         machines cloned a pair, all on the 0/1 overlap dichotomy; min Cauchy-Schwarz gap \
         {min_gap:.1e}"
    ))
}

fn check_teleportation() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_fidelity = 1.0f64;
    for _ in 0..1000 {
        let phi = random_state(&mut rng, 1);
        for out in teleport(&phi, tol()).map_err(|e| e.to_string())? {
            ensure(
                (out.probability - 0.25).abs() < 1e-9,
                &format!("branch probability {}", out.probability),
            )?;
            let f = fidelity(&out.bob_state, &phi).map_err(|e| e.to_string())?;
            worst_fidelity = worst_fidelity.min(f);
        }
    }
    ensure(
        worst_fidelity >= 1.0 - 1e-9,
        &format!("fidelity dropped to {worst_fidelity}"),
    )?;
    Ok(format!(
        "1000 random states, 4 branches each: probability 1/4, min fidelity {worst_fidelity:.12}"
    ))
}

fn check_deutsch() -> Result<String, String> {
    for table in [[0u8, 0], [0, 1], [1, 0], [1, 1]] {
        let f = BooleanFunction::new(1, table.to_vec()).map_err(|e| e.to_string())?;
        let eval = oracle::deutsch_eval(&f).map_err(|e| e.to_string())?;
        ensure(
            eval == table[0] ^ table[1],
            &format!("table {table:?} evaluated to {eval}"),
        )?;
    }
    Ok("all 4 one-input functions evaluate to f(0) XOR f(1)".into())
}

fn check_deutsch_jozsa() -> Result<String, String> {
    let mut balanced_total = 0usize;
    for n in 1..=3usize {
        let size = 1usize << n;
        for bit in [0u8, 1] {
            let f = BooleanFunction::new(n, vec![bit; size]).map_err(|e| e.to_string())?;
            let eval = oracle::jozsa_eval(&f, Promise::Constant).map_err(|e| e.to_string())?;
            ensure(eval == 1, &format!("constant table on {n} inputs gave {eval}"))?;
        }
        for mask in 0u32..(1 << size) {
            if mask.count_ones() as usize != size / 2 {
                continue;
            }
            let table: Vec<u8> = (0..size).map(|i| ((mask >> i) & 1) as u8).collect();
            let f = BooleanFunction::new(n, table).map_err(|e| e.to_string())?;
            let eval = oracle::jozsa_eval(&f, Promise::Balanced).map_err(|e| e.to_string())?;
            ensure(eval == 0, &format!("balanced table {mask:b} gave {eval}"))?;
            balanced_total += 1;
        }
    }
    ensure(balanced_total == 78, "unexpected balanced-table count")?;
    Ok("n in 1..=3 exhaustive: 6 constant and 78 balanced tables all classified".into())
}

fn check_game_table() -> Result<String, String> {
    let cfg = GameConfig::with_default_coeffs(FRAC_PI_2).map_err(|e| e.to_string())?;
    let rows: Vec<Strategy> = [
        NamedStrategy::Cooperate,
        NamedStrategy::Defect,
        NamedStrategy::Quantum,
        NamedStrategy::Miracle,
    ]
    .iter()
    .map(|n| n.strategy())
    .collect();
    let cols: Vec<Strategy> = [
        NamedStrategy::Cooperate,
        NamedStrategy::Defect,
        NamedStrategy::DownToEarth,
    ]
    .iter()
    .map(|n| n.strategy())
    .collect();
    let expected: [[(f64, f64); 3]; 4] = [
        [(3.0, 3.0), (0.0, 5.0), (1.5, 4.0)],
        [(5.0, 0.0), (1.0, 1.0), (3.0, 0.5)],
        [(1.0, 1.0), (5.0, 0.0), (3.0, 0.5)],
        [(3.0, 0.5), (3.0, 0.5), (1.0, 1.0)],
    ];
    let table = game::payoff_table(&cfg, &rows, &cols).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for (row, expect_row) in table.iter().zip(expected.iter()) {
        for (cell, expect) in row.iter().zip(expect_row.iter()) {
            worst = worst
                .max((cell.alice - expect.0).abs())
                .max((cell.bob - expect.1).abs());
        }
    }
    ensure(worst < 1e-9, &format!("table deviation {worst:e}"))?;
    Ok(format!("all 12 entries reproduced within {worst:.1e}"))
}

fn check_closed_forms() -> Result<String, String> {
    let miracle = NamedStrategy::Miracle.strategy();
    let mut worst = 0.0f64;
    let mut variant_gap = 0.0f64;
    for gi in 0..50 {
        let gamma = gi as f64 / 49.0 * FRAC_PI_2;
        let cfg = GameConfig::with_default_coeffs(gamma).map_err(|e| e.to_string())?;
        for ti in 0..50 {
            let theta = ti as f64 / 49.0 * PI;
            let closed =
                game::miracle_payoffs_closed_form(gamma, theta).map_err(|e| e.to_string())?;
            let bob = Strategy::new(theta, 0.0).map_err(|e| e.to_string())?;
            let sim = game::payoffs(&cfg, &miracle, &bob);
            worst = worst
                .max((closed.alice - sim.alice).abs())
                .max((closed.bob - sim.bob).abs());
            variant_gap = variant_gap
                .max((3.0 + 2.0 * theta.sin() - sim.alice).abs())
                .max((0.5 * (1.0 - theta.sin()) - sim.bob).abs());
        }
    }
    ensure(worst < 1e-9, &format!("closed form drifted by {worst:e}"))?;
    ensure(variant_gap > 0.1, "rejected variant forms look plausible")?;
    Ok(format!(
        "50x50 grid agreement within {worst:.1e}; rejected variants off by up to {variant_gap:.2}"
    ))
}

fn check_nash_pareto() -> Result<String, String> {
    let grid = GridSpec::default();
    let margin = game::DEFAULT_MARGIN;
    let defect = NamedStrategy::Defect.strategy();
    let quantum = NamedStrategy::Quantum.strategy();

    let classical = GameConfig::with_default_coeffs(0.0).map_err(|e| e.to_string())?;
    let verdict =
        game::is_nash_eq(&classical, &defect, &defect, grid, margin).map_err(|e| e.to_string())?;
    ensure(verdict == NashVerdict::Holds, "classical (D,D) refuted")?;

    let entangled = GameConfig::with_default_coeffs(FRAC_PI_2).map_err(|e| e.to_string())?;
    let witness = match game::is_nash_eq(&entangled, &defect, &defect, grid, margin)
        .map_err(|e| e.to_string())?
    {
        NashVerdict::Refuted(w) => w,
        NashVerdict::Holds => return Err("entangled (D,D) not refuted".into()),
    };
    ensure(
        witness.payoff >= 5.0 - 1e-6,
        &format!("weak witness payoff {}", witness.payoff),
    )?;

    let nash = game::is_nash_eq(&entangled, &quantum, &quantum, grid, margin)
        .map_err(|e| e.to_string())?;
    ensure(nash == NashVerdict::Holds, "(Q,Q) Nash refuted")?;
    let pareto = game::is_pareto_optimal(&entangled, &quantum, &quantum, grid, margin)
        .map_err(|e| e.to_string())?;
    ensure(pareto == ParetoVerdict::Holds, "(Q,Q) Pareto refuted")?;

    Ok(format!(
        "classical (D,D) holds; entangled (D,D) refuted at payoff {:.4}; (Q,Q) Nash and Pareto \
         hold on the 65x33 grid",
        witness.payoff
    ))
}
