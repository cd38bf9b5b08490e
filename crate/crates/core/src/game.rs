//! The entangled two-player Prisoner's Dilemma: a 2-parameter strategy
//! space of local unitaries, an entangling operator J parametrized by
//! γ ∈ [0, π/2], exact expected payoffs, and grid-based Nash and Pareto
//! certification.
//!
//! The protocol: prepare |00⟩, entangle with J, let each player apply
//! their strategy unitary to their own qubit, disentangle with J†, and
//! read expected payoffs off the outcome distribution. γ = 0 reproduces
//! the classical game; γ = π/2 is maximally entangled.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gate::Gate;
use crate::linalg::{Complex64, ComplexMatrix, Tolerance};
use crate::state::QuantumState;

use std::f64::consts::{FRAC_PI_2, PI};

/// Margin used by the stock Nash/Pareto runs.
pub const DEFAULT_MARGIN: f64 = 1e-7;

/// A player's move: the unitary U(θ, φ) with θ ∈ [0, π] and φ ∈ [0, π/2].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Strategy {
    theta: f64,
    phi: f64,
}

impl Strategy {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        check_range("theta", theta, 0.0, PI)?;
        check_range("phi", phi, 0.0, FRAC_PI_2)?;
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// The five named moves of the game.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedStrategy {
    /// C = U(0, 0), cooperate.
    Cooperate,
    /// D = U(π, 0), defect.
    Defect,
    /// Q = U(0, π/2), the quantum move.
    Quantum,
    /// M = U(π/2, π/2), the miracle move.
    Miracle,
    /// E = U(π/2, 0), the down-to-earth move.
    DownToEarth,
}

impl NamedStrategy {
    pub fn strategy(self) -> Strategy {
        let (theta, phi) = match self {
            NamedStrategy::Cooperate => (0.0, 0.0),
            NamedStrategy::Defect => (PI, 0.0),
            NamedStrategy::Quantum => (0.0, FRAC_PI_2),
            NamedStrategy::Miracle => (FRAC_PI_2, FRAC_PI_2),
            NamedStrategy::DownToEarth => (FRAC_PI_2, 0.0),
        };
        Strategy { theta, phi }
    }

    pub fn token(self) -> char {
        match self {
            NamedStrategy::Cooperate => 'C',
            NamedStrategy::Defect => 'D',
            NamedStrategy::Quantum => 'Q',
            NamedStrategy::Miracle => 'M',
            NamedStrategy::DownToEarth => 'E',
        }
    }

    pub fn from_char(c: char) -> Result<Self> {
        match c.to_ascii_uppercase() {
            'C' => Ok(NamedStrategy::Cooperate),
            'D' => Ok(NamedStrategy::Defect),
            'Q' => Ok(NamedStrategy::Quantum),
            'M' => Ok(NamedStrategy::Miracle),
            'E' => Ok(NamedStrategy::DownToEarth),
            _ => Err(Error::UnknownStrategy {
                token: c.to_string(),
            }),
        }
    }
}

impl FromStr for NamedStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => NamedStrategy::from_char(c),
            _ => Err(Error::UnknownStrategy {
                token: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for NamedStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.token())
    }
}

/// Payoff coefficients (reward, sucker, temptation, punishment).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PayoffCoeffs {
    pub reward: f64,
    pub sucker: f64,
    pub temptation: f64,
    pub punishment: f64,
}

impl PayoffCoeffs {
    pub fn new(reward: f64, sucker: f64, temptation: f64, punishment: f64) -> Result<Self> {
        for (name, value) in [
            ("reward", reward),
            ("sucker", sucker),
            ("temptation", temptation),
            ("punishment", punishment),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFiniteParameter { name, value });
            }
        }
        Ok(Self {
            reward,
            sucker,
            temptation,
            punishment,
        })
    }
}

impl Default for PayoffCoeffs {
    fn default() -> Self {
        Self {
            reward: 3.0,
            sucker: 0.0,
            temptation: 5.0,
            punishment: 1.0,
        }
    }
}

/// Game parameters: entanglement γ and the payoff coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameConfig {
    gamma: f64,
    coeffs: PayoffCoeffs,
}

impl GameConfig {
    pub fn new(gamma: f64, coeffs: PayoffCoeffs) -> Result<Self> {
        check_range("gamma", gamma, 0.0, FRAC_PI_2)?;
        Ok(Self { gamma, coeffs })
    }

    /// γ with the stock (3, 0, 5, 1) coefficients.
    pub fn with_default_coeffs(gamma: f64) -> Result<Self> {
        Self::new(gamma, PayoffCoeffs::default())
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn coeffs(&self) -> &PayoffCoeffs {
        &self.coeffs
    }
}

/// Outcome distribution over the four measurement branches.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BranchProbs {
    pub p00: f64,
    pub p01: f64,
    pub p10: f64,
    pub p11: f64,
}

/// Expected payoffs of both players; `branch_probs` is present when the
/// payoffs came from an explicit final state and absent for closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PayoffPair {
    pub alice: f64,
    pub bob: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch_probs: Option<BranchProbs>,
}

/// The strategy matrix U(θ, φ) =
/// [[e^{iφ} cos(θ/2), sin(θ/2)], [−sin(θ/2), e^{−iφ} cos(θ/2)]].
pub fn strategy_matrix(s: &Strategy) -> Gate {
    let cos_half = (s.theta / 2.0).cos();
    let sin_half = (s.theta / 2.0).sin();
    let matrix = ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::from_polar(cos_half, s.phi),
            Complex64::new(sin_half, 0.0),
            Complex64::new(-sin_half, 0.0),
            Complex64::from_polar(cos_half, -s.phi),
        ],
    )
    .expect("strategy entries are finite");
    Gate::new(1, matrix, Tolerance::default()).expect("strategy matrices are unitary")
}

/// D ⊗ D for the defect matrix D = U(π, 0) in exact form.
fn defect_pair_matrix() -> ComplexMatrix {
    let entries = [
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
        [0.0, -1.0, 0.0, 0.0],
        [1.0, 0.0, 0.0, 0.0],
    ];
    ComplexMatrix::new(
        4,
        4,
        entries
            .iter()
            .flatten()
            .map(|&x| Complex64::new(x, 0.0))
            .collect(),
    )
    .expect("static entries")
}

/// The entangling operator J = exp{iγ (D⊗D)/2}, computed in closed form as
/// cos(γ/2) I + i sin(γ/2) (D⊗D), valid because (D⊗D)² = I.
pub fn entangler(gamma: f64) -> Result<Gate> {
    check_range("gamma", gamma, 0.0, FRAC_PI_2)?;
    let cos_part = ComplexMatrix::identity(4).scale(Complex64::new((gamma / 2.0).cos(), 0.0));
    let sin_part = defect_pair_matrix().scale(Complex64::new(0.0, (gamma / 2.0).sin()));
    let matrix = cos_part.add(&sin_part).expect("4x4 shapes");
    Ok(Gate::new(2, matrix, Tolerance::default()).expect("closed form is unitary"))
}

/// Final state J† (U_A ⊗ U_B) J |00⟩.
pub fn final_state(cfg: &GameConfig, alice: &Strategy, bob: &Strategy) -> QuantumState {
    let j = entangler(cfg.gamma).expect("config gamma is validated");
    let moves = strategy_matrix(alice).tensor(&strategy_matrix(bob));
    let start = QuantumState::basis(2, 0).expect("|00> exists");
    let entangled = j.apply(&start).expect("arity 2");
    let played = moves.apply(&entangled).expect("arity 2");
    j.dagger().apply(&played).expect("arity 2")
}

/// Expected payoffs from the final state: P_xy = |⟨xy|ψ_f⟩|², Alice gets
/// reward·P00 + sucker·P01 + temptation·P10 + punishment·P11 and Bob the
/// mirror image.
pub fn payoffs(cfg: &GameConfig, alice: &Strategy, bob: &Strategy) -> PayoffPair {
    let state = final_state(cfg, alice, bob);
    let probs = [
        state.amplitude(0).norm_sqr(),
        state.amplitude(1).norm_sqr(),
        state.amplitude(2).norm_sqr(),
        state.amplitude(3).norm_sqr(),
    ];
    let (a, b) = payoff_from_probs(&cfg.coeffs, probs);
    PayoffPair {
        alice: a,
        bob: b,
        branch_probs: Some(BranchProbs {
            p00: probs[0],
            p01: probs[1],
            p10: probs[2],
            p11: probs[3],
        }),
    }
}

fn payoff_from_probs(coeffs: &PayoffCoeffs, p: [f64; 4]) -> (f64, f64) {
    let alice = coeffs.reward * p[0] + coeffs.sucker * p[1] + coeffs.temptation * p[2]
        + coeffs.punishment * p[3];
    let bob = coeffs.reward * p[0] + coeffs.temptation * p[1] + coeffs.sucker * p[2]
        + coeffs.punishment * p[3];
    (alice, bob)
}

/// Closed-form payoffs when Alice plays the miracle move M and Bob plays
/// the classical U(θ, 0), for any entanglement γ:
///
/// alice = (21 + cos²γ (−3 + 14 cos θ) + 3 sin²γ − 16 sin γ sin θ) / 8
/// bob   = (11 + cos²γ (7 − 6 cos θ) − 7 sin²γ + 4 sin γ sin θ) / 8
///
/// Stated for the stock (3, 0, 5, 1) coefficients; no branch probabilities
/// are exposed.
pub fn miracle_payoffs_closed_form(gamma: f64, theta: f64) -> Result<PayoffPair> {
    check_range("gamma", gamma, 0.0, FRAC_PI_2)?;
    check_range("theta", theta, 0.0, PI)?;
    let cos_g_sq = gamma.cos().powi(2);
    let sin_g_sq = gamma.sin().powi(2);
    let alice = (21.0 + cos_g_sq * (-3.0 + 14.0 * theta.cos()) + 3.0 * sin_g_sq
        - 16.0 * gamma.sin() * theta.sin())
        / 8.0;
    let bob = (11.0 + cos_g_sq * (7.0 - 6.0 * theta.cos()) - 7.0 * sin_g_sq
        + 4.0 * gamma.sin() * theta.sin())
        / 8.0;
    Ok(PayoffPair {
        alice,
        bob,
        branch_probs: None,
    })
}

/// True when the strategy lies in the classical one-parameter subset
/// U(θ, 0), i.e. φ vanishes within the default tolerance.
pub fn classical_restriction(s: &Strategy) -> bool {
    s.phi < Tolerance::DEFAULT_EPS
}

/// Resolution of the deviation grid: θ and φ axes are sampled uniformly
/// over [0, π] and [0, π/2] with the stated point counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub theta_points: usize,
    pub phi_points: usize,
}

impl GridSpec {
    pub fn new(theta_points: usize, phi_points: usize) -> Result<Self> {
        let spec = Self {
            theta_points,
            phi_points,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.theta_points < 2 || self.phi_points < 2 {
            return Err(Error::InvalidGrid {
                theta_points: self.theta_points,
                phi_points: self.phi_points,
            });
        }
        Ok(())
    }
}

impl Default for GridSpec {
    /// 65 θ-points by 33 φ-points: step π/64 on both axes.
    fn default() -> Self {
        Self {
            theta_points: 65,
            phi_points: 33,
        }
    }
}

/// Which strategies a deviating player may range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeviationSpace {
    /// The whole 2-parameter set U(θ, φ).
    FullTwoParameter,
    /// The classical subset U(θ, 0).
    ClassicalOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Alice,
    Bob,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Alice => write!(f, "alice"),
            Player::Bob => write!(f, "bob"),
        }
    }
}

/// An improving unilateral deviation found by the grid search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NashWitness {
    pub player: Player,
    pub deviation: Strategy,
    pub payoff: f64,
    pub gain: f64,
}

/// Grid-relative Nash verdict: `Holds` means no sampled unilateral
/// deviation improves the deviating player's payoff by more than the
/// margin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NashVerdict {
    Holds,
    Refuted(NashWitness),
}

/// A sampled strategy pair that weakly improves both payoffs and strictly
/// improves at least one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParetoWitness {
    pub alice_strategy: Strategy,
    pub bob_strategy: Strategy,
    pub alice_payoff: f64,
    pub bob_payoff: f64,
}

/// Grid-relative Pareto verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParetoVerdict {
    Holds,
    Refuted(ParetoWitness),
}

/// Nash check over the full 2-parameter deviation space.
pub fn is_nash_eq(
    cfg: &GameConfig,
    alice: &Strategy,
    bob: &Strategy,
    grid: GridSpec,
    margin: f64,
) -> Result<NashVerdict> {
    is_nash_eq_over(cfg, alice, bob, grid, margin, DeviationSpace::FullTwoParameter)
}

/// Nash check with an explicit deviation space. The witness, when present,
/// is the sampled deviation with the largest gain; ties resolve to the
/// earliest point in (θ, φ) scan order, so results are reproducible.
pub fn is_nash_eq_over(
    cfg: &GameConfig,
    alice: &Strategy,
    bob: &Strategy,
    grid: GridSpec,
    margin: f64,
    space: DeviationSpace,
) -> Result<NashVerdict> {
    grid.validate()?;
    check_margin(margin)?;
    let base = payoffs(cfg, alice, bob);
    let kernel = GameKernel::new(cfg);
    let deviations = grid_strategies(grid, space);
    let alice_fixed = LocalOp::from_strategy(alice);
    let bob_fixed = LocalOp::from_strategy(bob);

    let mut best: Option<NashWitness> = None;
    for dev in &deviations {
        let op = LocalOp::from_strategy(dev);
        let (gain_a, payoff_a) = {
            let p = kernel.branch_probs(&op, &bob_fixed);
            let (a, _) = payoff_from_probs(&cfg.coeffs, p);
            (a - base.alice, a)
        };
        if gain_a > margin && best.is_none_or(|w| gain_a > w.gain) {
            best = Some(NashWitness {
                player: Player::Alice,
                deviation: *dev,
                payoff: payoff_a,
                gain: gain_a,
            });
        }
        let (gain_b, payoff_b) = {
            let p = kernel.branch_probs(&alice_fixed, &op);
            let (_, b) = payoff_from_probs(&cfg.coeffs, p);
            (b - base.bob, b)
        };
        if gain_b > margin && best.is_none_or(|w| gain_b > w.gain) {
            best = Some(NashWitness {
                player: Player::Bob,
                deviation: *dev,
                payoff: payoff_b,
                gain: gain_b,
            });
        }
    }
    Ok(match best {
        Some(witness) => NashVerdict::Refuted(witness),
        None => NashVerdict::Holds,
    })
}

/// Pareto check over all sampled strategy pairs. The witness, when
/// present, is the first dominating pair in scan order.
pub fn is_pareto_optimal(
    cfg: &GameConfig,
    alice: &Strategy,
    bob: &Strategy,
    grid: GridSpec,
    margin: f64,
) -> Result<ParetoVerdict> {
    grid.validate()?;
    check_margin(margin)?;
    let base = payoffs(cfg, alice, bob);
    let kernel = GameKernel::new(cfg);
    let points = grid_strategies(grid, DeviationSpace::FullTwoParameter);
    let ops: Vec<LocalOp> = points.iter().map(LocalOp::from_strategy).collect();

    for (ia, op_a) in ops.iter().enumerate() {
        for (ib, op_b) in ops.iter().enumerate() {
            let p = kernel.branch_probs(op_a, op_b);
            let (a, b) = payoff_from_probs(&cfg.coeffs, p);
            if a >= base.alice && b >= base.bob && (a > base.alice + margin || b > base.bob + margin)
            {
                return Ok(ParetoVerdict::Refuted(ParetoWitness {
                    alice_strategy: points[ia],
                    bob_strategy: points[ib],
                    alice_payoff: a,
                    bob_payoff: b,
                }));
            }
        }
    }
    Ok(ParetoVerdict::Holds)
}

/// Payoff matrix with element (i, j) = payoffs(rows[i], cols[j]).
pub fn payoff_table(
    cfg: &GameConfig,
    rows: &[Strategy],
    cols: &[Strategy],
) -> Result<Vec<Vec<PayoffPair>>> {
    if rows.is_empty() || cols.is_empty() {
        return Err(Error::EmptyStrategyList);
    }
    Ok(rows
        .iter()
        .map(|r| cols.iter().map(|c| payoffs(cfg, r, c)).collect())
        .collect())
}

fn grid_strategies(grid: GridSpec, space: DeviationSpace) -> Vec<Strategy> {
    let theta_step = PI / (grid.theta_points - 1) as f64;
    let phis: Vec<f64> = match space {
        DeviationSpace::FullTwoParameter => {
            let phi_step = FRAC_PI_2 / (grid.phi_points - 1) as f64;
            (0..grid.phi_points).map(|j| j as f64 * phi_step).collect()
        }
        DeviationSpace::ClassicalOnly => vec![0.0],
    };
    let mut out = Vec::with_capacity(grid.theta_points * phis.len());
    for k in 0..grid.theta_points {
        let theta = (k as f64 * theta_step).min(PI);
        for &phi in &phis {
            out.push(Strategy {
                theta,
                phi: phi.min(FRAC_PI_2),
            });
        }
    }
    out
}

/// A strategy matrix reduced to its two columns, for the allocation-free
/// evaluation path used by the grid searches.
struct LocalOp {
    col0: [Complex64; 2],
    col1: [Complex64; 2],
}

impl LocalOp {
    fn from_strategy(s: &Strategy) -> Self {
        let cos_half = (s.theta / 2.0).cos();
        let sin_half = (s.theta / 2.0).sin();
        Self {
            col0: [
                Complex64::from_polar(cos_half, s.phi),
                Complex64::new(-sin_half, 0.0),
            ],
            col1: [
                Complex64::new(sin_half, 0.0),
                Complex64::from_polar(cos_half, -s.phi),
            ],
        }
    }
}

/// Fixed-γ evaluation kernel computing the branch distribution of
/// J† (A ⊗ B) J |00⟩ without building 4x4 matrices.
struct GameKernel {
    cos_half_gamma: f64,
    sin_half_gamma: f64,
}

impl GameKernel {
    fn new(cfg: &GameConfig) -> Self {
        Self {
            cos_half_gamma: (cfg.gamma / 2.0).cos(),
            sin_half_gamma: (cfg.gamma / 2.0).sin(),
        }
    }

    fn branch_probs(&self, a: &LocalOp, b: &LocalOp) -> [f64; 4] {
        let cg = Complex64::new(self.cos_half_gamma, 0.0);
        let isg = Complex64::new(0.0, self.sin_half_gamma);
        // J|00⟩ = cos(γ/2)|00⟩ + i sin(γ/2)|11⟩, so (A⊗B) J|00⟩ mixes only
        // the first columns (from |00⟩) and second columns (from |11⟩).
        let mut mid = [Complex64::new(0.0, 0.0); 4];
        for i in 0..2 {
            for j in 0..2 {
                mid[2 * i + j] = cg * a.col0[i] * b.col0[j] + isg * a.col1[i] * b.col1[j];
            }
        }
        // J† ψ = cos(γ/2) ψ − i sin(γ/2) (D⊗D) ψ with
        // (D⊗D) ψ = (ψ3, −ψ2, −ψ1, ψ0).
        let out = [
            cg * mid[0] - isg * mid[3],
            cg * mid[1] + isg * mid[2],
            cg * mid[2] + isg * mid[1],
            cg * mid[3] - isg * mid[0],
        ];
        [
            out[0].norm_sqr(),
            out[1].norm_sqr(),
            out[2].norm_sqr(),
            out[3].norm_sqr(),
        ]
    }
}

fn check_range(name: &'static str, value: f64, min: f64, max: f64) -> Result<()> {
    if !value.is_finite() {
        return Err(Error::NonFiniteParameter { name, value });
    }
    if value < min || value > max {
        return Err(Error::OutOfRange {
            name,
            value,
            min,
            max,
        });
    }
    Ok(())
}

fn check_margin(margin: f64) -> Result<()> {
    if !margin.is_finite() {
        return Err(Error::NonFiniteParameter {
            name: "margin",
            value: margin,
        });
    }
    if margin < 0.0 {
        return Err(Error::OutOfRange {
            name: "margin",
            value: margin,
            min: 0.0,
            max: f64::INFINITY,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn cfg(gamma: f64) -> GameConfig {
        GameConfig::with_default_coeffs(gamma).unwrap()
    }

    fn named(n: NamedStrategy) -> Strategy {
        n.strategy()
    }

    use NamedStrategy::{Cooperate, Defect, DownToEarth, Miracle, Quantum};

    #[test]
    fn strategy_ranges_are_enforced() {
        assert!(Strategy::new(-0.1, 0.0).is_err());
        assert!(Strategy::new(PI + 0.1, 0.0).is_err());
        assert!(Strategy::new(0.0, FRAC_PI_2 + 0.1).is_err());
        assert!(Strategy::new(f64::NAN, 0.0).is_err());
        assert!(Strategy::new(PI, FRAC_PI_2).is_ok());
    }

    #[test]
    fn named_strategies_have_their_parameters() {
        assert_eq!(named(Cooperate), Strategy::new(0.0, 0.0).unwrap());
        assert_eq!(named(Defect), Strategy::new(PI, 0.0).unwrap());
        assert_eq!(named(Quantum), Strategy::new(0.0, FRAC_PI_2).unwrap());
        assert_eq!(named(Miracle), Strategy::new(FRAC_PI_2, FRAC_PI_2).unwrap());
        assert_eq!(named(DownToEarth), Strategy::new(FRAC_PI_2, 0.0).unwrap());
        assert_eq!("Q".parse::<NamedStrategy>().unwrap(), Quantum);
        assert!("X".parse::<NamedStrategy>().is_err());
        assert!("CD".parse::<NamedStrategy>().is_err());
    }

    #[test]
    fn cooperate_matrix_is_identity() {
        let g = strategy_matrix(&named(Cooperate));
        assert!(g.matrix().approx_eq(&ComplexMatrix::identity(2), tol()));
    }

    #[test]
    fn defect_matrix_is_the_real_rotation() {
        let g = strategy_matrix(&named(Defect));
        let expected =
            ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)])
                .unwrap();
        assert!(g.matrix().approx_eq(&expected, tol()));
    }

    #[test]
    fn down_to_earth_matrix() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let g = strategy_matrix(&named(DownToEarth));
        let expected =
            ComplexMatrix::new(2, 2, vec![c(s, 0.0), c(s, 0.0), c(-s, 0.0), c(s, 0.0)]).unwrap();
        assert!(g.matrix().approx_eq(&expected, tol()));
    }

    #[test]
    fn entangler_at_zero_is_identity() {
        let j = entangler(0.0).unwrap();
        assert!(j.matrix().approx_eq(&ComplexMatrix::identity(4), tol()));
    }

    #[test]
    fn entangler_at_pi_half_closed_form() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let j = entangler(FRAC_PI_2).unwrap();
        let expected = ComplexMatrix::identity(4)
            .scale(c(s, 0.0))
            .add(&defect_pair_matrix().scale(c(0.0, s)))
            .unwrap();
        assert!(j.matrix().approx_eq(&expected, tol()));
        assert!(entangler(-0.1).is_err());
        assert!(entangler(2.0).is_err());
    }

    #[test]
    fn entangler_matches_truncated_power_series() {
        // Independent route: sum_{k<=20} (iγ/2 D⊗D)^k / k!.
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let dd = defect_pair_matrix();
        for _ in 0..50 {
            let gamma: f64 = rng.gen_range(0.0..FRAC_PI_2);
            let mut series = ComplexMatrix::identity(4);
            let mut term = ComplexMatrix::identity(4);
            for k in 1..=20 {
                term = term
                    .matmul(&dd)
                    .unwrap()
                    .scale(c(0.0, gamma / 2.0) / c(k as f64, 0.0));
                series = series.add(&term).unwrap();
            }
            let j = entangler(gamma).unwrap();
            assert!(j.matrix().max_abs_diff(&series) < 1e-12);
        }
    }

    #[test]
    fn entangler_commutes_with_paired_moves() {
        let dd = defect_pair_matrix();
        let cc = ComplexMatrix::identity(4);
        for gamma in [0.0, 0.3, 1.0, FRAC_PI_2] {
            let j = entangler(gamma).unwrap();
            let lhs = j.matrix().matmul(&dd).unwrap();
            let rhs = dd.matmul(j.matrix()).unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
            let lhs = j.matrix().matmul(&cc).unwrap();
            let rhs = cc.matmul(j.matrix()).unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        }
    }

    #[test]
    fn final_state_limits() {
        let both_c = final_state(&cfg(0.0), &named(Cooperate), &named(Cooperate));
        assert!((both_c.amplitude(0).norm_sqr() - 1.0).abs() < 1e-12);

        let both_d = final_state(&cfg(0.0), &named(Defect), &named(Defect));
        assert!((both_d.amplitude(3).norm_sqr() - 1.0).abs() < 1e-12);

        let entangled_dd = final_state(&cfg(FRAC_PI_2), &named(Defect), &named(Defect));
        assert!((entangled_dd.amplitude(3).norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn payoff_spot_checks_at_full_entanglement() {
        let game = cfg(FRAC_PI_2);
        let cc = payoffs(&game, &named(Cooperate), &named(Cooperate));
        assert!((cc.alice - 3.0).abs() < 1e-9 && (cc.bob - 3.0).abs() < 1e-9);

        let qd = payoffs(&game, &named(Quantum), &named(Defect));
        assert!((qd.alice - 5.0).abs() < 1e-9 && qd.bob.abs() < 1e-9);

        let me = payoffs(&game, &named(Miracle), &named(DownToEarth));
        assert!((me.alice - 1.0).abs() < 1e-9 && (me.bob - 1.0).abs() < 1e-9);
    }

    #[test]
    fn branch_probabilities_sum_to_one_and_game_is_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..200 {
            let game = cfg(rng.gen_range(0.0..FRAC_PI_2));
            let a = Strategy::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..FRAC_PI_2)).unwrap();
            let b = Strategy::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..FRAC_PI_2)).unwrap();
            let p = payoffs(&game, &a, &b);
            let probs = p.branch_probs.unwrap();
            assert!((probs.p00 + probs.p01 + probs.p10 + probs.p11 - 1.0).abs() < 1e-9);
            let swapped = payoffs(&game, &b, &a);
            assert!((p.alice - swapped.bob).abs() < 1e-9);
            assert!((p.bob - swapped.alice).abs() < 1e-9);
        }
    }

    #[test]
    fn kernel_route_agrees_with_matrix_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..200 {
            let game = cfg(rng.gen_range(0.0..FRAC_PI_2));
            let a = Strategy::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..FRAC_PI_2)).unwrap();
            let b = Strategy::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..FRAC_PI_2)).unwrap();
            let kernel = GameKernel::new(&game);
            let fast = kernel.branch_probs(&LocalOp::from_strategy(&a), &LocalOp::from_strategy(&b));
            let slow = payoffs(&game, &a, &b).branch_probs.unwrap();
            assert!((fast[0] - slow.p00).abs() < 1e-12);
            assert!((fast[1] - slow.p01).abs() < 1e-12);
            assert!((fast[2] - slow.p10).abs() < 1e-12);
            assert!((fast[3] - slow.p11).abs() < 1e-12);
        }
    }

    #[test]
    fn classical_limit_reproduces_mixed_strategy_game() {
        // At γ = 0 with φ = 0 the game is the classical dilemma with
        // cooperation probabilities cos²(θ/2).
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let game = cfg(0.0);
        for _ in 0..100 {
            let ta = rng.gen_range(0.0..PI);
            let tb = rng.gen_range(0.0..PI);
            let pa = (ta / 2.0).cos().powi(2);
            let pb = (tb / 2.0).cos().powi(2);
            let expect_alice =
                3.0 * pa * pb + 5.0 * (1.0 - pa) * pb + (1.0 - pa) * (1.0 - pb);
            let expect_bob = 3.0 * pa * pb + 5.0 * pa * (1.0 - pb) + (1.0 - pa) * (1.0 - pb);
            let got = payoffs(
                &game,
                &Strategy::new(ta, 0.0).unwrap(),
                &Strategy::new(tb, 0.0).unwrap(),
            );
            assert!((got.alice - expect_alice).abs() < 1e-9);
            assert!((got.bob - expect_bob).abs() < 1e-9);
        }
    }

    #[test]
    fn miracle_closed_form_spot_values() {
        let at_center = miracle_payoffs_closed_form(FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!((at_center.alice - 1.0).abs() < 1e-9);
        assert!((at_center.bob - 1.0).abs() < 1e-9);
        assert!(at_center.branch_probs.is_none());

        for k in 0..=16 {
            let theta = k as f64 * PI / 16.0;
            let p = miracle_payoffs_closed_form(FRAC_PI_2, theta).unwrap();
            let diff = p.alice - p.bob;
            assert!((diff - 2.5 * (1.0 - theta.sin())).abs() < 1e-9);
        }
        assert!(miracle_payoffs_closed_form(2.0, 0.0).is_err());
        assert!(miracle_payoffs_closed_form(0.0, -1.0).is_err());
    }

    #[test]
    fn miracle_closed_form_matches_simulation_on_coarse_grid() {
        let miracle = named(Miracle);
        for gi in 0..=10 {
            let gamma = gi as f64 * FRAC_PI_2 / 10.0;
            let game = cfg(gamma);
            for ti in 0..=10 {
                let theta = ti as f64 * PI / 10.0;
                let closed = miracle_payoffs_closed_form(gamma, theta).unwrap();
                let sim = payoffs(&game, &miracle, &Strategy::new(theta, 0.0).unwrap());
                assert!((closed.alice - sim.alice).abs() < 1e-9, "gamma {gamma} theta {theta}");
                assert!((closed.bob - sim.bob).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn classical_restriction_picks_out_phi_zero() {
        assert!(classical_restriction(&named(Defect)));
        assert!(classical_restriction(&named(DownToEarth)));
        assert!(!classical_restriction(&named(Quantum)));
        assert!(!classical_restriction(&named(Miracle)));
    }

    #[test]
    fn nash_for_classical_defection() {
        let grid = GridSpec::new(17, 9).unwrap();
        let verdict = is_nash_eq(&cfg(0.0), &named(Defect), &named(Defect), grid, 1e-7).unwrap();
        assert_eq!(verdict, NashVerdict::Holds);
    }

    #[test]
    fn entangled_defection_is_refuted_by_the_quantum_move() {
        let grid = GridSpec::default();
        let verdict =
            is_nash_eq(&cfg(FRAC_PI_2), &named(Defect), &named(Defect), grid, 1e-7).unwrap();
        match verdict {
            NashVerdict::Refuted(w) => {
                assert!(w.payoff >= 5.0 - 1e-6, "witness payoff {}", w.payoff);
                assert!((w.gain - 4.0).abs() < 1e-6);
                assert!(w.deviation.theta.abs() < 1e-12);
                assert!((w.deviation.phi - FRAC_PI_2).abs() < 1e-12);
            }
            NashVerdict::Holds => panic!("expected refutation"),
        }
    }

    #[test]
    fn quantum_pair_is_nash_and_pareto_optimal() {
        let grid = GridSpec::new(17, 9).unwrap();
        let q = named(Quantum);
        let nash = is_nash_eq(&cfg(FRAC_PI_2), &q, &q, grid, 1e-7).unwrap();
        assert_eq!(nash, NashVerdict::Holds);
        let pareto = is_pareto_optimal(&cfg(FRAC_PI_2), &q, &q, grid, 1e-7).unwrap();
        assert_eq!(pareto, ParetoVerdict::Holds);
    }

    #[test]
    fn classical_defection_is_not_pareto_optimal() {
        let verdict = is_pareto_optimal(
            &cfg(0.0),
            &named(Defect),
            &named(Defect),
            GridSpec::new(17, 9).unwrap(),
            1e-7,
        )
        .unwrap();
        match verdict {
            ParetoVerdict::Refuted(w) => {
                // First dominating pair in scan order is (C, C) at (3, 3).
                assert!(w.alice_strategy.theta.abs() < 1e-12);
                assert!(w.bob_strategy.theta.abs() < 1e-12);
                assert!((w.alice_payoff - 3.0).abs() < 1e-9);
                assert!((w.bob_payoff - 3.0).abs() < 1e-9);
            }
            ParetoVerdict::Holds => panic!("expected refutation"),
        }
    }

    #[test]
    fn degenerate_grid_still_yields_a_verdict() {
        let grid = GridSpec::new(2, 2).unwrap();
        let q = named(Quantum);
        assert!(is_nash_eq(&cfg(FRAC_PI_2), &q, &q, grid, 1e-7).is_ok());
        assert!(is_pareto_optimal(&cfg(FRAC_PI_2), &q, &q, grid, 1e-7).is_ok());
        assert!(GridSpec::new(1, 5).is_err());
    }

    #[test]
    fn restricted_deviation_space_is_exposed() {
        // Against D at γ = π/2 no classical deviation reaches Q's payoff.
        let verdict = is_nash_eq_over(
            &cfg(FRAC_PI_2),
            &named(Defect),
            &named(Defect),
            GridSpec::default(),
            1e-7,
            DeviationSpace::ClassicalOnly,
        )
        .unwrap();
        match verdict {
            NashVerdict::Refuted(w) => assert!(w.payoff < 5.0 - 1e-3),
            NashVerdict::Holds => {}
        }
    }

    #[test]
    fn named_submodel_nash_and_best_response() {
        let game = cfg(FRAC_PI_2);
        let q = named(Quantum);
        let base = payoffs(&game, &q, &q);
        for dev in [Cooperate, Defect, Quantum, Miracle] {
            let p = payoffs(&game, &named(dev), &q);
            assert!(p.alice <= base.alice + 1e-9, "alice deviation {dev:?}");
        }
        for dev in [Cooperate, Defect, DownToEarth] {
            let p = payoffs(&game, &q, &named(dev));
            assert!(p.bob <= base.bob + 1e-9, "bob deviation {dev:?}");
        }

        // Against the miracle move, Bob's best reply among C, D, E is E.
        let m = named(Miracle);
        let bob_c = payoffs(&game, &m, &named(Cooperate)).bob;
        let bob_d = payoffs(&game, &m, &named(Defect)).bob;
        let bob_e = payoffs(&game, &m, &named(DownToEarth)).bob;
        assert!(bob_e > bob_c && bob_e > bob_d);
        assert!((bob_e - 1.0).abs() < 1e-9);
    }

    #[test]
    fn payoff_table_layout() {
        let game = cfg(0.0);
        let cd = [named(Cooperate), named(Defect)];
        let table = payoff_table(&game, &cd, &cd).unwrap();
        let expect = [[(3.0, 3.0), (0.0, 5.0)], [(5.0, 0.0), (1.0, 1.0)]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((table[i][j].alice - expect[i][j].0).abs() < 1e-9);
                assert!((table[i][j].bob - expect[i][j].1).abs() < 1e-9);
            }
        }

        let single = payoff_table(&cfg(FRAC_PI_2), &[named(Miracle)], &[named(DownToEarth)])
            .unwrap();
        assert!((single[0][0].alice - 1.0).abs() < 1e-9);
        assert!((single[0][0].bob - 1.0).abs() < 1e-9);

        assert!(matches!(
            payoff_table(&game, &[], &cd),
            Err(Error::EmptyStrategyList)
        ));
    }

    #[test]
    fn config_validation() {
        assert!(GameConfig::with_default_coeffs(-0.1).is_err());
        assert!(GameConfig::with_default_coeffs(2.0).is_err());
        assert!(PayoffCoeffs::new(3.0, 0.0, f64::INFINITY, 1.0).is_err());
        assert!(GameConfig::new(0.5, PayoffCoeffs::new(2.0, 0.0, 3.0, 1.0).unwrap()).is_ok());
    }
}
