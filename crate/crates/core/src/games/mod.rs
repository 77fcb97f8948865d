//! Prover–Delayer games on linear CNFs.
//!
//! Prover asks for the value of a linear form; Delayer answers 0, 1 or `*`.
//! On `*` Prover picks the value and Delayer earns a coin. The game ends once
//! the settled equations Φ falsify some clause. The built-in [`Delayer`] plays
//! the extensibility strategy: it answers `*` exactly when both values keep an
//! F-proper solution of Φ alive, so on an `m`-extensible formula it earns at
//! least `m` coins against every Prover.

use std::fmt;

use thiserror::Error;

use crate::extend::{ExtendError, ProperSearch, DEFAULT_NODE_BUDGET};
use crate::formula::LinCnf;
use crate::gf2::{BitVec, Echelon, LinEquation, LinSystem, Push};
use crate::ParseError;

mod prover;

pub use prover::{InteractiveProver, Prover, RandomProver, ScriptedProver, SweepProver};

#[derive(Debug, Error)]
pub enum GameError {
    #[error(transparent)]
    Extend(#[from] ExtendError),
    #[error("script line {line}: {message}")]
    Script { line: usize, message: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Zero,
    One,
    Star,
}

impl Answer {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Answer::One
        } else {
            Answer::Zero
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Answer::Zero => "0",
            Answer::One => "1",
            Answer::Star => "*",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub form: BitVec,
    pub answer: Answer,
    pub value: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GameStatus {
    Running,
    ClauseFalsified(usize),
}

/// Φ and the rounds that produced it.
#[derive(Clone, Debug)]
pub struct GameState {
    nvars: usize,
    echelon: Echelon,
    transcript: Vec<Round>,
    star_rows: Vec<usize>,
}

impl GameState {
    pub fn new(nvars: usize) -> Self {
        GameState { nvars, echelon: Echelon::new(nvars), transcript: Vec::new(), star_rows: Vec::new() }
    }

    /// Replays a transcript; fails if a settled value contradicts Φ.
    pub fn replay(nvars: usize, rounds: &[Round]) -> Option<Self> {
        let mut s = GameState::new(nvars);
        for r in rounds {
            if s.value_of(&r.form).is_some_and(|v| v != r.value) {
                return None;
            }
            s.record(r.clone());
        }
        Some(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coins(&self) -> usize {
        self.star_rows.len()
    }

    pub fn transcript(&self) -> &[Round] {
        &self.transcript
    }

    /// Transcript indices of the rounds answered with `*`.
    pub fn star_rows(&self) -> &[usize] {
        &self.star_rows
    }

    /// The value Φ forces on `form`, if any.
    pub fn value_of(&self, form: &BitVec) -> Option<bool> {
        self.echelon.value_of(form)
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn phi(&self) -> LinSystem {
        LinSystem::new(self.nvars, self.transcript.iter().map(|r| LinEquation::new(r.form.clone(), r.value)).collect())
    }

    /// Φ′: the equations settled by Prover after a `*`.
    pub fn star_system(&self) -> LinSystem {
        LinSystem::new(
            self.nvars,
            self.star_rows.iter().map(|&i| LinEquation::new(self.transcript[i].form.clone(), self.transcript[i].value)).collect(),
        )
    }

    pub(crate) fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    pub fn status(&self, cnf: &LinCnf) -> GameStatus {
        for (i, c) in cnf.clauses().iter().enumerate() {
            if c.is_tautological() {
                continue;
            }
            if c.literals().iter().all(|l| self.value_of(&l.form) == Some(!l.rhs)) {
                return GameStatus::ClauseFalsified(i);
            }
        }
        GameStatus::Running
    }

    fn record(&mut self, round: Round) {
        let pushed = self.echelon.push(&LinEquation::new(round.form.clone(), round.value));
        assert_ne!(pushed, Push::Conflict, "settled value contradicts earlier answers");
        if round.answer == Answer::Star {
            self.star_rows.push(self.transcript.len());
        }
        self.transcript.push(round);
    }
}

/// The smallest non-tautological clause `i` with Φ ⊨ ¬C_i.
pub fn game_status(phi: &LinSystem, cnf: &LinCnf) -> GameStatus {
    for (i, c) in cnf.clauses().iter().enumerate() {
        if !c.is_tautological() && phi.implies_all(c.negation().equations()) {
            return GameStatus::ClauseFalsified(i);
        }
    }
    GameStatus::Running
}

/// One stateless Delayer answer for Φ = `phi`.
pub fn delayer_respond(phi: &LinSystem, g: &BitVec, cnf: &LinCnf, f: &[usize]) -> Result<Answer, ExtendError> {
    if let Some(v) = phi.value_of(g) {
        return Ok(Answer::from_bool(v));
    }
    let search = ProperSearch::new(cnf, f);
    let zero = search.find(&phi.with(LinEquation::new(g.clone(), false)), None)?.is_some();
    let one = search.find(&phi.with(LinEquation::new(g.clone(), true)), None)?.is_some();
    Ok(match (zero, one) {
        (true, true) => Answer::Star,
        (false, true) => Answer::One,
        _ => Answer::Zero,
    })
}

/// The extensibility Delayer. Keeps one F-proper solution of Φ so that each
/// answer costs a single search.
#[derive(Clone, Debug)]
pub struct Delayer {
    search: ProperSearch,
    witness: Option<Vec<bool>>,
    started: bool,
    alternative: Option<Vec<bool>>,
}

impl Delayer {
    pub fn new(cnf: &LinCnf, f: &[usize]) -> Self {
        Delayer { search: ProperSearch::new(cnf, f), witness: None, started: false, alternative: None }
    }

    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.search = self.search.with_budget(nodes);
        self
    }

    /// Whether Φ still has an F-proper solution.
    pub fn has_proper_solution(&self) -> bool {
        !self.started || self.witness.is_some()
    }

    pub fn respond(&mut self, state: &GameState, g: &BitVec) -> Result<Answer, ExtendError> {
        self.alternative = None;
        if let Some(v) = state.value_of(g) {
            return Ok(Answer::from_bool(v));
        }
        if !self.started {
            self.started = true;
            let mut e = state.echelon().clone();
            self.witness = self.search.find_in(&mut e, None)?;
        }
        let Some(w) = &self.witness else {
            return Ok(Answer::Zero);
        };
        let alpha = g.eval(w);
        let mut e = state.echelon().clone();
        if e.push(&LinEquation::new(g.clone(), !alpha)) == Push::Conflict {
            return Ok(Answer::from_bool(alpha));
        }
        match self.search.find_in(&mut e, None)? {
            Some(other) => {
                self.alternative = Some(other);
                Ok(Answer::Star)
            }
            None => Ok(Answer::from_bool(alpha)),
        }
    }

    /// Updates the kept solution once the value of `g` is settled.
    pub fn settle(&mut self, g: &BitVec, value: bool) {
        let alternative = self.alternative.take();
        if let Some(w) = &self.witness {
            if g.eval(w) != value {
                self.witness = alternative;
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FinalStatus {
    Falsified(usize),
    Timeout,
    ProverStopped,
}

impl fmt::Display for FinalStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FinalStatus::Falsified(i) => write!(f, "falsified:{}", i + 1),
            FinalStatus::Timeout => f.write_str("timeout"),
            FinalStatus::ProverStopped => f.write_str("stopped"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GameOutcome {
    pub coins: usize,
    pub transcript: Vec<Round>,
    pub status: FinalStatus,
    /// Rounds played before Φ lost its last F-proper solution, if it did.
    pub proper_until: Option<usize>,
}

impl GameOutcome {
    /// The transcript in scripted-prover format: each form on its own line,
    /// followed by the chosen bit when Delayer answered `*`.
    pub fn script(&self) -> String {
        let mut out = String::new();
        for r in &self.transcript {
            out.push_str(&r.form.to_string());
            out.push('\n');
            if r.answer == Answer::Star {
                out.push_str(if r.value { "1\n" } else { "0\n" });
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct GameOptions {
    /// Defaults to `4 * nvars`.
    pub max_rounds: Option<usize>,
    pub node_budget: u64,
}

impl Default for GameOptions {
    fn default() -> Self {
        GameOptions { max_rounds: None, node_budget: DEFAULT_NODE_BUDGET }
    }
}

/// Plays the extensibility Delayer for clauses `f` against `prover`.
pub fn run_game(cnf: &LinCnf, f: &[usize], prover: &mut dyn Prover, opts: &GameOptions) -> Result<GameOutcome, GameError> {
    let max_rounds = opts.max_rounds.unwrap_or(4 * cnf.nvars());
    let mut state = GameState::new(cnf.nvars());
    let mut delayer = Delayer::new(cnf, f).with_budget(opts.node_budget);
    let mut proper_until = None;
    let status = loop {
        if let GameStatus::ClauseFalsified(i) = state.status(cnf) {
            break FinalStatus::Falsified(i);
        }
        if state.transcript().len() >= max_rounds {
            break FinalStatus::Timeout;
        }
        let Some(g) = prover.next_form(&state, cnf)? else {
            break FinalStatus::ProverStopped;
        };
        if g.len() != cnf.nvars() {
            return Err(GameError::InvalidArgument(format!("form over {} variables, formula has {}", g.len(), cnf.nvars())));
        }
        let answer = delayer.respond(&state, &g)?;
        if proper_until.is_none() && !delayer.has_proper_solution() {
            proper_until = Some(state.transcript().len());
        }
        let value = match answer {
            Answer::Zero => false,
            Answer::One => true,
            Answer::Star => prover.choose(&state, &g)?,
        };
        delayer.settle(&g, value);
        state.record(Round { form: g, answer, value });
        prover.observe(&state, cnf)?;
    };
    Ok(GameOutcome { coins: state.coins(), transcript: state.transcript, status, proper_until })
}
