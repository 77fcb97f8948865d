use std::io::{BufRead, Write};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GameError, GameState, GameStatus};
use crate::extend::ProperSearch;
use crate::formula::{parse_form, LinCnf};
use crate::gf2::{BitVec, Echelon, LinEquation, Push};
use crate::text::tokens;

pub trait Prover {
    /// The next form to ask, or `None` to stop the game.
    fn next_form(&mut self, state: &GameState, cnf: &LinCnf) -> Result<Option<BitVec>, GameError>;

    /// The value Prover settles after Delayer answered `*` on `form`.
    fn choose(&mut self, state: &GameState, form: &BitVec) -> Result<bool, GameError>;

    /// Called after each round is recorded.
    fn observe(&mut self, _state: &GameState, _cnf: &LinCnf) -> Result<(), GameError> {
        Ok(())
    }
}

fn open_variables(state: &GameState) -> Vec<usize> {
    let n = state.nvars();
    (0..n).filter(|&v| state.value_of(&BitVec::unit(n, v)).is_none()).collect()
}

/// Asks random sparse forms over variables Φ leaves open and settles `*`
/// answers by a fair coin.
#[derive(Clone, Debug)]
pub struct RandomProver {
    rng: ChaCha8Rng,
    max_support: usize,
}

impl RandomProver {
    pub fn new(seed: u64) -> Self {
        RandomProver { rng: ChaCha8Rng::seed_from_u64(seed), max_support: 3 }
    }

    pub fn with_max_support(mut self, k: usize) -> Self {
        self.max_support = k.max(1);
        self
    }
}

impl Prover for RandomProver {
    fn next_form(&mut self, state: &GameState, _cnf: &LinCnf) -> Result<Option<BitVec>, GameError> {
        let open = open_variables(state);
        if open.is_empty() {
            return Ok(None);
        }
        let n = state.nvars();
        for _ in 0..8 {
            let size = self.rng.gen_range(1..=self.max_support.min(open.len()));
            let picked = sample(&mut self.rng, open.len(), size);
            let g = BitVec::from_indices(n, picked.iter().map(|i| open[i]));
            if state.value_of(&g).is_none() {
                return Ok(Some(g));
            }
        }
        let v = open[self.rng.gen_range(0..open.len())];
        Ok(Some(BitVec::unit(n, v)))
    }

    fn choose(&mut self, _state: &GameState, _form: &BitVec) -> Result<bool, GameError> {
        Ok(self.rng.gen())
    }
}

/// Asks the variables in index order, skipping those Φ fixes, and settles
/// each `*` with the value leaving fewer F-proper solutions.
#[derive(Clone, Debug)]
pub struct SweepProver {
    search: ProperSearch,
}

impl SweepProver {
    pub fn new(cnf: &LinCnf, f: &[usize]) -> Self {
        SweepProver { search: ProperSearch::new(cnf, f) }
    }

    pub fn with_budget(mut self, nodes: u64) -> Self {
        self.search = self.search.with_budget(nodes);
        self
    }

    fn count_with(&self, e: &Echelon, form: &BitVec, value: bool) -> Option<f64> {
        let mut e = e.clone();
        if e.push(&LinEquation::new(form.clone(), value)) == Push::Conflict {
            return Some(0.0);
        }
        self.search.count_in(&mut e).ok()
    }
}

impl Prover for SweepProver {
    fn next_form(&mut self, state: &GameState, _cnf: &LinCnf) -> Result<Option<BitVec>, GameError> {
        let n = state.nvars();
        Ok(open_variables(state).first().map(|&v| BitVec::unit(n, v)))
    }

    /// Ties and exhausted counting budgets settle to 0.
    fn choose(&mut self, state: &GameState, form: &BitVec) -> Result<bool, GameError> {
        if self.search.nvars() != state.nvars() {
            return Ok(false);
        }
        let zero = self.count_with(state.echelon(), form, false);
        let one = self.count_with(state.echelon(), form, true);
        Ok(matches!((zero, one), (Some(z), Some(o)) if o < z))
    }
}

/// Replays a script with one form or bit per line. A bit line follows each
/// form that Delayer answered with `*`; blank lines and `c` comments are
/// skipped.
#[derive(Clone, Debug)]
pub struct ScriptedProver {
    lines: Vec<(usize, String)>,
    pos: usize,
}

impl ScriptedProver {
    pub fn new(script: &str) -> Self {
        let lines = script
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim().to_string()))
            .filter(|(_, l)| !l.is_empty() && l != "c" && !l.starts_with("c "))
            .collect();
        ScriptedProver { lines, pos: 0 }
    }

    pub fn remaining(&self) -> usize {
        self.lines.len() - self.pos
    }
}

impl Prover for ScriptedProver {
    fn next_form(&mut self, state: &GameState, _cnf: &LinCnf) -> Result<Option<BitVec>, GameError> {
        let Some((line, text)) = self.lines.get(self.pos) else {
            return Ok(None);
        };
        self.pos += 1;
        let toks = tokens(text, *line);
        if toks.len() != 1 {
            return Err(GameError::Script { line: *line, message: "expected one form".into() });
        }
        Ok(Some(parse_form(&toks[0], state.nvars())?))
    }

    fn choose(&mut self, _state: &GameState, _form: &BitVec) -> Result<bool, GameError> {
        let Some((line, text)) = self.lines.get(self.pos) else {
            return Err(GameError::Script {
                line: self.lines.last().map_or(0, |l| l.0),
                message: "script ended where a bit was expected".into(),
            });
        };
        self.pos += 1;
        match text.as_str() {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(GameError::Script { line: *line, message: format!("expected bit 0 or 1 after a * answer, found {text:?}") }),
        }
    }
}

/// A human Prover on a line-oriented terminal.
pub struct InteractiveProver<R, W> {
    input: R,
    output: W,
}

impl<R: BufRead, W: Write> InteractiveProver<R, W> {
    pub fn new(input: R, output: W) -> Self {
        InteractiveProver { input, output }
    }

    fn read_line(&mut self) -> Result<Option<String>, GameError> {
        let mut buf = String::new();
        if self.input.read_line(&mut buf)? == 0 {
            return Ok(None);
        }
        Ok(Some(buf.trim().to_string()))
    }
}

impl<R: BufRead, W: Write> Prover for InteractiveProver<R, W> {
    fn next_form(&mut self, state: &GameState, _cnf: &LinCnf) -> Result<Option<BitVec>, GameError> {
        loop {
            write!(self.output, "round {}> form (q to quit): ", state.transcript().len() + 1)?;
            self.output.flush()?;
            let Some(text) = self.read_line()? else {
                return Ok(None);
            };
            if text == "q" {
                return Ok(None);
            }
            let line = state.transcript().len() + 1;
            match tokens(&text, line).as_slice() {
                [tok] => match parse_form(tok, state.nvars()) {
                    Ok(g) => return Ok(Some(g)),
                    Err(e) => writeln!(self.output, "  {}", e.message)?,
                },
                _ => writeln!(self.output, "  enter one form such as 1+3")?,
            }
        }
    }

    fn choose(&mut self, _state: &GameState, _form: &BitVec) -> Result<bool, GameError> {
        loop {
            write!(self.output, "  delayer: *  your value (0/1): ")?;
            self.output.flush()?;
            match self.read_line()?.as_deref() {
                Some("0") => return Ok(false),
                Some("1") => return Ok(true),
                Some(_) => writeln!(self.output, "  enter 0 or 1")?,
                None => return Ok(false),
            }
        }
    }

    fn observe(&mut self, state: &GameState, cnf: &LinCnf) -> Result<(), GameError> {
        let r = state.transcript().last().expect("a round was recorded");
        let status = match state.status(cnf) {
            GameStatus::Running => "running".to_string(),
            GameStatus::ClauseFalsified(i) => format!("clause {} falsified", i + 1),
        };
        writeln!(
            self.output,
            "  delayer: {}  settled {}={}  coins {}  {}",
            r.answer,
            r.form,
            r.value as u8,
            state.coins(),
            status
        )?;
        Ok(())
    }
}
