use super::{BitVec, LinEquation, LinSystem};

/// Result of adding one equation to an [`Echelon`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Push {
    /// The equation was independent and is now a row.
    Added,
    /// The equation was already implied.
    Redundant,
    /// The equation contradicts the current rows; nothing was changed.
    Conflict,
}

#[derive(Clone)]
struct Row {
    form: BitVec,
    rhs: bool,
    pivot: usize,
    /// Rows that had this row xored into them on insertion.
    touched: Vec<usize>,
}

/// Incrementally maintained fully reduced echelon form with LIFO undo.
///
/// Every row has a pivot column that is zero in all other rows, so the value
/// of a form is read off by xoring the rows of the pivots it touches. Undo
/// replays the insertion xors in reverse.
#[derive(Clone)]
pub struct Echelon {
    nvars: usize,
    rows: Vec<Row>,
    pivot_of: Vec<u32>,
    pivot_mask: BitVec,
}

const NONE: u32 = u32::MAX;

impl std::fmt::Debug for Echelon {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Echelon").field("nvars", &self.nvars).field("rows", &self.to_system()).finish()
    }
}

impl Echelon {
    pub fn new(nvars: usize) -> Self {
        Echelon { nvars, rows: Vec::new(), pivot_of: vec![NONE; nvars], pivot_mask: BitVec::zeros(nvars) }
    }

    /// Loads a system; returns `None` if it is inconsistent.
    pub fn from_system(system: &LinSystem) -> Option<Self> {
        let mut e = Echelon::new(system.nvars());
        for eq in system.equations() {
            if e.push(eq) == Push::Conflict {
                return None;
            }
        }
        Some(e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Undo marker; pass to [`Echelon::undo_to`].
    pub fn mark(&self) -> usize {
        self.rows.len()
    }

    fn residual(&self, form: &BitVec) -> (BitVec, bool) {
        let mut acc = form.clone();
        let mut rhs = false;
        let hits = form.and(&self.pivot_mask);
        for p in hits.ones() {
            let row = &self.rows[self.pivot_of[p] as usize];
            acc.xor_assign(&row.form);
            rhs ^= row.rhs;
        }
        (acc, rhs)
    }

    /// The forced value of `form`, if the rows determine it.
    pub fn value_of(&self, form: &BitVec) -> Option<bool> {
        let hits = form.and(&self.pivot_mask);
        if hits.is_zero() {
            return form.is_zero().then_some(false);
        }
        let (acc, rhs) = self.residual(form);
        acc.is_zero().then_some(rhs)
    }

    pub fn push(&mut self, eq: &LinEquation) -> Push {
        let (form, rhs) = {
            let (acc, r) = self.residual(&eq.form);
            (acc, r ^ eq.rhs)
        };
        let Some(pivot) = form.first_one() else {
            return if rhs { Push::Conflict } else { Push::Redundant };
        };
        let mut touched = Vec::new();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if row.form.get(pivot) {
                row.form.xor_assign(&form);
                row.rhs ^= rhs;
                touched.push(i);
            }
        }
        self.pivot_of[pivot] = self.rows.len() as u32;
        self.pivot_mask.set(pivot, true);
        self.rows.push(Row { form, rhs, pivot, touched });
        Push::Added
    }

    pub fn pop(&mut self) {
        let row = self.rows.pop().expect("pop on empty echelon");
        for &i in &row.touched {
            let r = &mut self.rows[i];
            r.form.xor_assign(&row.form);
            r.rhs ^= row.rhs;
        }
        self.pivot_of[row.pivot] = NONE;
        self.pivot_mask.set(row.pivot, false);
    }

    pub fn undo_to(&mut self, mark: usize) {
        while self.rows.len() > mark {
            self.pop();
        }
    }

    /// Solution with all free variables set to 0.
    pub fn solution(&self) -> Vec<bool> {
        let mut out = vec![false; self.nvars];
        for row in &self.rows {
            out[row.pivot] = row.rhs;
        }
        out
    }

    pub fn free_count(&self) -> usize {
        self.nvars - self.rows.len()
    }

    pub fn to_system(&self) -> LinSystem {
        LinSystem::new(self.nvars, self.rows.iter().map(|r| LinEquation::new(r.form.clone(), r.rhs)).collect())
    }
}
