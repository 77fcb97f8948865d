use std::fmt;

use super::{BitVec, Gf2Error};

/// Default ceiling on free variables for solution enumeration.
pub const DEFAULT_ENUM_LIMIT: usize = 24;

/// A linear equation `f = rhs` over F2 with a homogeneous form `f`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinEquation {
    pub form: BitVec,
    pub rhs: bool,
}

impl LinEquation {
    pub fn new(form: BitVec, rhs: bool) -> Self {
        LinEquation { form, rhs }
    }

    /// `x_var = value`, with a 0-based variable index.
    pub fn var(nvars: usize, var: usize, value: bool) -> Self {
        LinEquation::new(BitVec::unit(nvars, var), value)
    }

    pub fn nvars(&self) -> usize {
        self.form.len()
    }

    /// `0 = 0`.
    pub fn is_trivially_true(&self) -> bool {
        self.form.is_zero() && !self.rhs
    }

    /// `0 = 1`.
    pub fn is_trivially_false(&self) -> bool {
        self.form.is_zero() && self.rhs
    }

    pub fn holds(&self, assignment: &[bool]) -> bool {
        self.form.eval(assignment) == self.rhs
    }

    /// The same form with the opposite right-hand side.
    pub fn flipped(&self) -> Self {
        LinEquation::new(self.form.clone(), !self.rhs)
    }

    pub fn add(&self, other: &LinEquation) -> LinEquation {
        let mut form = self.form.clone();
        form.xor_assign(&other.form);
        LinEquation::new(form, self.rhs ^ other.rhs)
    }
}

impl fmt::Debug for LinEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for LinEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.form, self.rhs as u8)
    }
}

/// A conjunction of linear equations together with its reduced row-echelon form.
///
/// The canonical rows are fully reduced with strictly increasing pivots. Every
/// inconsistent system has the single canonical row `0 = 1`, so two systems
/// have the same solution set exactly when their canonical rows agree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinSystem {
    nvars: usize,
    equations: Vec<LinEquation>,
    canonical: Vec<LinEquation>,
    consistent: bool,
}

impl LinSystem {
    pub fn new(nvars: usize, equations: Vec<LinEquation>) -> Self {
        for eq in &equations {
            assert_eq!(eq.nvars(), nvars, "equation width does not match system");
        }
        let (canonical, consistent) = reduce(nvars, &equations);
        LinSystem { nvars, equations, canonical, consistent }
    }

    pub fn empty(nvars: usize) -> Self {
        LinSystem::new(nvars, Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn equations(&self) -> &[LinEquation] {
        &self.equations
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn canonical_rows(&self) -> &[LinEquation] {
        &self.canonical
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// Rank of the coefficient matrix; for an inconsistent system this is the
    /// number of canonical rows, i.e. 1.
    pub fn rank(&self) -> usize {
        self.canonical.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.canonical.iter().filter_map(|r| r.form.first_one())
    }

    /// The system whose equations are exactly the canonical rows.
    pub fn to_canonical(&self) -> LinSystem {
        LinSystem {
            nvars: self.nvars,
            equations: self.canonical.clone(),
            canonical: self.canonical.clone(),
            consistent: self.consistent,
        }
    }

    /// Byte key of the canonical form; equal keys mean equal solution sets.
    pub fn key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(4 + self.canonical.len() * (self.nvars / 8 + 2));
        out.extend_from_slice(&(self.nvars as u32).to_le_bytes());
        for row in &self.canonical {
            out.extend(row.form.to_bytes());
            out.push(row.rhs as u8);
        }
        out
    }

    pub fn same_solutions(&self, other: &LinSystem) -> bool {
        self.nvars == other.nvars && self.canonical == other.canonical
    }

    pub fn with(&self, eq: LinEquation) -> LinSystem {
        let mut equations = self.equations.clone();
        equations.push(eq);
        LinSystem::new(self.nvars, equations)
    }

    pub fn extend(&self, eqs: impl IntoIterator<Item = LinEquation>) -> LinSystem {
        let mut equations = self.equations.clone();
        equations.extend(eqs);
        LinSystem::new(self.nvars, equations)
    }

    pub fn holds(&self, assignment: &[bool]) -> bool {
        self.equations.iter().all(|e| e.holds(assignment))
    }

    /// Reduces `form` modulo the canonical rows; returns the residual form and
    /// the accumulated right-hand side.
    pub fn reduce_form(&self, form: &BitVec) -> (BitVec, bool) {
        let mut residual = form.clone();
        let mut rhs = false;
        for row in &self.canonical {
            let pivot = row.form.first_one().expect("canonical rows of a consistent system are nonzero");
            if residual.get(pivot) {
                residual.xor_assign(&row.form);
                rhs ^= row.rhs;
            }
        }
        (residual, rhs)
    }

    /// The value every solution assigns to `form`, if it is constant.
    /// Inconsistent systems return `None`.
    pub fn value_of(&self, form: &BitVec) -> Option<bool> {
        if !self.consistent {
            return None;
        }
        let (residual, rhs) = self.reduce_form(form);
        residual.is_zero().then_some(rhs)
    }

    pub fn implies(&self, eq: &LinEquation) -> bool {
        if !self.consistent {
            return true;
        }
        let (residual, rhs) = self.reduce_form(&eq.form);
        residual.is_zero() && rhs == eq.rhs
    }

    pub fn implies_all<'a>(&self, eqs: impl IntoIterator<Item = &'a LinEquation>) -> bool {
        eqs.into_iter().all(|e| self.implies(e))
    }

    /// Solution with every free variable set to 0.
    pub fn solve(&self) -> Result<Vec<bool>, Gf2Error> {
        if !self.consistent {
            return Err(Gf2Error::Inconsistent);
        }
        let mut out = vec![false; self.nvars];
        for row in &self.canonical {
            out[row.form.first_one().unwrap()] = row.rhs;
        }
        Ok(out)
    }

    pub fn free_variables(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.nvars];
        if self.consistent {
            for p in self.pivots() {
                is_pivot[p] = true;
            }
        }
        (0..self.nvars).filter(|&v| !is_pivot[v]).collect()
    }

    pub fn enumerate_solutions(&self, cap: usize) -> Result<Solutions<'_>, Gf2Error> {
        self.enumerate_solutions_with_limit(cap, DEFAULT_ENUM_LIMIT)
    }

    /// All solutions in lexicographic order of the free-variable values (lowest
    /// free variable most significant), stopping after `cap`.
    pub fn enumerate_solutions_with_limit(&self, cap: usize, limit: usize) -> Result<Solutions<'_>, Gf2Error> {
        let free = self.free_variables();
        if self.consistent && free.len() > limit {
            return Err(Gf2Error::EnumerationTooLarge { free: free.len(), limit });
        }
        let total = if self.consistent { 1u64 << free.len() } else { 0 };
        Ok(Solutions { system: self, free, next: 0, end: total.min(cap as u64) })
    }
}

impl fmt::Debug for LinSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, eq) in self.equations.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{eq}")?;
        }
        write!(f, "}}")
    }
}

pub struct Solutions<'a> {
    system: &'a LinSystem,
    free: Vec<usize>,
    next: u64,
    end: u64,
}

impl Iterator for Solutions<'_> {
    type Item = Vec<bool>;

    fn next(&mut self) -> Option<Vec<bool>> {
        if self.next >= self.end {
            return None;
        }
        let code = self.next;
        self.next += 1;
        let k = self.free.len();
        let mut assignment = vec![false; self.system.nvars];
        for (t, &v) in self.free.iter().enumerate() {
            assignment[v] = code >> (k - 1 - t) & 1 == 1;
        }
        let bits = BitVec::from_bools(&assignment);
        for row in &self.system.canonical {
            let pivot = row.form.first_one().unwrap();
            assignment[pivot] = row.rhs ^ row.form.dot(&bits);
        }
        Some(assignment)
    }
}

/// Gauss-Jordan elimination of the augmented matrix.
fn reduce(nvars: usize, equations: &[LinEquation]) -> (Vec<LinEquation>, bool) {
    let mut rows: Vec<LinEquation> = Vec::new();
    for eq in equations {
        let mut v = eq.clone();
        for row in &rows {
            let p = row.form.first_one().unwrap();
            if v.form.get(p) {
                v.form.xor_assign(&row.form);
                v.rhs ^= row.rhs;
            }
        }
        match v.form.first_one() {
            None if v.rhs => {
                return (vec![LinEquation::new(BitVec::zeros(nvars), true)], false);
            }
            None => {}
            Some(p) => {
                for row in rows.iter_mut() {
                    if row.form.get(p) {
                        row.form.xor_assign(&v.form);
                        row.rhs ^= v.rhs;
                    }
                }
                let at = rows.partition_point(|r| r.form.first_one().unwrap() < p);
                rows.insert(at, v);
            }
        }
    }
    (rows, true)
}
