use std::collections::HashSet;
use std::fmt::{self, Write as _};

use super::{width_closure, ExtendError, WidthLimits};
use crate::formula::{parse_literal, LinCnf};
use crate::gf2::{implied_canonical_systems, BitVec, CanonicalSystems, LinEquation, LinSystem};
use crate::text::tokens;
use crate::ParseError;

/// A finite family of linear systems, stored and queried by canonical form.
#[derive(Clone, Debug)]
pub struct StrategyFamily {
    pub k: usize,
    nvars: usize,
    members: Vec<LinSystem>,
    keys: HashSet<Vec<u8>>,
}

impl StrategyFamily {
    pub fn new(nvars: usize, k: usize, systems: impl IntoIterator<Item = LinSystem>) -> Self {
        let mut family = StrategyFamily { k, nvars, members: Vec::new(), keys: HashSet::new() };
        for s in systems {
            assert_eq!(s.nvars(), nvars, "member width does not match family");
            if family.keys.insert(s.key()) {
                family.members.push(s.to_canonical());
            }
        }
        family
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn members(&self) -> &[LinSystem] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, sys: &LinSystem) -> bool {
        self.keys.contains(&sys.key())
    }
}

/// The first failed property of a winning strategy, with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EmptyFamily,
    /// Property 1: more than `k` equations.
    TooManyEquations {
        member: LinSystem,
    },
    /// Property 2: every solution of `member` falsifies the clause.
    FalsifiesClause {
        member: LinSystem,
        clause: usize,
    },
    /// Property 3: `implied` follows from `member` but is not in the family.
    NotClosed {
        member: LinSystem,
        implied: LinSystem,
    },
    /// Property 4: neither `member ∧ form=0` nor `member ∧ form=1` is in the family.
    NoExtension {
        member: LinSystem,
        form: BitVec,
    },
}

impl Violation {
    /// Number of the violated property; 0 for an empty family.
    pub fn property(&self) -> u8 {
        match self {
            Violation::EmptyFamily => 0,
            Violation::TooManyEquations { .. } => 1,
            Violation::FalsifiesClause { .. } => 2,
            Violation::NotClosed { .. } => 3,
            Violation::NoExtension { .. } => 4,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyFamily => write!(f, "the family is empty"),
            Violation::TooManyEquations { member } => {
                write!(f, "property 1: member {} has {} equations", show(member), member.rank())
            }
            Violation::FalsifiesClause { member, clause } => {
                write!(f, "property 2: member {} falsifies clause {}", show(member), clause + 1)
            }
            Violation::NotClosed { member, implied } => {
                write!(f, "property 3: {} is implied by member {} but is not a member", show(implied), show(member))
            }
            Violation::NoExtension { member, form } => {
                write!(f, "property 4: member {} has no extension by form {}", show(member), form)
            }
        }
    }
}

fn show(sys: &LinSystem) -> String {
    if sys.canonical_rows().is_empty() {
        return "T".into();
    }
    let rows: Vec<String> = sys.canonical_rows().iter().map(ToString::to_string).collect();
    format!("{{{}}}", rows.join(", "))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyVerdict {
    pub holds: bool,
    pub violation: Option<Violation>,
}

/// Largest variable count for which property 4 enumerates all forms.
const MAX_FORM_VARS: usize = 20;

/// Checks the four properties of a `k`-winning strategy, in order.
pub fn check_winning_strategy(h: &StrategyFamily, cnf: &LinCnf, k: usize) -> Result<StrategyVerdict, ExtendError> {
    let fail = |v: Violation| Ok(StrategyVerdict { holds: false, violation: Some(v) });
    let n = cnf.nvars();
    if h.nvars() != n {
        return Err(ExtendError::InvalidArgument(format!("family has {} variables, formula has {n}", h.nvars())));
    }
    if h.is_empty() {
        return fail(Violation::EmptyFamily);
    }
    for m in h.members() {
        if m.rank() > k {
            return fail(Violation::TooManyEquations { member: m.clone() });
        }
    }
    for m in h.members() {
        for (i, c) in cnf.clauses().iter().enumerate() {
            // some solution satisfies C  ⇔  m does not imply ¬C
            let falsified = !c.is_tautological() && m.implies_all(c.negation().equations());
            if falsified {
                return fail(Violation::FalsifiesClause { member: m.clone(), clause: i });
            }
        }
    }
    for m in h.members() {
        let implied: Vec<LinSystem> = if m.is_consistent() {
            implied_canonical_systems(n, m.canonical_rows(), k)
        } else {
            let mut all: Vec<LinSystem> = (0..=k.min(n)).flat_map(|r| CanonicalSystems::new(n, r)).collect();
            if k > 0 {
                all.push(LinSystem::new(n, vec![LinEquation::new(BitVec::zeros(n), true)]));
            }
            all
        };
        if let Some(g) = implied.into_iter().find(|g| !h.contains(g)) {
            return fail(Violation::NotClosed { member: m.clone(), implied: g });
        }
    }
    if h.members().iter().any(|m| m.rank() < k) && n > MAX_FORM_VARS {
        return Err(ExtendError::Limit(format!("property 4 enumerates all forms; at most {MAX_FORM_VARS} variables supported")));
    }
    for m in h.members() {
        if m.rank() >= k {
            continue;
        }
        for mask in 1u64..1 << n {
            let form = BitVec::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1));
            if m.value_of(&form).is_some() {
                continue;
            }
            let ext = |b: bool| h.contains(&m.with(LinEquation::new(form.clone(), b)));
            if !ext(false) && !ext(true) {
                return fail(Violation::NoExtension { member: m.clone(), form });
            }
        }
    }
    Ok(StrategyVerdict { holds: true, violation: None })
}

/// The family of all consistent systems of rank at most `k` that falsify no
/// clause derivable in width `k`; `None` when width `k` refutes `cnf`.
pub fn build_canonical_strategy(cnf: &LinCnf, k: usize, limits: &WidthLimits) -> Result<Option<StrategyFamily>, ExtendError> {
    let closure = width_closure(cnf, k, limits)?;
    if closure.refuted {
        return Ok(None);
    }
    Ok(Some(StrategyFamily::new(cnf.nvars(), k, closure.underived_systems())))
}

/// Parses `p xws <k>` followed by blank-line separated blocks, one equation
/// per line; a block consisting of `T` is the empty system.
pub fn parse_xws(text: &str, nvars: usize) -> Result<StrategyFamily, ParseError> {
    let mut k = None;
    let mut blocks: Vec<Vec<LinEquation>> = Vec::new();
    let mut current: Option<Vec<LinEquation>> = None;
    let mut last = 1;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        if raw == "c" || raw.starts_with("c ") {
            continue;
        }
        let t = tokens(raw, line);
        if t.is_empty() {
            if let Some(b) = current.take() {
                blocks.push(b);
            }
            continue;
        }
        if t[0].text == "p" {
            if k.is_some() {
                return Err(t[0].error("duplicate header"));
            }
            if t.len() != 3 || t[1].text != "xws" {
                return Err(t[0].error("expected header: p xws <k>"));
            }
            k = Some(t[2].parse_usize()?);
            continue;
        }
        if k.is_none() {
            return Err(t[0].error("equation before header"));
        }
        if t.len() != 1 {
            return Err(t[1].error("one equation per line"));
        }
        let block = current.get_or_insert_with(Vec::new);
        if t[0].text == "T" {
            if !block.is_empty() {
                return Err(t[0].error("T must be the only line of its block"));
            }
            blocks.push(Vec::new());
            current = None;
            continue;
        }
        block.push(parse_literal(&t[0], nvars)?);
    }
    if let Some(b) = current.take() {
        blocks.push(b);
    }
    let Some(k) = k else {
        return Err(ParseError::new(last, 1, "missing header p xws <k>"));
    };
    Ok(StrategyFamily::new(nvars, k, blocks.into_iter().map(|b| LinSystem::new(nvars, b))))
}

pub fn write_xws(h: &StrategyFamily) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "p xws {}", h.k);
    for (i, m) in h.members().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        if m.canonical_rows().is_empty() {
            out.push_str("T\n");
        }
        for row in m.canonical_rows() {
            let _ = writeln!(out, "{row}");
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_xlcnf, php};

    fn contradiction() -> LinCnf {
        parse_xlcnf("p xlcnf 1 2\n1=1\n1=0\n").unwrap()
    }

    #[test]
    fn empty_system_alone_fails_property_4() {
        let cnf = contradiction();
        let h = StrategyFamily::new(1, 1, [LinSystem::empty(1)]);
        let v = check_winning_strategy(&h, &cnf, 1).unwrap();
        assert_eq!(v.violation.unwrap().property(), 4);
    }

    #[test]
    fn oversized_member_fails_property_1() {
        let cnf = php(3, 2).unwrap();
        let m = LinSystem::new(6, vec![LinEquation::var(6, 0, false), LinEquation::var(6, 1, false)]);
        let h = StrategyFamily::new(6, 1, [LinSystem::empty(6), m]);
        let v = check_winning_strategy(&h, &cnf, 1).unwrap();
        assert_eq!(v.violation.unwrap().property(), 1);
    }

    #[test]
    fn no_strategy_for_width_1_refutable() {
        assert!(build_canonical_strategy(&contradiction(), 1, &WidthLimits::default()).unwrap().is_none());
    }

    #[test]
    fn complete_contradiction_strategy_at_1() {
        let cnf = parse_xlcnf("p xlcnf 2 4\n1=0 2=0\n1=0 2=1\n1=1 2=0\n1=1 2=1\n").unwrap();
        let h = build_canonical_strategy(&cnf, 1, &WidthLimits::default()).unwrap().unwrap();
        assert_eq!(h.len(), 7);
        assert!(check_winning_strategy(&h, &cnf, 1).unwrap().holds);
    }

    #[test]
    fn xws_round_trip() {
        let cnf = parse_xlcnf("p xlcnf 2 4\n1=0 2=0\n1=0 2=1\n1=1 2=0\n1=1 2=1\n").unwrap();
        let h = build_canonical_strategy(&cnf, 1, &WidthLimits::default()).unwrap().unwrap();
        let text = write_xws(&h);
        assert!(text.starts_with("p xws 1\nT\n\n"));
        let back = parse_xws(&text, 2).unwrap();
        assert_eq!(back.len(), h.len());
        assert!(h.members().iter().all(|m| back.contains(m)));
        assert_eq!(write_xws(&back), text);
    }

    #[test]
    fn property_2_matches_proper_search_with_no_clauses() {
        let cnf = php(3, 2).unwrap();
        for sys in (0..=2).flat_map(|r| CanonicalSystems::new(6, r)) {
            for (i, c) in cnf.clauses().iter().enumerate() {
                let by_implication = !sys.implies_all(c.negation().equations());
                let by_search = super::super::has_f_proper_solution(&sys, &cnf, &[], Some(i)).unwrap().is_some();
                assert_eq!(by_implication, by_search);
            }
        }
    }

    mod props {
        use super::*;
        use crate::formula::LinClause;
        use proptest::prelude::*;

        fn arb_cnf() -> impl Strategy<Value = LinCnf> {
            let lit = (prop::collection::vec(any::<bool>(), 3), any::<bool>())
                .prop_map(|(b, r)| LinEquation::new(BitVec::from_bools(&b), r));
            prop::collection::vec(prop::collection::vec(lit, 1..4), 1..8).prop_map(|cs| {
                let mut cnf = LinCnf::new(3);
                for c in cs {
                    cnf.push(LinClause::new(3, c), None);
                }
                cnf
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn canonical_strategy_wins_iff_not_refuted(cnf in arb_cnf(), k in 1usize..4) {
                prop_assume!(k >= cnf.r());
                match build_canonical_strategy(&cnf, k, &WidthLimits::default()).unwrap() {
                    Some(h) => {
                        let v = check_winning_strategy(&h, &cnf, k).unwrap();
                        prop_assert!(v.holds, "{:?}", v.violation);
                    }
                    None => prop_assert!(width_closure(&cnf, k, &WidthLimits::default()).unwrap().refuted),
                }
            }
        }
    }
}
