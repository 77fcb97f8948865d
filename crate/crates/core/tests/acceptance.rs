//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use reslin::extend::{
    build_canonical_strategy, check_extensibility, check_winning_strategy, exact_width, parse_xws, write_xws, ExtendOptions,
    WidthLimits,
};
use reslin::formula::{dlo, fphp, gop, ordering, parse_xlcnf, php, write_xlcnf, BipartiteGraph, Graph, LinClause, LinCnf};
use reslin::games::{game_status, run_game, FinalStatus, GameOptions, GameStatus, RandomProver, SweepProver};
use reslin::gf2::{implies_equation, BitVec, LinEquation, LinSystem};
use reslin::oracle::{min_split_tree, parse_split_tree, split_tree_to_proof, write_split_tree, OracleOptions, TreeProver};
use reslin::proofcheck::{
    check_clause_implication, desugar_space_script, desugar_weakening, parse_xlp, parse_xls, replay_syntactic,
    tree_to_space_script, verify_space_script, verify_tree_proof, write_xlp, write_xls, SpaceScript, SpaceStep, TreeProof,
    TreeStep,
};

type Outcome = Result<String, String>;
type GameResult = Result<(usize, FinalStatus), String>;

// ---------------------------------------------------------------------------
// brute-force oracles over bitmask assignments

fn mask(form: &BitVec) -> u32 {
    form.ones().fold(0, |m, i| m | 1 << i)
}

fn eq_holds(eq: &LinEquation, a: u32) -> bool {
    ((mask(&eq.form) & a).count_ones() % 2 == 1) == eq.rhs
}

fn clause_holds(c: &LinClause, a: u32) -> bool {
    c.literals().iter().any(|l| eq_holds(l, a))
}

fn system_holds(s: &LinSystem, a: u32) -> bool {
    s.equations().iter().all(|e| eq_holds(e, a))
}

fn all_assignments(n: usize) -> std::ops::Range<u32> {
    0..1u32 << n
}

fn brute_implies(s: &LinSystem, eq: &LinEquation) -> bool {
    all_assignments(s.nvars()).all(|a| !system_holds(s, a) || eq_holds(eq, a))
}

fn brute_clause_implies(c: &LinClause, d: &LinClause) -> bool {
    all_assignments(c.nvars()).all(|a| !clause_holds(c, a) || clause_holds(d, a))
}

fn syntactic_tautology(c: &LinClause) -> bool {
    let lits = c.literals();
    lits.iter().any(|l| l.form.is_zero() && !l.rhs)
        || lits.iter().enumerate().any(|(i, l)| lits[i + 1..].iter().any(|m| m.form == l.form))
}

fn brute_status(phi: &LinSystem, cnf: &LinCnf) -> Option<usize> {
    cnf.clauses().iter().position(|c| {
        !syntactic_tautology(c) && all_assignments(cnf.nvars()).all(|a| !system_holds(phi, a) || !clause_holds(c, a))
    })
}

fn brute_unsat(cnf: &LinCnf) -> bool {
    all_assignments(cnf.nvars()).all(|a| cnf.clauses().iter().any(|c| !clause_holds(c, a)))
}

// ---------------------------------------------------------------------------
// random objects

fn random_form(rng: &mut ChaCha8Rng, n: usize, allow_zero: bool) -> BitVec {
    loop {
        let f = if rng.gen_bool(0.5) {
            let k = rng.gen_range(1..=n.min(3));
            BitVec::from_indices(n, (0..k).map(|_| rng.gen_range(0..n)).collect::<std::collections::BTreeSet<_>>())
        } else {
            BitVec::from_bools(&(0..n).map(|_| rng.gen()).collect::<Vec<bool>>())
        };
        if allow_zero || !f.is_zero() {
            return f;
        }
    }
}

fn random_eq(rng: &mut ChaCha8Rng, n: usize) -> LinEquation {
    let zero = rng.gen_ratio(1, 20);
    let form = if zero { BitVec::zeros(n) } else { random_form(rng, n, false) };
    LinEquation::new(form, rng.gen())
}

fn random_clause(rng: &mut ChaCha8Rng, n: usize, max_width: usize) -> LinClause {
    let w = rng.gen_range(0..=max_width);
    LinClause::new(n, (0..w).map(|_| random_eq(rng, n)).collect())
}

fn random_system(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> LinSystem {
    let k = rng.gen_range(0..=max_len);
    LinSystem::new(n, (0..k).map(|_| random_eq(rng, n)).collect())
}

fn random_unsat(rng: &mut ChaCha8Rng, n: usize) -> LinCnf {
    loop {
        let mut clauses = Vec::new();
        let mut cnf = LinCnf::from_clauses(n, clauses.clone());
        while !brute_unsat(&cnf) {
            let w = rng.gen_range(1..=3);
            clauses.push(LinClause::new(n, (0..w).map(|_| LinEquation::new(random_form(rng, n, false), rng.gen())).collect()));
            cnf = LinCnf::from_clauses(n, clauses.clone());
        }
        if cnf.len() <= 12 {
            return cnf;
        }
    }
}

fn small_suite() -> Vec<(String, LinCnf)> {
    let mut out = vec![
        ("contradiction".to_string(), parse_xlcnf("p xlcnf 1 2\n1=1\n1=0\n").unwrap()),
        ("complete2".to_string(), parse_xlcnf("p xlcnf 2 4\n1=0 | 2=0\n1=0 | 2=1\n1=1 | 2=0\n1=1 | 2=1\n").unwrap()),
        ("parity3".to_string(), parse_xlcnf("p xlcnf 3 3\n1+2=1\n2+3=1\n1+3=1\n").unwrap()),
        ("php(3,2)".to_string(), php(3, 2).unwrap()),
        ("ordering(3)".to_string(), ordering(3).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..6 {
        let n = 3 + i % 4;
        out.push((format!("random{i}"), random_unsat(&mut rng, n)));
    }
    out
}

fn oracle_proof(cnf: &LinCnf) -> Result<TreeProof, String> {
    let res = min_split_tree(cnf, &OracleOptions::default()).map_err(|e| e.to_string())?;
    split_tree_to_proof(&res.tree, cnf).map_err(|e| e.to_string())
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// criteria

struct Instance {
    name: &'static str,
    cnf: LinCnf,
    label: &'static str,
    m: usize,
}

fn instances() -> Vec<Instance> {
    vec![
        Instance { name: "php(3,2)", cnf: php(3, 2).unwrap(), label: "hole", m: 1 },
        Instance { name: "php(4,3)", cnf: php(4, 3).unwrap(), label: "hole", m: 2 },
        Instance { name: "ordering(3)", cnf: ordering(3).unwrap(), label: "order", m: 1 },
        Instance { name: "ordering(4)", cnf: ordering(4).unwrap(), label: "order", m: 2 },
        Instance { name: "dlo(6)", cnf: dlo(6).unwrap(), label: "worder", m: 1 },
    ]
}

fn criterion1() -> Outcome {
    let mut parts = Vec::new();
    for inst in instances() {
        let f = inst.cnf.indices_with_label(inst.label);
        let start = Instant::now();
        let v =
            check_extensibility(&inst.cnf, &f, inst.m, &ExtendOptions::default()).map_err(|e| format!("{}: {e}", inst.name))?;
        let took = start.elapsed();
        check(v.holds, || format!("{} m={}: counterexample {:?}", inst.name, inst.m, v.counterexample))?;
        check(took <= Duration::from_secs(300), || format!("{} took {took:?}", inst.name))?;
        for m in 1..inst.m {
            let w = check_extensibility(&inst.cnf, &f, m, &ExtendOptions::default()).map_err(|e| e.to_string())?;
            check(w.holds, || format!("{} not monotone at m={m}", inst.name))?;
        }
        parts.push(format!("{} m={} ({} systems, {:.1}s)", inst.name, inst.m, v.systems_checked, took.as_secs_f64()));
    }
    Ok(parts.join("; "))
}

fn criterion2() -> Outcome {
    let mut parts = Vec::new();
    for inst in instances() {
        let f = inst.cnf.indices_with_label(inst.label);
        let opts = GameOptions::default();
        let results: Vec<GameResult> = (0..1000u64)
            .into_par_iter()
            .map(|seed| {
                run_game(&inst.cnf, &f, &mut RandomProver::new(seed), &opts)
                    .map(|o| (o.coins, o.status))
                    .map_err(|e| format!("{} seed {seed}: {e}", inst.name))
            })
            .collect();
        let mut min = usize::MAX;
        for (seed, r) in results.into_iter().enumerate() {
            let (coins, status) = r?;
            check(matches!(status, FinalStatus::Falsified(_)), || format!("{} seed {seed} ended {status}", inst.name))?;
            check(coins >= inst.m, || format!("{} seed {seed}: {coins} coins < {}", inst.name, inst.m))?;
            min = min.min(coins);
        }
        let sweep = run_game(&inst.cnf, &f, &mut SweepProver::new(&inst.cnf, &f), &opts).map_err(|e| e.to_string())?;
        check(sweep.coins >= inst.m && matches!(sweep.status, FinalStatus::Falsified(_)), || {
            format!("{} sweep prover: {} coins, {}", inst.name, sweep.coins, sweep.status)
        })?;
        parts.push(format!("{} min coins {} (sweep {})", inst.name, min, sweep.coins));
    }
    Ok(parts.join("; "))
}

fn criterion3() -> Outcome {
    let mut parts = Vec::new();
    for (name, cnf, label, m) in
        [("php(3,2)", php(3, 2).unwrap(), "hole", 1u32), ("ordering(3)", ordering(3).unwrap(), "order", 1)]
    {
        let f = cnf.indices_with_label(label);
        let holds = check_extensibility(&cnf, &f, m as usize, &ExtendOptions::default()).map_err(|e| e.to_string())?.holds;
        check(holds, || format!("{name}: m={m} not verified"))?;
        let start = Instant::now();
        let res = min_split_tree(&cnf, &OracleOptions::default()).map_err(|e| format!("{name}: {e}"))?;
        let took = start.elapsed();
        let bound = 1usize << m;
        check(res.size >= bound, || format!("{name}: tree size {} < {bound}", res.size))?;
        let proof = split_tree_to_proof(&res.tree, &cnf).map_err(|e| e.to_string())?;
        let report = verify_tree_proof(&proof, &cnf);
        check(report.ok, || format!("{name}: converted proof rejected: {:?}", report.error))?;
        check(report.clauses.last().is_some_and(LinClause::is_empty), || format!("{name}: root is not empty"))?;
        check(proof.size() >= bound, || format!("{name}: proof size {} < {bound}", proof.size()))?;
        check(proof.size() <= 2 * res.size, || format!("{name}: proof larger than twice the tree"))?;
        let game =
            run_game(&cnf, &f, &mut TreeProver::new(res.tree.clone()), &GameOptions::default()).map_err(|e| e.to_string())?;
        check(game.coins >= m as usize, || format!("{name}: tree prover paid {} coins", game.coins))?;
        check(took <= Duration::from_secs(120), || format!("{name}: oracle took {took:?}"))?;
        parts.push(format!(
            "{name} tree {} proof {} >= {bound}, tree prover coins {} ({:.1}s)",
            res.size,
            proof.size(),
            game.coins,
            took.as_secs_f64()
        ));
    }
    Ok(parts.join("; "))
}

/// A weakening `C ⊨ D`: every literal of `C` is a literal of `D` or the
/// negation of a sum of rows of `¬D`.
fn random_weakening(rng: &mut ChaCha8Rng) -> (LinClause, LinClause) {
    let n = rng.gen_range(1..=8);
    loop {
        let w = rng.gen_range(1..=4);
        let d = LinClause::new(n, (0..w).map(|_| LinEquation::new(random_form(rng, n, false), rng.gen())).collect());
        let neg = d.negation();
        if !neg.is_consistent() {
            continue;
        }
        let rows = neg.equations();
        let cw = rng.gen_range(0..=4);
        let mut lits = Vec::new();
        for _ in 0..cw {
            if rng.gen_ratio(1, 3) {
                lits.push(rows[rng.gen_range(0..rows.len())].flipped());
            } else {
                let mut sum = LinEquation::new(BitVec::zeros(n), false);
                let mut used = false;
                for r in rows {
                    if rng.gen() {
                        sum = sum.add(r);
                        used = true;
                    }
                }
                if !used {
                    sum = rows[0].clone();
                }
                lits.push(sum.flipped());
            }
        }
        return (LinClause::new(n, lits), d);
    }
}

fn criterion4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0i64;
    for case in 0..200 {
        let (c, d) = random_weakening(&mut rng);
        let n = c.nvars();
        check(brute_clause_implies(&c, &d), || format!("case {case}: generator produced a non-implication"))?;
        let steps = desugar_weakening(&c, &d).map_err(|e| format!("case {case}: {e}"))?;
        let replayed = replay_syntactic(&c, &steps).map_err(|e| format!("case {case}: replay failed: {e}"))?;
        check(replayed == d, || format!("case {case}: replay gave {replayed}, want {d}"))?;

        let other = random_clause(&mut rng, n, 3);
        let cnf = LinCnf::from_clauses(n, vec![c.clone(), other]);
        let mut script = SpaceScript::new(n);
        script.steps =
            vec![SpaceStep::Load(0), SpaceStep::Load(1), SpaceStep::Weak { id: 0, target: d.clone() }, SpaceStep::Erase(0)];
        let before = verify_space_script(&script, &cnf);
        check(before.ok, || format!("case {case}: base script rejected: {:?}", before.error))?;
        let spliced = desugar_space_script(&script, &cnf).map_err(|e| format!("case {case}: {e}"))?;
        check(spliced.steps.iter().all(|s| !matches!(s, SpaceStep::Weak { .. })) || steps.is_empty(), || {
            format!("case {case}: semantic weakening left in the spliced script")
        })?;
        let after = verify_space_script(&spliced, &cnf);
        check(after.ok, || format!("case {case}: spliced script rejected: {:?}", after.error))?;
        check(after.clauses.last() == Some(&d), || format!("case {case}: spliced script ends with the wrong clause"))?;
        let growth = after.space as i64 - before.space as i64;
        check(growth <= 1, || format!("case {case}: space grew by {growth}"))?;
        worst = worst.max(growth);
    }
    Ok(format!("200 weakenings replay exactly; max space growth {worst}"))
}

fn criterion5() -> Outcome {
    let limits = WidthLimits::default();
    let mut scripts = 0;
    let mut tightest = i64::MAX;
    for (name, cnf) in small_suite() {
        let lower = match exact_width(&cnf, limits.max_k, &limits).map_err(|e| format!("{name}: {e}"))? {
            Some(w) => w,
            None => limits.max_k + 1,
        };
        let proof = oracle_proof(&cnf).map_err(|e| format!("{name}: {e}"))?;
        let plain = tree_to_space_script(&proof);
        let desugared = desugar_space_script(&plain, &cnf).map_err(|e| format!("{name}: {e}"))?;
        for script in [plain, desugared] {
            let rep = verify_space_script(&script, &cnf);
            check(rep.ok && rep.refuted, || format!("{name}: harness script is not a verified refutation"))?;
            let slack = rep.space as i64 - (lower as i64 - cnf.r() as i64 - 1);
            check(slack >= 0, || format!("{name}: space {} < width {lower} - r {} - 1", rep.space, cnf.r()))?;
            tightest = tightest.min(slack);
            scripts += 1;
        }
    }
    Ok(format!("{scripts} refutation scripts, minimum slack {tightest}"))
}

fn criterion6() -> Outcome {
    let limits = WidthLimits::default();
    let mut checks = 0;
    for (name, cnf) in small_suite() {
        let width = exact_width(&cnf, limits.max_k, &limits).map_err(|e| format!("{name}: {e}"))?;
        let exceeds = |k: usize| width.is_none_or(|w| w > k);
        let mut built = Vec::new();
        for k in 0..=limits.max_k {
            let h = build_canonical_strategy(&cnf, k, &limits).map_err(|e| format!("{name} k={k}: {e}"))?;
            let passes = match &h {
                Some(h) => check_winning_strategy(h, &cnf, k).map_err(|e| e.to_string())?.holds,
                None => false,
            };
            if k >= cnf.r() {
                check(h.is_some() == exceeds(k), || format!("{name} k={k}: build {} but width {width:?}", h.is_some()))?;
                check(h.is_none() || passes, || format!("{name} k={k}: built family does not win"))?;
                checks += 1;
            }
            built.push(passes);
        }
        for k in 0..limits.max_k {
            if built[k + 1] {
                check(exceeds(k), || format!("{name}: a family wins at {} but width is {width:?}", k + 1))?;
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} duality checks"))
}

fn criterion7() -> Outcome {
    let start = Instant::now();
    let bad: Vec<String> = (0..10_000u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(70_000 + i);
            let n = rng.gen_range(1..=12);
            let sys = random_system(&mut rng, n, 5);
            let eq = random_eq(&mut rng, n);
            if implies_equation(&sys, &eq) != brute_implies(&sys, &eq) {
                return Some(format!("instance {i}: implies_equation"));
            }
            let c = random_clause(&mut rng, n, 4);
            let d = random_clause(&mut rng, n, 4);
            if check_clause_implication(&c, &d) != brute_clause_implies(&c, &d) {
                return Some(format!("instance {i}: check_clause_implication"));
            }
            let len = rng.gen_range(1..=6);
            let cnf = LinCnf::from_clauses(n, (0..len).map(|_| random_clause(&mut rng, n, 3)).collect());
            let phi = random_system(&mut rng, n, n.min(6));
            let got = match game_status(&phi, &cnf) {
                GameStatus::Running => None,
                GameStatus::ClauseFalsified(k) => Some(k),
            };
            (got != brute_status(&phi, &cnf)).then(|| format!("instance {i}: game_status"))
        })
        .collect();
    let took = start.elapsed();
    check(bad.is_empty(), || format!("{} discrepancies, first {}", bad.len(), bad[0]))?;
    check(took <= Duration::from_secs(300), || format!("took {took:?}"))?;
    Ok(format!("10000 instances, 0 discrepancies ({:.1}s)", took.as_secs_f64()))
}

#[derive(Clone, Copy, Debug)]
enum Mutation {
    WrongPivot,
    IllegalWeakening,
    DanglingId,
}

fn mutate(proof: &TreeProof, cnf: &LinCnf, kind: Mutation, rng: &mut ChaCha8Rng) -> Option<(TreeProof, usize)> {
    let n = proof.nvars;
    let clauses = verify_tree_proof(proof, cnf).clauses;
    let candidates: Vec<usize> = (0..proof.size())
        .filter(|&j| match (kind, &proof.nodes[j]) {
            (Mutation::WrongPivot, TreeStep::Resolve { .. }) => true,
            (Mutation::IllegalWeakening, TreeStep::Weaken { .. }) => true,
            (Mutation::DanglingId, step) => !step.children().is_empty(),
            _ => false,
        })
        .collect();
    if candidates.is_empty() {
        return None;
    }
    let j = candidates[rng.gen_range(0..candidates.len())];
    let mut out = proof.clone();
    match out.nodes[j].clone() {
        TreeStep::Resolve { left, right, pivot } if matches!(kind, Mutation::WrongPivot) => {
            let resolvable = |p: &BitVec| {
                [false, true].iter().any(|&a| {
                    clauses[left].contains(&LinEquation::new(p.clone(), a))
                        && clauses[right].contains(&LinEquation::new(p.clone(), !a))
                })
            };
            let p = (0..200).map(|_| random_form(rng, n, false)).find(|p| *p != pivot && !resolvable(p))?;
            out.nodes[j] = TreeStep::Resolve { left, right, pivot: p };
        }
        TreeStep::Weaken { child, .. } if matches!(kind, Mutation::IllegalWeakening) => {
            let t = (0..200).map(|_| random_clause(rng, n, 2)).find(|t| !brute_clause_implies(&clauses[child], t))?;
            out.nodes[j] = TreeStep::Weaken { child, target: t };
        }
        step => {
            let bad = j + rng.gen_range(0..3);
            out.nodes[j] = match step {
                TreeStep::Resolve { right, pivot, .. } => TreeStep::Resolve { left: bad, right, pivot },
                TreeStep::Weaken { target, .. } => TreeStep::Weaken { child: bad, target },
                TreeStep::SynWeaken { literal, .. } => TreeStep::SynWeaken { child: bad, literal },
                TreeStep::Simplify { .. } => TreeStep::Simplify { child: bad },
                TreeStep::Add { pos1, pos2, .. } => TreeStep::Add { child: bad, pos1, pos2 },
                TreeStep::Input(_) => return None,
            };
        }
    }
    Some((out, j))
}

fn criterion8() -> Outcome {
    let mut generated = vec![
        php(3, 2).unwrap(),
        php(4, 3).unwrap(),
        ordering(3).unwrap(),
        ordering(4).unwrap(),
        dlo(6).unwrap(),
        fphp(&BipartiteGraph::complete(4, 3)).unwrap(),
        gop(&Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])).unwrap(),
    ];
    generated.extend(small_suite().into_iter().map(|(_, c)| c));
    let mut artifacts = 0;
    for cnf in &generated {
        let text = write_xlcnf(cnf);
        let back = parse_xlcnf(&text).map_err(|e| e.to_string())?;
        check(write_xlcnf(&back) == text, || "xlcnf round trip differs".to_string())?;
        artifacts += 1;
    }

    let mut sources = Vec::new();
    for (name, cnf) in small_suite() {
        let res = min_split_tree(&cnf, &OracleOptions::default()).map_err(|e| e.to_string())?;
        let sexp = write_split_tree(&res.tree);
        let tree = parse_split_tree(&sexp, cnf.nvars(), cnf.len()).map_err(|e| e.to_string())?;
        check(write_split_tree(&tree) == sexp, || format!("{name}: tree round trip differs"))?;
        let proof = split_tree_to_proof(&res.tree, &cnf).map_err(|e| e.to_string())?;
        let xlp = write_xlp(&proof);
        check(write_xlp(&parse_xlp(&xlp, cnf.nvars()).map_err(|e| e.to_string())?) == xlp, || {
            format!("{name}: xlp round trip differs")
        })?;
        let script = tree_to_space_script(&proof);
        let xls = write_xls(&script);
        check(write_xls(&parse_xls(&xls, cnf.nvars()).map_err(|e| e.to_string())?) == xls, || {
            format!("{name}: xls round trip differs")
        })?;
        if let Some(h) = build_canonical_strategy(&cnf, cnf.r(), &WidthLimits::default()).map_err(|e| e.to_string())? {
            let xws = write_xws(&h);
            check(write_xws(&parse_xws(&xws, cnf.nvars()).map_err(|e| e.to_string())?) == xws, || {
                format!("{name}: xws round trip differs")
            })?;
            artifacts += 1;
        }
        artifacts += 3;
        if proof.size() > 1 {
            sources.push((name, cnf, proof));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let kinds = [Mutation::WrongPivot, Mutation::IllegalWeakening, Mutation::DanglingId];
    let mut rejected = 0;
    let mut attempts = 0;
    while rejected < 50 {
        attempts += 1;
        check(attempts < 10_000, || format!("only {rejected} mutations could be generated"))?;
        let kind = kinds[rejected % 3];
        let (name, cnf, proof) = &sources[rng.gen_range(0..sources.len())];
        let Some((mutated, j)) = mutate(proof, cnf, kind, &mut rng) else {
            continue;
        };
        let text = write_xlp(&mutated);
        let parsed = parse_xlp(&text, cnf.nvars()).map_err(|e| format!("{name} {kind:?}: {e}"))?;
        let report = verify_tree_proof(&parsed, cnf);
        let err = report.error.ok_or_else(|| format!("{name} {kind:?} at node {}: accepted", j + 1))?;
        let msg = err.to_string();
        check(msg.starts_with(&format!("node {} (", j + 1)), || {
            format!("{name} {kind:?} at node {}: diagnostic {msg:?}", j + 1)
        })?;
        rejected += 1;
    }
    Ok(format!("{artifacts} artifacts round-trip; {rejected} mutated proofs rejected at the mutated node"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("extensibility", criterion1),
        ("game guarantee", criterion2),
        ("oracle bracketing", criterion3),
        ("weakening simulation", criterion4),
        ("width-space consistency", criterion5),
        ("winning-strategy duality", criterion6),
        ("brute-force equivalence", criterion7),
        ("codec and verifier", criterion8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({secs:.1}s) {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({secs:.1}s) {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
