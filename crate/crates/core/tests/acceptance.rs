//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Built with `harness = false` so the lines reach the terminal even when
//! everything passes. Exits nonzero if any criterion fails.
//! `TWW_ORACLE_BUDGET` overrides the per-call oracle budget.

mod common;

use std::collections::{BTreeSet, VecDeque};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tww_core::generate::{formulas_up_to_symmetry, random_formula};
use tww_core::oracles::{chromatic_number, exact_twinwidth, is_k_colorable, is_proper, solve_nae, solve_sat};
use tww_core::reduction::{subdivision_positions, MinColInstance, ThreeColInstance};
use tww_core::trigraph::Slot;
use tww_core::{
    replay, verify_d_sequence, Assignment, CnfFormula, Contractor, Dialect, PartitionSequence,
    Trigraph, VertexRole,
};

use common::*;

const DEFAULT_BUDGET: u64 = 20_000_000;

fn budget() -> u64 {
    std::env::var("TWW_ORACLE_BUDGET").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], summary: String) -> Outcome {
        match failures.first() {
            None => Outcome { ok: true, detail: summary },
            Some(first) => Outcome {
                ok: false,
                detail: format!("{summary}; {} failure(s), first: {first}", failures.len()),
            },
        }
    }
}

/// Random 3-SAT formulas with `n` in `n_range`, `m` in `m_range`, `n <= 3m`.
fn random_corpus(
    seed: u64,
    count: usize,
    n_range: std::ops::RangeInclusive<usize>,
    m_range: std::ops::RangeInclusive<usize>,
    dialect: Dialect,
) -> Vec<CnfFormula> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(n_range.clone());
        let m = rng.gen_range(m_range.clone());
        if let Ok(f) = random_formula(&mut rng, n, m, dialect) {
            out.push(f);
        }
    }
    out
}

fn mincol_random() -> Vec<CnfFormula> {
    random_corpus(0x5eed_0002, 200, 2..=6, 1..=8, Dialect::ThreeSat)
}

/// NAE clauses need three distinct variables, so n starts at 3.
fn threecol_random() -> Vec<CnfFormula> {
    random_corpus(0x5eed_0006, 200, 3..=7, 1..=8, Dialect::NaeThreeSat)
}

fn mincol_equivalence_corpus() -> Vec<CnfFormula> {
    let mut corpus = Vec::new();
    for n in 2..=3 {
        for m in 1..=3 {
            corpus.extend(formulas_up_to_symmetry(n, m, Dialect::ThreeSat));
        }
    }
    corpus.extend(random_corpus(0x5eed_0004, 100, 2..=3, 1..=5, Dialect::ThreeSat));
    corpus.push(small_formula());
    corpus
}

fn nae_equivalence_corpus() -> Vec<CnfFormula> {
    let mut corpus = Vec::new();
    for m in 1..=5 {
        corpus.extend(formulas_up_to_symmetry(3, m, Dialect::NaeThreeSat));
    }
    for m in 2..=3 {
        corpus.extend(formulas_up_to_symmetry(4, m, Dialect::NaeThreeSat));
    }
    corpus.extend(random_corpus(0x5eed_0008, 200, 3..=5, 1..=5, Dialect::NaeThreeSat));
    corpus
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn c1_quotient_equivalence() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut failures = Vec::new();
    let (mut graphs, mut checked) = (0, 0);
    for n in 1..=5 {
        let pairs = n * (n - 1) / 2;
        for mask in 0..(1u64 << pairs) {
            let g = graph_from_mask(n, mask);
            graphs += 1;
            for _ in 0..50 {
                let merges = random_merges(&mut rng, n);
                let seq = PartitionSequence::from_vertex_merges(n, &merges).unwrap();
                let mut c = Contractor::new(&g);
                for (k, s) in seq.steps().iter().enumerate() {
                    let width = c.merge(s.a, s.b).unwrap();
                    let p = seq.partition_after(k + 1).unwrap();
                    let expected = naive_quotient(&g, &p);
                    let scratch = g.quotient(&p).unwrap();
                    let incremental = c.quotient();
                    let expected_width = expected
                        .iter()
                        .map(|row| row.iter().filter(|&&e| e == tww_core::EdgeKind::Red).count())
                        .max()
                        .unwrap_or(0);
                    checked += 1;
                    if c.partition() != p
                        || adjacency_matrix(&incremental) != expected
                        || adjacency_matrix(&scratch) != expected
                        || width != expected_width
                    {
                        failures.push(format!("n={n} mask={mask:#b} merges={merges:?} step={}", k + 1));
                    }
                }
            }
        }
    }
    Outcome::new(&failures, format!("{graphs} graphs, {checked} quotients compared"))
}

fn c2_mincol_size() -> Outcome {
    let mut failures = Vec::new();
    let corpus = mincol_random();
    for f in &corpus {
        let (n, m) = (f.n_vars(), f.num_clauses());
        let inst = MinColInstance::build(f).unwrap();
        if inst.graph().n() != (4 * n + 1) * (2 * n + m) {
            failures.push(format!("n={n} m={m}: N={}", inst.graph().n()));
        }
    }
    Outcome::new(&failures, format!("{} formulas, N = (4n+1)(2n+m)", corpus.len()))
}

fn c3_mincol_certificate() -> Outcome {
    let mut failures = Vec::new();
    let corpus = mincol_random();
    for f in &corpus {
        let art = MinColInstance::build(f).unwrap().artifact();
        let v = verify_d_sequence(&art.graph, &art.sequence, 3).unwrap();
        if !v.within_bound {
            failures.push(format!("{f}: width {}", v.profile.overall_width()));
        }
    }
    let small = MinColInstance::build(&small_formula()).unwrap().artifact();
    let w = replay(&small.graph, &small.sequence).unwrap().overall_width();
    if w != 3 {
        failures.push(format!("first example profile attains {w}, expected exactly 3"));
    }
    Outcome::new(&failures, format!("{} sequences verify at d=3; example profile max = {w}", corpus.len()))
}

/// Runs criteria 4 and 5 together, since they share the same oracle calls.
fn c4_c5_mincol_equivalence() -> (Outcome, Outcome) {
    let budget = budget();
    let corpus = mincol_equivalence_corpus();
    let (mut eq_fail, mut rt_fail) = (Vec::new(), Vec::new());
    let (mut sat_count, mut unsat_count) = (0, 0);
    for f in &corpus {
        let inst = MinColInstance::build(f).unwrap();
        let k = inst.color_budget();
        let sat = solve_sat(f);
        match is_k_colorable(inst.graph(), k, Some(budget)) {
            Ok(col) if col.is_some() == sat.is_some() => {}
            Ok(col) => eq_fail.push(format!("{f}: satisfiable={} colorable={}", sat.is_some(), col.is_some())),
            Err(e) => eq_fail.push(format!("{f}: {e}")),
        }
        let Some(a) = sat else {
            unsat_count += 1;
            continue;
        };
        sat_count += 1;
        let col = inst.coloring_from_assignment(&a).unwrap();
        let proper = is_proper(inst.graph(), &col).unwrap();
        let exact = col.num_used() == k && col.colors().iter().all(|&c| c <= k);
        let back = inst.assignment_from_coloring(&col).map(|b| f.sat_satisfied_by(&b));
        if !(proper && exact && back == Ok(true)) {
            rt_fail.push(format!("{f}: proper={proper} exactly-2n={exact} back={back:?}"));
        }
    }
    match chromatic_number(MinColInstance::build(&small_formula()).unwrap().graph(), Some(budget)) {
        Ok(6) => {}
        other => eq_fail.push(format!("first example chromatic number: {other:?}")),
    }
    (
        Outcome::new(
            &eq_fail,
            format!("{} formulas ({sat_count} sat, {unsat_count} unsat) agree; first example χ = 6", corpus.len()),
        ),
        Outcome::new(&rt_fail, format!("{sat_count} satisfiable formulas round-trip with exactly 2n colors")),
    )
}

fn c6_threecol_size() -> Outcome {
    let mut failures = Vec::new();
    let corpus = threecol_random();
    for f in &corpus {
        let (n, m) = (f.n_vars(), f.num_clauses());
        let inst = ThreeColInstance::build(f).unwrap();
        let bound = 3 * m + (2 * m - 1) * n + 1;
        if inst.graph().n() > bound {
            failures.push(format!("n={n} m={m}: N={} > {bound}", inst.graph().n()));
        }
        if subdivision_positions(f).unwrap() != subdivisions_by_rule(f) {
            failures.push(format!("{f}: subdivision set differs from the parity rule"));
        }
    }
    let example = nae_example();
    let inst = ThreeColInstance::build(&example).unwrap();
    if inst.graph().n() != 91 {
        failures.push(format!("second example has {} vertices, expected 91", inst.graph().n()));
    }
    let frozen: BTreeSet<_> = NAE_EXAMPLE_SUBDIVISIONS.into_iter().collect();
    if subdivisions_by_rule(&example) != frozen {
        failures.push("parity rule disagrees with the frozen subdivision fixture".into());
    }
    if *inst.subdivisions() != frozen {
        failures.push(format!("subdivisions {:?} differ from the frozen fixture", inst.subdivisions()));
    }
    Outcome::new(&failures, format!("{} formulas within N ≤ 3m+(2m−1)n+1; example N=91, 10 subdivisions", corpus.len()))
}

fn c7_threecol_certificate() -> Outcome {
    let mut failures = Vec::new();
    let corpus = threecol_random();
    for f in &corpus {
        let art = ThreeColInstance::build(f).unwrap().artifact();
        let v = verify_d_sequence(&art.graph, &art.sequence, 4).unwrap();
        if !v.within_bound {
            failures.push(format!("{f}: width {}", v.profile.overall_width()));
        }
    }
    let example = ThreeColInstance::build(&nae_example()).unwrap().artifact();
    let w = replay(&example.graph, &example.sequence).unwrap().overall_width();
    if w != 4 {
        failures.push(format!("second example profile attains {w}, expected exactly 4"));
    }
    Outcome::new(&failures, format!("{} sequences verify at d=4; example profile max = {w}", corpus.len()))
}

fn c8_threecol_equivalence() -> Outcome {
    let budget = budget();
    let mut failures = Vec::new();
    let corpus = nae_equivalence_corpus();
    let (mut sat_count, mut unsat_count) = (0, 0);
    for f in &corpus {
        let inst = ThreeColInstance::build(f).unwrap();
        let nae = solve_nae(f);
        if nae.is_some() {
            sat_count += 1;
        } else {
            unsat_count += 1;
        }
        match is_k_colorable(inst.graph(), 3, Some(budget)) {
            Ok(col) if col.is_some() == nae.is_some() => {}
            Ok(col) => failures.push(format!("{f}: nae={} colorable={}", nae.is_some(), col.is_some())),
            Err(e) => failures.push(format!("{f}: {e}")),
        }
        if let Some(a) = nae {
            let col = inst.coloring_from_assignment(&a).unwrap();
            let back = inst.assignment_from_coloring(&col).map(|b| f.nae_satisfied_by(&b));
            if !is_proper(inst.graph(), &col).unwrap() || back != Ok(true) {
                failures.push(format!("{f}: round trip failed ({back:?})"));
            }
        }
    }
    // The frozen reference coloring of the NAE example.
    let example = nae_example();
    let inst = ThreeColInstance::build(&example).unwrap();
    let mut a = Assignment::all(7, true);
    a.set(4, false);
    let col = inst.coloring_from_assignment(&a).unwrap();
    if !is_proper(inst.graph(), &col).unwrap() {
        failures.push("example coloring is not proper".into());
    }
    for i in 1..=7 {
        for j in 1..=8 {
            let want = if REFERENCE_COLOR_ONE.contains(&(i, j)) { 1 } else { 2 };
            if col.color(inst.x(i, j)) != want {
                failures.push(format!("x_{i},{j} has color {}, reference has {want}", col.color(inst.x(i, j))));
            }
        }
    }
    for &(i, j) in &NAE_EXAMPLE_SUBDIVISIONS {
        let want = if REFERENCE_SUBDIV_COLOR_ONE.contains(&(i, j)) { 1 } else { 2 };
        let got = inst.subdivision(i, j).map(|s| col.color(s));
        if got != Some(want) {
            failures.push(format!("x'_{i},{j} has color {got:?}, reference has {want}"));
        }
    }
    for (j, want) in REFERENCE_TRIANGLES.iter().enumerate() {
        let got = Slot::ALL.map(|s| col.color(inst.triangle(j + 1, s)));
        if got != *want {
            failures.push(format!("triangle {} colored {got:?}, reference has {want:?}", j + 1));
        }
    }
    Outcome::new(
        &failures,
        format!(
            "{} formulas ({sat_count} NAE-sat, {unsat_count} unsat) agree; example coloring matches the reference",
            corpus.len()
        ),
    )
}

/// Vertices of variable `var`'s path, recovered from the roles and edges
/// alone, in path order.
fn recover_path(g: &Trigraph, var: usize) -> Result<Vec<usize>, String> {
    let labels = g.labels().ok_or("unlabelled graph")?;
    let members: BTreeSet<usize> = (0..g.n())
        .filter(|&v| {
            matches!(labels[v], VertexRole::PathVertex { var: i, .. } | VertexRole::SubdivVertex { var: i, .. } if i == var)
        })
        .collect();
    let nbrs = |v: usize| -> Vec<usize> { g.neighbors(v).filter(|u| members.contains(u)).collect() };
    let ends: Vec<usize> = members.iter().copied().filter(|&v| nbrs(v).len() <= 1).collect();
    let start = *ends.first().ok_or("no path endpoint")?;
    let mut order = vec![start];
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let next: Vec<usize> = nbrs(v).into_iter().filter(|u| !seen.contains(u)).collect();
        if next.len() > 1 {
            return Err(format!("vertex {v} branches"));
        }
        for u in next {
            seen.insert(u);
            order.push(u);
            queue.push_back(u);
        }
    }
    if order.len() != members.len() {
        return Err("path is disconnected".into());
    }
    Ok(order)
}

fn c9_parity() -> Outcome {
    let mut failures = Vec::new();
    let mut corpus = threecol_random();
    corpus.push(nae_example());
    let mut paths = 0;
    for f in &corpus {
        let inst = ThreeColInstance::build(f).unwrap();
        for var in 1..=f.n_vars() {
            let path = match recover_path(inst.graph(), var) {
                Ok(p) => p,
                Err(e) => {
                    failures.push(format!("{f}: x{var}: {e}"));
                    continue;
                }
            };
            paths += 1;
            let occ = f.occurrences(var);
            for first in [1, 2] {
                let color = |v: usize| {
                    let t = path.iter().position(|&x| x == v).unwrap();
                    if t % 2 == 0 { first } else { 3 - first }
                };
                for (a, &(ja, sa)) in occ.iter().enumerate() {
                    for &(jb, sb) in &occ[a + 1..] {
                        let same = color(inst.x(var, ja)) == color(inst.x(var, jb));
                        if same != (sa == sb) {
                            failures.push(format!("{f}: x{var} occurrences {ja},{jb}"));
                        }
                    }
                }
            }
        }
    }
    Outcome::new(&failures, format!("{paths} paths, both 2-colorings: same color ⟺ same sign"))
}

fn c10_lift() -> Outcome {
    let budget = budget();
    let mut failures = Vec::new();
    let mut corpus = random_corpus(0x5eed_000a, 18, 3..=4, 1..=4, Dialect::NaeThreeSat);
    let unsat = CnfFormula::from_ints(3, &[[1, 2, 3], [1, 2, -3], [1, -2, 3], [-1, 2, 3]], Dialect::NaeThreeSat);
    corpus.push(unsat.unwrap());
    corpus.push(CnfFormula::from_ints(3, &[[1, 2, 3]], Dialect::NaeThreeSat).unwrap());
    let mut colorable_count = 0;
    for f in &corpus {
        let inst = ThreeColInstance::build(f).unwrap();
        let base = match is_k_colorable(inst.graph(), 3, Some(budget)) {
            Ok(c) => c.is_some(),
            Err(e) => {
                failures.push(format!("{f}: base: {e}"));
                continue;
            }
        };
        colorable_count += usize::from(base);
        for k in [4, 5] {
            let art = inst.lifted_artifact(k).unwrap();
            match is_k_colorable(&art.graph, k, Some(budget)) {
                Ok(c) if c.is_some() == base => {}
                Ok(c) => failures.push(format!("{f}: k={k} colorable={} base={base}", c.is_some())),
                Err(e) => failures.push(format!("{f}: k={k}: {e}")),
            }
            let v = verify_d_sequence(&art.graph, &art.sequence, 4).unwrap();
            if !v.within_bound {
                failures.push(format!("{f}: k={k} lifted width {}", v.profile.overall_width()));
            }
        }
    }
    Outcome::new(
        &failures,
        format!("{} instances ({colorable_count} 3-colorable) × k∈{{4,5}} agree and verify at d=4", corpus.len()),
    )
}

/// Exact twin-width of `g`, checking that the witness replays at that width.
fn tww_checked(g: &Trigraph, what: &str, expect: Option<usize>, failures: &mut Vec<String>) -> Option<usize> {
    match exact_twinwidth(g, Some(budget())) {
        Ok(tw) => {
            let v = verify_d_sequence(g, &tw.witness, tw.width).unwrap();
            if !v.within_bound || v.profile.overall_width() != tw.width {
                failures.push(format!("{what}: witness does not re-verify at {}", tw.width));
            }
            if expect.is_some_and(|e| e != tw.width) {
                failures.push(format!("{what}: width {} expected {expect:?}", tw.width));
            }
            Some(tw.width)
        }
        Err(e) => {
            failures.push(format!("{what}: {e}"));
            None
        }
    }
}

fn c11_exact_twinwidth() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = StdRng::seed_from_u64(0x5eed_000b);
    let mut cographs = 0;
    for n in 1..=8 {
        for _ in 0..40 {
            let g = random_cograph(&mut rng, n);
            if has_induced_p4(&g) {
                failures.push(format!("generated cograph on {n} vertices has an induced P4"));
            }
            tww_checked(&g, &format!("cograph {:?}", g.black_edges().collect::<Vec<_>>()), Some(0), &mut failures);
            cographs += 1;
        }
    }
    tww_checked(&plain_graph(4, &[(0, 1), (1, 2), (2, 3)]), "P4", Some(1), &mut failures);
    let mut monotone = 0;
    let mut cograph_law = 0;
    for mask in 0..(1u64 << 10) {
        let g = graph_from_mask(5, mask);
        let what = format!("5-vertex mask {mask:#b}");
        let w = tww_checked(&g, &what, None, &mut failures);
        let wr = tww_checked(&g.redify(), &format!("{what} redified"), None, &mut failures);
        let (Some(w), Some(wr)) = (w, wr)
        else {
            continue;
        };
        if wr < w {
            failures.push(format!("{what}: redified width {wr} < {w}"));
        }
        monotone += 1;
        if (w == 0) == !has_induced_p4(&g) {
            cograph_law += 1;
        } else {
            failures.push(format!("{what}: width {w} but induced P4 = {}", has_induced_p4(&g)));
        }
    }
    Outcome::new(
        &failures,
        format!(
            "{cographs} cographs at width 0, P4 at 1, {monotone} five-vertex graphs monotone under redify, \
             {cograph_law} match width 0 ⟺ P4-free"
        ),
    )
}

fn report(id: u32, name: &str, o: &Outcome, elapsed: Duration) {
    let tag = if o.ok { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} {tag} {name}: {} [{:.1}s]", o.detail, elapsed.as_secs_f64());
}

/// Numeric arguments select criteria (`cargo test --test acceptance -- 4 8`);
/// with none, all run.
fn main() {
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let wanted = |id: u32| selected.is_empty() || selected.contains(&id);
    let started = Instant::now();
    let (mut total, mut failed) = (0, 0);
    let mut record = |id: u32, name: &str, o: Outcome, elapsed: Duration| {
        report(id, name, &o, elapsed);
        total += 1;
        failed += usize::from(!o.ok);
    };
    let criteria: [Criterion; 3] = [
        (1, "quotient oracle equivalence", c1_quotient_equivalence),
        (2, "min-coloring instance size", c2_mincol_size),
        (3, "min-coloring width-3 certificate", c3_mincol_certificate),
    ];
    let later: [Criterion; 6] = [
        (6, "3-coloring instance size", c6_threecol_size),
        (7, "3-coloring width-4 certificate", c7_threecol_certificate),
        (8, "NAE-3-SAT ⟺ 3-colorability", c8_threecol_equivalence),
        (9, "path parity", c9_parity),
        (10, "universal-vertex lift", c10_lift),
        (11, "exact twin-width sanity", c11_exact_twinwidth),
    ];
    for (id, name, f) in criteria {
        if wanted(id) {
            let t = Instant::now();
            let o = f();
            record(id, name, o, t.elapsed());
        }
    }
    if wanted(4) || wanted(5) {
        // Both criteria come out of one pass over the corpus.
        let t = Instant::now();
        let (c4, c5) = c4_c5_mincol_equivalence();
        record(4, "3-SAT ⟺ 2n-colorability", c4, t.elapsed());
        record(5, "min-coloring round trip", c5, Duration::ZERO);
    }
    for (id, name, f) in later {
        if wanted(id) {
            let t = Instant::now();
            let o = f();
            record(id, name, o, t.elapsed());
        }
    }
    println!(
        "acceptance: {}/{total} criteria passed in {:.1}s (oracle budget {})",
        total - failed,
        started.elapsed().as_secs_f64(),
        budget()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
