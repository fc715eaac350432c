use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rand::rngs::StdRng;
use rand::SeedableRng;
use tww_core::formats::{
    parse_dimacs_cnf, read_sequence, read_trigraph, write_assignment, write_coloring, write_dimacs, write_roles,
    write_sequence, write_trigraph, FormatError,
};
use tww_core::generate::random_formula;
use tww_core::oracles::{chromatic_number, exact_twinwidth, is_k_colorable, is_proper, solve_nae, solve_sat};
use tww_core::reduction::{MinColInstance, ThreeColInstance};
use tww_core::{verify_d_sequence, CnfFormula, Coloring, Dialect, OracleError, ReductionArtifact, Trigraph};

use crate::report::RunReport;

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_text(path: Option<&PathBuf>, text: &str) -> Result<()> {
    if let Some(path) = path {
        fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(())
}

fn read_cnf(path: &Path, dialect: Dialect) -> Result<CnfFormula> {
    parse_dimacs_cnf(&read_text(path)?, dialect).with_context(|| format!("in {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Trigraph> {
    read_trigraph(&read_text(path)?).with_context(|| format!("in {}", path.display()))
}

fn formula_stats(report: &mut RunReport, f: &CnfFormula) {
    report.instance.n = Some(f.n_vars());
    report.instance.m = Some(f.num_clauses());
}

/// Replays the emitted sequence and records whether it stays within the bound.
fn certify(report: &mut RunReport, art: &ReductionArtifact) -> Result<()> {
    report.graph_stats(&art.graph);
    let v = verify_d_sequence(&art.graph, &art.sequence, art.width_bound)?;
    report.width_profile(&v.profile, art.sequence.len(), art.width_bound);
    report.check(&format!("sequence verifies at d={}", art.width_bound), v.within_bound);
    Ok(())
}

/// Turns a budget overrun into a skip note; any other oracle error is fatal.
fn budgeted<T>(report: &mut RunReport, what: &str, r: Result<T, OracleError>) -> Result<Option<T>> {
    match r {
        Ok(x) => Ok(Some(x)),
        Err(e @ OracleError::BudgetExceeded { .. }) => {
            report.skip(format!("{what}: {e}"));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

pub struct Outputs<'a> {
    pub graph: Option<&'a PathBuf>,
    pub sequence: Option<&'a PathBuf>,
    pub roles: Option<&'a PathBuf>,
}

fn emit(art: &ReductionArtifact, out: &Outputs) -> Result<()> {
    write_text(out.graph, &write_trigraph(&art.graph))?;
    write_text(out.sequence, &write_sequence(&art.sequence))?;
    if let Some(labels) = art.graph.labels() {
        write_text(out.roles, &write_roles(labels))?;
    }
    Ok(())
}

pub fn reduce_mincol(report: &mut RunReport, cnf: &Path, out: &Outputs) -> Result<()> {
    let f = read_cnf(cnf, Dialect::ThreeSat)?;
    formula_stats(report, &f);
    let inst = MinColInstance::build(&f)?;
    report.verdicts.colors = Some(inst.color_budget());
    let art = inst.artifact();
    certify(report, &art)?;
    emit(&art, out)
}

pub fn reduce_3col(report: &mut RunReport, cnf: &Path, k: usize, out: &Outputs) -> Result<()> {
    let f = read_cnf(cnf, Dialect::NaeThreeSat)?;
    formula_stats(report, &f);
    let inst = ThreeColInstance::build(&f)?;
    report.verdicts.colors = Some(k);
    let art = inst.lifted_artifact(k)?;
    certify(report, &art)?;
    emit(&art, out)
}

pub fn verify_sequence(report: &mut RunReport, graph: &Path, sequence: &Path, d: usize) -> Result<()> {
    let g = read_graph(graph)?;
    report.graph_stats(&g);
    let seq = match read_sequence(&read_text(sequence)?) {
        Ok(seq) => seq,
        Err(FormatError::Sequence(e)) => {
            report.check("sequence is well-formed", false);
            report.notes.push(e.to_string());
            return Ok(());
        }
        Err(e) => return Err(e).with_context(|| format!("in {}", sequence.display())),
    };
    match verify_d_sequence(&g, &seq, d) {
        Ok(v) => {
            report.check("sequence is well-formed", true);
            report.width_profile(&v.profile, seq.len(), d);
            report.check(&format!("width at most {d}"), v.within_bound);
        }
        Err(e) => {
            report.check("sequence is well-formed", false);
            report.notes.push(e.to_string());
        }
    }
    Ok(())
}

pub fn tww_exact(report: &mut RunReport, graph: &Path, witness: Option<&PathBuf>) -> Result<()> {
    let g = read_graph(graph)?;
    report.graph_stats(&g);
    let budget = report.budget;
    let Some(tw) = budgeted(report, "exact twin-width", exact_twinwidth(&g, Some(budget)))? else {
        return Ok(());
    };
    report.verdicts.twin_width = Some(tw.width);
    let v = verify_d_sequence(&g, &tw.witness, tw.width)?;
    report.width_profile(&v.profile, tw.witness.len(), tw.width);
    report.check("witness verifies at the returned width", v.within_bound);
    write_text(witness, &write_sequence(&tw.witness))
}

pub fn chromatic(report: &mut RunReport, graph: &Path, coloring: Option<&PathBuf>) -> Result<()> {
    let g = read_graph(graph)?;
    report.graph_stats(&g);
    let budget = report.budget;
    let Some(chi) = budgeted(report, "chromatic number", chromatic_number(&g, Some(budget)))? else {
        return Ok(());
    };
    report.verdicts.chromatic_number = Some(chi);
    if coloring.is_some() {
        if let Some(Some(col)) = budgeted(report, "witness coloring", is_k_colorable(&g, chi, Some(budget)))? {
            report.check("witness coloring is proper", is_proper(&g, &col)?);
            write_text(coloring, &write_coloring(&col))?;
        }
    }
    Ok(())
}

pub fn solve(report: &mut RunReport, cnf: &Path, dialect: Dialect, assignment: Option<&PathBuf>) -> Result<()> {
    let f = read_cnf(cnf, dialect)?;
    formula_stats(report, &f);
    let a = match dialect {
        Dialect::ThreeSat => solve_sat(&f),
        Dialect::NaeThreeSat => solve_nae(&f),
    };
    report.verdicts.satisfiable = Some(a.is_some());
    match a {
        Some(a) => {
            report.check("solution satisfies the formula", f.is_satisfied_by(&a));
            write_text(assignment, &write_assignment(&a))?;
        }
        None if assignment.is_some() => report.notes.push("unsatisfiable; no assignment written".into()),
        None => {}
    }
    Ok(())
}

fn check_forward_backward<F, B>(
    report: &mut RunReport,
    g: &Trigraph,
    k: usize,
    forward: F,
    backward: B,
) -> Result<()>
where
    F: FnOnce() -> Result<Coloring, tww_core::ReductionError>,
    B: Fn(&Coloring) -> bool,
{
    match forward() {
        Ok(col) => {
            report.check("forward coloring is proper", is_proper(g, &col)?);
            let max = col.colors().iter().copied().max().unwrap_or(0);
            report.check(&format!("forward coloring uses at most {k} colors"), max <= k);
            report.check("backward assignment satisfies the formula", backward(&col));
        }
        Err(e) => {
            report.check("forward coloring is constructed", false);
            report.notes.push(e.to_string());
        }
    }
    Ok(())
}

pub fn roundtrip_mincol(report: &mut RunReport, cnf: &Path) -> Result<()> {
    let f = read_cnf(cnf, Dialect::ThreeSat)?;
    formula_stats(report, &f);
    let inst = MinColInstance::build(&f)?;
    let k = inst.color_budget();
    report.verdicts.colors = Some(k);
    let art = inst.artifact();
    certify(report, &art)?;
    let g = inst.graph();
    let sat = solve_sat(&f);
    report.verdicts.satisfiable = Some(sat.is_some());
    let back = |col: &Coloring| inst.assignment_from_coloring(col).is_ok_and(|b| f.sat_satisfied_by(&b));
    if let Some(a) = &sat {
        check_forward_backward(report, g, k, || inst.coloring_from_assignment(a), back)?;
    }
    let budget = report.budget;
    if let Some(found) = budgeted(report, "colorability oracle", is_k_colorable(g, k, Some(budget)))? {
        report.verdicts.colorable = Some(found.is_some());
        report.check(&format!("{k}-colorable iff satisfiable"), found.is_some() == sat.is_some());
        if let Some(col) = found {
            report.check("oracle coloring maps back to a satisfying assignment", back(&col));
        }
    }
    if let Some(chi) = budgeted(report, "chromatic number", chromatic_number(g, Some(budget)))? {
        report.verdicts.chromatic_number = Some(chi);
        report.check(&format!("chromatic number is {k} iff satisfiable"), (chi == k) == sat.is_some());
    }
    Ok(())
}

pub fn roundtrip_3col(report: &mut RunReport, cnf: &Path) -> Result<()> {
    let f = read_cnf(cnf, Dialect::NaeThreeSat)?;
    formula_stats(report, &f);
    let inst = ThreeColInstance::build(&f)?;
    report.verdicts.colors = Some(3);
    let art = inst.artifact();
    certify(report, &art)?;
    let g = inst.graph();
    let nae = solve_nae(&f);
    report.verdicts.satisfiable = Some(nae.is_some());
    let back = |col: &Coloring| inst.assignment_from_coloring(col).is_ok_and(|b| f.nae_satisfied_by(&b));
    if let Some(a) = &nae {
        check_forward_backward(report, g, 3, || inst.coloring_from_assignment(a), back)?;
    }
    let budget = report.budget;
    if let Some(found) = budgeted(report, "colorability oracle", is_k_colorable(g, 3, Some(budget)))? {
        report.verdicts.colorable = Some(found.is_some());
        report.check("3-colorable iff NAE-satisfiable", found.is_some() == nae.is_some());
        if let Some(col) = found {
            report.check("oracle coloring maps back to a satisfying assignment", back(&col));
        }
    }
    Ok(())
}

pub fn generate(report: &mut RunReport, seed: u64, n: usize, m: usize, dialect: Dialect, out: &Path) -> Result<()> {
    let mut rng = StdRng::seed_from_u64(seed);
    let f = match random_formula(&mut rng, n, m, dialect) {
        Ok(f) => f,
        Err(e) => bail!("cannot generate: {e}"),
    };
    report.seed = Some(seed);
    formula_stats(report, &f);
    write_text(Some(&out.to_path_buf()), &write_dimacs(&f))
}
