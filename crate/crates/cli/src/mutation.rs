//! Mutation sensitivity: single-coefficient corruptions must trip a check.

use qgl_core::ncalg::{r_matrix, LeggedMatrix, NcElement};
use qgl_core::qgroups::{check_pbw, default_degree_cap, om_from_relations, om_relations, quantum_det, AlgebraHandle, DetForm};
use qgl_core::{QScalar, Report, Result};

use crate::checks::r_suite;

/// Outcome of one corruption.
#[derive(Clone, Debug)]
pub struct Mutant {
    pub label: String,
    /// Names of the checks that failed (or errored) on the corrupted input.
    pub caught_by: Vec<String>,
}

impl Mutant {
    pub fn caught(&self) -> bool {
        !self.caught_by.is_empty()
    }
}

fn failed_keys(rep: &Report) -> Vec<String> {
    if rep.pass {
        return Vec::new();
    }
    // failing entries are kept at the front of the witness
    vec![rep.witness.first().map(|w| w.0.clone()).unwrap_or_else(|| "unnamed".into())]
}

/// PBW counts and determinant identities on an `O_M`-shaped algebra.
pub fn om_suites(h: &AlgebraHandle) -> Result<Vec<String>> {
    let mut caught: Vec<String> = failed_keys(&check_pbw(h, 4)?).into_iter().map(|k| format!("pbw:{k}")).collect();
    let d1 = h.normal_form(&quantum_det(h, "X", DetForm::One)?)?;
    for form in [DetForm::Two, DetForm::Three] {
        if h.normal_form(&quantum_det(h, "X", form)?)? != d1 {
            caught.push(format!("det:{form:?}"));
        }
    }
    if !h.is_central(&d1)? {
        caught.push("det:central".into());
    }
    Ok(caught)
}

fn om_caught(alpha: qgl_core::ncalg::Alphabet, rels: Vec<NcElement>, n: usize) -> Vec<String> {
    match om_from_relations(alpha, rels, n, default_degree_cap(n)).and_then(|h| om_suites(&h)) {
        Ok(v) => v,
        Err(e) => vec![format!("build:{e}")],
    }
}

fn perturb(c: &QScalar) -> QScalar {
    c + &QScalar::one()
}

/// Adds 1 to each entry of `R` in turn, zero entries included.
pub fn r_entry_mutants(n: usize) -> Result<Vec<Mutant>> {
    let r = r_matrix(n);
    let size = r.size();
    let mut out = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            let mut bad: LeggedMatrix = r.clone();
            bad.set(i, j, NcElement::scalar(perturb(&r.scalar_entry(i, j))));
            let mut caught: Vec<String> = failed_keys(&r_suite(&bad)?).into_iter().map(|k| format!("r:{k}")).collect();
            let (alpha, rels) = om_relations(&bad, n)?;
            caught.extend(om_caught(alpha, rels, n));
            out.push(Mutant { label: format!("R[{i},{j}]"), caught_by: caught });
        }
    }
    Ok(out)
}

/// Adds 1 to each coefficient of each RTT relation of `O_M` in turn.
pub fn relation_mutants(n: usize) -> Result<Vec<Mutant>> {
    let (alpha, rels) = om_relations(&r_matrix(n), n)?;
    let mut out = Vec::new();
    for (ri, rel) in rels.iter().enumerate() {
        for (w, c) in rel.terms() {
            let mut bad_rel = rel.clone();
            bad_rel.add_term(w.clone(), &(&perturb(c) - c));
            let mut bad = rels.clone();
            bad[ri] = bad_rel;
            let caught = om_caught(alpha.clone(), bad, n);
            out.push(Mutant { label: format!("relation {ri} at {}", alpha.word_name(w)), caught_by: caught });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qgl_core::qgroups::{build, AlgebraKind};

    #[test]
    fn unmutated_inputs_pass() {
        for n in [2, 3] {
            assert!(r_suite(&r_matrix(n)).unwrap().pass);
            assert!(om_suites(&build(AlgebraKind::OM, n).unwrap()).unwrap().is_empty());
        }
    }

    #[test]
    fn every_mutant_is_caught_n2() {
        let rs = r_entry_mutants(2).unwrap();
        assert_eq!(rs.len(), 16);
        let rels = relation_mutants(2).unwrap();
        assert!(rels.len() >= 12);
        for m in rs.iter().chain(&rels) {
            assert!(m.caught(), "{}", m.label);
        }
    }

    #[test]
    fn relation_mutants_break_the_algebra_not_the_builder() {
        for m in relation_mutants(2).unwrap() {
            assert!(m.caught_by.iter().any(|c| c.starts_with("pbw:") || c.starts_with("det:")), "{}: {:?}", m.label, m.caught_by);
        }
    }
}
