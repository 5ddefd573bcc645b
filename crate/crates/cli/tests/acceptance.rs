//! One line per acceptance criterion; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_rational::BigRational;
use qgl_cli::checks::{ehc_weights, r_suite};
use qgl_cli::mutation::{r_entry_mutants, relation_mutants, Mutant};
use qgl_cli::spectrum::{RESIDUAL_TOL, ROOT_TOL};
use qgl_cli::{run, CheckId, CheckReport, Params};
use qgl_core::ncalg::r_matrix;
use qgl_core::qgroups::hopf::check_hopf_axioms;
use qgl_core::qgroups::{build, AlgebraKind};

type Criterion = (&'static str, fn() -> Outcome);

/// Outcome of one criterion: pass flag plus a short explanation of what failed.
struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, detail: String::new() }
    }

    fn fail(&mut self, what: impl AsRef<str>) {
        self.pass = false;
        if !self.detail.is_empty() {
            self.detail.push_str("; ");
        }
        self.detail.push_str(what.as_ref());
    }

    fn report(&mut self, r: &CheckReport) {
        if !r.passed() {
            let w = r.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
            let short: String = w.chars().take(240).collect();
            self.fail(format!("{} N={} {:?}: {short}", r.check, r.params["n"], r.status));
        }
    }

    fn checks(&mut self, ids: &[CheckId], ns: &[usize]) {
        for &n in ns {
            for &id in ids {
                self.report(&run(id, &Params::with_n(n)));
            }
        }
    }
}

fn r_matrix_suite() -> Outcome {
    let mut o = Outcome::new();
    for n in [2, 3, 4] {
        match r_suite(&r_matrix(n)) {
            Ok(rep) if rep.pass => {}
            Ok(rep) => o.fail(format!("N={n}: {:?}", rep.witness.first())),
            Err(e) => o.fail(format!("N={n}: {e}")),
        }
        o.checks(&[CheckId::Ybe, CheckId::Hecke], &[n]);
    }
    o
}

fn pbw() -> Outcome {
    let mut o = Outcome::new();
    o.checks(&[CheckId::PbwConfluence], &[2, 3]);
    o
}

fn determinant() -> Outcome {
    let mut o = Outcome::new();
    o.checks(&[CheckId::Det, CheckId::DetPairing, CheckId::GlrStar], &[2, 3]);
    o
}

fn re_cholesky() -> Outcome {
    let mut o = Outcome::new();
    o.checks(&[CheckId::ReEmbed, CheckId::Cholesky, CheckId::Bk, CheckId::BiCommute], &[2, 3]);
    o
}

fn cayley_hamilton() -> Outcome {
    let mut o = Outcome::new();
    o.checks(&[CheckId::Ch, CheckId::NewtonCentral], &[2, 3]);
    o
}

fn harish_chandra() -> Outcome {
    let mut o = Outcome::new();
    for n in [2, 3] {
        if ehc_weights(n).len() < 5 {
            o.fail(format!("fewer than 5 weights at N={n}"));
        }
    }
    o.checks(&[CheckId::Hc, CheckId::Ehc], &[2, 3]);
    o
}

fn braid_l() -> Outcome {
    let mut o = Outcome::new();
    o.checks(&[CheckId::LFamily, CheckId::BnSlice], &[2, 3]);
    o
}

fn dictionary() -> Outcome {
    let mut o = Outcome::new();
    o.checks(&[CheckId::IsoUt, CheckId::PairingUt], &[2, 3]);
    for kind in AlgebraKind::ALL {
        // the reflection equation algebra is a comodule algebra, not a Hopf algebra
        if kind == AlgebraKind::OH {
            continue;
        }
        match build(kind, 2).and_then(|h| check_hopf_axioms(&h)) {
            Ok(f) if f.is_empty() => {}
            Ok(f) => o.fail(format!("Hopf axioms {kind}: {}", f.join(", "))),
            Err(e) => o.fail(format!("Hopf axioms {kind}: {e}")),
        }
    }
    o
}

fn representations() -> Outcome {
    let mut o = Outcome::new();
    o.checks(&[CheckId::RepDims], &[2, 3]);
    o
}

fn qr_injective() -> Outcome {
    let mut o = Outcome::new();
    o.checks(&[CheckId::QrInject], &[2]);
    o
}

fn filtration_numeric() -> Outcome {
    let mut o = Outcome::new();
    let p = Params { q0: BigRational::new(1.into(), 2.into()), window: 10, ..Params::with_n(2) };
    o.report(&run(CheckId::Filtration, &p));
    o.report(&run(CheckId::Spectrum, &p));
    o
}

fn mutation() -> Outcome {
    let mut o = Outcome::new();
    let mut tally = |what: &str, ms: qgl_core::Result<Vec<Mutant>>| match ms {
        Ok(ms) => {
            let missed: Vec<&str> = ms.iter().filter(|m| !m.caught()).map(|m| m.label.as_str()).collect();
            if ms.is_empty() {
                o.fail(format!("no {what} mutants"));
            } else if !missed.is_empty() {
                o.fail(format!("{} of {} {what} mutants undetected: {}", missed.len(), ms.len(), missed.join(", ")));
            }
        }
        Err(e) => o.fail(format!("{what}: {e}")),
    };
    for n in [2, 3] {
        tally(&format!("N={n} R entry"), r_entry_mutants(n));
        tally(&format!("N={n} relation coefficient"), relation_mutants(n));
    }
    o
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("R-matrix suite, N=2,3,4", r_matrix_suite),
        ("PBW and confluence, O_M O_T O_H at N=2,3", pbw),
        ("determinant suite, N=2,3", determinant),
        ("reflection equation and Cholesky, N=2,3", re_cholesky),
        ("Cayley-Hamilton and Newton traces, N=2,3", cayley_hamilton),
        ("Harish-Chandra images and EHC, N=2,3", harish_chandra),
        ("braid family and B_N slice, N=2,3", braid_l),
        ("U_q dictionary, pairing, Hopf axioms", dictionary),
        ("irreducible modules, N=2,3", representations),
        ("QR map injective in degree 2, N=2", qr_injective),
        ("filtration and spectrum at q=1/2, N=2", filtration_numeric),
        ("mutation sensitivity, N=2,3", mutation),
    ];
    println!("tolerances: spectrum residual < {RESIDUAL_TOL:e}, eigenvalue distance < {ROOT_TOL:e} (relative); all other checks exact");
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        if o.pass {
            println!("criterion {:>2} {tag} {name} [{secs:.1}s]", i + 1);
        } else {
            failed += 1;
            println!("criterion {:>2} {tag} {name} [{secs:.1}s]: {}", i + 1, o.detail);
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
