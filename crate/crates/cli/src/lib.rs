//! Driver for the `qgl` command: named checks, JSON reports, floating point
//! spectra and mutation runs on top of `qgl-core`.

pub mod checks;
pub mod mutation;
pub mod output;
pub mod spectrum;

use rayon::prelude::*;

pub use checks::{run, CheckId, Params};
pub use output::{CheckReport, Status};

/// Which checks `run_all` covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// Every check at N = 2.
    Quick,
    /// Quick, plus N = 3 for every check and N = 4 for `ybe` and `hecke`.
    Full,
}

impl std::str::FromStr for Profile {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            other => Err(format!("unknown profile '{other}' (quick|full)")),
        }
    }
}

/// The `(check, N)` pairs of a profile in report order.
pub fn plan(profile: Profile) -> Vec<(CheckId, usize)> {
    let mut out = Vec::new();
    for &id in CheckId::ALL {
        out.push((id, 2));
        if profile == Profile::Full {
            out.push((id, 3));
            if matches!(id, CheckId::Ybe | CheckId::Hecke) {
                out.push((id, 4));
            }
        }
    }
    out
}

/// Runs a profile on `jobs` threads; the output order does not depend on `jobs`.
pub fn run_all(profile: Profile, base: &Params, jobs: usize) -> Vec<CheckReport> {
    let items = plan(profile);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
    pool.install(|| {
        items
            .par_iter()
            .map(|&(id, n)| {
                let p = Params { n, ..base.clone() };
                run(id, &p)
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles() {
        assert_eq!(plan(Profile::Quick).len(), CheckId::ALL.len());
        let full = plan(Profile::Full);
        assert_eq!(full.len(), 2 * CheckId::ALL.len() + 2);
        assert!(full.contains(&(CheckId::Ch, 3)));
        assert!(full.contains(&(CheckId::Hecke, 4)));
        assert!("medium".parse::<Profile>().is_err());
    }
}
