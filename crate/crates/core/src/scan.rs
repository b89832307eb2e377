//! Catalog-wide evaluation of theorem and lemma checks.

use rayon::prelude::*;

use crate::group::Group;
use crate::theorems::{evaluate_in, CheckId, PrimeContext, TheoremReport, Verdict};

#[derive(Debug, Clone)]
pub struct NamedGroup {
    pub name: String,
    pub group: Group,
}

/// A (group, prime) pair that could not be evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanError {
    pub group: String,
    pub prime: u64,
    pub check: Option<CheckId>,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct ScanOutcome {
    pub reports: Vec<TheoremReport>,
    pub errors: Vec<ScanError>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub confirmed: usize,
    pub vacuous: usize,
    pub violations: usize,
    pub undecided: usize,
    pub errors: usize,
}

impl ScanOutcome {
    pub fn summary(&self) -> Summary {
        let mut s = Summary {
            errors: self.errors.len(),
            ..Summary::default()
        };
        for r in &self.reports {
            match r.verdict {
                Verdict::Confirmed => s.confirmed += 1,
                Verdict::Vacuous => s.vacuous += 1,
                Verdict::Violation => s.violations += 1,
                Verdict::Undecided => s.undecided += 1,
            }
        }
        s
    }
}

/// Primes to evaluate for `group`: the requested ones that divide `|G|`, or
/// every prime divisor.
fn primes_for(group: &Group, primes: Option<&[u64]>) -> Vec<u64> {
    let divisors = group.prime_divisors();
    match primes {
        None => divisors,
        Some(list) => divisors.into_iter().filter(|p| list.contains(p)).collect(),
    }
}

fn run_item(
    index: usize,
    entry: &NamedGroup,
    p: u64,
    checks: &[CheckId],
) -> Vec<(usize, std::result::Result<TheoremReport, ScanError>)> {
    let error = |check, e: crate::error::GroupError| ScanError {
        group: entry.name.clone(),
        prime: p,
        check,
        message: e.to_string(),
    };
    let ctx = match PrimeContext::new(&entry.group, p) {
        Ok(c) => c,
        Err(e) => return vec![(index, Err(error(None, e)))],
    };
    checks
        .iter()
        .map(|&c| {
            (
                index,
                evaluate_in(&ctx, c, &entry.name).map_err(|e| error(Some(c), e)),
            )
        })
        .collect()
}

/// Evaluates every check for every (group, prime) pair on `jobs` worker
/// threads. Output order is by catalog position, then prime, then check.
pub fn scan(
    catalog: &[NamedGroup],
    checks: &[CheckId],
    primes: Option<&[u64]>,
    jobs: usize,
) -> ScanOutcome {
    let items: Vec<(usize, u64)> = catalog
        .iter()
        .enumerate()
        .flat_map(|(i, e)| {
            primes_for(&e.group, primes)
                .into_iter()
                .map(move |p| (i, p))
        })
        .collect();
    if checks.is_empty() {
        return ScanOutcome::default();
    }
    let run = || -> Vec<_> {
        items
            .par_iter()
            .flat_map_iter(|&(i, p)| run_item(i, &catalog[i], p, checks))
            .collect()
    };
    let mut results = match rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
    {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    let key = |r: &(usize, std::result::Result<TheoremReport, ScanError>)| match &r.1 {
        Ok(t) => (r.0, t.prime, Some(t.check)),
        Err(e) => (r.0, e.prime, e.check),
    };
    results.sort_by_key(key);
    let mut out = ScanOutcome::default();
    for (_, r) in results {
        match r {
            Ok(t) => out.reports.push(t),
            Err(e) => out.errors.push(e),
        }
    }
    out
}
