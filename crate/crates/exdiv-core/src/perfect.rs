//! Powerful-number enumeration and exhaustive perfect-number searches.
//!
//! Exponential-kind searches walk powerful kernels only: unit exponents
//! contribute sigma(p) = p to both sides of sigma(n) = 2n, so n is
//! e-perfect (or e-unitary perfect) exactly when its powerful part is.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::arithfun::{self, FunctionId};
use crate::convolve::{factor_with_spf, spf_table};
use crate::error::{Error, Result};
use crate::factorint::{classify, powerful_split, Classification, Factorization};
use crate::summatory::fold_factorizations;

/// Powerful-number generation guard.
const POWERFUL_MAX: u64 = 1_000_000_000_000;
/// Exponential-kind search guard (kernel space is the powerful numbers).
const EXP_SEARCH_MAX: u64 = 10_000_000_000;
/// Unitary-kind search guard (full scan).
const UNITARY_SEARCH_MAX: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PerfectKind {
    Unitary,
    EPerfect,
    EUnitary,
}

impl PerfectKind {
    pub fn name(self) -> &'static str {
        match self {
            PerfectKind::Unitary => "unitary-perfect",
            PerfectKind::EPerfect => "e-perfect",
            PerfectKind::EUnitary => "e-unitary-perfect",
        }
    }

    fn sigma_id(self) -> FunctionId {
        match self {
            PerfectKind::Unitary => FunctionId::SigmaStar,
            PerfectKind::EPerfect => FunctionId::SigmaE,
            PerfectKind::EUnitary => FunctionId::SigmaEStar,
        }
    }
}

impl std::fmt::Display for PerfectKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PerfectKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "unitary-perfect" | "unitary" => Ok(PerfectKind::Unitary),
            "e-perfect" | "e_perfect" => Ok(PerfectKind::EPerfect),
            "e-unitary-perfect" | "e-unitary" | "e_unitary" => Ok(PerfectKind::EUnitary),
            _ => Err(Error::Parse(format!("unknown perfect kind `{s}`"))),
        }
    }
}

/// Composable hit filters for [`search`].
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchFilter {
    pub odd_only: bool,
    pub coprime_to: Option<u128>,
    pub require_non_e_squarefree: bool,
    pub powerful_only: bool,
}

impl SearchFilter {
    fn admits(&self, n: u128, c: &Classification) -> bool {
        if self.odd_only && n % 2 == 0 {
            return false;
        }
        if let Some(k) = self.coprime_to {
            if crate::factorint::gcd_u128(n, k) != 1 {
                return false;
            }
        }
        if self.require_non_e_squarefree && c.e_squarefree {
            return false;
        }
        if self.powerful_only && !c.squarefull {
            return false;
        }
        true
    }
}

/// Every squarefull n <= limit exactly once, ascending, with factorization.
/// Generated as a^2 b^3 with b squarefree, which is a bijection onto the
/// powerful numbers.
pub fn powerful_numbers(limit: u64) -> Result<impl Iterator<Item = (u64, Factorization)>> {
    if limit > POWERFUL_MAX {
        return Err(Error::Capacity(format!(
            "powerful enumeration capped at {POWERFUL_MAX}, got {limit}"
        )));
    }
    if limit == 0 {
        return Err(Error::Invalid("limit must be >= 1".into()));
    }
    let a_max = crate::factorint::integer_sqrt(limit as u128) as u64;
    let spf = spf_table(a_max.max(3))?;
    let mut out: Vec<(u64, Factorization)> = Vec::new();
    let mut b: u64 = 1;
    while b * b * b <= limit {
        let fb = factor_with_spf(b, &spf);
        if fb.iter().all(|&(_, e)| e == 1) {
            let b3 = b * b * b;
            let mut a: u64 = 1;
            while a * a <= limit / b3 {
                let n = a * a * b3;
                let fa = factor_with_spf(a, &spf);
                let fact = merge_pow(&fa, 2, &fb, 3);
                out.push((n, fact));
                a += 1;
            }
        }
        b += 1;
    }
    out.sort_unstable_by_key(|&(n, _)| n);
    Ok(out.into_iter())
}

fn merge_pow(fa: &[(u64, u32)], ka: u32, fb: &[(u64, u32)], kb: u32) -> Factorization {
    let mut parts: Vec<(u128, u32)> = Vec::with_capacity(fa.len() + fb.len());
    let (mut i, mut j) = (0, 0);
    while i < fa.len() || j < fb.len() {
        match (fa.get(i), fb.get(j)) {
            (Some(&(p, e)), Some(&(q, f))) if p == q => {
                parts.push((p as u128, e * ka + f * kb));
                i += 1;
                j += 1;
            }
            (Some(&(p, e)), Some(&(q, _))) if p < q => {
                parts.push((p as u128, e * ka));
                i += 1;
            }
            (Some(_), Some(&(q, f))) => {
                parts.push((q as u128, f * kb));
                j += 1;
            }
            (Some(&(p, e)), None) => {
                parts.push((p as u128, e * ka));
                i += 1;
            }
            (None, Some(&(q, f))) => {
                parts.push((q as u128, f * kb));
                j += 1;
            }
            (None, None) => break,
        }
    }
    Factorization::from_sorted_unchecked(parts)
}

/// Exact test sigma_kind(n) = 2n.
pub fn is_perfect(kind: PerfectKind, f: &Factorization) -> Result<bool> {
    let n = f.value()?;
    let sigma = arithfun::eval_unsigned(kind.sigma_id(), f)?;
    let twice = n.checked_mul(2).ok_or(Error::Overflow)?;
    Ok(sigma == twice)
}

/// The powerful kernel of n and the perfect verdict on it. n is e-perfect
/// (resp. e-unitary perfect) iff the verdict holds.
pub fn reduce_to_powerful_kernel(
    f: &Factorization,
    kind: PerfectKind,
) -> Result<(Factorization, bool)> {
    if kind == PerfectKind::Unitary {
        return Err(Error::Invalid(
            "kernel reduction applies to the exponential kinds".into(),
        ));
    }
    let (kernel, _) = powerful_split(f);
    let holds = is_perfect(kind, &kernel)?;
    Ok((kernel, holds))
}

/// One search hit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hit {
    pub n: u128,
    pub factorization: Factorization,
    pub kind: PerfectKind,
    pub e_squarefree: bool,
}

/// Search result: hits ascending, plus any kernels whose sigma value
/// overflowed 128 bits and could not be decided.
#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub hits: Vec<Hit>,
    pub indeterminate: Vec<Factorization>,
}

impl SearchOutcome {
    /// CSV `n,factorization,kind,e_squarefree`, one row per hit, with
    /// header. Exit semantics for empty results belong to the caller; an
    /// empty table is a valid finding.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,factorization,kind,e_squarefree\n");
        for h in &self.hits {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                h.n,
                h.factorization,
                h.kind.name(),
                h.e_squarefree
            );
        }
        out
    }
}

/// Exhaustive search for perfect numbers of the given kind up to `limit`.
///
/// The unitary kind scans the full range; the exponential kinds search
/// powerful kernels only and report kernels (every kernel extends to
/// infinitely many perfect numbers by coprime squarefree multipliers).
pub fn search(
    kind: PerfectKind,
    limit: u64,
    filter: SearchFilter,
    threads: usize,
) -> Result<SearchOutcome> {
    match kind {
        PerfectKind::Unitary => {
            if limit > UNITARY_SEARCH_MAX {
                return Err(Error::Capacity(format!(
                    "unitary-perfect search capped at {UNITARY_SEARCH_MAX}, got {limit}"
                )));
            }
            let hits = fold_factorizations(
                2,
                limit,
                threads,
                Vec::new,
                |acc: &mut Vec<Hit>, n, fs| {
                    let sigma = arithfun::eval_unsigned_pairs(
                        FunctionId::SigmaStar,
                        fs.iter().map(|&(p, e)| (p as u128, e)),
                    )?;
                    if sigma != 2 * n as u128 {
                        return Ok(());
                    }
                    let fact = Factorization::from_sorted_unchecked(
                        fs.iter().map(|&(p, e)| (p as u128, e)).collect(),
                    );
                    let c = classify(&fact);
                    if filter.admits(n as u128, &c) {
                        acc.push(Hit {
                            n: n as u128,
                            factorization: fact,
                            kind,
                            e_squarefree: c.e_squarefree,
                        });
                    }
                    Ok(())
                },
                |acc, mut part| acc.append(&mut part),
            )?;
            Ok(SearchOutcome {
                hits,
                indeterminate: Vec::new(),
            })
        }
        PerfectKind::EPerfect | PerfectKind::EUnitary => {
            if limit > EXP_SEARCH_MAX {
                return Err(Error::Capacity(format!(
                    "exponential-kind search capped at {EXP_SEARCH_MAX}, got {limit}"
                )));
            }
            let mut outcome = SearchOutcome::default();
            for (n, fact) in powerful_numbers(limit)? {
                if n == 1 {
                    continue;
                }
                let c = classify(&fact);
                if !filter.admits(n as u128, &c) {
                    continue;
                }
                match is_perfect(kind, &fact) {
                    Ok(true) => outcome.hits.push(Hit {
                        n: n as u128,
                        factorization: fact,
                        kind,
                        e_squarefree: c.e_squarefree,
                    }),
                    Ok(false) => {}
                    Err(Error::Overflow) => outcome.indeterminate.push(fact),
                    Err(e) => return Err(e),
                }
            }
            Ok(outcome)
        }
    }
}
