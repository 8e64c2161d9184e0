//! Enumeration and counting for the five divisor systems.

use std::fmt;
use std::str::FromStr;

use num_integer::gcd;

use crate::error::{Error, Result};
use crate::exponents;
use crate::factorint::{checked_pow, classify, Factorization};

/// Cap on materialized divisor sets.
const ENUM_CAP: u128 = 1 << 20;

/// The five divisor systems.
///
/// `ExpUnitary` takes per-prime exponents that are unitary divisors of the
/// ambient exponent; `UnitaryExp` takes d | n with d and n/d exponentially
/// coprime, which is nonempty only for squarefull n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DivisorKind {
    All,
    Unitary,
    Exponential,
    ExpUnitary,
    UnitaryExp,
}

impl DivisorKind {
    pub const ALL: [DivisorKind; 5] = [
        DivisorKind::All,
        DivisorKind::Unitary,
        DivisorKind::Exponential,
        DivisorKind::ExpUnitary,
        DivisorKind::UnitaryExp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DivisorKind::All => "all",
            DivisorKind::Unitary => "unitary",
            DivisorKind::Exponential => "exponential",
            DivisorKind::ExpUnitary => "exp-unitary",
            DivisorKind::UnitaryExp => "unitary-exp",
        }
    }
}

impl fmt::Display for DivisorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DivisorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(DivisorKind::All),
            "unitary" => Ok(DivisorKind::Unitary),
            "exponential" => Ok(DivisorKind::Exponential),
            "exp-unitary" | "exp_unitary" => Ok(DivisorKind::ExpUnitary),
            "unitary-exp" | "unitary_exp" => Ok(DivisorKind::UnitaryExp),
            _ => Err(Error::Parse(format!("unknown divisor kind `{s}`"))),
        }
    }
}

/// Admissible per-prime exponents for a divisor of p^a of the given kind.
fn admissible_exponents(kind: DivisorKind, a: u32) -> Vec<u64> {
    let a = a as u64;
    match kind {
        DivisorKind::All => (0..=a).collect(),
        DivisorKind::Unitary => {
            if a == 0 {
                vec![0]
            } else {
                vec![0, a]
            }
        }
        DivisorKind::Exponential => exponents::divisors(a),
        DivisorKind::ExpUnitary => exponents::unitary_divisors(a),
        DivisorKind::UnitaryExp => exponents::coprime_exponents_below(a),
    }
}

/// The exact divisor set of the requested kind, ascending.
///
/// Conventions: every kind yields {1} at n = 1 (for the unitary-exponential
/// system this is a chosen convention, stated here rather than inherited);
/// the unitary-exponential set of a non-squarefull n > 1 is empty.
pub fn enumerate(f: &Factorization, kind: DivisorKind) -> Result<Vec<u128>> {
    if f.is_one() {
        return Ok(vec![1]);
    }
    if kind == DivisorKind::UnitaryExp && !classify(f).squarefull {
        return Ok(Vec::new());
    }
    let sets: Vec<(u128, Vec<u64>)> = f
        .factors()
        .iter()
        .map(|&(p, a)| (p, admissible_exponents(kind, a)))
        .collect();
    let mut projected: u128 = 1;
    for (_, s) in &sets {
        if s.is_empty() {
            return Ok(Vec::new());
        }
        projected = projected
            .checked_mul(s.len() as u128)
            .ok_or_else(|| Error::Capacity("divisor set too large".into()))?;
        if projected > ENUM_CAP {
            return Err(Error::Capacity(format!(
                "divisor set would exceed {ENUM_CAP} members"
            )));
        }
    }
    let mut out: Vec<u128> = vec![1];
    for (p, set) in &sets {
        let prev = std::mem::take(&mut out);
        out.reserve(prev.len() * set.len());
        for &b in set {
            let pb = checked_pow(*p, b as u32)?;
            for &d in &prev {
                out.push(d.checked_mul(pb).ok_or(Error::Overflow)?);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Closed-form cardinality of [`enumerate`].
pub fn count(f: &Factorization, kind: DivisorKind) -> Result<u128> {
    if f.is_one() {
        return Ok(1);
    }
    if kind == DivisorKind::UnitaryExp && !classify(f).squarefull {
        return Ok(0);
    }
    let mut acc: u128 = 1;
    for &(_, a) in f.factors() {
        let local: u128 = match kind {
            DivisorKind::All => a as u128 + 1,
            DivisorKind::Unitary => 2,
            DivisorKind::Exponential => exponents::tau(a as u64) as u128,
            DivisorKind::ExpUnitary => exponents::tau_star(a as u64) as u128,
            DivisorKind::UnitaryExp => exponents::phi(a as u64) as u128,
        };
        acc = acc.checked_mul(local).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// True iff a and b have the same prime support and, prime by prime,
/// coprime exponents.
pub fn exponentially_coprime(a: &Factorization, b: &Factorization) -> bool {
    if a.factors().len() != b.factors().len() {
        return false;
    }
    a.factors()
        .iter()
        .zip(b.factors())
        .all(|(&(p, ea), &(q, eb))| p == q && gcd(ea as u64, eb as u64) == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorint::factor;

    /// Definition-level membership oracle, independent of the mixed-radix
    /// enumeration: walks every d | n and tests the per-prime condition.
    fn enumerate_naive(n: u128, kind: DivisorKind) -> Vec<u128> {
        let nf = factor(n).unwrap();
        let mut out = Vec::new();
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let df = factor(d).unwrap();
            let member = match kind {
                DivisorKind::All => true,
                DivisorKind::Unitary => crate::factorint::gcd_u128(d, n / d) == 1,
                DivisorKind::Exponential => {
                    same_support(&df, &nf)
                        && df
                            .factors()
                            .iter()
                            .zip(nf.factors())
                            .all(|(&(_, b), &(_, a))| a % b == 0)
                }
                DivisorKind::ExpUnitary => {
                    same_support(&df, &nf)
                        && df.factors().iter().zip(nf.factors()).all(|(&(_, b), &(_, a))| {
                            a % b == 0 && num_integer::gcd(b as u64, (a / b) as u64) == 1
                        })
                }
                DivisorKind::UnitaryExp => exponentially_coprime(&df, &factor(n / d).unwrap()),
            };
            if member {
                out.push(d);
            }
        }
        if n == 1 {
            return vec![1];
        }
        out
    }

    fn same_support(d: &Factorization, n: &Factorization) -> bool {
        d.factors().len() == n.factors().len()
            && d.factors()
                .iter()
                .zip(n.factors())
                .all(|(&(p, _), &(q, _))| p == q)
    }

    #[test]
    fn paper_examples_p12() {
        let f = factor(1 << 12).unwrap();
        assert_eq!(
            enumerate(&f, DivisorKind::ExpUnitary).unwrap(),
            vec![2, 8, 16, 4096]
        );
        assert_eq!(
            enumerate(&f, DivisorKind::Exponential).unwrap(),
            vec![2, 4, 8, 16, 64, 4096]
        );
    }

    #[test]
    fn exp_unitary_of_36() {
        assert_eq!(
            enumerate(&factor(36).unwrap(), DivisorKind::ExpUnitary).unwrap(),
            vec![6, 12, 18, 36]
        );
        // brute-force oracle over d | 36
        assert_eq!(
            enumerate_naive(36, DivisorKind::ExpUnitary),
            vec![6, 12, 18, 36]
        );
    }

    #[test]
    fn conventions_at_one() {
        for kind in DivisorKind::ALL {
            assert_eq!(enumerate(&Factorization::one(), kind).unwrap(), vec![1]);
            assert_eq!(count(&Factorization::one(), kind).unwrap(), 1);
        }
    }

    #[test]
    fn unitary_exp_empty_unless_squarefull() {
        assert!(enumerate(&factor(60).unwrap(), DivisorKind::UnitaryExp)
            .unwrap()
            .is_empty());
        assert_eq!(count(&factor(60).unwrap(), DivisorKind::UnitaryExp).unwrap(), 0);
        assert_eq!(
            count(&factor(625).unwrap(), DivisorKind::UnitaryExp).unwrap(),
            2 // phi(4)
        );
        assert_eq!(
            enumerate(&factor(36).unwrap(), DivisorKind::UnitaryExp).unwrap(),
            vec![6]
        );
    }

    #[test]
    fn count_example_p12() {
        assert_eq!(
            count(&factor(1 << 12).unwrap(), DivisorKind::ExpUnitary).unwrap(),
            4 // tau_star(12) = 2^omega(12)
        );
    }

    #[test]
    fn enumeration_matches_definition_oracle() {
        for n in 1..=3000u128 {
            for kind in DivisorKind::ALL {
                let fast = enumerate(&factor(n).unwrap(), kind).unwrap();
                let slow = enumerate_naive(n, kind);
                assert_eq!(fast, slow, "n={n} kind={kind}");
            }
        }
    }

    #[test]
    fn count_matches_enumeration_to_1e5() {
        for n in 1..=100_000u128 {
            let f = factor(n).unwrap();
            for kind in DivisorKind::ALL {
                assert_eq!(
                    count(&f, kind).unwrap(),
                    enumerate(&f, kind).unwrap().len() as u128,
                    "n={n} kind={kind}"
                );
            }
        }
    }

    #[test]
    fn nesting_to_1e5() {
        for n in 1..=100_000u128 {
            let f = factor(n).unwrap();
            let all = enumerate(&f, DivisorKind::All).unwrap();
            let uni = enumerate(&f, DivisorKind::Unitary).unwrap();
            let exp = enumerate(&f, DivisorKind::Exponential).unwrap();
            let exu = enumerate(&f, DivisorKind::ExpUnitary).unwrap();
            assert!(is_subset(&exu, &exp), "n={n}");
            assert!(is_subset(&exp, &all), "n={n}");
            assert!(is_subset(&uni, &all), "n={n}");
            let c = crate::factorint::classify(&f);
            if c.squarefree {
                assert_eq!(uni, all, "n={n}");
            }
            if c.e_squarefree {
                assert_eq!(exu, exp, "n={n}");
            }
        }
    }

    fn is_subset(a: &[u128], b: &[u128]) -> bool {
        a.iter().all(|x| b.binary_search(x).is_ok())
    }

    #[test]
    fn unitary_exp_cross_check_with_exponential_coprimality() {
        for n in 1..=100_000u128 {
            let f = factor(n).unwrap();
            if !crate::factorint::classify(&f).squarefull || n == 1 {
                continue;
            }
            let set = enumerate(&f, DivisorKind::UnitaryExp).unwrap();
            for d in 1..=n {
                if n % d != 0 {
                    continue;
                }
                let in_set = set.binary_search(&d).is_ok();
                let pred =
                    exponentially_coprime(&factor(d).unwrap(), &factor(n / d).unwrap());
                assert_eq!(in_set, pred, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn exponentially_coprime_examples() {
        let a = factor(8 * 9).unwrap(); // 2^3 * 3^2
        let b = factor(4 * 3).unwrap(); // 2^2 * 3^1
        assert!(exponentially_coprime(&a, &b));
        assert!(!exponentially_coprime(&factor(4).unwrap(), &factor(16).unwrap()));
        assert!(!exponentially_coprime(&factor(2).unwrap(), &factor(3).unwrap()));
    }

    #[test]
    fn capacity_guard() {
        // 2^21 divisors of a primorial-style monster
        let f = Factorization::from_parts(
            [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73]
                .iter()
                .map(|&p| (p, 1))
                .collect(),
        )
        .unwrap();
        assert!(matches!(
            enumerate(&f, DivisorKind::All),
            Err(Error::Capacity(_))
        ));
    }
}
