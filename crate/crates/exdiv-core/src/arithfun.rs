//! The catalog of arithmetic functions induced by the divisor systems.
//!
//! Each catalog entry has a closed-form prime-power rule; the counting or
//! divisor-sum definitions live in separate brute-force evaluators so the
//! two routes can be checked against each other.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::gcd;

use crate::divisors::{self, DivisorKind};
use crate::error::{Error, Result};
use crate::exponents;
use crate::factorint::{checked_pow, unitary_gcd, Factorization};

/// Scale guard for the counting oracles.
const ORACLE_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionId {
    Tau,
    Sigma,
    Omega,
    Mu,
    Phi,
    TauStar,
    SigmaStar,
    MuStar,
    PhiStar,
    TauE,
    SigmaE,
    MuE,
    PhiE,
    TauEStar,
    SigmaEStar,
    MuEStar,
    PhiEStar,
    TE,
    ChiSquarefree,
    ChiSquarefull,
    ChiESquarefree,
    Chi4Full,
}

impl FunctionId {
    pub const ALL: [FunctionId; 22] = [
        FunctionId::Tau,
        FunctionId::Sigma,
        FunctionId::Omega,
        FunctionId::Mu,
        FunctionId::Phi,
        FunctionId::TauStar,
        FunctionId::SigmaStar,
        FunctionId::MuStar,
        FunctionId::PhiStar,
        FunctionId::TauE,
        FunctionId::SigmaE,
        FunctionId::MuE,
        FunctionId::PhiE,
        FunctionId::TauEStar,
        FunctionId::SigmaEStar,
        FunctionId::MuEStar,
        FunctionId::PhiEStar,
        FunctionId::TE,
        FunctionId::ChiSquarefree,
        FunctionId::ChiSquarefull,
        FunctionId::ChiESquarefree,
        FunctionId::Chi4Full,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctionId::Tau => "tau",
            FunctionId::Sigma => "sigma",
            FunctionId::Omega => "omega",
            FunctionId::Mu => "mu",
            FunctionId::Phi => "phi",
            FunctionId::TauStar => "tau_star",
            FunctionId::SigmaStar => "sigma_star",
            FunctionId::MuStar => "mu_star",
            FunctionId::PhiStar => "phi_star",
            FunctionId::TauE => "tau_e",
            FunctionId::SigmaE => "sigma_e",
            FunctionId::MuE => "mu_e",
            FunctionId::PhiE => "phi_e",
            FunctionId::TauEStar => "tau_e_star",
            FunctionId::SigmaEStar => "sigma_e_star",
            FunctionId::MuEStar => "mu_e_star",
            FunctionId::PhiEStar => "phi_e_star",
            FunctionId::TE => "t_e",
            FunctionId::ChiSquarefree => "chi_squarefree",
            FunctionId::ChiSquarefull => "chi_squarefull",
            FunctionId::ChiESquarefree => "chi_e_squarefree",
            FunctionId::Chi4Full => "chi_4_full",
        }
    }

    /// Sigma-family functions can overflow 128 bits when materialized;
    /// summatory runs cap them at a lower range.
    pub fn is_sigma_type(self) -> bool {
        matches!(
            self,
            FunctionId::Sigma | FunctionId::SigmaStar | FunctionId::SigmaE | FunctionId::SigmaEStar
        )
    }

    /// Functions that never take negative values.
    pub fn is_nonnegative(self) -> bool {
        !matches!(
            self,
            FunctionId::Mu | FunctionId::MuStar | FunctionId::MuE | FunctionId::MuEStar
        )
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FunctionId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown function `{s}`")))
    }
}

// ---------------------------------------------------------------------------
// Prime-power rules
// ---------------------------------------------------------------------------

fn sigma_all_pp(p: u128, a: u32) -> Result<u128> {
    let mut acc: u128 = 1;
    let mut pb: u128 = 1;
    for _ in 0..a {
        pb = pb.checked_mul(p).ok_or(Error::Overflow)?;
        acc = acc.checked_add(pb).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

fn sigma_over_exponents(p: u128, bs: &[u64]) -> Result<u128> {
    let mut acc: u128 = 0;
    for &b in bs {
        let pb = checked_pow(p, b as u32)?;
        acc = acc.checked_add(pb).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// Value at the prime power p^a (a >= 1) for multiplicative catalog entries.
fn prime_power_value(id: FunctionId, p: u128, a: u32) -> Result<i128> {
    let au = a as u64;
    let v: i128 = match id {
        FunctionId::Tau => au as i128 + 1,
        FunctionId::Sigma => to_i128(sigma_all_pp(p, a)?)?,
        FunctionId::Omega => unreachable!("omega is additive, handled by eval"),
        FunctionId::Mu => {
            if a == 1 {
                -1
            } else {
                0
            }
        }
        FunctionId::Phi => {
            let pa = checked_pow(p, a)?;
            to_i128(pa - pa / p)?
        }
        FunctionId::TauStar => 2,
        FunctionId::SigmaStar => to_i128(checked_pow(p, a)?.checked_add(1).ok_or(Error::Overflow)?)?,
        FunctionId::MuStar => -1,
        FunctionId::PhiStar => to_i128(checked_pow(p, a)? - 1)?,
        FunctionId::TauE => exponents::tau(au) as i128,
        FunctionId::SigmaE => to_i128(sigma_over_exponents(p, &exponents::divisors(au))?)?,
        FunctionId::MuE => exponents::mu(au) as i128,
        FunctionId::PhiE => exponents::phi(au) as i128,
        FunctionId::TauEStar => exponents::tau_star(au) as i128,
        FunctionId::SigmaEStar => {
            to_i128(sigma_over_exponents(p, &exponents::unitary_divisors(au))?)?
        }
        FunctionId::MuEStar => exponents::mu_star(au) as i128,
        FunctionId::PhiEStar => exponents::phi_star(au) as i128,
        FunctionId::TE => exponents::squarefree_divisor_count(au) as i128,
        FunctionId::ChiSquarefree => (a == 1) as i128,
        FunctionId::ChiSquarefull => (a >= 2) as i128,
        FunctionId::ChiESquarefree => exponents::is_squarefree(au) as i128,
        FunctionId::Chi4Full => (a >= 4) as i128,
    };
    Ok(v)
}

fn to_i128(v: u128) -> Result<i128> {
    i128::try_from(v).map_err(|_| Error::Overflow)
}

/// Evaluate over an explicit `(prime, exponent)` sequence. The sequence
/// must be canonical (ascending primes, exponents >= 1).
pub fn eval_pairs(id: FunctionId, pairs: impl IntoIterator<Item = (u128, u32)>) -> Result<i128> {
    if id == FunctionId::Omega {
        return Ok(pairs.into_iter().count() as i128);
    }
    let mut acc: i128 = 1;
    for (p, a) in pairs {
        let v = prime_power_value(id, p, a)?;
        if v == 0 {
            return Ok(0);
        }
        acc = acc.checked_mul(v).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// Evaluate the catalog function at the factored argument.
///
/// All catalog entries take the value 1 at n = 1 except omega, which
/// counts distinct primes and is 0 there.
pub fn eval(id: FunctionId, f: &Factorization) -> Result<i128> {
    eval_pairs(id, f.factors().iter().copied())
}

/// Unsigned evaluation for the sigma/tau/phi families; used where values
/// close to 2^128 must still be representable.
pub fn eval_unsigned_pairs(
    id: FunctionId,
    pairs: impl IntoIterator<Item = (u128, u32)>,
) -> Result<u128> {
    if !id.is_nonnegative() {
        return Err(Error::Invalid(format!("{id} can be negative")));
    }
    if id == FunctionId::Omega {
        return Ok(pairs.into_iter().count() as u128);
    }
    let mut acc: u128 = 1;
    for (p, a) in pairs {
        let au = a as u64;
        let v: u128 = match id {
            FunctionId::Tau => au as u128 + 1,
            FunctionId::Sigma => sigma_all_pp(p, a)?,
            FunctionId::Phi => {
                let pa = checked_pow(p, a)?;
                pa - pa / p
            }
            FunctionId::TauStar => 2,
            FunctionId::SigmaStar => checked_pow(p, a)?.checked_add(1).ok_or(Error::Overflow)?,
            FunctionId::PhiStar => checked_pow(p, a)? - 1,
            FunctionId::TauE => exponents::tau(au) as u128,
            FunctionId::SigmaE => sigma_over_exponents(p, &exponents::divisors(au))?,
            FunctionId::PhiE => exponents::phi(au) as u128,
            FunctionId::TauEStar => exponents::tau_star(au) as u128,
            FunctionId::SigmaEStar => sigma_over_exponents(p, &exponents::unitary_divisors(au))?,
            FunctionId::PhiEStar => exponents::phi_star(au) as u128,
            FunctionId::TE => exponents::squarefree_divisor_count(au) as u128,
            FunctionId::ChiSquarefree => (a == 1) as u128,
            FunctionId::ChiSquarefull => (a >= 2) as u128,
            FunctionId::ChiESquarefree => exponents::is_squarefree(au) as u128,
            FunctionId::Chi4Full => (a >= 4) as u128,
            FunctionId::Omega | FunctionId::Mu | FunctionId::MuStar | FunctionId::MuE
            | FunctionId::MuEStar => unreachable!(),
        };
        if v == 0 {
            return Ok(0);
        }
        acc = acc.checked_mul(v).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

pub fn eval_unsigned(id: FunctionId, f: &Factorization) -> Result<u128> {
    eval_unsigned_pairs(id, f.factors().iter().copied())
}

/// Exact evaluation in arbitrary precision; never overflows.
pub fn eval_big(id: FunctionId, f: &Factorization) -> BigInt {
    if id == FunctionId::Omega {
        return BigInt::from(f.omega());
    }
    let mut acc = BigInt::from(1);
    for &(p, a) in f.factors() {
        acc *= prime_power_big(id, p, a);
    }
    acc
}

pub(crate) fn prime_power_big(id: FunctionId, p: u128, a: u32) -> BigInt {
    let au = a as u64;
    let pb = BigInt::from(p);
    match id {
        FunctionId::Sigma => (0..=au).map(|b| pb.pow(b as u32)).sum(),
        FunctionId::Phi => pb.pow(a) - pb.pow(a - 1),
        FunctionId::SigmaStar => pb.pow(a) + 1,
        FunctionId::PhiStar => pb.pow(a) - 1,
        FunctionId::SigmaE => exponents::divisors(au)
            .iter()
            .map(|&b| pb.pow(b as u32))
            .sum(),
        FunctionId::SigmaEStar => exponents::unitary_divisors(au)
            .iter()
            .map(|&b| pb.pow(b as u32))
            .sum(),
        _ => BigInt::from(
            prime_power_value(id, 2, a).expect("small prime-power rule cannot overflow"),
        ),
    }
}

// ---------------------------------------------------------------------------
// Brute-force oracles
// ---------------------------------------------------------------------------

/// Evaluate a tau- or sigma-family function from its defining divisor sum,
/// through the divisor enumeration rather than the closed form.
pub fn eval_bruteforce_by_divisors(id: FunctionId, f: &Factorization) -> Result<i128> {
    let (kind, sum) = match id {
        FunctionId::Tau => (DivisorKind::All, false),
        FunctionId::Sigma => (DivisorKind::All, true),
        FunctionId::TauStar => (DivisorKind::Unitary, false),
        FunctionId::SigmaStar => (DivisorKind::Unitary, true),
        FunctionId::TauE => (DivisorKind::Exponential, false),
        FunctionId::SigmaE => (DivisorKind::Exponential, true),
        FunctionId::TauEStar => (DivisorKind::ExpUnitary, false),
        FunctionId::SigmaEStar => (DivisorKind::ExpUnitary, true),
        _ => {
            return Err(Error::Invalid(format!(
                "{id} has no divisor-sum definition"
            )))
        }
    };
    let ds = divisors::enumerate(f, kind)?;
    if sum {
        let mut acc: i128 = 0;
        for d in ds {
            acc = acc.checked_add(to_i128(d)?).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    } else {
        Ok(ds.len() as i128)
    }
}

/// Literal count of 1 <= k <= n with `(k, n)_* = 1`.
pub fn phi_star_bruteforce(n: u128) -> Result<u128> {
    if n > ORACLE_LIMIT as u128 {
        return Err(Error::Capacity(format!(
            "phi_star oracle capped at {ORACLE_LIMIT}"
        )));
    }
    if n == 0 {
        return Err(Error::Invalid("phi_star of 0".into()));
    }
    let f = Factorization::of(n)?;
    let mut count: u128 = 0;
    for k in 1..=n {
        if unitary_gcd(k, &f) == 1 {
            count += 1;
        }
    }
    Ok(count)
}

/// Literal count of exponent tuples 1 <= b_i <= a_i with `(b_i, a_i)_* = 1`.
pub fn phi_e_star_bruteforce(f: &Factorization) -> Result<u128> {
    count_exponent_tuples(f, |b, a| exponents::unitary_gcd_small(b, a) == 1)
}

/// Literal count of divisors exponentially coprime to n: exponent tuples
/// 1 <= b_i <= a_i with gcd(b_i, a_i) = 1.
pub fn phi_e_bruteforce(f: &Factorization) -> Result<u128> {
    count_exponent_tuples(f, |b, a| gcd(b, a) == 1)
}

fn count_exponent_tuples(f: &Factorization, keep: impl Fn(u64, u64) -> bool) -> Result<u128> {
    let mut space: u128 = 1;
    for &(_, a) in f.factors() {
        space = space
            .checked_mul(a as u128)
            .ok_or_else(|| Error::Capacity("tuple space too large".into()))?;
        if space > ORACLE_LIMIT as u128 {
            return Err(Error::Capacity(format!(
                "tuple oracle capped at {ORACLE_LIMIT} combinations"
            )));
        }
    }
    let mut count: u128 = 0;
    // odometer over (b_1, ..., b_r), b_i in 1..=a_i
    let exps: Vec<u64> = f.factors().iter().map(|&(_, a)| a as u64).collect();
    let mut tuple: Vec<u64> = vec![1; exps.len()];
    'outer: loop {
        if tuple.iter().zip(&exps).all(|(&b, &a)| keep(b, a)) {
            count += 1;
        }
        for i in 0..tuple.len() {
            if tuple[i] < exps[i] {
                tuple[i] += 1;
                continue 'outer;
            }
            tuple[i] = 1;
        }
        break;
    }
    Ok(count)
}
