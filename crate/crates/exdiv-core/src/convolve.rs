//! The four convolution algebras over exact rationals, plus local
//! Dirichlet-series factors at a fixed prime.
//!
//! Everything here is exact; no floating point. Tabulated functions are
//! dense on [1, limit] so identity and inverse claims can be checked by
//! brute force, which is the point of this module.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::gcd;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arithfun::{self, FunctionId};
use crate::error::{Error, Result};
use crate::factorint::Factorization;

const TABULATION_CAP: u64 = 2_000_000;
const LOCAL_SERIES_CAP: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvolutionKind {
    Dirichlet,
    Unitary,
    Exponential,
    ExpUnitary,
}

impl ConvolutionKind {
    pub fn name(self) -> &'static str {
        match self {
            ConvolutionKind::Dirichlet => "dirichlet",
            ConvolutionKind::Unitary => "unitary",
            ConvolutionKind::Exponential => "exponential",
            ConvolutionKind::ExpUnitary => "exp-unitary",
        }
    }
}

impl fmt::Display for ConvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConvolutionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dirichlet" => Ok(ConvolutionKind::Dirichlet),
            "unitary" => Ok(ConvolutionKind::Unitary),
            "exponential" => Ok(ConvolutionKind::Exponential),
            "exp-unitary" | "exp_unitary" => Ok(ConvolutionKind::ExpUnitary),
            _ => Err(Error::Parse(format!("unknown convolution `{s}`"))),
        }
    }
}

// ---------------------------------------------------------------------------
// Dense tabulation
// ---------------------------------------------------------------------------

/// An arithmetic function tabulated densely on [1, limit] with exact
/// rational values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TabulatedFunction {
    limit: u64,
    values: Vec<BigRational>, // index n, slot 0 unused
}

impl TabulatedFunction {
    pub fn from_fn(limit: u64, mut f: impl FnMut(u64) -> BigRational) -> Result<Self> {
        if limit == 0 || limit > TABULATION_CAP {
            return Err(Error::Capacity(format!(
                "tabulation limit {limit} outside [1, {TABULATION_CAP}]"
            )));
        }
        let mut values = Vec::with_capacity(limit as usize + 1);
        values.push(BigRational::zero());
        for n in 1..=limit {
            values.push(f(n));
        }
        Ok(TabulatedFunction { limit, values })
    }

    /// Tabulate a catalog function.
    pub fn from_catalog(id: FunctionId, limit: u64) -> Result<Self> {
        let spf = spf_table(limit)?;
        Self::from_fn(limit, |n| {
            let pairs = factor_with_spf(n, &spf);
            let v = arithfun::eval_pairs(id, pairs.iter().map(|&(p, a)| (p as u128, a)))
                .expect("catalog values fit in 128 bits at tabulation scale");
            BigRational::from(BigInt::from(v))
        })
    }

    /// The constant function 1.
    pub fn constant_one(limit: u64) -> Result<Self> {
        Self::from_fn(limit, |_| BigRational::one())
    }

    /// mu^2, the characteristic function of the squarefree integers and the
    /// identity of the e-unitary convolution.
    pub fn mu_squared(limit: u64) -> Result<Self> {
        Self::from_catalog(FunctionId::ChiSquarefree, limit)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn get(&self, n: u64) -> &BigRational {
        &self.values[n as usize]
    }

    fn set(&mut self, n: u64, v: BigRational) {
        self.values[n as usize] = v;
    }
}

/// Smallest-prime-factor table for 0..=limit.
pub(crate) fn spf_table(limit: u64) -> Result<Vec<u32>> {
    if limit > TABULATION_CAP {
        return Err(Error::Capacity(format!(
            "spf table limit {limit} exceeds {TABULATION_CAP}"
        )));
    }
    let n = limit as usize;
    let mut spf: Vec<u32> = (0..=n as u32).collect();
    let mut p = 2usize;
    while p * p <= n {
        if spf[p] == p as u32 {
            let mut j = p * p;
            while j <= n {
                if spf[j] == j as u32 {
                    spf[j] = p as u32;
                }
                j += p;
            }
        }
        p += 1;
    }
    Ok(spf)
}

pub(crate) fn factor_with_spf(mut n: u64, spf: &[u32]) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    while n > 1 {
        let p = spf[n as usize] as u64;
        let mut e = 0u32;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        out.push((p, e));
    }
    out
}

// ---------------------------------------------------------------------------
// Convolutions
// ---------------------------------------------------------------------------

/// Splitting pairs (b, c) with b * c = a, optionally coprime.
fn splittings(a: u32, coprime: bool) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for b in 1..=a {
        if a % b == 0 {
            let c = a / b;
            if !coprime || gcd(b, c) == 1 {
                out.push((b, c));
            }
        }
    }
    out
}

/// Convolve two tabulated functions under the chosen algebra.
pub fn convolve(
    kind: ConvolutionKind,
    f: &TabulatedFunction,
    g: &TabulatedFunction,
) -> Result<TabulatedFunction> {
    if f.limit != g.limit {
        return Err(Error::LimitMismatch(f.limit, g.limit));
    }
    let limit = f.limit;
    match kind {
        ConvolutionKind::Dirichlet | ConvolutionKind::Unitary => {
            let unitary = kind == ConvolutionKind::Unitary;
            let mut out = TabulatedFunction::from_fn(limit, |_| BigRational::zero())?;
            for d in 1..=limit {
                if f.get(d).is_zero() {
                    continue;
                }
                let mut m = d;
                while m <= limit {
                    let q = m / d;
                    if !unitary || gcd(d, q) == 1 {
                        let add = f.get(d) * g.get(q);
                        out.set(m, out.get(m) + add);
                    }
                    m += d;
                }
            }
            Ok(out)
        }
        ConvolutionKind::Exponential | ConvolutionKind::ExpUnitary => {
            let coprime = kind == ConvolutionKind::ExpUnitary;
            let spf = spf_table(limit)?;
            let mut out = TabulatedFunction::from_fn(limit, |_| BigRational::zero())?;
            let mut pair_buf: Vec<(u64, u64)> = Vec::new();
            for n in 1..=limit {
                let fact = factor_with_spf(n, &spf);
                exponent_splitting_pairs(&fact, coprime, &mut pair_buf);
                let mut acc = BigRational::zero();
                for &(d, e) in &pair_buf {
                    acc += f.get(d) * g.get(e);
                }
                out.set(n, acc);
            }
            Ok(out)
        }
    }
}

/// All (d, e) with d, e built from exponent splittings b_i * c_i = a_i
/// (optionally coprime). For n = 1 the single pair is (1, 1).
fn exponent_splitting_pairs(fact: &[(u64, u32)], coprime: bool, out: &mut Vec<(u64, u64)>) {
    out.clear();
    out.push((1, 1));
    for &(p, a) in fact {
        let ss = splittings(a, coprime);
        let prev_len = out.len();
        let prev: Vec<(u64, u64)> = out.drain(..prev_len).collect();
        for &(b, c) in &ss {
            let pb = p.pow(b);
            let pc = p.pow(c);
            for &(d, e) in &prev {
                out.push((d * pb, e * pc));
            }
        }
    }
}

/// Inverse under the e-unitary convolution: the g with f (*) g = mu^2 on
/// [1, limit].
///
/// Solving ascending in n, the only pair with second component n is
/// (rad(n), n), so each step divides by f at a squarefree point; the first
/// zero hit there is reported as the non-invertibility witness.
pub fn e_unitary_inverse(f: &TabulatedFunction) -> Result<TabulatedFunction> {
    let limit = f.limit;
    let spf = spf_table(limit)?;
    let mut g = TabulatedFunction::from_fn(limit, |_| BigRational::zero())?;
    let mut pair_buf: Vec<(u64, u64)> = Vec::new();
    for n in 1..=limit {
        let fact = factor_with_spf(n, &spf);
        let rad: u64 = fact.iter().map(|&(p, _)| p).product();
        let lead = f.get(rad);
        if lead.is_zero() {
            return Err(Error::NotInvertible { witness: rad });
        }
        let squarefree = fact.iter().all(|&(_, a)| a == 1);
        let target = if squarefree {
            BigRational::one()
        } else {
            BigRational::zero()
        };
        exponent_splitting_pairs(&fact, true, &mut pair_buf);
        let mut partial = BigRational::zero();
        for &(d, e) in &pair_buf {
            if e != n {
                partial += f.get(d) * g.get(e);
            }
        }
        g.set(n, (target - partial) / lead);
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// Local series at a fixed prime
// ---------------------------------------------------------------------------

/// Truncated local factor sum_a f(p^a) x^a with x standing for p^{-s}.
/// Coefficients at indexes 0..=truncation are exact; nothing is known
/// beyond the truncation, and operations never pretend otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalSeries {
    pub prime: u64,
    coeffs: Vec<BigRational>,
}

impl LocalSeries {
    pub fn new(prime: u64, coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty());
        LocalSeries { prime, coeffs }
    }

    pub fn truncation(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn coefficient(&self, a: u32) -> &BigRational {
        &self.coeffs[a as usize]
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Multiply by (1 - x^k): removes a zeta(ks) factor.
    fn mul_one_minus_power(&mut self, k: u32) {
        let k = k as usize;
        if k == 0 || k >= self.coeffs.len() {
            if k == 0 {
                for c in &mut self.coeffs {
                    *c = BigRational::zero();
                }
            }
            return;
        }
        for a in (k..self.coeffs.len()).rev() {
            let sub = self.coeffs[a - k].clone();
            self.coeffs[a] -= sub;
        }
    }

    /// Divide by (1 - x^k): multiplies a zeta(ks) factor back in.
    fn div_one_minus_power(&mut self, k: u32) {
        let k = k as usize;
        assert!(k >= 1);
        for a in k..self.coeffs.len() {
            let add = self.coeffs[a - k].clone();
            self.coeffs[a] += add;
        }
    }
}

/// Local factor of the catalog function at p, exact to the truncation.
pub fn local_series(id: FunctionId, p: u64, truncation: u32) -> Result<LocalSeries> {
    if truncation > LOCAL_SERIES_CAP {
        return Err(Error::Capacity(format!(
            "local series truncation {truncation} exceeds {LOCAL_SERIES_CAP}"
        )));
    }
    let mut coeffs = Vec::with_capacity(truncation as usize + 1);
    coeffs.push(BigRational::from(arithfun::eval_big(
        id,
        &Factorization::one(),
    )));
    for a in 1..=truncation {
        coeffs.push(BigRational::from(arithfun::prime_power_big(
            id, p as u128, a,
        )));
    }
    Ok(LocalSeries::new(p, coeffs))
}

/// Strip zeta factors off a local series.
///
/// Each numerator shift k multiplies by (1 - x^k), dividing out zeta(ks);
/// each denominator shift k divides by (1 - x^k), multiplying zeta(ks)
/// back in. The result is the local factor of the cofactor series.
pub fn series_divide_zeta_shape(
    s: &LocalSeries,
    numerator_shifts: &[u32],
    denominator_shifts: &[u32],
) -> LocalSeries {
    let mut out = s.clone();
    for &k in numerator_shifts {
        out.mul_one_minus_power(k);
    }
    for &k in denominator_shifts {
        out.div_one_minus_power(k);
    }
    out
}

/// Coefficient table of the auxiliary function v: its Dirichlet series has
/// local factor 1 + 2x^5 + 2x^6 + 2x^7 - x^8 - 2x^9 - 2x^10 - 2x^11 at
/// every prime, terminating at x^11.
pub const V_LOCAL_COEFFS: [i64; 12] = [1, 0, 0, 0, 0, 2, 2, 2, -1, -2, -2, -2];

pub fn v_coefficients(p: u64, truncation: u32) -> Result<LocalSeries> {
    if truncation < 11 {
        return Err(Error::Invalid(format!(
            "v local factor needs truncation >= 11, got {truncation}"
        )));
    }
    let mut coeffs: Vec<BigRational> = V_LOCAL_COEFFS
        .iter()
        .map(|&c| BigRational::from(BigInt::from(c)))
        .collect();
    coeffs.resize(truncation as usize + 1, BigRational::zero());
    Ok(LocalSeries::new(p, coeffs))
}

/// v as a multiplicative function of an exponent pattern.
pub(crate) fn v_of_factors(fact: &[(u128, u32)]) -> i64 {
    let mut acc = 1i64;
    for &(_, c) in fact {
        if c >= 12 {
            return 0;
        }
        acc *= V_LOCAL_COEFFS[c as usize];
        if acc == 0 {
            return 0;
        }
    }
    acc
}

/// Check l4(n) * 2^omega(n) = sum over d^4 e = n of tau(d) v(e).
pub fn verify_l4_identity(n: u128) -> Result<bool> {
    let f = Factorization::of(n)?;
    let c = crate::factorint::classify(&f);
    let lhs: i64 = if f.is_one() || c.four_full {
        1i64 << f.omega()
    } else {
        0
    };
    // right side: d ranges over all d with d^4 | n, via exponent odometer
    let exps: Vec<u32> = f.factors().iter().map(|&(_, a)| a).collect();
    let caps: Vec<u32> = exps.iter().map(|&a| a / 4).collect();
    let mut tuple: Vec<u32> = vec![0; exps.len()];
    let mut rhs: i64 = 0;
    'outer: loop {
        let mut tau_d: i64 = 1;
        for &t in &tuple {
            tau_d *= t as i64 + 1;
        }
        let e_fact: Vec<(u128, u32)> = f
            .factors()
            .iter()
            .zip(&tuple)
            .filter_map(|(&(p, a), &t)| {
                let rem = a - 4 * t;
                if rem > 0 {
                    Some((p, rem))
                } else {
                    None
                }
            })
            .collect();
        rhs += tau_d * v_of_factors(&e_fact);
        for i in 0..tuple.len() {
            if tuple[i] < caps[i] {
                tuple[i] += 1;
                continue 'outer;
            }
            tuple[i] = 0;
        }
        break;
    }
    Ok(lhs == rhs)
}
