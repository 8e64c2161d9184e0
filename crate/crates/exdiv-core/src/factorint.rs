//! Canonical factorization, primality, classification predicates and the
//! unitary gcd.
//!
//! Factoring is deterministic: trial division by a sieved prime table up
//! to 10^6, then Brent's cycle-finding rho with a fixed parameter schedule
//! for whatever survives, with a strong-probable-prime test (proven base
//! set below 2^64, Baillie-PSW above) deciding when a cofactor is prime.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Trial-division bound for the shared small-prime table.
const SMALL_PRIME_LIMIT: u64 = 1_000_000;

/// Memory guard for [`primes_up_to`].
const SIEVE_LIMIT: u64 = 1_000_000_000;

fn small_primes() -> &'static [u32] {
    static TABLE: OnceLock<Vec<u32>> = OnceLock::new();
    TABLE.get_or_init(|| {
        sieve_u32(SMALL_PRIME_LIMIT as u32)
    })
}

fn sieve_u32(limit: u32) -> Vec<u32> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    let mut i = 2usize;
    while i <= n {
        if !composite[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
        i += 1;
        if i * i > n {
            break;
        }
    }
    for k in i..=n {
        if !composite[k] {
            primes.push(k as u32);
        }
    }
    primes
}

/// All primes `<= limit`, ascending.
///
/// `limit` must be at least 2 and at most 10^9 (memory guard).
pub fn primes_up_to(limit: u64) -> Result<Vec<u64>> {
    if limit < 2 {
        return Err(Error::Invalid(format!("prime sieve limit {limit} < 2")));
    }
    if limit > SIEVE_LIMIT {
        return Err(Error::Capacity(format!(
            "prime sieve limit {limit} exceeds {SIEVE_LIMIT}"
        )));
    }
    // Odd-only bitmap; 2 handled separately.
    let n = limit as usize;
    let half = n / 2; // index i represents 2i+1
    let mut composite = vec![false; half + 1];
    let mut p = 3usize;
    while p * p <= n {
        if !composite[p / 2] {
            let mut j = p * p;
            while j <= n {
                composite[j / 2] = true;
                j += 2 * p;
            }
        }
        p += 2;
    }
    let mut primes = Vec::with_capacity(estimate_pi(limit));
    primes.push(2);
    let mut i = 1;
    while 2 * i + 1 <= n {
        if !composite[i] {
            primes.push((2 * i + 1) as u64);
        }
        i += 1;
    }
    Ok(primes)
}

fn estimate_pi(x: u64) -> usize {
    if x < 17 {
        return 8;
    }
    let xf = x as f64;
    (xf / xf.ln() * 1.15) as usize + 8
}

// ---------------------------------------------------------------------------
// Modular arithmetic on u128
// ---------------------------------------------------------------------------

pub(crate) fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    debug_assert!(m > 0);
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    // Shift-and-add; intermediate stays below 2m <= 2^129 via the halving.
    let mut a = a % m;
    let mut b = b % m;
    let mut acc: u128 = 0;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    // a, b < m <= 2^128 - 1; wrapping detects carry.
    let (s, carry) = a.overflowing_add(b);
    if carry || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

pub(crate) fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc: u128 = 1;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

/// Strong-probable-prime test to the given base.
fn sprp(n: u128, base: u128) -> bool {
    let base = base % n;
    if base == 0 {
        return true;
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let q = d >> s;
    let mut x = pow_mod(base, q, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice.
fn strong_lucas(n: u128) -> bool {
    // Find D in 5, -7, 9, -11, ... with Jacobi(D/n) = -1.
    let mut d_abs: u128 = 5;
    let mut d_neg = false;
    loop {
        let j = jacobi_signed(d_abs, d_neg, n);
        if j == 0 {
            // gcd(D, n) > 1; composite unless n is that small prime.
            return n == d_abs;
        }
        if j == -1 {
            break;
        }
        d_abs += 2;
        d_neg = !d_neg;
        if d_abs > 1000 {
            // Theoretically unreachable for non-squares; perfect squares
            // never reach here because sprp(2) already rejected them in
            // practice, but guard by a direct square check.
            if is_square(n) {
                return false;
            }
        }
    }
    // P = 1, Q = (1 - D)/4 computed mod n.
    let q_mod: u128 = if d_neg {
        // D = -d_abs; 1 - D = 1 + d_abs
        ((1 + d_abs) / 4) % n
    } else {
        // D = d_abs; (1 - D)/4 = -(d_abs - 1)/4
        n - ((d_abs - 1) / 4) % n
    };
    let d_mod: u128 = if d_neg { n - (d_abs % n) } else { d_abs % n };

    // n + 1 = 2^s * t
    let np1 = n + 1;
    let s = np1.trailing_zeros();
    let t = np1 >> s;

    // Lucas sequences U_k, V_k with binary ladder over bits of t.
    let mut u: u128 = 1;
    let mut v: u128 = 1;
    let mut qk = q_mod; // Q^k for current k
    let bits = 128 - t.leading_zeros();
    for i in (0..bits - 1).rev() {
        // double: U_{2k} = U_k V_k, V_{2k} = V_k^2 - 2 Q^k
        u = mul_mod(u, v, n);
        v = sub_mod(mul_mod(v, v, n), add_mod(qk, qk, n), n);
        qk = mul_mod(qk, qk, n);
        if (t >> i) & 1 == 1 {
            // increment: U' = (P U + V)/2, V' = (D U + P V)/2 with P = 1
            let u2 = half_mod(add_mod(u, v, n), n);
            let v2 = half_mod(add_mod(mul_mod(d_mod, u, n), v, n), n);
            u = u2;
            v = v2;
            qk = mul_mod(qk, q_mod, n);
        }
    }
    if u == 0 || v == 0 {
        return true;
    }
    for _ in 1..s {
        v = sub_mod(mul_mod(v, v, n), add_mod(qk, qk, n), n);
        if v == 0 {
            return true;
        }
        qk = mul_mod(qk, qk, n);
    }
    false
}

fn sub_mod(a: u128, b: u128, m: u128) -> u128 {
    if a >= b {
        a - b
    } else {
        m - (b - a)
    }
}

fn half_mod(a: u128, m: u128) -> u128 {
    // m odd here
    if a & 1 == 0 {
        a >> 1
    } else {
        (a >> 1) + (m >> 1) + 1
    }
}

fn jacobi_signed(a_abs: u128, a_neg: bool, n: u128) -> i32 {
    // Jacobi(a/n) for odd n, a possibly negative.
    let mut a = a_abs % n;
    let mut sign = 1i32;
    if a_neg {
        // (-1/n) = (-1)^((n-1)/2)
        if n % 4 == 3 {
            sign = -sign;
        }
    }
    let mut m = n;
    while a != 0 {
        while a & 1 == 0 {
            a >>= 1;
            let r = m % 8;
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            sign = -sign;
        }
        a %= m;
    }
    if m == 1 {
        sign
    } else {
        0
    }
}

fn is_square(n: u128) -> bool {
    let r = integer_sqrt(n);
    r * r == n
}

pub(crate) fn integer_sqrt(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as u128;
    // float seed can be off by a couple
    while x > 0 && x * x > n {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).map_or(false, |s| s <= n) {
        x += 1;
    }
    x
}

/// Deterministic primality for the crate's 128-bit domain.
///
/// Below 2^64 this is Miller-Rabin with the proven 12-base set; above it
/// falls back to Baillie-PSW (base-2 strong probable prime plus strong
/// Lucas), which has no known counterexample.
pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    if n <= u64::MAX as u128 {
        // Proven deterministic base set for n < 3.3 * 10^24.
        for &b in &[2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            if !sprp(n, b) {
                return false;
            }
        }
        true
    } else {
        sprp(n, 2) && strong_lucas(n)
    }
}

// ---------------------------------------------------------------------------
// Pollard rho (Brent) with a fixed parameter schedule
// ---------------------------------------------------------------------------

fn rho_brent(n: u128, c: u128) -> Option<u128> {
    let mut y: u128 = 2;
    let mut r: u64 = 1;
    let mut q: u128 = 1;
    let m: u64 = 128;
    let mut g: u128 = 1;
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = add_mod(mul_mod(y, y, n), c, n);
        }
        let mut k: u64 = 0;
        while k < r && g == 1 {
            ys = y;
            let lim = m.min(r - k);
            for _ in 0..lim {
                y = add_mod(mul_mod(y, y, n), c, n);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd_u128(q, n);
            k += m;
        }
        r *= 2;
        if r > 1 << 28 {
            return None;
        }
    }
    if g == n {
        // backtrack one step at a time
        loop {
            ys = add_mod(mul_mod(ys, ys, n), c, n);
            g = gcd_u128(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    if g > 1 && g < n {
        Some(g)
    } else {
        None
    }
}

fn factor_large(n: u128, out: &mut Vec<u128>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    if is_square(n) {
        let r = integer_sqrt(n);
        factor_large(r, out);
        factor_large(r, out);
        return;
    }
    let mut c: u128 = 1;
    loop {
        if let Some(d) = rho_brent(n, c) {
            factor_large(d, out);
            factor_large(n / d, out);
            return;
        }
        c += 1;
    }
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

/// Canonical prime-power decomposition.
///
/// The empty list is n = 1. Entries are `(prime, exponent)` with primes
/// strictly increasing and exponents >= 1. A factorization may be built
/// from parts whose product exceeds 2^128; [`Factorization::value`] then
/// reports overflow instead of materializing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    factors: Vec<(u128, u32)>,
}

impl Factorization {
    /// Factorization of 1.
    pub fn one() -> Self {
        Factorization { factors: Vec::new() }
    }

    /// Factor the given integer. `n` must be >= 1.
    pub fn of(n: u128) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("cannot factor 0".into()));
        }
        if n == 1 {
            return Ok(Self::one());
        }
        let mut rem = n;
        let mut factors: Vec<(u128, u32)> = Vec::new();
        for &p in small_primes() {
            let p = p as u128;
            if p * p > rem {
                break;
            }
            if rem % p == 0 {
                let mut e = 0u32;
                while rem % p == 0 {
                    rem /= p;
                    e += 1;
                }
                factors.push((p, e));
            }
        }
        if rem > 1 {
            if rem <= (SMALL_PRIME_LIMIT as u128) * (SMALL_PRIME_LIMIT as u128) && is_prime(rem) {
                factors.push((rem, 1));
            } else if is_prime(rem) {
                factors.push((rem, 1));
            } else {
                let mut big = Vec::new();
                factor_large(rem, &mut big);
                big.sort_unstable();
                let mut i = 0;
                while i < big.len() {
                    let p = big[i];
                    let mut e = 0u32;
                    while i < big.len() && big[i] == p {
                        e += 1;
                        i += 1;
                    }
                    factors.push((p, e));
                }
            }
        }
        factors.sort_unstable_by_key(|&(p, _)| p);
        Ok(Factorization { factors })
    }

    /// Build from explicit `(prime, exponent)` parts, validating primality,
    /// strict ordering and positive exponents. The product need not fit in
    /// 128 bits.
    pub fn from_parts(parts: Vec<(u128, u32)>) -> Result<Self> {
        let mut last: u128 = 0;
        for &(p, e) in &parts {
            if p <= last {
                return Err(Error::Invalid(format!(
                    "primes must be strictly increasing; saw {p} after {last}"
                )));
            }
            if e == 0 {
                return Err(Error::Invalid(format!("exponent 0 for prime {p}")));
            }
            if !is_prime(p) {
                return Err(Error::Invalid(format!("{p} is not prime")));
            }
            last = p;
        }
        Ok(Factorization { factors: parts })
    }

    /// Internal constructor for sieve-produced, already-canonical data.
    pub(crate) fn from_sorted_unchecked(parts: Vec<(u128, u32)>) -> Self {
        Factorization { factors: parts }
    }

    pub fn factors(&self) -> &[(u128, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of distinct prime factors.
    pub fn omega(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Reconstruct the integer; overflow past 2^128 - 1 is an error.
    pub fn value(&self) -> Result<u128> {
        let mut acc: u128 = 1;
        for &(p, e) in &self.factors {
            let pe = checked_pow(p, e)?;
            acc = acc.checked_mul(pe).ok_or(Error::Overflow)?;
        }
        Ok(acc)
    }

    /// Natural log of the value, exact enough for ratio work even when the
    /// value itself does not fit in 128 bits.
    pub fn log_value(&self) -> f64 {
        self.factors
            .iter()
            .map(|&(p, e)| e as f64 * (p as f64).ln())
            .sum()
    }

    pub fn exponent_of(&self, p: u128) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Merge two factorizations multiplicatively (exponents add).
    pub fn mul(&self, other: &Factorization) -> Result<Factorization> {
        let mut out: Vec<(u128, u32)> = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            let take_left = match (self.factors.get(i), other.factors.get(j)) {
                (Some(&(p, _)), Some(&(q, _))) => {
                    if p == q {
                        let e = self.factors[i]
                            .1
                            .checked_add(other.factors[j].1)
                            .ok_or(Error::Overflow)?;
                        out.push((p, e));
                        i += 1;
                        j += 1;
                        continue;
                    }
                    p < q
                }
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (None, None) => break,
            };
            if take_left {
                out.push(self.factors[i]);
                i += 1;
            } else {
                out.push(other.factors[j]);
                j += 1;
            }
        }
        Ok(Factorization { factors: out })
    }

    /// Raise to the k-th power (exponents scale).
    pub fn pow(&self, k: u32) -> Result<Factorization> {
        if k == 0 {
            return Ok(Self::one());
        }
        let factors = self
            .factors
            .iter()
            .map(|&(p, e)| e.checked_mul(k).map(|ek| (p, ek)).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Factorization { factors })
    }
}

pub(crate) fn checked_pow(base: u128, exp: u32) -> Result<u128> {
    let mut acc: u128 = 1;
    let mut b = base;
    let mut e = exp;
    loop {
        if e & 1 == 1 {
            acc = acc.checked_mul(b).ok_or(Error::Overflow)?;
        }
        e >>= 1;
        if e == 0 {
            return Ok(acc);
        }
        b = b.checked_mul(b).ok_or(Error::Overflow)?;
    }
}

/// Factor `n >= 1` into its canonical decomposition.
pub fn factor(n: u128) -> Result<Factorization> {
    Factorization::of(n)
}

impl fmt::Display for Factorization {
    /// Text form `2^4*3^2*11^2`; exponent 1 prints as the bare prime; 1
    /// prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(p, e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Factorization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::one());
        }
        let mut parts = Vec::new();
        for piece in s.split('*') {
            let piece = piece.trim();
            let (p_str, e_str) = match piece.split_once('^') {
                Some((p, e)) => (p, e),
                None => (piece, "1"),
            };
            let p: u128 = p_str
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime `{p_str}`")))?;
            let e: u32 = e_str
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{e_str}`")))?;
            parts.push((p, e));
        }
        Self::from_parts(parts).map_err(|e| Error::Parse(e.to_string()))
    }
}

// ---------------------------------------------------------------------------
// Classification and splits
// ---------------------------------------------------------------------------

/// The four structural predicates used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    /// Every exponent equals 1.
    pub squarefree: bool,
    /// Every exponent is at least 2 (vacuously true for n = 1).
    pub squarefull: bool,
    /// Every exponent is itself a squarefree integer.
    pub e_squarefree: bool,
    /// Every exponent is at least 4.
    pub four_full: bool,
}

pub fn classify(f: &Factorization) -> Classification {
    let mut c = Classification {
        squarefree: true,
        squarefull: true,
        e_squarefree: true,
        four_full: true,
    };
    for &(_, e) in f.factors() {
        c.squarefree &= e == 1;
        c.squarefull &= e >= 2;
        c.e_squarefree &= crate::exponents::is_squarefree(e as u64);
        c.four_full &= e >= 4;
    }
    c
}

/// Split into the powerful part (exponents >= 2) and the squarefree
/// complement (exponents = 1). The parts are coprime and multiply back to n.
pub fn powerful_split(f: &Factorization) -> (Factorization, Factorization) {
    let mut s = Vec::new();
    let mut m = Vec::new();
    for &(p, e) in f.factors() {
        if e >= 2 {
            s.push((p, e));
        } else {
            m.push((p, e));
        }
    }
    (
        Factorization::from_sorted_unchecked(s),
        Factorization::from_sorted_unchecked(m),
    )
}

/// `(k, n)_*`: the largest divisor of `k` that is a unitary divisor of `n`.
///
/// Unitary divisors of n are exactly the products of full prime powers
/// p^a over subsets of the support, so the maximum is the product of those
/// prime powers that divide k.
pub fn unitary_gcd(k: u128, n: &Factorization) -> u128 {
    debug_assert!(k >= 1);
    let mut acc: u128 = 1;
    for &(p, e) in n.factors() {
        if let Ok(pe) = checked_pow(p, e) {
            if pe <= k && k % pe == 0 {
                acc *= pe; // product of coprime divisors of k cannot overflow
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent trial-division factorizer used as the oracle.
    fn factor_naive(mut n: u128) -> Vec<(u128, u32)> {
        let mut out = Vec::new();
        let mut p: u128 = 2;
        while p * p <= n {
            if n % p == 0 {
                let mut e = 0;
                while n % p == 0 {
                    n /= p;
                    e += 1;
                }
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    fn is_prime_naive(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2u64;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn factor_of_one_is_empty() {
        assert!(factor(1).unwrap().is_one());
        assert_eq!(factor(1).unwrap().value().unwrap(), 1);
    }

    #[test]
    fn factor_360() {
        let f = factor(360).unwrap();
        assert_eq!(f.factors(), &[(2, 3), (3, 2), (5, 1)]);
    }

    #[test]
    fn factor_24_digit_unitary_perfect() {
        let n: u128 = 146361946186458562560000;
        let f = factor(n).unwrap();
        assert_eq!(
            f.factors(),
            &[
                (2, 18),
                (3, 1),
                (5, 4),
                (7, 1),
                (11, 1),
                (13, 1),
                (19, 1),
                (37, 1),
                (79, 1),
                (109, 1),
                (157, 1),
                (313, 1)
            ]
        );
        assert_eq!(f.value().unwrap(), n);
        assert_eq!(n.to_string().len(), 24);
    }

    #[test]
    fn factor_reconstructs_up_to_1e6() {
        for n in 1..=1_000_000u128 {
            let f = factor(n).unwrap();
            assert_eq!(f.value().unwrap(), n, "n = {n}");
        }
    }

    #[test]
    fn factor_matches_trial_division_oracle() {
        for n in 2..=20_000u128 {
            assert_eq!(factor(n).unwrap().factors(), factor_naive(n).as_slice());
        }
    }

    #[test]
    fn factor_idempotent_under_reconstruction() {
        for n in [1u128, 2, 36, 360, 705600, 87360, 1 << 40] {
            let f = factor(n).unwrap();
            let g = factor(f.value().unwrap()).unwrap();
            assert_eq!(f, g);
        }
    }

    #[test]
    fn primes_up_to_basics() {
        assert_eq!(primes_up_to(10).unwrap(), vec![2, 3, 5, 7]);
        assert_eq!(primes_up_to(2).unwrap(), vec![2]);
        let p100 = primes_up_to(100).unwrap();
        assert_eq!(p100.len(), 25);
        assert_eq!(*p100.last().unwrap(), 97);
        // trial-division oracle
        let oracle: Vec<u64> = (2..=100).filter(|&n| is_prime_naive(n)).collect();
        assert_eq!(p100, oracle);
    }

    #[test]
    fn primes_up_to_guards() {
        assert!(matches!(primes_up_to(1), Err(Error::Invalid(_))));
        assert!(matches!(
            primes_up_to(SIEVE_LIMIT + 1),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn primes_up_to_against_sieved_table() {
        let ours = primes_up_to(1_000_000).unwrap();
        let table = small_primes();
        assert_eq!(ours.len(), table.len());
        assert!(ours.iter().zip(table.iter()).all(|(&a, &b)| a == b as u64));
    }

    #[test]
    fn is_prime_matches_naive_to_50000() {
        for n in 0..50_000u64 {
            assert_eq!(is_prime(n as u128), is_prime_naive(n), "n = {n}");
        }
    }

    #[test]
    fn is_prime_known_hard_cases() {
        // Mersenne primes
        assert!(is_prime((1u128 << 61) - 1));
        assert!(is_prime((1u128 << 89) - 1));
        assert!(is_prime((1u128 << 107) - 1));
        // 2^67 - 1 = 193707721 * 761838257287
        assert!(!is_prime((1u128 << 67) - 1));
        // Strong pseudoprime to many small bases
        assert!(!is_prime(3825123056546413051u128));
        // Carmichael numbers
        assert!(!is_prime(561));
        assert!(!is_prime(41041));
        assert!(!is_prime(825265));
        // Large squares
        let p = (1u128 << 61) - 1;
        assert!(!is_prime(p * p));
    }

    #[test]
    fn factor_large_semiprimes() {
        let p: u128 = 1_000_000_007;
        let q: u128 = 1_000_000_009;
        let f = factor(p * q).unwrap();
        assert_eq!(f.factors(), &[(p, 1), (q, 1)]);
        let m = (1u128 << 67) - 1;
        let f = factor(m).unwrap();
        assert_eq!(f.factors(), &[(193707721, 1), (761838257287, 1)]);
        assert_eq!(f.value().unwrap(), m);
    }

    #[test]
    fn classify_examples() {
        let c36 = classify(&factor(36).unwrap());
        assert!(!c36.squarefree && c36.squarefull && c36.e_squarefree && !c36.four_full);
        let c = classify(&factor(17424).unwrap());
        assert!(!c.e_squarefree); // exponent 4 = 2^2
        let c1 = classify(&Factorization::one());
        assert!(c1.squarefree && c1.squarefull && c1.e_squarefree && c1.four_full);
    }

    #[test]
    fn powerful_split_examples() {
        let (s, m) = powerful_split(&factor(360).unwrap());
        assert_eq!(s.value().unwrap(), 72);
        assert_eq!(m.value().unwrap(), 5);
        let (s, m) = powerful_split(&factor(30030).unwrap());
        assert_eq!(s.value().unwrap(), 1);
        assert_eq!(m.value().unwrap(), 30030);
        let (s, m) = powerful_split(&factor(36 * 35).unwrap());
        assert_eq!(s.value().unwrap(), 36);
        assert_eq!(m.value().unwrap(), 35);
    }

    #[test]
    fn powerful_split_exhaustive_small() {
        for n in 1..=100_000u128 {
            let f = factor(n).unwrap();
            let (s, m) = powerful_split(&f);
            let cs = classify(&s);
            let cm = classify(&m);
            assert!(cs.squarefull);
            assert!(cm.squarefree);
            let sv = s.value().unwrap();
            let mv = m.value().unwrap();
            assert_eq!(sv * mv, n);
            assert_eq!(gcd_u128(sv, mv), 1);
        }
    }

    /// Enumeration oracle: largest d | k with d a unitary divisor of n.
    fn unitary_gcd_naive(k: u128, n: u128) -> u128 {
        let mut best = 1;
        for d in 1..=n {
            if n % d == 0 && gcd_u128(d, n / d) == 1 && k % d == 0 && d > best {
                best = d;
            }
        }
        best
    }

    #[test]
    fn unitary_gcd_examples() {
        assert_eq!(unitary_gcd(2, &factor(4).unwrap()), 1);
        assert_eq!(unitary_gcd(12, &factor(4).unwrap()), 4);
        for n in [1u128, 7, 36, 360] {
            assert_eq!(unitary_gcd(1, &factor(n).unwrap()), 1);
        }
    }

    #[test]
    fn unitary_gcd_matches_oracle_to_300() {
        for n in 1..=300u128 {
            let f = factor(n).unwrap();
            for k in 1..=300u128 {
                let got = unitary_gcd(k, &f);
                let want = unitary_gcd_naive(k, n);
                assert_eq!(got, want, "k={k} n={n}");
                assert_eq!(k % got, 0);
                assert_eq!(n % got, 0);
                assert_eq!(gcd_u128(got, n / got), 1);
            }
        }
    }

    #[test]
    fn from_parts_validation() {
        assert!(Factorization::from_parts(vec![(4, 1)]).is_err());
        assert!(Factorization::from_parts(vec![(3, 1), (2, 1)]).is_err());
        assert!(Factorization::from_parts(vec![(2, 0)]).is_err());
        let f = Factorization::from_parts(vec![(2, 200)]).unwrap();
        assert_eq!(f.value(), Err(Error::Overflow));
    }

    #[test]
    fn display_and_parse_round_trip() {
        for n in [1u128, 2, 36, 360, 17424, 146361946186458562560000] {
            let f = factor(n).unwrap();
            let s = f.to_string();
            let g: Factorization = s.parse().unwrap();
            assert_eq!(f, g, "{s}");
        }
        assert_eq!(factor(17424).unwrap().to_string(), "2^4*3^2*11^2");
        assert_eq!(factor(6).unwrap().to_string(), "2*3");
        assert_eq!(Factorization::one().to_string(), "1");
    }

    proptest! {
        #[test]
        fn prop_factor_reconstructs(n in 1u64..u64::MAX) {
            let f = factor(n as u128).unwrap();
            prop_assert_eq!(f.value().unwrap(), n as u128);
            for &(p, _) in f.factors() {
                prop_assert!(is_prime(p));
            }
            for w in f.factors().windows(2) {
                prop_assert!(w[0].0 < w[1].0);
            }
        }

        #[test]
        fn prop_powerful_split(n in 1u64..1_000_000_000_000u64) {
            let f = factor(n as u128).unwrap();
            let (s, m) = powerful_split(&f);
            prop_assert_eq!(s.value().unwrap() * m.value().unwrap(), n as u128);
            prop_assert!(classify(&s).squarefull);
            prop_assert!(classify(&m).squarefree);
        }
    }
}
