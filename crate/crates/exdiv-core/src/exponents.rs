//! Arithmetic functions on small integers, used at the exponent level.
//!
//! Every divisor-system function of the crate reduces at a prime power
//! p^a to a classical function of the exponent a; these are those
//! classical functions, on u64 arguments small enough for trial division.

use num_integer::gcd;

fn factor_small(mut a: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= a {
        if a % p == 0 {
            let mut e = 0;
            while a % p == 0 {
                a /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if a > 1 {
        out.push((a, 1));
    }
    out
}

/// Number of distinct prime divisors; omega(1) = 0.
pub fn omega(a: u64) -> u32 {
    factor_small(a).len() as u32
}

/// Number of divisors.
pub fn tau(a: u64) -> u64 {
    factor_small(a).iter().map(|&(_, e)| e as u64 + 1).product()
}

/// Number of unitary divisors, 2^omega.
pub fn tau_star(a: u64) -> u64 {
    1u64 << omega(a)
}

/// Moebius function.
pub fn mu(a: u64) -> i64 {
    let f = factor_small(a);
    if f.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Unitary Moebius analogue, (-1)^omega.
pub fn mu_star(a: u64) -> i64 {
    if omega(a) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler's totient.
pub fn phi(a: u64) -> u64 {
    let mut r = a;
    for (p, _) in factor_small(a) {
        r = r / p * (p - 1);
    }
    r
}

/// Unitary totient, prod(p^e - 1) over the prime powers of a; phi_star(1) = 1.
pub fn phi_star(a: u64) -> u64 {
    factor_small(a)
        .iter()
        .map(|&(p, e)| p.pow(e) - 1)
        .product()
}

pub fn is_squarefree(a: u64) -> bool {
    a == 0 || factor_small(a).iter().all(|&(_, e)| e == 1)
}

/// Divisors of a, ascending.
pub fn divisors(a: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor_small(a) {
        let prev = out.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            out.extend(prev.iter().map(|d| d * pe));
        }
    }
    out.sort_unstable();
    out
}

/// Unitary divisors of a (d | a with gcd(d, a/d) = 1), ascending.
pub fn unitary_divisors(a: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor_small(a) {
        let pe = p.pow(e);
        let prev = out.clone();
        out.extend(prev.iter().map(|d| d * pe));
    }
    out.sort_unstable();
    out
}

/// Count of squarefree divisors of a, by literal enumeration. This equals
/// tau_star(a) but is computed along an independent route on purpose.
pub fn squarefree_divisor_count(a: u64) -> u64 {
    divisors(a).into_iter().filter(|&d| is_squarefree(d)).count() as u64
}

/// Exponents b with 1 <= b < a and gcd(b, a) = 1; empty for a = 1.
pub fn coprime_exponents_below(a: u64) -> Vec<u64> {
    (1..a).filter(|&b| gcd(b, a) == 1).collect()
}

/// Unitary gcd on small integers: max d | k with d a unitary divisor of a.
pub fn unitary_gcd_small(k: u64, a: u64) -> u64 {
    factor_small(a)
        .iter()
        .map(|&(p, e)| p.pow(e))
        .filter(|&pe| k % pe == 0)
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_match_definitions() {
        for a in 1..=500u64 {
            let ds = divisors(a);
            assert_eq!(ds.len() as u64, tau(a));
            assert!(ds.iter().all(|&d| a % d == 0));
            let uds = unitary_divisors(a);
            assert_eq!(uds.len() as u64, tau_star(a));
            assert!(uds.iter().all(|&d| a % d == 0 && gcd(d, a / d) == 1));
            assert_eq!(
                phi(a),
                (1..=a).filter(|&k| gcd(k, a) == 1).count() as u64
            );
            assert_eq!(
                phi_star(a),
                (1..=a).filter(|&k| unitary_gcd_small(k, a) == 1).count() as u64,
                "phi_star({a})"
            );
            assert_eq!(squarefree_divisor_count(a), tau_star(a));
        }
    }

    #[test]
    fn phi_star_prime_powers() {
        assert_eq!(phi_star(4), 3);
        assert_eq!(phi_star(8), 7);
        assert_eq!(phi_star(6), 2); // phi_star(2) * phi_star(3)
        assert_eq!(phi_star(1), 1);
    }

    #[test]
    fn coprime_exponent_sets() {
        assert!(coprime_exponents_below(1).is_empty());
        assert_eq!(coprime_exponents_below(2), vec![1]);
        assert_eq!(coprime_exponents_below(4), vec![1, 3]);
        for a in 2..200u64 {
            assert_eq!(coprime_exponents_below(a).len() as u64, phi(a));
        }
    }
}
