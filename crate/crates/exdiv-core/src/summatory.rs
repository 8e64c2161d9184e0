//! Segmented factorization sieve, exact summatory functions at geometric
//! checkpoints, and residual analysis against the main-term models.
//!
//! The sieve hands every n in range to a visitor together with its full
//! factorization. Parallel runs split the range into fixed chunks pulled
//! by workers; partial accumulators are exact and merged in chunk order,
//! so reports are byte-identical for any worker count.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::gcd;
use num_rational::BigRational;

use crate::arithfun::{self, FunctionId};
use crate::constants::{self, ConstantId};
use crate::error::{Error, Result};
use crate::factorint::primes_up_to;

/// Hard range guard for the sieve.
const SIEVE_MAX: u64 = 1_000_000_000;
/// Value-magnitude guard for sigma-type summatory runs.
const SIGMA_MAX: u64 = 100_000_000;
/// Quotient runs accumulate exact rationals; capped lower.
const QUOTIENT_MAX: u64 = 100_000_000;

const SEGMENT: u64 = 1 << 16;
const CHUNK: u64 = 1 << 22;
const MAX_SIEVED_FACTORS: usize = 12;

/// Constants backing the main terms are computed at this truncation; the
/// prime tail is then ~1e-8 relative, well below every residual of
/// interest at sieve scale.
const MAIN_TERM_PRIMES: u64 = 10_000_000;
const MAIN_TERM_SERIES: u32 = 512;

// ---------------------------------------------------------------------------
// Segmented sieve
// ---------------------------------------------------------------------------

struct SegmentBuf {
    rem: Vec<u64>,
    counts: Vec<u8>,
    slots: Vec<[(u32, u8); MAX_SIEVED_FACTORS]>,
}

impl SegmentBuf {
    fn new() -> Self {
        SegmentBuf {
            rem: vec![0; SEGMENT as usize],
            counts: vec![0; SEGMENT as usize],
            slots: vec![[(0, 0); MAX_SIEVED_FACTORS]; SEGMENT as usize],
        }
    }
}

/// Visit every n in [seg_lo, seg_hi] (n >= 2) with its factorization,
/// ascending. Factor slices are canonical: primes ascending, exponents >= 1.
fn visit_segment(
    seg_lo: u64,
    seg_hi: u64,
    base: &[u32],
    buf: &mut SegmentBuf,
    visitor: &mut impl FnMut(u64, &[(u64, u32)]) -> Result<()>,
) -> Result<()> {
    let len = (seg_hi - seg_lo + 1) as usize;
    for i in 0..len {
        buf.rem[i] = seg_lo + i as u64;
        buf.counts[i] = 0;
    }
    // powers of two come from trailing_zeros at visit time; skip p = 2 here
    for &p in base.iter().skip(1) {
        let p = p as u64;
        if p * p > seg_hi {
            break;
        }
        let start = seg_lo.div_ceil(p) * p;
        let mut m = start;
        while m <= seg_hi {
            let idx = (m - seg_lo) as usize;
            let mut e = 0u8;
            let mut r = buf.rem[idx];
            while r % p == 0 {
                r /= p;
                e += 1;
            }
            buf.rem[idx] = r;
            let c = buf.counts[idx] as usize;
            buf.slots[idx][c] = (p as u32, e);
            buf.counts[idx] = c as u8 + 1;
            m += p;
        }
    }
    let mut scratch: [(u64, u32); MAX_SIEVED_FACTORS + 2] = [(0, 0); MAX_SIEVED_FACTORS + 2];
    for i in 0..len {
        let n = seg_lo + i as u64;
        if n < 2 {
            continue;
        }
        let mut k = 0;
        let tz = n.trailing_zeros();
        let mut r = buf.rem[i];
        if tz > 0 {
            scratch[k] = (2, tz);
            k += 1;
            r >>= r.trailing_zeros();
        }
        for j in 0..buf.counts[i] as usize {
            let (p, e) = buf.slots[i][j];
            scratch[k] = (p as u64, e as u32);
            k += 1;
        }
        if r > 1 {
            scratch[k] = (r, 1);
            k += 1;
        }
        visitor(n, &scratch[..k])?;
    }
    Ok(())
}

fn base_primes(hi: u64) -> Result<Vec<u32>> {
    let root = crate::factorint::integer_sqrt(hi as u128) as u64;
    Ok(primes_up_to(root.max(2))?
        .into_iter()
        .map(|p| p as u32)
        .collect())
}

/// Visit every n in [max(lo, 2), hi] with its full factorization, in
/// ascending order. n = 1 is the caller's business and is never visited.
pub fn sieve_factorizations(
    lo: u64,
    hi: u64,
    mut visit: impl FnMut(u64, &[(u64, u32)]) -> Result<()>,
) -> Result<()> {
    if hi > SIEVE_MAX {
        return Err(Error::Capacity(format!(
            "sieve range end {hi} exceeds {SIEVE_MAX}"
        )));
    }
    let lo = lo.max(2);
    if lo > hi {
        return Ok(());
    }
    let base = base_primes(hi)?;
    let mut buf = SegmentBuf::new();
    let mut seg_lo = lo;
    while seg_lo <= hi {
        let seg_hi = (seg_lo + SEGMENT - 1).min(hi);
        visit_segment(seg_lo, seg_hi, &base, &mut buf, &mut visit)?;
        seg_lo = seg_hi + 1;
    }
    Ok(())
}

/// Chunked parallel fold over factorizations of [max(lo,2), hi].
///
/// Chunk boundaries depend only on the range, accumulators are exact, and
/// merging walks chunks in ascending order, so the result is identical for
/// every worker count.
pub(crate) fn fold_factorizations<T, I, F, M>(
    lo: u64,
    hi: u64,
    threads: usize,
    init: I,
    fold: F,
    merge: M,
) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, u64, &[(u64, u32)]) -> Result<()> + Sync,
    M: Fn(&mut T, T),
{
    if hi > SIEVE_MAX {
        return Err(Error::Capacity(format!(
            "sieve range end {hi} exceeds {SIEVE_MAX}"
        )));
    }
    let lo = lo.max(2);
    let mut total = init();
    if lo > hi {
        return Ok(total);
    }
    let n_chunks = (hi - lo) / CHUNK + 1;
    let workers = threads.max(1).min(n_chunks as usize);
    let base = base_primes(hi)?;

    if workers <= 1 {
        let mut buf = SegmentBuf::new();
        let mut seg_lo = lo;
        while seg_lo <= hi {
            let seg_hi = (seg_lo + SEGMENT - 1).min(hi);
            visit_segment(seg_lo, seg_hi, &base, &mut buf, &mut |n, fs| {
                fold(&mut total, n, fs)
            })?;
            seg_lo = seg_hi + 1;
        }
        return Ok(total);
    }

    let next = AtomicU64::new(0);
    let results: Vec<Mutex<Option<Result<T>>>> = (0..n_chunks).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| {
                let mut buf = SegmentBuf::new();
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    if i >= n_chunks {
                        break;
                    }
                    let c_lo = lo + i * CHUNK;
                    let c_hi = c_lo.saturating_add(CHUNK - 1).min(hi);
                    let mut acc = init();
                    let mut failed: Option<Error> = None;
                    let mut seg_lo = c_lo;
                    while seg_lo <= c_hi {
                        let seg_hi = (seg_lo + SEGMENT - 1).min(c_hi);
                        if let Err(e) =
                            visit_segment(seg_lo, seg_hi, &base, &mut buf, &mut |n, fs| {
                                fold(&mut acc, n, fs)
                            })
                        {
                            failed = Some(e);
                            break;
                        }
                        seg_lo = seg_hi + 1;
                    }
                    *results[i as usize].lock().unwrap() = Some(match failed {
                        Some(e) => Err(e),
                        None => Ok(acc),
                    });
                }
            });
        }
    });
    for slot in results {
        let part = slot
            .into_inner()
            .unwrap()
            .expect("every chunk produced a result")?;
        merge(&mut total, part);
    }
    Ok(total)
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

/// An exact partial sum: integer for catalog functions, rational for
/// quotient runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactSum {
    Int(i128),
    Ratio(BigRational),
}

impl ExactSum {
    pub fn to_f64(&self) -> f64 {
        match self {
            ExactSum::Int(v) => *v as f64,
            ExactSum::Ratio(r) => rational_to_f64(r),
        }
    }
}

pub(crate) fn rational_to_f64(r: &BigRational) -> f64 {
    bigint_to_f64(r.numer()) / bigint_to_f64(r.denom())
}

fn bigint_to_f64(v: &BigInt) -> f64 {
    let (sign, digits) = v.to_u64_digits();
    let mut acc = 0.0f64;
    for &d in digits.iter().rev() {
        acc = acc * 18446744073709551616.0 + d as f64;
    }
    if sign == num_bigint::Sign::Minus {
        -acc
    } else {
        acc
    }
}

impl std::fmt::Display for ExactSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExactSum::Int(v) => write!(f, "{v}"),
            ExactSum::Ratio(r) => {
                if r.denom() == &BigInt::from(1) {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Checkpoint {
    pub x: u64,
    pub sum: ExactSum,
    pub main_term: Option<f64>,
    pub residual: Option<f64>,
    pub normalized_residual: Option<f64>,
}

/// Main-term model attached to a summatory report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MainTermModel {
    None,
    /// c1 * x + c2 * x^(1/2)
    LinearPlusSqrt { c1: f64, c2: f64 },
    /// c * x
    Linear { c: f64 },
    /// c4 * x + c5 * x^(1/3)
    LinearPlusCbrt { c4: f64, c5: f64 },
}

impl MainTermModel {
    pub fn evaluate(&self, x: u64) -> Option<f64> {
        let xf = x as f64;
        match *self {
            MainTermModel::None => None,
            MainTermModel::LinearPlusSqrt { c1, c2 } => Some(c1 * xf + c2 * xf.sqrt()),
            MainTermModel::Linear { c } => Some(c * xf),
            MainTermModel::LinearPlusCbrt { c4, c5 } => Some(c4 * xf + c5 * xf.cbrt()),
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            MainTermModel::None => "none".into(),
            MainTermModel::LinearPlusSqrt { c1, c2 } => {
                format!("C1*x + C2*x^(1/2) with C1={c1}, C2={c2}")
            }
            MainTermModel::Linear { c } => format!("C*x with C={c}"),
            MainTermModel::LinearPlusCbrt { c4, c5 } => {
                format!("C4*x + C5*x^(1/3) with C4={c4}, C5={c5}")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SummatoryReport {
    /// Function name, or `num/den` for quotient runs.
    pub label: String,
    pub model: MainTermModel,
    /// Exponent used for the normalized-residual column.
    pub envelope_exponent: f64,
    pub checkpoints: Vec<Checkpoint>,
}

impl SummatoryReport {
    /// CSV with the canonical header; exact sums rendered as decimal
    /// integers or `num/den`; model-less reports leave the real columns
    /// empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,sum,main_term,residual,normalized_residual\n");
        for c in &self.checkpoints {
            let main = c.main_term.map(|v| v.to_string()).unwrap_or_default();
            let res = c.residual.map(|v| v.to_string()).unwrap_or_default();
            let norm = c
                .normalized_residual
                .map(|v| v.to_string())
                .unwrap_or_default();
            let _ = writeln!(out, "{},{},{},{},{}", c.x, c.sum, main, res, norm);
        }
        out
    }
}

fn checkpoint_list(x: u64, count: u32) -> Result<Vec<u64>> {
    if count == 0 {
        return Err(Error::Invalid("checkpoint count must be >= 1".into()));
    }
    if x == 0 {
        return Err(Error::Invalid("summatory limit must be >= 1".into()));
    }
    let mut cps: Vec<u64> = (0..count).map(|i| x >> i).take_while(|&v| v > 0).collect();
    cps.reverse();
    cps.dedup();
    Ok(cps)
}

fn finish_checkpoint(
    x: u64,
    sum: ExactSum,
    model: &MainTermModel,
    envelope_exponent: f64,
) -> Checkpoint {
    let main_term = model.evaluate(x);
    let residual = main_term.map(|m| sum.to_f64() - m);
    let normalized_residual = residual.map(|r| r.abs() / (x as f64).powf(envelope_exponent));
    Checkpoint {
        x,
        sum,
        main_term,
        residual,
        normalized_residual,
    }
}

fn model_for(id: FunctionId) -> Result<(MainTermModel, f64)> {
    Ok(match id {
        FunctionId::TauEStar => {
            let c1 = constants::euler_product(ConstantId::C1, MAIN_TERM_PRIMES, MAIN_TERM_SERIES)?;
            let c2 = constants::euler_product(ConstantId::C2, MAIN_TERM_PRIMES, MAIN_TERM_SERIES)?;
            (
                MainTermModel::LinearPlusSqrt {
                    c1: c1.value,
                    c2: c2.value,
                },
                0.3,
            )
        }
        FunctionId::MuEStar => {
            let c3 = constants::euler_product(ConstantId::C3, MAIN_TERM_PRIMES, MAIN_TERM_SERIES)?;
            (MainTermModel::Linear { c: c3.value }, 0.55)
        }
        FunctionId::PhiEStar => {
            let c4 = constants::euler_product(ConstantId::C4, MAIN_TERM_PRIMES, MAIN_TERM_SERIES)?;
            let c5 = constants::euler_product(ConstantId::C5, MAIN_TERM_PRIMES, MAIN_TERM_SERIES)?;
            (
                MainTermModel::LinearPlusCbrt {
                    c4: c4.value,
                    c5: c5.value,
                },
                0.3,
            )
        }
        _ => (MainTermModel::None, 0.3),
    })
}

/// Exact summatory function at geometric (ratio 2) checkpoints ending at x,
/// with the paper main term attached when the function has one.
pub fn summatory(
    id: FunctionId,
    x: u64,
    checkpoints: u32,
    threads: usize,
) -> Result<SummatoryReport> {
    let cap = if id.is_sigma_type() { SIGMA_MAX } else { SIEVE_MAX };
    if x > cap {
        return Err(Error::Capacity(format!(
            "summatory limit {x} exceeds {cap} for {id}"
        )));
    }
    let cps = checkpoint_list(x, checkpoints)?;
    let (model, envelope_exponent) = model_for(id)?;

    let mut running: i128 = arithfun::eval(id, &crate::factorint::Factorization::one())?;
    let mut out = Vec::with_capacity(cps.len());
    let mut prev: u64 = 1;
    for &cp in &cps {
        if cp >= 2 {
            let partial = fold_factorizations(
                prev + 1,
                cp,
                threads,
                || Ok(0i128),
                |acc: &mut Result<i128>, _n, fs| {
                    if let Ok(a) = acc.as_mut() {
                        let v = arithfun::eval_pairs(id, fs.iter().map(|&(p, e)| (p as u128, e)))?;
                        match a.checked_add(v) {
                            Some(s) => *a = s,
                            None => *acc = Err(Error::Overflow),
                        }
                    }
                    Ok(())
                },
                |acc, part| {
                    if acc.is_err() {
                        return;
                    }
                    match part {
                        Ok(p) => {
                            let a = acc.as_mut().unwrap();
                            match a.checked_add(p) {
                                Some(s) => *a = s,
                                None => *acc = Err(Error::Overflow),
                            }
                        }
                        Err(e) => *acc = Err(e),
                    }
                },
            )??;
            running = running.checked_add(partial).ok_or(Error::Overflow)?;
        }
        out.push(finish_checkpoint(
            cp,
            ExactSum::Int(running),
            &model,
            envelope_exponent,
        ));
        prev = cp;
    }
    Ok(SummatoryReport {
        label: id.name().into(),
        model,
        envelope_exponent,
        checkpoints: out,
    })
}

// ---------------------------------------------------------------------------
// Quotient summatory
// ---------------------------------------------------------------------------

#[derive(Default)]
struct QuotientAcc {
    ones: u64,
    /// reduced (numerator, denominator > 0) -> multiplicity
    classes: HashMap<(i128, i128), u64>,
}

impl QuotientAcc {
    fn push(&mut self, num: i128, den: i128, n: u64) -> Result<()> {
        if den == 0 {
            return Err(Error::ZeroDenominator(n));
        }
        if num == den {
            self.ones += 1;
            return Ok(());
        }
        let (mut num, mut den) = (num, den);
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = gcd(num.unsigned_abs(), den.unsigned_abs());
        if g > 1 {
            num /= g as i128;
            den /= g as i128;
        }
        *self.classes.entry((num, den)).or_insert(0) += 1;
        Ok(())
    }

    fn merge(&mut self, other: QuotientAcc) {
        self.ones += other.ones;
        for (k, v) in other.classes {
            *self.classes.entry(k).or_insert(0) += v;
        }
    }

    /// Exact total; classes are folded in sorted key order so the result
    /// is reproducible bit for bit.
    fn exact_total(&self) -> BigRational {
        let mut keys: Vec<&(i128, i128)> = self.classes.keys().collect();
        keys.sort();
        let mut total = BigRational::from(BigInt::from(self.ones));
        for k in keys {
            let count = self.classes[k];
            total += BigRational::new(BigInt::from(k.0), BigInt::from(k.1))
                * BigRational::from(BigInt::from(count));
        }
        total
    }
}

fn quotient_model(num: FunctionId, den: FunctionId) -> Result<MainTermModel> {
    let cid = match (num, den) {
        (FunctionId::TauEStar, FunctionId::TauE) => Some(ConstantId::T5Tau),
        (FunctionId::SigmaEStar, FunctionId::SigmaE) => Some(ConstantId::T5Sigma),
        (FunctionId::PhiE, FunctionId::PhiEStar) => Some(ConstantId::T5Phi),
        _ => None,
    };
    Ok(match cid {
        Some(cid) => MainTermModel::Linear {
            c: constants::euler_product(cid, MAIN_TERM_PRIMES, MAIN_TERM_SERIES)?.value,
        },
        None => MainTermModel::None,
    })
}

/// Exact rational summatory of num(n)/den(n) at geometric checkpoints; the
/// three quotients covered by a mean-value theorem get their product
/// constant as main term.
pub fn quotient_summatory(
    num: FunctionId,
    den: FunctionId,
    x: u64,
    checkpoints: u32,
    threads: usize,
) -> Result<SummatoryReport> {
    if x > QUOTIENT_MAX {
        return Err(Error::Capacity(format!(
            "quotient summatory limit {x} exceeds {QUOTIENT_MAX}"
        )));
    }
    let cps = checkpoint_list(x, checkpoints)?;
    let model = quotient_model(num, den)?;
    let envelope_exponent = 0.3;

    let one = crate::factorint::Factorization::one();
    let mut running = QuotientAcc::default();
    running.push(arithfun::eval(num, &one)?, arithfun::eval(den, &one)?, 1)?;

    let mut out = Vec::with_capacity(cps.len());
    let mut prev: u64 = 1;
    for &cp in &cps {
        if cp >= 2 {
            let partial = fold_factorizations(
                prev + 1,
                cp,
                threads,
                || Ok(QuotientAcc::default()),
                |acc: &mut Result<QuotientAcc>, n, fs| {
                    if let Ok(a) = acc.as_mut() {
                        let nv =
                            arithfun::eval_pairs(num, fs.iter().map(|&(p, e)| (p as u128, e)))?;
                        let dv =
                            arithfun::eval_pairs(den, fs.iter().map(|&(p, e)| (p as u128, e)))?;
                        a.push(nv, dv, n)?;
                    }
                    Ok(())
                },
                |acc, part| {
                    if acc.is_err() {
                        return;
                    }
                    match part {
                        Ok(p) => acc.as_mut().unwrap().merge(p),
                        Err(e) => *acc = Err(e),
                    }
                },
            )??;
            running.merge(partial);
        }
        out.push(finish_checkpoint(
            cp,
            ExactSum::Ratio(running.exact_total()),
            &model,
            envelope_exponent,
        ));
        prev = cp;
    }
    Ok(SummatoryReport {
        label: format!("{}/{}", num.name(), den.name()),
        model,
        envelope_exponent,
        checkpoints: out,
    })
}

/// Normalized residual sequence |residual| / x^exponent for a report with
/// at least three checkpoints.
pub fn residual_envelope(report: &SummatoryReport, exponent: f64) -> Result<Vec<(u64, f64)>> {
    if report.checkpoints.len() < 3 {
        return Err(Error::Invalid(
            "residual envelope needs at least 3 checkpoints".into(),
        ));
    }
    report
        .checkpoints
        .iter()
        .map(|c| {
            let r = c.residual.ok_or_else(|| {
                Error::Invalid(format!("report `{}` has no main-term model", report.label))
            })?;
            Ok((c.x, r.abs() / (c.x as f64).powf(exponent)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorint::factor;

    #[test]
    fn sieve_visits_every_n_once_with_correct_factors() {
        let mut seen = Vec::new();
        sieve_factorizations(2, 2000, |n, fs| {
            seen.push(n);
            let rebuilt: u128 = fs.iter().map(|&(p, e)| (p as u128).pow(e)).product();
            assert_eq!(rebuilt, n as u128);
            for w in fs.windows(2) {
                assert!(w[0].0 < w[1].0);
            }
            let want: Vec<(u64, u32)> = factor(n as u128)
                .unwrap()
                .factors()
                .iter()
                .map(|&(p, e)| (p as u64, e))
                .collect();
            assert_eq!(fs, want.as_slice());
            Ok(())
        })
        .unwrap();
        assert_eq!(seen, (2..=2000u64).collect::<Vec<_>>());
    }

    #[test]
    fn sieve_partition_no_gaps_across_segments() {
        let lo = (1 << 16) - 37;
        let hi = 3 * (1 << 16) + 11;
        let mut count = 0u64;
        let mut last = lo - 1;
        sieve_factorizations(lo, hi, |n, _| {
            count += 1;
            assert_eq!(n, last + 1);
            last = n;
            Ok(())
        })
        .unwrap();
        assert_eq!(count, hi - lo + 1);
    }

    #[test]
    fn sieve_counts_to_1e6() {
        let mut count = 0u64;
        sieve_factorizations(2, 1_000_000, |_, _| {
            count += 1;
            Ok(())
        })
        .unwrap();
        assert_eq!(count, 999_999);
    }

    #[test]
    fn fold_matches_sequential_and_is_thread_invariant() {
        let sum_with = |threads: usize| -> i128 {
            fold_factorizations(
                2,
                300_000,
                threads,
                || 0i128,
                |acc, _n, fs| {
                    *acc += arithfun::eval_pairs(
                        FunctionId::TauEStar,
                        fs.iter().map(|&(p, e)| (p as u128, e)),
                    )
                    .unwrap();
                    Ok(())
                },
                |acc, p| *acc += p,
            )
            .unwrap()
        };
        let s1 = sum_with(1);
        assert_eq!(s1, sum_with(4));
        assert_eq!(s1, sum_with(8));
    }

    /// Frozen from an independent per-n evaluation.
    #[test]
    fn summatory_spot_values() {
        let cases: [(FunctionId, &[(u64, i128)]); 6] = [
            (
                FunctionId::TauEStar,
                &[(10, 13), (100, 147), (1000, 1514), (10_000, 15_331)],
            ),
            (
                FunctionId::SigmaEStar,
                &[(10, 62), (100, 5749), (1000, 564_392), (10_000, 56_365_508)],
            ),
            (
                FunctionId::MuEStar,
                &[(10, 4), (100, 30), (1000, 326), (10_000, 3346)],
            ),
            (
                FunctionId::PhiEStar,
                &[(10, 11), (100, 123), (1000, 1291), (10_000, 13_035)],
            ),
            (
                FunctionId::TauE,
                &[(10, 13), (100, 151), (1000, 1566), (10_000, 15_907)],
            ),
            (
                FunctionId::SigmaE,
                &[(10, 62), (100, 5794), (1000, 568_949), (10_000, 56_835_831)],
            ),
        ];
        for (id, points) in cases {
            for &(x, want) in points {
                let rep = summatory(id, x, 1, 1).unwrap();
                assert_eq!(
                    rep.checkpoints.last().unwrap().sum,
                    ExactSum::Int(want),
                    "{id} at {x}"
                );
            }
        }
    }

    #[test]
    fn summatory_matches_direct_evaluation_for_all_ids() {
        for id in FunctionId::ALL {
            let x = 10_000u64;
            let rep = summatory(id, x, 1, 2).unwrap();
            let mut direct: i128 =
                arithfun::eval(id, &crate::factorint::Factorization::one()).unwrap();
            for n in 2..=x {
                direct += arithfun::eval(id, &factor(n as u128).unwrap()).unwrap();
            }
            assert_eq!(
                rep.checkpoints.last().unwrap().sum,
                ExactSum::Int(direct),
                "{id}"
            );
        }
    }

    #[test]
    fn squarefree_count_at_100() {
        let rep = summatory(FunctionId::ChiSquarefree, 100, 1, 1).unwrap();
        assert_eq!(rep.checkpoints[0].sum, ExactSum::Int(61));
    }

    #[test]
    fn mu_e_star_first_ten_terms() {
        // per-n values 1,1,1,-1,1,1,1,-1,-1,1 sum to 4
        let rep = summatory(FunctionId::MuEStar, 10, 1, 1).unwrap();
        assert_eq!(rep.checkpoints[0].sum, ExactSum::Int(4));
    }

    #[test]
    fn checkpoints_are_geometric_and_sums_monotone() {
        let rep = summatory(FunctionId::TauEStar, 1 << 12, 5, 2).unwrap();
        let xs: Vec<u64> = rep.checkpoints.iter().map(|c| c.x).collect();
        assert_eq!(xs, vec![256, 512, 1024, 2048, 4096]);
        for w in rep.checkpoints.windows(2) {
            let (ExactSum::Int(a), ExactSum::Int(b)) = (&w[0].sum, &w[1].sum) else {
                panic!("integer sums expected")
            };
            assert!(a <= b);
        }
    }

    #[test]
    fn quotient_spot_values() {
        let q = |num, den, x| -> String {
            let rep = quotient_summatory(num, den, x, 1, 1).unwrap();
            rep.checkpoints.last().unwrap().sum.to_string()
        };
        assert_eq!(q(FunctionId::TauEStar, FunctionId::TauE, 16), "47/3");
        assert_eq!(q(FunctionId::TauEStar, FunctionId::TauE, 100), "296/3");
        assert_eq!(q(FunctionId::TauEStar, FunctionId::TauE, 1000), "2956/3");
        assert_eq!(
            q(FunctionId::TauEStar, FunctionId::TauE, 10_000),
            "177281/18"
        );
        assert_eq!(q(FunctionId::SigmaEStar, FunctionId::SigmaE, 16), "174/11");
        assert_eq!(
            q(FunctionId::SigmaEStar, FunctionId::SigmaE, 100),
            "33881/341"
        );
        assert_eq!(q(FunctionId::PhiE, FunctionId::PhiEStar, 1000), "82787/84");
        assert_eq!(
            q(FunctionId::PhiE, FunctionId::PhiEStar, 10_000),
            "177323/18"
        );
    }

    #[test]
    fn quotient_is_one_up_to_15() {
        let rep = quotient_summatory(FunctionId::TauEStar, FunctionId::TauE, 15, 1, 1).unwrap();
        assert_eq!(
            rep.checkpoints[0].sum,
            ExactSum::Ratio(BigRational::from(BigInt::from(15)))
        );
    }

    #[test]
    fn quotient_values_in_unit_interval_to_1e4() {
        for (num, den) in [
            (FunctionId::TauEStar, FunctionId::TauE),
            (FunctionId::SigmaEStar, FunctionId::SigmaE),
            (FunctionId::PhiE, FunctionId::PhiEStar),
        ] {
            for n in 1..=10_000u128 {
                let f = factor(n).unwrap();
                let nv = arithfun::eval(num, &f).unwrap();
                let dv = arithfun::eval(den, &f).unwrap();
                assert!(nv > 0 && dv > 0 && nv <= dv, "{num}/{den} at {n}");
            }
        }
    }

    #[test]
    fn quotient_zero_denominator_detected() {
        // mu_e vanishes at non-e-squarefree arguments, first at 16
        match quotient_summatory(FunctionId::TauE, FunctionId::MuE, 100, 1, 1) {
            Err(Error::ZeroDenominator(16)) => {}
            other => panic!("expected zero-denominator at 16, got {other:?}"),
        }
    }

    #[test]
    fn reports_identical_across_thread_counts() {
        let a = summatory(FunctionId::TauEStar, 1_000_000, 8, 1)
            .unwrap()
            .to_csv();
        let b = summatory(FunctionId::TauEStar, 1_000_000, 8, 4)
            .unwrap()
            .to_csv();
        assert_eq!(a, b);
        let a = quotient_summatory(FunctionId::TauEStar, FunctionId::TauE, 200_000, 4, 1)
            .unwrap()
            .to_csv();
        let b = quotient_summatory(FunctionId::TauEStar, FunctionId::TauE, 200_000, 4, 3)
            .unwrap()
            .to_csv();
        assert_eq!(a, b);
    }

    #[test]
    fn envelope_requires_three_checkpoints_and_exponent_zero_is_raw() {
        let rep = summatory(FunctionId::TauEStar, 4096, 6, 2).unwrap();
        let env0 = residual_envelope(&rep, 0.0).unwrap();
        for ((x, v), c) in env0.iter().zip(&rep.checkpoints) {
            assert_eq!(*x, c.x);
            assert_eq!(*v, c.residual.unwrap().abs());
        }
        let short = summatory(FunctionId::TauEStar, 4, 2, 1).unwrap();
        assert!(residual_envelope(&short, 0.3).is_err());
    }

    #[test]
    fn constant_function_report_has_zero_residuals() {
        // synthetic exact-linear report: sum = x against main term x
        let model = MainTermModel::Linear { c: 1.0 };
        let checkpoints = (4..=8u64)
            .map(|k| {
                let x = 1 << k;
                finish_checkpoint(x, ExactSum::Int(x as i128), &model, 0.3)
            })
            .collect();
        let rep = SummatoryReport {
            label: "one".into(),
            model,
            envelope_exponent: 0.3,
            checkpoints,
        };
        for (_, v) in residual_envelope(&rep, 0.3).unwrap() {
            assert_eq!(v, 0.0);
        }
    }

    #[test]
    fn capacity_guards() {
        assert!(matches!(
            summatory(FunctionId::SigmaEStar, SIGMA_MAX + 1, 1, 1),
            Err(Error::Capacity(_))
        ));
        assert!(matches!(
            summatory(FunctionId::TauEStar, SIEVE_MAX + 1, 1, 1),
            Err(Error::Capacity(_))
        ));
        assert!(matches!(
            quotient_summatory(FunctionId::TauEStar, FunctionId::TauE, QUOTIENT_MAX + 1, 1, 1),
            Err(Error::Capacity(_))
        ));
    }
}
