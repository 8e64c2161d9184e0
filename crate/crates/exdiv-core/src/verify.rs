//! Named check suites behind the `verify` command: each suite re-runs a
//! family of identities or reproductions and reports one verdict per claim.

use crate::arithfun::{self, FunctionId};
use crate::convolve::{self, ConvolutionKind, TabulatedFunction};
use crate::divisors::{self, DivisorKind};
use crate::error::Result;
use crate::factorint::{classify, factor};
use crate::perfect::{self, PerfectKind, SearchFilter};
use crate::summatory::{self, residual_envelope};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn ok(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: true,
            detail: String::new(),
        }
    }

    fn fail(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed: false,
            detail: detail.into(),
        }
    }

    fn from_bool(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        if passed {
            Check::ok(name)
        } else {
            Check::fail(name, detail)
        }
    }
}

/// Render one PASS/FAIL line per check; true iff everything passed.
pub fn render(checks: &[Check]) -> (String, bool) {
    let mut out = String::new();
    let mut all = true;
    for c in checks {
        if c.passed {
            out.push_str(&format!("PASS  {}\n", c.name));
        } else {
            all = false;
            out.push_str(&format!("FAIL  {}: {}\n", c.name, c.detail));
        }
    }
    let total = checks.len();
    let passed = checks.iter().filter(|c| c.passed).count();
    out.push_str(&format!("{passed}/{total} checks passed\n"));
    (out, all)
}

// ---------------------------------------------------------------------------
// algebra
// ---------------------------------------------------------------------------

/// Identity, inverse, commutativity and associativity of the e-unitary
/// convolution, over exact rationals.
pub fn suite_algebra(limit: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let limit = limit.clamp(64, 100_000);

    let id = TabulatedFunction::mu_squared(limit)?;
    let one = TabulatedFunction::constant_one(limit)?;
    let mes = TabulatedFunction::from_catalog(FunctionId::MuEStar, limit)?;

    let sigma = TabulatedFunction::from_catalog(FunctionId::SigmaEStar, limit)?;
    let identity_ok = convolve::convolve(ConvolutionKind::ExpUnitary, &sigma, &id)? == sigma
        && convolve::convolve(ConvolutionKind::ExpUnitary, &id, &one)? == one;
    checks.push(Check::from_bool(
        format!("mu^2 is the e-unitary identity on [1, {limit}]"),
        identity_ok,
        "convolving with mu^2 changed a value",
    ));

    let inv_ok = convolve::convolve(ConvolutionKind::ExpUnitary, &one, &mes)? == id;
    checks.push(Check::from_bool(
        format!("I (*) mu_e_star = mu^2 on [1, {limit}]"),
        inv_ok,
        "inverse relation failed",
    ));

    let inverse = convolve::e_unitary_inverse(&one)?;
    checks.push(Check::from_bool(
        format!("e_unitary_inverse(I) = mu_e_star on [1, {limit}]"),
        inverse == mes,
        "computed inverse differs from mu_e_star",
    ));

    // commutativity/associativity on deterministic pseudo-random triples
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next_rational = move |n: u64| {
        state = state
            .wrapping_add(n)
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let num = ((state >> 33) % 19) as i64 - 9;
        let den = ((state >> 13) % 7) as i64 + 1;
        num_rational::BigRational::new(num.into(), den.into())
    };
    let t_limit = 2000.min(limit);
    let mut algebra_ok = true;
    let mut detail = String::new();
    for t in 0..100 {
        let f = TabulatedFunction::from_fn(t_limit, |n| next_rational(n * 3 + t))?;
        let g = TabulatedFunction::from_fn(t_limit, |n| next_rational(n * 5 + t))?;
        let h = TabulatedFunction::from_fn(t_limit, |n| next_rational(n * 7 + t))?;
        let fg = convolve::convolve(ConvolutionKind::ExpUnitary, &f, &g)?;
        if fg != convolve::convolve(ConvolutionKind::ExpUnitary, &g, &f)? {
            algebra_ok = false;
            detail = format!("commutativity failed on triple {t}");
            break;
        }
        let left = convolve::convolve(ConvolutionKind::ExpUnitary, &fg, &h)?;
        let gh = convolve::convolve(ConvolutionKind::ExpUnitary, &g, &h)?;
        let right = convolve::convolve(ConvolutionKind::ExpUnitary, &f, &gh)?;
        if left != right {
            algebra_ok = false;
            detail = format!("associativity failed on triple {t}");
            break;
        }
    }
    checks.push(Check::from_bool(
        format!("e-unitary convolution commutative/associative on 100 random triples at n <= {t_limit}"),
        algebra_ok,
        detail,
    ));
    Ok(checks)
}

// ---------------------------------------------------------------------------
// oracles
// ---------------------------------------------------------------------------

/// Closed forms against counting and divisor-sum brute force, plus the
/// divisor-set structure facts.
pub fn suite_oracles(limit: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let limit = limit.clamp(100, 100_000);
    let pair_limit = limit.min(10_000);

    let pair_ids = [
        FunctionId::Tau,
        FunctionId::Sigma,
        FunctionId::TauStar,
        FunctionId::SigmaStar,
        FunctionId::TauE,
        FunctionId::SigmaE,
        FunctionId::TauEStar,
        FunctionId::SigmaEStar,
    ];
    let mut divisor_ok = true;
    let mut detail = String::new();
    'outer: for n in 1..=pair_limit {
        let f = factor(n as u128)?;
        for id in pair_ids {
            if arithfun::eval(id, &f)? != arithfun::eval_bruteforce_by_divisors(id, &f)? {
                divisor_ok = false;
                detail = format!("{id} disagrees at n = {n}");
                break 'outer;
            }
        }
    }
    checks.push(Check::from_bool(
        format!("tau/sigma closed forms = divisor sums for n <= {pair_limit}"),
        divisor_ok,
        detail,
    ));

    let mut phi_ok = true;
    let mut detail = String::new();
    for n in 1..=pair_limit {
        let f = factor(n as u128)?;
        if arithfun::eval(FunctionId::PhiStar, &f)? as u128 != arithfun::phi_star_bruteforce(n as u128)? {
            phi_ok = false;
            detail = format!("phi_star disagrees at n = {n}");
            break;
        }
        if arithfun::eval(FunctionId::PhiE, &f)? as u128 != arithfun::phi_e_bruteforce(&f)? {
            phi_ok = false;
            detail = format!("phi_e disagrees at n = {n}");
            break;
        }
    }
    checks.push(Check::from_bool(
        format!("phi_star and phi_e closed forms = literal counts for n <= {pair_limit}"),
        phi_ok,
        detail,
    ));

    let mut pes_ok = true;
    let mut detail = String::new();
    for n in 1..=limit {
        let f = factor(n as u128)?;
        if arithfun::eval(FunctionId::PhiEStar, &f)? as u128 != arithfun::phi_e_star_bruteforce(&f)? {
            pes_ok = false;
            detail = format!("phi_e_star disagrees at n = {n}");
            break;
        }
    }
    checks.push(Check::from_bool(
        format!("phi_e_star closed form = tuple count for n <= {limit}"),
        pes_ok,
        detail,
    ));

    let mut nest_ok = true;
    let mut detail = String::new();
    for n in 1..=limit {
        let f = factor(n as u128)?;
        let all = divisors::enumerate(&f, DivisorKind::All)?;
        let uni = divisors::enumerate(&f, DivisorKind::Unitary)?;
        let exp = divisors::enumerate(&f, DivisorKind::Exponential)?;
        let exu = divisors::enumerate(&f, DivisorKind::ExpUnitary)?;
        let sub = |a: &[u128], b: &[u128]| a.iter().all(|x| b.binary_search(x).is_ok());
        if !(sub(&exu, &exp) && sub(&exp, &all) && sub(&uni, &all)) {
            nest_ok = false;
            detail = format!("nesting fails at n = {n}");
            break;
        }
        let c = classify(&f);
        if c.squarefree && uni != all {
            nest_ok = false;
            detail = format!("unitary set differs from full set at squarefree n = {n}");
            break;
        }
        if c.e_squarefree && exu != exp {
            nest_ok = false;
            detail = format!("e-unitary set differs from e-divisor set at e-squarefree n = {n}");
            break;
        }
        for kind in DivisorKind::ALL {
            if divisors::count(&f, kind)? != divisors::enumerate(&f, kind)?.len() as u128 {
                nest_ok = false;
                detail = format!("count mismatch for {kind} at n = {n}");
                break;
            }
        }
    }
    checks.push(Check::from_bool(
        format!("divisor-set nesting, collapse and counts for n <= {limit}"),
        nest_ok,
        detail,
    ));
    Ok(checks)
}

// ---------------------------------------------------------------------------
// paper values
// ---------------------------------------------------------------------------

/// The fixed numeric reproductions: divisor lists, perfect-number lists
/// and the pointwise 24-digit verification.
pub fn suite_paper_values(search_limit: u64) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let f4096 = factor(4096)?;
    checks.push(Check::from_bool(
        "sigma_e_star(2^12) = 4122",
        arithfun::eval(FunctionId::SigmaEStar, &f4096)? == 4122,
        "value mismatch",
    ));
    checks.push(Check::from_bool(
        "e-unitary divisors of 2^12 are {2, 8, 16, 4096}",
        divisors::enumerate(&f4096, DivisorKind::ExpUnitary)? == vec![2, 8, 16, 4096],
        "set mismatch",
    ));

    let f36 = factor(36)?;
    checks.push(Check::from_bool(
        "sigma_e(36) = sigma_e_star(36) = 72",
        arithfun::eval(FunctionId::SigmaE, &f36)? == 72
            && arithfun::eval(FunctionId::SigmaEStar, &f36)? == 72,
        "value mismatch",
    ));

    checks.push(Check::from_bool(
        "1800 and 2700 are e-unitary perfect",
        perfect::is_perfect(PerfectKind::EUnitary, &factor(1800)?)?
            && perfect::is_perfect(PerfectKind::EUnitary, &factor(2700)?)?,
        "verdict mismatch",
    ));

    checks.push(Check::from_bool(
        "17424 is e-perfect but not e-unitary perfect",
        perfect::is_perfect(PerfectKind::EPerfect, &factor(17424)?)?
            && !perfect::is_perfect(PerfectKind::EUnitary, &factor(17424)?)?,
        "verdict mismatch",
    ));

    let out = perfect::search(PerfectKind::Unitary, 100_000, SearchFilter::default(), 2)?;
    checks.push(Check::from_bool(
        "unitary-perfect search to 1e5 finds exactly {6, 60, 90, 87360}",
        out.hits.iter().map(|h| h.n).collect::<Vec<_>>() == vec![6, 60, 90, 87360],
        format!("got {:?}", out.hits.iter().map(|h| h.n).collect::<Vec<_>>()),
    ));

    let big = factor(146361946186458562560000)?;
    checks.push(Check::from_bool(
        "the 24-digit number is unitary perfect (pointwise)",
        perfect::is_perfect(PerfectKind::Unitary, &big)?,
        "verdict mismatch",
    ));

    let expected: [u128; 8] = [
        36, 1800, 2700, 17424, 1306800, 4769856, 238492800, 357739200,
    ];
    let want: Vec<u128> = expected
        .iter()
        .copied()
        .filter(|&n| n <= search_limit as u128)
        .collect();
    let filter = SearchFilter {
        powerful_only: true,
        ..Default::default()
    };
    let out = perfect::search(PerfectKind::EPerfect, search_limit, filter, 2)?;
    checks.push(Check::from_bool(
        format!("squarefull e-perfect kernels to {search_limit} in order"),
        out.hits.iter().map(|h| h.n).collect::<Vec<_>>() == want,
        format!("got {:?}", out.hits.iter().map(|h| h.n).collect::<Vec<_>>()),
    ));
    Ok(checks)
}

// ---------------------------------------------------------------------------
// residuals
// ---------------------------------------------------------------------------

/// Pinned operational reading of "bounded and non-trending-upward": every
/// normalized residual is finite and at most 10, and the least-squares
/// slope over the last five checkpoints is at most 5% of their mean level
/// per doubling.
pub fn envelope_verdict(env: &[(u64, f64)]) -> (bool, String) {
    if env.iter().any(|&(_, v)| !v.is_finite()) {
        return (false, "non-finite normalized residual".into());
    }
    let max = env.iter().map(|&(_, v)| v).fold(0.0f64, f64::max);
    if max > 10.0 {
        return (false, format!("normalized residual {max:.3} exceeds 10"));
    }
    if env.len() < 5 {
        return (false, "fewer than 5 checkpoints".into());
    }
    let tail = &env[env.len() - 5..];
    let mean = tail.iter().map(|&(_, v)| v).sum::<f64>() / 5.0;
    let mean_i = 2.0; // indexes 0..5
    let mut num = 0.0;
    let mut den = 0.0;
    for (i, &(_, v)) in tail.iter().enumerate() {
        num += (i as f64 - mean_i) * (v - mean);
        den += (i as f64 - mean_i) * (i as f64 - mean_i);
    }
    let slope = num / den;
    let allowance = 0.05 * mean + 1e-9;
    if slope > allowance {
        (
            false,
            format!("upward trend: slope {slope:.4} > allowance {allowance:.4} (mean {mean:.4})"),
        )
    } else {
        (true, format!("max {max:.4}, tail slope {slope:.4}"))
    }
}

/// Residual envelopes for the three summatory theorems and the three
/// quotient mean values, at the stated exponents.
pub fn suite_residuals(x: u64, threads: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let x = x.max(1 << 14);
    let cp_count = 32; // every power of two down to 16

    for (id, exponent) in [
        (FunctionId::TauEStar, 0.3),
        (FunctionId::MuEStar, 0.55),
        (FunctionId::PhiEStar, 0.3),
    ] {
        let rep = summatory::summatory(id, x, cp_count, threads)?;
        let env = residual_envelope(&rep, exponent)?;
        let (ok, detail) = envelope_verdict(&env);
        checks.push(Check::from_bool(
            format!("sum {id} residuals vs x^{exponent} to {x}"),
            ok,
            detail,
        ));
    }
    for (num, den) in [
        (FunctionId::TauEStar, FunctionId::TauE),
        (FunctionId::SigmaEStar, FunctionId::SigmaE),
        (FunctionId::PhiE, FunctionId::PhiEStar),
    ] {
        let rep = summatory::quotient_summatory(num, den, x, cp_count, threads)?;
        let env = residual_envelope(&rep, 0.3)?;
        let (ok, detail) = envelope_verdict(&env);
        checks.push(Check::from_bool(
            format!("sum {}/{} residuals vs x^0.3 to {x}", num.name(), den.name()),
            ok,
            detail,
        ));
    }
    Ok(checks)
}
