//! Dense polynomial helpers over arbitrary-precision rationals and the
//! per-conductor cyclotomic data cache.
//!
//! Elements of Q(zeta_n) are kept reduced modulo the n-th cyclotomic
//! polynomial Phi_n. Computing Phi_n and the reduction rows for the
//! out-of-basis powers x^t (phi(n) <= t < n) is done once per conductor and
//! cached behind a mutex, so values can be shared across threads.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num_traits::{One, Zero};

use crate::exact::Rational;

/// Trim trailing zero coefficients.
fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Long division: returns (quotient, remainder). Panics on zero divisor.
pub(crate) fn poly_div_rem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!den.is_empty(), "division by the zero polynomial");
    let mut rem: Vec<Rational> = num.to_vec();
    trim(&mut rem);
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - den.len() + 1];
    let lead = den.last().unwrap().clone();
    while rem.len() >= den.len() {
        let deg = rem.len() - den.len();
        let factor = rem.last().unwrap() / &lead;
        quot[deg] = factor.clone();
        for (i, c) in den.iter().enumerate() {
            let delta = c * &factor;
            rem[deg + i] -= delta;
        }
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
        if rem.len() < den.len() {
            break;
        }
    }
    trim(&mut quot);
    (quot, rem)
}

/// Cached data for one conductor n: the cyclotomic polynomial Phi_n and the
/// canonical expansion of every power x^t with phi(n) <= t < n.
pub(crate) struct ConductorData {
    /// phi(n), the degree of Phi_n and of the power basis.
    pub degree: usize,
    /// Monic Phi_n, ascending coefficients, length `degree + 1`.
    pub min_poly: Vec<Rational>,
    /// `power_rows[t - degree]` holds the canonical coefficients (length
    /// `degree`) of x^t mod Phi_n, for t in [degree, n).
    pub power_rows: Vec<Vec<Rational>>,
}

static CACHE: LazyLock<Mutex<HashMap<u64, Arc<ConductorData>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// `x^n - 1` as a coefficient vector.
fn x_pow_minus_one(n: u64) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n as usize + 1];
    v[0] = -Rational::one();
    v[n as usize] = Rational::one();
    v
}

fn divisors(n: u64) -> Vec<u64> {
    let mut ds = Vec::new();
    for d in 1..=n {
        if n % d == 0 {
            ds.push(d);
        }
    }
    ds
}

/// Phi_n via the product formula: Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d.
fn cyclotomic_poly(n: u64) -> Vec<Rational> {
    if n == 1 {
        return vec![-Rational::one(), Rational::one()];
    }
    let mut num = x_pow_minus_one(n);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = conductor_data(d).min_poly.clone();
        let (q, r) = poly_div_rem(&num, &phi_d);
        debug_assert!(r.is_empty(), "Phi_{d} must divide x^{n} - 1 exactly");
        num = q;
    }
    num
}

/// Fetch (computing and caching on first use) the reduction data for n >= 1.
pub(crate) fn conductor_data(n: u64) -> Arc<ConductorData> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(d) = CACHE.lock().unwrap().get(&n) {
        return Arc::clone(d);
    }
    // Computed outside the lock: cyclotomic_poly recurses into divisors.
    let min_poly = cyclotomic_poly(n);
    let degree = min_poly.len() - 1;

    // x^degree == -(Phi_n - x^degree); extend one power at a time.
    let mut power_rows: Vec<Vec<Rational>> = Vec::with_capacity(n as usize - degree);
    let head: Vec<Rational> = min_poly[..degree].iter().map(|c| -c).collect();
    power_rows.push(head.clone());
    for _ in (degree + 1)..n as usize {
        let prev = power_rows.last().unwrap();
        // multiply by x: shift, folding the overflow at x^degree back in
        let mut next = vec![Rational::zero(); degree];
        let carry = prev[degree - 1].clone();
        for i in 1..degree {
            next[i] = prev[i - 1].clone();
        }
        if !carry.is_zero() {
            for (i, h) in head.iter().enumerate() {
                next[i] += h * &carry;
            }
        }
        power_rows.push(next);
    }

    let data = Arc::new(ConductorData {
        degree,
        min_poly,
        power_rows,
    });
    CACHE
        .lock()
        .unwrap()
        .entry(n)
        .or_insert_with(|| Arc::clone(&data));
    data
}

/// Euler's totient, by trial factorization; test oracle for the degrees.
#[cfg(test)]
pub(crate) fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}
