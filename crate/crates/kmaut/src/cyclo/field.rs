//! Cyclotomic polynomials, Euler's totient and power tables for `Q(ζ_N)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};

/// Largest conductor accepted by any scalar operation.
pub const MAX_CONDUCTOR: u64 = 1_000_000;

pub fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Replaces a conductor `N ≡ 2 (mod 4)` by `N/2`, which generates the same field.
pub fn canonical_conductor(n: u64) -> u64 {
    if n % 4 == 2 {
        n / 2
    } else {
        n
    }
}

/// Checks the conductor bound.
pub fn check_conductor(n: u64) -> Result<u64> {
    if n == 0 || n > MAX_CONDUCTOR {
        Err(Error::ConductorOverflow(n))
    } else {
        Ok(n)
    }
}

type PolyCache = RwLock<HashMap<u64, Arc<Vec<i128>>>>;

fn phi_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Coefficients (constant term first) of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_poly(n: u64) -> Arc<Vec<i128>> {
    if let Some(p) = phi_cache().read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Φ_d with d a proper divisor of n.
    let mut p = vec![0i128; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let q = cyclotomic_poly(d);
        p = exact_div_monic(&p, &q);
    }
    let arc = Arc::new(p);
    phi_cache().write().unwrap().insert(n, arc.clone());
    arc
}

fn exact_div_monic(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut r = num.to_vec();
    let dn = den.len() - 1;
    let qlen = num.len() - dn;
    let mut q = vec![0i128; qlen];
    for k in (0..qlen).rev() {
        let c = r[k + dn];
        q[k] = c;
        if c != 0 {
            for (j, dj) in den.iter().enumerate() {
                r[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

type PowCache = RwLock<HashMap<u64, Arc<Vec<Vec<i64>>>>>;

fn pow_cache() -> &'static PowCache {
    static CACHE: OnceLock<PowCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Table of `x^e mod Φ_n` for `0 ≤ e < n`, as integer coordinate vectors of length φ(n).
pub fn power_table(n: u64) -> Arc<Vec<Vec<i64>>> {
    if let Some(t) = pow_cache().read().unwrap().get(&n) {
        return t.clone();
    }
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    let mut table = Vec::with_capacity(n as usize);
    let mut cur = vec![0i128; deg];
    cur[0] = 1;
    for _ in 0..n {
        table.push(cur.iter().map(|&c| c as i64).collect::<Vec<i64>>());
        // multiply by x and reduce by the monic Φ_n
        let top = cur[deg - 1];
        for j in (1..deg).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..deg {
                cur[j] -= top * phi[j];
            }
        }
    }
    let arc = Arc::new(table);
    pow_cache().write().unwrap().insert(n, arc.clone());
    arc
}

/// Integer coordinates of `x^e mod Φ_n`.
pub fn x_pow(n: u64, e: u64) -> Vec<i64> {
    let e = e % n;
    if n <= 4096 {
        return power_table(n)[e as usize].clone();
    }
    let phi = cyclotomic_poly(n);
    let deg = phi.len() - 1;
    let mut r = vec![0i128; (e as usize + 1).max(deg)];
    r[e as usize] = 1;
    for k in (deg..r.len()).rev() {
        let c = r[k];
        if c != 0 {
            for (j, pj) in phi.iter().enumerate() {
                r[k - deg + j] -= c * pj;
            }
        }
    }
    r.truncate(deg);
    r.into_iter().map(|c| c as i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totients() {
        let expected = [(1, 1), (2, 1), (3, 2), (4, 2), (12, 4), (36, 12), (97, 96)];
        for (n, t) in expected {
            assert_eq!(totient(n), t);
        }
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(105).len() - 1, 48);
    }

    #[test]
    fn power_table_wraps() {
        let t = power_table(4);
        assert_eq!(t[2], vec![-1, 0]);
        assert_eq!(t[3], vec![0, -1]);
    }
}
