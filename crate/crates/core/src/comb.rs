//! Combinatorial kernels: the truncated alternating sums `μ_m(r)`, the cycle
//! statistic averages `A_j(a, b)`, the coordinate sieve over permutations,
//! and conversions between factorial moments and probabilities.
//!
//! Identities are evaluated in exact rational arithmetic; only the Stirling
//! type lower bound on binomials is a float.

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::budget::Budget;
use crate::error::{Error, Result};

/// Exact rational with arbitrary-precision numerator and denominator.
pub type Rational = BigRational;

/// Largest `j` accepted by [`a_cycle`].
pub const A_CYCLE_MAX_J: usize = 24;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(n, k)` for nonnegative integers, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn binomial_u(n: u64, k: u64) -> BigUint {
    binomial(n, k).to_biguint().expect("nonnegative")
}

/// Generalized binomial `C(x, k) = x (x-1) ... (x-k+1) / k!` for rational `x`.
pub fn gen_binomial(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= x - rat_int(i as i64);
    }
    acc / rat_int(factorial(k as u64))
}

/// Natural log of a positive rational, safe for values outside `f64` range.
pub fn ln_rational(x: &Rational) -> f64 {
    assert!(x.is_positive(), "log of a non-positive rational");
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().expect("finite").ln();
    }
    let shift = bits - 64;
    let top: BigInt = n >> shift;
    top.to_f64().expect("finite").ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `μ_m(r) = Σ_{j=0}^{m} (-1)^j C(n-r, j) q^{-j}`.
pub fn mu(m: usize, r: usize, n: usize, q: u64) -> Rational {
    assert!(r <= n, "mu requires r <= n");
    assert!(q >= 2, "mu requires q >= 2");
    let top = (m).min(n - r);
    let qb = BigInt::from(q);
    let mut acc = Rational::zero();
    for j in 0..=top {
        let term = Rational::new(binomial((n - r) as u64, j as u64), qb.pow(j as u32));
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Cycle counts of a permutation: all cycles, and those whose length is not
/// a multiple of `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleStats {
    pub l: usize,
    pub l_prime: usize,
}

impl CycleStats {
    pub fn of_cycle_lengths(lengths: &[usize], p: u64) -> Self {
        CycleStats {
            l: lengths.len(),
            l_prime: lengths.iter().filter(|&&len| len as u64 % p != 0).count(),
        }
    }
}

/// Cycle lengths of a permutation given in one-line notation.
pub fn cycle_lengths(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        out.push(len);
    }
    out
}

/// Integer partitions of `j` as `(part, multiplicity)` lists, parts descending.
pub fn partitions(j: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<(usize, usize)>>) {
        if rest == 0 {
            let grouped = cur
                .iter()
                .copied()
                .chunk_by(|&x| x)
                .into_iter()
                .map(|(k, g)| (k, g.count()))
                .collect();
            out.push(grouped);
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(j, j, &mut Vec::new(), &mut out);
    out
}

/// Number of permutations of `S_j` with the given cycle type:
/// `j! / Π i^{c_i} c_i!`.
pub fn cycle_type_size(j: usize, cycle_type: &[(usize, usize)]) -> BigInt {
    let mut den = BigInt::one();
    for &(len, count) in cycle_type {
        den *= BigInt::from(len).pow(count as u32) * factorial(count as u64);
    }
    factorial(j as u64) / den
}

/// `A_j(a, b) = (1/j!) Σ_{τ ∈ S_j} a^{l(τ)} b^{l'(τ)}`, summed over cycle
/// types with their class sizes.
pub fn a_cycle(j: usize, a: &Rational, b: &Rational, p: u64) -> Result<Rational> {
    if j > A_CYCLE_MAX_J {
        return Err(Error::budget("A_j by cycle types", j, A_CYCLE_MAX_J as u64));
    }
    let mut acc = Rational::zero();
    for ct in partitions(j) {
        let lengths: Vec<usize> = ct
            .iter()
            .flat_map(|&(len, c)| std::iter::repeat(len).take(c))
            .collect();
        let stats = CycleStats::of_cycle_lengths(&lengths, p);
        let w = pow_rat(a, stats.l) * pow_rat(b, stats.l_prime);
        acc += w * rat_int(cycle_type_size(j, &ct));
    }
    Ok(acc / rat_int(factorial(j as u64)))
}

fn pow_rat(x: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

/// Coefficients `0..=len` of `(1 - z^step)^{-alpha}`.
fn neg_binomial_series(alpha: &Rational, step: usize, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len + 1];
    // c_i = c_{i-1} (alpha + i - 1) / i
    let mut c = Rational::one();
    let mut i = 0usize;
    while i * step <= len {
        out[i * step] = c.clone();
        i += 1;
        c = c * (alpha + rat_int(i as i64 - 1)) / rat_int(i as i64);
    }
    out
}

/// `[z^j] (1-z)^{-ab} (1-z^p)^{-(a-ab)/p}` by multiplying the two expanded
/// series.
pub fn a_series(j: usize, a: &Rational, b: &Rational, p: u64) -> Rational {
    let ab = a * b;
    let beta = (a - &ab) / rat_int(p as i64);
    let s1 = neg_binomial_series(&ab, 1, j);
    let s2 = neg_binomial_series(&beta, p as usize, j);
    (0..=j).map(|i| &s1[i] * &s2[j - i]).sum()
}

/// `Σ_{0 ≤ i ≤ j/p} C(ab+j-ip-1, j-ip) C((a-ab)/p+i-1, i)`.
pub fn a_closed(j: usize, a: &Rational, b: &Rational, p: u64) -> Rational {
    let ab = a * b;
    let beta = (a - &ab) / rat_int(p as i64);
    let p = p as usize;
    (0..=j / p)
        .map(|i| {
            let m = j - i * p;
            gen_binomial(&(&ab + rat_int(m as i64 - 1)), m)
                * gen_binomial(&(&beta + rat_int(i as i64 - 1)), i)
        })
        .sum()
}

/// A table of values `h(x_1, …, x_j)` over `D^j`, `D = {0, …, n-1}`;
/// the tuple index has `x_1` as its least significant base-`n` digit.
#[derive(Clone, Debug)]
pub struct HTable {
    pub n: usize,
    pub j: usize,
    pub values: Vec<Rational>,
}

impl HTable {
    pub fn from_fn(n: usize, j: usize, f: impl Fn(&[usize]) -> Rational) -> Self {
        let total = n.pow(j as u32);
        let mut tuple = vec![0usize; j];
        let values = (0..total)
            .map(|mut idx| {
                for x in tuple.iter_mut() {
                    *x = idx % n;
                    idx /= n;
                }
                f(&tuple)
            })
            .collect();
        HTable { n, j, values }
    }

    pub fn get(&self, tuple: &[usize]) -> &Rational {
        let idx = tuple.iter().rev().fold(0usize, |acc, &x| acc * self.n + x);
        &self.values[idx]
    }
}

/// Both sides of the coordinate sieve: the sum of `h` over tuples of
/// distinct elements, and `Σ_τ (-1)^{j - l(τ)} H(τ)` where `H(τ)` sums `h`
/// over tuples constant on the cycles of `τ`.
pub fn lw_sieve_check(table: &HTable, budget: &Budget) -> Result<(Rational, Rational)> {
    let (n, j) = (table.n, table.j);
    let size = (n as u64).checked_pow(j as u32);
    budget.check_enum("D^j tuples", size)?;
    if table.values.len() as u64 != size.unwrap() {
        return Err(Error::Validation(format!(
            "h table has {} entries, expected {}^{}",
            table.values.len(),
            n,
            j
        )));
    }

    let mut direct = Rational::zero();
    for tuple in (0..j).map(|_| 0..n).multi_cartesian_product() {
        if tuple.iter().all_unique() {
            direct += table.get(&tuple);
        }
    }
    if j == 0 {
        direct = table.values[0].clone();
    }

    let mut sieve = Rational::zero();
    for perm in (0..j).permutations(j) {
        // label each position by its cycle
        let mut label = vec![usize::MAX; j];
        let mut cycles = 0;
        for start in 0..j {
            if label[start] != usize::MAX {
                continue;
            }
            let mut i = start;
            while label[i] == usize::MAX {
                label[i] = cycles;
                i = perm[i];
            }
            cycles += 1;
        }
        let mut h_tau = Rational::zero();
        let mut tuple = vec![0usize; j];
        for assignment in 0..n.pow(cycles as u32) {
            let mut a = assignment;
            let vals: Vec<usize> = (0..cycles)
                .map(|_| {
                    let v = a % n;
                    a /= n;
                    v
                })
                .collect();
            for (pos, x) in tuple.iter_mut().enumerate() {
                *x = vals[label[pos]];
            }
            h_tau += table.get(&tuple);
        }
        if (j - cycles) % 2 == 0 {
            sieve += h_tau;
        } else {
            sieve -= h_tau;
        }
    }
    Ok((direct, sieve))
}

/// `P(Y = r) = Σ_{j ≥ r} (-1)^{j-r} C(j, r) E[C(Y, j)]` for `r = 0..=support`.
pub fn probs_from_moments(moments: &[Rational], support: usize) -> Result<Vec<Rational>> {
    let m = |j: usize| moments.get(j).cloned().unwrap_or_else(Rational::zero);
    let probs: Vec<Rational> = (0..=support)
        .map(|r| {
            (r..=support)
                .map(|j| {
                    let t = m(j) * rat_int(binomial(j as u64, r as u64));
                    if (j - r) % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum()
        })
        .collect();
    if let Some((r, p)) = probs.iter().enumerate().find(|(_, p)| p.is_negative()) {
        return Err(Error::Validation(format!(
            "moments are inconsistent: P(Y = {r}) = {p} < 0"
        )));
    }
    Ok(probs)
}

/// `C(m, r) E[C(Y, m)]`, the error of stopping the alternating sum before `j = m`.
pub fn truncation_gap(moments: &[Rational], m: usize, r: usize) -> Rational {
    let em = moments.get(m).cloned().unwrap_or_else(Rational::zero);
    em * rat_int(binomial(m as u64, r as u64))
}

/// `E[C(Y, j)]` for `j = 0..=j_max` from a probability vector.
pub fn factorial_moments_from_probs(probs: &[Rational], j_max: usize) -> Vec<Rational> {
    (0..=j_max)
        .map(|j| {
            probs
                .iter()
                .enumerate()
                .map(|(r, p)| p * rat_int(binomial(r as u64, j as u64)))
                .sum()
        })
        .collect()
}

/// `(M / (2π m (M-m)))^{1/2} (M/m)^m (M/(M-m))^{M-m} e^{-1/6}`, a lower
/// bound on `C(M, m)` for `0 < m < M`.
pub fn binom_lower_bound(big_m: u64, m: u64) -> Result<f64> {
    if m == 0 || m >= big_m {
        return Err(Error::Domain(format!("need 0 < m < M, got m = {m}, M = {big_m}")));
    }
    let (bm, mf) = (big_m as f64, m as f64);
    let rest = bm - mf;
    let log = 0.5 * (bm / (2.0 * std::f64::consts::PI * mf * rest)).ln()
        + mf * (bm / mf).ln()
        + rest * (bm / rest).ln()
        - 1.0 / 6.0;
    Ok(log.exp())
}
