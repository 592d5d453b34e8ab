//! Asymptotic approximations, error envelopes, certified right-hand sides of
//! the character-sum bounds, and the regime predicates.
//!
//! Anything asserted as an inequality against exact data is computed as an
//! exact rational upper value: `√q` is replaced by a rational rounded up at
//! 64 fractional bits, and every quantity it feeds is monotone in it.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::comb::{a_series, binomial, factorial, mu, rat_int, to_f64, Rational};
use crate::error::{Error, Result};

/// Default small constant in the regime predicates.
pub const DEFAULT_DELTA0: f64 = 0.05;

/// `(c, γ, δ₀)` for concrete `(q, p, k, t, ℓ, n)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Regime {
    pub q: u64,
    pub p: u64,
    pub k: usize,
    pub t: usize,
    pub ell: usize,
    pub n: usize,
    pub c: f64,
    pub gamma: f64,
    pub delta0: f64,
}

impl Regime {
    pub fn new(q: u64, p: u64, k: usize, t: usize, ell: usize, n: usize, delta0: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("n = |D| must be positive".into()));
        }
        if t + ell == 0 {
            return Err(Error::Validation("t + ell must be positive".into()));
        }
        if !(delta0 > 0.0) {
            return Err(Error::Validation(format!("delta0 must be positive, got {delta0}")));
        }
        Ok(Regime {
            q,
            p,
            k,
            t,
            ell,
            n,
            c: k as f64 / q as f64,
            gamma: (t + ell - 1) as f64 * (q as f64).sqrt() / n as f64,
            delta0,
        })
    }
}

fn entropy(c: f64) -> f64 {
    c * (1.0 / c).ln() + (1.0 - c) * (1.0 / (1.0 - c)).ln()
}

pub fn condition_a_lhs(p: u64, c: f64) -> f64 {
    let p = p as f64;
    (p - 1.0) / p * c * (1.0 / c).ln() + (1.0 - c) * (1.0 / (1.0 - c)).ln() - (1.0 + c) / p * (1.0 + c).ln()
}

pub fn condition_a_at(p: u64, c: f64, gamma: f64, delta0: f64) -> bool {
    c > 0.0 && c < 1.0 && condition_a_lhs(p, c) >= gamma * (2.0 * p as f64).ln() + delta0
}

pub fn condition_a(r: &Regime) -> bool {
    condition_a_at(r.p, r.c, r.gamma, r.delta0)
}

/// Outcome of the second predicate. `limit_hypothesis` is always set: the
/// predicate is stated for `p → ∞`, and holding at one finite `p` does not
/// establish it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionB {
    pub holds: bool,
    pub limit_hypothesis: bool,
}

pub fn condition_b_at(p: u64, c: f64, gamma: f64, delta0: f64) -> ConditionB {
    let holds = c > 0.0
        && c < 1.0
        && gamma > 0.0
        && gamma >= c / p as f64
        && entropy(c) >= gamma + gamma * ((c + gamma) / gamma).ln() + delta0;
    ConditionB {
        holds,
        limit_hypothesis: true,
    }
}

pub fn condition_b(r: &Regime) -> ConditionB {
    condition_b_at(r.p, r.c, r.gamma, r.delta0)
}

/// Largest `γ` covered by the sufficient range for the first predicate:
/// `(p-1)/(p ln 2p) · c ln(1/c)`.
pub fn sufficient_gamma_max(p: u64, c: f64) -> f64 {
    let pf = p as f64;
    (pf - 1.0) / (pf * (2.0 * pf).ln()) * c * (1.0 / c).ln()
}

/// `C(n, r) q^{-r} (1 - 1/q)^{n-r}`, exactly.
pub fn binomial_approx_exact(r: usize, n: usize, q: u64) -> Rational {
    if r > n {
        return Rational::zero();
    }
    let qb = BigInt::from(q);
    Rational::new(
        binomial(n as u64, r as u64) * (&qb - BigInt::one()).pow((n - r) as u32),
        qb.pow(n as u32),
    )
}

pub fn binomial_approx(r: usize, n: usize, q: u64) -> f64 {
    to_f64(&binomial_approx_exact(r, n, q))
}

/// `e^{-n/q} (n/q)^r / r!`.
pub fn poisson_approx(r: usize, n: usize, q: u64) -> f64 {
    let lambda = n as f64 / q as f64;
    if lambda == 0.0 {
        return if r == 0 { 1.0 } else { 0.0 };
    }
    let ln_fact: f64 = (1..=r).map(|i| (i as f64).ln()).sum();
    (r as f64 * lambda.ln() - lambda - ln_fact).exp()
}

/// `2/(k-r)! · C(n, r) q^{-r}`, exactly.
pub fn thm1_error_envelope_exact(r: usize, n: usize, q: u64, k: usize) -> Result<Rational> {
    if r >= k {
        return Err(Error::Domain(format!("envelope needs r < k, got r = {r}, k = {k}")));
    }
    Ok(Rational::new(
        BigInt::from(2) * binomial(n as u64, r as u64),
        factorial((k - r) as u64) * BigInt::from(q).pow(r as u32),
    ))
}

pub fn thm1_error_envelope(r: usize, n: usize, q: u64, k: usize) -> Result<f64> {
    thm1_error_envelope_exact(r, n, q, k).map(|x| to_f64(&x))
}

/// `μ_{k+t+ℓ-r}(r) C(n, r) q^{-r}`.
pub fn thm2_formula(r: usize, n: usize, q: u64, k: usize, t: usize, ell: usize) -> Rational {
    let top = k + t + ell;
    if r > n || r > top {
        return Rational::zero();
    }
    mu(top - r, r, n, q) * Rational::new(binomial(n as u64, r as u64), BigInt::from(q).pow(r as u32))
}

/// `q^k · thm2_formula(r, q, q, k, 0, ℓ)`.
pub fn rs_asym_exact(r: usize, q: u64, k: usize, ell: usize) -> Rational {
    thm2_formula(r, q as usize, q, k, 0, ell) * rat_int(BigInt::from(q).pow(k as u32))
}

pub fn rs_asym(r: usize, q: u64, k: usize, ell: usize) -> f64 {
    to_f64(&rs_asym_exact(r, q, k, ell))
}

const SQRT_BITS: u32 = 64;

/// A rational `s ≥ √x` with `s - √x < 2^{-64}`.
pub fn sqrt_upper(x: u64) -> Rational {
    let scaled = BigUint::from(x) << (2 * SQRT_BITS);
    let mut root = scaled.sqrt();
    if &root * &root != scaled {
        root += 1u32;
    }
    Rational::new(BigInt::from(root), BigInt::one() << SQRT_BITS)
}

/// `(t+ℓ-1) s / n` with `s ≥ √q` from [`sqrt_upper`].
pub fn gamma_upper(n: usize, q: u64, t: usize, ell: usize) -> Rational {
    rat_int((t + ell) as i64 - 1) * sqrt_upper(q) / rat_int(n as i64)
}

/// Exact test of `(t+ℓ-1) √q ≤ n`.
pub fn gamma_at_most_one(n: usize, q: u64, t: usize, ell: usize) -> bool {
    let w = BigUint::from(t + ell - 1);
    &w * &w * q <= BigUint::from(n) * n
}

fn check_char_bound_hypotheses(n: usize, q: u64, t: usize, ell: usize) -> Result<()> {
    if ell == 0 {
        return Err(Error::Hypothesis("ell >= 1 is required".into()));
    }
    if n == 0 {
        return Err(Error::Hypothesis("n = |D| must be positive".into()));
    }
    if !gamma_at_most_one(n, q, t, ell) {
        return Err(Error::Hypothesis(format!(
            "gamma = (t+ell-1) sqrt(q)/n > 1 at n = {n}, q = {q}, t = {t}, ell = {ell}"
        )));
    }
    Ok(())
}

/// `q^{e/2}` rounded up.
fn half_power_upper(q: u64, e: usize) -> Rational {
    let whole = rat_int(BigInt::from(q).pow((e / 2) as u32));
    if e % 2 == 1 {
        whole * sqrt_upper(q)
    } else {
        whole
    }
}

/// `C(t+ℓ-1, k+t+ℓ-j) q^{(k+t+ℓ-j)/2} A_j(n, γ)`, rounded up.
fn char_term_upper(j: usize, n: usize, q: u64, k: usize, t: usize, ell: usize, p: u64) -> Rational {
    let e = k + t + ell - j;
    let c = binomial((t + ell - 1) as u64, e as u64);
    if c.is_zero() {
        return Rational::zero();
    }
    rat_int(c) * half_power_upper(q, e) * a_series(j, &rat_int(n as i64), &gamma_upper(n, q, t, ell), p)
}

/// Certified upper value of `(|E|-1)/|E| · C(t+ℓ-1, t+ℓ+k-j) q^{(t+ℓ+k-j)/2} A_j(n, γ)`.
#[allow(clippy::too_many_arguments)]
pub fn prop5_rhs(j: usize, n: usize, q: u64, p: u64, k: usize, t: usize, ell: usize, e_size: &BigUint) -> Result<Rational> {
    check_char_bound_hypotheses(n, q, t, ell)?;
    if j <= k || j > k + t + ell {
        return Err(Error::Domain(format!("need k < j <= k+t+ell, got j = {j}")));
    }
    let frac = Rational::new(BigInt::from(e_size.clone()) - 1, BigInt::from(e_size.clone()));
    Ok(frac * char_term_upper(j, n, q, k, t, ell, p))
}

/// `|W_j - Φ_{k+t+ℓ-j}(Q)/Φ_t(Q) · C(n, j) q^{-ℓ}|`.
pub fn prop5_lhs(w: &BigUint, phi_m: &BigUint, phi_t: &BigUint, n: usize, j: usize, q: u64, ell: usize) -> Rational {
    let main = Rational::new(
        BigInt::from(phi_m.clone()) * binomial(n as u64, j as u64),
        BigInt::from(phi_t.clone()) * BigInt::from(q).pow(ell as u32),
    );
    (rat_int(BigInt::from(w.clone())) - main).abs()
}

/// Certified upper value of
/// `q^{-k} Σ_{j=k+1}^{k+t+ℓ} C(j, r) C(t+ℓ-1, k+t+ℓ-j) q^{(k+t+ℓ-j)/2} A_j(n, γ)`.
pub fn thm5_rhs(r: usize, n: usize, q: u64, p: u64, k: usize, t: usize, ell: usize) -> Result<Rational> {
    check_char_bound_hypotheses(n, q, t, ell)?;
    let sum: Rational = (k + 1..=k + t + ell)
        .map(|j| rat_int(binomial(j as u64, r as u64)) * char_term_upper(j, n, q, k, t, ell, p))
        .sum();
    Ok(sum / rat_int(BigInt::from(q).pow(k as u32)))
}

/// `|P(Y = r) - μ_{k-r}(r) C(n,r) q^{-r} - C(n,r) q^{-(k+ℓ)} Σ_j (-1)^{j-r} C(n-r, j-r) Φ_{k+t+ℓ-j}/Φ_t|`,
/// with `phi(m) = Φ_m(Q)`.
#[allow(clippy::too_many_arguments)]
pub fn thm5_lhs(
    prob: &Rational,
    r: usize,
    n: usize,
    q: u64,
    k: usize,
    t: usize,
    ell: usize,
    phi: impl Fn(usize) -> BigUint,
) -> Rational {
    if r > n {
        return prob.abs();
    }
    let qb = BigInt::from(q);
    let cnr = binomial(n as u64, r as u64);
    let low = if r <= k {
        mu(k - r, r, n, q) * Rational::new(cnr.clone(), qb.pow(r as u32))
    } else {
        Rational::zero()
    };
    let phi_t = BigInt::from(phi(t));
    let mut high = Rational::zero();
    for j in (k + 1).max(r)..=k + t + ell {
        let term = Rational::new(
            binomial((n - r) as u64, (j - r) as u64) * BigInt::from(phi(k + t + ell - j)),
            phi_t.clone(),
        );
        if (j - r) % 2 == 0 {
            high += term;
        } else {
            high -= term;
        }
    }
    high = high * Rational::new(cnr, qb.pow((k + ell) as u32));
    (prob - low - high).abs()
}

/// Which bound on `ln A_j(n, γ)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Lemma6Variant {
    /// `(j/p) ln((n+j)/j) + (n(1-γ)/p) ln((n+j)/n) + nγ ln(2p)`, for `1 ≤ j ≤ n`, `0 ≤ γ ≤ 1`.
    A,
    /// `j ln((nγ+j)/j) + nγ ln((nγ+j)/(nγ)) + (n(1-γ)/p) ln 3`, for `1 ≤ j ≤ 2pnγ`, `0 < γ ≤ 1`.
    B,
}

pub fn lemma6_bound(j: usize, n: usize, gamma: f64, p: u64, variant: Lemma6Variant) -> Result<f64> {
    let (jf, nf, pf) = (j as f64, n as f64, p as f64);
    match variant {
        Lemma6Variant::A => {
            if j < 1 || j > n || !(0.0..=1.0).contains(&gamma) {
                return Err(Error::Domain(format!(
                    "variant a needs 1 <= j <= n and 0 <= gamma <= 1, got j = {j}, n = {n}, gamma = {gamma}"
                )));
            }
            Ok(jf / pf * ((nf + jf) / jf).ln()
                + nf * (1.0 - gamma) / pf * ((nf + jf) / nf).ln()
                + nf * gamma * (2.0 * pf).ln())
        }
        Lemma6Variant::B => {
            if !(gamma > 0.0 && gamma <= 1.0) || j < 1 || jf > 2.0 * pf * nf * gamma {
                return Err(Error::Domain(format!(
                    "variant b needs 1 <= j <= 2 p n gamma and 0 < gamma <= 1, got j = {j}, n = {n}, gamma = {gamma}"
                )));
            }
            let ng = nf * gamma;
            Ok(jf * ((ng + jf) / jf).ln() + ng * ((ng + jf) / ng).ln() + nf * (1.0 - gamma) / pf * 3f64.ln())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comb::{ln_rational, rat};
    use proptest::prelude::*;

    #[test]
    fn approximation_examples() {
        assert!((binomial_approx(0, 5, 5) - 0.8f64.powi(5)).abs() < 1e-15);
        assert!((poisson_approx(0, 7, 7) - (-1f64).exp()).abs() < 1e-15);
        assert_eq!(binomial_approx_exact(1, 2, 2), rat(1, 2));
        let total: f64 = (0..60).map(|r| poisson_approx(r, 9, 4)).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn envelope_examples() {
        assert_eq!(thm1_error_envelope_exact(1, 2, 2, 3).unwrap(), rat(1, 1));
        assert!(matches!(thm1_error_envelope(3, 5, 5, 3), Err(Error::Domain(_))));
        let vals: Vec<f64> = (2..10).map(|k| thm1_error_envelope(1, 6, 7, k).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn thm2_examples() {
        assert_eq!(thm2_formula(0, 5, 5, 3, 0, 1), mu(4, 0, 5, 5));
        assert_eq!(thm2_formula(3, 3, 3, 2, 0, 1), rat(1, 27));
        assert_eq!(thm2_formula(2, 3, 3, 2, 0, 1), rat(2, 9));
        assert_eq!(rs_asym_exact(2, 3, 1, 1), rat(1, 1));
        for r in 0..=5 {
            let want = thm2_formula(r, 7, 7, 3, 0, 2) * rat_int(BigInt::from(343));
            assert_eq!(rs_asym_exact(r, 7, 3, 2), want);
        }
        // r = k + ell: C(q, k+ell) q^{-ell}
        assert_eq!(rs_asym_exact(4, 5, 3, 1), rat(5, 5));
    }

    #[test]
    fn sqrt_upper_brackets() {
        for x in [2u64, 3, 4, 5, 16, 25, 1000] {
            let s = sqrt_upper(x);
            assert!(&s * &s >= rat_int(x as i64));
            let below = &s - Rational::new(BigInt::one(), BigInt::one() << 62);
            assert!(&below * &below < rat_int(x as i64));
        }
        assert_eq!(sqrt_upper(16), rat(4, 1));
    }

    #[test]
    fn prop5_examples() {
        let one = BigUint::one();
        assert!(prop5_rhs(3, 4, 4, 2, 2, 0, 1, &one).unwrap().is_zero());
        let e = BigUint::from(4u32);
        // j = k+t+ell collapses to (|E|-1)/|E| A_j(n, gamma)
        let v = prop5_rhs(3, 4, 4, 2, 2, 0, 1, &e).unwrap();
        assert_eq!(v, rat(3, 4) * a_series(3, &rat(4, 1), &Rational::zero(), 2));
        assert!(matches!(prop5_rhs(3, 2, 9, 3, 2, 1, 1, &e), Err(Error::Hypothesis(_))));
        assert!(matches!(thm5_rhs(1, 4, 4, 2, 2, 0, 0), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn lemma6_examples() {
        for p in [2u64, 3, 5] {
            for n in 1..=12usize {
                let a = lemma6_bound(1, n, 1.0, p, Lemma6Variant::A).unwrap();
                let want = ((n + 1) as f64).ln() / p as f64 + n as f64 * (2.0 * p as f64).ln();
                assert!((a - want).abs() < 1e-12);
                assert!(a >= (n as f64).ln());
                let b = lemma6_bound(1, n, 1.0, p, Lemma6Variant::B).unwrap();
                assert!(b >= (n as f64).ln());
                assert_eq!(ln_rational(&a_series(1, &rat_int(n as i64), &rat(1, 1), p)), (n as f64).ln());
            }
        }
        assert!(lemma6_bound(5, 4, 0.5, 2, Lemma6Variant::A).is_err());
        assert!(lemma6_bound(1, 4, 0.0, 2, Lemma6Variant::B).is_err());
        assert!(lemma6_bound(20, 4, 0.5, 2, Lemma6Variant::B).is_err());
    }

    #[test]
    fn condition_examples() {
        let lhs = condition_a_lhs(2, 1.0 / 3.0);
        assert!((lhs - 0.26162).abs() < 1e-4);
        assert!(condition_a_at(2, 1.0 / 3.0, 0.0, 0.1));
        assert!(!condition_a_at(2, 0.99, 0.05, 0.1));
        assert!(!condition_b_at(5, 0.3, 0.0, 0.05).holds);
        let b = condition_b_at(1_000_003, 0.3, 0.01, 0.05);
        assert!(b.holds && b.limit_hypothesis);
        let r = Regime::new(16, 2, 4, 0, 1, 16, DEFAULT_DELTA0).unwrap();
        assert_eq!(r.c, 0.25);
        assert_eq!(r.gamma, 0.0);
        assert!(Regime::new(16, 2, 4, 0, 1, 16, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn condition_a_antitone(p in prop::sample::select(vec![2u64, 3, 5, 7]), c in 0.01f64..0.99,
                                g1 in 0.0f64..1.0, g2 in 0.0f64..1.0, d1 in 0.0001f64..0.5, d2 in 0.0001f64..0.5) {
            let (glo, ghi) = if g1 <= g2 { (g1, g2) } else { (g2, g1) };
            let (dlo, dhi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
            if condition_a_at(p, c, ghi, dhi) {
                prop_assert!(condition_a_at(p, c, glo, dlo));
            }
        }

        #[test]
        fn mu_sandwich(q in 2u64..10, n_off in 0usize..8, r_off in 0usize..8, m in 0usize..12) {
            let n = (q as usize).saturating_sub(n_off).max(1);
            let r = r_off.min(n);
            let v = mu(m, r, n, q);
            if m >= 1 {
                prop_assert!(v >= Rational::new(BigInt::from(q as i64 - n as i64 + r as i64), BigInt::from(q)));
            }
            let lim = Rational::new((BigInt::from(q) - BigInt::one()).pow((n - r) as u32), BigInt::from(q).pow((n - r) as u32));
            let gap = Rational::new(binomial((n - r) as u64, m as u64 + 1), BigInt::from(q).pow(m as u32 + 1));
            prop_assert!((v - lim).abs() <= gap);
        }
    }
}
