//! Exact distributions of the zero count `Y_k(ε)`, the high factorial
//! moments `W_j(ε)`, generating-function checks, and Reed–Solomon distance
//! rows.
//!
//! The members of a class `ε` in degree `k + t + ℓ` are `f_0 + Q g` with
//! `deg g < k`. For `α` in `D` (never a zero of `Q`), `f(α) = 0` exactly when
//! `g(α) = -f_0(α)/Q(α)`, so the root count of each member is read off the
//! value vector `(g(α))_α`, updated incrementally as `g` runs through its
//! coefficient odometer.

use std::fmt;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::budget::Budget;
use crate::chars::CharacterTable;
use crate::comb::{binomial, binomial_u, Rational};
use crate::error::{Error, Result};
use crate::ffield::{enumerate_monic, monic_count, FieldSpec, FqElement, Polynomial};
use crate::hayes::{free_poly_at, ClassGroup, HayesParams};
use crate::par::{self, Execution};

/// Rejects repeated elements and zeros of `Q`.
pub fn check_domain(params: &HayesParams, domain: &[FqElement]) -> Result<()> {
    let field = params.field();
    let mut seen = vec![false; field.q() as usize];
    for &a in domain {
        if a.index() >= seen.len() {
            return Err(Error::Validation(format!("element {} is not in F_{}", a.index(), field.q())));
        }
        if std::mem::replace(&mut seen[a.index()], true) {
            return Err(Error::Validation(format!("D lists element {} twice", a.index())));
        }
        if field.eval(params.modulus(), a).is_zero() {
            return Err(Error::Validation(format!(
                "D contains {}, a zero of Q = {}",
                a.index(),
                params.modulus()
            )));
        }
    }
    Ok(())
}

/// Histogram of `Y_k(ε)` over the `q^k` members of `ε` of degree `k + t + ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroDistribution {
    pub p: u32,
    pub a: u32,
    pub q: u32,
    pub ell: usize,
    pub t: usize,
    pub modulus: String,
    pub k: usize,
    pub eps: usize,
    pub domain: Vec<FqElement>,
    /// `counts[r]` for `r = 0..=min(n, k + t + ℓ)`.
    pub counts: Vec<BigUint>,
    pub total: BigUint,
}

impl ZeroDistribution {
    pub fn n(&self) -> usize {
        self.domain.len()
    }

    pub fn count(&self, r: usize) -> BigUint {
        self.counts.get(r).cloned().unwrap_or_default()
    }

    pub fn probability(&self, r: usize) -> Rational {
        Rational::new(self.count(r).into(), self.total.clone().into())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }
}

struct CountMap<'a>(&'a [BigUint]);

impl Serialize for CountMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (r, c) in self.0.iter().enumerate() {
            m.serialize_entry(&r.to_string(), &c.to_string())?;
        }
        m.end()
    }
}

impl Serialize for ZeroDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ZeroDistribution", 10)?;
        st.serialize_field("q", &self.q)?;
        st.serialize_field("p", &self.p)?;
        st.serialize_field("a", &self.a)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("ell", &self.ell)?;
        st.serialize_field("Q", &self.modulus)?;
        st.serialize_field("eps", &self.eps)?;
        st.serialize_field("D", &self.domain.iter().map(|a| a.index()).collect::<Vec<_>>())?;
        st.serialize_field("total", &self.total.to_string())?;
        st.serialize_field("counts", &CountMap(&self.counts))?;
        st.end()
    }
}

struct RootEngine<'a> {
    field: &'a FieldSpec,
    k: usize,
    q: usize,
    n: usize,
    targets: Vec<FqElement>,
    // alpha^i, laid out [i * n + a]
    powers: Vec<FqElement>,
    // change of g(alpha) when digit i steps from c to c+1 (mod q), laid out
    // [(i * q + c) * n + a]
    steps: Vec<FqElement>,
}

impl<'a> RootEngine<'a> {
    fn new(field: &'a FieldSpec, base: &Polynomial, modulus: &Polynomial, k: usize, domain: &[FqElement]) -> Self {
        let q = field.q() as usize;
        let n = domain.len();
        let targets = domain
            .iter()
            .map(|&a| {
                let qa = field.eval(modulus, a);
                field.neg(field.div(field.eval(base, a), qa).expect("alpha is not a zero of Q"))
            })
            .collect();
        let mut powers = Vec::with_capacity(k * n);
        for i in 0..k {
            powers.extend(domain.iter().map(|&a| field.pow(a, i as u64)));
        }
        let elem = |c: usize| field.element(c as u32).expect("index below q");
        let mut steps = Vec::with_capacity(k * q * n);
        for i in 0..k {
            for c in 0..q {
                let diff = field.sub(elem((c + 1) % q), elem(c));
                steps.extend((0..n).map(|a| field.mul(diff, powers[i * n + a])));
            }
        }
        RootEngine {
            field,
            k,
            q,
            n,
            targets,
            powers,
            steps,
        }
    }

    fn hits(&self, vals: &[u16]) -> usize {
        vals.iter().zip(&self.targets).filter(|(&v, t)| v as usize == t.index()).count()
    }

    fn histogram(&self, start: u64, end: u64) -> Vec<u64> {
        let (q, n, field) = (self.q, self.n, self.field);
        let mut hist = vec![0u64; n + 1];
        let mut digits = vec![0usize; self.k];
        let mut rest = start;
        for d in digits.iter_mut() {
            *d = (rest % q as u64) as usize;
            rest /= q as u64;
        }
        let mut acc = vec![FqElement::ZERO; n];
        for (i, &d) in digits.iter().enumerate() {
            let c = field.element(d as u32).expect("digit below q");
            for (a, v) in acc.iter_mut().enumerate() {
                *v = field.add(*v, field.mul(c, self.powers[i * n + a]));
            }
        }
        let mut vals: Vec<u16> = acc.iter().map(|v| v.index() as u16).collect();
        hist[self.hits(&vals)] += 1;
        for _ in start + 1..end {
            let mut i = 0;
            loop {
                let c = digits[i];
                let step = &self.steps[(i * q + c) * n..(i * q + c + 1) * n];
                for (v, &s) in vals.iter_mut().zip(step) {
                    *v = field.add_row(s)[*v as usize];
                }
                if c + 1 < q {
                    digits[i] = c + 1;
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
            hist[self.hits(&vals)] += 1;
        }
        hist
    }
}

fn add_hist(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

pub fn exact_distribution(
    group: &ClassGroup,
    eps: usize,
    k: usize,
    domain: &[FqElement],
    budget: &Budget,
    exec: Execution,
) -> Result<ZeroDistribution> {
    let params = group.params();
    check_domain(params, domain)?;
    if eps >= group.order() {
        return Err(Error::Validation(format!("class {eps} out of range 0..{}", group.order())));
    }
    let field = group.field();
    let total = budget.check_enum("class members q^k", monic_count(field.q(), k))?;
    let d = k + params.t() + params.ell();
    let base = group.member_base(eps, d)?;
    let engine = RootEngine::new(field, &base, params.modulus(), k, domain);
    let hist = par::fold_range(exec, total, |s, e| engine.histogram(s, e), add_hist)
        .expect("a class has at least one member");
    let top = domain.len().min(d);
    debug_assert!(hist[top + 1..].iter().all(|&c| c == 0));
    Ok(ZeroDistribution {
        p: field.p(),
        a: field.a(),
        q: field.q(),
        ell: params.ell(),
        t: params.t(),
        modulus: params.modulus().to_string(),
        k,
        eps,
        domain: domain.to_vec(),
        counts: hist[..=top].iter().map(|&c| BigUint::from(c)).collect(),
        total: BigUint::from(total),
    })
}

/// Plain enumeration of the members with a root count per member. Used as
/// an oracle for [`exact_distribution`].
pub fn naive_distribution(
    group: &ClassGroup,
    eps: usize,
    k: usize,
    domain: &[FqElement],
    budget: &Budget,
) -> Result<Vec<u64>> {
    let params = group.params();
    check_domain(params, domain)?;
    let d = k + params.t() + params.ell();
    let mut hist = vec![0u64; domain.len().min(d) + 1];
    for f in group.class_members(eps, d, budget)? {
        hist[crate::ffield::distinct_roots_in(group.field(), &f, domain)] += 1;
    }
    Ok(hist)
}

/// `W_j(ε)` for every class at once: the number of pairs `(g, S)` with
/// `g ∈ M_{k+t+ℓ-j}`, `S` a `j`-subset of `D`, landing in each class.
pub fn w_direct_all(
    group: &ClassGroup,
    j: usize,
    k: usize,
    domain: &[FqElement],
    budget: &Budget,
) -> Result<Vec<BigUint>> {
    let params = group.params();
    check_domain(params, domain)?;
    let field = group.field();
    let mut out = vec![0u64; group.order()];
    let Some(m) = (k + params.t() + params.ell()).checked_sub(j) else {
        return Ok(out.into_iter().map(BigUint::from).collect());
    };
    if j > domain.len() {
        return Ok(out.into_iter().map(BigUint::from).collect());
    }
    let pairs = binomial_u(domain.len() as u64, j as u64) * BigUint::from(field.q()).pow(m as u32);
    budget.check_enum("W_j pairs C(n,j) q^m", pairs.to_u64())?;
    let products: Vec<Polynomial> = domain
        .iter()
        .copied()
        .combinations(j)
        .map(|s| field.product_of_linears(&s))
        .collect();
    for g in enumerate_monic(field, m)? {
        for prod in &products {
            if let Some(c) = group.class_of(&field.poly_mul(&g, prod)) {
                out[c] += 1;
            }
        }
    }
    Ok(out.into_iter().map(BigUint::from).collect())
}

pub fn w_direct(
    group: &ClassGroup,
    j: usize,
    eps: usize,
    k: usize,
    domain: &[FqElement],
    budget: &Budget,
) -> Result<BigUint> {
    Ok(w_direct_all(group, j, k, domain, budget)?.swap_remove(eps))
}

/// `W_j(ε)` through the character expansion.
#[derive(Clone, Debug, Serialize)]
pub struct WCharacter {
    pub value: Complex64,
    /// `Φ_{k+t+ℓ-j}(Q) C(n, j) / |E|`, the trivial character's share.
    #[serde(serialize_with = "serialize_rational")]
    pub main_term: Rational,
    /// The nontrivial characters' share.
    pub remainder: Complex64,
}

pub(crate) fn serialize_rational<S: Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub fn w_character(
    group: &ClassGroup,
    table: &CharacterTable,
    j: usize,
    eps: usize,
    k: usize,
    domain: &[FqElement],
    budget: &Budget,
) -> Result<WCharacter> {
    let params = group.params();
    check_domain(params, domain)?;
    let order = group.order();
    let Some(m) = (k + params.t() + params.ell()).checked_sub(j) else {
        return Ok(WCharacter {
            value: Complex64::zero(),
            main_term: Rational::zero(),
            remainder: Complex64::zero(),
        });
    };
    let hist = group.degree_histogram(m, budget)?;
    let linear: Vec<usize> = domain
        .iter()
        .map(|&a| group.class_of(&group.field().x_minus(a)).expect("alpha is not a zero of Q"))
        .collect();
    let mut remainder = Complex64::zero();
    for chi in 0..table.len() {
        if table.characters()[chi].is_trivial() {
            continue;
        }
        let s_g = table.sum_over_histogram(chi, &hist);
        let e_j = elementary_symmetric(linear.iter().map(|&c| table.value(chi, c)), j);
        remainder += table.value(chi, eps).conj() * s_g * e_j;
    }
    remainder /= order as f64;
    let main_term = Rational::new(
        BigInt::from(params.phi(m)) * binomial(domain.len() as u64, j as u64),
        BigInt::from(order),
    );
    Ok(WCharacter {
        value: remainder + crate::comb::to_f64(&main_term),
        main_term,
        remainder,
    })
}

/// `e_j(x_1, ..., x_n)`.
fn elementary_symmetric(xs: impl Iterator<Item = Complex64>, j: usize) -> Complex64 {
    let mut e = vec![Complex64::zero(); j + 1];
    e[0] = Complex64::one();
    for x in xs {
        for i in (1..=j).rev() {
            let prev = e[i - 1];
            e[i] += prev * x;
        }
    }
    e[j]
}

/// `E[C(Y, j)]` for `j = 0..=j_max`.
pub fn factorial_moments(dist: &ZeroDistribution, j_max: usize) -> Vec<Rational> {
    let total = BigInt::from(dist.total.clone());
    (0..=j_max)
        .map(|j| {
            let s: BigInt = dist
                .counts
                .iter()
                .enumerate()
                .map(|(r, c)| BigInt::from(c.clone()) * binomial(r as u64, j as u64))
                .sum();
            Rational::new(s, total.clone())
        })
        .collect()
}

/// One row of the moment identity: the enumeration side against the
/// closed side (`C(n,j) q^{-j}` or `q^{-k} W_j`).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MomentRow {
    pub j: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub lhs: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub rhs: Rational,
    pub holds: bool,
}

/// Compares factorial moments with the identity for `j = 0..=k+t+ℓ`; `w[i]`
/// is `W_{k+1+i}(ε)`.
pub fn moment_identity(dist: &ZeroDistribution, w: &[BigUint]) -> Result<Vec<MomentRow>> {
    let (k, n, q) = (dist.k, dist.n(), dist.q);
    let top = k + dist.t + dist.ell;
    if w.len() != top - k {
        return Err(Error::Validation(format!("expected {} values of W_j, got {}", top - k, w.len())));
    }
    let moments = factorial_moments(dist, top);
    let qb = BigInt::from(q);
    Ok(moments
        .into_iter()
        .enumerate()
        .map(|(j, lhs)| {
            let rhs = if j <= k {
                Rational::new(binomial(n as u64, j as u64), qb.pow(j as u32))
            } else {
                Rational::new(BigInt::from(w[j - k - 1].clone()), qb.pow(k as u32))
            };
            MomentRow {
                j,
                holds: lhs == rhs,
                lhs,
                rhs,
            }
        })
        .collect())
}

/// Distribution plus the moment identity for one class, `W_j` by pairs.
pub fn check_moments(
    group: &ClassGroup,
    eps: usize,
    k: usize,
    domain: &[FqElement],
    budget: &Budget,
    exec: Execution,
) -> Result<(ZeroDistribution, Vec<MomentRow>)> {
    let dist = exact_distribution(group, eps, k, domain, budget, exec)?;
    let p = group.params();
    let w = (k + 1..=k + p.t() + p.ell())
        .map(|j| w_direct(group, j, eps, k, domain, budget))
        .collect::<Result<Vec<_>>>()?;
    let rows = moment_identity(&dist, &w)?;
    Ok((dist, rows))
}

/// Truncated power series in `z` over the group algebra `Z[u][E]`:
/// `coeffs[d][ε]` is a polynomial in `u`, lowest power first, with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraSeries {
    order: usize,
    degree: usize,
    coeffs: Vec<Vec<Vec<BigInt>>>,
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn upoly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn upoly_add_into(acc: &mut Vec<BigInt>, b: &[BigInt]) {
    if acc.len() < b.len() {
        acc.resize(b.len(), BigInt::zero());
    }
    for (x, y) in acc.iter_mut().zip(b) {
        *x += y;
    }
    trim(acc);
}

impl GroupAlgebraSeries {
    pub fn zero(order: usize, degree: usize) -> Self {
        GroupAlgebraSeries {
            order,
            degree,
            coeffs: vec![vec![Vec::new(); order]; degree + 1],
        }
    }

    /// Truncation degree.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeff(&self, d: usize, eps: usize) -> &[BigInt] {
        &self.coeffs[d][eps]
    }

    /// Adds `upoly(u) z^d ε`; terms beyond the truncation are dropped.
    pub fn add_term(&mut self, d: usize, eps: usize, upoly: &[BigInt]) {
        if d <= self.degree {
            upoly_add_into(&mut self.coeffs[d][eps], upoly);
        }
    }

    pub fn mul(&self, other: &Self, group: &ClassGroup) -> Self {
        let degree = self.degree.min(other.degree);
        let mut out = Self::zero(self.order, degree);
        for d1 in 0..=degree {
            for d2 in 0..=degree - d1 {
                for (e1, a) in self.coeffs[d1].iter().enumerate() {
                    if a.is_empty() {
                        continue;
                    }
                    for (e2, b) in other.coeffs[d2].iter().enumerate() {
                        if b.is_empty() {
                            continue;
                        }
                        out.add_term(d1 + d2, group.mul(e1, e2), &upoly_mul(a, b));
                    }
                }
            }
        }
        out
    }

    /// The `u^0` part summed over classes, per degree.
    pub fn slice_totals(&self) -> Vec<BigInt> {
        self.coeffs
            .iter()
            .map(|row| row.iter().map(|u| u.iter().cloned().sum::<BigInt>()).sum())
            .collect()
    }
}

/// Which identity a mismatch belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GfIdentity {
    /// `F(z)` by definition against its closed form.
    F,
    /// `G(z, u)` by definition against `F(z) Π (1 + (u-1) z ⟨x-α⟩)`.
    G,
    /// The `(u-1)` expansion of `[z^{k+t+ℓ} ε] G` against `W_j` and the
    /// binomial part.
    PgfFormula,
    /// The same slice against the exact distribution.
    PgfDistribution,
}

#[derive(Clone, Debug, Serialize)]
pub struct GfMismatch {
    pub identity: GfIdentity,
    pub degree: usize,
    pub eps: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GfReport {
    pub d_max: usize,
    pub slices_checked: usize,
    pub pgf_checked: usize,
    pub mismatches: Vec<GfMismatch>,
}

impl GfReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn u_minus_one_pow(j: usize) -> Vec<BigInt> {
    (0..=j)
        .map(|i| {
            let c = binomial(j as u64, i as u64);
            if (j - i) % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// Builds `F` and `G` by definition up to `z^{d_max}` and checks them against
/// the closed forms, then checks the `u`-expansion of every degree
/// `k + t + ℓ ≤ d_max` slice against `W_j` and against the exact
/// distribution.
pub fn verify_gf_identities(
    group: &ClassGroup,
    d_max: usize,
    domain: &[FqElement],
    budget: &Budget,
) -> Result<GfReport> {
    let params = group.params();
    check_domain(params, domain)?;
    let field = group.field();
    let order = group.order();
    let low = params.t() + params.ell();
    let q = BigInt::from(field.q());
    let total: Option<u64> = (0..=d_max).try_fold(0u64, |acc, d| acc.checked_add(monic_count(field.q(), d)?));
    budget.check_enum("M_0..M_d_max", total)?;

    let mut f_def = GroupAlgebraSeries::zero(order, d_max);
    let mut g_def = GroupAlgebraSeries::zero(order, d_max);
    for d in 0..=d_max {
        for f in enumerate_monic(field, d)? {
            if let Some(c) = group.class_of(&f) {
                f_def.add_term(d, c, &[BigInt::one()]);
                let r = crate::ffield::distinct_roots_in(field, &f, domain);
                let mut u = vec![BigInt::zero(); r + 1];
                u[r] = BigInt::one();
                g_def.add_term(d, c, &u);
            }
        }
    }

    let mut f_rhs = GroupAlgebraSeries::zero(order, d_max);
    for d in 0..=d_max.min(low.saturating_sub(1)) {
        if d < low {
            for c in 0..order {
                f_rhs.add_term(d, c, f_def.coeff(d, c));
            }
        }
    }
    for d in low..=d_max {
        let coef = [q.pow((d - low) as u32)];
        for c in 0..order {
            f_rhs.add_term(d, c, &coef);
        }
    }

    let mut g_rhs = f_rhs.clone();
    let id = group.identity();
    for &a in domain {
        let c = group.class_of(&field.x_minus(a)).expect("alpha is not a zero of Q");
        let mut factor = GroupAlgebraSeries::zero(order, d_max);
        factor.add_term(0, id, &[BigInt::one()]);
        factor.add_term(1, c, &u_minus_one_pow(1));
        g_rhs = g_rhs.mul(&factor, group);
    }

    let mut mismatches = Vec::new();
    for d in 0..=d_max {
        for c in 0..order {
            if f_def.coeff(d, c) != f_rhs.coeff(d, c) {
                mismatches.push(GfMismatch {
                    identity: GfIdentity::F,
                    degree: d,
                    eps: c,
                });
            }
            if g_def.coeff(d, c) != g_rhs.coeff(d, c) {
                mismatches.push(GfMismatch {
                    identity: GfIdentity::G,
                    degree: d,
                    eps: c,
                });
            }
        }
    }

    let n = domain.len() as u64;
    let mut pgf_checked = 0;
    for k in 0..=d_max.saturating_sub(low) {
        if k + low > d_max {
            break;
        }
        let w: Vec<Vec<BigUint>> = (k + 1..=k + low)
            .map(|j| w_direct_all(group, j, k, domain, budget))
            .collect::<Result<_>>()?;
        for c in 0..order {
            let mut formula = Vec::new();
            for j in 0..=k {
                let scale = binomial(n, j as u64) * q.pow((k - j) as u32);
                let term: Vec<BigInt> = u_minus_one_pow(j).into_iter().map(|x| x * &scale).collect();
                upoly_add_into(&mut formula, &term);
            }
            for (i, wj) in w.iter().enumerate() {
                let scale = BigInt::from(wj[c].clone());
                let term: Vec<BigInt> = u_minus_one_pow(k + 1 + i).into_iter().map(|x| x * &scale).collect();
                upoly_add_into(&mut formula, &term);
            }
            let slice = g_def.coeff(k + low, c);
            if slice != formula.as_slice() {
                mismatches.push(GfMismatch {
                    identity: GfIdentity::PgfFormula,
                    degree: k + low,
                    eps: c,
                });
            }
            let dist = exact_distribution(group, c, k, domain, budget, Execution::Sequential)?;
            let mut counts: Vec<BigInt> = dist.counts.into_iter().map(BigInt::from).collect();
            trim(&mut counts);
            if slice != counts.as_slice() {
                mismatches.push(GfMismatch {
                    identity: GfIdentity::PgfDistribution,
                    degree: k + low,
                    eps: c,
                });
            }
            pgf_checked += 1;
        }
    }

    Ok(GfReport {
        d_max,
        slices_checked: (d_max + 1) * order,
        pgf_checked,
        mismatches,
    })
}

/// `N(f, r)`: codewords of the degree-`< k` Reed–Solomon code over all of
/// `F_q` agreeing with `f` in exactly `r` positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSDistanceRow {
    pub f: Polynomial,
    pub k: usize,
    pub ell: usize,
    pub counts: Vec<BigUint>,
}

impl RSDistanceRow {
    pub fn count(&self, r: usize) -> BigUint {
        self.counts.get(r).cloned().unwrap_or_default()
    }
}

fn check_rs_word(group: &ClassGroup, f: &Polynomial, k: usize) -> Result<()> {
    if group.params().t() != 0 {
        return Err(Error::Validation("distance rows need Q = 1".into()));
    }
    let ell = group.params().ell();
    if !f.is_monic() || f.deg() != k + ell {
        return Err(Error::Validation(format!("received word {f} must be monic of degree {}", k + ell)));
    }
    Ok(())
}

/// Row of `N(f, ·)` from the zero distribution of `⟨f⟩` with `D = F_q`.
pub fn rs_distance_row(
    group: &ClassGroup,
    f: &Polynomial,
    k: usize,
    budget: &Budget,
    exec: Execution,
) -> Result<RSDistanceRow> {
    check_rs_word(group, f, k)?;
    let eps = group.class_of(f).expect("Q = 1 makes every polynomial coprime");
    let domain: Vec<FqElement> = group.field().elements().collect();
    let dist = exact_distribution(group, eps, k, &domain, budget, exec)?;
    Ok(RSDistanceRow {
        f: f.clone(),
        k,
        ell: group.params().ell(),
        counts: dist.counts,
    })
}

/// Counts agreements of `f` with every codeword `(g(x))_{x ∈ F_q}`,
/// `deg g < k`, directly.
pub fn rs_codeword_oracle(field: &FieldSpec, f: &Polynomial, k: usize, budget: &Budget) -> Result<Vec<BigUint>> {
    let total = budget.check_enum("codewords q^k", monic_count(field.q(), k))?;
    let points: Vec<FqElement> = field.elements().collect();
    let received: Vec<FqElement> = points.iter().map(|&x| field.eval(f, x)).collect();
    let mut hist = vec![0u64; points.len() + 1];
    for idx in 0..total {
        let g = free_poly_at(field, k, idx);
        let agree = points
            .iter()
            .zip(&received)
            .filter(|(&x, &y)| field.eval(&g, x) == y)
            .count();
        hist[agree] += 1;
    }
    let last = hist.iter().rposition(|&c| c != 0).unwrap_or(0);
    Ok(hist[..=last].iter().map(|&c| BigUint::from(c)).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WordClass {
    DeepHole,
    Ordinary,
    /// Some codeword is closer than a deep hole allows, but none reaches
    /// agreement `k + ℓ`. Only possible for `ℓ ≥ 2`.
    Neither,
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WordClass::DeepHole => "deep-hole",
            WordClass::Ordinary => "ordinary",
            WordClass::Neither => "neither",
        })
    }
}

pub fn classify_row(row: &RSDistanceRow) -> WordClass {
    if !row.count(row.k + row.ell).is_zero() {
        WordClass::Ordinary
    } else if row.counts.iter().skip(row.k + 1).all(|c| c.is_zero()) {
        WordClass::DeepHole
    } else {
        WordClass::Neither
    }
}

pub fn classify_word(
    group: &ClassGroup,
    f: &Polynomial,
    k: usize,
    budget: &Budget,
    exec: Execution,
) -> Result<WordClass> {
    Ok(classify_row(&rs_distance_row(group, f, k, budget, exec)?))
}

/// Classification of one class of received words.
#[derive(Clone, Debug, Serialize)]
pub struct CensusEntry {
    pub eps: usize,
    pub class: WordClass,
    /// Number of received words in the class (`q^k`).
    pub words: String,
    /// `N(f, r)` for words of this class, as decimal strings.
    pub row: Vec<String>,
}

/// Classifies every received word of degree `k + ℓ`, one class at a time.
pub fn rs_census(group: &ClassGroup, k: usize, budget: &Budget, exec: Execution) -> Result<Vec<CensusEntry>> {
    if group.params().t() != 0 {
        return Err(Error::Validation("distance rows need Q = 1".into()));
    }
    let d = k + group.params().ell();
    let words = BigUint::from(group.field().q()).pow(k as u32).to_string();
    par::map_items(exec, (0..group.order()).collect(), |eps| {
        let f = group.member_base(eps, d)?;
        let row = rs_distance_row(group, &f, k, budget, Execution::Sequential)?;
        Ok(CensusEntry {
            eps,
            class: classify_row(&row),
            words: words.clone(),
            row: row.counts.iter().map(|c| c.to_string()).collect(),
        })
    })
    .into_iter()
    .collect()
}
