//! Characters of `E^{ℓ,Q}`, Dirichlet character sums over `M_j`, and the
//! L-polynomials `P(z, χ) = Σ_f χ(f) z^{deg f}`.
//!
//! The group is split into a direct product of cyclic factors greedily: at
//! each step take a coset of maximal order in the quotient by what has been
//! generated so far and lift it to an element of the same order. Characters
//! are then exponent tuples against that coordinate system, and their values
//! are exact roots of unity indexed by an integer phase.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hayes::ClassGroup;

/// Coordinates for `E ≅ Π Z/orders_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianDecomposition {
    pub generators: Vec<usize>,
    pub orders: Vec<usize>,
    /// `dlog[class][i]` is the exponent of `generators[i]`.
    pub dlog: Vec<Vec<usize>>,
}

impl AbelianDecomposition {
    pub fn size(&self) -> usize {
        self.orders.iter().product()
    }
}

pub fn decompose(group: &ClassGroup) -> AbelianDecomposition {
    let n = group.order();
    let id = group.identity();
    let mut in_sub = vec![false; n];
    in_sub[id] = true;
    let mut sub = vec![id];
    let mut generators = Vec::new();
    let mut orders = Vec::new();

    while sub.len() < n {
        let quotient_order = |g: usize| {
            let (mut x, mut k) = (g, 1);
            while !in_sub[x] {
                x = group.mul(x, g);
                k += 1;
            }
            k
        };
        let (best, m) = (0..n)
            .filter(|&g| !in_sub[g])
            .map(|g| (g, quotient_order(g)))
            .max_by_key(|&(g, m)| (m, std::cmp::Reverse(g)))
            .expect("subgroup is proper");
        let lift = sub
            .iter()
            .map(|&h| group.mul(best, h))
            .find(|&c| group.element_order(c) == m)
            .expect("a coset of maximal quotient order has a lift of that order");

        let mut grown = Vec::with_capacity(sub.len() * m);
        let mut power = id;
        for _ in 0..m {
            for &h in &sub {
                grown.push(group.mul(h, power));
            }
            power = group.mul(power, lift);
        }
        for &g in &grown {
            in_sub[g] = true;
        }
        sub = grown;
        generators.push(lift);
        orders.push(m);
    }

    let mut dlog = vec![Vec::new(); n];
    for (class, exps) in exponent_tuples(&orders) {
        let _ = class;
        let g = exps
            .iter()
            .zip(&generators)
            .fold(id, |acc, (&e, &gen)| group.mul(acc, group.pow(gen, e as u64)));
        debug_assert!(dlog[g].is_empty(), "exponent tuples collide");
        dlog[g] = exps;
    }
    AbelianDecomposition {
        generators,
        orders,
        dlog,
    }
}

/// Whether every element has order a power of `p`, as for `Q = 1`.
pub fn is_p_group(group: &ClassGroup) -> bool {
    let p = group.field().p() as usize;
    (0..group.order()).all(|g| {
        let mut o = group.element_order(g);
        while o % p == 0 {
            o /= p;
        }
        o == 1
    })
}

/// All tuples in `Π [0, orders_i)`, first coordinate varying fastest.
fn exponent_tuples(orders: &[usize]) -> impl Iterator<Item = (usize, Vec<usize>)> + '_ {
    let total: usize = orders.iter().product();
    (0..total).map(move |mut idx| {
        let start = idx;
        let t = orders
            .iter()
            .map(|&o| {
                let e = idx % o;
                idx /= o;
                e
            })
            .collect();
        (start, t)
    })
}

/// A character, as exponents against an [`AbelianDecomposition`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Character {
    pub exponents: Vec<usize>,
}

impl Character {
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

/// Every character of the group, trivial one first.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    dec: AbelianDecomposition,
    characters: Vec<Character>,
    modulus: usize,
    roots: Vec<Complex64>,
}

pub fn all_characters(dec: &AbelianDecomposition) -> CharacterTable {
    let modulus = dec.orders.iter().fold(1usize, |acc, &o| acc.lcm(&o));
    let roots = (0..modulus)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / modulus as f64))
        .collect();
    let characters = exponent_tuples(&dec.orders)
        .map(|(_, exponents)| Character { exponents })
        .collect();
    CharacterTable {
        dec: dec.clone(),
        characters,
        modulus,
        roots,
    }
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn decomposition(&self) -> &AbelianDecomposition {
        &self.dec
    }

    /// Phase `k` with `χ(g) = exp(2πi k / N)`, `N` the lcm of the orders.
    pub fn phase(&self, chi: usize, class: usize) -> usize {
        let exps = &self.characters[chi].exponents;
        let logs = &self.dec.dlog[class];
        exps.iter()
            .zip(logs)
            .zip(&self.dec.orders)
            .map(|((&e, &l), &o)| e * l % o * (self.modulus / o))
            .sum::<usize>()
            % self.modulus
    }

    pub fn value(&self, chi: usize, class: usize) -> Complex64 {
        self.roots[self.phase(chi, class)]
    }

    /// Order of the character, as an element of the dual group.
    pub fn character_order(&self, chi: usize) -> usize {
        self.characters[chi]
            .exponents
            .iter()
            .zip(&self.dec.orders)
            .fold(1usize, |acc, (&e, &o)| acc.lcm(&(o / o.gcd(&e))))
    }

    /// Largest deviation from `(1/|E|) Σ_g χ(g) conj χ'(g) = [χ = χ']` and
    /// from `Σ_χ χ(g) = |E| [g = 1]` (scaled by `1/|E|`).
    pub fn orthogonality_error(&self, identity: usize) -> f64 {
        let n = self.len();
        let mut worst = 0f64;
        for a in 0..n {
            for b in a..n {
                let s: Complex64 = (0..n)
                    .map(|g| self.value(a, g) * self.value(b, g).conj())
                    .sum::<Complex64>()
                    / n as f64;
                let want = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((s - want).norm());
            }
        }
        for g in 0..n {
            let s: Complex64 = (0..n).map(|c| self.value(c, g)).sum::<Complex64>() / n as f64;
            let want = if g == identity { 1.0 } else { 0.0 };
            worst = worst.max((s - want).norm());
        }
        worst
    }

    /// `Σ_ε hist[ε] χ(ε)`.
    pub fn sum_over_histogram(&self, chi: usize, hist: &[u64]) -> Complex64 {
        hist.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(g, &c)| self.value(chi, g) * c as f64)
            .sum()
    }
}

/// `Σ_{f ∈ M_j} χ(f)`, with `χ(f) = 0` when `gcd(f, Q) ≠ 1`.
pub fn character_sum(
    table: &CharacterTable,
    chi: usize,
    j: usize,
    group: &ClassGroup,
    budget: &Budget,
) -> Result<Complex64> {
    let hist = group.degree_histogram(j, budget)?;
    Ok(table.sum_over_histogram(chi, &hist))
}

/// `C(t+ℓ-1, j) q^{j/2}`.
pub fn weil_bound(group: &ClassGroup, j: usize) -> f64 {
    let p = group.params();
    let top = (p.t() + p.ell()) as i64 - 1;
    if top < 0 || j as i64 > top {
        return 0.0;
    }
    let b = crate::comb::binomial(top as u64, j as u64);
    crate::comb::to_f64(&crate::comb::rat_int(b)) * (group.field().q() as f64).powf(j as f64 / 2.0)
}

/// Coefficients below this magnitude are treated as zero before root finding.
pub const COEFF_CUTOFF: f64 = 1e-9;

/// `P(z, χ)` truncated past its degree bound, with numeric roots.
#[derive(Clone, Debug, Serialize)]
pub struct LPolynomial {
    /// `c_0..=c_{ℓ+t+2}`; entries past `ℓ+t-1` are kept to check vanishing.
    pub coeffs: Vec<Complex64>,
    /// `ℓ + t - 1` (or 0 when that is negative).
    pub degree_bound: usize,
    /// Degree after dropping coefficients below [`COEFF_CUTOFF`].
    pub degree: usize,
    pub roots: Vec<Complex64>,
}

impl LPolynomial {
    pub fn root_moduli(&self) -> Vec<f64> {
        self.roots.iter().map(|z| z.norm()).collect()
    }
}

/// Builds `P(z, χ)` from character sums over `M_j`, `j ≤ ℓ + t + 2`, using the
/// given per-degree class histograms.
pub fn l_polynomial_from_histograms(
    table: &CharacterTable,
    chi: usize,
    group: &ClassGroup,
    hists: &[Vec<u64>],
) -> Result<LPolynomial> {
    if table.characters[chi].is_trivial() {
        return Err(Error::Validation("L-polynomial of the trivial character".into()));
    }
    let p = group.params();
    let upto = p.ell() + p.t() + 2;
    if hists.len() <= upto {
        return Err(Error::Validation(format!("need class histograms for degrees 0..={upto}")));
    }
    let coeffs: Vec<Complex64> = (0..=upto)
        .map(|j| table.sum_over_histogram(chi, &hists[j]))
        .collect();
    let degree_bound = (p.ell() + p.t()).saturating_sub(1);
    let mut degree = degree_bound;
    while degree > 0 && coeffs[degree].norm() < COEFF_CUTOFF {
        degree -= 1;
    }
    let roots = polynomial_roots(&coeffs[..=degree])?;
    Ok(LPolynomial {
        coeffs,
        degree_bound,
        degree,
        roots,
    })
}

pub fn l_polynomial(
    table: &CharacterTable,
    chi: usize,
    group: &ClassGroup,
    budget: &Budget,
) -> Result<LPolynomial> {
    let p = group.params();
    let hists = (0..=p.ell() + p.t() + 2)
        .map(|j| group.degree_histogram(j, budget))
        .collect::<Result<Vec<_>>>()?;
    l_polynomial_from_histograms(table, chi, group, &hists)
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut val = Complex64::new(0.0, 0.0);
    let mut der = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        der = der * z + val;
        val = val * z + c;
    }
    (val, der)
}

/// Roots of `Σ c_i z^i` (ascending, nonzero leading coefficient) from the
/// eigenvalues of the companion matrix, refined by a few Newton steps.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    if lead.norm() == 0.0 {
        return Err(Error::Numeric("leading coefficient is zero".into()));
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| c / lead).collect();
    let mut roots: Vec<Complex64> = if deg == 1 {
        vec![-monic[0]]
    } else {
        let mut m = DMatrix::<Complex64>::zeros(deg, deg);
        for i in 1..deg {
            m[(i, i - 1)] = Complex64::new(1.0, 0.0);
        }
        for i in 0..deg {
            m[(i, deg - 1)] = -monic[i];
        }
        let schur = nalgebra::linalg::Schur::try_new(m, f64::EPSILON, 10_000)
            .ok_or_else(|| Error::Numeric(format!("Schur iteration did not converge for {coeffs:?}")))?;
        let (_, t) = schur.unpack();
        (0..deg).map(|i| t[(i, i)]).collect()
    };
    for z in roots.iter_mut() {
        for _ in 0..3 {
            let (v, d) = horner(&monic, *z);
            if d.norm() < 1e-12 {
                break;
            }
            let step = v / d;
            if !step.re.is_finite() || !step.im.is_finite() || step.norm() > 1e-3 * (1.0 + z.norm()) {
                break;
            }
            *z -= step;
        }
    }
    let scale: f64 = monic.iter().map(|c| c.norm()).sum::<f64>();
    for z in &roots {
        let (v, _) = horner(&monic, *z);
        let zn = z.norm().max(1.0).powi(deg as i32);
        if v.norm() > 1e-6 * scale * zn {
            return Err(Error::Numeric(format!(
                "root {z} of {coeffs:?} has residual {}",
                v.norm()
            )));
        }
    }
    Ok(roots)
}
