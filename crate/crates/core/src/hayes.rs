//! Hayes equivalence: signatures, the counting function `Φ_j(Q)`, and the
//! class group `E^{ℓ,Q}`.
//!
//! Two monic polynomials coprime to `Q` are equivalent when their reciprocals
//! agree modulo `x^{ℓ+1}` (the `ℓ` coefficients below the leading one) and
//! they agree modulo `Q`. Every class has exactly one monic member of degree
//! `t + ℓ`, which serves as its canonical representative; class indices
//! follow the enumeration order of those representatives.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ffield::{enumerate_monic, FieldSpec, FqElement, Polynomial};

/// The data `(ℓ, Q)` defining an equivalence, with `Q`'s distinct
/// irreducible factors cached.
#[derive(Clone, Debug)]
pub struct HayesParams {
    field: FieldSpec,
    ell: usize,
    modulus: Polynomial,
    t: usize,
    factors: Vec<Polynomial>,
}

impl HayesParams {
    pub fn new(field: &FieldSpec, ell: usize, modulus: Polynomial) -> Result<Self> {
        if !modulus.is_monic() {
            return Err(Error::Validation(format!("Q = {modulus} is not monic")));
        }
        let t = modulus.deg();
        let factors = distinct_irreducible_factors(field, &modulus);
        if ell == 0 && t == 0 {
            log::warn!("ell = 0 and Q = 1: the class group is trivial");
        }
        Ok(HayesParams {
            field: field.clone(),
            ell,
            modulus,
            t,
            factors,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// The polynomial `Q`.
    pub fn modulus(&self) -> &Polynomial {
        &self.modulus
    }

    /// `deg Q`.
    pub fn t(&self) -> usize {
        self.t
    }

    /// `ℓ = 0` and `Q = 1`: a single class.
    pub fn is_degenerate(&self) -> bool {
        self.ell == 0 && self.t == 0
    }

    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    /// `Φ_j(Q)` for this `Q`.
    pub fn phi(&self, j: usize) -> BigUint {
        phi_from_factor_degrees(self.field.q(), j, &self.factor_degrees())
    }

    pub fn factor_degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.deg()).collect()
    }

    /// `q^ℓ Φ_t(Q)`.
    pub fn group_order(&self) -> BigUint {
        BigUint::from(self.field.q()).pow(self.ell as u32) * self.phi(self.t)
    }

    /// Elements of `F_q` that are not zeros of `Q`.
    pub fn default_domain(&self) -> Vec<FqElement> {
        self.field
            .elements()
            .filter(|&a| !self.field.eval(&self.modulus, a).is_zero())
            .collect()
    }

    pub fn is_coprime(&self, f: &Polynomial) -> bool {
        if self.t == 0 {
            return true;
        }
        let r = self.field.poly_rem(f, &self.modulus).expect("Q is nonzero");
        self.field.poly_gcd(&r, &self.modulus) == Polynomial::one()
    }
}

/// Distinct monic irreducible factors of `f` by trial division, in order of
/// discovery (increasing degree, then enumeration index).
pub fn distinct_irreducible_factors(field: &FieldSpec, f: &Polynomial) -> Vec<Polynomial> {
    let mut rest = field.make_monic(f);
    let mut out = Vec::new();
    if rest.is_zero() {
        return out;
    }
    let mut d = 1;
    while 2 * d <= rest.deg() {
        for cand in enumerate_monic(field, d).expect("small degree") {
            let mut hit = false;
            loop {
                let (quo, rem) = field.poly_divrem(&rest, &cand).expect("nonzero");
                if !rem.is_zero() {
                    break;
                }
                rest = quo;
                hit = true;
            }
            if hit {
                out.push(cand);
            }
            if 2 * d > rest.deg() {
                break;
            }
        }
        d += 1;
    }
    if rest.deg() >= 1 && !out.contains(&rest) {
        out.push(rest);
    }
    out
}

/// `Φ_j(Q)` by the sieve over subsets of the distinct irreducible factors.
pub fn phi_from_factor_degrees(q: u32, j: usize, degrees: &[usize]) -> BigUint {
    let mut acc = BigInt::zero();
    let qb = BigInt::from(q);
    for mask in 0u64..(1u64 << degrees.len()) {
        let mut total = 0usize;
        let mut size = 0u32;
        for (i, &d) in degrees.iter().enumerate() {
            if mask >> i & 1 == 1 {
                total += d;
                size += 1;
            }
        }
        if total <= j {
            let term = qb.pow((j - total) as u32);
            if size % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
    }
    acc.to_biguint().expect("Φ_j(Q) is nonnegative")
}

/// `Φ_j(Q) = |{g ∈ M_j : gcd(g, Q) = 1}|`.
pub fn phi(field: &FieldSpec, j: usize, modulus: &Polynomial) -> BigUint {
    let degrees: Vec<usize> = distinct_irreducible_factors(field, modulus)
        .iter()
        .map(|f| f.deg())
        .collect();
    phi_from_factor_degrees(field.q(), j, &degrees)
}

/// The pair `(f̂ mod x^{ℓ+1}, f mod Q)` identifying a class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HayesSignature {
    /// `[x^1..x^ℓ] f̂`, i.e. `[x^{deg f - i}] f` for `i = 1..ℓ`, zero-padded.
    pub leading: Vec<FqElement>,
    pub residue: Polynomial,
}

fn leading_vector(f: &Polynomial, ell: usize) -> Vec<FqElement> {
    let d = f.deg();
    (1..=ell)
        .map(|i| if i <= d { f.coeff(d - i) } else { FqElement::ZERO })
        .collect()
}

/// Signature of a monic `f`, or `None` when `gcd(f, Q) ≠ 1` (the class is 0).
pub fn signature(f: &Polynomial, params: &HayesParams) -> Option<HayesSignature> {
    assert!(f.is_monic(), "signature of a non-monic polynomial");
    if !params.is_coprime(f) {
        return None;
    }
    let residue = if params.t == 0 {
        Polynomial::zero()
    } else {
        params.field.poly_rem(f, &params.modulus).expect("Q is nonzero")
    };
    Some(HayesSignature {
        leading: leading_vector(f, params.ell),
        residue,
    })
}

/// Hayes equivalence of two monic polynomials.
pub fn equivalent(f: &Polynomial, g: &Polynomial, params: &HayesParams) -> bool {
    match (signature(f, params), signature(g, params)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

const NO_CLASS: u32 = u32::MAX;

/// The finite abelian group `E^{ℓ,Q}` with an explicit multiplication table.
#[derive(Clone, Debug)]
pub struct ClassGroup {
    params: HayesParams,
    reps: Vec<Polynomial>,
    signatures: Vec<HayesSignature>,
    mul_table: Vec<u32>,
    identity: usize,
    // packed (leading, residue) digits -> class index
    lookup: Vec<u32>,
}

/// Class index and canonical representative, as exported.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub eps: usize,
    pub rep: String,
}

impl ClassGroup {
    pub fn new(params: &HayesParams, budget: &Budget) -> Result<Self> {
        let field = params.field.clone();
        let q = field.q() as u64;
        let width = (params.ell + params.t) as u32;
        let lookup_len = q
            .checked_pow(width)
            .filter(|&n| n <= budget.max_classes)
            .ok_or_else(|| {
                Error::budget(
                    "class group signature table",
                    format!("{q}^{width}"),
                    budget.max_classes,
                )
            })?;
        let order = params.group_order();
        if order > BigUint::from(budget.max_classes) {
            return Err(Error::budget("class group order", order, budget.max_classes));
        }

        let mut lookup = vec![NO_CLASS; lookup_len as usize];
        let mut reps = Vec::new();
        let mut signatures = Vec::new();
        for f in enumerate_monic(&field, params.t + params.ell)? {
            if let Some(sig) = signature(&f, params) {
                let key = pack_key(&sig, params, q);
                debug_assert_eq!(lookup[key], NO_CLASS, "two representatives share a class");
                lookup[key] = reps.len() as u32;
                reps.push(f);
                signatures.push(sig);
            }
        }
        debug_assert_eq!(BigUint::from(reps.len()), order);

        let mut group = ClassGroup {
            params: params.clone(),
            reps,
            signatures,
            mul_table: Vec::new(),
            identity: 0,
            lookup,
        };
        group.identity = group.class_of(&Polynomial::one()).expect("1 is coprime to Q");
        let n = group.reps.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in i..n {
                let prod = field.poly_mul(&group.reps[i], &group.reps[j]);
                let c = group.class_of(&prod).expect("product of coprime classes") as u32;
                table[i * n + j] = c;
                table[j * n + i] = c;
            }
        }
        group.mul_table = table;
        Ok(group)
    }

    pub fn params(&self) -> &HayesParams {
        &self.params
    }

    pub fn field(&self) -> &FieldSpec {
        &self.params.field
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    /// Canonical representative: the unique monic member of degree `t + ℓ`.
    pub fn representative(&self, eps: usize) -> &Polynomial {
        &self.reps[eps]
    }

    pub fn signature_of(&self, eps: usize) -> &HayesSignature {
        &self.signatures[eps]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_table[a * self.reps.len() + b] as usize
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let (mut base, mut acc) = (a, self.identity);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.pow(a, self.element_order(a) as u64 - 1)
    }

    /// Class of a monic polynomial, `None` when it is not coprime to `Q`.
    pub fn class_of(&self, f: &Polynomial) -> Option<usize> {
        let field = &self.params.field;
        let q = field.q() as usize;
        let d = f.deg();
        let mut key = 0usize;
        let mut scale = 1usize;
        for i in 1..=self.params.ell {
            let c = if i <= d { f.coeff(d - i) } else { FqElement::ZERO };
            key += c.index() * scale;
            scale *= q;
        }
        if self.params.t > 0 {
            let r = field.poly_rem(f, &self.params.modulus).expect("Q is nonzero");
            for i in 0..self.params.t {
                key += r.coeff(i).index() * scale;
                scale *= q;
            }
        }
        match self.lookup[key] {
            NO_CLASS => None,
            c => Some(c as usize),
        }
    }

    /// Class of a signature, `None` if it is not a valid signature.
    pub fn class_of_signature(&self, sig: &HayesSignature) -> Option<usize> {
        let residue_ok = sig.residue.degree().finite().map_or(true, |d| d < self.params.t);
        if sig.leading.len() != self.params.ell || !residue_ok {
            return None;
        }
        match self.lookup[pack_key(sig, &self.params, self.field().q() as u64)] {
            NO_CLASS => None,
            c => Some(c as usize),
        }
    }

    /// A member of `eps` of degree `d ≥ t + ℓ`: the leading part of the
    /// representative shifted up, with the low part fixed modulo `Q`.
    pub fn member_base(&self, eps: usize, d: usize) -> Result<Polynomial> {
        let (t, ell) = (self.params.t, self.params.ell);
        if d < t + ell {
            return Err(Error::Validation(format!(
                "class members need degree >= t + ell = {}",
                t + ell
            )));
        }
        let field = &self.params.field;
        let sig = &self.signatures[eps];
        let mut top = vec![FqElement::ZERO; d + 1];
        top[d] = FqElement::ONE;
        for (i, &c) in sig.leading.iter().enumerate() {
            top[d - 1 - i] = c;
        }
        let top = Polynomial::from_coeffs(top);
        if t == 0 {
            return Ok(top);
        }
        let low = field.poly_rem(&field.poly_sub(&sig.residue, &top), &self.params.modulus)?;
        Ok(field.poly_add(&top, &low))
    }

    /// All members of `eps` of degree `d`: `base + Q g` for every `g` of
    /// degree below `d - t - ℓ`, ordered by the coefficient index of `g`.
    pub fn class_members(
        &self,
        eps: usize,
        d: usize,
        budget: &Budget,
    ) -> Result<impl Iterator<Item = Polynomial> + '_> {
        let base = self.member_base(eps, d)?;
        let k = d - self.params.t - self.params.ell;
        let field = &self.params.field;
        let count = budget.check_enum("class members", crate::ffield::monic_count(field.q(), k))?;
        Ok((0..count).map(move |idx| {
            let g = free_poly_at(field, k, idx);
            field.poly_add(&base, &field.poly_mul(&self.params.modulus, &g))
        }))
    }

    pub fn records(&self) -> Vec<ClassRecord> {
        self.reps
            .iter()
            .enumerate()
            .map(|(eps, f)| ClassRecord {
                eps,
                rep: f.to_string(),
            })
            .collect()
    }

    /// Histogram of classes over `M_j` (non-coprime polynomials dropped).
    pub fn degree_histogram(&self, j: usize, budget: &Budget) -> Result<Vec<u64>> {
        let field = &self.params.field;
        budget.check_enum("M_j", crate::ffield::monic_count(field.q(), j))?;
        let mut hist = vec![0u64; self.order()];
        for f in enumerate_monic(field, j)? {
            if let Some(c) = self.class_of(&f) {
                hist[c] += 1;
            }
        }
        Ok(hist)
    }
}

/// The (not necessarily monic) polynomial of degree `< k` whose coefficients
/// are the base-`q` digits of `index`.
pub fn free_poly_at(field: &FieldSpec, k: usize, mut index: u64) -> Polynomial {
    let q = field.q() as u64;
    let mut coeffs = Vec::with_capacity(k);
    for _ in 0..k {
        coeffs.push(field.element((index % q) as u32).expect("digit below q"));
        index /= q;
    }
    Polynomial::from_coeffs(coeffs)
}

fn pack_key(sig: &HayesSignature, params: &HayesParams, q: u64) -> usize {
    let mut key = 0u64;
    let mut scale = 1u64;
    for c in &sig.leading {
        key += c.index() as u64 * scale;
        scale *= q;
    }
    for i in 0..params.t {
        key += sig.residue.coeff(i).index() as u64 * scale;
        scale *= q;
    }
    key as usize
}
