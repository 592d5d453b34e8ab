use std::cmp::Ordering;

use super::{FieldSpec, FqElement};
use crate::error::{Error, Result};

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => Ordering::Equal,
            (Degree::NegInfinity, _) => Ordering::Less,
            (_, Degree::NegInfinity) => Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

/// Dense polynomial over `F_q`; `coeffs[i]` is the coefficient of `x^i`.
///
/// No trailing zeros are stored, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<FqElement>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![FqElement::ONE],
        }
    }

    pub fn x() -> Self {
        Polynomial {
            coeffs: vec![FqElement::ZERO, FqElement::ONE],
        }
    }

    /// `x^d`.
    pub fn x_pow(d: usize) -> Self {
        let mut coeffs = vec![FqElement::ZERO; d + 1];
        coeffs[d] = FqElement::ONE;
        Polynomial { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<FqElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: FqElement) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn coeffs(&self) -> &[FqElement] {
        &self.coeffs
    }

    /// `[x^i] f`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> FqElement {
        self.coeffs.get(i).copied().unwrap_or(FqElement::ZERO)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    /// Degree of a nonzero polynomial.
    ///
    /// Panics on the zero polynomial.
    pub fn deg(&self) -> usize {
        self.degree().finite().expect("degree of the zero polynomial")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&FqElement::ONE)
    }

    pub fn leading(&self) -> Option<FqElement> {
        self.coeffs.last().copied()
    }

    /// `x^deg(f) f(1/x)`: the coefficient list reversed, trailing zeros dropped.
    pub fn reciprocal(&self) -> Result<Polynomial> {
        if self.is_zero() {
            return Err(Error::Domain("reciprocal of the zero polynomial".into()));
        }
        let mut rev = self.coeffs.clone();
        rev.reverse();
        Ok(Polynomial::from_coeffs(rev))
    }
}

impl FieldSpec {
    /// Polynomial from integer coefficients in ascending order, each given by
    /// packed element index.
    pub fn poly(&self, coeffs: &[u32]) -> Result<Polynomial> {
        let cs = coeffs
            .iter()
            .map(|&c| self.element(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Polynomial::from_coeffs(cs))
    }

    /// `x - alpha`.
    pub fn x_minus(&self, alpha: FqElement) -> Polynomial {
        Polynomial::from_coeffs(vec![self.neg(alpha), FqElement::ONE])
    }

    pub fn poly_add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let n = f.coeffs.len().max(g.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.add(f.coeff(i), g.coeff(i))).collect())
    }

    pub fn poly_neg(&self, f: &Polynomial) -> Polynomial {
        Polynomial {
            coeffs: f.coeffs.iter().map(|&c| self.neg(c)).collect(),
        }
    }

    pub fn poly_sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let n = f.coeffs.len().max(g.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.sub(f.coeff(i), g.coeff(i))).collect())
    }

    pub fn poly_scale(&self, f: &Polynomial, c: FqElement) -> Polynomial {
        Polynomial::from_coeffs(f.coeffs.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![FqElement::ZERO; f.coeffs.len() + g.coeffs.len() - 1];
        for (i, &a) in f.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let row = self.mul_row(a);
            for (j, &b) in g.coeffs.iter().enumerate() {
                let prod = FqElement(row[b.index()]);
                out[i + j] = self.add(out[i + j], prod);
            }
        }
        Polynomial::from_coeffs(out)
    }

    /// Quotient and remainder of `f` by a nonzero `g`.
    pub fn poly_divrem(&self, f: &Polynomial, g: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let Some(lead) = g.leading() else {
            return Err(Error::Domain("division by the zero polynomial".into()));
        };
        let lead_inv = self.inv(lead)?;
        let dg = g.coeffs.len() - 1;
        let mut r = f.coeffs.clone();
        if r.len() <= dg {
            return Ok((Polynomial::zero(), f.clone()));
        }
        let mut quot = vec![FqElement::ZERO; r.len() - dg];
        for top in (dg..r.len()).rev() {
            let c = r[top];
            if c.is_zero() {
                continue;
            }
            let factor = self.mul(c, lead_inv);
            quot[top - dg] = factor;
            let shift = top - dg;
            for (i, &gc) in g.coeffs.iter().enumerate() {
                r[shift + i] = self.sub(r[shift + i], self.mul(factor, gc));
            }
        }
        r.truncate(dg);
        Ok((Polynomial::from_coeffs(quot), Polynomial::from_coeffs(r)))
    }

    pub fn poly_rem(&self, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
        Ok(self.poly_divrem(f, g)?.1)
    }

    pub fn make_monic(&self, f: &Polynomial) -> Polynomial {
        match f.leading() {
            None => Polynomial::zero(),
            Some(c) => self.poly_scale(f, self.inv(c).expect("nonzero leading coefficient")),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn poly_gcd(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.poly_rem(&a, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        self.make_monic(&a)
    }

    /// `f(alpha)` by Horner's rule.
    pub fn eval(&self, f: &Polynomial, alpha: FqElement) -> FqElement {
        let row = self.mul_row(alpha);
        f.coeffs
            .iter()
            .rev()
            .fold(FqElement::ZERO, |acc, &c| self.add(FqElement(row[acc.index()]), c))
    }

    /// `prod (x - alpha)` over the given points.
    pub fn product_of_linears(&self, points: &[FqElement]) -> Polynomial {
        points
            .iter()
            .fold(Polynomial::one(), |acc, &a| self.poly_mul(&acc, &self.x_minus(a)))
    }
}
