use super::{FieldSpec, FqElement, Polynomial};
use crate::error::{Error, Result};

/// `q^d`, or `None` on overflow.
pub fn monic_count(q: u32, d: usize) -> Option<u64> {
    (q as u64).checked_pow(d as u32)
}

/// The monic polynomial of degree `d` with enumeration index `index`.
///
/// The lower coefficients `c_0, …, c_{d-1}` are the base-`q` digits of the
/// index, `c_0` least significant, each digit read as a packed element index.
pub fn monic_at(field: &FieldSpec, d: usize, mut index: u64) -> Polynomial {
    let q = field.q() as u64;
    let mut coeffs = Vec::with_capacity(d + 1);
    for _ in 0..d {
        coeffs.push(FqElement((index % q) as u16));
        index /= q;
    }
    coeffs.push(FqElement::ONE);
    Polynomial::from_coeffs(coeffs)
}

/// Iterator over `M_d` in index order.
#[derive(Clone, Debug)]
pub struct MonicIter {
    q: u32,
    digits: Vec<FqElement>,
    remaining: u64,
}

impl Iterator for MonicIter {
    type Item = Polynomial;

    fn next(&mut self) -> Option<Polynomial> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let mut coeffs = self.digits.clone();
        coeffs.push(FqElement::ONE);
        // odometer step on the lower coefficients
        for c in self.digits.iter_mut() {
            if c.index() + 1 < self.q as usize {
                *c = FqElement(c.0 + 1);
                break;
            }
            *c = FqElement::ZERO;
        }
        Some(Polynomial::from_coeffs(coeffs))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

impl ExactSizeIterator for MonicIter {}

/// All `q^d` monic polynomials of degree `d`.
pub fn enumerate_monic(field: &FieldSpec, d: usize) -> Result<MonicIter> {
    let count = monic_count(field.q(), d).ok_or_else(|| {
        Error::budget(format!("M_{d} over F_{}", field.q()), format!("{}^{d}", field.q()), u64::MAX)
    })?;
    Ok(MonicIter {
        q: field.q(),
        digits: vec![FqElement::ZERO; d],
        remaining: count,
    })
}

/// Number of distinct zeros of `f` lying in `domain`.
pub fn distinct_roots_in(field: &FieldSpec, f: &Polynomial, domain: &[FqElement]) -> usize {
    domain.iter().filter(|&&a| field.eval(f, a).is_zero()).count()
}
