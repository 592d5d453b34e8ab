//! Text and JSON forms of polynomials.
//!
//! Text: `x^3 + 2*x + 1`, highest power first. A coefficient is written as
//! its packed element index, so over a prime field it is just the residue.
//! JSON: `{"p":3,"a":1,"coeffs":[1,2,0,1]}` with `coeffs[i]` the
//! coefficient of `x^i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{FieldSpec, FqElement, Polynomial};
use crate::error::{Error, Result};

pub fn format_element(x: FqElement) -> String {
    x.index().to_string()
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let one = *c == FqElement::ONE;
            match (i, one) {
                (0, _) => write!(f, "{}", c.index())?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{}*x", c.index())?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{}*x^{i}", c.index())?,
            }
        }
        Ok(())
    }
}

fn parse_coeff(field: &FieldSpec, s: &str, text: &str) -> Result<FqElement> {
    let v: u64 = s
        .parse()
        .map_err(|_| Error::Parse(format!("bad coefficient '{s}' in '{text}'")))?;
    if field.a() == 1 {
        Ok(field.from_int((v % field.p() as u64) as i64))
    } else if v < field.q() as u64 {
        field.element(v as u32)
    } else {
        Err(Error::Parse(format!(
            "coefficient {v} is not a packed element index of F_{}",
            field.q()
        )))
    }
}

/// Parses the text form. `-` is accepted between terms and negates the term.
pub fn parse_poly(field: &FieldSpec, text: &str) -> Result<Polynomial> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, ch) in compact.chars().enumerate() {
        if (ch == '+' || ch == '-') && !(i > 0 && compact[..i].ends_with('^')) {
            if !current.is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
            } else if i != 0 {
                return Err(Error::Parse(format!("dangling sign in '{text}'")));
            }
            negative = ch == '-';
        } else {
            current.push(ch);
        }
    }
    if current.is_empty() {
        return Err(Error::Parse(format!("trailing sign in '{text}'")));
    }
    terms.push((negative, current));

    let mut coeffs: Vec<FqElement> = Vec::new();
    for (neg, term) in terms {
        let (coef, power) = match term.find('x') {
            None => (parse_coeff(field, &term, text)?, 0usize),
            Some(pos) => {
                let head = term[..pos].trim_end_matches('*');
                // "2x" and "2*x" are both accepted
                let coef = if head.is_empty() {
                    FqElement::ONE
                } else {
                    parse_coeff(field, head, text)?
                };
                let tail = &term[pos + 1..];
                let power = if tail.is_empty() {
                    1
                } else if let Some(e) = tail.strip_prefix('^') {
                    e.parse()
                        .map_err(|_| Error::Parse(format!("bad exponent '{e}' in '{text}'")))?
                } else {
                    return Err(Error::Parse(format!("unexpected '{tail}' in '{text}'")));
                };
                (coef, power)
            }
        };
        let coef = if neg { field.neg(coef) } else { coef };
        if coeffs.len() <= power {
            coeffs.resize(power + 1, FqElement::ZERO);
        }
        coeffs[power] = field.add(coeffs[power], coef);
    }
    Ok(Polynomial::from_coeffs(coeffs))
}

/// Canonical JSON form of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub p: u32,
    pub a: u32,
    pub coeffs: Vec<u32>,
}

impl PolyJson {
    pub fn from_poly(field: &FieldSpec, f: &Polynomial) -> Self {
        PolyJson {
            p: field.p(),
            a: field.a(),
            coeffs: f.coeffs().iter().map(|c| c.index() as u32).collect(),
        }
    }

    pub fn to_poly(&self, field: &FieldSpec) -> Result<Polynomial> {
        if self.p != field.p() || self.a != field.a() {
            return Err(Error::Validation(format!(
                "polynomial over F_{}^{} used with F_{}^{}",
                self.p,
                self.a,
                field.p(),
                field.a()
            )));
        }
        field.poly(&self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn formats_descending() {
        let f3 = FieldSpec::prime(3).unwrap();
        let g = f3.poly(&[1, 2, 0, 1]).unwrap();
        assert_eq!(g.to_string(), "x^3 + 2*x + 1");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::one().to_string(), "1");
    }

    #[test]
    fn parses_variants() {
        let f3 = FieldSpec::prime(3).unwrap();
        let want = f3.poly(&[1, 2, 0, 1]).unwrap();
        assert_eq!(parse_poly(&f3, "x^3 + 2*x + 1").unwrap(), want);
        assert_eq!(parse_poly(&f3, "1+2x+x^3").unwrap(), want);
        assert_eq!(parse_poly(&f3, "x^3 - x + 1").unwrap(), want);
        assert_eq!(parse_poly(&f3, "1").unwrap(), Polynomial::one());
        assert!(parse_poly(&f3, "x^").is_err());
        assert!(parse_poly(&f3, "x +").is_err());
        assert!(parse_poly(&f3, "").is_err());
    }

    #[test]
    fn json_form() {
        let f3 = FieldSpec::prime(3).unwrap();
        let g = f3.poly(&[1, 2, 0, 1]).unwrap();
        let js = serde_json::to_string(&PolyJson::from_poly(&f3, &g)).unwrap();
        assert_eq!(js, r#"{"p":3,"a":1,"coeffs":[1,2,0,1]}"#);
        let back: PolyJson = serde_json::from_str(&js).unwrap();
        assert_eq!(back.to_poly(&f3).unwrap(), g);
        assert!(back.to_poly(&FieldSpec::prime(5).unwrap()).is_err());
    }

    proptest! {
        #[test]
        fn text_round_trip(cs in prop::collection::vec(0u32..16, 0..7)) {
            let f16 = FieldSpec::new(2, 4).unwrap();
            let g = f16.poly(&cs).unwrap();
            prop_assert_eq!(parse_poly(&f16, &g.to_string()).unwrap(), g);
        }
    }
}
