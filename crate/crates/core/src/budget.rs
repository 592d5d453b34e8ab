use crate::error::{Error, Result};

/// Desk-scale limits on enumeration sizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Upper limit on `|E|` (and on the signature lookup table size).
    pub max_classes: u64,
    /// Upper limit on the number of polynomials (or pairs) a single
    /// operation may enumerate.
    pub max_enumeration: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_classes: 1 << 14,
            max_enumeration: 100_000_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_classes: u64::MAX,
            max_enumeration: u64::MAX,
        }
    }

    pub(crate) fn check_enum(&self, what: &str, required: Option<u64>) -> Result<u64> {
        match required {
            Some(n) if n <= self.max_enumeration => Ok(n),
            Some(n) => Err(Error::budget(what, n, self.max_enumeration)),
            None => Err(Error::budget(what, "more than 2^64", self.max_enumeration)),
        }
    }
}
