use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use hayes_core::ffield::{parse_poly, FieldSpec, FqElement};
use hayes_core::hayes::{ClassGroup, HayesParams};
use hayes_core::par::Execution;
use hayes_core::{Budget, Error, Result};
use serde::Serialize;

/// Inclusive integer range written `3`, `1..4`, `1..=4` or `1-4`
/// (`1..4` excludes 4 as in Rust).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl Span {
    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad range '{s}'"));
        let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
            (num(a)?, num(b)?)
        } else if let Some((a, b)) = s.split_once("..") {
            let b = num(b)?;
            if b == 0 {
                return Err(format!("empty range '{s}'"));
            }
            (num(a)?, b - 1)
        } else if let Some((a, b)) = s.split_once('-') {
            (num(a)?, num(b)?)
        } else {
            let v = num(s)?;
            (v, v)
        };
        if lo > hi {
            return Err(format!("empty range '{s}'"));
        }
        Ok(Span { lo, hi })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    pub p: u32,
    /// Extension degree; the field is F_{p^a}.
    #[arg(long, default_value_t = 1)]
    pub a: u32,
}

impl FieldArgs {
    pub fn field(&self) -> Result<FieldSpec> {
        FieldSpec::new(self.p, self.a)
    }
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct HayesArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub field: FieldArgs,
    /// Number of prescribed leading coefficients.
    #[arg(long, default_value_t = 1)]
    pub ell: usize,
    /// Monic modulus in text form, e.g. "x^2 + x".
    #[arg(long = "Q", default_value = "1")]
    #[serde(rename = "Q")]
    pub modulus: String,
}

impl HayesArgs {
    pub fn params(&self) -> Result<HayesParams> {
        let f = self.field.field()?;
        let q = parse_poly(&f, &self.modulus)?;
        HayesParams::new(&f, self.ell, q)
    }

    pub fn group(&self, budget: &Budget) -> Result<ClassGroup> {
        ClassGroup::new(&self.params()?, budget)
    }
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct DomainArgs {
    /// Evaluation set: `all` (every non-root of Q) or comma-separated packed
    /// element indices.
    #[arg(long = "D", default_value = "all")]
    #[serde(rename = "D")]
    pub domain: String,
}

impl DomainArgs {
    pub fn resolve(&self, params: &HayesParams) -> Result<Vec<FqElement>> {
        if self.domain.trim() == "all" {
            return Ok(params.default_domain());
        }
        let f = params.field();
        let mut out = Vec::new();
        for part in self.domain.split(',') {
            let v: u32 = part
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad element '{part}' in D")))?;
            out.push(f.element(v)?);
        }
        Ok(out)
    }
}

#[derive(Args, Clone, Debug, Serialize)]
pub struct CommonArgs {
    /// Largest class group to build.
    #[arg(long, global = true, env = "HAYES_MAX_CLASSES", default_value_t = Budget::default().max_classes)]
    pub max_classes: u64,
    /// Largest single enumeration (polynomials or pairs).
    #[arg(long, global = true, env = "HAYES_MAX_ENUM", default_value_t = Budget::default().max_enumeration)]
    pub max_enum: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    /// Run enumerations on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

impl CommonArgs {
    pub fn budget(&self) -> Result<Budget> {
        if self.max_classes == 0 || self.max_enum == 0 {
            return Err(Error::Validation("budgets must be positive".into()));
        }
        Ok(Budget {
            max_classes: self.max_classes,
            max_enumeration: self.max_enum,
        })
    }

    pub fn exec(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }
}
