//! `regimes` and `kernels`.

use clap::{Args, Subcommand};
use hayes_core::asym::{condition_a, condition_b, Regime, DEFAULT_DELTA0};
use hayes_core::comb::{a_closed, a_cycle, a_series, mu, Rational};
use hayes_core::ffield::parse_poly;
use hayes_core::{Error, Result};
use serde::Serialize;
use serde_json::json;

use crate::args::{CommonArgs, FieldArgs, Span};
use crate::report::{Check, Outcome, Table};

#[derive(Args, Debug, Serialize)]
pub struct RegimesArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub field: FieldArgs,
    #[arg(long, default_value = "1..=4")]
    pub k: Span,
    /// Degree(s) of Q.
    #[arg(long, default_value = "0")]
    pub t: Span,
    #[arg(long, default_value = "1")]
    pub ell: Span,
    /// |D|; defaults to q.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_DELTA0)]
    pub delta0: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

pub fn regimes(a: &RegimesArgs) -> Result<Outcome> {
    let f = a.field.field()?;
    let q = f.q() as u64;
    let n = a.n.unwrap_or(q as usize);
    let mut out = Outcome {
        table: Table::new(&[
            "q",
            "p",
            "k",
            "t",
            "ell",
            "n",
            "c",
            "gamma",
            "condition_a",
            "condition_b",
            "advisory",
        ]),
        ..Outcome::default()
    };
    let mut rows = Vec::new();
    for k in a.k.iter() {
        for t in a.t.iter() {
            for ell in a.ell.iter() {
                if t + ell == 0 {
                    continue;
                }
                let r = Regime::new(q, f.p() as u64, k, t, ell, n, a.delta0)?;
                let ca = condition_a(&r);
                let cb = condition_b(&r);
                let mut advisory = Vec::new();
                if cb.limit_hypothesis {
                    advisory.push("condition_b_stated_for_p_to_infinity");
                }
                if r.gamma > 1.0 {
                    advisory.push("gamma_above_1");
                }
                if r.c >= 1.0 {
                    advisory.push("k_at_least_q");
                }
                out.table.push(vec![
                    q.to_string(),
                    f.p().to_string(),
                    k.to_string(),
                    t.to_string(),
                    ell.to_string(),
                    n.to_string(),
                    format!("{:.12e}", r.c),
                    format!("{:.12e}", r.gamma),
                    ca.to_string(),
                    cb.holds.to_string(),
                    advisory.join(";"),
                ]);
                rows.push(json!({
                    "regime": r,
                    "condition_a": ca,
                    "condition_b": cb,
                    "advisory": advisory,
                }));
            }
        }
    }
    out.data = json!({ "rows": rows });
    Ok(out)
}

#[derive(Args, Debug, Serialize)]
pub struct KernelsArgs {
    #[command(subcommand)]
    pub kernel: Kernel,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "kernel", rename_all = "lowercase")]
pub enum Kernel {
    /// Truncated alternating sum μ_m(r) for |D| = n over F_q.
    Mu {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u64,
    },
    /// A_j(a, b) for characteristic p; a and b are rationals like 7/2.
    Aj {
        #[arg(long)]
        j: usize,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        p: u64,
    },
    /// Φ_j(Q): monic polynomials of degree j coprime to Q.
    Phi {
        #[command(flatten)]
        #[serde(flatten)]
        field: FieldArgs,
        #[arg(long = "Q")]
        #[serde(rename = "Q")]
        modulus: String,
        #[arg(long)]
        j: usize,
    },
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| Error::Parse(format!("bad rational '{s}'")))
}

pub fn kernels(a: &KernelsArgs) -> Result<Outcome> {
    let mut out = Outcome {
        table: Table::new(&["kernel", "value"]),
        ..Outcome::default()
    };
    let (name, value) = match &a.kernel {
        Kernel::Mu { m, r, n, q } => {
            if r > n || *q < 2 {
                return Err(Error::Validation(format!("need r <= n and q >= 2, got r = {r}, n = {n}, q = {q}")));
            }
            ("mu", mu(*m, *r, *n, *q).to_string())
        }
        Kernel::Aj { j, a: x, b: y, p } => {
            let (x, y) = (parse_rational(x)?, parse_rational(y)?);
            let series = a_series(*j, &x, &y, *p);
            let closed = a_closed(*j, &x, &y, *p);
            out.checks
                .push(Check::eq("A_j series = closed form", &series, &closed, series == closed));
            if let Ok(cycle) = a_cycle(*j, &x, &y, *p) {
                out.checks
                    .push(Check::eq("A_j series = cycle sum", &series, &cycle, series == cycle));
            }
            ("aj", series.to_string())
        }
        Kernel::Phi { field, modulus, j } => {
            let f = field.field()?;
            let m = parse_poly(&f, modulus)?;
            ("phi", hayes_core::hayes::phi(&f, *j, &m).to_string())
        }
    };
    out.table.push(vec![name.to_string(), value.clone()]);
    out.data = json!({ "kernel": name, "value": value });
    Ok(out)
}
