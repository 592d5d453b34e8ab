//! `weil` and `bounds-check`.

use clap::Args;
use hayes_core::asym::{
    gamma_at_most_one, gamma_upper, lemma6_bound, prop5_lhs, prop5_rhs, thm5_lhs, thm5_rhs, Lemma6Variant, Regime,
    DEFAULT_DELTA0,
};
use hayes_core::chars::{all_characters, decompose, is_p_group, l_polynomial_from_histograms, weil_bound, CharacterTable};
use hayes_core::comb::{a_series, binomial, ln_rational, mu, rat_int, to_f64, Rational};
use hayes_core::dist::{exact_distribution, w_direct_all};
use hayes_core::hayes::{distinct_irreducible_factors, ClassGroup};
use hayes_core::Result;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{CommonArgs, DomainArgs, HayesArgs, Span};
use crate::report::{Check, Outcome, Table};

/// Relative slack for floating comparisons against Weil-type bounds.
const FLOAT_TOL: f64 = 1e-9;
/// `|z - 1|` below this counts as a root at 1.
const ROOT_TOL: f64 = 1e-6;

#[derive(Args, Debug, Serialize)]
pub struct WeilArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub hayes: HayesArgs,
    /// Largest degree j of the character sums (at least t + ℓ + 2 is used).
    #[arg(long, default_value_t = 6)]
    pub jmax: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct BoundsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub hayes: HayesArgs,
    #[arg(long, default_value = "1")]
    pub k: Span,
    #[command(flatten)]
    #[serde(flatten)]
    pub domain: DomainArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

fn histograms(group: &ClassGroup, top: usize, budget: &hayes_core::Budget) -> Result<Vec<Vec<u64>>> {
    (0..=top).map(|j| group.degree_histogram(j, budget)).collect()
}

fn sum_checks(out: &mut Outcome, group: &ClassGroup, table: &CharacterTable, hists: &[Vec<u64>], label: &str) {
    let tol = FLOAT_TOL * group.order() as f64;
    for chi in 0..table.len() {
        if table.characters()[chi].is_trivial() {
            continue;
        }
        let mut worst = f64::INFINITY;
        let mut bad = None;
        for (j, h) in hists.iter().enumerate() {
            let s = table.sum_over_histogram(chi, h).norm();
            let b = weil_bound(group, j);
            worst = worst.min(b - s);
            if s > b * (1.0 + FLOAT_TOL) + tol && bad.is_none() {
                bad = Some((j, s, b));
            }
        }
        out.checks.push(match bad {
            Some((j, s, b)) => Check::le(format!("{label} chi={chi} j={j}"), s, b, false),
            None => Check::flag(format!("{label} chi={chi}"), true, format!("min slack {worst:.6e}")),
        });
    }
}

pub fn weil(a: &WeilArgs) -> Result<Outcome> {
    let budget = a.common.budget()?;
    let group = a.hayes.group(&budget)?;
    let params = group.params();
    let q = group.field().q() as f64;
    let dec = decompose(&group);
    let table = all_characters(&dec);
    let top = a.jmax.max(params.t() + params.ell() + 2);
    let hists = histograms(&group, top, &budget)?;
    let mut out = Outcome {
        table: Table::new(&[
            "chi",
            "exponents",
            "order",
            "j",
            "coeff_re",
            "coeff_im",
            "abs",
            "weil_bound",
            "slack",
        ]),
        ..Outcome::default()
    };
    let orth = table.orthogonality_error(group.identity());
    out.checks.push(Check::le("orthogonality error", orth, FLOAT_TOL, orth <= FLOAT_TOL));
    sum_checks(&mut out, &group, &table, &hists, "weil");

    let mut chars = Vec::new();
    for chi in 1..table.len() {
        let exps = &table.characters()[chi].exponents;
        let exps_text = exps.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(";");
        let lp = l_polynomial_from_histograms(&table, chi, &group, &hists)?;
        let c0 = (lp.coeffs[0] - 1.0).norm();
        out.checks
            .push(Check::le(format!("chi={chi} |c_0 - 1|"), c0, FLOAT_TOL, c0 <= FLOAT_TOL));
        for (j, c) in lp.coeffs.iter().enumerate().skip(lp.degree_bound + 1) {
            let lim = 1e-6 * q.powf(j as f64 / 2.0);
            out.checks
                .push(Check::le(format!("chi={chi} |c_{j}| vanishes"), c.norm(), lim, c.norm() <= lim));
        }
        let inv_sqrt = q.powf(-0.5);
        let moduli = lp.root_moduli();
        for (i, m) in moduli.iter().enumerate() {
            let ok = (m - 1.0).abs() <= ROOT_TOL || (m - inv_sqrt).abs() <= ROOT_TOL;
            out.checks.push(Check::flag(
                format!("chi={chi} root {i} modulus"),
                ok,
                format!("|z| = {m:.12}, allowed 1 or {inv_sqrt:.12}"),
            ));
        }
        let at_one = lp.roots.iter().filter(|z| (*z - 1.0).norm() <= ROOT_TOL).count();
        out.checks.push(Check::le(format!("chi={chi} roots at 1"), at_one, 1, at_one <= 1));
        let mut slack = Vec::new();
        for (j, c) in lp.coeffs.iter().enumerate() {
            let b = weil_bound(&group, j);
            slack.push(b - c.norm());
            out.table.push(vec![
                chi.to_string(),
                exps_text.clone(),
                table.character_order(chi).to_string(),
                j.to_string(),
                format!("{:.12e}", c.re),
                format!("{:.12e}", c.im),
                format!("{:.12e}", c.norm()),
                format!("{b:.12e}"),
                format!("{:.12e}", b - c.norm()),
            ]);
        }
        chars.push(json!({
            "chi": chi,
            "exponents": exps,
            "order": table.character_order(chi),
            "coefficients": lp.coeffs.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
            "degree": lp.degree,
            "degree_bound": lp.degree_bound,
            "roots": lp.roots.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(),
            "root_moduli": moduli,
            "weil_slack": slack,
        }));
    }
    out.data = json!({
        "order": group.order(),
        "invariants": dec.orders,
        "p_group": is_p_group(&group),
        "orthogonality_error": orth,
        "characters": chars,
    });
    Ok(out)
}

pub fn bounds_check(a: &BoundsArgs) -> Result<Outcome> {
    let budget = a.common.budget()?;
    let group = a.hayes.group(&budget)?;
    let params = group.params();
    let field = group.field();
    let domain = a.domain.resolve(params)?;
    let (n, q, ch, t, ell) = (domain.len(), field.q() as u64, field.p() as u64, params.t(), params.ell());
    let mut out = Outcome {
        table: Table::new(&["suite", "case", "relation", "lhs", "rhs", "holds"]),
        ..Outcome::default()
    };
    let mut skipped: Vec<Value> = Vec::new();
    let mut counts = serde_json::Map::new();
    let mut suite = |out: &mut Outcome, name: &str, before: usize| {
        counts.insert(name.to_string(), json!(out.checks.len() - before));
    };

    // Φ_j sandwich
    let before = out.checks.len();
    let degs: Vec<usize> = distinct_irreducible_factors(field, params.modulus())
        .iter()
        .map(|g| g.deg())
        .collect();
    let qb = BigInt::from(q);
    for j in 0..=6usize {
        let qj = qb.pow(j as u32);
        let phi = rat_int(BigInt::from(params.phi(j)));
        let lower = rat_int(qj.clone())
            * (Rational::one()
                - degs
                    .iter()
                    .map(|&d| Rational::new(BigInt::one(), qb.pow(d as u32)))
                    .sum::<Rational>());
        out.checks
            .push(Check::le(format!("phi j={j} lower"), &lower, &phi, lower <= phi));
        let upper = rat_int(qj);
        out.checks
            .push(Check::le(format!("phi j={j} upper"), &phi, &upper, phi <= upper));
    }
    suite(&mut out, "phi", before);

    // μ sandwich
    let before = out.checks.len();
    for r in 0..=n {
        let floor = Rational::new(BigInt::from(q as i64 - n as i64 + r as i64), qb.clone());
        let lim = Rational::new((&qb - BigInt::one()).pow((n - r) as u32), qb.pow((n - r) as u32));
        for m in 0..=n - r {
            let v = mu(m, r, n, q);
            if m >= 1 {
                out.checks
                    .push(Check::le(format!("mu m={m} r={r} floor"), &floor, &v, floor <= v));
            }
            let gap = (&v - &lim).abs();
            let cap = Rational::new(binomial((n - r) as u64, m as u64 + 1), qb.pow(m as u32 + 1));
            out.checks
                .push(Check::le(format!("mu m={m} r={r} truncation"), &gap, &cap, gap <= cap));
        }
    }
    suite(&mut out, "mu", before);

    // ln A_j(n, γ) against both closed bounds
    let before = out.checks.len();
    if t + ell >= 1 && n > 0 {
        let regime = Regime::new(q, ch, a.k.lo, t, ell, n, DEFAULT_DELTA0)?;
        let g = Rational::from_float(regime.gamma).expect("finite gamma");
        for j in 1..=8usize {
            let exact = ln_rational(&a_series(j, &rat_int(n as i64), &g, ch));
            for v in [Lemma6Variant::A, Lemma6Variant::B] {
                if let Ok(b) = lemma6_bound(j, n, regime.gamma, ch, v) {
                    out.checks
                        .push(Check::le(format!("lemma6 {v:?} j={j}"), exact, b, exact <= b * (1.0 + FLOAT_TOL)));
                }
            }
        }
    }
    suite(&mut out, "lemma6", before);

    // character sums over M_j
    let before = out.checks.len();
    let table = all_characters(&decompose(&group));
    let top = (a.k.hi + t + ell).max(t + ell);
    let hists = histograms(&group, top, &budget)?;
    sum_checks(&mut out, &group, &table, &hists, "weil");
    suite(&mut out, "weil", before);

    // W_j and P(Y = r) against the certified character-sum bounds
    let before = out.checks.len();
    let hypotheses = ell >= 1 && n > 0 && gamma_at_most_one(n, q, t, ell);
    if !hypotheses {
        skipped.push(json!({
            "suites": ["prop5", "thm5"],
            "reason": if ell == 0 {
                "ell = 0".to_string()
            } else {
                format!("gamma = {:.6} > 1", to_f64(&gamma_upper(n.max(1), q, t, ell)))
            },
        }));
    } else {
        let e_size = BigUint::from(group.order());
        let phi_t = params.phi(t);
        for k in a.k.iter() {
            for j in k + 1..=k + t + ell {
                let w = w_direct_all(&group, j, k, &domain, &budget)?;
                let rhs = prop5_rhs(j, n, q, ch, k, t, ell, &e_size)?;
                let phi_m = params.phi(k + t + ell - j);
                for (eps, we) in w.iter().enumerate() {
                    let lhs = prop5_lhs(we, &phi_m, &phi_t, n, j, q, ell);
                    out.checks.push(Check::le(
                        format!("prop5 k={k} j={j} eps={eps}"),
                        &lhs,
                        &rhs,
                        lhs <= rhs,
                    ));
                }
            }
        }
        suite(&mut out, "prop5", before);
        let before = out.checks.len();
        for k in a.k.iter() {
            for eps in 0..group.order() {
                let dist = exact_distribution(&group, eps, k, &domain, &budget, a.common.exec())?;
                for r in 0..dist.counts.len() {
                    let lhs = thm5_lhs(&dist.probability(r), r, n, q, k, t, ell, |m| params.phi(m));
                    let rhs = thm5_rhs(r, n, q, ch, k, t, ell)?;
                    out.checks.push(Check::le(
                        format!("thm5 k={k} eps={eps} r={r}"),
                        &lhs,
                        &rhs,
                        lhs <= rhs,
                    ));
                }
            }
        }
        suite(&mut out, "thm5", before);
    }

    for c in &out.checks {
        let (suite_name, case) = c.name.split_once(' ').unwrap_or((&c.name, ""));
        out.table.rows.push(vec![
            suite_name.to_string(),
            case.to_string(),
            c.relation.to_string(),
            c.lhs.clone().unwrap_or_default(),
            c.rhs.clone().unwrap_or_default(),
            c.passed.to_string(),
        ]);
    }
    out.data = json!({ "n": n, "checks_per_suite": counts, "skipped": skipped });
    Ok(out)
}
