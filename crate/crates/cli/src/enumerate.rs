//! Subcommands that enumerate class members: `exact-dist`, `moments-check`,
//! `approx` and `rs`.

use clap::Args;
use hayes_core::asym::{binomial_approx_exact, poisson_approx, rs_asym, thm1_error_envelope_exact, thm2_formula};
use hayes_core::comb::to_f64;
use hayes_core::dist::{
    classify_row, exact_distribution, moment_identity, rs_codeword_oracle, rs_distance_row, w_direct_all,
    RSDistanceRow, WordClass,
};
use hayes_core::ffield::{parse_poly, FieldSpec, Polynomial};
use hayes_core::hayes::{ClassGroup, HayesParams};
use hayes_core::{Budget, Error, Result};
use num_bigint::BigUint;
use num_traits::{Signed, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{CommonArgs, DomainArgs, FieldArgs, HayesArgs, Span};
use crate::report::{Check, Outcome, Table};

#[derive(Args, Debug, Serialize)]
pub struct ExactDistArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub hayes: HayesArgs,
    /// Free degree(s) k; members have degree k + t + ℓ.
    #[arg(long, default_value = "1")]
    pub k: Span,
    #[command(flatten)]
    #[serde(flatten)]
    pub domain: DomainArgs,
    /// Restrict to one class index.
    #[arg(long)]
    pub eps: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct MomentsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub hayes: HayesArgs,
    #[arg(long, default_value = "1")]
    pub k: Span,
    #[command(flatten)]
    #[serde(flatten)]
    pub domain: DomainArgs,
    #[arg(long)]
    pub eps: Option<usize>,
    /// Check this many classes drawn with `--seed` instead of all of them.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct ApproxArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub hayes: HayesArgs,
    #[arg(long, default_value = "1")]
    pub k: Span,
    #[command(flatten)]
    #[serde(flatten)]
    pub domain: DomainArgs,
    #[arg(long)]
    pub eps: Option<usize>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

#[derive(Args, Debug, Serialize)]
pub struct RsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub field: FieldArgs,
    /// Code dimension.
    #[arg(long)]
    pub k: usize,
    /// Received words have degree k + ℓ.
    #[arg(long, default_value_t = 1)]
    pub ell: usize,
    /// Classify every received word, one class at a time.
    #[arg(long, conflicts_with = "word")]
    pub census: bool,
    /// One received word in text form.
    #[arg(long, required_unless_present = "census")]
    pub word: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: CommonArgs,
}

/// Members are listed in census output up to this many per class.
const LIST_MEMBERS: u64 = 64;

fn classes(group: &ClassGroup, eps: Option<usize>) -> Result<Vec<usize>> {
    match eps {
        Some(e) if e < group.order() => Ok(vec![e]),
        Some(e) => Err(Error::Validation(format!("class {e} out of range 0..{}", group.order()))),
        None => Ok((0..group.order()).collect()),
    }
}

fn class_info(group: &ClassGroup, eps: usize) -> Value {
    let sig = group.signature_of(eps);
    json!({
        "eps": eps,
        "representative": group.representative(eps).to_string(),
        "leading": sig.leading.iter().map(|c| c.index()).collect::<Vec<_>>(),
        "residue": sig.residue.to_string(),
    })
}

pub fn exact_dist(a: &ExactDistArgs) -> Result<Outcome> {
    let budget = a.common.budget()?;
    let group = a.hayes.group(&budget)?;
    let domain = a.domain.resolve(group.params())?;
    let mut out = Outcome {
        table: Table::new(&["k", "eps", "representative", "r", "count", "total", "probability"]),
        ..Outcome::default()
    };
    let mut data = Vec::new();
    for k in a.k.iter() {
        for eps in classes(&group, a.eps)? {
            let dist = exact_distribution(&group, eps, k, &domain, &budget, a.common.exec())?;
            let sum: BigUint = dist.counts.iter().sum();
            out.checks
                .push(Check::eq(format!("k={k} eps={eps} mass"), &sum, &dist.total, sum == dist.total));
            let rep = group.representative(eps).to_string();
            for (r, c) in dist.counts.iter().enumerate() {
                out.table.push(vec![
                    k.to_string(),
                    eps.to_string(),
                    rep.clone(),
                    r.to_string(),
                    c.to_string(),
                    dist.total.to_string(),
                    dist.probability(r).to_string(),
                ]);
            }
            let mut v = dist.to_json();
            v["representative"] = json!(rep);
            data.push(v);
        }
    }
    out.data = json!({ "classes": group.order(), "distributions": data });
    Ok(out)
}

pub fn moments_check(a: &MomentsArgs) -> Result<Outcome> {
    let budget = a.common.budget()?;
    let group = a.hayes.group(&budget)?;
    let params = group.params();
    let domain = a.domain.resolve(params)?;
    let mut picked = classes(&group, a.eps)?;
    if let Some(s) = a.sample {
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let mut idx = sample(&mut rng, picked.len(), s.min(picked.len())).into_vec();
        idx.sort_unstable();
        picked = idx.into_iter().map(|i| picked[i]).collect();
    }
    let mut out = Outcome {
        table: Table::new(&["k", "eps", "representative", "j", "lhs", "rhs", "holds"]),
        ..Outcome::default()
    };
    let mut data = Vec::new();
    for k in a.k.iter() {
        let top = k + params.t() + params.ell();
        // W_j for every class at once, j = k+1..=top
        let w: Vec<Vec<BigUint>> = (k + 1..=top)
            .map(|j| w_direct_all(&group, j, k, &domain, &budget))
            .collect::<Result<_>>()?;
        for &eps in &picked {
            let dist = exact_distribution(&group, eps, k, &domain, &budget, a.common.exec())?;
            let we: Vec<BigUint> = w.iter().map(|col| col[eps].clone()).collect();
            let rows = moment_identity(&dist, &we)?;
            let rep = group.representative(eps).to_string();
            for row in &rows {
                out.checks.push(Check::eq(
                    format!("k={k} eps={eps} E[C(Y,{})]", row.j),
                    &row.lhs,
                    &row.rhs,
                    row.holds,
                ));
                out.table.push(vec![
                    k.to_string(),
                    eps.to_string(),
                    rep.clone(),
                    row.j.to_string(),
                    row.lhs.to_string(),
                    row.rhs.to_string(),
                    row.holds.to_string(),
                ]);
            }
            let mut v = class_info(&group, eps);
            v["k"] = json!(k);
            v["moments"] = serde_json::to_value(&rows).expect("rows serialize");
            data.push(v);
        }
    }
    out.data = json!({ "n": domain.len(), "classes": group.order(), "results": data });
    Ok(out)
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.12e}")
}

pub fn approx(a: &ApproxArgs) -> Result<Outcome> {
    let budget = a.common.budget()?;
    let group = a.hayes.group(&budget)?;
    let params = group.params();
    let domain = a.domain.resolve(params)?;
    let (n, q, t, ell) = (domain.len(), group.field().q() as u64, params.t(), params.ell());
    let mut out = Outcome {
        table: Table::new(&[
            "k",
            "eps",
            "r",
            "p_exact",
            "binomial",
            "poisson",
            "thm1_envelope",
            "thm2",
            "ratio_thm2",
        ]),
        ..Outcome::default()
    };
    let mut worst = 0f64;
    for k in a.k.iter() {
        for eps in classes(&group, a.eps)? {
            let dist = exact_distribution(&group, eps, k, &domain, &budget, a.common.exec())?;
            for r in 0..dist.counts.len() {
                let p = dist.probability(r);
                let binom = binomial_approx_exact(r, n, q);
                let env = thm1_error_envelope_exact(r, n, q, k).ok();
                if let Some(env) = &env {
                    let diff = (&p - &binom).abs();
                    if !env.is_zero() {
                        worst = worst.max(to_f64(&(&diff / env)));
                    }
                    out.checks.push(Check::le(
                        format!("k={k} eps={eps} r={r} |P - binomial|"),
                        &diff,
                        env,
                        &diff <= env,
                    ));
                }
                let thm2 = thm2_formula(r, n, q, k, t, ell);
                let ratio = if thm2.is_zero() {
                    String::new()
                } else {
                    fmt_f64(to_f64(&(&p / &thm2)))
                };
                out.table.push(vec![
                    k.to_string(),
                    eps.to_string(),
                    r.to_string(),
                    fmt_f64(to_f64(&p)),
                    fmt_f64(to_f64(&binom)),
                    fmt_f64(poisson_approx(r, n, q)),
                    env.map(|e| fmt_f64(to_f64(&e))).unwrap_or_default(),
                    fmt_f64(to_f64(&thm2)),
                    ratio,
                ]);
            }
        }
    }
    let rows: Vec<Value> = out
        .table
        .rows
        .iter()
        .map(|row| {
            let obj: serde_json::Map<String, Value> = out
                .table
                .header
                .iter()
                .zip(row)
                .map(|(h, c)| (h.to_string(), json!(c)))
                .collect();
            Value::Object(obj)
        })
        .collect();
    out.data = json!({ "n": n, "max_error_over_envelope": worst, "rows": rows });
    Ok(out)
}

fn rs_group(a: &RsArgs, budget: &Budget) -> Result<ClassGroup> {
    let f = a.field.field()?;
    ClassGroup::new(&HayesParams::new(&f, a.ell, Polynomial::one())?, budget)
}

fn row_checks(out: &mut Outcome, label: &str, row: &RSDistanceRow, field: &FieldSpec, budget: &Budget) {
    let codewords = BigUint::from(field.q()).pow(row.k as u32);
    let sum: BigUint = row.counts.iter().sum();
    out.checks
        .push(Check::eq(format!("{label} codewords"), &sum, &codewords, sum == codewords));
    // the oracle is skipped when it does not fit the budget
    if let Ok(mut oracle) = rs_codeword_oracle(field, &row.f, row.k, budget) {
        let mut got = row.counts.clone();
        while got.last().is_some_and(|c| c.is_zero()) {
            got.pop();
        }
        while oracle.last().is_some_and(|c| c.is_zero()) {
            oracle.pop();
        }
        let show = |v: &[BigUint]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        out.checks
            .push(Check::eq(format!("{label} oracle"), show(&got), show(&oracle), got == oracle));
    }
}

pub fn rs(a: &RsArgs) -> Result<Outcome> {
    let budget = a.common.budget()?;
    let group = rs_group(a, &budget)?;
    let field = group.field().clone();
    let q = field.q();
    let mut out = Outcome {
        table: Table::new(&["eps", "word", "class", "words", "r", "count", "asym"]),
        ..Outcome::default()
    };
    let push_rows = |out: &mut Outcome, eps: usize, word: &str, class: WordClass, words: &str, row: &RSDistanceRow| {
        for (r, c) in row.counts.iter().enumerate() {
            out.table.push(vec![
                eps.to_string(),
                word.to_string(),
                class.to_string(),
                words.to_string(),
                r.to_string(),
                c.to_string(),
                fmt_f64(rs_asym(r, q as u64, a.k, a.ell)),
            ]);
        }
    };
    if let Some(text) = &a.word {
        let f = parse_poly(&field, text)?;
        let row = rs_distance_row(&group, &f, a.k, &budget, a.common.exec())?;
        let class = classify_row(&row);
        let eps = group.class_of(&f).expect("Q = 1");
        row_checks(&mut out, &format!("word {f}"), &row, &field, &budget);
        push_rows(&mut out, eps, &f.to_string(), class, "1", &row);
        out.data = json!({
            "word": f.to_string(),
            "eps": eps,
            "class": class,
            "row": row.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        });
        return Ok(out);
    }
    let d = a.k + a.ell;
    let words_per_class = BigUint::from(q).pow(a.k as u32);
    let mut tallies = [BigUint::zero(), BigUint::zero(), BigUint::zero()];
    let mut entries = Vec::new();
    for eps in 0..group.order() {
        let f = group.member_base(eps, d)?;
        let row = rs_distance_row(&group, &f, a.k, &budget, a.common.exec())?;
        let class = classify_row(&row);
        tallies[class as usize] += &words_per_class;
        row_checks(&mut out, &format!("eps={eps}"), &row, &field, &budget);
        let rep = group.representative(eps).to_string();
        push_rows(&mut out, eps, &rep, class, &words_per_class.to_string(), &row);
        let mut v = class_info(&group, eps);
        v["class"] = json!(class);
        v["words"] = json!(words_per_class.to_string());
        if words_per_class <= BigUint::from(LIST_MEMBERS) {
            let members: Vec<String> = group.class_members(eps, d, &budget)?.map(|m| m.to_string()).collect();
            v["members"] = json!(members);
        }
        v["row"] = json!(row.counts.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        entries.push(v);
    }
    out.data = json!({
        "k": a.k,
        "ell": a.ell,
        "deep_hole_words": tallies[WordClass::DeepHole as usize].to_string(),
        "ordinary_words": tallies[WordClass::Ordinary as usize].to_string(),
        "neither_words": tallies[WordClass::Neither as usize].to_string(),
        "census": entries,
    });
    Ok(out)
}
