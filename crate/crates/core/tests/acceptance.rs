//! Acceptance criteria, one line per criterion.
//!
//! Runs without the libtest harness so the PASS/FAIL lines always show up in
//! `cargo test` output. Exits non-zero if any criterion fails.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use hayes_core::asym::{
    binomial_approx_exact, condition_a_at, gamma_at_most_one, lemma6_bound, prop5_lhs, prop5_rhs, sufficient_gamma_max,
    thm1_error_envelope_exact, thm2_formula, thm5_lhs, thm5_rhs, Lemma6Variant,
};
use hayes_core::chars::{all_characters, decompose, l_polynomial_from_histograms, weil_bound};
use hayes_core::comb::{
    a_closed, a_cycle, a_series, binom_lower_bound, binomial, ln_rational, lw_sieve_check, mu, rat, rat_int, HTable,
    Rational,
};
use hayes_core::dist::{
    exact_distribution, moment_identity, rs_codeword_oracle, rs_distance_row, classify_row,
    verify_gf_identities, w_direct_all, WordClass,
};
use hayes_core::ffield::{enumerate_monic, parse_poly, FieldSpec, Polynomial};
use hayes_core::hayes::{distinct_irreducible_factors, ClassGroup, HayesParams};
use hayes_core::par::Execution;
use hayes_core::Budget;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn field(q: u32) -> FieldSpec {
    match q {
        4 => FieldSpec::new(2, 2),
        8 => FieldSpec::new(2, 3),
        9 => FieldSpec::new(3, 2),
        16 => FieldSpec::new(2, 4),
        25 => FieldSpec::new(5, 2),
        p => FieldSpec::prime(p),
    }
    .unwrap()
}

/// `1, x, x+1`, the first irreducible quadratic and `x^2 + x`.
fn moduli(f: &FieldSpec) -> Vec<Polynomial> {
    let irreducible = enumerate_monic(f, 2)
        .unwrap()
        .find(|g| {
            let fs = distinct_irreducible_factors(f, g);
            fs.len() == 1 && fs[0] == *g
        })
        .unwrap();
    ["1", "x", "x + 1"]
        .iter()
        .map(|s| parse_poly(f, s).unwrap())
        .chain([irreducible, parse_poly(f, "x^2 + x").unwrap()])
        .collect()
}

struct Case {
    q: u32,
    ell: usize,
    group: ClassGroup,
}

impl Case {
    fn params(&self) -> &HayesParams {
        self.group.params()
    }

    fn label(&self) -> String {
        format!("q={} ell={} Q={}", self.q, self.ell, self.params().modulus())
    }
}

fn grid(qs: &[u32], ells: &[usize], max_t: usize) -> Vec<Case> {
    let mut out = Vec::new();
    for &q in qs {
        let f = field(q);
        for &ell in ells {
            for m in moduli(&f) {
                if m.deg() > max_t {
                    continue;
                }
                let hp = HayesParams::new(&f, ell, m).unwrap();
                let group = ClassGroup::new(&hp, &Budget::default()).unwrap();
                out.push(Case { q, ell, group });
            }
        }
    }
    out
}

fn criterion1_grid() -> Vec<Case> {
    grid(&[2, 3, 4, 5], &[0, 1, 2], 2)
}

fn brute_phi(f: &FieldSpec, j: usize, m: &Polynomial) -> u64 {
    enumerate_monic(f, j)
        .unwrap()
        .filter(|g| f.poly_gcd(g, m) == Polynomial::one())
        .count() as u64
}

fn c1_structure_sizes() -> Outcome {
    let budget = Budget::default();
    let mut checked = 0;
    for case in criterion1_grid() {
        let p = case.params();
        let f = case.group.field();
        let phi_t = brute_phi(f, p.t(), p.modulus());
        let want = (case.q as u64).pow(case.ell as u32) * phi_t;
        if case.group.order() as u64 != want {
            return Err(format!("{}: |E| = {} but q^ell Phi_t = {want}", case.label(), case.group.order()));
        }
        for k in 0..=3usize {
            let hist = case.group.degree_histogram(k + p.t() + p.ell(), &budget).unwrap();
            let qk = (case.q as u64).pow(k as u32);
            if let Some(eps) = hist.iter().position(|&c| c != qk) {
                return Err(format!("{} k={k}: |M(eps={eps})| = {} != q^k = {qk}", case.label(), hist[eps]));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (q, ell, Q, k) cases"))
}

fn c2_moment_identity() -> Outcome {
    let budget = Budget::default();
    let mut rows = 0;
    for case in criterion1_grid() {
        let p = case.params();
        let dom = p.default_domain();
        for k in 0..=3usize {
            let w: Vec<Vec<BigUint>> = (k + 1..=k + p.t() + p.ell())
                .map(|j| w_direct_all(&case.group, j, k, &dom, &budget).unwrap())
                .collect();
            for eps in 0..case.group.order() {
                let dist = exact_distribution(&case.group, eps, k, &dom, &budget, Execution::Parallel).unwrap();
                let w_eps: Vec<BigUint> = w.iter().map(|v| v[eps].clone()).collect();
                for row in moment_identity(&dist, &w_eps).unwrap() {
                    if !row.holds {
                        return Err(format!(
                            "{} k={k} eps={eps} j={}: {} != {}",
                            case.label(),
                            row.j,
                            row.lhs,
                            row.rhs
                        ));
                    }
                    rows += 1;
                }
            }
        }
    }
    Ok(format!("{rows} exact moment equalities"))
}

fn c3_generating_functions() -> Outcome {
    let budget = Budget::default();
    let (mut slices, mut pgf) = (0, 0);
    for case in grid(&[2, 3], &[0, 1, 2], 1) {
        let p = case.params();
        let d_max = p.t() + p.ell() + 3;
        let rep = verify_gf_identities(&case.group, d_max, &p.default_domain(), &budget).unwrap();
        if !rep.passed() {
            return Err(format!("{}: {:?}", case.label(), rep.mismatches.first()));
        }
        slices += rep.slices_checked;
        pgf += rep.pgf_checked;
    }
    Ok(format!("{slices} F/G slices, {pgf} PGF slices"))
}

fn c4_sieve() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let budget = Budget::default();
    for i in 0..50 {
        let n = rng.gen_range(1..=5usize);
        let j = rng.gen_range(1..=4usize);
        let vals: Vec<Rational> = (0..n.pow(j as u32))
            .map(|_| rat(rng.gen_range(-50..=50), rng.gen_range(1..=12)))
            .collect();
        let table = HTable::from_fn(n, j, |t| {
            let idx = t.iter().rev().fold(0usize, |acc, &x| acc * n + x);
            vals[idx].clone()
        });
        let (direct, sieve) = lw_sieve_check(&table, &budget).unwrap();
        if direct != sieve {
            return Err(format!("table {i} (n={n}, j={j}): {direct} != {sieve}"));
        }
    }
    Ok("50 seeded tables".into())
}

fn c5_a_triple() -> Outcome {
    let mut count = 0;
    for p in [2u64, 3, 5] {
        for a in [rat(1, 1), rat(2, 1), rat(7, 2)] {
            for b in [rat(0, 1), rat(1, 2), rat(1, 1)] {
                for j in 0..=8 {
                    let x = a_cycle(j, &a, &b, p).unwrap();
                    let y = a_series(j, &a, &b, p);
                    let z = a_closed(j, &a, &b, p);
                    if x != y || y != z {
                        return Err(format!("j={j} p={p} a={a} b={b}: {x}, {y}, {z}"));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} triples equal"))
}

fn c6_characters() -> Outcome {
    let budget = Budget::default();
    let (mut chars, mut roots, mut worst) = (0usize, 0usize, 0f64);
    let mut multiple_at_one = Vec::new();
    for case in criterion1_grid() {
        let g = &case.group;
        let p = g.params();
        let table = all_characters(&decompose(g));
        let orth = table.orthogonality_error(g.identity());
        worst = worst.max(orth);
        if orth > 1e-9 {
            return Err(format!("{}: orthogonality error {orth:e}", case.label()));
        }
        let top = 6.max(p.ell() + p.t() + 2);
        let hists: Vec<Vec<u64>> = (0..=top).map(|j| g.degree_histogram(j, &budget).unwrap()).collect();
        let qf = case.q as f64;
        let tol = 1e-9 * g.order() as f64;
        for chi in 0..table.len() {
            let trivial = table.characters()[chi].is_trivial();
            for (j, h) in hists.iter().enumerate().take(7) {
                let s = table.sum_over_histogram(chi, h).norm();
                if !trivial && s > weil_bound(g, j) * (1.0 + 1e-12) + tol {
                    return Err(format!("{} chi={chi} j={j}: |sum| = {s} > {}", case.label(), weil_bound(g, j)));
                }
            }
            if trivial {
                continue;
            }
            let lp = l_polynomial_from_histograms(&table, chi, g, &hists).map_err(|e| format!("{}: {e}", case.label()))?;
            if (lp.coeffs[0] - 1.0).norm() > 1e-9 {
                return Err(format!("{} chi={chi}: c_0 = {}", case.label(), lp.coeffs[0]));
            }
            let bound = (p.ell() + p.t()) as isize - 1;
            for (j, c) in lp.coeffs.iter().enumerate() {
                if j as isize > bound && c.norm() > 1e-6 * qf.powf(j as f64 / 2.0) {
                    return Err(format!("{} chi={chi}: c_{j} = {c} does not vanish", case.label()));
                }
            }
            let inv_sqrt = qf.powf(-0.5);
            let mut at_one = 0;
            for z in &lp.roots {
                let m = z.norm();
                if (m - 1.0).abs() > 1e-6 && (m - inv_sqrt).abs() > 1e-6 {
                    return Err(format!("{} chi={chi}: root {z} has modulus {m}", case.label()));
                }
                if (z - 1.0).norm() <= 1e-6 {
                    at_one += 1;
                }
                roots += 1;
            }
            if at_one > 1 {
                multiple_at_one.push(format!("{} chi={chi}", case.label()));
            }
            chars += 1;
        }
    }
    let summary = format!("{chars} nontrivial characters, {roots} roots, worst orthogonality error {worst:.1e}");
    if !multiple_at_one.is_empty() {
        return Err(format!(
            "{summary}; {} characters have more than one root at 1: {}",
            multiple_at_one.len(),
            multiple_at_one.join(", ")
        ));
    }
    Ok(summary)
}

fn c7_bounds() -> Outcome {
    let budget = Budget::default();
    let mut notes = Vec::new();

    // Φ sandwich
    let mut phis = 0;
    for q in [2u32, 3, 4, 5] {
        let f = field(q);
        for m in moduli(&f) {
            let degs: Vec<usize> = distinct_irreducible_factors(&f, &m).iter().map(|g| g.deg()).collect();
            for j in 0..=6usize {
                let phi = hayes_core::hayes::phi(&f, j, &m);
                if phi != BigUint::from(brute_phi(&f, j, &m)) {
                    return Err(format!("Phi_{j}({m}) over F_{q} disagrees with brute force"));
                }
                let qj = BigInt::from(q).pow(j as u32);
                let lower = rat_int(qj.clone())
                    * (Rational::one()
                        - degs
                            .iter()
                            .map(|&d| Rational::new(BigInt::one(), BigInt::from(q).pow(d as u32)))
                            .sum::<Rational>());
                let phi_r = rat_int(BigInt::from(phi));
                if phi_r < lower || phi_r > rat_int(qj) {
                    return Err(format!("Phi_{j}({m}) over F_{q} outside the sandwich"));
                }
                phis += 1;
            }
        }
    }
    notes.push(format!("{phis} Phi sandwiches"));

    // binomial lower bound
    let mut bins = 0;
    for big_m in 2..=30u64 {
        for m in 1..big_m {
            let lb = binom_lower_bound(big_m, m).unwrap();
            let lb_exact = Rational::from_float(lb).unwrap();
            if lb_exact > rat_int(binomial(big_m, m)) {
                return Err(format!("binomial lower bound exceeds C({big_m},{m})"));
            }
            bins += 1;
        }
    }
    notes.push(format!("{bins} binomial lower bounds"));

    // μ bounds, on n ≤ q where D ⊆ F_q makes them meaningful
    let (mut mus, mut skipped) = (0, 0);
    for q in 2..=9u64 {
        for n in 0..=12usize {
            for r in 0..=n {
                for m in 0..=12usize {
                    if n as u64 > q {
                        skipped += 1;
                        continue;
                    }
                    let v = mu(m, r, n, q);
                    let qb = BigInt::from(q);
                    if m >= 1 && v < Rational::new(BigInt::from(q as i64 - n as i64 + r as i64), qb.clone()) {
                        return Err(format!("mu_{m}({r}) < mu_1({r}) at n={n} q={q}"));
                    }
                    let lim = Rational::new((&qb - BigInt::one()).pow((n - r) as u32), qb.pow((n - r) as u32));
                    let gap = Rational::new(binomial((n - r) as u64, m as u64 + 1), qb.pow(m as u32 + 1));
                    if (v - lim).abs() > gap {
                        return Err(format!("mu_{m}({r}) truncation bound fails at n={n} q={q}"));
                    }
                    mus += 1;
                }
            }
        }
    }
    notes.push(format!("{mus} mu cases ({skipped} with n > q skipped)"));

    // closed bounds on ln A_j
    let mut l6 = 0;
    for p in [2u64, 3, 5] {
        for n in 1..=12usize {
            for g in [rat(1, 4), rat(1, 2), rat(1, 1)] {
                let gf = g.to_f64().unwrap();
                for j in 1..=8usize {
                    let exact = ln_rational(&a_series(j, &rat_int(n as i64), &g, p));
                    for v in [Lemma6Variant::A, Lemma6Variant::B] {
                        if let Ok(bound) = lemma6_bound(j, n, gf, p, v) {
                            if exact > bound {
                                return Err(format!("ln A_j bound {v:?} fails at j={j} n={n} gamma={g} p={p}"));
                            }
                            l6 += 1;
                        }
                    }
                }
            }
        }
    }
    notes.push(format!("{l6} ln A_j bounds"));

    // character-sum bounds on the structure grid with gamma <= 1, ell >= 1
    let (mut p5, mut t5, mut skipped_gamma) = (0, 0, 0);
    for case in criterion1_grid() {
        let p = case.params();
        let (t, ell) = (p.t(), p.ell());
        let dom = p.default_domain();
        let n = dom.len();
        if ell == 0 {
            continue;
        }
        if !gamma_at_most_one(n, case.q as u64, t, ell) {
            skipped_gamma += 1;
            continue;
        }
        let q = case.q as u64;
        let ch = case.group.field().p() as u64;
        let e_size = BigUint::from(case.group.order());
        let phi_t = p.phi(t);
        for k in 0..=3usize {
            let w: Vec<Vec<BigUint>> = (k + 1..=k + t + ell)
                .map(|j| w_direct_all(&case.group, j, k, &dom, &budget).unwrap())
                .collect();
            for (i, wj) in w.iter().enumerate() {
                let j = k + 1 + i;
                let rhs = prop5_rhs(j, n, q, ch, k, t, ell, &e_size).unwrap();
                let phi_m = p.phi(k + t + ell - j);
                for (eps, we) in wj.iter().enumerate() {
                    let lhs = prop5_lhs(we, &phi_m, &phi_t, n, j, q, ell);
                    if lhs > rhs {
                        return Err(format!(
                            "{} k={k} j={j} eps={eps}: |W_j - main| = {lhs} > {}",
                            case.label(),
                            rhs.to_f64().unwrap_or(f64::NAN)
                        ));
                    }
                    p5 += 1;
                }
            }
            for eps in 0..case.group.order() {
                let dist = exact_distribution(&case.group, eps, k, &dom, &budget, Execution::Parallel).unwrap();
                for r in 0..=n.min(k + t + ell) {
                    let lhs = thm5_lhs(&dist.probability(r), r, n, q, k, t, ell, |m| p.phi(m));
                    let rhs = thm5_rhs(r, n, q, ch, k, t, ell).unwrap();
                    if lhs > rhs {
                        return Err(format!(
                            "{} k={k} eps={eps} r={r}: lhs {} > rhs {}",
                            case.label(),
                            lhs.to_f64().unwrap_or(f64::NAN),
                            rhs.to_f64().unwrap_or(f64::NAN)
                        ));
                    }
                    t5 += 1;
                }
            }
        }
    }
    notes.push(format!("{p5} W_j bounds, {t5} P(Y=r) bounds ({skipped_gamma} cases with gamma > 1 skipped)"));
    Ok(notes.join("; "))
}

fn c8_binomial_envelope() -> Outcome {
    let budget = Budget::default();
    let mut checked = 0;
    let mut worst = 0f64;
    for q in [4u32, 5, 8, 9] {
        let f = field(q);
        let hp = HayesParams::new(&f, 1, Polynomial::one()).unwrap();
        let g = ClassGroup::new(&hp, &budget).unwrap();
        let dom = hp.default_domain();
        let n = dom.len();
        for k in 4..=7usize {
            if (q as u64).pow(k as u32) > 10_000_000 {
                continue;
            }
            for eps in 0..g.order() {
                let dist = exact_distribution(&g, eps, k, &dom, &budget, Execution::Parallel).unwrap();
                for r in 0..k {
                    let diff = (dist.probability(r) - binomial_approx_exact(r, n, q as u64)).abs();
                    let env = thm1_error_envelope_exact(r, n, q as u64, k).unwrap();
                    if diff > env {
                        return Err(format!("q={q} k={k} eps={eps} r={r}: {diff} > {env}"));
                    }
                    if !env.is_zero() {
                        worst = worst.max((diff / env).to_f64().unwrap());
                    }
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} (q, k, eps, r) cases, max error/envelope {worst:.3}"))
}

fn c9_reed_solomon() -> Outcome {
    let budget = Budget::default();
    let mut words = 0;
    for q in [2u32, 3, 4] {
        let f = field(q);
        for ell in [1usize, 2] {
            let g = ClassGroup::new(&HayesParams::new(&f, ell, Polynomial::one()).unwrap(), &budget).unwrap();
            for k in 1..=3usize {
                for w in enumerate_monic(&f, k + ell).unwrap() {
                    let row = rs_distance_row(&g, &w, k, &budget, Execution::Sequential).unwrap();
                    let mut oracle = rs_codeword_oracle(&f, &w, k, &budget).unwrap();
                    let mut got = row.counts.clone();
                    while got.last().is_some_and(|c| c.is_zero()) {
                        got.pop();
                    }
                    while oracle.last().is_some_and(|c| c.is_zero()) {
                        oracle.pop();
                    }
                    if got != oracle {
                        return Err(format!("q={q} ell={ell} k={k} f={w}: {got:?} != {oracle:?}"));
                    }
                    words += 1;
                }
            }
        }
    }
    let f = field(2);
    let g = ClassGroup::new(&HayesParams::new(&f, 1, Polynomial::one()).unwrap(), &budget).unwrap();
    let mut deep = Vec::new();
    for w in enumerate_monic(&f, 2).unwrap() {
        let row = rs_distance_row(&g, &w, 1, &budget, Execution::Sequential).unwrap();
        if classify_row(&row) == WordClass::DeepHole {
            deep.push(w.to_string());
        }
    }
    if deep != ["x^2", "x^2 + 1"] {
        return Err(format!("deep holes for q=2, k=1, ell=1: {deep:?}"));
    }
    Ok(format!("{words} received words match the oracle; deep holes {deep:?}"))
}

fn c10_class_formula_tracking() -> Outcome {
    let budget = Budget::default();
    let mut csv = String::from("q,k,eps,r,p_exact,thm2,ratio\n");
    let mut worst = 0f64;
    let mut rows = 0;
    for q in [16u32, 25] {
        let f = field(q);
        let hp = HayesParams::new(&f, 1, Polynomial::one()).unwrap();
        let g = ClassGroup::new(&hp, &budget).unwrap();
        let dom = hp.default_domain();
        let n = dom.len();
        for k in 1.. {
            if (q as u64).pow(k as u32) > 10_000_000 {
                break;
            }
            for eps in 0..g.order() {
                let dist = exact_distribution(&g, eps, k, &dom, &budget, Execution::Parallel).unwrap();
                for r in 0..dist.counts.len() {
                    if dist.counts[r].is_zero() {
                        continue;
                    }
                    let exact = dist.probability(r);
                    let approx = thm2_formula(r, n, q as u64, k, 0, 1);
                    if approx.is_zero() {
                        return Err(format!("q={q} k={k} eps={eps} r={r}: formula is zero where mass is not"));
                    }
                    let ratio = (&exact / &approx).to_f64().unwrap();
                    if !ratio.is_finite() {
                        return Err(format!("q={q} k={k} eps={eps} r={r}: ratio {ratio}"));
                    }
                    if r + 2 <= k {
                        worst = worst.max((ratio - 1.0).abs());
                    }
                    let _ = writeln!(
                        csv,
                        "{q},{k},{eps},{r},{:.12e},{:.12e},{ratio:.12}",
                        exact.to_f64().unwrap(),
                        approx.to_f64().unwrap()
                    );
                    rows += 1;
                }
            }
        }
    }
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("class_formula_tracking.csv");
    std::fs::write(&path, csv).map_err(|e| e.to_string())?;
    if worst >= 0.25 {
        return Err(format!("max |ratio - 1| over r <= k-2 is {worst:.4}"));
    }
    Ok(format!("{rows} ratios, max |ratio - 1| over r <= k-2 = {worst:.2e}, report {}", path.display()))
}

fn c11_regimes() -> Outcome {
    if !condition_a_at(2, 1.0 / 3.0, 0.0, 0.1) {
        return Err("worked value p=2, c=1/3, gamma=0, delta0=0.1 is false".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    for i in 0..100 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let c_hi = (p - 1) as f64 / (p + 1) as f64;
        let c = rng.gen_range(0.01..=c_hi);
        let gamma = rng.gen_range(0.0..=sufficient_gamma_max(p, c));
        if !condition_a_at(p, c, gamma, 1e-4) {
            return Err(format!("point {i}: p={p} c={c} gamma={gamma}"));
        }
    }
    Ok("worked value true; 100 sampled points in the sufficient range satisfy it".into())
}

/// Criteria left red because the claim they test is false on part of the
/// grid. Their FAIL lines are still printed; they do not set the exit code.
/// Criterion 6: the L-polynomial of an imprimitive character picks up one
/// Euler factor `1 - χ*(P) z^{deg P}` per prime `P | Q` missing from its
/// conductor, so `Q = x^2 + x` yields a double root at `z = 1` whenever the
/// inducing character is 1 at both `x` and `x + 1`.
const KNOWN_RED: &[usize] = &[6];

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 11] = [
        ("structure sizes", c1_structure_sizes, Duration::from_secs(60)),
        ("moment identity", c2_moment_identity, Duration::from_secs(300)),
        ("generating functions", c3_generating_functions, Duration::from_secs(300)),
        ("coordinate sieve", c4_sieve, Duration::from_secs(60)),
        ("A_j three routes", c5_a_triple, Duration::from_secs(60)),
        ("character layer", c6_characters, Duration::from_secs(300)),
        ("bound suite", c7_bounds, Duration::from_secs(600)),
        ("binomial envelope", c8_binomial_envelope, Duration::from_secs(900)),
        ("Reed-Solomon rows", c9_reed_solomon, Duration::from_secs(120)),
        ("asymptotic tracking", c10_class_formula_tracking, Duration::from_secs(1200)),
        ("regime predicates", c11_regimes, Duration::from_secs(1)),
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if took <= *limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took longer than {limit:?}")),
            Err(e) => ("FAIL", e),
        };
        let known = KNOWN_RED.contains(&id);
        if status == "FAIL" && !known {
            failed += 1;
        }
        let tag = if status == "FAIL" && known { " (known, see README)" } else { "" };
        println!("criterion {id:>2} {status}{tag} [{name}] {:.2}s: {detail}", took.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
