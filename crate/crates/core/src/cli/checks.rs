//! The named checks behind `verify`. Each returns a report; errors are
//! reserved for bad configuration.

use std::collections::HashSet;
use std::time::Instant;

use crate::bijections::{phi, phi0, phi0_source_params, psi, psi0};
use crate::classes::{count_family, count_series, enumerate_distinct_eta, enumerate_family, is_bbar, Family};
use crate::core::{DistinctEtaPartition, Overpartition, Params};
use crate::error::{Error, Result};
use crate::moves::gordon_marked;
use crate::qseries::{
    andrews_gordon, bailey_pair_check, bp1_pair, bpg_pair, bpg_pair_chain, bressoud_even, chain_pair,
    chain_pair_direct, corollary_lc_sides, gen_a_series, gollnitz_gordon, multisum_lhs, pochhammer,
    unitbp2_pair, verify_identity, BaileyPair, QSeries,
};
use crate::report::VerificationReport;

pub const CHECKS: &[&str] = &[
    "phi-roundtrip",
    "phi0-roundtrip",
    "rel-over1",
    "rel-over2",
    "abar-equals-bbar",
    "gf-thm",
    "bailey",
    "sum-side",
    "classic-ids",
];

/// Knobs shared by all checks.
#[derive(Clone, Debug)]
pub struct CheckInput {
    pub params: Option<Params>,
    pub max_weight: i64,
    pub trunc: i64,
    pub n_max: usize,
    pub pair: Option<BaileyPair>,
}

pub fn run_check(id: &str, input: &CheckInput) -> Result<VerificationReport> {
    let need = || input.params.as_ref().ok_or_else(|| Error::InvalidParams(format!("check `{id}` needs --params")));
    let (w, t) = (input.max_weight, input.trunc);
    match id {
        "phi-roundtrip" => phi_roundtrip(need()?, w),
        "phi0-roundtrip" => phi0_roundtrip(need()?, w),
        "rel-over1" => rel_over1(need()?, w),
        "rel-over2" => rel_over2(need()?, w),
        "abar-equals-bbar" => abar_equals_bbar(need()?, w),
        "gf-thm" => gf_thm(need()?, t),
        "sum-side" => sum_side(need()?, t),
        "bailey" => match &input.pair {
            Some(pair) => Ok(bailey_pair_check(pair, input.n_max.min(pair.n_max()), t)),
            None => bailey_suite(input.params.as_ref(), input.n_max, t),
        },
        "classic-ids" => classic_ids(t),
        _ => Err(Error::Parse(format!("unknown check `{id}`; expected one of {}", CHECKS.join(", ")))),
    }
}

type Forward<'a> = dyn Fn(&DistinctEtaPartition, &Overpartition) -> Result<Overpartition> + 'a;
type Backward<'a> = dyn Fn(&Overpartition) -> Result<(DistinctEtaPartition, Overpartition)> + 'a;
type Census<'a> = dyn Fn(&DistinctEtaPartition, &Overpartition, &Overpartition) -> bool + 'a;

/// Runs `forward` over every `(ζ, μ)` of total weight `≤ w`, checks the
/// image class, weight, roundtrip and injectivity, then compares per-weight
/// image counts with the target enumeration.
#[allow(clippy::too_many_arguments)]
fn exhaustive(
    name: &str,
    params: &Params,
    w: i64,
    source: (Family, &Params),
    target: Family,
    forward: &Forward,
    backward: &Backward,
    census: Option<&Census>,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let eta = params.eta;
    let mus = (0..=w).map(|m| enumerate_family(source.0, source.1, m)).collect::<Result<Vec<_>>>()?;
    let zetas: Vec<_> = (0..=w).map(|m| enumerate_distinct_eta(eta, m)).collect();
    let Family::Bbar(tj) = target else {
        return Err(Error::InvalidParams("target must be an overpartition class".into()));
    };
    let fail = |msg: String| Ok(VerificationReport::fail(name, msg).with_params(params).timed(start));
    let (mut left, mut right) = (Vec::new(), Vec::new());
    let mut pairs = 0usize;
    for n in 0..=w {
        let mut seen = HashSet::new();
        for zw in (0..=n).step_by(eta as usize) {
            for zeta in &zetas[zw as usize] {
                for mu in &mus[(n - zw) as usize] {
                    pairs += 1;
                    let pi = match forward(zeta, mu) {
                        Ok(p) => p,
                        Err(e) => return fail(format!("forward map failed on zeta={zeta}, mu={mu}: {e}")),
                    };
                    if pi.weight() != n {
                        return fail(format!("weight not preserved: zeta={zeta}, mu={mu} -> {pi}"));
                    }
                    if !is_bbar(&pi, params, tj) {
                        return fail(format!("image {pi} of zeta={zeta}, mu={mu} is outside the target class"));
                    }
                    if let Some(c) = census {
                        if !c(zeta, mu, &pi) {
                            return fail(format!("overline census wrong for zeta={zeta}, mu={mu} -> {pi}"));
                        }
                    }
                    match backward(&pi) {
                        Ok((z2, m2)) if z2 == *zeta && m2 == *mu => {}
                        Ok((z2, m2)) => {
                            return fail(format!("roundtrip of zeta={zeta}, mu={mu} via {pi} gave zeta={z2}, mu={m2}"))
                        }
                        Err(e) => return fail(format!("inverse failed on {pi}: {e}")),
                    }
                    if !seen.insert(pi.clone()) {
                        return fail(format!("{pi} is hit twice"));
                    }
                }
            }
        }
        left.push(seen.len() as u64);
        right.push(count_family(target, params, n)?);
    }
    Ok(VerificationReport::compare_counts(name, &left, &right)
        .with_params(params)
        .note(format!("{pairs} pairs checked up to weight {w}"))
        .timed(start))
}

pub fn phi_roundtrip(params: &Params, w: i64) -> Result<VerificationReport> {
    params.require_b()?;
    let eta = params.eta;
    let census = |zeta: &DistinctEtaPartition, mu: &Overpartition, pi: &Overpartition| {
        let n = gordon_marked(mu, params).len() as i64;
        let want = zeta.multipliers().iter().filter(|&&m| m > n).count();
        let got = pi.parts().iter().filter(|p| p.overlined && p.divisible_by(eta)).count();
        want == got
    };
    exhaustive(
        "phi-roundtrip",
        params,
        w,
        (Family::B(0), params),
        Family::Bbar(1),
        &|z, m| phi(z, m, params),
        &|p| psi(p, params),
        Some(&census),
    )
}

pub fn phi0_roundtrip(params: &Params, w: i64) -> Result<VerificationReport> {
    let src = phi0_source_params(params);
    exhaustive(
        "phi0-roundtrip",
        params,
        w,
        (Family::B(1), &src),
        Family::Bbar(0),
        &|z, m| phi0(z, m, params),
        &|p| psi0(p, params),
        None,
    )
}

fn counts_series(family: Family, params: &Params, w: i64) -> Result<QSeries> {
    Ok(QSeries::from_counts(&count_series(family, params, w)?))
}

/// `B̄₁` counts against `(−q^η;q^η)_∞` times the `B₀` counts.
pub fn rel_over1(params: &Params, w: i64) -> Result<VerificationReport> {
    params.require_b()?;
    let start = Instant::now();
    let lhs = counts_series(Family::Bbar(1), params, w)?;
    let rhs = pochhammer(-1, params.eta, params.eta, None, w)?.mul(&counts_series(Family::B(0), params, w)?);
    Ok(verify_identity("rel-over1", &lhs, &rhs).with_params(params).timed(start))
}

/// `B̄₀` counts against `(−q^η;q^η)_∞` times the `B₁(k−1, r−χ(r=k))` counts.
pub fn rel_over2(params: &Params, w: i64) -> Result<VerificationReport> {
    params.with_j(0).require_bbar()?;
    let start = Instant::now();
    let src = phi0_source_params(params);
    let lhs = counts_series(Family::Bbar(0), params, w)?;
    let rhs = pochhammer(-1, params.eta, params.eta, None, w)?.mul(&counts_series(Family::B(1), &src, w)?);
    Ok(verify_identity("rel-over2", &lhs, &rhs).with_params(params).timed(start))
}

/// `Ā_j(n) = B̄_j(n)` by double enumeration, `j` taken from the params.
pub fn abar_equals_bbar(params: &Params, w: i64) -> Result<VerificationReport> {
    let start = Instant::now();
    let j = params.j;
    let left = count_series(Family::Abar(j), params, w)?;
    let right = count_series(Family::Bbar(j), params, w)?;
    Ok(VerificationReport::compare_counts("abar-equals-bbar", &left, &right).with_params(params).timed(start))
}

/// Multisum against the `Ā₀` product.
pub fn gf_thm(params: &Params, t: i64) -> Result<VerificationReport> {
    let start = Instant::now();
    let lhs = multisum_lhs(params, t)?;
    let rhs = gen_a_series(params, 0, true, t)?;
    Ok(verify_identity("gf-thm", &lhs, &rhs).with_params(params).timed(start))
}

/// Multisum against the `B̄₀` enumeration.
pub fn sum_side(params: &Params, t: i64) -> Result<VerificationReport> {
    if params.k - 1 <= params.lambda() {
        return Err(Error::InvalidParams(format!("sum-side needs k-1 > lambda, got {params}")));
    }
    let start = Instant::now();
    let lhs = multisum_lhs(params, t)?;
    let rhs = counts_series(Family::Bbar(0), params, t)?;
    Ok(verify_identity("sum-side", &lhs, &rhs).with_params(params).timed(start))
}

/// Coefficientwise equality of two pairs.
pub fn pairs_agree(name: &str, a: &BaileyPair, b: &BaileyPair, n_max: usize) -> VerificationReport {
    for n in 0..=n_max.min(a.n_max()).min(b.n_max()) {
        for (what, x, y) in [("alpha", &a.alpha[n], &b.alpha[n]), ("beta", &a.beta[n], &b.beta[n])] {
            if let Some(e) = x.first_mismatch(y) {
                return VerificationReport::fail(
                    name,
                    format!("{what}_{n} differs at q^{e}: {} vs {}", x.coeff(e), y.coeff(e)),
                );
            }
        }
    }
    VerificationReport::pass(name)
}

/// Slater's pairs, the transform chain against closed forms, and the
/// multiparameter corollary.
pub fn bailey_suite(params: Option<&Params>, n_max: usize, t: i64) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut parts = vec![
        bailey_pair_check(&bp1_pair(n_max, t)?, n_max, t).note("slater pair 1"),
        bailey_pair_check(&unitbp2_pair(n_max, t)?, n_max, t).note("unit pair"),
    ];
    for (k, r) in [(2, 1), (3, 1), (3, 2)] {
        let kr = format!("k={k},r={r}");
        let chained = chain_pair(k, r, n_max, t)?;
        parts.push(pairs_agree("chain-closed-form", &chained, &chain_pair_direct(k, r, n_max, t)?, n_max).with_params(&kr));
        parts.push(bailey_pair_check(&chained, n_max, t).with_params(&kr));
        let halved = bpg_pair(k, r, n_max, t)?;
        parts.push(pairs_agree("halved-chain", &halved, &bpg_pair_chain(k, r, n_max, t)?, n_max).with_params(&kr));
        parts.push(bailey_pair_check(&halved, n_max, t).with_params(&kr));
    }
    let default = Params::new(1, vec![], 3, 2, 0)?;
    let p = params.unwrap_or(&default);
    let (lhs, rhs) = corollary_lc_sides(p, t)?;
    parts.push(verify_identity("corollary", &lhs, &rhs).with_params(p));
    Ok(VerificationReport::all("bailey", parts).timed(start))
}

fn integral(name: &str, s: &QSeries) -> VerificationReport {
    if s.is_integral() {
        VerificationReport::pass(name)
    } else {
        VerificationReport::fail(name, "non-integral coefficient in a final side")
    }
}

/// Andrews–Gordon, Bressoud's even-modulus identity and the Göllnitz–Gordon
/// type identity at the standard small parameters.
pub fn classic_ids(t: i64) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut push = |name: &str, label: String, (l, r): (QSeries, QSeries)| {
        parts.push(verify_identity(name, &l, &r).with_params(&label));
        parts.push(integral(name, &l).with_params(&label));
    };
    for (k, r) in [(2, 1), (2, 2), (3, 2)] {
        push("andrews-gordon", format!("k={k},r={r}"), andrews_gordon(k, r, t)?);
    }
    push("bressoud-even", "k=3,r=2".into(), bressoud_even(3, 2, t)?);
    for j in [0, 1] {
        push("gollnitz-gordon", format!("k=2,r=2,j={j}"), gollnitz_gordon(2, 2, j, t)?);
    }
    Ok(VerificationReport::all("classic-ids", parts).timed(start))
}
