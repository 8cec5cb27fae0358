//! Φ/Ψ between `𝒟_η × B₀` and `B̄₁`, and Φ₀/Ψ₀ between
//! `𝒟_η × B₁(k−1, r−χ(r=k))` and `B̄₀`.
//!
//! Ordinary partitions enter and leave in the B-overpartition form (parts
//! not divisible by η overlined); see [`crate::classes::to_b_rep`].

use serde::Serialize;

use crate::classes::{is_b, is_bbar, to_b_rep};
use crate::core::{DistinctEtaPartition, Overpartition, Params};
use crate::error::{Error, Result};
use crate::marking::KSetType;
use crate::moves::{
    backward_move, combine, divide, forward_move, gordon_marked, gordon_types, insert_detail, ol, r1,
    separate_detail, successive_order_check,
};

/// One step of a pipeline: what was done and the state after it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub action: String,
    pub state: String,
}

/// Optional record of intermediate states.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub stages: Vec<Stage>,
}

impl Trace {
    fn push(trace: &mut Option<&mut Trace>, action: String, state: &Overpartition) {
        if let Some(t) = trace.as_deref_mut() {
            t.stages.push(Stage { action, state: state.to_string() });
        }
    }
}

pub fn chi_r_eq_k(params: &Params) -> i64 {
    (params.r == params.k) as i64
}

/// Parameters of the `B₁` side of Φ₀: `(k−1, r−χ(r=k))`, `j = 1`.
pub fn phi0_source_params(params: &Params) -> Params {
    Params { k: params.k - 1, r: params.r - chi_r_eq_k(params), j: 1, ..params.clone() }
}

fn b_member(mu: &Overpartition, params: &Params, j: u8) -> Result<Overpartition> {
    let b = to_b_rep(mu, params.eta)
        .ok_or_else(|| Error::NotInClass(format!("{mu} is not an ordinary partition")))?;
    if !is_b(&b, params, j) {
        return Err(Error::NotInClass(format!("{mu} is not in B{j} {params}")));
    }
    Ok(b)
}

fn check_zeta(zeta: &DistinctEtaPartition, params: &Params) -> Result<()> {
    if zeta.eta != params.eta {
        return Err(Error::InvalidParams(format!("zeta uses eta={}, params eta={}", zeta.eta, params.eta)));
    }
    Ok(())
}

/// Φ(ζ, μ).
pub fn phi(zeta: &DistinctEtaPartition, mu: &Overpartition, params: &Params) -> Result<Overpartition> {
    phi_traced(zeta, mu, params, None)
}

pub fn phi_traced(
    zeta: &DistinctEtaPartition,
    mu: &Overpartition,
    params: &Params,
    mut trace: Option<&mut Trace>,
) -> Result<Overpartition> {
    check_zeta(zeta, params)?;
    params.require_b()?;
    let mut cur = b_member(mu, params, 0)?;
    Trace::push(&mut trace, "start".into(), &cur);
    let n = gordon_marked(&cur, params).len() as i64;
    let mults = zeta.multipliers();
    for &m in mults.iter().filter(|&&m| m <= n) {
        cur = forward_move(&cur, m as usize, params)?;
        Trace::push(&mut trace, format!("forward move p={m}"), &cur);
    }
    for &m in mults.iter().rev().filter(|&&m| m > n) {
        let ins = insert_detail(&cur, m - 1, params.eta, params)?;
        cur = ins.result;
        Trace::push(&mut trace, format!("insert {} (p={}, part {})", m * params.eta, ins.p, ins.inserted), &cur);
    }
    Ok(cur)
}

/// Ψ(π) = (ζ, μ).
pub fn psi(pi: &Overpartition, params: &Params) -> Result<(DistinctEtaPartition, Overpartition)> {
    psi_traced(pi, params, None)
}

pub fn psi_traced(
    pi: &Overpartition,
    params: &Params,
    mut trace: Option<&mut Trace>,
) -> Result<(DistinctEtaPartition, Overpartition)> {
    params.require_b()?;
    if !is_bbar(pi, params, 1) {
        return Err(Error::NotInClass(format!("{pi} is not in Bbar1 {params}")));
    }
    let eta = params.eta;
    let mut cur = pi.clone();
    Trace::push(&mut trace, "start".into(), &cur);
    let mut labels = Vec::new();
    while ol(&cur, eta).magnitude > 0 {
        let sep = separate_detail(&cur, eta, params)?;
        cur = sep.result;
        labels.push(sep.q + 1);
        Trace::push(&mut trace, format!("separate {} (p={})", (sep.q + 1) * eta, sep.p), &cur);
    }
    if !successive_order_check(&labels) {
        return Err(Error::Bound(format!("separation labels not decreasing: {labels:?}")));
    }
    let n = gordon_marked(&cur, params).len();
    let mut steps = 0;
    loop {
        let t = gordon_types(&cur, params)?;
        let Some(q) = (0..n).find(|&i| t[i] != t[i + 1]) else { break };
        debug_assert!(t[..n].contains(&KSetType::Odd));
        steps += 1;
        if steps > n {
            return Err(Error::Bound(format!("backward phase exceeded N={n} steps")));
        }
        cur = backward_move(&cur, q + 1, params)?;
        labels.push(q as i64 + 1);
        Trace::push(&mut trace, format!("backward move p={}", q + 1), &cur);
    }
    let zeta = DistinctEtaPartition::from_multipliers(eta, labels)?;
    Ok((zeta, cur))
}

/// Φ₀(ζ, μ).
pub fn phi0(zeta: &DistinctEtaPartition, mu: &Overpartition, params: &Params) -> Result<Overpartition> {
    phi0_traced(zeta, mu, params, None)
}

fn require_phi0(params: &Params) -> Result<()> {
    params.with_j(0).require_bbar()?;
    if params.lambda() >= params.k - 1 {
        return Err(Error::InvalidParams("Phi0 needs lambda < k-1".into()));
    }
    Ok(())
}

pub fn phi0_traced(
    zeta: &DistinctEtaPartition,
    mu: &Overpartition,
    params: &Params,
    mut trace: Option<&mut Trace>,
) -> Result<Overpartition> {
    check_zeta(zeta, params)?;
    require_phi0(params)?;
    let mut cur = b_member(mu, &phi0_source_params(params), 1)?;
    Trace::push(&mut trace, "start".into(), &cur);
    for &m in zeta.multipliers().iter().rev() {
        cur = combine(&cur, m, params)?;
        Trace::push(&mut trace, format!("combine {}", m * params.eta), &cur);
    }
    Ok(cur)
}

/// Ψ₀(ω) = (ζ, π).
pub fn psi0(omega: &Overpartition, params: &Params) -> Result<(DistinctEtaPartition, Overpartition)> {
    psi0_traced(omega, params, None)
}

pub fn psi0_traced(
    omega: &Overpartition,
    params: &Params,
    mut trace: Option<&mut Trace>,
) -> Result<(DistinctEtaPartition, Overpartition)> {
    require_phi0(params)?;
    if !is_bbar(omega, params, 0) {
        return Err(Error::NotInClass(format!("{omega} is not in Bbar0 {params}")));
    }
    let eta = params.eta;
    let ceil = |m: i64| (m + eta - 1).div_euclid(eta);
    let mut cur = omega.clone();
    Trace::push(&mut trace, "start".into(), &cur);
    let mut labels = Vec::new();
    loop {
        let o = ol(&cur, eta).magnitude;
        let r = r1(&cur, params).map_or(0, |p| p.magnitude);
        if o == 0 && r == 0 {
            break;
        }
        let z = ceil(o).max(ceil(r));
        cur = divide(&cur, z, params)?;
        labels.push(z);
        Trace::push(&mut trace, format!("divide {}", z * eta), &cur);
    }
    let zeta = DistinctEtaPartition::from_multipliers(eta, labels)?;
    Ok((zeta, cur))
}
