//! Elementary transformations and the set predicates gating them.
//!
//! * forward / backward moves `φ_p`, `ψ_p`
//! * (k−1)-insertion `I` and (k−1)-separation `SP`
//! * (k−1)-combination `C` and (k−1)-division `D`

use crate::classes::is_bbar;
use crate::core::{f_closed, f_upto_eta, vbar_upto, Overpartition, Params, Part};
use crate::error::{Error, Result};
use crate::marking::{
    all_ksets, gordon_marking, kset_of, kset_type, reverse_gordon_marking, within_eta, KSetType,
};

/// Positions of the (k−1)-marked parts in the reverse Gordon marking.
pub fn reverse_marked(pi: &Overpartition, params: &Params) -> Vec<usize> {
    reverse_gordon_marking(pi, params.eta).positions((params.k - 1) as u32)
}

/// Positions of the (k−1)-marked parts in the Gordon marking.
pub fn gordon_marked(pi: &Overpartition, params: &Params) -> Vec<usize> {
    gordon_marking(pi, params.eta).positions((params.k - 1) as u32)
}

/// `r̃₁(π)`, the largest (k−1)-marked part of the reverse marking.
pub fn r1(pi: &Overpartition, params: &Params) -> Option<Part> {
    reverse_marked(pi, params).first().map(|&i| pi.parts()[i])
}

/// Number of (k−1)-marked parts (the same for both markings).
pub fn marked_count(pi: &Overpartition, params: &Params) -> usize {
    reverse_marked(pi, params).len()
}

fn check_move_domain(pi: &Overpartition, params: &Params) -> Result<()> {
    if params.k < 2 {
        return Err(Error::InvalidParams("moves need k >= 2".into()));
    }
    let ok = pi
        .parts()
        .iter()
        .all(|p| params.residue_ok(p.magnitude) && (p.overlined || p.divisible_by(params.eta)));
    if !ok {
        return Err(Error::InvalidOverpartition(format!("{pi} breaks the residue rules")));
    }
    Ok(())
}

/// `φ_p`: add η to the p largest (k−1)-marked parts of the reverse marking.
pub fn forward_move(pi: &Overpartition, p: usize, params: &Params) -> Result<Overpartition> {
    check_move_domain(pi, params)?;
    let rg = reverse_gordon_marking(pi, params.eta);
    if rg.max_mark() as i64 > params.k - 1 {
        return Err(Error::InvalidOverpartition(format!("{pi} has a mark above k-1")));
    }
    let marked = rg.positions((params.k - 1) as u32);
    if p > marked.len() {
        return Err(Error::OrderExceedsMarked { p, n: marked.len() });
    }
    pi.with_shifted(&marked[..p], params.eta)
}

/// `ψ_p`: subtract η from the p largest (k−1)-marked parts of the Gordon
/// marking, after checking conditions (a) and (b).
pub fn backward_move(omega: &Overpartition, p: usize, params: &Params) -> Result<Overpartition> {
    check_move_domain(omega, params)?;
    let g = gordon_marking(omega, params.eta);
    let marked = g.positions((params.k - 1) as u32);
    if p > marked.len() {
        return Err(Error::OrderExceedsMarked { p, n: marked.len() });
    }
    if p == 0 {
        return Ok(omega.clone());
    }
    let eta = params.eta;
    let gp = omega.parts()[marked[p - 1]];
    let a_ok = match params.alphas.first() {
        Some(&a1) => gp >= Part::over(eta + a1),
        None => gp > Part::over(eta),
    };
    if !a_ok {
        return Err(Error::BackwardInadmissible('a'));
    }
    let lo = gp.offset(-2 * eta);
    let inside = |x: Part| x < gp && if gp.overlined { x > lo } else { x >= lo };
    if all_ksets(omega, params.k, eta).iter().any(|s| s.parts.iter().all(|&x| inside(x))) {
        return Err(Error::BackwardInadmissible('b'));
    }
    omega.with_shifted(&marked[..p], -eta)
}

/// Types of `{r̃_1}…{r̃_N}` followed by the deemed-Even `{r̃_{N+1}}`.
pub fn reverse_types(gamma: &Overpartition, params: &Params) -> Result<Vec<KSetType>> {
    let rg = reverse_gordon_marking(gamma, params.eta);
    let mut out = Vec::new();
    for pos in rg.positions((params.k - 1) as u32) {
        let s = kset_of(gamma, &rg, pos, params.k, params.eta)?;
        out.push(kset_type(&s, gamma, params.r, params.eta));
    }
    out.push(KSetType::Even);
    Ok(out)
}

/// Types of `{g̃_1}…{g̃_N}` followed by the deemed-Even `{g̃_{N+1}}`.
pub fn gordon_types(omega: &Overpartition, params: &Params) -> Result<Vec<KSetType>> {
    let g = gordon_marking(omega, params.eta);
    let mut out = Vec::new();
    for pos in g.positions((params.k - 1) as u32) {
        let s = kset_of(omega, &g, pos, params.k, params.eta)?;
        out.push(kset_type(&s, omega, params.r, params.eta));
    }
    out.push(KSetType::Even);
    Ok(out)
}

fn b_sd(gamma: &Overpartition, n: usize, p: usize, params: &Params, same: bool) -> bool {
    if !crate::classes::is_b(gamma, params, 1) || p > n {
        return false;
    }
    let Ok(t) = reverse_types(gamma, params) else { return false };
    if t.len() != n + 1 {
        return false;
    }
    (0..p).all(|i| (t[i] == t[p]) == same)
}

/// `B_s(…|N,p)`: `{r̃_i}` has the type of `{r̃_{p+1}}` for every `i ≤ p`.
pub fn in_bs(gamma: &Overpartition, n: usize, p: usize, params: &Params) -> bool {
    b_sd(gamma, n, p, params, true)
}

/// `B_d(…|N,p)`: `{r̃_i}` has the opposite type to `{r̃_{p+1}}` for every `i ≤ p`.
pub fn in_bd(gamma: &Overpartition, n: usize, p: usize, params: &Params) -> bool {
    b_sd(gamma, n, p, params, false)
}

// ---------------------------------------------------------------------------
// Insertion and separation

/// How an insertion was carried out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Insertion {
    pub result: Overpartition,
    pub p: usize,
    pub inserted: Part,
}

fn check_residue_label(a: i64, params: &Params) -> Result<()> {
    if a == params.eta || params.alphas.contains(&a) {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("a={a} is neither eta nor an alpha")))
    }
}

fn largest_overlined_with_residue(pi: &Overpartition, a: i64, eta: i64) -> Option<(usize, Part)> {
    pi.parts()
        .iter()
        .enumerate()
        .find(|(_, p)| p.overlined && p.magnitude.rem_euclid(eta) == a.rem_euclid(eta))
        .map(|(i, p)| (i, *p))
}

/// Least `p` with `((q−p)η+a)' ≥ r̃_{p+1}+η`, if the `B̄_<` conditions hold.
fn insertion_order(pi: &Overpartition, q: i64, a: i64, params: &Params) -> Result<usize> {
    let not_in = |reason: String| Error::NotInSet { set: "B̄_<", reason };
    check_residue_label(a, params)?;
    if !is_bbar(pi, params, 1) {
        return Err(not_in(format!("{pi} is not in the j=1 class")));
    }
    let eta = params.eta;
    let marked: Vec<Part> = reverse_marked(pi, params).into_iter().map(|i| pi.parts()[i]).collect();
    let n = marked.len();
    if q < n as i64 {
        return Err(not_in(format!("q={q} < N={n}")));
    }
    let p = (0..=n)
        .find(|&p| p == n || Part::over((q - p as i64) * eta + a) >= marked[p].offset(eta))
        .unwrap();
    let target = Part::over((q - p as i64) * eta + a);
    if let Some((_, top)) = largest_overlined_with_residue(pi, a, eta) {
        if top >= target {
            return Err(not_in(format!("{top} is not below {target}")));
        }
    }
    if a != eta && q == n as i64 && f_upto_eta(pi, eta) as i64 == params.r - 1 {
        let ok = n >= 1 && marked[n - 1] <= Part::plain(eta);
        if !ok {
            return Err(not_in("f(0,eta] = r-1 but the last marked part exceeds eta".into()));
        }
    }
    Ok(p)
}

/// `I_{qη+a}` with its order `p` exposed.
pub fn insert_detail(pi: &Overpartition, q: i64, a: i64, params: &Params) -> Result<Insertion> {
    let p = insertion_order(pi, q, a, params)?;
    let moved = forward_move(pi, p, params)?;
    let inserted = Part::over((q - p as i64) * params.eta + a);
    let result = moved.with_part(inserted)?;
    Ok(Insertion { result, p, inserted })
}

/// `I_{qη+a}(π)`.
pub fn insert_kminus1(pi: &Overpartition, q: i64, a: i64, params: &Params) -> Result<Overpartition> {
    insert_detail(pi, q, a, params).map(|i| i.result)
}

/// How a separation was carried out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub result: Overpartition,
    pub removed: Part,
    pub s: i64,
    pub p: usize,
    pub q: i64,
}

/// `SP` with its split `q = s + p` exposed.
pub fn separate_detail(omega: &Overpartition, a: i64, params: &Params) -> Result<Separation> {
    let not_in = |reason: String| Error::NotInSet { set: "B̄_=", reason };
    check_residue_label(a, params)?;
    if !is_bbar(omega, params, 1) {
        return Err(not_in(format!("{omega} is not in the j=1 class")));
    }
    let eta = params.eta;
    let (idx, removed) = largest_overlined_with_residue(omega, a, eta)
        .ok_or_else(|| not_in(format!("no overlined part = {a} mod {eta}")))?;
    let s = (removed.magnitude - a) / eta;
    let under = omega.without_index(idx);
    let marked: Vec<Part> = gordon_marked(&under, params).into_iter().map(|i| under.parts()[i]).collect();
    let n = marked.len();
    let p = (0..=n).find(|&p| p == n || removed > marked[p]).unwrap();
    let result = backward_move(&under, p, params)?;
    Ok(Separation { result, removed, s, p, q: s + p as i64 })
}

/// `SP(ω) = (π, q)` with `|π| = |ω| − (qη + a)`.
pub fn separate_kminus1(omega: &Overpartition, a: i64, params: &Params) -> Result<(Overpartition, i64)> {
    separate_detail(omega, a, params).map(|s| (s.result, s.q))
}

/// Labels extracted by successive separations must strictly decrease.
pub fn successive_order_check(labels: &[i64]) -> bool {
    labels.windows(2).all(|w| w[0] > w[1])
}

// ---------------------------------------------------------------------------
// Combination and division

/// Largest overlined multiple of η; `0'` if there is none.
pub fn ol(pi: &Overpartition, eta: i64) -> Part {
    pi.parts()
        .iter()
        .copied()
        .find(|p| p.overlined && p.divisible_by(eta))
        .unwrap_or(Part::over(0))
}

fn r1_le(pi: &Overpartition, params: &Params, bound: Part) -> bool {
    r1(pi, params).is_none_or(|r| r <= bound)
}

/// `Ī_<(…|pη)`.
pub fn in_ibar_less(pi: &Overpartition, p: i64, params: &Params) -> bool {
    let eta = params.eta;
    p >= 1
        && is_bbar(pi, params, 0)
        && ol(pi, eta) < Part::over(p * eta)
        && r1_le(pi, params, Part::over((p - 1) * eta))
}

/// `Ī_=(…|pη)`.
pub fn in_ibar_eq(omega: &Overpartition, p: i64, params: &Params) -> bool {
    let eta = params.eta;
    let top = Part::over(p * eta);
    if p < 1 || !is_bbar(omega, params, 0) {
        return false;
    }
    let o = ol(omega, eta);
    let r = r1(omega, params);
    if o > top || r.is_some_and(|r| r > top) {
        return false;
    }
    o == top || r.is_some_and(|r| r > Part::over((p - 1) * eta))
}

/// Condition 2 of the combination: the first window of k−2 consecutive parts
/// in `(((p−1)η)', (p+1)η]` spanning at most η decides by parity.
fn combination_parity(pi: &Overpartition, p: i64, params: &Params) -> bool {
    let eta = params.eta;
    let w = (params.k - 2) as usize;
    let parts = pi.parts();
    if w == 0 || parts.len() < w {
        return false;
    }
    let lo = Part::over((p - 1) * eta);
    let hi = Part::plain((p + 1) * eta);
    for i in 0..=parts.len() - w {
        let (top, bottom) = (parts[i], parts[i + w - 1]);
        if top > hi || bottom <= lo || !within_eta(top, bottom, eta) {
            continue;
        }
        let sum: i64 = parts[i..i + w].iter().map(|x| x.floor_div(eta)).sum();
        let rhs = p + params.r - 1 + vbar_upto(pi, top) as i64;
        return (sum - rhs).rem_euclid(2) == 0;
    }
    false
}

/// Whether `C_{pη}` inserts a non-overlined `pη`.
pub fn combination_inserts_plain(pi: &Overpartition, p: i64, params: &Params) -> bool {
    let eta = params.eta;
    let cond1 = if p == 1 {
        (f_upto_eta(pi, eta) as i64) < params.r - 1
    } else {
        (f_closed(pi, Part::plain((p - 1) * eta), Part::plain(p * eta)) as i64) < params.k - 1
    };
    cond1 && combination_parity(pi, p, params)
}

/// `C_{pη}(π)`.
pub fn combine(pi: &Overpartition, p: i64, params: &Params) -> Result<Overpartition> {
    if params.k < 3 {
        return Err(Error::InvalidParams("combination needs k >= 3".into()));
    }
    if !in_ibar_less(pi, p, params) {
        return Err(Error::NotInSet { set: "Ī_<", reason: format!("{pi} with p={p}") });
    }
    let m = p * params.eta;
    let part = if combination_inserts_plain(pi, p, params) { Part::plain(m) } else { Part::over(m) };
    pi.with_part(part)
}

/// `D_{pη}(ω)`.
pub fn divide(omega: &Overpartition, p: i64, params: &Params) -> Result<Overpartition> {
    if !in_ibar_eq(omega, p, params) {
        return Err(Error::NotInSet { set: "Ī_=", reason: format!("{omega} with p={p}") });
    }
    let m = p * params.eta;
    let target = if ol(omega, params.eta) == Part::over(m) { Part::over(m) } else { Part::plain(m) };
    let idx = omega
        .parts()
        .iter()
        .position(|&x| x == target)
        .ok_or_else(|| Error::NotInSet { set: "Ī_=", reason: format!("no part {target} in {omega}") })?;
    Ok(omega.without_index(idx))
}
