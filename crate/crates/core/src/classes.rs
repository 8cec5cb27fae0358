//! Membership tests and brute-force enumeration for the partition and
//! overpartition families `A_j`, `B_j`, `Ā_j`, `B̄_j` and `𝒟_η`.
//!
//! Ordinary partitions in `B_j` use the B-overpartition representation:
//! parts not divisible by η carry an overline, multiples of η do not.
//! Enumeration builds parts from the smallest upward, so every condition of
//! the difference families can be checked on a prefix.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::core::{f_upto_eta, DistinctEtaPartition, Overpartition, Params, Part};
use crate::error::{Error, Result};
use crate::marking::within_eta;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A(u8),
    B(u8),
    Abar(u8),
    Bbar(u8),
    DEta,
}

impl std::str::FromStr for Family {
    type Err = Error;

    /// `A0`, `B1`, `Abar0`, `Bbar1`, `D`.
    fn from_str(s: &str) -> Result<Self> {
        let j = |t: &str| -> Result<u8> {
            match t {
                "0" => Ok(0),
                "1" => Ok(1),
                _ => Err(Error::Parse(format!("bad family `{s}`"))),
            }
        };
        match s {
            "D" | "Deta" => Ok(Family::DEta),
            _ if s.starts_with("Abar") => Ok(Family::Abar(j(&s[4..])?)),
            _ if s.starts_with("Bbar") => Ok(Family::Bbar(j(&s[4..])?)),
            _ if s.starts_with('A') => Ok(Family::A(j(&s[1..])?)),
            _ if s.starts_with('B') => Ok(Family::B(j(&s[1..])?)),
            _ => Err(Error::Parse(format!("bad family `{s}`"))),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::A(j) => write!(f, "A{j}"),
            Family::B(j) => write!(f, "B{j}"),
            Family::Abar(j) => write!(f, "Abar{j}"),
            Family::Bbar(j) => write!(f, "Bbar{j}"),
            Family::DEta => write!(f, "D"),
        }
    }
}

// ---------------------------------------------------------------------------
// Difference families

/// Conditions (1)–(5) for the overpartition class `B̄_j`.
pub fn is_bbar(pi: &Overpartition, params: &Params, j: u8) -> bool {
    let parts = pi.parts();
    let eta = params.eta;
    if !parts.iter().all(|p| params.residue_ok(p.magnitude) && (p.overlined || p.divisible_by(eta))) {
        return false;
    }
    if f_upto_eta(pi, eta) as i64 > params.r - 1 {
        return false;
    }
    let k = params.k as usize;
    if k == 0 {
        return parts.is_empty();
    }
    for i in 0..parts.len().saturating_sub(k - 1) {
        if !gap_ok(parts[i], parts[i + k - 1], eta) {
            return false;
        }
    }
    if j == 0 && k >= 2 {
        for i in 0..(parts.len() + 1).saturating_sub(k - 1) {
            let w = &parts[i..i + k - 1];
            if within_eta(w[0], w[k - 2], eta) && !parity_ok(w, pi, params) {
                return false;
            }
        }
    }
    true
}

/// `top ≥ bottom + η`, strict when `top` is non-overlined.
fn gap_ok(top: Part, bottom: Part, eta: i64) -> bool {
    let floor = bottom.offset(eta);
    if top.overlined {
        top >= floor
    } else {
        top > floor
    }
}

fn parity_ok(window: &[Part], pi: &Overpartition, params: &Params) -> bool {
    let sum: i64 = window.iter().map(|p| p.floor_div(params.eta)).sum();
    let vbar = crate::core::vbar_upto(pi, window[0]) as i64;
    (sum - (params.r - 1 + vbar)).rem_euclid(2) == 0
}

/// B-overpartition form of an ordinary partition: overline exactly the parts
/// not divisible by η. `None` if some η-multiple is overlined or a
/// non-multiple repeats.
pub fn to_b_rep(pi: &Overpartition, eta: i64) -> Option<Overpartition> {
    let mut v = Vec::with_capacity(pi.len());
    for p in pi.parts() {
        if p.divisible_by(eta) {
            if p.overlined {
                return None;
            }
            v.push(*p);
        } else {
            v.push(Part::over(p.magnitude));
        }
    }
    Overpartition::new(v).ok()
}

/// Bressoud's `B_j`, tested through the B-overpartition representation.
pub fn is_b(pi: &Overpartition, params: &Params, j: u8) -> bool {
    match to_b_rep(pi, params.eta) {
        Some(b) => is_bbar(&b, params, j),
        None => false,
    }
}

// ---------------------------------------------------------------------------
// Congruence families

/// Residue filters for `A_j` / `Ā_j`, expressed on a single non-overlined or
/// overlined part, plus which non-overlined parts may repeat.
#[derive(Clone, Debug)]
struct Filter {
    eta: i64,
    /// Smallest step of magnitudes allowed to be non-overlined (η or η/2).
    plain_step: i64,
    /// (residue, modulus) pairs excluded for non-overlined parts.
    plain_excluded: Vec<(i64, i64)>,
    /// (residue, modulus) pairs excluded for overlined parts.
    over_excluded: Vec<(i64, i64)>,
    /// Non-overlined magnitudes that may not repeat: (residue, modulus).
    no_repeat: Vec<(i64, i64)>,
    overlines_allowed: bool,
}

impl Filter {
    fn hits(list: &[(i64, i64)], m: i64) -> bool {
        list.iter().any(|&(res, md)| m.rem_euclid(md) == res.rem_euclid(md))
    }

    fn may_repeat(&self, m: i64) -> bool {
        !Self::hits(&self.no_repeat, m)
    }
}

fn half_eta(params: &Params) -> Result<i64> {
    if params.eta % 2 != 0 {
        return Err(Error::InvalidParams("η/2 not integral: odd lambda requires even eta".into()));
    }
    Ok(params.eta / 2)
}

fn doubled(what: &str) -> Error {
    Error::InvalidParams(format!(
        "{what}: the excluded residue class is doubled in the product and has no filter form"
    ))
}

fn a_filter(params: &Params, j: u8) -> Result<Filter> {
    let (eta, k, r, l) = (params.eta, params.k, params.r, params.lambda());
    let j = j as i64;
    if l % 2 == 0 {
        let m = eta * (2 * k - l + j);
        let c = eta * (r - l / 2);
        if (2 * c).rem_euclid(m) == 0 {
            return Err(doubled("A_j"));
        }
        Ok(Filter {
            eta,
            plain_step: 1,
            plain_excluded: vec![(0, m), (c, m), (-c, m)],
            over_excluded: vec![],
            no_repeat: vec![],
            overlines_allowed: false,
        }
        .with_repeat_rule(eta))
    } else {
        let h = half_eta(params)?;
        if j == 1 {
            let m = eta * (2 * k - l + 1);
            let c = h * (2 * r - l);
            if (2 * c).rem_euclid(m) == 0 {
                return Err(doubled("A_1"));
            }
            Ok(Filter {
                eta,
                plain_step: 1,
                plain_excluded: vec![(eta, 2 * eta), (0, m), (c, m), (-c, m)],
                over_excluded: vec![],
                no_repeat: vec![],
                overlines_allowed: false,
            }
            .with_repeat_rule(h))
        } else {
            let m = eta * (2 * k - l);
            let c = h * (2 * r - l);
            if (2 * c).rem_euclid(m) == 0 {
                return Err(doubled("A_0"));
            }
            let mut f = Filter {
                eta,
                plain_step: 1,
                plain_excluded: vec![(eta, 2 * eta), (0, 2 * m), (c, m), (-c, m)],
                over_excluded: vec![],
                no_repeat: vec![],
                overlines_allowed: false,
            }
            .with_repeat_rule(h);
            f.no_repeat.push((h * (2 * k - l), m));
            Ok(f)
        }
    }
}

impl Filter {
    /// Only multiples of `step` may repeat.
    fn with_repeat_rule(mut self, step: i64) -> Self {
        for res in 1..step {
            self.no_repeat.push((res, step));
        }
        self
    }
}

fn abar_filter(params: &Params, j: u8) -> Result<Filter> {
    let (eta, k, r, l) = (params.eta, params.k, params.r, params.lambda());
    let j = j as i64;
    if l % 2 == 0 {
        let m = eta * (2 * k - l + j - 1);
        let c = eta * (r - l / 2);
        if m <= 0 || (2 * c).rem_euclid(m) == 0 {
            return Err(doubled("Abar_j"));
        }
        Ok(Filter {
            eta,
            plain_step: eta,
            plain_excluded: vec![(0, m), (c, m), (-c, m)],
            over_excluded: vec![],
            no_repeat: vec![],
            overlines_allowed: true,
        })
    } else {
        let h = half_eta(params)?;
        if j == 1 {
            let m = eta * (2 * k - l);
            let c = h * (2 * r - l);
            if (2 * c).rem_euclid(m) == 0 {
                return Err(doubled("Abar_1"));
            }
            Ok(Filter {
                eta,
                plain_step: h,
                plain_excluded: vec![
                    (h * (2 * k - l), m),
                    (eta, 2 * eta),
                    (0, 2 * m),
                    (c, m),
                    (-c, m),
                ],
                over_excluded: vec![],
                no_repeat: vec![],
                overlines_allowed: true,
            }
            .with_over_rule_j1(h, m))
        } else {
            let m = eta * (2 * k - l - 1);
            let c = h * (2 * r - l);
            if m <= 0 || (2 * c).rem_euclid(m) == 0 {
                return Err(doubled("Abar_0"));
            }
            Ok(Filter {
                eta,
                plain_step: h,
                plain_excluded: vec![(eta, 2 * eta), (0, m), (c, m), (-c, m)],
                over_excluded: vec![(h, eta)],
                no_repeat: vec![],
                overlines_allowed: true,
            })
        }
    }
}

impl Filter {
    /// Overlined parts `≡ η/2 (mod η)` are excluded unless they are
    /// `≡ η(2k−λ)/2 (mod η(2k−λ))`; marked by a sentinel checked in
    /// [`is_abar`].
    fn with_over_rule_j1(mut self, h: i64, m: i64) -> Self {
        self.over_excluded.push((h, -m));
        self
    }
}

fn over_excluded_ok(f: &Filter, params: &Params, m: i64) -> bool {
    for &(res, md) in &f.over_excluded {
        if md < 0 {
            let modulus = -md;
            let half = res;
            let keep = (half * (2 * params.k - params.lambda())).rem_euclid(modulus);
            if m.rem_euclid(f.eta) == half && m.rem_euclid(modulus) != keep {
                return false;
            }
        } else if m.rem_euclid(md) == res.rem_euclid(md) {
            return false;
        }
    }
    true
}

fn congruence_part_ok(f: &Filter, params: &Params, p: Part) -> bool {
    if !params.residue_ok(p.magnitude) {
        return false;
    }
    if p.overlined {
        f.overlines_allowed && over_excluded_ok(f, params, p.magnitude)
    } else {
        p.magnitude % f.plain_step == 0 && !Filter::hits(&f.plain_excluded, p.magnitude)
    }
}

fn congruence_member(f: &Filter, params: &Params, pi: &Overpartition, overlines: bool) -> bool {
    let parts = pi.parts();
    if !overlines && parts.iter().any(|p| p.overlined) {
        return false;
    }
    for (i, p) in parts.iter().enumerate() {
        if !congruence_part_ok(f, params, *p) {
            return false;
        }
        if !p.overlined && i + 1 < parts.len() && parts[i + 1] == *p && !f.may_repeat(p.magnitude) {
            return false;
        }
    }
    true
}

/// `A_j`: ordinary partitions under the congruence conditions.
pub fn is_a(pi: &Overpartition, params: &Params, j: u8) -> Result<bool> {
    let f = a_filter(params, j)?;
    Ok(congruence_member(&f, params, pi, false))
}

/// `Ā_j`: overpartitions under the congruence conditions.
pub fn is_abar(pi: &Overpartition, params: &Params, j: u8) -> Result<bool> {
    let f = abar_filter(params, j)?;
    Ok(congruence_member(&f, params, pi, true))
}

// ---------------------------------------------------------------------------
// Enumeration

/// Ascending generator: `ok(prefix, new)` decides whether `new` may follow
/// the ascending `prefix`; `done(prefix)` filters complete members.
fn generate<F, G>(cands: &[Part], n: i64, ok: &F, done: &G) -> Vec<Overpartition>
where
    F: Fn(&[Part], Part) -> bool,
    G: Fn(&[Part]) -> bool,
{
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    rec(cands, 0, n, &mut prefix, ok, done, &mut out);
    // Canonical listing: descending, overlined before plain at equal size.
    out.sort_by(|a, b| b.parts().cmp(a.parts()));
    out
}

fn rec<F, G>(
    cands: &[Part],
    from: usize,
    left: i64,
    prefix: &mut Vec<Part>,
    ok: &F,
    done: &G,
    out: &mut Vec<Overpartition>,
) where
    F: Fn(&[Part], Part) -> bool,
    G: Fn(&[Part]) -> bool,
{
    if left == 0 {
        if done(prefix) {
            let mut v = prefix.clone();
            v.reverse();
            out.push(Overpartition::new(v).expect("generator keeps parts valid"));
        }
        return;
    }
    for (idx, &c) in cands.iter().enumerate().skip(from) {
        if c.magnitude > left {
            break;
        }
        if prefix.last() == Some(&c) && c.overlined {
            continue;
        }
        if !ok(prefix, c) {
            continue;
        }
        prefix.push(c);
        // Overlined parts cannot repeat; non-overlined ones may.
        let next = if c.overlined { idx + 1 } else { idx };
        rec(cands, next, left - c.magnitude, prefix, ok, done, out);
        prefix.pop();
    }
}

fn candidates(n: i64, plain: impl Fn(i64) -> bool, over: impl Fn(i64) -> bool) -> Vec<Part> {
    let mut v = Vec::new();
    for m in 1..=n {
        if plain(m) {
            v.push(Part::plain(m));
        }
        if over(m) {
            v.push(Part::over(m));
        }
    }
    v
}

/// Prefix-checkable form of the `B̄_j` conditions (ascending order).
fn bbar_step(params: &Params, j: u8, prefix: &[Part], new: Part) -> bool {
    let eta = params.eta;
    let k = params.k as usize;
    let len = prefix.len() + 1;
    if new <= Part::plain(eta) && prefix.iter().filter(|p| **p <= Part::plain(eta)).count() + 1 > (params.r - 1) as usize
    {
        return false;
    }
    // Condition (3): new (as π_i) against the part k−1 places below.
    if len >= k && !gap_ok(new, prefix[len - k], eta) {
        return false;
    }
    // Condition (5): the window topped by `new`.
    if j == 0 && k >= 2 && len >= k - 1 {
        // For k = 2 the window is `new` alone.
        let bottom = if k == 2 { new } else { prefix[len - (k - 1)] };
        if within_eta(new, bottom, eta) {
            let sum: i64 =
                prefix[len - (k - 1)..].iter().map(|p| p.floor_div(eta)).sum::<i64>() + new.floor_div(eta);
            let vbar = prefix.iter().filter(|p| p.overlined).count() as i64 + new.overlined as i64;
            if (sum - (params.r - 1 + vbar)).rem_euclid(2) != 0 {
                return false;
            }
        }
    }
    true
}

/// All members of `family` of weight `n`.
pub fn enumerate_family(family: Family, params: &Params, n: i64) -> Result<Vec<Overpartition>> {
    if n < 0 {
        return Ok(Vec::new());
    }
    let eta = params.eta;
    match family {
        Family::Bbar(j) => {
            let c = candidates(n, |m| m % eta == 0, |m| params.residue_ok(m));
            Ok(generate(&c, n, &|pre: &[Part], x| bbar_step(params, j, pre, x), &|_: &[Part]| true))
        }
        Family::B(j) => {
            let c = candidates(n, |m| m % eta == 0, |m| params.residue_ok(m) && m % eta != 0);
            Ok(generate(&c, n, &|pre: &[Part], x| bbar_step(params, j, pre, x), &|_: &[Part]| true))
        }
        Family::A(j) => {
            let f = a_filter(params, j)?;
            let c = candidates(n, |m| congruence_part_ok(&f, params, Part::plain(m)), |_| false);
            let ok = |pre: &[Part], x: Part| pre.last() != Some(&x) || f.may_repeat(x.magnitude);
            Ok(generate(&c, n, &ok, &|_: &[Part]| true))
        }
        Family::Abar(j) => {
            let f = abar_filter(params, j)?;
            let c = candidates(
                n,
                |m| congruence_part_ok(&f, params, Part::plain(m)),
                |m| congruence_part_ok(&f, params, Part::over(m)),
            );
            let ok = |pre: &[Part], x: Part| pre.last() != Some(&x) || f.may_repeat(x.magnitude);
            Ok(generate(&c, n, &ok, &|_: &[Part]| true))
        }
        Family::DEta => {
            let c = candidates(n, |m| m % eta == 0, |_| false);
            let ok = |pre: &[Part], x: Part| pre.last() != Some(&x);
            Ok(generate(&c, n, &ok, &|_: &[Part]| true))
        }
    }
}

/// Members of `𝒟_η` of weight `n`.
pub fn enumerate_distinct_eta(eta: i64, n: i64) -> Vec<DistinctEtaPartition> {
    let params = Params { eta, alphas: vec![], k: 1, r: 1, j: 0 };
    enumerate_family(Family::DEta, &params, n)
        .unwrap_or_default()
        .into_iter()
        .map(|p| DistinctEtaPartition::new(eta, p.parts().iter().map(|x| x.magnitude).collect()).unwrap())
        .collect()
}

/// Validator for `family`.
pub fn is_member(family: Family, params: &Params, pi: &Overpartition) -> Result<bool> {
    Ok(match family {
        Family::A(j) => is_a(pi, params, j)?,
        Family::B(j) => is_b(pi, params, j) && pi.parts().iter().all(|p| p.overlined != p.divisible_by(params.eta)),
        Family::Abar(j) => is_abar(pi, params, j)?,
        Family::Bbar(j) => is_bbar(pi, params, j),
        Family::DEta => {
            pi.parts().iter().all(|p| !p.overlined && p.divisible_by(params.eta))
                && pi.parts().windows(2).all(|w| w[0] != w[1])
        }
    })
}

type MemoKey = (Family, Params, i64);

fn memo() -> &'static Mutex<HashMap<MemoKey, u64>> {
    static MEMO: std::sync::OnceLock<Mutex<HashMap<MemoKey, u64>>> = std::sync::OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `|enumerate_family(family, params, n)|`, memoized.
pub fn count_family(family: Family, params: &Params, n: i64) -> Result<u64> {
    let key = (family, params.clone(), n);
    if let Some(c) = memo().lock().unwrap().get(&key) {
        return Ok(*c);
    }
    let c = enumerate_family(family, params, n)?.len() as u64;
    memo().lock().unwrap().insert(key, c);
    Ok(c)
}

/// Counts for `n = 0..=max`.
pub fn count_series(family: Family, params: &Params, max: i64) -> Result<Vec<u64>> {
    (0..=max).map(|n| count_family(family, params, n)).collect()
}
