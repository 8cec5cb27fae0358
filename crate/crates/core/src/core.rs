//! Parts, overpartitions, parameters and the counting statistics used by
//! every class definition.
//!
//! Parts are ordered `1 < 1' < 2 < 2' < …`; the derived `Ord` on
//! `(magnitude, overlined)` gives exactly this order. Every mixed comparison
//! of the form "x ≥ y + η, strict if …" is evaluated with that single order
//! against a shifted part that keeps its flag.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A single part: a magnitude and an overline flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Part {
    pub magnitude: i64,
    pub overlined: bool,
}

impl Part {
    pub const fn plain(magnitude: i64) -> Self {
        Part { magnitude, overlined: false }
    }

    pub const fn over(magnitude: i64) -> Self {
        Part { magnitude, overlined: true }
    }

    /// Same flag, magnitude moved by `delta`. May leave the positive range;
    /// used for comparisons against shifted bounds.
    pub const fn offset(self, delta: i64) -> Self {
        Part { magnitude: self.magnitude + delta, overlined: self.overlined }
    }

    /// `⌊magnitude/η⌋`, ignoring the flag.
    pub fn floor_div(self, eta: i64) -> i64 {
        self.magnitude.div_euclid(eta)
    }

    pub fn divisible_by(self, eta: i64) -> bool {
        self.magnitude.rem_euclid(eta) == 0
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.overlined {
            write!(f, "{}'", self.magnitude)
        } else {
            write!(f, "{}", self.magnitude)
        }
    }
}

impl FromStr for Part {
    type Err = Error;

    /// Accepts `80`, `80o` and `80'`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (digits, overlined) = match s.strip_suffix('o').or_else(|| s.strip_suffix('\'')) {
            Some(d) => (d, true),
            None => (s, false),
        };
        let magnitude: i64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad part `{s}`")))?;
        if magnitude < 1 {
            return Err(Error::Parse(format!("part `{s}` must be positive")));
        }
        Ok(Part { magnitude, overlined })
    }
}

/// Total order on parts.
pub fn part_cmp(a: Part, b: Part) -> Ordering {
    a.cmp(&b)
}

/// `p` moved by a signed multiple of η, keeping its flag.
pub fn shift(p: Part, delta: i64) -> Result<Part> {
    let q = p.offset(delta);
    if q.magnitude < 1 {
        return Err(Error::Underflow);
    }
    Ok(q)
}

/// `⌊p/η⌋`.
pub fn floor_div_eta(p: Part, eta: i64) -> i64 {
    p.floor_div(eta)
}

/// An overpartition, parts stored in weakly descending order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Overpartition {
    parts: Vec<Part>,
}

impl Overpartition {
    pub fn empty() -> Self {
        Overpartition { parts: Vec::new() }
    }

    /// Builds from parts already in descending order.
    pub fn new(parts: Vec<Part>) -> Result<Self> {
        for w in parts.windows(2) {
            if w[0] < w[1] {
                return Err(Error::InvalidOverpartition(format!(
                    "parts not descending at {} < {}",
                    w[0], w[1]
                )));
            }
        }
        Self::check(&parts)?;
        Ok(Overpartition { parts })
    }

    /// Builds from parts in any order.
    pub fn from_unsorted(mut parts: Vec<Part>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::check(&parts)?;
        Ok(Overpartition { parts })
    }

    fn check(parts: &[Part]) -> Result<()> {
        if let Some(p) = parts.iter().find(|p| p.magnitude < 1) {
            return Err(Error::InvalidOverpartition(format!("non-positive part {p}")));
        }
        for w in parts.windows(2) {
            if w[0] == w[1] && w[0].overlined {
                return Err(Error::InvalidOverpartition(format!("repeated overlined part {}", w[0])));
            }
        }
        Ok(())
    }

    /// Ordinary partition with every part non-overlined.
    pub fn from_magnitudes(mags: &[i64]) -> Result<Self> {
        Self::from_unsorted(mags.iter().map(|&m| Part::plain(m)).collect())
    }

    pub fn parts(&self) -> &[Part] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Part> {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> i64 {
        weight(self)
    }

    /// New overpartition with `part` added.
    pub fn with_part(&self, part: Part) -> Result<Self> {
        let mut v = self.parts.clone();
        let at = v.iter().position(|q| *q < part).unwrap_or(v.len());
        v.insert(at, part);
        Self::check(&v)?;
        Ok(Overpartition { parts: v })
    }

    /// New overpartition with the part at `index` removed.
    pub fn without_index(&self, index: usize) -> Self {
        let mut v = self.parts.clone();
        v.remove(index);
        Overpartition { parts: v }
    }

    /// New overpartition with the parts at `positions` moved by `delta`.
    pub fn with_shifted(&self, positions: &[usize], delta: i64) -> Result<Self> {
        let mut v = self.parts.clone();
        for &i in positions {
            v[i] = shift(v[i], delta)?;
        }
        Self::from_unsorted(v)
    }

    /// Position of the last occurrence of `part`, if any.
    pub fn last_position_of(&self, part: Part) -> Option<usize> {
        self.parts.iter().rposition(|&q| q == part)
    }

    /// Same magnitudes, every flag cleared.
    pub fn erase_overlines(&self) -> Self {
        Overpartition { parts: self.parts.iter().map(|p| Part::plain(p.magnitude)).collect() }
    }
}

impl fmt::Display for Overpartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Overpartition {
    type Err = Error;

    /// Comma-separated, descending: `"23o,20,7o,3o"`. Parentheses optional.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(Overpartition::empty());
        }
        let parts = s.split(',').map(str::parse).collect::<Result<Vec<Part>>>()?;
        Overpartition::new(parts)
    }
}

/// Sum of magnitudes.
pub fn weight(pi: &Overpartition) -> i64 {
    pi.parts.iter().map(|p| p.magnitude).sum()
}

/// `V̄_π(x)`: overlined parts `≤ x`.
pub fn vbar_upto(pi: &Overpartition, x: Part) -> usize {
    pi.parts.iter().filter(|p| p.overlined && **p <= x).count()
}

/// `V_π(x)`: parts `≤ x` not divisible by η.
pub fn v_upto(pi: &Overpartition, x: Part, eta: i64) -> usize {
    pi.parts.iter().filter(|p| !p.divisible_by(eta) && **p <= x).count()
}

/// Parts `p` with `lo < p ≤ hi`.
pub fn f_half_open(pi: &Overpartition, lo: Part, hi: Part) -> usize {
    pi.parts.iter().filter(|p| lo < **p && **p <= hi).count()
}

/// Parts `p` with `lo ≤ p ≤ hi`.
pub fn f_closed(pi: &Overpartition, lo: Part, hi: Part) -> usize {
    pi.parts.iter().filter(|p| lo <= **p && **p <= hi).count()
}

/// `f_π(0, η]`: parts not exceeding the non-overlined η.
pub fn f_upto_eta(pi: &Overpartition, eta: i64) -> usize {
    f_half_open(pi, Part::plain(0), Part::plain(eta))
}

/// `(η; α₁…α_λ; k, r; j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Params {
    pub eta: i64,
    pub alphas: Vec<i64>,
    pub k: i64,
    pub r: i64,
    pub j: u8,
}

impl Params {
    /// Checks the residue symmetry `α_i = η − α_{λ+1−i}` and basic ranges.
    pub fn new(eta: i64, alphas: Vec<i64>, k: i64, r: i64, j: u8) -> Result<Self> {
        let p = Params { eta, alphas, k, r, j };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        if self.eta < 1 {
            return bad(format!("eta={} must be positive", self.eta));
        }
        if self.j > 1 {
            return bad(format!("j={} must be 0 or 1", self.j));
        }
        if self.k < 1 || self.r < 1 {
            return bad(format!("k={} and r={} must be positive", self.k, self.r));
        }
        for w in self.alphas.windows(2) {
            if w[0] >= w[1] {
                return bad("alphas must be strictly increasing".into());
            }
        }
        if self.alphas.iter().any(|&a| a <= 0 || a >= self.eta) {
            return bad("alphas must lie strictly between 0 and eta".into());
        }
        let l = self.alphas.len();
        for i in 0..l {
            if self.alphas[i] != self.eta - self.alphas[l - 1 - i] {
                return bad("alphas must satisfy alpha_i = eta - alpha_(lambda+1-i)".into());
            }
        }
        Ok(())
    }

    pub fn lambda(&self) -> i64 {
        self.alphas.len() as i64
    }

    pub fn with_j(&self, j: u8) -> Self {
        Params { j, ..self.clone() }
    }

    pub fn with_kr(&self, k: i64, r: i64) -> Self {
        Params { k, r, ..self.clone() }
    }

    /// `k ≥ r ≥ λ ≥ 0` and `k − 1 + j > λ`, the range of the overpartition classes.
    pub fn require_bbar(&self) -> Result<()> {
        let l = self.lambda();
        if !(self.k >= self.r && self.r >= l && self.k - 1 + self.j as i64 > l) {
            return Err(Error::InvalidParams(format!(
                "need k >= r >= lambda and k-1+j > lambda, got {self}"
            )));
        }
        Ok(())
    }

    /// `k ≥ r ≥ λ ≥ 0` and `k > λ`, used for the ordinary classes.
    pub fn require_b(&self) -> Result<()> {
        let l = self.lambda();
        if !(self.k >= self.r && self.r >= l && self.k > l) {
            return Err(Error::InvalidParams(format!(
                "need k >= r >= lambda and k > lambda, got {self}"
            )));
        }
        Ok(())
    }

    /// Residue class test: `m ≡ 0` or some `α_i (mod η)`.
    pub fn residue_ok(&self, m: i64) -> bool {
        let res = m.rem_euclid(self.eta);
        res == 0 || self.alphas.contains(&res)
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alphas.is_empty() {
            write!(f, "(-;")?;
        } else {
            let a: Vec<String> = self.alphas.iter().map(|x| x.to_string()).collect();
            write!(f, "({};", a.join(","))?;
        }
        write!(f, "{},{},{}) j={}", self.eta, self.k, self.r, self.j)
    }
}

impl FromStr for Params {
    type Err = Error;

    /// `eta=10,alphas=3:7,k=4,r=3,j=0`; `alphas` may be empty or `-`.
    fn from_str(s: &str) -> Result<Self> {
        let (mut eta, mut alphas, mut k, mut r, mut j) = (None, Vec::new(), None, None, 0u8);
        for kv in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (key, val) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{kv}`")))?;
            let int = |v: &str| -> Result<i64> {
                v.trim().parse().map_err(|_| Error::Parse(format!("bad integer `{v}` for {key}")))
            };
            match key.trim() {
                "eta" => eta = Some(int(val)?),
                "alphas" => {
                    let v = val.trim();
                    if !v.is_empty() && v != "-" {
                        alphas = v.split(':').map(int).collect::<Result<Vec<_>>>()?;
                    }
                }
                "k" => k = Some(int(val)?),
                "r" => r = Some(int(val)?),
                "j" => j = int(val)? as u8,
                other => return Err(Error::Parse(format!("unknown key `{other}`"))),
            }
        }
        let need = |x: Option<i64>, n: &str| x.ok_or_else(|| Error::Parse(format!("missing {n}")));
        Params::new(need(eta, "eta")?, alphas, need(k, "k")?, need(r, "r")?, j)
    }
}

/// A partition into distinct positive multiples of η.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DistinctEtaPartition {
    pub eta: i64,
    parts: Vec<i64>,
}

impl DistinctEtaPartition {
    /// `parts` are actual sizes (multiples of η), strictly decreasing.
    pub fn new(eta: i64, parts: Vec<i64>) -> Result<Self> {
        if parts.iter().any(|&p| p <= 0 || p % eta != 0) {
            return Err(Error::InvalidOverpartition(format!(
                "zeta parts must be positive multiples of {eta}"
            )));
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidOverpartition("zeta parts must be strictly decreasing".into()));
        }
        Ok(DistinctEtaPartition { eta, parts })
    }

    pub fn empty(eta: i64) -> Self {
        DistinctEtaPartition { eta, parts: Vec::new() }
    }

    /// From multipliers `ζ_i` (so sizes are `ηζ_i`) in any order.
    pub fn from_multipliers(eta: i64, mut mults: Vec<i64>) -> Result<Self> {
        mults.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(eta, mults.into_iter().map(|m| m * eta).collect())
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// `ζ_i = part/η`, descending.
    pub fn multipliers(&self) -> Vec<i64> {
        self.parts.iter().map(|p| p / self.eta).collect()
    }

    pub fn weight(&self) -> i64 {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl fmt::Display for DistinctEtaPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> Overpartition {
        s.parse().unwrap()
    }

    #[test]
    fn order_matches_display() {
        assert_eq!(part_cmp(Part::plain(1), Part::over(1)), Ordering::Less);
        assert_eq!(part_cmp(Part::plain(2), Part::over(1)), Ordering::Greater);
        assert_eq!(part_cmp(Part::over(5), Part::over(5)), Ordering::Equal);
    }

    #[test]
    fn weights() {
        assert_eq!(weight(&op("23o,20,7o,3o")), 53);
        assert_eq!(weight(&Overpartition::empty()), 0);
        let rrr = op("100o,100,97o,90,77o,73o,70,60o,57o,50,50,43o,37o,33o,30,23o,20,10o,7o,3o");
        assert_eq!(weight(&rrr), 1030);
        assert_eq!(weight(&rrr), 740 + 290);
    }

    #[test]
    fn vbar_counts() {
        assert_eq!(vbar_upto(&op("33o,27o,20,7o,3o"), Part::over(33)), 4);
        assert_eq!(vbar_upto(&op("23o,20,7o,3o"), Part::over(23)), 3);
        assert_eq!(vbar_upto(&op("23o,20,7o,3o"), Part::plain(2)), 0);
    }

    #[test]
    fn v_counts() {
        // Direct count of the odd parts 7, 3, 1.
        assert_eq!(v_upto(&op("7,4,4,3,1"), Part::plain(7), 2), 3);
        assert_eq!(v_upto(&op("7,4,4,3,1"), Part::plain(7), 1), 0);
        assert_eq!(v_upto(&op("13,10,3"), Part::plain(10), 10), 1);
    }

    #[test]
    fn f_counts() {
        assert_eq!(f_upto_eta(&op("33o,27o,20,7o,3o"), 10), 2);
        assert_eq!(f_upto_eta(&Overpartition::empty(), 10), 0);
        assert_eq!(f_closed(&op("30o,23o,20,20,10o,7o,3o"), Part::plain(20), Part::plain(30)), 3);
        // The overlined η itself lies above the plain η.
        assert_eq!(f_upto_eta(&op("10o,7o"), 10), 1);
    }

    #[test]
    fn floor_and_shift() {
        assert_eq!(floor_div_eta(Part::over(27), 10), 2);
        assert_eq!(floor_div_eta(Part::over(33), 10), 3);
        assert_eq!(floor_div_eta(Part::plain(70), 10), 7);
        assert_eq!(shift(Part::plain(70), 10).unwrap(), Part::plain(80));
        assert_eq!(shift(Part::over(51), 10).unwrap(), Part::over(61));
        assert_eq!(shift(Part::plain(80), -10).unwrap(), Part::plain(70));
        assert_eq!(shift(Part::plain(10), -10), Err(Error::Underflow));
    }

    #[test]
    fn parsing() {
        assert_eq!(op("80o,80").parts(), &[Part::over(80), Part::plain(80)]);
        assert!("80,80o".parse::<Overpartition>().is_err());
        assert!("80o,80o".parse::<Overpartition>().is_err());
        let p: Params = "eta=10,alphas=3:7,k=4,r=3,j=0".parse().unwrap();
        assert_eq!(p, Params::new(10, vec![3, 7], 4, 3, 0).unwrap());
        assert!("eta=10,alphas=3:6,k=4,r=3".parse::<Params>().is_err());
        let q: Params = "eta=1,alphas=,k=3,r=2".parse().unwrap();
        assert_eq!(q.lambda(), 0);
    }

    #[test]
    fn distinct_eta() {
        let z = DistinctEtaPartition::new(10, vec![100, 80, 50]).unwrap();
        assert_eq!(z.multipliers(), vec![10, 8, 5]);
        assert!(DistinctEtaPartition::new(10, vec![50, 50]).is_err());
        assert!(DistinctEtaPartition::new(10, vec![55]).is_err());
    }
}
