//! Gordon and reverse Gordon markings, (k−1)-sets and their parity type.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::core::{vbar_upto, Overpartition, Part};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    Gordon,
    Reverse,
}

/// One mark per part, aligned with the descending part order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Marking {
    pub direction: Direction,
    pub parts: Vec<Part>,
    pub marks: Vec<u32>,
}

impl Marking {
    /// Positions carrying `level`, in descending part order.
    pub fn positions(&self, level: u32) -> Vec<usize> {
        (0..self.marks.len()).filter(|&i| self.marks[i] == level).collect()
    }

    pub fn max_mark(&self) -> u32 {
        self.marks.iter().copied().max().unwrap_or(0)
    }

    /// Paper-style rendering, `(80'_2,80_4,…)`.
    pub fn render(&self) -> String {
        let s: Vec<String> =
            self.parts.iter().zip(&self.marks).map(|(p, m)| format!("{p}_{m}")).collect();
        format!("({})", s.join(","))
    }
}

fn least_unused(used: &BTreeSet<u32>) -> u32 {
    (1..).find(|m| !used.contains(m)).unwrap()
}

/// Marks assigned from the smallest part upward.
pub fn gordon_marking(pi: &Overpartition, eta: i64) -> Marking {
    let parts = pi.parts();
    let n = parts.len();
    let mut marks = vec![0u32; n];
    for i in (0..n).rev() {
        let floor = parts[i].offset(-eta);
        let mut used = BTreeSet::new();
        for p in i + 1..n {
            let near = if parts[i].overlined { parts[p] > floor } else { parts[p] >= floor };
            if !near {
                break;
            }
            used.insert(marks[p]);
        }
        marks[i] = least_unused(&used);
    }
    Marking { direction: Direction::Gordon, parts: parts.to_vec(), marks }
}

/// Marks assigned from the largest part downward.
pub fn reverse_gordon_marking(pi: &Overpartition, eta: i64) -> Marking {
    let parts = pi.parts();
    let n = parts.len();
    let mut marks = vec![0u32; n];
    for i in 0..n {
        let ceil = parts[i].offset(eta);
        let mut used = BTreeSet::new();
        for p in (0..i).rev() {
            let near = if parts[i].overlined { parts[p] < ceil } else { parts[p] <= ceil };
            if !near {
                break;
            }
            used.insert(marks[p]);
        }
        marks[i] = least_unused(&used);
    }
    Marking { direction: Direction::Reverse, parts: parts.to_vec(), marks }
}

/// Parts carrying `level`, descending.
pub fn marked_parts(m: &Marking, level: u32) -> Vec<Part> {
    m.positions(level).into_iter().map(|i| m.parts[i]).collect()
}

pub fn max_mark(m: &Marking) -> u32 {
    m.max_mark()
}

/// `k−1` consecutive parts spanning at most η.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSet {
    pub positions: Vec<usize>,
    pub parts: Vec<Part>,
}

impl KSet {
    /// Largest part of the set.
    pub fn top(&self) -> Part {
        self.parts[0]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum KSetType {
    Even,
    Odd,
}

/// `top ≤ bottom + η`, strict when `top` is overlined.
pub fn within_eta(top: Part, bottom: Part, eta: i64) -> bool {
    let ceil = bottom.offset(eta);
    if top.overlined {
        top < ceil
    } else {
        top <= ceil
    }
}

fn window(pi: &Overpartition, start: usize, len: usize) -> KSet {
    let positions: Vec<usize> = (start..start + len).collect();
    let parts = positions.iter().map(|&i| pi.parts()[i]).collect();
    KSet { positions, parts }
}

/// The (k−1)-set attached to the (k−1)-marked part at `position`.
pub fn kset_of(pi: &Overpartition, marking: &Marking, position: usize, k: i64, eta: i64) -> Result<KSet> {
    let level = (k - 1) as u32;
    if k < 2 || marking.marks.get(position) != Some(&level) {
        return Err(Error::InvalidOverpartition(format!(
            "position {position} is not {}-marked",
            k - 1
        )));
    }
    let len = (k - 1) as usize;
    let start = match marking.direction {
        Direction::Gordon => position,
        Direction::Reverse => (position + 1).checked_sub(len).ok_or_else(|| {
            Error::InvalidOverpartition("reverse window runs past the largest part".into())
        })?,
    };
    if start + len > pi.len() {
        return Err(Error::InvalidOverpartition("window runs past the smallest part".into()));
    }
    let s = window(pi, start, len);
    if !within_eta(s.parts[0], s.parts[len - 1], eta) {
        return Err(Error::InvalidOverpartition(format!(
            "window at {start} is not a {}-set",
            k - 1
        )));
    }
    Ok(s)
}

/// The (k−1)-sets of every (k−1)-marked part, in marked order.
pub fn marked_ksets(pi: &Overpartition, marking: &Marking, k: i64, eta: i64) -> Result<Vec<KSet>> {
    marking
        .positions((k - 1) as u32)
        .into_iter()
        .map(|i| kset_of(pi, marking, i, k, eta))
        .collect()
}

/// Even iff `Σ⌊μ/η⌋ ≡ r − 1 + V̄(top) (mod 2)`.
pub fn kset_type(s: &KSet, pi: &Overpartition, r: i64, eta: i64) -> KSetType {
    let sum: i64 = s.parts.iter().map(|p| p.floor_div(eta)).sum();
    let rhs = r - 1 + vbar_upto(pi, s.top()) as i64;
    if (sum - rhs).rem_euclid(2) == 0 {
        KSetType::Even
    } else {
        KSetType::Odd
    }
}

/// Every window of `k−1` consecutive parts spanning at most η.
pub fn all_ksets(pi: &Overpartition, k: i64, eta: i64) -> Vec<KSet> {
    if k < 2 {
        return Vec::new();
    }
    let len = (k - 1) as usize;
    let n = pi.len();
    if n < len {
        return Vec::new();
    }
    (0..=n - len)
        .filter(|&i| within_eta(pi.parts()[i], pi.parts()[i + len - 1], eta))
        .map(|i| window(pi, i, len))
        .collect()
}
