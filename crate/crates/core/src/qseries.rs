//! Exact truncated Laurent series in `q` with rational coefficients, the
//! product and multisum sides of the identities, and the Bailey-pair toolkit.
//!
//! A series is valid through exponent `T` (or exact, for Laurent
//! polynomials). Products track validity as `min(T_f + low_g, T_g + low_f)`,
//! so negative exponents in Bailey `α_n` are handled without special cases.
//! Odd λ needs even η, which keeps every exponent integral; the exponent
//! unit is therefore always 1.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::core::Params;
use crate::error::{Error, Result};
use crate::report::VerificationReport;

pub type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn half() -> Q {
    Q::new(BigInt::one(), BigInt::from(2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    floor: i64,
    c: Vec<Q>,
    /// Valid through this exponent; `None` means exact.
    t: Option<i64>,
}

fn min_t(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl QSeries {
    fn build(floor: i64, c: Vec<Q>, t: Option<i64>) -> Self {
        let mut s = QSeries { floor, c, t };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(t) = self.t {
            let keep = (t - self.floor + 1).max(0) as usize;
            self.c.truncate(keep);
        }
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.floor += lead as i64;
        }
        if self.c.is_empty() {
            self.floor = 0;
        }
    }

    pub fn zero(t: Option<i64>) -> Self {
        QSeries { floor: 0, c: Vec::new(), t }
    }

    pub fn one(t: Option<i64>) -> Self {
        Self::monomial(Q::one(), 0, t)
    }

    pub fn monomial(coef: Q, e: i64, t: Option<i64>) -> Self {
        Self::build(e, vec![coef], t)
    }

    /// Series with integer coefficients `coeffs[i]` at `q^i`, valid through
    /// `len − 1`.
    pub fn from_counts<T: Copy + Into<i128>>(coeffs: &[T]) -> Self {
        let c = coeffs.iter().map(|&x| Q::from_integer(BigInt::from(x.into()))).collect::<Vec<_>>();
        let t = c.len() as i64 - 1;
        Self::build(0, c, Some(t))
    }

    /// Exact Laurent polynomial from `(exponent, coefficient)` terms.
    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut s = Self::zero(None);
        for &(e, c) in terms {
            s = s.add(&Self::monomial(q(c), e, None));
        }
        s
    }

    pub fn trunc(&self) -> Option<i64> {
        self.t
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Lowest exponent with a non-zero coefficient.
    pub fn low(&self) -> Option<i64> {
        (!self.c.is_empty()).then_some(self.floor)
    }

    /// Highest stored exponent.
    pub fn high(&self) -> Option<i64> {
        (!self.c.is_empty()).then(|| self.floor + self.c.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> Q {
        if e < self.floor {
            return Q::zero();
        }
        self.c.get((e - self.floor) as usize).cloned().unwrap_or_else(Q::zero)
    }

    /// Non-zero `(exponent, coefficient)` pairs, ascending.
    pub fn terms(&self) -> Vec<(i64, Q)> {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (self.floor + i as i64, x.clone()))
            .collect()
    }

    /// Integer coefficients of `q^0..=q^t`; `None` if any is not integral.
    pub fn integer_coeffs(&self, t: i64) -> Option<Vec<BigInt>> {
        (0..=t).map(|e| self.coeff(e)).map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.c.iter().all(|x| x.is_integer())
    }

    pub fn truncate(&self, t: i64) -> Self {
        Self::build(self.floor, self.c.clone(), min_t(self.t, Some(t)))
    }

    /// Copy with one coefficient changed by `delta`.
    pub fn perturbed(&self, e: i64, delta: Q) -> Self {
        self.add(&Self::monomial(delta, e, self.t))
    }

    pub fn add(&self, o: &QSeries) -> Self {
        let t = min_t(self.t, o.t);
        if self.c.is_empty() {
            return o.truncate_opt(t);
        }
        if o.c.is_empty() {
            return self.truncate_opt(t);
        }
        let lo = self.floor.min(o.floor);
        let mut hi = self.high().unwrap().max(o.high().unwrap());
        if let Some(t) = t {
            hi = hi.min(t);
        }
        if hi < lo {
            return Self::zero(t);
        }
        let c = (lo..=hi).map(|e| self.coeff(e) + o.coeff(e)).collect();
        Self::build(lo, c, t)
    }

    fn truncate_opt(&self, t: Option<i64>) -> Self {
        Self::build(self.floor, self.c.clone(), min_t(self.t, t))
    }

    pub fn neg(&self) -> Self {
        Self::build(self.floor, self.c.iter().map(|x| -x).collect(), self.t)
    }

    pub fn sub(&self, o: &QSeries) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: &Q) -> Self {
        Self::build(self.floor, self.c.iter().map(|x| x * k).collect(), self.t)
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self::build(self.floor + e, self.c.clone(), self.t.map(|t| t + e))
    }

    pub fn mul(&self, o: &QSeries) -> Self {
        let t = match (self.low(), o.low()) {
            (Some(lf), Some(lg)) => min_t(self.t.map(|t| t + lg), o.t.map(|t| t + lf)),
            _ => min_t(self.t, o.t),
        };
        if self.c.is_empty() || o.c.is_empty() {
            return Self::zero(t);
        }
        let lo = self.floor + o.floor;
        let mut hi = self.high().unwrap() + o.high().unwrap();
        if let Some(t) = t {
            hi = hi.min(t);
        }
        if hi < lo {
            return Self::zero(t);
        }
        let mut c = vec![Q::zero(); (hi - lo + 1) as usize];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let base = self.floor + i as i64 + o.floor;
            if base > hi {
                break;
            }
            for (j, b) in o.c.iter().enumerate() {
                let e = base + j as i64;
                if e > hi {
                    break;
                }
                if !b.is_zero() {
                    c[(e - lo) as usize] += a * b;
                }
            }
        }
        Self::build(lo, c, t)
    }

    /// Multiply by `(1 + k q^e)`, `e ≥ 0`.
    pub fn mul_binomial(&self, k: &Q, e: i64) -> Result<Self> {
        if e < 0 {
            return Err(Error::Series("mul_binomial needs a non-negative exponent".into()));
        }
        if e == 0 {
            return Ok(self.scale(&(Q::one() + k)));
        }
        if self.c.is_empty() {
            return Ok(self.clone());
        }
        let n = self.c.len() + e as usize;
        let mut c = vec![Q::zero(); n];
        for (i, x) in self.c.iter().enumerate() {
            c[i] += x;
            c[i + e as usize] += x * k;
        }
        Ok(Self::build(self.floor, c, self.t))
    }

    /// Divide by `(1 + k q^e)`, `e ≥ 0`; needs a finite truncation when `e > 0`.
    pub fn div_binomial(&self, k: &Q, e: i64) -> Result<Self> {
        if e < 0 {
            return Err(Error::Series("div_binomial needs a non-negative exponent".into()));
        }
        if e == 0 {
            let d = Q::one() + k;
            if d.is_zero() {
                return Err(Error::Series("division by zero constant factor".into()));
            }
            return Ok(self.scale(&d.recip()));
        }
        let t = self.t.ok_or_else(|| Error::Series("division of an exact series needs a truncation".into()))?;
        if self.c.is_empty() || t < self.floor {
            return Ok(Self::zero(self.t));
        }
        let n = (t - self.floor + 1) as usize;
        let mut g: Vec<Q> = Vec::with_capacity(n);
        let e = e as usize;
        for i in 0..n {
            let mut v = self.c.get(i).cloned().unwrap_or_else(Q::zero);
            if i >= e && !g[i - e].is_zero() {
                v -= &g[i - e] * k;
            }
            g.push(v);
        }
        Ok(Self::build(self.floor, g, self.t))
    }

    /// Multiplicative inverse; valid through `T − 2·low`.
    pub fn inverse(&self) -> Result<Self> {
        let l = self.low().ok_or_else(|| Error::Series("inverse of zero".into()))?;
        let t = self.t.ok_or_else(|| Error::Series("inverse of an exact series needs a truncation".into()))?;
        let c0 = self.c[0].clone();
        let n = (t - l + 1).max(0) as usize;
        // f = q^l (c0 + c1 q + …), g = q^{-l} (d0 + d1 q + …).
        let mut d: Vec<Q> = Vec::with_capacity(n);
        for m in 0..n {
            let mut acc = if m == 0 { Q::one() } else { Q::zero() };
            for i in 1..=m.min(self.c.len().saturating_sub(1)) {
                acc -= &self.c[i] * &d[m - i];
            }
            d.push(acc / &c0);
        }
        Ok(Self::build(-l, d, Some(t - 2 * l)))
    }

    /// First exponent `≤ min(T)` where the two series differ.
    pub fn first_mismatch(&self, o: &QSeries) -> Option<i64> {
        let t = min_t(self.t, o.t);
        let lo = match (self.low(), o.low()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => return None,
        };
        let hi = match t {
            Some(t) => t,
            None => self.high().unwrap_or(lo).max(o.high().unwrap_or(lo)),
        };
        (lo..=hi).find(|&e| self.coeff(e) != o.coeff(e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SeriesJson::from(self)).expect("series serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: SeriesJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        QSeries::try_from(j)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, c)) in terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            let a = c.abs();
            let coef = if a.is_one() && *e != 0 { String::new() } else { a.to_string() };
            let pow = match e {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{e}"),
            };
            write!(f, "{sign}{coef}{pow}")?;
        }
        match self.t {
            Some(t) => write!(f, " + O(q^{})", t + 1),
            None => Ok(()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    unit: i64,
    floor: i64,
    #[serde(rename = "T")]
    t: Option<i64>,
    coeffs: Vec<(i64, String)>,
}

impl From<&QSeries> for SeriesJson {
    fn from(s: &QSeries) -> Self {
        SeriesJson {
            unit: 1,
            floor: s.floor,
            t: s.t,
            coeffs: s.terms().into_iter().map(|(e, c)| (e, c.to_string())).collect(),
        }
    }
}

impl TryFrom<SeriesJson> for QSeries {
    type Error = Error;

    fn try_from(j: SeriesJson) -> Result<Self> {
        if j.unit != 1 {
            return Err(Error::Parse(format!("unsupported exponent unit {}", j.unit)));
        }
        let mut s = QSeries::zero(j.t);
        for (e, c) in j.coeffs {
            let v: Q = c.parse().map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?;
            s = s.add(&QSeries::monomial(v, e, j.t));
        }
        Ok(s)
    }
}

// ---------------------------------------------------------------------------
// Products of binomials

/// `Π_{i≥0} (1 + k q^{shift + i·base})^power`, `shift ≥ 1`.
#[derive(Clone, Debug)]
struct InfFactor {
    k: Q,
    shift: i64,
    base: i64,
    power: i32,
}

/// `scalar · q^exp · Π (1 + k q^e)^{±1} · Π(infinite products)`, with every
/// stored `e ≥ 1`, so the lowest exponent is exactly `exp`.
#[derive(Clone, Debug)]
pub struct Prod {
    scalar: Q,
    exp: i64,
    fin: Vec<(Q, i64, i32)>,
    inf: Vec<InfFactor>,
}

impl Default for Prod {
    fn default() -> Self {
        Self::new()
    }
}

impl Prod {
    pub fn new() -> Self {
        Prod { scalar: Q::one(), exp: 0, fin: Vec::new(), inf: Vec::new() }
    }

    pub fn scalar(mut self, k: Q) -> Self {
        self.scalar *= k;
        self
    }

    pub fn monomial(mut self, e: i64) -> Self {
        self.exp += e;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero()
    }

    /// Lowest exponent of the product (`None` when it is zero).
    pub fn low(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.exp)
    }

    /// `(1 + k q^e)^power`.
    pub fn binomial(mut self, k: Q, e: i64, power: i32) -> Result<Self> {
        if e == 0 {
            let v = Q::one() + &k;
            if v.is_zero() && power < 0 {
                return Err(Error::Series("division by a vanishing factor".into()));
            }
            for _ in 0..power.unsigned_abs() {
                if power > 0 {
                    self.scalar *= &v;
                } else {
                    self.scalar /= &v;
                }
            }
            return Ok(self);
        }
        if k.is_zero() {
            return Ok(self);
        }
        if e < 0 {
            // 1 + k q^e = k q^e (1 + k⁻¹ q^{-e})
            for _ in 0..power.unsigned_abs() {
                if power > 0 {
                    self.scalar *= &k;
                    self.exp += e;
                } else {
                    self.scalar /= &k;
                    self.exp -= e;
                }
            }
            self.fin.push((k.recip(), -e, power));
            return Ok(self);
        }
        self.fin.push((k, e, power));
        Ok(self)
    }

    /// `(a; q^base)_n` with `a = sign · q^shift`, raised to `power`;
    /// negative `n` uses `(a;q)_{-m} = 1/Π_{i=1..m}(1 − a q^{-i})`.
    pub fn poch(mut self, sign: i64, shift: i64, base: i64, n: i64, power: i32) -> Result<Self> {
        let k = q(-sign);
        if n >= 0 {
            for i in 0..n {
                self = self.binomial(k.clone(), shift + i * base, power)?;
            }
        } else {
            for i in 1..=-n {
                self = self.binomial(k.clone(), shift - i * base, -power)?;
            }
        }
        Ok(self)
    }

    /// `(a; q^base)_∞` with `a = sign · q^shift`, raised to `power`.
    pub fn poch_inf(mut self, sign: i64, mut shift: i64, base: i64, power: i32) -> Result<Self> {
        if base < 1 {
            return Err(Error::Series("infinite product needs a positive base".into()));
        }
        let k = q(-sign);
        while shift < 1 {
            self = self.binomial(k.clone(), shift, power)?;
            shift += base;
        }
        self.inf.push(InfFactor { k, shift, base, power });
        Ok(self)
    }

    /// Expansion valid through `t`.
    pub fn eval(&self, t: i64) -> Result<QSeries> {
        if self.is_zero() || self.exp > t {
            return Ok(QSeries::zero(Some(t)));
        }
        let budget = t - self.exp;
        let mut s = QSeries::one(Some(budget));
        let apply = |s: QSeries, k: &Q, e: i64, power: i32| -> Result<QSeries> {
            let mut s = s;
            for _ in 0..power.unsigned_abs() {
                s = if power > 0 { s.mul_binomial(k, e)? } else { s.div_binomial(k, e)? };
            }
            Ok(s)
        };
        for (k, e, power) in &self.fin {
            if *e <= budget {
                s = apply(s, k, *e, *power)?;
            }
        }
        for f in &self.inf {
            let mut e = f.shift;
            while e <= budget {
                s = apply(s, &f.k, e, f.power)?;
                e += f.base;
            }
        }
        Ok(s.scale(&self.scalar).shift(self.exp))
    }
}

/// `(±q^shift; q^base)_count` through `t`; `count = None` is the infinite product.
pub fn pochhammer(sign: i64, shift: i64, base: i64, count: Option<i64>, t: i64) -> Result<QSeries> {
    let p = Prod::new();
    let p = match count {
        Some(n) => p.poch(sign, shift, base, n, 1)?,
        None => p.poch_inf(sign, shift, base, 1)?,
    };
    p.eval(t)
}

/// Weakly decreasing tuples `bound ≥ x_1 ≥ … ≥ x_len ≥ 0` whose partial
/// cost stays `≤ limit`; `cost(i, x)` must be non-negative.
fn decreasing_tuples(
    len: usize,
    bound: i64,
    limit: i64,
    cost: &dyn Fn(usize, i64) -> i64,
) -> Vec<Vec<i64>> {
    #[allow(clippy::too_many_arguments)]
    fn go(
        i: usize,
        len: usize,
        bound: i64,
        spent: i64,
        limit: i64,
        cur: &mut Vec<i64>,
        cost: &dyn Fn(usize, i64) -> i64,
        out: &mut Vec<Vec<i64>>,
    ) {
        if i == len {
            out.push(cur.clone());
            return;
        }
        for x in 0..=bound {
            let c = spent + cost(i, x);
            if c > limit {
                continue;
            }
            cur.push(x);
            go(i + 1, len, x, c, limit, cur, cost, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, len, bound, 0, limit, &mut Vec::new(), cost, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Product sides

fn half_integral(eta: i64, twice: i64, what: &str) -> Result<i64> {
    let v = eta * twice;
    if v % 2 != 0 {
        return Err(Error::Series(format!("{what}: exponent {v}/2 is not integral (odd lambda needs even eta)")));
    }
    Ok(v / 2)
}

fn triple_product(p: Prod, a: i64, b: i64, m: i64) -> Result<Prod> {
    if a < 1 || b < 1 || m < 1 {
        return Err(Error::Series(format!("non-positive product exponent in ({a},{b},{m})")));
    }
    p.poch_inf(1, a, m, 1)?.poch_inf(1, b, m, 1)?.poch_inf(1, m, m, 1)
}

/// Generating function of `A_j` (`bar = false`) or `Ā_j` (`bar = true`).
pub fn gen_a_series(params: &Params, j: u8, bar: bool, t: i64) -> Result<QSeries> {
    let (eta, k, r, l) = (params.eta, params.k, params.r, params.lambda());
    let j = j as i64;
    let shift = if bar { j - 1 } else { j };
    let a = half_integral(eta, 2 * r - l, "r - lambda/2")?;
    let b = half_integral(eta, 2 * (2 * k - r + shift) - l, "2k - r - lambda/2")?;
    let m = eta * (2 * k - l + shift);
    let mut p = Prod::new();
    for &al in &params.alphas {
        p = p.poch_inf(-1, al, eta, 1)?;
    }
    if bar {
        p = p.poch_inf(-1, eta, eta, 1)?;
    }
    p = triple_product(p, a, b, m)?;
    p.poch_inf(1, eta, eta, -1)?.eval(t)
}

/// The multisum side of the overpartition generating-function theorem.
pub fn multisum_lhs(params: &Params, t: i64) -> Result<QSeries> {
    let (eta, k, r, l) = (params.eta, params.k, params.r, params.lambda() as usize);
    if !(k >= r && r as usize > l) || k < 2 {
        return Err(Error::InvalidParams(format!("multisum needs k >= r > lambda, got {params}")));
    }
    let d = (k - 1) as usize;
    let r_idx = r as usize;
    let al = &params.alphas;
    // Lowest exponent contributed by N_i alone; all terms are non-negative
    // once the quadratic part is split as below.
    let nv = |v: &[i64], i: usize| if i >= 1 && i <= d { v[i - 1] } else { 0 };
    let low_of = |v: &[i64]| -> i64 {
        let mut e = eta * v.iter().map(|x| x * x).sum::<i64>();
        e += eta * (r_idx..=d).map(|i| nv(v, i)).sum::<i64>();
        e -= eta * nv(v, r_idx);
        let n1 = nv(v, l + 1);
        e -= eta * n1 * (n1 - 1).max(0) / 2;
        for s in 1..=l {
            let ns = nv(v, s);
            e -= eta * ns * (ns - 1) / 2 + al[s - 1] * ns;
        }
        e
    };
    let bound = (2.0 * ((t.max(0) as f64) / eta as f64).sqrt()) as i64 + 6;
    let mut total = QSeries::zero(Some(t));
    for v in decreasing_tuples(d, bound, i64::MAX, &|_, _| 0) {
        if low_of(&v) > t {
            continue;
        }
        let e = eta * (v.iter().map(|x| x * x).sum::<i64>() + (r_idx..=d).map(|i| nv(&v, i)).sum::<i64>());
        let mut p = Prod::new().monomial(e);
        p = p.binomial(Q::one(), -eta * nv(&v, r_idx), 1)?;
        let nl1 = nv(&v, l + 1);
        p = p.poch(-1, eta - eta * nl1, eta, nl1 - 1, 1)?;
        if l >= 1 {
            p = p.poch_inf(-1, eta + eta * nv(&v, l), eta, 1)?;
        }
        for i in 1..d {
            p = p.poch(1, eta, eta, nv(&v, i) - nv(&v, i + 1), -1)?;
        }
        p = p.poch(1, 2 * eta, 2 * eta, nv(&v, d), -1)?;
        for s in 1..=l {
            let ns = nv(&v, s);
            p = p.poch(-1, eta - al[s - 1] - eta * ns, eta, ns, 1)?;
        }
        for s in 2..=l {
            p = p.poch_inf(-1, eta - al[s - 1] + eta * nv(&v, s - 1), eta, 1)?;
        }
        total = total.add(&p.eval(t)?);
    }
    Ok(total)
}

/// Product side of the multisum theorem: the `Ā₀` generating function.
pub fn multisum_rhs(params: &Params, t: i64) -> Result<QSeries> {
    gen_a_series(params, 0, true, t)
}

// ---------------------------------------------------------------------------
// Classical identities

fn gordon_type_sum(k: i64, r: i64, eta: i64, last_base: i64, pre: &dyn Fn(&[i64]) -> Result<Prod>, t: i64) -> Result<QSeries> {
    let d = (k - 1) as usize;
    let bound = ((t.max(0) as f64 / eta as f64).sqrt()) as i64 + 3;
    let mut total = QSeries::zero(Some(t));
    let tuples = decreasing_tuples(d, bound, i64::MAX, &|_, _| 0);
    for v in tuples {
        let e = eta * (v.iter().map(|x| x * x).sum::<i64>() + v[(r as usize).saturating_sub(1).min(d)..].iter().sum::<i64>());
        let mut p = pre(&v)?.monomial(e);
        if p.low().is_some_and(|lo| lo > t) {
            continue;
        }
        for i in 0..d.saturating_sub(1) {
            p = p.poch(1, eta, eta, v[i] - v[i + 1], -1)?;
        }
        if d >= 1 {
            p = p.poch(1, last_base, last_base, v[d - 1], -1)?;
        }
        total = total.add(&p.eval(t)?);
    }
    Ok(total)
}

/// Both sides of the Andrews–Gordon identity.
pub fn andrews_gordon(k: i64, r: i64, t: i64) -> Result<(QSeries, QSeries)> {
    let lhs = gordon_type_sum(k, r, 1, 1, &|_| Ok(Prod::new()), t)?;
    let rhs = triple_product(Prod::new(), r, 2 * k - r + 1, 2 * k + 1)?.poch_inf(1, 1, 1, -1)?.eval(t)?;
    Ok((lhs, rhs))
}

/// Both sides of Bressoud's even-modulus identity.
pub fn bressoud_even(k: i64, r: i64, t: i64) -> Result<(QSeries, QSeries)> {
    let lhs = gordon_type_sum(k, r, 1, 2, &|_| Ok(Prod::new()), t)?;
    let rhs = triple_product(Prod::new(), r, 2 * k - r, 2 * k)?.poch_inf(1, 1, 1, -1)?.eval(t)?;
    Ok((lhs, rhs))
}

/// Both sides of the Göllnitz–Gordon type identity with parameter `j`.
pub fn gollnitz_gordon(k: i64, r: i64, j: i64, t: i64) -> Result<(QSeries, QSeries)> {
    let pre = |v: &[i64]| {
        let n1 = v.first().copied().unwrap_or(0);
        Prod::new().poch(-1, 1 - 2 * n1, 2, n1, 1)
    };
    let lhs = gordon_type_sum(k, r, 2, 4 - 2 * j, &pre, t)?;
    let m = 4 * k - 2 + 2 * j;
    let rhs = Prod::new()
        .poch_inf(1, 2, 4, 1)?
        .poch_inf(1, 2 * r - 1, m, 1)?
        .poch_inf(1, m, m, 1)?
        .poch_inf(1, 4 * k - 2 * r - 1 + 2 * j, m, 1)?
        .poch_inf(1, 1, 1, -1)?
        .eval(t)?;
    Ok((lhs, rhs))
}

// ---------------------------------------------------------------------------
// Bailey pairs (relative to a = 1)

#[derive(Clone, Debug, PartialEq)]
pub struct BaileyPair {
    pub alpha: Vec<QSeries>,
    pub beta: Vec<QSeries>,
}

#[derive(Serialize, Deserialize)]
struct PairJson {
    alpha: Vec<SeriesJson>,
    beta: Vec<SeriesJson>,
}

impl BaileyPair {
    pub fn n_max(&self) -> usize {
        self.alpha.len().min(self.beta.len()).saturating_sub(1)
    }

    /// `{"alpha": [series…], "beta": [series…]}`.
    pub fn to_json(&self) -> String {
        let j = PairJson {
            alpha: self.alpha.iter().map(SeriesJson::from).collect(),
            beta: self.beta.iter().map(SeriesJson::from).collect(),
        };
        serde_json::to_string(&j).expect("pair serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: PairJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let conv = |v: Vec<SeriesJson>| v.into_iter().map(QSeries::try_from).collect::<Result<Vec<_>>>();
        Ok(BaileyPair { alpha: conv(j.alpha)?, beta: conv(j.beta)? })
    }
}

fn sign(n: i64) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `f · p` valid through `t`, with `p` expanded just far enough.
fn mul_prod(f: &QSeries, p: &Prod, t: i64) -> Result<QSeries> {
    match (f.low(), p.low()) {
        (Some(lf), Some(lp)) => {
            let pe = p.eval(t - lf)?;
            let fe = f.truncate(t - lp);
            Ok(fe.mul(&pe).truncate(t))
        }
        _ => Ok(QSeries::zero(Some(t))),
    }
}

/// Checks `β_n = Σ_r α_r / ((q)_{n−r} (q)_{n+r})` for `n ≤ n_max` through `t`.
pub fn bailey_pair_check(pair: &BaileyPair, n_max: usize, t: i64) -> VerificationReport {
    let run = || -> Result<Option<String>> {
        if pair.n_max() < n_max {
            return Ok(Some(format!("pair only has terms up to n={}", pair.n_max())));
        }
        for n in 0..=n_max as i64 {
            let mut s = QSeries::zero(Some(t));
            for r in 0..=n {
                let p = Prod::new().poch(1, 1, 1, n - r, -1)?.poch(1, 1, 1, n + r, -1)?;
                s = s.add(&mul_prod(&pair.alpha[r as usize], &p, t)?);
            }
            let beta = pair.beta[n as usize].truncate(t);
            if let Some(e) = s.first_mismatch(&beta) {
                return Ok(Some(format!(
                    "n={n}, q^{e}: relation gives {}, beta has {}",
                    s.coeff(e),
                    beta.coeff(e)
                )));
            }
        }
        Ok(None)
    };
    match run() {
        Ok(None) => VerificationReport::pass("bailey-pair"),
        Ok(Some(c)) => VerificationReport::fail("bailey-pair", c),
        Err(e) => VerificationReport::fail("bailey-pair", e.to_string()),
    }
}

/// Slater's pair: `α_n = (−1)^n (q^{−n} + q^n)`, `β_n = (−1)^n / (q^n (q²;q²)_n)`.
pub fn bp1_pair(n_max: usize, t: i64) -> Result<BaileyPair> {
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for n in 0..=n_max as i64 {
        alpha.push(if n == 0 { QSeries::one(None) } else { QSeries::from_terms(&[(-n, sign(n)), (n, sign(n))]) });
        beta.push(Prod::new().scalar(q(sign(n))).monomial(-n).poch(1, 2, 2, n, -1)?.eval(t)?);
    }
    Ok(BaileyPair { alpha, beta })
}

/// `α_n = 2(−1)^n q^{n²}`, `β_n = 1/(q²;q²)_n`.
pub fn unitbp2_pair(n_max: usize, t: i64) -> Result<BaileyPair> {
    let mut alpha = Vec::new();
    let mut beta = Vec::new();
    for n in 0..=n_max as i64 {
        alpha.push(if n == 0 { QSeries::one(None) } else { QSeries::from_terms(&[(n * n, 2 * sign(n))]) });
        beta.push(Prod::new().poch(1, 2, 2, n, -1)?.eval(t)?);
    }
    Ok(BaileyPair { alpha, beta })
}

/// `(−1)^n q^{A n²} (q^{(A−1)n} + q^{−(A−1)n})` in base `q^eta`, `α_0 = 1`.
pub fn shape_alpha(a: i64, n: i64, eta: i64) -> QSeries {
    if n == 0 {
        return QSeries::one(None);
    }
    let s = sign(n);
    QSeries::from_terms(&[(eta * (a * n * n + (a - 1) * n), s), (eta * (a * n * n - (a - 1) * n), s)])
}

/// `(−1)^n q^{A n²} (q^{(A−1)n} + q^{−An}) (1 + q^n)/2` in base `q^eta`.
pub fn cbl4_alpha(a: i64, n: i64, eta: i64) -> QSeries {
    if n == 0 {
        return QSeries::one(None);
    }
    let s = sign(n);
    let core = QSeries::from_terms(&[(eta * (a * n * n + (a - 1) * n), s), (eta * (a * n * n - a * n), s)]);
    core.mul(&QSeries::from_terms(&[(0, 1), (eta * n, 1)])).scale(&half())
}

fn check_shape(pair: &BaileyPair, a: i64) -> Result<()> {
    for (n, al) in pair.alpha.iter().enumerate() {
        if *al != shape_alpha(a, n as i64, 1) {
            return Err(Error::Series(format!("alpha_{n} does not have the A={a} shape")));
        }
    }
    Ok(())
}

/// `α'_n = q^{n²} α_n`, `β'_n = Σ_j q^{j²} β_j / (q)_{n−j}`.
pub fn bl1_transform(pair: &BaileyPair, t: i64) -> Result<BaileyPair> {
    let alpha = pair.alpha.iter().enumerate().map(|(n, a)| a.shift((n * n) as i64)).collect();
    let mut beta = Vec::new();
    for n in 0..=pair.n_max() as i64 {
        let mut s = QSeries::zero(Some(t));
        for j in 0..=n {
            let p = Prod::new().monomial(j * j).poch(1, 1, 1, n - j, -1)?;
            s = s.add(&mul_prod(&pair.beta[j as usize], &p, t)?);
        }
        beta.push(s);
    }
    Ok(BaileyPair { alpha, beta })
}

/// Shape-raising step: `α` of shape `A` becomes `(−1)^n q^{An²}(q^{An}+q^{−An})`,
/// `β'_n = q^n β_n`.
pub fn blbp_transform(pair: &BaileyPair, a: i64) -> Result<BaileyPair> {
    check_shape(pair, a)?;
    let alpha = (0..pair.alpha.len() as i64)
        .map(|n| {
            if n == 0 {
                QSeries::one(None)
            } else {
                QSeries::from_terms(&[(a * n * n + a * n, sign(n)), (a * n * n - a * n, sign(n))])
            }
        })
        .collect();
    let beta = pair.beta.iter().enumerate().map(|(n, b)| b.shift(n as i64)).collect();
    Ok(BaileyPair { alpha, beta })
}

/// Halving step: `α` of shape `A` becomes the `cbl4_alpha` form,
/// `β'_n = β_n (1 + q^n)/2`.
pub fn cbl4_transform(pair: &BaileyPair, a: i64) -> Result<BaileyPair> {
    check_shape(pair, a)?;
    let alpha = (0..pair.alpha.len() as i64).map(|n| cbl4_alpha(a, n, 1)).collect();
    let mut beta = Vec::new();
    for (n, b) in pair.beta.iter().enumerate() {
        let t = b.trunc();
        let f = QSeries::from_terms(&[(0, 1), (n as i64, 1)]).scale(&half());
        beta.push(match t {
            Some(t) => b.mul(&f).truncate(t),
            None => b.mul(&f),
        });
    }
    Ok(BaileyPair { alpha, beta })
}

/// The chain from `unitbp2_pair`: `k − r − 1` rounds of the shape-raising
/// step followed by `bl1_transform`.
pub fn chain_pair(k: i64, r: i64, n_max: usize, t: i64) -> Result<BaileyPair> {
    if k <= r {
        return Err(Error::InvalidParams(format!("chain needs k > r, got k={k}, r={r}")));
    }
    let mut pair = unitbp2_pair(n_max, t)?;
    for a in 1..(k - r) {
        pair = bl1_transform(&blbp_transform(&pair, a)?, t)?;
    }
    Ok(pair)
}

/// `Σ_{n ≥ M_{r+1} ≥ … ≥ M_{k−1} ≥ 0} q^{Σ(M²+M)} / ((q)_{n−M_{r+1}} ⋯ (q²;q²)_{M_{k−1}})`
/// in base `q^eta`.
fn chain_beta(k: i64, r: i64, n: i64, eta: i64, t: i64) -> Result<QSeries> {
    let d = (k - r - 1) as usize;
    let mut total = QSeries::zero(Some(t));
    for v in decreasing_tuples(d, n, t / eta.max(1), &|_, x| x * x + x) {
        let mut seq = vec![n];
        seq.extend(&v);
        let mut p = Prod::new().monomial(eta * v.iter().map(|x| x * x + x).sum::<i64>());
        for i in 0..d {
            p = p.poch(1, eta, eta, seq[i] - seq[i + 1], -1)?;
        }
        p = p.poch(1, 2 * eta, 2 * eta, seq[d], -1)?;
        total = total.add(&p.eval(t)?);
    }
    Ok(total)
}

/// The pair reached by [`chain_pair`], built from its closed form.
pub fn chain_pair_direct(k: i64, r: i64, n_max: usize, t: i64) -> Result<BaileyPair> {
    if k <= r {
        return Err(Error::InvalidParams(format!("chain needs k > r, got k={k}, r={r}")));
    }
    let alpha = (0..=n_max as i64).map(|n| shape_alpha(k - r, n, 1)).collect();
    let beta = (0..=n_max as i64).map(|n| chain_beta(k, r, n, 1, t)).collect::<Result<_>>()?;
    Ok(BaileyPair { alpha, beta })
}

fn bpg_beta(k: i64, r: i64, n: i64, eta: i64, t: i64) -> Result<QSeries> {
    let b = chain_beta(k, r, n, eta, t)?;
    let f = QSeries::from_terms(&[(0, 1), (eta * n, 1)]).scale(&half());
    Ok(b.mul(&f).truncate(t))
}

/// The halved pair, from its closed form.
pub fn bpg_pair(k: i64, r: i64, n_max: usize, t: i64) -> Result<BaileyPair> {
    if k <= r || r < 1 {
        return Err(Error::InvalidParams(format!("closed-form pair needs k > r >= 1, got k={k}, r={r}")));
    }
    let alpha = (0..=n_max as i64).map(|n| cbl4_alpha(k - r, n, 1)).collect();
    let beta = (0..=n_max as i64).map(|n| bpg_beta(k, r, n, 1, t)).collect::<Result<_>>()?;
    Ok(BaileyPair { alpha, beta })
}

/// The halved pair, via the transform chain.
pub fn bpg_pair_chain(k: i64, r: i64, n_max: usize, t: i64) -> Result<BaileyPair> {
    cbl4_transform(&chain_pair(k, r, n_max, t)?, k - r)
}

/// Both sides of the multiparameter corollary with the halved pair in base `q^η`.
pub fn corollary_lc_sides(params: &Params, t: i64) -> Result<(QSeries, QSeries)> {
    let (eta, k, r, l) = (params.eta, params.k, params.r, params.lambda());
    if !(r > l && k > r) {
        return Err(Error::InvalidParams(format!("corollary check needs k > r > lambda, got {params}")));
    }
    let al = &params.alphas;
    let asum: i64 = al.iter().sum();

    // Left: Σ_n 2 q^{E(n)} Π(−q^{α_s})_n / ((1+q^{ηn}) Π(−q^{η−α_s})_n) α_n(q^η).
    let e_of = |n: i64| (eta * ((2 * r - l - 1) * n * n + (l + 1) * n)) / 2 - asum * n;
    let low_of = |n: i64| e_of(n) + eta * (k - r) * (n * n - n);
    let mut lhs = QSeries::zero(Some(t));
    let mut n = 0i64;
    loop {
        let lo = low_of(n);
        if lo > t && low_of(n + 1) >= lo {
            break;
        }
        if lo <= t {
            let mut p = Prod::new().scalar(q(2)).monomial(e_of(n)).binomial(Q::one(), eta * n, -1)?;
            for &a in al {
                p = p.poch(-1, a, eta, n, 1)?.poch(-1, eta - a, eta, n, -1)?;
            }
            lhs = lhs.add(&mul_prod(&cbl4_alpha(k - r, n, eta), &p, t)?);
        }
        n += 1;
    }

    // Right: prefactor × Σ_{N_1 ≥ … ≥ N_r} (…) β_{N_r}(q^η).
    let ru = r as usize;
    let lu = l as usize;
    let cost = |i: usize, x: i64| -> i64 {
        let s = i + 1;
        if s <= lu {
            eta * x * (x + 1) / 2 - al[i] * x
        } else if s == lu + 1 {
            eta * x * (x + 1) / 2
        } else {
            eta * x * x
        }
    };
    let bound = ((t.max(0) as f64 / eta as f64).sqrt() * 2.0) as i64 + 3;
    let mut betas: Vec<Option<QSeries>> = vec![None; (bound + 1) as usize];
    let mut sum = QSeries::zero(Some(t));
    for v in decreasing_tuples(ru, bound, t, &cost) {
        let nv = |s: usize| v[s - 1];
        let e: i64 = (0..ru).map(|i| cost(i, v[i])).sum();
        let mut p = Prod::new().monomial(e);
        for i in 1..ru {
            p = p.poch(1, eta, eta, nv(i) - nv(i + 1), -1)?;
        }
        p = p.poch(-1, 0, eta, nv(lu + 1), 1)?;
        for s in 1..=lu {
            p = p.poch(-1, al[s - 1], eta, nv(s), 1)?;
        }
        if lu >= 1 {
            p = p.poch(-1, eta, eta, nv(lu), -1)?;
        }
        for s in 2..=lu {
            p = p.poch(-1, eta - al[s - 1], eta, nv(s - 1), -1)?;
        }
        let nr = nv(ru) as usize;
        if betas[nr].is_none() {
            betas[nr] = Some(bpg_beta(k, r, nr as i64, eta, t)?);
        }
        sum = sum.add(&mul_prod(betas[nr].as_ref().unwrap(), &p, t)?);
    }
    let first = if l >= 1 { eta - al[0] } else { eta };
    let pre = Prod::new().poch_inf(1, eta, eta, 1)?.poch_inf(-1, first, eta, -1)?;
    let rhs = mul_prod(&sum, &pre, t)?;
    Ok((lhs, rhs))
}

/// Coefficientwise comparison through the common truncation order.
pub fn verify_identity(name: &str, lhs: &QSeries, rhs: &QSeries) -> VerificationReport {
    match lhs.first_mismatch(rhs) {
        None => VerificationReport::pass(name)
            .note(format!("agree through q^{}", min_t(lhs.trunc(), rhs.trunc()).unwrap_or(i64::MAX))),
        Some(e) => VerificationReport::fail(name, format!("q^{e}: {} vs {}", lhs.coeff(e), rhs.coeff(e))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries, t: i64) -> Vec<i64> {
        s.integer_coeffs(t).unwrap().iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn geometric() {
        let one_minus_q = QSeries::from_terms(&[(0, 1), (1, -1)]);
        let g = one_minus_q.truncate(12).inverse().unwrap();
        assert_eq!(ints(&g, 12), vec![1; 13]);
        assert_eq!(one_minus_q.mul(&g).first_mismatch(&QSeries::one(None)), None);
    }

    #[test]
    fn partition_numbers() {
        let e = pochhammer(1, 1, 1, None, 12).unwrap();
        let p = e.inverse().unwrap();
        assert_eq!(ints(&p, 12), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
    }

    #[test]
    fn small_pochhammers() {
        let d = pochhammer(-1, 1, 1, None, 10).unwrap();
        assert_eq!(ints(&d, 10), vec![1, 1, 1, 2, 2, 3, 4, 5, 6, 8, 10]);
        assert_eq!(pochhammer(1, 1, 1, Some(0), 5).unwrap(), QSeries::one(Some(5)));
        assert_eq!(ints(&pochhammer(1, 1, 1, Some(2), 5).unwrap(), 5), vec![1, -1, -1, 1, 0, 0]);
        // (a;q)_{-1} = 1/(1 − a/q) with a = −q gives 1/2.
        let h = pochhammer(-1, 1, 1, Some(-1), 3).unwrap();
        assert_eq!(h.coeff(0), half());
    }

    #[test]
    fn negative_exponent_binomials() {
        // (1 + q^{-2}) = q^{-2}(1 + q^2)
        let p = Prod::new().binomial(Q::one(), -2, 1).unwrap();
        assert_eq!(p.low(), Some(-2));
        assert_eq!(p.eval(4).unwrap().terms(), vec![(-2, Q::one()), (0, Q::one())]);
    }

    #[test]
    fn json_roundtrip() {
        let s = QSeries::from_terms(&[(-1, 3), (2, -1)]).scale(&half()).truncate(5);
        let back = QSeries::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert!(s.to_json().contains("\"3/2\""));
    }

    #[test]
    fn euler_display() {
        let params = Params::new(1, vec![], 3, 2, 0).unwrap();
        let lhs = multisum_lhs(&params, 30).unwrap();
        let rhs = pochhammer(-1, 1, 1, None, 30)
            .unwrap()
            .mul(&Prod::new().poch_inf(1, 1, 5, -1).unwrap().poch_inf(1, 4, 5, -1).unwrap().eval(30).unwrap());
        assert_eq!(lhs.first_mismatch(&rhs), None);
        assert_eq!(gen_a_series(&params, 0, true, 30).unwrap().first_mismatch(&rhs), None);
    }

    #[test]
    fn slater_pairs() {
        assert!(bailey_pair_check(&bp1_pair(4, 30).unwrap(), 4, 30).passed());
        assert!(bailey_pair_check(&unitbp2_pair(4, 30).unwrap(), 4, 30).passed());
        let mut bad = unitbp2_pair(4, 30).unwrap();
        bad.beta[1] = bad.beta[1].perturbed(1, Q::one());
        let rep = bailey_pair_check(&bad, 4, 30);
        assert!(!rep.passed());
        assert!(rep.counterexample.unwrap().starts_with("n=1"));
    }

    #[test]
    fn first_steps_of_the_chain() {
        let t = 30;
        let p1 = blbp_transform(&bp1_pair(5, t).unwrap(), 0).unwrap();
        for n in 0..=5i64 {
            let want = if n == 0 { QSeries::one(None) } else { QSeries::from_terms(&[(0, 2 * sign(n))]) };
            assert_eq!(p1.alpha[n as usize], want);
            let b = Prod::new().scalar(q(sign(n))).poch(1, 2, 2, n, -1).unwrap().eval(t).unwrap();
            assert_eq!(p1.beta[n as usize].first_mismatch(&b), None);
        }
        let p2 = bl1_transform(&p1, t).unwrap();
        let u = unitbp2_pair(5, t).unwrap();
        assert_eq!(p2.alpha, u.alpha);
        for n in 0..=5 {
            assert_eq!(p2.beta[n].first_mismatch(&u.beta[n]), None);
        }
    }
}
