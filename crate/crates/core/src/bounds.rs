//! Numeric bound formulas for trace codes over rational function fields,
//! evaluated with exact rationals where possible and outward-rounded
//! intervals otherwise, plus verdicts against exact code parameters.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::funcfield::{count_places, l_dim, mobius_center, Divisor};
use crate::gf::Field;
use crate::numtheory::{checked_pow, prime_power};
use crate::tracecode::{space_nondegenerate, TraceCode};

const REL: f64 = 4.0 * f64::EPSILON;
// powf is not correctly rounded; widen by a generous relative margin.
const POW_REL: f64 = 1e-13;

/// A closed interval `[lo, hi]` of reals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Interval {
        debug_assert!(lo <= hi || lo.is_nan() || hi.is_nan());
        Interval { lo, hi }
    }

    pub fn point(x: f64) -> Interval {
        Interval { lo: x, hi: x }
    }

    fn widened(x: f64, rel: f64) -> Interval {
        let e = x.abs() * rel;
        Interval {
            lo: (x - e).next_down(),
            hi: (x + e).next_up(),
        }
    }

    fn from_ratio(r: &Ratio<i128>) -> Interval {
        let x = *r.numer() as f64 / *r.denom() as f64;
        if *r.denom() == 1 && (*r.numer()).unsigned_abs() < (1u128 << 53) {
            Interval::point(x)
        } else {
            Interval::widened(x, REL)
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    fn add(self, o: Interval) -> Interval {
        Interval {
            lo: (self.lo + o.lo).next_down(),
            hi: (self.hi + o.hi).next_up(),
        }
    }

    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    fn mul(self, o: Interval) -> Interval {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    fn recip(self) -> Interval {
        if self.lo <= 0.0 && self.hi >= 0.0 {
            return Interval::new(f64::NEG_INFINITY, f64::INFINITY);
        }
        Interval {
            lo: (1.0 / self.hi).next_down(),
            hi: (1.0 / self.lo).next_up(),
        }
    }
}

/// A real number known either exactly (rational) or as an enclosing interval.
#[derive(Clone, Debug, PartialEq)]
pub enum Num {
    Exact(Ratio<i128>),
    Approx(Interval),
}

impl Num {
    pub fn int(v: i128) -> Num {
        Num::Exact(Ratio::from_integer(v))
    }

    pub fn ratio(n: i128, d: i128) -> Num {
        Num::Exact(Ratio::new(n, d))
    }

    pub fn zero() -> Num {
        Num::int(0)
    }

    /// `q^(num/den)`, exact when `q^num` is a perfect `den`-th power.
    pub fn root_pow(q: u64, num: u64, den: u64) -> Num {
        if let Ok(t) = checked_pow(q, num) {
            if let Some(root) = exact_root(t, den) {
                return Num::int(root);
            }
        }
        let x = (q as f64).powf(num as f64 / den as f64);
        Num::Approx(Interval::widened(x, POW_REL))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Num::Exact(_))
    }

    pub fn exact(&self) -> Option<Ratio<i128>> {
        match self {
            Num::Exact(r) => Some(*r),
            Num::Approx(_) => None,
        }
    }

    pub fn interval(&self) -> Interval {
        match self {
            Num::Exact(r) => Interval::from_ratio(r),
            Num::Approx(i) => *i,
        }
    }

    /// Representative value: the rational itself or the interval midpoint.
    pub fn value(&self) -> f64 {
        match self {
            Num::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            Num::Approx(i) => i.mid(),
        }
    }

    /// `None` when an interval straddles `v`.
    pub fn cmp_int(&self, v: i128) -> Option<Ordering> {
        self.cmp_ratio(&Ratio::from_integer(v))
    }

    pub fn cmp_ratio(&self, v: &Ratio<i128>) -> Option<Ordering> {
        match self {
            Num::Exact(r) => Some(r.cmp(v)),
            Num::Approx(i) => {
                let w = Interval::from_ratio(v);
                if i.hi < w.lo {
                    Some(Ordering::Less)
                } else if i.lo > w.hi {
                    Some(Ordering::Greater)
                } else {
                    None
                }
            }
        }
    }

    /// Exact compare of two numbers; `None` when enclosures overlap.
    pub fn cmp_num(&self, other: &Num) -> Option<Ordering> {
        match (self, other) {
            (Num::Exact(a), Num::Exact(b)) => Some(a.cmp(b)),
            (a, Num::Exact(b)) => a.cmp_ratio(b),
            (Num::Exact(a), b) => b.cmp_ratio(a).map(Ordering::reverse),
            (Num::Approx(a), Num::Approx(b)) => {
                if a.hi < b.lo {
                    Some(Ordering::Less)
                } else if a.lo > b.hi {
                    Some(Ordering::Greater)
                } else {
                    None
                }
            }
        }
    }
}

fn exact_root(t: i128, den: u64) -> Option<i128> {
    if t < 0 {
        return None;
    }
    if den == 1 {
        return Some(t);
    }
    let guess = (t as f64).powf(1.0 / den as f64).round() as i128;
    (guess.saturating_sub(1)..=guess + 1)
        .filter(|x| *x >= 0)
        .find(|&x| (0..den).try_fold(1i128, |acc, _| acc.checked_mul(x)) == Some(t))
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Exact(r) => write!(f, "{r}"),
            Num::Approx(i) => write!(f, "{:.6}", i.mid()),
        }
    }
}

impl Add for Num {
    type Output = Num;
    fn add(self, o: Num) -> Num {
        if let (Num::Exact(a), Num::Exact(b)) = (&self, &o) {
            if let Some(s) = a.checked_add(b) {
                return Num::Exact(s);
            }
        }
        Num::Approx(self.interval().add(o.interval()))
    }
}

impl Neg for Num {
    type Output = Num;
    fn neg(self) -> Num {
        match self {
            Num::Exact(r) => Num::Exact(-r),
            Num::Approx(i) => Num::Approx(i.neg()),
        }
    }
}

impl Sub for Num {
    type Output = Num;
    fn sub(self, o: Num) -> Num {
        self + (-o)
    }
}

impl Mul for Num {
    type Output = Num;
    fn mul(self, o: Num) -> Num {
        match (&self, &o) {
            (Num::Exact(a), _) if *a.numer() == 0 => Num::zero(),
            (_, Num::Exact(b)) if *b.numer() == 0 => Num::zero(),
            (Num::Exact(a), Num::Exact(b)) => match a.checked_mul(b) {
                Some(p) => Num::Exact(p),
                None => Num::Approx(self.interval().mul(o.interval())),
            },
            _ => Num::Approx(self.interval().mul(o.interval())),
        }
    }
}

impl Div for Num {
    type Output = Num;
    fn div(self, o: Num) -> Num {
        match (&self, &o) {
            (Num::Exact(a), Num::Exact(b)) if *b.numer() != 0 => {
                match a.checked_div(b) {
                    Some(p) => Num::Exact(p),
                    None => Num::Approx(self.interval().mul(o.interval().recip())),
                }
            }
            (Num::Exact(a), _) if *a.numer() == 0 => Num::zero(),
            _ => Num::Approx(self.interval().mul(o.interval().recip())),
        }
    }
}

trait CheckedRatio: Sized {
    fn checked_add(&self, o: &Self) -> Option<Self>;
    fn checked_mul(&self, o: &Self) -> Option<Self>;
    fn checked_div(&self, o: &Self) -> Option<Self>;
}

impl CheckedRatio for Ratio<i128> {
    fn checked_add(&self, o: &Self) -> Option<Self> {
        let n = self
            .numer()
            .checked_mul(*o.denom())?
            .checked_add(o.numer().checked_mul(*self.denom())?)?;
        let d = self.denom().checked_mul(*o.denom())?;
        Some(Ratio::new(n, d))
    }
    fn checked_mul(&self, o: &Self) -> Option<Self> {
        let n = self.numer().checked_mul(*o.numer())?;
        let d = self.denom().checked_mul(*o.denom())?;
        Some(Ratio::new(n, d))
    }
    fn checked_div(&self, o: &Self) -> Option<Self> {
        if *o.numer() == 0 {
            return None;
        }
        let n = self.numer().checked_mul(*o.denom())?;
        let d = self.denom().checked_mul(*o.numer())?;
        Some(Ratio::new(n, d))
    }
}

/// `δ(r)`: 1 for `r = 1`, else 0.
pub fn delta(r: u64) -> i128 {
    i128::from(r == 1)
}

fn check_q(q: u64) -> Result<()> {
    prime_power(q).map(|_| ()).ok_or(Error::NotPrimePower(q))
}

fn check_degree(r: u64) -> Result<()> {
    if r == 0 {
        return Err(Error::InvalidArgument("place degrees must be at least 1".into()));
    }
    Ok(())
}

fn sqrt_q(q: u64) -> Num {
    Num::root_pow(q, 1, 2)
}

/// `(q^{r/4} − 1)/(q^{1/2} − 1)`.
fn quarter_ratio(q: u64, r: u64) -> Num {
    (Num::root_pow(q, r, 4) - Num::int(1)) / (sqrt_q(q) - Num::int(1))
}

/// Interval `q^r/r ± (q/(q−1) + 2g√q/(√q−1))(q^{r/2}−1)/r` for `B_r`.
pub fn br_interval_classic(q: u64, g: u64, r: u64) -> Result<(Num, Num)> {
    check_q(q)?;
    check_degree(r)?;
    let qn = Num::int(q as i128);
    let center = Num::root_pow(q, r, 1) / Num::int(r as i128);
    let factor = qn.clone() / Num::int(q as i128 - 1)
        + Num::int(2 * g as i128) * sqrt_q(q) / (sqrt_q(q) - Num::int(1));
    let radius = factor * (Num::root_pow(q, r, 2) - Num::int(1)) / Num::int(r as i128);
    Ok((center.clone() - radius.clone(), center + radius))
}

/// Interval for `B_r` around `(1/r) Σ_{d|r} μ(r/d) q^d + δ(r)`.
pub fn br_interval_refined(q: u64, g: u64, r: u64) -> Result<(Num, Num)> {
    check_q(q)?;
    check_degree(r)?;
    let center = Num::Exact(mobius_center(q, r)?) + Num::int(delta(r));
    let radius = refined_radius(q, Num::int(g as i128), r);
    Ok((center.clone() - radius.clone(), center + radius))
}

/// `2g q^{r/2}/r + (1−δ(r))/r · 2g √q (q^{r/4}−1)/(√q−1)` for a genus bound `g`.
fn refined_radius(q: u64, g: Num, r: u64) -> Num {
    let two_g = Num::int(2) * g;
    two_g.clone() * refined_weight(q, r)
}

/// `q^{r/2}/r + (1−δ(r)) √q (q^{r/4}−1)/(r(√q−1))`.
fn refined_weight(q: u64, r: u64) -> Num {
    let rn = Num::int(r as i128);
    Num::root_pow(q, r, 2) / rn.clone()
        + Num::int(1 - delta(r)) * sqrt_q(q) * quarter_ratio(q, r) / rn
}

/// Upper bound for the genus of the cover `y^q − y = f`, `f ∈ L(G)`:
/// `qg + (q−1)(−2 + deg G⁺ + deg (G⁺)⁰)/2`.
pub fn genus_bound_ef(q: u64, g: u64, deg_gplus: i64, deg_gplus0: i64) -> Ratio<i128> {
    let q = q as i128;
    Ratio::from_integer(q * g as i128)
        + Ratio::new((q - 1) * (-2 + deg_gplus as i128 + deg_gplus0 as i128), 2)
}

/// Upper bound on `dim C_tr` from `l(G)` and `l(⌊G/q⌋)`; needs `deg G < Σ β_i`.
pub fn dim_upper(field: &Field, g: &Divisor, beta_sum: usize) -> Result<usize> {
    if g.degree() >= beta_sum as i64 {
        return Err(Error::Hypothesis(format!(
            "deg G < Σβ_i is required, got deg G = {} and Σβ_i = {beta_sum}",
            g.degree()
        )));
    }
    let q = field.order();
    let floor = g.floor_div(q);
    let lg = l_dim(field, g)?;
    let lf = l_dim(field, &floor)?;
    Ok(if floor.is_effective() { lg - lf + 1 } else { lg - lf })
}

/// Per-degree contribution `δ + q^t/t + (1−δ)(q/t)(q^{t/2}−1)/(q−1)`
/// bounding the genus-free part of `B_t(E_f)`.
fn center_bound(q: u64, t: u64) -> Num {
    let tn = Num::int(t as i128);
    let d = delta(t);
    Num::int(d)
        + Num::root_pow(q, t, 1) / tn.clone()
        + Num::int(1 - d) * Num::int(q as i128) / tn * (Num::root_pow(q, t, 2) - Num::int(1))
            / Num::int(q as i128 - 1)
}

/// Upper bound on `B_t(E_f)` when `g(E_f) ≤ ge`.
fn cover_count_bound(q: u64, t: u64, ge: Ratio<i128>) -> Num {
    center_bound(q, t) + Num::int(2) * Num::Exact(ge) * refined_weight(q, t)
}

/// Threshold `Δ` for a uniform place degree `β`.
pub fn delta_uniform(q: u64, g: u64, n: usize, beta: u64, deg_gplus: i64, deg_gplus0: i64) -> Result<Num> {
    delta_mixed(q, g, n, &[beta], deg_gplus, deg_gplus0)
}

/// Threshold `Δ''` summed over the distinct place degrees `ts`.
pub fn delta_mixed(q: u64, g: u64, n: usize, ts: &[u64], deg_gplus: i64, deg_gplus0: i64) -> Result<Num> {
    check_q(q)?;
    let ge = genus_bound_ef(q, g, deg_gplus, deg_gplus0);
    let mut acc = Num::int(-((q as i128 - 1) * n as i128));
    for &t in ts {
        check_degree(t)?;
        acc = acc + cover_count_bound(q, t, ge);
    }
    Ok(acc)
}

/// Minimum-distance lower bound for uniform degree `β` over a field of genus `g`.
pub fn mindist_uniform(q: u64, g: u64, n: usize, beta: u64, deg_gplus: i64, deg_gplus0: i64) -> Result<Num> {
    check_q(q)?;
    check_degree(beta)?;
    let qn = Num::int(q as i128);
    let bn = Num::int(beta as i128);
    let d = delta(beta);
    let ge = genus_bound_ef(q, g, deg_gplus, deg_gplus0);
    let head = Num::int(n as i128)
        - Num::ratio(d, q as i128)
        - Num::root_pow(q, beta - 1, 1) / bn.clone()
        - Num::int(1 - d) / bn.clone() * (Num::root_pow(q, beta, 2) - Num::int(1)) / Num::int(q as i128 - 1);
    let bracket = Num::int(2) * Num::root_pow(q, beta, 2) / (qn.clone() * bn.clone())
        + Num::int(2) * sqrt_q(q) * Num::int(1 - d) / (bn * qn) * quarter_ratio(q, beta);
    Ok(head - bracket * Num::Exact(ge))
}

/// Minimum-distance lower bound on `F_q(x)` with uniform degree `β`, where
/// `s = B_β − n` counts the degree-`β` places left out of `D`.
pub fn mindist_rational(q: u64, n: usize, beta: u64, s: i128, deg_gplus: i64, deg_gplus0: i64) -> Result<Num> {
    let [a, b, c] = mindist_rational_terms(q, n, beta, s, deg_gplus, deg_gplus0)?;
    Ok(a + b + c)
}

/// The three summands of [`mindist_rational`]: `n(q−1)/q`, `−s/q` and the
/// genus term.
pub fn mindist_rational_terms(
    q: u64,
    n: usize,
    beta: u64,
    s: i128,
    deg_gplus: i64,
    deg_gplus0: i64,
) -> Result<[Num; 3]> {
    check_q(q)?;
    check_degree(beta)?;
    let qi = q as i128;
    let qn = Num::int(qi);
    let bn = Num::int(beta as i128);
    let d = delta(beta);
    let bracket = Num::int(2) * Num::root_pow(q, beta, 2) / (qn.clone() * bn.clone())
        + Num::int(1 - d) / (qn * bn) * Num::int(2) * sqrt_q(q) * quarter_ratio(q, beta);
    let ge = Ratio::new((qi - 1) * (-2 + deg_gplus as i128 + deg_gplus0 as i128), 2);
    Ok([
        Num::ratio(n as i128 * (qi - 1), qi),
        Num::ratio(-s, qi),
        -(bracket * Num::Exact(ge)),
    ])
}

/// Degree-one form `n(q−1)/q − s/q − (q−1)(a+b−2)/√q`, as its three terms.
pub fn mindist_degree_one_terms(q: u64, n: usize, s: i128, deg_gplus: i64, deg_gplus0: i64) -> Result<[Num; 3]> {
    check_q(q)?;
    let qi = q as i128;
    Ok([
        Num::ratio(n as i128 * (qi - 1), qi),
        Num::ratio(-s, qi),
        -(Num::int((qi - 1) * (deg_gplus as i128 + deg_gplus0 as i128 - 2)) / sqrt_q(q)),
    ])
}

/// Minimum-distance lower bound for mixed degrees `ts`:
/// `n − (1/q) Σ_i B̂_{t_i}(E_f)` with `B̂` the count bound at `g(E_f) ≤ qg + …`.
pub fn mindist_mixed(q: u64, g: u64, n: usize, ts: &[u64], deg_gplus: i64, deg_gplus0: i64) -> Result<Num> {
    check_q(q)?;
    let ge = genus_bound_ef(q, g, deg_gplus, deg_gplus0);
    let mut sum = Num::zero();
    for &t in ts {
        check_degree(t)?;
        sum = sum + cover_count_bound(q, t, ge);
    }
    Ok(Num::int(n as i128) - sum / Num::int(q as i128))
}

/// Parameters entering the bound formulas for one code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsInput {
    pub q: u64,
    pub g: u64,
    pub n: usize,
    pub betas: Vec<u64>,
    pub deg_gplus: i64,
    pub deg_gplus0: i64,
}

impl BoundsInput {
    /// Inputs for a code over `F_q(x)`.
    pub fn from_code(code: &TraceCode) -> BoundsInput {
        let spec = code.spec();
        BoundsInput {
            q: spec.q(),
            g: 0,
            n: spec.n(),
            betas: spec.betas().into_iter().map(|b| b as u64).collect(),
            deg_gplus: spec.g().positive_part().degree(),
            deg_gplus0: spec.g().positive_support().degree(),
        }
    }

    pub fn distinct_degrees(&self) -> Vec<u64> {
        self.betas.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn uniform_degree(&self) -> Option<u64> {
        match self.distinct_degrees().as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    pub fn beta_sum(&self) -> usize {
        self.betas.iter().sum::<u64>() as usize
    }

    pub fn genus_bound(&self) -> Ratio<i128> {
        genus_bound_ef(self.q, self.g, self.deg_gplus, self.deg_gplus0)
    }

    /// `Δ` for a uniform profile, `Δ''` otherwise.
    pub fn threshold(&self) -> Result<Num> {
        delta_mixed(self.q, self.g, self.n, &self.distinct_degrees(), self.deg_gplus, self.deg_gplus0)
    }

    /// `Σ_i B_{t_i}` over the distinct degrees, for `F_q(x)`.
    pub fn place_count(&self) -> Result<i128> {
        self.distinct_degrees().iter().map(|&t| count_places(self.q, t)).sum()
    }

    /// `s = B_β − n` for a uniform profile.
    pub fn residual_places(&self) -> Result<Option<i128>> {
        match self.uniform_degree() {
            Some(b) => Ok(Some(count_places(self.q, b)? - self.n as i128)),
            None => Ok(None),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Vacuous,
    Violated,
    /// The enclosing interval straddles the compared value.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Vacuous => "vacuous",
            Verdict::Violated => "violated",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

/// One line of a bounds report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundEntry {
    pub name: String,
    /// Approximate value of the bound.
    pub value: f64,
    /// The bound as a reduced fraction when it is rational.
    pub rational: Option<String>,
    /// The exact quantity the bound is compared against.
    pub exact: Option<i128>,
    pub verdict: Verdict,
    pub hypotheses: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundEntry {
    fn new(name: &str, bound: &Num, exact: Option<i128>, verdict: Verdict) -> BoundEntry {
        BoundEntry {
            name: name.to_string(),
            value: bound.value(),
            rational: bound.exact().map(|r| r.to_string()),
            exact,
            verdict,
            hypotheses: BTreeMap::new(),
            note: None,
        }
    }

    fn hyp(mut self, key: &str, v: Value) -> BoundEntry {
        self.hypotheses.insert(key.to_string(), v);
        self
    }

    fn note(mut self, text: String) -> BoundEntry {
        self.note = Some(text);
        self
    }
}

/// Verdict for `bound ≤ actual`, vacuous when the bound is not positive.
pub fn lower_bound_verdict(bound: &Num, actual: i128) -> Verdict {
    match bound.cmp_int(0) {
        Some(Ordering::Less | Ordering::Equal) => return Verdict::Vacuous,
        None => return Verdict::Inconclusive,
        _ => {}
    }
    match bound.cmp_int(actual) {
        Some(Ordering::Greater) => Verdict::Violated,
        Some(_) => Verdict::Holds,
        None => Verdict::Inconclusive,
    }
}

/// Verdict for `actual ≤ bound`.
pub fn upper_bound_verdict(bound: i128, actual: i128) -> Verdict {
    if actual <= bound {
        Verdict::Holds
    } else {
        Verdict::Violated
    }
}

/// Checks `k = l(G)` when `L(G)` is non-degenerate and the place count
/// exceeds the threshold; otherwise the verdict is vacuous.
pub fn exact_dim_check(code: &TraceCode) -> Result<BoundEntry> {
    let input = BoundsInput::from_code(code);
    let spec = code.spec();
    let nondegenerate = space_nondegenerate(spec.field(), spec.g())?;
    let threshold = input.threshold()?;
    let count = input.place_count()?;
    let exceeds = threshold.cmp_int(count).map(|o| o == Ordering::Less);
    let k = code.k() as i128;
    let l = code.l() as i128;
    let verdict = match (nondegenerate, exceeds) {
        (false, _) | (_, Some(false)) => Verdict::Vacuous,
        (true, None) => Verdict::Inconclusive,
        (true, Some(true)) => {
            if k == l {
                Verdict::Holds
            } else {
                Verdict::Violated
            }
        }
    };
    let name = if input.uniform_degree().is_some() {
        "exact_dimension_uniform"
    } else {
        "exact_dimension_mixed"
    };
    Ok(BoundEntry::new(name, &threshold, Some(k), verdict)
        .hyp("nondegenerate", json!(nondegenerate))
        .hyp("place_count", json!(count))
        .hyp("count_exceeds_threshold", json!(exceeds))
        .hyp("l", json!(l)))
}

/// All bound entries for a built code; `d` is the exact minimum distance
/// when it has been computed.
pub fn bounds_report(code: &TraceCode, d: Option<usize>) -> Result<Vec<BoundEntry>> {
    let input = BoundsInput::from_code(code);
    let spec = code.spec();
    let field = spec.field();
    let (q, n) = (input.q, input.n);
    let k = code.k() as i128;
    let l = code.l() as i128;
    let mut out = Vec::new();

    out.push(BoundEntry::new("rr_dimension", &Num::int(l), Some(k), upper_bound_verdict(l, k)));

    let beta_sum = input.beta_sum();
    let deg_g = spec.g().degree();
    out.push(match dim_upper(field, spec.g(), beta_sum) {
        Ok(b) => BoundEntry::new("dimension_upper", &Num::int(b as i128), Some(k), upper_bound_verdict(b as i128, k)),
        Err(Error::Hypothesis(_)) => BoundEntry::new("dimension_upper", &Num::int(l), Some(k), Verdict::Vacuous),
        Err(e) => return Err(e),
    }
    .hyp("deg_g", json!(deg_g))
    .hyp("beta_sum", json!(beta_sum))
    .hyp("floor_effective", json!(spec.g().floor_div(q).is_effective())));

    for t in input.distinct_degrees() {
        let b = count_places(q, t)?;
        for (name, (lo, hi)) in [
            ("place_count_classic", br_interval_classic(q, input.g, t)?),
            ("place_count_refined", br_interval_refined(q, input.g, t)?),
        ] {
            let verdict = match (lo.cmp_int(b), hi.cmp_int(b)) {
                (Some(Ordering::Less | Ordering::Equal), Some(Ordering::Greater | Ordering::Equal)) => Verdict::Holds,
                (Some(Ordering::Greater), _) | (_, Some(Ordering::Less)) => Verdict::Violated,
                _ => Verdict::Inconclusive,
            };
            let center = (lo.clone() + hi.clone()) / Num::int(2);
            out.push(
                BoundEntry::new(name, &center, Some(b), verdict)
                    .hyp("r", json!(t))
                    .hyp("low", json!(lo.value()))
                    .hyp("high", json!(hi.value())),
            );
        }
    }

    out.push(exact_dim_check(code)?);

    let l_nontrivial = l >= 2;
    let nondegenerate = space_nondegenerate(field, spec.g())?;
    let applicable = l_nontrivial && nondegenerate;
    let d_exact = d.map(|d| d as i128);
    let verdict_for = |bound: &Num| match (applicable, d_exact) {
        (true, Some(d)) => lower_bound_verdict(bound, d),
        _ => Verdict::Vacuous,
    };
    let ge = input.genus_bound();
    let mut push_md = |name: &str, bound: Num, extra: Vec<(&str, Value)>| {
        let mut e = BoundEntry::new(name, &bound, d_exact, verdict_for(&bound))
            .hyp("l_nontrivial", json!(l_nontrivial))
            .hyp("nondegenerate", json!(nondegenerate))
            .hyp("genus_bound_cover", json!(ge.to_string()));
        for (k, v) in extra {
            e = e.hyp(k, v);
        }
        if d_exact.is_none() {
            e = e.note("minimum distance not computed".into());
        }
        out.push(e);
    };
    match input.uniform_degree() {
        Some(beta) => {
            let s = input.residual_places()?.unwrap_or(0);
            push_md(
                "min_distance_uniform",
                mindist_uniform(q, input.g, n, beta, input.deg_gplus, input.deg_gplus0)?,
                vec![("beta", json!(beta))],
            );
            push_md(
                "min_distance_rational",
                mindist_rational(q, n, beta, s, input.deg_gplus, input.deg_gplus0)?,
                vec![("beta", json!(beta)), ("s", json!(s))],
            );
        }
        None => push_md(
            "min_distance_mixed",
            mindist_mixed(q, input.g, n, &input.distinct_degrees(), input.deg_gplus, input.deg_gplus0)?,
            vec![("degrees", json!(input.distinct_degrees()))],
        ),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i128, d: i128) -> Ratio<i128> {
        Ratio::new(n, d)
    }

    #[test]
    fn perfect_powers_stay_exact() {
        assert_eq!(Num::root_pow(9, 1, 2), Num::int(3));
        assert_eq!(Num::root_pow(16, 3, 4), Num::int(8));
        assert_eq!(Num::root_pow(5, 2, 2), Num::int(5));
        let s5 = Num::root_pow(5, 1, 2);
        assert!(!s5.is_exact());
        assert!(s5.interval().contains(5f64.sqrt()));
        assert!(s5.interval().width() < 1e-12);
    }

    #[test]
    fn interval_products_enclose_exact_value() {
        let s = Num::root_pow(7, 1, 2);
        let sq = s.clone() * s;
        assert_eq!(sq.cmp_int(7), None);
        assert_eq!(sq.cmp_int(6), Some(Ordering::Greater));
        assert_eq!(sq.cmp_int(8), Some(Ordering::Less));
    }

    #[test]
    fn zero_times_interval_is_exact_zero() {
        let z = Num::int(0) * Num::root_pow(3, 1, 2);
        assert_eq!(z, Num::zero());
    }

    #[test]
    fn classic_interval_width() {
        for (q, g, rr) in [(5u64, 0u64, 2u64), (4, 2, 3), (3, 1, 5)] {
            let (lo, hi) = br_interval_classic(q, g, rr).unwrap();
            let w = (hi - lo).value();
            let qf = q as f64;
            let expect = 2.0
                * (qf / (qf - 1.0) + 2.0 * g as f64 * qf.sqrt() / (qf.sqrt() - 1.0))
                * (qf.powf(rr as f64 / 2.0) - 1.0)
                / rr as f64;
            assert!((w - expect).abs() < 1e-9 * expect.max(1.0));
        }
        let (lo, hi) = br_interval_classic(5, 0, 2).unwrap();
        assert_eq!(lo.cmp_int(10), Some(Ordering::Equal));
        assert_eq!(hi.cmp_int(10), Some(Ordering::Greater));
        let (lo, hi) = br_interval_classic(5, 0, 1).unwrap();
        assert_eq!(lo.cmp_int(6), Some(Ordering::Less));
        assert_eq!(hi.cmp_int(6), Some(Ordering::Greater));
    }

    #[test]
    fn refined_interval_is_a_point_in_genus_zero() {
        for q in [2u64, 3, 4, 5, 7] {
            for rr in 1..=5 {
                let (lo, hi) = br_interval_refined(q, 0, rr).unwrap();
                assert_eq!(lo, hi);
                assert_eq!(lo, Num::int(count_places(q, rr).unwrap()));
            }
        }
    }

    #[test]
    fn refined_center_differs_from_classic() {
        // q = 4, r = 4: (256 − 16)/4 = 60 against 256/4 = 64.
        let (lo, hi) = br_interval_refined(4, 2, 4).unwrap();
        let center = (lo + hi) / Num::int(2);
        assert_eq!(center, Num::int(60));
        let (lo, hi) = br_interval_classic(4, 2, 4).unwrap();
        assert_eq!((lo + hi) / Num::int(2), Num::int(64));
    }

    #[test]
    fn genus_bound_values() {
        assert_eq!(genus_bound_ef(5, 0, 2, 1), r(2, 1));
        assert_eq!(genus_bound_ef(5, 0, 2, 0), r(0, 1));
        assert_eq!(genus_bound_ef(2, 1, 3, 2), r(7, 2));
    }

    #[test]
    fn dim_upper_branches() {
        let f = Field::prime(5).unwrap();
        let g = Divisor::parse(&f, "2*Pinf").unwrap();
        assert_eq!(dim_upper(&f, &g, 20).unwrap(), 3);
        let g = Divisor::parse(&f, "7*Pinf").unwrap();
        assert_eq!(dim_upper(&f, &g, 20).unwrap(), 7);
        // ⌊G/q⌋ = 1*Pinf - 1*[x]: l = 1, not effective.
        let g = Divisor::parse(&f, "6*Pinf - 1*[x]").unwrap();
        assert!(!g.floor_div(5).is_effective());
        assert_eq!(dim_upper(&f, &g, 20).unwrap(), 6 - 1);
        assert!(matches!(dim_upper(&f, &g, 5), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn worked_example_threshold() {
        // −15 + 2√5
        let d = delta_uniform(5, 0, 10, 2, 2, 1).unwrap();
        let expect = -15.0 + 2.0 * 5f64.sqrt();
        assert!(d.interval().contains(expect));
        assert_eq!(d.cmp_int(10), Some(Ordering::Less));
        assert_eq!(d, delta_mixed(5, 0, 10, &[2], 2, 1).unwrap());
    }

    #[test]
    fn threshold_slope_in_n() {
        let a = delta_uniform(3, 1, 4, 2, 3, 2).unwrap();
        let b = delta_uniform(3, 1, 5, 2, 3, 2).unwrap();
        let diff = (a - b).interval();
        assert!(diff.contains(2.0));
    }

    #[test]
    fn mixed_threshold_example() {
        let d = delta_mixed(5, 0, 12, &[1, 2], 2, 1).unwrap();
        let one = -0.0 + 1.0 + 5.0 + 2.0 * 2.0 * 5f64.sqrt();
        let two = 12.5 + 2.5 + 2.0 * 2.0 * (2.5 + 5f64.sqrt() / 2.0);
        assert!(d.interval().contains(-48.0 + one + two));
    }

    #[test]
    fn worked_example_distance_bounds() {
        let b = mindist_rational(5, 10, 2, 0, 2, 1).unwrap();
        let expect = 8.0 - (1.0 + 5f64.sqrt() / 5.0) * 2.0;
        assert!(b.interval().contains(expect));
        assert_eq!(lower_bound_verdict(&b, 7), Verdict::Holds);
        let u = mindist_uniform(5, 0, 10, 2, 2, 1).unwrap();
        assert_eq!(lower_bound_verdict(&u, 7), Verdict::Holds);
        let m = mindist_mixed(5, 0, 10, &[2], 2, 1).unwrap();
        assert_eq!(m.cmp_num(&u), None);
        assert!((m.value() - u.value()).abs() < 1e-9);
    }

    #[test]
    fn degree_one_terms_match_rational_bound() {
        for (q, n, a, b) in [(5u64, 4usize, 2i64, 1i64), (4, 3, 3, 2), (9, 7, 1, 1), (3, 2, 4, 2)] {
            let s = q as i128 + 1 - n as i128;
            let full = mindist_rational(q, n, 1, s, a, b).unwrap();
            let [t0, t1, t2] = mindist_degree_one_terms(q, n, s, a, b).unwrap();
            let sum = t0 + t1 + t2;
            assert!((full.value() - sum.value()).abs() < 1e-9);
        }
    }

    #[test]
    fn verdicts() {
        assert_eq!(lower_bound_verdict(&Num::int(-2), 3), Verdict::Vacuous);
        assert_eq!(lower_bound_verdict(&Num::int(3), 3), Verdict::Holds);
        assert_eq!(lower_bound_verdict(&Num::ratio(7, 2), 3), Verdict::Violated);
        assert_eq!(upper_bound_verdict(3, 4), Verdict::Violated);
    }

    #[test]
    fn exact_dimension_fails_when_d_omits_degree_two_places() {
        use crate::funcfield::Place;
        use crate::text::parse_poly;
        use crate::tracecode::CodeSpec;
        // x has zero trace at both places, so k = 1 although every
        // hypothesis of the exact-dimension check is met.
        let f = Field::prime(5).unwrap();
        let places = ["x^2+2", "x^2+3"]
            .iter()
            .map(|s| Place::finite(parse_poly(&f, s).unwrap()).unwrap())
            .collect();
        let g = Divisor::parse(&f, "1*Pinf").unwrap();
        let code = TraceCode::build(CodeSpec::new(&f, places, g).unwrap()).unwrap();
        assert_eq!((code.k(), code.l()), (1, 2));
        let e = exact_dim_check(&code).unwrap();
        assert_eq!(e.rational.as_deref(), Some("7"));
        assert_eq!(e.hypotheses["nondegenerate"], json!(true));
        assert_eq!(e.verdict, Verdict::Violated);
    }
}
