//! Exact arithmetic in finite fields presented as towers
//! `F_p ⊆ F_p[t0]/(m0) ⊆ F_p[t0][t1]/(m1) ⊆ ...`.
//!
//! An element of level `k` is a vector of `deg(m_{k-1})` coefficients from
//! level `k - 1`. Elements are packed into a single integer *code*:
//! `code = Σ c_i · |level k-1|^i` where each `c_i` is itself a level-`k-1`
//! code. The packing makes the embedding of a lower level into a higher one
//! the identity on codes, and enumerating codes `0..order` walks the field in
//! lexicographic coefficient order with the constant term varying fastest.
//!
//! Levels of order at most 256 carry precomputed operation tables.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::numtheory::{is_prime, prime_power};
use crate::poly::Poly;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;
/// Largest degree of a single tower level (and of the whole tower over `F_p`).
const MAX_DEGREE: usize = 20;
const TABLE_LIMIT: u32 = 256;

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

struct Level {
    degree: usize,
    order: u32,
    sub_order: u32,
    /// Monic modulus over the previous level, low to high, `degree + 1` codes.
    /// Empty for the prime level.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

impl Level {
    fn same_shape(&self, other: &Level) -> bool {
        self.degree == other.degree && self.order == other.order && self.modulus == other.modulus
    }
}

struct FieldInner {
    p: u32,
    levels: Vec<Arc<Level>>,
    base: Option<Field>,
    /// Default extension moduli found so far, keyed by degree.
    ext_cache: Mutex<Vec<(usize, Vec<u32>)>>,
}

/// Descriptor of a finite field tower. Cheap to clone and shareable across threads.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

fn digitwise(p: u32, mut a: u32, mut b: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
    let mut out = 0u64;
    let mut place = 1u64;
    while a > 0 || b > 0 {
        out += f(a % p, b % p) as u64 * place;
        place *= p as u64;
        a /= p;
        b /= p;
    }
    out as u32
}

impl FieldInner {
    fn top(&self) -> usize {
        self.levels.len() - 1
    }

    fn add_at(&self, k: usize, a: u32, b: u32) -> u32 {
        let lv = &self.levels[k];
        if let Some(t) = &lv.tables {
            return t.add[(a * lv.order + b) as usize];
        }
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        digitwise(p, a, b, |x, y| (x + y) % p)
    }

    fn neg_at(&self, k: usize, a: u32) -> u32 {
        let lv = &self.levels[k];
        if let Some(t) = &lv.tables {
            return t.neg[a as usize];
        }
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        digitwise(p, a, 0, |x, _| (p - x) % p)
    }

    fn sub_at(&self, k: usize, a: u32, b: u32) -> u32 {
        let lv = &self.levels[k];
        if let Some(t) = &lv.tables {
            return t.add[(a * lv.order + t.neg[b as usize]) as usize];
        }
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        digitwise(p, a, b, |x, y| (x + p - y) % p)
    }

    fn mul_at(&self, k: usize, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let lv = &self.levels[k];
        if let Some(t) = &lv.tables {
            return t.mul[(a * lv.order + b) as usize];
        }
        if k == 0 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let d = lv.degree;
        if d == 1 {
            return self.mul_at(k - 1, a, b);
        }
        let so = lv.sub_order;
        let mut x = [0u32; MAX_DEGREE];
        let mut y = [0u32; MAX_DEGREE];
        let (mut ra, mut rb) = (a, b);
        for i in 0..d {
            x[i] = ra % so;
            y[i] = rb % so;
            ra /= so;
            rb /= so;
        }
        let mut prod = [0u32; 2 * MAX_DEGREE];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                if y[j] != 0 {
                    let m = self.mul_at(k - 1, x[i], y[j]);
                    prod[i + j] = self.add_at(k - 1, prod[i + j], m);
                }
            }
        }
        for t in (d..2 * d - 1).rev() {
            let c = prod[t];
            if c == 0 {
                continue;
            }
            prod[t] = 0;
            for i in 0..d {
                let m = lv.modulus[i];
                if m != 0 {
                    let s = self.mul_at(k - 1, c, m);
                    prod[t - d + i] = self.sub_at(k - 1, prod[t - d + i], s);
                }
            }
        }
        let mut out = 0u32;
        for i in (0..d).rev() {
            out = out * so + prod[i];
        }
        out
    }

    fn pow_at(&self, k: usize, a: u32, e: u128) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let group = (self.levels[k].order - 1) as u128;
        let mut e = e % group;
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_at(k, acc, base);
            }
            base = self.mul_at(k, base, base);
            e >>= 1;
        }
        acc
    }

    fn inv_at(&self, k: usize, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let lv = &self.levels[k];
        if let Some(t) = &lv.tables {
            return Some(t.inv[a as usize]);
        }
        Some(self.pow_at(k, a, (lv.order - 2) as u128))
    }

    fn build_tables(&self, k: usize) -> Tables {
        let q = self.levels[k].order;
        let n = (q * q) as usize;
        let mut add = vec![0u32; n];
        let mut mul = vec![0u32; n];
        for a in 0..q {
            for b in 0..q {
                let i = (a * q + b) as usize;
                add[i] = self.add_at(k, a, b);
                mul[i] = self.mul_at(k, a, b);
            }
        }
        let neg = (0..q).map(|a| self.neg_at(k, a)).collect();
        let mut inv = vec![0u32; q as usize];
        for a in 1..q {
            inv[a as usize] = self.pow_at(k, a, (q - 2) as u128);
        }
        Tables { add, mul, neg, inv }
    }
}

impl Field {
    fn from_inner(mut inner: FieldInner) -> Field {
        let k = inner.top();
        if inner.levels[k].order <= TABLE_LIMIT && inner.levels[k].tables.is_none() {
            let tables = inner.build_tables(k);
            Arc::get_mut(&mut inner.levels[k])
                .expect("fresh level is uniquely owned")
                .tables = Some(tables);
        }
        Field(Arc::new(inner))
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > MAX_ORDER {
            return Err(Error::FieldTooLarge(p as u128));
        }
        let level = Level {
            degree: 1,
            order: p as u32,
            sub_order: 1,
            modulus: Vec::new(),
            tables: None,
        };
        Ok(Field::from_inner(FieldInner {
            p: p as u32,
            levels: vec![Arc::new(level)],
            base: None,
            ext_cache: Mutex::new(Vec::new()),
        }))
    }

    /// `F_{p^s}` as a single extension of `F_p` by the lexicographically
    /// smallest monic irreducible of degree `s`.
    pub fn galois(p: u64, s: usize) -> Result<Field> {
        let fp = Field::prime(p)?;
        if s == 1 {
            return Ok(fp);
        }
        fp.default_extension(s)
    }

    /// The field with `q` elements, built with [`Field::galois`].
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, s) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::galois(p, s as usize)
    }

    /// Extends the tower by a monic irreducible `modulus` over `self`.
    pub fn extend(&self, modulus: &Poly) -> Result<Field> {
        if modulus.field() != self {
            return Err(Error::FieldMismatch);
        }
        let d = modulus.degree().ok_or(Error::DegreeTooSmall)?;
        if d == 0 {
            return Err(Error::DegreeTooSmall);
        }
        if !modulus.is_monic() {
            return Err(Error::NotMonic);
        }
        if !modulus.is_irreducible()? {
            return Err(Error::NotIrreducible(modulus.to_string()));
        }
        self.extend_unchecked(modulus.codes().to_vec())
    }

    /// Extends by a modulus already known to be monic irreducible.
    pub(crate) fn extend_unchecked(&self, modulus: Vec<u32>) -> Result<Field> {
        let d = modulus.len() - 1;
        let order = (self.order() as u128).pow(d as u32);
        if order > MAX_ORDER as u128 || self.degree() * d > MAX_DEGREE {
            return Err(Error::FieldTooLarge(order));
        }
        let mut levels = self.0.levels.clone();
        levels.push(Arc::new(Level {
            degree: d,
            order: order as u32,
            sub_order: self.order() as u32,
            modulus,
            tables: None,
        }));
        Ok(Field::from_inner(FieldInner {
            p: self.0.p,
            levels,
            base: Some(self.clone()),
            ext_cache: Mutex::new(Vec::new()),
        }))
    }

    /// Extension of degree `d` by the lexicographically smallest monic
    /// irreducible of that degree over `self`.
    pub fn default_extension(&self, degree: usize) -> Result<Field> {
        if degree == 0 {
            return Err(Error::DegreeTooSmall);
        }
        let cached = {
            let cache = self.0.ext_cache.lock().expect("cache lock");
            cache.iter().find(|(d, _)| *d == degree).map(|(_, m)| m.clone())
        };
        let modulus = match cached {
            Some(m) => m,
            None => {
                let target = (self.order() as u128).pow(degree as u32);
                if target > MAX_ORDER as u128 {
                    return Err(Error::FieldTooLarge(target));
                }
                let m = Poly::first_irreducible(self, degree)
                    .codes()
                    .to_vec();
                self.0
                    .ext_cache
                    .lock()
                    .expect("cache lock")
                    .push((degree, m.clone()));
                m
            }
        };
        self.extend_unchecked(modulus)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn order(&self) -> u64 {
        self.top_level().order as u64
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.0.levels.iter().map(|l| l.degree).product()
    }

    /// Degree of the top modulus over the previous level (1 for a prime field).
    pub fn top_degree(&self) -> usize {
        self.top_level().degree
    }

    /// Number of extension levels above the prime field.
    pub fn height(&self) -> usize {
        self.0.levels.len() - 1
    }

    /// The field one level down, if any.
    pub fn base(&self) -> Option<&Field> {
        self.0.base.as_ref()
    }

    /// The prime field at the bottom of the tower.
    pub fn prime_field(&self) -> Field {
        let mut f = self.clone();
        while let Some(b) = f.base().cloned() {
            f = b;
        }
        f
    }

    /// The top modulus as a polynomial over [`Field::base`].
    pub fn modulus(&self) -> Option<Poly> {
        let base = self.base()?;
        Some(Poly::from_codes(base, self.top_level().modulus.clone()))
    }

    /// The tower level with exactly `order` elements (the lowest one if
    /// degree-1 levels repeat an order).
    pub fn level_with_order(&self, order: u64) -> Option<Field> {
        let mut chain = vec![self.clone()];
        while let Some(b) = chain.last().and_then(|f| f.base().cloned()) {
            chain.push(b);
        }
        chain.into_iter().rev().find(|f| f.order() == order)
    }

    /// Whether `self` is one of the levels of `other`'s tower.
    pub fn is_level_of(&self, other: &Field) -> bool {
        let (a, b) = (&self.0.levels, &other.0.levels);
        self.0.p == other.0.p
            && a.len() <= b.len()
            && a.iter()
                .zip(b.iter())
                .all(|(x, y)| Arc::ptr_eq(x, y) || x.same_shape(y))
    }

    fn top_level(&self) -> &Level {
        &self.0.levels[self.0.top()]
    }

    fn k(&self) -> usize {
        self.0.top()
    }

    // ---- raw code arithmetic ----

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.0.add_at(self.k(), a, b)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.0.sub_at(self.k(), a, b)
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg_at(self.k(), a)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.0.mul_at(self.k(), a, b)
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        self.0.inv_at(self.k(), a)
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: u32, e: u128) -> u32 {
        self.0.pow_at(self.k(), a, e)
    }

    /// Code of the image of an integer under `Z → F_p ⊆ F`.
    pub fn int_code(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// Code of the top-level generator `t_{h-1}`, or of 1 for a prime field.
    pub fn generator_code(&self) -> u32 {
        match self.height() {
            0 => 1,
            h => self.level_generator_code(h - 1).expect("level exists"),
        }
    }

    /// Code of the generator of level `i + 1`, printed as `t{i}`.
    pub fn level_generator_code(&self, i: usize) -> Option<u32> {
        let lv = self.0.levels.get(i + 1)?;
        Some(if lv.degree == 1 {
            // root of x + m0
            self.0.neg_at(i, lv.modulus[0])
        } else {
            lv.sub_order
        })
    }

    /// Flat coordinates over `F_p`, low to high.
    pub fn digits(&self, code: u32) -> Vec<u32> {
        let p = self.0.p;
        let mut c = code;
        (0..self.degree())
            .map(|_| {
                let d = c % p;
                c /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        digits
            .iter()
            .rev()
            .fold(0u32, |acc, &d| acc * self.0.p + d % self.0.p)
    }

    /// Coefficients of the element over [`Field::base`].
    pub fn split_code(&self, code: u32) -> Vec<u32> {
        let lv = self.top_level();
        if self.height() == 0 {
            return vec![code];
        }
        let mut c = code;
        (0..lv.degree)
            .map(|_| {
                let d = c % lv.sub_order;
                c /= lv.sub_order;
                d
            })
            .collect()
    }

    pub fn zero(&self) -> FieldElem {
        self.elem(0)
    }

    pub fn one(&self) -> FieldElem {
        self.elem(1)
    }

    /// Element with the given code. Panics if the code is out of range.
    pub fn elem(&self, code: u32) -> FieldElem {
        assert!((code as u64) < self.order(), "code {code} out of range");
        FieldElem {
            field: self.clone(),
            code,
        }
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        self.elem(self.int_code(n))
    }

    pub fn generator(&self) -> FieldElem {
        self.elem(self.generator_code())
    }

    /// All elements, once each, in lexicographic coefficient order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.order() as u32).map(move |c| self.elem(c))
    }

    /// Renders a code as a polynomial expression in `t0, t1, ...`.
    pub fn format_code(&self, code: u32) -> String {
        self.format_at(self.k(), code)
    }

    fn format_at(&self, k: usize, code: u32) -> String {
        if k == 0 {
            return code.to_string();
        }
        let lv = &self.0.levels[k];
        if lv.degree == 1 {
            return self.format_at(k - 1, code);
        }
        let mut c = code;
        let coeffs: Vec<u32> = (0..lv.degree)
            .map(|_| {
                let d = c % lv.sub_order;
                c /= lv.sub_order;
                d
            })
            .collect();
        let gen = format!("t{}", k - 1);
        let mut terms = Vec::new();
        for (i, &ci) in coeffs.iter().enumerate().rev() {
            if ci == 0 {
                continue;
            }
            let inner = self.format_at(k - 1, ci);
            let mono = match i {
                0 => String::new(),
                1 => gen.clone(),
                _ => format!("{gen}^{i}"),
            };
            let term = if mono.is_empty() {
                inner
            } else if ci == 1 {
                mono
            } else if inner.contains('+') {
                format!("({inner})*{mono}")
            } else {
                format!("{inner}*{mono}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    /// Parses a field spec `"p^s"`, `"q"`, or `"p^s;modulus=<poly in t>"`.
    pub fn parse(spec: &str) -> Result<Field> {
        let spec = spec.trim();
        let (head, modulus) = match spec.split_once(';') {
            Some((h, rest)) => {
                let rest = rest.trim();
                let m = rest
                    .strip_prefix("modulus=")
                    .ok_or_else(|| Error::Parse(format!("expected modulus=..., got {rest:?}")))?;
                (h.trim(), Some(m.trim()))
            }
            None => (spec, None),
        };
        let parse_int = |s: &str| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad integer {s:?}")))
        };
        let (p, s) = match head.split_once('^') {
            Some((p, s)) => {
                let p = parse_int(p)?;
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                (p, parse_int(s)? as usize)
            }
            None => {
                let q = parse_int(head)?;
                let (p, s) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
                (p, s as usize)
            }
        };
        if s == 0 {
            return Err(Error::Parse("extension degree must be positive".into()));
        }
        match modulus {
            None => Field::galois(p, s),
            Some(text) => {
                let fp = Field::prime(p)?;
                let m = crate::text::parse_poly_in(&fp, text, &["t", "t0"])?;
                if m.degree() != Some(s) {
                    return Err(Error::InvalidModulus(format!(
                        "{text} does not have degree {s}"
                    )));
                }
                if s == 1 {
                    return Ok(fp);
                }
                fp.extend(&m)
            }
        }
    }

    /// Text spec that [`Field::parse`] maps back to an equal field, when the
    /// tower has at most one extension level.
    pub fn spec_string(&self) -> String {
        match self.modulus() {
            None => self.0.p.to_string(),
            Some(m) if self.height() == 1 => format!(
                "{}^{};modulus={}",
                self.0.p,
                self.top_degree(),
                m.to_string_in("t")
            ),
            Some(_) => format!("{}", self.order()),
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.levels.len() == other.0.levels.len() && self.is_level_of(other))
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}", self.order())?;
        let mut chain = Vec::new();
        let mut cur = Some(self.clone());
        while let Some(c) = cur {
            if let Some(m) = c.modulus() {
                chain.push(format!("t{}: {}", c.height() - 1, m.to_string_in(&format!("t{}", c.height() - 1))));
            }
            cur = c.base().cloned();
        }
        chain.reverse();
        if !chain.is_empty() {
            write!(f, "; {}", chain.join(", "))?;
        }
        write!(f, ")")
    }
}

/// An element of a described finite field.
#[derive(Clone)]
pub struct FieldElem {
    field: Field,
    code: u32,
}

/// Field operation selector for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn arith(a: &FieldElem, b: &FieldElem, op: ArithOp) -> Result<FieldElem> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let code = match op {
        ArithOp::Add => f.add(a.code, b.code),
        ArithOp::Sub => f.sub(a.code, b.code),
        ArithOp::Mul => f.mul(a.code, b.code),
        ArithOp::Div => f.div(a.code, b.code).ok_or(Error::DivisionByZero)?,
    };
    Ok(f.elem(code))
}

impl FieldElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    /// Coefficient vector over the next-lower level (length = top modulus degree).
    pub fn coefficients(&self) -> Vec<FieldElem> {
        match self.field.base() {
            Some(b) => self
                .field
                .split_code(self.code)
                .into_iter()
                .map(|c| b.elem(c))
                .collect(),
            None => vec![self.clone()],
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        let c = self.field.inv(self.code).ok_or(Error::DivisionByZero)?;
        Ok(self.field.elem(c))
    }

    pub fn pow(&self, e: u128) -> FieldElem {
        self.field.elem(self.field.pow(self.code, e))
    }

    /// `a^(base_order^i)`.
    pub fn frobenius(&self, base_order: u64, i: u32) -> Result<FieldElem> {
        let (p, t) = prime_power(base_order).ok_or(Error::InvalidBaseOrder {
            base: base_order,
            order: self.field.order(),
        })?;
        if p != self.field.characteristic() as u64 || !self.field.degree().is_multiple_of(t as usize) {
            return Err(Error::InvalidBaseOrder {
                base: base_order,
                order: self.field.order(),
            });
        }
        let mut x = self.code;
        // the Frobenius has order degree/t, so i can be reduced
        let period = (self.field.degree() / t as usize) as u32;
        for _ in 0..(i % period) {
            x = self.field.pow(x, base_order as u128);
        }
        Ok(self.field.elem(x))
    }

    /// `Σ_{j<β} a^(q^j)`, the trace from `F_{q^β}` down to `F_q`. The result
    /// is returned as an element of the same field.
    pub fn trace_to_subfield(&self, beta: u32, q: u64) -> Result<FieldElem> {
        let order = self.field.order();
        let ok = prime_power(q).is_some_and(|(p, _)| p == self.field.characteristic() as u64)
            && beta >= 1
            && (q as u128).checked_pow(beta) == Some(order as u128);
        if !ok {
            return Err(Error::InvalidBaseOrder { base: q, order });
        }
        let f = &self.field;
        let mut x = self.code;
        let mut sum = x;
        for _ in 1..beta {
            x = f.pow(x, q as u128);
            sum = f.add(sum, x);
        }
        Ok(f.elem(sum))
    }

    /// Reinterprets the element in a lower tower level that contains it.
    pub fn project_to(&self, sub: &Field) -> Result<FieldElem> {
        if !sub.is_level_of(&self.field) {
            return Err(Error::FieldMismatch);
        }
        if self.code as u64 >= sub.order() {
            return Err(Error::InvalidArgument(format!(
                "{} does not lie in the subfield of order {}",
                self,
                sub.order()
            )));
        }
        Ok(sub.elem(self.code))
    }

    /// Embeds the element into a field whose tower contains this element's field.
    pub fn embed_in(&self, sup: &Field) -> Result<FieldElem> {
        if !self.field.is_level_of(sup) {
            return Err(Error::FieldMismatch);
        }
        Ok(sup.elem(self.code))
    }
}

/// Solves `y^q - y = a` in the field of `a`, which must have order `q^m`.
///
/// The map `y ↦ y^q - y` is `F_p`-linear, so the equation is solved as a
/// linear system over the flat `F_p` coordinates. Returns `None` when no
/// solution exists; otherwise every solution is `y + b` with `b ∈ F_q`.
pub fn artin_schreier_solve(a: &FieldElem, q: u64) -> Result<Option<FieldElem>> {
    let f = a.field();
    let order = f.order();
    let valid = prime_power(q).is_some_and(|(p, s)| {
        p == f.characteristic() as u64 && f.degree().is_multiple_of(s as usize)
    });
    if !valid {
        return Err(Error::InvalidBaseOrder { base: q, order });
    }
    let e = f.degree();
    let fp = f.prime_field();
    let p = f.characteristic();
    let mut m = Matrix::zeros(&fp, e, e);
    let mut unit = 1u32;
    for j in 0..e {
        let img = f.sub(f.pow(unit, q as u128), unit);
        for (i, d) in f.digits(img).into_iter().enumerate() {
            m.set(i, j, d);
        }
        unit *= p;
    }
    Ok(m
        .solve(&f.digits(a.code))
        .map(|y| f.elem(f.from_digits(&y))))
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.field == other.field
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_code(self.code))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in GF({})", self, self.field.order())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                arith(self, rhs, $op).expect(concat!("FieldElem::", stringify!($method)))
            }
        }
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, ArithOp::Add);
binop!(Sub, sub, ArithOp::Sub);
binop!(Mul, mul, ArithOp::Mul);
binop!(Div, div, ArithOp::Div);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.field.elem(self.field.neg(self.code))
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}
