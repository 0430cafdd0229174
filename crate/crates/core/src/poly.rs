//! Dense univariate polynomials over a described finite field, irreducibility
//! testing and enumeration, irreducible-count formulas, distinct-degree
//! splitting and the factorization shape of `x^q - x - α`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{artin_schreier_solve, Field, FieldElem};
use crate::numtheory::{checked_pow, divisors, moebius, prime_factors, prime_power};

/// Polynomial with coefficients stored low to high as element codes.
/// The coefficient vector never has a trailing zero, so the zero polynomial is empty.
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn from_codes(field: &Field, mut coeffs: Vec<u32>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// From integer coefficients, low to high, reduced into the prime field.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_codes(field, coeffs.iter().map(|&c| field.int_code(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::from_codes(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::from_codes(field, vec![1])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::from_codes(field, vec![0, 1])
    }

    pub fn constant(c: &FieldElem) -> Poly {
        Poly::from_codes(c.field(), vec![c.code()])
    }

    /// `c · x^k`.
    pub fn monomial(field: &Field, c: u32, k: usize) -> Poly {
        let mut v = vec![0; k + 1];
        v[k] = c;
        Poly::from_codes(field, v)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn codes(&self) -> &[u32] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading_code(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn coeff_code(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.field.elem(self.coeff_code(i))
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = &self.field;
        Poly::from_codes(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn make_monic(&self) -> Poly {
        match self.field.inv(self.leading_code()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    fn add_impl(&self, other: &Poly, negate: bool) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| {
                let (a, b) = (self.coeff_code(i), other.coeff_code(i));
                if negate {
                    f.sub(a, b)
                } else {
                    f.add(a, b)
                }
            })
            .collect();
        Poly::from_codes(f, v)
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut v = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b != 0 {
                    v[i + j] = f.add(v[i + j], f.mul(a, b));
                }
            }
        }
        Poly::from_codes(f, v)
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.add_impl(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.add_impl(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        Ok(self.mul_impl(other))
    }

    /// Quotient and remainder.
    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check(divisor)?;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        let Some(da) = self.degree() else {
            return Ok((Poly::zero(f), Poly::zero(f)));
        };
        if da < db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv_lead = f.inv(divisor.leading_code()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; da - db + 1];
        for i in (0..=da - db).rev() {
            let c = f.mul(rem[i + db], inv_lead);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                if b != 0 {
                    rem[i + j] = f.sub(rem[i + j], f.mul(c, b));
                }
            }
        }
        rem.truncate(db);
        Ok((Poly::from_codes(f, quot), Poly::from_codes(f, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.make_monic())
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        acc
    }

    /// `self^e mod m` by square and multiply.
    pub fn powmod(&self, mut e: u128, m: &Poly) -> Result<Poly> {
        self.check(m)?;
        let mut acc = Poly::one(&self.field).rem(m)?;
        let mut base = self.rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base).rem(m)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// Evaluates at the element with code `x`.
    pub fn eval_code(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn eval(&self, x: &FieldElem) -> Result<FieldElem> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        Ok(self.field.elem(self.eval_code(x.code())))
    }

    /// `f(x + c)`.
    pub fn shift(&self, c: u32) -> Poly {
        let lin = Poly::from_codes(&self.field, vec![c, 1]);
        self.coeffs.iter().rev().fold(Poly::zero(&self.field), |acc, &a| {
            &acc.mul_impl(&lin) + &Poly::from_codes(&self.field, vec![a])
        })
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.int_code(i as i64)))
            .collect();
        Poly::from_codes(f, v)
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        if self.degree().unwrap_or(0) == 0 {
            return Ok(true);
        }
        Ok(self.gcd(&self.derivative())?.is_one())
    }

    /// Splits a monic squarefree polynomial whose irreducible factors all have
    /// degree `r` (Cantor–Zassenhaus with a fixed-seed generator).
    pub fn equal_degree_split(&self, r: usize) -> Result<Vec<Poly>> {
        let d = self.degree().ok_or(Error::DegreeTooSmall)?;
        if r == 0 || d % r != 0 {
            return Err(Error::InvalidArgument(format!("degree {d} is not a multiple of {r}")));
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
        let mut pending = vec![self.clone()];
        let mut done = Vec::new();
        while let Some(f) = pending.pop() {
            let n = f.degree().unwrap_or(0);
            if n <= r {
                done.push(f);
                continue;
            }
            let (left, right) = loop {
                let g = f.split_attempt(r, &mut rng)?;
                let dg = g.degree().unwrap_or(0);
                if dg > 0 && dg < n {
                    break (g.clone(), f.divmod(&g)?.0);
                }
            };
            pending.push(left);
            pending.push(right.make_monic());
        }
        done.sort();
        Ok(done)
    }

    fn split_attempt(&self, r: usize, rng: &mut ChaCha8Rng) -> Result<Poly> {
        let field = &self.field;
        let n = self.degree().unwrap_or(0);
        let q = field.order();
        let coeffs: Vec<u32> = (0..n).map(|_| rng.random_range(0..q as u32)).collect();
        let a = Poly::from_codes(field, coeffs);
        if a.degree().unwrap_or(0) == 0 {
            return Ok(Poly::one(field));
        }
        let b = if field.characteristic() == 2 {
            // a + a^2 + ... + a^{2^{kr - 1}} with q = 2^k
            let steps = q.trailing_zeros() as usize * r;
            let mut t = a.rem(self)?;
            let mut acc = t.clone();
            for _ in 1..steps {
                t = t.powmod(2, self)?;
                acc = &acc + &t;
            }
            acc
        } else {
            let e = ((q as u128).pow(r as u32) - 1) / 2;
            &a.powmod(e, self)? - &Poly::one(field)
        };
        if b.is_zero() {
            return Ok(self.clone());
        }
        self.gcd(&b)
    }

    /// Irreducibility over the coefficient field: `x^{q^d} ≡ x (mod f)` and
    /// `gcd(x^{q^{d/l}} - x, f) = 1` for every prime `l | d`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = self.degree().ok_or(Error::DegreeTooSmall)?;
        if d == 0 {
            return Err(Error::DegreeTooSmall);
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        if d == 1 {
            return Ok(true);
        }
        if self.coeffs[0] == 0 {
            return Ok(false);
        }
        let q = self.field.order() as u128;
        let x = Poly::x(&self.field);
        // frob[i] = x^{q^i} mod f
        let mut frob = vec![x.rem(self)?];
        for _ in 0..d {
            let next = frob.last().expect("nonempty").powmod(q, self)?;
            frob.push(next);
        }
        if frob[d] != frob[0] {
            return Ok(false);
        }
        for l in prime_factors(d as u64) {
            let h = &frob[d / l as usize] - &frob[0];
            if !self.gcd(&h)?.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coefficient of `x^{d-1}` of a monic polynomial of degree `d ≥ 1`.
    ///
    /// For an irreducible `f` this is the *negative* of the trace of any root.
    pub fn trace(&self) -> Result<FieldElem> {
        let d = self.degree().ok_or(Error::DegreeTooSmall)?;
        if d == 0 {
            return Err(Error::DegreeTooSmall);
        }
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        Ok(self.coeff(d - 1))
    }

    /// All monic polynomials of degree `d`, lexicographic with the constant
    /// term varying fastest.
    pub fn monic_of_degree(field: &Field, d: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = field.order();
        let total = (q as u128).pow(d as u32);
        (0..total).map(move |mut idx| {
            let mut v = Vec::with_capacity(d + 1);
            for _ in 0..d {
                v.push((idx % q as u128) as u32);
                idx /= q as u128;
            }
            v.push(1);
            Poly::from_codes(field, v)
        })
    }

    /// Monic irreducibles of degree `d` in enumeration order.
    pub fn irreducibles(field: &Field, d: usize) -> Vec<Poly> {
        Poly::monic_of_degree(field, d)
            .filter(|f| f.is_irreducible().expect("monic of positive degree"))
            .collect()
    }

    /// The lexicographically smallest monic irreducible of degree `d ≥ 1`.
    pub fn first_irreducible(field: &Field, d: usize) -> Poly {
        Poly::monic_of_degree(field, d)
            .find(|f| f.is_irreducible().expect("monic of positive degree"))
            .expect("irreducibles of every degree exist")
    }

    /// Splits a monic squarefree polynomial into the products of its
    /// irreducible factors of each degree.
    pub fn distinct_degree_split(&self) -> Result<BTreeMap<usize, Poly>> {
        let d = self.degree().ok_or(Error::DegreeTooSmall)?;
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        if !self.is_squarefree()? {
            return Err(Error::NotSquarefree);
        }
        let q = self.field.order() as u128;
        let x = Poly::x(&self.field);
        let mut out = BTreeMap::new();
        let mut rest = self.clone();
        let mut h = x.rem(self)?;
        let mut i = 1;
        while rest.degree().unwrap_or(0) >= 2 * i {
            h = h.powmod(q, &rest)?;
            let g = rest.gcd(&(&h - &x))?;
            if !g.is_one() {
                rest = rest.divmod(&g)?.0;
                h = h.rem(&rest)?;
                out.insert(i, g);
            }
            i += 1;
        }
        if rest.degree().unwrap_or(0) > 0 {
            out.insert(rest.degree().expect("nonzero"), rest);
        }
        debug_assert!(d == out.values().map(|g| g.degree().unwrap_or(0)).sum::<usize>());
        Ok(out)
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let f = &self.field;
        let mut terms = Vec::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let cs = f.format_code(c);
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            terms.push(if mono.is_empty() {
                cs
            } else if c == 1 {
                mono
            } else if cs.contains('+') {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl Ord for Poly {
    /// By degree, then lexicographically from the leading coefficient down.
    fn cmp(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Poly) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over GF({})", self, self.field.order())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("Poly::add")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("Poly::sub")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("Poly::mul")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::from_codes(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

// ---------------------------------------------------------------------------
// counting formulas

/// Trace class of a monic irreducible: zero or nonzero `x^{d-1}` coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceClass {
    Zero,
    NonZero,
}

impl TraceClass {
    pub fn of(gamma: &FieldElem) -> TraceClass {
        if gamma.is_zero() {
            TraceClass::Zero
        } else {
            TraceClass::NonZero
        }
    }
}

/// `N(d, q) = (1/d) Σ_{a | d} μ(a) q^{d/a}`.
pub fn count_irreducibles(d: u64, q: u64) -> Result<i128> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let mut sum = 0i128;
    for a in divisors(d) {
        sum += moebius(a)? as i128 * checked_pow(q, d / a)?;
    }
    debug_assert_eq!(sum % d as i128, 0);
    Ok(sum / d as i128)
}

/// Number of monic irreducibles of degree `d` over `F_q` whose `x^{d-1}`
/// coefficient is a fixed `γ` of the given class.
///
/// Nonzero `γ`: `(1/(qd)) Σ_{a | d, p ∤ a} μ(a) q^{d/a}`.
/// Zero `γ`, writing `d = p^k b` with `p ∤ b`:
/// `(1/(dq)) Σ_{a | b} μ(a) q^{d/a} - (ε/d) Σ_{a | b} μ(a) q^{d/(ap)}`, `ε = [k > 0]`.
pub fn count_irreducibles_trace(d: u64, q: u64, class: TraceClass) -> Result<i128> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let (p, _) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let (qi, di) = (q as i128, d as i128);
    match class {
        TraceClass::NonZero => {
            let mut sum = 0i128;
            for a in divisors(d).into_iter().filter(|a| a % p != 0) {
                sum += moebius(a)? as i128 * checked_pow(q, d / a)?;
            }
            debug_assert_eq!(sum % (qi * di), 0);
            Ok(sum / (qi * di))
        }
        TraceClass::Zero => {
            let mut b = d;
            let mut k = 0;
            while b.is_multiple_of(p) {
                b /= p;
                k += 1;
            }
            let mut first = 0i128;
            let mut second = 0i128;
            for a in divisors(b) {
                let mu = moebius(a)? as i128;
                first += mu * checked_pow(q, d / a)?;
                if k > 0 {
                    second += mu * checked_pow(q, d / (a * p))?;
                }
            }
            // N_0 = first/(dq) - second/d, combined over the denominator dq
            let num = first - qi * second;
            debug_assert_eq!(num % (di * qi), 0);
            Ok(num / (di * qi))
        }
    }
}

/// Counts of monic irreducibles of one degree, in total and per `x^{d-1}` coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleCensus {
    pub d: usize,
    pub q: u64,
    pub total: i128,
    /// Keyed by the code of the trace value `γ ∈ F_q`.
    pub by_trace: BTreeMap<u32, i128>,
}

impl IrreducibleCensus {
    /// Counts by enumerating every monic polynomial of degree `d`.
    pub fn enumerate(field: &Field, d: usize) -> IrreducibleCensus {
        let mut by_trace: BTreeMap<u32, i128> =
            (0..field.order() as u32).map(|c| (c, 0)).collect();
        let mut total = 0;
        for f in Poly::irreducibles(field, d) {
            total += 1;
            *by_trace.entry(f.coeff_code(d - 1)).or_default() += 1;
        }
        IrreducibleCensus {
            d,
            q: field.order(),
            total,
            by_trace,
        }
    }

    /// Counts from the closed-form formulas.
    pub fn from_formulas(field: &Field, d: usize) -> Result<IrreducibleCensus> {
        let q = field.order();
        let zero = count_irreducibles_trace(d as u64, q, TraceClass::Zero)?;
        let nonzero = count_irreducibles_trace(d as u64, q, TraceClass::NonZero)?;
        let by_trace = (0..q as u32)
            .map(|c| (c, if c == 0 { zero } else { nonzero }))
            .collect();
        Ok(IrreducibleCensus {
            d,
            q,
            total: count_irreducibles(d as u64, q)?,
            by_trace,
        })
    }
}

// ---------------------------------------------------------------------------
// x^q - x - α

/// How `x^q - x - α` factors over the field of `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArtinSchreierShape {
    /// The `q` roots `y + b`, `b ∈ F_q`.
    SplitsLinear { roots: Vec<FieldElem> },
    /// `q/p` monic irreducible factors of degree `p`.
    FactorsDegreeP { factors: Vec<Poly> },
}

impl ArtinSchreierShape {
    /// The monic irreducible factors (linear ones for a split polynomial).
    pub fn factors(&self) -> Vec<Poly> {
        match self {
            ArtinSchreierShape::SplitsLinear { roots } => roots
                .iter()
                .map(|r| Poly::from_codes(r.field(), vec![r.field().neg(r.code()), 1]))
                .collect(),
            ArtinSchreierShape::FactorsDegreeP { factors } => factors.clone(),
        }
    }

    pub fn product(&self, field: &Field) -> Poly {
        self.factors()
            .iter()
            .fold(Poly::one(field), |acc, f| &acc * f)
    }
}

/// `x^q - x - α` over `F`.
pub fn artin_schreier_poly(alpha: &FieldElem, q: u64) -> Poly {
    let f = alpha.field();
    let mut v = vec![0u32; q as usize + 1];
    v[0] = f.neg(alpha.code());
    v[1] = f.neg(1);
    v[q as usize] = f.add(v[q as usize], 1);
    Poly::from_codes(f, v)
}

/// Elements `b` of the field with `b^q = b`.
pub fn subfield_elements(field: &Field, q: u64) -> Vec<u32> {
    if let Some(level) = field.level_with_order(q) {
        return (0..level.order() as u32).collect();
    }
    (0..field.order() as u32)
        .filter(|&b| field.pow(b, q as u128) == b)
        .collect()
}

/// Factorization shape of `x^q - x - α` over `F_{q^m}`, the field of `α`.
///
/// With `Tr_m(α) = 0` the polynomial splits and all `q` roots are returned.
/// Otherwise a root `z` is found in a degree-`p` extension, and the roots are
/// grouped into orbits `{z + b + i·Tr_m(α)}`; each orbit has minimal polynomial
/// `x^p - T^{p-1} x - T^p S(z/T)` with `T = Tr_m(α)` and `S(y) = y^p - y`.
pub fn artin_schreier_shape(alpha: &FieldElem, q: u64, m: u32) -> Result<ArtinSchreierShape> {
    let field = alpha.field();
    let p = field.characteristic() as u64;
    let consistent = prime_power(q).is_some_and(|(pp, _)| pp == p)
        && m >= 1
        && (q as u128).checked_pow(m) == Some(field.order() as u128);
    if !consistent {
        return Err(Error::InvalidBaseOrder {
            base: q,
            order: field.order(),
        });
    }
    let trace = alpha.trace_to_subfield(m, q)?;
    let sub = subfield_elements(field, q);
    if trace.is_zero() {
        let y = artin_schreier_solve(alpha, q)?.ok_or_else(|| {
            Error::InvalidArgument("trace-zero element without Artin-Schreier root".into())
        })?;
        let mut roots: Vec<FieldElem> = sub
            .iter()
            .map(|&b| field.elem(field.add(y.code(), b)))
            .collect();
        roots.sort_by_key(|r| r.code());
        return Ok(ArtinSchreierShape::SplitsLinear { roots });
    }

    let too_large = (field.order() as u128)
        .checked_pow(p as u32)
        .is_none_or(|o| o > crate::gf::MAX_ORDER as u128);
    if too_large {
        let mut factors = artin_schreier_poly(alpha, q).equal_degree_split(p as usize)?;
        factors.sort();
        return Ok(ArtinSchreierShape::FactorsDegreeP { factors });
    }

    let ext = field.default_extension(p as usize)?;
    let alpha_e = alpha.embed_in(&ext)?;
    let z = artin_schreier_solve(&alpha_e, q)?
        .ok_or_else(|| Error::InvalidArgument("no root in the degree-p extension".into()))?;
    let t = trace.code();
    let t_inv = ext.inv(t).expect("trace is nonzero");
    let t_pow_p = field.pow(t, p as u128);
    let t_pow_pm1 = field.pow(t, (p - 1) as u128);

    // coset representatives of F_q modulo the line F_p·T
    let mut seen = vec![false; field.order() as usize];
    let mut factors = Vec::new();
    for &b in &sub {
        if seen[b as usize] {
            continue;
        }
        let mut c = b;
        for _ in 0..p {
            seen[c as usize] = true;
            c = field.add(c, t);
        }
        let w = ext.mul(ext.add(z.code(), b), t_inv);
        let s_w = ext.sub(ext.pow(w, p as u128), w);
        let constant = ext.mul(t_pow_p, s_w);
        let constant = ext.elem(constant).project_to(field)?.code();
        let mut v = vec![0u32; p as usize + 1];
        v[p as usize] = 1;
        v[1] = field.neg(t_pow_pm1);
        v[0] = field.neg(constant);
        factors.push(Poly::from_codes(field, v));
    }
    factors.sort();
    Ok(ArtinSchreierShape::FactorsDegreeP { factors })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn p(field: &Field, s: &str) -> Poly {
        crate::text::parse_poly(field, s).unwrap()
    }

    #[test]
    fn ring_operations() {
        let f = f5();
        assert_eq!(p(&f, "x^2-1").gcd(&p(&f, "x-1")).unwrap(), p(&f, "x-1"));
        let (q, r) = p(&f, "x^3").divmod(&p(&f, "x^2+2")).unwrap();
        assert_eq!(q, p(&f, "x"));
        assert_eq!(r, p(&f, "3*x"));
        assert_eq!(
            Poly::x(&f).powmod(25, &p(&f, "x^2+2")).unwrap(),
            Poly::x(&f)
        );
        assert_eq!(p(&f, "x").divmod(&Poly::zero(&f)), Err(Error::DivisionByZero));
        let g = Poly::x(&Field::prime(7).unwrap());
        assert_eq!(p(&f, "x").checked_add(&g), Err(Error::FieldMismatch));
    }

    #[test]
    fn irreducibility() {
        let f = f5();
        assert!(p(&f, "x^2+2").is_irreducible().unwrap());
        assert!(!p(&f, "x^2-1").is_irreducible().unwrap());
        let f2 = Field::prime(2).unwrap();
        assert!(p(&f2, "x^2+x+1").is_irreducible().unwrap());
        assert_eq!(p(&f, "2*x^2+1").is_irreducible(), Err(Error::NotMonic));
    }

    #[test]
    fn degree_two_irreducibles_over_f5() {
        let f = f5();
        let all: Vec<String> = Poly::irreducibles(&f, 2).iter().map(|g| g.to_string()).collect();
        assert_eq!(
            all,
            vec![
                "x^2+2", "x^2+3", "x^2+x+1", "x^2+x+2", "x^2+2*x+3", "x^2+2*x+4", "x^2+3*x+3",
                "x^2+3*x+4", "x^2+4*x+1", "x^2+4*x+2"
            ]
        );
        assert_eq!(Poly::irreducibles(&f, 1).len(), 5);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(Poly::irreducibles(&f2, 2), vec![p(&f2, "x^2+x+1")]);
    }

    #[test]
    fn polynomial_trace() {
        let f = f5();
        assert_eq!(p(&f, "x^2+3*x+4").trace().unwrap(), f.from_int(3));
        assert_eq!(p(&f, "x^2+2").trace().unwrap(), f.zero());
        let shifted = p(&f, "x^2+2").shift(3);
        assert_eq!(shifted, p(&f, "x^2+x+1"));
        assert_eq!(shifted.trace().unwrap(), f.one());
        assert_eq!(p(&f, "2*x+1").trace(), Err(Error::NotMonic));
    }

    #[test]
    fn closed_form_counts() {
        assert_eq!(count_irreducibles(2, 5).unwrap(), 10);
        assert_eq!(count_irreducibles(1, 7).unwrap(), 7);
        assert_eq!(count_irreducibles(3, 2).unwrap(), 2);
        assert_eq!(count_irreducibles_trace(2, 5, TraceClass::NonZero).unwrap(), 2);
        assert_eq!(count_irreducibles_trace(2, 5, TraceClass::Zero).unwrap(), 2);
        assert_eq!(count_irreducibles_trace(2, 2, TraceClass::Zero).unwrap(), 0);
        assert!(count_irreducibles(2, 6).is_err());
    }

    #[test]
    fn distinct_degree_examples() {
        let f = f5();
        let s = p(&f, "x^2-1").distinct_degree_split().unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![(1, p(&f, "x^2-1"))]);
        let s = p(&f, "x^2+2").distinct_degree_split().unwrap();
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![(2, p(&f, "x^2+2"))]);
        let prod = &p(&f, "x^2+2") * &p(&f, "x-1");
        let s = prod.distinct_degree_split().unwrap();
        assert_eq!(
            s.into_iter().collect::<Vec<_>>(),
            vec![(1, p(&f, "x-1")), (2, p(&f, "x^2+2"))]
        );
        assert_eq!(
            p(&f, "(x-1)^2").distinct_degree_split(),
            Err(Error::NotSquarefree)
        );
    }

    #[test]
    fn artin_schreier_prime_field() {
        let f = f5();
        match artin_schreier_shape(&f.zero(), 5, 1).unwrap() {
            ArtinSchreierShape::SplitsLinear { roots } => {
                assert_eq!(roots.iter().map(|r| r.code()).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4])
            }
            other => panic!("unexpected {other:?}"),
        }
        match artin_schreier_shape(&f.one(), 5, 1).unwrap() {
            ArtinSchreierShape::FactorsDegreeP { factors } => {
                assert_eq!(factors, vec![p(&f, "x^5-x-1")]);
                assert!(factors[0].is_irreducible().unwrap());
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(artin_schreier_shape(&f.one(), 25, 1).is_err());
    }

    #[test]
    fn artin_schreier_over_f4() {
        let f4 = Field::with_order(4).unwrap();
        let alpha = f4.generator();
        let shape = artin_schreier_shape(&alpha, 4, 1).unwrap();
        let factors = shape.factors();
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|g| g.degree() == Some(2)));
        assert_eq!(shape.product(&f4), artin_schreier_poly(&alpha, 4));
        // independent oracle: distinct-degree split puts everything in degree 2
        let dds = artin_schreier_poly(&alpha, 4).distinct_degree_split().unwrap();
        assert_eq!(dds.keys().copied().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn equal_degree_split_recovers_factors() {
        let f = Field::prime(3).unwrap();
        let a = p(&f, "x^2+1");
        let b = p(&f, "x^2+x+2");
        let c = p(&f, "x^2+2*x+2");
        let prod = &(&a * &b) * &c;
        let mut want = vec![a, b, c];
        want.sort();
        assert_eq!(prod.equal_degree_split(2).unwrap(), want);
        let f4 = Field::with_order(4).unwrap();
        let irr = Poly::irreducibles(&f4, 3);
        let prod = &irr[0] * &irr[5];
        let mut want = vec![irr[0].clone(), irr[5].clone()];
        want.sort();
        assert_eq!(prod.equal_degree_split(3).unwrap(), want);
    }

    #[test]
    fn equal_degree_split_matches_explicit_factors() {
        let f9 = Field::prime(3).unwrap().default_extension(2).unwrap();
        for alpha in f9.elements() {
            if let ArtinSchreierShape::FactorsDegreeP { factors } = artin_schreier_shape(&alpha, 3, 2).unwrap() {
                let split = artin_schreier_poly(&alpha, 3).equal_degree_split(3).unwrap();
                assert_eq!(split, factors);
            }
        }
    }
}
