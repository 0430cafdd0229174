//! The rational function field `F_q(x)`: places, divisors, valuations,
//! evaluation into residue fields, Riemann–Roch spaces and place counts.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::linalg::Matrix;
use crate::numtheory::{divisors, moebius, prime_power};
use crate::poly::{count_irreducibles, Poly};

/// A finite place, given by a monic irreducible polynomial.
#[derive(Clone)]
pub struct FinitePlace {
    poly: Poly,
    residue: Arc<OnceLock<Field>>,
}

impl FinitePlace {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }
}

/// A place of `F_q(x)`.
#[derive(Clone)]
pub enum Place {
    Infinity,
    Finite(FinitePlace),
}

impl Place {
    /// The finite place of a monic irreducible polynomial.
    pub fn finite(poly: Poly) -> Result<Place> {
        if !poly.is_monic() {
            return Err(Error::NotMonic);
        }
        if !poly.is_irreducible()? {
            return Err(Error::NotIrreducible(poly.to_string()));
        }
        Ok(Place::finite_unchecked(poly))
    }

    pub(crate) fn finite_unchecked(poly: Poly) -> Place {
        Place::Finite(FinitePlace {
            poly,
            residue: Arc::new(OnceLock::new()),
        })
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Infinity => 1,
            Place::Finite(fp) => fp.poly.degree().expect("nonzero"),
        }
    }

    pub fn poly(&self) -> Option<&Poly> {
        match self {
            Place::Infinity => None,
            Place::Finite(fp) => Some(&fp.poly),
        }
    }

    /// Residue class field `F_q[x]/(π)` over `base` (the base field itself for
    /// degree-one places).
    pub fn residue_field(&self, base: &Field) -> Result<Field> {
        match self {
            Place::Infinity => Ok(base.clone()),
            Place::Finite(fp) => {
                if fp.poly.field() != base {
                    return Err(Error::FieldMismatch);
                }
                if let Some(f) = fp.residue.get() {
                    return Ok(f.clone());
                }
                let f = if fp.poly.degree() == Some(1) {
                    base.clone()
                } else {
                    base.extend_unchecked(fp.poly.codes().to_vec())?
                };
                let _ = fp.residue.set(f.clone());
                Ok(f)
            }
        }
    }

    /// Parses `Pinf` or `[<monic irreducible>]`.
    pub fn parse(field: &Field, text: &str) -> Result<Place> {
        let t = text.trim();
        if t == "Pinf" {
            return Ok(Place::Infinity);
        }
        let inner = t
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected Pinf or [poly], got {t:?}")))?;
        Place::finite(crate::text::parse_poly(field, inner)?)
    }
}

impl PartialEq for Place {
    fn eq(&self, other: &Place) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Place {}

impl Ord for Place {
    /// `Pinf` first, then finite places by polynomial order.
    fn cmp(&self, other: &Place) -> Ordering {
        match (self, other) {
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
            (Place::Infinity, _) => Ordering::Less,
            (_, Place::Infinity) => Ordering::Greater,
            (Place::Finite(a), Place::Finite(b)) => a.poly.cmp(&b.poly),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Place) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for Place {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Place::Infinity => 0u8.hash(state),
            Place::Finite(fp) => {
                1u8.hash(state);
                fp.poly.hash(state);
            }
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("Pinf"),
            Place::Finite(fp) => write!(f, "[{}]", fp.poly),
        }
    }
}

impl fmt::Debug for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Formal integer combination of places. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Divisor {
    coeffs: BTreeMap<Place, i64>,
}

impl Divisor {
    pub fn zero() -> Divisor {
        Divisor::default()
    }

    pub fn from_place(place: Place, n: i64) -> Divisor {
        let mut d = Divisor::zero();
        d.add_place(place, n);
        d
    }

    pub fn from_pairs<I: IntoIterator<Item = (Place, i64)>>(pairs: I) -> Divisor {
        let mut d = Divisor::zero();
        for (p, n) in pairs {
            d.add_place(p, n);
        }
        d
    }

    pub fn add_place(&mut self, place: Place, n: i64) {
        let c = self.coeffs.entry(place.clone()).or_insert(0);
        *c += n;
        if *c == 0 {
            self.coeffs.remove(&place);
        }
    }

    pub fn coeff(&self, place: &Place) -> i64 {
        self.coeffs.get(place).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Place, i64)> {
        self.coeffs.iter().map(|(p, &n)| (p, n))
    }

    pub fn support(&self) -> impl Iterator<Item = &Place> {
        self.coeffs.keys()
    }

    pub fn degree(&self) -> i64 {
        self.iter().map(|(p, n)| n * p.degree() as i64).sum()
    }

    /// All coefficients nonnegative.
    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&n| n >= 0)
    }

    /// `⌊G/q⌋`: positive coefficients floor-divided by `q`, negative ones kept.
    pub fn floor_div(&self, q: u64) -> Divisor {
        Divisor::from_pairs(self.iter().map(|(p, n)| {
            (p.clone(), if n > 0 { n / q as i64 } else { n })
        }))
    }

    /// `G⁺`, the positive part.
    pub fn positive_part(&self) -> Divisor {
        Divisor::from_pairs(self.iter().filter(|(_, n)| *n > 0).map(|(p, n)| (p.clone(), n)))
    }

    /// `(G⁺)⁰`, the reduced support of the positive part.
    pub fn positive_support(&self) -> Divisor {
        Divisor::from_pairs(self.iter().filter(|(_, n)| *n > 0).map(|(p, _)| (p.clone(), 1)))
    }

    /// Parses text like `2*Pinf + 1*[x^2+2] - 3*[x+1]`; `0` is the zero divisor.
    pub fn parse(field: &Field, text: &str) -> Result<Divisor> {
        let t = text.trim();
        if t == "0" || t.is_empty() {
            return Ok(Divisor::zero());
        }
        let mut terms: Vec<(i64, String)> = Vec::new();
        let mut sign = 1i64;
        let mut cur = String::new();
        let mut depth = 0usize;
        for c in t.chars() {
            match c {
                '[' => {
                    depth += 1;
                    cur.push(c);
                }
                ']' => {
                    depth = depth
                        .checked_sub(1)
                        .ok_or_else(|| Error::Parse(format!("unbalanced ']' in {t:?}")))?;
                    cur.push(c);
                }
                '+' | '-' if depth == 0 => {
                    if !cur.trim().is_empty() {
                        terms.push((sign, std::mem::take(&mut cur)));
                    } else if !terms.is_empty() || sign == -1 {
                        return Err(Error::Parse(format!("dangling sign in {t:?}")));
                    }
                    cur.clear();
                    sign = if c == '-' { -1 } else { 1 };
                }
                _ => cur.push(c),
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!("unbalanced '[' in {t:?}")));
        }
        if cur.trim().is_empty() {
            return Err(Error::Parse(format!("dangling sign in {t:?}")));
        }
        terms.push((sign, cur));
        let mut d = Divisor::zero();
        for (sign, term) in terms {
            let term = term.trim();
            let (n, place) = match term.split_once('*') {
                Some((n, rest)) if !n.trim_start().starts_with('[') => {
                    let n: i64 = n
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient {n:?}")))?;
                    (n, rest)
                }
                _ => (1, term),
            };
            d.add_place(Place::parse(field, place)?, sign * n);
        }
        Ok(d)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (p, n)) in self.iter().enumerate() {
            match (i, n < 0) {
                (0, false) => write!(f, "{n}*{p}")?,
                (0, true) => write!(f, "-{}*{p}", -n)?,
                (_, false) => write!(f, " + {n}*{p}")?,
                (_, true) => write!(f, " - {}*{p}", -n)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Divisor {
    type Output = Divisor;
    fn add(self, rhs: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (p, n) in rhs.iter() {
            d.add_place(p.clone(), n);
        }
        d
    }
}

impl Neg for &Divisor {
    type Output = Divisor;
    fn neg(self) -> Divisor {
        Divisor::from_pairs(self.iter().map(|(p, n)| (p.clone(), -n)))
    }
}

impl Sub for &Divisor {
    type Output = Divisor;
    fn sub(self, rhs: &Divisor) -> Divisor {
        self + &(-rhs)
    }
}

/// Element of `F_q(x)` as a reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch);
        }
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: Poly::one(&field),
            });
        }
        let g = num.gcd(&den)?;
        let (mut n, _) = num.divmod(&g)?;
        let (mut d, _) = den.divmod(&g)?;
        let lead = field.inv(d.leading_code()).expect("nonzero");
        n = n.scale(lead);
        d = d.scale(lead);
        Ok(RationalFunction { num: n, den: d })
    }

    pub fn from_poly(p: Poly) -> RationalFunction {
        let one = Poly::one(p.field());
        RationalFunction { num: p, den: one }
    }

    pub fn constant(c: &FieldElem) -> RationalFunction {
        RationalFunction::from_poly(Poly::constant(c))
    }

    pub fn zero(field: &Field) -> RationalFunction {
        RationalFunction::from_poly(Poly::zero(field))
    }

    pub fn x(field: &Field) -> RationalFunction {
        RationalFunction::from_poly(Poly::x(field))
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.degree().unwrap_or(0) == 0
    }

    pub fn checked_add(&self, other: &RationalFunction) -> Result<RationalFunction> {
        let n = self
            .num
            .checked_mul(&other.den)?
            .checked_add(&other.num.checked_mul(&self.den)?)?;
        RationalFunction::new(n, self.den.checked_mul(&other.den)?)
    }

    pub fn checked_mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::new(
            self.num.checked_mul(&other.num)?,
            self.den.checked_mul(&other.den)?,
        )
    }

    pub fn scale(&self, c: u32) -> RationalFunction {
        RationalFunction::new(self.num.scale(c), self.den.clone()).expect("same field")
    }

    pub fn pow(&self, e: u64) -> RationalFunction {
        RationalFunction {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Parses `num` or `num/den`, each a polynomial expression in `x`.
    pub fn parse(field: &Field, text: &str) -> Result<RationalFunction> {
        match split_fraction(text) {
            Some((n, d)) => RationalFunction::new(
                crate::text::parse_poly(field, n)?,
                crate::text::parse_poly(field, d)?,
            ),
            None => Ok(RationalFunction::from_poly(crate::text::parse_poly(field, text)?)),
        }
    }
}

/// Splits at a top-level `/`.
fn split_fraction(text: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => return Some((&text[..i], &text[i + 1..])),
            _ => {}
        }
    }
    None
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_add(rhs).expect("RationalFunction::add")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_mul(rhs).expect("RationalFunction::mul")
    }
}

fn multiplicity(f: &Poly, pi: &Poly) -> Result<i64> {
    let mut k = 0;
    let mut cur = f.clone();
    loop {
        let (q, r) = cur.divmod(pi)?;
        if !r.is_zero() {
            return Ok(k);
        }
        cur = q;
        k += 1;
    }
}

/// `v_P(f)`.
pub fn valuation(f: &RationalFunction, place: &Place) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    match place {
        Place::Infinity => {
            Ok(f.den.degree().expect("nonzero") as i64 - f.num.degree().expect("nonzero") as i64)
        }
        Place::Finite(fp) => {
            if fp.poly.field() != f.field() {
                return Err(Error::FieldMismatch);
            }
            Ok(multiplicity(&f.num, &fp.poly)? - multiplicity(&f.den, &fp.poly)?)
        }
    }
}

/// Code in the residue field of the class of a polynomial of degree `< deg π`.
fn residue_code(r: &Poly, q: u64) -> u32 {
    r.codes()
        .iter()
        .rev()
        .fold(0u64, |acc, &c| acc * q + c as u64) as u32
}

/// `f(P)` in the residue class field of `P`.
pub fn evaluate(f: &RationalFunction, place: &Place) -> Result<FieldElem> {
    let base = f.field();
    let res = place.residue_field(base)?;
    if f.is_zero() {
        return Ok(res.zero());
    }
    let v = valuation(f, place)?;
    if v < 0 {
        return Err(Error::Pole(place.to_string()));
    }
    if v > 0 {
        return Ok(res.zero());
    }
    match place {
        Place::Infinity => {
            let c = base
                .div(f.num.leading_code(), f.den.leading_code())
                .expect("nonzero");
            Ok(base.elem(c))
        }
        Place::Finite(fp) => {
            let q = base.order();
            let n = residue_code(&f.num.rem(&fp.poly)?, q);
            let d = residue_code(&f.den.rem(&fp.poly)?, q);
            Ok(res.elem(res.div(n, d).expect("no pole")))
        }
    }
}

/// `Tr(f(P))` from the residue field of `P` down to `F_q`.
pub fn trace_at(f: &RationalFunction, place: &Place) -> Result<u32> {
    let base = f.field();
    let e = evaluate(f, place)?;
    let t = e.trace_to_subfield(place.degree() as u32, base.order())?;
    Ok(t.project_to(base)?.code())
}

/// Whether `(f) + G ≥ 0`.
pub fn in_rr_space(f: &RationalFunction, g: &Divisor) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let mut places: Vec<Place> = g.support().cloned().collect();
    places.push(Place::Infinity);
    for fac in [f.num.clone(), f.den.clone()] {
        for (_, prod) in squarefree_places(&fac)? {
            places.push(prod);
        }
    }
    for p in places {
        if valuation(f, &p)? + g.coeff(&p) < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The distinct finite places dividing a nonzero polynomial, as (multiplicity, place).
fn squarefree_places(f: &Poly) -> Result<Vec<(i64, Place)>> {
    let field = f.field();
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let mut rest = f.make_monic();
    let mut d = 1;
    while rest.degree().unwrap_or(0) > 0 {
        // no factor of degree < d is left
        if rest.degree().unwrap_or(0) < 2 * d {
            out.push((1, Place::finite_unchecked(rest.clone())));
            break;
        }
        for pi in Poly::irreducibles(field, d) {
            let m = multiplicity(&rest, &pi)?;
            if m > 0 {
                rest = rest.divmod(&pi.pow(m as u64))?.0;
                out.push((m, Place::finite_unchecked(pi)));
            }
        }
        d += 1;
    }
    Ok(out)
}

/// The principal divisor `(f)`.
pub fn principal_divisor(f: &RationalFunction) -> Result<Divisor> {
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let mut d = Divisor::from_place(Place::Infinity, valuation(f, &Place::Infinity)?);
    for (m, p) in squarefree_places(&f.num)? {
        d.add_place(p, m);
    }
    for (m, p) in squarefree_places(&f.den)? {
        d.add_place(p, -m);
    }
    Ok(d)
}

/// A Riemann–Roch space `L(G)` with an explicit basis.
///
/// Every element is `g/H` with `H = Π_{n_P > 0} π_P^{n_P}` and `g` a
/// polynomial of degree at most `deg H + n_∞` divisible by
/// `M = Π_{n_P < 0} π_P^{-n_P}`; elements are identified with the coefficient
/// vectors of their numerators `g`.
#[derive(Clone, Debug)]
pub struct RRSpace {
    field: Field,
    divisor: Divisor,
    denominator: Poly,
    /// Numerator degree bound plus one; `0` when the space is zero.
    width: usize,
    /// Numerator coefficient vectors of the basis, low to high, length `width`.
    coords: Vec<Vec<u32>>,
    basis: Vec<RationalFunction>,
}

impl RRSpace {
    pub fn new(field: &Field, g: &Divisor) -> Result<RRSpace> {
        let mut h = Poly::one(field);
        let mut m = Poly::one(field);
        for (p, n) in g.iter() {
            if let Some(pi) = p.poly() {
                if pi.field() != field {
                    return Err(Error::FieldMismatch);
                }
                if n > 0 {
                    h = &h * &pi.pow(n as u64);
                } else {
                    m = &m * &pi.pow((-n) as u64);
                }
            }
        }
        let dmax = h.degree().expect("nonzero") as i64 + g.coeff(&Place::Infinity);
        let mut space = RRSpace {
            field: field.clone(),
            divisor: g.clone(),
            denominator: h,
            width: 0,
            coords: Vec::new(),
            basis: Vec::new(),
        };
        if dmax < 0 || g.degree() < 0 {
            return Ok(space);
        }
        let width = dmax as usize + 1;
        // constraint: x^j mod M, one column per candidate monomial
        let dm = m.degree().expect("nonzero");
        let mut constraint = Matrix::zeros(field, dm, width);
        for j in 0..width {
            let r = Poly::monomial(field, 1, j).rem(&m)?;
            for (i, &c) in r.codes().iter().enumerate() {
                constraint.set(i, j, c);
            }
        }
        let kernel = if dm == 0 {
            Matrix::identity(field, width).to_rows()
        } else {
            constraint.kernel()
        };
        // echelon form on reversed coordinates: monic numerators of distinct degrees
        let reversed = kernel.into_iter().map(|mut v| {
            v.reverse();
            v
        });
        let echelon = crate::linalg::Subspace::span(field, width, reversed);
        let mut coords: Vec<Vec<u32>> = echelon
            .basis()
            .iter()
            .rev()
            .map(|v| v.iter().rev().copied().collect())
            .collect();
        coords.sort_by_key(|v: &Vec<u32>| v.iter().rposition(|&c| c != 0));
        space.basis = coords
            .iter()
            .map(|v| {
                RationalFunction::new(Poly::from_codes(field, v.clone()), space.denominator.clone())
            })
            .collect::<Result<_>>()?;
        space.width = width;
        space.coords = coords;
        Ok(space)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RationalFunction] {
        &self.basis
    }

    /// The common denominator `H`.
    pub fn denominator(&self) -> &Poly {
        &self.denominator
    }

    /// Length of numerator coefficient vectors.
    pub fn numerator_width(&self) -> usize {
        self.width
    }

    /// Numerator coefficient vectors of the basis.
    pub fn basis_numerators(&self) -> &[Vec<u32>] {
        &self.coords
    }

    /// Numerator of `f · H` as a coefficient vector of length
    /// [`RRSpace::numerator_width`], or `None` when `f ∉ L(G)`.
    pub fn numerator_of(&self, f: &RationalFunction) -> Result<Option<Vec<u32>>> {
        if f.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if f.is_zero() {
            return Ok(Some(vec![0; self.width]));
        }
        if !in_rr_space(f, &self.divisor)? {
            return Ok(None);
        }
        let (g, r) = f.num.checked_mul(&self.denominator)?.divmod(&f.den)?;
        debug_assert!(r.is_zero());
        let mut v = g.codes().to_vec();
        v.resize(self.width, 0);
        Ok(Some(v))
    }

    /// Coordinates of `f` with respect to [`RRSpace::basis`].
    pub fn coordinates(&self, f: &RationalFunction) -> Result<Vec<u32>> {
        let g = self.numerator_of(f)?.ok_or(Error::NotInRiemannRochSpace)?;
        let m = Matrix::from_rows(&self.field, self.width, &self.coords).transpose();
        m.solve(&g).ok_or(Error::NotInRiemannRochSpace)
    }

    /// `Σ c_i b_i`.
    pub fn combination(&self, coeffs: &[u32]) -> RationalFunction {
        let f = &self.field;
        let mut g = vec![0u32; self.width];
        for (c, v) in coeffs.iter().zip(&self.coords) {
            for (x, &y) in g.iter_mut().zip(v) {
                *x = f.add(*x, f.mul(*c, y));
            }
        }
        RationalFunction::new(Poly::from_codes(f, g), self.denominator.clone()).expect("nonzero den")
    }

    pub fn contains(&self, f: &RationalFunction) -> Result<bool> {
        if f.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        in_rr_space(f, &self.divisor)
    }
}

/// `l(G)`.
pub fn l_dim(field: &Field, g: &Divisor) -> Result<usize> {
    Ok(RRSpace::new(field, g)?.dim())
}

/// `B_r` for `F_q(x)`: the number of places of degree `r`.
pub fn count_places(q: u64, r: u64) -> Result<i128> {
    Ok(count_irreducibles(r, q)? + if r == 1 { 1 } else { 0 })
}

/// `(1/r) Σ_{d | r} μ(r/d) q^d`, exact.
pub fn mobius_center(q: u64, r: u64) -> Result<num_rational::Ratio<i128>> {
    prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let mut s = 0i128;
    for d in divisors(r) {
        s += moebius(r / d)? as i128 * crate::numtheory::checked_pow(q, d)?;
    }
    Ok(num_rational::Ratio::new(s, r as i128))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::prime(5).unwrap()
    }

    fn rf(field: &Field, s: &str) -> RationalFunction {
        RationalFunction::parse(field, s).unwrap()
    }

    fn pl(field: &Field, s: &str) -> Place {
        Place::parse(field, s).unwrap()
    }

    #[test]
    fn valuations() {
        let f = f5();
        assert_eq!(valuation(&rf(&f, "x^2"), &Place::Infinity).unwrap(), -2);
        assert_eq!(valuation(&rf(&f, "1/(x^2+2)"), &pl(&f, "[x^2+2]")).unwrap(), -1);
        assert_eq!(valuation(&rf(&f, "(x-1)^3/(x+1)"), &pl(&f, "[x+4]")).unwrap(), 3);
        assert_eq!(valuation(&RationalFunction::zero(&f), &Place::Infinity), Err(Error::ZeroFunction));
    }

    #[test]
    fn evaluations() {
        let f = f5();
        let p = pl(&f, "[x^2+2]");
        let e = evaluate(&rf(&f, "x"), &p).unwrap();
        assert_eq!(e.pow(2).code(), 3);
        assert_eq!(trace_at(&rf(&f, "x"), &p).unwrap(), 0);
        assert_eq!(evaluate(&rf(&f, "7"), &p).unwrap().code(), 2);
        assert_eq!(evaluate(&rf(&f, "x^2"), &pl(&f, "[x+2]")).unwrap().code(), 4);
        assert!(matches!(evaluate(&rf(&f, "1/(x^2+2)"), &p), Err(Error::Pole(_))));
        assert_eq!(evaluate(&rf(&f, "(2*x+1)/(x+3)"), &Place::Infinity).unwrap().code(), 2);
    }

    #[test]
    fn riemann_roch_examples() {
        let f = f5();
        let g = Divisor::parse(&f, "2*Pinf").unwrap();
        let l = RRSpace::new(&f, &g).unwrap();
        let names: Vec<String> = l.basis().iter().map(|b| b.to_string()).collect();
        assert_eq!(names, vec!["1", "x", "x^2"]);
        assert_eq!(RRSpace::new(&f, &Divisor::parse(&f, "-1*Pinf").unwrap()).unwrap().dim(), 0);
        let g = Divisor::parse(&f, "[x^2+2]").unwrap();
        let l = RRSpace::new(&f, &g).unwrap();
        assert_eq!(l.dim(), 3);
        for b in l.basis() {
            assert!(in_rr_space(b, &g).unwrap());
        }
        let g = Divisor::parse(&f, "3*Pinf - 2*[x+1]").unwrap();
        let l = RRSpace::new(&f, &g).unwrap();
        assert_eq!(l.dim(), 2);
        assert_eq!(l.basis()[0], rf(&f, "(x+1)^2"));
        assert!(l.contains(&rf(&f, "x*(x+1)^2")).unwrap());
        assert!(!l.contains(&rf(&f, "x+1")).unwrap());
        let c = l.coordinates(&rf(&f, "x*(x+1)^2+(x+1)^2")).unwrap();
        assert_eq!(c, vec![3, 1]);
    }

    #[test]
    fn divisor_operations() {
        let f = f5();
        let g = Divisor::parse(&f, "7*Pinf").unwrap();
        assert_eq!(g.floor_div(5), Divisor::parse(&f, "Pinf").unwrap());
        assert!(Divisor::parse(&f, "2*Pinf").unwrap().floor_div(5).is_zero());
        let g = Divisor::parse(&f, "7*Pinf - 3*[x]").unwrap();
        assert_eq!(g.floor_div(5), Divisor::parse(&f, "Pinf - 3*[x]").unwrap());
        let g = Divisor::parse(&f, "3*[x] - 2*Pinf").unwrap();
        assert_eq!(g.positive_part(), Divisor::parse(&f, "3*[x]").unwrap());
        assert_eq!(g.positive_support(), Divisor::parse(&f, "[x]").unwrap());
        assert!(Divisor::parse(&f, "-1*[x]").unwrap().positive_part().is_zero());
        let g = Divisor::parse(&f, "2*Pinf + 1*[x^2+2] - 3*[x+1]").unwrap();
        assert_eq!(g.degree(), 1);
        assert_eq!(Divisor::parse(&f, &g.to_string()).unwrap(), g);
        assert_eq!(g.to_string(), "2*Pinf - 3*[x+1] + 1*[x^2+2]");
        assert!(Divisor::parse(&f, "[x^2+4]").is_err());
        assert!(Divisor::parse(&f, "2*").is_err());
    }

    #[test]
    fn principal_divisors_have_degree_zero() {
        let f = f5();
        let h = rf(&f, "(x^2+2)*(x+1)^2/(x^3+x+1)");
        let d = principal_divisor(&h).unwrap();
        assert_eq!(d.degree(), 0);
        assert_eq!(d.coeff(&pl(&f, "[x+1]")), 2);
    }

    #[test]
    fn place_counts() {
        assert_eq!(count_places(5, 2).unwrap(), 10);
        assert_eq!(count_places(7, 1).unwrap(), 8);
        assert_eq!(count_places(2, 3).unwrap(), 2);
    }
}
