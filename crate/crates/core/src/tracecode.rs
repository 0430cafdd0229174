//! The trace code `C_tr(D, G)`: evaluate `L(G)` at places of arbitrary degree
//! and take the trace of each value down to `F_q`. Also the quasi-cyclic
//! family over `F_p` and the degeneracy test for elements of `L(G)`.

use serde::{Deserialize, Serialize};

use crate::analysis::{shift_left, LinearCode};
use crate::error::{Error, Result};
use crate::funcfield::{in_rr_space, trace_at, Divisor, Place, RRSpace, RationalFunction};
use crate::gf::Field;
use crate::linalg::{Matrix, Subspace};
use crate::numtheory::gcd;
use crate::poly::Poly;

/// Input of the construction: the field `F_q`, the ordered places `D` and the divisor `G`.
#[derive(Clone, Debug)]
pub struct CodeSpec {
    field: Field,
    places: Vec<Place>,
    g: Divisor,
    allow_non_coprime: bool,
}

/// JSON form of a [`CodeSpec`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CodeSpecJson {
    pub q: String,
    #[serde(rename = "G")]
    pub g: String,
    #[serde(rename = "D")]
    pub d: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_non_coprime: bool,
}

impl CodeSpec {
    /// Validates `supp(G) ∩ supp(D) = ∅`, distinct finite places, and `(deg P, p) = 1`.
    pub fn new(field: &Field, places: Vec<Place>, g: Divisor) -> Result<CodeSpec> {
        CodeSpec::build(field, places, g, false)
    }

    /// As [`CodeSpec::new`] but without the coprimality requirement.
    pub fn new_non_coprime(field: &Field, places: Vec<Place>, g: Divisor) -> Result<CodeSpec> {
        CodeSpec::build(field, places, g, true)
    }

    fn build(field: &Field, places: Vec<Place>, g: Divisor, allow_non_coprime: bool) -> Result<CodeSpec> {
        let spec = CodeSpec {
            field: field.clone(),
            places,
            g,
            allow_non_coprime,
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.places.is_empty() {
            return Err(Error::EmptyD);
        }
        for p in self.places.iter().chain(self.g.support()) {
            if let Some(pi) = p.poly() {
                if pi.field() != &self.field {
                    return Err(Error::FieldMismatch);
                }
            }
        }
        for p in &self.places {
            if self.g.coeff(p) != 0 {
                return Err(Error::SupportOverlap(p.to_string()));
            }
        }
        for (i, p) in self.places.iter().enumerate() {
            if p.is_infinity() {
                return Err(Error::InfinitePlaceInD(p.to_string()));
            }
            if self.places[..i].contains(p) {
                return Err(Error::DuplicatePlace(p.to_string()));
            }
        }
        let ch = self.field.characteristic();
        if !self.allow_non_coprime {
            for p in &self.places {
                if gcd(p.degree() as u64, ch as u64) != 1 {
                    return Err(Error::NotCoprime {
                        place: p.to_string(),
                        degree: p.degree(),
                        p: ch,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.order()
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn g(&self) -> &Divisor {
        &self.g
    }

    pub fn n(&self) -> usize {
        self.places.len()
    }

    /// `(β_1, ..., β_n)`.
    pub fn betas(&self) -> Vec<usize> {
        self.places.iter().map(Place::degree).collect()
    }

    /// `Σβ_i = deg D`.
    pub fn degree_d(&self) -> usize {
        self.betas().iter().sum()
    }

    pub fn allows_non_coprime(&self) -> bool {
        self.allow_non_coprime
    }

    pub fn from_json_value(js: &CodeSpecJson) -> Result<CodeSpec> {
        let field = Field::parse(&js.q)?;
        let g = Divisor::parse(&field, &js.g)?;
        let places = js
            .d
            .iter()
            .map(|s| Place::parse(&field, s))
            .collect::<Result<Vec<_>>>()?;
        CodeSpec::build(&field, places, g, js.allow_non_coprime)
    }

    /// Parses `{"q": "5", "G": "2*Pinf", "D": ["[x^2+2]", ...]}`.
    pub fn from_json(text: &str) -> Result<CodeSpec> {
        let js: CodeSpecJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("code spec: {e}")))?;
        CodeSpec::from_json_value(&js)
    }

    pub fn to_json_value(&self) -> CodeSpecJson {
        CodeSpecJson {
            q: self.field.spec_string(),
            g: self.g.to_string(),
            d: self.places.iter().map(|p| p.to_string()).collect(),
            allow_non_coprime: self.allow_non_coprime,
        }
    }
}

/// `φ(f) = (Tr_1(f(P_1)), ..., Tr_n(f(P_n)))`.
pub fn codeword(f: &RationalFunction, places: &[Place]) -> Result<Vec<u32>> {
    places.iter().map(|p| trace_at(f, p)).collect()
}

/// A built trace code together with the data it came from.
#[derive(Clone, Debug)]
pub struct TraceCode {
    spec: CodeSpec,
    space: RRSpace,
    gen_rows: Vec<Vec<u32>>,
    code: LinearCode,
    kernel_basis: Vec<RationalFunction>,
}

impl TraceCode {
    /// `C_tr = φ(L(G))`.
    pub fn build(spec: CodeSpec) -> Result<TraceCode> {
        let field = spec.field.clone();
        let space = RRSpace::new(&field, &spec.g)?;
        let n = spec.n();
        let gen_rows = space
            .basis()
            .iter()
            .map(|b| codeword(b, &spec.places))
            .collect::<Result<Vec<_>>>()?;
        let code = LinearCode::from_generators(&field, n, gen_rows.clone());
        let kernel_basis = if gen_rows.is_empty() {
            Vec::new()
        } else {
            Matrix::from_rows(&field, n, &gen_rows)
                .left_kernel()
                .into_iter()
                .map(|c| space.combination(&c))
                .collect()
        };
        Ok(TraceCode {
            spec,
            space,
            gen_rows,
            code,
            kernel_basis,
        })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn space(&self) -> &RRSpace {
        &self.space
    }

    /// `φ(b_j)` for the basis `b_j` of `L(G)`.
    pub fn gen_rows(&self) -> &[Vec<u32>] {
        &self.gen_rows
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    /// Basis of `K = ker φ ⊆ L(G)`.
    pub fn kernel_basis(&self) -> &[RationalFunction] {
        &self.kernel_basis
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn k(&self) -> usize {
        self.code.k()
    }

    /// `l(G)`.
    pub fn l(&self) -> usize {
        self.space.dim()
    }

    /// `φ(f)` for `f ∈ L(G)`.
    pub fn codeword(&self, f: &RationalFunction) -> Result<Vec<u32>> {
        if !self.space.contains(f)? {
            return Err(Error::NotInRiemannRochSpace);
        }
        codeword(f, &self.spec.places)
    }
}

/// `G'` with coefficient `⌈n_P/p⌉` at each `P` with `n_P > 0`.
fn candidate_divisor(g: &Divisor, p: u64) -> Divisor {
    Divisor::from_pairs(
        g.iter()
            .filter(|(_, n)| *n > 0)
            .map(|(pl, n)| (pl.clone(), (n as u64).div_ceil(p) as i64)),
    )
}

/// Shared `F_p`-linear setting for degeneracy questions about `L(G)`:
/// every function is written over the common denominator `H'^p`, where `H'`
/// is the denominator of `L(G')`, and its numerator is flattened to
/// coordinates over `F_p`.
struct DegeneracyFrame {
    field: Field,
    prime: Field,
    den: Poly,
    width: usize,
    l: RRSpace,
    h: RRSpace,
}

impl DegeneracyFrame {
    fn new(field: &Field, g: &Divisor) -> Result<DegeneracyFrame> {
        let p = field.characteristic() as u64;
        let l = RRSpace::new(field, g)?;
        let h = RRSpace::new(field, &candidate_divisor(g, p))?;
        let den = h.denominator().pow(p);
        let mut frame = DegeneracyFrame {
            field: field.clone(),
            prime: field.prime_field(),
            den,
            width: 0,
            l,
            h,
        };
        // numerator degree bound over all generators that will be flattened
        let mut max_len = frame.den.codes().len();
        for f in frame.generators(1)?.into_iter().chain(frame.l_generators()) {
            max_len = max_len.max(f.codes().len());
        }
        frame.width = max_len;
        Ok(frame)
    }

    /// `F_p`-basis `ω_i = p^i` of `F_q`.
    fn omegas(&self) -> Vec<u32> {
        let p = self.field.characteristic();
        (0..self.field.degree()).map(|i| p.pow(i as u32)).collect()
    }

    fn numerator(&self, f: &RationalFunction) -> Result<Poly> {
        let (num, r) = f.numerator().checked_mul(&self.den)?.divmod(f.denominator())?;
        if !r.is_zero() {
            return Err(Error::NotInRiemannRochSpace);
        }
        Ok(num)
    }

    /// Numerators of `α((ω h_j)^p - ω h_j)` and of the constants `ω`.
    fn generators(&self, alpha: u32) -> Result<Vec<Poly>> {
        let p = self.field.characteristic() as u64;
        let mut out = Vec::new();
        for &w in &self.omegas() {
            for b in self.h.basis() {
                let wb = b.scale(w);
                let a = &wb.pow(p) - &wb;
                out.push(self.numerator(&a.scale(alpha))?);
            }
            out.push(self.den.scale(w));
        }
        Ok(out)
    }

    /// Numerators of the `F_p`-basis `ω b_j` of `L(G)`.
    fn l_generators(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        for &w in &self.omegas() {
            for b in self.l.basis() {
                out.push(self.numerator(&b.scale(w)).expect("L(G) ⊆ 1/H'^p · F_q[x]"));
            }
        }
        out
    }

    fn flatten(&self, f: &Poly) -> Vec<u32> {
        let s = self.field.degree();
        let mut v = Vec::with_capacity(self.width * s);
        for i in 0..self.width {
            v.extend(self.field.digits(f.coeff_code(i)));
        }
        v
    }

    fn span(&self, polys: &[Poly]) -> Subspace {
        let w = self.width * self.field.degree();
        Subspace::span(&self.prime, w, polys.iter().map(|f| self.flatten(f)))
    }

    fn nonzero_scalars(&self) -> impl Iterator<Item = u32> {
        1..self.field.order() as u32
    }
}

/// Whether `f = γ + α(h^p - h)` for some `γ ∈ F_q`, `α ∈ F_q^*` and `h ∈ F_q(x)`.
///
/// `h` ranges over `L(G')`, `G' = Σ_{n_P > 0} ⌈n_P/p⌉ P`, which holds every `h`
/// with `h^p - h ∈ L(G)`. For each `α` the set of such `f` is an `F_p`-space,
/// so the test is a membership problem over `F_p`.
pub fn is_degenerate(f: &RationalFunction, g: &Divisor) -> Result<bool> {
    let field = f.field().clone();
    if !in_rr_space(f, g)? {
        return Err(Error::NotInRiemannRochSpace);
    }
    let frame = DegeneracyFrame::new(&field, g)?;
    let target = frame.flatten(&frame.numerator(f)?);
    for alpha in frame.nonzero_scalars() {
        if frame.span(&frame.generators(alpha)?).contains(&target) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether `L(G)` has a non-constant element and all its non-constant
/// elements are non-degenerate.
///
/// For each `α`, the degenerate elements of `L(G)` form the `F_p`-space
/// `W_α ∩ L(G)`, which always contains the constants of `L(G)`; the space is
/// non-degenerate exactly when each intersection has no more than those.
pub fn space_nondegenerate(field: &Field, g: &Divisor) -> Result<bool> {
    let frame = DegeneracyFrame::new(field, g)?;
    let l_polys = frame.l_generators();
    let l = frame.span(&l_polys);
    let constants: Vec<Poly> = frame
        .omegas()
        .iter()
        .map(|&w| frame.den.scale(w))
        .collect();
    let const_in_l = l.intersection_dim(&frame.span(&constants));
    if l.dim() == const_in_l {
        return Ok(false);
    }
    for alpha in frame.nonzero_scalars() {
        let w = frame.span(&frame.generators(alpha)?);
        if l.intersection_dim(&w) > const_in_l {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Largest `|L(G)|` visited by [`space_nondegenerate_brute_force`].
pub const BRUTE_FORCE_LIMIT: u128 = 200_000;

/// Definition-level check of [`space_nondegenerate`]: test every
/// non-constant `f ∈ L(G)` whose first nonzero coordinate is 1.
pub fn space_nondegenerate_brute_force(field: &Field, g: &Divisor) -> Result<bool> {
    let l = RRSpace::new(field, g)?;
    let q = field.order() as u128;
    let total = q
        .checked_pow(l.dim() as u32)
        .filter(|&t| t <= BRUTE_FORCE_LIMIT)
        .ok_or(Error::EnumerationTooLarge(q.saturating_pow(l.dim() as u32)))?;
    let mut found_nonconstant = false;
    for idx in 0..total {
        let mut rest = idx;
        let coords: Vec<u32> = (0..l.dim())
            .map(|_| {
                let c = (rest % q) as u32;
                rest /= q;
                c
            })
            .collect();
        if coords.iter().find(|&&c| c != 0) != Some(&1) {
            continue;
        }
        let f = l.combination(&coords);
        if f.is_constant() {
            continue;
        }
        found_nonconstant = true;
        if is_degenerate(&f, g)? {
            return Ok(false);
        }
    }
    Ok(found_nonconstant)
}

/// The `p × m` grid of degree-`d` places over `F_p`, rows linked by `θ(x) = x + α`.
#[derive(Clone, Debug)]
pub struct QCGrid {
    pub p: u64,
    pub d: usize,
    /// `d^{-1} mod p`.
    pub alpha: u32,
    pub m: usize,
    pub rows: Vec<Vec<Place>>,
}

impl QCGrid {
    /// Row 0 holds the irreducibles with zero `x^{d-1}` coefficient in
    /// enumeration order; row `i + 1` is row `i` under `x ↦ x + α`.
    pub fn new(p: u64, d: usize) -> Result<QCGrid> {
        let fp = Field::prime(p)?;
        if d == 0 {
            return Err(Error::DegreeTooSmall);
        }
        if gcd(d as u64, p) != 1 {
            return Err(Error::GridNotCoprime { d, p: p as u32 });
        }
        let alpha = fp.inv(fp.int_code(d as i64)).expect("d invertible mod p");
        let row0: Vec<Poly> = Poly::irreducibles(&fp, d)
            .into_iter()
            .filter(|f| f.coeff_code(d - 1) == 0)
            .collect();
        let m = row0.len();
        let mut rows = Vec::with_capacity(p as usize);
        let mut cur = row0;
        for _ in 0..p {
            rows.push(cur.iter().cloned().map(Place::finite_unchecked).collect());
            cur = cur.iter().map(|f| f.shift(alpha)).collect();
        }
        Ok(QCGrid { p, d, alpha, m, rows })
    }

    /// Places flattened row by row.
    pub fn places(&self) -> Vec<Place> {
        self.rows.iter().flatten().cloned().collect()
    }

    pub fn field(&self) -> Field {
        Field::prime(self.p).expect("validated prime")
    }
}

/// The quasi-cyclic code `{(Tr_d(z(P_{i,j})))_{i,j} : z ∈ L(rP_∞)}`.
pub fn qc_family(p: u64, d: usize, r: i64) -> Result<(QCGrid, TraceCode)> {
    let grid = QCGrid::new(p, d)?;
    let spec = CodeSpec::new(
        &grid.field(),
        grid.places(),
        Divisor::from_place(Place::Infinity, r),
    )?;
    let code = TraceCode::build(spec)?;
    Ok((grid, code))
}

/// Cyclic shift of a vector by `m` positions (one grid row).
pub fn shift_by_rows(c: &[u32], m: usize) -> Result<Vec<u32>> {
    if m == 0 || !c.len().is_multiple_of(m) {
        return Err(Error::Dimension(format!(
            "length {} is not divisible by {m}",
            c.len()
        )));
    }
    Ok(shift_left(c, m))
}
