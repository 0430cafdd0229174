//! Exact analysis of linear codes over `F_q` and of mixed-alphabet codes
//! `C ⊆ Π F_{q^{β_i}}`.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::linalg::{Matrix, Subspace};
use crate::numtheory::divisors;

/// Largest number of codewords enumerated by [`LinearCode::weight_distribution`].
pub const ENUMERATION_LIMIT: u128 = 10_000_000;

/// A linear code over `F_q`, stored as a reduced echelon generator matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCode {
    space: Subspace,
}

impl LinearCode {
    pub fn from_generators<I: IntoIterator<Item = Vec<u32>>>(field: &Field, n: usize, rows: I) -> LinearCode {
        LinearCode {
            space: Subspace::span(field, n, rows),
        }
    }

    pub fn from_subspace(space: Subspace) -> LinearCode {
        LinearCode { space }
    }

    pub fn field(&self) -> &Field {
        self.space.field()
    }

    pub fn n(&self) -> usize {
        self.space.ambient()
    }

    pub fn k(&self) -> usize {
        self.space.dim()
    }

    pub fn generator(&self) -> &[Vec<u32>] {
        self.space.basis()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.space.contains(v)
    }

    /// Euclidean dual.
    pub fn dual(&self) -> LinearCode {
        LinearCode {
            space: self.space.dual(),
        }
    }

    /// Every codeword weight with its multiplicity, by enumerating all
    /// `q^k` messages split over `workers` threads.
    pub fn weight_distribution(&self, workers: usize) -> Result<BTreeMap<usize, u128>> {
        let hist = self.histogram(workers)?;
        Ok(hist
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c > 0)
            .collect())
    }

    /// Minimum Hamming weight of a nonzero codeword.
    pub fn min_distance(&self, workers: usize) -> Result<usize> {
        if self.k() == 0 {
            return Err(Error::ZeroDimensionalCode);
        }
        let hist = self.histogram(workers)?;
        Ok((1..hist.len()).find(|&w| hist[w] > 0).expect("a nonzero codeword exists"))
    }

    /// `n - k + 1 - d`.
    pub fn singleton_defect(&self, d: usize) -> i64 {
        self.n() as i64 - self.k() as i64 + 1 - d as i64
    }

    fn histogram(&self, workers: usize) -> Result<Vec<u128>> {
        let f = self.field();
        let q = f.order() as u128;
        let total = q
            .checked_pow(self.k() as u32)
            .filter(|&t| t <= ENUMERATION_LIMIT)
            .ok_or(Error::EnumerationTooLarge(q.saturating_pow(self.k() as u32)))?;
        let p = f.characteristic();
        // F_p generators ω_j · row_i, with ω_j = p^j the flat basis of F_q
        let mut gens = Vec::new();
        for row in self.generator() {
            let mut w = 1u32;
            for _ in 0..f.degree() {
                gens.push(row.iter().map(|&c| f.mul(c, w)).collect::<Vec<u32>>());
                w *= p;
            }
        }
        let n = self.n();
        let workers = workers.max(1).min(total as usize);
        let chunk = total.div_ceil(workers as u128);
        let run = |start: u128, end: u128| -> Vec<u128> {
            let mut hist = vec![0u128; n + 1];
            if start >= end {
                return hist;
            }
            let mut digits = vec![0u32; gens.len()];
            let mut rest = start;
            let mut word = vec![0u32; n];
            for (t, d) in digits.iter_mut().enumerate() {
                *d = (rest % p as u128) as u32;
                rest /= p as u128;
                for _ in 0..*d {
                    for (x, &g) in word.iter_mut().zip(&gens[t]) {
                        *x = f.add(*x, g);
                    }
                }
            }
            for _ in start..end {
                hist[word.iter().filter(|&&c| c != 0).count()] += 1;
                // odometer step: each touched digit adds its generator once
                for t in 0..digits.len() {
                    for (x, &g) in word.iter_mut().zip(&gens[t]) {
                        *x = f.add(*x, g);
                    }
                    digits[t] += 1;
                    if digits[t] < p {
                        break;
                    }
                    digits[t] = 0;
                }
            }
            hist
        };
        let parts: Vec<Vec<u128>> = if workers == 1 {
            vec![run(0, total)]
        } else {
            std::thread::scope(|s| {
                let handles: Vec<_> = (0..workers as u128)
                    .map(|w| {
                        let run = &run;
                        let (a, b) = (w * chunk, ((w + 1) * chunk).min(total));
                        s.spawn(move || run(a, b))
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
            })
        };
        let mut hist = vec![0u128; n + 1];
        for part in parts {
            for (h, c) in hist.iter_mut().zip(part) {
                *h += c;
            }
        }
        Ok(hist)
    }

    /// All divisors `l` of `n` such that the cyclic shift by `l` positions
    /// maps the code to itself.
    pub fn quasicyclic_indices(&self) -> Vec<usize> {
        let n = self.n();
        if n == 0 {
            return Vec::new();
        }
        divisors(n as u64)
            .into_iter()
            .map(|l| l as usize)
            .filter(|&l| {
                self.generator()
                    .iter()
                    .all(|row| self.contains(&shift_left(row, l)))
            })
            .collect()
    }
}

/// Cyclic left shift by `l` positions.
pub fn shift_left(v: &[u32], l: usize) -> Vec<u32> {
    if v.is_empty() {
        return Vec::new();
    }
    let l = l % v.len();
    v[l..].iter().chain(&v[..l]).copied().collect()
}

/// Hamming weight.
pub fn weight(v: &[u32]) -> usize {
    v.iter().filter(|&&c| c != 0).count()
}

/// Summary of a code suitable for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
    pub weight_distribution: BTreeMap<usize, u128>,
    pub qc_indices: Vec<usize>,
    pub singleton_defect: Option<i64>,
}

/// Runs the exact analyses on one code.
pub fn analyze(code: &LinearCode, workers: usize) -> Result<AnalysisReport> {
    let wd = code.weight_distribution(workers)?;
    let d = wd.keys().copied().find(|&w| w > 0);
    Ok(AnalysisReport {
        n: code.n(),
        k: code.k(),
        d,
        weight_distribution: wd,
        qc_indices: code.quasicyclic_indices(),
        singleton_defect: d.map(|d| code.singleton_defect(d)),
    })
}

/// An `F_q`-subspace of `Π F_{q^{β_i}}`, flattened to `F_q^{Σβ_i}` through the
/// power basis of each coordinate field over `F_q`.
#[derive(Clone, Debug)]
pub struct MixedCode {
    base: Field,
    fields: Vec<Field>,
    offsets: Vec<usize>,
    space: Subspace,
}

/// Coordinate field `F_{q^β}` built as a single extension of `base`.
pub fn coordinate_field(base: &Field, beta: usize) -> Result<Field> {
    if beta == 1 {
        Ok(base.clone())
    } else {
        base.default_extension(beta)
    }
}

impl MixedCode {
    fn layout(base: &Field, fields: &[Field]) -> Result<Vec<usize>> {
        let mut offsets = vec![0];
        for f in fields {
            if f != base && f.base() != Some(base) {
                return Err(Error::FieldMismatch);
            }
            offsets.push(offsets.last().expect("nonempty") + MixedCode::beta_of(base, f));
        }
        Ok(offsets)
    }

    fn beta_of(base: &Field, f: &Field) -> usize {
        if f == base {
            1
        } else {
            f.top_degree()
        }
    }

    /// The `F_q`-span of the given tuples; coordinate `i` of each tuple lies in `fields[i]`.
    pub fn span(base: &Field, fields: Vec<Field>, gens: &[Vec<FieldElem>]) -> Result<MixedCode> {
        let offsets = MixedCode::layout(base, &fields)?;
        let width = *offsets.last().expect("nonempty");
        let mut rows = Vec::with_capacity(gens.len());
        for g in gens {
            rows.push(flatten(base, &fields, g)?);
        }
        Ok(MixedCode {
            base: base.clone(),
            fields,
            offsets,
            space: Subspace::span(base, width, rows),
        })
    }

    /// From an already flattened subspace of `F_q^{Σβ_i}`.
    pub fn from_flat(base: &Field, fields: Vec<Field>, space: Subspace) -> Result<MixedCode> {
        let offsets = MixedCode::layout(base, &fields)?;
        if space.ambient() != *offsets.last().expect("nonempty") || space.field() != base {
            return Err(Error::Dimension("flat width differs from Σβ_i".into()));
        }
        Ok(MixedCode {
            base: base.clone(),
            fields,
            offsets,
            space,
        })
    }

    /// Uniformly random `dim`-generator code for the given `β` profile.
    pub fn random<R: Rng>(base: &Field, betas: &[usize], gens: usize, rng: &mut R) -> Result<MixedCode> {
        let fields = betas
            .iter()
            .map(|&b| coordinate_field(base, b))
            .collect::<Result<Vec<_>>>()?;
        let width: usize = betas.iter().sum();
        let q = base.order() as u32;
        let rows = (0..gens)
            .map(|_| (0..width).map(|_| rng.random_range(0..q)).collect())
            .collect::<Vec<Vec<u32>>>();
        MixedCode::from_flat(base, fields, Subspace::span(base, width, rows))
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn fields(&self) -> &[Field] {
        &self.fields
    }

    pub fn betas(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn n(&self) -> usize {
        self.fields.len()
    }

    /// `Σβ_i`.
    pub fn width(&self) -> usize {
        *self.offsets.last().expect("nonempty")
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn flat(&self) -> &Subspace {
        &self.space
    }

    /// Block-diagonal Gram matrix of `⟨u, v⟩_tr = Σ Tr_i(u_i v_i)` on the flat coordinates.
    pub fn trace_gram(&self) -> Result<Matrix> {
        let w = self.width();
        let q = self.base.order();
        let mut t = Matrix::zeros(&self.base, w, w);
        for (i, f) in self.fields.iter().enumerate() {
            let beta = self.offsets[i + 1] - self.offsets[i];
            let basis = power_basis(&self.base, f);
            for a in 0..beta {
                for b in 0..beta {
                    let e = f.elem(f.mul(basis[a], basis[b]));
                    let tr = e.trace_to_subfield(beta as u32, q)?.project_to(&self.base)?;
                    t.set(self.offsets[i] + a, self.offsets[i] + b, tr.code());
                }
            }
        }
        Ok(t)
    }

    /// `C^{⊥tr}`.
    pub fn trace_dual(&self) -> Result<MixedCode> {
        let w = self.width();
        let space = if self.dim() == 0 {
            Subspace::full(&self.base, w)
        } else {
            let gt = self.space.as_matrix().mul(&self.trace_gram()?)?;
            Subspace::span(&self.base, w, gt.kernel())
        };
        MixedCode::from_flat(&self.base, self.fields.clone(), space)
    }

    /// `C|_{F_q}`: codewords with every coordinate in `F_q`, as a code in `F_q^n`.
    pub fn restrict_subfield(&self) -> LinearCode {
        let n = self.n();
        if self.dim() == 0 {
            return LinearCode::from_generators(&self.base, n, std::iter::empty());
        }
        let g = self.space.as_matrix();
        let upper: Vec<usize> = (0..n)
            .flat_map(|i| self.offsets[i] + 1..self.offsets[i + 1])
            .collect();
        let mut proj = Matrix::zeros(&self.base, g.rows(), upper.len());
        for r in 0..g.rows() {
            for (c, &col) in upper.iter().enumerate() {
                proj.set(r, c, g.get(r, col));
            }
        }
        let combos = if upper.is_empty() {
            Matrix::identity(&self.base, g.rows()).to_rows()
        } else {
            proj.left_kernel()
        };
        let rows = combos.into_iter().map(|y| {
            let v = g.left_apply(&y);
            (0..n).map(|i| v[self.offsets[i]]).collect::<Vec<u32>>()
        });
        LinearCode::from_generators(&self.base, n, rows)
    }

    /// `σ(c) = (Tr_1(c_1), ..., Tr_n(c_n))` on a flat vector.
    pub fn sigma_flat(&self, v: &[u32]) -> Result<Vec<u32>> {
        let q = self.base.order();
        (0..self.n())
            .map(|i| {
                let f = &self.fields[i];
                let beta = self.offsets[i + 1] - self.offsets[i];
                let e = f.elem(unflatten_one(&self.base, f, &v[self.offsets[i]..self.offsets[i + 1]]));
                Ok(e.trace_to_subfield(beta as u32, q)?.project_to(&self.base)?.code())
            })
            .collect()
    }

    /// `σ(C)`.
    pub fn sigma(&self) -> Result<LinearCode> {
        let rows = self
            .space
            .basis()
            .iter()
            .map(|v| self.sigma_flat(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(LinearCode::from_generators(&self.base, self.n(), rows))
    }
}

/// `σ` on a tuple of residue-field elements.
pub fn sigma(c: &[FieldElem], base: &Field) -> Result<Vec<u32>> {
    let q = base.order();
    c.iter()
        .map(|e| {
            let beta = e.field().degree() / base.degree();
            Ok(e.trace_to_subfield(beta as u32, q)?.project_to(base)?.code())
        })
        .collect()
}

/// Codes of `1, t, ..., t^{β-1}` in a one-level extension (or `[1]` for the base).
fn power_basis(base: &Field, f: &Field) -> Vec<u32> {
    if f == base {
        return vec![1];
    }
    let q = base.order() as u32;
    (0..f.top_degree()).map(|a| q.pow(a as u32)).collect()
}

fn unflatten_one(base: &Field, f: &Field, coords: &[u32]) -> u32 {
    if f == base {
        return coords[0];
    }
    let q = base.order() as u32;
    coords.iter().rev().fold(0, |acc, &c| acc * q + c)
}

fn flatten(base: &Field, fields: &[Field], tuple: &[FieldElem]) -> Result<Vec<u32>> {
    if tuple.len() != fields.len() {
        return Err(Error::Dimension(format!(
            "tuple of length {} for {} coordinates",
            tuple.len(),
            fields.len()
        )));
    }
    let mut out = Vec::new();
    for (e, f) in tuple.iter().zip(fields) {
        if e.field() != f {
            return Err(Error::FieldMismatch);
        }
        if f == base {
            out.push(e.code());
        } else {
            out.extend(f.split_code(e.code()));
        }
    }
    Ok(out)
}

/// Largest `Σβ_i` accepted by [`check_delsarte`].
pub const DELSARTE_LIMIT: usize = 14;

/// Both sides of the trace-duality identity for one mixed code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DelsarteCheck {
    pub n: usize,
    pub width: usize,
    pub dim: usize,
    pub restricted_dual_dim: usize,
    pub sigma_trace_dual_dim: usize,
    pub sigma_dim: usize,
    /// `(C|_{F_q})^⊥ = σ(C^{⊥tr})` as subspaces.
    pub equal: bool,
    /// `dim σ(C) ≥ n - Σβ_i + dim C`.
    pub sigma_dim_bound_holds: bool,
}

pub fn check_delsarte(c: &MixedCode) -> Result<DelsarteCheck> {
    if c.width() > DELSARTE_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "Σβ_i = {} exceeds the limit {DELSARTE_LIMIT}",
            c.width()
        )));
    }
    let lhs = c.restrict_subfield().dual();
    let rhs = c.trace_dual()?.sigma()?;
    let sigma_dim = c.sigma()?.k();
    Ok(DelsarteCheck {
        n: c.n(),
        width: c.width(),
        dim: c.dim(),
        restricted_dual_dim: lhs.k(),
        sigma_trace_dual_dim: rhs.k(),
        sigma_dim,
        equal: lhs == rhs,
        sigma_dim_bound_holds: sigma_dim as i64 >= c.n() as i64 - c.width() as i64 + c.dim() as i64,
    })
}
