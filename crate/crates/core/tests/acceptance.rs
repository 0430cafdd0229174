//! Acceptance criteria. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion fails.

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use trace_codes::analysis::{check_delsarte, MixedCode};
use trace_codes::bounds::{
    br_interval_classic, br_interval_refined, mindist_degree_one_terms, mindist_rational_terms, Num,
    Verdict,
};
use trace_codes::funcfield::{count_places, Divisor, Place};
use trace_codes::poly::{
    artin_schreier_poly, artin_schreier_shape, count_irreducibles, count_irreducibles_trace, ArtinSchreierShape,
    TraceClass,
};
use trace_codes::repro::{example_3_6, Ordering};
use trace_codes::sweep::{run_sweep, SweepConfig, SweepReport};
use trace_codes::{CodeSpec, Field, FieldElem, Poly, Subspace, TraceCode};

const EXAMPLE_TIME_LIMIT: Duration = Duration::from_secs(5);
const COUNTING_TIME_LIMIT: Duration = Duration::from_secs(60);
const SWEEP_SEED: u64 = 2024;
const SWEEP_SIZE: usize = 100;
const DELSARTE_SEED: u64 = 61;
const DELSARTE_CASES: usize = 200;
const DELSARTE_MAX_WIDTH: usize = 12;
const TERM_TOLERANCE: f64 = 1e-9;

type Outcome = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// independent oracles

/// Monic irreducibles of degree `d` as coefficient vectors: everything that is
/// not a product of two monic polynomials of positive degree.
fn sieve_irreducibles(field: &Field, d: usize) -> Vec<Vec<u32>> {
    let mut reducible: HashSet<Vec<u32>> = HashSet::new();
    for i in 1..=d / 2 {
        let left: Vec<Poly> = Poly::monic_of_degree(field, i).collect();
        let right: Vec<Poly> = Poly::monic_of_degree(field, d - i).collect();
        for a in &left {
            for b in &right {
                reducible.insert((a * b).codes().to_vec());
            }
        }
    }
    Poly::monic_of_degree(field, d)
        .map(|f| f.codes().to_vec())
        .filter(|c| !reducible.contains(c))
        .collect()
}

/// `Σ_j a^{q^j}` for `j < m`.
fn trace_by_powers(a: &FieldElem, q: u64, m: u32) -> FieldElem {
    let f = a.field();
    let mut acc = 0;
    let mut x = a.code();
    for _ in 0..m {
        acc = f.add(acc, x);
        x = f.pow(x, q as u128);
    }
    f.elem(acc)
}

// ---------------------------------------------------------------------------
// criteria

fn example_reproduction() -> Outcome {
    let start = Instant::now();
    let r = example_3_6(&[Ordering::Printed, Ordering::Theta], 1).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    for c in &r.checks {
        ensure(c.pass, || format!("{}: expected {}, got {}", c.name, c.expected, c.actual))?;
    }
    let theta = r
        .orderings
        .iter()
        .find(|o| o.ordering == Ordering::Theta)
        .ok_or("missing theta ordering")?;
    let got = (theta.n, theta.k, theta.d, theta.singleton_defect, theta.qc_index);
    ensure(got == (10, 3, Some(7), Some(1), Some(2)), || format!("got {got:?}"))?;
    ensure(theta.weight_distribution.values().sum::<u128>() == 125, || "codeword count".into())?;
    ensure(elapsed < EXAMPLE_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("n=10 k=3 d=7 defect=1 qc=2 in {elapsed:.2?}"))
}

fn counting_formulas() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for q in [2u64, 3, 4, 5, 7, 9] {
        let field = Field::with_order(q).map_err(|e| e.to_string())?;
        for d in 1..=4usize {
            let irr = sieve_irreducibles(&field, d);
            let total = count_irreducibles(d as u64, q).map_err(|e| e.to_string())?;
            ensure(irr.len() as i128 == total, || format!("q={q} d={d}: {} vs {total}", irr.len()))?;
            let mut by_trace: BTreeMap<u32, i128> = (0..q as u32).map(|g| (g, 0)).collect();
            for c in &irr {
                *by_trace.get_mut(&c[d - 1]).unwrap() += 1;
            }
            let zero = count_irreducibles_trace(d as u64, q, TraceClass::Zero).map_err(|e| e.to_string())?;
            let nonzero =
                count_irreducibles_trace(d as u64, q, TraceClass::NonZero).map_err(|e| e.to_string())?;
            for (g, n) in by_trace {
                let expect = if g == 0 { zero } else { nonzero };
                ensure(n == expect, || format!("q={q} d={d} trace code {g}: {n} vs {expect}"))?;
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < COUNTING_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!("{checked} (q, d) pairs in {elapsed:.2?}"))
}

fn genus_zero_place_counts() -> Outcome {
    let mut checked = 0;
    let mut outside = Vec::new();
    for q in [2u64, 3, 4, 5, 7] {
        let field = Field::with_order(q).map_err(|e| e.to_string())?;
        for r in 1..=5u64 {
            let brute = sieve_irreducibles(&field, r as usize).len() as i128 + i128::from(r == 1);
            let b = count_places(q, r).map_err(|e| e.to_string())?;
            ensure(b == brute, || format!("q={q} r={r}: {b} vs enumeration {brute}"))?;
            let (lo, hi) = br_interval_refined(q, 0, r).map_err(|e| e.to_string())?;
            ensure(lo == Num::int(b) && hi == Num::int(b), || format!("q={q} r={r}: refined {lo}..{hi}"))?;
            let (lo, hi) = br_interval_classic(q, 0, r).map_err(|e| e.to_string())?;
            let inside = matches!(lo.cmp_int(b), Some(std::cmp::Ordering::Less | std::cmp::Ordering::Equal))
                && matches!(hi.cmp_int(b), Some(std::cmp::Ordering::Greater | std::cmp::Ordering::Equal));
            if !inside {
                outside.push(format!("q={q} r={r}: B={b} not in [{lo}, {hi}]"));
            }
            checked += 1;
        }
    }
    ensure(outside.is_empty(), || {
        format!(
            "exact counts and refined centers agree on all {checked} pairs, but the classic interval misses {}",
            outside.join("; ")
        )
    })?;
    Ok(format!("{checked} (q, r) pairs"))
}

fn artin_schreier_structure() -> Outcome {
    let mut checked = 0;
    for q in [2u64, 3, 4, 5] {
        let base = Field::with_order(q).map_err(|e| e.to_string())?;
        let p = base.characteristic() as usize;
        let mut m = 1u32;
        while (q as u128).pow(m) <= 125 {
            let field = if m == 1 {
                base.clone()
            } else {
                base.default_extension(m as usize).map_err(|e| e.to_string())?
            };
            for alpha in field.elements() {
                let poly = artin_schreier_poly(&alpha, q);
                let roots = field.elements().filter(|y| poly.eval(y).unwrap().is_zero()).count();
                let trace_zero = trace_by_powers(&alpha, q, m).is_zero();
                let shape = artin_schreier_shape(&alpha, q, m).map_err(|e| e.to_string())?;
                let ctx = || format!("q={q} m={m} alpha={}", alpha.code());
                match &shape {
                    ArtinSchreierShape::SplitsLinear { roots: rs } => {
                        ensure(trace_zero && roots == q as usize && rs.len() == q as usize, ctx)?;
                    }
                    ArtinSchreierShape::FactorsDegreeP { factors } => {
                        ensure(!trace_zero && roots == 0, ctx)?;
                        ensure(factors.len() == q as usize / p, ctx)?;
                        for f in factors {
                            ensure(f.degree() == Some(p) && f.is_irreducible().unwrap(), ctx)?;
                        }
                    }
                }
                ensure(shape.product(&field).codes() == poly.codes(), ctx)?;
                checked += 1;
            }
            m += 1;
        }
    }
    Ok(format!("{checked} elements"))
}

fn delsarte_duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DELSARTE_SEED);
    let mut oracle_checked = 0;
    for case in 0..DELSARTE_CASES {
        let q = *[2u64, 3, 5].choose(&mut rng).unwrap();
        let base = Field::prime(q).map_err(|e| e.to_string())?;
        let n = rng.random_range(1..=5usize);
        let mut betas: Vec<usize> = (0..n).map(|_| rng.random_range(1..=4)).collect();
        while betas.iter().sum::<usize>() > DELSARTE_MAX_WIDTH {
            betas.pop();
        }
        let width: usize = betas.iter().sum();
        let gens = rng.random_range(0..=width.min(4));
        let c = MixedCode::random(&base, &betas, gens, &mut rng).map_err(|e| e.to_string())?;
        let chk = check_delsarte(&c).map_err(|e| e.to_string())?;
        ensure(chk.equal, || format!("case {case}: subspaces differ {chk:?}"))?;
        ensure(chk.sigma_dim_bound_holds, || format!("case {case}: dimension inequality {chk:?}"))?;

        // Oracle for the restriction: enumerate C and keep the F_q-rational words.
        let total = (q as u128).pow(c.dim() as u32);
        if total <= 20_000 {
            let rational = rational_words(&c, &base);
            let span = Subspace::span(&base, c.n(), rational);
            ensure(span == *c.restrict_subfield().subspace(), || format!("case {case}: restriction"))?;
            oracle_checked += 1;
        }
    }
    Ok(format!("{DELSARTE_CASES} codes, {oracle_checked} restrictions by enumeration"))
}

/// Words of `C` whose every coordinate lies in `F_q`, as vectors over `F_q`.
fn rational_words(c: &MixedCode, base: &Field) -> Vec<Vec<u32>> {
    let q = base.order() as u32;
    let basis = c.flat().basis().to_vec();
    let mut out = Vec::new();
    let mut coeffs = vec![0u32; basis.len()];
    loop {
        let mut v = vec![0u32; c.width()];
        for (a, row) in coeffs.iter().zip(&basis) {
            for (x, y) in v.iter_mut().zip(row) {
                *x = base.add(*x, base.mul(*a, *y));
            }
        }
        // power-basis digits: coordinate i is rational iff digits 1.. vanish
        let mut word = Vec::with_capacity(c.n());
        let mut pos = 0;
        let mut ok = true;
        for f in c.fields() {
            let w = f.order().ilog(base.order()) as usize;
            ok &= v[pos + 1..pos + w].iter().all(|&x| x == 0);
            word.push(v[pos]);
            pos += w;
        }
        if ok {
            out.push(word);
        }
        let mut i = 0;
        loop {
            if i == coeffs.len() {
                return out;
            }
            coeffs[i] += 1;
            if coeffs[i] < q {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

fn sweep() -> SweepReport {
    run_sweep(&SweepConfig::new(SWEEP_SEED, SWEEP_SIZE)).expect("sweep runs")
}

fn dimension_bounds(report: &SweepReport) -> Outcome {
    let mut exact_hits = 0;
    for c in &report.cases {
        ensure(c.g_degree_below_beta_sum(), || format!("case {}: deg G ≥ Σβ", c.index))?;
        ensure(c.k <= c.l, || format!("case {}: k = {} > l = {}", c.index, c.k, c.l))?;
        for b in &c.bounds {
            match b.name.as_str() {
                "rr_dimension" | "dimension_upper" => {
                    ensure(b.verdict == Verdict::Holds, || format!("case {}: {} {}", c.index, b.name, b.verdict))?;
                }
                "exact_dimension_uniform" | "exact_dimension_mixed" => {
                    ensure(
                        matches!(b.verdict, Verdict::Holds | Verdict::Vacuous),
                        || format!("case {}: {} {} (k = {}, l = {})", c.index, b.name, b.verdict, c.k, c.l),
                    )?;
                    if b.verdict == Verdict::Holds {
                        exact_hits += 1;
                    }
                }
                _ => {}
            }
        }
    }
    Ok(format!("{} instances, {exact_hits} with k = l(G) forced", report.cases.len()))
}

fn distance_bounds(report: &SweepReport) -> Outcome {
    let mut applied = 0;
    let mut degree_one = 0;
    for c in &report.cases {
        for b in c.bounds.iter().filter(|b| b.name.starts_with("min_distance")) {
            let applicable = c.nondegenerate && c.l >= 2;
            ensure(
                b.verdict != Verdict::Violated && b.verdict != Verdict::Inconclusive,
                || format!("case {}: {} {} (d = {:?})", c.index, b.name, b.verdict, c.d),
            )?;
            if applicable && b.verdict == Verdict::Holds {
                applied += 1;
            }
            if b.name == "min_distance_rational" && b.hypotheses["beta"] == 1 {
                let s = b.hypotheses["s"].as_i64().unwrap() as i128;
                let (a, g0) = c.g_positive_degrees();
                let full = mindist_rational_terms(c.q, c.n, 1, s, a, g0).map_err(|e| e.to_string())?;
                let classic = mindist_degree_one_terms(c.q, c.n, s, a, g0).map_err(|e| e.to_string())?;
                for (i, (x, y)) in full.into_iter().zip(classic).enumerate() {
                    let diff = (x - y).interval();
                    ensure(diff.contains(0.0) && diff.width() < TERM_TOLERANCE, || {
                        format!("case {}: term {i} differs by {diff:?}", c.index)
                    })?;
                }
                degree_one += 1;
            }
        }
    }
    // Symbolic check of the degree-one reduction away from the sweep too.
    for (q, n, a, g0) in [(4u64, 3usize, 3i64, 2i64), (9, 7, 2, 1), (7, 5, 4, 3)] {
        let s = q as i128 + 1 - n as i128;
        let full = mindist_rational_terms(q, n, 1, s, a, g0).map_err(|e| e.to_string())?;
        let classic = mindist_degree_one_terms(q, n, s, a, g0).map_err(|e| e.to_string())?;
        for (x, y) in full.into_iter().zip(classic) {
            let diff = (x - y).interval();
            ensure(diff.contains(0.0) && diff.width() < TERM_TOLERANCE, || format!("q={q}: {diff:?}"))?;
        }
    }
    Ok(format!("{applied} positive bounds checked against d, {degree_one} degree-one reductions"))
}

trait CaseExt {
    fn g_degree_below_beta_sum(&self) -> bool;
    fn g_positive_degrees(&self) -> (i64, i64);
}

impl CaseExt for trace_codes::sweep::SweepCase {
    fn g_degree_below_beta_sum(&self) -> bool {
        let field = Field::with_order(self.q).unwrap();
        Divisor::parse(&field, &self.g).unwrap().degree() < self.beta_sum as i64
    }

    fn g_positive_degrees(&self) -> (i64, i64) {
        let field = Field::with_order(self.q).unwrap();
        let g = Divisor::parse(&field, &self.g).unwrap();
        (g.positive_part().degree(), g.positive_support().degree())
    }
}

/// Evaluation of `x^i Z(x)/H(x)` for `G = m P_∞ + Σ n_b (x − b)` at the points
/// `a`, computed with plain field arithmetic in `field` (which contains `F_q`).
fn goppa_rows(field: &Field, m: i64, finite: &[(u32, i64)], points: &[u32]) -> Vec<Vec<u32>> {
    let deg_h: i64 = finite.iter().filter(|(_, n)| *n > 0).map(|(_, n)| n).sum();
    let deg_z: i64 = finite.iter().filter(|(_, n)| *n < 0).map(|(_, n)| -n).sum();
    let top = m + deg_h - deg_z;
    if top < 0 {
        return Vec::new();
    }
    (0..=top as u128)
        .map(|i| {
            points
                .iter()
                .map(|&a| {
                    let mut v = field.pow(a, i);
                    for &(b, n) in finite {
                        let t = field.sub(a, b);
                        let e = n.unsigned_abs() as u128;
                        v = if n > 0 {
                            field.div(v, field.pow(t, e)).unwrap()
                        } else {
                            field.mul(v, field.pow(t, e))
                        };
                    }
                    v
                })
                .collect()
        })
        .collect()
}

fn classical_specialization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(311);
    let mut checked = 0;
    for q in [3u64, 4, 5, 9] {
        let fq = Field::with_order(q).map_err(|e| e.to_string())?;
        let fqq = fq.default_extension(2).map_err(|e| e.to_string())?;
        for _ in 0..10 {
            let mut pts: Vec<u32> = (0..q as u32).collect();
            pts.shuffle(&mut rng);
            let n_g = rng.random_range(0..=1usize);
            let finite: Vec<(u32, i64)> = pts[..n_g]
                .iter()
                .map(|&b| (b, *[-1i64, 1, 2].choose(&mut rng).unwrap()))
                .collect();
            let rest = &pts[n_g..];
            let n = rng.random_range(1..=rest.len());
            let mut points = rest[..n].to_vec();
            points.sort();
            let beta_sum = n as i64;
            let deg_finite: i64 = finite.iter().map(|(_, c)| c).sum();
            let m = rng.random_range(-1..=(beta_sum - 1 - deg_finite).max(-1));

            let mut g = Divisor::from_place(Place::Infinity, m);
            for &(b, c) in &finite {
                g.add_place(linear_place(&fq, b)?, c);
            }
            let places = points.iter().map(|&a| linear_place(&fq, a)).collect::<Result<Vec<_>, _>>()?;
            let spec = CodeSpec::new(&fq, places, g.clone()).map_err(|e| e.to_string())?;
            let code = TraceCode::build(spec).map_err(|e| e.to_string())?;

            let goppa = Subspace::span(&fq, n, goppa_rows(&fq, m, &finite, &points));
            ensure(*code.code().subspace() == goppa, || format!("q={q} G={g}: differs from the Goppa code"))?;

            // Trace of the same code built over F_{q^2}.
            let big_rows = goppa_rows(&fqq, m, &finite, &points);
            let lambdas = [fqq.one(), fqq.generator()];
            let mut traced: Vec<Vec<u32>> = Vec::new();
            for row in &big_rows {
                for l in &lambdas {
                    traced.push(
                        row.iter()
                            .map(|&c| {
                                let v = fqq.elem(fqq.mul(l.code(), c));
                                v.trace_to_subfield(2, q).unwrap().project_to(&fq).unwrap().code()
                            })
                            .collect(),
                    );
                }
            }
            let traced = Subspace::span(&fq, n, traced);
            ensure(*code.code().subspace() == traced, || format!("q={q} G={g}: differs from the traced code"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} degree-one configurations"))
}

fn linear_place(field: &Field, b: u32) -> std::result::Result<Place, String> {
    Place::finite(Poly::from_codes(field, vec![field.neg(b), 1])).map_err(|e| e.to_string())
}

fn threshold_discrepancy() -> Outcome {
    let r = example_3_6(&[Ordering::Theta], 1).map_err(|e| e.to_string())?;
    let t = &r.threshold;
    let literal = -15.0 + 2.0 * 5f64.sqrt();
    ensure(t.low <= literal && literal <= t.high, || format!("enclosure [{}, {}]", t.low, t.high))?;
    ensure((t.value - t.printed).abs() > 1.0, || "printed value reproduced".into())?;
    ensure(t.place_count == 10 && t.count_exceeds_threshold, || "B_2 > threshold".into())?;
    ensure(r.exact_dimension.verdict == Verdict::Holds, || format!("{:?}", r.exact_dimension))?;
    let th = &r.orderings[0];
    ensure(th.k == 3 && r.exact_dimension.hypotheses["l"] == 3, || "k = l(G) = 3".into())?;
    ensure(t.note.contains("3.96"), || "discrepancy note".into())?;
    Ok(format!("threshold {:.6} (printed {}), B_2 = 10, k = l(G) = 3", t.value, t.printed))
}

fn run(id: u32, title: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into()))
    });
    let elapsed = start.elapsed();
    match &result {
        Ok(detail) => println!("PASS [{id}] {title}: {detail} ({elapsed:.2?})"),
        Err(why) => println!("FAIL [{id}] {title}: {why} ({elapsed:.2?})"),
    }
    result.is_ok()
}

#[test]
fn acceptance() {
    let report = sweep();
    let results = [
        run(1, "worked example reproduction", example_reproduction),
        run(2, "irreducible counting formulas", counting_formulas),
        run(3, "genus-zero place counts", genus_zero_place_counts),
        run(4, "Artin-Schreier factorization", artin_schreier_structure),
        run(5, "Delsarte duality and dimension inequality", delsarte_duality),
        run(6, "dimension bounds on the sweep", || dimension_bounds(&report)),
        run(7, "minimum-distance bounds on the sweep", || distance_bounds(&report)),
        run(8, "degree-one specialization", classical_specialization),
        run(9, "threshold discrepancy note", threshold_discrepancy),
    ];
    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
