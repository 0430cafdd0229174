use proptest::prelude::*;

use trace_codes::bounds::Num;
use trace_codes::gf::artin_schreier_solve;
use trace_codes::{Divisor, Field, Poly};

const ORDERS: [u64; 14] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 121, 125, 343];

fn field_strategy() -> impl Strategy<Value = Field> {
    prop::sample::select(ORDERS.to_vec()).prop_map(|q| Field::with_order(q).unwrap())
}

fn poly_in(field: &Field, max_len: usize) -> impl Strategy<Value = Poly> {
    let f = field.clone();
    let q = field.order() as u32;
    prop::collection::vec(0..q, 0..max_len).prop_map(move |c| Poly::from_codes(&f, c))
}

fn field_and_polys() -> impl Strategy<Value = (Field, Poly, Poly)> {
    field_strategy().prop_flat_map(|f| (Just(f.clone()), poly_in(&f, 9), poly_in(&f, 6)))
}

proptest! {
    #[test]
    fn field_axioms(f in field_strategy(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let q = f.order() as u32;
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        } else {
            prop_assert!(f.inv(a).is_none());
        }
    }

    #[test]
    fn divmod_reconstructs((_f, a, b) in field_and_polys()) {
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&quo * &b) + &rem, a);
        if let Some(dr) = rem.degree() {
            prop_assert!(dr < b.degree().unwrap());
        }
    }

    #[test]
    fn gcd_divides_both((_f, a, b) in field_and_polys()) {
        prop_assume!(!a.is_zero() || !b.is_zero());
        let g = a.gcd(&b).unwrap();
        prop_assert!(g.is_monic());
        prop_assert!(a.rem(&g).unwrap().is_zero());
        prop_assert!(b.rem(&g).unwrap().is_zero());
    }

    #[test]
    fn evaluation_is_a_ring_map((f, a, b) in field_and_polys(), x in any::<u32>()) {
        let x = x % f.order() as u32;
        let prod = &a * &b;
        prop_assert_eq!(prod.eval_code(x), f.mul(a.eval_code(x), b.eval_code(x)));
        let sum = &a + &b;
        prop_assert_eq!(sum.eval_code(x), f.add(a.eval_code(x), b.eval_code(x)));
    }

    #[test]
    fn poly_text_round_trip((f, a, _b) in field_and_polys()) {
        let text = a.to_string();
        let back = trace_codes::text::parse_poly(&f, &text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn divisor_text_round_trip(a in -4i64..6, c in -3i64..4, shift in 0i64..5) {
        let f = Field::prime(5).unwrap();
        let sign = if c < 0 { "-" } else { "+" };
        let text = format!("{a}*Pinf {sign} {}*[x+{shift}]", c.abs());
        let d = Divisor::parse(&f, &text).unwrap();
        let again = Divisor::parse(&f, &d.to_string()).unwrap();
        prop_assert_eq!(&again, &d);
        prop_assert_eq!(d.degree(), a + c);
    }

    #[test]
    fn exact_arithmetic_stays_exact(n1 in -50i128..50, d1 in 1i128..20, n2 in -50i128..50, d2 in 1i128..20) {
        let a = Num::ratio(n1, d1);
        let b = Num::ratio(n2, d2);
        let s = a.clone() + b.clone();
        prop_assert!(s.is_exact());
        let want = num_rational::Ratio::new(n1, d1) + num_rational::Ratio::new(n2, d2);
        prop_assert_eq!(s.exact().unwrap(), want);
        let p = a.clone() * b.clone();
        prop_assert_eq!(p.exact().unwrap(), num_rational::Ratio::new(n1 * n2, d1 * d2));
        prop_assert!((a - b).is_exact());
    }

    #[test]
    fn root_powers_enclose_the_real_value(q in 2u64..50, num in 1u64..9, den in 1u64..5, k in -20i128..20) {
        let r = Num::root_pow(q, num, den);
        let real = (q as f64).powf(num as f64 / den as f64);
        let iv = r.interval();
        prop_assert!(iv.lo() <= real * (1.0 + 1e-15) && real * (1.0 - 1e-15) <= iv.hi());
        prop_assert!(iv.width() <= real * 1e-12);
        let mixed = (r * Num::int(k) + Num::ratio(1, 3)).interval();
        let approx = real * k as f64 + 1.0 / 3.0;
        prop_assert!(mixed.lo() <= approx + 1e-9 * approx.abs().max(1.0));
        prop_assert!(approx - 1e-9 * approx.abs().max(1.0) <= mixed.hi());
    }
}

/// Coordinates of `a·x` over the flat `F_p` basis, used as a matrix oracle
/// for the absolute trace.
fn matrix_trace(f: &Field, a: u32) -> u32 {
    let p = f.characteristic();
    let mut unit = 1u32;
    let mut tr = 0u32;
    for j in 0..f.degree() {
        let d = f.digits(f.mul(a, unit))[j];
        tr = (tr + d) % p;
        unit *= p;
    }
    tr
}

#[test]
fn exhaustive_small_field_identities() {
    for q in ORDERS {
        let f = Field::with_order(q).unwrap();
        let p = f.characteristic() as u64;
        for a in 0..q as u32 {
            assert_eq!(f.pow(a, q as u128), a, "a^Q = a in F_{q}");
            let e = f.elem(a);
            let abs = e.trace_to_subfield(f.degree() as u32, p).unwrap();
            assert_eq!(abs.code(), matrix_trace(&f, a), "absolute trace of {a} in F_{q}");
        }
    }
}

#[test]
fn trace_kernel_is_artin_schreier_image() {
    for q in ORDERS {
        let f = Field::with_order(q).unwrap();
        let p = f.characteristic() as u64;
        // every subfield F_s with s^m = Q
        let mut s = p;
        while s < q {
            if (1..=f.degree()).any(|m| (s as u128).pow(m as u32) == q as u128) {
                let m = (q as f64).log(s as f64).round() as u32;
                let image: std::collections::BTreeSet<u32> =
                    (0..q as u32).map(|y| f.sub(f.pow(y, s as u128), y)).collect();
                let mut kernel = 0;
                for a in 0..q as u32 {
                    let e = f.elem(a);
                    let zero_trace = e.trace_to_subfield(m, s).unwrap().is_zero();
                    assert_eq!(zero_trace, image.contains(&a), "F_{q} over F_{s}, a = {a}");
                    kernel += zero_trace as u64;
                    match artin_schreier_solve(&e, s).unwrap() {
                        Some(y) => {
                            assert!(zero_trace);
                            assert_eq!(f.sub(f.pow(y.code(), s as u128), y.code()), a);
                        }
                        None => assert!(!zero_trace),
                    }
                }
                assert_eq!(kernel, q / s);
            }
            s *= p;
        }
    }
}

#[test]
fn trace_values_lie_in_the_subfield() {
    for q in [4u64, 8, 9, 16, 25, 27, 49, 125] {
        let f = Field::with_order(q).unwrap();
        let p = f.characteristic() as u64;
        for a in 0..q as u32 {
            let t = f.elem(a).trace_to_subfield(f.degree() as u32, p).unwrap();
            assert_eq!(f.pow(t.code(), p as u128), t.code());
        }
    }
}
