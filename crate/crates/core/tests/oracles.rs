//! Cross-checks against independent brute-force oracles, plus property tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use orbiseif::presentation::build_nu_presentation;
use orbiseif::realize::SeifertData;
use orbiseif::zlattice::{elementary_ideal, smith_normal_form, solve_congruence, solve_linear, IntMatrix};
use orbiseif::{parse_signature, OrbifoldSignature};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Determinant by cofactor expansion, in i128 (entries here are tiny).
fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// gcd of all k×k minors.
fn minors_gcd(m: &[Vec<i128>], cols: usize, k: usize) -> i128 {
    let mut g = 0i128;
    for rs in subsets(m.len(), k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
            g = g.gcd(&det(&sub));
        }
    }
    g
}

#[test]
fn smith_form_matches_minor_gcds() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..400 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let density = rng.gen_range(0.2..1.0);
        let m: Vec<Vec<i128>> = (0..rows)
            .map(|_| (0..cols).map(|_| if rng.gen_bool(density) { rng.gen_range(-9..=9) } else { 0 }).collect())
            .collect();
        let mat =
            IntMatrix::from_rows(cols, &m.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect::<Vec<_>>())
                .unwrap();
        let d = smith_normal_form(&mat);
        assert_eq!(d.len(), rows.min(cols));
        for w in d.windows(2) {
            assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero(), "{d:?}");
        }
        for k in 1..=rows.min(cols) {
            let product: BigInt = d[..k].iter().product();
            assert_eq!(product, BigInt::from(minors_gcd(&m, cols, k)), "k = {k} for {m:?}");
        }
        for i in 0..cols {
            let e = elementary_ideal(&mat, i).unwrap();
            let k = cols - i;
            let expected = if k > rows { 0 } else { minors_gcd(&m, cols, k) };
            assert_eq!(e, BigInt::from(expected), "E{i} for {m:?}");
        }
    }
}

fn units_are_plus_minus_one(e: u64) -> bool {
    // ℤ/0 = ℤ has units ±1 only
    if e == 0 {
        return true;
    }
    (0..e).filter(|&u| u.gcd(&e) == 1).all(|u| u == 1 % e || u == e - 1)
}

#[test]
fn lemma1_agrees_with_units_oracle() {
    for e in 0..=200u64 {
        assert_eq!(orbiseif::verify::lemma1_exponent_condition(e), units_are_plus_minus_one(e), "e = {e}");
    }
}

fn triple_sig(p: u64, q: u64, r: u64) -> OrbifoldSignature {
    OrbifoldSignature::sphere(&[p, q, r]).unwrap()
}

fn order_and_coprime_exponent() -> impl Strategy<Value = (u64, i64)> {
    (2u64..=30).prop_flat_map(|p| {
        (Just(p), (-30i64..=30).prop_filter("coprime to the order", move |a| a.gcd(&(p as i64)) == 1))
    })
}

proptest! {
    #[test]
    fn triple_e0_closed_form(p in 2u64..=50, q in 2u64..=50, r in 2u64..=50,
                             a in -50i64..=50, b in -50i64..=50, c in -50i64..=50) {
        let d = SeifertData::triple(&triple_sig(p, q, r), [0, 1, 2], a, b, c).unwrap();
        let m = build_nu_presentation(&d).unwrap().abelianization_matrix();
        let (p, q, r) = (p as i128, q as i128, r as i128);
        let (a, b, c) = (a as i128, b as i128, c as i128);
        prop_assert_eq!(elementary_ideal(&m, 0).unwrap(), BigInt::from((a * q * r + b * p * r + c * p * q).abs()));
    }

    #[test]
    fn triple_e1_is_gcd_of_orders((p, a) in order_and_coprime_exponent(),
                                  (q, b) in order_and_coprime_exponent(),
                                  (r, c) in order_and_coprime_exponent()) {
        // with (a,p) = (b,q) = (c,r) = 1 the next ideal is generated by gcd(p,q,r)
        let d = SeifertData::triple(&triple_sig(p, q, r), [0, 1, 2], a, b, c).unwrap();
        let m = build_nu_presentation(&d).unwrap().abelianization_matrix();
        prop_assert_eq!(elementary_ideal(&m, 1).unwrap(), BigInt::from(p.gcd(&q).gcd(&r)));
    }

    #[test]
    fn solve_linear_is_exact(a in -10_000i64..=10_000, b in -10_000i64..=10_000, t in -10_000i64..=10_000) {
        let (a, b, t) = (BigInt::from(a), BigInt::from(b), BigInt::from(t));
        let g = a.gcd(&b);
        match solve_linear(&a, &b, &t) {
            Some((x, y)) => {
                prop_assert_eq!(&a * &x + &b * &y, t.clone());
                if !b.is_zero() {
                    prop_assert!(!x.is_negative() && x < (&b / &g).abs());
                }
            }
            None => prop_assert!(g.is_zero() && !t.is_zero() || !g.is_zero() && !(&t % &g).is_zero()),
        }
    }

    #[test]
    fn solve_congruence_is_exact(a in -500i64..=500, b in -500i64..=500, m in 1i64..=500) {
        let (a, b, m) = (BigInt::from(a), BigInt::from(b), BigInt::from(m));
        let solvable = b.is_multiple_of(&a.gcd(&m));
        match solve_congruence(&a, &b, &m) {
            Some(x) => {
                prop_assert!(solvable);
                prop_assert!((&a * &x - &b).is_multiple_of(&m));
                // least nonnegative solution
                for y in 0..x.to_string().parse::<i64>().unwrap() {
                    prop_assert!(!(&a * BigInt::from(y) - &b).is_multiple_of(&m));
                }
            }
            None => prop_assert!(!solvable),
        }
    }

    #[test]
    fn format_parse_round_trip(base in 0u8..3, cones in prop::collection::vec(2u64..1_000_000, 0..6),
                               corners in prop::collection::vec(2u64..1000, 0..5)) {
        let sig = match base {
            0 => OrbifoldSignature::sphere(&cones),
            1 => OrbifoldSignature::projective(&cones),
            _ => OrbifoldSignature::disc(&cones, &corners),
        };
        let sig = sig.unwrap();
        prop_assert_eq!(parse_signature(&sig.to_string()).unwrap(), sig);
    }

    #[test]
    fn parser_never_panics(text in "[SPD2(),; 0-9]{0,16}") {
        let _ = parse_signature(&text);
    }
}
