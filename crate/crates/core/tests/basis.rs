mod common;

use common::{binom, brute_count_product, degree_part, eval_lc, fourier_full_product, leading_symbol, leading_symbol_lc};
use hamtorus::basis::{
    differentiate, dim_graded_piece, enumerate_graded_piece, multiply_top, psi_map, BasisKind, BasisWord, Coeff,
    LinearCombination,
};
use proptest::prelude::*;

fn product_word(n: usize, max_exp: u32) -> impl Strategy<Value = BasisWord> {
    (prop::collection::vec(0..=max_exp, n), prop::collection::vec(0..=1u32, n))
        .prop_map(|(a, b)| BasisWord::product(&a, &b).unwrap())
}

fn fourier_word(n: usize, max_abs: i32) -> impl Strategy<Value = BasisWord> {
    prop::collection::vec(-max_abs..=max_abs, n).prop_map(|c| BasisWord::fourier(&c).unwrap())
}

fn polynomial_word(n: usize, max_exp: u32) -> impl Strategy<Value = BasisWord> {
    prop::collection::vec(0..=max_exp, n).prop_map(|a| BasisWord::polynomial(&a).unwrap())
}

#[test]
fn dimension_examples() {
    assert_eq!(dim_graded_piece(2, 1, BasisKind::Product).unwrap(), 4);
    assert_eq!(dim_graded_piece(2, 3, BasisKind::Fourier).unwrap(), 12);
    assert_eq!(dim_graded_piece(4, 2, BasisKind::Product).unwrap(), 32);
    assert_eq!(dim_graded_piece(2, 0, BasisKind::Fourier).unwrap(), 1);
    assert_eq!(dim_graded_piece(2, 4, BasisKind::Polynomial).unwrap(), 5);
    assert!(dim_graded_piece(0, 1, BasisKind::Product).is_err());
}

/// Integer tuples of length `n` with absolute values summing to `k`.
fn brute_count_signed(n: usize, k: i32) -> u64 {
    if n == 0 {
        return u64::from(k == 0);
    }
    (-k..=k).map(|c| brute_count_signed(n - 1, k - c.abs())).sum()
}

#[test]
fn dimensions_match_brute_force() {
    for n in 1..=6 {
        for k in 0..=12u32 {
            let product = dim_graded_piece(n, k, BasisKind::Product).unwrap();
            let fourier = dim_graded_piece(n, k, BasisKind::Fourier).unwrap();
            let brute = brute_count_product(n, k);
            let signed = brute_count_signed(n, k as i32);
            assert_eq!(product, brute, "n={n} k={k}");
            assert_eq!(fourier, signed, "n={n} k={k}");
            assert_eq!(product, fourier, "n={n} k={k}");
            assert_eq!(enumerate_graded_piece(n, k, BasisKind::Product).unwrap().len() as u64, product);
            assert_eq!(enumerate_graded_piece(n, k, BasisKind::Fourier).unwrap().len() as u64, fourier);
            assert_eq!(dim_graded_piece(n, k, BasisKind::Polynomial).unwrap(), binom(n as u64 - 1 + k as u64, n as u64 - 1));
        }
    }
}

#[test]
fn psi_is_a_degree_preserving_bijection() {
    for n in 1..=4 {
        for k in 0..=8 {
            let fourier = enumerate_graded_piece(n, k, BasisKind::Fourier).unwrap();
            let mut hit = vec![false; fourier.len()];
            for u in enumerate_graded_piece(n, k, BasisKind::Product).unwrap().words() {
                let image = psi_map(u).unwrap();
                assert_eq!(image.degree(), k);
                let i = fourier.index_of(&image).expect("image in V_k");
                assert!(!hit[i], "{u} collides");
                hit[i] = true;
            }
            assert!(hit.iter().all(|&h| h));
        }
    }
    let u = BasisWord::product(&[2, 0], &[1, 0]).unwrap();
    assert_eq!(psi_map(&u).unwrap(), BasisWord::fourier(&[3, 0]).unwrap());
    let v = BasisWord::product(&[2, 3], &[0, 0]).unwrap();
    assert_eq!(psi_map(&v).unwrap(), BasisWord::fourier(&[-2, -3]).unwrap());
}

#[test]
fn enumeration_is_sorted_and_indexed() {
    let piece = enumerate_graded_piece(3, 4, BasisKind::Fourier).unwrap();
    for (i, w) in piece.words().iter().enumerate() {
        assert_eq!(piece.index_of(w), Some(i));
        assert_eq!(w.degree(), 4);
    }
    let raw: Vec<&[i32]> = piece.words().iter().map(|w| w.exponents()).collect();
    assert!(raw.windows(2).all(|p| p[0] < p[1]));
}

#[test]
fn fourier_oracle_is_numerically_exact() {
    let pts = [[0.3, 1.1], [2.0, -0.7], [-1.4, 0.25]];
    for a in -3..=3 {
        for b in -3..=3 {
            for c in -3..=3 {
                for d in -3..=3 {
                    let u = BasisWord::fourier(&[a, b]).unwrap();
                    let v = BasisWord::fourier(&[c, d]).unwrap();
                    let full = fourier_full_product(&u, &v);
                    for x in &pts {
                        let lhs = common::eval_word(&u, x) * common::eval_word(&v, x);
                        assert!((lhs - eval_lc(&full, x)).abs() < 1e-12);
                    }
                }
            }
        }
    }
}

#[test]
fn constant_is_the_unit() {
    for kind in [BasisKind::Product, BasisKind::Fourier, BasisKind::Polynomial] {
        let one = BasisWord::constant(kind, 3).unwrap();
        for u in enumerate_graded_piece(3, 2, kind).unwrap().words() {
            assert_eq!(multiply_top(&one, u).unwrap(), LinearCombination::from_word(u.clone()));
        }
    }
}

#[test]
fn modulation_example() {
    // sin x cos x * cos x = sin x cos^2 x, top part -sin^3 x
    let u = BasisWord::product(&[1], &[1]).unwrap();
    let v = BasisWord::product(&[0], &[1]).unwrap();
    let expect = LinearCombination::from_term(BasisWord::product(&[3], &[0]).unwrap(), Coeff::from_integer(-1));
    assert_eq!(multiply_top(&u, &v).unwrap(), expect);
}

#[test]
fn mismatched_words_are_rejected() {
    let p = BasisWord::product(&[1, 0], &[0, 0]).unwrap();
    let f = BasisWord::fourier(&[1, 0]).unwrap();
    let f3 = BasisWord::fourier(&[1, 0, 0]).unwrap();
    assert!(multiply_top(&p, &f).is_err());
    assert!(multiply_top(&f, &f3).is_err());
    assert!(differentiate(&f, 3).is_err());
    assert!(differentiate(&f, 0).is_err());
    assert!(BasisWord::product(&[1], &[2]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fourier_product_is_top_part_of_true_product(u in fourier_word(3, 4), v in fourier_word(3, 4)) {
        let top = degree_part(&fourier_full_product(&u, &v), u.degree() + v.degree());
        prop_assert_eq!(multiply_top(&u, &v).unwrap(), top);
    }

    #[test]
    fn leading_symbol_intertwines_products(u in product_word(3, 4), v in product_word(3, 4)) {
        let lhs = leading_symbol_lc(&multiply_top(&u, &v).unwrap());
        let l_u = leading_symbol(&u);
        let l_v = leading_symbol(&v);
        prop_assert_eq!(lhs, l_u.mul(&l_v).unwrap());
    }

    #[test]
    fn leading_symbol_intertwines_derivatives(u in product_word(3, 5), axis in 1usize..=3) {
        let lhs = leading_symbol_lc(&differentiate(&u, axis).unwrap());
        prop_assert_eq!(lhs, leading_symbol(&u).derivative(axis).unwrap());
    }

    #[test]
    fn fourier_derivative_is_exact(u in fourier_word(2, 5), axis in 1usize..=2, x in -3.0f64..3.0, y in -3.0f64..3.0) {
        let d = differentiate(&u, axis).unwrap();
        let h = 1e-5;
        let mut p = [x, y];
        let mut q = [x, y];
        p[axis - 1] += h;
        q[axis - 1] -= h;
        let numeric = (common::eval_word(&u, &p) - common::eval_word(&u, &q)) / (2.0 * h);
        prop_assert!((numeric - eval_lc(&d, &[x, y])).abs() < 1e-5);
    }

    #[test]
    fn polynomial_derivative_is_exact(u in polynomial_word(2, 5), axis in 1usize..=2, x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let d = differentiate(&u, axis).unwrap();
        let h = 1e-5;
        let mut p = [x, y];
        let mut q = [x, y];
        p[axis - 1] += h;
        q[axis - 1] -= h;
        let numeric = (common::eval_word(&u, &p) - common::eval_word(&u, &q)) / (2.0 * h);
        prop_assert!((numeric - eval_lc(&d, &[x, y])).abs() < 1e-4);
    }

    #[test]
    fn graded_product_is_commutative_associative_and_additive(
        kind in prop::sample::select(vec![BasisKind::Product, BasisKind::Fourier, BasisKind::Polynomial]),
        seed in prop::collection::vec(0u32..1000, 3),
    ) {
        let pick = |s: u32| {
            let piece = enumerate_graded_piece(2, s % 5, kind).unwrap();
            piece.words()[(s as usize / 5) % piece.len()].clone()
        };
        let (u, v, w) = (pick(seed[0]), pick(seed[1]), pick(seed[2]));
        let uv = multiply_top(&u, &v).unwrap();
        prop_assert_eq!(&uv, &multiply_top(&v, &u).unwrap());
        prop_assert!(uv.iter().all(|(x, _)| x.degree() == u.degree() + v.degree()));
        let left = uv.mul(&LinearCombination::from_word(w.clone())).unwrap();
        let right = LinearCombination::from_word(u.clone()).mul(&multiply_top(&v, &w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn slot_degrees_add(u in product_word(3, 4), v in product_word(3, 4)) {
        for (w, _) in multiply_top(&u, &v).unwrap().iter() {
            for s in 1..=3 {
                prop_assert_eq!(w.slot_degree(s), u.slot_degree(s) + v.slot_degree(s));
            }
        }
    }

    #[test]
    fn linear_combination_arithmetic(u in fourier_word(2, 3), v in fourier_word(2, 3), a in -5i64..5, b in 1i64..5) {
        let f = LinearCombination::from_term(u.clone(), Coeff::new(a, b));
        let g = LinearCombination::from_word(v.clone());
        let sum = &f + &g;
        prop_assert!((&(&sum - &g) - &f).is_zero());
        prop_assert!((&sum + &(-&sum)).is_zero());
        prop_assert_eq!(f.scaled(Coeff::from_integer(0)), LinearCombination::new());
        prop_assert!(f.iter().all(|(_, c)| *c != Coeff::from_integer(0)));
    }
}
