//! Independent oracles shared by the integration tests. Nothing here calls
//! into the algorithms it is used to check.
#![allow(dead_code)]

use std::collections::BTreeMap;

use hamtorus::basis::{BasisKind, BasisWord, Coeff, LinearCombination};
use hamtorus::SparseRationalMatrix;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Rank by dense Gaussian elimination over the rationals.
pub fn dense_rank(m: &SparseRationalMatrix) -> usize {
    let mut a = vec![vec![BigRational::zero(); m.cols()]; m.rows()];
    for (r, c, v) in m.entries() {
        a[*r as usize][*c as usize] = BigRational::new((*v.numer()).into(), (*v.denom()).into());
    }
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(p) = (rank..m.rows()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][col].clone();
        for r in 0..m.rows() {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] / &pivot;
                for c in col..m.cols() {
                    let x = &f * &a[rank][c];
                    a[r][c] -= x;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of sin/cos exponent tuples of total degree `k` on `T^n`, by brute
/// force over all tuples.
pub fn brute_count_product(n: usize, k: u32) -> u64 {
    // i < n walks the sine exponents, n <= i < 2n the cosine exponents
    fn go(i: usize, n: usize, rem: u32) -> u64 {
        if i == 2 * n {
            return u64::from(rem == 0);
        }
        let top = if i < n { rem } else { rem.min(1) };
        (0..=top).map(|e| go(i + 1, n, rem - e)).sum()
    }
    go(0, n, k)
}

/// Top-frequency component of a product word, written in the Fourier basis.
/// Per slot, `sin^a cos^b` with `d = a + b > 0` has leading part
/// `2^(1-d) (-1)^floor(a/2)` times `sin(dx)` (a odd) or `cos(dx)` (a even).
pub fn leading_symbol(u: &BasisWord) -> LinearCombination {
    assert_eq!(u.kind(), BasisKind::Product);
    let n = u.n();
    let e = u.exponents();
    let mut coeff = Coeff::one();
    let mut c = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (e[i], e[n + i]);
        let d = a + b;
        if d == 0 {
            c.push(0);
            continue;
        }
        coeff *= Coeff::new(1, 1i64 << (d - 1));
        if (a / 2) % 2 == 1 {
            coeff = -coeff;
        }
        c.push(if a % 2 == 1 { d } else { -d });
    }
    LinearCombination::from_term(BasisWord::fourier(&c).unwrap(), coeff)
}

pub fn leading_symbol_lc(f: &LinearCombination) -> LinearCombination {
    let mut out = LinearCombination::new();
    for (w, c) in f.iter() {
        out.add_scaled(&leading_symbol(w), *c);
    }
    out
}

/// One slot of a Fourier word as a map from signed index to coefficient.
type Slot = BTreeMap<i32, Coeff>;

fn slot_add(s: &mut Slot, idx: i32, c: Coeff) {
    let e = s.entry(idx).or_insert_with(Coeff::zero);
    *e += c;
    if e.is_zero() {
        s.remove(&idx);
    }
}

// sin(-f x) = -sin(f x), cos(-f x) = cos(f x)
fn sin_term(s: &mut Slot, freq: i32, c: Coeff) {
    match freq {
        0 => {}
        f if f > 0 => slot_add(s, f, c),
        f => slot_add(s, -f, -c),
    }
}

fn cos_term(s: &mut Slot, freq: i32, c: Coeff) {
    slot_add(s, -freq.abs(), c);
}

/// Exact product of two one-variable basis functions by product-to-sum.
fn slot_product(x: i32, y: i32) -> Slot {
    let half = Coeff::new(1, 2);
    let mut s = Slot::new();
    let (a, b) = (x.abs(), y.abs());
    match (x > 0, y > 0) {
        (true, true) => {
            cos_term(&mut s, a - b, half);
            cos_term(&mut s, a + b, -half);
        }
        (false, false) => {
            cos_term(&mut s, a - b, half);
            cos_term(&mut s, a + b, half);
        }
        (true, false) => {
            sin_term(&mut s, a + b, half);
            sin_term(&mut s, a - b, half);
        }
        (false, true) => {
            sin_term(&mut s, a + b, half);
            sin_term(&mut s, a - b, -half);
        }
    }
    s
}

/// Full product of two Fourier words as a combination of Fourier words.
pub fn fourier_full_product(u: &BasisWord, v: &BasisWord) -> LinearCombination {
    let (cu, cv) = (u.exponents(), v.exponents());
    let mut acc: Vec<(Vec<i32>, Coeff)> = vec![(Vec::new(), Coeff::one())];
    for i in 0..cu.len() {
        let slot = slot_product(cu[i], cv[i]);
        let mut next = Vec::new();
        for (prefix, c) in &acc {
            for (idx, d) in &slot {
                let mut p = prefix.clone();
                p.push(*idx);
                next.push((p, *c * *d));
            }
        }
        acc = next;
    }
    let mut out = LinearCombination::new();
    for (idx, c) in acc {
        out.add_term(BasisWord::fourier(&idx).unwrap(), c);
    }
    out
}

/// Terms of exactly the given degree.
pub fn degree_part(f: &LinearCombination, degree: u32) -> LinearCombination {
    let mut out = LinearCombination::new();
    for (w, c) in f.iter() {
        if w.degree() == degree {
            out.add_term(w.clone(), *c);
        }
    }
    out
}

/// Numerical value of a word at a point.
pub fn eval_word(u: &BasisWord, x: &[f64]) -> f64 {
    let e = u.exponents();
    match u.kind() {
        BasisKind::Product => {
            let n = u.n();
            (0..n).map(|i| x[i].sin().powi(e[i]) * x[i].cos().powi(e[n + i])).product()
        }
        BasisKind::Fourier => e
            .iter()
            .zip(x)
            .map(|(&c, &t)| if c > 0 { (c as f64 * t).sin() } else { (c.abs() as f64 * t).cos() })
            .product(),
        BasisKind::Polynomial => e.iter().zip(x).map(|(&a, &t)| t.powi(a)).product(),
    }
}

pub fn eval_lc(f: &LinearCombination, x: &[f64]) -> f64 {
    f.iter().map(|(w, c)| (*c.numer() as f64 / *c.denom() as f64) * eval_word(w, x)).sum()
}

/// Dimension of `C_{w,m}` as a sum over multiplicity vectors of products of
/// binomials, with the piece dimensions supplied by `cap`.
pub fn chain_dim_by_shapes(area: usize, length: usize, cap: &dyn Fn(usize) -> u64) -> u64 {
    fn go(j: usize, area: usize, length: usize, cap: &dyn Fn(usize) -> u64) -> u64 {
        if area == 0 {
            return u64::from(length == 0);
        }
        if j > area || length == 0 {
            return 0;
        }
        let mut total = 0;
        let mut k = 0;
        while k * j <= area && k <= length {
            total += binom(cap(j), k as u64) * go(j + 1, area - k * j, length - k, cap);
            k += 1;
        }
        total
    }
    go(1, area, length, cap)
}
