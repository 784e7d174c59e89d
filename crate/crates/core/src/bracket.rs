//! Reduced (top-term) Poisson bracket for constant Poisson tensors.
//!
//! The bracket is always assembled from [`differentiate`] and graded
//! products. The closed forms for the 2-torus in this module
//! ([`bracket_t2_product_oracle`], [`bracket_t2_fourier_oracle`]) are kept
//! as independent cross-checks and are never used by the chain complex.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::basis::{BasisKind, BasisWord, Coeff, LinearCombination};
use crate::error::{Error, Result};

/// `sum_{i <= m} d/dx_{2i-1} ^ d/dx_{2i}` on an `n`-dimensional space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PoissonStructure {
    n: usize,
    rank2m: usize,
    homogeneity: u32,
}

impl PoissonStructure {
    pub fn new(n: usize, rank2m: usize, homogeneity: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if homogeneity != 0 {
            return Err(Error::InvalidStructure(format!(
                "only constant tensors are supported, got homogeneity {homogeneity}"
            )));
        }
        if rank2m % 2 != 0 || rank2m == 0 || rank2m > n {
            return Err(Error::InvalidStructure(format!("rank {rank2m} must be even and in 2..={n}")));
        }
        Ok(PoissonStructure { n, rank2m, homogeneity })
    }

    /// Standard symplectic structure on an even-dimensional space.
    pub fn symplectic(n: usize) -> Result<Self> {
        Self::new(n, n, 0)
    }

    /// Pairing on the first `2m` coordinates of an `n`-dimensional space.
    pub fn degenerate(n: usize, m: usize) -> Result<Self> {
        Self::new(n, 2 * m, 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank2m
    }

    pub fn pairs(&self) -> usize {
        self.rank2m / 2
    }

    pub fn homogeneity(&self) -> u32 {
        self.homogeneity
    }

    pub fn is_symplectic(&self) -> bool {
        self.rank2m == self.n
    }

    fn check(&self, lc: &LinearCombination) -> Result<Option<BasisKind>> {
        let mut kind = None;
        for (w, _) in lc.iter() {
            if w.n() != self.n {
                return Err(Error::Mismatch(format!("word {w} lives in dimension {}, structure in {}", w.n(), self.n)));
            }
            match kind {
                None => kind = Some(w.kind()),
                Some(k) if k != w.kind() => return Err(Error::WrongKind { expected: k, got: w.kind() }),
                _ => {}
            }
        }
        Ok(kind)
    }
}

/// Top-degree part of the Poisson bracket `{F, G}`.
pub fn bracket_top(f: &LinearCombination, g: &LinearCombination, pi: &PoissonStructure) -> Result<LinearCombination> {
    let kf = pi.check(f)?;
    let kg = pi.check(g)?;
    if let (Some(a), Some(b)) = (kf, kg) {
        if a != b {
            return Err(Error::WrongKind { expected: a, got: b });
        }
    }
    let mut out = LinearCombination::new();
    if f.is_zero() || g.is_zero() {
        return Ok(out);
    }
    for i in 1..=pi.pairs() {
        let (p, q) = (2 * i - 1, 2 * i);
        let plus = f.derivative(p)?.mul(&g.derivative(q)?)?;
        let minus = f.derivative(q)?.mul(&g.derivative(p)?)?;
        out.add_scaled(&plus, Coeff::one());
        out.add_scaled(&minus, -Coeff::one());
    }
    Ok(out)
}

/// Bracket of two single words.
pub fn bracket_words(u: &BasisWord, v: &BasisWord, pi: &PoissonStructure) -> Result<LinearCombination> {
    bracket_top(&LinearCombination::from_word(u.clone()), &LinearCombination::from_word(v.clone()), pi)
}

fn det2(x: [u32; 2], y: [u32; 2]) -> i64 {
    x[0] as i64 * y[1] as i64 - x[1] as i64 * y[0] as i64
}

/// Closed-form bracket on the 2-torus in the product basis,
/// `{z[A;P], z[B;Q]} = (|A,B| + |A,Q| + |P,B| + |P,Q|) z[A+B-(1,1); P+Q+(1,1)]`
/// followed by reduction of cosine powers. Only defined when `A + B >= (1,1)`.
pub fn bracket_t2_product_oracle(a: [u32; 2], p: [u32; 2], b: [u32; 2], q: [u32; 2]) -> Result<LinearCombination> {
    if p.iter().chain(&q).any(|&x| x > 1) {
        return Err(Error::InvalidArgument("cos exponents must be 0 or 1".into()));
    }
    if a[0] + b[0] == 0 || a[1] + b[1] == 0 {
        return Err(Error::OutOfDomain(format!("A + B - (1,1) is negative for A={a:?}, B={b:?}")));
    }
    let coeff = det2(a, b) + det2(a, q) + det2(p, b) + det2(p, q);
    let mut sin = [a[0] + b[0] - 1, a[1] + b[1] - 1];
    let mut cos = [p[0] + q[0] + 1, p[1] + q[1] + 1];
    let mut sign = 1i64;
    for i in 0..2 {
        let k = cos[i] / 2;
        sin[i] += 2 * k;
        cos[i] -= 2 * k;
        if k % 2 == 1 {
            sign = -sign;
        }
    }
    let word = BasisWord::product(&sin, &cos)?;
    Ok(LinearCombination::from_term(word, Coeff::from_integer(sign * coeff)))
}

fn sign_class(x: i64) -> u8 {
    match x {
        0 => 0,
        x if x > 0 => 1,
        _ => 2,
    }
}

fn fourier2(c0: i64, c1: i64) -> BasisWord {
    BasisWord::fourier(&[c0 as i32, c1 as i32]).expect("two slots")
}

/// Closed-form bracket of `Z[a1,a2]` and `Z[b1,b2]` on the 2-torus, by the
/// signs of `a1*b1` and `a2*b2`.
pub fn bracket_t2_fourier_oracle(a: [i32; 2], b: [i32; 2]) -> LinearCombination {
    let (a1, a2, b1, b2) = (a[0] as i64, a[1] as i64, b[0] as i64, b[1] as i64);
    let (s1, s2) = (sign_class(a1 * b1), sign_class(a2 * b2));
    if s1 > s2 {
        // Swapping the coordinates negates the bracket.
        let swapped = bracket_t2_fourier_oracle([a[1], a[0]], [b[1], b[0]]);
        let mut out = LinearCombination::new();
        for (w, c) in swapped.iter() {
            let e = w.exponents();
            out.add_term(fourier2(e[1] as i64, e[0] as i64), -*c);
        }
        return out;
    }
    let abs1 = a1.abs() + b1.abs();
    let abs2 = a2.abs() + b2.abs();
    let term = |c: Coeff, w: BasisWord| LinearCombination::from_term(w, c);
    match (s1, s2) {
        (0, _) => {
            if a1 == 0 && b1 == 0 {
                return LinearCombination::new();
            }
            if a1 == 0 {
                return -&bracket_t2_fourier_oracle(b, a);
            }
            // a1 != 0, b1 == 0
            match s2 {
                0 => {
                    if b2 == 0 {
                        LinearCombination::new()
                    } else {
                        term(Coeff::from_integer(a1 * b2), fourier2(-a1, -b2))
                    }
                }
                1 => term(Coeff::new(a1 * b2, 2), fourier2(-a1, abs2)),
                _ => term(Coeff::new(-a1 * b2 * a2.signum(), 2), fourier2(-a1, -abs2)),
            }
        }
        (1, 1) => term(Coeff::new(a1 * b2 - a2 * b1, 4), fourier2(abs1, abs2)),
        (1, 2) => term(Coeff::new(-a2.signum() * (a1 * b2 + a2 * b1), 4), fourier2(abs1, -abs2)),
        (2, 2) => term(Coeff::new(-a1.signum() * a2.signum() * (a1 * b2 - a2 * b1), 4), fourier2(-abs1, -abs2)),
        _ => unreachable!("s1 <= s2 after normalization"),
    }
}

/// Four degree-`w` words spanning the cokernel of the bracket into `V_w`
/// on the 2-torus.
pub fn cokernel_witnesses_t2(w: u32, kind: BasisKind) -> Result<Vec<BasisWord>> {
    if w == 0 {
        return Err(Error::InvalidArgument("weight must be positive".into()));
    }
    let wi = w as i32;
    match kind {
        BasisKind::Product => Ok(vec![
            BasisWord::product(&[w, 0], &[0, 0])?,
            BasisWord::product(&[0, w], &[0, 0])?,
            BasisWord::product(&[0, w - 1], &[0, 1])?,
            BasisWord::product(&[w - 1, 0], &[1, 0])?,
        ]),
        BasisKind::Fourier => Ok(vec![
            BasisWord::fourier(&[wi, 0])?,
            BasisWord::fourier(&[-wi, 0])?,
            BasisWord::fourier(&[0, wi])?,
            BasisWord::fourier(&[0, -wi])?,
        ]),
        BasisKind::Polynomial => Err(Error::WrongKind { expected: BasisKind::Product, got: kind }),
    }
}

/// `true` when all words of the combination share one degree.
pub fn is_homogeneous(lc: &LinearCombination) -> bool {
    let mut it = lc.iter().map(|(w, _)| w.degree());
    match it.next() {
        None => true,
        Some(d) => it.all(|e| e == d),
    }
}
