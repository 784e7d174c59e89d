//! Graded bases of the associated graded algebra of trigonometric
//! "polynomials" on the torus, plus ordinary polynomials on `R^n`.
//!
//! Three kinds of monomials are supported:
//!
//! * [`BasisKind::Product`]: `sin^a1 x1 ... sin^an xn * cos^b1 x1 ... cos^bn xn`
//!   with `a_i >= 0`, `b_i in {0,1}`. Exponents are stored as `[a1..an, b1..bn]`.
//! * [`BasisKind::Fourier`]: `s_1(c1 x1) ... s_n(cn xn)` where `s(c x)` is
//!   `sin(c x)` for `c > 0` and `cos(c x)` for `c <= 0`.
//! * [`BasisKind::Polynomial`]: `x1^a1 ... xn^an`.
//!
//! All arithmetic here happens in the associated graded algebra: a product
//! of homogeneous pieces of degrees `f` and `g` is projected onto degree
//! `f + g`, discarding everything of lower filtration.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_integer::binomial;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact coefficient type used by every linear combination.
pub type Coeff = Rational64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisKind {
    Product,
    Fourier,
    Polynomial,
}

impl BasisKind {
    pub fn is_torus(self) -> bool {
        !matches!(self, BasisKind::Polynomial)
    }
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisKind::Product => "product",
            BasisKind::Fourier => "fourier",
            BasisKind::Polynomial => "polynomial",
        })
    }
}

impl std::str::FromStr for BasisKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "product" => Ok(BasisKind::Product),
            "fourier" => Ok(BasisKind::Fourier),
            "polynomial" => Ok(BasisKind::Polynomial),
            other => Err(Error::InvalidArgument(format!("unknown basis kind `{other}`"))),
        }
    }
}

/// One monomial of one of the three bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisWord {
    kind: BasisKind,
    exps: Vec<i32>,
}

impl BasisWord {
    /// `sin^a * cos^b`, with `b_i in {0,1}`.
    pub fn product(a: &[u32], b: &[u32]) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        if a.len() != b.len() {
            return Err(Error::Mismatch(format!("sin part has {} slots, cos part {}", a.len(), b.len())));
        }
        if b.iter().any(|&x| x > 1) {
            return Err(Error::InvalidArgument("cos exponents must be 0 or 1".into()));
        }
        let exps = a.iter().chain(b).map(|&x| x as i32).collect();
        Ok(BasisWord { kind: BasisKind::Product, exps })
    }

    pub fn fourier(c: &[i32]) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        Ok(BasisWord { kind: BasisKind::Fourier, exps: c.to_vec() })
    }

    pub fn polynomial(a: &[u32]) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        Ok(BasisWord { kind: BasisKind::Polynomial, exps: a.iter().map(|&x| x as i32).collect() })
    }

    /// The unit (degree-0 word) of the given kind.
    pub fn constant(kind: BasisKind, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let len = if kind == BasisKind::Product { 2 * n } else { n };
        Ok(BasisWord { kind, exps: vec![0; len] })
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        match self.kind {
            BasisKind::Product => self.exps.len() / 2,
            _ => self.exps.len(),
        }
    }

    /// Raw exponent tuple (`[a.., b..]` for the product kind).
    pub fn exponents(&self) -> &[i32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        match self.kind {
            BasisKind::Fourier => self.exps.iter().map(|c| c.unsigned_abs()).sum(),
            _ => self.exps.iter().map(|&c| c as u32).sum(),
        }
    }

    /// Weight for a constant Poisson tensor: the degree on tori, degree
    /// minus two for polynomials.
    pub fn weight(&self) -> i64 {
        match self.kind {
            BasisKind::Polynomial => self.degree() as i64 - 2,
            _ => self.degree() as i64,
        }
    }

    /// Degree carried by one coordinate slot (1-based). This is additive
    /// under graded products and preserved by torus derivatives.
    pub fn slot_degree(&self, slot: usize) -> u32 {
        let i = slot - 1;
        match self.kind {
            BasisKind::Product => (self.exps[i] + self.exps[self.n() + i]) as u32,
            BasisKind::Fourier => self.exps[i].unsigned_abs(),
            BasisKind::Polynomial => self.exps[i] as u32,
        }
    }

    /// Word on `T^(n1+n2)` (or `R^(n1+n2)`) whose first slots come from
    /// `self` and remaining slots from `other`.
    pub fn join(&self, other: &BasisWord) -> Result<BasisWord> {
        if self.kind != other.kind {
            return Err(Error::WrongKind { expected: self.kind, got: other.kind });
        }
        let exps = match self.kind {
            BasisKind::Product => {
                let (n1, n2) = (self.n(), other.n());
                let mut e = Vec::with_capacity(2 * (n1 + n2));
                e.extend_from_slice(&self.exps[..n1]);
                e.extend_from_slice(&other.exps[..n2]);
                e.extend_from_slice(&self.exps[n1..]);
                e.extend_from_slice(&other.exps[n2..]);
                e
            }
            _ => self.exps.iter().chain(&other.exps).copied().collect(),
        };
        Ok(BasisWord { kind: self.kind, exps })
    }
}

impl Ord for BasisWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind
            .cmp(&other.kind)
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for BasisWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |xs: &[i32]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self.kind {
            BasisKind::Product => {
                let n = self.n();
                write!(f, "z[({}),({})]", list(&self.exps[..n]), list(&self.exps[n..]))
            }
            BasisKind::Fourier => write!(f, "Z[{}]", list(&self.exps)),
            BasisKind::Polynomial => write!(f, "x^({})", list(&self.exps)),
        }
    }
}

/// Finite formal sum of words with nonzero exact coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearCombination {
    terms: BTreeMap<BasisWord, Coeff>,
}

impl LinearCombination {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_word(word: BasisWord) -> Self {
        Self::from_term(word, Coeff::one())
    }

    pub fn from_term(word: BasisWord, coeff: Coeff) -> Self {
        let mut lc = Self::new();
        lc.add_term(word, coeff);
        lc
    }

    pub fn add_term(&mut self, word: BasisWord, coeff: Coeff) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = *e.get() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinearCombination, scale: Coeff) {
        if scale.is_zero() {
            return;
        }
        for (w, c) in &other.terms {
            self.add_term(w.clone(), *c * scale);
        }
    }

    pub fn scaled(&self, scale: Coeff) -> LinearCombination {
        let mut out = LinearCombination::new();
        out.add_scaled(self, scale);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &BasisWord) -> Coeff {
        self.terms.get(word).copied().unwrap_or_else(Coeff::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisWord, &Coeff)> {
        self.terms.iter()
    }

    /// Common degree of the terms, `None` when empty.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(BasisWord::degree)
    }

    /// Graded product of two combinations.
    pub fn mul(&self, other: &LinearCombination) -> Result<LinearCombination> {
        let mut out = LinearCombination::new();
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                let (c, w) = top_product(u, v)?;
                out.add_term(w, c * *cu * *cv);
            }
        }
        Ok(out)
    }

    pub fn derivative(&self, axis: usize) -> Result<LinearCombination> {
        let mut out = LinearCombination::new();
        for (u, cu) in &self.terms {
            if let Some((c, w)) = derive_word(u, axis)? {
                out.add_term(w, c * *cu);
            }
        }
        Ok(out)
    }
}

impl std::ops::Add for &LinearCombination {
    type Output = LinearCombination;

    fn add(self, rhs: Self) -> LinearCombination {
        let mut out = self.clone();
        out.add_scaled(rhs, Coeff::one());
        out
    }
}

impl std::ops::Sub for &LinearCombination {
    type Output = LinearCombination;

    fn sub(self, rhs: Self) -> LinearCombination {
        let mut out = self.clone();
        out.add_scaled(rhs, -Coeff::one());
        out
    }
}

impl std::ops::Neg for &LinearCombination {
    type Output = LinearCombination;

    fn neg(self) -> LinearCombination {
        self.scaled(-Coeff::one())
    }
}

impl fmt::Display for LinearCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}){w}")?;
        }
        Ok(())
    }
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        0
    } else {
        binomial(n, k)
    }
}

/// Dimension of the degree-`k` piece `V_k` of the given basis on an
/// `n`-dimensional torus (or `R^n` for polynomials).
pub fn dim_graded_piece(n: usize, k: u32, kind: BasisKind) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let (n, k) = (n as u64, k as u64);
    Ok(match kind {
        BasisKind::Product => (0..=k).map(|alpha| binom(n, alpha) * binom(n - 1 + k - alpha, n - 1)).sum(),
        BasisKind::Fourier => {
            if k == 0 {
                1
            } else {
                (1..=n.min(k)).map(|l| (binom(n, l) * binom(k - 1, l - 1)) << l).sum()
            }
        }
        BasisKind::Polynomial => binom(n - 1 + k, n - 1),
    })
}

/// Canonically ordered basis of one graded piece with an index map.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub n: usize,
    pub degree: u32,
    pub kind: BasisKind,
    words: Vec<BasisWord>,
    index: HashMap<BasisWord, usize>,
}

impl GradedPiece {
    pub fn words(&self) -> &[BasisWord] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, word: &BasisWord) -> Option<usize> {
        self.index.get(word).copied()
    }
}

/// Every word of degree `k`, in lexicographic order of the raw exponent tuple.
pub fn enumerate_graded_piece(n: usize, k: u32, kind: BasisKind) -> Result<GradedPiece> {
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let slots = if kind == BasisKind::Product { 2 * n } else { n };
    let mut words = Vec::new();
    let mut cur = Vec::with_capacity(slots);
    fill_slots(kind, n, slots, k as i32, &mut cur, &mut words);
    let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    Ok(GradedPiece { n, degree: k, kind, words, index })
}

fn fill_slots(kind: BasisKind, n: usize, slots: usize, rem: i32, cur: &mut Vec<i32>, out: &mut Vec<BasisWord>) {
    let pos = cur.len();
    if pos == slots {
        if rem == 0 {
            out.push(BasisWord { kind, exps: cur.clone() });
        }
        return;
    }
    let range: Vec<i32> = match kind {
        BasisKind::Product if pos >= n => (0..=rem.min(1)).collect(),
        BasisKind::Fourier => (-rem..=rem).collect(),
        _ => (0..=rem).collect(),
    };
    for v in range {
        cur.push(v);
        fill_slots(kind, n, slots, rem - v.abs(), cur, out);
        cur.pop();
    }
}

/// Slot-wise bijection from product-basis indices to Fourier indices:
/// `(a, 1) -> a + 1`, `(a, 0) -> -a`.
pub fn psi_map(word: &BasisWord) -> Result<BasisWord> {
    if word.kind != BasisKind::Product {
        return Err(Error::WrongKind { expected: BasisKind::Product, got: word.kind });
    }
    let n = word.n();
    let c = (0..n)
        .map(|i| {
            let (a, b) = (word.exps[i], word.exps[n + i]);
            if b == 1 {
                a + 1
            } else {
                -a
            }
        })
        .collect();
    Ok(BasisWord { kind: BasisKind::Fourier, exps: c })
}

fn check_compatible(u: &BasisWord, v: &BasisWord) -> Result<()> {
    if u.kind != v.kind {
        return Err(Error::WrongKind { expected: u.kind, got: v.kind });
    }
    if u.exps.len() != v.exps.len() {
        return Err(Error::Mismatch(format!("dimension {} vs {}", u.n(), v.n())));
    }
    Ok(())
}

/// Top-degree part of `u * v` as a single signed word.
fn top_product(u: &BasisWord, v: &BasisWord) -> Result<(Coeff, BasisWord)> {
    check_compatible(u, v)?;
    let mut coeff = Coeff::one();
    let exps = match u.kind {
        BasisKind::Product => {
            let n = u.n();
            let mut e: Vec<i32> = u.exps.iter().zip(&v.exps).map(|(x, y)| x + y).collect();
            // cos^2 = 1 - sin^2, keep only -sin^2
            for i in 0..n {
                if e[n + i] == 2 {
                    e[i] += 2;
                    e[n + i] = 0;
                    coeff = -coeff;
                }
            }
            e
        }
        BasisKind::Fourier => u
            .exps
            .iter()
            .zip(&v.exps)
            .map(|(&a, &b)| {
                let (phi, psi) = fourier_rule(a, b);
                coeff *= phi;
                psi
            })
            .collect(),
        BasisKind::Polynomial => u.exps.iter().zip(&v.exps).map(|(x, y)| x + y).collect(),
    };
    Ok((coeff, BasisWord { kind: u.kind, exps }))
}

/// One-dimensional Fourier product rule: `(phi, psi)` with
/// `Z[a] Z[b] = phi Z[psi]` in the top degree.
fn fourier_rule(a: i32, b: i32) -> (Coeff, i32) {
    let ab = a as i64 * b as i64;
    match ab.cmp(&0) {
        Ordering::Equal => (Coeff::one(), a + b),
        Ordering::Greater => (Coeff::new(-(a.signum() as i64), 2), -(a.abs() + b.abs())),
        Ordering::Less => (Coeff::new(1, 2), a.abs() + b.abs()),
    }
}

/// Graded product of two words of the same kind and dimension.
pub fn multiply_top(u: &BasisWord, v: &BasisWord) -> Result<LinearCombination> {
    let (c, w) = top_product(u, v)?;
    Ok(LinearCombination::from_term(w, c))
}

fn derive_word(u: &BasisWord, axis: usize) -> Result<Option<(Coeff, BasisWord)>> {
    let n = u.n();
    if axis == 0 || axis > n {
        return Err(Error::AxisOutOfRange { axis, n });
    }
    let i = axis - 1;
    let mut exps = u.exps.clone();
    let coeff = match u.kind {
        BasisKind::Product => {
            let (a, b) = (exps[i], exps[n + i]);
            if a + b == 0 {
                return Ok(None);
            }
            exps[i] = a + 2 * b - 1;
            exps[n + i] = 1 - b;
            let c = (a + b) as i64;
            if b == 1 {
                -c
            } else {
                c
            }
        }
        BasisKind::Fourier => {
            let c = exps[i];
            if c == 0 {
                return Ok(None);
            }
            exps[i] = -c;
            c as i64
        }
        BasisKind::Polynomial => {
            let a = exps[i];
            if a == 0 {
                return Ok(None);
            }
            exps[i] = a - 1;
            a as i64
        }
    };
    Ok(Some((Coeff::from_integer(coeff), BasisWord { kind: u.kind, exps })))
}

/// Partial derivative along the 1-based `axis`, projected to the top degree.
pub fn differentiate(u: &BasisWord, axis: usize) -> Result<LinearCombination> {
    Ok(match derive_word(u, axis)? {
        Some((c, w)) => LinearCombination::from_term(w, c),
        None => LinearCombination::new(),
    })
}
