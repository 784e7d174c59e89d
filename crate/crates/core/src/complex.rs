//! Weight-graded chain complexes `C_{w,m}` spanned by wedge words of
//! graded basis elements, and the Chevalley–Eilenberg boundary
//!
//! ```text
//! d(x1 ^ ... ^ xm) = sum_{i<j} (-1)^(i+j) [xi, xj] ^ x1 ^ ..^ (no xi, xj) ^ .. ^ xm
//! ```
//!
//! A summand of `C_{w,m}` is `L^{k1} V_1 (x) L^{k2} V_2 (x) ...`, indexed by a
//! [`YoungShape`] `[k1, k2, ...]` of length `m`. On tori the shape has area
//! `w`; for polynomials on `R^n` it has area `w + 2m`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{dim_graded_piece, enumerate_graded_piece, BasisKind, BasisWord, Coeff};
use crate::bracket::{bracket_words, PoissonStructure};
use crate::error::{Error, Result};
use crate::linalg::SparseRationalMatrix;

/// Basis kind together with the Poisson structure it is bracketed with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Model {
    pub kind: BasisKind,
    pub pi: PoissonStructure,
}

impl Model {
    pub fn new(kind: BasisKind, pi: PoissonStructure) -> Self {
        Model { kind, pi }
    }

    /// Standard symplectic torus `T^n`.
    pub fn torus(n: usize, kind: BasisKind) -> Result<Self> {
        if !kind.is_torus() {
            return Err(Error::WrongKind { expected: BasisKind::Product, got: kind });
        }
        Ok(Model { kind, pi: PoissonStructure::symplectic(n)? })
    }

    /// Torus `T^n` with the pairing restricted to the first `2m` coordinates.
    pub fn degenerate_torus(n: usize, m: usize, kind: BasisKind) -> Result<Self> {
        if !kind.is_torus() {
            return Err(Error::WrongKind { expected: BasisKind::Product, got: kind });
        }
        Ok(Model { kind, pi: PoissonStructure::degenerate(n, m)? })
    }

    /// Polynomials on the standard symplectic `R^n`.
    pub fn euclidean(n: usize) -> Result<Self> {
        Ok(Model { kind: BasisKind::Polynomial, pi: PoissonStructure::symplectic(n)? })
    }

    pub fn n(&self) -> usize {
        self.pi.n()
    }

    /// Area of the Young shapes that index `C_{w,m}`; `None` when negative.
    pub fn shape_area(&self, w: i64, m: usize) -> Option<usize> {
        let area = if self.kind.is_torus() { w } else { w + 2 * m as i64 };
        usize::try_from(area).ok()
    }

    /// Largest generator degree appearing in any `C_{w,m}`, `1 <= m <= max_m`.
    pub fn max_generator_degree(&self, w: i64, max_m: usize) -> usize {
        (1..=max_m)
            .filter_map(|m| self.shape_area(w, m).map(|a| a.saturating_sub(m - 1)))
            .max()
            .unwrap_or(0)
    }

    /// Largest degree `m` for which `C_{w,m}` can be nonzero.
    pub fn max_chain_degree(&self, w: i64) -> usize {
        if self.kind.is_torus() {
            w.max(0) as usize
        } else {
            let n = self.n() as i64;
            (w + n * (n + 5) / 2).max(0) as usize
        }
    }

    pub fn cap(&self, degree: usize) -> u64 {
        dim_graded_piece(self.n(), degree as u32, self.kind).expect("n >= 1 by construction")
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = if self.kind.is_torus() { "T" } else { "R" };
        write!(f, "{space}^{} {}", self.n(), self.kind)?;
        if !self.pi.is_symplectic() {
            write!(f, " (Poisson rank {})", self.pi.rank())?;
        }
        Ok(())
    }
}

/// Multiplicities `[k1, .., kl]` of parts of width `1..=l`, with `kl > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungShape(Vec<u32>);

impl YoungShape {
    pub fn new(mut k: Vec<u32>) -> Self {
        while k.last() == Some(&0) {
            k.pop();
        }
        YoungShape(k)
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.0
    }

    pub fn length(&self) -> usize {
        self.0.iter().map(|&k| k as usize).sum()
    }

    pub fn area(&self) -> usize {
        self.0.iter().enumerate().map(|(j, &k)| (j + 1) * k as usize).sum()
    }
}

/// All shapes with the given area and length and `k_j <= caps(j)`, in
/// lexicographic order of the multiplicity vector.
pub fn young_shapes(area: usize, length: usize, caps: impl Fn(usize) -> u64) -> Vec<YoungShape> {
    fn rec(j: usize, area: usize, len: usize, caps: &dyn Fn(usize) -> u64, cur: &mut Vec<u32>, out: &mut Vec<YoungShape>) {
        if len == 0 {
            if area == 0 {
                out.push(YoungShape::new(cur.clone()));
            }
            return;
        }
        // every remaining part is at least j wide
        if j * len > area {
            return;
        }
        let hi = (caps(j) as usize).min(len).min(area / j);
        for k in 0..=hi {
            cur.push(k as u32);
            rec(j + 1, area - k * j, len - k, caps, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if length == 0 {
        if area == 0 {
            out.push(YoungShape::new(Vec::new()));
        }
        return out;
    }
    rec(1, area, length, &caps, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Generators of degree `1..=max_degree` with global indices; index order is
/// (degree, canonical order within the piece).
#[derive(Debug)]
pub struct Generators {
    model: Model,
    offsets: Vec<u32>,
    words: Vec<BasisWord>,
    index: HashMap<BasisWord, u32>,
}

impl Generators {
    pub fn new(model: Model, max_degree: usize) -> Result<Self> {
        let mut offsets = vec![0u32; max_degree + 2];
        let mut words = Vec::new();
        for d in 1..=max_degree {
            offsets[d] = words.len() as u32;
            words.extend_from_slice(enumerate_graded_piece(model.n(), d as u32, model.kind)?.words());
        }
        offsets[max_degree + 1] = words.len() as u32;
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i as u32)).collect();
        Ok(Generators { model, offsets, words, index })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn max_degree(&self) -> usize {
        self.offsets.len() - 2
    }

    pub fn word(&self, global: u32) -> &BasisWord {
        &self.words[global as usize]
    }

    pub fn index_of(&self, word: &BasisWord) -> Option<u32> {
        self.index.get(word).copied()
    }

    /// Global index range of the degree-`d` generators.
    pub fn degree_range(&self, d: usize) -> std::ops::Range<u32> {
        self.offsets[d]..self.offsets[d + 1]
    }
}

/// Canonical wedge word: strictly increasing global generator indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WedgeWord(pub Vec<u32>);

impl WedgeWord {
    /// Sorts the generators; returns the permutation sign, or `None` if a
    /// generator repeats (the wedge vanishes).
    pub fn normalize(mut gens: Vec<u32>) -> Option<(i8, WedgeWord)> {
        let mut inversions = 0usize;
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                match gens[i].cmp(&gens[j]) {
                    std::cmp::Ordering::Equal => return None,
                    std::cmp::Ordering::Greater => inversions += 1,
                    std::cmp::Ordering::Less => {}
                }
            }
        }
        gens.sort_unstable();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, WedgeWord(gens)))
    }

    pub fn generators(&self) -> &[u32] {
        &self.0
    }
}

/// Ordered basis of `C_{w,m}`.
#[derive(Clone, Debug)]
pub struct ChainBasis {
    pub w: i64,
    pub m: usize,
    generators: Arc<Generators>,
    words: Vec<WedgeWord>,
    index: HashMap<WedgeWord, usize>,
}

impl ChainBasis {
    pub fn build(generators: Arc<Generators>, w: i64, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("chain degree must be at least 1".into()));
        }
        let model = generators.model();
        let mut words = Vec::new();
        if let Some(area) = model.shape_area(w, m) {
            for shape in young_shapes(area, m, |j| model.cap(j)) {
                let ks = shape.multiplicities();
                if ks.len() > generators.max_degree() {
                    return Err(Error::InvalidArgument(format!(
                        "generator table stops at degree {}, shape needs {}",
                        generators.max_degree(),
                        ks.len()
                    )));
                }
                push_shape_words(&generators, ks, 0, &mut Vec::with_capacity(m), &mut words);
            }
        }
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(ChainBasis { w, m, generators, words, index })
    }

    pub fn model(&self) -> Model {
        self.generators.model()
    }

    pub fn generators(&self) -> &Arc<Generators> {
        &self.generators
    }

    pub fn words(&self) -> &[WedgeWord] {
        &self.words
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn index_of(&self, word: &WedgeWord) -> Option<usize> {
        self.index.get(word).copied()
    }
}

fn push_shape_words(gens: &Generators, ks: &[u32], j: usize, cur: &mut Vec<u32>, out: &mut Vec<WedgeWord>) {
    if j == ks.len() {
        out.push(WedgeWord(cur.clone()));
        return;
    }
    let range = gens.degree_range(j + 1);
    let pool: Vec<u32> = range.collect();
    for_each_combination(pool.len(), ks[j] as usize, &mut |combo| {
        let base = cur.len();
        cur.extend(combo.iter().map(|&i| pool[i]));
        push_shape_words(gens, ks, j + 1, cur, out);
        cur.truncate(base);
    });
}

fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // rightmost position that can still move right
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for t in i..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// Chain bases of one weight sharing a generator table.
#[derive(Debug)]
pub struct WeightComplex {
    pub w: i64,
    generators: Arc<Generators>,
    bases: Vec<ChainBasis>,
}

impl WeightComplex {
    /// Builds `C_{w,m}` for `1 <= m <= max_m`.
    pub fn new(model: Model, w: i64, max_m: usize) -> Result<Self> {
        let max_m = max_m.max(1);
        let generators = Arc::new(Generators::new(model, model.max_generator_degree(w, max_m))?);
        let bases = (1..=max_m)
            .map(|m| ChainBasis::build(generators.clone(), w, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightComplex { w, generators, bases })
    }

    pub fn model(&self) -> Model {
        self.generators.model()
    }

    pub fn max_m(&self) -> usize {
        self.bases.len()
    }

    pub fn basis(&self, m: usize) -> &ChainBasis {
        &self.bases[m - 1]
    }

    pub fn dim(&self, m: usize) -> usize {
        if m == 0 || m > self.bases.len() {
            0
        } else {
            self.bases[m - 1].dim()
        }
    }

    /// Matrix of `d: C_{w,m} -> C_{w,m-1}`.
    pub fn boundary(&self, m: usize) -> Result<SparseRationalMatrix> {
        if m < 2 {
            return Err(Error::InvalidArgument("the boundary into degree 0 is not modelled; m must be >= 2".into()));
        }
        if m > self.bases.len() {
            return Err(Error::InvalidArgument(format!("degree {m} beyond the built range 1..={}", self.bases.len())));
        }
        assemble_boundary(&self.bases[m - 1], &self.bases[m - 2])
    }
}

/// Bracket of two generators as (generator index, coefficient) pairs.
/// Terms of degree 0 are constants, which act trivially, and are dropped.
fn bracket_generators(gens: &Generators, a: u32, b: u32) -> Result<Vec<(u32, Coeff)>> {
    let model = gens.model();
    let lc = bracket_words(gens.word(a), gens.word(b), &model.pi)?;
    let mut out = Vec::with_capacity(lc.len());
    for (word, c) in lc.iter() {
        if word.degree() == 0 {
            continue;
        }
        let g = gens.index_of(word).ok_or_else(|| {
            Error::InvalidArgument(format!("bracket produced {word} outside the generator table"))
        })?;
        out.push((g, *c));
    }
    Ok(out)
}

fn assemble_boundary(source: &ChainBasis, target: &ChainBasis) -> Result<SparseRationalMatrix> {
    let gens = source.generators();
    let columns: Vec<Vec<(u32, Coeff)>> = source
        .words()
        .par_iter()
        .map(|word| {
            let g = word.generators();
            let mut acc: BTreeMap<u32, Coeff> = BTreeMap::new();
            for p in 0..g.len() {
                for q in p + 1..g.len() {
                    let terms = bracket_generators(gens, g[p], g[q])?;
                    if terms.is_empty() {
                        continue;
                    }
                    let rest: Vec<u32> =
                        g.iter().enumerate().filter(|&(i, _)| i != p && i != q).map(|(_, &x)| x).collect();
                    let pair_sign = if (p + q) % 2 == 0 { Coeff::one() } else { -Coeff::one() };
                    for (h, c) in terms {
                        let mut gens_out = Vec::with_capacity(rest.len() + 1);
                        gens_out.push(h);
                        gens_out.extend_from_slice(&rest);
                        let Some((sign, wedge)) = WedgeWord::normalize(gens_out) else { continue };
                        let row = target.index_of(&wedge).ok_or_else(|| {
                            Error::InvalidArgument(format!("boundary term {wedge:?} missing from the target basis"))
                        })?;
                        let v = c * pair_sign * Coeff::from_integer(sign as i64);
                        let e = acc.entry(row as u32).or_insert_with(Coeff::zero);
                        *e += v;
                    }
                }
            }
            Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
        })
        .collect::<Result<_>>()?;
    SparseRationalMatrix::from_columns(target.dim(), columns)
}

/// Basis of `C_{w,m}` built with its own generator table.
pub fn chain_basis(w: i64, m: usize, model: Model) -> Result<ChainBasis> {
    let generators = Arc::new(Generators::new(model, model.max_generator_degree(w, m.max(1)))?);
    ChainBasis::build(generators, w, m)
}

/// Matrix of `d: C_{w,m} -> C_{w,m-1}` in the canonical bases.
pub fn boundary_matrix(w: i64, m: usize, model: Model) -> Result<SparseRationalMatrix> {
    if m < 2 {
        return Err(Error::InvalidArgument("the boundary into degree 0 is not modelled; m must be >= 2".into()));
    }
    WeightComplex::new(model, w, m)?.boundary(m)
}
