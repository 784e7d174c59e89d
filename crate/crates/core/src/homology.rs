//! Betti tables of the weight complexes, and the first-Betti (corank)
//! numbers both computed from matrices and evaluated from formulas.

use std::collections::HashMap;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{dim_graded_piece, BasisKind};
use crate::cache::MatrixCache;
use crate::complex::{Model, WeightComplex};
use crate::error::{Error, Result};
use crate::linalg::{rank, RankPolicy, SparseRationalMatrix};

pub const DEFAULT_BUDGET: usize = 40_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BettiOptions {
    pub policy: RankPolicy,
    pub seed: u64,
    /// Ranks of matrices with `min(rows, cols)` above this are skipped.
    pub budget: Option<usize>,
}

impl Default for BettiOptions {
    fn default() -> Self {
        BettiOptions { policy: RankPolicy::Fast, seed: 0, budget: Some(DEFAULT_BUDGET) }
    }
}

impl BettiOptions {
    pub fn exact() -> Self {
        BettiOptions { policy: RankPolicy::Exact, ..Default::default() }
    }

    fn within_budget(&self, rows: usize, cols: usize) -> bool {
        self.budget.is_none_or(|b| rows.min(cols) <= b)
    }
}

/// One degree of a Betti table; `ker` and `betti` are `None` when the
/// needed rank was skipped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiCell {
    pub m: usize,
    pub dim: usize,
    pub ker: Option<usize>,
    pub betti: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub model: Model,
    pub w: i64,
    pub cells: Vec<BettiCell>,
}

impl BettiTable {
    pub fn dims(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.dim).collect()
    }

    pub fn kernels(&self) -> Vec<Option<usize>> {
        self.cells.iter().map(|c| c.ker).collect()
    }

    pub fn bettis(&self) -> Vec<Option<usize>> {
        self.cells.iter().map(|c| c.betti).collect()
    }
}

/// Dimensions of `C_{w,m}` for `m = 1..=max_m`.
pub fn chain_dims(w: i64, model: Model, max_m: usize) -> Result<Vec<usize>> {
    let complex = WeightComplex::new(model, w, max_m)?;
    Ok((1..=max_m).map(|m| complex.dim(m)).collect())
}

fn boundary_cached(complex: &WeightComplex, m: usize, cache: Option<&MatrixCache>) -> Result<SparseRationalMatrix> {
    match cache {
        None => complex.boundary(m),
        Some(c) => {
            let shape = (complex.dim(m - 1), complex.dim(m));
            c.get_or_build(&complex.model(), complex.w, m, shape, || complex.boundary(m))
        }
    }
}

/// Ranks of `d_m` for `m = 2..=top`; `None` when over budget.
fn boundary_ranks(
    complex: &WeightComplex,
    top: usize,
    opts: &BettiOptions,
    cache: Option<&MatrixCache>,
) -> Result<HashMap<usize, Option<usize>>> {
    let pairs: Vec<(usize, Option<usize>)> = (2..=top)
        .into_par_iter()
        .map(|m| {
            let (rows, cols) = (complex.dim(m - 1), complex.dim(m));
            if rows == 0 || cols == 0 {
                return Ok((m, Some(0)));
            }
            if !opts.within_budget(rows, cols) {
                return Ok((m, None));
            }
            let matrix = boundary_cached(complex, m, cache)?;
            let seed = opts.seed ^ (m as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            Ok((m, Some(rank(&matrix, opts.policy, seed).0)))
        })
        .collect::<Result<_>>()?;
    Ok(pairs.into_iter().collect())
}

/// Dimensions, kernel dimensions and Betti numbers of `C_{w,m}` for
/// `m = 1..=max_m`. Degrees whose ranks fall outside the budget are left
/// blank rather than estimated.
pub fn betti_table(
    w: i64,
    model: Model,
    max_m: usize,
    opts: &BettiOptions,
    cache: Option<&MatrixCache>,
) -> Result<BettiTable> {
    if max_m == 0 {
        return Err(Error::InvalidArgument("max degree must be at least 1".into()));
    }
    let complex = WeightComplex::new(model, w, max_m + 1)?;
    let ranks = boundary_ranks(&complex, max_m + 1, opts, cache)?;
    let rank_of = |m: usize| if m < 2 { Some(0) } else { ranks[&m] };
    let cells = (1..=max_m)
        .map(|m| {
            let dim = complex.dim(m);
            let ker = rank_of(m).map(|r| dim - r);
            let betti = ker.zip(rank_of(m + 1)).map(|(k, r)| k - r);
            BettiCell { m, dim, ker, betti }
        })
        .collect();
    Ok(BettiTable { model, w, cells })
}

/// First Betti number `dim C_{w,1} - rank(d_2)`. On tori the weight-0 value
/// is 1 by convention (the constants), without building a complex.
pub fn corank_computed(w: i64, model: Model, opts: &BettiOptions, cache: Option<&MatrixCache>) -> Result<usize> {
    if model.kind.is_torus() {
        if w < 0 {
            return Err(Error::OutOfDomain(format!("torus weights are nonnegative, got {w}")));
        }
        if w == 0 {
            return Ok(1);
        }
    }
    let opts = BettiOptions { budget: None, ..*opts };
    let table = betti_table(w, model, 1, &opts, cache)?;
    Ok(table.cells[0].betti.expect("no budget"))
}

/// Memo table for the corank recursion in the even dimension `2n`:
/// `crk(w,2n) = 4 + 4 * sum_{i=1..w} crk(i,2n-2) - 3 * crk(w,2n-2)`,
/// with `crk(w,2) = 4` for `w > 0` and `crk(0,2n) = 1`.
#[derive(Debug, Default)]
pub struct CorankRecursion {
    /// `levels[n-1][w] = crk(w, 2n)`.
    levels: Vec<Vec<u128>>,
}

impl CorankRecursion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, w: u64, two_n: u64) -> Result<u128> {
        if two_n < 2 || two_n % 2 == 1 {
            return Err(Error::InvalidArgument(format!("dimension must be even and >= 2, got {two_n}")));
        }
        let n = (two_n / 2) as usize;
        let w = w as usize;
        for level in 1..=n {
            if self.levels.len() < level {
                self.levels.push(vec![1]);
            }
            while self.levels[level - 1].len() <= w {
                let k = self.levels[level - 1].len();
                let value = if level == 1 {
                    4
                } else {
                    let below = &self.levels[level - 2];
                    let sum: u128 = below[1..=k].iter().try_fold(0u128, |s, &x| s.checked_add(x)).ok_or(Error::Overflow("corank recursion"))?;
                    sum.checked_mul(4)
                        .and_then(|s| s.checked_add(4))
                        .and_then(|s| s.checked_sub(3 * below[k]))
                        .ok_or(Error::Overflow("corank recursion"))?
                };
                self.levels[level - 1].push(value);
            }
        }
        Ok(self.levels[n - 1][w])
    }
}

static RECURSION: Mutex<Option<CorankRecursion>> = Mutex::new(None);

/// `crk(w, 2n)` from the recursion, memoized process-wide.
pub fn corank_recursive(w: u64, two_n: u64) -> Result<u128> {
    let mut guard = RECURSION.lock().unwrap_or_else(|e| e.into_inner());
    guard.get_or_insert_with(CorankRecursion::new).get(w, two_n)
}

/// Closed forms known for `2n` in {2, 4, 6}.
pub fn corank_closed(w: u64, two_n: u64) -> Option<u128> {
    if w == 0 {
        return None;
    }
    let w = w as u128;
    match two_n {
        2 => Some(4),
        4 => Some(16 * w - 8),
        6 => Some(4 * (8 * w * w + 7 - 12 * w)),
        _ => None,
    }
}

/// Whether `sum_{k=0..n} (-1)^k C(n,k) crk(w-k, 2n+2) = 2^(2n+2)`; the
/// identity is claimed for `w > n`.
pub fn alternating_identity_check(w: u64, n: u64) -> Result<bool> {
    if n == 0 || w <= n {
        return Err(Error::OutOfDomain(format!("need w > n >= 1, got w={w}, n={n}")));
    }
    let mut sum: i128 = 0;
    let mut binom: i128 = 1;
    for k in 0..=n {
        let c = corank_recursive(w - k, 2 * n + 2)? as i128;
        let term = binom.checked_mul(c).ok_or(Error::Overflow("alternating identity"))?;
        sum += if k % 2 == 0 { term } else { -term };
        binom = binom * (n - k) as i128 / (k + 1) as i128;
    }
    Ok(sum == 1i128 << (2 * n + 2))
}

/// Predicted first Betti number on `T^n` whose Poisson structure pairs only
/// `2m` coordinates: `sum_{i=0..w} crk(i,2m) * dim V_{w-i}(T^{n-2m})`.
pub fn corank_poisson_product(w: u64, n: u64, m: u64) -> Result<u128> {
    if m == 0 || 2 * m > n {
        return Err(Error::InvalidStructure(format!("need 1 <= m and 2m <= n, got n={n}, m={m}")));
    }
    let free = (n - 2 * m) as usize;
    let mut total: u128 = 0;
    for i in 0..=w {
        let k = w - i;
        let dim = if free == 0 {
            u128::from(k == 0)
        } else {
            dim_graded_piece(free, k as u32, BasisKind::Product)? as u128
        };
        total += corank_recursive(i, 2 * m)? * dim;
    }
    Ok(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorankSource {
    Computed,
    Recursive,
    Closed,
}

impl std::fmt::Display for CorankSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CorankSource::Computed => "compute",
            CorankSource::Recursive => "recursive",
            CorankSource::Closed => "closed",
        })
    }
}

/// Coranks over a range of weights from one source; `None` marks weights
/// where the source has no value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorankSeries {
    pub model: Model,
    pub source: CorankSource,
    pub values: Vec<(i64, Option<u128>)>,
}

impl CorankSeries {
    pub fn computed(
        model: Model,
        weights: impl IntoIterator<Item = i64>,
        opts: &BettiOptions,
        cache: Option<&MatrixCache>,
    ) -> Result<Self> {
        let values = weights
            .into_iter()
            .map(|w| corank_computed(w, model, opts, cache).map(|v| (w, Some(v as u128))))
            .collect::<Result<_>>()?;
        Ok(CorankSeries { model, source: CorankSource::Computed, values })
    }

    /// Formula values; only meaningful for symplectic tori.
    pub fn formula(model: Model, source: CorankSource, weights: impl IntoIterator<Item = i64>) -> Result<Self> {
        if !model.kind.is_torus() || !model.pi.is_symplectic() {
            return Err(Error::InvalidArgument("corank formulas apply to symplectic tori".into()));
        }
        let two_n = model.n() as u64;
        let values = weights
            .into_iter()
            .map(|w| {
                let wu = u64::try_from(w).map_err(|_| Error::OutOfDomain(format!("negative weight {w}")))?;
                let v = match source {
                    CorankSource::Recursive => Some(corank_recursive(wu, two_n)?),
                    CorankSource::Closed if w == 0 => Some(1),
                    CorankSource::Closed => corank_closed(wu, two_n),
                    CorankSource::Computed => {
                        return Err(Error::InvalidArgument("use CorankSeries::computed".into()))
                    }
                };
                Ok((w, v))
            })
            .collect::<Result<_>>()?;
        Ok(CorankSeries { model, source, values })
    }
}
