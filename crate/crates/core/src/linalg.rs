//! Exact rank of sparse rational matrices.
//!
//! Two independent kernels are provided: elimination modulo a large prime
//! ([`rank_modular`]), and fraction-free Bareiss elimination over the
//! integers ([`rank_exact`]). Both first split the matrix into the
//! connected components of its row/column incidence graph, since the
//! boundary matrices are block diagonal up to permutation.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::io::{BufRead, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::basis::Coeff;
use crate::error::{Error, Result};

/// Immutable sparse matrix with exact rational entries, stored as triplets
/// sorted by (column, row).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(u32, u32, Coeff)>,
}

impl SparseRationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseRationalMatrix { rows, cols, entries: Vec::new() }
    }

    pub fn identity(k: usize) -> Self {
        let entries = (0..k as u32).map(|i| (i, i, Coeff::one())).collect();
        SparseRationalMatrix { rows: k, cols: k, entries }
    }

    /// Builds from `(row, col, value)` triplets, summing duplicates and
    /// dropping zeros.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, Coeff)>) -> Result<Self> {
        let mut acc: HashMap<(u32, u32), Coeff> = HashMap::new();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::InvalidArgument(format!("entry ({r},{c}) outside {rows}x{cols}")));
            }
            *acc.entry((c as u32, r as u32)).or_insert_with(Coeff::zero) += v;
        }
        let mut entries: Vec<_> = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((c, r), v)| (r, c, v)).collect();
        entries.sort_by_key(|&(r, c, _)| (c, r));
        Ok(SparseRationalMatrix { rows, cols, entries })
    }

    /// Builds from per-column lists of `(row, value)` with rows strictly
    /// increasing and values nonzero.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(u32, Coeff)>>) -> Result<Self> {
        let cols = columns.len();
        let mut entries = Vec::with_capacity(columns.iter().map(Vec::len).sum());
        for (c, col) in columns.into_iter().enumerate() {
            let mut last = None;
            for (r, v) in col {
                if r as usize >= rows || last.is_some_and(|l| l >= r) || v.is_zero() {
                    return Err(Error::InvalidArgument(format!("bad column entry ({r},{c})")));
                }
                last = Some(r);
                entries.push((r, c as u32, v));
            }
        }
        Ok(SparseRationalMatrix { rows, cols, entries })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(u32, u32, Coeff)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_by_key(|&(r, c, _)| (c, r));
        SparseRationalMatrix { rows: self.cols, cols: self.rows, entries }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseRationalMatrix) -> Result<SparseRationalMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Mismatch(format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let mut by_col: Vec<Vec<(u32, Coeff)>> = vec![Vec::new(); self.cols];
        for &(r, c, v) in &self.entries {
            by_col[c as usize].push((r, v));
        }
        let mut out = Vec::new();
        for &(k, j, b) in &rhs.entries {
            for &(i, a) in &by_col[k as usize] {
                out.push((i as usize, j as usize, a * b));
            }
        }
        SparseRationalMatrix::from_triplets(self.rows, rhs.cols, out)
    }

    /// Multiplies row `i` by `factors[i]`; factors must be nonzero.
    pub fn scale_rows(&self, factors: &[Coeff]) -> Result<SparseRationalMatrix> {
        if factors.len() != self.rows || factors.iter().any(Zero::is_zero) {
            return Err(Error::InvalidArgument("need one nonzero factor per row".into()));
        }
        let entries = self.entries.iter().map(|&(r, c, v)| (r, c, v * factors[r as usize])).collect();
        Ok(SparseRationalMatrix { rows: self.rows, cols: self.cols, entries })
    }

    /// Writes the triplet text format: a `rows cols nnz` header, then one
    /// `row col numerator denominator` line per entry, 1-based.
    pub fn write_triplets<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "{} {} {}", self.rows, self.cols, self.entries.len())?;
        for (r, c, v) in &self.entries {
            writeln!(out, "{} {} {} {}", r + 1, c + 1, v.numer(), v.denom())?;
        }
        Ok(())
    }

    pub fn to_triplet_string(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {}", self.rows, self.cols, self.entries.len());
        for (r, c, v) in &self.entries {
            let _ = writeln!(s, "{} {} {} {}", r + 1, c + 1, v.numer(), v.denom());
        }
        s
    }

    pub fn read_triplets<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))??;
        let h: Vec<usize> = parse_fields(&header, 3)?;
        let (rows, cols, nnz) = (h[0], h[1], h[2]);
        let mut entries = Vec::with_capacity(nnz);
        for _ in 0..nnz {
            let line = lines.next().ok_or_else(|| Error::Parse("fewer entries than declared".into()))??;
            let f: Vec<i64> = parse_fields(&line, 4)?;
            if f[0] < 1 || f[1] < 1 || f[0] as usize > rows || f[1] as usize > cols {
                return Err(Error::Parse(format!("index out of range in `{line}`")));
            }
            if f[3] == 0 || f[2] == 0 {
                return Err(Error::Parse(format!("zero numerator or denominator in `{line}`")));
            }
            entries.push(((f[0] - 1) as u32, (f[1] - 1) as u32, Coeff::new(f[2], f[3])));
        }
        if let Some(extra) = lines.next() {
            if !extra?.trim().is_empty() {
                return Err(Error::Parse("trailing data after declared entries".into()));
            }
        }
        let sorted = entries.windows(2).all(|p| (p[0].1, p[0].0) < (p[1].1, p[1].0));
        if !sorted {
            return Err(Error::Parse("entries must be sorted by column then row, without duplicates".into()));
        }
        Ok(SparseRationalMatrix { rows, cols, entries })
    }
}

fn parse_fields<T: std::str::FromStr>(line: &str, n: usize) -> Result<Vec<T>> {
    let v: Vec<T> = line
        .split_whitespace()
        .map(|t| t.parse::<T>().map_err(|_| Error::Parse(format!("bad number `{t}` in `{line}`"))))
        .collect::<Result<_>>()?;
    if v.len() != n {
        return Err(Error::Parse(format!("expected {n} fields in `{line}`")));
    }
    Ok(v)
}

impl std::str::FromStr for SparseRationalMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::read_triplets(s.as_bytes())
    }
}

/// Entries of one connected block, renumbered locally.
struct Block<T> {
    rows: usize,
    cols: usize,
    entries: Vec<(u32, u32, T)>,
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

/// Splits entries into connected components of the bipartite row/column graph.
fn split_blocks<T: Clone>(rows: usize, entries: &[(u32, u32, T)]) -> Vec<Block<T>> {
    let n_cols = entries.iter().map(|e| e.1 as usize + 1).max().unwrap_or(0);
    let mut parent: Vec<u32> = (0..(rows + n_cols) as u32).collect();
    for (r, c, _) in entries {
        let a = find(&mut parent, *r);
        let b = find(&mut parent, rows as u32 + c);
        if a != b {
            parent[a.max(b) as usize] = a.min(b);
        }
    }
    let mut block_of: HashMap<u32, usize> = HashMap::new();
    let mut blocks: Vec<Block<T>> = Vec::new();
    let mut row_map: HashMap<u32, u32> = HashMap::new();
    let mut col_map: HashMap<u32, u32> = HashMap::new();
    for (r, c, v) in entries {
        let root = find(&mut parent, *r);
        let b = *block_of.entry(root).or_insert_with(|| {
            blocks.push(Block { rows: 0, cols: 0, entries: Vec::new() });
            blocks.len() - 1
        });
        let block = &mut blocks[b];
        let lr = *row_map.entry(*r).or_insert_with(|| {
            block.rows += 1;
            block.rows as u32 - 1
        });
        let lc = *col_map.entry(*c).or_insert_with(|| {
            block.cols += 1;
            block.cols as u32 - 1
        });
        block.entries.push((lr, lc, v.clone()));
    }
    blocks
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Random prime in `(2^60, 2^63)`.
pub fn random_large_prime<R: Rng>(rng: &mut R) -> u64 {
    loop {
        let candidate = rng.random_range((1u64 << 60) + 1..1u64 << 63) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

fn reduce_mod(v: &Coeff, p: u64) -> Result<u64> {
    let to_mod = |x: i64| -> u64 { x.rem_euclid(p as i64) as u64 };
    let num = to_mod(*v.numer());
    let den = to_mod(*v.denom());
    if den == 0 {
        return Err(Error::BadPrime(p));
    }
    Ok(mul_mod(num, inv_mod(den, p), p))
}

/// Rank of `m` reduced modulo the prime `p`; a lower bound for the rank
/// over the rationals.
pub fn rank_modular(m: &SparseRationalMatrix, p: u64) -> Result<usize> {
    if p < 3 || p >= 1 << 63 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not an odd prime below 2^63")));
    }
    let mut reduced = Vec::with_capacity(m.nnz());
    for (r, c, v) in &m.entries {
        let x = reduce_mod(v, p)?;
        if x != 0 {
            reduced.push((*r, *c, x));
        }
    }
    Ok(split_blocks(m.rows, &reduced).into_iter().map(|b| eliminate_mod(b, p)).sum())
}

/// Sparse elimination over `GF(p)`. Pivots are taken from the active column
/// with the fewest entries, in its shortest row (a Markowitz-style choice
/// that keeps fill-in low).
fn eliminate_mod(block: Block<u64>, p: u64) -> usize {
    let mut rows: Vec<Vec<(u32, u64)>> = vec![Vec::new(); block.rows];
    for (r, c, v) in block.entries {
        rows[r as usize].push((c, v));
    }
    for row in &mut rows {
        row.sort_unstable_by_key(|e| e.0);
    }
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); block.cols];
    let mut col_count = vec![0u32; block.cols];
    for (i, row) in rows.iter().enumerate() {
        for &(c, _) in row {
            col_rows[c as usize].push(i as u32);
            col_count[c as usize] += 1;
        }
    }
    let mut queue: BTreeSet<(u32, u32)> = (0..block.cols as u32).map(|c| (col_count[c as usize], c)).collect();
    let mut row_alive = vec![true; block.rows];
    let mut rank = 0;
    let mut scratch: Vec<(u32, u64)> = Vec::new();

    let mut done = vec![false; block.cols];

    let set_count = |queue: &mut BTreeSet<(u32, u32)>, col_count: &mut [u32], done: &[bool], c: u32, new: u32| {
        let old = col_count[c as usize];
        col_count[c as usize] = new;
        if old != new && !done[c as usize] {
            queue.remove(&(old, c));
            queue.insert((new, c));
        }
    };

    while let Some((count, col)) = queue.pop_first() {
        done[col as usize] = true;
        if count == 0 {
            continue;
        }
        let entry_of = |row: &[(u32, u64)], c: u32| row.binary_search_by_key(&c, |e| e.0).ok().map(|i| row[i].1);
        // live rows holding this column; stale ids are dropped on the way
        let mut holders: Vec<u32> = col_rows[col as usize]
            .iter()
            .copied()
            .filter(|&r| row_alive[r as usize] && entry_of(&rows[r as usize], col).is_some())
            .collect();
        holders.sort_unstable();
        holders.dedup();
        debug_assert_eq!(holders.len() as u32, count);
        let pivot = *holders.iter().min_by_key(|&&r| (rows[r as usize].len(), r)).expect("count > 0");
        rank += 1;
        let pivot_row = std::mem::take(&mut rows[pivot as usize]);
        row_alive[pivot as usize] = false;
        let pv = entry_of(&pivot_row, col).expect("pivot entry");
        let pinv = inv_mod(pv, p);

        for &r in holders.iter().filter(|&&r| r != pivot) {
            let row = &rows[r as usize];
            let factor = mul_mod(entry_of(row, col).expect("holder entry"), pinv, p);
            let neg = p - factor;
            // row <- row - factor * pivot_row, merged
            scratch.clear();
            let (mut i, mut j) = (0, 0);
            while i < row.len() || j < pivot_row.len() {
                let take_row = j >= pivot_row.len() || (i < row.len() && row[i].0 < pivot_row[j].0);
                let take_piv = i >= row.len() || (j < pivot_row.len() && pivot_row[j].0 < row[i].0);
                if take_row {
                    scratch.push(row[i]);
                    i += 1;
                } else if take_piv {
                    let c = pivot_row[j].0;
                    let v = mul_mod(neg, pivot_row[j].1, p);
                    scratch.push((c, v));
                    col_rows[c as usize].push(r);
                    let n = col_count[c as usize] + 1;
                    set_count(&mut queue, &mut col_count, &done, c, n);
                    j += 1;
                } else {
                    let c = row[i].0;
                    let v = (row[i].1 + mul_mod(neg, pivot_row[j].1, p)) % p;
                    if v != 0 {
                        scratch.push((c, v));
                    } else {
                        let n = col_count[c as usize] - 1;
                        set_count(&mut queue, &mut col_count, &done, c, n);
                    }
                    i += 1;
                    j += 1;
                }
            }
            std::mem::swap(&mut rows[r as usize], &mut scratch);
        }
        for &(c, _) in &pivot_row {
            let n = col_count[c as usize] - 1;
            set_count(&mut queue, &mut col_count, &done, c, n);
        }
        col_rows[col as usize].clear();
    }
    rank
}

/// Exact rank over the rationals by fraction-free (Bareiss) elimination.
/// Each column is first scaled by the lcm of its denominators.
pub fn rank_exact(m: &SparseRationalMatrix) -> usize {
    let mut lcm_by_col: HashMap<u32, i64> = HashMap::new();
    for (_, c, v) in &m.entries {
        let e = lcm_by_col.entry(*c).or_insert(1);
        *e = e.lcm(v.denom());
    }
    let ints: Vec<(u32, u32, BigInt)> = m
        .entries
        .iter()
        .map(|(r, c, v)| {
            let scaled = *v * Coeff::from_integer(lcm_by_col[c]);
            debug_assert!(scaled.is_integer());
            (*r, *c, BigInt::from(scaled.to_integer()))
        })
        .collect();
    split_blocks(m.rows, &ints).into_iter().map(bareiss_rank).sum()
}

fn bareiss_rank(block: Block<BigInt>) -> usize {
    let mut rows: Vec<Vec<(u32, BigInt)>> = vec![Vec::new(); block.rows];
    for (r, c, v) in block.entries {
        rows[r as usize].push((c, v));
    }
    for row in &mut rows {
        row.sort_unstable_by_key(|e| e.0);
    }
    let mut active: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    while !active.is_empty() {
        // shortest row; its entry of smallest magnitude
        let (ai, &pr) = active.iter().enumerate().min_by_key(|(_, &r)| (rows[r].len(), r)).expect("nonempty");
        active.swap_remove(ai);
        let pivot_row = std::mem::take(&mut rows[pr]);
        let (pcol, pval) = pivot_row
            .iter()
            .min_by_key(|(c, v)| (v.bits(), *c))
            .map(|(c, v)| (*c, v.clone()))
            .expect("active rows are nonempty");
        rank += 1;
        for &r in &active {
            let row = std::mem::take(&mut rows[r]);
            let a = row.binary_search_by_key(&pcol, |e| e.0).ok().map(|i| row[i].1.clone());
            let mut out = Vec::with_capacity(row.len() + pivot_row.len());
            match a {
                None => {
                    for (c, v) in row {
                        out.push((c, exact_div(v * &pval, &prev)));
                    }
                }
                Some(a) => {
                    let (mut i, mut j) = (0, 0);
                    while i < row.len() || j < pivot_row.len() {
                        let ci = row.get(i).map(|e| e.0).unwrap_or(u32::MAX);
                        let cj = pivot_row.get(j).map(|e| e.0).unwrap_or(u32::MAX);
                        let (c, v) = if ci < cj {
                            i += 1;
                            (ci, &row[i - 1].1 * &pval)
                        } else if cj < ci {
                            j += 1;
                            (cj, -(&a * &pivot_row[j - 1].1))
                        } else {
                            i += 1;
                            j += 1;
                            (ci, &row[i - 1].1 * &pval - &a * &pivot_row[j - 1].1)
                        };
                        if !v.is_zero() {
                            out.push((c, exact_div(v, &prev)));
                        }
                    }
                }
            }
            rows[r] = out;
        }
        active.retain(|&r| !rows[r].is_empty());
        prev = pval;
    }
    rank
}

fn exact_div(v: BigInt, d: &BigInt) -> BigInt {
    let (q, rem) = v.div_rem(d);
    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
    q
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RankPolicy {
    /// Two independent random primes above `2^60`; accepted when they agree.
    #[default]
    Fast,
    Exact,
}

impl std::str::FromStr for RankPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(RankPolicy::Fast),
            "exact" => Ok(RankPolicy::Exact),
            other => Err(Error::InvalidArgument(format!("unknown rank policy `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum RankMethod {
    Modular { primes: Vec<u64> },
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub method: RankMethod,
}

/// Rank under the given policy. The fast policy draws its primes from a
/// generator seeded with `seed`, so results are reproducible.
pub fn rank(m: &SparseRationalMatrix, policy: RankPolicy, seed: u64) -> (usize, RankCertificate) {
    if m.is_zero() {
        let method = match policy {
            RankPolicy::Fast => RankMethod::Modular { primes: Vec::new() },
            RankPolicy::Exact => RankMethod::Exact,
        };
        return (0, RankCertificate { rank: 0, method });
    }
    if policy == RankPolicy::Fast {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut results: Vec<(u64, usize)> = Vec::with_capacity(2);
        let mut attempts = 0;
        while results.len() < 2 && attempts < 16 {
            attempts += 1;
            let p = random_large_prime(&mut rng);
            if results.iter().any(|&(q, _)| q == p) {
                continue;
            }
            if let Ok(r) = rank_modular(m, p) {
                results.push((p, r));
            }
        }
        if let [(p1, r1), (p2, r2)] = results[..] {
            if r1 == r2 {
                let cert = RankCertificate { rank: r1, method: RankMethod::Modular { primes: vec![p1, p2] } };
                return (r1, cert);
            }
        }
    }
    let r = rank_exact(m);
    (r, RankCertificate { rank: r, method: RankMethod::Exact })
}

/// Largest absolute numerator, useful for reporting coefficient growth.
pub fn max_abs_numerator(m: &SparseRationalMatrix) -> u64 {
    m.entries.iter().map(|(_, _, v)| v.numer().abs().to_u64().unwrap_or(u64::MAX)).max().unwrap_or(0)
}
