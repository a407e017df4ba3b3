//! Bit-packed linear algebra over GF(2).
//!
//! Vectors pack coordinate `i` into bit `i % 64` of word `i / 64`; bits past
//! the logical length are always zero. Matrices are lists of equal-length row
//! vectors. Codeword streams walk the row space in Gray-code order so that
//! each step costs a single row XOR.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// Default cap on exhaustive enumeration: codes of dimension above this
/// (i.e. more than `2^24` codewords) are refused.
pub const DEFAULT_ENUMERATION_CAP: u32 = 24;

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

#[inline]
fn tail_mask(len: usize) -> u64 {
    match len % 64 {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// A vector in `F_2^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = BitVector {
            len,
            words: vec![u64::MAX; words_for(len)],
        };
        v.mask_tail();
        v
    }

    /// Build from packed words; bits past `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        let mut v = BitVector { len, words };
        v.mask_tail();
        v
    }

    /// Build a vector of length `len <= 64` from a single word.
    pub fn from_u64(len: usize, word: u64) -> Self {
        assert!(len <= 64, "from_u64 needs len <= 64");
        Self::from_words(len, vec![word])
    }

    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    /// Parse a string of `0`/`1` characters.
    pub fn parse01(s: &str) -> Option<Self> {
        let mut v = Self::zeros(s.chars().count());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }

    fn mask_tail(&mut self) {
        if let Some(last) = self.words.last_mut() {
            *last &= tail_mask(self.len);
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The single packed word of a vector of length at most 64.
    pub fn to_u64(&self) -> Option<u64> {
        (self.len <= 64).then(|| self.words.first().copied().unwrap_or(0))
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let bit = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= bit;
        } else {
            self.words[i / 64] &= !bit;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Standard inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len);
        self.intersection_size(other) % 2 == 1
    }

    pub fn intersection_size(&self, other: &BitVector) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BitVector) -> BitVector {
        let mut v = self.clone();
        v.xor_assign(other);
        v
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    /// Coordinate `i` moves to position `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> BitVector {
        assert_eq!(perm.len(), self.len);
        let mut v = BitVector::zeros(self.len);
        for i in self.support() {
            v.set(perm[i], true);
        }
        v
    }

    /// Concatenate `self` followed by `other`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut v = BitVector::zeros(self.len + other.len);
        for i in self.support() {
            v.set(i, true);
        }
        for i in other.support() {
            v.set(self.len + i, true);
        }
        v
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

/// A matrix over GF(2) stored as packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    ncols: usize,
    rows: Vec<BitVector>,
}

/// Reduced row-echelon form of a matrix.
#[derive(Clone, Debug)]
pub struct Rref {
    /// The nonzero rows of the reduced form.
    pub matrix: BitMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl BitMatrix {
    pub fn new(ncols: usize, rows: Vec<BitVector>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::WrongDimension {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(BitMatrix { ncols, rows })
    }

    /// A matrix with no rows, spanning the zero code of length `ncols`.
    pub fn empty(ncols: usize) -> Self {
        BitMatrix {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            ncols: n,
            rows: (0..n).map(|i| BitVector::from_support(n, &[i])).collect(),
        }
    }

    /// Parse rows given as `0`/`1` strings of equal length.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let parsed: Vec<BitVector> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| BitVector::parse01(r).ok_or_else(|| Error::parse(i + 1, "expected 0/1")))
            .collect::<Result<_>>()?;
        let ncols = parsed.first().map_or(0, |r| r.len());
        Self::new(ncols, parsed)
    }

    pub fn from_packed(ncols: usize, rows: &[u64]) -> Self {
        BitMatrix {
            ncols,
            rows: rows.iter().map(|&r| BitVector::from_u64(ncols, r)).collect(),
        }
    }

    /// Rows as single words, available when `ncols <= 64`.
    pub fn packed_rows(&self) -> Option<Vec<u64>> {
        (self.ncols <= 64).then(|| self.rows.iter().map(|r| r.to_u64().unwrap_or(0)).collect())
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    pub fn push_row(&mut self, row: BitVector) -> Result<()> {
        if row.len() != self.ncols {
            return Err(Error::WrongDimension {
                expected: self.ncols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        BitMatrix::new(self.ncols, rows)
    }

    pub fn rref(&self) -> Rref {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.ncols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            r += 1;
        }
        rows.truncate(r);
        Rref {
            matrix: BitMatrix {
                ncols: self.ncols,
                rows,
            },
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// An independent generating set (the nonzero rows of the RREF).
    pub fn basis(&self) -> BitMatrix {
        self.rref().matrix
    }

    /// Generator matrix of `{x : x . g = 0 for every row g}`.
    pub fn dual_code(&self) -> BitMatrix {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.ncols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let rows = (0..self.ncols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::zeros(self.ncols);
                v.set(f, true);
                for (i, &p) in pivots.iter().enumerate() {
                    if matrix.rows[i].get(f) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect();
        BitMatrix {
            ncols: self.ncols,
            rows,
        }
    }

    pub fn same_row_space(&self, other: &BitMatrix) -> bool {
        self.ncols == other.ncols && self.rref().matrix.rows == other.rref().matrix.rows
    }

    /// Whether `v` lies in the row space.
    pub fn contains(&self, v: &BitVector) -> bool {
        let Rref { matrix, pivots, .. } = self.rref();
        reduce_against(&matrix, &pivots, v).is_zero()
    }

    /// True when every pair of rows (including a row with itself) is orthogonal.
    pub fn is_self_orthogonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, a)| self.rows[i..].iter().all(|b| !a.dot(b)))
    }

    /// Coordinate `i` moves to position `perm[i]` in every row.
    pub fn permute_columns(&self, perm: &[usize]) -> BitMatrix {
        BitMatrix {
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| r.permuted(perm)).collect(),
        }
    }

    /// Stream every codeword exactly once (Gray-code order over an RREF basis).
    pub fn codewords(&self) -> Result<CodewordIter> {
        self.codewords_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    pub fn codewords_with_cap(&self, cap: u32) -> Result<CodewordIter> {
        let basis = self.basis();
        check_cap(basis.nrows(), cap)?;
        Ok(CodewordIter {
            basis: basis.rows,
            current: BitVector::zeros(self.ncols),
            index: 0,
        })
    }

    /// Visit every codeword; the closure receives the packed words.
    pub fn for_each_codeword<F: FnMut(&[u64])>(&self, cap: u32, mut f: F) -> Result<()> {
        let basis = self.basis();
        check_cap(basis.nrows(), cap)?;
        let rows: Vec<&[u64]> = basis.rows.iter().map(|r| r.words()).collect();
        let mut cur = vec![0u64; words_for(self.ncols)];
        gray_walk_words(&rows, &mut cur, &mut f);
        Ok(())
    }

    pub fn weight_distribution(&self) -> Result<WeightDistribution> {
        self.weight_distribution_with(DEFAULT_ENUMERATION_CAP, Execution::Auto)
    }

    pub fn weight_distribution_with(&self, cap: u32, exec: Execution) -> Result<WeightDistribution> {
        let basis = self.basis();
        check_cap(basis.nrows(), cap)?;
        let n = self.ncols;
        if let Some(rows) = basis.packed_rows() {
            return Ok(WeightDistribution::from_counts(weight_counts_u64(n, &rows, exec)));
        }
        let rows: Vec<&[u64]> = basis.rows.iter().map(|r| r.words()).collect();
        let mut counts = vec![0u64; n + 1];
        let mut cur = vec![0u64; words_for(n)];
        gray_walk_words(&rows, &mut cur, &mut |w| {
            counts[w.iter().map(|x| x.count_ones() as usize).sum::<usize>()] += 1;
        });
        Ok(WeightDistribution::from_counts(counts))
    }

    /// Minimum nonzero weight, or `None` for the zero code.
    pub fn minimum_weight(&self) -> Result<Option<usize>> {
        Ok(self.weight_distribution()?.min_weight())
    }

    /// Render in the `binary <n> <k>` text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("binary {} {}\n", self.ncols, self.rows.len());
        for r in &self.rows {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    /// Parse the `binary <n> <k>` text format.
    pub fn parse_text(text: &str) -> Result<BitMatrix> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 || fields[0] != "binary" {
            return Err(Error::parse(ln, "expected header `binary <n> <k>`"));
        }
        let n: usize = fields[1].parse().map_err(|_| Error::parse(ln, "bad length"))?;
        let k: usize = fields[2].parse().map_err(|_| Error::parse(ln, "bad row count"))?;
        let mut rows = Vec::with_capacity(k);
        for (ln, line) in lines {
            if rows.len() == k {
                return Err(Error::parse(ln, "more rows than declared"));
            }
            let compact: String = line.chars().filter(|c| !c.is_whitespace()).collect();
            if compact.chars().count() != n {
                return Err(Error::parse(
                    ln,
                    format!("row has {} entries, expected {n}", compact.chars().count()),
                ));
            }
            rows.push(BitVector::parse01(&compact).ok_or_else(|| Error::parse(ln, "entries must be 0 or 1"))?);
        }
        if rows.len() != k {
            return Err(Error::parse(0, format!("expected {k} rows, found {}", rows.len())));
        }
        BitMatrix::new(n, rows)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows.len(), self.ncols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

fn check_cap(rank: usize, cap: u32) -> Result<()> {
    if rank > cap as usize {
        Err(Error::DimensionTooLarge { rank, cap })
    } else {
        Ok(())
    }
}

/// Reduce `v` by an RREF basis; the result is zero iff `v` is in the span.
pub(crate) fn reduce_against(rref: &BitMatrix, pivots: &[usize], v: &BitVector) -> BitVector {
    let mut v = v.clone();
    for (row, &p) in rref.rows().iter().zip(pivots) {
        if v.get(p) {
            v.xor_assign(row);
        }
    }
    v
}

fn gray_walk_words<F: FnMut(&[u64])>(basis: &[&[u64]], cur: &mut [u64], f: &mut F) {
    f(cur);
    let total: u64 = 1u64 << basis.len();
    for i in 1..total {
        let row = basis[i.trailing_zeros() as usize];
        for (c, r) in cur.iter_mut().zip(row.iter()) {
            *c ^= r;
        }
        f(cur);
    }
}

/// Gray-code walk over the span of `basis` translated by `start`.
#[inline]
pub fn gray_walk_u64<F: FnMut(u64)>(basis: &[u64], start: u64, mut f: F) {
    let mut cur = start;
    f(cur);
    let total: u64 = 1u64 << basis.len();
    for i in 1..total {
        cur ^= basis[i.trailing_zeros() as usize];
        f(cur);
    }
}

/// Split a Gray walk into `2^split` independent chunks over the top rows.
pub(crate) fn chunked_walk_plan(k: usize) -> usize {
    // enough chunks to balance, few enough to keep the per-chunk setup negligible
    k.saturating_sub(12).min(8)
}

/// Weight histogram of the span of packed independent rows.
pub fn weight_counts_u64(n: usize, rows: &[u64], exec: Execution) -> Vec<u64> {
    coset_weight_counts_u64(n, rows, 0, exec)
}

/// Weight histogram of `start + span(rows)` for packed independent rows.
pub fn coset_weight_counts_u64(n: usize, rows: &[u64], start: u64, exec: Execution) -> Vec<u64> {
    let k = rows.len();
    let split = chunked_walk_plan(k);
    let (low, high) = rows.split_at(k - split);
    par::map_reduce(
        exec,
        1usize << split,
        vec![0u64; n + 1],
        |chunk| {
            let mut s = start;
            for (j, &h) in high.iter().enumerate() {
                if (chunk >> j) & 1 == 1 {
                    s ^= h;
                }
            }
            let mut counts = vec![0u64; n + 1];
            gray_walk_u64(low, s, |w| counts[w.count_ones() as usize] += 1);
            counts
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    )
}

/// Visit every word of `start + span(rows)` in parallel chunks.
pub fn for_each_in_coset_u64<F>(rows: &[u64], start: u64, exec: Execution, f: F)
where
    F: Fn(u64) + Sync + Send,
{
    let k = rows.len();
    let split = chunked_walk_plan(k);
    let (low, high) = rows.split_at(k - split);
    par::map_reduce(
        exec,
        1usize << split,
        (),
        |chunk| {
            let mut s = start;
            for (j, &h) in high.iter().enumerate() {
                if (chunk >> j) & 1 == 1 {
                    s ^= h;
                }
            }
            gray_walk_u64(low, s, &f);
        },
        |_, _| (),
    );
}

/// Iterator over all codewords of a row space.
pub struct CodewordIter {
    basis: Vec<BitVector>,
    current: BitVector,
    index: u64,
}

impl Iterator for CodewordIter {
    type Item = BitVector;

    fn next(&mut self) -> Option<BitVector> {
        let total = 1u64 << self.basis.len();
        if self.index >= total {
            return None;
        }
        if self.index > 0 {
            let row = &self.basis[self.index.trailing_zeros() as usize];
            self.current.xor_assign(row);
        }
        self.index += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = ((1u64 << self.basis.len()) - self.index) as usize;
        (left, Some(left))
    }
}

/// `A_i`: the number of codewords of each weight `i = 0..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightDistribution {
    counts: Vec<u64>,
}

impl WeightDistribution {
    pub fn from_counts(counts: Vec<u64>) -> Self {
        WeightDistribution { counts }
    }

    /// Code length (the distribution covers weights `0..=n`).
    pub fn n(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn count(&self, weight: usize) -> u64 {
        self.counts.get(weight).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Smallest nonzero weight that occurs.
    pub fn min_weight(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&w| self.counts[w] > 0)
    }

    /// Smallest weight that occurs at all (useful for cosets).
    pub fn min_support_weight(&self) -> Option<usize> {
        (0..self.counts.len()).find(|&w| self.counts[w] > 0)
    }

    pub fn nonzero(&self) -> BTreeMap<usize, u64> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| (w, c))
            .collect()
    }

    /// Weight distribution of the dual code via the MacWilliams transform.
    pub fn macwilliams(&self) -> Result<WeightDistribution> {
        let n = self.n();
        let size: BigInt = self.counts.iter().map(|&c| BigInt::from(c)).sum();
        let kraw = krawtchouk_table(n);
        if size.is_zero() {
            return Err(Error::Precondition("empty weight distribution".into()));
        }
        let mut out = Vec::with_capacity(n + 1);
        for row in &kraw {
            let s: BigInt = (0..=n)
                .filter(|&i| self.counts[i] > 0)
                .map(|i| BigInt::from(self.counts[i]) * &row[i])
                .sum();
            if !(&s % &size).is_zero() {
                return Err(Error::Precondition("not the weight distribution of a linear code".into()));
            }
            let v = (s / &size)
                .to_u64()
                .ok_or_else(|| Error::Precondition("negative MacWilliams coefficient".into()))?;
            out.push(v);
        }
        Ok(WeightDistribution::from_counts(out))
    }
}

/// `K_j(i) = sum_s (-1)^s C(i, s) C(n - i, j - s)`.
fn krawtchouk_table(n: usize) -> Vec<Vec<BigInt>> {
    let binom = |a: usize, b: usize| -> BigInt {
        if b > a {
            return BigInt::zero();
        }
        let mut r = BigInt::from(1u8);
        for t in 0..b {
            r = r * (a - t) / (t + 1);
        }
        r
    };
    (0..=n)
        .map(|j| {
            (0..=n)
                .map(|i| {
                    (0..=j.min(i))
                        .map(|s| {
                            let term = binom(i, s) * binom(n - i, j - s);
                            if s % 2 == 0 {
                                term
                            } else {
                                -term
                            }
                        })
                        .sum()
                })
                .collect()
        })
        .collect()
}

impl fmt::Debug for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.nonzero()).finish()
    }
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.nonzero().serialize(serializer)
    }
}
