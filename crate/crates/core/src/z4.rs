//! Linear codes over Z4: standard form, duality, Euclidean weights and types.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::canonical::rref_u64;
use crate::error::{Error, Result};

/// Longest code handled by the packed low-weight census.
pub const MAX_LENGTH: usize = 64;

/// Type of a self-dual Z4 code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Z4Type {
    TypeI,
    TypeII,
    NotSelfDual,
}

/// A Z4-linear code kept in standard form: `k1` rows with a unit pivot
/// (scaled to 1) followed by `k2` rows with entries in `{0, 2}`.
#[derive(Clone, PartialEq, Eq)]
pub struct Z4Code {
    n: usize,
    rows: Vec<Vec<u8>>,
    k1: usize,
    pivots1: Vec<usize>,
    pivots2: Vec<usize>,
}

impl Z4Code {
    /// Row reduce an arbitrary generating set.
    pub fn from_generators(n: usize, gens: &[Vec<u8>]) -> Result<Self> {
        let mut m: Vec<Vec<u8>> = Vec::with_capacity(gens.len());
        for g in gens {
            if g.len() != n {
                return Err(Error::WrongDimension {
                    expected: n,
                    found: g.len(),
                });
            }
            m.push(g.iter().map(|x| x % 4).collect());
        }
        let mut used = vec![false; n];
        let mut pivots1 = Vec::new();
        let mut top = 0;
        // units first
        while let Some((r, c)) = (top..m.len())
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .find(|&(r, c)| !used[c] && m[r][c] % 2 == 1)
        {
            m.swap(top, r);
            let inv = m[top][c]; // 1 and 3 are self-inverse
            for x in m[top].iter_mut() {
                *x = *x * inv % 4;
            }
            let pivot_row = m[top].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != top && row[c] != 0 {
                    let f = row[c];
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + 4 * 4 - f * p) % 4;
                    }
                }
            }
            used[c] = true;
            pivots1.push(c);
            top += 1;
        }
        let k1 = top;
        // the remaining rows are all even
        let mut pivots2 = Vec::new();
        while let Some((r, c)) = (top..m.len())
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .find(|&(r, c)| !used[c] && m[r][c] == 2)
        {
            m.swap(top, r);
            let pivot_row = m[top].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i != top && row[c] == 2 {
                    for (x, p) in row.iter_mut().zip(&pivot_row) {
                        *x = (*x + 4 - p) % 4;
                    }
                }
            }
            used[c] = true;
            pivots2.push(c);
            top += 1;
        }
        m.truncate(top);
        Ok(Z4Code {
            n,
            rows: m,
            k1,
            pivots1,
            pivots2,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k1(&self) -> usize {
        self.k1
    }

    pub fn k2(&self) -> usize {
        self.rows.len() - self.k1
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// `log2 |C| = 2 k1 + k2`.
    pub fn log2_size(&self) -> usize {
        2 * self.k1 + self.k2()
    }

    /// Column order `(pivots1, pivots2, rest)` realizing `(I A B ; O 2I 2C)`.
    pub fn standard_column_order(&self) -> Vec<usize> {
        let mut order = self.pivots1.clone();
        order.extend(&self.pivots2);
        let mut used = vec![false; self.n];
        for &c in &order {
            used[c] = true;
        }
        order.extend((0..self.n).filter(|&c| !used[c]));
        order
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut v: Vec<u8> = v.iter().map(|x| x % 4).collect();
        for (row, &p) in self.rows[..self.k1].iter().zip(&self.pivots1) {
            let f = v[p];
            if f != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + 16 - f * r) % 4;
                }
            }
        }
        for (row, &p) in self.rows[self.k1..].iter().zip(&self.pivots2) {
            match v[p] {
                0 => {}
                2 => {
                    for (x, r) in v.iter_mut().zip(row) {
                        *x = (*x + 4 - r) % 4;
                    }
                }
                _ => return false,
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn same_code(&self, other: &Z4Code) -> bool {
        self.n == other.n
            && self.k1 == other.k1
            && self.k2() == other.k2()
            && other.rows.iter().all(|r| self.contains(r))
    }

    /// Dual code `{x : G x^T = 0 mod 4}` from the standard form.
    pub fn dual(&self) -> Z4Code {
        let order = self.standard_column_order();
        let (k1, k2) = (self.k1, self.k2());
        let k3 = self.n - k1 - k2;
        // blocks of the permuted generator
        let a = |i: usize, j: usize| self.rows[i][order[k1 + j]] as i32;
        let b = |i: usize, j: usize| self.rows[i][order[k1 + k2 + j]] as i32;
        let c = |i: usize, j: usize| self.rows[k1 + i][order[k1 + k2 + j]] as i32 / 2;
        let mut gens = Vec::with_capacity(k3 + k2);
        // (-B^T - C^T A^T | C^T | I)
        for j in 0..k3 {
            let mut row = vec![0u8; self.n];
            for i in 0..k1 {
                let mut v = -b(i, j);
                for l in 0..k2 {
                    v -= c(l, j) * a(i, l);
                }
                row[order[i]] = v.rem_euclid(4) as u8;
            }
            for l in 0..k2 {
                row[order[k1 + l]] = c(l, j) as u8;
            }
            row[order[k1 + k2 + j]] = 1;
            gens.push(row);
        }
        // (2 A^T | 2I | O)
        for l in 0..k2 {
            let mut row = vec![0u8; self.n];
            for i in 0..k1 {
                row[order[i]] = (2 * a(i, l)).rem_euclid(4) as u8;
            }
            row[order[k1 + l]] = 2;
            gens.push(row);
        }
        Z4Code::from_generators(self.n, &gens).expect("rows have length n")
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, g)| self.rows[i..].iter().all(|h| inner(g, h) == 0))
    }

    /// Residue code: the first `k1` rows reduced mod 2 (packed, `n <= 64`).
    pub fn residue_rows(&self) -> Vec<u64> {
        self.rows[..self.k1].iter().map(|r| pack(r, |x| x % 2 == 1)).collect()
    }

    /// Torsion code `{t : 2t in C}` (packed, `n <= 64`).
    pub fn torsion_rows(&self) -> Vec<u64> {
        let mut out = self.residue_rows();
        out.extend(self.rows[self.k1..].iter().map(|r| pack(r, |x| x == 2)));
        out
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("z4 {} {} {}\n", self.n, self.k1, self.k2());
        for r in &self.rows {
            s.extend(r.iter().map(|x| char::from(b'0' + x)));
            s.push('\n');
        }
        s
    }

    /// `z4 <n> <k1> <k2>` followed by `k1 + k2` rows over `{0,1,2,3}`.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let f: Vec<&str> = header.split_whitespace().collect();
        if f.len() != 4 || f[0] != "z4" {
            return Err(Error::parse(ln, "expected header `z4 <n> <k1> <k2>`"));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|_| Error::parse(ln, "bad header number"));
        let (n, k1, k2) = (num(f[1])?, num(f[2])?, num(f[3])?);
        let mut rows = Vec::new();
        for (ln, line) in lines {
            let row: Vec<u8> = line
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    '0'..='3' => Ok(c as u8 - b'0'),
                    _ => Err(Error::parse(ln, format!("bad symbol {c:?}"))),
                })
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::parse(ln, format!("row has {} entries, expected {n}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() != k1 + k2 {
            return Err(Error::parse(0, format!("expected {} rows, found {}", k1 + k2, rows.len())));
        }
        let code = Z4Code::from_generators(n, &rows)?;
        if code.k1 != k1 || code.k2() != k2 {
            return Err(Error::parse(
                0,
                format!("rows span a code of type (k1, k2) = ({}, {})", code.k1, code.k2()),
            ));
        }
        Ok(code)
    }
}

impl fmt::Debug for Z4Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn pack(row: &[u8], pred: impl Fn(u8) -> bool) -> u64 {
    row.iter().enumerate().fold(0, |m, (i, &x)| m | (pred(x) as u64) << i)
}

/// Inner product mod 4.
pub fn inner(x: &[u8], y: &[u8]) -> u8 {
    (x.iter().zip(y).map(|(&a, &b)| a as u32 * b as u32).sum::<u32>() % 4) as u8
}

/// `n1 + 4 n2 + n3`.
pub fn euclidean_weight(x: &[u8]) -> u32 {
    x.iter().map(|&v| [0, 1, 4, 1][(v % 4) as usize]).sum()
}

/// Self-duality (`G G^T = 0 mod 4` and `|C| = 2^n`) and type.
pub fn z4_self_dual_check(c: &Z4Code) -> Z4Type {
    if c.log2_size() != c.n || !c.is_self_orthogonal() {
        return Z4Type::NotSelfDual;
    }
    // Euclidean weight mod 8 is additive on a self-orthogonal code
    let rows = &c.rows;
    let mut type2 = rows.iter().all(|r| euclidean_weight(r).is_multiple_of(8));
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if !type2 {
                break;
            }
            let s: Vec<u8> = rows[i].iter().zip(&rows[j]).map(|(a, b)| (a + b) % 4).collect();
            type2 = euclidean_weight(&s).is_multiple_of(8);
        }
    }
    if type2 {
        Z4Type::TypeII
    } else {
        Z4Type::TypeI
    }
}

/// Upper bound on `d_E`; the flag marks the Type I exception at `n = 23 mod 24`.
pub fn z4_extremal_bound(n: usize, kind: Z4Type) -> (usize, bool) {
    if kind == Z4Type::TypeI && n % 24 == 23 {
        (8 * (n / 24) + 12, true)
    } else {
        (8 * (n / 24) + 8, false)
    }
}

/// Number of words of a Z4 coset with given unit count `n1 + n3` and `n2`,
/// for all words of Euclidean weight at most a bound.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EuclideanCensus {
    pub n: usize,
    pub max_weight: u32,
    /// `(units, twos) -> count`
    pub classes: BTreeMap<(u32, u32), u64>,
}

impl EuclideanCensus {
    pub fn weight_counts(&self) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        for (&(u, t), &c) in &self.classes {
            *out.entry(u + 4 * t).or_insert(0) += c;
        }
        out
    }

    /// Minimum Euclidean weight over nonzero words, if any lies below the bound.
    pub fn min_nonzero(&self) -> Option<(u32, u64)> {
        self.weight_counts().into_iter().find(|&(w, _)| w > 0)
    }
}

/// Census of the words of `offset + C` with Euclidean weight `<= max_weight`.
///
/// Words sharing a residue `r` form `x0 + 2T` with `T` the torsion code, so
/// the number of 2s off `supp(r)` is the weight of a binary coset word of the
/// torsion code restricted to the complement.
pub fn euclidean_census(c: &Z4Code, offset: Option<&[u8]>, max_weight: u32) -> Result<EuclideanCensus> {
    let n = c.n;
    if n > MAX_LENGTH {
        return Err(Error::LengthCapExceeded { n, max: MAX_LENGTH });
    }
    if c.k1 > 30 {
        return Err(Error::DimensionTooLarge { rank: c.k1, cap: 30 });
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let torsion = c.torsion_rows();
    let mut census = EuclideanCensus {
        n,
        max_weight,
        classes: BTreeMap::new(),
    };
    let mut x: Vec<u8> = offset.map_or_else(|| vec![0; n], |o| o.iter().map(|v| v % 4).collect());
    let mut visit = |x: &[u8]| {
        let odd = pack(x, |v| v % 2 == 1);
        let units = odd.count_ones();
        if units > max_weight {
            return;
        }
        let budget = ((max_weight - units) / 4) as usize;
        let comp = all & !odd;
        let y = pack(x, |v| v == 2) & comp;
        let restricted: Vec<u64> = torsion.iter().map(|t| t & comp).collect();
        let basis = rref_u64(&restricted);
        let kernel = torsion.len() - basis.len();
        let reduce = |mut v: u64| {
            for b in &basis {
                let p = b.trailing_zeros();
                if v >> p & 1 == 1 {
                    v ^= b;
                }
            }
            v
        };
        let target = reduce(y);
        let positions: Vec<(u32, u64)> = (0..n as u32)
            .filter(|&i| comp >> i & 1 == 1)
            .map(|i| (i, reduce(1 << i)))
            .collect();
        let mut counts = vec![0u64; budget + 1];
        subset_search(&positions, 0, budget, 0, 0, target, &mut counts);
        for (t, &k) in counts.iter().enumerate() {
            if k > 0 {
                *census.classes.entry((units, t as u32)).or_insert(0) += k << kernel;
            }
        }
    };
    visit(&x);
    for i in 1u64..1u64 << c.k1 {
        let row = &c.rows[i.trailing_zeros() as usize];
        // any lift of the residue works: the 2T part is enumerated anyway
        for (v, r) in x.iter_mut().zip(row) {
            *v = (*v + r) % 4;
        }
        visit(&x);
    }
    Ok(census)
}

fn subset_search(
    positions: &[(u32, u64)],
    start: usize,
    budget: usize,
    depth: usize,
    acc: u64,
    target: u64,
    counts: &mut [u64],
) {
    if acc == target {
        counts[depth] += 1;
    }
    if depth == budget {
        return;
    }
    for i in start..positions.len() {
        subset_search(positions, i + 1, budget, depth + 1, acc ^ positions[i].1, target, counts);
    }
}

/// Minimum Euclidean weight info: `d_E` and the number of words attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EuclideanWeightInfo {
    pub min_weight: u32,
    pub count: u64,
}

/// `d_E` from the low-weight census; errors when no nonzero word lies within `cap`.
pub fn min_euclidean_weight(c: &Z4Code, cap: u32) -> Result<EuclideanWeightInfo> {
    let census = euclidean_census(c, None, cap)?;
    census
        .min_nonzero()
        .map(|(w, k)| EuclideanWeightInfo { min_weight: w, count: k })
        .ok_or(Error::ResourceCap(format!("no nonzero codeword of Euclidean weight <= {cap}")))
}
