//! Self-dual binary codes: verification, shadows, neighbors, extremal
//! weight enumerators, T-decompositions, covering radius, coset weight
//! distributions and design checks.
//!
//! Everything that enumerates codewords works on packed single-word vectors,
//! so lengths are limited to 64.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU8, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{poly_mul, poly_pow, solve};
use crate::gf2::{coset_weight_counts_u64, gray_walk_u64, BitMatrix, BitVector, WeightDistribution};
use crate::par::{self, Execution};

const MAX_PACKED: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    DoublyEven,
    SinglyEven,
}

/// A verified self-dual code with an RREF generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfDualCode {
    gen: BitMatrix,
    kind: Kind,
}

pub fn verify_self_dual(gen: &BitMatrix) -> Result<SelfDualCode> {
    let n = gen.ncols();
    if !gen.is_self_orthogonal() {
        return Err(Error::NotSelfOrthogonal);
    }
    let basis = gen.basis();
    if n % 2 == 1 || basis.nrows() * 2 != n {
        return Err(Error::WrongDimension {
            expected: n / 2,
            found: basis.nrows(),
        });
    }
    // rows are pairwise orthogonal, so row weights decide the mod-4 class
    let kind = if basis.rows().iter().all(|r| r.weight() % 4 == 0) {
        Kind::DoublyEven
    } else {
        Kind::SinglyEven
    };
    Ok(SelfDualCode { gen: basis, kind })
}

impl SelfDualCode {
    pub fn n(&self) -> usize {
        self.gen.ncols()
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.gen
    }

    pub fn is_doubly_even(&self) -> bool {
        self.kind == Kind::DoublyEven
    }

    fn packed(&self) -> Result<Vec<u64>> {
        self.gen.packed_rows().ok_or(Error::LengthCapExceeded {
            n: self.n(),
            max: MAX_PACKED,
        })
    }

    pub fn weight_distribution(&self) -> Result<WeightDistribution> {
        self.gen.weight_distribution()
    }

    pub fn minimum_weight(&self) -> Result<usize> {
        Ok(self.weight_distribution()?.min_weight().unwrap_or(0))
    }

    /// All codewords of weight `w` as packed words.
    pub fn words_of_weight(&self, w: usize) -> Result<Vec<u64>> {
        let rows = self.packed()?;
        let mut out = Vec::new();
        gray_walk_u64(&rows, 0, |x| {
            if x.count_ones() as usize == w {
                out.push(x);
            }
        });
        out.sort_unstable();
        Ok(out)
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.gen.contains(v)
    }
}

/// `4 floor(n/24) + 4`, or `+ 6` when `n = 22 mod 24`.
pub fn extremal_bound(n: usize) -> usize {
    if n % 24 == 22 {
        4 * (n / 24) + 6
    } else {
        4 * (n / 24) + 4
    }
}

/// The four cosets of the doubly even subcode `C0` inside `C0^perp`.
#[derive(Clone, Debug, Serialize)]
pub struct ShadowDecomposition {
    #[serde(skip)]
    pub c0: BitMatrix,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub c1_rep: BitVector,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub c2_rep: BitVector,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub c3_rep: BitVector,
    pub c1_weights: WeightDistribution,
    pub c3_weights: WeightDistribution,
    pub shadow_weights: WeightDistribution,
}

impl ShadowDecomposition {
    /// `C0 + rep` as a linear code.
    pub fn with_coset(&self, rep: &BitVector) -> BitMatrix {
        let mut m = self.c0.clone();
        m.push_row(rep.clone()).expect("lengths agree");
        m
    }
}

/// Doubly even subcode of a singly even self-dual code and a weight-2-mod-4
/// representative.
fn doubly_even_part(c: &SelfDualCode) -> Result<(BitMatrix, BitVector)> {
    if c.is_doubly_even() {
        return Err(Error::CodeIsDoublyEven);
    }
    let rows = c.gen.rows();
    let pivot = rows.iter().position(|r| r.weight() % 4 == 2).expect("singly even");
    let r = rows[pivot].clone();
    let c0_rows: Vec<BitVector> = rows
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pivot)
        .map(|(_, row)| if row.weight() % 4 == 2 { row.xor(&r) } else { row.clone() })
        .collect();
    Ok((BitMatrix::new(c.n(), c0_rows)?, r))
}

pub fn shadow(c: &SelfDualCode) -> Result<ShadowDecomposition> {
    shadow_with(c, Execution::Auto)
}

pub fn shadow_with(c: &SelfDualCode, exec: Execution) -> Result<ShadowDecomposition> {
    let n = c.n();
    let (c0, c2_rep) = doubly_even_part(c)?;
    if n > MAX_PACKED {
        return Err(Error::LengthCapExceeded { n, max: MAX_PACKED });
    }
    let s = c0
        .dual_code()
        .rows()
        .iter()
        .find(|v| !c.contains(v))
        .cloned()
        .expect("C0 has index 4 in its dual");
    let rows = c0.packed_rows().expect("n <= 64");
    let coset = |v: &BitVector| {
        WeightDistribution::from_counts(coset_weight_counts_u64(n, &rows, v.to_u64().unwrap_or(0), exec))
    };
    let a = s.clone();
    let b = s.xor(&c2_rep);
    let (wa, wb) = (coset(&a), coset(&b));
    let a_first = match wa.min_support_weight().cmp(&wb.min_support_weight()) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => {
            let w = wa.min_support_weight().unwrap_or(0);
            least_of_weight(&rows, &a, w) <= least_of_weight(&rows, &b, w)
        }
    };
    let (c1_rep, c3_rep, c1_weights, c3_weights) = if a_first {
        (a, b, wa, wb)
    } else {
        (b, a, wb, wa)
    };
    let shadow_weights = WeightDistribution::from_counts(
        c1_weights
            .counts()
            .iter()
            .zip(c3_weights.counts())
            .map(|(x, y)| x + y)
            .collect(),
    );
    if n == 40 && c.minimum_weight()? == 8 && c1_weights.count(4) > 0 && c3_weights.count(4) > 0 {
        return Err(Error::ProfileMismatch(
            "weight-4 shadow vectors split across both cosets".into(),
        ));
    }
    Ok(ShadowDecomposition {
        c0,
        c1_rep: normalize_rep(&rows, &c1_rep),
        c2_rep,
        c3_rep: normalize_rep(&rows, &c3_rep),
        c1_weights,
        c3_weights,
        shadow_weights,
    })
}

/// Lexicographically least 0/1 string of weight `w` in `rep + span(rows)`.
fn least_of_weight(rows: &[u64], rep: &BitVector, w: usize) -> String {
    let mut best: Option<u64> = None;
    // bit 0 is the first character, so reversing bits turns string order into integer order
    gray_walk_u64(rows, rep.to_u64().unwrap_or(0), |x| {
        if x.count_ones() as usize == w {
            let key = x.reverse_bits();
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    });
    best.map(|k| BitVector::from_u64(rep.len(), k.reverse_bits()).to_string())
        .unwrap_or_default()
}

/// A minimum-weight vector of the coset, chosen as the least such string.
fn normalize_rep(rows: &[u64], rep: &BitVector) -> BitVector {
    let mut best: Option<(u32, u64)> = None;
    gray_walk_u64(rows, rep.to_u64().unwrap_or(0), |x| {
        let key = (x.count_ones(), x.reverse_bits());
        if best.is_none_or(|b| key < b) {
            best = Some(key);
        }
    });
    let (_, k) = best.expect("coset is nonempty");
    BitVector::from_u64(rep.len(), k.reverse_bits())
}

/// `C0 + C1` and `C0 + C3`, both doubly even self-dual.
pub fn doubly_even_neighbors(c: &SelfDualCode) -> Result<(SelfDualCode, SelfDualCode)> {
    if c.is_doubly_even() {
        return Err(Error::CodeIsDoublyEven);
    }
    if !c.n().is_multiple_of(8) {
        return Err(Error::LengthNotDivisibleBy8(c.n()));
    }
    let sh = shadow(c)?;
    let a = verify_self_dual(&sh.with_coset(&sh.c1_rep))?;
    let b = verify_self_dual(&sh.with_coset(&sh.c3_rep))?;
    debug_assert!(a.is_doubly_even() && b.is_doubly_even());
    Ok((a, b))
}

/// The singly even self-dual code through a codimension-1 subcode of a
/// doubly even code.
pub fn singly_even_neighbor(d: &SelfDualCode, subcode: &BitMatrix) -> Result<SelfDualCode> {
    let n = d.n();
    if !d.is_doubly_even() {
        return Err(Error::SubcodeInvalid("ambient code is not doubly even".into()));
    }
    if subcode.ncols() != n {
        return Err(Error::SubcodeInvalid("length mismatch".into()));
    }
    let sub = subcode.basis();
    if sub.nrows() + 1 != n / 2 {
        return Err(Error::SubcodeInvalid(format!(
            "dimension {} instead of {}",
            sub.nrows(),
            n / 2 - 1
        )));
    }
    if !sub.contains(&BitVector::ones(n)) {
        return Err(Error::SubcodeInvalid("subcode does not contain the all-one vector".into()));
    }
    if sub.rows().iter().any(|r| !d.contains(r)) {
        return Err(Error::SubcodeInvalid("subcode is not contained in the code".into()));
    }
    let u = d
        .gen
        .rows()
        .iter()
        .find(|r| !sub.contains(r))
        .cloned()
        .expect("dimensions differ");
    let v = sub
        .dual_code()
        .rows()
        .iter()
        .find(|r| !d.contains(r))
        .cloned()
        .expect("subcode dual is larger than the code");
    for rep in [v.clone(), v.xor(&u)] {
        let mut m = sub.clone();
        m.push_row(rep)?;
        let code = verify_self_dual(&m)?;
        if code.kind() == Kind::SinglyEven {
            return Ok(code);
        }
    }
    Err(Error::SubcodeInvalid("both other neighbors are doubly even".into()))
}

/// Disjoint 4-sets whose pairwise unions support codewords.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TDecomposition {
    pub tetrads: Vec<[usize; 4]>,
}

/// Test whether the weight-4 codewords form (part of) a T-decomposition with
/// `beta` tetrads.
pub fn find_t_decomposition(c: &SelfDualCode, beta: usize) -> Result<Option<TDecomposition>> {
    let n = c.n();
    if beta == 0 || beta > n / 4 {
        return Err(Error::Precondition(format!("beta must lie in 1..={}", n / 4)));
    }
    let fours = c.words_of_weight(4)?;
    if fours.len() != beta {
        return Ok(None);
    }
    for (i, &a) in fours.iter().enumerate() {
        for &b in &fours[i + 1..] {
            if a & b != 0 {
                return Ok(None);
            }
            if !c.contains(&BitVector::from_u64(n, a | b)) {
                return Ok(None);
            }
        }
    }
    let mut tetrads: Vec<[usize; 4]> = fours
        .iter()
        .map(|&w| {
            let s = BitVector::from_u64(n, w).support();
            [s[0], s[1], s[2], s[3]]
        })
        .collect();
    tetrads.sort_unstable();
    Ok(Some(TDecomposition { tetrads }))
}

/// Weight enumerators of a singly even self-dual code and its shadow, as
/// exact coefficient vectors indexed by weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratorPair {
    pub code: Vec<BigInt>,
    pub shadow: Vec<BigInt>,
}

/// Gleason-space solution for a singly even self-dual code of length `n`
/// with prescribed code coefficients `A_w` and shadow coefficients `B_w`.
/// Exactly `n/8 + 1` conditions are required.
pub fn gleason_singly_even(n: usize, code: &[(usize, i64)], shadow: &[(usize, i64)]) -> Result<EnumeratorPair> {
    if !n.is_multiple_of(2) {
        return Err(Error::Precondition("length must be even".into()));
    }
    let m = n / 8 + 1;
    if code.len() + shadow.len() != m {
        return Err(Error::Precondition(format!("need exactly {m} conditions")));
    }
    let len = n + 1;
    let one = BigInt::one();
    let g1 = poly_pow(&[one.clone(), BigInt::zero(), one.clone()], 1, len);
    let g2 = {
        let mut p = vec![BigInt::zero(); len.max(7)];
        p[2] = BigInt::from(1);
        p[4] = BigInt::from(-2);
        p[6] = BigInt::from(1);
        p.truncate(len);
        p
    };
    let code_basis: Vec<Vec<BigInt>> = (0..m)
        .map(|j| poly_mul(&poly_pow(&g1, n / 2 - 4 * j, len), &poly_pow(&g2, j, len), len))
        .collect();
    // shadow of the j-th basis polynomial: (-1)^j 2^(n/2 - 6j) y^(n/2 - 4j) (1 - y^4)^(2j)
    let shadow_basis: Vec<Vec<BigRational>> = (0..m)
        .map(|j| {
            let mut quartic = vec![BigInt::zero(); len.max(5)];
            quartic[0] = one.clone();
            quartic[4] = BigInt::from(-1);
            quartic.truncate(len);
            let p = poly_pow(&quartic, 2 * j, len);
            let exp = n as i64 / 2 - 6 * j as i64;
            let scale = if exp >= 0 {
                BigRational::from_integer(BigInt::one() << exp as usize)
            } else {
                BigRational::new(BigInt::one(), BigInt::one() << (-exp) as usize)
            };
            let sign = if j % 2 == 0 { scale } else { -scale };
            let shift = n / 2 - 4 * j;
            let mut out = vec![BigRational::zero(); len];
            for (i, c) in p.iter().enumerate() {
                if i + shift < len {
                    out[i + shift] = BigRational::from_integer(c.clone()) * &sign;
                }
            }
            out
        })
        .collect();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for &(w, v) in code {
        rows.push((0..m).map(|j| BigRational::from_integer(code_basis[j][w].clone())).collect());
        rhs.push(BigRational::from_integer(v.into()));
    }
    for &(w, v) in shadow {
        rows.push((0..m).map(|j| shadow_basis[j][w].clone()).collect());
        rhs.push(BigRational::from_integer(v.into()));
    }
    let a = solve(rows, rhs).ok_or_else(|| Error::Precondition("conditions do not determine the enumerator".into()))?;
    let combine = |basis: &dyn Fn(usize, usize) -> BigRational| -> Result<Vec<BigInt>> {
        (0..len)
            .map(|w| {
                let v: BigRational = (0..m).map(|j| &a[j] * basis(j, w)).sum();
                if v.is_integer() {
                    Ok(v.to_integer())
                } else {
                    Err(Error::ProfileMismatch(format!("non-integral coefficient at weight {w}")))
                }
            })
            .collect()
    };
    let code = combine(&|j, w| BigRational::from_integer(code_basis[j][w].clone()))?;
    let shadow = combine(&|j, w| shadow_basis[j][w].clone())?;
    Ok(EnumeratorPair { code, shadow })
}

/// The pair `W_{40,C,beta}`, `W_{40,S,beta}` of an extremal singly even
/// self-dual code of length 40.
pub fn extremal_enumerators_40(beta: i64) -> Result<EnumeratorPair> {
    gleason_singly_even(40, &[(0, 1), (2, 0), (4, 0), (6, 0)], &[(0, 0), (4, beta)])
}

/// Values of `beta` for which an extremal singly even code of length 40 exists.
pub fn beta_is_realizable(beta: i64) -> bool {
    (0..=8).contains(&beta) || beta == 10
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalProfile {
    pub beta: i64,
    pub code: WeightDistribution,
    pub shadow: WeightDistribution,
}

pub fn check_extremal_profile(c: &SelfDualCode) -> Result<ExtremalProfile> {
    if c.n() != 40 {
        return Err(Error::ProfileMismatch(format!("length {} is not 40", c.n())));
    }
    if c.is_doubly_even() {
        return Err(Error::ProfileMismatch("code is doubly even".into()));
    }
    let wd = c.weight_distribution()?;
    if wd.min_weight() != Some(8) {
        return Err(Error::ProfileMismatch(format!("minimum weight {:?} is not 8", wd.min_weight())));
    }
    let a8 = wd.count(8) as i64;
    if (a8 - 125) % 16 != 0 {
        return Err(Error::ProfileMismatch(format!("A8 = {a8} is not 125 + 16 beta")));
    }
    let beta = (a8 - 125) / 16;
    if !beta_is_realizable(beta) {
        return Err(Error::ProfileMismatch(format!("beta = {beta} is impossible")));
    }
    let expected = extremal_enumerators_40(beta)?;
    let sh = shadow(c)?;
    let matches = |got: &WeightDistribution, want: &[BigInt]| {
        want.iter().enumerate().all(|(w, x)| BigInt::from(got.count(w)) == *x)
    };
    if !matches(&wd, &expected.code) {
        return Err(Error::ProfileMismatch("code enumerator differs from the closed form".into()));
    }
    if !matches(&sh.shadow_weights, &expected.shadow) {
        return Err(Error::ProfileMismatch("shadow enumerator differs from the closed form".into()));
    }
    Ok(ExtremalProfile {
        beta,
        code: wd,
        shadow: sh.shadow_weights,
    })
}

/// Coset-leader data of a linear code.
#[derive(Clone, Debug, Serialize)]
pub struct CoveringInfo {
    pub radius: usize,
    /// Number of cosets whose minimum weight is `i`.
    pub cosets_by_weight: Vec<u64>,
}

const UNSEEN: u8 = u8::MAX;

/// Syndrome table: `dist[s]` is the minimum weight of the coset with syndrome `s`.
struct SyndromeTable {
    columns: Vec<u32>,
    dist: Vec<u8>,
    redundancy: usize,
}

fn syndrome_table(code: &BitMatrix, exec: Execution) -> Result<SyndromeTable> {
    let n = code.ncols();
    if n > MAX_PACKED {
        return Err(Error::LengthCapExceeded { n, max: MAX_PACKED });
    }
    let h = code.dual_code();
    let r = h.nrows();
    if r > 24 {
        return Err(Error::ResourceCap(format!("2^{r} syndromes exceed the 2^24 table cap")));
    }
    let columns: Vec<u32> = (0..n)
        .map(|i| {
            h.rows()
                .iter()
                .enumerate()
                .fold(0u32, |s, (j, row)| s | (row.get(i) as u32) << j)
        })
        .collect();
    let table: Vec<AtomicU8> = (0..1usize << r).map(|_| AtomicU8::new(UNSEEN)).collect();
    table[0].store(0, Ordering::Relaxed);
    let mut frontier = vec![0u32];
    let mut level = 0u8;
    const CHUNK: usize = 4096;
    while !frontier.is_empty() {
        level += 1;
        let chunks = frontier.len().div_ceil(CHUNK);
        let mut next = par::map_reduce(
            exec,
            chunks,
            Vec::new(),
            |c| {
                let mut claimed = Vec::new();
                for &s in &frontier[c * CHUNK..((c + 1) * CHUNK).min(frontier.len())] {
                    for &col in &columns {
                        let t = s ^ col;
                        if table[t as usize]
                            .compare_exchange(UNSEEN, level, Ordering::Relaxed, Ordering::Relaxed)
                            .is_ok()
                        {
                            claimed.push(t);
                        }
                    }
                }
                claimed
            },
            |mut a, mut b| {
                a.append(&mut b);
                a
            },
        );
        next.sort_unstable();
        frontier = next;
    }
    let dist = table.into_iter().map(|a| a.into_inner()).collect();
    Ok(SyndromeTable {
        columns,
        dist,
        redundancy: r,
    })
}

pub fn covering_radius(code: &BitMatrix) -> Result<CoveringInfo> {
    covering_radius_with(code, Execution::Auto)
}

pub fn covering_radius_with(code: &BitMatrix, exec: Execution) -> Result<CoveringInfo> {
    let t = syndrome_table(code, exec)?;
    if t.dist.contains(&UNSEEN) {
        return Err(Error::Precondition("syndrome columns do not span".into()));
    }
    let radius = t.dist.iter().copied().max().unwrap_or(0) as usize;
    let mut cosets_by_weight = vec![0u64; radius + 1];
    for &d in &t.dist {
        cosets_by_weight[d as usize] += 1;
    }
    Ok(CoveringInfo {
        radius,
        cosets_by_weight,
    })
}

/// Histogram of full coset weight enumerators over the cosets of minimum
/// weight exactly `min_weight`.
pub fn coset_weight_distribution(code: &BitMatrix, min_weight: usize) -> Result<BTreeMap<Vec<u64>, u64>> {
    coset_weight_distribution_with(code, min_weight, Execution::Auto)
}

pub fn coset_weight_distribution_with(
    code: &BitMatrix,
    min_weight: usize,
    exec: Execution,
) -> Result<BTreeMap<Vec<u64>, u64>> {
    let n = code.ncols();
    let t = syndrome_table(code, exec)?;
    let basis = code.basis();
    if basis.nrows() > 24 {
        return Err(Error::ResourceCap("code dimension above 2^24 enumeration cap".into()));
    }
    let rows = basis.packed_rows().expect("n <= 64");
    // one leader per qualifying syndrome, found by walking weight-w vectors in order
    let mut leaders: BTreeMap<u32, u64> = BTreeMap::new();
    let wanted = t.dist.iter().filter(|&&d| d as usize == min_weight).count();
    if wanted > 0 {
        let mut stack: Vec<(usize, u64, u32, usize)> = vec![(0, 0, 0, 0)];
        while let Some((start, v, s, w)) = stack.pop() {
            if w == min_weight {
                if t.dist[s as usize] as usize == min_weight {
                    leaders.entry(s).or_insert(v);
                }
                continue;
            }
            for i in (start..n).rev() {
                stack.push((i + 1, v | 1u64 << i, s ^ t.columns[i], w + 1));
            }
            if leaders.len() == wanted {
                break;
            }
        }
    }
    let _ = t.redundancy;
    let reps: Vec<u64> = leaders.values().copied().collect();
    let enumerators = par::map_collect(exec, &reps, |&v| {
        coset_weight_counts_u64(n, &rows, v, Execution::Sequential)
    });
    let mut hist = BTreeMap::new();
    for e in enumerators {
        *hist.entry(e).or_insert(0u64) += 1;
    }
    Ok(hist)
}

/// Parameters `(v, k, lambda)` of a t-design.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Design {
    pub t: usize,
    pub v: usize,
    pub k: usize,
    pub lambda: u64,
    pub blocks: usize,
}

/// Whether the supports of weight-`weight` codewords form a `t`-design.
pub fn design_check(c: &SelfDualCode, weight: usize, t: usize) -> Result<Option<Design>> {
    if !(1..=2).contains(&t) {
        return Err(Error::Precondition("t must be 1 or 2".into()));
    }
    let n = c.n();
    let blocks = c.words_of_weight(weight)?;
    if blocks.is_empty() {
        return Err(Error::Precondition(format!("no codewords of weight {weight}")));
    }
    let lambda = if t == 1 {
        let counts: Vec<u64> = (0..n)
            .map(|i| blocks.iter().filter(|&&b| b >> i & 1 == 1).count() as u64)
            .collect();
        if counts.iter().any(|&x| x != counts[0]) {
            return Ok(None);
        }
        counts[0]
    } else {
        let mut lambda = None;
        for i in 0..n {
            for j in i + 1..n {
                let m = 1u64 << i | 1u64 << j;
                let x = blocks.iter().filter(|&&b| b & m == m).count() as u64;
                if *lambda.get_or_insert(x) != x {
                    return Ok(None);
                }
            }
        }
        lambda.unwrap_or(0)
    };
    Ok(Some(Design {
        t,
        v: n,
        k: weight,
        lambda,
        blocks: blocks.len(),
    }))
}

/// `C (+) D` on disjoint coordinates.
pub fn direct_sum(a: &BitMatrix, b: &BitMatrix) -> BitMatrix {
    let na = a.ncols();
    let nb = b.ncols();
    let mut rows: Vec<BitVector> = a.rows().iter().map(|r| r.concat(&BitVector::zeros(nb))).collect();
    rows.extend(b.rows().iter().map(|r| BitVector::zeros(na).concat(r)));
    BitMatrix::new(na + nb, rows).expect("lengths agree")
}

/// `{c in C : c . y = 0}`.
pub fn hyperplane(code: &BitMatrix, y: &BitVector) -> BitMatrix {
    let rows = code.basis().rows().to_vec();
    let Some(p) = rows.iter().position(|r| r.dot(y)) else {
        return code.basis();
    };
    let pivot = rows[p].clone();
    let kept = rows
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != p)
        .map(|(_, r)| if r.dot(y) { r.xor(&pivot) } else { r.clone() })
        .collect();
    BitMatrix::new(code.ncols(), kept).expect("lengths agree")
}

/// Sum of the absolute coefficients, used to sanity-check enumerators.
pub fn enumerator_total(coeffs: &[BigInt]) -> Option<u64> {
    coeffs.iter().try_fold(0u64, |acc, c| {
        if c.is_negative() {
            None
        } else {
            c.to_u64().map(|x| acc + x)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep2() -> SelfDualCode {
        verify_self_dual(&BitMatrix::from_strs(&["11"]).unwrap()).unwrap()
    }

    fn hamming8() -> BitMatrix {
        BitMatrix::from_strs(&["11110000", "00111100", "00001111", "01010101"]).unwrap()
    }

    #[test]
    fn verification_and_kind() {
        assert_eq!(rep2().kind(), Kind::SinglyEven);
        assert_eq!(verify_self_dual(&hamming8()).unwrap().kind(), Kind::DoublyEven);
        assert_eq!(
            verify_self_dual(&BitMatrix::from_strs(&["10"]).unwrap()),
            Err(Error::NotSelfOrthogonal)
        );
        assert!(matches!(
            verify_self_dual(&BitMatrix::from_strs(&["1111"]).unwrap()),
            Err(Error::WrongDimension { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn bounds() {
        assert_eq!(extremal_bound(40), 8);
        assert_eq!(extremal_bound(22), 6);
        assert_eq!(extremal_bound(2), 4);
        assert_eq!(extremal_bound(24), 8);
    }

    #[test]
    fn shadow_of_repetition_code() {
        let sh = shadow(&rep2()).unwrap();
        assert_eq!(sh.shadow_weights.nonzero(), BTreeMap::from([(1, 2)]));
        assert!(matches!(
            shadow(&verify_self_dual(&hamming8()).unwrap()),
            Err(Error::CodeIsDoublyEven)
        ));
    }

    #[test]
    fn neighbors_of_hamming() {
        let h = verify_self_dual(&hamming8()).unwrap();
        let mut subcodes: Vec<BitMatrix> = Vec::new();
        for bits in 0u64..256 {
            let y = BitVector::from_u64(8, bits);
            if y.weight() % 2 == 1 || h.contains(&y) {
                continue;
            }
            let sub = hyperplane(h.generator(), &y).basis();
            if !subcodes.iter().any(|s| s.same_row_space(&sub)) {
                subcodes.push(sub);
            }
        }
        assert_eq!(subcodes.len(), 7);
        for sub in &subcodes {
            let c = singly_even_neighbor(&h, sub).unwrap();
            assert_eq!(c.kind(), Kind::SinglyEven);
            assert_eq!(c.minimum_weight().unwrap(), 2);
            let (a, b) = doubly_even_neighbors(&c).unwrap();
            assert!(a.is_doubly_even() && b.is_doubly_even());
        }
        let bad = hyperplane(h.generator(), &BitVector::from_support(8, &[0]));
        assert!(matches!(singly_even_neighbor(&h, &bad), Err(Error::SubcodeInvalid(_))));
    }

    #[test]
    fn closed_form_at_length_40_matches_printed_terms() {
        for beta in [0i64, 3, 10] {
            let e = extremal_enumerators_40(beta).unwrap();
            assert_eq!(e.code[8], BigInt::from(125 + 16 * beta));
            assert_eq!(e.code[10], BigInt::from(1664 - 64 * beta));
            assert_eq!(e.code[12], BigInt::from(10720 + 32 * beta));
            assert_eq!(e.shadow[4], BigInt::from(beta));
            assert_eq!(e.shadow[8], BigInt::from(320 - 8 * beta));
            assert_eq!(e.shadow[12], BigInt::from(21120 + 28 * beta));
            assert_eq!(enumerator_total(&e.code), Some(1 << 20));
            assert_eq!(enumerator_total(&e.shadow), Some(1 << 20));
        }
        assert!(!beta_is_realizable(9));
    }

    #[test]
    fn covering_radius_small() {
        let info = covering_radius(&BitMatrix::from_strs(&["11"]).unwrap()).unwrap();
        assert_eq!(info.radius, 1);
        assert_eq!(info.cosets_by_weight, vec![1, 1]);
        let h = covering_radius(&hamming8()).unwrap();
        assert_eq!(h.radius, 2);
        assert_eq!(h.cosets_by_weight, vec![1, 8, 7]);
    }

    #[test]
    fn coset_distribution_small() {
        let hist = coset_weight_distribution(&BitMatrix::from_strs(&["11"]).unwrap(), 1).unwrap();
        assert_eq!(hist, BTreeMap::from([(vec![0, 2, 0], 1)]));
    }

    #[test]
    fn designs() {
        let rep = rep2();
        let d = design_check(&rep, 2, 1).unwrap().unwrap();
        assert_eq!((d.v, d.k, d.lambda), (2, 2, 1));
        let h = verify_self_dual(&hamming8()).unwrap();
        let d = design_check(&h, 4, 1).unwrap().unwrap();
        assert_eq!((d.v, d.k, d.lambda, d.blocks), (8, 4, 7, 14));
        let d = design_check(&h, 4, 2).unwrap().unwrap();
        assert_eq!(d.lambda, 3);
    }
}
