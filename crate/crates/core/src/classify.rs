//! Isomorph-free generation of self-dual codes and the neighbor sweep over
//! codimension-1 subcodes.
//!
//! Generation grows codes two coordinates at a time. A child of a parent `P`
//! of length `m` is either `P (+) {00, 11}` or the code spanned by
//! `(c, c.x, c.x)` for `c` in `P` and `(x, 1, 0)` for an odd-weight `x`. The
//! child depends only on the coset `x + P`, so candidates are odd syndromes,
//! reduced to one per `Aut(P)`-orbit. A child is kept only when the appended
//! pair lies in the `Aut(child)`-orbit of the pair occupying the last two
//! canonical positions; that pair determines the parent up to equivalence, so
//! every class is emitted exactly once.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use serde::Serialize;

use crate::canonical::{canonize, pair_orbit, CanonicalForm, Canonized};
use crate::error::{Error, Result};
use crate::gf2::{gray_walk_u64, BitMatrix, BitVector};
use crate::par::{self, Execution};
use crate::selfdual::{
    check_extremal_profile, extremal_bound, find_t_decomposition, singly_even_neighbor, verify_self_dual, Kind,
    SelfDualCode,
};

/// Largest length generated without an explicit override.
pub const DESK_LENGTH_LIMIT: usize = 32;

/// One equivalence class found by the generator.
#[derive(Clone, Debug)]
pub struct ClassRecord {
    pub code: SelfDualCode,
    pub form: CanonicalForm,
    pub aut_order: BigUint,
    pub aut_generators: Vec<Vec<usize>>,
    pub min_weight: usize,
}

impl ClassRecord {
    fn new(code: SelfDualCode, canon: Canonized) -> Result<Self> {
        let min_weight = code.minimum_weight()?;
        Ok(ClassRecord {
            code,
            form: canon.form,
            aut_order: canon.automorphisms.order,
            aut_generators: canon.automorphisms.generators,
            min_weight,
        })
    }

    pub fn kind(&self) -> Kind {
        self.code.kind()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GenerationStats {
    pub parents: u64,
    pub extensions_tried: u64,
    pub parent_test_rejections: u64,
    pub duplicates: u64,
}

#[derive(Clone, Debug)]
pub struct GenerationRun {
    pub n: usize,
    pub floor: usize,
    pub classes: Vec<ClassRecord>,
    pub stats: GenerationStats,
}

impl GenerationRun {
    /// `(doubly even, singly even)` class counts.
    pub fn counts(&self) -> (usize, usize) {
        let de = self.classes.iter().filter(|c| c.kind() == Kind::DoublyEven).count();
        (de, self.classes.len() - de)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct GenerateOptions {
    pub exec: Execution,
    /// Allow lengths above [`DESK_LENGTH_LIMIT`].
    pub force: bool,
}

impl Default for GenerateOptions {
    fn default() -> Self {
        GenerateOptions {
            exec: Execution::Auto,
            force: false,
        }
    }
}

/// The code spanned by `(c, c.x, c.x)` for `c` in `c` and `(x, 1, 0)`.
pub fn extend_by_two(c: &SelfDualCode, x: &BitVector) -> Result<SelfDualCode> {
    if x.len() != c.n() {
        return Err(Error::WrongDimension {
            expected: c.n(),
            found: x.len(),
        });
    }
    if x.weight().is_multiple_of(2) {
        return Err(Error::EvenWeightVector);
    }
    let pair = |a: bool, b: bool| BitVector::from_words(2, vec![a as u64 | (b as u64) << 1]);
    let mut rows: Vec<BitVector> = c
        .generator()
        .rows()
        .iter()
        .map(|g| {
            let s = g.dot(x);
            g.concat(&pair(s, s))
        })
        .collect();
    rows.push(x.concat(&pair(true, false)));
    verify_self_dual(&BitMatrix::new(c.n() + 2, rows)?)
}

/// `c (+) {00, 11}`.
pub fn extend_by_pair(c: &SelfDualCode) -> Result<SelfDualCode> {
    let n = c.n();
    let mut rows: Vec<BitVector> = c.generator().rows().iter().map(|g| g.concat(&BitVector::zeros(2))).collect();
    rows.push(BitVector::zeros(n).concat(&BitVector::ones(2)));
    verify_self_dual(&BitMatrix::new(n + 2, rows)?)
}

/// Whether the last two coordinates of `child` are, up to `Aut(child)`, the
/// pair at the last two canonical positions.
pub fn parent_test(child: &SelfDualCode) -> Result<bool> {
    let canon = canonize(child.generator(), &[])?;
    Ok(parent_test_with(child.n(), &canon))
}

fn parent_test_with(n: usize, canon: &Canonized) -> bool {
    let Some(last) = canon.form.last_pair() else {
        return true;
    };
    pair_orbit(&canon.automorphisms.generators, last).contains(&(n - 2, n - 1))
}

/// The smallest self-dual code, `{00, 11}`.
pub fn length_two_code() -> SelfDualCode {
    verify_self_dual(&BitMatrix::from_strs(&["11"]).expect("static")).expect("self-dual")
}

pub fn generate(n: usize, floor: usize) -> Result<GenerationRun> {
    generate_with(n, floor, GenerateOptions::default())
}

pub fn generate_with(n: usize, floor: usize, opts: GenerateOptions) -> Result<GenerationRun> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Precondition(format!("length {n} must be even and positive")));
    }
    if n > DESK_LENGTH_LIMIT && !opts.force {
        return Err(Error::BudgetExceeded(format!(
            "length {n} is above the desk limit {DESK_LENGTH_LIMIT}"
        )));
    }
    if n > 64 {
        return Err(Error::LengthCapExceeded { n, max: 64 });
    }
    if floor > extremal_bound(n) {
        return Err(Error::Precondition(format!(
            "floor {floor} exceeds the bound {} at length {n}",
            extremal_bound(n)
        )));
    }
    // floors per length, relaxed by two for each step down
    let mut floors = BTreeMap::new();
    let mut f = floor;
    let mut m = n;
    while m >= 2 {
        floors.insert(m, f);
        f = f.saturating_sub(2).max(2);
        m -= 2;
    }
    let mut stats = GenerationStats::default();
    let base = length_two_code();
    let mut classes = if floors[&2] <= 2 {
        vec![ClassRecord::new(base.clone(), canonize(base.generator(), &[])?)?]
    } else {
        Vec::new()
    };
    for m in (4..=n).step_by(2) {
        classes = next_level(&classes, floors[&m], opts.exec, &mut stats)?;
    }
    Ok(GenerationRun {
        n,
        floor,
        classes,
        stats,
    })
}

enum Candidate {
    Pair,
    Syndrome(u32),
}

fn next_level(parents: &[ClassRecord], floor: usize, exec: Execution, stats: &mut GenerationStats) -> Result<Vec<ClassRecord>> {
    stats.parents += parents.len() as u64;
    let mut jobs: Vec<(usize, Candidate)> = Vec::new();
    for (pi, p) in parents.iter().enumerate() {
        if floor <= 2 {
            jobs.push((pi, Candidate::Pair));
        }
        for s in odd_coset_representatives(p, floor, exec) {
            jobs.push((pi, Candidate::Syndrome(s)));
        }
    }
    stats.extensions_tried += jobs.len() as u64;
    let results = par::map_collect(exec, &jobs, |(pi, cand)| -> Result<Option<(SelfDualCode, Canonized)>> {
        let p = &parents[*pi].code;
        let child = match cand {
            Candidate::Pair => extend_by_pair(p)?,
            Candidate::Syndrome(s) => extend_by_two(p, &syndrome_to_vector(p, *s))?,
        };
        let canon = canonize(child.generator(), &[])?;
        Ok(parent_test_with(child.n(), &canon).then_some((child, canon)))
    });
    let mut kept: BTreeMap<Vec<u64>, ClassRecord> = BTreeMap::new();
    for r in results {
        match r? {
            None => stats.parent_test_rejections += 1,
            Some((child, canon)) => {
                let key = canon.form.certificate.clone();
                if kept.contains_key(&key) {
                    stats.duplicates += 1;
                    continue;
                }
                let rec = ClassRecord::new(child, canon)?;
                if rec.min_weight < floor {
                    return Err(Error::Precondition(format!(
                        "filter admitted a code of minimum weight {} below {floor}",
                        rec.min_weight
                    )));
                }
                kept.insert(key, rec);
            }
        }
    }
    Ok(kept.into_values().collect())
}

/// Pivot columns of the RREF generator; `e_{p_j}` has syndrome `e_j`.
fn pivots(p: &SelfDualCode) -> Vec<usize> {
    p.generator()
        .rows()
        .iter()
        .map(|r| r.support()[0])
        .collect()
}

fn syndrome_to_vector(p: &SelfDualCode, s: u32) -> BitVector {
    let piv = pivots(p);
    let support: Vec<usize> = (0..piv.len()).filter(|&j| s >> j & 1 == 1).map(|j| piv[j]).collect();
    BitVector::from_support(p.n(), &support)
}

/// One odd syndrome per `Aut(P)`-orbit whose extension has minimum weight
/// at least `floor`.
fn odd_coset_representatives(p: &ClassRecord, floor: usize, exec: Execution) -> Vec<u32> {
    let code = &p.code;
    let m = code.n();
    let rows = code.generator().packed_rows().expect("length at most 64");
    let k = rows.len();
    let piv = pivots(code);
    let column = |i: usize| -> u32 {
        rows.iter()
            .enumerate()
            .fold(0u32, |s, (j, &r)| s | ((r >> i & 1) as u32) << j)
    };
    let columns: Vec<u32> = (0..m).map(column).collect();

    // codewords of weight floor-2 or floor-1 must be odd against x
    let mut forced: Vec<u32> = Vec::new();
    if floor >= 3 {
        let mut coef = 0u32;
        let mut word = 0u64;
        let wt_ok = |w: u64| {
            let c = w.count_ones() as usize;
            c + 2 == floor || c + 1 == floor
        };
        if wt_ok(word) && word != 0 {
            forced.push(coef);
        }
        for i in 1u64..1u64 << k {
            let j = i.trailing_zeros() as usize;
            word ^= rows[j];
            coef ^= 1 << j;
            if wt_ok(word) {
                forced.push(coef);
            }
        }
    }
    // syndromes of vectors of weight <= floor - 2
    let mut low = vec![false; 1usize << k];
    if floor >= 3 {
        let max_w = floor - 2;
        let mut stack: Vec<(usize, u32, usize)> = vec![(0, 0, 0)];
        while let Some((start, s, w)) = stack.pop() {
            low[s as usize] = true;
            if w == max_w {
                continue;
            }
            for i in start..m {
                stack.push((i + 1, s ^ columns[i], w + 1));
            }
        }
    }
    let passes = |s: u32| -> bool {
        s.count_ones() % 2 == 1 && !low[s as usize] && forced.iter().all(|&c| (c & s).count_ones() % 2 == 1)
    };

    // action of each automorphism on syndromes: column j is the image of e_{p_j}
    let actions: Vec<Vec<u32>> = p
        .aut_generators
        .iter()
        .map(|g| (0..k).map(|j| columns[g[piv[j]]]).collect())
        .collect();
    let size = 1usize << k;
    let mut parent: Vec<u32> = (0..size as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }
    let images: Vec<Vec<u32>> = par::map_collect(exec, &actions, |act| {
        (0..size as u32)
            .map(|s| {
                let mut t = 0u32;
                let mut bits = s;
                while bits != 0 {
                    t ^= act[bits.trailing_zeros() as usize];
                    bits &= bits - 1;
                }
                t
            })
            .collect()
    });
    for img in &images {
        for s in 0..size as u32 {
            let (a, b) = (find(&mut parent, s), find(&mut parent, img[s as usize]));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    (0..size as u32)
        .filter(|&s| find(&mut parent, s) == s && passes(s))
        .collect()
}

/// All self-dual codes of length `n` as RREF row spaces, by breadth-first
/// growth of self-orthogonal codes containing the all-one vector.
pub fn all_self_dual_codes(n: usize) -> Result<Vec<BitMatrix>> {
    if n % 2 == 1 || n == 0 || n > 14 {
        return Err(Error::Precondition("exhaustive search needs even 2 <= n <= 14".into()));
    }
    let ones = (1u64 << n) - 1;
    let mut level: HashSet<Vec<u64>> = HashSet::from([vec![ones]]);
    for _ in 1..n / 2 {
        let mut next: HashSet<Vec<u64>> = HashSet::new();
        for code in &level {
            let dual = BitMatrix::from_packed(n, code)
                .dual_code()
                .packed_rows()
                .expect("n <= 14");
            // one representative per coset of the code inside its dual
            gray_walk_u64(&dual, 0, |w| {
                if w == 0 || reduce_u64(code, w) != w {
                    return;
                }
                let mut rows = code.clone();
                rows.push(w);
                next.insert(crate::canonical::rref_u64(&rows));
            });
        }
        level = next;
    }
    let mut out: Vec<Vec<u64>> = level.into_iter().collect();
    out.sort();
    Ok(out.iter().map(|r| BitMatrix::from_packed(n, r)).collect())
}

/// Reduce `w` by RREF rows whose pivots are their lowest set bits.
fn reduce_u64(rref: &[u64], mut w: u64) -> u64 {
    for &r in rref {
        if w & (r & r.wrapping_neg()) != 0 {
            w ^= r;
        }
    }
    w
}

/// Result of sweeping the codimension-1 subcodes of one doubly even code.
#[derive(Clone, Debug, Serialize)]
pub struct NeighborSweep {
    /// Subcodes containing the all-one vector.
    pub subcodes: u64,
    /// Subcodes free of weight-4 words, i.e. those with extremal neighbors.
    pub qualifying: u64,
    /// Equivalence classes among the qualifying subcodes.
    pub subcode_classes: usize,
    pub neighbor_classes: usize,
}

/// For each qualifying doubly even code, build the singly even neighbors
/// with profile `beta`; returns one code per class over the whole input.
pub fn classify_via_neighbors(inputs: &[SelfDualCode], beta: usize) -> Result<(Vec<SelfDualCode>, Vec<NeighborSweep>)> {
    classify_via_neighbors_with(inputs, beta, Execution::Auto)
}

pub fn classify_via_neighbors_with(
    inputs: &[SelfDualCode],
    beta: usize,
    exec: Execution,
) -> Result<(Vec<SelfDualCode>, Vec<NeighborSweep>)> {
    let mut classes: BTreeMap<Vec<u64>, SelfDualCode> = BTreeMap::new();
    let mut sweeps = Vec::new();
    for d in inputs {
        let (rows, subcodes, qualifying) = qualifying_functionals(d, beta)?;
        let built = par::map_collect(exec, &qualifying, |&a| -> Result<(Vec<u64>, Vec<u64>, SelfDualCode)> {
            let sub = functional_kernel(&rows, a, 40);
            let sub_form = canonize(&sub, &[])?.form;
            let c = singly_even_neighbor(d, &sub)?;
            let profile = check_extremal_profile(&c)?;
            if profile.beta != beta as i64 {
                return Err(Error::ProfileMismatch(format!("neighbor has beta {}", profile.beta)));
            }
            let form = canonize(c.generator(), &[])?.form;
            Ok((sub_form.certificate, form.certificate, c))
        });
        let mut sub_classes = HashSet::new();
        let mut local: BTreeMap<Vec<u64>, SelfDualCode> = BTreeMap::new();
        for r in built {
            let (s, c, code) = r?;
            sub_classes.insert(s);
            local.entry(c).or_insert(code);
        }
        sweeps.push(NeighborSweep {
            subcodes,
            qualifying: qualifying.len() as u64,
            subcode_classes: sub_classes.len(),
            neighbor_classes: local.len(),
        });
        for (c, code) in local {
            classes.entry(c).or_insert(code);
        }
    }
    Ok((classes.into_values().collect(), sweeps))
}

/// RREF rows of `d`, the number of subcodes through the all-one vector, and
/// the functionals whose kernels avoid all `beta` tetrads.
fn qualifying_functionals(d: &SelfDualCode, beta: usize) -> Result<(Vec<u64>, u64, Vec<u32>)> {
    if !d.is_doubly_even() || d.n() != 40 {
        return Err(Error::InputNotQualifying("expected a doubly even code of length 40".into()));
    }
    let tdec = find_t_decomposition(d, beta)?
        .ok_or_else(|| Error::InputNotQualifying("weight-4 words are not a T-decomposition".into()))?;
    let rows = d.generator().packed_rows().expect("n = 40");
    let k = rows.len();
    let piv = pivots(d);
    // coefficients of a codeword in the RREF basis are its pivot entries
    let coef = |w: u64| -> u32 { piv.iter().enumerate().fold(0u32, |c, (j, &p)| c | ((w >> p & 1) as u32) << j) };
    let tetrad_coefs: Vec<u32> = tdec
        .tetrads
        .iter()
        .map(|t| coef(t.iter().fold(0u64, |m, &i| m | 1u64 << i)))
        .collect();
    let ones_coef = coef((1u64 << 40) - 1);
    let mut subcodes = 0u64;
    let mut qualifying: Vec<u32> = Vec::new();
    for a in 1u32..1u32 << k {
        if (a & ones_coef).count_ones() % 2 == 1 {
            continue;
        }
        subcodes += 1;
        if tetrad_coefs.iter().all(|&t| (t & a).count_ones() % 2 == 1) {
            qualifying.push(a);
        }
    }
    Ok((rows, subcodes, qualifying))
}

/// The singly even neighbor through the first qualifying subcode.
pub fn first_neighbor(d: &SelfDualCode, beta: usize) -> Result<SelfDualCode> {
    let (rows, _, qualifying) = qualifying_functionals(d, beta)?;
    let a = *qualifying
        .first()
        .ok_or_else(|| Error::InputNotQualifying("no subcode avoids the tetrads".into()))?;
    singly_even_neighbor(d, &functional_kernel(&rows, a, 40))
}

/// `{sum c_i g_i : c . a = 0}` for RREF rows `g_i`.
fn functional_kernel(rows: &[u64], a: u32, n: usize) -> BitMatrix {
    let p = a.trailing_zeros() as usize;
    let kept: Vec<u64> = rows
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != p)
        .map(|(i, &r)| if a >> i & 1 == 1 { r ^ rows[p] } else { r })
        .collect();
    BitMatrix::from_packed(n, &kept)
}

/// `prod_{i=1}^{n/2-1} (2^i + 1)`: the number of self-dual codes of length `n`.
pub fn self_dual_code_count(n: usize) -> BigUint {
    (1..n / 2).fold(BigUint::from(1u8), |acc, i| acc * ((BigUint::from(1u8) << i) + 1u8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_form;

    #[test]
    fn extension_of_repetition_code() {
        let c = length_two_code();
        let x = BitVector::from_support(2, &[0]);
        let child = extend_by_two(&c, &x).unwrap();
        assert_eq!(child.n(), 4);
        let target = verify_self_dual(&BitMatrix::from_strs(&["1100", "0011"]).unwrap()).unwrap();
        assert!(canonical_form(child.generator())
            .unwrap()
            .same_class(&canonical_form(target.generator()).unwrap()));
        assert_eq!(extend_by_two(&c, &BitVector::ones(2)), Err(Error::EvenWeightVector));
    }

    #[test]
    fn small_counts() {
        assert_eq!(generate(2, 2).unwrap().classes.len(), 1);
        assert_eq!(generate(4, 2).unwrap().classes.len(), 1);
        assert_eq!(generate(6, 2).unwrap().classes.len(), 1);
        assert_eq!(generate(8, 2).unwrap().counts(), (1, 1));
        assert_eq!(generate(8, 4).unwrap().counts(), (1, 0));
    }

    #[test]
    fn exhaustive_counts_match_product_formula() {
        for n in [2, 4, 6, 8] {
            let all = all_self_dual_codes(n).unwrap();
            assert_eq!(BigUint::from(all.len()), self_dual_code_count(n));
        }
    }

    #[test]
    fn parent_test_accepts_generated_children() {
        let run = generate(8, 2).unwrap();
        assert_eq!(run.stats.duplicates, 0);
        for rec in &run.classes {
            assert!(rec.code.n() == 8);
        }
    }
}
