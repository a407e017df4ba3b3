//! Canonical forms and automorphism groups of binary codes under coordinate
//! permutations.
//!
//! The search is a partition-backtrack over coordinate orderings. Each node
//! refines an ordered partition of the coordinates against a fixed,
//! permutation-invariant set of codewords (whole weight classes, lightest
//! first), individualizes a coordinate of the first non-singleton cell, and
//! recurses. A leaf is a discrete partition, i.e. an ordering; its key is the
//! sequence of refinement traces followed by the RREF of the reordered code.
//! The canonical form is the leaf with the largest key. Leaves with the same
//! key as the first or best leaf yield automorphisms, which prune sibling
//! subtrees by orbit.
//!
//! Optional marked blocks (sets of coordinates that automorphisms must permute
//! among themselves) enter both the refinement and the leaf key.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, DEFAULT_ENUMERATION_CAP};

/// Longest code the search accepts.
pub const MAX_LENGTH: usize = 64;

/// Upper bound on the number of refinement words collected from a code.
const WORD_CAP: usize = 8192;

/// Upper bound on search-tree nodes before giving up.
const NODE_BUDGET: u64 = 50_000_000;

/// Canonical representative of a code's equivalence class.
#[derive(Clone, Debug, Serialize)]
pub struct CanonicalForm {
    pub n: usize,
    /// RREF generator of the reordered code.
    #[serde(skip)]
    pub generator: BitMatrix,
    /// `ordering[i]` is the canonical position of input coordinate `i`.
    pub ordering: Vec<usize>,
    /// Packed canonical rows followed by the reordered block masks.
    #[serde(skip)]
    pub certificate: Vec<u64>,
    /// SHA-256 of the certificate, hex encoded.
    pub hash: String,
}

impl CanonicalForm {
    /// True when both forms describe the same equivalence class.
    pub fn same_class(&self, other: &CanonicalForm) -> bool {
        self.n == other.n && self.certificate == other.certificate
    }

    /// The input coordinates that land on the last two canonical positions.
    pub fn last_pair(&self) -> Option<(usize, usize)> {
        if self.n < 2 {
            return None;
        }
        let pos = |p: usize| self.ordering.iter().position(|&o| o == p);
        Some((pos(self.n - 2)?, pos(self.n - 1)?))
    }
}

/// Automorphism group data returned by the search.
#[derive(Clone, Debug, Serialize)]
pub struct AutomorphismInfo {
    #[serde(serialize_with = "crate::serde_util::display")]
    pub order: BigUint,
    /// Each generator maps coordinate `i` to `g[i]`.
    pub generators: Vec<Vec<usize>>,
}

/// Result of one canonical search: the form and the automorphism group.
#[derive(Clone, Debug)]
pub struct Canonized {
    pub form: CanonicalForm,
    pub automorphisms: AutomorphismInfo,
}

pub fn canonical_form(code: &BitMatrix) -> Result<CanonicalForm> {
    Ok(canonize(code, &[])?.form)
}

pub fn automorphism_order(code: &BitMatrix) -> Result<AutomorphismInfo> {
    Ok(canonize(code, &[])?.automorphisms)
}

pub fn are_equivalent(a: &BitMatrix, b: &BitMatrix) -> Result<bool> {
    if a.ncols() != b.ncols() {
        return Ok(false);
    }
    Ok(canonical_form(a)?.same_class(&canonical_form(b)?))
}

/// Canonize a code whose automorphisms must also permute `blocks`.
pub fn canonize(code: &BitMatrix, blocks: &[Vec<usize>]) -> Result<Canonized> {
    let n = code.ncols();
    if n > MAX_LENGTH {
        return Err(Error::LengthCapExceeded { n, max: MAX_LENGTH });
    }
    let basis = code.basis().packed_rows().unwrap_or_default();
    let words = refinement_words(code)?;
    let block_masks: Vec<u64> = blocks
        .iter()
        .map(|b| {
            b.iter().try_fold(0u64, |m, &i| {
                if i < n {
                    Ok(m | 1u64 << i)
                } else {
                    Err(Error::Precondition(format!("block coordinate {i} out of range")))
                }
            })
        })
        .collect::<Result<_>>()?;
    let mut search = Search::new(n, basis, words, block_masks);
    search.run()?;
    Ok(search.finish())
}

/// Whole weight classes of the code (or its dual when that is smaller),
/// lightest first, until they span or the word cap is reached.
fn refinement_words(code: &BitMatrix) -> Result<Vec<u64>> {
    let k = code.rank();
    let n = code.ncols();
    let source = if k <= n - k { code.basis() } else { code.dual_code() };
    if source.nrows() == 0 {
        return Ok(Vec::new());
    }
    let mut by_weight: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    source.for_each_codeword(DEFAULT_ENUMERATION_CAP, |w| {
        let w = w.first().copied().unwrap_or(0);
        if w != 0 {
            by_weight[w.count_ones() as usize].push(w);
        }
    })?;
    let target = source.nrows();
    let mut words: Vec<u64> = Vec::new();
    for class in by_weight.into_iter().filter(|c| !c.is_empty()) {
        if !words.is_empty() && words.len() + class.len() > WORD_CAP {
            break;
        }
        words.extend(class);
        if rank_u64(&words) == target {
            break;
        }
    }
    Ok(words)
}

#[inline]
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Rank of packed rows.
pub(crate) fn rank_u64(rows: &[u64]) -> usize {
    rref_u64(rows).len()
}

/// Reduced row-echelon form of packed rows; pivots are the lowest set bits,
/// rows ordered by pivot.
pub(crate) fn rref_u64(rows: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            if v & (b & b.wrapping_neg()) != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            let p = v & v.wrapping_neg();
            for b in basis.iter_mut() {
                if *b & p != 0 {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
    }
    basis.sort_by_key(|b| b.trailing_zeros());
    basis
}

#[inline]
fn permute_word(w: u64, perm: &[u8]) -> u64 {
    let mut out = 0u64;
    let mut bits = w;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        out |= 1u64 << perm[i];
        bits &= bits - 1;
    }
    out
}

type Cells = Vec<Vec<u8>>;

struct Leaf {
    traces: Vec<u64>,
    cert: Vec<u64>,
    perm: Vec<u8>,
}

impl Leaf {
    fn same_key(&self, traces: &[u64], cert: &[u64]) -> bool {
        self.traces == traces && self.cert == cert
    }
}

struct Search {
    n: usize,
    basis: Vec<u64>,
    words: Vec<u64>,
    blocks: Vec<u64>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    first_path: Vec<u8>,
    generators: Vec<Vec<u8>>,
    orbit_sizes: Vec<(usize, usize)>,
    nodes: u64,
}

enum Step {
    Continue,
    /// Unwind to the first-path node at this depth.
    JumpTo(usize),
}

impl Search {
    fn new(n: usize, basis: Vec<u64>, words: Vec<u64>, blocks: Vec<u64>) -> Self {
        Search {
            n,
            basis,
            words,
            blocks,
            first: None,
            best: None,
            first_path: Vec::new(),
            generators: Vec::new(),
            orbit_sizes: Vec::new(),
            nodes: 0,
        }
    }

    fn run(&mut self) -> Result<()> {
        let mut cells: Cells = if self.n == 0 {
            Vec::new()
        } else {
            vec![(0..self.n as u8).collect()]
        };
        let t = self.refine(&mut cells, mix(self.n as u64));
        let mut path = Vec::new();
        self.explore(cells, vec![t], &mut path)?;
        Ok(())
    }

    fn finish(self) -> Canonized {
        let n = self.n;
        let best = self.best.expect("search visits at least one leaf");
        let ordering: Vec<usize> = best.perm.iter().map(|&p| p as usize).collect();
        let k = best.cert.len() - self.blocks.len();
        let generator = BitMatrix::from_packed(n, &best.cert[..k]);
        let mut hasher = Sha256::new();
        hasher.update((n as u64).to_le_bytes());
        hasher.update((k as u64).to_le_bytes());
        for w in &best.cert {
            hasher.update(w.to_le_bytes());
        }
        let hash = hasher.finalize().iter().map(|b| format!("{b:02x}")).collect();
        let mut order = BigUint::from(1u8);
        for &(_, size) in &self.orbit_sizes {
            order *= size;
        }
        let generators = self
            .generators
            .iter()
            .map(|g| g.iter().map(|&x| x as usize).collect())
            .collect();
        Canonized {
            form: CanonicalForm {
                n,
                generator,
                ordering,
                certificate: best.cert,
                hash,
            },
            automorphisms: AutomorphismInfo { order, generators },
        }
    }

    /// Refine `cells` to a stable partition; returns the trace hash.
    fn refine(&self, cells: &mut Cells, seed: u64) -> u64 {
        let mut trace = seed;
        let mut sig = [0u64; MAX_LENGTH];
        let mut masks: Vec<u64> = Vec::with_capacity(self.n);
        loop {
            if cells.len() == self.n {
                return trace;
            }
            masks.clear();
            masks.extend(cells.iter().map(|c| c.iter().fold(0u64, |m, &i| m | 1u64 << i)));
            sig[..self.n].fill(0);
            let tagged = self
                .words
                .iter()
                .map(|&w| (w, 0x51u64))
                .chain(self.blocks.iter().map(|&b| (b, 0xb1u64)));
            for (w, tag) in tagged {
                let mut h = tag;
                for (j, &m) in masks.iter().enumerate() {
                    let c = (w & m).count_ones() as u64;
                    if c != 0 {
                        h = mix(h ^ ((j as u64) << 32 | c));
                    }
                }
                let hw = mix(h ^ 0x00c0_ffee);
                let mut bits = w;
                while bits != 0 {
                    sig[bits.trailing_zeros() as usize] = sig[bits.trailing_zeros() as usize].wrapping_add(hw);
                    bits &= bits - 1;
                }
            }
            let mut next: Cells = Vec::with_capacity(cells.len() + 4);
            let mut split = false;
            for (j, cell) in cells.iter().enumerate() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u64, u8)> = cell.iter().map(|&i| (sig[i as usize], i)).collect();
                keyed.sort_unstable();
                let before = next.len();
                let mut start = 0;
                while start < keyed.len() {
                    let s = keyed[start].0;
                    let mut end = start;
                    while end < keyed.len() && keyed[end].0 == s {
                        end += 1;
                    }
                    next.push(keyed[start..end].iter().map(|&(_, i)| i).collect());
                    trace = mix(trace ^ s ^ ((end - start) as u64) << 56 ^ (j as u64) << 48);
                    start = end;
                }
                if next.len() - before > 1 {
                    split = true;
                }
            }
            *cells = next;
            if !split {
                return trace;
            }
        }
    }

    fn explore(&mut self, cells: Cells, traces: Vec<u64>, path: &mut Vec<u8>) -> Result<Step> {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return Err(Error::ResourceCap("canonical search node budget exhausted".into()));
        }
        if cells.len() == self.n {
            return Ok(self.leaf(&cells, traces, path));
        }
        let level = path.len();
        let target = cells.iter().position(|c| c.len() > 1).expect("non-discrete partition");
        let candidates = cells[target].clone();
        let mut processed: Vec<u8> = Vec::new();
        let mut orbits = Orbits::new(self.n);
        let mut gens_seen = 0;
        for &v in &candidates {
            if gens_seen != self.generators.len() {
                orbits = Orbits::new(self.n);
                for g in &self.generators {
                    if path.iter().all(|&p| g[p as usize] == p) {
                        orbits.absorb(g);
                    }
                }
                gens_seen = self.generators.len();
            }
            if processed.iter().any(|&u| orbits.same(u, v)) {
                continue;
            }
            processed.push(v);
            let mut child = cells.clone();
            let rest: Vec<u8> = child[target].iter().copied().filter(|&x| x != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            let t = self.refine(&mut child, mix((target as u64) << 8 ^ candidates.len() as u64 ^ 0xa5));
            let mut child_traces = traces.clone();
            child_traces.push(t);
            if !self.worth_exploring(&child_traces) {
                continue;
            }
            path.push(v);
            let step = self.explore(child, child_traces, path)?;
            path.pop();
            if let Step::JumpTo(l) = step {
                if l < level {
                    return Ok(step);
                }
            }
        }
        if self.first_path.len() > level && self.first_path[..level] == path[..] {
            let mut orbits = Orbits::new(self.n);
            for g in &self.generators {
                if path.iter().all(|&p| g[p as usize] == p) {
                    orbits.absorb(g);
                }
            }
            let size = orbits.size(self.first_path[level]);
            self.orbit_sizes.push((level, size));
        }
        Ok(Step::Continue)
    }

    fn worth_exploring(&self, traces: &[u64]) -> bool {
        let (Some(first), Some(best)) = (&self.first, &self.best) else {
            return true;
        };
        let len = traces.len();
        if first.traces.len() >= len && first.traces[..len] == *traces {
            return true;
        }
        let best_prefix = &best.traces[..len.min(best.traces.len())];
        traces >= best_prefix
    }

    fn leaf(&mut self, cells: &Cells, traces: Vec<u64>, path: &[u8]) -> Step {
        let mut perm = vec![0u8; self.n];
        for (pos, cell) in cells.iter().enumerate() {
            perm[cell[0] as usize] = pos as u8;
        }
        let permuted: Vec<u64> = self.basis.iter().map(|&r| permute_word(r, &perm)).collect();
        let mut cert = rref_u64(&permuted);
        let mut blocks: Vec<u64> = self.blocks.iter().map(|&b| permute_word(b, &perm)).collect();
        blocks.sort_unstable();
        cert.extend(blocks);

        let Some(first) = &self.first else {
            self.first_path = path.to_vec();
            self.first = Some(Leaf {
                traces: traces.clone(),
                cert: cert.clone(),
                perm: perm.clone(),
            });
            self.best = Some(Leaf { traces, cert, perm });
            return Step::Continue;
        };
        if first.same_key(&traces, &cert) {
            let g = compose_inverse(&first.perm, &perm);
            self.generators.push(g);
            let diverge = path
                .iter()
                .zip(&self.first_path)
                .position(|(a, b)| a != b)
                .unwrap_or(path.len());
            return Step::JumpTo(diverge);
        }
        let best = self.best.as_ref().expect("best set with first");
        if best.same_key(&traces, &cert) {
            let g = compose_inverse(&best.perm, &perm);
            self.generators.push(g);
            return Step::Continue;
        }
        if (&traces, &cert) > (&best.traces, &best.cert) {
            self.best = Some(Leaf { traces, cert, perm });
        }
        Step::Continue
    }
}

/// `i -> target^{-1}(perm(i))`: maps the leaf ordering `perm` onto `target`.
fn compose_inverse(target: &[u8], perm: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; target.len()];
    for (i, &p) in target.iter().enumerate() {
        inv[p as usize] = i as u8;
    }
    perm.iter().map(|&p| inv[p as usize]).collect()
}

/// Union-find over coordinates.
struct Orbits {
    parent: Vec<u8>,
}

impl Orbits {
    fn new(n: usize) -> Self {
        Orbits {
            parent: (0..n as u8).collect(),
        }
    }

    fn find(&mut self, mut x: u8) -> u8 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn absorb(&mut self, g: &[u8]) {
        for (i, &j) in g.iter().enumerate() {
            let (a, b) = (self.find(i as u8), self.find(j));
            if a != b {
                self.parent[a.max(b) as usize] = a.min(b);
            }
        }
    }

    fn same(&mut self, a: u8, b: u8) -> bool {
        self.find(a) == self.find(b)
    }

    fn size(&mut self, x: u8) -> usize {
        let r = self.find(x);
        (0..self.parent.len() as u8).filter(|&y| self.find(y) == r).count()
    }
}

/// Orbits of unordered coordinate pairs under a permutation group.
pub fn pair_orbit(generators: &[Vec<usize>], start: (usize, usize)) -> BTreeSet<(usize, usize)> {
    let norm = |(a, b): (usize, usize)| (a.min(b), a.max(b));
    let mut seen = BTreeSet::from([norm(start)]);
    let mut stack = vec![norm(start)];
    while let Some((a, b)) = stack.pop() {
        for g in generators {
            let img = norm((g[a], g[b]));
            if seen.insert(img) {
                stack.push(img);
            }
        }
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitVector;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn hamming8() -> BitMatrix {
        BitMatrix::from_strs(&["11110000", "00111100", "00001111", "01010101"]).unwrap()
    }

    fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    }

    #[test]
    fn repetition_code() {
        let c = BitMatrix::from_strs(&["11"]).unwrap();
        let cz = canonize(&c, &[]).unwrap();
        assert_eq!(cz.form.generator, c);
        assert_eq!(cz.automorphisms.order, BigUint::from(2u8));
    }

    #[test]
    fn hamming_invariance_and_group() {
        let h = hamming8();
        let base = canonize(&h, &[]).unwrap();
        assert_eq!(base.automorphisms.order, BigUint::from(1344u32));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let p = random_perm(8, &mut rng);
            let f = canonical_form(&h.permute_columns(&p)).unwrap();
            assert_eq!(f.hash, base.form.hash);
        }
    }

    #[test]
    fn ordering_reproduces_canonical_generator() {
        let h = hamming8();
        let f = canonical_form(&h).unwrap();
        assert!(h.permute_columns(&f.ordering).same_row_space(&f.generator));
    }

    #[test]
    fn generators_are_automorphisms() {
        let h = hamming8();
        let info = automorphism_order(&h).unwrap();
        for g in &info.generators {
            assert!(h.permute_columns(g).same_row_space(&h));
        }
    }

    #[test]
    fn symmetric_extremes() {
        let zero = BitMatrix::empty(6);
        assert_eq!(automorphism_order(&zero).unwrap().order, BigUint::from(720u32));
        let full = BitMatrix::identity(5);
        assert_eq!(automorphism_order(&full).unwrap().order, BigUint::from(120u32));
        let pairs = BitMatrix::from_strs(&["110000", "001100", "000011"]).unwrap();
        assert_eq!(automorphism_order(&pairs).unwrap().order, BigUint::from(48u32));
    }

    #[test]
    fn inequivalent_codes_differ() {
        let a = BitMatrix::from_strs(&["1100", "0011"]).unwrap();
        let b = BitMatrix::from_strs(&["1100", "0110"]).unwrap();
        assert!(!are_equivalent(&a, &b).unwrap());
        assert!(are_equivalent(&a, &a.permute_columns(&[2, 0, 3, 1])).unwrap());
    }

    #[test]
    fn blocks_restrict_the_group() {
        let zero = BitMatrix::empty(4);
        let blocks = vec![vec![0, 1], vec![2, 3]];
        let info = canonize(&zero, &blocks).unwrap().automorphisms;
        assert_eq!(info.order, BigUint::from(8u8));
    }

    #[test]
    fn length_cap() {
        let c = BitMatrix::new(65, vec![BitVector::ones(65)]).unwrap();
        assert!(matches!(canonical_form(&c), Err(Error::LengthCapExceeded { .. })));
    }

    #[test]
    fn pair_orbits() {
        let gens = vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]];
        let orbit = pair_orbit(&gens, (0, 2));
        assert_eq!(orbit.len(), 4);
    }
}
