//! Additive codes over GF(4) with the trace inner product.
//!
//! An entry `a w + b` is stored as the two bits `(a, b)`; a codeword is a pair
//! of packed masks. The trace form `x * y = sum x_i y_i^2 + x_i^2 y_i`
//! becomes `a1 b2 + a2 b1` per coordinate.

use std::fmt;

use serde::Serialize;

use crate::canonical::{canonize, AutomorphismInfo, CanonicalForm};
use crate::error::{Error, Result};
use crate::gf2::{gray_walk_u64, BitMatrix, BitVector, WeightDistribution};
use crate::selfdual::{verify_self_dual, SelfDualCode};

/// Longest additive code handled (the binary image has length `3n <= 64`).
pub const MAX_LENGTH: usize = 21;

/// Field elements `0, 1, w, w^2` encoded as `2a + b` for `a w + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F4(u8);

impl F4 {
    pub const ZERO: F4 = F4(0);
    pub const ONE: F4 = F4(1);
    pub const W: F4 = F4(2);
    pub const W2: F4 = F4(3);

    pub fn from_bits(a: bool, b: bool) -> F4 {
        F4((a as u8) << 1 | b as u8)
    }

    pub fn bits(self) -> (bool, bool) {
        (self.0 & 2 != 0, self.0 & 1 != 0)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, o: F4) -> F4 {
        F4(self.0 ^ o.0)
    }

    /// Field multiplication, with `w^2 = w + 1`.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, o: F4) -> F4 {
        if self.0 == 0 || o.0 == 0 {
            return F4::ZERO;
        }
        // nonzero elements are w^e with e = 0, 1, 2 for 1, w, w^2
        let log = |x: u8| match x {
            1 => 0,
            2 => 1,
            _ => 2,
        };
        match (log(self.0) + log(o.0)) % 3 {
            0 => F4::ONE,
            1 => F4::W,
            _ => F4::W2,
        }
    }

    /// `x y^2 + x^2 y`, which lies in GF(2).
    pub fn trace_product(self, o: F4) -> bool {
        let t = self.mul(o.mul(o)).add(self.mul(self).mul(o));
        debug_assert!(t.0 <= 1);
        t == F4::ONE
    }

    fn symbol(self) -> char {
        ['0', '1', 'w', 'W'][self.0 as usize]
    }

    fn parse(c: char) -> Option<F4> {
        match c {
            '0' => Some(F4::ZERO),
            '1' => Some(F4::ONE),
            'w' => Some(F4::W),
            'W' => Some(F4::W2),
            _ => None,
        }
    }
}

/// A packed vector of `F4^n`: bit `i` of `a` and `b` hold coordinate `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F4Word {
    pub a: u64,
    pub b: u64,
}

impl F4Word {
    pub fn get(self, i: usize) -> F4 {
        F4::from_bits(self.a >> i & 1 == 1, self.b >> i & 1 == 1)
    }

    pub fn set(&mut self, i: usize, x: F4) {
        let (a, b) = x.bits();
        self.a = self.a & !(1 << i) | (a as u64) << i;
        self.b = self.b & !(1 << i) | (b as u64) << i;
    }

    pub fn weight(self) -> u32 {
        (self.a | self.b).count_ones()
    }

    pub fn xor(self, o: F4Word) -> F4Word {
        F4Word {
            a: self.a ^ o.a,
            b: self.b ^ o.b,
        }
    }

    pub fn trace_product(self, o: F4Word) -> bool {
        ((self.a & o.b) ^ (o.a & self.b)).count_ones() % 2 == 1
    }
}

/// A GF(2)-linear subspace of `F4^n` given by independent generators.
#[derive(Clone, PartialEq, Eq)]
pub struct AdditiveF4Code {
    n: usize,
    rows: Vec<F4Word>,
}

impl AdditiveF4Code {
    pub fn new(n: usize, rows: Vec<F4Word>) -> Result<Self> {
        if n > MAX_LENGTH {
            return Err(Error::LengthCapExceeded { n, max: MAX_LENGTH });
        }
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if rows.iter().any(|r| (r.a | r.b) & !mask != 0) {
            return Err(Error::Precondition("entry beyond the code length".into()));
        }
        let code = AdditiveF4Code { n, rows };
        let rank = code.binary_image().rank();
        if rank != code.rows.len() {
            return Err(Error::Precondition("generators are not GF(2)-independent".into()));
        }
        Ok(code)
    }

    pub fn from_rows(rows: &[Vec<F4>]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        let mut words = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != n {
                return Err(Error::WrongDimension {
                    expected: n,
                    found: r.len(),
                });
            }
            let mut w = F4Word { a: 0, b: 0 };
            for (i, &x) in r.iter().enumerate() {
                w.set(i, x);
            }
            words.push(w);
        }
        Self::new(n, words)
    }

    /// Graph code: row `i` is `w e_i` plus the `i`-th adjacency row.
    pub fn from_graph(adjacency: &[Vec<bool>]) -> Result<Self> {
        let n = adjacency.len();
        let rows = (0..n)
            .map(|i| {
                let b = (0..n).fold(0u64, |m, j| m | (adjacency[i][j] as u64) << j);
                F4Word { a: 1 << i, b }
            })
            .collect();
        Self::new(n, rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[F4Word] {
        &self.rows
    }

    /// True iff all generators are pairwise trace-orthogonal and `k = n`.
    pub fn trace_dual_check(&self) -> bool {
        self.k() == self.n && self.is_self_orthogonal()
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, g)| self.rows[i + 1..].iter().all(|h| !g.trace_product(*h)))
    }

    /// Even means every codeword has even weight. Weight parity is additive
    /// on self-orthogonal codes, so the generators decide it.
    pub fn is_even(&self) -> bool {
        if self.is_self_orthogonal() {
            self.rows.iter().all(|r| r.weight() % 2 == 0)
        } else {
            self.codewords().iter().all(|w| w.weight() % 2 == 0)
        }
    }

    pub fn is_even_self_dual(&self) -> bool {
        self.trace_dual_check() && self.is_even()
    }

    pub fn codewords(&self) -> Vec<F4Word> {
        let mut out = Vec::with_capacity(1 << self.k());
        let mut cur = F4Word { a: 0, b: 0 };
        out.push(cur);
        for i in 1u64..1u64 << self.k() {
            cur = cur.xor(self.rows[i.trailing_zeros() as usize]);
            out.push(cur);
        }
        out
    }

    pub fn weight_distribution(&self) -> WeightDistribution {
        let mut counts = vec![0u64; self.n + 1];
        for w in self.codewords() {
            counts[w.weight() as usize] += 1;
        }
        WeightDistribution::from_counts(counts)
    }

    pub fn minimum_weight(&self) -> Option<usize> {
        self.weight_distribution().min_weight()
    }

    /// Length-`3n` binary image: `0, 1, w, w^2 -> 000, 110, 101, 011`.
    pub fn binary_image(&self) -> BitMatrix {
        let rows = self.rows.iter().map(|r| image3(*r, self.n)).collect::<Vec<u64>>();
        BitMatrix::from_packed(3 * self.n, &rows)
    }

    /// Coordinate triples of the binary image.
    pub fn image_blocks(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|i| vec![3 * i, 3 * i + 1, 3 * i + 2]).collect()
    }

    /// Apply a coordinate permutation (`i -> perm[i]`) and, per original
    /// coordinate, a permutation of `{1, w, w^2}` given as images of
    /// `[1, w, w^2]`.
    pub fn transform(&self, perm: &[usize], relabel: &[[F4; 3]]) -> Result<Self> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut out = F4Word { a: 0, b: 0 };
                for i in 0..self.n {
                    let x = r.get(i);
                    let y = if x == F4::ZERO { x } else { relabel[i][x.0 as usize - 1] };
                    out.set(perm[i], y);
                }
                out
            })
            .collect();
        Self::new(self.n, rows)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("f4additive {} {}\n", self.n, self.k());
        for r in &self.rows {
            s.extend((0..self.n).map(|i| r.get(i).symbol()));
            s.push('\n');
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let f: Vec<&str> = header.split_whitespace().collect();
        if f.len() != 3 || f[0] != "f4additive" {
            return Err(Error::parse(ln, "expected header `f4additive <n> <k>`"));
        }
        let n: usize = f[1].parse().map_err(|_| Error::parse(ln, "bad length"))?;
        let k: usize = f[2].parse().map_err(|_| Error::parse(ln, "bad row count"))?;
        let mut rows = Vec::new();
        for (ln, line) in lines {
            let row: Vec<F4> = line
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| F4::parse(c).ok_or_else(|| Error::parse(ln, format!("bad symbol {c:?}"))))
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::parse(ln, format!("row has {} entries, expected {n}", row.len())));
            }
            rows.push(row);
        }
        if rows.len() != k {
            return Err(Error::parse(0, format!("expected {k} rows, found {}", rows.len())));
        }
        if k == 0 {
            return Self::new(n, Vec::new());
        }
        Self::from_rows(&rows)
    }
}

impl fmt::Debug for AdditiveF4Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn image3(w: F4Word, n: usize) -> u64 {
    let mut out = 0u64;
    for i in 0..n {
        let bits: u64 = match w.get(i).0 {
            0 => 0b000,
            1 => 0b011, // 110: positions 0 and 1
            2 => 0b101, // 101: positions 0 and 2
            _ => 0b110, // 011: positions 1 and 2
        };
        out |= bits << (3 * i);
    }
    out
}

/// `2 floor(n/6) + 2`.
pub fn f4_extremal_bound(n: usize) -> usize {
    2 * (n / 6) + 2
}

/// `B(C) = rho(C) + {0000, 1111}^n` with `0, 1, w, w^2 -> 0000, 1100, 1010, 0110`.
pub fn b_map(c: &AdditiveF4Code) -> Result<SelfDualCode> {
    if !c.is_even_self_dual() {
        return Err(Error::NotEvenSelfDual);
    }
    let n = c.n();
    let rho = |x: F4| -> [bool; 4] {
        match x.0 {
            0 => [false, false, false, false],
            1 => [true, true, false, false],
            2 => [true, false, true, false],
            _ => [false, true, true, false],
        }
    };
    let mut rows: Vec<BitVector> = c
        .rows()
        .iter()
        .map(|r| {
            let mut v = BitVector::zeros(4 * n);
            for i in 0..n {
                for (t, bit) in rho(r.get(i)).into_iter().enumerate() {
                    if bit {
                        v.set(4 * i + t, true);
                    }
                }
            }
            v
        })
        .collect();
    for i in 0..n {
        rows.push(BitVector::from_support(4 * n, &[4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3]));
    }
    let code = verify_self_dual(&BitMatrix::new(4 * n, rows)?)?;
    if !code.is_doubly_even() {
        return Err(Error::NotDoublyEven);
    }
    Ok(code)
}

/// Canonical form and automorphism group under `S_3^n x S_n`.
#[derive(Clone, Debug, Serialize)]
pub struct F4Equivalence {
    pub form: CanonicalForm,
    pub automorphisms: AutomorphismInfo,
}

pub fn f4_equivalence_certificate(c: &AdditiveF4Code) -> Result<F4Equivalence> {
    if c.n() > 16 {
        return Err(Error::LengthCapExceeded { n: c.n(), max: 16 });
    }
    let cz = canonize(&c.binary_image(), &c.image_blocks())?;
    Ok(F4Equivalence {
        form: cz.form,
        automorphisms: cz.automorphisms,
    })
}

/// Hamming weights of the binary image vectors, used by the weight doubling check.
pub fn image_weights(c: &AdditiveF4Code) -> Vec<u32> {
    let rows: Vec<u64> = c.rows().iter().map(|r| image3(*r, c.n())).collect();
    let mut out = Vec::with_capacity(1 << rows.len());
    gray_walk_u64(&rows, 0, |w| out.push(w.count_ones()));
    out
}

/// The length-6 hexacode as an additive code (three rows and their `w` multiples).
pub fn hexacode() -> AdditiveF4Code {
    let base: [[F4; 6]; 3] = [
        [F4::ONE, F4::ZERO, F4::ZERO, F4::ONE, F4::W, F4::W],
        [F4::ZERO, F4::ONE, F4::ZERO, F4::W, F4::ONE, F4::W],
        [F4::ZERO, F4::ZERO, F4::ONE, F4::W, F4::W, F4::ONE],
    ];
    let mut rows = Vec::new();
    for r in &base {
        rows.push(r.to_vec());
        rows.push(r.iter().map(|x| x.mul(F4::W)).collect());
    }
    AdditiveF4Code::from_rows(&rows).expect("hexacode rows are independent")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_form_matches_bit_identity() {
        for x in 0..4u8 {
            for y in 0..4u8 {
                let (a1, b1) = F4(x).bits();
                let (a2, b2) = F4(y).bits();
                let bitwise = (a1 & b2) ^ (a2 & b1);
                assert_eq!(F4(x).trace_product(F4(y)), bitwise, "{x} {y}");
            }
        }
    }

    #[test]
    fn field_arithmetic() {
        assert_eq!(F4::W.mul(F4::W), F4::W2);
        assert_eq!(F4::W.mul(F4::W2), F4::ONE);
        assert_eq!(F4::ONE.add(F4::W), F4::W2);
    }

    #[test]
    fn length_one_code() {
        let c = AdditiveF4Code::from_rows(&[vec![F4::ONE]]).unwrap();
        assert!(c.trace_dual_check());
        assert!(!c.is_even());
    }

    #[test]
    fn bounds() {
        assert_eq!(f4_extremal_bound(10), 4);
        assert_eq!(f4_extremal_bound(6), 4);
        assert_eq!(f4_extremal_bound(8), 4);
    }

    #[test]
    fn hexacode_is_extremal_even_self_dual() {
        let h = hexacode();
        assert!(h.is_even_self_dual());
        assert_eq!(h.minimum_weight(), Some(4));
        let b = b_map(&h).unwrap();
        assert_eq!(b.n(), 24);
        assert_eq!(b.weight_distribution().unwrap().count(4), 6);
    }

    #[test]
    fn text_round_trip() {
        let h = hexacode();
        assert_eq!(AdditiveF4Code::parse_text(&h.to_text()).unwrap(), h);
        assert!(AdditiveF4Code::parse_text("f4additive 2 1\n1x\n").is_err());
    }

    #[test]
    fn image_doubles_weights() {
        let h = hexacode();
        let mut img = image_weights(&h);
        let mut doubled: Vec<u32> = h.codewords().iter().map(|w| 2 * w.weight()).collect();
        img.sort_unstable();
        doubled.sort_unstable();
        assert_eq!(img, doubled);
    }
}
