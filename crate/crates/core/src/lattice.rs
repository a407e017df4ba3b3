//! Lattices from codes in integer coordinates.
//!
//! A lattice is a set of integer vectors `z` with norm `z.z / s`. Shell counts
//! come from two independent routes: codeword-indexed generating functions
//! for the constructions, and Fincke-Pohst enumeration over a basis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{gray_walk_u64, BitMatrix};
use crate::par::{map_reduce, Execution};
use crate::qseries::ThetaSeries;
use crate::z4::{euclidean_census, z4_self_dual_check, EuclideanCensus, Z4Code, Z4Type};

/// Which residue classes make up the lattice.
#[derive(Clone, Debug)]
pub enum Model {
    /// Scale 2: `z = x mod 2` for `x` in the code and `sum z mod 4` in `sums`.
    Binary2 { code: BitMatrix, sums: Vec<u8> },
    /// Scale 8: parts `(glue, sum mod 8)`; an unglued part has `z = 2x mod 4`,
    /// a glued part `z = 1 + 2x mod 4`.
    Binary8 { code: BitMatrix, parts: Vec<(bool, u8)> },
    /// Scale 4: `z mod 4` in `offset + C`.
    Z4 { code: Z4Code, offset: Option<Vec<u8>> },
    /// Only a basis is known.
    Explicit,
}

#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    n: usize,
    scale: i64,
    basis: Vec<Vec<i64>>,
    model: Model,
}

/// Frame types of a norm-2 frame.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FrameType {
    A,
    B,
    C,
    Invalid,
}

impl CongruenceLattice {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn from_basis(scale: i64, basis: Vec<Vec<i64>>) -> Result<Self> {
        let n = basis.len();
        if scale <= 0 || basis.iter().any(|r| r.len() != n) {
            return Err(Error::Precondition("basis must be square with a positive scale".into()));
        }
        let l = CongruenceLattice {
            n,
            scale,
            basis,
            model: Model::Explicit,
        };
        if l.determinant().is_zero() {
            return Err(Error::Precondition("basis vectors are dependent".into()));
        }
        Ok(l)
    }

    /// `dot(u, v) / s`.
    pub fn inner(&self, u: &[i64], v: &[i64]) -> Rational64 {
        Rational64::new(dot(u, v), self.scale)
    }

    pub fn norm(&self, z: &[i64]) -> Rational64 {
        self.inner(z, z)
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        let b = &self.basis;
        (0..self.n).map(|i| (0..self.n).map(|j| dot(&b[i], &b[j])).collect()).collect()
    }

    /// `|det B|` of the integer basis.
    pub fn determinant(&self) -> BigInt {
        let m: Vec<Vec<BigRational>> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        det_rational(m).abs().to_integer()
    }

    pub fn is_integral(&self) -> bool {
        self.gram().iter().flatten().all(|g| g % self.scale == 0)
    }

    pub fn is_even(&self) -> bool {
        self.is_integral() && self.basis.iter().all(|b| dot(b, b) % (2 * self.scale) == 0)
    }

    /// Integral with `det(B)^2 = s^n`.
    pub fn is_unimodular(&self) -> bool {
        let d = self.determinant();
        self.is_integral() && &d * &d == BigInt::from(self.scale).pow(self.n as u32)
    }

    /// Membership by solving `z = y B` over the rationals.
    pub fn contains(&self, z: &[i64]) -> bool {
        if z.len() != self.n {
            return false;
        }
        let bt: Vec<Vec<BigRational>> = (0..self.n)
            .map(|j| (0..self.n).map(|i| BigRational::from_integer(self.basis[i][j].into())).collect())
            .collect();
        let rhs = z.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        crate::exact::solve(bt, rhs).is_some_and(|y| y.iter().all(|c| c.is_integer()))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("lattice {} {}\n", self.n, self.scale);
        for r in &self.basis {
            let row: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// `lattice <n> <scale>` followed by `n` rows of integers.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let f: Vec<&str> = header.split_whitespace().collect();
        if f.len() != 3 || f[0] != "lattice" {
            return Err(Error::parse(ln, "expected header `lattice <n> <scale>`"));
        }
        let n: usize = f[1].parse().map_err(|_| Error::parse(ln, "bad dimension"))?;
        let s: i64 = f[2].parse().map_err(|_| Error::parse(ln, "bad scale"))?;
        let mut basis = Vec::new();
        for (ln, line) in lines {
            let row: Vec<i64> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::parse(ln, format!("bad integer {t:?}"))))
                .collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::parse(ln, format!("row has {} entries, expected {n}", row.len())));
            }
            basis.push(row);
        }
        if basis.len() != n {
            return Err(Error::parse(0, format!("expected {n} rows, found {}", basis.len())));
        }
        Self::from_basis(s, basis)
    }

    /// Shell counts up to `max_norm` from the code description.
    pub fn theta_by_codewords(&self, max_norm: i64) -> Result<ThetaSeries> {
        let t = (max_norm * self.scale) as usize;
        let raw = match &self.model {
            Model::Binary2 { code, sums } => binary_shells(code, 2, t, |glue, sum| !glue && sums.contains(&((sum % 4) as u8)), false)?,
            Model::Binary8 { code, parts } => {
                let parts = parts.clone();
                let glued = parts.iter().any(|p| p.0);
                let unglued = parts.iter().any(|p| !p.0);
                let mut out = BTreeMap::new();
                for (glue, present) in [(false, unglued), (true, glued)] {
                    if present {
                        let part = binary_shells(code, 8, t, |g, sum| g == glue && parts.contains(&(glue, (sum % 8) as u8)), glue)?;
                        for (k, v) in part {
                            *out.entry(k).or_insert(0u64) += v;
                        }
                    }
                }
                out
            }
            Model::Z4 { code, offset } => {
                let census = euclidean_census(code, offset.as_deref(), t as u32)?;
                z4_shells(&census, t)
            }
            Model::Explicit => return Err(Error::Precondition("explicit lattices have no code description".into())),
        };
        Ok(to_theta(raw, self.scale, max_norm))
    }

    /// Fincke-Pohst enumeration of all vectors of norm `<= max_norm`.
    pub fn short_vectors(&self, max_norm: Rational64, exec: Execution) -> Result<ThetaSeries> {
        let bound = (max_norm * self.scale).floor().to_integer();
        let raw = enumerate(&self.gram(), bound, exec, None)?;
        let mut shells = BTreeMap::new();
        for (k, v) in raw {
            shells.insert(Rational64::new(k, self.scale), v);
        }
        Ok(ThetaSeries { max_norm, shells })
    }

    /// All vectors of exactly the given norm, in integer coordinates.
    pub fn vectors_of_norm(&self, norm: Rational64, cap: usize) -> Result<Vec<Vec<i64>>> {
        let target = norm * self.scale;
        if !target.is_integer() {
            return Ok(Vec::new());
        }
        let target = target.to_integer();
        let mut out = Vec::new();
        enumerate(&self.gram(), target, Execution::Sequential, Some(&mut |x: &[i64], v: i64| {
            if v == target {
                out.push(x.to_vec());
            }
            out.len() <= cap
        }))?;
        if out.len() > cap {
            return Err(Error::ResourceCap(format!("more than {cap} vectors")));
        }
        Ok(out
            .iter()
            .map(|x| (0..self.n).map(|j| x.iter().zip(&self.basis).map(|(c, b)| c * b[j]).sum()).collect())
            .collect())
    }
}

fn dot(u: &[i64], v: &[i64]) -> i64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

fn det_rational(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &m[c][c];
                for k in c..n {
                    let t = &f * &m[c][k];
                    m[r][k] -= t;
                }
            }
        }
    }
    det
}

/// Hermite normal form of the lattice spanned by `gens` and `m Z^n`.
pub fn hnf_mod(gens: &[Vec<i64>], n: usize, m: i64) -> Vec<Vec<i64>> {
    let mut pool: Vec<Vec<i64>> = gens.iter().map(|g| g.iter().map(|x| x.rem_euclid(m)).collect()).collect();
    let mut basis = Vec::with_capacity(n);
    for j in 0..n {
        let mut pivot = vec![0i64; n];
        pivot[j] = m;
        let mut rest = Vec::with_capacity(pool.len());
        for mut r in pool {
            while r[j] != 0 {
                let q = pivot[j].div_euclid(r[j]);
                for k in j..n {
                    pivot[k] -= q * r[k];
                }
                std::mem::swap(&mut pivot, &mut r);
            }
            for x in r.iter_mut().skip(j + 1) {
                *x = x.rem_euclid(m);
            }
            if r.iter().any(|&x| x != 0) {
                rest.push(r);
            }
        }
        if pivot[j] < 0 {
            pivot.iter_mut().for_each(|x| *x = -*x);
        }
        for x in pivot.iter_mut().skip(j + 1) {
            *x = x.rem_euclid(m);
        }
        basis.push(pivot);
        pool = rest;
    }
    // reduce above the diagonal
    for j in (0..n).rev() {
        for i in 0..j {
            let q = basis[i][j].div_euclid(basis[j][j]);
            if q != 0 {
                let row = basis[j].clone();
                for (x, r) in basis[i].iter_mut().zip(&row) {
                    *x -= q * r;
                }
            }
        }
    }
    basis
}

fn packed_code(code: &BitMatrix) -> Result<Vec<u64>> {
    code.packed_rows().ok_or(Error::LengthCapExceeded {
        n: code.ncols(),
        max: 64,
    })
}

fn unit(n: usize, i: usize, v: i64) -> Vec<i64> {
    let mut u = vec![0; n];
    u[i] = v;
    u
}

fn require_doubly_even(d: &BitMatrix) -> Result<()> {
    let rows = packed_code(d)?;
    let ok = rows.iter().all(|r| r.count_ones() % 4 == 0)
        && rows.iter().enumerate().all(|(i, a)| rows[i + 1..].iter().all(|b| (a & b).count_ones() % 2 == 0));
    if ok {
        Ok(())
    } else {
        Err(Error::NotDoublyEven)
    }
}

/// `L_A(D)`: `z mod 2` in `D`, scale 2.
pub fn construct_la(d: &BitMatrix) -> Result<CongruenceLattice> {
    require_doubly_even(d)?;
    let n = d.ncols();
    let gens: Vec<Vec<i64>> = packed_code(d)?.iter().map(|&r| bits(r, n, 1)).collect();
    Ok(CongruenceLattice {
        n,
        scale: 2,
        basis: hnf_mod(&gens, n, 2),
        model: Model::Binary2 {
            code: d.clone(),
            sums: vec![0, 1, 2, 3],
        },
    })
}

/// `L_B(D)`: `z mod 2` in `D` and `sum z = 0 mod 4`, scale 2.
pub fn construct_lb(d: &BitMatrix) -> Result<CongruenceLattice> {
    require_doubly_even(d)?;
    let n = d.ncols();
    let mut gens: Vec<Vec<i64>> = packed_code(d)?.iter().map(|&r| bits(r, n, 1)).collect();
    for i in 1..n {
        let mut v = unit(n, 0, 2);
        v[i] = 2;
        gens.push(v);
    }
    Ok(CongruenceLattice {
        n,
        scale: 2,
        basis: hnf_mod(&gens, n, 4),
        model: Model::Binary2 {
            code: d.clone(),
            sums: vec![0],
        },
    })
}

/// `L_C(D)` in units `e_i / 4` (scale 8), with glue parity `eps = n/8 mod 2`.
pub fn construct_lc(d: &BitMatrix) -> Result<CongruenceLattice> {
    let eps = (d.ncols() / 8 % 2) as u8;
    construct_lc_with(d, eps)
}

/// `L_C` with the glue parity flipped: the odd unimodular neighbor.
pub fn construct_lc_odd(d: &BitMatrix) -> Result<CongruenceLattice> {
    let eps = (d.ncols() / 8 % 2) as u8;
    construct_lc_with(d, 1 - eps)
}

fn construct_lc_with(d: &BitMatrix, eps: u8) -> Result<CongruenceLattice> {
    require_doubly_even(d)?;
    let n = d.ncols();
    if !n.is_multiple_of(8) || d.rank() * 2 != n {
        return Err(Error::Precondition("L_C needs a doubly even self-dual code with 8 | n".into()));
    }
    let mut gens: Vec<Vec<i64>> = packed_code(d)?.iter().map(|&r| bits(r, n, 2)).collect();
    for i in 1..n {
        let mut v = unit(n, 0, 4);
        v[i] = 4;
        gens.push(v);
    }
    // glue: 1 + 4 lambda with sum lambda = eps
    let mut glue = vec![1i64; n];
    if eps == 1 {
        glue[0] += 4;
    }
    gens.push(glue);
    let glue_sum = ((n as i64 + 4 * eps as i64) % 8) as u8;
    Ok(CongruenceLattice {
        n,
        scale: 8,
        basis: hnf_mod(&gens, n, 8),
        model: Model::Binary8 {
            code: d.clone(),
            parts: vec![(false, 0), (true, glue_sum)],
        },
    })
}

/// `A_4(C)`: `z mod 4` in `C`, scale 4.
pub fn construct_a4(c: &Z4Code) -> Result<CongruenceLattice> {
    if z4_self_dual_check(c) == Z4Type::NotSelfDual {
        return Err(Error::NotSelfDual);
    }
    let n = c.n();
    let gens: Vec<Vec<i64>> = c.rows().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    Ok(CongruenceLattice {
        n,
        scale: 4,
        basis: hnf_mod(&gens, n, 4),
        model: Model::Z4 {
            code: c.clone(),
            offset: None,
        },
    })
}

fn bits(r: u64, n: usize, v: i64) -> Vec<i64> {
    (0..n).map(|i| if r >> i & 1 == 1 { v } else { 0 }).collect()
}

/// Per-coordinate generating function: `(|z|^2, z mod m) -> count` over all
/// integers `z` in a residue class `a mod step`, up to `|z|^2 <= t`.
fn coordinate_series(a: i64, step: i64, m: usize, t: usize) -> Vec<Vec<u64>> {
    let mut f = vec![vec![0u64; m]; t + 1];
    let r = (t as f64).sqrt() as i64 + 1;
    for z in -r..=r {
        if (z - a).rem_euclid(step) == 0 && ((z * z) as usize) <= t {
            f[(z * z) as usize][z.rem_euclid(m as i64) as usize] += 1;
        }
    }
    f
}

fn series_mul(a: &[Vec<u64>], b: &[Vec<u64>], m: usize) -> Vec<Vec<u64>> {
    let t = a.len() - 1;
    let mut out = vec![vec![0u64; m]; t + 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate().take(t + 1 - i) {
            for (r, &x) in ai.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (s, &y) in bj.iter().enumerate() {
                    if y != 0 {
                        out[i + j][(r + s) % m] += x * y;
                    }
                }
            }
        }
    }
    out
}

fn series_pow(a: &[Vec<u64>], e: usize, m: usize) -> Vec<Vec<u64>> {
    let t = a.len() - 1;
    let mut out = vec![vec![0u64; m]; t + 1];
    out[0][0] = 1;
    for _ in 0..e {
        out = series_mul(&out, a, m);
    }
    out
}

/// Raw shells `|z|^2 -> count` for a binary model; a codeword `x` of weight
/// `w` contributes `f_in^w f_out^{n-w}`.
fn binary_shells(
    code: &BitMatrix,
    scale: i64,
    t: usize,
    keep: impl Fn(bool, usize) -> bool,
    glue: bool,
) -> Result<BTreeMap<i64, u64>> {
    let n = code.ncols();
    let weights = code.weight_distribution()?;
    let (m, fin, fout) = if scale == 2 {
        (4, coordinate_series(1, 2, 4, t), coordinate_series(0, 2, 4, t))
    } else if glue {
        (8, coordinate_series(3, 4, 8, t), coordinate_series(1, 4, 8, t))
    } else {
        (8, coordinate_series(2, 4, 8, t), coordinate_series(0, 4, 8, t))
    };
    let mut out = BTreeMap::new();
    for (w, &a) in weights.counts().iter().enumerate() {
        if a == 0 {
            continue;
        }
        let s = series_mul(&series_pow(&fin, w, m), &series_pow(&fout, n - w, m), m);
        for (k, row) in s.iter().enumerate() {
            for (r, &c) in row.iter().enumerate() {
                if c > 0 && keep(glue, r) {
                    *out.entry(k as i64).or_insert(0) += a * c;
                }
            }
        }
    }
    Ok(out)
}

fn z4_shells(census: &EuclideanCensus, t: usize) -> BTreeMap<i64, u64> {
    let n = census.n;
    let f0 = coordinate_series(0, 4, 1, t);
    let f1 = coordinate_series(1, 4, 1, t);
    let f2 = coordinate_series(2, 4, 1, t);
    let mut out = BTreeMap::new();
    for (&(u, tw), &count) in &census.classes {
        let zeros = n - u as usize - tw as usize;
        let s = series_mul(
            &series_mul(&series_pow(&f1, u as usize, 1), &series_pow(&f2, tw as usize, 1), 1),
            &series_pow(&f0, zeros, 1),
            1,
        );
        for (k, row) in s.iter().enumerate() {
            if row[0] > 0 {
                *out.entry(k as i64).or_insert(0) += count * row[0];
            }
        }
    }
    out
}

fn to_theta(raw: BTreeMap<i64, u64>, scale: i64, max_norm: i64) -> ThetaSeries {
    let mut shells = BTreeMap::new();
    for (k, v) in raw {
        if k <= max_norm * scale {
            *shells.entry(Rational64::new(k, scale)).or_insert(0) += v;
        }
    }
    ThetaSeries {
        max_norm: Rational64::from_integer(max_norm),
        shells,
    }
}

/// Vectors of `L_B(D)` with `|z|^2 = t`, listed codeword by codeword.
pub fn lb_vectors_by_codewords(d: &BitMatrix, norm: i64) -> Result<Vec<Vec<i64>>> {
    require_doubly_even(d)?;
    let n = d.ncols();
    let t = 2 * norm;
    let rows = packed_code(d)?;
    let mut words = Vec::new();
    gray_walk_u64(&rows, 0, |x| {
        if (x.count_ones() as i64) <= t {
            words.push(x);
        }
    });
    words.sort_unstable();
    let mut out = Vec::new();
    let mut z = vec![0i64; n];
    for x in words {
        lift_search(x, 0, t, &mut z, &mut |z: &[i64]| {
            if z.iter().sum::<i64>().rem_euclid(4) == 0 {
                out.push(z.to_vec());
            }
        });
    }
    Ok(out)
}

fn lift_search(x: u64, i: usize, left: i64, z: &mut Vec<i64>, emit: &mut dyn FnMut(&[i64])) {
    let n = z.len();
    if i == n {
        if left == 0 {
            emit(z);
        }
        return;
    }
    // remaining odd coordinates need at least 1 each
    let odd_after = (x >> i).count_ones() as i64 - (x >> i & 1) as i64;
    let odd = x >> i & 1 == 1;
    let r = (left as f64).sqrt() as i64 + 1;
    for v in -r..=r {
        if (v.rem_euclid(2) == 1) != odd || v * v > left - odd_after {
            continue;
        }
        z[i] = v;
        lift_search(x, i + 1, left - v * v, z, emit);
    }
    z[i] = 0;
}

/// Norm-2 shadow and shell counts of an odd lattice up to `max_norm`.
pub fn lattice_shadow_counts(l: &CongruenceLattice, max_norm: i64, exec: Execution) -> Result<ThetaSeries> {
    if l.is_even() {
        return Err(Error::EvenLattice);
    }
    match &l.model {
        Model::Z4 { code, offset: None } => {
            let s = shadow_offset(code)?;
            let shadow = CongruenceLattice {
                model: Model::Z4 {
                    code: code.clone(),
                    offset: Some(s),
                },
                ..l.clone()
            };
            shadow.theta_by_codewords(max_norm)
        }
        Model::Binary8 { code, parts } if parts.len() == 2 => {
            // L0* = L0 + L1 + L2 + L3; the shadow is the two cosets not in L
            let n = code.ncols() as u8;
            let all = [(false, 0), (false, 4), (true, n % 8), (true, (n + 4) % 8)];
            let shadow_parts: Vec<(bool, u8)> = all.into_iter().filter(|p| !parts.contains(p)).collect();
            let shadow = CongruenceLattice {
                model: Model::Binary8 {
                    code: code.clone(),
                    parts: shadow_parts,
                },
                ..l.clone()
            };
            shadow.theta_by_codewords(max_norm)
        }
        _ => explicit_shadow(l, max_norm, exec),
    }
}

/// The doubly even part `C0` of a Type I code and a row outside it.
fn doubly_even_part(c: &Z4Code) -> Result<(Z4Code, Vec<u8>)> {
    let q = |x: &[u8]| crate::z4::euclidean_weight(x) / 4 % 2;
    let rows = c.rows();
    let odd: Vec<usize> = (0..rows.len()).filter(|&i| q(&rows[i]) == 1).collect();
    let Some(&j) = odd.first() else {
        return Err(Error::EvenLattice);
    };
    let mut gens: Vec<Vec<u8>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if q(r) == 0 {
            gens.push(r.clone());
        } else if i != j {
            gens.push(r.iter().zip(&rows[j]).map(|(a, b)| (a + b) % 4).collect());
        }
    }
    gens.push(rows[j].iter().map(|a| 2 * a % 4).collect());
    Ok((Z4Code::from_generators(c.n(), &gens)?, rows[j].clone()))
}

/// `s` with `C0^perp = C + (s + C)`, where `C0` is the doubly even part.
pub fn shadow_offset(c: &Z4Code) -> Result<Vec<u8>> {
    let (c0, _) = doubly_even_part(c)?;
    let dual = c0.dual();
    dual.rows()
        .iter()
        .find(|r| !c.contains(r))
        .cloned()
        .ok_or_else(|| Error::Precondition("doubly even subcode has no extra dual coset".into()))
}

/// Shell counts of the two cosets of the even sublattice that make up the
/// shadow, for lattices with a code description.
pub fn shadow_cosets(l: &CongruenceLattice, max_norm: i64) -> Result<[ThetaSeries; 2]> {
    if l.is_even() {
        return Err(Error::EvenLattice);
    }
    let with = |model: Model| CongruenceLattice { model, ..l.clone() }.theta_by_codewords(max_norm);
    match &l.model {
        Model::Z4 { code, offset: None } => {
            let (c0, r) = doubly_even_part(code)?;
            let s = shadow_offset(code)?;
            let s2: Vec<u8> = s.iter().zip(&r).map(|(a, b)| (a + b) % 4).collect();
            Ok([
                with(Model::Z4 { code: c0.clone(), offset: Some(s) })?,
                with(Model::Z4 { code: c0, offset: Some(s2) })?,
            ])
        }
        Model::Binary8 { code, parts } if parts.len() == 2 => {
            let n = code.ncols() as u8;
            let all = [(false, 0), (false, 4), (true, n % 8), (true, (n + 4) % 8)];
            let mut shadow = all.into_iter().filter(|p| !parts.contains(p));
            let (a, b) = (shadow.next().unwrap(), shadow.next().unwrap());
            Ok([
                with(Model::Binary8 { code: code.clone(), parts: vec![a] })?,
                with(Model::Binary8 { code: code.clone(), parts: vec![b] })?,
            ])
        }
        _ => Err(Error::Precondition("shadow cosets need a code description".into())),
    }
}

fn explicit_shadow(l: &CongruenceLattice, max_norm: i64, exec: Execution) -> Result<ThetaSeries> {
    // even sublattice basis
    let b = &l.basis;
    let parity = |v: &[i64]| (dot(v, v) / l.scale).rem_euclid(2);
    let j = (0..l.n).find(|&i| parity(&b[i]) == 1).ok_or(Error::EvenLattice)?;
    let mut b0: Vec<Vec<i64>> = Vec::with_capacity(l.n);
    for i in 0..l.n {
        if i == j {
            b0.push(b[j].iter().map(|x| 2 * x).collect());
        } else if parity(&b[i]) == 1 {
            b0.push(b[i].iter().zip(&b[j]).map(|(x, y)| x + y).collect());
        } else {
            b0.push(b[i].clone());
        }
    }
    // Gram of L0* = (Gram of L0)^{-1}, in units of 1/s
    let g0: Vec<Vec<BigRational>> = b0
        .iter()
        .map(|u| b0.iter().map(|v| BigRational::new(dot(u, v).into(), l.scale.into())).collect())
        .collect();
    let inv = invert(g0).ok_or_else(|| Error::Precondition("singular Gram matrix".into()))?;
    let den = inv.iter().flatten().fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
    let den_i = den.to_i64().ok_or_else(|| Error::ResourceCap("Gram denominator too large".into()))?;
    let gram: Vec<Vec<i64>> = inv
        .iter()
        .map(|r| r.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer().to_i64().unwrap()).collect())
        .collect();
    let dual = enumerate(&gram, max_norm * den_i, exec, None)?;
    let lat = enumerate(&l.gram(), max_norm * l.scale, exec, None)?;
    let mut shells = BTreeMap::new();
    for (k, v) in dual {
        let norm = Rational64::new(k, den_i);
        let inside = if (norm * l.scale).is_integer() {
            lat.get(&(norm * l.scale).to_integer()).copied().unwrap_or(0)
        } else {
            0
        };
        if v > inside {
            shells.insert(norm, v - inside);
        }
    }
    Ok(ThetaSeries {
        max_norm: Rational64::from_integer(max_norm),
        shells,
    })
}

fn invert(mut m: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        inv.swap(c, p);
        let f = BigRational::one() / &m[c][c];
        for k in 0..n {
            m[c][k] = &m[c][k] * &f;
            inv[c][k] = &inv[c][k] * &f;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..n {
                    let a = &f * &m[c][k];
                    m[r][k] -= a;
                    let b = &f * &inv[c][k];
                    inv[r][k] -= b;
                }
            }
        }
    }
    Some(inv)
}

/// `e_i` as doubled unit vectors in the lattice's coordinates (`s = 2` or `8`).
pub fn standard_frame(l: &CongruenceLattice) -> Result<Vec<Vec<i64>>> {
    let v = match l.scale {
        2 => 2,
        8 => 4,
        _ => return Err(Error::FrameInvalid("no coordinate frame at this scale".into())),
    };
    Ok((0..l.n).map(|i| unit(l.n, i, v)).collect())
}

/// Frame conditions: `(e_i, e_j) = 2 delta_ij`, `e_i +- e_j` in `L`, then the type.
pub fn verify_frame(l: &CongruenceLattice, frame: &[Vec<i64>]) -> FrameType {
    let n = l.n;
    if frame.len() != n || frame.iter().any(|e| e.len() != n) {
        return FrameType::Invalid;
    }
    for i in 0..n {
        for j in 0..n {
            let want = if i == j { 2 } else { 0 };
            if l.inner(&frame[i], &frame[j]) != Rational64::from_integer(want) {
                return FrameType::Invalid;
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let sum: Vec<i64> = frame[i].iter().zip(&frame[j]).map(|(a, b)| a + b).collect();
            let diff: Vec<i64> = frame[i].iter().zip(&frame[j]).map(|(a, b)| a - b).collect();
            if !l.contains(&sum) || !l.contains(&diff) {
                return FrameType::Invalid;
            }
        }
    }
    if frame.iter().all(|e| l.contains(e)) {
        return FrameType::A;
    }
    // b lies in (1/2) sum Z e_i iff every (b, e_i) is an integer
    let half_span = l.basis.iter().all(|b| frame.iter().all(|e| l.inner(b, e).is_integer()));
    if half_span {
        FrameType::B
    } else {
        FrameType::C
    }
}

/// The Z4 code read off the 4-frame `e_{2i-1} +- e_{2i}`.
pub fn z4_code_from_4frame(l: &CongruenceLattice, frame: &[Vec<i64>]) -> Result<Z4Code> {
    if !l.n.is_multiple_of(2) {
        return Err(Error::FrameInvalid("odd dimension".into()));
    }
    if verify_frame(l, frame) == FrameType::Invalid {
        return Err(Error::FrameInvalid("condition (e_i, e_j) = 2 delta, e_i +- e_j in L fails".into()));
    }
    let mut f = Vec::with_capacity(l.n);
    for i in 0..l.n / 2 {
        let (a, b) = (&frame[2 * i], &frame[2 * i + 1]);
        f.push(a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<i64>>());
        f.push(a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<i64>>());
    }
    let mut gens = Vec::with_capacity(l.n);
    for b in &l.basis {
        let mut row = Vec::with_capacity(l.n);
        for fi in &f {
            let x = l.inner(b, fi);
            if !x.is_integer() {
                return Err(Error::FrameInvalid("lattice is not integral against the frame".into()));
            }
            row.push(x.to_integer().rem_euclid(4) as u8);
        }
        gens.push(row);
    }
    let code = Z4Code::from_generators(l.n, &gens)?;
    if z4_self_dual_check(&code) == Z4Type::NotSelfDual {
        return Err(Error::FrameInvalid("frame code is not self-dual".into()));
    }
    Ok(code)
}

/// Moment test for a spherical `t`-design (`t <= 3`) on a set of equal-norm
/// vectors: vanishing first and third moments and an isotropic second moment.
pub fn spherical_design_moments(vectors: &[Vec<i64>], t: usize) -> Result<bool> {
    let Some(first) = vectors.first() else {
        return Ok(true);
    };
    let n = first.len();
    let norm = dot(first, first);
    if vectors.iter().any(|v| v.len() != n || dot(v, v) != norm) {
        return Err(Error::MixedNorms);
    }
    if t == 0 {
        return Ok(true);
    }
    for j in 0..n {
        if vectors.iter().map(|v| v[j] as i128).sum::<i128>() != 0 {
            return Ok(false);
        }
    }
    if t >= 2 {
        // sum v v^T = (N |v|^2 / n) I, compared as n * sum = N |v|^2 I
        let total = vectors.len() as i128 * norm as i128;
        for i in 0..n {
            for j in i..n {
                let s: i128 = vectors.iter().map(|v| v[i] as i128 * v[j] as i128).sum();
                let want = if i == j { total } else { 0 };
                if n as i128 * s != want {
                    return Ok(false);
                }
            }
        }
    }
    if t >= 3 {
        for i in 0..n {
            for j in i..n {
                let pair: Vec<i128> = vectors.iter().map(|v| v[i] as i128 * v[j] as i128).collect();
                for k in j..n {
                    let s: i128 = vectors.iter().zip(&pair).map(|(v, p)| p * v[k] as i128).sum();
                    if s != 0 {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Fincke-Pohst enumeration

/// Enumeration budget in tree nodes.
pub const NODE_BUDGET: u64 = 2_000_000_000_000;

type Visitor<'a> = &'a mut dyn FnMut(&[i64], i64) -> bool;

/// Count integer `x` with `x G x^T <= bound`, keyed by the exact value.
/// With a visitor, vectors are reported in the reduced coordinates mapped
/// back to the input basis, and the search is sequential.
fn enumerate(gram: &[Vec<i64>], bound: i64, exec: Execution, visit: Option<Visitor>) -> Result<BTreeMap<i64, u64>> {
    let n = gram.len();
    if n == 0 {
        return Ok(BTreeMap::from([(0, 1)]));
    }
    let (g, u) = lll_gram(gram);
    let (mu, bstar) = cholesky(&g);
    let slack = 1e-6 * (bound as f64 + 1.0);
    let ctx = Ctx {
        n,
        g: &g,
        mu: &mu,
        bstar: &bstar,
        bound,
        slack,
    };
    if let Some(visit) = visit {
        let mut x = vec![0i64; n];
        let mut counts = BTreeMap::new();
        let mut nodes = 0u64;
        let mut cb = |y: &[i64], v: i64| {
            // y in reduced coordinates; x = y U
            let x: Vec<i64> = (0..n).map(|j| (0..n).map(|i| y[i] * u[i][j]).sum()).collect();
            visit(&x, v)
        };
        ctx.search(n - 1, &mut x, 0.0, &mut counts, &mut nodes, &mut Some(&mut cb))?;
        return Ok(counts);
    }
    // split over the top coordinate
    let top = n - 1;
    let r = ((bound as f64 + slack) / bstar[top]).sqrt().floor() as i64;
    let values: Vec<i64> = (-r..=r).collect();
    let parts = map_reduce(
        exec,
        values.len(),
        Ok(BTreeMap::new()),
        |idx| {
            let mut x = vec![0i64; n];
            x[top] = values[idx];
            let partial = bstar[top] * (values[idx] as f64).powi(2);
            let mut counts = BTreeMap::new();
            let mut nodes = 0u64;
            if top == 0 {
                ctx.leaf(&x, &mut counts, &mut None);
            } else {
                ctx.search(top - 1, &mut x, partial, &mut counts, &mut nodes, &mut None)?;
            }
            Ok(counts)
        },
        |a: Result<BTreeMap<i64, u64>>, b: Result<BTreeMap<i64, u64>>| {
            let mut a = a?;
            for (k, v) in b? {
                *a.entry(k).or_insert(0) += v;
            }
            Ok(a)
        },
    );
    parts
}

struct Ctx<'a> {
    n: usize,
    g: &'a [Vec<i128>],
    mu: &'a [Vec<f64>],
    bstar: &'a [f64],
    bound: i64,
    slack: f64,
}

impl Ctx<'_> {
    fn search(
        &self,
        i: usize,
        x: &mut Vec<i64>,
        partial: f64,
        counts: &mut BTreeMap<i64, u64>,
        nodes: &mut u64,
        visit: &mut Option<Visitor<'_>>,
    ) -> Result<bool> {
        *nodes += 1;
        if *nodes > NODE_BUDGET {
            return Err(Error::BudgetExceeded(format!("{NODE_BUDGET} enumeration nodes")));
        }
        let center: f64 = -(i + 1..self.n).map(|j| self.mu[j][i] * x[j] as f64).sum::<f64>();
        let room = self.bound as f64 + self.slack - partial;
        if room < 0.0 {
            return Ok(true);
        }
        let w = (room / self.bstar[i]).sqrt();
        let lo = (center - w).ceil() as i64;
        let hi = (center + w).floor() as i64;
        for v in lo..=hi {
            x[i] = v;
            let d = v as f64 - center;
            let p = partial + self.bstar[i] * d * d;
            if p > self.bound as f64 + self.slack {
                continue;
            }
            let go_on = if i == 0 {
                self.leaf(x, counts, visit)
            } else {
                self.search(i - 1, x, p, counts, nodes, visit)?
            };
            if !go_on {
                x[i] = 0;
                return Ok(false);
            }
        }
        x[i] = 0;
        Ok(true)
    }

    fn leaf(&self, x: &[i64], counts: &mut BTreeMap<i64, u64>, visit: &mut Option<Visitor<'_>>) -> bool {
        let mut v: i128 = 0;
        for i in 0..self.n {
            if x[i] == 0 {
                continue;
            }
            let mut row: i128 = self.g[i][i] * x[i] as i128;
            for j in i + 1..self.n {
                row += 2 * self.g[i][j] * x[j] as i128;
            }
            v += row * x[i] as i128;
        }
        if v <= self.bound as i128 {
            *counts.entry(v as i64).or_insert(0) += 1;
            if let Some(f) = visit {
                return f(x, v as i64);
            }
        }
        true
    }
}

/// LLL on a Gram matrix; returns the reduced Gram and the transform `U`
/// with `G' = U G U^T`. Updates are exact; the size and swap tests use floats.
fn lll_gram(gram: &[Vec<i64>]) -> (Vec<Vec<i128>>, Vec<Vec<i64>>) {
    let n = gram.len();
    let mut g: Vec<Vec<i128>> = gram.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i, 1)).collect();
    let mut k = 1;
    let mut steps = 0;
    while k < n && steps < 1_000_000 {
        steps += 1;
        for j in (0..k).rev() {
            let (mu, _) = cholesky(&g);
            let q = mu[k][j].round() as i128;
            if q == 0 {
                continue;
            }
            // b_k -= q b_j
            for t in 0..n {
                u[k][t] -= q as i64 * u[j][t];
            }
            for t in 0..n {
                g[k][t] -= q * g[j][t];
            }
            for t in 0..n {
                g[t][k] -= q * g[t][j];
            }
        }
        let (mu, bstar) = cholesky(&g);
        if bstar[k] < (0.99 - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1] {
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            u.swap(k, k - 1);
            k = (k - 1).max(1);
        } else {
            k += 1;
        }
    }
    (g, u)
}

/// Float Gram-Schmidt data `mu[i][j]` (`j < i`) and `|b_i*|^2`.
fn cholesky(g: &[Vec<i128>]) -> (Vec<Vec<f64>>, Vec<f64>) {
    let n = g.len();
    let mut mu = vec![vec![0.0; n]; n];
    let mut r = vec![vec![0.0; n]; n];
    let mut b = vec![0.0; n];
    for i in 0..n {
        for j in 0..i {
            let mut s = g[i][j] as f64;
            for k in 0..j {
                s -= mu[j][k] * r[i][k];
            }
            r[i][j] = s;
            mu[i][j] = s / b[j];
        }
        let mut s = g[i][i] as f64;
        for k in 0..i {
            s -= mu[i][k] * r[i][k];
        }
        b[i] = s;
        mu[i][i] = 1.0;
    }
    (mu, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitMatrix;

    fn hamming() -> BitMatrix {
        BitMatrix::from_strs(&["11110000", "00111100", "00001111", "01010101"]).unwrap()
    }

    #[test]
    fn la_hamming_is_e8() {
        let l = construct_la(&hamming()).unwrap();
        assert!(l.is_unimodular() && l.is_even());
        let th = l.theta_by_codewords(2).unwrap();
        assert_eq!(th.count_int(1), 0);
        assert_eq!(th.count_int(2), 240);
        let en = l.short_vectors(Rational64::from_integer(2), Execution::Sequential).unwrap();
        assert_eq!(en.nonzero(), th.nonzero());
    }

    #[test]
    fn zero_code_lattices() {
        let z = BitMatrix::empty(8);
        let la = construct_la(&z).unwrap();
        assert_eq!(la.theta_by_codewords(2).unwrap().count_int(2), 16);
        let lb = construct_lb(&z).unwrap();
        let th = lb.theta_by_codewords(4).unwrap();
        assert_eq!(th.min_norm(), Some(Rational64::from_integer(4)));
        let en = lb.short_vectors(Rational64::from_integer(4), Execution::Sequential).unwrap();
        assert_eq!(en.nonzero(), th.nonzero());
    }

    #[test]
    fn lc_hamming_is_e8() {
        let l = construct_lc(&hamming()).unwrap();
        assert!(l.is_unimodular() && l.is_even());
        let th = l.theta_by_codewords(4).unwrap();
        assert_eq!(th.count_int(2), 240);
        assert_eq!(th.count_int(4), 2160);
        let en = l.short_vectors(Rational64::from_integer(4), Execution::Sequential).unwrap();
        assert_eq!(en.nonzero(), th.nonzero());
    }

    #[test]
    fn one_dimensional_a4() {
        let c = Z4Code::from_generators(1, &[vec![2]]).unwrap();
        let l = construct_a4(&c).unwrap();
        assert!(l.is_unimodular() && !l.is_even());
        let th = l.theta_by_codewords(4).unwrap();
        let shells: Vec<(i64, u64)> = th.nonzero().iter().map(|(k, v)| (k.to_integer(), *v)).collect();
        assert_eq!(shells, vec![(0, 1), (1, 2), (4, 2)]);
        let sh = lattice_shadow_counts(&l, 2, Execution::Sequential).unwrap();
        assert_eq!(sh.count(Rational64::new(1, 4)), 2);
        assert_eq!(sh.count(Rational64::new(9, 4)), 0);
        let ex = CongruenceLattice::from_basis(4, l.basis().to_vec()).unwrap();
        let sh2 = lattice_shadow_counts(&ex, 2, Execution::Sequential).unwrap();
        assert_eq!(sh.nonzero(), sh2.nonzero());
    }

    #[test]
    fn z8_shadow() {
        let l = CongruenceLattice::from_basis(1, (0..8).map(|i| unit(8, i, 1)).collect()).unwrap();
        let sh = lattice_shadow_counts(&l, 2, Execution::Sequential).unwrap();
        assert_eq!(sh.min_norm(), Some(Rational64::from_integer(2)));
        assert_eq!(sh.count_int(2), 256);
    }

    #[test]
    fn frames() {
        let d = hamming();
        let la = construct_la(&d).unwrap();
        let lb = construct_lb(&d).unwrap();
        let lc = construct_lc(&d).unwrap();
        assert_eq!(verify_frame(&la, &standard_frame(&la).unwrap()), FrameType::A);
        assert_eq!(verify_frame(&lb, &standard_frame(&lb).unwrap()), FrameType::B);
        assert_eq!(verify_frame(&lc, &standard_frame(&lc).unwrap()), FrameType::C);
    }

    #[test]
    fn z2_frame_code() {
        let l = CongruenceLattice::from_basis(1, vec![vec![1, 0], vec![0, 1]]).unwrap();
        let c = z4_code_from_4frame(&l, &[vec![1, 1], vec![1, -1]]).unwrap();
        assert_eq!((c.k1(), c.k2()), (0, 2));
        assert_eq!(z4_self_dual_check(&c), Z4Type::TypeI);
    }

    #[test]
    fn designs() {
        let l = construct_la(&hamming()).unwrap();
        let v = l.vectors_of_norm(Rational64::from_integer(2), 1000).unwrap();
        assert_eq!(v.len(), 240);
        assert!(spherical_design_moments(&v, 3).unwrap());
        let pair = vec![vec![1, 2, 0], vec![-1, -2, 0]];
        assert!(spherical_design_moments(&pair, 1).unwrap());
        assert!(!spherical_design_moments(&pair, 2).unwrap());
        assert!(spherical_design_moments(&[vec![1, 0], vec![1, 1]], 1).is_err());
    }

    #[test]
    fn lb_listing_matches_count() {
        let d = hamming();
        let v = lb_vectors_by_codewords(&d, 4).unwrap();
        let th = construct_lb(&d).unwrap().theta_by_codewords(4).unwrap();
        assert_eq!(v.len() as u64, th.count_int(4));
    }
    #[test]
    fn index_two_chain() {
        let d = hamming();
        let la = construct_la(&d).unwrap().theta_by_codewords(6).unwrap();
        let lb = construct_lb(&d).unwrap();
        let coset = CongruenceLattice {
            model: Model::Binary2 { code: d.clone(), sums: vec![2] },
            ..lb.clone()
        };
        let lb = lb.theta_by_codewords(6).unwrap();
        let co = coset.theta_by_codewords(6).unwrap();
        for k in 0..=6 {
            assert_eq!(la.count_int(k), lb.count_int(k) + co.count_int(k));
        }
    }

    #[test]
    fn shadow_cosets_cover_shadow() {
        let c = Z4Code::from_generators(1, &[vec![2]]).unwrap();
        let l = construct_lc_odd(&hamming()).unwrap();
        for l in [construct_a4(&c).unwrap(), l] {
            let [a, b] = shadow_cosets(&l, 4).unwrap();
            let all = lattice_shadow_counts(&l, 4, Execution::Sequential).unwrap();
            for (k, v) in all.nonzero() {
                assert_eq!(a.count(k) + b.count(k), v);
            }
        }
    }

    #[test]
    fn lc_odd_hamming_matches_enumeration() {
        let l = construct_lc_odd(&hamming()).unwrap();
        assert!(l.is_unimodular() && !l.is_even());
        let th = l.theta_by_codewords(3).unwrap();
        let en = l.short_vectors(Rational64::from_integer(3), Execution::Sequential).unwrap();
        assert_eq!(th.nonzero(), en.nonzero());
        let sh = lattice_shadow_counts(&l, 3, Execution::Sequential).unwrap();
        let ex = CongruenceLattice::from_basis(8, l.basis().to_vec()).unwrap();
        let sh2 = lattice_shadow_counts(&ex, 3, Execution::Sequential).unwrap();
        assert_eq!(sh.nonzero(), sh2.nonzero());
    }

    #[test]
    fn text_round_trip() {
        let l = construct_lb(&hamming()).unwrap();
        let back = CongruenceLattice::parse_text(&l.to_text()).unwrap();
        assert_eq!(back.basis(), l.basis());
        assert!(CongruenceLattice::parse_text("lattice 2 1\n1 0\n").is_err());
        assert!(CongruenceLattice::parse_text("lattice 2 1\n1 0\n2 0\n").is_err());
    }

    proptest::proptest! {
        #[test]
        fn basis_matches_congruences(z in proptest::collection::vec(-5i64..6, 8)) {
            let d = hamming();
            let rows = d.packed_rows().unwrap();
            let x = z.iter().enumerate().fold(0u64, |m, (i, &v)| m | ((v.rem_euclid(2) as u64) << i));
            let mut in_code = false;
            gray_walk_u64(&rows, 0, |c| in_code |= c == x);
            let la = construct_la(&d).unwrap();
            proptest::prop_assert_eq!(la.contains(&z), in_code);
            let lb = construct_lb(&d).unwrap();
            proptest::prop_assert_eq!(lb.contains(&z), in_code && z.iter().sum::<i64>().rem_euclid(4) == 0);
        }

        #[test]
        fn enumeration_is_basis_invariant(seed in 0u64..1000) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let l = construct_la(&hamming()).unwrap();
            let mut b = l.basis().to_vec();
            for _ in 0..20 {
                let i = rng.gen_range(0..8);
                let j = rng.gen_range(0..8);
                if i != j {
                    let c = rng.gen_range(-2i64..3);
                    let row = b[j].clone();
                    for (x, y) in b[i].iter_mut().zip(&row) {
                        *x += c * y;
                    }
                }
            }
            let m = CongruenceLattice::from_basis(2, b).unwrap();
            let th = m.short_vectors(Rational64::from_integer(2), Execution::Sequential).unwrap();
            proptest::prop_assert_eq!(th.count_int(2), 240);
            proptest::prop_assert!(m.is_unimodular());
        }
    }
}
