//! Power series in `q^{1/4}` with exact coefficients, the Jacobi theta series,
//! and the theta/shadow expansions of odd unimodular lattices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::solve;

/// Largest supported truncation order, in quarter steps.
pub const MAX_ORDER: usize = 10_000;

/// `a + b alpha` with rational `a`, `b`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Affine {
    pub constant: BigRational,
    pub alpha: BigRational,
}

impl Affine {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Affine {
            constant: BigRational::from_integer(c.into()),
            alpha: BigRational::zero(),
        }
    }

    pub fn alpha() -> Self {
        Affine {
            constant: BigRational::zero(),
            alpha: BigRational::one(),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Affine {
            constant: r,
            alpha: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.alpha.is_zero()
    }

    pub fn scale(&self, r: &BigRational) -> Affine {
        Affine {
            constant: &self.constant * r,
            alpha: &self.alpha * r,
        }
    }

    /// Value at a given `alpha`.
    pub fn at(&self, alpha: i64) -> BigRational {
        &self.constant + &self.alpha * BigRational::from_integer(alpha.into())
    }
}

impl Add for &Affine {
    type Output = Affine;
    fn add(self, o: &Affine) -> Affine {
        Affine {
            constant: &self.constant + &o.constant,
            alpha: &self.alpha + &o.alpha,
        }
    }
}

impl Sub for &Affine {
    type Output = Affine;
    fn sub(self, o: &Affine) -> Affine {
        Affine {
            constant: &self.constant - &o.constant,
            alpha: &self.alpha - &o.alpha,
        }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.alpha.is_zero() {
            return write!(f, "{}", self.constant);
        }
        let a = if self.alpha.is_one() {
            "α".to_string()
        } else if (-&self.alpha).is_one() {
            "-α".to_string()
        } else {
            format!("{}α", self.alpha)
        };
        if self.constant.is_zero() {
            write!(f, "{a}")
        } else if self.alpha.is_negative() {
            write!(f, "{}{a}", self.constant)
        } else {
            write!(f, "{}+{a}", self.constant)
        }
    }
}

impl Serialize for Affine {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Series `sum c_k q^{k/4}` truncated after quarter index `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    pub fn zero(order: usize) -> Self {
        QSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a series keeps at least the constant term");
        QSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^{quarter/4}`; zero beyond the truncation.
    pub fn quarter(&self, quarter: usize) -> BigInt {
        self.coeffs.get(quarter).cloned().unwrap_or_default()
    }

    /// Coefficient of `q^k` for integral `k`.
    pub fn at(&self, k: usize) -> BigInt {
        self.quarter(4 * k)
    }

    pub fn mul(&self, o: &QSeries) -> QSeries {
        let order = self.order().min(o.order());
        let mut out = Self::zero(order);
        for (i, x) in self.coeffs.iter().enumerate().take(order + 1) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate().take(order + 1 - i) {
                if !y.is_zero() {
                    out.coeffs[i + j] += x * y;
                }
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> QSeries {
        let mut out = Self::one(self.order());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        out
    }

    /// `f(q) -> f(q^2)`, keeping the same truncation order.
    pub fn substitute_square(&self) -> QSeries {
        let mut out = Self::zero(self.order());
        for (i, x) in self.coeffs.iter().enumerate() {
            if 2 * i <= self.order() {
                out.coeffs[2 * i] = x.clone();
            }
        }
        out
    }
}

/// The four series of the theta expansions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Jacobi {
    Theta2,
    Theta3,
    Theta4,
    Delta8,
}

/// Exact expansion up to quarter index `order`.
pub fn jacobi_series(kind: Jacobi, order: usize) -> Result<QSeries> {
    if order > MAX_ORDER {
        return Err(Error::ResourceCap(format!("order {order} exceeds {MAX_ORDER} quarter steps")));
    }
    let mut s = QSeries::zero(order);
    match kind {
        Jacobi::Theta3 | Jacobi::Theta4 => {
            let sign = kind == Jacobi::Theta4;
            s.coeffs[0] = BigInt::one();
            let mut m = 1usize;
            while 4 * m * m <= order {
                let c = if sign && m % 2 == 1 { -2 } else { 2 };
                s.coeffs[4 * m * m] += c;
                m += 1;
            }
        }
        Jacobi::Theta2 => {
            // q^{(m+1/2)^2} = q^{(2m+1)^2 / 4}, for m and -m-1
            let mut m = 0usize;
            while (2 * m + 1) * (2 * m + 1) <= order {
                s.coeffs[(2 * m + 1) * (2 * m + 1)] += 2;
                m += 1;
            }
        }
        Jacobi::Delta8 => {
            // q prod (1 - q^{2m-1})^8 (1 - q^{4m})^8
            let mut p = QSeries::one(order);
            let factor = |e: usize| {
                let mut f = QSeries::one(order);
                if 4 * e <= order {
                    f.coeffs[4 * e] = BigInt::from(-1);
                }
                f.pow(8)
            };
            let mut m = 1;
            while 4 * (2 * m - 1) <= order {
                p = p.mul(&factor(2 * m - 1));
                if 16 * m <= order {
                    p = p.mul(&factor(4 * m));
                }
                m += 1;
            }
            for i in 0..=order {
                if i >= 4 {
                    s.coeffs[i] = p.coeffs[i - 4].clone();
                }
            }
        }
    }
    Ok(s)
}

/// Series with affine coefficients, indexed by quarter steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSeries {
    pub coeffs: Vec<Affine>,
}

impl AffineSeries {
    pub fn quarter(&self, quarter: usize) -> Affine {
        self.coeffs.get(quarter).cloned().unwrap_or_default()
    }

    pub fn at(&self, k: usize) -> Affine {
        self.quarter(4 * k)
    }

    /// Nonzero terms as `exponent -> coefficient`, exponents printed as rationals.
    pub fn terms(&self) -> BTreeMap<Rational64, Affine> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Rational64::new(i as i64, 4), c.clone()))
            .collect()
    }

    fn combine(n_terms: usize, order: usize, a: &[Affine], basis: impl Fn(usize) -> Result<(QSeries, BigRational)>) -> Result<Self> {
        let mut coeffs = vec![Affine::default(); order + 1];
        for (j, aj) in a.iter().enumerate().take(n_terms) {
            if aj.is_zero() {
                continue;
            }
            let (b, scale) = basis(j)?;
            let aj = aj.scale(&scale);
            for (i, c) in b.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    let r = BigRational::from_integer(c.clone());
                    coeffs[i] = &coeffs[i] + &aj.scale(&r);
                }
            }
        }
        Ok(AffineSeries { coeffs })
    }
}

impl Serialize for AffineSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.terms();
        let mut m = s.serialize_map(Some(terms.len()))?;
        for (e, c) in terms {
            m.serialize_entry(&e.to_string(), &c.to_string())?;
        }
        m.end()
    }
}

/// `theta_3^{n-8j} Delta_8^j`.
pub fn lattice_basis(n: usize, j: usize, order: usize) -> Result<QSeries> {
    let t3 = jacobi_series(Jacobi::Theta3, order)?;
    let d8 = jacobi_series(Jacobi::Delta8, order)?;
    Ok(t3.pow(n - 8 * j).mul(&d8.pow(j)))
}

/// `theta_2^{n-8j} theta_4(q^2)^{8j}` and its weight `(-1)^j / 16^j`.
pub fn shadow_basis(n: usize, j: usize, order: usize) -> Result<(QSeries, BigRational)> {
    let t2 = jacobi_series(Jacobi::Theta2, order)?;
    let t4sq = jacobi_series(Jacobi::Theta4, order)?.substitute_square();
    let sign = if j.is_multiple_of(2) { 1 } else { -1 };
    let weight = BigRational::new(BigInt::from(sign), BigInt::from(16).pow(j as u32));
    Ok((t2.pow(n - 8 * j).mul(&t4sq.pow(8 * j)), weight))
}

/// `sum a_j theta_3^{n-8j} Delta_8^j` up to quarter index `order`.
pub fn theta_from_coefficients(a: &[Affine], n: usize, order: usize) -> Result<AffineSeries> {
    AffineSeries::combine(n / 8 + 1, order, a, |j| Ok((lattice_basis(n, j, order)?, BigRational::one())))
}

/// `sum (-1)^j 16^{-j} a_j theta_2^{n-8j} theta_4(q^2)^{8j}`.
pub fn shadow_theta(a: &[Affine], n: usize, order: usize) -> Result<AffineSeries> {
    AffineSeries::combine(n / 8 + 1, order, a, |j| shadow_basis(n, j, order))
}

/// Solve for `a_0..a_{floor(n/8)}` from prescribed lattice coefficients
/// (`q^k -> value`) and shadow coefficients (`q^{quarter/4} -> value`).
pub fn fit_theta_conditions(n: usize, lattice: &[(usize, Affine)], shadow: &[(usize, Affine)]) -> Result<Vec<Affine>> {
    let m = n / 8 + 1;
    if lattice.len() + shadow.len() != m {
        return Err(Error::InconsistentSeries(format!(
            "{} conditions for {m} unknowns",
            lattice.len() + shadow.len()
        )));
    }
    let order = lattice
        .iter()
        .map(|(k, _)| 4 * k)
        .chain(shadow.iter().map(|(q, _)| *q))
        .max()
        .unwrap_or(0);
    let lat: Vec<QSeries> = (0..m).map(|j| lattice_basis(n, j, order)).collect::<Result<_>>()?;
    let sh: Vec<(QSeries, BigRational)> = (0..m).map(|j| shadow_basis(n, j, order)).collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (k, v) in lattice {
        rows.push(lat.iter().map(|b| BigRational::from_integer(b.at(*k))).collect::<Vec<_>>());
        rhs.push(v.clone());
    }
    for (q, v) in shadow {
        rows.push(sh.iter().map(|(b, w)| BigRational::from_integer(b.quarter(*q)) * w).collect());
        rhs.push(v.clone());
    }
    let c = solve(rows.clone(), rhs.iter().map(|v| v.constant.clone()).collect());
    let a = solve(rows, rhs.iter().map(|v| v.alpha.clone()).collect());
    match (c, a) {
        (Some(c), Some(a)) => Ok(c.into_iter().zip(a).map(|(constant, alpha)| Affine { constant, alpha }).collect()),
        _ => Err(Error::InconsistentSeries("conditions do not determine the coefficients".into())),
    }
}

/// Shell counts of a lattice, keyed by norm.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ThetaSeries {
    /// Enumeration horizon: every shell of norm `<= max_norm` is complete.
    pub max_norm: Rational64,
    pub shells: BTreeMap<Rational64, u64>,
}

impl ThetaSeries {
    pub fn count(&self, norm: Rational64) -> u64 {
        self.shells.get(&norm).copied().unwrap_or(0)
    }

    pub fn count_int(&self, norm: i64) -> u64 {
        self.count(Rational64::from_integer(norm))
    }

    /// Shells with a positive count.
    pub fn nonzero(&self) -> BTreeMap<Rational64, u64> {
        self.shells.iter().filter(|(_, &c)| c > 0).map(|(k, v)| (*k, *v)).collect()
    }

    /// Minimum nonzero norm present.
    pub fn min_norm(&self) -> Option<Rational64> {
        self.shells
            .iter()
            .find(|(k, &c)| **k > Rational64::zero() && c > 0)
            .map(|(k, _)| *k)
    }
}

impl Serialize for ThetaSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let shells = self.nonzero();
        let mut m = s.serialize_map(Some(shells.len()))?;
        for (k, v) in shells {
            m.serialize_entry(&k.to_string(), &v)?;
        }
        m.end()
    }
}

/// Result of fitting the `a_j` to an enumerated theta series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaFit {
    pub a: Vec<Affine>,
    /// Whether `a_{n/8}` came from the shadow having no vector of norm 0.
    pub used_shadow_origin: bool,
    /// `a_{n/8-1} / 2^8` when `n = 40`, the norm-2 shadow count.
    pub alpha: Option<Affine>,
}

/// Fit `a_j` to the integral shells of `theta`.
///
/// Needs shells `0..=floor(n/8)`; for odd lattices with `8 | n` the top
/// coefficient can instead come from the shadow's missing norm-0 vector.
/// Extra shells are checked against the fitted expansion.
pub fn fit_theta(theta: &ThetaSeries, n: usize, odd: bool) -> Result<ThetaFit> {
    let m = n / 8;
    let horizon = theta.max_norm.floor().to_integer();
    if horizon < 0 {
        return Err(Error::InconsistentSeries("empty series".into()));
    }
    let horizon = horizon as usize;
    let count = |k: usize| Affine::constant(theta.count_int(k as i64));
    let (a, used) = if horizon >= m {
        let lattice: Vec<(usize, Affine)> = (0..=m).map(|k| (k, count(k))).collect();
        (fit_theta_conditions(n, &lattice, &[])?, false)
    } else if horizon + 1 == m && odd && n.is_multiple_of(8) {
        let lattice: Vec<(usize, Affine)> = (0..m).map(|k| (k, count(k))).collect();
        (fit_theta_conditions(n, &lattice, &[(0, Affine::default())])?, true)
    } else {
        return Err(Error::InconsistentSeries(format!(
            "shells up to norm {horizon} do not determine {} coefficients",
            m + 1
        )));
    };
    let expansion = theta_from_coefficients(&a, n, 4 * horizon)?;
    for k in 0..=horizon {
        if expansion.at(k) != count(k) {
            return Err(Error::InconsistentSeries(format!(
                "shell {k}: enumerated {}, expansion gives {}",
                theta.count_int(k as i64),
                expansion.at(k)
            )));
        }
    }
    // fractional shells cannot occur in an integral lattice
    if theta.shells.iter().any(|(k, &c)| !k.is_integer() && c > 0) {
        return Err(Error::InconsistentSeries("non-integral norm in an integral lattice".into()));
    }
    let alpha = (n == 40).then(|| a[4].scale(&BigRational::new(1.into(), 256.into())));
    Ok(ThetaFit {
        a,
        used_shadow_origin: used,
        alpha,
    })
}

/// `a_j` of an extremal odd unimodular lattice of dimension 40, in terms of
/// the norm-2 shadow count `alpha`.
pub fn extremal_odd_40() -> Result<Vec<Affine>> {
    let lattice: Vec<(usize, Affine)> = vec![
        (0, Affine::constant(1)),
        (1, Affine::default()),
        (2, Affine::default()),
        (3, Affine::default()),
    ];
    let shadow = vec![(0, Affine::default()), (8, Affine::alpha())];
    fit_theta_conditions(40, &lattice, &shadow)
}

/// `alpha` is even with `0 <= alpha <= 80`.
pub fn alpha_is_admissible(alpha: i64) -> bool {
    alpha % 2 == 0 && (0..=80).contains(&alpha)
}

/// Convert an affine value known to be an integer.
pub fn to_integer(v: &BigRational) -> Option<i64> {
    v.is_integer().then(|| v.to_integer().to_i64()).flatten()
}
