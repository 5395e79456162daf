//! Truncated power series and PBW product expansion/extraction.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{int, is_integer, to_i64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant coefficient must be 1, got {0}")]
    BadConstant(String),
    #[error("degree {degree}: extracted exponent {value} is not a nonnegative integer")]
    NonIntegral { degree: usize, value: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least the constant term");
        PowerSeries { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn one(maxdeg: usize) -> Self {
        let mut c = vec![Rational::zero(); maxdeg + 1];
        c[0] = Rational::one();
        PowerSeries { coeffs: c }
    }

    pub fn maxdeg(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Integer coefficients, if all are integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(to_i64).collect()
    }

    pub fn truncate(&self, maxdeg: usize) -> Self {
        let n = maxdeg.min(self.maxdeg());
        PowerSeries::new(self.coeffs[..=n].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.maxdeg().min(other.maxdeg());
        PowerSeries::new((0..=n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.maxdeg().min(other.maxdeg());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries::new(out)
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn reciprocal(&self) -> Self {
        let c0 = &self.coeffs[0];
        assert!(!c0.is_zero(), "reciprocal of a series with zero constant term");
        let n = self.maxdeg();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = c0.recip();
        for k in 1..=n {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -s / c0;
        }
        PowerSeries::new(out)
    }

    /// Multiply by 1/(1-z^d).
    pub fn div_one_minus(&self, d: usize) -> Self {
        assert!(d > 0);
        let mut out = self.coeffs.clone();
        for k in d..out.len() {
            let prev = out[k - d].clone();
            out[k] += prev;
        }
        PowerSeries::new(out)
    }

    pub fn json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(crate::rational::json).collect())
    }
}

/// Generalized binomial coefficient binom(r, j) for rational r.
fn binom(r: &Rational, j: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc = acc * (r - int(i as i64)) / int(i as i64 + 1);
    }
    acc
}

/// (1+z^n)^r for odd n, (1-z^n)^{-r} for even n, truncated.
fn factor(n: usize, r: &Rational, maxdeg: usize) -> PowerSeries {
    let mut c = vec![Rational::zero(); maxdeg + 1];
    let mut j = 0;
    while j * n <= maxdeg {
        c[j * n] = if n % 2 == 1 {
            binom(r, j)
        } else {
            binom(&(r + int(j as i64) - int(1)), j)
        };
        j += 1;
    }
    PowerSeries::new(c)
}

/// Expansion of prod (1+z^odd)^r / prod (1-z^even)^r up to `maxdeg`.
pub fn series_from_product(
    odd: &BTreeMap<usize, u64>,
    even: &BTreeMap<usize, u64>,
    maxdeg: usize,
) -> PowerSeries {
    let mut p = PowerSeries::one(maxdeg);
    for (&n, &r) in odd.iter().chain(even.iter()) {
        assert!(n > 0, "exponent degree must be positive");
        if r > 0 && n <= maxdeg {
            p = p.mul(&factor(n, &int(r as i64), maxdeg));
        }
    }
    p
}

/// Same as [`series_from_product`] with ranks indexed by degree 1..; parity decides the factor.
pub fn series_from_ranks(ranks: &[u64], maxdeg: usize) -> PowerSeries {
    let (odd, even) = split_ranks(ranks);
    series_from_product(&odd, &even, maxdeg)
}

pub fn split_ranks(ranks: &[u64]) -> (BTreeMap<usize, u64>, BTreeMap<usize, u64>) {
    let mut odd = BTreeMap::new();
    let mut even = BTreeMap::new();
    for (i, &r) in ranks.iter().enumerate() {
        let n = i + 1;
        if n % 2 == 1 {
            odd.insert(n, r);
        } else {
            even.insert(n, r);
        }
    }
    (odd, even)
}

/// Exponents r_1..r_maxdeg (rational) reproducing `series` as a PBW product.
pub fn pbw_extract_rational(series: &PowerSeries) -> Result<Vec<Rational>, SeriesError> {
    if !series.coeff(0).is_one() {
        return Err(SeriesError::BadConstant(series.coeff(0).to_string()));
    }
    let maxdeg = series.maxdeg();
    let mut known = PowerSeries::one(maxdeg);
    let mut out = Vec::with_capacity(maxdeg);
    for n in 1..=maxdeg {
        let r = series.coeff(n) - known.coeff(n);
        if !r.is_zero() {
            known = known.mul(&factor(n, &r, maxdeg));
        }
        out.push(r);
    }
    Ok(out)
}

/// Integral PBW exponents; fails on any negative or fractional value.
pub fn pbw_extract(series: &PowerSeries) -> Result<Vec<u64>, SeriesError> {
    pbw_extract_rational(series)?
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            if is_integer(&r) && !r.is_negative() {
                Ok(to_i64(&r).unwrap() as u64)
            } else {
                Err(SeriesError::NonIntegral { degree: i + 1, value: r.to_string() })
            }
        })
        .collect()
}

/// Coefficients of 1/(1-3z+z^2): the Poincare series of the loop space of the two-point blow-up.
pub fn loop_space_series(maxdeg: usize) -> PowerSeries {
    let mut c = vec![0i64; maxdeg + 1];
    c[0] = 1;
    if maxdeg >= 1 {
        c[1] = -3;
    }
    if maxdeg >= 2 {
        c[2] = 1;
    }
    PowerSeries::from_ints(&c).reciprocal()
}

/// Ranks r_1..r_maxdeg of the rational homotopy of that loop space.
pub fn loop_space_ranks(maxdeg: usize) -> Vec<u64> {
    pbw_extract(&loop_space_series(maxdeg)).expect("loop space series is a PBW product")
}

/// r_1..r_maxdeg of the loop space from the power sums p_n of the reciprocal roots of
/// 1-3z+z^2: n [z^n] log H = p_n = sum over d | n of d r_d e(d, n/d), with e = (-1)^(k+1)
/// for odd d and 1 for even d.
pub fn loop_space_ranks_log(maxdeg: usize) -> Vec<i64> {
    let mut p = vec![2i64, 3];
    while p.len() <= maxdeg {
        let n = p.len();
        p.push(3 * p[n - 1] - p[n - 2]);
    }
    let mut r = vec![0i64; maxdeg + 1];
    for n in 1..=maxdeg {
        let mut acc = p[n];
        for d in (1..n).filter(|d| n % d == 0) {
            let k = n / d;
            let e = if d % 2 == 1 && k % 2 == 0 { -1 } else { 1 };
            acc -= d as i64 * r[d] * e;
        }
        r[n] = acc / n as i64;
    }
    r.split_off(1)
}
