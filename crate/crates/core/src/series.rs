//! Truncated integer power series and closed forms for Betti numbers of the
//! residue field over complete intersections.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 64;

/// `c_0 + c_1 t + … + c_T t^T + O(t^{T+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, BigInt::one())
    }

    pub fn monomial(order: usize, k: usize, c: BigInt) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(order: usize, coeffs: &[i64]) -> Self {
        let mut s = Self::zero(order);
        for (k, c) in coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[k] = BigInt::from(*c);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one(self.order());
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Exact quotient; the divisor needs constant term `±1`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let c0 = other.coeff(0);
        if c0.abs() != BigInt::one() {
            return Err(Error::Input("series division needs a unit constant term".into()));
        }
        let order = self.order().min(other.order());
        let mut q = Self::zero(order);
        for n in 0..=order {
            let mut acc = self.coeff(n);
            for k in 1..=n {
                acc -= other.coeff(k) * &q.coeffs[n - k];
            }
            q.coeffs[n] = acc * &c0;
        }
        Ok(q)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|k| self.coeff(k) + rhs.coeff(k)).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: Self) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: Self) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = TruncatedSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(BigInt::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Embedding dimension and codimension of a complete intersection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CIShape {
    pub embdim: usize,
    pub codim: usize,
}

impl CIShape {
    pub fn new(embdim: usize, codim: usize) -> Result<Self> {
        if codim > embdim {
            return Err(Error::Input(format!(
                "codimension {codim} exceeds embedding dimension {embdim}"
            )));
        }
        Ok(CIShape { embdim, codim })
    }

    pub fn dim(&self) -> usize {
        self.embdim - self.codim
    }

    pub fn is_regular(&self) -> bool {
        self.codim == 0
    }
}

/// `P_k(t) = (1+t)^e / (1-t^2)^c`.
pub fn poincare_series(shape: CIShape, order: usize) -> TruncatedSeries {
    let one_plus_t = TruncatedSeries::from_coeffs(order, &[1, 1]);
    let one_minus_t2 = TruncatedSeries::from_coeffs(order, &[1, 0, -1]);
    one_plus_t
        .pow(shape.embdim as u32)
        .div(&one_minus_t2.pow(shape.codim as u32))
        .expect("unit constant term")
}

/// `β^G(k) = (1, 0, β_{d-2}(k), …, β_0(k))`.
pub fn g_betti_of_k(shape: CIShape) -> Result<Vec<BigInt>> {
    if shape.is_regular() {
        return Err(Error::Input("the residue field formula needs a nonregular ring".into()));
    }
    let d = shape.dim();
    let p = poincare_series(shape, d.max(1));
    let mut out = vec![BigInt::one()];
    if d >= 1 {
        out.push(BigInt::zero());
    }
    for n in 2..=d {
        out.push(p.coeff(d - n));
    }
    Ok(out)
}

/// `2^{d-1}` for `c = 1` and `(d-1) 2^{d-2} + 1` for `c = 2`.
pub fn closed_form_chi_g_of_k(shape: CIShape) -> Option<BigInt> {
    let d = shape.dim();
    if d == 0 {
        return None;
    }
    match shape.codim {
        1 => Some(BigInt::one() << (d - 1)),
        2 if d >= 2 => Some(BigInt::from(d - 1) * (BigInt::one() << (d - 2)) + 1),
        2 => Some(BigInt::one()),
        _ => None,
    }
}

/// `χ^G_i(k)`, checked against the closed form when one is known.
pub fn chi_g_of_k(shape: CIShape, i: usize) -> Result<BigInt> {
    let b = g_betti_of_k(shape)?;
    let mut acc = BigInt::zero();
    for (n, v) in b.iter().enumerate().skip(i) {
        if (n - i).is_multiple_of(2) {
            acc += v;
        } else {
            acc -= v;
        }
    }
    if i == 0 {
        if let Some(c) = closed_form_chi_g_of_k(shape) {
            if c != acc {
                return Err(Error::Consistency(format!(
                    "alternating sum {acc} differs from closed form {c}"
                )));
            }
        }
    }
    Ok(acc)
}

pub fn binomial(a: i64, b: i64) -> BigInt {
    if b < 0 || a < 0 || b > a {
        return BigInt::zero();
    }
    let b = b.min(a - b);
    let mut out = BigInt::one();
    for k in 0..b {
        out = out * BigInt::from(a - k) / BigInt::from(k + 1);
    }
    out
}

/// `C(a,b) = C(a-2,b-2) + 2 C(a-2,b-1) + C(a-2,b)` for every `0 ≤ b ≤ a`.
pub fn binomial_identity_check(a: i64) -> bool {
    a >= 2
        && (0..=a).all(|b| {
            binomial(a, b) == binomial(a - 2, b - 2) + BigInt::from(2) * binomial(a - 2, b - 1) + binomial(a - 2, b)
        })
}

/// `(χ^G_R(k), χ^G_{R/sR}(k))` for a hypersurface of dimension `d` and `s ∈ m^2`.
pub fn hypersurface_quotient_comparison(d: usize) -> Result<(BigInt, BigInt)> {
    let r = CIShape::new(d + 1, 1)?;
    let rbar = CIShape::new(d + 1, 2)?;
    Ok((chi_g_of_k(r, 0)?, chi_g_of_k(rbar, 0)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries, n: usize) -> Vec<i64> {
        (0..n).map(|k| s.coeff(k).try_into().unwrap()).collect()
    }

    #[test]
    fn poincare_series_examples() {
        assert_eq!(ints(&poincare_series(CIShape::new(2, 1).unwrap(), 8), 5), vec![1, 2, 2, 2, 2]);
        assert_eq!(ints(&poincare_series(CIShape::new(3, 1).unwrap(), 8), 5), vec![1, 3, 4, 4, 4]);
        assert_eq!(ints(&poincare_series(CIShape::new(2, 0).unwrap(), 8), 5), vec![1, 2, 1, 0, 0]);
    }

    #[test]
    fn relative_betti_of_k() {
        let b = |e, c| -> Vec<i64> {
            g_betti_of_k(CIShape::new(e, c).unwrap())
                .unwrap()
                .iter()
                .map(|v| v.try_into().unwrap())
                .collect()
        };
        assert_eq!(b(2, 1), vec![1, 0]);
        assert_eq!(b(3, 1), vec![1, 0, 1]);
        assert_eq!(b(4, 1), vec![1, 0, 4, 1]);
        assert!(g_betti_of_k(CIShape::new(3, 0).unwrap()).is_err());
    }

    #[test]
    fn closed_forms() {
        let chi = |e, c| chi_g_of_k(CIShape::new(e, c).unwrap(), 0).unwrap();
        assert_eq!(chi(3, 1), BigInt::from(2));
        assert_eq!(chi(7, 1), BigInt::from(32));
        assert_eq!(chi(8, 2), BigInt::from(81));
        for d in 1..=12 {
            chi(d + 1, 1);
            chi(d + 2, 2);
        }
    }

    #[test]
    fn series_division_round_trips() {
        let a = TruncatedSeries::from_coeffs(10, &[1, 3, -2, 5]);
        let b = TruncatedSeries::from_coeffs(10, &[-1, 1, 4]);
        let q = a.div(&b).unwrap();
        assert_eq!(&q * &b, a);
        assert!(a.div(&TruncatedSeries::from_coeffs(10, &[2, 1])).is_err());
        assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3), BigInt::from(35));
        assert!(binomial_identity_check(2));
        assert!(binomial_identity_check(7));
        let sum: BigInt = (1..=5).map(|m| binomial(5, m)).sum();
        assert_eq!(sum, BigInt::from(31));
    }

    #[test]
    fn hypersurface_comparisons() {
        let c = |d| hypersurface_quotient_comparison(d).unwrap();
        assert_eq!(c(1), (BigInt::from(1), BigInt::from(1)));
        assert_eq!(c(2), (BigInt::from(2), BigInt::from(1)));
        assert_eq!(c(6), (BigInt::from(32), BigInt::from(33)));
    }
}
