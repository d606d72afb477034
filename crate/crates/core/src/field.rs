//! Scalar fields.
//!
//! All linear algebra in the crate is generic over [`Field`]. The graded
//! machinery additionally needs [`PrimeField`]: a finite prime field whose
//! modulus is a compile-time constant, so every element is `Copy` and the
//! `num-traits` identities are available without a context object.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Inv, One, Zero};

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Eq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    /// Image of an integer under the canonical map `Z -> F`.
    fn from_int(value: i64) -> Self;
}

/// A prime field `GF(p)` with `p` fixed at compile time.
pub trait PrimeField: Field + Copy + Hash + Ord + AddAssign + SubAssign + MulAssign {
    const CHARACTERISTIC: u32;

    /// Canonical representative in `0..p`.
    fn residue(self) -> u32;

    /// Reduces `value` modulo `p`.
    fn from_u64(value: u64) -> Self;

    /// Every element of the field, zero first.
    fn elements() -> impl Iterator<Item = Self> {
        (0..Self::CHARACTERISTIC as u64).map(Self::from_u64)
    }

    /// A square root of `-1`, if one exists.
    fn sqrt_minus_one() -> Option<Self> {
        let target = -Self::one();
        Self::elements().find(|x| *x * *x == target)
    }
}

const fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field `GF(P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    const VALID: () = assert!(is_prime(P), "Fp modulus must be prime");

    pub fn new(value: i64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        Fp(value.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    /// Symmetric representative in `(-P/2, P/2]`, used for printing.
    pub fn signed(self) -> i64 {
        let v = self.0 as i64;
        if v > P as i64 / 2 {
            v - P as i64
        } else {
            v
        }
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.signed())
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + P - rhs.0
        })
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in GF(p)")
    }
}

impl<const P: u32> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u32> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u32> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> Inv for Fp<P> {
    type Output = Self;
    fn inv(self) -> Self {
        self.inverse().expect("inverse of zero in GF(p)")
    }
}

impl<const P: u32> Field for Fp<P> {
    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P as u64 - 2))
        }
    }

    fn from_int(value: i64) -> Self {
        Self::new(value)
    }
}

impl<const P: u32> PrimeField for Fp<P> {
    const CHARACTERISTIC: u32 = P;

    fn residue(self) -> u32 {
        self.0
    }

    fn from_u64(value: u64) -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::VALID;
        Fp((value % P as u64) as u32)
    }
}

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_int(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = Fp<13>;

    #[test]
    fn arithmetic_mod_13() {
        assert_eq!(F::new(7) + F::new(9), F::new(3));
        assert_eq!(F::new(2) - F::new(5), F::new(10));
        assert_eq!(F::new(5) * F::new(5), F::new(-1));
        assert_eq!(-F::new(0), F::zero());
        assert_eq!(F::new(-1).value(), 12);
    }

    #[test]
    fn inverses_exist_for_nonzero() {
        for x in F::elements().skip(1) {
            assert_eq!(x * x.inverse().unwrap(), F::one());
        }
        assert!(F::zero().inverse().is_none());
    }

    #[test]
    fn sqrt_of_minus_one() {
        let i = F::sqrt_minus_one().unwrap();
        assert_eq!(i * i, -F::one());
        assert!(Fp::<7>::sqrt_minus_one().is_none());
    }

    #[test]
    fn signed_representative() {
        assert_eq!(F::new(12).signed(), -1);
        assert_eq!(F::new(6).signed(), 6);
        assert_eq!(F::new(7).signed(), -6);
    }

    #[test]
    fn rationals_are_a_field() {
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(half.inverse().unwrap(), BigRational::from_int(2));
        assert!(BigRational::zero().inverse().is_none());
    }
}
