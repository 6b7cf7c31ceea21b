//! Exact arithmetic in the ring Z[1/2] of dyadic rationals.
//!
//! Every scalar in this crate that is not a plain integer is a dyadic
//! rational m / 2^e.  The canonical form keeps the mantissa odd (or zero
//! with exponent zero), so equality is structural and the exponent of a
//! nonzero value is exactly the 2-adic level of its denominator.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// A dyadic rational `mantissa / 2^exp` in canonical form: the mantissa is
/// odd, or the value is zero with `exp == 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(mantissa: BigInt, exp: u32) -> Self {
        let mut v = Dyadic { mantissa, exp };
        v.normalize();
        v
    }

    pub fn zero() -> Self {
        Dyadic { mantissa: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { mantissa: BigInt::one(), exp: 0 }
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Dyadic::new(n.into(), 0)
    }

    /// `1 / 2^e`.
    pub fn inv_pow2(e: u32) -> Self {
        Dyadic { mantissa: BigInt::one(), exp: e }
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && (&self.mantissa % 2u8).is_zero() {
            self.mantissa /= 2;
            self.exp -= 1;
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    /// Level of a scalar: the exponent of the denominator, `None` for zero
    /// (the paper's convention is level(0) = -infinity).
    pub fn level(&self) -> Option<u32> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp)
        }
    }

    /// Exact integer value; panics if the value is not an integer.
    pub fn to_int(&self) -> BigInt {
        assert!(self.is_integer(), "dyadic {} is not an integer", self);
        self.mantissa.clone()
    }

    /// `self * 2^k` (k may be negative).
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        let e = self.exp as i64 - k;
        if e >= 0 {
            Dyadic { mantissa: self.mantissa.clone(), exp: e as u32 }
        } else {
            Dyadic { mantissa: &self.mantissa << ((-e) as usize), exp: 0 }
        }
    }

    /// Numerator of `self * 2^e`; panics unless `e >= self.exp`.
    pub fn scaled_int(&self, e: u32) -> BigInt {
        assert!(e >= self.exp, "scaling by 2^{} does not clear 2^{}", e, self.exp);
        &self.mantissa << ((e - self.exp) as usize)
    }

    pub fn abs(&self) -> Self {
        Dyadic { mantissa: self.mantissa.abs(), exp: self.exp }
    }

    /// Sign of the mantissa: -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        if self.mantissa.is_zero() {
            0
        } else if self.mantissa.is_negative() {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.mantissa, self.exp)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        Dyadic::new(self.scaled_int(e) + rhs.scaled_int(e), e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let e = self.exp.max(rhs.exp);
        Dyadic::new(self.scaled_int(e) - rhs.scaled_int(e), e)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.mantissa * &rhs.mantissa, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { mantissa: -&self.mantissa, exp: self.exp }
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        &self + &rhs
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        &self - &rhs
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        &self * &rhs
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -&self
    }
}

impl AddAssign<&Dyadic> for Dyadic {
    fn add_assign(&mut self, rhs: &Dyadic) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Dyadic> for Dyadic {
    fn sub_assign(&mut self, rhs: &Dyadic) {
        *self = &*self - rhs;
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exp.max(other.exp);
        self.scaled_int(e).cmp(&other.scaled_int(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(m: i64, e: u32) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn canonical_form() {
        assert_eq!(dy(4, 2), dy(1, 0));
        assert_eq!(dy(6, 3), dy(3, 2));
        assert_eq!(dy(0, 5), Dyadic::zero());
        assert_eq!(dy(-8, 1).to_int(), BigInt::from(-4));
    }

    #[test]
    fn arithmetic() {
        // 1/2 + 1/4 = 3/4
        assert_eq!(&dy(1, 1) + &dy(1, 2), dy(3, 2));
        // 1/2 - 1/2 = 0
        assert!((&dy(1, 1) - &dy(1, 1)).is_zero());
        // 3/4 * 2 = 3/2
        assert_eq!(&dy(3, 2) * &dy(2, 0), dy(3, 1));
        assert_eq!(dy(3, 2).mul_pow2(2), dy(3, 0));
        assert_eq!(dy(3, 0).mul_pow2(-1), dy(3, 1));
    }

    #[test]
    fn levels() {
        assert_eq!(dy(3, 2).level(), Some(2));
        assert_eq!(dy(2, 0).level(), Some(0));
        assert_eq!(Dyadic::zero().level(), None);
    }

    #[test]
    fn ordering() {
        assert!(dy(1, 2) < dy(1, 1));
        assert!(dy(-1, 0) < dy(1, 3));
        assert_eq!(dy(1, 1).cmp(&dy(2, 2)), Ordering::Equal);
    }
}
