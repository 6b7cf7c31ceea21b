//! The ambient quadratic space and exact coordinate vectors.
//!
//! The ambient space for dimension exponent d is Q^(2^d) with orthogonal
//! basis v_i indexed by Omega = F_2^d and (v_i, v_j) = 2^floor(d/2) delta_ij.
//! Coordinates are dyadic rationals throughout.

use crate::codes::BitWord;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use num_bigint::BigInt;

/// Ambient space of dimension 2^d with inner product scale 2^floor(d/2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmbientSpace {
    d: u32,
}

impl AmbientSpace {
    pub fn new(d: u32) -> Self {
        assert!(d <= crate::codes::MAX_D, "d={} beyond supported range", d);
        AmbientSpace { d }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn dim(&self) -> usize {
        1 << self.d
    }

    /// Exponent of the basis norm: (v_i, v_i) = 2^scale_log2.
    pub fn scale_log2(&self) -> u32 {
        self.d / 2
    }
}

/// An exact vector over the standard basis of an ambient space.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicVector {
    ambient: AmbientSpace,
    coords: Vec<Dyadic>,
}

impl DyadicVector {
    pub fn zero(ambient: AmbientSpace) -> Self {
        DyadicVector { ambient, coords: vec![Dyadic::zero(); ambient.dim()] }
    }

    pub fn new(ambient: AmbientSpace, coords: Vec<Dyadic>) -> Self {
        assert_eq!(coords.len(), ambient.dim());
        DyadicVector { ambient, coords }
    }

    /// Standard basis vector v_i.
    pub fn basis(ambient: AmbientSpace, i: u32) -> Self {
        let mut v = DyadicVector::zero(ambient);
        v.coords[i as usize] = Dyadic::one();
        v
    }

    /// `2^(-m) * v_X` for a subset X of Omega.
    pub fn from_word(ambient: AmbientSpace, word: &BitWord, m: u32) -> Self {
        assert_eq!(word.d(), ambient.d());
        let mut v = DyadicVector::zero(ambient);
        for p in word.points() {
            v.coords[p as usize] = Dyadic::inv_pow2(m);
        }
        v
    }

    pub fn ambient(&self) -> AmbientSpace {
        self.ambient
    }

    pub fn coords(&self) -> &[Dyadic] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Dyadic {
        &self.coords[i]
    }

    pub fn set_coord(&mut self, i: usize, v: Dyadic) {
        self.coords[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Dyadic::is_zero)
    }

    pub fn check_ambient(&self, other: &DyadicVector) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::MixedAmbient);
        }
        Ok(())
    }

    pub fn add(&self, other: &DyadicVector) -> DyadicVector {
        assert_eq!(self.ambient, other.ambient);
        DyadicVector {
            ambient: self.ambient,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &DyadicVector) -> DyadicVector {
        assert_eq!(self.ambient, other.ambient);
        DyadicVector {
            ambient: self.ambient,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn neg(&self) -> DyadicVector {
        DyadicVector { ambient: self.ambient, coords: self.coords.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, s: &Dyadic) -> DyadicVector {
        DyadicVector {
            ambient: self.ambient,
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mul_pow2(&self, k: i64) -> DyadicVector {
        DyadicVector {
            ambient: self.ambient,
            coords: self.coords.iter().map(|a| a.mul_pow2(k)).collect(),
        }
    }

    /// Exact inner product (x, y) = 2^floor(d/2) * sum x_i y_i.
    pub fn inner(&self, other: &DyadicVector) -> Dyadic {
        assert_eq!(self.ambient, other.ambient);
        let mut acc = Dyadic::zero();
        for (a, b) in self.coords.iter().zip(&other.coords) {
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
        }
        acc.mul_pow2(self.ambient.scale_log2() as i64)
    }

    pub fn norm(&self) -> Dyadic {
        self.inner(self)
    }

    /// Level: the least m >= 0 such that 2^m x has integer coordinates;
    /// None for the zero vector.
    pub fn level(&self) -> Option<u32> {
        self.coords.iter().filter_map(Dyadic::level).max()
    }

    /// The 2-adic top of a nonzero vector: the digit layer at the level
    /// exponent, with negative coordinates contributing negated digits.
    /// Since mantissas are odd, coordinate i contributes sign(x_i)/2^m
    /// exactly when its own level equals the vector level m.
    pub fn top(&self) -> Result<DyadicVector> {
        let m = self.level().ok_or(Error::ZeroVector)?;
        let mut t = DyadicVector::zero(self.ambient);
        for (i, c) in self.coords.iter().enumerate() {
            if c.level() == Some(m) {
                t.coords[i] = Dyadic::new(BigInt::from(c.signum()), m);
            }
        }
        Ok(t)
    }

    /// Support of the top layer as a word (the codeword B with
    /// top(x) = 2^(-m) v_B up to signs).
    pub fn top_word(&self) -> Result<BitWord> {
        let m = self.level().ok_or(Error::ZeroVector)?;
        let mut w = BitWord::empty(self.ambient.d());
        for (i, c) in self.coords.iter().enumerate() {
            if c.level() == Some(m) {
                w.set(i as u32, true);
            }
        }
        Ok(w)
    }

    /// Support of the whole vector as a word.
    pub fn support(&self) -> BitWord {
        let mut w = BitWord::empty(self.ambient.d());
        for (i, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                w.set(i as u32, true);
            }
        }
        w
    }

    /// Canonical representative of {x, -x}: the one whose first nonzero
    /// coordinate is positive.
    pub fn canonical_sign(&self) -> DyadicVector {
        match self.coords.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Integer row `2^e * x`; panics if some coordinate needs more than 2^e.
    pub fn scaled_row(&self, e: u32) -> Vec<BigInt> {
        self.coords.iter().map(|c| c.scaled_int(e)).collect()
    }

    pub fn from_scaled_row(ambient: AmbientSpace, row: &[BigInt], e: u32) -> Self {
        DyadicVector {
            ambient,
            coords: row.iter().map(|m| Dyadic::new(m.clone(), e)).collect(),
        }
    }
}

impl std::fmt::Debug for DyadicVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dy(m: i64, e: u32) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn inner_product_scale() {
        let amb = AmbientSpace::new(3);
        let v0 = DyadicVector::basis(amb, 0);
        let v1 = DyadicVector::basis(amb, 1);
        assert_eq!(v0.norm(), dy(2, 0));
        assert!(v0.inner(&v1).is_zero());
        // (1/2) v_Omega in d=3 has norm (1/4) * 8 * 2 = 4.
        let w = BitWord::omega(3);
        let half = DyadicVector::from_word(amb, &w, 1);
        assert_eq!(half.norm(), dy(4, 0));
    }

    #[test]
    fn level_and_top_basis_vector() {
        let amb = AmbientSpace::new(2);
        let v = DyadicVector::basis(amb, 1);
        assert_eq!(v.level(), Some(0));
        assert_eq!(v.top().unwrap(), v);
    }

    #[test]
    fn level_and_top_rank2_example() {
        // x = (1/2, 1/4) over the standard basis of a 2-dimensional ambient
        // space: level 2, top = (0, 1/4).
        let amb = AmbientSpace::new(1);
        let x = DyadicVector::new(amb, vec![dy(1, 1), dy(1, 2)]);
        assert_eq!(x.level(), Some(2));
        let t = x.top().unwrap();
        assert!(t.coord(0).is_zero());
        assert_eq!(*t.coord(1), dy(1, 2));
    }

    #[test]
    fn top_sign_convention() {
        // Negative coordinates expand with negated digits: top(-3/4, 1/4)
        // picks -1/4 at the first coordinate.
        let amb = AmbientSpace::new(1);
        let x = DyadicVector::new(amb, vec![dy(-3, 2), dy(1, 1)]);
        assert_eq!(x.level(), Some(2));
        let t = x.top().unwrap();
        assert_eq!(*t.coord(0), dy(-1, 2));
        assert!(t.coord(1).is_zero());
    }

    #[test]
    fn top_reduces_level() {
        // x - top(x) has level < level(x) when level(x) > 0.
        let amb = AmbientSpace::new(2);
        let x = DyadicVector::new(amb, vec![dy(3, 2), dy(1, 1), dy(5, 0), dy(0, 0)]);
        let t = x.top().unwrap();
        let rest = x.sub(&t);
        assert!(rest.level().unwrap() < x.level().unwrap());
    }

    #[test]
    fn half_affine_two_space() {
        // x = (1/2) v_A for an affine 2-space A: level 1 and top = x.
        let amb = AmbientSpace::new(3);
        let a = crate::codes::AffineSubspace::new(3, 1, &[2, 4]);
        let x = DyadicVector::from_word(amb, &a.to_word(), 1);
        assert_eq!(x.level(), Some(1));
        assert_eq!(x.top().unwrap(), x);
    }

    #[test]
    fn canonical_sign() {
        let amb = AmbientSpace::new(1);
        let x = DyadicVector::new(amb, vec![dy(-1, 0), dy(3, 1)]);
        let c = x.canonical_sign();
        assert_eq!(*c.coord(0), dy(1, 0));
        assert_eq!(c, c.canonical_sign());
    }
}
