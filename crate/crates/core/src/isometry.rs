//! Monomial isometries of the ambient space: signed affine permutations of
//! the standard basis.  These cover everything the cousin constructions
//! need: sign maps eps_S, translations tau_c, the fourvolutions
//! f = eps_H tau_c, and the diagonal involutions t = eps_Z built from short
//! defect-k codewords.
//!
//! Composition is a right action: x(gh) = (xg)h, with the sign applied
//! before the point permutation.

use crate::codes::{cubi_codeword, AffineSubspace, BitWord, RmFamily};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::IntMatrix;
use crate::vector::DyadicVector;
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// Invertible linear map on F_2^d; `rows[i]` is the image of e_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMapF2 {
    d: u32,
    rows: Vec<u32>,
}

impl LinearMapF2 {
    pub fn identity(d: u32) -> Self {
        LinearMapF2 { d, rows: (0..d).map(|i| 1 << i).collect() }
    }

    pub fn new(d: u32, rows: Vec<u32>) -> Result<Self> {
        if rows.len() != d as usize {
            return Err(Error::Parameter("linear map needs d rows".into()));
        }
        let m = LinearMapF2 { d, rows };
        if crate::codes::point_echelon(d, &m.rows).len() != d as usize {
            return Err(Error::Parameter("linear map is singular".into()));
        }
        Ok(m)
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn apply(&self, p: u32) -> u32 {
        let mut out = 0;
        let mut bits = p;
        while bits != 0 {
            let i = bits.trailing_zeros();
            out ^= self.rows[i as usize];
            bits &= bits - 1;
        }
        out
    }

    fn compose(&self, then: &LinearMapF2) -> LinearMapF2 {
        LinearMapF2 { d: self.d, rows: self.rows.iter().map(|&r| then.apply(r)).collect() }
    }

    fn inverse(&self) -> LinearMapF2 {
        // Gauss-Jordan on [M | I] over F_2, rows as (image, preimage) pairs.
        let d = self.d as usize;
        let mut m: Vec<(u32, u32)> = self.rows.iter().enumerate().map(|(i, &r)| (r, 1 << i)).collect();
        for col in 0..d {
            let p = (col..d).find(|&i| (m[i].0 >> col) & 1 == 1).expect("singular map");
            m.swap(col, p);
            for i in 0..d {
                if i != col && (m[i].0 >> col) & 1 == 1 {
                    m[i].0 ^= m[col].0;
                    m[i].1 ^= m[col].1;
                }
            }
        }
        LinearMapF2 { d: self.d, rows: m.into_iter().map(|(_, pre)| pre).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, &r)| r == 1 << i)
    }
}

/// Affine map p -> p*linear + shift on F_2^d (right action on points).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMapF2 {
    pub linear: LinearMapF2,
    pub shift: u32,
}

impl AffineMapF2 {
    pub fn identity(d: u32) -> Self {
        AffineMapF2 { linear: LinearMapF2::identity(d), shift: 0 }
    }

    pub fn translation(d: u32, c: u32) -> Self {
        AffineMapF2 { linear: LinearMapF2::identity(d), shift: c & ((1 << d) - 1) }
    }

    pub fn apply(&self, p: u32) -> u32 {
        self.linear.apply(p) ^ self.shift
    }

    pub fn compose(&self, then: &AffineMapF2) -> AffineMapF2 {
        AffineMapF2 {
            linear: self.linear.compose(&then.linear),
            shift: then.linear.apply(self.shift) ^ then.shift,
        }
    }

    pub fn inverse(&self) -> AffineMapF2 {
        let inv = self.linear.inverse();
        let shift = inv.apply(self.shift);
        AffineMapF2 { linear: inv, shift }
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.linear.is_identity()
    }
}

/// A signed affine permutation of the standard basis:
/// v_i -> (-1)^[i in sign] v_{i pi}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIsometry {
    d: u32,
    sign: BitWord,
    map: AffineMapF2,
}

impl MonomialIsometry {
    pub fn identity(d: u32) -> Self {
        MonomialIsometry { d, sign: BitWord::empty(d), map: AffineMapF2::identity(d) }
    }

    pub fn new(d: u32, sign: BitWord, map: AffineMapF2) -> Self {
        assert_eq!(sign.d(), d);
        MonomialIsometry { d, sign, map }
    }

    /// Sign map eps_S: v_i -> -v_i exactly for i in S.
    pub fn eps(sign: BitWord) -> Self {
        let d = sign.d();
        MonomialIsometry { d, sign, map: AffineMapF2::identity(d) }
    }

    /// Translation tau_c: v_i -> v_{i+c}.
    pub fn tau(d: u32, c: u32) -> Self {
        MonomialIsometry { d, sign: BitWord::empty(d), map: AffineMapF2::translation(d, c) }
    }

    /// The central isometry -1 = eps_Omega.
    pub fn minus_one(d: u32) -> Self {
        MonomialIsometry::eps(BitWord::omega(d))
    }

    /// Permutation part only (no signs).
    pub fn permutation(d: u32, map: AffineMapF2) -> Self {
        MonomialIsometry { d, sign: BitWord::empty(d), map }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn sign_word(&self) -> &BitWord {
        &self.sign
    }

    pub fn map(&self) -> &AffineMapF2 {
        &self.map
    }

    pub fn apply(&self, x: &DyadicVector) -> DyadicVector {
        assert_eq!(x.ambient().d(), self.d);
        let mut out = DyadicVector::zero(x.ambient());
        for (i, c) in x.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = self.map.apply(i as u32);
            let v = if self.sign.get(i as u32) { -c } else { c.clone() };
            out.set_coord(j as usize, v);
        }
        out
    }

    /// Image of a word under the point permutation.
    pub fn apply_word(&self, w: &BitWord) -> BitWord {
        let inv = self.map.inverse();
        w.preimage(|p| inv.apply(p))
    }

    /// Right-action composition: (x)(self.then(h)) = ((x)self)h.
    pub fn then(&self, h: &MonomialIsometry) -> MonomialIsometry {
        assert_eq!(self.d, h.d);
        // Sign: i contributes sign_self(i) * sign_h(i * map_self).
        let pulled = h.sign.preimage(|p| self.map.apply(p));
        MonomialIsometry {
            d: self.d,
            sign: self.sign.xor(&pulled),
            map: self.map.compose(&h.map),
        }
    }

    pub fn inverse(&self) -> MonomialIsometry {
        let inv = self.map.inverse();
        let sign = self.sign.preimage(|p| inv.apply(p));
        MonomialIsometry { d: self.d, sign, map: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.sign.is_empty() && self.map.is_identity()
    }

    pub fn is_minus_one(&self) -> bool {
        self.sign == BitWord::omega(self.d) && self.map.is_identity()
    }

    /// Order-2 element (not the identity).
    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.then(self).is_identity()
    }

    /// Order-4 element with square -1.
    pub fn is_fourvolution(&self) -> bool {
        self.then(self).is_minus_one()
    }

    pub fn commutes_with(&self, other: &MonomialIsometry) -> bool {
        self.then(other) == other.then(self)
    }

    /// Group commutator g^-1 h^-1 g h.
    pub fn commutator(&self, other: &MonomialIsometry) -> MonomialIsometry {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    /// Membership in the Bolt-Room-Wall group: the sign word must lie in
    /// RM(2,d) (the affine part always qualifies).
    pub fn in_brw(&self, family: &RmFamily) -> bool {
        family.contains(2, &self.sign)
    }

    /// Lower element: inside the extraspecial normal subgroup, i.e. the
    /// linear part is trivial and the sign word lies in RM(1,d).
    pub fn is_lower(&self, family: &RmFamily) -> bool {
        self.map.linear.is_identity() && family.contains(1, &self.sign)
    }

    /// Exact trace on the 2^d-dimensional ambient module.
    pub fn trace(&self) -> i64 {
        let mut t = 0i64;
        for p in 0..(1u32 << self.d) {
            if self.map.apply(p) == p {
                t += if self.sign.get(p) { -1 } else { 1 };
            }
        }
        t
    }

    /// Integer matrix of the action on a lattice basis (rows = coordinates
    /// of basis images); errors if the lattice is not invariant.
    pub fn matrix_on(&self, l: &Lattice) -> Result<IntMatrix> {
        let n = l.rank();
        let mut m = IntMatrix::zero(n, n);
        for (i, b) in l.basis().iter().enumerate() {
            let coords = l.coordinates_of(&self.apply(b)).ok_or(Error::NotInvariant)?;
            for (j, c) in coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    pub fn to_json(&self) -> IsometryJson {
        IsometryJson {
            sign: self.sign.to_hex(),
            linear: self.map.linear.rows.clone(),
            translate: self.map.shift,
        }
    }
}

/// Serialized form: {"sign": hexword, "linear": row bitmasks, "translate": int}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IsometryJson {
    pub sign: String,
    pub linear: Vec<u32>,
    pub translate: u32,
}

/// A positive-trace diagonal involution t = eps_Z built from a short
/// defect-k codeword Z with its cubi core.
#[derive(Clone, Debug)]
pub struct InvolutionSpec {
    pub d: u32,
    pub k: u32,
    pub word: BitWord,
    pub core: AffineSubspace,
    pub t: MonomialIsometry,
}

impl InvolutionSpec {
    /// The standard involution from the canonical cubi word.
    pub fn standard(d: u32, k: u32) -> Result<InvolutionSpec> {
        let cubi = cubi_codeword(d, k)?;
        let t = MonomialIsometry::eps(cubi.word.clone());
        let spec = InvolutionSpec { d, k, word: cubi.word, core: cubi.core, t };
        debug_assert!(spec.t.is_involution());
        debug_assert_eq!(spec.trace(), (1i64 << (d - k)));
        Ok(spec)
    }

    /// Trace 2^d - 2|Z| = 2^(d-k) for a short defect-k word.
    pub fn trace(&self) -> i64 {
        (1i64 << self.d) - 2 * i64::from(self.word.weight())
    }
}

/// A lower fourvolution f = eps_H tau_c for a hyperplane H containing no
/// translate of {0,c}, commuting with the involution it is built for.
#[derive(Clone, Debug)]
pub struct FourvolutionSpec {
    pub d: u32,
    pub hyperplane: BitWord,
    pub c: u32,
    pub f: MonomialIsometry,
}

impl FourvolutionSpec {
    pub fn new(d: u32, hyperplane: BitWord, c: u32) -> Result<FourvolutionSpec> {
        if c == 0 || c >= (1 << d) {
            return Err(Error::Parameter("translation must be a nonzero point".into()));
        }
        // Transverse: translation by c must move H to its complement.
        if hyperplane.translate(c) != hyperplane.complement() {
            return Err(Error::Parameter("hyperplane is not transverse to the translation".into()));
        }
        let f = MonomialIsometry::eps(hyperplane.clone())
            .then(&MonomialIsometry::tau(d, c));
        if !f.is_fourvolution() {
            return Err(Error::NotFourvolution);
        }
        Ok(FourvolutionSpec { d, hyperplane, c, f })
    }

    /// The standard choice for a defect-k involution with d - 2k >= 1:
    /// c = e_d (in the core by construction) and H = {x : x_d = 0}.
    pub fn standard(d: u32, k: u32) -> Result<FourvolutionSpec> {
        if d < 2 * k + 1 {
            return Err(Error::Parameter(format!(
                "lower fourvolution needs a nonzero core translation (d-2k >= 1), got d={d}, k={k}"
            )));
        }
        let c = 1u32 << (d - 1);
        let mut h = BitWord::empty(d);
        for p in 0..(1u32 << d) {
            if (p >> (d - 1)) & 1 == 0 {
                h.set(p, true);
            }
        }
        FourvolutionSpec::new(d, h, c)
    }

    pub fn xi(&self) -> &MonomialIsometry {
        &self.f
    }
}

/// The standard commuting pair (t, f): t = eps_Z for the canonical cubi
/// word and f the standard lower fourvolution on a core translation.
pub fn standard_pair(d: u32, k: u32) -> Result<(InvolutionSpec, FourvolutionSpec)> {
    let t = InvolutionSpec::standard(d, k)?;
    let f = FourvolutionSpec::standard(d, k)?;
    debug_assert!(t.core.contains(f.c));
    if !t.t.commutes_with(&f.f) {
        return Err(Error::NotCommuting);
    }
    Ok((t, f))
}

/// F_2 rank of a list of bit rows of the given width.
pub fn f2_rank(rows: Vec<Vec<u64>>, width: usize) -> usize {
    let limbs = width.div_ceil(64);
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut rank = 0;
    for mut row in rows {
        row.resize(limbs, 0);
        loop {
            let Some(pivot) = leading_bit(&row) else { break };
            match basis.iter().find(|b| leading_bit(b) == Some(pivot)) {
                Some(b) => {
                    let b = b.clone();
                    for (x, y) in row.iter_mut().zip(&b) {
                        *x ^= y;
                    }
                }
                None => {
                    basis.push(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn leading_bit(row: &[u64]) -> Option<usize> {
    for (i, &l) in row.iter().enumerate() {
        if l != 0 {
            return Some(i * 64 + l.trailing_zeros() as usize);
        }
    }
    None
}

/// Jordan number of an involution acting on a lattice: the number of
/// degree-2 Jordan blocks on L/2L, i.e. the F_2 rank of (T - I) mod 2.
pub fn jordan_number(l: &Lattice, t: &MonomialIsometry) -> Result<usize> {
    if !t.then(t).is_identity() {
        return Err(Error::NotInvolution);
    }
    let m = t.matrix_on(l)?;
    let n = l.rank();
    let limbs = n.div_ceil(64);
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![0u64; limbs];
        for j in 0..n {
            let mut v = m.at(i, j).clone();
            if i == j {
                v -= BigInt::one();
            }
            if v.bit(0) {
                row[j / 64] |= 1 << (j % 64);
            }
        }
        rows.push(row);
    }
    Ok(f2_rank(rows, n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::AmbientSpace;

    #[test]
    fn composition_order_is_right_action() {
        let d = 3;
        let amb = AmbientSpace::new(d);
        let g = MonomialIsometry::eps(BitWord::from_points(d, &[1, 4, 6]));
        let h = MonomialIsometry::tau(d, 5);
        let gh = g.then(&h);
        for i in 0..8 {
            let x = DyadicVector::basis(amb, i);
            assert_eq!(h.apply(&g.apply(&x)), gh.apply(&x));
        }
    }

    #[test]
    fn eps_tau_basics() {
        let d = 3;
        let amb = AmbientSpace::new(d);
        let x = DyadicVector::basis(amb, 2);
        // Identity and -1.
        assert_eq!(MonomialIsometry::identity(d).apply(&x), x);
        let m = MonomialIsometry::minus_one(d);
        assert_eq!(m.apply(&m.apply(&x)), x);
        assert_eq!(m.trace(), -8);
        // tau_c has trace 0 for c != 0.
        assert_eq!(MonomialIsometry::tau(d, 3).trace(), 0);
        // (v_i) eps_H tau_c = +- v_{i+c} with sign -1 iff i in H.
        let f = FourvolutionSpec::standard(d, 1).unwrap();
        for i in 0..8u32 {
            let y = f.f.apply(&DyadicVector::basis(amb, i));
            let expect_idx = (i ^ f.c) as usize;
            let coord = y.coord(expect_idx);
            assert!(!coord.is_zero());
            assert_eq!(coord.is_negative(), f.hyperplane.get(i));
        }
    }

    #[test]
    fn inverse_and_commutator() {
        let d = 4;
        let g = MonomialIsometry::eps(BitWord::from_points(d, &[3, 7, 9]))
            .then(&MonomialIsometry::tau(d, 11));
        assert!(g.then(&g.inverse()).is_identity());
        let h = MonomialIsometry::tau(d, 6);
        let c = g.commutator(&h);
        assert_eq!(g.then(&h).then(&c.inverse()), h.then(&g));
    }

    #[test]
    fn standard_pair_identities() {
        for (d, k) in [(4u32, 1u32), (5, 1), (5, 2), (6, 2), (7, 2), (7, 3)] {
            let (t, f) = standard_pair(d, k).unwrap();
            assert!(t.t.is_involution());
            assert!(f.f.is_fourvolution());
            assert!(t.t.commutes_with(&f.f));
            assert_eq!(t.trace(), 1i64 << (d - k));
            assert_eq!(t.core.dim(), d - 2 * k);
            // Defect of the word is k.
            let fam = RmFamily::new(d);
            assert_eq!(fam.defect(&t.word).unwrap(), k);
        }
        // 2k = d leaves no core translation for the fourvolution.
        assert!(standard_pair(4, 2).is_err());
        assert!(FourvolutionSpec::standard(6, 3).is_err());
    }

    #[test]
    fn trace_of_rm2_diagonals_is_zero_or_power_of_two() {
        for d in 2..=5u32 {
            let rm2 = crate::codes::Code::reed_muller(2, d);
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(d.into());
            for _ in 0..40 {
                let w = rm2.random_word(&mut rng);
                let tr = MonomialIsometry::eps(w).trace();
                assert!(tr == 0 || tr.unsigned_abs().is_power_of_two(), "trace {tr} at d={d}");
            }
        }
    }

    #[test]
    fn norm_preserved_exactly() {
        let d = 4;
        let amb = AmbientSpace::new(d);
        let g = MonomialIsometry::eps(BitWord::from_points(d, &[0, 2, 5, 11]))
            .then(&MonomialIsometry::tau(d, 9));
        let mut x = DyadicVector::zero(amb);
        x.set_coord(0, crate::dyadic::Dyadic::new(BigInt::from(3), 1));
        x.set_coord(7, crate::dyadic::Dyadic::new(BigInt::from(-5), 2));
        x.set_coord(12, crate::dyadic::Dyadic::from_int(2));
        assert_eq!(g.apply(&x).norm(), x.norm());
    }

    #[test]
    fn f2_rank_small() {
        assert_eq!(f2_rank(vec![vec![0b110], vec![0b011], vec![0b101]], 3), 2);
        assert_eq!(f2_rank(vec![vec![0]], 3), 0);
    }
}
