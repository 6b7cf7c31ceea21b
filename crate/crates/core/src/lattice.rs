//! Lattices inside the dyadic span of an ambient standard basis, with a
//! canonical Hermite-form basis as the equality key.
//!
//! A lattice is stored by the HNF of its 2^level-scaled integer basis, so
//! two generator sets of the same lattice always canonicalize to identical
//! bases.  The Gram form is inherited from the ambient space.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::matrix::{solve_rational, HnfBuilder, IntMatrix};
use crate::vector::{AmbientSpace, DyadicVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone)]
pub struct Lattice {
    ambient: AmbientSpace,
    basis: Vec<DyadicVector>,
    /// Common denominator exponent: 2^level * basis is integral.
    level: u32,
    /// 2^level-scaled basis rows in canonical HNF, with pivot columns.
    int_rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for Lattice {}

impl std::fmt::Debug for Lattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Lattice(d={}, rank={}, level={})", self.ambient.d(), self.rank(), self.level)
    }
}

impl Lattice {
    /// Canonical lattice spanned by the given vectors (the empty set spans
    /// the zero lattice).  Errors on mixed ambient spaces.
    pub fn span(ambient: AmbientSpace, generators: &[DyadicVector]) -> Result<Lattice> {
        for g in generators {
            if g.ambient() != ambient {
                return Err(Error::MixedAmbient);
            }
        }
        let level = generators.iter().filter_map(DyadicVector::level).max().unwrap_or(0);
        let mut b = HnfBuilder::new(ambient.dim());
        for g in generators {
            b.insert(g.scaled_row(level));
        }
        Ok(Lattice::from_hnf(ambient, b.finish(), level))
    }

    fn from_hnf(ambient: AmbientSpace, h: IntMatrix, level: u32) -> Lattice {
        let mut int_rows: Vec<Vec<BigInt>> = (0..h.rows()).map(|i| h.row_vec(i)).collect();
        // Normalize the level: if every entry is even, the true common
        // denominator is smaller.
        let mut level = level;
        while level > 0
            && int_rows.iter().flatten().all(|x| x.is_even())
        {
            for x in int_rows.iter_mut().flatten() {
                *x /= 2;
            }
            level -= 1;
        }
        let pivots = int_rows
            .iter()
            .map(|r| r.iter().position(|x| !x.is_zero()).unwrap())
            .collect();
        let basis = int_rows
            .iter()
            .map(|r| DyadicVector::from_scaled_row(ambient, r, level))
            .collect();
        Lattice { ambient, basis, level, int_rows, pivots }
    }

    pub fn ambient(&self) -> AmbientSpace {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[DyadicVector] {
        &self.basis
    }

    /// Max denominator exponent over the canonical basis.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Membership test against the canonical basis.
    pub fn contains(&self, x: &DyadicVector) -> bool {
        self.coordinates_of(x).is_some()
    }

    /// Integer coordinates of `x` in the canonical basis, if `x` is in the
    /// lattice.
    pub fn coordinates_of(&self, x: &DyadicVector) -> Option<Vec<BigInt>> {
        if x.ambient() != self.ambient {
            return None;
        }
        if x.level().is_some_and(|l| l > self.level) {
            return None;
        }
        let mut row = x.scaled_row(self.level);
        let mut coords = vec![BigInt::zero(); self.rank()];
        loop {
            let Some(j) = row.iter().position(|v| !v.is_zero()) else {
                return Some(coords);
            };
            let idx = self.pivots.binary_search(&j).ok()?;
            let h = &self.int_rows[idx][j];
            let (q, r) = row[j].div_rem(h);
            if !r.is_zero() {
                return None;
            }
            for (x, y) in row.iter_mut().zip(self.int_rows[idx].iter()) {
                *x -= &q * y;
            }
            coords[idx] = q;
        }
    }

    /// The vector with the given integer coordinates in the canonical basis.
    pub fn from_coordinates(&self, coords: &[BigInt]) -> DyadicVector {
        assert_eq!(coords.len(), self.rank());
        let mut v = DyadicVector::zero(self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                v = v.add(&b.scale(&Dyadic::from_int(c.clone())));
            }
        }
        v
    }

    /// Exact Gram matrix of the canonical basis.
    pub fn gram(&self) -> Vec<Vec<Dyadic>> {
        let n = self.rank();
        let mut g = vec![vec![Dyadic::zero(); n]; n];
        for i in 0..n {
            for j in 0..=i {
                let v = self.basis[i].inner(&self.basis[j]);
                g[i][j] = v.clone();
                g[j][i] = v;
            }
        }
        g
    }

    /// Gram matrix scaled to integers: returns (2^s G, s) with minimal s.
    pub fn gram_scaled(&self) -> (IntMatrix, u32) {
        let g = self.gram();
        let s = g.iter().flatten().filter_map(Dyadic::level).max().unwrap_or(0);
        let n = self.rank();
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, g[i][j].scaled_int(s));
            }
        }
        (m, s)
    }

    /// Exact determinant of the Gram matrix.
    pub fn det(&self) -> Dyadic {
        let (m, s) = self.gram_scaled();
        let d = m.det();
        Dyadic::new(d, s * self.rank() as u32)
    }

    pub fn is_integral(&self) -> bool {
        let (_, s) = self.gram_scaled();
        s == 0
    }

    /// Even lattice: integral with all basis norms even.
    pub fn is_even(&self) -> bool {
        if !self.is_integral() {
            return false;
        }
        self.basis.iter().all(|b| b.norm().to_int().is_even())
    }

    /// A basis vector of odd norm, if the lattice is odd.
    pub fn odd_norm_vector(&self) -> Option<&DyadicVector> {
        if !self.is_integral() {
            return None;
        }
        self.basis.iter().find(|b| b.norm().to_int().is_odd())
    }

    /// Lattice scaled by 2^k.
    pub fn scale_pow2(&self, k: i64) -> Lattice {
        let gens: Vec<DyadicVector> = self.basis.iter().map(|b| b.mul_pow2(k)).collect();
        Lattice::span(self.ambient, &gens).unwrap()
    }

    pub fn sum(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient != other.ambient {
            return Err(Error::MixedAmbient);
        }
        let gens: Vec<DyadicVector> =
            self.basis.iter().chain(&other.basis).cloned().collect();
        Lattice::span(self.ambient, &gens)
    }

    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient != other.ambient {
            return Err(Error::MixedAmbient);
        }
        if self.is_zero() || other.is_zero() {
            return Lattice::span(self.ambient, &[]);
        }
        let level = self.level.max(other.level);
        let n = self.ambient.dim();
        let r1 = self.rank();
        let r2 = other.rank();
        // Rows (u | v) with u*A - v*B = 0 give intersection vectors u*A.
        let mut stacked = IntMatrix::zero(r1 + r2, n);
        for i in 0..r1 {
            for (j, x) in self.basis[i].scaled_row(level).into_iter().enumerate() {
                stacked.set(i, j, x);
            }
        }
        for i in 0..r2 {
            for (j, x) in other.basis[i].scaled_row(level).into_iter().enumerate() {
                stacked.set(r1 + i, j, -x);
            }
        }
        let k = stacked.left_kernel();
        let mut gens = Vec::with_capacity(k.rows());
        for i in 0..k.rows() {
            let mut v = DyadicVector::zero(self.ambient);
            for (j, b) in self.basis.iter().enumerate() {
                let c = k.at(i, j);
                if !c.is_zero() {
                    v = v.add(&b.scale(&Dyadic::from_int(c.clone())));
                }
            }
            gens.push(v);
        }
        Lattice::span(self.ambient, &gens)
    }

    /// Index |L : sub| for a finite-index sublattice of equal rank.
    pub fn index_of(&self, sub: &Lattice) -> Result<BigInt> {
        if sub.rank() != self.rank() {
            return Err(Error::RankMismatch(format!(
                "index needs equal ranks, got {} and {}",
                sub.rank(),
                self.rank()
            )));
        }
        let n = self.rank();
        let mut m = IntMatrix::zero(n, n);
        for (i, b) in sub.basis.iter().enumerate() {
            let coords = self
                .coordinates_of(b)
                .ok_or_else(|| Error::RankMismatch("not a sublattice".into()))?;
            for (j, c) in coords.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m.det().abs())
    }

    /// Dual lattice; errors if a dual coordinate is not dyadic.
    pub fn dual(&self) -> Result<Lattice> {
        let n = self.rank();
        if n == 0 {
            return Lattice::span(self.ambient, &[]);
        }
        let g = self.gram();
        let ga: Vec<Vec<BigRational>> =
            (0..n).map(|i| (0..n).map(|j| dyadic_to_rational(&g[i][j])).collect()).collect();
        let rhs: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                self.basis[i]
                    .coords()
                    .iter()
                    .map(dyadic_to_rational)
                    .collect()
            })
            .collect();
        let x = solve_rational(&ga, &rhs).ok_or(Error::RankMismatch("degenerate Gram".into()))?;
        let mut gens = Vec::with_capacity(n);
        for row in x {
            let coords: Result<Vec<Dyadic>> = row.iter().map(rational_to_dyadic).collect();
            gens.push(DyadicVector::new(self.ambient, coords?));
        }
        Lattice::span(self.ambient, &gens)
    }

    /// Invariant factors (> 1) of dual(L)/L, via the Smith normal form of
    /// the Gram matrix.  Requires an integral lattice.
    pub fn discriminant_group(&self) -> Result<Vec<BigInt>> {
        let (g, s) = self.gram_scaled();
        if s != 0 {
            return Err(Error::NonIntegral);
        }
        Ok(g.snf().into_iter().filter(|d| !d.is_one()).collect())
    }

    /// Is `x` in the Z[1/2]-span of this lattice?
    pub fn spans_dyadically(&self, x: &DyadicVector) -> bool {
        // 2^t x lands in the lattice for t large enough exactly when x is
        // in the dyadic span; t = level of the coordinate solution, bounded
        // by level + index considerations.  Solve over Q and check dyadic.
        self.rational_coordinates(x)
            .is_some_and(|cs| cs.iter().all(|c| rational_to_dyadic(c).is_ok()))
    }

    fn rational_coordinates(&self, x: &DyadicVector) -> Option<Vec<BigRational>> {
        if x.ambient() != self.ambient {
            return None;
        }
        // Back-substitute against the echelon rows over Q.
        let mut row: Vec<BigRational> =
            x.coords().iter().map(dyadic_to_rational).collect();
        let scale = BigRational::from(BigInt::from(2)).pow(self.level as i32);
        for r in row.iter_mut() {
            *r = &*r * &scale;
        }
        let mut coords = vec![BigRational::zero(); self.rank()];
        loop {
            let Some(j) = row.iter().position(|v| !v.is_zero()) else {
                return Some(coords);
            };
            let idx = self.pivots.binary_search(&j).ok()?;
            let q = &row[j] / BigRational::from(self.int_rows[idx][j].clone());
            for (x, y) in row.iter_mut().zip(self.int_rows[idx].iter()) {
                let v = &q * BigRational::from(y.clone());
                *x = &*x - &v;
            }
            coords[idx] = q;
        }
    }

    /// The M-level-q sublattice 2^(-q) M ∩ L.  Requires L inside the
    /// Z[1/2]-span of M.
    pub fn level_sublattice(&self, m: &Lattice, q: u32) -> Result<Lattice> {
        for b in &self.basis {
            if !m.spans_dyadically(b) {
                return Err(Error::Membership("Z[1/2] span of M".into()));
            }
        }
        self.intersect(&m.scale_pow2(-(q as i64)))
    }

    /// Orthogonal sum inside the next ambient space (requires even d so the
    /// basis-norm scale is unchanged).
    pub fn orthogonal_sum(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient != other.ambient {
            return Err(Error::MixedAmbient);
        }
        let d = self.ambient.d();
        if d % 2 != 0 {
            return Err(Error::Parameter(
                "orthogonal sum embedding needs even d (same norm scale)".into(),
            ));
        }
        let big = AmbientSpace::new(d + 1);
        let half = self.ambient.dim();
        let mut gens = Vec::new();
        for b in &self.basis {
            let mut v = DyadicVector::zero(big);
            for (i, c) in b.coords().iter().enumerate() {
                v.set_coord(i, c.clone());
            }
            gens.push(v);
        }
        for b in &other.basis {
            let mut v = DyadicVector::zero(big);
            for (i, c) in b.coords().iter().enumerate() {
                v.set_coord(half + i, c.clone());
            }
            gens.push(v);
        }
        Lattice::span(big, &gens)
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            d: self.ambient.d(),
            scale_log2: self.ambient.scale_log2(),
            basis: self
                .basis
                .iter()
                .map(|b| b.coords().iter().map(|c| c.to_string()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &LatticeJson) -> Result<Lattice> {
        let ambient = AmbientSpace::new(j.d);
        let mut gens = Vec::new();
        for row in &j.basis {
            if row.len() != ambient.dim() {
                return Err(Error::Parameter("basis row length != 2^d".into()));
            }
            let coords: Result<Vec<Dyadic>> = row.iter().map(|s| parse_dyadic(s)).collect();
            gens.push(DyadicVector::new(ambient, coords?));
        }
        Lattice::span(ambient, &gens)
    }

    /// Gram matrix export: integer entries of 2^s G with the exponent s.
    pub fn gram_json(&self) -> GramJson {
        let (g, s) = self.gram_scaled();
        GramJson {
            rank: self.rank(),
            scale_log2: s,
            gram: (0..g.rows())
                .map(|i| g.row(i).iter().map(BigInt::to_string).collect())
                .collect(),
        }
    }
}

/// JSON form of a lattice: dyadic entries as "m/2^e" strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeJson {
    pub d: u32,
    pub scale_log2: u32,
    pub basis: Vec<Vec<String>>,
}

/// JSON form of a Gram matrix: integer entries of 2^scale_log2 * G.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GramJson {
    pub rank: usize,
    pub scale_log2: u32,
    pub gram: Vec<Vec<String>>,
}

pub fn dyadic_to_rational(d: &Dyadic) -> BigRational {
    BigRational::new(d.mantissa().clone(), BigInt::one() << (d.exp() as usize))
}

pub fn rational_to_dyadic(r: &BigRational) -> Result<Dyadic> {
    let den = r.denom();
    if den.is_one() {
        return Ok(Dyadic::from_int(r.numer().clone()));
    }
    let bits = den.bits();
    if (den & (den - 1u8)) != BigInt::zero() {
        return Err(Error::NonDyadic);
    }
    Ok(Dyadic::new(r.numer().clone(), (bits - 1) as u32))
}

pub fn parse_dyadic(s: &str) -> Result<Dyadic> {
    let (m, e) = s
        .split_once("/2^")
        .ok_or_else(|| Error::Parameter(format!("expected m/2^e, got {s:?}")))?;
    let mantissa: BigInt =
        m.parse().map_err(|_| Error::Parameter(format!("bad mantissa in {s:?}")))?;
    let exp: u32 = e.parse().map_err(|_| Error::Parameter(format!("bad exponent in {s:?}")))?;
    Ok(Dyadic::new(mantissa, exp))
}
