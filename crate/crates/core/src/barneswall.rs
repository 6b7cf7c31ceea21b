//! Barnes-Wall lattices: construction from the standard generating set,
//! frames and minimal vectors, twists, eigenlattices and projections for
//! involutions, commutator sublattices, and 2/4-generation checks.
//!
//! BW_d is the Z-span of { 2^-m v_A : A an affine 2m-space }.  The span is
//! computed by closing a seed set (one subspace per dimension class, plus
//! the frame vectors) under generators of AGL(d,2), which acts transitively
//! on the affine 2m-spaces, so the result equals the span of the full
//! generating set without materializing it.

use crate::codes::{affine_subspaces, AffineSubspace, Code, RmFamily};
use crate::error::{Error, Result};
use crate::isometry::{AffineMapF2, FourvolutionSpec, LinearMapF2, MonomialIsometry};
use crate::lattice::Lattice;
use crate::matrix::HnfBuilder;
use crate::vector::{AmbientSpace, DyadicVector};

pub const MIN_BW_D: u32 = 2;
pub const MAX_BW_D: u32 = 9;

/// A Barnes-Wall lattice with its ambient labeling by Omega = F_2^d.
#[derive(Clone, Debug)]
pub struct BarnesWall {
    d: u32,
    lattice: Lattice,
}

impl BarnesWall {
    pub fn build(d: u32) -> Result<BarnesWall> {
        if !(MIN_BW_D..=MAX_BW_D).contains(&d) {
            return Err(Error::SizeRange(d, MIN_BW_D, MAX_BW_D));
        }
        let ambient = AmbientSpace::new(d);
        let mut seeds: Vec<DyadicVector> =
            (0..ambient.dim() as u32).map(|i| DyadicVector::basis(ambient, i)).collect();
        for m in 1..=d / 2 {
            let dirs: Vec<u32> = (0..2 * m).map(|i| 1 << i).collect();
            let a = AffineSubspace::new(d, 0, &dirs);
            seeds.push(DyadicVector::from_word(ambient, &a.to_word(), m));
        }
        let lattice = invariant_closure(ambient, &seeds, &agl_generators(d))?;
        Ok(BarnesWall { d, lattice })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn ambient(&self) -> AmbientSpace {
        self.lattice.ambient()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// The standard frame: the 2^(d+1) vectors +-v_i.
    pub fn frame(&self) -> Vec<DyadicVector> {
        let amb = self.ambient();
        (0..amb.dim() as u32)
            .flat_map(|i| {
                let v = DyadicVector::basis(amb, i);
                [v.clone(), v.neg()]
            })
            .collect()
    }
}

/// Generators of AGL(d,2) as monomial isometries: the basis translations
/// plus a transposition, a cycle, and one transvection for GL(d,2).
pub fn agl_generators(d: u32) -> Vec<MonomialIsometry> {
    let mut gens: Vec<MonomialIsometry> =
        (0..d).map(|i| MonomialIsometry::tau(d, 1 << i)).collect();
    let mut linear = Vec::new();
    if d >= 2 {
        // Transposition (e_0 e_1).
        let mut rows: Vec<u32> = (0..d).map(|i| 1 << i).collect();
        rows.swap(0, 1);
        linear.push(rows);
        // Cycle e_i -> e_{i+1}.
        linear.push((0..d).map(|i| 1 << ((i + 1) % d)).collect());
        // Transvection e_0 -> e_0 + e_1.
        let mut rows: Vec<u32> = (0..d).map(|i| 1 << i).collect();
        rows[0] = 0b11;
        linear.push(rows);
    }
    for rows in linear {
        let map = AffineMapF2 { linear: LinearMapF2::new(d, rows).unwrap(), shift: 0 };
        gens.push(MonomialIsometry::permutation(d, map));
    }
    gens
}

/// Generators of the lower group R_d: sign maps over a basis of RM(1,d)
/// and the basis translations.
pub fn lower_group_generators(d: u32) -> Vec<MonomialIsometry> {
    let rm1 = Code::reed_muller(1, d);
    let mut gens: Vec<MonomialIsometry> =
        rm1.basis().iter().map(|w| MonomialIsometry::eps(w.clone())).collect();
    gens.extend((0..d).map(|i| MonomialIsometry::tau(d, 1 << i)));
    gens
}

/// Smallest lattice containing the seeds and invariant under every listed
/// isometry (all of which must preserve levels, as monomial maps do).
pub fn invariant_closure(
    ambient: AmbientSpace,
    seeds: &[DyadicVector],
    isometries: &[MonomialIsometry],
) -> Result<Lattice> {
    let level = seeds.iter().filter_map(DyadicVector::level).max().unwrap_or(0);
    let mut builder = HnfBuilder::new(ambient.dim());
    for s in seeds {
        if s.ambient() != ambient {
            return Err(Error::MixedAmbient);
        }
        builder.insert(s.scaled_row(level));
    }
    loop {
        let snapshot: Vec<Vec<num_bigint::BigInt>> = builder.rows().to_vec();
        let mut changed = false;
        for g in isometries {
            for row in &snapshot {
                let v = DyadicVector::from_scaled_row(ambient, row, level);
                changed |= builder.insert(g.apply(&v).scaled_row(level));
            }
        }
        if !changed {
            break;
        }
    }
    let rows = builder.finish();
    let gens: Vec<DyadicVector> =
        (0..rows.rows()).map(|i| DyadicVector::from_scaled_row(ambient, rows.row(i), level)).collect();
    Lattice::span(ambient, &gens)
}

/// The set { 2^-m v_A eps_S : A an affine 2m-space, S in RM(2,d) },
/// materialized with both signs.  Sign patterns on A are the restrictions
/// of RM(2,d) to A, which are exactly RM(2, 2m) in an affine chart.
pub fn standard_minimal_vectors(d: u32) -> Result<Vec<DyadicVector>> {
    if !(MIN_BW_D..=5).contains(&d) {
        return Err(Error::SizeRange(d, MIN_BW_D, 5));
    }
    signed_word_vectors(d, |m| 2 * m)
}

/// The set K = union over m of { 2^-m v_A eps_S : A an affine (2m+1)-space,
/// S in RM(2,d) }: the minimal vectors of the first twist BW_d[1].
pub fn bw_twist_minvecs(d: u32) -> Result<Vec<DyadicVector>> {
    if !(MIN_BW_D..=4).contains(&d) {
        return Err(Error::SizeRange(d, MIN_BW_D, 4));
    }
    signed_word_vectors(d, |m| 2 * m + 1)
}

fn signed_word_vectors(d: u32, space_dim: impl Fn(u32) -> u32) -> Result<Vec<DyadicVector>> {
    let ambient = AmbientSpace::new(d);
    let mut out = Vec::new();
    let mut m = 0;
    while space_dim(m) <= d {
        let dim = space_dim(m);
        let patterns = Code::reed_muller(2, dim);
        for a in affine_subspaces(d, dim) {
            // Chart: point of A for each chart index q in 0..2^dim.
            let mut chart = Vec::with_capacity(1 << dim);
            let mut p = a.basepoint();
            chart.push(p);
            for q in 1u64..(1 << dim) {
                p ^= a.directions()[q.trailing_zeros() as usize];
                chart.push(p);
            }
            for u in patterns.words_iter() {
                let mut v = DyadicVector::zero(ambient);
                for (q, &pt) in chart.iter().enumerate() {
                    let c = crate::dyadic::Dyadic::inv_pow2(m);
                    v.set_coord(pt as usize, if u.get(q as u32) { -&c } else { c });
                }
                out.push(v);
            }
        }
        m += 1;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The p-th twist L[p] = L (f-1)^p for a fourvolution f preserving L.
pub fn twist(l: &Lattice, p: u32, f: &MonomialIsometry) -> Result<Lattice> {
    if !f.is_fourvolution() {
        return Err(Error::NotFourvolution);
    }
    let mut cur = l.clone();
    for _ in 0..p {
        for b in cur.basis() {
            if !cur.contains(&f.apply(b)) {
                return Err(Error::NotInvariant);
            }
        }
        let gens: Vec<DyadicVector> =
            cur.basis().iter().map(|b| f.apply(b).sub(b)).collect();
        cur = Lattice::span(l.ambient(), &gens)?;
    }
    Ok(cur)
}

/// Eigenlattices of an isometry with t^2 = 1 (identity allowed), as
/// saturated sublattices, plus their orthogonal sum Tel.
#[derive(Clone, Debug)]
pub struct EigenData {
    pub plus: Lattice,
    pub minus: Lattice,
    pub tel: Lattice,
}

pub fn eigenlattice(l: &Lattice, t: &MonomialIsometry) -> Result<EigenData> {
    if !t.then(t).is_identity() {
        return Err(Error::NotInvolution);
    }
    let m = t.matrix_on(l)?;
    let n = l.rank();
    let plus = eigen_kernel(l, &m, n, 1);
    let minus = eigen_kernel(l, &m, n, -1);
    let tel = plus.sum(&minus)?;
    Ok(EigenData { plus, minus, tel })
}

fn eigen_kernel(l: &Lattice, t_mat: &crate::matrix::IntMatrix, n: usize, eps: i32) -> Lattice {
    // Saturated kernel of (T - eps I), combined back into lattice vectors.
    let mut m = crate::matrix::IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut v = t_mat.at(i, j).clone();
            if i == j {
                v -= num_bigint::BigInt::from(eps);
            }
            m.set(i, j, v);
        }
    }
    let k = m.left_kernel();
    let gens: Vec<DyadicVector> =
        (0..k.rows()).map(|i| l.from_coordinates(&k.row_vec(i))).collect();
    Lattice::span(l.ambient(), &gens).unwrap()
}

/// Orthogonal projection P^eps(x) = x (1 +- t) / 2.
pub fn eigen_projection(x: &DyadicVector, t: &MonomialIsometry, plus: bool) -> DyadicVector {
    let tx = t.apply(x);
    let s = if plus { x.add(&tx) } else { x.sub(&tx) };
    s.mul_pow2(-1)
}

/// The projected lattice P^eps(L).
pub fn projected_lattice(l: &Lattice, t: &MonomialIsometry, plus: bool) -> Result<Lattice> {
    let gens: Vec<DyadicVector> =
        l.basis().iter().map(|b| eigen_projection(b, t, plus)).collect();
    Lattice::span(l.ambient(), &gens)
}

/// Commutator sublattice [L, g]: the span of { x (g-1) : x in L }.
pub fn commutator_sublattice(l: &Lattice, g: &MonomialIsometry) -> Result<Lattice> {
    for b in l.basis() {
        if !l.contains(&g.apply(b)) {
            return Err(Error::NotInvariant);
        }
    }
    let gens: Vec<DyadicVector> = l.basis().iter().map(|b| g.apply(b).sub(b)).collect();
    Lattice::span(l.ambient(), &gens)
}

/// [L, R] for the whole lower group: the span of all x(g-1) over the
/// generators, closed under the group action.
pub fn lower_commutator_lattice(l: &Lattice) -> Result<Lattice> {
    let d = l.ambient().d();
    let gens = lower_group_generators(d);
    let mut seeds = Vec::new();
    for g in &gens {
        for b in l.basis() {
            if !l.contains(&g.apply(b)) {
                return Err(Error::NotInvariant);
            }
            seeds.push(g.apply(b).sub(b));
        }
    }
    invariant_closure(l.ambient(), &seeds, &gens)
}

/// 2/4-generation check: for involutions u, v generating a dihedral group
/// of order 8 whose central involution is -1, test L^+(u) + L^+(v) = L.
pub fn check_two_four(l: &Lattice, u: &MonomialIsometry, v: &MonomialIsometry) -> Result<bool> {
    if !u.is_involution() || !v.is_involution() {
        return Err(Error::GroupShape);
    }
    let uv = u.then(v);
    if !uv.then(&uv).is_minus_one() {
        return Err(Error::GroupShape);
    }
    let eu = eigenlattice(l, u)?;
    let ev = eigenlattice(l, v)?;
    Ok(eu.plus.sum(&ev.plus)? == *l)
}

/// A pair of lower involutions u, v with uv = f, searched among sign maps
/// of hyperplanes; the constructor verifies the dihedral-of-order-8 shape.
pub fn lower_dihedral_pair(f: &FourvolutionSpec) -> Result<(MonomialIsometry, MonomialIsometry)> {
    let d = f.d;
    let family = RmFamily::new(d);
    for h in affine_subspaces(d, d - 1) {
        let word = h.to_word();
        if word == f.hyperplane || word == f.hyperplane.complement() {
            continue;
        }
        let u = MonomialIsometry::eps(word);
        let v = u.then(&f.f);
        if !u.is_involution() || !v.is_involution() {
            continue;
        }
        let uv = u.then(&v);
        if !uv.then(&uv).is_minus_one() {
            continue;
        }
        if !u.is_lower(&family) || !v.is_lower(&family) {
            continue;
        }
        return Ok((u, v));
    }
    Err(Error::SearchFailure("no lower dihedral pair for this fourvolution".into()))
}

/// A witness that top closure fails above level 1: two affine 4-spaces
/// meeting in a point give x in BW_d with top(x) not in BW_d (needs d >= 8).
pub struct TopClosureWitness {
    pub x: DyadicVector,
    pub top: DyadicVector,
    pub x_in_lattice: bool,
    pub top_in_lattice: bool,
}

pub fn top_closure_witness(bw: &BarnesWall) -> Result<TopClosureWitness> {
    let d = bw.d();
    if d < 8 {
        return Err(Error::Parameter("top-closure failure witness needs d >= 8".into()));
    }
    let a1 = AffineSubspace::new(d, 0, &[1, 2, 4, 8]);
    let a2 = AffineSubspace::new(d, 0, &[16, 32, 64, 128]);
    let amb = bw.ambient();
    let x = DyadicVector::from_word(amb, &a1.to_word(), 2)
        .add(&DyadicVector::from_word(amb, &a2.to_word(), 2));
    let top = x.top()?;
    Ok(TopClosureWitness {
        x_in_lattice: bw.lattice().contains(&x),
        top_in_lattice: bw.lattice().contains(&top),
        x,
        top,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::BitWord;
    use crate::dyadic::Dyadic;
    use num_bigint::BigInt;

    fn dy(m: i64, e: u32) -> Dyadic {
        Dyadic::new(BigInt::from(m), e)
    }

    #[test]
    fn bw2_basics() {
        let bw = BarnesWall::build(2).unwrap();
        assert_eq!(bw.lattice().rank(), 4);
        assert_eq!(bw.lattice().det(), dy(4, 0));
        assert!(bw.lattice().is_even());
        assert_eq!(bw.frame().len(), 8);
    }

    #[test]
    fn bw3_unimodular_even() {
        let bw = BarnesWall::build(3).unwrap();
        assert_eq!(bw.lattice().rank(), 8);
        assert_eq!(bw.lattice().det(), dy(1, 0));
        assert!(bw.lattice().is_even());
    }

    #[test]
    fn bw_range_errors() {
        assert!(BarnesWall::build(1).is_err());
        assert!(BarnesWall::build(10).is_err());
    }

    #[test]
    fn closure_matches_full_generating_set() {
        // For small d, span the full set { 2^-m v_A } directly and compare.
        for d in 2..=4u32 {
            let bw = BarnesWall::build(d).unwrap();
            let amb = bw.ambient();
            let mut gens = Vec::new();
            for m in 0..=d / 2 {
                for a in affine_subspaces(d, 2 * m) {
                    gens.push(DyadicVector::from_word(amb, &a.to_word(), m));
                }
            }
            let full = Lattice::span(amb, &gens).unwrap();
            assert_eq!(full, *bw.lattice(), "closure vs full generators at d={d}");
        }
    }

    #[test]
    fn minimal_vector_counts_small() {
        // Counts 24 (d=2) and 240 (d=3) of the standard minimal vectors.
        assert_eq!(standard_minimal_vectors(2).unwrap().len(), 24);
        assert_eq!(standard_minimal_vectors(3).unwrap().len(), 240);
        let bw = BarnesWall::build(3).unwrap();
        for v in standard_minimal_vectors(3).unwrap() {
            assert_eq!(v.norm(), dy(2, 0));
            assert!(bw.lattice().contains(&v));
        }
    }

    #[test]
    fn twist_examples() {
        let bw = BarnesWall::build(3).unwrap();
        let f = FourvolutionSpec::standard(3, 1).unwrap();
        // p = 0 is the identity.
        assert_eq!(twist(bw.lattice(), 0, &f.f).unwrap(), *bw.lattice());
        // L[2] = 2L since (f-1)^2 = -2f.
        let l2 = twist(bw.lattice(), 2, &f.f).unwrap();
        assert_eq!(l2, bw.lattice().scale_pow2(1));
    }

    #[test]
    fn twist_fourvolution_choice_independent() {
        for d in 2..=4u32 {
            let bw = BarnesWall::build(d).unwrap();
            // Two admissible (H, c) pairs.
            let top = 1u32 << (d - 1);
            let mut h1 = BitWord::empty(d);
            let mut h2 = BitWord::empty(d);
            for p in 0..(1u32 << d) {
                if p & top == 0 {
                    h1.set(p, true);
                }
                if p & 1 == 0 {
                    h2.set(p, true);
                }
            }
            let f1 = FourvolutionSpec::new(d, h1, top).unwrap();
            let f2 = FourvolutionSpec::new(d, h2, 1).unwrap();
            assert_ne!(f1.f, f2.f);
            assert_eq!(
                twist(bw.lattice(), 1, &f1.f).unwrap(),
                twist(bw.lattice(), 1, &f2.f).unwrap(),
                "twist independence at d={d}"
            );
        }
    }

    #[test]
    fn eigenlattice_identity_and_minus_one() {
        let bw = BarnesWall::build(3).unwrap();
        let id = MonomialIsometry::identity(3);
        let e = eigenlattice(bw.lattice(), &id).unwrap();
        assert_eq!(e.plus, *bw.lattice());
        assert!(e.minus.is_zero());
        let m = MonomialIsometry::minus_one(3);
        let e = eigenlattice(bw.lattice(), &m).unwrap();
        assert!(e.plus.is_zero());
        assert_eq!(e.minus, *bw.lattice());
    }

    #[test]
    fn commutator_examples() {
        let bw = BarnesWall::build(3).unwrap();
        let id = MonomialIsometry::identity(3);
        assert!(commutator_sublattice(bw.lattice(), &id).unwrap().is_zero());
        let m = MonomialIsometry::minus_one(3);
        assert_eq!(
            commutator_sublattice(bw.lattice(), &m).unwrap(),
            bw.lattice().scale_pow2(1)
        );
    }

    #[test]
    fn projection_identities() {
        let bw = BarnesWall::build(4).unwrap();
        let (t, _) = crate::isometry::standard_pair(4, 1).unwrap();
        let e = eigenlattice(bw.lattice(), &t.t).unwrap();
        for b in bw.lattice().basis() {
            let p = eigen_projection(b, &t.t, true);
            let q = eigen_projection(b, &t.t, false);
            assert_eq!(p.add(&q), *b);
            // 2 P(x) lands in the matching eigenlattice.
            assert!(e.plus.contains(&p.mul_pow2(1)));
            assert!(e.minus.contains(&q.mul_pow2(1)));
        }
    }
}
