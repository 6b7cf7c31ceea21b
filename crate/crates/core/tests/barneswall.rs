//! Integration checks for the Barnes-Wall constructions against both the
//! independent box oracle and the combinatorial minimal-vector sets.

mod common;

use bwc_core::barneswall::{
    bw_twist_minvecs, check_two_four, eigenlattice, lower_commutator_lattice, lower_dihedral_pair,
    standard_minimal_vectors, twist,
};
use bwc_core::enumerate::{enumerate_short, min_norm, theta_series, EnumerationOptions};
use bwc_core::isometry::{standard_pair, FourvolutionSpec, MonomialIsometry};
use bwc_core::vector::DyadicVector;
use common::{box_enumerate, bw, dy};
use num_bigint::BigInt;

#[test]
fn bw3_roots_match_box_oracle() {
    let bw3 = bw(3);
    let opts = EnumerationOptions::default();
    let sv = enumerate_short(bw3.lattice(), &dy(2, 0), &opts).unwrap();
    assert_eq!(sv.representatives.len(), 120);
    assert_eq!(sv.total_count, 240);
    let oracle = box_enumerate(bw3.lattice(), &dy(2, 0));
    assert_eq!(sv.representatives, oracle);
}

#[test]
fn bw2_counts() {
    let bw2 = bw(2);
    assert_eq!(bw2.lattice().det(), dy(4, 0));
    assert_eq!(min_norm(bw2.lattice(), &EnumerationOptions::default()).unwrap(), dy(2, 0));
    let sv = enumerate_short(bw2.lattice(), &dy(2, 0), &EnumerationOptions::default()).unwrap();
    assert_eq!(sv.total_count, 24);
    assert_eq!(sv.representatives, box_enumerate(bw2.lattice(), &dy(2, 0)));
    // Prop-9.12-style set equality at d=2.
    let mut expanded: Vec<DyadicVector> = sv
        .representatives
        .iter()
        .flat_map(|v| [v.clone(), v.neg()])
        .collect();
    expanded.sort();
    let mut combinatorial = standard_minimal_vectors(2).unwrap();
    combinatorial.sort();
    assert_eq!(expanded, combinatorial);
}

#[test]
fn bw3_theta_prefix() {
    let th = theta_series(bw(3).lattice(), &dy(4, 0), &EnumerationOptions::default()).unwrap();
    assert_eq!(th.count_at(&dy(0, 0)), 1);
    assert_eq!(th.count_at(&dy(2, 0)), 240);
    assert_eq!(th.count_at(&dy(4, 0)), 2160);
}

#[test]
fn bw4_determinant_and_kissing() {
    let bw4 = bw(4);
    assert_eq!(bw4.lattice().det(), dy(1 << 8, 0));
    assert!(bw4.lattice().is_even());
    let sv = enumerate_short(bw4.lattice(), &dy(4, 0), &EnumerationOptions::default()).unwrap();
    assert_eq!(sv.total_count, 4320);
    // Norm-2 vectors do not exist: minimum norm is 4.
    assert_eq!(min_norm(bw4.lattice(), &EnumerationOptions::default()).unwrap(), dy(4, 0));
}

#[test]
fn bw5_unimodular_min_norm() {
    let bw5 = bw(5);
    assert_eq!(bw5.lattice().det(), dy(1, 0));
    assert!(bw5.lattice().is_even());
    assert_eq!(min_norm(bw5.lattice(), &EnumerationOptions::default()).unwrap(), dy(4, 0));
}

#[test]
fn minimal_vector_sets_match_enumeration() {
    for d in [2u32, 3, 4] {
        let bwd = bw(d);
        let mu = dy(1 << (d / 2), 0);
        let sv = enumerate_short(bwd.lattice(), &mu, &EnumerationOptions::default()).unwrap();
        let mut expanded: Vec<DyadicVector> =
            sv.representatives.iter().flat_map(|v| [v.clone(), v.neg()]).collect();
        expanded.sort();
        let combinatorial = standard_minimal_vectors(d).unwrap();
        assert_eq!(expanded, combinatorial, "minimal vector set at d={d}");
    }
}

#[test]
fn twist_minvec_sets_match_enumeration() {
    for d in [2u32, 3, 4] {
        let bwd = bw(d);
        let top = 1u32 << (d - 1);
        let mut h = bwc_core::codes::BitWord::empty(d);
        for p in 0..(1u32 << d) {
            if p & top == 0 {
                h.set(p, true);
            }
        }
        let f = FourvolutionSpec::new(d, h, top).unwrap();
        let l1 = twist(bwd.lattice(), 1, &f.f).unwrap();
        let mu = dy(1i64 << (d / 2 + 1), 0);
        assert_eq!(min_norm(&l1, &EnumerationOptions::default()).unwrap(), mu);
        let sv = enumerate_short(&l1, &mu, &EnumerationOptions::default()).unwrap();
        let mut expanded: Vec<DyadicVector> =
            sv.representatives.iter().flat_map(|v| [v.clone(), v.neg()]).collect();
        expanded.sort();
        let combinatorial = bw_twist_minvecs(d).unwrap();
        assert_eq!(expanded, combinatorial, "twist minimal vectors at d={d}");
    }
}

#[test]
fn two_four_generation_and_scaling() {
    for d in [3u32, 4] {
        let bwd = bw(d);
        let f = FourvolutionSpec::standard(d, 1).unwrap();
        let (u, v) = lower_dihedral_pair(&f).unwrap();
        assert!(check_two_four(bwd.lattice(), &u, &v).unwrap(), "2/4 at d={d}");
        // Scaling invariance.
        assert!(check_two_four(&bwd.lattice().scale_pow2(1), &u, &v).unwrap());
        // A degenerate pair is rejected by the shape check.
        assert!(check_two_four(bwd.lattice(), &u, &u).is_err());
    }
}

#[test]
fn commutator_density_small() {
    for d in [2u32, 3, 4] {
        let bwd = bw(d);
        let top = 1u32 << (d - 1);
        let mut h = bwc_core::codes::BitWord::empty(d);
        for p in 0..(1u32 << d) {
            if p & top == 0 {
                h.set(p, true);
            }
        }
        let f = FourvolutionSpec::new(d, h, top).unwrap();
        let commutator = lower_commutator_lattice(bwd.lattice()).unwrap();
        let twisted = twist(bwd.lattice(), 1, &f.f).unwrap();
        assert_eq!(commutator, twisted, "[L,R] = L(f-1) at d={d}");
    }
}

#[test]
fn eigenlattice_ranks_and_tel_index() {
    let bw5 = bw(5);
    for (k, plus_rank, minus_rank) in [(1u32, 24usize, 8usize), (2, 20, 12)] {
        let (t, _) = standard_pair(5, k).unwrap();
        let e = eigenlattice(bw5.lattice(), &t.t).unwrap();
        assert_eq!(e.plus.rank(), plus_rank);
        assert_eq!(e.minus.rank(), minus_rank);
        // Plus and minus are orthogonal.
        for a in e.plus.basis().iter().take(4) {
            for b in e.minus.basis().iter().take(4) {
                assert!(a.inner(b).is_zero());
            }
        }
        let jno = bwc_core::isometry::jordan_number(bw5.lattice(), &t.t).unwrap();
        let index = bw5.lattice().index_of(&e.tel).unwrap();
        assert_eq!(index, BigInt::from(1) << jno, "Tel index vs Jordan number at k={k}");
    }
}

#[test]
fn jordan_numbers_examples() {
    let bw5 = bw(5);
    // JNo(-1) = 0.
    let m1 = MonomialIsometry::minus_one(5);
    assert_eq!(bwc_core::isometry::jordan_number(bw5.lattice(), &m1).unwrap(), 0);
    // Lower noncentral involutions: JNo = 2^(d-2).
    let tau = MonomialIsometry::tau(5, 7);
    assert_eq!(bwc_core::isometry::jordan_number(bw5.lattice(), &tau).unwrap(), 8);
    // Split defect-k: JNo = 2^(d-1) - 2^(d-k-1); (5,2) gives 12.
    let (t, _) = standard_pair(5, 2).unwrap();
    assert_eq!(bwc_core::isometry::jordan_number(bw5.lattice(), &t.t).unwrap(), 12);
}
