//! Shared fixtures and independent oracles for the integration tests.
//!
//! The brute-force box enumerator here is deliberately independent of the
//! Fincke-Pohst path in the crate: it bounds each coordinate through the
//! inverse Gram diagonal and walks the whole box.

use bwc_core::barneswall::BarnesWall;
use bwc_core::dyadic::Dyadic;
use bwc_core::lattice::{dyadic_to_rational, Lattice};
use bwc_core::matrix::solve_rational;
use bwc_core::vector::DyadicVector;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

pub fn dy(m: i64, e: u32) -> Dyadic {
    Dyadic::new(BigInt::from(m), e)
}

/// Process-wide cache of Barnes-Wall lattices.
pub fn bw(d: u32) -> BarnesWall {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, BarnesWall>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry(d).or_insert_with(|| BarnesWall::build(d).unwrap()).clone()
}

/// Brute-force enumeration of all nonzero vectors of norm <= bound by
/// walking a coordinate box: |x_i| <= sqrt(bound * (G^-1)_ii).  Returns
/// one representative per +-pair, sorted.
pub fn box_enumerate(l: &Lattice, bound: &Dyadic) -> Vec<DyadicVector> {
    let n = l.rank();
    assert!(n > 0 && n <= 10, "box oracle is for small ranks");
    let g = l.gram();
    let ga: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| dyadic_to_rational(&g[i][j])).collect()).collect();
    let id: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::from(BigInt::from(1))
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let inv = solve_rational(&ga, &id).expect("Gram invertible");
    let bound_r = dyadic_to_rational(bound);
    let caps: Vec<i64> = (0..n)
        .map(|i| {
            // Exact overcount: |x_i|^2 <= bound * (G^-1)_ii, so the floor
            // square root of the ceiling plus one always covers.
            let v = &bound_r * &inv[i][i];
            let ceil = v.ceil().to_integer().max(BigInt::zero());
            ceil.sqrt().to_i64().unwrap() + 1
        })
        .collect();

    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    loop {
        // Odometer from the all-zero state upward: this walks exactly the
        // states whose highest-index nonzero digit is positive, i.e. one
        // representative of every +-pair in the box.
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                out.dedup();
                return out;
            }
            if x[i] < caps[i] {
                x[i] += 1;
                break;
            }
            x[i] = -caps[i];
            i += 1;
        }
        let coords: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        let v = l.from_coordinates(&coords);
        let nm = v.norm();
        if !nm.is_zero() && nm <= *bound {
            out.push(v.canonical_sign());
        }
    }
}
