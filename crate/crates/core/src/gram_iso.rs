//! Exact isometry testing between integral lattices of small rank, with a
//! fingerprint comparison (rank, determinant, parity, theta prefix) as a
//! fast rejection path and the only evidence offered above rank 12.

use crate::dyadic::Dyadic;
use crate::enumerate::{enumerate_short, reduced_max_diag, theta_series, EnumerationOptions};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::matrix::IntMatrix;
use crate::vector::DyadicVector;
use num_bigint::BigInt;
use num_traits::Signed;

pub const EXACT_RANK_LIMIT: usize = 12;

#[derive(Debug)]
pub enum IsometryOutcome {
    /// An explicit integral isometry: row i gives the coordinates in the
    /// second lattice of the image of the first lattice's basis vector i.
    Isometric { witness: IntMatrix },
    /// Proven non-isometric (invariant mismatch or exhausted search).
    Distinct { reason: String },
    /// Rank above the exact limit: fingerprint comparison only.
    Evidence { matching: bool, detail: String },
}

impl IsometryOutcome {
    pub fn is_isometric(&self) -> bool {
        matches!(self, IsometryOutcome::Isometric { .. })
    }
}

/// Decide isometry of two integral lattices.  Exact (witness or exhausted
/// backtracking) for rank <= 12; fingerprint evidence beyond that.
pub fn gram_isometric(
    a: &Lattice,
    b: &Lattice,
    opts: &EnumerationOptions,
) -> Result<IsometryOutcome> {
    if !a.is_integral() || !b.is_integral() {
        return Err(Error::NonIntegral);
    }
    if a.rank() != b.rank() {
        return Ok(IsometryOutcome::Distinct { reason: "rank mismatch".into() });
    }
    if a.rank() == 0 {
        return Ok(IsometryOutcome::Isometric { witness: IntMatrix::zero(0, 0) });
    }
    if a.det() != b.det() {
        return Ok(IsometryOutcome::Distinct { reason: "determinant mismatch".into() });
    }
    if a.is_even() != b.is_even() {
        return Ok(IsometryOutcome::Distinct { reason: "parity mismatch".into() });
    }
    let bound = reduced_max_diag(a).unwrap().max(reduced_max_diag(b).unwrap());
    let ta = theta_series(a, &bound, opts)?;
    let tb = theta_series(b, &bound, opts)?;
    if ta.counts != tb.counts {
        return Ok(IsometryOutcome::Distinct { reason: "theta mismatch".into() });
    }
    if a.rank() > EXACT_RANK_LIMIT {
        return Ok(IsometryOutcome::Evidence {
            matching: true,
            detail: format!(
                "rank {} exceeds the exact isometry limit {}; rank, det, parity and theta up to {} agree",
                a.rank(),
                EXACT_RANK_LIMIT,
                bound
            ),
        });
    }

    // Backtracking over images of an LLL-reduced basis of `a` among the
    // short vectors of `b` with matching Gram entries.
    let basis_a = crate::reduction::lll_basis(a);
    let max_norm = basis_a.iter().map(DyadicVector::norm).max().unwrap();
    let pool_reps = enumerate_short(b, &max_norm, opts)?.representatives;
    let mut pool: Vec<DyadicVector> = Vec::with_capacity(2 * pool_reps.len());
    for v in pool_reps {
        pool.push(v.clone());
        pool.push(v.neg());
    }
    let n = basis_a.len();
    let gram_a: Vec<Vec<Dyadic>> =
        (0..n).map(|i| (0..n).map(|j| basis_a[i].inner(&basis_a[j])).collect()).collect();

    let mut assigned: Vec<DyadicVector> = Vec::with_capacity(n);
    if backtrack(&gram_a, &pool, &mut assigned, n) {
        let mut witness = IntMatrix::zero(n, n);
        for (i, w) in assigned.iter().enumerate() {
            let coords = b.coordinates_of(w).expect("image is in the target lattice");
            for (j, c) in coords.into_iter().enumerate() {
                witness.set(i, j, c);
            }
        }
        // The images span a finite-index sublattice of equal determinant,
        // hence all of b.
        debug_assert_eq!(witness.det().abs(), BigInt::from(1));
        Ok(IsometryOutcome::Isometric { witness })
    } else {
        Ok(IsometryOutcome::Distinct { reason: "exhaustive image search".into() })
    }
}

fn backtrack(
    gram_a: &[Vec<Dyadic>],
    pool: &[DyadicVector],
    assigned: &mut Vec<DyadicVector>,
    n: usize,
) -> bool {
    let i = assigned.len();
    if i == n {
        return true;
    }
    'cand: for v in pool {
        if v.norm() != gram_a[i][i] {
            continue;
        }
        for (j, w) in assigned.iter().enumerate() {
            if v.inner(w) != gram_a[i][j] {
                continue 'cand;
            }
        }
        assigned.push(v.clone());
        if backtrack(gram_a, pool, assigned, n) {
            return true;
        }
        assigned.pop();
    }
    false
}
