//! Orthogonal decomposition of positive definite integral lattices by the
//! indecomposable-vector graph: enumerate vectors up to the largest reduced
//! Gram diagonal, discard the decomposable ones (x = y + z with nonzero
//! parts and (y,z) >= 0), and split the rest into nonorthogonality
//! components.  The component spans sum to a finite-index sublattice; the
//! index is reported (1 when they span).

use crate::dyadic::Dyadic;
use crate::enumerate::{enumerate_short, reduced_max_diag, EnumerationOptions};
use crate::error::{Error, Result};
use crate::lattice::Lattice;
use crate::vector::DyadicVector;
use num_bigint::BigInt;

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Pairwise orthogonal component spans in rank order (largest pivots
    /// first by canonical basis order).
    pub components: Vec<Lattice>,
    /// Index of the components' sum inside the input lattice.
    pub sum_index: BigInt,
    /// The enumeration bound that fed the indecomposable-vector graph.
    pub pool_bound: Dyadic,
}

pub fn decompose(l: &Lattice, opts: &EnumerationOptions) -> Result<Decomposition> {
    if !l.is_integral() {
        return Err(Error::NonIntegral);
    }
    if l.is_zero() {
        return Ok(Decomposition {
            components: Vec::new(),
            sum_index: BigInt::from(1),
            pool_bound: Dyadic::zero(),
        });
    }
    let bound = reduced_max_diag(l).unwrap();
    let reps = enumerate_short(l, &bound, opts)?.representatives;
    let full: Vec<DyadicVector> =
        reps.iter().flat_map(|v| [v.clone(), v.neg()]).collect();

    // x is decomposable when x = y + z with y, z nonzero and (y,z) >= 0;
    // both parts then have norm <= norm(x), so searching the pool is
    // exhaustive.
    let mut indecomposable: Vec<&DyadicVector> = Vec::new();
    for x in &reps {
        let mut splits = false;
        for y in &full {
            let z = x.sub(y);
            if z.is_zero() {
                continue;
            }
            // (y,z) >= 0 forces norm(y), norm(z) < norm(x), so the pool is
            // an exhaustive source of candidate parts.
            if !y.inner(&z).is_negative() {
                splits = true;
                break;
            }
        }
        if !splits {
            indecomposable.push(x);
        }
    }

    // Union-find over the nonorthogonality graph.
    let n = indecomposable.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if !indecomposable[i].inner(indecomposable[j]).is_zero() {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<Vec<DyadicVector>> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match roots.iter().position(|&x| x == r) {
            Some(g) => groups[g].push(indecomposable[i].clone()),
            None => {
                roots.push(r);
                groups.push(vec![indecomposable[i].clone()]);
            }
        }
    }
    let mut components: Vec<Lattice> = groups
        .into_iter()
        .map(|g| Lattice::span(l.ambient(), &g))
        .collect::<Result<_>>()?;
    components.sort_by_key(|c| std::cmp::Reverse(c.rank()));

    let mut sum = Lattice::span(l.ambient(), &[])?;
    for c in &components {
        sum = sum.sum(c)?;
    }
    if sum.rank() != l.rank() {
        return Err(Error::Construction(format!(
            "indecomposable vectors up to {} span rank {} of {}",
            bound,
            sum.rank(),
            l.rank()
        )));
    }
    let sum_index = l.index_of(&sum)?;
    Ok(Decomposition { components, sum_index, pool_bound: bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::AmbientSpace;

    #[test]
    fn rectangular_lattice_splits() {
        let amb = AmbientSpace::new(1);
        let a = DyadicVector::new(amb, vec![Dyadic::from_int(1), Dyadic::from_int(0)]);
        let b = DyadicVector::new(amb, vec![Dyadic::from_int(0), Dyadic::from_int(3)]);
        let l = Lattice::span(amb, &[a, b]).unwrap();
        let d = decompose(&l, &EnumerationOptions::default()).unwrap();
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.sum_index, BigInt::from(1));
    }

    #[test]
    fn square_lattice_z2_is_decomposable() {
        let amb = AmbientSpace::new(1);
        let gens: Vec<DyadicVector> = (0..2).map(|i| DyadicVector::basis(amb, i)).collect();
        let l = Lattice::span(amb, &gens).unwrap();
        let d = decompose(&l, &EnumerationOptions::default()).unwrap();
        assert_eq!(d.components.len(), 2);
        for c in &d.components {
            assert_eq!(c.rank(), 1);
        }
    }
}
