//! Exact short-vector enumeration (Fincke-Pohst with Schnorr-Euchner
//! ordering), minimum norms, and theta series.
//!
//! All decisions are made in exact rational arithmetic on the Gram matrix;
//! LLL preprocessing only shapes the search tree.  Every search carries a
//! node budget and fails loudly when it is exhausted.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::lattice::{dyadic_to_rational, Lattice};
use crate::reduction::{gso_from_gram, lll_basis};
use crate::vector::DyadicVector;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct EnumerationOptions {
    /// Cap on search-tree nodes across the whole call.
    pub budget: u64,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions { budget: 1_000_000_000 }
    }
}

/// Result of a completed enumeration: one representative per +-pair in a
/// deterministic order (sorted by norm, then coordinates).
#[derive(Clone, Debug)]
pub struct ShortVectors {
    pub bound: Dyadic,
    pub representatives: Vec<DyadicVector>,
    /// Total number of nonzero vectors counted with both signs.
    pub total_count: u64,
    pub nodes: u64,
}

/// Theta-series prefix: vector counts per norm up to the bound
/// (norms may be half-integers on odd lattices off the integral part).
#[derive(Clone, Debug)]
pub struct ThetaSeries {
    pub bound: Dyadic,
    pub counts: Vec<(Dyadic, u64)>,
}

impl ThetaSeries {
    pub fn count_at(&self, norm: &Dyadic) -> u64 {
        self.counts.iter().find(|(n, _)| n == norm).map_or(0, |(_, c)| *c)
    }
}

enum SearchMode {
    Collect,
    FirstNonzero,
}

struct Search<'a> {
    basis: &'a [DyadicVector],
    mu: &'a [Vec<BigRational>],
    b_star: &'a [BigRational],
    bound: BigRational,
    budget: u64,
    nodes: u64,
    mode: SearchMode,
    coeffs: Vec<BigInt>,
    found: Vec<DyadicVector>,
    stop: bool,
}

impl Search<'_> {
    fn node(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget { nodes: self.nodes });
        }
        Ok(())
    }

    /// Descend from level j+1 with accumulated weight `rho`; `axis` is true
    /// while every chosen higher coefficient is zero (used to emit exactly
    /// one representative of each +-pair).
    fn descend(&mut self, j: isize, rho: &BigRational, axis: bool) -> Result<()> {
        if self.stop {
            return Ok(());
        }
        if j < 0 {
            if !axis {
                let mut v = DyadicVector::zero(self.basis[0].ambient());
                for (x, b) in self.coeffs.iter().zip(self.basis) {
                    if !x.is_zero() {
                        v = v.add(&b.scale(&Dyadic::from_int(x.clone())));
                    }
                }
                self.found.push(v);
                if matches!(self.mode, SearchMode::FirstNonzero) {
                    self.stop = true;
                }
            }
            return Ok(());
        }
        let j = j as usize;
        let mut center = BigRational::zero();
        for i in j + 1..self.basis.len() {
            if !self.coeffs[i].is_zero() {
                let t = BigRational::from(self.coeffs[i].clone()) * &self.mu[i][j];
                center = &center + &t;
            }
        }
        let rem = &self.bound - rho;
        let start = (-&center).round().to_integer();
        // Upward sweep from the rounded center, then downward.
        let mut t = start.clone();
        loop {
            self.node()?;
            let off = BigRational::from(t.clone()) + &center;
            let w = &off * &off * &self.b_star[j];
            if w > rem {
                break;
            }
            if !(axis && t.is_negative()) {
                self.coeffs[j] = t.clone();
                let rho2 = rho + &w;
                self.descend(j as isize - 1, &rho2, axis && t.is_zero())?;
                if self.stop {
                    return Ok(());
                }
            }
            t += 1;
        }
        let mut t: BigInt = &start - 1;
        loop {
            self.node()?;
            let off = BigRational::from(t.clone()) + &center;
            let w = &off * &off * &self.b_star[j];
            if w > rem {
                break;
            }
            if !(axis && t.is_negative()) {
                self.coeffs[j] = t.clone();
                let rho2 = rho + &w;
                self.descend(j as isize - 1, &rho2, axis && t.is_zero())?;
                if self.stop {
                    return Ok(());
                }
            }
            t -= 1;
        }
        self.coeffs[j] = BigInt::zero();
        Ok(())
    }
}

fn run_search(
    l: &Lattice,
    bound: &Dyadic,
    opts: &EnumerationOptions,
    mode: SearchMode,
) -> Result<(Vec<DyadicVector>, u64)> {
    if l.is_zero() || bound.is_negative() {
        return Ok((Vec::new(), 0));
    }
    let basis = lll_basis(l);
    let n = basis.len();
    let mut gram = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let v = dyadic_to_rational(&basis[i].inner(&basis[j]));
            gram[i][j] = v.clone();
            gram[j][i] = v;
        }
    }
    let gso = gso_from_gram(&gram);
    let mut s = Search {
        basis: &basis,
        mu: &gso.mu,
        b_star: &gso.b_star,
        bound: dyadic_to_rational(bound),
        budget: opts.budget,
        nodes: 0,
        mode,
        coeffs: vec![BigInt::zero(); n],
        found: Vec::new(),
        stop: false,
    };
    s.descend(n as isize - 1, &BigRational::zero(), true)?;
    Ok((s.found, s.nodes))
}

/// All lattice vectors with 0 < (x,x) <= bound, one representative per
/// +-pair, sorted by (norm, coordinates).
pub fn enumerate_short(
    l: &Lattice,
    bound: &Dyadic,
    opts: &EnumerationOptions,
) -> Result<ShortVectors> {
    let (found, nodes) = run_search(l, bound, opts, SearchMode::Collect)?;
    let mut reps: Vec<(Dyadic, DyadicVector)> = found
        .into_iter()
        .map(|v| {
            let c = v.canonical_sign();
            (c.norm(), c)
        })
        .collect();
    reps.sort();
    reps.dedup();
    let total = 2 * reps.len() as u64;
    Ok(ShortVectors {
        bound: bound.clone(),
        representatives: reps.into_iter().map(|(_, v)| v).collect(),
        total_count: total,
        nodes,
    })
}

/// Some nonzero vector of norm <= bound, if one exists.
pub fn find_below(
    l: &Lattice,
    bound: &Dyadic,
    opts: &EnumerationOptions,
) -> Result<Option<DyadicVector>> {
    let (found, _) = run_search(l, bound, opts, SearchMode::FirstNonzero)?;
    Ok(found.into_iter().next())
}

/// Exact minimum norm, certified by an empty search strictly below it.
pub fn min_norm(l: &Lattice, opts: &EnumerationOptions) -> Result<Dyadic> {
    if l.is_zero() {
        return Err(Error::Parameter("zero lattice has no minimum norm".into()));
    }
    let mut best = lll_basis(l)
        .iter()
        .map(DyadicVector::norm)
        .min()
        .unwrap();
    // Norms live in 2^-s Z, so stepping just below `best` is exact.
    let (_, s) = l.gram_scaled();
    let step = Dyadic::inv_pow2(s);
    loop {
        let probe = &best - &step;
        match find_below(l, &probe, opts)? {
            Some(v) => best = v.norm(),
            None => return Ok(best),
        }
    }
}

/// Vector counts per norm up to the bound; counts both signs, and counts
/// the zero vector at norm 0.
pub fn theta_series(l: &Lattice, bound: &Dyadic, opts: &EnumerationOptions) -> Result<ThetaSeries> {
    let sv = enumerate_short(l, bound, opts)?;
    let mut counts: Vec<(Dyadic, u64)> = vec![(Dyadic::zero(), 1)];
    for v in &sv.representatives {
        let n = v.norm();
        match counts.iter_mut().find(|(k, _)| *k == n) {
            Some((_, c)) => *c += 2,
            None => counts.push((n, 2)),
        }
    }
    counts.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(ThetaSeries { bound: bound.clone(), counts })
}

/// Norm bound used by the decomposition and isometry routines: the largest
/// diagonal entry of an LLL-reduced Gram matrix.
pub fn reduced_max_diag(l: &Lattice) -> Option<Dyadic> {
    lll_basis(l).iter().map(DyadicVector::norm).max()
}
