//! Exact LLL basis reduction (delta = 3/4) in rational arithmetic.
//!
//! Reduction is used only to speed up enumeration; nothing downstream
//! depends on the quality of the reduced basis, only on it spanning the
//! same lattice.  All Gram-Schmidt data is kept as exact rationals.

use crate::lattice::{dyadic_to_rational, Lattice};
use crate::vector::DyadicVector;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Exact Gram-Schmidt data for a basis given by its Gram matrix.
pub struct Gso {
    /// Squared norms of the orthogonalized vectors.
    pub b_star: Vec<BigRational>,
    /// mu[i][j] for j < i.
    pub mu: Vec<Vec<BigRational>>,
}

/// Compute exact GSO coefficients from a Gram matrix.
pub fn gso_from_gram(gram: &[Vec<BigRational>]) -> Gso {
    let n = gram.len();
    let mut b_star: Vec<BigRational> = Vec::with_capacity(n);
    let mut mu: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    // inner[i][j] = (b_i, b_j*), computed alongside.
    let mut inner: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut mu_i = vec![BigRational::zero(); i];
        let mut inner_i = vec![BigRational::zero(); i];
        for j in 0..i {
            // (b_i, b_j*) = G[i][j] - sum_{t<j} mu[j][t] (b_i, b_t*)
            let mut v = gram[i][j].clone();
            for t in 0..j {
                let s = &mu[j][t] * &inner_i[t];
                v = &v - &s;
            }
            mu_i[j] = if b_star[j].is_zero() { BigRational::zero() } else { &v / &b_star[j] };
            inner_i[j] = v;
        }
        // B_i = G[i][i] - sum_{j<i} mu[i][j] (b_i, b_j*)
        let mut b = gram[i][i].clone();
        for j in 0..i {
            let s = &mu_i[j] * &inner_i[j];
            b = &b - &s;
        }
        b_star.push(b);
        mu.push(mu_i);
        inner.push(inner_i);
    }
    Gso { b_star, mu }
}

fn rational_gram(basis: &[DyadicVector]) -> Vec<Vec<BigRational>> {
    let n = basis.len();
    let mut g = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let v = dyadic_to_rational(&basis[i].inner(&basis[j]));
            g[i][j] = v.clone();
            g[j][i] = v;
        }
    }
    g
}

/// Incrementally maintained GSO rows over a mutable Gram matrix.  Row i
/// depends only on rows < i, so edits at position k invalidate rows >= k.
struct LllState {
    gram: Vec<Vec<BigRational>>,
    b_star: Vec<BigRational>,
    mu: Vec<Vec<BigRational>>,
    inner: Vec<Vec<BigRational>>,
    valid: usize,
}

impl LllState {
    fn new(gram: Vec<Vec<BigRational>>) -> Self {
        let n = gram.len();
        LllState {
            gram,
            b_star: vec![BigRational::zero(); n],
            mu: vec![Vec::new(); n],
            inner: vec![Vec::new(); n],
            valid: 0,
        }
    }

    fn ensure(&mut self, k: usize) {
        while self.valid <= k {
            let i = self.valid;
            let mut mu_i = vec![BigRational::zero(); i];
            let mut inner_i = vec![BigRational::zero(); i];
            for j in 0..i {
                let mut v = self.gram[i][j].clone();
                for t in 0..j {
                    let s = &self.mu[j][t] * &inner_i[t];
                    v = &v - &s;
                }
                mu_i[j] =
                    if self.b_star[j].is_zero() { BigRational::zero() } else { &v / &self.b_star[j] };
                inner_i[j] = v;
            }
            let mut b = self.gram[i][i].clone();
            for j in 0..i {
                let s = &mu_i[j] * &inner_i[j];
                b = &b - &s;
            }
            self.b_star[i] = b;
            self.mu[i] = mu_i;
            self.inner[i] = inner_i;
            self.valid = i + 1;
        }
    }

    fn invalidate(&mut self, k: usize) {
        self.valid = self.valid.min(k);
    }

    /// RED(k,j): subtract q*b_j from b_k and update row k of the GSO data
    /// in place (b_k* is unchanged by size reduction).
    fn size_reduce(&mut self, basis: &mut [DyadicVector], k: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        subtract_multiple(basis, &mut self.gram, k, j, q);
        let qr = BigRational::from(q.clone());
        for t in 0..j {
            let m = &qr * &self.mu[j][t];
            self.mu[k][t] = &self.mu[k][t] - &m;
            let v = &qr * &self.inner[j][t];
            self.inner[k][t] = &self.inner[k][t] - &v;
        }
        self.mu[k][j] = &self.mu[k][j] - &qr;
        let v = &qr * &self.b_star[j];
        self.inner[k][j] = &self.inner[k][j] - &v;
    }
}

/// LLL-reduce a basis of the lattice with delta = 3/4.  Returns a new basis
/// of the same lattice (only unimodular row operations are applied).
pub fn lll_basis(l: &Lattice) -> Vec<DyadicVector> {
    let mut basis: Vec<DyadicVector> = l.basis().to_vec();
    let n = basis.len();
    if n <= 1 {
        return basis;
    }
    let mut st = LllState::new(rational_gram(&basis));

    // delta = 3/4.
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));

    let mut k = 1usize;
    while k < n {
        st.ensure(k);
        // Size-reduce b_k against b_{k-1}, ..., b_0.
        for j in (0..k).rev() {
            let m = st.mu[k][j].clone();
            if m.abs() > half {
                let q = m.round().to_integer();
                st.size_reduce(&mut basis, k, j, &q);
            }
        }
        // Lovasz condition.
        let mu2 = &st.mu[k][k - 1] * &st.mu[k][k - 1];
        let rhs = (&delta - &mu2) * &st.b_star[k - 1];
        if st.b_star[k] < rhs {
            basis.swap(k, k - 1);
            swap_gram(&mut st.gram, k, k - 1);
            st.invalidate(k - 1);
            k = k.max(2) - 1;
        } else {
            k += 1;
        }
    }
    basis
}

fn subtract_multiple(
    basis: &mut [DyadicVector],
    gram: &mut [Vec<BigRational>],
    k: usize,
    j: usize,
    q: &BigInt,
) {
    if q.is_zero() {
        return;
    }
    let qd = crate::dyadic::Dyadic::from_int(q.clone());
    basis[k] = basis[k].sub(&basis[j].scale(&qd));
    let n = gram.len();
    let qr = BigRational::from(q.clone());
    // G[k][*] -= q G[j][*]; G[*][k] -= q G[*][j]; G[k][k] adjusted via both.
    for t in 0..n {
        let v = &qr * &gram[j][t];
        gram[k][t] = &gram[k][t] - &v;
    }
    for t in 0..n {
        let v = &qr * &gram[t][j];
        gram[t][k] = &gram[t][k] - &v;
    }
}

fn swap_gram(gram: &mut [Vec<BigRational>], a: usize, b: usize) {
    gram.swap(a, b);
    for row in gram.iter_mut() {
        row.swap(a, b);
    }
}
