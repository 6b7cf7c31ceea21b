//! Exact integer and rational linear algebra: Hermite and Smith normal
//! forms, kernels, determinants.
//!
//! Everything here is arbitrary-precision.  The Hermite normal form is
//! row-style with positive pivots and entries above each pivot reduced into
//! `[0, pivot)`, which makes it usable as a canonical equality key for row
//! spans (and hence for lattices).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<BigInt> {
        self.row(i).to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.at(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = a * rhs.at(k, j);
                    out.data[i * rhs.cols + j] += v;
                }
            }
        }
        out
    }

    pub fn scale(&self, s: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// Row-style Hermite normal form with zero rows removed.
    pub fn hnf(&self) -> IntMatrix {
        let mut b = HnfBuilder::new(self.cols);
        for i in 0..self.rows {
            b.insert(self.row_vec(i));
        }
        b.finish()
    }

    /// Hermite normal form together with a unimodular transform `U` such
    /// that `U * self` equals `H` padded with zero rows.
    pub fn hnf_with_transform(&self) -> (IntMatrix, IntMatrix) {
        let m = self.rows;
        let n = self.cols;
        let mut a: Vec<Vec<BigInt>> = (0..m).map(|i| self.row_vec(i)).collect();
        let mut u: Vec<Vec<BigInt>> = (0..m)
            .map(|i| {
                let mut r = vec![BigInt::zero(); m];
                r[i] = BigInt::one();
                r
            })
            .collect();

        let mut pivot_row = 0;
        for col in 0..n {
            // Euclid on the entries of this column at or below pivot_row.
            loop {
                let mut best: Option<usize> = None;
                for (i, row) in a.iter().enumerate().skip(pivot_row) {
                    if !row[col].is_zero()
                        && best.is_none_or(|b| row[col].abs() < a[b][col].abs())
                    {
                        best = Some(i);
                    }
                }
                let Some(b) = best else { break };
                a.swap(pivot_row, b);
                u.swap(pivot_row, b);
                let mut done = true;
                for i in pivot_row + 1..m {
                    if a[i][col].is_zero() {
                        continue;
                    }
                    let q = a[i][col].div_floor(&a[pivot_row][col]);
                    row_submul(&mut a, i, pivot_row, &q);
                    row_submul(&mut u, i, pivot_row, &q);
                    if !a[i][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if pivot_row < m && !a[pivot_row][col].is_zero() {
                if a[pivot_row][col].is_negative() {
                    row_negate(&mut a, pivot_row);
                    row_negate(&mut u, pivot_row);
                }
                pivot_row += 1;
            }
            if pivot_row == m {
                break;
            }
        }
        let rank = pivot_row;
        // Reduce entries above each pivot into [0, pivot).  Ascending pivot
        // order: later reductions subtract rows that are zero at the
        // columns already fixed.
        for k in 0..rank {
            let col = a[k].iter().position(|x| !x.is_zero()).unwrap();
            for i in 0..k {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[k][col]);
                if q.is_zero() {
                    continue;
                }
                row_submul(&mut a, i, k, &q);
                row_submul(&mut u, i, k, &q);
            }
        }
        a.truncate(rank);
        (IntMatrix::from_rows(a), IntMatrix::from_rows(u))
    }

    pub fn rank(&self) -> usize {
        self.hnf().rows()
    }

    /// Basis of the saturated left kernel `{ x integral : x * self = 0 }`.
    pub fn left_kernel(&self) -> IntMatrix {
        let (h, u) = self.hnf_with_transform();
        let rank = h.rows();
        let rows: Vec<Vec<BigInt>> = (rank..self.rows).map(|i| u.row_vec(i)).collect();
        if rows.is_empty() {
            IntMatrix::zero(0, self.rows)
        } else {
            // HNF the kernel rows for a canonical basis.
            IntMatrix::from_rows(rows).hnf()
        }
    }

    /// Invariant factors d_1 | d_2 | ... | d_r of the Smith normal form
    /// (positive, zero factors dropped).
    pub fn snf(&self) -> Vec<BigInt> {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|i| self.row_vec(i)).collect();
        // Alternate row and column HNF sweeps until the matrix is diagonal.
        loop {
            let m = IntMatrix::from_rows(a.clone()).hnf();
            let t = m.transpose().hnf();
            a = (0..t.rows()).map(|i| t.row_vec(i)).collect();
            let sq = IntMatrix::from_rows(a.clone());
            if is_diagonal(&sq) {
                break;
            }
        }
        let mut d: Vec<BigInt> = Vec::new();
        let sq = IntMatrix::from_rows(a);
        for i in 0..sq.rows().min(sq.cols()) {
            if !sq.at(i, i).is_zero() {
                d.push(sq.at(i, i).abs());
            }
        }
        // Fix the divisibility chain.
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..d.len().saturating_sub(1) {
                if !(&d[i + 1] % &d[i]).is_zero() {
                    let g = d[i].gcd(&d[i + 1]);
                    let l = &d[i] / &g * &d[i + 1];
                    d[i] = g;
                    d[i + 1] = l;
                    changed = true;
                }
            }
        }
        d
    }

    /// Determinant by fraction-free (Bareiss) elimination; panics unless square.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row_vec(i)).collect();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

fn row_submul(rows: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (a, b) = if dst < src {
        let (lo, hi) = rows.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x -= q * y;
    }
}

fn row_negate(rows: &mut [Vec<BigInt>], i: usize) {
    for x in rows[i].iter_mut() {
        *x = -&*x;
    }
}

fn is_diagonal(m: &IntMatrix) -> bool {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if i != j && !m.at(i, j).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Incremental row-span builder in Hermite form.  Rows are kept in echelon
/// order with positive pivots; `finish` reduces the entries above each pivot
/// to yield the canonical HNF.
pub struct HnfBuilder {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl HnfBuilder {
    pub fn new(cols: usize) -> Self {
        HnfBuilder { cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Current (echelon, not yet fully reduced) rows.
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Insert a row; returns true if the row span grew or a pivot shrank
    /// (i.e. the inserted row was not already in the span).
    pub fn insert(&mut self, mut row: Vec<BigInt>) -> bool {
        assert_eq!(row.len(), self.cols);
        let mut changed = false;
        loop {
            let Some(j) = row.iter().position(|x| !x.is_zero()) else {
                return changed;
            };
            match self.pivots.binary_search(&j) {
                Ok(idx) => {
                    let h = &self.rows[idx][j];
                    if (&row[j] % h).is_zero() {
                        let q = &row[j] / h;
                        for (x, y) in row.iter_mut().zip(self.rows[idx].iter()) {
                            *x -= &q * y;
                        }
                    } else {
                        changed = true;
                        let e = h.extended_gcd(&row[j]);
                        let (g, s, t) = (e.gcd, e.x, e.y);
                        let hq = h / &g;
                        let rq = &row[j] / &g;
                        let old = std::mem::take(&mut self.rows[idx]);
                        let mut gcd_row = vec![BigInt::zero(); self.cols];
                        let mut rem_row = vec![BigInt::zero(); self.cols];
                        for k in 0..self.cols {
                            gcd_row[k] = &s * &old[k] + &t * &row[k];
                            rem_row[k] = &hq * &row[k] - &rq * &old[k];
                        }
                        self.rows[idx] = gcd_row;
                        row = rem_row;
                    }
                }
                Err(pos) => {
                    changed = true;
                    if row[j].is_negative() {
                        for x in row.iter_mut() {
                            *x = -&*x;
                        }
                    }
                    self.pivots.insert(pos, j);
                    self.rows.insert(pos, std::mem::take(&mut row));
                    return changed;
                }
            }
        }
    }

    /// True if `row` is in the current span (does not modify the builder).
    pub fn contains(&self, row: &[BigInt]) -> bool {
        let mut row = row.to_vec();
        loop {
            let Some(j) = row.iter().position(|x| !x.is_zero()) else {
                return true;
            };
            let Ok(idx) = self.pivots.binary_search(&j) else {
                return false;
            };
            let h = &self.rows[idx][j];
            if !(&row[j] % h).is_zero() {
                return false;
            }
            let q = &row[j] / h;
            for (x, y) in row.iter_mut().zip(self.rows[idx].iter()) {
                *x -= &q * y;
            }
        }
    }

    /// Canonical HNF of everything inserted so far.
    pub fn finish(mut self) -> IntMatrix {
        let r = self.rows.len();
        for k in 0..r {
            let col = self.pivots[k];
            for i in 0..k {
                let q = self.rows[i][col].div_floor(&self.rows[k][col]);
                if q.is_zero() {
                    continue;
                }
                row_submul(&mut self.rows, i, k, &q);
            }
        }
        IntMatrix { rows: r, cols: self.cols, data: self.rows.into_iter().flatten().collect() }
    }
}

/// Solve `A x = b` over the rationals for square nonsingular `A` given as
/// rational entries; returns None if `A` is singular.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n));
    let w = b.first().map_or(0, Vec::len);
    assert_eq!(b.len(), n);
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| a[i].iter().cloned().chain(b[i].iter().cloned()).collect())
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, p);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i == col || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in col..n + w {
                let v = &m[col][j] * &f;
                m[i][j] = &m[i][j] - &v;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn hnf_identity() {
        let m = IntMatrix::identity(4);
        assert_eq!(m.hnf(), m);
    }

    #[test]
    fn hnf_hand_example() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 2], &[1, 1]]);
        let h = m.hnf();
        assert_eq!(h, IntMatrix::from_i64(&[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn hnf_transform_roundtrip() {
        let m = IntMatrix::from_i64(&[&[4, 6, 2], &[6, 12, 9], &[2, 2, 2]]);
        let (h, u) = m.hnf_with_transform();
        let um = u.mul(&m);
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let expect = if i < h.rows() { h.at(i, j).clone() } else { BigInt::zero() };
                assert_eq!(*um.at(i, j), expect);
            }
        }
        // U unimodular.
        assert_eq!(u.det().abs(), BigInt::one());
    }

    #[test]
    fn hnf_row_space_membership() {
        let m = IntMatrix::from_i64(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let h = m.hnf();
        let mut b = HnfBuilder::new(3);
        for i in 0..h.rows() {
            b.insert(h.row_vec(i));
        }
        for i in 0..m.rows() {
            assert!(b.contains(m.row(i)));
        }
    }

    #[test]
    fn builder_matches_batch_hnf() {
        let m = IntMatrix::from_i64(&[&[0, 4, 8], &[6, 3, 9], &[2, 5, 7], &[4, 10, 14]]);
        let mut b = HnfBuilder::new(3);
        for i in 0..m.rows() {
            b.insert(m.row_vec(i));
        }
        assert_eq!(b.finish(), m.hnf());
    }

    #[test]
    fn snf_diagonal_cases() {
        assert_eq!(IntMatrix::identity(3).snf(), vec![BigInt::one(); 3]);
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 4]]);
        assert_eq!(m.snf(), vec![BigInt::from(2), BigInt::from(4)]);
        // Requires a divisibility fix: diag(2,3) ~ diag(1,6).
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        assert_eq!(m.snf(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn snf_product_is_det() {
        let m = IntMatrix::from_i64(&[&[4, 2, 0], &[2, 8, 2], &[0, 2, 4]]);
        let d = m.snf();
        let prod: BigInt = d.iter().product();
        assert_eq!(prod, m.det().abs());
    }

    #[test]
    fn kernel_cases() {
        let m = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(m.left_kernel().rows(), 0);
        let m = IntMatrix::from_i64(&[&[1], &[1]]);
        let k = m.left_kernel();
        assert_eq!(k.rows(), 1);
        assert_eq!(k.row_vec(0).iter().map(|x| x.abs()).collect::<Vec<_>>(),
                   vec![BigInt::one(), BigInt::one()]);
        assert!((k.at(0, 0) + k.at(0, 1)).is_zero());
    }

    #[test]
    fn solve_rational_small() {
        let two = BigRational::from(BigInt::from(2));
        let one = BigRational::from(BigInt::from(1));
        let a = vec![vec![two.clone(), one.clone()], vec![one.clone(), two.clone()]];
        let b = vec![vec![one.clone()], vec![one.clone()]];
        let x = solve_rational(&a, &b).unwrap();
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(x[0][0], third);
        assert_eq!(x[1][0], third);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn prop_hnf_transform(rows in prop::collection::vec(
            prop::collection::vec(-50i64..50, 4), 1..6)) {
            let m = IntMatrix::from_rows(
                rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
            let (h, u) = m.hnf_with_transform();
            prop_assert_eq!(u.det().abs(), BigInt::one());
            let um = u.mul(&m);
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let expect = if i < h.rows() { h.at(i, j).clone() } else { BigInt::zero() };
                    prop_assert_eq!(um.at(i, j), &expect);
                }
            }
        }

        #[test]
        fn prop_hnf_large_entries(rows in prop::collection::vec(
            prop::collection::vec(prop::num::i64::ANY, 3), 3..5)) {
            // Entries up to 2^63 in magnitude; verified by re-multiplication.
            let m = IntMatrix::from_rows(
                rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x) * 2).collect()).collect());
            let (h, u) = m.hnf_with_transform();
            let um = u.mul(&m);
            for i in 0..h.rows() {
                for j in 0..m.cols() {
                    prop_assert_eq!(um.at(i, j), h.at(i, j));
                }
            }
        }

        #[test]
        fn prop_rank_nullity(rows in prop::collection::vec(
            prop::collection::vec(-9i64..9, 4), 1..7)) {
            let m = IntMatrix::from_rows(
                rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
            let k = m.left_kernel();
            prop_assert_eq!(k.rows() + m.rank(), m.rows());
            if k.rows() > 0 {
                assert!(k.mul(&m).is_zero());
            }
        }

        #[test]
        fn prop_snf_unimodular_invariance(rows in prop::collection::vec(
            prop::collection::vec(-9i64..9, 3), 3..4)) {
            let m = IntMatrix::from_rows(
                rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect());
            // Pre/post multiply by simple unimodular matrices.
            let u = IntMatrix::from_i64(&[&[1, 2, 0], &[0, 1, 0], &[1, 1, 1]]);
            let v = IntMatrix::from_i64(&[&[1, 0, 0], &[3, 1, 0], &[0, 2, 1]]);
            prop_assert_eq!(m.snf(), u.mul(&m).mul(&v).snf());
        }
    }
}
