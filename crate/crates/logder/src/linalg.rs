//! Dense exact linear algebra over the rationals.
//!
//! Elimination runs on integer rows (denominators cleared, content removed
//! after every update) so coefficient growth stays controlled without any
//! rounding. Subspaces are kept in reduced row-echelon form, which makes
//! equality and membership canonical.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> BigRational>(
        rows: usize,
        cols: usize,
        mut f: F,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<BigRational>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            data.extend(row);
        }
        QMatrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_int_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        QMatrix::from_fn(rows.len(), cols, |r, c| {
            BigRational::from_integer(BigInt::from(rows[r][c]))
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        QMatrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = BigRational::zero();
            for k in 0..self.cols {
                let a = self.get(r, k);
                if !a.is_zero() {
                    acc += a * other.get(k, c);
                }
            }
            acc
        })
    }

    /// Row vector times matrix.
    pub fn row_mul(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![BigRational::zero(); self.cols];
        for (r, coef) in v.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for c in 0..self.cols {
                let a = self.get(r, c);
                if !a.is_zero() {
                    out[c] += coef * a;
                }
            }
        }
        out
    }

    /// Canonical reduced row-echelon form together with the rank.
    pub fn rref(&self) -> (QMatrix, usize) {
        let (mut rows, pivots) = self.eliminate(true);
        let rank = pivots.len();
        // Exact division by the pivot turns the integer echelon rows into
        // the canonical leading-one form.
        let mut out = QMatrix::zero(self.rows, self.cols);
        for (r, row) in rows.drain(..).enumerate() {
            if r < rank {
                let pivot = row[pivots[r]].clone();
                for c in 0..self.cols {
                    if !row[c].is_zero() {
                        out.set(r, c, ratio(row[c].clone(), pivot.clone()));
                    }
                }
            }
        }
        (out, rank)
    }

    /// Rank via forward elimination only.
    pub fn rank(&self) -> usize {
        self.eliminate(false).1.len()
    }

    /// Basis of the right nullspace `{v : M v = 0}`, in canonical form.
    pub fn nullspace(&self) -> Subspace {
        let (r, rank) = self.rref();
        let mut pivots = Vec::with_capacity(rank);
        let mut col = 0;
        for row in 0..rank {
            while r.get(row, col).is_zero() {
                col += 1;
            }
            pivots.push(col);
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![BigRational::zero(); self.cols];
            v[f] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, f).clone();
            }
            basis.push(v);
        }
        Subspace::from_spanning_rows(QMatrix::from_rows(self.cols, basis))
    }

    /// Forward elimination on denominator-cleared integer rows. Every row is
    /// divided by its content after each update, which keeps entries small
    /// while remaining exact. Returns the echelon rows and the pivot columns;
    /// with `full` set, also eliminates above the pivots (integer Gauss-Jordan).
    fn eliminate(&self, full: bool) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| clear_row(self.row(r)))
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            // Smallest nonzero pivot keeps the cross-multiplications cheap.
            let pick = (r..self.rows)
                .filter(|&i| !rows[i][c].is_zero())
                .min_by_key(|&i| rows[i][c].magnitude().bits());
            let Some(p) = pick else { continue };
            rows.swap(r, p);
            for i in r + 1..self.rows {
                if !rows[i][c].is_zero() {
                    let (lo, hi) = rows.split_at_mut(i);
                    cross_eliminate(&mut hi[0], &lo[r], c);
                }
            }
            pivots.push(c);
            r += 1;
        }
        if full {
            for r in (0..pivots.len()).rev() {
                let c = pivots[r];
                for i in 0..r {
                    if !rows[i][c].is_zero() {
                        let (lo, hi) = rows.split_at_mut(r);
                        cross_eliminate(&mut lo[i], &hi[0], c);
                    }
                }
            }
        }
        (rows, pivots)
    }
}

/// `row -= (row[c]/g) * pivot_row * ...` scaled so column `c` becomes zero,
/// then divided by its content.
fn cross_eliminate(row: &mut [BigInt], pivot_row: &[BigInt], c: usize) {
    let g = row[c].gcd(&pivot_row[c]);
    let mr = &pivot_row[c] / &g;
    let mp = &row[c] / &g;
    let mut content = BigInt::zero();
    for (x, p) in row.iter_mut().zip(pivot_row) {
        *x = &*x * &mr - p * &mp;
        if !x.is_zero() && !content.is_one() {
            content = content.gcd(x);
        }
    }
    if content > BigInt::one() {
        for x in row.iter_mut() {
            *x = &*x / &content;
        }
    }
}

/// Clear denominators and remove content, preserving sign.
fn clear_row(row: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for v in row {
        if !v.is_zero() {
            l = l.lcm(v.denom());
        }
    }
    let mut out: Vec<BigInt> = row.iter().map(|v| v.numer() * (&l / v.denom())).collect();
    let mut content = BigInt::zero();
    for x in &out {
        if !x.is_zero() && !content.is_one() {
            content = content.gcd(x);
        }
    }
    if content > BigInt::one() {
        for x in out.iter_mut() {
            *x = &*x / &content;
        }
    }
    out
}

fn ratio(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

/// A linear subspace of `Q^ambient`, stored as an RREF basis so that two
/// subspaces are equal exactly when their basis matrices are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: QMatrix,
}

impl Subspace {
    /// Canonicalize arbitrary spanning rows into an RREF basis.
    pub fn from_spanning_rows(m: QMatrix) -> Subspace {
        let cols = m.cols();
        let (r, rank) = m.rref();
        let basis = QMatrix::from_fn(rank, cols, |i, j| r.get(i, j).clone());
        Subspace {
            ambient: cols,
            basis,
        }
    }

    pub fn zero(ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: QMatrix::zero(0, ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn basis_row(&self, i: usize) -> &[BigRational] {
        self.basis.row(i)
    }

    /// Membership test by reduction against the RREF basis.
    pub fn member(&self, v: &[BigRational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                got: v.len(),
            });
        }
        let mut rem = v.to_vec();
        for r in 0..self.basis.rows() {
            let mut pivot = 0;
            while self.basis.get(r, pivot).is_zero() {
                pivot += 1;
            }
            if !rem[pivot].is_zero() {
                let coef = rem[pivot].clone();
                for c in pivot..self.ambient {
                    let b = self.basis.get(r, c);
                    if !b.is_zero() {
                        let delta = &coef * b;
                        rem[c] -= delta;
                    }
                }
            }
        }
        Ok(rem.iter().all(|x| x.is_zero()))
    }
}

/// Primitive integer representative of a rational vector: denominators
/// cleared, content removed, first nonzero entry positive.
pub fn primitive_integer_vector(v: &[BigRational]) -> Vec<BigInt> {
    let mut out = clear_row(v);
    if let Some(first) = out.iter().find(|x| !x.is_zero()) {
        if first.sign() == Sign::Minus {
            for x in out.iter_mut() {
                *x = -&*x;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;
    use proptest::prelude::*;

    fn qm(rows: &[Vec<i64>]) -> QMatrix {
        QMatrix::from_int_rows(rows[0].len(), rows)
    }

    /// Rank oracle: largest size of a nonvanishing minor, by brute-force
    /// expansion. Only usable on small matrices.
    fn minor_rank(m: &QMatrix) -> usize {
        fn det(m: &QMatrix, rows: &[usize], cols: &[usize]) -> BigRational {
            if rows.len() == 1 {
                return m.get(rows[0], cols[0]).clone();
            }
            let mut acc = BigRational::zero();
            for (i, &r) in rows.iter().enumerate() {
                let rest: Vec<usize> = rows
                    .iter()
                    .copied()
                    .filter(|&x| x != r)
                    .collect();
                let sub = det(m, &rest, &cols[1..]);
                let term = m.get(r, cols[0]) * &sub;
                if i % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 0..n {
                for mut rest in subsets(n, k - 1) {
                    if rest.iter().all(|&x| x > first) {
                        rest.insert(0, first);
                        out.push(rest);
                    }
                }
            }
            out.retain(|s| s.len() == k);
            out
        }
        for k in (1..=m.rows().min(m.cols())).rev() {
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    if !det(m, &rs, &cs).is_zero() {
                        return k;
                    }
                }
            }
        }
        0
    }

    #[test]
    fn rref_identity_fixed() {
        let m = qm(&[vec![1, 0], vec![0, 1]]);
        let (r, rank) = m.rref();
        assert_eq!(rank, 2);
        assert_eq!(r, m);
    }

    #[test]
    fn rref_dependent_rows() {
        let m = qm(&[vec![1, 2], vec![2, 4]]);
        let (r, rank) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r, qm(&[vec![1, 2], vec![0, 0]]));
    }

    #[test]
    fn rref_rational_pivots() {
        // [[2,4],[3,5]] -> identity after exact division.
        let m = qm(&[vec![2, 4], vec![3, 5]]);
        let (r, rank) = m.rref();
        assert_eq!(rank, 2);
        assert_eq!(r, QMatrix::identity(2));
    }

    #[test]
    fn nullspace_dims_fixed() {
        assert_eq!(QMatrix::identity(3).nullspace().dim(), 0);
        assert_eq!(QMatrix::zero(2, 3).nullspace().dim(), 3);
        let n = qm(&[vec![1, 1, 1]]).nullspace();
        assert_eq!(n.dim(), 2);
        let m = qm(&[vec![1, 1, 1]]);
        for i in 0..2 {
            let v = n.basis_row(i);
            let prod: BigRational = (0..3).map(|c| m.get(0, c) * &v[c]).sum();
            assert!(prod.is_zero());
        }
    }

    #[test]
    fn member_fixed() {
        let s = Subspace::from_spanning_rows(qm(&[vec![1, 0, 1]]));
        let zero = vec![BigRational::zero(); 3];
        assert!(s.member(&zero).unwrap());
        assert!(s.member(s.basis_row(0)).unwrap());
        let outside: Vec<BigRational> = [1i64, 1, 0]
            .iter()
            .map(|&x| BigRational::from_i64(x).unwrap())
            .collect();
        assert!(!s.member(&outside).unwrap());
        assert!(matches!(
            s.member(&zero[..2]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn rank_matches_minor_oracle_random() {
        // Deterministic mix of shapes and entries, checked against the
        // brute-force minor oracle.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 7) as i64 - 3
        };
        for rows in 1..=5usize {
            for cols in 1..=5usize {
                for _ in 0..4 {
                    let m = QMatrix::from_fn(rows, cols, |_, _| {
                        BigRational::from_integer(BigInt::from(next()))
                    });
                    assert_eq!(m.rank(), minor_rank(&m), "shape {rows}x{cols}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn rref_idempotent(rows in 1..5usize, cols in 1..5usize, seed in any::<u64>()) {
            let mut state = seed | 1;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % 9) as i64 - 4
            };
            let m = QMatrix::from_fn(rows, cols, |_, _| {
                BigRational::from_integer(BigInt::from(next()))
            });
            let (r1, rank) = m.rref();
            let (r2, rank2) = r1.rref();
            prop_assert_eq!(&r1, &r2);
            prop_assert_eq!(rank, rank2);
            // rank-nullity
            prop_assert_eq!(m.nullspace().dim(), cols - rank);
        }

        #[test]
        fn rref_canonical_under_row_scaling(seed in any::<u64>()) {
            let mut state = seed | 1;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % 9) as i64 - 4
            };
            let m = QMatrix::from_fn(3, 4, |_, _| {
                BigRational::from_integer(BigInt::from(next()))
            });
            // Scale rows by nonzero constants and permute: same row span.
            let scales = [3i64, -2, 5];
            let perm = [2usize, 0, 1];
            let scaled = QMatrix::from_fn(3, 4, |r, c| {
                m.get(perm[r], c) * BigRational::from_integer(BigInt::from(scales[r]))
            });
            prop_assert_eq!(m.rref().0, scaled.rref().0);
        }

        #[test]
        fn nullspace_annihilates(seed in any::<u64>()) {
            let mut state = seed | 1;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % 7) as i64 - 3
            };
            let m = QMatrix::from_fn(3, 5, |_, _| {
                BigRational::from_integer(BigInt::from(next()))
            });
            let n = m.nullspace();
            for i in 0..n.dim() {
                let v = n.basis_row(i);
                for r in 0..m.rows() {
                    let dot: BigRational = (0..m.cols()).map(|c| m.get(r, c) * &v[c]).sum();
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
