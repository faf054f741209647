//! Dense matrices over an exact field.
//!
//! The type is generic over the scalar so the row-reduction code is shared
//! between the rational and Gaussian-rational instantiations; see the aliases
//! [`crate::MatN`] and [`crate::EndoOp`].

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Conjugate, Scalar};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Mat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    /// Elementary matrix with a single 1 at (row, col), zero-indexed.
    pub fn unit(n: usize, row: usize, col: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        m[(row, col)] = T::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged row lengths".into()));
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn n(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.data
            .iter()
            .enumerate()
            .map(|(k, v)| (k / self.cols, k % self.cols, v))
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn trace(&self) -> T {
        debug_assert!(self.is_square());
        let mut t = T::zero();
        for i in 0..self.rows {
            t = t + self[(i, i)].clone();
        }
        t
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out[(i, j)].clone();
                    out.set(i, j, cur + a.clone() * b.clone());
                }
            }
        }
        out
    }

    /// [A, B] = AB − BA for square matrices of equal size.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        if !self.is_square() || self.rows != rhs.rows || !rhs.is_square() {
            return Err(Error::Dimension(format!(
                "commutator needs equal square sizes, got {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(self.mul_ref(rhs) - rhs.mul_ref(self))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = T::one() / m[(r, c)].clone();
            for j in c..m.cols {
                let v = m[(r, j)].clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, as rows of the returned matrix.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zeros(free.len(), self.cols);
        for (i, &fc) in free.iter().enumerate() {
            out.set(i, fc, T::one());
            for (prow, &pc) in pivots.iter().enumerate() {
                out.set(i, pc, -r[(prow, fc)].clone());
            }
        }
        out
    }

    /// Solve self · x = rhs for a single column. None when inconsistent.
    pub fn solve(&self, rhs: &[T]) -> Option<Vec<T>> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self[(i, j)].clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            x[pc] = r[(prow, self.cols)].clone();
        }
        Some(x)
    }

    /// Left inverse L with L · self = identity, for full column rank.
    pub fn left_inverse(&self) -> Result<Self> {
        let mut aug = Mat::zeros(self.rows, self.cols + self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self[(i, j)].clone());
            }
            aug.set(i, self.cols + i, T::one());
        }
        let (r, pivots) = aug.rref();
        let rank = pivots.iter().filter(|&&c| c < self.cols).count();
        if rank != self.cols {
            return Err(Error::RankDeficient {
                rank,
                expected: self.cols,
                context: "left inverse".into(),
            });
        }
        let mut l = Mat::zeros(self.cols, self.rows);
        for (prow, &pc) in pivots.iter().enumerate() {
            if pc < self.cols {
                for j in 0..self.rows {
                    l.set(pc, j, r[(prow, self.cols + j)].clone());
                }
            }
        }
        Ok(l)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        self.left_inverse()
    }

    /// Apply to a coordinate column: self · x.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.cols, "apply length mismatch");
        let mut out = vec![T::zero(); self.rows];
        for (i, j, v) in self.entries() {
            if !v.is_zero() && !x[j].is_zero() {
                out[i] = out[i].clone() + v.clone() * x[j].clone();
            }
        }
        out
    }

    /// Block diagonal of self and other.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Mat::zeros(self.rows + other.rows, self.cols + other.cols);
        for (i, j, v) in self.entries() {
            out.set(i, j, v.clone());
        }
        for (i, j, v) in other.entries() {
            out.set(self.rows + i, self.cols + j, v.clone());
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: Scalar + Conjugate> Mat<T> {
    /// Conjugate transpose; plain transpose over the reals.
    pub fn conj_transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }
}

impl<T> Index<(usize, usize)> for Mat<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for Mat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Add for Mat<T> {
    type Output = Mat<T>;

    fn add(self, rhs: Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "add shape");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .into_iter()
                .zip(rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<T: Scalar> Sub for Mat<T> {
    type Output = Mat<T>;

    fn sub(self, rhs: Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "sub shape");
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .into_iter()
                .zip(rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<T: Scalar> Neg for Mat<T> {
    type Output = Mat<T>;

    fn neg(self) -> Self {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.into_iter().map(|a| -a).collect(),
        }
    }
}

impl<T: Scalar> Mul for &Mat<T> {
    type Output = Mat<T>;

    fn mul(self, rhs: &Mat<T>) -> Mat<T> {
        self.mul_ref(rhs)
    }
}

impl<T: Scalar> Mul for Mat<T> {
    type Output = Mat<T>;

    fn mul(self, rhs: Mat<T>) -> Mat<T> {
        self.mul_ref(&rhs)
    }
}

impl<T: Scalar> fmt::Debug for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, gim, greal, rat, GaussRational, Rational};
    use proptest::prelude::*;

    type MatQ = Mat<Rational>;
    type MatG = Mat<GaussRational>;

    #[test]
    fn commutator_of_elementary_matrices() {
        // [E12, E21] = E11 - E22.
        let e12 = MatG::unit(2, 0, 1);
        let e21 = MatG::unit(2, 1, 0);
        let expected = MatG::unit(2, 0, 0) - MatG::unit(2, 1, 1);
        assert_eq!(e12.commutator(&e21).unwrap(), expected);
    }

    #[test]
    fn commutator_with_self_vanishes() {
        let a = MatG::from_rows(vec![
            vec![greal(1), gim(2)],
            vec![greal(-3), gim(1)],
        ])
        .unwrap();
        assert!(a.commutator(&a).unwrap().is_zero());
    }

    #[test]
    fn commutator_rejects_shape_mismatch() {
        let a = MatG::identity(2);
        let b = MatG::identity(3);
        assert!(a.commutator(&b).is_err());
    }

    #[test]
    fn trace_examples() {
        assert_eq!(MatG::identity(5).trace(), greal(5));
        assert_eq!(MatG::unit(3, 0, 1).trace(), greal(0));
    }

    #[test]
    fn conj_transpose_examples() {
        let m = MatG::from_rows(vec![vec![gim(1), greal(2)], vec![greal(0), gim(-1)]]).unwrap();
        let h = m.conj_transpose();
        assert_eq!(h[(0, 0)], gim(-1));
        assert_eq!(h[(1, 0)], greal(2));
        assert_eq!(h[(0, 1)], greal(0));
        // (iA)^* = -i A^* on a real matrix A.
        let a = MatG::from_rows(vec![vec![greal(1), greal(2)], vec![greal(3), greal(4)]]).unwrap();
        let ia = a.scale(&gim(1));
        assert_eq!(ia.conj_transpose(), a.transpose().scale(&gim(-1)));
    }

    #[test]
    fn rref_kernel_solve_round_trip() {
        let m = MatQ::from_rows(vec![
            vec![rat(1), rat(2), rat(3)],
            vec![rat(2), rat(4), rat(6)],
            vec![rat(1), rat(1), rat(1)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
        let ker = m.kernel();
        assert_eq!(ker.rows(), 1);
        for i in 0..ker.rows() {
            assert!(m.apply(ker.row(i)).iter().all(|x| x.is_zero()));
        }
        let rhs = vec![rat(6), rat(12), rat(3)];
        let x = m.solve(&rhs).unwrap();
        assert_eq!(m.apply(&x), rhs);
        assert!(m.solve(&[rat(1), rat(1), rat(1)]).is_none());
    }

    #[test]
    fn left_inverse_on_tall_matrix() {
        let m = MatQ::from_rows(vec![
            vec![rat(1), rat(0)],
            vec![rat(1), rat(1)],
            vec![rat(0), rat(2)],
        ])
        .unwrap();
        let l = m.left_inverse().unwrap();
        assert_eq!(&l * &m, MatQ::identity(2));
        let dependent = MatQ::from_rows(vec![
            vec![rat(1), rat(2)],
            vec![rat(2), rat(4)],
            vec![rat(3), rat(6)],
        ])
        .unwrap();
        assert!(dependent.left_inverse().is_err());
    }

    #[test]
    fn inverse_of_invertible() {
        let m = MatQ::from_rows(vec![
            vec![rat(2), rat(1)],
            vec![rat(1), rat(1)],
        ])
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, MatQ::identity(2));
        assert_eq!(inv[(0, 0)], rat(1));
        assert_eq!(inv[(0, 1)], rat(-1));
    }

    #[test]
    fn block_diag_shapes() {
        let d = MatQ::identity(2).block_diag(&MatQ::zeros(1, 3));
        assert_eq!((d.rows(), d.cols()), (3, 5));
        assert_eq!(d[(1, 1)], rat(1));
    }

    fn arb_matg(n: usize) -> impl Strategy<Value = MatG> {
        proptest::collection::vec((-6i64..=6, -6i64..=6), n * n).prop_map(move |v| {
            MatG::from_fn(n, n, |i, j| {
                let (re, im) = v[i * n + j];
                crate::scalar::gauss(rat(re), rat(im))
            })
        })
    }

    fn arb_matq(n: usize) -> impl Strategy<Value = MatQ> {
        proptest::collection::vec((-9i64..=9, 1i64..4), n * n).prop_map(move |v| {
            MatQ::from_fn(n, n, |i, j| {
                let (num, den) = v[i * n + j];
                frac(num, den)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn trace_is_cyclic(a in arb_matg(3), b in arb_matg(3)) {
            prop_assert_eq!((&a * &b).trace(), (&b * &a).trace());
        }

        #[test]
        fn commutator_trace_vanishes(a in arb_matg(3), b in arb_matg(3)) {
            prop_assert!(a.commutator(&b).unwrap().trace().is_zero());
        }

        #[test]
        fn jacobi_identity(a in arb_matg(3), b in arb_matg(3), c in arb_matg(3)) {
            let j = a.commutator(&b.commutator(&c).unwrap()).unwrap()
                + b.commutator(&c.commutator(&a).unwrap()).unwrap()
                + c.commutator(&a.commutator(&b).unwrap()).unwrap();
            prop_assert!(j.is_zero());
        }

        #[test]
        fn kernel_vectors_annihilate(m in arb_matq(4)) {
            let k = m.kernel();
            for i in 0..k.rows() {
                prop_assert!(m.apply(k.row(i)).iter().all(|x| x.is_zero()));
            }
            prop_assert_eq!(m.rank() + k.rows(), m.cols());
        }

        #[test]
        fn conj_transpose_is_antimultiplicative(a in arb_matg(3), b in arb_matg(3)) {
            prop_assert_eq!((&a * &b).conj_transpose(), &b.conj_transpose() * &a.conj_transpose());
        }
    }
}
