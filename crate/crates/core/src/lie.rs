//! Lie algebras of matrices with exact structure constants.
//!
//! An algebra is stored as an ordered basis of square Gaussian-rational
//! matrices together with the structure constants of the bracket in that
//! basis. Coordinates are always real rationals: the basis is a basis over ℝ,
//! also when the matrices themselves are complex.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::scalar::{times_i, Rational};
use crate::{Coord, EndoOp, GaussRational, MatN};

/// Fixture / report label for the realified complexification.
pub const NAME_SL_COMPLEX_REALIFIED: &str = "sl_complex_realified";

/// Sparse structure-constant table: `table[a][b]` lists the nonzero
/// coordinates of [e_a, e_b].
#[derive(Clone, Debug)]
pub struct StructureConstants {
    dim: usize,
    table: Vec<Vec<(usize, Rational)>>,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero coordinates of [e_a, e_b].
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Rational)] {
        &self.table[a * self.dim + b]
    }

    /// Dense accessor c_{ab}^k.
    pub fn c(&self, a: usize, b: usize, k: usize) -> Rational {
        self.bracket_basis(a, b)
            .iter()
            .find(|(i, _)| *i == k)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(Zero::zero)
    }
}

/// Real span inside coordinate space, held in reduced row echelon form so
/// equality of subspaces is plain equality of representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Mat<Rational>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_generators(ambient: usize, gens: &[Coord]) -> Self {
        for g in gens {
            assert_eq!(g.len(), ambient, "generator length mismatch");
        }
        let raw = Mat::from_fn(gens.len(), ambient, |i, j| gens[i][j].clone());
        let (r, pivots) = raw.rref();
        let rows = Mat::from_fn(pivots.len(), ambient, |i, j| r[(i, j)].clone());
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.rows()
    }

    /// Canonical generators (RREF rows).
    pub fn gens(&self) -> impl Iterator<Item = &[Rational]> {
        (0..self.dim()).map(|i| self.rows.row(i))
    }

    pub fn gen(&self, i: usize) -> &[Rational] {
        self.rows.row(i)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut v = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for j in 0..self.ambient {
                    v[j] = v[j].clone() - f.clone() * self.rows[(i, j)].clone();
                }
            }
        }
        v.iter().all(Zero::is_zero)
    }

    pub fn image_under(&self, op: &EndoOp) -> Subspace {
        let gens: Vec<Coord> = self.gens().map(|g| op.apply(g)).collect();
        Subspace::from_generators(self.ambient, &gens)
    }

    pub fn is_invariant_under(&self, op: &EndoOp) -> bool {
        self.gens().all(|g| self.contains(&op.apply(g)))
    }
}

/// A finite-dimensional real Lie algebra of n×n matrices.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    name: String,
    n: usize,
    basis: Vec<MatN>,
    sc: StructureConstants,
    flat: Mat<Rational>,
    left_inv: Mat<Rational>,
    complex_rotation: Option<EndoOp>,
}

/// Flatten a complex n×n matrix into 2n² real coordinates (all real parts,
/// then all imaginary parts, row-major).
pub fn vectorize(m: &MatN) -> Coord {
    let n2 = m.rows() * m.cols();
    let mut v = vec![Rational::zero(); 2 * n2];
    for (i, j, x) in m.entries() {
        v[i * m.cols() + j] = x.re.clone();
        v[n2 + i * m.cols() + j] = x.im.clone();
    }
    v
}

/// Build an algebra from an independent spanning set closed under bracket.
pub fn build_algebra(name: &str, n: usize, basis: Vec<MatN>) -> Result<LieAlgebra> {
    let dim = basis.len();
    for (idx, b) in basis.iter().enumerate() {
        if b.rows() != n || b.cols() != n {
            return Err(Error::Dimension(format!(
                "basis element {idx} is {}x{}, expected {n}x{n}",
                b.rows(),
                b.cols()
            )));
        }
    }
    let flat = Mat::from_fn(2 * n * n, dim, |i, j| vectorize(&basis[j])[i].clone());
    let left_inv = flat.left_inverse().map_err(|e| match e {
        Error::RankDeficient { rank, expected, .. } => Error::RankDeficient {
            rank,
            expected,
            context: "basis is linearly dependent over the reals".into(),
        },
        other => other,
    })?;

    let mut table = vec![Vec::new(); dim * dim];
    for a in 0..dim {
        for b in (a + 1)..dim {
            let com = basis[a].commutator(&basis[b])?;
            let coords =
                coords_in(&flat, &left_inv, &com).ok_or(Error::NotClosed { a, b })?;
            let sparse: Vec<(usize, Rational)> = coords
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k, v.clone()))
                .collect();
            table[b * dim + a] = sparse.iter().map(|(k, v)| (*k, -v.clone())).collect();
            table[a * dim + b] = sparse;
        }
    }

    Ok(LieAlgebra {
        name: name.to_string(),
        n,
        basis,
        sc: StructureConstants { dim, table },
        flat,
        left_inv,
        complex_rotation: None,
    })
}

fn coords_in(flat: &Mat<Rational>, left_inv: &Mat<Rational>, m: &MatN) -> Option<Coord> {
    let v = vectorize(m);
    let x = left_inv.apply(&v);
    if flat.apply(&x) == v {
        Some(x)
    } else {
        None
    }
}

impl LieAlgebra {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Matrix size of the carrier representation.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MatN] {
        &self.basis
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.sc
    }

    /// Multiplication-by-i operator in basis coordinates, present exactly on
    /// realified algebras.
    pub fn complex_rotation(&self) -> Option<&EndoOp> {
        self.complex_rotation.as_ref()
    }

    /// Coordinates of a matrix in the algebra basis.
    pub fn coords_of(&self, m: &MatN) -> Result<Coord> {
        if m.rows() != self.n || m.cols() != self.n {
            return Err(Error::Dimension(format!(
                "expected {0}x{0} matrix",
                self.n
            )));
        }
        coords_in(&self.flat, &self.left_inv, m)
            .ok_or_else(|| Error::Domain("matrix is not in the span of the basis".into()))
    }

    /// Rebuild the matrix Σ x_a e_a from coordinates.
    pub fn matrix_of(&self, x: &[Rational]) -> MatN {
        assert_eq!(x.len(), self.dim(), "coordinate length mismatch");
        let mut out = MatN::zeros(self.n, self.n);
        for (a, c) in x.iter().enumerate() {
            if !c.is_zero() {
                let g = GaussRational::new(c.clone(), Rational::zero());
                out = out + self.basis[a].scale(&g);
            }
        }
        out
    }

    /// Bracket of coordinate vectors through the structure constants.
    pub fn bracket_coords(&self, x: &[Rational], y: &[Rational]) -> Coord {
        let dim = self.dim();
        assert_eq!(x.len(), dim, "bracket lhs length");
        assert_eq!(y.len(), dim, "bracket rhs length");
        let xs: Vec<usize> = (0..dim).filter(|&a| !x[a].is_zero()).collect();
        let ys: Vec<usize> = (0..dim).filter(|&b| !y[b].is_zero()).collect();
        let mut out = vec![Rational::zero(); dim];
        for &a in &xs {
            for &b in &ys {
                if a == b {
                    continue;
                }
                let f = x[a].clone() * y[b].clone();
                for (k, c) in self.sc.bracket_basis(a, b) {
                    out[*k] = out[*k].clone() + f.clone() * c.clone();
                }
            }
        }
        out
    }

    /// ad(e_a) as a coordinate operator.
    pub fn ad_basis(&self, a: usize) -> EndoOp {
        let dim = self.dim();
        let mut m = EndoOp::zeros(dim, dim);
        for b in 0..dim {
            for (k, c) in self.sc.bracket_basis(a, b) {
                m[(*k, b)] = c.clone();
            }
        }
        m
    }

    /// ad(x) for an arbitrary coordinate vector.
    pub fn ad_of(&self, x: &[Rational]) -> EndoOp {
        let dim = self.dim();
        let mut m = EndoOp::zeros(dim, dim);
        for a in 0..dim {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..dim {
                for (k, c) in self.sc.bracket_basis(a, b) {
                    m[(*k, b)] = m[(*k, b)].clone() + x[a].clone() * c.clone();
                }
            }
        }
        m
    }

    /// The same algebra over ℝ with the basis doubled by i-multiples:
    /// (e_1, …, e_d, i·e_1, …, i·e_d). Fails with a rank error when the
    /// doubled set is dependent, i.e. when the span was already closed
    /// under multiplication by i.
    pub fn realify(&self, new_name: &str) -> Result<LieAlgebra> {
        let d = self.dim();
        let mut basis = self.basis.clone();
        basis.extend(self.basis.iter().map(|b| b.map(times_i)));

        let flat = Mat::from_fn(2 * self.n * self.n, 2 * d, |i, j| {
            vectorize(&basis[j])[i].clone()
        });
        let left_inv = flat.left_inverse().map_err(|e| match e {
            Error::RankDeficient { rank, expected, .. } => Error::RankDeficient {
                rank,
                expected,
                context: "doubled basis is dependent; the algebra is already realified".into(),
            },
            other => other,
        })?;

        // [e_a, i e_b] = i [e_a, e_b] and [i e_a, i e_b] = -[e_a, e_b], so the
        // doubled table follows from the base table without new solves.
        let dim = 2 * d;
        let mut table = vec![Vec::new(); dim * dim];
        for a in 0..d {
            for b in 0..d {
                let base = self.sc.bracket_basis(a, b);
                table[a * dim + b] = base.to_vec();
                table[a * dim + (d + b)] =
                    base.iter().map(|(k, c)| (d + k, c.clone())).collect();
                table[(d + a) * dim + b] =
                    base.iter().map(|(k, c)| (d + k, c.clone())).collect();
                table[(d + a) * dim + (d + b)] =
                    base.iter().map(|(k, c)| (*k, -c.clone())).collect();
            }
        }

        let mut rot = EndoOp::zeros(dim, dim);
        for a in 0..d {
            rot[(d + a, a)] = Rational::one();
            rot[(a, d + a)] = -Rational::one();
        }

        Ok(LieAlgebra {
            name: new_name.to_string(),
            n: self.n,
            basis,
            sc: StructureConstants { dim, table },
            flat,
            left_inv,
            complex_rotation: Some(rot),
        })
    }

    /// First bracket of subspace generators that escapes the subspace.
    pub fn closure_witness(&self, s: &Subspace) -> Option<(usize, usize, Coord)> {
        assert_eq!(s.ambient(), self.dim(), "subspace ambient mismatch");
        for i in 0..s.dim() {
            for j in (i + 1)..s.dim() {
                let br = self.bracket_coords(s.gen(i), s.gen(j));
                if !s.contains(&br) {
                    return Some((i, j, br));
                }
            }
        }
        None
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        self.closure_witness(s).is_none()
    }

    /// Materialize a closed subspace as an algebra of the same matrix size.
    pub fn subalgebra(&self, name: &str, s: &Subspace) -> Result<LieAlgebra> {
        if let Some((i, j, _)) = self.closure_witness(s) {
            return Err(Error::NotClosed { a: i, b: j });
        }
        let basis: Vec<MatN> = s.gens().map(|g| self.matrix_of(g)).collect();
        build_algebra(name, self.n, basis)
    }

    /// Exact Jacobi check over all index triples; O(dim³), test-sized inputs.
    pub fn jacobi_holds(&self) -> bool {
        let d = self.dim();
        let unit = |a: usize| {
            let mut v = vec![Rational::zero(); d];
            v[a] = Rational::one();
            v
        };
        for a in 0..d {
            for b in (a + 1)..d {
                let ab = self.bracket_coords(&unit(a), &unit(b));
                for c in (b + 1)..d {
                    let bc = self.bracket_coords(&unit(b), &unit(c));
                    let ca = self.bracket_coords(&unit(c), &unit(a));
                    let mut total = self.bracket_coords(&ab, &unit(c));
                    let t2 = self.bracket_coords(&bc, &unit(a));
                    let t3 = self.bracket_coords(&ca, &unit(b));
                    for k in 0..d {
                        total[k] = total[k].clone() + t2[k].clone() + t3[k].clone();
                    }
                    if total.iter().any(|v| !v.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

use num_traits::One;
