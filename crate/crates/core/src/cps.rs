//! Labeled bases of sl(2m−1,ℝ) and su(m,m−1) and the operator triples
//! (P, J, Q) that make them complex product structures.
//!
//! The basis splits into quadruples (U, V, S, T): one single-index quadruple
//! per j = 1..m−1 and one double-index quadruple per pair j < k < 2m−j. On
//! each quadruple the operators act by
//!
//! ```text
//! J: U ↦ V ↦ −U,  S ↦ T ↦ −S        P: U ↔ T,  V ↔ S        Q = J∘P
//! ```
//!
//! so P² = Q² = −J² = 1 and P, J, Q pairwise anticommute up to the sign
//! pattern of split quaternions. The parametric family replaces the U-side
//! of the single-index quadruples by an arbitrary basis Z¹..Z^{m−1} of the
//! abelian subalgebra 𝔷 = span{U^j}.

use std::fmt;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lie::{build_algebra, LieAlgebra, Subspace, NAME_SL_COMPLEX_REALIFIED};
use crate::mat::Mat;
use crate::scalar::{frac, gim, greal, rat, Rational};
use crate::{Coord, EndoOp, MatN};

pub const NAME_SL_REAL: &str = "sl_real";
pub const NAME_SU_PQ: &str = "su_pq";
/// Middle-strip carrier inside sl(2m−1,ℝ).
pub const NAME_GL_REAL: &str = "gl_real";
/// Middle-strip carrier inside su(m,m−1).
pub const NAME_U_PQ: &str = "u_pq";

/// Which real form the basis is built in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    SlReal,
    SuPQ,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::SlReal => NAME_SL_REAL,
            Family::SuPQ => NAME_SU_PQ,
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        match name {
            NAME_SL_REAL => Some(Family::SlReal),
            NAME_SU_PQ => Some(Family::SuPQ),
            _ => None,
        }
    }
}

/// Position of a basis element within its quadruple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Member {
    U,
    V,
    S,
    T,
}

pub const MEMBERS: [Member; 4] = [Member::U, Member::V, Member::S, Member::T];

impl Member {
    fn letter(self) -> char {
        match self {
            Member::U => 'U',
            Member::V => 'V',
            Member::S => 'S',
            Member::T => 'T',
        }
    }
}

/// Basis label: `U^j` (single index) or `U_j^k` (double index), with `im`
/// marking the i-copy on a realified algebra (printed `iU^j`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Label {
    pub member: Member,
    pub j: usize,
    pub k: Option<usize>,
    pub im: bool,
}

impl Label {
    pub fn single(member: Member, j: usize) -> Label {
        Label { member, j, k: None, im: false }
    }

    pub fn double(member: Member, j: usize, k: usize) -> Label {
        Label { member, j, k: Some(k), im: false }
    }

    pub fn imaginary_copy(mut self) -> Label {
        self.im = true;
        self
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im {
            write!(f, "i")?;
        }
        write!(f, "{}", self.member.letter())?;
        match self.k {
            None => write!(f, "^{}", self.j),
            Some(k) => write!(f, "_{}^{}", self.j, k),
        }
    }
}

/// 1-based elementary matrix E_r^c (entry 1 at row r, column c).
fn e1(n: usize, r: usize, c: usize) -> MatN {
    MatN::unit(n, r - 1, c - 1)
}

fn single_matrix(family: Family, m: usize, j: usize, member: Member) -> MatN {
    let n = 2 * m - 1;
    let cj = 2 * m - j;
    match family {
        Family::SlReal => match member {
            Member::U => e1(n, j, j) + e1(n, cj, cj) - e1(n, m, m).scale(&greal(2)),
            Member::V => e1(n, j, cj) - e1(n, cj, j),
            Member::S => e1(n, j, cj) + e1(n, cj, j),
            Member::T => e1(n, j, j) - e1(n, cj, cj),
        },
        Family::SuPQ => match member {
            Member::U => {
                (e1(n, j, j) + e1(n, cj, cj) - e1(n, m, m).scale(&greal(2))).scale(&gim(1))
            }
            Member::V => (e1(n, j, j) - e1(n, cj, cj)).scale(&gim(1)),
            Member::S => e1(n, j, cj) + e1(n, cj, j),
            Member::T => (e1(n, j, cj) - e1(n, cj, j)).scale(&gim(1)),
        },
    }
}

fn double_matrix(family: Family, m: usize, j: usize, k: usize, member: Member) -> MatN {
    let n = 2 * m - 1;
    let cj = 2 * m - j;
    match family {
        Family::SlReal => match member {
            Member::U => e1(n, j, k) - e1(n, k, j),
            Member::V => e1(n, k, cj) - e1(n, cj, k),
            Member::S => e1(n, k, cj) + e1(n, cj, k),
            Member::T => e1(n, j, k) + e1(n, k, j),
        },
        Family::SuPQ if k <= m => match member {
            Member::U => e1(n, j, k) - e1(n, k, j),
            Member::V => (e1(n, j, k) + e1(n, k, j)).scale(&gim(1)),
            Member::S => e1(n, k, cj) + e1(n, cj, k),
            Member::T => (e1(n, k, cj) - e1(n, cj, k)).scale(&gim(1)),
        },
        Family::SuPQ => match member {
            Member::U => e1(n, k, cj) - e1(n, cj, k),
            Member::V => (e1(n, k, cj) + e1(n, cj, k)).scale(&gim(1)),
            Member::S => -(e1(n, j, k) + e1(n, k, j)),
            Member::T => (e1(n, k, j) - e1(n, j, k)).scale(&gim(1)),
        },
    }
}

/// The ordered labeled basis: single-index quadruples for j = 1..m−1, then
/// double-index quadruples for j = 1..m−1, j < k < 2m−j, each in (U, V, S, T)
/// order.
#[derive(Clone, Debug)]
pub struct LabeledBasis {
    pub family: Family,
    pub m: usize,
    pub labels: Vec<Label>,
    pub mats: Vec<MatN>,
}

impl LabeledBasis {
    pub fn build(family: Family, m: usize) -> Result<LabeledBasis> {
        if m < 2 {
            return Err(Error::Domain(format!("need m >= 2, got {m}")));
        }
        let mut labels = Vec::new();
        let mut mats = Vec::new();
        for j in 1..m {
            for member in MEMBERS {
                labels.push(Label::single(member, j));
                mats.push(single_matrix(family, m, j, member));
            }
        }
        for j in 1..m {
            for k in j + 1..2 * m - j {
                for member in MEMBERS {
                    labels.push(Label::double(member, j, k));
                    mats.push(double_matrix(family, m, j, k, member));
                }
            }
        }
        debug_assert_eq!(labels.len(), 4 * m * m - 4 * m);
        Ok(LabeledBasis { family, m, labels, mats })
    }
}

#[derive(Clone, Debug)]
pub struct CpsTriple {
    pub p: EndoOp,
    pub j: EndoOp,
    pub q: EndoOp,
}

impl CpsTriple {
    /// The six relations P² = Q² = −J² = 1, JP = −PJ = Q, QP = −PQ = J,
    /// QJ = −JQ = P, checked exactly at matrix level.
    pub fn relations_hold(&self) -> bool {
        let id = EndoOp::identity(self.p.n());
        let (p, j, q) = (&self.p, &self.j, &self.q);
        p * p == id
            && q * q == id
            && j * j == -id.clone()
            && j * p == *q
            && (p * j).scale(&rat(-1)) == *q
            && q * p == *j
            && (p * q).scale(&rat(-1)) == *j
            && q * j == *p
            && (j * q).scale(&rat(-1)) == *p
    }
}

#[derive(Clone, Debug)]
pub struct HypercomplexTriple {
    pub j1: EndoOp,
    pub j2: EndoOp,
    pub j3: EndoOp,
}

/// Which embedded subalgebra to cut out of a structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strip {
    /// Labels with j ≥ 2: matrices supported away from the outer two
    /// rows/columns; carrier of the (m−1)-structure.
    Outer,
    /// Labels with k ≠ m: matrices with no off-diagonal entries in the
    /// middle row/column; carrier of gl(2m−2,ℝ) resp. u(m−1,m−1).
    Middle,
}

/// A complex product structure: the algebra, the operators, and the
/// bookkeeping connecting them to the labeled quadruples.
#[derive(Clone, Debug)]
pub struct Structure {
    family: Family,
    m: usize,
    labels: Vec<Label>,
    algebra: LieAlgebra,
    ops: CpsTriple,
    quads: Vec<[usize; 4]>,
    z_rows: Vec<Coord>,
}

impl Structure {
    /// Default structure (z-basis = the U^j themselves).
    pub fn build(family: Family, m: usize) -> Result<Structure> {
        if m < 2 {
            return Err(Error::Domain(format!("need m >= 2, got {m}")));
        }
        let dim = 4 * m * m - 4 * m;
        Structure::build_parametric(family, m, &identity_z_rows(m, dim))
    }

    /// Parametric structure for an arbitrary 𝔷-basis, given as ambient
    /// coordinate vectors supported on the U^j positions.
    pub fn build_parametric(family: Family, m: usize, z_rows: &[Coord]) -> Result<Structure> {
        let basis = LabeledBasis::build(family, m)?;
        Structure::from_basis(basis, z_rows)
    }

    pub fn from_basis(basis: LabeledBasis, z_rows: &[Coord]) -> Result<Structure> {
        let LabeledBasis { family, m, labels, mats } = basis;
        let dim = mats.len();
        let a = z_matrix(&labels, m, dim, z_rows)?;
        let algebra = build_algebra(family.name(), 2 * m - 1, mats)?;
        let quads: Vec<[usize; 4]> = (0..dim / 4)
            .map(|q| [4 * q, 4 * q + 1, 4 * q + 2, 4 * q + 3])
            .collect();
        let ops = operators(dim, m - 1, &quads, &a)?;
        Ok(Structure {
            family,
            m,
            labels,
            algebra,
            ops,
            quads,
            z_rows: z_rows.to_vec(),
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// Mutable access to the operator triple, for deliberately breaking a
    /// structure in tests and failure demonstrations.
    pub fn ops_mut(&mut self) -> &mut CpsTriple {
        &mut self.ops
    }

    pub fn ops(&self) -> &CpsTriple {
        &self.ops
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn quads(&self) -> &[[usize; 4]] {
        &self.quads
    }

    /// Ambient coordinates of the chosen 𝔷-basis Z¹..Z^{m−1}.
    pub fn z_rows(&self) -> &[Coord] {
        &self.z_rows
    }

    pub fn is_realified(&self) -> bool {
        self.algebra.complex_rotation().is_some()
    }

    /// Indices of single-index labels of one member kind; both blocks on a
    /// realified structure unless `im` filters them.
    pub fn single_indices(&self, member: Member, im: bool) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.k.is_none() && l.member == member && l.im == im)
            .map(|(i, _)| i)
            .collect()
    }

    /// Mask of all single-index coordinate positions.
    pub fn single_mask(&self) -> Vec<bool> {
        self.labels.iter().map(|l| l.k.is_none()).collect()
    }

    /// The abelian subalgebra 𝔷 = span{U^j} (real block only).
    pub fn z_subspace(&self) -> Subspace {
        Subspace::from_generators(self.algebra.dim(), &self.z_rows)
    }

    /// View the structure on 𝔤 as a structure on 𝔤^ℂ seen as a real algebra:
    /// the basis doubles by the i-copies and P, J extend i-linearly.
    pub fn complexified(&self) -> Result<Structure> {
        let algebra = self.algebra.realify(NAME_SL_COMPLEX_REALIFIED)?;
        let dim = self.algebra.dim();
        let p = self.ops.p.block_diag(&self.ops.p);
        let j = self.ops.j.block_diag(&self.ops.j);
        let q = &j * &p;
        let ops = CpsTriple { p, j, q };
        if !ops.relations_hold() {
            return Err(Error::Construction(
                "extended operators violate the quadruple relations".into(),
            ));
        }
        let mut labels = self.labels.clone();
        labels.extend(self.labels.iter().map(|l| l.imaginary_copy()));
        let mut quads = self.quads.clone();
        quads.extend(self.quads.iter().map(|q| q.map(|i| i + dim)));
        let z_rows = self
            .z_rows
            .iter()
            .map(|r| {
                let mut row = r.clone();
                row.resize(2 * dim, Rational::zero());
                row
            })
            .collect();
        Ok(Structure {
            family: self.family,
            m: self.m,
            labels,
            algebra,
            ops,
            quads,
            z_rows,
        })
    }

    /// Hypercomplex triple on a realified structure: J1 = J, J2 = I∘P with I
    /// the rotation X ↦ iX, J3 = J1∘J2. The quaternion relations are
    /// re-verified, not assumed.
    pub fn induce_hypercomplex(&self) -> Result<HypercomplexTriple> {
        let rot = self.algebra.complex_rotation().ok_or_else(|| {
            Error::Domain(
                "hypercomplex induction needs a realified algebra carrying X ↦ iX".into(),
            )
        })?;
        let j1 = self.ops.j.clone();
        let j2 = rot * &self.ops.p;
        let j3 = &j1 * &j2;
        let id = EndoOp::identity(j1.n());
        let minus_id = -id;
        let quaternionic = &j1 * &j1 == minus_id
            && &j2 * &j2 == minus_id
            && &j3 * &j3 == minus_id
            && &j1 * &j2 == j3
            && (&j2 * &j1).scale(&rat(-1)) == j3;
        if !quaternionic {
            return Err(Error::Construction(
                "induced triple violates the quaternion relations".into(),
            ));
        }
        Ok(HypercomplexTriple { j1, j2, j3 })
    }

    /// Coordinate indices of the labels kept by a strip, in basis order.
    pub fn strip_indices(&self, strip: Strip) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| match strip {
                Strip::Outer => l.j >= 2,
                Strip::Middle => l.k != Some(self.m),
            })
            .map(|(i, _)| i)
            .collect()
    }

    pub fn strip_subspace(&self, strip: Strip) -> Subspace {
        let dim = self.algebra.dim();
        let gens: Vec<Coord> = self
            .strip_indices(strip)
            .into_iter()
            .map(|i| {
                let mut v = vec![Rational::zero(); dim];
                v[i] = rat(1);
                v
            })
            .collect();
        Subspace::from_generators(dim, &gens)
    }
}

fn identity_z_rows(m: usize, dim: usize) -> Vec<Coord> {
    (0..m - 1)
        .map(|i| {
            let mut row = vec![Rational::zero(); dim];
            row[4 * i] = rat(1);
            row
        })
        .collect()
}

/// Extract and validate the (m−1)×(m−1) coefficient matrix A with
/// Z^i = Σ_l A[i][l]·U^l from ambient coordinate rows.
fn z_matrix(labels: &[Label], m: usize, dim: usize, z_rows: &[Coord]) -> Result<Mat<Rational>> {
    let k = m - 1;
    if z_rows.len() != k {
        return Err(Error::Dimension(format!(
            "z-basis needs {k} vectors, got {}",
            z_rows.len()
        )));
    }
    let u_pos: Vec<usize> = labels
        .iter()
        .enumerate()
        .filter(|(_, l)| l.k.is_none() && l.member == Member::U && !l.im)
        .map(|(i, _)| i)
        .collect();
    let mut a = Mat::zeros(k, k);
    for (i, row) in z_rows.iter().enumerate() {
        if row.len() != dim {
            return Err(Error::Dimension(format!(
                "z-basis vector {i} has length {}, ambient dimension is {dim}",
                row.len()
            )));
        }
        for (pos, v) in row.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            match u_pos.iter().position(|&u| u == pos) {
                Some(l) => a.set(i, l, v.clone()),
                None => {
                    return Err(Error::Domain(format!(
                        "z-basis vector {i} escapes span{{U^j}} at coordinate {pos}"
                    )))
                }
            }
        }
    }
    if a.rank() != k {
        return Err(Error::RankDeficient {
            rank: a.rank(),
            expected: k,
            context: "z-basis inside span{U^j}".into(),
        });
    }
    Ok(a)
}

/// Assemble P and J from the quadruple rules, with the single-index U-side
/// replaced by the z-basis with coefficient matrix `a`.
fn operators(
    dim: usize,
    singles: usize,
    quads: &[[usize; 4]],
    a: &Mat<Rational>,
) -> Result<CpsTriple> {
    let at = a.transpose();
    let b = at.inverse()?;
    let mut p = EndoOp::zeros(dim, dim);
    let mut j = EndoOp::zeros(dim, dim);
    // Singles: J(Z^i) = V^i, J(V^i) = −Z^i, P(Z^i) = T^i, P(T^i) = Z^i,
    // with Z^i = Σ_l A[i][l] U^l; S, T behave as in the double quadruples.
    for i in 0..singles {
        let [_, vi, si, ti] = quads[i];
        for l in 0..singles {
            let ul = quads[l][0];
            j[(vi, ul)] = b[(i, l)].clone();
            j[(ul, vi)] = -at[(l, i)].clone();
            p[(ti, ul)] = b[(i, l)].clone();
            p[(ul, ti)] = at[(l, i)].clone();
        }
        j[(ti, si)] = rat(1);
        j[(si, ti)] = rat(-1);
        p[(si, vi)] = rat(1);
        p[(vi, si)] = rat(1);
    }
    for &[u, v, s, t] in &quads[singles..] {
        j[(v, u)] = rat(1);
        j[(u, v)] = rat(-1);
        j[(t, s)] = rat(1);
        j[(s, t)] = rat(-1);
        p[(t, u)] = rat(1);
        p[(u, t)] = rat(1);
        p[(s, v)] = rat(1);
        p[(v, s)] = rat(1);
    }
    let q = &j * &p;
    let triple = CpsTriple { p, j, q };
    if !triple.relations_hold() {
        return Err(Error::Construction(
            "operators violate the quadruple relations".into(),
        ));
    }
    Ok(triple)
}

/// Deterministic pseudo-random 𝔷-basis: seed expands to an (m−1)² integer
/// matrix with entries in [−3, 3], retried until invertible. Needs m >= 2.
pub fn seeded_z_basis(m: usize, seed: u64) -> Vec<Coord> {
    assert!(m >= 2, "need m >= 2, got {m}");
    let k = m - 1;
    let dim = 4 * m * m - 4 * m;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let a = Mat::from_fn(k, k, |_, _| rat(rng.gen_range(-3i64..=3)));
        if a.rank() == k {
            return (0..k)
                .map(|i| {
                    let mut row = vec![Rational::zero(); dim];
                    for l in 0..k {
                        row[4 * l] = a[(i, l)].clone();
                    }
                    row
                })
                .collect();
        }
    }
}

/// A 𝔷-basis with ⟨Z^i, Z^j⟩ = −δ_ij on su(m,m−1), which exists over the
/// rationals exactly when 2m−1 is a perfect square: Z = (1 − c·ones)·U with
/// c = (r+1)/(r(m−1)), r = √(2m−1).
pub fn unit_gram_z_basis(m: usize) -> Option<Vec<Coord>> {
    let n = (2 * m - 1) as i64;
    let r = (n as f64).sqrt().round() as i64;
    if r * r != n {
        return None;
    }
    let k = m - 1;
    let dim = 4 * m * m - 4 * m;
    let c = frac(r + 1, r * k as i64);
    Some(
        (0..k)
            .map(|i| {
                let mut row = vec![Rational::zero(); dim];
                for l in 0..k {
                    row[4 * l] = if l == i { rat(1) - c.clone() } else { -c.clone() };
                }
                row
            })
            .collect(),
    )
}
