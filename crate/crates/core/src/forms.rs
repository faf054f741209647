//! Symmetric bilinear forms: Killing form, trace form, exact signature.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lie::{LieAlgebra, Subspace};
use crate::mat::Mat;
use crate::scalar::{expect_real, frac, Rational};
use crate::Coord;

/// Symmetric bilinear form on basis coordinates, stored as its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymForm {
    gram: Mat<Rational>,
}

/// Inertia triple of a real symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub null: usize,
}

impl std::fmt::Display for Signature {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.pos, self.neg, self.null)
    }
}

impl SymForm {
    pub fn new(gram: Mat<Rational>) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Dimension("Gram matrix must be square".into()));
        }
        if gram != gram.transpose() {
            return Err(Error::Domain("Gram matrix is not symmetric".into()));
        }
        Ok(SymForm { gram })
    }

    pub fn dim(&self) -> usize {
        self.gram.n()
    }

    pub fn gram(&self) -> &Mat<Rational> {
        &self.gram
    }

    pub fn evaluate(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let gx = self.gram.apply(x);
        let mut acc = Rational::zero();
        for (a, b) in gx.iter().zip(y) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    /// Pull back onto a subspace (Gram in the subspace's canonical basis).
    pub fn restrict(&self, s: &Subspace) -> SymForm {
        assert_eq!(s.ambient(), self.dim(), "restriction ambient mismatch");
        let d = s.dim();
        let gens: Vec<Coord> = s.gens().map(<[Rational]>::to_vec).collect();
        let gram = Mat::from_fn(d, d, |i, j| self.evaluate(&gens[i], &gens[j]));
        SymForm { gram }
    }

    pub fn is_degenerate(&self) -> bool {
        self.gram.rank() < self.dim()
    }

    /// Exact inertia by symmetric (congruence) elimination.
    ///
    /// Diagonal pivots are consumed one at a time; when the remaining block
    /// has an all-zero diagonal, a nonzero off-diagonal entry spans a
    /// hyperbolic pair contributing (+1, −1); a vanishing block is the radical.
    pub fn signature(&self) -> Signature {
        let mut m = self.gram.clone();
        let d = self.dim();
        let mut live: Vec<usize> = (0..d).collect();
        let (mut pos, mut neg) = (0, 0);

        while !live.is_empty() {
            if let Some(pi) = live.iter().position(|&i| !m[(i, i)].is_zero()) {
                let p = live.remove(pi);
                let pivot = m[(p, p)].clone();
                if pivot.is_positive() {
                    pos += 1;
                } else {
                    neg += 1;
                }
                for &r in &live {
                    if m[(r, p)].is_zero() {
                        continue;
                    }
                    let f = m[(r, p)].clone() / pivot.clone();
                    for &c in &live {
                        let v = m[(r, c)].clone() - f.clone() * m[(p, c)].clone();
                        m.set(r, c, v);
                    }
                }
                continue;
            }

            // Zero diagonal: look for a hyperbolic pair.
            let mut pair = None;
            'outer: for (ai, &a) in live.iter().enumerate() {
                for &b in &live[ai + 1..] {
                    if !m[(a, b)].is_zero() {
                        pair = Some((a, b));
                        break 'outer;
                    }
                }
            }
            let Some((a, b)) = pair else {
                break; // all-zero block: the radical
            };
            pos += 1;
            neg += 1;
            let w = m[(a, b)].clone();
            live.retain(|&i| i != a && i != b);
            // Eliminate against the 2x2 block [[0, w], [w, 0]].
            let coeffs: Vec<(usize, Rational, Rational)> = live
                .iter()
                .map(|&r| {
                    (
                        r,
                        m[(r, a)].clone() / w.clone(),
                        m[(r, b)].clone() / w.clone(),
                    )
                })
                .collect();
            for &(r, ref fa, ref fb) in &coeffs {
                for &(c, ref ga, ref gb) in &coeffs {
                    // row_r -= fb*row_a + fa*row_b (and symmetrically for columns):
                    // the residual entry is m[r][c] - fb*m[a][c] - fa*m[b][c]
                    // with m[a][c] = w*gb and m[b][c] = w*ga after symmetry.
                    let v = m[(r, c)].clone()
                        - fb.clone() * w.clone() * ga.clone()
                        - fa.clone() * w.clone() * gb.clone();
                    m.set(r, c, v);
                }
            }
        }

        Signature {
            pos,
            neg,
            null: d - pos - neg,
        }
    }

    pub fn is_neutral(&self) -> bool {
        let s = self.signature();
        s.pos == s.neg && s.null == 0
    }
}

/// Killing form B(x, y) = tr(ad x ∘ ad y), from structure constants alone.
pub fn killing_form(alg: &LieAlgebra) -> SymForm {
    let d = alg.dim();
    // ad matrices are sparse (a handful of entries per column); keeping only
    // the nonzero triples makes the d² trace products cheap.
    let ads: Vec<Mat<Rational>> = (0..d).map(|a| alg.ad_basis(a)).collect();
    let sparse: Vec<Vec<(usize, usize, &Rational)>> = ads
        .iter()
        .map(|m| m.entries().filter(|(_, _, v)| !v.is_zero()).collect())
        .collect();
    let mut gram = Mat::zeros(d, d);
    for a in 0..d {
        for b in a..d {
            let mut t = Rational::zero();
            for &(i, j, v) in &sparse[a] {
                let w = &ads[b][(j, i)];
                if !w.is_zero() {
                    t += v * w;
                }
            }
            gram.set(a, b, t.clone());
            gram.set(b, a, t);
        }
    }
    SymForm { gram }
}

/// Trace form ⟨x, y⟩ = ½ tr(XY) on the carrier matrices.
///
/// With `real_part_only` the real part is taken (the form K on realified
/// algebras); otherwise any nonzero imaginary part in a Gram entry is an
/// error.
pub fn trace_form(alg: &LieAlgebra, real_part_only: bool) -> Result<SymForm> {
    let d = alg.dim();
    let half = frac(1, 2);
    let mut gram = Mat::zeros(d, d);
    for a in 0..d {
        for b in a..d {
            let t = (&alg.basis()[a] * &alg.basis()[b]).trace();
            let re = if real_part_only {
                t.re
            } else {
                expect_real(&t, &format!("trace form entry ({a}, {b})"))?
            };
            let v = half.clone() * re;
            gram.set(a, b, v.clone());
            gram.set(b, a, v);
        }
    }
    Ok(SymForm { gram })
}

/// B(x, ·) ad-invariance residual B([z,x], y) + B(x, [z,y]) for one triple.
pub fn ad_invariance_residual(
    alg: &LieAlgebra,
    form: &SymForm,
    z: &[Rational],
    x: &[Rational],
    y: &[Rational],
) -> Rational {
    let zx = alg.bracket_coords(z, x);
    let zy = alg.bracket_coords(z, y);
    form.evaluate(&zx, y) + form.evaluate(x, &zy)
}
