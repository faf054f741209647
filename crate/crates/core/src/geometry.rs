//! Biinvariant pseudo-Riemannian geometry.
//!
//! For a biinvariant metric the Levi-Civita connection is ∇_X Y = ½[X,Y] and
//! the curvature collapses to R(X,Y)Z = −¼[[X,Y],Z]; Ricci contracts to
//! −¼ of the Killing form, so every nondegenerate biinvariant metric
//! proportional to Killing is Einstein. Components are computed on demand
//! from the structure constants; nothing of size dim⁴ is ever stored.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::forms::SymForm;
use crate::lie::LieAlgebra;
use crate::mat::Mat;
use crate::scalar::{frac, Rational};
use crate::Coord;

/// Lazy view of R(X,Y)Z = −¼[[X,Y],Z] in basis coordinates.
pub struct CurvatureTensor<'a> {
    alg: &'a LieAlgebra,
}

pub fn curvature_biinvariant(alg: &LieAlgebra) -> CurvatureTensor<'_> {
    CurvatureTensor { alg }
}

impl CurvatureTensor<'_> {
    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    fn unit(&self, a: usize) -> Coord {
        let mut v = vec![Rational::zero(); self.alg.dim()];
        v[a] = Rational::from_integer(1.into());
        v
    }

    /// Coordinates of R(e_a, e_b) e_c.
    pub fn component(&self, a: usize, b: usize, c: usize) -> Coord {
        self.apply(&self.unit(a), &self.unit(b), &self.unit(c))
    }

    /// Coordinates of R(x, y) z.
    pub fn apply(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Coord {
        let xy = self.alg.bracket_coords(x, y);
        let quarter = frac(-1, 4);
        self.alg
            .bracket_coords(&xy, z)
            .into_iter()
            .map(|v| v * quarter.clone())
            .collect()
    }

    /// First index triple with a nonzero component, scanning in order.
    pub fn nonzero_witness(&self) -> Option<(usize, usize, usize)> {
        let d = self.alg.dim();
        for a in 0..d {
            for b in a + 1..d {
                if self.alg.structure().bracket_basis(a, b).is_empty() {
                    continue;
                }
                for c in 0..d {
                    if self.component(a, b, c).iter().any(|v| !v.is_zero()) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// R(X,Y)Z + R(Y,Z)X + R(Z,X)Y for one basis triple.
    pub fn bianchi_residual(&self, a: usize, b: usize, c: usize) -> Coord {
        let mut acc = self.component(a, b, c);
        for (p, q, r) in [(b, c, a), (c, a, b)] {
            for (i, v) in self.component(p, q, r).into_iter().enumerate() {
                acc[i] += v;
            }
        }
        acc
    }

    /// Pair antisymmetry residual R(e_a,e_b)e_c + R(e_b,e_a)e_c.
    pub fn antisymmetry_residual(&self, a: usize, b: usize, c: usize) -> Coord {
        let mut acc = self.component(a, b, c);
        for (i, v) in self.component(b, a, c).into_iter().enumerate() {
            acc[i] += v;
        }
        acc
    }
}

/// Ricci form Ric(X,Y) = tr(Z ↦ R(Z,X)Y), streamed one basis pair at a time.
pub fn ricci_biinvariant(alg: &LieAlgebra) -> SymForm {
    let d = alg.dim();
    let r = curvature_biinvariant(alg);
    let mut gram = Mat::zeros(d, d);
    for a in 0..d {
        for b in a..d {
            let mut t = Rational::zero();
            for c in 0..d {
                t += r.component(c, a, b).swap_remove(c);
            }
            gram.set(a, b, t.clone());
            gram.set(b, a, t);
        }
    }
    SymForm::new(gram).expect("Ricci Gram is symmetric by construction")
}

/// The constant λ with `ric` = λ·`metric`, exact entrywise.
pub fn proportionality_constant(ric: &SymForm, metric: &SymForm) -> Result<Rational> {
    if metric.dim() != ric.dim() {
        return Err(Error::Dimension("metric dimension mismatch".into()));
    }
    if metric.is_degenerate() {
        return Err(Error::Degenerate(
            "einstein constant needs a nondegenerate metric".into(),
        ));
    }
    let d = metric.dim();
    let mut lambda: Option<Rational> = None;
    for a in 0..d {
        for b in a..d {
            let g = &metric.gram()[(a, b)];
            let r = &ric.gram()[(a, b)];
            if g.is_zero() {
                if !r.is_zero() {
                    return Err(Error::NotEinstein { row: a, col: b });
                }
                continue;
            }
            let ratio = r.clone() / g.clone();
            match &lambda {
                None => lambda = Some(ratio),
                Some(l) if *l == ratio => {}
                Some(_) => return Err(Error::NotEinstein { row: a, col: b }),
            }
        }
    }
    // A nondegenerate Gram matrix has a nonzero entry, so λ was set.
    Ok(lambda.expect("nondegenerate metric has a nonzero entry"))
}

/// The constant λ with Ric = λ·metric for the bi-invariant connection.
pub fn einstein_constant(alg: &LieAlgebra, metric: &SymForm) -> Result<Rational> {
    if metric.dim() != alg.dim() {
        return Err(Error::Dimension("metric dimension mismatch".into()));
    }
    proportionality_constant(&ricci_biinvariant(alg), metric)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cps::{Family, Structure};
    use crate::forms::{killing_form, trace_form, Signature};
    use crate::lie::build_algebra;
    use crate::scalar::rat;
    use crate::MatN;

    fn su2_structure() -> Structure {
        Structure::build(Family::SuPQ, 2).unwrap()
    }

    #[test]
    fn curvature_of_abelian_is_zero() {
        let g = build_algebra(
            "ab",
            2,
            vec![MatN::unit(2, 0, 0), MatN::unit(2, 1, 1)],
        )
        .unwrap();
        let r = curvature_biinvariant(&g);
        assert!(r.nonzero_witness().is_none());
        assert!(ricci_biinvariant(&g).gram().is_zero());
    }

    #[test]
    fn sl3_is_nonflat_with_exact_identities() {
        let s = Structure::build(Family::SlReal, 2).unwrap();
        let g = s.algebra();
        let r = curvature_biinvariant(g);
        assert!(r.nonzero_witness().is_some());
        let d = g.dim();
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    assert!(r.bianchi_residual(a, b, c).iter().all(Zero::is_zero));
                    assert!(r.antisymmetry_residual(a, b, c).iter().all(Zero::is_zero));
                }
            }
        }
    }

    #[test]
    fn ricci_is_minus_quarter_killing_on_su21() {
        let s = su2_structure();
        let ric = ricci_biinvariant(s.algebra());
        let b = killing_form(s.algebra());
        assert_eq!(*ric.gram(), b.gram().scale(&frac(-1, 4)));
    }

    #[test]
    fn einstein_constants_on_su21() {
        let s = su2_structure();
        let g = s.algebra();
        let b = killing_form(g);
        assert_eq!(einstein_constant(g, &b).unwrap(), frac(-1, 4));
        // ⟨X,Y⟩ = ½tr(XY): λ = −(2m−1) = −3.
        let t = trace_form(g, false).unwrap();
        assert_eq!(einstein_constant(g, &t).unwrap(), rat(-3));
        assert_eq!(t.signature(), Signature { pos: 4, neg: 4, null: 0 });
    }

    #[test]
    fn einstein_constant_rejects_tampered_metric() {
        let s = su2_structure();
        let t = trace_form(s.algebra(), false).unwrap();
        let mut gram = t.gram().clone();
        gram.set(0, 0, gram[(0, 0)].clone() * rat(5));
        let tampered = SymForm::new(gram).unwrap();
        assert!(matches!(
            einstein_constant(s.algebra(), &tampered),
            Err(Error::NotEinstein { .. })
        ));
    }

    #[test]
    fn einstein_constant_rejects_degenerate_metric() {
        let s = su2_structure();
        let zero = SymForm::new(Mat::zeros(8, 8)).unwrap();
        assert!(matches!(
            einstein_constant(s.algebra(), &zero),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn metric_compatibility_of_curvature() {
        // g(R(X,Y)Z, W) + g(Z, R(X,Y)W) = 0 for the Killing metric.
        let s = su2_structure();
        let g = s.algebra();
        let b = killing_form(g);
        let r = curvature_biinvariant(g);
        let d = g.dim();
        let unit = |i: usize| {
            let mut v = vec![rat(0); d];
            v[i] = rat(1);
            v
        };
        for a in 0..d {
            for bb in a + 1..d {
                for c in 0..d {
                    for w in c..d {
                        let left = b.evaluate(&r.component(a, bb, c), &unit(w));
                        let right = b.evaluate(&unit(c), &r.component(a, bb, w));
                        assert!((left + right).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn koszul_cross_check_at_m2() {
        // 2g(∇_X Y, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y) must confirm
        // ∇ = ½[·,·] for the biinvariant (ad-invariant) metric.
        let s = su2_structure();
        let g = s.algebra();
        let b = killing_form(g);
        let d = g.dim();
        let unit = |i: usize| {
            let mut v = vec![rat(0); d];
            v[i] = rat(1);
            v
        };
        for x in 0..d {
            for y in 0..d {
                let nabla = g
                    .bracket_coords(&unit(x), &unit(y))
                    .into_iter()
                    .map(|v| v * frac(1, 2))
                    .collect::<Vec<_>>();
                for z in 0..d {
                    let lhs = b.evaluate(&nabla, &unit(z)) * rat(2);
                    let rhs = b.evaluate(&g.bracket_coords(&unit(x), &unit(y)), &unit(z))
                        - b.evaluate(&g.bracket_coords(&unit(y), &unit(z)), &unit(x))
                        + b.evaluate(&g.bracket_coords(&unit(z), &unit(x)), &unit(y));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
