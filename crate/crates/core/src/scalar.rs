//! Scalar types and their canonical string form.
//!
//! All arithmetic in this crate is exact. Real quantities are arbitrary
//! precision rationals, complex quantities are Gaussian rationals a + b·i with
//! rational a, b. The canonical string form (used by fixtures and witnesses) is
//! `a/b` for reals and `a/b+c/d*i` / `a/b-c/d*i` for proper complex values,
//! always in lowest terms with a positive denominator and no spaces.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};

use crate::error::{Error, Result};

/// Exact real scalar.
pub type Rational = BigRational;

/// Exact complex scalar a + b·i with rational a, b.
pub type GaussRational = Complex<Rational>;

/// Field bounds needed by the generic matrix layer.
///
/// Both exact instantiations ([`Rational`], [`GaussRational`]) satisfy this,
/// as do the machine floats, although the crate never instantiates those.
pub trait Scalar:
    Clone + Num + Neg<Output = Self> + Debug + Display + Send + Sync + 'static
{
}

impl<T> Scalar for T where
    T: Clone + Num + Neg<Output = Self> + Debug + Display + Send + Sync + 'static
{
}

/// Complex conjugation, trivial on real scalars.
pub trait Conjugate {
    fn conj(&self) -> Self;
}

impl Conjugate for Rational {
    fn conj(&self) -> Self {
        self.clone()
    }
}

impl Conjugate for GaussRational {
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }
}

/// The integer n as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction n/d in lowest terms. Panics on d = 0.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Real Gaussian rational n + 0·i.
pub fn greal(n: i64) -> GaussRational {
    Complex::new(rat(n), rat(0))
}

/// Imaginary Gaussian rational 0 + n·i.
pub fn gim(n: i64) -> GaussRational {
    Complex::new(rat(0), rat(n))
}

/// a + b·i from rational parts.
pub fn gauss(re: Rational, im: Rational) -> GaussRational {
    Complex::new(re, im)
}

/// Embed a rational into the Gaussian rationals.
pub fn real_to_gauss(r: &Rational) -> GaussRational {
    Complex::new(r.clone(), rat(0))
}

/// Canonical `a/b` form. BigRational keeps lowest terms and a positive
/// denominator as invariants, so formatting numerator/denominator directly is
/// already canonical.
pub fn format_rational(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Canonical Gaussian form: `a/b` when the imaginary part vanishes, otherwise
/// `a/b+c/d*i` or `a/b-c/d*i` with c/d > 0.
pub fn format_gauss(x: &GaussRational) -> String {
    if x.im.is_zero() {
        format_rational(&x.re)
    } else if x.im.is_negative() {
        format!("{}-{}*i", format_rational(&x.re), format_rational(&-x.im.clone()))
    } else {
        format!("{}+{}*i", format_rational(&x.re), format_rational(&x.im))
    }
}

fn parse_rational_str(s: &str) -> Result<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let numer = n
        .parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("bad numerator {n:?}: {e}")))?;
    let denom = d
        .parse::<BigInt>()
        .map_err(|e| Error::Parse(format!("bad denominator {d:?}: {e}")))?;
    if denom.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(numer, denom))
}

/// Parse the canonical `a/b` form (also tolerates a bare integer).
pub fn parse_rational(s: &str) -> Result<Rational> {
    parse_rational_str(s.trim())
}

/// Parse the canonical Gaussian form, real or complex.
pub fn parse_gauss(s: &str) -> Result<GaussRational> {
    let s = s.trim();
    let Some(body) = s.strip_suffix("*i") else {
        return Ok(real_to_gauss(&parse_rational(s)?));
    };
    // Split the imaginary term off at the last +/- that is not a leading sign.
    let mut split = None;
    for (i, c) in body.char_indices() {
        if i > 0 && (c == '+' || c == '-') && !body[..i].ends_with('/') {
            split = Some((i, c));
        }
    }
    let Some((at, sign)) = split else {
        return Err(Error::Parse(format!("malformed Gaussian rational {s:?}")));
    };
    let re = parse_rational(&body[..at])?;
    let im_mag = parse_rational(&body[at + 1..])?;
    let im = if sign == '-' { -im_mag } else { im_mag };
    Ok(gauss(re, im))
}

/// True when the imaginary part is exactly zero.
pub fn is_real(x: &GaussRational) -> bool {
    x.im.is_zero()
}

/// Extract the real part, failing loudly if an imaginary part survives.
pub fn expect_real(x: &GaussRational, context: &str) -> Result<Rational> {
    if is_real(x) {
        Ok(x.re.clone())
    } else {
        Err(Error::NonReal(context.to_string()))
    }
}

/// i·x, the quarter-turn used when realifying complex algebras.
pub fn times_i(x: &GaussRational) -> GaussRational {
    Complex::new(-x.im.clone(), x.re.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;

    #[test]
    fn rational_strings_are_canonical() {
        assert_eq!(format_rational(&frac(2, 4)), "1/2");
        assert_eq!(format_rational(&frac(3, -6)), "-1/2");
        assert_eq!(format_rational(&rat(0)), "0/1");
        assert_eq!(format_rational(&rat(-7)), "-7/1");
    }

    #[test]
    fn gauss_strings_are_canonical() {
        assert_eq!(format_gauss(&greal(3)), "3/1");
        assert_eq!(format_gauss(&gim(1)), "0/1+1/1*i");
        assert_eq!(format_gauss(&gim(-2)), "0/1-2/1*i");
        assert_eq!(
            format_gauss(&gauss(frac(-1, 2), frac(3, 4))),
            "-1/2+3/4*i"
        );
    }

    #[test]
    fn parse_inverts_format() {
        for x in [greal(0), greal(5), gim(-3), gauss(frac(-2, 3), frac(7, 5))] {
            assert_eq!(parse_gauss(&format_gauss(&x)).unwrap(), x);
        }
        assert_eq!(parse_rational("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_rational("-9").unwrap(), rat(-9));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a/b").is_err());
        assert!(parse_gauss("*i").is_err());
        assert!(parse_gauss("1/2i").is_err());
    }

    #[test]
    fn times_i_is_a_quarter_turn() {
        let x = gauss(frac(1, 2), rat(-3));
        assert_eq!(times_i(&times_i(&x)), -x.clone());
        assert_eq!(times_i(&x), gim(1) * x);
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-1000i64..1000, 1i64..60).prop_map(|(n, d)| frac(n, d))
    }

    fn arb_gauss() -> impl Strategy<Value = GaussRational> {
        (arb_rational(), arb_rational()).prop_map(|(re, im)| gauss(re, im))
    }

    proptest! {
        #[test]
        fn field_add_commutes(a in arb_gauss(), b in arb_gauss()) {
            prop_assert_eq!(a.clone() + b.clone(), b + a);
        }

        #[test]
        fn field_mul_commutes(a in arb_gauss(), b in arb_gauss()) {
            prop_assert_eq!(a.clone() * b.clone(), b * a);
        }

        #[test]
        fn field_mul_associates(a in arb_gauss(), b in arb_gauss(), c in arb_gauss()) {
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a * (b * c));
        }

        #[test]
        fn field_distributes(a in arb_gauss(), b in arb_gauss(), c in arb_gauss()) {
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b + a * c);
        }

        #[test]
        fn field_inverse(a in arb_gauss()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(a.clone() * (GaussRational::one() / a), GaussRational::one());
        }

        #[test]
        fn conj_is_involutive_and_multiplicative(a in arb_gauss(), b in arb_gauss()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        }

        #[test]
        fn gauss_string_round_trip(a in arb_gauss()) {
            prop_assert_eq!(parse_gauss(&format_gauss(&a)).unwrap(), a);
        }
    }
}
