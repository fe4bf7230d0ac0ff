use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::{Embedding, Field, FieldError, Poly};

/// The rational numbers, with exact arbitrary-precision fractions.
///
/// Only in-field computations are available: anything that would need an
/// algebraic extension reports [`FieldError::NeedsAlgebraicNumbers`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl fmt::Display for Rationals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Q")
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let other = &n / &d;
            if other != d {
                large.push(other);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }

    fn degree(&self) -> u32 {
        1
    }

    fn order(&self) -> Option<u64> {
        None
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational, FieldError> {
        if a.is_zero() {
            Err(FieldError::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn element(&self, _index: u64) -> Option<BigRational> {
        None
    }

    /// Small fractions `a/b` with `|a| <= 5`, `1 <= b <= 3`.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let num: i64 = rng.random_range(-5..=5);
        let den: i64 = rng.random_range(1..=3);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn parse_scalar(&self, text: &str) -> Result<BigRational, FieldError> {
        let err = |reason| FieldError::ScalarSyntax {
            text: String::from(text),
            reason,
        };
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
        let den: BigInt = den.parse().map_err(|_| err("bad denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }

    fn format_scalar(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            alloc::format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn extend(&self, m: u32) -> Result<Embedding<Self>, FieldError> {
        if m == 1 {
            Ok(Embedding::identity(self))
        } else {
            Err(FieldError::RationalsNotExtendable)
        }
    }

    fn embed(&self, _emb: &Embedding<Self>, a: &BigRational) -> BigRational {
        a.clone()
    }

    /// Rational root test on the primitive integer multiple of `f`.
    fn roots(&self, f: &Poly<Self>) -> Result<Vec<(BigRational, usize)>, FieldError> {
        if f.is_zero() {
            return Err(FieldError::ZeroPolynomial);
        }
        let zero_mult = f.coeffs().iter().take_while(|c| c.is_zero()).count();
        let rest = &f.coeffs()[zero_mult..];
        let lcm = rest
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = rest
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut out = Vec::new();
        if zero_mult > 0 {
            out.push((BigRational::zero(), zero_mult));
        }
        if ints.len() > 1 {
            let rest_poly = Poly::new(self, rest.to_vec());
            let lead = ints.last().unwrap();
            let nums = divisors(&ints[0]);
            let dens = divisors(lead);
            let mut seen = Vec::new();
            for p in &nums {
                for q in &dens {
                    for sign in [1i64, -1] {
                        let r = BigRational::new(p * BigInt::from(sign), q.clone());
                        if seen.contains(&r) {
                            continue;
                        }
                        if rest_poly.eval(self, &r).is_zero() {
                            let m = rest_poly.root_multiplicity(self, &r);
                            out.push((r.clone(), m));
                        }
                        seen.push(r);
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    fn splitting_degree(&self, f: &Poly<Self>) -> Result<u32, FieldError> {
        let n = f.degree().ok_or(FieldError::ZeroPolynomial)?;
        let found: usize = self.roots(f)?.iter().map(|(_, m)| m).sum();
        if found == n {
            Ok(1)
        } else {
            Err(FieldError::NeedsAlgebraicNumbers)
        }
    }
}

impl Rationals {
    /// Convenience for tests and fixtures.
    pub fn frac(&self, num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// Value as `f64`, for display only.
    pub fn approx(&self, a: &BigRational) -> Option<f64> {
        a.to_f64()
    }
}
