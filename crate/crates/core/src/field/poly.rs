use alloc::vec;
use alloc::vec::Vec;

use super::{Field, FieldError};

/// Univariate polynomial, coefficients stored lowest degree first with no
/// trailing zeros. The empty coefficient list is the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F::Elem>,
}

impl<F: Field> Poly<F> {
    pub fn new(field: &F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: &F) -> Self {
        Poly {
            coeffs: vec![field.zero(), field.one()],
        }
    }

    /// `x - r`
    pub fn linear(field: &F, r: &F::Elem) -> Self {
        Poly {
            coeffs: vec![field.neg(r), field.one()],
        }
    }

    /// Monic polynomial with the given roots (repetition allowed).
    pub fn from_roots(field: &F, roots: &[F::Elem]) -> Self {
        roots
            .iter()
            .fold(Self::constant(field, field.one()), |acc, r| {
                acc.mul(field, &Self::linear(field, r))
            })
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn coeff(&self, field: &F, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| field.zero())
    }

    pub fn eval(&self, field: &F, x: &F::Elem) -> F::Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.add(&self.coeff(field, i), &other.coeff(field, i)))
            .collect();
        Self::new(field, coeffs)
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| field.sub(&self.coeff(field, i), &other.coeff(field, i)))
            .collect();
        Self::new(field, coeffs)
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        Self::new(field, self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &F, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Self::new(field, out)
    }

    pub fn div_rem(&self, field: &F, divisor: &Self) -> Result<(Self, Self), FieldError> {
        let lead = divisor.leading().ok_or(FieldError::ZeroPolynomial)?;
        let lead_inv = field.inv(lead)?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![field.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = field.mul(&rem[i], &lead_inv);
            if field.is_zero(&c) {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                let k = i - dd + j;
                rem[k] = field.sub(&rem[k], &field.mul(&c, b));
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(field, quot), Self::new(field, rem)))
    }

    pub fn rem(&self, field: &F, divisor: &Self) -> Result<Self, FieldError> {
        Ok(self.div_rem(field, divisor)?.1)
    }

    pub fn monic(&self, field: &F) -> Result<Self, FieldError> {
        let lead = self.leading().ok_or(FieldError::ZeroPolynomial)?;
        Ok(self.scale(field, &field.inv(lead)?))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, field: &F, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic(field).expect("nonzero")
        }
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, field: &F, mut e: u64, modulus: &Self) -> Result<Self, FieldError> {
        let mut base = self.rem(field, modulus)?;
        let mut acc = Self::constant(field, field.one()).rem(field, modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base).rem(field, modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base).rem(field, modulus)?;
            }
        }
        Ok(acc)
    }

    /// Exact power of `(x - r)` dividing `self`, which must be nonzero.
    pub fn root_multiplicity(&self, field: &F, r: &F::Elem) -> usize {
        let lin = Self::linear(field, r);
        let mut f = self.clone();
        let mut m = 0;
        while !f.is_zero() {
            let (q, rem) = f.div_rem(field, &lin).expect("monic divisor");
            if !rem.is_zero() {
                break;
            }
            f = q;
            m += 1;
        }
        m
    }

    pub fn map<G: Field>(&self, target: &G, f: impl Fn(&F::Elem) -> G::Elem) -> Poly<G> {
        Poly::new(target, self.coeffs.iter().map(f).collect())
    }
}
