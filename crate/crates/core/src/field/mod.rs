//! Exact scalar fields.
//!
//! Elements do not carry their field. Every operation goes through a field
//! context implementing [`Field`], so that prime fields stay `Copy`-cheap and
//! the rationals can use arbitrary-precision fractions behind the same API.

mod gf;
mod poly;
mod rational;

use alloc::string::String;
use core::fmt;
use core::hash::Hash;

use rand::Rng;

pub use gf::{is_prime, make_field, Gf, MAX_PRIME};
pub use poly::Poly;
pub use rational::Rationals;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("characteristic {0} is not a prime")]
    NonPrimeCharacteristic(u64),
    #[error("GF({p}^{degree}) is outside the supported range")]
    DegreeUnsupported { p: u64, degree: u64 },
    #[error("the rationals have no finite extensions in this library")]
    RationalsNotExtendable,
    #[error("operation needs a finite field; the rationals are not supported here")]
    RationalsUnsupported,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial does not split over Q; algebraic numbers would be needed")]
    NeedsAlgebraicNumbers,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {text:?}: {reason}")]
    ScalarSyntax { text: String, reason: &'static str },
}

/// A field context. Arithmetic on [`Field::Elem`] values is only meaningful
/// through the context that produced them.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display {
    type Elem: Clone + PartialEq + Eq + Ord + Hash + fmt::Debug;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Degree over the prime field (1 for prime fields and Q).
    fn degree(&self) -> u32;
    /// Number of elements; `None` for the rationals.
    fn order(&self) -> Option<u64>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// The `index`-th element in a fixed enumeration of a finite field.
    fn element(&self, index: u64) -> Option<Self::Elem>;
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn parse_scalar(&self, text: &str) -> Result<Self::Elem, FieldError>;
    fn format_scalar(&self, a: &Self::Elem) -> String;

    /// The degree-`m` extension of `self` together with an embedding.
    fn extend(&self, m: u32) -> Result<Embedding<Self>, FieldError>;
    /// Image of `a` (an element of `self`) under `emb`.
    fn embed(&self, emb: &Embedding<Self>, a: &Self::Elem) -> Self::Elem;

    /// Roots of `f` lying in this field with their multiplicities, sorted by element.
    fn roots(&self, f: &Poly<Self>) -> Result<alloc::vec::Vec<(Self::Elem, usize)>, FieldError>;
    /// Least `m` such that `f` splits into linear factors over the degree-`m` extension.
    fn splitting_degree(&self, f: &Poly<Self>) -> Result<u32, FieldError>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// An injective field homomorphism `source -> target`, where `target` is the
/// degree-`degree` extension of `source`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding<F: Field> {
    pub(crate) source: F,
    pub(crate) target: F,
    pub(crate) degree: u32,
    /// Image of the source generator (unused for prime sources).
    pub(crate) generator_image: F::Elem,
}

impl<F: Field> Embedding<F> {
    pub fn identity(field: &F) -> Self {
        Embedding {
            source: field.clone(),
            target: field.clone(),
            degree: 1,
            generator_image: field.zero(),
        }
    }

    pub fn source(&self) -> &F {
        &self.source
    }

    pub fn target(&self) -> &F {
        &self.target
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn apply(&self, a: &F::Elem) -> F::Elem {
        if self.degree == 1 {
            return a.clone();
        }
        self.source.embed(self, a)
    }

    pub fn apply_all(&self, v: &[F::Elem]) -> alloc::vec::Vec<F::Elem> {
        v.iter().map(|a| self.apply(a)).collect()
    }
}
