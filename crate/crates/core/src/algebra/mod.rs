//! n-Lie algebras given by structure constants.
//!
//! The bracket `[x_1, ..., x_n]` is multilinear and alternating, so it is
//! determined by its values on strictly increasing tuples of basis indices.
//! Those are the only values stored; every other basis bracket is recovered
//! by sorting its arguments and applying the permutation sign.

mod engel;
mod weights;

use alloc::vec;
use alloc::vec::Vec;

use crate::combinatorics::{binomial, colex_rank, combinations, sort_with_parity};
use crate::field::{Embedding, Field, FieldError};
use crate::linalg::{
    axpy, determinant, is_zero_vector, zero_vector, LinalgError, Matrix, Subspace, Vector,
};

pub use engel::{
    engel_subalgebra, is_nilpotent_subalgebra, minimal_engel_cartan, normalizer, CartanReport,
    EngelSearch, EXHAUSTIVE_SEARCH_CAP,
};
pub(crate) use engel::engel_cartan_here;
pub use weights::{
    common_eigen_weights, weight_decomposition, weight_relation_check, CommonWeight,
    WeightDecomposition,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("arity must be at least 2 and at most the dimension (arity {arity}, dimension {dim})")]
    BadShape { arity: usize, dim: usize },
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("vector of length {got} in a {expected}-dimensional algebra")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("objects live over different fields")]
    FieldMismatch,
    #[error("basis index {index} outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket arguments must be strictly increasing")]
    NotIncreasing,
    #[error("the structure constants violate the Filippov identity")]
    InvalidAlgebra,
    #[error("Engel search budget exhausted (smallest proper Engel subalgebra found: {best_dim:?}, up to extension degree {degree})")]
    BudgetExceeded { best_dim: Option<usize>, degree: u32 },
    #[error("minimal Engel subalgebra of dimension {dim} (extension degree {degree}) is not Cartan: nilpotent={nilpotent}, self-normalizing={self_normalizing}")]
    CartanCheckFailed {
        dim: usize,
        degree: u32,
        nilpotent: bool,
        self_normalizing: bool,
    },
    #[error("subalgebra is not abelian")]
    NotAbelian,
    #[error("induced derivations {first} and {second} do not commute")]
    NotCommuting { first: usize, second: usize },
    #[error("extension of degree {needed} needed, budget is {budget}")]
    ExtensionBudgetExceeded { needed: u32, budget: u32 },
    #[error("precondition not met: {0}")]
    PreconditionUnmet(&'static str),
    #[error(transparent)]
    Field(FieldError),
    #[error(transparent)]
    Linalg(LinalgError),
}

impl From<FieldError> for AlgebraError {
    fn from(e: FieldError) -> Self {
        AlgebraError::Field(e)
    }
}

impl From<LinalgError> for AlgebraError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::Field(f) => AlgebraError::Field(f),
            LinalgError::NotCommuting { first, second } => {
                AlgebraError::NotCommuting { first, second }
            }
            LinalgError::ExtensionBudgetExceeded { needed, budget } => {
                AlgebraError::ExtensionBudgetExceeded { needed, budget }
            }
            other => AlgebraError::Linalg(other),
        }
    }
}

/// Structure constants of an alternating `arity`-linear bracket on `F^dim`.
/// Indices are 0-based here; file formats use 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTensor<F: Field> {
    field: F,
    arity: usize,
    dim: usize,
    /// Indexed by the colex rank of the increasing argument tuple.
    values: Vec<Vector<F>>,
}

impl<F: Field> StructureTensor<F> {
    /// The zero (abelian) tensor.
    pub fn new(field: F, arity: usize, dim: usize) -> Result<Self, AlgebraError> {
        if arity < 2 || dim < arity {
            return Err(AlgebraError::BadShape { arity, dim });
        }
        let values = vec![zero_vector(&field, dim); binomial(dim, arity)];
        Ok(StructureTensor {
            field,
            arity,
            dim,
            values,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_increasing(&self, args: &[usize]) -> Result<(), AlgebraError> {
        if args.len() != self.arity {
            return Err(AlgebraError::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        if let Some(&bad) = args.iter().find(|&&i| i >= self.dim) {
            return Err(AlgebraError::IndexOutOfRange {
                index: bad + 1,
                dim: self.dim,
            });
        }
        if args.windows(2).any(|w| w[0] >= w[1]) {
            return Err(AlgebraError::NotIncreasing);
        }
        Ok(())
    }

    /// Sets `[e_args] = value` for a strictly increasing tuple of 0-based indices.
    pub fn set(&mut self, args: &[usize], value: Vector<F>) -> Result<(), AlgebraError> {
        self.check_increasing(args)?;
        if value.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: value.len(),
            });
        }
        self.values[colex_rank(args)] = value;
        Ok(())
    }

    /// Value on a strictly increasing tuple.
    pub fn get(&self, args: &[usize]) -> Result<&Vector<F>, AlgebraError> {
        self.check_increasing(args)?;
        Ok(&self.values[colex_rank(args)])
    }

    /// `[e_{i_1}, ..., e_{i_n}]` for arbitrary indices: `None` when an index
    /// repeats, otherwise the stored value and whether it must be negated.
    pub fn basis_bracket(&self, idx: &[usize]) -> Option<(bool, &Vector<F>)> {
        let mut sorted = [0usize; 32];
        let sorted = &mut sorted[..idx.len()];
        sorted.copy_from_slice(idx);
        let odd = sort_with_parity(sorted)?;
        Some((odd, &self.values[colex_rank(sorted)]))
    }

    /// Nonzero structure constants in lexicographic order of their tuples.
    pub fn entries(&self) -> Vec<(Vec<usize>, &Vector<F>)> {
        combinations(self.dim, self.arity)
            .into_iter()
            .filter_map(|t| {
                let v = &self.values[colex_rank(&t)];
                (!is_zero_vector(&self.field, v)).then_some((t, v))
            })
            .collect()
    }

    pub fn map_field(&self, emb: &Embedding<F>) -> Self {
        StructureTensor {
            field: emb.target().clone(),
            arity: self.arity,
            dim: self.dim,
            values: self.values.iter().map(|v| emb.apply_all(v)).collect(),
        }
    }
}

/// A violation of the Filippov identity on basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilippovWitness<F: Field> {
    /// 0-based indices of the `n-1` acting basis vectors.
    pub x: Vec<usize>,
    /// 0-based indices of the `n` bracketed basis vectors.
    pub y: Vec<usize>,
    /// `[x, [y]]`
    pub lhs: Vector<F>,
    /// `sum_i [y_1, ..., [x, y_i], ..., y_n]`
    pub rhs: Vector<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport<F: Field> {
    /// Number of `(x, y)` basis-tuple pairs checked.
    pub checked: usize,
    pub witness: Option<FilippovWitness<F>>,
}

impl<F: Field> ValidationReport<F> {
    pub fn is_valid(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Validity<F: Field> {
    Unchecked,
    Valid,
    Invalid(FilippovWitness<F>),
}

/// The matrix of `x -> [a_1, ..., a_{n-1}, x]` with its generating tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation<F: Field> {
    pub tuple: Vec<Vector<F>>,
    pub matrix: Matrix<F>,
}

impl<F: Field> Derivation<F> {
    pub fn map_field(&self, emb: &Embedding<F>) -> Self {
        Derivation {
            tuple: self.tuple.iter().map(|v| emb.apply_all(v)).collect(),
            matrix: self.matrix.map_field(emb),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NLieAlgebra<F: Field> {
    tensor: StructureTensor<F>,
    /// `ad(e_J)` for every increasing `(n-1)`-tuple `J`, by colex rank.
    ad: Vec<Matrix<F>>,
    /// Nonzero structure constants as (increasing tuple, value).
    support: Vec<(Vec<usize>, Vector<F>)>,
    status: Validity<F>,
}

impl<F: Field> NLieAlgebra<F> {
    /// Wraps a tensor without checking the Filippov identity.
    pub fn new(tensor: StructureTensor<F>) -> Self {
        let f = tensor.field.clone();
        let (n, d) = (tensor.arity, tensor.dim);
        let mut ad = vec![Matrix::zeros(&f, d, d); binomial(d, n - 1)];
        let mut idx = vec![0usize; n];
        for j_tuple in combinations(d, n - 1) {
            let m = &mut ad[colex_rank(&j_tuple)];
            idx[..n - 1].copy_from_slice(&j_tuple);
            for col in 0..d {
                idx[n - 1] = col;
                if let Some((odd, v)) = tensor.basis_bracket(&idx) {
                    for (row, a) in v.iter().enumerate() {
                        m.set(row, col, if odd { f.neg(a) } else { a.clone() });
                    }
                }
            }
        }
        let support = tensor
            .entries()
            .into_iter()
            .map(|(t, v)| (t, v.clone()))
            .collect();
        NLieAlgebra {
            tensor,
            ad,
            support,
            status: Validity::Unchecked,
        }
    }

    /// Wraps a tensor and records the outcome of [`Self::validate`].
    pub fn validated(tensor: StructureTensor<F>) -> Self {
        let mut a = Self::new(tensor);
        a.status = match a.validate().witness {
            None => Validity::Valid,
            Some(w) => Validity::Invalid(w),
        };
        a
    }

    pub fn tensor(&self) -> &StructureTensor<F> {
        &self.tensor
    }

    pub fn field(&self) -> &F {
        &self.tensor.field
    }

    pub fn arity(&self) -> usize {
        self.tensor.arity
    }

    pub fn dim(&self) -> usize {
        self.tensor.dim
    }

    pub fn status(&self) -> &Validity<F> {
        &self.status
    }

    /// Errors with [`AlgebraError::InvalidAlgebra`] unless the identity holds,
    /// validating on the spot when the status is unknown.
    pub fn ensure_valid(&self) -> Result<(), AlgebraError> {
        match &self.status {
            Validity::Valid => Ok(()),
            Validity::Invalid(_) => Err(AlgebraError::InvalidAlgebra),
            Validity::Unchecked if self.validate().is_valid() => Ok(()),
            Validity::Unchecked => Err(AlgebraError::InvalidAlgebra),
        }
    }

    /// Scalar extension by degree `m`. The identity is polynomial in the
    /// structure constants, so the validity status carries over.
    pub fn extend(&self, m: u32) -> Result<(Self, Embedding<F>), AlgebraError> {
        let emb = self.field().extend(m)?;
        if m == 1 {
            return Ok((self.clone(), emb));
        }
        let mut out = Self::new(self.tensor.map_field(&emb));
        out.status = match &self.status {
            Validity::Valid => Validity::Valid,
            Validity::Unchecked => Validity::Unchecked,
            Validity::Invalid(w) => Validity::Invalid(FilippovWitness {
                x: w.x.clone(),
                y: w.y.clone(),
                lhs: emb.apply_all(&w.lhs),
                rhs: emb.apply_all(&w.rhs),
            }),
        };
        Ok((out, emb))
    }

    fn check_vectors(&self, xs: &[Vector<F>], expected: usize) -> Result<(), AlgebraError> {
        if xs.len() != expected {
            return Err(AlgebraError::ArityMismatch {
                expected,
                got: xs.len(),
            });
        }
        if let Some(v) = xs.iter().find(|v| v.len() != self.dim()) {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Minor of the `k x d` coordinate matrix of `xs` on the columns `cols`.
    fn minor(&self, xs: &[Vector<F>], cols: &[usize]) -> F::Elem {
        let f = self.field();
        match cols.len() {
            1 => xs[0][cols[0]].clone(),
            2 => {
                let (a, b) = (&xs[0][cols[0]], &xs[0][cols[1]]);
                let (c, d) = (&xs[1][cols[0]], &xs[1][cols[1]]);
                f.sub(&f.mul(a, d), &f.mul(b, c))
            }
            k => {
                let rows: Vec<Vector<F>> = xs
                    .iter()
                    .map(|x| cols.iter().map(|&c| x[c].clone()).collect())
                    .collect();
                let m = Matrix::from_rows(k, rows);
                if m.is_zero(f) {
                    return f.zero();
                }
                determinant(f, &m)
            }
        }
    }

    /// `[x_1, ..., x_n]`, expanded as the sum over stored tuples `I` of
    /// `det(X restricted to I) * [e_I]`.
    pub fn bracket(&self, xs: &[Vector<F>]) -> Result<Vector<F>, AlgebraError> {
        self.check_vectors(xs, self.arity())?;
        let f = self.field();
        let mut out = zero_vector(f, self.dim());
        for (t, v) in &self.support {
            let c = self.minor(xs, t);
            axpy(f, &mut out, &c, v);
        }
        Ok(out)
    }

    /// `ad(e_J)` for an increasing `(n-1)`-tuple of 0-based indices.
    pub fn basis_derivation(&self, j: &[usize]) -> &Matrix<F> {
        &self.ad[colex_rank(j)]
    }

    /// The inner derivation `x -> [a_1, ..., a_{n-1}, x]`.
    pub fn inner_derivation(&self, tuple: &[Vector<F>]) -> Result<Derivation<F>, AlgebraError> {
        self.check_vectors(tuple, self.arity() - 1)?;
        let f = self.field();
        let d = self.dim();
        let mut matrix = Matrix::zeros(f, d, d);
        for j in combinations(d, self.arity() - 1) {
            let ad = &self.ad[colex_rank(&j)];
            if ad.is_zero(f) {
                continue;
            }
            let c = self.minor(tuple, &j);
            matrix.add_scaled(f, &c, ad);
        }
        Ok(Derivation {
            tuple: tuple.to_vec(),
            matrix,
        })
    }

    /// Checks `[x, [y_1..y_n]] = sum_i [y_1, .., [x, y_i], .., y_n]` on every
    /// increasing basis `(n-1)`-tuple `x` and `n`-tuple `y`; by multilinearity
    /// and alternation this covers all arguments.
    pub fn validate(&self) -> ValidationReport<F> {
        let f = self.field();
        let (n, d) = (self.arity(), self.dim());
        let ys = combinations(d, n);
        let mut checked = 0;
        let mut idx = vec![0usize; n];
        for x in combinations(d, n - 1) {
            let adx = &self.ad[colex_rank(&x)];
            for y in &ys {
                checked += 1;
                let lhs = adx.mul_vec(f, &self.tensor.values[colex_rank(y)]);
                let mut rhs = zero_vector(f, d);
                for i in 0..n {
                    idx.copy_from_slice(y);
                    for k in 0..d {
                        let c = adx.get(k, y[i]);
                        if f.is_zero(c) {
                            continue;
                        }
                        idx[i] = k;
                        if let Some((odd, v)) = self.tensor.basis_bracket(&idx) {
                            let c = if odd { f.neg(c) } else { c.clone() };
                            axpy(f, &mut rhs, &c, v);
                        }
                    }
                }
                if lhs != rhs {
                    return ValidationReport {
                        checked,
                        witness: Some(FilippovWitness {
                            x,
                            y: y.clone(),
                            lhs,
                            rhs,
                        }),
                    };
                }
            }
        }
        ValidationReport {
            checked,
            witness: None,
        }
    }

    /// `A^(1) = [A, ..., A]`, the span of all structure constants.
    pub fn derived_algebra(&self) -> Subspace<F> {
        let vs = self.support.iter().map(|(_, v)| v.clone()).collect();
        Subspace::span(self.field(), self.dim(), vs)
    }

    pub fn is_perfect(&self) -> bool {
        self.derived_algebra().is_full()
    }

    /// Whether `s` is closed under the bracket; checking increasing tuples of
    /// basis vectors of `s` suffices.
    pub fn is_subalgebra(&self, s: &Subspace<F>) -> bool {
        let n = self.arity();
        if s.dim() < n {
            return true;
        }
        let f = self.field();
        combinations(s.dim(), n).into_iter().all(|t| {
            let xs: Vec<Vector<F>> = t.iter().map(|&i| s.basis()[i].clone()).collect();
            let b = self.bracket(&xs).expect("shape checked");
            s.contains(f, &b)
        })
    }

    /// `[s, A, ..., A]`.
    fn bracket_with_algebra(&self, s: &Subspace<F>) -> Subspace<F> {
        let f = self.field();
        let vs = self
            .ad
            .iter()
            .filter(|m| !m.is_zero(f))
            .flat_map(|m| s.basis().iter().map(move |w| m.mul_vec(f, w)))
            .collect();
        Subspace::span(f, self.dim(), vs)
    }

    /// `A^1 = A`, `A^{s+1} = [A^s, A, ..., A]`, up to the first repeated
    /// or zero member.
    pub fn lower_central_series(&self) -> Vec<Subspace<F>> {
        let mut series = vec![Subspace::full(self.field(), self.dim())];
        loop {
            let last = series.last().unwrap();
            let next = self.bracket_with_algebra(last);
            let stop = next == *last || next.is_zero();
            series.push(next);
            if stop {
                return series;
            }
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }
}
