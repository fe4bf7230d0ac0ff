use alloc::vec::Vec;

use super::{AlgebraError, Derivation, NLieAlgebra};
use crate::combinatorics::combinations;
use crate::field::Field;
use crate::linalg::{
    char_poly, common_eigenvector, generalized_eigenspace, Matrix, Subspace, Vector,
};

/// Fitting decomposition of the ambient space under one derivation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDecomposition<F: Field> {
    /// Field the components live over.
    pub field: F,
    pub extension_degree: u32,
    /// The derivation, mapped into `field`.
    pub derivation: Derivation<F>,
    /// `(eigenvalue, generalized eigenspace)`, eigenvalues in increasing order.
    pub components: Vec<(F::Elem, Subspace<F>)>,
}

impl<F: Field> WeightDecomposition<F> {
    pub fn component(&self, lambda: &F::Elem) -> Option<&Subspace<F>> {
        self.components
            .iter()
            .find(|(l, _)| l == lambda)
            .map(|(_, s)| s)
    }

    /// `A_0`, the zero subspace when 0 is not an eigenvalue.
    pub fn zero_component(&self) -> Subspace<F> {
        let d = self.derivation.matrix.rows();
        self.component(&self.field.zero())
            .cloned()
            .unwrap_or_else(|| Subspace::zero(d))
    }

    /// Nonzero eigenvalues repeated by component dimension, in increasing order.
    pub fn nonzero_eigenvalues(&self) -> Vec<F::Elem> {
        self.components
            .iter()
            .filter(|(l, _)| !self.field.is_zero(l))
            .flat_map(|(l, s)| core::iter::repeat_n(l.clone(), s.dim()))
            .collect()
    }
}

/// Splits `F^d` into generalized eigenspaces of `d`, extending the field by
/// the splitting degree of the characteristic polynomial when needed.
pub fn weight_decomposition<F: Field>(
    a: &NLieAlgebra<F>,
    d: &Derivation<F>,
    max_ext: u32,
) -> Result<WeightDecomposition<F>, AlgebraError> {
    let f = a.field();
    let cp = char_poly(f, &d.matrix)?;
    let dim = a.dim();
    let split = f.roots(&cp)?.iter().map(|(_, m)| m).sum::<usize>() == dim;
    let s = if split { 1 } else { f.splitting_degree(&cp)? };
    if s > max_ext {
        return Err(AlgebraError::ExtensionBudgetExceeded {
            needed: s,
            budget: max_ext,
        });
    }
    let emb = f.extend(s)?;
    let k = emb.target().clone();
    let derivation = if s == 1 { d.clone() } else { d.map_field(&emb) };
    let cp = char_poly(&k, &derivation.matrix)?;
    let mut components = Vec::new();
    for (lambda, _) in k.roots(&cp)? {
        let c = generalized_eigenspace(&k, &derivation.matrix, &lambda, dim as u64)?;
        components.push((lambda, c));
    }
    Ok(WeightDecomposition {
        field: k,
        extension_degree: s,
        derivation,
        components,
    })
}

/// Checks `[A_l1, ..., A_ln] in A_(l1 + ... + ln)` over every multiset of
/// `n` components, on all choices of component basis vectors.
pub fn weight_relation_check<F: Field>(
    a: &NLieAlgebra<F>,
    w: &WeightDecomposition<F>,
) -> Result<bool, AlgebraError> {
    let owned;
    let a = if a.field() == &w.field {
        a
    } else {
        owned = a.extend(w.extension_degree)?.0;
        if owned.field() != &w.field {
            return Err(AlgebraError::FieldMismatch);
        }
        &owned
    };
    let k = &w.field;
    let n = a.arity();
    let c = w.components.len();
    let mut picks = alloc::vec![0usize; n];
    loop {
        let sum = picks
            .iter()
            .fold(k.zero(), |acc, &i| k.add(&acc, &w.components[i].0));
        let target = w
            .component(&sum)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(a.dim()));
        let spaces: Vec<&Subspace<F>> = picks.iter().map(|&i| &w.components[i].1).collect();
        if !brackets_land_in(a, &spaces, &target) {
            return Ok(false);
        }
        // next non-decreasing index sequence
        let Some(pos) = (0..n).rev().find(|&i| picks[i] + 1 < c) else {
            return Ok(true);
        };
        picks[pos] += 1;
        for i in pos + 1..n {
            picks[i] = picks[pos];
        }
    }
}

fn brackets_land_in<F: Field>(
    a: &NLieAlgebra<F>,
    spaces: &[&Subspace<F>],
    target: &Subspace<F>,
) -> bool {
    if spaces.iter().any(|s| s.is_zero()) {
        return true;
    }
    let mut idx = alloc::vec![0usize; spaces.len()];
    loop {
        let xs: Vec<Vector<F>> = idx
            .iter()
            .zip(spaces)
            .map(|(&i, s)| s.basis()[i].clone())
            .collect();
        let b = a.bracket(&xs).expect("shape checked");
        if !target.contains(a.field(), &b) {
            return false;
        }
        let Some(pos) = (0..idx.len()).rev().find(|&i| idx[i] + 1 < spaces[i].dim()) else {
            return true;
        };
        idx[pos] += 1;
        idx[pos + 1..].fill(0);
    }
}

/// A common weight vector of an abelian `H` acting on `A / H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonWeight<F: Field> {
    pub field: F,
    pub extension_degree: u32,
    /// `H` over `field`.
    pub h: Subspace<F>,
    /// RREF coset representative of the common eigenvector.
    pub u: Vector<F>,
    /// Eigenvalue of each increasing `(n-1)`-tuple of `H`'s basis (indices
    /// into the basis).
    pub alpha: Vec<(Vec<usize>, F::Elem)>,
}

/// For an abelian `H` with `dim H <= n`, finds `u` outside `H` with
/// `[h_1, ..., h_{n-1}, u] = alpha(h) u  (mod H)` for all basis tuples of `H`.
pub fn common_eigen_weights<F: Field>(
    a: &NLieAlgebra<F>,
    h: &Subspace<F>,
    max_ext: u32,
) -> Result<CommonWeight<F>, AlgebraError> {
    let f = a.field();
    let (n, d) = (a.arity(), a.dim());
    if h.dim() > n {
        return Err(AlgebraError::PreconditionUnmet("dim H must be at most n"));
    }
    if h.is_full() {
        return Err(AlgebraError::PreconditionUnmet("H must be a proper subspace"));
    }
    if h.dim() == n {
        let b = a.bracket(h.basis())?;
        if !b.iter().all(|x| f.is_zero(x)) {
            return Err(AlgebraError::NotAbelian);
        }
    }
    let tuples = combinations(h.dim(), n - 1);
    let quotient_dim = d - h.dim();
    let mut induced = Vec::with_capacity(tuples.len());
    for t in &tuples {
        let xs: Vec<Vector<F>> = t.iter().map(|&i| h.basis()[i].clone()).collect();
        let m = a.inner_derivation(&xs)?.matrix;
        let cols: Vec<Vector<F>> = h
            .non_pivots()
            .into_iter()
            .map(|j| h.quotient_coordinates(f, &m.column(j)))
            .collect();
        induced.push(Matrix::from_columns(f, quotient_dim, &cols));
    }
    if induced.is_empty() {
        // dim H < n - 1: no tuples, every vector is a weight vector.
        induced.push(Matrix::zeros(f, quotient_dim, quotient_dim));
    }
    let ce = common_eigenvector(f, &induced, max_ext)?;
    let emb = ce.extension;
    let k = emb.target().clone();
    let hk = h.map_field(&emb);
    let u = hk.lift(&k, &ce.vector);
    let alpha = tuples.into_iter().zip(ce.eigenvalues).collect();
    Ok(CommonWeight {
        field: k,
        extension_degree: emb.degree(),
        h: hk,
        u,
        alpha,
    })
}
