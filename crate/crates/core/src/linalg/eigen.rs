use alloc::vec::Vec;

use super::{char_poly, kernel, LinalgError, Matrix, Subspace, Vector};
use crate::field::{Embedding, Field};

/// `ker (M - lambda I)^e`.
pub fn generalized_eigenspace<F: Field>(
    field: &F,
    m: &Matrix<F>,
    lambda: &F::Elem,
    e: u64,
) -> Result<Subspace<F>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(kernel(field, &m.shift(field, lambda).pow(field, e)))
}

/// A simultaneous eigenvector of a commuting family, possibly over an extension.
#[derive(Clone, Debug)]
pub struct CommonEigenvector<F: Field> {
    /// Embedding of the input field into the field the result lives in.
    pub extension: Embedding<F>,
    pub vector: Vector<F>,
    /// Eigenvalue of each input matrix on `vector`, in input order.
    pub eigenvalues: Vec<F::Elem>,
}

/// Restriction of `m` to an invariant subspace, in the subspace's RREF basis.
fn restrict<F: Field>(field: &F, m: &Matrix<F>, v: &Subspace<F>) -> Matrix<F> {
    let cols: Vec<Vector<F>> = v
        .basis()
        .iter()
        .map(|b| v.coordinates(&m.mul_vec(field, b)))
        .collect();
    Matrix::from_columns(field, v.dim(), &cols)
}

/// Finds `u != 0` with `M_i u = lambda_i u` for every matrix of a pairwise
/// commuting family. Eigenspaces are intersected one matrix at a time, taking
/// the smallest available eigenvalue; when a restricted characteristic
/// polynomial has no root, the search restarts over the extension given by
/// its splitting degree, as long as the total degree stays within `max_ext`.
pub fn common_eigenvector<F: Field>(
    field: &F,
    ms: &[Matrix<F>],
    max_ext: u32,
) -> Result<CommonEigenvector<F>, LinalgError> {
    let d = ms
        .first()
        .ok_or(LinalgError::DimensionMismatch("empty matrix family"))?
        .rows();
    for m in ms {
        if !m.is_square() {
            return Err(LinalgError::NonSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if m.rows() != d {
            return Err(LinalgError::DimensionMismatch("matrices of different sizes"));
        }
    }
    if d == 0 {
        return Err(LinalgError::DimensionMismatch("zero-dimensional space"));
    }
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            if !ms[i].commutes_with(field, &ms[j]) {
                return Err(LinalgError::NotCommuting { first: i, second: j });
            }
        }
    }

    let mut degree = 1u32;
    'restart: loop {
        let emb = field.extend(degree)?;
        let k = emb.target().clone();
        let family: Vec<Matrix<F>> = ms.iter().map(|m| m.map_field(&emb)).collect();
        let mut space = Subspace::full(&k, d);
        let mut eigenvalues = Vec::with_capacity(family.len());
        for m in &family {
            let restricted = restrict(&k, m, &space);
            let cp = char_poly(&k, &restricted)?;
            let roots = k.roots(&cp)?;
            let Some((lambda, _)) = roots.first() else {
                let s = k.splitting_degree(&cp)?;
                let needed = degree.saturating_mul(s);
                if needed > max_ext {
                    return Err(LinalgError::ExtensionBudgetExceeded {
                        needed,
                        budget: max_ext,
                    });
                }
                degree = needed;
                continue 'restart;
            };
            let local = kernel(&k, &restricted.shift(&k, lambda));
            let lifted = local
                .basis()
                .iter()
                .map(|c| space.combine(&k, c))
                .collect();
            space = Subspace::span(&k, d, lifted);
            eigenvalues.push(lambda.clone());
        }
        let vector = space.basis()[0].clone();
        return Ok(CommonEigenvector {
            extension: emb,
            vector,
            eigenvalues,
        });
    }
}
