use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{AlgebraError, NLieAlgebra};
use crate::combinatorics::combinations;
use crate::field::Field;
use crate::linalg::{kernel, unit_vector, Matrix, Subspace, SubspaceEnumerator, Vector};

/// Exhaustive Engel search is used while `q^(d(n-1)) <= EXHAUSTIVE_SEARCH_CAP`.
pub const EXHAUSTIVE_SEARCH_CAP: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngelSearch {
    /// Random tuples per extension level when exhaustive search is too big.
    pub budget: usize,
    pub seed: u64,
    /// Largest total extension degree tried.
    pub max_ext: u32,
    pub exhaustive_cap: u64,
}

impl Default for EngelSearch {
    fn default() -> Self {
        EngelSearch {
            budget: 5000,
            seed: 0,
            max_ext: 12,
            exhaustive_cap: EXHAUSTIVE_SEARCH_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanReport<F: Field> {
    /// The algebra over the field the search ended in.
    pub algebra: NLieAlgebra<F>,
    pub h: Subspace<F>,
    pub witness: Vec<Vector<F>>,
    pub nilpotent: bool,
    pub self_normalizing: bool,
    pub extension_degree: u32,
    /// Tuples (or tuple spans, when exhaustive) examined at the final level.
    pub examined: usize,
    pub exhaustive: bool,
}

impl<F: Field> CartanReport<F> {
    pub fn is_cartan(&self) -> bool {
        self.nilpotent && self.self_normalizing
    }
}

/// Fitting null component `ker d^dim` of the inner derivation of `tuple`.
pub fn engel_subalgebra<F: Field>(
    a: &NLieAlgebra<F>,
    tuple: &[Vector<F>],
) -> Result<Subspace<F>, AlgebraError> {
    let d = a.inner_derivation(tuple)?;
    Ok(fitting_null(a, &d.matrix))
}

fn fitting_null<F: Field>(a: &NLieAlgebra<F>, m: &Matrix<F>) -> Subspace<F> {
    let f = a.field();
    if m.is_zero(f) {
        return Subspace::full(f, a.dim());
    }
    kernel(f, &m.pow(f, a.dim() as u64))
}

fn basis_tuples<F: Field>(h: &Subspace<F>, k: usize) -> Vec<Vec<Vector<F>>> {
    combinations(h.dim(), k)
        .into_iter()
        .map(|t| t.iter().map(|&i| h.basis()[i].clone()).collect())
        .collect()
}

/// Nilpotency of `h` as an n-Lie algebra under the restricted bracket:
/// `H^1 = H`, `H^{s+1} = [H^s, H, ..., H]` reaches zero.
pub fn is_nilpotent_subalgebra<F: Field>(a: &NLieAlgebra<F>, h: &Subspace<F>) -> bool {
    let f = a.field();
    let ds: Vec<Matrix<F>> = basis_tuples(h, a.arity() - 1)
        .iter()
        .map(|t| a.inner_derivation(t).expect("shape checked").matrix)
        .filter(|m| !m.is_zero(f))
        .collect();
    let mut current = h.clone();
    loop {
        if current.is_zero() {
            return true;
        }
        let vs = ds
            .iter()
            .flat_map(|m| current.basis().iter().map(move |w| m.mul_vec(f, w)))
            .collect();
        let next = Subspace::span(f, a.dim(), vs);
        if next == current {
            return false;
        }
        current = next;
    }
}

/// `N(H) = {x : [h_1, ..., h_{n-1}, x] in H for all basis tuples of H}`.
pub fn normalizer<F: Field>(a: &NLieAlgebra<F>, h: &Subspace<F>) -> Subspace<F> {
    let f = a.field();
    let d = a.dim();
    let mut rows: Vec<Vector<F>> = Vec::new();
    for t in basis_tuples(h, a.arity() - 1) {
        let m = a.inner_derivation(&t).expect("shape checked").matrix;
        if m.is_zero(f) {
            continue;
        }
        let images: Vec<Vector<F>> = (0..d)
            .map(|j| h.quotient_coordinates(f, &m.column(j)))
            .collect();
        for r in 0..d - h.dim() {
            rows.push(images.iter().map(|col| col[r].clone()).collect());
        }
    }
    if rows.is_empty() {
        return Subspace::full(f, d);
    }
    kernel(f, &Matrix::from_rows(d, rows))
}

struct Found<F: Field> {
    h: Subspace<F>,
    witness: Vec<Vector<F>>,
}

struct Level<F: Field> {
    best: Option<Found<F>>,
    examined: usize,
    exhaustive: bool,
}

fn exhaustive_feasible<F: Field>(a: &NLieAlgebra<F>, cap: u64) -> bool {
    let Some(q) = a.field().order() else {
        return false;
    };
    let e = (a.dim() * (a.arity() - 1)) as u32;
    q.checked_pow(e).is_some_and(|t| t <= cap)
}

/// Smallest Engel subalgebra over the algebra's own field. Tuples that span
/// the same subspace give proportional derivations, so the exhaustive mode
/// walks `(n-1)`-dimensional subspaces instead of tuples.
fn search_level<F: Field>(a: &NLieAlgebra<F>, opts: &EngelSearch, seed: u64) -> Level<F> {
    let f = a.field();
    let (n, d) = (a.arity(), a.dim());
    let floor = n - 1;
    let mut best: Option<Found<F>> = None;
    let mut examined = 0;
    let consider = |tuple: Vec<Vector<F>>, best: &mut Option<Found<F>>| -> bool {
        let h = engel_subalgebra(a, &tuple).expect("shape checked");
        if best.as_ref().is_none_or(|b| h.dim() < b.h.dim()) {
            let done = h.dim() <= floor;
            *best = Some(Found { h, witness: tuple });
            return done;
        }
        false
    };
    if exhaustive_feasible(a, opts.exhaustive_cap) {
        for s in SubspaceEnumerator::new(f, d, floor).expect("finite field") {
            examined += 1;
            if consider(s.basis().to_vec(), &mut best) {
                break;
            }
        }
        return Level {
            best,
            examined,
            exhaustive: true,
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..opts.budget {
        examined += 1;
        let tuple: Vec<Vector<F>> = (0..floor)
            .map(|_| (0..d).map(|_| f.random(&mut rng)).collect())
            .collect();
        if consider(tuple, &mut best) {
            break;
        }
    }
    Level {
        best,
        examined,
        exhaustive: false,
    }
}

/// Engel search and Cartan check over the algebra's own field, labelled with
/// the extension degree it was reached at.
pub(crate) fn engel_cartan_here<F: Field>(
    a: &NLieAlgebra<F>,
    opts: &EngelSearch,
    degree: u32,
) -> Result<CartanReport<F>, AlgebraError> {
    let level = search_level(a, opts, opts.seed.wrapping_add(degree as u64 - 1));
    let Some(found) = level.best.filter(|b| !b.h.is_full()) else {
        return Err(AlgebraError::BudgetExceeded {
            best_dim: Some(a.dim()),
            degree,
        });
    };
    let nilpotent = is_nilpotent_subalgebra(a, &found.h);
    let self_normalizing = normalizer(a, &found.h) == found.h;
    if !(nilpotent && self_normalizing) {
        return Err(AlgebraError::CartanCheckFailed {
            dim: found.h.dim(),
            degree,
            nilpotent,
            self_normalizing,
        });
    }
    Ok(CartanReport {
        algebra: a.clone(),
        h: found.h,
        witness: found.witness,
        nilpotent,
        self_normalizing,
        extension_degree: degree,
        examined: level.examined,
        exhaustive: level.exhaustive,
    })
}

/// A minimal Engel subalgebra that passes the Cartan check, extending the
/// field by degree 2, 3, ... while the search only finds the whole algebra
/// or the minimum found is not Cartan.
pub fn minimal_engel_cartan<F: Field>(
    a: &NLieAlgebra<F>,
    opts: &EngelSearch,
) -> Result<CartanReport<F>, AlgebraError> {
    a.ensure_valid()?;
    let f = a.field();
    if a.is_nilpotent() {
        let n = a.arity();
        return Ok(CartanReport {
            algebra: a.clone(),
            h: Subspace::full(f, a.dim()),
            witness: (0..n - 1).map(|i| unit_vector(f, a.dim(), i)).collect(),
            nilpotent: true,
            self_normalizing: true,
            extension_degree: 1,
            examined: 0,
            exhaustive: false,
        });
    }
    let mut last = AlgebraError::BudgetExceeded {
        best_dim: None,
        degree: 0,
    };
    for degree in 1..=opts.max_ext.max(1) {
        let ext = match a.extend(degree) {
            Ok((ext, _)) => ext,
            Err(AlgebraError::Field(_)) if degree > 1 => break,
            Err(e) => return Err(e),
        };
        match engel_cartan_here(&ext, opts, degree) {
            Ok(r) => return Ok(r),
            Err(e) => last = e,
        }
    }
    Err(last)
}
