use alloc::vec;
use alloc::vec::Vec;

use super::{is_zero_vector, kernel, rref, unit_vector, zero_vector, LinalgError, Matrix, Vector};
use crate::combinatorics::next_combination;
use crate::field::{Embedding, Field};

/// A subspace of `F^d`, stored as the nonzero rows of its reduced
/// row-echelon basis. The representation is canonical, so `==` is subspace
/// equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Vec<Vector<F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: (0..ambient).map(|i| unit_vector(field, ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: &F, ambient: usize, vectors: Vec<Vector<F>>) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        let red = rref(field, &Matrix::from_rows(ambient, vectors));
        let basis = (0..red.rank).map(|i| red.matrix.row(i).to_vec()).collect();
        Subspace {
            ambient,
            basis,
            pivots: red.pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    /// Column indices not used as pivots; the matching unit vectors span a
    /// complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut used = vec![false; self.ambient];
        for &p in &self.pivots {
            used[p] = true;
        }
        (0..self.ambient).filter(|&j| !used[j]).collect()
    }

    /// `v` minus its projection along the basis; zero exactly when `v` lies
    /// in the subspace. The result is the canonical coset representative.
    pub fn reduce(&self, field: &F, v: &[F::Elem]) -> Vector<F> {
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            let c = out[p].clone();
            if field.is_zero(&c) {
                continue;
            }
            let neg = field.neg(&c);
            super::axpy(field, &mut out, &neg, row);
        }
        out
    }

    pub fn contains(&self, field: &F, v: &[F::Elem]) -> bool {
        is_zero_vector(field, &self.reduce(field, v))
    }

    pub fn contains_subspace(&self, field: &F, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(field, v))
    }

    /// Coordinates of `v` with respect to the basis; requires `v` in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Vector<F> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    pub fn combine(&self, field: &F, coords: &[F::Elem]) -> Vector<F> {
        let mut out = zero_vector(field, self.ambient);
        for (c, row) in coords.iter().zip(&self.basis) {
            super::axpy(field, &mut out, c, row);
        }
        out
    }

    /// Coordinates of the image of `v` in the quotient by this subspace,
    /// relative to the complement spanned by the non-pivot unit vectors.
    pub fn quotient_coordinates(&self, field: &F, v: &[F::Elem]) -> Vector<F> {
        let r = self.reduce(field, v);
        self.non_pivots().into_iter().map(|j| r[j].clone()).collect()
    }

    /// Inverse of [`Self::quotient_coordinates`]: the reduced coset representative.
    pub fn lift(&self, field: &F, coords: &[F::Elem]) -> Vector<F> {
        let mut out = zero_vector(field, self.ambient);
        for (j, c) in self.non_pivots().into_iter().zip(coords) {
            out[j] = c.clone();
        }
        out
    }

    pub fn sum(&self, field: &F, other: &Self) -> Self {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(field, self.ambient, vs)
    }

    pub fn with_vectors(&self, field: &F, extra: &[Vector<F>]) -> Self {
        let mut vs = self.basis.clone();
        vs.extend(extra.iter().cloned());
        Self::span(field, self.ambient, vs)
    }

    /// Covectors vanishing on the subspace.
    pub fn annihilator(&self, field: &F) -> Self {
        if self.basis.is_empty() {
            return Self::full(field, self.ambient);
        }
        kernel(field, &Matrix::from_rows(self.ambient, self.basis.clone()))
    }

    pub fn intersection(&self, field: &F, other: &Self) -> Self {
        let mut rows = self.annihilator(field).basis;
        rows.extend(other.annihilator(field).basis);
        if rows.is_empty() {
            return Self::full(field, self.ambient);
        }
        kernel(field, &Matrix::from_rows(self.ambient, rows))
    }

    pub fn map_field(&self, emb: &Embedding<F>) -> Self {
        let target = emb.target();
        let vs = self.basis.iter().map(|v| emb.apply_all(v)).collect();
        Self::span(target, self.ambient, vs)
    }
}

/// Extends `s` to a hyperplane by appending `e_1, e_2, ...` in index order,
/// skipping dependent vectors.
pub fn complete_to_codim1<F: Field>(field: &F, s: &Subspace<F>) -> Result<Subspace<F>, LinalgError> {
    let d = s.ambient();
    if s.is_full() {
        return Err(LinalgError::AlreadyFull);
    }
    let mut out = s.clone();
    for i in 0..d {
        if out.dim() == d - 1 {
            break;
        }
        let e = unit_vector(field, d, i);
        if !out.contains(field, &e) {
            out = out.with_vectors(field, &[e]);
        }
    }
    Ok(out)
}

/// Every `r`-dimensional subspace of `F^d` over a finite field, each once,
/// enumerated by RREF shape: pivot columns lexicographically, then free
/// entries as an odometer (last free entry fastest).
pub struct SubspaceEnumerator<F: Field> {
    field: F,
    ambient: usize,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<u64>,
    order: u64,
    done: bool,
}

impl<F: Field> SubspaceEnumerator<F> {
    /// `None` for infinite fields.
    pub fn new(field: &F, ambient: usize, dim: usize) -> Option<Self> {
        let order = field.order()?;
        let mut e = SubspaceEnumerator {
            field: field.clone(),
            ambient,
            pivots: (0..dim).collect(),
            free: Vec::new(),
            counter: Vec::new(),
            order,
            done: dim > ambient,
        };
        e.reset_free();
        Some(e)
    }

    fn reset_free(&mut self) {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        self.free = self
            .pivots
            .iter()
            .enumerate()
            .flat_map(|(row, &p)| {
                (p + 1..self.ambient)
                    .filter(|&c| !is_pivot[c])
                    .map(move |c| (row, c))
                    .collect::<Vec<_>>()
            })
            .collect();
        self.counter = vec![0; self.free.len()];
    }

    fn current(&self) -> Subspace<F> {
        let f = &self.field;
        let mut basis: Vec<Vector<F>> = self
            .pivots
            .iter()
            .map(|&p| unit_vector(f, self.ambient, p))
            .collect();
        for (&(row, col), &c) in self.free.iter().zip(&self.counter) {
            basis[row][col] = f.element(c).expect("finite field element");
        }
        Subspace {
            ambient: self.ambient,
            basis,
            pivots: self.pivots.clone(),
        }
    }

    fn advance(&mut self) {
        for i in (0..self.counter.len()).rev() {
            self.counter[i] += 1;
            if self.counter[i] < self.order {
                return;
            }
            self.counter[i] = 0;
        }
        if next_combination(&mut self.pivots, self.ambient) {
            self.reset_free();
        } else {
            self.done = true;
        }
    }
}

impl<F: Field> Iterator for SubspaceEnumerator<F> {
    type Item = Subspace<F>;

    fn next(&mut self) -> Option<Subspace<F>> {
        if self.done {
            return None;
        }
        let out = self.current();
        if self.pivots.is_empty() {
            self.done = true;
        } else {
            self.advance();
        }
        Some(out)
    }
}
