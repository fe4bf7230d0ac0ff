//! Dense exact linear algebra over a [`Field`].

mod eigen;
mod subspace;

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Embedding, Field, FieldError, Poly};

pub use eigen::{common_eigenvector, generalized_eigenspace, CommonEigenvector};
pub use subspace::{complete_to_codim1, Subspace, SubspaceEnumerator};

/// Coordinates of a vector in the ambient space.
pub type Vector<F> = Vec<<F as Field>::Elem>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrices {first} and {second} do not commute")]
    NotCommuting { first: usize, second: usize },
    #[error("extension of degree {needed} needed, budget is {budget}")]
    ExtensionBudgetExceeded { needed: u32, budget: u32 },
    #[error("subspace is already the whole space")]
    AlreadyFull,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub fn zero_vector<F: Field>(field: &F, d: usize) -> Vector<F> {
    vec![field.zero(); d]
}

pub fn unit_vector<F: Field>(field: &F, d: usize, i: usize) -> Vector<F> {
    let mut v = zero_vector(field, d);
    v[i] = field.one();
    v
}

pub fn is_zero_vector<F: Field>(field: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|a| field.is_zero(a))
}

pub fn add_vectors<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
}

pub fn sub_vectors<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vector<F> {
    a.iter().zip(b).map(|(x, y)| field.sub(x, y)).collect()
}

pub fn scale_vector<F: Field>(field: &F, c: &F::Elem, a: &[F::Elem]) -> Vector<F> {
    a.iter().map(|x| field.mul(c, x)).collect()
}

/// `acc += c * v`
pub fn axpy<F: Field>(field: &F, acc: &mut [F::Elem], c: &F::Elem, v: &[F::Elem]) {
    if field.is_zero(c) {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !field.is_zero(x) {
            *a = field.add(a, &field.mul(c, x));
        }
    }
}

pub fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(cols: usize, rows: Vec<Vector<F>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vector<F>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, a) in c.iter().enumerate() {
                m.data[i * columns.len() + j] = a.clone();
            }
        }
        m
    }

    pub fn diagonal(field: &F, entries: &[F::Elem]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(field, n, n);
        for (i, a) in entries.iter().enumerate() {
            m.data[i * n + i] = a.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: F::Elem) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self, field: &F) -> bool {
        self.data.iter().all(|a| field.is_zero(a))
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: add_vectors(field, &self.data, &other.data),
        }
    }

    pub fn sub(&self, field: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: sub_vectors(field, &self.data, &other.data),
        }
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: scale_vector(field, c, &self.data),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, field: &F, c: &F::Elem, other: &Self) {
        axpy(field, &mut self.data, c, &other.data);
    }

    pub fn mul(&self, field: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = Self::zeros(field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if field.is_zero(a) {
                    continue;
                }
                let (start, end) = (i * other.cols, (i + 1) * other.cols);
                axpy(field, &mut out.data[start..end], a, other.row(k));
            }
        }
        out
    }

    pub fn mul_vec(&self, field: &F, v: &[F::Elem]) -> Vector<F> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows).map(|i| dot(field, self.row(i), v)).collect()
    }

    pub fn pow(&self, field: &F, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(field, &base);
            }
        }
        acc
    }

    /// `self - lambda * I`
    pub fn shift(&self, field: &F, lambda: &F::Elem) -> Self {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.rows {
            let v = field.sub(out.get(i, i), lambda);
            out.set(i, i, v);
        }
        out
    }

    pub fn commutes_with(&self, field: &F, other: &Self) -> bool {
        self.mul(field, other) == other.mul(field, self)
    }

    pub fn map_field(&self, emb: &Embedding<F>) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: emb.apply_all(&self.data),
        }
    }

    /// Evaluates a polynomial at this (square) matrix by Horner's rule.
    pub fn eval_poly(&self, field: &F, poly: &Poly<F>) -> Self {
        let n = self.rows;
        let mut acc = Self::zeros(field, n, n);
        for c in poly.coeffs().iter().rev() {
            acc = acc.mul(field, self);
            for i in 0..n {
                let v = field.add(acc.get(i, i), c);
                acc.set(i, i, v);
            }
        }
        acc
    }
}

/// Reduced row-echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref<F: Field> {
    pub matrix: Matrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn rref<F: Field>(field: &F, m: &Matrix<F>) -> Rref<F> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(a.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            let v = field.mul(a.get(r, j), &inv);
            a.set(r, j, v);
        }
        let pivot_row: Vector<F> = a.row(r).to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c).clone();
            if field.is_zero(&factor) {
                continue;
            }
            let neg = field.neg(&factor);
            axpy(field, &mut a.data[i * cols..(i + 1) * cols], &neg, &pivot_row);
        }
        pivots.push(c);
        r += 1;
    }
    Rref {
        matrix: a,
        rank: r,
        pivots,
    }
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F>) -> usize {
    rref(field, m).rank
}

/// Null space `{x : M x = 0}`.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F>) -> Subspace<F> {
    let red = rref(field, m);
    let cols = m.cols;
    let mut is_pivot = vec![false; cols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    let basis = (0..cols)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = zero_vector(field, cols);
            v[free] = field.one();
            for (row, &p) in red.pivots.iter().enumerate() {
                v[p] = field.neg(red.matrix.get(row, free));
            }
            v
        })
        .collect();
    Subspace::span(field, cols, basis)
}

/// Determinant by elimination. Panics on non-square input.
pub fn determinant<F: Field>(field: &F, m: &Matrix<F>) -> F::Elem {
    assert!(m.is_square());
    let n = m.rows;
    let mut a = m.clone();
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !field.is_zero(a.get(i, c))) else {
            return field.zero();
        };
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
            }
            det = field.neg(&det);
        }
        let pivot = a.get(c, c).clone();
        det = field.mul(&det, &pivot);
        let inv = field.inv(&pivot).expect("nonzero pivot");
        for i in c + 1..n {
            let factor = field.mul(a.get(i, c), &inv);
            if field.is_zero(&factor) {
                continue;
            }
            for j in c..n {
                let v = field.sub(a.get(i, j), &field.mul(&factor, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    det
}

/// Characteristic polynomial `det(xI - M)` by Berkowitz's division-free algorithm.
pub fn char_poly<F: Field>(field: &F, m: &Matrix<F>) -> Result<Poly<F>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NonSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    // coefficients highest degree first
    let mut p: Vec<F::Elem> = vec![field.one()];
    for r in 0..n {
        // leading principal r x r block, row/column r borders
        let a = m.get(r, r).clone();
        let row: Vector<F> = (0..r).map(|j| m.get(r, j).clone()).collect();
        let mut col: Vector<F> = (0..r).map(|i| m.get(i, r).clone()).collect();
        let mut t = Vec::with_capacity(r + 2);
        t.push(field.one());
        t.push(field.neg(&a));
        for _ in 0..r {
            t.push(field.neg(&dot(field, &row, &col)));
            col = (0..r)
                .map(|i| {
                    (0..r).fold(field.zero(), |acc, j| {
                        field.add(&acc, &field.mul(m.get(i, j), &col[j]))
                    })
                })
                .collect();
        }
        let next: Vec<F::Elem> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(field.zero(), |acc, j| {
                    field.add(&acc, &field.mul(&t[i - j], &p[j]))
                })
            })
            .collect();
        p = next;
    }
    p.reverse();
    Ok(Poly::new(field, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, Gf, Rationals};

    fn gf2() -> Gf {
        make_field(2, 1).unwrap()
    }

    fn mat(rows: &[&[u64]]) -> Matrix<Gf> {
        let cols = rows[0].len();
        Matrix::from_rows(cols, rows.iter().map(|r| r.to_vec()).collect())
    }

    #[test]
    fn rref_examples() {
        let f = gf2();
        let id = Matrix::identity(&f, 3);
        let r = rref(&f, &id);
        assert_eq!((r.matrix, r.rank), (id, 3));
        let z = Matrix::zeros(&f, 2, 2);
        assert_eq!(rref(&f, &z).rank, 0);
        let r = rref(&f, &mat(&[&[1, 1], &[1, 1]]));
        assert_eq!(r.matrix, mat(&[&[1, 1], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn kernel_examples() {
        let f = gf2();
        assert_eq!(kernel(&f, &Matrix::identity(&f, 4)).dim(), 0);
        assert_eq!(kernel(&f, &Matrix::zeros(&f, 4, 4)), Subspace::full(&f, 4));
        let k = kernel(&f, &mat(&[&[1, 1]]));
        assert_eq!(k.basis(), &[vec![1, 1]]);
    }

    #[test]
    fn char_poly_examples() {
        let f = gf2();
        let z = char_poly(&f, &Matrix::zeros(&f, 3, 3)).unwrap();
        assert_eq!(z.coeffs(), &[0, 0, 0, 1]);
        let id = char_poly(&f, &Matrix::identity(&f, 2)).unwrap();
        assert_eq!(id.coeffs(), &[1, 0, 1]);
        let companion = mat(&[&[0, 1], &[1, 1]]);
        assert_eq!(char_poly(&f, &companion).unwrap().coeffs(), &[1, 1, 1]);
        assert_eq!(
            char_poly(&f, &Matrix::zeros(&f, 2, 3)),
            Err(LinalgError::NonSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn char_poly_matches_determinant_over_q() {
        let q = Rationals;
        let m = Matrix::from_rows(
            3,
            vec![
                vec![q.from_i64(2), q.frac(1, 2), q.from_i64(0)],
                vec![q.from_i64(-1), q.from_i64(3), q.from_i64(4)],
                vec![q.frac(2, 3), q.from_i64(1), q.from_i64(-5)],
            ],
        );
        let p = char_poly(&q, &m).unwrap();
        // det(xI - M) at x = 0 is -det(M) for odd size
        assert_eq!(p.coeff(&q, 0), q.neg(&determinant(&q, &m)));
        let trace = q.add(&q.add(m.get(0, 0), m.get(1, 1)), m.get(2, 2));
        assert_eq!(p.coeff(&q, 2), q.neg(&trace));
    }
}
