//! Brute-force ground truth over small finite fields, plus the seeded test
//! algebra generator.
//!
//! The bracket used here is a plain multilinear expansion over basis index
//! tuples, independent of the minor-based evaluation in [`crate::algebra`].

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{NLieAlgebra, StructureTensor};
use crate::combinatorics::combinations;
use crate::field::Field;
use crate::fixtures;
use crate::linalg::{axpy, dot, zero_vector, Matrix, Subspace, Vector};

/// Hyperplane enumeration is refused above `q^d = ENUMERATION_CAP`.
pub const ENUMERATION_CAP: u64 = 1 << 20;

pub const DEFAULT_DENSITY: f64 = 0.3;
pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("q^d = {q}^{d} exceeds the enumeration cap 2^20")]
    TooLarge { q: u64, d: usize },
    #[error("enumeration needs a finite field")]
    InfiniteField,
    #[error("no algebra found within {attempts} attempts")]
    NotFound { attempts: usize },
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("fixture {0:?} is not valid over this field")]
    FixtureInvalid(String),
    #[error("density must lie in [0, 1]")]
    BadDensity,
    #[error("budget must be at least 1")]
    BadBudget,
    #[error("arity {arity} does not fit dimension {dim}")]
    BadShape { arity: usize, dim: usize },
}

fn check_enumerable<F: Field>(f: &F, d: usize) -> Result<u64, OracleError> {
    let q = f.order().ok_or(OracleError::InfiniteField)?;
    match q.checked_pow(d as u32) {
        Some(t) if t <= ENUMERATION_CAP => Ok(q),
        _ => Err(OracleError::TooLarge { q, d }),
    }
}

/// Canonical covectors of `F^d`: first nonzero coordinate 1, ordered by the
/// position of that 1 and then as base-`q` counters over the later entries.
pub struct Covectors<F: Field> {
    field: F,
    d: usize,
    q: u64,
    lead: usize,
    tail: Vec<u64>,
}

impl<F: Field> Iterator for Covectors<F> {
    type Item = Vector<F>;

    fn next(&mut self) -> Option<Vector<F>> {
        if self.lead >= self.d {
            return None;
        }
        let f = &self.field;
        let mut c = zero_vector(f, self.d);
        c[self.lead] = f.one();
        for (k, &t) in self.tail.iter().enumerate() {
            c[self.lead + 1 + k] = f.element(t).expect("finite field element");
        }
        let mut i = self.tail.len();
        loop {
            if i == 0 {
                self.lead += 1;
                self.tail = vec![0; self.d.saturating_sub(self.lead + 1)];
                break;
            }
            i -= 1;
            self.tail[i] += 1;
            if self.tail[i] < self.q {
                break;
            }
            self.tail[i] = 0;
        }
        Some(c)
    }
}

pub fn codim1_covectors<F: Field>(f: &F, d: usize) -> Result<Covectors<F>, OracleError> {
    let q = check_enumerable(f, d)?;
    Ok(Covectors {
        field: f.clone(),
        d,
        q,
        lead: 0,
        tail: vec![0; d.saturating_sub(1)],
    })
}

/// Basis `e_j - c_j e_lead` (`j != lead`) of the kernel of a canonical covector.
fn hyperplane_basis<F: Field>(f: &F, c: &[F::Elem]) -> Vec<Vector<F>> {
    let d = c.len();
    let lead = c.iter().position(|x| !f.is_zero(x)).expect("nonzero covector");
    (0..d)
        .filter(|&j| j != lead)
        .map(|j| {
            let mut v = zero_vector(f, d);
            v[j] = f.one();
            v[lead] = f.neg(&c[j]);
            v
        })
        .collect()
}

/// Every hyperplane of `F^d` exactly once, in covector order.
pub fn enumerate_codim1_subspaces<F: Field>(
    f: &F,
    d: usize,
) -> Result<impl Iterator<Item = Subspace<F>>, OracleError> {
    let field = f.clone();
    Ok(codim1_covectors(f, d)?
        .map(move |c| Subspace::span(&field, d, hyperplane_basis(&field, &c))))
}

/// `[x_1, ..., x_n]` as `sum x_1[i_1] ... x_n[i_n] [e_i1, ..., e_in]` over
/// distinct index tuples, skipping zero coordinates.
pub fn naive_bracket<F: Field>(a: &NLieAlgebra<F>, xs: &[Vector<F>]) -> Vector<F> {
    let t = a.tensor();
    let f = t.field();
    let n = t.arity();
    assert_eq!(xs.len(), n, "arity");
    let mut out = zero_vector(f, t.dim());
    let mut idx = vec![0usize; n];
    fn rec<F: Field>(
        t: &StructureTensor<F>,
        xs: &[Vector<F>],
        pos: usize,
        coeff: F::Elem,
        idx: &mut [usize],
        out: &mut Vector<F>,
    ) {
        let f = t.field();
        if pos == xs.len() {
            if let Some((odd, v)) = t.basis_bracket(idx) {
                let c = if odd { f.neg(&coeff) } else { coeff };
                axpy(f, out, &c, v);
            }
            return;
        }
        for (i, x) in xs[pos].iter().enumerate() {
            if f.is_zero(x) || idx[..pos].contains(&i) {
                continue;
            }
            idx[pos] = i;
            rec(t, xs, pos + 1, f.mul(&coeff, x), idx, out);
        }
    }
    rec(t, xs, 0, f.one(), &mut idx, &mut out);
    out
}

/// Hyperplane subalgebras, as `(canonical covector, subspace)` in covector order.
pub fn all_codim1_subalgebras_with_covectors<F: Field>(
    a: &NLieAlgebra<F>,
) -> Result<Vec<(Vector<F>, Subspace<F>)>, OracleError> {
    let f = a.field();
    let (n, d) = (a.arity(), a.dim());
    let subsets = combinations(d - 1, n);
    let mut out = Vec::new();
    for c in codim1_covectors(f, d)? {
        let basis = hyperplane_basis(f, &c);
        let closed = subsets.iter().all(|s| {
            let xs: Vec<Vector<F>> = s.iter().map(|&i| basis[i].clone()).collect();
            f.is_zero(&dot(f, &c, &naive_bracket(a, &xs)))
        });
        if closed {
            let s = Subspace::span(f, d, basis);
            out.push((c, s));
        }
    }
    Ok(out)
}

pub fn all_codim1_subalgebras<F: Field>(a: &NLieAlgebra<F>) -> Result<Vec<Subspace<F>>, OracleError> {
    Ok(all_codim1_subalgebras_with_covectors(a)?
        .into_iter()
        .map(|(_, s)| s)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomWitness<F: Field> {
    pub xs: Vec<Vector<F>>,
    pub ys: Vec<Vector<F>>,
    pub lhs: Vector<F>,
    pub rhs: Vector<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomCheckReport<F: Field> {
    pub trials: usize,
    pub witness: Option<RandomWitness<F>>,
}

impl<F: Field> RandomCheckReport<F> {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// The Filippov identity on seeded random vectors, with the naive bracket.
pub fn filippov_random_check<F: Field>(
    a: &NLieAlgebra<F>,
    trials: usize,
    seed: u64,
) -> RandomCheckReport<F> {
    let f = a.field();
    let (n, d) = (a.arity(), a.dim());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample = |k: usize| -> Vec<Vector<F>> {
        (0..k)
            .map(|_| (0..d).map(|_| f.random(&mut rng)).collect())
            .collect()
    };
    for trial in 0..trials {
        let xs = sample(n - 1);
        let ys = sample(n);
        let mut outer = xs.clone();
        outer.push(naive_bracket(a, &ys));
        let lhs = naive_bracket(a, &outer);
        let mut rhs = zero_vector(f, d);
        for i in 0..n {
            let mut inner = xs.clone();
            inner.push(ys[i].clone());
            let mut y = ys.clone();
            y[i] = naive_bracket(a, &inner);
            let term = naive_bracket(a, &y);
            axpy(f, &mut rhs, &f.one(), &term);
        }
        if lhs != rhs {
            return RandomCheckReport {
                trials: trial + 1,
                witness: Some(RandomWitness { xs, ys, lhs, rhs }),
            };
        }
    }
    RandomCheckReport {
        trials,
        witness: None,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Strategy {
    /// Each increasing tuple gets a uniformly random value with probability
    /// `density`; rejection-sampled until valid.
    Sparse { density: f64, budget: usize },
    /// As `Sparse`, also requiring a perfect algebra.
    PerfectFilter { density: f64, budget: usize },
    Fixture(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec<F: Field> {
    pub arity: usize,
    pub dim: usize,
    pub field: F,
    pub strategy: Strategy,
    pub seed: u64,
}

/// Names accepted by [`Strategy::Fixture`].
pub const FIXTURE_NAMES: [&str; 4] = ["abelian", "n5", "a4", "pair_char2"];

fn sample_tensor<F: Field, R: Rng>(spec: &GeneratorSpec<F>, density: f64, rng: &mut R) -> StructureTensor<F> {
    let f = &spec.field;
    let mut t = StructureTensor::new(f.clone(), spec.arity, spec.dim).expect("shape checked");
    for args in combinations(spec.dim, spec.arity) {
        if density > 0.0 && rng.random_bool(density) {
            let v: Vector<F> = (0..spec.dim).map(|_| f.random(&mut *rng)).collect();
            t.set(&args, v).expect("increasing tuple");
        }
    }
    t
}

/// A valid algebra as described by `spec`; same spec, same tensor.
pub fn random_algebra<F: Field>(spec: &GeneratorSpec<F>) -> Result<NLieAlgebra<F>, OracleError> {
    if spec.arity < 2 || spec.dim < spec.arity {
        return Err(OracleError::BadShape {
            arity: spec.arity,
            dim: spec.dim,
        });
    }
    let (density, budget, perfect) = match &spec.strategy {
        Strategy::Sparse { density, budget } => (*density, *budget, false),
        Strategy::PerfectFilter { density, budget } => (*density, *budget, true),
        Strategy::Fixture(name) => return fixture(spec, name),
    };
    if !(0.0..=1.0).contains(&density) {
        return Err(OracleError::BadDensity);
    }
    if budget == 0 {
        return Err(OracleError::BadBudget);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..budget {
        let a = NLieAlgebra::validated(sample_tensor(spec, density, &mut rng));
        if a.ensure_valid().is_ok() && (!perfect || a.is_perfect()) {
            return Ok(a);
        }
    }
    Err(OracleError::NotFound { attempts: budget })
}

fn fixture<F: Field>(spec: &GeneratorSpec<F>, name: &str) -> Result<NLieAlgebra<F>, OracleError> {
    let f = &spec.field;
    let a = match name {
        "abelian" => fixtures::abelian(f, spec.arity, spec.dim),
        "n5" => fixtures::n5(f),
        "a4" => fixtures::a4(f),
        "pair_char2" => fixtures::pair_char2(f),
        _ => return Err(OracleError::UnknownFixture(name.into())),
    };
    if (a.arity(), a.dim()) != (spec.arity, spec.dim) {
        return Err(OracleError::BadShape {
            arity: spec.arity,
            dim: spec.dim,
        });
    }
    let a = NLieAlgebra::validated(a.tensor().clone());
    a.ensure_valid()
        .map_err(|_| OracleError::FixtureInvalid(name.into()))?;
    Ok(a)
}

/// Independent subalgebra test through the naive bracket, for cross-checks.
pub fn naive_is_subalgebra<F: Field>(a: &NLieAlgebra<F>, s: &Subspace<F>) -> bool {
    let f = a.field();
    let n = a.arity();
    let ann = s.annihilator(f);
    if ann.is_zero() {
        return true;
    }
    let checks = Matrix::from_rows(a.dim(), ann.basis().to_vec());
    combinations(s.dim(), n).into_iter().all(|t| {
        let xs: Vec<Vector<F>> = t.iter().map(|&i| s.basis()[i].clone()).collect();
        checks.mul_vec(f, &naive_bracket(a, &xs)).iter().all(|x| f.is_zero(x))
    })
}
