//! Codimension-1 subalgebras of `(n+2)`-dimensional n-Lie algebras.
//!
//! [`find_codim1`] runs a fixed case analysis: a proper derived algebra, then
//! a minimal Engel (Cartan) subalgebra `H` of dimension `n+1`, `n` or `n-1`,
//! the last split further by the nonzero eigenvalues of the inner derivation
//! of `H`. Every result is re-verified with [`NLieAlgebra::is_subalgebra`].

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{
    common_eigen_weights, weight_decomposition, AlgebraError, CartanReport, Derivation,
    EngelSearch, NLieAlgebra, EXHAUSTIVE_SEARCH_CAP,
};
use crate::field::Field;
use crate::linalg::{complete_to_codim1, is_zero_vector, kernel, scale_vector, Subspace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    DerivedProper,
    CartanHyperplane,
    CartanPlusEigenvector,
    PairCharNe2,
    PairChar2,
    TripleCharNe2,
}

impl Branch {
    pub const ALL: [Branch; 6] = [
        Branch::DerivedProper,
        Branch::CartanHyperplane,
        Branch::CartanPlusEigenvector,
        Branch::PairCharNe2,
        Branch::PairChar2,
        Branch::TripleCharNe2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Branch::DerivedProper => "DerivedProper",
            Branch::CartanHyperplane => "CartanHyperplane",
            Branch::CartanPlusEigenvector => "CartanPlusEigenvector",
            Branch::PairCharNe2 => "PairCharNe2",
            Branch::PairChar2 => "PairChar2",
            Branch::TripleCharNe2 => "TripleCharNe2",
        }
    }

    pub fn from_name(s: &str) -> Option<Branch> {
        Branch::ALL.into_iter().find(|b| b.name() == s)
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseTrace<F: Field> {
    pub branch: Branch,
    /// The Cartan subalgebra, absent for `DerivedProper`.
    pub h: Option<Subspace<F>>,
    /// Tuple whose inner derivation was used, when one was.
    pub witness: Option<Vec<Vector<F>>>,
    /// `alpha` values (`CartanPlusEigenvector`) or the eigenvalues the
    /// branch was decided on.
    pub eigenvalues: Vec<F::Elem>,
    /// `u`, then `v` when the branch has one.
    pub vectors: Vec<Vector<F>>,
    /// Only for `PairChar2` and the equal-eigenvalue `TripleCharNe2` case:
    /// `d v = alpha v + theta u`.
    pub theta: Option<F::Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codim1Result<F: Field> {
    pub field: F,
    /// The input algebra over `field`.
    pub algebra: NLieAlgebra<F>,
    pub subalgebra: Subspace<F>,
    pub trace: CaseTrace<F>,
    pub extension_degree: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContradictionKind {
    /// Characteristic 2, three distinct nonzero eigenvalues summing to 0.
    CharTwoTriple,
    /// No pair and no triple of nonzero eigenvalues sums to 0.
    NoZeroSum,
    /// The 0-component of the derivation differs from `H`.
    ZeroComponentMismatch,
    /// The minimal Engel subalgebra has a dimension outside `[n-1, n+1]`.
    EngelBound,
    /// The candidate failed the final subalgebra check.
    VerificationFailed,
}

impl ContradictionKind {
    pub fn name(self) -> &'static str {
        match self {
            ContradictionKind::CharTwoTriple => "CharTwoTriple",
            ContradictionKind::NoZeroSum => "NoZeroSum",
            ContradictionKind::ZeroComponentMismatch => "ZeroComponentMismatch",
            ContradictionKind::EngelBound => "EngelBound",
            ContradictionKind::VerificationFailed => "VerificationFailed",
        }
    }
}

/// A configuration the case analysis says cannot occur for a valid algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContradictionReport<F: Field> {
    pub kind: ContradictionKind,
    pub field: F,
    pub arity: usize,
    pub h: Option<Subspace<F>>,
    pub derivation: Option<Derivation<F>>,
    pub eigenvalues: Vec<F::Elem>,
    /// `u, v, w` where available.
    pub vectors: Vec<Vector<F>>,
    /// The candidate subspace, for `VerificationFailed`.
    pub candidate: Option<Subspace<F>>,
    pub triple: Option<TripleEvaluation<F>>,
    pub conclusion: String,
}

/// The two evaluations of
/// `P = [a.., a_{n-2}, u, [a.., a_{n-1}, v, w]]` with `a.. = (a_1, ..., a_{n-3})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleEvaluation<F: Field> {
    /// Permutation of `H`'s basis giving `(a_1, ..., a_{n-1})`, or `None`
    /// when no ordering makes `[a.., u, v, w]` nonzero (the first ordering
    /// is then evaluated anyway).
    pub ordering: Option<Vec<usize>>,
    pub ordered_h: Vec<Vector<F>>,
    /// `[a.., a_{n-1}, v, w]`
    pub inner: Vector<F>,
    /// `P` evaluated directly.
    pub direct: Vector<F>,
    /// `P` through the Filippov expansion:
    /// `sum_i [y_1, .., [a.., a_{n-2}, u, y_i], .., y_n]`.
    pub expansion: Vector<F>,
    /// The individual terms of the expansion, by position `i`.
    pub expansion_terms: Vec<Vector<F>>,
    /// `alpha [a.., u, v, w]`
    pub predicted: Vector<F>,
}

impl<F: Field> TripleEvaluation<F> {
    pub fn evaluations_differ(&self) -> bool {
        self.direct != self.expansion
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Codim1Error<F: Field> {
    #[error("the structure constants violate the Filippov identity")]
    InvalidAlgebra,
    #[error("dimension {dim} is not arity + 2 = {}; the theorem covers (n+2)-dimensional n-Lie algebras only", arity + 2)]
    DimensionMismatch { arity: usize, dim: usize },
    #[error("extension of total degree {needed} needed, budget is {budget}")]
    ExtensionBudgetExceeded { needed: u32, budget: u32 },
    #[error("Engel search exhausted at extension degree {degree}: {reason}")]
    BudgetExceeded { degree: u32, reason: AlgebraError },
    #[error("case analysis reached an impossible configuration ({})", .0.kind.name())]
    PaperContradiction(Box<ContradictionReport<F>>),
    #[error(transparent)]
    Algebra(AlgebraError),
}

impl<F: Field> From<AlgebraError> for Codim1Error<F> {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::InvalidAlgebra => Codim1Error::InvalidAlgebra,
            AlgebraError::ExtensionBudgetExceeded { needed, budget } => {
                Codim1Error::ExtensionBudgetExceeded { needed, budget }
            }
            other => Codim1Error::Algebra(other),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Codim1Options {
    /// Largest total extension degree.
    pub max_ext: u32,
    pub seed: u64,
    /// Random Engel tuples per extension level.
    pub budget: usize,
    pub exhaustive_cap: u64,
}

impl Default for Codim1Options {
    fn default() -> Self {
        Codim1Options {
            max_ext: 12,
            seed: 0,
            budget: 5000,
            exhaustive_cap: EXHAUSTIVE_SEARCH_CAP,
        }
    }
}

enum Step<F: Field> {
    Done(Codim1Result<F>),
    /// Restart over the extension of this total degree.
    Restart(u32, Codim1Error<F>),
}

pub fn find_codim1<F: Field>(
    a: &NLieAlgebra<F>,
    opts: &Codim1Options,
) -> Result<Codim1Result<F>, Codim1Error<F>> {
    let (n, d) = (a.arity(), a.dim());
    if d != n + 2 {
        return Err(Codim1Error::DimensionMismatch { arity: n, dim: d });
    }
    a.ensure_valid()?;
    let f = a.field();

    let derived = a.derived_algebra();
    if !derived.is_full() {
        let s = complete_to_codim1(f, &derived).map_err(AlgebraError::from)?;
        let trace = CaseTrace {
            branch: Branch::DerivedProper,
            h: None,
            witness: None,
            eigenvalues: Vec::new(),
            vectors: Vec::new(),
            theta: None,
        };
        return finish(a.clone(), 1, s, trace);
    }

    let mut m = 1u32;
    loop {
        let ext = match a.extend(m) {
            Ok((ext, _)) => ext,
            Err(e) => return Err(e.into()),
        };
        match attempt(&ext, m, opts)? {
            Step::Done(r) => return Ok(r),
            Step::Restart(next, err) => {
                debug_assert!(next > m);
                if next > opts.max_ext || f.order().is_none() {
                    return Err(err);
                }
                m = next;
            }
        }
    }
}

fn finish<F: Field>(
    algebra: NLieAlgebra<F>,
    m: u32,
    s: Subspace<F>,
    trace: CaseTrace<F>,
) -> Result<Codim1Result<F>, Codim1Error<F>> {
    let n = algebra.arity();
    if s.dim() != n + 1 || !algebra.is_subalgebra(&s) {
        let report = ContradictionReport {
            kind: ContradictionKind::VerificationFailed,
            field: algebra.field().clone(),
            arity: n,
            h: trace.h.clone(),
            derivation: None,
            eigenvalues: trace.eigenvalues.clone(),
            vectors: trace.vectors.clone(),
            candidate: Some(s),
            triple: None,
            conclusion: alloc::format!(
                "branch {} produced a subspace that is not a codimension-1 subalgebra",
                trace.branch
            ),
        };
        return Err(Codim1Error::PaperContradiction(Box::new(report)));
    }
    Ok(Codim1Result {
        field: algebra.field().clone(),
        algebra,
        subalgebra: s,
        trace,
        extension_degree: m,
    })
}

fn contradiction<F: Field>(
    a: &NLieAlgebra<F>,
    kind: ContradictionKind,
    h: &Subspace<F>,
    derivation: Option<Derivation<F>>,
    eigenvalues: Vec<F::Elem>,
    conclusion: &str,
) -> Codim1Error<F> {
    Codim1Error::PaperContradiction(Box::new(ContradictionReport {
        kind,
        field: a.field().clone(),
        arity: a.arity(),
        h: Some(h.clone()),
        derivation,
        eigenvalues,
        vectors: Vec::new(),
        candidate: None,
        triple: None,
        conclusion: conclusion.into(),
    }))
}

/// One pass of the case analysis over `a` (already extended to degree `m`).
fn attempt<F: Field>(
    a: &NLieAlgebra<F>,
    m: u32,
    opts: &Codim1Options,
) -> Result<Step<F>, Codim1Error<F>> {
    let f = a.field();
    let n = a.arity();
    let search = EngelSearch {
        budget: opts.budget,
        seed: opts.seed,
        max_ext: opts.max_ext,
        exhaustive_cap: opts.exhaustive_cap,
    };
    let cartan: CartanReport<F> = match crate::algebra::engel_cartan_here(a, &search, m) {
        Ok(r) => r,
        Err(
            e @ (AlgebraError::BudgetExceeded { .. } | AlgebraError::CartanCheckFailed { .. }),
        ) => {
            return Ok(Step::Restart(
                m + 1,
                Codim1Error::BudgetExceeded {
                    degree: m,
                    reason: e,
                },
            ))
        }
        Err(e) => return Err(e.into()),
    };
    let h = cartan.h;
    // Budget left for extensions on top of the current degree.
    let local_budget = opts.max_ext / m;
    let over_budget = |s: u32| Codim1Error::ExtensionBudgetExceeded {
        needed: m.saturating_mul(s),
        budget: opts.max_ext,
    };

    if h.dim() == n + 1 {
        let trace = CaseTrace {
            branch: Branch::CartanHyperplane,
            h: Some(h.clone()),
            witness: Some(cartan.witness),
            eigenvalues: Vec::new(),
            vectors: Vec::new(),
            theta: None,
        };
        return finish(a.clone(), m, h, trace).map(Step::Done);
    }

    if h.dim() == n {
        let cw = match common_eigen_weights(a, &h, local_budget) {
            Ok(cw) => cw,
            Err(AlgebraError::ExtensionBudgetExceeded { needed, .. }) => {
                return Err(over_budget(needed))
            }
            Err(e) => return Err(e.into()),
        };
        if cw.extension_degree > 1 {
            let next = m * cw.extension_degree;
            return Ok(Step::Restart(next, over_budget(cw.extension_degree)));
        }
        let s = h.with_vectors(f, core::slice::from_ref(&cw.u));
        let trace = CaseTrace {
            branch: Branch::CartanPlusEigenvector,
            h: Some(h),
            witness: Some(cartan.witness),
            eigenvalues: cw.alpha.into_iter().map(|(_, x)| x).collect(),
            vectors: alloc::vec![cw.u],
            theta: None,
        };
        return finish(a.clone(), m, s, trace).map(Step::Done);
    }

    if h.dim() + 1 != n {
        return Err(contradiction(
            a,
            ContradictionKind::EngelBound,
            &h,
            None,
            Vec::new(),
            "minimal Engel subalgebra of a perfect algebra has dimension outside [n-1, n+1]",
        ));
    }

    let der = a.inner_derivation(h.basis())?;
    let w = match weight_decomposition(a, &der, local_budget) {
        Ok(w) => w,
        Err(AlgebraError::ExtensionBudgetExceeded { needed, .. }) => {
            return Err(over_budget(needed))
        }
        Err(e) => return Err(e.into()),
    };
    if w.extension_degree > 1 {
        let next = m * w.extension_degree;
        return Ok(Step::Restart(next, over_budget(w.extension_degree)));
    }
    if w.zero_component() != h {
        return Err(contradiction(
            a,
            ContradictionKind::ZeroComponentMismatch,
            &h,
            Some(der),
            w.nonzero_eigenvalues(),
            "the 0-component of the derivation of H is not H",
        ));
    }
    let lambdas = w.nonzero_eigenvalues();
    let char2 = f.characteristic() == 2;
    let dm = &der.matrix;

    let mut pair = None;
    'pairs: for i in 0..lambdas.len() {
        for j in i + 1..lambdas.len() {
            if f.is_zero(&f.add(&lambdas[i], &lambdas[j])) {
                pair = Some((i, j));
                break 'pairs;
            }
        }
    }

    let base_trace = |branch, eigenvalues, vectors, theta| CaseTrace {
        branch,
        h: Some(h.clone()),
        witness: Some(h.basis().to_vec()),
        eigenvalues,
        vectors,
        theta,
    };

    if let Some((i, j)) = pair {
        let (alpha, beta) = (lambdas[i].clone(), lambdas[j].clone());
        let (u, v, theta, branch) = if char2 {
            let (u, v, theta) = two_vectors_in_component(f, dm, &alpha);
            (u, v, Some(theta), Branch::PairChar2)
        } else {
            let u = eigenvector(f, dm, &alpha);
            let v = eigenvector(f, dm, &beta);
            (u, v, None, Branch::PairCharNe2)
        };
        let s = h.with_vectors(f, &[u.clone(), v.clone()]);
        let trace = base_trace(branch, alloc::vec![alpha, beta], alloc::vec![u, v], theta);
        return finish(a.clone(), m, s, trace).map(Step::Done);
    }

    let total = lambdas.iter().fold(f.zero(), |acc, l| f.add(&acc, l));
    if lambdas.len() == 3 && f.is_zero(&total) {
        if char2 {
            let vectors: Vec<Vector<F>> = lambdas.iter().map(|l| eigenvector(f, dm, l)).collect();
            let eig = (lambdas[0].clone(), lambdas[1].clone(), lambdas[2].clone());
            let uvw = (vectors[0].clone(), vectors[1].clone(), vectors[2].clone());
            let report = match unreachable_triple_check(a, &h, &der, eig, uvw) {
                Ok(r) => r,
                Err(e) => ContradictionReport {
                    kind: ContradictionKind::CharTwoTriple,
                    field: f.clone(),
                    arity: n,
                    h: Some(h.clone()),
                    derivation: Some(der.clone()),
                    eigenvalues: lambdas.clone(),
                    vectors,
                    candidate: None,
                    triple: None,
                    conclusion: alloc::format!(
                        "characteristic 2 with three distinct eigenvalues summing to 0; the \
                         diagnostic could not be staged: {e}"
                    ),
                },
            };
            return Err(Codim1Error::PaperContradiction(Box::new(report)));
        }
        let (l1, l2) = (lambdas[0].clone(), lambdas[1].clone());
        let (u, v, theta) = if l1 == l2 {
            let (u, v, theta) = two_vectors_in_component(f, dm, &l1);
            (u, v, Some(theta))
        } else {
            (eigenvector(f, dm, &l1), eigenvector(f, dm, &l2), None)
        };
        let s = h.with_vectors(f, &[u.clone(), v.clone()]);
        let trace = base_trace(Branch::TripleCharNe2, lambdas, alloc::vec![u, v], theta);
        return finish(a.clone(), m, s, trace).map(Step::Done);
    }

    Err(contradiction(
        a,
        ContradictionKind::NoZeroSum,
        &h,
        Some(der),
        lambdas,
        "no pair and no triple of the nonzero eigenvalues sums to 0",
    ))
}

/// First RREF basis vector of `ker(d - lambda)`.
fn eigenvector<F: Field>(f: &F, d: &crate::linalg::Matrix<F>, lambda: &F::Elem) -> Vector<F> {
    kernel(f, &d.shift(f, lambda)).basis()[0].clone()
}

/// `(u, v, theta)` spanning a `d`-stable plane in the `lambda`-component with
/// `d u = lambda u` and `d v = lambda v + theta u`: two eigenvectors when the
/// eigenspace has dimension at least 2, otherwise a Jordan chain.
fn two_vectors_in_component<F: Field>(
    f: &F,
    d: &crate::linalg::Matrix<F>,
    lambda: &F::Elem,
) -> (Vector<F>, Vector<F>, F::Elem) {
    let shifted = d.shift(f, lambda);
    let eig = kernel(f, &shifted);
    if eig.dim() >= 2 {
        return (eig.basis()[0].clone(), eig.basis()[1].clone(), f.zero());
    }
    let chain = kernel(f, &shifted.mul(f, &shifted));
    let v = chain
        .basis()
        .iter()
        .find(|b| !eig.contains(f, b))
        .expect("generalized eigenspace of dimension >= 2")
        .clone();
    let u = shifted.mul_vec(f, &v);
    (u, v, f.one())
}

/// Stages the characteristic-2 distinct-triple configuration and evaluates
/// `P = [a.., a_{n-2}, u, [a.., a_{n-1}, v, w]]` directly and through the
/// Filippov expansion. For a valid algebra the two agree, which forces
/// `alpha [a.., u, v, w] = 0` for every ordering of `H`'s basis.
pub fn unreachable_triple_check<F: Field>(
    a: &NLieAlgebra<F>,
    h: &Subspace<F>,
    d: &Derivation<F>,
    (alpha, beta, gamma): (F::Elem, F::Elem, F::Elem),
    (u, v, w): (Vector<F>, Vector<F>, Vector<F>),
) -> Result<ContradictionReport<F>, AlgebraError> {
    let f = a.field();
    let n = a.arity();
    if n <= 3 {
        return Err(AlgebraError::PreconditionUnmet(
            "n = 2, 3: the configuration is excluded earlier because H is not inside the derived algebra",
        ));
    }
    if f.characteristic() != 2 {
        return Err(AlgebraError::PreconditionUnmet("characteristic must be 2"));
    }
    let eig = [&alpha, &beta, &gamma];
    if eig.iter().any(|x| f.is_zero(x))
        || alpha == beta
        || beta == gamma
        || alpha == gamma
        || !f.is_zero(&f.add(&f.add(&alpha, &beta), &gamma))
    {
        return Err(AlgebraError::PreconditionUnmet(
            "alpha, beta, gamma must be distinct, nonzero and sum to 0",
        ));
    }
    if h.dim() != n - 1 {
        return Err(AlgebraError::PreconditionUnmet("dim H must be n - 1"));
    }
    for (x, l) in [(&u, &alpha), (&v, &beta), (&w, &gamma)] {
        if x.len() != a.dim() || is_zero_vector(f, x) || d.matrix.mul_vec(f, x) != scale_vector(f, l, x) {
            return Err(AlgebraError::PreconditionUnmet(
                "u, v, w must be eigenvectors of d for alpha, beta, gamma",
            ));
        }
    }

    let hb = h.basis();
    let mut perm: Vec<usize> = (0..n - 1).collect();
    let mut found = None;
    loop {
        let mut args: Vec<Vector<F>> = perm[..n - 3].iter().map(|&i| hb[i].clone()).collect();
        args.extend([u.clone(), v.clone(), w.clone()]);
        if !is_zero_vector(f, &a.bracket(&args)?) {
            found = Some(perm.clone());
            break;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    let order = found.clone().unwrap_or_else(|| (0..n - 1).collect());
    let ordered: Vec<Vector<F>> = order.iter().map(|&i| hb[i].clone()).collect();
    let prefix = &ordered[..n - 3];

    let with = |xs: &[&Vector<F>]| -> Vec<Vector<F>> {
        let mut out = prefix.to_vec();
        out.extend(xs.iter().map(|x| (*x).clone()));
        out
    };
    let inner = a.bracket(&with(&[&ordered[n - 2], &v, &w]))?;
    let x = with(&[&ordered[n - 3], &u]);
    let mut outer = x.clone();
    outer.push(inner.clone());
    let direct = a.bracket(&outer)?;

    let ys = with(&[&ordered[n - 2], &v, &w]);
    let mut expansion = crate::linalg::zero_vector(f, a.dim());
    let mut terms = Vec::with_capacity(n);
    for i in 0..n {
        let mut xi = x.clone();
        xi.push(ys[i].clone());
        let inner_i = a.bracket(&xi)?;
        let mut yi = ys.clone();
        yi[i] = inner_i;
        let term = a.bracket(&yi)?;
        expansion = crate::linalg::add_vectors(f, &expansion, &term);
        terms.push(term);
    }
    let mut auvw = prefix.to_vec();
    auvw.extend([u.clone(), v.clone(), w.clone()]);
    let predicted = scale_vector(f, &alpha, &a.bracket(&auvw)?);

    let evaluation = TripleEvaluation {
        ordering: found,
        ordered_h: ordered,
        inner,
        direct,
        expansion,
        expansion_terms: terms,
        predicted,
    };
    let conclusion = match (&evaluation.ordering, evaluation.evaluations_differ()) {
        (None, _) => "no ordering of H's basis makes [a.., u, v, w] nonzero; the configuration \
                      was evaluated with the identity ordering and no contradiction is derived"
            .into(),
        (Some(_), true) => "the direct value of P and its Filippov expansion differ, so the \
                            structure constants do not satisfy the identity: a valid algebra \
                            cannot reach this configuration"
            .into(),
        (Some(_), false) => "both evaluations agree, which forces alpha [a.., u, v, w] = 0, \
                             contradicting the chosen ordering with alpha nonzero"
            .into(),
    };
    Ok(ContradictionReport {
        kind: ContradictionKind::CharTwoTriple,
        field: f.clone(),
        arity: n,
        h: Some(h.clone()),
        derivation: Some(d.clone()),
        eigenvalues: alloc::vec![alpha, beta, gamma],
        vectors: alloc::vec![u, v, w],
        candidate: None,
        triple: Some(evaluation),
        conclusion,
    })
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, Gf};
    use crate::fixtures;
    use crate::linalg::unit_vector;
    use alloc::vec;

    #[test]
    fn derived_proper_examples() {
        let f = make_field(2, 1).unwrap();
        let expected = Subspace::span(&f, 5, (0..4).map(|i| unit_vector(&f, 5, i)).collect());
        for a in [fixtures::abelian(&f, 3, 5), fixtures::n5(&f)] {
            let r = find_codim1(&a, &Codim1Options::default()).unwrap();
            assert_eq!(r.trace.branch, Branch::DerivedProper);
            assert_eq!(r.subalgebra, expected);
            assert_eq!(r.extension_degree, 1);
        }
    }

    #[test]
    fn wrong_dimension_and_invalid_input() {
        let f = make_field(2, 1).unwrap();
        assert!(matches!(
            find_codim1(&fixtures::a4(&f), &Codim1Options::default()),
            Err(Codim1Error::DimensionMismatch { arity: 3, dim: 4 })
        ));
        let bad = fixtures::from_entries(
            &f,
            2,
            4,
            &[(&[0, 1], &[(2, 1)]), (&[1, 2], &[(0, 1)]), (&[0, 2], &[(1, 1)]), (&[2, 3], &[(3, 1)])],
        );
        assert!(!bad.validate().is_valid());
        assert!(matches!(
            find_codim1(&bad, &Codim1Options::default()),
            Err(Codim1Error::InvalidAlgebra)
        ));
    }

    #[test]
    fn permutations_in_lexicographic_order() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2, 1]);
        assert_eq!(seen[5], vec![2, 1, 0]);
    }

    fn staged() -> (NLieAlgebra<Gf>, Gf) {
        let a = fixtures::staged_char2_triple();
        let k = a.field().clone();
        (a, k)
    }

    #[test]
    fn staged_triple_exposes_the_identity_failure() {
        let (a, k) = staged();
        assert!(!a.validate().is_valid());
        let e = |i| unit_vector(&k, 6, i);
        let h = Subspace::span(&k, 6, vec![e(0), e(1), e(2)]);
        let d = a.inner_derivation(h.basis()).unwrap();
        let g = k.generator();
        let r = unreachable_triple_check(
            &a,
            &h,
            &d,
            (1, g, k.add(&1, &g)),
            (e(3), e(4), e(5)),
        )
        .unwrap();
        let t = r.triple.unwrap();
        assert_eq!(t.ordering, Some(vec![0, 1, 2]));
        assert!(is_zero_vector(&k, &t.direct));
        assert_eq!(t.expansion, t.predicted);
        assert_eq!(t.predicted, e(0));
        assert!(t.evaluations_differ());
    }

    #[test]
    fn triple_check_preconditions() {
        let f = make_field(2, 1).unwrap();
        let a = fixtures::n5(&f);
        let h = Subspace::span(&f, 5, vec![unit_vector(&f, 5, 0), unit_vector(&f, 5, 1)]);
        let d = a.inner_derivation(h.basis()).unwrap();
        let z = || unit_vector(&f, 5, 2);
        assert!(matches!(
            unreachable_triple_check(&a, &h, &d, (1, 1, 0), (z(), z(), z())),
            Err(AlgebraError::PreconditionUnmet(msg)) if msg.contains("n = 2, 3")
        ));
        let (a, k) = staged();
        let e = |i| unit_vector(&k, 6, i);
        let h = Subspace::span(&k, 6, vec![e(0), e(1), e(2)]);
        let d = a.inner_derivation(h.basis()).unwrap();
        let g = k.generator();
        // v is not a beta-eigenvector
        assert!(matches!(
            unreachable_triple_check(&a, &h, &d, (1, g, k.add(&1, &g)), (e(3), e(5), e(4))),
            Err(AlgebraError::PreconditionUnmet(_))
        ));
    }
}
