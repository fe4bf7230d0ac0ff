//! JSON report shapes for the subcommands. Scalars are always strings.

use nlie::algebra::{CartanReport, FilippovWitness, ValidationReport};
use nlie::codim1::{Codim1Result, ContradictionReport, TripleEvaluation};
use nlie::field::{Field, Gf, Rationals};
use nlie::linalg::{Matrix, Subspace, Vector};
use nlie::oracle::RandomCheckReport;
use serde::Serialize;

/// Field description used in reports; extension fields carry their modulus
/// so that `g` in scalar texts can be interpreted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum FieldInfo {
    Finite {
        p: u64,
        k: u32,
        #[serde(skip_serializing_if = "Option::is_none")]
        modulus: Option<String>,
    },
    Named(&'static str),
}

pub trait Describe: Field {
    fn info(&self) -> FieldInfo;
}

impl Describe for Gf {
    fn info(&self) -> FieldInfo {
        let modulus = self.modulus().map(|m| {
            let prime = self.prime_subfield();
            let mut terms = Vec::new();
            for (e, c) in m.coeffs().iter().enumerate().rev() {
                if prime.is_zero(c) {
                    continue;
                }
                let c = prime.format_scalar(c);
                let c = if c == "1" && e > 0 { String::new() } else { c };
                terms.push(match e {
                    0 => c,
                    1 => format!("{c}x"),
                    e => format!("{c}x^{e}"),
                });
            }
            terms.join("+")
        });
        FieldInfo::Finite {
            p: self.characteristic(),
            k: self.degree(),
            modulus,
        }
    }
}

impl Describe for Rationals {
    fn info(&self) -> FieldInfo {
        FieldInfo::Named("Q")
    }
}

pub fn scalars<F: Field>(f: &F, v: &[F::Elem]) -> Vec<String> {
    v.iter().map(|c| f.format_scalar(c)).collect()
}

pub fn rows<F: Field>(f: &F, vs: &[Vector<F>]) -> Vec<Vec<String>> {
    vs.iter().map(|v| scalars(f, v)).collect()
}

pub fn basis<F: Field>(f: &F, s: &Subspace<F>) -> Vec<Vec<String>> {
    rows(f, s.basis())
}

fn matrix<F: Field>(f: &F, m: &Matrix<F>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| f.format_scalar(m.get(i, j))).collect())
        .collect()
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

#[derive(Debug, Serialize)]
pub struct WitnessJson {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

impl WitnessJson {
    pub fn new<F: Field>(f: &F, w: &FilippovWitness<F>) -> Self {
        WitnessJson {
            x: one_based(&w.x),
            y: one_based(&w.y),
            lhs: scalars(f, &w.lhs),
            rhs: scalars(f, &w.rhs),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RandomWitnessJson {
    pub xs: Vec<Vec<String>>,
    pub ys: Vec<Vec<String>>,
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct ValidateReport {
    pub field: FieldInfo,
    pub valid: bool,
    /// Basis instances of the identity evaluated.
    pub checked: usize,
    pub witness: Option<WitnessJson>,
    pub random_trials: usize,
    pub random_check_passed: bool,
    pub random_witness: Option<RandomWitnessJson>,
}

impl ValidateReport {
    pub fn new<F: Describe>(f: &F, v: &ValidationReport<F>, r: &RandomCheckReport<F>) -> Self {
        ValidateReport {
            field: f.info(),
            valid: v.is_valid(),
            checked: v.checked,
            witness: v.witness.as_ref().map(|w| WitnessJson::new(f, w)),
            random_trials: r.trials,
            random_check_passed: r.passed(),
            random_witness: r.witness.as_ref().map(|w| RandomWitnessJson {
                xs: rows(f, &w.xs),
                ys: rows(f, &w.ys),
                lhs: scalars(f, &w.lhs),
                rhs: scalars(f, &w.rhs),
            }),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CartanJson {
    pub extension_degree: u32,
    pub field: FieldInfo,
    pub dimension: usize,
    pub basis: Vec<Vec<String>>,
    pub witness: Vec<Vec<String>>,
    pub nilpotent: bool,
    pub self_normalizing: bool,
    pub exhaustive: bool,
    pub examined: usize,
}

impl CartanJson {
    pub fn new<F: Describe>(r: &CartanReport<F>) -> Self {
        let f = r.algebra.field();
        CartanJson {
            extension_degree: r.extension_degree,
            field: f.info(),
            dimension: r.h.dim(),
            basis: basis(f, &r.h),
            witness: rows(f, &r.witness),
            nilpotent: r.nilpotent,
            self_normalizing: r.self_normalizing,
            exhaustive: r.exhaustive,
            examined: r.examined,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub field: FieldInfo,
    pub arity: usize,
    pub dimension: usize,
    pub valid: bool,
    pub derived_dimension: usize,
    pub perfect: bool,
    /// Dimensions of `A, A^1, A^2, ...` until the series repeats or vanishes.
    pub lower_central_series: Vec<usize>,
    pub nilpotent: bool,
    pub cartan: Option<CartanJson>,
    pub cartan_error: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct CaseJson {
    pub branch: String,
    pub eigenvalues: Vec<String>,
    pub theta: Option<String>,
    pub vectors: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct Codim1Json {
    pub extension_degree: u32,
    pub field: FieldInfo,
    pub basis: Vec<Vec<String>>,
    pub case: CaseJson,
    pub verified: bool,
}

impl Codim1Json {
    pub fn new<F: Describe>(r: &Codim1Result<F>) -> Self {
        let f = &r.field;
        Codim1Json {
            extension_degree: r.extension_degree,
            field: f.info(),
            basis: basis(f, &r.subalgebra),
            case: CaseJson {
                branch: r.trace.branch.name().into(),
                eigenvalues: scalars(f, &r.trace.eigenvalues),
                theta: r.trace.theta.as_ref().map(|t| f.format_scalar(t)),
                vectors: rows(f, &r.trace.vectors),
            },
            verified: true,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TripleJson {
    pub ordering: Option<Vec<usize>>,
    pub ordered_h: Vec<Vec<String>>,
    pub inner: Vec<String>,
    pub direct: Vec<String>,
    pub expansion: Vec<String>,
    pub expansion_terms: Vec<Vec<String>>,
    pub predicted: Vec<String>,
    pub evaluations_differ: bool,
}

#[derive(Debug, Serialize)]
pub struct ContradictionJson {
    pub kind: &'static str,
    pub field: FieldInfo,
    pub arity: usize,
    pub h: Option<Vec<Vec<String>>>,
    pub derivation_tuple: Option<Vec<Vec<String>>>,
    pub derivation: Option<Vec<Vec<String>>>,
    pub eigenvalues: Vec<String>,
    pub vectors: Vec<Vec<String>>,
    pub candidate: Option<Vec<Vec<String>>>,
    pub triple: Option<TripleJson>,
    pub conclusion: String,
}

impl ContradictionJson {
    pub fn new<F: Describe>(r: &ContradictionReport<F>) -> Self {
        let f = &r.field;
        ContradictionJson {
            kind: r.kind.name(),
            field: f.info(),
            arity: r.arity,
            h: r.h.as_ref().map(|h| basis(f, h)),
            derivation_tuple: r.derivation.as_ref().map(|d| rows(f, &d.tuple)),
            derivation: r.derivation.as_ref().map(|d| matrix(f, &d.matrix)),
            eigenvalues: scalars(f, &r.eigenvalues),
            vectors: rows(f, &r.vectors),
            candidate: r.candidate.as_ref().map(|s| basis(f, s)),
            triple: r.triple.as_ref().map(|t| triple(f, t)),
            conclusion: r.conclusion.clone(),
        }
    }
}

fn triple<F: Field>(f: &F, t: &TripleEvaluation<F>) -> TripleJson {
    TripleJson {
        ordering: t.ordering.as_ref().map(|o| one_based(o)),
        ordered_h: rows(f, &t.ordered_h),
        inner: scalars(f, &t.inner),
        direct: scalars(f, &t.direct),
        expansion: scalars(f, &t.expansion),
        expansion_terms: rows(f, &t.expansion_terms),
        predicted: scalars(f, &t.predicted),
        evaluations_differ: t.evaluations_differ(),
    }
}

#[derive(Debug, Serialize)]
pub struct HyperplaneJson {
    pub covector: Vec<String>,
    pub basis: Vec<Vec<String>>,
}

#[derive(Debug, Serialize)]
pub struct OracleReport {
    pub field: FieldInfo,
    pub hyperplanes: u64,
    pub count: usize,
    pub subalgebras: Vec<HyperplaneJson>,
}
