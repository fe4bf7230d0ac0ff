//! The JSON algebra file: 1-based indices, scalars as strings.

use std::collections::BTreeSet;

use nlie::algebra::{NLieAlgebra, StructureTensor};
use nlie::field::{make_field, Field, FieldError, Gf, Rationals};
use nlie::linalg::Vector;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("bracket {entry}: index {index} outside 1..={dim}")]
    IndexOutOfRange { entry: usize, index: usize, dim: usize },
    #[error("bracket {entry}: args {args:?} are not strictly increasing")]
    NotIncreasing { entry: usize, args: Vec<usize> },
    #[error("bracket {entry}: expected {expected} args, got {got}")]
    ArityMismatch { entry: usize, expected: usize, got: usize },
    #[error("bracket {entry}: args {args:?} already given")]
    DuplicateBracket { entry: usize, args: Vec<usize> },
    #[error("bracket {entry}: index {index} appears twice in the value")]
    DuplicateIndex { entry: usize, index: usize },
    #[error("bracket {entry}: bad scalar {text:?}: {reason}")]
    ScalarSyntax {
        entry: usize,
        text: String,
        reason: String,
    },
    #[error("bad field descriptor: {0}")]
    BadField(String),
    #[error("arity {arity} and dimension {dim} do not describe an n-ary bracket (need 2 <= arity <= dimension)")]
    BadShape { arity: usize, dim: usize },
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldDescriptor {
    Finite { p: u64, k: u32 },
    Named(String),
}

impl FieldDescriptor {
    pub fn is_rationals(&self) -> bool {
        matches!(self, FieldDescriptor::Named(s) if s == "Q")
    }

    /// Parses the command-line form: `Q`, `p` or `p^k`.
    pub fn from_spec(spec: &str) -> Result<Self, FormatError> {
        let bad = || FormatError::BadField(format!("{spec:?}; expected Q, p or p^k"));
        let spec = spec.trim();
        if spec == "Q" {
            return Ok(FieldDescriptor::Named("Q".into()));
        }
        let (p, k) = match spec.split_once('^') {
            Some((p, k)) => (p, k),
            None => (spec, "1"),
        };
        Ok(FieldDescriptor::Finite {
            p: p.trim().parse().map_err(|_| bad())?,
            k: k.trim().parse().map_err(|_| bad())?,
        })
    }

    pub fn of_field<F: Field>(f: &F) -> Self {
        match f.order() {
            None => FieldDescriptor::Named("Q".into()),
            Some(_) => FieldDescriptor::Finite {
                p: f.characteristic(),
                k: f.degree(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub args: Vec<usize>,
    pub value: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub arity: usize,
    pub dimension: usize,
    pub field: FieldDescriptor,
    pub brackets: Vec<BracketEntry>,
    /// Case of `find-codim1` a curated fixture is meant to reach.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub intended_branch: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// An algebra over one of the supported field types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyAlgebra {
    Finite(NLieAlgebra<Gf>),
    Rational(NLieAlgebra<Rationals>),
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data") + "\n"
    }

    pub fn field(&self) -> Result<FieldKind, FormatError> {
        match &self.field {
            FieldDescriptor::Finite { p, k } => make_field(*p, *k)
                .map(FieldKind::Finite)
                .map_err(|e| FormatError::BadField(e.to_string())),
            d if d.is_rationals() => Ok(FieldKind::Rational(Rationals)),
            FieldDescriptor::Named(s) => Err(FormatError::BadField(format!(
                "{s:?}; expected \"Q\" or {{\"p\": .., \"k\": ..}}"
            ))),
        }
    }

    /// The unchecked algebra described by the file.
    pub fn to_algebra(&self) -> Result<AnyAlgebra, FormatError> {
        Ok(match self.field()? {
            FieldKind::Finite(f) => AnyAlgebra::Finite(self.build(f)?),
            FieldKind::Rational(f) => AnyAlgebra::Rational(self.build(f)?),
        })
    }

    pub fn build<F: Field>(&self, f: F) -> Result<NLieAlgebra<F>, FormatError> {
        let (n, d) = (self.arity, self.dimension);
        let mut t = StructureTensor::new(f.clone(), n, d)
            .map_err(|_| FormatError::BadShape { arity: n, dim: d })?;
        let mut seen = BTreeSet::new();
        for (entry, b) in self.brackets.iter().enumerate() {
            let entry = entry + 1;
            if b.args.len() != n {
                return Err(FormatError::ArityMismatch {
                    entry,
                    expected: n,
                    got: b.args.len(),
                });
            }
            check_indices(entry, d, b.args.iter().copied())?;
            if b.args.windows(2).any(|w| w[0] >= w[1]) {
                return Err(FormatError::NotIncreasing {
                    entry,
                    args: b.args.clone(),
                });
            }
            if !seen.insert(b.args.clone()) {
                return Err(FormatError::DuplicateBracket {
                    entry,
                    args: b.args.clone(),
                });
            }
            check_indices(entry, d, b.value.iter().map(|(i, _)| *i))?;
            let mut v: Vector<F> = (0..d).map(|_| f.zero()).collect();
            let mut used = BTreeSet::new();
            for (index, text) in &b.value {
                if !used.insert(*index) {
                    return Err(FormatError::DuplicateIndex { entry, index: *index });
                }
                v[index - 1] = f.parse_scalar(text).map_err(|e| scalar_error(entry, text, e))?;
            }
            let args: Vec<usize> = b.args.iter().map(|i| i - 1).collect();
            t.set(&args, v).expect("args checked");
        }
        Ok(NLieAlgebra::new(t))
    }

    /// Nonzero structure constants of `a` in lexicographic tuple order.
    pub fn from_algebra<F: Field>(a: &NLieAlgebra<F>) -> Self {
        let f = a.field();
        let brackets = a
            .tensor()
            .entries()
            .into_iter()
            .map(|(args, v)| BracketEntry {
                args: args.iter().map(|i| i + 1).collect(),
                value: v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !f.is_zero(c))
                    .map(|(i, c)| (i + 1, f.format_scalar(c)))
                    .collect(),
            })
            .collect();
        AlgebraFile {
            arity: a.arity(),
            dimension: a.dim(),
            field: FieldDescriptor::of_field(f),
            brackets,
            intended_branch: None,
            note: None,
        }
    }
}

pub enum FieldKind {
    Finite(Gf),
    Rational(Rationals),
}

fn check_indices(
    entry: usize,
    dim: usize,
    indices: impl Iterator<Item = usize>,
) -> Result<(), FormatError> {
    for index in indices {
        if index == 0 || index > dim {
            return Err(FormatError::IndexOutOfRange { entry, index, dim });
        }
    }
    Ok(())
}

fn scalar_error(entry: usize, text: &str, e: FieldError) -> FormatError {
    let reason = match e {
        FieldError::ScalarSyntax { reason, .. } => reason.to_string(),
        other => other.to_string(),
    };
    FormatError::ScalarSyntax {
        entry,
        text: text.into(),
        reason,
    }
}

pub fn parse_algebra_file(bytes: &[u8]) -> Result<AnyAlgebra, FormatError> {
    let text = std::str::from_utf8(bytes).map_err(|e| FormatError::Parse {
        line: 0,
        column: 0,
        message: format!("not UTF-8: {e}"),
    })?;
    AlgebraFile::from_json(text)?.to_algebra()
}
