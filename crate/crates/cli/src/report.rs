//! Serializable report documents.
//!
//! Rationals are always `"p/q"` strings (integers as `"k/1"`); a matrix entry
//! is a list of Laurent monomials `{coeff, x_exp, theta_exp}`, empty for zero.

use limfrob_core::algebra::{format_pq, LaurentMatrix, MPoly, QMatrix, Rational};
use limfrob_core::{Check, CheckReport};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Monomial {
    pub coeff: String,
    pub x_exp: i32,
    pub theta_exp: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDto {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Vec<Monomial>>>,
}

impl MatrixDto {
    pub fn laurent(name: impl Into<String>, m: &LaurentMatrix) -> Self {
        let entries = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| {
                        m.get(i, j)
                            .terms()
                            .map(|(c, x_exp, theta_exp)| Monomial {
                                coeff: format_pq(c),
                                x_exp,
                                theta_exp,
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self {
            name: name.into(),
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn rational(name: impl Into<String>, m: &QMatrix) -> Self {
        Self::laurent(name, &m.to_laurent())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorDto {
    pub name: String,
    pub values: Vec<String>,
}

impl VectorDto {
    pub fn new<'a>(name: impl Into<String>, v: impl IntoIterator<Item = &'a Rational>) -> Self {
        Self {
            name: name.into(),
            values: v.into_iter().map(format_pq).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: String,
    pub exponents: Vec<i32>,
}

/// Polynomial in `x1..xm`; `display` is the human-readable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolynomialDto {
    pub name: String,
    pub variables: usize,
    pub terms: Vec<Term>,
    pub display: String,
}

impl PolynomialDto {
    pub fn new(name: impl Into<String>, variables: usize, p: &MPoly) -> Self {
        let terms = p
            .terms()
            .map(|(e, c)| {
                let mut exponents = e.to_vec();
                exponents.resize(variables.max(exponents.len()), 0);
                Term {
                    coeff: format_pq(c),
                    exponents,
                }
            })
            .collect();
        Self {
            name: name.into(),
            variables,
            terms,
            display: p.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDto {
    pub id: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl From<&Check> for CheckDto {
    fn from(c: &Check) -> Self {
        Self {
            id: c.id.clone(),
            passed: c.passed,
            detail: c.detail.clone(),
        }
    }
}

/// Informational boolean; unlike a check it does not affect the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagDto {
    pub name: String,
    pub value: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Section {
    pub name: String,
    pub checks: Vec<CheckDto>,
    pub flags: Vec<FlagDto>,
    pub vectors: Vec<VectorDto>,
    pub matrices: Vec<MatrixDto>,
    pub polynomials: Vec<PolynomialDto>,
    pub notes: Vec<String>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::default()
        }
    }

    pub fn check(&mut self, id: impl Into<String>, passed: bool, detail: Option<String>) {
        self.checks.push(CheckDto {
            id: id.into(),
            passed,
            detail,
        });
    }

    /// Appends every check of `r`, with `suffix` appended to each id.
    pub fn checks_from(&mut self, r: &CheckReport, suffix: &str) {
        self.checks.extend(r.checks.iter().map(|c| {
            let mut dto = CheckDto::from(c);
            dto.id.push_str(suffix);
            dto
        }));
    }

    pub fn flag(&mut self, name: impl Into<String>, value: bool) {
        self.flags.push(FlagDto {
            name: name.into(),
            value,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Drops matrices, vectors and polynomials, keeping verdicts and notes.
    pub fn compact(mut self) -> Self {
        self.matrices.clear();
        self.vectors.clear();
        self.polynomials.clear();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub weights: Vec<u32>,
    pub mu: usize,
    pub n: usize,
    pub sections: Vec<Section>,
    /// Set when the requested structure provably does not exist.
    pub obstruction: Option<String>,
    /// Every check in every section passed.
    pub passed: bool,
}

impl Report {
    pub fn check_bits(&self) -> Vec<(String, String, bool)> {
        self.sections
            .iter()
            .flat_map(|s| {
                s.checks
                    .iter()
                    .map(|c| (s.name.clone(), c.id.clone(), c.passed))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchReport {
    pub schema_version: u32,
    pub command: String,
    /// `[nmax, wmax]`
    pub grid: [u32; 2],
    pub reports: Vec<Report>,
    pub passed: bool,
}

/// What a run emits: one report, or a grid of them in input order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Document {
    Single(Report),
    Batch(BatchReport),
}

impl Document {
    pub fn reports(&self) -> &[Report] {
        match self {
            Document::Single(r) => std::slice::from_ref(r),
            Document::Batch(b) => &b.reports,
        }
    }

    pub fn passed(&self) -> bool {
        match self {
            Document::Single(r) => r.passed,
            Document::Batch(b) => b.passed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}
