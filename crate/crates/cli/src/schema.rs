//! Serde mirror of the structure-file JSON.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub chart: Vec<String>,
    #[serde(default)]
    pub scalars: BTreeMap<String, String>,
    #[serde(default)]
    pub vectors: BTreeMap<String, Components>,
    #[serde(default)]
    pub bivectors: BTreeMap<String, Components>,
    #[serde(default)]
    pub forms: BTreeMap<String, FormSpec>,
    #[serde(default)]
    pub endomorphisms: BTreeMap<String, EndoSpec>,
    #[serde(default)]
    pub pairs: BTreeMap<String, PairSpec>,
    #[serde(default)]
    pub recursion_operators: BTreeMap<String, RecursionSpec>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
}

/// Components keyed by increasing 1-based index tuples such as `"(1,3)"`,
/// or, for vectors, a list with one entry per coordinate.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Components {
    List(Vec<String>),
    Keyed(BTreeMap<String, String>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum FormSpec {
    Explicit { degree: usize, #[serde(default)] components: BTreeMap<String, String> },
    Keyed(BTreeMap<String, String>),
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum EndoSpec {
    /// Row-major matrix `J[i][j]`.
    Rows(Vec<Vec<String>>),
    Diagonal(Vec<String>),
    /// `f·Id`.
    Scalar(String),
    /// `♭₂⁻¹∘♭₁` for two 2-forms.
    Lcs { f1: String, f2: String },
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum PairSpec {
    Lcs { lcs: LcsSpec },
    Fields {
        lambda: Option<String>,
        #[serde(rename = "E")]
        e: Option<String>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LcsSpec {
    #[serde(rename = "F")]
    pub f: String,
    pub omega: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecursionSpec {
    #[serde(rename = "J")]
    pub j: String,
    #[serde(rename = "X0")]
    pub x0: Option<String>,
    pub alpha0: Option<String>,
    pub phi0: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub name: Option<String>,
    pub op: String,
    #[serde(default)]
    pub args: serde_json::Map<String, Value>,
}
