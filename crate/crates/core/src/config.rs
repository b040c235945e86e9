//! Problem configuration files: a strict JSON schema describing the
//! groups, the embedding, the generator mode, weights, and resource
//! bounds.  Unknown keys are rejected so that typos fail loudly.

use serde::Deserialize;

use crate::embedding::EmbeddingData;
use crate::linalg::{qr, QMat, Q, QV};
use crate::rootdata::RootDatum;
use crate::{Error, Result};

/// A rational number in configuration files: either a plain integer or
/// a `[numerator, denominator]` pair.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ConfigRational {
    Int(i64),
    Pair(i64, i64),
}

impl ConfigRational {
    pub fn to_q(&self) -> Result<Q> {
        match self {
            ConfigRational::Int(n) => Ok(qr(*n, 1)),
            ConfigRational::Pair(n, d) => {
                if *d == 0 {
                    return Err(Error::Config("zero denominator in rational".into()));
                }
                Ok(qr(*n, *d))
            }
        }
    }
}

fn to_qv(v: &[ConfigRational]) -> Result<QV> {
    v.iter().map(|x| x.to_q()).collect()
}

/// How the embedding of the source group in the target group is given.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum EmbeddingSpec {
    /// The weight-restriction matrix, one row per source coordinate and
    /// one column per target coordinate.
    Matrix(Vec<Vec<ConfigRational>>),
    /// The weight multiset of a faithful source representation; the
    /// target (a unitary group of matching dimension) is derived.
    Weights(Vec<Vec<i64>>),
    /// The diagonal embedding of the source group in `m` copies of
    /// itself.
    Diagonal(usize),
    /// A rank-one subgroup given by the simple-root labels of its
    /// defining coweight; the source is the rank-one group.
    Sl2(Vec<i64>),
    /// The identity embedding of the source group.
    Identity,
    /// The maximal torus of the target group as source.
    Torus,
}

/// Which inequality generator to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigMode {
    Cone,
    Polytope,
    Invariant,
    Scalar,
}

/// Resource bounds, all optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bounds {
    /// Weyl-group enumeration cap.
    pub enumeration: Option<u64>,
    /// Monoid-membership search cap.
    pub monoid: Option<u64>,
    /// Character-oracle weight budget.
    pub oracle: Option<u64>,
    /// Largest scaling factor probed in saturation scans.
    pub scan: Option<u64>,
}

impl Bounds {
    pub fn monoid_budget(&self) -> u64 {
        self.monoid.unwrap_or(100_000)
    }
    pub fn oracle_budget(&self) -> u64 {
        self.oracle.unwrap_or(1_000_000)
    }
    pub fn scan_max(&self) -> u64 {
        self.scan.unwrap_or(6)
    }
}

/// A complete problem description.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    /// Type string of the source group, e.g. `"A2"`, `"A1xA1"`,
    /// `"B2+u1"`, `"u2"`.  Not needed for `torus` embeddings.
    pub source: Option<String>,
    /// Type string of the target group.  Not needed when the embedding
    /// spec determines it (`weights`, `diagonal`, `identity`).
    pub target: Option<String>,
    pub embedding: EmbeddingSpec,
    pub mode: Option<ConfigMode>,
    /// Target weight, for polytope mode and membership checks.
    pub lambda: Option<Vec<ConfigRational>>,
    /// Source weight, for membership checks.
    pub lambda_tilde: Option<Vec<ConfigRational>>,
    #[serde(default)]
    pub bounds: Bounds,
    /// Optional path the CLI writes its JSON report to.
    pub output: Option<String>,
}

impl ProblemConfig {
    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(format!("bad config: {e}")))
    }

    pub fn from_file(path: &str) -> Result<Self> {
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
        Self::from_json_str(&s)
    }

    fn source_datum(&self) -> Result<RootDatum> {
        let label = self
            .source
            .as_deref()
            .ok_or_else(|| Error::Config("missing `source` group".into()))?;
        RootDatum::from_type(label)
    }

    fn target_datum(&self) -> Result<RootDatum> {
        let label = self
            .target
            .as_deref()
            .ok_or_else(|| Error::Config("missing `target` group".into()))?;
        RootDatum::from_type(label)
    }

    /// Build the embedding (chamber-adjusted and ready for the
    /// generators).
    pub fn build_embedding(&self) -> Result<EmbeddingData> {
        let e = match &self.embedding {
            EmbeddingSpec::Matrix(rows) => {
                let source = self.source_datum()?;
                let target = self.target_datum()?;
                let qrows: Vec<QV> = rows.iter().map(|r| to_qv(r)).collect::<Result<_>>()?;
                if qrows.len() != source.rank
                    || qrows.iter().any(|r| r.len() != target.rank)
                {
                    return Err(Error::Config(format!(
                        "matrix must be {}x{}",
                        source.rank, target.rank
                    )));
                }
                EmbeddingData::from_matrix(source, target, QMat::from_rows(&qrows))?
            }
            EmbeddingSpec::Weights(ws) => {
                EmbeddingData::from_weights(self.source_datum()?, ws)?
            }
            EmbeddingSpec::Diagonal(m) => EmbeddingData::diagonal(&self.source_datum()?, *m)?,
            EmbeddingSpec::Sl2(d) => EmbeddingData::sl2(self.target_datum()?, d)?,
            EmbeddingSpec::Identity => EmbeddingData::identity(self.source_datum()?)?,
            EmbeddingSpec::Torus => {
                let target = self.target_datum()?;
                let rank = target.rank;
                let torus = RootDatum::from_type(&format!("u{rank}"))?;
                EmbeddingData::from_matrix(torus, target, QMat::identity(rank))?
            }
        };
        e.make_compatible()
    }

    pub fn lambda_q(&self) -> Result<Option<QV>> {
        self.lambda.as_deref().map(to_qv).transpose()
    }

    pub fn lambda_tilde_q(&self) -> Result<Option<QV>> {
        self.lambda_tilde.as_deref().map(to_qv).transpose()
    }
}
