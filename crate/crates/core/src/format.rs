//! JSON file formats for algebras, groups, and representations.
//!
//! Scalars travel as `"p"`/`"p/q"` strings, never floats. The algebra format
//! stores the two structure tensors sparsely as `[A, B, C, "coeff"]` rows.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::group::FiniteGroup;
use crate::hopf::HopfStructure;
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};
use crate::tensor::SparseTensor3;
use crate::{Error, Result};

pub const ALGEBRA_FORMAT: &str = "hopf-algebra/1";
pub const GROUP_FORMAT: &str = "group-table/1";
pub const REP_FORMAT: &str = "double-representation/1";

/// On-disk form of a Hopf algebra by structure constants.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct AlgebraSpecFile {
    pub format: String,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    pub mult: Vec<(usize, usize, usize, String)>,
    pub comult: Vec<(usize, usize, usize, String)>,
    pub counit: Vec<String>,
    pub antipode: Vec<Vec<String>>,
    pub unit: Vec<String>,
}

impl AlgebraSpecFile {
    pub fn from_structure(s: &HopfStructure) -> Self {
        let tensor_rows = |t: &SparseTensor3| -> Vec<(usize, usize, usize, String)> {
            t.iter()
                .map(|(&[a, b, c], v)| (a, b, c, scalar::format(v)))
                .collect()
        };
        AlgebraSpecFile {
            format: ALGEBRA_FORMAT.to_string(),
            dim: s.dim,
            basis_labels: s.labels.clone(),
            mult: tensor_rows(&s.mult),
            comult: tensor_rows(&s.comult),
            counit: s.counit.iter().map(scalar::format).collect(),
            antipode: (0..s.dim)
                .map(|r| {
                    (0..s.dim)
                        .map(|c| scalar::format(s.antipode.get(r, c)))
                        .collect()
                })
                .collect(),
            unit: s.unit.iter().map(scalar::format).collect(),
        }
    }

    pub fn to_structure(&self) -> Result<HopfStructure> {
        if self.format != ALGEBRA_FORMAT {
            return Err(Error::Parse(format!(
                "unsupported algebra format {:?}",
                self.format
            )));
        }
        let dim = self.dim;
        let parse_vec = |v: &[String], what: &str| -> Result<Vec<Scalar>> {
            if v.len() != dim {
                return Err(Error::Parse(format!("{what} must have {dim} entries")));
            }
            v.iter().map(|s| scalar::parse(s)).collect()
        };
        let parse_tensor =
            |rows: &[(usize, usize, usize, String)], what: &str| -> Result<SparseTensor3> {
                let mut t = SparseTensor3::new([dim; 3]);
                for (a, b, c, v) in rows {
                    let v = scalar::parse(v)?;
                    t.add_to([*a, *b, *c], &v).map_err(|_| {
                        Error::Parse(format!("{what} index ({a},{b},{c}) out of range"))
                    })?;
                }
                Ok(t)
            };
        if self.antipode.len() != dim || self.antipode.iter().any(|r| r.len() != dim) {
            return Err(Error::Parse("antipode must be a dim x dim matrix".into()));
        }
        let mut antipode = Matrix::zeros(dim, dim);
        for (r, row) in self.antipode.iter().enumerate() {
            for (c, entry) in row.iter().enumerate() {
                antipode.set(r, c, scalar::parse(entry)?);
            }
        }
        if self.basis_labels.len() != dim {
            return Err(Error::Parse("basis_labels must have dim entries".into()));
        }
        Ok(HopfStructure {
            dim,
            labels: self.basis_labels.clone(),
            mult: parse_tensor(&self.mult, "mult")?,
            comult: parse_tensor(&self.comult, "comult")?,
            counit: parse_vec(&self.counit, "counit")?,
            antipode,
            unit: parse_vec(&self.unit, "unit")?,
        })
    }
}

/// On-disk form of a finite group by Cayley table.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct GroupSpecFile {
    pub format: String,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroupSpecFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupSpecFile {
            format: GROUP_FORMAT.to_string(),
            table: g.table().to_vec(),
            labels: Some(g.labels().to_vec()),
        }
    }

    pub fn to_group(&self, max_order: usize) -> Result<FiniteGroup> {
        if self.format != GROUP_FORMAT {
            return Err(Error::Parse(format!(
                "unsupported group format {:?}",
                self.format
            )));
        }
        if self.table.len() > max_order {
            return Err(Error::LimitExceeded {
                dim: self.table.len(),
                max: max_order,
            });
        }
        FiniteGroup::from_table(self.table.clone(), self.labels.clone())
    }
}

/// On-disk form of a double representation: matrices over the basis of each
/// factor, entries as fraction strings.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct RepSpecFile {
    pub format: String,
    pub n: usize,
    pub rho_f: Vec<Vec<Vec<String>>>,
    pub rho_u: Vec<Vec<Vec<String>>>,
}

impl RepSpecFile {
    pub fn parse_matrices(&self, dim: usize) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
        if self.format != REP_FORMAT {
            return Err(Error::Parse(format!(
                "unsupported representation format {:?}",
                self.format
            )));
        }
        let parse_side = |side: &[Vec<Vec<String>>], what: &str| -> Result<Vec<Matrix>> {
            if side.len() != dim {
                return Err(Error::Parse(format!(
                    "{what} must contain {dim} matrices, found {}",
                    side.len()
                )));
            }
            side.iter()
                .map(|rows| {
                    if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
                        return Err(Error::Parse(format!(
                            "{what} matrices must be {0}x{0}",
                            self.n
                        )));
                    }
                    let mut m = Matrix::zeros(self.n, self.n);
                    for (r, row) in rows.iter().enumerate() {
                        for (c, entry) in row.iter().enumerate() {
                            m.set(r, c, scalar::parse(entry)?);
                        }
                    }
                    Ok(m)
                })
                .collect()
        };
        Ok((
            parse_side(&self.rho_f, "rho_f")?,
            parse_side(&self.rho_u, "rho_u")?,
        ))
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_algebra_json(text: &str) -> Result<AlgebraSpecFile> {
    parse_json(text)
}

pub fn parse_group_json(text: &str) -> Result<GroupSpecFile> {
    parse_json(text)
}

/// Size guard: flag value, else the environment override, else the default.
pub fn effective_max_dim(flag: Option<usize>) -> usize {
    if let Some(v) = flag {
        return v;
    }
    if let Ok(raw) = std::env::var("HOPFDOUBLE_MAX_DIM") {
        if let Ok(v) = raw.parse::<usize>() {
            return v;
        }
    }
    crate::DEFAULT_MAX_DIM
}
