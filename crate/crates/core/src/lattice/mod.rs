//! Even integral lattices given by Gram matrices.

mod catalog;
mod discriminant;
pub(crate) mod linalg;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use catalog::{catalog, e8_gram, CatalogName};
pub use discriminant::{DiscriminantForm, ElementIter};

/// Number of positive and negative eigenvalues of a Gram matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
}

impl Signature {
    /// `(positive − negative) mod 8`.
    pub fn mod_8(&self) -> u8 {
        (self.positive as i64 - self.negative as i64).rem_euclid(8) as u8
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.positive, self.negative)
    }
}

/// A nondegenerate even integral lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    name: Option<String>,
    gram: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// Validates a Gram matrix: square, symmetric, even diagonal, nonzero
    /// determinant.
    pub fn new(gram: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::NotSquare);
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
            if gram[i][i].is_odd() {
                return Err(Error::NotEven(i));
            }
        }
        if linalg::determinant(&gram).is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(Lattice { name: None, gram })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    /// Rank-one lattice `⟨n⟩`.
    pub fn diagonal(n: i64) -> Result<Self> {
        Self::from_rows(&[[n]])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn determinant(&self) -> BigInt {
        linalg::determinant(&self.gram)
    }

    /// Signature by exact congruence diagonalization over `Q`.
    pub fn signature(&self) -> Signature {
        let (positive, negative, zero) = linalg::inertia(&self.gram);
        debug_assert_eq!(zero, 0);
        Signature { positive, negative }
    }

    /// Orthogonal direct sum; the Gram matrix is block diagonal.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![BigInt::zero(); n + m]; n + m];
        for i in 0..n {
            gram[i][..n].clone_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].clone_from_slice(&other.gram[i]);
        }
        let name = match (&self.name, &other.name) {
            (Some(a), Some(b)) => Some(format!("{a}+{b}")),
            _ => None,
        };
        Lattice { name, gram }
    }

    /// `L(s)`: the same group with the form multiplied by `s ≠ 0`.
    pub fn scaled(&self, s: i64) -> Result<Lattice> {
        if s == 0 {
            return Err(Error::Degenerate);
        }
        let f = BigInt::from(s);
        Ok(Lattice {
            name: self.name.as_ref().map(|n| format!("{n}({s})")),
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|x| x * &f).collect())
                .collect(),
        })
    }

    /// Gram matrix of `PᵀGP` for an integer change of basis `P`. `P` is not
    /// checked for unimodularity; a singular `P` yields [`Error::Degenerate`].
    pub fn transformed(&self, p: &[Vec<BigInt>]) -> Result<Lattice> {
        let n = self.rank();
        if p.len() != n || p.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare);
        }
        let gp: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &self.gram[i][k] * &p[k][j]).sum())
                    .collect()
            })
            .collect();
        let out = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| &p[k][i] * &gp[k][j]).sum())
                    .collect()
            })
            .collect();
        Lattice::new(out)
    }

    pub fn discriminant_form(&self) -> Result<DiscriminantForm> {
        DiscriminantForm::of_lattice(self)
    }

    pub fn to_json(&self) -> Result<String> {
        let gram = self
            .gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        x.to_i64()
                            .ok_or_else(|| Error::Overflow(format!("gram entry {x}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(serde_json::to_string(&LatticeJson {
            name: self.name.clone(),
            gram,
        })?)
    }

    pub fn from_json(s: &str) -> Result<Lattice> {
        let raw: LatticeJson = serde_json::from_str(s)?;
        let lat = Lattice::from_rows(&raw.gram)?;
        Ok(match raw.name {
            Some(n) => lat.with_name(n),
            None => lat,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    gram: Vec<Vec<i64>>,
}
