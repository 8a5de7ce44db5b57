//! The Weil representation `ρ_M` of `Mp₂(Z)` on `C[M∨/M]`.
//!
//! Conventions, with `e(x) = exp(2πi·x)` and `sig = b⁺ − b⁻`:
//!
//! ```text
//! ρ(T) e_γ = e(q(γ)/2) e_γ
//! ρ(S) e_γ = e(−sig/8) / √|A| · Σ_δ e(−b(γ,δ)) e_δ
//! ρ(Z) e_γ = e(−sig/4) e_{−γ}
//! ```
//!
//! `ρ(Z)` is built from its closed form rather than as `ρ(S)²`, so that the
//! relation `S² = Z` checked by [`WeilRep::verify_relations`] compares two
//! independent constructions.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::DiscriminantForm;

pub type CMatrix = DMatrix<Complex64>;

/// Diagonal entries farther than this from an `N`-th root of unity are
/// rejected by [`WeilRep::traces`].
pub const SNAP_TOLERANCE: f64 = 1e-6;

fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

#[derive(Debug, Clone)]
pub struct WeilRep {
    basis: Vec<Vec<u64>>,
    /// `neg[i]` is the basis position of `−γ_i`.
    neg: Vec<usize>,
    level: u64,
    sig_mod_8: u8,
    rho_t: CMatrix,
    rho_s: CMatrix,
    rho_z: CMatrix,
}

impl WeilRep {
    /// Builds `ρ(T)`, `ρ(S)` and `ρ(Z)`, refusing groups larger than `cap`.
    pub fn build(df: &DiscriminantForm, cap: usize) -> Result<WeilRep> {
        let n = df.checked_len(cap)?;
        let level = df.level();
        let sig = df.sig_mod_8() as f64;
        let basis: Vec<Vec<u64>> = df.elements().collect();
        let neg: Vec<usize> = basis.iter().map(|a| df.index_of(&df.negate(a))).collect();

        let rho_t = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            n,
            basis
                .iter()
                .map(|a| e(df.q_num(a) as f64 / (2 * level) as f64)),
        ));
        let scale = e(-sig / 8.0) / (n as f64).sqrt();
        let rho_s = CMatrix::from_fn(n, n, |d, g| {
            scale * e(-(df.b_num(&basis[g], &basis[d]) as f64) / level as f64)
        });
        let z = e(-sig / 4.0);
        let rho_z = CMatrix::from_fn(n, n, |r, c| {
            if neg[c] == r {
                z
            } else {
                Complex64::new(0.0, 0.0)
            }
        });

        Ok(WeilRep {
            basis,
            neg,
            level,
            sig_mod_8: df.sig_mod_8(),
            rho_t,
            rho_s,
            rho_z,
        })
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Exponent vectors of the basis elements `e_γ`, in matrix order.
    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn sig_mod_8(&self) -> u8 {
        self.sig_mod_8
    }

    pub fn rho_t(&self) -> &CMatrix {
        &self.rho_t
    }

    pub fn rho_s(&self) -> &CMatrix {
        &self.rho_s
    }

    pub fn rho_z(&self) -> &CMatrix {
        &self.rho_z
    }

    /// Basis position of `−γ` for the element at position `i`.
    pub fn negation(&self, i: usize) -> usize {
        self.neg[i]
    }

    /// The dual representation `ρ*`, i.e. the complex conjugate. It is the
    /// Weil representation of the rescaled lattice `M(−1)`.
    pub fn dual(&self) -> WeilRep {
        WeilRep {
            basis: self.basis.clone(),
            neg: self.neg.clone(),
            level: self.level,
            sig_mod_8: (8 - self.sig_mod_8) % 8,
            rho_t: self.rho_t.conjugate(),
            rho_s: self.rho_s.conjugate(),
            rho_z: self.rho_z.conjugate(),
        }
    }

    /// The same representation in a reordered basis: new position `i` holds
    /// the old basis element `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> WeilRep {
        let n = self.dimension();
        assert_eq!(order.len(), n, "order must be a permutation of the basis");
        let mut inverse = vec![usize::MAX; n];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        assert!(
            inverse.iter().all(|&i| i != usize::MAX),
            "order must be a permutation of the basis"
        );
        let conj = |m: &CMatrix| CMatrix::from_fn(n, n, |r, c| m[(order[r], order[c])]);
        WeilRep {
            basis: order.iter().map(|&i| self.basis[i].clone()).collect(),
            neg: order.iter().map(|&i| inverse[self.neg[i]]).collect(),
            level: self.level,
            sig_mod_8: self.sig_mod_8,
            rho_t: conj(&self.rho_t),
            rho_s: conj(&self.rho_s),
            rho_z: conj(&self.rho_z),
        }
    }

    /// Checks the defining relations of `Mp₂(Z)` on the generators.
    pub fn verify_relations(&self, tol: f64) -> RelationReport {
        let n = self.dimension();
        let id = CMatrix::identity(n, n);
        let s2 = &self.rho_s * &self.rho_s;
        let st = &self.rho_s * &self.rho_t;
        let st3 = &st * &st * &st;
        let tn = matrix_pow(&self.rho_t, self.level);

        let mut z_err: f64 = 0.0;
        for c in 0..n {
            for r in 0..n {
                let v = self.rho_z[(r, c)].norm();
                z_err = z_err.max(if r == self.neg[c] { (v - 1.0).abs() } else { v });
            }
        }

        let max_err_s2z = max_abs(&(&s2 - &self.rho_z));
        let max_err_st3 = max_abs(&(&st3 - &s2));
        let max_err_tn = max_abs(&(&tn - &id));
        let max_err_unitary = max_abs(&(&self.rho_s * self.rho_s.adjoint() - &id));
        let pass = [max_err_s2z, max_err_st3, max_err_tn, max_err_unitary, z_err]
            .iter()
            .all(|&x| x < tol);
        RelationReport {
            level: self.level,
            max_err_s2z,
            max_err_st3,
            max_err_tn,
            max_err_unitary,
            max_err_z_monomial: z_err,
            pass,
        }
    }

    /// Traces of `ρ(T)`, `ρ(S)`, `ρ(ST)` and the spectrum of `ρ(T)`.
    pub fn traces(&self) -> Result<Traces> {
        let st = &self.rho_s * &self.rho_t;
        let mut eig_t = BTreeMap::new();
        for i in 0..self.dimension() {
            let root = RootOfUnity::snap(self.rho_t[(i, i)], self.level)?;
            *eig_t.entry(root).or_insert(0) += 1;
        }
        Ok(Traces {
            tr_t: self.rho_t.trace(),
            tr_s: self.rho_s.trace(),
            tr_st: st.trace(),
            eig_t,
        })
    }

    pub fn to_json(&self) -> Result<String> {
        #[derive(Serialize)]
        struct Out<'a> {
            dimension: usize,
            level: u64,
            sig_mod_8: u8,
            basis: &'a [Vec<u64>],
            rho_t: Vec<Vec<[f64; 2]>>,
            rho_s: Vec<Vec<[f64; 2]>>,
            rho_z: Vec<Vec<[f64; 2]>>,
        }
        let rows = |m: &CMatrix| -> Vec<Vec<[f64; 2]>> {
            (0..m.nrows())
                .map(|r| {
                    (0..m.ncols())
                        .map(|c| [m[(r, c)].re, m[(r, c)].im])
                        .collect()
                })
                .collect()
        };
        Ok(serde_json::to_string(&Out {
            dimension: self.dimension(),
            level: self.level,
            sig_mod_8: self.sig_mod_8,
            basis: &self.basis,
            rho_t: rows(&self.rho_t),
            rho_s: rows(&self.rho_s),
            rho_z: rows(&self.rho_z),
        })?)
    }
}

pub(crate) fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn matrix_pow(m: &CMatrix, mut k: u64) -> CMatrix {
    let n = m.nrows();
    let mut acc = CMatrix::identity(n, n);
    let mut base = m.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = &acc * &base;
        }
        base = &base * &base;
        k >>= 1;
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RelationReport {
    pub level: u64,
    pub max_err_s2z: f64,
    pub max_err_st3: f64,
    pub max_err_tn: f64,
    pub max_err_unitary: f64,
    pub max_err_z_monomial: f64,
    pub pass: bool,
}

/// The root of unity `e(x)`, stored as the exponent `x ∈ [0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity(Rational64);

impl RootOfUnity {
    pub fn new(x: Rational64) -> Self {
        let one = Rational64::from(1);
        let mut r = x - x.floor();
        if r >= one {
            r -= one;
        }
        RootOfUnity(r)
    }

    pub fn exponent(&self) -> Rational64 {
        self.0
    }

    pub fn is_one(&self) -> bool {
        *self.0.numer() == 0
    }

    pub fn value(&self) -> Complex64 {
        e(*self.0.numer() as f64 / *self.0.denom() as f64)
    }

    /// Nearest `order`-th root of unity to `z`.
    pub fn snap(z: Complex64, order: u64) -> Result<Self> {
        let turns = z.arg() / (2.0 * PI);
        let j = (turns * order as f64).round() as i64;
        let root = RootOfUnity::new(Rational64::new(j, order as i64));
        let err = (z - root.value()).norm();
        if err > SNAP_TOLERANCE {
            return Err(Error::SnapFailure {
                value: format!("{z}"),
                target: root.to_string(),
                tol: SNAP_TOLERANCE,
            });
        }
        Ok(root)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e({})", self.0)
    }
}

impl Serialize for RootOfUnity {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Traces {
    #[serde(serialize_with = "complex_pair")]
    pub tr_t: Complex64,
    #[serde(serialize_with = "complex_pair")]
    pub tr_s: Complex64,
    #[serde(serialize_with = "complex_pair")]
    pub tr_st: Complex64,
    pub eig_t: BTreeMap<RootOfUnity, usize>,
}

pub(crate) fn complex_pair<S: Serializer>(
    z: &Complex64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}
