//! Dimensions of spaces of vector-valued cusp forms `S_{k,ρ}` for Weil
//! representations, and the Picard rank they determine.
//!
//! For `k > 2` the space of holomorphic forms has dimension
//!
//! ```text
//! dim M_k = d + d·k/12 − α(e(k/4)·ρ(S)) − α((e(k/6)·ρ(ST))⁻¹) − α(ρ(T))
//! ```
//!
//! where everything is restricted to the subspace `V_k` on which `ρ(Z)` acts
//! by `e(−k/2)`, `d = dim V_k`, and `α(A) = Σ β_j` over the eigenvalues
//! `e(β_j)`, `0 ≤ β_j < 1`. Cusp forms are the complement of the Eisenstein
//! series, one for each `ρ(T)`-fixed vector of `V_k`.
//!
//! `e(k/4)·ρ(S)` squares to the identity on `V_k` and `e(k/6)·ρ(ST)` cubes to
//! it, so their spectra follow from two traces. The formula is therefore fed
//! only by `tr ρ(S)|V_k`, `tr ρ(ST)|V_k` and the `ρ(T)` eigenvalue counts on
//! `V_k`; after those are snapped to integers the remaining arithmetic is
//! exact.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{catalog, CatalogName, Lattice};
use crate::weil::{complex_pair, CMatrix, RootOfUnity, WeilRep};

const INTEGER_TOLERANCE: f64 = 1e-6;

/// A half-integral weight, stored as `2k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(i64);

impl Weight {
    pub fn from_twice(twice: i64) -> Self {
        Weight(twice)
    }

    pub fn twice(&self) -> i64 {
        self.0
    }

    pub fn as_f64(&self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn as_ratio(&self) -> Rational64 {
        Rational64::new(self.0, 2)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Accepts `12`, `21/2` and `10.5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadWeight(s.to_string());
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => Ok(Weight(2 * num)),
                "2" => Ok(Weight(num)),
                _ => Err(bad()),
            };
        }
        if let Ok(k) = s.parse::<i64>() {
            return Ok(Weight(2 * k));
        }
        let x: f64 = s.parse().map_err(|_| bad())?;
        let twice = (2.0 * x).round();
        if (2.0 * x - twice).abs() > 1e-12 {
            return Err(bad());
        }
        Ok(Weight(twice as i64))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which of `ρ_M` and its dual the forms transform under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Weil,
    Dual,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryTerms {
    /// `dim V_k`.
    pub subspace_dim: u64,
    /// `ε` in `f_{−γ} = ε·f_γ` on `V_k`.
    pub symmetry: i8,
    #[serde(serialize_with = "complex_pair")]
    pub tr_s: Complex64,
    #[serde(serialize_with = "complex_pair")]
    pub tr_st: Complex64,
    /// Multiplicity of `−1` for `e(k/4)·ρ(S)` on `V_k`.
    pub s_minus: u64,
    /// Multiplicities of `1, e(1/3), e(2/3)` for `e(k/6)·ρ(ST)` on `V_k`.
    pub st_counts: [u64; 3],
    #[serde(serialize_with = "ratio_string")]
    pub alpha_s: Rational64,
    #[serde(serialize_with = "ratio_string")]
    pub alpha_st: Rational64,
    #[serde(serialize_with = "ratio_string")]
    pub alpha_t: Rational64,
    /// `ρ(T)`-fixed vectors in `V_k`, one Eisenstein series each.
    pub eisenstein: u64,
    pub modular_dim: u64,
}

fn ratio_string<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CuspDimReport {
    pub k: Weight,
    /// `|A|`.
    pub d: usize,
    pub rep: RepKind,
    /// Set when `2k` and the signature have different parity; the space is
    /// then zero and no boundary terms are computed.
    pub parity_mismatch: bool,
    pub boundary_terms: Option<BoundaryTerms>,
    pub dim: u64,
}

fn e(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * x)
}

fn snap_int(x: f64, what: &str) -> Result<i64> {
    let r = x.round();
    if (x - r).abs() > INTEGER_TOLERANCE {
        return Err(Error::SnapFailure {
            value: format!("{what} = {x}"),
            target: format!("{r}"),
            tol: INTEGER_TOLERANCE,
        });
    }
    Ok(r as i64)
}

fn snap_count(x: f64, what: &str) -> Result<u64> {
    let v = snap_int(x, what)?;
    u64::try_from(v).map_err(|_| Error::SnapFailure {
        value: format!("{what} = {x}"),
        target: "a nonnegative integer".into(),
        tol: INTEGER_TOLERANCE,
    })
}

/// `dim S_k` for the given representation, computed from its matrices only.
pub fn dim_cusp_rep(rep: &WeilRep, k: Weight, kind: RepKind) -> Result<CuspDimReport> {
    if k.twice() <= 4 {
        return Err(Error::WeightTooSmall(k.to_string()));
    }
    let n = rep.dimension();
    let sig = rep.sig_mod_8() as i64;
    if (k.twice() - sig).rem_euclid(2) != 0 {
        return Ok(CuspDimReport {
            k,
            d: n,
            rep: kind,
            parity_mismatch: true,
            boundary_terms: None,
            dim: 0,
        });
    }
    let kf = k.as_f64();

    // projection onto V_k = {v : ρ(Z)v = e(−k/2)v}
    let proj: CMatrix =
        (CMatrix::identity(n, n) + rep.rho_z() * e(kf / 2.0)) * Complex64::new(0.5, 0.0);
    let d = snap_count(proj.trace().re, "dim V_k")?;
    let symmetry = if (sig - k.twice()).rem_euclid(4) == 0 {
        1
    } else {
        -1
    };

    let sp = rep.rho_s() * &proj;
    let tr_s = sp.trace();
    let tr_st = (&sp * rep.rho_t()).trace();

    let s_scaled = e(kf / 4.0) * tr_s;
    let s_minus = snap_count((d as f64 - s_scaled.re) / 2.0, "multiplicity of -1 in S")?;

    let st_scaled = e(kf / 6.0) * tr_st;
    let ones = snap_count(
        (2.0 * st_scaled.re + d as f64) / 3.0,
        "multiplicity of 1 in ST",
    )?;
    let diff = snap_int(2.0 * st_scaled.im / 3f64.sqrt(), "ST eigenvalue imbalance")?;
    let rest = d as i64 - ones as i64;
    if (rest + diff) % 2 != 0 || rest < diff.abs() {
        return Err(Error::SnapFailure {
            value: format!("ST spectrum ({ones}, {diff}) on dim {d}"),
            target: "cube roots of unity".into(),
            tol: INTEGER_TOLERANCE,
        });
    }
    let omega = ((rest + diff) / 2) as u64;
    let omega2 = ((rest - diff) / 2) as u64;

    // ρ(T) spectrum on V_k: P commutes with ρ(T), so the eigenspace of λ
    // meets V_k in dimension Σ_{γ : λ_γ = λ} P[γ,γ]
    let mut t_mult: std::collections::BTreeMap<RootOfUnity, f64> = Default::default();
    for i in 0..n {
        let root = RootOfUnity::snap(rep.rho_t()[(i, i)], rep.level())?;
        *t_mult.entry(root).or_insert(0.0) += proj[(i, i)].re;
    }
    let mut alpha_t = Rational64::from(0);
    let mut eisenstein = 0;
    for (root, m) in t_mult {
        let m = snap_count(m, "T eigenvalue multiplicity")?;
        if root.is_one() {
            eisenstein = m;
        }
        alpha_t += root.exponent() * Rational64::from(m as i64);
    }

    let alpha_s = Rational64::new(s_minus as i64, 2);
    // (e(k/6)ρ(ST))⁻¹ has eigenvalue e(2/3) on the e(1/3)-part and e(1/3) on the e(2/3)-part
    let alpha_st = Rational64::new(2 * omega as i64 + omega2 as i64, 3);
    let di = d as i64;
    let modular =
        Rational64::from(di) + Rational64::new(di * k.twice(), 24) - alpha_s - alpha_st - alpha_t;
    if !modular.is_integer() || modular.to_integer() < eisenstein as i64 {
        return Err(Error::SnapFailure {
            value: format!("dim M_k = {modular}"),
            target: format!("an integer ≥ {eisenstein}"),
            tol: INTEGER_TOLERANCE,
        });
    }
    let modular_dim = modular.to_integer() as u64;
    let dim = modular_dim - eisenstein;
    Ok(CuspDimReport {
        k,
        d: n,
        rep: kind,
        parity_mismatch: false,
        boundary_terms: Some(BoundaryTerms {
            subspace_dim: d,
            symmetry,
            tr_s,
            tr_st,
            s_minus,
            st_counts: [ones, omega, omega2],
            alpha_s,
            alpha_st,
            alpha_t,
            eisenstein,
            modular_dim,
        }),
        dim,
    })
}

/// `dim S_k` for `lat` with the representation chosen by `kind`.
pub fn dim_cusp_with(lat: &Lattice, k: Weight, kind: RepKind, cap: usize) -> Result<CuspDimReport> {
    if k.twice() <= 4 {
        return Err(Error::WeightTooSmall(k.to_string()));
    }
    let rep = WeilRep::build(&lat.discriminant_form()?, cap)?;
    match kind {
        RepKind::Weil => dim_cusp_rep(&rep, k, kind),
        RepKind::Dual => dim_cusp_rep(&rep.dual(), k, kind),
    }
}

/// `dim S_k` for forms of type `ρ_M*`, the dual Weil representation.
///
/// This is the type of the obstruction space for a lattice of signature
/// `(2, l)` at weight `1 + l/2`. For a lattice of signature `(l, 2)` use
/// [`RepKind::Weil`] instead, or go through [`picard_rank_via_cusp`], which
/// picks the orientation itself.
pub fn dim_cusp(lat: &Lattice, k: Weight) -> Result<CuspDimReport> {
    dim_cusp_with(lat, k, RepKind::Dual, crate::DEFAULT_MAX_GROUP)
}

/// `1 + dim S_{m/2}` for a lattice of signature `(p, 2)` or `(2, q)`, with
/// `m` the rank.
///
/// A `(p, 2)` lattice uses `ρ_M`; a `(2, q)` lattice is the same space with
/// the form negated and uses `ρ_M*`. The identity needs `M = U ⊕ U(N) ⊕ E`;
/// that cannot be read off a Gram matrix cheaply, so the caller asserts it
/// with `split_asserted`.
pub fn picard_rank_via_cusp(lat: &Lattice, split_asserted: bool, cap: usize) -> Result<u64> {
    Ok(1 + picard_report(lat, split_asserted, cap)?.dim)
}

/// The cusp-form report behind [`picard_rank_via_cusp`].
pub fn picard_report(lat: &Lattice, split_asserted: bool, cap: usize) -> Result<CuspDimReport> {
    let sig = lat.signature();
    let kind = match (sig.positive, sig.negative) {
        (_, 2) => RepKind::Weil,
        (2, _) => RepKind::Dual,
        (p, q) => return Err(Error::BadSignature(p, q)),
    };
    if !split_asserted {
        return Err(Error::HypothesisNotAsserted);
    }
    let k = Weight::from_twice(lat.rank() as i64);
    dim_cusp_with(lat, k, kind, cap)
}

/// Picard rank of `K_g` through `Λ_g`, which contains `U ⊕ U`.
pub fn picard_rank_lambda(g: i64, cap: usize) -> Result<u64> {
    picard_rank_via_cusp(&catalog(CatalogName::Lambda(g))?, true, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    #[test]
    fn weight_parsing() {
        assert_eq!(w("21/2"), Weight::from_twice(21));
        assert_eq!(w("10.5"), Weight::from_twice(21));
        assert_eq!(w("12"), Weight::from_twice(24));
        assert_eq!(w("12").to_string(), "12");
        assert_eq!(w("21/2").to_string(), "21/2");
        assert!("10.25".parse::<Weight>().is_err());
        assert!("7/3".parse::<Weight>().is_err());
    }

    #[test]
    fn lambda_two_and_three() {
        let l2 = catalog(CatalogName::Lambda(2)).unwrap();
        assert_eq!(dim_cusp(&l2, w("21/2")).unwrap().dim, 1);
        let l3 = catalog(CatalogName::Lambda(3)).unwrap();
        assert_eq!(dim_cusp(&l3, w("21/2")).unwrap().dim, 2);
        assert_eq!(picard_rank_lambda(2, 4096), Ok(2));
        assert_eq!(picard_rank_lambda(3, 4096), Ok(3));
    }

    #[test]
    fn trivial_group_gives_scalar_cusp_forms() {
        // classical dim S_k(SL2(Z)) for k = 4, 6, ..., 26
        let classical = [0, 0, 0, 0, 1, 0, 1, 1, 1, 1, 2, 1];
        let u = catalog(CatalogName::U).unwrap();
        let e = catalog(CatalogName::MinusE8).unwrap();
        let lat = u.direct_sum(&u).direct_sum(&e).direct_sum(&e);
        for (i, &expected) in classical.iter().enumerate() {
            let k = Weight::from_twice(8 + 4 * i as i64);
            assert_eq!(dim_cusp(&lat, k).unwrap().dim, expected, "k = {k}");
        }
        let odd = dim_cusp(&lat, w("21/2")).unwrap();
        assert!(odd.parity_mismatch);
        assert_eq!(odd.dim, 0);
        // odd integral weight: parity fits but the antisymmetric part of a
        // one-dimensional space with γ = −γ is empty
        let r = dim_cusp(&lat, w("11")).unwrap();
        assert!(!r.parity_mismatch);
        assert_eq!(r.dim, 0);
    }

    #[test]
    fn jacobi_forms_of_index_one() {
        // forms for ρ of ⟨−2⟩ at weight K − 1/2 are Jacobi forms of weight K
        // and index 1: dim J^cusp_{K,1} = dim S_K + dim S_{K+2} for even K
        let l = Lattice::diagonal(-2).unwrap();
        for (twice, expected) in [(19, 1), (23, 1), (15, 0), (11, 0), (21, 0)] {
            let r = dim_cusp_with(&l, Weight::from_twice(twice), RepKind::Weil, 4096).unwrap();
            assert_eq!(r.dim, expected, "2k = {twice}");
        }
    }

    #[test]
    fn errors() {
        let l2 = catalog(CatalogName::Lambda(2)).unwrap();
        assert_eq!(
            dim_cusp(&l2, w("2")),
            Err(Error::WeightTooSmall("2".into()))
        );
        assert_eq!(
            picard_rank_via_cusp(&l2, false, 4096),
            Err(Error::HypothesisNotAsserted)
        );
        let k3 = catalog(CatalogName::K3).unwrap();
        assert_eq!(
            picard_rank_via_cusp(&k3, true, 4096),
            Err(Error::BadSignature(3, 19))
        );
        assert!(matches!(
            picard_rank_via_cusp(&catalog(CatalogName::Lambda(40)).unwrap(), true, 10),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn both_orientations_agree() {
        for g in 2..=6 {
            let l = catalog(CatalogName::Lambda(g)).unwrap();
            let neg = l.scaled(-1).unwrap();
            assert_eq!(
                picard_rank_via_cusp(&l, true, 4096).unwrap(),
                picard_rank_via_cusp(&neg, true, 4096).unwrap()
            );
        }
    }
}
