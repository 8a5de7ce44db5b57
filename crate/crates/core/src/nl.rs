//! Noether-Lefschetz divisors `D_{h,d}` on `K_g` and their labels `(n, γ)`.

use std::io::Write;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Label of `D_{h,d}`: the classes `β` with `β² = 2h−2`, `β·L = d`.
///
/// `n = −Δ/(4g−4)` is stored as defined, which is `≤ 0` for every valid
/// label; [`NlLabel::abs_n`] gives its absolute value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NlLabel {
    pub g: i64,
    pub h: i64,
    pub d: i64,
    pub delta: i64,
    #[serde(serialize_with = "ratio_string")]
    pub n: Rational64,
    /// `γ = d·w/(2g−2)`, recorded as `d mod (2g−2)`.
    pub gamma: i64,
    /// `Δ = 0`: the class is replaced by the Hodge (Euler) class.
    pub degenerate: bool,
}

fn ratio_string<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
}

impl NlLabel {
    pub fn abs_n(&self) -> Rational64 {
        if self.n < Rational64::from(0) {
            -self.n
        } else {
            self.n
        }
    }
}

/// `Δ(h,d) = d² − 4(g−1)(h−1)`.
pub fn discriminant(g: i64, h: i64, d: i64) -> i64 {
    d * d - 4 * (g - 1) * (h - 1)
}

pub fn nl_label(g: i64, h: i64, d: i64) -> Result<NlLabel> {
    if g < 2 {
        return Err(Error::BadGenus(g));
    }
    let delta = discriminant(g, h, d);
    if delta < 0 {
        return Err(Error::NegativeDiscriminant(delta));
    }
    Ok(NlLabel {
        g,
        h,
        d,
        delta,
        n: Rational64::new(-delta, 4 * (g - 1)),
        gamma: d.rem_euclid(2 * g - 2),
        degenerate: delta == 0,
    })
}

/// `½⟨x,x⟩` for the projection `x` of `β` orthogonal to `c₁(L)`, computed
/// from the Gram matrix `[[2g−2, d], [d, 2h−2]]` of `(c₁(L), β)`.
pub fn projection_oracle(g: i64, h: i64, d: i64) -> Rational64 {
    let gram = [[2 * g - 2, d], [d, 2 * h - 2]].map(|row| row.map(Rational64::from));
    let form = |x: &[Rational64; 2], y: &[Rational64; 2]| -> Rational64 {
        let mut acc = Rational64::from(0);
        for i in 0..2 {
            for j in 0..2 {
                acc += x[i] * gram[i][j] * y[j];
            }
        }
        acc
    };
    let l = [Rational64::from(1), Rational64::from(0)];
    let beta = [Rational64::from(0), Rational64::from(1)];
    let c = form(&beta, &l) / form(&l, &l);
    let x = [beta[0] - c * l[0], beta[1] - c * l[1]];
    form(&x, &x) / Rational64::from(2)
}

/// All labels with `0 ≤ d ≤ d_max`, `0 ≤ h ≤ h_max` and `Δ ≥ 0`, sorted by
/// `Δ` descending, then `d`, then `h`.
pub fn enumerate_nl(g: i64, d_max: i64, h_max: i64) -> Result<Vec<NlLabel>> {
    if g < 2 {
        return Err(Error::BadGenus(g));
    }
    if d_max < 0 || h_max < 0 {
        return Err(Error::BadRange {
            lo: d_max.min(h_max),
            hi: 0,
        });
    }
    let mut labels: Vec<NlLabel> = (0..=d_max)
        .into_par_iter()
        .flat_map_iter(|d| (0..=h_max).filter_map(move |h| nl_label(g, h, d).ok()))
        .collect();
    labels.sort_by(|a, b| {
        b.delta
            .cmp(&a.delta)
            .then(a.d.cmp(&b.d))
            .then(a.h.cmp(&b.h))
    });
    Ok(labels)
}

#[derive(Serialize)]
struct CsvRow {
    g: i64,
    h: i64,
    d: i64,
    delta: i64,
    n_num: i64,
    n_den: i64,
    gamma: i64,
    degenerate: bool,
}

/// CSV with columns `g,h,d,delta,n_num,n_den,gamma,degenerate`.
pub fn write_csv<W: Write>(labels: &[NlLabel], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for l in labels {
        w.serialize(CsvRow {
            g: l.g,
            h: l.h,
            d: l.d,
            delta: l.delta,
            n_num: *l.n.numer(),
            n_den: *l.n.denom(),
            gamma: l.gamma,
            degenerate: l.degenerate,
        })?;
    }
    w.flush().map_err(|e| Error::Serialization(e.to_string()))?;
    Ok(())
}
