//! Closed-form Picard rank of the moduli space `K_g`:
//!
//! ```text
//! rank = (31g+24)/24 − α_g/4 − β_g/6 − Σ_{k<g} {k²/(4g−4)} − #{k < g : (4g−4) | k²}
//! ```
//!
//! with `α_g`, `β_g` built from Jacobi symbols.

use std::io::Write;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::arith::{frac_square_sum, jacobi, square_count};
use crate::error::{Error, Result};

/// `0` for even `g`, otherwise `((2g−2)/(2g−3))`.
pub fn alpha(g: i64) -> Result<i64> {
    if g < 2 {
        return Err(Error::BadGenus(g));
    }
    if g % 2 == 0 {
        return Ok(0);
    }
    Ok(jacobi(2 * g - 2, 2 * g - 3)? as i64)
}

/// `((g−1)/(4g−5)) − 1` when `g ≡ 1 (mod 3)`, otherwise
/// `((g−1)/(4g−5)) + ((g−1)/3)`.
pub fn beta(g: i64) -> Result<i64> {
    if g < 2 {
        return Err(Error::BadGenus(g));
    }
    let first = jacobi(g - 1, 4 * g - 5)? as i64;
    if g % 3 == 1 {
        Ok(first - 1)
    } else {
        Ok(first + jacobi(g - 1, 3)? as i64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub g: i64,
    pub alpha: i64,
    pub beta: i64,
    #[serde(serialize_with = "ratio_string")]
    pub fracsum: Rational64,
    pub sqcount: u64,
    pub rank: u64,
}

fn ratio_string<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
}

pub fn picard_rank(g: i64) -> Result<RankReport> {
    let alpha = alpha(g)?;
    let beta = beta(g)?;
    let fracsum = frac_square_sum(g)?;
    let sqcount = square_count(g)?;
    let value = Rational64::new(31 * g + 24, 24)
        - Rational64::new(alpha, 4)
        - Rational64::new(beta, 6)
        - fracsum
        - Rational64::from(sqcount as i64);
    if !value.is_integer() || value < Rational64::from(1) {
        return Err(Error::NonIntegerResult {
            g,
            value: value.to_string(),
        });
    }
    Ok(RankReport {
        g,
        alpha,
        beta,
        fracsum,
        sqcount,
        rank: value.to_integer() as u64,
    })
}

/// Reports for every genus in `lo..=hi`, in genus order.
pub fn rank_table(lo: i64, hi: i64) -> Result<Vec<RankReport>> {
    if lo < 2 || lo > hi {
        return Err(Error::BadRange { lo, hi });
    }
    (lo..=hi).into_par_iter().map(picard_rank).collect()
}

#[derive(Serialize)]
struct CsvRow {
    g: i64,
    alpha: i64,
    beta: i64,
    fracsum_num: i64,
    fracsum_den: i64,
    sqcount: u64,
    rank: u64,
}

/// CSV with columns `g,alpha,beta,fracsum_num,fracsum_den,sqcount,rank`.
pub fn write_csv<W: Write>(reports: &[RankReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(CsvRow {
            g: r.g,
            alpha: r.alpha,
            beta: r.beta,
            fracsum_num: *r.fracsum.numer(),
            fracsum_den: *r.fracsum.denom(),
            sqcount: r.sqcount,
            rank: r.rank,
        })?;
    }
    w.flush().map_err(|e| Error::Serialization(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(2), Ok(0));
        assert_eq!(alpha(3), Ok(1));
        assert_eq!(alpha(5), Ok(1));
        assert_eq!(alpha(1), Err(Error::BadGenus(1)));
    }

    #[test]
    fn beta_values() {
        assert_eq!(beta(2), Ok(2));
        assert_eq!(beta(3), Ok(0));
        assert_eq!(beta(4), Ok(0));
    }

    #[test]
    fn breakdown_for_genus_two_and_three() {
        let r2 = picard_rank(2).unwrap();
        assert_eq!(
            (r2.alpha, r2.beta, r2.fracsum, r2.sqcount, r2.rank),
            (0, 2, Rational64::new(1, 4), 1, 2)
        );
        let r3 = picard_rank(3).unwrap();
        assert_eq!(
            (r3.alpha, r3.beta, r3.fracsum, r3.sqcount, r3.rank),
            (1, 0, Rational64::new(5, 8), 1, 3)
        );
    }

    #[test]
    fn table_ranges() {
        assert_eq!(rank_table(2, 2).unwrap().len(), 1);
        let t = rank_table(2, 4).unwrap();
        assert_eq!(t.iter().map(|r| r.g).collect::<Vec<_>>(), vec![2, 3, 4]);
        assert!(t.iter().all(|r| r.rank >= 1));
        assert_eq!(rank_table(5, 2), Err(Error::BadRange { lo: 5, hi: 2 }));
        assert_eq!(rank_table(1, 2), Err(Error::BadRange { lo: 1, hi: 2 }));
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        write_csv(&rank_table(2, 3).unwrap(), &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "g,alpha,beta,fracsum_num,fracsum_den,sqcount,rank\n2,0,2,1,4,1,2\n3,1,0,5,8,1,3\n"
        );
    }
}
