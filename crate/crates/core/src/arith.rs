//! Exact elementary number theory for the closed-form rank, plus Gauss sums
//! as a numerical check on discriminant forms.

use num_complex::Complex64;
use num_rational::Rational64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lattice::DiscriminantForm;

/// Iteration cap for [`gauss_sum`].
pub const GAUSS_SUM_CAP: usize = 1_000_000;

/// Jacobi symbol `(a/b)` for odd `b ≥ 1`, by quadratic reciprocity.
///
/// `a` is reduced mod `b` first, so negative numerators are fine; `(a/1) = 1`.
pub fn jacobi(a: i64, b: i64) -> Result<i8> {
    if b <= 0 {
        return Err(Error::NonpositiveDenominator(b));
    }
    if b % 2 == 0 {
        return Err(Error::EvenDenominator(b));
    }
    let mut a = a.rem_euclid(b) as u64;
    let mut n = b as u64;
    let mut sign = 1i8;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        // (2/n) = −1 iff n ≡ ±3 (mod 8)
        if twos % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

fn check_genus(g: i64) -> Result<()> {
    if g < 2 {
        Err(Error::BadGenus(g))
    } else {
        Ok(())
    }
}

/// `Σ_{k=0}^{g−1} {k²/(4g−4)}`, with `{x}` the fractional part in `[0,1)`.
pub fn frac_square_sum(g: i64) -> Result<Rational64> {
    check_genus(g)?;
    let m = 4 * g - 4;
    let numerator: i64 = (0..g).map(|k| (k * k) % m).sum();
    Ok(Rational64::new(numerator, m))
}

/// `#{0 ≤ k ≤ g−1 : (4g−4) | k²}`.
pub fn square_count(g: i64) -> Result<u64> {
    check_genus(g)?;
    let m = 4 * g - 4;
    Ok((0..g).filter(|k| (k * k) % m == 0).count() as u64)
}

/// `Σ_{γ∈A} exp(πi·q(γ))`, summed over the whole group.
pub fn gauss_sum(df: &DiscriminantForm) -> Result<Complex64> {
    df.checked_len(GAUSS_SUM_CAP)?;
    let n = df.level() as f64;
    Ok(df
        .elements()
        .map(|a| Complex64::from_polar(1.0, PI * df.q_num(&a) as f64 / n))
        .sum())
}

/// The value `√|A|·exp(2πi·sig/8)` predicted by Milgram's formula.
pub fn milgram_prediction(df: &DiscriminantForm) -> Complex64 {
    Complex64::from_polar(
        (df.cardinality() as f64).sqrt(),
        2.0 * PI * df.sig_mod_8() as f64 / 8.0,
    )
}
