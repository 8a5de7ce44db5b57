//! Discriminant forms `M∨/M` of even lattices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, ToPrimitive, Zero};

use super::{linalg, Lattice};
use crate::error::{Error, Result};

/// The finite quadratic module `(M∨/M, q, b)` of an even lattice.
///
/// The group is `⊕ Z/d_i` with `d_1 | d_2 | ...`, every `d_i > 1`. Elements
/// are exponent vectors `(a_1, ..., a_r)` with `0 ≤ a_i < d_i`, enumerated
/// lexicographically (first generator most significant). Quadratic values
/// live in `Q/2Z`, bilinear values in `Q/Z`; both are kept as numerators
/// over the level `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscriminantForm {
    orders: Vec<u64>,
    generators: Vec<Vec<BigRational>>,
    level: u64,
    /// `N·⟨γ_i,γ_j⟩`, reduced mod `2N` on the diagonal and mod `N` off it.
    norms: Vec<Vec<u64>>,
    sig_mod_8: u8,
}

impl DiscriminantForm {
    pub(crate) fn of_lattice(lat: &Lattice) -> Result<Self> {
        let gram = lat.gram();
        let (diag, v) = linalg::smith_diagonal(&gram.to_vec());
        let mut orders = Vec::new();
        let mut generators = Vec::new();
        for (t, d) in diag.iter().enumerate() {
            if d.is_one() {
                continue;
            }
            orders.push(
                d.to_u64()
                    .ok_or_else(|| Error::Overflow(format!("elementary divisor {d}")))?,
            );
            generators.push(
                v.iter()
                    .map(|row| BigRational::new(row[t].clone(), d.clone()))
                    .collect::<Vec<_>>(),
            );
        }
        let pairing = |x: &[BigRational], y: &[BigRational]| -> BigRational {
            let mut acc = BigRational::zero();
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (j, yj) in y.iter().enumerate() {
                    if !yj.is_zero() && !gram[i][j].is_zero() {
                        acc += xi * yj * BigRational::from_integer(gram[i][j].clone());
                    }
                }
            }
            acc
        };
        let r = generators.len();
        let exact: Vec<Vec<BigRational>> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| pairing(&generators[i], &generators[j]))
                    .collect()
            })
            .collect();
        Self::from_exact(orders, generators, &exact, lat.signature().mod_8())
    }

    fn from_exact(
        orders: Vec<u64>,
        generators: Vec<Vec<BigRational>>,
        exact: &[Vec<BigRational>],
        sig_mod_8: u8,
    ) -> Result<Self> {
        let r = orders.len();
        let two = BigRational::from_integer(BigInt::from(2));
        let mut level = BigInt::one();
        for i in 0..r {
            for j in i..r {
                let x = if i == j {
                    &exact[i][i] / &two
                } else {
                    exact[i][j].clone()
                };
                level = level.lcm(x.denom());
            }
        }
        let level_u = level
            .to_u64()
            .ok_or_else(|| Error::Overflow(format!("level {level}")))?;
        let n = BigRational::from_integer(level.clone());
        let norms = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let scaled = (&exact[i][j] * &n).to_integer();
                        let modulus = if i == j { &level * 2 } else { level.clone() };
                        scaled
                            .mod_floor(&modulus)
                            .to_u64()
                            .expect("reduced below level")
                    })
                    .collect()
            })
            .collect();
        Ok(DiscriminantForm {
            orders,
            generators,
            level: level_u,
            norms,
            sig_mod_8,
        })
    }

    /// Elementary divisors `d_1 | d_2 | ...`, each greater than 1.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// Representatives in `M∨`, in coordinates of the lattice basis.
    pub fn generators(&self) -> &[Vec<BigRational>] {
        &self.generators
    }

    pub fn cardinality(&self) -> u128 {
        self.orders.iter().map(|&d| d as u128).product()
    }

    /// Least `N ≥ 1` with `N·q ≡ 0 (mod 2)` on the whole group.
    pub fn level(&self) -> u64 {
        self.level
    }

    /// Signature of the source lattice mod 8.
    pub fn sig_mod_8(&self) -> u8 {
        self.sig_mod_8
    }

    /// Exponent of the group (the largest elementary divisor).
    pub fn exponent(&self) -> u64 {
        self.orders.last().copied().unwrap_or(1)
    }

    /// Group size as a `usize`, refusing groups above `cap`.
    pub fn checked_len(&self, cap: usize) -> Result<usize> {
        let size = self.cardinality();
        if size > cap as u128 {
            return Err(Error::TooLarge {
                size,
                cap: cap as u128,
            });
        }
        Ok(size as usize)
    }

    pub fn elements(&self) -> ElementIter<'_> {
        ElementIter {
            orders: &self.orders,
            next: Some(vec![0; self.orders.len()]),
        }
    }

    /// Position of `a` in the lexicographic enumeration.
    pub fn index_of(&self, a: &[u64]) -> usize {
        a.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&x, &d)| acc * d as usize + (x % d) as usize)
    }

    pub fn element(&self, mut index: usize) -> Vec<u64> {
        let mut a = vec![0; self.orders.len()];
        for (slot, &d) in a.iter_mut().zip(&self.orders).rev() {
            *slot = (index % d as usize) as u64;
            index /= d as usize;
        }
        a
    }

    pub fn negate(&self, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &d)| (d - x % d) % d)
            .collect()
    }

    /// `N·q(γ)` as an integer in `[0, 2N)`.
    pub fn q_num(&self, a: &[u64]) -> u64 {
        let m = 2 * self.level as u128;
        let mut acc: u128 = 0;
        for i in 0..a.len() {
            let ai = a[i] as u128 % m;
            acc = (acc + ai * ai % m * self.norms[i][i] as u128) % m;
            for j in i + 1..a.len() {
                let t = 2 * ai % m * (a[j] as u128 % m) % m * self.norms[i][j] as u128;
                acc = (acc + t) % m;
            }
        }
        acc as u64
    }

    /// `N·b(γ,δ)` as an integer in `[0, N)`.
    pub fn b_num(&self, a: &[u64], c: &[u64]) -> u64 {
        let m = self.level as u128;
        let mut acc: u128 = 0;
        for i in 0..a.len() {
            for j in 0..c.len() {
                let t =
                    (a[i] as u128 % m) * (c[j] as u128 % m) % m * (self.norms[i][j] as u128 % m);
                acc = (acc + t) % m;
            }
        }
        acc as u64
    }

    /// `q(γ) = ⟨γ,γ⟩` reduced to `[0, 2)`.
    pub fn q(&self, a: &[u64]) -> Rational64 {
        Rational64::new(self.q_num(a) as i64, self.level as i64)
    }

    /// `b(γ,δ) = ⟨γ,δ⟩` reduced to `[0, 1)`.
    pub fn b(&self, a: &[u64], c: &[u64]) -> Rational64 {
        Rational64::new(self.b_num(a, c) as i64, self.level as i64)
    }

    /// Orthogonal sum; generators of `other` are padded into the coordinates
    /// of the direct-sum lattice after those of `self`.
    pub fn orthogonal_sum(&self, other: &DiscriminantForm) -> Result<DiscriminantForm> {
        let dim_a = self.generators.first().map_or(0, Vec::len);
        let dim_b = other.generators.first().map_or(0, Vec::len);
        let mut generators = Vec::new();
        for gen in &self.generators {
            let mut v = gen.clone();
            v.resize(dim_a + dim_b, BigRational::zero());
            generators.push(v);
        }
        for gen in &other.generators {
            let mut v = vec![BigRational::zero(); dim_a];
            v.extend(gen.iter().cloned());
            generators.push(v);
        }
        let (ra, rb) = (self.orders.len(), other.orders.len());
        let mut exact = vec![vec![BigRational::zero(); ra + rb]; ra + rb];
        for i in 0..ra {
            for j in 0..ra {
                exact[i][j] = BigRational::new(self.norms[i][j].into(), self.level.into());
            }
        }
        for i in 0..rb {
            for j in 0..rb {
                exact[ra + i][ra + j] =
                    BigRational::new(other.norms[i][j].into(), other.level.into());
            }
        }
        let orders = self.orders.iter().chain(&other.orders).copied().collect();
        Self::from_exact(
            orders,
            generators,
            &exact,
            (self.sig_mod_8 + other.sig_mod_8) % 8,
        )
    }

    /// Canonical invariant factors of the group, independent of how the
    /// cyclic decomposition was presented.
    pub fn invariant_factors(&self) -> Vec<u64> {
        invariant_factors(&self.orders)
    }

    /// Multiset of `q`-values over the whole group. An isomorphism invariant
    /// of the quadratic module.
    pub fn value_distribution(&self) -> BTreeMap<Rational64, usize> {
        let mut out = BTreeMap::new();
        for a in self.elements() {
            *out.entry(self.q(&a)).or_insert(0) += 1;
        }
        out
    }
}

/// Normalizes a list of cyclic orders into invariant factors
/// `e_1 | e_2 | ...`, all greater than 1.
pub(crate) fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    // prime-power parts, grouped by prime
    let mut parts: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &d in orders {
        let mut rest = d;
        let mut p = 2;
        while p * p <= rest {
            if rest % p == 0 {
                let mut pk = 1;
                while rest % p == 0 {
                    rest /= p;
                    pk *= p;
                }
                parts.entry(p).or_default().push(pk);
            }
            p += 1;
        }
        if rest > 1 {
            parts.entry(rest).or_default().push(rest);
        }
    }
    let len = parts.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in parts.values_mut() {
        powers.sort_unstable();
        let offset = len - powers.len();
        for (k, pk) in powers.iter().enumerate() {
            out[offset + k] *= pk;
        }
    }
    out
}

/// Lexicographic iterator over exponent vectors.
pub struct ElementIter<'a> {
    orders: &'a [u64],
    next: Option<Vec<u64>>,
}

impl Iterator for ElementIter<'_> {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carried = true;
        for (slot, &d) in succ.iter_mut().zip(self.orders).rev() {
            *slot += 1;
            if *slot < d {
                carried = false;
                break;
            }
            *slot = 0;
        }
        if !carried {
            self.next = Some(succ);
        }
        Some(current)
    }
}
