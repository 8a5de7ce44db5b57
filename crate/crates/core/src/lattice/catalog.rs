use std::fmt;

use super::Lattice;
use crate::error::{Error, Result};

/// Named lattices used throughout the K3 computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CatalogName {
    /// Hyperbolic plane `[[0,1],[1,0]]`.
    U,
    /// `U(N) = [[0,N],[N,0]]`.
    UScaled(i64),
    E8,
    MinusE8,
    /// `U³ ⊕ (−E8)²`.
    K3,
    /// `⟨2−2g⟩ ⊕ U² ⊕ (−E8)²`, the orthogonal complement of a primitive
    /// class of square `2g−2` in the K3 lattice.
    Lambda(i64),
    /// Rank one lattice `⟨n⟩`.
    Diagonal(i64),
}

impl CatalogName {
    /// Parses `U`, `U(N)`/`UN`, `E8`, `minusE8`, `K3`, `Lambda_g` and `<n>`.
    /// `g` and `n` supply the parameters of `Lambda_g` and `UN`.
    pub fn parse(name: &str, g: Option<i64>, n: Option<i64>) -> Result<Self> {
        let unknown = || Error::UnknownLattice(name.to_string());
        match name {
            "U" => Ok(CatalogName::U),
            "E8" => Ok(CatalogName::E8),
            "minusE8" | "-E8" => Ok(CatalogName::MinusE8),
            "K3" => Ok(CatalogName::K3),
            "UN" | "U(N)" => Ok(CatalogName::UScaled(n.ok_or_else(unknown)?)),
            "Lambda_g" | "Lambda" => Ok(CatalogName::Lambda(g.ok_or(Error::BadGenus(0))?)),
            _ => {
                if let Some(inner) = name.strip_prefix("U(").and_then(|s| s.strip_suffix(')')) {
                    return inner
                        .parse()
                        .map(CatalogName::UScaled)
                        .map_err(|_| unknown());
                }
                if let Some(inner) = name.strip_prefix("Lambda_") {
                    return inner
                        .parse()
                        .map(CatalogName::Lambda)
                        .map_err(|_| unknown());
                }
                if let Some(inner) = name.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
                    return inner
                        .parse()
                        .map(CatalogName::Diagonal)
                        .map_err(|_| unknown());
                }
                Err(unknown())
            }
        }
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::U => write!(f, "U"),
            CatalogName::UScaled(n) => write!(f, "U({n})"),
            CatalogName::E8 => write!(f, "E8"),
            CatalogName::MinusE8 => write!(f, "minusE8"),
            CatalogName::K3 => write!(f, "K3"),
            CatalogName::Lambda(g) => write!(f, "Lambda_{g}"),
            CatalogName::Diagonal(n) => write!(f, "<{n}>"),
        }
    }
}

/// E8 root lattice: Cartan matrix of the Dynkin diagram with branch node 4
/// (chain 1-3-4-5-6-7-8, node 2 attached to 4).
pub fn e8_gram() -> [[i64; 8]; 8] {
    const EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
    let mut g = [[0i64; 8]; 8];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (a, b) in EDGES {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    g
}

pub fn catalog(name: CatalogName) -> Result<Lattice> {
    let u = || Lattice::from_rows(&[[0, 1], [1, 0]]);
    let minus_e8 = || Lattice::from_rows(&e8_gram()).and_then(|l| l.scaled(-1));
    let lat = match name {
        CatalogName::U => u()?,
        CatalogName::UScaled(n) => {
            if n < 1 {
                return Err(Error::BadScale(n));
            }
            Lattice::from_rows(&[[0, n], [n, 0]])?
        }
        CatalogName::E8 => Lattice::from_rows(&e8_gram())?,
        CatalogName::MinusE8 => minus_e8()?,
        CatalogName::K3 => {
            let e = minus_e8()?;
            u()?.direct_sum(&u()?)
                .direct_sum(&u()?)
                .direct_sum(&e)
                .direct_sum(&e)
        }
        CatalogName::Lambda(g) => {
            if g < 2 {
                return Err(Error::BadGenus(g));
            }
            let e = minus_e8()?;
            Lattice::diagonal(2 - 2 * g)?
                .direct_sum(&u()?)
                .direct_sum(&u()?)
                .direct_sum(&e)
                .direct_sum(&e)
        }
        CatalogName::Diagonal(n) => Lattice::diagonal(n)?,
    };
    Ok(lat.with_name(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Signature;
    use num_bigint::BigInt;

    #[test]
    fn e8_is_even_unimodular_positive_definite() {
        let e8 = catalog(CatalogName::E8).unwrap();
        assert_eq!(e8.determinant(), BigInt::from(1));
        assert_eq!(
            e8.signature(),
            Signature {
                positive: 8,
                negative: 0
            }
        );
        let m = catalog(CatalogName::MinusE8).unwrap();
        assert_eq!(
            m.signature(),
            Signature {
                positive: 0,
                negative: 8
            }
        );
    }

    #[test]
    fn k3_lattice() {
        let k3 = catalog(CatalogName::K3).unwrap();
        assert_eq!(k3.rank(), 22);
        assert_eq!(k3.determinant(), BigInt::from(-1));
        assert_eq!(
            k3.signature(),
            Signature {
                positive: 3,
                negative: 19
            }
        );
    }

    #[test]
    fn lambda_lattices() {
        let l2 = catalog(CatalogName::Lambda(2)).unwrap();
        assert_eq!(l2.rank(), 21);
        assert_eq!(l2.determinant(), BigInt::from(-2));
        let l3 = catalog(CatalogName::Lambda(3)).unwrap();
        assert_eq!(
            l3.signature(),
            Signature {
                positive: 2,
                negative: 19
            }
        );
        assert_eq!(catalog(CatalogName::Lambda(1)), Err(Error::BadGenus(1)));
    }

    #[test]
    fn lambda_2_is_minus_two_plus_unimodular_part() {
        let u = catalog(CatalogName::U).unwrap();
        let e = catalog(CatalogName::MinusE8).unwrap();
        let built = Lattice::diagonal(-2)
            .unwrap()
            .direct_sum(&u)
            .direct_sum(&u)
            .direct_sum(&e)
            .direct_sum(&e);
        assert_eq!(
            built.gram(),
            catalog(CatalogName::Lambda(2)).unwrap().gram()
        );
    }

    #[test]
    fn scaled_hyperbolic_plane() {
        let u2 = catalog(CatalogName::UScaled(2)).unwrap();
        assert_eq!(
            u2,
            Lattice::from_rows(&[[0, 2], [2, 0]])
                .unwrap()
                .with_name("U(2)")
        );
        assert_eq!(catalog(CatalogName::UScaled(0)), Err(Error::BadScale(0)));
    }

    #[test]
    fn parse_names() {
        assert_eq!(
            CatalogName::parse("U(3)", None, None).unwrap(),
            CatalogName::UScaled(3)
        );
        assert_eq!(
            CatalogName::parse("UN", None, Some(5)).unwrap(),
            CatalogName::UScaled(5)
        );
        assert_eq!(
            CatalogName::parse("Lambda_g", Some(4), None).unwrap(),
            CatalogName::Lambda(4)
        );
        assert_eq!(
            CatalogName::parse("Lambda_7", None, None).unwrap(),
            CatalogName::Lambda(7)
        );
        assert_eq!(
            CatalogName::parse("<-2>", None, None).unwrap(),
            CatalogName::Diagonal(-2)
        );
        assert!(CatalogName::parse("D4", None, None).is_err());
        for name in [
            CatalogName::K3,
            CatalogName::UScaled(2),
            CatalogName::Lambda(9),
        ] {
            assert_eq!(
                CatalogName::parse(&name.to_string(), None, None).unwrap(),
                name
            );
        }
    }
}
