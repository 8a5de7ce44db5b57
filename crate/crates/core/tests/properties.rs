#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::Signed;
use proptest::prelude::*;

use nlrank::arith::{frac_square_sum, gauss_sum, jacobi, milgram_prediction, square_count};
use nlrank::cusp::{dim_cusp_rep, RepKind, Weight};
use nlrank::lattice::{catalog, CatalogName, Lattice};
use nlrank::nl::{nl_label, projection_oracle};
use nlrank::rank::{alpha, beta};
use nlrank::weil::RootOfUnity;
use nlrank::WeilRep;

fn corpus() -> Vec<Lattice> {
    let mut out: Vec<Lattice> = [
        CatalogName::U,
        CatalogName::UScaled(2),
        CatalogName::UScaled(3),
        CatalogName::Diagonal(2),
        CatalogName::Diagonal(-2),
        CatalogName::Diagonal(6),
        CatalogName::E8,
        CatalogName::MinusE8,
        CatalogName::K3,
    ]
    .into_iter()
    .map(|n| catalog(n).unwrap())
    .collect();
    out.extend((2..=8).map(|g| catalog(CatalogName::Lambda(g)).unwrap()));
    out.push(
        Lattice::diagonal(2)
            .unwrap()
            .direct_sum(&Lattice::diagonal(-2).unwrap()),
    );
    out.push(Lattice::from_rows(&[[2, -1], [-1, 2]]).unwrap());
    out.push(Lattice::from_rows(&[[2, 1, 0], [1, 4, 1], [0, 1, -6]]).unwrap());
    out
}

/// Small random even lattices with `1 ≤ |det| ≤ max_det`.
fn even_lattice_up_to(max_det: i64) -> impl Strategy<Value = Lattice> {
    (1usize..=4)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(-3i64..=3, n),
                proptest::collection::vec(-3i64..=3, n * (n - 1) / 2),
            )
                .prop_map(move |(diag, off)| {
                    let mut g = vec![vec![0i64; n]; n];
                    let mut it = off.into_iter();
                    for i in 0..n {
                        g[i][i] = 2 * diag[i];
                        for j in i + 1..n {
                            let v = it.next().unwrap();
                            g[i][j] = v;
                            g[j][i] = v;
                        }
                    }
                    g
                })
        })
        .prop_filter_map("degenerate or large", move |g| {
            let lat = Lattice::from_rows(&g).ok()?;
            (lat.determinant().abs() <= BigInt::from(max_det)).then_some(lat)
        })
}

fn even_lattice() -> impl Strategy<Value = Lattice> {
    even_lattice_up_to(300)
}

fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<BigInt>>> {
    // product of elementary matrices I + c·E_ij and a sign flip
    proptest::collection::vec((0..n, 0..n, -3i64..=3), 0..12).prop_map(move |ops| {
        let mut p = vec![vec![BigInt::from(0); n]; n];
        for (i, row) in p.iter_mut().enumerate() {
            row[i] = BigInt::from(1);
        }
        for (i, j, c) in ops {
            if i == j {
                for row in p.iter_mut() {
                    row[i] = -row[i].clone();
                }
                continue;
            }
            // column_j += c·column_i
            for row in p.iter_mut() {
                let add = &row[i] * c;
                row[j] += add;
            }
        }
        p
    })
}

#[test]
fn corpus_cardinality_matches_determinant() {
    for lat in corpus() {
        let df = lat.discriminant_form().unwrap();
        assert_eq!(
            BigInt::from(df.cardinality()),
            lat.determinant().abs(),
            "{:?}",
            lat.name()
        );
    }
}

#[test]
fn corpus_level_bounds() {
    let u = catalog(CatalogName::U)
        .unwrap()
        .discriminant_form()
        .unwrap();
    assert_eq!(u.level(), 1);
    for lat in corpus() {
        let df = lat.discriminant_form().unwrap();
        let bound = 2 * df.cardinality() * df.exponent() as u128;
        assert_eq!(bound % df.level() as u128, 0, "{:?}", lat.name());
        // N is minimal: N·q ∈ 2Z everywhere, and no proper divisor works
        for a in df.elements() {
            assert!((df.q(&a) * Rational64::from(df.level() as i64)).to_integer() % 2 == 0);
        }
        for p in 2..=df.level() {
            if df.level() % p != 0 {
                continue;
            }
            let m = Rational64::from((df.level() / p) as i64);
            let works = df.elements().all(|a| {
                let v = df.q(&a) * m;
                v.is_integer() && v.to_integer() % 2 == 0
            });
            assert!(!works, "level of {:?} is not minimal", lat.name());
        }
    }
}

#[test]
fn corpus_milgram_and_trace_identity() {
    for lat in corpus() {
        let df = lat.discriminant_form().unwrap();
        let gs = gauss_sum(&df).unwrap();
        assert!(
            (gs - milgram_prediction(&df)).norm() < 1e-9,
            "{:?}",
            lat.name()
        );
        let w = WeilRep::build(&df, 4096).unwrap();
        let t = w.traces().unwrap();
        assert!((t.tr_t - gs).norm() < 1e-9);
        let s = w.rho_s();
        assert!(
            (s - s.transpose()).iter().all(|z| z.norm() < 1e-12),
            "rho(S) not symmetric"
        );
        let n = w.dimension();
        let unit = s * s.adjoint() - DMatrix::<Complex64>::identity(n, n);
        assert!(unit.iter().all(|z| z.norm() < 1e-9));
        assert!(w.verify_relations(1e-9).pass, "{:?}", lat.name());
    }
}

#[test]
fn weil_t_of_orthogonal_sum_is_tensor_product() {
    let pairs = [
        (
            Lattice::diagonal(2).unwrap(),
            Lattice::diagonal(-2).unwrap(),
        ),
        (
            catalog(CatalogName::Lambda(3)).unwrap(),
            Lattice::diagonal(6).unwrap(),
        ),
        (
            catalog(CatalogName::UScaled(2)).unwrap(),
            Lattice::from_rows(&[[2, -1], [-1, 2]]).unwrap(),
        ),
    ];
    for (a, b) in pairs {
        let (da, db) = (
            a.discriminant_form().unwrap(),
            b.discriminant_form().unwrap(),
        );
        let sum = da.orthogonal_sum(&db).unwrap();
        let wa = WeilRep::build(&da, 4096).unwrap();
        let wb = WeilRep::build(&db, 4096).unwrap();
        let ws = WeilRep::build(&sum, 4096).unwrap();
        let kron = wa.rho_t().kronecker(wb.rho_t());
        let snap = |z: Complex64| RootOfUnity::snap(z, ws.level()).unwrap();
        for i in 0..ws.dimension() {
            assert_eq!(snap(ws.rho_t()[(i, i)]), snap(kron[(i, i)]));
        }
        // the lattice route presents the same group, up to basis
        let direct = a.direct_sum(&b).discriminant_form().unwrap();
        assert_eq!(direct.invariant_factors(), sum.invariant_factors());
        assert_eq!(direct.value_distribution(), sum.value_distribution());
        assert_eq!(direct.sig_mod_8(), sum.sig_mod_8());
    }
}

#[test]
fn cusp_dim_is_stable_under_basis_permutation() {
    let k = Weight::from_twice(21);
    for g in [4, 7, 12] {
        let df = catalog(CatalogName::Lambda(g))
            .unwrap()
            .discriminant_form()
            .unwrap();
        let w = WeilRep::build(&df, 4096).unwrap().dual();
        let base = dim_cusp_rep(&w, k, RepKind::Dual).unwrap().dim;
        let n = w.dimension();
        // shuffle i ↦ 5i + 3 (mod n), a permutation when gcd(5, n) = 1
        let step = if n.is_multiple_of(5) { 7 } else { 5 };
        let order: Vec<usize> = (0..n).map(|i| (step * i + 3) % n).collect();
        assert_eq!(
            dim_cusp_rep(&w.permuted(&order), k, RepKind::Dual)
                .unwrap()
                .dim,
            base
        );
        let reversed: Vec<usize> = (0..n).rev().collect();
        assert_eq!(
            dim_cusp_rep(&w.permuted(&reversed), k, RepKind::Dual)
                .unwrap()
                .dim,
            base
        );
    }
}

#[test]
fn cusp_dim_monotonicity_is_logged() {
    // sanity only: violations are reported, not fatal
    let mut violations = Vec::new();
    for g in 2..=6 {
        let df = catalog(CatalogName::Lambda(g))
            .unwrap()
            .discriminant_form()
            .unwrap();
        let w = WeilRep::build(&df, 4096).unwrap().dual();
        let mut prev = 0;
        for twice in (21..=45).step_by(4) {
            let d = dim_cusp_rep(&w, Weight::from_twice(twice), RepKind::Dual)
                .unwrap()
                .dim;
            if d < prev {
                violations.push((g, twice, prev, d));
            }
            prev = d;
        }
    }
    if !violations.is_empty() {
        eprintln!("non-monotone cusp dimensions (g, 2k, previous, current): {violations:?}");
    }
}

#[test]
fn nl_label_invariants() {
    for g in 2..=12i64 {
        for h in -20..=20 {
            for d in -30..=30 {
                let Ok(l) = nl_label(g, h, d) else { continue };
                assert!((l.n * Rational64::from(4 * g - 4)).is_integer());
                assert_eq!(l.n, projection_oracle(g, h, d));
                if let Ok(shifted) = nl_label(g, h, d + 2 * g - 2) {
                    assert_eq!(shifted.gamma, l.gamma);
                }
            }
        }
    }
}

#[test]
fn alpha_beta_ranges() {
    for g in 2..=2000 {
        assert!((-1..=1).contains(&alpha(g).unwrap()));
        assert!((-2..=2).contains(&beta(g).unwrap()));
    }
}

proptest! {
    #[test]
    fn jacobi_is_multiplicative(a in -200i64..=200, b in -200i64..=200, m in 0i64..250) {
        let n = 2 * m + 1;
        prop_assert_eq!(jacobi(a, n).unwrap() * jacobi(b, n).unwrap(), jacobi(a * b, n).unwrap());
    }

    #[test]
    fn frac_sum_and_square_count_bounds(g in 2i64..3000) {
        let s = frac_square_sum(g).unwrap();
        prop_assert_eq!((4 * g - 4) % s.denom(), 0);
        prop_assert!(square_count(g).unwrap() <= g as u64);
    }

    #[test]
    fn random_lattice_cardinality_and_polarization(lat in even_lattice()) {
        let df = lat.discriminant_form().unwrap();
        prop_assert_eq!(BigInt::from(df.cardinality()), lat.determinant().abs());
        let elems: Vec<_> = df.elements().collect();
        for a in elems.iter().take(12) {
            for c in elems.iter().take(12) {
                let s: Vec<u64> = a.iter().zip(c).zip(df.orders()).map(|((x, y), d)| (x + y) % d).collect();
                let lhs = df.q(&s) - df.q(a) - df.q(c) - df.b(a, c) * 2;
                prop_assert!(lhs.is_integer() && lhs.to_integer() % 2 == 0);
            }
        }
        let gs = gauss_sum(&df).unwrap();
        prop_assert!((gs - milgram_prediction(&df)).norm() < 1e-9);
    }

    #[test]
    fn random_weil_reps_satisfy_relations(lat in even_lattice_up_to(48)) {
        let w = WeilRep::build(&lat.discriminant_form().unwrap(), 4096).unwrap();
        let r = w.verify_relations(1e-9);
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn signature_is_a_congruence_invariant(
        (lat, p) in even_lattice().prop_flat_map(|l| { let n = l.rank(); (Just(l), unimodular(n)) })
    ) {
        let moved = lat.transformed(&p).unwrap();
        prop_assert_eq!(moved.signature(), lat.signature());
        prop_assert_eq!(moved.determinant(), lat.determinant());
        let (a, b) = (lat.discriminant_form().unwrap(), moved.discriminant_form().unwrap());
        prop_assert_eq!(a.invariant_factors(), b.invariant_factors());
        prop_assert_eq!(a.value_distribution(), b.value_distribution());
    }

    #[test]
    fn discriminant_of_direct_sum(a in even_lattice(), b in even_lattice()) {
        let (da, db) = (a.discriminant_form().unwrap(), b.discriminant_form().unwrap());
        let direct = a.direct_sum(&b).discriminant_form().unwrap();
        let sum = da.orthogonal_sum(&db).unwrap();
        prop_assert_eq!(direct.invariant_factors(), sum.invariant_factors());
        prop_assert_eq!(direct.level(), sum.level());
        prop_assert_eq!(direct.value_distribution(), sum.value_distribution());
    }
}

#[test]
fn value_distribution_of_lambda() {
    // w/(2g−2) generates; q(j·γ0) = −j²/(2g−2) mod 2
    let g = 5i64;
    let df = catalog(CatalogName::Lambda(g))
        .unwrap()
        .discriminant_form()
        .unwrap();
    let mut expected: BTreeMap<Rational64, usize> = BTreeMap::new();
    for j in 0..(2 * g - 2) {
        let mut v = Rational64::new(-j * j, 2 * g - 2);
        while v < Rational64::from(0) {
            v += Rational64::from(2);
        }
        *expected.entry(v).or_insert(0) += 1;
    }
    assert_eq!(df.value_distribution(), expected);
}
