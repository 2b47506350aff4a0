use entrocone::cones::{facets_from_rays, shec_facets, shec_rays, sqec_facets};
use entrocone::fixtures::{hec6_sample, hec_facets, mmi_instance, sa_instance, verify_appendix};
use entrocone::graph::star_graph;
use entrocone::matrix::{dot, RMatrix};
use entrocone::rational::{int, primitive_form};
use entrocone::subsystem::sym_dimension;
use entrocone::symmetrize::{lift_inequality, symmetrize_inequality, symmetrize_vector};
use entrocone::{Backend, ConeKind, Membership, Rational, SimplicialCone, Subsystem, SymVector};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn row_prims(m: &RMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| primitive_form(m.row(i))).collect()
}

#[test]
fn ray_facet_duality() {
    for n in 2..=16 {
        for kind in [ConeKind::Shec, ConeKind::Sqec] {
            let c = SimplicialCone::build(kind, n).unwrap();
            let d = c.dimension();
            assert_eq!(d, sym_dimension(n));
            let prod = c.facets().mul(c.rays()).unwrap();
            for i in 0..d {
                for j in 0..d {
                    let v = prod.get(i, j);
                    if i == j {
                        assert!(v.is_positive(), "{kind} n={n} facet {i} on its ray");
                    } else {
                        assert!(v.is_zero(), "{kind} n={n} facet {i} on ray {j}");
                    }
                }
            }
            assert_eq!(
                row_prims(c.facets()),
                row_prims(&facets_from_rays(c.rays()).unwrap())
            );
        }
    }
}

#[test]
fn shec_sits_inside_sqec() {
    for n in 2..=16 {
        let prod = sqec_facets(n).unwrap().mul(&shec_rays(n).unwrap()).unwrap();
        assert!(prod.entries().iter().all(|x| !x.is_negative()), "n={n}");
    }
}

#[test]
fn small_cases() {
    assert_eq!(
        shec_rays(2).unwrap(),
        RMatrix::from_i64_rows(&[&[2]]).unwrap()
    );
    assert_eq!(
        shec_facets(2).unwrap(),
        RMatrix::from_i64_rows(&[&[1]]).unwrap()
    );
    assert_eq!(
        shec_facets(3).unwrap(),
        RMatrix::from_i64_rows(&[&[2, -1], &[-4, 3]]).unwrap()
    );
    assert_eq!(
        shec_facets(4).unwrap(),
        RMatrix::from_i64_rows(&[&[2, -1], &[-3, 2]]).unwrap()
    );
    assert_eq!(
        sqec_facets(2).unwrap(),
        RMatrix::from_i64_rows(&[&[1]]).unwrap()
    );
    for n in [0, 1] {
        assert!(shec_rays(n).is_err());
        assert!(sqec_facets(n).is_err());
    }
}

#[test]
fn star_graphs_realize_shec_rays() {
    for n in 2..=8 {
        let rays = shec_rays(n).unwrap();
        for l in 1..=sym_dimension(n) {
            let w = int(n as i64 - 2 * (l as i64 - 1));
            let s = star_graph(n, &w)
                .unwrap()
                .entropy_vector(Backend::Flow)
                .unwrap();
            let sym = symmetrize_vector(&s).unwrap();
            assert_eq!(
                sym.primitive(),
                primitive_form(&rays.column(l - 1)),
                "n={n} l={l}"
            );
        }
    }
}

#[test]
fn generator_symmetrizations_match_facets() {
    for n in 2..=10 {
        let a = Subsystem::new(n, &[1]).unwrap();
        let b = Subsystem::new(n, &[2]).unwrap();
        let sa = symmetrize_inequality(&sa_instance(&a, &b).unwrap())
            .unwrap()
            .primitive();
        assert_eq!(sa, row_prims(&shec_facets(n).unwrap())[0], "n={n}");
        assert_eq!(sa, row_prims(&sqec_facets(n).unwrap())[0], "n={n}");
        if n >= 3 {
            let c = Subsystem::new(n, &[3]).unwrap();
            let mmi = symmetrize_inequality(&mmi_instance(&a, &b, &c).unwrap())
                .unwrap()
                .primitive();
            let expected = match n {
                3 => big(&[-4, 3]),
                4 => big(&[-3, 2]),
                _ => {
                    let mut v = big(&[-3, 3, -1]);
                    v.resize(sym_dimension(n), BigInt::zero());
                    v
                }
            };
            assert_eq!(mmi, expected, "n={n}");
            if n >= 5 {
                assert_eq!(mmi, row_prims(&shec_facets(n).unwrap())[1], "n={n}");
            }
        }
    }
}

#[test]
fn lifted_five_party_facets_give_row_three() {
    let facets = hec_facets(5).unwrap();
    for n in 5..=10 {
        let rows = row_prims(&shec_facets(n).unwrap());
        for f in &facets[5..8] {
            let lifted = lift_inequality(&f.inequality, n).unwrap();
            let sym = symmetrize_inequality(&lifted).unwrap().primitive();
            assert_eq!(sym, rows[2], "n={n} facet #{}", f.number);
            if n >= 7 {
                let mut expect = big(&[0, -6, 8, -3]);
                expect.resize(sym_dimension(n), BigInt::zero());
                assert_eq!(sym, expect);
            }
        }
    }
    for n in 7..=10 {
        let sym = symmetrize_inequality(&lift_inequality(&hec6_sample(), n).unwrap()).unwrap();
        let mut expect = big(&[0, -6, 8, -3]);
        expect.resize(sym_dimension(n), BigInt::zero());
        assert_eq!(sym.primitive(), expect, "n={n}");
    }
}

#[test]
fn reference_tables_verify() {
    for n in 2..=5 {
        let report = verify_appendix(n).unwrap();
        for row in &report.rows {
            assert!(row.passed, "{row}");
        }
    }
    assert!(verify_appendix(6).is_err());
}

fn arb_coefficients() -> impl Strategy<Value = (usize, Vec<i64>)> {
    (2usize..=12).prop_flat_map(|n| (Just(n), prop::collection::vec(-3i64..=6, sym_dimension(n))))
}

proptest! {
    #[test]
    fn membership_recovers_coefficients((n, coeffs) in arb_coefficients()) {
        for cone in [SimplicialCone::shec(n).unwrap(), SimplicialCone::sqec(n).unwrap()] {
            let lambda: Vec<Rational> = coeffs.iter().map(|&c| int(c)).collect();
            let v = SymVector::new(n, cone.rays().mul_vec(&lambda).unwrap()).unwrap();
            let m = cone.membership(&v).unwrap();
            prop_assert_eq!(m.coefficients(), lambda.as_slice());
            let all_facets_ok = (0..cone.facets().rows())
                .all(|i| !dot(cone.facets().row(i), v.entries()).is_negative());
            prop_assert_eq!(m.is_member(), all_facets_ok);
            prop_assert_eq!(m.is_member(), coeffs.iter().all(|&c| c >= 0));
            if let Membership::Outside { value, .. } = m {
                prop_assert!(value.is_negative());
            }
        }
    }
}
