//! Reference data: all holographic extreme rays and facets for `n <= 5`,
//! the SA/SSA facet instances for `n <= 5`, the standard inequality
//! generators, and routines that re-derive every stored symmetrization.
//!
//! Party letters `A..E` denote parties `1..5`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::cones::{shec_facets, shec_rays, sqec_facets, sqec_rays, SimplicialCone};
use crate::error::{Error, Result};
use crate::graph::{star_graph, Backend};
use crate::matrix::{dot, RMatrix};
use crate::notation::{parse_inequality_expr, parse_ray_notation};
use crate::rational::{primitive_form, Rational};
use crate::subsystem::Subsystem;
use crate::symmetrize::{symmetrize_inequality, symmetrize_vector};
use crate::vectors::{EntropyVector, Inequality};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StarWeight {
    /// Every positive weight realizes the ray.
    Any,
    Weight(u32),
}

#[derive(Clone, Debug)]
pub struct FixtureRay {
    pub parties: usize,
    pub number: usize,
    pub vector: EntropyVector,
    pub expected_sym: Vec<BigInt>,
    pub extremal: bool,
    pub star_weight: Option<StarWeight>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Table {
    /// Holographic extreme rays.
    HecRays,
    /// Holographic facets.
    HecFacets,
    /// SA and SSA facet instances (quantum outer cone).
    SaSsaFacets,
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Table::HecRays => "hec-rays",
            Table::HecFacets => "hec-facets",
            Table::SaSsaFacets => "sa-ssa-facets",
        })
    }
}

#[derive(Clone, Debug)]
pub struct FixtureFacet {
    pub table: Table,
    pub parties: usize,
    pub number: usize,
    pub inequality: Inequality,
    pub expected_sym: Vec<BigInt>,
    pub is_facet: bool,
}

type RayRow = (&'static str, &'static [i64], Option<StarWeight>);
type FacetRow = (&'static str, &'static [i64], bool);

use StarWeight::{Any, Weight as W};

const HEC_RAYS_2: &[RayRow] = &[("(11; 0)", &[1], Some(Any))];
const HEC_RAYS_3: &[RayRow] = &[
    ("(110; 011; 0)", &[3, 4], Some(W(3))),
    ("(111; 222; 1)", &[1, 2], Some(W(1))),
];
const HEC_RAYS_4: &[RayRow] = &[
    ("(1100; 011110; 0011; 0)", &[2, 3], Some(W(4))),
    ("(1110; 221211; 1222; 1)", &[1, 2], Some(W(2))),
    ("(1111; 222222; 3333; 2)", &[1, 2], Some(W(2))),
];
const HEC_RAYS_5: &[RayRow] = &[
    (
        "(11000; 0111111000; 0001111110; 00011; 0)",
        &[5, 8, 9],
        Some(W(5)),
    ),
    (
        "(11100; 2211211110; 1222212211; 11222; 1)",
        &[5, 10, 12],
        None,
    ),
    (
        "(11110; 2221221211; 3323223222; 23333; 2)",
        &[5, 10, 12],
        None,
    ),
    (
        "(11111; 2222222222; 2233333323; 22222; 1)",
        &[10, 20, 27],
        None,
    ),
    (
        "(11111; 2222222222; 3332233323; 22222; 1)",
        &[10, 20, 27],
        None,
    ),
    (
        "(11112; 2223223233; 3343443444; 43333; 2)",
        &[10, 20, 27],
        None,
    ),
    (
        "(11111; 2222222222; 2222333333; 22222; 1)",
        &[5, 10, 13],
        None,
    ),
    (
        "(11111; 2222222222; 2233223333; 22222; 1)",
        &[5, 10, 13],
        None,
    ),
    (
        "(33333; 6666666666; 5777799999; 66666; 3)",
        &[5, 10, 13],
        None,
    ),
    (
        "(33333; 6666666666; 5777979999; 66666; 3)",
        &[5, 10, 13],
        None,
    ),
    (
        "(33333; 6666666666; 5777999799; 66666; 3)",
        &[5, 10, 13],
        None,
    ),
    (
        "(11111; 2222222222; 1333333333; 22222; 1)",
        &[5, 10, 14],
        None,
    ),
    (
        "(11111; 2222222222; 3333333333; 22222; 1)",
        &[1, 2, 3],
        Some(W(1)),
    ),
    (
        "(11111; 2222222222; 3333333333; 44444; 3)",
        &[4, 8, 9],
        Some(W(3)),
    ),
    (
        "(11112; 2223223233; 3323443444; 43333; 2)",
        &[20, 40, 51],
        None,
    ),
    (
        "(11122; 2233233334; 3444454455; 55444; 3)",
        &[25, 50, 63],
        None,
    ),
    (
        "(11222; 2333333444; 4445355534; 44433; 2)",
        &[25, 50, 63],
        None,
    ),
    (
        "(22223; 4445445455; 4656576777; 65555; 3)",
        &[7, 14, 18],
        None,
    ),
    (
        "(22223; 4445445455; 4656756777; 65555; 3)",
        &[7, 14, 18],
        None,
    ),
];

const SA: &str = "S_A + S_B - S_AB";
const MMI: &str = "S_AB + S_AC + S_BC - S_A - S_B - S_C - S_ABC";

const HEC_FACETS_2: &[FacetRow] = &[(SA, &[1], true)];
const HEC_FACETS_3: &[FacetRow] = &[(SA, &[2, -1], true), (MMI, &[-4, 3], true)];
const HEC_FACETS_4: &[FacetRow] = &[(SA, &[2, -1], true), (MMI, &[-3, 2], true)];
const HEC_FACETS_5: &[FacetRow] = &[
    (SA, &[2, -1, 0], true),
    (MMI, &[-3, 3, -1], true),
    (
        "S_AB + S_ACD + S_BCD - S_A - S_B - S_CD - S_ABCD",
        &[-2, -1, 2],
        false,
    ),
    (
        "S_AD + S_BC + S_ABE + S_ACE + S_ADE + S_BDE + S_CDE - S_A - S_B - S_C - S_D - S_AE \
         - S_DE - S_BCE - S_ABDE - S_ACDE",
        &[-2, -1, 2],
        false,
    ),
    (
        "S_ABC + S_BCD + S_CDE + S_ADE + S_ABE - S_AB - S_BC - S_CD - S_DE - S_AE - S_ABCDE",
        &[-1, -5, 5],
        false,
    ),
    (
        "2 S_ABC + S_ABD + S_ABE + S_ACD + S_ADE + S_BCE + S_BDE - S_AB - S_AC - S_AD - S_BC \
         - S_BE - S_DE - S_ABCD - S_ABCE - S_ABDE",
        &[0, -9, 8],
        true,
    ),
    (
        "S_ABC + S_ABD + S_ABE + S_ACD + S_ACE + S_ADE + S_BCE + S_BDE + S_CDE - S_AB - S_AC \
         - S_AD - S_BE - S_CE - S_DE - S_BCD - S_ABCE - S_ABDE - S_ACDE",
        &[0, -9, 8],
        true,
    ),
    (
        "3 S_ABC + 3 S_ABD + 3 S_ACE + S_ABE + S_ACD + S_ADE + S_BCD + S_BCE + S_BDE + S_CDE \
         - S_AD - S_AE - S_BC - S_DE - S_ABDE - S_ACDE - 2 S_AB - 2 S_AC - 2 S_BD - 2 S_CE \
         - 2 S_ABCD - 2 S_ABCE",
        &[0, -9, 8],
        true,
    ),
];

// Row 3 at n = 3 is printed with `+ S_C`; as printed it would symmetrize to
// `S~_2 >= 0`, not the listed `-S~_1 + S~_2 >= 0`. The SSA instance
// `S_AC + S_BC >= S_C + S_ABC` reproduces the listed value and matches the
// n = 4 row 5 form.
const SASSA_2: &[FacetRow] = &[(SA, &[1], true)];
const SASSA_3: &[FacetRow] = &[
    (SA, &[2, -1], true),
    ("S_A - S_B + S_AB", &[0, 1], false),
    ("S_AC + S_BC - S_C - S_ABC", &[-1, 1], true),
];
const SASSA_4: &[FacetRow] = &[
    (SA, &[2, -1], true),
    ("S_A - S_B + S_AB", &[0, 1], false),
    ("S_A + S_BC - S_ABC", &[1, 0], false),
    ("-S_A + S_BC + S_ABC", &[-1, 2], false),
    ("S_AC + S_BC - S_C - S_ABC", &[-1, 1], true),
];
const SASSA_5: &[FacetRow] = &[
    (SA, &[2, -1, 0], true),
    ("S_A - S_B + S_AB", &[0, 1, 0], false),
    ("S_A + S_BC - S_ABC", &[1, 1, -1], false),
    ("S_A - S_BC + S_ABC", &[1, -1, 1], false),
    ("-S_A + S_BC + S_ABC", &[-1, 1, 1], false),
    ("-S_C + S_BC + S_AC - S_ABC", &[-1, 2, -1], true),
    ("-S_A - S_B + S_AC + S_BC", &[-1, 1, 0], false),
    ("-S_D + S_CD + S_ABD - S_ABCD", &[-1, 0, 1], false),
    ("-S_CD + S_BCD + S_ACD - S_ABCD", &[0, -1, 1], true),
];

const HEC6_SAMPLE: &str = "-S_AB - S_AC - S_AD - S_BE - S_BF - S_CE + S_ABC + S_ABD + S_ABE \
     + S_ABF + S_ACD + S_ACE + S_BCE + S_BEF - S_ABCD - S_ABCE - S_ABEF";

fn check_fixture_n(n: usize) -> Result<()> {
    if (2..=5).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "reference tables cover n = 2..5, got {n}"
        )))
    }
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn hec_rays(n: usize) -> Result<Vec<FixtureRay>> {
    check_fixture_n(n)?;
    let rows = match n {
        2 => HEC_RAYS_2,
        3 => HEC_RAYS_3,
        4 => HEC_RAYS_4,
        _ => HEC_RAYS_5,
    };
    rows.iter()
        .enumerate()
        .map(|(i, (text, sym, w))| {
            Ok(FixtureRay {
                parties: n,
                number: i + 1,
                vector: parse_ray_notation(n, text)?,
                expected_sym: big(sym),
                extremal: w.is_some(),
                star_weight: *w,
            })
        })
        .collect()
}

fn facet_rows(table: Table, n: usize, rows: &[FacetRow]) -> Result<Vec<FixtureFacet>> {
    rows.iter()
        .enumerate()
        .map(|(i, (text, sym, is_facet))| {
            Ok(FixtureFacet {
                table,
                parties: n,
                number: i + 1,
                inequality: parse_inequality_expr(n, text)?,
                expected_sym: big(sym),
                is_facet: *is_facet,
            })
        })
        .collect()
}

pub fn hec_facets(n: usize) -> Result<Vec<FixtureFacet>> {
    check_fixture_n(n)?;
    let rows = match n {
        2 => HEC_FACETS_2,
        3 => HEC_FACETS_3,
        4 => HEC_FACETS_4,
        _ => HEC_FACETS_5,
    };
    facet_rows(Table::HecFacets, n, rows)
}

pub fn sa_ssa_facets(n: usize) -> Result<Vec<FixtureFacet>> {
    check_fixture_n(n)?;
    let rows = match n {
        2 => SASSA_2,
        3 => SASSA_3,
        4 => SASSA_4,
        _ => SASSA_5,
    };
    facet_rows(Table::SaSsaFacets, n, rows)
}

/// The six-party holographic inequality that is not a lift of any
/// inequality on fewer parties.
pub fn hec6_sample() -> Inequality {
    parse_inequality_expr(6, HEC6_SAMPLE).expect("embedded expression parses")
}

fn check_same_ambient(subs: &[&Subsystem]) -> Result<usize> {
    let n = subs[0].parties();
    for s in subs {
        if s.parties() != n {
            return Err(Error::AmbientMismatch {
                expected: n,
                found: s.parties(),
            });
        }
    }
    Ok(n)
}

fn one() -> Rational {
    Rational::from_integer(1.into())
}

/// `S_I + S_J - S_IJ >= 0` for disjoint `I`, `J`.
pub fn sa_instance(i: &Subsystem, j: &Subsystem) -> Result<Inequality> {
    let n = check_same_ambient(&[i, j])?;
    if !i.is_disjoint(j) {
        return Err(Error::InvalidSubsystem(format!(
            "SA needs disjoint {i} and {j}"
        )));
    }
    Inequality::from_terms(n, &[(*i, one()), (*j, one()), (i.union(j), -one())])
}

/// `S_I + S_J - S_{I n J} - S_{I u J} >= 0` for overlapping `I`, `J`,
/// neither containing the other.
pub fn ssa_instance(i: &Subsystem, j: &Subsystem) -> Result<Inequality> {
    let n = check_same_ambient(&[i, j])?;
    let meet = i
        .intersection(j)
        .ok_or_else(|| Error::InvalidSubsystem(format!("SSA needs overlapping {i} and {j}")))?;
    if i.is_subset(j) || j.is_subset(i) {
        return Err(Error::InvalidSubsystem(format!(
            "SSA needs neither of {i}, {j} to contain the other"
        )));
    }
    Inequality::from_terms(
        n,
        &[
            (*i, one()),
            (*j, one()),
            (meet, -one()),
            (i.union(j), -one()),
        ],
    )
}

/// `S_IJ + S_IK + S_JK - S_I - S_J - S_K - S_IJK >= 0` for pairwise
/// disjoint `I`, `J`, `K`.
pub fn mmi_instance(i: &Subsystem, j: &Subsystem, k: &Subsystem) -> Result<Inequality> {
    let n = check_same_ambient(&[i, j, k])?;
    if !i.is_disjoint(j) || !i.is_disjoint(k) || !j.is_disjoint(k) {
        return Err(Error::InvalidSubsystem(format!(
            "MMI needs pairwise disjoint {i}, {j}, {k}"
        )));
    }
    Inequality::from_terms(
        n,
        &[
            (i.union(j), one()),
            (i.union(k), one()),
            (j.union(k), one()),
            (*i, -one()),
            (*j, -one()),
            (*k, -one()),
            (i.union(j).union(k), -one()),
        ],
    )
}

/// One verified table row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub table: Table,
    pub parties: usize,
    pub number: usize,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} #{:<2} {}  {}",
            self.table,
            self.parties,
            self.number,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub rows: Vec<CheckRow>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRow> {
        self.rows.iter().filter(|r| !r.passed)
    }
}

fn fmt_ints(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(" "))
}

fn fmt_rats(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(" "))
}

fn support(coeffs: &[Rational]) -> usize {
    coeffs.iter().filter(|c| !c.is_zero()).count()
}

fn matrix_row_primitives(m: &RMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| primitive_form(m.row(i))).collect()
}

/// Star-graph symmetrization, as a primitive vector.
fn star_sym(n: usize, w: u32, backend: Backend) -> Result<Vec<BigInt>> {
    let g = star_graph(n, &Rational::from_integer(w.into()))?;
    Ok(symmetrize_vector(&g.entropy_vector(backend)?)?.primitive())
}

fn check_ray(ray: &FixtureRay, cone: &SimplicialCone, backend: Backend) -> Result<CheckRow> {
    let n = ray.parties;
    let mut notes = Vec::new();
    let mut passed = true;
    let sym = symmetrize_vector(&ray.vector)?;
    let prim = sym.primitive();
    if prim != ray.expected_sym {
        passed = false;
        notes.push(format!(
            "symmetrizes to {} but table lists {}",
            fmt_ints(&prim),
            fmt_ints(&ray.expected_sym)
        ));
    } else {
        notes.push(format!("sym {}", fmt_ints(&prim)));
    }
    let target = crate::vectors::SymVector::new(
        n,
        ray.expected_sym
            .iter()
            .cloned()
            .map(Rational::from_integer)
            .collect(),
    )?;
    let membership = cone.membership(&target)?;
    let coeffs = membership.coefficients().to_vec();
    if !membership.is_member() {
        passed = false;
        notes.push("outside the SHEC".into());
    }
    notes.push(format!("coefficients {}", fmt_rats(&coeffs)));
    if ray.extremal {
        if support(&coeffs) != 1 {
            passed = false;
            notes.push("marked extremal but not a single cone ray".into());
        }
        let weights: Vec<u32> = match ray.star_weight {
            Some(StarWeight::Weight(w)) => vec![w],
            _ => (1..=n as u32).collect(),
        };
        for w in weights {
            let s = star_sym(n, w, backend)?;
            if s != ray.expected_sym {
                passed = false;
                notes.push(format!("star graph w={w} gives {}", fmt_ints(&s)));
            }
        }
        if passed {
            notes.push("star-graph realization confirmed".into());
        }
    } else if support(&coeffs) < 2 {
        passed = false;
        notes.push("unmarked row is a single cone ray".into());
    }
    Ok(CheckRow {
        table: Table::HecRays,
        parties: n,
        number: ray.number,
        passed,
        detail: notes.join("; "),
    })
}

fn check_facet(
    facet: &FixtureFacet,
    rays: &RMatrix,
    facets: &RMatrix,
    fixture_rays: &[FixtureRay],
) -> Result<CheckRow> {
    let mut notes = Vec::new();
    let mut passed = true;
    let prim = symmetrize_inequality(&facet.inequality)?.primitive();
    if prim != facet.expected_sym {
        passed = false;
        notes.push(format!(
            "symmetrizes to {} but table lists {}",
            fmt_ints(&prim),
            fmt_ints(&facet.expected_sym)
        ));
    } else {
        notes.push(format!("sym {}", fmt_ints(&prim)));
    }
    let rows = matrix_row_primitives(facets);
    let matched = rows.iter().position(|r| *r == prim);
    if facet.is_facet {
        match matched {
            Some(i) => notes.push(format!("matches cone facet {}", i + 1)),
            None => {
                passed = false;
                notes.push("marked facet but matches no cone facet".into());
            }
        }
    } else {
        let q: Vec<Rational> = prim.iter().cloned().map(Rational::from_integer).collect();
        let implied = rays.column_vecs().iter().all(|r| !dot(&q, r).is_negative());
        if !implied {
            passed = false;
            notes.push("not implied by the cone".into());
        }
        if matched.is_some() {
            passed = false;
            notes.push("unmarked row coincides with a cone facet".into());
        }
        if passed {
            notes.push("implied, not a facet".into());
        }
    }
    for ray in fixture_rays {
        if facet.inequality.evaluate(&ray.vector)?.is_negative() {
            passed = false;
            notes.push(format!("violated by ray #{}", ray.number));
        }
    }
    Ok(CheckRow {
        table: facet.table,
        parties: facet.parties,
        number: facet.number,
        passed,
        detail: notes.join("; "),
    })
}

/// Re-derives every stored symmetrization and classification for `n`.
pub fn verify_appendix(n: usize) -> Result<VerifyReport> {
    verify_appendix_with(n, Backend::Flow)
}

/// As [`verify_appendix`], computing star-graph entropies with `backend`.
pub fn verify_appendix_with(n: usize, backend: Backend) -> Result<VerifyReport> {
    check_fixture_n(n)?;
    let mut report = VerifyReport::default();
    let shec = SimplicialCone::shec(n)?;
    let rays = hec_rays(n)?;
    for ray in &rays {
        report.rows.push(check_ray(ray, &shec, backend)?);
    }
    let (s_rays, s_facets) = (shec_rays(n)?, shec_facets(n)?);
    for f in hec_facets(n)? {
        report
            .rows
            .push(check_facet(&f, &s_rays, &s_facets, &rays)?);
    }
    let (q_rays, q_facets) = (sqec_rays(n)?, sqec_facets(n)?);
    for f in sa_ssa_facets(n)? {
        report
            .rows
            .push(check_facet(&f, &q_rays, &q_facets, &rays)?);
    }
    Ok(report)
}

pub fn verify_all() -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for n in 2..=5 {
        report.rows.extend(verify_appendix(n)?.rows);
    }
    Ok(report)
}
