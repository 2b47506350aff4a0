//! The conjectured symmetrized holographic cone (SHEC) and the symmetrized
//! quantum cone (SQEC) as simplicial cones in `ceil(n/2)` dimensions.
//!
//! Both cones are built in closed form for every `n >= 2`. Rays are stored
//! as matrix columns and facets as matrix rows (`f . S~ >= 0`), with facet
//! `l` dual to ray `l`: it is positive on ray `l` and vanishes on the rest.
//!
//! The SHEC constructed here is the cone generated by star-graph rays. It
//! is realizable by construction (every ray comes from a graph) but whether
//! its facets are valid holographic inequalities is only established for
//! small `n`.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{dot, RMatrix};
use crate::rational::{int, primitive_rationals, Rational};
use crate::subsystem::sym_dimension;
use crate::vectors::{EntropyVector, Inequality, SymInequality, SymVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConeKind {
    Shec,
    Sqec,
}

impl fmt::Display for ConeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConeKind::Shec => "shec",
            ConeKind::Sqec => "sqec",
        })
    }
}

fn check_n(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "symmetrized cones need n >= 2, got {n}"
        )));
    }
    Ok(sym_dimension(n))
}

/// Star-graph rays: column `l` has entries `k (n + 1 - max(k, l))`.
///
/// This is `(n+1)/2` times the symmetrized entropy vector of the star graph
/// with purifier weight `w = n - 2(l - 1)`.
pub fn shec_rays(n: usize) -> Result<RMatrix> {
    let d = check_n(n)?;
    Ok(RMatrix::from_fn(d, d, |i, j| {
        let (k, l) = (i as i64 + 1, j as i64 + 1);
        int(k * (n as i64 + 1 - k.max(l)))
    }))
}

pub fn shec_facets(n: usize) -> Result<RMatrix> {
    let d = check_n(n)?;
    let fold = n / 2; // S~_{d+1} := S~_{floor(n/2)}
    let mut rows = Vec::with_capacity(d);
    let place = |row: &mut Vec<Rational>, k: usize, c: i64| {
        // k is 1-based; k = 0 is S~_0 := 0
        if k == 0 {
            return;
        }
        let k = if k == d + 1 { fold } else { k };
        row[k - 1] += int(c);
    };
    let mut first = vec![Rational::zero(); d];
    place(&mut first, 1, 2);
    place(&mut first, 2, -1);
    rows.push(primitive_rationals(&first));
    for l in 2..=d {
        let li = l as i64;
        let mut row = vec![Rational::zero(); d];
        place(&mut row, l - 1, -li * (li + 1));
        place(&mut row, l, 2 * (li - 1) * (li + 1));
        place(&mut row, l + 1, -(li - 1) * li);
        rows.push(primitive_rationals(&row));
    }
    RMatrix::from_rows(rows)
}

/// Column `l` has entries `min(k, l)`.
pub fn sqec_rays(n: usize) -> Result<RMatrix> {
    let d = check_n(n)?;
    Ok(RMatrix::from_fn(d, d, |i, j| int((i.min(j) + 1) as i64)))
}

/// `-S~_{l-1} + 2 S~_l - S~_{l+1} >= 0` with `S~_0 := 0` and
/// `S~_{d+1} := S~_d`.
pub fn sqec_facets(n: usize) -> Result<RMatrix> {
    let d = check_n(n)?;
    Ok(RMatrix::from_fn(d, d, |i, j| {
        if i == j {
            int(if i + 1 == d { 1 } else { 2 })
        } else if i.abs_diff(j) == 1 {
            int(-1)
        } else {
            Rational::zero()
        }
    }))
}

/// Facets of a simplicial cone: rows of the inverse ray matrix, each scaled
/// to a primitive integer vector that is nonnegative on every ray.
pub fn facets_from_rays(rays: &RMatrix) -> Result<RMatrix> {
    let inv = rays.invert()?;
    let mut rows = Vec::with_capacity(inv.rows());
    for i in 0..inv.rows() {
        let mut row = primitive_rationals(inv.row(i));
        // row i of the inverse evaluates to 1 on ray i
        if dot(&row, &rays.column(i)).is_negative() {
            row = row.into_iter().map(|v| -v).collect();
        }
        rows.push(row);
    }
    RMatrix::from_rows(rows)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialCone {
    parties: usize,
    kind: Option<ConeKind>,
    rays: RMatrix,
    facets: RMatrix,
}

/// Outcome of [`SimplicialCone::membership`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// `v = rays * coefficients` with all coefficients nonnegative.
    Inside { coefficients: Vec<Rational> },
    /// The first facet with a negative value on `v`.
    Outside {
        facet_index: usize,
        facet: Vec<Rational>,
        value: Rational,
        coefficients: Vec<Rational>,
    },
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Inside { .. })
    }

    pub fn coefficients(&self) -> &[Rational] {
        match self {
            Membership::Inside { coefficients } | Membership::Outside { coefficients, .. } => {
                coefficients
            }
        }
    }
}

impl SimplicialCone {
    pub fn shec(n: usize) -> Result<Self> {
        Ok(Self {
            parties: n,
            kind: Some(ConeKind::Shec),
            rays: shec_rays(n)?,
            facets: shec_facets(n)?,
        })
    }

    pub fn sqec(n: usize) -> Result<Self> {
        Ok(Self {
            parties: n,
            kind: Some(ConeKind::Sqec),
            rays: sqec_rays(n)?,
            facets: sqec_facets(n)?,
        })
    }

    pub fn build(kind: ConeKind, n: usize) -> Result<Self> {
        match kind {
            ConeKind::Shec => Self::shec(n),
            ConeKind::Sqec => Self::sqec(n),
        }
    }

    /// Cone spanned by the given ray columns; facets are derived by inversion.
    pub fn from_rays(parties: usize, rays: RMatrix) -> Result<Self> {
        let d = sym_dimension(parties);
        if rays.rows() != d || rays.cols() != d {
            return Err(Error::DimensionMismatch(format!(
                "{parties}-party cone needs a {d}x{d} ray matrix, got {}x{}",
                rays.rows(),
                rays.cols()
            )));
        }
        let facets = facets_from_rays(&rays)?;
        Ok(Self {
            parties,
            kind: None,
            rays,
            facets,
        })
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn kind(&self) -> Option<ConeKind> {
        self.kind
    }

    pub fn dimension(&self) -> usize {
        self.rays.rows()
    }

    pub fn rays(&self) -> &RMatrix {
        &self.rays
    }

    pub fn facets(&self) -> &RMatrix {
        &self.facets
    }

    pub fn membership(&self, v: &SymVector) -> Result<Membership> {
        if v.parties() != self.parties {
            return Err(Error::AmbientMismatch {
                expected: self.parties,
                found: v.parties(),
            });
        }
        let coefficients = self.rays.solve(v.entries())?;
        if coefficients.iter().all(|c| !c.is_negative()) {
            return Ok(Membership::Inside { coefficients });
        }
        for i in 0..self.facets.rows() {
            let value = dot(self.facets.row(i), v.entries());
            if value.is_negative() {
                return Ok(Membership::Outside {
                    facet_index: i,
                    facet: self.facets.row(i).to_vec(),
                    value,
                    coefficients,
                });
            }
        }
        unreachable!("a negative ray coefficient implies a violated dual facet")
    }

    /// Ray vertices on the hyperplane `sum_k S~_k = 1`.
    pub fn cross_section(&self) -> Result<Vec<Vec<Rational>>> {
        cross_section(&self.rays)
    }
}

/// Taxicab-normalizes each ray column.
pub fn cross_section(rays: &RMatrix) -> Result<Vec<Vec<Rational>>> {
    rays.column_vecs()
        .into_iter()
        .enumerate()
        .map(|(j, col)| {
            if col.iter().any(Signed::is_negative) {
                return Err(Error::InvalidArgument(format!(
                    "ray {} has a negative entry",
                    j + 1
                )));
            }
            let sum: Rational = col.iter().sum();
            if sum.is_zero() {
                return Err(Error::InvalidArgument(format!("ray {} is zero", j + 1)));
            }
            Ok(col.into_iter().map(|v| v / &sum).collect())
        })
        .collect()
}

/// `q . S`.
pub fn evaluate(q: &Inequality, s: &EntropyVector) -> Result<Rational> {
    q.evaluate(s)
}

/// `q~ . S~`.
pub fn evaluate_sym(q: &SymInequality, s: &SymVector) -> Result<Rational> {
    q.evaluate(s)
}
