//! Exact volumes of simplicial cones cut by the hyperplane
//! `sum_k S~_k = 1`: `vol = |det R| / (d! * prod_l |r_l|_1)`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cones::{shec_rays, sqec_rays};
use crate::error::{Error, Result};
use crate::matrix::RMatrix;
use crate::rational::{factorial, format_significant, Rational};
use crate::subsystem::sym_dimension;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeReport {
    pub dimension: usize,
    pub volume: Rational,
    /// `1 / volume` when it is an integer.
    pub inverse_volume: Option<BigInt>,
    /// Product of the taxicab norms of the ray columns.
    pub norm_product: Rational,
    pub determinant: Rational,
}

pub fn cone_volume(rays: &RMatrix) -> Result<VolumeReport> {
    if !rays.is_square() {
        return Err(Error::NotSquare {
            rows: rays.rows(),
            cols: rays.cols(),
        });
    }
    let d = rays.rows();
    let mut norm_product = Rational::one();
    for (j, col) in rays.column_vecs().into_iter().enumerate() {
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
        norm_product *= sum;
    }
    let determinant = rays.determinant()?;
    let volume = determinant.abs() / (Rational::from_integer(factorial(d as u64)) * &norm_product);
    Ok(VolumeReport {
        dimension: d,
        inverse_volume: integral_inverse(&volume),
        volume,
        norm_product,
        determinant,
    })
}

fn integral_inverse(v: &Rational) -> Option<BigInt> {
    if v.is_zero() {
        return None;
    }
    let inv = v.recip();
    inv.is_integer().then(|| inv.to_integer())
}

fn check_n(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "volumes need n >= 2, got {n}"
        )));
    }
    Ok(sym_dimension(n))
}

/// `prod_l |min(., l)|_1 = (2d)! / 2^d`.
pub fn sqec_norm_product_closed(n: usize) -> Result<Rational> {
    let d = check_n(n)?;
    Ok(Rational::new(
        factorial(2 * d as u64),
        BigInt::from(2).pow(d as u32),
    ))
}

/// `vol(SQEC_n) = 2^d / (d! (2d)!)`.
pub fn sqec_volume_closed(n: usize) -> Result<Rational> {
    let d = check_n(n)?;
    Ok(Rational::new(
        BigInt::from(2).pow(d as u32),
        factorial(d as u64) * factorial(2 * d as u64),
    ))
}

/// `ceil((n+1)/2)!`, times `(n+1)/2` for odd `n`.
pub fn shec_determinant_closed(n: usize) -> Result<Rational> {
    check_n(n)?;
    let base = factorial(((n + 2) / 2) as u64);
    let det = if n % 2 == 1 {
        base * BigInt::from(n.div_ceil(2))
    } else {
        base
    };
    Ok(Rational::from_integer(det))
}

/// The cubic `p(x) = x^3 - x - d (d + 1) (3n - 2(d - 1))` whose roots `x_k`
/// give the SHEC norm product `(-1/6)^d prod_k (1 - x_k)_d`.
pub fn shec_cubic_constant(n: usize) -> Result<BigInt> {
    let d = check_n(n)? as i64;
    Ok(BigInt::from(d) * (d + 1) * (3 * n as i64 - 2 * (d - 1)))
}

/// SHEC norm product without root extraction: for a monic cubic with roots
/// `x_k`, `prod_k (1 - x_k)_d = prod_{j=0}^{d-1} p(1 + j)`.
pub fn shec_norm_product_closed(n: usize) -> Result<Rational> {
    let d = check_n(n)?;
    let c = shec_cubic_constant(n)?;
    let p = |x: BigInt| -> BigInt { &x * &x * &x - &x - &c };
    let prod = (0..d).fold(BigInt::one(), |acc, j| acc * p(BigInt::from(j + 1)));
    let scale = Rational::new(BigInt::from(-1), BigInt::from(6)).pow(d as i32);
    Ok(scale * Rational::from_integer(prod))
}

pub fn shec_volume_closed(n: usize) -> Result<Rational> {
    let d = check_n(n)?;
    Ok(shec_determinant_closed(n)?
        / (Rational::from_integer(factorial(d as u64)) * shec_norm_product_closed(n)?))
}

pub fn shec_volume(n: usize) -> Result<VolumeReport> {
    cone_volume(&shec_rays(n)?)
}

pub fn sqec_volume(n: usize) -> Result<VolumeReport> {
    cone_volume(&sqec_rays(n)?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioRow {
    pub n: usize,
    pub inv_shec: Rational,
    pub inv_sqec: Rational,
    /// `vol(SHEC_n) / vol(SQEC_n)`.
    pub ratio: Rational,
    pub ratio_3sf: String,
}

pub fn ratio_row(n: usize) -> Result<RatioRow> {
    let shec = shec_volume(n)?.volume;
    let sqec = sqec_volume(n)?.volume;
    let ratio = &shec / &sqec;
    Ok(RatioRow {
        n,
        inv_shec: shec.recip(),
        inv_sqec: sqec.recip(),
        ratio_3sf: format_significant(&ratio, 3),
        ratio,
    })
}

pub fn ratio_table(n_max: usize) -> Result<Vec<RatioRow>> {
    check_n(n_max)?;
    (2..=n_max).map(ratio_row).collect()
}
