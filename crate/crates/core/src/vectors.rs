//! Entropy vectors, symmetrized vectors, and the inequalities acting on them.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::dot;
use crate::rational::{primitive_form, Rational};
use crate::subsystem::{
    check_parties, coordinate_count, subsystem_order, sym_dimension, Subsystem,
};

/// Dense `2^n - 1` vectors are only materialized up to this party count.
pub const MAX_DENSE_PARTIES: usize = 20;

pub fn check_dense(n: usize) -> Result<()> {
    check_parties(n)?;
    if n > MAX_DENSE_PARTIES {
        return Err(Error::DenseCap {
            parties: n,
            limit: MAX_DENSE_PARTIES,
        });
    }
    Ok(())
}

fn check_len(what: &str, expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "{what} needs {expected} entries, got {got}"
        )))
    }
}

/// Entropies `S_I` for every canonical subsystem, in coordinate order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EntropyVector {
    parties: usize,
    entries: Vec<Rational>,
}

impl EntropyVector {
    pub fn new(parties: usize, entries: Vec<Rational>) -> Result<Self> {
        check_dense(parties)?;
        check_len("entropy vector", coordinate_count(parties), entries.len())?;
        Ok(Self { parties, entries })
    }

    pub fn zeros(parties: usize) -> Result<Self> {
        check_dense(parties)?;
        Ok(Self {
            parties,
            entries: vec![Rational::zero(); coordinate_count(parties)],
        })
    }

    pub fn from_i64(parties: usize, entries: &[i64]) -> Result<Self> {
        Self::new(
            parties,
            entries
                .iter()
                .map(|&v| Rational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    /// `S_J` for any raw `J` (canonicalized; the full set has entropy 0).
    pub fn get(&self, j: &Subsystem) -> Result<Rational> {
        if j.parties() != self.parties {
            return Err(Error::AmbientMismatch {
                expected: self.parties,
                found: j.parties(),
            });
        }
        if j.is_full() {
            return Ok(Rational::zero());
        }
        Ok(self.entries[j.canonical()?.index()?].clone())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.parties != other.parties {
            return Err(Error::AmbientMismatch {
                expected: self.parties,
                found: other.parties,
            });
        }
        Ok(Self {
            parties: self.parties,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            parties: self.parties,
            entries: self.entries.iter().map(|v| v * c).collect(),
        }
    }

    /// The symmetric variables this vector takes if it is already invariant
    /// under `Sym(n+1)`, i.e. if `S_I` depends only on
    /// `min(|I|, n + 1 - |I|)`; otherwise `None`.
    pub fn cardinality_profile(&self) -> Option<SymVector> {
        let n = self.parties;
        let d = sym_dimension(n);
        let mut slots: Vec<Option<Rational>> = vec![None; d];
        for (s, v) in subsystem_order(n).ok()?.iter().zip(&self.entries) {
            let k = s.len().min(n + 1 - s.len());
            match &slots[k - 1] {
                Some(existing) if existing != v => return None,
                Some(_) => {}
                None => slots[k - 1] = Some(v.clone()),
            }
        }
        let entries = slots.into_iter().collect::<Option<Vec<_>>>()?;
        SymVector::new(n, entries).ok()
    }
}

/// Symmetric variables `S~_k`, `k = 1..=ceil(n/2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymVector {
    parties: usize,
    entries: Vec<Rational>,
}

impl SymVector {
    pub fn new(parties: usize, entries: Vec<Rational>) -> Result<Self> {
        check_parties(parties)?;
        check_len("symmetrized vector", sym_dimension(parties), entries.len())?;
        Ok(Self { parties, entries })
    }

    pub fn from_i64(parties: usize, entries: &[i64]) -> Result<Self> {
        Self::new(
            parties,
            entries
                .iter()
                .map(|&v| Rational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn primitive(&self) -> Vec<num_bigint::BigInt> {
        primitive_form(&self.entries)
    }
}

/// Coefficients `q` over canonical subsystems; the inequality is `q . S >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inequality {
    parties: usize,
    coeffs: Vec<Rational>,
}

impl Inequality {
    pub fn new(parties: usize, coeffs: Vec<Rational>) -> Result<Self> {
        check_dense(parties)?;
        check_len("inequality", coordinate_count(parties), coeffs.len())?;
        Ok(Self { parties, coeffs })
    }

    pub fn zeros(parties: usize) -> Result<Self> {
        check_dense(parties)?;
        Ok(Self {
            parties,
            coeffs: vec![Rational::zero(); coordinate_count(parties)],
        })
    }

    /// Sums `c * S_J` terms over raw subsystems. Each `J` is canonicalized;
    /// terms on the full set `[n+1]` vanish.
    pub fn from_terms(parties: usize, terms: &[(Subsystem, Rational)]) -> Result<Self> {
        let mut q = Self::zeros(parties)?;
        for (j, c) in terms {
            q.add_term(j, c)?;
        }
        Ok(q)
    }

    pub fn add_term(&mut self, j: &Subsystem, c: &Rational) -> Result<()> {
        if j.parties() != self.parties {
            return Err(Error::AmbientMismatch {
                expected: self.parties,
                found: j.parties(),
            });
        }
        if j.is_full() {
            return Ok(());
        }
        let idx = j.canonical()?.index()?;
        self.coeffs[idx] += c;
        Ok(())
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn get(&self, canonical: &Subsystem) -> Result<Rational> {
        Ok(self.coeffs[canonical.index()?].clone())
    }

    /// Nonzero coefficients keyed by canonical subsystem, in coordinate order.
    pub fn terms(&self) -> Vec<(Subsystem, Rational)> {
        subsystem_order(self.parties)
            .expect("dense party count checked at construction")
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| (s, c.clone()))
            .collect()
    }

    pub fn term_map(&self) -> BTreeMap<Subsystem, Rational> {
        self.terms().into_iter().collect()
    }

    /// `q . S`; nonnegative means satisfied.
    pub fn evaluate(&self, s: &EntropyVector) -> Result<Rational> {
        if s.parties() != self.parties {
            return Err(Error::AmbientMismatch {
                expected: self.parties,
                found: s.parties(),
            });
        }
        Ok(dot(&self.coeffs, s.entries()))
    }
}

/// Coefficients `q~` over symmetric variables; the inequality is
/// `q~ . S~ >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymInequality {
    parties: usize,
    coeffs: Vec<Rational>,
}

impl SymInequality {
    pub fn new(parties: usize, coeffs: Vec<Rational>) -> Result<Self> {
        check_parties(parties)?;
        check_len(
            "symmetrized inequality",
            sym_dimension(parties),
            coeffs.len(),
        )?;
        Ok(Self { parties, coeffs })
    }

    pub fn from_i64(parties: usize, coeffs: &[i64]) -> Result<Self> {
        Self::new(
            parties,
            coeffs
                .iter()
                .map(|&v| Rational::from_integer(v.into()))
                .collect(),
        )
    }

    pub fn parties(&self) -> usize {
        self.parties
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn primitive(&self) -> Vec<num_bigint::BigInt> {
        primitive_form(&self.coeffs)
    }

    pub fn evaluate(&self, v: &SymVector) -> Result<Rational> {
        if v.parties() != self.parties {
            return Err(Error::AmbientMismatch {
                expected: self.parties,
                found: v.parties(),
            });
        }
        Ok(dot(&self.coeffs, v.entries()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn lengths_enforced() {
        assert!(EntropyVector::from_i64(2, &[1, 1]).is_err());
        assert!(EntropyVector::from_i64(2, &[1, 1, 0]).is_ok());
        assert!(SymVector::from_i64(5, &[1, 2]).is_err());
        assert!(matches!(
            Inequality::zeros(MAX_DENSE_PARTIES + 1),
            Err(Error::DenseCap { .. })
        ));
        assert!(Inequality::zeros(0).is_err());
    }

    #[test]
    fn terms_canonicalize() {
        // S_3 at n = 2 is stored as S_12; S_123 vanishes.
        let t = |m: &[usize], c| (Subsystem::new(2, m).unwrap(), int(c));
        let q = Inequality::from_terms(2, &[t(&[3], 2), t(&[1, 2], 1), t(&[1, 2, 3], 5)]).unwrap();
        assert_eq!(q.coeffs(), &[int(0), int(0), int(3)]);
    }

    #[test]
    fn evaluation() {
        let sa = Inequality::from_terms(
            2,
            &[
                (Subsystem::new(2, &[1]).unwrap(), int(1)),
                (Subsystem::new(2, &[2]).unwrap(), int(1)),
                (Subsystem::new(2, &[1, 2]).unwrap(), int(-1)),
            ],
        )
        .unwrap();
        let bell = EntropyVector::from_i64(2, &[1, 1, 0]).unwrap();
        assert_eq!(sa.evaluate(&bell).unwrap(), int(2));
        let q = SymInequality::from_i64(5, &[-3, 3, -1]).unwrap();
        assert_eq!(
            q.evaluate(&SymVector::from_i64(5, &[5, 8, 9]).unwrap())
                .unwrap(),
            int(0)
        );
        let q = SymInequality::from_i64(5, &[2, -1, 0]).unwrap();
        assert_eq!(
            q.evaluate(&SymVector::from_i64(5, &[5, 10, 12]).unwrap())
                .unwrap(),
            int(0)
        );
        assert!(q
            .evaluate(&SymVector::from_i64(4, &[1, 1]).unwrap())
            .is_err());
    }

    #[test]
    fn profile() {
        let v = EntropyVector::from_i64(3, &[1, 1, 1, 2, 2, 2, 1]).unwrap();
        assert_eq!(
            v.cardinality_profile().unwrap(),
            SymVector::from_i64(3, &[1, 2]).unwrap()
        );
        let v = EntropyVector::from_i64(3, &[1, 1, 1, 2, 2, 2, 3]).unwrap();
        assert!(v.cardinality_profile().is_none());
    }
}
