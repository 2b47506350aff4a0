//! The `Sym(n+1)` symmetrization of entropy vectors, inequalities and
//! graphs.
//!
//! `M` (rows indexed by `k = 1..=ceil(n/2)`) averages entropies over the
//! `k`-subsets of `[n+1]`; `N` sums coefficients over the canonical
//! coordinates of cardinality `k` or `n + 1 - k`, counting each coordinate
//! once. With these conventions `M N^T = 1` and `N^T M` is the projector onto
//! the symmetric subspace.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{disjoint_union, GraphModel};
use crate::matrix::RMatrix;
use crate::rational::{binomial, factorial, Rational};
use crate::subsystem::{
    check_parties, coordinate_count, q_n_k, subsystem_order, sym_dimension, Permutation,
};
use crate::vectors::{check_dense, EntropyVector, Inequality, SymInequality, SymVector};

/// Default limit on the vertex count of a permutation-averaged graph.
pub const DEFAULT_AVERAGE_VERTEX_CAP: usize = 1 << 16;

/// Symmetric-variable index of a canonical coordinate of cardinality `size`.
fn sym_index(n: usize, size: usize) -> usize {
    size.min(n + 1 - size)
}

pub fn m_matrix(n: usize) -> Result<RMatrix> {
    check_dense(n)?;
    let d = sym_dimension(n);
    let order = subsystem_order(n)?;
    let mut m = RMatrix::zeros(d, order.len());
    let weights: Vec<Rational> = (1..=d)
        .map(|k| Rational::new(1.into(), binomial(n as u64 + 1, k as u64)))
        .collect();
    for (col, s) in order.iter().enumerate() {
        let size = s.len();
        let k = sym_index(n, size);
        // The self-complementary cardinality is hit by both I and its
        // complement in Q_n(k).
        let mult = if 2 * size == n + 1 { 2 } else { 1 };
        m.set(
            k - 1,
            col,
            &weights[k - 1] * Rational::from_integer(mult.into()),
        );
    }
    Ok(m)
}

pub fn n_matrix(n: usize) -> Result<RMatrix> {
    check_dense(n)?;
    let d = sym_dimension(n);
    let order = subsystem_order(n)?;
    let mut m = RMatrix::zeros(d, order.len());
    for (col, s) in order.iter().enumerate() {
        m.set(sym_index(n, s.len()) - 1, col, Rational::one());
    }
    Ok(m)
}

/// `S~ = M S`.
pub fn symmetrize_vector(s: &EntropyVector) -> Result<SymVector> {
    let n = s.parties();
    let d = sym_dimension(n);
    let mut sums = vec![Rational::zero(); d];
    for (sub, v) in subsystem_order(n)?.iter().zip(s.entries()) {
        let size = sub.len();
        let k = sym_index(n, size);
        if 2 * size == n + 1 {
            sums[k - 1] += v * Rational::from_integer(2.into());
        } else {
            sums[k - 1] += v;
        }
    }
    let entries = sums
        .into_iter()
        .enumerate()
        .map(|(i, v)| v / Rational::from_integer(binomial(n as u64 + 1, i as u64 + 1)))
        .collect();
    SymVector::new(n, entries)
}

/// `q~ = N q`.
pub fn symmetrize_inequality(q: &Inequality) -> Result<SymInequality> {
    let n = q.parties();
    let mut sums = vec![Rational::zero(); sym_dimension(n)];
    for (sub, c) in subsystem_order(n)?.iter().zip(q.coeffs()) {
        sums[sym_index(n, sub.len()) - 1] += c;
    }
    SymInequality::new(n, sums)
}

/// Sum of the inequality over its `Sym(n+1)` orbit:
/// `q'_I = k! (n+1-k)! * sum over J in Q_n(k) of q_canonical(J)`.
pub fn orbit_sum(q: &Inequality) -> Result<Inequality> {
    let n = q.parties();
    let d = sym_dimension(n);
    let mut per_k = Vec::with_capacity(d);
    for k in 1..=d {
        let mut acc = Rational::zero();
        for j in q_n_k(n, k)? {
            acc += q.get(&j.canonical()?)?;
        }
        let stab = factorial(k as u64) * factorial((n + 1 - k) as u64);
        per_k.push(acc * Rational::from_integer(stab));
    }
    let coeffs = subsystem_order(n)?
        .iter()
        .map(|s| per_k[sym_index(n, s.len()) - 1].clone())
        .collect();
    Inequality::new(n, coeffs)
}

/// `N^T M`.
pub fn projection_matrix(n: usize) -> Result<RMatrix> {
    n_matrix(n)?.transpose().mul(&m_matrix(n)?)
}

/// Applies the projector: every coordinate `I` becomes `S~_min(|I|, n+1-|I|)`.
pub fn project_vector(s: &EntropyVector) -> Result<EntropyVector> {
    let n = s.parties();
    let sym = symmetrize_vector(s)?;
    let entries = subsystem_order(n)?
        .iter()
        .map(|sub| sym.entries()[sym_index(n, sub.len()) - 1].clone())
        .collect();
    EntropyVector::new(n, entries)
}

/// `(1/(n+1)!) * disjoint union of G^sigma over all sigma in Sym(n+1)`.
pub fn average_graph(g: &GraphModel, max_vertices: usize) -> Result<GraphModel> {
    let n = g.parties();
    check_parties(n)?;
    let copies = (1..=n as u128 + 1).try_fold(1u128, |acc, k| acc.checked_mul(k));
    let total = copies.and_then(|c| c.checked_mul(g.vertices().len() as u128));
    match total {
        Some(t) if t <= max_vertices as u128 => {}
        _ => {
            return Err(Error::CapExceeded(format!(
                "averaging over ({}+1)! recolorings of a {}-vertex graph exceeds {max_vertices} vertices",
                n,
                g.vertices().len()
            )))
        }
    }
    let perms = Permutation::all(n + 1);
    let scale = Rational::new(1.into(), factorial(n as u64 + 1));
    let recolored = perms
        .iter()
        .map(|p| g.recolor(p)?.scale_weights(&scale))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&GraphModel> = recolored.iter().collect();
    Ok(disjoint_union(n, &refs, |i| format!("s{i}/")))
}

/// Re-embeds an inequality on `[n]` into a larger ambient party count.
/// Coordinates involving the new parties get coefficient zero.
pub fn lift_inequality(q: &Inequality, n_target: usize) -> Result<Inequality> {
    let n = q.parties();
    if n_target < n {
        return Err(Error::InvalidArgument(format!(
            "cannot lift a {n}-party inequality to {n_target} parties"
        )));
    }
    check_dense(n_target)?;
    let mut coeffs = vec![Rational::zero(); coordinate_count(n_target)];
    for (s, c) in q.terms() {
        coeffs[s.with_parties(n_target)?.index()?] = c;
    }
    Inequality::new(n_target, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};
    use crate::subsystem::Subsystem;

    fn mmi_singletons(n: usize) -> Inequality {
        let s = |m: &[usize]| Subsystem::new(n, m).unwrap();
        Inequality::from_terms(
            n,
            &[
                (s(&[1, 2]), int(1)),
                (s(&[1, 3]), int(1)),
                (s(&[2, 3]), int(1)),
                (s(&[1]), int(-1)),
                (s(&[2]), int(-1)),
                (s(&[3]), int(-1)),
                (s(&[1, 2, 3]), int(-1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn displayed_n3_matrices() {
        let q = frac(1, 4);
        let t = frac(1, 3);
        let z = int(0);
        let m = m_matrix(3).unwrap();
        assert_eq!(
            m.row(0),
            &[
                q.clone(),
                q.clone(),
                q.clone(),
                z.clone(),
                z.clone(),
                z.clone(),
                q.clone()
            ]
        );
        assert_eq!(
            m.row(1),
            &[
                z.clone(),
                z.clone(),
                z.clone(),
                t.clone(),
                t.clone(),
                t.clone(),
                z.clone()
            ]
        );
        let nm = n_matrix(3).unwrap();
        assert_eq!(
            nm,
            RMatrix::from_i64_rows(&[&[1, 1, 1, 0, 0, 0, 1], &[0, 0, 0, 1, 1, 1, 0]]).unwrap()
        );
    }

    #[test]
    fn small_m_rows() {
        assert_eq!(
            m_matrix(2).unwrap().row(0),
            &[frac(1, 3), frac(1, 3), frac(1, 3)]
        );
        let m4 = m_matrix(4).unwrap();
        let order = subsystem_order(4).unwrap();
        for (c, s) in order.iter().enumerate() {
            let expect = if s.len() == 2 || s.len() == 3 {
                frac(1, 10)
            } else {
                int(0)
            };
            assert_eq!(m4.get(1, c), &expect, "{s}");
        }
        let n5 = n_matrix(5).unwrap();
        for (c, s) in subsystem_order(5).unwrap().iter().enumerate() {
            assert_eq!(n5.get(2, c), &if s.len() == 3 { int(1) } else { int(0) });
        }
        assert_eq!(n_matrix(2).unwrap().row(0), &[int(1), int(1), int(1)]);
    }

    #[test]
    fn m_matches_q_sum() {
        for n in 1..=7 {
            let m = m_matrix(n).unwrap();
            for k in 1..=sym_dimension(n) {
                let mut row = vec![int(0); coordinate_count(n)];
                let w = Rational::new(1.into(), binomial(n as u64 + 1, k as u64));
                for j in q_n_k(n, k).unwrap() {
                    row[j.canonical().unwrap().index().unwrap()] += &w;
                }
                assert_eq!(m.row(k - 1), row.as_slice(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn symmetrize_examples() {
        let star = EntropyVector::from_i64(3, &[1, 1, 1, 2, 2, 2, 3]).unwrap();
        let sym = symmetrize_vector(&star).unwrap();
        assert_eq!(sym.entries(), &[frac(3, 2), int(2)]);
        let m = m_matrix(3).unwrap();
        assert_eq!(m.mul_vec(star.entries()).unwrap(), sym.entries());
        assert_eq!(
            symmetrize_vector(&EntropyVector::zeros(4).unwrap()).unwrap(),
            SymVector::from_i64(4, &[0, 0]).unwrap()
        );
    }

    #[test]
    fn symmetrized_singleton_mmi() {
        let sym = |n| symmetrize_inequality(&mmi_singletons(n)).unwrap();
        assert_eq!(sym(3), SymInequality::from_i64(3, &[-4, 3]).unwrap());
        assert_eq!(sym(4), SymInequality::from_i64(4, &[-3, 2]).unwrap());
        assert_eq!(sym(5), SymInequality::from_i64(5, &[-3, 3, -1]).unwrap());
        let lifted = lift_inequality(&mmi_singletons(3), 5).unwrap();
        assert_eq!(symmetrize_inequality(&lifted).unwrap(), sym(5));
        assert_eq!(
            lift_inequality(&mmi_singletons(3), 3).unwrap(),
            mmi_singletons(3)
        );
        assert!(lift_inequality(&mmi_singletons(4), 3).is_err());
    }

    #[test]
    fn orbit_sum_mmi_n3() {
        let q = orbit_sum(&mmi_singletons(3)).unwrap();
        for (s, c) in subsystem_order(3).unwrap().iter().zip(q.coeffs()) {
            let expect = if s.len() == 2 { 24 } else { -24 };
            assert_eq!(c, &int(expect), "{s}");
        }
        assert!(orbit_sum(&Inequality::zeros(3).unwrap())
            .unwrap()
            .coeffs()
            .iter()
            .all(Zero::is_zero));
    }

    #[test]
    fn projector_n3() {
        let p = projection_matrix(3).unwrap();
        let (q, t) = (frac(1, 4), frac(1, 3));
        for i in 0..7 {
            for j in 0..7 {
                let block_i = matches!(i, 0..=2 | 6);
                let block_j = matches!(j, 0..=2 | 6);
                let expect = match (block_i, block_j) {
                    (true, true) => q.clone(),
                    (false, false) => t.clone(),
                    _ => int(0),
                };
                assert_eq!(p.get(i, j), &expect);
            }
        }
        let star = EntropyVector::from_i64(3, &[1, 1, 1, 2, 2, 2, 3]).unwrap();
        let projected = p.mul_vec(star.entries()).unwrap();
        let h = frac(3, 2);
        assert_eq!(
            projected,
            vec![h.clone(), h.clone(), h.clone(), int(2), int(2), int(2), h]
        );
        assert_eq!(
            project_vector(&star).unwrap().entries(),
            projected.as_slice()
        );
    }

    #[test]
    fn average_cap() {
        let g = crate::graph::star_graph(3, &int(1)).unwrap();
        assert!(matches!(average_graph(&g, 10), Err(Error::CapExceeded(_))));
        let avg = average_graph(&g, DEFAULT_AVERAGE_VERTEX_CAP).unwrap();
        assert_eq!(avg.vertices().len(), 24 * 5);
    }
}
