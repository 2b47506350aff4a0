//! Subsystems of `[n+1]` as bitmasks, the canonical coordinate order, and
//! permutations of the `n + 1` colors.
//!
//! Party `i` is bit `i - 1`. Party `n + 1` is the purifier. A subsystem is
//! *canonical* when it does not contain the purifier; every raw subsystem
//! other than `[n+1]` has exactly one canonical representative (itself or
//! its complement).

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported party count; `n + 1` colors must fit in a `u64` mask.
pub const MAX_PARTIES: usize = 62;

pub fn check_parties(n: usize) -> Result<()> {
    if (1..=MAX_PARTIES).contains(&n) {
        Ok(())
    } else {
        Err(Error::PartyCount(n))
    }
}

/// Number of entropy coordinates, `2^n - 1`.
pub fn coordinate_count(n: usize) -> usize {
    (1usize << n) - 1
}

/// Number of symmetric variables, `ceil(n / 2)`.
pub fn sym_dimension(n: usize) -> usize {
    n.div_ceil(2)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subsystem {
    parties: u8,
    mask: u64,
}

impl Subsystem {
    /// Subsystem of `[n+1]` from 1-based party labels.
    pub fn new(n: usize, members: &[usize]) -> Result<Self> {
        check_parties(n)?;
        let mut mask = 0u64;
        for &p in members {
            if p == 0 || p > n + 1 {
                return Err(Error::InvalidSubsystem(format!(
                    "party {p} outside 1..={}",
                    n + 1
                )));
            }
            mask |= 1 << (p - 1);
        }
        Self::from_mask(n, mask)
    }

    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        check_parties(n)?;
        if mask == 0 {
            return Err(Error::InvalidSubsystem("empty subsystem".into()));
        }
        if mask >> (n + 1) != 0 {
            return Err(Error::InvalidSubsystem(format!(
                "mask {mask:#x} has parties beyond {}",
                n + 1
            )));
        }
        Ok(Self {
            parties: n as u8,
            mask,
        })
    }

    pub fn parties(&self) -> usize {
        self.parties as usize
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, party: usize) -> bool {
        (1..=64).contains(&party) && self.mask >> (party - 1) & 1 == 1
    }

    pub fn members(&self) -> Vec<usize> {
        (0..64)
            .filter(|b| self.mask >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }

    fn full_mask(&self) -> u64 {
        (1u64 << (self.parties() + 1)) - 1
    }

    pub fn is_full(&self) -> bool {
        self.mask == self.full_mask()
    }

    pub fn is_canonical(&self) -> bool {
        !self.contains(self.parties() + 1)
    }

    /// Complement within `[n+1]`, `None` when `self` is everything.
    pub fn complement(&self) -> Option<Self> {
        let c = self.full_mask() & !self.mask;
        (c != 0).then_some(Self {
            parties: self.parties,
            mask: c,
        })
    }

    /// The canonical representative: `self` if the purifier is absent,
    /// otherwise `[n+1] \ self`.
    pub fn canonical(&self) -> Result<Self> {
        if self.is_full() {
            return Err(Error::InvalidSubsystem(
                "the full set [n+1] has no canonical coordinate".into(),
            ));
        }
        if self.is_canonical() {
            Ok(*self)
        } else {
            Ok(self
                .complement()
                .expect("non-full subsystem has a complement"))
        }
    }

    /// Same members viewed in a larger ambient party count.
    pub fn with_parties(&self, n: usize) -> Result<Self> {
        Self::from_mask(n, self.mask)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            parties: self.parties,
            mask: self.mask | other.mask,
        }
    }

    pub fn intersection(&self, other: &Self) -> Option<Self> {
        let m = self.mask & other.mask;
        (m != 0).then_some(Self {
            parties: self.parties,
            mask: m,
        })
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.mask & other.mask == 0
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.mask & !other.mask == 0
    }

    /// Position in [`subsystem_order`]. Only defined for canonical subsystems.
    pub fn index(&self) -> Result<usize> {
        if !self.is_canonical() {
            return Err(Error::InvalidSubsystem(format!(
                "{self} contains the purifier; canonicalize first"
            )));
        }
        let n = self.parties() as u64;
        let k = self.len() as u64;
        let mut idx: u64 = (1..k).map(|c| binom_u64(n, c)).sum();
        let mut prev = 0u64;
        for (i, a) in self.members().into_iter().enumerate() {
            let a = a as u64;
            let i = i as u64 + 1;
            for j in prev + 1..a {
                idx += binom_u64(n - j, k - i);
            }
            prev = a;
        }
        Ok(idx as usize)
    }

    /// Comma-separated ascending members, e.g. `1,2,4`.
    pub fn key(&self) -> String {
        self.members()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses a [`Subsystem::key`] string for ambient `n`.
    pub fn parse_key(n: usize, key: &str) -> Result<Self> {
        let mut members = Vec::new();
        for part in key.split(',') {
            if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) || part.len() > 3 {
                return Err(Error::InvalidSubsystem(format!(
                    "bad subsystem key {key:?}"
                )));
            }
            let p: usize = part
                .parse()
                .map_err(|_| Error::InvalidSubsystem(format!("bad subsystem key {key:?}")))?;
            if members.contains(&p) {
                return Err(Error::InvalidSubsystem(format!(
                    "repeated party {p} in {key:?}"
                )));
            }
            members.push(p);
        }
        Self::new(n, &members)
    }
}

impl Ord for Subsystem {
    /// Cardinality first, then lexicographic on ascending member lists.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.mask ^ other.mask;
            if diff == 0 {
                Ordering::Equal
            } else if self.mask & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Subsystem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.key())
    }
}

impl fmt::Debug for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subsystem({}; n={})", self.key(), self.parties)
    }
}

/// Canonical form of a raw subsystem of `[n+1]`.
pub fn canonical_subsystem(j: &Subsystem) -> Result<Subsystem> {
    j.canonical()
}

fn binom_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// All `k`-subsets of `{1..=universe}` as masks, in lexicographic order of
/// their ascending member lists.
pub fn k_subsets(universe: usize, k: usize) -> impl Iterator<Item = u64> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut done = k > universe;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << i);
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if idx[i] < universe - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            done = true;
        }
        Some(mask)
    })
}

/// The `2^n - 1` canonical subsystems in coordinate order.
pub fn subsystem_order(n: usize) -> Result<Vec<Subsystem>> {
    check_parties(n)?;
    crate::vectors::check_dense(n)?;
    let mut out = Vec::with_capacity(coordinate_count(n));
    for k in 1..=n {
        out.extend(k_subsets(n, k).map(|m| Subsystem {
            parties: n as u8,
            mask: m,
        }));
    }
    Ok(out)
}

/// `Q_n(k)`: all `k`-subsets of `[n+1]`, for `1 <= k <= ceil(n/2)`.
pub fn q_n_k(n: usize, k: usize) -> Result<Vec<Subsystem>> {
    check_parties(n)?;
    let max = sym_dimension(n);
    if k == 0 || k > max {
        return Err(Error::Cardinality { k, max });
    }
    Ok(k_subsets(n + 1, k)
        .map(|m| Subsystem {
            parties: n as u8,
            mask: m,
        })
        .collect())
}

/// A bijection on `{1..=m}` where `m = n + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// `images[i - 1]` is the image of `i`.
    pub fn new(images: &[usize]) -> Result<Self> {
        let m = images.len();
        if m == 0 || m > MAX_PARTIES + 1 {
            return Err(Error::InvalidPermutation(format!("size {m} unsupported")));
        }
        let mut seen = vec![false; m];
        for &v in images {
            if v == 0 || v > m || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 1..={m}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Self {
            images: images.iter().map(|&v| v as u8).collect(),
        })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            images: (1..=m as u8).collect(),
        }
    }

    /// The transposition `(a b)` on `{1..=m}`.
    pub fn transposition(m: usize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (1..=m).collect();
        if a == 0 || b == 0 || a > m || b > m {
            return Err(Error::InvalidPermutation(format!(
                "({a} {b}) outside 1..={m}"
            )));
        }
        images.swap(a - 1, b - 1);
        Self::new(&images)
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize - 1] = i as u8 + 1;
        }
        Self { images: inv }
    }

    /// Elementwise image of a raw subsystem.
    pub fn apply_subsystem(&self, j: &Subsystem) -> Result<Subsystem> {
        if self.size() != j.parties() + 1 {
            return Err(Error::AmbientMismatch {
                expected: j.parties() + 1,
                found: self.size(),
            });
        }
        let mut mask = 0u64;
        for p in j.members() {
            mask |= 1 << (self.apply(p) - 1);
        }
        Subsystem::from_mask(j.parties(), mask)
    }

    /// All `m!` permutations of `{1..=m}` in lexicographic order.
    pub fn all(m: usize) -> Vec<Permutation> {
        let mut cur: Vec<u8> = (1..=m as u8).collect();
        let mut out = vec![Self {
            images: cur.clone(),
        }];
        loop {
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Self {
                images: cur.clone(),
            });
        }
    }
}

/// `sigma(J)`; see [`Permutation::apply_subsystem`].
pub fn apply_permutation(sigma: &Permutation, j: &Subsystem) -> Result<Subsystem> {
    sigma.apply_subsystem(j)
}
