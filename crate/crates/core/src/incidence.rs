//! Abstract line-incidence structures and the dagger operator.
//!
//! An [`IncidenceStructure`] is nothing but a set of `n` lines together
//! with a symmetric reflexive relation. No geometry is assumed here; every
//! notion downstream (flats, triads, tetrads) is derived from `rel` alone.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IncidenceError {
    #[error("line id {id} out of range (structure has {n} lines)")]
    OutOfRange { id: usize, n: usize },
    #[error("lines {0} and {0} are the same line")]
    SameLine(usize),
    #[error("lines {0} and {1} are skew")]
    Skew(usize, usize),
}

/// A sorted, duplicate-free set of line ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LineSet(Vec<usize>);

impl LineSet {
    pub fn new<I: IntoIterator<Item = usize>>(ids: I) -> Self {
        let mut v: Vec<usize> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        LineSet(v)
    }

    pub fn from_bits(bits: &FixedBitSet) -> Self {
        LineSet(bits.ones().collect())
    }

    pub fn to_bits(&self, n: usize) -> FixedBitSet {
        let mut bits = FixedBitSet::with_capacity(n);
        for &id in &self.0 {
            bits.insert(id);
        }
        bits
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &LineSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &LineSet) -> LineSet {
        LineSet(
            self.0
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        )
    }

    pub fn union(&self, other: &LineSet) -> LineSet {
        LineSet::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn difference(&self, other: &LineSet) -> LineSet {
        LineSet(
            self.0
                .iter()
                .copied()
                .filter(|&x| !other.contains(x))
                .collect(),
        )
    }
}

impl FromIterator<usize> for LineSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        LineSet::new(iter)
    }
}

/// `n` lines with a symmetric reflexive incidence relation stored as dense
/// bit rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    rows: Vec<FixedBitSet>,
}

impl IncidenceStructure {
    /// Builds the symmetric reflexive closure of `pairs` on `n` lines.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self, IncidenceError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut rows: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut r = FixedBitSet::with_capacity(n);
                r.insert(i);
                r
            })
            .collect();
        for (i, j) in pairs {
            for id in [i, j] {
                if id >= n {
                    return Err(IncidenceError::OutOfRange { id, n });
                }
            }
            rows[i].insert(j);
            rows[j].insert(i);
        }
        Ok(Self { rows })
    }

    /// Evaluates `incident(i, j)` once for every `i < j`.
    pub fn from_fn<F: FnMut(usize, usize) -> bool>(n: usize, mut incident: F) -> Self {
        let mut rows: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut r = FixedBitSet::with_capacity(n);
                r.insert(i);
                r
            })
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                if incident(i, j) {
                    rows[i].insert(j);
                    rows[j].insert(i);
                }
            }
        }
        Self { rows }
    }

    /// Two copies side by side with no incidence between them; ids of
    /// `other` are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &IncidenceStructure) -> IncidenceStructure {
        let shift = self.len();
        let pairs = self
            .pairs()
            .chain(other.pairs().map(|(i, j)| (i + shift, j + shift)))
            .collect::<Vec<_>>();
        IncidenceStructure::from_pairs(shift + other.len(), pairs)
            .expect("shifted ids are in range")
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn check(&self, id: usize) -> Result<(), IncidenceError> {
        if id >= self.len() {
            return Err(IncidenceError::OutOfRange { id, n: self.len() });
        }
        Ok(())
    }

    /// Raw relation lookup; panics on out-of-range ids.
    #[inline]
    pub fn incident(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    #[inline]
    pub fn row(&self, a: usize) -> &FixedBitSet {
        &self.rows[a]
    }

    /// Number of lines incident to `a`, including `a` itself.
    pub fn degree(&self, a: usize) -> usize {
        self.rows[a].count_ones(..)
    }

    /// Incident pairs `(i, j)` with `i < j`, lexicographically.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.ones().filter(move |&j| j > i).map(move |j| (i, j)))
    }

    pub fn pair_count(&self) -> usize {
        let total: usize = self.rows.iter().map(|r| r.count_ones(..)).sum();
        (total - self.len()) / 2
    }

    /// All lines incident to every id in `ids`, as a bitset.
    pub fn dagger_ids(&self, ids: &[usize]) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.len());
        acc.insert_range(..);
        for &id in ids {
            acc.intersect_with(&self.rows[id]);
        }
        acc
    }

    /// All lines incident to every member of `set`.
    pub fn dagger_bits(&self, set: &FixedBitSet) -> FixedBitSet {
        let mut acc = FixedBitSet::with_capacity(self.len());
        acc.insert_range(..);
        for id in set.ones() {
            acc.intersect_with(&self.rows[id]);
        }
        acc
    }

    /// `S†`: the lines incident to each line of `s`. The empty set maps to
    /// every line.
    pub fn dagger(&self, s: &LineSet) -> Result<LineSet, IncidenceError> {
        for id in s.iter() {
            self.check(id)?;
        }
        Ok(LineSet::from_bits(&self.dagger_ids(s.as_slice())))
    }

    pub fn is_skew(&self, a: usize, b: usize) -> Result<bool, IncidenceError> {
        self.check(a)?;
        self.check(b)?;
        Ok(!self.incident(a, b))
    }

    /// `[a b]` and `[a b]†` as bitsets, for distinct incident `a`, `b`.
    pub fn bracket_and_pencil(
        &self,
        a: usize,
        b: usize,
    ) -> Result<(FixedBitSet, FixedBitSet), IncidenceError> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(IncidenceError::SameLine(a));
        }
        if !self.incident(a, b) {
            return Err(IncidenceError::Skew(a, b));
        }
        let bracket = self.dagger_ids(&[a, b]);
        let pencil = self.dagger_bits(&bracket);
        Ok((bracket, pencil))
    }

    /// `Σ(a, b) = [a b] \ [a b]†` as a bitset.
    pub fn sigma_bits(&self, a: usize, b: usize) -> Result<FixedBitSet, IncidenceError> {
        let (mut bracket, pencil) = self.bracket_and_pencil(a, b)?;
        bracket.difference_with(&pencil);
        Ok(bracket)
    }

    /// `Σ(a, b)`: the lines of `[a b]` that belong to some skew pair in `[a b]`.
    pub fn sigma(&self, a: usize, b: usize) -> Result<LineSet, IncidenceError> {
        Ok(LineSet::from_bits(&self.sigma_bits(a, b)?))
    }

    /// Lexicographically first skew pair inside `bits`.
    pub fn first_skew_pair_in(&self, bits: &FixedBitSet) -> Option<(usize, usize)> {
        for x in bits.ones() {
            let mut skew = bits.clone();
            skew.difference_with(&self.rows[x]);
            if let Some(y) = skew.ones().find(|&y| y > x) {
                return Some((x, y));
            }
        }
        None
    }

    pub fn contains_skew_pair(&self, s: &LineSet) -> Option<(usize, usize)> {
        let bits = s.to_bits(self.len());
        self.first_skew_pair_in(&bits)
    }
}
