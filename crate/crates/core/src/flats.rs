//! Points and planes reconstructed as sets of lines.
//!
//! For an incident pair `a ≠ b`, incidence restricted to `Σ(a, b)` should
//! be an equivalence relation with two classes. [`split_sigma`] checks
//! this rather than assuming it. Each class `C` yields a flat
//! `[a b c]` for any `c ∈ C`; the catalog collects all distinct flats and
//! [`bipartition_flats`] assigns the POINT / PLANE labels globally by
//! 2-colouring the graph whose edges join disjoint flats.

use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::incidence::{IncidenceError, IncidenceStructure, LineSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlatError {
    #[error(transparent)]
    Incidence(#[from] IncidenceError),
    #[error("incidence on Σ({a}, {b}) is not an equivalence with two classes: {reason}")]
    NotAnEquivalence {
        a: usize,
        b: usize,
        reason: SplitFailure,
    },
    #[error("line {c} is not in Σ({a}, {b})")]
    NotInSigma { a: usize, b: usize, c: usize },
    #[error("flat-disjointness graph is not bipartite (odd cycle through flats {0} and {1})")]
    NotBipartite(usize, usize),
    #[error("flat-disjointness graph is disconnected (flat {0} unreachable from flat 0)")]
    Disconnected(usize),
    #[error("both flats of the pair ({0}, {1}) received the same kind")]
    PairKindsCoincide(usize, usize),
    #[error("flat kinds have not been assigned")]
    Unlabeled,
}

/// Why a Σ-split failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SplitFailure {
    /// Two lines in one incidence component of Σ are skew.
    NotTransitive { x: usize, y: usize },
    /// Incidence is an equivalence but with this many classes.
    ClassCount { classes: usize },
}

impl std::fmt::Display for SplitFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SplitFailure::NotTransitive { x, y } => {
                write!(f, "{x} and {y} are connected but skew")
            }
            SplitFailure::ClassCount { classes } => write!(f, "{classes} classes"),
        }
    }
}

/// The two incidence classes of `Σ(a, b)`. `class1` holds the smallest id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaSplit {
    pub pair: (usize, usize),
    pub class1: LineSet,
    pub class2: LineSet,
}

/// Incidence components of `sigma`, each checked to be a clique.
fn incidence_classes(
    m: &IncidenceStructure,
    sigma: &FixedBitSet,
) -> Result<Vec<FixedBitSet>, SplitFailure> {
    let mut remaining = sigma.clone();
    let mut classes = Vec::new();
    while let Some(start) = remaining.ones().next() {
        let mut comp = FixedBitSet::with_capacity(sigma.len());
        comp.insert(start);
        let mut frontier = vec![start];
        while let Some(x) = frontier.pop() {
            let mut next = m.row(x).clone();
            next.intersect_with(sigma);
            next.difference_with(&comp);
            frontier.extend(next.ones());
            comp.union_with(&next);
        }
        for x in comp.ones() {
            let mut missing = comp.clone();
            missing.difference_with(m.row(x));
            if let Some(y) = missing.ones().next() {
                return Err(SplitFailure::NotTransitive {
                    x: x.min(y),
                    y: x.max(y),
                });
            }
        }
        remaining.difference_with(&comp);
        classes.push(comp);
    }
    Ok(classes)
}

/// Bitset form of [`split_sigma`]: `(class1, class2)`.
pub(crate) fn split_sigma_bits(
    m: &IncidenceStructure,
    a: usize,
    b: usize,
) -> Result<(FixedBitSet, FixedBitSet), FlatError> {
    let sigma = m.sigma_bits(a, b)?;
    let fail = |reason| FlatError::NotAnEquivalence { a, b, reason };
    let mut classes = incidence_classes(m, &sigma).map_err(fail)?;
    if classes.len() != 2 {
        return Err(fail(SplitFailure::ClassCount {
            classes: classes.len(),
        }));
    }
    let second = classes.pop().expect("two classes");
    let first = classes.pop().expect("two classes");
    Ok((first, second))
}

pub fn split_sigma(m: &IncidenceStructure, a: usize, b: usize) -> Result<SigmaSplit, FlatError> {
    let (c1, c2) = split_sigma_bits(m, a, b)?;
    Ok(SigmaSplit {
        pair: (a, b),
        class1: LineSet::from_bits(&c1),
        class2: LineSet::from_bits(&c2),
    })
}

/// `[a b c]` for `c ∈ Σ(a, b)`.
pub fn flat_of(m: &IncidenceStructure, a: usize, b: usize, c: usize) -> Result<LineSet, FlatError> {
    let sigma = m.sigma_bits(a, b)?;
    if c >= m.len() || !sigma.contains(c) {
        return Err(FlatError::NotInSigma { a, b, c });
    }
    Ok(LineSet::from_bits(&m.dagger_ids(&[a, b, c])))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FlatKind {
    Point,
    Plane,
}

impl FlatKind {
    pub fn opposite(self) -> FlatKind {
        match self {
            FlatKind::Point => FlatKind::Plane,
            FlatKind::Plane => FlatKind::Point,
        }
    }
}

impl std::fmt::Display for FlatKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FlatKind::Point => "POINT",
            FlatKind::Plane => "PLANE",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    pub id: usize,
    pub lines: LineSet,
    pub kind: Option<FlatKind>,
    bits: FixedBitSet,
}

impl Flat {
    #[inline]
    pub fn contains(&self, line: usize) -> bool {
        self.bits.contains(line)
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn is_disjoint(&self, other: &Flat) -> bool {
        self.bits.is_disjoint(&other.bits)
    }
}

const NO_FLAT: u32 = u32::MAX;

/// Every distinct flat of a structure, sorted by member lines, plus the
/// two flats belonging to each incident pair.
#[derive(Debug, Clone)]
pub struct FlatCatalog {
    n: usize,
    flats: Vec<Flat>,
    /// `pair_flats[a * n + b]`: the pair's flats; `[point, plane]` once
    /// labelled.
    pair_flats: Vec<[u32; 2]>,
    labelled: bool,
}

/// Deduplicates the flats of every incident pair. Kinds are left unset.
pub fn catalog_flats(m: &IncidenceStructure) -> Result<FlatCatalog, FlatError> {
    let n = m.len();
    let mut index: HashMap<FixedBitSet, u32> = HashMap::new();
    let mut found: Vec<FixedBitSet> = Vec::new();
    let mut pair_flats = vec![[NO_FLAT; 2]; n * n];
    for (a, b) in m.pairs() {
        let (c1, c2) = split_sigma_bits(m, a, b)?;
        let mut ids = [NO_FLAT; 2];
        for (slot, class) in ids.iter_mut().zip([c1, c2]) {
            let c = class.ones().next().expect("classes are nonempty");
            let flat = m.dagger_ids(&[a, b, c]);
            *slot = *index.entry(flat.clone()).or_insert_with(|| {
                found.push(flat);
                (found.len() - 1) as u32
            });
        }
        pair_flats[a * n + b] = ids;
        pair_flats[b * n + a] = ids;
    }
    // Renumber by lexicographic order of member lines.
    let mut order: Vec<(LineSet, u32)> = found
        .iter()
        .enumerate()
        .map(|(i, bits)| (LineSet::from_bits(bits), i as u32))
        .collect();
    order.sort();
    let mut renumber = vec![0u32; order.len()];
    let mut flats = Vec::with_capacity(order.len());
    for (new_id, (lines, old_id)) in order.into_iter().enumerate() {
        renumber[old_id as usize] = new_id as u32;
        flats.push(Flat {
            id: new_id,
            bits: std::mem::take(&mut found[old_id as usize]),
            lines,
            kind: None,
        });
    }
    for entry in pair_flats.iter_mut() {
        if entry[0] != NO_FLAT {
            *entry = entry.map(|id| renumber[id as usize]);
        }
    }
    Ok(FlatCatalog {
        n,
        flats,
        pair_flats,
        labelled: false,
    })
}

/// 2-colours the flat-disjointness graph; the colour of flat 0 (the
/// lexicographically smallest) is POINT.
pub fn bipartition_flats(catalog: &FlatCatalog) -> Result<FlatCatalog, FlatError> {
    let mut catalog = catalog.clone();
    let k = catalog.flats.len();
    let mut colour: Vec<Option<FlatKind>> = vec![None; k];
    if k > 0 {
        colour[0] = Some(FlatKind::Point);
        let mut queue = VecDeque::from([0usize]);
        while let Some(f) = queue.pop_front() {
            let cf = colour[f].expect("queued flats are coloured");
            for (g, flat) in catalog.flats.iter().enumerate() {
                if g == f || !catalog.flats[f].is_disjoint(flat) {
                    continue;
                }
                match colour[g] {
                    None => {
                        colour[g] = Some(cf.opposite());
                        queue.push_back(g);
                    }
                    Some(cg) if cg == cf => return Err(FlatError::NotBipartite(f, g)),
                    Some(_) => {}
                }
            }
        }
        if let Some(unreached) = colour.iter().position(Option::is_none) {
            return Err(FlatError::Disconnected(unreached));
        }
    }
    for (flat, kind) in catalog.flats.iter_mut().zip(&colour) {
        flat.kind = *kind;
    }
    let n = catalog.n;
    for a in 0..n {
        for b in a + 1..n {
            let entry = catalog.pair_flats[a * n + b];
            if entry[0] == NO_FLAT {
                continue;
            }
            let k0 = colour[entry[0] as usize];
            let k1 = colour[entry[1] as usize];
            if k0 == k1 {
                return Err(FlatError::PairKindsCoincide(a, b));
            }
            let ordered = if k0 == Some(FlatKind::Point) {
                entry
            } else {
                [entry[1], entry[0]]
            };
            catalog.pair_flats[a * n + b] = ordered;
            catalog.pair_flats[b * n + a] = ordered;
        }
    }
    catalog.labelled = true;
    Ok(catalog)
}

/// Catalog plus labels in one step.
pub fn labelled_catalog(m: &IncidenceStructure) -> Result<FlatCatalog, FlatError> {
    bipartition_flats(&catalog_flats(m)?)
}

pub fn flat_intersection(f: &Flat, g: &Flat) -> LineSet {
    let mut bits = f.bits.clone();
    bits.intersect_with(&g.bits);
    LineSet::from_bits(&bits)
}

impl FlatCatalog {
    pub fn line_count(&self) -> usize {
        self.n
    }

    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn flat(&self, id: usize) -> &Flat {
        &self.flats[id]
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn is_labelled(&self) -> bool {
        self.labelled
    }

    pub fn of_kind(&self, kind: FlatKind) -> impl Iterator<Item = &Flat> + '_ {
        self.flats.iter().filter(move |f| f.kind == Some(kind))
    }

    pub fn count_of_kind(&self, kind: FlatKind) -> usize {
        self.of_kind(kind).count()
    }

    /// Id of the flat with exactly these lines.
    pub fn find(&self, lines: &LineSet) -> Option<usize> {
        self.flats.binary_search_by(|f| f.lines.cmp(lines)).ok()
    }

    pub fn flats_containing(&self, line: usize) -> impl Iterator<Item = &Flat> + '_ {
        self.flats.iter().filter(move |f| f.contains(line))
    }

    /// The two flats of an incident pair, unchecked: `None` for skew or
    /// equal lines.
    #[inline]
    pub fn pair_flat_ids(&self, a: usize, b: usize) -> Option<[usize; 2]> {
        let entry = self.pair_flats[a * self.n + b];
        (entry[0] != NO_FLAT).then(|| entry.map(|x| x as usize))
    }

    fn checked_pair(&self, a: usize, b: usize) -> Result<[usize; 2], FlatError> {
        if !self.labelled {
            return Err(FlatError::Unlabeled);
        }
        for id in [a, b] {
            if id >= self.n {
                return Err(IncidenceError::OutOfRange { id, n: self.n }.into());
            }
        }
        if a == b {
            return Err(IncidenceError::SameLine(a).into());
        }
        self.pair_flat_ids(a, b)
            .ok_or(FlatError::Incidence(IncidenceError::Skew(a, b)))
    }

    /// The POINT flat through both lines, `a ⊻ b`.
    pub fn join(&self, a: usize, b: usize) -> Result<&Flat, FlatError> {
        Ok(&self.flats[self.checked_pair(a, b)?[0]])
    }

    /// The PLANE flat containing both lines (`a ⊼ b`).
    pub fn meet(&self, a: usize, b: usize) -> Result<&Flat, FlatError> {
        Ok(&self.flats[self.checked_pair(a, b)?[1]])
    }

    /// The flat of `kind` through an incident pair, unchecked.
    #[inline]
    pub fn flat_of_kind(&self, a: usize, b: usize, kind: FlatKind) -> Option<usize> {
        self.pair_flat_ids(a, b).map(|ids| match kind {
            FlatKind::Point => ids[0],
            FlatKind::Plane => ids[1],
        })
    }
}
