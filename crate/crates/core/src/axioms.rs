//! Decision procedures for AXIOM [1]–[4].
//!
//! Every scan runs in lexicographic order of line ids and stops at the
//! first counterexample, so verdicts are reproducible. Axioms 3 and 4 are
//! evaluated over the flat catalog: each `[a b c]` with `c ∈ Σ(a, b)` is a
//! catalog flat and every catalog flat has that form.
//!
//! AXIOM [2.2] is read as quantifying over every `c ∈ Σ(a, b)`; each such
//! `c` is one of a skew pair in `[a b]` by definition of Σ.

use serde::{Deserialize, Serialize};

use crate::flats::{self, FlatCatalog, FlatError, FlatKind, SplitFailure};
use crate::incidence::IncidenceStructure;
use crate::sampling;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxiomId {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2.1")]
    TwoOne,
    #[serde(rename = "2.2")]
    TwoTwo,
    #[serde(rename = "2.3")]
    TwoThree,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "4-point")]
    FourPoint,
    #[serde(rename = "4-plane")]
    FourPlane,
}

impl std::fmt::Display for AxiomId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AxiomId::One => "1",
            AxiomId::TwoOne => "2.1",
            AxiomId::TwoTwo => "2.2",
            AxiomId::TwoThree => "2.3",
            AxiomId::Three => "3",
            AxiomId::FourPoint => "4-point",
            AxiomId::FourPlane => "4-plane",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    /// The clause presupposes Σ-classes or flat kinds the structure lacks.
    NotApplicable,
}

/// A concrete reason a clause does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `line†` has no three pairwise skew lines.
    NoSkewTriple { line: usize },
    /// `[a b]` has no skew pair.
    NoSkewPair { a: usize, b: usize },
    /// `x, y` are skew inside `[a b c]`.
    SkewPairInFlat {
        a: usize,
        b: usize,
        c: usize,
        x: usize,
        y: usize,
    },
    /// `line ∈ [a b]` lies in neither `[a b x]` nor `[a b y]`.
    UnionMissesLine {
        a: usize,
        b: usize,
        x: usize,
        y: usize,
        line: usize,
    },
    /// Flat `flat` meets every flat of the catalog.
    NoDisjointFlat { flat: usize },
    /// Two flats of one kind share no line.
    DisjointSameKind { flat1: usize, flat2: usize },
    /// Both flats of `(a, b)` miss both flats of `(p, q)`, so the clause
    /// fails under any assignment of kinds.
    DisjointPairFlats {
        a: usize,
        b: usize,
        p: usize,
        q: usize,
    },
    /// `Σ(a, b)` does not split into two incidence classes.
    SigmaNotTwoClass {
        a: usize,
        b: usize,
        reason: SplitFailure,
    },
    /// Flat kinds could not be assigned.
    KindsUnavailable { reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub samples: usize,
    pub population: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub axiom: AxiomId,
    pub status: Status,
    pub counterexample: Option<Witness>,
    pub cases: u64,
    pub sampling: Option<Sampling>,
}

impl AxiomVerdict {
    fn new(axiom: AxiomId, cases: u64, counterexample: Option<Witness>) -> Self {
        let status = if counterexample.is_some() {
            Status::Fail
        } else {
            Status::Pass
        };
        Self {
            axiom,
            status,
            counterexample,
            cases,
            sampling: None,
        }
    }

    fn not_applicable(axiom: AxiomId, reason: Witness) -> Self {
        Self {
            axiom,
            status: Status::NotApplicable,
            counterexample: Some(reason),
            cases: 0,
            sampling: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Sampling for the expensive clauses 2.2 and 2.3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AxiomOptions {
    /// Check only this many incident pairs (seeded); `None` is exhaustive.
    pub pair_samples: Option<(usize, u64)>,
}

pub fn check_axiom1(m: &IncidenceStructure) -> AxiomVerdict {
    let n = m.len();
    let mut cases = 0;
    for l in 0..n {
        cases += 1;
        let row = m.row(l);
        let found = row.ones().any(|x| {
            let mut skew_x = row.clone();
            skew_x.difference_with(m.row(x));
            skew_x.ones().filter(|&y| y > x).any(|y| {
                let mut skew_xy = skew_x.clone();
                skew_xy.difference_with(m.row(y));
                skew_xy.ones().any(|z| z > y)
            })
        });
        if !found {
            return AxiomVerdict::new(AxiomId::One, cases, Some(Witness::NoSkewTriple { line: l }));
        }
    }
    AxiomVerdict::new(AxiomId::One, cases, None)
}

/// Verdicts for 2.1, 2.2 and 2.3, in that order.
pub fn check_axiom2(m: &IncidenceStructure, opts: &AxiomOptions) -> [AxiomVerdict; 3] {
    let pairs: Vec<(usize, usize)> = m.pairs().collect();

    let mut v21 = AxiomVerdict::new(AxiomId::TwoOne, 0, None);
    for &(a, b) in &pairs {
        v21.cases += 1;
        let bracket = m.dagger_ids(&[a, b]);
        if m.first_skew_pair_in(&bracket).is_none() {
            v21 = AxiomVerdict::new(
                AxiomId::TwoOne,
                v21.cases,
                Some(Witness::NoSkewPair { a, b }),
            );
            break;
        }
    }

    let (selected, sampling) = match opts.pair_samples {
        Some((samples, seed)) if samples < pairs.len() => {
            let mut rng = sampling::rng(seed);
            let idx = sampling::sorted_subset(&mut rng, pairs.len(), samples);
            let sel: Vec<_> = idx.into_iter().map(|i| pairs[i]).collect();
            let info = Sampling {
                samples,
                population: pairs.len(),
                seed,
            };
            (sel, Some(info))
        }
        _ => (pairs.clone(), None),
    };

    let mut v22 = AxiomVerdict::new(AxiomId::TwoTwo, 0, None);
    let mut v23 = AxiomVerdict::new(AxiomId::TwoThree, 0, None);
    for &(a, b) in &selected {
        let (bracket, pencil) = m.bracket_and_pencil(a, b).expect("pair is incident");
        let mut sigma = bracket.clone();
        sigma.difference_with(&pencil);

        if v22.passed() {
            for c in sigma.ones() {
                v22.cases += 1;
                let mut flat = bracket.clone();
                flat.intersect_with(m.row(c));
                if let Some((x, y)) = m.first_skew_pair_in(&flat) {
                    v22.status = Status::Fail;
                    v22.counterexample = Some(Witness::SkewPairInFlat { a, b, c, x, y });
                    break;
                }
            }
        }

        if v23.passed() {
            'pairs: for x in bracket.ones() {
                let mut partners = bracket.clone();
                partners.difference_with(m.row(x));
                for y in partners.ones().filter(|&y| y > x) {
                    v23.cases += 1;
                    let mut union = m.row(x).clone();
                    union.union_with(m.row(y));
                    let mut missing = bracket.clone();
                    missing.difference_with(&union);
                    if let Some(line) = missing.ones().next() {
                        v23.status = Status::Fail;
                        v23.counterexample = Some(Witness::UnionMissesLine { a, b, x, y, line });
                        break 'pairs;
                    }
                }
            }
        }

        if !v22.passed() && !v23.passed() {
            break;
        }
    }
    v22.sampling = sampling;
    v23.sampling = sampling;
    [v21, v22, v23]
}

/// Every flat has a disjoint partner.
pub fn check_axiom3(catalog: &FlatCatalog) -> AxiomVerdict {
    let flats = catalog.flats();
    let mut cases = 0;
    for f in flats {
        cases += 1;
        if !flats.iter().any(|g| f.is_disjoint(g)) {
            return AxiomVerdict::new(
                AxiomId::Three,
                cases,
                Some(Witness::NoDisjointFlat { flat: f.id }),
            );
        }
    }
    AxiomVerdict::new(AxiomId::Three, cases, None)
}

/// Any two POINT flats meet, and any two PLANE flats meet. Requires a
/// labelled catalog.
pub fn check_axiom4(catalog: &FlatCatalog) -> Result<[AxiomVerdict; 2], FlatError> {
    if !catalog.is_labelled() {
        return Err(FlatError::Unlabeled);
    }
    let verdict = |kind: FlatKind, axiom: AxiomId| {
        let same: Vec<_> = catalog.of_kind(kind).collect();
        let mut cases = 0;
        for (i, f) in same.iter().enumerate() {
            for g in &same[i + 1..] {
                cases += 1;
                if f.is_disjoint(g) {
                    let w = Witness::DisjointSameKind {
                        flat1: f.id,
                        flat2: g.id,
                    };
                    return AxiomVerdict::new(axiom, cases, Some(w));
                }
            }
        }
        AxiomVerdict::new(axiom, cases, None)
    };
    Ok([
        verdict(FlatKind::Point, AxiomId::FourPoint),
        verdict(FlatKind::Plane, AxiomId::FourPlane),
    ])
}

/// Axiom 4 without kinds: looks for two incident pairs whose flats are
/// mutually disjoint, which defeats every labelling. Without such a pair
/// the clause is not decidable here.
pub fn check_axiom4_unlabelled(
    m: &IncidenceStructure,
    catalog: &FlatCatalog,
    why: &FlatError,
) -> [AxiomVerdict; 2] {
    let mut seen = std::collections::BTreeMap::new();
    for (a, b) in m.pairs() {
        if let Some(mut ids) = catalog.pair_flat_ids(a, b) {
            ids.sort_unstable();
            seen.entry(ids).or_insert((a, b));
        }
    }
    let keys: Vec<_> = seen.iter().collect();
    let mut cases = 0;
    for (i, (k1, &(a, b))) in keys.iter().enumerate() {
        for (k2, &(p, q)) in &keys[i + 1..] {
            cases += 1;
            let all_disjoint = k1.iter().all(|&f| {
                k2.iter()
                    .all(|&g| catalog.flat(f).is_disjoint(catalog.flat(g)))
            });
            if all_disjoint {
                let w = Witness::DisjointPairFlats { a, b, p, q };
                return [
                    AxiomVerdict::new(AxiomId::FourPoint, cases, Some(w.clone())),
                    AxiomVerdict::new(AxiomId::FourPlane, cases, Some(w)),
                ];
            }
        }
    }
    let reason = Witness::KindsUnavailable {
        reason: why.to_string(),
    };
    [
        AxiomVerdict::not_applicable(AxiomId::FourPoint, reason.clone()),
        AxiomVerdict::not_applicable(AxiomId::FourPlane, reason),
    ]
}

/// All verdicts plus whatever catalog could be built along the way.
#[derive(Debug, Clone)]
pub struct AxiomRun {
    pub verdicts: Vec<AxiomVerdict>,
    /// The labelled catalog, or why it could not be produced.
    pub catalog: Result<FlatCatalog, FlatError>,
}

impl AxiomRun {
    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(AxiomVerdict::passed)
    }

    pub fn verdict(&self, axiom: AxiomId) -> &AxiomVerdict {
        self.verdicts
            .iter()
            .find(|v| v.axiom == axiom)
            .expect("every axiom has a verdict")
    }
}

pub fn check_all(m: &IncidenceStructure, opts: &AxiomOptions) -> AxiomRun {
    let mut verdicts = vec![check_axiom1(m)];
    verdicts.extend(check_axiom2(m, opts));
    let catalog = match flats::catalog_flats(m) {
        Ok(raw) => {
            verdicts.push(check_axiom3(&raw));
            match flats::bipartition_flats(&raw) {
                Ok(labelled) => {
                    verdicts.extend(check_axiom4(&labelled).expect("catalog is labelled"));
                    Ok(labelled)
                }
                Err(e) => {
                    verdicts.extend(check_axiom4_unlabelled(m, &raw, &e));
                    Err(e)
                }
            }
        }
        Err(e) => {
            let reason = match &e {
                FlatError::NotAnEquivalence { a, b, reason } => Witness::SigmaNotTwoClass {
                    a: *a,
                    b: *b,
                    reason: *reason,
                },
                other => Witness::KindsUnavailable {
                    reason: other.to_string(),
                },
            };
            for axiom in [AxiomId::Three, AxiomId::FourPoint, AxiomId::FourPlane] {
                verdicts.push(AxiomVerdict::not_applicable(axiom, reason.clone()));
            }
            Err(e)
        }
    };
    AxiomRun { verdicts, catalog }
}
