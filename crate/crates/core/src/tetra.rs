//! Triads, tetrads, their diagonals and the harmonicity axiom.
//!
//! Three pairwise-incident lines `x, y, z` form a triad when
//! `z ∈ Σ(x, y)`. Since `Σ(x, y)` splits as the PLANE flat `x ⊼ y` and the
//! POINT flat `x ⊻ y` minus their common pencil, the type of the triad is
//! read off from which of the two flats of `(x, y)` contains `z`. All
//! three rotations of the condition are evaluated and must agree.
//!
//! A tetrad is four pairwise-incident lines whose four triples are triads.
//! A PLANE tetrad `o, p, q, r` has diagonals
//! `a = (o ⊻ p) ∩ (q ⊻ r)`, `b = (o ⊻ q) ∩ (r ⊻ p)`, `c = (o ⊻ r) ∩ (p ⊻ q)`;
//! a POINT tetrad uses `⊼` instead. Harmonicity holds for a tetrad when its
//! diagonals form a triad of the same type.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flats::{flat_intersection, FlatCatalog, FlatError, FlatKind};
use crate::incidence::{IncidenceError, IncidenceStructure, LineSet};
use crate::sampling;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TetraError {
    #[error(transparent)]
    Flat(#[from] FlatError),
    #[error("line ids must be pairwise distinct: {0:?}")]
    NotDistinct(Vec<usize>),
    #[error("triad conditions disagree for ({0}, {1}, {2})")]
    EquivalenceBroken(usize, usize, usize),
    #[error("quadruple {0:?} contains triads of both types")]
    MixedTriadTypes([usize; 4]),
    #[error("{lines:?} is not a tetrad ({class})")]
    NotATetrad { lines: [usize; 4], class: QuadClass },
    #[error("diagonal {pairing} of {lines:?} is not a single line ({size} lines)")]
    NonSingletonIntersection {
        lines: [usize; 4],
        pairing: char,
        size: usize,
    },
    #[error(
        "diagonals {diagonals:?} of {lines:?} are not distinct from each other and the tetrad"
    )]
    DiagonalsNotDistinct {
        lines: [usize; 4],
        diagonals: [usize; 3],
    },
    #[error("degenerate quadrangle: {0}")]
    DegenerateQuadrangle(String),
    #[error("flat {flat} is not a {expected} flat")]
    WrongFlatKind { flat: usize, expected: FlatKind },
    #[error("section plane {zeta} passes through the common point {vertex}")]
    PlaneThroughVertex { zeta: usize, vertex: usize },
    #[error("section of {tetrad:?} by plane {zeta} is {class}, not a PLANE tetrad")]
    SectionNotTetrad {
        tetrad: [usize; 4],
        zeta: usize,
        class: QuadClass,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TripleClass {
    NotPairwiseIncident,
    FlatPencil,
    PlaneTriad,
    PointTriad,
}

impl TripleClass {
    pub fn triad_kind(self) -> Option<FlatKind> {
        match self {
            TripleClass::PlaneTriad => Some(FlatKind::Plane),
            TripleClass::PointTriad => Some(FlatKind::Point),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QuadClass {
    NotPairwiseIncident,
    FlatPencil,
    PlaneTetrad,
    PointTetrad,
    /// Pairwise incident, some but not all triples are triads.
    Partial,
}

impl QuadClass {
    pub fn tetrad_kind(self) -> Option<FlatKind> {
        match self {
            QuadClass::PlaneTetrad => Some(FlatKind::Plane),
            QuadClass::PointTetrad => Some(FlatKind::Point),
            _ => None,
        }
    }
}

macro_rules! screaming_display {
    ($ty:ty) => {
        impl std::fmt::Display for $ty {
            fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
                let s = serde_json::to_value(self).expect("unit variant");
                f.write_str(s.as_str().expect("string"))
            }
        }
    };
}
screaming_display!(TripleClass);
screaming_display!(QuadClass);

fn check_ids(catalog: &FlatCatalog, ids: &[usize]) -> Result<(), TetraError> {
    if !catalog.is_labelled() {
        return Err(FlatError::Unlabeled.into());
    }
    let n = catalog.line_count();
    for &id in ids {
        if id >= n {
            return Err(FlatError::from(IncidenceError::OutOfRange { id, n }).into());
        }
    }
    for (i, a) in ids.iter().enumerate() {
        if ids[i + 1..].contains(a) {
            return Err(TetraError::NotDistinct(ids.to_vec()));
        }
    }
    Ok(())
}

/// Where `z` sits relative to the two flats of the incident pair `(x, y)`.
#[inline]
fn membership(catalog: &FlatCatalog, x: usize, y: usize, z: usize) -> Option<TripleClass> {
    let [point, plane] = catalog.pair_flat_ids(x, y)?;
    let in_point = catalog.flat(point).contains(z);
    let in_plane = catalog.flat(plane).contains(z);
    match (in_point, in_plane) {
        (true, true) => Some(TripleClass::FlatPencil),
        (false, true) => Some(TripleClass::PlaneTriad),
        (true, false) => Some(TripleClass::PointTriad),
        (false, false) => None,
    }
}

/// Classification without id validation; ids must be distinct and in range.
pub(crate) fn classify_triple_unchecked(
    m: &IncidenceStructure,
    catalog: &FlatCatalog,
    x: usize,
    y: usize,
    z: usize,
) -> Result<TripleClass, TetraError> {
    if !(m.incident(x, y) && m.incident(y, z) && m.incident(x, z)) {
        return Ok(TripleClass::NotPairwiseIncident);
    }
    let broken = || TetraError::EquivalenceBroken(x, y, z);
    let first = membership(catalog, x, y, z).ok_or_else(broken)?;
    let second = membership(catalog, y, z, x).ok_or_else(broken)?;
    let third = membership(catalog, z, x, y).ok_or_else(broken)?;
    if first != second || second != third {
        return Err(broken());
    }
    Ok(first)
}

pub fn classify_triple(
    x: usize,
    y: usize,
    z: usize,
    m: &IncidenceStructure,
    catalog: &FlatCatalog,
) -> Result<TripleClass, TetraError> {
    check_ids(catalog, &[x, y, z])?;
    classify_triple_unchecked(m, catalog, x, y, z)
}

/// The class together with the kind of any triad found.
pub(crate) fn classify_quadruple_unchecked(
    m: &IncidenceStructure,
    catalog: &FlatCatalog,
    t: [usize; 4],
) -> Result<(QuadClass, Option<FlatKind>), TetraError> {
    let [o, p, q, r] = t;
    for (i, &a) in t.iter().enumerate() {
        for &b in &t[i + 1..] {
            if !m.incident(a, b) {
                return Ok((QuadClass::NotPairwiseIncident, None));
            }
        }
    }
    let triples = [(p, q, r), (o, q, r), (o, r, p), (o, p, q)];
    let (mut planes, mut points) = (0, 0);
    for (x, y, z) in triples {
        match classify_triple_unchecked(m, catalog, x, y, z)? {
            TripleClass::PlaneTriad => planes += 1,
            TripleClass::PointTriad => points += 1,
            _ => {}
        }
    }
    let class = match (planes, points) {
        (0, 0) => return Ok((QuadClass::FlatPencil, None)),
        (pl, pt) if pl > 0 && pt > 0 => return Err(TetraError::MixedTriadTypes(t)),
        (4, 0) => QuadClass::PlaneTetrad,
        (0, 4) => QuadClass::PointTetrad,
        _ => QuadClass::Partial,
    };
    let kind = if planes > 0 {
        FlatKind::Plane
    } else {
        FlatKind::Point
    };
    Ok((class, Some(kind)))
}

pub fn classify_quadruple(
    t: [usize; 4],
    m: &IncidenceStructure,
    catalog: &FlatCatalog,
) -> Result<QuadClass, TetraError> {
    check_ids(catalog, &t)?;
    Ok(classify_quadruple_unchecked(m, catalog, t)?.0)
}

/// A tetrad, its type, its three diagonals and the class of the diagonals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalTriple {
    pub tetrad: [usize; 4],
    pub kind: FlatKind,
    pub diagonals: [usize; 3],
    pub diagonal_class: TripleClass,
}

impl DiagonalTriple {
    /// The harmonicity condition: diagonals form a triad of the tetrad's type.
    pub fn is_harmonic(&self) -> bool {
        self.diagonal_class.triad_kind() == Some(self.kind)
    }
}

fn diagonals_for_kind(
    m: &IncidenceStructure,
    catalog: &FlatCatalog,
    t: [usize; 4],
    kind: FlatKind,
) -> Result<DiagonalTriple, TetraError> {
    let [o, p, q, r] = t;
    // Plane tetrads pair lines through their common points, point tetrads
    // through their common planes.
    let via = kind.opposite();
    let pairings = [
        ('a', (o, p), (q, r)),
        ('b', (o, q), (r, p)),
        ('c', (o, r), (p, q)),
    ];
    let mut diagonals = [0usize; 3];
    for (slot, (name, (x1, y1), (x2, y2))) in diagonals.iter_mut().zip(pairings) {
        let f = catalog
            .flat_of_kind(x1, y1, via)
            .expect("tetrad lines are incident");
        let g = catalog
            .flat_of_kind(x2, y2, via)
            .expect("tetrad lines are incident");
        let common = flat_intersection(catalog.flat(f), catalog.flat(g));
        if common.len() != 1 {
            return Err(TetraError::NonSingletonIntersection {
                lines: t,
                pairing: name,
                size: common.len(),
            });
        }
        *slot = common.as_slice()[0];
    }
    let mut seven: Vec<usize> = t.iter().chain(diagonals.iter()).copied().collect();
    seven.sort_unstable();
    seven.dedup();
    if seven.len() != 7 {
        return Err(TetraError::DiagonalsNotDistinct {
            lines: t,
            diagonals,
        });
    }
    let [a, b, c] = diagonals;
    let diagonal_class = classify_triple_unchecked(m, catalog, a, b, c)?;
    Ok(DiagonalTriple {
        tetrad: t,
        kind,
        diagonals,
        diagonal_class,
    })
}

pub fn diagonals_of_tetrad(
    t: [usize; 4],
    m: &IncidenceStructure,
    catalog: &FlatCatalog,
) -> Result<DiagonalTriple, TetraError> {
    check_ids(catalog, &t)?;
    let (class, _) = classify_quadruple_unchecked(m, catalog, t)?;
    let kind = class
        .tetrad_kind()
        .ok_or(TetraError::NotATetrad { lines: t, class })?;
    diagonals_for_kind(m, catalog, t, kind)
}

/// The diagonals of `t` and whether they form a triad of like type.
pub fn check_harmonic(
    t: [usize; 4],
    m: &IncidenceStructure,
    catalog: &FlatCatalog,
) -> Result<(DiagonalTriple, bool), TetraError> {
    let d = diagonals_of_tetrad(t, m, catalog)?;
    Ok((d, d.is_harmonic()))
}

/// How quadruples are drawn for a survey.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum SurveyMode {
    /// Every quadruple of lines. Only pairwise-incident quadruples are
    /// enumerated; the rest are counted as NOT_PAIRWISE_INCIDENT.
    Exhaustive,
    /// Every 4-subset of every flat.
    PerFlat,
    /// `samples` random 4-subsets of uniformly chosen flats.
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum HarmonicVerdict {
    AllHold,
    NoneHold,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct QuadCensus {
    pub not_pairwise_incident: u64,
    pub flat_pencil: u64,
    pub plane_tetrad: u64,
    pub point_tetrad: u64,
    pub partial: u64,
    pub mixed_triad_types: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeSummary {
    pub tetrads: u64,
    pub holding: u64,
    pub failing: u64,
    pub verdict: HarmonicVerdict,
    pub holding_exemplar: Option<DiagonalTriple>,
    pub failing_exemplar: Option<DiagonalTriple>,
}

impl TypeSummary {
    fn new() -> Self {
        Self {
            tetrads: 0,
            holding: 0,
            failing: 0,
            verdict: HarmonicVerdict::AllHold,
            holding_exemplar: None,
            failing_exemplar: None,
        }
    }

    fn record(&mut self, d: DiagonalTriple) {
        self.tetrads += 1;
        if d.is_harmonic() {
            self.holding += 1;
            self.holding_exemplar.get_or_insert(d);
        } else {
            self.failing += 1;
            self.failing_exemplar.get_or_insert(d);
        }
        // An empty population holds vacuously.
        self.verdict = match (self.holding, self.failing) {
            (_, 0) => HarmonicVerdict::AllHold,
            (0, _) => HarmonicVerdict::NoneHold,
            _ => HarmonicVerdict::Mixed,
        };
    }
}

/// Violation counter for a derived theorem checked along the survey.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TheoremCheck {
    pub cases: u64,
    pub violations: u64,
    pub first_violation: Option<Vec<usize>>,
}

impl TheoremCheck {
    fn record(&mut self, ok: bool, lines: &[usize]) {
        self.cases += 1;
        if !ok {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(lines.to_vec());
            }
        }
    }

    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TheoremChecks {
    /// Quadruples with a triad lie in one flat of that kind and have no
    /// triad of the other kind.
    pub pretetrad: TheoremCheck,
    /// Quadruples without a triad lie in the flat pencil of any two of
    /// their lines.
    pub flat_pencil: TheoremCheck,
    /// Tetrad diagonals exist, are unique, and are distinct from each other
    /// and from the tetrad.
    pub diagonals: TheoremCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarmonicityReport {
    pub mode: SurveyMode,
    pub quadruples_examined: u64,
    pub census: QuadCensus,
    pub plane: TypeSummary,
    pub point: TypeSummary,
    /// The PLANE and POINT verdicts coincide.
    pub verdicts_agree: bool,
    /// Both verdicts are ALL_HOLD.
    pub axiom_h_holds: bool,
    pub theorems: TheoremChecks,
}

struct Survey<'a> {
    m: &'a IncidenceStructure,
    catalog: &'a FlatCatalog,
    examined: u64,
    census: QuadCensus,
    plane: TypeSummary,
    point: TypeSummary,
    theorems: TheoremChecks,
}

impl<'a> Survey<'a> {
    fn visit(&mut self, t: [usize; 4]) {
        self.examined += 1;
        let (class, triad_kind) = match classify_quadruple_unchecked(self.m, self.catalog, t) {
            Ok(c) => c,
            Err(TetraError::MixedTriadTypes(_)) => {
                self.census.mixed_triad_types += 1;
                self.theorems.pretetrad.record(false, &t);
                return;
            }
            Err(_) => {
                // Broken triad equivalence also refutes the pretetrad claim.
                self.theorems.pretetrad.record(false, &t);
                return;
            }
        };
        match class {
            QuadClass::NotPairwiseIncident => self.census.not_pairwise_incident += 1,
            QuadClass::FlatPencil => self.census.flat_pencil += 1,
            QuadClass::PlaneTetrad => self.census.plane_tetrad += 1,
            QuadClass::PointTetrad => self.census.point_tetrad += 1,
            QuadClass::Partial => self.census.partial += 1,
        }
        let [o, p, ..] = t;
        match (class, triad_kind) {
            (QuadClass::NotPairwiseIncident, _) => return,
            (QuadClass::FlatPencil, _) => {
                let [point, plane] = self.catalog.pair_flat_ids(o, p).expect("incident");
                let pencil = |x: usize| {
                    self.catalog.flat(point).contains(x) && self.catalog.flat(plane).contains(x)
                };
                let ok = t.iter().all(|&x| pencil(x));
                self.theorems.flat_pencil.record(ok, &t);
                return;
            }
            (_, Some(kind)) => {
                let f = self.catalog.flat_of_kind(o, p, kind).expect("incident");
                let ok = t.iter().all(|&x| self.catalog.flat(f).contains(x));
                self.theorems.pretetrad.record(ok, &t);
            }
            (_, None) => unreachable!("triad-bearing classes carry a kind"),
        }
        let Some(kind) = class.tetrad_kind() else {
            return;
        };
        match diagonals_for_kind(self.m, self.catalog, t, kind) {
            Ok(d) => {
                self.theorems.diagonals.record(true, &t);
                match kind {
                    FlatKind::Plane => self.plane.record(d),
                    FlatKind::Point => self.point.record(d),
                }
            }
            Err(_) => self.theorems.diagonals.record(false, &t),
        }
    }

    fn finish(self, mode: SurveyMode) -> HarmonicityReport {
        let verdicts_agree = self.plane.verdict == self.point.verdict;
        let axiom_h_holds = self.plane.verdict == HarmonicVerdict::AllHold
            && self.point.verdict == HarmonicVerdict::AllHold;
        HarmonicityReport {
            mode,
            quadruples_examined: self.examined,
            census: self.census,
            plane: self.plane,
            point: self.point,
            verdicts_agree,
            axiom_h_holds,
            theorems: self.theorems,
        }
    }
}

fn choose4(k: u64) -> u64 {
    if k < 4 {
        0
    } else {
        k * (k - 1) * (k - 2) * (k - 3) / 24
    }
}

/// Visits every 4-subset of `lines` in lexicographic order.
pub fn for_each_quadruple(lines: &[usize], mut f: impl FnMut([usize; 4])) {
    let k = lines.len();
    for i in 0..k {
        for j in i + 1..k {
            for l in j + 1..k {
                for s in l + 1..k {
                    f([lines[i], lines[j], lines[l], lines[s]]);
                }
            }
        }
    }
}

/// Surveys tetrads and their diagonals. Requires a labelled catalog.
pub fn survey_harmonicity(
    m: &IncidenceStructure,
    catalog: &FlatCatalog,
    mode: SurveyMode,
) -> Result<HarmonicityReport, TetraError> {
    if !catalog.is_labelled() {
        return Err(FlatError::Unlabeled.into());
    }
    let mut s = Survey {
        m,
        catalog,
        examined: 0,
        census: QuadCensus::default(),
        plane: TypeSummary::new(),
        point: TypeSummary::new(),
        theorems: TheoremChecks::default(),
    };
    match mode {
        SurveyMode::Exhaustive => {
            let n = m.len();
            for o in 0..n {
                let mut after_o = m.row(o).clone();
                after_o.remove_range(..o + 1);
                for p in after_o.ones() {
                    let mut after_p = after_o.clone();
                    after_p.intersect_with(m.row(p));
                    after_p.remove_range(..p + 1);
                    for q in after_p.ones() {
                        let mut after_q = after_p.clone();
                        after_q.intersect_with(m.row(q));
                        after_q.remove_range(..q + 1);
                        for r in after_q.ones() {
                            s.visit([o, p, q, r]);
                        }
                    }
                }
            }
            let skipped = choose4(n as u64) - s.examined;
            s.census.not_pairwise_incident += skipped;
            s.examined += skipped;
        }
        SurveyMode::PerFlat => {
            for flat in catalog.flats() {
                for_each_quadruple(flat.lines.as_slice(), |t| s.visit(t));
            }
        }
        SurveyMode::Sampled { samples, seed } => {
            let mut rng = sampling::rng(seed);
            let eligible: Vec<&LineSet> = catalog
                .flats()
                .iter()
                .map(|f| &f.lines)
                .filter(|l| l.len() >= 4)
                .collect();
            if !eligible.is_empty() {
                for _ in 0..samples {
                    let fi = sampling::sorted_subset(&mut rng, eligible.len(), 1)[0];
                    let lines = eligible[fi].as_slice();
                    let idx = sampling::sorted_subset(&mut rng, lines.len(), 4);
                    s.visit([lines[idx[0]], lines[idx[1]], lines[idx[2]], lines[idx[3]]]);
                }
            }
        }
    }
    Ok(s.finish(mode))
}

/// Counts of every unordered triple of distinct lines by class.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TripleCensus {
    pub total: u64,
    pub not_pairwise_incident: u64,
    pub flat_pencil: u64,
    pub plane_triad: u64,
    pub point_triad: u64,
    /// Triples whose three triad conditions disagree.
    pub equivalence_broken: u64,
}

/// Classifies all `C(n, 3)` triples; only pairwise-incident ones are
/// enumerated.
pub fn triple_census(
    m: &IncidenceStructure,
    catalog: &FlatCatalog,
) -> Result<TripleCensus, TetraError> {
    if !catalog.is_labelled() {
        return Err(FlatError::Unlabeled.into());
    }
    let n = m.len() as u64;
    let mut c = TripleCensus {
        total: n * n.saturating_sub(1) * n.saturating_sub(2) / 6,
        ..TripleCensus::default()
    };
    let mut incident = 0;
    for (x, y) in m.pairs() {
        let mut common = m.row(x).clone();
        common.intersect_with(m.row(y));
        for z in common.ones().filter(|&z| z > y) {
            incident += 1;
            match classify_triple_unchecked(m, catalog, x, y, z) {
                Ok(TripleClass::FlatPencil) => c.flat_pencil += 1,
                Ok(TripleClass::PlaneTriad) => c.plane_triad += 1,
                Ok(TripleClass::PointTriad) => c.point_triad += 1,
                Ok(TripleClass::NotPairwiseIncident) => unreachable!("enumerated incident"),
                Err(_) => c.equivalence_broken += 1,
            }
        }
    }
    c.not_pairwise_incident = c.total - incident;
    Ok(c)
}

/// The single line two POINT flats (or two PLANE flats) share.
fn common_line(catalog: &FlatCatalog, f: usize, g: usize) -> Option<usize> {
    let common = flat_intersection(catalog.flat(f), catalog.flat(g));
    (common.len() == 1).then(|| common.as_slice()[0])
}

fn expect_kind(catalog: &FlatCatalog, flat: usize, kind: FlatKind) -> Result<(), TetraError> {
    if flat >= catalog.len() || catalog.flat(flat).kind != Some(kind) {
        return Err(TetraError::WrongFlatKind {
            flat,
            expected: kind,
        });
    }
    Ok(())
}

/// Whether the diagonal points `A = OP·QR`, `B = OQ·RP`, `C = OR·PQ` of the
/// complete quadrangle with vertices `O, P, Q, R` (POINT flat ids) lie on a
/// common line.
pub fn quadrangle_diagonal_points_collinear(
    vertices: [usize; 4],
    catalog: &FlatCatalog,
) -> Result<bool, TetraError> {
    if !catalog.is_labelled() {
        return Err(FlatError::Unlabeled.into());
    }
    for &v in &vertices {
        expect_kind(catalog, v, FlatKind::Point)?;
    }
    let degenerate = |msg: String| TetraError::DegenerateQuadrangle(msg);
    let mut side = [[0usize; 4]; 4];
    for i in 0..4 {
        for j in i + 1..4 {
            let (x, y) = (vertices[i], vertices[j]);
            let l = common_line(catalog, x, y)
                .ok_or_else(|| degenerate(format!("vertices {x} and {y} share no single line")))?;
            side[i][j] = l;
            side[j][i] = l;
        }
    }
    for (i, j, k) in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)] {
        if catalog.flat(vertices[k]).contains(side[i][j]) {
            return Err(degenerate(format!(
                "vertices {}, {}, {} are collinear",
                vertices[i], vertices[j], vertices[k]
            )));
        }
    }
    let [o, p, q, r] = [0, 1, 2, 3];
    let mut diag = [0usize; 3];
    for (slot, (l1, l2)) in diag.iter_mut().zip([
        (side[o][p], side[q][r]),
        (side[o][q], side[r][p]),
        (side[o][r], side[p][q]),
    ]) {
        *slot = catalog
            .flat_of_kind(l1, l2, FlatKind::Point)
            .ok_or_else(|| degenerate(format!("sides {l1} and {l2} do not meet")))?;
    }
    let [a, b, c] = diag;
    let mut common = catalog.flat(a).bits().clone();
    common.intersect_with(catalog.flat(b).bits());
    common.intersect_with(catalog.flat(c).bits());
    Ok(!common.is_clear())
}

/// A POINT tetrad cut by a plane not through its common point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneSection {
    pub tetrad: [usize; 4],
    pub zeta: usize,
    /// POINT flats where `o, p, q, r, a, b, c` meet the plane.
    pub points: [usize; 7],
    /// The quadrilateral `AP, PB, BQ, QA`, a PLANE tetrad in the plane.
    pub sides: [usize; 4],
}

/// The POINT flat through `line` that lies on the PLANE flat `zeta`.
fn trace_on_plane(catalog: &FlatCatalog, line: usize, zeta: usize) -> Option<usize> {
    let plane = catalog.flat(zeta);
    let mut hits = catalog
        .flats_containing(line)
        .filter(|f| f.kind == Some(FlatKind::Point) && !f.is_disjoint(plane))
        .map(|f| f.id);
    let first = hits.next()?;
    hits.next().is_none().then_some(first)
}

pub fn section_by_plane(
    tetrad: [usize; 4],
    zeta: usize,
    m: &IncidenceStructure,
    catalog: &FlatCatalog,
) -> Result<PlaneSection, TetraError> {
    check_ids(catalog, &tetrad)?;
    expect_kind(catalog, zeta, FlatKind::Plane)?;
    let (class, _) = classify_quadruple_unchecked(m, catalog, tetrad)?;
    if class != QuadClass::PointTetrad {
        return Err(TetraError::NotATetrad {
            lines: tetrad,
            class,
        });
    }
    let [o, p, q, r] = tetrad;
    let vertex = catalog
        .flat_of_kind(o, p, FlatKind::Point)
        .expect("incident");
    if !catalog.flat(vertex).is_disjoint(catalog.flat(zeta)) {
        return Err(TetraError::PlaneThroughVertex { zeta, vertex });
    }
    let d = diagonals_for_kind(m, catalog, tetrad, FlatKind::Point)?;
    let [a, b, c] = d.diagonals;
    let mut points = [0usize; 7];
    for (slot, line) in points.iter_mut().zip([o, p, q, r, a, b, c]) {
        *slot = trace_on_plane(catalog, line, zeta).ok_or_else(|| {
            TetraError::DegenerateQuadrangle(format!("line {line} has no unique trace on {zeta}"))
        })?;
    }
    let [_, pp, qq, _, aa, bb, _] = points;
    let mut sides = [0usize; 4];
    for (slot, (x, y)) in sides
        .iter_mut()
        .zip([(aa, pp), (pp, bb), (bb, qq), (qq, aa)])
    {
        *slot = common_line(catalog, x, y).ok_or_else(|| {
            TetraError::DegenerateQuadrangle(format!("points {x} and {y} share no single line"))
        })?;
    }
    let (class, _) = if sides
        .iter()
        .enumerate()
        .any(|(i, s)| sides[i + 1..].contains(s))
    {
        (QuadClass::FlatPencil, None)
    } else {
        classify_quadruple_unchecked(m, catalog, sides)?
    };
    if class != QuadClass::PlaneTetrad {
        return Err(TetraError::SectionNotTetrad {
            tetrad,
            zeta,
            class,
        });
    }
    Ok(PlaneSection {
        tetrad,
        zeta,
        points,
        sides,
    })
}
