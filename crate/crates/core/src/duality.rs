//! Checks that a permutation of the lines acts as a duality: an involution
//! preserving incidence that exchanges POINT and PLANE flats, triad types,
//! tetrad types, and carries diagonals to diagonals with the same
//! harmonicity verdict.
//!
//! The checks only see the permutation, so any coordinate-free map can be
//! tested; for PG(3,q) the permutation comes from
//! [`Pg3Model::dual_permutation`](crate::pg3::Pg3Model::dual_permutation).

use serde::{Deserialize, Serialize};

use crate::flats::{FlatCatalog, FlatKind};
use crate::incidence::{IncidenceStructure, LineSet};
use crate::sampling;
use crate::tetra::{
    classify_quadruple_unchecked, classify_triple_unchecked, diagonals_of_tetrad,
    for_each_quadruple, QuadClass, TripleClass,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scope", rename_all = "kebab-case")]
pub enum DualityScope {
    /// Every pairwise-incident triple, every 4-subset of every flat.
    Exhaustive,
    /// `per_flat` random triples and quadruples inside each flat.
    Sampled { per_flat: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub passed: bool,
    pub cases: u64,
    pub violations: u64,
    pub first_violation: Option<Vec<usize>>,
}

impl PropertyCheck {
    fn new() -> Self {
        Self {
            passed: true,
            ..Self::default()
        }
    }

    fn record(&mut self, ok: bool, witness: &[usize]) {
        self.cases += 1;
        if !ok {
            self.passed = false;
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(witness.to_vec());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub scope: DualityScope,
    pub involution: PropertyCheck,
    pub incidence_preserved: PropertyCheck,
    pub flat_kinds_swapped: PropertyCheck,
    pub triad_types_swapped: PropertyCheck,
    pub tetrad_types_swapped: PropertyCheck,
    pub harmonicity_invariant: PropertyCheck,
    pub all_passed: bool,
}

pub fn swap_triple(c: TripleClass) -> TripleClass {
    match c {
        TripleClass::PlaneTriad => TripleClass::PointTriad,
        TripleClass::PointTriad => TripleClass::PlaneTriad,
        other => other,
    }
}

pub fn swap_quad(c: QuadClass) -> QuadClass {
    match c {
        QuadClass::PlaneTetrad => QuadClass::PointTetrad,
        QuadClass::PointTetrad => QuadClass::PlaneTetrad,
        other => other,
    }
}

struct Checker<'a> {
    perm: &'a [usize],
    m: &'a IncidenceStructure,
    catalog: &'a FlatCatalog,
    triads: PropertyCheck,
    tetrads: PropertyCheck,
    harmonic: PropertyCheck,
}

impl Checker<'_> {
    fn triple(&mut self, x: usize, y: usize, z: usize) {
        let p = self.perm;
        let before = classify_triple_unchecked(self.m, self.catalog, x, y, z);
        let after = classify_triple_unchecked(self.m, self.catalog, p[x], p[y], p[z]);
        let ok = matches!((before, after), (Ok(b), Ok(a)) if swap_triple(b) == a);
        self.triads.record(ok, &[x, y, z]);
    }

    fn quadruple(&mut self, t: [usize; 4]) {
        let p = self.perm;
        let image = t.map(|x| p[x]);
        let before = classify_quadruple_unchecked(self.m, self.catalog, t).map(|c| c.0);
        let after = classify_quadruple_unchecked(self.m, self.catalog, image).map(|c| c.0);
        let (Ok(before), Ok(after)) = (before, after) else {
            self.tetrads.record(false, &t);
            return;
        };
        self.tetrads.record(swap_quad(before) == after, &t);
        if before.tetrad_kind().is_none() {
            return;
        }
        let d = diagonals_of_tetrad(t, self.m, self.catalog);
        let e = diagonals_of_tetrad(image, self.m, self.catalog);
        let ok = match (d, e) {
            (Ok(d), Ok(e)) => {
                let mapped = LineSet::new(d.diagonals.map(|x| p[x]));
                mapped == LineSet::new(e.diagonals) && d.is_harmonic() == e.is_harmonic()
            }
            _ => false,
        };
        self.harmonic.record(ok, &t);
    }
}

/// Runs every duality property for the line permutation `perm`.
pub fn check_duality(
    perm: &[usize],
    m: &IncidenceStructure,
    catalog: &FlatCatalog,
    scope: DualityScope,
) -> DualityReport {
    let n = m.len();
    assert!(
        perm.len() == n && perm.iter().all(|&j| j < n),
        "permutation must map every line to a line"
    );

    let mut involution = PropertyCheck::new();
    for (i, &j) in perm.iter().enumerate() {
        involution.record(perm[j] == i, &[i]);
    }
    let mut incidence_preserved = PropertyCheck::new();
    if involution.passed {
        for i in 0..n {
            for j in i + 1..n {
                incidence_preserved
                    .record(m.incident(i, j) == m.incident(perm[i], perm[j]), &[i, j]);
            }
        }
    }

    let mut flat_kinds_swapped = PropertyCheck::new();
    for f in catalog.flats() {
        let image = LineSet::new(f.lines.iter().map(|x| perm[x]));
        let ok = catalog
            .find(&image)
            .is_some_and(|g| catalog.flat(g).kind == f.kind.map(FlatKind::opposite));
        flat_kinds_swapped.record(ok, &[f.id]);
    }

    let mut c = Checker {
        perm,
        m,
        catalog,
        triads: PropertyCheck::new(),
        tetrads: PropertyCheck::new(),
        harmonic: PropertyCheck::new(),
    };
    if involution.passed && incidence_preserved.passed {
        match scope {
            DualityScope::Exhaustive => {
                for (x, y) in m.pairs() {
                    let mut common = m.row(x).clone();
                    common.intersect_with(m.row(y));
                    for z in common.ones().filter(|&z| z > y) {
                        c.triple(x, y, z);
                    }
                }
                for f in catalog.flats() {
                    for_each_quadruple(f.lines.as_slice(), |t| c.quadruple(t));
                }
            }
            DualityScope::Sampled { per_flat, seed } => {
                let mut rng = sampling::rng(seed);
                for f in catalog.flats() {
                    let lines = f.lines.as_slice();
                    if lines.len() < 4 {
                        continue;
                    }
                    for _ in 0..per_flat {
                        let i = sampling::sorted_subset(&mut rng, lines.len(), 3);
                        c.triple(lines[i[0]], lines[i[1]], lines[i[2]]);
                        let i = sampling::sorted_subset(&mut rng, lines.len(), 4);
                        c.quadruple([lines[i[0]], lines[i[1]], lines[i[2]], lines[i[3]]]);
                    }
                }
            }
        }
    }
    let Checker {
        triads,
        tetrads,
        harmonic,
        ..
    } = c;
    let all_passed = [
        &involution,
        &incidence_preserved,
        &flat_kinds_swapped,
        &triads,
        &tetrads,
        &harmonic,
    ]
    .iter()
    .all(|p| p.passed);
    DualityReport {
        scope,
        involution,
        incidence_preserved,
        flat_kinds_swapped,
        triad_types_swapped: triads,
        tetrad_types_swapped: tetrads,
        harmonicity_invariant: harmonic,
        all_passed,
    }
}
