//! Shared test helpers, including a brute-force model of PG(3,q) built from
//! point sets with plain integer arithmetic. It shares no code with the
//! Plücker construction in the library and serves as the oracle for it.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use tetrad::flats::{labelled_catalog, FlatCatalog};
use tetrad::incidence::IncidenceStructure;
use tetrad::pg3::{build_model, line_from_points, Pg3Model};
use tetrad::tetra::TripleClass;
use tetrad::PrimeField;

pub fn pg(q: u32) -> (Pg3Model, FlatCatalog) {
    let model = build_model(PrimeField::new(q).unwrap());
    let catalog = labelled_catalog(&model.structure).unwrap();
    (model, catalog)
}

/// The structure induced on `ids`, relabelled `0..ids.len()`.
pub fn induced(m: &IncidenceStructure, ids: &[usize]) -> IncidenceStructure {
    IncidenceStructure::from_fn(ids.len(), |i, j| m.incident(ids[i], ids[j]))
}

/// Lines of PG(3,3) lying in one plane: the line structure of PG(2,3).
pub fn planar_pg23() -> IncidenceStructure {
    let (model, _) = pg(3);
    let plane = model.ground_truth.plane_sets[0].as_slice().to_vec();
    assert_eq!(plane.len(), 13);
    induced(&model.structure, &plane)
}

fn normalize(mut v: [u32; 4], q: u32) -> Option<[u32; 4]> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = (1..q).find(|&k| lead * k % q == 1).unwrap();
    for x in v.iter_mut() {
        *x = *x * inv % q;
    }
    Some(v)
}

pub struct Geometry {
    pub q: u32,
    pub points: Vec<[u32; 4]>,
    pub planes: Vec<[u32; 4]>,
    /// Each line as the sorted indices of its points.
    pub lines: Vec<Vec<usize>>,
    /// Indices of the planes containing each line.
    pub line_planes: Vec<Vec<usize>>,
}

impl Geometry {
    pub fn new(q: u32) -> Self {
        let mut points = BTreeSet::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    for d in 0..q {
                        if let Some(p) = normalize([a, b, c, d], q) {
                            points.insert(p);
                        }
                    }
                }
            }
        }
        let points: Vec<[u32; 4]> = points.into_iter().collect();
        let index: HashMap<[u32; 4], usize> =
            points.iter().enumerate().map(|(i, p)| (*p, i)).collect();

        let mut lines = BTreeSet::new();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let (p, r) = (points[i], points[j]);
                let mut span = BTreeSet::new();
                for s in 0..q {
                    for t in 0..q {
                        let v = [0, 1, 2, 3].map(|k| (s * p[k] + t * r[k]) % q);
                        if let Some(v) = normalize(v, q) {
                            span.insert(index[&v]);
                        }
                    }
                }
                lines.insert(span.into_iter().collect::<Vec<_>>());
            }
        }
        let lines: Vec<Vec<usize>> = lines.into_iter().collect();

        let planes = points.clone();
        let on = |u: &[u32; 4], x: &[u32; 4]| (0..4).map(|k| u[k] * x[k]).sum::<u32>() % q == 0;
        let line_planes = lines
            .iter()
            .map(|l| {
                (0..planes.len())
                    .filter(|&u| l.iter().all(|&x| on(&planes[u], &points[x])))
                    .collect()
            })
            .collect();
        Self {
            q,
            points,
            planes,
            lines,
            line_planes,
        }
    }

    pub fn meet(&self, a: usize, b: usize) -> bool {
        self.lines[a].iter().any(|x| self.lines[b].contains(x))
    }

    pub fn concurrent(&self, ids: &[usize]) -> bool {
        self.lines[ids[0]]
            .iter()
            .any(|x| ids[1..].iter().all(|&l| self.lines[l].contains(x)))
    }

    pub fn coplanar(&self, ids: &[usize]) -> bool {
        self.line_planes[ids[0]]
            .iter()
            .any(|u| ids[1..].iter().all(|&l| self.line_planes[l].contains(u)))
    }

    pub fn triple_class(&self, x: usize, y: usize, z: usize) -> TripleClass {
        if !(self.meet(x, y) && self.meet(y, z) && self.meet(x, z)) {
            return TripleClass::NotPairwiseIncident;
        }
        match (self.concurrent(&[x, y, z]), self.coplanar(&[x, y, z])) {
            (true, true) => TripleClass::FlatPencil,
            (false, true) => TripleClass::PlaneTriad,
            (true, false) => TripleClass::PointTriad,
            (false, false) => unreachable!("pairwise-meeting lines are concurrent or coplanar"),
        }
    }

    /// Lines through each point.
    pub fn stars(&self) -> Vec<BTreeSet<usize>> {
        (0..self.points.len())
            .map(|x| {
                (0..self.lines.len())
                    .filter(|&l| self.lines[l].contains(&x))
                    .collect()
            })
            .collect()
    }

    /// Lines in each plane.
    pub fn plane_sets(&self) -> Vec<BTreeSet<usize>> {
        (0..self.planes.len())
            .map(|u| {
                (0..self.lines.len())
                    .filter(|&l| self.line_planes[l].contains(&u))
                    .collect()
            })
            .collect()
    }

    /// `map[i]` is the library id of oracle line `i`, found through the
    /// Plücker coordinates of two of its points.
    pub fn library_ids(&self, model: &Pg3Model) -> Vec<usize> {
        let f = model.field;
        let proj = |x: usize| {
            tetrad::pg3::ProjPoint::new(self.points[x].map(|c| f.elem(c as u64))).unwrap()
        };
        self.lines
            .iter()
            .map(|l| {
                let line = line_from_points(&proj(l[0]), &proj(l[1])).unwrap();
                model.line_id(&line).expect("spanned line is enumerated")
            })
            .collect()
    }
}
