//! Concrete models of PG(3,q) over a prime field.
//!
//! Lines are points of the Klein quadric, written in Plücker coordinates
//! `(p01, p02, p03, p23, p31, p12)` and scaled so the first nonzero entry
//! is 1. Line ids are positions in the lexicographic order of these
//! canonical tuples.
//!
//! The [`GroundTruth`] computed here (which lines pass through each point,
//! which lines lie in each plane) is never read by the abstract pipeline;
//! it exists so tests can compare the coordinate-free reconstruction
//! against the coordinates.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{FieldElement, PrimeField};
use crate::incidence::{IncidenceStructure, LineSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Pg3Error {
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("points coincide; they do not span a line")]
    DegeneratePoints,
    #[error("coordinates from different fields")]
    FieldMismatch,
    #[error("coordinates do not satisfy the Plücker relation")]
    NotOnQuadric,
}

/// Scale so the first nonzero coordinate is 1; `None` for the zero vector.
fn canonicalize<const N: usize>(mut v: [FieldElement; N]) -> Option<[FieldElement; N]> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let scale = lead.inv().ok()?;
    for x in v.iter_mut() {
        *x = *x * scale;
    }
    Some(v)
}

fn same_field<const N: usize>(v: &[FieldElement; N]) -> bool {
    v.iter().all(|x| x.modulus() == v[0].modulus())
}

/// A point of PG(3,q) with canonical homogeneous coordinates. Planes are
/// represented by the same type, read as the coefficients of `u·x = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [FieldElement; 4],
}

impl ProjPoint {
    pub fn new(coords: [FieldElement; 4]) -> Result<Self, Pg3Error> {
        if !same_field(&coords) {
            return Err(Pg3Error::FieldMismatch);
        }
        let coords = canonicalize(coords).ok_or(Pg3Error::ZeroVector)?;
        Ok(Self { coords })
    }

    pub fn coords(&self) -> [FieldElement; 4] {
        self.coords
    }

    pub fn values(&self) -> [u32; 4] {
        self.coords.map(|x| x.value())
    }

    pub fn dot(&self, other: &ProjPoint) -> FieldElement {
        self.coords
            .iter()
            .zip(other.coords.iter())
            .fold(self.coords[0].zero(), |acc, (a, b)| acc + *a * *b)
    }
}

/// Canonical Plücker coordinates `(p01, p02, p03, p23, p31, p12)` of a line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PluckerLine {
    p: [FieldElement; 6],
}

impl PluckerLine {
    /// Validates and canonicalizes raw coordinates.
    pub fn new(p: [FieldElement; 6]) -> Result<Self, Pg3Error> {
        if !same_field(&p) {
            return Err(Pg3Error::FieldMismatch);
        }
        let p = canonicalize(p).ok_or(Pg3Error::ZeroVector)?;
        let line = Self { p };
        if !line.on_quadric() {
            return Err(Pg3Error::NotOnQuadric);
        }
        Ok(line)
    }

    pub fn coords(&self) -> [FieldElement; 6] {
        self.p
    }

    pub fn values(&self) -> [u32; 6] {
        self.p.map(|x| x.value())
    }

    /// `p01·p23 + p02·p31 + p03·p12 = 0`.
    pub fn on_quadric(&self) -> bool {
        let p = &self.p;
        (p[0] * p[3] + p[1] * p[4] + p[2] * p[5]).is_zero()
    }

    /// The antisymmetric 4×4 matrix `m[i][j] = p_ij`.
    fn matrix(&self) -> [[FieldElement; 4]; 4] {
        let [p01, p02, p03, p23, p31, p12] = self.p;
        let z = p01.zero();
        [
            [z, p01, p02, p03],
            [-p01, z, p12, -p31],
            [-p02, -p12, z, p23],
            [-p03, p31, -p23, z],
        ]
    }

    /// `X` lies on the line iff `X ∧ P ∧ Q = 0`.
    pub fn contains_point(&self, x: &ProjPoint) -> bool {
        let m = self.matrix();
        let x = x.coords();
        const TRIPLES: [(usize, usize, usize); 4] = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
        TRIPLES
            .iter()
            .all(|&(i, j, k)| (x[i] * m[j][k] + x[j] * m[k][i] + x[k] * m[i][j]).is_zero())
    }

    /// The plane `u` contains the line iff `u` annihilates both spanning
    /// points, i.e. `Σ_i u_i p_ij = 0` for every `j`.
    pub fn lies_in_plane(&self, u: &ProjPoint) -> bool {
        let m = self.matrix();
        let u = u.coords();
        (0..4).all(|j| {
            let z = u[0].zero();
            (0..4).fold(z, |acc, i| acc + u[i] * m[i][j]).is_zero()
        })
    }
}

/// All `q³+q²+q+1` points of PG(3,q) in lexicographic order.
pub fn enumerate_points(field: PrimeField) -> Vec<ProjPoint> {
    let q = field.modulus() as u64;
    let mut out = Vec::new();
    for idx in 0..q.pow(4) {
        let digits = [idx / q.pow(3), idx / q.pow(2) % q, idx / q % q, idx % q];
        let coords = digits.map(|d| field.elem(d));
        // Lexicographic order over all tuples keeps canonical ones sorted.
        if coords.iter().find(|x| !x.is_zero()).map(|x| x.value()) == Some(1) {
            out.push(ProjPoint { coords });
        }
    }
    out
}

/// The line through two distinct points: `p_ij = P_i Q_j − P_j Q_i`.
pub fn line_from_points(a: &ProjPoint, b: &ProjPoint) -> Result<PluckerLine, Pg3Error> {
    let (p, q) = (a.coords(), b.coords());
    if p[0].modulus() != q[0].modulus() {
        return Err(Pg3Error::FieldMismatch);
    }
    let w = |i: usize, j: usize| p[i] * q[j] - p[j] * q[i];
    let raw = [w(0, 1), w(0, 2), w(0, 3), w(2, 3), w(3, 1), w(1, 2)];
    let p = canonicalize(raw).ok_or(Pg3Error::DegeneratePoints)?;
    Ok(PluckerLine { p })
}

/// All `(q²+1)(q²+q+1)` lines, sorted by canonical coordinates.
///
/// Enumerated as the canonical points of the Klein quadric, so the line
/// list does not depend on point enumeration.
pub fn enumerate_lines(field: PrimeField) -> Vec<PluckerLine> {
    let q = field.modulus() as u64;
    let mut out = Vec::new();
    for idx in 0..q.pow(6) {
        let mut digits = [0u64; 6];
        let mut rest = idx;
        for d in digits.iter_mut().rev() {
            *d = rest % q;
            rest /= q;
        }
        let p = digits.map(|d| field.elem(d));
        if p.iter().find(|x| !x.is_zero()).map(|x| x.value()) != Some(1) {
            continue;
        }
        let line = PluckerLine { p };
        if line.on_quadric() {
            out.push(line);
        }
    }
    out
}

/// Polarized Plücker form; zero iff the lines meet. Reflexive because every
/// line lies on the quadric.
pub fn lines_incident(l: &PluckerLine, m: &PluckerLine) -> Result<bool, Pg3Error> {
    if l.p[0].modulus() != m.p[0].modulus() {
        return Err(Pg3Error::FieldMismatch);
    }
    let (a, b) = (&l.p, &m.p);
    let form = a[0] * b[3] + a[1] * b[4] + a[2] * b[5] + a[3] * b[0] + a[4] * b[1] + a[5] * b[2];
    Ok(form.is_zero())
}

/// Swaps the two coordinate halves. This is the correlation induced by the
/// standard dot product, so it sends the lines through a point to the
/// lines in a plane.
pub fn dual_line(l: &PluckerLine) -> PluckerLine {
    let [p01, p02, p03, p23, p31, p12] = l.p;
    PluckerLine::new([p23, p31, p12, p01, p02, p03]).expect("quadric is symmetric in the halves")
}

/// Which lines pass through each point and lie in each plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    /// Indexed like `points`.
    pub stars: Vec<LineSet>,
    /// Indexed like `planes`.
    pub plane_sets: Vec<LineSet>,
}

impl GroundTruth {
    /// Lines common to a point-star and a plane-set.
    pub fn pencil(&self, point: usize, plane: usize) -> LineSet {
        self.stars[point].intersection(&self.plane_sets[plane])
    }
}

/// A generated PG(3,q) with its coordinates, abstract structure and ground
/// truth.
#[derive(Debug, Clone)]
pub struct Pg3Model {
    pub field: PrimeField,
    pub points: Vec<ProjPoint>,
    /// Plane coordinates `u` (the plane `u·x = 0`), lexicographic.
    pub planes: Vec<ProjPoint>,
    pub lines: Vec<PluckerLine>,
    pub structure: IncidenceStructure,
    pub ground_truth: GroundTruth,
}

pub fn build_model(field: PrimeField) -> Pg3Model {
    let points = enumerate_points(field);
    let planes = points.clone();
    let lines = enumerate_lines(field);
    let structure = IncidenceStructure::from_fn(lines.len(), |i, j| {
        lines_incident(&lines[i], &lines[j]).expect("one field")
    });
    let stars = points
        .iter()
        .map(|x| LineSet::new((0..lines.len()).filter(|&l| lines[l].contains_point(x))))
        .collect();
    let plane_sets = planes
        .iter()
        .map(|u| LineSet::new((0..lines.len()).filter(|&l| lines[l].lies_in_plane(u))))
        .collect();
    Pg3Model {
        field,
        points,
        planes,
        lines,
        structure,
        ground_truth: GroundTruth { stars, plane_sets },
    }
}

impl Pg3Model {
    pub fn q(&self) -> u32 {
        self.field.modulus()
    }

    pub fn line_id(&self, line: &PluckerLine) -> Option<usize> {
        self.lines.binary_search(line).ok()
    }

    /// `perm[i]` is the id of the dual of line `i`.
    pub fn dual_permutation(&self) -> Vec<usize> {
        self.lines
            .iter()
            .map(|l| {
                self.line_id(&dual_line(l))
                    .expect("dual of a line is a line")
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u32) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn pt(f: PrimeField, v: [u64; 4]) -> ProjPoint {
        ProjPoint::new(v.map(|x| f.elem(x))).unwrap()
    }

    fn line(f: PrimeField, v: [u64; 6]) -> PluckerLine {
        PluckerLine::new(v.map(|x| f.elem(x))).unwrap()
    }

    #[test]
    fn line_from_axis_points() {
        let f = field(3);
        let l = line_from_points(&pt(f, [1, 0, 0, 0]), &pt(f, [0, 1, 0, 0])).unwrap();
        assert_eq!(l.values(), [1, 0, 0, 0, 0, 0]);
        let l = line_from_points(&pt(f, [1, 0, 0, 0]), &pt(f, [0, 0, 0, 1])).unwrap();
        assert_eq!(l.values(), [0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn line_from_equal_points_is_degenerate() {
        let f = field(5);
        let p = pt(f, [1, 2, 3, 4]);
        let scaled = pt(f, [2, 4, 1, 3]);
        assert_eq!(line_from_points(&p, &p), Err(Pg3Error::DegeneratePoints));
        assert_eq!(
            line_from_points(&p, &scaled),
            Err(Pg3Error::DegeneratePoints)
        );
    }

    #[test]
    fn axis_line_incidence() {
        let f = field(2);
        let a = line(f, [1, 0, 0, 0, 0, 0]);
        let b = line(f, [0, 1, 0, 0, 0, 0]);
        let c = line(f, [0, 0, 0, 1, 0, 0]);
        assert!(lines_incident(&a, &b).unwrap());
        assert!(!lines_incident(&a, &c).unwrap());
        assert!(lines_incident(&a, &a).unwrap());
        let other = line(field(3), [1, 0, 0, 0, 0, 0]);
        assert_eq!(lines_incident(&a, &other), Err(Pg3Error::FieldMismatch));
    }

    #[test]
    fn dual_of_axis_line() {
        let f = field(2);
        assert_eq!(
            dual_line(&line(f, [1, 0, 0, 0, 0, 0])).values(),
            [0, 0, 0, 1, 0, 0]
        );
    }

    #[test]
    fn rejects_off_quadric_coordinates() {
        let f = field(3);
        assert_eq!(
            PluckerLine::new([1, 0, 0, 1, 0, 0].map(|x| f.elem(x))),
            Err(Pg3Error::NotOnQuadric)
        );
        assert_eq!(PluckerLine::new([f.zero(); 6]), Err(Pg3Error::ZeroVector));
    }

    #[test]
    fn spanned_points_lie_on_their_line() {
        let f = field(3);
        let pts = enumerate_points(f);
        for (i, a) in pts.iter().enumerate().step_by(3) {
            for b in pts.iter().skip(i + 1).step_by(5) {
                let l = line_from_points(a, b).unwrap();
                assert!(l.on_quadric());
                assert!(l.contains_point(a) && l.contains_point(b));
            }
        }
    }

    #[test]
    fn model_counts() {
        for (q, n_pts, n_lines, star) in [(2, 15, 35, 7), (3, 40, 130, 13)] {
            let m = build_model(field(q));
            assert_eq!(m.points.len(), n_pts);
            assert_eq!(m.lines.len(), n_lines);
            assert_eq!(m.structure.len(), n_lines);
            assert!(m.ground_truth.stars.iter().all(|s| s.len() == star));
            assert!(m.ground_truth.plane_sets.iter().all(|s| s.len() == star));
        }
    }

    #[test]
    fn dual_permutation_is_an_involution() {
        let m = build_model(field(2));
        let perm = m.dual_permutation();
        for (i, &j) in perm.iter().enumerate() {
            assert_eq!(perm[j], i);
        }
    }
}
