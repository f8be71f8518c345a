//! Variety points over GF(q) and its extensions, grouped into Frobenius orbits.

use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::gf::{Elem, Extension, Field, FieldError};
use crate::poly::Poly;

/// Default limit on the number of candidate tuples tested per degree.
pub const DEFAULT_SEARCH_CAP: u64 = 1 << 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PointError {
    #[error("searching {candidates} candidate points exceeds the cap {cap}")]
    SearchCap { candidates: u128, cap: u64 },
    #[error("degree {degree} does not divide the extension degree {extension}")]
    DegreeNotDividing { degree: u32, extension: u32 },
    #[error("no point of degree {degree} with index {index} (only {available})")]
    IndexOutOfRange {
        degree: u32,
        index: usize,
        available: usize,
    },
    #[error("requests {first} and {second} name conjugate points")]
    OrbitCollision { first: usize, second: usize },
    #[error("generators must share one polynomial ring over the base field")]
    RingMismatch,
    #[error("point degree must be at least 1")]
    ZeroDegree,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A point with coordinates in the compositum field, its exact degree over
/// GF(q) and its Frobenius orbit (starting at the point itself).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationPoint {
    pub coords: Vec<Elem>,
    pub degree: u32,
    pub orbit: Vec<Vec<Elem>>,
}

impl EvaluationPoint {
    fn new(ext: &Extension, coords: Vec<Elem>) -> Self {
        let degree = coords.iter().map(|&c| ext.element_degree(c)).fold(1, lcm);
        let mut orbit = vec![coords.clone()];
        for _ in 1..degree {
            let next = orbit.last().unwrap().iter().map(|&c| ext.frobenius(c)).collect();
            orbit.push(next);
        }
        Self { coords, degree, orbit }
    }

    /// Minimal-encoding member of the orbit.
    pub fn representative(&self) -> &[Elem] {
        self.orbit.iter().min().unwrap()
    }

    pub fn encodings(&self) -> Vec<u32> {
        self.coords.iter().map(|c| c.0).collect()
    }
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn check_ring(gens: &[Poly], base: &Field) -> Result<(), PointError> {
    match gens.first() {
        Some(g) if **g.ring().field() != *base => Err(PointError::RingMismatch),
        Some(g) if gens.iter().any(|h| !Arc::ptr_eq(h.ring(), g.ring())) => Err(PointError::RingMismatch),
        _ => Ok(()),
    }
}

fn num_vars(gens: &[Poly]) -> Option<usize> {
    gens.first().map(|g| g.ring().num_vars())
}

/// Odometer over `values^m`, invoking `f` on every tuple.
fn for_each_tuple(values: &[Elem], m: usize, mut f: impl FnMut(&[Elem])) {
    if values.is_empty() {
        return;
    }
    let mut idx = vec![0usize; m];
    let mut tuple = vec![values[0]; m];
    loop {
        f(&tuple);
        let mut i = m;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < values.len() {
                tuple[i] = values[idx[i]];
                break;
            }
            idx[i] = 0;
            tuple[i] = values[0];
        }
    }
}

fn check_cap(size: u64, m: usize, cap: u64) -> Result<(), PointError> {
    let candidates = (size as u128).pow(m as u32);
    if candidates > cap as u128 {
        return Err(PointError::SearchCap { candidates, cap });
    }
    Ok(())
}

/// Common zeros of `gens` in GF(q)^m, sorted by coordinate encoding.
pub fn rational_points(gens: &[Poly], cap: u64) -> Result<Vec<Vec<Elem>>, PointError> {
    let Some(m) = num_vars(gens) else {
        return Ok(Vec::new());
    };
    let field = gens[0].ring().field().clone();
    check_ring(gens, &field)?;
    check_cap(field.size() as u64, m, cap)?;
    let values: Vec<Elem> = field.elements().collect();
    let mut out = Vec::new();
    for_each_tuple(&values, m, |p| {
        if gens.iter().all(|g| g.eval(p).is_zero()) {
            out.push(p.to_vec());
        }
    });
    Ok(out)
}

/// All zeros of `gens` with coordinates in the subfield GF(q^d) of `ext`,
/// in encoding order.
pub fn zeros_in_subfield(gens: &[Poly], ext: &Extension, d: u32, cap: u64) -> Result<Vec<Vec<Elem>>, PointError> {
    if d == 0 {
        return Err(PointError::ZeroDegree);
    }
    if !ext.degree().is_multiple_of(d) {
        return Err(PointError::DegreeNotDividing {
            degree: d,
            extension: ext.degree(),
        });
    }
    let Some(m) = num_vars(gens) else {
        return Ok(Vec::new());
    };
    check_ring(gens, ext.base())?;
    check_cap(ext.base_size().pow(d), m, cap)?;
    let values = ext.subfield_elements(d);
    let emb = ext.embedding();
    let mut out = Vec::new();
    for_each_tuple(&values, m, |p| {
        if gens.iter().all(|g| g.evaluate(p, emb).is_ok_and(|v| v.is_zero())) {
            out.push(p.to_vec());
        }
    });
    Ok(out)
}

/// One representative per Frobenius orbit of exact degree `d`, each the
/// minimal-encoding member of its orbit, sorted.
pub fn points_of_degree(gens: &[Poly], ext: &Extension, d: u32, cap: u64) -> Result<Vec<EvaluationPoint>, PointError> {
    let mut reps = BTreeSet::new();
    for p in zeros_in_subfield(gens, ext, d, cap)? {
        let pt = EvaluationPoint::new(ext, p);
        if pt.degree == d {
            reps.insert(pt.representative().to_vec());
        }
    }
    Ok(reps.into_iter().map(|r| EvaluationPoint::new(ext, r)).collect())
}

/// Which rational points to use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RationalChoice {
    All,
    /// Indices into the sorted rational point list.
    Indices(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PointRequest {
    pub degree: u32,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSelection {
    pub rational: RationalChoice,
    pub extra: Vec<PointRequest>,
}

impl PointSelection {
    pub fn all_rational() -> Self {
        Self {
            rational: RationalChoice::All,
            extra: Vec::new(),
        }
    }

    /// lcm of 1 and the requested degrees.
    pub fn compositum_degree(&self) -> u32 {
        self.extra.iter().map(|r| r.degree).fold(1, lcm)
    }
}

/// Selected points together with the compositum they live in.
#[derive(Debug, Clone)]
pub struct SelectedPoints {
    pub ext: Arc<Extension>,
    pub points: Vec<EvaluationPoint>,
}

impl SelectedPoints {
    pub fn degrees(&self) -> Vec<u32> {
        self.points.iter().map(|p| p.degree).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Σ deg P_i, the number of points over the compositum.
    pub fn total_degree(&self) -> u32 {
        self.points.iter().map(|p| p.degree).sum()
    }

    /// Every conjugate of every selected point, in selection order.
    pub fn conjugates(&self) -> Vec<Vec<Elem>> {
        self.points.iter().flat_map(|p| p.orbit.iter().cloned()).collect()
    }
}

/// Resolves `sel` against the zeros of `gens` (a basis of the generic ideal).
/// Rational points come first in encoding order, then the extra requests in
/// the order given.
pub fn select_points(gens: &[Poly], sel: &PointSelection, cap: u64) -> Result<SelectedPoints, PointError> {
    let base = gens.first().ok_or(PointError::RingMismatch)?.ring().field().clone();
    if sel.extra.iter().any(|r| r.degree == 0) {
        return Err(PointError::ZeroDegree);
    }
    let ext = Arc::new(Extension::new(base, sel.compositum_degree())?);
    let rational = points_of_degree(gens, &ext, 1, cap)?;
    let mut points = match &sel.rational {
        RationalChoice::All => rational,
        RationalChoice::Indices(ix) => {
            let mut chosen = Vec::with_capacity(ix.len());
            for (pos, &i) in ix.iter().enumerate() {
                if let Some(first) = ix[..pos].iter().position(|&j| j == i) {
                    return Err(PointError::OrbitCollision { first, second: pos });
                }
                let p = rational.get(i).ok_or(PointError::IndexOutOfRange {
                    degree: 1,
                    index: i,
                    available: rational.len(),
                })?;
                chosen.push(p.clone());
            }
            chosen
        }
    };
    let rational_count = points.len();
    let mut cache: Vec<(u32, Vec<EvaluationPoint>)> = Vec::new();
    for (pos, req) in sel.extra.iter().enumerate() {
        let list = match cache.iter().find(|(d, _)| *d == req.degree) {
            Some((_, l)) => l,
            None => {
                cache.push((req.degree, points_of_degree(gens, &ext, req.degree, cap)?));
                &cache.last().unwrap().1
            }
        };
        let p = list.get(req.index).ok_or(PointError::IndexOutOfRange {
            degree: req.degree,
            index: req.index,
            available: list.len(),
        })?;
        if let Some(first) = points.iter().position(|q| q.orbit.contains(&p.coords)) {
            return Err(PointError::OrbitCollision {
                first,
                second: rational_count + pos,
            });
        }
        points.push(p.clone());
    }
    Ok(SelectedPoints { ext, points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Embedding, FieldSpec};
    use crate::poly::{PolyRing, WeightedOrder};

    fn gf4() -> Arc<Field> {
        Arc::new(Field::new(FieldSpec::new(2, 2, vec![1, 1, 1])).unwrap())
    }

    fn curve() -> Vec<Poly> {
        let r = PolyRing::new(gf4(), vec!["X".into(), "Y".into()], WeightedOrder::scalar(&[5, 6])).unwrap();
        vec![r.parse("X^6+Y^5+Y").unwrap()]
    }

    #[test]
    fn eight_rational_points() {
        let pts = rational_points(&curve(), DEFAULT_SEARCH_CAP).unwrap();
        let enc: Vec<(u32, u32)> = pts.iter().map(|p| (p[0].0, p[1].0)).collect();
        // α = 2, α² = 3 in GF(2)[Z]/(Z²+Z+1).
        assert_eq!(
            enc,
            vec![(0, 0), (0, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)]
        );
        let ext = Extension::new(gf4(), 1).unwrap();
        let d1: Vec<Vec<Elem>> = points_of_degree(&curve(), &ext, 1, DEFAULT_SEARCH_CAP)
            .unwrap()
            .into_iter()
            .map(|p| p.coords)
            .collect();
        assert_eq!(d1, pts);
    }

    #[test]
    fn no_degree_two_points() {
        let ext = Extension::new(gf4(), 2).unwrap();
        assert!(points_of_degree(&curve(), &ext, 2, DEFAULT_SEARCH_CAP)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn degree_three_orbit_of_one_beta_cubed() {
        let ext = Extension::new(gf4(), 3).unwrap();
        let gf8 = Arc::new(Field::new(FieldSpec::new(2, 3, vec![1, 1, 0, 1])).unwrap());
        let beta = Embedding::new(gf8, ext.field().clone()).unwrap().embed(Elem(2));
        let f = ext.field();
        assert_eq!(f.pow(beta, 3), f.add(beta, Elem::ONE));
        let target = vec![Elem::ONE, f.pow(beta, 3)];
        let pts = points_of_degree(&curve(), &ext, 3, DEFAULT_SEARCH_CAP).unwrap();
        let hit = pts.iter().position(|p| p.orbit.contains(&target)).unwrap();
        assert_eq!(hit, 0);
        let mut ys: Vec<Elem> = pts[0].orbit.iter().map(|p| p[1]).collect();
        ys.sort();
        let mut want = vec![f.pow(beta, 3), f.pow(beta, 5), f.pow(beta, 6)];
        want.sort();
        assert_eq!(ys, want);
    }

    #[test]
    fn orbits_are_frobenius_closed() {
        let ext = Extension::new(gf4(), 3).unwrap();
        for p in points_of_degree(&curve(), &ext, 3, DEFAULT_SEARCH_CAP).unwrap() {
            assert_eq!(p.orbit.len(), 3);
            for q in &p.orbit {
                let img: Vec<Elem> = q.iter().map(|&c| ext.frobenius(c)).collect();
                assert!(p.orbit.contains(&img));
            }
        }
    }

    #[test]
    fn counting_identity() {
        for dd in 1..=3u32 {
            let ext = Extension::new(gf4(), dd).unwrap();
            let total = zeros_in_subfield(&curve(), &ext, dd, DEFAULT_SEARCH_CAP).unwrap().len();
            let by_orbits: usize = (1..=dd)
                .filter(|d| dd % d == 0)
                .map(|d| d as usize * points_of_degree(&curve(), &ext, d, DEFAULT_SEARCH_CAP).unwrap().len())
                .sum();
            assert_eq!(total, by_orbits, "D = {dd}");
        }
    }

    #[test]
    fn selection() {
        let sel = PointSelection {
            rational: RationalChoice::All,
            extra: vec![PointRequest { degree: 3, index: 0 }],
        };
        let s = select_points(&curve(), &sel, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(s.degrees(), vec![1, 1, 1, 1, 1, 1, 1, 1, 3]);
        assert_eq!(s.ext.degree(), 3);
        let again = select_points(&curve(), &sel, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(s.points, again.points);
        let only = select_points(&curve(), &PointSelection::all_rational(), DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(only.degrees(), vec![1; 8]);
    }

    #[test]
    fn selection_errors() {
        let twice = PointSelection {
            rational: RationalChoice::All,
            extra: vec![
                PointRequest { degree: 3, index: 0 },
                PointRequest { degree: 3, index: 0 },
            ],
        };
        assert!(matches!(
            select_points(&curve(), &twice, DEFAULT_SEARCH_CAP),
            Err(PointError::OrbitCollision { first: 8, second: 9 })
        ));
        let dup_rational = PointSelection {
            rational: RationalChoice::All,
            extra: vec![PointRequest { degree: 1, index: 2 }],
        };
        assert!(matches!(
            select_points(&curve(), &dup_rational, DEFAULT_SEARCH_CAP),
            Err(PointError::OrbitCollision { .. })
        ));
        let far = PointSelection {
            rational: RationalChoice::Indices(vec![0, 9]),
            extra: vec![],
        };
        assert!(matches!(
            select_points(&curve(), &far, DEFAULT_SEARCH_CAP),
            Err(PointError::IndexOutOfRange { index: 9, .. })
        ));
        assert!(matches!(
            rational_points(&curve(), 10),
            Err(PointError::SearchCap { .. })
        ));
    }
}
