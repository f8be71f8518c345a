//! Reduced Gröbner bases, normal forms, footprints and the
//! Buchberger–Möller algorithm for vanishing ideals of point sets.

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::gf::Elem;
use crate::poly::{Monomial, Poly, PolyRing, Weight};

/// Basis size at which Buchberger's algorithm gives up.
pub const DEFAULT_BASIS_CAP: usize = 2_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("the generator list is empty or all generators are zero")]
    Empty,
    #[error("generators belong to different rings")]
    MixedRings,
    #[error("basis grew beyond {0} elements")]
    BasisCap(usize),
    #[error("the footprint is infinite")]
    InfiniteFootprint,
    #[error("variable {0} has zero weight and no bounding pure power; weight window is infinite")]
    UnboundedWindow(usize),
    #[error("point {0} is listed twice")]
    DuplicatePoint(usize),
    #[error("point {index} has {got} coordinates, expected {expected}")]
    PointDimension { index: usize, expected: usize, got: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Buchberger,
    BuchbergerMoller,
}

/// A reduced Gröbner basis, sorted by increasing leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    polys: Vec<Poly>,
    provenance: Provenance,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().filter_map(|g| g.lm().cloned()).collect()
    }

    /// Remainder of `f` on division by the basis; supported on the footprint.
    pub fn normal_form(&self, f: &Poly) -> Poly {
        reduce(f, &self.polys)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Whether every S-polynomial of basis pairs reduces to zero.
    pub fn is_groebner(&self) -> bool {
        (0..self.polys.len()).all(|i| {
            (i + 1..self.polys.len()).all(|j| {
                self.normal_form(&s_polynomial(&self.polys[i], &self.polys[j]))
                    .is_zero()
            })
        })
    }

    pub fn footprint(&self) -> Footprint {
        Footprint::new(self.ring.clone(), self.leading_monomials())
    }
}

/// `lcm/lt(f) · f − lcm/lt(g) · g`.
pub fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let field = f.ring().field();
    let (fm, gm) = (f.lm().expect("nonzero"), g.lm().expect("nonzero"));
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm).unwrap(), field.inv(f.lc().unwrap()).unwrap());
    let b = g.mul_term(&l.div(gm).unwrap(), field.inv(g.lc().unwrap()).unwrap());
    &a - &b
}

/// Full reduction of `f` by `basis` (first divisor in list order wins).
fn reduce(f: &Poly, basis: &[Poly]) -> Poly {
    let field = f.ring().field().clone();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, Elem)> = Vec::new();
    while let Some((m, c)) = p.terms.first().cloned() {
        match basis.iter().find(|g| g.lm().is_some_and(|l| l.divides(&m))) {
            Some(g) => {
                let q = m.div(g.lm().unwrap()).unwrap();
                let coef = field.neg(field.div(c, g.lc().unwrap()));
                p = p.add_scaled(&g.mul_term(&q, Elem::ONE), coef);
            }
            None => {
                p.terms.remove(0);
                rem.push((m, c));
            }
        }
    }
    Poly {
        ring: f.ring().clone(),
        terms: rem,
    }
}

pub fn buchberger(gens: &[Poly]) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with_cap(gens, DEFAULT_BASIS_CAP)
}

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// of leading monomials first, ties by pair index), the coprime-leading-
/// monomial criterion, and full inter-reduction at the end.
pub fn buchberger_with_cap(gens: &[Poly], cap: usize) -> Result<GroebnerBasis, GroebnerError> {
    let ring = gens.first().ok_or(GroebnerError::Empty)?.ring().clone();
    if gens.iter().any(|g| **g.ring() != *ring) {
        return Err(GroebnerError::MixedRings);
    }
    let ord = ring.order().clone();
    let mut basis: Vec<Poly> = gens.iter().filter(|g| !g.is_zero()).map(Poly::monic).collect();
    if basis.is_empty() {
        return Err(GroebnerError::Empty);
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while !pairs.is_empty() {
        let lcm_of = |&(i, j): &(usize, usize)| basis[i].lm().unwrap().lcm(basis[j].lm().unwrap());
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                ord.compare(&lcm_of(&pairs[a]), &lcm_of(&pairs[b]))
                    .then(pairs[a].cmp(&pairs[b]))
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        if basis[i].lm().unwrap().is_coprime(basis[j].lm().unwrap()) {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if r.is_zero() {
            continue;
        }
        let n = basis.len();
        basis.push(r.monic());
        if basis.len() > cap {
            return Err(GroebnerError::BasisCap(cap));
        }
        pairs.extend((0..n).map(|i| (i, n)));
    }
    Ok(GroebnerBasis {
        polys: interreduce(basis),
        ring,
        provenance: Provenance::Buchberger,
    })
}

fn interreduce(mut basis: Vec<Poly>) -> Vec<Poly> {
    let ord = basis[0].ring().order().clone();
    basis.sort_by(|a, b| ord.compare(a.lm().unwrap(), b.lm().unwrap()));
    let mut minimal: Vec<Poly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lm().unwrap().divides(g.lm().unwrap())) {
            minimal.push(g);
        }
    }
    (0..minimal.len())
        .map(|i| {
            let others: Vec<Poly> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, g)| g.clone())
                .collect();
            reduce(&minimal[i], &others).monic()
        })
        .collect()
}

/// Standard monomials of an ideal: those divisible by no leading monomial.
#[derive(Debug, Clone)]
pub struct Footprint {
    ring: Arc<PolyRing>,
    leading: Vec<Monomial>,
    monomials: Option<Vec<Monomial>>,
}

impl Footprint {
    pub fn new(ring: Arc<PolyRing>, leading: Vec<Monomial>) -> Self {
        let mut fp = Self {
            ring,
            leading,
            monomials: None,
        };
        let bounds = fp.pure_power_bounds();
        if bounds.iter().all(Option::is_some) {
            let bounds: Vec<u32> = bounds.into_iter().map(Option::unwrap).collect();
            let mut out = Vec::new();
            let mut exps = vec![0u32; bounds.len()];
            box_walk(&bounds, 0, &mut exps, &mut |e| {
                let m = Monomial::new(e.to_vec());
                if fp.contains(&m) {
                    out.push(m);
                }
            });
            fp.sort(&mut out);
            fp.monomials = Some(out);
        }
        fp
    }

    fn sort(&self, ms: &mut [Monomial]) {
        let ord = self.ring.order();
        ms.sort_by(|a, b| ord.compare(a, b));
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn leading(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn is_finite(&self) -> bool {
        self.monomials.is_some()
    }

    /// Whether `m` is a standard monomial.
    pub fn contains(&self, m: &Monomial) -> bool {
        !self.leading.iter().any(|l| l.divides(m))
    }

    /// For each variable, the smallest pure-power exponent among the leading
    /// monomials, if any. Exponents of standard monomials stay below it.
    pub fn pure_power_bounds(&self) -> Vec<Option<u32>> {
        let mut b = vec![None; self.ring.num_vars()];
        for l in &self.leading {
            if l.is_one() {
                b.iter_mut().for_each(|x| *x = Some(0));
            } else if let Some((i, e)) = l.pure_power() {
                b[i] = Some(b[i].map_or(e, |x: u32| x.min(e)));
            }
        }
        b
    }

    /// Standard monomials in increasing ≺_w order.
    pub fn monomials(&self) -> Result<&[Monomial], GroebnerError> {
        self.monomials.as_deref().ok_or(GroebnerError::InfiniteFootprint)
    }

    pub fn weights(&self) -> Result<Vec<Weight>, GroebnerError> {
        let ord = self.ring.order();
        Ok(self.monomials()?.iter().map(|m| ord.weight(m)).collect())
    }

    pub fn len(&self) -> Result<usize, GroebnerError> {
        self.monomials().map(<[Monomial]>::len)
    }

    pub fn is_empty(&self) -> Result<bool, GroebnerError> {
        self.monomials().map(<[Monomial]>::is_empty)
    }

    /// Standard monomials whose weight is componentwise at most `bound`,
    /// in increasing order. Works for infinite footprints as long as every
    /// unbounded variable has a nonzero weight.
    pub fn up_to_weight(&self, bound: &Weight) -> Result<Vec<Monomial>, GroebnerError> {
        let ord = self.ring.order();
        let bounds = self.pure_power_bounds();
        let weights = ord.var_weights();
        let mut caps = Vec::with_capacity(bounds.len());
        for (i, (b, w)) in bounds.iter().zip(weights).enumerate() {
            let by_weight =
                w.0.iter()
                    .zip(&bound.0)
                    .filter(|(&wi, _)| wi > 0)
                    .map(|(&wi, &bi)| (bi / wi) as u32 + 1)
                    .min();
            caps.push(match (b, by_weight) {
                (Some(b), Some(c)) => (*b).min(c),
                (Some(b), None) => *b,
                (None, Some(c)) => c,
                (None, None) => return Err(GroebnerError::UnboundedWindow(i)),
            });
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; caps.len()];
        box_walk(&caps, 0, &mut exps, &mut |e| {
            let m = Monomial::new(e.to_vec());
            if self.contains(&m) && ord.weight(&m).dominated_by(bound) {
                out.push(m);
            }
        });
        self.sort(&mut out);
        Ok(out)
    }
}

fn box_walk(caps: &[u32], i: usize, exps: &mut Vec<u32>, visit: &mut impl FnMut(&[u32])) {
    if i == caps.len() {
        visit(exps);
        return;
    }
    for e in 0..caps[i] {
        exps[i] = e;
        box_walk(caps, i + 1, exps, visit);
    }
    exps[i] = 0;
}

/// Reduced Gröbner basis of the ideal of polynomials vanishing on `points`
/// (coordinates over the ring's coefficient field).
///
/// Border monomials are visited in increasing order; each evaluation vector
/// is reduced against the echelon form of the standard monomials seen so
/// far, tracking the combination as a polynomial. A vanishing residual
/// yields a basis element with the visited monomial as leading term.
pub fn buchberger_moller(ring: &Arc<PolyRing>, points: &[Vec<Elem>]) -> Result<GroebnerBasis, GroebnerError> {
    let m = ring.num_vars();
    let field = ring.field().clone();
    let ord = ring.order().clone();
    let mut seen = HashSet::new();
    for (index, p) in points.iter().enumerate() {
        if p.len() != m {
            return Err(GroebnerError::PointDimension {
                index,
                expected: m,
                got: p.len(),
            });
        }
        if !seen.insert(p) {
            return Err(GroebnerError::DuplicatePoint(index));
        }
    }

    struct Row {
        pivot: usize,
        values: Vec<Elem>,
        combo: Poly,
    }
    let mut rows: Vec<Row> = Vec::new();
    let mut basis: Vec<Poly> = Vec::new();
    let mut border = vec![Monomial::one(m)];
    let mut visited: HashSet<Monomial> = border.iter().cloned().collect();

    while !border.is_empty() {
        let idx = (0..border.len())
            .min_by(|&a, &b| ord.compare(&border[a], &border[b]))
            .unwrap();
        let t = border.swap_remove(idx);
        if basis.iter().any(|g| g.lm().unwrap().divides(&t)) {
            continue;
        }
        let mut values: Vec<Elem> = points
            .iter()
            .map(|p| {
                t.exps()
                    .iter()
                    .zip(p)
                    .fold(Elem::ONE, |acc, (&e, &x)| field.mul(acc, field.pow(x, e as u64)))
            })
            .collect();
        let mut combo = ring.monomial(t.clone());
        for row in &rows {
            let c = values[row.pivot];
            if c.is_zero() {
                continue;
            }
            let neg = field.neg(c);
            for (v, r) in values.iter_mut().zip(&row.values) {
                *v = field.add(*v, field.mul(neg, *r));
            }
            combo = combo.add_scaled(&row.combo, neg);
        }
        match values.iter().position(|v| !v.is_zero()) {
            None => basis.push(combo),
            Some(pivot) => {
                let inv = field.inv(values[pivot]).unwrap();
                rows.push(Row {
                    pivot,
                    values: values.iter().map(|&v| field.mul(v, inv)).collect(),
                    combo: combo.scale(inv),
                });
                for i in 0..m {
                    let next = &t * &Monomial::var(m, i);
                    if visited.insert(next.clone()) {
                        border.push(next);
                    }
                }
            }
        }
    }
    basis.sort_by(|a, b| ord.compare(a.lm().unwrap(), b.lm().unwrap()));
    Ok(GroebnerBasis {
        ring: ring.clone(),
        polys: basis,
        provenance: Provenance::BuchbergerMoller,
    })
}

/// Appends the field equations `X_i^q − X_i` to `gens`.
pub fn with_field_equations(gens: &[Poly], ring: &Arc<PolyRing>) -> Vec<Poly> {
    let q = ring.field().size();
    let m = ring.num_vars();
    let mut out = gens.to_vec();
    for i in 0..m {
        let mut e = vec![0; m];
        e[i] = q;
        out.push(&ring.monomial(Monomial::new(e)) - &ring.var(i));
    }
    out
}
