//! Evaluation codes: affine-variety codes, their extensions by inner codes at
//! points of higher degree, and the one-point families E(λ) and Ê(δ).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::distance::{min_distance, DistanceError, DEFAULT_ENUM_CAP};
use crate::gf::{Elem, Field};
use crate::groebner::{buchberger_moller, GroebnerBasis, GroebnerError};
use crate::linalg::{rank, RowBasis};
use crate::points::{lcm, SelectedPoints};
use crate::poly::{Monomial, Poly, PolyError, PolyRing, Weight};
use crate::semigroup::{
    check_order_domain, gamma_from_footprint, sigma, OrderDomainDiagnosis, Semigroup, SemigroupError,
};

#[derive(Debug, Error)]
pub enum CodeError {
    #[error("the spanning set reduces to the zero space")]
    ZeroSpace,
    #[error("polynomials do not belong to the ring of the basis")]
    RingMismatch,
    #[error("evaluation lost rank: dim L = {dim} but the code has dimension {rank}")]
    RankLoss { dim: usize, rank: usize },
    #[error("{points} points selected but {inner} inner codes given")]
    InnerCount { points: usize, inner: usize },
    #[error("point {index} has degree {degree} but its inner code has dimension {inner}")]
    InnerMismatch { index: usize, degree: u32, inner: usize },
    #[error("point {index}: coordinates generate GF(q^{morphism}) but the orbit has size {orbit}")]
    DegreeMismatch { index: usize, morphism: u32, orbit: u32 },
    #[error("affine-variety codes need rational points and identity inner codes")]
    NotAffine,
    #[error("inner code declares distance {declared} but its minimum distance is {actual}")]
    InnerDistance { declared: usize, actual: usize },
    #[error("inner generator matrix must be {rows} independent rows of equal length over GF(q)")]
    InnerShape { rows: usize },
    #[error("weight {0} is not in the semigroup")]
    NotInSemigroup(Weight),
    #[error("order-domain conditions fail")]
    OrderDomain(Box<OrderDomainDiagnosis>),
    #[error("this construction needs scalar weights")]
    NotScalar,
    #[error("Σ k_i = {total} does not exceed deg G = {deg_g}")]
    GagHypothesis { total: u64, deg_g: u64 },
    #[error("generator lists differ in length")]
    LengthMismatch,
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Distance(#[from] DistanceError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A subspace L of the residue ring in well-behaving form: reduced echelon
/// over standard monomials, monic, leading monomials strictly increasing.
#[derive(Debug, Clone)]
pub struct FunctionSpace {
    basis: Vec<Poly>,
}

impl FunctionSpace {
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// □(L).
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|b| b.lm().unwrap().clone()).collect()
    }

    pub fn weights(&self) -> Vec<Weight> {
        self.basis
            .iter()
            .map(|b| b.ring().order().weight(b.lm().unwrap()))
            .collect()
    }
}

pub fn well_behaving_basis(span: &[Poly], gb: &GroebnerBasis) -> Result<FunctionSpace, CodeError> {
    if span.iter().any(|p| !Arc::ptr_eq(p.ring(), gb.ring())) {
        return Err(CodeError::RingMismatch);
    }
    let field = gb.ring().field();
    let ord = gb.ring().order();
    let mut basis: Vec<Poly> = Vec::new();
    for p in span {
        let mut r = gb.normal_form(p);
        while let Some(m) = r.lm() {
            let Some(b) = basis.iter().find(|b| b.lm() == Some(m)) else {
                break;
            };
            r = r.add_scaled(b, field.neg(r.lc().unwrap()));
        }
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    if basis.is_empty() {
        return Err(CodeError::ZeroSpace);
    }
    basis.sort_by(|a, b| ord.compare(a.lm().unwrap(), b.lm().unwrap()));
    for i in 0..basis.len() {
        for j in 0..i {
            let c = basis[i].coefficient(basis[j].lm().unwrap());
            if !c.is_zero() {
                basis[i] = basis[i].add_scaled(&basis[j], field.neg(c));
            }
        }
    }
    Ok(FunctionSpace { basis })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerKind {
    Identity,
    Parity,
    Custom,
}

/// An [n, r, d] code over GF(q) receiving values in GF(q^r).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerCode {
    kind: InnerKind,
    generator: Vec<Vec<Elem>>,
    d: usize,
}

impl InnerCode {
    /// [r, r, 1].
    pub fn identity(field: &Field, r: usize) -> Result<Self, CodeError> {
        let g = (0..r)
            .map(|i| (0..r).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect())
            .collect();
        Self::checked(field, InnerKind::Identity, g, 1)
    }

    /// [r+1, r, 2]: the identity followed by a column making each row sum to zero.
    pub fn parity(field: &Field, r: usize) -> Result<Self, CodeError> {
        let g = (0..r)
            .map(|i| {
                let mut row: Vec<Elem> = (0..r).map(|j| if i == j { Elem::ONE } else { Elem::ZERO }).collect();
                row.push(field.neg(Elem::ONE));
                row
            })
            .collect();
        Self::checked(field, InnerKind::Parity, g, 2)
    }

    /// Explicit generator matrix; `declared_d` must be its true minimum distance.
    pub fn custom(field: &Field, generator: Vec<Vec<Elem>>, declared_d: usize) -> Result<Self, CodeError> {
        Self::checked(field, InnerKind::Custom, generator, declared_d)
    }

    fn checked(field: &Field, kind: InnerKind, generator: Vec<Vec<Elem>>, declared: usize) -> Result<Self, CodeError> {
        let r = generator.len();
        let n = generator.first().map_or(0, Vec::len);
        let shape_ok = r > 0
            && generator.iter().all(|row| row.len() == n)
            && generator.iter().flatten().all(|e| e.0 < field.size())
            && rank(field, &generator) == r;
        if !shape_ok {
            return Err(CodeError::InnerShape { rows: r });
        }
        let actual = min_distance(field, &generator, DEFAULT_ENUM_CAP)?
            .exact_distance
            .unwrap();
        if actual != declared {
            return Err(CodeError::InnerDistance { declared, actual });
        }
        Ok(Self {
            kind,
            generator,
            d: actual,
        })
    }

    pub fn kind(&self) -> InnerKind {
        self.kind
    }

    pub fn generator(&self) -> &[Vec<Elem>] {
        &self.generator
    }

    pub fn n(&self) -> usize {
        self.generator[0].len()
    }

    pub fn r(&self) -> usize {
        self.generator.len()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn encode(&self, field: &Field, message: &[Elem]) -> Vec<Elem> {
        (0..self.n())
            .map(|c| {
                field.sum(
                    message
                        .iter()
                        .zip(&self.generator)
                        .map(|(&m, row)| field.mul(m, row[c])),
                )
            })
            .collect()
    }
}

impl fmt::Display for InnerCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            InnerKind::Identity => "identity",
            InnerKind::Parity => "parity",
            InnerKind::Custom => "custom",
        };
        write!(f, "{kind}[{},{},{}]", self.n(), self.r(), self.d)
    }
}

/// Everything fixed before choosing a function space: the ideal I, its
/// weight semigroup, the evaluation points with their inner codes, and the
/// vanishing ideal I_P of the point representatives over the compositum.
#[derive(Debug, Clone)]
pub struct Evaluation {
    gb: GroebnerBasis,
    gamma: Semigroup,
    points: SelectedPoints,
    inner: Vec<InnerCode>,
    points_basis: GroebnerBasis,
    coords: Vec<Arc<HashMap<Elem, Vec<Elem>>>>,
}

impl Evaluation {
    pub fn new(gb: GroebnerBasis, points: SelectedPoints, inner: Vec<InnerCode>) -> Result<Self, CodeError> {
        let diag = check_order_domain(&gb, None);
        if !diag.satisfied {
            return Err(CodeError::OrderDomain(Box::new(diag)));
        }
        let gamma = gamma_from_footprint(&gb.footprint())?;
        if inner.len() != points.len() {
            return Err(CodeError::InnerCount {
                points: points.len(),
                inner: inner.len(),
            });
        }
        let ext = points.ext.clone();
        for (index, (p, c)) in points.points.iter().zip(&inner).enumerate() {
            let morphism = p.coords.iter().map(|&x| ext.element_degree(x)).fold(1, lcm);
            let orbit = p.orbit.len() as u32;
            if morphism != orbit {
                return Err(CodeError::DegreeMismatch { index, morphism, orbit });
            }
            if c.r() != orbit as usize {
                return Err(CodeError::InnerMismatch {
                    index,
                    degree: orbit,
                    inner: c.r(),
                });
            }
        }
        let ring_f = gb.ring().with_field(ext.field().clone());
        let reps: Vec<Vec<Elem>> = points.points.iter().map(|p| p.coords.clone()).collect();
        let points_basis = buchberger_moller(&ring_f, &reps)?;
        let mut tables: HashMap<u32, Arc<HashMap<Elem, Vec<Elem>>>> = HashMap::new();
        let mut coords = Vec::with_capacity(points.len());
        for p in &points.points {
            let t = tables
                .entry(p.degree)
                .or_insert_with(|| Arc::new(coordinate_table(&points, p.degree)));
            coords.push(t.clone());
        }
        Ok(Self {
            gb,
            gamma,
            points,
            inner,
            points_basis,
            coords,
        })
    }

    /// Identity inner codes of the matching dimensions.
    pub fn with_identity_inner(gb: GroebnerBasis, points: SelectedPoints) -> Result<Self, CodeError> {
        let base = points.ext.base().clone();
        let inner = points
            .points
            .iter()
            .map(|p| InnerCode::identity(&base, p.degree as usize))
            .collect::<Result<_, _>>()?;
        Self::new(gb, points, inner)
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn gamma(&self) -> &Semigroup {
        &self.gamma
    }

    pub fn points(&self) -> &SelectedPoints {
        &self.points
    }

    pub fn inner(&self) -> &[InnerCode] {
        &self.inner
    }

    /// Reduced basis of I_P over the compositum.
    pub fn points_basis(&self) -> &GroebnerBasis {
        &self.points_basis
    }

    pub fn base_field(&self) -> &Arc<Field> {
        self.points.ext.base()
    }

    /// Number of evaluation points h.
    pub fn h(&self) -> usize {
        self.points.len()
    }

    /// Code length Σ n_i.
    pub fn n(&self) -> usize {
        self.inner.iter().map(InnerCode::n).sum()
    }

    /// d̂ = min d_i.
    pub fn inner_min(&self) -> usize {
        self.inner.iter().map(InnerCode::d).min().unwrap_or(0)
    }

    /// w(Δ(I_P)), increasing.
    pub fn delta_weights(&self) -> Vec<Weight> {
        self.points_basis
            .footprint()
            .weights()
            .expect("vanishing ideals of points have finite footprints")
    }

    pub fn sigma(&self, lambda: &Weight) -> Result<usize, CodeError> {
        Ok(sigma(lambda, &self.delta_weights(), &self.gamma)?)
    }

    fn is_affine(&self) -> bool {
        self.points.points.iter().all(|p| p.degree == 1) && self.inner.iter().all(|c| c.kind() == InnerKind::Identity)
    }

    /// Γ when it is numerical with finitely many gaps.
    fn numerical_gamma(&self) -> Option<&Semigroup> {
        (self.gamma.gcd() == Some(1)).then_some(&self.gamma)
    }

    /// Values f(P_i) in the compositum.
    pub fn values(&self, f: &Poly) -> Vec<Elem> {
        let emb = self.points.ext.embedding();
        self.points
            .points
            .iter()
            .map(|p| {
                f.evaluate(&p.coords, emb)
                    .expect("point dimension checked at selection")
            })
            .collect()
    }

    /// (π_1(f(P_1)), …, π_h(f(P_h))) over GF(q).
    pub fn encode(&self, f: &Poly) -> Vec<Elem> {
        let base = self.base_field();
        let mut out = Vec::with_capacity(self.n());
        for ((v, table), c) in self.values(f).iter().zip(&self.coords).zip(&self.inner) {
            out.extend(c.encode(base, &table[v]));
        }
        out
    }

    /// Encodes `polys` in order, keeping only images independent of the
    /// ones kept before.
    fn independent_rows(&self, polys: &[Poly]) -> Vec<Vec<Elem>> {
        let base = self.base_field();
        let mut rb = RowBasis::new(base);
        let mut rows = Vec::new();
        for f in polys {
            let v = self.encode(f);
            if rb.insert(&v) {
                rows.push(v);
            }
        }
        rows
    }

    fn provenance(&self, tag: ConstructionTag, space: String) -> CodeProvenance {
        CodeProvenance {
            construction: tag,
            ideal: self.gb.polys().iter().map(|p| p.to_string()).collect(),
            compositum: self.points.ext.field().spec().to_string(),
            points: self
                .points
                .points
                .iter()
                .map(|p| PointRecord {
                    coords: p.encodings(),
                    degree: p.degree,
                })
                .collect(),
            space,
            inner: self.inner.iter().map(|c| c.to_string()).collect(),
        }
    }

    /// Attaches every bound that applies. `lambda` is the largest weight of
    /// the functions spanning the code.
    fn bounds(&self, sigma_min: Option<usize>, lambda: Option<u64>, with_xnl: bool) -> Bounds {
        let d_hat = self.inner_min() as u64;
        let mut b = Bounds {
            sigma_bound: sigma_min.map(|s| s as u64),
            inner_min: Some(d_hat),
            product_bound: sigma_min.map(|s| s as u64 * d_hat),
            ..Bounds::default()
        };
        if let (Some(g), Some(lambda)) = (self.numerical_gamma(), lambda) {
            b.one_point_bound = Some(self.h() as i64 - lambda as i64);
            let ks: Vec<u64> = self.points.points.iter().map(|p| p.degree as u64).collect();
            let ds: Vec<u64> = self.inner.iter().map(|c| c.d() as u64).collect();
            b.gag_designed = gag_designed_distance(lambda, &ks, &ds).ok();
            // Only an injective evaluation keeps dim L(λP).
            if with_xnl && b.gag_designed.is_some() {
                b.xnl_dim_bound = Some(lambda as i64 + 1 - g.genus().unwrap() as i64);
            }
        }
        b
    }

    fn instance(&self, tag: ConstructionTag, rows: Vec<Vec<Elem>>, bounds: Bounds, space: String) -> CodeInstance {
        CodeInstance {
            tag,
            field: self.base_field().clone(),
            n: self.n(),
            k: rows.len(),
            generator: rows,
            bounds,
            provenance: self.provenance(tag, space),
        }
    }
}

/// F-element ↦ coordinates over GF(q) in the basis 1, z, …, z^{r−1} of
/// GF(q^r), z the smallest-encoding element of exact degree r.
fn coordinate_table(points: &SelectedPoints, r: u32) -> HashMap<Elem, Vec<Elem>> {
    let ext = &points.ext;
    let f = ext.field();
    let emb = ext.embedding();
    let z = f.elements().find(|&x| ext.element_degree(x) == r).unwrap();
    let powers: Vec<Elem> = (0..r).map(|j| f.pow(z, j as u64)).collect();
    let q = ext.base_size() as u32;
    let mut table = HashMap::new();
    let mut digits = vec![Elem::ZERO; r as usize];
    for idx in 0..q.pow(r) {
        let mut rest = idx;
        for d in digits.iter_mut() {
            *d = Elem(rest % q);
            rest /= q;
        }
        let v = f.sum(digits.iter().zip(&powers).map(|(&c, &p)| f.mul(emb.embed(c), p)));
        table.insert(v, digits.clone());
    }
    table
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstructionTag {
    AffineVariety,
    ExtendedAv,
    ELambda,
    ETilde,
    EHat,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub sigma_bound: Option<u64>,
    pub inner_min: Option<u64>,
    pub product_bound: Option<u64>,
    pub one_point_bound: Option<i64>,
    pub gag_designed: Option<u64>,
    pub xnl_dim_bound: Option<i64>,
}

impl Bounds {
    /// The lower bounds on the minimum distance that are present.
    pub fn distance_bounds(&self) -> Vec<(&'static str, i64)> {
        [
            ("sigma_bound", self.sigma_bound.map(|x| x as i64)),
            ("product_bound", self.product_bound.map(|x| x as i64)),
            ("one_point_bound", self.one_point_bound),
            ("gag_designed", self.gag_designed.map(|x| x as i64)),
        ]
        .into_iter()
        .filter_map(|(n, b)| b.map(|b| (n, b)))
        .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PointRecord {
    pub coords: Vec<u32>,
    pub degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CodeProvenance {
    pub construction: ConstructionTag,
    pub ideal: Vec<String>,
    pub compositum: String,
    pub points: Vec<PointRecord>,
    pub space: String,
    pub inner: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeInstance {
    pub tag: ConstructionTag,
    #[serde(skip)]
    pub field: Arc<Field>,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<Vec<Elem>>,
    pub bounds: Bounds,
    pub provenance: CodeProvenance,
}

impl CodeInstance {
    /// `n k q` followed by one line of encodings per row.
    pub fn matrix_text(&self) -> String {
        let mut s = format!("{} {} {}\n", self.n, self.k, self.field.size());
        for row in &self.generator {
            let line: Vec<String> = row.iter().map(|e| e.0.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

fn describe(ring: &PolyRing, ms: &[Monomial]) -> String {
    let names: Vec<String> = ms.iter().map(|m| ring.format_monomial(m)).collect();
    format!("span{{{}}}", names.join(","))
}

fn scalar(w: &Weight) -> Result<u64, CodeError> {
    w.as_scalar().ok_or(CodeError::NotScalar)
}

/// min σ over □ of L ⊗ F modulo I_P, or `None` when L ⊆ I_P.
fn box_sigma_min(fs: &FunctionSpace, ev: &Evaluation) -> Result<Option<usize>, CodeError> {
    let gbp = ev.points_basis();
    let emb = ev.points.ext.embedding();
    let lifted: Vec<Poly> = fs.basis().iter().map(|b| b.embed(gbp.ring(), emb)).collect();
    let boxed = match well_behaving_basis(&lifted, gbp) {
        Ok(s) => s,
        Err(CodeError::ZeroSpace) => return Ok(None),
        Err(e) => return Err(e),
    };
    let mut best = usize::MAX;
    for w in boxed.weights() {
        best = best.min(ev.sigma(&w)?);
    }
    Ok(Some(best))
}

/// C(I, L): evaluation at rational points with no inner coding. The
/// evaluation map must be injective on L.
pub fn build_affine_variety_code(fs: &FunctionSpace, ev: &Evaluation) -> Result<CodeInstance, CodeError> {
    if !ev.is_affine() {
        return Err(CodeError::NotAffine);
    }
    let code = build_extended(fs, ev, ConstructionTag::AffineVariety)?;
    if code.k < fs.dim() {
        return Err(CodeError::RankLoss {
            dim: fs.dim(),
            rank: code.k,
        });
    }
    Ok(code)
}

/// C(I, L, P, C): f ↦ (π_1(f(P_1)), …, π_h(f(P_h))).
pub fn build_extended_code(fs: &FunctionSpace, ev: &Evaluation) -> Result<CodeInstance, CodeError> {
    build_extended(fs, ev, ConstructionTag::ExtendedAv)
}

fn build_extended(fs: &FunctionSpace, ev: &Evaluation, tag: ConstructionTag) -> Result<CodeInstance, CodeError> {
    if !Arc::ptr_eq(fs.basis()[0].ring(), ev.basis().ring()) {
        return Err(CodeError::RingMismatch);
    }
    let rows = ev.independent_rows(fs.basis());
    let space = describe(ev.basis().ring(), &fs.leading_monomials());
    let bounds = if rows.is_empty() {
        Bounds::default()
    } else {
        let lambda = fs.weights().iter().max().and_then(Weight::as_scalar);
        ev.bounds(box_sigma_min(fs, ev)?, lambda, false)
    };
    Ok(ev.instance(tag, rows, bounds, space))
}

/// Greedy selection over the standard monomials of I in increasing order,
/// keeping those whose value vectors at the points are independent over
/// the compositum, until the rank reaches h.
pub fn delta_monomials(ev: &Evaluation) -> Result<Vec<Monomial>, CodeError> {
    let fp = ev.basis().footprint();
    let ring = ev.basis().ring();
    let ord = ring.order();
    let h = ev.h();
    let f = ev.points.ext.field().clone();
    let greedy = |candidates: Vec<Monomial>| {
        let mut rb = RowBasis::new(&f);
        let mut kept = Vec::new();
        for m in candidates {
            if rb.rank() == h {
                break;
            }
            if rb.insert(&ev.values(&ring.monomial(m.clone()))) {
                kept.push(m);
            }
        }
        kept
    };
    if ord.weight_dim() > 1 {
        // Every selected monomial lies in Δ(I_P); its componentwise maximum
        // bounds a box containing an initial segment long enough.
        let ws = ev.delta_weights();
        let bound = Weight(
            (0..ord.weight_dim())
                .map(|c| ws.iter().map(|w| w.0[c]).max().unwrap_or(0))
                .collect(),
        );
        return Ok(greedy(fp.up_to_weight(&bound)?));
    }
    let mut bound = ord.var_weights().iter().map(|w| w.0[0]).max().unwrap_or(1).max(1);
    loop {
        let kept = greedy(fp.up_to_weight(&Weight::scalar(bound))?);
        if kept.len() == h {
            return Ok(kept);
        }
        bound *= 2;
    }
}

/// Δ(R, ρ, φ): the weights of [`delta_monomials`].
pub fn delta_sequence(ev: &Evaluation) -> Result<Vec<Weight>, CodeError> {
    let ord = ev.basis().ring().order();
    Ok(delta_monomials(ev)?.iter().map(|m| ord.weight(m)).collect())
}

/// E(λ, R, C): images of the standard monomials of weight at most λ.
pub fn build_e_lambda(lambda: &Weight, ev: &Evaluation) -> Result<CodeInstance, CodeError> {
    let lam = scalar(lambda)?;
    if !ev.gamma().contains(lambda) {
        return Err(CodeError::NotInSemigroup(lambda.clone()));
    }
    let ring = ev.basis().ring();
    let ms = ev.basis().footprint().up_to_weight(lambda)?;
    let polys: Vec<Poly> = ms.iter().map(|m| ring.monomial(m.clone())).collect();
    let rows = ev.independent_rows(&polys);
    let mut gamma_min = usize::MAX;
    for eta in ev.delta_weights().iter().filter(|w| *w <= lambda) {
        gamma_min = gamma_min.min(ev.sigma(eta)?);
    }
    let bounds = ev.bounds(Some(gamma_min), Some(lam), true);
    Ok(ev.instance(ConstructionTag::ELambda, rows, bounds, format!("weight<={lam}")))
}

/// Ê(δ, R, C) (Ẽ(δ) when every point is rational with identity inner code):
/// images of f_η for the η ∈ Δ with σ(η) ≥ δ.
pub fn build_e_improved(delta: usize, ev: &Evaluation) -> Result<CodeInstance, CodeError> {
    let tag = if ev.is_affine() {
        ConstructionTag::ETilde
    } else {
        ConstructionTag::EHat
    };
    let ring = ev.basis().ring();
    let ord = ring.order();
    let mut chosen = Vec::new();
    for m in ev.points_basis().footprint().monomials()? {
        if ev.sigma(&ord.weight(m))? >= delta {
            chosen.push(m.clone());
        }
    }
    let polys: Vec<Poly> = chosen.iter().map(|m| ring.monomial(m.clone())).collect();
    let rows = ev.independent_rows(&polys);
    let bounds = if rows.is_empty() {
        Bounds::default()
    } else {
        let lambda = chosen.iter().map(|m| ord.weight(m)).max().and_then(|w| w.as_scalar());
        ev.bounds(Some(delta), lambda, false)
    };
    Ok(ev.instance(tag, rows, bounds, format!("sigma>={delta}")))
}

/// d̄ = min { Σ_{i∉S} d_i : Σ_{i∈S} k_i ≤ deg G }, by 0/1 knapsack.
pub fn gag_designed_distance(deg_g: u64, k: &[u64], d: &[u64]) -> Result<u64, CodeError> {
    if k.len() != d.len() {
        return Err(CodeError::LengthMismatch);
    }
    let total: u64 = k.iter().sum();
    if total <= deg_g {
        return Err(CodeError::GagHypothesis { total, deg_g });
    }
    let cap = deg_g as usize;
    let mut best = vec![0u64; cap + 1];
    for (&ki, &di) in k.iter().zip(d) {
        let ki = ki as usize;
        if ki > cap {
            continue;
        }
        for c in (ki..=cap).rev() {
            best[c] = best[c].max(best[c - ki] + di);
        }
    }
    Ok(d.iter().sum::<u64>() - best[cap])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XnlParameters {
    /// deg G + 1 − g; at most zero means no information.
    pub dim_bound: i64,
    pub vacuous: bool,
    /// deg G ≥ 2g − 1, where the dimension is exactly deg G + 1 − g.
    pub riemann_roch_exact: bool,
    pub designed: Option<u64>,
}

pub fn xnl_parameters(deg_g: u64, genus: u64, k: &[u64], d: &[u64]) -> XnlParameters {
    let dim_bound = deg_g as i64 + 1 - genus as i64;
    XnlParameters {
        dim_bound,
        vacuous: dim_bound <= 0,
        riemann_roch_exact: deg_g as i64 >= 2 * genus as i64 - 1,
        designed: gag_designed_distance(deg_g, k, d).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::min_distance;
    use crate::groebner::{buchberger, with_field_equations};
    use crate::points::{select_points, PointRequest, PointSelection, RationalChoice, DEFAULT_SEARCH_CAP};
    use crate::poly::WeightedOrder;

    fn ring() -> Arc<PolyRing> {
        let f = Arc::new(Field::with_default(2, 2).unwrap());
        PolyRing::new(f, vec!["X".into(), "Y".into()], WeightedOrder::scalar(&[5, 6])).unwrap()
    }

    fn x6_curve(extra: bool) -> (Arc<PolyRing>, Evaluation) {
        let r = ring();
        let gb = buchberger(&[r.parse("X^6+Y^5+Y").unwrap()]).unwrap();
        let sel = PointSelection {
            rational: RationalChoice::All,
            extra: if extra {
                vec![PointRequest { degree: 3, index: 0 }]
            } else {
                vec![]
            },
        };
        let pts = select_points(gb.polys(), &sel, DEFAULT_SEARCH_CAP).unwrap();
        (r, Evaluation::with_identity_inner(gb, pts).unwrap())
    }

    fn span(r: &Arc<PolyRing>, text: &[&str]) -> Vec<Poly> {
        text.iter().map(|t| r.parse(t).unwrap()).collect()
    }

    fn w(xs: &[u64]) -> Vec<Weight> {
        xs.iter().map(|&x| Weight::scalar(x)).collect()
    }

    #[test]
    fn well_behaving_examples() {
        let (r, ev) = x6_curve(false);
        let fs = well_behaving_basis(&span(&r, &["1", "X", "Y"]), ev.basis()).unwrap();
        assert_eq!(fs.weights(), w(&[0, 5, 6]));
        let fs = well_behaving_basis(&span(&r, &["X+Y", "Y"]), ev.basis()).unwrap();
        assert_eq!(fs.basis(), &span(&r, &["X", "Y"])[..]);
        assert!(matches!(
            well_behaving_basis(&span(&r, &["X^6+Y^5+Y"]), ev.basis()),
            Err(CodeError::ZeroSpace)
        ));
    }

    #[test]
    fn delta_sequence_matches_points_basis() {
        let (_, ev) = x6_curve(true);
        let d = delta_sequence(&ev).unwrap();
        assert_eq!(d, w(&[0, 5, 6, 10, 11, 12, 15, 16, 18]));
        assert_eq!(d, ev.delta_weights());
        let (_, ev8) = x6_curve(false);
        assert_eq!(delta_sequence(&ev8).unwrap(), w(&[0, 5, 6, 10, 11, 12, 16, 18]));
    }

    #[test]
    fn sigma_values() {
        let (_, ev) = x6_curve(true);
        let s: Vec<usize> = [0, 5, 6]
            .iter()
            .map(|&x| ev.sigma(&Weight::scalar(x)).unwrap())
            .collect();
        assert_eq!(s, vec![9, 5, 5]);
    }

    #[test]
    fn extended_code_parameters() {
        let (r, ev) = x6_curve(true);
        let fs = well_behaving_basis(&span(&r, &["1", "X", "Y"]), ev.basis()).unwrap();
        let c = build_extended_code(&fs, &ev).unwrap();
        assert_eq!((c.n, c.k), (11, 3));
        assert_eq!(c.bounds.product_bound, Some(5));
        assert_eq!(c.bounds.one_point_bound, Some(3));
        assert_eq!(c.bounds.gag_designed, Some(3));
        let d = min_distance(&c.field, &c.generator, DEFAULT_ENUM_CAP).unwrap();
        assert!(d.exact_distance.unwrap() >= 5);
        let e = build_e_lambda(&Weight::scalar(6), &ev).unwrap();
        assert!(crate::linalg::same_row_space(&c.field, &c.generator, &e.generator));
        assert_eq!(e.bounds.product_bound, Some(5));
        assert_eq!(e.bounds.xnl_dim_bound, Some(-3));
    }

    #[test]
    fn repetition_code() {
        let (r, ev) = x6_curve(true);
        let fs = well_behaving_basis(&span(&r, &["1"]), ev.basis()).unwrap();
        let c = build_extended_code(&fs, &ev).unwrap();
        let d = min_distance(&c.field, &c.generator, DEFAULT_ENUM_CAP).unwrap();
        // Eight singleton blocks plus π(1) = (1, 0, 0) in the degree-3 block.
        assert_eq!(d.exact_distance, Some(9));
        assert_eq!(&c.generator[0][8..], &[Elem::ONE, Elem::ZERO, Elem::ZERO]);
    }

    #[test]
    fn affine_codes() {
        let (r, ev) = x6_curve(false);
        let fs = well_behaving_basis(&span(&r, &["1", "X", "Y"]), ev.basis()).unwrap();
        let c = build_affine_variety_code(&fs, &ev).unwrap();
        assert_eq!((c.n, c.k), (8, 3));
        let ext = build_extended_code(&fs, &ev).unwrap();
        assert_eq!(c.generator, ext.generator);
        let gq = buchberger(&with_field_equations(&[r.parse("X^6+Y^5+Y").unwrap()], &r)).unwrap();
        let all: Vec<Poly> = gq
            .footprint()
            .monomials()
            .unwrap()
            .iter()
            .map(|m| r.monomial(m.clone()))
            .collect();
        let full = well_behaving_basis(&all, ev.basis()).unwrap();
        let c = build_affine_variety_code(&full, &ev).unwrap();
        assert_eq!((c.n, c.k), (8, 8));
        let too_big = well_behaving_basis(
            &span(&r, &["1", "X", "Y", "X^2", "XY", "Y^2", "X^2Y", "Y^3", "X^3"]),
            ev.basis(),
        )
        .unwrap();
        assert!(matches!(
            build_affine_variety_code(&too_big, &ev),
            Err(CodeError::RankLoss { dim: 9, rank: 8 })
        ));
    }

    #[test]
    fn improved_codes() {
        let (_, ev) = x6_curve(true);
        let c = build_e_improved(5, &ev).unwrap();
        let delta = ev.delta_weights();
        let expected = delta.iter().filter(|w| ev.sigma(w).unwrap() >= 5).count();
        assert_eq!(c.k, expected);
        assert_eq!(c.tag, ConstructionTag::EHat);
        assert_eq!(build_e_improved(1, &ev).unwrap().k, 9);
        let empty = build_e_improved(10, &ev).unwrap();
        assert_eq!(empty.k, 0);
        assert_eq!(empty.bounds, Bounds::default());
    }

    #[test]
    fn e_lambda_errors_and_extremes() {
        let (_, ev) = x6_curve(true);
        assert!(matches!(
            build_e_lambda(&Weight::scalar(7), &ev),
            Err(CodeError::NotInSemigroup(_))
        ));
        assert_eq!(build_e_lambda(&Weight::scalar(0), &ev).unwrap().k, 1);
        let top = build_e_lambda(&Weight::scalar(18), &ev).unwrap();
        assert_eq!(top.k, 9);
    }

    #[test]
    fn parity_inner_code() {
        let (r, ev) = x6_curve(true);
        let gb = ev.basis().clone();
        let pts = ev.points().clone();
        let base = ev.base_field().clone();
        let mut inner: Vec<InnerCode> = (0..8).map(|_| InnerCode::identity(&base, 1).unwrap()).collect();
        inner.push(InnerCode::parity(&base, 3).unwrap());
        let ev2 = Evaluation::new(gb, pts, inner).unwrap();
        let fs = well_behaving_basis(&span(&r, &["1", "X", "Y"]), ev2.basis()).unwrap();
        let c = build_extended_code(&fs, &ev2).unwrap();
        assert_eq!((c.n, c.k), (12, 3));
        assert_eq!(c.bounds.product_bound, Some(5));
        let d = min_distance(&c.field, &c.generator, DEFAULT_ENUM_CAP).unwrap();
        assert!(d.exact_distance.unwrap() >= 5);
    }

    #[test]
    fn inner_code_checks() {
        let f = Field::with_default(2, 2).unwrap();
        assert_eq!(InnerCode::parity(&f, 3).unwrap().to_string(), "parity[4,3,2]");
        let rep = vec![vec![Elem::ONE, Elem::ONE, Elem::ONE]];
        assert!(InnerCode::custom(&f, rep.clone(), 3).is_ok());
        assert!(matches!(
            InnerCode::custom(&f, rep, 4),
            Err(CodeError::InnerDistance { declared: 4, actual: 3 })
        ));
        let dependent = vec![vec![Elem::ONE, Elem::ZERO], vec![Elem(2), Elem::ZERO]];
        assert!(matches!(
            InnerCode::custom(&f, dependent, 1),
            Err(CodeError::InnerShape { .. })
        ));
    }

    #[test]
    fn inner_mismatch_rejected() {
        let (_, ev) = x6_curve(true);
        let base = ev.base_field().clone();
        let inner: Vec<InnerCode> = (0..9).map(|_| InnerCode::identity(&base, 1).unwrap()).collect();
        assert!(matches!(
            Evaluation::new(ev.basis().clone(), ev.points().clone(), inner),
            Err(CodeError::InnerMismatch {
                index: 8,
                degree: 3,
                inner: 1
            })
        ));
    }

    /// Minimum of Σ_{i∉S} d_i over all admissible S.
    fn brute_gag(deg_g: u64, k: &[u64], d: &[u64]) -> u64 {
        (0u32..1 << k.len())
            .filter(|s| (0..k.len()).filter(|i| s >> i & 1 == 1).map(|i| k[i]).sum::<u64>() <= deg_g)
            .map(|s| (0..k.len()).filter(|i| s >> i & 1 == 0).map(|i| d[i]).sum())
            .min()
            .unwrap()
    }

    #[test]
    fn gag_examples() {
        let k = [1, 1, 1, 1, 1, 1, 1, 1, 3];
        let d = [1; 9];
        assert_eq!(gag_designed_distance(6, &k, &d).unwrap(), 3);
        assert_eq!(gag_designed_distance(0, &k, &d).unwrap(), 9);
        assert!(gag_designed_distance(11, &k, &d).is_err());
        let x = xnl_parameters(6, 10, &k, &d);
        assert_eq!((x.dim_bound, x.vacuous, x.designed), (-3, true, Some(3)));
        assert!(xnl_parameters(19, 10, &k[..1], &d[..1]).riemann_roch_exact);
        assert_eq!(xnl_parameters(0, 10, &k, &d).dim_bound, -9);
    }

    #[test]
    fn gag_matches_brute_force() {
        let mut state = 12345u64;
        let mut next = |m: u64| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) % m
        };
        for _ in 0..200 {
            let h = 1 + next(12) as usize;
            let k: Vec<u64> = (0..h).map(|_| 1 + next(4)).collect();
            let d: Vec<u64> = (0..h).map(|_| 1 + next(3)).collect();
            let total: u64 = k.iter().sum();
            let deg_g = next(total);
            assert_eq!(gag_designed_distance(deg_g, &k, &d).unwrap(), brute_gag(deg_g, &k, &d));
        }
    }
}
