//! From a [`Config`] to an analysis, a code and an oracle run.

use std::sync::Arc;

use thiserror::Error;

use crate::codes::{
    build_affine_variety_code, build_e_improved, build_e_lambda, build_extended_code, delta_sequence,
    well_behaving_basis, CodeError, CodeInstance, Evaluation, InnerCode,
};
use crate::config::{
    Config, ConfigError, InnerKindConfig, RationalConfig, RationalKeyword, SpaceConfig, WeightsConfig,
};
use crate::distance::{min_distance_with, verify_bounds, BoundCheck, DistanceError, DistanceReport, Parallelism};
use crate::gf::{Elem, Field, FieldError, FieldSpec};
use crate::groebner::{buchberger_with_cap, with_field_equations, GroebnerBasis, GroebnerError, DEFAULT_BASIS_CAP};
use crate::points::{select_points, PointError, PointRequest, PointSelection, RationalChoice};
use crate::poly::{Poly, PolyError, PolyRing, Weight, WeightedOrder};
use crate::semigroup::{check_order_domain, OrderDomainDiagnosis};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Points(#[from] PointError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Distance(#[from] DistanceError),
    #[error("order-domain conditions fail; no code can be built")]
    OrderDomain,
    #[error("the greedy Δ sequence disagrees with the footprint of the point ideal")]
    DeltaMismatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input.
    Input,
    OrderDomain,
    /// A size cap was hit.
    ResourceCap,
}

impl PipelineError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            PipelineError::OrderDomain | PipelineError::Code(CodeError::OrderDomain(_)) => ErrorKind::OrderDomain,
            PipelineError::Groebner(GroebnerError::BasisCap { .. })
            | PipelineError::Points(PointError::SearchCap { .. })
            | PipelineError::Distance(DistanceError::CapExceeded { .. })
            | PipelineError::Code(CodeError::Distance(DistanceError::CapExceeded { .. }))
            | PipelineError::Code(CodeError::Groebner(GroebnerError::BasisCap { .. })) => ErrorKind::ResourceCap,
            _ => ErrorKind::Input,
        }
    }
}

/// Everything derived from a config before a code is chosen.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub config: Config,
    pub ring: Arc<PolyRing>,
    /// Reduced basis of I.
    pub basis: GroebnerBasis,
    /// Reduced basis of I_q = I + ⟨X_i^q − X_i⟩.
    pub basis_q: GroebnerBasis,
    pub diagnosis: OrderDomainDiagnosis,
    /// Present iff the order-domain conditions hold.
    pub evaluation: Option<Evaluation>,
    pub delta: Option<Vec<Weight>>,
}

pub fn ring_from_config(cfg: &Config) -> Result<Arc<PolyRing>, PipelineError> {
    let spec = match &cfg.field.modulus {
        Some(m) => FieldSpec::new(cfg.field.p, cfg.field.k, m.clone()),
        None => FieldSpec::with_default_modulus(cfg.field.p, cfg.field.k)?,
    };
    let field = Arc::new(Field::new(spec)?);
    let weights: Vec<Weight> = match &cfg.ring.weights {
        WeightsConfig::Scalar(w) => w.iter().map(|&x| Weight::scalar(x)).collect(),
        WeightsConfig::Vector(w) => w.iter().map(|v| Weight(v.clone())).collect(),
    };
    let names = &cfg.ring.variables;
    let precedence = match &cfg.ring.precedence {
        Some(p) => p.iter().map(|n| names.iter().position(|x| x == n).unwrap()).collect(),
        None => (0..names.len()).collect(),
    };
    let order = WeightedOrder::new(weights, precedence)?;
    Ok(PolyRing::new(field, names.clone(), order)?)
}

fn parse_all(
    ring: &Arc<PolyRing>,
    texts: &[String],
    err: impl Fn(usize, usize, String) -> ConfigError,
) -> Result<Vec<Poly>, ConfigError> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| ring.parse(t).map_err(|e| err(i, e.column, e.message)))
        .collect()
}

pub fn analyze(cfg: &Config) -> Result<Analysis, PipelineError> {
    cfg.validate()?;
    let ring = ring_from_config(cfg)?;
    let gens = parse_all(&ring, &cfg.ideal.generators, |index, column, message| {
        ConfigError::Generator { index, column, message }
    })?;
    let basis = buchberger_with_cap(&gens, DEFAULT_BASIS_CAP)?;
    let basis_q = buchberger_with_cap(&with_field_equations(&gens, &ring), DEFAULT_BASIS_CAP)?;
    let check_box = cfg.ring.check_box.clone().map(Weight);
    let diagnosis = check_order_domain(&basis, check_box);
    if !diagnosis.satisfied {
        return Ok(Analysis {
            config: cfg.clone(),
            ring,
            basis,
            basis_q,
            diagnosis,
            evaluation: None,
            delta: None,
        });
    }
    let selection = PointSelection {
        rational: match &cfg.points.rational {
            RationalConfig::Keyword(RationalKeyword::All) => RationalChoice::All,
            RationalConfig::Keyword(RationalKeyword::None) => RationalChoice::Indices(Vec::new()),
            RationalConfig::Indices(ix) => RationalChoice::Indices(ix.clone()),
        },
        extra: cfg
            .points
            .extra
            .iter()
            .map(|e| PointRequest {
                degree: e.degree,
                index: e.index,
            })
            .collect(),
    };
    let points = select_points(basis.polys(), &selection, cfg.output.search_cap)?;
    let inner = inner_codes(cfg, ring.field(), &points.degrees())?;
    let evaluation = Evaluation::new(basis.clone(), points, inner)?;
    let delta = delta_sequence(&evaluation)?;
    if delta != evaluation.delta_weights() {
        return Err(PipelineError::DeltaMismatch);
    }
    Ok(Analysis {
        config: cfg.clone(),
        ring,
        basis,
        basis_q,
        diagnosis,
        evaluation: Some(evaluation),
        delta: Some(delta),
    })
}

fn inner_codes(cfg: &Config, field: &Field, degrees: &[u32]) -> Result<Vec<InnerCode>, PipelineError> {
    let ic = &cfg.inner_codes;
    if let Some(o) = ic.overrides.iter().find(|o| o.point >= degrees.len()) {
        return Err(ConfigError::invalid(
            "inner_codes",
            format!(
                "override for point {} but only {} points are selected",
                o.point,
                degrees.len()
            ),
        )
        .into());
    }
    let mut out = Vec::with_capacity(degrees.len());
    for (i, &r) in degrees.iter().enumerate() {
        let r = r as usize;
        let code = match ic.overrides.iter().find(|o| o.point == i) {
            Some(o) if o.kind == InnerKindConfig::Custom => {
                let g = o
                    .generator
                    .as_ref()
                    .unwrap()
                    .iter()
                    .map(|row| row.iter().map(|&x| Elem(x)).collect())
                    .collect();
                InnerCode::custom(field, g, o.d.unwrap())?
            }
            Some(o) => simple_inner(field, o.kind, r)?,
            None => simple_inner(field, ic.default, r)?,
        };
        out.push(code);
    }
    Ok(out)
}

fn simple_inner(field: &Field, kind: InnerKindConfig, r: usize) -> Result<InnerCode, CodeError> {
    match kind {
        InnerKindConfig::Parity => InnerCode::parity(field, r),
        InnerKindConfig::Identity => InnerCode::identity(field, r),
        InnerKindConfig::Custom => Err(CodeError::InnerShape { rows: r }),
    }
}

/// Builds the code described by the space section. Lists of functions give
/// C(I, L) when every point is rational with identity inner code and the
/// extended code otherwise.
pub fn build(an: &Analysis) -> Result<CodeInstance, PipelineError> {
    let ev = an.evaluation.as_ref().ok_or(PipelineError::OrderDomain)?;
    let code = match &an.config.space {
        SpaceConfig::Monomials { functions } => {
            let span = parse_all(&an.ring, functions, |index, column, message| ConfigError::Function {
                index,
                column,
                message,
            })?;
            let fs = well_behaving_basis(&span, &an.basis)?;
            match build_affine_variety_code(&fs, ev) {
                Err(CodeError::NotAffine) => build_extended_code(&fs, ev)?,
                other => other?,
            }
        }
        SpaceConfig::WeightLe { lambda } => build_e_lambda(&Weight::scalar(*lambda), ev)?,
        SpaceConfig::Improved { delta } => build_e_improved(*delta, ev)?,
    };
    Ok(code)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub distance: DistanceReport,
    pub checks: Vec<BoundCheck>,
}

impl Verification {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

pub fn verify(code: &CodeInstance, cap: u64, mode: Parallelism) -> Result<Verification, PipelineError> {
    let distance = min_distance_with(&code.field, &code.generator, cap, mode)?;
    let checks = verify_bounds(code, &distance);
    Ok(Verification { distance, checks })
}
