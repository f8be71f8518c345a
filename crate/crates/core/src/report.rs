//! Structured reports and their plain-text rendering.

use std::fmt::Write as _;

use serde::Serialize;

use crate::codes::{Bounds, CodeInstance, CodeProvenance, ConstructionTag, PointRecord};
use crate::config::Config;
use crate::distance::{BoundCheck, Method};
use crate::pipeline::{Analysis, Verification};
use crate::poly::Weight;

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub config: Config,
    pub field: String,
    pub ideal_basis: Vec<String>,
    pub order_domain: DiagnosisReport,
    pub footprint: FootprintReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<GammaReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points: Option<PointsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<Vec<Weight>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<SigmaEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code: Option<CodeReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagnosisReport {
    pub satisfied: bool,
    pub failing_generator: Option<String>,
    pub colliding_pair: Option<[String; 2]>,
    pub verified_up_to: Option<Weight>,
}

/// Footprint of I_q, the ideal with the field equations added.
#[derive(Debug, Clone, Serialize)]
pub struct FootprintReport {
    pub basis: Vec<String>,
    pub monomials: Vec<String>,
    pub weights: Vec<Weight>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaReport {
    pub generators: Vec<Weight>,
    pub conductor: Option<u64>,
    pub gaps: Option<Vec<u64>>,
    pub genus: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PointsReport {
    pub compositum: String,
    pub h: usize,
    pub points: Vec<PointRecord>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaEntry {
    pub weight: Weight,
    pub sigma: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CodeReport {
    pub construction: ConstructionTag,
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub bounds: Bounds,
    pub provenance: CodeProvenance,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub method: Method,
    pub exact_distance: Option<usize>,
    pub enumerated: u64,
    pub witness: Option<Vec<u32>>,
    pub checks: Vec<BoundCheck>,
    pub all_hold: bool,
}

impl Report {
    pub fn new(an: &Analysis) -> Self {
        let ring = &an.ring;
        let fp = an.basis_q.footprint();
        let ms = fp.monomials().expect("field equations bound every variable");
        let d = &an.diagnosis;
        let mut report = Report {
            config: an.config.clone(),
            field: ring.field().spec().to_string(),
            ideal_basis: an.basis.polys().iter().map(|p| p.to_string()).collect(),
            order_domain: DiagnosisReport {
                satisfied: d.satisfied,
                failing_generator: d.failing_generator.map(|i| an.basis.polys()[i].to_string()),
                colliding_pair: d
                    .colliding_pair
                    .as_ref()
                    .map(|(a, b)| [ring.format_monomial(a), ring.format_monomial(b)]),
                verified_up_to: d.verified_up_to.clone(),
            },
            footprint: FootprintReport {
                basis: an.basis_q.polys().iter().map(|p| p.to_string()).collect(),
                monomials: ms.iter().map(|m| ring.format_monomial(m)).collect(),
                weights: ms.iter().map(|m| ring.order().weight(m)).collect(),
            },
            gamma: None,
            points: None,
            delta: an.delta.clone(),
            sigma: None,
            code: None,
            oracle: None,
        };
        if let Some(ev) = &an.evaluation {
            let g = ev.gamma();
            report.gamma = Some(GammaReport {
                generators: g.generators().to_vec(),
                conductor: g.conductor().ok(),
                gaps: g.gaps().ok(),
                genus: g.genus().ok(),
            });
            let pts = ev.points();
            report.points = Some(PointsReport {
                compositum: pts.ext.field().spec().to_string(),
                h: pts.len(),
                points: pts
                    .points
                    .iter()
                    .map(|p| PointRecord {
                        coords: p.encodings(),
                        degree: p.degree,
                    })
                    .collect(),
            });
            report.sigma = Some(
                ev.delta_weights()
                    .into_iter()
                    .map(|w| SigmaEntry {
                        sigma: ev.sigma(&w).expect("footprint weights are in Δ"),
                        weight: w,
                    })
                    .collect(),
            );
        }
        report
    }

    pub fn with_code(mut self, code: &CodeInstance) -> Self {
        self.code = Some(CodeReport {
            construction: code.tag,
            n: code.n,
            k: code.k,
            q: code.field.size(),
            bounds: code.bounds.clone(),
            provenance: code.provenance.clone(),
        });
        self
    }

    pub fn with_verification(mut self, v: &Verification) -> Self {
        self.oracle = Some(OracleReport {
            method: v.distance.method,
            exact_distance: v.distance.exact_distance,
            enumerated: v.distance.enumerated,
            witness: v.distance.witness.as_ref().map(|w| w.iter().map(|e| e.0).collect()),
            checks: v.checks.clone(),
            all_hold: v.all_hold(),
        });
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let join = |ws: &[Weight]| ws.iter().map(Weight::to_string).collect::<Vec<_>>().join(" ");
        let _ = writeln!(s, "field: {}", self.field);
        let _ = writeln!(s, "ideal basis: {}", self.ideal_basis.join(", "));
        let od = &self.order_domain;
        let _ = writeln!(
            s,
            "order domain: {}",
            if od.satisfied { "satisfied" } else { "violated" }
        );
        if let Some(g) = &od.failing_generator {
            let _ = writeln!(s, "  generator without two top-weight terms: {g}");
        }
        if let Some([a, b]) = &od.colliding_pair {
            let _ = writeln!(s, "  standard monomials of equal weight: {a}, {b}");
        }
        if let Some(w) = &od.verified_up_to {
            let _ = writeln!(s, "  weights checked up to: {w}");
        }
        let fp = &self.footprint;
        let _ = writeln!(s, "basis with field equations: {}", fp.basis.join(", "));
        let _ = writeln!(s, "footprint size: {}", fp.monomials.len());
        let _ = writeln!(s, "footprint: {}", fp.monomials.join(" "));
        let _ = writeln!(s, "footprint weights: {}", join(&fp.weights));
        if let Some(g) = &self.gamma {
            let _ = writeln!(s, "gamma generators: {}", join(&g.generators));
            if let (Some(c), Some(gaps), Some(genus)) = (g.conductor, &g.gaps, g.genus) {
                let gaps: Vec<String> = gaps.iter().map(u64::to_string).collect();
                let _ = writeln!(s, "gamma conductor: {c}");
                let _ = writeln!(s, "gamma gaps: {}", gaps.join(" "));
                let _ = writeln!(s, "genus: {genus}");
            }
        }
        if let Some(p) = &self.points {
            let _ = writeln!(s, "points over {}: h = {}", p.compositum, p.h);
            for pt in &p.points {
                let c: Vec<String> = pt.coords.iter().map(u32::to_string).collect();
                let _ = writeln!(s, "  ({}) degree {}", c.join(", "), pt.degree);
            }
        }
        if let Some(d) = &self.delta {
            let _ = writeln!(s, "delta: {}", join(d));
        }
        if let Some(sig) = &self.sigma {
            let parts: Vec<String> = sig.iter().map(|e| format!("{}:{}", e.weight, e.sigma)).collect();
            let _ = writeln!(s, "sigma: {}", parts.join(" "));
        }
        if let Some(c) = &self.code {
            let tag = serde_json::to_value(c.construction).unwrap();
            let _ = writeln!(s, "code: {} [{}, {}] over GF({})", tag.as_str().unwrap(), c.n, c.k, c.q);
            let _ = writeln!(s, "  space: {}", c.provenance.space);
            let _ = writeln!(s, "  inner codes: {}", c.provenance.inner.join(" "));
            let b = &c.bounds;
            let fields: [(&str, Option<i64>); 6] = [
                ("sigma_bound", b.sigma_bound.map(|x| x as i64)),
                ("inner_min", b.inner_min.map(|x| x as i64)),
                ("product_bound", b.product_bound.map(|x| x as i64)),
                ("one_point_bound", b.one_point_bound),
                ("gag_designed", b.gag_designed.map(|x| x as i64)),
                ("xnl_dim_bound", b.xnl_dim_bound),
            ];
            for (name, v) in fields {
                if let Some(v) = v {
                    let _ = writeln!(s, "  {name}: {v}");
                }
            }
        }
        if let Some(o) = &self.oracle {
            match o.exact_distance {
                Some(d) => {
                    let _ = writeln!(s, "oracle: exact distance {d} ({} messages)", o.enumerated);
                }
                None => {
                    let _ = writeln!(s, "oracle: zero code");
                }
            }
            for c in &o.checks {
                let verdict = if c.holds { "ok" } else { "VIOLATED" };
                let _ = writeln!(s, "  check {}: {} <= {} {verdict}", c.name, c.bound, c.actual);
            }
        }
        s
    }
}
