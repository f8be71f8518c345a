//! Exhaustive minimum-distance computation and bound verification.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::codes::CodeInstance;
use crate::gf::{Elem, Field};

/// Largest message count enumerated by default.
pub const DEFAULT_ENUM_CAP: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistanceError {
    #[error("enumerating {messages} messages exceeds the cap {cap}")]
    CapExceeded { messages: u128, cap: u64 },
    #[error("generator rows have unequal lengths")]
    Ragged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    Parallel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    /// `None` only for the zero code.
    pub exact_distance: Option<usize>,
    pub enumerated: u64,
    pub method: Method,
    pub witness_message: Option<Vec<Elem>>,
    pub witness: Option<Vec<Elem>>,
}

pub fn min_distance(field: &Field, rows: &[Vec<Elem>], cap: u64) -> Result<DistanceReport, DistanceError> {
    min_distance_with(field, rows, cap, Parallelism::Parallel)
}

/// Minimum Hamming weight over all nonzero messages. Ties are broken by the
/// smallest message index Σ m_j q^j, so the witness does not depend on how
/// the work is split.
pub fn min_distance_with(
    field: &Field,
    rows: &[Vec<Elem>],
    cap: u64,
    mode: Parallelism,
) -> Result<DistanceReport, DistanceError> {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != n) {
        return Err(DistanceError::Ragged);
    }
    let q = field.size() as u64;
    let messages = (q as u128).pow(k as u32);
    if messages > cap as u128 {
        return Err(DistanceError::CapExceeded { messages, cap });
    }
    if k == 0 {
        return Ok(DistanceReport {
            exact_distance: None,
            enumerated: 0,
            method: Method::Full,
            witness_message: None,
            witness: None,
        });
    }
    let scaled: Vec<Vec<Vec<Elem>>> = rows
        .iter()
        .map(|r| {
            field
                .elements()
                .map(|c| r.iter().map(|&x| field.mul(c, x)).collect())
                .collect()
        })
        .collect();
    let top = k - 1;
    let stride = q.pow(top as u32);
    let chunk = |t: u64| {
        let mut best = (usize::MAX, u64::MAX);
        search(field, &scaled, top, &scaled[top][t as usize], t * stride, &mut best);
        best
    };
    let best = match mode {
        Parallelism::Sequential => (0..q).map(chunk).min(),
        Parallelism::Parallel => (0..q).into_par_iter().map(chunk).min(),
    }
    .unwrap();
    let message: Vec<Elem> = (0..k).map(|j| Elem((best.1 / q.pow(j as u32) % q) as u32)).collect();
    let witness = (0..n)
        .map(|c| field.sum(message.iter().zip(rows).map(|(&m, r)| field.mul(m, r[c]))))
        .collect();
    Ok(DistanceReport {
        exact_distance: Some(best.0),
        enumerated: messages as u64 - 1,
        method: Method::Full,
        witness_message: Some(message),
        witness: Some(witness),
    })
}

fn search(
    field: &Field,
    scaled: &[Vec<Vec<Elem>>],
    level: usize,
    partial: &[Elem],
    index: u64,
    best: &mut (usize, u64),
) {
    if level == 0 {
        if index != 0 {
            let w = partial.iter().filter(|x| !x.is_zero()).count();
            if (w, index) < *best {
                *best = (w, index);
            }
        }
        return;
    }
    let j = level - 1;
    let q = scaled[j].len() as u64;
    let stride = q.pow(j as u32);
    for (d, row) in scaled[j].iter().enumerate() {
        let next: Vec<Elem> = partial.iter().zip(row).map(|(&a, &b)| field.add(a, b)).collect();
        search(field, scaled, j, &next, index + d as u64 * stride, best);
    }
}

/// One comparison of an attached bound against the computed value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub bound: i64,
    /// The exact distance, or the dimension for the dimension bound.
    pub actual: i64,
    pub holds: bool,
}

/// Every attached bound checked against `report`. Distance bounds are
/// vacuous for the zero code.
pub fn verify_bounds(code: &CodeInstance, report: &DistanceReport) -> Vec<BoundCheck> {
    let mut out = Vec::new();
    if let Some(d) = report.exact_distance {
        let d = d as i64;
        for (name, b) in code.bounds.distance_bounds() {
            out.push(BoundCheck {
                name,
                bound: b,
                actual: d,
                holds: b <= d,
            });
        }
    }
    if let Some(b) = code.bounds.xnl_dim_bound {
        let k = code.k as i64;
        out.push(BoundCheck {
            name: "xnl_dim_bound",
            bound: b,
            actual: k,
            holds: b <= k,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[u32]) -> Vec<Elem> {
        v.iter().map(|&x| Elem(x)).collect()
    }

    #[test]
    fn repetition_and_identity() {
        let f = Field::with_default(2, 2).unwrap();
        let rep = min_distance(&f, &[e(&[1, 1, 1, 1, 1])], DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(rep.exact_distance, Some(5));
        assert_eq!(rep.enumerated, 3);
        let id = vec![e(&[1, 0, 0]), e(&[0, 1, 0]), e(&[0, 0, 1])];
        let r = min_distance(&f, &id, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(r.exact_distance, Some(1));
        assert_eq!(r.witness_message, Some(e(&[1, 0, 0])));
        assert_eq!(r.witness, Some(e(&[1, 0, 0])));
    }

    #[test]
    fn hamming_code() {
        let f = Field::with_default(2, 1).unwrap();
        let g = vec![
            e(&[1, 0, 0, 0, 0, 1, 1]),
            e(&[0, 1, 0, 0, 1, 0, 1]),
            e(&[0, 0, 1, 0, 1, 1, 0]),
            e(&[0, 0, 0, 1, 1, 1, 1]),
        ];
        let seq = min_distance_with(&f, &g, DEFAULT_ENUM_CAP, Parallelism::Sequential).unwrap();
        let par = min_distance_with(&f, &g, DEFAULT_ENUM_CAP, Parallelism::Parallel).unwrap();
        assert_eq!(seq.exact_distance, Some(3));
        assert_eq!(seq, par);
        let w = seq.witness.unwrap();
        assert_eq!(w.iter().filter(|x| !x.is_zero()).count(), 3);
    }

    #[test]
    fn refuses_beyond_cap() {
        let f = Field::with_default(2, 2).unwrap();
        let rows = vec![e(&[1, 0]), e(&[0, 1])];
        assert!(matches!(
            min_distance(&f, &rows, 15),
            Err(DistanceError::CapExceeded { messages: 16, cap: 15 })
        ));
        assert_eq!(min_distance(&f, &[], 1).unwrap().exact_distance, None);
    }
}
