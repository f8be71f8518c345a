//! Row reduction over a finite field.

use crate::gf::{Elem, Field};

/// Rows in reduced echelon form, grown one vector at a time.
#[derive(Debug, Clone)]
pub struct RowBasis<'a> {
    field: &'a Field,
    rows: Vec<(usize, Vec<Elem>)>,
}

impl<'a> RowBasis<'a> {
    pub fn new(field: &'a Field) -> Self {
        Self {
            field,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// `v` minus its projection onto the current span.
    pub fn reduce(&self, v: &[Elem]) -> Vec<Elem> {
        let f = self.field;
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            let c = v[*pivot];
            if !c.is_zero() {
                let neg = f.neg(c);
                for (x, r) in v.iter_mut().zip(row) {
                    *x = f.add(*x, f.mul(neg, *r));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Elem]) -> bool {
        let f = self.field;
        let v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(v[pivot]).unwrap();
        let v: Vec<Elem> = v.iter().map(|&x| f.mul(x, inv)).collect();
        for (_, row) in &mut self.rows {
            let c = row[pivot];
            if !c.is_zero() {
                let neg = f.neg(c);
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = f.add(*x, f.mul(neg, *r));
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    /// The reduced echelon form, rows sorted by pivot column.
    pub fn into_rref(mut self) -> Vec<Vec<Elem>> {
        self.rows.sort_by_key(|(p, _)| *p);
        self.rows.into_iter().map(|(_, r)| r).collect()
    }
}

pub fn rref(field: &Field, rows: &[Vec<Elem>]) -> Vec<Vec<Elem>> {
    let mut b = RowBasis::new(field);
    for r in rows {
        b.insert(r);
    }
    b.into_rref()
}

pub fn rank(field: &Field, rows: &[Vec<Elem>]) -> usize {
    rref(field, rows).len()
}

pub fn same_row_space(field: &Field, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> bool {
    rref(field, a) == rref(field, b)
}

/// Whether every row of `small` lies in the row space of `big`.
pub fn row_space_contains(field: &Field, big: &[Vec<Elem>], small: &[Vec<Elem>]) -> bool {
    let mut b = RowBasis::new(field);
    for r in big {
        b.insert(r);
    }
    small.iter().all(|r| b.contains(r))
}
