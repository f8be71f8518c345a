//! Multivariate polynomials under a generalized weighted-degree ordering.
//!
//! Monomials are compared first by their weight vector in N₀^r
//! (lexicographically), then by total degree, then lexicographically on the
//! exponents following a declared variable precedence.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf::{Elem, Embedding, Field};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("weight vectors must all have the same length r >= 1")]
    WeightDimension,
    #[error("variable precedence must be a permutation of the variables")]
    BadPrecedence,
    #[error("variable names must be distinct identifiers")]
    BadNames,
    #[error("point has {got} coordinates, ring has {expected} variables")]
    PointDimension { expected: usize, got: usize },
    #[error("embedding source does not match the coefficient field")]
    FieldMismatch,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

/// A weight in N₀^r, compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<u64>);

impl Weight {
    pub fn scalar(w: u64) -> Self {
        Weight(vec![w])
    }

    pub fn zero(r: usize) -> Self {
        Weight(vec![0; r])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// The single component of a scalar weight.
    pub fn as_scalar(&self) -> Option<u64> {
        match self.0.as_slice() {
            [w] => Some(*w),
            _ => None,
        }
    }

    pub fn scaled(&self, k: u64) -> Weight {
        Weight(self.0.iter().map(|x| x * k).collect())
    }

    /// Componentwise difference, if it stays in N₀^r.
    pub fn checked_sub(&self, other: &Weight) -> Option<Weight> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Weight)
    }

    /// Componentwise `≤`.
    pub fn dominated_by(&self, other: &Weight) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_scalar() {
            Some(w) => write!(f, "{w}"),
            None => {
                let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(num_vars: usize) -> Self {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// If this is a pure power `X_i^e` with `e > 0`, returns `(i, e)`.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut nz = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        match (nz.next(), nz.next()) {
            (Some((i, &e)), None) => Some((i, e)),
            _ => None,
        }
    }
}

impl Mul for &Monomial {
    type Output = Monomial;

    fn mul(self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

/// A generalized weighted-degree ordering ≺_w.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedOrder {
    weights: Vec<Weight>,
    precedence: Vec<usize>,
}

impl WeightedOrder {
    /// `weights[i]` is w(X_i); `precedence` lists variable indices from the
    /// highest to the lowest, used for the final lexicographic tie-break.
    pub fn new(weights: Vec<Weight>, precedence: Vec<usize>) -> Result<Self, PolyError> {
        let m = weights.len();
        let r = weights.first().map(Weight::dim).unwrap_or(1);
        if r == 0 || weights.iter().any(|w| w.dim() != r) {
            return Err(PolyError::WeightDimension);
        }
        let mut seen = vec![false; m];
        if precedence.len() != m {
            return Err(PolyError::BadPrecedence);
        }
        for &i in &precedence {
            if i >= m || seen[i] {
                return Err(PolyError::BadPrecedence);
            }
            seen[i] = true;
        }
        Ok(Self { weights, precedence })
    }

    /// Scalar weights with precedence X_0 ≻ X_1 ≻ ...
    pub fn scalar(weights: &[u64]) -> Self {
        Self::new(
            weights.iter().map(|&w| Weight::scalar(w)).collect(),
            (0..weights.len()).collect(),
        )
        .expect("scalar weights are well formed")
    }

    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    /// Dimension r of the weight space.
    pub fn weight_dim(&self) -> usize {
        self.weights.first().map(Weight::dim).unwrap_or(1)
    }

    pub fn var_weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn weight(&self, m: &Monomial) -> Weight {
        let mut w = vec![0u64; self.weight_dim()];
        for (e, vw) in m.exps().iter().zip(&self.weights) {
            for (acc, x) in w.iter_mut().zip(&vw.0) {
                *acc += *e as u64 * x;
            }
        }
        Weight(w)
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.weight(a)
            .cmp(&self.weight(b))
            .then_with(|| a.degree().cmp(&b.degree()))
            .then_with(|| {
                self.precedence
                    .iter()
                    .map(|&i| a.exps()[i].cmp(&b.exps()[i]))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
    }
}

/// Coefficient field, ordering and variable names.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: Arc<Field>,
    order: WeightedOrder,
    names: Vec<String>,
}

impl PolyRing {
    pub fn new(field: Arc<Field>, names: Vec<String>, order: WeightedOrder) -> Result<Arc<Self>, PolyError> {
        if names.len() != order.num_vars() {
            return Err(PolyError::WeightCount {
                expected: names.len(),
                got: order.num_vars(),
            });
        }
        let valid = |s: &String| {
            let mut c = s.chars();
            matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
                && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
        };
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() || !names.iter().all(valid) {
            return Err(PolyError::BadNames);
        }
        Ok(Arc::new(Self { field, order, names }))
    }

    /// Same variables and ordering over another coefficient field.
    pub fn with_field(&self, field: Arc<Field>) -> Arc<Self> {
        Arc::new(Self {
            field,
            order: self.order.clone(),
            names: self.names.clone(),
        })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn order(&self) -> &WeightedOrder {
        &self.order
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn zero(self: &Arc<Self>) -> Poly {
        Poly {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(self: &Arc<Self>, c: Elem) -> Poly {
        self.term(Monomial::one(self.num_vars()), c)
    }

    pub fn one(self: &Arc<Self>) -> Poly {
        self.constant(Elem::ONE)
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Poly {
        self.monomial(Monomial::var(self.num_vars(), i))
    }

    pub fn monomial(self: &Arc<Self>, m: Monomial) -> Poly {
        self.term(m, Elem::ONE)
    }

    pub fn term(self: &Arc<Self>, m: Monomial, c: Elem) -> Poly {
        let terms = if c.is_zero() { vec![] } else { vec![(m, c)] };
        Poly {
            ring: self.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Elem)>>(self: &Arc<Self>, it: I) -> Poly {
        let mut acc: HashMap<Monomial, Elem> = HashMap::new();
        for (m, c) in it {
            let e = acc.entry(m).or_insert(Elem::ZERO);
            *e = self.field.add(*e, c);
        }
        self.sorted(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    fn sorted(self: &Arc<Self>, mut terms: Vec<(Monomial, Elem)>) -> Poly {
        terms.sort_by(|a, b| self.order.compare(&b.0, &a.0));
        Poly {
            ring: self.clone(),
            terms,
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exps()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Parses `X^6+Y^5+Y`-style text. Coefficients are element encodings;
    /// `*` is optional, and a run of single-letter variable names such as
    /// `XY` is read as a product.
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Poly, ParseError> {
        Parser::new(self, text).parse()
    }

    /// Parses a single monomial such as `X^2*Y` or `1`.
    pub fn parse_monomial(self: &Arc<Self>, text: &str) -> Result<Monomial, ParseError> {
        let p = self.parse(text)?;
        match p.terms.as_slice() {
            [(m, c)] if *c == Elem::ONE => Ok(m.clone()),
            _ => Err(ParseError {
                column: 0,
                message: format!("`{text}` is not a monomial"),
            }),
        }
    }
}

/// A polynomial with terms kept in decreasing ≺_w order and no zero
/// coefficients.
#[derive(Clone)]
pub struct Poly {
    pub(crate) ring: Arc<PolyRing>,
    pub(crate) terms: Vec<(Monomial, Elem)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.ring == other.ring
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let ms = self.ring.format_monomial(m);
                match (*c == Elem::ONE, m.is_one()) {
                    (true, _) => ms,
                    (false, true) => c.to_string(),
                    (false, false) => format!("{c}*{ms}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl Poly {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Elem)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lc(&self) -> Option<Elem> {
        self.terms.first().map(|(_, c)| *c)
    }

    pub fn support(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(m, _)| m)
    }

    pub fn coefficient(&self, m: &Monomial) -> Elem {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| *c)
            .unwrap_or(Elem::ZERO)
    }

    fn field(&self) -> &Field {
        &self.ring.field
    }

    pub fn scale(&self, c: Elem) -> Poly {
        if c.is_zero() {
            return self.ring.zero();
        }
        let f = self.field();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    /// `c · m · self`.
    pub fn mul_term(&self, m: &Monomial, c: Elem) -> Poly {
        if c.is_zero() {
            return self.ring.zero();
        }
        let f = self.field();
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t * m, f.mul(*a, c))).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => self.clone(),
            Some(c) => self.scale(self.field().inv(c).expect("nonzero leading coefficient")),
        }
    }

    /// `self + c · other`, merging the sorted term lists.
    pub fn add_scaled(&self, other: &Poly, c: Elem) -> Poly {
        let f = self.field();
        let ord = &self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let pick = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => ord.compare(&a.0, &b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match pick {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, b) = &other.terms[j];
                    let v = f.mul(*b, c);
                    if !v.is_zero() {
                        out.push((m.clone(), v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(self.terms[i].1, f.mul(other.terms[j].1, c));
                    if !v.is_zero() {
                        out.push((self.terms[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// Evaluates at a point whose coordinates live in `emb.dst()`, mapping
    /// coefficients through `emb`.
    pub fn evaluate(&self, point: &[Elem], emb: &Embedding) -> Result<Elem, PolyError> {
        if point.len() != self.ring.num_vars() {
            return Err(PolyError::PointDimension {
                expected: self.ring.num_vars(),
                got: point.len(),
            });
        }
        if **emb.src() != *self.ring.field {
            return Err(PolyError::FieldMismatch);
        }
        let f = emb.dst();
        Ok(f.sum(self.terms.iter().map(|(m, c)| {
            let v = m
                .exps()
                .iter()
                .zip(point)
                .fold(Elem::ONE, |acc, (&e, &x)| f.mul(acc, f.pow(x, e as u64)));
            f.mul(emb.embed(*c), v)
        })))
    }

    /// Evaluates at a point over the coefficient field itself.
    pub fn eval(&self, point: &[Elem]) -> Elem {
        let f = self.field();
        assert_eq!(point.len(), self.ring.num_vars(), "point dimension mismatch");
        f.sum(self.terms.iter().map(|(m, c)| {
            let v = m
                .exps()
                .iter()
                .zip(point)
                .fold(Elem::ONE, |acc, (&e, &x)| f.mul(acc, f.pow(x, e as u64)));
            f.mul(*c, v)
        }))
    }

    /// The same polynomial over the ring `target`, coefficients mapped by `emb`.
    pub fn embed(&self, target: &Arc<PolyRing>, emb: &Embedding) -> Poly {
        Poly {
            ring: target.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), emb.embed(*c))).collect(),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        self.add_scaled(rhs, Elem::ONE)
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        self.add_scaled(rhs, self.field().neg(Elem::ONE))
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.scale(self.field().neg(Elem::ONE))
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let f = self.field();
        let mut acc: HashMap<Monomial, Elem> = HashMap::new();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let e = acc.entry(a * b).or_insert(Elem::ZERO);
                *e = f.add(*e, f.mul(*x, *y));
            }
        }
        self.ring
            .sorted(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(ring: &'a Arc<PolyRing>, src: &'a str) -> Self {
        Self { ring, src, pos: 0 }
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.pos + 1,
            message: message.into(),
        })
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.src[self.pos..].chars().next(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .or_else(|_| self.err("expected an integer"))
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.src[self.pos..].chars().next(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn resolve(&self, name: &str) -> Result<Vec<usize>, ParseError> {
        let names = self.ring.names();
        if let Some(i) = names.iter().position(|n| n == name) {
            return Ok(vec![i]);
        }
        name.chars()
            .map(|c| names.iter().position(|n| n.len() == 1 && n.starts_with(c)).ok_or(()))
            .collect::<Result<Vec<_>, _>>()
            .or_else(|_| self.err(format!("unknown variable `{name}`")))
    }

    fn parse(mut self) -> Result<Poly, ParseError> {
        let f = self.ring.field().clone();
        let n = self.ring.num_vars();
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut negate = false;
            match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some('+') if !first => self.pos += 1,
                Some('-') => {
                    self.pos += 1;
                    negate = true;
                }
                Some(_) if first => {}
                Some(c) => return self.err(format!("unexpected `{c}`")),
            }
            first = false;
            let mut coeff = Elem::ONE;
            let mut mono = vec![0u32; n];
            let mut factors = 0;
            loop {
                match self.peek() {
                    Some(c) if c.is_ascii_digit() => {
                        let v = self.number()?;
                        if v >= f.size() as u64 {
                            return self.err(format!("coefficient {v} is not an element of the field"));
                        }
                        coeff = f.mul(coeff, Elem(v as u32));
                    }
                    Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                        let col = self.pos;
                        let name = self.ident();
                        let vars = self.resolve(name).map_err(|e| ParseError { column: col + 1, ..e })?;
                        let mut exp = 1u32;
                        if self.peek() == Some('^') {
                            self.pos += 1;
                            exp = u32::try_from(self.number()?).or_else(|_| self.err("exponent too large"))?;
                        }
                        let last = vars.len() - 1;
                        for (j, v) in vars.into_iter().enumerate() {
                            mono[v] += if j == last { exp } else { 1 };
                        }
                    }
                    _ => {
                        if factors == 0 {
                            return self.err("expected a coefficient or variable");
                        }
                        break;
                    }
                }
                factors += 1;
                if self.peek() == Some('*') {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                        return self.err("expected a factor after `*`");
                    }
                }
            }
            if negate {
                coeff = f.neg(coeff);
            }
            terms.push((Monomial::new(mono), coeff));
        }
        Ok(self.ring.from_terms(terms))
    }
}
