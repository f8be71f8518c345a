//! Finite fields GF(p^k) in a polynomial basis over the prime field.
//!
//! An element is identified by its canonical encoding: the polynomial-basis
//! coordinates `(c_0, ..., c_{k-1})` read as base-`p` digits, little-endian.
//! The same integer is what every file format in this crate writes out.
//! Multiplication goes through log/exp tables built from a primitive element
//! found at construction time; addition is digit-wise (XOR when `p = 2`).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on the field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field size {p}^{k} exceeds the cap of {max}")]
    TooLarge { p: u32, k: u32, max: u64 },
    #[error("modulus must be monic of degree {k} with coefficients below {p}")]
    MalformedModulus { p: u32, k: u32 },
    #[error("modulus {0} is reducible")]
    Reducible(String),
    #[error("{base_q} is not a power of the characteristic {p}")]
    NotAPowerOfCharacteristic { base_q: u64, p: u32 },
    #[error("cannot embed GF({p}^{src_k}) into GF({dst_p}^{dst_k})")]
    DegreeMismatch { p: u32, src_k: u32, dst_p: u32, dst_k: u32 },
    #[error("no root of the source modulus found in the target field")]
    NoRoot,
    #[error("no default modulus for p={p}, k={k}")]
    NoDefaultModulus { p: u32, k: u32 },
}

/// Defining data of GF(p^k): the prime, the degree and a monic irreducible
/// modulus given as little-endian coefficients (length `k + 1`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
}

/// Built-in moduli, all primitive, indexed by (p, k).
const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (5, 5, &[3, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 0, 1, 4, 1, 0, 1]),
];

impl FieldSpec {
    pub fn new(p: u32, k: u32, modulus: Vec<u32>) -> Self {
        Self { p, k, modulus }
    }

    /// The built-in modulus for `p ∈ {2,3,5}` and `k ≤ 6`; otherwise the
    /// irreducible polynomial with the smallest encoding.
    pub fn with_default_modulus(p: u32, k: u32) -> Result<Self, FieldError> {
        if let Some((_, _, m)) = DEFAULT_MODULI.iter().find(|(pp, kk, _)| *pp == p && *kk == k) {
            return Ok(Self::new(p, k, m.to_vec()));
        }
        check_size(p, k)?;
        smallest_irreducible(p, k)
            .map(|m| Self::new(p, k, m))
            .ok_or(FieldError::NoDefaultModulus { p, k })
    }

    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.k)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {}", self.p, self.k, poly_to_string(&self.modulus))
    }
}

/// A field element, stored as its canonical encoding. Only meaningful
/// together with the [`Field`] it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn encoding(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
pub struct Field {
    spec: FieldSpec,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    primitive: Elem,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    /// Validates the spec and builds the arithmetic tables.
    pub fn new(spec: FieldSpec) -> Result<Self, FieldError> {
        let FieldSpec { p, k, ref modulus } = spec;
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        check_size(p, k)?;
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(FieldError::MalformedModulus { p, k });
        }
        if !is_irreducible(modulus, p) {
            return Err(FieldError::Reducible(poly_to_string(modulus)));
        }
        let q = p.pow(k);
        let (primitive, exp) = find_primitive(&spec, q);
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        Ok(Self {
            spec,
            q,
            exp,
            log,
            primitive,
        })
    }

    /// GF(p^k) with the default modulus.
    pub fn with_default(p: u32, k: u32) -> Result<Self, FieldError> {
        Self::new(FieldSpec::with_default_modulus(p, k)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.spec.k
    }

    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    /// The class of the polynomial variable, i.e. the generator of the
    /// polynomial basis. For prime fields this is the root of the linear
    /// modulus.
    pub fn generator(&self) -> Elem {
        if self.spec.k == 1 {
            Elem((self.spec.p - self.spec.modulus[0]) % self.spec.p)
        } else {
            Elem(self.spec.p)
        }
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.q).map(Elem)
    }

    pub fn elem(&self, encoding: u32) -> Option<Elem> {
        (encoding < self.q).then_some(Elem(encoding))
    }

    pub fn coords(&self, a: Elem) -> Vec<u32> {
        let p = self.spec.p;
        let mut x = a.0;
        (0..self.spec.k)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> Elem {
        let p = self.spec.p;
        Elem(coords.iter().rev().fold(0, |acc, &c| acc * p + c % p))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.spec.p;
        if p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        Elem(out)
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.spec.p;
        if p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        let n = self.q - 1;
        let s = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % n as u64;
        Elem(self.exp[s as usize])
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Some(Elem(self.exp[((n - l) % n) as usize]))
    }

    /// Panics when `b` is zero.
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b).expect("division by zero in finite field"))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let n = (self.q - 1) as u64;
        let s = (self.log[a.0 as usize] as u64 * (e % n)) % n;
        Elem(self.exp[s as usize])
    }

    /// `a^base_q`, where `base_q` must be a positive power of the characteristic.
    pub fn frobenius(&self, a: Elem, base_q: u64) -> Result<Elem, FieldError> {
        if !is_power_of(base_q, self.spec.p as u64) {
            return Err(FieldError::NotAPowerOfCharacteristic { base_q, p: self.spec.p });
        }
        Ok(self.pow(a, base_q))
    }

    /// Lifts a prime-field integer into this field.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.spec.p as i64) as u32)
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }
}

/// Ring homomorphism GF(p^a) → GF(p^b), `a | b`, fixed by the image of the
/// source generator. The image is the root of the source modulus with the
/// smallest encoding.
#[derive(Debug, Clone)]
pub struct Embedding {
    src: Arc<Field>,
    dst: Arc<Field>,
    generator_image: Elem,
    forward: Vec<Elem>,
    backward: HashMap<Elem, Elem>,
}

impl Embedding {
    pub fn new(src: Arc<Field>, dst: Arc<Field>) -> Result<Self, FieldError> {
        let (sp, sk) = (src.characteristic(), src.degree());
        let (dp, dk) = (dst.characteristic(), dst.degree());
        if sp != dp || dk % sk != 0 {
            return Err(FieldError::DegreeMismatch {
                p: sp,
                src_k: sk,
                dst_p: dp,
                dst_k: dk,
            });
        }
        let modulus: Vec<Elem> = src.spec().modulus.iter().map(|&c| Elem(c)).collect();
        let generator_image = if *src == *dst {
            src.generator()
        } else {
            dst.elements()
                .find(|&x| horner(&dst, &modulus, x).is_zero())
                .ok_or(FieldError::NoRoot)?
        };
        let forward: Vec<Elem> = src
            .elements()
            .map(|a| {
                let c: Vec<Elem> = src.coords(a).into_iter().map(Elem).collect();
                horner(&dst, &c, generator_image)
            })
            .collect();
        let backward = forward.iter().enumerate().map(|(i, &b)| (b, Elem(i as u32))).collect();
        Ok(Self {
            src,
            dst,
            generator_image,
            forward,
            backward,
        })
    }

    pub fn identity(field: Arc<Field>) -> Self {
        Self::new(field.clone(), field).expect("identity embedding always exists")
    }

    pub fn src(&self) -> &Arc<Field> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<Field> {
        &self.dst
    }

    pub fn generator_image(&self) -> Elem {
        self.generator_image
    }

    pub fn embed(&self, a: Elem) -> Elem {
        self.forward[a.0 as usize]
    }

    /// Inverse image of `b`, if `b` lies in the embedded subfield.
    pub fn preimage(&self, b: Elem) -> Option<Elem> {
        self.backward.get(&b).copied()
    }
}

/// GF(q^r) as an extension of a base field GF(q), realised over the prime
/// field with the base embedded.
#[derive(Debug, Clone)]
pub struct Extension {
    embedding: Embedding,
    degree: u32,
}

impl Extension {
    /// Builds GF(q^r) with the default modulus for degree `k·r`.
    pub fn new(base: Arc<Field>, degree: u32) -> Result<Self, FieldError> {
        if degree == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let big = if degree == 1 {
            base.clone()
        } else {
            Arc::new(Field::with_default(base.characteristic(), base.degree() * degree)?)
        };
        Ok(Self {
            embedding: Embedding::new(base, big)?,
            degree,
        })
    }

    pub fn base(&self) -> &Arc<Field> {
        self.embedding.src()
    }

    pub fn field(&self) -> &Arc<Field> {
        self.embedding.dst()
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// Degree over the base field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn base_size(&self) -> u64 {
        self.base().size() as u64
    }

    /// `x ↦ x^q` with `q` the base field size.
    pub fn frobenius(&self, x: Elem) -> Elem {
        self.field().pow(x, self.base_size())
    }

    /// Whether `x` lies in the subfield GF(q^d).
    pub fn in_subfield(&self, x: Elem, d: u32) -> bool {
        let mut y = x;
        for _ in 0..d {
            y = self.frobenius(y);
        }
        y == x
    }

    /// Smallest `d` with `x ∈ GF(q^d)`.
    pub fn element_degree(&self, x: Elem) -> u32 {
        (1..=self.degree)
            .filter(|d| self.degree.is_multiple_of(*d))
            .find(|&d| self.in_subfield(x, d))
            .unwrap_or(self.degree)
    }

    /// Elements of GF(q^d) inside this extension, in encoding order.
    pub fn subfield_elements(&self, d: u32) -> Vec<Elem> {
        self.field().elements().filter(|&x| self.in_subfield(x, d)).collect()
    }
}

fn horner(f: &Field, coeffs: &[Elem], x: Elem) -> Elem {
    coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

fn check_size(p: u32, k: u32) -> Result<(), FieldError> {
    if k == 0 {
        return Err(FieldError::ZeroDegree);
    }
    match (p as u64).checked_pow(k) {
        Some(q) if q <= MAX_FIELD_SIZE => Ok(()),
        _ => Err(FieldError::TooLarge {
            p,
            k,
            max: MAX_FIELD_SIZE,
        }),
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    if n < p {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn poly_to_string(c: &[u32]) -> String {
    let terms: Vec<String> = c
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &a)| a != 0)
        .map(|(i, &a)| match (i, a) {
            (0, a) => a.to_string(),
            (1, 1) => "Z".to_string(),
            (1, a) => format!("{a}Z"),
            (i, 1) => format!("Z^{i}"),
            (i, a) => format!("{a}Z^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(p).
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bc) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * bc) % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=k/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut div: Vec<u32> = Vec::with_capacity(d + 1);
            let mut x = low;
            for _ in 0..d {
                div.push((x % p as u64) as u32);
                x /= p as u64;
            }
            div.push(1);
            if poly_rem(m, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, k: u32) -> Option<Vec<u32>> {
    let count = (p as u64).pow(k);
    (0..count).find_map(|low| {
        let mut m = Vec::with_capacity(k as usize + 1);
        let mut x = low;
        for _ in 0..k {
            m.push((x % p as u64) as u32);
            x /= p as u64;
        }
        m.push(1);
        is_irreducible(&m, p).then_some(m)
    })
}

/// Product of two coordinate vectors modulo the field polynomial.
fn mul_slow(spec: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    let p = spec.p;
    let k = spec.k as usize;
    let mut prod = vec![0u32; 2 * k - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, &spec.modulus, p);
    r.resize(k, 0);
    r
}

/// Searches encodings `1, 2, ...` for a generator of the multiplicative
/// group; returns it with its power table.
fn find_primitive(spec: &FieldSpec, q: u32) -> (Elem, Vec<u32>) {
    let p = spec.p;
    let k = spec.k as usize;
    let decode = |mut x: u32| -> Vec<u32> {
        (0..k)
            .map(|_| {
                let d = x % p;
                x /= p;
                d
            })
            .collect()
    };
    let encode = |c: &[u32]| -> u32 { c.iter().rev().fold(0, |acc, &d| acc * p + d) };
    let order = q - 1;
    for cand in 1..q {
        let g = decode(cand);
        let mut table = Vec::with_capacity(order as usize);
        let mut cur = decode(1);
        let mut ok = true;
        for i in 0..order {
            let e = encode(&cur);
            if i > 0 && e == 1 {
                ok = false;
                break;
            }
            table.push(e);
            cur = mul_slow(spec, &cur, &g);
        }
        if ok && encode(&cur) == 1 {
            return (Elem(cand), table);
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32, k: u32) -> Arc<Field> {
        Arc::new(Field::with_default(p, k).unwrap())
    }

    #[test]
    fn gf4_matches_named_elements() {
        let f = Field::new(FieldSpec::new(2, 2, vec![1, 1, 1])).unwrap();
        let alpha = Elem(2);
        let alpha2 = f.mul(alpha, alpha);
        assert_eq!(alpha2, f.add(alpha, Elem::ONE));
        assert_eq!(alpha2, Elem(3));
        assert_eq!(f.mul(alpha2, alpha), Elem::ONE);
        let all: Vec<_> = f.elements().collect();
        assert_eq!(all, vec![Elem(0), Elem(1), alpha, alpha2]);
    }

    #[test]
    fn gf2_one_plus_one() {
        let f = Field::new(FieldSpec::new(2, 1, vec![0, 1])).unwrap();
        assert_eq!(f.add(Elem::ONE, Elem::ONE), Elem::ZERO);
        assert_eq!(f.size(), 2);
    }

    #[test]
    fn gf64_orders_divide_63() {
        let f = gf(2, 6);
        for a in f.elements().skip(1) {
            assert_eq!(f.pow(a, 63), Elem::ONE);
        }
    }

    #[test]
    fn default_moduli_are_irreducible_and_primitive() {
        for &(p, k, m) in DEFAULT_MODULI {
            let f = Field::new(FieldSpec::new(p, k, m.to_vec())).unwrap();
            let z = f.generator();
            let n = f.size() as u64 - 1;
            let order = (1..=n).find(|&e| f.pow(z, e) == Elem::ONE).unwrap();
            if k > 1 {
                assert_eq!(order, n, "modulus for GF({p}^{k}) is not primitive");
            }
        }
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(
            Field::new(FieldSpec::new(2, 2, vec![1, 0, 1])).unwrap_err(),
            FieldError::Reducible("Z^2+1".into())
        );
        assert!(matches!(
            Field::new(FieldSpec::new(2, 17, vec![0; 18])),
            Err(FieldError::TooLarge { .. })
        ));
        assert!(matches!(
            Field::new(FieldSpec::new(4, 1, vec![0, 1])),
            Err(FieldError::NotPrime(4))
        ));
        assert!(matches!(
            Field::new(FieldSpec::new(3, 2, vec![1, 0, 2])),
            Err(FieldError::MalformedModulus { .. })
        ));
    }

    #[test]
    fn exhaustive_axioms_small_fields() {
        for (p, k) in [(2, 1), (2, 3), (3, 2), (5, 1), (2, 4), (5, 2)] {
            let f = gf(p, k);
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for &c in &els {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn table_multiplication_agrees_with_polynomial_product() {
        for (p, k) in [(2, 6), (3, 3), (5, 2)] {
            let f = gf(p, k);
            for a in f.elements().step_by(3) {
                for b in f.elements().step_by(5) {
                    let slow = mul_slow(f.spec(), &f.coords(a), &f.coords(b));
                    assert_eq!(f.mul(a, b), f.from_coords(&slow));
                }
            }
        }
    }

    #[test]
    fn encoding_round_trip() {
        let f = gf(3, 4);
        for a in f.elements() {
            assert_eq!(f.from_coords(&f.coords(a)), a);
        }
    }

    #[test]
    fn frobenius_examples() {
        let gf4 = gf(2, 2);
        let gf64 = gf(2, 6);
        let gf8 = Arc::new(Field::new(FieldSpec::new(2, 3, vec![1, 1, 0, 1])).unwrap());
        assert_eq!(gf64.frobenius(Elem::ZERO, 4).unwrap(), Elem::ZERO);
        let e4 = Embedding::new(gf4.clone(), gf64.clone()).unwrap();
        for a in gf4.elements() {
            let x = e4.embed(a);
            assert_eq!(gf64.frobenius(x, 4).unwrap(), x);
        }
        let e8 = Embedding::new(gf8.clone(), gf64.clone()).unwrap();
        let beta = e8.embed(Elem(2));
        let beta3 = gf64.pow(beta, 3);
        assert_eq!(beta3, gf64.add(beta, Elem::ONE));
        let b4 = gf64.frobenius(beta, 4).unwrap();
        assert_eq!(b4, gf64.add(gf64.mul(beta, beta), beta));
        let b16 = gf64.frobenius(b4, 4).unwrap();
        let b64 = gf64.frobenius(b16, 4).unwrap();
        assert_eq!(b64, beta);
        assert!(beta != b4 && b4 != b16 && beta != b16);
        assert!(matches!(
            gf64.frobenius(beta, 6),
            Err(FieldError::NotAPowerOfCharacteristic { .. })
        ));
    }

    #[test]
    fn embeddings() {
        let gf2 = gf(2, 1);
        let gf4 = gf(2, 2);
        let gf64 = gf(2, 6);
        let id = Embedding::identity(gf4.clone());
        for a in gf4.elements() {
            assert_eq!(id.embed(a), a);
        }
        let e = Embedding::new(gf2, gf4.clone()).unwrap();
        assert_eq!(e.embed(Elem(0)), Elem(0));
        assert_eq!(e.embed(Elem(1)), Elem(1));
        let e = Embedding::new(gf4.clone(), gf64.clone()).unwrap();
        let a = e.embed(Elem(2));
        assert_eq!(gf64.add(gf64.add(gf64.mul(a, a), a), Elem::ONE), Elem::ZERO);
        for x in gf4.elements() {
            for y in gf4.elements() {
                assert_eq!(e.embed(gf4.mul(x, y)), gf64.mul(e.embed(x), e.embed(y)));
                assert_eq!(e.embed(gf4.add(x, y)), gf64.add(e.embed(x), e.embed(y)));
            }
            assert_eq!(e.preimage(e.embed(x)), Some(x));
        }
        let gf8 = gf(2, 3);
        assert!(matches!(
            Embedding::new(gf4, gf8),
            Err(FieldError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn tower_composition_hits_same_modulus_roots() {
        let gf4 = gf(2, 2);
        let gf16 = gf(2, 4);
        let gf256 = Arc::new(Field::with_default(2, 8).unwrap());
        let a = Embedding::new(gf4.clone(), gf16.clone()).unwrap();
        let b = Embedding::new(gf16, gf256.clone()).unwrap();
        let direct = Embedding::new(gf4.clone(), gf256.clone()).unwrap();
        let via = b.embed(a.embed(gf4.generator()));
        let straight = direct.embed(gf4.generator());
        for root in [via, straight] {
            let f = &gf256;
            assert_eq!(f.add(f.add(f.mul(root, root), root), Elem::ONE), Elem::ZERO);
        }
    }

    #[test]
    fn extension_subfields() {
        let gf4 = gf(2, 2);
        let ext = Extension::new(gf4, 3).unwrap();
        assert_eq!(ext.field().size(), 64);
        assert_eq!(ext.subfield_elements(1).len(), 4);
        assert_eq!(ext.subfield_elements(3).len(), 64);
        let degs: Vec<u32> = ext.field().elements().map(|x| ext.element_degree(x)).collect();
        assert_eq!(degs.iter().filter(|&&d| d == 1).count(), 4);
        assert_eq!(degs.iter().filter(|&&d| d == 3).count(), 60);
    }
}
