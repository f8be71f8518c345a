//! Weight semigroups, the σ count and the order-domain conditions.

use thiserror::Error;

use crate::groebner::{Footprint, GroebnerBasis, GroebnerError};
use crate::poly::{Monomial, Weight, WeightedOrder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("a semigroup needs at least one nonzero generator")]
    NoGenerators,
    #[error("generators must all have the same dimension")]
    MixedDimensions,
    #[error("operation needs scalar weights")]
    NotNumerical,
    #[error("generators have gcd {0}; the semigroup has infinitely many gaps")]
    InfiniteGaps(u64),
    #[error("{0} is not an element of the semigroup")]
    NotAnElement(Weight),
    #[error("{0} is not one of the footprint weights")]
    NotInDelta(Weight),
    #[error("footprint weights up to {bound} differ from the semigroup generated by the variable weights")]
    WeightSetMismatch { bound: u64 },
    #[error(transparent)]
    Footprint(#[from] GroebnerError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Numeric {
    gcd: u64,
    /// Membership of `0..conductor` in the semigroup divided by `gcd`.
    table: Vec<bool>,
}

/// A finitely generated submonoid of N₀^r. For r = 1 a membership table up
/// to the conductor is kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semigroup {
    generators: Vec<Weight>,
    numeric: Option<Numeric>,
}

impl Semigroup {
    /// Numerical semigroup generated by `gens` (zeros ignored). The stored
    /// generator set is minimal.
    pub fn numerical(gens: &[u64]) -> Result<Self, SemigroupError> {
        let mut g: Vec<u64> = gens.iter().copied().filter(|&x| x > 0).collect();
        if g.is_empty() {
            return Err(SemigroupError::NoGenerators);
        }
        g.sort_unstable();
        g.dedup();
        let d = g.iter().fold(0, |a, &b| gcd(a, b));
        let norm: Vec<u64> = g.iter().map(|x| x / d).collect();
        // Past (min-1)(max-1) every integer is representable once gcd = 1.
        let limit = ((norm[0] - 1) * (norm[norm.len() - 1] - 1) + norm[0] + 1) as usize;
        let mut reach = vec![false; limit];
        reach[0] = true;
        let mut minimal = Vec::new();
        for &x in &norm {
            if (x as usize) < limit && reach[x as usize] {
                continue;
            }
            minimal.push(x);
            for v in x as usize..limit {
                if reach[v - x as usize] {
                    reach[v] = true;
                }
            }
        }
        let conductor = reach.iter().rposition(|&b| !b).map_or(0, |i| i + 1);
        reach.truncate(conductor);
        Ok(Self {
            generators: minimal.iter().map(|&x| Weight::scalar(x * d)).collect(),
            numeric: Some(Numeric { gcd: d, table: reach }),
        })
    }

    /// Semigroup in N₀^r generated by `gens`; redundant generators dropped.
    pub fn vector(gens: Vec<Weight>) -> Result<Self, SemigroupError> {
        let r = gens.first().ok_or(SemigroupError::NoGenerators)?.dim();
        if gens.iter().any(|g| g.dim() != r) {
            return Err(SemigroupError::MixedDimensions);
        }
        if r == 1 {
            return Self::numerical(&gens.iter().map(|g| g.0[0]).collect::<Vec<_>>());
        }
        let mut g: Vec<Weight> = gens.into_iter().filter(|w| !w.is_zero()).collect();
        if g.is_empty() {
            return Err(SemigroupError::NoGenerators);
        }
        g.sort();
        g.dedup();
        let mut minimal: Vec<Weight> = Vec::new();
        for w in g {
            if !vector_member(&w, &minimal) {
                minimal.push(w);
            }
        }
        let minimal = minimal
            .iter()
            .filter(|w| {
                let rest: Vec<Weight> = minimal.iter().filter(|o| o != w).cloned().collect();
                !vector_member(w, &rest)
            })
            .cloned()
            .collect();
        Ok(Self {
            generators: minimal,
            numeric: None,
        })
    }

    pub fn generators(&self) -> &[Weight] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }

    pub fn is_numerical(&self) -> bool {
        self.numeric.is_some()
    }

    pub fn gcd(&self) -> Option<u64> {
        self.numeric.as_ref().map(|n| n.gcd)
    }

    pub fn contains(&self, w: &Weight) -> bool {
        match (&self.numeric, w.as_scalar()) {
            (Some(_), Some(x)) => self.contains_scalar(x),
            (Some(_), None) => false,
            (None, _) => w.dim() == self.dim() && vector_member(w, &self.generators),
        }
    }

    pub fn contains_scalar(&self, x: u64) -> bool {
        let Some(n) = &self.numeric else {
            return false;
        };
        x.is_multiple_of(n.gcd) && n.table.get((x / n.gcd) as usize).copied().unwrap_or(true)
    }

    fn finite_gaps(&self) -> Result<&Numeric, SemigroupError> {
        let n = self.numeric.as_ref().ok_or(SemigroupError::NotNumerical)?;
        if n.gcd != 1 {
            return Err(SemigroupError::InfiniteGaps(n.gcd));
        }
        Ok(n)
    }

    /// Smallest `c` with `c + N₀ ⊆ Γ`.
    pub fn conductor(&self) -> Result<u64, SemigroupError> {
        Ok(self.finite_gaps()?.table.len() as u64)
    }

    pub fn gaps(&self) -> Result<Vec<u64>, SemigroupError> {
        let n = self.finite_gaps()?;
        Ok((0..n.table.len() as u64).filter(|&x| !n.table[x as usize]).collect())
    }

    pub fn genus(&self) -> Result<u64, SemigroupError> {
        Ok(self.gaps()?.len() as u64)
    }

    /// Elements up to and including `bound`, increasing.
    pub fn elements_up_to(&self, bound: u64) -> Result<Vec<u64>, SemigroupError> {
        if !self.is_numerical() {
            return Err(SemigroupError::NotNumerical);
        }
        Ok((0..=bound).filter(|&x| self.contains_scalar(x)).collect())
    }

    /// #(Γ \ (λ + Γ)), by enumeration up to conductor + λ.
    pub fn gap_count_shift(&self, lambda: u64) -> Result<u64, SemigroupError> {
        let c = self.conductor()?;
        if !self.contains_scalar(lambda) {
            return Err(SemigroupError::NotAnElement(Weight::scalar(lambda)));
        }
        Ok((0..lambda + c)
            .filter(|&x| self.contains_scalar(x))
            .filter(|&x| x < lambda || !self.contains_scalar(x - lambda))
            .count() as u64)
    }
}

/// Bounded search for a nonnegative combination of `gens` equal to `w`.
fn vector_member(w: &Weight, gens: &[Weight]) -> bool {
    if w.is_zero() {
        return true;
    }
    gens.iter()
        .enumerate()
        .any(|(i, g)| !g.is_zero() && w.checked_sub(g).is_some_and(|rest| vector_member(&rest, &gens[i..])))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// σ(λ) = #{η ∈ w(Δ) : η − λ ∈ Γ}.
pub fn sigma(lambda: &Weight, delta_weights: &[Weight], gamma: &Semigroup) -> Result<usize, SemigroupError> {
    if !delta_weights.contains(lambda) {
        return Err(SemigroupError::NotInDelta(lambda.clone()));
    }
    Ok(delta_weights
        .iter()
        .filter(|eta| eta.checked_sub(lambda).is_some_and(|d| gamma.contains(&d)))
        .count())
}

/// Γ from the footprint of the (non-field-equation) ideal I.
///
/// For scalar weights the weight set is enumerated up to the conductor of
/// the semigroup spanned by the variable weights plus the largest variable
/// weight, minimal generators are extracted greedily, and the enumerated set
/// is checked against that semigroup. For vector weights only the generators
/// are kept.
pub fn gamma_from_footprint(fp: &Footprint) -> Result<Semigroup, SemigroupError> {
    let ord = fp.ring().order();
    if ord.weight_dim() > 1 {
        return Semigroup::vector(ord.var_weights().to_vec());
    }
    let var_w: Vec<u64> = ord.var_weights().iter().map(|w| w.0[0]).collect();
    let span = Semigroup::numerical(&var_w)?;
    let max_w = *var_w.iter().max().unwrap();
    let bound = match span.conductor() {
        Ok(c) => c + max_w,
        Err(_) => {
            let n = span.generators();
            n[0].0[0] * n[n.len() - 1].0[0] + max_w
        }
    };
    let mut weights: Vec<u64> = fp
        .up_to_weight(&Weight::scalar(bound))?
        .iter()
        .map(|m| ord.weight(m).0[0])
        .collect();
    weights.dedup();
    if weights != span.elements_up_to(bound)? {
        return Err(SemigroupError::WeightSetMismatch { bound });
    }
    let mut gens: Vec<u64> = Vec::new();
    for &w in weights.iter().filter(|&&w| w > 0) {
        let reachable = !gens.is_empty() && Semigroup::numerical(&gens)?.contains_scalar(w);
        if !reachable {
            gens.push(w);
        }
    }
    Semigroup::numerical(&gens)
}

/// Outcome of checking the order-domain conditions, with witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderDomainDiagnosis {
    pub satisfied: bool,
    /// Index into the basis of a generator without exactly two top-weight
    /// monomials.
    pub failing_generator: Option<usize>,
    /// Two standard monomials sharing a weight.
    pub colliding_pair: Option<(Monomial, Monomial)>,
    /// For vector weights: the weight box the injectivity check covered.
    pub verified_up_to: Option<Weight>,
}

/// Checks (i) every basis element has exactly two monomials of top weight
/// and (ii) standard monomials have pairwise distinct weights.
///
/// For scalar weights (ii) is decided exactly: a collision implies a
/// collision between coprime standard monomials, and with at most one
/// variable unbounded on the footprint those lie below the largest weight of
/// the bounded box. Two unbounded variables of positive weight always
/// collide on pure powers. For vector weights (ii) is checked inside
/// `vector_box` (default: four times the componentwise maximum variable
/// weight).
pub fn check_order_domain(gb: &GroebnerBasis, vector_box: Option<Weight>) -> OrderDomainDiagnosis {
    let ord = gb.ring().order();
    let failing_generator = gb.polys().iter().position(|g| {
        let ws: Vec<Weight> = g.support().map(|m| ord.weight(m)).collect();
        let top = ws.iter().max().unwrap();
        ws.iter().filter(|w| *w == top).count() != 2
    });
    let fp = gb.footprint();
    let (colliding_pair, verified_up_to) = if ord.weight_dim() == 1 {
        (scalar_collision(&fp, ord), None)
    } else {
        let bx = vector_box.unwrap_or_else(|| {
            let r = ord.weight_dim();
            Weight(
                (0..r)
                    .map(|c| 4 * ord.var_weights().iter().map(|w| w.0[c]).max().unwrap_or(0))
                    .collect(),
            )
        });
        let pair = fp.up_to_weight(&bx).ok().and_then(|ms| adjacent_collision(&ms, ord));
        (pair, Some(bx))
    };
    OrderDomainDiagnosis {
        satisfied: failing_generator.is_none() && colliding_pair.is_none(),
        failing_generator,
        colliding_pair,
        verified_up_to,
    }
}

fn adjacent_collision(ms: &[Monomial], ord: &WeightedOrder) -> Option<(Monomial, Monomial)> {
    ms.windows(2)
        .find(|w| ord.weight(&w[0]) == ord.weight(&w[1]))
        .map(|w| (w[1].clone(), w[0].clone()))
}

fn scalar_collision(fp: &Footprint, ord: &WeightedOrder) -> Option<(Monomial, Monomial)> {
    let n = ord.num_vars();
    let w: Vec<u64> = ord.var_weights().iter().map(|x| x.0[0]).collect();
    let bounds = fp.pure_power_bounds();
    if bounds.contains(&Some(0)) {
        return None;
    }
    let free: Vec<usize> = (0..n).filter(|&i| bounds[i].is_none()).collect();
    if let Some(&i) = free.iter().find(|&&i| w[i] == 0) {
        return Some((Monomial::var(n, i), Monomial::one(n)));
    }
    if let [i, j, ..] = free[..] {
        let g = gcd(w[i], w[j]);
        let mut a = vec![0; n];
        a[i] = (w[j] / g) as u32;
        let mut b = vec![0; n];
        b[j] = (w[i] / g) as u32;
        return Some((Monomial::new(a), Monomial::new(b)));
    }
    let window: u64 = (0..n).filter_map(|i| bounds[i].map(|b| (b as u64 - 1) * w[i])).sum();
    let ms = fp.up_to_weight(&Weight::scalar(window)).ok()?;
    adjacent_collision(&ms, ord)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Field, FieldSpec};
    use crate::groebner::buchberger;
    use crate::poly::PolyRing;
    use std::sync::Arc;

    fn ring(weights: &[u64]) -> Arc<PolyRing> {
        let f = Arc::new(Field::new(FieldSpec::new(2, 2, vec![1, 1, 1])).unwrap());
        PolyRing::new(f, vec!["X".into(), "Y".into()], WeightedOrder::scalar(weights)).unwrap()
    }

    /// Brute force membership by enumerating sums.
    fn oracle_member(gens: &[u64], x: u64) -> bool {
        let mut reach = vec![false; x as usize + 1];
        reach[0] = true;
        for v in 1..=x as usize {
            reach[v] = gens.iter().any(|&g| g as usize <= v && reach[v - g as usize]);
        }
        reach[x as usize]
    }

    #[test]
    fn five_six() {
        let s = Semigroup::numerical(&[5, 6]).unwrap();
        assert_eq!(s.gaps().unwrap(), vec![1, 2, 3, 4, 7, 8, 9, 13, 14, 19]);
        assert_eq!(s.genus().unwrap(), 10);
        assert_eq!(s.conductor().unwrap(), 20);
        assert_eq!(s.gap_count_shift(5).unwrap(), 5);
        assert_eq!(s.gap_count_shift(0).unwrap(), 0);
        assert!(s.gap_count_shift(7).is_err());
    }

    #[test]
    fn free_semigroup() {
        let s = Semigroup::numerical(&[1]).unwrap();
        assert!(s.gaps().unwrap().is_empty());
        assert_eq!(s.gap_count_shift(7).unwrap(), 7);
    }

    #[test]
    fn minimal_generators_and_gcd() {
        let s = Semigroup::numerical(&[6, 4, 10, 8]).unwrap();
        assert_eq!(s.generators(), &[Weight::scalar(4), Weight::scalar(6)]);
        assert_eq!(s.gcd(), Some(2));
        assert!(s.contains_scalar(10) && !s.contains_scalar(2) && !s.contains_scalar(11));
        assert_eq!(s.genus(), Err(SemigroupError::InfiniteGaps(2)));
        assert!(Semigroup::numerical(&[0]).is_err());
    }

    #[test]
    fn membership_matches_enumeration() {
        for gens in [[3u64, 5, 0], [4, 7, 9], [6, 10, 15]] {
            let s = Semigroup::numerical(&gens).unwrap();
            for x in 0..80 {
                assert_eq!(s.contains_scalar(x), oracle_member(&gens, x), "{gens:?} {x}");
            }
        }
    }

    #[test]
    fn two_generator_genus_formula() {
        for (a, b) in [(2u64, 3u64), (3, 5), (4, 7), (5, 6), (7, 11)] {
            let s = Semigroup::numerical(&[a, b]).unwrap();
            assert_eq!(s.genus().unwrap(), (a - 1) * (b - 1) / 2);
        }
    }

    #[test]
    fn sigma_examples() {
        let s = Semigroup::numerical(&[5, 6]).unwrap();
        let dw: Vec<Weight> = [0, 5, 6, 10, 11, 12, 15, 16, 18]
            .iter()
            .map(|&x| Weight::scalar(x))
            .collect();
        assert_eq!(sigma(&Weight::scalar(0), &dw, &s).unwrap(), 9);
        assert_eq!(sigma(&Weight::scalar(5), &dw, &s).unwrap(), 5);
        assert_eq!(sigma(&Weight::scalar(6), &dw, &s).unwrap(), 5);
        assert!(sigma(&Weight::scalar(7), &dw, &s).is_err());
    }

    #[test]
    fn vector_semigroup_membership() {
        let s = Semigroup::vector(vec![Weight(vec![1, 0]), Weight(vec![0, 2]), Weight(vec![1, 2])]).unwrap();
        assert_eq!(s.generators().len(), 2);
        assert!(s.contains(&Weight(vec![3, 4])));
        assert!(!s.contains(&Weight(vec![3, 3])));
    }

    #[test]
    fn x6_curve_order_domain_and_gamma() {
        let r = ring(&[5, 6]);
        let gb = buchberger(&[r.parse("X^6+Y^5+Y").unwrap()]).unwrap();
        let d = check_order_domain(&gb, None);
        assert!(d.satisfied, "{d:?}");
        let g = gamma_from_footprint(&gb.footprint()).unwrap();
        assert_eq!(g.generators(), &[Weight::scalar(5), Weight::scalar(6)]);
        assert_eq!(g.genus().unwrap(), 10);
    }

    #[test]
    fn affine_line_presentation() {
        let r = ring(&[1, 2]);
        let gb = buchberger(&[r.parse("Y+X^2").unwrap()]).unwrap();
        assert!(check_order_domain(&gb, None).satisfied);
        let g = gamma_from_footprint(&gb.footprint()).unwrap();
        assert_eq!(g.generators(), &[Weight::scalar(1)]);
    }

    #[test]
    fn dense_cubic_fails_condition_two() {
        let r = ring(&[1, 1]);
        let gb = buchberger(&[r.parse("X^3+Y^3+XY").unwrap()]).unwrap();
        let d = check_order_domain(&gb, None);
        assert!(!d.satisfied);
        assert_eq!(d.failing_generator, None);
        let (a, b) = d.colliding_pair.unwrap();
        let mut names = [r.format_monomial(&a), r.format_monomial(&b)];
        names.sort();
        assert_eq!(names, ["X", "Y"]);
    }

    #[test]
    fn condition_one_failure_has_witness() {
        let r = ring(&[2, 3]);
        let gb = buchberger(&[r.parse("X^3+Y").unwrap()]).unwrap();
        let d = check_order_domain(&gb, None);
        assert!(!d.satisfied);
        assert_eq!(d.failing_generator, Some(0));
    }

    #[test]
    fn two_free_variables_collide() {
        let r = ring(&[5, 6]);
        let gb = buchberger(&[r.parse("XY").unwrap()]).unwrap();
        let d = check_order_domain(&gb, None);
        let (a, b) = d.colliding_pair.unwrap();
        assert_eq!(r.order().weight(&a), r.order().weight(&b));
        assert_eq!(r.order().weight(&a), Weight::scalar(30));
    }
}
