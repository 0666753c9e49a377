//! Baskets of terminal cyclic quotient singularities.
//!
//! A three-dimensional terminal cyclic quotient singularity is of type
//! `1/r(1,-1,b)` with `r >= 2` and `gcd(r, b) = 1`.  The conjugate
//! presentation `1/r(1,-1,r-b)` describes the same germ, so points are
//! stored with the canonical weight `b <= r - b`.
//!
//! A basket is a finite multiset of such points.  Its global invariants are
//!
//! ```text
//! sigma(B) = sum_P (r_P - 1/r_P)        (each point contributes >= 3/2)
//! (-K).c2  = 24 - sigma(B)              (forced by chi(O_X) = 1)
//! ```
//!
//! and `sigma < 24` is required strictly so that `(-K).c2 > 0`; consequently
//! a basket has at most 15 points and every index satisfies `r <= 24`.

use crate::rational::{q, qi, Q};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Largest index a basket point can have under `sigma < 24`.
pub const MAX_INDEX: u32 = 24;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BasketError {
    #[error("quotient point 1/{r}(1,-1,{b}) needs r >= 2")]
    IndexTooSmall { r: u32, b: u32 },
    #[error("weight {b} out of range for index {r} (need 1 <= b <= r-1)")]
    WeightOutOfRange { r: u32, b: u32 },
    #[error("non-coprime quotient data (r, b) = ({r}, {b})")]
    NonCoprime { r: u32, b: u32 },
    #[error("basket has sigma = {sigma} >= 24, violating (-K).c2 > 0")]
    SigmaTooLarge { sigma: String },
}

/// One basket entry: the terminal cyclic quotient point `1/r(1,-1,b)`.
///
/// Always canonical: `b <= r - b` (ties are impossible since `gcd(r, b) = 1`
/// forces `b != r/2` for `r > 2`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QuotientPoint {
    r: u32,
    b: u32,
}

impl QuotientPoint {
    /// Validates and canonicalizes `(r, b)`, replacing `b` by `min(b, r-b)`.
    pub fn new(r: u32, b: u32) -> Result<Self, BasketError> {
        if r < 2 {
            return Err(BasketError::IndexTooSmall { r, b });
        }
        if b == 0 || b >= r {
            return Err(BasketError::WeightOutOfRange { r, b });
        }
        if r.gcd(&b) != 1 {
            return Err(BasketError::NonCoprime { r, b });
        }
        Ok(QuotientPoint { r, b: b.min(r - b) })
    }

    /// The index `r`.
    pub fn r(&self) -> u32 {
        self.r
    }

    /// The canonical weight `b`.
    pub fn b(&self) -> u32 {
        self.b
    }

    /// This point's contribution `r - 1/r` to `sigma`.
    pub fn sigma_term(&self) -> Q {
        qi(self.r as i128) - q(1, self.r as i128)
    }
}

impl fmt::Debug for QuotientPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.r, self.b)
    }
}

impl fmt::Display for QuotientPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(1,-1,{})", self.r, self.b)
    }
}

/// Canonical constructor shorthand used throughout the crate and tests.
pub fn make_point(r: u32, b: u32) -> Result<QuotientPoint, BasketError> {
    QuotientPoint::new(r, b)
}

/// A finite multiset of quotient points, stored sorted by `(r, b)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Basket {
    points: Vec<QuotientPoint>,
}

impl Basket {
    /// Empty basket (smooth case).
    pub fn empty() -> Self {
        Basket::default()
    }

    /// Builds a basket from points in any order; sorts into canonical order.
    pub fn new(mut points: Vec<QuotientPoint>) -> Self {
        points.sort();
        Basket { points }
    }

    /// Builds a basket from raw `(r, b)` pairs.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self, BasketError> {
        let points = pairs
            .iter()
            .map(|&(r, b)| QuotientPoint::new(r, b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Basket::new(points))
    }

    pub fn points(&self) -> &[QuotientPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `sigma = sum_P (r_P - 1/r_P)`, exact.
    pub fn sigma(&self) -> Q {
        self.points.iter().map(|p| p.sigma_term()).sum()
    }

    /// `(-K).c2 = 24 - sigma`, defined only while `sigma < 24`.
    pub fn anticanonical_c2(&self) -> Result<Q, BasketError> {
        let sigma = self.sigma();
        if sigma >= qi(24) {
            return Err(BasketError::SigmaTooLarge {
                sigma: crate::rational::q_to_string(&sigma),
            });
        }
        Ok(qi(24) - sigma)
    }

    /// As `anticanonical_c2` but with the bound relaxed to `sigma <= 24`,
    /// for diff experiments against catalogs built with the non-strict
    /// inequality.
    pub fn anticanonical_c2_relaxed(&self) -> Result<Q, BasketError> {
        let sigma = self.sigma();
        if sigma > qi(24) {
            return Err(BasketError::SigmaTooLarge {
                sigma: crate::rational::q_to_string(&sigma),
            });
        }
        Ok(qi(24) - sigma)
    }

    /// Least common multiple of the point indices (1 for the empty basket).
    /// This is the common period of all local Riemann-Roch contributions.
    pub fn index_lcm(&self) -> u32 {
        self.points.iter().fold(1u32, |acc, p| acc.lcm(&p.r))
    }

    /// Product of the point indices (1 for the empty basket).
    pub fn index_product(&self) -> u64 {
        self.points.iter().map(|p| p.r as u64).product()
    }

    /// Number of points with the given index.
    pub fn index_multiplicity(&self, r: u32) -> usize {
        self.points.iter().filter(|p| p.r == r).count()
    }

    /// Sorted deduplicated list of indices present in the basket.
    pub fn indices(&self) -> Vec<u32> {
        let mut rs: Vec<u32> = self.points.iter().map(|p| p.r).collect();
        rs.dedup();
        rs
    }

    /// True iff every index is coprime to `q`.
    pub fn coprime_to(&self, q: u32) -> bool {
        self.points.iter().all(|p| p.r.gcd(&q) == 1)
    }

    /// Renders as `(r1,r2,...)` with `^k` for repeats, weights suppressed,
    /// e.g. `(4^2,12)`.
    pub fn index_notation(&self) -> String {
        if self.points.is_empty() {
            return "()".into();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.points.len() {
            let r = self.points[i].r;
            let mut j = i;
            while j < self.points.len() && self.points[j].r == r {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("{r}"));
            } else {
                parts.push(format!("{}^{}", r, j - i));
            }
            i = j;
        }
        format!("({})", parts.join(","))
    }

    /// Full text form with weights, `1/r(1,-1,b);...`, parseable by the
    /// catalog layer.
    pub fn weighted_notation(&self) -> String {
        self.points
            .iter()
            .map(|p| format!("1/{}(1,-1,{})", p.r, p.b))
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Debug for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{:?}", self.points)
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index_notation())
    }
}

/// All canonical point types with `r <= MAX_INDEX`, optionally restricted to
/// indices coprime to `coprime_to`, sorted by `(r, b)`.
pub fn point_types(coprime_to: Option<u32>) -> Vec<QuotientPoint> {
    let mut out = Vec::new();
    for r in 2..=MAX_INDEX {
        if let Some(m) = coprime_to {
            if r.gcd(&m) != 1 {
                continue;
            }
        }
        for b in 1..=r / 2 {
            if r.gcd(&b) == 1 {
                out.push(QuotientPoint { r, b });
            }
        }
    }
    out
}

/// Enumerates every basket with `sigma < max_sigma` (or `<=` when
/// `include_boundary` is set), streaming each one to `visit` in canonical
/// lexicographic order.  Termination: each point contributes at least `3/2`.
pub(crate) fn for_each_basket<F: FnMut(&Basket)>(
    max_sigma: &Q,
    coprime_to: Option<u32>,
    include_boundary: bool,
    visit: &mut F,
) {
    let types = point_types(coprime_to);
    let within = |s: &Q| {
        if include_boundary {
            s <= max_sigma
        } else {
            s < max_sigma
        }
    };
    fn recurse<F: FnMut(&Basket)>(
        types: &[QuotientPoint],
        start: usize,
        stack: &mut Vec<QuotientPoint>,
        sigma: Q,
        within: &dyn Fn(&Q) -> bool,
        visit: &mut F,
    ) {
        visit(&Basket {
            points: stack.clone(),
        });
        for t in start..types.len() {
            let next = sigma + types[t].sigma_term();
            if !within(&next) {
                continue;
            }
            stack.push(types[t]);
            recurse(types, t, stack, next, within, visit);
            stack.pop();
        }
    }
    if within(&qi(0)) {
        recurse(&types, 0, &mut Vec::new(), qi(0), &within, visit);
    }
}

/// Complete, duplicate-free, canonically ordered list of all baskets with
/// `sigma < max_sigma`, optionally keeping only points coprime to
/// `coprime_to`.  Requires `max_sigma <= 24`.
pub fn enumerate_baskets(max_sigma: Q, coprime_to: Option<u32>) -> Vec<Basket> {
    assert!(
        max_sigma <= qi(24),
        "basket enumeration is only bounded for max_sigma <= 24"
    );
    let mut out = Vec::new();
    for_each_basket(&max_sigma, coprime_to, false, &mut |b| out.push(b.clone()));
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugate_weight_is_canonicalized() {
        assert_eq!(make_point(13, 10).unwrap(), make_point(13, 3).unwrap());
        assert_eq!(make_point(2, 1).unwrap().b(), 1);
        assert_eq!(
            make_point(4, 2),
            Err(BasketError::NonCoprime { r: 4, b: 2 })
        );
        assert_eq!(
            make_point(5, 0),
            Err(BasketError::WeightOutOfRange { r: 5, b: 0 })
        );
        assert_eq!(make_point(1, 1), Err(BasketError::IndexTooSmall { r: 1, b: 1 }));
    }

    #[test]
    fn sigma_values() {
        let b = Basket::from_pairs(&[(2, 1), (3, 1), (13, 3)]).unwrap();
        assert_eq!(b.sigma(), q(1333, 78));
        assert_eq!(Basket::empty().sigma(), qi(0));
        for w in [1u32, 2, 3, 4, 5] {
            let single = Basket::from_pairs(&[(11, w)]).unwrap();
            assert_eq!(single.sigma(), q(120, 11));
        }
    }

    #[test]
    fn anticanonical_c2_values() {
        assert_eq!(Basket::empty().anticanonical_c2().unwrap(), qi(24));
        let b = Basket::from_pairs(&[(2, 1), (3, 1), (13, 3)]).unwrap();
        assert_eq!(b.anticanonical_c2().unwrap(), q(539, 78));
        let sixteen = Basket::from_pairs(&vec![(2, 1); 16]).unwrap();
        assert_eq!(sixteen.sigma(), qi(24));
        assert!(sixteen.anticanonical_c2().is_err());
        assert_eq!(sixteen.anticanonical_c2_relaxed().unwrap(), qi(0));
    }

    #[test]
    fn sigma_is_additive_over_union() {
        let a = Basket::from_pairs(&[(2, 1), (5, 2)]).unwrap();
        let b = Basket::from_pairs(&[(3, 1), (5, 2), (7, 3)]).unwrap();
        let mut pts = a.points().to_vec();
        pts.extend_from_slice(b.points());
        let union = Basket::new(pts);
        assert_eq!(union.sigma(), a.sigma() + b.sigma());
    }

    #[test]
    fn single_point_baskets_count_is_90() {
        let all = enumerate_baskets(qi(24), None);
        let singles = all.iter().filter(|b| b.len() == 1).count();
        assert_eq!(singles, 90);
        assert_eq!(point_types(None).len(), 90);
    }

    #[test]
    fn tight_bound_leaves_only_the_empty_basket() {
        let baskets = enumerate_baskets(q(3, 2), None);
        assert_eq!(baskets, vec![Basket::empty()]);
    }

    #[test]
    fn coprime_filter_removes_even_indices() {
        let baskets = enumerate_baskets(qi(8), Some(2));
        assert!(!baskets.is_empty());
        for b in &baskets {
            assert!(b.points().iter().all(|p| p.r() % 2 == 1));
        }
    }

    #[test]
    fn enumeration_is_canonical_and_bounded() {
        let max = qi(6);
        let baskets = enumerate_baskets(max, None);
        for b in &baskets {
            assert!(b.sigma() < max);
            let mut sorted = b.points().to_vec();
            sorted.sort();
            assert_eq!(sorted, b.points());
        }
        let mut dedup = baskets.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), baskets.len());
        let mut resorted = baskets.clone();
        resorted.sort();
        assert_eq!(resorted, baskets);
    }

    /// Independent brute-force generator for small instances: count baskets
    /// by choosing a multiplicity for every point type via odometer carries,
    /// rather than by recursive extension.
    #[test]
    fn small_instance_oracle_equivalence() {
        let max = qi(6);
        let types = point_types(None);
        let mut expected: Vec<Vec<(u32, u32)>> = Vec::new();
        let mut counts = vec![0u32; types.len()];
        'outer: loop {
            let sigma: Q = types
                .iter()
                .zip(&counts)
                .map(|(t, &c)| t.sigma_term() * qi(c as i128))
                .sum();
            if sigma < max {
                let mut flat = Vec::new();
                for (t, &c) in types.iter().zip(&counts) {
                    for _ in 0..c {
                        flat.push((t.r(), t.b()));
                    }
                }
                expected.push(flat);
            }
            // odometer increment with pruning: a type of index r adds at
            // least 3/2, so multiplicities are bounded by 4 under sigma < 6
            for i in 0..counts.len() {
                counts[i] += 1;
                let term: Q = types[i].sigma_term() * qi(counts[i] as i128);
                if term < max {
                    continue 'outer;
                }
                counts[i] = 0;
            }
            break;
        }
        let mut expected: Vec<Basket> = expected
            .iter()
            .map(|pairs| Basket::from_pairs(pairs).unwrap())
            .collect();
        expected.sort();
        expected.dedup();
        assert_eq!(enumerate_baskets(max, None), expected);
    }

    #[test]
    fn notation_round_trips_shape() {
        let b = Basket::from_pairs(&[(4, 1), (4, 1), (12, 5)]).unwrap();
        assert_eq!(b.index_notation(), "(4^2,12)");
        assert_eq!(b.weighted_notation(), "1/4(1,-1,1);1/4(1,-1,1);1/12(1,-1,5)");
        assert_eq!(Basket::empty().index_notation(), "()");
    }
}
