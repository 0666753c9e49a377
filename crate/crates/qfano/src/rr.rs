//! Orbifold Riemann-Roch for torsion-free Q-Fano threefold candidates.
//!
//! For a candidate `(q, B, A^3)` with `-K = qA` and `Cl = Z`, the Euler
//! characteristic of the Weil divisor `nA` is
//!
//! ```text
//! chi(nA) = 1 + n(n+q)(2n+q)/12 * A^3 + n(24 - sigma)/(12q) + sum_P c_P(nA)
//! ```
//!
//! where the sum runs over the basket and `c_P` is the periodic local term of
//! the point `P = 1/r(1,-1,b)`:
//!
//! ```text
//! c_P(nA) = -i (r^2 - 1)/(12r) + sum_{j=1}^{i-1} jw#(r - jw#)/(2r),   x# = x mod r,
//! ```
//!
//! with `i` in `[0, r)` the multiple of `nA` against the canonical class in
//! the local class group (`nA = -i.K` near `P`, so `i = -n q^{-1} mod r`) and
//! `w` the pairing weight of the presentation.  Two bookkeeping conventions
//! are involved and are fixed once, globally:
//!
//! - orientation (`C1`): the local class of `A` satisfies
//!   `q.w_A = w(-K) mod r` with `w(-K) = -b`, i.e. `w_A = -b q^{-1}`;
//! - pairing weight (`C2`): `w = b`, the stored weight itself.
//!
//! Both choices are forced by the weighted-projective-space calibration suite
//! (`tests/calibration.rs`), which also cross-checks the local term against an
//! independent root-of-unity character sum for every index up to 24.  With
//! these conventions `c_P` is manifestly invariant under the conjugate
//! presentation `b -> r-b` and satisfies the duality
//! `c_P(i) + c_P(1-i) = -(r - 1/r)/12`, which yields the exact Serre symmetry
//! `chi(nA) = -chi((-n-q)A)`.
//!
//! For `n >= 0` the divisor `nA - K` is ample, higher cohomology vanishes and
//! `h^0(nA) = chi(nA)`; a candidate with non-integral or negative `chi` on
//! the relevant range admits no Q-Fano threefold and is reported as invalid.

use crate::basket::{Basket, QuotientPoint};
use crate::rational::{is_integer, mod_inverse, q, q_to_string, qi, Q};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RrError {
    #[error("index {r} of a basket point is not coprime to the Fano index {q}")]
    IndexNotCoprime { q: u32, r: u32 },
    #[error("degree A^3 = {a3} must be positive")]
    NonPositiveDegree { a3: String },
    #[error("Fano index must be positive")]
    ZeroIndex,
    #[error("candidate is numerically obstructed: {reason}")]
    CandidateInvalid { reason: String },
    #[error("horizon {horizon} too small: df needs h^0 up to k = {needed}")]
    HorizonTooSmall { horizon: u32, needed: u32 },
}

/// A torsion-free numerical candidate `(q, B, A^3)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FanoCandidate {
    q: u32,
    basket: Basket,
    #[serde(with = "crate::rational::q_string")]
    a3: Q,
}

impl FanoCandidate {
    /// Validates coprimality of `q` with every basket index (so that `A`
    /// generates each local class group) and positivity of `A^3`.
    pub fn new(q_index: u32, basket: Basket, a3: Q) -> Result<Self, RrError> {
        if q_index == 0 {
            return Err(RrError::ZeroIndex);
        }
        if let Some(p) = basket.points().iter().find(|p| p.r().gcd(&q_index) != 1) {
            return Err(RrError::IndexNotCoprime {
                q: q_index,
                r: p.r(),
            });
        }
        if a3 <= Q::zero() {
            return Err(RrError::NonPositiveDegree {
                a3: q_to_string(&a3),
            });
        }
        Ok(FanoCandidate {
            q: q_index,
            basket,
            a3,
        })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn basket(&self) -> &Basket {
        &self.basket
    }

    pub fn a3(&self) -> Q {
        self.a3
    }

    /// The anticanonical degree `(-K)^3 = q^3 A^3`.
    pub fn anticanonical_degree(&self) -> Q {
        qi((self.q as i128).pow(3)) * self.a3
    }
}

impl fmt::Debug for FanoCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={} B{:?} A3={}",
            self.q,
            self.basket.points(),
            q_to_string(&self.a3)
        )
    }
}

impl fmt::Display for FanoCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={} B={} A3={}",
            self.q,
            self.basket.index_notation(),
            q_to_string(&self.a3)
        )
    }
}

/// Local class of `A` at a point: the residue `w` with `q.w = -b (mod r)`.
///
/// `-b` is the local weight of `-K` in the `1/r(1,-1,b)` presentation.
pub fn local_class_of_a(q_index: u32, point: &QuotientPoint) -> Result<u32, RrError> {
    let r = point.r() as i64;
    let inv = mod_inverse(q_index as i64, r).ok_or(RrError::IndexNotCoprime {
        q: q_index,
        r: point.r(),
    })?;
    Ok(((-(point.b() as i64) * inv).rem_euclid(r)) as u32)
}

/// The multiple `i` with `nA = -i.K` in the local class group at an index-`r`
/// point, reduced to `[0, r)`.  Independent of the weight `b`.
fn local_index(r: u32, q_index: u32, n: i64) -> u32 {
    let r = r as i64;
    let inv = mod_inverse(q_index as i64, r).expect("index coprime to q");
    (((-n).rem_euclid(r) * inv).rem_euclid(r)) as u32
}

/// The periodic local term for class multiple `i` at a point with pairing
/// weight `w`, both already reduced mod `r`:
/// `-i (r^2-1)/(12r) + sum_{j=1}^{i-1} jw#(r - jw#)/(2r)`.
pub(crate) fn contribution_for_class(r: u32, w: u32, i: u32) -> Q {
    if i == 0 {
        return Q::zero();
    }
    let (r_i, w_i, i_i) = (r as i128, w as i128, i as i128);
    let mut c = q(-i_i * (r_i * r_i - 1), 12 * r_i);
    for j in 1..i_i {
        let jw = (j * w_i).rem_euclid(r_i);
        c += q(jw * (r_i - jw), 2 * r_i);
    }
    c
}

/// Local term evaluated in an explicit (possibly non-canonical) presentation
/// `1/r(1,-1,b_raw)`.  Exposed for the conjugation-invariance checks.
pub fn point_contribution_presented(r: u32, b_raw: u32, q_index: u32, n: i64) -> Q {
    contribution_for_class(r, b_raw % r, local_index(r, q_index, n))
}

/// The local Riemann-Roch term `c_P(nA)`.  Periodic in `n` with period `r`,
/// zero when `nA` is Cartier at `P`.
pub fn point_contribution(point: &QuotientPoint, q_index: u32, n: i64) -> Q {
    point_contribution_presented(point.r(), point.b(), q_index, n)
}

/// Cached evaluator for `chi(nA)` over a fixed candidate.
///
/// Precomputes the per-point residue tables so that bulk evaluation (Hilbert
/// profiles, integrality scans, search filters) costs one table lookup per
/// point instead of a Dedekind-type sum.
pub struct ChiEvaluator {
    q: i128,
    a3: Q,
    linear_coeff: Q,
    tables: Vec<(u32, Vec<Q>)>,
}

impl ChiEvaluator {
    pub fn new(cand: &FanoCandidate) -> Self {
        let sigma = cand.basket.sigma();
        let linear_coeff = (qi(24) - sigma) / qi(12 * cand.q as i128);
        let tables = cand
            .basket
            .points()
            .iter()
            .map(|p| {
                let r = p.r();
                let table: Vec<Q> = (0..r as i64)
                    .map(|n| point_contribution(p, cand.q, n))
                    .collect();
                (r, table)
            })
            .collect();
        ChiEvaluator {
            q: cand.q as i128,
            a3: cand.a3,
            linear_coeff,
            tables,
        }
    }

    /// Sum of the periodic local terms at `n`.
    pub fn periodic(&self, n: i64) -> Q {
        self.tables
            .iter()
            .map(|(r, table)| table[n.rem_euclid(*r as i64) as usize])
            .sum()
    }

    /// `chi(nA)`, exact, for any integer `n`.
    pub fn chi(&self, n: i64) -> Q {
        let n_i = n as i128;
        let cubic = qi(n_i * (n_i + self.q) * (2 * n_i + self.q));
        qi(1) + self.a3 * cubic / qi(12) + self.linear_coeff * qi(n_i) + self.periodic(n)
    }
}

/// `chi(nA)` for a candidate, exact.
pub fn euler_char(cand: &FanoCandidate, n: i64) -> Q {
    ChiEvaluator::new(cand).chi(n)
}

/// `lambda(X, |kA|) = q/k`, the anticanonical proportionality of `kA`.
pub fn lambda_of(cand: &FanoCandidate, k: u32) -> Q {
    assert!(k >= 1, "lambda is defined for k >= 1");
    q(cand.q as i128, k as i128)
}

/// Why a candidate fails the numerical obstructions, if it does.
///
/// Integrality of `chi(nA)` for all `n` is equivalent to the finite check
/// used here: since `chi = cubic + linear + periodic` with the periodic part
/// of period `R = lcm(r_P)`, the third difference
/// `D3(n) = chi(n+3) - 3chi(n+2) + 3chi(n+1) - chi(n) = A^3 + D3(periodic)(n)`
/// is `R`-periodic, and integrality of `chi(0..2)` together with
/// `D3(n) in Z` for `n = 0..R-1` propagates to all `n` by two-sided
/// induction.  Positivity of `chi(n)` for `n >= 0` is checked up to the
/// dominance bound of `positivity_horizon`, past which the cubic term
/// exceeds the periodic terms for good.
pub fn integrality_failure(cand: &FanoCandidate) -> Option<String> {
    validity_failure_with(cand, true, 24)
}

/// Integrality plus positivity with configurable positivity depth: to the
/// cubic-dominance bound when `deep`, else only up to `horizon`.
pub(crate) fn validity_failure_with(
    cand: &FanoCandidate,
    deep: bool,
    horizon: u32,
) -> Option<String> {
    validity_failure_opts(cand, Some(deep), horizon)
}

/// As `validity_failure_with`; `positivity = None` skips the sign check.
pub(crate) fn validity_failure_opts(
    cand: &FanoCandidate,
    positivity: Option<bool>,
    horizon: u32,
) -> Option<String> {
    let ev = ChiEvaluator::new(cand);
    let period = cand.basket.index_lcm() as i64;
    for n in 0..period {
        let d3 = ev.chi(n + 3) - ev.chi(n + 2) * qi(3) + ev.chi(n + 1) * qi(3) - ev.chi(n);
        if !is_integer(&d3) {
            return Some(format!(
                "third difference of chi at n={n} is {} (not an integer)",
                q_to_string(&d3)
            ));
        }
    }
    for n in 0..3 {
        let c = ev.chi(n);
        if !is_integer(&c) {
            return Some(format!(
                "chi({n}A) = {} is not an integer",
                q_to_string(&c)
            ));
        }
    }
    if let Some(deep) = positivity {
        let depth = if deep {
            positivity_horizon(&ev).max(horizon as i64)
        } else {
            horizon as i64
        };
        for n in 0..=depth {
            let c = ev.chi(n);
            if c.is_negative() {
                return Some(format!("chi({n}A) = {} is negative", q_to_string(&c)));
            }
        }
    }
    None
}

/// Vanishing inside the Fano range: `chi(mA) = 0` for `-q < m < 0`, since
/// `mA - K = (m+q)A` is then ample and `h^0(mA) = 0` for `m < 0`.
pub fn fano_vanishing_failure(cand: &FanoCandidate) -> Option<String> {
    let ev = ChiEvaluator::new(cand);
    for m in -(cand.q as i64 - 1)..0 {
        let c = ev.chi(m);
        if !c.is_zero() {
            return Some(format!(
                "chi({m}A) = {} inside the vanishing range",
                q_to_string(&c)
            ));
        }
    }
    None
}

/// Smallest horizon past which `chi(n) > 0` is guaranteed: the first `n0`
/// where the monotone part `1 + A^3 n(n+q)(2n+q)/12 + n(24-sigma)/(12q)`
/// exceeds the total sup of the periodic terms.
fn positivity_horizon(ev: &ChiEvaluator) -> i64 {
    let bound: Q = ev
        .tables
        .iter()
        .map(|(_, table)| table.iter().map(|c| c.abs()).max().unwrap_or_else(Q::zero))
        .sum();
    let mut n: i64 = 1;
    loop {
        let n_i = n as i128;
        let monotone = qi(1)
            + ev.a3 * qi(n_i * (n_i + ev.q) * (2 * n_i + ev.q)) / qi(12)
            + ev.linear_coeff * qi(n_i);
        if monotone > bound {
            return n;
        }
        n += 1;
    }
}

/// True iff `chi(nA)` is an integer for every `n` and non-negative on the
/// effective range.
pub fn integrality_valid(cand: &FanoCandidate) -> bool {
    integrality_failure(cand).is_none()
}

/// `h^0(nA)`: zero for `n < 0`, otherwise `chi(nA)` by vanishing.
///
/// Reports `CandidateInvalid` (rather than silently dropping) when the
/// candidate fails the numerical obstructions.
pub fn h0(cand: &FanoCandidate, n: i64) -> Result<u64, RrError> {
    if let Some(reason) = integrality_failure(cand) {
        return Err(RrError::CandidateInvalid { reason });
    }
    if n < 0 {
        return Ok(0);
    }
    let c = euler_char(cand, n);
    debug_assert!(is_integer(&c) && !c.is_negative());
    Ok(*c.numer() as u64)
}

/// A candidate with its `h^0` table and the `df` invariant.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertProfile {
    pub candidate: FanoCandidate,
    /// `h0[n] = h^0(nA)` for `n = 0..=horizon`.
    pub h0: Vec<u64>,
    /// `df = max over 0 <= k <= q-1 of (h^0(kA) - 1)`: the largest dimension
    /// of a mobile system `|kA|` with `-(K + kA)` still ample.  Always >= 0
    /// because `h^0(0) = 1`.
    pub df: u32,
}

impl HilbertProfile {
    pub fn h0(&self, n: u32) -> u64 {
        self.h0[n as usize]
    }

    /// The values of `k` in `1..q` realizing `h^0(kA) = df + 1`.
    pub fn df_witnesses(&self) -> Vec<u32> {
        (1..self.candidate.q())
            .filter(|&k| self.h0[k as usize] == self.df as u64 + 1)
            .collect()
    }
}

impl fmt::Debug for HilbertProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} df={} h0={:?}", self.candidate, self.df, self.h0)
    }
}

/// Computes the `h^0` table up to `horizon` and the `df` invariant.
/// Requires `horizon >= q - 1` so that `df` is well defined.
pub fn hilbert_profile(cand: &FanoCandidate, horizon: u32) -> Result<HilbertProfile, RrError> {
    if horizon + 1 < cand.q {
        return Err(RrError::HorizonTooSmall {
            horizon,
            needed: cand.q - 1,
        });
    }
    if let Some(reason) = integrality_failure(cand) {
        return Err(RrError::CandidateInvalid { reason });
    }
    let ev = ChiEvaluator::new(cand);
    let h0: Vec<u64> = (0..=horizon as i64)
        .map(|n| {
            let c = ev.chi(n);
            debug_assert!(is_integer(&c) && !c.is_negative());
            *c.numer() as u64
        })
        .collect();
    let df = (0..cand.q)
        .map(|k| h0[k as usize].saturating_sub(1))
        .max()
        .unwrap_or(0) as u32;
    Ok(HilbertProfile {
        candidate: cand.clone(),
        h0,
        df,
    })
}

/// Exact fingerprint of the Hilbert series `sum h^0(nA) t^n`.
///
/// Two candidates have identical series iff they share `(A^3, q, sigma)` and
/// the periodic part of `chi` as a function, here stored over its minimal
/// period.  (Equality of the series forces equality of the cubic polynomial
/// coefficient by coefficient, hence of `A^3` and `q`, and then of the
/// remaining linear-plus-periodic part.)
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SeriesKey {
    q: u32,
    a3: Q,
    sigma: Q,
    periodic: Vec<Q>,
}

pub fn series_key(cand: &FanoCandidate) -> SeriesKey {
    let ev = ChiEvaluator::new(cand);
    let period = cand.basket().index_lcm() as i64;
    let full: Vec<Q> = (0..period).map(|n| ev.periodic(n)).collect();
    let mut minimal = full.clone();
    for d in 1..=period {
        if period % d != 0 {
            continue;
        }
        let du = d as usize;
        if (0..full.len()).all(|n| full[n] == full[n % du]) {
            minimal = full[..du].to_vec();
            break;
        }
    }
    SeriesKey {
        q: cand.q,
        a3: cand.a3,
        sigma: cand.basket.sigma(),
        periodic: minimal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basket::make_point;

    fn cand(q_index: u32, pairs: &[(u32, u32)], a3: Q) -> FanoCandidate {
        FanoCandidate::new(q_index, Basket::from_pairs(pairs).unwrap(), a3).unwrap()
    }

    #[test]
    fn local_class_examples() {
        // only nonzero residue mod 2
        assert_eq!(local_class_of_a(5, &make_point(2, 1).unwrap()).unwrap(), 1);
        // A = 2(-K) locally at the index-13 point: w_A = 2 * (-3) = 7 mod 13
        let p13 = make_point(13, 3).unwrap();
        let w = local_class_of_a(7, &p13).unwrap();
        assert_eq!(w, 7);
        // consistent with the P(1,2,3,5) oracle (see tests/calibration.rs)
        assert_eq!(local_class_of_a(11, &make_point(5, 2).unwrap()).unwrap(), 3);
        assert!(local_class_of_a(13, &make_point(13, 3).unwrap()).is_err());
    }

    #[test]
    fn point_contribution_examples() {
        let p2 = make_point(2, 1).unwrap();
        let p52 = make_point(5, 2).unwrap();
        for n in [-4i64, 0, 2, 8] {
            assert_eq!(point_contribution(&p2, 5, n * 2), qi(0));
        }
        for q_odd in [3u32, 5, 7, 11] {
            for n in [1i64, 3, 5, -1] {
                assert_eq!(point_contribution(&p2, q_odd, n), q(-1, 8));
            }
        }
        assert_eq!(point_contribution(&p52, 11, 1), q(-1, 5));
        assert_eq!(point_contribution(&p52, 11, 2), q(-1, 5));
    }

    #[test]
    fn contribution_is_periodic_and_conjugation_invariant() {
        for (r, q_index) in [(5u32, 7u32), (7, 5), (13, 7), (24, 7), (11, 4)] {
            for b in 1..r {
                if r.gcd(&b) != 1 {
                    continue;
                }
                for n in -30i64..30 {
                    let c = point_contribution_presented(r, b, q_index, n);
                    assert_eq!(c, point_contribution_presented(r, r - b, q_index, n));
                    assert_eq!(c, point_contribution_presented(r, b, q_index, n + r as i64));
                }
            }
        }
    }

    #[test]
    fn euler_char_examples() {
        let p3 = cand(4, &[], qi(1));
        assert_eq!(euler_char(&p3, 0), qi(1));
        assert_eq!(euler_char(&p3, 1), qi(4));
        // del Pezzo threefold of degree 2: dim |-K/2| = 3
        let dp2 = cand(2, &[], qi(2));
        assert_eq!(euler_char(&dp2, 1), qi(4));
        for c in [&p3, &dp2, &cand(7, &[(2, 1), (3, 1), (13, 4)], q(1, 78))] {
            assert_eq!(euler_char(c, 0), qi(1));
            assert_eq!(euler_char(c, -(c.q() as i64)), qi(-1));
        }
    }

    #[test]
    fn serre_symmetry_is_exact() {
        let samples = [
            cand(7, &[(2, 1), (3, 1), (13, 4)], q(1, 78)),
            cand(2, &[(3, 1), (5, 2)], q(7, 15)),
            cand(11, &[(2, 1), (3, 1), (5, 2)], q(1, 30)),
        ];
        for c in &samples {
            let ev = ChiEvaluator::new(c);
            let qd = c.q() as i64;
            for n in -qd - 12..=12 {
                assert_eq!(ev.chi(n), -ev.chi(-n - qd), "candidate {c}, n = {n}");
            }
        }
    }

    #[test]
    fn h0_and_profile_examples() {
        // monomial counts on the weighted projective space with weights (1,1,1,2)
        let w1112 = cand(5, &[(2, 1)], q(1, 2));
        assert_eq!(h0(&w1112, 1).unwrap(), 3);
        assert_eq!(h0(&w1112, 2).unwrap(), 7);
        assert_eq!(h0(&w1112, -1).unwrap(), 0);

        let qds = hilbert_profile(&cand(2, &[], qi(2)), 12).unwrap();
        assert_eq!(qds.h0(1), 4);
        assert_eq!(qds.df, 3);
        let veronese = hilbert_profile(&cand(2, &[], qi(1)), 12).unwrap();
        assert_eq!(veronese.h0(1), 3);
        assert_eq!(veronese.df, 2);
    }

    #[test]
    fn degenerate_degree_is_rejected() {
        let bad = cand(7, &[(2, 1), (3, 1), (13, 4)], q(1, 77));
        assert!(!integrality_valid(&bad));
        assert!(matches!(h0(&bad, 1), Err(RrError::CandidateInvalid { .. })));
        assert!(integrality_valid(&cand(4, &[], qi(1))));
    }

    #[test]
    fn lambda_examples() {
        let c7 = cand(7, &[(2, 1), (3, 1), (13, 4)], q(1, 78));
        assert_eq!(lambda_of(&c7, 6), q(7, 6));
        assert_eq!(lambda_of(&cand(4, &[], qi(1)), 3), q(4, 3));
        assert_eq!(lambda_of(&cand(2, &[], qi(2)), 2), qi(1));
    }

    #[test]
    fn series_key_distinguishes_and_merges() {
        let a = cand(2, &[], qi(2));
        let b = cand(2, &[], qi(2));
        assert_eq!(series_key(&a), series_key(&b));
        assert_ne!(series_key(&a), series_key(&cand(2, &[], qi(1))));
        // same indices, different weights: different periodic tables
        let w1 = cand(2, &[(7, 1)], q(23, 14));
        let w2 = cand(2, &[(7, 2)], q(23, 14));
        assert_ne!(series_key(&w1), series_key(&w2));
    }
}
