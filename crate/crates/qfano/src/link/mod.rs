//! Numerical constraint analysis of Sarkisov links onto the smooth quartic
//! double solid.
//!
//! A link starts from a candidate `X` with index `q` and a mobile system
//! `M = |bA|` of dimension `df(X)`, blows up a center with discrepancy
//! `alpha`, and contracts onto a target Fano `X'` of index `q_hat` with
//! ample generator `T` (so divisor classes downstairs are measured in
//! multiples of `T`).  The tracked unknowns are
//!
//! - `alpha` (discrepancy of the extremal blowup) and `beta_k` (multiplicity
//!   of the exceptional divisor in the system `q N_k = k(-K)`),
//! - `e`, `s_k` (classes of the exceptional divisor and of `N_k` downstairs),
//! - `(b, a, d)` with `2b = q + ad` (the degree relation of a link onto the
//!   quartic double solid), `a` the discrepancy of the contracted divisor
//!   `F = dA`, and the torsion order `n = e/d`.
//!
//! The rule inventory (the derivations recorded in traces):
//!
//! | id  | content |
//! |-----|---------|
//! | R1  | the exceptional divisor survives downstairs: `e >= 1` |
//! | R2  | no-conic-bundle standing assumption bounds the target: `q_hat <= 7` |
//! | R3  | `lambda = q/b` strictly increases along links |
//! | R4  | `h^0(N_k) >= 2` implies `s_k >= 1`; `s_k = 0` forces `dim N_k = 0` |
//! | R5  | `q beta_k - k alpha` is an integer |
//! | R6  | `r alpha` and `r beta_k` are integers at an index-`r` center |
//! | R7  | `beta_k > 0` when `N_k` is not Cartier at the center (inferred rule) |
//! | R8  | `M` contains `tN` with `t >= 2`: `e = d = 1`, torsion-free, the |
//! |     | support of `N` is `F`, the center downstairs is a point, `a >= 2` |
//! | R9  | `M` contains `N1 + N2` without common components: `F` supports one part |
//! | R10 | `a > 1` gives `M = N + delta F` with `h^0(N) >= 3` |
//! | R11 | a non-cyclic terminal point of odd index `r` carries at least two |
//! |     | basket points of index `r`; a cyclic-quotient center forces `alpha = 1/r` |
//! | R12 | `nK` Cartier forces `r | n` for every basket index |
//! | R13 | a canonical mobile pair satisfies `M = -K` near its base points |
//! | R14 | target normalization: `s_b = 1` when `M` maps to the generator system |
//! | R15 | `a = 1` iff the center downstairs is a curve; `a >= 2` for a point |
//! | R16 | subsystem multiplicity: `beta_{tk} <= t beta_k` when `N_k` is nonempty |
//!
//! Rule applications are recorded in replayable [`RuleTrace`]s; outcomes are
//! labels over the numerical analysis, not geometric existence claims.

pub mod fixtures;
pub mod scenarios;
pub mod solver;

use crate::basket::QuotientPoint;
use crate::rational::{is_integer, mod_inverse, q as qq, q_to_string, qi, Q};
use crate::rr::FanoCandidate;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinkError {
    #[error("torsion order needs d | e, got e = {e}, d = {d}")]
    IndivisibleTorsion { e: u64, d: u64 },
    #[error("assignment is inconsistent: {0}")]
    Inconsistent(String),
}

/// A Weil divisor class `kA + tau T` with `tau` in `Z/n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct DivClass {
    pub k: u32,
    pub tau: u32,
}

impl DivClass {
    pub fn plain(k: u32) -> Self {
        DivClass { k, tau: 0 }
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tau == 0 {
            write!(f, "{}A", self.k)
        } else if self.tau == 1 {
            write!(f, "{}A+T", self.k)
        } else {
            write!(f, "{}A+{}T", self.k, self.tau)
        }
    }
}

/// Knowledge about `h^0` of one class: exact, or only a lower bound
/// (fixture tables are partial).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum H0Info {
    Exact(u64),
    AtLeast(u64),
}

impl H0Info {
    pub fn lower(&self) -> u64 {
        match self {
            H0Info::Exact(v) | H0Info::AtLeast(v) => *v,
        }
    }

    fn exact(&self) -> Option<u64> {
        match self {
            H0Info::Exact(v) => Some(*v),
            H0Info::AtLeast(_) => None,
        }
    }
}

/// Section table of a scenario source: `h^0(kA + tau T)` keyed by class,
/// with the torsion order `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct H0Table {
    pub torsion_order: u32,
    entries: BTreeMap<DivClass, H0Info>,
}

impl H0Table {
    pub fn new(torsion_order: u32) -> Self {
        H0Table {
            torsion_order,
            entries: BTreeMap::new(),
        }
    }

    /// Torsion-free table from a computed `h^0` sequence.
    pub fn from_sequence(h0: &[u64]) -> Self {
        let mut t = H0Table::new(1);
        for (k, &v) in h0.iter().enumerate() {
            t.set(DivClass::plain(k as u32), H0Info::Exact(v));
        }
        t
    }

    pub fn set(&mut self, class: DivClass, info: H0Info) {
        debug_assert!(class.tau < self.torsion_order.max(1));
        self.entries.insert(class, info);
    }

    pub fn get(&self, class: DivClass) -> Option<H0Info> {
        self.entries.get(&class).copied()
    }

    /// Known nonempty: `h^0 >= 1` is recorded.
    pub fn known_nonempty(&self, class: DivClass) -> bool {
        self.get(class).map_or(false, |i| i.lower() >= 1)
    }

    /// Known empty: exactly `h^0 = 0`.
    pub fn known_empty(&self, class: DivClass) -> bool {
        self.get(class).and_then(|i| i.exact()) == Some(0)
    }

    /// Exact value when recorded.
    pub fn exact(&self, class: DivClass) -> Option<u64> {
        self.get(class).and_then(|i| i.exact())
    }

    /// A class whose members are certifiably prime divisors: every proper
    /// decomposition into two effective classes (with `k_i >= 1`) has a
    /// known-empty part.  Torsion classes with `k = 0` carry no effective
    /// divisors, so only `k >= 1` splits matter.
    pub fn certifies_prime(&self, class: DivClass) -> bool {
        if !self.known_nonempty(class) {
            return false;
        }
        let n = self.torsion_order.max(1);
        for k1 in 1..class.k {
            let k2 = class.k - k1;
            for tau1 in 0..n {
                let tau2 = (class.tau + n - tau1 % n) % n;
                let c1 = DivClass { k: k1, tau: tau1 };
                let c2 = DivClass { k: k2, tau: tau2 };
                if !(self.known_empty(c1) || self.known_empty(c2)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Scenario outcome labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    /// The constraint system is exhausted with no feasible assignment.
    Contradiction,
    /// Feasible, with all assignments sharing the recorded bindings.
    Forced(Bindings),
    /// Feasible assignments remain.
    Feasible(usize),
    /// The birational branch is exhausted; the link must degenerate to a
    /// fiber-space target (the mobile system is a pencil, so the fiber-space
    /// alternative is not excluded by the standing assumptions).
    NonBirational,
    /// The analysis reduces the scenario to links with the stated property.
    Reduces(String),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Contradiction => write!(f, "CONTRADICTION"),
            Outcome::Forced(b) => write!(f, "FORCED{{{b}}}"),
            Outcome::Feasible(n) => write!(f, "FEASIBLE({n})"),
            Outcome::NonBirational => write!(f, "NON_BIRATIONAL"),
            Outcome::Reduces(c) => write!(f, "REDUCES({c})"),
        }
    }
}

/// Named rational/integer bindings shared by all feasible assignments.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bindings(pub BTreeMap<String, String>);

impl Bindings {
    pub fn set_q(&mut self, name: &str, v: &Q) {
        self.0.insert(name.into(), q_to_string(v));
    }

    pub fn set_int(&mut self, name: &str, v: i64) {
        self.0.insert(name.into(), v.to_string());
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.0.get(name).map(|s| s.as_str())
    }
}

impl fmt::Display for Bindings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Rule identifiers; see the module table.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum RuleId {
    R1ExceptionalSurvives,
    R2TargetIndexBound,
    R3LambdaIncreases,
    R4MobileNotContracted,
    R5GlobalIntegrality,
    R6CenterIndexIntegrality,
    R7PositiveMultiplicity,
    R8MultipleMemberCollapse,
    R9SplitMemberSupport,
    R10SubsystemDimension,
    R11CenterSingularityType,
    R12CartierIndexDivides,
    R13CanonicalPairLocal,
    R14TargetNormalization,
    R15DiscrepancyOfCenter,
    R16SubsystemMultiplicity,
    DegreeRelation,
    BranchSelection,
    EqMain,
    KawamataBlowup,
    TorsionOrder,
    ChainClosure,
    ExhaustiveSearch,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RuleId::R1ExceptionalSurvives => "R1:exceptional-survives",
            RuleId::R2TargetIndexBound => "R2:target-index-bound",
            RuleId::R3LambdaIncreases => "R3:lambda-increases",
            RuleId::R4MobileNotContracted => "R4:mobile-not-contracted",
            RuleId::R5GlobalIntegrality => "R5:global-integrality",
            RuleId::R6CenterIndexIntegrality => "R6:center-index-integrality",
            RuleId::R7PositiveMultiplicity => "R7:positive-multiplicity",
            RuleId::R8MultipleMemberCollapse => "R8:multiple-member-collapse",
            RuleId::R9SplitMemberSupport => "R9:split-member-support",
            RuleId::R10SubsystemDimension => "R10:subsystem-dimension",
            RuleId::R11CenterSingularityType => "R11:center-singularity-type",
            RuleId::R12CartierIndexDivides => "R12:cartier-index-divides",
            RuleId::R13CanonicalPairLocal => "R13:canonical-pair-local",
            RuleId::R14TargetNormalization => "R14:target-normalization",
            RuleId::R15DiscrepancyOfCenter => "R15:discrepancy-of-center",
            RuleId::R16SubsystemMultiplicity => "R16:subsystem-multiplicity",
            RuleId::DegreeRelation => "degree-relation",
            RuleId::BranchSelection => "branch-selection",
            RuleId::EqMain => "eq-main",
            RuleId::KawamataBlowup => "kawamata-blowup",
            RuleId::TorsionOrder => "torsion-order",
            RuleId::ChainClosure => "chain-closure",
            RuleId::ExhaustiveSearch => "exhaustive-search",
        };
        write!(f, "{s}")
    }
}

/// One recorded rule application: the rule, what it was applied to, and the
/// fact it derived.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleApp {
    pub rule: RuleId,
    pub binding: String,
    pub derived: String,
}

/// Replayable record of a scenario run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleTrace {
    pub scenario: String,
    pub steps: Vec<RuleApp>,
    pub outcome: Outcome,
}

impl RuleTrace {
    pub fn new(scenario: impl Into<String>) -> Self {
        RuleTrace {
            scenario: scenario.into(),
            steps: Vec::new(),
            outcome: Outcome::Feasible(0),
        }
    }

    pub fn step(&mut self, rule: RuleId, binding: impl Into<String>, derived: impl Into<String>) {
        self.steps.push(RuleApp {
            rule,
            binding: binding.into(),
            derived: derived.into(),
        });
    }

    pub fn finish(mut self, outcome: Outcome) -> Self {
        self.outcome = outcome;
        self
    }

    pub fn render(&self) -> String {
        let mut out = format!("scenario {}\n", self.scenario);
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!("  {:>3}. [{}] {} ==> {}\n", i + 1, s.rule, s.binding, s.derived));
        }
        out.push_str(&format!("  outcome: {}\n", self.outcome));
        out
    }
}

/// All positive triples `(b, a, d)` with `2b = q + ad` and `b <= q - 1`
/// (so that `lambda = q/b > 1`).
pub fn degree_relation_solutions(q_index: u32) -> BTreeSet<(u32, u32, u32)> {
    let mut out = BTreeSet::new();
    for b in 1..q_index {
        if 2 * b <= q_index {
            continue;
        }
        let ad = 2 * b - q_index;
        for a in 1..=ad {
            if ad % a == 0 {
                out.insert((b, a, ad / a));
            }
        }
    }
    out
}

/// The residue `t` in `[0, r)` with `kA = t(-K)` in the local class group at
/// `point`, i.e. `t = k q^{-1} (mod r)`.
pub fn local_multiple_t(q_index: u32, point: &QuotientPoint, k: u32) -> u32 {
    local_multiple_t_raw(q_index, point.r(), k)
}

pub(crate) fn local_multiple_t_raw(q_index: u32, r: u32, k: u32) -> u32 {
    let r = r as i64;
    let inv = mod_inverse(q_index as i64, r).expect("center index coprime to q");
    ((k as i64 % r) * inv).rem_euclid(r) as u32
}

/// Constraints emitted by the canonical-threshold bound at a point where the
/// mobile system is `t(-K)` locally: `ct <= 1/t` and `beta >= t alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThresholdConstraint {
    /// Upper bound for the canonical threshold, `1/t`; `None` when `t = 0`
    /// (the system is Cartier there and nothing is forced).
    pub ct_upper: Option<Q>,
    /// `beta >= beta_lower_multiple * alpha`.
    pub beta_lower_multiple: u32,
}

pub fn threshold_bounds(t: u32) -> ThresholdConstraint {
    if t == 0 {
        ThresholdConstraint {
            ct_upper: None,
            beta_lower_multiple: 0,
        }
    } else {
        ThresholdConstraint {
            ct_upper: Some(qq(1, t as i128)),
            beta_lower_multiple: t,
        }
    }
}

/// Residual of the main class relation `k q_hat = q s_k + (q beta_k - k alpha) e`.
/// Zero iff the assignment is consistent; a non-integer `q beta_k - k alpha`
/// is itself infeasible and reported as an error.
pub fn eqmain_check(
    q_index: u32,
    q_hat: u32,
    k: u32,
    s_k: u64,
    beta_k: Q,
    alpha: Q,
    e: u64,
) -> Result<Q, LinkError> {
    let weight = beta_k * qi(q_index as i128) - alpha * qi(k as i128);
    if !is_integer(&weight) {
        return Err(LinkError::Inconsistent(format!(
            "q beta_k - k alpha = {} is not an integer",
            q_to_string(&weight)
        )));
    }
    Ok(qi(k as i128 * q_hat as i128)
        - qi(q_index as i128 * s_k as i128)
        - weight * qi(e as i128))
}

/// Discrepancy of the unique extremal divisorial contraction over a terminal
/// cyclic quotient point of index `r`: `1/r`.
pub fn kawamata_alpha(r: u32) -> Q {
    assert!(r >= 2);
    qq(1, r as i128)
}

/// Torsion order `n = e/d`, defined when `d | e`.
pub fn torsion_order(e: u64, d: u64) -> Result<u64, LinkError> {
    assert!(e >= 1 && d >= 1);
    if e % d != 0 {
        return Err(LinkError::IndivisibleTorsion { e, d });
    }
    Ok(e / d)
}

/// The source side of a link scenario: a candidate (when concrete) together
/// with its section table.
#[derive(Clone, Debug)]
pub struct ScenarioSource {
    pub label: String,
    pub candidate: Option<FanoCandidate>,
    pub h0: H0Table,
}

/// Which mobile system starts the link.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MobileSelection {
    /// The `b` with `h^0(bA) = df + 1`, over all torsion twists of that
    /// degree (the system of dimension `df`).
    ByDf { df: u32 },
    /// An explicit class.
    Fixed(DivClass),
}

/// A link scenario: sources, target, torsion order, and chain closures.
#[derive(Clone, Debug)]
pub struct LinkScenario {
    pub label: String,
    pub q: u32,
    pub torsion_order: u32,
    pub sources: Vec<ScenarioSource>,
    pub mobile: MobileSelection,
    /// Target index (the smooth quartic double solid has 2).
    pub q_hat: u32,
    /// Indices `q'` for which every continuation scenario with `q_hat > q'`
    /// has already been refuted; lets a `Reduces` branch close.
    pub closed_above: Option<u32>,
}

/// Runs a scenario through the rule set; see [`scenarios`].
pub fn apply_rules(scenario: &LinkScenario) -> RuleTrace {
    scenarios::run(scenario)
}

/// The flagship catalog case: the index-7 candidate with `A^3 = 1/78` and
/// basket `(2,3,13)` (catalog id 41478).  The birational branch is exhausted
/// and the forced bindings are reported; the remaining alternative is a
/// fiber-space link.
pub fn run_case_41478() -> RuleTrace {
    scenarios::run_case_41478()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basket::make_point;

    #[test]
    fn degree_relation_examples() {
        let q3: Vec<_> = degree_relation_solutions(3).into_iter().collect();
        assert_eq!(q3, vec![(2, 1, 1)]);
        let q4: Vec<_> = degree_relation_solutions(4).into_iter().collect();
        assert_eq!(q4, vec![(3, 1, 2), (3, 2, 1)]);
        let q7: Vec<_> = degree_relation_solutions(7).into_iter().collect();
        assert_eq!(
            q7,
            vec![(4, 1, 1), (5, 1, 3), (5, 3, 1), (6, 1, 5), (6, 5, 1)]
        );
        for &(b, a, d) in &degree_relation_solutions(11) {
            assert_eq!(2 * b, 11 + a * d);
            assert!(11 < 2 * b);
        }
    }

    #[test]
    fn local_multiple_examples() {
        let p13 = make_point(13, 6).unwrap();
        assert_eq!(local_multiple_t(7, &p13, 1), 2);
        assert_eq!(local_multiple_t(7, &p13, 6), 12);
        assert_eq!(local_multiple_t(7, &p13, 13), 0);
        assert_eq!(local_multiple_t(4, &make_point(3, 1).unwrap(), 2), 2);
    }

    #[test]
    fn threshold_examples() {
        let t12 = threshold_bounds(12);
        assert_eq!(t12.ct_upper, Some(qq(1, 12)));
        assert_eq!(t12.beta_lower_multiple, 12);
        let t2 = threshold_bounds(2);
        assert_eq!(t2.ct_upper, Some(qq(1, 2)));
        assert_eq!(threshold_bounds(0).ct_upper, None);
    }

    #[test]
    fn eqmain_examples() {
        // q=4 subcase, k=3: 2 = (4 beta_3 - 3 alpha) e reads as residual zero
        // with q_hat = 2, s_3 = 1:  3*2 - 4*1 - (4 b3 - 3 a) e = 0
        let residual = eqmain_check(4, 2, 3, 1, qq(3, 5), qq(2, 5), 1).unwrap();
        assert_eq!(residual, qi(2) - (qq(12, 5) - qq(6, 5)) * qi(1));
        // a consistent index-7 assignment
        let r = eqmain_check(7, 1, 1, 0, qq(2, 13), qq(1, 13), 1).unwrap();
        assert!(r.is_zero());
        // 6 q_hat = 7 s_6 + 6 e  when beta_6 = 12 alpha = 12/13
        let r6 = eqmain_check(7, 1, 6, 0, qq(12, 13), qq(1, 13), 1).unwrap();
        assert!(r6.is_zero());
        assert!(eqmain_check(7, 1, 1, 0, qq(1, 13), qq(1, 13), 1).is_err());
    }

    #[test]
    fn kawamata_and_torsion_examples() {
        assert_eq!(kawamata_alpha(13), qq(1, 13));
        assert_eq!(kawamata_alpha(2), qq(1, 2));
        assert_eq!(kawamata_alpha(11), qq(1, 11));
        assert_eq!(torsion_order(6, 3).unwrap(), 2);
        assert_eq!(torsion_order(1, 1).unwrap(), 1);
        assert_eq!(
            torsion_order(3, 2),
            Err(LinkError::IndivisibleTorsion { e: 3, d: 2 })
        );
    }

    #[test]
    fn prime_certificates_use_known_emptiness() {
        let mut t = H0Table::new(1);
        t.set(DivClass::plain(1), H0Info::Exact(0));
        t.set(DivClass::plain(2), H0Info::Exact(1));
        t.set(DivClass::plain(3), H0Info::Exact(1));
        assert!(t.certifies_prime(DivClass::plain(2)));
        assert!(t.certifies_prime(DivClass::plain(3)));
        let mut u = H0Table::new(1);
        u.set(DivClass::plain(1), H0Info::Exact(1));
        u.set(DivClass::plain(2), H0Info::Exact(1));
        assert!(!u.certifies_prime(DivClass::plain(2)));
    }
}
