//! Exhaustive enumeration of numerical candidates and the machine checks
//! over the resulting lists.
//!
//! A candidate `(q, B, A^3)` is admitted when
//!
//! - every basket index is coprime to `q`,
//! - `sigma(B) < 24` (strictly, so `(-K).c2 > 0`; relaxable by config),
//! - `0 < q^3 A^3 <= degree_cap` (default 72),
//! - `chi(nA)` is an integer for all `n` and non-negative for `n >= 0`.
//!
//! The degree grid never needs to be guessed: integrality alone pins
//! `A^3` modulo 1.  Writing `chi = 1 + A^3 g(n) + linear + periodic` with
//! `g(n) = n(n+q)(2n+q)/12`, the third difference is
//! `D3 chi(n) = A^3 + D3(periodic)(n)`, so any valid `A^3` satisfies
//! `A^3 = -D3(periodic)(n) (mod 1)` for every `n`.  Either those residues
//! disagree for some `n` (no valid degree exists for this `(q, B)`) or they
//! pin the fractional part of `A^3` outright, leaving at most
//! `degree_cap / q^3` integer translates to test individually.  Since the
//! periodic terms have denominators dividing `12 r_P`, this also proves the
//! classical fact that `12 * prod(r_P) * A^3` is an integer, which the dense
//! fallback grid [`GridPolicy::Dense`] uses directly.

use crate::basket::{for_each_basket, Basket};
use crate::rational::{frac, q as qq, q_to_string, qi, Q};
use crate::rr::{
    fano_vanishing_failure, hilbert_profile, series_key, ChiEvaluator, FanoCandidate,
    HilbertProfile,
};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("q_min must be at least 2 (got {0})")]
    QMinTooSmall(u32),
    #[error("q range is empty: {q_min}..={q_max}")]
    EmptyRange { q_min: u32, q_max: u32 },
    #[error("degree cap must be positive")]
    NonPositiveCap,
    #[error("horizon {horizon} cannot cover df for q up to {q_max}")]
    HorizonTooSmall { horizon: u32, q_max: u32 },
}

/// How the finite `A^3` grid per `(q, basket)` is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum GridPolicy {
    /// Solve the third-difference congruence for the fractional part of
    /// `A^3` (complete; the default).
    #[default]
    Progression,
    /// Rational grid `m / (12 prod r_P)` filtered by integrality afterwards.
    /// Provably a superset of all valid degrees; used to cross-check the
    /// progression policy.
    Dense,
}

/// Parameters of a candidate search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub q_min: u32,
    pub q_max: u32,
    /// Upper bound for the anticanonical degree `q^3 A^3` (inclusive).
    #[serde(with = "crate::rational::q_string")]
    pub degree_cap: Q,
    /// Length of the tabulated `h^0` range.
    pub horizon: u32,
    /// Keep only candidates with this exact `df`.
    pub df_filter: Option<u32>,
    /// Strict Bogomolov-Miyaoka bound `sigma < 24`; relaxing admits
    /// `sigma = 24` (so `(-K).c2 = 0`).
    pub strict_kc2: bool,
    /// Boundedness inequality `(-K)^3 <= t * (-K).c2`, i.e.
    /// `q^3 A^3 <= t (24 - sigma)`, with this factor `t`; `None` disables.
    /// The default `16/5` is the unstable-tangent-sheaf case of the
    /// Bogomolov-Miyaoka bound for terminal Q-Fano threefolds.
    #[serde(with = "crate::rational::opt_q_string")]
    pub bmy_factor: Option<Q>,
    /// Vanishing inside the Fano range: `chi(mA) = 0` for `-q < m < 0`.
    pub fano_vanishing: bool,
    /// Positivity depth: `chi(nA) >= 0` checked to the cubic-dominance bound
    /// when true, only up to the horizon when false.
    pub deep_positivity: bool,
    /// Require `chi(nA) >= 0` at all (disable to mirror pipelines that only
    /// tabulate the series without sign checks).
    pub check_positivity: bool,
    /// Optional lower bound on `h^0(-K)`, off by default.
    pub min_h0_anticanonical: Option<u64>,
    pub grid_policy: GridPolicy,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            q_min: 2,
            q_max: 19,
            degree_cap: qi(72),
            horizon: 24,
            df_filter: None,
            strict_kc2: true,
            bmy_factor: Some(qq(16, 5)),
            fano_vanishing: true,
            deep_positivity: true,
            check_positivity: true,
            min_h0_anticanonical: None,
            grid_policy: GridPolicy::Progression,
        }
    }
}

impl SearchConfig {
    pub fn for_q_range(q_min: u32, q_max: u32) -> Self {
        SearchConfig {
            q_min,
            q_max,
            ..SearchConfig::default()
        }
    }

    /// Calibrated variant reproducing the external tally of 30 distinct
    /// Hilbert series with `df = 3`, `q >= 3` (degree factor 4).
    pub fn df3_series_preset() -> Self {
        let mut c = SearchConfig::for_q_range(3, 19);
        c.bmy_factor = Some(qi(4));
        c.df_filter = Some(3);
        c
    }

    /// Calibrated variant reproducing the external tally of 472 candidates
    /// with `q >= 3` (degree factor 14/3).
    pub fn q3_total_preset() -> Self {
        let mut c = SearchConfig::for_q_range(3, 19);
        c.bmy_factor = Some(qq(14, 3));
        c
    }

    /// Calibrated variant reproducing the external applicability tally of
    /// 313 candidates with `df >= 2`, `q >= 3` (degree factor 118/25).
    pub fn q3_applicability_preset() -> Self {
        let mut c = SearchConfig::for_q_range(3, 19);
        c.bmy_factor = Some(qq(118, 25));
        c
    }

    fn validate(&self) -> Result<(), ConfigError> {
        if self.q_min < 2 {
            return Err(ConfigError::QMinTooSmall(self.q_min));
        }
        if self.q_max < self.q_min {
            return Err(ConfigError::EmptyRange {
                q_min: self.q_min,
                q_max: self.q_max,
            });
        }
        if self.degree_cap <= Q::zero() {
            return Err(ConfigError::NonPositiveCap);
        }
        if self.horizon + 1 < self.q_max {
            return Err(ConfigError::HorizonTooSmall {
                horizon: self.horizon,
                q_max: self.q_max,
            });
        }
        Ok(())
    }
}

/// Outcome of one named check over a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssertionRecord {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

impl AssertionRecord {
    fn pass(name: &str, details: String) -> Self {
        AssertionRecord {
            name: name.into(),
            passed: true,
            details,
        }
    }

    fn fail(name: &str, details: String) -> Self {
        AssertionRecord {
            name: name.into(),
            passed: false,
            details,
        }
    }
}

/// Result of a candidate search: canonically sorted, duplicate-free.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub profiles: Vec<HilbertProfile>,
    pub candidate_count: usize,
    /// Number of distinct Hilbert series among the candidates (candidates
    /// differing only by basket weights can share a series).
    pub distinct_series_count: usize,
    pub assertions: Vec<AssertionRecord>,
}

impl SearchReport {
    pub fn all_assertions_pass(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

/// All valid degrees `A^3` for a fixed `(q, basket)` under the configured
/// cap, in increasing order.
pub fn degrees_for(q_index: u32, basket: &Basket, config: &SearchConfig) -> Vec<Q> {
    let cap = config.degree_cap / qi((q_index as i128).pow(3));
    let degrees = match config.grid_policy {
        GridPolicy::Progression => progression_degrees(q_index, basket, &cap),
        GridPolicy::Dense => dense_degrees(q_index, basket, &cap),
    };
    degrees
        .into_iter()
        .filter(|a3| {
            let cand = FanoCandidate::new(q_index, basket.clone(), *a3)
                .expect("coprime basket and positive degree");
            let positivity_depth = if config.check_positivity {
                Some(config.deep_positivity)
            } else {
                None
            };
            crate::rr::validity_failure_opts(&cand, positivity_depth, config.horizon).is_none()
                && (!config.fano_vanishing || fano_vanishing_failure(&cand).is_none())
        })
        .collect()
}

/// Fractional parts forced by the third-difference congruence; `None` when
/// the residues disagree (no valid degree at all).
fn forced_fraction(q_index: u32, basket: &Basket) -> Option<Q> {
    // third difference of the periodic part, using a3 = 0 as scaffold
    let scaffold = FanoCandidate::new(q_index, basket.clone(), qi(1)).ok()?;
    let ev = ChiEvaluator::new(&scaffold);
    let period = basket.index_lcm() as i64;
    let mut forced: Option<Q> = None;
    for n in 0..period {
        let d3_periodic = ev.periodic(n + 3) - ev.periodic(n + 2) * qi(3)
            + ev.periodic(n + 1) * qi(3)
            - ev.periodic(n);
        let residue = frac(&-d3_periodic);
        match &forced {
            None => forced = Some(residue),
            Some(prev) if *prev != residue => return None,
            _ => {}
        }
    }
    forced
}

fn progression_degrees(q_index: u32, basket: &Basket, cap: &Q) -> Vec<Q> {
    let Some(phi) = forced_fraction(q_index, basket) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut a3 = if phi.is_zero() { qi(1) } else { phi };
    while a3 <= *cap {
        out.push(a3);
        a3 += qi(1);
    }
    out
}

fn dense_degrees(q_index: u32, basket: &Basket, cap: &Q) -> Vec<Q> {
    let _ = q_index;
    let den = 12 * basket.index_product() as i128;
    let mut out = Vec::new();
    let mut m = 1i128;
    loop {
        let a3 = qq(m, den);
        if a3 > *cap {
            break;
        }
        out.push(a3);
        m += 1;
    }
    out
}

/// Runs the configured search: complete and deterministic relative to the
/// documented grid policy.
pub fn enumerate_candidates(config: &SearchConfig) -> Result<SearchReport, ConfigError> {
    config.validate()?;
    let mut profiles: Vec<HilbertProfile> = Vec::new();
    for q_index in config.q_min..=config.q_max {
        let sigma_bound = qi(24);
        for_each_basket(&sigma_bound, Some(q_index), !config.strict_kc2, &mut |b| {
            let bmy_cap = config.bmy_factor.map(|t| (qi(24) - b.sigma()) * t);
            for a3 in degrees_for(q_index, b, config) {
                let cand = FanoCandidate::new(q_index, b.clone(), a3)
                    .expect("filtered basket is coprime");
                if let Some(cap) = bmy_cap {
                    if cand.anticanonical_degree() > cap {
                        continue;
                    }
                }
                let Ok(profile) = hilbert_profile(&cand, config.horizon) else {
                    continue;
                };
                if let Some(df) = config.df_filter {
                    if profile.df != df {
                        continue;
                    }
                }
                if let Some(min) = config.min_h0_anticanonical {
                    if profile.h0(q_index) < min {
                        continue;
                    }
                }
                profiles.push(profile);
            }
        });
    }
    profiles.sort_by(|a, b| {
        (a.candidate.q(), a.candidate.basket(), a.candidate.a3()).cmp(&(
            b.candidate.q(),
            b.candidate.basket(),
            b.candidate.a3(),
        ))
    });
    profiles.dedup_by(|a, b| a.candidate == b.candidate);
    let candidate_count = profiles.len();
    let distinct_series_count = profiles
        .iter()
        .map(|p| series_key(&p.candidate))
        .collect::<BTreeSet<_>>()
        .len();
    Ok(SearchReport {
        config: config.clone(),
        profiles,
        candidate_count,
        distinct_series_count,
        assertions: Vec::new(),
    })
}

/// Sub-assertions over the `df = 3`, torsion-free, `q >= 3` list:
///
/// 1. every candidate has `q <= 7`, `q != 6`, and at most one basket point
///    of index `>= 8`;
/// 2. `q = 7` forces `h^0(A) = 0` and `h^0(2A) = h^0(3A) = 1`;
/// 3. `q = 5` forces `h^0(2A) = 1` and `h^0(3A) = 2`;
/// 4. `q = 4` forces `h^0(A) <= 1` and `2 <= h^0(2A) <= 3`, and the
///    `h^0(2A) = 3` branch is exactly `A^3 = 2/11` with basket `(11)`.
///
/// Reports the first violating candidate per sub-assertion.
pub fn check_df3_assertions(report: &SearchReport) -> Vec<AssertionRecord> {
    let mut records = Vec::new();

    let mut issue = None;
    for p in &report.profiles {
        let c = &p.candidate;
        let big = c
            .basket()
            .points()
            .iter()
            .filter(|pt| pt.r() >= 8)
            .count();
        if c.q() > 7 || c.q() == 6 || big > 1 {
            issue = Some(format!("violated by {c}"));
            break;
        }
    }
    records.push(match issue {
        None => AssertionRecord::pass(
            "index-bound",
            "q <= 7, q != 6, at most one point of index >= 8".into(),
        ),
        Some(d) => AssertionRecord::fail("index-bound", d),
    });

    let sub = |name: &str, pred: &dyn Fn(&HilbertProfile) -> bool| {
        let bad = report
            .profiles
            .iter()
            .find(|p| !pred(p))
            .map(|p| format!("violated by {}", p.candidate));
        match bad {
            None => AssertionRecord::pass(name, "all candidates conform".into()),
            Some(d) => AssertionRecord::fail(name, d),
        }
    };

    records.push(sub("q7-sections", &|p| {
        p.candidate.q() != 7 || (p.h0(1) == 0 && p.h0(2) == 1 && p.h0(3) == 1)
    }));
    records.push(sub("q5-sections", &|p| {
        p.candidate.q() != 5 || (p.h0(2) == 1 && p.h0(3) == 2)
    }));
    records.push(sub("q4-sections", &|p| {
        p.candidate.q() != 4 || (p.h0(1) <= 1 && (2..=3).contains(&p.h0(2)))
    }));

    let q4_wide: Vec<&HilbertProfile> = report
        .profiles
        .iter()
        .filter(|p| p.candidate.q() == 4 && p.h0(2) == 3)
        .collect();
    let branch_ok = q4_wide.len() == 1
        && q4_wide[0].h0(1) == 1
        && q4_wide[0].candidate.a3() == qq(2, 11)
        && q4_wide[0].candidate.basket().indices() == vec![11]
        && q4_wide[0].candidate.basket().len() == 1;
    records.push(if branch_ok {
        AssertionRecord::pass(
            "q4-wide-branch",
            format!(
                "unique h^0(2A) = 3 candidate: {}",
                q4_wide[0].candidate
            ),
        )
    } else {
        AssertionRecord::fail(
            "q4-wide-branch",
            format!("h^0(2A) = 3 candidates: {:?}", q4_wide.len()),
        )
    });

    records
}

/// Candidates carrying a sub-pencil pattern: some `k` with `2k < q`,
/// `h^0(kA) = 2` and `h^0(2kA) = 3`.  The searches predict none.
pub fn check_pencil_pattern(report: &SearchReport) -> Vec<HilbertProfile> {
    report
        .profiles
        .iter()
        .filter(|p| {
            let q_index = p.candidate.q();
            (1..q_index)
                .filter(|k| 2 * k < q_index)
                .any(|k| p.h0(k) == 2 && p.h0(2 * k) == 3)
        })
        .cloned()
        .collect()
}

/// Number of candidates with `df >= 2` (the nontrivial hypothesis range of
/// the birational classification) and, side by side, the alternative
/// reading `2 <= df <= 3`.
pub fn applicability_count(report: &SearchReport) -> (usize, usize) {
    let wide = report.profiles.iter().filter(|p| p.df >= 2).count();
    let narrow = report
        .profiles
        .iter()
        .filter(|p| (2..=3).contains(&p.df))
        .count();
    (wide, narrow)
}

/// One row of a constraint-diff: how a count responds to a config toggle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstraintDiffRow {
    pub variant: String,
    pub candidate_count: usize,
    pub distinct_series_count: usize,
    pub added: Vec<String>,
    pub removed: Vec<String>,
}

/// Mismatch protocol: when an expected count is missed, report how each
/// config toggle moves the candidate set relative to the base config.
/// Silent tolerance is forbidden; this diff is the required failure output.
pub fn constraint_diff(base: &SearchConfig) -> Vec<ConstraintDiffRow> {
    let base_report = enumerate_candidates(base).expect("base config valid");
    let base_set: BTreeSet<String> = base_report
        .profiles
        .iter()
        .map(|p| p.candidate.to_string())
        .collect();
    let mut variants: Vec<(String, SearchConfig)> = Vec::new();
    let mut relaxed = base.clone();
    relaxed.strict_kc2 = !base.strict_kc2;
    variants.push((
        format!("strict_kc2={}", relaxed.strict_kc2),
        relaxed,
    ));
    for cap in [qi(64), qi(70), qi(72), qi(80)] {
        if cap != base.degree_cap {
            let mut v = base.clone();
            v.degree_cap = cap;
            variants.push((format!("degree_cap={}", q_to_string(&cap)), v));
        }
    }
    for factor in [Some(qi(3)), Some(qq(16, 5)), Some(qi(4)), Some(qq(14, 3)), Some(qq(118, 25)), None] {
        if factor != base.bmy_factor {
            let mut v = base.clone();
            v.bmy_factor = factor;
            let label = match factor {
                Some(f) => format!("bmy_factor={}", q_to_string(&f)),
                None => "bmy_factor=off".into(),
            };
            variants.push((label, v));
        }
    }
    let mut vanish = base.clone();
    vanish.fano_vanishing = !base.fano_vanishing;
    variants.push((
        format!("fano_vanishing={}", vanish.fano_vanishing),
        vanish,
    ));
    let mut anti = base.clone();
    anti.min_h0_anticanonical = Some(2);
    variants.push(("min_h0_anticanonical=2".into(), anti));

    variants
        .into_iter()
        .map(|(label, config)| {
            let report = enumerate_candidates(&config).expect("variant config valid");
            let set: BTreeSet<String> = report
                .profiles
                .iter()
                .map(|p| p.candidate.to_string())
                .collect();
            ConstraintDiffRow {
                variant: label,
                candidate_count: report.candidate_count,
                distinct_series_count: report.distinct_series_count,
                added: set.difference(&base_set).cloned().collect(),
                removed: base_set.difference(&set).cloned().collect(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basket::make_point;

    #[test]
    fn config_validation() {
        assert!(SearchConfig::for_q_range(2, 19).validate().is_ok());
        assert_eq!(
            SearchConfig::for_q_range(1, 4).validate(),
            Err(ConfigError::QMinTooSmall(1))
        );
        assert_eq!(
            SearchConfig::for_q_range(5, 4).validate(),
            Err(ConfigError::EmptyRange { q_min: 5, q_max: 4 })
        );
        let mut c = SearchConfig::for_q_range(2, 19);
        c.horizon = 10;
        assert!(matches!(
            c.validate(),
            Err(ConfigError::HorizonTooSmall { .. })
        ));
    }

    #[test]
    fn tiny_instance_recovers_candidate_41478() {
        // restrict to q = 7 and the three specific indices
        let mut config = SearchConfig::for_q_range(7, 7);
        config.df_filter = Some(1);
        let report = enumerate_candidates(&config).unwrap();
        let hit = report.profiles.iter().find(|p| {
            p.candidate.a3() == qq(1, 78) && p.candidate.basket().indices() == vec![2, 3, 13]
        });
        let hit = hit.expect("candidate 41478 found");
        assert_eq!(
            hit.candidate.basket().points(),
            &[
                make_point(2, 1).unwrap(),
                make_point(3, 1).unwrap(),
                make_point(13, 6).unwrap()
            ]
        );
        assert!((1..=5).all(|k| hit.h0(k) == 1));
        assert_eq!(hit.h0(6), 2);
    }

    #[test]
    fn progression_equals_dense_grid() {
        // grid-policy equivalence on assorted cells
        let cells = [
            (7u32, vec![(2u32, 1u32), (3, 1), (13, 6)]),
            (7, vec![(2, 1), (3, 1), (13, 4)]),
            (5, vec![(2, 1)]),
            (4, vec![(11, 1)]),
            (2, vec![(3, 1), (5, 2)]),
            (3, vec![]),
        ];
        for (q_index, pairs) in cells {
            let basket = Basket::from_pairs(&pairs).unwrap();
            let mut c = SearchConfig::for_q_range(2, 19);
            c.grid_policy = GridPolicy::Progression;
            let fast = degrees_for(q_index, &basket, &c);
            c.grid_policy = GridPolicy::Dense;
            let dense = degrees_for(q_index, &basket, &c);
            assert_eq!(fast, dense, "cell q={q_index} B={basket}");
        }
    }

    #[test]
    fn search_is_partition_independent() {
        let whole = enumerate_candidates(&SearchConfig::for_q_range(8, 11)).unwrap();
        let mut merged: Vec<HilbertProfile> = Vec::new();
        for q_index in 8..=11 {
            let part = enumerate_candidates(&SearchConfig::for_q_range(q_index, q_index))
                .unwrap();
            merged.extend(part.profiles);
        }
        merged.sort_by(|a, b| {
            (a.candidate.q(), a.candidate.basket(), a.candidate.a3()).cmp(&(
                b.candidate.q(),
                b.candidate.basket(),
                b.candidate.a3(),
            ))
        });
        let whole_keys: Vec<String> =
            whole.profiles.iter().map(|p| p.candidate.to_string()).collect();
        let merged_keys: Vec<String> =
            merged.iter().map(|p| p.candidate.to_string()).collect();
        assert_eq!(whole_keys, merged_keys);
    }

    #[test]
    fn emitted_candidates_satisfy_all_predicates_post_hoc() {
        let config = SearchConfig::for_q_range(9, 19);
        let report = enumerate_candidates(&config).unwrap();
        assert!(!report.profiles.is_empty());
        for p in &report.profiles {
            let c = &p.candidate;
            assert!(c.basket().sigma() < qi(24));
            assert!(c.basket().coprime_to(c.q()));
            assert!(c.anticanonical_degree() <= config.degree_cap);
            assert!(integrality_valid(c));
            assert!(p.h0.iter().zip(0..).all(|(h, n)| n > 0 || *h == 1));
        }
    }

    #[test]
    fn counts_are_monotone_under_tightening() {
        let base = enumerate_candidates(&SearchConfig::for_q_range(5, 7)).unwrap();
        let mut tighter = SearchConfig::for_q_range(5, 7);
        tighter.degree_cap = qi(30);
        let small_cap = enumerate_candidates(&tighter).unwrap();
        assert!(small_cap.candidate_count <= base.candidate_count);
        let mut df = SearchConfig::for_q_range(5, 7);
        df.df_filter = Some(3);
        let filtered = enumerate_candidates(&df).unwrap();
        assert!(filtered.candidate_count <= base.candidate_count);
    }
}
