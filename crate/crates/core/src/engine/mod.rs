//! Case analysis for the supported orders: candidate enumeration, filters,
//! transform-chain verification and per-order verdicts.

mod div3;
mod sporadic;
mod suites;

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cover::{hurwitz_branch_orders, BranchConfiguration, HurwitzOrders};
use crate::error::{Error, Result};

pub use div3::{
    classify_div3, enumerate_alpha_pairs, filter_lemma3, filter_pair, filter_symplectic_lift,
    symplectic_lift_trace, LiftStep,
};
pub use sporadic::{
    double_cover_lifts, solve_fibre_types, verify_m38, verify_m44, verify_m50, TypeSolution,
    MAX_SYMPLECTIC_ORDER,
};
pub use suites::{arithmetic_suites, lemma8_identity_check, Lemma8Report, SuiteReport};

/// The orders handled by the engine, ascending.
pub const SUPPORTED_ORDERS: [i64; 7] = [38, 44, 48, 50, 54, 60, 66];

/// Primes used for smoothness certificates when none are configured.
pub const DEFAULT_PRIMES: [u64; 2] = [101, 1009];

/// Counts of ramification of `r|_B` on the two invariant fibres.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaPair {
    pub alpha1: i64,
    pub alpha2: i64,
}

impl AlphaPair {
    pub fn new(alpha1: i64, alpha2: i64) -> Self {
        AlphaPair { alpha1, alpha2 }
    }

    pub fn as_tuple(&self) -> (i64, i64) {
        (self.alpha1, self.alpha2)
    }
}

impl std::fmt::Display for AlphaPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.alpha1, self.alpha2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FilterReason {
    Lemma3Violation,
    SymplecticLift,
    FixedCurveOffBranch,
    Survives,
}

impl FilterReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            FilterReason::Lemma3Violation => "lemma3_violation",
            FilterReason::SymplecticLift => "symplectic_lift",
            FilterReason::FixedCurveOffBranch => "fixed_curve_off_branch",
            FilterReason::Survives => "survives",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterVerdict {
    pub pair: AlphaPair,
    pub accepted: bool,
    pub reason: FilterReason,
    pub detail: String,
}

impl FilterVerdict {
    fn accept(pair: AlphaPair, detail: String) -> Self {
        FilterVerdict {
            pair,
            accepted: true,
            reason: FilterReason::Survives,
            detail,
        }
    }

    fn reject(pair: AlphaPair, reason: FilterReason, detail: String) -> Self {
        debug_assert_ne!(reason, FilterReason::Survives);
        FilterVerdict {
            pair,
            accepted: false,
            reason,
            detail,
        }
    }
}

/// Ramification of `r|_B` on the invariant fibres `F1`, `F2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RamificationProfile {
    pub beta1: i64,
    pub beta2: i64,
}

impl RamificationProfile {
    /// The remaining `delta - β1 - β2` ramification points must form free
    /// orbits of the group.
    pub fn consistent_with(&self, delta: i64, group_order: i64) -> bool {
        let rest = delta - self.beta1 - self.beta2;
        rest >= 0 && rest % group_order == 0
    }
}

/// One named verification step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// A branch curve of the quotient model, by class and ramification index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchEntry {
    pub class: String,
    pub index: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientModel {
    pub base: String,
    pub branch: Vec<BranchEntry>,
}

impl From<&BranchConfiguration> for QuotientModel {
    fn from(c: &BranchConfiguration) -> Self {
        QuotientModel {
            base: c.base.to_string(),
            branch: c
                .components
                .iter()
                .map(|b| BranchEntry {
                    class: b.curve_class.to_string(),
                    index: b.index,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub m: i64,
    pub exists: bool,
    pub num_surfaces: u32,
    pub num_actions: u32,
    pub quotient_model: Option<QuotientModel>,
    pub checks: Vec<Check>,
    pub annotations: Vec<String>,
}

impl CaseReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    fn assemble(
        m: i64,
        checks: Checks,
        exists_if_pass: bool,
        num_actions: u32,
        quotient_model: Option<QuotientModel>,
        annotations: Vec<String>,
    ) -> Self {
        let checks = checks.0;
        let exists = exists_if_pass && checks.iter().all(|c| c.pass);
        CaseReport {
            m,
            exists,
            num_surfaces: exists as u32,
            num_actions: if exists { num_actions } else { 0 },
            quotient_model: if exists { quotient_model } else { None },
            checks,
            annotations,
        }
    }
}

/// The verdict each supported order is expected to reach.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub exists: bool,
    pub num_actions: u32,
}

pub fn expected_outcome(m: i64) -> Result<Expectation> {
    match m {
        60 => Ok(Expectation {
            exists: false,
            num_actions: 0,
        }),
        38 => Ok(Expectation {
            exists: true,
            num_actions: 2,
        }),
        44 | 48 | 50 | 54 | 66 => Ok(Expectation {
            exists: true,
            num_actions: 1,
        }),
        _ => Err(Error::UnsupportedOrder(m)),
    }
}

impl CaseReport {
    /// All checks pass and the verdict agrees with [`expected_outcome`].
    pub fn matches_expectation(&self) -> bool {
        match expected_outcome(self.m) {
            Ok(e) => {
                self.all_pass()
                    && self.exists == e.exists
                    && self.num_surfaces == e.exists as u32
                    && self.num_actions == e.num_actions
            }
            Err(_) => false,
        }
    }
}

/// Accumulates checks; errors become failed checks instead of aborting.
#[derive(Default)]
pub(crate) struct Checks(Vec<Check>);

impl Checks {
    pub(crate) fn push(&mut self, name: &str, pass: bool, detail: impl Into<String>) -> bool {
        self.0.push(Check {
            name: name.to_string(),
            pass,
            detail: detail.into(),
        });
        pass
    }

    /// Records `f(value)` for `Ok` values and a failure carrying the error
    /// message otherwise. Returns the value on success.
    pub(crate) fn record<T>(
        &mut self,
        name: &str,
        value: Result<T>,
        f: impl FnOnce(&T) -> (bool, String),
    ) -> Option<T> {
        match value {
            Ok(v) => {
                let (pass, detail) = f(&v);
                self.push(name, pass, detail);
                Some(v)
            }
            Err(e) => {
                self.push(name, false, format!("error: {e}"));
                None
            }
        }
    }
}

/// Orders `m` with `m/2` odd whose plane quotient survives the three
/// Riemann–Hurwitz cases: `q ≤ 5`, `q` a branch order of a genus-10 curve
/// over three points, or `q = h·i` with `h, i ≤ 5`, where `m = 2q`.
pub fn lemma4_allowed_orders() -> BTreeSet<i64> {
    let mut qs: BTreeSet<i64> = (1..=5).collect();
    if let Ok(HurwitzOrders::Finite(s)) = hurwitz_branch_orders(10, 3) {
        qs.extend(s);
    }
    for h in 1..=5 {
        for i in 1..=5 {
            qs.insert(h * i);
        }
    }
    qs.into_iter().filter(|q| q % 2 == 1).map(|q| 2 * q).collect()
}

/// Verdict for a single supported order.
pub fn classify(m: i64, primes: &[u64]) -> Result<CaseReport> {
    match m {
        48 | 54 | 60 | 66 => classify_div3(m),
        50 => Ok(verify_m50(primes)),
        44 => Ok(verify_m44()),
        38 => Ok(verify_m38()),
        _ => Err(Error::UnsupportedOrder(m)),
    }
}

/// Reports for every supported order, ascending in `m`.
pub fn classify_all(primes: &[u64]) -> Vec<CaseReport> {
    SUPPORTED_ORDERS
        .par_iter()
        .map(|&m| classify(m, primes).expect("supported order"))
        .collect()
}
