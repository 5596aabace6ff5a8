//! Standalone arithmetic tables reported next to the case verdicts.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::cover::{hurwitz_branch_orders, hurwitz_delta, invariant_fibre_ramification, lemma7_bound, HurwitzOrders};
use crate::modular::{admissible_orders, inverse_mod, Residue};
use crate::types::{lemma6_check, same_fibre_opposite};

use super::{Check, Checks};

/// Numerical invariants of the minimal resolution `Y` of a quotient with
/// `e1` fixed curves of one kind and `e2` of the other.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lemma8Report {
    pub k_sq: Ratio<i64>,
    pub c2: Ratio<i64>,
    /// Both values are integers.
    pub integral: bool,
    /// `K² + c2 = 12`, equivalently `e1 - e2 = 3`.
    pub noether_ok: bool,
    pub rho_lower_bound: i64,
}

/// `K² = -(e1 + 8e2)/3`, `c2 = 8 + (5e1 + 4e2)/3`, `ρ ≥ 8 + 2e2`.
pub fn lemma8_identity_check(e1: i64, e2: i64) -> Lemma8Report {
    let k_sq = Ratio::new(-(e1 + 8 * e2), 3);
    let c2 = Ratio::from_integer(8) + Ratio::new(5 * e1 + 4 * e2, 3);
    Lemma8Report {
        k_sq,
        c2,
        integral: k_sq.is_integer() && c2.is_integer(),
        noether_ok: k_sq + c2 == Ratio::from_integer(12),
        rho_lower_bound: 8 + 2 * e2,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn ratio_str(r: Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn tangency_suite() -> SuiteReport {
    let mut c = Checks::default();
    for (k, n, want) in [(3, 22, 15), (3, 19, 13), (4, 19, 5), (2, 19, 10)] {
        c.record(&format!("inverse {k} mod {n}"), inverse_mod(k, n), |r| {
            (r.value() == want, format!("{}", r.value()))
        });
    }
    for (t, n, want) in [(15, 22, 7), (10, 19, 9), (13, 19, 6)] {
        let r = Residue::new(t, n).map(same_fibre_opposite);
        c.record(&format!("opposite {t} mod {n}"), r, |r| (r.value() == want, format!("{}", r.value())));
    }
    SuiteReport {
        name: "tangency_weights".into(),
        checks: c.0,
    }
}

fn congruence_suite() -> SuiteReport {
    let mut c = Checks::default();
    for (t1, t2, e, n) in [(7, 11, 4, 22), (13, 5, 1, 19), (6, 9, 4, 19), (0, 0, 0, 9)] {
        let r = Residue::new(t1, n).and_then(|a| lemma6_check(a, Residue::new(t2, n)?, e, n));
        c.record(&format!("{t1} + {t2} + {e} mod {n}"), r, |&ok| (ok, format!("{}", ok)));
    }
    SuiteReport {
        name: "type_congruence".into(),
        checks: c.0,
    }
}

fn hurwitz_suite() -> SuiteReport {
    let mut c = Checks::default();
    c.record("branch orders g=10, 3 points", hurwitz_branch_orders(10, 3), |h| {
        let want: std::collections::BTreeSet<i64> = [3, 7, 21].into();
        (h == &HurwitzOrders::Finite(want), format!("{h:?}"))
    });
    let d = hurwitz_delta(8);
    c.push("delta K²=8", d.delta == 24 && d.within_bound, format!("{}", d.delta));
    for (n, want) in [(22, 2), (19, 5)] {
        let r = invariant_fibre_ramification(d.delta, n);
        c.push(&format!("fibre ramification mod {n}"), r == [want], format!("{r:?}"));
    }
    c.record("hodge bound n=3 a=1", lemma7_bound(3, 1), |b| {
        (*b == Ratio::from_integer(6), ratio_str(*b))
    });
    c.record("admissible orders phi ≤ 21", admissible_orders(21), |v| {
        let max = v.iter().map(|o| o.m).max().unwrap_or(0);
        (max == 66, format!("{} orders, max {max}", v.len()))
    });
    SuiteReport {
        name: "hurwitz".into(),
        checks: c.0,
    }
}

fn resolution_suite() -> SuiteReport {
    let mut c = Checks::default();
    for (e1, e2, noether, rho) in [(3, 0, true, 8), (4, 1, true, 10), (2, 0, false, 8)] {
        let r = lemma8_identity_check(e1, e2);
        c.push(
            &format!("e1={e1} e2={e2}"),
            r.noether_ok == noether && r.rho_lower_bound == rho,
            format!(
                "K² = {}, c2 = {}, K² + c2 = 12: {}, ρ ≥ {}",
                ratio_str(r.k_sq),
                ratio_str(r.c2),
                r.noether_ok,
                r.rho_lower_bound
            ),
        );
    }
    SuiteReport {
        name: "resolution_identities".into(),
        checks: c.0,
    }
}

/// Fixed tables of arithmetic values, each check against its known value.
pub fn arithmetic_suites() -> Vec<SuiteReport> {
    vec![tangency_suite(), congruence_suite(), hurwitz_suite(), resolution_suite()]
}
