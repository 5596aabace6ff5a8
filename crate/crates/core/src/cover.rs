//! Branched-cover arithmetic: double covers with trivial canonical class,
//! Q-divisor coefficients, Riemann–Hurwitz counts and the Hodge-index bound
//! for families of rulings.

use std::collections::BTreeSet;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{
    canonical_class, genus_adjunction, intersect, sum_classes, DivisorClass, SurfaceModel,
};

/// Horizontal degree of `B ≡ -2K` over the base of a ruling.
pub const BRANCH_FIBRE_DEGREE: i64 = 4;

/// A branch curve with ramification index `r` and coefficient `a/t` in the
/// Q-divisor `(1/t)·Σ a_i Γ_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchComponent {
    pub curve_class: DivisorClass,
    pub index: i64,
    pub numerator: i64,
    pub denominator: i64,
}

impl BranchComponent {
    /// Component of a cover of order `t` with ramification index `index`;
    /// the coefficient is `1 - 1/index`.
    pub fn new(curve_class: DivisorClass, index: i64, t: i64) -> Result<Self> {
        let numerator = qdivisor_coefficients(&[index], t)?[0];
        Ok(BranchComponent {
            curve_class,
            index,
            numerator,
            denominator: t,
        })
    }

    pub fn coefficient(&self) -> Ratio<i64> {
        Ratio::new(self.numerator, self.denominator)
    }
}

/// A base surface with its weighted branch curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchConfiguration {
    pub base: SurfaceModel,
    pub components: Vec<BranchComponent>,
    pub total_order: i64,
}

impl BranchConfiguration {
    pub fn new(base: SurfaceModel, total_order: i64, parts: &[(DivisorClass, i64)]) -> Result<Self> {
        let components = parts
            .iter()
            .map(|&(class, index)| {
                intersect(class, class, base)?;
                BranchComponent::new(class, index, total_order)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(BranchConfiguration {
            base,
            components,
            total_order,
        })
    }

    pub fn indices(&self) -> Vec<i64> {
        self.components.iter().map(|c| c.index).collect()
    }
}

/// Outcome of [`double_cover_k3_check`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCoverReport {
    pub branch_class_ok: bool,
    pub chi_value: i64,
    pub canonical_trivial: bool,
    pub disjointness_ok: bool,
    pub genera: Vec<i64>,
}

impl DoubleCoverReport {
    pub fn is_k3(&self) -> bool {
        self.branch_class_ok && self.canonical_trivial && self.disjointness_ok && self.chi_value == 24
    }
}

/// Checks that the double cover of `x` branched over the disjoint union of
/// `parts` has the numerical invariants of a K3 surface.
///
/// `χ(cover) = 2·χ(X) - χ(B)` with `χ(B) = Σ (2 - 2g_i)`; the canonical class
/// pulls back from `K_X + B/2`.
pub fn double_cover_k3_check(x: SurfaceModel, parts: &[DivisorClass]) -> Result<DoubleCoverReport> {
    let total = sum_classes(parts)?;
    let k = canonical_class(x);
    let branch_class_ok = total == x.anti_bicanonical();
    let canonical_trivial = k.scale(2).checked_add(total)?.is_zero();

    let mut disjointness_ok = true;
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            if intersect(*a, *b, x)? != 0 {
                disjointness_ok = false;
            }
        }
    }

    let genera = parts
        .iter()
        .map(|&c| genus_adjunction(c, x))
        .collect::<Result<Vec<_>>>()?;
    let chi_branch: i64 = genera.iter().map(|g| 2 - 2 * g).sum();
    Ok(DoubleCoverReport {
        branch_class_ok,
        chi_value: 2 * x.chi_top() - chi_branch,
        canonical_trivial,
        disjointness_ok,
        genera,
    })
}

/// Numerators `a_i = t·(1 - 1/r_i)` of the branch Q-divisor.
pub fn qdivisor_coefficients(indices: &[i64], t: i64) -> Result<Vec<i64>> {
    if t < 1 {
        return Err(Error::InvalidInput(format!("cover order must be positive, got {t}")));
    }
    indices
        .iter()
        .map(|&r| {
            if r < 2 || t % r != 0 {
                return Err(Error::NotADivisor { d: r, n: t });
            }
            let a = t - t / r;
            debug_assert!(0 < a && a < t);
            Ok(a)
        })
        .collect()
}

/// Total ramification of a degree-`degree` map from a genus-`genus` curve
/// onto `P¹`: `2g - 2 + 2·degree`.
pub fn total_ramification(genus: i64, degree: i64) -> i64 {
    2 * genus - 2 + 2 * degree
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HurwitzDelta {
    pub delta: i64,
    pub within_bound: bool,
}

/// Total ramification of `r|_B : B → P¹` for `B ≡ -2K` on a ruled surface
/// with the given `K²`: degree 4 and `g(B) = K² + 1`, so `δ = 2K² + 8`.
/// The bound `δ ≤ 24` is equivalent to `K² ≤ 8`.
pub fn hurwitz_delta(k_sq: i64) -> HurwitzDelta {
    let delta = total_ramification(k_sq + 1, BRANCH_FIBRE_DEGREE);
    HurwitzDelta {
        delta,
        within_bound: delta <= 24,
    }
}

/// Possible totals `β1 + β2` of ramification of `r|_B` on the two invariant
/// fibres: every other ramification point lies in a free orbit of size
/// `group_order`, and a fibre carries at most `degree - 1` ramification.
pub fn invariant_fibre_ramification(delta: i64, group_order: i64) -> Vec<i64> {
    let cap = 2 * (BRANCH_FIBRE_DEGREE - 1);
    (0..=delta / group_order.max(1))
        .map(|k| delta - k * group_order)
        .filter(|&s| (0..=cap).contains(&s))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Solutions of the Riemann–Hurwitz problem for a cyclic cover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HurwitzOrders {
    Finite(BTreeSet<i64>),
    /// Every order `q ≥ 2` works (e.g. `P¹ → P¹` with two branch points).
    AllAtLeastTwo,
}

impl HurwitzOrders {
    pub fn contains(&self, q: i64) -> bool {
        match self {
            HurwitzOrders::Finite(s) => s.contains(&q),
            HurwitzOrders::AllAtLeastTwo => q >= 2,
        }
    }
}

/// Orders `q ≥ 2` of cyclic covers `B → B/Q` of a genus-`g_b` curve that are
/// totally ramified at exactly `total_points` points:
/// `2g_B - 2 = q(2g_C - 2) + total_points·(q - 1)` for some `g_C ≥ 0`.
pub fn hurwitz_branch_orders(g_b: i64, total_points: i64) -> Result<HurwitzOrders> {
    if g_b < 0 || total_points < 0 {
        return Err(Error::InvalidInput(format!(
            "genus and point count must be non-negative, got ({g_b}, {total_points})"
        )));
    }
    // q·(2g_C - 2 + k) = 2g_B - 2 + k
    let rhs = 2 * g_b - 2 + total_points;
    let mut out = BTreeSet::new();
    if rhs == 0 {
        // g_C = 0, k = 2 or g_C = 1, k = 0 solve for every q
        if total_points == 2 || total_points == 0 {
            return Ok(HurwitzOrders::AllAtLeastTwo);
        }
        return Ok(HurwitzOrders::Finite(out));
    }
    let bound = rhs.abs();
    for q in 2..=bound {
        if rhs % q != 0 {
            continue;
        }
        let twice_gc = rhs / q + 2 - total_points;
        if twice_gc >= 0 && twice_gc % 2 == 0 {
            out.insert(q);
        }
    }
    Ok(HurwitzOrders::Finite(out))
}

/// Hodge-index bound `K² ≤ 4n / (a(n-1))` for `n` rulings pairwise meeting
/// in `a` points.
pub fn lemma7_bound(n: i64, a: i64) -> Result<Ratio<i64>> {
    if n < 2 || a < 1 {
        return Err(Error::InvalidInput(format!(
            "need n >= 2 and a >= 1, got ({n}, {a})"
        )));
    }
    Ok(Ratio::new(4 * n, a * (n - 1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(e: i64) -> SurfaceModel {
        SurfaceModel::hirzebruch(e).unwrap()
    }

    #[test]
    fn plane_sextic_cover_is_k3() {
        let r = double_cover_k3_check(SurfaceModel::ProjectivePlane, &[DivisorClass::line_multiple(6)]).unwrap();
        assert_eq!(r.chi_value, 24);
        assert!(r.canonical_trivial && r.branch_class_ok && r.is_k3());
        assert_eq!(r.genera, vec![10]);
    }

    #[test]
    fn split_branch_on_f4_is_k3() {
        let parts = [DivisorClass::ruled(1, 0), DivisorClass::ruled(3, 12)];
        let r = double_cover_k3_check(f(4), &parts).unwrap();
        assert!(r.disjointness_ok);
        assert_eq!(r.chi_value, 24);
        assert!(r.is_k3());
    }

    #[test]
    fn wrong_branch_class() {
        let r = double_cover_k3_check(SurfaceModel::ProjectivePlane, &[DivisorClass::line_multiple(5)]).unwrap();
        assert!(!r.branch_class_ok);
        assert!(!r.canonical_trivial);
        assert!(double_cover_k3_check(f(1), &[]).is_err());
    }

    #[test]
    fn intersecting_parts_are_flagged() {
        // C0 and 3C0+11F meet once on F4
        let parts = [DivisorClass::ruled(1, 0), DivisorClass::ruled(3, 11)];
        let r = double_cover_k3_check(f(4), &parts).unwrap();
        assert!(!r.disjointness_ok);
        assert!(!r.is_k3());
    }

    #[test]
    fn anti_bicanonical_covers_are_k3() {
        let p = SurfaceModel::ProjectivePlane;
        assert!(double_cover_k3_check(p, &[p.anti_bicanonical()]).unwrap().is_k3());
        for e in 0..=4 {
            let x = f(e);
            assert!(double_cover_k3_check(x, &[x.anti_bicanonical()]).unwrap().is_k3());
        }
        // on F3 and F4 the section splits off
        for e in 3..=4 {
            let x = f(e);
            let c0 = DivisorClass::ruled(1, 0);
            let rest = x.anti_bicanonical().checked_add(c0.scale(-1)).unwrap();
            let r = double_cover_k3_check(x, &[c0, rest]).unwrap();
            assert_eq!(r.disjointness_ok, e == 4);
            assert_eq!(r.is_k3(), e == 4);
        }
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(qdivisor_coefficients(&[2, 5, 25, 50], 50).unwrap(), vec![25, 40, 48, 49]);
        assert_eq!(qdivisor_coefficients(&[2], 2).unwrap(), vec![1]);
        assert_eq!(qdivisor_coefficients(&[2, 2, 44, 44], 44).unwrap(), vec![22, 22, 43, 43]);
        assert!(qdivisor_coefficients(&[3], 50).is_err());
        for t in 2..=66 {
            let divs: Vec<i64> = (2..=t).filter(|r| t % r == 0).collect();
            for a in qdivisor_coefficients(&divs, t).unwrap() {
                assert!(0 < a && a < t);
            }
        }
    }

    #[test]
    fn delta_examples() {
        let d = hurwitz_delta(8);
        assert_eq!(d.delta, 24);
        assert!(d.within_bound);
        assert_eq!(d.delta % 22, 2);
        assert_eq!(d.delta % 19, 5);
        assert_eq!(hurwitz_delta(0).delta, 8);
        assert!(!hurwitz_delta(9).within_bound);
        assert_eq!(invariant_fibre_ramification(24, 22), vec![2]);
        assert_eq!(invariant_fibre_ramification(24, 19), vec![5]);
    }

    #[test]
    fn branch_order_examples() {
        let set = |v: &[i64]| HurwitzOrders::Finite(v.iter().copied().collect());
        assert_eq!(hurwitz_branch_orders(10, 3).unwrap(), set(&[3, 7, 21]));
        assert_eq!(hurwitz_branch_orders(0, 2).unwrap(), HurwitzOrders::AllAtLeastTwo);
        let two_three = hurwitz_branch_orders(2, 3).unwrap();
        assert_eq!(two_three, set(&[5]));
        assert!((2..=30).filter(|&q| two_three.contains(q)).eq([5]));
    }

    #[test]
    fn branch_orders_match_brute_force() {
        for g_b in 0..=12 {
            for k in 0..=8 {
                let got = hurwitz_branch_orders(g_b, k).unwrap();
                for q in 2..=60 {
                    let brute = (0..=40).any(|g_c| 2 * g_b - 2 == q * (2 * g_c - 2) + k * (q - 1));
                    assert_eq!(got.contains(q), brute, "g_b={g_b} k={k} q={q}");
                }
            }
        }
    }

    #[test]
    fn branch_orders_closed_under_compatible_divisors() {
        for g_b in 0..=25 {
            for k in 3..=8 {
                let HurwitzOrders::Finite(set) = hurwitz_branch_orders(g_b, k).unwrap() else {
                    continue;
                };
                for &q in &set {
                    // a rational quotient with q·(k-2) = 2g_B - 2 + k
                    if q * (k - 2) != 2 * g_b - 2 + k || q > 50 {
                        continue;
                    }
                    for d in (2..q).filter(|d| q % d == 0) {
                        if ((q / d - 1) * (k - 2)) % 2 == 0 {
                            assert!(set.contains(&d), "g_b={g_b} k={k} q={q} d={d}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn hodge_bound_examples() {
        assert_eq!(lemma7_bound(3, 1).unwrap(), Ratio::from_integer(6));
        assert_eq!(lemma7_bound(2, 1).unwrap(), Ratio::from_integer(8));
        assert_eq!(lemma7_bound(2, 2).unwrap(), Ratio::from_integer(4));
        assert_eq!(lemma7_bound(4, 1).unwrap(), Ratio::new(16, 3));
        assert!(lemma7_bound(1, 1).is_err());
    }

    #[test]
    fn components_carry_positive_coefficients() {
        let c = BranchComponent::new(DivisorClass::line_multiple(1), 25, 50).unwrap();
        assert_eq!(c.coefficient(), Ratio::new(24, 25));
        let cfg = BranchConfiguration::new(
            SurfaceModel::ProjectivePlane,
            50,
            &[(DivisorClass::line_multiple(1), 2), (DivisorClass::line_multiple(1), 5)],
        )
        .unwrap();
        assert_eq!(cfg.indices(), vec![2, 5]);
        assert!(BranchConfiguration::new(f(1), 50, &[(DivisorClass::line_multiple(1), 2)]).is_err());
    }
}
