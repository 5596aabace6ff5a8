//! Orders divisible by 3 with `m ≥ 48`: the order-3 subgroup has a fixed
//! section in the branch curve, the quotient by it is `F12`, and the
//! residual action of order `n = m/6` is analysed through the counts
//! `(α1, α2)` of intersections of two sections on the invariant fibres.

use crate::cover::{double_cover_k3_check, BranchConfiguration};
use crate::error::{Error, Result};
use crate::lattice::{intersect, self_intersection, DivisorClass, SurfaceModel};
use crate::modular::prime_divisors;
use crate::types::{
    free_quotient, lift_weights, restrict_to_subgroup, symplectic_test, EquivariantRuledModel,
    LocalWeights, MarkedPoint,
};

use super::{AlphaPair, CaseReport, Checks, FilterReason, FilterVerdict, QuotientModel};

/// Local degrees `(e_t, e_x)` of the order-6 cover over a point of `C2`:
/// unramified along the base, fully ramified across the section.
const LOCAL_LIFT_DEGREES: (i64, i64) = (1, 6);

/// Square of the section in the branch locus of the order-3 quotient.
const F12_E: i64 = 12;

fn residual_order(m: i64) -> Result<i64> {
    if m < 6 || m % 6 != 0 || m / 6 > F12_E {
        return Err(Error::InvalidInput(format!(
            "order {m} is not a multiple of 6 in 6..=72"
        )));
    }
    Ok(m / 6)
}

/// All `(α1, α2)` with `α1 ≤ α2` and `α1 + α2 = 12 - m/6`.
pub fn enumerate_alpha_pairs(m: i64) -> Result<Vec<AlphaPair>> {
    let total = F12_E - residual_order(m)?;
    Ok((0..=total / 2).map(|a| AlphaPair::new(a, total - a)).collect())
}

fn check_pair(m: i64, pair: &AlphaPair) -> Result<i64> {
    let n = residual_order(m)?;
    let (a1, a2) = pair.as_tuple();
    if a1 < 0 || a1 > a2 || a1 + a2 != F12_E - n {
        return Err(Error::InvalidInput(format!("{pair} is not a candidate for m = {m}")));
    }
    Ok(n)
}

/// Primes `p | m/6` with `p² | m`.
fn doubled_primes(m: i64, n: i64) -> Vec<i64> {
    prime_divisors(n)
        .into_iter()
        .filter(|p| m % (p * p) == 0)
        .collect()
}

/// Rejects pairs with a zero count when the order-`p` subgroup for some
/// prime `p | m/6` with `p² | m` would fix an invariant fibre point off the
/// branch curve.
pub fn filter_lemma3(m: i64, pair: &AlphaPair) -> Result<FilterVerdict> {
    let n = check_pair(m, pair)?;
    let zero = pair.alpha1 == 0 || pair.alpha2 == 0;
    let ps = doubled_primes(m, n);
    if zero {
        if let Some(p) = ps.first() {
            return Ok(FilterVerdict::reject(
                *pair,
                FilterReason::Lemma3Violation,
                format!(
                    "α = 0 on an invariant fibre; the subgroup of order {p} ({p} | {n}, {p}² | {m}) fixes that fibre off the branch curve"
                ),
            ));
        }
    }
    Ok(FilterVerdict::accept(
        *pair,
        if zero {
            format!("α = 0 but no prime p | {n} has p² | {m}")
        } else {
            "no zero count".into()
        },
    ))
}

/// One prime-order restriction at a point `q_i = C2 ∩ F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftStep {
    pub point: MarkedPoint,
    pub prime: i64,
    pub weights: LocalWeights,
    pub restricted: LocalWeights,
    /// `None` when the prime divides the local covering degree.
    pub lifted: Option<LocalWeights>,
    pub symplectic: bool,
}

impl LiftStep {
    pub fn describe(&self) -> String {
        match &self.lifted {
            Some(l) => format!(
                "{}: restrict {} → {}; lift by degrees {:?} → {}; sum ≡ {}",
                self.point,
                self.weights,
                self.restricted,
                LOCAL_LIFT_DEGREES,
                l,
                l.determinant().value()
            ),
            None => format!(
                "{}: restrict {} → {}; prime {} divides the covering degree",
                self.point, self.weights, self.restricted, self.prime
            ),
        }
    }
}

/// Restrict the weights `(1, m/6 - α_i)` at `q_i` to each prime order,
/// lift through the local order-6 cover, and test for symplecticity.
pub fn symplectic_lift_trace(m: i64, pair: &AlphaPair) -> Result<Vec<LiftStep>> {
    let n = check_pair(m, pair)?;
    let mut out = Vec::new();
    for (point, alpha) in [(MarkedPoint::A1, pair.alpha1), (MarkedPoint::A2, pair.alpha2)] {
        let weights = LocalWeights::new(1, n - alpha, n)?;
        for p in prime_divisors(n) {
            let restricted = restrict_to_subgroup(&weights, p)?;
            let lifted = match lift_weights(&restricted, LOCAL_LIFT_DEGREES.0, LOCAL_LIFT_DEGREES.1) {
                Ok(l) => Some(l),
                Err(Error::LiftNotCoprime { .. }) => None,
                Err(e) => return Err(e),
            };
            let symplectic = lifted.as_ref().is_some_and(symplectic_test);
            out.push(LiftStep {
                point,
                prime: p,
                weights,
                restricted,
                lifted,
                symplectic,
            });
        }
    }
    Ok(out)
}

/// Rejects a pair if a prime-order element lifts to a symplectic one at some
/// `q_i`, or if for a prime `p | m/6` with `p² | m` the order-`p` element acts
/// trivially along an invariant fibre (weight `(1, 0)` at `p_i`), fixing that
/// fibre pointwise although it is not a branch component.
pub fn filter_symplectic_lift(m: i64, pair: &AlphaPair) -> Result<FilterVerdict> {
    let n = check_pair(m, pair)?;
    let trace = symplectic_lift_trace(m, pair)?;
    if let Some(step) = trace.iter().find(|s| s.symplectic) {
        return Ok(FilterVerdict::reject(
            *pair,
            FilterReason::SymplecticLift,
            format!("order-{} element lifts symplectically; {}", step.prime, step.describe()),
        ));
    }
    for p in doubled_primes(m, n) {
        for (point, alpha) in [(MarkedPoint::B1, pair.alpha1), (MarkedPoint::B2, pair.alpha2)] {
            let w = restrict_to_subgroup(&LocalWeights::new(1, alpha, n)?, p)?;
            if w.w_x.is_zero() {
                return Ok(FilterVerdict::reject(
                    *pair,
                    FilterReason::FixedCurveOffBranch,
                    format!(
                        "order-{p} element has weights {w} at {point}, so it fixes the fibre through {point} pointwise; the fibre is not a branch component"
                    ),
                ));
            }
        }
    }
    let details: Vec<String> = trace.iter().map(LiftStep::describe).collect();
    Ok(FilterVerdict::accept(*pair, details.join("; ")))
}

/// Both filters in order; the first rejection wins.
pub fn filter_pair(m: i64, pair: &AlphaPair) -> Result<FilterVerdict> {
    let v = filter_lemma3(m, pair)?;
    if !v.accepted {
        return Ok(v);
    }
    filter_symplectic_lift(m, pair)
}

/// Primes of `m` whose subgroup is shown non-symplectic, with the reason.
fn minimal_subgroup_reasons(m: i64, trace: &[LiftStep]) -> Vec<(i64, bool, String)> {
    prime_divisors(m)
        .into_iter()
        .map(|p| match p {
            2 => (2, true, "the covering involution fixes the branch curve pointwise".to_string()),
            3 => (3, true, "the order-3 element fixes the section C0 pointwise".to_string()),
            _ => {
                let steps: Vec<&LiftStep> = trace.iter().filter(|s| s.prime == p).collect();
                let ok = !steps.is_empty() && steps.iter().all(|s| s.lifted.is_some() && !s.symplectic);
                let detail = steps.iter().map(|s| s.describe()).collect::<Vec<_>>().join("; ");
                (p, ok, detail)
            }
        })
        .collect()
}

/// Classification for `m ∈ {48, 54, 60, 66}`.
pub fn classify_div3(m: i64) -> Result<CaseReport> {
    let n = residual_order(m)?;
    let mut checks = Checks::default();
    let pairs = enumerate_alpha_pairs(m)?;
    checks.push(
        "alpha_pairs",
        true,
        format!(
            "α1 + α2 = {}: {}",
            F12_E - n,
            pairs.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
        ),
    );

    let mut survivors = Vec::new();
    for pair in &pairs {
        let name = format!("filter {pair}");
        if let Some(v) = checks.record(&name, filter_pair(m, pair), |v| {
            (true, format!("{}: {}", v.reason.as_str(), v.detail))
        }) {
            if v.accepted {
                survivors.push(*pair);
            }
        }
    }
    checks.push(
        "survivors",
        true,
        if survivors.is_empty() {
            "none".to_string()
        } else {
            survivors.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
        },
    );

    let mut model = None;
    let mut annotations = Vec::new();
    if let [pair] = survivors.as_slice() {
        model = verify_survivor(m, n, pair, &mut checks);
        annotations.push(
            "reverse construction: order-m/6 cover of F1 branched over two fibres, α_i transforms at q_i, triple cover branched over C2 + C3, double cover branched over C2 + C4".into(),
        );
    } else if survivors.is_empty() {
        annotations.push(format!("no pair survives for m = {m}"));
    }
    Ok(CaseReport::assemble(m, checks, survivors.len() == 1, 1, model, annotations))
}

fn verify_survivor(m: i64, n: i64, pair: &AlphaPair, checks: &mut Checks) -> Option<QuotientModel> {
    use MarkedPoint::*;
    let (a1, a2) = pair.as_tuple();
    let start = checks.record(
        "f12_model",
        EquivariantRuledModel::new(n, -F12_E, n - a1, n - a2),
        |s| (true, format!("types τ_i = m/6 - α_i on C2: {s}")),
    )?;
    let trace = checks.record(
        "transform_chain",
        start.run_chain(&[(B1, a1 as u32), (B2, a2 as u32)]),
        |t| {
            let ok = t.end.e() == n && t.end.all_types_zero() && t.steps as i64 == F12_E - n;
            (
                ok,
                format!(
                    "{a1} at p1, {a2} at p2: {} → {} in {} steps, {} invariant checks",
                    t.start, t.end, t.steps, t.invariant_checks
                ),
            )
        },
    )?;
    let back = trace.end.run_chain(&[(A1, a1 as u32), (A2, a2 as u32)]);
    checks.record("chain_reversible", back, |b| {
        (b.end == start, format!("reverse chain returns to {}", b.end))
    });
    let quotient = checks.record("free_quotient", free_quotient(&trace.end), |q| {
        (
            *q == SurfaceModel::Hirzebruch { e: 1 },
            format!("F{n} / Z{n} = {q}"),
        )
    })?;

    let c0 = DivisorClass::ruled(1, 0);
    let sec = DivisorClass::ruled(1, 1);
    let fib = DivisorClass::ruled(0, 1);
    let squares = [c0, sec]
        .iter()
        .map(|&c| self_intersection(c, quotient))
        .collect::<Result<Vec<_>>>();
    checks.record("quotient_sections", squares, |s| {
        (s == &[-1, 1], format!("C2'² = {}, C3'² = C4'² = {}", s[0], s[1]))
    });

    // After contracting C0 the curves C3', C4', F1', F2' must map to lines
    // meeting pairwise once: D·D' + (D·C0)(D'·C0) on the plane.
    let lines = [sec, sec, fib, fib];
    let down = |a: DivisorClass, b: DivisorClass| -> Result<i64> {
        Ok(intersect(a, b, quotient)? + intersect(a, c0, quotient)? * intersect(b, c0, quotient)?)
    };
    let mut ok = true;
    let mut degrees = Vec::new();
    for (i, &a) in lines.iter().enumerate() {
        let d = intersect(a, sec, quotient).unwrap_or(0);
        degrees.push(d);
        ok &= d == 1;
        for &b in &lines[i + 1..] {
            ok &= down(a, b).unwrap_or(0) == 1;
        }
    }
    checks.push(
        "four_lines",
        ok,
        format!("degrees after contracting C0: {degrees:?}; pairwise intersections 1"),
    );

    let k3 = double_cover_k3_check(SurfaceModel::Hirzebruch { e: 4 }, &[c0, DivisorClass::ruled(3, 12)]);
    checks.record("double_cover_k3", k3, |r| {
        (r.is_k3(), format!("F4 branched over C0 + (3C0+12F): chi = {}", r.chi_value))
    });

    let lift = symplectic_lift_trace(m, pair).unwrap_or_default();
    let reasons = minimal_subgroup_reasons(m, &lift);
    let ok = reasons.iter().all(|r| r.1);
    let detail = reasons
        .iter()
        .map(|(p, _, d)| format!("order {p}: {d}"))
        .collect::<Vec<_>>()
        .join("; ");
    checks.push("minimal_subgroups_non_symplectic", ok, detail);

    let config = BranchConfiguration::new(
        quotient,
        m,
        &[(c0, 6), (sec, 3), (sec, 2), (fib, n), (fib, n)],
    );
    checks
        .record("quotient_model", config, |c| {
            (true, format!("{} with indices {:?}", c.base, c.indices()))
        })
        .map(|c| QuotientModel::from(&c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(m: i64) -> Vec<(i64, i64)> {
        enumerate_alpha_pairs(m).unwrap().iter().map(AlphaPair::as_tuple).collect()
    }

    #[test]
    fn pair_enumeration() {
        assert_eq!(pairs(66), vec![(0, 1)]);
        assert_eq!(pairs(60), vec![(0, 2), (1, 1)]);
        assert_eq!(pairs(54), vec![(0, 3), (1, 2)]);
        assert_eq!(pairs(48), vec![(0, 4), (1, 3), (2, 2)]);
        assert!(enumerate_alpha_pairs(50).is_err());
        assert!(enumerate_alpha_pairs(78).is_err());
    }

    #[test]
    fn pair_enumeration_matches_partitions() {
        for m in (6..=72).step_by(6) {
            let total = 12 - m / 6;
            let brute: Vec<(i64, i64)> = (0..=total)
                .flat_map(|a| (a..=total).map(move |b| (a, b)))
                .filter(|(a, b)| a + b == total)
                .collect();
            assert_eq!(pairs(m), brute);
        }
    }

    #[test]
    fn filter_lemma3_examples() {
        let v = filter_lemma3(60, &AlphaPair::new(0, 2)).unwrap();
        assert_eq!(v.reason, FilterReason::Lemma3Violation);
        assert!(!filter_lemma3(54, &AlphaPair::new(0, 3)).unwrap().accepted);
        assert!(!filter_lemma3(48, &AlphaPair::new(0, 4)).unwrap().accepted);
        assert!(filter_lemma3(66, &AlphaPair::new(0, 1)).unwrap().accepted);
        assert!(filter_lemma3(60, &AlphaPair::new(1, 1)).unwrap().accepted);
        assert!(filter_lemma3(60, &AlphaPair::new(1, 2)).is_err());
    }

    #[test]
    fn m60_symplectic_trace() {
        let pair = AlphaPair::new(1, 1);
        let trace = symplectic_lift_trace(60, &pair).unwrap();
        let five: Vec<&LiftStep> = trace.iter().filter(|s| s.prime == 5).collect();
        assert_eq!(five.len(), 2);
        for s in five {
            assert_eq!(s.weights, LocalWeights::new(1, 9, 10).unwrap());
            assert_eq!(s.restricted, LocalWeights::new(1, 4, 5).unwrap());
            assert_eq!(s.lifted, Some(s.restricted));
            assert!(s.symplectic);
        }
        let two = trace.iter().find(|s| s.prime == 2).unwrap();
        assert!(two.lifted.is_none() && !two.symplectic);
        let v = filter_symplectic_lift(60, &pair).unwrap();
        assert_eq!(v.reason, FilterReason::SymplecticLift);
    }

    #[test]
    fn symplectic_filter_examples() {
        let v = filter_symplectic_lift(48, &AlphaPair::new(2, 2)).unwrap();
        assert_eq!(v.reason, FilterReason::FixedCurveOffBranch);
        assert!(filter_symplectic_lift(54, &AlphaPair::new(1, 2)).unwrap().accepted);
        assert!(filter_symplectic_lift(48, &AlphaPair::new(1, 3)).unwrap().accepted);
        assert!(filter_symplectic_lift(66, &AlphaPair::new(0, 1)).unwrap().accepted);
    }

    #[test]
    fn survivor_calibration() {
        let expect = [(66, vec![(0, 1)]), (60, vec![]), (54, vec![(1, 2)]), (48, vec![(1, 3)])];
        for (m, want) in expect {
            let got: Vec<(i64, i64)> = enumerate_alpha_pairs(m)
                .unwrap()
                .into_iter()
                .filter(|p| filter_pair(m, p).unwrap().accepted)
                .map(|p| p.as_tuple())
                .collect();
            assert_eq!(got, want, "m={m}");
        }
    }

    #[test]
    fn rejections_carry_reasons() {
        for m in [48, 54, 60, 66] {
            for p in enumerate_alpha_pairs(m).unwrap() {
                let v = filter_pair(m, &p).unwrap();
                assert_eq!(v.accepted, v.reason == FilterReason::Survives);
            }
        }
    }

    #[test]
    fn div3_reports() {
        let r = classify_div3(60).unwrap();
        assert!(!r.exists && r.all_pass() && r.num_actions == 0 && r.quotient_model.is_none());
        for m in [48, 54, 66] {
            let r = classify_div3(m).unwrap();
            assert!(r.all_pass(), "{:?}", r.failed_checks().collect::<Vec<_>>());
            assert!(r.exists);
            assert_eq!(r.num_actions, 1);
            let q = r.quotient_model.unwrap();
            assert_eq!(q.base, "F1");
            let idx: Vec<i64> = q.branch.iter().map(|b| b.index).collect();
            assert_eq!(idx, vec![6, 3, 2, m / 6, m / 6]);
        }
    }
}
