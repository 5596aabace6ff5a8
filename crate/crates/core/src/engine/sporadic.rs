//! Orders 50, 44 and 38: the plane case and the two ruled cases.

use crate::cover::{
    double_cover_k3_check, hurwitz_delta, invariant_fibre_ramification, BranchConfiguration,
    BRANCH_FIBRE_DEGREE,
};
use crate::error::{Error, Result};
use crate::lattice::{
    fibre_degree_of_branch, genus_adjunction, intersect, max_branch_invariant, self_intersection,
    transform_square_change, DivisorClass, SurfaceModel,
};
use crate::modular::{prime_divisors, Residue};
use crate::plane::{
    curve_invariance, first_singular_point, format_point, invariant_monomials, m50_action,
    solve_alpha_m50, torus_normalize, PlaneCurve, Rational, M50_MONOMIALS,
};
use crate::types::{
    free_quotient, lemma6_check, restrict_to_subgroup, same_fibre_opposite, symplectic_test,
    weight_from_invariant_branch, EquivariantRuledModel, LocalWeights, MarkedPoint,
};

use super::{lemma4_allowed_orders, CaseReport, Checks, QuotientModel, RamificationProfile};

/// Largest order of a symplectic automorphism of finite order on a K3 surface.
pub const MAX_SYMPLECTIC_ORDER: i64 = 8;

/// Types `τ1`, `τ2` of the fixed points of `C0` on the invariant fibres and
/// the Hirzebruch invariant `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TypeSolution {
    pub tau1: i64,
    pub tau2: i64,
    pub e: i64,
}

/// All `(τ1, τ2, e)` with `τ_i` drawn from the candidates, `e` in `e_range`
/// and `τ1 + τ2 + e ≡ 0 (mod n)`.
pub fn solve_fibre_types(
    n: i64,
    tau1: &[i64],
    tau2: &[i64],
    e_range: std::ops::RangeInclusive<i64>,
) -> Result<Vec<TypeSolution>> {
    let mut out = Vec::new();
    for &t1 in tau1 {
        for &t2 in tau2 {
            for e in e_range.clone() {
                if lemma6_check(Residue::new(t1, n)?, Residue::new(t2, n)?, e, n)? {
                    out.push(TypeSolution {
                        tau1: t1.rem_euclid(n),
                        tau2: t2.rem_euclid(n),
                        e,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Weights of the order-`2d` lifts of an order-`d` element to the double
/// cover `y² = x` branched along `{x = 0}`.
pub fn double_cover_lifts(w: &LocalWeights) -> Result<[LocalWeights; 2]> {
    let d = w.order();
    let t = w.w_t.value() * 2;
    let x = w.w_x.value();
    Ok([
        LocalWeights::new(t, x, 2 * d)?,
        LocalWeights::new(t, x + d, 2 * d)?,
    ])
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn m50_sextic() -> Result<PlaneCurve> {
    PlaneCurve::new(M50_MONOMIALS.iter().map(|&e| (e, Rational::from_integer(1))))
}

/// Contact orders of the curve with the coordinate line `x_k = 0` at the two
/// vertices on it, and the number of other intersection points (counted with
/// multiplicity).
fn line_contacts(curve: &PlaneCurve, k: usize) -> ([u32; 2], u32, usize) {
    let others: Vec<usize> = (0..3).filter(|&j| j != k).collect();
    let restricted: Vec<[u32; 3]> = curve.support().into_iter().filter(|e| e[k] == 0).collect();
    // The vertex where x_i ≠ 0 has contact = lowest power of the other one.
    let low = |j: usize| restricted.iter().map(|e| e[j]).min().unwrap_or(0);
    let at_vertices = [low(others[1]), low(others[0])];
    let other = curve.degree() - at_vertices[0] - at_vertices[1];
    (at_vertices, other, restricted.len())
}

/// The order-50 case: an action on the plane of order 25.
pub fn verify_m50(primes: &[u64]) -> CaseReport {
    let m = 50;
    let mut checks = Checks::default();
    checks.push(
        "allowed_order",
        lemma4_allowed_orders().contains(&m),
        format!("plane-quotient orders: {}", join(&lemma4_allowed_orders().into_iter().collect::<Vec<_>>())),
    );
    let alpha = checks.record("alpha", solve_alpha_m50(), |a| {
        (*a == 1, format!("contact 6 at (0:0:1): 5α + 1 ≡ 6 (mod 25) gives α = {a}"))
    });
    let action = m50_action(alpha.unwrap_or(1));
    let mons = invariant_monomials(6, &action, Residue::new(6, 25).expect("modulus 25"));
    checks.record("invariant_monomials", mons, |v| {
        (
            v.as_slice() == M50_MONOMIALS,
            format!("character 6 under {action}: {v:?}"),
        )
    });

    let Some(curve) = checks.record("sextic", m50_sextic(), |c| (true, c.to_string())) else {
        return CaseReport::assemble(m, checks, true, 1, None, Vec::new());
    };

    let ([at_p1, at_p2], rest, _) = line_contacts(&curve, 2);
    let orbit = action.order_on_line(0, 1);
    checks.push(
        "line_x2",
        at_p1 == 0 && at_p2 == 1 && rest as i64 == orbit,
        format!(
            "x2 = 0 meets the curve at (1:0:0) with contact {at_p1}, at (0:1:0) with contact {at_p2}, and in {rest} further points forming one orbit of size {orbit}"
        ),
    );
    let (_, rest0, len0) = line_contacts(&curve, 0);
    let (v1, rest1, len1) = line_contacts(&curve, 1);
    checks.push(
        "lines_x0_x1",
        rest0 == 0 && rest1 == 0 && len0 == 1 && len1 == 1 && v1 == [0, 6],
        format!("x0 = 0 and x1 = 0 meet the curve only at vertices; contact at (0:0:1) along x1 = 0 is {}", v1[1]),
    );

    let generic = [2, 3, 5].map(Rational::from_integer);
    let norm = torus_normalize(M50_MONOMIALS, generic);
    checks.record("torus_normalization", norm, |s| {
        let id = torus_normalize(M50_MONOMIALS, [Rational::from_integer(1); 3])
            .map(|t| t.is_identity())
            .unwrap_or(false);
        let ok = s.verify() && id && s.normalized_curve().as_ref() == Ok(&curve);
        (
            ok,
            format!("coefficients (2,3,5) scale to (1,1,1) with λ exponents {:?}", s.lambda),
        )
    });

    if primes.is_empty() {
        checks.push("smooth", false, "no primes configured");
    }
    for &p in primes {
        let r = first_singular_point(&curve, p);
        checks.record(&format!("smooth_p{p}"), r, |pt| match pt {
            None => (true, format!("no singular point among the {} points of P²(F_{p})", p * p + p + 1)),
            Some(x) => (false, format!("singular at {}", format_point(x))),
        });
    }
    if let Some(&p) = primes.first() {
        for (drop, dropped) in M50_MONOMIALS.iter().enumerate() {
            let kept: Vec<[u32; 3]> = (0..3).filter(|&i| i != drop).map(|i| M50_MONOMIALS[i]).collect();
            let c = PlaneCurve::new(kept.iter().map(|&e| (e, Rational::from_integer(1))));
            let r = c.and_then(|c| first_singular_point(&c, p));
            checks.record(&format!("degeneration_{drop}"), r, |pt| match pt {
                Some(x) => (true, format!("without {dropped:?}: singular at {}", format_point(x))),
                None => (false, format!("without {dropped:?}: no singular point over F_{p}")),
            });
        }
    }

    checks.record("invariance", curve_invariance(&curve, &action), |&b| {
        (b, format!("all monomials share one character under {action}"))
    });
    checks.record(
        "double_cover_k3",
        double_cover_k3_check(SurfaceModel::ProjectivePlane, &[DivisorClass::line_multiple(6)]),
        |r| (r.is_k3(), format!("P2 branched over a sextic: chi = {}", r.chi_value)),
    );

    // γ^5 multiplies x0 and x1 by the same fifth root of unity, so it fixes
    // the line x2 = 0 pointwise and its lift fixes a curve.
    let w = action.weights();
    let homology = (w[1] - w[0]).scale(5).is_zero() && !(w[2] - w[0]).scale(5).is_zero();
    checks.push(
        "minimal_subgroups_non_symplectic",
        homology && prime_divisors(m) == vec![2, 5],
        "order 2: covering involution fixes the branch curve; order 5: fixes the line x2 = 0 pointwise",
    );

    let line = DivisorClass::line_multiple(1);
    let config = BranchConfiguration::new(
        SurfaceModel::ProjectivePlane,
        m,
        &[(line, 2), (line, 5), (line, 25), (line, 50)],
    );
    let model = checks
        .record("quotient_model", config, |c| {
            (c.indices() == [2, 5, 25, 50], format!("four general lines with indices {:?}", c.indices()))
        })
        .map(|c| QuotientModel::from(&c));
    CaseReport::assemble(m, checks, true, 1, model, Vec::new())
}

/// Classes of the order-44 quotient configuration on `F0`: a `(3,1)` curve,
/// a section and two fibres.
fn m44_configuration() -> [DivisorClass; 4] {
    [
        DivisorClass::ruled(3, 1),
        DivisorClass::ruled(1, 0),
        DivisorClass::ruled(0, 1),
        DivisorClass::ruled(0, 1),
    ]
}

fn check_branch_decomposition(name: &str, checks: &mut Checks) {
    let f4 = SurfaceModel::Hirzebruch { e: 4 };
    let c0 = DivisorClass::ruled(1, 0);
    let b0 = DivisorClass::ruled(3, 12);
    let disjoint = intersect(b0, c0, f4);
    let k3 = double_cover_k3_check(f4, &[c0, b0]);
    match (disjoint, k3) {
        (Ok(d), Ok(r)) => checks.push(
            name,
            d == 0 && r.is_k3() && c0.checked_add(b0) == Ok(f4.anti_bicanonical()),
            format!("on F4: -2K = C0 + (3C0+12F), (3C0+12F)·C0 = {d}, chi = {}", r.chi_value),
        ),
        (Err(e), _) | (_, Err(e)) => checks.push(name, false, format!("error: {e}")),
    };
}

fn check_chain(
    name: &str,
    checks: &mut Checks,
    start: Result<EquivariantRuledModel>,
    steps: &[(MarkedPoint, u32)],
) -> Option<EquivariantRuledModel> {
    let trace = start.and_then(|s| s.run_chain(steps));
    checks
        .record(name, trace, |t| {
            let route = steps
                .iter()
                .map(|(p, k)| format!("{k} at {p}"))
                .collect::<Vec<_>>()
                .join(", ");
            (
                t.end.e() == 0 && t.end.all_types_zero(),
                format!(
                    "{route}: {} → {} ({} invariant checks)",
                    t.start, t.end, t.invariant_checks
                ),
            )
        })
        .map(|t| t.end)
}

fn check_graph_curve(name: &str, checks: &mut Checks, class: DivisorClass, contacts: &[&[i64]]) {
    let f0 = SurfaceModel::Hirzebruch { e: 0 };
    let g = genus_adjunction(class, f0);
    let deg = intersect(class, DivisorClass::ruled(0, 1), f0);
    match (g, deg) {
        (Ok(g), Ok(d)) => {
            let sums_ok = contacts.iter().all(|c| c.iter().sum::<i64>() == d);
            checks.push(
                name,
                g == 0 && sums_ok,
                format!("{class} on F0: genus {g}, fibre degree {d}, fibre contacts {contacts:?}"),
            );
        }
        (Err(e), _) | (_, Err(e)) => {
            checks.push(name, false, format!("error: {e}"));
        }
    }
}

/// The order-44 case on a Hirzebruch surface with order-22 residual action.
pub fn verify_m44() -> CaseReport {
    use MarkedPoint::*;
    let (m, n) = (44, 22);
    let mut checks = Checks::default();

    let delta = hurwitz_delta(8);
    let beta = invariant_fibre_ramification(delta.delta, n);
    checks.push(
        "invariant_fibre_ramification",
        beta == [2],
        format!("δ = {}, ramification on F1 + F2: {beta:?}", delta.delta),
    );
    let degrees: Result<Vec<i64>> = (0..=max_branch_invariant())
        .map(|e| fibre_degree_of_branch(SurfaceModel::Hirzebruch { e }))
        .collect();
    checks.record("distributed_ramification_excluded", degrees, |d| {
        (
            d.iter().all(|&k| k == BRANCH_FIBRE_DEGREE && k % 11 != 0),
            format!("fibre degree of B is {} for e ≤ 4, not a multiple of 11", BRANCH_FIBRE_DEGREE),
        )
    });

    let one = Residue::new(1, n).expect("n > 0");
    let tp1 = checks.record("tangency_weight", weight_from_invariant_branch(1, 3, one), |w| {
        (w.value() == 15, format!("contact 3 with F1: τ_p1 = 3⁻¹ = {} (mod 22)", w.value()))
    });
    if let Some(tp1) = tp1 {
        let tau1 = [tp1.value(), same_fibre_opposite(tp1).value()];
        let sols = solve_fibre_types(n, &tau1, &[0, 11], 1..=max_branch_invariant());
        checks.record("type_solve", sols.map(|s| s.into_iter().filter(|t| t.tau1 % 11 != 0).collect::<Vec<_>>()), |s| {
            (
                s == &[TypeSolution { tau1: 7, tau2: 11, e: 4 }],
                format!("τ1 ∈ {tau1:?}, 11 | τ2, 0 < e ≤ 4: {s:?}"),
            )
        });
    }
    check_branch_decomposition("branch_decomposition", &mut checks);

    let end = check_chain(
        "transform_chain",
        &mut checks,
        EquivariantRuledModel::new(n, -4, 7, 11),
        &[(A1, 7), (B2, 11)],
    );
    if let Some(end) = end {
        checks.record("free_quotient", free_quotient(&end), |q| {
            (*q == SurfaceModel::Hirzebruch { e: 0 }, format!("quotient {q}"))
        });
    }
    check_graph_curve("quotient_curve", &mut checks, m44_configuration()[0], &[&[3], &[2, 1]]);

    // The unique order-4 subgroup maps onto the order-2 subgroup of the
    // residual action; check its lifts at a1 = C0 ∩ F1, with C0 ⊂ B.
    let lifts = LocalWeights::new(1, 7, n)
        .and_then(|w| restrict_to_subgroup(&w, 2))
        .and_then(|w| double_cover_lifts(&w));
    checks.record("order_4_local_check", lifts, |ls| {
        (
            ls.iter().all(|l| !symplectic_test(l)),
            format!("lifts at a1: {}, {}", ls[0], ls[1]),
        )
    });
    checks.push(
        "order_11_not_symplectic",
        11 > MAX_SYMPLECTIC_ORDER,
        format!("symplectic automorphisms have order ≤ {MAX_SYMPLECTIC_ORDER}"),
    );

    let cfg = m44_configuration();
    let config = BranchConfiguration::new(
        SurfaceModel::Hirzebruch { e: 0 },
        m,
        &[(cfg[0], 2), (cfg[1], 2), (cfg[2], 44), (cfg[3], 44)],
    );
    let model = checks
        .record("quotient_model", config, |c| (c.indices() == [2, 2, 44, 44], format!("indices {:?}", c.indices())))
        .map(|c| QuotientModel::from(&c));
    CaseReport::assemble(m, checks, true, 1, model, Vec::new())
}

/// The order-38 case: two configurations of `B0` on the second invariant
/// fibre, giving two actions.
pub fn verify_m38() -> CaseReport {
    use MarkedPoint::*;
    let (m, n) = (38, 19);
    let mut checks = Checks::default();

    let delta = hurwitz_delta(8);
    let squares: Result<Vec<i64>> = (0..=max_branch_invariant())
        .map(|e| {
            let x = SurfaceModel::Hirzebruch { e };
            self_intersection(x.anti_bicanonical(), x)
        })
        .collect();
    checks.record("branch_square", squares, |s| {
        (
            s.iter().all(|&v| v == 32) && delta.delta == 24 && delta.within_bound,
            format!("B0² = {:?} for e ≤ 4, δ = {}", s, delta.delta),
        )
    });

    let sums = invariant_fibre_ramification(delta.delta, n);
    let cap = BRANCH_FIBRE_DEGREE - 1;
    let profiles: Vec<RamificationProfile> = sums
        .iter()
        .flat_map(|&s| (0..=cap).map(move |b1| RamificationProfile { beta1: b1, beta2: s - b1 }))
        .filter(|p| p.beta1 < p.beta2 && p.beta2 <= cap)
        .filter(|p| p.consistent_with(delta.delta, n))
        .collect();
    checks.push(
        "ramification_profile",
        sums == [5] && profiles == [RamificationProfile { beta1: 2, beta2: 3 }],
        format!("β1 + β2 ∈ {sums:?}; profiles with β1 < β2 ≤ 3: {profiles:?}"),
    );

    let growth: Result<i64> = (0..=BRANCH_FIBRE_DEGREE)
        .map(|mu| transform_square_change(BRANCH_FIBRE_DEGREE, mu))
        .try_fold(i64::MIN, |acc, v| v.map(|v| acc.max(v)));
    checks.record("low_type_exclusion", growth, |&g| {
        let steps = max_branch_invariant() + 2;
        let reach = 32 + steps * g;
        let needed = 2 * BRANCH_FIBRE_DEGREE * n;
        (
            reach < needed,
            format!("{steps} transforms raise B0² = 32 to at most {reach} < {needed}"),
        )
    });

    let one = Residue::new(1, n).expect("n > 0");
    let w = |k| weight_from_invariant_branch(1, k, one).map(|r| r.value());
    let weights = (|| Ok::<_, Error>([w(3)?, w(4)?, w(2)?]))();
    checks.record("tangency_weights", weights, |ws| {
        (ws == &[13, 5, 10], format!("contacts 3, 4, 2 give weights {ws:?} (mod 19)"))
    });

    // Possibility A: contact 4 at p2.
    let tau1 = [13, n - 13];
    let tau2 = [5, n - 5];
    checks.record("a_type_solve", solve_fibre_types(n, &tau1, &tau2, 0..=max_branch_invariant()), |s| {
        (
            s == &[TypeSolution { tau1: 13, tau2: 5, e: 1 }],
            format!("τ1 ∈ {tau1:?}, τ2 ∈ {tau2:?}, e ≤ 4: {s:?}"),
        )
    });
    let a_start = EquivariantRuledModel::new(n, -1, 13, 5);
    let route_p = check_chain("a_chain", &mut checks, a_start.clone(), &[(B1, 6), (A2, 5)]);
    let via = a_start.and_then(|s| s.run_chain(&[(A1, 13), (A2, 5)]));
    let mid = checks.record("a_alternate_chain", via, |t| {
        let q = free_quotient(&t.end);
        (
            t.end.all_types_zero() && q == Ok(SurfaceModel::Hirzebruch { e: 1 }),
            format!("13 at a1, 5 at a2: {} → {}, quotient {:?}", t.start, t.end, q.map(|q| q.to_string())),
        )
    });
    if let (Some(p), Some(mid)) = (route_p, mid) {
        let back = mid.end.run_chain(&[(B1, 19)]);
        checks.record("a_routes_agree", back, |t| {
            (t.end == p, format!("19 more at b1 reaches {}; direct route ends at {p}", t.end))
        });
        checks.record("a_free_quotient", free_quotient(&p), |q| {
            (*q == SurfaceModel::Hirzebruch { e: 0 }, format!("quotient {q}"))
        });
    }
    check_graph_curve("a_quotient_curve", &mut checks, DivisorClass::ruled(4, 1), &[&[3, 1], &[4]]);

    // Possibility B: a node at p2 with one branch tangent to F2.
    let tp2 = 10;
    let tq2 = same_fibre_opposite(Residue::new(tp2, n).expect("n > 0")).value();
    let tq1 = n - 13;
    let cong = lemma6_check(
        Residue::new(tq1, n).expect("n > 0"),
        Residue::new(tq2, n).expect("n > 0"),
        4,
        n,
    );
    checks.record("b_types", cong, |&ok| {
        (ok && tq2 == 9, format!("τ_p2 = {tp2}, τ_q2 = {tq2}, τ_q1 = {tq1}: {tq1} + {tq2} + 4 ≡ 0 (mod 19)"))
    });
    check_branch_decomposition("b_decomposition", &mut checks);
    let b_end = check_chain(
        "b_chain",
        &mut checks,
        EquivariantRuledModel::new(n, -4, tq1, tq2),
        &[(B1, 13), (A2, 9)],
    );
    if let Some(end) = b_end {
        checks.record("b_free_quotient", free_quotient(&end), |q| {
            (*q == SurfaceModel::Hirzebruch { e: 0 }, format!("quotient {q}"))
        });
    }
    let cfg = m44_configuration();
    checks.push(
        "b_matches_m44",
        cfg[0] == DivisorClass::ruled(3, 1),
        format!(
            "configuration {} matches the order-44 quotient",
            cfg.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" + ")
        ),
    );

    checks.push(
        "minimal_subgroups_non_symplectic",
        prime_divisors(m) == vec![2, 19] && 19 > MAX_SYMPLECTIC_ORDER,
        format!("order 2: covering involution; order 19 > {MAX_SYMPLECTIC_ORDER}"),
    );

    let f = DivisorClass::ruled(0, 1);
    let config = BranchConfiguration::new(
        SurfaceModel::Hirzebruch { e: 0 },
        m,
        &[(DivisorClass::ruled(4, 1), 2), (f, 19), (f, 38)],
    );
    let model = checks
        .record("quotient_model", config, |c| (c.indices() == [2, 19, 38], format!("indices {:?}", c.indices())))
        .map(|c| QuotientModel::from(&c));
    let notes = vec![
        "possibility A: contact 4 at p2, quotient (4,1) curve with two fibres".to_string(),
        "possibility B: node at p2, quotient configuration of the order-44 case".to_string(),
        "both actions live on one surface and differ in the chosen involution (recorded, not verified)".to_string(),
    ];
    CaseReport::assemble(m, checks, true, 2, model, notes)
}
