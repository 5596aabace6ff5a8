//! Diagonal cyclic actions on homogeneous coordinates: characters of
//! monomials, invariant curves, torus normalization of curve equations, and
//! an exhaustive smoothness scan over a prime field.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modular::{is_prime, Residue};

pub type Rational = Ratio<i64>;
pub type Exponents = [u32; 3];

/// `x_j ↦ ζ^{w_j} x_j` with `ζ` a primitive `n`-th root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialAction {
    weights: Vec<Residue>,
    n: i64,
}

impl MonomialAction {
    pub fn new(weights: &[i64], n: i64) -> Result<Self> {
        let weights = weights
            .iter()
            .map(|&w| Residue::new(w, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialAction { weights, n })
    }

    /// The trivial action on `len` coordinates.
    pub fn trivial(len: usize) -> Self {
        MonomialAction::new(&vec![0; len], 1).expect("modulus 1 is valid")
    }

    pub fn order(&self) -> i64 {
        self.n
    }

    pub fn weights(&self) -> &[Residue] {
        &self.weights
    }

    /// Effective order of the action on the coordinate line spanned by
    /// `x_i` and `x_j`.
    pub fn order_on_line(&self, i: usize, j: usize) -> i64 {
        let diff = (self.weights[j] - self.weights[i]).value();
        self.n / diff.gcd(&self.n)
    }
}

impl fmt::Display for MonomialAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(|w| w.value().to_string()).collect();
        write!(f, "({}) mod {}", ws.join(","), self.n)
    }
}

/// `Σ e_j·w_j mod n`.
pub fn monomial_character(exponents: &[u32], action: &MonomialAction) -> Result<Residue> {
    if exponents.len() != action.weights.len() {
        return Err(Error::InvalidInput(format!(
            "{} exponents for {} weights",
            exponents.len(),
            action.weights.len()
        )));
    }
    let zero = Residue::zero(action.n)?;
    Ok(exponents
        .iter()
        .zip(&action.weights)
        .fold(zero, |acc, (&e, &w)| acc + w.scale(e as i64)))
}

/// All degree-`d` exponent triples in descending lexicographic order.
pub fn plane_monomials(d: u32) -> Vec<Exponents> {
    let mut out = Vec::with_capacity(((d + 1) * (d + 2) / 2) as usize);
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// Degree-`d` monomials on the plane whose character is `target`, in
/// descending lexicographic order.
pub fn invariant_monomials(d: u32, action: &MonomialAction, target: Residue) -> Result<Vec<Exponents>> {
    target.same_modulus(Residue::zero(action.n)?)?;
    let mut out = Vec::new();
    for e in plane_monomials(d) {
        if monomial_character(&e, action)? == target {
            out.push(e);
        }
    }
    Ok(out)
}

/// Bihomogeneous analogue on `P¹ × P¹` with coordinates `(u0, u1; v0, v1)`:
/// monomials of bidegree `(d1, d2)` with character `target`.
pub fn invariant_bihomogeneous(
    d1: u32,
    d2: u32,
    action: &MonomialAction,
    target: Residue,
) -> Result<Vec<[u32; 4]>> {
    target.same_modulus(Residue::zero(action.n)?)?;
    let mut out = Vec::new();
    for i in (0..=d1).rev() {
        for k in (0..=d2).rev() {
            let e = [i, d1 - i, k, d2 - k];
            if monomial_character(&e, action)? == target {
                out.push(e);
            }
        }
    }
    Ok(out)
}

/// A plane curve with exact rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    degree: u32,
    terms: BTreeMap<Exponents, Rational>,
}

impl PlaneCurve {
    /// Zero coefficients are dropped; the curve must not vanish identically
    /// and every monomial must have the same degree.
    pub fn new<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut map = BTreeMap::new();
        let mut degree = None;
        for (e, c) in terms {
            let d = e.iter().sum::<u32>();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::InvalidInput(format!(
                        "monomial {e:?} has degree {d}, expected {d0}"
                    )))
                }
                _ => {}
            }
            if map.insert(e, c).is_some() {
                return Err(Error::InvalidInput(format!("duplicate monomial {e:?}")));
            }
        }
        map.retain(|_, c| !c.is_zero());
        let degree = match degree {
            Some(d) if !map.is_empty() => d,
            _ => return Err(Error::InvalidInput("curve equation is identically zero".into())),
        };
        Ok(PlaneCurve { degree, terms: map })
    }

    /// Curve with integer coefficients.
    pub fn from_integer_terms(terms: &[(Exponents, i64)]) -> Result<Self> {
        Self::new(terms.iter().map(|&(e, c)| (e, Rational::from_integer(c))))
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Rational> {
        &self.terms
    }

    pub fn support(&self) -> Vec<Exponents> {
        self.terms.keys().copied().collect()
    }

    /// Parses lines `i j k : num/den` (or `i j k : num`); `#` starts a
    /// comment and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                line: line_no,
                msg: msg.to_string(),
            };
            let (lhs, rhs) = line
                .split_once(':')
                .ok_or_else(|| err("expected `i j k : num/den`"))?;
            let exps: Vec<u32> = lhs
                .split_whitespace()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| err("exponents must be non-negative integers"))?;
            let exps: Exponents = exps
                .try_into()
                .map_err(|_| err("expected exactly three exponents"))?;
            let coeff = parse_rational(rhs.trim()).ok_or_else(|| err("bad coefficient"))?;
            terms.push((exps, coeff));
        }
        if terms.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "no terms".into(),
            });
        }
        Self::new(terms).map_err(|e| match e {
            Error::InvalidInput(msg) => Error::Parse { line: 0, msg },
            other => other,
        })
    }

    /// Renders the curve in the format read by [`PlaneCurve::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            out.push_str(&format!("{} {} {} : {}/{}\n", e[0], e[1], e[2], c.numer(), c.denom()));
        }
        out
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if !c.is_one() {
                write!(f, "({c})")?;
            }
            let mut wrote = false;
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => {
                        write!(f, "X{j}")?;
                        wrote = true;
                    }
                    _ => {
                        write!(f, "X{j}^{k}")?;
                        wrote = true;
                    }
                }
            }
            if !wrote && c.is_one() {
                f.write_str("1")?;
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<i64>().ok()?, d.trim().parse::<i64>().ok()?),
        None => (s.parse::<i64>().ok()?, 1),
    };
    if den == 0 {
        return None;
    }
    Some(Rational::new(num, den))
}

/// A curve is mapped to a multiple of itself iff all of its monomials share
/// one character.
pub fn curve_invariance(curve: &PlaneCurve, action: &MonomialAction) -> Result<bool> {
    let mut chars = curve
        .terms
        .keys()
        .map(|e| monomial_character(e, action));
    let first = chars.next().expect("curves are non-empty")?;
    for c in chars {
        if c? != first {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Weight order of the order-25 action `(ζ x0 : ζ^(5α+1) x1 : x2)`.
pub const M50_ACTION_ORDER: i64 = 25;

/// The action `(1, 5α+1, 0) mod 25`.
pub fn m50_action(alpha: i64) -> MonomialAction {
    MonomialAction::new(&[1, 5 * alpha + 1, 0], M50_ACTION_ORDER).expect("positive modulus")
}

/// Determines `α mod 5` from an invariant smooth branch at `(0:0:1)` meeting
/// the line `x1 = 0` with contact order `tangency`: in the chart `x2 = 1`
/// the branch is `x1 = c·x0^tangency`, forcing `5α + 1 ≡ tangency (mod 25)`.
pub fn solve_alpha(tangency: i64) -> Result<i64> {
    let sols: Vec<i64> = (0..5)
        .filter(|a| (5 * a + 1 - tangency).rem_euclid(M50_ACTION_ORDER) == 0)
        .collect();
    match sols.as_slice() {
        [a] => Ok(*a),
        _ => Err(Error::NoInvariantBranch {
            order: tangency,
            n: M50_ACTION_ORDER,
        }),
    }
}

/// `α` for a branch with contact order 6 along `x1 = 0`.
pub fn solve_alpha_m50() -> Result<i64> {
    solve_alpha(6)
}

/// A diagonal scaling `x_j ↦ λ_j x_j` and overall factor `μ` expressed as
/// rational powers of the input coefficients:
/// `λ_j = Π_k c_k^{lambda[j][k]}`, `μ = Π_k c_k^{mu[k]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusScaling {
    pub monomials: [Exponents; 3],
    pub coefficients: [Rational; 3],
    pub lambda: [[Rational; 3]; 3],
    pub mu: [Rational; 3],
}

impl TorusScaling {
    /// Symbolic check that `μ·c_i·λ^{e_i} = 1` for each monomial: the total
    /// exponent of every `c_k` must vanish.
    pub fn verify(&self) -> bool {
        (0..3).all(|i| {
            (0..3).all(|k| {
                let mut total = self.mu[k];
                if i == k {
                    total += Rational::one();
                }
                for j in 0..3 {
                    total += self.lambda[j][k] * Rational::from_integer(self.monomials[i][j] as i64);
                }
                total.is_zero()
            })
        })
    }

    /// True when every `λ_j` and `μ` equals 1.
    pub fn is_identity(&self) -> bool {
        self.evaluate()
            .map(|(l, m)| l.iter().all(|x| x.is_one()) && m.is_one())
            .unwrap_or(false)
    }

    /// Exact values of `(λ, μ)` when every required root is rational.
    pub fn evaluate(&self) -> Option<([Rational; 3], Rational)> {
        let eval = |exps: &[Rational; 3]| -> Option<Rational> {
            let mut acc = Rational::one();
            for (c, e) in self.coefficients.iter().zip(exps) {
                acc = checked_mul(acc, rational_power(*c, *e)?)?;
            }
            Some(acc)
        };
        let l0 = eval(&self.lambda[0])?;
        let l1 = eval(&self.lambda[1])?;
        let l2 = eval(&self.lambda[2])?;
        Some(([l0, l1, l2], eval(&self.mu)?))
    }

    /// The curve with all three coefficients equal to 1.
    pub fn normalized_curve(&self) -> Result<PlaneCurve> {
        PlaneCurve::new(self.monomials.iter().map(|&e| (e, Rational::one())))
    }
}

fn checked_mul(a: Rational, b: Rational) -> Option<Rational> {
    let n = a.numer().checked_mul(*b.numer())?;
    let d = a.denom().checked_mul(*b.denom())?;
    Some(Rational::new(n, d))
}

fn checked_pow(base: i64, exp: u32) -> Option<i64> {
    base.checked_pow(exp)
}

fn integer_root(v: i64, q: u32) -> Option<i64> {
    if v < 0 {
        if q.is_multiple_of(2) {
            return None;
        }
        return integer_root(-v, q).map(|r| -r);
    }
    let approx = (v as f64).powf(1.0 / q as f64).round() as i64;
    (approx.saturating_sub(1)..=approx + 1)
        .find(|&r| r >= 0 && r.checked_pow(q) == Some(v))
}

/// `c^(p/q)` when it is rational.
fn rational_power(c: Rational, e: Rational) -> Option<Rational> {
    if e.is_zero() {
        return Some(Rational::one());
    }
    let (p, q) = (*e.numer(), *e.denom());
    let base = if p < 0 { c.recip() } else { c };
    let p = p.unsigned_abs() as u32;
    let num = checked_pow(*base.numer(), p)?;
    let den = checked_pow(*base.denom(), p)?;
    let q = q as u32;
    Some(Rational::new(integer_root(num, q)?, integer_root(den, q)?))
}

/// Finds a diagonal scaling bringing the coefficients of `c_i·m_i` to
/// `(1, 1, 1)`. Zero coefficients are degenerate members.
pub fn torus_normalize(monomials: [Exponents; 3], coeffs: [Rational; 3]) -> Result<TorusScaling> {
    if let Some(i) = coeffs.iter().position(|c| c.is_zero()) {
        return Err(Error::Degenerate(format!(
            "coefficient of monomial {:?} vanishes",
            monomials[i]
        )));
    }
    // Unknowns (l0, l1, l2, m) in log space: Σ_j e_ij l_j + m = -log c_i.
    // Fix one l_j = 0 so the remaining 3x3 system is square and invertible.
    for fixed in 0..3 {
        let free: Vec<usize> = (0..3).filter(|&j| j != fixed).collect();
        let mut a = [[Rational::zero(); 3]; 3];
        for i in 0..3 {
            a[i][0] = Rational::from_integer(monomials[i][free[0]] as i64);
            a[i][1] = Rational::from_integer(monomials[i][free[1]] as i64);
            a[i][2] = Rational::one();
        }
        let mut rhs = [[Rational::zero(); 3]; 3];
        for (i, row) in rhs.iter_mut().enumerate() {
            row[i] = -Rational::one();
        }
        if let Some(x) = solve3(a, rhs) {
            let mut lambda = [[Rational::zero(); 3]; 3];
            lambda[free[0]] = x[0];
            lambda[free[1]] = x[1];
            let scaling = TorusScaling {
                monomials,
                coefficients: coeffs,
                lambda,
                mu: x[2],
            };
            debug_assert!(scaling.verify());
            return Ok(scaling);
        }
    }
    Err(Error::Degenerate(
        "monomials are not independent under the torus".into(),
    ))
}

/// Solves `A·X = B` over Q for a 3x3 `A`; rows of the result are the
/// unknowns, columns follow `B`.
fn solve3(mut a: [[Rational; 3]; 3], mut b: [[Rational; 3]; 3]) -> Option<[[Rational; 3]; 3]> {
    for col in 0..3 {
        let pivot = (col..3).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip();
        for k in 0..3 {
            a[col][k] *= inv;
            b[col][k] *= inv;
        }
        for r in 0..3 {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for k in 0..3 {
                    let (ack, bck) = (a[col][k], b[col][k]);
                    a[r][k] -= f * ack;
                    b[r][k] -= f * bck;
                }
            }
        }
    }
    Some(b)
}

/// The three monomials of the order-50 branch sextic.
pub const M50_MONOMIALS: [Exponents; 3] = [[6, 0, 0], [1, 5, 0], [0, 1, 5]];

/// A point of `P²(F_p)` with first nonzero coordinate equal to 1.
pub type ProjectivePoint = [u64; 3];

struct ReducedCurve {
    p: u64,
    degree: u32,
    terms: Vec<(Exponents, u64)>,
}

fn mod_inverse_u64(a: u64, p: u64) -> u64 {
    crate::modular::inverse_mod(a as i64, p as i64)
        .expect("p prime and a nonzero")
        .value() as u64
}

fn reduce_curve(curve: &PlaneCurve, p: u64) -> Result<ReducedCurve> {
    if !is_prime(p) {
        return Err(Error::BadPrime {
            p,
            reason: "not prime".into(),
        });
    }
    if (curve.degree as u64).is_multiple_of(p) {
        return Err(Error::BadPrime {
            p,
            reason: format!("divides the degree {}", curve.degree),
        });
    }
    let pi = p as i128;
    let mut terms = Vec::new();
    for (e, c) in &curve.terms {
        let den = *c.denom() as i128;
        if den.rem_euclid(pi) == 0 {
            return Err(Error::BadPrime {
                p,
                reason: format!("divides a coefficient denominator {}", c.denom()),
            });
        }
        let num = (*c.numer() as i128).rem_euclid(pi) as u64;
        let v = num * mod_inverse_u64(den.rem_euclid(pi) as u64, p) % p;
        if v != 0 {
            terms.push((*e, v));
        }
    }
    if terms.is_empty() {
        return Err(Error::BadPrime {
            p,
            reason: "curve vanishes identically mod p".into(),
        });
    }
    Ok(ReducedCurve {
        p,
        degree: curve.degree,
        terms,
    })
}

impl ReducedCurve {
    /// Value and gradient vanish simultaneously.
    fn singular_at(&self, pt: &ProjectivePoint) -> bool {
        let p = self.p;
        let d = self.degree as usize;
        let mut pows = [[0u64; 64]; 3];
        let len = d + 1;
        assert!(len <= 64, "degree too large for the scanner");
        for j in 0..3 {
            pows[j][0] = 1;
            for k in 1..len {
                pows[j][k] = pows[j][k - 1] * pt[j] % p;
            }
        }
        let mut val = 0u64;
        let mut grad = [0u64; 3];
        for (e, c) in &self.terms {
            let m = [e[0] as usize, e[1] as usize, e[2] as usize];
            let full = c * pows[0][m[0]] % p * pows[1][m[1]] % p * pows[2][m[2]] % p;
            val = (val + full) % p;
            for j in 0..3 {
                if m[j] == 0 {
                    continue;
                }
                let mut t = c * (m[j] as u64 % p) % p;
                for k in 0..3 {
                    let exp = if k == j { m[k] - 1 } else { m[k] };
                    t = t * pows[k][exp] % p;
                }
                grad[j] = (grad[j] + t) % p;
            }
        }
        val == 0 && grad.iter().all(|&g| g == 0)
    }
}

/// All singular points of the curve over `F_p`, in the scan order
/// `(1:a:b)`, then `(0:1:b)`, then `(0:0:1)`.
///
/// Requires `p` prime, not dividing the degree or any denominator. Only
/// `F_p`-rational points are examined.
pub fn singular_points_over_fp(curve: &PlaneCurve, p: u64) -> Result<Vec<ProjectivePoint>> {
    let rc = reduce_curve(curve, p)?;
    let mut out: Vec<ProjectivePoint> = (0..p)
        .into_par_iter()
        .flat_map_iter(|a| {
            let rc = &rc;
            (0..p).filter_map(move |b| {
                let pt = [1, a, b];
                rc.singular_at(&pt).then_some(pt)
            })
        })
        .collect();
    out.extend((0..p).map(|b| [0, 1, b]).filter(|pt| rc.singular_at(pt)));
    if rc.singular_at(&[0, 0, 1]) {
        out.push([0, 0, 1]);
    }
    Ok(out)
}

/// The first singular point in scan order, if any.
pub fn first_singular_point(curve: &PlaneCurve, p: u64) -> Result<Option<ProjectivePoint>> {
    let rc = reduce_curve(curve, p)?;
    let affine = (0..p).into_par_iter().find_map_first(|a| {
        (0..p)
            .map(|b| [1, a, b])
            .find(|pt| rc.singular_at(pt))
    });
    if affine.is_some() {
        return Ok(affine);
    }
    if let Some(pt) = (0..p).map(|b| [0, 1, b]).find(|pt| rc.singular_at(pt)) {
        return Ok(Some(pt));
    }
    Ok(rc.singular_at(&[0, 0, 1]).then_some([0, 0, 1]))
}

/// Exhaustive scan of the `p² + p + 1` points of `P²(F_p)` for a common zero
/// of the curve and its three partials.
pub fn smooth_over_fp(curve: &PlaneCurve, p: u64) -> Result<bool> {
    Ok(first_singular_point(curve, p)?.is_none())
}

pub fn format_point(pt: &ProjectivePoint) -> String {
    format!("({}:{}:{})", pt[0], pt[1], pt[2])
}

/// Sign-normalized rational display `num/den`.
pub fn rational_string(r: &Rational) -> String {
    let r = if r.denom().is_negative() { -*r } else { *r };
    format!("{}/{}", r.numer(), r.denom())
}
