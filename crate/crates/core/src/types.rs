//! Fixed-point types of cyclic actions on ruled surfaces.
//!
//! A generator `γ` of order `n` acting on `F_e` and on the base `P¹` with
//! order `n` has two invariant fibres. At a fixed point we pick local
//! parameters `t` (transverse to the fibre) and `x` (along the fibre) with
//! `γ(t) = ξ t`, `γ(x) = ξ^τ x`; the exponent `τ` is the type of the point.
//! Types are normalized so the base weight is 1 at each invariant fibre.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{SurfaceModel, MAX_HIRZEBRUCH_E};
use crate::modular::{inverse_mod, Residue};

/// Weights of a diagonalized action at a fixed point, modulo its order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LocalWeights {
    pub w_t: Residue,
    pub w_x: Residue,
}

impl LocalWeights {
    pub fn new(w_t: i64, w_x: i64, d: i64) -> Result<Self> {
        Ok(LocalWeights {
            w_t: Residue::new(w_t, d)?,
            w_x: Residue::new(w_x, d)?,
        })
    }

    pub fn from_residues(w_t: Residue, w_x: Residue) -> Result<Self> {
        w_t.same_modulus(w_x)?;
        Ok(LocalWeights { w_t, w_x })
    }

    pub fn order(&self) -> i64 {
        self.w_t.modulus()
    }

    /// Exponent of the determinant of the linearization.
    pub fn determinant(&self) -> Residue {
        self.w_t + self.w_x
    }
}

impl fmt::Display for LocalWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}) mod {}",
            self.w_t.value(),
            self.w_x.value(),
            self.order()
        )
    }
}

/// `τ1 + τ2 + e ≡ 0 (mod n)`.
pub fn lemma6_check(tau1: Residue, tau2: Residue, e: i64, n: i64) -> Result<bool> {
    tau1.same_modulus(tau2)?;
    if tau1.modulus() != n {
        return Err(Error::ModulusMismatch(tau1.modulus(), n));
    }
    Ok(tau1.shift(tau2.value()).shift(e).is_zero())
}

/// The type of the other fixed point on the same fibre: `-τ mod n`.
pub fn same_fibre_opposite(tau: Residue) -> Residue {
    -tau
}

/// Fibre weight forced by an invariant smooth branch `t^k_t = c·x^k_x`
/// through the point: `k_t·w_t ≡ k_x·w_x (mod n)`.
///
/// A branch tangent to the fibre to order `k` is `(k_t, k_x) = (1, k)`.
pub fn weight_from_invariant_branch(k_t: i64, k_x: i64, w_t: Residue) -> Result<Residue> {
    let n = w_t.modulus();
    if k_t < 1 || k_x < 1 {
        return Err(Error::InvalidInput(format!(
            "contact orders must be positive, got ({k_t}, {k_x})"
        )));
    }
    let inv = inverse_mod(k_x, n).map_err(|_| Error::NoInvariantBranch { order: k_x, n })?;
    Ok(w_t.scale(k_t) * inv)
}

/// Locally symplectic iff the linearization is `diag(ζ^a, ζ^-a)`, i.e. the
/// weights sum to zero modulo the order.
pub fn symplectic_test(w: &LocalWeights) -> bool {
    w.determinant().is_zero()
}

/// Weights of `γ^(n/d)` at the same point, with respect to the primitive
/// `d`-th root `ξ^(n/d)`.
pub fn restrict_to_subgroup(w: &LocalWeights, d: i64) -> Result<LocalWeights> {
    if d < 2 {
        return Err(Error::InvalidInput(format!("subgroup order must be >= 2, got {d}")));
    }
    Ok(LocalWeights {
        w_t: w.w_t.reduce(d)?,
        w_x: w.w_x.reduce(d)?,
    })
}

/// Weights upstairs of a covering that is locally `(t, x) ↦ (t^e_t, x^e_x)`.
pub fn lift_weights(w: &LocalWeights, e_t: i64, e_x: i64) -> Result<LocalWeights> {
    let d = w.order();
    let inv = |degree: i64| {
        inverse_mod(degree, d).map_err(|_| Error::LiftNotCoprime { degree, d })
    };
    let (it, ix) = (inv(e_t)?, inv(e_x)?);
    Ok(LocalWeights {
        w_t: w.w_t * it,
        w_x: w.w_x * ix,
    })
}

/// The four marked fixed points: `a_i = s1 ∩ F_i`, `b_i = s2 ∩ F_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MarkedPoint {
    A1,
    A2,
    B1,
    B2,
}

impl MarkedPoint {
    pub const ALL: [MarkedPoint; 4] = [MarkedPoint::A1, MarkedPoint::A2, MarkedPoint::B1, MarkedPoint::B2];

    /// The other marked point on the same fibre.
    pub fn opposite(self) -> MarkedPoint {
        match self {
            MarkedPoint::A1 => MarkedPoint::B1,
            MarkedPoint::B1 => MarkedPoint::A1,
            MarkedPoint::A2 => MarkedPoint::B2,
            MarkedPoint::B2 => MarkedPoint::A2,
        }
    }

    pub fn on_first_section(self) -> bool {
        matches!(self, MarkedPoint::A1 | MarkedPoint::A2)
    }
}

impl fmt::Display for MarkedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MarkedPoint::A1 => "a1",
            MarkedPoint::A2 => "a2",
            MarkedPoint::B1 => "b1",
            MarkedPoint::B2 => "b2",
        };
        f.write_str(s)
    }
}

/// A Hirzebruch surface with an order-`n` action, two disjoint invariant
/// sections `s1`, `s2` and the types at their four fixed points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EquivariantRuledModel {
    n: i64,
    s1_sq: i64,
    s2_sq: i64,
    tau_a1: Residue,
    tau_a2: Residue,
    tau_b1: Residue,
    tau_b2: Residue,
}

impl EquivariantRuledModel {
    /// Builds the model from `s1²` and the types on `s1`; the rest follows
    /// from the fibre rule. Fails unless `τ_a1 + τ_a2 - s1² ≡ 0 (mod n)`.
    pub fn new(n: i64, s1_sq: i64, tau_a1: i64, tau_a2: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidInput(format!("order must be positive, got {n}")));
        }
        if s1_sq.abs() > MAX_HIRZEBRUCH_E {
            return Err(Error::InvariantOutOfRange(s1_sq.abs()));
        }
        let tau_a1 = Residue::new(tau_a1, n)?;
        let tau_a2 = Residue::new(tau_a2, n)?;
        let model = EquivariantRuledModel {
            n,
            s1_sq,
            s2_sq: -s1_sq,
            tau_a1,
            tau_a2,
            tau_b1: -tau_a1,
            tau_b2: -tau_a2,
        };
        model.check_invariants()?;
        Ok(model)
    }

    pub fn order(&self) -> i64 {
        self.n
    }

    pub fn s1_sq(&self) -> i64 {
        self.s1_sq
    }

    pub fn s2_sq(&self) -> i64 {
        self.s2_sq
    }

    pub fn tau(&self, p: MarkedPoint) -> Residue {
        match p {
            MarkedPoint::A1 => self.tau_a1,
            MarkedPoint::A2 => self.tau_a2,
            MarkedPoint::B1 => self.tau_b1,
            MarkedPoint::B2 => self.tau_b2,
        }
    }

    /// Hirzebruch invariant of the underlying surface.
    pub fn e(&self) -> i64 {
        self.s1_sq.abs()
    }

    pub fn all_types_zero(&self) -> bool {
        MarkedPoint::ALL.iter().all(|&p| self.tau(p).is_zero())
    }

    /// Local weights `(1, τ)` at a marked point.
    pub fn weights_at(&self, p: MarkedPoint) -> LocalWeights {
        LocalWeights {
            w_t: Residue::new(1, self.n).expect("n >= 1"),
            w_x: self.tau(p),
        }
    }

    /// Section-square sum, opposite types on each fibre, and
    /// `τ_a1 + τ_a2 + e ≡ 0 (mod n)`.
    pub fn check_invariants(&self) -> Result<()> {
        if self.s1_sq + self.s2_sq != 0 {
            return Err(Error::ModelInvariant(format!(
                "section squares {} and {} do not sum to 0",
                self.s1_sq, self.s2_sq
            )));
        }
        for (a, b, i) in [(self.tau_a1, self.tau_b1, 1), (self.tau_a2, self.tau_b2, 2)] {
            if !(a + b).is_zero() {
                return Err(Error::ModelInvariant(format!(
                    "types {} and {} on fibre F{i} are not opposite",
                    a.value(),
                    b.value()
                )));
            }
        }
        if !lemma6_check(self.tau_a1, self.tau_a2, -self.s1_sq, self.n)?
            || !lemma6_check(self.tau_b1, self.tau_b2, -self.s2_sq, self.n)?
        {
            return Err(Error::ModelInvariant(format!(
                "τ1 + τ2 + e ≢ 0 mod {} for {self}",
                self.n
            )));
        }
        Ok(())
    }

    /// Blow up the marked point and contract the strict transform of its
    /// fibre. The section through the centre loses 1 from its square, the
    /// other gains 1; the type at the centre drops by 1 and its opposite
    /// rises by 1.
    pub fn elementary_transform(&self, centre: MarkedPoint) -> Self {
        let mut out = *self;
        if centre.on_first_section() {
            out.s1_sq -= 1;
            out.s2_sq += 1;
        } else {
            out.s2_sq -= 1;
            out.s1_sq += 1;
        }
        out.set_tau(centre, self.tau(centre).shift(-1));
        let opp = centre.opposite();
        out.set_tau(opp, self.tau(opp).shift(1));
        out
    }

    fn set_tau(&mut self, p: MarkedPoint, v: Residue) {
        match p {
            MarkedPoint::A1 => self.tau_a1 = v,
            MarkedPoint::A2 => self.tau_a2 = v,
            MarkedPoint::B1 => self.tau_b1 = v,
            MarkedPoint::B2 => self.tau_b2 = v,
        }
    }

    /// Applies `count` transforms at each listed centre in order, checking
    /// every model invariant after every single step.
    pub fn run_chain(&self, steps: &[(MarkedPoint, u32)]) -> Result<ChainTrace> {
        let mut current = *self;
        let mut trace = ChainTrace {
            start: *self,
            end: *self,
            steps: 0,
            invariant_checks: 0,
        };
        for &(centre, count) in steps {
            for _ in 0..count {
                current = current.elementary_transform(centre);
                if current.e() > MAX_HIRZEBRUCH_E {
                    return Err(Error::InvariantOutOfRange(current.e()));
                }
                current.check_invariants()?;
                trace.steps += 1;
                trace.invariant_checks += 1;
            }
        }
        trace.end = current;
        Ok(trace)
    }
}

impl fmt::Display for EquivariantRuledModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[n={}; s1²={}, s2²={}; a=({},{}) b=({},{})]",
            self.n,
            self.s1_sq,
            self.s2_sq,
            self.tau_a1.value(),
            self.tau_a2.value(),
            self.tau_b1.value(),
            self.tau_b2.value()
        )
    }
}

/// Result of a checked transform chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainTrace {
    pub start: EquivariantRuledModel,
    pub end: EquivariantRuledModel,
    pub steps: u32,
    pub invariant_checks: u32,
}

/// Quotient of a model without isolated fixed points: the action is pulled
/// back from the base, so `e = n·e'` and the quotient is `F_e'`.
pub fn free_quotient(m: &EquivariantRuledModel) -> Result<SurfaceModel> {
    if !m.all_types_zero() {
        return Err(Error::QuotientNotSmooth(format!(
            "nonzero type in {m}; isolated fixed points remain"
        )));
    }
    if m.e() % m.n != 0 {
        return Err(Error::QuotientNotSmooth(format!(
            "order {} does not divide e = {}",
            m.n,
            m.e()
        )));
    }
    SurfaceModel::hirzebruch(m.e() / m.n)
}
