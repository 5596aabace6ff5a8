//! Picard-lattice arithmetic on the projective plane and on Hirzebruch
//! surfaces `F_e`.
//!
//! Classes are written `d·H` on the plane and `a·C0 + b·F` on `F_e`, where
//! `C0` is the section with `C0² = -e` (a chosen flat section when `e = 0`)
//! and `F` is a fibre of the ruling.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest Hirzebruch invariant accepted by the constructors.
pub const MAX_HIRZEBRUCH_E: i64 = 64;

/// A minimal rational surface: `P²` or `F_e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SurfaceModel {
    ProjectivePlane,
    Hirzebruch { e: i64 },
}

impl SurfaceModel {
    pub fn hirzebruch(e: i64) -> Result<Self> {
        if !(0..=MAX_HIRZEBRUCH_E).contains(&e) {
            return Err(Error::InvariantOutOfRange(e));
        }
        Ok(SurfaceModel::Hirzebruch { e })
    }

    pub fn k_squared(self) -> i64 {
        match self {
            SurfaceModel::ProjectivePlane => 9,
            SurfaceModel::Hirzebruch { .. } => 8,
        }
    }

    /// Topological Euler number.
    pub fn chi_top(self) -> i64 {
        match self {
            SurfaceModel::ProjectivePlane => 3,
            SurfaceModel::Hirzebruch { .. } => 4,
        }
    }

    /// Picard number, `10 - K²` for rational surfaces.
    pub fn picard_number(self) -> i64 {
        10 - self.k_squared()
    }

    pub fn is_ruled(self) -> bool {
        matches!(self, SurfaceModel::Hirzebruch { .. })
    }

    /// `-2K`, the class of the branch curve of a K3 double cover.
    pub fn anti_bicanonical(self) -> DivisorClass {
        canonical_class(self).scale(-2)
    }

    /// The class of a fibre; errors on the plane.
    pub fn fibre(self) -> Result<DivisorClass> {
        match self {
            SurfaceModel::Hirzebruch { .. } => Ok(DivisorClass::Ruled { a: 0, b: 1 }),
            SurfaceModel::ProjectivePlane => Err(Error::SurfaceMismatch(
                "the plane has no ruling".into(),
            )),
        }
    }

    /// The section `C0`; errors on the plane.
    pub fn negative_section(self) -> Result<DivisorClass> {
        match self {
            SurfaceModel::Hirzebruch { .. } => Ok(DivisorClass::Ruled { a: 1, b: 0 }),
            SurfaceModel::ProjectivePlane => Err(Error::SurfaceMismatch(
                "the plane has no ruling".into(),
            )),
        }
    }
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceModel::ProjectivePlane => write!(f, "P2"),
            SurfaceModel::Hirzebruch { e } => write!(f, "F{e}"),
        }
    }
}

/// A divisor class on a minimal rational surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DivisorClass {
    /// `d·H`.
    Plane { d: i64 },
    /// `a·C0 + b·F`.
    Ruled { a: i64, b: i64 },
}

impl DivisorClass {
    pub fn line_multiple(d: i64) -> Self {
        DivisorClass::Plane { d }
    }

    pub fn ruled(a: i64, b: i64) -> Self {
        DivisorClass::Ruled { a, b }
    }

    pub fn scale(self, k: i64) -> Self {
        match self {
            DivisorClass::Plane { d } => DivisorClass::Plane { d: k * d },
            DivisorClass::Ruled { a, b } => DivisorClass::Ruled { a: k * a, b: k * b },
        }
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        match (self, other) {
            (DivisorClass::Plane { d: d1 }, DivisorClass::Plane { d: d2 }) => {
                Ok(DivisorClass::Plane { d: d1 + d2 })
            }
            (DivisorClass::Ruled { a: a1, b: b1 }, DivisorClass::Ruled { a: a2, b: b2 }) => {
                Ok(DivisorClass::Ruled {
                    a: a1 + a2,
                    b: b1 + b2,
                })
            }
            _ => Err(Error::SurfaceMismatch(
                "cannot add plane and ruled classes".into(),
            )),
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(
            self,
            DivisorClass::Plane { d: 0 } | DivisorClass::Ruled { a: 0, b: 0 }
        )
    }

    fn lives_on(self, x: SurfaceModel) -> bool {
        matches!(
            (self, x),
            (DivisorClass::Plane { .. }, SurfaceModel::ProjectivePlane)
                | (DivisorClass::Ruled { .. }, SurfaceModel::Hirzebruch { .. })
        )
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            DivisorClass::Plane { d } => write!(f, "{d}H"),
            DivisorClass::Ruled { a, b } => match (a, b) {
                (0, b) => write!(f, "{b}F"),
                (a, 0) => write!(f, "{a}C0"),
                (a, b) if b < 0 => write!(f, "{a}C0-{}F", -b),
                (a, b) => write!(f, "{a}C0+{b}F"),
            },
        }
    }
}

/// Sum of a non-empty list of classes.
pub fn sum_classes(parts: &[DivisorClass]) -> Result<DivisorClass> {
    let (first, rest) = parts
        .split_first()
        .ok_or_else(|| Error::InvalidInput("empty class list".into()))?;
    rest.iter().try_fold(*first, |acc, c| acc.checked_add(*c))
}

/// The intersection pairing: `H² = 1`; `C0² = -e`, `C0·F = 1`, `F² = 0`.
pub fn intersect(d1: DivisorClass, d2: DivisorClass, x: SurfaceModel) -> Result<i64> {
    if !d1.lives_on(x) || !d2.lives_on(x) {
        return Err(Error::SurfaceMismatch(x.to_string()));
    }
    match (d1, d2, x) {
        (DivisorClass::Plane { d: p }, DivisorClass::Plane { d: q }, _) => Ok(p * q),
        (
            DivisorClass::Ruled { a: a1, b: b1 },
            DivisorClass::Ruled { a: a2, b: b2 },
            SurfaceModel::Hirzebruch { e },
        ) => Ok(-e * a1 * a2 + a1 * b2 + a2 * b1),
        _ => unreachable!("checked by lives_on"),
    }
}

pub fn self_intersection(d: DivisorClass, x: SurfaceModel) -> Result<i64> {
    intersect(d, d, x)
}

/// `K = -3H` on the plane, `K = -2C0 - (e+2)F` on `F_e`.
pub fn canonical_class(x: SurfaceModel) -> DivisorClass {
    match x {
        SurfaceModel::ProjectivePlane => DivisorClass::Plane { d: -3 },
        SurfaceModel::Hirzebruch { e } => DivisorClass::Ruled { a: -2, b: -(e + 2) },
    }
}

/// Arithmetic genus by adjunction, `g = 1 + (D² + D·K) / 2`.
pub fn genus_adjunction(d: DivisorClass, x: SurfaceModel) -> Result<i64> {
    let d_sq = intersect(d, d, x)?;
    let d_k = intersect(d, canonical_class(x), x)?;
    let s = d_sq + d_k;
    if s % 2 != 0 {
        return Err(Error::AdjunctionParity(d.to_string()));
    }
    Ok(1 + s / 2)
}

/// Degree over the base of the double-cover branch `-2K`, i.e. `(-2K)·F`.
pub fn fibre_degree_of_branch(x: SurfaceModel) -> Result<i64> {
    let f = x.fibre()?;
    intersect(x.anti_bicanonical(), f, x)
}

/// Change in `B²` under one elementary transform centred at a point where
/// `B` has multiplicity `mult`, for `B` of fibre degree `fibre_degree`.
///
/// Blowing up gives `B² - mult²`; contracting the strict fibre (a
/// `(-1)`-curve meeting `B` in `fibre_degree - mult` points) adds back
/// `(fibre_degree - mult)²`.
pub fn transform_square_change(fibre_degree: i64, mult: i64) -> Result<i64> {
    if !(0..=fibre_degree).contains(&mult) {
        return Err(Error::InvalidInput(format!(
            "multiplicity {mult} outside 0..={fibre_degree}"
        )));
    }
    let rest = fibre_degree - mult;
    Ok(rest * rest - mult * mult)
}

/// Largest `e` for which a reduced curve in `|-2K|` on `F_e` can exist: for
/// `e > 2` the section `C0` splits off, and the residual `-2K - C0` must not
/// meet `C0` negatively.
pub fn max_branch_invariant() -> i64 {
    let mut best = 0;
    for e in 0..=MAX_HIRZEBRUCH_E {
        let x = SurfaceModel::Hirzebruch { e };
        let c0 = DivisorClass::Ruled { a: 1, b: 0 };
        let b = x.anti_bicanonical();
        let ok = if intersect(b, c0, x).unwrap() >= 0 {
            true
        } else {
            let residual = b.checked_add(c0.scale(-1)).unwrap();
            intersect(residual, c0, x).unwrap() >= 0
        };
        if ok {
            best = e;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(e: i64) -> SurfaceModel {
        SurfaceModel::hirzebruch(e).unwrap()
    }

    #[test]
    fn intersection_examples() {
        let c0 = DivisorClass::ruled(1, 0);
        assert_eq!(intersect(c0, c0, f(4)).unwrap(), -4);
        let c = DivisorClass::ruled(1, 12);
        assert_eq!(intersect(c, c, f(12)).unwrap(), 12);
        assert_eq!(intersect(DivisorClass::ruled(3, 12), c0, f(4)).unwrap(), 0);
        assert!(intersect(DivisorClass::line_multiple(1), c0, f(1)).is_err());
        assert!(intersect(c0, c0, SurfaceModel::ProjectivePlane).is_err());
    }

    #[test]
    fn canonical_examples() {
        let p = SurfaceModel::ProjectivePlane;
        assert_eq!(canonical_class(p), DivisorClass::line_multiple(-3));
        assert_eq!(self_intersection(canonical_class(p), p).unwrap(), 9);
        assert_eq!(canonical_class(f(4)), DivisorClass::ruled(-2, -6));
        assert_eq!(self_intersection(canonical_class(f(4)), f(4)).unwrap(), 8);
        assert_eq!(f(4).anti_bicanonical(), DivisorClass::ruled(4, 12));
    }

    #[test]
    fn genus_examples() {
        let p = SurfaceModel::ProjectivePlane;
        assert_eq!(genus_adjunction(DivisorClass::line_multiple(6), p).unwrap(), 10);
        for e in 0..=20 {
            let x = f(e);
            assert_eq!(genus_adjunction(x.anti_bicanonical(), x).unwrap(), 9);
            assert_eq!(genus_adjunction(DivisorClass::ruled(0, 1), x).unwrap(), 0);
        }
        assert_eq!(genus_adjunction(p.anti_bicanonical(), p).unwrap(), 10);
    }

    #[test]
    fn adjunction_parity_holds_on_integral_classes() {
        // D² + D.K = -e·a(a-1) + even on F_e and d(d-3) on the plane, so
        // every integral class passes the parity guard.
        for e in 0..=5 {
            for a in -5..=5 {
                for b in -5..=5 {
                    assert!(genus_adjunction(DivisorClass::ruled(a, b), f(e)).is_ok());
                }
            }
        }
        assert!(genus_adjunction(DivisorClass::ruled(1, 0), SurfaceModel::ProjectivePlane).is_err());
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(SurfaceModel::ProjectivePlane.chi_top(), 3);
        for e in 0..=20 {
            let x = f(e);
            assert_eq!(x.chi_top(), 4);
            assert_eq!(x.k_squared() + x.chi_top(), 12);
            assert_eq!(x.picard_number(), 2);
        }
        assert_eq!(SurfaceModel::ProjectivePlane.picard_number(), 1);
        assert!(SurfaceModel::hirzebruch(65).is_err());
        assert!(SurfaceModel::hirzebruch(-1).is_err());
    }

    #[test]
    fn branch_fibre_degree() {
        assert_eq!(fibre_degree_of_branch(f(0)).unwrap(), 4);
        assert_eq!(fibre_degree_of_branch(f(4)).unwrap(), 4);
        assert_ne!(fibre_degree_of_branch(f(4)).unwrap() % 11, 0);
        assert!(fibre_degree_of_branch(SurfaceModel::ProjectivePlane).is_err());
    }

    #[test]
    fn elementary_transform_square_gain() {
        let gains: Vec<i64> = (0..=4)
            .map(|mu| transform_square_change(4, mu).unwrap())
            .collect();
        assert_eq!(gains, vec![16, 8, 0, -8, -16]);
        assert!(transform_square_change(4, 5).is_err());
    }

    #[test]
    fn branch_invariant_bound() {
        assert_eq!(max_branch_invariant(), 4);
    }

    proptest! {
        #[test]
        fn pairing_is_symmetric_bilinear(
            e in 0i64..=64,
            a1 in -50i64..=50, b1 in -50i64..=50,
            a2 in -50i64..=50, b2 in -50i64..=50,
            a3 in -50i64..=50, b3 in -50i64..=50,
            k in -50i64..=50,
        ) {
            let x = f(e);
            let d1 = DivisorClass::ruled(a1, b1);
            let d2 = DivisorClass::ruled(a2, b2);
            let d3 = DivisorClass::ruled(a3, b3);
            prop_assert_eq!(intersect(d1, d2, x).unwrap(), intersect(d2, d1, x).unwrap());
            let lhs = intersect(d1.scale(k).checked_add(d2).unwrap(), d3, x).unwrap();
            let rhs = k * intersect(d1, d3, x).unwrap() + intersect(d2, d3, x).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn plane_pairing_is_bilinear(p in -50i64..=50, q in -50i64..=50, r in -50i64..=50) {
            let x = SurfaceModel::ProjectivePlane;
            let s = DivisorClass::line_multiple(p).checked_add(DivisorClass::line_multiple(q)).unwrap();
            prop_assert_eq!(
                intersect(s, DivisorClass::line_multiple(r), x).unwrap(),
                (p + q) * r
            );
        }
    }
}
