//! Integer and modular arithmetic: residues, Euler's totient, modular
//! inverses and the admissible automorphism orders.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use crate::error::{Error, Result};

/// An element of `Z/nZ`, always stored reduced into `0..n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: i64,
    modulus: i64,
}

impl Residue {
    /// Builds the class of `value` modulo `modulus`; negative values are
    /// normalized.
    pub fn new(value: i64, modulus: i64) -> Result<Self> {
        if modulus < 1 {
            return Err(Error::InvalidInput(format!(
                "modulus must be positive, got {modulus}"
            )));
        }
        Ok(Residue {
            value: value.rem_euclid(modulus),
            modulus,
        })
    }

    pub fn zero(modulus: i64) -> Result<Self> {
        Self::new(0, modulus)
    }

    pub fn value(self) -> i64 {
        self.value
    }

    pub fn modulus(self) -> i64 {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Same integer representative, reduced modulo a divisor of the modulus.
    pub fn reduce(self, d: i64) -> Result<Self> {
        if d < 1 || self.modulus % d != 0 {
            return Err(Error::NotADivisor {
                d,
                n: self.modulus,
            });
        }
        Self::new(self.value, d)
    }

    /// Shifts the residue by an integer amount.
    pub fn shift(self, by: i64) -> Self {
        Residue {
            value: (self.value + by).rem_euclid(self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn scale(self, k: i64) -> Self {
        let v = (self.value as i128 * k as i128).rem_euclid(self.modulus as i128);
        Residue {
            value: v as i64,
            modulus: self.modulus,
        }
    }

    pub fn inverse(self) -> Result<Self> {
        inverse_mod(self.value, self.modulus)
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        self.same_modulus(other)?;
        Ok(self.shift(other.value))
    }

    pub fn same_modulus(self, other: Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

// The operator impls panic on mismatched moduli; use `checked_add` when the
// moduli are not known to agree.
impl Add for Residue {
    type Output = Residue;
    fn add(self, rhs: Residue) -> Residue {
        assert_eq!(self.modulus, rhs.modulus, "residue moduli differ");
        self.shift(rhs.value)
    }
}

impl Sub for Residue {
    type Output = Residue;
    fn sub(self, rhs: Residue) -> Residue {
        assert_eq!(self.modulus, rhs.modulus, "residue moduli differ");
        self.shift(-rhs.value)
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        assert_eq!(self.modulus, rhs.modulus, "residue moduli differ");
        self.scale(rhs.value)
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue {
            value: (-self.value).rem_euclid(self.modulus),
            modulus: self.modulus,
        }
    }
}

/// An automorphism order together with its totient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderCandidate {
    pub m: i64,
    pub phi: i64,
}

/// Euler's totient by trial-division factorization.
pub fn euler_phi(m: i64) -> Result<i64> {
    if m < 1 {
        return Err(Error::InvalidInput(format!(
            "euler_phi needs m >= 1, got {m}"
        )));
    }
    let mut rest = m;
    let mut phi = m;
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if rest > 1 {
        phi -= phi / rest;
    }
    Ok(phi)
}

/// Distinct prime divisors of `m`, ascending.
pub fn prime_divisors(m: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut rest = m.abs();
    let mut p = 2;
    while p * p <= rest {
        if rest % p == 0 {
            out.push(p);
            while rest % p == 0 {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        out.push(rest);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The inverse of `k` modulo `n`, via the extended Euclidean algorithm.
pub fn inverse_mod(k: i64, n: i64) -> Result<Residue> {
    if n < 1 {
        return Err(Error::InvalidInput(format!(
            "modulus must be positive, got {n}"
        )));
    }
    if n == 1 {
        return Residue::zero(1);
    }
    let ext = k.rem_euclid(n).extended_gcd(&n);
    if ext.gcd != 1 {
        return Err(Error::NoInverse { k, n });
    }
    Residue::new(ext.x, n)
}

/// Every `m` with `euler_phi(m) <= phi_max`, ascending.
///
/// The scan stops at `4 * phi_max^2`: since `phi(m) >= sqrt(m / 2)`, no
/// order beyond `2 * phi_max^2` can qualify.
pub fn admissible_orders(phi_max: i64) -> Result<Vec<OrderCandidate>> {
    if phi_max < 1 {
        return Err(Error::InvalidInput(format!(
            "phi_max must be >= 1, got {phi_max}"
        )));
    }
    let bound = 4 * phi_max * phi_max;
    let mut out = Vec::new();
    for m in 1..=bound {
        let phi = euler_phi(m)?;
        if phi <= phi_max {
            out.push(OrderCandidate { m, phi });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::gcd;

    fn brute_phi(m: i64) -> i64 {
        (1..=m).filter(|&k| gcd(k, m) == 1).count() as i64
    }

    #[test]
    fn totient_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(66).unwrap(), brute_phi(66));
        assert_eq!(euler_phi(66).unwrap(), 20);
        assert_eq!(euler_phi(50).unwrap(), 20);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn totient_matches_brute_force() {
        for m in 1..=10_000 {
            assert_eq!(euler_phi(m).unwrap(), brute_phi(m), "m={m}");
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_mod(3, 22).unwrap().value(), 15);
        assert_eq!(inverse_mod(4, 19).unwrap().value(), 5);
        assert_eq!(inverse_mod(3, 19).unwrap().value(), 13);
        for n in 2..30 {
            assert_eq!(inverse_mod(1, n).unwrap().value(), 1);
        }
        assert_eq!(inverse_mod(4, 22), Err(Error::NoInverse { k: 4, n: 22 }));
        assert_eq!(inverse_mod(-3, 22).unwrap().value(), 7);
    }

    #[test]
    fn inverse_is_exhaustively_correct() {
        for n in 1..=200 {
            for k in 0..n {
                match inverse_mod(k, n) {
                    Ok(r) => assert_eq!((k * r.value()) % n, 1 % n, "k={k} n={n}"),
                    Err(_) => assert_ne!(gcd(k, n), 1),
                }
            }
        }
    }

    #[test]
    fn admissible_orders_examples() {
        let ms = |p| -> Vec<i64> {
            admissible_orders(p).unwrap().iter().map(|c| c.m).collect()
        };
        assert_eq!(ms(1), vec![1, 2]);
        assert_eq!(ms(2), vec![1, 2, 3, 4, 6]);
        let big = ms(21);
        assert_eq!(*big.last().unwrap(), 66);
        for m in [38, 44, 48, 50, 54, 60, 66] {
            assert!(big.contains(&m));
        }
        assert!(admissible_orders(0).is_err());
    }

    #[test]
    fn admissible_orders_downward_closed() {
        for a in 1..=12 {
            let small = admissible_orders(a).unwrap();
            let large = admissible_orders(a + 3).unwrap();
            assert!(small.iter().all(|c| large.contains(c)));
        }
    }

    #[test]
    fn residues_normalize() {
        let r = Residue::new(-7, 22).unwrap();
        assert_eq!(r.value(), 15);
        assert_eq!(-r, Residue::new(7, 22).unwrap());
        assert!(Residue::new(3, 0).is_err());
        let a = Residue::new(3, 5).unwrap();
        let b = Residue::new(3, 7).unwrap();
        assert_eq!(a.checked_add(b), Err(Error::ModulusMismatch(5, 7)));
        assert_eq!(Residue::new(9, 10).unwrap().reduce(5).unwrap().value(), 4);
        assert!(Residue::new(9, 10).unwrap().reduce(3).is_err());
    }

    #[test]
    fn prime_helpers() {
        assert_eq!(prime_divisors(60), vec![2, 3, 5]);
        assert_eq!(prime_divisors(1), Vec::<i64>::new());
        assert!(is_prime(101) && is_prime(1009) && !is_prime(1001));
    }
}
