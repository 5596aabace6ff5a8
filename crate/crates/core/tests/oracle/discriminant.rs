//! Univariate oracle for binary sextics over F_p: Sylvester resultant of
//! `f` and `f'`, plus a rational-root test for the repeated part.
//!
//! A binary form `f(X0, X1) = Σ a_i X0^i X1^(6-i)` is dehomogenized at
//! `X1 = 1`; the point `(1:0)` is a root of multiplicity `6 - deg f`.

#![allow(dead_code)]

pub type Poly = Vec<u64>;

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn derivative(f: &Poly, p: u64) -> Poly {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * (i as u64 % p) % p)
            .collect(),
    )
}

/// Determinant mod p by Gaussian elimination.
fn det(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = a.len();
    let mut d = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(piv, c);
            d = (p - d) % p;
        }
        d = d * a[c][c] % p;
        let iv = inv(a[c][c], p);
        for r in c + 1..n {
            let f = a[r][c] * iv % p;
            if f == 0 {
                continue;
            }
            let pivot_row = a[c].clone();
            for (x, &y) in a[r].iter_mut().zip(&pivot_row).skip(c) {
                *x = (*x + p - f * y % p) % p;
            }
        }
    }
    d
}

/// Sylvester resultant of two polynomials with nonzero leading terms.
pub fn resultant(f: &Poly, g: &Poly, p: u64) -> u64 {
    let (m, n) = (f.len() - 1, g.len() - 1);
    let size = m + n;
    if size == 0 {
        return 1;
    }
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![0; size];
        for (j, &c) in f.iter().rev().enumerate() {
            row[i + j] = c;
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![0; size];
        for (j, &c) in g.iter().rev().enumerate() {
            row[i + j] = c;
        }
        rows.push(row);
    }
    det(rows, p)
}

fn rem(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut a = trim(a.clone());
    let b = trim(b.clone());
    let lb = inv(*b.last().unwrap(), p);
    while a.len() >= b.len() && !a.is_empty() {
        let shift = a.len() - b.len();
        let f = a.last().unwrap() * lb % p;
        for (i, &c) in b.iter().enumerate() {
            a[i + shift] = (a[i + shift] + p - f * c % p) % p;
        }
        a = trim(a);
    }
    a
}

pub fn gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let (mut a, mut b) = (trim(a.clone()), trim(b.clone()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn mul_mod(a: &Poly, b: &Poly, m: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    rem(&out, m, p)
}

/// True if `g` (degree ≥ 1) has a root in F_p: `gcd(g, x^p - x) ≠ 1`.
pub fn has_rational_root(g: &Poly, p: u64) -> bool {
    let mut result: Poly = vec![1];
    let mut base = rem(&vec![0, 1], g, p);
    let mut e = p;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &base, g, p);
        }
        base = mul_mod(&base, &base, g, p);
        e >>= 1;
    }
    let mut h = result;
    h.resize(h.len().max(2), 0);
    h[1] = (h[1] + p - 1) % p;
    gcd(g, &trim(h), p).len() >= 2
}

/// Oracle verdict for a binary form with coefficients `a[0..=6]` (of
/// `X0^i X1^(6-i)`), not all zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SliceVerdict {
    /// Some root over the algebraic closure is repeated.
    pub discriminant_zero: bool,
    /// Some F_p-rational root is repeated.
    pub rational_repeated_root: bool,
}

pub fn analyse(a: &[u64; 7], p: u64) -> SliceVerdict {
    let f = trim(a.to_vec());
    assert!(!f.is_empty(), "zero form");
    let deg = f.len() - 1;
    if deg <= 4 {
        // (1:0) is a root of multiplicity ≥ 2
        return SliceVerdict {
            discriminant_zero: true,
            rational_repeated_root: true,
        };
    }
    let df = derivative(&f, p);
    let disc_zero = resultant(&f, &df, p) == 0;
    let rational = disc_zero && {
        let g = gcd(&f, &df, p);
        g.len() >= 2 && has_rational_root(&g, p)
    };
    SliceVerdict {
        discriminant_zero: disc_zero,
        rational_repeated_root: rational,
    }
}

/// Coefficients of `Π (x - r_i)` times `c`.
pub fn from_roots(roots: &[u64], c: u64, p: u64) -> Poly {
    let mut f: Poly = vec![c % p];
    for &r in roots {
        let mut g = vec![0; f.len() + 1];
        for (i, &x) in f.iter().enumerate() {
            g[i + 1] = (g[i + 1] + x) % p;
            g[i] = (g[i] + (p - r % p) * x) % p;
        }
        f = g;
    }
    f
}

pub fn mul(a: &Poly, b: &Poly, p: u64) -> Poly {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// A monic irreducible quadratic `x² - n` with `n` a non-residue.
pub fn irreducible_quadratic(p: u64) -> Poly {
    let n = (2..p).find(|&n| pow_mod(n, (p - 1) / 2, p) == p - 1).unwrap();
    vec![(p - n) % p, 0, 1]
}
