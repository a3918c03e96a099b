//! Named group families.
//!
//! `dihedral:N` and `quaternion:N` take the group *order* as parameter, so
//! `dihedral:16` is the symmetry group of the regular octagon.

use super::FiniteGroup;
use crate::error::{Error, Result};

fn invalid(family: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { family: family.into(), reason: reason.into() }
}

fn check_order(order: u64, max_order: usize) -> Result<()> {
    if order > max_order as u64 {
        Err(Error::OrderTooLarge { order, max: max_order })
    } else {
        Ok(())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let phi = p - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, phi / q, p) != 1)).unwrap()
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

pub fn cyclic(n: u64, max_order: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(invalid("cyclic", "order must be positive"));
    }
    check_order(n, max_order)?;
    FiniteGroup::from_generators(format!("cyclic:{n}"), 0u64, &[1 % n], |a, b| (a + b) % n, max_order)
}

/// Dihedral group of order `n` (`n` even).
pub fn dihedral(n: u64, max_order: usize) -> Result<FiniteGroup> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(invalid("dihedral", "order must be even and at least 2"));
    }
    check_order(n, max_order)?;
    let m = n / 2;
    // (k, f) is r^k s^f
    FiniteGroup::from_generators(
        format!("dihedral:{n}"),
        (0u64, false),
        &[(1 % m, false), (0, true)],
        |&(k1, f1), &(k2, f2)| {
            let k = if f1 { (k1 + m - k2) % m } else { (k1 + k2) % m };
            (k, f1 ^ f2)
        },
        max_order,
    )
}

// (x*y)[i] = y[x[i]]: apply x first.
#[allow(clippy::ptr_arg)]
fn compose(x: &Vec<u16>, y: &Vec<u16>) -> Vec<u16> {
    x.iter().map(|&i| y[i as usize]).collect()
}

fn cycle(n: usize, points: &[usize]) -> Vec<u16> {
    let mut p: Vec<u16> = (0..n as u16).collect();
    for w in 0..points.len() {
        p[points[w]] = points[(w + 1) % points.len()] as u16;
    }
    p
}

fn factorial(n: u64) -> u64 {
    (1..=n).try_fold(1u64, |acc, k| acc.checked_mul(k)).unwrap_or(u64::MAX)
}

pub fn symmetric(n: u64, max_order: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(invalid("sym", "degree must be positive"));
    }
    check_order(factorial(n), max_order)?;
    let d = n as usize;
    let gens = if d < 2 {
        vec![]
    } else {
        vec![cycle(d, &(0..d).collect::<Vec<_>>()), cycle(d, &[0, 1])]
    };
    FiniteGroup::from_generators(format!("sym:{n}"), cycle(d, &[]), &gens, compose, max_order)
}

pub fn alternating(n: u64, max_order: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(invalid("alt", "degree must be positive"));
    }
    check_order((factorial(n) / 2).max(1), max_order)?;
    let d = n as usize;
    let gens: Vec<Vec<u16>> = (2..d).map(|i| cycle(d, &[0, 1, i])).collect();
    FiniteGroup::from_generators(format!("alt:{n}"), cycle(d, &[]), &gens, compose, max_order)
}

/// Dicyclic group of order `n = 4m` (`m >= 2`): `<a, x | a^2m, x^2 = a^m, x^-1 a x = a^-1>`.
/// For `n` a power of two this is the generalized quaternion group.
pub fn quaternion(n: u64, max_order: usize) -> Result<FiniteGroup> {
    if n < 8 || !n.is_multiple_of(4) {
        return Err(invalid("quaternion", "order must be a multiple of 4 and at least 8"));
    }
    check_order(n, max_order)?;
    let m = n / 4;
    let two_m = 2 * m;
    // (k, f) is a^k x^f
    FiniteGroup::from_generators(
        format!("quaternion:{n}"),
        (0u64, false),
        &[(1, false), (0, true)],
        |&(k1, f1), &(k2, f2)| match (f1, f2) {
            (false, _) => ((k1 + k2) % two_m, f2),
            (true, false) => ((k1 + two_m - k2) % two_m, true),
            (true, true) => ((k1 + two_m - k2 + m) % two_m, false),
        },
        max_order,
    )
}

/// Upper unitriangular 3x3 matrices over `F_p`, `p` an odd prime.
pub fn heisenberg(p: u64, max_order: usize) -> Result<FiniteGroup> {
    if p == 2 || !is_prime(p) {
        return Err(invalid("heisenberg", format!("{p} is not an odd prime")));
    }
    check_order(p * p * p, max_order)?;
    // (a, b, c) = [[1, a, c], [0, 1, b], [0, 0, 1]]
    FiniteGroup::from_generators(
        format!("heisenberg:{p}"),
        (0u64, 0u64, 0u64),
        &[(1, 0, 0), (0, 1, 0)],
        |&(a, b, c), &(x, y, z)| ((a + x) % p, (b + y) % p, (c + z + a * y) % p),
        max_order,
    )
}

/// The affine group `x -> a x + b` of `F_p`.
pub fn affine(p: u64, max_order: usize) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(invalid("aff", format!("{p} is not prime")));
    }
    check_order(p * (p - 1), max_order)?;
    let r = primitive_root(p);
    // (a, b): x -> a x + b; composition applies the left factor first
    FiniteGroup::from_generators(
        format!("aff:{p}"),
        (1u64, 0u64),
        &[(1, 1 % p), (r, 0)],
        |&(a, b), &(c, d)| (c * a % p, (c * b + d) % p),
        max_order,
    )
}

/// `SL(2, p)` as 2x2 matrices of determinant one.
pub fn special_linear(p: u64, max_order: usize) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(invalid("sl2", format!("{p} is not prime")));
    }
    check_order(p * (p * p - 1), max_order)?;
    FiniteGroup::from_generators(
        format!("sl2:{p}"),
        [1u64, 0, 0, 1],
        &[[1, 1, 0, 1], [1, 0, 1, 1]],
        |m, n| {
            [
                (m[0] * n[0] + m[1] * n[2]) % p,
                (m[0] * n[1] + m[1] * n[3]) % p,
                (m[2] * n[0] + m[3] * n[2]) % p,
                (m[2] * n[1] + m[3] * n[3]) % p,
            ]
        },
        max_order,
    )
}

/// Closes a set of permutations (one-line images, 0-based) acting on `degree` points.
pub fn permutation_group(
    label: impl Into<String>,
    degree: usize,
    generators: &[Vec<usize>],
    max_order: usize,
) -> Result<FiniteGroup> {
    let mut gens: Vec<Vec<u16>> = Vec::with_capacity(generators.len());
    for (i, g) in generators.iter().enumerate() {
        if g.len() != degree {
            return Err(invalid("perm", format!("generator {i} has {} images, expected {degree}", g.len())));
        }
        let mut seen = vec![false; degree];
        for &x in g {
            if x >= degree || std::mem::replace(&mut seen[x], true) {
                return Err(invalid("perm", format!("generator {i} is not a bijection")));
            }
        }
        gens.push(g.iter().map(|&x| x as u16).collect());
    }
    FiniteGroup::from_generators(label, cycle(degree, &[]), &gens, compose, max_order)
}
