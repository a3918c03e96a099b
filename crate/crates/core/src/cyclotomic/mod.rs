//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! Canonical form: an element of conductor `n` is stored as its remainder
//! modulo the cyclotomic polynomial `Phi_n`, i.e. in the power basis
//! `1, zeta_n, ..., zeta_n^(phi(n)-1)`. Only nonzero coefficients are kept, so
//! zero is the empty term list and two values of the same conductor are equal
//! exactly when their term lists are identical. Values of different conductors
//! are compared after lifting both to the lcm of the conductors.
//!
//! [`RootExpansion`] and [`RootAccumulator`] are the non-canonical integer
//! forms used in the hot loops of character-table work: a character value is
//! a short sum of roots of unity, and products of such sums stay short.

pub mod embed;
mod phi;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use embed::Fixed;
pub use phi::{cyclotomic_polynomial, lcm, totient};

/// An exact element of `Q(zeta_n)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    terms: Vec<(u32, BigRational)>,
}

fn reduce_sparse(n: u32, mut raw: BTreeMap<u32, BigRational>) -> Vec<(u32, BigRational)> {
    let phi = cyclotomic_polynomial(n);
    let deg = (phi.len() - 1) as u32;
    while let Some((&top, _)) = raw.iter().next_back() {
        if top < deg {
            break;
        }
        let c = raw.remove(&top).unwrap();
        if c.is_zero() {
            continue;
        }
        let shift = top - deg;
        for (i, &a) in phi[..deg as usize].iter().enumerate() {
            if a != 0 {
                let slot = raw.entry(shift + i as u32).or_insert_with(BigRational::zero);
                *slot -= &c * BigRational::from_integer(a.into());
            }
        }
    }
    raw.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic { conductor: 1, terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_integer(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let terms = if q.is_zero() { Vec::new() } else { vec![(0, q)] };
        Cyclotomic { conductor: 1, terms }
    }

    /// `zeta_n^j`; negative exponents are taken mod `n`.
    pub fn root_of_unity(n: u32, j: i64) -> Self {
        Self::from_raw(n, [(j, BigRational::one())])
    }

    /// Reduces an arbitrary rational combination of `n`-th roots of unity.
    pub fn from_raw<I>(n: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        assert!(n > 0, "conductor must be positive");
        let mut raw: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (j, c) in terms {
            let e = j.rem_euclid(n as i64) as u32;
            *raw.entry(e).or_insert_with(BigRational::zero) += c;
        }
        Cyclotomic { conductor: n, terms: reduce_sparse(n, raw) }
    }

    /// Builds a value directly from canonical coefficients, rejecting
    /// exponents outside the basis.
    pub fn from_canonical(n: u32, terms: Vec<(u32, BigRational)>) -> Option<Self> {
        let deg = totient(n);
        let mut terms: Vec<_> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by_key(|(e, _)| *e);
        if terms.iter().any(|(e, _)| *e >= deg) || terms.windows(2).any(|w| w[0].0 == w[1].0) {
            return None;
        }
        Some(Cyclotomic { conductor: n, terms })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Nonzero canonical coefficients, by ascending exponent.
    pub fn terms(&self) -> &[(u32, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The same value written over `Q(zeta_m)`; `m` must be a multiple of the conductor.
    pub fn lift(&self, m: u32) -> Self {
        assert!(m.is_multiple_of(self.conductor), "cannot lift conductor {} to {}", self.conductor, m);
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as i64;
        Self::from_raw(m, self.terms.iter().map(|(e, c)| (*e as i64 * step, c.clone())))
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = lcm(self.conductor, other.conductor);
        (self.lift(m), other.lift(m))
    }

    pub fn conj(&self) -> Self {
        let n = self.conductor as i64;
        Self::from_raw(self.conductor, self.terms.iter().map(|(e, c)| (n - *e as i64, c.clone())))
    }

    /// The Galois automorphism `zeta_n -> zeta_n^k` (with `k` coprime to `n`).
    pub fn galois(&self, k: i64) -> Self {
        let n = self.conductor as i64;
        assert_eq!(k.gcd(&n), 1, "exponent must be a unit mod the conductor");
        Self::from_raw(self.conductor, self.terms.iter().map(|(e, c)| (*e as i64 * k, c.clone())))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// Whether every canonical coefficient is an integer (true for algebraic integers).
    pub fn has_integral_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// Real part, as an exact element of the same field.
    pub fn real_part(&self) -> Self {
        (self + &self.conj()).scale(&BigRational::new(1.into(), 2.into()))
    }

    /// Imaginary part as an exact element: `(z - conj z) / 2i`.
    pub fn imag_part(&self) -> Self {
        let diff = self - &self.conj();
        let m = lcm(diff.conductor, 4);
        let minus_i_half =
            Self::root_of_unity(4, 3).scale(&BigRational::new(1.into(), 2.into()));
        &diff.lift(m) * &minus_i_half.lift(m)
    }

    /// Interval enclosures of the real and imaginary parts under the
    /// embedding `zeta_n -> exp(2 pi i / n)`.
    pub fn embed(&self, bits: u32) -> (Fixed, Fixed) {
        let mut re = Fixed::zero(bits);
        let mut im = Fixed::zero(bits);
        let n = BigInt::from(self.conductor);
        for (e, c) in &self.terms {
            let a = BigRational::new(BigInt::from(*e), n.clone());
            re = re.add(&embed::cos_turn(&a, bits).scale(c));
            im = im.add(&embed::sin_turn(&a, bits).scale(c));
        }
        (re, im)
    }

    pub fn to_complex_f64(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in &self.terms {
            let t = 2.0 * std::f64::consts::PI * (*e as f64) / (self.conductor as f64);
            let c = c.to_f64().unwrap_or(f64::NAN);
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }

    /// Sign of a real value; `None` if the value is not real.
    pub fn real_sign(&self) -> Option<Ordering> {
        if *self != self.conj() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(q.cmp(&BigRational::zero()));
        }
        let mut bits = 64;
        loop {
            let (re, _) = self.embed(bits);
            if re.lo_is_positive() {
                return Some(Ordering::Greater);
            }
            if re.hi_is_negative() {
                return Some(Ordering::Less);
            }
            bits *= 2;
        }
    }

    /// Absolute value: exact when rational, otherwise a certified enclosure.
    pub fn magnitude(&self, tolerance_exponent: u32) -> MagnitudeResult {
        if let Some(q) = self.as_rational() {
            let a = q.abs();
            return MagnitudeResult { exact: Some(a.clone()), lo: a.clone(), hi: a };
        }
        let norm = self * &self.conj();
        if let Some(w) = norm.as_rational() {
            if let Some(r) = rational_sqrt(&w) {
                return MagnitudeResult { exact: Some(r.clone()), lo: r.clone(), hi: r };
            }
        }
        let tol = BigRational::new(BigInt::one(), BigInt::from(10u32).pow(tolerance_exponent));
        let mut bits = 128;
        loop {
            let (re, _) = norm.embed(bits + 8);
            let m = re.sqrt().round_to(bits);
            if m.lo_is_positive() && m.width() <= &tol * m.lo() {
                return MagnitudeResult { exact: None, lo: m.lo(), hi: m.hi() };
            }
            bits *= 2;
        }
    }
}

/// The square root of a nonnegative rational, when it is rational.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// `|z|` as an exact value when rational, always with an enclosure `[lo, hi]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MagnitudeResult {
    pub exact: Option<BigRational>,
    pub lo: BigRational,
    pub hi: BigRational,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.terms == other.terms;
        }
        let (a, b) = self.common(other);
        a.terms == b.terms
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(rhs);
        let mut raw: BTreeMap<u32, BigRational> = BTreeMap::new();
        for (e, c) in a.terms.into_iter().chain(b.terms) {
            *raw.entry(e).or_insert_with(BigRational::zero) += c;
        }
        Cyclotomic {
            conductor: a.conductor,
            terms: raw.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            conductor: self.conductor,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        let (a, b) = self.common(rhs);
        let mut raw: BTreeMap<u32, BigRational> = BTreeMap::new();
        let n = a.conductor;
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let e = (e1 + e2) % n;
                *raw.entry(e).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        Cyclotomic { conductor: n, terms: reduce_sparse(n, raw) }
    }
}

macro_rules! by_value {
    ($tr:ident, $f:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $f(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$f(&rhs)
            }
        }
    };
}
by_value!(Add, add);
by_value!(Sub, sub);
by_value!(Mul, mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match *e {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if *e == 1 {
                        write!(f, "E({})", self.conductor)?;
                    } else {
                        write!(f, "E({})^{}", self.conductor, e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// An integer combination `sum c_j zeta_n^j` with no canonical reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootExpansion {
    conductor: u32,
    terms: Vec<(u32, i64)>,
}

impl RootExpansion {
    pub fn new(conductor: u32, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let n = conductor as i64;
        let mut map: BTreeMap<u32, i64> = BTreeMap::new();
        for (e, c) in terms {
            *map.entry(e.rem_euclid(n) as u32).or_default() += c;
        }
        RootExpansion { conductor, terms: map.into_iter().filter(|(_, c)| *c != 0).collect() }
    }

    /// Uses the canonical coefficients of an algebraic integer as an expansion.
    pub fn from_cyclotomic(z: &Cyclotomic, conductor: u32) -> Option<Self> {
        let z = z.lift(conductor);
        let mut terms = Vec::with_capacity(z.terms.len());
        for (e, c) in &z.terms {
            if !c.is_integer() {
                return None;
            }
            terms.push((*e, c.to_integer().to_i64()?));
        }
        Some(RootExpansion { conductor, terms })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn terms(&self) -> &[(u32, i64)] {
        &self.terms
    }

    pub fn conj(&self) -> Self {
        let n = self.conductor as i64;
        Self::new(self.conductor, self.terms.iter().map(|(e, c)| (n - *e as i64, *c)))
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        let mut acc = RootAccumulator::new(self.conductor);
        for (e, c) in &self.terms {
            acc.add_term(*e, *c as i128);
        }
        acc.to_cyclotomic()
    }
}

/// Dense integer accumulator over `Z[x]/(x^n - 1)`, reduced mod `Phi_n` on demand.
#[derive(Clone, Debug)]
pub struct RootAccumulator {
    conductor: u32,
    coeffs: Vec<i128>,
}

impl RootAccumulator {
    pub fn new(conductor: u32) -> Self {
        RootAccumulator { conductor, coeffs: vec![0; conductor as usize] }
    }

    pub fn clear(&mut self) {
        self.coeffs.iter_mut().for_each(|c| *c = 0);
    }

    pub fn add_term(&mut self, e: u32, c: i128) {
        self.coeffs[(e % self.conductor) as usize] += c;
    }

    /// Adds `weight * a * b`.
    pub fn add_product(&mut self, weight: i64, a: &RootExpansion, b: &RootExpansion) {
        debug_assert_eq!(a.conductor, self.conductor);
        debug_assert_eq!(b.conductor, self.conductor);
        let n = self.conductor;
        let w = weight as i128;
        for &(e1, c1) in &a.terms {
            for &(e2, c2) in &b.terms {
                let e = e1 + e2;
                let e = if e >= n { e - n } else { e };
                self.coeffs[e as usize] += w * c1 as i128 * c2 as i128;
            }
        }
    }

    /// Adds `weight * a`.
    pub fn add_scaled(&mut self, weight: i64, a: &RootExpansion) {
        debug_assert_eq!(a.conductor, self.conductor);
        for &(e, c) in &a.terms {
            self.coeffs[e as usize] += weight as i128 * c as i128;
        }
    }

    /// Adds `weight * a * b * c`.
    pub fn add_triple(&mut self, weight: i64, a: &RootExpansion, b: &RootExpansion, c: &RootExpansion) {
        let n = self.conductor;
        let w = weight as i128;
        for &(e1, c1) in &a.terms {
            for &(e2, c2) in &b.terms {
                let e12 = (e1 + e2) % n;
                let w12 = w * c1 as i128 * c2 as i128;
                for &(e3, c3) in &c.terms {
                    let e = e12 + e3;
                    let e = if e >= n { e - n } else { e };
                    self.coeffs[e as usize] += w12 * c3 as i128;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.reduced().iter().all(|c| *c == 0)
    }

    /// Canonical remainder coefficients (length `phi(n)`).
    fn reduced(&self) -> Vec<i128> {
        let phi = cyclotomic_polynomial(self.conductor);
        let deg = phi.len() - 1;
        let mut v = self.coeffs.clone();
        for top in (deg..v.len()).rev() {
            let c = v[top];
            if c != 0 {
                let shift = top - deg;
                for (i, &a) in phi[..deg].iter().enumerate() {
                    if a != 0 {
                        v[shift + i] -= c * a as i128;
                    }
                }
                v[top] = 0;
            }
        }
        v.truncate(deg);
        v
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        let terms = self
            .reduced()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(e, c)| (e as u32, BigRational::from_integer(BigInt::from(c))))
            .collect();
        Cyclotomic { conductor: self.conductor, terms }
    }

    /// The value as a rational integer, if it is one.
    pub fn to_integer(&self) -> Option<i128> {
        let r = self.reduced();
        if r.iter().skip(1).all(|c| *c == 0) {
            Some(r.first().copied().unwrap_or(0))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, j: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, j)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = &(&Cyclotomic::one() + &z(3, 1)) + &z(3, 2);
        assert!(s.is_zero());
    }

    #[test]
    fn conj_of_zeta3() {
        assert_eq!(z(3, 1).conj(), z(3, 2));
    }

    #[test]
    fn i_squared() {
        assert_eq!(&z(4, 1) * &z(4, 1), Cyclotomic::from_integer(-1));
    }

    #[test]
    fn rationality() {
        assert_eq!((&z(3, 1) + &z(3, 2)).as_rational(), Some(q(-1, 1)));
        assert_eq!(z(5, 1).as_rational(), None);
        assert_eq!(Cyclotomic::from_rational(q(7, 2)).as_rational(), Some(q(7, 2)));
    }

    #[test]
    fn equality_across_conductors() {
        assert_eq!(z(6, 2), z(3, 1));
        assert_eq!(z(12, 6), Cyclotomic::from_integer(-1));
        assert_ne!(z(12, 1), z(12, 5));
    }

    #[test]
    fn magnitude_of_minus_four() {
        let m = Cyclotomic::from_integer(-4).magnitude(30);
        assert_eq!(m.exact, Some(q(4, 1)));
        assert_eq!(Cyclotomic::zero().magnitude(30).exact, Some(q(0, 1)));
    }

    #[test]
    fn magnitude_of_root_of_unity_is_exact() {
        let m = (&z(8, 1) * &Cyclotomic::from_integer(3)).magnitude(30);
        assert_eq!(m.exact, Some(q(3, 1)));
        // |1 + i| = sqrt 2, irrational
        let m = (&Cyclotomic::one() + &z(4, 1)).magnitude(30);
        assert!(m.exact.is_none());
        assert!(&m.lo * &m.lo <= q(2, 1));
    }

    #[test]
    fn golden_ratio_magnitude() {
        let v = &(&Cyclotomic::one() + &z(5, 1)) + &z(5, 4);
        let m = v.magnitude(30);
        assert!(m.exact.is_none());
        // oracle: (1 + sqrt 5) / 2 to 16 digits, then to 40 digits
        let golden = q(16180339887498948, 10_000_000_000_000_000);
        let tol = q(1, 1_000_000_000_000_000);
        assert!(m.lo.clone() - tol.clone() <= golden && golden <= m.hi.clone() + tol);
        let width = &m.hi - &m.lo;
        assert!(width <= q(1, 1) / BigRational::from_integer(BigInt::from(10u32).pow(30)) * m.lo.clone());
        let sharper = BigRational::new(
            "16180339887498948482045868343656381177203".parse().unwrap(),
            BigInt::from(10u32).pow(40),
        );
        let eps = BigRational::new(1.into(), BigInt::from(10u32).pow(38));
        assert!(m.lo <= sharper.clone() + eps.clone() && sharper - eps <= m.hi);
    }

    #[test]
    fn accumulator_reduces_like_cyclotomic() {
        let a = RootExpansion::new(12, [(1, 2), (5, -1)]);
        let b = RootExpansion::new(12, [(7, 1), (0, 3)]);
        let mut acc = RootAccumulator::new(12);
        acc.add_product(3, &a, &b);
        let expected = &(&a.to_cyclotomic() * &b.to_cyclotomic()) * &Cyclotomic::from_integer(3);
        assert_eq!(acc.to_cyclotomic(), expected);
    }

    #[test]
    fn accumulator_integer_detection() {
        let mut acc = RootAccumulator::new(7);
        for j in 0..7 {
            acc.add_term(j, 1);
        }
        assert_eq!(acc.to_integer(), Some(0));
        acc.add_term(3, 1);
        assert_eq!(acc.to_integer(), None);
    }

    #[test]
    fn real_and_imaginary_parts() {
        let v = &z(8, 1) * &Cyclotomic::from_integer(2);
        let re = v.real_part();
        let im = v.imag_part();
        assert_eq!(&re * &re, Cyclotomic::from_integer(2));
        assert_eq!(re, im);
        assert_eq!(z(4, 1).imag_part(), Cyclotomic::one());
        assert_eq!(re.real_sign(), Some(Ordering::Greater));
        assert_eq!((-&re).real_sign(), Some(Ordering::Less));
    }

    #[test]
    fn galois_twist() {
        assert_eq!(z(5, 1).galois(2), z(5, 2));
        assert_eq!(z(5, 1).galois(4), z(5, 1).conj());
    }

    #[test]
    fn display_uses_e_notation() {
        assert_eq!(z(3, 1).to_string(), "E(3)");
        assert_eq!((-&z(3, 1)).to_string(), "-E(3)");
        assert_eq!(z(3, 2).to_string(), "-1 - E(3)");
    }
}
