//! Certified fixed-point interval enclosures for the complex embedding
//! `zeta_n -> exp(2 pi i / n)`.
//!
//! An interval is a pair of big integers scaled by `2^-bits`. All rounding is
//! outward, so every result contains the true real number.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A closed interval `[lo, hi] * 2^-bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn floor_shr(x: &BigInt, s: u32) -> BigInt {
    // BigInt >> rounds towards negative infinity.
    x >> s
}

fn ceil_shr(x: &BigInt, s: u32) -> BigInt {
    -((-x) >> s)
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Fixed {
    pub fn zero(bits: u32) -> Self {
        Fixed { lo: BigInt::zero(), hi: BigInt::zero(), bits }
    }

    pub fn point(v: BigInt, bits: u32) -> Self {
        Fixed { lo: v.clone(), hi: v, bits }
    }

    /// Smallest interval at this precision containing the rational `q`.
    pub fn from_rational(q: &BigRational, bits: u32) -> Self {
        let scaled = q.numer() << bits;
        Fixed { lo: floor_div(&scaled, q.denom()), hi: ceil_div(&scaled, q.denom()), bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn lo(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.bits)
    }

    pub fn hi(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.bits)
    }

    pub fn width(&self) -> BigRational {
        self.hi() - self.lo()
    }

    pub fn lo_is_positive(&self) -> bool {
        self.lo.sign() == Sign::Plus
    }

    pub fn hi_is_negative(&self) -> bool {
        self.hi.sign() == Sign::Minus
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo_is_positive() && !self.hi_is_negative()
    }

    pub fn add(&self, other: &Fixed) -> Fixed {
        assert_eq!(self.bits, other.bits);
        Fixed { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi, bits: self.bits }
    }

    pub fn neg(&self) -> Fixed {
        Fixed { lo: -&self.hi, hi: -&self.lo, bits: self.bits }
    }

    pub fn mul(&self, other: &Fixed) -> Fixed {
        assert_eq!(self.bits, other.bits);
        let prods = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let min = prods.iter().min().unwrap();
        let max = prods.iter().max().unwrap();
        Fixed { lo: floor_shr(min, self.bits), hi: ceil_shr(max, self.bits), bits: self.bits }
    }

    pub fn scale(&self, q: &BigRational) -> Fixed {
        let a = floor_div(&(&self.lo * q.numer()), q.denom());
        let b = floor_div(&(&self.hi * q.numer()), q.denom());
        let c = ceil_div(&(&self.lo * q.numer()), q.denom());
        let d = ceil_div(&(&self.hi * q.numer()), q.denom());
        Fixed { lo: a.min(b), hi: c.max(d), bits: self.bits }
    }

    /// Square root; a negative lower end is clamped to zero.
    pub fn sqrt(&self) -> Fixed {
        let lo = if self.lo.is_negative() { BigInt::zero() } else { self.lo.clone() };
        let hi = if self.hi.is_negative() { BigInt::zero() } else { self.hi.clone() };
        let lo_s = (lo << self.bits).sqrt();
        let hi_scaled = hi << self.bits;
        let mut hi_s = hi_scaled.sqrt();
        if &hi_s * &hi_s < hi_scaled {
            hi_s += 1;
        }
        Fixed { lo: lo_s, hi: hi_s, bits: self.bits }
    }

    /// Rounds outward to a coarser precision.
    pub fn round_to(&self, bits: u32) -> Fixed {
        assert!(bits <= self.bits);
        let s = self.bits - bits;
        Fixed { lo: floor_shr(&self.lo, s), hi: ceil_shr(&self.hi, s), bits }
    }

    fn widen(&self, ulps: u64) -> Fixed {
        Fixed { lo: &self.lo - ulps, hi: &self.hi + ulps, bits: self.bits }
    }
}

const GUARD: u32 = 24;

// atan(1/x) at `w` bits, with an absolute error bound in ulps.
fn atan_inv(x: u64, w: u32) -> (BigInt, u64) {
    let one = BigInt::one() << w;
    let x2 = BigInt::from(x * x);
    let mut power = one / x;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power = &power / &x2;
        k += 1;
    }
    (sum, 3 * k + 2)
}

/// Enclosure of pi.
pub fn pi(bits: u32) -> Fixed {
    let w = bits + GUARD;
    let (a, ea) = atan_inv(5, w);
    let (b, eb) = atan_inv(239, w);
    let mid = a * 16 - b * 4;
    let err = 16 * ea + 4 * eb;
    Fixed::point(mid, w).widen(err).round_to(bits)
}

// cos(x) for a point x = v * 2^-w with 0 <= x <= 2, plus an error bound in ulps.
fn cos_point(v: &BigInt, w: u32) -> (BigInt, u64) {
    let one = BigInt::one() << w;
    let x2 = (v * v) >> w;
    let mut term = one.clone();
    let mut sum = one;
    let mut k: u64 = 1;
    while !term.is_zero() {
        term = ((&term * &x2) >> w) / BigInt::from((2 * k - 1) * (2 * k));
        if k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        k += 1;
    }
    (sum, 16 * (k + 2))
}

/// Enclosure of `cos(2 pi a)`.
pub fn cos_turn(a: &BigRational, bits: u32) -> Fixed {
    let mut a = a - a.floor();
    let half = BigRational::new(1.into(), 2.into());
    let quarter = BigRational::new(1.into(), 4.into());
    if a > half {
        a = BigRational::one() - a;
    }
    if a > quarter {
        return cos_turn(&(half - a), bits).neg();
    }
    if a.is_zero() {
        return Fixed::point(BigInt::one() << bits, bits);
    }
    let w = bits + GUARD;
    // theta = 2 pi a, in [0, pi/2]; cos is decreasing there.
    let theta = pi(w).scale(&(a * BigRational::from_integer(2.into())));
    let (c_hi_arg, e1) = cos_point(&theta.hi, w);
    let (c_lo_arg, e2) = cos_point(&theta.lo, w);
    Fixed { lo: c_hi_arg - e1, hi: c_lo_arg + e2, bits: w }.round_to(bits)
}

/// Enclosure of `sin(2 pi a)`.
pub fn sin_turn(a: &BigRational, bits: u32) -> Fixed {
    let quarter = BigRational::new(1.into(), 4.into());
    cos_turn(&(quarter - a), bits)
}
