//! Closed-form amenability constants for structured families, checked
//! against the direct sums.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::amenability::{amza, amzl, ass};
use crate::chartab::CharacterTable;
use crate::error::{Error, Result};
use crate::rational::ratio_string;

fn q(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Degree and class-size data read off a character table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupProfile {
    pub cd_set: BTreeSet<u64>,
    pub cc_set: BTreeSet<usize>,
    /// `(h, k)` when the class structure matches an abelian-by-abelian Frobenius group.
    pub frobenius: Option<(usize, usize)>,
    /// `(p, n)` when the group is extraspecial of order `p^(2n+1)`.
    pub extraspecial: Option<(u64, u32)>,
}

impl GroupProfile {
    pub fn from_table(t: &CharacterTable) -> Self {
        GroupProfile {
            cd_set: t.degrees().iter().copied().collect(),
            cc_set: t.class_sizes().iter().copied().collect(),
            frobenius: frobenius_fingerprint(t),
            extraspecial: extraspecial_fingerprint(t),
        }
    }

    /// `m` when `cd(G) = {1, m}`.
    pub fn two_degrees(&self) -> Option<u64> {
        two_set(&self.cd_set)
    }

    /// `s` when `cc(G) = {1, s}`.
    pub fn two_class_sizes(&self) -> Option<usize> {
        two_set(&self.cc_set)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cd_set": self.cd_set,
            "cc_set": self.cc_set,
            "frobenius": self.frobenius.map(|(h, k)| json!({"h": h, "k": k})),
            "extraspecial": self.extraspecial.map(|(p, n)| json!({"p": p, "n": n})),
        })
    }
}

fn two_set<T: Copy + PartialEq + From<u8>>(s: &BTreeSet<T>) -> Option<T> {
    let v: Vec<T> = s.iter().copied().collect();
    (v.len() == 2 && v[0] == T::from(1)).then(|| v[1])
}

/// Trivial center, `h` linear characters and `(k-1)/h` of degree `h`,
/// `(k-1)/h` classes of size `h` and `h-1` classes of size `k`.
fn frobenius_fingerprint(t: &CharacterTable) -> Option<(usize, usize)> {
    let n = t.order();
    if t.is_abelian() || t.center_order() != 1 {
        return None;
    }
    let sizes = t.class_sizes();
    let count = |s: usize| sizes.iter().filter(|&&x| x == s).count();
    let deg_count = |d: u64| t.degrees().iter().filter(|&&x| x == d).count();
    (2..n).filter(|h| n.is_multiple_of(*h)).find_map(|h| {
        let k = n / h;
        if !(k - 1).is_multiple_of(h) || h >= k {
            return None;
        }
        let m = (k - 1) / h;
        let ok = count(h) == m
            && count(k) == h - 1
            && 1 + m + (h - 1) == t.class_count()
            && deg_count(1) == h
            && deg_count(h as u64) == m;
        ok.then_some((h, k))
    })
}

/// `|G| = p^(2n+1)`, `G' = Z(G)` of order `p`, and every `p`-th power central.
fn extraspecial_fingerprint(t: &CharacterTable) -> Option<(u64, u32)> {
    let z = t.center_order();
    if t.is_abelian() || z < 2 || !crate::group::families::is_prime(z as u64) || t.derived_order() != z {
        return None;
    }
    let p = z as u64;
    let mut order = t.order() as u64;
    let mut e = 0u32;
    while order.is_multiple_of(p) {
        order /= p;
        e += 1;
    }
    if order != 1 || e.is_multiple_of(2) {
        return None;
    }
    let central: BTreeSet<usize> = t.central_classes().into_iter().collect();
    let power_central = (0..t.class_count()).all(|c| central.contains(&t.power(c, p as i64)));
    power_central.then_some((p, (e - 1) / 2))
}

/// `1 + (2(h^2-1)/h)(1 - (h-1)/k)(1 - 1/k)`.
pub fn frobenius_formula(h: u64, k: u64) -> Result<BigRational> {
    if h < 1 || k < 2 || !(k - 1).is_multiple_of(h) {
        return Err(Error::Precondition(format!("need h >= 1, k >= 2 and h | k - 1, got h = {h}, k = {k}")));
    }
    let (hq, kq) = (int(h), int(k));
    let one = BigRational::one();
    Ok(&one + int(2) * (&hq * &hq - &one) / &hq * (&one - (&hq - &one) / &kq) * (&one - &one / &kq))
}

/// The displayed `ass(G)` expression from the Frobenius computation, with the
/// open parenthesis read as closing after `k^2`:
/// `h^2 - (h^2-1)(1 + h(k-1) + (h-1)k^2) / (h k^2)`.
pub fn frobenius_ass_formula(h: u64, k: u64) -> BigRational {
    let (h, k) = (h as i64, k as i64);
    int(h * h) - q((h * h - 1) * (1 + h * (k - 1) + (h - 1) * k * k), h * k * k)
}

/// `1 + 2(m^2-1)(1 - sum |C|^2 / (|G| |G'|))`, the class-sum form of `AMZL` for `cd(G) = {1, m}`.
pub fn two_cd_formula(t: &CharacterTable, m: u64) -> Result<BigRational> {
    let profile = GroupProfile::from_table(t);
    if m <= 1 || profile.two_degrees() != Some(m) {
        return Err(Error::Precondition(format!("cd(G) = {:?} is not {{1, {m}}}", profile.cd_set)));
    }
    let sum_sq: u64 = t.class_sizes().iter().map(|&c| (c * c) as u64).sum();
    let m2 = int(m * m);
    let one = BigRational::one();
    Ok(&one + int(2) * (&m2 - &one) * (&one - q(sum_sq, (t.order() * t.derived_order()) as u64)))
}

/// `1 + 2(s-1)(1 - |Z| sum d^4 / |G|^2)`, the form of `AMZA` for `cc(G) = {1, s}`.
pub fn two_cc_formula(t: &CharacterTable, s: usize) -> Result<BigRational> {
    two_cc_with(t, s, |t| q(t.center_order() as u64, (t.order() * t.order()) as u64))
}

/// The same with `1 / (|G| |L(G)|)` in place of `|Z| / |G|^2`, where `L(G)` are the
/// linear characters. The two agree exactly when `|L(G)| |Z(G)| = |G|`.
pub fn two_cc_formula_linear(t: &CharacterTable, s: usize) -> Result<BigRational> {
    two_cc_with(t, s, |t| q(1u64, (t.order() * t.linear_count()) as u64))
}

fn two_cc_with(t: &CharacterTable, s: usize, factor: impl Fn(&CharacterTable) -> BigRational) -> Result<BigRational> {
    let profile = GroupProfile::from_table(t);
    if s <= 1 || profile.two_class_sizes() != Some(s) {
        return Err(Error::Precondition(format!("cc(G) = {:?} is not {{1, {s}}}", profile.cc_set)));
    }
    let sum4: u64 = t.degrees().iter().map(|d| d.pow(4)).sum();
    let one = BigRational::one();
    Ok(&one + int(2) * int(s as u64 - 1) * (&one - factor(t) * int(sum4)))
}

/// `f(x, y) = x + y - k(xy + x + y)/|G| + xy k^2/|G|^2`.
pub fn f_symmetric(x: &BigRational, y: &BigRational, k: u64, order: u64) -> BigRational {
    let (k, g) = (int(k), int(order));
    x + y - &k * (x * y + x + y) / &g + x * y * &k * &k / (&g * &g)
}

/// `1 + 2(1 - 1/p^(2n))(1 - 1/p)`.
pub fn extraspecial_formula(p: u64, n: u32) -> BigRational {
    let one = BigRational::one();
    &one + int(2) * (&one - q(1u64, p.pow(2 * n))) * (&one - q(1u64, p))
}

/// Theorem identifiers accepted by [`verify_theorem`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremId {
    Frobenius,
    TwoDegrees,
    TwoClassSizes,
    TwoAndTwo,
}

impl TheoremId {
    pub const ALL: [TheoremId; 4] = [TheoremId::Frobenius, TheoremId::TwoDegrees, TheoremId::TwoClassSizes, TheoremId::TwoAndTwo];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Frobenius => "thm-2.2",
            TheoremId::TwoDegrees => "thm-4.2",
            TheoremId::TwoClassSizes => "thm-4.4",
            TheoremId::TwoAndTwo => "thm-4.6",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter {
                family: "theorem".into(),
                reason: format!("unknown theorem id {s:?}; expected one of thm-2.2, thm-4.2, thm-4.4, thm-4.6"),
            })
    }
}

/// Closed form against the direct computation.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationRecord {
    pub theorem: TheoremId,
    pub applicable: bool,
    pub closed_form: Option<BigRational>,
    pub direct_amza: BigRational,
    pub direct_amzl: Option<BigRational>,
    pub equal: Option<bool>,
    /// For thm-4.6: `(2 f(m^2, s), 2 f(s, m^2))`.
    pub f_values: Option<(BigRational, BigRational)>,
}

impl VerificationRecord {
    pub fn to_json(&self) -> Value {
        let r = |q: &Option<BigRational>| q.as_ref().map(ratio_string);
        let mut v = json!({
            "theorem": self.theorem.as_str(),
            "applicable": self.applicable,
            "closed_form": r(&self.closed_form),
            "direct_amza": ratio_string(&self.direct_amza),
            "direct_amzl": r(&self.direct_amzl),
            "equal": self.equal,
        });
        if let Some((a, b)) = &self.f_values {
            v["two_f_m2_s"] = json!(ratio_string(a));
            v["two_f_s_m2"] = json!(ratio_string(b));
        }
        v
    }
}

/// Evaluates the named closed form when the table satisfies its hypotheses.
pub fn verify_theorem(t: &CharacterTable, which: TheoremId, tolerance_exponent: u32) -> Result<VerificationRecord> {
    let profile = GroupProfile::from_table(t);
    let direct_amza = amza(t)?;
    let direct_amzl = amzl(t, tolerance_exponent).value().cloned();
    let mut f_values = None;
    let closed_form = match which {
        TheoremId::Frobenius => match profile.frobenius {
            Some((h, k)) => Some(frobenius_formula(h as u64, k as u64)?),
            None => None,
        },
        TheoremId::TwoDegrees => match profile.two_degrees() {
            Some(m) => Some(two_cd_formula(t, m)?),
            None => None,
        },
        TheoremId::TwoClassSizes => match profile.two_class_sizes() {
            Some(s) => Some(two_cc_formula(t, s)?),
            None => None,
        },
        TheoremId::TwoAndTwo => match (profile.two_degrees(), profile.two_class_sizes()) {
            (Some(m), Some(s)) => {
                let (k, g) = (t.class_count() as u64, t.order() as u64);
                let (m2, s) = (int(m * m), int(s as u64));
                let two = int(2);
                f_values = Some((&two * f_symmetric(&m2, &s, k, g), &two * f_symmetric(&s, &m2, k, g)));
                Some(BigRational::one() + &two * f_symmetric(&s, &m2, k, g))
            }
            _ => None,
        },
    };
    let applicable = closed_form.is_some();
    let equal = closed_form.as_ref().map(|c| {
        let one = BigRational::one();
        match which {
            TheoremId::TwoDegrees => direct_amzl.as_ref() == Some(c),
            TheoremId::TwoClassSizes => *c == direct_amza,
            TheoremId::Frobenius => *c == direct_amza && direct_amzl.as_ref() == Some(c),
            TheoremId::TwoAndTwo => {
                let (a, b) = f_values.as_ref().expect("set above");
                direct_amzl.as_ref() == Some(&direct_amza)
                    && &(&direct_amzl.clone().unwrap_or_else(BigRational::zero) - &one) == a
                    && &(&direct_amza - &one) == b
            }
        }
    });
    Ok(VerificationRecord { theorem: which, applicable, closed_form, direct_amza, direct_amzl, equal, f_values })
}

/// The displayed Frobenius `ass` expression next to the direct value.
pub fn frobenius_ass_check(t: &CharacterTable) -> Result<Option<(BigRational, BigRational)>> {
    match GroupProfile::from_table(t).frobenius {
        Some((h, k)) => Ok(Some((frobenius_ass_formula(h as u64, k as u64), ass(t)?))),
        None => Ok(None),
    }
}
