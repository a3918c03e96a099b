//! Amenability constants of `ZA(G)` and `ZL^1(G)` from a character table.
//!
//! With `S(chi, chi') = sum_C |C|^2 chi(C) conj(chi'(C))` and
//! `T(C, C') = sum_chi d_chi^2 chi(C) conj(chi(C'))`:
//!
//! ```text
//! AMZA = sum_{chi, chi'} d_chi d_chi' |S(chi, chi')| / |G|^2
//! AMZL = sum_{C, C'} |C| |C'| |T(C, C')| / |G|^2
//! ass  = sum_chi d_chi^2 S(chi, chi) / |G|^2        (the common diagonal part)
//! ```
//!
//! Every `S` is a rational integer divisible by `|Z(G)|`, so AMZA is always
//! exact. `T` is an algebraic integer; when it is not rational its absolute
//! value is enclosed in a certified interval.

mod hypergroup;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::chartab::CharacterTable;
use crate::cyclotomic::{RootAccumulator, RootExpansion};
use crate::error::{Error, Result};
use crate::rational::{decimal_string, exact_with_decimal, ratio_string, DECIMAL_PLACES};

pub use hypergroup::{conj_hypergroup, dual_hypergroup, hypergroup_am, Hypergroup};

/// Default relative tolerance `10^-30` for magnitude enclosures.
pub const DEFAULT_TOLERANCE_EXPONENT: u32 = 30;

/// An exact value, or a certified enclosure `[lo, hi]` of it.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactOrEnclosed {
    pub exact: Option<BigRational>,
    pub lo: BigRational,
    pub hi: BigRational,
    /// The unique rational with denominator dividing the reconstruction
    /// modulus inside the enclosure, when the enclosure is narrow enough.
    pub reconstructed: Option<BigRational>,
}

impl ExactOrEnclosed {
    pub fn exact(q: BigRational) -> Self {
        ExactOrEnclosed { lo: q.clone(), hi: q.clone(), exact: Some(q), reconstructed: None }
    }

    /// An enclosure; reconstruction is tried against multiples of `1/modulus`.
    pub fn enclosed(lo: BigRational, hi: BigRational, modulus: &BigInt) -> Self {
        let step = BigRational::from_integer(modulus.clone());
        let first = (&lo * &step).ceil().to_integer();
        let last = (&hi * &step).floor().to_integer();
        let reconstructed = (first == last && (&hi - &lo) * &step < BigRational::from_integer(1.into()))
            .then(|| BigRational::new(first, modulus.clone()));
        ExactOrEnclosed { exact: None, lo, hi, reconstructed }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// The exact value, or failing that the reconstructed one.
    pub fn value(&self) -> Option<&BigRational> {
        self.exact.as_ref().or(self.reconstructed.as_ref())
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// `"7/3 (2.333333333333)"`, or an interval rendering.
    pub fn render(&self) -> String {
        match &self.exact {
            Some(q) => exact_with_decimal(q),
            None => {
                let mut s = format!(
                    "[{}, {}]",
                    decimal_string(&self.lo, DECIMAL_PLACES),
                    decimal_string(&self.hi, DECIMAL_PLACES)
                );
                if let Some(r) = &self.reconstructed {
                    s.push_str(&format!(" ~ {}", exact_with_decimal(r)));
                }
                s
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "exact": self.exact.as_ref().map(ratio_string),
            "decimal": self.exact.as_ref().map(|q| decimal_string(q, DECIMAL_PLACES)),
            "lo": ratio_string(&self.lo),
            "hi": ratio_string(&self.hi),
            "reconstructed": self.reconstructed.as_ref().map(ratio_string),
        })
    }
}

/// All quantities for one group.
#[derive(Clone, Debug, PartialEq)]
pub struct AmenabilityReport {
    pub label: String,
    pub group_order: usize,
    pub center_order: usize,
    pub amza: ExactOrEnclosed,
    pub amzl: ExactOrEnclosed,
    pub ass: BigRational,
    pub amza_off: ExactOrEnclosed,
    /// `S(chi, chi')`, rows and columns in character order.
    pub inner_sums_za: Vec<Vec<i128>>,
    /// Every `S(chi, chi')` is divisible by `|Z(G)|`.
    pub divisibility_ok: bool,
    /// Every `T(C, C')` turned out to be a rational integer.
    pub amzl_inner_integral: bool,
}

impl AmenabilityReport {
    pub fn to_json(&self) -> Value {
        let sums: Vec<Vec<Value>> = self
            .inner_sums_za
            .iter()
            .map(|r| r.iter().map(|&v| v.to_i64().map_or_else(|| json!(v.to_string()), |x| json!(x))).collect())
            .collect();
        json!({
            "label": self.label,
            "group_order": self.group_order,
            "center_order": self.center_order,
            "amza": self.amza.to_json(),
            "amzl": self.amzl.to_json(),
            "ass": {"exact": ratio_string(&self.ass), "decimal": decimal_string(&self.ass, DECIMAL_PLACES)},
            "amza_off": self.amza_off.to_json(),
            "inner_sums_za": sums,
            "divisibility_ok": self.divisibility_ok,
            "amzl_inner_integral": self.amzl_inner_integral,
        })
    }
}

fn order_squared(t: &CharacterTable) -> BigInt {
    BigInt::from(t.order()).pow(2)
}

fn conjugates(t: &CharacterTable) -> Vec<Vec<RootExpansion>> {
    t.expansions().iter().map(|r| r.iter().map(RootExpansion::conj).collect()).collect()
}

/// The matrix `S(chi, chi') = sum_C |C|^2 chi(C) conj(chi'(C))`, checked to be integral.
pub fn za_inner_sums(t: &CharacterTable) -> Result<Vec<Vec<i128>>> {
    let k = t.class_count();
    let e = t.expansions();
    let conj = conjugates(t);
    let w: Vec<i64> = t.class_sizes().iter().map(|&s| (s * s) as i64).collect();
    let mut acc = RootAccumulator::new(t.conductor());
    let mut s = vec![vec![0i128; k]; k];
    for a in 0..k {
        for b in a..k {
            acc.clear();
            for c in 0..k {
                acc.add_product(w[c], &e[a][c], &conj[b][c]);
            }
            let v = acc.to_integer().ok_or_else(|| {
                Error::Integrality(format!("inner sum for characters {a} and {b} is not a rational integer"))
            })?;
            s[a][b] = v;
            s[b][a] = v;
        }
    }
    Ok(s)
}

fn amza_from_sums(t: &CharacterTable, s: &[Vec<i128>]) -> (BigRational, BigRational) {
    let d = t.degrees();
    let mut total = BigInt::zero();
    let mut diag = BigInt::zero();
    for (a, row) in s.iter().enumerate() {
        for (b, &v) in row.iter().enumerate() {
            let term = BigInt::from(d[a]) * BigInt::from(d[b]) * BigInt::from(v.abs());
            if a == b {
                diag += &term;
            }
            total += term;
        }
    }
    let n2 = order_squared(t);
    (BigRational::new(total, n2.clone()), BigRational::new(diag, n2))
}

/// `AM(ZA(G))`, exactly.
pub fn amza(t: &CharacterTable) -> Result<BigRational> {
    Ok(amza_from_sums(t, &za_inner_sums(t)?).0)
}

/// The auxiliary minorant `ass(G)`, exactly.
pub fn ass(t: &CharacterTable) -> Result<BigRational> {
    let k = t.class_count();
    let e = t.expansions();
    let conj = conjugates(t);
    let mut acc = RootAccumulator::new(t.conductor());
    let mut total = BigInt::zero();
    for chi in 0..k {
        acc.clear();
        for c in 0..k {
            let s = t.class_sizes()[c] as i64;
            acc.add_product(s * s, &e[chi][c], &conj[chi][c]);
        }
        let v = acc
            .to_integer()
            .ok_or_else(|| Error::Integrality(format!("sum of |chi(C)|^2 for character {chi} is not rational")))?;
        total += BigInt::from(t.degrees()[chi]).pow(2) * BigInt::from(v);
    }
    Ok(BigRational::new(total, order_squared(t)))
}

/// `AM(ZL^1(G))` plus whether every inner sum was a rational integer.
#[derive(Clone, Debug, PartialEq)]
pub struct AmzlResult {
    pub value: ExactOrEnclosed,
    pub all_inner_integral: bool,
}

pub fn amzl_detailed(t: &CharacterTable, tolerance_exponent: u32) -> AmzlResult {
    let k = t.class_count();
    let e = t.expansions();
    let conj = conjugates(t);
    let d2: Vec<i64> = t.degrees().iter().map(|&d| (d * d) as i64).collect();
    let sizes = t.class_sizes();
    let mut acc = RootAccumulator::new(t.conductor());
    let mut exact_sum = BigRational::zero();
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    let mut all_exact = true;
    let mut all_integral = true;
    for c in 0..k {
        for c2 in c..k {
            acc.clear();
            for chi in 0..k {
                acc.add_product(d2[chi], &e[chi][c], &conj[chi][c2]);
            }
            let mult = if c == c2 { 1 } else { 2 };
            let weight = BigRational::from_integer(BigInt::from(sizes[c] * sizes[c2] * mult));
            let (m_lo, m_hi, m_exact) = match acc.to_integer() {
                Some(v) => {
                    let q = BigRational::from_integer(BigInt::from(v.abs()));
                    (q.clone(), q.clone(), Some(q))
                }
                None => {
                    all_integral = false;
                    let m = acc.to_cyclotomic().magnitude(tolerance_exponent);
                    (m.lo, m.hi, m.exact)
                }
            };
            match m_exact {
                Some(q) => {
                    exact_sum += &weight * &q;
                    lo += &weight * &q;
                    hi += &weight * q;
                }
                None => {
                    all_exact = false;
                    lo += &weight * m_lo;
                    hi += &weight * m_hi;
                }
            }
        }
    }
    let n2 = BigRational::from_integer(order_squared(t));
    let value = if all_exact {
        ExactOrEnclosed::exact(exact_sum / n2)
    } else {
        ExactOrEnclosed::enclosed(lo / &n2, hi / &n2, &order_squared(t))
    };
    AmzlResult { value, all_inner_integral: all_integral }
}

/// `AM(ZL^1(G))`: exact when every inner magnitude is, else a certified enclosure.
pub fn amzl(t: &CharacterTable, tolerance_exponent: u32) -> ExactOrEnclosed {
    amzl_detailed(t, tolerance_exponent).value
}

/// Every quantity at once.
pub fn report(t: &CharacterTable, tolerance_exponent: u32) -> Result<AmenabilityReport> {
    let sums = za_inner_sums(t)?;
    let (za, diag) = amza_from_sums(t, &sums);
    let z = t.center_order() as i128;
    let divisibility_ok = sums.iter().flatten().all(|v| v % z == 0);
    let ass_value = ass(t)?;
    debug_assert_eq!(diag, ass_value);
    let zl = amzl_detailed(t, tolerance_exponent);
    Ok(AmenabilityReport {
        label: t.label().to_string(),
        group_order: t.order(),
        center_order: t.center_order(),
        amza_off: ExactOrEnclosed::exact(&za - &ass_value),
        amza: ExactOrEnclosed::exact(za),
        amzl: zl.value,
        ass: ass_value,
        inner_sums_za: sums,
        divisibility_ok,
        amzl_inner_integral: zl.all_inner_integral,
    })
}

/// `sum_{chi, chi'} d d' |sum_{z in Z} chi(z) conj(chi'(z))| / |G|^2`, which is always 1.
pub fn center_sum_check(t: &CharacterTable) -> Result<BigRational> {
    let k = t.class_count();
    let e = t.expansions();
    let conj = conjugates(t);
    let central = t.central_classes();
    let d = t.degrees();
    let mut acc = RootAccumulator::new(t.conductor());
    let mut total = BigInt::zero();
    for a in 0..k {
        for b in 0..k {
            acc.clear();
            for &z in &central {
                acc.add_product(1, &e[a][z], &conj[b][z]);
            }
            let v = acc
                .to_integer()
                .ok_or_else(|| Error::Integrality(format!("center sum for characters {a} and {b} is not rational")))?;
            total += BigInt::from(d[a]) * BigInt::from(d[b]) * BigInt::from(v.abs());
        }
    }
    Ok(BigRational::new(total, order_squared(t)))
}

/// Both sides of the quotient-by-center bound.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientCenterCheck {
    pub amza_g: BigRational,
    pub amza_quotient: BigRational,
    pub center_order: usize,
    /// `AMZA(G) >= AMZA(G/Z) / |Z|`
    pub stated_holds: bool,
    /// `AMZA(G) >= |Z| AMZA(G/Z)`, recorded but not asserted.
    pub proof_line_holds: bool,
}

/// `tq` must be the table of `G / Z(G)`.
pub fn quotient_center_inequality(t: &CharacterTable, tq: &CharacterTable) -> Result<QuotientCenterCheck> {
    let z = t.center_order();
    if tq.order() * z != t.order() {
        return Err(Error::Precondition(format!(
            "quotient has order {}, expected |G|/|Z| = {}",
            tq.order(),
            t.order() / z
        )));
    }
    let amza_g = amza(t)?;
    let amza_quotient = amza(tq)?;
    let zq = BigRational::from_integer(BigInt::from(z));
    Ok(QuotientCenterCheck {
        stated_holds: amza_g >= &amza_quotient / &zq,
        proof_line_holds: amza_g >= &amza_quotient * &zq,
        amza_g,
        amza_quotient,
        center_order: z,
    })
}

/// `AMZA(G) * |G|^2`, which must be divisible by `|Z(G)|`.
pub fn scaled_amza(t: &CharacterTable) -> Result<BigInt> {
    let q = amza(t)? * BigRational::from_integer(order_squared(t));
    if !q.is_integer() {
        return Err(Error::Integrality("AMZA |G|^2 is not an integer".into()));
    }
    Ok(q.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chartab::character_table;
    use crate::group::make_group;

    fn table(spec: &str) -> CharacterTable {
        character_table(&make_group(spec).unwrap()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn s3_values() {
        let t = table("sym:3");
        let s = za_inner_sums(&t).unwrap();
        assert_eq!((0..3).map(|i| s[i][i]).collect::<Vec<_>>(), vec![14, 14, 8]);
        let mut off: Vec<i128> = vec![s[0][1].abs(), s[0][2].abs(), s[1][2].abs()];
        off.sort();
        assert_eq!(off, vec![2, 2, 4]);
        assert_eq!(amza(&t).unwrap(), q(7, 3));
        assert_eq!(ass(&t).unwrap(), q(5, 3));
        assert_eq!(amzl(&t, 30).exact, Some(q(7, 3)));
        assert_eq!(center_sum_check(&t).unwrap(), q(1, 1));
    }

    #[test]
    fn abelian_groups_are_one() {
        for spec in ["cyclic:1", "cyclic:7", "direct(cyclic:2,cyclic:4)"] {
            let t = table(spec);
            let r = report(&t, 30).unwrap();
            assert_eq!(r.amza.exact, Some(q(1, 1)), "{spec}");
            assert_eq!(r.amzl.exact, Some(q(1, 1)), "{spec}");
            assert_eq!(r.ass, q(1, 1), "{spec}");
        }
    }

    #[test]
    fn report_consistency() {
        let t = table("dihedral:8");
        let r = report(&t, 30).unwrap();
        assert_eq!(r.amza.exact, Some(q(7, 4)));
        assert_eq!(r.amza_off.exact.clone().unwrap() + &r.ass, q(7, 4));
        assert!(r.divisibility_ok);
        let json = r.to_json();
        assert_eq!(json["amza"]["exact"], "7/4");
        assert_eq!(json["amza"]["decimal"], "1.750000000000");
    }

    #[test]
    fn quotient_center() {
        let g = make_group("dihedral:8").unwrap();
        let t = character_table(&g).unwrap();
        let z = crate::group::normal_closure(&g, &g.center());
        let tq = character_table(&crate::group::quotient(&g, &z).unwrap()).unwrap();
        let c = quotient_center_inequality(&t, &tq).unwrap();
        assert_eq!(c.amza_quotient, q(1, 1));
        assert!(c.stated_holds);
        // 7/4 < 2 * 1, so the stronger bound fails already for D8
        assert!(!c.proof_line_holds);
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(36);
        let e = ExactOrEnclosed::enclosed(q(2333, 1000), q(2334, 1000), &m);
        assert_eq!(e.reconstructed, Some(q(7, 3)));
        let wide = ExactOrEnclosed::enclosed(q(2, 1), q(3, 1), &m);
        assert_eq!(wide.reconstructed, None);
    }
}
