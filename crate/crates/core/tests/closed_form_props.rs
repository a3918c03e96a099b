use central_fourier::amenability::{amza, amzl, DEFAULT_TOLERANCE_EXPONENT};
use central_fourier::catalog::builtin_corpus;
use central_fourier::chartab::character_table;
use central_fourier::closed_forms::{
    extraspecial_formula, f_symmetric, frobenius_ass_check, frobenius_formula, verify_theorem, GroupProfile, TheoremId,
};
use central_fourier::group::make_group;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #[test]
    fn f_is_symmetric(xn in 0i64..50, yn in 0i64..50, d in 1i64..7, k in 1u64..40, order in 1u64..400) {
        let (x, y) = (q(xn, d), q(yn, d + 1));
        prop_assert_eq!(f_symmetric(&x, &y, k, order), f_symmetric(&y, &x, k, order));
    }

    #[test]
    fn frobenius_formula_is_at_least_one(h in 1u64..12, j in 1u64..6) {
        let k = h * j + 1;
        let v = frobenius_formula(h, k).unwrap();
        prop_assert!(v >= q(1, 1));
        prop_assert_eq!(v == q(1, 1), h == 1);
    }

    #[test]
    fn extraspecial_formula_increases_in_n(p in prop::sample::select(vec![2u64, 3, 5, 7]), n in 1u32..4) {
        prop_assert!(extraspecial_formula(p, n) < extraspecial_formula(p, n + 1));
        prop_assert!(extraspecial_formula(p, n) < q(3, 1));
    }
}

#[test]
fn frobenius_groups_match_direct_values() {
    for spec in ["dihedral:6", "dihedral:10", "dihedral:14", "dihedral:22", "aff:3", "aff:5", "aff:7", "alt:4"] {
        let t = character_table(&make_group(spec).unwrap()).unwrap();
        let (h, k) = GroupProfile::from_table(&t).frobenius.unwrap_or_else(|| panic!("{spec} not recognised"));
        let closed = frobenius_formula(h as u64, k as u64).unwrap();
        assert_eq!(amza(&t).unwrap(), closed, "{spec}");
        assert_eq!(amzl(&t, DEFAULT_TOLERANCE_EXPONENT).value(), Some(&closed), "{spec}");
        let (formula, direct) = frobenius_ass_check(&t).unwrap().unwrap();
        assert_eq!(formula, direct, "{spec}");
    }
}

#[test]
fn non_frobenius_groups_are_not_flagged() {
    for spec in ["dihedral:8", "quaternion:8", "sym:4", "sl2:3", "dihedral:12", "heisenberg:3"] {
        let t = character_table(&make_group(spec).unwrap()).unwrap();
        assert_eq!(GroupProfile::from_table(&t).frobenius, None, "{spec}");
    }
}

#[test]
fn every_applicable_theorem_holds_on_the_corpus() {
    let mut applied = [0usize; 4];
    for spec in builtin_corpus(64) {
        let t = character_table(&make_group(&spec).unwrap()).unwrap();
        if t.is_abelian() {
            continue;
        }
        for (i, which) in TheoremId::ALL.into_iter().enumerate() {
            let r = verify_theorem(&t, which, DEFAULT_TOLERANCE_EXPONENT).unwrap();
            if r.applicable {
                applied[i] += 1;
                assert_eq!(r.equal, Some(true), "{spec} {which}");
            } else {
                assert_eq!(r.equal, None);
            }
        }
    }
    assert!(applied.iter().all(|&n| n > 0), "{applied:?}");
}
