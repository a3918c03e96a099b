use central_fourier::chartab::character_table;
use central_fourier::group::{conjugacy_classes, derived_subgroup, make_group, normal_closure, quotient, FiniteGroup};
use proptest::prelude::*;

const SPECS: [&str; 16] = [
    "cyclic:1",
    "cyclic:12",
    "dihedral:6",
    "dihedral:16",
    "dihedral:18",
    "quaternion:8",
    "quaternion:16",
    "sym:3",
    "sym:4",
    "alt:4",
    "heisenberg:3",
    "aff:5",
    "aff:7",
    "sl2:3",
    "direct(sym:3,cyclic:2)",
    "direct(quaternion:8,cyclic:3)",
];

fn brute_center(g: &FiniteGroup) -> Vec<usize> {
    (0..g.order()).filter(|&x| (0..g.order()).all(|y| g.mul(x, y) == g.mul(y, x))).collect()
}

fn brute_commutator_subgroup_order(g: &FiniteGroup) -> usize {
    let mut inside = vec![false; g.order()];
    let mut stack = vec![g.identity()];
    inside[g.identity()] = true;
    let comms: Vec<usize> = (0..g.order())
        .flat_map(|x| (0..g.order()).map(move |y| (x, y)))
        .map(|(x, y)| g.mul(g.mul(g.inverse(x), g.inverse(y)), g.mul(x, y)))
        .collect();
    while let Some(a) = stack.pop() {
        for &c in &comms {
            let b = g.mul(a, c);
            if !inside[b] {
                inside[b] = true;
                stack.push(b);
            }
        }
    }
    inside.iter().filter(|&&b| b).count()
}

#[test]
fn documented_examples() {
    let d16 = make_group("dihedral:16").unwrap();
    let mut sizes = conjugacy_classes(&d16).sizes.clone();
    sizes.sort();
    assert_eq!(sizes, vec![1, 1, 2, 2, 2, 4, 4]);
    assert_eq!(d16.center().len(), 2);

    assert_eq!(make_group("cyclic:12").unwrap().exponent(), 12);
    assert_eq!(make_group("sym:3").unwrap().exponent(), 6);
    assert_eq!(make_group("quaternion:8").unwrap().exponent(), 4);

    let s3 = make_group("sym:3").unwrap();
    assert_eq!(derived_subgroup(&s3).order(), 3);
    assert!(derived_subgroup(&make_group("cyclic:12").unwrap()).is_trivial());
    assert_eq!(derived_subgroup(&make_group("quaternion:8").unwrap()).order(), 2);

    assert!(normal_closure(&s3, &[s3.identity()]).is_trivial());
    let transposition = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
    assert!(normal_closure(&s3, &[transposition]).is_whole());
    let z = *d16.center().iter().find(|&&x| x != d16.identity()).unwrap();
    assert_eq!(normal_closure(&d16, &[z]).order(), 2);

    assert_eq!(quotient(&s3, &derived_subgroup(&s3)).unwrap().order(), 2);
    let trivial = normal_closure(&d16, &[d16.identity()]);
    assert_eq!(quotient(&d16, &trivial).unwrap().table(), d16.table());
}

#[test]
fn identity_is_element_zero() {
    for spec in SPECS {
        let g = make_group(spec).unwrap();
        assert_eq!(g.identity(), 0);
        assert!((0..g.order()).all(|x| g.mul(0, x) == x && g.mul(x, 0) == x));
        assert!(g.check_invariants());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn class_equation_and_center(spec in prop::sample::select(&SPECS[..])) {
        let g = make_group(spec).unwrap();
        let cd = conjugacy_classes(&g);
        prop_assert_eq!(cd.sizes.iter().sum::<usize>(), g.order());
        prop_assert!(cd.sizes.iter().all(|s| g.order().is_multiple_of(*s)));
        let center = brute_center(&g);
        prop_assert_eq!(cd.sizes.iter().filter(|&&s| s == 1).count(), center.len());
        prop_assert_eq!(g.center(), center);
        let fixed_pairs = (0..g.order())
            .flat_map(|x| (0..g.order()).map(move |y| (x, y)))
            .filter(|&(x, y)| g.mul(x, y) == g.mul(y, x))
            .count();
        prop_assert_eq!(fixed_pairs, cd.class_count() * g.order());
    }

    #[test]
    fn derived_subgroup_matches_linear_characters(spec in prop::sample::select(&SPECS[..])) {
        let g = make_group(spec).unwrap();
        let d = derived_subgroup(&g);
        prop_assert_eq!(d.order(), brute_commutator_subgroup_order(&g));
        let t = character_table(&g).unwrap();
        prop_assert_eq!(d.index(), t.linear_count());
        prop_assert_eq!(t.center_order(), g.center().len());
    }

    #[test]
    fn quotient_by_center_has_expected_order(spec in prop::sample::select(&SPECS[..])) {
        let g = make_group(spec).unwrap();
        let z = g.center();
        let n = normal_closure(&g, &z);
        prop_assert_eq!(n.order(), z.len());
        let q = quotient(&g, &n).unwrap();
        prop_assert_eq!(q.order(), g.order() / z.len());
        prop_assert!(q.check_invariants());
    }

    #[test]
    fn construction_is_deterministic(spec in prop::sample::select(&SPECS[..])) {
        let a = make_group(spec).unwrap();
        let b = make_group(spec).unwrap();
        prop_assert_eq!(a.table(), b.table());
        let (ta, tb) = (character_table(&a).unwrap(), character_table(&b).unwrap());
        prop_assert_eq!(ta.values(), tb.values());
        prop_assert_eq!(ta.class_sizes(), tb.class_sizes());
    }
}
