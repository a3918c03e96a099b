use super::FiniteGroup;
use crate::error::{Error, Result};

/// A normal subgroup of a parent group, as a sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalSubgroup {
    parent_order: usize,
    elements: Vec<usize>,
    generators: Vec<usize>,
}

impl NormalSubgroup {
    /// Wraps an element set after checking closure and normality in `g`.
    pub fn new(g: &FiniteGroup, elements: Vec<usize>, generators: Vec<usize>) -> Result<Self> {
        let mut elements = elements;
        elements.sort_unstable();
        elements.dedup();
        let mut inside = vec![false; g.order()];
        for &x in &elements {
            if x >= g.order() {
                return Err(Error::InvalidParameter {
                    family: "subgroup".into(),
                    reason: format!("element {x} out of range"),
                });
            }
            inside[x] = true;
        }
        if !inside[0] {
            return Err(Error::NotNormal("identity is missing".into()));
        }
        for &x in &elements {
            if !inside[g.inverse(x)] || elements.iter().any(|&y| !inside[g.mul(x, y)]) {
                return Err(Error::NotNormal("element set is not closed".into()));
            }
        }
        for &x in &elements {
            for &s in g.generators() {
                if !inside[g.conjugate(x, s)] {
                    return Err(Error::NotNormal(format!(
                        "conjugate of element {x} by generator {s} leaves the subgroup"
                    )));
                }
            }
        }
        Ok(NormalSubgroup { parent_order: g.order(), elements, generators })
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.parent_order
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// Membership vector of the subgroup generated by `gens`.
pub fn subgroup_closure(g: &FiniteGroup, gens: &[usize]) -> Vec<bool> {
    let mut inside = vec![false; g.order()];
    inside[0] = true;
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                queue.push(y);
            }
        }
    }
    inside
}

fn members(inside: &[bool]) -> Vec<usize> {
    inside.iter().enumerate().filter(|(_, &b)| b).map(|(x, _)| x).collect()
}

/// Smallest normal subgroup containing `gens`.
pub fn normal_closure(g: &FiniteGroup, gens: &[usize]) -> NormalSubgroup {
    let mut current: Vec<usize> = gens.iter().copied().filter(|&x| x != 0).collect();
    let mut inside = subgroup_closure(g, &current);
    'grow: loop {
        for x in members(&inside) {
            for &s in g.generators() {
                let y = g.conjugate(x, s);
                if !inside[y] {
                    current.push(y);
                    inside = subgroup_closure(g, &current);
                    continue 'grow;
                }
            }
        }
        break;
    }
    NormalSubgroup { parent_order: g.order(), elements: members(&inside), generators: gens.to_vec() }
}

/// The subgroup generated by all commutators.
pub fn derived_subgroup(g: &FiniteGroup) -> NormalSubgroup {
    let n = g.order();
    let mut gens: Vec<usize> = Vec::new();
    let mut inside = vec![false; n];
    inside[0] = true;
    for x in 0..n {
        for y in 0..n {
            let c = g.commutator(x, y);
            if !inside[c] {
                gens.push(c);
                inside = subgroup_closure(g, &gens);
            }
        }
    }
    // the subgroup generated by all commutators is already normal
    NormalSubgroup { parent_order: n, elements: members(&inside), generators: gens }
}

/// The quotient group; cosets are numbered by their smallest member.
pub fn quotient(g: &FiniteGroup, n: &NormalSubgroup) -> Result<FiniteGroup> {
    if n.parent_order != g.order() {
        return Err(Error::NotNormal("subgroup belongs to a different group".into()));
    }
    let checked = NormalSubgroup::new(g, n.elements.clone(), n.generators.clone())?;
    let size = g.order();
    let mut coset_of = vec![usize::MAX; size];
    let mut reps = Vec::new();
    for x in 0..size {
        if coset_of[x] == usize::MAX {
            let id = reps.len();
            reps.push(x);
            for &h in &checked.elements {
                coset_of[g.mul(x, h)] = id;
            }
        }
    }
    let q = reps.len();
    let rows: Vec<Vec<usize>> =
        (0..q).map(|a| (0..q).map(|b| coset_of[g.mul(reps[a], reps[b])]).collect()).collect();
    let mut result = FiniteGroup::from_table(format!("{}/N{}", g.label(), checked.order()), &rows)?;
    let mut gens: Vec<usize> = Vec::new();
    for &s in g.generators() {
        let c = coset_of[s];
        if c != 0 && !gens.contains(&c) {
            gens.push(c);
        }
    }
    result.generators = gens;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugacy_classes, make_group};

    // brute-force oracle: subgroup generated by all commutators, by repeated products
    fn brute_derived_order(g: &FiniteGroup) -> usize {
        let n = g.order();
        let mut set = vec![false; n];
        set[0] = true;
        for x in 0..n {
            for y in 0..n {
                set[g.commutator(x, y)] = true;
            }
        }
        loop {
            let cur: Vec<usize> = members(&set);
            let mut grew = false;
            for &a in &cur {
                for &b in &cur {
                    let c = g.mul(a, b);
                    if !set[c] {
                        set[c] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                return cur.len();
            }
        }
    }

    #[test]
    fn derived_subgroups() {
        assert_eq!(derived_subgroup(&make_group("sym:3").unwrap()).order(), 3);
        assert_eq!(derived_subgroup(&make_group("cyclic:6").unwrap()).order(), 1);
        assert_eq!(derived_subgroup(&make_group("quaternion:8").unwrap()).order(), 2);
        for spec in ["sym:4", "sl2:3", "aff:5", "dihedral:12", "alt:5"] {
            let g = make_group(spec).unwrap();
            assert_eq!(derived_subgroup(&g).order(), brute_derived_order(&g), "{spec}");
        }
    }

    #[test]
    fn normal_closures() {
        let s3 = make_group("sym:3").unwrap();
        assert!(normal_closure(&s3, &[0]).is_trivial());
        let cd = conjugacy_classes(&s3);
        let transposition = cd.representatives[2];
        assert_eq!(s3.element_order(transposition), 2);
        assert!(normal_closure(&s3, &[transposition]).is_whole());

        let d16 = make_group("dihedral:16").unwrap();
        let z = d16.center();
        assert_eq!(z.len(), 2);
        let nc = normal_closure(&d16, &[z[1]]);
        assert_eq!(nc.order(), 2);
        assert!(NormalSubgroup::new(&d16, nc.elements().to_vec(), vec![]).is_ok());
    }

    #[test]
    fn quotients() {
        let s3 = make_group("sym:3").unwrap();
        let q = quotient(&s3, &derived_subgroup(&s3)).unwrap();
        assert_eq!(q.order(), 2);

        let triv = normal_closure(&s3, &[0]);
        let copy = quotient(&s3, &triv).unwrap();
        assert_eq!(copy.table(), s3.table());

        let d16 = make_group("dihedral:16").unwrap();
        let z = normal_closure(&d16, &d16.center());
        let q = quotient(&d16, &z).unwrap();
        assert_eq!(q.order(), 8);
        assert!(q.check_invariants() && q.is_associative());
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = make_group("sym:3").unwrap();
        let t = conjugacy_classes(&s3).representatives[2];
        let err = NormalSubgroup::new(&s3, vec![0, t], vec![t]).unwrap_err();
        assert!(matches!(err, Error::NotNormal(_)));
    }
}
