//! Finite groups as explicit multiplication tables.
//!
//! Element 0 is always the identity. Groups built from generators number
//! their elements in breadth-first order: starting from the identity, each
//! dequeued element is multiplied on the right by the generators in the
//! order they were listed.

mod classes;
pub mod families;
pub mod spec;
mod subgroup;

use std::collections::HashMap;
use std::hash::Hash;

use num_integer::Integer;

use crate::error::{Error, Result};

pub use classes::{conjugacy_classes, ConjugacyData};
pub use spec::{make_group, make_group_with, BuildOptions, GroupSpec};
pub use subgroup::{derived_subgroup, normal_closure, quotient, subgroup_closure, NormalSubgroup};

pub const DEFAULT_MAX_ORDER: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    mul: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Closes `gens` under right multiplication, numbering elements breadth-first.
    pub fn from_generators<T, F>(
        label: impl Into<String>,
        identity: T,
        gens: &[T],
        mul: F,
        max_order: usize,
    ) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let label = label.into();
        let mut index: HashMap<T, usize> = HashMap::new();
        let mut elements = vec![identity.clone()];
        index.insert(identity, 0);
        // parent[b] = (a, s) with b = a * gens[s]
        let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
        let mut right: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            for (s, g) in gens.iter().enumerate() {
                let y = mul(&x, g);
                let idx = match index.get(&y) {
                    Some(&i) => i,
                    None => {
                        let i = elements.len();
                        if i >= max_order {
                            return Err(Error::OrderTooLarge { order: i as u64 + 1, max: max_order });
                        }
                        index.insert(y.clone(), i);
                        elements.push(y);
                        parent.push((head, s));
                        i
                    }
                };
                right[s].push(idx as u32);
            }
            head += 1;
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            let row = &mut table[a * n..(a + 1) * n];
            row[0] = a as u32;
            for b in 1..n {
                let (pb, s) = parent[b];
                row[b] = right[s][row[pb] as usize];
            }
        }
        let mut generators: Vec<usize> = Vec::new();
        for g in gens {
            let i = index[g];
            if i != 0 && !generators.contains(&i) {
                generators.push(i);
            }
        }
        Ok(Self::assemble(label, n, table, generators))
    }

    fn assemble(label: String, n: usize, mul: Vec<u32>, generators: Vec<usize>) -> Self {
        let mut inverse = vec![0u32; n];
        for x in 0..n {
            let row = &mul[x * n..(x + 1) * n];
            inverse[x] = row.iter().position(|&v| v == 0).expect("latin square") as u32;
        }
        FiniteGroup { label, order: n, mul, inverse, generators }
    }

    /// Builds a group from a full Cayley table, validating the group axioms.
    ///
    /// If the identity is not element 0 it is swapped into position 0; all
    /// other elements keep their numbering.
    pub fn from_table(label: impl Into<String>, rows: &[Vec<usize>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}, expected {n}", r.len())));
            }
            let mut seen = vec![false; n];
            for &v in r {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidGroup(format!("row {i} is not a permutation")));
                }
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for r in rows {
                if std::mem::replace(&mut seen[r[c]], true) {
                    return Err(Error::InvalidGroup(format!("column {c} is not a permutation")));
                }
            }
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let relabel = |x: usize| if x == e { 0 } else if x == 0 { e } else { x };
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[relabel(a) * n + relabel(b)] = relabel(rows[a][b]) as u32;
            }
        }
        let mut g = Self::assemble(label.into(), n, mul, Vec::new());
        g.generators = g.greedy_generators();
        if !g.associative_on_generators() {
            return Err(Error::InvalidGroup("multiplication is not associative".into()));
        }
        Ok(g)
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.order];
        inside[0] = true;
        for x in 0..self.order {
            if !inside[x] {
                gens.push(x);
                inside = subgroup_closure(self, &gens);
            }
        }
        gens
    }

    // Light's test: associativity holds iff x(ay) = (xa)y for every a in a generating set.
    fn associative_on_generators(&self) -> bool {
        let n = self.order;
        self.generators.iter().all(|&a| {
            (0..n).all(|x| (0..n).all(|y| self.mul(x, self.mul(a, y)) == self.mul(self.mul(x, a), y)))
        })
    }

    /// Exhaustive check over all triples.
    pub fn is_associative(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| self.mul(self.mul(x, y), z) == self.mul(x, self.mul(y, z)))))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inverse(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Generators recorded at construction; together they generate the group.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Table rows as index vectors (the Cayley table).
    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    /// `g^-1 x g`
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverse(g), x), g)
    }

    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inverse(x), self.inverse(y)), self.mul(x, y))
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let mut result = 0;
        let mut base = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, x| acc.lcm(&self.element_order(x)))
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Elements commuting with every element.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&x| self.generators.iter().all(|&g| self.mul(x, g) == self.mul(g, x)))
            .collect()
    }

    /// Checks the identity and inverse invariants of the table.
    pub fn check_invariants(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| self.mul(0, x) == x && self.mul(x, 0) == x)
            && (0..n).all(|x| self.inverse(self.inverse(x)) == x && self.mul(x, self.inverse(x)) == 0)
    }

    /// Direct product; the generators of `a` (paired with the identity) come first.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, max_order: usize) -> Result<Self> {
        let order = a.order as u64 * b.order as u64;
        if order > max_order as u64 {
            return Err(Error::OrderTooLarge { order, max: max_order });
        }
        let gens: Vec<(usize, usize)> = a
            .generators
            .iter()
            .map(|&g| (g, 0))
            .chain(b.generators.iter().map(|&h| (0, h)))
            .collect();
        Self::from_generators(
            format!("direct({},{})", a.label, b.label),
            (0usize, 0usize),
            &gens,
            |x, y| (a.mul(x.0, y.0), b.mul(x.1, y.1)),
            max_order,
        )
    }
}
