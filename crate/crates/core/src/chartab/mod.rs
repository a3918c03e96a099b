//! Irreducible character tables by the Burnside–Dixon method.
//!
//! The class sums `K_i` satisfy `K_i K_j = sum_l a[i][j][l] K_l`, so every
//! central character `omega` is a common eigenvector of the matrices
//! `M_i[j][l] = a[i][j][l]`. Over `F_p` with `p = 1 (mod exponent)` these
//! matrices split the class space into one-dimensional pieces. Each piece gives
//! a modular character, and its exact value on a class is recovered as a sum of
//! roots of unity by a discrete Fourier sum along the power map.

mod modp;

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::cyclotomic::{Cyclotomic, RootAccumulator, RootExpansion};
use crate::error::{Error, Result};
use crate::group::{conjugacy_classes, ConjugacyData, FiniteGroup};

pub use modp::Field;

/// Class-algebra structure constants `a[i][j][l]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassConstants {
    k: usize,
    data: Vec<u32>,
}

impl ClassConstants {
    /// `#{(x, y) in C_i x C_j : x y = z}` for a fixed `z` in `C_l`.
    #[inline]
    pub fn get(&self, i: usize, j: usize, l: usize) -> u32 {
        self.data[(i * self.k + j) * self.k + l]
    }

    pub fn class_count(&self) -> usize {
        self.k
    }
}

pub fn class_constants(g: &FiniteGroup, cd: &ConjugacyData) -> ClassConstants {
    let k = cd.class_count();
    let mut data = vec![0u32; k * k * k];
    for (l, &z) in cd.representatives.iter().enumerate() {
        for x in 0..g.order() {
            let y = g.mul(g.inverse(x), z);
            let i = cd.class_of[x];
            let j = cd.class_of[y];
            data[(i * k + j) * k + l] += 1;
        }
    }
    ClassConstants { k, data }
}

/// Irreducible characters of a finite group, with class data.
///
/// Rows are characters and columns are classes, both in canonical order:
/// classes as in [`ConjugacyData`], characters by degree and then by their
/// value tuples, compared column by column with larger real part first and
/// larger imaginary part breaking ties. Row 0 is the trivial character.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    label: String,
    order: usize,
    conductor: u32,
    class_sizes: Vec<usize>,
    rep_orders: Vec<usize>,
    power_maps: Vec<Vec<usize>>,
    degrees: Vec<u64>,
    values: Vec<Vec<Cyclotomic>>,
    expansions: Vec<Vec<RootExpansion>>,
    linear_count: usize,
    dixon_prime: Option<u64>,
    group: Option<Arc<FiniteGroup>>,
    classes: Option<ConjugacyData>,
}

impl CharacterTable {
    /// Assembles and validates a table from external data.
    ///
    /// Characters are re-sorted into canonical order; classes are kept as
    /// given, but class 0 must be the identity class.
    pub fn from_parts(
        label: impl Into<String>,
        order: usize,
        class_sizes: Vec<usize>,
        rep_orders: Vec<usize>,
        power_maps: Vec<Vec<usize>>,
        values: Vec<Vec<Cyclotomic>>,
    ) -> Result<Self> {
        let k = class_sizes.len();
        let bad = |m: String| Err(Error::Validation(m));
        if rep_orders.len() != k || power_maps.len() != k {
            return bad("class data lengths disagree".into());
        }
        if values.len() != k || values.iter().any(|r| r.len() != k) {
            return bad(format!("value matrix must be {k} x {k}"));
        }
        if k == 0 || class_sizes[0] != 1 || rep_orders[0] != 1 {
            return bad("class 0 must be the identity class".into());
        }
        for c in 0..k {
            let o = rep_orders[c];
            if o == 0 || power_maps[c].len() != o || power_maps[c].iter().any(|&x| x >= k) {
                return bad(format!("power map of class {c} is malformed"));
            }
            if power_maps[c][0] != 0 || (o > 1 && power_maps[c][1] != c) {
                return bad(format!("power map of class {c} must start with the identity and the class itself"));
            }
        }
        let exponent = rep_orders.iter().fold(1usize, |a, &o| a.lcm(&o)) as u32;
        let conductor = values.iter().flatten().fold(exponent, |a, v| crate::cyclotomic::lcm(a, v.conductor()));
        let mut degrees = Vec::with_capacity(k);
        for (i, row) in values.iter().enumerate() {
            match row[0].as_integer().and_then(|d| u64::try_from(d).ok()) {
                Some(d) if d > 0 => degrees.push(d),
                _ => return bad(format!("character {i} has no positive integer degree")),
            }
        }
        let mut expansions = Vec::with_capacity(k);
        for (i, row) in values.iter().enumerate() {
            let mut r = Vec::with_capacity(k);
            for (c, v) in row.iter().enumerate() {
                match RootExpansion::from_cyclotomic(v, conductor) {
                    Some(e) => r.push(e),
                    None => return bad(format!("value of character {i} on class {c} is not an algebraic integer")),
                }
            }
            expansions.push(r);
        }
        let values = values.into_iter().map(|r| r.into_iter().map(|v| v.lift(conductor)).collect()).collect();
        let mut t = CharacterTable {
            label: label.into(),
            order,
            conductor,
            class_sizes,
            rep_orders,
            power_maps,
            linear_count: degrees.iter().filter(|&&d| d == 1).count(),
            degrees,
            values,
            expansions,
            dixon_prime: None,
            group: None,
            classes: None,
        };
        t.sort_characters();
        t.verify()?;
        Ok(t)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    /// Conductor of the field holding every value (the group exponent for computed tables).
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    pub fn rep_orders(&self) -> &[usize] {
        &self.rep_orders
    }

    pub fn power_maps(&self) -> &[Vec<usize>] {
        &self.power_maps
    }

    /// Class of `g^j` for `g` in class `c`.
    pub fn power(&self, c: usize, j: i64) -> usize {
        let o = self.rep_orders[c] as i64;
        self.power_maps[c][j.rem_euclid(o) as usize]
    }

    /// Class of the inverses of the elements of class `c`.
    pub fn inverse_class(&self, c: usize) -> usize {
        self.power(c, -1)
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn values(&self) -> &[Vec<Cyclotomic>] {
        &self.values
    }

    pub fn value(&self, chi: usize, c: usize) -> &Cyclotomic {
        &self.values[chi][c]
    }

    /// Values as integer sums of `conductor`-th roots of unity.
    pub fn expansions(&self) -> &[Vec<RootExpansion>] {
        &self.expansions
    }

    /// Number of linear characters, `|G : G'|`.
    pub fn linear_count(&self) -> usize {
        self.linear_count
    }

    pub fn derived_order(&self) -> usize {
        self.order / self.linear_count
    }

    /// Indices of the classes of size one.
    pub fn central_classes(&self) -> Vec<usize> {
        (0..self.class_count()).filter(|&c| self.class_sizes[c] == 1).collect()
    }

    pub fn center_order(&self) -> usize {
        self.class_sizes.iter().filter(|&&s| s == 1).count()
    }

    pub fn is_abelian(&self) -> bool {
        self.class_count() == self.order
    }

    /// The prime used for modular splitting, for computed tables.
    pub fn dixon_prime(&self) -> Option<u64> {
        self.dixon_prime
    }

    pub fn group(&self) -> Option<&FiniteGroup> {
        self.group.as_deref()
    }

    pub fn classes(&self) -> Option<&ConjugacyData> {
        self.classes.as_ref()
    }

    fn sort_characters(&mut self) {
        let k = self.class_count();
        let mut idx: Vec<usize> = (0..k).collect();
        idx.sort_by(|&a, &b| {
            self.degrees[a].cmp(&self.degrees[b]).then_with(|| {
                for c in 0..k {
                    let o = compare_values(&self.values[b][c], &self.values[a][c]);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
        });
        self.degrees = permuted(std::mem::take(&mut self.degrees), &idx);
        self.values = permuted(std::mem::take(&mut self.values), &idx);
        self.expansions = permuted(std::mem::take(&mut self.expansions), &idx);
    }

    /// Checks every table invariant exactly.
    pub fn verify(&self) -> Result<()> {
        let k = self.class_count();
        let fail = |m: String| Err(Error::Validation(m));
        if self.class_sizes.iter().sum::<usize>() != self.order {
            return fail("class sizes do not sum to the group order".into());
        }
        let sum_sq: u64 = self.degrees.iter().map(|d| d * d).sum();
        if sum_sq != self.order as u64 {
            return fail(format!("sum of squared degrees is {sum_sq}, expected {}", self.order));
        }
        for (i, row) in self.values.iter().enumerate() {
            if row[0].as_integer() != Some(BigInt::from(self.degrees[i])) {
                return fail(format!("column 0 of character {i} is not its degree"));
            }
        }
        if self.values[0].iter().any(|v| v.as_integer() != Some(BigInt::from(1))) {
            return fail("row 0 is not the trivial character".into());
        }
        let n = self.conductor;
        let conj: Vec<Vec<RootExpansion>> =
            self.expansions.iter().map(|r| r.iter().map(RootExpansion::conj).collect()).collect();
        let mut acc = RootAccumulator::new(n);
        for a in 0..k {
            for b in a..k {
                acc.clear();
                for c in 0..k {
                    acc.add_product(self.class_sizes[c] as i64, &self.expansions[a][c], &conj[b][c]);
                }
                let want = if a == b { self.order as i128 } else { 0 };
                if acc.to_integer() != Some(want) {
                    return fail(format!("row orthogonality fails for characters {a} and {b}"));
                }
            }
        }
        for c in 0..k {
            for c2 in c..k {
                acc.clear();
                for chi in 0..k {
                    acc.add_product(1, &self.expansions[chi][c], &conj[chi][c2]);
                }
                let want = if c == c2 { (self.order / self.class_sizes[c]) as i128 } else { 0 };
                if acc.to_integer() != Some(want) {
                    return fail(format!("column orthogonality fails for classes {c} and {c2}"));
                }
            }
        }
        Ok(())
    }

    /// Partition of the characters by their central character.
    pub fn center_decomposition(&self) -> CenterDecomposition {
        let central = self.central_classes();
        let mut keys: Vec<Vec<Cyclotomic>> = Vec::new();
        let mut block_of = Vec::with_capacity(self.class_count());
        for (chi, row) in self.values.iter().enumerate() {
            let inv_d = BigRational::new(1.into(), BigInt::from(self.degrees[chi]));
            let key: Vec<Cyclotomic> = central.iter().map(|&z| row[z].scale(&inv_d)).collect();
            let b = match keys.iter().position(|k| *k == key) {
                Some(b) => b,
                None => {
                    keys.push(key);
                    keys.len() - 1
                }
            };
            block_of.push(b);
        }
        let mut blocks = vec![Vec::new(); keys.len()];
        for (chi, &b) in block_of.iter().enumerate() {
            blocks[b].push(chi);
        }
        CenterDecomposition { central_classes: central, blocks, block_of }
    }
}

fn permuted<T>(v: Vec<T>, idx: &[usize]) -> Vec<T> {
    let mut slots: Vec<Option<T>> = v.into_iter().map(Some).collect();
    idx.iter().map(|&i| slots[i].take().unwrap()).collect()
}

/// Order on values: real part first, then imaginary part, exactly.
fn compare_values(a: &Cyclotomic, b: &Cyclotomic) -> Ordering {
    let (ar, ai) = a.to_complex_f64();
    let (br, bi) = b.to_complex_f64();
    const SAFE: f64 = 1e-6;
    if (ar - br).abs() > SAFE {
        return ar.partial_cmp(&br).unwrap();
    }
    if a == b {
        return Ordering::Equal;
    }
    let d = a - b;
    let re = d.real_part().real_sign().unwrap_or(Ordering::Equal);
    if re != Ordering::Equal {
        return re;
    }
    if (ai - bi).abs() > SAFE {
        return ai.partial_cmp(&bi).unwrap();
    }
    d.imag_part().real_sign().unwrap_or(Ordering::Equal)
}

/// The blocks `A_i` of characters sharing a central character.
///
/// Block 0 holds the characters trivial on the center; the remaining blocks
/// follow the first appearance of their central character in table order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterDecomposition {
    pub central_classes: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
    pub block_of: Vec<usize>,
}

impl CenterDecomposition {
    /// `sum_{chi in A_i} d_chi^2` for each block.
    pub fn degree_sums(&self, t: &CharacterTable) -> Vec<u64> {
        self.blocks.iter().map(|b| b.iter().map(|&chi| t.degrees()[chi].pow(2)).sum()).collect()
    }

    /// Checks the block invariants against the table.
    pub fn verify(&self, t: &CharacterTable) -> Result<()> {
        let z = self.central_classes.len();
        if self.blocks.len() != z {
            return Err(Error::Validation(format!("{} blocks for a center of order {z}", self.blocks.len())));
        }
        let index = (t.order() / z) as u64;
        for (b, s) in self.degree_sums(t).into_iter().enumerate() {
            if s != index {
                return Err(Error::Validation(format!("block {b} has degree sum {s}, expected {index}")));
            }
        }
        Ok(())
    }
}

fn is_prime(n: u64) -> bool {
    crate::group::families::is_prime(n)
}

/// Smallest prime `p = 1 (mod e)` with `p > 2 sqrt(order)`.
pub fn dixon_prime(exponent: u64, order: u64) -> u64 {
    let mut p = exponent + 1;
    while !(is_prime(p) && p * p > 4 * order) {
        p += exponent;
    }
    p
}

pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable> {
    let cd = conjugacy_classes(g);
    character_table_with(Arc::new(g.clone()), cd)
}

/// Computes the table from already computed classes.
pub fn character_table_with(g: Arc<FiniteGroup>, cd: ConjugacyData) -> Result<CharacterTable> {
    let k = cd.class_count();
    let order = g.order() as u64;
    let exponent = cd.rep_orders.iter().fold(1usize, |a, &o| a.lcm(&o)) as u64;
    let p = dixon_prime(exponent, order);
    let f = Field::new(p);
    let a = class_constants(&g, &cd);

    let omegas = split(f, &a, k)?;

    let z = f.pow(f.primitive_root(), (p - 1) / exponent);
    let inv_sizes: Vec<u64> = cd.sizes.iter().map(|&s| f.inv(s as u64 % p)).collect();
    let mut degrees = Vec::with_capacity(k);
    let mut expansions = Vec::with_capacity(k);
    for omega in &omegas {
        let mut s = 0;
        for l in 0..k {
            let t = f.mul(f.mul(omega[l], omega[cd.power(l, -1)]), inv_sizes[l]);
            s = f.add(s, t);
        }
        if s == 0 {
            return Err(Error::Splitting("degenerate central character".into()));
        }
        let d2 = f.mul(order % p, f.inv(s));
        let d = f
            .sqrt_all(d2)
            .into_iter()
            .find(|&d| d > 0 && d * d <= order)
            .ok_or_else(|| Error::Splitting("no admissible degree".into()))?;
        let chi: Vec<u64> = (0..k).map(|l| f.mul(f.mul(d, omega[l]), inv_sizes[l])).collect();
        let mut row = Vec::with_capacity(k);
        for l in 0..k {
            let o = cd.rep_orders[l] as u64;
            let zo = f.pow(z, exponent / o);
            let zo_inv = f.inv(zo);
            let o_inv = f.inv(o % p);
            let mut terms = Vec::new();
            let mut total = 0u64;
            for t in 0..o {
                let step = f.pow(zo_inv, t);
                let mut acc = 0;
                let mut w = 1;
                for j in 0..o {
                    acc = f.add(acc, f.mul(chi[cd.power(l, j as i64)], w));
                    w = f.mul(w, step);
                }
                let m = f.mul(acc, o_inv);
                if m > d {
                    return Err(Error::Splitting(format!("root multiplicity {m} exceeds degree {d}")));
                }
                total += m;
                if m > 0 {
                    terms.push(((t * (exponent / o)) as i64, m as i64));
                }
            }
            if total != d {
                return Err(Error::Splitting(format!("value on class {l} is not a sum of {d} roots of unity")));
            }
            row.push(RootExpansion::new(exponent as u32, terms));
        }
        degrees.push(d);
        expansions.push(row);
    }

    let values: Vec<Vec<Cyclotomic>> =
        expansions.iter().map(|r| r.iter().map(RootExpansion::to_cyclotomic).collect()).collect();
    let mut t = CharacterTable {
        label: g.label().to_string(),
        order: g.order(),
        conductor: exponent as u32,
        class_sizes: cd.sizes.clone(),
        rep_orders: cd.rep_orders.clone(),
        power_maps: cd.power_map.clone(),
        linear_count: degrees.iter().filter(|&&d| d == 1).count(),
        degrees,
        values,
        expansions,
        dixon_prime: Some(p),
        group: Some(g),
        classes: Some(cd),
    };
    t.sort_characters();
    t.verify().map_err(|e| Error::Splitting(format!("computed table failed verification: {e}")))?;
    Ok(t)
}

/// Splits `F_p^k` into common eigenvectors of the class matrices, returned
/// normalized so the identity-class coordinate is 1.
fn split(f: Field, a: &ClassConstants, k: usize) -> Result<Vec<Vec<u64>>> {
    let identity: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut pending: Vec<(Vec<Vec<u64>>, Vec<usize>)> = vec![(identity, (0..k).collect())];
    let mut done: Vec<Vec<u64>> = Vec::new();
    for i in 1..k {
        if pending.is_empty() {
            break;
        }
        let mut next = Vec::new();
        for (basis, pivots) in pending {
            let m = basis.len();
            // R = rows `pivots` of M_i B
            let r: Vec<Vec<u64>> = pivots
                .iter()
                .map(|&row| {
                    basis
                        .iter()
                        .map(|col| {
                            let mut s = 0u64;
                            for (l, &v) in col.iter().enumerate() {
                                if v != 0 {
                                    s = (s + a.get(i, row, l) as u64 * v) % f.p;
                                }
                            }
                            s
                        })
                        .collect()
                })
                .collect();
            let cp = modp::charpoly(f, &r);
            let roots = modp::roots(f, &cp);
            if roots.len() <= 1 {
                next.push((basis, pivots));
                continue;
            }
            let mut found = 0;
            for lambda in roots {
                let shifted: Vec<Vec<u64>> = (0..m)
                    .map(|x| (0..m).map(|y| if x == y { f.sub(r[x][y], lambda) } else { r[x][y] }).collect())
                    .collect();
                let coords = modp::nullspace(f, &shifted);
                found += coords.len();
                let cols: Vec<Vec<u64>> = coords
                    .iter()
                    .map(|y| {
                        (0..k)
                            .map(|row| {
                                let mut s = 0;
                                for (c, &yc) in y.iter().enumerate() {
                                    s = f.add(s, f.mul(basis[c][row], yc));
                                }
                                s
                            })
                            .collect()
                    })
                    .collect();
                let (cols, piv) = modp::column_echelon(f, cols);
                if cols.len() == 1 {
                    done.push(cols.into_iter().next().unwrap());
                } else {
                    next.push((cols, piv));
                }
            }
            if found != m {
                return Err(Error::Splitting(format!("class matrix {i} is not diagonalizable mod {}", f.p)));
            }
        }
        pending = next;
    }
    for (basis, _) in pending {
        if basis.len() == 1 {
            done.extend(basis);
        } else {
            return Err(Error::Splitting(format!("an eigenspace of dimension {} did not split", basis.len())));
        }
    }
    done.into_iter()
        .map(|v| {
            if v[0] == 0 {
                return Err(Error::Splitting("eigenvector vanishes on the identity class".into()));
            }
            let s = f.inv(v[0]);
            Ok(v.into_iter().map(|x| f.mul(x, s)).collect())
        })
        .collect()
}
