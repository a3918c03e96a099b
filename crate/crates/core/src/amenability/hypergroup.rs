//! Finite commutative hypergroups and their amenability constant.
//!
//! The class hypergroup has the conjugacy classes as points, with
//! `c(C, C', C'') = a[C][C'][C''] |C''| / (|C| |C'|)`, Haar weights `|C|`,
//! characters `chi(C) / d_chi` and hyperdimensions `d_chi^2`.
//!
//! The dual hypergroup has the irreducible characters as points, with
//! `c(pi, pi', pi'') = N(pi, pi'; pi'') d_pi'' / (d_pi d_pi')` where `N` is the
//! tensor product multiplicity, Haar weights `d_pi^2`, one character per class
//! `pi -> pi(C) / d_pi`, and hyperdimensions `|C|`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactOrEnclosed;
use crate::chartab::{class_constants, CharacterTable};
use crate::cyclotomic::{lcm, Cyclotomic, RootAccumulator, RootExpansion};
use crate::error::{Error, Result};

/// A validated finite commutative hypergroup with its dual objects.
///
/// Point 0 is the identity. `characters[i][x]` is the value of character `i`
/// at point `x`.
#[derive(Clone, Debug)]
pub struct Hypergroup {
    label: String,
    size: usize,
    constants: Vec<BigRational>,
    haar: Vec<BigRational>,
    characters: Vec<Vec<Cyclotomic>>,
    hyperdimensions: Vec<BigRational>,
    total_weight: BigRational,
}

fn hg_err(m: impl Into<String>) -> Error {
    Error::Hypergroup(m.into())
}

fn common_denominator<'a>(qs: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    qs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

fn to_i64(v: &BigInt, what: &str) -> Result<i64> {
    v.to_i64().ok_or_else(|| hg_err(format!("{what} is too large for exact checking")))
}

impl Hypergroup {
    /// Validates the axioms and the character identity, exactly.
    pub fn new(
        label: impl Into<String>,
        constants: Vec<Vec<Vec<BigRational>>>,
        haar: Vec<BigRational>,
        characters: Vec<Vec<Cyclotomic>>,
        hyperdimensions: Vec<BigRational>,
    ) -> Result<Self> {
        let n = haar.len();
        if n == 0 {
            return Err(hg_err("empty hypergroup"));
        }
        if constants.len() != n || constants.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(hg_err(format!("structure constants must be {n} x {n} x {n}")));
        }
        if characters.len() != n || characters.iter().any(|r| r.len() != n) || hyperdimensions.len() != n {
            return Err(hg_err(format!("expected {n} characters with {n} values and {n} hyperdimensions")));
        }
        if haar.iter().chain(&hyperdimensions).any(|w| !w.is_positive()) {
            return Err(hg_err("Haar weights and hyperdimensions must be positive"));
        }
        for x in 0..n {
            for y in 0..n {
                let row = &constants[x][y];
                if row.iter().any(|c| c.is_negative()) {
                    return Err(hg_err(format!("negative structure constant at ({x}, {y})")));
                }
                if row.iter().sum::<BigRational>() != BigRational::one() {
                    return Err(hg_err(format!("c({x}, {y}, .) does not sum to 1")));
                }
                if *row != constants[y][x] {
                    return Err(hg_err(format!("not commutative at ({x}, {y})")));
                }
                if constants[0][x][y] != BigRational::from_integer(BigInt::from(u8::from(x == y))) {
                    return Err(hg_err(format!("point 0 is not an identity at ({x}, {y})")));
                }
            }
        }
        let total_weight = haar.iter().sum();
        let h = Hypergroup {
            label: label.into(),
            size: n,
            constants: constants.into_iter().flatten().flatten().collect(),
            haar,
            characters,
            hyperdimensions,
            total_weight,
        };
        h.check_characters()?;
        Ok(h)
    }

    /// `chi(x) chi(y) = sum_z c(x, y, z) chi(z)` for every character, over integers.
    fn check_characters(&self) -> Result<()> {
        let n = self.size;
        let cond = self.characters.iter().flatten().fold(1, |a, v| lcm(a, v.conductor()));
        let dc = common_denominator(&self.constants);
        for (i, row) in self.characters.iter().enumerate() {
            let dchi = common_denominator(row.iter().flat_map(|v| v.terms().iter().map(|(_, c)| c)));
            let dq = BigRational::from_integer(dchi.clone());
            let scaled: Vec<RootExpansion> = row
                .iter()
                .map(|v| RootExpansion::from_cyclotomic(&v.scale(&dq), cond))
                .collect::<Option<_>>()
                .ok_or_else(|| hg_err(format!("character {i} has oversized coefficients")))?;
            let dc64 = to_i64(&dc, "structure constant denominator")?;
            let dchi64 = to_i64(&dchi, "character denominator")?;
            let ints: Vec<i64> = self
                .constants
                .iter()
                .map(|c| to_i64(&(c * BigRational::from_integer(dc.clone())).to_integer(), "structure constant"))
                .collect::<Result<_>>()?;
            let mut acc = RootAccumulator::new(cond);
            for x in 0..n {
                for y in x..n {
                    acc.clear();
                    acc.add_product(dc64, &scaled[x], &scaled[y]);
                    for z in 0..n {
                        let c = ints[(x * n + y) * n + z];
                        if c != 0 {
                            acc.add_scaled(-c * dchi64, &scaled[z]);
                        }
                    }
                    if !acc.is_zero() {
                        return Err(hg_err(format!("character {i} is not multiplicative at points ({x}, {y})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn constant(&self, x: usize, y: usize, z: usize) -> &BigRational {
        &self.constants[(x * self.size + y) * self.size + z]
    }

    pub fn haar(&self) -> &[BigRational] {
        &self.haar
    }

    pub fn characters(&self) -> &[Vec<Cyclotomic>] {
        &self.characters
    }

    pub fn hyperdimensions(&self) -> &[BigRational] {
        &self.hyperdimensions
    }

    pub fn total_weight(&self) -> &BigRational {
        &self.total_weight
    }

    /// The one-point hypergroup.
    pub fn trivial() -> Self {
        let one = BigRational::one();
        Hypergroup::new("trivial", vec![vec![vec![one.clone()]]], vec![one.clone()], vec![vec![Cyclotomic::one()]], vec![one])
            .expect("valid")
    }
}

/// `AM(l^1(H, lambda)) = sum_{x,y} lambda(x) lambda(y) |sum_chi k_chi^2 chi(x) conj(chi(y))| / lambda(H)^2`.
pub fn hypergroup_am(h: &Hypergroup, tolerance_exponent: u32) -> Result<ExactOrEnclosed> {
    let n = h.size;
    let cond = h.characters.iter().flatten().fold(1, |a, v| lcm(a, v.conductor()));
    let k2: Vec<BigRational> = h.hyperdimensions.iter().map(|k| k * k).collect();
    let dk = common_denominator(&k2);
    let k2_int: Vec<i64> = k2
        .iter()
        .map(|q| to_i64(&(q * BigRational::from_integer(dk.clone())).to_integer(), "hyperdimension"))
        .collect::<Result<_>>()?;
    let dchi = common_denominator(h.characters.iter().flatten().flat_map(|v| v.terms().iter().map(|(_, c)| c)));
    let dq = BigRational::from_integer(dchi.clone());
    let mut scaled = Vec::with_capacity(n);
    let mut conj = Vec::with_capacity(n);
    for (i, row) in h.characters.iter().enumerate() {
        let r: Vec<RootExpansion> = row
            .iter()
            .map(|v| RootExpansion::from_cyclotomic(&v.scale(&dq), cond))
            .collect::<Option<_>>()
            .ok_or_else(|| hg_err(format!("character {i} has oversized coefficients")))?;
        conj.push(r.iter().map(RootExpansion::conj).collect::<Vec<_>>());
        scaled.push(r);
    }
    // inner(x, y) * dk * dchi^2 = sum_chi K_chi E_chi(x) conj(E_chi(y))
    let unscale = BigRational::new(BigInt::one(), dk * &dchi * &dchi);
    let mut acc = RootAccumulator::new(cond);
    let mut exact_sum = BigRational::zero();
    let mut lo = BigRational::zero();
    let mut hi = BigRational::zero();
    let mut all_exact = true;
    for x in 0..n {
        for y in x..n {
            acc.clear();
            for chi in 0..n {
                acc.add_product(k2_int[chi], &scaled[chi][x], &conj[chi][y]);
            }
            let mult = if x == y { 1 } else { 2 };
            let weight = &h.haar[x] * &h.haar[y] * BigRational::from_integer(mult.into()) * &unscale;
            match acc.to_integer() {
                Some(v) => {
                    let term = &weight * BigRational::from_integer(BigInt::from(v.abs()));
                    exact_sum += &term;
                    lo += &term;
                    hi += term;
                }
                None => {
                    let m = acc.to_cyclotomic().magnitude(tolerance_exponent);
                    match m.exact {
                        Some(q) => {
                            let term = &weight * q;
                            exact_sum += &term;
                            lo += &term;
                            hi += term;
                        }
                        None => {
                            all_exact = false;
                            lo += &weight * m.lo;
                            hi += &weight * m.hi;
                        }
                    }
                }
            }
        }
    }
    let total2 = &h.total_weight * &h.total_weight;
    if all_exact {
        Ok(ExactOrEnclosed::exact(exact_sum / total2))
    } else {
        let modulus = (total2.numer() * total2.denom()).abs();
        Ok(ExactOrEnclosed::enclosed(lo / &total2, hi / &total2, &modulus))
    }
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// The conjugacy-class hypergroup; its amenability constant is `AM(ZL^1(G))`.
pub fn conj_hypergroup(t: &CharacterTable) -> Result<Hypergroup> {
    let k = t.class_count();
    let sizes = t.class_sizes();
    let a = class_constant_table(t);
    let mut constants = vec![vec![vec![BigRational::zero(); k]; k]; k];
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                let v = &a[(x * k + y) * k + z];
                if !v.is_zero() {
                    constants[x][y][z] = v * rat(sizes[z]) / rat(sizes[x] * sizes[y]);
                }
            }
        }
    }
    let haar = sizes.iter().map(|&s| rat(s)).collect();
    let characters = t
        .values()
        .iter()
        .zip(t.degrees())
        .map(|(row, &d)| {
            let inv = BigRational::new(BigInt::one(), BigInt::from(d));
            row.iter().map(|v| v.scale(&inv)).collect()
        })
        .collect();
    let hyperdimensions = t.degrees().iter().map(|&d| rat(d * d)).collect();
    Hypergroup::new(format!("conj({})", t.label()), constants, haar, characters, hyperdimensions)
}

/// `a[x][y][z]`, from the group when available, else from the table:
/// `a = |C_x| |C_y| / |G| sum_chi chi(x) chi(y) conj(chi(z)) / d_chi`.
fn class_constant_table(t: &CharacterTable) -> Vec<BigRational> {
    let k = t.class_count();
    if let (Some(g), Some(cd)) = (t.group(), t.classes()) {
        let a = class_constants(g, cd);
        let mut out = Vec::with_capacity(k * k * k);
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    out.push(rat(a.get(x, y, z)));
                }
            }
        }
        return out;
    }
    let e = t.expansions();
    let conj: Vec<Vec<RootExpansion>> = e.iter().map(|r| r.iter().map(RootExpansion::conj).collect()).collect();
    let l = t.degrees().iter().fold(1u64, |a, &d| a.lcm(&d));
    let mut acc = RootAccumulator::new(t.conductor());
    let mut out = Vec::with_capacity(k * k * k);
    for x in 0..k {
        for y in 0..k {
            for z in 0..k {
                acc.clear();
                for chi in 0..k {
                    acc.add_triple((l / t.degrees()[chi]) as i64, &e[chi][x], &e[chi][y], &conj[chi][z]);
                }
                let v = acc.to_integer().expect("class constants of a verified table are rational");
                let sizes = t.class_sizes();
                out.push(
                    BigRational::new(BigInt::from(v), BigInt::from(l)) * rat(sizes[x] * sizes[y])
                        / rat(t.order()),
                );
            }
        }
    }
    out
}

/// The dual hypergroup on `Irr(G)`; its amenability constant is `AM(ZA(G))`.
pub fn dual_hypergroup(t: &CharacterTable) -> Result<Hypergroup> {
    let k = t.class_count();
    let e = t.expansions();
    let d = t.degrees();
    let conj: Vec<Vec<RootExpansion>> = e.iter().map(|r| r.iter().map(RootExpansion::conj).collect()).collect();
    let mut acc = RootAccumulator::new(t.conductor());
    let mut constants = vec![vec![vec![BigRational::zero(); k]; k]; k];
    for x in 0..k {
        for y in x..k {
            for z in 0..k {
                acc.clear();
                for c in 0..k {
                    acc.add_triple(t.class_sizes()[c] as i64, &e[x][c], &e[y][c], &conj[z][c]);
                }
                let v = acc
                    .to_integer()
                    .ok_or_else(|| hg_err(format!("tensor multiplicity ({x}, {y}; {z}) is not rational")))?;
                let order = t.order() as i128;
                if v % order != 0 {
                    return Err(hg_err(format!("tensor multiplicity ({x}, {y}; {z}) is not an integer")));
                }
                let mult = v / order;
                if mult != 0 {
                    let c = BigRational::new(BigInt::from(mult) * BigInt::from(d[z]), BigInt::from(d[x] * d[y]));
                    constants[x][y][z] = c.clone();
                    constants[y][x][z] = c;
                }
            }
        }
    }
    let haar = d.iter().map(|&v| rat(v * v)).collect();
    // character C evaluated at point pi is pi(C) / d_pi
    let characters = (0..k)
        .map(|c| {
            (0..k)
                .map(|pi| t.value(pi, c).scale(&BigRational::new(BigInt::one(), BigInt::from(d[pi]))))
                .collect()
        })
        .collect();
    let hyperdimensions = t.class_sizes().iter().map(|&s| rat(s)).collect();
    Hypergroup::new(format!("dual({})", t.label()), constants, haar, characters, hyperdimensions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::amenability::{amza, amzl};
    use crate::chartab::character_table;
    use crate::group::make_group;

    fn table(spec: &str) -> CharacterTable {
        character_table(&make_group(spec).unwrap()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn trivial_hypergroup() {
        assert_eq!(hypergroup_am(&Hypergroup::trivial(), 30).unwrap().exact, Some(q(1, 1)));
    }

    #[test]
    fn s3_hypergroups() {
        let t = table("sym:3");
        let ch = conj_hypergroup(&t).unwrap();
        let mut weights = ch.haar().to_vec();
        weights.sort();
        assert_eq!(weights, vec![q(1, 1), q(2, 1), q(3, 1)]);
        assert_eq!(hypergroup_am(&ch, 30).unwrap().exact, Some(q(7, 3)));

        let dh = dual_hypergroup(&t).unwrap();
        assert_eq!(dh.haar(), &[q(1, 1), q(1, 1), q(4, 1)]);
        assert_eq!(hypergroup_am(&dh, 30).unwrap().exact, Some(q(7, 3)));
    }

    #[test]
    fn c3_is_self_dual() {
        let t = table("cyclic:3");
        for h in [conj_hypergroup(&t).unwrap(), dual_hypergroup(&t).unwrap()] {
            assert!(h.haar().iter().all(|w| *w == q(1, 1)));
            for x in 0..3 {
                for y in 0..3 {
                    let ones = (0..3).filter(|&z| *h.constant(x, y, z) == q(1, 1)).count();
                    assert_eq!(ones, 1);
                }
            }
            assert_eq!(hypergroup_am(&h, 30).unwrap().exact, Some(q(1, 1)));
        }
    }

    #[test]
    fn duality_matches_direct_values() {
        for spec in ["dihedral:8", "sl2:3", "heisenberg:3", "aff:5"] {
            let t = table(spec);
            assert_eq!(hypergroup_am(&dual_hypergroup(&t).unwrap(), 30).unwrap().exact.unwrap(), amza(&t).unwrap());
            assert_eq!(hypergroup_am(&conj_hypergroup(&t).unwrap(), 30).unwrap().exact, amzl(&t, 30).exact);
        }
    }

    #[test]
    fn table_only_constants_match_group_constants() {
        let t = table("sl2:3");
        let from_group = class_constant_table(&t);
        let bare = CharacterTable::from_parts(
            "bare",
            t.order(),
            t.class_sizes().to_vec(),
            t.rep_orders().to_vec(),
            t.power_maps().to_vec(),
            t.values().to_vec(),
        )
        .unwrap();
        assert_eq!(class_constant_table(&bare), from_group);
    }

    #[test]
    fn rejects_broken_character() {
        let t = table("sym:3");
        let h = conj_hypergroup(&t).unwrap();
        let mut chars = h.characters().to_vec();
        chars[2][1] = Cyclotomic::from_integer(1);
        let constants = (0..3)
            .map(|x| (0..3).map(|y| (0..3).map(|z| h.constant(x, y, z).clone()).collect()).collect())
            .collect();
        let err = Hypergroup::new("bad", constants, h.haar().to_vec(), chars, h.hyperdimensions().to_vec());
        assert!(matches!(err, Err(Error::Hypergroup(_))));
    }
}
