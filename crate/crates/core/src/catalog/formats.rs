//! On-disk formats: `*.perm.json`, `*.cayley.json`, `*.ctbl.json`.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::chartab::CharacterTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::families::permutation_group;
use crate::group::{FiniteGroup, DEFAULT_MAX_ORDER};

/// A permutation group, either by generators or as a semidirect product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGroupFile {
    pub label: String,
    #[serde(default)]
    pub degree: usize,
    #[serde(default)]
    pub generators: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semidirect: Option<SemidirectSection>,
    /// Named element lists (as permutations), e.g. generators of a normal subgroup.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub marked: BTreeMap<String, Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermGenerators {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

/// `normal ⋊ complement`, with `(n1, h1)(n2, h2) = (n1 * h1(n2), h1 h2)`.
///
/// `action[s][t]` is the image of normal generator `t` under complement
/// generator `s`, written as a permutation that must lie in the normal group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemidirectSection {
    pub normal: PermGenerators,
    pub complement: PermGenerators,
    pub action: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyFile {
    pub label: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

/// A cyclotomic value: `sum (num/den) zeta_conductor^exp` over canonical exponents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicJson {
    pub conductor: u32,
    pub terms: Vec<(u32, i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharTableFile {
    pub label: String,
    pub order: usize,
    pub class_sizes: Vec<usize>,
    pub rep_orders: Vec<usize>,
    pub power_maps: Vec<Vec<usize>>,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<CyclotomicJson>>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Parse { path: path.to_path_buf(), reason: e.to_string() })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}

impl CyclotomicJson {
    pub fn from_value(z: &Cyclotomic) -> Result<Self> {
        let mut terms = Vec::with_capacity(z.terms().len());
        for (e, c) in z.terms() {
            let num = c.numer().to_i64();
            let den = c.denom().to_i64();
            match (num, den) {
                (Some(n), Some(d)) => terms.push((*e, n, d)),
                _ => return Err(Error::Unsupported(format!("coefficient {c} does not fit in 64 bits"))),
            }
        }
        Ok(CyclotomicJson { conductor: z.conductor(), terms })
    }

    pub fn to_value(&self) -> std::result::Result<Cyclotomic, String> {
        if self.conductor == 0 {
            return Err("conductor must be positive".into());
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for &(e, n, d) in &self.terms {
            if d == 0 {
                return Err("zero denominator".into());
            }
            terms.push((e, BigRational::new(BigInt::from(n), BigInt::from(d))));
        }
        Cyclotomic::from_canonical(self.conductor, terms)
            .ok_or_else(|| format!("terms are not canonical for conductor {}", self.conductor))
    }
}

impl PermGroupFile {
    pub fn build(&self, max_order: usize) -> Result<FiniteGroup> {
        match &self.semidirect {
            None => permutation_group(self.label.clone(), self.degree, &self.generators, max_order),
            Some(s) => semidirect(&self.label, s, max_order),
        }
    }

    /// Builds the group and resolves each marked permutation to its element index.
    pub fn build_with_marks(&self, max_order: usize) -> Result<(FiniteGroup, BTreeMap<String, Vec<usize>>)> {
        if self.semidirect.is_some() {
            if !self.marked.is_empty() {
                return Err(Error::Unsupported("marked elements require a plain generator list".into()));
            }
            return Ok((self.build(max_order)?, BTreeMap::new()));
        }
        let spec = PermGenerators { degree: self.degree, generators: self.generators.clone() };
        let (g, index) = perm_group_with_index(&self.label, &spec, max_order)?;
        let mut marks = BTreeMap::new();
        for (name, perms) in &self.marked {
            let mut elems = Vec::with_capacity(perms.len());
            for p in perms {
                let x = index.get(p).ok_or_else(|| Error::InvalidParameter {
                    family: "perm".into(),
                    reason: format!("marked element of `{name}` is not in the group"),
                })?;
                elems.push(*x);
            }
            marks.insert(name.clone(), elems);
        }
        Ok((g, marks))
    }
}

fn perm_group_with_index(
    label: &str,
    spec: &PermGenerators,
    max_order: usize,
) -> Result<(FiniteGroup, HashMap<Vec<usize>, usize>)> {
    let g = permutation_group(label, spec.degree, &spec.generators, max_order)?;
    // the group keeps each distinct non-identity generator once, in listed order
    let identity: Vec<usize> = (0..spec.degree).collect();
    let mut gen_perms: Vec<&Vec<usize>> = Vec::new();
    for p in &spec.generators {
        if *p != identity && !gen_perms.contains(&p) {
            gen_perms.push(p);
        }
    }
    // replay the breadth-first numbering to recover each element's permutation
    let mut perms: Vec<Option<Vec<usize>>> = vec![None; g.order()];
    perms[0] = Some(identity);
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let px = perms[x].clone().unwrap();
        for (s, &gx) in g.generators().iter().enumerate() {
            let y = g.mul(x, gx);
            if perms[y].is_none() {
                perms[y] = Some(px.iter().map(|&i| gen_perms[s][i]).collect());
                queue.push(y);
            }
        }
    }
    let index = perms.into_iter().enumerate().map(|(i, p)| (p.unwrap(), i)).collect();
    Ok((g, index))
}

fn semidirect(label: &str, s: &SemidirectSection, max_order: usize) -> Result<FiniteGroup> {
    let invalid = |m: String| Error::InvalidParameter { family: "semidirect".into(), reason: m };
    let (n, n_index) = perm_group_with_index("normal", &s.normal, max_order)?;
    let (h, h_index) = perm_group_with_index("complement", &s.complement, max_order)?;
    if (n.order() as u64) * (h.order() as u64) > max_order as u64 {
        return Err(Error::OrderTooLarge { order: n.order() as u64 * h.order() as u64, max: max_order });
    }
    if s.action.len() != s.complement.generators.len() {
        return Err(invalid("one action row is required per complement generator".into()));
    }
    let n_gens: Vec<usize> = s
        .normal
        .generators
        .iter()
        .map(|p| n_index[p])
        .collect();
    // automorphism of N for each complement generator, extended from generator images
    let mut auts: Vec<Vec<usize>> = Vec::new();
    for (si, row) in s.action.iter().enumerate() {
        if row.len() != n_gens.len() {
            return Err(invalid(format!("action row {si} must list one image per normal generator")));
        }
        let mut imgs = Vec::with_capacity(row.len());
        for p in row {
            imgs.push(*n_index.get(p).ok_or_else(|| invalid(format!("action row {si} leaves the normal subgroup")))?);
        }
        let mut phi = vec![usize::MAX; n.order()];
        phi[0] = 0;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (t, &g) in n_gens.iter().enumerate() {
                let y = n.mul(x, g);
                let v = n.mul(phi[x], imgs[t]);
                if phi[y] == usize::MAX {
                    phi[y] = v;
                    queue.push(y);
                } else if phi[y] != v {
                    return Err(invalid(format!("action row {si} is not a homomorphism")));
                }
            }
        }
        let mut hit = vec![false; n.order()];
        for &v in &phi {
            if std::mem::replace(&mut hit[v], true) {
                return Err(invalid(format!("action row {si} is not bijective")));
            }
        }
        auts.push(phi);
    }
    // the action of every complement element, phi_{x s} = phi_x o phi_s
    let h_gens: Vec<usize> = s.complement.generators.iter().map(|p| h_index[p]).collect();
    let mut act: Vec<Option<Vec<usize>>> = vec![None; h.order()];
    act[0] = Some((0..n.order()).collect());
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (si, &g) in h_gens.iter().enumerate() {
            let y = h.mul(x, g);
            let ax = act[x].as_ref().unwrap();
            let composed: Vec<usize> = (0..n.order()).map(|e| ax[auts[si][e]]).collect();
            match &act[y] {
                None => {
                    act[y] = Some(composed);
                    queue.push(y);
                }
                Some(existing) if *existing != composed => {
                    return Err(invalid("the action is not a homomorphism of the complement".into()));
                }
                Some(_) => {}
            }
        }
    }
    let act: Vec<Vec<usize>> = act.into_iter().map(Option::unwrap).collect();
    let gens: Vec<(usize, usize)> =
        n_gens.iter().map(|&g| (g, 0)).chain(h_gens.iter().map(|&g| (0, g))).collect();
    FiniteGroup::from_generators(
        label.to_string(),
        (0usize, 0usize),
        &gens,
        |&(n1, h1), &(n2, h2)| (n.mul(n1, act[h1][n2]), h.mul(h1, h2)),
        max_order,
    )
}

pub fn load_perm_group(path: &Path) -> Result<FiniteGroup> {
    load_perm_group_with(path, DEFAULT_MAX_ORDER)
}

pub fn load_perm_group_with(path: &Path, max_order: usize) -> Result<FiniteGroup> {
    let file: PermGroupFile = parse(path)?;
    file.build(max_order)
}

/// Loads a perm file together with its marked element lists.
pub fn load_perm_group_marked(path: &Path, max_order: usize) -> Result<(FiniteGroup, BTreeMap<String, Vec<usize>>)> {
    let file: PermGroupFile = parse(path)?;
    file.build_with_marks(max_order)
}

pub fn load_cayley(path: &Path) -> Result<FiniteGroup> {
    let file: CayleyFile = parse(path)?;
    if file.table.len() != file.order {
        return Err(Error::Parse {
            path: path.to_path_buf(),
            reason: format!("table has {} rows but order is {}", file.table.len(), file.order),
        });
    }
    FiniteGroup::from_table(file.label, &file.table)
}

pub fn save_cayley(g: &FiniteGroup, path: &Path) -> Result<()> {
    let file = CayleyFile { label: g.label().to_string(), order: g.order(), table: g.table() };
    write(path, &serde_json::to_string(&file).expect("serializable"))
}

impl CharTableFile {
    pub fn from_table(t: &CharacterTable) -> Result<Self> {
        let values = t
            .values()
            .iter()
            .map(|r| r.iter().map(CyclotomicJson::from_value).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(CharTableFile {
            label: t.label().to_string(),
            order: t.order(),
            class_sizes: t.class_sizes().to_vec(),
            rep_orders: t.rep_orders().to_vec(),
            power_maps: t.power_maps().to_vec(),
            degrees: t.degrees().to_vec(),
            values,
        })
    }

    pub fn to_table(&self) -> Result<CharacterTable> {
        let mut values = Vec::with_capacity(self.values.len());
        for (i, row) in self.values.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for (c, v) in row.iter().enumerate() {
                r.push(v.to_value().map_err(|m| Error::Validation(format!("value ({i}, {c}): {m}")))?);
            }
            values.push(r);
        }
        let t = CharacterTable::from_parts(
            self.label.clone(),
            self.order,
            self.class_sizes.clone(),
            self.rep_orders.clone(),
            self.power_maps.clone(),
            values,
        )?;
        let mut stated = self.degrees.clone();
        stated.sort_unstable();
        if stated != t.degrees() {
            return Err(Error::Validation("stated degrees disagree with column 0".into()));
        }
        Ok(t)
    }
}

pub fn load_chartable(path: &Path) -> Result<CharacterTable> {
    let file: CharTableFile = parse(path)?;
    file.to_table()
}

pub fn chartable_to_json(t: &CharacterTable) -> Result<String> {
    Ok(serde_json::to_string_pretty(&CharTableFile::from_table(t)?).expect("serializable"))
}

pub fn save_chartable(t: &CharacterTable, path: &Path) -> Result<()> {
    write(path, &chartable_to_json(t)?)
}

pub fn save_perm_group(file: &PermGroupFile, path: &Path) -> Result<()> {
    write(path, &serde_json::to_string_pretty(file).expect("serializable"))
}
