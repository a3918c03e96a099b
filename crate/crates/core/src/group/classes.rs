use super::FiniteGroup;

/// Conjugacy classes in canonical order: size ascending, then smallest member.
///
/// The representative of each class is its smallest member, so class 0 is
/// the identity class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyData {
    pub class_of: Vec<usize>,
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
    /// Order of the representative of each class.
    pub rep_orders: Vec<usize>,
    /// `power_map[c][j]` is the class of `rep_c^j` for `0 <= j < rep_orders[c]`.
    pub power_map: Vec<Vec<usize>>,
}

impl ConjugacyData {
    pub fn class_count(&self) -> usize {
        self.sizes.len()
    }

    /// Class of `g^j` for `g` in class `c`; `j` may be any integer.
    pub fn power(&self, c: usize, j: i64) -> usize {
        let o = self.rep_orders[c] as i64;
        self.power_map[c][j.rem_euclid(o) as usize]
    }

    pub fn members(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.class_of.iter().enumerate().filter(move |(_, &k)| k == c).map(|(x, _)| x)
    }
}

pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyData {
    let n = g.order();
    let mut orbit_of = vec![usize::MAX; n];
    // (size, smallest member) per orbit, in discovery order
    let mut orbits: Vec<(usize, usize)> = Vec::new();
    let gens = g.generators();
    for x in 0..n {
        if orbit_of[x] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[x] = id;
        let mut queue = vec![x];
        let mut head = 0;
        while head < queue.len() {
            let y = queue[head];
            head += 1;
            for &s in gens {
                let z = g.conjugate(y, s);
                if orbit_of[z] == usize::MAX {
                    orbit_of[z] = id;
                    queue.push(z);
                }
            }
        }
        // x is the smallest member since elements are visited in increasing order
        orbits.push((queue.len(), x));
    }
    let mut order: Vec<usize> = (0..orbits.len()).collect();
    order.sort_by_key(|&i| orbits[i]);
    let mut rank = vec![0; orbits.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let class_of: Vec<usize> = orbit_of.iter().map(|&o| rank[o]).collect();
    let representatives: Vec<usize> = order.iter().map(|&i| orbits[i].1).collect();
    let sizes: Vec<usize> = order.iter().map(|&i| orbits[i].0).collect();
    let rep_orders: Vec<usize> = representatives.iter().map(|&r| g.element_order(r)).collect();
    let power_map = representatives
        .iter()
        .zip(&rep_orders)
        .map(|(&r, &o)| {
            let mut row = Vec::with_capacity(o);
            let mut y = 0;
            for _ in 0..o {
                row.push(class_of[y]);
                y = g.mul(y, r);
            }
            row
        })
        .collect();
    ConjugacyData { class_of, representatives, sizes, rep_orders, power_map }
}
