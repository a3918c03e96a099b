//! Dense linear algebra over a small prime field `F_p`.

#[derive(Clone, Copy, Debug)]
pub struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        Field { p }
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p { s - self.p } else { s }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b { a - b } else { a + self.p - b }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(self, a: u64) -> u64 {
        if a == 0 { 0 } else { self.p - a }
    }

    pub fn pow(self, mut b: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    /// Smallest primitive root.
    pub fn primitive_root(self) -> u64 {
        let phi = self.p - 1;
        let mut factors = Vec::new();
        let mut m = phi;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (1..self.p).find(|&g| factors.iter().all(|&q| self.pow(g, phi / q) != 1)).unwrap()
    }

    /// Square roots of `a`, smallest first (empty if `a` is a non-residue).
    pub fn sqrt_all(self, a: u64) -> Vec<u64> {
        let a = a % self.p;
        (0..self.p).filter(|&x| self.mul(x, x) == a).collect()
    }
}

/// Row-major square or rectangular matrix.
pub type Matrix = Vec<Vec<u64>>;

/// Characteristic polynomial `det(xI - A)`, coefficients lowest degree first.
///
/// Reduces to upper Hessenberg form by similarity, then runs the standard
/// Hessenberg recurrence.
pub fn charpoly(f: Field, a: &Matrix) -> Vec<u64> {
    let n = a.len();
    let mut h = a.clone();
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| h[i][m - 1] != 0) else { continue };
        if piv != m {
            h.swap(piv, m);
            for row in h.iter_mut() {
                row.swap(piv, m);
            }
        }
        let inv = f.inv(h[m][m - 1]);
        for i in m + 1..n {
            if h[i][m - 1] == 0 {
                continue;
            }
            let t = f.mul(h[i][m - 1], inv);
            // row_i -= t row_m
            for j in 0..n {
                let v = f.mul(t, h[m][j]);
                h[i][j] = f.sub(h[i][j], v);
            }
            // col_m += t col_i
            for row in h.iter_mut() {
                let v = f.mul(t, row[i]);
                row[m] = f.add(row[m], v);
            }
        }
    }
    // p[k] = charpoly of the leading k x k block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        // x * p_k - h[k][k] * p_k
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = f.add(next[i + 1], c);
            next[i] = f.sub(next[i], f.mul(h[k][k], c));
        }
        // - sum_{i<k} h[i][k] * prod_{j=i+1}^{k} h[j][j-1] * p_i
        let mut t = 1u64;
        for i in (0..k).rev() {
            t = f.mul(t, h[i + 1][i]);
            if t == 0 {
                break;
            }
            let coef = f.mul(t, h[i][k]);
            if coef == 0 {
                continue;
            }
            for (j, &c) in polys[i].iter().enumerate() {
                next[j] = f.sub(next[j], f.mul(coef, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

pub fn eval(f: Field, poly: &[u64], x: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Distinct roots in `F_p`, ascending.
pub fn roots(f: Field, poly: &[u64]) -> Vec<u64> {
    (0..f.p).filter(|&x| eval(f, poly, x) == 0).collect()
}

/// Basis of the right nullspace `{v : A v = 0}` as columns, in reduced
/// column-echelon form with respect to the free variables.
pub fn nullspace(f: Field, a: &Matrix) -> Vec<Vec<u64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m = a.clone();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(piv, r);
        let inv = f.inv(m[r][c]);
        for j in c..cols {
            m[r][j] = f.mul(m[r][j], inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let t = m[i][c];
                for j in c..cols {
                    let v = f.mul(t, m[r][j]);
                    m[i][j] = f.sub(m[i][j], v);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(m[i][free]);
        }
        basis.push(v);
    }
    basis
}

/// Brings a set of column vectors into reduced column-echelon form.
///
/// Returns the new columns and the pivot row of each, so that the submatrix
/// on the pivot rows is the identity.
pub fn column_echelon(f: Field, cols: Vec<Vec<u64>>) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut cols = cols;
    let dim = cols.first().map_or(0, |c| c.len());
    let mut pivots = Vec::new();
    let mut c = 0;
    for row in 0..dim {
        if c == cols.len() {
            break;
        }
        let Some(piv) = (c..cols.len()).find(|&j| cols[j][row] != 0) else { continue };
        cols.swap(piv, c);
        let inv = f.inv(cols[c][row]);
        for x in cols[c].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for j in 0..cols.len() {
            if j != c && cols[j][row] != 0 {
                let t = cols[j][row];
                for i in 0..dim {
                    let v = f.mul(t, cols[c][i]);
                    cols[j][i] = f.sub(cols[j][i], v);
                }
            }
        }
        pivots.push(row);
        c += 1;
    }
    cols.truncate(c);
    (cols, pivots)
}
