use std::collections::{BTreeMap, HashMap};

use crate::poly::{Poly, Q};
use crate::quotient::QuotientRing;

/// A sparse matrix of polynomials. Entry `(i, j)` is the coefficient of
/// target generator `i` in the image of source generator `j`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    pub nrows: usize,
    pub ncols: usize,
    entries: BTreeMap<(usize, usize), Poly>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one());
        }
        m
    }

    pub fn from_dense(rows: Vec<Vec<Poly>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = SparseMatrix::zeros(nrows, ncols);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged matrix");
            for (j, p) in row.into_iter().enumerate() {
                m.set(i, j, p);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Poly {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert!(i < self.nrows && j < self.ncols, "index out of range");
        if p.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), p);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> + '_ {
        self.entries.iter().map(|(&(i, j), p)| (i, j, p))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<Poly>> {
        let mut out = vec![vec![Poly::zero(); self.ncols]; self.nrows];
        for (i, j, p) in self.entries() {
            out[i][j] = p.clone();
        }
        out
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        let mut out = SparseMatrix::zeros(self.nrows, self.ncols);
        for (i, j, p) in self.entries() {
            out.set(i, j, f(p));
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn neg(&self) -> Self {
        self.map(|p| -p)
    }

    /// Product `self * rhs`, with every entry reduced in `ring`.
    ///
    /// Matrices built from Koszul rows repeat a few polynomials many times,
    /// so distinct entries are interned and both the pairwise products and
    /// the reduced sums are computed once per distinct combination.
    pub fn mul(&self, rhs: &SparseMatrix, ring: &QuotientRing) -> Self {
        assert_eq!(self.ncols, rhs.nrows, "shape mismatch in product");
        let mut left_ids: HashMap<&Poly, usize> = HashMap::new();
        let mut left: Vec<&Poly> = Vec::new();
        let mut right_ids: HashMap<&Poly, usize> = HashMap::new();
        let mut right: Vec<&Poly> = Vec::new();
        let intern = |ids: &mut HashMap<_, usize>, store: &mut Vec<_>, p| {
            *ids.entry(p).or_insert_with(|| {
                store.push(p);
                store.len() - 1
            })
        };
        let mut by_row: Vec<Vec<(usize, usize)>> = vec![Vec::new(); rhs.nrows];
        for (k, j, p) in rhs.entries() {
            let id = intern(&mut right_ids, &mut right, p);
            by_row[k].push((j, id));
        }
        let mut acc: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for (i, k, a) in self.entries() {
            let ia = intern(&mut left_ids, &mut left, a);
            for &(j, ib) in &by_row[k] {
                acc.entry((i, j)).or_default().push((ia, ib));
            }
        }
        let mut products: HashMap<(usize, usize), Poly> = HashMap::new();
        let mut sums: HashMap<Vec<(usize, usize)>, Poly> = HashMap::new();
        let mut out = SparseMatrix::zeros(self.nrows, rhs.ncols);
        for ((i, j), mut pairs) in acc {
            pairs.sort_unstable();
            let value = match sums.get(&pairs) {
                Some(v) => v.clone(),
                None => {
                    let mut total = Poly::zero();
                    for &(ia, ib) in &pairs {
                        let prod = products
                            .entry((ia, ib))
                            .or_insert_with(|| left[ia] * right[ib]);
                        total += &*prod;
                    }
                    let v = ring.normal_form(&total);
                    sums.insert(pairs, v.clone());
                    v
                }
            };
            out.set(i, j, value);
        }
        out
    }

    /// Kronecker product `self ⊗ rhs` (rows and columns indexed `i * n + k`).
    pub fn kron(&self, rhs: &SparseMatrix) -> Self {
        let mut out = SparseMatrix::zeros(self.nrows * rhs.nrows, self.ncols * rhs.ncols);
        let one = Poly::one();
        for (i, j, a) in self.entries() {
            for (k, l, b) in rhs.entries() {
                let p = if *a == one {
                    b.clone()
                } else if *b == one {
                    a.clone()
                } else {
                    a * b
                };
                out.set(i * rhs.nrows + k, j * rhs.ncols + l, p);
            }
        }
        out
    }

    /// Places `block` with its top-left corner at `(r, c)`.
    pub fn put_block(&mut self, r: usize, c: usize, block: &SparseMatrix) {
        for (i, j, p) in block.entries() {
            self.set(r + i, c + j, p.clone());
        }
    }

    /// Conjugate-style reindexing: `out[perm_r[i]][perm_c[j]] = self[i][j]`.
    pub fn permute(&self, perm_r: &[usize], perm_c: &[usize]) -> Self {
        let mut out = SparseMatrix::zeros(self.nrows, self.ncols);
        for (i, j, p) in self.entries() {
            out.set(perm_r[i], perm_c[j], p.clone());
        }
        out
    }
}
