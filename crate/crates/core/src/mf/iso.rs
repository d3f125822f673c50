//! The structural isomorphisms of the tensor product, as explicit matrices.

use crate::poly::Poly;

use super::explicit::ExplicitMf;
use super::matrix::SparseMatrix;

/// A pair `(f0, f1)` with `f0: X0 -> Y0` and `f1: X1 -> Y1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MfMap {
    pub f0: SparseMatrix,
    pub f1: SparseMatrix,
}

impl MfMap {
    /// Checks `f1 dX0 = dY0 f0` and `f0 dX1 = dY1 f1` exactly.
    pub fn is_morphism(&self, x: &ExplicitMf, y: &ExplicitMf) -> bool {
        let ring = &y.base;
        self.f1.mul(&x.d0, ring) == y.d0.mul(&self.f0, ring)
            && self.f0.mul(&x.d1, ring) == y.d1.mul(&self.f1, ring)
    }
}

/// The swap `T: A ⊗ B -> B ⊗ A` for free modules of ranks `a` and `b`.
fn swap(a: usize, b: usize, sign: i64) -> SparseMatrix {
    let mut t = SparseMatrix::zeros(a * b, a * b);
    for i in 0..a {
        for j in 0..b {
            t.set(j * a + i, i * b + j, Poly::int(sign));
        }
    }
    t
}

/// The isomorphism `M ⊠ N -> N ⊠ M` given by `((T, 0; 0, -T), (0, T; T, 0))`.
pub fn commutativity_iso(m: &ExplicitMf, n: &ExplicitMf) -> MfMap {
    let (m0, m1) = m.rank();
    let (n0, n1) = n.rank();
    // slot 0: (M0N0, M1N1) -> (N0M0, N1M1)
    let mut f0 = SparseMatrix::zeros(m0 * n0 + m1 * n1, m0 * n0 + m1 * n1);
    f0.put_block(0, 0, &swap(m0, n0, 1));
    f0.put_block(m0 * n0, m0 * n0, &swap(m1, n1, -1));
    // slot 1: (M1N0, M0N1) -> (N1M0, N0M1)
    let mut f1 = SparseMatrix::zeros(m1 * n0 + m0 * n1, m1 * n0 + m0 * n1);
    f1.put_block(0, m1 * n0, &swap(m0, n1, 1));
    f1.put_block(n1 * m0, 0, &swap(m1, n0, 1));
    MfMap { f0, f1 }
}

/// The isomorphism `(L ⊠ M) ⊠ N -> L ⊠ (M ⊠ N)`. Both slots are
/// permutations without signs: each generator `l ⊗ m ⊗ n` goes to itself.
/// For rank-one factors this sends blocks `(B0, B1, B2, B3)` to
/// `(B0, B3, B1, B2)`.
pub fn associativity_iso(l: &ExplicitMf, m: &ExplicitMf, n: &ExplicitMf) -> MfMap {
    let (rl, rm, rn) = (l.rank(), m.rank(), n.rank());
    let rlm = (
        rl.0 * rm.0 + rl.1 * rm.1,
        rl.1 * rm.0 + rl.0 * rm.1,
    );
    let rmn = (
        rm.0 * rn.0 + rm.1 * rn.1,
        rm.1 * rn.0 + rm.0 * rn.1,
    );
    let lm = [tensor_order(0, rl, rm), tensor_order(1, rl, rm)];
    let mn = [tensor_order(0, rm, rn), tensor_order(1, rm, rn)];
    let mut maps = Vec::with_capacity(2);
    for slot in 0..2 {
        let source: Vec<Triple> = tensor_order(slot, rlm, rn)
            .into_iter()
            .map(|((plm, ilm), n)| {
                let (a, b) = lm[plm][ilm];
                (a, b, n)
            })
            .collect();
        let target: Vec<Triple> = tensor_order(slot, rl, rmn)
            .into_iter()
            .map(|(a, (pmn, imn))| {
                let (b, c) = mn[pmn][imn];
                (a, b, c)
            })
            .collect();
        let position: std::collections::HashMap<Triple, usize> =
            target.iter().enumerate().map(|(k, t)| (*t, k)).collect();
        let mut f = SparseMatrix::zeros(source.len(), source.len());
        for (j, t) in source.iter().enumerate() {
            f.set(position[t], j, Poly::one());
        }
        maps.push(f);
    }
    let f1 = maps.pop().expect("two slots");
    let f0 = maps.pop().expect("two slots");
    MfMap { f0, f1 }
}

/// A generator of a free module tagged by `(parity, index)`.
type Tagged = (usize, usize);
type Triple = (Tagged, Tagged, Tagged);

/// The generators of slot `slot` of `A ⊠ B` in the order used by
/// [`ExplicitMf::tensor`], as pairs of tagged generators.
fn tensor_order(slot: usize, a: (usize, usize), b: (usize, usize)) -> Vec<(Tagged, Tagged)> {
    let blocks = if slot == 0 { [(0, 0), (1, 1)] } else { [(1, 0), (0, 1)] };
    let rank = |r: (usize, usize), p: usize| if p == 0 { r.0 } else { r.1 };
    let mut out = Vec::new();
    for (pa, pb) in blocks {
        for i in 0..rank(a, pa) {
            for j in 0..rank(b, pb) {
                out.push(((pa, i), (pb, j)));
            }
        }
    }
    out
}
