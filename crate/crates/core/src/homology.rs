//! Graded homology of potential-zero factorizations over finite-dimensional
//! graded quotient rings.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::HomologyError;
use crate::laurent::LaurentPoly;
use crate::linalg::rank;
use crate::mf::{ExplicitMf, MfSum, SparseMatrix, Summand};
use crate::poly::{Monomial, Q};

/// Poincaré polynomials of `H` in parity 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyResult {
    pub poincare0: LaurentPoly,
    pub poincare1: LaurentPoly,
}

impl HomologyResult {
    /// The unsigned Euler characteristic `poincare0 + poincare1`.
    pub fn euler(&self) -> LaurentPoly {
        &self.poincare0 + &self.poincare1
    }

    /// `poincare0 - poincare1`.
    pub fn signed_euler(&self) -> LaurentPoly {
        &self.poincare0 - &self.poincare1
    }

    pub fn add(&self, other: &HomologyResult) -> HomologyResult {
        HomologyResult {
            poincare0: &self.poincare0 + &other.poincare0,
            poincare1: &self.poincare1 + &other.poincare1,
        }
    }

    pub fn swap(&self) -> HomologyResult {
        HomologyResult {
            poincare0: self.poincare1.clone(),
            poincare1: self.poincare0.clone(),
        }
    }

    pub fn shift(&self, m: i64) -> HomologyResult {
        HomologyResult {
            poincare0: self.poincare0.shift(m),
            poincare1: self.poincare1.shift(m),
        }
    }
}

pub fn euler_characteristic(h: &HomologyResult) -> LaurentPoly {
    h.euler()
}

pub fn signed_euler(h: &HomologyResult) -> LaurentPoly {
    h.signed_euler()
}

/// Homology of a direct sum, summand by summand. Summands without rows
/// contribute their base ring in their parity slot; the rest are expanded
/// and handled degree by degree.
pub fn graded_homology(s: &MfSum) -> Result<HomologyResult, HomologyError> {
    let mut out = HomologyResult::default();
    for summand in s.iter() {
        out = out.add(&summand_homology(summand)?);
    }
    Ok(out)
}

pub fn summand_homology(s: &Summand) -> Result<HomologyResult, HomologyError> {
    match s {
        Summand::Koszul(k) => {
            let w = k.potential();
            if !w.is_zero() {
                return Err(HomologyError::NonzeroPotential(w.to_string()));
            }
            if k.rows.is_empty() {
                let dim = k.base.graded_dimension(k.shift)?;
                let h = HomologyResult {
                    poincare0: dim,
                    poincare1: LaurentPoly::zero(),
                };
                Ok(if k.parity { h.swap() } else { h })
            } else {
                explicit_homology(&k.to_explicit())
            }
        }
        Summand::Explicit(e) => {
            let w = e
                .potential()
                .map_err(|err| HomologyError::NonzeroPotential(err.to_string()))?;
            if !w.is_zero() {
                return Err(HomologyError::NonzeroPotential(w.to_string()));
            }
            explicit_homology(e)
        }
    }
}

/// Coordinates `(generator, standard monomial)` of a graded free module,
/// grouped by total degree.
struct GradedBasis {
    index: BTreeMap<(usize, Monomial), usize>,
    by_degree: BTreeMap<i64, Vec<(usize, Monomial)>>,
}

impl GradedBasis {
    fn new(degrees: &[i64], monomials: &[Monomial]) -> Self {
        let mut by_degree: BTreeMap<i64, Vec<(usize, Monomial)>> = BTreeMap::new();
        for (g, &dg) in degrees.iter().enumerate() {
            for m in monomials {
                by_degree
                    .entry(dg + m.degree())
                    .or_default()
                    .push((g, m.clone()));
            }
        }
        let mut index = BTreeMap::new();
        for part in by_degree.values() {
            for (k, key) in part.iter().enumerate() {
                index.insert(key.clone(), k);
            }
        }
        GradedBasis { index, by_degree }
    }

    fn dim(&self, j: i64) -> usize {
        self.by_degree.get(&j).map_or(0, Vec::len)
    }
}

/// The degree of every map in `d`, read off from any nonzero entry.
fn map_degree(d: &SparseMatrix, src: &[i64], tgt: &[i64]) -> Option<i64> {
    d.entries()
        .find_map(|(i, j, p)| p.degree().map(|e| e + src[j] - tgt[i]))
}

/// Rank of `d` restricted to source degree `j`.
fn block_rank(
    e: &ExplicitMf,
    d: &SparseMatrix,
    src: &GradedBasis,
    tgt: &GradedBasis,
    j: i64,
    shift: i64,
) -> usize {
    let Some(cols) = src.by_degree.get(&j) else {
        return 0;
    };
    let width = tgt.dim(j + shift);
    if width == 0 {
        return 0;
    }
    let mut by_col: BTreeMap<usize, Vec<(usize, &crate::poly::Poly)>> = BTreeMap::new();
    for (i, c, p) in d.entries() {
        by_col.entry(c).or_default().push((i, p));
    }
    let mut rows = Vec::with_capacity(cols.len());
    for (g, m) in cols {
        let mut v = vec![Q::zero(); width];
        for (i, p) in by_col.get(g).map(Vec::as_slice).unwrap_or(&[]) {
            let img = e.base.normal_form(&p.mul_monomial(m, &Q::from_integer(1.into())));
            for (mono, c) in img.terms() {
                let k = tgt.index[&(*i, mono.clone())];
                v[k] += c;
            }
        }
        rows.push(v);
    }
    rank(&rows)
}

/// Homology of an explicit potential-zero factorization over a
/// finite-dimensional base, computed degree by degree.
pub fn explicit_homology(e: &ExplicitMf) -> Result<HomologyResult, HomologyError> {
    let monomials = e.base.standard_monomials()?;
    let deg0: Vec<i64> = e.basis0.iter().map(|g| g.degree).collect();
    let deg1: Vec<i64> = e.basis1.iter().map(|g| g.degree).collect();
    let b0 = GradedBasis::new(&deg0, &monomials);
    let b1 = GradedBasis::new(&deg1, &monomials);
    let s0 = map_degree(&e.d0, &deg0, &deg1).unwrap_or(0);
    let s1 = map_degree(&e.d1, &deg1, &deg0).unwrap_or(0);

    let mut p0 = LaurentPoly::zero();
    for &j in b0.by_degree.keys() {
        let out = block_rank(e, &e.d0, &b0, &b1, j, s0);
        let into = block_rank(e, &e.d1, &b1, &b0, j - s1, s1);
        p0.add_term(j, (b0.dim(j) - out - into) as i64);
    }
    let mut p1 = LaurentPoly::zero();
    for &j in b1.by_degree.keys() {
        let out = block_rank(e, &e.d1, &b1, &b0, j, s1);
        let into = block_rank(e, &e.d0, &b0, &b1, j - s0, s0);
        p1.add_term(j, (b1.dim(j) - out - into) as i64);
    }
    Ok(HomologyResult {
        poincare0: p0,
        poincare1: p1,
    })
}
