//! Matrix factorizations: Koszul rows, explicit matrices, direct sums.

mod explicit;
mod iso;
mod koszul;
mod matrix;

pub use explicit::{ExplicitMf, Generator};
pub use iso::{associativity_iso, commutativity_iso, MfMap};
pub use koszul::{KoszulMf, KoszulRow};
pub use matrix::SparseMatrix;

use crate::error::MfError;
use crate::poly::Poly;

/// One summand of a direct sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Summand {
    Koszul(KoszulMf),
    Explicit(ExplicitMf),
}

impl Summand {
    pub fn potential(&self) -> Result<Poly, MfError> {
        match self {
            Summand::Koszul(k) => Ok(k.potential()),
            Summand::Explicit(e) => e.potential(),
        }
    }

    pub fn shift(&self, m: i64) -> Summand {
        match self {
            Summand::Koszul(k) => Summand::Koszul(k.shift(m)),
            Summand::Explicit(e) => Summand::Explicit(e.shift(m)),
        }
    }

    pub fn translate(&self) -> Summand {
        match self {
            Summand::Koszul(k) => Summand::Koszul(k.translate()),
            Summand::Explicit(e) => Summand::Explicit(e.translate()),
        }
    }

    pub fn to_explicit(&self) -> ExplicitMf {
        match self {
            Summand::Koszul(k) => k.to_explicit(),
            Summand::Explicit(e) => e.clone(),
        }
    }

    pub fn as_koszul(&self) -> Option<&KoszulMf> {
        match self {
            Summand::Koszul(k) => Some(k),
            Summand::Explicit(_) => None,
        }
    }
}

impl From<KoszulMf> for Summand {
    fn from(k: KoszulMf) -> Self {
        Summand::Koszul(k)
    }
}

impl From<ExplicitMf> for Summand {
    fn from(e: ExplicitMf) -> Self {
        Summand::Explicit(e)
    }
}

/// A flat direct sum. The empty sum is the zero factorization.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MfSum {
    pub summands: Vec<Summand>,
}

impl MfSum {
    pub fn zero() -> Self {
        MfSum::default()
    }

    pub fn single(s: impl Into<Summand>) -> Self {
        MfSum {
            summands: vec![s.into()],
        }
    }

    pub fn push(&mut self, s: impl Into<Summand>) {
        self.summands.push(s.into());
    }

    /// Appends every summand of `other`.
    pub fn extend(&mut self, other: MfSum) {
        self.summands.extend(other.summands);
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Summand> + '_ {
        self.summands.iter()
    }

    pub fn koszul_summands(&self) -> impl Iterator<Item = &KoszulMf> + '_ {
        self.summands.iter().filter_map(Summand::as_koszul)
    }

    pub fn shift(&self, m: i64) -> MfSum {
        MfSum {
            summands: self.summands.iter().map(|s| s.shift(m)).collect(),
        }
    }

    pub fn translate(&self) -> MfSum {
        MfSum {
            summands: self.summands.iter().map(Summand::translate).collect(),
        }
    }
}

impl FromIterator<Summand> for MfSum {
    fn from_iter<I: IntoIterator<Item = Summand>>(iter: I) -> Self {
        MfSum {
            summands: iter.into_iter().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{pi_poly, VarId};
    use crate::quotient::QuotientRing;

    fn x(i: u32) -> Poly {
        Poly::var(VarId::x(i))
    }

    fn free() -> QuotientRing {
        QuotientRing::free([])
    }

    #[test]
    fn koszul_new_shifts() {
        let k = KoszulMf::new(pi_poly(2), x(1) - x(2), free()).unwrap();
        assert_eq!(k.rows[0].shift, -1);
        assert_eq!(k.potential(), x(1).pow(3) - x(2).pow(3));
        let k = KoszulMf::new(x(1), x(1).pow(3), free()).unwrap();
        assert_eq!(k.rows[0].shift, 2);
        assert_eq!(k.potential(), x(1).pow(4));
        let k = KoszulMf::new(Poly::zero(), Poly::zero(), free()).unwrap();
        assert!(k.potential().is_zero());
    }

    #[test]
    fn two_row_blocks() {
        let (a, b, c, d) = (x(1), x(2), x(3), x(4));
        let k = KoszulMf::new(a.clone(), b.clone(), free())
            .unwrap()
            .tensor(&KoszulMf::new(c.clone(), d.clone(), free()).unwrap())
            .unwrap();
        let e = k.to_explicit();
        assert_eq!(
            e.d0.to_dense(),
            vec![vec![a.clone(), -&d], vec![c.clone(), b.clone()]]
        );
        assert_eq!(e.d1.to_dense(), vec![vec![b, d], vec![-&c, a]]);
        assert_eq!(e.verify_factorization().unwrap(), k.potential());
    }

    #[test]
    fn corrupted_matrix_is_rejected() {
        let k = KoszulMf::new(x(1), x(2), free())
            .unwrap()
            .tensor(&KoszulMf::new(x(3), x(4), free()).unwrap())
            .unwrap();
        let mut e = k.to_explicit();
        let p = e.d0.get(0, 1);
        e.d0.set(0, 1, -&p);
        assert!(matches!(
            e.verify_factorization(),
            Err(MfError::NotAFactorization { .. })
        ));
    }

    #[test]
    fn translate_twice_is_identity() {
        let k = KoszulMf::new(x(1), x(2), free()).unwrap();
        let e = k.to_explicit();
        assert_eq!(e.translate().translate(), e);
        assert_eq!(k.translate().translate(), k);
    }

    #[test]
    fn flip_row_is_an_isomorphism_on_one_row() {
        let k = KoszulMf::new(pi_poly(3), x(1) - x(2), free()).unwrap();
        let flipped = k.flip_row(0).unwrap();
        assert_eq!(flipped.rows[0].a, x(2) - x(1));
        assert_eq!(flipped.shift, -2);
        assert!(flipped.parity);
        assert_eq!(flipped.to_explicit(), k.to_explicit());
    }
}
