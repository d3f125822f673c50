//! Sparse multivariate polynomials over the rationals with a fixed grading.

mod monomial;
mod special;

pub use monomial::{Monomial, VarId, VarKind};
pub use special::{
    difference_quotient, pi_poly, FQuotients, pi_poly_in, power_sum_eval, power_sum_expand, uv_polys,
    uv_polys_in,
};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::PolyError;

/// Exact rational coefficients.
pub type Q = BigRational;

pub fn q_int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// A polynomial as a map from monomials to nonzero coefficients. The map is
/// ordered by the graded lex monomial order, so iteration (and printing) is
/// canonical.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Poly::term(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(q_int(c))
    }

    pub fn var(v: VarId) -> Self {
        Poly::term(Monomial::var(v), Q::one())
    }

    pub fn var_pow(v: VarId, e: u32) -> Self {
        Poly::term(Monomial::var_pow(v, e), Q::one())
    }

    pub fn term(m: Monomial, c: Q) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Q)>>(it: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Q)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, Q> {
        self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Q)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Q> {
        self.leading_term().map(|(_, c)| c)
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// The common Z-degree of all terms, or `None` if the polynomial is zero
    /// or not homogeneous.
    pub fn degree(&self) -> Option<i64> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|m| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.variables()).collect()
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.terms.keys().any(|m| m.exponent(v) > 0)
    }

    pub fn degree_in(&self, v: VarId) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients of `self` as a polynomial in `v`: entry `k` is the
    /// coefficient of `v^k`.
    pub fn coefficients_in(&self, v: VarId) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            out[e as usize].add_term(rest, c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    pub fn partial_derivative(&self, v: VarId) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            if e > 0 {
                let m2 = rest.mul(&Monomial::var_pow(v, e - 1));
                out.add_term(m2, c * q_int(e as i64));
            }
        }
        out
    }

    /// Simultaneous substitution of variables by polynomials.
    pub fn substitute(&self, map: &BTreeMap<VarId, Poly>) -> Poly {
        if map.is_empty() || !self.terms.keys().any(|m| m.variables().any(|v| map.contains_key(&v)))
        {
            return self.clone();
        }
        let mut powers: HashMap<(VarId, u32), Poly> = HashMap::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = Poly::one();
            for &(v, e) in m.exps() {
                match map.get(&v) {
                    Some(p) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| p.pow(e));
                        acc = &acc * &*pw;
                    }
                    None => kept.push((v, e)),
                }
            }
            let rest = Monomial::from_pairs(kept);
            for (n, a) in acc.terms {
                out.add_term(n.mul(&rest), a * c);
            }
        }
        out
    }

    pub fn substitute_var(&self, v: VarId, p: &Poly) -> Poly {
        let mut map = BTreeMap::new();
        map.insert(v, p.clone());
        self.substitute(&map)
    }

    /// Renames variables; the map must be injective on the variables present.
    pub fn rename(&self, map: &BTreeMap<VarId, VarId>) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let m2 = Monomial::from_pairs(
                m.exps()
                    .iter()
                    .map(|&(v, e)| (*map.get(&v).unwrap_or(&v), e)),
            );
            (m2, c.clone())
        }))
    }

    /// Division with remainder by a single divisor under the monomial order.
    pub fn div_rem(&self, den: &Poly) -> Result<(Poly, Poly), PolyError> {
        let (lm, lc) = den.leading_term().ok_or(PolyError::DivisionByZero)?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = Poly::zero();
        let mut quo = Poly::zero();
        let mut p = self.clone();
        while let Some((m, c)) = p.terms.iter().next_back() {
            let (m, c) = (m.clone(), c.clone());
            match m.div(&lm) {
                Some(t) => {
                    let f = c / &lc;
                    let sub = den.mul_monomial(&t, &f);
                    p -= &sub;
                    quo.add_term(t, f);
                }
                None => {
                    p.terms.remove(&m);
                    rem.add_term(m, c);
                }
            }
        }
        Ok((quo, rem))
    }

    /// Exact quotient `self / den`.
    pub fn exact_div(&self, den: &Poly) -> Result<Poly, PolyError> {
        let (q, r) = self.div_rem(den)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NonExactDivision {
                num: self.to_string(),
                den: den.to_string(),
                remainder: r.to_string(),
            })
        }
    }

    /// Makes the leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.recip()),
            None => Poly::zero(),
        }
    }

    /// If `self = c·v^d + p` with `c` a nonzero rational and `deg_v p < d`,
    /// returns `(d, c, p)`.
    pub fn monic_in(&self, v: VarId) -> Option<(u32, Q, Poly)> {
        let d = self.degree_in(v);
        if d == 0 {
            return None;
        }
        let lead = Monomial::var_pow(v, d);
        let mut c = None;
        let mut rest = Poly::zero();
        for (m, a) in &self.terms {
            if m.exponent(v) == d {
                if *m != lead {
                    return None;
                }
                c = Some(a.clone());
            } else {
                rest.add_term(m.clone(), a.clone());
            }
        }
        c.map(|c| (d, c, rest))
    }
}

fn fmt_coeff(c: &Q) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{}", fmt_coeff(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_coeff(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl From<VarId> for Poly {
    fn from(v: VarId) -> Self {
        Poly::var(v)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::int(c)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                out.add_term(m.mul(n), a * b);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $f:ident) => {
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                self.$f(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Poly {
        Poly::var(VarId::x(i))
    }

    #[test]
    fn exact_division_examples() {
        let a = &x(1) * &x(1) - &x(2) * &x(2);
        assert_eq!(a.exact_div(&(x(1) - x(2))).unwrap(), x(1) + x(2));
        let b = x(1).pow(3) - x(2).pow(3);
        assert_eq!(
            b.exact_div(&(x(1) - x(2))).unwrap(),
            x(1).pow(2) + &x(1) * &x(2) + x(2).pow(2)
        );
        let c = x(1).pow(2) + x(2);
        assert!(matches!(
            c.exact_div(&x(1)),
            Err(PolyError::NonExactDivision { .. })
        ));
        assert!(matches!(
            c.exact_div(&Poly::zero()),
            Err(PolyError::DivisionByZero)
        ));
    }

    #[test]
    fn derivative_examples() {
        let y = Poly::var(VarId::y(1));
        let z = Poly::var(VarId::z(1));
        let p = &y.pow(3) * &z;
        assert_eq!(p.partial_derivative(VarId::y(1)), &y.pow(2) * &z * Poly::int(3));
        assert!(Poly::int(7).partial_derivative(VarId::x(1)).is_zero());
    }

    #[test]
    fn display_is_canonical() {
        let p = x(2) - x(1) * Poly::int(2) + Poly::int(3);
        assert_eq!(p.to_string(), "-2*x1 + x2 + 3");
        let q = Poly::constant(q_frac(-1, 2)) * x(1).pow(2);
        assert_eq!(q.to_string(), "-1/2*x1^2");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn monic_in_detects_leading_power() {
        let y = Poly::var(VarId::y(1));
        let z = Poly::var(VarId::z(1));
        let p = y.pow(2) * Poly::int(3) - &y * &x(1) + z.clone();
        let (d, c, rest) = p.monic_in(VarId::y(1)).unwrap();
        assert_eq!(d, 2);
        assert_eq!(c, q_int(3));
        assert_eq!(rest, z - &y * &x(1));
        let q = &y.pow(2) * &x(1);
        assert!(q.monic_in(VarId::y(1)).is_none());
    }

    #[test]
    fn substitution_is_simultaneous() {
        let p = x(1) - x(2);
        let mut map = BTreeMap::new();
        map.insert(VarId::x(1), x(2));
        map.insert(VarId::x(2), x(1));
        assert_eq!(p.substitute(&map), x(2) - x(1));
    }
}
