//! Integer Laurent polynomials in `q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Finite sum of `c * q^e` with nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, 1)
    }

    /// `c * q^e`.
    pub fn monomial(e: i64, c: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn q_pow(e: i64) -> Self {
        LaurentPoly::monomial(e, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(it: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> i64 {
        self.terms.get(&e).copied().unwrap_or(0)
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Multiplies by `q^m`.
    pub fn shift(&self, m: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e + m, c)).collect(),
        }
    }

    /// `q -> q^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = LaurentPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Long division by `den`; returns `(quotient, remainder)` with the
    /// remainder's top exponent below `den`'s span, or `None` if `den` is
    /// zero. Integer coefficients are kept when the leading coefficient of
    /// `den` divides every intermediate leading coefficient.
    pub fn div_rem(&self, den: &LaurentPoly) -> Option<(LaurentPoly, LaurentPoly)> {
        let (dmax, dlc) = den.terms.iter().next_back().map(|(&e, &c)| (e, c))?;
        let dmin = den.min_exp().unwrap();
        let mut rem = self.clone();
        let mut quo = LaurentPoly::zero();
        while let Some((rmax, rlc)) = rem.terms.iter().next_back().map(|(&e, &c)| (e, c)) {
            let rmin = rem.min_exp().unwrap();
            if rmax - rmin < dmax - dmin || rlc % dlc != 0 {
                break;
            }
            let t = LaurentPoly::monomial(rmax - dmax, rlc / dlc);
            rem = &rem - &(&t * den);
            quo += &t;
        }
        Some((quo, rem))
    }

    /// Exact quotient, or `None` if `den` does not divide `self`.
    pub fn exact_div(&self, den: &LaurentPoly) -> Option<LaurentPoly> {
        match self.div_rem(den) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }
}

/// The quantum integer `[n] = q^{n-1} + q^{n-3} + ... + q^{1-n}`.
pub fn quantum_integer(n: u32) -> LaurentPoly {
    LaurentPoly::from_terms((0..n as i64).map(|k| (n as i64 - 1 - 2 * k, 1)))
}

impl fmt::Display for LaurentPoly {
    /// Terms in increasing exponent, e.g. `q^-2 + 1 + 3*q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, &c)) in self.terms.iter().enumerate() {
            let a = c.abs();
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (e, a) {
                (0, a) => write!(f, "{a}")?,
                (e, 1) => write!(f, "q^{e}")?,
                (e, a) => write!(f, "{a}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = String;

    /// Parses the `Display` format.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "0" {
            return Ok(LaurentPoly::zero());
        }
        let mut out = LaurentPoly::zero();
        let mut rest = s;
        let mut sign = 1;
        if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        }
        loop {
            let (term, next) = match rest.find([' ']) {
                Some(i) => (&rest[..i], Some(&rest[i..])),
                None => (rest, None),
            };
            let (coef, exp) = match term.split_once("q^") {
                Some((c, e)) => {
                    let c = c.strip_suffix('*').unwrap_or(c);
                    let c: i64 = if c.is_empty() {
                        1
                    } else {
                        c.parse().map_err(|_| format!("bad coefficient `{c}`"))?
                    };
                    let e: i64 = e.parse().map_err(|_| format!("bad exponent `{e}`"))?;
                    (c, e)
                }
                None => (
                    term.parse().map_err(|_| format!("bad term `{term}`"))?,
                    0,
                ),
            };
            out.add_term(exp, sign * coef);
            match next {
                None => break,
                Some(n) => {
                    if let Some(r) = n.strip_prefix(" + ") {
                        sign = 1;
                        rest = r;
                    } else if let Some(r) = n.strip_prefix(" - ") {
                        sign = -1;
                        rest = r;
                    } else {
                        return Err(format!("unexpected `{n}`"));
                    }
                }
            }
        }
        Ok(out)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (&e, &c) in &rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e, &c) in &self.terms {
            for (&f, &d) in &rhs.terms {
                out.add_term(e + f, c * d);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_integers() {
        assert!(quantum_integer(0).is_zero());
        assert_eq!(quantum_integer(1), LaurentPoly::one());
        assert_eq!(quantum_integer(2).to_string(), "q^-1 + q^1");
        assert_eq!(quantum_integer(3).to_string(), "q^-2 + 1 + q^2");
    }

    #[test]
    fn display_round_trips() {
        for s in ["0", "q^-2 + 1 + q^2", "-3*q^-1 + 2 - q^4", "7", "-1"] {
            let p: LaurentPoly = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
    }

    #[test]
    fn division_by_two() {
        let num = &quantum_integer(4) * &quantum_integer(3);
        let q = num.exact_div(&quantum_integer(2)).unwrap();
        assert_eq!(q.to_string(), "q^-4 + q^-2 + 2 + q^2 + q^4");
        assert!(quantum_integer(3).exact_div(&quantum_integer(2)).is_none());
    }
}
