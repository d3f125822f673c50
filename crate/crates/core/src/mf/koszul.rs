use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::MfError;
use crate::poly::{Poly, VarId};
use crate::quotient::QuotientRing;

use super::explicit::ExplicitMf;

/// One Koszul row `K(a; b) = (R -a-> R{shift} -b-> R)`.
///
/// The internal shift is `(deg b - deg a) / 2`; it is stored because an
/// entry may become zero (after gluing or reduction) and then carries no
/// degree of its own.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KoszulRow {
    pub a: Poly,
    pub b: Poly,
    pub shift: i64,
}

impl KoszulRow {
    /// Computes the internal shift from the degrees of `a` and `b`. If one
    /// entry is zero, the other's degree and `half` (the common degree of
    /// the two maps) determine it.
    pub fn new(a: Poly, b: Poly, half: Option<i64>) -> Result<Self, MfError> {
        let shift = match (a.degree(), b.degree(), a.is_zero(), b.is_zero()) {
            (Some(da), Some(db), _, _) => {
                if (db - da) % 2 != 0 {
                    return Err(MfError::OddShift(db - da));
                }
                (db - da) / 2
            }
            (Some(da), None, _, true) => half.map_or(0, |h| h - da),
            (None, Some(db), true, _) => half.map_or(0, |h| db - h),
            (None, None, true, true) => 0,
            _ => {
                let bad = if a.is_homogeneous() { &b } else { &a };
                return Err(MfError::Inhomogeneous(bad.to_string()));
            }
        };
        Ok(KoszulRow { a, b, shift })
    }

    pub fn with_shift(a: Poly, b: Poly, shift: i64) -> Self {
        KoszulRow { a, b, shift }
    }

    pub fn potential(&self) -> Poly {
        &self.a * &self.b
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> KoszulRow {
        KoszulRow {
            a: f(&self.a),
            b: f(&self.b),
            shift: self.shift,
        }
    }

    pub fn contains_var(&self, v: VarId) -> bool {
        self.a.contains_var(v) || self.b.contains_var(v)
    }
}

impl fmt::Display for KoszulRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ; {}){{{}}}", self.a, self.b, self.shift)
    }
}

/// `K(a; b) = ⊠_i K(a_i; b_i)` over a quotient ring, with an overall grading
/// shift `{shift}` and `parity` applications of `⟨1⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulMf {
    pub rows: Vec<KoszulRow>,
    pub base: QuotientRing,
    pub shift: i64,
    pub parity: bool,
}

impl KoszulMf {
    /// A single-row factorization `K(a; b)` with shift 0 and parity 0.
    pub fn new(a: Poly, b: Poly, base: QuotientRing) -> Result<Self, MfError> {
        let a = base.normal_form(&a);
        let b = base.normal_form(&b);
        let base = base.with_variables(a.variables().into_iter().chain(b.variables()));
        let row = KoszulRow::new(a, b, None)?;
        Ok(KoszulMf {
            rows: vec![row],
            base,
            shift: 0,
            parity: false,
        })
    }

    /// The unit object: no rows.
    pub fn unit(base: QuotientRing) -> Self {
        KoszulMf {
            rows: Vec::new(),
            base,
            shift: 0,
            parity: false,
        }
    }

    pub fn from_rows(rows: Vec<KoszulRow>, base: QuotientRing, shift: i64) -> Self {
        let vars: BTreeSet<VarId> = rows
            .iter()
            .flat_map(|r| r.a.variables().into_iter().chain(r.b.variables()))
            .collect();
        KoszulMf {
            rows,
            base: base.with_variables(vars),
            shift,
            parity: false,
        }
    }

    pub fn potential(&self) -> Poly {
        let mut w = Poly::zero();
        for r in &self.rows {
            w += &r.potential();
        }
        self.base.normal_form(&w)
    }

    /// `M ⊠ N`: rows concatenated left then right, shifts added, parities added.
    pub fn tensor(&self, other: &KoszulMf) -> Result<KoszulMf, MfError> {
        let base = self.base.merge(&other.base)?;
        let rows = self
            .rows
            .iter()
            .chain(&other.rows)
            .map(|r| r.map(|p| base.normal_form(p)))
            .collect();
        Ok(KoszulMf {
            rows,
            base,
            shift: self.shift + other.shift,
            parity: self.parity ^ other.parity,
        })
    }

    /// `⟨1⟩`: flips the parity flag.
    pub fn translate(&self) -> KoszulMf {
        KoszulMf {
            parity: !self.parity,
            ..self.clone()
        }
    }

    /// `{m}`.
    pub fn shift(&self, m: i64) -> KoszulMf {
        KoszulMf {
            shift: self.shift + m,
            ..self.clone()
        }
    }

    /// `M⟨1⟩` realized on row `i` by `K(a;b)⟨1⟩ = K(-b;-a){(deg b - deg a)/2}`:
    /// the row becomes `(-b; -a)` with internal shift negated and the overall
    /// shift grows by the old internal shift. The parity flag is untouched.
    pub fn translate_row(&self, i: usize) -> Result<KoszulMf, MfError> {
        let mut out = self.flip_row(i)?;
        out.parity = self.parity;
        Ok(out)
    }

    /// Rewrites row `i` as in [`KoszulMf::translate_row`] and compensates by
    /// flipping the parity flag, so the result is isomorphic to the input.
    pub fn flip_row(&self, i: usize) -> Result<KoszulMf, MfError> {
        let len = self.rows.len();
        let row = self
            .rows
            .get(i)
            .ok_or(MfError::RowOutOfRange { index: i, len })?;
        let mut out = self.clone();
        out.rows[i] = KoszulRow {
            a: -&row.b,
            b: -&row.a,
            shift: -row.shift,
        };
        out.shift += row.shift;
        out.parity = !out.parity;
        Ok(out)
    }

    /// Simultaneous renaming `v -> map[v]` in rows and base; variables
    /// identified with another are removed from the base.
    pub fn identify(&self, map: &BTreeMap<VarId, VarId>) -> Result<KoszulMf, MfError> {
        let base = self.base.rename(map)?;
        let rows = self
            .rows
            .iter()
            .map(|r| r.map(|p| base.normal_form(&p.rename(map))))
            .collect();
        Ok(KoszulMf {
            rows,
            base,
            shift: self.shift,
            parity: self.parity,
        })
    }

    /// All variables of the underlying polynomial ring.
    pub fn variables(&self) -> BTreeSet<VarId> {
        let mut vars = self.base.ambient().clone();
        for r in &self.rows {
            vars.extend(r.a.variables());
            vars.extend(r.b.variables());
        }
        vars
    }

    /// Expands to explicit matrices by iterating the binary tensor product.
    pub fn to_explicit(&self) -> ExplicitMf {
        let mut e = ExplicitMf::unit(self.base.clone());
        for r in &self.rows {
            let k = ExplicitMf::from_row(self.base.clone(), &r.a, &r.b, r.shift);
            e = e
                .tensor(&k)
                .expect("rows share the base ring");
        }
        let e = e.shift(self.shift);
        if self.parity {
            e.translate()
        } else {
            e
        }
    }
}

impl fmt::Display for KoszulMf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "shift {{{}}}, parity {}, over {}",
            self.shift, self.parity as u8, self.base
        )?;
        for (i, r) in self.rows.iter().enumerate() {
            writeln!(f, "  row {i}: {r}")?;
        }
        Ok(())
    }
}
