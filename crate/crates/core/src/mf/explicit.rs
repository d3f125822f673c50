use std::fmt;

use crate::error::MfError;
use crate::poly::Poly;
use crate::quotient::QuotientRing;

use super::matrix::SparseMatrix;

/// A free module generator: a label and its Z-degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub label: String,
    pub degree: i64,
}

impl Generator {
    pub fn new(label: impl Into<String>, degree: i64) -> Self {
        Generator {
            label: label.into(),
            degree,
        }
    }
}

/// A matrix factorization `M0 -d0-> M1 -d1-> M0` with explicit bases.
/// Equality ignores generator labels.
#[derive(Debug, Clone)]
pub struct ExplicitMf {
    pub base: QuotientRing,
    pub basis0: Vec<Generator>,
    pub basis1: Vec<Generator>,
    /// `M0 -> M1`, shape `|basis1| x |basis0|`.
    pub d0: SparseMatrix,
    /// `M1 -> M0`, shape `|basis0| x |basis1|`.
    pub d1: SparseMatrix,
}

impl ExplicitMf {
    pub fn new(
        base: QuotientRing,
        basis0: Vec<Generator>,
        basis1: Vec<Generator>,
        d0: SparseMatrix,
        d1: SparseMatrix,
    ) -> Result<Self, MfError> {
        if d0.nrows != basis1.len()
            || d0.ncols != basis0.len()
            || d1.nrows != basis0.len()
            || d1.ncols != basis1.len()
        {
            return Err(MfError::ShapeMismatch(format!(
                "bases {}+{}, d0 {}x{}, d1 {}x{}",
                basis0.len(),
                basis1.len(),
                d0.nrows,
                d0.ncols,
                d1.nrows,
                d1.ncols
            )));
        }
        Ok(ExplicitMf {
            base,
            basis0,
            basis1,
            d0,
            d1,
        })
    }

    /// The unit object `R -0-> 0 -0-> R` over `base`.
    pub fn unit(base: QuotientRing) -> Self {
        ExplicitMf {
            base,
            basis0: vec![Generator::new("", 0)],
            basis1: Vec::new(),
            d0: SparseMatrix::zeros(0, 1),
            d1: SparseMatrix::zeros(1, 0),
        }
    }

    /// The one-row factorization `R -a-> R{s} -b-> R`.
    pub fn from_row(base: QuotientRing, a: &Poly, b: &Poly, s: i64) -> Self {
        let mut d0 = SparseMatrix::zeros(1, 1);
        d0.set(0, 0, base.normal_form(a));
        let mut d1 = SparseMatrix::zeros(1, 1);
        d1.set(0, 0, base.normal_form(b));
        ExplicitMf {
            base,
            basis0: vec![Generator::new("0", 0)],
            basis1: vec![Generator::new("1", s)],
            d0,
            d1,
        }
    }

    pub fn rank(&self) -> (usize, usize) {
        (self.basis0.len(), self.basis1.len())
    }

    /// `M ⊠ N`: slot 0 is `(M0⊗N0, M1⊗N1)`, slot 1 is `(M1⊗N0, M0⊗N1)`, and
    /// `d0 = [[dM0, -dN1], [dN0, dM1]]`, `d1 = [[dM1, dN1], [-dN0, dM0]]`.
    pub fn tensor(&self, other: &ExplicitMf) -> Result<ExplicitMf, MfError> {
        let base = self.base.merge(&other.base)?;
        let (m0, m1) = self.rank();
        let (n0, n1) = other.rank();
        let id = SparseMatrix::identity;

        let pair = |a: &[Generator], b: &[Generator]| -> Vec<Generator> {
            let mut out = Vec::with_capacity(a.len() * b.len());
            for g in a {
                for h in b {
                    out.push(Generator::new(
                        format!("{}{}", g.label, h.label),
                        g.degree + h.degree,
                    ));
                }
            }
            out
        };
        let mut basis0 = pair(&self.basis0, &other.basis0);
        basis0.extend(pair(&self.basis1, &other.basis1));
        let mut basis1 = pair(&self.basis1, &other.basis0);
        basis1.extend(pair(&self.basis0, &other.basis1));

        let (s00, s11) = (m0 * n0, m1 * n1);
        let (s10, s01) = (m1 * n0, m0 * n1);

        let mut d0 = SparseMatrix::zeros(s10 + s01, s00 + s11);
        d0.put_block(0, 0, &self.d0.kron(&id(n0)));
        d0.put_block(0, s00, &id(m1).kron(&other.d1).neg());
        d0.put_block(s10, 0, &id(m0).kron(&other.d0));
        d0.put_block(s10, s00, &self.d1.kron(&id(n1)));

        let mut d1 = SparseMatrix::zeros(s00 + s11, s10 + s01);
        d1.put_block(0, 0, &self.d1.kron(&id(n0)));
        d1.put_block(0, s10, &id(m0).kron(&other.d1));
        d1.put_block(s00, 0, &id(m1).kron(&other.d0).neg());
        d1.put_block(s00, s10, &self.d0.kron(&id(n1)));

        let d0 = d0.map(|p| base.normal_form(p));
        let d1 = d1.map(|p| base.normal_form(p));
        Ok(ExplicitMf {
            base,
            basis0,
            basis1,
            d0,
            d1,
        })
    }

    /// `⟨1⟩`: swaps the slots and negates both differentials.
    pub fn translate(&self) -> ExplicitMf {
        ExplicitMf {
            base: self.base.clone(),
            basis0: self.basis1.clone(),
            basis1: self.basis0.clone(),
            d0: self.d1.neg(),
            d1: self.d0.neg(),
        }
    }

    /// `{m}`: raises every generator degree by `m`.
    pub fn shift(&self, m: i64) -> ExplicitMf {
        let bump = |b: &[Generator]| {
            b.iter()
                .map(|g| Generator::new(g.label.clone(), g.degree + m))
                .collect()
        };
        ExplicitMf {
            base: self.base.clone(),
            basis0: bump(&self.basis0),
            basis1: bump(&self.basis1),
            d0: self.d0.clone(),
            d1: self.d1.clone(),
        }
    }

    /// Checks `d1 d0 = ω Id` and `d0 d1 = ω Id` and returns `ω`.
    pub fn verify_factorization(&self) -> Result<Poly, MfError> {
        let p0 = self.d1.mul(&self.d0, &self.base);
        let p1 = self.d0.mul(&self.d1, &self.base);
        let omega = if !self.basis0.is_empty() {
            p0.get(0, 0)
        } else if !self.basis1.is_empty() {
            p1.get(0, 0)
        } else {
            Poly::zero()
        };
        check_scalar(&p0, &omega, "d1*d0")?;
        check_scalar(&p1, &omega, "d0*d1")?;
        Ok(omega)
    }

    /// The potential, i.e. `verify_factorization`.
    pub fn potential(&self) -> Result<Poly, MfError> {
        self.verify_factorization()
    }

    /// Checks that each entry is homogeneous of degree
    /// `half + deg(source) - deg(target)`, where `half` is the degree of the
    /// differentials (`n + 1` for diagram factorizations).
    pub fn check_homogeneous(&self, half: i64) -> Result<(), MfError> {
        let check = |m: &SparseMatrix, src: &[Generator], tgt: &[Generator]| {
            for (i, j, p) in m.entries() {
                let want = half + src[j].degree - tgt[i].degree;
                if p.degree() != Some(want) {
                    return Err(MfError::Inhomogeneous(format!(
                        "entry ({i}, {j}) = {p}, expected degree {want}"
                    )));
                }
            }
            Ok(())
        };
        check(&self.d0, &self.basis0, &self.basis1)?;
        check(&self.d1, &self.basis1, &self.basis0)
    }
}

impl PartialEq for ExplicitMf {
    fn eq(&self, other: &Self) -> bool {
        let degs = |b: &[Generator]| b.iter().map(|g| g.degree).collect::<Vec<_>>();
        self.base == other.base
            && degs(&self.basis0) == degs(&other.basis0)
            && degs(&self.basis1) == degs(&other.basis1)
            && self.d0 == other.d0
            && self.d1 == other.d1
    }
}

impl Eq for ExplicitMf {}

fn check_scalar(m: &SparseMatrix, omega: &Poly, name: &'static str) -> Result<(), MfError> {
    let fail = |i: usize, j: usize, got: &Poly, want: &Poly| MfError::NotAFactorization {
        product: name,
        row: i,
        col: j,
        found: got.to_string(),
        expected: want.to_string(),
    };
    for (i, j, p) in m.entries() {
        if i != j {
            return Err(fail(i, j, p, &Poly::zero()));
        }
    }
    for i in 0..m.nrows.min(m.ncols) {
        let got = m.get(i, i);
        if &got != omega {
            return Err(fail(i, i, &got, omega));
        }
    }
    Ok(())
}

impl fmt::Display for ExplicitMf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degs = |b: &[Generator]| {
            b.iter()
                .map(|g| g.degree.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(f, "over {}", self.base)?;
        writeln!(f, "M0 degrees [{}]", degs(&self.basis0))?;
        writeln!(f, "M1 degrees [{}]", degs(&self.basis1))?;
        for (name, m) in [("d0", &self.d0), ("d1", &self.d1)] {
            writeln!(f, "{name}:")?;
            for row in m.to_dense() {
                let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        }
        Ok(())
    }
}
