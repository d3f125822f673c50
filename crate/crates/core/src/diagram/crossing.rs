use std::collections::BTreeMap;
use std::fmt;

use crate::error::DiagramError;
use crate::mf::KoszulMf;

use super::build::build_primitive;
use super::model::{Param, PieceKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossingSign {
    Positive,
    Negative,
}

impl CrossingSign {
    pub fn of(kind: PieceKind) -> Option<Self> {
        match kind {
            PieceKind::XPlus => Some(CrossingSign::Positive),
            PieceKind::XMinus => Some(CrossingSign::Negative),
            _ => None,
        }
    }
}

/// Which resolution of a crossing an object comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Resolution {
    /// Two parallel arcs `x3 -> x1`, `x4 -> x2`.
    Arcs,
    /// The wide edge on `x1 x2 x3 x4`.
    Wide,
}

/// The objects of the complex attached to a crossing, indexed by
/// homological position. The differentials are not modelled.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossingComplex {
    pub sign: CrossingSign,
    pub n: u32,
    pub objects: BTreeMap<i32, (Resolution, KoszulMf)>,
}

/// The factorization of a resolution on the crossing's boundary
/// `[x1, x2, x3, x4]` (`x1, x2` outgoing).
pub fn resolution_mf(res: Resolution, n: u32, params: &[Param]) -> Result<KoszulMf, DiagramError> {
    match res {
        Resolution::Wide => build_primitive(PieceKind::Wide, n, params),
        Resolution::Arcs => {
            if params.len() != 4 {
                return Err(DiagramError::ArityMismatch {
                    kind: "xplus",
                    expected: 4,
                    found: params.len(),
                });
            }
            let left = build_primitive(PieceKind::Arc, n, &[params[2], params[0]])?;
            let right = build_primitive(PieceKind::Arc, n, &[params[3], params[1]])?;
            Ok(left.tensor(&right)?)
        }
    }
}

pub fn crossing_complex(
    sign: CrossingSign,
    n: u32,
    params: &[Param],
) -> Result<CrossingComplex, DiagramError> {
    let n_i = n as i64;
    let wide = resolution_mf(Resolution::Wide, n, params)?;
    let arcs = resolution_mf(Resolution::Arcs, n, params)?;
    let mut objects = BTreeMap::new();
    match sign {
        CrossingSign::Positive => {
            objects.insert(-1, (Resolution::Wide, wide.shift(n_i).translate()));
            objects.insert(0, (Resolution::Arcs, arcs.shift(n_i - 1).translate()));
        }
        CrossingSign::Negative => {
            objects.insert(0, (Resolution::Arcs, arcs.shift(1 - n_i).translate()));
            objects.insert(1, (Resolution::Wide, wide.shift(-n_i).translate()));
        }
    }
    Ok(CrossingComplex { sign, n, objects })
}

impl fmt::Display for CrossingComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, (res, m)) in &self.objects {
            writeln!(f, "[{pos}] {res:?}")?;
            write!(f, "{m}")?;
        }
        Ok(())
    }
}
