use std::collections::BTreeMap;
use std::fmt;

use crate::error::DiagramError;
use crate::poly::VarId;

/// A boundary parameter: `x<i>` on a single line or `d<i>` (standing for the
/// pair `(y<i>, z<i>)`) on a double line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    Single(u32),
    Double(u32),
}

impl Param {
    pub fn index(self) -> u32 {
        match self {
            Param::Single(i) | Param::Double(i) => i,
        }
    }

    pub fn is_double(self) -> bool {
        matches!(self, Param::Double(_))
    }

    /// `x<i>` for single parameters.
    pub fn x(self) -> VarId {
        VarId::x(self.index())
    }

    /// `(y<i>, z<i>)` for double parameters.
    pub fn yz(self) -> (VarId, VarId) {
        (VarId::y(self.index()), VarId::z(self.index()))
    }

    pub fn vars(self) -> Vec<VarId> {
        match self {
            Param::Single(i) => vec![VarId::x(i)],
            Param::Double(i) => vec![VarId::y(i), VarId::z(i)],
        }
    }

    pub fn with_index(self, i: u32) -> Param {
        match self {
            Param::Single(_) => Param::Single(i),
            Param::Double(_) => Param::Double(i),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Single(i) => write!(f, "x{i}"),
            Param::Double(i) => write!(f, "d{i}"),
        }
    }
}

impl std::str::FromStr for Param {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        let (kind, digits) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(());
        }
        let i: u32 = digits.parse().map_err(|_| ())?;
        if i == 0 {
            return Err(());
        }
        match kind {
            "x" => Ok(Param::Single(i)),
            "d" => Ok(Param::Double(i)),
            _ => Err(()),
        }
    }
}

/// Which end of a line a parameter sits on, seen from the piece that uses
/// it. Head ends are where a line leaves the piece (they carry `+` in the
/// potential); tail ends are where it enters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Head,
    Tail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PieceKind {
    /// `arc tail head`
    Arc,
    /// `wide x1 x2 x3 x4`: `x1, x2` leave, `x3, x4` enter.
    Wide,
    /// `dline head tail`
    Dline,
    /// `vin x1 x2 d3`: two single lines merge into a double line.
    Vin,
    /// `vout d3 x1 x2`: a double line splits into two single lines.
    Vout,
    /// `xplus x1 x2 x3 x4`, boundary as for `wide`.
    XPlus,
    /// `xminus x1 x2 x3 x4`, boundary as for `wide`.
    XMinus,
}

impl PieceKind {
    pub fn keyword(self) -> &'static str {
        match self {
            PieceKind::Arc => "arc",
            PieceKind::Wide => "wide",
            PieceKind::Dline => "dline",
            PieceKind::Vin => "vin",
            PieceKind::Vout => "vout",
            PieceKind::XPlus => "xplus",
            PieceKind::XMinus => "xminus",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        Some(match s {
            "arc" => PieceKind::Arc,
            "wide" => PieceKind::Wide,
            "dline" => PieceKind::Dline,
            "vin" => PieceKind::Vin,
            "vout" => PieceKind::Vout,
            "xplus" => PieceKind::XPlus,
            "xminus" => PieceKind::XMinus,
            _ => return None,
        })
    }

    /// The kind (double or not) and end of each parameter slot.
    pub fn slots(self) -> &'static [(bool, End)] {
        use End::*;
        match self {
            PieceKind::Arc => &[(false, Tail), (false, Head)],
            PieceKind::Wide | PieceKind::XPlus | PieceKind::XMinus => {
                &[(false, Head), (false, Head), (false, Tail), (false, Tail)]
            }
            PieceKind::Dline => &[(true, Head), (true, Tail)],
            PieceKind::Vin => &[(false, Tail), (false, Tail), (true, Head)],
            PieceKind::Vout => &[(true, Tail), (false, Head), (false, Head)],
        }
    }

    pub fn uses_double(self) -> bool {
        self.slots().iter().any(|(d, _)| *d)
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, PieceKind::XPlus | PieceKind::XMinus)
    }
}

/// Source position of a statement (1-based; 0 for programmatic input).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub kind: PieceKind,
    pub params: Vec<Param>,
    pub pos: Pos,
}

/// Identification of a head use with a tail use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Glue {
    pub head: Param,
    pub tail: Param,
    pub pos: Pos,
}

/// A planar diagram: pieces over named boundary parameters plus gluings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub n: u32,
    pub pieces: Vec<Piece>,
    pub glues: Vec<Glue>,
    uses: BTreeMap<Param, (usize, End)>,
}

impl Diagram {
    pub fn new(n: u32) -> Result<Self, DiagramError> {
        if n < 2 {
            return Err(DiagramError::UnsupportedN { n, min: 2 });
        }
        Ok(Diagram {
            n,
            pieces: Vec::new(),
            glues: Vec::new(),
            uses: BTreeMap::new(),
        })
    }

    pub fn add_piece(&mut self, kind: PieceKind, params: &[Param]) -> Result<(), DiagramError> {
        self.add_piece_at(kind, params, Pos::default())
    }

    pub fn add_piece_at(
        &mut self,
        kind: PieceKind,
        params: &[Param],
        pos: Pos,
    ) -> Result<(), DiagramError> {
        let slots = kind.slots();
        if params.len() != slots.len() {
            return Err(DiagramError::ArityMismatch {
                kind: kind.keyword(),
                expected: slots.len(),
                found: params.len(),
            });
        }
        if kind.uses_double() && self.n < 3 {
            return Err(DiagramError::UnsupportedN { n: self.n, min: 3 });
        }
        for (p, &(double, _)) in params.iter().zip(slots) {
            if p.is_double() != double {
                let want = if double { "double (d<i>)" } else { "single (x<i>)" };
                return Err(DiagramError::ValidationError {
                    line: pos.line,
                    col: pos.col,
                    msg: format!("{} expects a {want} parameter, got `{p}`", kind.keyword()),
                });
            }
        }
        for (k, p) in params.iter().enumerate() {
            if self.uses.contains_key(p) || params[..k].contains(p) {
                return Err(DiagramError::DuplicateUse {
                    line: pos.line,
                    col: pos.col,
                    name: p.to_string(),
                });
            }
        }
        let idx = self.pieces.len();
        for (p, &(_, end)) in params.iter().zip(slots) {
            self.uses.insert(*p, (idx, end));
        }
        self.pieces.push(Piece {
            kind,
            params: params.to_vec(),
            pos,
        });
        Ok(())
    }

    /// Glues two uses; either order is accepted, but exactly one of them
    /// must be a head use.
    pub fn add_glue(&mut self, p: Param, q: Param) -> Result<(), DiagramError> {
        self.add_glue_at(p, q, Pos::default())
    }

    pub fn add_glue_at(&mut self, p: Param, q: Param, pos: Pos) -> Result<(), DiagramError> {
        let Pos { line, col } = pos;
        let (_, ep) = *self.uses.get(&p).ok_or(DiagramError::UnknownParameter {
            line,
            col,
            name: p.to_string(),
        })?;
        let (_, eq) = *self.uses.get(&q).ok_or(DiagramError::UnknownParameter {
            line,
            col,
            name: q.to_string(),
        })?;
        if p.is_double() != q.is_double() {
            return Err(DiagramError::KindMismatch {
                line,
                col,
                p: p.to_string(),
                q: q.to_string(),
            });
        }
        for r in [p, q] {
            if self.glues.iter().any(|g| g.head == r || g.tail == r) {
                return Err(DiagramError::DuplicateUse {
                    line,
                    col,
                    name: r.to_string(),
                });
            }
        }
        let (head, tail) = match (ep, eq) {
            (End::Head, End::Tail) => (p, q),
            (End::Tail, End::Head) => (q, p),
            _ => {
                return Err(DiagramError::OrientationMismatch {
                    line,
                    col,
                    p: p.to_string(),
                    q: q.to_string(),
                })
            }
        };
        self.glues.push(Glue { head, tail, pos });
        Ok(())
    }

    /// The piece index and end of every parameter use.
    pub fn uses(&self) -> &BTreeMap<Param, (usize, End)> {
        &self.uses
    }

    /// Parameters not involved in any gluing, with their ends.
    pub fn boundary(&self) -> Vec<(Param, End)> {
        self.uses
            .iter()
            .filter(|(p, _)| !self.glues.iter().any(|g| g.head == **p || g.tail == **p))
            .map(|(p, (_, e))| (*p, *e))
            .collect()
    }

    pub fn is_closed(&self) -> bool {
        self.boundary().is_empty()
    }

    pub fn has_crossings(&self) -> bool {
        self.pieces.iter().any(|p| p.kind.is_crossing())
    }

    /// The largest parameter index in use.
    pub fn max_index(&self) -> u32 {
        self.uses.keys().map(|p| p.index()).max().unwrap_or(0)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.n)?;
        for p in &self.pieces {
            let names: Vec<String> = p.params.iter().map(|q| q.to_string()).collect();
            writeln!(f, "{} {}", p.kind.keyword(), names.join(" "))?;
        }
        for g in &self.glues {
            writeln!(f, "glue {} {}", g.head, g.tail)?;
        }
        Ok(())
    }
}
