//! The MOY bracket of closed planar trivalent graphs, computed by local
//! rewriting.
//!
//! Supported relations: single loop `[n]`, double loop `[n][n-1]/[2]`,
//! digon on a double line `[2]`, bigon on a single line `[n-1]`, the square
//! relation, and the crossing skein relations. Anything else is reported as
//! a stuck graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::diagram::{Diagram, Param, PieceKind};
use crate::error::MoyError;
use crate::laurent::{quantum_integer, LaurentPoly};

pub type EdgeId = usize;
pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// Two single edges in, one double edge out.
    Merge,
    /// One double edge in, two single edges out.
    Split,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub kind: VertexKind,
    pub singles: [EdgeId; 2],
    pub double: EdgeId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub double: bool,
    pub src: VertexId,
    pub dst: VertexId,
}

/// A closed trivalent graph plus free loops.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MoyGraph {
    pub n: u32,
    pub vertices: BTreeMap<VertexId, Vertex>,
    pub edges: BTreeMap<EdgeId, Edge>,
    pub single_loops: usize,
    pub double_loops: usize,
}

/// One applicable local move, located by the vertices it consumes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rewrite {
    SingleLoop,
    DoubleLoop,
    /// A split vertex whose two outputs both enter one merge vertex.
    Digon { split: VertexId, merge: VertexId },
    /// A merge vertex one of whose inputs comes back from the split vertex
    /// fed by its double output. `back` is that returning edge.
    Bigon { merge: VertexId, split: VertexId, back: EdgeId },
    /// Four vertices around a cycle `split_l -e1-> merge_r -D-> split_r
    /// -e2-> merge_l -D-> split_l`.
    Square {
        split_l: VertexId,
        merge_r: VertexId,
        split_r: VertexId,
        merge_l: VertexId,
        e1: EdgeId,
        e2: EdgeId,
    },
}

impl MoyGraph {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.single_loops == 0 && self.double_loops == 0
    }

    /// Builds the graph of a closed planar diagram. Wide edges become a
    /// merge vertex joined to a split vertex by a double edge.
    pub fn from_diagram(d: &Diagram) -> Result<Self, MoyError> {
        if !d.is_closed() {
            let names: Vec<String> = d.boundary().iter().map(|(p, _)| p.to_string()).collect();
            return Err(MoyError::NotClosed(names.join(", ")));
        }
        if let Some(p) = d.pieces.iter().find(|p| p.kind.is_crossing()) {
            return Err(MoyError::StuckGraph(format!(
                "unexpanded `{}` crossing",
                p.kind.keyword()
            )));
        }
        // Tail use -> head use partner.
        let mut partner: BTreeMap<Param, Param> = BTreeMap::new();
        for g in &d.glues {
            partner.insert(g.head, g.tail);
        }
        // Pass-through pieces: tail use -> head use.
        let mut through: BTreeMap<Param, Param> = BTreeMap::new();
        // Vertex ports: (vertex, inputs, outputs) in parameters.
        struct Proto {
            kind: VertexKind,
            ins: Vec<Param>,
            outs: Vec<Param>,
        }
        let mut protos: Vec<Proto> = Vec::new();
        let mut fresh = d.max_index() + 1;
        for p in &d.pieces {
            let ps = &p.params;
            match p.kind {
                PieceKind::Arc => {
                    through.insert(ps[0], ps[1]);
                }
                PieceKind::Dline => {
                    through.insert(ps[1], ps[0]);
                }
                PieceKind::Vin => protos.push(Proto {
                    kind: VertexKind::Merge,
                    ins: vec![ps[0], ps[1]],
                    outs: vec![ps[2]],
                }),
                PieceKind::Vout => protos.push(Proto {
                    kind: VertexKind::Split,
                    ins: vec![ps[0]],
                    outs: vec![ps[1], ps[2]],
                }),
                PieceKind::Wide => {
                    // Internal double edge, glued directly.
                    let (h, t) = (Param::Double(fresh), Param::Double(fresh + 1));
                    fresh += 2;
                    partner.insert(h, t);
                    protos.push(Proto {
                        kind: VertexKind::Merge,
                        ins: vec![ps[2], ps[3]],
                        outs: vec![h],
                    });
                    protos.push(Proto {
                        kind: VertexKind::Split,
                        ins: vec![t],
                        outs: vec![ps[0], ps[1]],
                    });
                }
                PieceKind::XPlus | PieceKind::XMinus => unreachable!(),
            }
        }
        let mut in_port: BTreeMap<Param, VertexId> = BTreeMap::new();
        for (v, pr) in protos.iter().enumerate() {
            for &p in &pr.ins {
                in_port.insert(p, v);
            }
        }
        let mut g = MoyGraph {
            n: d.n,
            ..Default::default()
        };
        let mut edge_at: BTreeMap<Param, EdgeId> = BTreeMap::new();
        let mut used_through: BTreeSet<Param> = BTreeSet::new();
        for (v, pr) in protos.iter().enumerate() {
            for &out in &pr.outs {
                let mut head = out;
                let dst = loop {
                    let tail = partner[&head];
                    if let Some(&w) = in_port.get(&tail) {
                        break (w, tail);
                    }
                    used_through.insert(tail);
                    head = through[&tail];
                };
                let id = g.edges.len();
                g.edges.insert(
                    id,
                    Edge {
                        double: out.is_double(),
                        src: v,
                        dst: dst.0,
                    },
                );
                edge_at.insert(out, id);
                edge_at.insert(dst.1, id);
            }
        }
        for (v, pr) in protos.iter().enumerate() {
            let (singles, double): (Vec<Param>, Vec<Param>) = pr
                .ins
                .iter()
                .chain(&pr.outs)
                .partition(|p| !p.is_double());
            g.vertices.insert(
                v,
                Vertex {
                    kind: pr.kind,
                    singles: [edge_at[&singles[0]], edge_at[&singles[1]]],
                    double: edge_at[&double[0]],
                },
            );
        }
        // Remaining pass-through chains close up into free loops.
        for &start in through.keys() {
            if used_through.contains(&start) {
                continue;
            }
            let mut tail = start;
            loop {
                used_through.insert(tail);
                tail = partner[&through[&tail]];
                if tail == start {
                    break;
                }
            }
            if start.is_double() {
                g.double_loops += 1;
            } else {
                g.single_loops += 1;
            }
        }
        Ok(g)
    }

    fn other_single(&self, v: VertexId, e: EdgeId) -> EdgeId {
        let s = self.vertices[&v].singles;
        if s[0] == e {
            s[1]
        } else {
            s[0]
        }
    }

    fn is_kind(&self, v: VertexId, k: VertexKind) -> bool {
        self.vertices.get(&v).is_some_and(|x| x.kind == k)
    }

    /// Every applicable move, loops first, then by increasing vertex ids.
    pub fn applicable(&self) -> Vec<Rewrite> {
        let mut out = Vec::new();
        if self.single_loops > 0 {
            out.push(Rewrite::SingleLoop);
        }
        if self.double_loops > 0 {
            out.push(Rewrite::DoubleLoop);
        }
        for (&u, x) in &self.vertices {
            if x.kind != VertexKind::Split {
                continue;
            }
            let [s1, s2] = x.singles;
            let (d1, d2) = (self.edges[&s1].dst, self.edges[&s2].dst);
            if d1 == d2 && self.is_kind(d1, VertexKind::Merge) {
                out.push(Rewrite::Digon { split: u, merge: d1 });
            }
        }
        for (&u, x) in &self.vertices {
            if x.kind != VertexKind::Merge {
                continue;
            }
            let v = self.edges[&x.double].dst;
            if !self.is_kind(v, VertexKind::Split) {
                continue;
            }
            for e in x.singles {
                if self.edges[&e].src == v {
                    out.push(Rewrite::Bigon {
                        merge: u,
                        split: v,
                        back: e,
                    });
                    break;
                }
            }
        }
        for (&sl, x) in &self.vertices {
            if x.kind != VertexKind::Split {
                continue;
            }
            let ml = self.edges[&x.double].src;
            if !self.is_kind(ml, VertexKind::Merge) {
                continue;
            }
            for e1 in x.singles {
                let mr = self.edges[&e1].dst;
                if !self.is_kind(mr, VertexKind::Merge) {
                    continue;
                }
                let sr = self.edges[&self.vertices[&mr].double].dst;
                if !self.is_kind(sr, VertexKind::Split) {
                    continue;
                }
                for e2 in self.vertices[&sr].singles {
                    if self.edges[&e2].dst != ml {
                        continue;
                    }
                    let ids: BTreeSet<VertexId> = [sl, mr, sr, ml].into();
                    if ids.len() == 4 {
                        out.push(Rewrite::Square {
                            split_l: sl,
                            merge_r: mr,
                            split_r: sr,
                            merge_l: ml,
                            e1,
                            e2,
                        });
                    }
                }
            }
        }
        out
    }

    /// Removes the vertices `pattern` and the edges `internal`, then
    /// reconnects: every external edge entering the pattern continues as
    /// the external edge leaving it given by `next`. Chains that never
    /// leave the pattern become free loops.
    fn reconnect(
        &self,
        pattern: &[VertexId],
        internal: &[EdgeId],
        next: &BTreeMap<EdgeId, EdgeId>,
    ) -> MoyGraph {
        let inside = |v: VertexId| pattern.contains(&v);
        let mut g = self.clone();
        for v in pattern {
            g.vertices.remove(v);
        }
        for e in internal {
            g.edges.remove(e);
        }
        let mut seen: BTreeSet<EdgeId> = BTreeSet::new();
        for &x in next.keys() {
            if inside(self.edges[&x].src) {
                continue;
            }
            let mut y = next[&x];
            seen.insert(x);
            while inside(self.edges[&y].dst) {
                seen.insert(y);
                y = next[&y];
            }
            seen.insert(y);
            let dst = self.edges[&y].dst;
            if y != x {
                g.edges.remove(&y);
                let w = g.vertices.get_mut(&dst).expect("outside vertex");
                for slot in w.singles.iter_mut().chain(std::iter::once(&mut w.double)) {
                    if *slot == y {
                        *slot = x;
                    }
                }
            }
            g.edges.get_mut(&x).expect("external edge").dst = dst;
        }
        for &x in next.keys() {
            if seen.contains(&x) {
                continue;
            }
            let mut y = x;
            loop {
                seen.insert(y);
                g.edges.remove(&y);
                y = next[&y];
                if y == x {
                    break;
                }
            }
            if self.edges[&x].double {
                g.double_loops += 1;
            } else {
                g.single_loops += 1;
            }
        }
        g
    }

    /// Applies one move, returning the resulting linear combination.
    pub fn apply(&self, r: &Rewrite) -> Result<Vec<(LaurentPoly, MoyGraph)>, MoyError> {
        let n = self.n;
        Ok(match *r {
            Rewrite::SingleLoop => {
                let mut g = self.clone();
                g.single_loops -= 1;
                vec![(quantum_integer(n), g)]
            }
            Rewrite::DoubleLoop => {
                let mut g = self.clone();
                g.double_loops -= 1;
                vec![(double_loop_value(n)?, g)]
            }
            Rewrite::Digon { split, merge } => {
                let d_in = self.vertices[&split].double;
                let d_out = self.vertices[&merge].double;
                let next = BTreeMap::from([(d_in, d_out)]);
                let internal = self.vertices[&split].singles;
                let g = self.reconnect(&[split, merge], &internal, &next);
                vec![(quantum_integer(2), g)]
            }
            Rewrite::Bigon { merge, split, back } => {
                let a = self.other_single(merge, back);
                let b = self.other_single(split, back);
                let next = BTreeMap::from([(a, b)]);
                let internal = [back, self.vertices[&merge].double];
                let g = self.reconnect(&[merge, split], &internal, &next);
                vec![(quantum_integer(n - 1), g)]
            }
            Rewrite::Square {
                split_l,
                merge_r,
                split_r,
                merge_l,
                e1,
                e2,
            } => {
                let a = self.other_single(split_l, e1);
                let b = self.other_single(merge_r, e1);
                let c = self.other_single(split_r, e2);
                let d = self.other_single(merge_l, e2);
                let internal = [
                    e1,
                    e2,
                    self.vertices[&split_l].double,
                    self.vertices[&merge_r].double,
                ];
                let pattern = [split_l, merge_r, split_r, merge_l];
                let across = BTreeMap::from([(b, a), (d, c)]);
                let along = BTreeMap::from([(d, a), (b, c)]);
                vec![
                    (LaurentPoly::one(), self.reconnect(&pattern, &internal, &across)),
                    (quantum_integer(n - 2), self.reconnect(&pattern, &internal, &along)),
                ]
            }
        })
    }

    /// Evaluates by always taking the first applicable move.
    pub fn evaluate(&self) -> Result<LaurentPoly, MoyError> {
        if self.is_empty() {
            return Ok(LaurentPoly::one());
        }
        let moves = self.applicable();
        let Some(r) = moves.first() else {
            return Err(MoyError::StuckGraph(self.to_string()));
        };
        let mut total = LaurentPoly::zero();
        for (c, g) in self.apply(r)? {
            total = &total + &(&c * &g.evaluate()?);
        }
        Ok(total)
    }

    /// The values reached along every rewrite sequence. Free loops are
    /// always removed first, since they commute with everything.
    pub fn evaluate_all_paths(&self) -> Result<Vec<LaurentPoly>, MoyError> {
        if self.single_loops > 0 || self.double_loops > 0 {
            let mut g = self.clone();
            let mut c = LaurentPoly::one();
            for _ in 0..g.single_loops {
                c = &c * &quantum_integer(self.n);
            }
            for _ in 0..g.double_loops {
                c = &c * &double_loop_value(self.n)?;
            }
            g.single_loops = 0;
            g.double_loops = 0;
            return Ok(g
                .evaluate_all_paths()?
                .into_iter()
                .map(|v| &c * &v)
                .collect());
        }
        if self.is_empty() {
            return Ok(vec![LaurentPoly::one()]);
        }
        let moves = self.applicable();
        if moves.is_empty() {
            return Err(MoyError::StuckGraph(self.to_string()));
        }
        let mut out: Vec<LaurentPoly> = Vec::new();
        for r in &moves {
            let mut partial = vec![LaurentPoly::zero()];
            for (c, g) in self.apply(r)? {
                let vals = g.evaluate_all_paths()?;
                let mut next = Vec::new();
                for p in &partial {
                    for v in &vals {
                        let s = p + &(&c * v);
                        if !next.contains(&s) {
                            next.push(s);
                        }
                    }
                }
                partial = next;
            }
            for p in partial {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for MoyGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} vertices, {} single loops, {} double loops",
            self.vertices.len(),
            self.single_loops,
            self.double_loops
        )?;
        for (id, e) in &self.edges {
            let kind = if e.double { "=" } else { "-" };
            write!(f, "; e{id}: v{} {kind}> v{}", e.src, e.dst)?;
        }
        Ok(())
    }
}

/// `[n][n-1]/[2]`.
pub fn double_loop_value(n: u32) -> Result<LaurentPoly, MoyError> {
    let num = &quantum_integer(n) * &quantum_integer(n.saturating_sub(1));
    num.exact_div(&quantum_integer(2))
        .ok_or_else(|| MoyError::NonExactDivision(format!("[{n}][{}] / [2]", n.saturating_sub(1))))
}

/// Every planar resolution of the crossings of `d`, with its coefficient
/// from the skein relations
/// `<+> = q^{n-1} <arcs> - q^n <wide>` and `<-> = q^{1-n} <arcs> - q^{-n} <wide>`.
pub fn expand_crossings(d: &Diagram) -> Result<Vec<(LaurentPoly, Diagram)>, MoyError> {
    let n = d.n as i64;
    let mut states: Vec<(LaurentPoly, Diagram)> = vec![(LaurentPoly::one(), empty_like(d)?)];
    for p in &d.pieces {
        let mut next = Vec::new();
        for (c, base) in states {
            match p.kind {
                PieceKind::XPlus | PieceKind::XMinus => {
                    let (ca, cw) = if p.kind == PieceKind::XPlus {
                        (LaurentPoly::q_pow(n - 1), LaurentPoly::monomial(n, -1))
                    } else {
                        (LaurentPoly::q_pow(1 - n), LaurentPoly::monomial(-n, -1))
                    };
                    let ps = &p.params;
                    let mut arcs = base.clone();
                    arcs.add_piece(PieceKind::Arc, &[ps[2], ps[0]])?;
                    arcs.add_piece(PieceKind::Arc, &[ps[3], ps[1]])?;
                    let mut wide = base;
                    wide.add_piece(PieceKind::Wide, ps)?;
                    next.push((&c * &ca, arcs));
                    next.push((&c * &cw, wide));
                }
                kind => {
                    let mut b = base;
                    b.add_piece(kind, &p.params)?;
                    next.push((c, b));
                }
            }
        }
        states = next;
    }
    let mut out = Vec::with_capacity(states.len());
    for (c, mut s) in states {
        for g in &d.glues {
            s.add_glue(g.head, g.tail)?;
        }
        out.push((c, s));
    }
    Ok(out)
}

fn empty_like(d: &Diagram) -> Result<Diagram, MoyError> {
    Ok(Diagram::new(d.n)?)
}

/// The MOY bracket of a closed diagram, crossings allowed.
pub fn bracket(d: &Diagram) -> Result<LaurentPoly, MoyError> {
    let mut total = LaurentPoly::zero();
    for (c, s) in expand_crossings(d)? {
        let v = MoyGraph::from_diagram(&s)?.evaluate()?;
        total = &total + &(&c * &v);
    }
    Ok(total)
}
