use std::collections::BTreeMap;

use crate::error::DiagramError;
use crate::mf::{KoszulMf, KoszulRow};
use crate::poly::{pi_poly_in, FQuotients, Poly, VarId};
use crate::quotient::QuotientRing;

use super::model::{Diagram, Param, PieceKind};

fn check_params(kind: PieceKind, n: u32, params: &[Param]) -> Result<(), DiagramError> {
    let slots = kind.slots();
    if params.len() != slots.len() {
        return Err(DiagramError::ArityMismatch {
            kind: kind.keyword(),
            expected: slots.len(),
            found: params.len(),
        });
    }
    let min = if kind.uses_double() { 3 } else { 2 };
    if n < min {
        return Err(DiagramError::UnsupportedN { n, min });
    }
    for (p, &(double, _)) in params.iter().zip(slots) {
        if p.is_double() != double {
            return Err(DiagramError::KindMismatch {
                line: 0,
                col: 0,
                p: p.to_string(),
                q: kind.keyword().to_string(),
            });
        }
    }
    Ok(())
}

fn single(p: Param) -> Poly {
    Poly::var(p.x())
}

fn double(p: Param) -> (Poly, Poly) {
    let (y, z) = p.yz();
    (Poly::var(y), Poly::var(z))
}

fn koszul(rows: Vec<(Poly, Poly)>, n: u32, shift: i64) -> Result<KoszulMf, DiagramError> {
    let half = Some(n as i64 + 1);
    let rows = rows
        .into_iter()
        .map(|(a, b)| KoszulRow::new(a, b, half))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(KoszulMf::from_rows(rows, QuotientRing::default(), shift))
}

/// The factorization of a single piece. Parameters are read in the slot
/// order of [`PieceKind::slots`].
pub fn build_primitive(kind: PieceKind, n: u32, params: &[Param]) -> Result<KoszulMf, DiagramError> {
    check_params(kind, n, params)?;
    match kind {
        PieceKind::Arc => {
            let (t, h) = (params[0].x(), params[1].x());
            let a = pi_poly_in(n, h, t);
            koszul(vec![(a, Poly::var(h) - Poly::var(t))], n, 0)
        }
        PieceKind::Wide => {
            let [x1, x2, x3, x4] = [0, 1, 2, 3].map(|i| single(params[i]));
            let q = FQuotients::new(n);
            let (top_s, top_p) = (&x1 + &x2, &x1 * &x2);
            let (bot_s, bot_p) = (&x3 + &x4, &x3 * &x4);
            let u = q.first(&top_s, &bot_s, &top_p);
            let v = q.second(&bot_s, &top_p, &bot_p);
            koszul(vec![(u, &top_s - &bot_s), (v, &top_p - &bot_p)], n, -1)
        }
        PieceKind::Dline => {
            let (y1, z1) = double(params[0]);
            let (y2, z2) = double(params[1]);
            let q = FQuotients::new(n);
            let a1 = q.first(&y1, &y2, &z1);
            let a2 = q.second(&y2, &z1, &z2);
            koszul(vec![(a1, &y1 - &y2), (a2, &z1 - &z2)], n, 0)
        }
        PieceKind::Vin => {
            let (x1, x2) = (single(params[0]), single(params[1]));
            let (y3, z3) = double(params[2]);
            let (s, p) = (&x1 + &x2, &x1 * &x2);
            let q = FQuotients::new(n);
            let a1 = q.first(&y3, &s, &z3);
            let a2 = q.second(&s, &z3, &p);
            koszul(vec![(a1, &y3 - &s), (a2, &z3 - &p)], n, 0)
        }
        PieceKind::Vout => {
            let (y3, z3) = double(params[0]);
            let (x1, x2) = (single(params[1]), single(params[2]));
            let (s, p) = (&x1 + &x2, &x1 * &x2);
            let q = FQuotients::new(n);
            let a1 = q.first(&s, &y3, &p);
            let a2 = q.second(&y3, &p, &z3);
            koszul(vec![(a1, &s - &y3), (a2, &p - &z3)], n, -1)
        }
        PieceKind::XPlus | PieceKind::XMinus => Err(DiagramError::ValidationError {
            line: 0,
            col: 0,
            msg: format!(
                "`{}` is a complex of factorizations; use crossing_complex",
                kind.keyword()
            ),
        }),
    }
}

/// The renaming that sends both ends of every gluing to a fresh parameter.
/// Fresh indices start above every index used in the diagram.
pub fn glue_map(d: &Diagram) -> BTreeMap<VarId, VarId> {
    let mut map = BTreeMap::new();
    for (next, g) in (d.max_index() + 1..).zip(&d.glues) {
        let fresh = g.head.with_index(next);
        for p in [g.head, g.tail] {
            for (v, w) in p.vars().into_iter().zip(fresh.vars()) {
                map.insert(v, w);
            }
        }
    }
    map
}

/// `⊠` over all pieces in list order, then identification of every glued
/// pair of parameters.
pub fn glue(d: &Diagram) -> Result<KoszulMf, DiagramError> {
    if let Some(p) = d.pieces.iter().find(|p| p.kind.is_crossing()) {
        return Err(DiagramError::ValidationError {
            line: p.pos.line,
            col: p.pos.col,
            msg: format!(
                "`{}` has no single factorization; expand crossings first",
                p.kind.keyword()
            ),
        });
    }
    // Pieces are tensored in order of their parameters, so the result does
    // not depend on the order they were declared in.
    let mut pieces: Vec<_> = d.pieces.iter().collect();
    pieces.sort_by_key(|p| (p.params.clone(), p.kind.keyword()));
    let mut m = KoszulMf::unit(QuotientRing::default());
    for p in pieces {
        m = m.tensor(&build_primitive(p.kind, d.n, &p.params)?)?;
    }
    Ok(m.identify(&glue_map(d))?)
}

/// The boundary potential `Σ_head g - Σ_tail g` with `g = x^{n+1}` on single
/// parameters and `g = f(y, z)` on double ones.
pub fn boundary_potential(d: &Diagram) -> Poly {
    let f = |p: Param| match p {
        Param::Single(_) => single(p).pow(d.n + 1),
        Param::Double(_) => {
            let (y, z) = double(p);
            crate::poly::power_sum_eval(d.n, &y, &z)
        }
    };
    let mut w = Poly::zero();
    for (p, end) in d.boundary() {
        match end {
            super::End::Head => w += &f(p),
            super::End::Tail => w -= &f(p),
        }
    }
    w
}
