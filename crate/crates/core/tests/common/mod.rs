//! Independent reference values and generators shared by the integration
//! tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use moy_mf::diagram::{Diagram, End, Param, PieceKind};
use moy_mf::{LaurentPoly, Poly, VarId, Q};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

/// `[n]` summed term by term.
pub fn qint(n: u32) -> LaurentPoly {
    LaurentPoly::from_terms((0..n as i64).map(|k| (n as i64 - 1 - 2 * k, 1)))
}

/// `[n][n-1]/[2]` as the sum over pairs `0 <= i < j < n` of
/// `q^{2(i+j) - 2(n-1)}`.
pub fn qbinom2(n: u32) -> LaurentPoly {
    let mut terms = BTreeMap::new();
    for j in 0..n as i64 {
        for i in 0..j {
            *terms.entry(2 * (i + j) - 2 * (n as i64 - 1)).or_insert(0) += 1;
        }
    }
    LaurentPoly::from_terms(terms)
}

pub fn lmul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let mut terms: BTreeMap<i64, i64> = BTreeMap::new();
    for (e, c) in a.terms() {
        for (f, d) in b.terms() {
            *terms.entry(e + f).or_insert(0) += c * d;
        }
    }
    LaurentPoly::from_terms(terms)
}

/// `sum_{a < ya, b < zb} q^{2a + 4b + shift}`.
pub fn monomial_quotient_series(ya: u32, zb: u32, shift: i64) -> LaurentPoly {
    let mut terms = BTreeMap::new();
    for a in 0..ya as i64 {
        for b in 0..zb as i64 {
            *terms.entry(2 * a + 4 * b + shift).or_insert(0) += 1;
        }
    }
    LaurentPoly::from_terms(terms)
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::from(0);
    }
    let mut r = BigInt::from(1);
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// The closed binomial form of `f` with `f(x + y, xy) = x^{n+1} + y^{n+1}`:
/// `y^{n+1} + (n+1) sum_{1 <= 2i <= n+1} (-1)^i / i * C(n-i, i-1) y^{n+1-2i} z^i`.
pub fn f_closed(n: u32, y: &Poly, z: &Poly) -> Poly {
    let n = n as i64;
    let mut out = y.pow(n as u32 + 1);
    let mut i = 1;
    while 2 * i <= n + 1 {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let c = Q::new(BigInt::from(sign * (n + 1)) * binom(n - i, i - 1), BigInt::from(i));
        out = out + y.pow((n + 1 - 2 * i) as u32) * z.pow(i as u32) * Poly::constant(c);
        i += 1;
    }
    out
}

pub fn xv(i: u32) -> Poly {
    Poly::var(VarId::x(i))
}
pub fn yv(i: u32) -> Poly {
    Poly::var(VarId::y(i))
}
pub fn zv(i: u32) -> Poly {
    Poly::var(VarId::z(i))
}

/// `Σ_head g - Σ_tail g` over the open ends, with `g = x^{n+1}` or `f(y, z)`.
pub fn expected_potential(d: &Diagram) -> Poly {
    let mut w = Poly::zero();
    for (p, end) in d.boundary() {
        let g = match p {
            Param::Single(i) => xv(i).pow(d.n + 1),
            Param::Double(i) => f_closed(d.n, &yv(i), &zv(i)),
        };
        w = match end {
            End::Head => w + g,
            End::Tail => w - g,
        };
    }
    w
}

/// A random diagram of at most `max_pieces` pieces over fresh parameters,
/// with a random subset of compatible ends glued.
pub fn random_diagram<R: Rng>(rng: &mut R, n: u32, max_pieces: usize) -> Diagram {
    let kinds = [
        PieceKind::Arc,
        PieceKind::Wide,
        PieceKind::Dline,
        PieceKind::Vin,
        PieceKind::Vout,
    ];
    let mut d = Diagram::new(n).unwrap();
    let mut next = 1;
    let pieces = rng.gen_range(1..=max_pieces);
    for _ in 0..pieces {
        let kind = *kinds.choose(rng).unwrap();
        let params: Vec<Param> = kind
            .slots()
            .iter()
            .map(|&(double, _)| {
                next += 1;
                if double {
                    Param::Double(next - 1)
                } else {
                    Param::Single(next - 1)
                }
            })
            .collect();
        d.add_piece(kind, &params).unwrap();
    }
    let uses: Vec<(Param, End)> = d.uses().iter().map(|(p, (_, e))| (*p, *e)).collect();
    for double in [false, true] {
        let mut heads: Vec<Param> = uses
            .iter()
            .filter(|(p, e)| p.is_double() == double && *e == End::Head)
            .map(|(p, _)| *p)
            .collect();
        let mut tails: Vec<Param> = uses
            .iter()
            .filter(|(p, e)| p.is_double() == double && *e == End::Tail)
            .map(|(p, _)| *p)
            .collect();
        heads.shuffle(rng);
        tails.shuffle(rng);
        for (h, t) in heads.into_iter().zip(tails) {
            if rng.gen_bool(0.6) {
                if rng.gen_bool(0.5) {
                    d.add_glue(h, t).unwrap();
                } else {
                    d.add_glue(t, h).unwrap();
                }
            }
        }
    }
    d
}

/// A nonzero homogeneous polynomial of degree `2k` in `x1, x2, x3`.
pub fn random_homogeneous<R: Rng>(rng: &mut R, k: u32) -> Poly {
    let mut p = Poly::zero();
    while p.is_zero() {
        p = random_homogeneous_raw(rng, k);
    }
    p
}

fn random_homogeneous_raw<R: Rng>(rng: &mut R, k: u32) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let a = rng.gen_range(0..=k);
        let b = rng.gen_range(0..=k - a);
        let c = k - a - b;
        let coeff = Q::from_integer(BigInt::from(rng.gen_range(-3i64..=3)));
        p = p + xv(1).pow(a) * xv(2).pow(b) * xv(3).pow(c) * Poly::constant(coeff);
    }
    p
}
