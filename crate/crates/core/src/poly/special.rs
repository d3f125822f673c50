//! The specific polynomials used by the diagram factorizations.

use std::collections::BTreeMap;

use super::{Poly, VarId};

// Scratch variables used while forming difference quotients symbolically.
const S: VarId = VarId::y(u32::MAX);
const T: VarId = VarId::y(u32::MAX - 1);
const P: VarId = VarId::z(u32::MAX);
const P2: VarId = VarId::z(u32::MAX - 1);

/// `f(s1, s2)` with `f(x + y, xy) = x^{n+1} + y^{n+1}`, evaluated at the
/// given polynomials via the Newton recursion `p_k = s1 p_{k-1} - s2 p_{k-2}`.
pub fn power_sum_eval(n: u32, s1: &Poly, s2: &Poly) -> Poly {
    let mut prev = Poly::int(2);
    let mut cur = s1.clone();
    for _ in 1..=n {
        let next = s1 * &cur - s2 * &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `f(s1, s2)` in the variables `s1 = y1`, `s2 = z1` (degrees 2 and 4, so
/// `f` is homogeneous of degree `2n + 2`).
pub fn power_sum_expand(n: u32) -> Poly {
    power_sum_eval(n, &Poly::var(VarId::y(1)), &Poly::var(VarId::z(1)))
}

/// `(p - p|_{v=w}) / (v - w)`.
pub fn difference_quotient(p: &Poly, v: VarId, w: VarId) -> Poly {
    let num = p - &p.substitute_var(v, &Poly::var(w));
    num.exact_div(&(Poly::var(v) - Poly::var(w)))
        .expect("difference quotients are exact")
}

/// `sum_{k=0}^{n} a^k b^{n-k}`, so that `pi (a - b) = a^{n+1} - b^{n+1}`.
pub fn pi_poly_in(n: u32, a: VarId, b: VarId) -> Poly {
    let mut out = Poly::zero();
    for k in 0..=n {
        out += &(Poly::var_pow(a, k) * Poly::var_pow(b, n - k));
    }
    out
}

/// `pi_poly_in(n, x1, x2)`.
pub fn pi_poly(n: u32) -> Poly {
    pi_poly_in(n, VarId::x(1), VarId::x(2))
}

/// The two difference quotients of `f` that every two-row diagram
/// factorization is built from:
/// `g1(S, T, P) = (f(S, P) - f(T, P)) / (S - T)` and
/// `g2(T, P, P') = (f(T, P) - f(T, P')) / (P - P')`.
#[derive(Debug, Clone)]
pub struct FQuotients {
    g1: Poly,
    g2: Poly,
}

impl FQuotients {
    pub fn new(n: u32) -> Self {
        let f = power_sum_eval(n, &Poly::var(S), &Poly::var(P));
        let g1 = difference_quotient(&f, S, T);
        let f_t = f.substitute_var(S, &Poly::var(T));
        let g2 = difference_quotient(&f_t, P, P2);
        FQuotients { g1, g2 }
    }

    /// `(f(s, p) - f(t, p)) / (s - t)`.
    pub fn first(&self, s: &Poly, t: &Poly, p: &Poly) -> Poly {
        let mut map = BTreeMap::new();
        map.insert(S, s.clone());
        map.insert(T, t.clone());
        map.insert(P, p.clone());
        self.g1.substitute(&map)
    }

    /// `(f(t, p) - f(t, p2)) / (p - p2)`.
    pub fn second(&self, t: &Poly, p: &Poly, p2: &Poly) -> Poly {
        let mut map = BTreeMap::new();
        map.insert(T, t.clone());
        map.insert(P, p.clone());
        map.insert(P2, p2.clone());
        self.g2.substitute(&map)
    }
}

/// The wide-edge pair `(u, v)` for the boundary variables `[x1, x2, x3, x4]`:
/// `u = (f(x1+x2, x1x2) - f(x3+x4, x1x2)) / (x1+x2-x3-x4)` and
/// `v = (f(x3+x4, x1x2) - f(x3+x4, x3x4)) / (x1x2-x3x4)`.
pub fn uv_polys_in(n: u32, xs: [VarId; 4]) -> (Poly, Poly) {
    let [a, b, c, d] = xs.map(Poly::var);
    let q = FQuotients::new(n);
    let top_sum = &a + &b;
    let top_prod = &a * &b;
    let bot_sum = &c + &d;
    let bot_prod = &c * &d;
    let u = q.first(&top_sum, &bot_sum, &top_prod);
    let v = q.second(&bot_sum, &top_prod, &bot_prod);
    (u, v)
}

/// `uv_polys_in(n, [x1, x2, x3, x4])`.
pub fn uv_polys(n: u32) -> (Poly, Poly) {
    uv_polys_in(n, [VarId::x(1), VarId::x(2), VarId::x(3), VarId::x(4)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y() -> Poly {
        Poly::var(VarId::y(1))
    }
    fn z() -> Poly {
        Poly::var(VarId::z(1))
    }
    fn x(i: u32) -> Poly {
        Poly::var(VarId::x(i))
    }

    #[test]
    fn small_power_sums() {
        assert_eq!(power_sum_expand(1), y().pow(2) - z() * Poly::int(2));
        assert_eq!(power_sum_expand(2), y().pow(3) - &y() * &z() * Poly::int(3));
        assert_eq!(
            power_sum_expand(3),
            y().pow(4) - y().pow(2) * &z() * Poly::int(4) + z().pow(2) * Poly::int(2)
        );
    }

    #[test]
    fn small_pi_polys() {
        assert_eq!(pi_poly(1), x(1) + x(2));
        assert_eq!(pi_poly(2), x(1).pow(2) + x(1) * x(2) + x(2).pow(2));
        assert_eq!(pi_poly(2).degree(), Some(4));
    }

    #[test]
    fn uv_for_small_n() {
        let (u, v) = uv_polys(1);
        assert_eq!(u, x(1) + x(2) + x(3) + x(4));
        assert_eq!(v, Poly::int(-2));
        let (u, v) = uv_polys(2);
        let s = x(1) + x(2);
        let t = x(3) + x(4);
        let expect_u = s.pow(2) + &s * &t + t.pow(2) - x(1) * x(2) * Poly::int(3);
        assert_eq!(u, expect_u);
        assert_eq!(v, t * Poly::int(-3));
    }
}
