//! Quotients of polynomial rings by monic pure-power rules `v^d -> p`.
//!
//! When no rule's replacement mentions another rule's leader in a cycle, the
//! rules have coprime pure-power leading terms under a suitable lex order and
//! plain rewriting is confluent. Cyclic systems (as in the Jacobi algebra)
//! are handled degree by degree with linear algebra over the standard
//! monomials; they are accepted only if the quotient is finite dimensional
//! and the standard monomials form a basis.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::error::RingError;
use crate::laurent::LaurentPoly;
use crate::linalg::rref_with_order;
use crate::poly::{power_sum_expand, Monomial, Poly, VarId, Q};

/// `var^power` is rewritten to `replacement`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub var: VarId,
    pub power: u32,
    pub replacement: Poly,
}

impl Rule {
    pub fn leader(&self) -> Monomial {
        Monomial::var_pow(self.var, self.power)
    }

    /// `var^power - replacement`, the ideal generator.
    pub fn generator(&self) -> Poly {
        Poly::var_pow(self.var, self.power) - &self.replacement
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.leader(), self.replacement)
    }
}

#[derive(Default)]
struct Cache {
    monomials: HashMap<Monomial, Poly>,
    tables: HashMap<i64, Arc<HashMap<Monomial, Poly>>>,
}

#[derive(Default)]
struct Engine {
    /// Variables involved in a cyclic rule system; empty when rewriting is used.
    cyclic_vars: BTreeSet<VarId>,
    /// Above this degree every monomial in `cyclic_vars` is zero.
    top_degree: i64,
    cache: Mutex<Cache>,
}

/// A polynomial ring over a set of variables modulo triangular monic rules.
#[derive(Clone, Default)]
pub struct QuotientRing {
    ambient: BTreeSet<VarId>,
    rules: Vec<Rule>,
    engine: Arc<Engine>,
}

impl QuotientRing {
    /// The polynomial ring on `vars` with no relations.
    pub fn free<I: IntoIterator<Item = VarId>>(vars: I) -> Self {
        QuotientRing {
            ambient: vars.into_iter().collect(),
            rules: Vec::new(),
            engine: Arc::new(Engine::default()),
        }
    }

    pub fn ambient(&self) -> &BTreeSet<VarId> {
        &self.ambient
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule_for(&self, v: VarId) -> Option<&Rule> {
        self.rules.iter().find(|r| r.var == v)
    }

    pub fn is_leader(&self, v: VarId) -> bool {
        self.rule_for(v).is_some()
    }

    pub fn leaders(&self) -> BTreeSet<VarId> {
        self.rules.iter().map(|r| r.var).collect()
    }

    /// Adds variables without relations.
    pub fn with_variables<I: IntoIterator<Item = VarId>>(&self, vars: I) -> Self {
        let mut out = self.clone();
        out.ambient.extend(vars);
        out
    }

    /// Drops a variable that carries no rule and occurs in no replacement.
    pub fn without_variable(&self, v: VarId) -> Self {
        debug_assert!(!self.is_leader(v));
        debug_assert!(!self.rules.iter().any(|r| r.replacement.contains_var(v)));
        let mut out = self.clone();
        out.ambient.remove(&v);
        out
    }

    /// Removes the rule with leader `v`, keeping `v` as a free variable.
    pub fn without_rule(&self, v: VarId) -> Result<Self, RingError> {
        let rules: Vec<Rule> = self.rules.iter().filter(|r| r.var != v).cloned().collect();
        QuotientRing::from_parts(self.ambient.clone(), rules)
    }

    /// Inserts the rule `v^d -> p`. The replacement is first reduced modulo
    /// the existing rules; it must then be homogeneous of degree
    /// `d * deg v` and of degree below `d` in `v`.
    pub fn with_rule(&self, v: VarId, d: u32, p: &Poly) -> Result<Self, RingError> {
        if d == 0 {
            return Err(RingError::TriangularityViolation {
                var: v,
                power: d,
                reason: "power must be positive".into(),
            });
        }
        if self.is_leader(v) {
            return Err(RingError::TriangularityViolation {
                var: v,
                power: d,
                reason: "variable already has a rule".into(),
            });
        }
        let expected = v.degree() * d as i64;
        if !p.is_zero() && p.degree() != Some(expected) {
            return Err(RingError::InhomogeneousRule {
                var: v,
                power: d,
                expected,
            });
        }
        let p = self.normal_form(p);
        if p.degree_in(v) >= d {
            return Err(RingError::TriangularityViolation {
                var: v,
                power: d,
                reason: format!("replacement {p} has degree >= {d} in {v}"),
            });
        }
        let mut ambient = self.ambient.clone();
        ambient.insert(v);
        ambient.extend(p.variables());
        let mut rules = self.rules.clone();
        rules.push(Rule {
            var: v,
            power: d,
            replacement: p,
        });
        QuotientRing::from_parts(ambient, rules)
    }

    fn from_parts(ambient: BTreeSet<VarId>, rules: Vec<Rule>) -> Result<Self, RingError> {
        let mut ring = QuotientRing {
            ambient,
            rules,
            engine: Arc::new(Engine::default()),
        };
        if let Some(vars) = ring.cycle_vars() {
            ring.engine = Arc::new(Engine::cyclic(&ring.rules, vars)?);
        }
        Ok(ring)
    }

    /// Variables of the rule system if its dependency graph has a cycle.
    fn cycle_vars(&self) -> Option<BTreeSet<VarId>> {
        let leaders = self.leaders();
        let deps: BTreeMap<VarId, Vec<VarId>> = self
            .rules
            .iter()
            .map(|r| {
                let targets = r
                    .replacement
                    .variables()
                    .into_iter()
                    .filter(|w| *w != r.var && leaders.contains(w))
                    .collect();
                (r.var, targets)
            })
            .collect();
        // Kahn's algorithm
        let mut indeg: BTreeMap<VarId, usize> = leaders.iter().map(|&v| (v, 0)).collect();
        for ts in deps.values() {
            for t in ts {
                *indeg.get_mut(t).unwrap() += 1;
            }
        }
        let mut queue: Vec<VarId> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for t in &deps[&v] {
                let d = indeg.get_mut(t).unwrap();
                *d -= 1;
                if *d == 0 {
                    queue.push(*t);
                }
            }
        }
        if seen == leaders.len() {
            return None;
        }
        let mut vars = leaders;
        for r in &self.rules {
            vars.extend(r.replacement.variables());
        }
        Some(vars)
    }

    pub fn is_cyclic(&self) -> bool {
        !self.engine.cyclic_vars.is_empty()
    }

    /// The unique representative with every leader below its power.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        if self.rules.is_empty() || p.is_zero() {
            return p.clone();
        }
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            if self.is_standard(m) {
                out.add_term(m.clone(), c.clone());
            } else {
                out += &self.monomial_nf(m).scale(c);
            }
        }
        out
    }

    /// True if no leader occurs at or above its power.
    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.rules.iter().all(|r| m.exponent(r.var) < r.power)
    }

    fn monomial_nf(&self, m: &Monomial) -> Poly {
        if let Some(p) = self.engine.cache.lock().unwrap().monomials.get(m) {
            return p.clone();
        }
        let p = if self.is_cyclic() {
            self.cyclic_nf(m)
        } else {
            self.rewrite_nf(m)
        };
        self.engine
            .cache
            .lock()
            .unwrap()
            .monomials
            .insert(m.clone(), p.clone());
        p
    }

    fn rewrite_nf(&self, m: &Monomial) -> Poly {
        let Some(rule) = self.rules.iter().find(|r| m.exponent(r.var) >= r.power) else {
            return Poly::term(m.clone(), Q::one());
        };
        let rest = m.div(&rule.leader()).unwrap();
        let mut out = Poly::zero();
        for (t, c) in rule.replacement.terms() {
            let n = t.mul(&rest);
            if self.is_standard(&n) {
                out.add_term(n, c.clone());
            } else {
                out += &self.monomial_nf(&n).scale(c);
            }
        }
        out
    }

    fn cyclic_nf(&self, m: &Monomial) -> Poly {
        let vars = &self.engine.cyclic_vars;
        let (inner, outer): (Vec<_>, Vec<_>) =
            m.exps().iter().partition(|(v, _)| vars.contains(v));
        let inner = Monomial::from_pairs(inner);
        let outer = Monomial::from_pairs(outer);
        if inner.degree() > self.engine.top_degree {
            return Poly::zero();
        }
        let table = self.engine.table(&self.rules, inner.degree());
        match table.get(&inner) {
            Some(p) => p.mul_monomial(&outer, &Q::one()),
            None => Poly::term(m.clone(), Q::one()),
        }
    }

    /// Standard monomials of a finite-dimensional quotient.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>, RingError> {
        let mut out = vec![Monomial::one()];
        for &v in &self.ambient {
            let r = self.rule_for(v).ok_or(RingError::InfiniteDimension(v))?;
            let mut next = Vec::with_capacity(out.len() * r.power as usize);
            for m in &out {
                for e in 0..r.power {
                    next.push(m.mul(&Monomial::var_pow(v, e)));
                }
            }
            out = next;
        }
        out.sort();
        Ok(out)
    }

    /// `sum over standard monomials of q^{deg + shift}`.
    pub fn graded_dimension(&self, shift: i64) -> Result<LaurentPoly, RingError> {
        let mut out = LaurentPoly::q_pow(shift);
        for &v in &self.ambient {
            let r = self.rule_for(v).ok_or(RingError::InfiniteDimension(v))?;
            let factor =
                LaurentPoly::from_terms((0..r.power as i64).map(|e| (e * v.degree(), 1)));
            out = &out * &factor;
        }
        Ok(out)
    }

    /// Rules in a presentation independent of insertion order: sorted by
    /// leader, each replacement the normal form of its leader modulo the
    /// whole system.
    pub fn canonical_rules(&self) -> Vec<Rule> {
        let mut out: Vec<Rule> = self
            .rules
            .iter()
            .map(|r| Rule {
                var: r.var,
                power: r.power,
                replacement: self.monomial_nf(&r.leader()),
            })
            .collect();
        out.sort_by_key(|a| a.var);
        out
    }

    /// Renames variables in the ambient set and in every rule.
    pub fn rename(&self, map: &BTreeMap<VarId, VarId>) -> Result<Self, RingError> {
        let ambient = self
            .ambient
            .iter()
            .map(|v| *map.get(v).unwrap_or(v))
            .collect();
        let rules = self
            .rules
            .iter()
            .map(|r| Rule {
                var: *map.get(&r.var).unwrap_or(&r.var),
                power: r.power,
                replacement: r.replacement.rename(map),
            })
            .collect();
        QuotientRing::from_parts(ambient, rules)
    }

    /// The ring over the union of both variable sets. Shared variables must
    /// carry identical rules (or none on both sides).
    pub fn merge(&self, other: &QuotientRing) -> Result<Self, RingError> {
        for &v in self.ambient.intersection(&other.ambient) {
            let a = self.rule_for(v).map(|r| (r.power, self.normal_form(&r.replacement)));
            let b = other
                .rule_for(v)
                .map(|r| (r.power, self.normal_form(&r.replacement)));
            if a != b {
                return Err(RingError::IncompatibleBase(v));
            }
        }
        let mut out = self.with_variables(other.ambient.iter().copied());
        for r in &other.rules {
            if !self.is_leader(r.var) {
                out = out.with_rule(r.var, r.power, &r.replacement)?;
            }
        }
        Ok(out)
    }
}

impl Engine {
    fn cyclic(rules: &[Rule], vars: BTreeSet<VarId>) -> Result<Self, RingError> {
        let mut top = 0;
        for &v in &vars {
            let Some(r) = rules.iter().find(|r| r.var == v) else {
                return Err(RingError::TriangularityViolation {
                    var: v,
                    power: 0,
                    reason: "cyclic rule system over a variable without a rule".into(),
                });
            };
            top += (r.power as i64 - 1) * v.degree();
        }
        let engine = Engine {
            cyclic_vars: vars,
            top_degree: top,
            cache: Mutex::new(Cache::default()),
        };
        let max_var = engine.cyclic_vars.iter().map(|v| v.degree()).max().unwrap_or(0);
        for d in (0..=top + max_var).step_by(2) {
            engine.try_table(rules, d)?;
        }
        Ok(engine)
    }

    fn table(&self, rules: &[Rule], degree: i64) -> Arc<HashMap<Monomial, Poly>> {
        if let Some(t) = self.cache.lock().unwrap().tables.get(&degree) {
            return t.clone();
        }
        self.try_table(rules, degree)
            .expect("degrees above the validated range are zero")
    }

    /// Normal forms of the nonstandard monomials of one degree, from the
    /// row-reduced matrix of all multiples of the generators in that degree.
    fn try_table(
        &self,
        rules: &[Rule],
        degree: i64,
    ) -> Result<Arc<HashMap<Monomial, Poly>>, RingError> {
        if let Some(t) = self.cache.lock().unwrap().tables.get(&degree) {
            return Ok(t.clone());
        }
        let vars: Vec<VarId> = self.cyclic_vars.iter().copied().collect();
        let mut monos = monomials_of_degree(&vars, degree);
        monos.sort();
        monos.reverse();
        let standard = |m: &Monomial| rules.iter().all(|r| m.exponent(r.var) < r.power);
        let (nonstd, std): (Vec<Monomial>, Vec<Monomial>) =
            monos.into_iter().partition(|m| !standard(m));
        let cols: Vec<Monomial> = nonstd.iter().chain(std.iter()).cloned().collect();
        let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();

        let mut rows = Vec::new();
        for r in rules.iter().filter(|r| self.cyclic_vars.contains(&r.var)) {
            let g = r.generator();
            let gd = r.var.degree() * r.power as i64;
            if gd > degree {
                continue;
            }
            for m in monomials_of_degree(&vars, degree - gd) {
                let mut row = vec![Q::zero(); cols.len()];
                for (t, c) in g.terms() {
                    row[index[&t.mul(&m)]] += c;
                }
                rows.push(row);
            }
        }
        let order: Vec<usize> = (0..cols.len()).collect();
        let pivots = rref_with_order(&mut rows, &order);
        if pivots.len() != nonstd.len() || pivots.iter().any(|&p| p >= nonstd.len()) {
            return Err(RingError::ReductionFailed(format!(
                "standard monomials of degree {degree} are not a basis of the quotient"
            )));
        }
        let mut table = HashMap::new();
        for (row, &p) in rows.iter().zip(&pivots) {
            let mut nf = Poly::zero();
            for (j, m) in std.iter().enumerate() {
                let c = &row[nonstd.len() + j];
                if !c.is_zero() {
                    nf.add_term(m.clone(), -c.clone());
                }
            }
            table.insert(cols[p].clone(), nf);
        }
        let table = Arc::new(table);
        self.cache
            .lock()
            .unwrap()
            .tables
            .insert(degree, table.clone());
        Ok(table)
    }
}

/// All monomials of a given Z-degree in the listed variables.
pub fn monomials_of_degree(vars: &[VarId], degree: i64) -> Vec<Monomial> {
    fn go(vars: &[VarId], degree: i64, acc: &mut Vec<(VarId, u32)>, out: &mut Vec<Monomial>) {
        let Some((&v, rest)) = vars.split_first() else {
            if degree == 0 {
                out.push(Monomial::from_pairs(acc.iter().copied()));
            }
            return;
        };
        let mut e = 0;
        while e as i64 * v.degree() <= degree {
            acc.push((v, e));
            go(rest, degree - e as i64 * v.degree(), acc, out);
            acc.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if degree >= 0 {
        go(vars, degree, &mut Vec::new(), &mut out);
    }
    out
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.canonical_rules() == other.canonical_rules()
    }
}

impl Eq for QuotientRing {}

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientRing({self})")
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.ambient.iter().map(|v| v.to_string()).collect();
        write!(f, "Q[{}]", vars.join(","))?;
        if !self.rules.is_empty() {
            let rules: Vec<String> = self.rules.iter().map(|r| r.to_string()).collect();
            write!(f, " / <{}>", rules.join(", "))?;
        }
        Ok(())
    }
}

/// A triangular presentation of `Q[y,z] / <df/dy, df/dz>` for the power sum
/// `f` of level `n`, in the variables `y1`, `z1`.
///
/// For even `n` the `z`-derivative is solved for `y^{n-1}` first and the
/// reduced `y`-derivative then for `z^{n/2}`; for odd `n` the `y`-derivative
/// gives `y^n` and the reduced `z`-derivative `z^{(n-1)/2}`.
pub fn jacobi_algebra(n: u32) -> Result<QuotientRing, RingError> {
    if n < 3 {
        return Err(RingError::ReductionFailed(format!("n = {n} < 3")));
    }
    let (y, z) = (VarId::y(1), VarId::z(1));
    let f = power_sum_expand(n);
    let fy = f.partial_derivative(y);
    let fz = f.partial_derivative(z);
    let (first, second) = if n.is_multiple_of(2) { (fz, fy) } else { (fy, fz) };
    let ring = QuotientRing::free([y, z]);
    let ring = insert_monic(&ring, &first, y)?;
    let second = ring.normal_form(&second);
    insert_monic(&ring, &second, z)
}

/// Inserts the rule obtained by solving `p = 0` for the top power of `v`.
pub fn insert_monic(ring: &QuotientRing, p: &Poly, v: VarId) -> Result<QuotientRing, RingError> {
    let (d, c, rest) = p.monic_in(v).ok_or_else(|| {
        RingError::ReductionFailed(format!("{p} is not monic in {v}"))
    })?;
    let replacement = rest.scale(&(-c.recip()));
    ring.with_rule(v, d, &replacement)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::q_int;

    #[test]
    fn nilpotent_rules() {
        let y = VarId::y(1);
        let ring = QuotientRing::free([y]).with_rule(y, 2, &Poly::zero()).unwrap();
        assert!(ring.normal_form(&Poly::var_pow(y, 3)).is_zero());
        let y2 = VarId::y(2);
        let ring = QuotientRing::free([y, y2])
            .with_rule(y, 2, &Poly::var_pow(y2, 2))
            .unwrap();
        assert_eq!(
            ring.normal_form(&Poly::var_pow(y, 3)),
            Poly::var(y) * Poly::var_pow(y2, 2)
        );
    }

    #[test]
    fn inhomogeneous_rule_is_rejected() {
        let y = VarId::y(1);
        let err = QuotientRing::free([y]).with_rule(y, 2, &Poly::int(3));
        assert!(matches!(err, Err(RingError::InhomogeneousRule { .. })));
    }

    #[test]
    fn quadratic_bubble_rule() {
        let (x4, y1, z1) = (VarId::x(4), VarId::y(1), VarId::z(1));
        let rep = Poly::var(y1) * Poly::var(x4) - Poly::var(z1);
        let ring = QuotientRing::free([x4, y1, z1]).with_rule(x4, 2, &rep).unwrap();
        assert_eq!(ring.normal_form(&Poly::var_pow(x4, 2)), rep);
    }

    #[test]
    fn graded_dimensions() {
        let x = VarId::x(1);
        let r = QuotientRing::free([x]).with_rule(x, 2, &Poly::zero()).unwrap();
        assert_eq!(r.graded_dimension(-1).unwrap().to_string(), "q^-1 + q^1");
        let r = QuotientRing::free([x]).with_rule(x, 3, &Poly::zero()).unwrap();
        assert_eq!(r.graded_dimension(-2).unwrap().to_string(), "q^-2 + 1 + q^2");
        let (y, z) = (VarId::y(1), VarId::z(1));
        let r = QuotientRing::free([y, z])
            .with_rule(y, 3, &Poly::zero())
            .unwrap()
            .with_rule(z, 2, &Poly::zero())
            .unwrap();
        assert_eq!(
            r.graded_dimension(-4).unwrap().to_string(),
            "q^-4 + q^-2 + 2 + q^2 + q^4"
        );
        assert!(matches!(
            QuotientRing::free([y]).graded_dimension(0),
            Err(RingError::InfiniteDimension(_))
        ));
    }

    #[test]
    fn jacobi_is_cyclic_for_even_n() {
        let j = jacobi_algebra(4).unwrap();
        assert!(j.is_cyclic());
        let d = j.graded_dimension(0).unwrap();
        assert_eq!(d.eval_one(), 6);
    }

    #[test]
    fn jacobi_kills_both_derivatives() {
        for n in 3..=7 {
            let j = jacobi_algebra(n).unwrap();
            let f = power_sum_expand(n);
            for v in [VarId::y(1), VarId::z(1)] {
                let d = f.partial_derivative(v);
                assert!(j.normal_form(&d).is_zero(), "n={n} v={v}");
                let dy = &d * &Poly::var(VarId::y(1));
                assert!(j.normal_form(&dy).is_zero());
            }
            assert_eq!(j.graded_dimension(0).unwrap().eval_one(), (n * (n - 1) / 2) as i64);
        }
    }

    #[test]
    fn canonical_rules_ignore_insertion_order() {
        let (a, b) = (VarId::x(1), VarId::x(2));
        let r1 = QuotientRing::free([a, b])
            .with_rule(a, 2, &Poly::zero())
            .unwrap()
            .with_rule(b, 1, &Poly::var(a))
            .unwrap();
        let r2 = QuotientRing::free([a, b])
            .with_rule(b, 1, &Poly::var(a))
            .unwrap()
            .with_rule(a, 2, &Poly::zero())
            .unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.normal_form(&Poly::var_pow(b, 2)), Poly::zero());
        let _ = q_int(0);
    }
}
