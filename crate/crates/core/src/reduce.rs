//! Simplification of Koszul factorizations: row scaling, variable exclusion,
//! contractible rows, free-module splitting, and a fixpoint driver.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::ReduceError;
use crate::mf::{KoszulMf, KoszulRow, MfSum};
use crate::poly::{Poly, VarId, Q};

/// Which entry of a row an exclusion uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    B,
    A,
}

/// One step of a reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    /// Row `row` has a nonzero constant entry, so the whole factorization is
    /// contractible.
    Contractible { row: usize },
    /// Row `row` was removed by solving its `side` entry for `var^power`;
    /// `rule` is the inserted replacement.
    Exclude {
        row: usize,
        side: Side,
        var: VarId,
        power: u32,
        rule: Poly,
    },
    /// A linear rule whose variable no longer occurs anywhere was dropped
    /// together with the variable.
    DropVariable { var: VarId },
    /// The base ring was split as a free module with basis `1, var, ..,
    /// var^{power-1}`.
    Split { var: VarId, power: u32 },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Contractible { row } => write!(f, "row {row} is contractible"),
            Step::Exclude {
                row,
                side,
                var,
                power,
                rule,
            } => {
                let s = if *side == Side::A { "a" } else { "b" };
                write!(f, "exclude {var} via {s} of row {row}: {var}^{power} -> {rule}")
            }
            Step::DropVariable { var } => write!(f, "drop {var}"),
            Step::Split { var, power } => write!(f, "split over 1..{var}^{}", power - 1),
        }
    }
}

/// The steps taken by [`auto_reduce`], in order. After a split every step
/// applies to all summands alike (they differ only in their shift).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReductionTrace {
    pub steps: Vec<Step>,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// A possible exclusion: solve the `side` entry of `row` for `var^power`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Candidate {
    pub power: u32,
    pub row: usize,
    pub side: Side,
    pub var: VarId,
}

fn check_row(m: &KoszulMf, i: usize) -> Result<&KoszulRow, ReduceError> {
    m.rows.get(i).ok_or(ReduceError::RowOutOfRange {
        index: i,
        len: m.rows.len(),
    })
}

/// `K(a; b) ≃ K(c a; c^{-1} b)` on row `i`.
pub fn scale_row(m: &KoszulMf, i: usize, c: &Q) -> Result<KoszulMf, ReduceError> {
    if c.is_zero() {
        return Err(ReduceError::ZeroScalar);
    }
    let row = check_row(m, i)?;
    let mut out = m.clone();
    out.rows[i] = KoszulRow {
        a: row.a.scale(c),
        b: row.b.scale(&c.recip()),
        shift: row.shift,
    };
    Ok(out)
}

/// Removes row `i` by passing to the quotient by its `b` entry, which must
/// be `c v^d + p` with `c` a nonzero rational and `deg_v p < d`. The rule
/// `v^d -> -p/c` joins the base ring and the other rows are reduced.
pub fn exclude_variable(m: &KoszulMf, i: usize, v: VarId) -> Result<KoszulMf, ReduceError> {
    let row = check_row(m, i)?;
    if m.potential().contains_var(v) {
        return Err(ReduceError::VariableInPotential(v));
    }
    let (d, c, p) = row
        .b
        .monic_in(v)
        .ok_or(ReduceError::NotMonicInVariable { row: i, var: v })?;
    let base = m.base.with_rule(v, d, &p.scale(&(-c.recip())))?;
    let rows = m
        .rows
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != i)
        .map(|(_, r)| r.map(|e| base.normal_form(e)))
        .collect();
    Ok(KoszulMf {
        rows,
        base,
        shift: m.shift,
        parity: m.parity,
    })
}

/// The same exclusion using the `a` entry: the row is first rewritten by
/// the translation lemma, which swaps its entries (with signs), and then
/// excluded on its new `b` entry.
pub fn exclude_variable_a(m: &KoszulMf, i: usize, v: VarId) -> Result<KoszulMf, ReduceError> {
    check_row(m, i)?;
    let flipped = m.flip_row(i).expect("row index checked");
    exclude_variable(&flipped, i, v)
}

/// The index of a row with a nonzero constant entry, if any. Such a row is
/// `K(c; ω/c)` or `K(ω/c; c)`, which is contractible, and tensoring with a
/// contractible factorization gives a contractible one.
pub fn contractible_row(m: &KoszulMf) -> Option<usize> {
    m.rows.iter().position(|r| {
        [&r.a, &r.b]
            .iter()
            .any(|e| !e.is_zero() && e.is_constant())
    })
}

/// The zero sum if some row has a nonzero constant entry, `m` otherwise.
pub fn eliminate_contractible(m: &KoszulMf) -> MfSum {
    match contractible_row(m) {
        Some(_) => MfSum::zero(),
        None => MfSum::single(m.clone()),
    }
}

/// Splits along the rule `v^d -> p` of the base ring: the quotient is free
/// over the ring without `v`, with basis `1, v, .., v^{d-1}`, so the result
/// is `d` copies shifted by `0, deg v, .., (d-1) deg v`.
pub fn split_free_module(m: &KoszulMf, v: VarId) -> Result<MfSum, ReduceError> {
    let rule = m.base.rule_for(v).ok_or(ReduceError::MissingRule(v))?;
    if m.rows.iter().any(|r| r.contains_var(v))
        || m
            .base
            .rules()
            .iter()
            .any(|r| r.var != v && r.replacement.contains_var(v))
    {
        return Err(ReduceError::ResidualVariable(v));
    }
    let base = m.base.without_rule(v)?.without_variable(v);
    let reduced = KoszulMf {
        rows: m.rows.clone(),
        base,
        shift: m.shift,
        parity: m.parity,
    };
    Ok((0..rule.power as i64)
        .map(|k| reduced.shift(k * v.degree()).into())
        .collect())
}

fn drop_variable(m: &KoszulMf, v: VarId) -> Result<KoszulMf, ReduceError> {
    let base = m.base.without_rule(v)?.without_variable(v);
    Ok(KoszulMf {
        base,
        ..m.clone()
    })
}

/// Leaders whose variable occurs in no row and in no other rule.
fn spent_leaders(m: &KoszulMf) -> Vec<(VarId, u32)> {
    m.base
        .rules()
        .iter()
        .filter(|r| {
            !m.rows.iter().any(|row| row.contains_var(r.var))
                && !m
                    .base
                    .rules()
                    .iter()
                    .any(|o| o.var != r.var && o.replacement.contains_var(r.var))
        })
        .map(|r| (r.var, r.power))
        .collect()
}

/// All legal-looking exclusions, sorted by (power, row, side, variable).
pub fn candidates(m: &KoszulMf) -> Vec<Candidate> {
    let pot: BTreeSet<VarId> = m.potential().variables();
    let mut out = Vec::new();
    for (i, r) in m.rows.iter().enumerate() {
        for (side, e) in [(Side::B, &r.b), (Side::A, &r.a)] {
            for v in e.variables() {
                if pot.contains(&v) || m.base.is_leader(v) {
                    continue;
                }
                if let Some((d, _, _)) = e.monic_in(v) {
                    out.push(Candidate {
                        power: d,
                        row: i,
                        side,
                        var: v,
                    });
                }
            }
        }
    }
    out.sort();
    out
}

fn apply_exclusion(m: &KoszulMf, c: &Candidate) -> Result<(KoszulMf, Step), ReduceError> {
    let out = match c.side {
        Side::B => exclude_variable(m, c.row, c.var)?,
        Side::A => exclude_variable_a(m, c.row, c.var)?,
    };
    let rule = out.base.rule_for(c.var).unwrap().replacement.clone();
    Ok((
        out,
        Step::Exclude {
            row: c.row,
            side: c.side,
            var: c.var,
            power: c.power,
            rule,
        },
    ))
}

/// Runs the reduction to a fixpoint with the default choice: the candidate
/// with the smallest power, then lowest row, `b` before `a`, then the
/// smallest variable.
///
/// When that greedy run stops on a potential-zero input with rows left over
/// an infinite-dimensional base, the candidates are searched depth first in
/// the same order and the first fully reduced outcome is returned instead. The greedy result is
/// kept if the search budget runs out first.
pub fn auto_reduce(m: &KoszulMf) -> (MfSum, ReductionTrace) {
    let greedy = auto_reduce_with(m, &mut |_| 0);
    // a nonzero potential keeps its variables free, so searching is futile
    if is_fully_reduced(&greedy.0) || !m.potential().is_zero() {
        return greedy;
    }
    let mut budget = SEARCH_BUDGET;
    search(m.clone(), vec![0], ReductionTrace::default(), &mut budget).unwrap_or(greedy)
}

/// Number of states the fallback search may visit.
const SEARCH_BUDGET: usize = 2000;

/// Every summand is either row-free or lives over a finite-dimensional base.
pub fn is_fully_reduced(s: &MfSum) -> bool {
    s.koszul_summands().all(|k| {
        k.rows.is_empty() || k.base.ambient().iter().all(|&v| k.base.is_leader(v))
    })
}

fn search(
    mut cur: KoszulMf,
    mut shifts: Vec<i64>,
    mut trace: ReductionTrace,
    budget: &mut usize,
) -> Option<(MfSum, ReductionTrace)> {
    loop {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        if let Some(row) = contractible_row(&cur) {
            trace.steps.push(Step::Contractible { row });
            return Some((MfSum::zero(), trace));
        }
        let mut applied = false;
        for c in candidates(&cur) {
            if let Ok((next, step)) = apply_exclusion(&cur, &c) {
                applied = true;
                let mut t = trace.clone();
                t.steps.push(step);
                if let Some(found) = search(next, shifts.clone(), t, budget) {
                    return Some(found);
                }
            }
        }
        if applied || cur.rows.is_empty() {
            break;
        }
        let Some(&(v, d)) = spent_leaders(&cur).first() else {
            break;
        };
        if d == 1 {
            cur = drop_variable(&cur, v).ok()?;
            trace.steps.push(Step::DropVariable { var: v });
        } else {
            cur.base = cur.base.without_rule(v).ok()?.without_variable(v);
            shifts = shifts
                .iter()
                .flat_map(|s| (0..d as i64).map(move |k| s + k * v.degree()))
                .collect();
            trace.steps.push(Step::Split { var: v, power: d });
        }
    }
    let sum: MfSum = shifts.iter().map(|&s| cur.shift(s).into()).collect();
    is_fully_reduced(&sum).then_some((sum, trace))
}

/// Runs the reduction to a fixpoint; `choose` picks which of the sorted
/// candidates to try next. A candidate whose rule cannot be inserted is
/// discarded and `choose` is asked again.
pub fn auto_reduce_with(
    m: &KoszulMf,
    choose: &mut dyn FnMut(&[Candidate]) -> usize,
) -> (MfSum, ReductionTrace) {
    let mut cur = m.clone();
    let mut shifts = vec![0i64];
    let mut trace = ReductionTrace::default();
    'outer: loop {
        if let Some(row) = contractible_row(&cur) {
            trace.steps.push(Step::Contractible { row });
            return (MfSum::zero(), trace);
        }
        let mut cands = candidates(&cur);
        while !cands.is_empty() {
            let k = choose(&cands).min(cands.len() - 1);
            match apply_exclusion(&cur, &cands[k]) {
                Ok((next, step)) => {
                    cur = next;
                    trace.steps.push(step);
                    continue 'outer;
                }
                Err(_) => {
                    cands.remove(k);
                }
            }
        }
        if cur.rows.is_empty() {
            break;
        }
        if let Some(&(v, d)) = spent_leaders(&cur).first() {
            if d == 1 {
                cur = drop_variable(&cur, v).expect("spent linear rule");
                trace.steps.push(Step::DropVariable { var: v });
            } else {
                let base = cur.base.without_rule(v).expect("spent rule").without_variable(v);
                cur.base = base;
                shifts = shifts
                    .iter()
                    .flat_map(|s| (0..d as i64).map(move |k| s + k * v.degree()))
                    .collect();
                trace.steps.push(Step::Split { var: v, power: d });
            }
            continue;
        }
        break;
    }
    let sum = shifts.iter().map(|&s| cur.shift(s).into()).collect();
    (sum, trace)
}

/// Applies a recorded trace to `m`.
pub fn replay(m: &KoszulMf, trace: &ReductionTrace) -> Result<MfSum, ReduceError> {
    let mut cur = m.clone();
    let mut shifts = vec![0i64];
    for (k, step) in trace.steps.iter().enumerate() {
        let mismatch = |reason: String| ReduceError::ReplayMismatch { step: k, reason };
        match step {
            Step::Contractible { row } => {
                let r = check_row(&cur, *row)?;
                if ![&r.a, &r.b].iter().any(|e| !e.is_zero() && e.is_constant()) {
                    return Err(mismatch(format!("row {row} has no constant entry")));
                }
                return Ok(MfSum::zero());
            }
            Step::Exclude {
                row,
                side,
                var,
                power,
                rule,
            } => {
                let c = Candidate {
                    power: *power,
                    row: *row,
                    side: *side,
                    var: *var,
                };
                let (next, got) = apply_exclusion(&cur, &c)?;
                if got != *step {
                    return Err(mismatch(format!("rule {rule} was not reproduced")));
                }
                cur = next;
            }
            Step::DropVariable { var } => {
                cur = drop_variable(&cur, *var)?;
            }
            Step::Split { var, power } => {
                let parts = split_free_module(&cur, *var)?;
                if parts.len() != *power as usize {
                    return Err(mismatch(format!("split gave {} summands", parts.len())));
                }
                cur.base = parts.summands[0].as_koszul().unwrap().base.clone();
                shifts = shifts
                    .iter()
                    .flat_map(|s| (0..*power as i64).map(move |k| s + k * var.degree()))
                    .collect();
            }
        }
    }
    Ok(shifts.iter().map(|&s| cur.shift(s).into()).collect())
}

/// Scales each row so that `b` (or `a` when `b = 0`) has leading
/// coefficient 1, reduces entries, and sorts the rows.
pub fn canonical_form(m: &KoszulMf) -> KoszulMf {
    let mut rows: Vec<KoszulRow> = m
        .rows
        .iter()
        .map(|r| {
            let a = m.base.normal_form(&r.a);
            let b = m.base.normal_form(&r.b);
            let c = match (b.leading_coeff(), a.leading_coeff()) {
                (Some(lb), _) => lb.clone(),
                (None, Some(la)) => la.recip(),
                (None, None) => Q::one(),
            };
            KoszulRow {
                a: a.scale(&c),
                b: b.scale(&c.recip()),
                shift: r.shift,
            }
        })
        .collect();
    rows.sort_by_cached_key(|r| (r.a.to_string(), r.b.to_string(), r.shift));
    KoszulMf {
        rows,
        base: m.base.clone(),
        shift: m.shift,
        parity: m.parity,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{pi_poly_in, q_frac, q_int};
    use crate::quotient::QuotientRing;

    fn y(i: u32) -> Poly {
        Poly::var(VarId::y(i))
    }

    fn z(i: u32) -> Poly {
        Poly::var(VarId::z(i))
    }

    #[test]
    fn scale_row_example() {
        let m = KoszulMf::new(y(1) * Poly::int(2), z(1), QuotientRing::free([])).unwrap();
        let s = scale_row(&m, 0, &q_frac(1, 2)).unwrap();
        assert_eq!(s.rows[0].a, y(1));
        assert_eq!(s.rows[0].b, z(1) * Poly::int(2));
        assert_eq!(s.potential(), m.potential());
        assert_eq!(scale_row(&m, 0, &q_int(1)).unwrap(), m);
        assert_eq!(scale_row(&m, 0, &q_int(0)), Err(ReduceError::ZeroScalar));
    }

    #[test]
    fn variable_in_potential_is_refused() {
        let x = VarId::x(1);
        let m = KoszulMf::new(Poly::var(x), Poly::var(x), QuotientRing::free([])).unwrap();
        assert_eq!(
            exclude_variable(&m, 0, x),
            Err(ReduceError::VariableInPotential(x))
        );
    }

    #[test]
    fn circle_reduces_to_truncated_ring() {
        let x = VarId::x(1);
        for n in 2..=5u32 {
            let pi = pi_poly_in(n, x, x);
            let row = KoszulRow::with_shift(pi, Poly::zero(), 1 - n as i64);
            let m = KoszulMf::from_rows(vec![row], QuotientRing::free([x]), 0);
            let (sum, trace) = auto_reduce(&m);
            assert_eq!(sum.len(), 1);
            let k = sum.koszul_summands().next().unwrap();
            assert!(k.rows.is_empty());
            assert_eq!(k.shift, 1 - n as i64);
            assert!(k.parity);
            let expect = QuotientRing::free([x]).with_rule(x, n, &Poly::zero()).unwrap();
            assert_eq!(k.base, expect);
            assert_eq!(replay(&m, &trace).unwrap(), sum);
        }
    }

    #[test]
    fn constant_entry_is_contractible() {
        let w = y(1).pow(3);
        for (a, b) in [(Poly::one(), w.clone()), (w.clone(), Poly::one())] {
            let m = KoszulMf::new(a, b, QuotientRing::free([])).unwrap();
            assert!(eliminate_contractible(&m).is_empty());
        }
        let m = KoszulMf::new(y(1), y(2), QuotientRing::free([])).unwrap();
        assert_eq!(eliminate_contractible(&m), MfSum::single(m));
    }

    #[test]
    fn split_needs_a_free_variable() {
        let x = VarId::x(4);
        let base = QuotientRing::free([x, VarId::y(1)])
            .with_rule(x, 2, &(y(1) * Poly::var(x)))
            .unwrap();
        let m = KoszulMf::from_rows(
            vec![KoszulRow::with_shift(Poly::var(x), y(1), 0)],
            base.clone(),
            0,
        );
        assert_eq!(split_free_module(&m, x), Err(ReduceError::ResidualVariable(x)));
        let m = KoszulMf::from_rows(vec![KoszulRow::with_shift(y(1), y(1), 0)], base, 0);
        let parts = split_free_module(&m, x).unwrap();
        assert_eq!(parts.len(), 2);
        let shifts: Vec<i64> = parts.koszul_summands().map(|k| k.shift).collect();
        assert_eq!(shifts, vec![0, 2]);
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let rows = vec![
            KoszulRow::with_shift(y(1) * Poly::int(2), z(1).scale(&q_frac(1, 2)), 1),
            KoszulRow::with_shift(y(2), z(2) * Poly::int(3), 1),
        ];
        let m = KoszulMf::from_rows(rows, QuotientRing::free([]), 0);
        let c = canonical_form(&m);
        assert_eq!(c.rows[0].b.leading_coeff(), Some(&q_int(1)));
        assert_eq!(c.rows[1].b.leading_coeff(), Some(&q_int(1)));
        assert_eq!(canonical_form(&c), c);
        assert_eq!(c.potential(), m.potential());
    }
}
