//! A batch of end-to-end consistency checks that can be run from a binary:
//! loop values, presentations, local moves and the bracket comparison, each
//! for a range of `n`.

use std::collections::BTreeMap;
use std::fmt;

use crate::diagram::{
    boundary_potential, build_primitive, crossing_complex, glue, parse_diagram, CrossingSign,
    Diagram, Param, PieceKind,
};
use crate::homology::graded_homology;
use crate::laurent::quantum_integer;
use crate::mf::{KoszulMf, MfSum};
use crate::moy::bracket;
use crate::poly::{power_sum_expand, Poly, VarId};
use crate::quotient::jacobi_algebra;
use crate::reduce::{auto_reduce, canonical_form};

/// The outcome of one check at one `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfCheck {
    pub name: &'static str,
    pub n: u32,
    pub outcome: Result<(), String>,
}

impl SelfCheck {
    pub fn passed(&self) -> bool {
        self.outcome.is_ok()
    }
}

impl fmt::Display for SelfCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Ok(()) => write!(f, "ok    n={} {}", self.n, self.name),
            Err(e) => write!(f, "FAIL  n={} {}: {e}", self.n, self.name),
        }
    }
}

type Check = fn(u32) -> Result<(), String>;

const CHECKS: [(&str, Check); 9] = [
    ("single loop", single_loop),
    ("double loop", double_loop),
    ("power-sum identity", power_sum),
    ("marker removal", marker_removal),
    ("trivalent composition", trivalent_composition),
    ("bubble splitting", bubble_splitting),
    ("factorization identity", factorization_identity),
    ("theta graph", theta_graph),
    ("crossing objects", crossing_objects),
];

/// Runs every check for `n = 3..=n_max`, in a fixed order.
pub fn run(n_max: u32) -> Vec<SelfCheck> {
    let mut out = Vec::new();
    for n in 3..=n_max {
        for (name, check) in CHECKS {
            out.push(SelfCheck {
                name,
                n,
                outcome: check(n),
            });
        }
    }
    out
}

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

fn diagram(n: u32, body: &str) -> Result<Diagram, String> {
    parse_diagram(&format!("n {n}\n{body}")).map_err(err)
}

fn reduce(d: &Diagram) -> Result<MfSum, String> {
    Ok(auto_reduce(&glue(d).map_err(err)?).0)
}

fn only_summand(s: &MfSum) -> Result<KoszulMf, String> {
    let ks: Vec<&KoszulMf> = s.koszul_summands().collect();
    match ks.as_slice() {
        [k] if s.len() == 1 => Ok((*k).clone()),
        _ => Err(format!("expected one Koszul summand, got {}", s.len())),
    }
}

fn single_loop(n: u32) -> Result<(), String> {
    let s = reduce(&diagram(n, "arc x1 x2\nglue x2 x1")?)?;
    let k = only_summand(&s)?;
    if !k.rows.is_empty() {
        return Err("rows remain".into());
    }
    let euler = graded_homology(&s).map_err(err)?.euler();
    if euler != quantum_integer(n) {
        return Err(format!("euler characteristic {euler}"));
    }
    Ok(())
}

fn double_loop(n: u32) -> Result<(), String> {
    let s = reduce(&diagram(n, "dline d1 d2\nglue d1 d2")?)?;
    let k = only_summand(&s)?;
    if !k.rows.is_empty() {
        return Err("rows remain".into());
    }
    let jac = jacobi_algebra(n).map_err(err)?;
    let dim = k.base.graded_dimension(0).map_err(err)?;
    if dim != jac.graded_dimension(0).map_err(err)? {
        return Err(format!("base dimension {dim}"));
    }
    let want = (&quantum_integer(n) * &quantum_integer(n - 1))
        .exact_div(&quantum_integer(2))
        .ok_or("[n][n-1] is not divisible by [2]")?;
    let euler = graded_homology(&s).map_err(err)?.euler();
    if euler != want {
        return Err(format!("euler characteristic {euler}, expected {want}"));
    }
    Ok(())
}

fn power_sum(n: u32) -> Result<(), String> {
    let (x, y) = (Poly::var(VarId::x(1)), Poly::var(VarId::x(2)));
    let map = BTreeMap::from([(VarId::y(1), &x + &y), (VarId::z(1), &x * &y)]);
    let lhs = power_sum_expand(n).substitute(&map);
    if lhs != x.pow(n + 1) + y.pow(n + 1) {
        return Err(format!("f(x + y, xy) = {lhs}"));
    }
    Ok(())
}

fn primitive(kind: PieceKind, n: u32, params: &[Param]) -> Result<KoszulMf, String> {
    build_primitive(kind, n, params).map_err(err)
}

fn marker_removal(n: u32) -> Result<(), String> {
    let s = reduce(&diagram(n, "dline d1 d3\ndline d4 d2\nglue d3 d4")?)?;
    let plain = primitive(PieceKind::Dline, n, &[Param::Double(1), Param::Double(2)])?;
    if canonical_form(&only_summand(&s)?) != canonical_form(&plain) {
        return Err("marked double line differs from the plain one".into());
    }
    Ok(())
}

fn trivalent_composition(n: u32) -> Result<(), String> {
    let s = reduce(&diagram(n, "vin x3 x4 d5\nvout d6 x1 x2\nglue d5 d6")?)?;
    let wide = primitive(PieceKind::Wide, n, &[1, 2, 3, 4].map(Param::Single))?;
    if canonical_form(&only_summand(&s)?) != canonical_form(&wide) {
        return Err("composite differs from the wide edge".into());
    }
    Ok(())
}

fn bubble_splitting(n: u32) -> Result<(), String> {
    let s = reduce(&diagram(n, "vin x3 x4 d1\nvout d2 x5 x6\nglue x5 x3\nglue x6 x4")?)?;
    let line = primitive(PieceKind::Dline, n, &[Param::Double(1), Param::Double(2)])?;
    let mut got: Vec<KoszulMf> = s.koszul_summands().map(canonical_form).collect();
    got.sort_by_key(|k| k.shift);
    let want = [canonical_form(&line.shift(-1)), canonical_form(&line.shift(1))];
    if got != want {
        return Err(format!("{} summands, not the shifted double line pair", got.len()));
    }
    Ok(())
}

fn factorization_identity(n: u32) -> Result<(), String> {
    let bodies = [
        "arc x1 x2",
        "wide x1 x2 x3 x4",
        "dline d1 d2",
        "vin x1 x2 d3",
        "vout d3 x1 x2",
        "vin x3 x4 d5\nvout d6 x1 x2\nglue d5 d6",
    ];
    for body in bodies {
        let d = diagram(n, body)?;
        let w = glue(&d).map_err(err)?.to_explicit().verify_factorization().map_err(err)?;
        if w != boundary_potential(&d) {
            return Err(format!("`{}`: potential {w}", body.replace('\n', "; ")));
        }
    }
    Ok(())
}

fn theta_graph(n: u32) -> Result<(), String> {
    let d = diagram(n, "vin x1 x2 d3\nvout d4 x5 x6\nglue d3 d4\nglue x5 x1\nglue x6 x2")?;
    let want = &quantum_integer(n) * &quantum_integer(n - 1);
    let b = bracket(&d).map_err(err)?;
    if b != want {
        return Err(format!("bracket {b}"));
    }
    let euler = graded_homology(&reduce(&d)?).map_err(err)?.euler();
    if euler != want {
        return Err(format!("euler characteristic {euler}"));
    }
    Ok(())
}

fn crossing_objects(n: u32) -> Result<(), String> {
    let ps = [1, 2, 3, 4].map(Param::Single);
    for (sign, positions) in [
        (CrossingSign::Positive, [-1, 0]),
        (CrossingSign::Negative, [0, 1]),
    ] {
        let c = crossing_complex(sign, n, &ps).map_err(err)?;
        let got: Vec<i32> = c.objects.keys().copied().collect();
        if got != positions {
            return Err(format!("{sign:?} crossing at positions {got:?}"));
        }
        let pots: Vec<Poly> = c.objects.values().map(|(_, m)| m.potential()).collect();
        if pots[0] != pots[1] {
            return Err(format!("{sign:?} crossing objects have different potentials"));
        }
    }
    Ok(())
}
