use moy_mf::diagram::{glue, parse_diagram};
use moy_mf::{auto_reduce, canonical_form, graded_homology, jacobi_algebra, quantum_integer, Summand};

fn reduce_text(text: &str) -> moy_mf::MfSum {
    let d = parse_diagram(text).unwrap();
    auto_reduce(&glue(&d).unwrap()).0
}

fn only_koszul(s: &moy_mf::MfSum) -> Vec<moy_mf::KoszulMf> {
    s.iter()
        .map(|x| match x {
            Summand::Koszul(k) => canonical_form(k),
            Summand::Explicit(_) => panic!("explicit summand"),
        })
        .collect()
}

#[test]
fn circle_reduces_to_truncated_polynomial_ring() {
    for n in 2..=6u32 {
        let s = reduce_text(&format!("n {n}\narc x1 x2\nglue x2 x1"));
        let ks = only_koszul(&s);
        assert_eq!(ks.len(), 1);
        let k = &ks[0];
        assert!(k.rows.is_empty());
        assert_eq!(k.shift, 1 - n as i64);
        assert!(k.parity);
        let h = graded_homology(&s).unwrap();
        assert_eq!(h.euler(), quantum_integer(n));
    }
}

#[test]
fn double_circle_reduces_to_jacobi_algebra() {
    for n in 3..=6u32 {
        let s = reduce_text(&format!("n {n}\ndline d1 d2\nglue d1 d2"));
        let ks = only_koszul(&s);
        assert_eq!(ks.len(), 1);
        let k = &ks[0];
        assert!(k.rows.is_empty(), "{k}");
        assert_eq!(k.shift, 4 - 2 * n as i64);
        assert!(!k.parity);
        let j = jacobi_algebra(n).unwrap();
        assert_eq!(
            k.base.graded_dimension(0).unwrap(),
            j.graded_dimension(0).unwrap()
        );
        let h = graded_homology(&s).unwrap();
        let want = (&quantum_integer(n) * &quantum_integer(n - 1))
            .exact_div(&quantum_integer(2))
            .unwrap();
        assert_eq!(h.euler(), want);
    }
}

#[test]
fn vertex_pair_becomes_wide_edge() {
    for n in 3..=5u32 {
        let s = reduce_text(&format!(
            "n {n}\nvin x3 x4 d5\nvout d6 x1 x2\nglue d5 d6"
        ));
        let w = reduce_text(&format!("n {n}\nwide x1 x2 x3 x4"));
        assert_eq!(only_koszul(&s), only_koszul(&w), "n = {n}");
    }
}

#[test]
fn bubble_splits_in_two() {
    for n in 3..=5u32 {
        let s = reduce_text(&format!(
            "n {n}\nvin x3 x4 d1\nvout d2 x5 x6\nglue x5 x3\nglue x6 x4"
        ));
        let ks = only_koszul(&s);
        let line = only_koszul(&reduce_text(&format!("n {n}\ndline d1 d2")));
        assert_eq!(ks.len(), 2, "{s:?}");
        assert_eq!(ks[0], line[0].shift(-1));
        assert_eq!(ks[1], line[0].shift(1));
    }
}

#[test]
fn marker_on_double_line_disappears() {
    for n in 3..=5u32 {
        let s = reduce_text(&format!("n {n}\ndline d1 d3\ndline d4 d2\nglue d4 d3"));
        let line = reduce_text(&format!("n {n}\ndline d1 d2"));
        assert_eq!(only_koszul(&s), only_koszul(&line));
    }
}

