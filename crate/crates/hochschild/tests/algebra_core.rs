use std::sync::Arc;

use hochschild::algebra::catalog::*;
use hochschild::algebra::*;
use hochschild::exactla::{Field, Rationals};
use hochschild::qset::{assemble_lambda, assemble_square, free_rank_one, solve_associativity, QSet, SquareData};
use hochschild::Error;

const Q: Rationals = Rationals;

fn a2() -> FinDimAlgebra<Rationals> {
    linear_path_algebra(&Q, 2).unwrap()
}

#[test]
fn presentations_have_expected_dimensions() {
    assert_eq!(a2().dim(), 3);
    assert_eq!(a2().labels(), &["e_1", "e_2", "a1"]);
    let qe = quantum_exterior(&Q, Q.from_i64(2)).unwrap();
    assert_eq!(qe.dim(), 4);
    assert_eq!(qe.labels(), &["e_s", "a", "b", "ab"]);
    // ba = 2 ab
    let (a, b, ab) = (1, 2, 3);
    assert_eq!(qe.mul_basis(b, a), &vec![(ab as u32, Q.from_i64(2))]);
    let rt = Quiver::from_labels(&["x", "y"], &[("a", "x", "y"), ("b", "y", "x")]).unwrap();
    assert_eq!(monomial_algebra(&Q, rt, &["ab", "ba"], 4).unwrap().dim(), 4);
    assert_eq!(truncated_polynomial(&Q, 3).unwrap().dim(), 3);
    assert_eq!(linear_path_algebra(&Q, 4).unwrap().dim(), 10);
}

#[test]
fn acyclic_path_algebra_counts_paths() {
    // 1 -> 2 -> 3 plus 1 -> 3: paths are 3 vertices, 3 arrows, 1 path of length 2
    let q = Quiver::from_labels(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")]).unwrap();
    assert_eq!(monomial_algebra(&Q, q, &[], 5).unwrap().dim(), 7);
}

#[test]
fn cyclic_without_relations_is_infinite() {
    let q = Quiver::from_labels(&["o"], &[("t", "o", "o")]).unwrap();
    let err = monomial_algebra(&Q, q, &[], 6).unwrap_err();
    assert_eq!(err, Error::InfiniteDimensional(6));
}

#[test]
fn non_confluent_rules_are_rejected() {
    // bba -> 0 and b(ba) -> bab -> abb, which is a normal form
    let quiver = Quiver::from_labels(&["s"], &[("a", "s", "s"), ("b", "s", "s")]).unwrap();
    let w = |s: &str| parse_word(&quiver, s).unwrap();
    let rules = vec![
        Rule { lead: w("ba"), replacement: vec![(Q.one(), w("ab"))] },
        Rule { lead: w("bba"), replacement: vec![] },
        Rule { lead: w("aaa"), replacement: vec![] },
        Rule { lead: w("bbb"), replacement: vec![] },
    ];
    let p = RewritePresentation::new(&Q, quiver, rules, 10).unwrap();
    assert!(matches!(p.to_algebra(), Err(Error::NotConfluent(_))));
}

#[test]
fn non_associative_constants_are_rejected() {
    // x * 1 = 0 breaks the unit
    let one = Q.one();
    let table = vec![vec![(0, one.clone())], vec![(1, one.clone())], vec![], vec![(1, one.clone())]];
    let err = FinDimAlgebra::from_structure_constants(
        &Q,
        vec!["1".into(), "x".into()],
        table,
        vec![(0, one.clone())],
        vec![],
        vec![],
    )
    .unwrap_err();
    assert!(matches!(err, Error::NotAssociative(..) | Error::BadUnit(_)));
    let bad_sys = FinDimAlgebra::from_structure_constants(
        &Q,
        vec!["1".into()],
        vec![vec![(0, one.clone())]],
        vec![(0, one.clone())],
        vec![vec![(0, Q.from_i64(2))]],
        vec!["e".into()],
    );
    assert!(matches!(bad_sys, Err(Error::BadSystem(_))));
}

#[test]
fn peirce_quivers() {
    let kk = semisimple(&Q, 2).unwrap();
    assert_eq!(peirce_quiver(&kk).num_arrows(), 0);
    let p = peirce_quiver(&a2());
    assert_eq!(p.num_arrows(), 1);
    assert_eq!((p.arrows()[0].source, p.arrows()[0].target), (0, 1));
    let m2 = matrix_algebra(&Q, 2).unwrap();
    let p = peirce_quiver(&m2);
    assert_eq!(p.num_arrows(), 2);
    assert!(p.is_simply_laced());
}

#[test]
fn free_corner_dimensions() {
    let b = Arc::new(a2());
    let k = Arc::new(ground_field(&Q));
    let m = free_corner_bimodule(&b, "1", "1", &k).unwrap();
    assert_eq!(m.dim(), 2);
    let m = free_corner_bimodule(&b, "2", "1", &k).unwrap();
    assert_eq!(m.dim(), 1);
    assert!(matches!(free_corner_bimodule(&b, "z", "1", &k), Err(Error::NotInSystem(_))));
}

#[test]
fn hom_bimodule_dimensions() {
    let k = Arc::new(ground_field(&Q));
    assert_eq!(hom_bimodule(&Bimodule::regular(k.clone()), &Bimodule::regular(k.clone())).unwrap().dim(), 1);
    assert_eq!(hom_bimodule(&Bimodule::regular(k.clone()), &Bimodule::zero(k.clone(), k.clone())).unwrap().dim(), 0);
    let d = Arc::new(truncated_polynomial(&Q, 2).unwrap());
    let free = free_rank_one(&d, &d).unwrap();
    assert_eq!(hom_bimodule(&free, &free).unwrap().dim(), 4);
    // End of the regular bimodule is the center
    let qe = Arc::new(quantum_exterior(&Q, Q.from_i64(2)).unwrap());
    let reg = Bimodule::regular(qe.clone());
    assert_eq!(hom_bimodule(&reg, &reg).unwrap().dim(), qe.center().dim());
}

#[test]
fn tensor_over_matches_plain_construction() {
    let a = Arc::new(a2());
    let b = Arc::new(truncated_polynomial(&Q, 2).unwrap());
    let qe = Arc::new(quantum_exterior(&Q, Q.from_i64(2)).unwrap());
    let cases = vec![
        (free_rank_one(&b, &a).unwrap(), free_rank_one(&a, &b).unwrap()),
        (free_corner_bimodule(&b, "o", "1", &a).unwrap(), free_corner_bimodule(&a, "2", "o", &b).unwrap()),
        (free_corner_bimodule(&b, "o", "2", &a).unwrap(), free_corner_bimodule(&a, "1", "o", &b).unwrap()),
        (Bimodule::regular(qe.clone()), Bimodule::regular(qe.clone())),
        (Bimodule::regular(a.clone()), free_rank_one(&a, &b).unwrap()),
    ];
    for (m, n) in cases {
        let t = tensor_over(&m, &n).unwrap();
        assert_eq!(t.module.dim(), tensor_dim_plain(&m, &n).unwrap());
    }
    // (Bf (x) eA) (x)_A (Ae' (x) f'B) has dim Bf * eAe' * f'B; e_1 A e_2 = 0 since the arrow is 1 -> 2
    for (e, e2, expected) in [("1", "2", 0), ("1", "1", 4), ("2", "1", 4), ("2", "2", 4)] {
        let m = free_corner_bimodule(&b, "o", e, &a).unwrap();
        let n = free_corner_bimodule(&a, e2, "o", &b).unwrap();
        assert_eq!(tensor_over(&m, &n).unwrap().module.dim(), expected);
    }
}

#[test]
fn lambda_of_qsets() {
    let k = Arc::new(ground_field(&Q));
    let reg = Bimodule::regular(k.clone());
    let one_point = QSet::new(
        Quiver::from_labels(&["x", "y"], &[("a", "x", "y")]).unwrap(),
        vec![k.clone(), k.clone()],
        vec![reg.clone()],
    )
    .unwrap();
    let l = assemble_lambda(&one_point).unwrap();
    assert_eq!(l.algebra.dim(), 3);
    assert_eq!(peirce_quiver(&l.algebra).num_arrows(), 1);
    let rt = QSet::new(
        Quiver::from_labels(&["x", "y"], &[("a", "x", "y"), ("b", "y", "x")]).unwrap(),
        vec![k.clone(), k.clone()],
        vec![reg.clone(), reg.clone()],
    )
    .unwrap();
    assert_eq!(assemble_lambda(&rt).unwrap().algebra.dim(), 4);
}

#[test]
fn associativity_solver() {
    let k = Arc::new(ground_field(&Q));
    let reg = Bimodule::regular(k.clone());
    let sol = solve_associativity(&k, &k, &reg, &reg).unwrap();
    assert_eq!(sol.dim(), 1);
    let sq = SquareData::null(k.clone(), k.clone(), reg.clone(), reg.clone()).unwrap();
    let full = sq.with_maps(&sol.basis()[0]).unwrap();
    let m2 = assemble_square(&full).unwrap();
    assert_eq!(m2.dim(), 4);
    assert_eq!(m2.center().dim(), 1);
    let d = Arc::new(truncated_polynomial(&Q, 2).unwrap());
    let m = free_rank_one(&d, &k).unwrap();
    let n = free_rank_one(&k, &d).unwrap();
    assert_eq!(solve_associativity(&k, &d, &m, &n).unwrap().dim(), 0);
}
