use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hochschild::algebra::catalog::*;
use hochschild::algebra::{ground_field, hom_bimodule, Bimodule, FinDimAlgebra, Quiver};
use hochschild::complex::{bar_hochschild, relative_complex, DEFAULT_BUDGET};
use hochschild::exactla::sparse::normalize;
use hochschild::exactla::{Field, Rationals, SparseVec};
use hochschild::instances::*;
use hochschild::qset::{assemble_lambda, free_rank_one, QSet, SquareData};
use hochschild::structure::*;
use hochschild::trajectory::{QPath, Trajectory};
use hochschild::Error;

const Q: Rationals = Rationals;
type E = <Rationals as Field>::Elem;

fn small_sets() -> Vec<(&'static str, QSet<Rationals>)> {
    vec![
        ("point", single_vertex(ground_field(&Q)).unwrap()),
        ("dual numbers", single_vertex(truncated_polynomial(&Q, 2).unwrap()).unwrap()),
        ("one point", one_point_extension(&Q).unwrap()),
        ("round trip", round_trip(&Q).unwrap()),
        ("free square", free_square_a2_k(&Q).unwrap().qset().unwrap()),
        ("dual over a2", dual_extension()),
    ]
}

/// One point extension of the dual numbers by the free bimodule.
fn dual_extension() -> QSet<Rationals> {
    let k = Arc::new(ground_field(&Q));
    let d = Arc::new(truncated_polynomial(&Q, 2).unwrap());
    let q = Quiver::from_labels(&["x", "y"], &[("a", "x", "y")]).unwrap();
    QSet::new(q, vec![k.clone(), d.clone()], vec![free_rank_one(&d, &k).unwrap()]).unwrap()
}

fn random_cochain(rng: &mut ChaCha8Rng, dim: usize) -> SparseVec<E> {
    if dim == 0 {
        return Vec::new();
    }
    let terms = rng.gen_range(1..=6);
    let entries = (0..terms).map(|_| (rng.gen_range(0..dim) as u32, Q.from_i64(rng.gen_range(-3..=3)))).collect();
    normalize(&Q, entries)
}

#[test]
fn cup_examples() {
    let delta = round_trip(&Q).unwrap();
    let j = relative_complex(&delta, 2).unwrap();
    let q = delta.quiver();
    let block = |n: usize, t: Trajectory| j.layout.find(n, &t).unwrap().clone();
    let a = QPath::from_arrows(q, vec![0]).unwrap();
    let unit = unit_on_arrows(&j).unwrap();
    // 1_{M_a} ⌣ 1_{M_a}: a after a does not concatenate
    let only_a: SparseVec<E> = {
        let b = block(1, Trajectory::new(a.clone(), vec![0, 0]));
        unit.iter().filter(|(i, _)| (*i as usize) >= b.offset && (*i as usize) < b.offset + b.dim).cloned().collect()
    };
    assert!(cup(&j, 1, &only_a, 1, &only_a).unwrap().is_empty());
    // non-cycles that concatenate to the cycle ba still multiply to zero
    assert!(cup(&j, 1, &unit, 1, &unit).unwrap().is_empty());

    // the unit of A_x in degree 0 is a left and right unit on cochains along cycles at x
    let delta = single_vertex(quantum_exterior(&Q, Q.from_i64(2)).unwrap()).unwrap();
    let j = relative_complex(&delta, 2).unwrap();
    let one: SparseVec<E> = j.lambda.algebra.unit().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 0..=2 {
        let f = random_cochain(&mut rng, j.complex.dim(n));
        assert_eq!(cup(&j, 0, &one, n, &f).unwrap(), f);
        assert_eq!(cup(&j, n, &f, 0, &one).unwrap(), f);
    }
    assert!(matches!(cup(&j, 2, &[], 2, &[]), Err(Error::Input(_))));
}

#[test]
fn graded_leibniz_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (name, delta) in small_sets() {
        let j = relative_complex(&delta, 3).unwrap();
        let top = j.complex.top();
        for _ in 0..100 {
            let p = rng.gen_range(0..top);
            let q = rng.gen_range(0..top - p);
            let f = random_cochain(&mut rng, j.complex.dim(p));
            let g = random_cochain(&mut rng, j.complex.dim(q));
            assert!(leibniz_defect(&j, p, &f, q, &g).unwrap().is_empty(), "{} ({}, {})", name, p, q);
        }
    }
}

#[test]
fn connecting_maps_agree() {
    let mut sets = small_sets();
    sets.push(("quantum exterior", single_vertex(quantum_exterior(&Q, Q.from_i64(2)).unwrap()).unwrap()));
    for (name, delta) in sets {
        let seq = CohomologySequence::new(&delta, 4).unwrap();
        for n in 0..=3 {
            let snake = connecting_snake(&seq, n).unwrap();
            let nabla = seq.connecting_nabla(n).unwrap();
            assert_eq!(snake, nabla, "{} degree {}", name, n);
        }
    }
}

#[test]
fn connecting_map_examples() {
    // no arrows: nothing to connect
    let seq = CohomologySequence::new(&single_vertex(truncated_polynomial(&Q, 2).unwrap()).unwrap(), 3).unwrap();
    for n in 0..3 {
        assert_eq!(seq.noncycle.dims[n + 1], 0);
        assert!(connecting_snake(&seq, n).unwrap().is_zero());
    }

    // triangular 2x2: the centers are (λ, μ) and ∇ sends them to (λ - μ) 1_M
    let delta = one_point_extension(&Q).unwrap();
    let seq = CohomologySequence::new(&delta, 2).unwrap();
    assert_eq!(seq.cycle.dims[0], 2);
    let unit_m = {
        let j = &seq.relative;
        seq.restrict_noncycle(1, &unit_on_arrows(j).unwrap()).unwrap()
    };
    let at = |v: usize| -> SparseVec<E> {
        let b = seq
            .split
            .cycle
            .labels(0)
            .iter()
            .find(|l| l.label == format!("{}^0", delta.quiver().vertices()[v]))
            .unwrap()
            .clone();
        vec![(b.offset as u32, Q.one())]
    };
    let (x, y) = (at(0), at(1));
    assert_eq!(connecting_nabla_formula(&seq, 0, &x).unwrap(), unit_m);
    let minus: SparseVec<E> = unit_m.iter().map(|(i, c)| (*i, Q.neg(c))).collect();
    assert_eq!(connecting_nabla_formula(&seq, 0, &y).unwrap(), minus);
    let mut sum = x.clone();
    sum.extend(y.clone());
    assert!(connecting_nabla_formula(&seq, 0, &sum).unwrap().is_empty());
    // a cochain that is not a cocycle of the quotient is refused
    let qe = single_vertex(quantum_exterior(&Q, Q.from_i64(2)).unwrap()).unwrap();
    let seq = CohomologySequence::new(&qe, 2).unwrap();
    let not_closed = vec![(1u32, Q.one())];
    assert!(!seq.split.cycle.apply(0, &not_closed).is_empty());
    assert!(matches!(seq.nabla(0, &not_closed), Err(Error::NotACocycle)));
}

#[test]
fn nabla_raises_path_length_by_one() {
    for (name, delta) in small_sets() {
        let seq = CohomologySequence::new(&delta, 3).unwrap();
        let q = delta.quiver();
        for n in 0..3 {
            let reps = seq.cycle.representatives[n].basis();
            // split each representative along its paths: every piece is a cocycle of the quotient
            for r in reps {
                let mut by_path: std::collections::BTreeMap<QPath, SparseVec<E>> = Default::default();
                for (i, c) in r {
                    let full = seq.split.cycle_index[n][*i as usize];
                    let path = seq.relative.layout.block_of(n, full).trajectory.path.clone();
                    by_path.entry(path).or_default().push((*i, c.clone()));
                }
                for (path, piece) in by_path {
                    let out = seq.nabla(n, &piece).unwrap();
                    for (i, _) in &out {
                        let full = seq.split.noncycle_index[n + 1][*i as usize];
                        let t = &seq.relative.layout.block_of(n + 1, full).trajectory;
                        assert_eq!(t.path.len(), path.len() + 1, "{} {}", name, t.render(q));
                    }
                }
            }
        }
    }
}

#[test]
fn one_point_connecting_map_is_right_multiplication() {
    // with nothing at the source, 1_M ⌣ f vanishes
    let delta = dual_extension();
    let seq = CohomologySequence::new(&delta, 3).unwrap();
    let j = &seq.relative;
    let unit = unit_on_arrows(j).unwrap();
    for n in 1..3 {
        for r in seq.cycle.representatives[n].basis() {
            let lifted = seq.lift_cycle(n, r);
            // representatives at the source vertex are multiples of its unit in degree 0 only
            assert!(cup(j, 1, &unit, n, &lifted).unwrap().is_empty());
            let sign = if n % 2 == 1 { Q.one() } else { Q.from_i64(-1) };
            let right: SparseVec<E> = cup(j, n, &lifted, 1, &unit).unwrap().iter().map(|(i, c)| (*i, Q.mul(&sign, c))).collect();
            assert_eq!(seq.nabla(n, r).unwrap(), seq.restrict_noncycle(n + 1, &right).unwrap());
        }
    }
}

#[test]
fn one_point_connecting_map_is_multiplicative() {
    let delta = dual_extension();
    let seq = CohomologySequence::new(&delta, 4).unwrap();
    let j = &seq.relative;
    let unit = unit_on_arrows(j).unwrap();
    let phi = |n: usize, f: &SparseVec<E>| cup(j, n, f, 1, &unit).unwrap();
    // classes of the algebra at the target vertex y
    let at_target = |n: usize| -> Vec<SparseVec<E>> {
        seq.cycle.representatives[n]
            .basis()
            .iter()
            .map(|r| seq.lift_cycle(n, r))
            .filter(|v| v.iter().all(|(i, _)| j.layout.block_of(n, *i as usize).trajectory.path.source == 1))
            .collect()
    };
    let mut checked = 0;
    for p in 1..=2 {
        for q in 1..=2 {
            for f in at_target(p) {
                for g in at_target(q) {
                    let product = phi(p + q, &cup(j, p, &f, q, &g).unwrap());
                    let composed = compose_along_arrow(j, 0, p, &phi(p, &f), q, &phi(q, &g)).unwrap();
                    assert_eq!(product, composed);
                    checked += 1;
                }
            }
        }
    }
    assert!(checked >= 4);
}

#[test]
fn long_exact_sequences() {
    // the one point extension k[k]: 0 -> 1 -> 2 -> 1 -> 0 -> 0
    let les = long_exact_sequence(&one_point_extension(&Q).unwrap(), 3).unwrap();
    let d0 = &les.degrees[0];
    let d1 = &les.degrees[1];
    assert_eq!(d0.dims, [0, 1, 2]);
    assert_eq!((d1.dims[0], d1.dims[1], d1.dims[2]), (1, 0, 0));
    assert!(les.is_exact());
    assert_eq!(d1.noncycle_paths, [("a".to_string(), 1)]);
    assert_eq!(d0.cycle_paths, [("x".to_string(), 1), ("y".to_string(), 1)]);

    // a single vertex: the projection is an isomorphism
    let les = long_exact_sequence(&single_vertex(quantum_exterior(&Q, Q.from_i64(2)).unwrap()).unwrap(), 3).unwrap();
    for d in &les.degrees {
        assert_eq!(d.dims[0], 0);
        assert_eq!(d.dims[1], d.dims[2]);
        assert_eq!(d.projection.ncols(), d.dims[1]);
        assert_eq!(hochschild::exactla::rank(&Q, &d.projection), d.dims[1]);
    }

    for (name, delta) in small_sets() {
        let les = long_exact_sequence(&delta, 4).unwrap();
        assert!(les.is_exact(), "{}", name);
        let lambda = assemble_lambda(&delta).unwrap();
        let bar = bar_hochschild(&lambda.algebra, 4, DEFAULT_BUDGET).unwrap();
        let hh: Vec<usize> = les.degrees.iter().map(|d| d.dims[1]).collect();
        assert_eq!(hh, bar, "{}", name);
        for d in &les.degrees {
            let sum = |ps: &[(String, usize)]| ps.iter().map(|p| p.1).sum::<usize>();
            assert_eq!(sum(&d.noncycle_paths), d.dims[0]);
            assert_eq!(sum(&d.cycle_paths), d.dims[2]);
        }
    }
}

#[test]
fn cup_products_on_classes() {
    for (name, delta) in small_sets() {
        let v = cup_annihilation_check(&delta, 3).unwrap();
        assert!(v.holds(), "{}: {:?}", name, v);
    }
    let v = cup_annihilation_check(&round_trip(&Q).unwrap(), 2).unwrap();
    assert!(v.noncycle_pairs >= 1);
}

fn square(a: Arc<FinDimAlgebra<Rationals>>, b: Arc<FinDimAlgebra<Rationals>>) -> SquareData<Rationals> {
    let m = free_rank_one(&b, &a).unwrap();
    let n = free_rank_one(&a, &b).unwrap();
    SquareData::null(a, b, m, n).unwrap()
}

#[test]
fn five_term_sequences() {
    let sq = free_square_a2_k(&Q).unwrap();
    let t = five_term(&sq, 0, 2).unwrap();
    // the center is the diagonal scalars only
    assert_eq!(t.dims, [1, 2, 6, 5, 0]);
    assert_eq!(t.alternating_sum(), 0);
    let k = Arc::new(ground_field(&Q));
    let t = five_term(&square(k.clone(), k.clone()), 0, 2).unwrap();
    assert_eq!(t.dims, [1, 2, 2, 1, 0]);
    let t = five_term(&sq, 1, 2).unwrap();
    assert_eq!(t.alternating_sum(), 0);
    assert_eq!(t.dims[2], 2 * 9);

    // corners that are not projective are refused
    let d = Arc::new(truncated_polynomial(&Q, 2).unwrap());
    let simple = |l: &Arc<FinDimAlgebra<Rationals>>, r: &Arc<FinDimAlgebra<Rationals>>| {
        let keep = |i: usize| if i == 0 { vec![(0, Q.one())] } else { vec![] };
        Bimodule::from_fn(l.clone(), r.clone(), 1, |i, _| keep(i), |_, j| keep(j)).unwrap()
    };
    let bad = SquareData::null(d.clone(), k.clone(), simple(&k, &d), simple(&d, &k)).unwrap();
    assert!(matches!(five_term(&bad, 0, 2), Err(Error::NotProjective(_))));
}

#[test]
fn null_square_closed_forms() {
    let sq = free_square_a2_k(&Q).unwrap();
    let hh = null_square_hh(&sq, 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(hh.dims, [1, 5, 0, 12, 0, 36]);
    assert_eq!(free_rank_one_dims(3, 1, &hh.diagonal_a, &hh.diagonal_b, 5), hh.dims);
    for level in &hh.levels[1..] {
        assert_eq!(level.kernel(), 0);
    }
    // the restricted map and the snake have the same rank
    let seq = CohomologySequence::new(&sq.qset().unwrap(), 4).unwrap();
    for m in 0..=1 {
        let snake = connecting_snake(&seq, 2 * m).unwrap();
        assert_eq!(hochschild::exactla::rank(&Q, &snake), hh.levels[m].rank);
    }
    let lambda = assemble_lambda(&sq.qset().unwrap()).unwrap();
    assert_eq!(bar_hochschild(&lambda.algebra, 3, DEFAULT_BUDGET).unwrap(), hh.dims[..4]);

    // Hom spaces of the restricted map are the Hom spaces of tensor powers
    let (nm, _) = sq.tensors();
    let a_reg = Bimodule::regular(sq.a.clone());
    let b_reg = Bimodule::regular(sq.b.clone());
    let (_, mn) = sq.tensors();
    let expect = hom_bimodule(&nm.module, &a_reg).unwrap().dim() + hom_bimodule(&mn.module, &b_reg).unwrap().dim();
    assert_eq!(hh.levels[1].domain, expect);

    // A = B = k is the exception
    let k = Arc::new(ground_field(&Q));
    let hh = null_square_hh(&square(k.clone(), k), 1, DEFAULT_BUDGET).unwrap();
    assert!(hh.levels[1].kernel() > 0);
    let dual = Arc::new(truncated_polynomial(&Q, 2).unwrap());
    let hh = null_square_hh(&square(dual, Arc::new(linear_path_algebra(&Q, 2).unwrap())), 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(hh.levels[1].kernel(), 0);
}

#[test]
fn efficient_cycle_examples() {
    let one = Quiver::from_labels(&["e"], &[]).unwrap();
    let other = Quiver::from_labels(&["f"], &[]).unwrap();
    let pq = PeirceSquareQuiver::new(one.clone(), other.clone(), vec![(0, 0, 1)], vec![(0, 0, 1)]).unwrap();
    let c = efficient_cycles(&pq).unwrap();
    assert_eq!(c.len(), 2);
    let pq = PeirceSquareQuiver::new(one, other, vec![(0, 0, 2)], vec![]).unwrap();
    assert!(efficient_cycles(&pq).is_none());

    // a horizontal arrow on each floor between the verticals
    let upper = Quiver::from_labels(&["e1", "e2"], &[("p", "e1", "e2")]).unwrap();
    let lower = Quiver::from_labels(&["f1", "f2"], &[("r", "f1", "f2")]).unwrap();
    let pq = PeirceSquareQuiver::new(upper.clone(), lower.clone(), vec![(1, 0, 1)], vec![(1, 0, 1)]).unwrap();
    let c = efficient_cycles(&pq).unwrap();
    let names: Vec<String> = c.iter().map(|a| pq.render(*a)).collect();
    assert_eq!(names, ["e2↓f1", "r", "f2↑e1", "p"]);
    // two horizontal arrows in a row are not allowed
    let upper2 = Quiver::from_labels(&["e1", "e2", "e3"], &[("p", "e1", "e2"), ("s", "e2", "e3")]).unwrap();
    let pq = PeirceSquareQuiver::new(upper2, lower, vec![(2, 0, 1)], vec![(0, 0, 1)]).unwrap();
    assert!(efficient_cycles(&pq).is_none());
    let sq = realize(&Q, &pq).unwrap();
    let (_, m) = square_bimodule(&sq).unwrap();
    assert!(tensor_nilpotence(&m, nilpotence_bound(&pq)).unwrap().is_some());
}

#[test]
fn nilpotence_examples() {
    // round trip with N = 0
    let k = Arc::new(ground_field(&Q));
    let a2 = Arc::new(linear_path_algebra(&Q, 2).unwrap());
    let sq = SquareData::null(a2.clone(), k.clone(), free_rank_one(&k, &a2).unwrap(), Bimodule::zero(a2.clone(), k.clone())).unwrap();
    let (_, m) = square_bimodule(&sq).unwrap();
    assert_eq!(tensor_nilpotence(&m, 5).unwrap(), Some(2));
    // free rank one never vanishes
    let (_, m) = square_bimodule(&free_square_a2_k(&Q).unwrap()).unwrap();
    assert_eq!(tensor_nilpotence(&m, 4).unwrap(), None);
    assert_eq!(tensor_power_dims(&m, 3).unwrap(), [6, 12, 18]);

    // the composite algebra: no efficient cycles and M^3 = 0
    let sq = composite_square(&Q, Q.from_i64(2)).unwrap();
    let (pq, sq2) = square_from_peirce(&sq.a, &sq.b, vec![(0, 1, 1)], vec![(0, 0, 1)]).unwrap();
    assert_eq!(sq2.m, sq.m);
    assert_eq!(sq2.n, sq.n);
    assert!(efficient_cycles(&pq).is_none());
    let (_, m) = square_bimodule(&sq).unwrap();
    assert_eq!(tensor_nilpotence(&m, 5).unwrap(), Some(3));
}
