use std::sync::Arc;

use hochschild::algebra::catalog::{linear_path_algebra, truncated_polynomial};
use hochschild::algebra::{ground_field, Bimodule, Quiver};
use hochschild::exactla::{Field, Rationals};
use hochschild::instances::{composite_square, one_point_extension, round_trip, toupie_square};
use hochschild::qset::{assemble_lambda, free_rank_one, QSet};
use hochschild::trajectory::*;

const Q: Rationals = Rationals;

fn a2() -> Quiver {
    Quiver::from_labels(&["x", "y"], &[("a", "x", "y")]).unwrap()
}

fn rt() -> Quiver {
    Quiver::from_labels(&["x", "y"], &[("a", "x", "y"), ("b", "y", "x")]).unwrap()
}

fn names(q: &Quiver, ws: &[QPath]) -> Vec<String> {
    ws.iter()
        .map(|w| if w.is_empty() { q.vertices()[w.source].clone() } else { w.render(q) })
        .collect()
}

#[test]
fn paths_split_into_cycles_and_noncycles() {
    let q = a2();
    let (c, d) = enumerate_paths(&q, 3);
    assert_eq!(names(&q, &c), ["x", "y"]);
    assert_eq!(names(&q, &d), ["a"]);
    let q = rt();
    let (c, d) = enumerate_paths(&q, 2);
    assert_eq!(c.len(), 4);
    assert_eq!(d.len(), 2);
    assert!(c.iter().all(|w| w.is_cycle()));
    assert_eq!(c.iter().filter(|w| w.len() == 2).count(), 2);
    let bare = Quiver::from_labels(&["p", "q"], &[]).unwrap();
    let (c, d) = enumerate_paths(&bare, 5);
    assert_eq!(c.len(), 2);
    assert!(d.is_empty());
}

#[test]
fn trajectory_counts_are_binomial() {
    let q = rt();
    let (c, d) = enumerate_paths(&q, 4);
    let a = &d[0];
    assert_eq!(trajectories(a, 1).len(), 1);
    assert_eq!(trajectories(a, 2).len(), 2);
    assert!(trajectories(a, 0).is_empty());
    for w in c.iter().chain(&d) {
        let only = trajectories(w, w.len());
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].total_waiting_time(), 0);
        for n in 0..=8 {
            // brute force: every waiting vector with entries up to n
            let slots = w.len() + 1;
            let mut brute = 0;
            let mut v = vec![0usize; slots];
            loop {
                if w.len() + v.iter().sum::<usize>() == n {
                    brute += 1;
                }
                let mut k = 0;
                while k < slots && v[k] == n {
                    v[k] = 0;
                    k += 1;
                }
                if k == slots {
                    break;
                }
                v[k] += 1;
            }
            let ts = trajectories(w, n);
            assert_eq!(ts.len(), brute);
            assert_eq!(ts.len(), binomial(n, w.len()));
            assert!(ts.windows(2).all(|p| p[0].waits < p[1].waits));
            assert!(ts.iter().all(|t| t.duration() == n));
        }
    }
}

#[test]
fn successor_examples() {
    let q = a2();
    let x = QPath::trivial(0);
    let tau = Trajectory::new(x, vec![3]);
    let s = successors(&q, &tau);
    assert_eq!((s.waiting.len(), s.extended.len(), s.inserted.len()), (1, 1, 0));

    let q = rt();
    let a = QPath::from_arrows(&q, vec![0]).unwrap();
    let tau = trajectories(&a, 1).remove(0);
    let s = successors(&q, &tau);
    assert_eq!((s.waiting.len(), s.extended.len(), s.inserted.len()), (2, 2, 0));

    // waiting at x next to the 2-cycle through y
    let tau = Trajectory::new(QPath::trivial(0), vec![2]);
    let s = successors(&q, &tau);
    assert_eq!(s.inserted.len(), 2);
    assert!(s.inserted.iter().all(|(t, _)| t.path.len() == 2 && t.path.is_cycle()));
}

#[test]
fn successor_sets_are_disjoint_and_one_longer() {
    for q in [a2(), rt(), hochschild::instances::composite_quiver().unwrap()] {
        let (c, d) = enumerate_paths(&q, 3);
        for w in c.iter().chain(&d) {
            for n in w.len()..=4 {
                for tau in trajectories(w, n) {
                    let s = successors(&q, &tau);
                    assert_eq!(s.waiting.len(), w.len() + 1);
                    let all: Vec<&Trajectory> = s.all().collect();
                    let set: std::collections::HashSet<&Trajectory> = all.iter().copied().collect();
                    assert_eq!(all.len(), set.len());
                    assert!(all.iter().all(|t| t.duration() == n + 1));
                }
            }
        }
    }
}

#[test]
fn evaluation_dimensions() {
    let k = Arc::new(ground_field(&Q));
    let ax = Arc::new(truncated_polynomial(&Q, 2).unwrap());
    let ay = Arc::new(linear_path_algebra(&Q, 2).unwrap());
    let m = free_rank_one(&ay, &ax).unwrap();
    assert_eq!(m.dim(), 6);
    let delta = QSet::new(a2(), vec![ax.clone(), ay.clone()], vec![m]).unwrap();
    let a = QPath::from_arrows(delta.quiver(), vec![0]).unwrap();
    let tau = Trajectory::new(a, vec![1, 1]);
    let (dim, factors) = evaluate(&tau, &delta);
    assert_eq!(factors, [3, 6, 2]);
    assert_eq!(dim, 36);

    let small = QSet::new(a2(), vec![k.clone(), k.clone()], vec![Bimodule::regular(k)]).unwrap();
    let vertex = Trajectory::new(QPath::trivial(0), vec![4]);
    assert_eq!(evaluate(&vertex, &small).0, 1);
    let a = QPath::from_arrows(small.quiver(), vec![0]).unwrap();
    assert_eq!(evaluate(&trajectories(&a, 1)[0], &small).0, 1);
}

/// Entry sum of the n-th power of the matrix of corner dimensions.
fn balanced_power_dim<F: Field>(delta: &QSet<F>, n: usize) -> usize {
    let lambda = assemble_lambda(delta).unwrap();
    let alg = &lambda.algebra;
    let v = alg.system().len();
    let corner: Vec<Vec<usize>> = (0..v)
        .map(|y| (0..v).map(|x| alg.corner_space(&alg.system()[y], &alg.system()[x]).dim()).collect())
        .collect();
    let mut row = vec![1usize; v];
    for _ in 0..n {
        row = (0..v).map(|x| (0..v).map(|y| row[y] * corner[y][x]).sum()).collect();
    }
    row.iter().sum()
}

#[test]
fn trajectories_decompose_tensor_powers() {
    let q2 = Q.from_i64(2);
    let sets = vec![
        one_point_extension(&Q).unwrap(),
        round_trip(&Q).unwrap(),
        composite_square(&Q, q2).unwrap().qset().unwrap(),
        toupie_square(&Q).unwrap().qset().unwrap(),
    ];
    for delta in &sets {
        let q = delta.quiver();
        for n in 0..=4 {
            let (c, d) = enumerate_paths(q, n);
            let total: usize = c.iter().chain(&d).flat_map(|w| trajectories(w, n)).map(|t| evaluate(&t, delta).0).sum();
            assert_eq!(total, balanced_power_dim(delta, n), "degree {}", n);
        }
    }
}
