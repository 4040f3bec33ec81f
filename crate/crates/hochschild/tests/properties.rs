use std::sync::Arc;

use proptest::prelude::*;

use hochschild::algebra::catalog::*;
use hochschild::algebra::{ground_field, peirce_quiver, tensor_over, Bimodule, FinDimAlgebra};
use hochschild::exactla::{homology_dim, kernel_basis, rank, Field, PrimeField, Rationals, SparseMatrix};
use hochschild::qset::{assemble_square, free_rank_one, solve_associativity, SquareData};

const Q: Rationals = Rationals;

fn matrix<F: Field>(f: &F, rows: &[Vec<i64>]) -> SparseMatrix<F::Elem> {
    let dense: Vec<Vec<F::Elem>> = rows.iter().map(|r| r.iter().map(|x| f.from_i64(*x)).collect()).collect();
    SparseMatrix::from_dense(f, &dense)
}

fn entries(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-5i64..=5, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_is_transpose_invariant(rows in entries(6, 6)) {
        let m = matrix(&Q, &rows);
        prop_assert_eq!(rank(&Q, &m), rank(&Q, &m.transpose()));
    }

    #[test]
    fn rank_nullity(rows in entries(6, 7)) {
        let m = matrix(&Q, &rows);
        let k = kernel_basis(&Q, &m);
        prop_assert_eq!(k.dim() + rank(&Q, &m), m.ncols());
        for v in k.basis() {
            prop_assert!(m.mul_vec(&Q, v).is_empty());
        }
    }

    #[test]
    fn exact_two_step_sequences_have_no_homology(rows in entries(6, 5)) {
        // d_in = m, d_out has the image of m as kernel
        let m = matrix(&Q, &rows);
        let left = kernel_basis(&Q, &m.transpose());
        let d_out = SparseMatrix::from_columns(m.nrows(), left.basis().to_vec()).transpose();
        prop_assert_eq!(homology_dim(&Q, &d_out, &m).unwrap(), 0);
    }

    // 5 x 5 minors of entries in [-5, 5] stay below 10^6, so no pivot vanishes mod p
    #[test]
    fn rationals_and_large_prime_agree(rows in entries(5, 5)) {
        let p = PrimeField::new(1_000_003).unwrap();
        prop_assert_eq!(rank(&Q, &matrix(&Q, &rows)), rank(&p, &matrix(&p, &rows)));
        prop_assert_eq!(kernel_basis(&Q, &matrix(&Q, &rows)).dim(), kernel_basis(&p, &matrix(&p, &rows)).dim());
    }
}

fn small_algebras() -> Vec<Arc<FinDimAlgebra<Rationals>>> {
    vec![
        Arc::new(ground_field(&Q)),
        Arc::new(truncated_polynomial(&Q, 2).unwrap()),
        Arc::new(linear_path_algebra(&Q, 2).unwrap()),
        Arc::new(quantum_exterior(&Q, Q.from_i64(2)).unwrap()),
        Arc::new(semisimple(&Q, 2).unwrap()),
        Arc::new(truncated_polynomial(&Q, 3).unwrap()),
    ]
}

fn bimodules(a: &Arc<FinDimAlgebra<Rationals>>) -> Vec<Bimodule<Rationals>> {
    let reg = Bimodule::regular(a.clone());
    let free = free_rank_one(a, a).unwrap();
    vec![reg.clone(), free.clone(), reg.direct_sum(&free).unwrap()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn tensor_products_associate_in_dimension(alg in 0usize..6, i in 0usize..3, j in 0usize..3, k in 0usize..3) {
        let a = &small_algebras()[alg];
        let ms = bimodules(a);
        let (m, n, p) = (&ms[i], &ms[j], &ms[k]);
        let left = tensor_over(&tensor_over(m, n).unwrap().module, p).unwrap().module.dim();
        let right = tensor_over(m, &tensor_over(n, p).unwrap().module).unwrap().module.dim();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn peirce_quivers_are_simply_laced(alg in 0usize..6) {
        let a = &small_algebras()[alg];
        let q = peirce_quiver(a);
        prop_assert!(q.is_simply_laced());
        prop_assert!(q.arrows().iter().all(|x| x.source != x.target));
    }

    #[test]
    fn every_associative_solution_assembles(x in 0usize..6, y in 0usize..6, pick in prop::collection::vec(-2i64..=2, 4)) {
        let algs = small_algebras();
        let (a, b) = (&algs[x], &algs[y]);
        let m = free_rank_one(b, a).unwrap();
        let n = free_rank_one(a, b).unwrap();
        let space = solve_associativity(a, b, &m, &n).unwrap();
        if a.dim() == 1 && b.dim() == 1 {
            prop_assert_eq!(space.dim(), 1);
        } else {
            prop_assert_eq!(space.dim(), 0);
        }
        if space.dim() > 0 {
            let coords: Vec<(u32, _)> = pick.iter().take(space.dim()).enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i as u32, Q.from_i64(*c))).collect();
            let point = space.combine(&Q, &coords);
            let sq = SquareData::null(a.clone(), b.clone(), m, n).unwrap().with_maps(&point).unwrap();
            prop_assert!(assemble_square(&sq).is_ok());
        }
    }
}
