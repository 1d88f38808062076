mod common;

use common::*;
use lincontract::polyalg::{Poly, Rational};
use lincontract::polymatrix::{invert_ratmatrix, smith_form, PolyMatrix, RatMatrix};
use proptest::prelude::*;
use rand::Rng;

fn check_smith(m: &PolyMatrix) -> Result<(), TestCaseError> {
    let sd = smith_form(m);
    prop_assert_eq!(&sd.reconstruct(), m);
    prop_assert!(sd.u.is_unimodular().unwrap());
    prop_assert!(sd.v.is_unimodular().unwrap());
    prop_assert_eq!(&(&sd.u * &sd.u_inv), &PolyMatrix::identity(m.rows()));
    prop_assert_eq!(&(&sd.v * &sd.v_inv), &PolyMatrix::identity(m.cols()));
    for f in &sd.invariant_factors {
        prop_assert!(f.is_monic());
    }
    for w in sd.invariant_factors.windows(2) {
        prop_assert!(w[0].divides(&w[1]));
    }
    prop_assert_eq!(sd.rank(), m.rank_generic());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn smith_decomposition_is_valid(seed in any::<u64>(), rows in 0usize..=4, cols in 0usize..=4) {
        let mut r = rng(seed);
        let sparsity = r.gen_range(0.0..0.6);
        let m = rand_matrix(&mut r, rows, cols, 3, sparsity);
        check_smith(&m)?;
    }

    #[test]
    fn invariant_factors_match_minor_gcds(seed in any::<u64>(), rows in 1usize..=3, cols in 1usize..=3) {
        let mut r = rng(seed);
        let m = rand_matrix(&mut r, rows, cols, 2, 0.3);
        prop_assert_eq!(smith_form(&m).invariant_factors, invariant_factors_by_minors(&m));
    }

    #[test]
    fn determinant_matches_cofactor_expansion(seed in any::<u64>(), n in 0usize..=4) {
        let mut r = rng(seed);
        let m = rand_matrix(&mut r, n, n, 2, 0.2);
        prop_assert_eq!(m.determinant().unwrap(), cofactor_det(&m));
    }

    #[test]
    fn generic_rank_matches_evaluation(seed in any::<u64>(), rows in 0usize..=4, cols in 0usize..=4) {
        let mut r = rng(seed);
        // low-rank products show up as often as generic matrices
        let inner = r.gen_range(0..=4);
        let m = &rand_matrix(&mut r, rows, inner, 1, 0.2) * &rand_matrix(&mut r, inner, cols, 1, 0.2);
        let ranks: Vec<usize> = (0..5)
            .map(|_| {
                let x = Rational::new(r.gen_range(1..1_000_000).into(), r.gen_range(1..1_000_000).into());
                cols - nullspace(&m.eval(&x), cols).len()
            })
            .collect();
        prop_assert_eq!(m.rank_generic(), *ranks.iter().max().unwrap());
    }

    #[test]
    fn inverse_of_nonsingular_matrix(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let m = rand_full_row_rank(&mut r, n, n, 2);
        let inv = invert_ratmatrix(&m).unwrap();
        prop_assert_eq!(inv.checked_mul(&RatMatrix::from_poly(&m)).unwrap(), RatMatrix::identity(n));
    }

    #[test]
    fn unimodular_products_are_unimodular(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let u = rand_unimodular(&mut r, n, 4);
        prop_assert!(u.is_unimodular().unwrap());
        prop_assert!(u.determinant().unwrap().is_constant());
    }
}

#[test]
fn singular_matrix_has_no_inverse() {
    let m = PolyMatrix::from_int_rows(&[&[&[0, 1], &[1]], &[&[0, 0, 1], &[0, 1]]]);
    assert!(invert_ratmatrix(&m).is_err());
    assert!(!m.is_unimodular().unwrap());
    assert!(PolyMatrix::zeros(2, 3).determinant().is_err());
}

#[test]
fn smith_of_degenerate_shapes() {
    for (r, c) in [(0, 0), (0, 3), (3, 0), (2, 2)] {
        let sd = smith_form(&PolyMatrix::zeros(r, c));
        assert_eq!(sd.rank(), 0);
        assert_eq!(sd.reconstruct(), PolyMatrix::zeros(r, c));
    }
}

#[test]
fn smith_of_diagonal_reorders_to_chain() {
    // diag(s^2, s) has invariant factors s, s^2
    let m = PolyMatrix::from_int_rows(&[&[&[0, 0, 1], &[]], &[&[], &[0, 1]]]);
    let sd = smith_form(&m);
    assert_eq!(sd.invariant_factors, vec![Poly::s(), Poly::from_ints(&[0, 0, 1])]);
    // diag(s, s - 1) is equivalent to diag(1, s(s - 1))
    let m = PolyMatrix::from_int_rows(&[&[&[0, 1], &[]], &[&[], &[-1, 1]]]);
    assert_eq!(smith_form(&m).invariant_factors, vec![Poly::one(), Poly::from_ints(&[0, -1, 1])]);
}
