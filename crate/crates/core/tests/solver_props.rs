//! Randomized soundness of the reduction and its building blocks.

mod common;

use common::*;
use mlimage_core::backends::EvaluationAlgebra;
use mlimage_core::pcpoly::as_admissible;
use mlimage_core::solver::{
    collapse_positions, first_nonvanishing_k, lift_witness_xvy, merge_split, min_last_depth,
    pi_k_coefficients, split_last_variable, substitute_xn, type_two_from_g, SplitMap,
};
use mlimage_core::{
    evaluate, AdmissiblePoly, Kind, ShiftAlgebra, Solver, TraceStep, WeylAlgebra, Witness,
};
use rand::Rng;

#[test]
fn splitting_round_trips() {
    let mut rng = rng(1);
    for _ in 0..100 {
        let n = rng.gen_range(2..=3);
        let r = rng.gen_range(0..=2);
        let f = admissible(&mut rng, n, r, Kind::One, 6);
        let split = split_last_variable(&f).unwrap();
        assert_eq!(split.len(), f.len());
        assert_eq!(merge_split(n, r, &split).unwrap(), f);
    }
}

/// `lambda'` with zero position sums at depth `k` for the last variable.
fn balanced_split<R: Rng>(rng: &mut R, n: usize, r: usize, k: usize) -> SplitMap {
    let f = admissible(rng, n, r, Kind::One, 4);
    let mut split = SplitMap::new();
    for ((tau, b, _), c) in split_last_variable(&f).unwrap() {
        let b = b.with_entry(n - 1, 0);
        let b = b.with_entry(0, b[0] + (r as i64 - b.total() - k as i64));
        if b.is_nonnegative() {
            let b = b.with_entry(n - 1, k as i64);
            let j1 = rng.gen_range(0..n);
            let j2 = (j1 + rng.gen_range(1..n)) % n;
            *split.entry((tau.clone(), b.clone(), j1)).or_default() += c.clone();
            *split.entry((tau, b, j2)).or_default() -= c;
        }
    }
    split.retain(|_, c| *c != mlimage_core::rational::q(0));
    split
}

#[test]
fn type_two_rewriting_equals_g() {
    let mut rng = rng(2);
    let mut checked = 0;
    while checked < 50 {
        let n = rng.gen_range(2..=3);
        let r = rng.gen_range(0..=2);
        let k = rng.gen_range(0..=r);
        let split = balanced_split(&mut rng, n, r, k);
        if split.is_empty() {
            continue;
        }
        let g = substitute_xn(n, &split, k).unwrap();
        assert!(collapse_positions(n, r, &split, k).unwrap().is_zero());
        let mu = type_two_from_g(n, r, &split, k).unwrap();
        assert!(!mu.is_zero());
        assert_eq!(mu.expand(), g);
        checked += 1;
    }
}

#[test]
fn partial_sums_vanish_only_for_zero_input() {
    // all sign patterns of lambda' in {-1, 0, 1}^3 with zero total
    use mlimage_core::rational::q;
    use mlimage_core::{MultiIndex, Perm};
    let tau = Perm::identity(2);
    let b = MultiIndex::zero(3);
    for a in -1..=1 {
        for c in -1..=1 {
            let d = -a - c;
            let mut split = SplitMap::new();
            for (j, x) in [a, c, d].into_iter().enumerate() {
                if x != 0 {
                    split.insert((tau.clone(), b.clone(), j), q(x));
                }
            }
            if split.is_empty() {
                continue;
            }
            assert!(!type_two_from_g(3, 0, &split, 0).unwrap().is_zero());
        }
    }
}

#[test]
fn lift_identity_holds() {
    let alg = WeylAlgebra;
    let mut rng = rng(3);
    for _ in 0..100 {
        let n = rng.gen_range(2..=3);
        let r = rng.gen_range(0..=2);
        let f = admissible(&mut rng, n, r, Kind::One, 5);
        let split = split_last_variable(&f).unwrap();
        let k = min_last_depth(&split).unwrap();
        let g = substitute_xn(n, &split, k).unwrap();
        let xs = (0..n - 1).map(|_| weyl_element(&mut rng, 3)).collect();
        let inner = Witness::new(xs, v_poly(&mut rng, 2));
        let lifted = lift_witness_xvy(&alg, &inner, k);
        assert_eq!(
            evaluate(&alg, &g, &inner).unwrap(),
            evaluate(&alg, &f.expand(), &lifted).unwrap()
        );
    }
}

#[test]
fn specialization_coefficients_match_substitution() {
    let mut rng = rng(4);
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let r = rng.gen_range(0..=2);
        let f = admissible(&mut rng, n, r, Kind::Two, 4);
        let expanded = f.expand();
        for k in 1..=3 {
            let h = pi_k_coefficients(&f, k).unwrap();
            let earlier_vanish = (1..k).all(|t| pi_k_coefficients(&f, t).unwrap().is_zero());
            if earlier_vanish {
                assert_eq!(expanded.pi(k as u32), h.expand());
            }
        }
    }
    assert!(pi_k_coefficients(&AdmissiblePoly::new(2, 1, Kind::Two), 1).unwrap().is_zero());
}

#[test]
fn first_nonvanishing_k_is_at_most_n() {
    let mut rng = rng(5);
    for _ in 0..500 {
        let n = rng.gen_range(1..=3);
        let r = rng.gen_range(0..=2);
        let f = admissible(&mut rng, n, r, Kind::Two, 6);
        let (k, _) = first_nonvanishing_k(&f, 8).unwrap().expect("some h_k is nonzero");
        assert!(k <= n, "k = {k} for n = {n}: {f:?}");
    }
}

#[test]
fn weyl_witnesses_evaluate_to_the_target() {
    let alg = WeylAlgebra;
    let mut rng = rng(6);
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let f = multilinear(&mut rng, n);
        let a = weyl_element(&mut rng, 3);
        let sol = Solver::new().check_lifts(true).solve(&alg, &f, &a).unwrap();
        assert_eq!(evaluate(&alg, &f.expand(), &sol.witness).unwrap(), a);
        let depth = sol
            .trace
            .steps
            .iter()
            .filter(|s| !matches!(s, TraceStep::TypeOneBranch | TraceStep::TypeTwoBranch { .. }))
            .count();
        assert!(depth <= 2 * n, "depth {depth} for n = {n}");
    }
}

#[test]
fn admissible_inputs_of_higher_order_are_solved() {
    let alg = WeylAlgebra;
    let mut rng = rng(7);
    for _ in 0..60 {
        let n = rng.gen_range(1..=3);
        let r = rng.gen_range(0..=2);
        let kind = if rng.gen_bool(0.5) { Kind::One } else { Kind::Two };
        let f = admissible(&mut rng, n, r, kind, 4);
        let a = weyl_element(&mut rng, 2);
        let sol = Solver::new().solve(&alg, &f, &a).unwrap();
        assert_eq!(evaluate(&alg, &f.expand(), &sol.witness).unwrap(), a);
    }
}

#[test]
fn shift_witnesses_agree_on_probed_columns() {
    let alg = ShiftAlgebra::default();
    let mut rng = rng(8);
    for _ in 0..20 {
        let n = rng.gen_range(1..=2);
        let f = multilinear(&mut rng, n);
        let a = alg.add(&alg.v(), &alg.scalar(&small_q(&mut rng)));
        let sol = Solver::new().solve(&alg, &f, &a).unwrap();
        assert!(alg.equal(&evaluate(&alg, &f.expand(), &sol.witness).unwrap(), &a));
    }
}

#[test]
fn solving_is_deterministic() {
    let alg = WeylAlgebra;
    let mut rng = rng(9);
    for _ in 0..20 {
        let f = multilinear(&mut rng, 3);
        let a = weyl_element(&mut rng, 3);
        let one = Solver::new().solve(&alg, &f, &a).unwrap();
        let two = Solver::new().solve(&alg, &f, &a).unwrap();
        assert_eq!(one.trace, two.trace);
        assert_eq!(one.witness.xs, two.witness.xs);
        assert_eq!(one.witness.u, two.witness.u);
    }
}

#[test]
fn recovered_coefficients_match() {
    let mut rng = rng(10);
    for _ in 0..20 {
        let n = rng.gen_range(1..=2);
        let r = rng.gen_range(0..=1);
        let kind = if rng.gen_bool(0.5) { Kind::One } else { Kind::Two };
        let f = admissible(&mut rng, n, r, kind, 4);
        assert_eq!(as_admissible(&f.expand(), n, r, kind).unwrap(), Some(f));
    }
}
