//! The linear system against brute force and against the solver.

mod common;

use common::*;
use mlimage_core::combinatorics::compositions;
use mlimage_core::linsys::{
    eliminate_recurrence_pair, gen_system, nullspace, CommPoly, UnknownIndex,
};
use mlimage_core::rational::q_int;
use mlimage_core::solver::pi_k_coefficients;
use mlimage_core::{GenIndex, Kind, MultiIndex, Perm, Q};
use num_traits::Zero;
use rand::Rng;

#[test]
fn only_the_trivial_solution() {
    for n in 1..=3 {
        for r in 0..=2 {
            for sigma in Perm::all(n) {
                let sys = gen_system(&sigma, n, r, n).unwrap();
                assert_eq!(sys.ncols(), n * b_count(n, r));
                assert!(nullspace(&sys).is_empty(), "sigma = {sigma}, r = {r}");
                assert_eq!(sys.rank(), sys.ncols());
            }
        }
    }
}

/// `b` read in word order: entry `p` is `b[sigma(p)]`.
fn relabel(sigma: &Perm, b: &MultiIndex) -> MultiIndex {
    MultiIndex::new((0..sigma.len()).map(|p| b[sigma.apply(p)]).collect())
}

#[test]
fn every_sigma_gives_the_identity_system() {
    for n in 1..=3 {
        let id = Perm::identity(n);
        for r in 0..=2 {
            for k_max in 1..=n {
                let base = gen_system(&id, n, r, k_max).unwrap();
                for sigma in Perm::all(n) {
                    let sys = gen_system(&sigma, n, r, k_max).unwrap();
                    assert_eq!(nullspace(&sys).len(), nullspace(&base).len());
                    for (row, label) in sys.rows.iter().enumerate() {
                        let target = base
                            .rows
                            .iter()
                            .position(|l| l.k == label.k && l.b == relabel(&sigma, &label.b))
                            .unwrap();
                        for (&col, c) in &sys.entries[row] {
                            let u = &sys.columns[col];
                            let moved = UnknownIndex { b: relabel(&sigma, &u.b), i: u.i };
                            let bcol = base.column_of(&moved).unwrap();
                            assert_eq!(base.entries[target].get(&bcol), Some(c));
                        }
                        assert_eq!(base.entries[target].len(), sys.entries[row].len());
                    }
                }
            }
        }
    }
}

#[test]
fn rows_are_coefficients_of_the_specialization() {
    let mut rng = rng(11);
    for _ in 0..60 {
        let n = rng.gen_range(1..=3);
        let r = rng.gen_range(0..=2);
        let f = admissible(&mut rng, n, r, Kind::Two, 6);
        for sigma in Perm::all(n) {
            let sys = gen_system(&sigma, n, r, n).unwrap();
            let lambda: Vec<Q> = sys
                .columns
                .iter()
                .map(|u| f.coeff(&GenIndex::two(sigma.clone(), u.b.clone(), u.i)))
                .collect();
            for k in 1..=n {
                let h = pi_k_coefficients(&f, k).unwrap();
                for (row, label) in sys.rows.iter().enumerate() {
                    if label.k != k {
                        continue;
                    }
                    let dot = sys.entries[row]
                        .iter()
                        .fold(Q::zero(), |acc, (&c, x)| acc + q_int(x) * &lambda[c]);
                    assert_eq!(dot, h.coeff(&GenIndex::one(sigma.clone(), label.b.clone())));
                }
            }
        }
    }
}

/// A polynomial in `W_i..W_n` with degree exactly `k` in `W_i`.
fn random_family_member<R: Rng>(rng: &mut R, n: usize, i: usize, k: u32) -> CommPoly {
    let mut lead = vec![0u32; n];
    lead[i] = k;
    for e in lead.iter_mut().skip(i + 1) {
        *e = rng.gen_range(0..=2);
    }
    let mut f = CommPoly::monomial(lead, small_q(rng));
    for _ in 0..rng.gen_range(0..3) {
        let mut e = vec![0u32; n];
        e[i] = rng.gen_range(0..k);
        for x in e.iter_mut().skip(i + 1) {
            *x = rng.gen_range(0..=2);
        }
        f.add_term(e, small_q(rng));
    }
    f
}

#[test]
fn elimination_keeps_degrees() {
    let mut rng = rng(12);
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let active: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.7)).collect();
        if active.is_empty() {
            continue;
        }
        let kl = rng.gen_range(1..=3);
        let kj = rng.gen_range(kl + 1..=4);
        let fj: Vec<CommPoly> = active.iter().map(|&i| random_family_member(&mut rng, n, i, kj)).collect();
        let fl: Vec<CommPoly> = active.iter().map(|&i| random_family_member(&mut rng, n, i, kl)).collect();
        let g = eliminate_recurrence_pair(&active, &fj, &fl, kj, kl).unwrap();
        assert!(g.last().unwrap().is_zero());
        for (t, &i) in active[..active.len() - 1].iter().enumerate() {
            assert_eq!(g[t].degree_in(i), Some(kj));
        }
    }
}

#[test]
fn compositions_index_the_columns() {
    let sys = gen_system(&Perm::identity(2), 2, 2, 1).unwrap();
    let expected: Vec<UnknownIndex> = compositions(2, 2)
        .into_iter()
        .flat_map(|b| (0..2).map(move |i| UnknownIndex { b: b.clone(), i }))
        .collect();
    assert_eq!(sys.columns, expected);
}
