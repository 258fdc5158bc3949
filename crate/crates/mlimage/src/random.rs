//! Seeded generators for random inputs, shared by `check-random` and the tests.

use std::collections::BTreeMap;

use mlimage_core::backends::SparseVec;
use mlimage_core::rational::{q, q_frac};
use mlimage_core::{AdmissiblePoly, GenIndex, Kind, Perm, ShiftOp, VPoly, WeylElement, Q};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero rational `p/q` with `|p| <= 3`, `1 <= q <= 3`.
pub fn small_q<R: Rng>(rng: &mut R) -> Q {
    loop {
        let num = rng.gen_range(-3..=3);
        if num != 0 {
            return q_frac(num, rng.gen_range(1..=3));
        }
    }
}

/// Rational in `[-3, 3]`, possibly zero.
pub fn bounded_q<R: Rng>(rng: &mut R) -> Q {
    let den = rng.gen_range(1..=3);
    q_frac(rng.gen_range(-3 * den..=3 * den), den)
}

/// Weyl element with total degree at most `max_degree`.
pub fn weyl_element<R: Rng>(rng: &mut R, max_degree: u32) -> WeylElement {
    let mut e = WeylElement::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let k = rng.gen_range(0..=max_degree);
        let l = rng.gen_range(0..=max_degree - k);
        e.add_term(k, l, small_q(rng));
    }
    e
}

pub fn v_poly<R: Rng>(rng: &mut R, max_degree: usize) -> VPoly {
    VPoly::from_coeffs((0..=max_degree).map(|_| q(rng.gen_range(-2..=2))))
}

/// Operator whose first `cols` columns are random and supported on `1..=rows`;
/// later columns vanish.
pub fn shift_op<R: Rng>(rng: &mut R, cols: usize, rows: usize) -> ShiftOp {
    let mut columns = BTreeMap::new();
    for n in 1..=cols {
        let mut col = SparseVec::new();
        for m in 1..=rows {
            if rng.gen_bool(0.4) {
                col.insert(m, small_q(rng));
            }
        }
        columns.insert(n, col);
    }
    ShiftOp::explicit(columns)
}

/// Nonzero multilinear polynomial in `n` variables, coefficients in `[-3, 3]`.
pub fn multilinear<R: Rng>(rng: &mut R, n: usize) -> AdmissiblePoly {
    let perms = Perm::all(n);
    loop {
        let count = rng.gen_range(1..=perms.len());
        let terms = perms.choose_multiple(rng, count).map(|p| (p.clone(), bounded_q(rng))).collect::<Vec<_>>();
        let f = AdmissiblePoly::multilinear(n, terms).expect("permutations of length n");
        if !f.is_zero() {
            return f;
        }
    }
}

/// Nonzero admissible polynomial with at most `max_terms` generator terms.
pub fn admissible<R: Rng>(rng: &mut R, n: usize, r: usize, kind: Kind, max_terms: usize) -> AdmissiblePoly {
    let gens = AdmissiblePoly::generators(n, r, kind);
    loop {
        let mut f = AdmissiblePoly::new(n, r, kind);
        for _ in 0..rng.gen_range(1..=max_terms) {
            let g: &GenIndex = gens.choose(rng).expect("generators exist");
            f.add(g.clone(), small_q(rng)).expect("generator of the right shape");
        }
        if !f.is_zero() {
            return f;
        }
    }
}
