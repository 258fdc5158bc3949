#![allow(dead_code)]

use mlimage_core::combinatorics::compositions;
use mlimage_core::rational::{q, q_frac};
use mlimage_core::{AdmissiblePoly, GenIndex, Kind, Perm, VPoly, WeylElement, Q};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Nonzero rational with numerator and denominator in small ranges.
pub fn small_q<R: Rng>(rng: &mut R) -> Q {
    loop {
        let num = rng.gen_range(-3..=3);
        if num != 0 {
            return q_frac(num, rng.gen_range(1..=3));
        }
    }
}

pub fn weyl_element<R: Rng>(rng: &mut R, max_degree: u32) -> WeylElement {
    let mut e = WeylElement::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let k = rng.gen_range(0..=max_degree);
        let l = rng.gen_range(0..=max_degree - k);
        e.add_term(k, l, small_q(rng));
    }
    e
}

pub fn nonzero_weyl_element<R: Rng>(rng: &mut R, max_degree: u32) -> WeylElement {
    loop {
        let e = weyl_element(rng, max_degree);
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn v_poly<R: Rng>(rng: &mut R, max_degree: usize) -> VPoly {
    VPoly::from_coeffs((0..=max_degree).map(|_| q(rng.gen_range(-2..=2))))
}

/// Random nonzero multilinear polynomial with integer coefficients in `-3..=3`.
pub fn multilinear<R: Rng>(rng: &mut R, n: usize) -> AdmissiblePoly {
    let perms = Perm::all(n);
    loop {
        let count = rng.gen_range(1..=perms.len());
        let chosen: Vec<&Perm> = perms.choose_multiple(rng, count).collect();
        let f = AdmissiblePoly::multilinear(
            n,
            chosen.into_iter().map(|p| (p.clone(), q(rng.gen_range(-3..=3)))),
        )
        .unwrap();
        if !f.is_zero() {
            return f;
        }
    }
}

/// Random nonzero admissible polynomial of the given shape with a few terms.
pub fn admissible<R: Rng>(rng: &mut R, n: usize, r: usize, kind: Kind, max_terms: usize) -> AdmissiblePoly {
    let gens = AdmissiblePoly::generators(n, r, kind);
    loop {
        let mut f = AdmissiblePoly::new(n, r, kind);
        for _ in 0..rng.gen_range(1..=max_terms) {
            let g: &GenIndex = gens.choose(rng).unwrap();
            f.add(g.clone(), small_q(rng)).unwrap();
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// Number of compositions of `r` into `n` parts.
pub fn b_count(n: usize, r: usize) -> usize {
    compositions(n, r).len()
}
