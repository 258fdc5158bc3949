//! Expansion identities for `pi_k` of bracketed words, as checkable pairs.
//!
//! Each `*_sides` function returns `(lhs, rhs)` computed along independent
//! routes: the left side by direct substitution/multiplication in the free
//! product, the right side from the closed binomial/multinomial expansion.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{p_poly, word_power, x_power, x_power_marked, GenIndex, PcPoly};
use crate::combinatorics::{binomial, compositions, d_set, multinomial, MultiIndex, Perm};
use crate::rational::q_int;

/// `V X_i^b` against `X_i^{b+e_i} + X_i^b V`.
pub fn rewrite_sides(n: usize, i: usize, b: &MultiIndex) -> (PcPoly, PcPoly) {
    let lhs = &PcPoly::v(n) * &x_power(n, i, b);
    let raised = b + &MultiIndex::unit(n, i);
    let rhs = &x_power(n, i, &raised) + &(&x_power(n, i, b) * &PcPoly::v(n));
    (lhs, rhs)
}

/// `pi_k(X_i^{b,i})` against `sum_{s=1}^k C(k,s) X_i^{b+s e_i} V^{k-s}`.
pub fn pi_marked_sides(n: usize, i: usize, b: &MultiIndex, k: u32) -> (PcPoly, PcPoly) {
    let lhs = x_power_marked(n, i, b, i).pi(k);
    let mut rhs = PcPoly::zero(n);
    for s in 1..=k {
        let raised = b + &MultiIndex::unit(n, i).scaled(s as i64);
        let term = &x_power(n, i, &raised) * &PcPoly::v_pow(n, k - s);
        rhs = &rhs + &term.scale(&q_int(&binomial(k as i64, s as i64)));
    }
    (lhs, rhs)
}

/// `V^{k-s} (X_start ... X_{n-1})^b` against
/// `sum_{t=s}^k C(k-s,t-s) sum_{d in D_{t-s,start}} multinom(d) (X_start...)^{b+d} V^{k-t}`.
pub fn v_shift_sides(n: usize, start: usize, b: &MultiIndex, k: u32, s: u32) -> (PcPoly, PcPoly) {
    assert!(start < n && s >= 1 && s <= k);
    let word: Vec<usize> = (start..n).collect();
    let lhs = &PcPoly::v_pow(n, k - s) * &word_power(n, &word, b);
    let mut rhs = PcPoly::zero(n);
    for t in s..=k {
        let outer = binomial((k - s) as i64, (t - s) as i64);
        for d in d_set((t - s) as usize, start, n) {
            let inner = multinomial(&d.entries()[start..]).expect("compositions are nonnegative");
            let term = &word_power(n, &word, &(b + &d)) * &PcPoly::v_pow(n, k - t);
            rhs = &rhs + &term.scale(&q_int(&(&outer * inner)));
        }
    }
    (lhs, rhs)
}

/// `pi_k((X_sigma)^{b, sigma(i)})` against `sum_{t=1}^k C(k,t) P^sigma_{b,i,t} V^{k-t}`.
pub fn pi_word_sides(sigma: &Perm, b: &MultiIndex, i: usize, k: u32) -> (PcPoly, PcPoly) {
    let n = sigma.len();
    let lhs = GenIndex::two(sigma.clone(), b.clone(), i).expand().pi(k);
    let mut rhs = PcPoly::zero(n);
    for t in 1..=k {
        let p = p_poly(sigma, b, i, t as usize).expect("valid P polynomial").expand();
        let term = &p * &PcPoly::v_pow(n, k - t);
        rhs = &rhs + &term.scale(&q_int(&binomial(k as i64, t as i64)));
    }
    (lhs, rhs)
}

/// The two sides of
/// `C(k-s,s') C(k-s-s',t-s-s') multinom(d) = C(k-s,t-s) multinom(s', d)`
/// where `d` is a composition of `t-s-s'`.
pub fn binomial_convolution_sides(
    k: i64,
    s: i64,
    t: i64,
    s2: i64,
    d: &[i64],
) -> (num_bigint::BigInt, num_bigint::BigInt) {
    let lhs = binomial(k - s, s2)
        * binomial(k - s - s2, t - s - s2)
        * multinomial(d).expect("nonnegative tail");
    let mut parts = vec![s2];
    parts.extend_from_slice(d);
    let rhs = binomial(k - s, t - s) * multinomial(&parts).expect("nonnegative parts");
    (lhs, rhs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identity {
    /// `V X^b = X^{b+e} + X^b V`
    Rewrite,
    /// `pi_k` of a marked single variable
    PiMarked,
    /// moving `V^{k-s}` past a bracketed word
    VShift,
    /// `pi_k` of a marked permutation word
    PiWord,
    /// the binomial/multinomial convolution
    Binomial,
}

#[derive(Clone, Debug)]
pub struct InstanceResult {
    pub label: String,
    pub holds: bool,
}

/// Checks every instance with `n <= n_max`, `|b| <= r_max`, `k <= k_max`.
pub fn check_identity(id: Identity, n_max: usize, r_max: usize, k_max: u32) -> Vec<InstanceResult> {
    let mut out = Vec::new();
    let mut push = |label: String, (lhs, rhs): (PcPoly, PcPoly)| {
        out.push(InstanceResult { label, holds: lhs == rhs });
    };
    match id {
        Identity::Rewrite => {
            for n in 1..=n_max {
                for r in 0..=r_max {
                    for b in compositions(n, r) {
                        for i in 0..n {
                            push(format!("n={n} i={} b={b}", i + 1), rewrite_sides(n, i, &b));
                        }
                    }
                }
            }
        }
        Identity::PiMarked => {
            for n in 1..=n_max {
                for r in 0..=r_max {
                    for b in compositions(n, r) {
                        for i in 0..n {
                            for k in 1..=k_max {
                                push(
                                    format!("n={n} i={} b={b} k={k}", i + 1),
                                    pi_marked_sides(n, i, &b, k),
                                );
                            }
                        }
                    }
                }
            }
        }
        Identity::VShift => {
            for n in 1..=n_max {
                for r in 0..=r_max {
                    for b in compositions(n, r) {
                        for start in 0..n {
                            for k in 1..=k_max {
                                for s in 1..=k {
                                    push(
                                        format!("n={n} start={} b={b} k={k} s={s}", start + 1),
                                        v_shift_sides(n, start, &b, k, s),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        Identity::PiWord => {
            for n in 1..=n_max {
                for sigma in Perm::all(n) {
                    for r in 0..=r_max {
                        for b in compositions(n, r) {
                            for i in 0..n {
                                for k in 1..=k_max {
                                    push(
                                        format!("n={n} sigma={sigma} i={} b={b} k={k}", i + 1),
                                        pi_word_sides(&sigma, &b, i, k),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        Identity::Binomial => {
            let k_top = k_max as i64;
            for k in 1..=k_top {
                for s in 1..=k {
                    for t in s..=k {
                        for s2 in 0..=(t - s) {
                            let rest = (t - s - s2) as usize;
                            for tail in 0..n_max.saturating_sub(1) + 1 {
                                let tails = if tail == 0 {
                                    if rest == 0 {
                                        vec![MultiIndex::new(vec![])]
                                    } else {
                                        vec![]
                                    }
                                } else {
                                    compositions(tail, rest)
                                };
                                for d in tails {
                                    let (l, r) = binomial_convolution_sides(k, s, t, s2, d.entries());
                                    out.push(InstanceResult {
                                        label: format!("k={k} s={s} t={t} s'={s2} d={d}"),
                                        holds: l == r,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}
