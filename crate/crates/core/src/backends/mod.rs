//! Unital algebras with a distinguished element `v` and a right inverse of
//! `ad_v = [v, .]`, plus evaluation of partially commutative polynomials.

mod any;
mod product;
mod shift;
mod weyl;

pub use any::{AnyAlgebra, AnyElement};
pub use product::ProductAlgebra;
pub use shift::{ShiftAlgebra, ShiftOp, SparseVec, DEFAULT_PROBE};
pub use weyl::{WeylAlgebra, WeylElement};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::pcpoly::{PcPoly, Segment};
use crate::rational::{self, Q};
use crate::{Error, Result};

/// An algebra over `Q` with a fixed `v` whose inner derivation can be inverted.
pub trait EvaluationAlgebra {
    type Elem: Clone + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn v(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: &Q) -> Self::Elem;
    /// Exact equality, or agreement on a probe window for lazy operators.
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    /// Some `x` with `[v, [v, ..., [v, x]]] = y` (`k` brackets); `k = 0` returns `y`.
    fn solve_inner(&self, y: &Self::Elem, k: usize) -> Self::Elem;

    fn scalar(&self, c: &Q) -> Self::Elem {
        self.scale(&self.one(), c)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.scale(a, &-Q::one())
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    fn ad_v(&self, y: &Self::Elem) -> Self::Elem {
        self.commutator(&self.v(), y)
    }

    fn ad_v_pow(&self, y: &Self::Elem, k: usize) -> Self::Elem {
        let v = self.v();
        (0..k).fold(y.clone(), |acc, _| self.commutator(&v, &acc))
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// `z_k` with `ad_v^k(z_k) = 1`.
    fn z(&self, k: usize) -> Self::Elem {
        self.solve_inner(&self.one(), k)
    }

    /// Evaluates a polynomial in `v`.
    fn v_poly(&self, p: &VPoly) -> Self::Elem {
        let v = self.v();
        p.coeffs()
            .fold(self.zero(), |acc, (&e, c)| self.add(&acc, &self.scale(&self.pow(&v, e), c)))
    }
}

/// A polynomial in the distinguished element `v` (so it commutes with `v`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VPoly(BTreeMap<u32, Q>);

impl VPoly {
    pub fn zero() -> Self {
        VPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::v_pow(0)
    }

    pub fn v_pow(k: u32) -> Self {
        Self::monomial(k, Q::one())
    }

    pub fn monomial(k: u32, c: Q) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.0.insert(k, c);
        }
        p
    }

    /// From ascending coefficients `c_0 + c_1 v + ...`.
    pub fn from_coeffs<I: IntoIterator<Item = Q>>(coeffs: I) -> Self {
        VPoly(
            coeffs
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as u32, c))
                .collect(),
        )
    }

    /// Ascending coefficient list up to the degree.
    pub fn to_coeffs(&self) -> Vec<Q> {
        match self.0.keys().next_back() {
            None => Vec::new(),
            Some(&d) => (0..=d).map(|k| self.0.get(&k).cloned().unwrap_or_else(Q::zero)).collect(),
        }
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&u32, &Q)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for VPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (idx, (&k, c)) in self.0.iter().enumerate() {
            let negative = c < &Q::zero();
            let abs = if negative { -c } else { c.clone() };
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            match k {
                0 => write!(f, "{}", rational::render(&abs))?,
                1 if abs.is_one() => f.write_str("v")?,
                1 => write!(f, "{}*v", rational::render(&abs))?,
                _ if abs.is_one() => write!(f, "v^{k}")?,
                _ => write!(f, "{}*v^{k}", rational::render(&abs))?,
            }
        }
        Ok(())
    }
}

/// An assignment `X_i -> xs[i]`, `U -> u(v)`, `V -> v`.
#[derive(Clone, Debug)]
pub struct Witness<E> {
    pub xs: Vec<E>,
    pub u: VPoly,
}

impl<E> Witness<E> {
    pub fn new(xs: Vec<E>, u: VPoly) -> Self {
        Witness { xs, u }
    }

    pub fn arity(&self) -> usize {
        self.xs.len()
    }
}

/// The evaluation homomorphism sending `X_i -> x_i`, `U -> u`, `V -> v`.
pub fn evaluate<A: EvaluationAlgebra>(alg: &A, f: &PcPoly, w: &Witness<A::Elem>) -> Result<A::Elem> {
    if f.n() != w.xs.len() {
        return Err(Error::ArityMismatch { left: f.n(), right: w.xs.len() });
    }
    let u = alg.v_poly(&w.u);
    let v = alg.v();
    let mut u_pows: Vec<A::Elem> = alloc::vec![alg.one()];
    let mut v_pows: Vec<A::Elem> = alloc::vec![alg.one()];
    let power = |pows: &mut Vec<A::Elem>, base: &A::Elem, e: u32| -> A::Elem {
        while pows.len() <= e as usize {
            let next = alg.mul(pows.last().unwrap(), base);
            pows.push(next);
        }
        pows[e as usize].clone()
    };
    let mut acc = alg.zero();
    for (m, c) in f.terms() {
        let mut term = alg.scalar(c);
        for seg in m.segments() {
            match seg {
                Segment::Word(word) => {
                    for &j in word {
                        term = alg.mul(&term, &w.xs[j]);
                    }
                }
                Segment::Block { u: a, v: b } => {
                    if *a > 0 {
                        let ua = power(&mut u_pows, &u, *a);
                        term = alg.mul(&term, &ua);
                    }
                    if *b > 0 {
                        let vb = power(&mut v_pows, &v, *b);
                        term = alg.mul(&term, &vb);
                    }
                }
            }
        }
        acc = alg.add(&acc, &term);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use alloc::vec;

    #[test]
    fn vpoly_coefficients_round_trip() {
        let p = VPoly::from_coeffs(vec![q(0), q(2), q(0), q(-1)]);
        assert_eq!(p.to_coeffs(), vec![q(0), q(2), q(0), q(-1)]);
        assert_eq!(alloc::format!("{p}"), "2*v - v^3");
        assert!(VPoly::from_coeffs(vec![q(0)]).is_zero());
    }

    #[test]
    fn evaluation_rejects_wrong_arity() {
        let alg = WeylAlgebra;
        let f = PcPoly::x(2, 0);
        let w = Witness::new(vec![alg.one()], VPoly::one());
        assert_eq!(
            evaluate(&alg, &f, &w).unwrap_err(),
            Error::ArityMismatch { left: 2, right: 1 }
        );
    }

    #[test]
    fn commutator_of_v_and_w_evaluates_to_one() {
        let alg = WeylAlgebra;
        let f = PcPoly::x(2, 0).commutator(&PcPoly::x(2, 1));
        let w = Witness::new(vec![alg.v(), WeylElement::w()], VPoly::one());
        assert!(alg.equal(&evaluate(&alg, &f, &w).unwrap(), &alg.one()));
    }

    #[test]
    fn u_is_sent_to_the_given_polynomial_in_v() {
        let alg = WeylAlgebra;
        let f = &PcPoly::u(1) * &PcPoly::x(1, 0);
        let w = Witness::new(vec![WeylElement::w()], VPoly::v_pow(2));
        let expected = WeylElement::monomial(2, 1, q(1));
        assert_eq!(evaluate(&alg, &f, &w).unwrap(), expected);
    }
}
