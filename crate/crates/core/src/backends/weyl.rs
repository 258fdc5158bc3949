//! The first Weyl algebra `A_1(Q)`: generated by `v, w` with `vw - wv = 1`.

use alloc::collections::BTreeMap;
use core::fmt;

use num_traits::{One, Zero};

use super::EvaluationAlgebra;
use crate::combinatorics::{binomial, factorial};
use crate::rational::{self, q_int, Q};

/// Normal-ordered element `sum c_{k,l} v^k w^l`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeylElement {
    terms: BTreeMap<(u32, u32), Q>,
}

impl WeylElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, Q::one())
    }

    pub fn v() -> Self {
        Self::monomial(1, 0, Q::one())
    }

    pub fn w() -> Self {
        Self::monomial(0, 1, Q::one())
    }

    pub fn scalar(c: Q) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c v^k w^l`.
    pub fn monomial(k: u32, l: u32, c: Q) -> Self {
        let mut e = Self::zero();
        e.add_term(k, l, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Q)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (k, l, c) in terms {
            e.add_term(k, l, c);
        }
        e
    }

    pub fn add_term(&mut self, k: u32, l: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((k, l)).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(k, l));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: u32, l: u32) -> Q {
        self.terms.get(&(k, l)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `k + l` over the terms.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(k, l)| k + l).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(k, l), c) in &other.terms {
            out.add_term(k, l, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        WeylElement { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    /// Normal-ordered product, reordering `w^b v^c` with
    /// `sum_j (-1)^j j! C(b,j) C(c,j) v^{c-j} w^{b-j}`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &other.terms {
                let xy = x * y;
                for j in 0..=b.min(c) {
                    let mut coeff = factorial(j as u64)
                        * binomial(b as i64, j as i64)
                        * binomial(c as i64, j as i64);
                    if j % 2 == 1 {
                        coeff = -coeff;
                    }
                    out.add_term(a + c - j, b + d - j, &xy * q_int(&coeff));
                }
            }
        }
        out
    }

    /// `[v, y]`, which differentiates in `w`: `v^a w^b -> b v^a w^{b-1}`.
    pub fn ad_v(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            if b > 0 {
                out.add_term(a, b - 1, c * Q::from_integer(b.into()));
            }
        }
        out
    }

    /// Integrates `k` times in `w`: `v^a w^b -> v^a w^{b+1} / (b+1)`.
    pub fn solve_inner(&self, k: usize) -> Self {
        let mut cur = self.clone();
        for _ in 0..k {
            let mut next = Self::zero();
            for (&(a, b), c) in &cur.terms {
                next.add_term(a, b + 1, c / Q::from_integer((b + 1).into()));
            }
            cur = next;
        }
        cur
    }
}

impl fmt::Display for WeylElement {
    /// E.g. `1/2*v^2*w - w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        // highest v-degree first
        for (idx, (&(k, l), c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Q::zero();
            let abs = if negative { -c } else { c.clone() };
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors = alloc::vec::Vec::new();
            if k == 1 {
                factors.push(alloc::string::String::from("v"));
            } else if k > 1 {
                factors.push(alloc::format!("v^{k}"));
            }
            if l == 1 {
                factors.push(alloc::string::String::from("w"));
            } else if l > 1 {
                factors.push(alloc::format!("w^{l}"));
            }
            if factors.is_empty() {
                f.write_str(&rational::render(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", rational::render(&abs))?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// `A_1(Q)` with distinguished element `v`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WeylAlgebra;

impl EvaluationAlgebra for WeylAlgebra {
    type Elem = WeylElement;

    fn zero(&self) -> WeylElement {
        WeylElement::zero()
    }

    fn one(&self) -> WeylElement {
        WeylElement::one()
    }

    fn v(&self) -> WeylElement {
        WeylElement::v()
    }

    fn add(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        a.add(b)
    }

    fn mul(&self, a: &WeylElement, b: &WeylElement) -> WeylElement {
        a.mul(b)
    }

    fn scale(&self, a: &WeylElement, c: &Q) -> WeylElement {
        a.scale(c)
    }

    fn equal(&self, a: &WeylElement, b: &WeylElement) -> bool {
        a == b
    }

    fn solve_inner(&self, y: &WeylElement, k: usize) -> WeylElement {
        y.solve_inner(k)
    }

    fn ad_v(&self, y: &WeylElement) -> WeylElement {
        y.ad_v()
    }
}
