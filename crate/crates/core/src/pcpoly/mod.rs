//! Partially commutative polynomials: the free product of `Q<X1..Xn>` and `Q[U,V]`.
//!
//! Elements are kept in the alternating-monomial basis: products of nonempty
//! `X`-words and nonempty `U^a V^b` blocks that strictly alternate, plus the
//! empty monomial `1`. Adjacent words concatenate and adjacent blocks add
//! exponents, so equal polynomials have equal term maps.

mod admissible;
pub mod identities;
mod monomial;

pub use admissible::{as_admissible, independence_rank, p_poly, AdmissiblePoly, GenIndex, Kind};
pub use monomial::{AltMonomial, Segment};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::combinatorics::MultiIndex;
use crate::rational::{self, Q};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPoly {
    n: usize,
    terms: BTreeMap<AltMonomial, Q>,
}

impl PcPoly {
    pub fn zero(n: usize) -> Self {
        PcPoly { n, terms: BTreeMap::new() }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Q::one())
    }

    pub fn constant(n: usize, c: Q) -> Self {
        Self::monomial(n, AltMonomial::one(), c)
    }

    pub fn monomial(n: usize, m: AltMonomial, c: Q) -> Self {
        let mut p = Self::zero(n);
        p.add_term(m, c);
        p
    }

    /// The variable `X{j+1}`.
    pub fn x(n: usize, j: usize) -> Self {
        assert!(j < n, "variable index out of range");
        Self::monomial(n, AltMonomial::word(vec![j]), Q::one())
    }

    pub fn u(n: usize) -> Self {
        Self::monomial(n, AltMonomial::block(1, 0), Q::one())
    }

    pub fn v(n: usize) -> Self {
        Self::monomial(n, AltMonomial::block(0, 1), Q::one())
    }

    pub fn v_pow(n: usize, k: u32) -> Self {
        Self::monomial(n, AltMonomial::block(0, k), Q::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AltMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &AltMonomial) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, m: AltMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.max_var().is_none_or(|j| j < self.n));
        let entry = self.terms.entry(m);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Reinterprets the polynomial with a different variable count.
    pub fn with_n(mut self, n: usize) -> Result<Self> {
        if let Some(j) = self.terms.keys().filter_map(|m| m.max_var()).max() {
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j + 1, n });
            }
        }
        self.n = n;
        Ok(self)
    }

    fn check_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_n(other)?;
        let mut out = Self::zero(self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1 * m2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        PcPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `[self, g]_k = [self, [self, ..., [self, g]]]` with `k` brackets; `k = 0` gives `g`.
    pub fn ad_pow(&self, g: &Self, k: usize) -> Self {
        let mut acc = g.clone();
        for _ in 0..k {
            acc = self.commutator(&acc);
        }
        acc
    }

    /// The substitution `U -> V^k` (with `U -> 1` for `k = 0`), fixing `X_i` and `V`.
    pub fn pi(&self, k: u32) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.substitute_u(k), c.clone());
        }
        out
    }

    /// Highest power of `U` over all monomials.
    pub fn u_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.u_degree()).max().unwrap_or(0)
    }

    /// Lowest power of `U` over all monomials (0 for the zero polynomial).
    pub fn min_u_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.u_degree()).min().unwrap_or(0)
    }

    pub fn render(&self) -> String {
        alloc::format!("{self}")
    }
}

/// `X_j^b = [V, X_j]_{b_j}` for variable `j` (0-based).
pub fn x_power(n: usize, j: usize, b: &MultiIndex) -> PcPoly {
    assert_eq!(b.len(), n, "multi-index length must equal the variable count");
    let depth = b[j];
    assert!(depth >= 0, "negative bracket depth");
    PcPoly::v(n).ad_pow(&PcPoly::x(n, j), depth as usize)
}

/// `X_j^{b,i}`: `[U, X_j^b]` when `j == marked`, else `X_j^b`.
pub fn x_power_marked(n: usize, j: usize, b: &MultiIndex, marked: usize) -> PcPoly {
    let base = x_power(n, j, b);
    if j == marked {
        PcPoly::u(n).commutator(&base)
    } else {
        base
    }
}

/// `(X_{w1} ... X_{wk})^b = X_{w1}^b ... X_{wk}^b`; the empty word gives `1`.
pub fn word_power(n: usize, word: &[usize], b: &MultiIndex) -> PcPoly {
    word.iter()
        .fold(PcPoly::one(n), |acc, &j| &acc * &x_power(n, j, b))
}

/// `(X_{w1} ... X_{wk})^{b,i}` where `marked` is the variable `i`.
pub fn word_power_marked(n: usize, word: &[usize], b: &MultiIndex, marked: usize) -> Result<PcPoly> {
    if !word.contains(&marked) {
        return Err(Error::MarkedNotInWord(marked + 1));
    }
    Ok(word
        .iter()
        .fold(PcPoly::one(n), |acc, &j| &acc * &x_power_marked(n, j, b, marked)))
}

impl Add for &PcPoly {
    type Output = PcPoly;
    fn add(self, rhs: &PcPoly) -> PcPoly {
        self.checked_add(rhs).expect("adding polynomials over different variable sets")
    }
}

impl Sub for &PcPoly {
    type Output = PcPoly;
    fn sub(self, rhs: &PcPoly) -> PcPoly {
        self.checked_add(&-rhs).expect("subtracting polynomials over different variable sets")
    }
}

impl Mul for &PcPoly {
    type Output = PcPoly;
    fn mul(self, rhs: &PcPoly) -> PcPoly {
        self.checked_mul(rhs).expect("multiplying polynomials over different variable sets")
    }
}

impl Neg for &PcPoly {
    type Output = PcPoly;
    fn neg(self) -> PcPoly {
        PcPoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for PcPoly {
    /// Canonical rendering, e.g. `-X1*V + 3/2*U^2*V*X1*X2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c < &Q::zero();
            let abs = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                f.write_str(&rational::render(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", rational::render(&abs))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn additive_laws() {
        let f = &(&PcPoly::x(2, 0) + &PcPoly::u(2)) * &PcPoly::v(2);
        assert_eq!(&f + &PcPoly::zero(2), f);
        assert!((&f + &f.scale(&q(-1))).is_zero());
        let uv = &PcPoly::u(2) * &PcPoly::v(2);
        let a = &PcPoly::x(2, 0) + &uv;
        let b = &PcPoly::x(2, 0) - &uv;
        assert_eq!(&a + &b, PcPoly::x(2, 0).scale(&q(2)));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        assert_eq!(
            PcPoly::x(1, 0).checked_add(&PcPoly::x(2, 0)),
            Err(Error::ArityMismatch { left: 1, right: 2 })
        );
        assert!(PcPoly::x(1, 0).checked_mul(&PcPoly::x(2, 0)).is_err());
    }

    #[test]
    fn u_and_v_commute_but_x_do_not() {
        let n = 2;
        assert_eq!(&PcPoly::u(n) * &PcPoly::v(n), &PcPoly::v(n) * &PcPoly::u(n));
        assert_eq!(
            (&PcPoly::u(n) * &PcPoly::v(n)).terms().next().unwrap().0,
            &AltMonomial::block(1, 1)
        );
        let x12 = &PcPoly::x(n, 0) * &PcPoly::x(n, 1);
        let x21 = &PcPoly::x(n, 1) * &PcPoly::x(n, 0);
        assert_ne!(x12, x21);
        assert_eq!(x12.terms().next().unwrap().0, &AltMonomial::word(vec![0, 1]));
    }

    #[test]
    fn blocks_merge_across_products() {
        let n = 1;
        let left = &PcPoly::x(n, 0) * &PcPoly::v(n);
        let right = &PcPoly::v(n) * &PcPoly::x(n, 0);
        let prod = &left * &right;
        let expected = AltMonomial::from_segments(vec![
            Segment::Word(vec![0]),
            Segment::Block { u: 0, v: 2 },
            Segment::Word(vec![0]),
        ]);
        assert_eq!(prod, PcPoly::monomial(n, expected, q(1)));
    }

    #[test]
    fn commutators() {
        let n = 1;
        assert!(PcPoly::v(n).commutator(&PcPoly::v(n)).is_zero());
        let c = PcPoly::v(n).commutator(&PcPoly::x(n, 0));
        assert_eq!(c.len(), 2);
        assert_eq!(c.render(), "-X1*V + V*X1");
        assert_eq!(PcPoly::v(n).ad_pow(&PcPoly::x(n, 0), 0), PcPoly::x(n, 0));
    }

    #[test]
    fn powers_of_single_variables() {
        let vx1 = PcPoly::v(2).commutator(&PcPoly::x(2, 0));
        assert_eq!(x_power(2, 0, &mi(&[1, 0])), vx1);
        assert_eq!(x_power(2, 1, &mi(&[1, 0])), PcPoly::x(2, 1));
        assert_eq!(x_power(2, 0, &mi(&[0, 1])), PcPoly::x(2, 0));
    }

    #[test]
    fn marked_word_powers() {
        let n = 2;
        let ux1 = PcPoly::u(n).commutator(&PcPoly::x(n, 0));
        let vx2 = PcPoly::v(n).commutator(&PcPoly::x(n, 1));
        assert_eq!(word_power_marked(n, &[0, 1], &mi(&[0, 1]), 0).unwrap(), &ux1 * &vx2);
        let ux2 = PcPoly::u(n).commutator(&PcPoly::x(n, 1));
        let vx1 = PcPoly::v(n).commutator(&PcPoly::x(n, 0));
        assert_eq!(word_power_marked(n, &[1, 0], &mi(&[1, 0]), 1).unwrap(), &ux2 * &vx1);
        assert_eq!(
            word_power(n, &[0, 1], &mi(&[0, 0])),
            &PcPoly::x(n, 0) * &PcPoly::x(n, 1)
        );
        assert_eq!(
            word_power_marked(3, &[0, 1], &mi(&[0, 0, 0]), 2),
            Err(Error::MarkedNotInWord(3))
        );
    }

    #[test]
    fn pi_substitution() {
        let n = 1;
        let uv = &PcPoly::u(n) * &PcPoly::v(n);
        for k in 0..4 {
            assert_eq!(uv.pi(k), PcPoly::v_pow(n, k + 1));
        }
        let x = PcPoly::x(n, 0);
        assert!(PcPoly::u(n).commutator(&x).pi(0).is_zero());
        for r in 0..4 {
            let marked = PcPoly::u(n).commutator(&PcPoly::v(n).ad_pow(&x, r));
            assert_eq!(marked.pi(1), PcPoly::v(n).ad_pow(&x, r + 1));
        }
        // U^2 V between two X-words collapses to a V block, and U alone disappears under pi_0
        let f = &(&x * &PcPoly::u(n)) * &x;
        assert_eq!(f.pi(0), &x * &x);
        assert_eq!(f.pi(0).render(), "X1^2");
    }

    #[test]
    fn rendering() {
        let n = 2;
        let f = &(&PcPoly::u(n).pow(2) * &PcPoly::v(n)) * &PcPoly::x(n, 0);
        let g = &PcPoly::x(n, 0) * &PcPoly::x(n, 1);
        let h = &f.scale(&rational::q_frac(3, 2)) - &g;
        assert_eq!(h.render(), "-X1*X2 + 3/2*U^2*V*X1");
        assert_eq!(PcPoly::zero(n).render(), "0");
        assert_eq!(PcPoly::constant(n, q(-2)).render(), "-2");
    }
}
