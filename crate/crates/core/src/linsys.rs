//! The linear system whose only solution is zero exactly when every nonzero
//! type-two polynomial survives some specialization `U -> V^k`.
//!
//! Unknowns are `m^i_b` for `b` in `B_r` and `i` in `0..n`. For each `k >= 1`
//! and `b` in `B_{r+k}` there is one equation
//!
//! ```text
//! sum_i sum_{c in C^sigma_{k,i}} mu^sigma_{c,i} m^i_{b-c} = 0,
//! ```
//!
//! where unknowns with `b - c` outside `B_r` are zero. Its row for `(k, b)` is
//! the coefficient of `(X_sigma)^b` in `h_k`, so the system can be checked
//! against the solver. Equations can also be produced from polynomial
//! families in commuting shift variables `W_1..W_n`, which is how the
//! elimination of one recurrence by another is expressed.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::combinatorics::{c_set, compositions, multinomial_mu, MultiIndex, Perm};
use crate::linalg::{self, SparseRow};
use crate::rational::{self, q_int, Q};
use crate::{Error, Result};

/// The unknown `m^i_b`; `i` is a word position, matching the marked position
/// of a type-two generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnknownIndex {
    pub b: MultiIndex,
    pub i: usize,
}

impl fmt::Display for UnknownIndex {
    /// `m1_(1,0)`, variable index 1-based.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}_{}", self.i + 1, self.b)
    }
}

/// A linear equation `sum c_t m_t = 0` with terms in display order. Terms may
/// reference unknowns outside `B_r`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Equation {
    pub terms: Vec<(BigInt, UnknownIndex)>,
}

impl Equation {
    /// Drops the unknowns that are not in `B_r`.
    pub fn restricted(&self, r: usize) -> Equation {
        Equation {
            terms: self.terms.iter().filter(|(_, u)| u.b.is_composition_of(r)).cloned().collect(),
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0 = 0");
        }
        for (idx, (c, u)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{u}")?;
        }
        f.write_str(" = 0")
    }
}

/// Row label `(k, b)` with `b` in `B_{r+k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowLabel {
    pub k: usize,
    pub b: MultiIndex,
}

/// Rows for `k = 1..=k_max`, `b` in `B_{r+k}`, over the columns `(b', i)`.
#[derive(Clone, Debug)]
pub struct SystemMatrix {
    pub sigma: Perm,
    pub r: usize,
    pub k_max: usize,
    pub rows: Vec<RowLabel>,
    pub entries: Vec<SparseRow>,
    pub columns: Vec<UnknownIndex>,
}

impl SystemMatrix {
    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column_of(&self, u: &UnknownIndex) -> Option<usize> {
        self.columns.binary_search_by(|c| column_order(c, u)).ok()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.entries.iter().cloned())
    }

    /// The equation of row `idx`, unknowns outside `B_r` dropped.
    pub fn equation(&self, idx: usize) -> Equation {
        let RowLabel { k, b } = &self.rows[idx];
        row_equation(&self.sigma, *k, b).restricted(self.r)
    }
}

// columns are ordered like `compositions` (lex descending), then by i
fn column_order(a: &UnknownIndex, b: &UnknownIndex) -> core::cmp::Ordering {
    b.b.cmp(&a.b).then(a.i.cmp(&b.i))
}

/// The equation for `(k, b)` with every term, including unknowns outside `B_r`.
/// `b` may be any integer vector.
pub fn row_equation(sigma: &Perm, k: usize, b: &MultiIndex) -> Equation {
    let n = sigma.len();
    let mut terms = Vec::new();
    for i in 0..n {
        for c in c_set(sigma, k, i) {
            let mu = multinomial_mu(sigma, &c, i).expect("compositions are nonnegative");
            terms.push((mu, UnknownIndex { b: b - &c, i }));
        }
    }
    Equation { terms }
}

pub fn gen_system(sigma: &Perm, n: usize, r: usize, k_max: usize) -> Result<SystemMatrix> {
    if sigma.len() != n {
        return Err(Error::ArityMismatch { left: n, right: sigma.len() });
    }
    let columns: Vec<UnknownIndex> = compositions(n, r)
        .into_iter()
        .flat_map(|b| (0..n).map(move |i| UnknownIndex { b: b.clone(), i }))
        .collect();
    let mut sys = SystemMatrix { sigma: sigma.clone(), r, k_max, rows: Vec::new(), entries: Vec::new(), columns };
    for k in 1..=k_max {
        for b in compositions(n, r + k) {
            let eq = row_equation(sigma, k, &b).restricted(r);
            let mut row = SparseRow::new();
            for (c, u) in eq.terms {
                let col = sys.column_of(&u).expect("restricted unknowns are columns");
                *row.entry(col).or_insert_with(BigInt::zero) += c;
            }
            row.retain(|_, c| !c.is_zero());
            sys.rows.push(RowLabel { k, b });
            sys.entries.push(row);
        }
    }
    Ok(sys)
}

/// Basis of the rational kernel.
pub fn nullspace(m: &SystemMatrix) -> Vec<Vec<Q>> {
    linalg::nullspace(m.entries.iter().cloned(), m.ncols())
}

/// Commutative polynomial in `W_1..W_n`, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CommPoly {
    n: usize,
    terms: BTreeMap<Vec<u32>, Q>,
}

impl CommPoly {
    pub fn zero(n: usize) -> Self {
        CommPoly { n, terms: BTreeMap::new() }
    }

    pub fn monomial(exponents: Vec<u32>, c: Q) -> Self {
        let mut p = Self::zero(exponents.len());
        p.add_term(exponents, c);
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, c: Q) {
        assert_eq!(exponents.len(), self.n, "exponent vector length");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponents.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exponents);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &Q)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree in `W_i` (0-based); `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// True if only `W_from, ..., W_n` occur.
    pub fn uses_only_from(&self, from: usize) -> bool {
        self.terms.keys().all(|e| e[..from].iter().all(|&x| x == 0))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.n);
        for (e, x) in &self.terms {
            out.add_term(e.clone(), x * c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(p, q)| p + q).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }
}

impl fmt::Display for CommPoly {
    /// Largest exponent vector first, e.g. `W1^2*W2 + W1*W2^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Q::zero();
            let abs = if negative { -c } else { c.clone() };
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(j, &p)| if p == 1 { format!("W{}", j + 1) } else { format!("W{}^{p}", j + 1) })
                .collect();
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

/// The order-`k` recurrence of the system for `sigma = id`:
/// `f_i = sum_{c in C_{k,i}} mu_{c,i} W^c`, a polynomial in `W_i..W_n` of
/// degree exactly `k` in `W_i`.
pub fn recurrence_family(n: usize, k: usize) -> Vec<CommPoly> {
    let id = Perm::identity(n);
    (0..n)
        .map(|i| {
            let mut f = CommPoly::zero(n);
            for c in c_set(&id, k, i) {
                let mu = multinomial_mu(&id, &c, i).expect("compositions are nonnegative");
                f.add_term(c.entries().iter().map(|&x| x as u32).collect(), q_int(&mu));
            }
            f
        })
        .collect()
}

/// The equation `sum_i f_i(W) m^i` read at `b`, where `W_j` lowers `b_j` by one.
/// `family` pairs each variable index with its polynomial.
pub fn family_equation(family: &[(usize, CommPoly)], b: &MultiIndex) -> Result<Equation> {
    let mut terms = Vec::new();
    for (i, f) in family {
        for (e, c) in f.terms().rev() {
            if !c.is_integer() {
                return Err(Error::Precondition(format!("non-integral coefficient {c}")));
            }
            let shift = MultiIndex::new(e.iter().map(|&x| x as i64).collect());
            terms.push((c.to_integer(), UnknownIndex { b: b - &shift, i: *i }));
        }
    }
    Ok(Equation { terms })
}

/// Eliminates the last active index from relation `j` using relation `l`:
/// `g_i = f_{pivot,l} f_{i,j} - f_{pivot,j} f_{i,l}`.
///
/// `active` lists increasing variable indices whose last entry is the pivot.
/// `fj[t]` and `fl[t]` are the polynomials for `active[t]`; they must have
/// degree `kj` and `kl` in their own variable with `kj > kl`, and use only
/// variables from their index on; the pivot entry of `fj` may also be zero.
/// The pivot entry of the result is zero and
/// every other entry keeps degree `kj` in its own variable.
pub fn eliminate_recurrence_pair(
    active: &[usize],
    fj: &[CommPoly],
    fl: &[CommPoly],
    kj: u32,
    kl: u32,
) -> Result<Vec<CommPoly>> {
    let l = active.len();
    if l == 0 || fj.len() != l || fl.len() != l {
        return Err(Error::ArityMismatch { left: l, right: fj.len().min(fl.len()) });
    }
    if kj <= kl {
        return Err(Error::Degree(format!("orders must decrease, got {kj} <= {kl}")));
    }
    for (t, &i) in active.iter().enumerate() {
        if t > 0 && active[t - 1] >= i {
            return Err(Error::Precondition("active indices must increase".into()));
        }
        for (f, k) in [(&fj[t], kj), (&fl[t], kl)] {
            // a vanishing pivot entry in relation j only rescales the others
            if t + 1 == l && k == kj && f.is_zero() {
                continue;
            }
            if f.degree_in(i) != Some(k) || !f.uses_only_from(i) {
                return Err(Error::Degree(format!("W{} degree of {f} is not {k}", i + 1)));
            }
        }
    }
    let pivot_l = &fl[l - 1];
    let pivot_j = &fj[l - 1];
    let g: Vec<CommPoly> = (0..l).map(|t| pivot_l.mul(&fj[t]).sub(&pivot_j.mul(&fl[t]))).collect();
    debug_assert!(g[l - 1].is_zero());
    for (t, &i) in active[..l - 1].iter().enumerate() {
        if g[t].degree_in(i) != Some(kj) {
            return Err(Error::Degree(format!("elimination changed the W{} degree", i + 1)));
        }
    }
    Ok(g)
}

/// Repeated elimination down to a single relation on the first variable.
///
/// `relations` holds `(k, family over 0..n)` with strictly decreasing `k`;
/// there must be `n` of them. Returns the surviving polynomial for variable 0,
/// of degree equal to the largest `k` in `W_1`.
pub fn reduce_to_first(relations: &[(u32, Vec<CommPoly>)]) -> Result<CommPoly> {
    let n = relations.len();
    if n == 0 {
        return Err(Error::EmptyCoefficients);
    }
    let mut current: Vec<(u32, Vec<CommPoly>)> = relations.to_vec();
    let mut active: Vec<usize> = (0..n).collect();
    while active.len() > 1 {
        let (kl, fl) = current.pop().expect("one relation per active index");
        let mut next = Vec::with_capacity(current.len());
        for (kj, fj) in &current {
            let mut g = eliminate_recurrence_pair(&active, fj, &fl, *kj, kl)?;
            g.pop();
            next.push((*kj, g));
        }
        active.pop();
        current = next;
    }
    Ok(current.swap_remove(0).1.swap_remove(0))
}

/// One labelled block of the worked example layout.
#[derive(Clone, Debug)]
pub struct EquationBlock {
    pub title: String,
    pub equations: Vec<Equation>,
}

/// The worked example `n = 2`, `r = 1`: the `k = 1` equations extended by one
/// trivial row, the `k = 2` equations, and their difference after
/// eliminating `m^2`.
pub fn worked_example_blocks() -> Vec<EquationBlock> {
    let id = Perm::identity(2);
    let mi = |a: i64, b: i64| MultiIndex::new(vec![a, b]);
    let k1_rows = [mi(3, -1), mi(2, 0), mi(1, 1), mi(0, 2)];
    let k2_rows: Vec<MultiIndex> = compositions(2, 3);
    let f1 = recurrence_family(2, 1);
    let f2 = recurrence_family(2, 2);
    let g = eliminate_recurrence_pair(&[0, 1], &f2, &f1, 2, 1).expect("orders 2 > 1");
    let diff: Vec<(usize, CommPoly)> = vec![(0, g[0].clone())];
    let diff_rows = k2_rows.iter().map(|b| b + &MultiIndex::unit(2, 1));
    vec![
        EquationBlock {
            title: "k = 1 (extended)".into(),
            equations: k1_rows.iter().map(|b| row_equation(&id, 1, b)).collect(),
        },
        EquationBlock {
            title: "k = 2".into(),
            equations: k2_rows.iter().map(|b| row_equation(&id, 2, b)).collect(),
        },
        EquationBlock {
            title: "k = 2 minus k = 1".into(),
            equations: diff_rows.map(|b| family_equation(&diff, &b).expect("integral")).collect(),
        },
    ]
}
