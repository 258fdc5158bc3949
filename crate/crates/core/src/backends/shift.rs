//! Endomorphisms of a countable-dimensional space with basis `e_1, e_2, ...`.
//!
//! An operator is described lazily by how to produce its columns (the images
//! `x(e_n)`, each finitely supported). Columns of composite operators are
//! computed on demand and memoized. Two operators are considered equal by
//! [`ShiftAlgebra`] when their columns agree on a probe window `1..=probe`.
//!
//! The memo caches use `RefCell`, so a `ShiftOp` is confined to the thread that
//! built it (`ShiftOp` is neither `Send` nor `Sync`).

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use num_traits::{One, Zero};

use super::EvaluationAlgebra;
use crate::rational::Q;

/// Default number of probed columns.
pub const DEFAULT_PROBE: usize = 20;

/// Finitely supported vector: basis index (from 1) to nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Q>;

fn axpy(acc: &mut SparseVec, c: &Q, x: &SparseVec, shift: usize) {
    if c.is_zero() {
        return;
    }
    for (&i, y) in x {
        let entry = acc.entry(i + shift).or_insert_with(Q::zero);
        *entry += c * y;
        if entry.is_zero() {
            acc.remove(&(i + shift));
        }
    }
}

enum Node {
    Zero,
    Identity,
    /// `v^k`, sending `e_n` to `e_{n+k}`.
    VPow(u32),
    /// Listed columns; every other column is zero.
    Explicit(BTreeMap<usize, SparseVec>),
    Sum(ShiftOp, ShiftOp),
    Scale(Q, ShiftOp),
    /// `a * b`, applied right to left.
    Compose(ShiftOp, ShiftOp),
    /// `x` with `x(e_1) = 0`, `x(e_n) = -sum_{m<n} v^{n-1-m} y(e_m)`, so `[v, x] = y`.
    SolveInner(ShiftOp),
}

struct Inner {
    node: Node,
    cache: RefCell<BTreeMap<usize, SparseVec>>,
}

#[derive(Clone)]
pub struct ShiftOp(Rc<Inner>);

impl ShiftOp {
    fn from_node(node: Node) -> Self {
        ShiftOp(Rc::new(Inner { node, cache: RefCell::new(BTreeMap::new()) }))
    }

    pub fn zero() -> Self {
        Self::from_node(Node::Zero)
    }

    pub fn identity() -> Self {
        Self::from_node(Node::Identity)
    }

    /// The shift `v^k`.
    pub fn v_pow(k: u32) -> Self {
        if k == 0 {
            return Self::identity();
        }
        Self::from_node(Node::VPow(k))
    }

    /// Operator with the given columns (1-based) and zero elsewhere.
    pub fn explicit(columns: BTreeMap<usize, SparseVec>) -> Self {
        let columns: BTreeMap<usize, SparseVec> = columns
            .into_iter()
            .map(|(n, mut col)| {
                col.retain(|_, c| !c.is_zero());
                (n, col)
            })
            .filter(|(n, col)| *n >= 1 && !col.is_empty())
            .collect();
        if columns.is_empty() {
            return Self::zero();
        }
        Self::from_node(Node::Explicit(columns))
    }

    fn is_zero_node(&self) -> bool {
        matches!(self.0.node, Node::Zero)
    }

    fn is_identity_node(&self) -> bool {
        matches!(self.0.node, Node::Identity)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero_node() {
            return other.clone();
        }
        if other.is_zero_node() {
            return self.clone();
        }
        Self::from_node(Node::Sum(self.clone(), other.clone()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() || self.is_zero_node() {
            return Self::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Self::from_node(Node::Scale(c.clone(), self.clone()))
    }

    /// `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        if self.is_zero_node() || other.is_zero_node() {
            return Self::zero();
        }
        if self.is_identity_node() {
            return other.clone();
        }
        if other.is_identity_node() {
            return self.clone();
        }
        if let (Node::VPow(a), Node::VPow(b)) = (&self.0.node, &other.0.node) {
            return Self::v_pow(a + b);
        }
        Self::from_node(Node::Compose(self.clone(), other.clone()))
    }

    /// One-step inverse of `ad_v`.
    pub fn solve_inner_1(&self) -> Self {
        if self.is_zero_node() {
            return Self::zero();
        }
        Self::from_node(Node::SolveInner(self.clone()))
    }

    /// `x(e_n)` for `n >= 1`.
    pub fn column(&self, n: usize) -> SparseVec {
        assert!(n >= 1, "basis indices start at 1");
        match &self.0.node {
            Node::Zero => return SparseVec::new(),
            Node::Identity => return [(n, Q::one())].into_iter().collect(),
            Node::VPow(k) => return [(n + *k as usize, Q::one())].into_iter().collect(),
            Node::Explicit(cols) => return cols.get(&n).cloned().unwrap_or_default(),
            _ => {}
        }
        if let Some(col) = self.0.cache.borrow().get(&n) {
            return col.clone();
        }
        let col = match &self.0.node {
            Node::Sum(a, b) => {
                let mut acc = a.column(n);
                axpy(&mut acc, &Q::one(), &b.column(n), 0);
                acc
            }
            Node::Scale(c, a) => a.column(n).into_iter().map(|(i, x)| (i, x * c)).collect(),
            Node::Compose(a, b) => {
                let mut acc = SparseVec::new();
                for (m, c) in b.column(n) {
                    axpy(&mut acc, &c, &a.column(m), 0);
                }
                acc
            }
            Node::SolveInner(y) => {
                let mut acc = SparseVec::new();
                for m in 1..n {
                    axpy(&mut acc, &-Q::one(), &y.column(m), n - 1 - m);
                }
                acc
            }
            Node::Zero | Node::Identity | Node::VPow(_) | Node::Explicit(_) => unreachable!(),
        };
        self.0.cache.borrow_mut().insert(n, col.clone());
        col
    }

    /// Columns `1..=count`.
    pub fn columns(&self, count: usize) -> Vec<(usize, SparseVec)> {
        (1..=count).map(|n| (n, self.column(n))).collect()
    }

    pub fn agrees_on(&self, other: &Self, probe: usize) -> bool {
        (1..=probe).all(|n| self.column(n) == other.column(n))
    }
}

impl fmt::Debug for ShiftOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<(usize, SparseVec)> = self
            .columns(4)
            .into_iter()
            .filter(|(_, c)| !c.is_empty())
            .collect();
        f.debug_struct("ShiftOp").field("first_columns", &cols).finish()
    }
}

/// `End(V)` for `V` with countable basis, `v` the shift `e_n -> e_{n+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftAlgebra {
    pub probe: usize,
}

impl Default for ShiftAlgebra {
    fn default() -> Self {
        ShiftAlgebra { probe: DEFAULT_PROBE }
    }
}

impl ShiftAlgebra {
    pub fn with_probe(probe: usize) -> Self {
        ShiftAlgebra { probe }
    }
}

impl EvaluationAlgebra for ShiftAlgebra {
    type Elem = ShiftOp;

    fn zero(&self) -> ShiftOp {
        ShiftOp::zero()
    }

    fn one(&self) -> ShiftOp {
        ShiftOp::identity()
    }

    fn v(&self) -> ShiftOp {
        ShiftOp::v_pow(1)
    }

    fn add(&self, a: &ShiftOp, b: &ShiftOp) -> ShiftOp {
        a.add(b)
    }

    fn mul(&self, a: &ShiftOp, b: &ShiftOp) -> ShiftOp {
        a.compose(b)
    }

    fn scale(&self, a: &ShiftOp, c: &Q) -> ShiftOp {
        a.scale(c)
    }

    fn equal(&self, a: &ShiftOp, b: &ShiftOp) -> bool {
        a.agrees_on(b, self.probe)
    }

    fn solve_inner(&self, y: &ShiftOp, k: usize) -> ShiftOp {
        (0..k).fold(y.clone(), |acc, _| acc.solve_inner_1())
    }

    fn pow(&self, a: &ShiftOp, e: u32) -> ShiftOp {
        if let Node::VPow(k) = a.0.node {
            return ShiftOp::v_pow(k * e);
        }
        (0..e).fold(self.one(), |acc, _| acc.compose(a))
    }
}
