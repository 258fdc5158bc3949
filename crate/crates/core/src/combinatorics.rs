//! Multi-index enumeration and multinomial scalars.
//!
//! Variable positions are 0-based throughout: entry `j` of a [`MultiIndex`]
//! belongs to `X{j+1}`. All enumerations come out in lexicographically
//! descending order, e.g. `(2,0), (1,1), (0,2)`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::{Error, Result};

/// A vector of `n` integers. Nonnegative whenever it indexes a composition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<i64>);

impl MultiIndex {
    pub fn new(entries: Vec<i64>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The unit vector with `1` in position `j`.
    pub fn unit(n: usize, j: usize) -> Self {
        let mut e = vec![0; n];
        e[j] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Membership in `B_r`: nonnegative entries summing to `r`.
    pub fn is_composition_of(&self, r: usize) -> bool {
        self.is_nonnegative() && self.total() == r as i64
    }

    pub fn scaled(&self, s: i64) -> Self {
        MultiIndex(self.0.iter().map(|e| e * s).collect())
    }

    /// Drops the last entry.
    pub fn truncated(&self) -> Self {
        MultiIndex(self.0[..self.0.len() - 1].to_vec())
    }

    /// Appends `last` as a new final entry.
    pub fn extended(&self, last: i64) -> Self {
        let mut e = self.0.clone();
        e.push(last);
        MultiIndex(e)
    }

    pub fn with_entry(&self, j: usize, value: i64) -> Self {
        let mut e = self.0.clone();
        e[j] = value;
        MultiIndex(e)
    }
}

impl Index<usize> for MultiIndex {
    type Output = i64;
    fn index(&self, j: usize) -> &i64 {
        &self.0[j]
    }
}

impl Add for &MultiIndex {
    type Output = MultiIndex;
    fn add(self, rhs: &MultiIndex) -> MultiIndex {
        assert_eq!(self.len(), rhs.len(), "multi-index length mismatch");
        MultiIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &MultiIndex {
    type Output = MultiIndex;
    fn sub(self, rhs: &MultiIndex) -> MultiIndex {
        assert_eq!(self.len(), rhs.len(), "multi-index length mismatch");
        MultiIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// A permutation of `0..n`, stored as its array of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(n));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// Position `p` with `self.apply(p) == var`.
    pub fn position_of(&self, var: usize) -> Option<usize> {
        self.0.iter().position(|&x| x == var)
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if current.len() == n {
                out.push(Perm(current.clone()));
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    current.push(i);
                    rec(n, current, used, out);
                    current.pop();
                    used[i] = false;
                }
            }
        }
        rec(n, &mut current, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Perm {
    /// 1-based image list, e.g. `[2,1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("]")
    }
}

/// `B_r`: every `b` in `N_0^n` with entries summing to `r`.
pub fn compositions(n: usize, r: usize) -> Vec<MultiIndex> {
    assert!(n >= 1, "compositions need at least one slot");
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    fn rec(slots: usize, remaining: i64, current: &mut Vec<i64>, out: &mut Vec<MultiIndex>) {
        if slots == 1 {
            current.push(remaining);
            out.push(MultiIndex(current.clone()));
            current.pop();
            return;
        }
        for first in (0..=remaining).rev() {
            current.push(first);
            rec(slots - 1, remaining - first, current, out);
            current.pop();
        }
    }
    rec(n, r as i64, &mut current, &mut out);
    out
}

/// `C^sigma_{k,i}`: compositions `c` of `k` with `c[sigma(p)] = 0` for `p < i`
/// and `c[sigma(i)] >= 1`. `i` is a 0-based position in the word.
pub fn c_set(sigma: &Perm, k: usize, i: usize) -> Vec<MultiIndex> {
    let n = sigma.len();
    compositions(n, k)
        .into_iter()
        .filter(|c| (0..i).all(|p| c[sigma.apply(p)] == 0) && c[sigma.apply(i)] >= 1)
        .collect()
}

/// `D_{t,i}`: compositions `d` of `t` with `d[j] = 0` for all `j < i` (0-based).
pub fn d_set(t: usize, i: usize, n: usize) -> Vec<MultiIndex> {
    assert!(i < n, "d_set position out of range");
    compositions(n, t)
        .into_iter()
        .filter(|d| (0..i).all(|j| d[j] == 0))
        .collect()
}

/// The decomposition `D_{t,i} = disjoint union over s of s*e_i + D_{t-s,i+1}`.
///
/// Returns `(s, d')` pairs; for `i = n-1` only `s = t` with `d' = 0` occurs.
pub fn d_set_split(t: usize, i: usize, n: usize) -> Vec<(usize, MultiIndex)> {
    let mut out = Vec::new();
    for s in 0..=t {
        if i + 1 == n {
            if s == t {
                out.push((s, MultiIndex::zero(n)));
            }
            continue;
        }
        for d in d_set(t - s, i + 1, n) {
            out.push((s, d));
        }
    }
    out
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// `(sum parts)! / prod(parts!)`.
pub fn multinomial(parts: &[i64]) -> Result<BigInt> {
    if parts.iter().any(|&p| p < 0) {
        return Err(Error::NegativeEntry);
    }
    let total: i64 = parts.iter().sum();
    let mut acc = factorial(total as u64);
    for &p in parts {
        acc /= factorial(p as u64);
    }
    Ok(acc)
}

/// `mu^sigma_{c,i} = multinomial(c[sigma(i)], ..., c[sigma(n-1)])`.
pub fn multinomial_mu(sigma: &Perm, c: &MultiIndex, i: usize) -> Result<BigInt> {
    if !c.is_nonnegative() {
        return Err(Error::NegativeEntry);
    }
    let parts: Vec<i64> = (i..sigma.len()).map(|p| c[sigma.apply(p)]).collect();
    multinomial(&parts)
}
