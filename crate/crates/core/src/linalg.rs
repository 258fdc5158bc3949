//! Exact linear algebra on sparse integer rows.
//!
//! Rows are reduced fraction-free: combining two rows multiplies each by the
//! other's leading entry (divided by their gcd) and the result is divided by
//! the gcd of its entries. Rational values only appear in back-substitution.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Q;

/// Sparse row: column index to nonzero integer.
pub type SparseRow = BTreeMap<usize, BigInt>;

/// Scales a rational row to a primitive integer row with the same span.
pub fn integer_row(row: &BTreeMap<usize, Q>) -> SparseRow {
    let lcm = row
        .values()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: SparseRow = row
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(&c, x)| (c, x.numer() * (&lcm / x.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut SparseRow) {
    let g = row.values().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.values_mut() {
            *x /= &g;
        }
    }
}

/// Row echelon form built incrementally; each stored row has a distinct
/// leading column and no entries left of it.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `row` against the stored pivots and returns the remainder
    /// (empty iff `row` is in the span).
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        row.retain(|_, x| !x.is_zero());
        loop {
            let (lead, lead_val) = match row.iter().next() {
                Some((&c, x)) => (c, x.clone()),
                None => return row,
            };
            let pivot = match self.pivots.get(&lead) {
                Some(p) => p,
                None => return row,
            };
            let pivot_val = &pivot[&lead];
            let g = lead_val.gcd(pivot_val);
            let row_mul = pivot_val / &g;
            let piv_mul = &lead_val / &g;
            for x in row.values_mut() {
                *x *= &row_mul;
            }
            for (&c, x) in pivot {
                let entry = row.entry(c).or_insert_with(BigInt::zero);
                *entry -= x * &piv_mul;
            }
            row.retain(|_, x| !x.is_zero());
            make_primitive(&mut row);
        }
    }

    /// Adds a row; returns true if it increased the rank.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut rest = self.reduce(row);
        let lead = match rest.keys().next() {
            Some(&c) => c,
            None => return false,
        };
        if rest[&lead].is_negative() {
            for x in rest.values_mut() {
                *x = -x.clone();
            }
        }
        self.pivots.insert(lead, rest);
        true
    }

    /// Back-substitutes given values for the free (non-pivot) columns in
    /// `0..ncols`; returns the full assignment solving every stored row = 0.
    fn back_substitute(&self, ncols: usize, free: &BTreeMap<usize, Q>) -> Vec<Q> {
        let mut x = vec![Q::zero(); ncols];
        for (&c, v) in free {
            x[c] = v.clone();
        }
        for (&lead, row) in self.pivots.iter().rev() {
            let mut acc = Q::zero();
            for (&c, a) in row.range(lead + 1..) {
                acc += Q::from_integer(a.clone()) * &x[c];
            }
            x[lead] = -acc / Q::from_integer(row[&lead].clone());
        }
        x
    }
}

/// Rank of a family of sparse integer rows.
pub fn rank<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut e = Echelon::new();
    for row in rows {
        e.insert(row);
    }
    e.rank()
}

/// Basis of `{x : A x = 0}` where `A` has the given rows over `ncols` columns.
pub fn nullspace<I: IntoIterator<Item = SparseRow>>(rows: I, ncols: usize) -> Vec<Vec<Q>> {
    let mut e = Echelon::new();
    for row in rows {
        debug_assert!(row.keys().all(|&c| c < ncols));
        e.insert(row);
    }
    let pivots: Vec<usize> = e.pivot_columns().collect();
    (0..ncols)
        .filter(|c| pivots.binary_search(c).is_err())
        .map(|free_col| {
            let mut free = BTreeMap::new();
            for c in 0..ncols {
                if pivots.binary_search(&c).is_err() {
                    free.insert(c, if c == free_col { Q::one() } else { Q::zero() });
                }
            }
            e.back_substitute(ncols, &free)
        })
        .collect()
}

/// Solves `A x = b` for rational sparse rows `A` (over `ncols` unknowns).
///
/// Returns one solution (free unknowns set to zero), or `None` if the system
/// is inconsistent.
pub fn solve(rows: &[(BTreeMap<usize, Q>, Q)], ncols: usize) -> Option<Vec<Q>> {
    let mut e = Echelon::new();
    for (a, b) in rows {
        let mut aug = a.clone();
        // rhs column sits right of every unknown so it never becomes a pivot
        // unless the system is inconsistent
        if !b.is_zero() {
            aug.insert(ncols, -b.clone());
        }
        e.insert(integer_row(&aug));
    }
    if e.pivots.contains_key(&ncols) {
        return None;
    }
    let mut free = BTreeMap::new();
    for c in 0..ncols {
        if !e.pivots.contains_key(&c) {
            free.insert(c, Q::zero());
        }
    }
    free.insert(ncols, Q::one());
    let mut x = e.back_substitute(ncols + 1, &free);
    x.truncate(ncols);
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(c, v)| (c, BigInt::from(v))).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(vec![row(&[(0, 1), (1, 2)]), row(&[(0, 2), (1, 4)])]), 1);
        assert_eq!(rank(vec![row(&[(0, 1)]), row(&[(1, 3)]), row(&[(0, 1), (1, 1)])]), 2);
        assert_eq!(rank(Vec::<SparseRow>::new()), 0);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let rows = vec![row(&[(0, 1), (1, 1), (2, 1)]), row(&[(1, 2), (3, -1)])];
        let ns = nullspace(rows.clone(), 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                let s: Q = r.iter().map(|(&c, a)| Q::from_integer(a.clone()) * &v[c]).sum();
                assert!(s.is_zero());
            }
        }
        assert_eq!(nullspace(Vec::<SparseRow>::new(), 3).len(), 3);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let a0: BTreeMap<usize, Q> = [(0, q(1)), (1, q(1))].into_iter().collect();
        let a1: BTreeMap<usize, Q> = [(0, q(2)), (1, q(2))].into_iter().collect();
        assert!(solve(&[(a0.clone(), q(1)), (a1.clone(), q(3))], 2).is_none());
        let x = solve(&[(a0, q(1)), (a1, q(2))], 2).unwrap();
        assert_eq!(&x[0] + &x[1], q(1));
    }

    #[test]
    fn solve_unique_system() {
        let a0: BTreeMap<usize, Q> = [(0, q(2)), (1, q(1))].into_iter().collect();
        let a1: BTreeMap<usize, Q> = [(0, q(1)), (1, q(-1))].into_iter().collect();
        let x = solve(&[(a0, q(5)), (a1, q(1))], 2).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
    }
}
