//! Constructive surjectivity: given a nonzero admissible polynomial `f` and a
//! target `a`, build `x_1, ..., x_n` (and `u` in `Q[v]`) with `f(x; u) = a`.
//!
//! The reduction is symbolic and independent of the algebra and the target:
//! [`Solver::plan`] records it as a [`ReductionTrace`], and [`replay`] turns a
//! trace into a witness for a concrete target. Three moves are used.
//!
//! * One variable. `lambda [V, X1]_r` is hit by `x1 = solve_inner(a / lambda, r)`;
//!   `lambda [U, [V, X1]_r]` with `u = v` by `x1 = solve_inner(a, r + 1) / lambda`.
//! * Type one, `n >= 2`. Substituting `X_n -> z_k u` with `k` the least bracket
//!   depth on `X_n` kills every term of larger depth, leaving a polynomial `g`
//!   in `X_1..X_{n-1}, U, V` that is linear in `U`. Either `g` with `U -> 1` is
//!   a nonzero type-one polynomial, or `g` itself is a nonzero type-two one.
//! * Type two. `U -> V^k` sends `f` to a type-one polynomial `h_k` of order
//!   `r + k` as soon as `h_1 = ... = h_{k-1} = 0`; some `h_k` is nonzero.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::backends::{evaluate, EvaluationAlgebra, VPoly, Witness};
use crate::combinatorics::{MultiIndex, Perm};
use crate::pcpoly::{p_poly, word_power, AdmissiblePoly, GenIndex, Kind, PcPoly};
use crate::rational::Q;
use crate::Error;

/// Coefficients of a type-one polynomial regrouped by where `X_n` sits:
/// `(tau, b, j)` stands for `(X_tau(0) .. X_n .. X_tau(n-2))^b` with `X_n`
/// inserted at word position `j`.
pub type SplitMap = BTreeMap<(Perm, MultiIndex, usize), Q>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("the zero polynomial has only 0 in its image")]
    ZeroPolynomial,
    #[error("no nonvanishing U -> V^k specialization with k <= {cap} (n = {n}, r = {r})")]
    KSearchExhausted { n: usize, r: usize, cap: usize },
    #[error("substitution X{n} -> z_{k} u changed the value")]
    LiftMismatch { n: usize, k: usize },
    #[error("reduced polynomial vanished for n = {n}, r = {r}")]
    ReducedToZero { n: usize, r: usize },
    #[error("malformed reduction trace: {0}")]
    MalformedTrace(alloc::string::String),
    #[error(transparent)]
    Algebra(#[from] Error),
}

impl SolveError {
    /// True for failures that indicate a broken invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            SolveError::KSearchExhausted { .. }
                | SolveError::LiftMismatch { .. }
                | SolveError::ReducedToZero { .. }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    /// One variable left: `lambda [V, X1]_r` or `lambda [U, [V, X1]_r]`.
    BaseCase { kind: Kind, r: usize, lambda: Q },
    /// Type one in `n` variables of order `r`, regrouped; `X_n -> z_k u`.
    SplitLastVar { n: usize, r: usize, k: usize, lambda_prime: SplitMap },
    /// `g` with `U -> 1` is nonzero; continue with it.
    TypeOneBranch,
    /// `g` with `U -> 1` vanishes; continue with `g` as a type-two polynomial.
    TypeTwoBranch { mu: AdmissiblePoly },
    /// `U -> V^k` is the first nonvanishing specialization.
    PiKSearch { k: usize },
}

/// The reduction steps from the input polynomial down to one variable.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

#[derive(Clone, Debug)]
pub struct Solution<E> {
    pub witness: Witness<E>,
    pub trace: ReductionTrace,
}

/// Regroups a type-one polynomial by the position of its last variable.
pub fn split_last_variable(f: &AdmissiblePoly) -> Result<SplitMap, Error> {
    if f.kind() != Kind::One {
        return Err(Error::KindMismatch);
    }
    let n = f.n();
    if n < 2 {
        return Err(Error::TooFewVariables);
    }
    let mut out = SplitMap::new();
    for (key, c) in f.coeffs() {
        let j = key.sigma.position_of(n - 1).expect("permutation contains every variable");
        let tau: Vec<usize> = key.sigma.images().iter().copied().filter(|&x| x != n - 1).collect();
        out.insert((Perm::new(tau)?, key.b.clone(), j), c.clone());
    }
    Ok(out)
}

/// Inverse of [`split_last_variable`].
pub fn merge_split(n: usize, r: usize, split: &SplitMap) -> Result<AdmissiblePoly, Error> {
    let mut f = AdmissiblePoly::new(n, r, Kind::One);
    for ((tau, b, j), c) in split {
        if tau.len() + 1 != n || *j >= n {
            return Err(Error::ArityMismatch { left: n, right: tau.len() + 1 });
        }
        let mut images = tau.images().to_vec();
        images.insert(*j, n - 1);
        f.add(GenIndex::one(Perm::new(images)?, b.clone()), c.clone())?;
    }
    Ok(f)
}

/// Least bracket depth on the last variable among the nonzero coefficients.
pub fn min_last_depth(split: &SplitMap) -> Option<usize> {
    split.keys().map(|(_, b, _)| b[b.len() - 1] as usize).min()
}

fn level(split: &SplitMap, k: usize) -> impl Iterator<Item = (&Perm, MultiIndex, usize, &Q)> {
    split
        .iter()
        .filter(move |((_, b, _), _)| b[b.len() - 1] == k as i64)
        .map(|((tau, b, j), c)| (tau, b.truncated(), *j, c))
}

/// `g = sum lambda'_{tau,b,j} (X_tau(0..j))^b' U (X_tau(j..))^b'` over the
/// entries whose last depth is `k`, where `b'` drops the last entry of `b`.
/// The result lives in `n - 1` variables.
pub fn substitute_xn(n: usize, split: &SplitMap, k: usize) -> Result<PcPoly, Error> {
    if n < 2 {
        return Err(Error::TooFewVariables);
    }
    let m = n - 1;
    let mut g = PcPoly::zero(m);
    let mut seen = false;
    for (tau, b, j, c) in level(split, k) {
        seen = true;
        let word = tau.images();
        let term = &(&word_power(m, &word[..j], &b) * &PcPoly::u(m)) * &word_power(m, &word[j..], &b);
        g = &g + &term.scale(c);
    }
    if !seen {
        return Err(Error::EmptyCoefficients);
    }
    Ok(g)
}

/// `g` with `U -> 1`, as a type-one polynomial in `n - 1` variables of order `r - k`.
pub fn collapse_positions(n: usize, r: usize, split: &SplitMap, k: usize) -> Result<AdmissiblePoly, Error> {
    let mut out = AdmissiblePoly::new(n - 1, r - k, Kind::One);
    for (tau, b, _, c) in level(split, k) {
        out.add(GenIndex::one(tau.clone(), b), c.clone())?;
    }
    Ok(out)
}

/// Rewrites `g` (when its `U -> 1` image vanishes) as the type-two polynomial
/// with coefficients `mu_{tau,b,i} = sum_{j <= i} lambda'_{tau,b,j}`.
pub fn type_two_from_g(n: usize, r: usize, split: &SplitMap, k: usize) -> Result<AdmissiblePoly, Error> {
    let m = n - 1;
    let mut grouped: BTreeMap<(Perm, MultiIndex), Vec<Q>> = BTreeMap::new();
    for (tau, b, j, c) in level(split, k) {
        grouped.entry((tau.clone(), b)).or_insert_with(|| vec![Q::zero(); n])[j] += c;
    }
    let mut out = AdmissiblePoly::new(m, r - k, Kind::Two);
    for ((tau, b), lambdas) in grouped {
        let total: Q = lambdas.iter().sum();
        if !total.is_zero() {
            return Err(Error::Precondition(format!(
                "coefficients of {tau} at {b} sum to {total}, not 0"
            )));
        }
        let mut partial = Q::zero();
        for (i, l) in lambdas.iter().take(m).enumerate() {
            partial += l;
            out.add(GenIndex::two(tau.clone(), b.clone(), i), partial.clone())?;
        }
    }
    Ok(out)
}

/// `h_k = sum lambda_{sigma,b,i} P^sigma_{b,i,k}`, the image of a type-two `f`
/// under `U -> V^k` once `h_1, ..., h_{k-1}` vanish.
pub fn pi_k_coefficients(f: &AdmissiblePoly, k: usize) -> Result<AdmissiblePoly, Error> {
    if f.kind() != Kind::Two {
        return Err(Error::KindMismatch);
    }
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let mut h = AdmissiblePoly::new(f.n(), f.order() + k, Kind::One);
    for (key, lambda) in f.coeffs() {
        let i = key.marked.expect("type-two generators are marked");
        for (g, c) in p_poly(&key.sigma, &key.b, i, k)?.coeffs() {
            h.add(g.clone(), c * lambda)?;
        }
    }
    Ok(h)
}

/// The least `k <= cap` with `h_k != 0`, together with `h_k`.
pub fn first_nonvanishing_k(f: &AdmissiblePoly, cap: usize) -> Result<Option<(usize, AdmissiblePoly)>, Error> {
    for k in 1..=cap {
        let h = pi_k_coefficients(f, k)?;
        if !h.is_zero() {
            return Ok(Some((k, h)));
        }
    }
    Ok(None)
}

/// Turns a witness for `g` into one for `f` by appending `x_n = z_k u(v)`; the
/// new `u` is `1`.
pub fn lift_witness_xvy<A: EvaluationAlgebra>(alg: &A, inner: &Witness<A::Elem>, k: usize) -> Witness<A::Elem> {
    let mut xs = inner.xs.clone();
    xs.push(alg.mul(&alg.z(k), &alg.v_poly(&inner.u)));
    Witness::new(xs, VPoly::one())
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Solver {
    check_lifts: bool,
    k_cap: Option<usize>,
}

impl Solver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Re-evaluates both sides of every `X_n -> z_k u` substitution.
    pub fn check_lifts(mut self, on: bool) -> Self {
        self.check_lifts = on;
        self
    }

    /// Overrides the default search bound `max(n, 8)` for `U -> V^k`.
    pub fn k_cap(mut self, cap: usize) -> Self {
        self.k_cap = Some(cap);
        self
    }

    fn cap_for(&self, n: usize) -> usize {
        self.k_cap.unwrap_or(n.max(8))
    }

    /// The reduction of `f`, independent of any algebra or target.
    pub fn plan(&self, f: &AdmissiblePoly) -> Result<ReductionTrace, SolveError> {
        if f.is_zero() {
            return Err(SolveError::ZeroPolynomial);
        }
        let mut trace = ReductionTrace::default();
        let mut current = f.clone();
        loop {
            let (n, r) = (current.n(), current.order());
            if current.is_zero() {
                return Err(SolveError::ReducedToZero { n, r });
            }
            if n == 1 {
                let (_, lambda) = current.coeffs().next().expect("nonzero");
                trace.steps.push(TraceStep::BaseCase { kind: current.kind(), r, lambda: lambda.clone() });
                return Ok(trace);
            }
            match current.kind() {
                Kind::Two => {
                    let cap = self.cap_for(n);
                    let (k, h) = first_nonvanishing_k(&current, cap)?
                        .ok_or(SolveError::KSearchExhausted { n, r, cap })?;
                    trace.steps.push(TraceStep::PiKSearch { k });
                    current = h;
                }
                Kind::One => {
                    let split = split_last_variable(&current)?;
                    let k = min_last_depth(&split).expect("nonzero");
                    let collapsed = collapse_positions(n, r, &split, k)?;
                    let branch = if collapsed.is_zero() {
                        let mu = type_two_from_g(n, r, &split, k)?;
                        if mu.is_zero() {
                            return Err(SolveError::ReducedToZero { n: n - 1, r: r - k });
                        }
                        current = mu.clone();
                        TraceStep::TypeTwoBranch { mu }
                    } else {
                        current = collapsed;
                        TraceStep::TypeOneBranch
                    };
                    trace.steps.push(TraceStep::SplitLastVar { n, r, k, lambda_prime: split });
                    trace.steps.push(branch);
                }
            }
        }
    }

    pub fn solve<A: EvaluationAlgebra>(
        &self,
        alg: &A,
        f: &AdmissiblePoly,
        target: &A::Elem,
    ) -> Result<Solution<A::Elem>, SolveError> {
        let trace = self.plan(f)?;
        let witness = replay_inner(&trace, target, alg, self.check_lifts)?;
        Ok(Solution { witness, trace })
    }
}

/// Rebuilds the witness for `target` from a trace, innermost step first.
pub fn replay<A: EvaluationAlgebra>(
    trace: &ReductionTrace,
    target: &A::Elem,
    alg: &A,
) -> Result<Witness<A::Elem>, SolveError> {
    replay_inner(trace, target, alg, false)
}

fn replay_inner<A: EvaluationAlgebra>(
    trace: &ReductionTrace,
    target: &A::Elem,
    alg: &A,
    check: bool,
) -> Result<Witness<A::Elem>, SolveError> {
    let malformed = |what: &str| SolveError::MalformedTrace(what.into());
    let mut steps = trace.steps.iter().rev();
    let mut witness = match steps.next() {
        Some(TraceStep::BaseCase { kind, r, lambda }) => {
            if lambda.is_zero() {
                return Err(malformed("zero base coefficient"));
            }
            let inv = lambda.recip();
            match kind {
                Kind::One => Witness::new(vec![alg.solve_inner(&alg.scale(target, &inv), *r)], VPoly::one()),
                Kind::Two => {
                    Witness::new(vec![alg.scale(&alg.solve_inner(target, r + 1), &inv)], VPoly::v_pow(1))
                }
            }
        }
        _ => return Err(malformed("trace must end in a base case")),
    };
    let mut pending_branch: Option<bool> = None;
    for step in steps {
        match step {
            TraceStep::BaseCase { .. } => return Err(malformed("more than one base case")),
            TraceStep::TypeOneBranch => pending_branch = Some(false),
            TraceStep::TypeTwoBranch { .. } => pending_branch = Some(true),
            TraceStep::PiKSearch { k } => witness.u = VPoly::v_pow(*k as u32),
            TraceStep::SplitLastVar { n, r, k, lambda_prime } => {
                let type_two = pending_branch.take().ok_or_else(|| malformed("split without a branch"))?;
                if witness.arity() + 1 != *n {
                    return Err(malformed("variable count does not grow by one"));
                }
                if !type_two {
                    witness.u = VPoly::one();
                }
                let lifted = lift_witness_xvy(alg, &witness, *k);
                if check {
                    let g = substitute_xn(*n, lambda_prime, *k)?;
                    let f = merge_split(*n, *r, lambda_prime)?.expand();
                    let lhs = evaluate(alg, &g, &witness)?;
                    let rhs = evaluate(alg, &f, &lifted)?;
                    if !alg.equal(&lhs, &rhs) {
                        return Err(SolveError::LiftMismatch { n: *n, k: *k });
                    }
                }
                witness = lifted;
            }
        }
    }
    if pending_branch.is_some() {
        return Err(malformed("branch without a split"));
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::{WeylAlgebra, WeylElement};
    use crate::rational::{q, q_frac};

    fn perm(images: &[usize]) -> Perm {
        Perm::new(images.to_vec()).unwrap()
    }

    fn mi(v: &[i64]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn splitting_records_the_position_of_the_last_variable() {
        let f = AdmissiblePoly::multilinear(2, vec![(perm(&[0, 1]), q(1))]).unwrap();
        let split = split_last_variable(&f).unwrap();
        assert_eq!(split.len(), 1);
        assert_eq!(split.get(&(perm(&[0]), mi(&[0, 0]), 1)), Some(&q(1)));

        let f = AdmissiblePoly::multilinear(2, vec![(perm(&[1, 0]), q(1))]).unwrap();
        let split = split_last_variable(&f).unwrap();
        assert_eq!(split.get(&(perm(&[0]), mi(&[0, 0]), 0)), Some(&q(1)));
        assert_eq!(merge_split(2, 0, &split).unwrap(), f);
    }

    #[test]
    fn splitting_needs_two_variables() {
        let f = AdmissiblePoly::multilinear(1, vec![(perm(&[0]), q(1))]).unwrap();
        assert_eq!(split_last_variable(&f).unwrap_err(), Error::TooFewVariables);
    }

    #[test]
    fn substituted_polynomials_for_small_inputs() {
        // [V, X2] X1
        let mut f = AdmissiblePoly::new(2, 1, Kind::One);
        f.set(GenIndex::one(perm(&[1, 0]), mi(&[0, 1])), q(1)).unwrap();
        let split = split_last_variable(&f).unwrap();
        assert_eq!(min_last_depth(&split), Some(1));
        let g = substitute_xn(2, &split, 1).unwrap();
        assert_eq!(g, &PcPoly::u(1) * &PcPoly::x(1, 0));

        let f = AdmissiblePoly::multilinear(2, vec![(perm(&[0, 1]), q(1))]).unwrap();
        let split = split_last_variable(&f).unwrap();
        let g = substitute_xn(2, &split, 0).unwrap();
        assert_eq!(g, &PcPoly::x(1, 0) * &PcPoly::u(1));
        assert_eq!(g.u_degree(), 1);
        assert_eq!(substitute_xn(2, &split, 3).unwrap_err(), Error::EmptyCoefficients);
    }

    #[test]
    fn type_two_rewriting_uses_partial_sums() {
        let tau = perm(&[0, 1]);
        let b = mi(&[0, 0, 0]);
        let mut split = SplitMap::new();
        split.insert((tau.clone(), b.clone(), 0), q(1));
        split.insert((tau.clone(), b.clone(), 1), q(-1));
        let mu = type_two_from_g(3, 0, &split, 0).unwrap();
        assert_eq!(mu.coeff(&GenIndex::two(tau.clone(), mi(&[0, 0]), 0)), q(1));
        assert_eq!(mu.coeff(&GenIndex::two(tau, mi(&[0, 0]), 1)), q(0));
        assert_eq!(mu.expand(), substitute_xn(3, &split, 0).unwrap());
    }

    #[test]
    fn type_two_rewriting_rejects_nonvanishing_sums() {
        let mut split = SplitMap::new();
        split.insert((perm(&[0]), mi(&[0, 0]), 0), q(1));
        assert!(matches!(type_two_from_g(2, 0, &split, 0), Err(Error::Precondition(_))));
    }

    #[test]
    fn single_variable_specialization() {
        let mut f = AdmissiblePoly::new(1, 2, Kind::Two);
        f.set(GenIndex::two(perm(&[0]), mi(&[2]), 0), q(3)).unwrap();
        for k in 1..4 {
            let h = pi_k_coefficients(&f, k).unwrap();
            assert_eq!(h.len(), 1);
            assert_eq!(h.coeff(&GenIndex::one(perm(&[0]), mi(&[2 + k as i64]))), q(3));
        }
        assert!(pi_k_coefficients(&AdmissiblePoly::new(2, 1, Kind::Two), 2).unwrap().is_zero());
    }

    #[test]
    fn specialization_matches_substituting_u() {
        let mut f = AdmissiblePoly::new(2, 1, Kind::Two);
        f.set(GenIndex::two(perm(&[0, 1]), mi(&[1, 0]), 1), q(2)).unwrap();
        f.set(GenIndex::two(perm(&[1, 0]), mi(&[0, 1]), 0), q(-1)).unwrap();
        let h1 = pi_k_coefficients(&f, 1).unwrap();
        assert_eq!(f.expand().pi(1), h1.expand());
    }

    #[test]
    fn commutator_of_two_variables() {
        let f = AdmissiblePoly::multilinear(2, vec![(perm(&[0, 1]), q(1)), (perm(&[1, 0]), q(-1))]).unwrap();
        let alg = WeylAlgebra;
        let sol = Solver::new().check_lifts(true).solve(&alg, &f, &alg.one()).unwrap();
        assert_eq!(evaluate(&alg, &f.expand(), &sol.witness).unwrap(), alg.one());
        assert!(sol.trace.steps.iter().any(|s| matches!(s, TraceStep::TypeTwoBranch { .. })));
    }

    #[test]
    fn single_variable_is_the_identity() {
        let f = AdmissiblePoly::multilinear(1, vec![(perm(&[0]), q(1))]).unwrap();
        let a = WeylElement::from_terms(vec![(2, 1, q_frac(1, 2)), (0, 1, q(-1))]);
        let sol = Solver::new().solve(&WeylAlgebra, &f, &a).unwrap();
        assert_eq!(sol.witness.xs, vec![a]);
        assert_eq!(sol.witness.u, VPoly::one());
    }

    #[test]
    fn zero_is_rejected() {
        let f = AdmissiblePoly::new(2, 0, Kind::One);
        assert_eq!(Solver::new().plan(&f).unwrap_err(), SolveError::ZeroPolynomial);
    }

    #[test]
    fn base_case_of_type_two() {
        let mut f = AdmissiblePoly::new(1, 1, Kind::Two);
        f.set(GenIndex::two(perm(&[0]), mi(&[1]), 0), q(2)).unwrap();
        let a = WeylElement::monomial(1, 1, q(1));
        let sol = Solver::new().solve(&WeylAlgebra, &f, &a).unwrap();
        assert_eq!(sol.witness.u, VPoly::v_pow(1));
        assert_eq!(evaluate(&WeylAlgebra, &f.expand(), &sol.witness).unwrap(), a);
    }

    #[test]
    fn replay_reproduces_the_witness() {
        let f = AdmissiblePoly::multilinear(
            3,
            vec![(perm(&[0, 1, 2]), q(1)), (perm(&[2, 1, 0]), q(-1)), (perm(&[1, 2, 0]), q(2))],
        )
        .unwrap();
        let alg = WeylAlgebra;
        let a = WeylElement::from_terms(vec![(1, 2, q(1)), (0, 0, q(3))]);
        let sol = Solver::new().solve(&alg, &f, &a).unwrap();
        let again = replay(&sol.trace, &a, &alg).unwrap();
        assert_eq!(again.xs, sol.witness.xs);
        assert_eq!(evaluate(&alg, &f.expand(), &again).unwrap(), a);
    }

    #[test]
    fn malformed_traces_are_rejected() {
        let alg = WeylAlgebra;
        let empty = ReductionTrace::default();
        assert!(matches!(replay(&empty, &alg.one(), &alg), Err(SolveError::MalformedTrace(_))));
        let dangling = ReductionTrace {
            steps: vec![TraceStep::TypeOneBranch, TraceStep::BaseCase { kind: Kind::One, r: 0, lambda: q(1) }],
        };
        assert!(matches!(replay(&dangling, &alg.one(), &alg), Err(SolveError::MalformedTrace(_))));
    }

    #[test]
    fn exhausted_search_is_an_internal_error() {
        let mut f = AdmissiblePoly::new(2, 0, Kind::Two);
        f.set(GenIndex::two(perm(&[0, 1]), mi(&[0, 0]), 0), q(1)).unwrap();
        let err = Solver::new().k_cap(0).plan(&f).unwrap_err();
        assert!(err.is_internal());
        assert_eq!(err, SolveError::KSearchExhausted { n: 2, r: 0, cap: 0 });
    }
}
