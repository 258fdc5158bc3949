//! Direct products: componentwise operations, `v` the tuple of component `v`s.

use alloc::vec::Vec;

use super::EvaluationAlgebra;
use crate::rational::Q;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ProductAlgebra<A> {
    components: Vec<A>,
}

impl<A: EvaluationAlgebra> ProductAlgebra<A> {
    pub fn new(components: Vec<A>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyProduct);
        }
        Ok(ProductAlgebra { components })
    }

    pub fn components(&self) -> &[A] {
        &self.components
    }

    fn map<F: Fn(&A) -> A::Elem>(&self, f: F) -> Vec<A::Elem> {
        self.components.iter().map(f).collect()
    }

    fn zip<F: Fn(&A, &A::Elem, &A::Elem) -> A::Elem>(
        &self,
        a: &[A::Elem],
        b: &[A::Elem],
        f: F,
    ) -> Vec<A::Elem> {
        assert_eq!(a.len(), self.components.len(), "product element arity");
        assert_eq!(b.len(), self.components.len(), "product element arity");
        self.components
            .iter()
            .zip(a.iter().zip(b))
            .map(|(alg, (x, y))| f(alg, x, y))
            .collect()
    }
}

impl<A: EvaluationAlgebra> EvaluationAlgebra for ProductAlgebra<A> {
    type Elem = Vec<A::Elem>;

    fn zero(&self) -> Self::Elem {
        self.map(A::zero)
    }

    fn one(&self) -> Self::Elem {
        self.map(A::one)
    }

    fn v(&self) -> Self::Elem {
        self.map(A::v)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.zip(a, b, A::add)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.zip(a, b, A::mul)
    }

    fn scale(&self, a: &Self::Elem, c: &Q) -> Self::Elem {
        self.components.iter().zip(a).map(|(alg, x)| alg.scale(x, c)).collect()
    }

    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.len() == b.len()
            && self
                .components
                .iter()
                .zip(a.iter().zip(b))
                .all(|(alg, (x, y))| alg.equal(x, y))
    }

    fn solve_inner(&self, y: &Self::Elem, k: usize) -> Self::Elem {
        self.components.iter().zip(y).map(|(alg, x)| alg.solve_inner(x, k)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backends::{WeylAlgebra, WeylElement};
    use crate::rational::{q, Q};
    use alloc::vec;

    #[test]
    fn empty_product_is_rejected() {
        assert_eq!(ProductAlgebra::<WeylAlgebra>::new(vec![]).unwrap_err(), Error::EmptyProduct);
    }

    #[test]
    fn two_weyl_factors() {
        let alg = ProductAlgebra::new(vec![WeylAlgebra, WeylAlgebra]).unwrap();
        for k in 0..5usize {
            let z = alg.solve_inner(&alg.one(), k);
            let expected = WeylElement::monomial(
                0,
                k as u32,
                Q::new(1.into(), crate::combinatorics::factorial(k as u64)),
            );
            assert_eq!(z, vec![expected.clone(), expected]);
        }
    }

    #[test]
    fn single_factor_matches_the_factor() {
        let alg = ProductAlgebra::new(vec![WeylAlgebra]).unwrap();
        let y = WeylElement::from_terms(vec![(1, 2, q(3)), (0, 0, q(-1))]);
        assert_eq!(alg.solve_inner(&vec![y.clone()], 2), vec![WeylAlgebra.solve_inner(&y, 2)]);
        assert_eq!(alg.mul(&alg.v(), &vec![y.clone()]), vec![WeylElement::v().mul(&y)]);
    }
}
