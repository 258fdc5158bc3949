//! Runtime-selected backends, including mixed products such as Weyl x Shift.

use alloc::vec::Vec;

use super::{EvaluationAlgebra, ProductAlgebra, ShiftAlgebra, ShiftOp, WeylAlgebra, WeylElement};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq)]
pub enum AnyAlgebra {
    Weyl(WeylAlgebra),
    Shift(ShiftAlgebra),
    Product(ProductAlgebra<AnyAlgebra>),
}

#[derive(Clone, Debug)]
pub enum AnyElement {
    Weyl(WeylElement),
    Shift(ShiftOp),
    Product(Vec<AnyElement>),
}

impl AnyAlgebra {
    pub fn name(&self) -> &'static str {
        match self {
            AnyAlgebra::Weyl(_) => "weyl",
            AnyAlgebra::Shift(_) => "shift",
            AnyAlgebra::Product(_) => "product",
        }
    }
}

fn mismatch() -> ! {
    panic!("element does not belong to this backend")
}

impl EvaluationAlgebra for AnyAlgebra {
    type Elem = AnyElement;

    fn zero(&self) -> AnyElement {
        match self {
            AnyAlgebra::Weyl(a) => AnyElement::Weyl(a.zero()),
            AnyAlgebra::Shift(a) => AnyElement::Shift(a.zero()),
            AnyAlgebra::Product(a) => AnyElement::Product(a.zero()),
        }
    }

    fn one(&self) -> AnyElement {
        match self {
            AnyAlgebra::Weyl(a) => AnyElement::Weyl(a.one()),
            AnyAlgebra::Shift(a) => AnyElement::Shift(a.one()),
            AnyAlgebra::Product(a) => AnyElement::Product(a.one()),
        }
    }

    fn v(&self) -> AnyElement {
        match self {
            AnyAlgebra::Weyl(a) => AnyElement::Weyl(a.v()),
            AnyAlgebra::Shift(a) => AnyElement::Shift(a.v()),
            AnyAlgebra::Product(a) => AnyElement::Product(a.v()),
        }
    }

    fn add(&self, x: &AnyElement, y: &AnyElement) -> AnyElement {
        match (self, x, y) {
            (AnyAlgebra::Weyl(a), AnyElement::Weyl(x), AnyElement::Weyl(y)) => AnyElement::Weyl(a.add(x, y)),
            (AnyAlgebra::Shift(a), AnyElement::Shift(x), AnyElement::Shift(y)) => AnyElement::Shift(a.add(x, y)),
            (AnyAlgebra::Product(a), AnyElement::Product(x), AnyElement::Product(y)) => {
                AnyElement::Product(a.add(x, y))
            }
            _ => mismatch(),
        }
    }

    fn mul(&self, x: &AnyElement, y: &AnyElement) -> AnyElement {
        match (self, x, y) {
            (AnyAlgebra::Weyl(a), AnyElement::Weyl(x), AnyElement::Weyl(y)) => AnyElement::Weyl(a.mul(x, y)),
            (AnyAlgebra::Shift(a), AnyElement::Shift(x), AnyElement::Shift(y)) => AnyElement::Shift(a.mul(x, y)),
            (AnyAlgebra::Product(a), AnyElement::Product(x), AnyElement::Product(y)) => {
                AnyElement::Product(a.mul(x, y))
            }
            _ => mismatch(),
        }
    }

    fn scale(&self, x: &AnyElement, c: &Q) -> AnyElement {
        match (self, x) {
            (AnyAlgebra::Weyl(a), AnyElement::Weyl(x)) => AnyElement::Weyl(a.scale(x, c)),
            (AnyAlgebra::Shift(a), AnyElement::Shift(x)) => AnyElement::Shift(a.scale(x, c)),
            (AnyAlgebra::Product(a), AnyElement::Product(x)) => AnyElement::Product(a.scale(x, c)),
            _ => mismatch(),
        }
    }

    fn equal(&self, x: &AnyElement, y: &AnyElement) -> bool {
        match (self, x, y) {
            (AnyAlgebra::Weyl(a), AnyElement::Weyl(x), AnyElement::Weyl(y)) => a.equal(x, y),
            (AnyAlgebra::Shift(a), AnyElement::Shift(x), AnyElement::Shift(y)) => a.equal(x, y),
            (AnyAlgebra::Product(a), AnyElement::Product(x), AnyElement::Product(y)) => a.equal(x, y),
            _ => false,
        }
    }

    fn solve_inner(&self, y: &AnyElement, k: usize) -> AnyElement {
        match (self, y) {
            (AnyAlgebra::Weyl(a), AnyElement::Weyl(y)) => AnyElement::Weyl(a.solve_inner(y, k)),
            (AnyAlgebra::Shift(a), AnyElement::Shift(y)) => AnyElement::Shift(a.solve_inner(y, k)),
            (AnyAlgebra::Product(a), AnyElement::Product(y)) => AnyElement::Product(a.solve_inner(y, k)),
            _ => mismatch(),
        }
    }

    fn pow(&self, x: &AnyElement, e: u32) -> AnyElement {
        match (self, x) {
            (AnyAlgebra::Shift(a), AnyElement::Shift(x)) => AnyElement::Shift(a.pow(x, e)),
            _ => (0..e).fold(self.one(), |acc, _| self.mul(&acc, x)),
        }
    }
}
