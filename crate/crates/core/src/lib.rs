//! Exact computer algebra for images of multilinear polynomials.
//!
//! The crate works in the free product of a free algebra `Q<X1,...,Xn>` and the
//! commutative ring `Q[U,V]` ("partially commutative polynomials"), provides
//! concrete algebras carrying an element `v` whose inner derivation
//! `x -> vx - xv` is surjective, and constructs explicit witnesses
//! `x1,...,xn` with `f(x1,...,xn) = a` for every nonzero multilinear `f`.
//!
//! Everything is exact rational arithmetic and the crate is `no_std`
//! (it needs `alloc`).

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod backends;
pub mod combinatorics;
mod error;
pub mod linalg;
pub mod linsys;
pub mod pcpoly;
pub mod rational;
pub mod solver;

pub use backends::{
    evaluate, AnyAlgebra, AnyElement, EvaluationAlgebra, ProductAlgebra, ShiftAlgebra, ShiftOp,
    VPoly, WeylAlgebra, WeylElement, Witness,
};
pub use combinatorics::{MultiIndex, Perm};
pub use error::Error;
pub use pcpoly::{AdmissiblePoly, AltMonomial, GenIndex, Kind, PcPoly, Segment};
pub use rational::Q;
pub use solver::{ReductionTrace, Solution, SolveError, Solver, TraceStep};

pub type Result<T> = core::result::Result<T, Error>;
