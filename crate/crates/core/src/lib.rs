//! Exact commutative and noncommutative Bell polynomials.
//!
//! The crate builds Bell polynomials four independent ways (derivation
//! recursion, binomial recursion, explicit composition sums, Hessenberg
//! quasideterminants) plus a rooted-tree construction, and uses them to realize
//! the Faà di Bruno Hopf algebra, its noncommutative Dynkin variant and the
//! Möbius inversion of Bell polynomials. Every coefficient is an exact rational.

pub mod alphabet;
pub mod bell;
pub mod error;
pub mod format;
pub mod hopf;
pub mod mobius;
pub mod parallel;
pub mod partitions;
pub mod poly;
pub mod qpoly;
pub mod quasidet;
pub mod rational;
pub mod series;
pub mod tensor;
pub mod trees;
pub mod verify;

pub use alphabet::{CMonomial, Letter, Monomial, Word};
pub use error::{Error, Result};
pub use parallel::Exec;
pub use poly::{CPoly, CommRing, NCPoly, Polynomial, Ring};
pub use rational::Rational;
