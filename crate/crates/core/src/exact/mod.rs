pub mod arith;
pub mod bernoulli;
pub mod cyclotomic;
pub mod harmonic;
pub mod rational;

pub use bernoulli::{bernoulli_number, bernoulli_polynomial};
pub use cyclotomic::{cyclotomic_polynomial, CycloElem};
pub use harmonic::{harmonic, HarmonicNumber};
pub use rational::Rational;
