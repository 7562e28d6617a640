//! Integer-arithmetic substrate: the von Mangoldt sieve, Euler's totient,
//! and the Dirichlet character group mod q.

mod characters;
mod lambda;

pub use characters::{gauss_sum, Character, CharacterTable};
pub use lambda::{euler_phi, factorize, LambdaTable};
