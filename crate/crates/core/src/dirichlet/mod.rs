//! Primes, Dirichlet characters, and L-functions in the half-plane of
//! absolute convergence.

pub mod character;
pub mod eval;
pub mod primes;
pub mod spec;

pub use character::{character_from_table, CharacterTable, DirichletCharacter};
pub use eval::{
    em_terms_for, eval_l, eval_l_direct, eval_log_l, prime_sum, prime_sum_terms,
    zeta_euler_maclaurin, Cutoffs, EvalResult,
};
pub use primes::{sieve_primes, PrimeTable};
pub use spec::{CoeffBound, Family, LFunctionSpec};
