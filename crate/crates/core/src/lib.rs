//! Exact finite-field arithmetic and decision procedures for dynamical
//! irreducibility of polynomials over finite fields.
//!
//! * [`ffield`]: fields as towers over `F_p`, norms, traces, power residues.
//! * [`polyring`]: dense polynomials, Rabin's test and a factorization oracle.
//! * [`unicritical`]: the adjusted critical orbit criterion.
//! * [`cubic`]: Dickson's test, the two-condition recursive test and Chu's family.
//! * [`linearized`]: Cohen's criterion for shifted linearized polynomials.
//! * [`cli`]: command-line front end and report emitters.

pub mod cli;
pub mod cubic;
pub mod error;
pub mod ffield;
pub mod intarith;
pub mod linearized;
pub mod polyring;
pub mod unicritical;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::{Reason, Verdict, VerdictKind};
