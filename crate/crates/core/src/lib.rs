//! Exact certificates that the 2-adic Galois image of a hyperelliptic
//! Jacobian over the rationals contains an explicit congruence subgroup
//! `Gamma(2^k)`, together with brute-force checks of the finite group theory
//! those certificates rest on.
//!
//! ```
//! use galois2::arith::FactorBudget;
//! use galois2::certifier::{certify, CurveSpec, Status};
//! use num_bigint::BigInt;
//!
//! let spec = CurveSpec::SplitRoots { roots: [0, 1, 6].map(BigInt::from).to_vec() };
//! let cert = certify(&spec, FactorBudget::default()).unwrap();
//! assert_eq!(cert.status, Status::Certified);
//! assert_eq!(cert.gamma_level.as_deref(), Some("4"));
//! ```
//!
//! Modules, bottom up: [`arith`] (primality, budgeted factoring, valuations),
//! [`poly`] (integer polynomials, discriminants, irreducibility witnesses),
//! [`gf2`] (bit vectors and elimination over F2), [`symplectic`] (matrices
//! modulo 2^e, transvections, subgroup enumeration and the verification
//! suites), [`homology`] (mod-2 homology of the curve and the Moebius shift),
//! [`certifier`] and [`cli`].

pub mod arith;
pub mod certifier;
pub mod cli;
pub mod gf2;
pub mod homology;
pub mod poly;
pub mod symplectic;
