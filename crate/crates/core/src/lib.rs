//! Truncated univariate rational moment problems.
//!
//! Given the moments of rational functions `f/q` on a closed set `K ⊆ ℝ`,
//! decide whether a positive atomic representing measure avoiding the real
//! zeros of `q` exists and construct one.

pub mod hankel;
pub mod kset;
pub mod polyalg;
pub mod quadratic;
pub mod rational;
pub mod solver;
pub mod special;

pub use hankel::{
    build_hankel, flat_extension_check, generating_polynomial, localize, localizing_hankel,
    psd_status, riesz, GeneratingPoly, HankelError, HankelMatrix, MomentSequence, PsdReport,
    PsdStatus,
};
pub use kset::{
    classify, natural_description, pi_products, ClosedSet, Generator, GeneratorKind, Interval,
    KClass, KKind, KSetError, NaturalDescription, Parity, PiProduct,
};
pub use polyalg::{
    parse_rat, rat, rat_int, real_roots, vandermonde_solve, vandermonde_solve_exact, Poly,
    PolyError, Rat, Root, RootSet,
};
