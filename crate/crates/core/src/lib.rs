//! Exact computations for toric degenerations of projective varieties.
//!
//! The crate is organised bottom-up:
//!
//! * [`polycore`]: sparse polynomials over ℚ, monomial orders, parser/printer.
//! * [`groebner`]: Buchberger, initial ideals, elimination, saturation,
//!   ring-map kernels and Hilbert-function values.
//! * [`intlat`]: integer matrices, Hermite normal form, kernel lattices and
//!   weight vectors certified against valuation matrices.
//! * [`toric`]: toric ideals, value semigroups and their polytopes.
//! * [`degeneration`]: Gröbner families, the valuation pipeline, the
//!   semigroup-algebra embedding and degenerations by projection.
//! * [`momentmap`]: floating point moment maps and sampled images.
//! * [`fixtures`]: the worked examples bundled as runnable checks.

pub mod degeneration;
pub mod fixtures;
pub mod groebner;
pub mod intlat;
pub mod io;
pub mod momentmap;
pub mod polycore;
pub mod toric;

pub use groebner::{GroebnerBasis, Ideal};
pub use intlat::IntMatrix;
pub use polycore::{Coeff, Convention, Exponent, Grading, Polynomial, TermOrder, VarList};
pub use toric::{PolytopeQ, Semigroup};
