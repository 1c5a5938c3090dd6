//! Exact workbench for Hasse–Schmidt derivations of finitely presented
//! algebras `A = k[x_1, …, x_n]/I` over prime fields (and the rationals for
//! cross-checks).

pub mod algebra;
pub mod artinian;
pub mod error;
pub mod field;
pub mod geometry;
pub mod groebner;
pub mod hs;
pub mod integrator;
pub mod leaps;
pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod series;

pub use algebra::{PresentedAlgebra, QuotientIdeal};
pub use error::{Error, Result};
pub use field::{Coeff, Field};
pub use groebner::{GroebnerBasis, Ideal};
pub use hs::{derivation_check, HsDerivation, Validation};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use poly::Polynomial;
pub use ring::Ring;
pub use series::{truncated_substitution, TruncatedSeries};
