//! Characteristic-p commutative algebra over prime fields: Gröbner bases,
//! ideal calculus on polynomial rings and hypersurface quotients, Frobenius
//! powers, roots and preimages, test ideals, linkage and corner powers.

pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod ideal;
pub mod lengths;
pub mod linkage;
pub mod monomial;
pub mod params;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod singularity;

pub use error::{AlgError, Result};
pub use field::PrimeField;
pub use groebner::{Colength, ReducedGB};
pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{PolyRing, Polynomial, Term};
pub use ring::RingContext;
