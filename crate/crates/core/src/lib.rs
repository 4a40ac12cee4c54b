//! Exact-arithmetic kernels for cubic threefolds over small finite fields:
//! good-line classification, discriminant quintics and their double covers,
//! Prym L-polynomials from point counts, Cartier-Manin matrices of plane
//! quintics, and generator families of smooth quadrics.

pub mod budget;
pub mod cartier;
pub mod cover;
pub mod cubic;
pub mod error;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod quadrics;
pub mod zeta;

pub use budget::Budget;
pub use error::{Error, Result};
pub use field::{Embedding, Field, FieldElement};
pub use linalg::Matrix;
pub use poly::{Form, Ideal, MonomialOrder};
