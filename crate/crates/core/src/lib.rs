pub mod algebra;
pub mod constructions;
pub mod error;
pub mod grothendieck;
pub mod group;
pub mod homcount;
pub mod json;
pub mod limits;
pub mod linalg;
pub mod ring;
pub mod suite;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupOps};
pub use homcount::Count;
pub use limits::Limits;

/// Exact rational scalars.
pub type Rational = num_rational::BigRational;

/// Vectors in the rational span of isomorphism classes.
pub type LVector = grothendieck::ClassVector<Rational>;
