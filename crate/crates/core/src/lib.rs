pub mod coeff;
pub mod completion;
pub mod error;
pub mod io;
pub mod ordering;
pub mod quotient;
pub mod reduction;
pub mod ring;
pub mod shift;

pub use coeff::{FieldElement, ParamPoly};
pub use error::{Error, Result};
pub use ordering::{OrderKind, OrderingSpec, VectorOrder};
pub use ring::{Monomial, OrdValue, Poly, Ring, RingSignature, Term, Var};
pub use shift::Shift;
