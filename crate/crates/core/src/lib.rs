pub mod error;
pub mod linalg;
pub mod magnetic;
pub mod modspace;
pub mod nilpotent;
pub mod poly;
pub mod repspace;
pub mod scalar;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use magnetic::{MagneticField, MagneticPotential, ThetaImage};
pub use modspace::{Decomposition, Exponent, ExponentMode, ExponentQuad};
pub use nilpotent::{FunctionSpaceBasis, LieAlgebraSpec, SemidirectElement};
pub use poly::{Monomial, PolyVector, Polynomial};
pub use repspace::{GridSpec, PhaseSpaceField, Side};
pub use scalar::{Coeff, Real};
pub use weyl::{HsOperator, QuantizerContext};

pub use num_complex::Complex;
pub use num_rational::BigRational;

pub type Rational = BigRational;
pub type RatPoly = Polynomial<BigRational>;
pub type RatPolyVector = PolyVector<BigRational>;

pub type Grid64 = GridSpec<f64>;
pub type Field64 = PhaseSpaceField<f64>;
pub type Operator64 = HsOperator<f64>;
pub type Context64 = QuantizerContext<f64>;
