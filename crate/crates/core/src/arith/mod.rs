//! Scalars: exact rationals, Gaussian rationals, cyclotomic numbers, error-tracked
//! floating complex values, rational angles and continued fractions.

mod angle;
mod approx;
mod cf;
mod complex;
mod cyclotomic;
mod rational;
mod scalar;

pub use angle::{reduce_angle, root_of_unity, FloatAngle, TurnAngle};
pub use approx::{ApproxComplex, ULP_SLACK};
pub use cf::{convergents, rational_approximation};
pub use complex::ComplexRational;
pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};
pub use rational::{format_rational, parse_rational, rat, rational_to_f64, Rational};
pub use scalar::{RealValue, Scalar};
