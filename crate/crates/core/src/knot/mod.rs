//! Knots given as braid closures, their Wirtinger groups and Alexander polynomials.

mod alexander;
mod braid;
mod laurent;
mod wirtinger;

use thiserror::Error;

pub use alexander::{
    alexander_polynomial, braid_alexander, fox_derivative, fox_jacobian, knot_family, laurent_determinant,
};
pub use braid::{braid_to_diagram, BraidWord, Crossing, KnotDiagram};
pub use laurent::LaurentPoly;
pub use wirtinger::{braid_presentation, wirtinger_presentation, KnotGroupData, LONGITUDE_LABEL, MERIDIAN_LABEL};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("a braid needs at least one strand")]
    NoStrands,
    #[error("braid letter {letter} is out of range for {strands} strands")]
    GeneratorOutOfRange { letter: i32, strands: usize },
    #[error("cannot parse braid `{input}`: {message}")]
    BraidSyntax { input: String, message: String },
    #[error("braid closure has {components} components, not one")]
    NotAKnot { components: usize },
    #[error("invalid knot diagram: {0}")]
    InvalidDiagram(String),
    #[error("knots {first} and {second} have equal Alexander coefficient multisets")]
    FamilyCollision { first: String, second: String },
}
