//! Polynomial differential forms, vector fields and their text grammar.

pub mod form;
pub mod grammar;

pub use form::{Chart, ComplexForm, ComplexVectorField, DiffForm, PolyVectorField};
pub use grammar::{parse_form, parse_form_of_degree, parse_poly, print_form};
pub use crate::nilpotent::annihilator_frame;
