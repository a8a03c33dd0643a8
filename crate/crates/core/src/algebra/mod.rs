//! Exact integer linear algebra and presented coefficient modules.

mod matrix;
mod module;
mod snf;

pub use matrix::IntegerMatrix;
pub use module::{AbelianGroup, BaseRing, CoefficientModule, ModuleElement, QuotientLabelModule};
pub use snf::{determinantal_divisor, in_image, smith_diagonal, smith_normal_form, SmithForm, SparseIntegerMatrix};
