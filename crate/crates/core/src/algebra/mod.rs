//! Linear algebra over prime fields: scalars, vectors, subspaces in
//! canonical echelon form, polynomials, and bilinear forms.
//!
//! Only prime fields are supported.

mod form;
mod fp;
mod subspace;

pub use form::{
    find_isotropic, form_eval, is_nondegenerate, is_strong_nondegenerate, orthogonal,
    triangularize, BilinearForm, Side, MAX_SEARCH_VECTORS,
};
pub use fp::{is_prime, poly_roots, FpPoly, FpScalar, FpVector, MAX_PRIME};
pub use subspace::Subspace;
