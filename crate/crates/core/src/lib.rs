//! Exact bigraded motivic cohomology of Stiefel varieties.
//!
//! `H(W(n,m); R)` is presented as `M_R[rho_{n-m+1}, ..., rho_n] / I` with
//! `|rho_i| = (2i-1, i)` and `rho_i^2 = {-1} rho_{2i-1}` (zero when
//! `2i-1 > n`). The crate computes normal forms and products in these rings,
//! graded bases and Poincaré series, the ring maps between them (projections,
//! immersions, column symmetries and the comparison map into
//! `H(G_m x P^{n-1})`), and the action of the motivic Steenrod squares and
//! reduced powers.
//!
//! Only the part of the base ring generated by `{-1}` is modeled, see
//! [`MCoefficient`]. All arithmetic is exact.
//!
//! ```
//! use stiefel_core::{CoeffRing, FieldProfile, StiefelPresentation, OperationSpec, apply_operation};
//!
//! let gl3 = StiefelPresentation::general_linear(3, CoeffRing::IntegersMod(2), FieldProfile::default()).unwrap();
//! let r2 = gl3.generator(2).unwrap();
//! let sq2 = apply_operation(&OperationSpec::sq(2), &r2).unwrap();
//! assert_eq!(sq2, gl3.generator(3).unwrap());
//! ```

pub mod checks;
pub mod class;
pub mod coeff;
pub mod error;
pub mod json;
pub mod linalg;
pub mod maps;
pub mod render;
pub mod steenrod;
pub mod stiefel;
pub mod target;

pub use class::{BasisLine, Class, KeyProduct, Presentation};
pub use coeff::{binom_mod, is_prime, Bidegree, CoeffRing, CoefficientGroup, FieldProfile, MCoefficient, MotivicBase};
pub use error::{AlgebraError, Result};
pub use maps::{
    comparison_map, immersion_pullback, projection_pullback, symmetry_pullback, MapLabel, RingMap, Symmetry,
    ValiditySpan,
};
pub use steenrod::{
    apply_operation, bockstein_on_generator, odd_sq_on_generator, power_on_generator, sq_on_generator, OperationKind,
    OperationSpec, SteenrodAction,
};
pub use stiefel::{
    monomial_bidegree, random_element, random_homogeneous, Element, Monomial, PoincarePolynomial, SquareRelation,
    StiefelPresentation,
};
pub use target::{is_reduced, sq_projective, total_square_oracle, PGmElement, PGmMonomial, PGmPresentation};
