//! Exact-arithmetic small quantum homology over the Novikov ring.
//!
//! The crate models closed manifolds by their graded homology bases,
//! intersection pairings and three-point Gromov–Witten tables, builds the
//! quantum homology ring QH_*(M; Λ) on top with everything computed exactly
//! (arbitrary-precision integers, rational exponents), and evaluates Seidel
//! elements of Hamiltonian circle actions from their fixed-point data. The
//! Künneth machinery constructs product manifolds and the embeddings κ, κ₀
//! and κ′, and verifies term-for-term that circle-action elements are
//! compatible with taking products with a trivial factor and with the
//! diagonal.

pub mod catalog;
pub mod descriptor;
pub mod error;
pub mod gw;
pub mod homology;
pub mod kunneth;
pub mod novikov;
pub mod qring;
pub mod seidel;

#[cfg(test)]
pub(crate) mod test_support;

pub use error::{Error, Result};
pub use gw::{GWRow, GWTable, TableFinding, TableReport};
pub use homology::{
    Generator, HomologyClass, ManifoldModel, Model, Monotonicity, SphericalClass, ZERO_CLASS,
};
pub use kunneth::{product_gw, product_manifold, ProductModel};
pub use novikov::{parse_rational, rational, render_rational, NovikovScalar};
pub use qring::{
    multiplication_table, parse_element, qmul, try_inverse, unit_order, QuantumElement, UnitOrder,
};
pub use seidel::{
    check_homomorphism, diagonal_leading_term, diff_elements, is_nontrivial, leading_part,
    lift_trivial_factor, mcduff_tolman_element, seidel_circle, verify_thm1, verify_thm2,
    CircleActionData, Correction, HomReport, SeidelElement, TermDiff, Thm2Report, VerifyReport,
};
