//! Exact even Clifford algebras of ternary quadratic forms.
//!
//! This crate computes, over small commutative rings and with exact
//! arithmetic throughout:
//!
//! - even Clifford algebras C₀(q) of quadratic forms q of rank 3, as
//!   explicit rank-4 algebras with distinguished basis (1, f₁, f₂, f₃);
//! - the correspondence Υ between bilinear forms on a rank-3 module and
//!   *specialized* algebra structures on that rank-4 module, together with
//!   its inverse;
//! - similarity transport C₀(s): C₀(q) → C₀(q′) for similarities s = (g, l),
//!   lifting of algebra isomorphisms back to similarities (several section
//!   variants), and the standard involution and opposite algebra;
//! - half-discriminants, semiregularity, and the Azumaya property over
//!   small prime fields;
//! - exhaustive classification over F₂ and F₃: the partition of all 4⁶
//!   coefficient tuples by algebra isomorphism agrees with the partition by
//!   similarity of forms, verified element by element.
//!
//! The crate is desk-scale by design: rings are ℤ, ℚ, F_p (p ≤ 97), ℤ/p^k,
//! and dual numbers F_p[ε], and every exhaustive sweep fits in seconds to
//! minutes. Nothing here uses floating point.

pub mod azumaya;
pub mod classify;
pub mod clifford;
pub mod error;
pub mod fp;
pub mod linalg;
pub mod quadform;
pub mod ring;
pub mod schema;
pub mod suites;

pub use error::{Error, Result};
