//! Finite MV-algebras with internal states, and the two Stone-type dualities
//! they participate in.
//!
//! Everything here is exact: MV-algebra elements are integer numerators over
//! fixed chain denominators, states and affine functions use [`Rational`].
//!
//! * [`mv`] and [`table`]: products of Łukasiewicz chains and extensional
//!   (table) MV-algebras, axiom checks, ideals and the radical.
//! * [`state_ops`] and [`hom`]: state-operators, state-morphism-operators and
//!   τ-homomorphisms, both structurally (coordinate source maps) and as tables.
//! * [`stone`]: Boolean state algebras against finite Stone spaces with an
//!   idempotent self-map (functors φ, ψ, isomorphisms u, v).
//! * [`simplex`]: states, extremal states, the induced affine map g(s) = s∘τ,
//!   the affine representation M(A) and the operator τ_g.
//! * [`bauer`]: rational cube algebras against finite Bauer simplices with an
//!   idempotent affine map (functors S, T and the evaluation map).
//!
//! Every duality comes with a serializable certificate that can be replayed
//! without re-running the functors.

pub mod bauer;
pub mod error;
pub mod hom;
pub mod mv;
pub mod rational;
pub mod report;
pub mod simplex;
pub mod state_ops;
pub mod stone;
pub mod table;

pub use error::{Error, Result};
pub use hom::{MvHom, StateHom};
pub use mv::{ChainSignature, Ideal, MvElement, ProductMvAlgebra};
pub use rational::Rational;
pub use report::{LawCheck, LawReport};
pub use state_ops::{OperatorSpec, StateAlgebra, UnaryTable};
pub use table::TableMvAlgebra;
