//! Decompositions through explicit block representations
//! `A ≅ ⊕ F_ℓ^{n_ℓ × n_ℓ}` with `F_ℓ ∈ {R, C, H}`.

mod engine;
mod field;
mod idempotent;
mod laurent;
mod rep;
mod reps;

pub use engine::{block_tolerance, wqr, wsvd, WedderburnOptions};
pub use field::{field_spec, FieldMatrix};
pub use idempotent::{idempotent_join, idempotent_split, IdempotentSet};
pub use laurent::{laurent_embed, laurent_unembed, max_abs_exponent};
pub use rep::{Block, RepVerification, Representation};
pub use reps::{rep_biquat, rep_cl41, rep_cyclic_dft, rep_field, rep_for_spec, rep_quadquat};
