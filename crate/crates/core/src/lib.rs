//! Weight-one Seifert fibred bases of knot manifolds: admissibility of
//! 2-orbifold signatures, constructive exponent data for the Seifert
//! fibred 3-manifold group, and exact certification via Smith normal form
//! and coset enumeration.

pub mod cli;
pub mod coset;
pub mod enumerate;
pub mod presentation;
pub mod realize;
pub mod signature;
pub mod verify;
pub mod zlattice;

pub use coset::{todd_coxeter, CosetOutcome, CosetTable};
pub use presentation::{Presentation, Word};
pub use realize::{construct, realize, Family, Obstruction, SeifertData};
pub use signature::{
    classify_realizability, euler_characteristic, parse_signature, theorem1_admissible, BaseSurface, Classification,
    OrbifoldSignature,
};
pub use verify::{certify_weight, Certificate};
pub use zlattice::{abelianization_order, elementary_ideal, smith_normal_form, IntMatrix, OrderResult};
