//! Exact combinatorics and linear algebra around the Iwasawa subalgebra
//! `b = a ⊕ n` of a semisimple Lie algebra.
//!
//! The crate builds root systems of all simple types over exact integer
//! arithmetic, computes Kostant cascades of strongly orthogonal roots,
//! models real forms through an involution of the root lattice (Satake
//! data), and decides index, stability and quasi-reductivity questions
//! for `b`, minimal parabolics, and rank-one standard parabolics by
//! exact rational rank computations.
//!
//! Entry points:
//! - [`rootsys::RootSystem::build`] — root system construction,
//! - [`cascade::kostant_cascade`] — the cascade `K(Π)` and its `Γ`-sets,
//! - [`chevalley::StructureConstants::new`] — a Chevalley basis with
//!   verified structure constants,
//! - [`realform::Registry::load`] — the built-in table of real forms,
//! - [`indexcalc`] — index / stabilizer / stability / reductivity oracles,
//! - [`paraquasi`] — quasi-reductivity of parabolics `p_{α}`,
//! - [`verify`] — the machine-checkable claims behind all shipped tables.

pub mod cascade;
pub mod chevalley;
pub mod cli;
pub mod indexcalc;
pub mod linalg;
pub mod paraquasi;
pub mod realform;
pub mod rootsys;
pub mod verify;
pub mod weyl;
