//! Computational tools for finitely presented groups of 3-manifolds, twisted
//! linking numbers in finite covers, and integral symmetric forms.

pub mod abelian;
pub mod clasp;
pub mod cosets;
pub mod error;
pub mod forms;
pub mod groupring;
pub mod matrix;
pub mod pd;
pub mod presentation;
pub mod qm;
pub mod schreier;
pub mod word;

pub use abelian::{abelianization, cokernel, AbelianGroupInvariants};
pub use clasp::{eval, realize, ClaspProgram, Instruction, TwistedLinkingMatrix};
pub use cosets::{
    check_homomorphism, enumerate_cosets, enumerate_cosets_with, subgroup_generates, word_is_trivial, CosetTable,
    Strategy, DEFAULT_MAX_COSETS,
};
pub use error::{Error, Result};
pub use forms::{augment_form, Category, HyperbolicDecomposition, IntegerSymmetricForm};
pub use groupring::{FiniteGroup, GroupRingElement};
pub use matrix::IntMatrix;
pub use pd::{longitude_word, surgery_group, wirtinger, PdCode, SurgeryDescription};
pub use presentation::GroupPresentation;
pub use qm::{eta_words, qm_presentation, qm_surgery_presentation, QmInstance};
pub use schreier::reidemeister_schreier;
pub use word::Word;
