//! Exact computation with Whitehead automorphisms of free groups: cyclic
//! words in canonical form, length minimization, the set of minimum-length
//! words in an automorphic orbit, degree-monotone automorphism chains, and
//! the dependence structure of a word's letters.
//!
//! The crate is `no_std` (with `alloc`); all searches are exact and
//! deterministic, and capped searches fail loudly instead of truncating.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

pub mod aut;
pub mod families;
pub mod letter;
pub mod orbit;
pub mod structure;
pub mod word;

pub use aut::{
    enumerate_w1, enumerate_w2, AutChain, AutError, CutAut, PermAut, W2Options, WhiteheadAut,
};
pub use families::{
    degree_one_chain_set, degree_one_moves, family_moves, family_word, predicted_count,
    verify_lower_bound, BoundCheck, FamilyError, FamilyKind, FamilyMoves, FamilySpec, Predicted,
    Prediction, ShiftForm,
};
pub use letter::{Letter, LetterSet, MAX_RANK};
pub use orbit::{
    count_minimal, degree_monotone_count, degree_monotone_set, is_minimal, level_set, minimize,
    same_orbit, ChainConvention, LevelSet, LimitKind, OrbitError, SearchLimits,
};
pub use structure::{
    admissible_auts, analyze, check_hypothesis, count_sorted_relabeling, depends_on,
    syllable_profile, DependenceGraph, HypothesisReport, StructureError, Syllable,
    SyllableProfile, WordAnalysis,
};
pub use word::{CyclicWord, WordError};
