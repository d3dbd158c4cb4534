//! Quran Phonetic Script toolkit.
//!
//! Converts Uthmani-script Quranic text into a two-level phonetic script
//! (43 phonemes, 10 articulation attributes per phoneme) under a
//! configurable Hafs recitation profile, verifies transcript segments
//! against the canonical text, and provides the CTC loss/decoding and
//! phoneme-error-rate math used to train and evaluate recitation models.

pub mod corpus;
pub mod ctc;
pub mod error;
pub mod moshaf;
pub mod phonetics;
pub mod qpsl;
pub mod sifat;
pub mod tasmeea;

pub use corpus::{
    align_scripts, bundled_imlaey, bundled_uthmani, normalize_for_matching, NormalizedText,
    QuranCorpus, ScriptKind, SpanPair, Verse,
};
pub use error::{Error, Result};
pub use moshaf::{
    default_attributes, parse_attributes, validate_attributes, MoshafAttributes, ValidationReport,
};
pub use phonetics::{
    encode_phonemes, phonetize, IntermediateText, Phoneme, PhonemeSequence, UtteranceContext,
};
pub use sifat::{base_sifat, extract_sifat, SifatSequence, SifatVector, LEVEL_NAMES};
pub use tasmeea::{
    edit_distance, match_segments, missing_portions, similarity_ratio, MatchResult, TasmeeaParams,
};
