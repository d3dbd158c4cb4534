//! The two-level phonetic script: the closed 43-symbol phoneme alphabet,
//! the rewrite pipeline from Uthmani text to phonemes, and the encoder that
//! turns the final rewrite stage into a [`PhonemeSequence`].
//!
//! See `docs/alphabet.md` for the symbol inventory and the internal marker
//! assignments that are part of the bit-exact contract.

pub mod pipeline;
mod special;

use crate::error::{Error, Result};
use crate::moshaf::MoshafAttributes;

/// The closed phoneme alphabet (43 symbols).
///
/// Madd letters repeat once per beat, stressed nasals triple, and the
/// articulation markers (`Qlqla`, `Sakt`, the momala/mosahala/mokhtalasa
/// vowels) stand for single acoustic events.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Phoneme {
    Hamza,
    Baa,
    Taa,
    Thaa,
    Jeem,
    HaaMohmala,
    Khaa,
    Daal,
    Thaal,
    Raa,
    Zay,
    Seen,
    Sheen,
    Saad,
    Daad,
    TaaMofakhama,
    ZaaMofakhama,
    Ayn,
    Ghyn,
    Faa,
    Qaf,
    Kaf,
    Lam,
    Meem,
    Noon,
    Haa,
    Waw,
    Yaa,
    Alif,
    AlifMofakhama,
    YaaMadd,
    WawMadd,
    Fatha,
    Dama,
    Kasra,
    FathaMomala,
    AlifMomala,
    HamzaMosahala,
    Qlqla,
    NoonMokhfah,
    MeemMokhfah,
    Sakt,
    DamaMokhtalasa,
}

impl Phoneme {
    pub const ALL: [Phoneme; 43] = [
        Phoneme::Hamza,
        Phoneme::Baa,
        Phoneme::Taa,
        Phoneme::Thaa,
        Phoneme::Jeem,
        Phoneme::HaaMohmala,
        Phoneme::Khaa,
        Phoneme::Daal,
        Phoneme::Thaal,
        Phoneme::Raa,
        Phoneme::Zay,
        Phoneme::Seen,
        Phoneme::Sheen,
        Phoneme::Saad,
        Phoneme::Daad,
        Phoneme::TaaMofakhama,
        Phoneme::ZaaMofakhama,
        Phoneme::Ayn,
        Phoneme::Ghyn,
        Phoneme::Faa,
        Phoneme::Qaf,
        Phoneme::Kaf,
        Phoneme::Lam,
        Phoneme::Meem,
        Phoneme::Noon,
        Phoneme::Haa,
        Phoneme::Waw,
        Phoneme::Yaa,
        Phoneme::Alif,
        Phoneme::AlifMofakhama,
        Phoneme::YaaMadd,
        Phoneme::WawMadd,
        Phoneme::Fatha,
        Phoneme::Dama,
        Phoneme::Kasra,
        Phoneme::FathaMomala,
        Phoneme::AlifMomala,
        Phoneme::HamzaMosahala,
        Phoneme::Qlqla,
        Phoneme::NoonMokhfah,
        Phoneme::MeemMokhfah,
        Phoneme::Sakt,
        Phoneme::DamaMokhtalasa,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Phoneme::Hamza => "hamza",
            Phoneme::Baa => "baa",
            Phoneme::Taa => "taa",
            Phoneme::Thaa => "thaa",
            Phoneme::Jeem => "jeem",
            Phoneme::HaaMohmala => "haa_mohmala",
            Phoneme::Khaa => "khaa",
            Phoneme::Daal => "daal",
            Phoneme::Thaal => "thaal",
            Phoneme::Raa => "raa",
            Phoneme::Zay => "zay",
            Phoneme::Seen => "seen",
            Phoneme::Sheen => "sheen",
            Phoneme::Saad => "saad",
            Phoneme::Daad => "daad",
            Phoneme::TaaMofakhama => "taa_mofakhama",
            Phoneme::ZaaMofakhama => "zaa_mofakhama",
            Phoneme::Ayn => "ayn",
            Phoneme::Ghyn => "ghyn",
            Phoneme::Faa => "faa",
            Phoneme::Qaf => "qaf",
            Phoneme::Kaf => "kaf",
            Phoneme::Lam => "lam",
            Phoneme::Meem => "meem",
            Phoneme::Noon => "noon",
            Phoneme::Haa => "haa",
            Phoneme::Waw => "waw",
            Phoneme::Yaa => "yaa",
            Phoneme::Alif => "alif",
            Phoneme::AlifMofakhama => "alif_mofakhama",
            Phoneme::YaaMadd => "yaa_madd",
            Phoneme::WawMadd => "waw_madd",
            Phoneme::Fatha => "fatha",
            Phoneme::Dama => "dama",
            Phoneme::Kasra => "kasra",
            Phoneme::FathaMomala => "fatha_momala",
            Phoneme::AlifMomala => "alif_momala",
            Phoneme::HamzaMosahala => "hamza_mosahala",
            Phoneme::Qlqla => "qlqla",
            Phoneme::NoonMokhfah => "noon_mokhfah",
            Phoneme::MeemMokhfah => "meem_mokhfah",
            Phoneme::Sakt => "sakt",
            Phoneme::DamaMokhtalasa => "dama_mokhtalasa",
        }
    }

    pub fn from_name(name: &str) -> Option<Phoneme> {
        Phoneme::ALL.iter().copied().find(|p| p.name() == name)
    }

    /// 1-based token id; 0 is reserved for the CTC blank.
    pub fn token_id(&self) -> u16 {
        *self as u16 + 1
    }

    pub fn from_token_id(id: u16) -> Option<Phoneme> {
        if id == 0 || id as usize > Phoneme::ALL.len() {
            None
        } else {
            Some(Phoneme::ALL[id as usize - 1])
        }
    }

    /// True for the symbols that repeat once per madd beat.
    pub fn is_madd_vowel(&self) -> bool {
        matches!(
            self,
            Phoneme::Alif | Phoneme::AlifMofakhama | Phoneme::YaaMadd | Phoneme::WawMadd
        )
    }
}

/// Pause and start context of the utterance being phonetized.
///
/// Inputs are single wasl-connected utterances; a mid-text pause requires
/// the caller to split the text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UtteranceContext {
    pub starts_utterance: bool,
    pub ends_with_pause: bool,
}

impl Default for UtteranceContext {
    fn default() -> Self {
        UtteranceContext {
            starts_utterance: true,
            ends_with_pause: true,
        }
    }
}

impl UtteranceContext {
    pub fn new(starts_utterance: bool, ends_with_pause: bool) -> Self {
        UtteranceContext {
            starts_utterance,
            ends_with_pause,
        }
    }
}

/// Emphasis forced by a word-specific Moshaf ruling, attached to one phoneme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmphasisOverride {
    Tafkheem,
    Tarqeeq,
}

/// Output of phonetization: the phoneme string plus the per-phoneme context
/// the sifat extractor needs (nasalization sites and forced raa emphasis).
#[derive(Debug, Clone, PartialEq)]
pub struct PhonemeSequence {
    phonemes: Vec<Phoneme>,
    source_text: String,
    attrs_fingerprint: u64,
    ghunnah: Vec<bool>,
    emphasis: Vec<Option<EmphasisOverride>>,
}

impl PhonemeSequence {
    pub fn phonemes(&self) -> &[Phoneme] {
        &self.phonemes
    }

    pub fn source_text(&self) -> &str {
        &self.source_text
    }

    pub fn attrs_fingerprint(&self) -> u64 {
        self.attrs_fingerprint
    }

    /// Per-phoneme nasalization flags recorded by the rewrite pipeline
    /// (stressed nasals, nasalized idgham targets).
    pub fn ghunnah_flags(&self) -> &[bool] {
        &self.ghunnah
    }

    /// Per-phoneme forced-emphasis sites recorded by the special-case rules.
    pub fn emphasis_overrides(&self) -> &[Option<EmphasisOverride>] {
        &self.emphasis
    }

    pub fn len(&self) -> usize {
        self.phonemes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phonemes.is_empty()
    }

    /// Space-separated phoneme names, the record format used by the CLI.
    pub fn names(&self) -> String {
        self.phonemes
            .iter()
            .map(|p| p.name())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Working text between rewrite operations. `stage` counts applied
/// operations: 0 is sanitized input, 26 is ready for phoneme encoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntermediateText {
    chars: Vec<char>,
    stage: u8,
}

impl IntermediateText {
    /// Validates and canonicalizes raw Uthmani input (stage 0): unknown code
    /// points are rejected, pause/ornament annotations are dropped, combining
    /// marks are put in a fixed order and precomposed madda-alif is split.
    pub fn from_input(text: &str) -> Result<Self> {
        let chars = pipeline::sanitize(text)?;
        Ok(IntermediateText { chars, stage: 0 })
    }

    pub fn stage(&self) -> u8 {
        self.stage
    }

    pub fn value(&self) -> String {
        self.chars.iter().collect()
    }

    pub(crate) fn chars(&self) -> &[char] {
        &self.chars
    }

    pub(crate) fn parts(self) -> (Vec<char>, u8) {
        (self.chars, self.stage)
    }

    pub(crate) fn assemble(chars: Vec<char>, stage: u8) -> Self {
        IntermediateText { chars, stage }
    }

    /// Test-only constructor for staging mid-pipeline fixtures.
    pub fn at_stage(text: &str, stage: u8) -> Self {
        IntermediateText {
            chars: text.chars().collect(),
            stage,
        }
    }
}

// Internal marker characters (private use area). The assignment is part of
// the bit-exact contract; see docs/alphabet.md.
pub(crate) const MK_QLQLA: char = '\u{E000}';
pub(crate) const MK_SAKT: char = '\u{E001}';
pub(crate) const MK_NOON_MOKHFAH: char = '\u{E002}';
pub(crate) const MK_MEEM_MOKHFAH: char = '\u{E003}';
pub(crate) const MK_FATHA_MOMALA: char = '\u{E004}';
pub(crate) const MK_ALIF_MOMALA: char = '\u{E005}';
pub(crate) const MK_HAMZA_MOSAHALA: char = '\u{E006}';
pub(crate) const MK_DAMA_MOKHTALASA: char = '\u{E007}';
pub(crate) const MK_MADD_ALIF: char = '\u{E008}';
pub(crate) const MK_MADD_WAW: char = '\u{E009}';
pub(crate) const MK_MADD_YAA: char = '\u{E00A}';
pub(crate) const MK_MADD_ALIF_MOFAKHAMA: char = '\u{E00B}';
pub(crate) const MK_GHUNNAH: char = '\u{E00C}';
pub(crate) const MK_TAFKHEEM: char = '\u{E00D}';
pub(crate) const MK_TARQEEQ: char = '\u{E00E}';
pub(crate) const MK_SILAH_WAW: char = '\u{E00F}';
pub(crate) const MK_SILAH_YAA: char = '\u{E010}';
pub(crate) const MK_IZHAR: char = '\u{E011}';
pub(crate) const MK_LEEN_WAW: char = '\u{E012}';
pub(crate) const MK_LEEN_YAA: char = '\u{E013}';

fn consonant_for(c: char) -> Option<Phoneme> {
    Some(match c {
        'ء' => Phoneme::Hamza,
        'ب' => Phoneme::Baa,
        'ت' => Phoneme::Taa,
        'ث' => Phoneme::Thaa,
        'ج' => Phoneme::Jeem,
        'ح' => Phoneme::HaaMohmala,
        'خ' => Phoneme::Khaa,
        'د' => Phoneme::Daal,
        'ذ' => Phoneme::Thaal,
        'ر' => Phoneme::Raa,
        'ز' => Phoneme::Zay,
        'س' => Phoneme::Seen,
        'ش' => Phoneme::Sheen,
        'ص' => Phoneme::Saad,
        'ض' => Phoneme::Daad,
        'ط' => Phoneme::TaaMofakhama,
        'ظ' => Phoneme::ZaaMofakhama,
        'ع' => Phoneme::Ayn,
        'غ' => Phoneme::Ghyn,
        'ف' => Phoneme::Faa,
        'ق' => Phoneme::Qaf,
        'ك' => Phoneme::Kaf,
        'ل' => Phoneme::Lam,
        'م' => Phoneme::Meem,
        'ن' => Phoneme::Noon,
        'ه' => Phoneme::Haa,
        'و' => Phoneme::Waw,
        'ي' => Phoneme::Yaa,
        _ => return None,
    })
}

/// Encodes a stage-26 rewrite result as a phoneme sequence.
///
/// The mapping is a fixed character-to-phoneme table; any residual character
/// outside it signals a pipeline bug and comes back as an encoding error.
pub fn encode_phonemes(text: &IntermediateText) -> Result<PhonemeSequence> {
    if text.stage() != 26 {
        return Err(Error::Pipeline {
            op: 26,
            name: "encode",
            message: format!("expected stage 26 input, got stage {}", text.stage()),
        });
    }
    let mut phonemes = Vec::new();
    let mut ghunnah = Vec::new();
    let mut emphasis = Vec::new();
    let mut push = |p: Phoneme, g: bool| {
        phonemes.push(p);
        ghunnah.push(g);
        emphasis.push(None);
    };
    for (offset, &c) in text.chars().iter().enumerate() {
        if c == ' ' {
            continue;
        }
        if let Some(p) = consonant_for(c) {
            push(p, false);
            continue;
        }
        match c {
            '\u{064E}' => push(Phoneme::Fatha, false),
            '\u{064F}' => push(Phoneme::Dama, false),
            '\u{0650}' => push(Phoneme::Kasra, false),
            MK_QLQLA => push(Phoneme::Qlqla, false),
            MK_SAKT => push(Phoneme::Sakt, false),
            MK_NOON_MOKHFAH => push(Phoneme::NoonMokhfah, true),
            MK_MEEM_MOKHFAH => push(Phoneme::MeemMokhfah, true),
            MK_FATHA_MOMALA => push(Phoneme::FathaMomala, false),
            MK_ALIF_MOMALA => push(Phoneme::AlifMomala, false),
            MK_HAMZA_MOSAHALA => push(Phoneme::HamzaMosahala, false),
            MK_DAMA_MOKHTALASA => push(Phoneme::DamaMokhtalasa, false),
            MK_MADD_ALIF => push(Phoneme::Alif, false),
            MK_MADD_ALIF_MOFAKHAMA => push(Phoneme::AlifMofakhama, false),
            MK_MADD_WAW => push(Phoneme::WawMadd, false),
            MK_MADD_YAA => push(Phoneme::YaaMadd, false),
            MK_LEEN_WAW => push(Phoneme::Waw, false),
            MK_LEEN_YAA => push(Phoneme::Yaa, false),
            MK_GHUNNAH => match ghunnah.last_mut() {
                Some(g) => *g = true,
                None => {
                    return Err(Error::Encoding {
                        offset,
                        code: c as u32,
                    })
                }
            },
            MK_TAFKHEEM | MK_TARQEEQ => match emphasis.last_mut() {
                Some(e) => {
                    *e = Some(if c == MK_TAFKHEEM {
                        EmphasisOverride::Tafkheem
                    } else {
                        EmphasisOverride::Tarqeeq
                    })
                }
                None => {
                    return Err(Error::Encoding {
                        offset,
                        code: c as u32,
                    })
                }
            },
            other => {
                return Err(Error::Encoding {
                    offset,
                    code: other as u32,
                })
            }
        }
    }
    Ok(PhonemeSequence {
        phonemes,
        source_text: String::new(),
        attrs_fingerprint: 0,
        ghunnah,
        emphasis,
    })
}

/// Converts Uthmani text to the phoneme script under one Moshaf profile and
/// utterance context, applying the 26 rewrite operations in their fixed
/// order and encoding the result.
pub fn phonetize(
    uthmani: &str,
    attrs: &MoshafAttributes,
    ctx: UtteranceContext,
) -> Result<PhonemeSequence> {
    let mut text = IntermediateText::from_input(uthmani)?;
    for op in 1..=26 {
        text = pipeline::apply_operation(op, text, attrs, ctx)?;
    }
    let mut seq = encode_phonemes(&text)?;
    seq.source_text = uthmani.to_string();
    seq.attrs_fingerprint = attrs.fingerprint();
    Ok(seq)
}
