//! The sifat level: a ten-attribute articulation vector for every phoneme.
//!
//! Context-free attributes come from an auditable data table (one row per
//! phoneme, `data/sifat-base.tsv`); the extractor resolves the
//! context-dependent ones: emphasis (raa and lam rules, vowel inheritance),
//! qalqala realization, and nasalization sites. Inhiraf and Leen are not
//! modeled; Leen is already expressed by the madd representation.

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::moshaf::MoshafAttributes;
use crate::phonetics::{EmphasisOverride, Phoneme, PhonemeSequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HamsOrJahr {
    Hams,
    Jahr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ShiddaOrRakhawa {
    Shadeed,
    Between,
    Rikhw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TafkheemOrTaqeeq {
    Mofakham,
    Moraqaq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Itbaq {
    Monfateh,
    Motbaq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Safeer {
    Safeer,
    NoSafeer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Qalqla {
    Moqalqal,
    NotMoqalqal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tikraar {
    Mokarar,
    NotMokarar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tafashie {
    Motafashie,
    NotMotafashie,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Istitala {
    Mostateel,
    NotMostateel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ghonna {
    Maghnoon,
    NotMaghnoon,
}

/// The ten attributes attached to one phoneme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SifatVector {
    pub hams_or_jahr: HamsOrJahr,
    pub shidda_or_rakhawa: ShiddaOrRakhawa,
    pub tafkheem_or_taqeeq: TafkheemOrTaqeeq,
    pub itbaq: Itbaq,
    pub safeer: Safeer,
    pub qalqla: Qalqla,
    pub tikraar: Tikraar,
    pub tafashie: Tafashie,
    pub istitala: Istitala,
    pub ghonna: Ghonna,
}

impl SifatVector {
    /// Ten-character compact code, one character per attribute:
    /// h/j, s/b/r, m/q, o/t, f/n, m/n, k/n, t/n, s/n, g/n.
    pub fn compact_code(&self) -> String {
        let mut s = String::with_capacity(10);
        s.push(match self.hams_or_jahr {
            HamsOrJahr::Hams => 'h',
            HamsOrJahr::Jahr => 'j',
        });
        s.push(match self.shidda_or_rakhawa {
            ShiddaOrRakhawa::Shadeed => 's',
            ShiddaOrRakhawa::Between => 'b',
            ShiddaOrRakhawa::Rikhw => 'r',
        });
        s.push(match self.tafkheem_or_taqeeq {
            TafkheemOrTaqeeq::Mofakham => 'm',
            TafkheemOrTaqeeq::Moraqaq => 'q',
        });
        s.push(match self.itbaq {
            Itbaq::Motbaq => 't',
            Itbaq::Monfateh => 'o',
        });
        s.push(match self.safeer {
            Safeer::Safeer => 'f',
            Safeer::NoSafeer => 'n',
        });
        s.push(match self.qalqla {
            Qalqla::Moqalqal => 'm',
            Qalqla::NotMoqalqal => 'n',
        });
        s.push(match self.tikraar {
            Tikraar::Mokarar => 'k',
            Tikraar::NotMokarar => 'n',
        });
        s.push(match self.tafashie {
            Tafashie::Motafashie => 't',
            Tafashie::NotMotafashie => 'n',
        });
        s.push(match self.istitala {
            Istitala::Mostateel => 's',
            Istitala::NotMostateel => 'n',
        });
        s.push(match self.ghonna {
            Ghonna::Maghnoon => 'g',
            Ghonna::NotMaghnoon => 'n',
        });
        s
    }

    /// Attribute values as the full names used in record output.
    pub fn value_names(&self) -> [&'static str; 10] {
        [
            match self.hams_or_jahr {
                HamsOrJahr::Hams => "hams",
                HamsOrJahr::Jahr => "jahr",
            },
            match self.shidda_or_rakhawa {
                ShiddaOrRakhawa::Shadeed => "shadeed",
                ShiddaOrRakhawa::Between => "between",
                ShiddaOrRakhawa::Rikhw => "rikhw",
            },
            match self.tafkheem_or_taqeeq {
                TafkheemOrTaqeeq::Mofakham => "mofakham",
                TafkheemOrTaqeeq::Moraqaq => "moraqaq",
            },
            match self.itbaq {
                Itbaq::Monfateh => "monfateh",
                Itbaq::Motbaq => "motbaq",
            },
            match self.safeer {
                Safeer::Safeer => "safeer",
                Safeer::NoSafeer => "no_safeer",
            },
            match self.qalqla {
                Qalqla::Moqalqal => "moqalqal",
                Qalqla::NotMoqalqal => "not_moqalqal",
            },
            match self.tikraar {
                Tikraar::Mokarar => "mokarar",
                Tikraar::NotMokarar => "not_mokarar",
            },
            match self.tafashie {
                Tafashie::Motafashie => "motafashie",
                Tafashie::NotMotafashie => "not_motafashie",
            },
            match self.istitala {
                Istitala::Mostateel => "mostateel",
                Istitala::NotMostateel => "not_mostateel",
            },
            match self.ghonna {
                Ghonna::Maghnoon => "maghnoon",
                Ghonna::NotMaghnoon => "not_maghnoon",
            },
        ]
    }
}

/// The eleven transcription level names: phonemes plus the ten attributes.
pub const LEVEL_NAMES: [&str; 11] = [
    "phonemes",
    "hams_or_jahr",
    "shidda_or_rakhawa",
    "tafkheem_or_taqeeq",
    "itbaq",
    "safeer",
    "qalqla",
    "tikraar",
    "tafashie",
    "istitala",
    "ghonna",
];

/// Context-free attributes of one phoneme: everything the letter fixes by
/// itself. Emphasis may defer to context; qalqala and ghonna are potentials
/// realized per site.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaseSifat {
    pub hams_or_jahr: HamsOrJahr,
    pub shidda_or_rakhawa: ShiddaOrRakhawa,
    pub emphasis: Option<TafkheemOrTaqeeq>,
    pub itbaq: Itbaq,
    pub safeer: Safeer,
    pub qalqla_potential: bool,
    pub tikraar: Tikraar,
    pub tafashie: Tafashie,
    pub istitala: Istitala,
    pub ghonna_potential: bool,
}

pub const SIFAT_BASE_TABLE: &str = include_str!("../data/sifat-base.tsv");

static BASE_TABLE: Lazy<Vec<BaseSifat>> = Lazy::new(|| {
    let mut table = vec![None; Phoneme::ALL.len()];
    for line in SIFAT_BASE_TABLE.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        assert_eq!(fields.len(), 11, "sifat table row: {line}");
        let phoneme = Phoneme::from_name(fields[0])
            .unwrap_or_else(|| panic!("unknown phoneme in sifat table: {}", fields[0]));
        let row = BaseSifat {
            hams_or_jahr: match fields[1] {
                "hams" => HamsOrJahr::Hams,
                "jahr" => HamsOrJahr::Jahr,
                v => panic!("bad hams_or_jahr {v}"),
            },
            shidda_or_rakhawa: match fields[2] {
                "shadeed" => ShiddaOrRakhawa::Shadeed,
                "between" => ShiddaOrRakhawa::Between,
                "rikhw" => ShiddaOrRakhawa::Rikhw,
                v => panic!("bad shidda_or_rakhawa {v}"),
            },
            emphasis: match fields[3] {
                "mofakham" => Some(TafkheemOrTaqeeq::Mofakham),
                "moraqaq" => Some(TafkheemOrTaqeeq::Moraqaq),
                "context" => None,
                v => panic!("bad tafkheem_or_taqeeq {v}"),
            },
            itbaq: match fields[4] {
                "monfateh" => Itbaq::Monfateh,
                "motbaq" => Itbaq::Motbaq,
                v => panic!("bad itbaq {v}"),
            },
            safeer: match fields[5] {
                "safeer" => Safeer::Safeer,
                "no_safeer" => Safeer::NoSafeer,
                v => panic!("bad safeer {v}"),
            },
            qalqla_potential: fields[6] == "yes",
            tikraar: match fields[7] {
                "mokarar" => Tikraar::Mokarar,
                "not_mokarar" => Tikraar::NotMokarar,
                v => panic!("bad tikraar {v}"),
            },
            tafashie: match fields[8] {
                "motafashie" => Tafashie::Motafashie,
                "not_motafashie" => Tafashie::NotMotafashie,
                v => panic!("bad tafashie {v}"),
            },
            istitala: match fields[9] {
                "mostateel" => Istitala::Mostateel,
                "not_mostateel" => Istitala::NotMostateel,
                v => panic!("bad istitala {v}"),
            },
            ghonna_potential: fields[10] == "yes",
        };
        table[phoneme as usize] = Some(row);
    }
    table
        .into_iter()
        .enumerate()
        .map(|(i, row)| row.unwrap_or_else(|| panic!("missing sifat row for {}", Phoneme::ALL[i].name())))
        .collect()
});

/// The context-free attributes fixed by the letter itself.
pub fn base_sifat(p: Phoneme) -> BaseSifat {
    BASE_TABLE[p as usize]
}

/// Attribute vectors parallel to a phoneme sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SifatSequence {
    vectors: Vec<SifatVector>,
}

impl SifatSequence {
    pub fn vectors(&self) -> &[SifatVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Space-separated compact codes, parallel to the phoneme record field.
    pub fn compact_codes(&self) -> String {
        self.vectors
            .iter()
            .map(|v| v.compact_code())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn is_vowel_like(p: Phoneme) -> bool {
    matches!(
        p,
        Phoneme::Fatha
            | Phoneme::Dama
            | Phoneme::Kasra
            | Phoneme::FathaMomala
            | Phoneme::DamaMokhtalasa
            | Phoneme::Alif
            | Phoneme::AlifMofakhama
            | Phoneme::AlifMomala
            | Phoneme::YaaMadd
            | Phoneme::WawMadd
    )
}

fn is_istialaa(p: Phoneme) -> bool {
    matches!(
        p,
        Phoneme::Khaa
            | Phoneme::Saad
            | Phoneme::Daad
            | Phoneme::Ghyn
            | Phoneme::TaaMofakhama
            | Phoneme::Qaf
            | Phoneme::ZaaMofakhama
    )
}

/// Resolves raa emphasis from its surroundings: its own vowel decides when
/// present; a sakin raa follows the vowel before it, with the classical
/// exception of a following unlowered isti'laa letter.
fn raa_emphasis(seq: &[Phoneme], i: usize) -> TafkheemOrTaqeeq {
    match seq.get(i + 1) {
        Some(Phoneme::Fatha | Phoneme::Dama) => return TafkheemOrTaqeeq::Mofakham,
        Some(Phoneme::Kasra | Phoneme::FathaMomala) => return TafkheemOrTaqeeq::Moraqaq,
        _ => {}
    }
    // sakin raa: look back
    let back = (0..i).rev().find_map(|j| {
        let p = seq[j];
        match p {
            Phoneme::Kasra | Phoneme::YaaMadd | Phoneme::Yaa => Some(TafkheemOrTaqeeq::Moraqaq),
            Phoneme::Fatha
            | Phoneme::Dama
            | Phoneme::Alif
            | Phoneme::AlifMofakhama
            | Phoneme::WawMadd
            | Phoneme::Waw => Some(TafkheemOrTaqeeq::Mofakham),
            _ => None,
        }
    });
    let mut emphasis = back.unwrap_or(TafkheemOrTaqeeq::Mofakham);
    if emphasis == TafkheemOrTaqeeq::Moraqaq {
        // kasra before, but a following isti'laa letter not lowered by its
        // own kasra pulls the raa back to emphasis
        if let Some(&next) = seq.get(i + 1) {
            if is_istialaa(next) && seq.get(i + 2) != Some(&Phoneme::Kasra) {
                emphasis = TafkheemOrTaqeeq::Mofakham;
            }
        }
    }
    emphasis
}

/// True when the lam at `i` belongs to the divine name: doubled lam, fatha,
/// then the name's madd alif and haa.
fn lam_is_divine(seq: &[Phoneme], i: usize) -> bool {
    let window = |a: usize| -> Option<bool> {
        let l2 = *seq.get(a)?;
        let f = *seq.get(a + 1)?;
        let alif = *seq.get(a + 2)?;
        let h = *seq.get(a + 3)?;
        Some(
            l2 == Phoneme::Lam
                && f == Phoneme::Fatha
                && matches!(alif, Phoneme::Alif | Phoneme::AlifMofakhama)
                && h == Phoneme::Haa,
        )
    };
    // i may be the first or the second lam of the doubled pair
    (seq.get(i + 1) == Some(&Phoneme::Lam) && window(i + 1).unwrap_or(false))
        || (i > 0 && seq.get(i.wrapping_sub(1)) == Some(&Phoneme::Lam) && window(i).unwrap_or(false))
}

/// Attaches a full ten-attribute vector to every phoneme of a sequence.
///
/// Emphasis resolution: fixed mofakham letters stay mofakham; raa follows
/// the raa rules (honoring word-specific overrides recorded by the
/// phonetizer); the lam of the divine name is emphatic exactly when its
/// madd alif is; vowels and madd letters inherit from the governing
/// consonant. Qalqala is realized at the echo marker and its letter;
/// ghonna at the hidden nasals and the sites the phonetizer flagged.
pub fn extract_sifat(seq: &PhonemeSequence, _attrs: &MoshafAttributes) -> Result<SifatSequence> {
    let phonemes = seq.phonemes();
    let ghunnah = seq.ghunnah_flags();
    let overrides = seq.emphasis_overrides();
    let mut vectors = Vec::with_capacity(phonemes.len());
    let mut last_consonant_emphasis = TafkheemOrTaqeeq::Moraqaq;

    for (i, &p) in phonemes.iter().enumerate() {
        let base = base_sifat(p);
        let emphasis = if let Some(e) = overrides.get(i).copied().flatten() {
            match e {
                EmphasisOverride::Tafkheem => TafkheemOrTaqeeq::Mofakham,
                EmphasisOverride::Tarqeeq => TafkheemOrTaqeeq::Moraqaq,
            }
        } else if let Some(fixed) = base.emphasis {
            fixed
        } else if p == Phoneme::Raa {
            raa_emphasis(phonemes, i)
        } else if p == Phoneme::Lam {
            if lam_is_divine(phonemes, i) {
                let divine_alif = phonemes[i..]
                    .iter()
                    .take(4)
                    .any(|&x| x == Phoneme::AlifMofakhama);
                if divine_alif {
                    TafkheemOrTaqeeq::Mofakham
                } else {
                    TafkheemOrTaqeeq::Moraqaq
                }
            } else {
                TafkheemOrTaqeeq::Moraqaq
            }
        } else if is_vowel_like(p) {
            last_consonant_emphasis
        } else if matches!(p, Phoneme::NoonMokhfah | Phoneme::MeemMokhfah) {
            // a hidden nasal colors toward a following isti'laa letter
            let next_letter = phonemes[i + 1..]
                .iter()
                .find(|&&x| !matches!(x, Phoneme::NoonMokhfah | Phoneme::MeemMokhfah));
            match next_letter {
                Some(&n) if is_istialaa(n) => TafkheemOrTaqeeq::Mofakham,
                _ => TafkheemOrTaqeeq::Moraqaq,
            }
        } else if p == Phoneme::Qlqla {
            last_consonant_emphasis
        } else if p == Phoneme::Sakt {
            TafkheemOrTaqeeq::Moraqaq
        } else {
            return Err(Error::InvalidInput(format!(
                "no emphasis rule for phoneme {}",
                p.name()
            )));
        };
        if !is_vowel_like(p) && p != Phoneme::Qlqla && p != Phoneme::Sakt {
            last_consonant_emphasis = emphasis;
        }

        let qalqla = if p == Phoneme::Qlqla
            || (base.qalqla_potential && phonemes.get(i + 1) == Some(&Phoneme::Qlqla))
        {
            Qalqla::Moqalqal
        } else {
            Qalqla::NotMoqalqal
        };

        let ghonna = if matches!(p, Phoneme::NoonMokhfah | Phoneme::MeemMokhfah)
            || (base.ghonna_potential && ghunnah.get(i).copied().unwrap_or(false))
        {
            Ghonna::Maghnoon
        } else if ghunnah.get(i).copied().unwrap_or(false)
            && matches!(p, Phoneme::Yaa | Phoneme::Waw | Phoneme::Lam | Phoneme::Raa)
        {
            // nasalized idgham target
            Ghonna::Maghnoon
        } else {
            Ghonna::NotMaghnoon
        };

        vectors.push(SifatVector {
            hams_or_jahr: base.hams_or_jahr,
            shidda_or_rakhawa: base.shidda_or_rakhawa,
            tafkheem_or_taqeeq: emphasis,
            itbaq: base.itbaq,
            safeer: base.safeer,
            qalqla,
            tikraar: base.tikraar,
            tafashie: base.tafashie,
            istitala: base.istitala,
            ghonna,
        });
    }
    Ok(SifatSequence { vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moshaf::MoshafAttributes;
    use crate::phonetics::{phonetize, UtteranceContext};

    #[test]
    fn base_table_is_total_and_letter_exclusive() {
        for p in Phoneme::ALL {
            let b = base_sifat(p);
            if b.safeer == Safeer::Safeer {
                assert!(matches!(p, Phoneme::Saad | Phoneme::Zay | Phoneme::Seen));
            }
            if b.tikraar == Tikraar::Mokarar {
                assert_eq!(p, Phoneme::Raa);
            }
            if b.tafashie == Tafashie::Motafashie {
                assert_eq!(p, Phoneme::Sheen);
            }
            if b.istitala == Istitala::Mostateel {
                assert_eq!(p, Phoneme::Daad);
            }
            if b.itbaq == Itbaq::Motbaq {
                assert!(matches!(
                    p,
                    Phoneme::Saad | Phoneme::Daad | Phoneme::TaaMofakhama | Phoneme::ZaaMofakhama
                ));
            }
            if b.qalqla_potential {
                assert!(matches!(
                    p,
                    Phoneme::Qaf | Phoneme::TaaMofakhama | Phoneme::Baa | Phoneme::Jeem
                        | Phoneme::Daal | Phoneme::Qlqla
                ));
            }
        }
    }

    #[test]
    fn daad_and_seen_rows() {
        let daad = base_sifat(Phoneme::Daad);
        assert_eq!(daad.istitala, Istitala::Mostateel);
        assert_eq!(daad.itbaq, Itbaq::Motbaq);
        let seen = base_sifat(Phoneme::Seen);
        assert_eq!(seen.safeer, Safeer::Safeer);
    }

    #[test]
    fn empty_sequence() {
        let attrs = MoshafAttributes::standard();
        let seq = phonetize("", &attrs, UtteranceContext::default()).unwrap();
        let sifat = extract_sifat(&seq, &attrs).unwrap();
        assert!(sifat.is_empty());
    }

    #[test]
    fn lengths_match_on_corpus_words() {
        let attrs = MoshafAttributes::standard();
        for text in ["بِسْمِ ٱللَّهِ ٱلرَّحْمَٰنِ ٱلرَّحِيمِ", "قُلْ هُوَ ٱللَّهُ أَحَدٌ"] {
            let seq = phonetize(text, &attrs, UtteranceContext::default()).unwrap();
            let sifat = extract_sifat(&seq, &attrs).unwrap();
            assert_eq!(sifat.len(), seq.len());
        }
    }

    #[test]
    fn shadda_noon_rows_are_nasal() {
        let attrs = MoshafAttributes::standard();
        let seq = phonetize("إِنَّ", &attrs, UtteranceContext::new(true, false)).unwrap();
        let sifat = extract_sifat(&seq, &attrs).unwrap();
        let noons: Vec<usize> = seq
            .phonemes()
            .iter()
            .enumerate()
            .filter(|(_, &p)| p == Phoneme::Noon)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(noons.len(), 3);
        for i in noons {
            assert_eq!(sifat.vectors()[i].ghonna, Ghonna::Maghnoon);
        }
    }

    #[test]
    fn divine_name_lam_follows_preceding_vowel() {
        let attrs = MoshafAttributes::standard();
        // after damma: emphatic
        let seq = phonetize("هُوَ ٱللَّهُ", &attrs, UtteranceContext::new(true, false)).unwrap();
        let sifat = extract_sifat(&seq, &attrs).unwrap();
        let lams: Vec<usize> = seq
            .phonemes()
            .iter()
            .enumerate()
            .filter(|(_, &p)| p == Phoneme::Lam)
            .map(|(i, _)| i)
            .collect();
        assert!(!lams.is_empty());
        for &i in &lams {
            assert_eq!(
                sifat.vectors()[i].tafkheem_or_taqeeq,
                TafkheemOrTaqeeq::Mofakham,
                "lam at {i}"
            );
        }
        // after kasra: lowered
        let seq = phonetize("بِسْمِ ٱللَّهِ", &attrs, UtteranceContext::new(true, false)).unwrap();
        let sifat = extract_sifat(&seq, &attrs).unwrap();
        for (i, &p) in seq.phonemes().iter().enumerate() {
            if p == Phoneme::Lam {
                assert_eq!(
                    sifat.vectors()[i].tafkheem_or_taqeeq,
                    TafkheemOrTaqeeq::Moraqaq,
                    "lam at {i}"
                );
            }
        }
    }

    #[test]
    fn raa_with_fatha_is_emphatic_with_kasra_lowered() {
        let attrs = MoshafAttributes::standard();
        let seq = phonetize("رَبِّ", &attrs, UtteranceContext::new(true, false)).unwrap();
        let sifat = extract_sifat(&seq, &attrs).unwrap();
        assert_eq!(seq.phonemes()[0], Phoneme::Raa);
        assert_eq!(sifat.vectors()[0].tafkheem_or_taqeeq, TafkheemOrTaqeeq::Mofakham);

        let seq = phonetize("رِجَالٌ", &attrs, UtteranceContext::new(true, false)).unwrap();
        let sifat = extract_sifat(&seq, &attrs).unwrap();
        assert_eq!(seq.phonemes()[0], Phoneme::Raa);
        assert_eq!(sifat.vectors()[0].tafkheem_or_taqeeq, TafkheemOrTaqeeq::Moraqaq);
    }

    #[test]
    fn qalqala_marks_letter_and_echo() {
        let attrs = MoshafAttributes::standard();
        let seq = phonetize("لَقَدْ", &attrs, UtteranceContext::new(true, false)).unwrap();
        let sifat = extract_sifat(&seq, &attrs).unwrap();
        let daal = seq.phonemes().iter().position(|&p| p == Phoneme::Daal).unwrap();
        let echo = seq.phonemes().iter().position(|&p| p == Phoneme::Qlqla).unwrap();
        assert_eq!(echo, daal + 1);
        assert_eq!(sifat.vectors()[daal].qalqla, Qalqla::Moqalqal);
        assert_eq!(sifat.vectors()[echo].qalqla, Qalqla::Moqalqal);
        // the qaf here is voweled: no echo
        let qaf = seq.phonemes().iter().position(|&p| p == Phoneme::Qaf).unwrap();
        assert_eq!(sifat.vectors()[qaf].qalqla, Qalqla::NotMoqalqal);
    }

    #[test]
    fn vowels_inherit_emphasis() {
        let attrs = MoshafAttributes::standard();
        let seq = phonetize("صِرَٰطَ", &attrs, UtteranceContext::new(true, false)).unwrap();
        let sifat = extract_sifat(&seq, &attrs).unwrap();
        // the kasra after saad inherits its emphasis
        assert_eq!(seq.phonemes()[0], Phoneme::Saad);
        assert_eq!(seq.phonemes()[1], Phoneme::Kasra);
        assert_eq!(sifat.vectors()[1].tafkheem_or_taqeeq, TafkheemOrTaqeeq::Mofakham);
        // the alif after the fatha raa is the emphatic variant
        assert!(seq.phonemes().contains(&Phoneme::AlifMofakhama));
    }
}
