//! Digitized Quran text store: Tanzil-format loading, word indexing,
//! matching-oriented normalization and script alignment.

use std::collections::BTreeMap;
use std::fmt;
use std::io::BufRead;
use std::ops::Range;

use crate::error::{Error, Result};

/// Which orthography a corpus holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScriptKind {
    Uthmani,
    Imlaey,
}

impl fmt::Display for ScriptKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScriptKind::Uthmani => write!(f, "uthmani"),
            ScriptKind::Imlaey => write!(f, "imlaey"),
        }
    }
}

/// One aya of one sura in a single script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verse {
    pub sura_index: u16,
    pub aya_index: u32,
    pub text: String,
}

/// Back-reference from a flattened word to its aya.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordRef {
    pub aya_index: u32,
    pub word_in_aya: u16,
    pub word: String,
}

/// An indexed, immutable Quran text store.
///
/// Verses are kept in file order; every sura additionally carries a flattened
/// word list so that matching can slice arbitrary word windows.
#[derive(Debug, Clone)]
pub struct QuranCorpus {
    script_kind: ScriptKind,
    verses: Vec<Verse>,
    words: BTreeMap<u16, Vec<WordRef>>,
}

impl QuranCorpus {
    /// Parses a Tanzil-format stream: one `sura|aya|text` record per line,
    /// `#` comments and blank lines skipped.
    pub fn load_tanzil<R: BufRead>(reader: R, script_kind: ScriptKind) -> Result<Self> {
        let mut verses: Vec<Verse> = Vec::new();
        let mut words: BTreeMap<u16, Vec<WordRef>> = BTreeMap::new();

        for (line_no, line) in reader.lines().enumerate() {
            let line_no = line_no + 1;
            let raw = line?;
            let line = raw.trim_start_matches('\u{feff}').trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split('|');
            let (sura, aya, text) = match (fields.next(), fields.next(), fields.next(), fields.next()) {
                (Some(s), Some(a), Some(t), None) => (s, a, t),
                _ => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "expected exactly three |-separated fields".into(),
                    })
                }
            };
            let sura_index: u16 = sura.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("sura index `{sura}` is not an integer"),
            })?;
            if !(1..=114).contains(&sura_index) {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("sura out of range: {sura_index}"),
                });
            }
            let aya_index: u32 = aya.trim().parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("aya index `{aya}` is not an integer"),
            })?;
            if aya_index == 0 {
                return Err(Error::Parse {
                    line: line_no,
                    message: "aya index must be >= 1".into(),
                });
            }
            let text = text.trim();
            if text.is_empty() {
                return Err(Error::Parse {
                    line: line_no,
                    message: "empty aya text".into(),
                });
            }
            if let Some(prev) = verses.last() {
                if (prev.sura_index, prev.aya_index) >= (sura_index, aya_index) {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!(
                            "verse {sura_index}:{aya_index} out of canonical order (after {}:{})",
                            prev.sura_index, prev.aya_index
                        ),
                    });
                }
            }
            let sura_words = words.entry(sura_index).or_default();
            for (w, word) in text.split_whitespace().enumerate() {
                sura_words.push(WordRef {
                    aya_index,
                    word_in_aya: w as u16,
                    word: word.to_string(),
                });
            }
            verses.push(Verse {
                sura_index,
                aya_index,
                text: text.to_string(),
            });
        }

        Ok(QuranCorpus {
            script_kind,
            verses,
            words,
        })
    }

    pub fn script_kind(&self) -> ScriptKind {
        self.script_kind
    }

    pub fn verses(&self) -> &[Verse] {
        &self.verses
    }

    pub fn verse(&self, sura: u16, aya: u32) -> Option<&Verse> {
        self.verses
            .iter()
            .find(|v| v.sura_index == sura && v.aya_index == aya)
    }

    /// Sura numbers present in this corpus, ascending.
    pub fn sura_indices(&self) -> Vec<u16> {
        self.words.keys().copied().collect()
    }

    /// The flattened word list of one sura, with aya back-references.
    pub fn sura_words(&self, sura: u16) -> &[WordRef] {
        self.words.get(&sura).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn sura_word_count(&self, sura: u16) -> usize {
        self.sura_words(sura).len()
    }

    /// Space-joined slice of a sura's word stream.
    ///
    /// `start_word` may be negative; the slice is clamped to the sura bounds
    /// and may come back shorter than `width` near the end.
    pub fn word_window(&self, sura: u16, start_word: i64, width: usize) -> String {
        let words = self.sura_words(sura);
        let start = start_word.max(0) as usize;
        if start >= words.len() || width == 0 {
            return String::new();
        }
        let end = (start + width).min(words.len());
        words[start..end]
            .iter()
            .map(|w| w.word.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Text reduced to bare letters for fuzzy comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedText {
    pub value: String,
    pub source_len_words: usize,
}

impl NormalizedText {
    pub fn len(&self) -> usize {
        self.value.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.value.is_empty()
    }
}

/// Code points removed by [`normalize_for_matching`]: tanween and harakat
/// (U+064B..=U+0652), madda and Quranic harakat (U+0653..=U+065F), dagger
/// alif (U+0670), Quranic annotation signs (U+06D6..=U+06ED), kasheeda
/// (U+0640) and whitespace.
fn in_strip_set(c: char) -> bool {
    matches!(c,
        '\u{064B}'..='\u{065F}'
        | '\u{0670}'
        | '\u{06D6}'..='\u{06ED}'
        | '\u{0640}')
        || c.is_whitespace()
}

/// Strips diacritics, annotation marks and spaces, keeping base letters in
/// order. Hamza-carrier letters and the alif variants are folded to the bare
/// base letter so that Uthmani text compares equal to plain transcript
/// spellings (ٱ/أ/إ/آ → ا, ؤ → و, ئ → ي, ى → ي).
pub fn normalize_for_matching(text: &str) -> NormalizedText {
    let source_len_words = text.split_whitespace().count();
    let mut value = String::with_capacity(text.len());
    for c in text.chars() {
        if in_strip_set(c) {
            continue;
        }
        match c {
            '\u{0671}' | '\u{0623}' | '\u{0625}' | '\u{0622}' => value.push('\u{0627}'),
            '\u{0624}' => value.push('\u{0648}'),
            '\u{0626}' | '\u{0649}' => value.push('\u{064A}'),
            _ => value.push(c),
        }
    }
    NormalizedText {
        value,
        source_len_words,
    }
}

/// A many-to-many alignment between an Imlaey word span and an Uthmani word
/// span, both end-exclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanPair {
    pub imlaey: Range<usize>,
    pub uthmani: Range<usize>,
}

/// Aligns two word lists positionally, with explicit overrides for the spots
/// where the scripts disagree on word boundaries.
///
/// Every override replaces the positional pairs it covers with one merged
/// span pair; outside the overrides, words must pair off one to one.
pub fn align_scripts(
    imlaey_words: &[&str],
    uthmani_words: &[&str],
    overrides: &[SpanPair],
) -> Result<Vec<SpanPair>> {
    for o in overrides {
        if o.imlaey.start >= o.imlaey.end || o.uthmani.start >= o.uthmani.end {
            return Err(Error::InvalidInput(format!(
                "override spans must be non-empty: {o:?}"
            )));
        }
        if o.imlaey.end > imlaey_words.len() || o.uthmani.end > uthmani_words.len() {
            return Err(Error::InvalidInput(format!(
                "override out of bounds: {o:?}"
            )));
        }
    }
    let mut sorted: Vec<&SpanPair> = overrides.iter().collect();
    sorted.sort_by_key(|o| o.imlaey.start);
    for pair in sorted.windows(2) {
        if pair[0].imlaey.end > pair[1].imlaey.start || pair[0].uthmani.end > pair[1].uthmani.start
        {
            return Err(Error::InvalidInput(format!(
                "overlapping overrides: {:?} and {:?}",
                pair[0], pair[1]
            )));
        }
    }

    let mut result = Vec::new();
    let mut i = 0usize; // imlaey cursor
    let mut u = 0usize; // uthmani cursor
    for o in &sorted {
        let gap_i = o.imlaey.start - i;
        let gap_u = o.uthmani.start - u;
        if gap_i != gap_u {
            return Err(Error::Alignment(format!(
                "length mismatch before override at imlaey word {}: {} vs {} unpaired words",
                o.imlaey.start, gap_i, gap_u
            )));
        }
        for k in 0..gap_i {
            result.push(SpanPair {
                imlaey: (i + k)..(i + k + 1),
                uthmani: (u + k)..(u + k + 1),
            });
        }
        result.push(SpanPair {
            imlaey: o.imlaey.clone(),
            uthmani: o.uthmani.clone(),
        });
        i = o.imlaey.end;
        u = o.uthmani.end;
    }
    let tail_i = imlaey_words.len() - i;
    let tail_u = uthmani_words.len() - u;
    if tail_i != tail_u {
        return Err(Error::Alignment(format!(
            "length mismatch after last override: {tail_i} vs {tail_u} unpaired words"
        )));
    }
    for k in 0..tail_i {
        result.push(SpanPair {
            imlaey: (i + k)..(i + k + 1),
            uthmani: (u + k)..(u + k + 1),
        });
    }
    Ok(result)
}

/// Bundled Tanzil-format Uthmani sample (suras 1, 36, 112-114).
pub const BUNDLED_UTHMANI: &str = include_str!("../data/quran-uthmani.txt");
/// Bundled Tanzil-format Imlaey sample (suras 1, 112-114).
pub const BUNDLED_IMLAEY: &str = include_str!("../data/quran-imlaey.txt");

/// Loads the Uthmani sample shipped with the crate.
pub fn bundled_uthmani() -> QuranCorpus {
    QuranCorpus::load_tanzil(BUNDLED_UTHMANI.as_bytes(), ScriptKind::Uthmani)
        .expect("bundled Uthmani sample parses")
}

/// Loads the Imlaey sample shipped with the crate.
pub fn bundled_imlaey() -> QuranCorpus {
    QuranCorpus::load_tanzil(BUNDLED_IMLAEY.as_bytes(), ScriptKind::Imlaey)
        .expect("bundled Imlaey sample parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn load_small_sura() {
        let src = "# header\n112|1|قُلْ هُوَ ٱللَّهُ أَحَدٌ\n112|2|ٱللَّهُ ٱلصَّمَدُ\n112|3|لَمْ يَلِدْ وَلَمْ يُولَدْ\n";
        let corpus = QuranCorpus::load_tanzil(src.as_bytes(), ScriptKind::Uthmani).unwrap();
        assert_eq!(corpus.verses().len(), 3);
        assert_eq!(corpus.verses()[0].sura_index, 112);
        assert_eq!(corpus.verses()[2].aya_index, 3);
        assert_eq!(corpus.sura_word_count(112), 4 + 2 + 4);
    }

    #[test]
    fn sura_out_of_range() {
        let err = QuranCorpus::load_tanzil("0|1|x".as_bytes(), ScriptKind::Uthmani).unwrap_err();
        match err {
            Error::Parse { line, message } => {
                assert_eq!(line, 1);
                assert!(message.contains("sura out of range"), "{message}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn malformed_lines() {
        assert!(QuranCorpus::load_tanzil("1|2".as_bytes(), ScriptKind::Uthmani).is_err());
        assert!(QuranCorpus::load_tanzil("1|x|y".as_bytes(), ScriptKind::Uthmani).is_err());
        assert!(QuranCorpus::load_tanzil("1|1|a\n1|1|b".as_bytes(), ScriptKind::Uthmani).is_err());
    }

    #[test]
    fn bundled_sample_inventory() {
        let corpus = bundled_uthmani();
        assert_eq!(corpus.sura_indices(), vec![1, 36, 112, 113, 114]);
        // ayat are contiguous from 1 within each sura
        for &sura in &corpus.sura_indices() {
            let mut expected = 1u32;
            for v in corpus.verses().iter().filter(|v| v.sura_index == sura) {
                assert_eq!(v.aya_index, expected, "sura {sura}");
                expected += 1;
            }
        }
        let count_36 = corpus.verses().iter().filter(|v| v.sura_index == 36).count();
        assert_eq!(count_36, 83);
    }

    #[test]
    fn word_index_round_trips() {
        let corpus = bundled_uthmani();
        for &sura in &corpus.sura_indices() {
            let mut by_aya: BTreeMap<u32, Vec<&str>> = BTreeMap::new();
            for w in corpus.sura_words(sura) {
                by_aya.entry(w.aya_index).or_default().push(w.word.as_str());
            }
            for v in corpus.verses().iter().filter(|v| v.sura_index == sura) {
                let joined = by_aya.get(&v.aya_index).unwrap().join(" ");
                assert_eq!(joined, v.text);
            }
        }
    }

    #[test]
    fn normalize_empty_and_fixed_point() {
        assert_eq!(normalize_for_matching("").value, "");
        let plain = "قلهواللهاحد";
        assert_eq!(normalize_for_matching(plain).value, plain);
    }

    #[test]
    fn normalize_basmala_char_by_char() {
        // بِسْمِ ٱللَّهِ stripped mark-by-mark leaves the nine base letters,
        // with the wasla folded to plain alif.
        let n = normalize_for_matching("بِسْمِ ٱللَّهِ");
        assert_eq!(n.value, "بسماللە".replace('ە', "ه"));
        assert_eq!(
            n.value.chars().collect::<Vec<_>>(),
            vec!['ب', 'س', 'م', 'ا', 'ل', 'ل', 'ه']
        );
        assert_eq!(n.source_len_words, 2);
    }

    #[test]
    fn normalize_folds_match_imlaey() {
        let uth = bundled_uthmani();
        let iml = bundled_imlaey();
        // Whole-sura normalized text must agree between the scripts for the
        // suras where both are bundled and have no genuine spelling shifts.
        for sura in [112u16, 113, 114, 1] {
            let u = normalize_for_matching(&uth.word_window(sura, 0, usize::MAX / 2));
            let i = normalize_for_matching(&iml.word_window(sura, 0, usize::MAX / 2));
            assert_eq!(u.value, i.value, "sura {sura}");
        }
    }

    #[test]
    fn word_window_clamps() {
        let corpus = bundled_uthmani();
        assert_eq!(corpus.word_window(112, 0, 0), "");
        let total = corpus.sura_word_count(112);
        let whole = corpus.word_window(112, 0, total);
        assert_eq!(whole.split_whitespace().count(), total);
        assert_eq!(corpus.word_window(112, -3, 5), corpus.word_window(112, 0, 5));
        assert_eq!(corpus.word_window(112, total as i64 + 10, 4), "");
    }

    #[test]
    fn align_identity() {
        let a = ["a", "b", "c"];
        let pairs = align_scripts(&a, &a, &[]).unwrap();
        assert_eq!(pairs.len(), 3);
        for (k, p) in pairs.iter().enumerate() {
            assert_eq!(p.imlaey, k..k + 1);
            assert_eq!(p.uthmani, k..k + 1);
        }
    }

    #[test]
    fn align_merged_span() {
        // Imlaey writes the vocative in three words where Uthmani fuses them
        // into one (يا ابن أم -> يبنؤم), the classic misalignment case.
        let imlaey = ["قَالَ", "يَا", "ابْنَ", "أُمَّ", "لَا"];
        let uthmani = ["قَالَ", "يَبْنَؤُمَّ", "لَا"];
        let pairs = align_scripts(
            &imlaey,
            &uthmani,
            &[SpanPair {
                imlaey: 1..4,
                uthmani: 1..2,
            }],
        )
        .unwrap();
        assert_eq!(
            pairs,
            vec![
                SpanPair { imlaey: 0..1, uthmani: 0..1 },
                SpanPair { imlaey: 1..4, uthmani: 1..2 },
                SpanPair { imlaey: 4..5, uthmani: 2..3 },
            ]
        );
    }

    #[test]
    fn align_errors() {
        let a = ["a", "b", "c", "d"];
        let b = ["a", "b", "c", "d", "e"];
        assert!(matches!(
            align_scripts(&a, &b, &[]),
            Err(Error::Alignment(_))
        ));
        let bad = SpanPair { imlaey: 3..5, uthmani: 0..1 };
        assert!(matches!(
            align_scripts(&a, &a, &[bad]),
            Err(Error::InvalidInput(_))
        ));
        let o1 = SpanPair { imlaey: 0..2, uthmani: 0..1 };
        let o2 = SpanPair { imlaey: 1..3, uthmani: 1..2 };
        assert!(align_scripts(&a, &a, &[o1, o2]).is_err());
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(s in "\\PC{0,40}") {
            let once = normalize_for_matching(&s);
            let twice = normalize_for_matching(&once.value);
            prop_assert_eq!(&once.value, &twice.value);
        }

        #[test]
        fn align_partitions_both_sides(n in 1usize..12) {
            let words: Vec<String> = (0..n).map(|i| format!("w{i}")).collect();
            let refs: Vec<&str> = words.iter().map(String::as_str).collect();
            let pairs = align_scripts(&refs, &refs, &[]).unwrap();
            let mut covered_i = vec![false; n];
            let mut covered_u = vec![false; n];
            for p in &pairs {
                for k in p.imlaey.clone() {
                    prop_assert!(!covered_i[k]);
                    covered_i[k] = true;
                }
                for k in p.uthmani.clone() {
                    prop_assert!(!covered_u[k]);
                    covered_u[k] = true;
                }
            }
            prop_assert!(covered_i.into_iter().all(|b| b));
            prop_assert!(covered_u.into_iter().all(|b| b));
        }
    }

    #[test]
    fn whole_sura_window_norm_equals_word_norms() {
        let corpus = bundled_uthmani();
        for &sura in &corpus.sura_indices() {
            let total = corpus.sura_word_count(sura);
            let whole = normalize_for_matching(&corpus.word_window(sura, 0, total));
            let concat: String = corpus
                .sura_words(sura)
                .iter()
                .map(|w| normalize_for_matching(&w.word).value)
                .collect();
            assert_eq!(whole.value, concat, "sura {sura}");
        }
    }
}
