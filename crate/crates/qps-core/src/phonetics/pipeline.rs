//! The 26 sequential rewrite operations from Uthmani text to the final
//! pre-encoding stage.
//!
//! Operation order is fixed. Within an operation, rules are ordered by
//! specificity and each rule is one left-to-right scan; edits never create
//! new matches to the left of the scan point, so one scan reaches the
//! rule's fixpoint. Operations 3 and 4 consume the utterance-start flag,
//! operations 11, 12 and 15 the pause flag; operations 2 and 21-26 read the
//! Moshaf attributes.
//!
//! Input conventions follow Tanzil Uthmani orthography: a letter with no
//! diacritic is a rule-participating sakin (idgham/ikhfa/iqlab site), a
//! letter with an explicit sukun is clear (izhar), and assimilation targets
//! carry shadda. Operation 15 re-encodes a pause-induced sakin as an
//! explicit sukun so that later operations can tell it from an inherent one.

use crate::error::{Error, Result};
use crate::moshaf::MoshafAttributes;

use super::special;
use super::{IntermediateText, UtteranceContext};
use super::{
    MK_ALIF_MOMALA, MK_DAMA_MOKHTALASA, MK_FATHA_MOMALA, MK_GHUNNAH, MK_HAMZA_MOSAHALA,
    MK_IZHAR, MK_LEEN_WAW, MK_LEEN_YAA, MK_MADD_ALIF, MK_MADD_ALIF_MOFAKHAMA, MK_MADD_WAW,
    MK_MADD_YAA, MK_MEEM_MOKHFAH, MK_NOON_MOKHFAH, MK_QLQLA, MK_SAKT, MK_SILAH_WAW, MK_SILAH_YAA,
    MK_TAFKHEEM, MK_TARQEEQ,
};

// Letters.
pub(crate) const HAMZA: char = 'ء';
pub(crate) const ALIF: char = 'ا';
pub(crate) const ALIF_MADDA: char = 'آ';
pub(crate) const ALIF_HAMZA_ABOVE: char = 'أ';
pub(crate) const WAW_HAMZA: char = 'ؤ';
pub(crate) const ALIF_HAMZA_BELOW: char = 'إ';
pub(crate) const YAA_HAMZA: char = 'ئ';
pub(crate) const TAA_MARBUTA: char = 'ة';
pub(crate) const ALIF_MAKSORA: char = 'ى';
pub(crate) const WASLA: char = 'ٱ';
pub(crate) const WAW: char = 'و';
pub(crate) const YAA: char = 'ي';
pub(crate) const NOON: char = 'ن';
pub(crate) const MEEM: char = 'م';
pub(crate) const LAM: char = 'ل';
pub(crate) const RAA: char = 'ر';
pub(crate) const HAA: char = 'ه';

// Marks.
pub(crate) const FATHATAN: char = '\u{064B}';
pub(crate) const DAMMATAN: char = '\u{064C}';
pub(crate) const KASRATAN: char = '\u{064D}';
pub(crate) const FATHA: char = '\u{064E}';
pub(crate) const DAMMA: char = '\u{064F}';
pub(crate) const KASRA: char = '\u{0650}';
pub(crate) const SHADDA: char = '\u{0651}';
pub(crate) const SUKUN: char = '\u{0652}';
pub(crate) const MADDA: char = '\u{0653}';
pub(crate) const HAMZA_ABOVE: char = '\u{0654}';
pub(crate) const HAMZA_BELOW: char = '\u{0655}';
pub(crate) const DAGGER_ALIF: char = '\u{0670}';
pub(crate) const KASHEEDA: char = '\u{0640}';
pub(crate) const SUKUN_DOTLESS_HEAD: char = '\u{06E1}';

// Quranic annotation signs.
pub(crate) const SKOON_MOSTADEER: char = '\u{06DF}';
pub(crate) const SKOON_MOSTATEEL: char = '\u{06E0}';
pub(crate) const IQLAB_MEEM_ABOVE: char = '\u{06E2}';
pub(crate) const IQLAB_MEEM_BELOW: char = '\u{06ED}';
pub(crate) const SMALL_SEEN_ABOVE: char = '\u{06DC}';
pub(crate) const SMALL_SEEN_BELOW: char = '\u{06E3}';
pub(crate) const SMALL_WAW: char = '\u{06E5}';
pub(crate) const SMALL_YAA: char = '\u{06E6}';
pub(crate) const SMALL_HIGH_YAA: char = '\u{06E7}';
pub(crate) const SMALL_NOON: char = '\u{06E8}';
pub(crate) const IMALA_MARK: char = '\u{06EA}';
pub(crate) const ISHMAM_MARK: char = '\u{06EB}';
pub(crate) const TASHEEL_MARK: char = '\u{06EC}';

const OP_NAMES: [&str; 26] = [
    "DisassembleHrofMoqatta",
    "SpecialCases",
    "BeginWithHamzatWasl",
    "BeginWithSaken",
    "ConvertAlifMaksora",
    "NormalizeHmazat",
    "IthbatYaaYohie",
    "RemoveKasheeda",
    "RemoveHmzatWaslMiddle",
    "RemoveSkoonMostadeer",
    "SkoonMostateel",
    "MaddAlewad",
    "WawAlsallah",
    "EnlargeSmallLetters",
    "CleanEnd",
    "NormalizeTaa",
    "AddAlifIsmAllah",
    "PrepareGhonnaIdghamIqlab",
    "ItiqaaAlsaknan",
    "DeleteShaddaAtBeginning",
    "Ghonna",
    "Tasheel",
    "Imala",
    "Madd",
    "Qalqla",
    "RemoveRasHaaAndShadda",
];

pub fn operation_name(op: u8) -> &'static str {
    OP_NAMES[(op as usize).saturating_sub(1).min(25)]
}

pub(crate) fn is_base_letter(c: char) -> bool {
    matches!(c,
        'ء'..='غ' | 'ف'..='ي') // covers the Arabic letter block incl. ة ى
        || c == WASLA
}

pub(crate) fn is_haraka(c: char) -> bool {
    matches!(c, FATHA | DAMMA | KASRA)
}

pub(crate) fn is_tanween(c: char) -> bool {
    matches!(c, FATHATAN | DAMMATAN | KASRATAN)
}

/// Marks and advisory markers that attach to the letter before them.
pub(crate) fn is_attached_mark(c: char) -> bool {
    matches!(c,
        '\u{064B}'..='\u{065F}'
        | DAGGER_ALIF
        | '\u{06D6}'..='\u{06ED}')
        || matches!(c, MK_GHUNNAH | MK_TAFKHEEM | MK_TARQEEQ | MK_IZHAR)
}

fn is_advice(c: char) -> bool {
    matches!(c, MK_TAFKHEEM | MK_TARQEEQ | MK_IZHAR)
}

const ISTIALAA: [char; 7] = ['خ', 'ص', 'ض', 'غ', 'ط', 'ق', 'ظ'];
const QALQALA_LETTERS: [char; 5] = ['ق', 'ط', 'ب', 'ج', 'د'];
const IKHFA_LETTERS: [char; 15] = [
    'ت', 'ث', 'ج', 'د', 'ذ', 'ز', 'س', 'ش', 'ص', 'ض', 'ط', 'ظ', 'ف', 'ق', 'ك',
];
const THROAT_LETTERS: [char; 6] = [HAMZA, 'ه', 'ع', 'ح', 'غ', 'خ'];

/// A mutable char buffer with the scanning helpers the rules share.
pub(crate) struct Buf {
    pub chars: Vec<char>,
}

impl Buf {
    pub fn new(chars: Vec<char>) -> Self {
        Buf { chars }
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn get(&self, i: usize) -> Option<char> {
        self.chars.get(i).copied()
    }

    /// End of the mark run attached to the letter at `i` (exclusive).
    pub fn run_end(&self, i: usize) -> usize {
        let mut j = i + 1;
        while j < self.chars.len() && is_attached_mark(self.chars[j]) {
            j += 1;
        }
        j
    }

    pub fn run(&self, i: usize) -> &[char] {
        &self.chars[i + 1..self.run_end(i)]
    }

    pub fn run_has(&self, i: usize, mark: char) -> bool {
        self.run(i).contains(&mark)
    }

    pub fn vowel_of(&self, i: usize) -> Option<char> {
        self.run(i).iter().copied().find(|&c| is_haraka(c))
    }

    /// No haraka, tanween, shadda or sukun: a rule-participating sakin.
    pub fn is_bare(&self, i: usize) -> bool {
        !self
            .run(i)
            .iter()
            .any(|&c| is_haraka(c) || is_tanween(c) || c == SHADDA || c == SUKUN)
    }

    /// Index of the next base letter at or after `from`, skipping spaces,
    /// marks and advisory markers.
    pub fn next_letter(&self, from: usize) -> Option<usize> {
        (from..self.chars.len()).find(|&j| is_base_letter(self.chars[j]))
    }

    /// Index of the previous base letter strictly before `i`.
    pub fn prev_letter(&self, i: usize) -> Option<usize> {
        (0..i).rev().find(|&j| is_base_letter(self.chars[j]))
    }

    /// Whether a space separates positions `a` and `b`.
    pub fn space_between(&self, a: usize, b: usize) -> bool {
        self.chars[a..b].contains(&' ')
    }

    /// Index of the last base letter in the buffer.
    pub fn last_letter(&self) -> Option<usize> {
        (0..self.chars.len()).rev().find(|&j| is_base_letter(self.chars[j]))
    }

    pub fn replace(&mut self, range: std::ops::Range<usize>, with: &[char]) {
        self.chars.splice(range, with.iter().copied());
    }

    pub fn insert(&mut self, at: usize, with: &[char]) {
        self.chars.splice(at..at, with.iter().copied());
    }

    pub fn remove(&mut self, i: usize) {
        self.chars.remove(i);
    }

    /// The bare-letter skeleton of the word containing position `i`, plus
    /// the word's start index.
    pub fn word_skeleton_at(&self, i: usize) -> (usize, String) {
        let start = (0..=i).rev().find(|&j| self.chars[j] == ' ').map_or(0, |j| j + 1);
        let mut s = String::new();
        let mut j = start;
        while j < self.chars.len() && self.chars[j] != ' ' {
            if is_base_letter(self.chars[j]) {
                s.push(self.chars[j]);
            }
            j += 1;
        }
        (start, s)
    }
}

/// Stage-0 canonicalization: code-point validation, removal of pure pause
/// and ornament annotations, combining-mark ordering and splitting of the
/// precomposed madda-alif.
pub fn sanitize(text: &str) -> Result<Vec<char>> {
    let mut out: Vec<char> = Vec::with_capacity(text.len());
    for (offset, c) in text.chars().enumerate() {
        let c = match c {
            SUKUN_DOTLESS_HEAD => SUKUN,
            IQLAB_MEEM_BELOW => IQLAB_MEEM_ABOVE,
            other => other,
        };
        match c {
            // pause marks, rub-el-hizb, sajdah: recitation-neutral here
            '\u{06D6}'..='\u{06DB}' | '\u{06DE}' | '\u{06E9}' => continue,
            ALIF_MADDA => {
                out.push(ALIF);
                out.push(MADDA);
            }
            c if c.is_whitespace() => out.push(' '),
            c if is_base_letter(c)
                || matches!(c, '\u{064B}'..='\u{0655}' | DAGGER_ALIF | KASHEEDA)
                || matches!(c,
                    SKOON_MOSTADEER
                        | SKOON_MOSTATEEL
                        | IQLAB_MEEM_ABOVE
                        | IQLAB_MEEM_BELOW
                        | SMALL_SEEN_ABOVE
                        | SMALL_SEEN_BELOW
                        | SMALL_WAW
                        | SMALL_YAA
                        | SMALL_HIGH_YAA
                        | SMALL_NOON
                        | IMALA_MARK
                        | ISHMAM_MARK
                        | TASHEEL_MARK) =>
            {
                out.push(c)
            }
            other => {
                return Err(Error::Input {
                    offset,
                    code: other as u32,
                })
            }
        }
    }

    // Canonical mark order within each combining run: hamza carrier, shadda,
    // vowel/tanween/sukun, dagger alif, madda, annotation signs.
    fn rank(c: char) -> u8 {
        match c {
            HAMZA_ABOVE | HAMZA_BELOW => 0,
            SHADDA => 1,
            '\u{064B}'..='\u{0650}' | SUKUN => 2,
            DAGGER_ALIF => 3,
            MADDA => 4,
            _ => 5,
        }
    }
    let mut i = 0;
    while i < out.len() {
        let mut j = i;
        while j < out.len() && is_attached_mark(out[j]) {
            j += 1;
        }
        if j > i + 1 {
            out[i..j].sort_by_key(|&c| rank(c));
        }
        i = j.max(i + 1);
    }

    // Collapse space runs and trim the ends.
    let mut collapsed: Vec<char> = Vec::with_capacity(out.len());
    for c in out {
        if c == ' ' && collapsed.last() == Some(&' ') {
            continue;
        }
        collapsed.push(c);
    }
    while collapsed.first() == Some(&' ') {
        collapsed.remove(0);
    }
    while collapsed.last() == Some(&' ') {
        collapsed.pop();
    }
    Ok(collapsed)
}

/// Applies one rewrite operation, checking the stage sequencing contract.
pub fn apply_operation(
    op: u8,
    text: IntermediateText,
    attrs: &MoshafAttributes,
    ctx: UtteranceContext,
) -> Result<IntermediateText> {
    if !(1..=26).contains(&op) {
        return Err(Error::Pipeline {
            op,
            name: "unknown",
            message: "operation id must be in 1..=26".into(),
        });
    }
    let (chars, stage) = text.parts();
    if stage != op - 1 {
        return Err(Error::Pipeline {
            op,
            name: operation_name(op),
            message: format!("expected stage {} input, got stage {stage}", op - 1),
        });
    }
    let mut buf = Buf::new(chars);
    match op {
        1 => op01_disassemble_hrof_moqatta(&mut buf),
        2 => special::op02_special_cases(&mut buf, attrs),
        3 => op03_begin_with_hamzat_wasl(&mut buf, ctx),
        4 => op04_begin_with_saken(&mut buf, ctx),
        5 => op05_convert_alif_maksora(&mut buf),
        6 => op06_normalize_hmazat(&mut buf),
        7 => op07_ithbat_yaa_yohie(&mut buf),
        8 => op08_remove_kasheeda(&mut buf),
        9 => op09_remove_hmzat_wasl_middle(&mut buf),
        10 => op10_remove_skoon_mostadeer(&mut buf),
        11 => op11_skoon_mostateel(&mut buf, ctx),
        12 => op12_madd_alewad(&mut buf, ctx),
        13 => op13_waw_alsallah(&mut buf),
        14 => op14_enlarge_small_letters(&mut buf),
        15 => op15_clean_end(&mut buf, ctx),
        16 => op16_normalize_taa(&mut buf),
        17 => op17_add_alif_ism_allah(&mut buf),
        18 => op18_prepare_ghonna_idgham_iqlab(&mut buf),
        19 => op19_itiqaa_alsaknan(&mut buf),
        20 => op20_delete_shadda_at_beginning(&mut buf),
        21 => op21_ghonna(&mut buf, attrs),
        22 => op22_tasheel(&mut buf),
        23 => op23_imala(&mut buf),
        24 => op24_madd(&mut buf, attrs),
        25 => op25_qalqla(&mut buf),
        26 => op26_remove_ras_haa_and_shadda(&mut buf),
        _ => unreachable!(),
    }
    Ok(IntermediateText::assemble(buf.chars, op))
}

const MUQATTAAT: [char; 14] = [
    'ا', 'ل', 'م', 'ص', 'ر', 'ك', 'ه', 'ي', 'ع', 'س', 'ح', 'ق', 'ن', 'ط',
];

/// Letter-name expansions used by operation 1. Final nasals stay bare so the
/// usual idgham/ikhfa rules apply across name boundaries; other finals keep
/// an explicit sukun. The ayn name carries a madda on its leen yaa because
/// its length is a Moshaf attribute.
fn letter_name(c: char) -> &'static str {
    match c {
        'ا' => "ءَلِفْ",
        'ل' => "لَام",
        'م' => "مِيم",
        'ص' => "صَاد",
        'ر' => "رَا",
        'ك' => "كَاف",
        'ه' => "هَا",
        'ي' => "يَا",
        'ع' => "عَيٓن",
        'س' => "سِين",
        'ح' => "حَا",
        'ق' => "قَاف",
        'ن' => "نُون",
        'ط' => "طَا",
        _ => unreachable!("not a muqattaat letter"),
    }
}

/// Op 1: separates Quranic initials into individual letter-name words.
fn op01_disassemble_hrof_moqatta(buf: &mut Buf) {
    let mut i = 0;
    while i < buf.len() {
        if buf.get(i) == Some(' ') {
            i += 1;
            continue;
        }
        let mut j = i;
        let mut letters = Vec::new();
        let mut bare = true;
        while j < buf.len() && buf.get(j) != Some(' ') {
            let c = buf.chars[j];
            if is_base_letter(c) {
                if MUQATTAAT.contains(&c) {
                    letters.push(c);
                } else {
                    bare = false;
                }
            } else if c != MADDA {
                bare = false;
            }
            j += 1;
        }
        if bare && !letters.is_empty() {
            let expansion: Vec<char> = letters
                .iter()
                .map(|&c| letter_name(c))
                .collect::<Vec<_>>()
                .join(" ")
                .chars()
                .collect();
            buf.replace(i..j, &expansion);
            i += expansion.len();
        } else {
            i = j;
        }
    }
}

/// Words whose liaison hamza takes kasra despite a damma on the third
/// letter (the damma is incidental).
const KASRA_START_SKELETONS: [&str; 3] = ["امشوا", "ابنوا", "اقضوا"];

/// Op 3: realizes or drops a leading connecting hamza.
///
/// At utterance start the wasla becomes a spoken hamza whose vowel is fatha
/// for the definite article, damma when the first permanent vowel inside
/// the word is damma, and kasra otherwise. A leading wasla of a continuing
/// utterance is silent and dropped.
fn op03_begin_with_hamzat_wasl(buf: &mut Buf, ctx: UtteranceContext) {
    if buf.get(0) != Some(WASLA) {
        return;
    }
    if !ctx.starts_utterance {
        buf.remove(0);
        return;
    }
    let (_, skeleton) = buf.word_skeleton_at(0);
    // The article: wasla followed by lam.
    if buf.get(1) == Some(LAM) {
        buf.replace(0..1, &[HAMZA, FATHA]);
        return;
    }
    // A sakin hamza right after the wasla becomes a madd letter matching
    // the liaison vowel.
    if matches!(buf.get(1), Some(ALIF_HAMZA_ABOVE | YAA_HAMZA | WAW_HAMZA | HAMZA))
        && !buf.run(1).iter().any(|&c| is_haraka(c))
    {
        let end = buf.run_end(1);
        buf.replace(1..end, &[YAA]);
        buf.replace(0..1, &[HAMZA, KASRA]);
        return;
    }
    let mut haraka = KASRA;
    if !KASRA_START_SKELETONS.contains(&skeleton.as_str()) {
        // Scan the first two letters after the wasla for a vowel.
        let mut seen = 0;
        let mut at = 1;
        while seen < 2 {
            match buf.next_letter(at) {
                Some(l) => {
                    if let Some(v) = buf.vowel_of(l) {
                        if v == DAMMA {
                            haraka = DAMMA;
                        }
                        break;
                    }
                    if buf.run_has(l, SHADDA) {
                        break;
                    }
                    seen += 1;
                    at = buf.run_end(l);
                }
                None => break,
            }
        }
    }
    buf.replace(0..1, &[HAMZA, haraka]);
}

/// Op 4: an utterance cannot open on a sakin letter; a liaison hamza with
/// kasra is prepended when the first letter carries an explicit sukun.
fn op04_begin_with_saken(buf: &mut Buf, ctx: UtteranceContext) {
    if !ctx.starts_utterance {
        return;
    }
    if let Some(first) = buf.next_letter(0) {
        if first == 0 && buf.run_has(first, SUKUN) {
            buf.insert(0, &[HAMZA, KASRA]);
        }
    }
}

/// Op 5: resolves dotless yaa to yaa or alif by context.
fn op05_convert_alif_maksora(buf: &mut Buf) {
    // (a) seat of a dagger alif: drop the seat, keep the dagger
    let mut i = 0;
    while i < buf.len() {
        if buf.chars[i] == ALIF_MAKSORA && buf.run_has(i, DAGGER_ALIF) {
            buf.remove(i);
            continue;
        }
        i += 1;
    }
    // (b) tanween fatha seat: normalize to alif for the iwad rule
    let mut i = 0;
    while i + 1 < buf.len() {
        if buf.chars[i] == FATHATAN && buf.chars[i + 1] == ALIF_MAKSORA {
            buf.chars[i + 1] = ALIF;
        }
        i += 1;
    }
    // (c)-(f) remaining seats by their own or the preceding vowel
    let mut i = 0;
    while i < buf.len() {
        if buf.chars[i] != ALIF_MAKSORA {
            i += 1;
            continue;
        }
        let run_has_vowel = buf.run(i).iter().any(|&c| is_haraka(c) || c == SHADDA);
        let run_has_sukun = buf.run_has(i, SUKUN);
        if run_has_vowel || run_has_sukun {
            buf.chars[i] = YAA;
        } else {
            let prev_vowel = buf.prev_letter(i).and_then(|p| buf.vowel_of(p));
            buf.chars[i] = match prev_vowel {
                Some(FATHA) => ALIF,
                _ => YAA,
            };
        }
        i += 1;
    }
}

/// Op 6: standardizes every hamza carrier to the bare hamza letter.
fn op06_normalize_hmazat(buf: &mut Buf) {
    for c in buf.chars.iter_mut() {
        if matches!(*c, ALIF_HAMZA_ABOVE | ALIF_HAMZA_BELOW | WAW_HAMZA | YAA_HAMZA) {
            *c = HAMZA;
        }
    }
    // Combining hamza (it rides a kasheeda in medial spellings) becomes the
    // letter itself; the carrier is removed by op 8.
    for c in buf.chars.iter_mut() {
        if matches!(*c, HAMZA_ABOVE | HAMZA_BELOW) {
            *c = HAMZA;
        }
    }
}

/// Op 7: affirms the final yaa of the yuhyi-family spellings written with a
/// small yaa, so it survives as a full madd letter.
fn op07_ithbat_yaa_yohie(buf: &mut Buf) {
    let mut i = 0;
    while i + 3 < buf.len() {
        if buf.chars[i] == 'ح'
            && buf.chars[i + 1] == SUKUN
            && matches!(buf.chars[i + 2], YAA | ALIF_MAKSORA)
            && buf.chars[i + 3] == KASRA
            && buf.get(i + 4) == Some(SMALL_YAA)
        {
            buf.chars[i + 4] = YAA;
        }
        i += 1;
    }
}

/// Op 8: deletes elongation strokes.
fn op08_remove_kasheeda(buf: &mut Buf) {
    buf.chars.retain(|&c| c != KASHEEDA);
}

/// Op 9: drops non-initial connecting hamzas and resolves the junction they
/// leave behind: a preceding madd letter is swallowed, a preceding tanween
/// turns into its vowel plus a liaison noon with kasra, a preceding sukun
/// becomes kasra.
fn op09_remove_hmzat_wasl_middle(buf: &mut Buf) {
    let mut i = buf.len();
    while i > 0 {
        i -= 1;
        if buf.chars[i] != WASLA || i == 0 {
            continue;
        }
        buf.remove(i);
        // walk back over spaces and silent-alif pairs
        let mut p = i;
        loop {
            if p == 0 {
                break;
            }
            let c = buf.chars[p - 1];
            if c == ' ' {
                p -= 1;
            } else if c == SKOON_MOSTADEER && p >= 2 {
                p -= 2; // the mark and its silent letter
            } else {
                break;
            }
        }
        if p == 0 {
            continue;
        }
        let prev = buf.chars[p - 1];
        if is_haraka(prev) {
            continue;
        }
        if is_tanween(prev) {
            let vowel = match prev {
                FATHATAN => FATHA,
                DAMMATAN => DAMMA,
                _ => KASRA,
            };
            buf.replace(p - 1..p, &[vowel, NOON, KASRA]);
            continue;
        }
        if prev == SUKUN {
            buf.chars[p - 1] = KASRA;
            continue;
        }
        if prev == DAGGER_ALIF {
            buf.remove(p - 1);
            continue;
        }
        if matches!(prev, ALIF | WAW | YAA | ALIF_MAKSORA) {
            // the walk landed on the letter itself, so it carries no marks:
            // a bare madd letter, which shortens away before the cluster
            buf.remove(p - 1);
        }
    }
}

/// Op 10: removes letters marked silent with the round sukun.
fn op10_remove_skoon_mostadeer(buf: &mut Buf) {
    let mut i = 0;
    while i < buf.len() {
        if buf.chars[i] == SKOON_MOSTADEER {
            if i > 0 && is_base_letter(buf.chars[i - 1]) {
                buf.replace(i - 1..i + 1, &[]);
                i = i.saturating_sub(1);
            } else {
                buf.remove(i);
            }
            continue;
        }
        i += 1;
    }
}

/// Op 11: the alif under an elongated sukun sounds only at a pause at the
/// utterance end; elsewhere it is silent.
fn op11_skoon_mostateel(buf: &mut Buf, ctx: UtteranceContext) {
    let mut i = 0;
    while i < buf.len() {
        if buf.chars[i] == SKOON_MOSTATEEL {
            let at_end = buf.chars[i + 1..].iter().all(|&c| c == ' ');
            if at_end && ctx.ends_with_pause {
                buf.remove(i);
            } else if i > 0 && is_base_letter(buf.chars[i - 1]) {
                buf.replace(i - 1..i + 1, &[]);
                i = i.saturating_sub(1);
            } else {
                buf.remove(i);
            }
            continue;
        }
        i += 1;
    }
}

/// Op 12: compensation madd. Mid-utterance the alif after tanween fatha is
/// silent; at a pause the tanween is dropped and the alif sounds.
fn op12_madd_alewad(buf: &mut Buf, ctx: UtteranceContext) {
    if ctx.ends_with_pause {
        let n = buf.len();
        // trailing [tanween-fatha, alif] becomes [fatha, alif]
        if n >= 2 && buf.chars[n - 2] == FATHATAN && buf.chars[n - 1] == ALIF {
            buf.chars[n - 2] = FATHA;
        } else if n >= 1 && buf.chars[n - 1] == FATHATAN {
            // pause on a bare tanween fatha (hamza-final spellings): the
            // compensation alif is added; taa marbuta keeps its own rule
            if n < 2 || buf.chars[n - 2] != TAA_MARBUTA {
                buf.replace(n - 1..n, &[FATHA, ALIF]);
            }
        }
    }
    let mut i = 0;
    while i + 1 < buf.len() {
        if buf.chars[i] == FATHATAN && buf.chars[i + 1] == ALIF {
            let at_end = i + 2 == buf.len();
            if !(at_end && ctx.ends_with_pause) {
                buf.remove(i + 1);
                continue;
            }
        }
        i += 1;
    }
}

/// Op 13: the silent waw that seats a dagger alif (salah-type spellings)
/// disappears; the dagger becomes a full alif in op 14.
fn op13_waw_alsallah(buf: &mut Buf) {
    let mut i = 0;
    while i + 1 < buf.len() {
        if buf.chars[i] == WAW && buf.chars[i + 1] == DAGGER_ALIF {
            buf.remove(i);
            continue;
        }
        i += 1;
    }
}

/// Op 14: miniature letters grow to full size: the dagger alif becomes an
/// alif (with its fatha made explicit), small waw/yaa become pronoun-silah
/// markers, the small noon becomes a rule-participating noon.
fn op14_enlarge_small_letters(buf: &mut Buf) {
    let mut i = 0;
    while i < buf.len() {
        match buf.chars[i] {
            DAGGER_ALIF => {
                if i > 0 && buf.chars[i - 1] == FATHA {
                    buf.chars[i] = ALIF;
                } else {
                    buf.replace(i..i + 1, &[FATHA, ALIF]);
                    i += 1;
                }
            }
            SMALL_WAW => buf.chars[i] = MK_SILAH_WAW,
            SMALL_YAA | SMALL_HIGH_YAA => buf.chars[i] = MK_SILAH_YAA,
            SMALL_NOON => buf.chars[i] = NOON,
            _ => {}
        }
        i += 1;
    }
}

/// Op 15: end-of-utterance cleanup. Space runs collapse; at a pause the
/// final short vowel or tanween is re-encoded as an explicit sukun, silah
/// madds fall silent, and the yuhyi-family spelling regains its final yaa.
fn op15_clean_end(buf: &mut Buf, ctx: UtteranceContext) {
    // stray annotation signs consumed by no earlier rule
    buf.chars
        .retain(|&c| !matches!(c, SMALL_SEEN_ABOVE | SMALL_SEEN_BELOW | IQLAB_MEEM_BELOW));
    let mut collapsed: Vec<char> = Vec::with_capacity(buf.len());
    for &c in &buf.chars {
        if c == ' ' && collapsed.last() == Some(&' ') {
            continue;
        }
        collapsed.push(c);
    }
    while collapsed.last() == Some(&' ') {
        collapsed.pop();
    }
    while collapsed.first() == Some(&' ') {
        collapsed.remove(0);
    }
    buf.chars = collapsed;

    if !ctx.ends_with_pause {
        return;
    }
    // ithbat of the final yaa before stripping the kasra it rides on
    let n = buf.len();
    if n >= 4
        && buf.chars[n - 4] == 'ح'
        && buf.chars[n - 3] == SUKUN
        && buf.chars[n - 2] == YAA
        && buf.chars[n - 1] == KASRA
    {
        buf.chars.push(YAA);
    }
    loop {
        let n = buf.len();
        if n == 0 {
            break;
        }
        match buf.chars[n - 1] {
            c if is_haraka(c) => {
                buf.chars[n - 1] = SUKUN;
            }
            DAMMATAN | KASRATAN => {
                buf.chars[n - 1] = SUKUN;
            }
            FATHATAN => {
                // only the taa marbuta spelling reaches here with one
                if n >= 2 && buf.chars[n - 2] == TAA_MARBUTA {
                    buf.chars[n - 1] = SUKUN;
                } else {
                    break;
                }
            }
            MK_SILAH_WAW | MK_SILAH_YAA => {
                buf.chars.pop();
            }
            MADDA => {
                // a madda left trailing by a dropped silah
                if n >= 2 && matches!(buf.chars[n - 2], MK_SILAH_WAW | MK_SILAH_YAA) {
                    buf.chars.pop();
                } else {
                    break;
                }
            }
            SUKUN => break,
            _ => break,
        }
    }
}

/// Op 16: taa marbuta sounds as taa when the utterance continues and as haa
/// at a pause.
fn op16_normalize_taa(buf: &mut Buf) {
    let mut i = 0;
    while i < buf.len() {
        if buf.chars[i] == TAA_MARBUTA {
            let run_end = buf.run_end(i);
            let at_end = buf.chars[run_end..].iter().all(|&c| c == ' ');
            let paused = at_end && (buf.run_has(i, SUKUN) || buf.run(i).is_empty());
            if paused {
                buf.chars[i] = HAA;
                if !buf.run_has(i, SUKUN) {
                    buf.insert(i + 1, &[SUKUN]);
                }
            } else {
                buf.chars[i] = 'ت';
            }
        }
        i += 1;
    }
}

/// Op 17: the divine name is written without its madd alif; insert it after
/// the doubled lam.
fn op17_add_alif_ism_allah(buf: &mut Buf) {
    let mut i = 0;
    while i + 4 < buf.len() {
        if buf.chars[i] == LAM
            && (buf.chars[i + 1] == LAM
                || (buf.chars[i + 1] == KASRA && buf.get(i + 2) == Some(LAM)))
        {
            let l2 = if buf.chars[i + 1] == LAM { i + 1 } else { i + 2 };
            if buf.get(l2 + 1) == Some(SHADDA)
                && buf.get(l2 + 2) == Some(FATHA)
                && buf.get(l2 + 3) == Some(HAA)
            {
                buf.insert(l2 + 3, &[ALIF]);
                i = l2 + 4;
                continue;
            }
        }
        i += 1;
    }
}

/// Op 18: assimilation groundwork. Tanween unfolds into its vowel plus a
/// rule-participating noon, and a bare consonant standing before a
/// shadda-marked letter is swallowed by the assimilation it spells.
fn op18_prepare_ghonna_idgham_iqlab(buf: &mut Buf) {
    // tanween -> vowel + noon (the iqlab meem mark, if any, stays attached)
    let mut i = 0;
    while i < buf.len() {
        let c = buf.chars[i];
        if is_tanween(c) {
            let vowel = match c {
                FATHATAN => FATHA,
                DAMMATAN => DAMMA,
                _ => KASRA,
            };
            // keep annotation marks that followed the tanween attached to
            // the new noon
            buf.replace(i..i + 1, &[vowel, NOON]);
        }
        i += 1;
    }
    // bare consonant before a shadda letter assimilates away
    let mut i = 0;
    while i < buf.len() {
        let c = buf.chars[i];
        if is_base_letter(c) && !matches!(c, ALIF | WAW | YAA | ALIF_MAKSORA) && buf.is_bare(i) {
            if buf.run(i).contains(&MK_IZHAR) {
                i = buf.run_end(i);
                continue;
            }
            if let Some(next) = buf.next_letter(buf.run_end(i)) {
                if buf.run_has(next, SHADDA) {
                    let end = buf.run_end(i);
                    buf.replace(i..end, &[]);
                    continue;
                }
            }
        }
        i += 1;
    }
}

/// Op 19: residual guard for sakin clashes the wasla junction did not see:
/// a bare madd letter at a word end shortens away before a sakin or
/// shadda-initial word.
fn op19_itiqaa_alsaknan(buf: &mut Buf) {
    let mut i = 0;
    while i < buf.len() {
        let c = buf.chars[i];
        if matches!(c, ALIF | WAW | YAA) && buf.is_bare(i) {
            let end = buf.run_end(i);
            if buf.get(end) == Some(' ') {
                if let Some(next) = buf.next_letter(end) {
                    let clash = buf.run_has(next, SHADDA) || buf.run_has(next, SUKUN);
                    if clash {
                        buf.replace(i..end, &[]);
                        continue;
                    }
                }
            }
        }
        i += 1;
    }
}

/// Op 20: a shadda on the very first letter (an assimilation spelled across
/// a split point) reduces to the single letter.
fn op20_delete_shadda_at_beginning(buf: &mut Buf) {
    if let Some(first) = buf.next_letter(0) {
        if first == 0 {
            if let Some(pos) = buf.run(first).iter().position(|&c| c == SHADDA) {
                buf.remove(first + 1 + pos);
            }
        }
    }
}

fn triple_with_ghunnah(letter: char) -> [char; 6] {
    [letter, MK_GHUNNAH, letter, MK_GHUNNAH, letter, MK_GHUNNAH]
}

/// Op 21: nasalization. Sakin noon (and the noon unfolded from tanween)
/// hides, flips or assimilates by the following letter; sakin meem hides or
/// assimilates before baa and meem; every shadda nasal becomes the stressed
/// three-fold form.
fn op21_ghonna(buf: &mut Buf, attrs: &MoshafAttributes) {
    use crate::moshaf::{GhonnaLamRaa, MeemMokhfahChoice};
    // sakin noon and meem rules
    let mut i = 0;
    while i < buf.len() {
        let c = buf.chars[i];
        if !(c == NOON || c == MEEM) || !is_base_letter(c) {
            i += 1;
            continue;
        }
        if !buf.is_bare(i) || buf.run(i).contains(&MK_IZHAR) {
            i += 1;
            continue;
        }
        let end = buf.run_end(i);
        let has_iqlab_mark = buf.run_has(i, IQLAB_MEEM_ABOVE);
        let next = match buf.next_letter(end) {
            Some(n) => n,
            None => {
                i += 1;
                continue;
            }
        };
        let target = buf.chars[next];
        if c == NOON {
            if target == 'ب' || has_iqlab_mark {
                buf.replace(i..end, &[MK_MEEM_MOKHFAH, MK_MEEM_MOKHFAH, MK_MEEM_MOKHFAH]);
                i += 3;
                continue;
            }
            if IKHFA_LETTERS.contains(&target) {
                buf.replace(i..end, &[MK_NOON_MOKHFAH, MK_NOON_MOKHFAH, MK_NOON_MOKHFAH]);
                i += 3;
                continue;
            }
            if matches!(target, YAA | WAW) && !buf.run_has(next, SHADDA) {
                // partial assimilation with ghunnah: the target doubles
                buf.replace(i..end, &[]);
                let next = buf.next_letter(i).expect("target survives");
                let target = buf.chars[next];
                buf.insert(next, &[target, MK_GHUNNAH]);
                buf.insert(next + 3, &[MK_GHUNNAH]);
                i = next + 4;
                continue;
            }
            if matches!(target, NOON | MEEM) && !buf.run_has(next, SHADDA) {
                // full assimilation into an unmarked nasal (letter-name
                // junctions): the target takes the stressed three-fold form
                buf.replace(i..end, &[]);
                let next = buf.next_letter(i).expect("target survives");
                let target = buf.chars[next];
                buf.insert(next, &[target, MK_GHUNNAH, target, MK_GHUNNAH]);
                buf.insert(next + 5, &[MK_GHUNNAH]);
                i = next + 6;
                continue;
            }
            if matches!(target, LAM | RAA) && buf.run_has(next, SHADDA) {
                // complete assimilation; a ghunnah residue is a Moshaf choice
                buf.replace(i..end, &[]);
                let next = buf.next_letter(i).expect("target survives");
                if attrs.ghonna_lam_and_raa == GhonnaLamRaa::Ghonna {
                    let t = buf.chars[next];
                    let shadda_at = buf.run(next).iter().position(|&m| m == SHADDA).unwrap();
                    buf.remove(next + 1 + shadda_at);
                    buf.insert(next, &[t, MK_GHUNNAH]);
                    buf.insert(next + 3, &[MK_GHUNNAH]);
                    i = next + 4;
                } else {
                    i = next;
                }
                continue;
            }
            if THROAT_LETTERS.contains(&target) {
                i = end;
                continue;
            }
            i = end;
            continue;
        }
        // meem
        if target == 'ب' {
            match attrs.meem_mokhfah {
                MeemMokhfahChoice::Ikhfaa => {
                    buf.replace(i..end, &[MK_MEEM_MOKHFAH, MK_MEEM_MOKHFAH, MK_MEEM_MOKHFAH]);
                    i += 3;
                }
                MeemMokhfahChoice::Meem => {
                    buf.insert(end, &[MK_GHUNNAH]);
                    i = end + 1;
                }
            }
            continue;
        }
        if target == MEEM && !buf.run_has(next, SHADDA) {
            // across letter-name boundaries the idgham target is unmarked
            buf.replace(i..end, &[]);
            let next = buf.next_letter(i).expect("target survives");
            buf.insert(next, &[MEEM, MK_GHUNNAH, MEEM, MK_GHUNNAH]);
            buf.insert(next + 5, &[MK_GHUNNAH]);
            i = next + 6;
            continue;
        }
        if target == MEEM {
            // written with shadda: drop this meem, the tripling rule below
            // expands the target
            buf.replace(i..end, &[]);
            continue;
        }
        i = end;
    }
    // stressed nasal: noon/meem with shadda triples with ghunnah
    let mut i = 0;
    while i < buf.len() {
        let c = buf.chars[i];
        if (c == NOON || c == MEEM) && buf.run_has(i, SHADDA) {
            let shadda_at = buf.run(i).iter().position(|&m| m == SHADDA).unwrap();
            buf.remove(i + 1 + shadda_at);
            let expansion = triple_with_ghunnah(c);
            buf.replace(i..i + 1, &expansion);
            i += expansion.len();
            continue;
        }
        i += 1;
    }
}

/// Op 22: the tasheel sign turns its carrier into the eased hamza.
fn op22_tasheel(buf: &mut Buf) {
    let mut i = 0;
    while i < buf.len() {
        if buf.chars[i] == TASHEEL_MARK {
            if i > 0 && is_base_letter(buf.chars[i - 1]) {
                buf.replace(i - 1..i + 1, &[MK_HAMZA_MOSAHALA]);
                continue;
            }
            buf.remove(i);
            continue;
        }
        i += 1;
    }
}

/// Op 23: the imala sign bends the fatha (and a following alif) toward the
/// momala vowels.
fn op23_imala(buf: &mut Buf) {
    let mut i = 0;
    while i < buf.len() {
        if buf.chars[i] != IMALA_MARK {
            i += 1;
            continue;
        }
        buf.remove(i);
        // drop an adjacent fatha on the same letter
        let mut j = i;
        while j > 0 && is_attached_mark(buf.chars[j - 1]) {
            if buf.chars[j - 1] == FATHA {
                buf.remove(j - 1);
                i -= 1;
                break;
            }
            j -= 1;
        }
        if i < buf.len() && buf.chars[i] == FATHA {
            buf.remove(i);
        }
        buf.insert(i, &[MK_FATHA_MOMALA]);
        i += 1;
        // a following alif (possibly grown from a dagger) bends with it
        if i < buf.len() && buf.chars[i] == ALIF {
            buf.chars[i] = MK_ALIF_MOMALA;
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum MaddKind {
    Alif,
    Waw,
    Yaa,
}

/// Op 24: madd realization. Every madd site is replaced by one repeat
/// marker per beat; the count follows the madd class and the configured
/// lengths. An alif governed by an emphatic consonant uses the emphatic
/// repeat marker.
fn op24_madd(buf: &mut Buf, attrs: &MoshafAttributes) {
    let mut i = 0;
    while i < buf.len() {
        let c = buf.chars[i];

        // leen before the final pause-sakin letter
        if matches!(c, WAW | YAA)
            && i > 0
            && buf.chars[i - 1] == FATHA
            && buf.run_has(i, SUKUN)
        {
            let end = buf.run_end(i);
            if let Some(last) = buf.next_letter(end) {
                let is_final = buf.next_letter(buf.run_end(last)).is_none();
                if is_final && buf.run_has(last, SUKUN) {
                    let marker = if c == WAW { MK_LEEN_WAW } else { MK_LEEN_YAA };
                    let n = attrs.madd_alleen_len as usize;
                    let fill: Vec<char> = std::iter::repeat(marker).take(n).collect();
                    buf.replace(i..end, &fill);
                    i += fill.len();
                    continue;
                }
            }
            i = end;
            continue;
        }

        // the leen of the ayn letter-name, tagged with a madda by op 1
        if c == YAA && i > 0 && buf.chars[i - 1] == FATHA && buf.run_has(i, MADDA) {
            let end = buf.run_end(i);
            let n = attrs.madd_yaa_alayn_alharfy as usize;
            let fill: Vec<char> = std::iter::repeat(MK_LEEN_YAA).take(n).collect();
            buf.replace(i..end, &fill);
            i += fill.len();
            continue;
        }

        let unit = if c == ALIF {
            Some(MaddKind::Alif)
        } else if c == MK_SILAH_WAW {
            Some(MaddKind::Waw)
        } else if c == MK_SILAH_YAA {
            Some(MaddKind::Yaa)
        } else if c == WAW && buf.is_bare(i) && i > 0 && buf.chars[i - 1] == DAMMA {
            Some(MaddKind::Waw)
        } else if c == YAA && buf.is_bare(i) && i > 0 && buf.chars[i - 1] == KASRA {
            Some(MaddKind::Yaa)
        } else {
            None
        };
        let kind = match unit {
            Some(k) => k,
            None => {
                i += 1;
                continue;
            }
        };
        let end = buf.run_end(i);
        let has_madda = buf.run_has(i, MADDA);
        let n = madd_length(buf, i, end, has_madda, attrs);
        let marker = match kind {
            MaddKind::Alif => {
                if alif_site_is_emphatic(buf, i) {
                    MK_MADD_ALIF_MOFAKHAMA
                } else {
                    MK_MADD_ALIF
                }
            }
            MaddKind::Waw => MK_MADD_WAW,
            MaddKind::Yaa => MK_MADD_YAA,
        };
        let fill: Vec<char> = std::iter::repeat(marker).take(n).collect();
        buf.replace(i..end, &fill);
        i += fill.len();
    }
}

/// Beat count for the madd unit at `i`, by what follows it.
fn madd_length(
    buf: &Buf,
    i: usize,
    end: usize,
    has_madda: bool,
    attrs: &MoshafAttributes,
) -> usize {
    // the next significant character, skipping spaces and advisory marks
    let mut j = end;
    while j < buf.len() && (buf.chars[j] == ' ' || is_advice(buf.chars[j])) {
        j += 1;
    }
    if j >= buf.len() || buf.chars[j] == MK_SAKT {
        return 2;
    }
    let c = buf.chars[j];
    if c == HAMZA {
        let crossed_word = buf.space_between(i, j);
        if crossed_word {
            return attrs.madd_monfasel_len as usize;
        }
        let hamza_is_final = buf.next_letter(buf.run_end(j)).is_none();
        return if hamza_is_final && buf.run_has(j, SUKUN) {
            attrs.madd_mottasel_waqf as usize
        } else {
            attrs.madd_mottasel_len as usize
        };
    }
    if is_base_letter(c) {
        if buf.run_has(j, SHADDA) {
            return 6;
        }
        let voweled = buf.vowel_of(j).is_some() || buf.run(j).iter().any(|&m| is_tanween(m));
        if voweled {
            return if has_madda { 6 } else { 2 };
        }
        // sakin follower: explicit sukun at the utterance end marks a
        // pause-induced sakin (aared); anything else is a lazim cluster
        let is_final = buf.next_letter(buf.run_end(j)).is_none();
        if is_final && buf.run_has(j, SUKUN) {
            return attrs.madd_aared_len as usize;
        }
        return 6;
    }
    match c {
        MK_HAMZA_MOSAHALA | MK_FATHA_MOMALA | MK_DAMA_MOKHTALASA => 2,
        MK_NOON_MOKHFAH | MK_MEEM_MOKHFAH => 6,
        _ => 2,
    }
}

/// Whether the alif at `i` inherits emphasis from its governing consonant:
/// the seven isti'laa letters, an emphatic raa, or the lam of the divine
/// name after fatha or damma.
fn alif_site_is_emphatic(buf: &Buf, i: usize) -> bool {
    let prev = match buf.prev_letter(i) {
        Some(p) => p,
        None => return false,
    };
    let p = buf.chars[prev];
    if ISTIALAA.contains(&p) {
        return true;
    }
    if p == RAA {
        if buf.run(prev).contains(&MK_TARQEEQ) {
            return false;
        }
        // raa with fatha or damma before its alif is emphatic
        return matches!(buf.vowel_of(prev), Some(FATHA | DAMMA) | None);
    }
    if p == LAM && buf.get(i + 1) == Some(HAA) {
        // divine name: lam-lam-fatha-alif-haa; emphasis follows the vowel
        // before the doubled lam
        if let Some(first_lam) = buf.prev_letter(prev) {
            if buf.chars[first_lam] == LAM {
                let before = buf.prev_letter(first_lam);
                let vowel = before.and_then(|b| buf.vowel_of(b));
                return !matches!(vowel, Some(KASRA));
            }
        }
    }
    false
}

/// Op 25: the echo on the five qalqala letters when they close on a sukun,
/// including a pause-induced one.
fn op25_qalqla(buf: &mut Buf) {
    let mut i = 0;
    while i < buf.len() {
        let c = buf.chars[i];
        if QALQALA_LETTERS.contains(&c) && is_base_letter(c) {
            let end = buf.run_end(i);
            let is_final = buf.next_letter(end).is_none();
            let explicit_sukun = buf.run_has(i, SUKUN);
            let bare_final = is_final && buf.is_bare(i) && !buf.run_has(i, SHADDA);
            let shadda_final = is_final && buf.run_has(i, SHADDA) && buf.vowel_of(i).is_none();
            if explicit_sukun || bare_final || shadda_final {
                buf.insert(end, &[MK_QLQLA]);
                i = end + 1;
                continue;
            }
        }
        i += 1;
    }
}

/// Op 26: the sukun signs disappear, shadda letters double out, and the
/// advisory markers that have served their purpose are dropped.
fn op26_remove_ras_haa_and_shadda(buf: &mut Buf) {
    // expand shadda into a doubled letter
    let mut i = 0;
    while i < buf.len() {
        if is_base_letter(buf.chars[i]) {
            if let Some(pos) = buf.run(i).iter().position(|&m| m == SHADDA) {
                let letter = buf.chars[i];
                buf.remove(i + 1 + pos);
                buf.insert(i, &[letter]);
                i += 1;
                continue;
            }
        }
        i += 1;
    }
    buf.chars
        .retain(|&c| !matches!(c, SUKUN | MK_IZHAR | MADDA | IQLAB_MEEM_ABOVE | SKOON_MOSTADEER | SKOON_MOSTATEEL));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moshaf::MoshafAttributes;
    use crate::phonetics::{IntermediateText, UtteranceContext};

    fn run_through(text: &str, upto: u8, ctx: UtteranceContext) -> String {
        let attrs = MoshafAttributes::standard();
        let mut t = IntermediateText::from_input(text).unwrap();
        for op in 1..=upto {
            t = apply_operation(op, t, &attrs, ctx).unwrap();
        }
        t.value()
    }

    #[test]
    fn sanitize_rejects_unknown_and_strips_pause_marks() {
        assert!(sanitize("abc").is_err());
        let cleaned = sanitize("قُلْ\u{06D6} هُوَ").unwrap();
        let s: String = cleaned.iter().collect();
        assert_eq!(s, "قُلْ هُوَ");
    }

    #[test]
    fn sanitize_orders_marks_and_splits_precomposed_madda() {
        let cleaned = sanitize("رَّ آ").unwrap();
        let s: String = cleaned.iter().collect();
        assert_eq!(s, "ر\u{0651}\u{064E} ا\u{0653}");
    }

    #[test]
    fn op1_expands_yaseen() {
        let out = run_through("يسٓ", 1, UtteranceContext::default());
        assert_eq!(out, "يَا سِين");
    }

    #[test]
    fn op1_expands_alif_lam_meem() {
        let out = run_through("الٓمٓ", 1, UtteranceContext::default());
        assert_eq!(out, "ءَلِفْ لَام مِيم");
    }

    #[test]
    fn op1_leaves_normal_words() {
        let out = run_through("قُلْ هُوَ", 1, UtteranceContext::default());
        assert_eq!(out, "قُلْ هُوَ");
    }

    #[test]
    fn op3_article_gets_fatha() {
        let out = run_through("ٱلْحَمْدُ", 3, UtteranceContext::default());
        assert!(out.starts_with("ءَلْ"), "{out}");
    }

    #[test]
    fn op3_kasra_for_ihdina_damma_for_odkhol() {
        let out = run_through("ٱهْدِنَا", 3, UtteranceContext::default());
        assert!(out.starts_with("ءِهْ"), "{out}");
        let out = run_through("ٱدْخُلِ", 3, UtteranceContext::default());
        assert!(out.starts_with("ءُدْ"), "{out}");
    }

    #[test]
    fn op3_mid_utterance_drops_wasla() {
        let ctx = UtteranceContext::new(false, true);
        let out = run_through("ٱلْحَمْدُ", 3, ctx);
        assert!(out.starts_with("لْ"), "{out}");
    }

    #[test]
    fn op5_maksora_variants() {
        // seat of dagger alif drops
        let out = run_through("عَلَىٰ", 5, UtteranceContext::default());
        assert_eq!(out, "عَلَٰ");
        // own vowel: consonant yaa
        let out = run_through("خَشِىَ", 5, UtteranceContext::default());
        assert_eq!(out, "خَشِيَ");
        // preceded by kasra: madd yaa
        let out = run_through("فِى", 5, UtteranceContext::default());
        assert_eq!(out, "فِي");
    }

    #[test]
    fn op6_hamza_forms() {
        let out = run_through("أَؤُإِئ يَسْـَٔلُ", 8, UtteranceContext::default());
        assert_eq!(out, "ءَءُءِء يَسْءَلُ");
    }

    #[test]
    fn op9_junction_swallows_madd() {
        let out = run_through("فِى ٱلصُّورِ", 9, UtteranceContext::default());
        assert_eq!(out, "فِ لصُّورِ");
    }

    #[test]
    fn op9_tanween_liaison() {
        let out = run_through("أَحَدٌ ٱللَّهُ", 9, UtteranceContext::default());
        assert!(out.contains("حَدُنِ"), "{out}");
    }

    #[test]
    fn op10_removes_silent_alif() {
        let out = run_through("قَالُوا۟ مَا", 10, UtteranceContext::default());
        assert_eq!(out, "قَالُو مَا");
    }

    #[test]
    fn op12_iwad_pause_vs_wasl() {
        let paused = run_through("كُفُوًا", 12, UtteranceContext::new(true, true));
        assert_eq!(paused, "كُفُوَا");
        let connected = run_through("كُفُوًا أَحَدٌ", 12, UtteranceContext::new(true, false));
        assert!(connected.starts_with("كُفُوً"), "{connected}");
    }

    #[test]
    fn op15_pause_sukun_trace() {
        let out = run_through("نَسْتَعِينُ", 15, UtteranceContext::default());
        assert!(out.ends_with(&format!("ن{SUKUN}")), "{out}");
        let wasl = run_through("نَسْتَعِينُ", 15, UtteranceContext::new(true, false));
        assert!(wasl.ends_with('ُ'), "{wasl}");
    }

    #[test]
    fn op16_taa_marbuta() {
        let paused = run_through("ٱلْجَنَّةَ", 16, UtteranceContext::default());
        assert!(paused.ends_with(&format!("ه{SUKUN}")), "{paused}");
        let linked = run_through("ٱلْجَنَّةَ قَالَ", 16, UtteranceContext::new(true, false));
        assert!(linked.contains("تَ قَ"), "{linked}");
    }

    #[test]
    fn op17_allah_alif() {
        let out = run_through("ٱللَّهُ", 17, UtteranceContext::new(true, false));
        assert!(out.contains("لَّاه"), "{out}");
        // an ordinary doubled lam is untouched
        let out = run_through("كُلَّهَا", 17, UtteranceContext::new(true, false));
        assert!(!out.contains("لَّاه"), "{out}");
    }

    #[test]
    fn op18_tanween_and_assimilation() {
        // tanween kasr unfolds to kasra + noon; the noon then assimilates
        // into the shadda meem, leaving the doubled target for op 21
        let out = run_through("صِرَٰطٍ مُّسْتَقِيمٍ", 18, UtteranceContext::new(true, false));
        assert!(out.contains(&format!("ط{KASRA} م")), "{out}");
        let out = run_through("وَلَمْ يَكُن لَّهُۥ", 18, UtteranceContext::new(true, false));
        assert!(out.contains("يَكُ لَّ"), "{out}");
    }

    #[test]
    fn op21_ikhfa_triples() {
        let out = run_through("مِن شَرِّ", 21, UtteranceContext::new(true, false));
        assert!(out.contains(&format!(
            "{}{}{}",
            MK_NOON_MOKHFAH, MK_NOON_MOKHFAH, MK_NOON_MOKHFAH
        )), "{out}");
    }

    #[test]
    fn op21_iqlab_triples_meem() {
        let out = run_through("مِنۢ بَيْنِ", 21, UtteranceContext::new(true, false));
        assert!(out.contains(&format!(
            "{}{}{}",
            MK_MEEM_MOKHFAH, MK_MEEM_MOKHFAH, MK_MEEM_MOKHFAH
        )), "{out}");
    }

    #[test]
    fn op21_shadda_noon_triples() {
        let out = run_through("إِنَّ", 21, UtteranceContext::new(true, false));
        let noons = out.chars().filter(|&c| c == NOON).count();
        assert_eq!(noons, 3, "{out}");
        let flags = out.chars().filter(|&c| c == MK_GHUNNAH).count();
        assert_eq!(flags, 3, "{out}");
    }

    #[test]
    fn op21_idgham_with_ghunnah_doubles_target() {
        let out = run_through("مَن يُرِيدُ", 21, UtteranceContext::new(true, false));
        let yaas = out.chars().filter(|&c| c == YAA).count();
        assert_eq!(yaas, 2, "{out}");
        assert!(!out.contains(&format!("{NOON} ")), "{out}");
    }

    #[test]
    fn op24_monfasel_length_follows_config() {
        for len in [2u8, 4, 5] {
            let mut attrs = MoshafAttributes::standard();
            attrs.madd_monfasel_len = len;
            let mut t = IntermediateText::from_input("مَآ أُنذِرَ").unwrap();
            let ctx = UtteranceContext::new(true, false);
            for op in 1..=26 {
                t = apply_operation(op, t, &attrs, ctx).unwrap();
            }
            let count = t.value().chars().filter(|&c| c == MK_MADD_ALIF).count();
            assert_eq!(count, len as usize, "len {len}: {}", t.value());
        }
    }

    #[test]
    fn op25_qalqala_sites() {
        let out = run_through("لَقَدْ", 25, UtteranceContext::new(true, false));
        assert!(out.contains(MK_QLQLA), "{out}");
        let out = run_through("ٱلْفَلَقِ", 25, UtteranceContext::new(true, true));
        assert!(out.ends_with(MK_QLQLA), "{out}");
        // no echo on a voweled qaf
        let out = run_through("خَلَقَ", 25, UtteranceContext::new(true, false));
        assert!(!out.contains(MK_QLQLA), "{out}");
    }

    #[test]
    fn op26_expands_shadda() {
        let out = run_through("رَبِّ", 26, UtteranceContext::new(true, false));
        let bas = out.chars().filter(|&c| c == 'ب').count();
        assert_eq!(bas, 2, "{out}");
        assert!(!out.contains(SHADDA), "{out}");
    }

    #[test]
    fn stage_mismatch_is_an_error() {
        let attrs = MoshafAttributes::standard();
        let t = IntermediateText::from_input("قُلْ").unwrap();
        let err = apply_operation(5, t, &attrs, UtteranceContext::default()).unwrap_err();
        assert!(matches!(err, Error::Pipeline { op: 5, .. }));
    }
}
