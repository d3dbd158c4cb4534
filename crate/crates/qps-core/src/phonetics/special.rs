//! Operation 2: word-specific rulings driven by the Moshaf attributes.
//!
//! Every rule locates its site by the exact Uthmani spelling (via the
//! bare-letter skeleton of the word) and rewrites the text into the plain
//! orthography that realizes the chosen reading, so the later operations
//! need no special knowledge. Sakt sites insert the sakt marker; izhar
//! choices lock the letter against assimilation with an advisory marker;
//! emphasis choices tag the raa for the sifat extractor.
//!
//! Values meaning "the reciter pauses here" (`waqf`) are realized as clear
//! articulation without sakt: a true mid-utterance stop is outside the
//! single-utterance model, and clear articulation is what remains of it.

use crate::moshaf::{
    AnfalTawba, HarakatDaaf, IdghamChoice, IdghamKind, MeemAalImran, MoshafAttributes, NoonTamna,
    SakenBeforeHamz, SaktChoice, SaktOrIdgham, SeenOrSaad, StartWithIsm, TasheelOrMadd, YaaAtaan,
};

use super::pipeline::{
    is_base_letter, Buf, ALIF, ALIF_HAMZA_ABOVE, ALIF_HAMZA_BELOW, FATHA, HAMZA, ISHMAM_MARK,
    KASRA, LAM, MADDA, MEEM, NOON, RAA, SHADDA, SKOON_MOSTADEER, SKOON_MOSTATEEL,
    SMALL_SEEN_ABOVE, SMALL_SEEN_BELOW, SMALL_YAA, SUKUN, WASLA, WAW_HAMZA, YAA, YAA_HAMZA,
};
use super::{MK_DAMA_MOKHTALASA, MK_HAMZA_MOSAHALA, MK_IZHAR, MK_SAKT, MK_TAFKHEEM, MK_TARQEEQ};

/// (start, end) spans of the words in the buffer, with skeletons.
fn words(buf: &Buf) -> Vec<(usize, usize, String)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < buf.len() {
        if buf.get(i) == Some(' ') {
            i += 1;
            continue;
        }
        let start = i;
        let mut skeleton = String::new();
        while i < buf.len() && buf.get(i) != Some(' ') {
            let c = buf.chars[i];
            if is_base_letter(c) {
                skeleton.push(c);
            }
            i += 1;
        }
        out.push((start, i, skeleton));
    }
    out
}

fn find_word(buf: &Buf, skeletons: &[&str]) -> Option<(usize, usize)> {
    words(buf)
        .into_iter()
        .find(|(_, _, s)| skeletons.contains(&s.as_str()))
        .map(|(a, b, _)| (a, b))
}

fn find_word_pair(buf: &Buf, first: &[&str], second: &[&str]) -> Option<((usize, usize), (usize, usize))> {
    let ws = words(buf);
    for pair in ws.windows(2) {
        if first.contains(&pair[0].2.as_str()) && second.contains(&pair[1].2.as_str()) {
            return Some(((pair[0].0, pair[0].1), (pair[1].0, pair[1].1)));
        }
    }
    None
}

fn remove_small_seen(buf: &mut Buf, start: usize, end: usize) -> usize {
    let mut removed = 0;
    let mut i = start;
    while i < end.saturating_sub(removed) && i < buf.len() {
        if matches!(buf.chars[i], SMALL_SEEN_ABOVE | SMALL_SEEN_BELOW) {
            buf.remove(i);
            removed += 1;
            continue;
        }
        i += 1;
    }
    removed
}

/// Replaces each saad of the word with seen, for the seen/saad rulings.
fn saad_to_seen(buf: &mut Buf, start: usize, end: usize) {
    for i in start..end.min(buf.len()) {
        if buf.chars[i] == 'ص' {
            buf.chars[i] = 'س';
        }
    }
}

fn sakt_site(
    buf: &mut Buf,
    skeletons: &[&str],
    choice: SaktChoice,
) {
    if let Some((start, end)) = find_word(buf, skeletons) {
        let removed = remove_small_seen(buf, start, end);
        let end = end - removed;
        if choice == SaktChoice::Sakt {
            buf.insert(end, &[MK_SAKT]);
        }
    }
}

pub(super) fn op02_special_cases(buf: &mut Buf, attrs: &MoshafAttributes) {
    rule_start_with_ism(buf, attrs.start_with_ism);
    rule_noon_and_yaseen(buf, attrs.noon_and_yaseen);
    rule_meem_aal_imran(buf, attrs.meem_aal_imran);

    sakt_site(buf, &["عوجا"], attrs.sakt_iwaja);
    sakt_site(buf, &["مرقدنا"], attrs.sakt_marqdena);
    rule_man_raq(buf, attrs.sakt_man_raq);
    rule_bal_ran(buf, attrs.sakt_bal_ran);
    rule_maleeyah(buf, attrs.sakt_maleeyah);
    rule_anfal_tawba(buf, attrs.between_anfal_and_tawba);

    rule_seen_saad(buf, &["يبصط"], attrs.yabsut);
    rule_seen_saad(buf, &["بصطة", "بصطه"], attrs.bastah);
    rule_seen_saad(buf, &["المصيطرون"], attrs.almusaytirun);
    rule_seen_saad(buf, &["بمصيطر"], attrs.bimusaytir);

    rule_tasheel_or_madd(buf, attrs.tasheel_or_madd);
    rule_yalhath(buf, attrs.yalhath_dhalik);
    rule_irkab(buf, attrs.irkab_maana);
    rule_noon_tamna(buf, attrs.noon_tamna);
    rule_harakat_daaf(buf, attrs.harakat_daaf);
    rule_alif_salasila(buf, attrs.alif_salasila);
    rule_nakhluqkum(buf, attrs.idgham_nakhluqkum);
    rule_yaa_ataan(buf, attrs.yaa_ataan);

    rule_raa(buf, &["فرق"], match attrs.raa_firq {
        crate::moshaf::RaaChoice::Tafkheem => Some(MK_TAFKHEEM),
        crate::moshaf::RaaChoice::Tarqeeq => Some(MK_TARQEEQ),
        crate::moshaf::RaaChoice::Waqf => None,
    });
    for (skeletons, choice) in [
        (&["القطر"][..], attrs.raa_alqitr),
        (&["مصر"][..], attrs.raa_misr),
        (&["نذر", "ونذر"][..], attrs.raa_nudhur),
        (&["يسر", "اسر", "فاسر"][..], attrs.raa_yasr),
    ] {
        rule_raa(buf, skeletons, match choice {
            crate::moshaf::RaaWaslChoice::Tafkheem => Some(MK_TAFKHEEM),
            crate::moshaf::RaaWaslChoice::Tarqeeq => Some(MK_TARQEEQ),
            crate::moshaf::RaaWaslChoice::Wasl => None,
        });
    }

    rule_saken_before_hamz(buf, attrs.saken_before_hamz);
}

/// Starting on the word "al-ism": both spoken forms drop the inner wasla.
fn rule_start_with_ism(buf: &mut Buf, choice: StartWithIsm) {
    let starts = buf.len() >= 5
        && buf.chars[0] == WASLA
        && buf.chars[1] == LAM
        && buf.chars[2] == KASRA
        && buf.chars[3] == WASLA
        && buf.chars[4] == 'س';
    if !starts {
        return;
    }
    match choice {
        StartWithIsm::Alism => buf.replace(0..4, &[HAMZA, FATHA, LAM, KASRA]),
        StartWithIsm::Lism | StartWithIsm::Wasl => buf.replace(0..4, &[LAM, KASRA]),
    }
}

/// The noon closing the yaseen/noon letter names before a waw: clear by
/// default, assimilated on demand.
fn rule_noon_and_yaseen(buf: &mut Buf, choice: crate::moshaf::IzharOrIdgham) {
    if choice != crate::moshaf::IzharOrIdgham::Izhar {
        return;
    }
    let ws = words(buf);
    for pair in ws.windows(2) {
        if matches!(pair[0].2.as_str(), "سين" | "نون") && pair[1].2.starts_with('و') {
            buf.insert(pair[0].1, &[MK_IZHAR]);
            return;
        }
    }
}

/// The meem closing "alif lam meem" when the divine name follows connected.
fn rule_meem_aal_imran(buf: &mut Buf, choice: MeemAalImran) {
    let target = match find_word_pair(buf, &["ميم"], &["الله"]) {
        Some((meem_word, allah_word)) => (meem_word, allah_word),
        None => return,
    };
    let ((_, meem_end), (allah_start, _)) = target;
    match choice {
        MeemAalImran::Waqf => {
            // a fresh hamza opens the divine name; the letter name keeps its
            // six-beat madd and a clear meem
            buf.replace(allah_start..allah_start + 1, &[HAMZA, FATHA]);
            buf.insert(meem_end, &[MK_IZHAR]);
        }
        MeemAalImran::Wasl2 => {
            buf.insert(meem_end, &[FATHA]);
        }
        MeemAalImran::Wasl6 => {
            buf.insert(meem_end, &[FATHA]);
            // tag the yaa of the name with a madda: six beats despite the
            // voweled follower
            if let Some((start, end)) = find_word(buf, &["ميم"]) {
                for i in start..end {
                    if buf.chars[i] == YAA {
                        buf.insert(i + 1, &[MADDA]);
                        break;
                    }
                }
            }
        }
    }
}

fn rule_man_raq(buf: &mut Buf, choice: SaktChoice) {
    let target = find_word_pair(buf, &["من"], &["راق"]);
    let ((man_start, man_end), _) = match target {
        Some(t) => t,
        None => return,
    };
    let removed = remove_small_seen(buf, man_start, buf.len());
    let man_end = man_end - removed;
    match choice {
        SaktChoice::Sakt | SaktChoice::Waqf => {
            // the stop (full or slight) keeps the noon clear
            let mut insert: Vec<char> = Vec::new();
            if !buf.chars[man_start..man_end].contains(&SUKUN) {
                insert.push(SUKUN);
            }
            insert.push(MK_IZHAR);
            if choice == SaktChoice::Sakt {
                insert.push(MK_SAKT);
            }
            buf.insert(man_end, &insert);
        }
        SaktChoice::Idraj => {
            // running on: the noon assimilates into a doubled raa
            let mut i = man_start;
            while i < buf.len() {
                if buf.chars[i] == SUKUN {
                    buf.remove(i);
                    break;
                }
                i += 1;
            }
            if let Some(r) = (man_start..buf.len()).find(|&j| buf.chars[j] == RAA) {
                buf.insert(r + 1, &[SHADDA]);
            }
        }
    }
}

fn rule_bal_ran(buf: &mut Buf, choice: SaktChoice) {
    let target = find_word_pair(buf, &["بل"], &["ران"]);
    let ((bal_start, bal_end), _) = match target {
        Some(t) => t,
        None => return,
    };
    let removed = remove_small_seen(buf, bal_start, buf.len());
    let bal_end = bal_end - removed;
    match choice {
        SaktChoice::Sakt => buf.insert(bal_end, &[MK_SAKT]),
        SaktChoice::Waqf => {}
        SaktChoice::Idraj => {
            // drop the lam, double the raa
            let lam = (bal_start..bal_end).rfind(|&j| buf.chars[j] == LAM);
            if let Some(l) = lam {
                let end = buf.run_end(l);
                buf.replace(l..end, &[]);
                if let Some(r) = (l..buf.len()).find(|&j| buf.chars[j] == RAA) {
                    buf.insert(r + 1, &[SHADDA]);
                }
            }
        }
    }
}

fn rule_maleeyah(buf: &mut Buf, choice: SaktOrIdgham) {
    let target = find_word_pair(buf, &["ماليه"], &["هلك"]);
    let ((_, mal_end), (halaka_start, _)) = match target {
        Some(t) => t,
        None => return,
    };
    match choice {
        SaktOrIdgham::Sakt => buf.insert(mal_end, &[MK_SAKT]),
        SaktOrIdgham::Waqf => {}
        SaktOrIdgham::Idgham => {
            // the first haa merges into the second
            let haa = (0..mal_end).rfind(|&j| buf.chars[j] == 'ه');
            if let Some(h) = haa {
                let end = buf.run_end(h);
                buf.replace(h..end, &[]);
                let shift = end - h;
                let h2 = halaka_start - shift;
                if buf.get(h2) == Some('ه') {
                    buf.insert(h2 + 1, &[SHADDA]);
                }
            }
        }
    }
}

/// The junction of the eighth and ninth suras: tanween of the last word
/// meets the opening baa. The pause and sakt forms keep a clear noon.
fn rule_anfal_tawba(buf: &mut Buf, choice: AnfalTawba) {
    if choice == AnfalTawba::Wasl {
        return;
    }
    let target = find_word_pair(buf, &["عليم"], &["براءة"]);
    let ((alim_start, alim_end), _) = match target {
        Some(t) => t,
        None => return,
    };
    for i in alim_start..alim_end {
        if buf.chars[i] == '\u{064C}' {
            let mut repl = vec!['\u{064F}', NOON, SUKUN, MK_IZHAR];
            if choice == AnfalTawba::Sakt {
                repl.push(MK_SAKT);
            }
            // drop an iqlab meem mark if the spelling carried one
            let mut end = i + 1;
            if buf.get(end) == Some('\u{06E2}') {
                end += 1;
            }
            buf.replace(i..end, &repl);
            return;
        }
    }
}

fn rule_seen_saad(buf: &mut Buf, skeletons: &[&str], choice: SeenOrSaad) {
    if let Some((start, end)) = find_word(buf, skeletons) {
        let removed = remove_small_seen(buf, start, end);
        if choice == SeenOrSaad::Seen {
            saad_to_seen(buf, start, end - removed);
        }
    }
}

/// The six question-hamza words: lengthened by default, eased on demand.
fn rule_tasheel_or_madd(buf: &mut Buf, choice: TasheelOrMadd) {
    if choice != TasheelOrMadd::Tasheel {
        return;
    }
    let mut i = 0;
    while i + 3 < buf.len() {
        if buf.chars[i] == HAMZA
            && buf.chars[i + 1] == FATHA
            && buf.chars[i + 2] == ALIF
            && buf.chars[i + 3] == MADDA
            && buf.get(i + 4) == Some(LAM)
        {
            buf.replace(i + 2..i + 4, &[MK_HAMZA_MOSAHALA]);
        }
        i += 1;
    }
}

fn rule_yalhath(buf: &mut Buf, choice: IdghamChoice) {
    if choice == IdghamChoice::Idgham {
        return;
    }
    let target = find_word_pair(buf, &["يلهث"], &["ذلك"]);
    let ((yal_start, yal_end), (dhal_start, _)) = match target {
        Some(t) => t,
        None => return,
    };
    let _ = yal_start;
    // clear thaa, single dhaal
    let mut shift = 0;
    if let Some(pos) = (dhal_start..buf.len()).find(|&j| buf.chars[j] == SHADDA) {
        buf.remove(pos);
        shift = 0;
        let _ = shift;
    }
    buf.insert(yal_end, &[SUKUN, MK_IZHAR]);
}

fn rule_irkab(buf: &mut Buf, choice: IdghamChoice) {
    if choice == IdghamChoice::Idgham {
        return;
    }
    let target = find_word_pair(buf, &["اركب", "ٱركب"], &["معنا"]);
    let ((_, rkab_end), (maana_start, _)) = match target {
        Some(t) => t,
        None => return,
    };
    if let Some(pos) = (maana_start..buf.len()).find(|&j| buf.chars[j] == SHADDA) {
        buf.remove(pos);
    }
    buf.insert(rkab_end, &[SUKUN, MK_IZHAR]);
}

/// The "la ta'manna" reading: the ishmam sign is purely visual; rawm breaks
/// the doubled noon open with a snatched damma.
fn rule_noon_tamna(buf: &mut Buf, choice: NoonTamna) {
    let mark = (0..buf.len()).find(|&j| buf.chars[j] == ISHMAM_MARK);
    let mark = match mark {
        Some(m) => m,
        None => return,
    };
    buf.remove(mark);
    if choice == NoonTamna::Rawm {
        if let Some(pos) = (mark..buf.len()).find(|&j| buf.chars[j] == SHADDA) {
            buf.remove(pos);
            let noon = pos - 1;
            if buf.get(noon) == Some(NOON) {
                buf.insert(noon, &[MK_DAMA_MOKHTALASA]);
            }
        }
    }
}

fn rule_harakat_daaf(buf: &mut Buf, choice: HarakatDaaf) {
    if choice != HarakatDaaf::Dam {
        return;
    }
    for (start, end, skeleton) in words(buf) {
        if matches!(skeleton.as_str(), "ضعف" | "ضعفا") {
            for i in start..end {
                if buf.chars[i] == 'ض' && buf.get(i + 1) == Some(FATHA) {
                    buf.chars[i + 1] = '\u{064F}';
                }
            }
        }
    }
}

/// The "salasila" final alif: affirmation at a pause is exactly the
/// elongated-sukun behaviour, so the mark is rewritten accordingly.
fn rule_alif_salasila(buf: &mut Buf, choice: crate::moshaf::AlifSalasila) {
    if choice != crate::moshaf::AlifSalasila::Ithbat {
        return;
    }
    if let Some((start, end)) = find_word(buf, &["سلاسلا", "سلسلا"]) {
        for i in start..end {
            if buf.chars[i] == SKOON_MOSTADEER {
                buf.chars[i] = SKOON_MOSTATEEL;
                break;
            }
        }
    }
}

fn rule_nakhluqkum(buf: &mut Buf, choice: IdghamKind) {
    if choice != IdghamKind::Naqis {
        return;
    }
    if let Some((start, end)) = find_word(buf, &["نخلقكم"]) {
        let qaf = (start..end).find(|&j| buf.chars[j] == 'ق');
        if let Some(q) = qaf {
            if let Some(pos) = (q..buf.len()).find(|&j| buf.chars[j] == SHADDA) {
                buf.remove(pos);
            }
            buf.insert(q + 1, &[SUKUN]);
        }
    }
}

/// Pause forms of the "atani" spelling, applied only when it closes the
/// utterance text.
fn rule_yaa_ataan(buf: &mut Buf, choice: YaaAtaan) {
    if choice == YaaAtaan::Wasl {
        return;
    }
    let ws = words(buf);
    let last = match ws.last() {
        Some(w) => w.clone(),
        None => return,
    };
    if !last.2.ends_with("تىن") && !last.2.ends_with("تان") {
        return;
    }
    let small = (last.0..buf.len()).find(|&j| buf.chars[j] == SMALL_YAA);
    if let Some(s) = small {
        match choice {
            YaaAtaan::Hadhf => {
                let mut end = s + 1;
                if buf.get(end) == Some(FATHA) {
                    end += 1;
                }
                buf.replace(s..end, &[]);
            }
            YaaAtaan::Ithbat => {
                let mut end = s + 1;
                if buf.get(end) == Some(FATHA) {
                    end += 1;
                }
                buf.replace(s..end, &[YAA]);
            }
            YaaAtaan::Wasl => {}
        }
    }
}

fn rule_raa(buf: &mut Buf, skeletons: &[&str], marker: Option<char>) {
    let marker = match marker {
        Some(m) => m,
        None => return,
    };
    if let Some((start, end)) = find_word(buf, skeletons) {
        if let Some(r) = (start..end).find(|&j| buf.chars[j] == RAA) {
            let at = buf.run_end(r);
            buf.insert(at, &[marker]);
        }
    }
}

/// The Hafs sakt schools on a sakin before hamza: none, on every sakin, or
/// only on the article lam and the leen yaa of "shay'".
fn rule_saken_before_hamz(buf: &mut Buf, choice: SakenBeforeHamz) {
    if choice == SakenBeforeHamz::Tahqeeq {
        return;
    }
    let hamza_forms = [HAMZA, ALIF_HAMZA_ABOVE, ALIF_HAMZA_BELOW, WAW_HAMZA, YAA_HAMZA];
    let mut i = 0;
    while i < buf.len() {
        let c = buf.chars[i];
        if !is_base_letter(c) || !buf.run_has(i, SUKUN) {
            i += 1;
            continue;
        }
        let end = buf.run_end(i);
        let next = match buf.next_letter(end) {
            Some(n) => n,
            None => break,
        };
        if !hamza_forms.contains(&buf.chars[next]) {
            i = end;
            continue;
        }
        let eligible = match choice {
            SakenBeforeHamz::GeneralSakt => true,
            SakenBeforeHamz::LocalSakt => {
                let article_lam = c == LAM
                    && buf
                        .prev_letter(i)
                        .map(|p| matches!(buf.chars[p], ALIF | WASLA))
                        .unwrap_or(false);
                let shay_yaa = c == YAA && {
                    let (_, skeleton) = buf.word_skeleton_at(i);
                    matches!(skeleton.as_str(), "شيء" | "شىء")
                };
                article_lam || shay_yaa
            }
            SakenBeforeHamz::Tahqeeq => false,
        };
        if eligible {
            buf.insert(end, &[MK_SAKT]);
            i = end + 1;
            continue;
        }
        i = end;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moshaf::MoshafAttributes;
    use crate::phonetics::pipeline::apply_operation;
    use crate::phonetics::{IntermediateText, UtteranceContext};

    fn stage2(text: &str, attrs: &MoshafAttributes) -> String {
        let ctx = UtteranceContext::new(true, false);
        let mut t = IntermediateText::from_input(text).unwrap();
        for op in 1..=2 {
            t = apply_operation(op, t, attrs, ctx).unwrap();
        }
        t.value()
    }

    #[test]
    fn yaseen_noon_izhar_by_default() {
        let attrs = MoshafAttributes::standard();
        let out = stage2("يسٓ وَٱلْقُرْءَانِ", &attrs);
        assert!(out.contains(&format!("ن{MK_IZHAR}")), "{out}");
    }

    #[test]
    fn yaseen_noon_idgham_on_demand() {
        let mut attrs = MoshafAttributes::standard();
        attrs.noon_and_yaseen = crate::moshaf::IzharOrIdgham::Idgham;
        let out = stage2("يسٓ وَٱلْقُرْءَانِ", &attrs);
        assert!(!out.contains(&format!("ن{MK_IZHAR}")), "{out}");
    }

    #[test]
    fn marqdena_sakt_choice() {
        let mut attrs = MoshafAttributes::standard();
        attrs.sakt_marqdena = crate::moshaf::SaktChoice::Sakt;
        let out = stage2("مِن مَّرْقَدِنَاۜ هَٰذَا", &attrs);
        assert!(out.contains(MK_SAKT), "{out}");

        attrs.sakt_marqdena = crate::moshaf::SaktChoice::Waqf;
        let out = stage2("مِن مَّرْقَدِنَاۜ هَٰذَا", &attrs);
        assert!(!out.contains(MK_SAKT), "{out}");
        assert!(!out.contains(SMALL_SEEN_ABOVE), "{out}");
    }

    #[test]
    fn man_raq_default_sakt_blocks_idgham() {
        let attrs = MoshafAttributes::standard();
        let out = stage2("وَقِيلَ مَنْۜ رَاقٍ", &attrs);
        assert!(out.contains(MK_SAKT), "{out}");
        assert!(out.contains(MK_IZHAR), "{out}");
    }

    #[test]
    fn man_raq_idraj_doubles_raa() {
        let mut attrs = MoshafAttributes::standard();
        attrs.sakt_man_raq = crate::moshaf::SaktChoice::Idraj;
        let out = stage2("وَقِيلَ مَنْۜ رَاقٍ", &attrs);
        assert!(out.contains(&format!("ر{SHADDA}")), "{out}");
        assert!(!out.contains(MK_SAKT), "{out}");
    }

    #[test]
    fn yabsut_seen_by_default() {
        let attrs = MoshafAttributes::standard();
        let out = stage2("وَيَبْصُۜطُ", &attrs);
        assert!(out.contains('س'), "{out}");
        assert!(!out.contains('ص'), "{out}");

        let mut saad = MoshafAttributes::standard();
        saad.yabsut = crate::moshaf::SeenOrSaad::Saad;
        let out = stage2("وَيَبْصُۜطُ", &saad);
        assert!(out.contains('ص'), "{out}");
        assert!(!out.contains(SMALL_SEEN_ABOVE), "{out}");
    }

    #[test]
    fn tasheel_replaces_the_madda_alif() {
        let mut attrs = MoshafAttributes::standard();
        attrs.tasheel_or_madd = crate::moshaf::TasheelOrMadd::Tasheel;
        let out = stage2("ءَآللَّهُ", &attrs);
        assert!(out.contains(MK_HAMZA_MOSAHALA), "{out}");

        attrs.tasheel_or_madd = crate::moshaf::TasheelOrMadd::Madd;
        let out = stage2("ءَآللَّهُ", &attrs);
        assert!(!out.contains(MK_HAMZA_MOSAHALA), "{out}");
        assert!(out.contains(MADDA), "{out}");
    }

    #[test]
    fn noon_tamna_rawm_inserts_snatched_damma() {
        let mut attrs = MoshafAttributes::standard();
        attrs.noon_tamna = crate::moshaf::NoonTamna::Rawm;
        let out = stage2("لَا تَأْمَ۫نَّا", &attrs);
        assert!(out.contains(MK_DAMA_MOKHTALASA), "{out}");
        assert!(!out.contains(SHADDA), "{out}");

        attrs.noon_tamna = crate::moshaf::NoonTamna::Ishmam;
        let out = stage2("لَا تَأْمَ۫نَّا", &attrs);
        assert!(!out.contains(MK_DAMA_MOKHTALASA), "{out}");
        assert!(out.contains(SHADDA), "{out}");
    }

    #[test]
    fn saken_before_hamz_general_and_local() {
        let mut attrs = MoshafAttributes::standard();
        attrs.saken_before_hamz = crate::moshaf::SakenBeforeHamz::GeneralSakt;
        let out = stage2("قَدْ أَفْلَحَ", &attrs);
        assert!(out.contains(MK_SAKT), "{out}");

        attrs.saken_before_hamz = crate::moshaf::SakenBeforeHamz::LocalSakt;
        let out = stage2("قَدْ أَفْلَحَ", &attrs);
        assert!(!out.contains(MK_SAKT), "{out}");
        let out = stage2("ٱلْأَرْضِ", &attrs);
        assert!(out.contains(MK_SAKT), "{out}");
        let out = stage2("شَىْءٍ أَ", &attrs);
        assert!(out.contains(MK_SAKT), "{out}");
    }

    #[test]
    fn raa_marker_placement() {
        let attrs = MoshafAttributes::standard(); // raa_firq default tafkheem
        let out = stage2("فِرْقٍ", &attrs);
        assert!(out.contains(MK_TAFKHEEM), "{out}");

        let out = stage2("وَٱلَّيْلِ إِذَا يَسْرِ", &attrs); // default tarqeeq
        assert!(out.contains(MK_TARQEEQ), "{out}");
    }

    #[test]
    fn nakhluqkum_naqis() {
        let mut attrs = MoshafAttributes::standard();
        attrs.idgham_nakhluqkum = crate::moshaf::IdghamKind::Naqis;
        let out = stage2("نَخْلُقكُّم", &attrs);
        assert!(out.contains(&format!("ق{SUKUN}")), "{out}");
        assert!(!out.contains(SHADDA), "{out}");
    }
}
