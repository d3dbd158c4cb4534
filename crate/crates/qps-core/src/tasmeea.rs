//! Fuzzy alignment of transcript segments against a sura's canonical text,
//! plus missing-portion cataloguing.
//!
//! Matching walks the sura word stream with a cursor. For each segment it
//! scores every candidate window over a start-offset range around the
//! cursor and a width band around the nominal window size; a rejected
//! segment widens the next search by a penalty and skips one aya.

use crate::corpus::{normalize_for_matching, NormalizedText, QuranCorpus};
use crate::error::{Error, Result};

/// Search parameters. The width band is `window_words` plus/minus ten
/// words; `window_words` must exceed ten so the band stays positive.
#[derive(Debug, Clone, PartialEq)]
pub struct TasmeeaParams {
    pub overlap_words: usize,
    pub window_words: usize,
    pub acceptance_ratio: f64,
    pub include_istiaatha: bool,
    pub include_sadaka: bool,
}

impl Default for TasmeeaParams {
    fn default() -> Self {
        TasmeeaParams {
            overlap_words: 6,
            window_words: 30,
            acceptance_ratio: 0.5,
            include_istiaatha: false,
            include_sadaka: false,
        }
    }
}

impl TasmeeaParams {
    pub fn validate(&self) -> Result<()> {
        if self.window_words <= 10 {
            return Err(Error::InvalidInput(format!(
                "window_words must exceed 10, got {}",
                self.window_words
            )));
        }
        if !(0.0..=1.0).contains(&self.acceptance_ratio) {
            return Err(Error::InvalidInput(format!(
                "acceptance_ratio must lie in [0,1], got {}",
                self.acceptance_ratio
            )));
        }
        Ok(())
    }

    pub fn min_win(&self) -> usize {
        self.window_words - 10
    }

    pub fn max_win(&self) -> usize {
        self.window_words + 10
    }
}

/// The opening seeking-refuge phrase, accepted before the first segment.
pub const ISTIAATHA: &str = "أعوذ بالله من الشيطان الرجيم";
/// The closing formula, accepted after the last segment.
pub const SADAKA: &str = "صدق الله العظيم";

/// One recognized special phrase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialPhrase {
    Istiaatha,
    Sadaka,
}

/// A matched span of the sura word stream.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchedSpan {
    pub sura: u16,
    pub start_word: usize,
    pub word_count: usize,
    pub text: String,
}

/// Per-segment outcome: the accepted span (if the best ratio cleared the
/// acceptance threshold) and the best ratio found either way.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchResult {
    pub matched: Option<MatchedSpan>,
    pub ratio: f64,
    pub special: Option<SpecialPhrase>,
}

/// Cursor and penalty state carried across segments of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatcherState {
    pub aya_word_cursor: usize,
    pub penalty: usize,
}

/// Unit-cost Levenshtein distance over code points.
pub fn edit_distance(a: &NormalizedText, b: &NormalizedText) -> usize {
    edit_distance_chars(
        &a.value.chars().collect::<Vec<_>>(),
        &b.value.chars().collect::<Vec<_>>(),
    )
}

pub(crate) fn edit_distance_chars(a: &[char], b: &[char]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    let mut cur: Vec<usize> = vec![0; b.len() + 1];
    for (i, &ca) in a.iter().enumerate() {
        cur[0] = i + 1;
        for (j, &cb) in b.iter().enumerate() {
            let sub = prev[j] + usize::from(ca != cb);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// Similarity of a segment to a candidate: one minus the normalized,
/// clamped edit distance. An empty segment is an input error.
pub fn similarity_ratio(segment: &NormalizedText, candidate: &NormalizedText) -> Result<f64> {
    let len = segment.len();
    if len == 0 {
        return Err(Error::InvalidInput("empty segment".into()));
    }
    let dist = edit_distance(segment, candidate).min(len);
    Ok(1.0 - dist as f64 / len as f64)
}

fn ratio_against(segment: &[char], candidate: &str) -> f64 {
    let cand: Vec<char> = normalize_for_matching(candidate).value.chars().collect();
    let len = segment.len();
    if len == 0 {
        return 0.0;
    }
    // candidates whose length alone puts them past the clamp floor are not
    // worth a full distance computation
    let diff = segment.len().abs_diff(cand.len());
    if diff >= len {
        return 0.0;
    }
    let dist = edit_distance_chars(segment, &cand).min(len);
    1.0 - dist as f64 / len as f64
}

/// Counts candidate evaluations, for the cost-bound check.
#[derive(Debug, Default, Clone, Copy)]
pub struct MatchStats {
    pub candidates_evaluated: usize,
}

/// Matches transcript segments (in recitation order) against one sura.
pub fn match_segments(
    segments: &[String],
    sura_idx: u16,
    params: &TasmeeaParams,
    corpus: &QuranCorpus,
) -> Result<Vec<MatchResult>> {
    Ok(match_segments_with_stats(segments, sura_idx, params, corpus)?.0)
}

pub fn match_segments_with_stats(
    segments: &[String],
    sura_idx: u16,
    params: &TasmeeaParams,
    corpus: &QuranCorpus,
) -> Result<(Vec<MatchResult>, MatchStats)> {
    params.validate()?;
    if !(1..=114).contains(&sura_idx) {
        return Err(Error::InvalidInput(format!("sura out of range: {sura_idx}")));
    }
    let total_words = corpus.sura_word_count(sura_idx);
    let mut results = Vec::with_capacity(segments.len());
    let mut stats = MatchStats::default();
    let mut state = MatcherState {
        aya_word_cursor: 0,
        penalty: 0,
    };
    let min_win = params.min_win();
    let max_win = params.max_win();

    for (idx, segment) in segments.iter().enumerate() {
        let norm = normalize_for_matching(segment);
        let seg_chars: Vec<char> = norm.value.chars().collect();
        if seg_chars.is_empty() {
            results.push(MatchResult {
                matched: None,
                ratio: 0.0,
                special: None,
            });
            state.penalty = max_win;
            state.aya_word_cursor = advance_one_aya(corpus, sura_idx, state.aya_word_cursor);
            continue;
        }

        // special phrases at the edges
        let special = if idx == 0 && params.include_istiaatha {
            Some((SpecialPhrase::Istiaatha, ISTIAATHA))
        } else if idx + 1 == segments.len() && params.include_sadaka {
            Some((SpecialPhrase::Sadaka, SADAKA))
        } else {
            None
        };
        if let Some((kind, phrase)) = special {
            let r = ratio_against(&seg_chars, phrase);
            if r >= params.acceptance_ratio {
                results.push(MatchResult {
                    matched: Some(MatchedSpan {
                        sura: sura_idx,
                        start_word: state.aya_word_cursor,
                        word_count: 0,
                        text: phrase.to_string(),
                    }),
                    ratio: r,
                    special: Some(kind),
                });
                // the cursor does not move over a special phrase
                continue;
            }
        }

        let lo = -((params.overlap_words + state.penalty) as i64);
        let hi = (params.overlap_words + params.window_words.max(max_win) + state.penalty) as i64;

        let mut best_ratio = 0.0f64;
        let mut best_start: Option<i64> = None;
        let mut best_window = 0usize;
        // offsets in order of increasing |p| so that the tie rule (smaller
        // absolute start offset wins) falls out of strict improvement
        let mut offsets: Vec<i64> = (lo..=hi).collect();
        offsets.sort_by_key(|p| (p.abs(), *p));
        for p in offsets {
            let start = state.aya_word_cursor as i64 + p;
            if start >= total_words as i64 {
                continue;
            }
            for w in min_win..=max_win {
                let candidate = corpus.word_window(sura_idx, start, w);
                if candidate.is_empty() {
                    continue;
                }
                stats.candidates_evaluated += 1;
                let r = ratio_against(&seg_chars, &candidate);
                if r > best_ratio {
                    best_ratio = r;
                    best_start = Some(p);
                    best_window = w;
                }
            }
        }

        if best_ratio < params.acceptance_ratio || best_start.is_none() {
            results.push(MatchResult {
                matched: None,
                ratio: best_ratio,
                special: None,
            });
            state.penalty = max_win;
            state.aya_word_cursor = advance_one_aya(corpus, sura_idx, state.aya_word_cursor);
        } else {
            let p = best_start.unwrap();
            let start = (state.aya_word_cursor as i64 + p).max(0) as usize;
            let word_count = best_window.min(total_words.saturating_sub(start));
            results.push(MatchResult {
                matched: Some(MatchedSpan {
                    sura: sura_idx,
                    start_word: start,
                    word_count,
                    text: corpus.word_window(sura_idx, start as i64, word_count),
                }),
                ratio: best_ratio,
                special: None,
            });
            state.aya_word_cursor = start + word_count;
            state.penalty = 0;
        }
    }
    Ok((results, stats))
}

/// Cursor advance on rejection: one aya's worth of words.
fn advance_one_aya(corpus: &QuranCorpus, sura: u16, cursor: usize) -> usize {
    let words = corpus.sura_words(sura);
    if cursor >= words.len() {
        return cursor;
    }
    let current_aya = words[cursor].aya_index;
    words[cursor..]
        .iter()
        .position(|w| w.aya_index != current_aya)
        .map(|off| cursor + off)
        .unwrap_or(words.len())
}

/// A word-index interval of the sura covered by no accepted match.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gap {
    pub start_word: usize,
    pub word_count: usize,
}

/// Maximal uncovered word intervals, in order.
pub fn missing_portions(
    results: &[MatchResult],
    corpus: &QuranCorpus,
    sura_idx: u16,
) -> Vec<Gap> {
    let total = corpus.sura_word_count(sura_idx);
    let mut covered = vec![false; total];
    for r in results {
        if let Some(m) = &r.matched {
            if m.sura == sura_idx {
                for i in m.start_word..(m.start_word + m.word_count).min(total) {
                    covered[i] = true;
                }
            }
        }
    }
    let mut gaps = Vec::new();
    let mut i = 0;
    while i < total {
        if !covered[i] {
            let start = i;
            while i < total && !covered[i] {
                i += 1;
            }
            gaps.push(Gap {
                start_word: start,
                word_count: i - start,
            });
        } else {
            i += 1;
        }
    }
    gaps
}
