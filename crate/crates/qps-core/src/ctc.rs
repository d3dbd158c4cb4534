//! Framework-free CTC math: forward loss by dynamic programming in log
//! space, greedy best-path decoding, the eleven-level weighted loss, and
//! phoneme-error-rate evaluation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::sifat::LEVEL_NAMES;
use crate::tasmeea::edit_distance_chars;

/// A T x V grid of log-probabilities; index 0 of each row is the blank.
#[derive(Debug, Clone, PartialEq)]
pub struct LogProbMatrix {
    steps: usize,
    vocab: usize,
    values: Vec<f64>,
}

impl LogProbMatrix {
    /// Builds a matrix from row-major log-probabilities, checking that each
    /// row's probabilities sum to one within `1e-6`. With `renormalize`,
    /// rows are shifted to sum exactly instead of rejected.
    pub fn new(steps: usize, vocab: usize, values: Vec<f64>, renormalize: bool) -> Result<Self> {
        if steps == 0 || vocab < 2 {
            return Err(Error::InvalidInput(format!(
                "need steps >= 1 and vocab >= 2, got {steps} x {vocab}"
            )));
        }
        if values.len() != steps * vocab {
            return Err(Error::InvalidInput(format!(
                "expected {} values, got {}",
                steps * vocab,
                values.len()
            )));
        }
        let mut values = values;
        for t in 0..steps {
            let row = &mut values[t * vocab..(t + 1) * vocab];
            let lse = log_sum_exp(row);
            if lse.abs() > 1e-6 {
                if renormalize {
                    for v in row.iter_mut() {
                        *v -= lse;
                    }
                } else {
                    return Err(Error::InvalidInput(format!(
                        "row {t} is not normalized (log-sum {lse:.3e})"
                    )));
                }
            }
        }
        Ok(LogProbMatrix {
            steps,
            vocab,
            values,
        })
    }

    /// Uniform rows, mostly for tests.
    pub fn uniform(steps: usize, vocab: usize) -> Self {
        let p = -(vocab as f64).ln();
        LogProbMatrix::new(steps, vocab, vec![p; steps * vocab], false).expect("uniform rows")
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn vocab(&self) -> usize {
        self.vocab
    }

    pub fn row(&self, t: usize) -> &[f64] {
        &self.values[t * self.vocab..(t + 1) * self.vocab]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Negative log-likelihood of `target` under the standard blank-augmented
/// forward recursion. A target with no feasible alignment yields infinity.
pub fn ctc_forward_loss(logits: &LogProbMatrix, target: &[u16]) -> Result<f64> {
    let vocab = logits.vocab() as u16;
    for &tok in target {
        if tok == 0 || tok >= vocab {
            return Err(Error::InvalidInput(format!(
                "target token {tok} outside 1..{}",
                vocab - 1
            )));
        }
    }
    let t_len = logits.steps();
    // blank-augmented label sequence l': blank, l1, blank, l2, ..., blank
    let s_len = 2 * target.len() + 1;
    let label = |s: usize| -> u16 {
        if s % 2 == 0 {
            0
        } else {
            target[s / 2]
        }
    };
    let neg = f64::NEG_INFINITY;
    let mut alpha = vec![neg; s_len];
    let row0 = logits.row(0);
    alpha[0] = row0[0];
    if s_len > 1 {
        alpha[1] = row0[label(1) as usize];
    }
    for t in 1..t_len {
        let row = logits.row(t);
        let mut next = vec![neg; s_len];
        for s in 0..s_len {
            let mut acc = alpha[s];
            if s >= 1 {
                acc = log_add(acc, alpha[s - 1]);
            }
            if s >= 2 && label(s) != 0 && label(s) != label(s - 2) {
                acc = log_add(acc, alpha[s - 2]);
            }
            if acc == neg {
                continue;
            }
            next[s] = acc + row[label(s) as usize];
        }
        alpha = next;
    }
    let total = if s_len > 1 {
        log_add(alpha[s_len - 1], alpha[s_len - 2])
    } else {
        alpha[0]
    };
    Ok(if total == neg { f64::INFINITY } else { -total })
}

/// Best-path decoding: per-step argmax, collapse adjacent repeats, drop
/// blanks. Ties resolve to the smallest index.
pub fn greedy_decode(logits: &LogProbMatrix) -> Vec<u16> {
    let mut out = Vec::new();
    let mut prev: Option<u16> = None;
    for t in 0..logits.steps() {
        let row = logits.row(t);
        let mut best = 0usize;
        for (k, &v) in row.iter().enumerate() {
            if v > row[best] {
                best = k;
            }
        }
        let tok = best as u16;
        if Some(tok) != prev && tok != 0 {
            out.push(tok);
        }
        prev = Some(tok);
    }
    out
}

/// Log-probability grids for the eleven parallel transcription levels,
/// sharing the time axis.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiLevelLogits {
    levels: BTreeMap<String, LogProbMatrix>,
}

impl MultiLevelLogits {
    pub fn new(levels: BTreeMap<String, LogProbMatrix>) -> Result<Self> {
        for name in LEVEL_NAMES {
            if !levels.contains_key(name) {
                return Err(Error::InvalidInput(format!("missing level `{name}`")));
            }
        }
        if levels.len() != LEVEL_NAMES.len() {
            let extra: Vec<&str> = levels
                .keys()
                .map(String::as_str)
                .filter(|k| !LEVEL_NAMES.contains(k))
                .collect();
            return Err(Error::InvalidInput(format!(
                "unknown levels: {}",
                extra.join(", ")
            )));
        }
        let t = levels["phonemes"].steps();
        for (name, m) in &levels {
            if m.steps() != t {
                return Err(Error::InvalidInput(format!(
                    "level `{name}` has {} steps, expected {t}",
                    m.steps()
                )));
            }
        }
        let phoneme_vocab = levels["phonemes"].vocab();
        for (name, m) in &levels {
            if m.vocab() > phoneme_vocab {
                return Err(Error::InvalidInput(format!(
                    "level `{name}` vocabulary exceeds the phonemes level"
                )));
            }
        }
        Ok(MultiLevelLogits { levels })
    }

    pub fn level(&self, name: &str) -> Option<&LogProbMatrix> {
        self.levels.get(name)
    }

    pub fn levels(&self) -> &BTreeMap<String, LogProbMatrix> {
        &self.levels
    }
}

/// Per-level loss weights, summing to one. The phonemes level carries 0.4
/// by default (it has the largest vocabulary); the remaining 0.6 spreads
/// uniformly over the ten attribute levels.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelWeights {
    weights: BTreeMap<String, f64>,
}

impl LevelWeights {
    pub fn new(weights: BTreeMap<String, f64>) -> Result<Self> {
        for name in LEVEL_NAMES {
            if !weights.contains_key(name) {
                return Err(Error::InvalidInput(format!("missing weight for `{name}`")));
            }
        }
        if weights.len() != LEVEL_NAMES.len() {
            return Err(Error::InvalidInput("unknown weight keys".into()));
        }
        if weights.values().any(|&w| w < 0.0) {
            return Err(Error::InvalidInput("weights must be non-negative".into()));
        }
        let sum: f64 = weights.values().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "weights must sum to 1 within 1e-12, got {sum:.15}"
            )));
        }
        Ok(LevelWeights { weights })
    }

    pub fn get(&self, name: &str) -> f64 {
        self.weights[name]
    }
}

impl Default for LevelWeights {
    fn default() -> Self {
        let mut weights = BTreeMap::new();
        weights.insert("phonemes".to_string(), 0.4);
        for name in LEVEL_NAMES.iter().skip(1) {
            weights.insert((*name).to_string(), 0.06);
        }
        LevelWeights::new(weights).expect("default weights sum to 1")
    }
}

/// Weighted sum of the per-level forward losses.
pub fn multi_level_loss(
    logits: &MultiLevelLogits,
    targets: &BTreeMap<String, Vec<u16>>,
    weights: &LevelWeights,
) -> Result<f64> {
    for name in LEVEL_NAMES {
        if !targets.contains_key(name) {
            return Err(Error::InvalidInput(format!("missing target for `{name}`")));
        }
    }
    if targets.len() != LEVEL_NAMES.len() {
        return Err(Error::InvalidInput("unknown target keys".into()));
    }
    let mut total = 0.0;
    for name in LEVEL_NAMES {
        let matrix = logits.level(name).expect("validated levels");
        let loss = ctc_forward_loss(matrix, &targets[name])?;
        total += weights.get(name) * loss;
    }
    Ok(total)
}

/// Edit distance over token sequences divided by the reference length.
pub fn phoneme_error_rate(reference: &[u16], hypothesis: &[u16]) -> Result<f64> {
    if reference.is_empty() {
        return Err(Error::InvalidInput("empty reference".into()));
    }
    let r: Vec<char> = reference
        .iter()
        .map(|&t| char::from_u32(t as u32 + 1).expect("token as char"))
        .collect();
    let h: Vec<char> = hypothesis
        .iter()
        .map(|&t| char::from_u32(t as u32 + 1).expect("token as char"))
        .collect();
    Ok(edit_distance_chars(&r, &h) as f64 / reference.len() as f64)
}

/// Corpus-level PER per level plus the unweighted mean across levels.
#[derive(Debug, Clone, PartialEq)]
pub struct PerReport {
    pub per_level: BTreeMap<String, f64>,
    pub average_per: f64,
}

/// Aggregates corpus-level PER: total edit distance over total reference
/// length per level, averaged (unweighted) across the eleven levels.
pub fn per_report(pairs: &BTreeMap<String, Vec<(Vec<u16>, Vec<u16>)>>) -> Result<PerReport> {
    for name in LEVEL_NAMES {
        match pairs.get(name) {
            None => return Err(Error::InvalidInput(format!("missing level `{name}`"))),
            Some(level_pairs) if level_pairs.is_empty() => {
                return Err(Error::InvalidInput(format!("level `{name}` is empty")))
            }
            _ => {}
        }
    }
    if pairs.len() != LEVEL_NAMES.len() {
        return Err(Error::InvalidInput("unknown level keys".into()));
    }
    let mut per_level = BTreeMap::new();
    let mut sum = 0.0;
    for name in LEVEL_NAMES {
        let mut dist_total = 0usize;
        let mut len_total = 0usize;
        for (reference, hypothesis) in &pairs[name] {
            if reference.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "empty reference in level `{name}`"
                )));
            }
            let r: Vec<char> = reference
                .iter()
                .map(|&t| char::from_u32(t as u32 + 1).unwrap())
                .collect();
            let h: Vec<char> = hypothesis
                .iter()
                .map(|&t| char::from_u32(t as u32 + 1).unwrap())
                .collect();
            dist_total += edit_distance_chars(&r, &h);
            len_total += reference.len();
        }
        let per = dist_total as f64 / len_total as f64;
        per_level.insert((*name).to_string(), per);
        sum += per;
    }
    Ok(PerReport {
        average_per: sum / LEVEL_NAMES.len() as f64,
        per_level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_logits(rng: &mut ChaCha8Rng, t: usize, v: usize) -> LogProbMatrix {
        let mut values = Vec::with_capacity(t * v);
        for _ in 0..t {
            let raw: Vec<f64> = (0..v).map(|_| rng.random_range(0.05..1.0)).collect();
            let sum: f64 = raw.iter().sum();
            values.extend(raw.iter().map(|p| (p / sum).ln()));
        }
        LogProbMatrix::new(t, v, values, true).unwrap()
    }

    /// Brute force: enumerate every length-T path, collapse, sum the
    /// probabilities of the paths whose collapse equals the target.
    pub(crate) fn brute_force_loss(logits: &LogProbMatrix, target: &[u16]) -> f64 {
        let t = logits.steps();
        let v = logits.vocab();
        let mut total = 0.0f64;
        let mut path = vec![0u16; t];
        fn collapse(path: &[u16]) -> Vec<u16> {
            let mut out = Vec::new();
            let mut prev = None;
            for &p in path {
                if Some(p) != prev && p != 0 {
                    out.push(p);
                }
                prev = Some(p);
            }
            out
        }
        fn walk(
            logits: &LogProbMatrix,
            path: &mut Vec<u16>,
            depth: usize,
            v: usize,
            target: &[u16],
            total: &mut f64,
        ) {
            if depth == path.len() {
                if collapse(path) == target {
                    let mut logp = 0.0;
                    for (t, &tok) in path.iter().enumerate() {
                        logp += logits.row(t)[tok as usize];
                    }
                    *total += logp.exp();
                }
                return;
            }
            for tok in 0..v as u16 {
                path[depth] = tok;
                walk(logits, path, depth + 1, v, target, total);
            }
        }
        walk(logits, &mut path, 0, v, target, &mut total);
        if total == 0.0 {
            f64::INFINITY
        } else {
            -total.ln()
        }
    }

    #[test]
    fn single_step_loss() {
        let values = vec![(0.5f64).ln(), (0.5f64).ln()];
        let m = LogProbMatrix::new(1, 2, values, false).unwrap();
        let loss = ctc_forward_loss(&m, &[1]).unwrap();
        assert!((loss - 0.5f64.ln().abs()).abs() < 1e-12);
        assert!((loss - 0.693147).abs() < 1e-6);
    }

    #[test]
    fn empty_target_is_all_blanks() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = random_logits(&mut rng, 4, 3);
        let loss = ctc_forward_loss(&m, &[]).unwrap();
        let expected: f64 = -(0..4).map(|t| m.row(t)[0]).sum::<f64>();
        assert!((loss - expected).abs() < 1e-12);
    }

    #[test]
    fn infeasible_target_is_infinite() {
        let m = LogProbMatrix::uniform(1, 3);
        let loss = ctc_forward_loss(&m, &[1, 2]).unwrap();
        assert!(loss.is_infinite());
        // repeated token needs a separating blank: 2 steps cannot fit [1,1]
        let m = LogProbMatrix::uniform(2, 3);
        assert!(ctc_forward_loss(&m, &[1, 1]).unwrap().is_infinite());
    }

    #[test]
    fn rejects_blank_and_out_of_vocab_targets() {
        let m = LogProbMatrix::uniform(3, 3);
        assert!(ctc_forward_loss(&m, &[0]).is_err());
        assert!(ctc_forward_loss(&m, &[3]).is_err());
    }

    #[test]
    fn forward_matches_brute_force_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let m = random_logits(&mut rng, 3, 3);
        let loss = ctc_forward_loss(&m, &[1, 2]).unwrap();
        let brute = brute_force_loss(&m, &[1, 2]);
        assert!((loss - brute).abs() < 1e-9, "{loss} vs {brute}");
    }

    #[test]
    fn greedy_decode_collapses() {
        // argmax path: blank, a, a, blank, b -> [a, b]
        fn row_for(tok: usize, v: usize) -> Vec<f64> {
            let mut r = vec![(0.1f64 / (v as f64 - 1.0)).ln(); v];
            r[tok] = 0.9f64.ln();
            r
        }
        let v = 3;
        let mut values = Vec::new();
        for tok in [0usize, 1, 1, 0, 2] {
            values.extend(row_for(tok, v));
        }
        let m = LogProbMatrix::new(5, v, values, true).unwrap();
        assert_eq!(greedy_decode(&m), vec![1, 2]);

        let mut values = Vec::new();
        for tok in [0usize, 0, 0] {
            values.extend(row_for(tok, v));
        }
        let m = LogProbMatrix::new(3, v, values, true).unwrap();
        assert_eq!(greedy_decode(&m), Vec::<u16>::new());

        let mut values = Vec::new();
        for tok in [1usize, 0, 1] {
            values.extend(row_for(tok, v));
        }
        let m = LogProbMatrix::new(3, v, values, true).unwrap();
        assert_eq!(greedy_decode(&m), vec![1, 1]);
    }

    #[test]
    fn decode_recovers_planted_path() {
        // probability 1 - eps on a chosen blank-augmented path
        let eps = 1e-3f64;
        let v = 4;
        let path = [0u16, 2, 2, 0, 3, 1];
        let mut values = Vec::new();
        for &tok in &path {
            let mut row = vec![(eps / (v as f64 - 1.0)).ln(); v];
            row[tok as usize] = (1.0 - eps).ln();
            values.extend(row);
        }
        let m = LogProbMatrix::new(path.len(), v, values, true).unwrap();
        assert_eq!(greedy_decode(&m), vec![2, 3, 1]);
    }

    fn uniform_multi(t: usize) -> MultiLevelLogits {
        let mut levels = BTreeMap::new();
        for name in LEVEL_NAMES {
            let v = if name == "phonemes" { 5 } else { 3 };
            levels.insert((*name).to_string(), LogProbMatrix::uniform(t, v));
        }
        MultiLevelLogits::new(levels).unwrap()
    }

    #[test]
    fn multi_level_loss_weighting() {
        let logits = uniform_multi(4);
        let weights = LevelWeights::default();
        // identical targets across levels: weighted sum of equal losses is
        // that same loss (weights sum to one)
        let mut targets = BTreeMap::new();
        for name in LEVEL_NAMES {
            targets.insert((*name).to_string(), vec![1u16]);
        }
        let per_level: Vec<f64> = LEVEL_NAMES
            .iter()
            .map(|n| ctc_forward_loss(logits.level(n).unwrap(), &[1]).unwrap())
            .collect();
        let total = multi_level_loss(&logits, &targets, &weights).unwrap();
        let expected: f64 = per_level
            .iter()
            .zip(LEVEL_NAMES.iter())
            .map(|(l, n)| weights.get(n) * l)
            .collect::<Vec<f64>>()
            .iter()
            .sum();
        assert!((total - expected).abs() < 1e-12);
    }

    #[test]
    fn weights_must_sum_to_one() {
        let mut weights = BTreeMap::new();
        for name in LEVEL_NAMES {
            weights.insert((*name).to_string(), 0.1);
        }
        assert!(LevelWeights::new(weights).is_err());
    }

    #[test]
    fn per_basics() {
        assert_eq!(phoneme_error_rate(&[1, 2, 3], &[1, 2, 3]).unwrap(), 0.0);
        assert_eq!(phoneme_error_rate(&[1, 2, 3, 4], &[]).unwrap(), 1.0);
        let per = phoneme_error_rate(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10], &[1, 2, 3, 4, 5, 6, 7, 8, 9, 11]).unwrap();
        assert!((per - 0.1).abs() < 1e-12);
        assert!(phoneme_error_rate(&[], &[1]).is_err());
    }

    proptest::proptest! {
        #[test]
        fn per_invariant_under_relabeling(
            r in proptest::collection::vec(1u16..5, 1..12),
            h in proptest::collection::vec(1u16..5, 0..12),
        ) {
            let relabel = |t: u16| t + 17;
            let base = phoneme_error_rate(&r, &h).unwrap();
            let rr: Vec<u16> = r.iter().map(|&t| relabel(t)).collect();
            let hh: Vec<u16> = h.iter().map(|&t| relabel(t)).collect();
            let mapped = phoneme_error_rate(&rr, &hh).unwrap();
            proptest::prop_assert!((base - mapped).abs() < 1e-15);
        }
    }

    #[test]
    fn per_report_average() {
        let mut pairs = BTreeMap::new();
        for name in LEVEL_NAMES {
            pairs.insert((*name).to_string(), vec![(vec![1u16, 2, 3], vec![1u16, 2, 3])]);
        }
        // inject errors into one level: 11 edits over reference length 100
        let reference: Vec<u16> = (0..100).map(|i| (i % 4 + 1) as u16).collect();
        let mut hypothesis = reference.clone();
        for k in 0..11 {
            hypothesis[k * 9] = 5;
        }
        pairs.insert("qlqla".to_string(), vec![(reference, hypothesis)]);
        let report = per_report(&pairs).unwrap();
        assert!((report.per_level["qlqla"] - 0.11).abs() < 1e-12);
        assert!((report.average_per - 0.01).abs() < 1e-12);
    }
}
