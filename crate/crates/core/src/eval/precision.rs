use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{AnnotationSet, EvalError};

/// Sorted 0-based rank positions of a uniform sample, without replacement,
/// from the top `k`. A sample as large as `k` is the whole prefix.
pub fn sample_ranks(ranked_len: usize, k: usize, sample_size: usize, seed: u64) -> Result<Vec<usize>, EvalError> {
    if k > ranked_len {
        return Err(EvalError::InvalidArgument(format!(
            "k = {k} exceeds the ranking length {ranked_len}"
        )));
    }
    if sample_size > k {
        return Err(EvalError::InvalidArgument(format!(
            "sample size {sample_size} exceeds k = {k}"
        )));
    }
    if sample_size == k {
        return Ok((0..k).collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = index::sample(&mut rng, k, sample_size).into_vec();
    picked.sort_unstable();
    Ok(picked)
}

/// Uniform sample from the top `k` phrases, returned in rank order.
pub fn sample_top_k<S: AsRef<str>>(ranked: &[S], k: usize, sample_size: usize, seed: u64) -> Result<Vec<String>, EvalError> {
    Ok(sample_ranks(ranked.len(), k, sample_size, seed)?
        .into_iter()
        .map(|i| ranked[i].as_ref().to_string())
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrecisionAtK {
    pub k: usize,
    pub sample_size: usize,
    pub estimate: f64,
    pub positives: usize,
    pub labeled: usize,
}

/// Precision among the top `k`, estimated from a labeled uniform sample.
pub fn precision_at_k<S: AsRef<str>>(
    ranked: &[S],
    annotations: &AnnotationSet,
    k: usize,
    sample_size: usize,
    seed: u64,
) -> Result<PrecisionAtK, EvalError> {
    if sample_size == 0 {
        return Err(EvalError::InvalidArgument("sample size must be positive".into()));
    }
    let sample = sample_top_k(ranked, k, sample_size, seed)?;
    let labels = annotations.labels_for(&sample)?;
    let positives = labels.iter().filter(|&&l| l).count();
    Ok(PrecisionAtK {
        k,
        sample_size,
        estimate: positives as f64 / labels.len() as f64,
        positives,
        labeled: labels.len(),
    })
}
